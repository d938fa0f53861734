use std::fmt;

use serde::{Serialize, Serializer};

use crate::exact_math::{FiniteField, Fq};

/// Square matrix of size at most 3 over a small field (`q < 256`),
/// row-major. Unused trailing entries are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: u8,
    e: [u8; 9],
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        assert!(n <= 3);
        Mat { n: n as u8, e: [0; 9] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fq>]) -> Mat {
        let n = rows.len();
        let mut m = Mat::zero(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Entries given row by row.
    pub fn from_entries(n: usize, entries: &[Fq]) -> Mat {
        assert_eq!(entries.len(), n * n);
        let mut m = Mat::zero(n);
        for (k, &x) in entries.iter().enumerate() {
            m.set(k / n, k % n, x);
        }
        m
    }

    pub fn diag(entries: &[Fq]) -> Mat {
        let mut m = Mat::zero(entries.len());
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.e[i * 3 + j] as Fq
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fq) {
        debug_assert!(x < 256);
        self.e[i * 3 + j] = x as u8;
    }

    pub fn entries(&self) -> Vec<Fq> {
        let n = self.n();
        (0..n * n).map(|k| self.get(k / n, k % n)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Fq>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn is_scalar(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| if i == j { self.get(i, i) == self.get(0, 0) } else { self.get(i, j) == 0 }))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// Matrix arithmetic over a fixed field.
pub trait MatField {
    fn field(&self) -> &FiniteField;

    fn mat_add(&self, a: &Mat, b: &Mat) -> Mat {
        let f = self.field();
        let n = a.n();
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f.add(a.get(i, j), b.get(i, j)));
            }
        }
        m
    }

    fn mat_sub(&self, a: &Mat, b: &Mat) -> Mat {
        let f = self.field();
        let n = a.n();
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f.sub(a.get(i, j), b.get(i, j)));
            }
        }
        m
    }

    fn mat_neg(&self, a: &Mat) -> Mat {
        self.mat_sub(&Mat::zero(a.n()), a)
    }

    fn mat_scale(&self, c: Fq, a: &Mat) -> Mat {
        let f = self.field();
        let n = a.n();
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f.mul(c, a.get(i, j)));
            }
        }
        m
    }

    fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let f = self.field();
        let n = a.n();
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = f.add(s, f.mul(a.get(i, k), b.get(k, j)));
                }
                m.set(i, j, s);
            }
        }
        m
    }

    fn mat_trace(&self, a: &Mat) -> Fq {
        let f = self.field();
        (0..a.n()).fold(0, |s, i| f.add(s, a.get(i, i)))
    }

    fn mat_det(&self, a: &Mat) -> Fq {
        let f = self.field();
        let g = |i, j| a.get(i, j);
        match a.n() {
            1 => g(0, 0),
            2 => f.sub(f.mul(g(0, 0), g(1, 1)), f.mul(g(0, 1), g(1, 0))),
            3 => {
                let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
                    f.sub(f.mul(g(r1, c1), g(r2, c2)), f.mul(g(r1, c2), g(r2, c1)))
                };
                let t0 = f.mul(g(0, 0), minor(1, 2, 1, 2));
                let t1 = f.mul(g(0, 1), minor(1, 2, 0, 2));
                let t2 = f.mul(g(0, 2), minor(1, 2, 0, 1));
                f.add(f.sub(t0, t1), t2)
            }
            _ => 1,
        }
    }

    fn mat_inv(&self, a: &Mat) -> Option<Mat> {
        let f = self.field();
        let det_inv = f.inv(self.mat_det(a))?;
        let n = a.n();
        let g = |i, j| a.get(i, j);
        let mut adj = Mat::zero(n);
        match n {
            1 => adj.set(0, 0, 1),
            2 => {
                adj.set(0, 0, g(1, 1));
                adj.set(1, 1, g(0, 0));
                adj.set(0, 1, f.neg(g(0, 1)));
                adj.set(1, 0, f.neg(g(1, 0)));
            }
            _ => {
                for i in 0..3 {
                    for j in 0..3 {
                        // cofactor of (j, i)
                        let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                        let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                        let m = f.sub(
                            f.mul(g(rows[0], cols[0]), g(rows[1], cols[1])),
                            f.mul(g(rows[0], cols[1]), g(rows[1], cols[0])),
                        );
                        adj.set(i, j, if (i + j) % 2 == 0 { m } else { f.neg(m) });
                    }
                }
            }
        }
        Some(self.mat_scale(det_inv, &adj))
    }

    fn mat_pow(&self, a: &Mat, mut e: u64) -> Mat {
        let mut base = *a;
        let mut acc = Mat::identity(a.n());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            base = self.mat_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `h a h^-1`.
    fn mat_conj(&self, h: &Mat, a: &Mat) -> Mat {
        let hi = self.mat_inv(h).expect("invertible conjugator");
        self.mat_mul(&self.mat_mul(h, a), &hi)
    }

    /// Multiplicative order of an invertible matrix.
    fn mat_order(&self, a: &Mat) -> u64 {
        let one = Mat::identity(a.n());
        let mut x = *a;
        let mut k = 1;
        while x != one {
            x = self.mat_mul(&x, a);
            k += 1;
        }
        k
    }
}

impl MatField for FiniteField {
    fn field(&self) -> &FiniteField {
        self
    }
}
