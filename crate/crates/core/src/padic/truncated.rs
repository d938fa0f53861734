use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_math::abelian::is_prime;

pub const MAX_PRECISION: u32 = 64;

/// An `n x n` matrix over `Z/p^k`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedMatrix {
    n: usize,
    p: u64,
    k: u32,
    modulus: BigUint,
    entries: Vec<BigUint>,
}

impl TruncatedMatrix {
    pub fn new(p: u64, k: u32, rows: &[Vec<i64>]) -> Result<TruncatedMatrix> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || k > MAX_PRECISION {
            return Err(Error::InvalidArgument(format!("precision {k} outside 1..={MAX_PRECISION}")));
        }
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("expected a nonempty square matrix".into()));
        }
        let modulus = BigUint::from(p).pow(k);
        let m = num_bigint::BigInt::from(modulus.clone());
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| num_bigint::BigInt::from(x).mod_floor(&m).to_biguint().unwrap())
            .collect();
        Ok(TruncatedMatrix { n, p, k, modulus, entries })
    }

    pub fn identity(n: usize, p: u64, k: u32) -> Result<TruncatedMatrix> {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        TruncatedMatrix::new(p, k, &rows)
    }

    fn like(&self, entries: Vec<BigUint>) -> TruncatedMatrix {
        TruncatedMatrix { n: self.n, p: self.p, k: self.k, modulus: self.modulus.clone(), entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigUint>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    pub fn mul(&self, other: &TruncatedMatrix) -> TruncatedMatrix {
        let n = self.n;
        let mut out = vec![BigUint::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigUint::zero();
                for l in 0..n {
                    s += self.get(i, l) * other.get(l, j);
                }
                out[i * n + j] = s % &self.modulus;
            }
        }
        self.like(out)
    }

    pub fn sub(&self, other: &TruncatedMatrix) -> TruncatedMatrix {
        let out = self.entries.iter().zip(&other.entries).map(|(a, b)| (a + &self.modulus - b) % &self.modulus).collect();
        self.like(out)
    }

    pub fn pow(&self, e: &BigUint) -> TruncatedMatrix {
        let mut acc = TruncatedMatrix::identity(self.n, self.p, self.k).unwrap();
        let mut base = self.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
        }
        acc
    }

    pub fn pow_u64(&self, e: u64) -> TruncatedMatrix {
        self.pow(&BigUint::from(e))
    }

    /// Reduction modulo `p`, entries in `0..p`.
    pub fn reduce_mod_p(&self) -> Vec<Vec<u64>> {
        let p = BigUint::from(self.p);
        self.entries.chunks(self.n).map(|r| r.iter().map(|x| (x % &p).to_u64().unwrap()).collect()).collect()
    }

    pub fn is_invertible(&self) -> bool {
        det_mod_p(&self.reduce_mod_p(), self.p) != 0
    }

    /// Gauss–Jordan elimination with unit pivots.
    pub fn inverse(&self) -> Result<TruncatedMatrix> {
        if !self.is_invertible() {
            return Err(Error::Precondition("matrix is not invertible mod p".into()));
        }
        let n = self.n;
        let m = &self.modulus;
        let p = BigUint::from(self.p);
        let mut a: Vec<Vec<BigUint>> = self.rows();
        let mut inv: Vec<Vec<BigUint>> = (0..n).map(|i| (0..n).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect()).collect();
        for c in 0..n {
            let r = (c..n).find(|&r| !(&a[r][c] % &p).is_zero()).expect("invertible mod p");
            a.swap(c, r);
            inv.swap(c, r);
            let pivot_inv = mod_inverse(&a[c][c], m);
            for j in 0..n {
                a[c][j] = &a[c][j] * &pivot_inv % m;
                inv[c][j] = &inv[c][j] * &pivot_inv % m;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    let x = &f * &a[c][j] % m;
                    a[i][j] = (&a[i][j] + m - x) % m;
                    let y = &f * &inv[c][j] % m;
                    inv[i][j] = (&inv[i][j] + m - y) % m;
                }
            }
        }
        Ok(self.like(inv.into_iter().flatten().collect()))
    }

    /// `(x - 1)` is nilpotent modulo `p`.
    pub fn is_topologically_unipotent(&self) -> bool {
        let one = TruncatedMatrix::identity(self.n, self.p, self.k).unwrap();
        let x = self.sub(&one).reduce_mod_p();
        let mut acc = x.clone();
        for _ in 1..self.n {
            acc = mat_mul_mod(&acc, &x, self.p);
        }
        acc.iter().flatten().all(|&v| v == 0)
    }
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    let a = num_bigint::BigInt::from(a.clone());
    let m = num_bigint::BigInt::from(m.clone());
    let e = a.extended_gcd(&m);
    e.x.mod_floor(&m).to_biguint().unwrap()
}

pub(crate) fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], m: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).fold(0, |s, l| (s + a[i][l] * b[l][j]) % m)).collect()).collect()
}

pub(crate) fn det_mod_p(a: &[Vec<u64>], p: u64) -> u64 {
    let n = a.len();
    let mut a = a.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !a[r][c].is_multiple_of(p)) else { return 0 };
        if r != c {
            a.swap(r, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = pow_mod(a[c][c], p - 2, p);
        for i in c + 1..n {
            let f = a[i][c] * inv % p;
            for j in c..n {
                a[i][j] = (a[i][j] + p * p - f * a[c][j] % p) % p;
            }
        }
    }
    det
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    r
}

impl fmt::Debug for TruncatedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "{rows:?} mod {}^{}", self.p, self.k)
    }
}

/// Serialized as rows of decimal strings.
impl Serialize for TruncatedMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let a = TruncatedMatrix::new(3, 4, &[vec![2, 5], vec![7, 2]]).unwrap();
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        let b = TruncatedMatrix::new(3, 2, &[vec![3, 0], vec![0, 1]]).unwrap();
        assert!(b.inverse().is_err());
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(TruncatedMatrix::new(4, 2, &[vec![1]]), Err(Error::NotPrime(4))));
        assert!(TruncatedMatrix::new(3, 65, &[vec![1]]).is_err());
        assert!(TruncatedMatrix::new(3, 2, &[vec![1, 2]]).is_err());
    }
}
