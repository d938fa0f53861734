//! Dixon–Schneider: common eigenvectors of the class matrices modulo a prime
//! `l = 1 mod e`, lifted to cyclotomic values through eigenvalue multiplicities.

use std::sync::Arc;

use super::classes::{conjugacy_classes, CharacterTable, ClassFunction, ClassInfo};
use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::exact_math::abelian::{factorize, is_prime};
use crate::exact_math::Cyclotomic;

pub const DIXON_ORDER_BUDGET: u64 = 10_000;
const PRIME_SEARCH_STEPS: u64 = 100_000;

#[derive(Clone, Copy, Debug)]
struct Zl(u64);

impl Zl {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }
}

/// Smallest prime `l = 1 mod e` with `l > bound`.
fn choose_prime(e: u64, bound: u64) -> Result<u64> {
    let mut l = (bound / e + 1) * e + 1;
    for _ in 0..PRIME_SEARCH_STEPS {
        if is_prime(l) {
            return Ok(l);
        }
        l += e;
    }
    Err(Error::Budget { what: format!("prime search for l = 1 mod {e}"), budget: PRIME_SEARCH_STEPS })
}

fn primitive_root(l: u64) -> u64 {
    let f = Zl(l);
    let primes: Vec<u64> = factorize(l - 1).into_iter().map(|(p, _)| p).collect();
    (2..l).find(|&g| primes.iter().all(|&p| f.pow(g, (l - 1) / p) != 1)).expect("prime fields have primitive roots")
}

/// Row-reduced basis of the null space of `m` (rows `r`, columns `c`).
fn nullspace(f: Zl, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..cols {
                    a[i][j] = f.sub(a[i][j], f.mul(k, a[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.sub(0, a[i][fc]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (low degree first) via Hessenberg reduction.
fn charpoly(f: Zl, m: &[Vec<u64>]) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
        if p != c + 1 {
            h.swap(p, c + 1);
            for row in h.iter_mut() {
                row.swap(p, c + 1);
            }
        }
        let inv = f.inv(h[c + 1][c]);
        for i in c + 2..n {
            let k = f.mul(h[i][c], inv);
            if k == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = f.sub(h[i][j], f.mul(k, h[c + 1][j]));
            }
            for row in h.iter_mut() {
                row[c + 1] = f.add(row[c + 1], f.mul(k, row[i]));
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[k][k], c));
        }
        let mut prod = 1;
        for i in (0..k).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let coef = f.mul(h[i][k], prod);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval(f: Zl, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `A v` where `(A v)_s = sum_t a[s][t] v_t`.
fn apply(f: Zl, a: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    a.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))).collect()
}

/// Coordinates of `v` in a reduced echelon basis with the given pivots.
fn coords_in(pivots: &[usize], v: &[u64]) -> Vec<u64> {
    pivots.iter().map(|&p| v[p]).collect()
}

/// Reduced row echelon form with pivot columns.
fn rref(f: Zl, rows: &[Vec<u64>], cols: usize) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut a = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..cols {
                    a[i][j] = f.sub(a[i][j], f.mul(k, a[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Splits the subspace spanned by `basis` into eigenspaces of `a`.
fn split(f: Zl, a: &[Vec<u64>], basis: &[Vec<u64>], k: usize) -> Option<Vec<Vec<Vec<u64>>>> {
    let (basis, pivots) = rref(f, basis, k);
    let d = basis.len();
    // m[i][j]: coefficient of basis j in A basis_i
    let m: Vec<Vec<u64>> = basis.iter().map(|b| coords_in(&pivots, &apply(f, a, b))).collect();
    // row convention: eigenvectors are left null vectors of (m - lambda)
    let poly = charpoly(f, &m);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..f.0 {
        if eval(f, &poly, lambda) != 0 {
            continue;
        }
        // solve c (m - lambda) = 0, i.e. (m - lambda)^T c = 0
        let t: Vec<Vec<u64>> = (0..d).map(|j| (0..d).map(|i| if i == j { f.sub(m[i][j], lambda) } else { m[i][j] }).collect()).collect();
        let null = nullspace(f, &t, d);
        total += null.len();
        let vecs = null
            .iter()
            .map(|c| (0..k).map(|s| c.iter().zip(&basis).fold(0, |acc, (&ci, b)| f.add(acc, f.mul(ci, b[s])))).collect())
            .collect();
        out.push(vecs);
        if total == d {
            break;
        }
    }
    (total == d).then_some(out)
}

/// Exact character table by the Dixon–Schneider method.
pub fn character_table_dixon<G: FiniteGroup>(g: &G) -> Result<CharacterTable> {
    let order = g.order();
    if order > DIXON_ORDER_BUDGET {
        return Err(Error::Budget { what: "Dixon character table".into(), budget: DIXON_ORDER_BUDGET });
    }
    let classes = conjugacy_classes(g);
    let info = classes.info.clone();
    let k = classes.len();
    let e = info.exponent;
    let l = choose_prime(e, 2 * order)?;
    let f = Zl(l);

    // a[r][s][t] = #{(x, y) in C_r x C_s : x y = z_t}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    let elements = g.elements();
    for (t, z) in classes.reps.iter().enumerate() {
        for x in &elements {
            let y = g.mul(&g.inv(x), z);
            let r = classes.class_of(x).unwrap();
            let s = classes.class_of(&y).unwrap();
            a[r][s][t] += 1;
        }
    }
    for r in a.iter_mut() {
        for row in r.iter_mut() {
            for x in row.iter_mut() {
                *x %= l;
            }
        }
    }

    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for ar in a.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
                continue;
            }
            let parts = split(f, ar, &s, k).ok_or_else(|| Error::Precondition("class matrix does not split modulo l".into()))?;
            next.extend(parts);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Precondition("class sums fail to separate characters".into()));
    }

    let z = f.pow(primitive_root(l), (l - 1) / e);
    let mut characters: Vec<ClassFunction> = spaces
        .into_iter()
        .map(|s| lift_character(f, &info, z, &s[0]))
        .collect::<Result<_>>()?;
    characters.sort_by_key(|c| (c.degree().to_integer(), c.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
    Ok(CharacterTable { classes: info, characters })
}

fn lift_character(f: Zl, info: &Arc<ClassInfo>, z: u64, omega: &[u64]) -> Result<ClassFunction> {
    let k = info.len();
    let w0 = f.inv(omega[0]);
    let w: Vec<u64> = omega.iter().map(|&x| f.mul(x, w0)).collect();
    // sum_s w_s w_{s*} / |C_s| = |G| / chi(1)^2
    let s = (0..k).fold(0, |acc, c| f.add(acc, f.mul(f.mul(w[c], w[info.inverse[c]]), f.inv(info.sizes[c] % f.0))));
    let d2 = f.mul(info.group_order % f.0, f.inv(s));
    let deg = (1..=(info.group_order as f64).sqrt() as u64 + 1)
        .find(|&d| d * d % f.0 == d2)
        .ok_or_else(|| Error::Precondition("no integral degree".into()))?;
    let values_mod: Vec<u64> = (0..k).map(|c| f.mul(f.mul(w[c], deg % f.0), f.inv(info.sizes[c] % f.0))).collect();
    let values = (0..k)
        .map(|c| {
            let o = info.orders[c];
            let zo = f.pow(z, info.exponent / o);
            let zo_inv = f.inv(zo);
            let counts = (0..o)
                .map(|j| {
                    let mut m = 0;
                    for i in 0..o {
                        let v = values_mod[info.powers[c][i as usize]];
                        m = f.add(m, f.mul(v, f.pow(zo_inv, i * j % o)));
                    }
                    let m = f.mul(m, f.inv(o % f.0));
                    if m > deg {
                        return Err(Error::Precondition("eigenvalue multiplicity out of range".into()));
                    }
                    Ok(m as i64)
                })
                .collect::<Result<Vec<i64>>>()?;
            Ok(Cyclotomic::from_counts(o, &counts).reduce())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction::new(info.clone(), values))
}

#[cfg(test)]
mod tests {
    use super::super::group::{CyclicGroup, MatrixGroup};
    use super::*;
    use crate::exact_math::FiniteField;
    use crate::finite_lie::{build_finite_group, Kind, Mat};

    #[test]
    fn charpoly_small() {
        let f = Zl(101);
        // [[2, 1], [0, 3]] -> x^2 - 5x + 6
        assert_eq!(charpoly(f, &[vec![2, 1], vec![0, 3]]), vec![6, 96, 1]);
        let m = vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]];
        let p = charpoly(f, &m);
        // det(m) = -3, trace 16
        assert_eq!(p[3], 1);
        assert_eq!(p[2], 101 - 16);
        assert_eq!(p[0], 3);
    }

    #[test]
    fn cyclic_three() {
        let t = character_table_dixon(&CyclicGroup { n: 3 }).unwrap();
        assert_eq!(t.characters.len(), 3);
        assert!(t.orthogonality_holds());
        let w = Cyclotomic::root_of_unity(3, 1);
        assert!(t.characters.iter().any(|c| c.values[1] == w));
    }

    #[test]
    fn s3_inside_gl2_f5() {
        let f = FiniteField::new(5, 1).unwrap();
        // order 3 and an involution inverting it
        let r = Mat::from_entries(2, &[0, 4, 1, 4]);
        let s = Mat::from_entries(2, &[0, 1, 1, 0]);
        let g = MatrixGroup::generated(f, &[r, s]).unwrap();
        assert_eq!(FiniteGroup::order(&g), 6);
        let t = character_table_dixon(&g).unwrap();
        assert_eq!(t.integer_degrees(), vec![1, 1, 2]);
        assert!(t.orthogonality_holds());
    }

    #[test]
    fn sl2_f3() {
        let g = build_finite_group(Kind::SL2, 3).unwrap();
        let t = character_table_dixon(&g).unwrap();
        assert_eq!(t.integer_degrees(), vec![1, 1, 1, 2, 2, 2, 3]);
        assert!(t.orthogonality_holds());
    }
}
