use std::collections::HashSet;

use serde::Serialize;

use super::truncated::{det_mod_p, mat_mul_mod};
use crate::error::{Error, Result};
use crate::exact_math::abelian::is_prime;
use crate::finite_lie::Kind;

pub const QUASI_LOG_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct QuasiLogReport {
    pub kind: Kind,
    pub p: u64,
    pub k: u32,
    pub unipotent_count: u64,
    pub nilpotent_count: u64,
    pub injective: bool,
    pub onto: bool,
    pub identity_to_zero: bool,
}

impl QuasiLogReport {
    pub fn bijective(&self) -> bool {
        self.unipotent_count == self.nilpotent_count && self.injective && self.onto && self.identity_to_zero
    }
}

type M = Vec<Vec<u64>>;

fn is_nilpotent_mod_p(x: &M, p: u64) -> bool {
    let r: M = x.iter().map(|row| row.iter().map(|v| v % p).collect()).collect();
    let mut acc = r.clone();
    for _ in 1..x.len() {
        acc = mat_mul_mod(&acc, &r, p);
    }
    acc.iter().flatten().all(|&v| v == 0)
}

fn det_mod(a: &M, m: u64) -> u64 {
    match a.len() {
        2 => (a[0][0] * a[1][1] % m + m - a[0][1] * a[1][0] % m) % m,
        3 => {
            let minor = |r1: usize, r2: usize, c1: usize, c2: usize| (a[r1][c1] * a[r2][c2] % m + m - a[r1][c2] * a[r2][c1] % m) % m;
            let t0 = a[0][0] * minor(1, 2, 1, 2) % m;
            let t1 = a[0][1] * minor(1, 2, 0, 2) % m;
            let t2 = a[0][2] * minor(1, 2, 0, 1) % m;
            (t0 + m - t1 + t2) % m
        }
        _ => unreachable!(),
    }
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    (1..m).find(|&x| a * x % m == 1).expect("unit")
}

fn all_matrices(n: usize, m: u64) -> impl Iterator<Item = M> {
    let total = m.pow((n * n) as u32);
    (0..total).map(move |mut code| {
        let mut out = vec![vec![0; n]; n];
        for row in out.iter_mut() {
            for x in row.iter_mut() {
                *x = code % m;
                code /= m;
            }
        }
        out
    })
}

/// Enumerates `U_k` and `N_k` modulo `p^k` and checks that the standard
/// quasi-logarithm is a bijection between them.
pub fn quasi_log_bijection_check(kind: Kind, p: u64, k: u32) -> Result<QuasiLogReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 || kind.sc_center_order().is_multiple_of(p) {
        return Err(Error::Precondition(format!("p = {p} divides |Z(G^sc)| or is even")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    let n = kind.n();
    let m = p.checked_pow(k).ok_or_else(|| Error::Budget { what: "p^k".into(), budget: QUASI_LOG_BUDGET })?;
    let size = m.checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if size > QUASI_LOG_BUDGET {
        return Err(Error::Budget { what: format!("enumeration of {n}x{n} matrices mod {p}^{k}"), budget: QUASI_LOG_BUDGET });
    }
    let special = matches!(kind, Kind::SL2 | Kind::SL3);
    let n_inv = inverse_mod(n as u64 % m, m);
    let minus_one = |x: &M| -> M {
        let mut y = x.clone();
        for (i, row) in y.iter_mut().enumerate() {
            row[i] = (row[i] + m - 1) % m;
        }
        y
    };
    let phi = |g: &M| -> M {
        let mut x = minus_one(g);
        if special {
            let tr = (0..n).fold(0, |s, i| (s + x[i][i]) % m);
            let c = tr * n_inv % m;
            for (i, row) in x.iter_mut().enumerate() {
                row[i] = (row[i] + m - c) % m;
            }
        }
        x
    };
    let in_group = |g: &M| {
        let d = det_mod(g, m);
        if special {
            d == 1 % m
        } else {
            det_mod_p(&g.iter().map(|r| r.iter().map(|v| v % p).collect()).collect::<M>(), p) != 0
        }
    };
    let in_lie = |x: &M| !special || (0..n).fold(0, |s, i| (s + x[i][i]) % m) == 0;

    let mut nilpotent: HashSet<M> = HashSet::new();
    for x in all_matrices(n, m) {
        if in_lie(&x) && is_nilpotent_mod_p(&x, p) {
            nilpotent.insert(x);
        }
    }
    let mut image: HashSet<M> = HashSet::new();
    let mut unipotent_count = 0;
    let mut injective = true;
    let mut inside = true;
    for g in all_matrices(n, m) {
        if !in_group(&g) || !is_nilpotent_mod_p(&minus_one(&g), p) {
            continue;
        }
        unipotent_count += 1;
        let x = phi(&g);
        inside &= nilpotent.contains(&x);
        injective &= image.insert(x);
    }
    let identity: M = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let zero = vec![vec![0; n]; n];
    Ok(QuasiLogReport {
        kind,
        p,
        k,
        unipotent_count,
        nilpotent_count: nilpotent.len() as u64,
        injective,
        onto: inside && image.len() == nilpotent.len(),
        identity_to_zero: phi(&identity) == zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_small() {
        let r = quasi_log_bijection_check(Kind::SL2, 3, 1).unwrap();
        assert_eq!(r.unipotent_count, 9);
        assert!(r.bijective());
        let r = quasi_log_bijection_check(Kind::GL2, 3, 1).unwrap();
        assert_eq!(r.unipotent_count, 9);
        assert!(r.bijective());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(quasi_log_bijection_check(Kind::SL2, 2, 1), Err(Error::Precondition(_))));
        assert!(matches!(quasi_log_bijection_check(Kind::SL2, 7, 3), Err(Error::Budget { .. })));
    }
}
