use num_bigint::BigUint;
use serde::Serialize;

use super::truncated::{mat_mul_mod, TruncatedMatrix};
use crate::error::{Error, Result};

/// `gamma = delta u = u delta` with `delta^r = 1`, `p` prime to `r`, and `u`
/// topologically unipotent.
#[derive(Clone, Debug, Serialize)]
pub struct TopologicalJordan {
    pub delta: TruncatedMatrix,
    pub u: TruncatedMatrix,
    pub order_r: u64,
    pub iterations: u32,
}

fn order_mod_p(rows: &[Vec<u64>], p: u64) -> u64 {
    let n = rows.len();
    let one: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut x = rows.to_vec();
    let mut k = 1;
    while x != one {
        x = mat_mul_mod(&x, rows, p);
        k += 1;
    }
    k
}

fn strip_p(mut o: u64, p: u64) -> u64 {
    while o.is_multiple_of(p) {
        o /= p;
    }
    o
}

/// Multiplicative order of `p` modulo `r`.
fn order_of_p(p: u64, r: u64) -> u64 {
    if r == 1 {
        return 1;
    }
    let mut x = p % r;
    let mut t = 1;
    while x != 1 {
        x = x * p % r;
        t += 1;
    }
    t
}

/// `delta = lim gamma^(p^(n t))` with `t` the order of `p` mod `r`.
pub fn topological_jordan(gamma: &TruncatedMatrix) -> Result<TopologicalJordan> {
    if !gamma.is_invertible() {
        return Err(Error::Precondition("gamma is not invertible mod p".into()));
    }
    let p = gamma.p();
    let r = strip_p(order_mod_p(&gamma.reduce_mod_p(), p), p);
    let t = order_of_p(p, r);
    let step = BigUint::from(p).pow(t as u32);
    let cap = gamma.k() + 8;
    let mut x = gamma.clone();
    let mut iterations = 0;
    loop {
        let next = x.pow(&step);
        iterations += 1;
        if next == x {
            break;
        }
        if iterations > cap {
            return Err(Error::Precondition(format!("no convergence after {cap} iterations")));
        }
        x = next;
    }
    let delta = x;
    let u = delta.inverse()?.mul(gamma);
    Ok(TopologicalJordan { delta, u, order_r: r, iterations })
}

impl TopologicalJordan {
    /// The stated post-conditions on the returned pair.
    pub fn verify(&self, gamma: &TruncatedMatrix) -> bool {
        self.delta.mul(&self.u) == *gamma
            && self.u.mul(&self.delta) == *gamma
            && self.delta.pow_u64(self.order_r).is_identity()
            && !self.order_r.is_multiple_of(gamma.p())
            && self.u.is_topologically_unipotent()
            && u_power_converges(&self.u)
    }
}

/// `u^(p^m) = 1` for some `m <= k + 8`.
fn u_power_converges(u: &TruncatedMatrix) -> bool {
    let p = BigUint::from(u.p());
    let mut x = u.clone();
    for _ in 0..u.k() + 8 {
        if x.is_identity() {
            return true;
        }
        x = x.pow(&p);
    }
    x.is_identity()
}

/// Order of `gamma` in `GL_n(Z/p^k)`.
pub fn element_order(gamma: &TruncatedMatrix) -> u64 {
    let o = order_mod_p(&gamma.reduce_mod_p(), gamma.p());
    let mut x = gamma.pow_u64(o);
    let mut order = o;
    while !x.is_identity() {
        x = x.pow_u64(gamma.p());
        order *= gamma.p();
    }
    order
}

/// Number of factorizations `gamma = d v` with `d` in the cyclic group
/// generated by `gamma`, `d` of order prime to `p` and `v = d^-1 gamma`
/// topologically unipotent (the decomposition is unique iff this is 1, and
/// then `d` is the computed `delta`).
pub fn cyclic_decompositions(gamma: &TruncatedMatrix) -> Result<Vec<TruncatedMatrix>> {
    let order = element_order(gamma);
    let r = strip_p(order, gamma.p());
    let gi = gamma.inverse()?;
    let mut d = TruncatedMatrix::identity(gamma.n(), gamma.p(), gamma.k())?;
    let mut v = gamma.clone();
    let mut out = Vec::new();
    for _ in 0..order {
        if d.pow_u64(r).is_identity() && v.is_topologically_unipotent() {
            out.push(d.clone());
        }
        d = d.mul(gamma);
        v = v.mul(&gi);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_lift_of_two() {
        let g = TruncatedMatrix::new(5, 2, &[vec![2]]).unwrap();
        let j = topological_jordan(&g).unwrap();
        assert_eq!(j.delta, TruncatedMatrix::new(5, 2, &[vec![7]]).unwrap());
        assert_eq!(j.u, TruncatedMatrix::new(5, 2, &[vec![11]]).unwrap());
        assert_eq!(j.order_r, 4);
        assert!(j.verify(&g));
    }

    #[test]
    fn identity_and_finite_order() {
        let one = TruncatedMatrix::identity(2, 3, 4).unwrap();
        let j = topological_jordan(&one).unwrap();
        assert!(j.delta.is_identity() && j.u.is_identity());
        let refl = TruncatedMatrix::new(3, 4, &[vec![0, 1], vec![1, 0]]).unwrap();
        let j = topological_jordan(&refl).unwrap();
        assert_eq!(j.delta, refl);
        assert!(j.u.is_identity());
    }

    #[test]
    fn unique_within_cyclic_group() {
        let g = TruncatedMatrix::new(3, 3, &[vec![2, 1], vec![4, 7]]).unwrap();
        let j = topological_jordan(&g).unwrap();
        assert!(j.verify(&g));
        assert_eq!(cyclic_decompositions(&g).unwrap(), vec![j.delta]);
    }

    #[test]
    fn non_invertible() {
        let g = TruncatedMatrix::new(3, 2, &[vec![3, 0], vec![0, 1]]).unwrap();
        assert!(topological_jordan(&g).is_err());
    }
}
