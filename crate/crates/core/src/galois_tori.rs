//! Unramified tori: a cocharacter lattice with a finite-order Frobenius.
//!
//! `H^1(F, T)` is the torsion of the Frobenius coinvariants of the
//! cocharacter lattice; `pi_0` of the fixed points of the dual torus is its
//! Pontryagin dual. Both are reported in the invariant-factor coordinates of
//! one fixed Smith form of `F - 1`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::{
    cokernel_group, image_basis, kernel_basis, solve_in_basis, Cokernel, Cyclotomic, FinAbGroup, IntMatrix,
};
use crate::root_datum::RootDatum;

pub const ORDER_BUDGET: u64 = 1000;

#[derive(Clone, Debug)]
pub struct TwistedTorus {
    frobenius: IntMatrix,
    order: u64,
}

impl TwistedTorus {
    pub fn new(frobenius: IntMatrix) -> Result<TwistedTorus> {
        if !frobenius.is_square() {
            return Err(Error::Dimension("Frobenius must be square".into()));
        }
        if !frobenius.is_unimodular() {
            return Err(Error::InvalidArgument("Frobenius is not unimodular".into()));
        }
        let mut power = frobenius.clone();
        let mut order = 1;
        while !power.is_identity() {
            order += 1;
            if order > ORDER_BUDGET {
                return Err(Error::Budget { what: "Frobenius order".into(), budget: ORDER_BUDGET });
            }
            power = &power * &frobenius;
        }
        Ok(TwistedTorus { frobenius, order })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<TwistedTorus> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn split(rank: usize) -> TwistedTorus {
        TwistedTorus { frobenius: IntMatrix::identity(rank), order: 1 }
    }

    pub fn rank(&self) -> usize {
        self.frobenius.rows()
    }

    pub fn frobenius(&self) -> &IntMatrix {
        &self.frobenius
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn f_minus_one(&self) -> IntMatrix {
        self.frobenius.sub(&IntMatrix::identity(self.rank()))
    }

    /// `1 + F + ... + F^(m-1)`.
    pub fn norm(&self) -> IntMatrix {
        let n = self.rank();
        let mut acc = IntMatrix::zeros(n, n);
        let mut power = IntMatrix::identity(n);
        for _ in 0..self.order {
            acc = acc.add(&power);
            power = &power * &self.frobenius;
        }
        acc
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TNPairingData {
    pub h1: FinAbGroup,
    pub pi0: FinAbGroup,
    /// `pairing[i][j]` = pairing of the i-th generator of `h1` with the j-th of `pi0`
    pub pairing: Vec<Vec<String>>,
    #[serde(skip)]
    cokernel: Cokernel,
}

impl TNPairingData {
    /// `h1` coordinates of the class of a cocharacter; errors if the class
    /// is not torsion.
    pub fn class_of(&self, x: &[i64]) -> Result<Vec<u64>> {
        let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
        self.cokernel.torsion_coordinates(&v)
    }

    /// Lift to the cocharacter lattice of the `k`-th torsion generator.
    pub fn generator_lift(&self, k: usize) -> Vec<i64> {
        self.cokernel.torsion_generator(k).iter().map(|x| x.to_i64().expect("small lift")).collect()
    }

    /// The pairing is perfect: every nonzero class pairs nontrivially
    /// with some element, on both sides.
    pub fn is_perfect(&self) -> bool {
        let one = Cyclotomic::one();
        let h = self.h1.elements();
        let p = self.pi0.elements();
        let left = h.iter().filter(|x| x.iter().any(|&c| c != 0)).all(|x| {
            p.iter().any(|k| tn_pairing(self, x, k).is_ok_and(|v| v != one))
        });
        let right = p.iter().filter(|k| k.iter().any(|&c| c != 0)).all(|k| {
            h.iter().any(|x| tn_pairing(self, x, k).is_ok_and(|v| v != one))
        });
        left && right
    }
}

pub fn component_group_pi0(t: &TwistedTorus) -> Result<TNPairingData> {
    let cokernel = Cokernel::new(&t.f_minus_one());
    let h1 = cokernel.group.torsion_subgroup();
    let pi0 = h1.clone();
    let k = h1.torsion.len();
    let mut data = TNPairingData { h1, pi0, pairing: vec![], cokernel };
    let mut pairing = vec![vec![String::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let mut a = vec![0; k];
            a[i] = 1;
            let mut b = vec![0; k];
            b[j] = 1;
            pairing[i][j] = tn_pairing(&data, &a, &b)?.to_string();
        }
    }
    data.pairing = pairing;
    Ok(data)
}

/// `<x, k> = exp(2 pi i sum x_i k_i / d_i)`.
pub fn tn_pairing(data: &TNPairingData, inv: &[u64], kappa: &[u64]) -> Result<Cyclotomic> {
    let d = &data.h1.torsion;
    if inv.len() != d.len() || kappa.len() != d.len() {
        return Err(Error::Dimension(format!("expected {} coordinates", d.len())));
    }
    if !data.h1.contains(inv) || !data.pi0.contains(kappa) {
        return Err(Error::InvalidArgument("coordinate out of range".into()));
    }
    let n = data.h1.exponent();
    let e: u64 = inv.iter().zip(kappa).zip(d).map(|((&x, &k), &di)| (x * k % di) * (n / di)).sum();
    Ok(Cyclotomic::root_of_unity(n, (e % n) as i64))
}

/// `ker(N) / im(F - 1)` with `N` the norm, computed in a basis of `ker(N)`.
pub fn norm_kernel_quotient(t: &TwistedTorus) -> FinAbGroup {
    let kernel = kernel_basis(&t.norm());
    let image = t.f_minus_one();
    let cols: Vec<Vec<BigInt>> = (0..image.cols())
        .map(|j| solve_in_basis(&kernel, &image.column(j)).expect("F - 1 lands in ker N"))
        .collect();
    let mut m = IntMatrix::zeros(kernel.cols(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    cokernel_group(&m)
}

/// Character lattices of `T`, `T^2/Z(G)` and `T/Z(G)` with the maps dual to
/// the diagonal `T/Z -> T^2/Z` and `[t1, t2] -> t1/t2`.
#[derive(Clone, Debug, Serialize)]
pub struct CenterQuotientLattices {
    /// basis of `X^*(T^2/Z)` inside `X^*(T)^2`, as columns
    pub pair_lattice: IntMatrix,
    /// basis of `X^*(T/Z)` (the root lattice) inside `X^*(T)`, as columns
    pub root_lattice: IntMatrix,
    /// `mu^*: X^*(T) -> X^*(T^2/Z)`, in the bases above
    pub mu: IntMatrix,
    /// `nu^*: X^*(T^2/Z) -> X^*(T/Z)`, in the bases above
    pub nu: IntMatrix,
    pub exact: bool,
}

pub fn center_quotient_lattices(g: &RootDatum) -> Result<CenterQuotientLattices> {
    if !g.is_semisimple() {
        return Err(Error::Precondition("semisimple datum required".into()));
    }
    let n = g.lattice_rank();
    let root_lattice = IntMatrix::from_columns(n, g.simple_roots())?;
    // generators (q, 0) and (-e_j, e_j)
    let mut gens = IntMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        for i in 0..n {
            gens[(i, j)] = root_lattice[(i, j)].clone();
        }
        gens[(j, n + j)] = BigInt::from(-1);
        gens[(n + j, n + j)] = BigInt::from(1);
    }
    let pair_lattice = image_basis(&gens);

    let mut mu = IntMatrix::zeros(2 * n, n);
    for j in 0..n {
        let mut v = vec![BigInt::from(0); 2 * n];
        v[j] = BigInt::from(1);
        v[n + j] = BigInt::from(-1);
        let c = solve_in_basis(&pair_lattice, &v).ok_or_else(|| Error::Precondition("mu not in lattice".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            mu[(i, j)] = x;
        }
    }
    let mut nu = IntMatrix::zeros(n, 2 * n);
    for j in 0..2 * n {
        let col = pair_lattice.column(j);
        let sum: Vec<BigInt> = (0..n).map(|i| &col[i] + &col[n + i]).collect();
        let c = solve_in_basis(&root_lattice, &sum).ok_or_else(|| Error::Precondition("nu not in Q".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            nu[(i, j)] = x;
        }
    }
    let exact = is_exact(&mu, &nu);
    Ok(CenterQuotientLattices { pair_lattice, root_lattice, mu, nu, exact })
}

/// `0 -> A --mu--> B --nu--> C -> 0` exact as lattice maps.
fn is_exact(mu: &IntMatrix, nu: &IntMatrix) -> bool {
    let injective = crate::exact_math::smith_normal_form(mu).rank() == mu.cols();
    let surjective = cokernel_group(nu).is_trivial();
    let composite_zero = (nu * mu).is_zero();
    let kernel = kernel_basis(nu);
    let kernel_in_image = (0..kernel.cols()).all(|j| solve_in_basis(mu, &kernel.column(j)).is_some());
    injective && surjective && composite_zero && kernel_in_image
}

#[derive(Clone, Debug, Serialize)]
pub struct SlnKappaGroup {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<usize>,
    pub pi0: FinAbGroup,
    /// the group generated inside `pi0`
    pub group: FinAbGroup,
    /// `(tau, class in pi0)` for every `tau` in `(Z/m)^l`
    pub witnesses: Vec<(Vec<u64>, Vec<u64>)>,
    pub closed: bool,
}

/// The classes of the points with constant value `exp(2 pi i tau_i / m)` on
/// block `i`, in `pi_0` of the Frobenius fixed points of the dual of
/// `T/Z(SL_n)`, where `T` is the norm-one torus of `prod_i K_i` and
/// `[K_i : E] = m d_i` unramified.
pub fn sln_kappa_group(n: usize, m: usize, degrees: &[usize]) -> Result<SlnKappaGroup> {
    if !(2..=12).contains(&n) || m == 0 || !n.is_multiple_of(m) {
        return Err(Error::InvalidArgument(format!("need 2 <= n <= 12 and m | n, got n={n}, m={m}")));
    }
    if degrees.is_empty() || degrees.len() > 8 || degrees.contains(&0) || degrees.iter().sum::<usize>() != n / m {
        return Err(Error::InvalidArgument(format!("degrees must be positive, at most 8, summing to {}", n / m)));
    }
    // block permutation: cycle of length m d_i on block i
    let mut sigma = Vec::with_capacity(n);
    let mut starts = Vec::new();
    let mut start = 0;
    for &d in degrees {
        let len = m * d;
        starts.push(start);
        for j in 0..len {
            sigma.push(start + (j + 1) % len);
        }
        start += len;
    }
    // Z^n / Z(1,...,1) with basis e_1..e_{n-1}, e_n = -(e_1 + ... + e_{n-1})
    let r = n - 1;
    let mut f = IntMatrix::zeros(r, r);
    for j in 0..r {
        let target = sigma[j];
        if target < r {
            f[(target, j)] = BigInt::from(1);
        } else {
            for i in 0..r {
                f[(i, j)] = BigInt::from(-1);
            }
        }
    }
    let torus = TwistedTorus::new(f)?;
    let data = component_group_pi0(&torus)?;
    let gens: Vec<Vec<i64>> = (0..data.h1.torsion.len()).map(|k| data.generator_lift(k)).collect();

    let l = degrees.len();
    let mut witnesses = Vec::new();
    let total = (m as u64).pow(l as u32);
    for code in 0..total {
        let tau: Vec<u64> = (0..l).map(|i| (code / (m as u64).pow(i as u32)) % m as u64).collect();
        // exponents r_j = tau_i / m on block i, as numerators over m
        let mut num = vec![0i64; n];
        for i in 0..l {
            for j in starts[i]..starts[i] + m * degrees[i] {
                num[j] = tau[i] as i64;
            }
        }
        let class: Vec<u64> = gens
            .iter()
            .zip(&data.h1.torsion)
            .map(|(x, &d)| {
                let s: i64 = x.iter().zip(&num).map(|(a, b)| a * b).sum();
                // d * s / m must be integral for a point of the fixed locus
                let v = (d as i64) * s;
                debug_assert_eq!(v % m as i64, 0);
                (v / m as i64).rem_euclid(d as i64) as u64
            })
            .collect();
        witnesses.push((tau, class));
    }
    let mut elements: Vec<Vec<u64>> = witnesses.iter().map(|(_, c)| c.clone()).collect();
    elements.sort();
    elements.dedup();
    let closed = data.pi0.is_closed(&elements);
    let group = data.pi0.subgroup_type(&elements);
    Ok(SlnKappaGroup { n, m, degrees: degrees.to_vec(), pi0: data.pi0, group, witnesses, closed })
}

/// Ordered lists of positive integers summing to `total`.
pub fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, Isogeny, Series};

    fn torus(rows: &[Vec<i64>]) -> TwistedTorus {
        TwistedTorus::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn norm_one_torus() {
        let t = torus(&[vec![-1]]);
        let d = component_group_pi0(&t).unwrap();
        assert_eq!(d.h1.torsion, vec![2]);
        assert_eq!(tn_pairing(&d, &[1], &[1]).unwrap(), Cyclotomic::from_integer(-1));
        assert_eq!(tn_pairing(&d, &[0], &[1]).unwrap(), Cyclotomic::one());
        assert!(d.is_perfect());
    }

    #[test]
    fn split_and_induced_tori() {
        assert!(component_group_pi0(&TwistedTorus::split(3)).unwrap().h1.is_trivial());
        let induced = torus(&[vec![0, 1], vec![1, 0]]);
        assert!(component_group_pi0(&induced).unwrap().h1.is_trivial());
        assert!(norm_kernel_quotient(&induced).is_trivial());
    }

    #[test]
    fn rotation_of_order_four() {
        let t = torus(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(t.order(), 4);
        let d = component_group_pi0(&t).unwrap();
        assert_eq!(d.h1.torsion, vec![2]);
        assert_eq!(tn_pairing(&d, &[1], &[1]).unwrap(), Cyclotomic::from_integer(-1));
        assert_eq!(norm_kernel_quotient(&t), d.h1);
    }

    #[test]
    fn rejects_bad_frobenius() {
        assert!(TwistedTorus::from_i64_rows(&[vec![2]]).is_err());
        assert!(matches!(
            TwistedTorus::from_i64_rows(&[vec![1, 1], vec![0, 1]]),
            Err(Error::Budget { .. })
        ));
        let d = component_group_pi0(&torus(&[vec![-1]])).unwrap();
        assert!(tn_pairing(&d, &[2], &[1]).is_err());
    }

    #[test]
    fn sl2_center_quotient() {
        let g = build_root_datum(Series::A, 1, Isogeny::Sc).unwrap();
        let c = center_quotient_lattices(&g).unwrap();
        assert!(c.exact);
        // every basis vector (a, b) has a + b even, and index 2 in Z^2
        for j in 0..2 {
            let col = c.pair_lattice.column(j);
            assert_eq!((&col[0] + &col[1]) % BigInt::from(2), BigInt::from(0));
        }
        assert_eq!(c.pair_lattice.det().magnitude(), &num_bigint::BigUint::from(2u32));
        // mu followed by the inclusion sends chi to (chi, -chi)
        let image = c.pair_lattice.mul_vec(&c.mu.column(0));
        assert_eq!(image, vec![BigInt::from(1), BigInt::from(-1)]);
    }

    #[test]
    fn adjoint_center_quotient_is_full() {
        let g = build_root_datum(Series::B, 3, Isogeny::Ad).unwrap();
        let c = center_quotient_lattices(&g).unwrap();
        assert!(c.exact);
        assert!(c.pair_lattice.is_unimodular());
    }

    #[test]
    fn sln_examples() {
        let s = sln_kappa_group(2, 2, &[1]).unwrap();
        assert_eq!(s.group.torsion, vec![2]);
        assert!(s.closed);
        assert!(sln_kappa_group(4, 1, &[2, 2]).unwrap().group.is_trivial());
        let s = sln_kappa_group(4, 2, &[1, 1]).unwrap();
        assert!(s.closed);
        assert!(sln_kappa_group(4, 3, &[1]).is_err());
        assert!(sln_kappa_group(4, 2, &[1]).is_err());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4).len(), 8);
    }
}
