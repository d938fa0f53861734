use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{FiniteLieGroup, Kind, Mat, MatField};
use crate::error::{Error, Result};
use crate::exact_math::{Cyclotomic, Fq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorusTag {
    Split,
    /// anisotropic torus of a rank-one kind
    Elliptic,
    /// `SL_3` torus split over `F_q` in rank one (Levi type `GL_2`)
    Levi,
    /// `SL_3` anisotropic torus from a cubic extension
    Coxeter,
}

/// A maximal torus `T` of the finite group with its point group, its Lie
/// algebra and the relative Weyl group `N(T)/T`.
#[derive(Clone, Debug)]
pub struct TorusInG {
    pub tag: TorusTag,
    /// `F_q`-rank of the torus
    pub split_rank: usize,
    pub generators: Vec<Mat>,
    pub generator_orders: Vec<u64>,
    /// points, with exponents with respect to `generators`
    pub elements: Vec<Mat>,
    pub coords: Vec<Vec<u64>>,
    index: HashMap<Mat, usize>,
    pub lie_basis: Vec<Mat>,
    pub lie_points: Vec<Mat>,
    /// representatives of `W(G, T)`, identity first
    pub weyl: Vec<Mat>,
    /// action of each Weyl representative on `elements` by conjugation
    pub weyl_perms: Vec<Vec<usize>>,
    /// the non-square used to build nonsplit tori
    pub nonresidue: Option<Fq>,
}

impl TorusInG {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl.len()
    }

    pub fn index_of(&self, t: &Mat) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &Mat) -> bool {
        self.index.contains_key(t)
    }

    /// `e = (-1)^(rk L - rk T)`.
    pub fn sign(&self, kind: Kind) -> i64 {
        let rk = match kind {
            Kind::GL2 | Kind::SL3 => 2,
            Kind::SL2 => 1,
        };
        if (rk - self.split_rank).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Conductor of the character values: lcm of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.generator_orders.iter().fold(1, |a, &b| num_integer::lcm(a, b))
    }

    /// All characters, as exponent vectors `k` with `theta(g_i) = E(o_i)^k_i`.
    pub fn characters(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &o in &self.generator_orders {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..o).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// `theta(t)` as an exponent modulo `exponent()`.
    pub fn theta_exponent(&self, theta: &[u64], idx: usize) -> u64 {
        let n = self.exponent();
        self.coords[idx]
            .iter()
            .zip(theta)
            .zip(&self.generator_orders)
            .map(|((&c, &k), &o)| (c * k % o) * (n / o))
            .sum::<u64>()
            % n
    }

    pub fn theta(&self, theta: &[u64], t: &Mat) -> Option<Cyclotomic> {
        let idx = self.index_of(t)?;
        Some(Cyclotomic::root_of_unity(self.exponent(), self.theta_exponent(theta, idx) as i64))
    }

    /// `w(theta) != theta` for every nontrivial `w` in `W(G, T)`.
    pub fn is_general_position(&self, theta: &[u64]) -> bool {
        self.weyl_perms.iter().skip(1).all(|perm| {
            (0..self.elements.len()).any(|i| self.theta_exponent(theta, perm[i]) != self.theta_exponent(theta, i))
        })
    }

    /// Number of `w` with `w(theta) = theta'`.
    pub fn weyl_matches(&self, theta: &[u64], other: &[u64]) -> usize {
        self.weyl_perms
            .iter()
            .filter(|perm| (0..self.elements.len()).all(|i| self.theta_exponent(theta, perm[i]) == self.theta_exponent(other, i)))
            .count()
    }

    /// `t` in the Lie algebra of `T` is fixed by no nontrivial Weyl element.
    pub fn is_a_strongly_regular(&self, g: &FiniteLieGroup, t: &Mat) -> bool {
        self.weyl.iter().skip(1).all(|w| g.conj(w, t) != *t)
    }
}

fn span(g: &FiniteLieGroup, basis: &[Mat]) -> Vec<Mat> {
    let q = g.q() as usize;
    let total = q.pow(basis.len() as u32);
    (0..total)
        .map(|mut k| {
            let mut m = Mat::zero(basis[0].n());
            for b in basis {
                let c = (k % q) as Fq;
                k /= q;
                m = g.mat_add(&m, &g.mat_scale(c, b));
            }
            m
        })
        .collect()
}

/// A generator of the unit group of the commutative algebra spanned by
/// `basis` (which must be a field), by exhaustive search.
fn unit_generator(g: &FiniteLieGroup, basis: &[Mat]) -> Mat {
    let points = span(g, basis);
    let target = points.len() as u64 - 1;
    points
        .into_iter()
        .find(|x| g.mat_inv(x).is_some() && g.mat_order(x) == target)
        .expect("the unit group of a finite field is cyclic")
}

fn block(x: &Mat, c: Fq) -> Mat {
    let mut m = Mat::zero(3);
    for i in 0..2 {
        for j in 0..2 {
            m.set(i, j, x.get(i, j));
        }
    }
    m.set(2, 2, c);
    m
}

fn build(g: &FiniteLieGroup, tag: TorusTag, split_rank: usize, generators: Vec<Mat>, lie_basis: Vec<Mat>, nonresidue: Option<Fq>) -> Result<TorusInG> {
    let generator_orders: Vec<u64> = generators.iter().map(|x| g.mat_order(x)).collect();
    let mut elements = vec![g.identity()];
    let mut coords = vec![vec![]];
    for (gen, &o) in generators.iter().zip(&generator_orders) {
        let mut next_e = Vec::new();
        let mut next_c = Vec::new();
        let mut power = g.identity();
        for k in 0..o {
            for (e, c) in elements.iter().zip(&coords) {
                next_e.push(g.mat_mul(e, &power));
                let mut c = c.clone();
                c.push(k);
                next_c.push(c);
            }
            power = g.mat_mul(&power, gen);
        }
        elements = next_e;
        coords = next_c;
    }
    let index: HashMap<Mat, usize> = elements.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    if index.len() != elements.len() {
        return Err(Error::Precondition("torus generators are not independent".into()));
    }
    let lie_points = span(g, &lie_basis);
    let lie_set: HashSet<Mat> = lie_points.iter().copied().collect();
    let lie_index: HashMap<Mat, usize> = lie_points.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut weyl = Vec::new();
    let id = g.identity();
    for h in std::iter::once(&id).chain(g.elements()) {
        if !lie_basis.iter().all(|x| lie_set.contains(&g.conj(h, x))) {
            continue;
        }
        let perm: Vec<usize> = lie_points.iter().map(|x| lie_index[&g.conj(h, x)]).collect();
        if seen.insert(perm) {
            weyl.push(*h);
        }
    }
    let weyl_perms = weyl
        .iter()
        .map(|w| {
            elements
                .iter()
                .map(|t| index.get(&g.conj(w, t)).copied().ok_or_else(|| Error::Precondition("Weyl element does not normalize T".into())))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TorusInG { tag, split_rank, generators, generator_orders, elements, coords, index, lie_basis, lie_points, weyl, weyl_perms, nonresidue })
}

pub(super) fn tori(g: &FiniteLieGroup) -> Result<Vec<TorusInG>> {
    let f = g.field();
    let gamma = f.generator();
    let gamma_inv = f.inv(gamma).unwrap();
    let eps = f.non_square();
    let one = 1;
    let j2 = Mat::from_entries(2, &[0, eps, 1, 0]);
    let i2 = Mat::identity(2);
    let e = |n: usize, i: usize| {
        let mut m = Mat::zero(n);
        m.set(i, i, 1);
        m
    };
    match g.kind() {
        Kind::GL2 => {
            let x = unit_generator(g, &[i2, j2]);
            Ok(vec![
                build(g, TorusTag::Split, 2, vec![Mat::diag(&[gamma, one]), Mat::diag(&[one, gamma])], vec![e(2, 0), e(2, 1)], None)?,
                build(g, TorusTag::Elliptic, 1, vec![x], vec![i2, j2], Some(eps))?,
            ])
        }
        Kind::SL2 => {
            let x = unit_generator(g, &[i2, j2]);
            let y = g.mat_pow(&x, g.q() - 1);
            let h = Mat::diag(&[1, f.neg(1)]);
            Ok(vec![
                build(g, TorusTag::Split, 1, vec![Mat::diag(&[gamma, gamma_inv])], vec![h], None)?,
                build(g, TorusTag::Elliptic, 0, vec![y], vec![j2], Some(eps))?,
            ])
        }
        Kind::SL3 => {
            let h1 = Mat::diag(&[1, f.neg(1), 0]);
            let h2 = Mat::diag(&[0, 1, f.neg(1)]);
            let split = build(
                g,
                TorusTag::Split,
                2,
                vec![Mat::diag(&[gamma, gamma_inv, 1]), Mat::diag(&[1, gamma, gamma_inv])],
                vec![h1, h2],
                None,
            )?;
            let x = unit_generator(g, &[i2, j2]);
            let levi_gen = block(&x, f.inv(g.mat_det(&x)).unwrap());
            let levi_lie = vec![block(&i2, f.neg(2)), block(&j2, 0)];
            let levi = build(g, TorusTag::Levi, 1, vec![levi_gen], levi_lie, Some(eps))?;
            let c = companion_of_irreducible_cubic(g);
            let c2 = g.mat_mul(&c, &c);
            let y = unit_generator(g, &[Mat::identity(3), c, c2]);
            let z = g.mat_pow(&y, g.q() - 1);
            let three_inv = f.inv(3).ok_or_else(|| Error::Precondition("p = 3".into()))?;
            let traceless = |m: &Mat| g.mat_sub(m, &g.mat_scale(f.mul(g.mat_trace(m), three_inv), &Mat::identity(3)));
            let coxeter = build(g, TorusTag::Coxeter, 0, vec![z], vec![traceless(&c), traceless(&c2)], None)?;
            Ok(vec![split, levi, coxeter])
        }
    }
}

fn companion_of_irreducible_cubic(g: &FiniteLieGroup) -> Mat {
    let f = g.field();
    let q = g.q() as Fq;
    for c0 in 1..q {
        for c1 in 0..q {
            for c2 in 0..q {
                // x^3 + c2 x^2 + c1 x + c0
                let has_root = (0..q).any(|x| {
                    let v = f.add(f.mul(f.add(f.mul(f.add(x, c2), x), c1), x), c0);
                    v == 0
                });
                if !has_root {
                    return Mat::from_entries(3, &[0, 0, f.neg(c0), 1, 0, f.neg(c1), 0, 1, f.neg(c2)]);
                }
            }
        }
    }
    unreachable!("irreducible cubics exist")
}
