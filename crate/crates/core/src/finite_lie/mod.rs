//! Matrix groups `GL_2`, `SL_2`, `SL_3` over `F_q`, their Lie algebras with
//! the trace pairing, the quasi-logarithm of the standard representation,
//! maximal tori and the finite Fourier transform.

mod fourier;
mod mat;
mod tori;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::abelian::factorize;
use crate::exact_math::{FiniteField, Fq};

pub use fourier::{finite_fourier, LieFunction, LIE_BUDGET};
pub use mat::{Mat, MatField};
pub use tori::{TorusInG, TorusTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    GL2,
    SL2,
    SL3,
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind> {
        match s.to_ascii_uppercase().as_str() {
            "GL2" => Ok(Kind::GL2),
            "SL2" => Ok(Kind::SL2),
            "SL3" => Ok(Kind::SL3),
            _ => Err(Error::InvalidArgument(format!("unknown group kind {s:?}"))),
        }
    }

    pub fn n(self) -> usize {
        match self {
            Kind::GL2 | Kind::SL2 => 2,
            Kind::SL3 => 3,
        }
    }

    /// Rank of the group (dimension of a maximal torus).
    pub fn rank(self) -> usize {
        match self {
            Kind::GL2 | Kind::SL3 => 2,
            Kind::SL2 => 1,
        }
    }

    pub fn lie_dim(self) -> usize {
        match self {
            Kind::GL2 => 4,
            Kind::SL2 => 3,
            Kind::SL3 => 8,
        }
    }

    /// Order of the center of the simply connected cover of the derived group.
    pub fn sc_center_order(self) -> u64 {
        match self {
            Kind::GL2 | Kind::SL2 => 2,
            Kind::SL3 => 3,
        }
    }

    fn max_q(self) -> u64 {
        match self {
            Kind::GL2 | Kind::SL2 => 13,
            Kind::SL3 => 5,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug)]
pub struct FiniteLieGroup {
    kind: Kind,
    field: FiniteField,
    elements: Vec<Mat>,
    index: HashMap<Mat, u32>,
    lie_basis: Vec<Mat>,
}

impl MatField for FiniteLieGroup {
    fn field(&self) -> &FiniteField {
        &self.field
    }
}

/// Splits `q` into `(p, f)` with `q = p^f`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, f)] => Ok((*p, *f)),
        _ => Err(Error::InvalidArgument(format!("{q} is not a prime power"))),
    }
}

pub fn build_finite_group(kind: Kind, q: u64) -> Result<FiniteLieGroup> {
    let (p, f) = prime_power(q)?;
    if kind.sc_center_order().is_multiple_of(p) {
        return Err(Error::Precondition(format!("p = {p} divides |Z(G^sc)| = {}", kind.sc_center_order())));
    }
    if q.is_multiple_of(2) {
        return Err(Error::Precondition("q must be odd".into()));
    }
    if q > kind.max_q() {
        return Err(Error::Budget { what: format!("{kind}(F_{q})"), budget: kind.max_q() });
    }
    let field = FiniteField::new(p, f)?;
    let n = kind.n();
    let total = q.pow((n * n) as u32);
    let mut elements = Vec::new();
    let mut entries = vec![0; n * n];
    for code in 0..total {
        let mut c = code;
        for e in entries.iter_mut() {
            *e = (c % q) as Fq;
            c /= q;
        }
        entries.reverse();
        let m = Mat::from_entries(n, &entries);
        let d = field.mat_det(&m);
        let keep = match kind {
            Kind::GL2 => d != 0,
            Kind::SL2 | Kind::SL3 => d == 1,
        };
        if keep {
            elements.push(m);
        }
    }
    let index = elements.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let unit = |i: usize, j: usize| {
        let mut m = Mat::zero(n);
        m.set(i, j, 1);
        m
    };
    let minus_one = field.neg(1);
    let h = |i: usize| {
        let mut m = Mat::zero(n);
        m.set(i, i, 1);
        m.set(i + 1, i + 1, minus_one);
        m
    };
    let lie_basis = match kind {
        Kind::GL2 => vec![unit(0, 0), unit(0, 1), unit(1, 0), unit(1, 1)],
        Kind::SL2 => vec![h(0), unit(0, 1), unit(1, 0)],
        Kind::SL3 => vec![unit(0, 1), unit(0, 2), unit(1, 0), unit(1, 2), unit(2, 0), unit(2, 1), h(0), h(1)],
    };
    Ok(FiniteLieGroup { kind, field, elements, index, lie_basis })
}

impl FiniteLieGroup {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn p(&self) -> u64 {
        self.field.p() as u64
    }

    pub fn n(&self) -> usize {
        self.kind.n()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn index_of(&self, g: &Mat) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &Mat) -> bool {
        self.index.contains_key(g)
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.n())
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.mat_mul(a, b)
    }

    pub fn inv(&self, a: &Mat) -> Mat {
        self.mat_inv(a).expect("group elements are invertible")
    }

    /// `h g h^-1`; also the adjoint action on the Lie algebra.
    pub fn conj(&self, h: &Mat, g: &Mat) -> Mat {
        self.mat_conj(h, g)
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_basis.len()
    }

    pub fn lie_basis(&self) -> &[Mat] {
        &self.lie_basis
    }

    pub fn lie_size(&self) -> u64 {
        self.q().pow(self.lie_dim() as u32)
    }

    pub fn in_lie(&self, x: &Mat) -> bool {
        match self.kind {
            Kind::GL2 => true,
            Kind::SL2 | Kind::SL3 => self.mat_trace(x) == 0,
        }
    }

    pub fn lie_from_coords(&self, c: &[Fq]) -> Mat {
        let mut m = Mat::zero(self.n());
        for (&x, b) in c.iter().zip(&self.lie_basis) {
            m = self.mat_add(&m, &self.mat_scale(x, b));
        }
        m
    }

    pub fn lie_coords(&self, x: &Mat) -> Vec<Fq> {
        let f = &self.field;
        match self.kind {
            Kind::GL2 => x.entries(),
            Kind::SL2 => vec![x.get(0, 0), x.get(0, 1), x.get(1, 0)],
            Kind::SL3 => vec![
                x.get(0, 1),
                x.get(0, 2),
                x.get(1, 0),
                x.get(1, 2),
                x.get(2, 0),
                x.get(2, 1),
                x.get(0, 0),
                f.neg(x.get(2, 2)),
            ],
        }
    }

    /// Position of a Lie algebra element in the enumeration order of
    /// `lie_point` (first coordinate varies fastest).
    pub fn lie_index(&self, x: &Mat) -> usize {
        let q = self.q() as usize;
        self.lie_coords(x).iter().rev().fold(0, |acc, &c| acc * q + c as usize)
    }

    pub fn lie_point(&self, mut k: usize) -> Mat {
        let q = self.q() as usize;
        let coords: Vec<Fq> = (0..self.lie_dim())
            .map(|_| {
                let c = (k % q) as Fq;
                k /= q;
                c
            })
            .collect();
        self.lie_from_coords(&coords)
    }

    pub fn lie_elements(&self) -> Result<Vec<Mat>> {
        let size = self.lie_size();
        if size > fourier::ENUMERATION_BUDGET {
            return Err(Error::Budget { what: "Lie algebra enumeration".into(), budget: fourier::ENUMERATION_BUDGET });
        }
        Ok((0..size as usize).map(|k| self.lie_point(k)).collect())
    }

    /// `<a, b> = Tr(ab)`.
    pub fn pairing(&self, a: &Mat, b: &Mat) -> Fq {
        self.mat_trace(&self.mat_mul(a, b))
    }

    pub fn gram_matrix(&self) -> Vec<Vec<Fq>> {
        self.lie_basis
            .iter()
            .map(|a| self.lie_basis.iter().map(|b| self.pairing(a, b)).collect())
            .collect()
    }

    pub fn pairing_is_nondegenerate(&self) -> bool {
        self.field.matrix_rank(&self.gram_matrix()) == self.lie_dim()
    }

    /// Trace-orthogonal projection `gl_n -> g`.
    pub fn project(&self, x: &Mat) -> Mat {
        match self.kind {
            Kind::GL2 => *x,
            Kind::SL2 | Kind::SL3 => {
                let f = &self.field;
                let n_inv = f.inv(f.from_int(self.n() as i64)).expect("p does not divide n");
                let c = f.mul(self.mat_trace(x), n_inv);
                self.mat_sub(x, &self.mat_scale(c, &self.identity()))
            }
        }
    }

    /// `Phi(g) = pr(g - 1)` for the standard representation.
    pub fn quasi_logarithm(&self, g: &Mat) -> Mat {
        self.project(&self.mat_sub(g, &self.identity()))
    }

    /// `Phi(1 + eps X) = eps pr(X)`, so the differential at 1 is the identity
    /// exactly when `pr` fixes the Lie algebra.
    pub fn differential_is_identity(&self) -> bool {
        self.lie_basis.iter().all(|x| {
            // Phi(1 + eps X) - Phi(1) has eps-coefficient pr(X)
            let constant = self.quasi_logarithm(&self.identity());
            constant.is_zero() && self.project(x) == *x
        })
    }

    pub fn is_unipotent(&self, g: &Mat) -> bool {
        self.is_nilpotent(&self.mat_sub(g, &self.identity()))
    }

    pub fn is_nilpotent(&self, x: &Mat) -> bool {
        self.mat_pow(x, self.n() as u64).is_zero()
    }

    pub fn unipotent_elements(&self) -> Vec<Mat> {
        self.elements.iter().copied().filter(|g| self.is_unipotent(g)).collect()
    }

    pub fn nilpotent_elements(&self) -> Result<Vec<Mat>> {
        Ok(self.lie_elements()?.into_iter().filter(|x| self.is_nilpotent(x)).collect())
    }

    pub fn adjoint_orbit(&self, t: &Mat) -> Vec<Mat> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for h in &self.elements {
            let y = self.conj(h, t);
            if seen.insert(y) {
                out.push(y);
            }
        }
        out
    }

    pub fn centralizer(&self, x: &Mat) -> Vec<Mat> {
        self.elements.iter().copied().filter(|h| self.mat_mul(h, x) == self.mat_mul(x, h)).collect()
    }

    /// Dimension over `F_q` of `{Y in g : [X, Y] = 0}`.
    pub fn lie_centralizer_dim(&self, x: &Mat) -> usize {
        let rows: Vec<Vec<Fq>> = self
            .lie_basis
            .iter()
            .map(|y| {
                let c = self.mat_sub(&self.mat_mul(x, y), &self.mat_mul(y, x));
                c.entries()
            })
            .collect();
        // kernel dimension of Y -> [X, Y]: rows are images of basis vectors
        self.lie_dim() - self.field.matrix_rank(&rows)
    }

    /// The group centralizer of `t` is abelian of order prime to `p`, and
    /// the Lie centralizer has dimension equal to the rank.
    pub fn is_strongly_regular(&self, t: &Mat) -> bool {
        if self.lie_centralizer_dim(t) != self.kind.rank() {
            return false;
        }
        let z = self.centralizer(t);
        if (z.len() as u64).is_multiple_of(self.p()) {
            return false;
        }
        z.iter().all(|a| z.iter().all(|b| self.mat_mul(a, b) == self.mat_mul(b, a)))
    }

    pub fn tori(&self) -> Result<Vec<TorusInG>> {
        tori::tori(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(build_finite_group(Kind::GL2, 3).unwrap().order(), 48);
        assert_eq!(build_finite_group(Kind::SL2, 5).unwrap().order(), 120);
        assert_eq!(build_finite_group(Kind::GL2, 5).unwrap().order(), 480);
        assert_eq!(build_finite_group(Kind::SL2, 9).unwrap().order(), 720);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(build_finite_group(Kind::SL2, 2), Err(Error::Precondition(_))));
        assert!(matches!(build_finite_group(Kind::SL3, 3), Err(Error::Precondition(_))));
        assert!(matches!(build_finite_group(Kind::GL2, 17), Err(Error::Budget { .. })));
        assert!(build_finite_group(Kind::GL2, 6).is_err());
    }

    #[test]
    fn quasi_log_examples() {
        let g = build_finite_group(Kind::SL2, 5).unwrap();
        let u = Mat::from_entries(2, &[1, 1, 0, 1]);
        assert_eq!(g.quasi_logarithm(&u), Mat::from_entries(2, &[0, 1, 0, 0]));
        assert!(g.quasi_logarithm(&g.identity()).is_zero());
        assert!(g.differential_is_identity());
        let gl = build_finite_group(Kind::GL2, 3).unwrap();
        let x = Mat::from_entries(2, &[2, 1, 1, 1]);
        assert_eq!(gl.quasi_logarithm(&x), Mat::from_entries(2, &[1, 1, 1, 0]));
    }

    #[test]
    fn quasi_log_is_equivariant() {
        let g = build_finite_group(Kind::SL2, 7).unwrap();
        for (i, x) in g.elements().iter().enumerate().step_by(37) {
            let h = g.elements()[(i * 13 + 5) % g.elements().len()];
            assert_eq!(g.quasi_logarithm(&g.conj(&h, x)), g.conj(&h, &g.quasi_logarithm(x)));
        }
    }

    #[test]
    fn unipotent_and_nilpotent_counts() {
        for (kind, q) in [(Kind::GL2, 3), (Kind::SL2, 3), (Kind::SL2, 5), (Kind::GL2, 5)] {
            let g = build_finite_group(kind, q).unwrap();
            let u = g.unipotent_elements();
            let n = g.nilpotent_elements().unwrap();
            assert_eq!(u.len() as u64, q * q);
            assert_eq!(n.len(), u.len());
            let image: HashSet<Mat> = u.iter().map(|x| g.quasi_logarithm(x)).collect();
            assert_eq!(image, n.into_iter().collect());
        }
    }

    #[test]
    fn pairing_nondegenerate() {
        for (kind, q) in [(Kind::GL2, 3), (Kind::SL2, 3), (Kind::SL2, 13), (Kind::GL2, 9)] {
            assert!(build_finite_group(kind, q).unwrap().pairing_is_nondegenerate());
        }
    }

    #[test]
    fn lie_indexing_round_trip() {
        let g = build_finite_group(Kind::SL2, 3).unwrap();
        for k in 0..27 {
            assert_eq!(g.lie_index(&g.lie_point(k)), k);
        }
    }

    #[test]
    fn orbit_sizes() {
        let g = build_finite_group(Kind::SL2, 5).unwrap();
        assert_eq!(g.adjoint_orbit(&Mat::zero(2)).len(), 1);
        let split = Mat::diag(&[1, 4]);
        assert_eq!(g.adjoint_orbit(&split).len(), 5 * 6);
        // J = [[0, 2], [1, 0]] with 2 a non-square mod 5
        let elliptic = Mat::from_entries(2, &[0, 2, 1, 0]);
        assert_eq!(g.adjoint_orbit(&elliptic).len(), 5 * 4);
        assert!(g.is_strongly_regular(&split));
        assert!(!g.is_strongly_regular(&Mat::zero(2)));
    }
}
