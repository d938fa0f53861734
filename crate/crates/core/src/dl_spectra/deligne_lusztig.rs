use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::classes::{conjugacy_classes, ClassFunction, Classes};
use super::classical::{classical_table_oracle, ClassicalTable, RankOne, Shape};
use crate::error::{Error, Result};
use crate::exact_math::Cyclotomic;
use crate::finite_lie::{build_finite_group, FiniteLieGroup, Kind, Mat, MatField, TorusInG, TorusTag};

/// Everything needed for Deligne–Lusztig computations on `GL_2` or `SL_2`.
pub struct DlContext {
    pub group: FiniteLieGroup,
    pub classes: Classes<Mat>,
    pub rank_one: RankOne,
    pub classical: ClassicalTable,
    /// per class, the number of conjugates in the Borel over each split-torus point
    induction: Vec<Vec<(usize, u64)>>,
}

/// `R_T^theta` with its sign and, for non-singular `theta`, the genuine
/// representation `e(L) R_T^theta`.
#[derive(Clone, Debug)]
pub struct DlCharacter {
    pub tag: TorusTag,
    pub theta: Vec<u64>,
    pub sign: i64,
    pub virtual_character: ClassFunction,
    pub genuine: Option<ClassFunction>,
}

impl DlContext {
    pub fn new(kind: Kind, q: u64) -> Result<DlContext> {
        if !matches!(kind, Kind::GL2 | Kind::SL2) {
            return Err(Error::Unsupported(format!("Deligne–Lusztig characters for {kind}")));
        }
        let group = build_finite_group(kind, q)?;
        let classes = conjugacy_classes(&group);
        let rank_one = RankOne::new(&group)?;
        let classical = classical_table_oracle(&group, &classes)?;
        let split = rank_one.torus(TorusTag::Split);
        let elements = group.elements();
        let induction = classes
            .reps
            .par_iter()
            .map(|x| {
                let mut counts = vec![0u64; split.elements.len()];
                for h in elements {
                    let y = group.conj(h, x);
                    if y.get(1, 0) == 0 {
                        let d = Mat::diag(&[y.get(0, 0), y.get(1, 1)]);
                        counts[split.index_of(&d).expect("diagonal part lies in the split torus")] += 1;
                    }
                }
                counts.into_iter().enumerate().filter(|(_, c)| *c > 0).collect()
            })
            .collect();
        Ok(DlContext { group, classes, rank_one, classical, induction })
    }

    pub fn kind(&self) -> Kind {
        self.group.kind()
    }

    pub fn tori(&self) -> &[TorusInG] {
        &self.rank_one.tori
    }

    pub fn torus(&self, tag: TorusTag) -> &TorusInG {
        self.rank_one.torus(tag)
    }

    /// Characters in general position, which for rank-one groups are exactly
    /// the non-singular ones.
    pub fn non_singular_characters(&self, tag: TorusTag) -> Vec<Vec<u64>> {
        let t = self.torus(tag);
        t.characters().into_iter().filter(|k| t.is_general_position(k)).collect()
    }

    /// Indices of classes consisting of unipotent elements.
    pub fn unipotent_classes(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.group.is_unipotent(&self.classes.reps[c])).collect()
    }

    fn p_prime_part(&self) -> i64 {
        let mut n = self.group.order();
        while n.is_multiple_of(self.group.p()) {
            n /= self.group.p();
        }
        n as i64
    }

    /// `Ind_B^G theta` for the split torus, by the induced-character formula.
    fn induced(&self, theta: &[u64]) -> ClassFunction {
        let t = self.torus(TorusTag::Split);
        let n = t.exponent();
        let borel = BigRational::new(BigInt::from(1), BigInt::from(t.order() * self.group.q()));
        ClassFunction::from_fn(&self.classes.info, |c| {
            let mut counts = vec![0i64; n as usize];
            for &(i, k) in &self.induction[c] {
                counts[t.theta_exponent(theta, i) as usize] += k as i64;
            }
            Cyclotomic::from_counts(n, &counts).scale(&borel).reduce()
        })
    }

    /// The character formula on an elliptic torus: `theta(z) e |G|_p'/|T|`
    /// at central `z`, `theta(z)` at `z u`, zero off the torus, and the sum
    /// of `theta` over the torus points conjugate to a regular element.
    fn elliptic(&self, theta: &[u64]) -> ClassFunction {
        let tag = TorusTag::Elliptic;
        let t = self.torus(tag);
        let deg = t.sign(self.kind()) * self.p_prime_part() / t.order() as i64;
        ClassFunction::from_fn(&self.classes.info, |c| {
            let x = &self.classes.reps[c];
            match self.rank_one.shape(&self.group, x) {
                Shape::Central(z) => self.rank_one.theta_central(tag, theta, z).scale_int(deg),
                Shape::CentralUnipotent { z, .. } => self.rank_one.theta_central(tag, theta, z),
                Shape::Split(..) => Cyclotomic::zero(),
                Shape::Elliptic => self.rank_one.theta_sum(&self.group, tag, theta, x),
            }
        })
    }

    pub fn dl_character(&self, tag: TorusTag, theta: &[u64]) -> Result<DlCharacter> {
        let t = self.torus(tag);
        if theta.len() != t.generator_orders.len() || theta.iter().zip(&t.generator_orders).any(|(k, o)| k >= o) {
            return Err(Error::InvalidArgument(format!("character {theta:?} of a torus with orders {:?}", t.generator_orders)));
        }
        let virtual_character = match tag {
            TorusTag::Split => self.induced(theta),
            _ => self.elliptic(theta),
        };
        let sign = t.sign(self.kind());
        let genuine = if t.is_general_position(theta) {
            let rho = virtual_character.scale_int(sign);
            if self.classical.find(&rho).is_none() {
                return Err(Error::Precondition(format!("e R_T^theta for {tag:?} {theta:?} is not irreducible")));
            }
            Some(rho)
        } else {
            None
        };
        Ok(DlCharacter { tag, theta: theta.to_vec(), sign, virtual_character, genuine })
    }

    /// The genuine representation; errors for singular `theta`.
    pub fn rho(&self, tag: TorusTag, theta: &[u64]) -> Result<ClassFunction> {
        self.dl_character(tag, theta)?
            .genuine
            .ok_or_else(|| Error::Precondition(format!("theta = {theta:?} is singular on the {tag:?} torus")))
    }

    /// `q^{-dim(L/T)/2} sum_{y in Ad G(t)} psi(<Phi(u), y>)`, given the orbit.
    fn springer_rhs(&self, orbit: &[Mat], u: &Mat) -> Cyclotomic {
        let g = &self.group;
        let f = g.field();
        let p = g.p();
        let x = g.quasi_logarithm(u);
        let mut counts = vec![0i64; p as usize];
        for y in orbit {
            counts[f.trace(g.pairing(&x, y)) as usize] += 1;
        }
        let half_dim = (self.kind().lie_dim() - self.kind().rank()) / 2;
        let scale = BigRational::new(BigInt::from(1), BigInt::from(g.q().pow(half_dim as u32)));
        Cyclotomic::from_counts(p, &counts).scale(&scale).reduce()
    }

    /// Strongly regular points of the Lie algebra of the torus.
    pub fn strongly_regular_points(&self, tag: TorusTag) -> Vec<Mat> {
        self.torus(tag).lie_points.par_iter().copied().filter(|t| self.group.is_strongly_regular(t)).collect()
    }

    /// Compares `Tr rho(u)` with the Fourier side for the given `t`, over all
    /// unipotent classes or just the regular unipotent one.
    pub fn springer_check(&self, tag: TorusTag, theta: &[u64], t: &Mat, all_unipotent: bool) -> Result<SpringerReport> {
        if !self.torus(tag).lie_points.contains(t) || !self.group.is_strongly_regular(t) {
            return Err(Error::Precondition(format!("{t:?} is not a strongly regular point of the {tag:?} torus")));
        }
        let rho = self.rho(tag, theta)?;
        let orbit = self.group.adjoint_orbit(t);
        let mut report = SpringerReport::new(self);
        for c in self.checked_unipotents(all_unipotent) {
            let lhs = &rho.values[c];
            let rhs = self.springer_rhs(&orbit, &self.classes.reps[c]);
            report.record(SpringerCase::new(self, tag, theta, t, c, lhs, &rhs));
        }
        Ok(report)
    }

    fn checked_unipotents(&self, all: bool) -> Vec<usize> {
        let u = self.unipotent_classes();
        if all {
            u
        } else {
            let reg = self.classes.class_of(&Mat::from_entries(2, &[1, 1, 0, 1])).unwrap();
            vec![reg]
        }
    }

    /// Every torus class, every non-singular `theta`, every strongly regular
    /// `t` in the Lie torus, and every unipotent class or only the regular one.
    pub fn springer_sweep(&self, all_unipotent: bool) -> Result<SpringerReport> {
        let mut report = SpringerReport::new(self);
        let unipotent = self.checked_unipotents(all_unipotent);
        for torus in self.tori() {
            let tag = torus.tag;
            let points = self.strongly_regular_points(tag);
            let rhs: Vec<Vec<Cyclotomic>> = points
                .par_iter()
                .map(|t| {
                    let orbit = self.group.adjoint_orbit(t);
                    unipotent.iter().map(|&c| self.springer_rhs(&orbit, &self.classes.reps[c])).collect()
                })
                .collect();
            // few distinct values occur on each side, so compare those once
            let mut distinct: Vec<Cyclotomic> = Vec::new();
            let id_of = |v: &Cyclotomic, distinct: &mut Vec<Cyclotomic>| match distinct.iter().position(|d| d == v) {
                Some(i) => i,
                None => {
                    distinct.push(v.clone());
                    distinct.len() - 1
                }
            };
            let rhs_ids: Vec<Vec<usize>> = rhs.iter().map(|row| row.iter().map(|v| id_of(v, &mut distinct)).collect()).collect();
            for theta in self.non_singular_characters(tag) {
                let rho = self.rho(tag, &theta)?;
                let lhs_ids: Vec<usize> = unipotent.iter().map(|&c| id_of(&rho.values[c], &mut distinct)).collect();
                for (t, (row, ids)) in points.iter().zip(rhs.iter().zip(&rhs_ids)) {
                    for (k, &c) in unipotent.iter().enumerate() {
                        if lhs_ids[k] == ids[k] {
                            report.cases += 1;
                            report.passes += 1;
                        } else {
                            report.record(SpringerCase::new(self, tag, &theta, t, c, &rho.values[c], &row[k]));
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// `gamma = delta u` with `delta` a power of `gamma` of order prime to `p`.
    pub fn jordan_decomposition(&self, gamma: &Mat) -> (Mat, Mat) {
        let g = &self.group;
        let p = g.p();
        let o = g.mat_order(gamma);
        let mut ps = 1;
        while o.is_multiple_of(ps * p) {
            ps *= p;
        }
        let r = o / ps;
        // a = 1 mod r, a = 0 mod p^s
        let a = (0..r).map(|k| k * ps).find(|a| a % r == 1 % r).unwrap_or(0);
        let delta = g.mat_pow(gamma, a);
        let u = g.mat_mul(&g.inv(&delta), gamma);
        (delta, u)
    }

    /// Green function `Q_T^G(u)` of a rank-one group.
    fn green(&self, tag: TorusTag, u: &Mat) -> i64 {
        let t = self.torus(tag);
        if *u == self.group.identity() {
            t.sign(self.kind()) * self.p_prime_part() / t.order() as i64
        } else {
            1
        }
    }

    /// Evaluates `e(L) Tr rho(gamma)` and the reduction sum over the
    /// centralizer of the semisimple part.
    pub fn dl_jordan_reduction_check(&self, tag: TorusTag, theta: &[u64], gamma: &Mat) -> Result<JordanCase> {
        let g = &self.group;
        let c = self.classes.class_of(gamma).ok_or_else(|| Error::InvalidArgument(format!("{gamma:?} is not in the group")))?;
        let rho = self.rho(tag, theta)?;
        let t = self.torus(tag);
        let sign = t.sign(self.kind());
        let lhs = rho.values[c].scale_int(sign).reduce();
        let (delta, u) = self.jordan_decomposition(gamma);
        let n = t.exponent();
        let rhs = if delta.is_scalar() {
            // centralizer is G: theta(delta) Q_T^G(u)
            let th = t.theta(theta, &delta).expect("central elements lie in every torus");
            th.scale_int(self.green(tag, &u)).reduce()
        } else {
            let centralizer = g.centralizer(&delta);
            let shape_ok = !(centralizer.len() as u64).is_multiple_of(g.p()) && u == g.identity();
            if !shape_ok {
                return Err(Error::Unsupported("centralizer of the semisimple part is not a torus".into()));
            }
            let mut counts = vec![0i64; n as usize];
            for x in g.elements() {
                let y = g.conj(&g.inv(x), &delta);
                if let Some(i) = t.index_of(&y) {
                    counts[t.theta_exponent(theta, i) as usize] += 1;
                }
            }
            let scale = BigRational::new(BigInt::from(1), BigInt::from(centralizer.len() as u64));
            Cyclotomic::from_counts(n, &counts).scale(&scale).reduce()
        };
        let mixed = delta != g.identity() && u != g.identity();
        Ok(JordanCase {
            tag,
            theta: theta.to_vec(),
            class: self.classes.info.labels[c].clone(),
            mixed,
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    }

    /// The reduction identity on every class and every non-singular `theta`.
    pub fn jordan_sweep(&self) -> Result<JordanReport> {
        let mut report = JordanReport { group: self.kind().to_string(), q: self.group.q(), cases: 0, mixed_cases: 0, passes: 0, failures: vec![] };
        for torus in self.tori() {
            for theta in self.non_singular_characters(torus.tag) {
                for rep in &self.classes.reps {
                    let case = self.dl_jordan_reduction_check(torus.tag, &theta, rep)?;
                    report.cases += 1;
                    report.mixed_cases += usize::from(case.mixed);
                    if case.pass {
                        report.passes += 1;
                    } else {
                        report.failures.push(case);
                    }
                }
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpringerCase {
    pub torus: TorusTag,
    pub theta: Vec<u64>,
    pub t: Mat,
    pub unipotent_class: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip)]
    pub pass: bool,
}

impl SpringerCase {
    fn new(ctx: &DlContext, tag: TorusTag, theta: &[u64], t: &Mat, c: usize, lhs: &Cyclotomic, rhs: &Cyclotomic) -> SpringerCase {
        SpringerCase {
            torus: tag,
            theta: theta.to_vec(),
            t: *t,
            unipotent_class: ctx.classes.info.labels[c].clone(),
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpringerReport {
    pub group: String,
    pub q: u64,
    pub cases: usize,
    pub passes: usize,
    pub failures: Vec<SpringerCase>,
}

impl SpringerReport {
    fn new(ctx: &DlContext) -> SpringerReport {
        SpringerReport { group: ctx.kind().to_string(), q: ctx.group.q(), cases: 0, passes: 0, failures: vec![] }
    }

    fn record(&mut self, case: SpringerCase) {
        self.cases += 1;
        if case.pass {
            self.passes += 1;
        } else {
            self.failures.push(case);
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanCase {
    pub tag: TorusTag,
    pub theta: Vec<u64>,
    pub class: String,
    pub mixed: bool,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip)]
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JordanReport {
    pub group: String,
    pub q: u64,
    pub cases: usize,
    pub mixed_cases: usize,
    pub passes: usize,
    pub failures: Vec<JordanCase>,
}

impl JordanReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(n)
    }

    #[test]
    fn degrees_and_norms() {
        for (kind, q) in [(Kind::GL2, 5), (Kind::SL2, 7)] {
            let ctx = DlContext::new(kind, q).unwrap();
            let qi = q as i64;
            for theta in ctx.non_singular_characters(TorusTag::Split) {
                let r = ctx.dl_character(TorusTag::Split, &theta).unwrap();
                assert_eq!(r.virtual_character.degree(), &int(qi + 1));
                assert_eq!(r.virtual_character.norm(), int(1));
            }
            for theta in ctx.non_singular_characters(TorusTag::Elliptic) {
                let r = ctx.dl_character(TorusTag::Elliptic, &theta).unwrap();
                assert_eq!(r.genuine.unwrap().degree(), &int(qi - 1));
            }
            let one = vec![0; ctx.torus(TorusTag::Split).generator_orders.len()];
            let r = ctx.dl_character(TorusTag::Split, &one).unwrap();
            assert!(r.genuine.is_none());
            assert_eq!(r.virtual_character.norm(), int(2));
            let st = ctx.classical.table.characters.iter().find(|c| c.degree() == &int(qi)).unwrap();
            let triv = ClassFunction::from_fn(&ctx.classes.info, |_| int(1));
            assert_eq!(r.virtual_character, triv.add(st));
        }
    }

    #[test]
    fn orthogonality_across_tori() {
        let ctx = DlContext::new(Kind::GL2, 3).unwrap();
        let mut all = Vec::new();
        for t in ctx.tori() {
            for theta in t.characters() {
                all.push((t.tag, theta.clone(), ctx.dl_character(t.tag, &theta).unwrap().virtual_character));
            }
        }
        for (ta, tha, ra) in &all {
            for (tb, thb, rb) in &all {
                let expected = if ta == tb { ctx.torus(*ta).weyl_matches(tha, thb) as i64 } else { 0 };
                assert_eq!(ra.inner(rb), int(expected), "{ta:?} {tha:?} {tb:?} {thb:?}");
            }
        }
    }

    #[test]
    fn unipotent_values_independent_of_theta() {
        let ctx = DlContext::new(Kind::SL2, 5).unwrap();
        let u = ctx.unipotent_classes();
        for t in ctx.tori() {
            let chars = t.characters();
            let first = ctx.dl_character(t.tag, &chars[0]).unwrap().virtual_character;
            for theta in &chars[1..] {
                let r = ctx.dl_character(t.tag, theta).unwrap().virtual_character;
                for &c in &u {
                    assert_eq!(r.values[c], first.values[c]);
                }
            }
        }
    }

    #[test]
    fn springer_small() {
        let ctx = DlContext::new(Kind::SL2, 3).unwrap();
        let rep = ctx.springer_sweep(true).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        let zero = Mat::zero(2);
        let theta = ctx.non_singular_characters(TorusTag::Elliptic)[0].clone();
        assert!(matches!(ctx.springer_check(TorusTag::Elliptic, &theta, &zero, true), Err(Error::Precondition(_))));
    }

    #[test]
    fn springer_identity_value() {
        let ctx = DlContext::new(Kind::SL2, 5).unwrap();
        let t = ctx.strongly_regular_points(TorusTag::Elliptic)[0];
        let orbit = ctx.group.adjoint_orbit(&t);
        assert_eq!(ctx.springer_rhs(&orbit, &ctx.group.identity()), int(4));
    }

    #[test]
    fn jordan_reduction_gl2_3() {
        let ctx = DlContext::new(Kind::GL2, 3).unwrap();
        let rep = ctx.jordan_sweep().unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert!(rep.mixed_cases > 0);
    }

    #[test]
    fn jordan_parts_commute() {
        let ctx = DlContext::new(Kind::GL2, 5).unwrap();
        let g = &ctx.group;
        for x in g.elements().iter().step_by(7) {
            let (d, u) = ctx.jordan_decomposition(x);
            assert_eq!(g.mat_mul(&d, &u), *x);
            assert_eq!(g.mat_mul(&d, &u), g.mat_mul(&u, &d));
            assert!(g.is_unipotent(&u));
            assert_ne!(g.mat_order(&d) % 5, 0);
        }
    }
}
