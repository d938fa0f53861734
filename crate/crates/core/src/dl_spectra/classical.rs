//! Closed-form character tables of `GL_2(F_q)` and `SL_2(F_q)`, `q` odd.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::classes::{CharacterTable, ClassFunction, Classes};
use crate::error::{Error, Result};
use crate::exact_math::{Cyclotomic, Fq};
use crate::finite_lie::{FiniteLieGroup, Kind, Mat, MatField, TorusInG, TorusTag};

/// Conjugacy type of a matrix in `GL_2(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Central(Fq),
    /// `z` times a nontrivial unipotent; `square` records the square class
    /// of the unipotent part (it separates the two `SL_2` classes)
    CentralUnipotent { z: Fq, square: bool },
    Split(Fq, Fq),
    Elliptic,
}

/// Shape classification plus lookup of semisimple elements in the two tori.
#[derive(Clone, Debug)]
pub struct RankOne {
    pub tori: Vec<TorusInG>,
    by_charpoly: Vec<HashMap<(Fq, Fq), Vec<usize>>>,
}

impl RankOne {
    pub fn new(g: &FiniteLieGroup) -> Result<RankOne> {
        if !matches!(g.kind(), Kind::GL2 | Kind::SL2) {
            return Err(Error::Unsupported(format!("closed-form characters for {}", g.kind())));
        }
        let tori = g.tori()?;
        let by_charpoly = tori
            .iter()
            .map(|t| {
                let mut m: HashMap<(Fq, Fq), Vec<usize>> = HashMap::new();
                for (i, x) in t.elements.iter().enumerate() {
                    m.entry((g.mat_trace(x), g.mat_det(x))).or_default().push(i);
                }
                m
            })
            .collect();
        Ok(RankOne { tori, by_charpoly })
    }

    pub fn torus(&self, tag: TorusTag) -> &TorusInG {
        self.tori.iter().find(|t| t.tag == tag).expect("rank-one groups have both tori")
    }

    fn torus_position(&self, tag: TorusTag) -> usize {
        self.tori.iter().position(|t| t.tag == tag).unwrap()
    }

    pub fn shape(&self, g: &FiniteLieGroup, x: &Mat) -> Shape {
        let f = g.field();
        if x.is_scalar() {
            return Shape::Central(x.get(0, 0));
        }
        let tr = g.mat_trace(x);
        let det = g.mat_det(x);
        let disc = f.sub(f.mul(tr, tr), f.mul(4 % g.p() as Fq, det));
        let half = f.inv(f.from_int(2)).unwrap();
        if disc == 0 {
            let z = f.mul(tr, half);
            let n = g.mat_sub(&g.mat_scale(f.inv(z).unwrap(), x), &Mat::identity(2));
            let b = n.get(0, 1);
            let class = if b != 0 { b } else { f.neg(n.get(1, 0)) };
            return Shape::CentralUnipotent { z, square: f.is_square(class) };
        }
        match f.sqrt(disc) {
            Some(r) => Shape::Split(f.mul(f.add(tr, r), half), f.mul(f.sub(tr, r), half)),
            None => Shape::Elliptic,
        }
    }

    /// Points of the given torus with the same characteristic polynomial as `x`.
    pub fn conjugates_in(&self, g: &FiniteLieGroup, tag: TorusTag, x: &Mat) -> &[usize] {
        let i = self.torus_position(tag);
        self.by_charpoly[i].get(&(g.mat_trace(x), g.mat_det(x))).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `sum theta(t)` over torus points conjugate to `x`.
    pub fn theta_sum(&self, g: &FiniteLieGroup, tag: TorusTag, theta: &[u64], x: &Mat) -> Cyclotomic {
        let t = self.torus(tag);
        self.conjugates_in(g, tag, x)
            .iter()
            .map(|&i| Cyclotomic::root_of_unity(t.exponent(), t.theta_exponent(theta, i) as i64))
            .sum::<Cyclotomic>()
            .reduce()
    }

    /// `theta` at a scalar matrix, which lies in every maximal torus.
    pub fn theta_central(&self, tag: TorusTag, theta: &[u64], z: Fq) -> Cyclotomic {
        let t = self.torus(tag);
        let m = Mat::diag(&[z, z]);
        t.theta(theta, &m).expect("central elements lie in the torus")
    }
}

/// The classical table with a name per row.
#[derive(Clone, Debug)]
pub struct ClassicalTable {
    pub table: CharacterTable,
    pub names: Vec<String>,
}

impl ClassicalTable {
    pub fn row(&self, name: &str) -> Option<&ClassFunction> {
        self.names.iter().position(|n| n == name).map(|i| &self.table.characters[i])
    }

    pub fn find(&self, chi: &ClassFunction) -> Option<usize> {
        self.table.characters.iter().position(|c| c.degree() == chi.degree() && c == chi)
    }
}

fn int(n: i64) -> Cyclotomic {
    Cyclotomic::from_integer(n)
}

fn half(x: Cyclotomic) -> Cyclotomic {
    x.scale(&BigRational::new(BigInt::from(1), BigInt::from(2))).reduce()
}

/// Full classical table of `GL_2(F_q)` or `SL_2(F_q)` on the given classes.
pub fn classical_table_oracle(g: &FiniteLieGroup, classes: &Classes<Mat>) -> Result<ClassicalTable> {
    let r1 = RankOne::new(g)?;
    let info = classes.info.clone();
    let shapes: Vec<Shape> = classes.reps.iter().map(|x| r1.shape(g, x)).collect();
    let mut rows = Vec::new();
    let mut names = Vec::new();
    let mut push = |name: String, f: &dyn Fn(usize) -> Cyclotomic| {
        names.push(name);
        rows.push(ClassFunction::from_fn(&info, |c| f(c).reduce()));
    };
    let f = g.field();
    let q = g.q();
    let qi = q as i64;
    let alpha = |k: u64, x: Fq| f.mult_char(k, x);
    let st = |c: usize| match shapes[c] {
        Shape::Central(_) => int(qi),
        Shape::CentralUnipotent { .. } => int(0),
        Shape::Split(..) => int(1),
        Shape::Elliptic => int(-1),
    };
    let ell = TorusTag::Elliptic;
    match g.kind() {
        Kind::GL2 => {
            let det = |c: usize| g.mat_det(&classes.reps[c]);
            for k in 0..q - 1 {
                push(format!("linear({k})"), &|c| alpha(k, det(c)));
            }
            for k in 0..q - 1 {
                push(format!("steinberg({k})"), &|c| alpha(k, det(c)).mul_ref(&st(c)));
            }
            for i in 0..q - 1 {
                for j in i + 1..q - 1 {
                    push(format!("principal({i},{j})"), &|c| match shapes[c] {
                        Shape::Central(a) => alpha(i, a).mul_ref(&alpha(j, a)).scale_int(qi + 1),
                        Shape::CentralUnipotent { z, .. } => alpha(i, z).mul_ref(&alpha(j, z)),
                        Shape::Split(a, b) => alpha(i, a).mul_ref(&alpha(j, b)).add_ref(&alpha(i, b).mul_ref(&alpha(j, a))),
                        Shape::Elliptic => int(0),
                    });
                }
            }
            let n = q * q - 1;
            for k in 0..n {
                if k % (q + 1) == 0 || (q * k) % n < k {
                    continue;
                }
                let th = [k];
                push(format!("discrete({k})"), &|c| match shapes[c] {
                    Shape::Central(a) => r1.theta_central(ell, &th, a).scale_int(qi - 1),
                    Shape::CentralUnipotent { z, .. } => -r1.theta_central(ell, &th, z),
                    Shape::Split(..) => int(0),
                    Shape::Elliptic => -r1.theta_sum(g, ell, &th, &classes.reps[c]),
                });
            }
        }
        Kind::SL2 => {
            push("trivial".into(), &|_| int(1));
            push("steinberg".into(), &st);
            let m = q - 1;
            for k in 1..m / 2 {
                push(format!("principal({k})"), &|c| match shapes[c] {
                    Shape::Central(a) => alpha(k, a).scale_int(qi + 1),
                    Shape::CentralUnipotent { z, .. } => alpha(k, z),
                    Shape::Split(a, b) => alpha(k, a).add_ref(&alpha(k, b)),
                    Shape::Elliptic => int(0),
                });
            }
            for k in 1..q.div_ceil(2) {
                let th = [k];
                push(format!("discrete({k})"), &|c| match shapes[c] {
                    Shape::Central(a) => r1.theta_central(ell, &th, a).scale_int(qi - 1),
                    Shape::CentralUnipotent { z, .. } => -r1.theta_central(ell, &th, z),
                    Shape::Split(..) => int(0),
                    Shape::Elliptic => -r1.theta_sum(g, ell, &th, &classes.reps[c]),
                });
            }
            // the quadratic characters give two pairs of half-size constituents
            let gauss: Cyclotomic = f.units().map(|x| f.psi(x).scale_int(f.legendre(x))).sum::<Cyclotomic>().reduce();
            let a0 = |x: Fq| int(f.legendre(x));
            let th0 = [q.div_ceil(2)];
            for (name, sign) in [("xi1", 1), ("xi2", -1)] {
                let gs = gauss.scale_int(sign);
                push(name.into(), &|c| match shapes[c] {
                    Shape::Central(a) => half(a0(a).scale_int(qi + 1)),
                    Shape::CentralUnipotent { z, square } => {
                        let s = if square { gs.clone() } else { -&gs };
                        half(a0(z).mul_ref(&int(1).add_ref(&s)))
                    }
                    Shape::Split(a, _) => a0(a),
                    Shape::Elliptic => int(0),
                });
            }
            for (name, sign) in [("eta1", 1), ("eta2", -1)] {
                let gs = gauss.scale_int(sign);
                push(name.into(), &|c| match shapes[c] {
                    Shape::Central(a) => half(r1.theta_central(ell, &th0, a).scale_int(qi - 1)),
                    Shape::CentralUnipotent { z, square } => {
                        let s = if square { gs.clone() } else { -&gs };
                        half(r1.theta_central(ell, &th0, z).mul_ref(&int(-1).add_ref(&s)))
                    }
                    Shape::Split(..) => int(0),
                    Shape::Elliptic => half(-r1.theta_sum(g, ell, &th0, &classes.reps[c])),
                });
            }
        }
        Kind::SL3 => unreachable!(),
    }
    Ok(ClassicalTable { table: CharacterTable { classes: Arc::clone(&info), characters: rows }, names })
}

#[cfg(test)]
mod tests {
    use super::super::{character_table_dixon, conjugacy_classes};
    use super::*;
    use crate::finite_lie::build_finite_group;

    #[test]
    fn counts_and_orthogonality() {
        for (kind, q) in [(Kind::GL2, 3), (Kind::SL2, 3), (Kind::SL2, 5), (Kind::GL2, 5), (Kind::SL2, 7), (Kind::SL2, 9)] {
            let g = build_finite_group(kind, q).unwrap();
            let c = conjugacy_classes(&g);
            let t = classical_table_oracle(&g, &c).unwrap();
            assert_eq!(t.table.characters.len(), c.len(), "{kind} {q}");
            assert!(t.table.orthogonality_holds(), "{kind} {q}");
        }
    }

    #[test]
    fn matches_dixon_small() {
        for (kind, q) in [(Kind::GL2, 3), (Kind::SL2, 3), (Kind::SL2, 5)] {
            let g = build_finite_group(kind, q).unwrap();
            let c = conjugacy_classes(&g);
            let classical = classical_table_oracle(&g, &c).unwrap();
            let dixon = character_table_dixon(&g).unwrap();
            assert!(classical.table.same_up_to_permutation(&dixon), "{kind} {q}");
        }
    }

    #[test]
    fn discrete_series_at_unipotent() {
        let g = build_finite_group(Kind::GL2, 5).unwrap();
        let c = conjugacy_classes(&g);
        let t = classical_table_oracle(&g, &c).unwrap();
        let u = c.class_of(&Mat::from_entries(2, &[1, 1, 0, 1])).unwrap();
        let d = t.names.iter().position(|n| n.starts_with("discrete")).unwrap();
        assert_eq!(t.table.characters[d].values[u], int(-1));
        let p = t.names.iter().position(|n| n.starts_with("principal")).unwrap();
        assert_eq!(t.table.characters[p].degree(), &int(6));
    }
}
