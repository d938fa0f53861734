//! Root data, their duals, Weyl groups and extended Dynkin diagrams.
//!
//! A datum is stored by its lattice rank `n` (both `X` and `Y` are `Z^n`
//! with the standard pairing), the simple roots in `X` and the simple
//! coroots in `Y`. All roots are generated by reflection closure and kept in
//! simple-root coordinates alongside their lattice vectors.

mod cartan;
mod dynkin;
mod weyl;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_math::{cokernel_group, FinAbGroup, IntMatrix};

pub use cartan::{cartan_matrix, components, identify, parse_type, Series};
pub use dynkin::{extended_dynkin, ExtDynkin, ExtNode};
pub use weyl::{weyl_group_enumerate, WeylGroup, WEYL_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Isogeny {
    Sc,
    Ad,
    /// `GL_n` for series A.
    GlSpecial,
}

impl Isogeny {
    pub fn parse(s: &str) -> Result<Isogeny> {
        match s.to_ascii_lowercase().as_str() {
            "sc" => Ok(Isogeny::Sc),
            "ad" => Ok(Isogeny::Ad),
            "gl" | "gl-special" => Ok(Isogeny::GlSpecial),
            _ => Err(Error::InvalidArgument(format!("unknown isogeny {s:?}"))),
        }
    }

    pub fn dual(self) -> Isogeny {
        match self {
            Isogeny::Sc => Isogeny::Ad,
            Isogeny::Ad => Isogeny::Sc,
            Isogeny::GlSpecial => Isogeny::GlSpecial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DatumLabel {
    pub series: Series,
    pub rank: usize,
    pub isogeny: Isogeny,
}

impl fmt::Display for DatumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let iso = match self.isogeny {
            Isogeny::Sc => "sc",
            Isogeny::Ad => "ad",
            Isogeny::GlSpecial => "gl",
        };
        write!(f, "{}{} {iso}", self.series, self.rank)
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    lattice_rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    /// roots in simple-root coordinates; positives first (by height), then negatives
    root_coords: Vec<Vec<i64>>,
    /// coroots in simple-coroot coordinates, matched with `root_coords`
    coroot_coords: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    label: Option<DatumLabel>,
}

const ROOT_BUDGET: usize = 1000;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(coeffs: &[i64], basis: &[Vec<i64>], dim: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    for (c, b) in coeffs.iter().zip(basis) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += c * bi;
        }
    }
    v
}

impl RootDatum {
    /// Builds the datum generated by the given simple roots (in `X = Z^n`)
    /// and simple coroots (in `Y = Z^n`). The pairing matrix must be a
    /// Cartan matrix of finite type.
    pub fn from_simple(
        lattice_rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        label: Option<DatumLabel>,
    ) -> Result<RootDatum> {
        let l = simple_roots.len();
        if simple_coroots.len() != l {
            return Err(Error::Dimension("roots and coroots differ in number".into()));
        }
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != lattice_rank) {
            return Err(Error::Dimension(format!("vectors must have length {lattice_rank}")));
        }
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| dot(&simple_roots[j], &simple_coroots[i])).collect())
            .collect();
        for i in 0..l {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidArgument(format!("<alpha_{i}, alpha_{i}^vee> != 2")));
            }
            for j in 0..l {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::InvalidArgument("not a Cartan matrix".into()));
                }
            }
        }

        // reflection closure on (root, coroot) pairs in simple coordinates
        let mut pairs: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for i in 0..l {
            let mut e = vec![0; l];
            e[i] = 1;
            pairs.insert(e.clone(), e.clone());
            queue.push((e.clone(), e));
        }
        while let Some((b, c)) = queue.pop() {
            for i in 0..l {
                // <beta, alpha_i^vee> and <alpha_i, beta^vee>
                let bi: i64 = (0..l).map(|j| b[j] * cartan[i][j]).sum();
                let ci: i64 = (0..l).map(|j| c[j] * cartan[j][i]).sum();
                let mut nb = b.clone();
                nb[i] -= bi;
                let mut nc = c.clone();
                nc[i] -= ci;
                if !pairs.contains_key(&nb) {
                    if pairs.len() >= ROOT_BUDGET {
                        return Err(Error::InvalidArgument("root system is not finite".into()));
                    }
                    pairs.insert(nb.clone(), nc.clone());
                    queue.push((nb, nc));
                }
            }
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> =
            pairs.into_iter().filter(|(b, _)| b.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|(a, _), (b, _)| {
            a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a))
        });
        let mut root_coords: Vec<Vec<i64>> = positive.iter().map(|(b, _)| b.clone()).collect();
        let mut coroot_coords: Vec<Vec<i64>> = positive.iter().map(|(_, c)| c.clone()).collect();
        let negate = |v: &Vec<i64>| v.iter().map(|x| -x).collect::<Vec<i64>>();
        root_coords.extend(positive.iter().map(|(b, _)| negate(b)));
        coroot_coords.extend(positive.iter().map(|(_, c)| negate(c)));

        let roots = root_coords.iter().map(|b| combine(b, &simple_roots, lattice_rank)).collect();
        let coroots = coroot_coords.iter().map(|c| combine(c, &simple_coroots, lattice_rank)).collect();
        Ok(RootDatum {
            lattice_rank,
            simple_roots,
            simple_coroots,
            cartan,
            root_coords,
            coroot_coords,
            roots,
            coroots,
            label,
        })
    }

    pub fn lattice_rank(&self) -> usize {
        self.lattice_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn label(&self) -> Option<DatumLabel> {
        self.label
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots as vectors in `X`, positive roots first.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Coroots in `Y`, index-matched with `roots`.
    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn root_coords(&self) -> &[Vec<i64>] {
        &self.root_coords
    }

    pub fn coroot_coords(&self) -> &[Vec<i64>] {
        &self.coroot_coords
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.root_coords[..self.num_positive()]
    }

    /// Highest root in simple coordinates (the last positive root, which is
    /// the unique one of maximal height when the datum is simple).
    pub fn highest_root_coords(&self) -> Option<&[i64]> {
        self.positive_root_coords().last().map(|v| v.as_slice())
    }

    pub fn is_semisimple(&self) -> bool {
        self.semisimple_rank() == self.lattice_rank && self.lattice_rank > 0
    }

    pub fn is_simple(&self) -> bool {
        self.is_semisimple() && components(&self.cartan).len() == 1
    }

    /// Cartan type such as `"A5xA1"`, with `"T<k>"` appended for a central
    /// torus of dimension `k`.
    pub fn cartan_type(&self) -> String {
        let central = self.lattice_rank - self.semisimple_rank();
        let mut parts = Vec::new();
        if self.semisimple_rank() > 0 {
            parts.push(identify(&self.cartan));
        }
        if central > 0 {
            parts.push(format!("T{central}"));
        }
        parts.join("x")
    }

    /// Type name using the declared label where it distinguishes B2 from C2.
    pub fn type_name(&self) -> String {
        match self.label {
            Some(l) if l.isogeny != Isogeny::GlSpecial => format!("{}{}", l.series, l.rank),
            _ => self.cartan_type(),
        }
    }

    pub fn pair(&self, root: usize, coroot: usize) -> i64 {
        dot(&self.roots[root], &self.coroots[coroot])
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == v)
    }

    /// Reflection `s_i` applied to a vector of `X`.
    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let c = dot(x, &self.simple_coroots[i]);
        x.iter().zip(&self.simple_roots[i]).map(|(a, b)| a - c * b).collect()
    }

    /// Sub-datum on the same lattices whose simple system is the given list
    /// of roots (indices into `roots`). The caller is responsible for
    /// passing a base of a closed subsystem.
    pub fn sub_datum(&self, simple: &[usize]) -> Result<RootDatum> {
        RootDatum::from_simple(
            self.lattice_rank,
            simple.iter().map(|&i| self.roots[i].clone()).collect(),
            simple.iter().map(|&i| self.coroots[i].clone()).collect(),
            None,
        )
    }

    /// Base of the closed subsystem formed by the given root indices: its
    /// positive members (for the ambient order) that are not sums of two
    /// others.
    pub fn subsystem_base(&self, members: &[usize]) -> Vec<usize> {
        let npos = self.num_positive();
        let pos: Vec<usize> = members.iter().copied().filter(|&i| i < npos).collect();
        let coords: Vec<&Vec<i64>> = pos.iter().map(|&i| &self.root_coords[i]).collect();
        pos.iter()
            .enumerate()
            .filter(|&(a, _)| {
                !(0..coords.len()).any(|b| {
                    b != a && {
                        let diff: Vec<i64> = coords[a].iter().zip(coords[b]).map(|(x, y)| x - y).collect();
                        coords.iter().any(|c| **c == diff)
                    }
                })
            })
            .map(|(_, &i)| i)
            .collect()
    }

    pub fn same_lattice_data(&self, other: &RootDatum) -> bool {
        self.lattice_rank == other.lattice_rank
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.same_lattice_data(other) && self.label == other.label
    }
}

pub fn build_root_datum(series: Series, rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
    let label = Some(DatumLabel { series, rank, isogeny });
    if isogeny == Isogeny::GlSpecial {
        if series != Series::A || rank > 7 {
            return Err(Error::Unsupported(format!("gl-special form of {series}{rank}")));
        }
        let n = rank + 1;
        let simple: Vec<Vec<i64>> = (0..rank)
            .map(|j| {
                let mut v = vec![0; n];
                v[j] = 1;
                v[j + 1] = -1;
                v
            })
            .collect();
        return RootDatum::from_simple(n, simple.clone(), simple, label);
    }
    let a = cartan_matrix(series, rank)?;
    let unit = |i: usize| {
        let mut v = vec![0; rank];
        v[i] = 1;
        v
    };
    let (roots, coroots): (Vec<Vec<i64>>, Vec<Vec<i64>>) = match isogeny {
        // X = weight lattice: alpha_j = sum_i a[i][j] omega_i, coroots = dual basis
        Isogeny::Sc => ((0..rank).map(|j| (0..rank).map(|i| a[i][j]).collect()).collect(), (0..rank).map(unit).collect()),
        // X = root lattice
        Isogeny::Ad => ((0..rank).map(unit).collect(), a.clone()),
        Isogeny::GlSpecial => unreachable!(),
    };
    RootDatum::from_simple(rank, roots, coroots, label)
}

/// Swaps `(X, roots)` with `(Y, coroots)`.
pub fn dual_datum(r: &RootDatum) -> RootDatum {
    let label = r.label.map(|l| DatumLabel { series: l.series.dual(), rank: l.rank, isogeny: l.isogeny.dual() });
    RootDatum::from_simple(r.lattice_rank, r.simple_coroots.clone(), r.simple_roots.clone(), label)
        .expect("dual of a valid datum is valid")
}

/// `P^vee / Q^vee` of the simply connected form, from the Smith form of the
/// Cartan matrix.
pub fn fundamental_group(r: &RootDatum) -> Result<FinAbGroup> {
    if !r.is_semisimple() {
        return Err(Error::Precondition("fundamental group needs a semisimple datum".into()));
    }
    let rows: Vec<Vec<i64>> = r.cartan.clone();
    Ok(cokernel_group(&IntMatrix::from_rows(&rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(t: &str, iso: Isogeny) -> RootDatum {
        let (s, n) = parse_type(t).unwrap();
        build_root_datum(s, n, iso).unwrap()
    }

    #[test]
    fn sl2_normalization() {
        let r = datum("A1", Isogeny::Sc);
        assert_eq!(r.roots(), &[vec![2], vec![-2]]);
        assert_eq!(r.coroots(), &[vec![1], vec![-1]]);
    }

    #[test]
    fn root_counts() {
        for (t, n) in [("A1", 2), ("A2", 6), ("C2", 8), ("G2", 12), ("D4", 24), ("F4", 48), ("E6", 72), ("E8", 240)] {
            assert_eq!(datum(t, Isogeny::Sc).roots().len(), n, "{t}");
            assert_eq!(datum(t, Isogeny::Ad).roots().len(), n, "{t}");
        }
        assert_eq!(build_root_datum(Series::A, 2, Isogeny::GlSpecial).unwrap().roots().len(), 6);
    }

    #[test]
    fn pairing_is_two_and_closed() {
        for t in ["B3", "C3", "G2", "F4", "D5"] {
            let r = datum(t, Isogeny::Sc);
            for k in 0..r.roots().len() {
                assert_eq!(r.pair(k, k), 2);
                for i in 0..r.semisimple_rank() {
                    assert!(r.root_index(&r.reflect(i, &r.roots()[k])).is_some());
                }
            }
        }
    }

    #[test]
    fn duality() {
        let sp4 = datum("C2", Isogeny::Sc);
        let d = dual_datum(&sp4);
        assert_eq!(d.label().unwrap().series, Series::B);
        assert_eq!(d.label().unwrap().isogeny, Isogeny::Ad);
        assert_eq!(dual_datum(&d), sp4);
        let sl2 = datum("A1", Isogeny::Sc);
        assert_eq!(dual_datum(&sl2).roots(), datum("A1", Isogeny::Ad).roots());
        let g2 = datum("G2", Isogeny::Sc);
        assert_eq!(dual_datum(&g2).cartan_type(), "G2");
    }

    #[test]
    fn fundamental_groups() {
        assert_eq!(fundamental_group(&datum("A2", Isogeny::Sc)).unwrap().torsion, vec![3]);
        assert_eq!(fundamental_group(&datum("D4", Isogeny::Sc)).unwrap().torsion, vec![2, 2]);
        assert!(fundamental_group(&datum("E8", Isogeny::Sc)).unwrap().is_trivial());
        let gl = build_root_datum(Series::A, 1, Isogeny::GlSpecial).unwrap();
        assert!(fundamental_group(&gl).is_err());
    }

    #[test]
    fn subsystem_base_of_long_roots() {
        let b2 = datum("B2", Isogeny::Ad);
        // long roots of B2 form A1 x A1
        let long: Vec<usize> = (0..b2.roots().len())
            .filter(|&k| b2.root_coords()[k][0] != 0 && b2.root_coords()[k][1] % 2 == 0)
            .collect();
        assert_eq!(long.len(), 4);
        let base = b2.subsystem_base(&long);
        let sub = b2.sub_datum(&base).unwrap();
        assert_eq!(sub.roots().len(), long.len());
        assert_eq!(sub.cartan_type(), "A1xA1");
    }
}
