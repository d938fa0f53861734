//! Split elliptic endoscopic triples through the center action on the
//! extended Dynkin diagram of the dual group.
//!
//! Points of the dual torus are handled through rational cocharacters of the
//! adjoint dual torus, written in fundamental coweight coordinates: a point
//! `x` is the vector `(alpha_1(x), ..., alpha_l(x))` of its values on the
//! simple roots of the dual group. The fundamental alcove is
//! `alpha_i(x) >= 0, theta(x) <= 1`.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_math::{Cokernel, FinAbGroup, IntMatrix};
use crate::root_datum::{dual_datum, extended_dynkin, ExtDynkin, Isogeny, RootDatum};

pub const FOLD_BUDGET: u64 = 10_000;

type Q = Rational64;

/// Affine Weyl geometry of a simple datum, in coweight coordinates.
#[derive(Clone, Debug)]
struct Alcove {
    cartan: Vec<Vec<i64>>,
    theta: Vec<i64>,
    /// `theta^vee` in coweight coordinates
    theta_coroot: Vec<i64>,
    vertices: Vec<Vec<Q>>,
}

/// A reflection step: `None` for the affine reflection `s_0`.
type Step = Option<usize>;

impl Alcove {
    fn new(r: &RootDatum, ext: &ExtDynkin) -> Alcove {
        let cartan = r.cartan().to_vec();
        let l = cartan.len();
        let theta = ext.theta();
        let c = &r.coroot_coords()[r.num_positive() - 1];
        let theta_coroot = (0..l).map(|j| (0..l).map(|i| c[i] * cartan[i][j]).sum()).collect();
        Alcove { cartan, theta, theta_coroot, vertices: ext.vertices.clone() }
    }

    fn theta_of(&self, x: &[Q]) -> Q {
        self.theta.iter().zip(x).map(|(&b, &xi)| xi * b).sum()
    }

    fn apply(&self, step: Step, x: &mut [Q]) {
        match step {
            Some(i) => {
                let c = x[i];
                for (xj, &a) in x.iter_mut().zip(&self.cartan[i]) {
                    *xj -= c * a;
                }
            }
            None => {
                let c = self.theta_of(x) - Q::from_integer(1);
                for (xj, &a) in x.iter_mut().zip(&self.theta_coroot) {
                    *xj -= c * a;
                }
            }
        }
    }

    /// Moves `x` into the closed alcove, returning the reflections used.
    fn fold(&self, x: &mut [Q]) -> Result<Vec<Step>> {
        let mut word = Vec::new();
        loop {
            let step = match x.iter().position(|v| *v < Q::zero()) {
                Some(i) => Some(i),
                None if self.theta_of(x) > Q::from_integer(1) => None,
                None => return Ok(word),
            };
            if word.len() as u64 >= FOLD_BUDGET {
                return Err(Error::Budget { what: "affine folding".into(), budget: FOLD_BUDGET });
            }
            self.apply(step, x);
            word.push(step);
        }
    }

    fn vertex_index(&self, x: &[Q]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == x)
    }

    fn barycenter(&self) -> Vec<Q> {
        let n = self.vertices.len() as i64;
        let l = self.cartan.len();
        (0..l).map(|j| self.vertices.iter().map(|v| v[j]).sum::<Q>() / n).collect()
    }
}

/// Permutations of the extended diagram of the dual group induced by
/// `Z(G^sc)` of the dual, one per group element.
#[derive(Clone, Debug, Serialize)]
pub struct CenterDiagramAction {
    pub group: FinAbGroup,
    /// elements of `group` in torsion coordinates
    pub elements: Vec<Vec<u64>>,
    /// coweight representatives of the elements
    pub lifts: Vec<Vec<i64>>,
    pub permutations: Vec<Vec<usize>>,
}

impl CenterDiagramAction {
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.permutations.first().map_or(0, |p| p.len());
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let mut orbit: Vec<usize> = self.permutations.iter().map(|p| p[v]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &w in &orbit {
                seen[w] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, vertex: usize) -> Vec<Vec<u64>> {
        self.elements
            .iter()
            .zip(&self.permutations)
            .filter(|(_, p)| p[vertex] == vertex)
            .map(|(e, _)| e.clone())
            .collect()
    }

    /// Checks `c_{a+b} = c_a . c_b` for all pairs.
    pub fn is_homomorphism(&self) -> bool {
        let index = |e: &[u64]| self.elements.iter().position(|x| x == e);
        let n = self.permutations.first().map_or(0, |p| p.len());
        for (a, pa) in self.elements.iter().zip(&self.permutations) {
            for (b, pb) in self.elements.iter().zip(&self.permutations) {
                let Some(k) = index(&self.group.add(a, b)) else { return false };
                if (0..n).any(|v| self.permutations[k][v] != pa[pb[v]]) {
                    return false;
                }
            }
        }
        let zero = vec![0; self.group.torsion.len()];
        index(&zero).is_some_and(|k| (0..n).all(|v| self.permutations[k][v] == v))
    }
}

struct DualSide {
    ghat: RootDatum,
    ext: ExtDynkin,
    alcove: Alcove,
}

fn dual_side(g: &RootDatum) -> Result<DualSide> {
    if !g.is_simple() {
        return Err(Error::Precondition("a simple datum is required".into()));
    }
    let ghat = dual_datum(g);
    let ext = extended_dynkin(&ghat)?;
    let alcove = Alcove::new(&ghat, &ext);
    Ok(DualSide { ghat, ext, alcove })
}

pub fn center_alcove_action(g: &RootDatum) -> Result<CenterDiagramAction> {
    let side = dual_side(g)?;
    let l = side.ghat.semisimple_rank();
    // coweights modulo coroots; column i = alpha_i^vee in coweight coordinates
    let cok = Cokernel::new(&IntMatrix::from_rows(side.ghat.cartan())?.transpose());
    let group = cok.group.clone();
    let elements = group.elements();
    let center = side.alcove.barycenter();
    let mut lifts = Vec::new();
    let mut permutations = Vec::new();
    for e in &elements {
        let mu: Vec<i64> = cok.lift(e).iter().map(|x| x.to_i64().expect("small lift")).collect();
        let shift = |v: &[Q]| -> Vec<Q> { v.iter().zip(&mu).map(|(&a, &m)| a + m).collect() };
        let mut x = shift(&center);
        let word = side.alcove.fold(&mut x)?;
        let mut perm = Vec::with_capacity(l + 1);
        for v in &side.alcove.vertices {
            let mut y = shift(v);
            for &s in &word {
                side.alcove.apply(s, &mut y);
            }
            let k = side
                .alcove
                .vertex_index(&y)
                .ok_or_else(|| Error::Precondition("folded vertex is not an alcove vertex".into()))?;
            perm.push(k);
        }
        lifts.push(mu);
        permutations.push(perm);
    }
    Ok(CenterDiagramAction { group, elements, lifts, permutations })
}

/// `Z(E)` as an abstract group together with its embedding into the
/// center, given as a list of center elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterSubgroup {
    pub group: FinAbGroup,
    pub embedding: Vec<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct EndoscopicTriple {
    pub ambient: RootDatum,
    pub h_datum: RootDatum,
    pub h_type: String,
    /// `s` as a point in coweight coordinates of the dual group
    pub kappa: Vec<Q>,
    pub ord_s: u64,
    pub vertex_orbit: Vec<usize>,
    pub marks: Vec<u64>,
    pub elliptic: bool,
    pub lambda: Option<FinAbGroup>,
    pub z_of_e: Option<CenterSubgroup>,
}

impl EndoscopicTriple {
    /// Isomorphism of split triples: same orbit, same type of `H`, same
    /// order of `s`.
    pub fn is_isomorphic(&self, other: &EndoscopicTriple) -> bool {
        self.vertex_orbit == other.vertex_orbit
            && self.h_datum.cartan_type() == other.h_datum.cartan_type()
            && self.ord_s == other.ord_s
    }
}

impl Serialize for EndoscopicTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EndoscopicTriple", 6)?;
        st.serialize_field("orbit", &self.vertex_orbit)?;
        st.serialize_field("marks", &self.marks)?;
        st.serialize_field("ord_s", &self.ord_s)?;
        st.serialize_field("H_type", &self.h_type)?;
        st.serialize_field("lambda", &self.lambda)?;
        st.serialize_field("elliptic", &self.elliptic)?;
        st.end()
    }
}

/// Sub-datum of the dual group generated by the extended-diagram nodes
/// other than `vertex`.
pub fn pseudo_levi(g: &RootDatum, vertex: usize) -> Result<RootDatum> {
    let side = dual_side(g)?;
    pseudo_levi_of(&side, vertex)
}

fn pseudo_levi_of(side: &DualSide, vertex: usize) -> Result<RootDatum> {
    if vertex >= side.ext.len() {
        return Err(Error::InvalidArgument(format!("vertex {vertex} out of range")));
    }
    let keep: Vec<_> = side.ext.nodes.iter().enumerate().filter(|&(k, _)| k != vertex).map(|(_, n)| n).collect();
    RootDatum::from_simple(
        side.ghat.lattice_rank(),
        keep.iter().map(|n| n.root.clone()).collect(),
        keep.iter().map(|n| n.coroot.clone()).collect(),
        None,
    )
}

pub fn enumerate_split_elliptic(g: &RootDatum) -> Result<Vec<EndoscopicTriple>> {
    if g.label().is_some_and(|l| l.isogeny == Isogeny::GlSpecial) {
        return Err(Error::Precondition("enumeration needs a simple sc or ad datum".into()));
    }
    let side = dual_side(g)?;
    let action = center_alcove_action(g)?;
    let marks = side.ext.marks();
    action
        .orbits()
        .into_iter()
        .map(|orbit| {
            let rep = orbit[0];
            let hhat = pseudo_levi_of(&side, rep)?;
            let h_datum = dual_datum(&hhat);
            let h_type = if rep == 0 { g.type_name() } else { h_datum.cartan_type() };
            let stab = action.stabilizer(rep);
            let lambda = action.group.subgroup_type(&stab);
            Ok(EndoscopicTriple {
                ambient: g.clone(),
                h_datum,
                h_type,
                kappa: side.alcove.vertices[rep].clone(),
                ord_s: marks[rep],
                marks: orbit.iter().map(|&v| marks[v]).collect(),
                vertex_orbit: orbit,
                elliptic: true,
                lambda: Some(lambda.clone()),
                z_of_e: Some(CenterSubgroup { group: lambda, embedding: stab }),
            })
        })
        .collect()
}

pub fn triple_symmetries(e: &EndoscopicTriple) -> Result<(FinAbGroup, CenterSubgroup)> {
    match (&e.lambda, &e.z_of_e, e.elliptic) {
        (Some(l), Some(z), true) => Ok((l.clone(), z.clone())),
        _ => Err(Error::Precondition("symmetries need an elliptic triple".into())),
    }
}

pub fn endoscopic_from_kappa(g: &RootDatum, kappa: &[Q]) -> Result<EndoscopicTriple> {
    let side = dual_side(g)?;
    let l = side.ghat.semisimple_rank();
    if kappa.len() != l {
        return Err(Error::Dimension(format!("kappa must have {l} coordinates")));
    }
    let members: Vec<usize> = (0..side.ghat.roots().len())
        .filter(|&k| {
            let v: Q = side.ghat.root_coords()[k].iter().zip(kappa).map(|(&b, &x)| x * b).sum();
            v.is_integer()
        })
        .collect();
    let base = side.ghat.subsystem_base(&members);
    let hhat = side.ghat.sub_datum(&base)?;
    let ord_s = kappa.iter().fold(1i64, |acc, x| acc.lcm(x.denom())) as u64;
    let elliptic = hhat.semisimple_rank() == l;
    if !elliptic {
        let h_datum = dual_datum(&hhat);
        return Ok(EndoscopicTriple {
            ambient: g.clone(),
            h_type: h_datum.cartan_type(),
            h_datum,
            kappa: kappa.to_vec(),
            ord_s,
            vertex_orbit: vec![],
            marks: vec![],
            elliptic: false,
            lambda: None,
            z_of_e: None,
        });
    }
    let mut x = kappa.to_vec();
    side.alcove.fold(&mut x)?;
    let v = side
        .alcove
        .vertex_index(&x)
        .ok_or_else(|| Error::Precondition("elliptic kappa did not reduce to a vertex".into()))?;
    let triple = enumerate_split_elliptic(g)?
        .into_iter()
        .find(|t| t.vertex_orbit.contains(&v))
        .expect("every vertex lies in an orbit");
    let h_datum = dual_datum(&hhat);
    if h_datum.cartan_type() != triple.h_datum.cartan_type() || ord_s != triple.ord_s {
        return Err(Error::Precondition("kappa data disagree with the enumerated triple".into()));
    }
    Ok(EndoscopicTriple { h_datum, kappa: kappa.to_vec(), ..triple })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub orbit: Vec<usize>,
    pub ord_s: u64,
    pub center_order: u64,
    pub gcd: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateReport {
    pub group_type: String,
    pub center_order: u64,
    /// non-special orbits of size greater than two
    pub large_nonspecial: Vec<OrbitReport>,
    /// every reported orbit has `gcd(ord(s), |Z|) = 1`
    pub consistent: bool,
}

pub fn estimate_diagram_check(g: &RootDatum) -> Result<EstimateReport> {
    let side = dual_side(g)?;
    if g.cartan_type().starts_with('A') {
        return Err(Error::Precondition("type A is excluded".into()));
    }
    let action = center_alcove_action(g)?;
    let marks = side.ext.marks();
    let center_order = action.group.torsion_order();
    let large_nonspecial: Vec<OrbitReport> = action
        .orbits()
        .into_iter()
        .filter(|o| !o.contains(&0) && o.len() > 2)
        .map(|o| {
            let ord_s = marks[o[0]];
            OrbitReport { gcd: ord_s.gcd(&center_order), orbit: o, ord_s, center_order }
        })
        .collect();
    let consistent = large_nonspecial.iter().all(|o| o.gcd == 1);
    Ok(EstimateReport { group_type: g.type_name(), center_order, large_nonspecial, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, parse_type};

    fn datum(t: &str, iso: Isogeny) -> RootDatum {
        let (s, n) = parse_type(t).unwrap();
        build_root_datum(s, n, iso).unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn a1_swap() {
        let a = center_alcove_action(&datum("A1", Isogeny::Sc)).unwrap();
        assert_eq!(a.permutations, vec![vec![0, 1], vec![1, 0]]);
        assert!(a.is_homomorphism());
    }

    #[test]
    fn a2_three_cycle() {
        let a = center_alcove_action(&datum("A2", Isogeny::Ad)).unwrap();
        assert_eq!(a.group.torsion, vec![3]);
        let g = &a.permutations[1];
        assert!((0..3).all(|v| g[v] != v));
        assert!(a.is_homomorphism());
    }

    #[test]
    fn b2_action_fixes_mark_two() {
        let a = center_alcove_action(&datum("C2", Isogeny::Sc)).unwrap();
        assert_eq!(a.permutations[1], vec![1, 0, 2]);
    }

    #[test]
    fn sp4_triples() {
        let t = enumerate_split_elliptic(&datum("C2", Isogeny::Sc)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].vertex_orbit.clone(), t[0].ord_s, t[0].h_type.as_str()), (vec![0, 1], 1, "C2"));
        assert!(t[0].lambda.as_ref().unwrap().is_trivial());
        assert_eq!((t[1].vertex_orbit.clone(), t[1].ord_s, t[1].h_type.as_str()), (vec![2], 2, "A1xA1"));
        assert_eq!(t[1].lambda.as_ref().unwrap().torsion, vec![2]);
    }

    #[test]
    fn sl2_single_triple() {
        let t = enumerate_split_elliptic(&datum("A1", Isogeny::Sc)).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].vertex_orbit, vec![0, 1]);
        assert!(triple_symmetries(&t[0]).unwrap().0.is_trivial());
    }

    #[test]
    fn g2_triples() {
        let t = enumerate_split_elliptic(&datum("G2", Isogeny::Sc)).unwrap();
        let mut ords: Vec<u64> = t.iter().map(|x| x.ord_s).collect();
        ords.sort_unstable();
        assert_eq!(ords, vec![1, 2, 3]);
        let ord3 = t.iter().find(|x| x.ord_s == 3).unwrap();
        assert_eq!(ord3.h_type, "A2");
        let ord2 = t.iter().find(|x| x.ord_s == 2).unwrap();
        assert_eq!(ord2.h_type, "A1xA1");
    }

    #[test]
    fn pseudo_levi_examples() {
        let sp4 = datum("C2", Isogeny::Sc);
        assert_eq!(pseudo_levi(&sp4, 2).unwrap().cartan_type(), "A1xA1");
        assert_eq!(pseudo_levi(&sp4, 0).unwrap().cartan_type(), "B2");
        assert!(pseudo_levi(&sp4, 3).is_err());
    }

    #[test]
    fn kappa_examples() {
        let sp4 = datum("C2", Isogeny::Sc);
        let t = endoscopic_from_kappa(&sp4, &[q(0, 1), q(0, 1)]).unwrap();
        assert!(t.elliptic && t.ord_s == 1 && t.vertex_orbit == vec![0, 1]);
        let t = endoscopic_from_kappa(&sp4, &[q(0, 1), q(1, 2)]).unwrap();
        assert!(t.elliptic && t.ord_s == 2 && t.vertex_orbit == vec![2]);
        // shifted by a coroot and reflected: same triple
        let t = endoscopic_from_kappa(&sp4, &[q(-2, 1), q(5, 2)]).unwrap();
        assert!(t.elliptic && t.vertex_orbit == vec![2]);

        let sl2 = datum("A1", Isogeny::Sc);
        let t = endoscopic_from_kappa(&sl2, &[q(1, 2)]).unwrap();
        assert!(!t.elliptic);
        assert_eq!(t.h_type, "T1");
        assert!(triple_symmetries(&t).is_err());
    }

    #[test]
    fn estimate_facts() {
        let e6 = estimate_diagram_check(&datum("E6", Isogeny::Sc)).unwrap();
        assert_eq!(e6.center_order, 3);
        assert_eq!(e6.large_nonspecial.len(), 1);
        assert_eq!(e6.large_nonspecial[0].ord_s, 2);
        assert_eq!(e6.large_nonspecial[0].gcd, 1);
        let d4 = estimate_diagram_check(&datum("D4", Isogeny::Sc)).unwrap();
        assert!(d4.large_nonspecial.is_empty());
        assert!(estimate_diagram_check(&datum("A3", Isogeny::Sc)).is_err());
    }
}
