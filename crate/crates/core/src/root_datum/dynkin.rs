use num_rational::Rational64;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::RootDatum;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtNode {
    /// `a0` for the affine node, `a1..al` for simple roots.
    pub label: String,
    pub mark: u64,
    #[serde(skip)]
    pub root: Vec<i64>,
    #[serde(skip)]
    pub coroot: Vec<i64>,
    /// simple-root coordinates; `-theta` for the affine node
    #[serde(skip)]
    pub coords: Vec<i64>,
}

/// Extended Dynkin diagram of a simple datum. Alcove vertices are given by
/// their values on the simple roots (fundamental coweight coordinates).
#[derive(Clone, Debug)]
pub struct ExtDynkin {
    pub nodes: Vec<ExtNode>,
    /// `(i, j, a_ij * a_ji)` for each bonded pair `i < j`
    pub edges: Vec<(usize, usize, i64)>,
    pub vertices: Vec<Vec<Rational64>>,
}

impl ExtDynkin {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn marks(&self) -> Vec<u64> {
        self.nodes.iter().map(|n| n.mark).collect()
    }

    /// Highest root in simple coordinates.
    pub fn theta(&self) -> Vec<i64> {
        self.nodes[0].coords.iter().map(|x| -x).collect()
    }
}

impl Serialize for ExtDynkin {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let vertices: Vec<Vec<String>> =
            self.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        let mut st = s.serialize_struct("ExtDynkin", 3)?;
        st.serialize_field("nodes", &self.nodes)?;
        st.serialize_field("edges", &self.edges)?;
        st.serialize_field("vertices", &vertices)?;
        st.end()
    }
}

pub fn extended_dynkin(r: &RootDatum) -> Result<ExtDynkin> {
    if !r.is_simple() {
        return Err(Error::Precondition("extended diagram needs a simple datum".into()));
    }
    let l = r.semisimple_rank();
    let npos = r.num_positive();
    let theta_idx = npos - 1;
    let theta = r.root_coords()[theta_idx].clone();
    let mut nodes = vec![ExtNode {
        label: "a0".into(),
        mark: 1,
        root: r.roots()[theta_idx].iter().map(|x| -x).collect(),
        coroot: r.coroots()[theta_idx].iter().map(|x| -x).collect(),
        coords: theta.iter().map(|x| -x).collect(),
    }];
    for i in 0..l {
        let mut e = vec![0; l];
        e[i] = 1;
        nodes.push(ExtNode {
            label: format!("a{}", i + 1),
            mark: theta[i] as u64,
            root: r.simple_roots()[i].clone(),
            coroot: r.simple_coroots()[i].clone(),
            coords: e,
        });
    }
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            let aij = super::dot(&nodes[j].root, &nodes[i].coroot);
            let aji = super::dot(&nodes[i].root, &nodes[j].coroot);
            if aij * aji != 0 {
                edges.push((i, j, aij * aji));
            }
        }
    }
    let mut vertices = vec![vec![Rational64::from_integer(0); l]];
    for i in 0..l {
        let mut v = vec![Rational64::from_integer(0); l];
        v[i] = Rational64::new(1, theta[i]);
        vertices.push(v);
    }
    Ok(ExtDynkin { nodes, edges, vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, parse_type, Isogeny};

    fn ext(t: &str) -> ExtDynkin {
        let (s, n) = parse_type(t).unwrap();
        extended_dynkin(&build_root_datum(s, n, Isogeny::Ad).unwrap()).unwrap()
    }

    #[test]
    fn marks() {
        assert_eq!(ext("A1").marks(), vec![1, 1]);
        assert_eq!(ext("B2").marks(), vec![1, 1, 2]);
        // Bourbaki: alpha_1 short, theta = 3 alpha_1 + 2 alpha_2
        assert_eq!(ext("G2").marks(), vec![1, 3, 2]);
        assert_eq!(ext("E6").marks(), vec![1, 1, 2, 2, 3, 2, 1]);
        assert_eq!(ext("E8").marks(), vec![1, 2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(ext("F4").marks(), vec![1, 2, 3, 4, 2]);
    }

    #[test]
    fn marks_give_linear_dependence() {
        for t in ["A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let d = ext(t);
            let n = d.nodes[0].root.len();
            let mut sum = vec![0i64; n];
            for node in &d.nodes {
                for (s, x) in sum.iter_mut().zip(&node.root) {
                    *s += node.mark as i64 * x;
                }
            }
            assert!(sum.iter().all(|&x| x == 0), "{t}");
        }
    }

    #[test]
    fn affine_a1_double_bond() {
        assert_eq!(ext("A1").edges, vec![(0, 1, 4)]);
        assert_eq!(ext("A2").edges.len(), 3);
    }

    #[test]
    fn rejects_non_simple() {
        let gl = build_root_datum(crate::root_datum::Series::A, 2, Isogeny::GlSpecial).unwrap();
        assert!(extended_dynkin(&gl).is_err());
    }
}
