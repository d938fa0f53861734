use std::collections::HashMap;

use super::{dot, RootDatum};
use crate::error::{Error, Result};
use crate::exact_math::IntMatrix;

pub const WEYL_BUDGET: u64 = 1_000_000;

/// Weyl group acting on `X`. Elements, when enumerated, are stored as
/// row-major `n x n` integer matrices.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    dim: usize,
    generators: Vec<IntMatrix>,
    order: u64,
    elements: Option<Vec<Vec<i64>>>,
}

impl WeylGroup {
    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn elements(&self) -> Option<&[Vec<i64>]> {
        self.elements.as_deref()
    }

    pub fn element(&self, k: usize) -> Option<IntMatrix> {
        let e = self.elements.as_ref()?.get(k)?;
        Some(IntMatrix::from_i64(self.dim, self.dim, e))
    }
}

/// Degrees of the basic invariants, from the height distribution of the
/// positive roots.
pub fn degrees(r: &RootDatum) -> Vec<u64> {
    let heights: Vec<i64> = r.positive_root_coords().iter().map(|c| c.iter().sum()).collect();
    let max = heights.iter().copied().max().unwrap_or(0);
    // number of exponents >= k equals the number of roots of height k
    let mut count = vec![0usize; max as usize + 2];
    for h in heights {
        count[h as usize] += 1;
    }
    let l = r.semisimple_rank();
    let mut degrees = Vec::with_capacity(l);
    for k in 1..=max as usize {
        let ge_k = count[k];
        let ge_next = count[k + 1];
        for _ in ge_next..ge_k {
            degrees.push(k as u64 + 1);
        }
    }
    degrees.sort_unstable();
    degrees
}

pub fn weyl_group_enumerate(r: &RootDatum, enumerate: bool) -> Result<WeylGroup> {
    let n = r.lattice_rank();
    let generators: Vec<IntMatrix> = (0..r.semisimple_rank())
        .map(|i| {
            let cols: Vec<Vec<i64>> = (0..n)
                .map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    r.reflect(i, &e)
                })
                .collect();
            IntMatrix::from_columns(n, &cols).expect("square")
        })
        .collect();
    let order: u64 = degrees(r).iter().product();
    let mut w = WeylGroup { dim: n, generators, order, elements: None };
    if !enumerate {
        return Ok(w);
    }
    if order > WEYL_BUDGET {
        return Err(Error::Budget { what: format!("Weyl group of order {order}"), budget: WEYL_BUDGET });
    }
    let gens: Vec<Vec<i64>> = w
        .generators
        .iter()
        .map(|g| g.to_i64_rows().expect("small entries").concat())
        .collect();
    let mut rho2 = vec![0i64; n];
    for root in &r.roots()[..r.num_positive()] {
        for (a, b) in rho2.iter_mut().zip(root) {
            *a += b;
        }
    }
    let identity: Vec<i64> = (0..n * n).map(|k| i64::from(k % (n + 1) == 0)).collect();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(rho2.clone(), 0);
    let mut elements = vec![identity];
    let mut vectors = vec![rho2];
    let mut head = 0;
    while head < elements.len() {
        for g in &gens {
            let v = mat_vec(g, &vectors[head], n);
            if seen.contains_key(&v) {
                continue;
            }
            if elements.len() as u64 >= WEYL_BUDGET {
                return Err(Error::Budget { what: "Weyl enumeration".into(), budget: WEYL_BUDGET });
            }
            seen.insert(v.clone(), elements.len());
            elements.push(mat_mul(g, &elements[head], n));
            vectors.push(v);
        }
        head += 1;
    }
    debug_assert_eq!(elements.len() as u64, order);
    w.order = elements.len() as u64;
    w.elements = Some(elements);
    Ok(w)
}

fn mat_vec(m: &[i64], v: &[i64], n: usize) -> Vec<i64> {
    (0..n).map(|i| dot(&m[i * n..(i + 1) * n], v)).collect()
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0 {
                for j in 0..n {
                    out[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_root_datum, parse_type, Isogeny};

    fn weyl(t: &str, enumerate: bool) -> WeylGroup {
        let (s, n) = parse_type(t).unwrap();
        weyl_group_enumerate(&build_root_datum(s, n, Isogeny::Sc).unwrap(), enumerate).unwrap()
    }

    #[test]
    fn small_orders_by_enumeration() {
        for (t, n) in [("A2", 6), ("B2", 8), ("C2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("D4", 192)] {
            let w = weyl(t, true);
            assert_eq!(w.order(), n, "{t}");
            assert_eq!(w.elements().unwrap().len() as u64, n);
        }
    }

    #[test]
    fn e6_enumerates_within_budget() {
        assert_eq!(weyl("E6", true).order(), 51840);
    }

    #[test]
    fn large_orders_from_degrees() {
        assert_eq!(weyl("E7", false).order(), 2_903_040);
        assert_eq!(weyl("E8", false).order(), 696_729_600);
        assert_eq!(weyl("F4", false).order(), 1152);
        let (s, n) = parse_type("E8").unwrap();
        let r = build_root_datum(s, n, Isogeny::Sc).unwrap();
        assert!(matches!(weyl_group_enumerate(&r, true), Err(Error::Budget { .. })));
    }

    #[test]
    fn involutions_and_braid_relations() {
        for t in ["A3", "B3", "G2", "F4"] {
            let (s, n) = parse_type(t).unwrap();
            let r = build_root_datum(s, n, Isogeny::Ad).unwrap();
            let w = weyl_group_enumerate(&r, false).unwrap();
            let g = w.generators();
            for i in 0..g.len() {
                assert!(g[i].pow(2).is_identity());
                for j in 0..i {
                    let m = match r.cartan()[i][j] * r.cartan()[j][i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        _ => 6,
                    };
                    assert!((&g[i] * &g[j]).pow(m).is_identity(), "{t} {i} {j}");
                }
            }
        }
    }
}
