use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::group::FiniteGroup;
use crate::exact_math::Cyclotomic;

/// Class data shared by every class function of a group.
#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub group_order: u64,
    pub labels: Vec<String>,
    pub sizes: Vec<u64>,
    pub orders: Vec<u64>,
    /// class of the inverse
    pub inverse: Vec<usize>,
    /// `powers[c][i]` is the class of `g^i` for `g` in class `c`, `i < orders[c]`
    #[serde(skip)]
    pub powers: Vec<Vec<usize>>,
    pub exponent: u64,
}

impl ClassInfo {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn central(&self) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.sizes[c] == 1).collect()
    }
}

/// Conjugacy classes with representatives; class 0 is the identity.
#[derive(Clone, Debug)]
pub struct Classes<E> {
    pub info: Arc<ClassInfo>,
    pub reps: Vec<E>,
    class_of: HashMap<E, usize>,
}

impl<E: Copy + Eq + std::hash::Hash> Classes<E> {
    pub fn class_of(&self, g: &E) -> Option<usize> {
        self.class_of.get(g).copied()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

fn letters(mut k: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

/// Exhaustive partition of the group into conjugacy classes, ordered by
/// element order and then by the smallest member.
pub fn conjugacy_classes<G: FiniteGroup>(g: &G) -> Classes<G::Elem> {
    let elements = g.elements();
    let inverses: Vec<G::Elem> = elements.iter().map(|h| g.inv(h)).collect();
    let mut class_of: HashMap<G::Elem, usize> = HashMap::with_capacity(elements.len());
    let mut members: Vec<Vec<G::Elem>> = Vec::new();
    for x in &elements {
        if class_of.contains_key(x) {
            continue;
        }
        let c = members.len();
        let mut orbit = Vec::new();
        for (h, hi) in elements.iter().zip(&inverses) {
            let y = g.mul(&g.mul(h, x), hi);
            if let std::collections::hash_map::Entry::Vacant(e) = class_of.entry(y) {
                e.insert(c);
                orbit.push(y);
            }
        }
        members.push(orbit);
    }
    let mut keyed: Vec<(u64, G::Elem, Vec<G::Elem>)> = members
        .into_iter()
        .map(|m| {
            let min = *m.iter().min().unwrap();
            (g.element_order(&min), min, m)
        })
        .collect();
    keyed.sort_by_key(|a| (a.0, a.1));

    let mut class_of = HashMap::with_capacity(elements.len());
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut orders = Vec::new();
    let mut labels = Vec::new();
    let mut per_order: HashMap<u64, usize> = HashMap::new();
    for (c, (o, rep, m)) in keyed.iter().enumerate() {
        for x in m {
            class_of.insert(*x, c);
        }
        let k = per_order.entry(*o).or_insert(0);
        labels.push(format!("{o}{}", letters(*k)));
        *k += 1;
        reps.push(*rep);
        sizes.push(m.len() as u64);
        orders.push(*o);
    }
    let inverse = reps.iter().map(|r| class_of[&g.inv(r)]).collect();
    let powers = reps
        .iter()
        .zip(&orders)
        .map(|(r, &o)| {
            let mut out = Vec::with_capacity(o as usize);
            let mut x = g.identity();
            for _ in 0..o {
                out.push(class_of[&x]);
                x = g.mul(&x, r);
            }
            out
        })
        .collect();
    let exponent = orders.iter().fold(1, |a, &b| num_integer::lcm(a, b));
    let info = ClassInfo { group_order: elements.len() as u64, labels, sizes, orders, inverse, powers, exponent };
    Classes { info: Arc::new(info), reps, class_of }
}

/// A cyclotomic-valued class function.
#[derive(Clone, Debug, Serialize)]
pub struct ClassFunction {
    #[serde(skip)]
    pub info: Arc<ClassInfo>,
    pub values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(info: Arc<ClassInfo>, values: Vec<Cyclotomic>) -> ClassFunction {
        assert_eq!(info.len(), values.len());
        ClassFunction { info, values }
    }

    pub fn from_fn(info: &Arc<ClassInfo>, f: impl Fn(usize) -> Cyclotomic) -> ClassFunction {
        ClassFunction { info: info.clone(), values: (0..info.len()).map(f).collect() }
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// `(1/|G|) sum_g f(g) conj(h(g))`.
    pub fn inner(&self, other: &ClassFunction) -> Cyclotomic {
        let sum: Cyclotomic = (0..self.values.len())
            .filter(|&c| !self.values[c].is_zero() && !other.values[c].is_zero())
            .map(|c| self.values[c].mul_ref(&other.values[c].conj()).scale_int(self.info.sizes[c] as i64))
            .sum();
        sum.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.info.group_order))).reduce()
    }

    pub fn norm(&self) -> Cyclotomic {
        self.inner(self)
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add_ref(b).reduce()).collect();
        ClassFunction { info: self.info.clone(), values }
    }

    pub fn scale_int(&self, k: i64) -> ClassFunction {
        let values = self.values.iter().map(|a| a.scale_int(k)).collect();
        ClassFunction { info: self.info.clone(), values }
    }

    pub fn neg(&self) -> ClassFunction {
        self.scale_int(-1)
    }
}

/// Irreducible characters on a common class list.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub classes: Arc<ClassInfo>,
    pub characters: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn degrees(&self) -> Vec<Cyclotomic> {
        self.characters.iter().map(|c| c.degree().clone()).collect()
    }

    pub fn integer_degrees(&self) -> Vec<i64> {
        self.characters
            .iter()
            .map(|c| c.degree().to_integer().and_then(|d| i64::try_from(d).ok()).unwrap_or(0))
            .collect()
    }

    /// Central character of row `i` on the central classes, as `chi(z)/chi(1)`.
    pub fn central_character(&self, i: usize) -> Vec<Cyclotomic> {
        let chi = &self.characters[i];
        let d = chi.degree().to_rational().expect("degrees are integers");
        let d_inv = BigRational::new(d.denom().clone(), d.numer().clone());
        self.classes.central().into_iter().map(|c| chi.values[c].scale(&d_inv).reduce()).collect()
    }

    /// Row orthogonality with norm one, and `sum deg^2 = |G|`.
    pub fn orthogonality_holds(&self) -> bool {
        let n = self.characters.len();
        if n != self.classes.len() {
            return false;
        }
        for i in 0..n {
            for j in i..n {
                let ip = self.characters[i].inner(&self.characters[j]);
                let expect = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if ip != expect {
                    return false;
                }
            }
        }
        let sq: i64 = self.integer_degrees().iter().map(|d| d * d).sum();
        sq as u64 == self.classes.group_order
    }

    /// Same multiset of rows.
    pub fn same_up_to_permutation(&self, other: &CharacterTable) -> bool {
        if self.characters.len() != other.characters.len() {
            return false;
        }
        let mut used = vec![false; other.characters.len()];
        for chi in &self.characters {
            let hit = other
                .characters
                .iter()
                .enumerate()
                .find(|(j, psi)| !used[*j] && psi.degree() == chi.degree() && *psi == chi);
            match hit {
                Some((j, _)) => used[j] = true,
                None => return false,
            }
        }
        true
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("character");
        for l in &self.classes.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (i, chi) in self.characters.iter().enumerate() {
            out.push_str(&format!("X.{}", i + 1));
            for v in &chi.values {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::group::CyclicGroup;
    use super::*;
    use crate::finite_lie::{build_finite_group, Kind};

    #[test]
    fn class_counts() {
        let sl = build_finite_group(Kind::SL2, 3).unwrap();
        let c = conjugacy_classes(&sl);
        assert_eq!(c.len(), 7);
        assert_eq!(c.info.sizes.iter().sum::<u64>(), 24);
        let gl = build_finite_group(Kind::GL2, 3).unwrap();
        let c = conjugacy_classes(&gl);
        assert_eq!(c.len(), 8);
        assert_eq!(c.info.central().len(), 2);
        assert_eq!(c.info.labels[0], "1a");
        let z = conjugacy_classes(&CyclicGroup { n: 6 });
        assert_eq!(z.len(), 6);
        assert_eq!(z.info.exponent, 6);
    }

    #[test]
    fn labels_wrap() {
        assert_eq!(letters(0), "a");
        assert_eq!(letters(25), "z");
        assert_eq!(letters(26), "aa");
    }
}
