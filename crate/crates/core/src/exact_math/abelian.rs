use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::IntMatrix;
use super::snf::{smith_normal_form, Snf};
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_factors(0, &[n])
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant factors.
    pub fn from_factors(free_rank: usize, orders: &[u64]) -> Self {
        let mut prime_powers: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &n in orders {
            for (p, e) in factorize(n) {
                prime_powers.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = prime_powers.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in prime_powers.values_mut() {
            powers.sort_unstable();
            let offset = len - powers.len();
            for (i, &pp) in powers.iter().enumerate() {
                factors[offset + i] *= pp;
            }
        }
        FinAbGroup { free_rank, torsion: factors.into_iter().filter(|&d| d > 1).collect() }
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion_order())
    }

    pub fn exponent(&self) -> u64 {
        self.torsion.last().copied().unwrap_or(1)
    }

    pub fn torsion_subgroup(&self) -> FinAbGroup {
        FinAbGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// All torsion elements in invariant-factor coordinates, lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &d in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.torsion.iter().zip(a.iter().zip(b)).map(|(&d, (&x, &y))| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        self.torsion.iter().zip(a).map(|(&d, &x)| (d - x % d) % d).collect()
    }

    pub fn scale(&self, k: u64, a: &[u64]) -> Vec<u64> {
        self.torsion.iter().zip(a).map(|(&d, &x)| (x * (k % d)) % d).collect()
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        self.torsion
            .iter()
            .zip(a)
            .map(|(&d, &x)| d / x.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn contains(&self, a: &[u64]) -> bool {
        a.len() == self.torsion.len() && a.iter().zip(&self.torsion).all(|(x, d)| x < d)
    }

    /// Isomorphism type of a finite subset closed under the group law,
    /// recovered from the counts of `p^j`-torsion elements.
    pub fn subgroup_type(&self, elements: &[Vec<u64>]) -> FinAbGroup {
        let n = elements.len() as u64;
        let mut orders = Vec::new();
        for (p, _) in factorize(n) {
            // ranks[j] = log_p #{x : p^j x = 0}
            let mut ranks = vec![0u32];
            let mut pj = 1u64;
            loop {
                pj *= p;
                let count = elements.iter().filter(|x| self.scale(pj, x).iter().all(|&c| c == 0)).count() as u64;
                let r = count.ilog(p);
                if r == *ranks.last().unwrap() {
                    break;
                }
                ranks.push(r);
            }
            // number of cyclic factors of order >= p^j is ranks[j] - ranks[j-1]
            let at_least: Vec<u32> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
            for j in 0..at_least.len() {
                let next = at_least.get(j + 1).copied().unwrap_or(0);
                for _ in 0..(at_least[j] - next) {
                    orders.push(p.pow(j as u32 + 1));
                }
            }
        }
        FinAbGroup::from_factors(0, &orders)
    }

    /// True when the listed elements are closed under addition and negation.
    pub fn is_closed(&self, elements: &[Vec<u64>]) -> bool {
        let set: std::collections::HashSet<&Vec<u64>> = elements.iter().collect();
        elements.iter().all(|a| {
            set.contains(&self.neg(a)) && elements.iter().all(|b| set.contains(&self.add(a, b)))
        })
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Trial-division factorization, `n >= 1`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// `Z^rows / image(M)`, with the coordinate map from the ambient lattice
/// to invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FinAbGroup,
    snf: Snf,
    /// indices of the diagonal entries that are torsion factors (> 1)
    torsion_rows: Vec<usize>,
    /// rows with zero diagonal (or beyond the diagonal): the free part
    free_rows: Vec<usize>,
}

impl Cokernel {
    pub fn new(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        let diag = snf.diagonal();
        let mut torsion_rows = Vec::new();
        let mut free_rows = Vec::new();
        let mut factors = Vec::new();
        for i in 0..m.rows() {
            match diag.get(i) {
                Some(d) if d.is_zero() => free_rows.push(i),
                None => free_rows.push(i),
                Some(d) if d.is_one() => {}
                Some(d) => {
                    torsion_rows.push(i);
                    factors.push(d.to_u64().expect("invariant factor fits in u64"));
                }
            }
        }
        let group = FinAbGroup { free_rank: free_rows.len(), torsion: factors };
        Cokernel { group, snf, torsion_rows, free_rows }
    }

    /// Torsion coordinates of the class of `x`; errors when `x` has a
    /// nonzero free component (its class is then not torsion).
    pub fn torsion_coordinates(&self, x: &[BigInt]) -> Result<Vec<u64>> {
        let y = self.snf.u.mul_vec(x);
        if self.free_rows.iter().any(|&i| !y[i].is_zero()) {
            return Err(Error::InvalidArgument("class is not torsion".into()));
        }
        Ok(self
            .torsion_rows
            .iter()
            .zip(&self.group.torsion)
            .map(|(&i, &d)| y[i].mod_floor(&BigInt::from(d)).to_u64().unwrap())
            .collect())
    }

    /// Coordinates of the class of `x`: free part then torsion part.
    pub fn coordinates(&self, x: &[BigInt]) -> (Vec<BigInt>, Vec<u64>) {
        let y = self.snf.u.mul_vec(x);
        let free = self.free_rows.iter().map(|&i| y[i].clone()).collect();
        let tors = self
            .torsion_rows
            .iter()
            .zip(&self.group.torsion)
            .map(|(&i, &d)| y[i].mod_floor(&BigInt::from(d)).to_u64().unwrap())
            .collect();
        (free, tors)
    }

    /// A lift in the ambient lattice of the `k`-th torsion generator.
    pub fn torsion_generator(&self, k: usize) -> Vec<BigInt> {
        let uinv = self.snf.u.unimodular_inverse().expect("SNF transform is unimodular");
        uinv.column(self.torsion_rows[k])
    }

    /// Lift of an element given in torsion coordinates.
    pub fn lift(&self, coords: &[u64]) -> Vec<BigInt> {
        let uinv = self.snf.u.unimodular_inverse().expect("SNF transform is unimodular");
        let mut y = vec![BigInt::zero(); self.snf.u.rows()];
        for (&i, &c) in self.torsion_rows.iter().zip(coords) {
            y[i] = BigInt::from(c);
        }
        uinv.mul_vec(&y)
    }
}

/// `Z^rows / image(M)` as an abstract group.
pub fn cokernel_group(m: &IntMatrix) -> FinAbGroup {
    Cokernel::new(m).group
}

/// Basis (as columns) of the kernel lattice `{x : M x = 0}`; saturated.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    let cols: Vec<usize> = (r..m.cols()).collect();
    snf.v.select_columns(&cols)
}

/// Basis (as columns) of the lattice spanned by the columns of `m`.
pub fn image_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    // M = U^{-1} D V^{-1}; image = U^{-1} D Z^cols, spanned by d_i * (U^{-1})_i.
    let uinv = snf.u.unimodular_inverse().expect("SNF transform is unimodular");
    let mut out = IntMatrix::zeros(m.rows(), r);
    for j in 0..r {
        let dj = snf.d[(j, j)].clone();
        for i in 0..m.rows() {
            out[(i, j)] = &uinv[(i, j)] * &dj;
        }
    }
    out
}

/// Solves `basis * c = v` for an integer vector `c`, when `basis` has full
/// column rank and `v` lies in its span.
pub fn solve_in_basis(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(basis);
    let r = snf.rank();
    if r != basis.cols() {
        return None;
    }
    // U B V = D  =>  B = U^{-1} D V^{-1};  B c = v  <=>  D (V^{-1} c) = U v
    let uv = snf.u.mul_vec(v);
    if uv[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut w = Vec::with_capacity(r);
    for i in 0..r {
        let d = &snf.d[(i, i)];
        if !uv[i].is_multiple_of(d) {
            return None;
        }
        w.push(&uv[i] / d);
    }
    Some(snf.v.mul_vec(&w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        assert!(cokernel_group(&IntMatrix::identity(2)).is_trivial());
        assert_eq!(cokernel_group(&IntMatrix::from_i64(1, 1, &[-2])), FinAbGroup::cyclic(2));
        let g = cokernel_group(&IntMatrix::from_i64(2, 2, &[-1, 1, 1, -1]));
        assert_eq!(g, FinAbGroup { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn factor_normalization() {
        assert_eq!(FinAbGroup::from_factors(0, &[2, 3]).torsion, vec![6]);
        assert_eq!(FinAbGroup::from_factors(0, &[4, 2, 1]).torsion, vec![2, 4]);
        assert_eq!(FinAbGroup::from_factors(0, &[12, 18]).torsion, vec![6, 36]);
    }

    #[test]
    fn subgroup_types() {
        let g = FinAbGroup { free_rank: 0, torsion: vec![2, 4] };
        let all = g.elements();
        assert_eq!(g.subgroup_type(&all), g);
        let cyclic4: Vec<Vec<u64>> = (0..4).map(|k| vec![0, k]).collect();
        assert_eq!(g.subgroup_type(&cyclic4), FinAbGroup::cyclic(4));
        let klein = vec![vec![0, 0], vec![1, 0], vec![0, 2], vec![1, 2]];
        assert!(g.is_closed(&klein));
        assert_eq!(g.subgroup_type(&klein).torsion, vec![2, 2]);
        assert!(!g.is_closed(&[vec![0, 0], vec![0, 1]]));
    }

    #[test]
    fn json_schema() {
        let g = FinAbGroup { free_rank: 1, torsion: vec![2] };
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"free_rank":1,"torsion":[2]}"#);
    }

    #[test]
    fn kernel_and_image() {
        let m = IntMatrix::from_i64(1, 3, &[1, 1, 1]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).is_zero());
        let gens = IntMatrix::from_i64(2, 2, &[2, 4, 0, 0]);
        let img = image_basis(&gens);
        assert_eq!(img.cols(), 1);
        let c = solve_in_basis(&img, &[BigInt::from(6), BigInt::zero()]).unwrap();
        assert_eq!(img.mul_vec(&c), vec![BigInt::from(6), BigInt::zero()]);
        assert!(solve_in_basis(&img, &[BigInt::from(3), BigInt::zero()]).is_none());
    }

    #[test]
    fn torsion_coordinates_roundtrip() {
        let m = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let ck = Cokernel::new(&m);
        assert_eq!(ck.group.torsion, vec![6]);
        let gen = ck.torsion_generator(0);
        assert_eq!(ck.torsion_coordinates(&gen).unwrap(), vec![1]);
        let lifted = ck.lift(&[5]);
        assert_eq!(ck.torsion_coordinates(&lifted).unwrap(), vec![5]);
    }
}
