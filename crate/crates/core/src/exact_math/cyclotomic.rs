//! Exact elements of cyclotomic fields.
//!
//! An element of conductor `N` is a rational combination of the powers
//! `E(N)^0 .. E(N)^(N-1)`, stored sparsely modulo `x^N - 1`. Arithmetic works
//! in that group ring; the quotient by the `N`-th cyclotomic polynomial is
//! only taken when a canonical form is needed (equality, display).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: BTreeMap<u64, BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Cyclotomic { conductor: 1, coeffs }
    }

    /// `E(n)^k`, a primitive `n`-th root of unity raised to `k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let e = k.rem_euclid(n as i64) as u64;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(e, BigRational::one());
        Cyclotomic { conductor: n, coeffs }
    }

    /// Builds `sum_k counts[k] * E(n)^k`.
    pub fn from_counts(n: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, n);
        let coeffs = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k as u64, BigRational::from_integer(BigInt::from(c))))
            .collect();
        Cyclotomic { conductor: n, coeffs }
    }

    /// Fallible constructor used at API boundaries.
    pub fn try_root_of_unity(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return invalid("cyclotomic conductor must be positive");
        }
        Ok(Self::root_of_unity(n, k))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Nonzero coefficients of the stored (unreduced) representative.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    /// Re-expresses the element with conductor `m`, a multiple of the current one.
    pub fn embed(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {m}", self.conductor);
        let f = m / self.conductor;
        Cyclotomic { conductor: m, coeffs: self.coeffs.iter().map(|(&k, c)| (k * f, c.clone())).collect() }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.embed(m), b.embed(m))
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let (mut a, b) = if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            Self::common(self, other)
        };
        for (k, c) in b.coeffs {
            let entry = a.coeffs.entry(k).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                a.coeffs.remove(&k);
            }
        }
        a
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let n = a.conductor;
        let mut coeffs: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (i, x) in &a.coeffs {
            for (j, y) in &b.coeffs {
                let k = (i + j) % n;
                *coeffs.entry(k).or_insert_with(BigRational::zero) += x * y;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Cyclotomic { conductor: n, coeffs }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Cyclotomic { conductor: self.conductor, coeffs: BTreeMap::new() };
        }
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|(&k, c)| (k, c * r)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Complex conjugation `E(N)^k -> E(N)^-k`.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        Cyclotomic { conductor: n, coeffs: self.coeffs.iter().map(|(&k, c)| ((n - k) % n, c.clone())).collect() }
    }

    /// Galois action `E(N) -> E(N)^j` for `j` prime to `N`.
    pub fn galois(&self, j: u64) -> Self {
        let n = self.conductor;
        assert_eq!(j.gcd(&n), 1);
        let mut coeffs = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            coeffs.insert((k * j) % n, c.clone());
        }
        Cyclotomic { conductor: n, coeffs }
    }

    pub fn abs_squared(&self) -> Self {
        self.mul_ref(&self.conj())
    }

    /// Canonical representative: the remainder modulo the `N`-th cyclotomic
    /// polynomial, in the power basis `1, E(N), ..., E(N)^(phi(N)-1)`.
    pub fn reduce(&self) -> Self {
        let n = self.conductor;
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        if self.coeffs.keys().all(|&k| (k as usize) < deg) {
            return self.clone();
        }
        let mut dense: Vec<BigRational> = vec![BigRational::zero(); n as usize];
        for (&k, c) in &self.coeffs {
            dense[k as usize] += c;
        }
        let support: Vec<(usize, i64)> = phi.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        for top in (deg..n as usize).rev() {
            if dense[top].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut dense[top], BigRational::zero());
            let shift = top - deg;
            for &(i, pc) in &support {
                if i == deg {
                    continue;
                }
                dense[shift + i] -= &c * BigRational::from_integer(BigInt::from(pc));
            }
        }
        let coeffs = dense
            .into_iter()
            .take(deg)
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
            .collect();
        Cyclotomic { conductor: n, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() || self.reduce().coeffs.is_empty()
    }

    /// The rational value, when the element is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        let r = self.reduce();
        match r.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => r.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Floating-point value; never used to decide equality.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().fold((0.0, 0.0), |(re, im), (&k, c)| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n;
            let v = c.to_f64().unwrap_or(f64::NAN);
            (re + v * a.cos(), im + v * a.sin())
        })
    }

    /// Smallest conductor dividing the current one in which the element lives.
    pub fn minimal_conductor(&self) -> u64 {
        let n = self.conductor;
        let mut best = n;
        for d in divisors(n) {
            if d >= best {
                continue;
            }
            // the element lies in Q(E(d)) iff it is fixed by Gal(Q(E(n))/Q(E(d)))
            let fixed = (1..n)
                .filter(|&j| j.gcd(&n) == 1 && j % d == 1 % d)
                .all(|j| self.galois(j) == *self);
            if fixed {
                best = d;
            }
        }
        best
    }

    /// The same value re-expressed with its minimal conductor.
    pub fn with_minimal_conductor(&self) -> Self {
        let m = self.minimal_conductor();
        if m == self.conductor {
            return self.reduce();
        }
        // solve target = sum_k c_k E(m)^k, k < phi(m), in the reduced basis of E(n)
        let n = self.conductor;
        let target = self.reduce();
        let deg_m = cyclotomic_polynomial(m).len() - 1;
        let deg_n = cyclotomic_polynomial(n).len() - 1;
        let columns: Vec<Cyclotomic> =
            (0..deg_m).map(|k| Cyclotomic::root_of_unity(m, k as i64).embed(n).reduce()).collect();
        // augmented system, rows indexed by reduced basis position
        let mut rows: Vec<Vec<BigRational>> = (0..deg_n)
            .map(|pos| {
                let mut row: Vec<BigRational> = columns
                    .iter()
                    .map(|c| c.coeffs.get(&(pos as u64)).cloned().unwrap_or_else(BigRational::zero))
                    .collect();
                row.push(target.coeffs.get(&(pos as u64)).cloned().unwrap_or_else(BigRational::zero));
                row
            })
            .collect();
        let solution = solve_rational(&mut rows, deg_m).expect("element lies in the subfield");
        let coeffs = solution
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
            .collect();
        let out = Cyclotomic { conductor: m, coeffs };
        debug_assert!(out == *self);
        out
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::common(self, other);
        (&a - &b).reduce().coeffs.is_empty()
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(rhs)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        self.add_ref(&rhs)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(&-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self.add_ref(&-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        self.mul_ref(&rhs)
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |acc, x| acc.add_ref(&x))
    }
}

/// Serialized through its display form, e.g. `"-1 - 2*E(5)^2"`.
impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Cyclotomic {
    /// GAP-style notation of the canonical form, e.g. `-1-2*E(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.with_minimal_conductor();
        if r.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (&k, c)) in r.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i > 0 {
                out.push(if neg { '-' } else { '+' });
            } else if neg {
                out.push('-');
            }
            let root = match k {
                0 => String::new(),
                1 => format!("E({})", r.conductor),
                _ => format!("E({})^{}", r.conductor, k),
            };
            if root.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&root);
            } else {
                out.push_str(&format!("{a}*{root}"));
            }
        }
        write!(f, "{out}")
    }
}

/// Gaussian elimination on an augmented system with `unknowns` columns;
/// returns one solution when consistent.
fn solve_rational(rows: &mut [Vec<BigRational>], unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=unknowns {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][unknowns].clone();
    }
    Some(sol)
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(n: u64) -> i32 {
    let f = super::abelian::factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}
    let mut num: Vec<i64> = vec![1];
    let mut den: Vec<i64> = vec![1];
    for d in divisors(n) {
        let mut f = vec![0i64; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    assert!(lead == 1 || lead == -1);
    let mut q = vec![0i64; num.len() - dd];
    for top in (dd..num.len()).rev() {
        let c = rem[top] * lead;
        q[top - dd] = c;
        for (i, &x) in den.iter().enumerate() {
            rem[top - dd + i] -= c * x;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
    }

    #[test]
    fn i_squared() {
        let i = z(4, 1);
        assert_eq!((&i * &i).reduce().to_integer(), Some(BigInt::from(-1)));
    }

    #[test]
    fn sum_of_cube_roots_vanishes() {
        let s = z(3, 0) + z(3, 1) + z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn sixth_root_across_conductors() {
        // E(6) = -E(3)^2 = 1 + E(3)
        let lhs = z(6, 1);
        let rhs = Cyclotomic::one() + z(3, 1);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.minimal_conductor(), 3);
        assert_eq!(lhs.to_string(), "1+E(3)");
    }

    #[test]
    fn reduce_is_idempotent_and_value_preserving() {
        let x = z(12, 7) + z(12, 11).scale_int(3) - z(4, 3);
        let r = x.reduce();
        assert_eq!(r.reduce().terms().count(), r.terms().count());
        assert_eq!(r, x);
        let (re1, im1) = x.to_complex();
        let (re2, im2) = r.to_complex();
        assert!((re1 - re2).abs() < 1e-9 && (im1 - im2).abs() < 1e-9);
    }

    #[test]
    fn gauss_sum_squares_to_minus_three() {
        // sum over F_3 of legendre(x) E(3)^x
        let g = &z(3, 1) - &z(3, 2);
        assert_eq!((&g * &g).to_integer(), Some(BigInt::from(-3)));
    }

    #[test]
    fn minimal_conductor_of_rationals() {
        assert_eq!((z(5, 1) + z(5, 4) + z(5, 2) + z(5, 3)).minimal_conductor(), 1);
        assert_eq!((&z(8, 1) + &z(8, 7)).minimal_conductor(), 8);
        assert_eq!((&z(8, 1) + &z(8, 3)).to_string(), (&z(8, 1) + &z(8, 3)).with_minimal_conductor().to_string());
    }
}
