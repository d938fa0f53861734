use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::truncated::pow_mod;
use crate::error::{Error, Result};
use crate::exact_math::abelian::{factorize, is_prime};

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "oo" | "∞" | "real" => Ok(Place::Infinity),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::InvalidArgument(format!("bad place {s:?}")))?;
                if is_prime(p) {
                    Ok(Place::Prime(p))
                } else {
                    Err(Error::NotPrime(p))
                }
            }
        }
    }
}

/// Parses `a`, `-a/b` or a decimal-free rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("bad rational {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    (v, n)
}

/// `x = p^v (n/d)` with `n, d` prime to `p`.
fn split(x: &BigRational, p: u64) -> (i64, BigInt, BigInt) {
    let (vn, n) = valuation(x.numer(), p);
    let (vd, d) = valuation(x.denom(), p);
    (vn - vd, n, d)
}

fn legendre(n: &BigInt, p: u64) -> i64 {
    let r = n.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn mod8(n: &BigInt, d: &BigInt) -> u64 {
    // d odd, so d^-1 = d mod 8
    (n * d).mod_floor(&BigInt::from(8)).to_u64().unwrap()
}

/// The local Hilbert symbol `(a, b)_v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("Hilbert symbol of zero".into()));
    }
    match v {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(2) => {
            let (al, an, ad) = split(a, 2);
            let (be, bn, bd) = split(b, 2);
            let u = mod8(&an, &ad);
            let w = mod8(&bn, &bd);
            let eps = |x: u64| ((x - 1) / 2) % 2;
            let omega = |x: u64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(w) + (al.rem_euclid(2) as u64) * omega(w) + (be.rem_euclid(2) as u64) * omega(u);
            Ok(if e.is_multiple_of(2) { 1 } else { -1 })
        }
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            let (al, an, ad) = split(a, p);
            let (be, bn, bd) = split(b, p);
            let mut s = 1;
            if (al * be).rem_euclid(2) == 1 && ((p - 1) / 2) % 2 == 1 {
                s = -s;
            }
            if be.rem_euclid(2) == 1 {
                s *= legendre(&an, p) * legendre(&ad, p);
            }
            if al.rem_euclid(2) == 1 {
                s *= legendre(&bn, p) * legendre(&bd, p);
            }
            Ok(s as i8)
        }
    }
}

/// `inf`, `2` and every prime dividing a numerator or denominator.
pub fn relevant_places(values: &[&BigRational]) -> Result<Vec<Place>> {
    let mut places = vec![Place::Infinity, Place::Prime(2)];
    for x in values {
        for n in [x.numer(), x.denom()] {
            let m = n.abs().to_u64().ok_or_else(|| Error::InvalidArgument("factorization limited to 64-bit integers".into()))?;
            for (p, _) in factorize(m) {
                places.push(Place::Prime(p));
            }
        }
    }
    places.sort();
    places.dedup();
    Ok(places)
}

/// `prod_v (a, b)_v` over the relevant places; equals 1 by reciprocity.
pub fn hilbert_product(a: &BigRational, b: &BigRational) -> Result<i8> {
    relevant_places(&[a, b])?.into_iter().try_fold(1i8, |acc, v| Ok(acc * hilbert_symbol(a, b, v)?))
}

/// A diagonal quadratic form with nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagQuadForm {
    coeffs: Vec<BigRational>,
}

impl DiagQuadForm {
    pub fn new(coeffs: Vec<BigRational>) -> Result<DiagQuadForm> {
        if coeffs.iter().any(|c| c.is_zero()) {
            return Err(Error::InvalidArgument("diagonal coefficients must be nonzero".into()));
        }
        Ok(DiagQuadForm { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<DiagQuadForm> {
        DiagQuadForm::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

/// `e(q) = prod_{i<j} (a_i, a_j)_v`.
pub fn hasse_invariant(q: &DiagQuadForm, v: Place) -> Result<i8> {
    let c = &q.coeffs;
    let mut e = 1;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            e *= hilbert_symbol(&c[i], &c[j], v)?;
        }
    }
    Ok(e)
}
