//! Small finite fields `F_q`, `q = p^f`, with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits are the
//! coefficients of the residue polynomial modulo a fixed irreducible of
//! degree `f`. For `f = 1` the encoding is the residue itself.

use crate::error::{Error, Result};
use crate::exact_math::abelian::{factorize, is_prime};
use crate::exact_math::cyclotomic::Cyclotomic;

/// Upper bound on `q` for table construction.
pub const FIELD_BUDGET: u64 = 1 << 14;

pub type Fq = u32;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    f: u32,
    q: u32,
    /// monic irreducible modulus, low degree first (length f + 1)
    modulus: Vec<u32>,
    generator: Fq,
    /// exp[k] = g^k for k in 0..q-1
    exp: Vec<Fq>,
    /// log[x] for x != 0
    log: Vec<u32>,
    /// absolute trace to F_p
    trace: Vec<u32>,
}

impl FiniteField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=3).contains(&f) {
            return Err(Error::InvalidArgument(format!("extension degree {f} not in 1..=3")));
        }
        let q = p.checked_pow(f).filter(|&q| q <= FIELD_BUDGET).ok_or(Error::Budget {
            what: format!("field order {p}^{f}"),
            budget: FIELD_BUDGET,
        })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = if f == 1 { vec![0, 1] } else { find_irreducible(p, f) };
        let mut field = FiniteField { p, f, q, modulus, generator: 0, exp: vec![], log: vec![], trace: vec![] };

        let order = q - 1;
        let prime_factors: Vec<u64> = factorize(order as u64).into_iter().map(|(r, _)| r).collect();
        let generator = (2..q)
            .chain(std::iter::once(1))
            .find(|&g| prime_factors.iter().all(|&r| field.slow_pow(g, (order as u64) / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1;
        for k in 0..order {
            exp.push(x);
            log[x as usize] = k;
            x = field.slow_mul(x, generator);
        }
        field.generator = generator;
        field.exp = exp;
        field.log = log;
        field.trace = (0..q).map(|x| field.slow_trace(x)).collect();
        Ok(field)
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn generator(&self) -> Fq {
        self.generator
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.q
    }

    pub fn units(&self) -> impl Iterator<Item = Fq> {
        1..self.q
    }

    /// Embeds an integer through `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.p as i64) as Fq
    }

    fn digits(&self, x: Fq) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.f as usize);
        let mut x = x;
        for _ in 0..self.f {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> Fq {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.f == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if self.f == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let (p, mut a) = (self.p, a);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = self.log[a as usize] + self.log[b as usize];
        let order = self.q - 1;
        self.exp[(if k >= order { k - order } else { k }) as usize]
    }

    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        Some(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let order = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// Discrete logarithm to the fixed generator.
    pub fn log(&self, a: Fq) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp(&self, k: u64) -> Fq {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    pub fn is_square(&self, a: Fq) -> bool {
        a == 0 || self.log[a as usize].is_multiple_of(2) || self.p == 2
    }

    /// A square root when one exists.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(self.pow(a, (self.q as u64) / 2));
        }
        let l = self.log[a as usize];
        l.is_multiple_of(2).then(|| self.exp[(l / 2) as usize])
    }

    /// A fixed non-square (the generator), `p` odd.
    pub fn non_square(&self) -> Fq {
        self.generator
    }

    pub fn trace(&self, a: Fq) -> u32 {
        self.trace[a as usize]
    }

    /// The additive character `x -> E(p)^Tr(x)`.
    pub fn psi(&self, x: Fq) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.p as u64, self.trace(x) as i64)
    }

    /// Multiplicative character `chi_k(g^j) = E(q-1)^(k j)`; `chi_k(0) = 0`.
    pub fn mult_char(&self, k: u64, x: Fq) -> Cyclotomic {
        match self.log(x) {
            None => Cyclotomic::zero(),
            Some(j) => Cyclotomic::root_of_unity(self.q as u64 - 1, (k * j as u64 % (self.q as u64 - 1)) as i64),
        }
    }

    /// The quadratic character as an integer in {-1, 0, 1}, `p` odd.
    pub fn legendre(&self, x: Fq) -> i64 {
        match self.log(x) {
            None => 0,
            Some(j) if j % 2 == 0 => 1,
            Some(_) => -1,
        }
    }

    /// Rank of a matrix over `F_q` (rows of field elements).
    pub fn matrix_rank(&self, rows: &[Vec<Fq>]) -> usize {
        let mut m: Vec<Vec<Fq>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, pivot);
            let inv = self.inv(m[rank][c]).expect("nonzero pivot");
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let factor = self.mul(m[r][c], inv);
                    for k in c..cols {
                        let v = self.mul(factor, m[rank][k]);
                        m[r][k] = self.sub(m[r][k], v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn slow_mul(&self, a: Fq, b: Fq) -> Fq {
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as Fq;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let f = self.f as usize;
        let p = self.p;
        let mut prod = vec![0u32; 2 * f - 1];
        for i in 0..f {
            for j in 0..f {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for top in (f..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus.iter().take(f).enumerate() {
                prod[top - f + i] = (prod[top - f + i] + c * (p - m)) % p;
            }
        }
        self.undigits(&prod[..f])
    }

    fn slow_pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn slow_trace(&self, x: Fq) -> u32 {
        // Tr(x) = x + x^p + ... + x^(p^(f-1)), which lies in F_p
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.f {
            acc = self.add(acc, y);
            y = self.slow_pow(y, self.p as u64);
        }
        debug_assert!(acc < self.p);
        acc
    }
}

/// Lexicographically first monic irreducible of degree `f <= 3` over F_p:
/// for these degrees irreducible means no root.
fn find_irreducible(p: u32, f: u32) -> Vec<u32> {
    let count = p.pow(f);
    for code in 0..count {
        let mut coeffs: Vec<u32> = (0..f).map(|i| (code / p.pow(i)) % p).collect();
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        let has_root = (0..p).any(|x| {
            let v = coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64);
            v == 0
        });
        if !has_root {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_generators() {
        assert_eq!(FiniteField::new(3, 1).unwrap().generator(), 2);
        assert_eq!(FiniteField::new(5, 1).unwrap().generator(), 2);
        assert_eq!(FiniteField::new(7, 1).unwrap().generator(), 3);
    }

    #[test]
    fn f9_structure() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.units().count(), 8);
        let g = f.generator();
        assert_eq!(f.pow(g, 8), 1);
        assert_ne!(f.pow(g, 4), 1);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.sub(f.add(a, b), b), a);
                if b != 0 {
                    assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FiniteField::new(131, 2), Err(Error::Budget { .. })));
        assert!(FiniteField::new(3, 4).is_err());
    }

    #[test]
    fn character_sums_vanish() {
        for (p, f) in [(3, 1), (5, 1), (3, 2), (2, 3), (7, 1)] {
            let field = FiniteField::new(p, f).unwrap();
            let s: Cyclotomic = field.elements().map(|x| field.psi(x)).sum();
            assert!(s.is_zero(), "psi sum for {p}^{f}");
            for k in 1..(field.q() as u64 - 1) {
                let s: Cyclotomic = field.units().map(|x| field.mult_char(k, x)).sum();
                assert!(s.is_zero(), "chi_{k} sum for {p}^{f}");
            }
        }
    }

    #[test]
    fn psi_is_additive() {
        let field = FiniteField::new(5, 2).unwrap();
        for x in (0..25).step_by(3) {
            for y in (0..25).step_by(4) {
                assert_eq!(field.psi(field.add(x, y)), &field.psi(x) * &field.psi(y));
            }
        }
    }
}
