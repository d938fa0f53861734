use serde::Serialize;

use super::{FiniteLieGroup, Mat};
use crate::error::{Error, Result};
use crate::exact_math::Cyclotomic;

/// Largest Lie algebra on which dense functions are allowed.
pub const LIE_BUDGET: u64 = 6561;
/// Largest Lie algebra that may be enumerated point by point.
pub(super) const ENUMERATION_BUDGET: u64 = 400_000;

/// A function on `g(F_q)`, stored densely in `lie_point` order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieFunction {
    pub values: Vec<Cyclotomic>,
}

impl LieFunction {
    pub fn zero(g: &FiniteLieGroup) -> Result<LieFunction> {
        let size = g.lie_size();
        if size > LIE_BUDGET {
            return Err(Error::Budget { what: "dense Lie function".into(), budget: LIE_BUDGET });
        }
        Ok(LieFunction { values: vec![Cyclotomic::zero(); size as usize] })
    }

    pub fn from_fn(g: &FiniteLieGroup, f: impl Fn(&Mat) -> Cyclotomic) -> Result<LieFunction> {
        let mut out = LieFunction::zero(g)?;
        for (k, v) in out.values.iter_mut().enumerate() {
            *v = f(&g.lie_point(k));
        }
        Ok(out)
    }

    /// Indicator function of a set of Lie algebra points.
    pub fn indicator(g: &FiniteLieGroup, points: &[Mat]) -> Result<LieFunction> {
        let mut out = LieFunction::zero(g)?;
        for x in points {
            out.values[g.lie_index(x)] = Cyclotomic::one();
        }
        Ok(out)
    }

    pub fn at(&self, g: &FiniteLieGroup, x: &Mat) -> &Cyclotomic {
        &self.values[g.lie_index(x)]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `F(f)(x) = sum_y psi(<x, y>) f(y)` with counting measure.
pub fn finite_fourier(g: &FiniteLieGroup, f: &LieFunction) -> Result<LieFunction> {
    if !g.pairing_is_nondegenerate() {
        return Err(Error::Precondition("trace pairing is degenerate".into()));
    }
    let size = g.lie_size();
    if size > LIE_BUDGET || f.len() as u64 != size {
        return Err(Error::Budget { what: "finite Fourier transform".into(), budget: LIE_BUDGET });
    }
    let p = g.p() as usize;
    let field = super::MatField::field(g);
    let points: Vec<Mat> = (0..f.len()).map(|k| g.lie_point(k)).collect();
    let support: Vec<usize> = (0..f.len()).filter(|&k| !f.values[k].is_zero()).collect();
    let values = points
        .iter()
        .map(|x| {
            // group the support by the additive-character exponent
            let mut buckets = vec![Cyclotomic::zero(); p];
            for &k in &support {
                let t = field.trace(g.pairing(x, &points[k])) as usize;
                buckets[t] = buckets[t].add_ref(&f.values[k]);
            }
            buckets
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .fold(Cyclotomic::zero(), |acc, (t, b)| acc.add_ref(&b.mul_ref(&Cyclotomic::root_of_unity(p as u64, t as i64))))
                .reduce()
        })
        .collect();
    Ok(LieFunction { values })
}
