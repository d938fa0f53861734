use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::exact_math::FiniteField;
use crate::finite_lie::{FiniteLieGroup, Mat, MatField};

/// A finite group given by an explicit element list.
pub trait FiniteGroup: Sync {
    type Elem: Copy + Eq + Hash + Ord + Debug + Send + Sync;

    fn elements(&self) -> Vec<Self::Elem>;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn order(&self) -> u64 {
        self.elements().len() as u64
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = *a;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn element_order(&self, a: &Self::Elem) -> u64 {
        let one = self.identity();
        let mut x = *a;
        let mut k = 1;
        while x != one {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }
}

impl FiniteGroup for FiniteLieGroup {
    type Elem = Mat;

    fn elements(&self) -> Vec<Mat> {
        FiniteLieGroup::elements(self).to_vec()
    }

    fn identity(&self) -> Mat {
        FiniteLieGroup::identity(self)
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.mat_mul(a, b)
    }

    fn inv(&self, a: &Mat) -> Mat {
        FiniteLieGroup::inv(self, a)
    }

    fn order(&self) -> u64 {
        FiniteLieGroup::order(self)
    }
}

/// `Z/n`, written additively.
#[derive(Clone, Copy, Debug)]
pub struct CyclicGroup {
    pub n: u64,
}

impl FiniteGroup for CyclicGroup {
    type Elem = u64;

    fn elements(&self) -> Vec<u64> {
        (0..self.n).collect()
    }

    fn identity(&self) -> u64 {
        0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.n
    }

    fn inv(&self, a: &u64) -> u64 {
        (self.n - a) % self.n
    }
}

/// The subgroup of `GL_n(F_q)` generated by a list of matrices.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    field: FiniteField,
    n: usize,
    elements: Vec<Mat>,
}

pub const MATRIX_GROUP_BUDGET: usize = 20_000;

impl MatrixGroup {
    pub fn generated(field: FiniteField, generators: &[Mat]) -> Result<MatrixGroup> {
        let n = generators.first().map(|g| g.n()).ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
        if generators.iter().any(|g| g.n() != n || field.mat_inv(g).is_none()) {
            return Err(Error::InvalidArgument("generators must be invertible of equal size".into()));
        }
        let one = Mat::identity(n);
        let mut seen: HashSet<Mat> = HashSet::from([one]);
        let mut elements = vec![one];
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let x = field.mat_mul(&elements[i], g);
                if seen.insert(x) {
                    elements.push(x);
                    if elements.len() > MATRIX_GROUP_BUDGET {
                        return Err(Error::Budget { what: "generated matrix group".into(), budget: MATRIX_GROUP_BUDGET as u64 });
                    }
                }
            }
            i += 1;
        }
        elements.sort();
        Ok(MatrixGroup { field, n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl MatField for MatrixGroup {
    fn field(&self) -> &FiniteField {
        &self.field
    }
}

impl FiniteGroup for MatrixGroup {
    type Elem = Mat;

    fn elements(&self) -> Vec<Mat> {
        self.elements.clone()
    }

    fn identity(&self) -> Mat {
        Mat::identity(self.n)
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.mat_mul(a, b)
    }

    fn inv(&self, a: &Mat) -> Mat {
        self.mat_inv(a).expect("group elements are invertible")
    }

    fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}
