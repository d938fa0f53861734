//! Smith normal form over the integers, with transformation matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intmat::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                    if d[(i, t)].abs() < d[(t, t)].abs() {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                    }
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                    if d[(t, j)].abs() < d[(t, t)].abs() {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                    }
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match bad {
                Some((i, _)) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    fix_divisibility(&mut d, &mut u, &mut v);
    Snf { u, d, v }
}

/// Post-pass: makes the diagonal a divisibility chain via 2x2 gcd moves.
fn fix_divisibility(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix) {
    let n = d.rows().min(d.cols());
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in i + 1..n {
                let a = d[(i, i)].clone();
                let b = d[(j, j)].clone();
                if b.is_zero() || (!a.is_zero() && b.is_multiple_of(&a)) {
                    continue;
                }
                if a.is_zero() {
                    d.swap_rows(i, j);
                    u.swap_rows(i, j);
                    d.swap_cols(i, j);
                    v.swap_cols(i, j);
                    changed = true;
                    continue;
                }
                // diag(a, b) -> diag(g, l) with g = gcd, l = lcm.
                let ext = a.extended_gcd(&b);
                let g = ext.gcd.clone();
                let (x, y) = (ext.x, ext.y);
                // column op: col_i += col_j  gives [[a, 0], [b, b]]
                d.add_col_multiple(i, j, &BigInt::one());
                v.add_col_multiple(i, j, &BigInt::one());
                // row ops with [[x, y], [-b/g, a/g]] (determinant 1)
                let bg = &b / &g;
                let ag = &a / &g;
                apply_row_2x2(d, i, j, &x, &y, &-&bg, &ag);
                apply_row_2x2(u, i, j, &x, &y, &-&bg, &ag);
                // now d[i][i] = g, d[i][j] = y*b, clear it with a column op
                let f = &d[(i, j)] / &g;
                d.add_col_multiple(j, i, &-&f);
                v.add_col_multiple(j, i, &-&f);
                // clear d[j][i]
                let f = &d[(j, i)] / &g;
                d.add_row_multiple(j, i, &-&f);
                u.add_row_multiple(j, i, &-&f);
                if d[(j, j)].is_negative() {
                    d.negate_row(j);
                    u.negate_row(j);
                }
                if d[(i, i)].is_negative() {
                    d.negate_row(i);
                    u.negate_row(i);
                }
                changed = true;
            }
        }
    }
}

fn apply_row_2x2(m: &mut IntMatrix, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt) {
    for k in 0..m.cols() {
        let ri = m[(i, k)].clone();
        let rj = m[(j, k)].clone();
        m[(i, k)] = a * &ri + b * &rj;
        m[(j, k)] = c * &ri + e * &rj;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Vec<i64> {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{diag:?}");
            }
        }
        diag.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn identity_case() {
        assert_eq!(check(&IntMatrix::identity(2)), vec![1, 1]);
    }

    #[test]
    fn two_by_two() {
        assert_eq!(check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8])), vec![2, 4]);
    }

    #[test]
    fn sign_normalized() {
        assert_eq!(check(&IntMatrix::from_i64(1, 1, &[-2])), vec![2]);
    }

    #[test]
    fn coprime_diagonal_needs_post_pass() {
        assert_eq!(check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3])), vec![1, 6]);
        assert_eq!(check(&IntMatrix::from_i64(3, 3, &[4, 0, 0, 0, 6, 0, 0, 0, 0])), vec![2, 12, 0]);
    }

    #[test]
    fn rectangular() {
        assert_eq!(check(&IntMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6])), vec![1, 3]);
        assert_eq!(check(&IntMatrix::from_i64(3, 1, &[0, 0, 0])), vec![0]);
    }

    #[test]
    fn cartan_d4() {
        let c = IntMatrix::from_i64(
            4,
            4,
            &[2, -1, 0, 0, -1, 2, -1, -1, 0, -1, 2, 0, 0, -1, 0, 2],
        );
        assert_eq!(check(&c), vec![1, 1, 2, 2]);
    }
}
