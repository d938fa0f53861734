//! Cartan matrices in Bourbaki numbering and Cartan-type recognition.
//!
//! Convention throughout: `a[i][j] = <alpha_j, alpha_i^vee>`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn parse(s: &str) -> Result<Series> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            _ => return Err(Error::InvalidArgument(format!("unknown series {s:?}"))),
        })
    }

    pub fn dual(self) -> Series {
        match self {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        }
    }

    pub fn rank_supported(self, rank: usize) -> bool {
        if rank > 8 {
            return false;
        }
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Parses labels such as `"C2"` or `"e6"`.
pub fn parse_type(s: &str) -> Result<(Series, usize)> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse Cartan type {s:?}"));
    let series = Series::parse(s.get(..1).ok_or_else(bad)?)?;
    let rank: usize = s[1..].parse().map_err(|_| bad())?;
    Ok((series, rank))
}

pub fn cartan_matrix(series: Series, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !series.rank_supported(rank) {
        return Err(Error::Unsupported(format!("type {series}{rank}")));
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match series {
        Series::A | Series::B | Series::C | Series::F | Series::G => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Series::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    // a[i][j] = -2 (or -3) when alpha_i is short and alpha_j long
    match series {
        Series::B => a[n - 1][n - 2] = -2,
        Series::C => a[n - 2][n - 1] = -2,
        Series::F => a[2][1] = -2,
        Series::G => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

/// Names the Cartan type of a (possibly reducible) Cartan matrix, e.g.
/// `"A5xA1"`. Components are ordered by rank, largest first. Rank-2
/// double-bond components are reported as `B2`.
pub fn identify(a: &[Vec<i64>]) -> String {
    let comps = components(a);
    let mut names: Vec<(usize, String)> = comps
        .iter()
        .map(|c| (c.len(), identify_irreducible(a, c)))
        .collect();
    names.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
    names.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join("x")
}

pub fn components(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn identify_irreducible(a: &[Vec<i64>], nodes: &[usize]) -> String {
    let n = nodes.len();
    if n == 1 {
        return "A1".into();
    }
    let mut max_bond = 1;
    let mut degree = vec![0usize; n];
    for (x, &i) in nodes.iter().enumerate() {
        for &j in nodes {
            if i != j && a[i][j] != 0 {
                degree[x] += 1;
                max_bond = max_bond.max(a[i][j] * a[j][i]);
            }
        }
    }
    if max_bond == 3 {
        return "G2".into();
    }
    if max_bond == 2 {
        if n == 2 {
            return "B2".into();
        }
        let long: Vec<bool> = classify_lengths(a, nodes);
        let n_long = long.iter().filter(|&&l| l).count();
        let n_short = n - n_long;
        return if n == 4 && n_long == 2 {
            "F4".into()
        } else if n_short == 1 {
            format!("B{n}")
        } else {
            debug_assert_eq!(n_long, 1);
            format!("C{n}")
        };
    }
    let branch = (0..n).find(|&x| degree[x] == 3);
    match branch {
        None => format!("A{n}"),
        Some(b) => {
            let mut arms: Vec<usize> = nodes
                .iter()
                .enumerate()
                .filter(|&(y, &j)| y != b && a[nodes[b]][j] != 0)
                .map(|(y, _)| arm_length(a, nodes, b, y))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => format!("D{n}"),
                [1, 2, 2] => "E6".into(),
                [1, 2, 3] => "E7".into(),
                [1, 2, 4] => "E8".into(),
                _ => format!("?{n}"),
            }
        }
    }
}

fn classify_lengths(a: &[Vec<i64>], nodes: &[usize]) -> Vec<bool> {
    // squared length as a power of two, relative to node 0
    let n = nodes.len();
    let mut exp: Vec<Option<i32>> = vec![None; n];
    exp[0] = Some(0);
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for y in 0..n {
            let (i, j) = (nodes[x], nodes[y]);
            if x == y || a[i][j] == 0 || exp[y].is_some() {
                continue;
            }
            let e = exp[x].unwrap();
            exp[y] = Some(if a[i][j] == -2 {
                e + 1
            } else if a[j][i] == -2 {
                e - 1
            } else {
                e
            });
            stack.push(y);
        }
    }
    let max = exp.iter().map(|e| e.unwrap()).max().unwrap();
    exp.iter().map(|e| e.unwrap() == max).collect()
}

fn arm_length(a: &[Vec<i64>], nodes: &[usize], from: usize, start: usize) -> usize {
    let mut prev = from;
    let mut cur = start;
    let mut len = 1;
    loop {
        let next = (0..nodes.len()).find(|&y| y != prev && y != cur && a[nodes[cur]][nodes[y]] != 0);
        match next {
            Some(y) => {
                prev = cur;
                cur = y;
                len += 1;
            }
            None => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bourbaki_conventions() {
        let b2 = cartan_matrix(Series::B, 2).unwrap();
        assert_eq!(b2, vec![vec![2, -1], vec![-2, 2]]);
        let c3 = cartan_matrix(Series::C, 3).unwrap();
        assert_eq!(c3[1][2], -2);
        let g2 = cartan_matrix(Series::G, 2).unwrap();
        assert_eq!(g2, vec![vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn recognizes_all_supported_types() {
        for (s, r) in [
            (Series::A, 1),
            (Series::A, 5),
            (Series::B, 3),
            (Series::C, 4),
            (Series::D, 4),
            (Series::D, 7),
            (Series::E, 6),
            (Series::E, 7),
            (Series::E, 8),
            (Series::F, 4),
            (Series::G, 2),
        ] {
            let a = cartan_matrix(s, r).unwrap();
            assert_eq!(identify(&a), format!("{s}{r}"));
        }
        assert_eq!(identify(&cartan_matrix(Series::C, 2).unwrap()), "B2");
    }

    #[test]
    fn reducible_names() {
        let a = vec![vec![2, 0, 0], vec![0, 2, -1], vec![0, -1, 2]];
        assert_eq!(identify(&a), "A2xA1");
    }

    #[test]
    fn unsupported_ranks() {
        assert!(cartan_matrix(Series::D, 3).is_err());
        assert!(cartan_matrix(Series::A, 9).is_err());
        assert!(cartan_matrix(Series::E, 5).is_err());
    }
}
