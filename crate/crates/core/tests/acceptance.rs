//! Acceptance suite. Prints one line per criterion and exits non-zero if any fails.

use std::time::{Duration, Instant};

use endolab::dl_spectra::{character_table_dixon, classical_table_oracle, conjugacy_classes, DlContext};
use endolab::endoscopy::{enumerate_split_elliptic, estimate_diagram_check};
use endolab::exact_math::IntMatrix;
use endolab::finite_lie::{build_finite_group, Kind};
use endolab::galois_tori::{component_group_pi0, compositions, norm_kernel_quotient, sln_kappa_group, TwistedTorus};
use endolab::padic::{cyclic_decompositions, hilbert_product, quasi_log_bijection_check, topological_jordan, TruncatedMatrix};
use endolab::root_datum::{build_root_datum, parse_type, Isogeny, Series};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240917;

type Outcome = Result<String, String>;

fn springer() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for kind in [Kind::SL2, Kind::GL2] {
        for q in [3, 5, 7, 11] {
            let ctx = DlContext::new(kind, q).map_err(|e| e.to_string())?;
            let r = ctx.springer_sweep(true).map_err(|e| e.to_string())?;
            if !r.ok() {
                return Err(format!("{kind} q={q}: {} of {} cases fail", r.failures.len(), r.cases));
            }
            total += r.cases;
        }
    }
    timed(start, Duration::from_secs(300), format!("{total} cases"))
}

fn jordan_reduction() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for q in [3, 5] {
        let ctx = DlContext::new(Kind::GL2, q).map_err(|e| e.to_string())?;
        let r = ctx.jordan_sweep().map_err(|e| e.to_string())?;
        if !r.ok() || r.mixed_cases == 0 {
            return Err(format!("GL2 q={q}: {} failures, {} mixed", r.failures.len(), r.mixed_cases));
        }
        summary.push(format!("q={q}: {} cases, {} mixed", r.cases, r.mixed_cases));
    }
    timed(start, Duration::from_secs(60), summary.join("; "))
}

/// `(orbit, type of H, ord(s), Lambda torsion)` per triple.
type Golden = (&'static str, &'static [(&'static [usize], &'static str, u64, &'static [u64])]);

const GOLDEN: &[Golden] = &[
    ("A1", &[(&[0, 1], "A1", 1, &[])]),
    ("A2", &[(&[0, 1, 2], "A2", 1, &[])]),
    ("A3", &[(&[0, 1, 2, 3], "A3", 1, &[])]),
    ("A4", &[(&[0, 1, 2, 3, 4], "A4", 1, &[])]),
    ("B2", &[(&[0, 2], "B2", 1, &[]), (&[1], "A1xA1", 2, &[2])]),
    ("C2", &[(&[0, 1], "C2", 1, &[]), (&[2], "A1xA1", 2, &[2])]),
    ("G2", &[(&[0], "G2", 1, &[]), (&[1], "A1xA1", 2, &[]), (&[2], "A2", 3, &[])]),
    ("D4", &[(&[0, 1, 3, 4], "D4", 1, &[]), (&[2], "A1xA1xA1xA1", 2, &[2, 2])]),
    (
        "F4",
        &[(&[0], "F4", 1, &[]), (&[1], "C4", 2, &[]), (&[2], "A3xA1", 4, &[]), (&[3], "A2xA2", 3, &[]), (&[4], "B3xA1", 2, &[])],
    ),
    ("E6", &[(&[0, 1, 6], "E6", 1, &[]), (&[2, 3, 5], "A5xA1", 2, &[]), (&[4], "A2xA2xA2", 3, &[3])]),
];

fn endoscopy_tables() -> Outcome {
    let mut checked = 0;
    for (name, expected) in GOLDEN {
        let (series, rank) = parse_type(name).map_err(|e| e.to_string())?;
        let g = build_root_datum(series, rank, Isogeny::Sc).map_err(|e| e.to_string())?;
        let got = enumerate_split_elliptic(&g).map_err(|e| e.to_string())?;
        let got: Vec<_> = got
            .iter()
            .map(|t| (t.vertex_orbit.clone(), t.h_type.clone(), t.ord_s, t.lambda.as_ref().map(|l| l.torsion.clone()).unwrap_or_default()))
            .collect();
        let want: Vec<_> = expected.iter().map(|(o, h, s, l)| (o.to_vec(), h.to_string(), *s, l.to_vec())).collect();
        if got.len() != want.len() || !want.iter().all(|w| got.contains(w)) {
            return Err(format!("{name}: got {got:?}"));
        }
        checked += got.len();
    }
    Ok(format!("{} types, {checked} triples", GOLDEN.len()))
}

fn estimate() -> Outcome {
    for n in 4..=8 {
        let g = build_root_datum(Series::D, n, Isogeny::Sc).map_err(|e| e.to_string())?;
        let r = estimate_diagram_check(&g).map_err(|e| e.to_string())?;
        if !r.large_nonspecial.is_empty() {
            return Err(format!("D{n}: unexpected orbits {:?}", r.large_nonspecial));
        }
    }
    let g = build_root_datum(Series::E, 6, Isogeny::Sc).map_err(|e| e.to_string())?;
    let r = estimate_diagram_check(&g).map_err(|e| e.to_string())?;
    match r.large_nonspecial.as_slice() {
        [o] if o.ord_s == 2 && o.center_order == 3 && r.consistent => Ok(format!("D4..D8 none; E6 orbit {:?}", o.orbit)),
        other => Err(format!("E6: {other:?}")),
    }
}

fn sln_closure() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 2..=6 {
        for m in (1..=n).filter(|m| n % m == 0) {
            for degrees in compositions(n / m) {
                let r = sln_kappa_group(n, m, &degrees).map_err(|e| e.to_string())?;
                if !r.closed {
                    return Err(format!("n={n} m={m} degrees={degrees:?} not closed"));
                }
                count += 1;
            }
        }
    }
    timed(start, Duration::from_secs(10), format!("{count} block structures"))
}

fn signed_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut m = vec![vec![0; n]; n];
    for (j, &i) in perm.iter().enumerate() {
        m[i][j] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    m
}

/// Order 3, 4 or 6 blocks mixed with signed permutations.
fn finite_order_block(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut m = signed_permutation(rng, n);
    if n >= 2 && rng.gen_bool(0.5) {
        let block = [[[0, -1], [1, -1]], [[0, -1], [1, 0]], [[1, -1], [1, 0]]][rng.gen_range(0..3)];
        for (i, row) in block.iter().enumerate() {
            m[i][0] = row[0];
            m[i][1] = row[1];
            for col in m[i].iter_mut().skip(2) {
                *col = 0;
            }
        }
        for row in m.iter_mut().skip(2) {
            row[0] = 0;
            row[1] = 0;
        }
        // keep the complement a permutation matrix
        for i in 2..n {
            m[i][i] = 1;
            for j in 2..n {
                if j != i {
                    m[i][j] = 0;
                }
            }
        }
    }
    m
}

/// Conjugates by a random unimodular matrix built from elementary moves.
fn conjugate(rng: &mut ChaCha8Rng, f: &[Vec<i64>]) -> IntMatrix {
    let n = f.len();
    let mut p = IntMatrix::identity(n);
    let mut pinv = IntMatrix::identity(n);
    for _ in 0..2 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c: i64 = rng.gen_range(-1..=1);
        let mut e = IntMatrix::identity(n);
        let mut einv = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(c);
        einv[(i, j)] = BigInt::from(-c);
        p = &p * &e;
        pinv = &einv * &pinv;
    }
    let f = IntMatrix::from_rows(f).expect("square rows");
    &(&p * &f) * &pinv
}

fn tate_nakayama() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..50 {
        let n = rng.gen_range(1..=5);
        let block = finite_order_block(&mut rng, n);
        let f = conjugate(&mut rng, &block);
        let t = TwistedTorus::new(f).map_err(|e| format!("trial {trial}: {e}"))?;
        let h1 = component_group_pi0(&t).map_err(|e| e.to_string())?.h1;
        let nk = norm_kernel_quotient(&t);
        if h1.torsion != nk.torsion || nk.free_rank != 0 {
            return Err(format!("trial {trial}: h1 {:?} vs ker N / im(F-1) {:?}", h1, nk));
        }
    }
    let norm_one = TwistedTorus::from_i64_rows(&[vec![-1]]).map_err(|e| e.to_string())?;
    let h1 = component_group_pi0(&norm_one).map_err(|e| e.to_string())?.h1;
    if h1.torsion != vec![2] || h1.free_rank != 0 {
        return Err(format!("norm-one torus: {h1:?}"));
    }
    Ok("50 random tori; norm-one torus has H^1 = Z/2".into())
}

fn quasi_log() -> Outcome {
    let mut parts = Vec::new();
    for (p, k) in [(3, 1), (3, 2), (5, 1)] {
        let r = quasi_log_bijection_check(Kind::SL2, p, k).map_err(|e| e.to_string())?;
        if !r.bijective() {
            return Err(format!("SL2 p={p} k={k}: {r:?}"));
        }
        parts.push(format!("({p},{k}) {} points", r.unipotent_count));
    }
    Ok(parts.join(", "))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize, p: u64, k: u32) -> TruncatedMatrix {
    let modulus = p.pow(k) as i64;
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..modulus)).collect()).collect();
        let m = TruncatedMatrix::new(p, k, &rows).expect("valid entries");
        if m.is_invertible() {
            return m;
        }
    }
}

fn jordan_decomposition() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for (p, k) in [(3, 4), (5, 4)] {
        for trial in 0..100 {
            let gamma = random_invertible(&mut rng, 2, p, k);
            let j = topological_jordan(&gamma).map_err(|e| format!("p={p} trial {trial}: {e}"))?;
            if !j.verify(&gamma) {
                return Err(format!("p={p} trial {trial}: post-conditions fail"));
            }
            let all = cyclic_decompositions(&gamma).map_err(|e| e.to_string())?;
            if all != vec![j.delta.clone()] {
                return Err(format!("p={p} trial {trial}: {} decompositions", all.len()));
            }
            // equivariance under conjugation
            let h = random_invertible(&mut rng, 2, p, k);
            let hinv = h.inverse().map_err(|e| e.to_string())?;
            let jc = topological_jordan(&h.mul(&gamma).mul(&hinv)).map_err(|e| e.to_string())?;
            if jc.delta != h.mul(&j.delta).mul(&hinv) {
                return Err(format!("p={p} trial {trial}: not conjugation equivariant"));
            }
        }
    }
    timed(start, Duration::from_secs(60), "200 matrices".into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut num: i64 = rng.gen_range(1..=10_000);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    BigRational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=10_000i64)))
}

fn hilbert_reciprocity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for trial in 0..200 {
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        if hilbert_product(&a, &b).map_err(|e| e.to_string())? != 1 {
            return Err(format!("trial {trial}: product over places is not 1 for ({a}, {b})"));
        }
    }
    Ok("200 pairs".into())
}

fn dixon_tables() -> Outcome {
    for (kind, q) in [(Kind::GL2, 3), (Kind::SL2, 3), (Kind::SL2, 5)] {
        let g = build_finite_group(kind, q).map_err(|e| e.to_string())?;
        let classes = conjugacy_classes(&g);
        let classical = classical_table_oracle(&g, &classes).map_err(|e| e.to_string())?;
        let dixon = character_table_dixon(&g).map_err(|e| e.to_string())?;
        if !dixon.orthogonality_holds() || !classical.table.orthogonality_holds() {
            return Err(format!("{kind}({q}): orthogonality fails"));
        }
        if !classical.table.same_up_to_permutation(&dixon) {
            return Err(format!("{kind}({q}): tables differ"));
        }
    }
    Ok("GL2(3), SL2(3), SL2(5)".into())
}

fn timed(start: Instant, limit: Duration, detail: String) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed > limit {
        Err(format!("{detail}, but took {elapsed:.1?} (limit {limit:?})"))
    } else {
        Ok(format!("{detail} in {elapsed:.1?}"))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("springer hypothesis for rank-one groups", springer),
        ("Deligne-Lusztig Jordan reduction", jordan_reduction),
        ("split elliptic endoscopic triples", endoscopy_tables),
        ("diagram estimate for D and E6", estimate),
        ("SL_n kappa group closure", sln_closure),
        ("Tate-Nakayama comparison", tate_nakayama),
        ("quasi-logarithm bijection", quasi_log),
        ("topological Jordan decomposition", jordan_decomposition),
        ("Hilbert reciprocity", hilbert_reciprocity),
        ("Dixon against classical tables", dixon_tables),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
