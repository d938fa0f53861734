use endolab::endoscopy::{center_alcove_action, endoscopic_from_kappa, enumerate_split_elliptic, pseudo_levi};
use endolab::root_datum::{build_root_datum, dual_datum, extended_dynkin, Isogeny, RootDatum, Series};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn supported(max_rank: usize) -> Vec<RootDatum> {
    let mut out = Vec::new();
    for series in [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G] {
        for rank in 1..=max_rank {
            if !series.rank_supported(rank) {
                continue;
            }
            for iso in [Isogeny::Sc, Isogeny::Ad] {
                out.push(build_root_datum(series, rank, iso).unwrap());
            }
        }
    }
    out
}

#[test]
fn center_action_is_a_homomorphism() {
    for g in supported(8) {
        let a = center_alcove_action(&g).unwrap();
        assert!(a.is_homomorphism(), "{}", g.label().unwrap());
    }
}

#[test]
fn one_triple_per_orbit_with_constant_marks() {
    for g in supported(8) {
        let action = center_alcove_action(&g).unwrap();
        let triples = enumerate_split_elliptic(&g).unwrap();
        assert_eq!(triples.len(), action.orbits().len());
        assert!(triples.iter().any(|t| t.vertex_orbit.contains(&0)));
        for t in &triples {
            assert!(t.marks.iter().all(|&m| m == t.ord_s));
            let stab = action.stabilizer(t.vertex_orbit[0]);
            assert_eq!(t.lambda.as_ref().unwrap().torsion_order() as usize, stab.len());
        }
    }
}

#[test]
fn pseudo_levis_are_full_rank_and_closed() {
    for g in supported(7) {
        let n = extended_dynkin(&dual_datum(&g)).unwrap().len();
        for v in 0..n {
            let h = pseudo_levi(&g, v).unwrap();
            assert!(h.is_semisimple());
            assert_eq!(h.semisimple_rank(), g.semisimple_rank());
            for k in 0..h.roots().len() {
                for i in 0..h.semisimple_rank() {
                    assert!(h.root_index(&h.reflect(i, &h.roots()[k])).is_some());
                }
            }
        }
    }
}

/// Moves a point by a random element of the affine Weyl group of the dual:
/// coroot translations and simple reflections.
fn scramble(g: &RootDatum, x: &mut [Rational64], rng: &mut ChaCha8Rng) {
    let ghat = dual_datum(g);
    let a = ghat.cartan();
    let l = a.len();
    for _ in 0..12 {
        let i = rng.gen_range(0..l);
        if rng.gen_bool(0.5) {
            let c = x[i];
            for j in 0..l {
                x[j] -= c * a[i][j];
            }
        } else {
            let k = rng.gen_range(-2..=2i64);
            for j in 0..l {
                x[j] += Rational64::from_integer(k * a[i][j]);
            }
        }
    }
}

#[test]
fn kappa_at_every_vertex_recovers_its_orbit() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in supported(6) {
        let ext = extended_dynkin(&dual_datum(&g)).unwrap();
        let triples = enumerate_split_elliptic(&g).unwrap();
        for (v, vertex) in ext.vertices.iter().enumerate() {
            let expected = triples.iter().find(|t| t.vertex_orbit.contains(&v)).unwrap();
            let direct = endoscopic_from_kappa(&g, vertex).unwrap();
            assert!(direct.is_isomorphic(expected));
            let mut moved = vertex.clone();
            scramble(&g, &mut moved, &mut rng);
            let t = endoscopic_from_kappa(&g, &moved).unwrap();
            assert!(t.elliptic && t.is_isomorphic(expected), "{} vertex {v}", g.label().unwrap());
        }
    }
}

#[test]
fn non_vertex_kappa_is_not_elliptic() {
    let g = build_root_datum(Series::C, 2, Isogeny::Sc).unwrap();
    let t = endoscopic_from_kappa(&g, &[Rational64::new(1, 4), Rational64::new(1, 4)]).unwrap();
    assert!(!t.elliptic);
    assert!(t.h_datum.semisimple_rank() < 2);
}
