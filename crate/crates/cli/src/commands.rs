use endolab::dl_spectra::{character_table_dixon, classical_table_oracle, conjugacy_classes, DlContext};
use endolab::endoscopy::{endoscopic_from_kappa, enumerate_split_elliptic, estimate_diagram_check};
use endolab::exact_math::{solve_in_basis, IntMatrix};
use endolab::finite_lie::{build_finite_group, Kind};
use endolab::galois_tori::{component_group_pi0, norm_kernel_quotient, sln_kappa_group, tn_pairing, TwistedTorus};
use endolab::padic::{hilbert_product, hilbert_symbol, parse_rational, relevant_places, topological_jordan, Place, TruncatedMatrix};
use endolab::root_datum::{build_root_datum, parse_type, Isogeny, RootDatum};
use num_rational::Rational64;
use serde_json::json;

use crate::output::{Outcome, Table};

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn datum(ty: &str, isogeny: &str) -> Result<RootDatum, String> {
    let (series, rank) = parse_type(ty).map_err(err)?;
    build_root_datum(series, rank, Isogeny::parse(isogeny).map_err(err)?).map_err(err)
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T, String> {
    serde_json::from_str(s).map_err(|e| format!("bad {what}: {e}"))
}

fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>, String> {
    s.split(',').map(|x| x.trim().parse::<T>().map_err(|_| format!("bad {what} entry {x:?}"))).collect()
}

pub fn endoscopy_enumerate(ty: &str, isogeny: &str) -> Result<Outcome, String> {
    let triples = enumerate_split_elliptic(&datum(ty, isogeny)?).map_err(err)?;
    let rows = triples
        .iter()
        .map(|t| {
            vec![
                join(&t.vertex_orbit),
                join(&t.marks),
                t.ord_s.to_string(),
                t.h_type.clone(),
                t.lambda.as_ref().map(|l| join(&l.torsion)).unwrap_or_default(),
                t.elliptic.to_string(),
            ]
        })
        .collect();
    let header = ["orbit", "marks", "ord_s", "H_type", "lambda", "elliptic"].map(String::from).to_vec();
    Ok(Outcome::json(&triples)?.with_table(Table { header, rows }))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn endoscopy_from_kappa(ty: &str, isogeny: &str, kappa: &str) -> Result<Outcome, String> {
    let kappa: Vec<Rational64> = parse_list("kappa", kappa)?;
    let t = endoscopic_from_kappa(&datum(ty, isogeny)?, &kappa).map_err(err)?;
    let kappa: Vec<String> = t.kappa.iter().map(|x| x.to_string()).collect();
    Outcome::json(json!({
        "kappa": kappa,
        "orbit": t.vertex_orbit,
        "marks": t.marks,
        "ord_s": t.ord_s,
        "H_type": t.h_type,
        "lambda": t.lambda,
        "elliptic": t.elliptic,
    }))
}

pub fn endoscopy_estimate(ty: &str, isogeny: &str) -> Result<Outcome, String> {
    let r = estimate_diagram_check(&datum(ty, isogeny)?).map_err(err)?;
    let ok = r.consistent;
    Ok(Outcome::json(&r)?.verified(ok))
}

fn torus(frob: &str, lattice: Option<&str>) -> Result<TwistedTorus, String> {
    let f: Vec<Vec<i64>> = parse_json("frob", frob)?;
    let Some(lattice) = lattice else {
        return TwistedTorus::from_i64_rows(&f).map_err(err);
    };
    let b = IntMatrix::from_rows(&parse_json::<Vec<Vec<i64>>>("lattice", lattice)?).map_err(err)?;
    let f = IntMatrix::from_rows(&f).map_err(err)?;
    if f.rows() != b.rows() {
        return Err("lattice rows must match the Frobenius size".into());
    }
    let image = &f * &b;
    let r = b.cols();
    let mut restricted = IntMatrix::zeros(r, r);
    for j in 0..r {
        let c = solve_in_basis(&b, &image.column(j)).ok_or("the lattice is not Frobenius-stable")?;
        for (i, x) in c.into_iter().enumerate() {
            restricted[(i, j)] = x;
        }
    }
    TwistedTorus::new(restricted).map_err(err)
}

pub fn tori_h1(frob: &str, lattice: Option<&str>) -> Result<Outcome, String> {
    let t = torus(frob, lattice)?;
    let data = component_group_pi0(&t).map_err(err)?;
    let lifts: Vec<Vec<i64>> = (0..data.h1.torsion.len()).map(|k| data.generator_lift(k)).collect();
    let rows = data.h1.torsion.iter().zip(&lifts).map(|(d, l)| vec![d.to_string(), join(l)]).collect();
    let out = Outcome::json(json!({
        "rank": t.rank(),
        "frobenius_order": t.order(),
        "h1": data.h1,
        "pi0": data.pi0,
        "generator_lifts": lifts,
        "pairing": data.pairing,
        "norm_kernel_quotient": norm_kernel_quotient(&t),
        "perfect": data.is_perfect(),
    }))?;
    Ok(out.with_table(Table { header: vec!["invariant".into(), "generator_lift".into()], rows }))
}

pub fn tori_pair(frob: &str, lattice: Option<&str>, inv: &str, kappa: &str) -> Result<Outcome, String> {
    let data = component_group_pi0(&torus(frob, lattice)?).map_err(err)?;
    let inv: Vec<u64> = parse_json("inv", inv)?;
    let kappa: Vec<u64> = parse_json("kappa", kappa)?;
    let value = tn_pairing(&data, &inv, &kappa).map_err(err)?;
    Outcome::json(json!({ "h1": data.h1, "inv": inv, "kappa": kappa, "value": value.to_string() }))
}

pub fn tori_sln_group(n: usize, m: usize, degrees: &str) -> Result<Outcome, String> {
    let r = sln_kappa_group(n, m, &parse_list::<usize>("degree", degrees)?).map_err(err)?;
    let ok = r.closed;
    Ok(Outcome::json(&r)?.verified(ok))
}

pub fn springer_verify(group: &str, q: u64, all: bool) -> Result<Outcome, String> {
    let ctx = DlContext::new(Kind::parse(group).map_err(err)?, q).map_err(err)?;
    let r = ctx.springer_sweep(all).map_err(err)?;
    let ok = r.ok();
    let rows = r
        .failures
        .iter()
        .map(|c| vec![format!("{:?}", c.torus), join(&c.theta), c.unipotent_class.clone(), c.lhs.clone(), c.rhs.clone()])
        .collect();
    let header = ["torus", "theta", "unipotent_class", "lhs", "rhs"].map(String::from).to_vec();
    Ok(Outcome::json(&r)?.with_table(Table { header, rows }).verified(ok))
}

pub fn chartable(group: &str, q: u64, classical: bool) -> Result<Outcome, String> {
    let g = build_finite_group(Kind::parse(group).map_err(err)?, q).map_err(err)?;
    let (table, names) = if classical {
        let classes = conjugacy_classes(&g);
        let t = classical_table_oracle(&g, &classes).map_err(err)?;
        (t.table, t.names)
    } else {
        let t = character_table_dixon(&g).map_err(err)?;
        let names = (1..=t.characters.len()).map(|i| format!("X.{i}")).collect();
        (t, names)
    };
    let mut header = vec!["character".to_string()];
    header.extend(table.classes.labels.iter().cloned());
    let rows: Vec<Vec<String>> = names
        .iter()
        .zip(&table.characters)
        .map(|(n, chi)| std::iter::once(n.clone()).chain(chi.values.iter().map(|v| v.to_string())).collect())
        .collect();
    let ok = table.orthogonality_holds();
    let out = Outcome::json(json!({
        "group": group.to_ascii_uppercase(),
        "q": q,
        "classes": table.classes.labels,
        "class_sizes": table.classes.sizes,
        "element_orders": table.classes.orders,
        "characters": names.iter().zip(&rows).map(|(n, r)| json!({ "name": n, "values": r[1..] })).collect::<Vec<_>>(),
    }))?;
    Ok(out.with_table(Table { header, rows }).csv_default().verified(ok))
}

pub fn tjd(p: u64, k: u32, matrix: &str) -> Result<Outcome, String> {
    let gamma = TruncatedMatrix::new(p, k, &parse_json::<Vec<Vec<i64>>>("matrix", matrix)?).map_err(err)?;
    let j = topological_jordan(&gamma).map_err(err)?;
    let ok = j.verify(&gamma);
    Ok(Outcome::json(json!({ "delta": j.delta, "u": j.u, "order_r": j.order_r }))?.verified(ok))
}

pub fn hilbert(a: &str, b: &str, place: Option<&str>) -> Result<Outcome, String> {
    let a = parse_rational(a).map_err(err)?;
    let b = parse_rational(b).map_err(err)?;
    if let Some(place) = place {
        let v: Place = place.parse().map_err(err)?;
        let s = hilbert_symbol(&a, &b, v).map_err(err)?;
        return Ok(Outcome::json(s)?.with_table(Table {
            header: vec!["a".into(), "b".into(), "place".into(), "symbol".into()],
            rows: vec![vec![a.to_string(), b.to_string(), v.to_string(), s.to_string()]],
        }));
    }
    let places = relevant_places(&[&a, &b]).map_err(err)?;
    let mut symbols = serde_json::Map::new();
    let mut rows = Vec::new();
    for v in places {
        let s = hilbert_symbol(&a, &b, v).map_err(err)?;
        symbols.insert(v.to_string(), s.into());
        rows.push(vec![a.to_string(), b.to_string(), v.to_string(), s.to_string()]);
    }
    let product = hilbert_product(&a, &b).map_err(err)?;
    let out = Outcome::json(json!({ "a": a.to_string(), "b": b.to_string(), "symbols": symbols, "product": product }))?;
    Ok(out.with_table(Table { header: vec!["a".into(), "b".into(), "place".into(), "symbol".into()], rows }).verified(product == 1))
}

