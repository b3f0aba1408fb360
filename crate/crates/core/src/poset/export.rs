//! DOT, CSV and JSON renderings of posets and counts.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serializer;

use super::HasseDiagram;

/// Ranked DOT graph; nodes on one rank share a row.
pub fn to_dot<T>(p: &HasseDiagram<T>, name: &str, label: impl Fn(&T) -> String) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for (i, e) in p.elements().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", label(e).replace('"', "\\\"")).unwrap();
    }
    let profile = p.rank_profile();
    for r in 0..profile.len() {
        let ids: Vec<String> = (0..p.len()).filter(|&i| p.rank(i) == r).map(|i| format!("n{i}")).collect();
        writeln!(out, "  {{ rank=same; {} }}", ids.join("; ")).unwrap();
    }
    for (a, b) in p.covers() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// `rank,observed,closed_form` rows.
pub fn census_csv(observed: &[usize], closed: &[BigInt]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "observed", "closed_form"])?;
    for (r, (o, c)) in observed.iter().zip(closed).enumerate() {
        w.write_record([r.to_string(), o.to_string(), c.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub(crate) fn big_as_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
