//! JSON and plain-text reports.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::complex::HomologyResult;
use crate::functor::HomologyMap;
use crate::matrix::Matrix;
use crate::ring::Ring;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn homology_json(h: &HomologyResult) -> Value {
    Value::Array(
        h.degrees
            .iter()
            .enumerate()
            .map(|(k, d)| json!({ "degree": k, "betti": d.betti, "torsion": d.torsion }))
            .collect(),
    )
}

/// A homology report. `timing` is omitted when `None`.
pub fn homology_report(source: &str, h: &HomologyResult, dims: &[usize], provenance: Value, timing: Option<f64>) -> Value {
    let mut out = Map::new();
    out.insert("source".into(), json!(source));
    out.insert("ring".into(), json!(h.ring.to_string()));
    out.insert("homology".into(), homology_json(h));
    out.insert("dims".into(), json!(dims));
    if let Some(t) = timing {
        out.insert("timing".into(), json!({ "seconds": t }));
    }
    out.insert("provenance".into(), provenance);
    Value::Object(out)
}

pub fn matrix_json<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(|v| ring.to_json(v)).collect())).collect())
}

pub fn induced_json<R: Ring>(ring: &R, maps: &[HomologyMap<R>]) -> Value {
    Value::Array(
        maps.iter()
            .map(|m| {
                json!({
                    "degree": m.degree,
                    "source_betti": m.source_betti,
                    "target_betti": m.target_betti,
                    "free": matrix_json(ring, &m.free),
                    "torsion": matrix_json(ring, &m.torsion),
                    "rank": m.rank,
                })
            })
            .collect(),
    )
}

fn torsion_text(t: &[crate::int::Int]) -> String {
    if t.is_empty() {
        "-".into()
    } else {
        t.iter().map(|v| format!("Z/{v}")).collect::<Vec<_>>().join(" + ")
    }
}

/// `degree  betti  torsion` rows.
pub fn homology_table(title: &str, h: &HomologyResult) -> String {
    let mut s = format!("{title} over {}\n{:>6}  {:>6}  torsion\n", h.ring, "degree", "betti");
    for (k, d) in h.degrees.iter().enumerate() {
        let _ = writeln!(s, "{k:>6}  {:>6}  {}", d.betti, torsion_text(&d.torsion));
    }
    s
}

/// One row per degree with the three computations side by side.
pub fn comparison_table(rows: &[Value], verdict: bool) -> String {
    let mut s = format!("{:>6}  {:>12}  {:>12}  {:>14}  agree\n", "degree", "path_poset", "hochschild", "chromatic_hat");
    let cell = |v: &Value| {
        let b = v["betti"].as_u64().unwrap_or(0);
        let t = v["torsion"].as_array().map_or(0, Vec::len);
        if t == 0 {
            b.to_string()
        } else {
            format!("{b}+{t}t")
        }
    };
    for r in rows {
        let _ = writeln!(
            s,
            "{:>6}  {:>12}  {:>12}  {:>14}  {}",
            r["degree"].as_u64().unwrap_or(0),
            cell(&r["path_poset"]),
            cell(&r["hochschild"]),
            cell(&r["chromatic_hat"]),
            match (r["agree"].as_bool() == Some(true), r["required"].as_bool() == Some(true)) {
                (true, true) => "yes",
                (false, true) => "NO",
                (true, false) => "yes (outside range)",
                (false, false) => "no (outside range)",
            }
        );
    }
    let _ = writeln!(s, "verdict: {}", if verdict { "PASS" } else { "FAIL" });
    s
}

pub fn induced_table<R: Ring>(ring: &R, maps: &[HomologyMap<R>]) -> String {
    let mut s = String::new();
    for m in maps {
        let _ = writeln!(s, "degree {}: H = {} -> {}, rank {}", m.degree, m.source_betti, m.target_betti, m.rank);
        for i in 0..m.free.nrows() {
            let row: Vec<String> = m.free.row(i).iter().map(|v| ring.format(v)).collect();
            let _ = writeln!(s, "  [{}]", row.join(" "));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DegreeHomology;
    use crate::int::Int;
    use crate::ring::RingKind;

    #[test]
    fn report_shape() {
        let h = HomologyResult {
            ring: RingKind::Integers,
            degrees: vec![DegreeHomology { betti: 1, torsion: vec![] }, DegreeHomology { betti: 0, torsion: vec![Int::from(2)] }],
        };
        let r = homology_report("path_poset", &h, &[3, 2], json!({}), None);
        assert_eq!(r["ring"], "Z");
        assert_eq!(r["homology"][1]["torsion"][0], 2);
        assert!(r.get("timing").is_none());
        assert!(homology_table("H", &h).contains("Z/2"));
    }
}
