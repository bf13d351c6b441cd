//! Canonical JSON serialization: sorted keys (the default map is ordered),
//! cyclotomic constants as exact coefficient strings plus a readable form,
//! and list orderings fixed by the library's canonical sorts.

use serde_json::{json, Value};

use nichols_core::braided::NicholsComponent;
use nichols_core::cyclotomic::CycNum;
use nichols_core::dynkin::DynkinDiagram;
use nichols_core::groupoid::LinearFactor;

pub fn cyc_json(x: &CycNum) -> Value {
    json!({
        "N": x.order(),
        "coeffs": x.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "pretty": x.pretty(),
    })
}

pub fn factor_json(f: &LinearFactor) -> Value {
    json!({
        "exponent": f.exponent,
        "constant": cyc_json(&f.constant),
        "pretty": f.pretty(),
    })
}

pub fn diagram_json(d: &DynkinDiagram) -> Value {
    json!({
        "theta": d.rank(),
        "N": d.order(),
        "vertices": (1..=d.rank()).map(|j| cyc_json(d.vertex(j))).collect::<Vec<_>>(),
        "edges_upper": d.upper_edges().iter().map(cyc_json).collect::<Vec<_>>(),
    })
}

pub fn coords_json(coords: &[CycNum]) -> Value {
    Value::Array(coords.iter().map(cyc_json).collect())
}

pub fn component_json(c: &NicholsComponent) -> Value {
    json!({
        "degree": c.degree,
        "rank": c.rank,
        "ambient_dim": c.ambient_dim,
    })
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}
