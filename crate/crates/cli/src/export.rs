//! The 2-complex of a square system: one 0-cell per vertex, one 1-cell per
//! edge, one 2-cell per square attached along `e f h⁻¹ g⁻¹`.

use serde_json::{json, Value};

use kgraph_core::{SquareSystem, VertexId};

pub fn complex(sys: &SquareSystem) -> Value {
    let sk = sys.skeleton();
    let mut vertices: Vec<&str> = sk.vertices().map(|v| sk.vertex_name(v)).collect();
    vertices.sort();
    let edges: Vec<Value> = sk
        .edges_sorted()
        .into_iter()
        .map(|id| {
            let e = sk.edge(id);
            json!({
                "name": e.name,
                "range": sk.vertex_name(e.range),
                "source": sk.vertex_name(e.source),
                "color": e.color,
            })
        })
        .collect();
    let cells: Vec<Value> = sys
        .squares()
        .iter()
        .map(|sq| {
            let n = |e| sk.edge_name(e).to_owned();
            let (e, f) = sq.lhs;
            let (g, h) = sq.rhs;
            let base: VertexId = sk.edge(e).range;
            json!({
                "square": sq.display(sk).to_string(),
                "base": sk.vertex_name(base),
                "boundary": [n(e), n(f), format!("{}^-1", n(h)), format!("{}^-1", n(g))],
            })
        })
        .collect();
    json!({
        "vertices": vertices,
        "edges": edges,
        "cells": cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use kgraph_core::fixtures;

    #[test]
    fn torus_cell() {
        let (sk, sq) = fixtures::torus();
        let c = complex(&SquareSystem::new(sk, sq).unwrap());
        assert_eq!(c["vertices"], json!(["v"]));
        assert_eq!(c["edges"].as_array().unwrap().len(), 2);
        assert_eq!(c["cells"][0]["boundary"], json!(["f", "g", "f^-1", "g^-1"]));
    }

    #[test]
    fn rank_one_has_no_cells() {
        let (sk, sq) = fixtures::bouquet(2);
        let c = complex(&SquareSystem::new(sk, sq).unwrap());
        assert_eq!(c["cells"], json!([]));
    }
}
