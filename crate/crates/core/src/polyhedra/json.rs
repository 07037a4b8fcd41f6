//! JSON encoding of polyhedra and complexes. Rationals become strings `"p/q"`;
//! primitive integer normals become JSON integers when they fit in an `i64`.

use serde_json::{json, Value};

use super::{PolyhedralComplex, QPolyhedron, Row};
use crate::rational::Rational;

fn int_value(x: &Rational) -> Value {
    match x.to_i64() {
        Some(n) => json!(n),
        None => json!(x.to_string()),
    }
}

fn rows_json(rows: &[Row]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                let (a, b) = r.split_at(r.len() - 1);
                json!({
                    "normal": a.iter().map(int_value).collect::<Vec<_>>(),
                    "offset": b[0].to_string(),
                })
            })
            .collect(),
    )
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

pub fn polyhedron_json(p: &QPolyhedron) -> Value {
    json!({
        "dim": p.dim(),
        "inequalities": rows_json(&p.inequalities),
        "equalities": rows_json(&p.equalities),
    })
}

pub fn complex_json(cx: &PolyhedralComplex) -> Value {
    let cells: Vec<Value> = cx
        .cells
        .iter()
        .zip(&cx.labels)
        .map(|(c, l)| {
            let mut v = polyhedron_json(c);
            v["label"] = match l {
                Some(s) => json!(s),
                None => Value::Null,
            };
            v
        })
        .collect();
    json!({
        "ambient_dim": cx.ambient,
        "lineality": cx.lineality.iter().map(|l| vector_json(l)).collect::<Vec<_>>(),
        "cells": cells,
        "faces": cx.faces.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
    })
}
