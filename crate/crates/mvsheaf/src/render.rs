//! JSON renderings of core values. Numbers are always `"num/den"` strings.

use mvsheaf_core::ideals::Ideal;
use mvsheaf_core::locale::Set;
use mvsheaf_core::mcnaughton::{Constraint, LinearForm, PwlFunction, RationalPolyhedron, Relation};
use mvsheaf_core::rational::to_fraction_string;
use mvsheaf_core::{FiniteMvAlgebra, MvValue, Rational};
use serde_json::{json, Value};

pub fn fraction(q: &Rational) -> Value {
    Value::String(to_fraction_string(q))
}

pub fn integer(k: &num_bigint::BigInt) -> Value {
    Value::String(format!("{k}/1"))
}

pub fn point(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(fraction).collect())
}

/// An element as its label when the algebra carries labels, otherwise its
/// index.
pub fn element(a: &FiniteMvAlgebra, x: MvValue) -> Value {
    match a.label(x) {
        Some(label) => point(label),
        None => json!(x.index()),
    }
}

pub fn elements(a: &FiniteMvAlgebra, xs: &[MvValue]) -> Value {
    Value::Array(xs.iter().map(|&x| element(a, x)).collect())
}

pub fn ideal(a: &FiniteMvAlgebra, i: &Ideal) -> Value {
    elements(a, &i.elements())
}

pub fn bitset(bits: &[bool]) -> Value {
    Value::String(bits.iter().map(|&b| if b { '1' } else { '0' }).collect())
}

pub fn mask(s: Set, m: usize) -> Value {
    Value::Array(
        (0..m)
            .filter(|i| s >> i & 1 == 1)
            .map(|i| json!(i))
            .collect(),
    )
}

pub fn form(h: &LinearForm) -> Value {
    json!({
        "constant": integer(&h.constant),
        "coefficients": h.coefficients.iter().map(integer).collect::<Vec<_>>(),
        "text": h.to_string(),
    })
}

pub fn constraint(c: &Constraint) -> Value {
    let rel = match c.relation {
        Relation::Ge => ">=",
        Relation::Eq => "=",
    };
    json!({
        "constant": integer(&c.form.constant),
        "coefficients": c.form.coefficients.iter().map(integer).collect::<Vec<_>>(),
        "relation": rel,
        "text": format!("{} {rel} 0", c.form),
    })
}

pub fn polyhedron(p: &RationalPolyhedron) -> Value {
    json!({
        "constraints": p.constraints().iter().map(constraint).collect::<Vec<_>>(),
        "vertices": p.vertices().iter().map(|v| point(v)).collect::<Vec<_>>(),
        "dimension": p.affine_dimension(),
    })
}

pub fn pwl(f: &PwlFunction) -> Value {
    let cells: Vec<Value> = f
        .cells()
        .iter()
        .zip(f.pieces())
        .map(|(c, h)| {
            let mut v = polyhedron(c);
            v["piece"] = form(h);
            v
        })
        .collect();
    json!({ "n": f.dimension(), "cells": cells })
}
