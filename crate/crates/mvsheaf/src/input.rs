//! JSON and text input formats: algebras, sites, element references and
//! affine expressions.

use std::fs;

use mvsheaf_core::locale::{Coverage, InfLattice, Site};
use mvsheaf_core::mcnaughton::{Constraint, LinearForm};
use mvsheaf_core::rational::parse_fraction;
use mvsheaf_core::{FiniteMvAlgebra, MvValue, Rational};
use num_traits::Zero;
use serde::Deserialize;
use serde_json::Value;

use crate::CliError;

/// Default cap on the size of algebras built from JSON.
pub const DEFAULT_SIZE_LIMIT: usize = 256;

/// Reads `@path` from disk; anything else is taken literally.
pub fn read_arg(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraSpec {
    Chain {
        k: usize,
    },
    Product {
        factors: Vec<AlgebraSpec>,
    },
    Table {
        #[serde(default)]
        size: Option<usize>,
        oplus: Vec<Vec<usize>>,
        neg: Vec<usize>,
        #[serde(default)]
        zero: Option<usize>,
    },
}

impl AlgebraSpec {
    /// Size of the algebra this describes, saturating.
    pub fn size(&self) -> usize {
        match self {
            AlgebraSpec::Chain { k } => k.saturating_add(1),
            AlgebraSpec::Product { factors } => factors
                .iter()
                .fold(1usize, |acc, f| acc.saturating_mul(f.size())),
            AlgebraSpec::Table { neg, .. } => neg.len(),
        }
    }

    pub fn build(&self, limit: usize) -> Result<FiniteMvAlgebra, CliError> {
        let size = self.size();
        if size > limit {
            return Err(CliError::Domain(format!(
                "algebra has {size} elements, above the limit of {limit}"
            )));
        }
        let domain = |e: mvsheaf_core::algebra::AlgebraError| CliError::Domain(e.to_string());
        match self {
            AlgebraSpec::Chain { k } => FiniteMvAlgebra::chain(*k).map_err(domain),
            AlgebraSpec::Product { factors } => {
                let built = factors
                    .iter()
                    .map(|f| f.build(limit))
                    .collect::<Result<Vec<_>, _>>()?;
                FiniteMvAlgebra::product_of(&built)
                    .ok_or_else(|| CliError::Usage("a product needs at least one factor".into()))
            }
            AlgebraSpec::Table {
                size,
                oplus,
                neg,
                zero,
            } => {
                if size.is_some_and(|s| s != neg.len()) {
                    return Err(CliError::Usage("size disagrees with the neg table".into()));
                }
                FiniteMvAlgebra::from_tables(oplus.clone(), neg.clone(), *zero).map_err(domain)
            }
        }
    }
}

pub fn parse_algebra(arg: &str, limit: usize) -> Result<FiniteMvAlgebra, CliError> {
    let text = read_arg(arg)?;
    let spec: AlgebraSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad algebra JSON: {e}")))?;
    spec.build(limit)
}

/// An element given as an index (`3`), a label array (`["1/2","0/1"]`), or
/// a JSON-encoded string of either.
pub fn parse_element(a: &FiniteMvAlgebra, arg: &str) -> Result<MvValue, CliError> {
    let value: Value = serde_json::from_str(arg)
        .or_else(|_| serde_json::from_str(&format!("[{arg}]")))
        .map_err(|e| CliError::Usage(format!("bad element `{arg}`: {e}")))?;
    element_from_json(a, &value)
}

pub fn element_from_json(a: &FiniteMvAlgebra, value: &Value) -> Result<MvValue, CliError> {
    match value {
        Value::Number(n) => {
            let i = n
                .as_u64()
                .ok_or_else(|| CliError::Usage(format!("bad element index {n}")))?
                as usize;
            a.check(MvValue::new(i))
                .map_err(|e| CliError::Usage(e.to_string()))
        }
        Value::Array(items) => {
            let label = items
                .iter()
                .map(|v| match v {
                    Value::String(s) => parse_fraction(s),
                    Value::Number(n) => n.as_i64().map(mvsheaf_core::rational::int),
                    _ => None,
                })
                .collect::<Option<Vec<Rational>>>()
                .ok_or_else(|| CliError::Usage(format!("bad element label {value}")))?;
            a.element_with_label(&label)
                .ok_or_else(|| CliError::Usage(format!("no element with label {value}")))
        }
        _ => Err(CliError::Usage(format!("bad element {value}"))),
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteSpec {
    #[serde(default)]
    pub size: Option<usize>,
    /// `order[a][b]` is `a ≤ b`, as booleans or 0/1.
    #[serde(default)]
    pub order: Option<Vec<Vec<Value>>>,
    /// Covering pairs `[a, b]` meaning `a < b`.
    #[serde(default)]
    pub hasse: Option<Vec<[usize; 2]>>,
    /// Covers per element; each cover a list of elements.
    #[serde(default)]
    pub covers: Option<Vec<Vec<Vec<usize>>>>,
    /// `"trivial"` or `"finite_suprema"`, used when `covers` is absent.
    #[serde(default)]
    pub topology: Option<String>,
}

pub fn parse_site(arg: &str) -> Result<Site, CliError> {
    let text = read_arg(arg)?;
    let spec: SiteSpec =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad site JSON: {e}")))?;
    let domain = |e: mvsheaf_core::locale::LocaleError| CliError::Domain(e.to_string());
    let lattice = match (&spec.order, &spec.hasse) {
        (Some(order), None) => {
            let rows = order
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| match v {
                            Value::Bool(b) => Ok(*b),
                            Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
                            Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
                            _ => Err(CliError::Usage(format!("bad order entry {v}"))),
                        })
                        .collect::<Result<Vec<bool>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if spec.size.is_some_and(|s| s != rows.len()) {
                return Err(CliError::Usage(
                    "size disagrees with the order matrix".into(),
                ));
            }
            InfLattice::new(&rows).map_err(domain)?
        }
        (None, Some(edges)) => {
            let m = spec
                .size
                .ok_or_else(|| CliError::Usage("hasse edges need a size".into()))?;
            let edges: Vec<(usize, usize)> = edges.iter().map(|e| (e[0], e[1])).collect();
            InfLattice::from_hasse(m, &edges).map_err(domain)?
        }
        _ => return Err(CliError::Usage("give exactly one of order or hasse".into())),
    };
    let coverage = match (&spec.covers, spec.topology.as_deref()) {
        (Some(c), None) => Coverage::new(&lattice, c.clone()).map_err(domain)?,
        (None, Some("trivial")) => Coverage::trivial(&lattice),
        (None, Some("finite_suprema")) => Coverage::finite_suprema(&lattice).map_err(domain)?,
        (None, Some(other)) => return Err(CliError::Usage(format!("unknown topology `{other}`"))),
        _ => {
            return Err(CliError::Usage(
                "give exactly one of covers or topology".into(),
            ))
        }
    };
    Ok(Site::new(lattice, coverage))
}

/// A point `"1/2,1/3"` of `[0,1]^n`.
pub fn parse_point(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',')
        .map(|c| parse_fraction(c).ok_or_else(|| CliError::Usage(format!("bad coordinate `{c}`"))))
        .collect()
}

/// Parses an affine expression such as `2*x1 - x2/3 + 1/2` into a constant
/// and `n` coefficients.
pub fn parse_affine(s: &str, n: usize) -> Result<(Rational, Vec<Rational>), CliError> {
    let bad = |msg: &str| CliError::Usage(format!("bad affine expression `{s}`: {msg}"));
    let mut constant = Rational::zero();
    let mut coeffs = vec![Rational::zero(); n];
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
        } else if ch == '+' || ch == '-' {
            if ch == '-' {
                negative = !negative;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad("dangling sign"));
    }
    terms.push((negative, cur));
    for (neg, body) in terms {
        let (coef, var) = match body.find('x') {
            Some(pos) => {
                let (c, v) = body.split_at(pos);
                let c = c.strip_suffix('*').unwrap_or(c);
                let coef = if c.is_empty() {
                    Rational::from_integer(1.into())
                } else {
                    parse_fraction(c).ok_or_else(|| bad("bad coefficient"))?
                };
                let (v, div) = match v.split_once('/') {
                    Some((v, d)) => (
                        v,
                        Some(parse_fraction(d).ok_or_else(|| bad("bad divisor"))?),
                    ),
                    None => (v, None),
                };
                let k: usize = v[1..].parse().map_err(|_| bad("bad variable"))?;
                if k == 0 || k > n {
                    return Err(bad("variable outside the dimension"));
                }
                let coef = match div {
                    Some(d) if !d.is_zero() => coef / d,
                    Some(_) => return Err(bad("division by zero")),
                    None => coef,
                };
                (coef, Some(k - 1))
            }
            None => (
                parse_fraction(&body).ok_or_else(|| bad("bad constant"))?,
                None,
            ),
        };
        let coef = if neg { -coef } else { coef };
        match var {
            Some(i) => coeffs[i] += coef,
            None => constant += coef,
        }
    }
    Ok((constant, coeffs))
}

/// An integer affine form; rational input is rejected.
pub fn parse_integer_form(s: &str, n: usize) -> Result<LinearForm, CliError> {
    let (c, coeffs) = parse_affine(s, n)?;
    let integral = |q: &Rational| q.is_integer();
    if !integral(&c) || !coeffs.iter().all(integral) {
        return Err(CliError::Usage(format!(
            "`{s}` must have integer coefficients"
        )));
    }
    Ok(LinearForm::new(
        c.to_integer(),
        coeffs.iter().map(|q| q.to_integer()).collect(),
    ))
}

/// `lhs >= rhs`, `lhs <= rhs` or `lhs = rhs`, with rational affine sides.
pub fn parse_constraint(s: &str, n: usize) -> Result<Constraint, CliError> {
    let (lhs, rel, rhs) = if let Some((l, r)) = s.split_once(">=") {
        (l, ">=", r)
    } else if let Some((l, r)) = s.split_once("<=") {
        (l, "<=", r)
    } else if let Some((l, r)) = s.split_once('=') {
        (l, "=", r)
    } else {
        return Err(CliError::Usage(format!(
            "constraint `{s}` needs >=, <= or ="
        )));
    };
    let (lc, lv) = parse_affine(lhs, n)?;
    let (rc, rv) = parse_affine(rhs, n)?;
    let (c, v): (Rational, Vec<Rational>) = if rel == "<=" {
        (rc - lc, rv.iter().zip(&lv).map(|(r, l)| r - l).collect())
    } else {
        (lc - rc, lv.iter().zip(&rv).map(|(l, r)| l - r).collect())
    };
    let form = LinearForm::from_rational(&c, &v);
    Ok(if rel == "=" {
        Constraint::eq(form)
    } else {
        Constraint::ge(form)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mvsheaf_core::rational::ratio;

    #[test]
    fn algebra_json() {
        let a = parse_algebra(r#"{"kind":"chain","k":4}"#, 256).unwrap();
        assert_eq!(a.size(), 5);
        let p = parse_algebra(
            r#"{"kind":"product","factors":[{"kind":"chain","k":2},{"kind":"chain","k":2}]}"#,
            256,
        )
        .unwrap();
        assert_eq!(p.size(), 9);
        let t =
            parse_algebra(r#"{"kind":"table","oplus":[[0,1],[1,1]],"neg":[1,0]}"#, 256).unwrap();
        assert_eq!(t.size(), 2);
        assert!(matches!(
            parse_algebra(r#"{"kind":"chain","k":400}"#, 256),
            Err(CliError::Domain(_))
        ));
        assert!(matches!(parse_algebra("{", 256), Err(CliError::Usage(_))));
    }

    #[test]
    fn elements() {
        let p = parse_algebra(
            r#"{"kind":"product","factors":[{"kind":"chain","k":2},{"kind":"chain","k":2}]}"#,
            256,
        )
        .unwrap();
        let x = parse_element(&p, r#"["1/2","1"]"#).unwrap();
        assert_eq!(p.label(x).unwrap(), &[ratio(1, 2), ratio(1, 1)]);
        assert_eq!(parse_element(&p, "4").unwrap(), MvValue::new(4));
        assert!(parse_element(&p, "9").is_err());
    }

    #[test]
    fn affine_expressions() {
        let (c, v) = parse_affine("2*x1 - x2/3 + 1/2", 2).unwrap();
        assert_eq!(c, ratio(1, 2));
        assert_eq!(v, vec![ratio(2, 1), ratio(-1, 3)]);
        let (c, v) = parse_affine("-x1-1", 1).unwrap();
        assert_eq!((c, v), (ratio(-1, 1), vec![ratio(-1, 1)]));
        assert!(parse_affine("x3", 2).is_err());
        assert_eq!(
            parse_integer_form("x1 + x2 - 1", 2).unwrap(),
            LinearForm::from_i64(-1, &[1, 1])
        );
        assert!(parse_integer_form("x1/2", 1).is_err());
        assert_eq!(
            parse_constraint("x1 <= 1/2", 1).unwrap(),
            Constraint::ge(LinearForm::from_i64(1, &[-2]))
        );
    }

    #[test]
    fn sites() {
        let s = parse_site(
            r#"{"size":4,"hasse":[[0,1],[0,2],[1,3],[2,3]],"topology":"finite_suprema"}"#,
        )
        .unwrap();
        assert_eq!(s.size(), 4);
        let s = parse_site(r#"{"order":[[1,1],[0,1]],"covers":[[[0]],[[1]]]}"#).unwrap();
        assert_eq!(s.size(), 2);
        assert!(parse_site(r#"{"order":[[1,1],[0,1]]}"#).is_err());
    }
}
