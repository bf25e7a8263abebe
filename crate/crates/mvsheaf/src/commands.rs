//! One function per CLI verb. Each returns the JSON report printed on
//! standard output.

use mvsheaf_core::ideals::{self, Ideal};
use mvsheaf_core::locale::{self, Site};
use mvsheaf_core::mcnaughton::{self, Compiler, Constraint, LinearForm, RationalPolyhedron};
use mvsheaf_core::spectrum::{self, PrimeSpectrum, VerificationMethod};
use mvsheaf_core::term::{parse, parse_lines};
use mvsheaf_core::{FiniteMvAlgebra, MvValue, Rational, Term};
use serde_json::{json, Value};

use crate::render;
use crate::CliError;

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

pub fn parse_term(text: &str) -> Result<Term, CliError> {
    parse(text).map_err(|e| CliError::Usage(format!("cannot parse `{text}`: {e}")))
}

/// The explicit dimension, or the largest arity among `terms` (at least 1).
pub fn dimension(n: Option<usize>, terms: &[&Term]) -> Result<usize, CliError> {
    let needed = terms.iter().map(|t| t.arity()).max().unwrap_or(0).max(1);
    match n {
        Some(n) if n < needed => Err(CliError::Usage(format!(
            "--n {n} is below the arity {needed} of the input"
        ))),
        Some(n) => Ok(n),
        None => Ok(needed),
    }
}

pub fn compiler(n: usize, max_dim: usize) -> Result<Compiler, CliError> {
    Compiler::with_cap(n, max_dim).map_err(domain)
}

// ---- alg ----

pub fn alg_validate(a: &FiniteMvAlgebra) -> Value {
    let report = a.validate_axioms();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed,
                "counterexample": c.counterexample.as_ref().map(|xs| render::elements(a, xs)),
            })
        })
        .collect();
    json!({ "ok": report.all_passed(), "size": a.size(), "checks": checks })
}

pub fn alg_primes(a: &FiniteMvAlgebra) -> Result<Value, CliError> {
    let primes = ideals::enumerate_primes(a).map_err(domain)?;
    let rendered: Vec<Value> = primes
        .iter()
        .map(|p| {
            json!({
                "elements": render::ideal(a, p),
                "generator": render::element(a, ideals::principal_generator(a, p)),
                "maximal": ideals::is_maximal(a, p).unwrap_or(false),
            })
        })
        .collect();
    Ok(json!({ "ok": true, "count": primes.len(), "primes": rendered }))
}

pub fn alg_quotient(a: &FiniteMvAlgebra, generators: &[MvValue]) -> Value {
    let i = ideals::generated_ideal(a, generators);
    let q = ideals::quotient(a, &i);
    let classes: Vec<Value> = q
        .algebra
        .elements()
        .map(|c| {
            let members: Vec<MvValue> = a.elements().filter(|&x| q.project(x) == c).collect();
            render::elements(a, &members)
        })
        .collect();
    json!({
        "ok": true,
        "ideal": render::ideal(a, &i),
        "size": q.algebra.size(),
        "classes": classes,
        "chain": ideals::is_chain(&q.algebra),
    })
}

// ---- spec ----

fn spectrum_of(a: &FiniteMvAlgebra) -> Result<PrimeSpectrum, CliError> {
    spectrum::build_spectrum(a).map_err(domain)
}

pub fn spec_build(a: &FiniteMvAlgebra) -> Result<Value, CliError> {
    let s = spectrum_of(a)?;
    let points: Vec<Value> = s.points().iter().map(|p| render::ideal(a, p)).collect();
    let base: Vec<Value> = a
        .elements()
        .map(
            |x| json!({ "element": render::element(a, x), "open": render::bitset(s.base_open(x)) }),
        )
        .collect();
    let stalks: Vec<usize> = s.stalks().iter().map(|q| q.algebra.size()).collect();
    Ok(json!({
        "ok": true,
        "points": points,
        "base_opens": base,
        "opens": s.opens().iter().map(|o| render::bitset(o)).collect::<Vec<_>>(),
        "stalk_sizes": stalks,
        "discrete": s.is_discrete(),
    }))
}

fn section_json(s: &PrimeSpectrum, values: &[MvValue]) -> Value {
    let a = s.algebra();
    Value::Array(
        values
            .iter()
            .enumerate()
            .map(|(p, &v)| render::element(a, s.stalk(p).lift(v)))
            .collect(),
    )
}

pub fn spec_sections(a: &FiniteMvAlgebra, cap: u64) -> Result<Value, CliError> {
    let s = spectrum_of(a)?;
    let sections = s.enumerate_global_sections(cap).map_err(domain)?;
    let rendered: Vec<Value> = sections
        .iter()
        .map(|g| section_json(&s, &g.values))
        .collect();
    Ok(json!({ "ok": true, "count": sections.len(), "sections": rendered }))
}

pub fn spec_verify(a: &FiniteMvAlgebra, cap: u64) -> Result<Value, CliError> {
    let s = spectrum_of(a)?;
    let r = s.verify_representation(cap).map_err(domain)?;
    let method = match r.method {
        VerificationMethod::Exhaustive => "exhaustive",
        VerificationMethod::CountingAndGluing => "counting_and_gluing",
    };
    Ok(json!({
        "ok": r.is_bijective(),
        "eta": if r.is_bijective() { "isomorphism" } else { "not an isomorphism" },
        "sections": r.sections,
        "size": r.algebra_size,
        "injective": r.injective,
        "surjective": r.surjective,
        "method": method,
        "collision": r.collision.map(|(x, y)| json!([render::element(a, x), render::element(a, y)])),
        "missing": r.missing.as_ref().map(|g| section_json(&s, &g.values)),
    }))
}

pub fn spec_glue(
    a: &FiniteMvAlgebra,
    a1: MvValue,
    a2: MvValue,
    b1: MvValue,
    b2: MvValue,
) -> Result<Value, CliError> {
    let b = spectrum::glue(a, a1, a2, b1, b2).map_err(domain)?;
    let c = spectrum::glue_alt(a, a1, a2, b1, b2).map_err(domain)?;
    let left = spectrum::congruent_mod(a, a1, b, b1);
    let right = spectrum::congruent_mod(a, a2, b, b2);
    let agree = spectrum::congruent_mod(a, a.meet(a1, a2), b, c);
    Ok(json!({
        "ok": left && right && agree,
        "b": render::element(a, b),
        "alt": render::element(a, c),
        "restricts_to_b1": left,
        "restricts_to_b2": right,
        "alt_agrees": agree,
    }))
}

// ---- term ----

pub fn term_parse(text: &str) -> Result<Value, CliError> {
    let terms = parse_lines(text).map_err(|e| CliError::Usage(e.to_string()))?;
    let rendered: Vec<Value> = terms
        .iter()
        .map(|t| json!({ "text": t.to_text(), "arity": t.arity(), "size": t.size(), "depth": t.depth() }))
        .collect();
    Ok(json!({ "ok": true, "terms": rendered }))
}

pub fn term_eval_unit(t: &Term, p: &[Rational]) -> Result<Value, CliError> {
    let v = t.eval_unit(p).map_err(domain)?;
    Ok(json!({ "ok": true, "value": render::fraction(&v) }))
}

pub fn term_eval_algebra(
    t: &Term,
    a: &FiniteMvAlgebra,
    env: &[MvValue],
) -> Result<Value, CliError> {
    let v = t.eval(a, env).map_err(domain)?;
    Ok(json!({ "ok": true, "value": render::element(a, v) }))
}

pub fn term_compile(t: &Term, n: usize, max_dim: usize) -> Result<Value, CliError> {
    let mut k = compiler(n, max_dim)?;
    let f = k.compile(t).map_err(domain)?;
    let mut v = render::pwl(&f);
    v["ok"] = json!(true);
    Ok(v)
}

pub fn term_eq(s: &Term, t: &Term, n: usize, max_dim: usize) -> Result<Value, CliError> {
    let mut k = compiler(n, max_dim)?;
    let (f, g) = (k.compile(s).map_err(domain)?, k.compile(t).map_err(domain)?);
    let c = mcnaughton::pwl_equal(&f, &g);
    Ok(json!({ "ok": true, "equal": c.equal, "witness": c.witness.as_deref().map(render::point) }))
}

pub fn term_zeros(t: &Term, n: usize, max_dim: usize) -> Result<Value, CliError> {
    let mut k = compiler(n, max_dim)?;
    let f = k.compile(t).map_err(domain)?;
    let faces = mcnaughton::zero_set(&f);
    Ok(json!({ "ok": true, "faces": faces.iter().map(render::polyhedron).collect::<Vec<_>>() }))
}

pub fn term_member(f: &Term, g: &Term, n: usize, max_dim: usize) -> Result<Value, CliError> {
    let mut k = compiler(n, max_dim)?;
    let m = mcnaughton::ideal_member(&mut k, f, g).map_err(domain)?;
    Ok(
        json!({ "ok": true, "member": m.member, "witness": m.witness.as_deref().map(render::point) }),
    )
}

pub fn term_archimedean(f: &Term, n: usize, max_dim: usize) -> Result<Value, CliError> {
    let mut k = compiler(n, max_dim)?;
    let r = mcnaughton::is_archimedean_term(&mut k, f).map_err(domain)?;
    Ok(json!({ "ok": true, "archimedean": r.archimedean, "d": r.d }))
}

pub fn term_glue(terms: [&Term; 4], n: usize, max_dim: usize) -> Result<Value, CliError> {
    let mut k = compiler(n, max_dim)?;
    let [f1, f2, g1, g2] = terms;
    let r = mcnaughton::glue_fp(&mut k, f1, f2, g1, g2).map_err(domain)?;
    Ok(json!({ "ok": true, "term": r.term.to_text(), "n": r.n }))
}

// ---- mc ----

pub fn mc_truncate(h: &LinearForm, n: usize, max_dim: usize) -> Result<Value, CliError> {
    let k = compiler(n, max_dim)?;
    let f = k.truncate(h).map_err(domain)?;
    Ok(json!({
        "ok": true,
        "form": render::form(h),
        "term": mcnaughton::truncation_term(h).to_text(),
        "pwl": render::pwl(&f),
    }))
}

pub fn mc_glue_cover(pairs: &[(Term, Term)], n: usize, max_dim: usize) -> Result<Value, CliError> {
    let mut k = compiler(n, max_dim)?;
    let r = mcnaughton::glue_cover(&mut k, pairs).map_err(domain)?;
    Ok(json!({ "ok": true, "term": r.term.to_text(), "multipliers": r.multipliers }))
}

pub fn mc_poly2term(constraints: Vec<Constraint>, n: usize) -> Value {
    let p = RationalPolyhedron::new(n, constraints);
    json!({
        "ok": true,
        "polyhedron": render::polyhedron(&p),
        "term": mcnaughton::polyhedron_to_term(&p).to_text(),
    })
}

// ---- locale ----

fn covers_json(site: &Site) -> Value {
    Value::Array(
        site.coverage
            .all_covers()
            .iter()
            .map(|cs| json!(cs))
            .collect(),
    )
}

pub fn locale_check(site: &Site) -> Value {
    let r = locale::check_topology_axioms(site);
    json!({
        "ok": r.is_topology(),
        "size": site.size(),
        "antisymmetric": site.lattice.is_antisymmetric(),
        "distributive": site.lattice.is_distributive(),
        "covers": covers_json(site),
        "identity_failure": r.identity,
        "transitivity_failure": r.transitivity,
        "stability_failure": r.stability,
        "subcanonical": r.is_subcanonical(),
        "subcanonical_failure": r.subcanonical,
    })
}

pub fn locale_frame(site: &Site, cap: usize) -> Result<Value, CliError> {
    let m = site.size();
    let frame = locale::ideal_frame(site, cap).map_err(domain)?;
    let distributivity = frame
        .distributivity_failure(site)
        .map(|(u, v, w)| json!([render::mask(u, m), render::mask(v, m), render::mask(w, m)]));
    let closure = locale::closure_laws_hold(site, 1 << 16);
    Ok(json!({
        "ok": distributivity.is_none() && closure && frame.is_closed(site),
        "count": frame.len(),
        "elements": frame.elements().iter().map(|&u| render::mask(u, m)).collect::<Vec<_>>(),
        "distributivity_failure": distributivity,
        "closure_laws": closure,
        "points": frame.points(site).iter().map(|&u| render::mask(u, m)).collect::<Vec<_>>(),
    }))
}

pub fn locale_points(site: &Site, cap: usize) -> Result<Value, CliError> {
    let m = site.size();
    let pts = locale::points(site);
    let frame = locale::ideal_frame(site, cap).map_err(domain)?;
    let bijection = locale::points_biject_with_frame_points(site, &frame);
    Ok(json!({
        "ok": bijection,
        "points": pts
            .iter()
            .map(|p| json!({ "members": render::mask(p.members, m), "proper": p.proper }))
            .collect::<Vec<_>>(),
        "bijection_with_frame_points": bijection,
    }))
}

pub fn locale_space(site: &Site, cap: usize) -> Result<Value, CliError> {
    let m = site.size();
    let space = locale::point_space(site).map_err(domain)?;
    let frame = locale::ideal_frame(site, cap).map_err(domain)?;
    let cmp = locale::compare_frame_with_space(&frame, &space);
    let k = space.points.len();
    Ok(json!({
        "ok": space.is_sober() && space.is_compact(),
        "points": space.points.iter().map(|p| render::mask(p.members, m)).collect::<Vec<_>>(),
        "base": space.base.iter().map(|&b| render::mask(b, k)).collect::<Vec<_>>(),
        "opens": space.opens.len(),
        "sober": space.is_sober(),
        "compact": space.is_compact(),
        "base_closed_under_meets": space.base_closed_under_meets(&site.lattice),
        "enough_points": cmp.injective,
        "rho_surjective": cmp.surjective,
    }))
}

pub fn locale_va(a: &FiniteMvAlgebra) -> Result<Value, CliError> {
    let va = locale::va_lattice(a).map_err(domain)?;
    let report = locale::va_points_vs_primes(a).map_err(domain)?;
    let pts = locale::points(&va.site);
    let ideals: Vec<Ideal> = pts.iter().map(|p| va.point_to_ideal(a, p)).collect();
    Ok(json!({
        "ok": report.bijective && report.base_opens_match,
        "classes": va.classes.iter().map(|c| render::elements(a, c)).collect::<Vec<_>>(),
        "covers": covers_json(&va.site),
        "points": ideals.iter().map(|i| render::ideal(a, i)).collect::<Vec<_>>(),
        "bijective_with_primes": report.bijective,
        "base_opens_match": report.base_opens_match,
        "oplus_law": report.oplus_law,
        "descent_filters_match_opens": report.descent_filters_match_opens,
    }))
}
