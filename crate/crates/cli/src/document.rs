//! The machine-readable result tree. Keys are sorted (serde_json's default
//! map), lists follow the engine's canonical orderings.

use bicrossx_core::cartan::{Braiding, FirstOrderCalculus};
use bicrossx_core::exterior::{Cohomology, Exterior, Stop};
use bicrossx_core::hopf::HopfVerification;
use bicrossx_core::tangent::{ClassificationReport, TangentDatum};
use bicrossx_core::Factorization;
use bicrossx_exact::{Cyclotomic, SparseVec};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "bicrossx/1";

pub fn scalar(c: &Cyclotomic) -> Value { Value::String(c.to_string()) }

/// `c·body` with unit coefficients dropped and sums parenthesized.
fn term(c: &Cyclotomic, body: &str) -> String {
    let s = c.to_string();
    let sep = if body.is_empty() { "" } else { "·" };
    if c.is_one() && !body.is_empty() {
        body.to_string()
    } else if s == "-1" && !body.is_empty() {
        format!("-{body}")
    } else if c.as_rational().is_some() || !s.contains([' ']) {
        format!("{s}{sep}{body}")
    } else {
        format!("({s}){sep}{body}")
    }
}

fn sum(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        match (i, t.strip_prefix('-')) {
            (0, _) => out.push_str(&t),
            (_, Some(rest)) => {
                out.push_str(" - ");
                out.push_str(rest);
            },
            (_, None) => {
                out.push_str(" + ");
                out.push_str(&t);
            },
        }
    }
    out
}

pub fn e(a: usize) -> String { format!("e{}", a + 1) }

/// Σ c·x over X.
pub fn kx_text(f: &Factorization, v: &[Cyclotomic]) -> String { sum(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(w, c)| term(c, f.label(w))).collect()) }

fn a_basis(f: &Factorization, ng: usize, i: usize) -> String { format!("δ_{}⊗{}", f.m_name(i / ng), f.g_name(i % ng)) }

/// A 1-form in A⊗Λ¹ coordinates.
pub fn form_text(f: &Factorization, calc: &FirstOrderCalculus, w: &[Cyclotomic]) -> String {
    let ng = calc.alg.ng;
    sum(w.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| term(c, &format!("{}·{}", a_basis(f, ng, k / calc.dim), e(k % calc.dim)))).collect())
}

pub fn lambda1_text(v: &[Cyclotomic]) -> String { sum(v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(a, c)| term(c, &e(a))).collect()) }

pub fn wedge2_text(dim: usize, v: &[(usize, Cyclotomic)]) -> String { sum(v.iter().map(|(k, c)| term(c, &format!("{}∧{}", e(k / dim), e(k % dim)))).collect()) }

fn tensor2_text(v: &[((usize, usize), Cyclotomic)]) -> String {
    sum(v.iter().map(|((a, b), c)| term(c, &format!("{}⊗{}", e(*a), e(*b)))).collect())
}

pub fn stop(s: Stop) -> Value {
    match s {
        Stop::MaxDegree => json!({"kind": "max_degree"}),
        Stop::Vanished(d) => json!({"kind": "vanished", "degree": d}),
        Stop::Truncated(d) => json!({"kind": "truncated", "degree": d}),
    }
}

pub fn factorization(f: &Factorization) -> Value {
    json!({
        "name": f.name,
        "order": f.x.order(),
        "conductor": f.conductor(),
        "g": f.g_elems().iter().map(|&u| f.label(u)).collect::<Vec<_>>(),
        "m": f.m_elems().iter().map(|&s| f.label(s)).collect::<Vec<_>>(),
    })
}

pub fn header(command: &str, input: Value, f: &Factorization) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("input".into(), input);
    m.insert("factorization".into(), factorization(f));
    m
}

pub fn z_block(f: &Factorization, report: &ClassificationReport) -> Value {
    json!({
        "elements": report.z.iter().map(|&z| f.label(z)).collect::<Vec<_>>(),
        "classes": report.classes.iter().zip(&report.fiber_dims).map(|(c, fd)| json!({
            "representative": f.label(c.representative),
            "size": c.len(),
            "members": c.members.iter().map(|&z| f.label(z)).collect::<Vec<_>>(),
            "fiber_dim": fd,
        })).collect::<Vec<_>>(),
    })
}

/// Fields shared by every command that names a calculus.
pub fn calculus_record(f: &Factorization, d: &TangentDatum, calc: &FirstOrderCalculus) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("id".into(), json!(d.id));
    m.insert("dim".into(), json!(d.dim()));
    m.insert("class".into(), json!({"representative": f.label(d.class.representative), "size": d.class.len(), "base_point": f.label(d.z0)}));
    m.insert("m0_dim".into(), json!(d.m0_dim()));
    m.insert("multiplicity".into(), json!(d.multiplicity));
    m.insert("copy".into(), json!({"index": d.copy, "family_size": d.copy_family.len()}));
    m.insert(
        "f_basis".into(),
        Value::Array(
            d.f.iter()
                .enumerate()
                .map(|(a, v)| {
                    json!({
                        "name": format!("f{}", a + 1),
                        "text": kx_text(f, v),
                        "terms": v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(w, c)| json!([f.label(w), scalar(c)])).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        ),
    );
    m.insert("gradings".into(), json!({
        "norm": d.norm.iter().map(|&x| f.label(x)).collect::<Vec<_>>(),
        "bra": d.bra.iter().map(|&x| f.label(x)).collect::<Vec<_>>(),
        "modg": d.modg.iter().map(|&x| f.label(x)).collect::<Vec<_>>(),
    }));
    m.insert("c".into(), Value::Array(d.c.iter().map(scalar).collect()));
    m.insert("theta".into(), json!({"text": lambda1_text(&calc.theta), "coefficients": calc.theta.iter().map(scalar).collect::<Vec<_>>()}));
    m
}

pub fn commutation(f: &Factorization, calc: &FirstOrderCalculus) -> Value {
    let alg = &calc.alg;
    let mut with_delta = Vec::new();
    let mut with_group = Vec::new();
    for a in 0..calc.dim {
        let ea = {
            let mut l = vec![Cyclotomic::zero(calc.n); calc.dim];
            l[a] = Cyclotomic::one(calc.n);
            calc.invariant_form(&l)
        };
        for s in 0..alg.nm {
            with_delta.push(json!({"lhs": format!("{}·δ_{}", e(a), f.m_name(s)), "rhs": form_text(f, calc, &calc.right_mul(&ea, &alg.delta(s)))}));
        }
        for u in 1..alg.ng {
            with_group.push(json!({"lhs": format!("{}·{}", e(a), f.g_name(u)), "rhs": form_text(f, calc, &calc.right_mul(&ea, &alg.group(u)))}));
        }
    }
    let d_delta: Vec<Value> = (0..alg.nm).map(|s| json!({"lhs": format!("dδ_{}", f.m_name(s)), "rhs": form_text(f, calc, &calc.d(&alg.delta(s)))})).collect();
    let d_group: Vec<Value> = (1..alg.ng).map(|u| json!({"lhs": format!("d{}", f.g_name(u)), "rhs": form_text(f, calc, &calc.d(&alg.group(u)))})).collect();
    json!({"with_delta": with_delta, "with_group": with_group, "d_delta": d_delta, "d_group": d_group})
}

pub fn braiding(psi: &Braiding) -> Value {
    let mut out = Vec::new();
    for a in 0..psi.dim {
        for b in 0..psi.dim {
            out.push(json!({"lhs": format!("Ψ({}⊗{})", e(a), e(b)), "rhs": tensor2_text(&psi.entry(a, b))}));
        }
    }
    Value::Array(out)
}

pub fn relations(dim: usize, rels: &[SparseVec]) -> Value {
    Value::Array(
        rels.iter()
            .map(|r| {
                json!({
                    "text": wedge2_text(dim, r),
                    "terms": r.iter().map(|(k, c)| json!([k / dim + 1, k % dim + 1, scalar(c)])).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn exterior(dim: usize, ext: &Exterior) -> Value {
    json!({
        "lambda_dims": ext.dims(),
        "stop": stop(ext.stop),
        "quadratic_relations": relations(dim, &ext.quadratic_relations()),
    })
}

pub fn cohomology(h: &Cohomology) -> Value {
    json!({
        "lambda_dims": h.lambda_dims,
        "stop": stop(h.stop),
        "ranks": h.ranks,
        "betti": h.betti,
        "h0_is_scalars": h.h0_is_scalars,
        "theta_closed": h.theta_closed,
        "theta_exact": h.theta_exact,
        "theta_in_h1": h.theta_in_h1(),
    })
}

pub fn hopf(v: &HopfVerification) -> Value {
    json!({
        "algebras": v.reports.iter().map(|r| json!({"name": r.name, "dim": r.dim, "identities": r.identities, "generator_reduced": r.generator_reduced})).collect::<Vec<_>>(),
        "pairing_rank": v.pairing_rank,
        "pairing_identities": v.pairing_checks,
        "theta_iso": {"basis_checked": v.theta.basis_checked, "bijective": v.theta.bijective, "inverse_mismatches": v.theta.inverse_mismatches.len(), "unit_preserved": v.theta.unit_preserved},
        "pi_equivariance_samples": v.equivariance_checked,
    })
}
