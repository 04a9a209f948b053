//! JSON fragments for reports. Keys are sorted by serde_json's map, which
//! keeps output byte-stable.

use fibercount::bounds::{BoundCertificate, BoundKind, LiaisonReport, Prop17};
use fibercount::fibers::{FiberKind, FiberReport, OneDimLocus};
use fibercount::hilbert::{NmlInvariants, NmlRoute};
use fibercount::{BaseLocusReport, Field};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn hypotheses(rep: &BaseLocusReport) -> Value {
    json!({
        "is_finite": rep.is_finite,
        "is_empty": rep.is_empty,
        "deg_p": rep.deg_p,
        "is_lci": rep.is_lci,
        "is_saturated": rep.is_saturated,
        "indeg": rep.indeg,
        "indeg_sat": rep.indeg_sat,
        "d": rep.d,
        "pass": rep.hypotheses_pass,
        "failure": rep.failure_reason(),
    })
}

pub fn locus<F: Field>(field: &F, l: &OneDimLocus<F>) -> Value {
    let points: Vec<Value> = l
        .entries
        .iter()
        .map(|e| json!({ "point": e.point.format(field), "h": e.h.to_string(), "h_degree": e.h_degree() }))
        .collect();
    let residual = l
        .residual
        .as_ref()
        .map(|r| r.basis().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    json!({
        "points": points,
        "total_degree": l.total_degree,
        "residual": residual,
        "complete": l.residual.is_none(),
    })
}

pub fn fiber<F: Field>(field: &F, r: &FiberReport<F>) -> Value {
    let kind = match &r.kind {
        FiberKind::Empty => json!({ "type": "empty" }),
        FiberKind::ZeroDimensional { degree } => json!({ "type": "zero_dimensional", "degree": degree }),
        FiberKind::OneDimensional { h, h_degree } => {
            json!({ "type": "one_dimensional", "h": h.to_string(), "h_degree": h_degree })
        }
    };
    json!({ "point": r.point.format(field), "kind": kind })
}

pub fn certificate(c: &BoundCertificate) -> Value {
    let (kind, s, nu) = match c.kind {
        BoundKind::Prop1 { s, nu } => ("prop1", Some(s), Some(nu)),
        BoundKind::TheoremD3 => ("theorem_d3", None, None),
        BoundKind::TheoremDGe4 => ("theorem_d_ge_4", None, None),
    };
    json!({
        "kind": kind,
        "s": s,
        "nu": nu,
        "value": c.value,
        "applicable": c.applicable(),
        "observed_sum": c.observed_sum,
        "satisfied": c.satisfied,
    })
}

pub fn nml(inv: &NmlInvariants) -> Value {
    json!({
        "route": match inv.route { NmlRoute::ClosedForm => "closed_form", NmlRoute::Direct => "direct" },
        "n": inv.n,
        "m": inv.m,
        "l": inv.l,
        "n_minus_m_plus_l": inv.n - inv.m + inv.l,
    })
}

pub fn prop17(p: &Prop17) -> Value {
    json!({ "s": p.s, "lhs": p.lhs, "rhs": p.rhs, "holds": p.holds() })
}

pub fn liaison(l: &LiaisonReport) -> Value {
    let ids: Vec<Value> = l.identities.iter().map(|(name, ok)| json!({ "identity": name, "holds": ok })).collect();
    json!({
        "deg_p": l.deg_p,
        "deg_q": l.deg_q,
        "hilbert": l.hilbert,
        "identities": ids,
        "attempts": l.attempts,
    })
}
