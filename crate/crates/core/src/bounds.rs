//! Bound certificates for `Σ deg h_p` and the degree identities behind them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fibers::{one_dim_locus, sum_fiber_degrees, Hypotheses, OneDimLocus};
use crate::field::Field;
use crate::hilbert::{hilbert_function, hilbert_polynomial_constant, ideal_dimension_in_degree, initial_degree};
use crate::ideal::Ideal;
use crate::monomial::binomial;
use crate::param::{BaseLocusReport, Parameterization};
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// `ν = indeg((I^s)^sat) < s d`.
    Prop1 { s: u32, nu: u32 },
    TheoremD3,
    TheoremDGe4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    pub value: u32,
    pub hypotheses: BaseLocusReport,
    pub observed_sum: Option<u32>,
    pub satisfied: Option<bool>,
}

impl BoundCertificate {
    /// Whether the bound may be applied to this instance.
    pub fn applicable(&self) -> bool {
        self.hypotheses.hypotheses_pass
    }
}

/// `4` for cubics, `⌊d/2⌋ d - 1` from degree 4 on.
pub fn theorem_bound(d: u32) -> Result<u32> {
    match d {
        0..=2 => Err(Error::Invalid(format!("the bound needs d >= 3, got {}", d))),
        3 => Ok(4),
        _ => Ok((d / 2) * d - 1),
    }
}

/// Smallest `s ≤ s_max` with `indeg((I^s)^sat) < s d`.
///
/// Only finiteness and local complete intersection are required here; the
/// initial-degree conditions of the theorems play no role in this certificate.
pub fn prop1_certificate<F: Field>(param: &Parameterization<F>, s_max: u32) -> Result<Option<BoundCertificate>> {
    let rep = param.base_locus();
    if !rep.is_finite || rep.is_empty || rep.is_lci != Some(true) {
        return Err(Error::Hypotheses(rep.failure_reason().unwrap_or_default()));
    }
    let d = param.degree();
    for s in 1..=s_max {
        let sat = if s == 1 {
            param.saturation().clone()
        } else {
            param.ideal().power(s)?.saturation()
        };
        let Some(nu) = initial_degree(&sat) else { continue };
        if nu < s * d {
            return Ok(Some(BoundCertificate {
                kind: BoundKind::Prop1 { s, nu },
                value: nu,
                hypotheses: rep.clone(),
                observed_sum: None,
                satisfied: None,
            }));
        }
    }
    Ok(None)
}

/// The theorem certificate together with the locus it was checked against.
#[derive(Clone, Debug)]
pub struct TheoremCheck<F: Field> {
    pub certificate: BoundCertificate,
    pub locus: std::result::Result<OneDimLocus<F>, String>,
}

/// Computes `Y` (under an override when the hypotheses fail) and compares
/// `Σ deg h_p` with the theorem bound.
pub fn verify_main_theorem<F: Field>(param: &Parameterization<F>, seed: u64) -> TheoremCheck<F> {
    let rep = param.base_locus().clone();
    let d = param.degree();
    let kind = if d == 3 { BoundKind::TheoremD3 } else { BoundKind::TheoremDGe4 };
    let value = theorem_bound(d).unwrap_or(0);
    let locus = if d < 3 {
        Err(format!("no bound for d = {}", d))
    } else {
        one_dim_locus(param, seed, Hypotheses::Override).map_err(|e| e.to_string())
    };
    let observed_sum = locus.as_ref().ok().map(|l| sum_fiber_degrees(l).0);
    // a residual makes the sum a lower bound, which can still refute the bound
    let satisfied = match (&locus, observed_sum) {
        (Ok(l), Some(s)) if rep.hypotheses_pass && d >= 3 => {
            if s > value {
                Some(false)
            } else if l.residual.is_none() {
                Some(true)
            } else {
                None
            }
        }
        _ => None,
    };
    TheoremCheck {
        certificate: BoundCertificate { kind, value, hypotheses: rep, observed_sum, satisfied },
        locus,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prop17 {
    pub s: u32,
    /// `HP - HF` of `R/(I^s)^sat` in degree `sd - 1`.
    pub lhs: i64,
    /// `s(s+1)/2 degP - sd(sd+1)/2 + dim ((I^s)^sat)_{sd-1}`.
    pub rhs: i64,
}

impl Prop17 {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.lhs >= 0
    }
}

pub fn prop17_check<F: Field>(param: &Parameterization<F>, s: u32) -> Result<Prop17> {
    let rep = param.base_locus();
    if !rep.hypotheses_pass {
        return Err(Error::Hypotheses(rep.failure_reason().unwrap_or_default()));
    }
    if s == 0 {
        return Err(Error::ZeroPower);
    }
    let deg_p = rep.deg_p.expect("finite base locus has a degree") as i64;
    let sat = if s == 1 {
        param.saturation().clone()
    } else {
        param.ideal().power(s)?.saturation()
    };
    let mu = (s * param.degree()) as i64 - 1;
    let lhs = hilbert_polynomial_constant(&sat)? as i64 - hilbert_function(&sat, mu) as i64;
    let si = s as i64;
    let rhs = binomial(si + 1, 2) * deg_p - binomial(mu + 2, 2) + ideal_dimension_in_degree(&sat, mu) as i64;
    Ok(Prop17 { s, lhs, rhs })
}

#[derive(Clone, Debug)]
pub struct LiaisonReport {
    pub deg_p: u64,
    pub deg_q: u64,
    /// `HF_{R/J}(μ)` for `μ = 0..=d+1`.
    pub hilbert: Vec<u64>,
    /// Named identities and whether each held.
    pub identities: Vec<(String, bool)>,
    pub attempts: usize,
}

impl LiaisonReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|(_, ok)| *ok)
    }
}

pub const LIAISON_ATTEMPTS: usize = 8;

/// Links the base locus through a complete intersection of two random
/// combinations of the forms and checks the resulting degree identities.
pub fn liaison_check<F: Field>(param: &Parameterization<F>, seed: u64) -> Result<LiaisonReport> {
    let rep = param.base_locus();
    if !rep.hypotheses_pass {
        return Err(Error::Hypotheses(rep.failure_reason().unwrap_or_default()));
    }
    let field = param.field();
    let ring = param.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=LIAISON_ATTEMPTS {
        let mut combo = || {
            param.forms().iter().fold(Polynomial::zero(ring), |acc, f| &acc + &f.scale(&field.random_elem(&mut rng)))
        };
        let (g1, g2) = (combo(), combo());
        if g1.is_zero() || g2.is_zero() {
            continue;
        }
        let b = Ideal::new(ring, vec![g1, g2])?;
        if b.dimension() != 1 {
            continue;
        }
        let j = b.quotient(param.saturation())?;
        let d = param.degree();
        let deg_p = rep.deg_p.expect("finite base locus has a degree");
        let deg_q = hilbert_polynomial_constant(&j)?;
        let hilbert: Vec<u64> = (0..=d as i64 + 1).map(|mu| hilbert_function(&j, mu)).collect();
        let di = d as i64;
        let hf = |mu: i64| hilbert_function(&j, mu);
        let mut identities = vec![
            ("degP + degQ = d^2".to_string(), deg_p + deg_q == (d * d) as u64),
            (
                "HF_{R/J}(μ) = degQ for d-2 <= μ <= d+2".to_string(),
                (di - 2..=di + 2).all(|mu| hf(mu) == deg_q),
            ),
            ("HF_{R/J}(1) = 3".to_string(), hf(1) == 3),
            ("degQ >= 2d - 3".to_string(), deg_q + 3 >= 2 * d as u64),
        ];
        if d >= 4 {
            identities.push((
                "HF_{R/J}(d-2) - HF_{R/J}(d-3) >= 2".to_string(),
                hf(di - 2) >= hf(di - 3) + 2,
            ));
        }
        return Ok(LiaisonReport { deg_p, deg_q, hilbert, identities, attempts: attempt });
    }
    Err(Error::Randomness(format!(
        "no regular sequence among {} random pairs of combinations",
        LIAISON_ATTEMPTS
    )))
}
