//! Hilbert functions, degrees of zero-dimensional schemes and the derived
//! counts `n`, `m`, `l`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::{binomial, dim_forms, monomials_of_degree, Monomial};

/// `dim_k (R/I)_μ` by counting standard monomials in the X-block.
pub fn hilbert_function<F: Field>(ideal: &Ideal<F>, mu: i64) -> u64 {
    if mu < 0 {
        return 0;
    }
    let lts = ideal.leading_monomials();
    count_standard(&lts, ideal.ring().ctx.x_block(), mu as u32)
}

fn count_standard(lts: &[Monomial], vars: std::ops::Range<usize>, mu: u32) -> u64 {
    monomials_of_degree(vars, mu)
        .iter()
        .filter(|m| !lts.iter().any(|l| l.divides(m)))
        .count() as u64
}

/// `dim_k I_μ`.
pub fn ideal_dimension_in_degree<F: Field>(ideal: &Ideal<F>, mu: i64) -> u64 {
    dim_forms(mu) as u64 - hilbert_function(ideal, mu)
}

/// Degree from which the Hilbert function of `R/I` agrees with its polynomial.
///
/// Inclusion-exclusion over the leading-term generators writes the Hilbert
/// function as a signed sum of `C(μ - deg lcm + 2, 2)`, each polynomial in `μ`
/// once `μ ≥ deg lcm - 2`; every lcm divides the product of the per-variable
/// maximal exponents.
pub fn stabilization_degree<F: Field>(ideal: &Ideal<F>) -> u32 {
    let lts = ideal.leading_monomials();
    let total: u32 = ideal
        .ring()
        .ctx
        .x_block()
        .map(|v| lts.iter().map(|m| m.exp(v) as u32).max().unwrap_or(0))
        .sum();
    total.saturating_sub(2)
}

/// Eventual constant value of `HF_{R/I}`, the degree of the scheme `Proj(R/I)`.
pub fn hilbert_polynomial_constant<F: Field>(ideal: &Ideal<F>) -> Result<u64> {
    let dim = ideal.dimension();
    if dim > 1 {
        return Err(Error::NotZeroDimensional(format!("Krull dimension {}", dim)));
    }
    if dim <= 0 {
        return Ok(0);
    }
    let mu = stabilization_degree(ideal) as i64;
    let value = hilbert_function(ideal, mu);
    debug_assert_eq!(value, hilbert_function(ideal, mu + 1));
    Ok(value)
}

/// Smallest degree carrying a nonzero element; `None` stands for +∞.
pub fn initial_degree<F: Field>(ideal: &Ideal<F>) -> Option<u32> {
    ideal.basis().iter().filter_map(|g| g.total_degree()).min()
}

/// `dim_k H^1_m(R/I)_μ = HP - HF(μ)` for a saturated ideal with zero-dimensional `Proj`.
pub fn deficiency<F: Field>(saturated: &Ideal<F>, mu: i64) -> Result<u64> {
    let hp = hilbert_polynomial_constant(saturated)?;
    if !saturated.is_saturated() {
        return Err(Error::Hypotheses("deficiency needs a saturated ideal".into()));
    }
    let hf = hilbert_function(saturated, mu);
    hp.checked_sub(hf)
        .ok_or_else(|| Error::Hypotheses(format!("Hilbert function {} exceeds degree {} at {}", hf, hp, mu)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimsMode {
    Quotient,
    Ideal,
}

/// Table of graded dimensions for `μ = 0..=upto`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims {
    pub mode: DimsMode,
    pub table: BTreeMap<u32, u64>,
    /// First degree from which the quotient's Hilbert function is known to be constant.
    pub stabilization: Option<u32>,
}

pub fn graded_dims<F: Field>(ideal: &Ideal<F>, upto: u32, mode: DimsMode) -> GradedDims {
    let lts = ideal.leading_monomials();
    let xb = ideal.ring().ctx.x_block();
    let table = (0..=upto)
        .map(|mu| {
            let q = count_standard(&lts, xb.clone(), mu);
            let v = match mode {
                DimsMode::Quotient => q,
                DimsMode::Ideal => dim_forms(mu as i64) as u64 - q,
            };
            (mu, v)
        })
        .collect();
    let stabilization = (ideal.dimension() == 1).then(|| stabilization_degree(ideal));
    GradedDims { mode, table, stabilization }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NmlRoute {
    ClosedForm,
    Direct,
}

/// The counts `n`, `m`, `l` attached to a parameterization of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NmlInvariants {
    pub n: i64,
    pub m: i64,
    pub l: i64,
    pub deg_p: u64,
    pub d: u32,
    pub route: NmlRoute,
}

/// `n`, `m`, `l` for the ideal `I` of the forms. The closed route uses
/// `n = degP - C(d+1,2)`, `m = degP - d`, `l = C(d,2)`; the direct route reads
/// `n` off `HF_{R/I^sat}(d-1)`, `m` off `dim (Z_1)_{2d-2} = 4 dim R_{d-2} - dim I_{2d-2}`
/// and `l` off `dim R_{d-2}`.
pub fn nml_invariants<F: Field>(ideal: &Ideal<F>, d: u32, route: NmlRoute) -> Result<NmlInvariants> {
    let sat = ideal.saturation();
    let deg_p = hilbert_polynomial_constant(&sat)?;
    if deg_p == 0 {
        return Err(Error::Hypotheses("empty base locus".into()));
    }
    if initial_degree(ideal) != Some(d) || initial_degree(&sat) != Some(d) {
        return Err(Error::Hypotheses("initial degree of I or I^sat differs from d".into()));
    }
    let di = d as i64;
    let degp = deg_p as i64;
    let (n, m, l) = match route {
        NmlRoute::ClosedForm => (degp - binomial(di + 1, 2), degp - di, binomial(di, 2)),
        NmlRoute::Direct => {
            let n = degp - hilbert_function(&sat, di - 1) as i64;
            let m = 4 * dim_forms(di - 2) - ideal_dimension_in_degree(ideal, 2 * di - 2) as i64;
            (n, m, dim_forms(di - 2))
        }
    };
    Ok(NmlInvariants { n, m, l, deg_p, d, route })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::VariableContext;
    use crate::poly::{PolyRing, Polynomial};

    #[test]
    fn zero_ideal_counts_all_monomials() {
        let r = PolyRing::new(Rationals, VariableContext::x_only());
        let z = Ideal::zero(&r);
        assert_eq!(hilbert_function(&z, 5), 21);
        assert_eq!(initial_degree(&z), None);
        assert_eq!(initial_degree(&Ideal::unit(&r)), Some(0));
        assert!(hilbert_polynomial_constant(&z).is_err());
    }

    #[test]
    fn complete_intersection_of_two_lines_and_conic() {
        let r = PolyRing::new(Rationals, VariableContext::x_only());
        let x: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        // (X1 X2, X1^2 + X2^2 - X3^2) is a complete intersection of degree 4
        let i = Ideal::new(&r, vec![&x[0] * &x[1], &(&x[0].pow(2) + &x[1].pow(2)) - &x[2].pow(2)]).unwrap();
        assert_eq!(hilbert_polynomial_constant(&i).unwrap(), 4);
        let dims = graded_dims(&i, 4, DimsMode::Quotient);
        assert_eq!(dims.table.values().copied().collect::<Vec<_>>(), vec![1, 3, 4, 4, 4]);
        assert_eq!(deficiency(&i, 1).unwrap(), 1);
        assert_eq!(deficiency(&i, 3).unwrap(), 0);
    }
}
