//! A parameterization `P^2 -> P^3` by four forms, with lazily computed
//! ideal-theoretic data and the standing-hypothesis report.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert;
use crate::ideal::Ideal;
use crate::monomial::VariableContext;
use crate::poly::{PolyRing, Polynomial, Ring};
use crate::syzygy::{minimalize, minors_ideal, syzygy_generators, Echelon, SyzygyMatrix};

/// Outcome of the base-locus checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseLocusReport {
    pub is_finite: bool,
    /// `V(I)` is empty in `P^2`; reported but never passes.
    pub is_empty: bool,
    pub deg_p: Option<u64>,
    pub is_lci: Option<bool>,
    pub is_saturated: Option<bool>,
    pub indeg: Option<u32>,
    pub indeg_sat: Option<u32>,
    pub d: u32,
    pub hypotheses_pass: bool,
}

impl BaseLocusReport {
    /// One line naming the first failing hypothesis.
    pub fn failure_reason(&self) -> Option<String> {
        if self.hypotheses_pass {
            return None;
        }
        Some(if !self.is_finite {
            "base locus is not finite".to_string()
        } else if self.is_empty {
            "base locus is empty".to_string()
        } else if self.is_lci == Some(false) {
            "base locus is not locally a complete intersection".to_string()
        } else {
            format!(
                "initial degrees differ from d = {}: indeg(I) = {:?}, indeg(I^sat) = {:?}",
                self.d, self.indeg, self.indeg_sat
            )
        })
    }
}

pub struct Parameterization<F: Field> {
    ring: Ring<F>,
    forms: Vec<Polynomial<F>>,
    d: u32,
    ideal: Ideal<F>,
    saturation: OnceLock<Ideal<F>>,
    syzygies: OnceLock<SyzygyMatrix<F>>,
    report: OnceLock<BaseLocusReport>,
    mixed: OnceLock<(Ring<F>, Vec<Polynomial<F>>)>,
}

impl<F: Field> Clone for Parameterization<F> {
    fn clone(&self) -> Self {
        Parameterization {
            ring: self.ring.clone(),
            forms: self.forms.clone(),
            d: self.d,
            ideal: self.ideal.clone(),
            saturation: self.saturation.clone(),
            syzygies: self.syzygies.clone(),
            report: self.report.clone(),
            mixed: self.mixed.clone(),
        }
    }
}

impl<F: Field> std::fmt::Debug for Parameterization<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Parameterization").field("d", &self.d).field("forms", &self.forms).finish()
    }
}

impl<F: Field> Parameterization<F> {
    /// Four forms of one degree `d` in an X-only ring, not all zero.
    pub fn new(forms: Vec<Polynomial<F>>) -> Result<Self> {
        if forms.len() != 4 {
            return Err(Error::Invalid(format!("expected four forms, got {}", forms.len())));
        }
        let ring = forms[0].ring().clone();
        if ring.ctx.lambda_block().is_some() || ring.nvars() != 3 {
            return Err(Error::ContextMismatch);
        }
        if forms.iter().any(|f| !crate::poly::same_ring(f.ring(), &ring)) {
            return Err(Error::ContextMismatch);
        }
        if forms.iter().all(|f| f.is_zero()) {
            return Err(Error::AllZero);
        }
        let mut d = None;
        for (i, f) in forms.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let Some(e) = f.homogeneous_degree() else {
                return Err(Error::DegreeMismatch(format!("f{} is not homogeneous", i)));
            };
            match d {
                None => d = Some(e),
                Some(x) if x != e => {
                    return Err(Error::DegreeMismatch(format!("f{} has degree {} instead of {}", i, e, x)));
                }
                _ => {}
            }
        }
        let d = d.unwrap();
        let ideal = Ideal::new(&ring, forms.clone())?;
        Ok(Parameterization {
            ring,
            forms,
            d,
            ideal,
            saturation: OnceLock::new(),
            syzygies: OnceLock::new(),
            report: OnceLock::new(),
            mixed: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn forms(&self) -> &[Polynomial<F>] {
        &self.forms
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    /// `I^sat = I : m^∞`.
    pub fn saturation(&self) -> &Ideal<F> {
        self.saturation.get_or_init(|| self.ideal.saturation())
    }

    /// Minimal generators of the syzygy module in canonical column order.
    pub fn syzygies(&self) -> &SyzygyMatrix<F> {
        self.syzygies
            .get_or_init(|| minimalize(&syzygy_generators(&self.forms).expect("forms validated on construction")))
    }

    /// The mixed ring `X1..X3, L0..L3` and the forms `ℓ_j = Σ_i M_ij L_i`.
    pub fn syzygy_forms(&self) -> (&Ring<F>, &[Polynomial<F>]) {
        let (r, l) = self.mixed.get_or_init(|| {
            let names: Vec<&str> = self.ring.ctx.names().iter().map(|s| s.as_str()).collect();
            let mixed = PolyRing::new(self.ring.field.clone(), VariableContext::with_names(&names, &["L0", "L1", "L2", "L3"]));
            let embed: Vec<Option<usize>> = vec![Some(0), Some(1), Some(2)];
            let ls = self
                .syzygies()
                .columns()
                .iter()
                .map(|col| {
                    let mut acc = Polynomial::zero(&mixed);
                    for (i, a) in col.iter().enumerate() {
                        let lifted = a.rename(&mixed, &embed);
                        acc = &acc + &(&lifted * &Polynomial::var(&mixed, 3 + i));
                    }
                    acc
                })
                .collect();
            (mixed, ls)
        });
        (r, l)
    }

    /// Rank of the 4x3 Jacobian matrix of the forms at `x`.
    pub fn jacobian_rank(&self, x: &[F::Elem; 3]) -> usize {
        let f = self.field();
        let mut ech = Echelon::new(f.clone(), 3);
        for form in &self.forms {
            ech.insert((0..3).map(|v| form.derivative(v).evaluate(x)).collect());
        }
        ech.rank()
    }

    /// Largest Jacobian rank over a few random points; 3 means the image is a surface.
    pub fn generic_jacobian_rank<R: rand::Rng + ?Sized>(&self, rng: &mut R, trials: usize) -> usize {
        let f = self.field();
        (0..trials)
            .map(|_| self.jacobian_rank(&std::array::from_fn(|_| f.random_elem(rng))))
            .max()
            .unwrap_or(0)
    }

    /// Standing hypotheses: finite nonempty LCI base locus with `indeg(I^sat) = indeg(I) = d`.
    pub fn base_locus(&self) -> &BaseLocusReport {
        self.report.get_or_init(|| self.compute_report())
    }

    fn compute_report(&self) -> BaseLocusReport {
        let dim = self.ideal.dimension();
        let indeg = hilbert::initial_degree(&self.ideal);
        let mut rep = BaseLocusReport {
            is_finite: dim <= 1,
            is_empty: dim <= 0,
            deg_p: None,
            is_lci: None,
            is_saturated: None,
            indeg,
            indeg_sat: None,
            d: self.d,
            hypotheses_pass: false,
        };
        if !rep.is_finite {
            return rep;
        }
        let sat = self.saturation();
        rep.deg_p = hilbert::hilbert_polynomial_constant(sat).ok();
        rep.indeg_sat = hilbert::initial_degree(sat);
        rep.is_saturated = Some(sat.same_as(&self.ideal));
        if rep.is_empty {
            return rep;
        }
        rep.is_lci = Some(is_lci(&self.ideal, self.syzygies()));
        rep.hypotheses_pass = rep.is_lci == Some(true) && rep.indeg == Some(self.d) && rep.indeg_sat == Some(self.d);
        rep
    }
}

/// Fitting-ideal test: `I + I_2(M)` saturates to the unit ideal.
pub fn is_lci<F: Field>(ideal: &Ideal<F>, m: &SyzygyMatrix<F>) -> bool {
    let minors = if m.ncols() >= 2 {
        minors_ideal(m, 2).expect("size checked")
    } else {
        Ideal::zero(ideal.ring())
    };
    ideal.sum(&minors).expect("same ring").saturation().is_unit()
}

/// Runs the standing-hypothesis checks on `forms`.
pub fn check_base_locus<F: Field>(forms: Vec<Polynomial<F>>) -> Result<BaseLocusReport> {
    Ok(Parameterization::new(forms)?.base_locus().clone())
}
