//! Fibers of the graph projection to P^3: classification at a point, the
//! symbolic search for the finite set `Y` of points with curve fibers, and a
//! brute-force scanner over finite fields.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{ExtensionField, Field, PrimeField};
use crate::gcd::multivariate_gcd;
use crate::groebner::ideal_basis;
use crate::hilbert::hilbert_polynomial_constant;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder, VariableContext};
use crate::param::Parameterization;
use crate::point::ProjectivePoint;
use crate::poly::{PolyRing, Polynomial, Ring};
use crate::syzygy::SyzygyMatrix;
use crate::univariate;

/// Whether operations that assume the standing hypotheses may run anyway.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypotheses {
    Enforce,
    /// Diagnostics only: results need not describe the graph's fibers.
    Override,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberKind<F: Field> {
    Empty,
    ZeroDimensional { degree: u64 },
    OneDimensional { h: Polynomial<F>, h_degree: u32 },
}

#[derive(Clone, Debug)]
pub struct FiberReport<F: Field> {
    pub point: ProjectivePoint<F>,
    pub kind: FiberKind<F>,
}

#[derive(Clone, Debug)]
pub struct LocusEntry<F: Field> {
    pub point: ProjectivePoint<F>,
    /// Monic generator of the curve component.
    pub h: Polynomial<F>,
}

impl<F: Field> LocusEntry<F> {
    pub fn h_degree(&self) -> u32 {
        self.h.total_degree().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct OneDimLocus<F: Field> {
    /// Sorted by point.
    pub entries: Vec<LocusEntry<F>>,
    /// Candidates in `L0..L3` whose points are not rational over the ground field.
    pub residual: Option<Ideal<F>>,
    pub total_degree: u32,
    pub seed: Option<u64>,
}

impl<F: Field> OneDimLocus<F> {
    fn from_entries(mut entries: Vec<LocusEntry<F>>, residual: Option<Ideal<F>>, seed: Option<u64>) -> Self {
        entries.sort_by(|a, b| a.point.cmp(&b.point));
        entries.dedup_by(|a, b| a.point == b.point);
        let total_degree = entries.iter().map(|e| e.h_degree()).sum();
        OneDimLocus { entries, residual, total_degree, seed }
    }

    pub fn points(&self) -> Vec<ProjectivePoint<F>> {
        self.entries.iter().map(|e| e.point.clone()).collect()
    }
}

/// `Σ deg h_p` together with a flag telling whether it is only a lower bound
/// (unresolved residual candidates).
pub fn sum_fiber_degrees<F: Field>(locus: &OneDimLocus<F>) -> (u32, bool) {
    (locus.entries.iter().map(|e| e.h_degree()).sum(), locus.residual.is_some())
}

/// `ℓ_j = Σ_i M_ij p_i`, one form per column.
pub fn specialize_syzygies<F: Field>(m: &SyzygyMatrix<F>, p: &ProjectivePoint<F>) -> Vec<Polynomial<F>> {
    m.columns()
        .iter()
        .map(|col| {
            let mut acc = Polynomial::zero(m.ring());
            for (a, c) in col.iter().zip(p.coords()) {
                acc = &acc + &a.scale(c);
            }
            acc
        })
        .collect()
}

fn require<F: Field>(param: &Parameterization<F>, policy: Hypotheses) -> Result<()> {
    let rep = param.base_locus();
    if policy == Hypotheses::Enforce && !rep.hypotheses_pass {
        return Err(Error::Hypotheses(rep.failure_reason().unwrap_or_default()));
    }
    Ok(())
}

pub fn fiber_at_point<F: Field>(
    param: &Parameterization<F>,
    p: &ProjectivePoint<F>,
    policy: Hypotheses,
) -> Result<FiberReport<F>> {
    require(param, policy)?;
    let ls = specialize_syzygies(param.syzygies(), p);
    let g = multivariate_gcd(&ls).unwrap_or_else(|| Polynomial::zero(param.ring()));
    if g.is_zero() {
        return Err(Error::Invalid(format!(
            "all specialized syzygies vanish at {}",
            p.format(param.field())
        )));
    }
    let kind = if !g.is_constant() {
        let h_degree = g.total_degree().unwrap_or(0);
        FiberKind::OneDimensional { h: g, h_degree }
    } else {
        let sat = Ideal::new(param.ring(), ls)?.saturation();
        if sat.is_unit() {
            FiberKind::Empty
        } else {
            FiberKind::ZeroDimensional { degree: hilbert_polynomial_constant(&sat)? }
        }
    };
    Ok(FiberReport { point: p.clone(), kind })
}

/// `h_p` when the fiber over `p` is a curve.
fn curve_component<F: Field>(m: &SyzygyMatrix<F>, p: &ProjectivePoint<F>) -> Option<Polynomial<F>> {
    let g = multivariate_gcd(&specialize_syzygies(m, p))?;
    (!g.is_zero() && !g.is_constant()).then_some(g)
}

/// The ring `L0..L3` in which candidate ideals live.
pub fn lambda_ring<F: Field>(field: &F) -> Ring<F> {
    PolyRing::new(field.clone(), VariableContext::custom(&["L0", "L1", "L2", "L3"]))
}

const SEARCH_ATTEMPTS: usize = 24;
const LINES: usize = 3;

fn derived_seed(seed: u64) -> u64 {
    // splitmix64 step
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Enumerates `Y` by intersecting images of random lines.
///
/// For a line `L` through points `A`, `B` of P^2, the points `sA + B` give an
/// affine chart; eliminating `s` from `ℓ_j(sA + B; λ)` yields an ideal whose zero
/// set is the image of `L` together with every point of `Y` (the curve `h_p = 0`
/// meets `L`). The point `A` contributes the linear forms `ℓ_j(A; λ)`. A point of
/// `Y` therefore lies in the candidate set of every line, while a point with a
/// finite fiber survives three generic lines only if it is a base-point artifact.
/// Each candidate is verified by the gcd test and the whole search is repeated
/// with a derived seed.
pub fn one_dim_locus<F: Field>(param: &Parameterization<F>, seed: u64, policy: Hypotheses) -> Result<OneDimLocus<F>> {
    require(param, policy)?;
    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed ^ 0x4a61_636f));
    if param.generic_jacobian_rank(&mut rng, 16) < 3 {
        return Err(Error::NotZeroDimensional(
            "the image is not a surface, so every point of it has a curve fiber".into(),
        ));
    }
    let first = search(param, seed)?;
    let second = search(param, derived_seed(seed))?;
    let pts1: Vec<_> = first.0.iter().map(|e| &e.point).collect();
    let pts2: Vec<_> = second.0.iter().map(|e| &e.point).collect();
    if pts1 != pts2 {
        let f = param.field();
        let show = |v: &[&ProjectivePoint<F>]| v.iter().map(|p| p.format(f)).collect::<Vec<_>>().join(", ");
        return Err(Error::Randomness(format!(
            "two searches disagree: [{}] vs [{}]",
            show(&pts1),
            show(&pts2)
        )));
    }
    // a non-rational point of Y appears in both residuals
    let residual = match (first.1, second.1) {
        (Some(a), Some(b)) => {
            let r = a.sum(&b)?.saturation();
            (!r.is_unit()).then_some(r)
        }
        _ => None,
    };
    Ok(OneDimLocus::from_entries(first.0, residual, Some(seed)))
}

type SearchResult<F> = (Vec<LocusEntry<F>>, Option<Ideal<F>>);

fn search<F: Field>(param: &Parameterization<F>, seed: u64) -> Result<SearchResult<F>> {
    let field = param.field();
    let lring = lambda_ring(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = None;
    for _ in 0..SEARCH_ATTEMPTS {
        let lines: Vec<_> = (0..LINES).map(|_| random_line(field, &mut rng)).collect();
        let charts: Vec<[Ideal<F>; 2]> = lines.iter().map(|(a, b)| line_ideals(param, &lring, a, b)).collect::<Result<_>>()?;
        match solve_combinations(&lring, &charts) {
            Ok((points, residuals)) => {
                let m = param.syzygies();
                let entries = points
                    .into_iter()
                    .filter_map(|p| curve_component(m, &p).map(|h| LocusEntry { point: p, h }))
                    .collect::<Vec<_>>();
                let residual = if residuals.is_empty() {
                    None
                } else {
                    let mut acc = Ideal::unit(&lring);
                    for r in residuals {
                        acc = acc.intersect(&r)?;
                    }
                    Some(acc)
                };
                let locus = OneDimLocus::from_entries(entries, residual, None);
                return Ok((locus.entries, locus.residual));
            }
            Err(e @ Error::NotZeroDimensional(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Randomness(format!(
        "no admissible set of lines after {} attempts ({})",
        SEARCH_ATTEMPTS,
        last_err.map(|e| e.to_string()).unwrap_or_default()
    )))
}

fn random_line<F: Field, R: rand::Rng>(field: &F, rng: &mut R) -> ([F::Elem; 3], [F::Elem; 3]) {
    loop {
        let a: [F::Elem; 3] = std::array::from_fn(|_| field.random_elem(rng));
        let b: [F::Elem; 3] = std::array::from_fn(|_| field.random_elem(rng));
        // independent iff some 2x2 minor is nonzero
        let independent = (0..3).any(|i| {
            let j = (i + 1) % 3;
            !field.is_zero(&field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i])))
        });
        if independent {
            return (a, b);
        }
    }
}

/// Candidate ideals of the two charts of the line through `a` and `b`.
fn line_ideals<F: Field>(param: &Parameterization<F>, lring: &Ring<F>, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> Result<[Ideal<F>; 2]> {
    let field = param.field();
    let sring = PolyRing::new(field.clone(), VariableContext::custom(&["s", "L0", "L1", "L2", "L3"]));
    let s = Polynomial::var(&sring, 0);
    let images: Vec<Polynomial<F>> = (0..3)
        .map(|k| &s.scale(&a[k]) + &Polynomial::constant(&sring, b[k].clone()))
        .collect();
    let m = param.syzygies();
    let mut on_line = Vec::new();
    let mut at_a = Vec::new();
    for col in m.columns() {
        let mut acc = Polynomial::zero(&sring);
        let mut lin = Polynomial::zero(lring);
        for (i, entry) in col.iter().enumerate() {
            acc = &acc + &(&entry.substitute(&sring, &images) * &Polynomial::var(&sring, 1 + i));
            lin = &lin + &Polynomial::var(lring, i).scale(&entry.evaluate(a));
        }
        on_line.push(acc);
        at_a.push(lin);
    }
    let gb = ideal_basis(&sring, &on_line, MonomialOrder::eliminating([0]));
    let rename = [None, Some(0), Some(1), Some(2), Some(3)];
    let eliminated = gb
        .iter()
        .filter(|g| g.support() & 1 == 0)
        .map(|g| g.rename(lring, &rename))
        .collect();
    Ok([Ideal::new(lring, eliminated)?, Ideal::new(lring, at_a)?])
}

/// Points common to one chart of every line, over all chart choices.
fn solve_combinations<F: Field>(lring: &Ring<F>, charts: &[[Ideal<F>; 2]]) -> Result<(Vec<ProjectivePoint<F>>, Vec<Ideal<F>>)> {
    let mut points = BTreeMap::new();
    let mut residuals = Vec::new();
    for mask in 0..(1usize << charts.len()) {
        let mut acc = Ideal::zero(lring);
        for (k, pair) in charts.iter().enumerate() {
            acc = acc.sum(&pair[(mask >> k) & 1])?;
        }
        if acc.is_unit() {
            continue;
        }
        let dim = acc.dimension();
        if dim > 1 {
            return Err(Error::NotZeroDimensional(format!("candidate set of dimension {}", dim - 1)));
        }
        let (pts, res) = projective_points(&acc)?;
        for p in pts {
            points.insert(p.clone(), ());
        }
        residuals.extend(res);
    }
    Ok((points.into_keys().collect(), residuals))
}

/// Rational points of a homogeneous ideal in `L0..L3` with finitely many
/// projective zeros, plus ideals cutting out the remaining (non-rational) zeros.
pub fn projective_points<F: Field>(ideal: &Ideal<F>) -> Result<(Vec<ProjectivePoint<F>>, Vec<Ideal<F>>)> {
    let ring = ideal.ring();
    let field = &ring.field;
    let n = ring.nvars();
    let mut points = Vec::new();
    let mut residuals = Vec::new();
    let gens = ideal.basis();
    for c in 0..n {
        let images: Vec<Polynomial<F>> = (0..n)
            .map(|k| match k.cmp(&c) {
                std::cmp::Ordering::Less => Polynomial::zero(ring),
                std::cmp::Ordering::Equal => Polynomial::one(ring),
                std::cmp::Ordering::Greater => Polynomial::var(ring, k),
            })
            .collect();
        let affine: Vec<Polynomial<F>> = gens.iter().map(|g| g.substitute(ring, &images)).filter(|g| !g.is_zero()).collect();
        let free: Vec<usize> = (c + 1..n).collect();
        let mut chart = Chart { ring, c, assign: Vec::new(), points: Vec::new(), residuals: Vec::new() };
        chart.solve(affine, &free)?;
        for vals in chart.points {
            let mut coords: Vec<F::Elem> = vec![field.zero(); n];
            coords[c] = field.one();
            for (v, a) in vals {
                coords[v] = a;
            }
            let arr: [F::Elem; 4] = coords.try_into().map_err(|_| Error::Invalid("point solver needs four variables".into()))?;
            points.push(ProjectivePoint::new(field, arr)?);
        }
        residuals.extend(chart.residuals);
    }
    Ok((points, residuals))
}

struct Chart<'a, F: Field> {
    ring: &'a Ring<F>,
    /// The variable set to 1; earlier ones are 0.
    c: usize,
    assign: Vec<(usize, F::Elem)>,
    points: Vec<Vec<(usize, F::Elem)>>,
    residuals: Vec<Ideal<F>>,
}

impl<F: Field> Chart<'_, F> {
    fn solve(&mut self, polys: Vec<Polynomial<F>>, free: &[usize]) -> Result<()> {
        let field = self.ring.field.clone();
        let order = if free.len() > 1 {
            MonomialOrder::eliminating(free[..free.len() - 1].iter().copied())
        } else {
            MonomialOrder::Grevlex
        };
        let gb = ideal_basis(self.ring, &polys, order);
        if gb.iter().any(|g| g.is_constant()) {
            return Ok(());
        }
        let Some((&v, rest)) = free.split_last() else {
            self.points.push(self.assign.clone());
            return Ok(());
        };
        let Some(univ) = gb.iter().find(|g| g.support() & !(1u16 << v) == 0) else {
            return Err(Error::NotZeroDimensional("candidate chart has a curve".into()));
        };
        let coeffs: Vec<F::Elem> = univ.coefficients_in(v).iter().map(|c| c.coeff(&Monomial::one())).collect();
        let sqf = univariate::squarefree_part(&field, &coeffs);
        let roots = field.roots(&sqf);
        for a in &roots {
            let images: Vec<Polynomial<F>> = (0..self.ring.nvars())
                .map(|k| if k == v { Polynomial::constant(self.ring, a.clone()) } else { Polynomial::var(self.ring, k) })
                .collect();
            let next: Vec<Polynomial<F>> = gb.iter().map(|g| g.substitute(self.ring, &images)).filter(|g| !g.is_zero()).collect();
            self.assign.push((v, a.clone()));
            self.solve(next, rest)?;
            self.assign.pop();
        }
        if univariate::degree(&field, &sqf).unwrap_or(0) > roots.len() {
            let mut cofactor = sqf.clone();
            for a in &roots {
                let lin = vec![field.neg(a), field.one()];
                cofactor = univariate::div_rem(&field, &cofactor, &lin).0;
            }
            let univ_rest = Polynomial::from_terms(
                self.ring,
                cofactor.iter().enumerate().map(|(k, c)| (Monomial::var(v, k as u16), c.clone())).collect(),
            );
            let mut affine: Vec<Polynomial<F>> = gb.to_vec();
            affine.push(univ_rest);
            self.residuals.push(self.closure(&affine)?);
        }
        Ok(())
    }

    /// Projective closure of the affine zeros of `affine` under the current assignment.
    fn closure(&self, affine: &[Polynomial<F>]) -> Result<Ideal<F>> {
        let ring = self.ring;
        let lc = Polynomial::var(ring, self.c);
        let mut gens: Vec<Polynomial<F>> = (0..self.c).map(|k| Polynomial::var(ring, k)).collect();
        for (v, a) in &self.assign {
            gens.push(&Polynomial::var(ring, *v) - &lc.scale(a));
        }
        for p in affine {
            let d = p.total_degree().unwrap_or(0);
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| (m.with_exp(self.c, (d - m.degree()) as u16), c.clone()))
                .collect();
            gens.push(Polynomial::from_terms(ring, terms));
        }
        Ideal::new(ring, gens)?.saturate(&Ideal::new(ring, vec![lc])?)
    }
}

/// Upper limit on `|P^3(F_{q^e})|` for the scanner.
pub const MAX_SCAN_POINTS: u64 = 20_000_000;

/// Classifies every point of `P^3(F_{q^e})` by the gcd test.
///
/// A cheap necessary condition runs first: restricted to a fixed line, the
/// specialized syzygies of a point of `Y` share the restriction of `h_p` as a
/// common factor (or all vanish when the line lies on `h_p = 0`).
pub fn exhaustive_scan(param: &Parameterization<PrimeField>, e: u32) -> Result<OneDimLocus<ExtensionField>> {
    let p = param.field().modulus();
    let ext = ExtensionField::new(p as u64, e)?;
    let q = ext.size().unwrap();
    let total = q * q * q + q * q + q + 1;
    if total > MAX_SCAN_POINTS {
        return Err(Error::Invalid(format!("P^3 over {} has {} points, above the scan limit", ext.name(), total)));
    }
    let xring = PolyRing::new(ext.clone(), VariableContext::x_only());
    let columns: Vec<[Polynomial<ExtensionField>; 4]> = param
        .syzygies()
        .columns()
        .iter()
        .map(|col| col.clone().map(|a| a.map_coeffs(&xring, |c| ext.embed(*c))))
        .collect();
    let m = SyzygyMatrix::new(&xring, columns)?;

    // line X = s*A + B with A = (0,1,0), B = (1,0,1)
    let zero = ext.zero();
    let one = ext.one();
    let a = [zero, one, zero];
    let sring = PolyRing::new(ext.clone(), VariableContext::custom(&["s"]));
    let s = Polynomial::var(&sring, 0);
    let images = vec![Polynomial::one(&sring), s.clone(), Polynomial::one(&sring)];
    let restricted: Vec<[(Vec<u32>, u32); 4]> = m
        .columns()
        .iter()
        .map(|col| {
            std::array::from_fn(|i| {
                let u = col[i].substitute(&sring, &images);
                let coeffs = u.coefficients_in(0).iter().map(|c| c.coeff(&Monomial::one())).collect();
                (coeffs, col[i].evaluate(&a))
            })
        })
        .collect();

    let q3 = q * q * q;
    let entries: Vec<LocusEntry<ExtensionField>> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let coords = decode_point(idx, q, q3);
            if !line_test(&ext, &restricted, &coords) {
                return None;
            }
            let pt = ProjectivePoint::new(&ext, coords).ok()?;
            curve_component(&m, &pt).map(|h| LocusEntry { point: pt, h })
        })
        .collect();
    Ok(OneDimLocus::from_entries(entries, None, None))
}

/// Point number `idx` in block order: pivot 0 first, free coordinates in
/// element order.
fn decode_point(idx: u64, q: u64, q3: u64) -> [u32; 4] {
    let mut out = [0u32; 4];
    let mut block = q3;
    let mut rest = idx;
    for pivot in 0..4 {
        if rest < block {
            out[pivot] = 1;
            let mut r = rest;
            for k in (pivot + 1..4).rev() {
                out[k] = (r % q) as u32;
                r /= q;
            }
            return out;
        }
        rest -= block;
        block /= q;
    }
    unreachable!("index beyond P^3")
}

fn line_test(ext: &ExtensionField, restricted: &[[(Vec<u32>, u32); 4]], p: &[u32; 4]) -> bool {
    let mut at_a_zero = true;
    let mut g: Vec<u32> = Vec::new();
    for col in restricted {
        let mut u: Vec<u32> = Vec::new();
        let mut w = ext.zero();
        for (i, (coeffs, val)) in col.iter().enumerate() {
            if ext.is_zero(&p[i]) {
                continue;
            }
            if u.len() < coeffs.len() {
                u.resize(coeffs.len(), ext.zero());
            }
            for (k, c) in coeffs.iter().enumerate() {
                u[k] = ext.add(&u[k], &ext.mul(c, &p[i]));
            }
            w = ext.add(&w, &ext.mul(val, &p[i]));
        }
        at_a_zero &= ext.is_zero(&w);
        g = univariate::gcd(ext, &g, &u);
    }
    at_a_zero || univariate::degree(ext, &g).is_none_or(|d| d > 0)
}
