//! Homogeneous ideals with cached reduced Gröbner bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ring, Polynomial, Ring};

pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial<F>>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl<F: Field> Ideal<F> {
    /// Ideal generated by homogeneous polynomials of `ring`; zero generators are dropped.
    pub fn new(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if !same_ring(g.ring(), ring) {
                return Err(Error::ContextMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::DegreeMismatch(format!("generator {} is not homogeneous", i)));
            }
        }
        Ok(Self::from_gens(ring, gens))
    }

    pub(crate) fn from_gens(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Self::from_gens(ring, Vec::new())
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Self::from_gens(ring, vec![Polynomial::one(ring)])
    }

    /// The irrelevant ideal `m` generated by the X-block variables.
    pub fn irrelevant(ring: &Ring<F>) -> Self {
        let gens = ring.ctx.x_block().map(|i| Polynomial::var(ring, i)).collect();
        Self::from_gens(ring, gens)
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    /// Reduced Gröbner basis under `order`, computed at most once per order
    /// in the common case; concurrent misses compute into locals and the
    /// first finished result is kept.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Arc<Vec<Polynomial<F>>> {
        if let Some(g) = self.cache.lock().unwrap().get(&order) {
            return g.clone();
        }
        let basis = Arc::new(groebner::ideal_basis(&self.ring, &self.gens, order));
        self.cache.lock().unwrap().entry(order).or_insert(basis).clone()
    }

    /// Grevlex reduced Gröbner basis.
    pub fn basis(&self) -> Arc<Vec<Polynomial<F>>> {
        self.groebner_basis(MonomialOrder::Grevlex)
    }

    pub fn normal_form(&self, f: &Polynomial<F>, order: MonomialOrder) -> Polynomial<F> {
        groebner::reduce(f, &self.groebner_basis(order), order)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f, MonomialOrder::Grevlex).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis().iter().any(|g| g.is_constant())
    }

    /// Equality as ideals (compares reduced grevlex bases).
    pub fn same_as(&self, other: &Ideal<F>) -> bool {
        *self.basis() == *other.basis()
    }

    /// Grevlex leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis().iter().filter_map(|g| g.leading_monomial()).collect()
    }

    fn check(&self, other: &Ideal<F>) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(Self::from_gens(&self.ring, g))
    }

    pub fn with_generators(&self, extra: &[Polynomial<F>]) -> Result<Ideal<F>> {
        self.sum(&Ideal::new(&self.ring, extra.to_vec())?)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ok(Self::from_gens(&self.ring, g))
    }

    /// `{g : g J ⊆ I}`.
    pub fn quotient(&self, j: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(j)?;
        if j.is_zero() {
            return Err(Error::ZeroIdealQuotient);
        }
        if self.is_unit() {
            return Ok(Self::unit(&self.ring));
        }
        let gens = groebner::colon(&self.ring, &self.basis(), j.generators());
        Ok(Self::from_gens(&self.ring, gens))
    }

    /// `I : J^∞`, iterating colons until the reduced basis stops growing.
    pub fn saturate(&self, j: &Ideal<F>) -> Result<Ideal<F>> {
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(j)?;
            if cur.contains_ideal(&next) {
                return Ok(cur);
            }
            cur = Self::from_gens(&self.ring, next.basis().to_vec());
        }
    }

    /// `I : m^∞` for the irrelevant ideal of the X-block.
    pub fn saturation(&self) -> Ideal<F> {
        self.saturate(&Self::irrelevant(&self.ring)).expect("irrelevant ideal is nonzero")
    }

    /// All `s`-fold products of generators.
    pub fn power(&self, s: u32) -> Result<Ideal<F>> {
        if s == 0 {
            return Err(Error::ZeroPower);
        }
        let base = &self.gens;
        let mut out = Vec::new();
        let mut idx = vec![0usize; s as usize];
        if base.is_empty() {
            return Ok(Self::zero(&self.ring));
        }
        loop {
            let mut p = base[idx[0]].clone();
            for &k in &idx[1..] {
                p = &p * &base[k];
            }
            out.push(p);
            // next non-decreasing index tuple
            let mut pos = idx.len();
            loop {
                if pos == 0 {
                    return Ok(Self::from_gens(&self.ring, out));
                }
                pos -= 1;
                if idx[pos] + 1 < base.len() {
                    let v = idx[pos] + 1;
                    for x in idx[pos..].iter_mut() {
                        *x = v;
                    }
                    break;
                }
            }
        }
    }

    /// Number of generators `power(s)` produces before interreduction.
    pub fn power_generator_count(&self, s: u32) -> usize {
        crate::monomial::binomial(self.gens.len() as i64 + s as i64 - 1, s as i64) as usize
    }

    /// `I ∩ k[vars not in mask]`, via a block-elimination basis.
    pub fn eliminate(&self, vars: impl IntoIterator<Item = usize>) -> Ideal<F> {
        let order = MonomialOrder::eliminating(vars);
        let mask = match order {
            MonomialOrder::Elimination { mask } => mask,
            MonomialOrder::Grevlex => unreachable!(),
        };
        let gb = self.groebner_basis(order);
        let kept = gb.iter().filter(|g| g.support() & mask == 0).cloned().collect();
        Self::from_gens(&self.ring, kept)
    }

    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        Ok(Self::from_gens(&self.ring, groebner::intersection(&self.ring, &self.gens, &other.gens)))
    }

    /// Krull dimension of `R/I` over all variables of the ring; `-1` for the unit ideal.
    pub fn dimension(&self) -> i32 {
        let lts: Vec<u16> = self.leading_monomials().iter().map(|m| m.support()).collect();
        if lts.contains(&0) {
            return -1;
        }
        let n = self.ring.nvars();
        let mut best = 0;
        for set in 0u16..(1 << n) {
            let size = set.count_ones() as i32;
            if size > best && lts.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        best
    }

    /// `I = I : m^∞`.
    pub fn is_saturated(&self) -> bool {
        self.saturation().same_as(self)
    }
}
