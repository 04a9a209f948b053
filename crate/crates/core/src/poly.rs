//! Sparse multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::monomial::{Monomial, MonomialOrder, VariableContext, MAX_VARS};

/// A ground field together with a variable context.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    pub field: F,
    pub ctx: VariableContext,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, ctx: VariableContext) -> Arc<Self> {
        Arc::new(PolyRing { field, ctx })
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }
}

pub type Ring<F> = Arc<PolyRing<F>>;

/// Polynomial with terms kept in descending grevlex order, no zero
/// coefficients and no repeated monomials.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring<F: Field>(a: &Ring<F>, b: &Ring<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn desc(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::Grevlex.cmp(b, a)
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn monomial(ring: &Ring<F>, m: Monomial, c: F::Elem) -> Self {
        if ring.field.is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    pub fn var(ring: &Ring<F>, i: usize) -> Self {
        assert!(i < ring.nvars());
        Self::monomial(ring, Monomial::var(i, 1), ring.field.one())
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Ring<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let f = &ring.field;
        let mut map: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => *acc = f.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let mut v: Vec<_> = map.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        v.sort_by(|a, b| desc(&a.0, &b.0));
        Polynomial { ring: ring.clone(), terms: v }
    }

    /// Terms already sorted (descending grevlex), distinct and nonzero.
    pub(crate) fn from_sorted_unchecked(ring: &Ring<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| desc(&w[0].0, &w[1].0) == Ordering::Less));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.field().is_one(&self.terms[0].1)
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Grevlex-leading term.
    pub fn leading_term(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Leading monomial under an arbitrary order.
    pub fn leading_monomial_under(&self, order: MonomialOrder) -> Option<Monomial> {
        self.terms.iter().map(|t| t.0).max_by(|a, b| order.cmp(a, b))
    }

    /// Maximal total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(var) as u32).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d`; zero counts as homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|t| t.0.degree());
        let first = match it.next() {
            None => return Some(0),
            Some(d) => d,
        };
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// `(x-degree, λ-degree)` when bihomogeneous in the mixed context.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let xb = self.ring.ctx.x_block();
        let lb = self.ring.ctx.lambda_block()?;
        let mut it = self.terms.iter().map(|t| (t.0.degree_in(xb.clone()), t.0.degree_in(lb.clone())));
        let first = it.next().unwrap_or((0, 0));
        it.all(|d| d == first).then_some(first)
    }

    /// Bitmask of variables that occur.
    pub fn support(&self) -> u16 {
        self.terms.iter().fold(0, |s, t| s | t.0.support())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let f = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match desc(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(&a[i].1, &b[j].1) } else { f.add(&a[i].1, &b[j].1) };
                    if !f.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { f.neg(&t.1) } else { t.1.clone() };
            out.push((t.0, c));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let f = self.field();
        let mut map: HashMap<Monomial, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(acc) => *acc = f.add(acc, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        let mut v: Vec<_> = map.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        v.sort_by(|a, b| desc(&a.0, &b.0));
        Polynomial { ring: self.ring.clone(), terms: v }
    }

    /// Multiply by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, k)| (t.mul(m), f.mul(k, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Scale so the grevlex-leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).unwrap();
                self.scale(&inv)
            }
        }
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let n = self.ring.nvars();
        assert!(point.len() >= n);
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate().take(n) {
                let e = m.exp(i);
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Ring homomorphism sending variable `i` to `images[i]` (all in `target`).
    pub fn substitute(&self, target: &Ring<F>, images: &[Polynomial<F>]) -> Polynomial<F> {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Polynomial<F>>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul_unchecked(&pw[1]);
                    pw.push(next);
                }
                t = t.mul_unchecked(&pw[e]);
            }
            acc = acc.add_unchecked(&t, false);
        }
        acc
    }

    /// Re-express in another ring whose variables are indexed by `map[i]`
    /// (variables of `self` that occur must be mapped).
    pub fn rename(&self, target: &Ring<F>, map: &[Option<usize>]) -> Polynomial<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = Monomial::one();
                for i in 0..self.ring.nvars() {
                    let e = m.exp(i);
                    if e > 0 {
                        let j = map[i].expect("variable without image");
                        out = out.with_exp(j, out.exp(j) + e);
                    }
                }
                (out, c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Coefficient-wise map into another field over a same-shaped context.
    pub fn map_coeffs<G: Field>(&self, target: &Ring<G>, phi: impl Fn(&F::Elem) -> G::Elem) -> Polynomial<G> {
        let terms = self.terms.iter().map(|(m, c)| (*m, phi(c))).collect();
        Polynomial::from_terms(target, terms)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| {
                let e = m.exp(var);
                (m.with_exp(var, e - 1), f.mul(c, &f.from_i64(e as i64)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial<F>> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            buckets[e].push((m.with_exp(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Polynomial { ring: self.ring.clone(), terms: t })
            .collect()
    }

    /// Division with remainder by a single polynomial (grevlex).
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = self.field();
        let (lm, lc) = d.leading_term().expect("division by zero polynomial").clone();
        let inv = f.inv(&lc).unwrap();
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            if let Some(s) = m.try_div(&lm) {
                let k = f.mul(&c, &inv);
                q.push((s, k.clone()));
                p = p.add_unchecked(&d.mul_term(&s, &k), true);
            } else {
                r.push((m, c));
                p.terms.remove(0);
            }
        }
        (Polynomial::from_terms(&self.ring, q), Polynomial::from_sorted_unchecked(&self.ring, r))
    }

    /// `Some(q)` with `self = q * d` when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Canonical total order on polynomials of one ring (term lists compared
    /// monomial by monomial, then by coefficient).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match desc(&a.0, &b.0) {
                Ordering::Equal => {}
                o => return o,
            }
            match a.1.cmp(&b.1) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl Polynomial<Rationals> {
    /// Integer-primitive associate with positive leading coefficient (display variant).
    pub fn integer_primitive(&self) -> Self {
        use num_integer::Integer;
        use num_traits::{Signed, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let l = crate::field::lcm_of_denominators(self.terms.iter().map(|t| &t.1));
        let ints: Vec<BigInt> = self
            .terms
            .iter()
            .map(|t| (&t.1 * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
        if ints[0].is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .zip(ints)
            .map(|(t, c)| (t.0, BigRational::from_integer(c / &g)))
            .collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("context mismatch")
    }
}

impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_sub(rhs).expect("context mismatch")
    }
}

impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("context mismatch")
    }
}

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate().take(MAX_VARS) {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{}^{}", name, e)),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = self.field();
        let names = self.ring.ctx.names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut s = f.format_elem(c);
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            let sign = match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mono = format_monomial(m, names);
            let body = if mono.is_empty() {
                s
            } else if s == "1" {
                mono
            } else {
                format!("{}*{}", s, mono)
            };
            write!(out, "{}{}", sign, body)?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Polynomial({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring() -> Ring<Rationals> {
        PolyRing::new(Rationals, VariableContext::x_only())
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        let p = &(&x1 + &x2) * &(&x1 - &x2);
        assert_eq!(p.to_string(), "X1^2 - X2^2");
    }

    #[test]
    fn example_one_first_form() {
        let r = ring();
        let x2 = Polynomial::var(&r, 1);
        let x3 = Polynomial::var(&r, 2);
        let a = &x2.pow(2) * &x3.pow(2);
        let b = &x3.pow(2) - &x2.pow(2);
        let p = &a * &b;
        assert_eq!(p.to_string(), "-X2^4*X3^2 + X2^2*X3^4");
        assert_eq!(p.homogeneous_degree(), Some(6));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let r = ring();
        let other = PolyRing::new(Rationals, VariableContext::mixed());
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&other, 0);
        assert_eq!(a.try_mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn division_with_remainder() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), VariableContext::x_only());
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        let a = &(&x1.pow(3) - &x2.pow(3)) + &x2;
        let d = &x1 - &x2;
        let (q, rem) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &rem, a);
        assert_eq!(rem, x2);
        assert!(d.divides(&(&x1.pow(3) - &x2.pow(3))));
    }

    #[test]
    fn substitution_and_rename() {
        let r = ring();
        let x1 = Polynomial::var(&r, 0);
        let x2 = Polynomial::var(&r, 1);
        let x3 = Polynomial::var(&r, 2);
        let p = &(&x1 * &x2) + &x3.pow(2);
        let imgs = vec![&x2 + &x3, x1.clone(), x1.clone()];
        let q = p.substitute(&r, &imgs);
        assert_eq!(q, &(&(&x2 + &x3) * &x1) + &x1.pow(2));
        assert!(!p.is_constant());
        assert_eq!(p.coefficients_in(2).len(), 3);
    }

    #[test]
    fn integer_primitive_display() {
        let r = ring();
        let x1 = Polynomial::var(&r, 0);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let p = &x1.scale(&Rationals.from_i64(-3)) + &Polynomial::constant(&r, half);
        assert_eq!(p.integer_primitive().to_string(), "6*X1 - 1");
    }
}
