//! Points of P^3 and specialization of the λ-block at a point.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, VariableContext};
use crate::poly::{PolyRing, Polynomial, Ring};

/// Normalized point of P^3: the first nonzero coordinate is 1.
pub struct ProjectivePoint<F: Field> {
    coords: [F::Elem; 4],
    pivot: usize,
}

impl<F: Field> Clone for ProjectivePoint<F> {
    fn clone(&self) -> Self {
        ProjectivePoint { coords: self.coords.clone(), pivot: self.pivot }
    }
}

impl<F: Field> PartialEq for ProjectivePoint<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}
impl<F: Field> Eq for ProjectivePoint<F> {}

impl<F: Field> Hash for ProjectivePoint<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state)
    }
}

impl<F: Field> PartialOrd for ProjectivePoint<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: position of the leading 1 first (earlier is smaller), then
/// the remaining coordinates.
impl<F: Field> Ord for ProjectivePoint<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pivot().cmp(&other.pivot()).then_with(|| self.coords.cmp(&other.coords))
    }
}

impl<F: Field> fmt::Debug for ProjectivePoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}:{:?}:{:?}:{:?})", self.coords[0], self.coords[1], self.coords[2], self.coords[3])
    }
}

impl<F: Field> ProjectivePoint<F> {
    pub fn new(field: &F, coords: [F::Elem; 4]) -> Result<Self> {
        let k = coords
            .iter()
            .position(|c| !field.is_zero(c))
            .ok_or_else(|| Error::Invalid("all coordinates are zero".into()))?;
        let inv = field.inv(&coords[k]).unwrap();
        let coords = coords.map(|c| field.mul(&c, &inv));
        Ok(ProjectivePoint { coords, pivot: k })
    }

    pub fn from_ints(field: &F, c: [i64; 4]) -> Result<Self> {
        Self::new(field, c.map(|v| field.from_i64(v)))
    }

    pub fn coords(&self) -> &[F::Elem; 4] {
        &self.coords
    }

    /// Index of the leading 1.
    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// Colon-separated coordinates, e.g. `1:0:-1/2:0`.
    pub fn format(&self, field: &F) -> String {
        self.coords.iter().map(|c| field.format_elem(c)).collect::<Vec<_>>().join(":")
    }

    /// Parse `a:b:c:d` with integer or `n/m` rational entries.
    pub fn parse(field: &F, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Invalid(format!("point '{}' needs four coordinates", s)));
        }
        let mut out: Vec<F::Elem> = Vec::with_capacity(4);
        for p in parts {
            let q = parse_rational(p).ok_or_else(|| Error::Invalid(format!("bad coordinate '{}'", p)))?;
            out.push(field.from_rational(&q).ok_or_else(|| Error::Invalid(format!("coordinate '{}' undefined in {}", p, field.name())))?);
        }
        let arr: [F::Elem; 4] = out.try_into().unwrap();
        Self::new(field, arr)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// The X-only ring over the same field and X names as `ring`.
pub fn x_ring<F: Field>(ring: &Ring<F>) -> Ring<F> {
    let names: Vec<&str> = ring.ctx.x_block().map(|i| ring.ctx.names()[i].as_str()).collect();
    PolyRing::new(ring.field.clone(), VariableContext::with_names(&names, &[]))
}

/// Substitute the λ-block of `p` by the coordinates of `pt`, landing in `target`.
pub fn specialize_into<F: Field>(p: &Polynomial<F>, pt: &ProjectivePoint<F>, target: &Ring<F>) -> Result<Polynomial<F>> {
    let lb = p.ring().ctx.lambda_block().ok_or(Error::NoLambdaBlock)?;
    let f = p.field();
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let mut coeff = c.clone();
        let mut xm = Monomial::one();
        for i in 0..p.ring().nvars() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            if lb.contains(&i) {
                coeff = f.mul(&coeff, &f.pow(&pt.coords[i - lb.start], e as u64));
            } else {
                xm = xm.with_exp(i, e);
            }
        }
        terms.push((xm, coeff));
    }
    Ok(Polynomial::from_terms(target, terms))
}

/// Specialization into a fresh X-only ring.
pub fn specialize<F: Field>(p: &Polynomial<F>, pt: &ProjectivePoint<F>) -> Result<Polynomial<F>> {
    if p.ring().ctx.lambda_block().is_none() {
        return Err(Error::NoLambdaBlock);
    }
    specialize_into(p, pt, &x_ring(p.ring()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn normalization_is_scale_invariant() {
        let q = Rationals;
        let a = ProjectivePoint::from_ints(&q, [0, 2, 4, -6]).unwrap();
        let b = ProjectivePoint::from_ints(&q, [0, -1, -2, 3]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.format(&q), "0:1:2:-3");
        assert_eq!(ProjectivePoint::parse(&q, "0:1:2:-3").unwrap(), a);
        assert!(ProjectivePoint::from_ints(&q, [0, 0, 0, 0]).is_err());
        let f7 = PrimeField::new(7).unwrap();
        let c = ProjectivePoint::from_ints(&f7, [3, 1, 0, 0]).unwrap();
        assert_eq!(c.format(&f7), "1:-2:0:0");
    }

    #[test]
    fn specialize_example_one_column() {
        let r = PolyRing::new(Rationals, VariableContext::mixed());
        let v = |i| Polynomial::var(&r, i);
        // (-X2^2 + X3^2) L0 + X1^2 L1 - X3^2 L3
        let col = &(&(&(&v(2).pow(2) - &v(1).pow(2)) * &v(3)) + &(&v(0).pow(2) * &v(4))) - &(&v(2).pow(2) * &v(6));
        let pt = ProjectivePoint::from_ints(&Rationals, [1, 0, 1, 0]).unwrap();
        let s = specialize(&col, &pt).unwrap();
        assert_eq!(s.to_string(), "-X2^2 + X3^2");
        let x = PolyRing::new(Rationals, VariableContext::x_only());
        let p = Polynomial::var(&x, 0);
        assert_eq!(specialize(&p, &pt).unwrap_err(), Error::NoLambdaBlock);
    }
}
