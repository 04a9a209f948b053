//! Multivariate gcd by primitive remainder sequences.

use crate::field::Field;
use crate::poly::Polynomial;

/// Monic (grevlex) gcd of the nonzero entries; zero when all entries vanish.
pub fn multivariate_gcd<F: Field>(ps: &[Polynomial<F>]) -> Option<Polynomial<F>> {
    let ring = ps.first()?.ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for p in ps {
        if acc.is_constant() {
            break;
        }
        acc = gcd2(&acc, p);
    }
    Some(acc.monic())
}

/// Monic gcd of two polynomials.
pub fn gcd2<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    let n = a.ring().nvars();
    let var = (0..n)
        .max_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), std::cmp::Reverse(v)))
        .unwrap();
    let (ca, pa) = split_content(a, var);
    let (cb, pb) = split_content(b, var);
    let c = gcd2(&ca, &cb);
    let g = primitive_prs(pa, pb, var);
    (&c * &g).monic()
}

/// `(content, primitive part)` with respect to `var`.
fn split_content<F: Field>(a: &Polynomial<F>, var: usize) -> (Polynomial<F>, Polynomial<F>) {
    let coeffs = a.coefficients_in(var);
    let mut c = Polynomial::zero(a.ring());
    // Prefer short coefficients first so the content collapses quickly.
    let mut order: Vec<&Polynomial<F>> = coeffs.iter().filter(|p| !p.is_zero()).collect();
    order.sort_by_key(|p| p.len());
    for k in order {
        c = gcd2(&c, k);
        if c.is_constant() {
            return (Polynomial::one(a.ring()), a.monic());
        }
    }
    let pp = a.div_exact(&c).expect("content divides");
    (c, pp.monic())
}

/// Gcd of two primitive polynomials in `var` via pseudo-remainders.
fn primitive_prs<F: Field>(a: Polynomial<F>, b: Polynomial<F>, var: usize) -> Polynomial<F> {
    let (mut p, mut q) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        if q.is_zero() {
            return p.monic();
        }
        if q.degree_in(var) == 0 {
            // q is primitive and free of var: a unit in this recursion.
            return Polynomial::one(p.ring());
        }
        let r = pseudo_remainder(&p, &q, var);
        p = q;
        q = if r.is_zero() { r } else { split_content(&r, var).1 };
    }
}

fn pseudo_remainder<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>, var: usize) -> Polynomial<F> {
    let db = b.degree_in(var);
    let bc = b.coefficients_in(var);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coefficients_in(var)[dr as usize].clone();
        let shift = crate::monomial::Monomial::var(var, (dr - db) as u16);
        let one = r.field().one();
        let t = &lr * &b.mul_term(&shift, &one);
        r = &(&lb * &r) - &t;
    }
    r
}
