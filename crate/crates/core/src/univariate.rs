//! Dense univariate polynomials over a [`Field`] (ascending coefficient
//! vectors) and root extraction in the ground field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, PrimeField};

pub fn trim<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !f.is_zero(c))
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(f, b).expect("division by zero polynomial");
    let inv_lc = f.inv(&b[db]).unwrap();
    let mut r = trim(f, a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &inv_lc);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] = f.sub(&r[i + shift], &f.mul(&c, bc));
        }
        q[shift] = c;
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn monic<F: Field>(f: &F, a: Vec<F::Elem>) -> Vec<F::Elem> {
    let a = trim(f, a);
    match a.last() {
        None => a,
        Some(lc) => {
            let inv = f.inv(lc).unwrap();
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd; zero only when both inputs are zero.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let (_, r) = div_rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, x)
}

/// Product of the distinct irreducible factors (characteristic-safe when
/// the degree is below the characteristic, which holds for every caller).
pub fn squarefree_part<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let a = monic(f, a.to_vec());
    let da = derivative(f, &a);
    if da.is_empty() {
        return a;
    }
    let g = gcd(f, &a, &da);
    monic(f, div_rem(f, &a, &g).0)
}

fn pow_mod<F: Field>(f: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = vec![f.one()];
    let mut b = div_rem(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = div_rem(f, &mul(f, &acc, &b), m).1;
        }
        b = div_rem(f, &mul(f, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// Distinct roots in `F_p`: brute force for small `p`, otherwise
/// Cantor–Zassenhaus splitting of `gcd(a, x^p - x)`.
pub fn finite_field_roots(f: &PrimeField, a: &[u32]) -> Vec<u32> {
    let a = monic(f, a.to_vec());
    let Some(deg) = degree(f, &a) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let p = f.modulus() as u64;
    if p <= 1 << 16 {
        return (0..p as u32).filter(|x| eval(f, &a, x) == 0).collect();
    }
    // split off the product of linear factors
    let x = vec![0, 1];
    let xp = pow_mod(f, &x, p, &a);
    let mut xp_minus_x = xp;
    xp_minus_x.resize(xp_minus_x.len().max(2), 0);
    xp_minus_x[1] = f.sub(&xp_minus_x[1], &1);
    let lin = gcd(f, &a, &trim(f, xp_minus_x));
    let mut roots = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    split_linear(f, lin, &mut rng, &mut roots);
    roots.sort_unstable();
    roots
}

fn split_linear(f: &PrimeField, g: Vec<u32>, rng: &mut ChaCha8Rng, out: &mut Vec<u32>) {
    match degree(f, &g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(&f.div(&g[0], &g[1]))),
        Some(_) => loop {
            let shift: u32 = rng.gen_range(0..f.modulus());
            let base = vec![shift, 1];
            let mut h = pow_mod(f, &base, (f.modulus() as u64 - 1) / 2, &g);
            if h.is_empty() {
                h.push(0);
            }
            h[0] = f.sub(&h[0], &1);
            let d = gcd(f, &g, &trim(f, h));
            let dd = degree(f, &d).unwrap_or(0);
            if dd > 0 && dd < degree(f, &g).unwrap() {
                let rest = div_rem(f, &g, &d).0;
                split_linear(f, d, rng, out);
                split_linear(f, monic(f, rest), rng, out);
                return;
            }
        },
    }
}

fn small_primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|n| crate::field::is_prime(*n))
}

/// Rational roots via a simple p-adic route: roots modulo a good prime,
/// Hensel lifting, rational reconstruction, exact verification.
pub fn rational_roots(a: &[BigRational]) -> Vec<BigRational> {
    let q = crate::field::Rationals;
    let a = trim(&q, a.to_vec());
    if degree(&q, &a).is_none_or(|d| d == 0) {
        return Vec::new();
    }
    let sq = squarefree_part(&q, &a);
    // integer primitive form
    let l = crate::field::lcm_of_denominators(sq.iter());
    let mut ints: Vec<BigInt> = sq.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    let mut roots = Vec::new();
    // strip the root 0
    let mut low = 0;
    while ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(BigRational::zero());
        ints.drain(0..low);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let lc = ints.last().unwrap().clone();
    let a0 = ints[0].clone();
    let bound = BigInt::from(2) * a0.abs() * lc.abs() + BigInt::one();
    let deg = ints.len() - 1;
    for p in small_primes_from(10007) {
        let pb = BigInt::from(p);
        if (&lc % &pb).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p).unwrap();
        let red: Vec<u32> = ints
            .iter()
            .map(|c| (((c % &pb) + &pb) % &pb).to_u32().unwrap())
            .collect();
        let red = trim(&fp, red);
        if degree(&fp, &red) != Some(deg) {
            continue;
        }
        let dred = derivative(&fp, &red);
        if degree(&fp, &gcd(&fp, &red, &dred)) != Some(0) {
            continue;
        }
        for r in finite_field_roots(&fp, &red) {
            if let Some(root) = lift_and_reconstruct(&ints, r, &pb, &bound, &a0, &lc) {
                roots.push(root);
            }
        }
        break;
    }
    roots.sort();
    roots.dedup();
    roots
}

fn eval_int(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for k in c.iter().rev() {
        acc = (acc * x + k).mod_floor(m);
    }
    acc
}

fn lift_and_reconstruct(
    c: &[BigInt],
    r: u32,
    p: &BigInt,
    bound: &BigInt,
    a0: &BigInt,
    lc: &BigInt,
) -> Option<BigRational> {
    let dc: Vec<BigInt> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, k)| k * BigInt::from(i))
        .collect();
    let mut x = BigInt::from(r);
    let mut m = p.clone();
    while &m <= bound {
        m = &m * &m;
        let fx = eval_int(c, &x, &m);
        let dfx = eval_int(&dc, &x, &m);
        let inv = mod_inverse(&dfx, &m)?;
        x = (&x - fx * inv).mod_floor(&m);
    }
    let cand = reconstruct(&x, &m, &a0.abs(), &lc.abs())?;
    // exact check
    let qf = crate::field::Rationals;
    let coeffs: Vec<BigRational> = c.iter().map(|k| BigRational::from_integer(k.clone())).collect();
    if eval(&qf, &coeffs, &cand).is_zero() {
        Some(cand)
    } else {
        None
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Find `n/d` with `|n| <= nb`, `0 < d <= db`, `n ≡ d x (mod m)`.
fn reconstruct(x: &BigInt, m: &BigInt, nb: &BigInt, db: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > nb {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if t1.is_zero() || &t1.abs() > db {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
