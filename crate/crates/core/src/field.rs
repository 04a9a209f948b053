//! Ground fields: the rationals, prime fields `F_p`, and small extension
//! fields `F_{p^e}` used by the exhaustive scanner.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::Error;
use crate::univariate;

/// A field descriptor. Elements are plain values; all arithmetic goes through
/// the descriptor so that runtime parameters (the modulus, extension tables)
/// live in one place.
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn size(&self) -> Option<u64>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn name(&self) -> String;

    /// Uniform draw: all of the field when finite, integers in `[-997, 997]`
    /// over the rationals.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Distinct roots lying in this field of a nonzero univariate polynomial
    /// (coefficients in ascending order).
    fn roots(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;

    /// Every element, for finite fields small enough to enumerate.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_bigint(&self, v: &BigInt) -> Self::Elem {
        // Horner in base 2^32 over the magnitude digits.
        let (sign, digits) = v.to_u32_digits();
        let base = self.from_i64(1 << 16);
        let base = self.mul(&base, &base);
        let mut acc = self.zero();
        for &d in digits.iter().rev() {
            acc = self.add(&self.mul(&acc, &base), &self.from_i64(d as i64));
        }
        if sign == num_bigint::Sign::Minus {
            self.neg(&acc)
        } else {
            acc
        }
    }

    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.inv(&d).map(|i| self.mul(&n, &i))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field of rational numbers with arbitrary-precision numerator and denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "rational".to_string()
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-997..=997))
    }
    fn roots(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        univariate::rational_roots(coeffs)
    }
}

/// Prime field `F_p` for an odd prime `p < 2^31`; elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduce an exact rational into the field; fails when the denominator vanishes.
    pub fn reduce_rational(&self, q: &BigRational) -> Option<u32> {
        let p = BigInt::from(self.p);
        let num = ((q.numer() % &p) + &p) % &p;
        let den = ((q.denom() % &p) + &p) % &p;
        let den = den.to_u32()?;
        let inv = self.inv(&den)?;
        Some(self.mul(&num.to_u32().unwrap(), &inv))
    }

    /// Symmetric lift into `(-p/2, p/2]`.
    pub fn lift(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut i = 3u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        Some(t.rem_euclid(self.p as i64) as u32)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn size(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn format_elem(&self, a: &u32) -> String {
        self.lift(*a).to_string()
    }
    fn name(&self) -> String {
        format!("prime {}", self.p)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn roots(&self, coeffs: &[u32]) -> Vec<u32> {
        univariate::finite_field_roots(self, coeffs)
    }
    fn elements(&self) -> Option<Vec<u32>> {
        if self.p <= 1 << 20 {
            Some((0..self.p).collect())
        } else {
            None
        }
    }
}

/// Largest extension field the scanner will build log tables for.
pub const MAX_EXTENSION_SIZE: u64 = 1 << 20;

#[derive(Debug)]
struct ExtTables {
    p: u32,
    degree: u32,
    size: u32,
    /// Monic primitive modulus, ascending coefficients, length `degree + 1`.
    modulus: Vec<u32>,
    /// `exp[k]` = digit index of `g^k`.
    exp: Vec<u32>,
    /// `log[idx]` = k with `g^k` = element with digit index idx (idx > 0).
    log: Vec<u32>,
    /// `zech[k]` = encoded element `1 + g^k`.
    zech: Vec<u32>,
}

/// `F_{p^e}` realised with Zech logarithms over a primitive modulus.
///
/// Elements are encoded as `0` for zero and `k + 1` for `g^k`, where `g` is
/// the class of `a` modulo the primitive polynomial.
#[derive(Clone, Debug)]
pub struct ExtensionField {
    t: Arc<ExtTables>,
}

impl PartialEq for ExtensionField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.degree == other.t.degree
    }
}
impl Eq for ExtensionField {}

impl ExtensionField {
    pub fn new(p: u64, degree: u32) -> Result<Self, Error> {
        let base = PrimeField::new(p)?;
        if degree == 0 {
            return Err(Error::InvalidExtension { p, degree });
        }
        let size = (p as u128).pow(degree);
        if size > MAX_EXTENSION_SIZE as u128 {
            return Err(Error::InvalidExtension { p, degree });
        }
        let size = size as u32;
        let p32 = base.modulus();
        // enumerate monic candidates, lowest digit index first
        let tail = size; // p^degree choices for the lower coefficients
        for code in 0..tail {
            let mut modulus = Vec::with_capacity(degree as usize + 1);
            let mut c = code;
            for _ in 0..degree {
                modulus.push(c % p32);
                c /= p32;
            }
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = primitive_powers(&base, &modulus, size) {
                let one_idx = 1u32;
                let mut zech = vec![0u32; (size - 1) as usize];
                for k in 0..(size - 1) as usize {
                    let s = digit_add(p32, degree, one_idx, exp[k]);
                    zech[k] = if s == 0 { 0 } else { log[s as usize] + 1 };
                }
                return Ok(ExtensionField {
                    t: Arc::new(ExtTables {
                        p: p32,
                        degree,
                        size,
                        modulus,
                        exp,
                        log,
                        zech,
                    }),
                });
            }
        }
        Err(Error::InvalidExtension { p, degree })
    }

    pub fn prime(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.degree
    }

    pub fn modulus_coeffs(&self) -> &[u32] {
        &self.t.modulus
    }

    /// Embedding of the prime subfield.
    pub fn embed(&self, a: u32) -> u32 {
        self.from_i64(a as i64)
    }

    /// Base-p digits (ascending powers of the generator class `a`).
    pub fn digits(&self, x: &u32) -> Vec<u32> {
        let idx = self.index_of(*x);
        let mut out = Vec::with_capacity(self.t.degree as usize);
        let mut c = idx;
        for _ in 0..self.t.degree {
            out.push(c % self.t.p);
            c /= self.t.p;
        }
        out
    }

    /// Whether the element lies in the prime subfield; returns its residue.
    pub fn as_prime(&self, x: &u32) -> Option<u32> {
        let idx = self.index_of(*x);
        if idx < self.t.p {
            Some(idx)
        } else {
            None
        }
    }

    fn index_of(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.t.exp[(x - 1) as usize]
        }
    }

    fn from_index(&self, idx: u32) -> u32 {
        if idx == 0 {
            0
        } else {
            self.t.log[idx as usize] + 1
        }
    }
}

fn digit_add(p: u32, degree: u32, a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut scale = 1u32;
    for _ in 0..degree {
        let s = (a % p + b % p) % p;
        out += s * scale;
        a /= p;
        b /= p;
        scale = scale.wrapping_mul(p);
    }
    out
}

/// Powers of `x` modulo `modulus`; `None` unless `x` has order `size - 1`.
fn primitive_powers(base: &PrimeField, modulus: &[u32], size: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    let e = modulus.len() - 1;
    let p = base.modulus();
    let encode = |v: &[u32]| -> u32 {
        let mut idx = 0u32;
        for c in v.iter().rev() {
            idx = idx * p + c;
        }
        idx
    };
    let order = (size - 1) as usize;
    let mut exp = Vec::with_capacity(order);
    let mut log = vec![u32::MAX; size as usize];
    let mut cur = vec![0u32; e];
    cur[0] = 1;
    for k in 0..order {
        let idx = encode(&cur);
        if idx == 0 || log[idx as usize] != u32::MAX {
            return None;
        }
        log[idx as usize] = k as u32;
        exp.push(idx);
        // multiply by x
        let top = cur[e - 1];
        for i in (1..e).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..e {
                cur[i] = base.sub(&cur[i], &base.mul(&top, &modulus[i]));
            }
        }
    }
    if encode(&cur) != 1 {
        return None;
    }
    Some((exp, log))
}

impl Field for ExtensionField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        let r = v.rem_euclid(self.t.p as i64) as u32;
        self.from_index(r)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 {
            return *b;
        }
        if *b == 0 {
            return *a;
        }
        let n = self.t.size - 1;
        let (i, j) = (a - 1, b - 1);
        // g^i + g^j = g^i (1 + g^(j-i))
        let k = if j >= i { j - i } else { j + n - i };
        let z = self.t.zech[k as usize];
        if z == 0 {
            0
        } else {
            ((i + z - 1) % n) + 1
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.t.size - 1;
        ((a - 1 + b - 1) % n) + 1
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            return 0;
        }
        let n = self.t.size - 1;
        ((a - 1 + n / 2) % n) + 1
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let n = self.t.size - 1;
        Some(((n - (a - 1)) % n) + 1)
    }
    fn characteristic(&self) -> u64 {
        self.t.p as u64
    }
    fn size(&self) -> Option<u64> {
        Some(self.t.size as u64)
    }
    fn format_elem(&self, a: &u32) -> String {
        let base = PrimeField { p: self.t.p };
        let digits = self.digits(a);
        if digits.iter().skip(1).all(|d| *d == 0) {
            return base.lift(digits[0]).to_string();
        }
        let mut parts = Vec::new();
        for (k, d) in digits.iter().enumerate().rev() {
            if *d == 0 {
                continue;
            }
            let c = base.lift(*d);
            let mono = match k {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{}", k),
            };
            parts.push(match (k, c) {
                (0, _) => c.to_string(),
                (_, 1) => mono,
                (_, -1) => format!("-{}", mono),
                _ => format!("{}*{}", c, mono),
            });
        }
        format!("({})", parts.join("+").replace("+-", "-"))
    }
    fn name(&self) -> String {
        format!("GF({}^{})", self.t.p, self.t.degree)
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.t.size)
    }
    fn roots(&self, coeffs: &[u32]) -> Vec<u32> {
        (0..self.t.size)
            .filter(|x| univariate::eval(self, coeffs, x) == 0)
            .collect()
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.t.size).collect())
    }
}

/// Integer-content helpers for displaying rational polynomials.
pub(crate) fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    let mut l = BigInt::one();
    for q in it {
        let d = q.denom();
        l = num_integer::Integer::lcm(&l, d);
    }
    l.abs()
}
