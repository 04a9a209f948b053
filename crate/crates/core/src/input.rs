//! Text input format:
//!
//! ```text
//! field rational        # or: field prime 32003
//! degree 3
//! f0 X2*X3*(X1 + X2 + X3)
//! f1 ...
//! ```
//!
//! Optional lines: `smax <n>`, `seed <n>`, `ext <e>`, `override`.
//! `#` starts a comment.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::monomial::VariableContext;
use crate::param::Parameterization;
use crate::poly::{PolyRing, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputOptions {
    pub smax: Option<u32>,
    pub seed: Option<u64>,
    pub ext: Option<u32>,
    pub override_hypotheses: bool,
}

/// A parsed input file. Forms are kept with rational coefficients and
/// reduced into the declared field on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputSpec {
    pub field: FieldSpec,
    pub degree: u32,
    pub forms: Vec<Polynomial<Rationals>>,
    pub options: InputOptions,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

pub fn x_ring_rational() -> Ring<Rationals> {
    PolyRing::new(Rationals, VariableContext::x_only())
}

pub fn parse_input(text: &str) -> Result<InputSpec> {
    let ring = x_ring_rational();
    let mut field = None;
    let mut degree = None;
    let mut forms: [Option<(usize, Polynomial<Rationals>)>; 4] = Default::default();
    let mut options = InputOptions::default();
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = raw.split('#').next().unwrap();
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let (key, rest) = match trimmed.find(char::is_whitespace) {
            Some(i) => (&trimmed[..i], &trimmed[i..]),
            None => (trimmed.trim_end(), ""),
        };
        let rest_col = indent + key.len();
        let number = |what: &str| -> Result<u64> {
            rest.trim()
                .parse::<u64>()
                .map_err(|_| err(lineno, rest_col + 1, format!("expected a non-negative integer after '{}'", what)))
        };
        match key {
            "field" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                field = Some(match words.as_slice() {
                    ["rational"] => FieldSpec::Rational,
                    ["prime", p] => {
                        let p: u64 = p.parse().map_err(|_| err(lineno, rest_col + 1, "expected a prime modulus"))?;
                        let f = PrimeField::new(p).map_err(|e| err(lineno, rest_col + 1, e.to_string()))?;
                        FieldSpec::Prime(f.modulus())
                    }
                    _ => return Err(err(lineno, rest_col + 1, "expected 'rational' or 'prime <p>'")),
                });
            }
            "degree" => degree = Some(number("degree")? as u32),
            "smax" => options.smax = Some(number("smax")? as u32),
            "seed" => options.seed = Some(number("seed")?),
            "ext" => options.ext = Some(number("ext")? as u32),
            "override" => options.override_hypotheses = true,
            "f0" | "f1" | "f2" | "f3" => {
                let i = key[1..].parse::<usize>().unwrap();
                let p = Parser::new(rest, lineno, rest_col, &ring).parse_all()?;
                forms[i] = Some((lineno, p));
            }
            _ => return Err(err(lineno, indent + 1, format!("unknown keyword '{}'", key))),
        }
    }
    let field = field.ok_or_else(|| err(1, 1, "missing 'field' line"))?;
    let degree = degree.ok_or_else(|| err(1, 1, "missing 'degree' line"))?;
    let mut out = Vec::with_capacity(4);
    for (i, f) in forms.into_iter().enumerate() {
        let (lineno, p) = f.ok_or_else(|| err(1, 1, format!("missing form f{}", i)))?;
        if !p.is_zero() {
            match p.homogeneous_degree() {
                None => return Err(err(lineno, 1, format!("f{} is not homogeneous", i))),
                Some(e) if e != degree => {
                    return Err(err(lineno, 1, format!("f{} has degree {} but the declared degree is {}", i, e, degree)))
                }
                _ => {}
            }
        }
        out.push(p);
    }
    let spec = InputSpec { field, degree, forms: out, options };
    let zero_after_reduction = match field {
        FieldSpec::Rational => spec.forms.iter().all(|f| f.is_zero()),
        FieldSpec::Prime(p) => spec.forms_mod(&PrimeField::new(p as u64).unwrap()).iter().all(|f| f.is_zero()),
    };
    if zero_after_reduction {
        return Err(Error::AllZero);
    }
    Ok(spec)
}

impl InputSpec {
    /// Forms reduced into a prime field.
    pub fn forms_mod(&self, f: &PrimeField) -> Vec<Polynomial<PrimeField>> {
        let ring = PolyRing::new(*f, VariableContext::x_only());
        self.forms
            .iter()
            .map(|p| p.map_coeffs(&ring, |c| f.reduce_rational(c).expect("integer coefficients")))
            .collect()
    }

    pub fn rational_parameterization(&self) -> Result<Parameterization<Rationals>> {
        Parameterization::new(self.forms.clone())
    }

    pub fn prime_parameterization(&self) -> Result<Parameterization<PrimeField>> {
        match self.field {
            FieldSpec::Prime(p) => Parameterization::new(self.forms_mod(&PrimeField::new(p as u64)?)),
            FieldSpec::Rational => Err(Error::FieldMismatch),
        }
    }
}

impl fmt::Display for InputSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            FieldSpec::Rational => writeln!(out, "field rational")?,
            FieldSpec::Prime(p) => writeln!(out, "field prime {}", p)?,
        }
        writeln!(out, "degree {}", self.degree)?;
        for (i, f) in self.forms.iter().enumerate() {
            writeln!(out, "f{} {}", i, f)?;
        }
        if let Some(s) = self.options.smax {
            writeln!(out, "smax {}", s)?;
        }
        if let Some(s) = self.options.seed {
            writeln!(out, "seed {}", s)?;
        }
        if let Some(e) = self.options.ext {
            writeln!(out, "ext {}", e)?;
        }
        if self.options.override_hypotheses {
            writeln!(out, "override")?;
        }
        Ok(())
    }
}

/// Parse one polynomial expression in `ring` (variables by name).
pub fn parse_polynomial<F: Field>(ring: &Ring<F>, text: &str) -> Result<Polynomial<F>> {
    let q = x_ring_rational();
    let p = Parser::new(text, 1, 0, &q).parse_all()?;
    let f = &ring.field;
    let names: Vec<&str> = ring.ctx.names().iter().map(|s| s.as_str()).collect();
    if names.len() < 3 {
        return Err(Error::ContextMismatch);
    }
    let map = vec![Some(0), Some(1), Some(2)];
    let coeff = |c: &BigRational| f.from_rational(c).expect("integer coefficients");
    let lifted = p.map_coeffs(&PolyRing::new(f.clone(), VariableContext::x_only()), coeff);
    Ok(lifted.rename(ring, &map))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    ring: &'a Ring<Rationals>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, line: usize, col0: usize, ring: &'a Ring<Rationals>) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, line, col0, ring }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        err(self.line, self.col0 + self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Polynomial<Rationals>> {
        if self.peek().is_none() {
            return Err(self.error("expected an expression"));
        }
        let p = self.expr()?;
        if self.peek().is_some() {
            return Err(self.error(format!("unexpected '{}'", self.chars[self.pos])));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Polynomial<Rationals>> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<Rationals>> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<Rationals>> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<Rationals>> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an exponent"));
            }
            let e: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = e.parse().map_err(|_| self.error("exponent too large"))?;
            if e > 1000 {
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<Rationals>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                let v: num_bigint::BigInt = s.parse().unwrap();
                Ok(Polynomial::constant(self.ring, BigRational::from_integer(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.ctx.index_of(&name) {
                    Some(i) => Ok(Polynomial::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(format!("unknown variable '{}'", name)))
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
