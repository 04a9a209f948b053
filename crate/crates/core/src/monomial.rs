use std::cmp::Ordering;
use std::ops::Range;

/// Hard cap on the number of variables in any context (3 X + 4 λ + 1 spare).
pub const MAX_VARS: usize = 8;

/// Ordered variable names with the X-block and the optional λ-block marked.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
    x_block: Range<usize>,
    lambda_block: Option<Range<usize>>,
}

impl VariableContext {
    /// `X1, X2, X3`.
    pub fn x_only() -> Self {
        Self::with_names(&["X1", "X2", "X3"], &[])
    }

    /// `X1, X2, X3, L0, L1, L2, L3`; the λ-block is eliminated first.
    pub fn mixed() -> Self {
        Self::with_names(&["X1", "X2", "X3"], &["L0", "L1", "L2", "L3"])
    }

    pub fn with_names(x: &[&str], lambda: &[&str]) -> Self {
        assert_eq!(x.len(), 3, "X-block has exactly three variables");
        assert!(lambda.is_empty() || lambda.len() == 4, "λ-block has four variables");
        let mut names: Vec<String> = x.iter().map(|s| s.to_string()).collect();
        names.extend(lambda.iter().map(|s| s.to_string()));
        VariableContext {
            x_block: 0..3,
            lambda_block: if lambda.is_empty() { None } else { Some(3..7) },
            names,
        }
    }

    /// Free-form context (used by the point solver); every variable is in the X-block.
    pub fn custom(names: &[&str]) -> Self {
        assert!(names.len() <= MAX_VARS);
        VariableContext {
            names: names.iter().map(|s| s.to_string()).collect(),
            x_block: 0..names.len(),
            lambda_block: None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn x_block(&self) -> Range<usize> {
        self.x_block.clone()
    }

    pub fn lambda_block(&self) -> Option<Range<usize>> {
        self.lambda_block.clone()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector; slots beyond the context's variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        assert!(e.len() <= MAX_VARS);
        let mut m = Monomial::default();
        m.exps[..e.len()].copy_from_slice(e);
        m
    }

    pub fn var(i: usize, power: u16) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = power;
        m
    }

    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, vars: Range<usize>) -> u32 {
        self.exps[vars].iter().map(|&e| e as u32).sum()
    }

    pub fn degree_masked(&self, mask: u16) -> u32 {
        (0..MAX_VARS)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.exps[i] as u32)
            .sum()
    }

    /// Bitmask of the variables present.
    pub fn support(&self) -> u16 {
        let mut s = 0u16;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                s |= 1 << i;
            }
        }
        s
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= other.exps[i];
        }
        m
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(self.div(other))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].max(other.exps[i]);
        }
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].min(other.exps[i]);
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.support() & other.support() == 0
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut m = *self;
        m.exps[i] = e;
        m
    }
}

/// Monomial orders used by the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic over all variables in declared order.
    Grevlex,
    /// Block order: grevlex on the masked variables first, ties broken by
    /// grevlex on the rest. Any monomial containing a masked variable beats
    /// every monomial free of them.
    Elimination { mask: u16 },
}

impl MonomialOrder {
    pub fn eliminating(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = 0u16;
        for v in vars {
            mask |= 1 << v;
        }
        MonomialOrder::Elimination { mask }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_masked(a, b, u16::MAX),
            MonomialOrder::Elimination { mask } => {
                grevlex_masked(a, b, mask).then_with(|| grevlex_masked(a, b, !mask))
            }
        }
    }
}

fn grevlex_masked(a: &Monomial, b: &Monomial, mask: u16) -> Ordering {
    let da = a.degree_masked(mask);
    let db = b.degree_masked(mask);
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..MAX_VARS).rev() {
        if mask & (1 << i) == 0 {
            continue;
        }
        let (x, y) = (a.exps[i], b.exps[i]);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

/// All monomials of total degree `deg` in the variables `vars` (descending grevlex).
pub fn monomials_of_degree(vars: Range<usize>, deg: u32) -> Vec<Monomial> {
    let vs: Vec<usize> = vars.collect();
    let mut out = Vec::new();
    fn rec(vs: &[usize], deg: u32, cur: Monomial, out: &mut Vec<Monomial>) {
        if vs.len() == 1 {
            out.push(cur.with_exp(vs[0], deg as u16));
            return;
        }
        for e in (0..=deg).rev() {
            rec(&vs[1..], deg - e, cur.with_exp(vs[0], e as u16), out);
        }
    }
    if vs.is_empty() {
        if deg == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(&vs, deg, Monomial::one(), &mut out);
    out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
    out
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `dim_k R_μ` for three variables.
pub fn dim_forms(mu: i64) -> i64 {
    if mu < 0 {
        0
    } else {
        binomial(mu + 2, 2)
    }
}
