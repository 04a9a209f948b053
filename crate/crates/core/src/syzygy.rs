//! First syzygies of four forms, minimal presentations and Fitting ideals.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner;
use crate::ideal::Ideal;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::{Polynomial, Ring};

/// A `4 x r` matrix whose columns are syzygies `(a0, a1, a2, a3)` of the forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyMatrix<F: Field> {
    ring: Ring<F>,
    columns: Vec<[Polynomial<F>; 4]>,
}

impl<F: Field> SyzygyMatrix<F> {
    /// Columns keep their order; zero columns are dropped.
    pub fn new(ring: &Ring<F>, columns: Vec<[Polynomial<F>; 4]>) -> Result<Self> {
        for c in &columns {
            let degs: Vec<u32> = c.iter().filter_map(|p| p.total_degree()).collect();
            if c.iter().any(|p| !p.is_homogeneous()) || degs.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::DegreeMismatch("syzygy column entries must share one degree".into()));
            }
        }
        let columns: Vec<_> = columns.into_iter().filter(|c| c.iter().any(|p| !p.is_zero())).collect();
        Ok(SyzygyMatrix { ring: ring.clone(), columns })
    }

    /// Columns sorted by degree, then by entries.
    pub fn canonical(mut self) -> Self {
        self.columns.sort_by(column_cmp);
        self
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn columns(&self) -> &[[Polynomial<F>; 4]] {
        &self.columns
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial<F> {
        &self.columns[col][row]
    }

    /// Entry degree of every column.
    pub fn column_degrees(&self) -> Vec<u32> {
        self.columns.iter().map(|c| column_degree(c)).collect()
    }

    /// Every column annihilates `forms`.
    pub fn annihilates(&self, forms: &[Polynomial<F>]) -> bool {
        self.columns.iter().all(|c| {
            let mut acc = Polynomial::zero(&self.ring);
            for i in 0..4 {
                acc = &acc + &(&c[i] * &forms[i]);
            }
            acc.is_zero()
        })
    }

    /// Append columns (no minimality implied).
    pub fn with_columns(&self, extra: Vec<[Polynomial<F>; 4]>) -> Result<Self> {
        let mut cols = self.columns.clone();
        cols.extend(extra);
        Self::new(&self.ring, cols)
    }

    /// Does `col` lie in the module generated by the columns?
    pub fn module_contains(&self, col: &[Polynomial<F>; 4]) -> bool {
        let cols: Vec<Vec<Polynomial<F>>> = self.columns.iter().map(|c| c.to_vec()).collect();
        groebner::module_contains(&self.ring, &cols, col)
    }
}

fn column_degree<F: Field>(c: &[Polynomial<F>; 4]) -> u32 {
    c.iter().filter_map(|p| p.total_degree()).next().unwrap_or(0)
}

fn column_cmp<F: Field>(a: &[Polynomial<F>; 4], b: &[Polynomial<F>; 4]) -> Ordering {
    column_degree(a).cmp(&column_degree(b)).then_with(|| {
        for i in 0..4 {
            match a[i].canonical_cmp(&b[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Generators of the full syzygy module of four forms of common degree.
pub fn syzygy_generators<F: Field>(forms: &[Polynomial<F>]) -> Result<SyzygyMatrix<F>> {
    if forms.len() != 4 {
        return Err(Error::Invalid(format!("expected four forms, got {}", forms.len())));
    }
    let ring = forms[0].ring().clone();
    let degs: Vec<u32> = forms.iter().filter(|f| !f.is_zero()).filter_map(|f| f.homogeneous_degree()).collect();
    if forms.iter().all(|f| f.is_zero()) {
        return Err(Error::AllZero);
    }
    if forms.iter().any(|f| !f.is_homogeneous()) || degs.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::DegreeMismatch("the four forms must share one degree".into()));
    }
    let cols = groebner::syzygy_basis(&ring, forms)
        .into_iter()
        .map(|c| [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
        .collect();
    SyzygyMatrix::new(&ring, cols).map(SyzygyMatrix::canonical)
}

/// Keep a minimal generating subset, deciding degree by degree with linear algebra.
pub fn minimalize<F: Field>(m: &SyzygyMatrix<F>) -> SyzygyMatrix<F> {
    let ring = m.ring().clone();
    let field = &ring.field;
    let xb = ring.ctx.x_block();
    let mut chosen: Vec<[Polynomial<F>; 4]> = Vec::new();
    let mut current_degree: Option<u32> = None;
    let mut space: Option<(Vec<Monomial>, Echelon<F>)> = None;
    let sorted = m.clone().canonical();
    for col in sorted.columns() {
        let delta = column_degree(col);
        if current_degree != Some(delta) {
            // Span of monomial multiples of everything chosen so far in degree delta.
            let monos = monomials_of_degree(xb.clone(), delta);
            let mut ech = Echelon::new(field.clone(), 4 * monos.len());
            for c in &chosen {
                let dc = column_degree(c);
                for t in monomials_of_degree(xb.clone(), delta - dc) {
                    let one = field.one();
                    let shifted = [
                        c[0].mul_term(&t, &one),
                        c[1].mul_term(&t, &one),
                        c[2].mul_term(&t, &one),
                        c[3].mul_term(&t, &one),
                    ];
                    ech.insert(dense(&shifted, &monos, field));
                }
            }
            space = Some((monos, ech));
            current_degree = Some(delta);
        }
        let (monos, ech) = space.as_mut().unwrap();
        if ech.insert(dense(col, monos, field)) {
            chosen.push(col.clone());
        }
    }
    SyzygyMatrix::new(&ring, chosen).expect("columns already validated").canonical()
}

fn dense<F: Field>(col: &[Polynomial<F>; 4], monos: &[Monomial], field: &F) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); 4 * monos.len()];
    for (i, p) in col.iter().enumerate() {
        for (m, c) in p.terms() {
            let k = monos.iter().position(|x| x == m).expect("column entry of the wrong degree");
            v[i * monos.len() + k] = c.clone();
        }
    }
    v
}

/// Incremental row echelon form over a field.
pub(crate) struct Echelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub(crate) fn new(field: F, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows.
    pub(crate) fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        debug_assert_eq!(v.len(), self.width);
        for (pivot, row) in &self.rows {
            if !f.is_zero(&v[*pivot]) {
                let c = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    if !f.is_zero(r) {
                        *x = f.sub(x, &f.mul(&c, r));
                    }
                }
            }
        }
        v
    }

    /// Insert `v`; returns whether the rank grew.
    pub(crate) fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let v = self.reduce(v);
        let f = &self.field;
        let Some(pivot) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[pivot]).unwrap();
        let v: Vec<F::Elem> = v.iter().map(|x| f.mul(x, &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            if !f.is_zero(&row[pivot]) {
                let c = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(v.iter()) {
                    if !f.is_zero(r) {
                        *x = f.sub(x, &f.mul(&c, r));
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Basis of `{x : A x = 0}` for a dense matrix `A` given by rows.
pub(crate) fn kernel<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut ech = Echelon::new(field.clone(), ncols);
    for r in rows {
        ech.insert(r.clone());
    }
    let rows = ech.rows;
    let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![field.zero(); ncols];
        x[free] = field.one();
        for (p, row) in &rows {
            x[*p] = field.neg(&row[free]);
        }
        out.push(x);
    }
    out
}

/// Ideal of all `t x t` minors.
pub fn minors_ideal<F: Field>(m: &SyzygyMatrix<F>, t: usize) -> Result<Ideal<F>> {
    let r = m.ncols();
    if t == 0 || t > 4.min(r) {
        return Err(Error::MinorSize { t, cols: r });
    }
    let rows = subsets(4, t);
    let cols = subsets(r, t);
    let mut gens = Vec::new();
    for rs in &rows {
        for cs in &cols {
            let sub: Vec<Vec<&Polynomial<F>>> = rs.iter().map(|&i| cs.iter().map(|&j| m.entry(i, j)).collect()).collect();
            let det = determinant(m.ring(), &sub);
            if !det.is_zero() {
                gens.push(det);
            }
        }
    }
    Ideal::new(m.ring(), gens)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn determinant<F: Field>(ring: &Ring<F>, a: &[Vec<&Polynomial<F>>]) -> Polynomial<F> {
    let n = a.len();
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = Polynomial::zero(ring);
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<&Polynomial<F>>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| *p).collect())
            .collect();
        let term = a[0][j] * &determinant(ring, &minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// All syzygies of entry degree `delta` by solving `Σ a_i f_i = 0` directly.
pub fn syzygies_in_degree<F: Field>(forms: &[Polynomial<F>], delta: u32) -> Vec<[Polynomial<F>; 4]> {
    let ring = forms[0].ring().clone();
    let field = &ring.field;
    let xb = ring.ctx.x_block();
    let d = forms.iter().filter_map(|f| f.total_degree()).max().unwrap_or(0);
    let monos = monomials_of_degree(xb.clone(), delta);
    let targets = monomials_of_degree(xb, delta + d);
    let ncols = 4 * monos.len();
    // Row per target monomial, column per (i, monomial) unknown.
    let mut rows = vec![vec![field.zero(); ncols]; targets.len()];
    for i in 0..4 {
        for (k, m) in monos.iter().enumerate() {
            for (t, c) in forms[i].terms() {
                let prod = t.mul(m);
                let r = targets.iter().position(|x| *x == prod).unwrap();
                rows[r][i * monos.len() + k] = field.add(&rows[r][i * monos.len() + k], c);
            }
        }
    }
    kernel(field, &rows, ncols)
        .into_iter()
        .map(|x| {
            let entry = |i: usize| {
                Polynomial::from_terms(
                    &ring,
                    monos.iter().enumerate().map(|(k, m)| (*m, x[i * monos.len() + k].clone())).collect(),
                )
            };
            [entry(0), entry(1), entry(2), entry(3)]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::VariableContext;
    use crate::poly::PolyRing;

    fn ring() -> Ring<Rationals> {
        PolyRing::new(Rationals, VariableContext::x_only())
    }

    #[test]
    fn koszul_shape_for_a_regular_pair() {
        let r = ring();
        let x: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        let z = Polynomial::zero(&r);
        let forms = vec![x[0].clone(), x[1].clone(), z.clone(), z.clone()];
        let m = syzygy_generators(&forms).unwrap();
        assert!(m.annihilates(&forms));
        let min = minimalize(&m);
        // Koszul pair plus the two unit vectors on the zero forms.
        assert_eq!(min.ncols(), 3);
        assert!(min.module_contains(&[x[1].clone(), x[0].neg(), z.clone(), z.clone()]));
        let dup = min.with_columns(vec![min.columns()[0].clone()]).unwrap();
        assert_eq!(minimalize(&dup).ncols(), 3);
    }

    #[test]
    fn minors_of_zero_and_bad_sizes() {
        let r = ring();
        let z = Polynomial::zero(&r);
        let one = Polynomial::one(&r);
        let m = SyzygyMatrix::new(&r, vec![[one.clone(), z.clone(), z.clone(), z.clone()], [z.clone(), one.clone(), z.clone(), z.clone()]]).unwrap();
        assert!(minors_ideal(&m, 2).unwrap().is_unit());
        assert_eq!(minors_ideal(&m, 3).unwrap_err(), Error::MinorSize { t: 3, cols: 2 });
        let zero = SyzygyMatrix::new(&r, vec![]).unwrap();
        assert!(minors_ideal(&zero, 1).is_err());
    }

    #[test]
    fn errors_on_bad_forms() {
        let r = ring();
        let x: Vec<_> = (0..3).map(|i| Polynomial::var(&r, i)).collect();
        let z = Polynomial::zero(&r);
        assert_eq!(syzygy_generators(&[z.clone(), z.clone(), z.clone(), z.clone()]).unwrap_err(), Error::AllZero);
        assert!(syzygy_generators(&[x[0].clone(), x[1].pow(2), z.clone(), z]).is_err());
    }
}
