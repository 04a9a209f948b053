//! Buchberger's algorithm over free modules `R^k` with a position-over-term
//! order (position 0 largest). Rank 1 is the ordinary ideal case.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub pos: u16,
    pub mono: Monomial,
}

/// Module element: terms sorted descending under the module order, no zeros.
pub type Vector<F> = Vec<(Term, <F as Field>::Elem)>;

/// Module monomial order: smaller position wins, then the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub order: MonomialOrder,
}

impl ModuleOrder {
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        b.pos.cmp(&a.pos).then_with(|| self.order.cmp(&a.mono, &b.mono))
    }
}

/// Gröbner engine state shared by all routines: field, order and the degree
/// shift of each basis vector `e_k`.
pub struct Engine<'a, F: Field> {
    pub field: &'a F,
    pub order: ModuleOrder,
    pub shifts: Vec<u32>,
}

struct Elem<F: Field> {
    v: Vector<F>,
    sugar: u32,
}

enum Task {
    Gen(usize),
    Pair(usize, usize),
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(field: &'a F, order: MonomialOrder, shifts: Vec<u32>) -> Self {
        assert!(!shifts.is_empty());
        Engine { field, order: ModuleOrder { order }, shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    fn term_degree(&self, t: &Term) -> u32 {
        t.mono.degree() + self.shifts[t.pos as usize]
    }

    /// Sort arbitrary terms into a canonical vector (merges duplicates).
    pub fn normalize(&self, mut terms: Vec<(Term, F::Elem)>) -> Vector<F> {
        let f = self.field;
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        let mut out: Vector<F> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == t {
                    last.1 = f.add(&last.1, &c);
                    continue;
                }
            }
            out.push((t, c));
        }
        out.retain(|(_, c)| !f.is_zero(c));
        out
    }

    pub fn sugar_of(&self, v: &Vector<F>) -> u32 {
        v.iter().map(|(t, _)| self.term_degree(t)).max().unwrap_or(0)
    }

    /// `p - c * m * g`.
    fn sub_scaled(&self, p: &[(Term, F::Elem)], c: &F::Elem, m: &Monomial, g: &[(Term, F::Elem)]) -> Vector<F> {
        let f = self.field;
        let mut out = Vec::with_capacity(p.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < p.len() && j < g.len() {
            let gt = Term { pos: g[j].0.pos, mono: g[j].0.mono.mul(m) };
            match self.order.cmp(&p[i].0, &gt) {
                Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gt, f.neg(&f.mul(c, &g[j].1))));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.sub(&p[i].1, &f.mul(c, &g[j].1));
                    if !f.is_zero(&v) {
                        out.push((gt, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&p[i..]);
        for t in &g[j..] {
            out.push((Term { pos: t.0.pos, mono: t.0.mono.mul(m) }, f.neg(&f.mul(c, &t.1))));
        }
        out
    }

    fn make_monic(&self, v: &mut Vector<F>) {
        if let Some((_, lc)) = v.first() {
            if !self.field.is_one(lc) {
                let inv = self.field.inv(lc).unwrap();
                for (_, c) in v.iter_mut() {
                    *c = self.field.mul(c, &inv);
                }
            }
        }
    }

    fn find_divisor(&self, t: &Term, basis: &[&Vector<F>]) -> Option<usize> {
        basis.iter().position(|g| {
            let lt = &g[0].0;
            lt.pos == t.pos && lt.mono.divides(&t.mono)
        })
    }

    /// Reduce `p` modulo monic `basis`; with `tail` every term is reduced,
    /// otherwise only the leading term. Returns the remainder and its sugar.
    fn reduce_with_sugar(&self, p: Vector<F>, mut sugar: u32, basis: &[&Vector<F>], sugars: &[u32], tail: bool) -> (Vector<F>, u32) {
        let mut rest = p;
        let mut start = 0;
        let mut done: Vector<F> = Vec::new();
        while start < rest.len() {
            let (t, c) = rest[start].clone();
            match self.find_divisor(&t, basis) {
                Some(k) => {
                    let g = basis[k];
                    let m = t.mono.div(&g[0].0.mono);
                    sugar = sugar.max(sugars[k] + m.degree());
                    rest = self.sub_scaled(&rest[start..], &c, &m, g);
                    start = 0;
                }
                None => {
                    if !tail {
                        let mut out = rest.split_off(start);
                        if !done.is_empty() {
                            done.append(&mut out);
                            out = done;
                        }
                        return (out, sugar);
                    }
                    done.push((t, c));
                    start += 1;
                }
            }
        }
        (done, sugar)
    }

    /// Full normal form of `p` with respect to `basis` (need not be monic).
    pub fn normal_form(&self, p: &Vector<F>, basis: &[Vector<F>]) -> Vector<F> {
        let monic: Vec<Vector<F>> = basis
            .iter()
            .filter(|g| !g.is_empty())
            .map(|g| {
                let mut g = g.clone();
                self.make_monic(&mut g);
                g
            })
            .collect();
        let refs: Vec<&Vector<F>> = monic.iter().collect();
        let sugars = vec![0; refs.len()];
        self.reduce_with_sugar(p.clone(), 0, &refs, &sugars, true).0
    }

    fn spair(&self, a: &Elem<F>, b: &Elem<F>) -> (Vector<F>, u32) {
        let la = a.v[0].0.mono;
        let lb = b.v[0].0.mono;
        let l = la.lcm(&lb);
        let ma = l.div(&la);
        let mb = l.div(&lb);
        let f = self.field;
        let left: Vector<F> = a.v.iter().map(|(t, c)| (Term { pos: t.pos, mono: t.mono.mul(&ma) }, c.clone())).collect();
        let s = self.sub_scaled(&left[1..], &f.one(), &mb, &b.v[1..]);
        let sugar = (a.sugar + ma.degree()).max(b.sugar + mb.degree());
        (s, sugar)
    }

    /// Reduced Gröbner basis, monic, sorted by ascending leading term.
    pub fn groebner(&self, input: Vec<Vector<F>>) -> Vec<Vector<F>> {
        let product_criterion = self.rank() == 1;
        let mut basis: Vec<Elem<F>> = Vec::new();
        let mut queue: BTreeMap<(u32, u64), Task> = BTreeMap::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        let mut seq = 0u64;
        let gens: Vec<Vector<F>> = input.into_iter().filter(|v| !v.is_empty()).collect();
        for (k, g) in gens.iter().enumerate() {
            queue.insert((self.sugar_of(g), seq), Task::Gen(k));
            seq += 1;
        }
        while let Some((&key, _)) = queue.iter().next() {
            let task = queue.remove(&key).unwrap();
            let (poly, sugar) = match task {
                Task::Gen(k) => (gens[k].clone(), self.sugar_of(&gens[k])),
                Task::Pair(i, j) => {
                    pending.remove(&(i, j));
                    if self.chain_criterion(&basis, &pending, i, j) {
                        continue;
                    }
                    self.spair(&basis[i], &basis[j])
                }
            };
            let refs: Vec<&Vector<F>> = basis.iter().map(|e| &e.v).collect();
            let sugars: Vec<u32> = basis.iter().map(|e| e.sugar).collect();
            let (mut h, sugar) = self.reduce_with_sugar(poly, sugar, &refs, &sugars, true);
            if h.is_empty() {
                continue;
            }
            self.make_monic(&mut h);
            let n = basis.len();
            let lt = h[0].0;
            basis.push(Elem { v: h, sugar });
            for i in 0..n {
                let gt = basis[i].v[0].0;
                if gt.pos != lt.pos {
                    continue;
                }
                if product_criterion && gt.mono.is_coprime(&lt.mono) {
                    continue;
                }
                let l = gt.mono.lcm(&lt.mono);
                let s = (basis[i].sugar + l.div(&gt.mono).degree()).max(sugar + l.div(&lt.mono).degree());
                queue.insert((s, seq), Task::Pair(i, n));
                seq += 1;
                pending.insert((i, n));
            }
        }
        self.interreduce(basis.into_iter().map(|e| e.v).collect())
    }

    fn chain_criterion(&self, basis: &[Elem<F>], pending: &HashSet<(usize, usize)>, i: usize, j: usize) -> bool {
        let ti = basis[i].v[0].0;
        let tj = basis[j].v[0].0;
        let l = ti.mono.lcm(&tj.mono);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        basis.iter().enumerate().any(|(k, e)| {
            let tk = e.v[0].0;
            k != i
                && k != j
                && tk.pos == ti.pos
                && tk.mono.divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        })
    }

    /// Minimalize and tail-reduce a Gröbner basis.
    pub fn interreduce(&self, elems: Vec<Vector<F>>) -> Vec<Vector<F>> {
        let mut elems: Vec<Vector<F>> = elems.into_iter().filter(|v| !v.is_empty()).collect();
        for e in elems.iter_mut() {
            self.make_monic(e);
        }
        elems.sort_by(|a, b| self.order.cmp(&a[0].0, &b[0].0));
        let mut keep: Vec<Vector<F>> = Vec::new();
        for e in elems {
            let t = e[0].0;
            if keep.iter().any(|g| g[0].0.pos == t.pos && g[0].0.mono.divides(&t.mono)) {
                continue;
            }
            keep.push(e);
        }
        let mut out = Vec::with_capacity(keep.len());
        for k in 0..keep.len() {
            let others: Vec<&Vector<F>> = keep.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g).collect();
            let sugars = vec![0; others.len()];
            let lead = keep[k][0].clone();
            let (tail, _) = self.reduce_with_sugar(keep[k][1..].to_vec(), 0, &others, &sugars, true);
            let mut v = vec![lead];
            v.extend(tail);
            out.push(v);
        }
        out
    }
}

/// Convert a polynomial into a rank-1 vector at position `pos`.
pub fn embed<F: Field>(engine: &Engine<F>, p: &Polynomial<F>, pos: u16) -> Vector<F> {
    engine.normalize(p.terms().iter().map(|(m, c)| (Term { pos, mono: *m }, c.clone())).collect())
}

/// Component `pos` of a vector as a polynomial.
pub fn component<F: Field>(ring: &Ring<F>, v: &Vector<F>, pos: u16) -> Polynomial<F> {
    Polynomial::from_terms(ring, v.iter().filter(|(t, _)| t.pos == pos).map(|(t, c)| (t.mono, c.clone())).collect())
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn ideal_basis<F: Field>(ring: &Ring<F>, gens: &[Polynomial<F>], order: MonomialOrder) -> Vec<Polynomial<F>> {
    let engine = Engine::new(&ring.field, order, vec![0]);
    let input = gens.iter().map(|g| embed(&engine, g, 0)).collect();
    engine.groebner(input).iter().map(|v| component(ring, v, 0)).collect()
}

/// Normal form of `p` modulo a Gröbner basis under `order`.
pub fn reduce<F: Field>(p: &Polynomial<F>, basis: &[Polynomial<F>], order: MonomialOrder) -> Polynomial<F> {
    let ring = p.ring();
    let engine = Engine::new(&ring.field, order, vec![0]);
    let b: Vec<Vector<F>> = basis.iter().map(|g| embed(&engine, g, 0)).collect();
    component(ring, &engine.normal_form(&embed(&engine, p, 0), &b), 0)
}

/// Generators of the syzygy module of `fs` (entries indexed like `fs`),
/// read off a position-over-term basis of `(f_i e_0 + e_{i+1})`.
pub fn syzygy_basis<F: Field>(ring: &Ring<F>, fs: &[Polynomial<F>]) -> Vec<Vec<Polynomial<F>>> {
    let degs: Vec<u32> = fs.iter().map(|f| f.total_degree().unwrap_or(0)).collect();
    // e_0 carries shift 0; e_{i+1} carries deg f_i so every generator is homogeneous.
    let mut shifts = vec![0];
    shifts.extend(degs.iter().copied());
    let engine = Engine::new(&ring.field, MonomialOrder::Grevlex, shifts);
    let input = fs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut v = embed(&engine, f, 0);
            v.push((Term { pos: (i + 1) as u16, mono: Monomial::one() }, ring.field.one()));
            engine.normalize(v)
        })
        .collect();
    engine
        .groebner(input)
        .into_iter()
        .filter(|v| v[0].0.pos >= 1)
        .map(|v| (0..fs.len()).map(|i| component(ring, &v, (i + 1) as u16)).collect())
        .collect()
}

/// Generators of `I : J` via one module computation.
pub fn colon<F: Field>(ring: &Ring<F>, i_gens: &[Polynomial<F>], j_gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let k = j_gens.len();
    let degs: Vec<u32> = j_gens.iter().map(|g| g.total_degree().unwrap_or(0)).collect();
    let top = degs.iter().copied().max().unwrap_or(0);
    let mut shifts: Vec<u32> = degs.iter().map(|&d| top - d).collect();
    shifts.push(top);
    let engine = Engine::new(&ring.field, MonomialOrder::Grevlex, shifts);
    let mut input = Vec::new();
    let mut u: Vec<(Term, F::Elem)> = Vec::new();
    for (j, g) in j_gens.iter().enumerate() {
        u.extend(embed(&engine, g, j as u16));
        for f in i_gens {
            input.push(embed(&engine, f, j as u16));
        }
    }
    u.push((Term { pos: k as u16, mono: Monomial::one() }, ring.field.one()));
    input.push(engine.normalize(u));
    engine
        .groebner(input)
        .into_iter()
        .filter(|v| v[0].0.pos as usize == k)
        .map(|v| component(ring, &v, k as u16))
        .collect()
}

/// Generators of `I ∩ J`.
pub fn intersection<F: Field>(ring: &Ring<F>, i_gens: &[Polynomial<F>], j_gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let engine = Engine::new(&ring.field, MonomialOrder::Grevlex, vec![0, 0, 0]);
    let one = ring.field.one();
    let mut input = vec![engine.normalize(vec![
        (Term { pos: 0, mono: Monomial::one() }, one.clone()),
        (Term { pos: 1, mono: Monomial::one() }, one.clone()),
        (Term { pos: 2, mono: Monomial::one() }, one),
    ])];
    input.extend(i_gens.iter().map(|f| embed(&engine, f, 0)));
    input.extend(j_gens.iter().map(|g| embed(&engine, g, 1)));
    engine
        .groebner(input)
        .into_iter()
        .filter(|v| v[0].0.pos == 2)
        .map(|v| component(ring, &v, 2))
        .collect()
}

/// Module membership: does the column `v` lie in the submodule spanned by `cols`?
pub fn module_contains<F: Field>(ring: &Ring<F>, cols: &[Vec<Polynomial<F>>], v: &[Polynomial<F>]) -> bool {
    let rank = v.len();
    let engine = Engine::new(&ring.field, MonomialOrder::Grevlex, vec![0; rank]);
    let to_vec = |col: &[Polynomial<F>]| {
        let mut terms = Vec::new();
        for (i, p) in col.iter().enumerate() {
            terms.extend(embed(&engine, p, i as u16));
        }
        engine.normalize(terms)
    };
    let basis = engine.groebner(cols.iter().map(|c| to_vec(c)).collect());
    engine.normal_form(&to_vec(v), &basis).is_empty()
}
