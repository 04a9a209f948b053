//! Cross-checks against independent computations: plain linear algebra over
//! the coefficient spaces and brute-force evaluation over small prime fields.

use std::collections::BTreeSet;

use fibercount::experiment::random_parameterization;
use fibercount::fibers::*;
use fibercount::hilbert::hilbert_function;
use fibercount::monomial::monomials_of_degree;
use fibercount::syzygy::syzygies_in_degree;
use fibercount::*;

/// Rank by Gaussian elimination.
fn rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else { continue };
        rows.swap(r, piv);
        let inv = field.inv(&rows[r][c]).unwrap();
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][c]) {
                let f = field.mul(&rows[i][c], &inv);
                for k in c..ncols {
                    let t = field.mul(&f, &rows[r][k]);
                    rows[i][k] = field.sub(&rows[i][k], &t);
                }
            }
        }
        r += 1;
    }
    r
}

/// Coefficient vector of a form of degree `deg` in the monomial basis.
fn coefficients<F: Field>(p: &Polynomial<F>, basis: &[Monomial]) -> Vec<F::Elem> {
    basis.iter().map(|m| p.coeff(m)).collect()
}

/// `dim_k I_mu` as the rank of all monomial multiples of the generators.
fn ideal_dim_by_rank<F: Field>(gens: &[Polynomial<F>], mu: u32) -> usize {
    let ring = gens[0].ring();
    let field = ring.field.clone();
    let target = monomials_of_degree(0..3, mu);
    let mut rows = Vec::new();
    for g in gens {
        let Some(dg) = g.total_degree() else { continue };
        if dg > mu {
            continue;
        }
        for m in monomials_of_degree(0..3, mu - dg) {
            rows.push(coefficients(&g.mul_term(&m, &field.one()), &target));
        }
    }
    if rows.is_empty() {
        0
    } else {
        rank(&field, rows)
    }
}

fn binom2(n: u32) -> usize {
    ((n + 2) * (n + 1) / 2) as usize
}

fn instances(p: u32, d: u32, want: usize) -> Vec<Parameterization<PrimeField>> {
    (0..200u64).filter_map(|s| random_parameterization(p, d, 1000 * d as u64 + s).ok()).take(want).collect()
}

#[test]
fn hilbert_function_matches_rank() {
    let q = Rationals;
    let mut params: Vec<_> = vec![catalog::example1(&q).unwrap(), catalog::example2(&q).unwrap()];
    params.push(catalog::example4(&q, 5).unwrap());
    for p in &params {
        for ideal in [p.ideal(), p.saturation()] {
            for mu in 0..=2 * p.degree() + 1 {
                let by_rank = binom2(mu) - ideal_dim_by_rank(ideal.generators(), mu);
                assert_eq!(hilbert_function(ideal, mu as i64) as usize, by_rank, "mu = {}", mu);
            }
        }
    }
    for p in instances(101, 4, 3) {
        for mu in 0..=8 {
            let by_rank = binom2(mu) - ideal_dim_by_rank(p.forms(), mu);
            assert_eq!(hilbert_function(p.ideal(), mu as i64) as usize, by_rank);
        }
    }
}

#[test]
fn syzygy_module_matches_linear_algebra() {
    let q = Rationals;
    let mut params: Vec<Parameterization<Rationals>> = vec![catalog::example1(&q).unwrap(), catalog::example2(&q).unwrap()];
    params.push(catalog::example4(&q, 4).unwrap());
    for p in &params {
        check_syzygies(p);
    }
    for p in instances(101, 3, 2).iter().chain(instances(101, 4, 2).iter()) {
        check_syzygies(p);
    }
}

fn check_syzygies<F: Field>(p: &Parameterization<F>) {
    let d = p.degree();
    let field = p.field().clone();
    let m = p.syzygies();
    assert!(m.annihilates(p.forms()));
    for delta in 0..=d {
        // kernel of (a_i) -> Σ a_i f_i on degree-delta entries
        let expected = 4 * binom2(delta) - ideal_dim_by_rank(p.forms(), delta + d);
        assert_eq!(syzygies_in_degree(p.forms(), delta).len(), expected, "delta = {}", delta);
        // span of the degree-delta multiples of the generators
        let basis = monomials_of_degree(0..3, delta);
        let mut rows = Vec::new();
        for col in m.columns() {
            let Some(c) = col.iter().filter_map(|e| e.total_degree()).max() else { continue };
            if c > delta {
                continue;
            }
            for mono in monomials_of_degree(0..3, delta - c) {
                rows.push(
                    col.iter()
                        .flat_map(|e| coefficients(&e.mul_term(&mono, &field.one()), &basis))
                        .collect::<Vec<_>>(),
                );
            }
        }
        let got = if rows.is_empty() { 0 } else { rank(&field, rows) };
        assert_eq!(got, expected, "delta = {}", delta);
    }
}

fn all_points(field: &PrimeField) -> Vec<[u32; 3]> {
    let p = field.modulus();
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            out.push([1, a, b]);
        }
        out.push([0, 1, a]);
    }
    out.push([0, 0, 1]);
    out
}

#[test]
fn fiber_trichotomy_against_evaluation() {
    for p in instances(7, 3, 3).into_iter().chain(instances(7, 4, 2)) {
        let field = *p.field();
        let plane = all_points(&field);
        let base: Vec<bool> = plane.iter().map(|x| p.forms().iter().all(|f| f.evaluate(x) == 0)).collect();
        // image of every F_7-point outside the base locus
        for (x, in_base) in plane.iter().zip(&base) {
            if *in_base {
                continue;
            }
            let y: [u32; 4] = std::array::from_fn(|i| p.forms()[i].evaluate(x));
            let pt = ProjectivePoint::new(&field, y).unwrap();
            let rep = fiber_at_point(&p, &pt, Hypotheses::Enforce).unwrap();
            assert_ne!(rep.kind, FiberKind::Empty);
            let ls = specialize_syzygies(p.syzygies(), &pt);
            assert!(ls.iter().all(|l| l.evaluate(x) == 0));
        }
        // a finite fiber has at most `degree` rational points
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        for _ in 0..30 {
            let c: [u32; 4] = std::array::from_fn(|_| field.random_elem(&mut rng));
            let Ok(pt) = ProjectivePoint::new(&field, c) else { continue };
            let ls = specialize_syzygies(p.syzygies(), &pt);
            let zeros = plane.iter().filter(|x| ls.iter().all(|l| l.evaluate(*x) == 0)).count() as u64;
            match fiber_at_point(&p, &pt, Hypotheses::Enforce).unwrap().kind {
                FiberKind::Empty => assert_eq!(zeros, 0),
                FiberKind::ZeroDimensional { degree } => assert!(zeros <= degree),
                FiberKind::OneDimensional { h, .. } => {
                    assert!(plane.iter().filter(|x| h.evaluate(*x) == 0).all(|x| ls.iter().all(|l| l.evaluate(x) == 0)));
                }
            }
        }
    }
}

fn summary<F: Field>(field: &F, l: &OneDimLocus<F>) -> BTreeSet<(String, String)> {
    l.entries.iter().map(|e| (e.point.format(field), e.h.to_string())).collect()
}

#[test]
fn scan_agrees_with_symbolic_search() {
    let mut checked = 0;
    for (p, d) in [(5, 3), (7, 3), (7, 4)] {
        for param in instances(p, d, 3) {
            let sym = one_dim_locus(&param, 9, Hypotheses::Enforce).unwrap();
            let scan = exhaustive_scan(&param, 1).unwrap();
            let ext = ExtensionField::new(p as u64, 1).unwrap();
            assert_eq!(summary(param.field(), &sym), summary(&ext, &scan));
            for (i, a) in sym.entries.iter().enumerate() {
                for b in &sym.entries[i + 1..] {
                    assert!(gcd::gcd2(&a.h, &b.h).is_constant());
                }
            }
            checked += 1;
        }
    }
    assert!(checked >= 6);
}
