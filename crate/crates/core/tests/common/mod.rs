#![allow(dead_code)]

use fibercount::fibers::specialize_syzygies;
use fibercount::input::parse_polynomial;
use fibercount::syzygy::SyzygyMatrix;
use fibercount::*;

pub fn x_ring<F: Field>(field: &F) -> Ring<F> {
    PolyRing::new(field.clone(), VariableContext::x_only())
}

pub fn poly<F: Field>(ring: &Ring<F>, s: &str) -> Polynomial<F> {
    parse_polynomial(ring, s).unwrap()
}

pub fn matrix<F: Field>(ring: &Ring<F>, rows: [[&str; 3]; 4]) -> SyzygyMatrix<F> {
    let cols = (0..3)
        .map(|j| std::array::from_fn(|i| poly(ring, rows[i][j])))
        .collect();
    SyzygyMatrix::new(ring, cols).unwrap()
}

fn scaled<F: Field>(f: &[Polynomial<F>], perm: [usize; 4], sign: [i64; 4]) -> Vec<Polynomial<F>> {
    (0..4).map(|i| f[perm[i]].scale(&f[0].field().from_i64(sign[i]))).collect()
}

// The printed matrices of the examples are syzygies of the following
// reorderings of the forms; the printed point lists use these coordinates.

pub fn example1_printed<F: Field>(field: &F) -> (Parameterization<F>, SyzygyMatrix<F>) {
    let p = catalog::example1(field).unwrap();
    let g = scaled(p.forms(), [3, 2, 1, 0], [-1, 1, -1, 1]);
    let r = x_ring(field);
    let m = matrix(
        &r,
        [
            ["-X2^2 + X3^2", "-X3^2", "0"],
            ["X1^2", "0", "-X3^2"],
            ["0", "X2^2", "0"],
            ["-X3^2", "0", "X1^2"],
        ],
    );
    (Parameterization::new(g).unwrap(), m)
}

pub fn example2_printed<F: Field>(field: &F) -> (Parameterization<F>, SyzygyMatrix<F>) {
    let p = catalog::example2(field).unwrap();
    let f = p.forms();
    let g = vec![f[2].clone(), f[1].clone(), f[3].clone(), &f[0] - &f[3]];
    let r = x_ring(field);
    let m = matrix(
        &r,
        [
            ["-X3", "0", "0"],
            ["X2", "-X2", "0"],
            ["0", "X1 + X2 + X3", "-X2 - X3"],
            ["0", "0", "X1"],
        ],
    );
    (Parameterization::new(g).unwrap(), m)
}

pub fn example4_printed<F: Field>(field: &F, d: u32) -> (Parameterization<F>, SyzygyMatrix<F>) {
    let p = catalog::example4(field, d).unwrap();
    let g = scaled(p.forms(), [0, 1, 2, 3], [1, 1, -1, 1]);
    let r = x_ring(field);
    let e = d - 3;
    let x2 = format!("X2^{e}");
    let x1 = format!("X1^{e}");
    let m = matrix(
        &r,
        [
            ["-X3", "0", "0"],
            ["X2", "X2^2 - X3^2", "0"],
            ["0", "X1^2 - X2^2", &x2],
            ["0", "0", &x1],
        ],
    );
    (Parameterization::new(g).unwrap(), m)
}

pub fn example1_list() -> Vec<(&'static str, String)> {
    vec![
        ("1:0:1:0", "X2^2 - X3^2".into()),
        ("0:1:0:1", "X1^2 - X3^2".into()),
        ("0:1:0:-1", "X1^2 + X3^2".into()),
        ("0:0:1:0", "X2^2".into()),
    ]
}

pub fn example2_list() -> Vec<(&'static str, String)> {
    vec![
        ("1:0:0:0", "X3".into()),
        ("0:1:0:0", "X2".into()),
        ("0:0:0:1", "X1".into()),
        ("0:0:1:-1", "X1 + X2 + X3".into()),
    ]
}

pub fn example4_list(d: u32) -> Vec<(&'static str, String)> {
    let e = d - 3;
    let mut v = vec![
        ("1:0:0:0", "X3".to_string()),
        ("0:0:0:1", if e == 1 { "X1".to_string() } else { format!("X1^{e}") }),
        ("1:1:0:0", "X2 - X3".into()),
        ("1:-1:0:0", "X2 + X3".into()),
    ];
    if e % 2 == 1 {
        v.push(("0:0:1:1", "X1 + X2".into()));
        v.push(("0:0:1:-1", "X1 - X2".into()));
    } else {
        v.push(("0:0:1:-1", "X1^2 - X2^2".into()));
    }
    v
}

/// `h` divides every specialized syzygy and the cofactors have no common
/// curve (their ideal has Krull dimension at most 1).
pub fn h_is_fiber_gcd<F: Field>(m: &SyzygyMatrix<F>, p: &ProjectivePoint<F>, h: &Polynomial<F>) -> bool {
    let ls = specialize_syzygies(m, p);
    let mut cofactors = Vec::new();
    for l in &ls {
        match l.div_exact(h) {
            Some(q) => cofactors.push(q),
            None => return false,
        }
    }
    let cofactors: Vec<_> = cofactors.into_iter().filter(|q| !q.is_zero()).collect();
    if cofactors.is_empty() {
        return false;
    }
    Ideal::new(m.ring(), cofactors).unwrap().dimension() <= 1
}

pub fn sorted(mut v: Vec<(String, String)>) -> Vec<(String, String)> {
    v.sort();
    v
}
