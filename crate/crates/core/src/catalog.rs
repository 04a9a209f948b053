//! Reference parameterizations with known fiber structure.

use crate::error::Result;
use crate::field::Field;
use crate::input::parse_polynomial;
use crate::monomial::VariableContext;
use crate::param::Parameterization;
use crate::poly::PolyRing;

fn build<F: Field>(field: &F, forms: [&str; 4]) -> Result<Parameterization<F>> {
    let ring = PolyRing::new(field.clone(), VariableContext::x_only());
    let fs = forms.iter().map(|s| parse_polynomial(&ring, s)).collect::<Result<Vec<_>>>()?;
    Parameterization::new(fs)
}

/// Sextics with `indeg((I^2)^sat) = 8` and four curves contracted to points.
pub fn example1<F: Field>(field: &F) -> Result<Parameterization<F>> {
    build(
        field,
        [
            "X2^2*X3^4 - X2^4*X3^2",
            "X1^4*X3^2 - X3^6",
            "X1^2*X2^2*X3^2 - X1^2*X2^4",
            "X1^4*X2^2 - X2^2*X3^4",
        ],
    )
}

/// Cubics through the six vertices of a complete quadrilateral-like configuration.
pub fn example2<F: Field>(field: &F) -> Result<Parameterization<F>> {
    build(
        field,
        [
            "X2*X3*(X1 + X2 + X3)",
            "X1*X3*(X1 + X2 + X3)",
            "X1*X2*(X1 + X2 + X3)",
            "X1*X2*X3",
        ],
    )
}

/// Cubics whose base locus is not locally a complete intersection.
pub fn example3<F: Field>(field: &F) -> Result<Parameterization<F>> {
    build(
        field,
        [
            "(X1 + X2 + X3)*(X1 + 2*X2 + 2*X3)*(X2 + X3)",
            "X1*(X1 - X2 - X3)*(X2 + X3)",
            "X1*(X1 + X2 + X3)*(X1 + 2*X2 + 2*X3)",
            "X1*(X1 + X2 + X3)*(X1 - X2 - X3)",
        ],
    )
}

/// The degree-`d` family (`d ≥ 4`) with `Σ deg h_p = d + 2`.
pub fn example4<F: Field>(field: &F, d: u32) -> Result<Parameterization<F>> {
    assert!(d >= 4, "family defined for d >= 4");
    let e = d - 3;
    let f0 = format!("X1^{e}*X2*(X1^2 - X2^2)");
    let f1 = format!("X1^{e}*X3*(X1^2 - X2^2)");
    let f2 = format!("X1^{e}*X3*(X2^2 - X3^2)");
    let f3 = format!("X2^{e}*X3*(X2^2 - X3^2)");
    build(field, [&f0, &f1, &f2, &f3])
}

/// Monomial cubics whose base scheme saturates to `(X1^2, X2^2)`.
pub fn monomial_cubics<F: Field>(field: &F) -> Result<Parameterization<F>> {
    build(field, ["X1^3", "X2^3", "X1^2*X3", "X2^2*X3"])
}
