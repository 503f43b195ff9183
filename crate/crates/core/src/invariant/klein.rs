use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::basis::{hessian, jacobian, GeneratorSymbolPoly, InvariantBasis};
use super::group::GroupSpec;
use crate::algebra::{rat, CycNum, MPoly, Matrix, Monomial, Rational, Ring};

/// Order of Klein's simple group.
pub const KLEIN_ORDER: u64 = 168;

fn x(i: usize) -> MPoly<Rational> {
    MPoly::var(3, i)
}

/// `X1^3 X2 + X2^3 X3 + X3^3 X1`
pub fn klein_f4() -> MPoly<Rational> {
    x(0).pow(3)
        .mul(&x(1))
        .add(&x(1).pow(3).mul(&x(2)))
        .add(&x(2).pow(3).mul(&x(0)))
}

/// Determinant of the Hessian of `F4`.
pub fn hessian_determinant(f4: &MPoly<Rational>) -> MPoly<Rational> {
    hessian(f4).det()
}

/// Hessian of `f4` bordered by the gradient of `f6`.
pub fn bordered_hessian_determinant(f4: &MPoly<Rational>, f6: &MPoly<Rational>) -> MPoly<Rational> {
    let h = hessian(f4);
    let g: Vec<MPoly<Rational>> = (0..3).map(|i| f6.partial(i)).collect();
    Matrix::from_fn(4, 4, |i, j| match (i < 3, j < 3) {
        (true, true) => h.get(i, j).clone(),
        (true, false) => g[i].clone(),
        (false, true) => g[j].clone(),
        (false, false) => MPoly::zero(3),
    })
    .det()
}

/// `(F4, F6, F14, F21)` built from the determinant formulas.
pub fn klein_invariants() -> [MPoly<Rational>; 4] {
    let f4 = klein_f4();
    let f6 = hessian_determinant(&f4).scale(&rat(1, 54));
    let f14 = bordered_hessian_determinant(&f4, &f6).scale(&rat(1, 9));
    let f21 = jacobian(&[f4.clone(), f6.clone(), f14.clone()])
        .det()
        .scale(&rat(1, 14));
    [f4, f6, f14, f21]
}

fn symbol_poly(terms: &[(i64, [u32; 4])]) -> GeneratorSymbolPoly<Rational> {
    MPoly::from_terms(
        4,
        terms
            .iter()
            .map(|(c, e)| (Monomial::new(e.to_vec()), rat(*c, 1))),
    )
}

/// The degree-42 relation in symbols `(Φ4, Φ6, Φ14, Φ21)` exactly as
/// printed in the classical literature.
///
/// It does not vanish on the invariants built by [`klein_invariants`]: it
/// holds for `-F6` instead. See [`klein_syzygy`].
pub fn printed_syzygy() -> GeneratorSymbolPoly<Rational> {
    symbol_poly(&[
        (2048, [9, 1, 0, 0]),
        (-22016, [6, 3, 0, 0]),
        (-256, [7, 0, 1, 0]),
        (60032, [3, 5, 0, 0]),
        (1088, [4, 2, 1, 0]),
        (-1728, [0, 7, 0, 0]),
        (1008, [1, 4, 1, 0]),
        (88, [2, 1, 2, 0]),
        (1, [0, 0, 3, 0]),
        (-1, [0, 0, 0, 2]),
    ])
}

/// The relation satisfied by [`klein_invariants`]: the printed one with
/// every term of odd degree in `Φ6` negated.
pub fn klein_syzygy() -> GeneratorSymbolPoly<Rational> {
    symbol_poly(&[
        (-2048, [9, 1, 0, 0]),
        (22016, [6, 3, 0, 0]),
        (-256, [7, 0, 1, 0]),
        (-60032, [3, 5, 0, 0]),
        (1088, [4, 2, 1, 0]),
        (1728, [0, 7, 0, 0]),
        (1008, [1, 4, 1, 0]),
        (-88, [2, 1, 2, 0]),
        (1, [0, 0, 3, 0]),
        (-1, [0, 0, 0, 2]),
    ])
}

/// The three generator matrices over `Q(ζ7)` as printed, before
/// normalization.
pub fn klein_generator_matrices() -> Vec<Matrix<CycNum>> {
    let b = |k: i64| CycNum::zeta(7, k);
    let z = CycNum::zero;
    let o = CycNum::one;
    let a = b(4).sub(&b(3));
    let bb = b(2).sub(&b(5));
    let c = b(1).sub(&b(6));
    vec![
        Matrix::from_rows(vec![
            vec![b(1), z(), z()],
            vec![z(), b(2), z()],
            vec![z(), z(), b(4)],
        ]),
        Matrix::from_rows(vec![
            vec![z(), o(), z()],
            vec![z(), z(), o()],
            vec![o(), z(), z()],
        ]),
        Matrix::from_rows(vec![
            vec![a.clone(), bb.clone(), c.clone()],
            vec![bb.clone(), c.clone(), a.clone()],
            vec![c, a, bb],
        ]),
    ]
}

/// `S g S` with `S` the coordinate reversal `X1 <-> X3`.
pub fn reverse_coordinates<K: Ring>(g: &Matrix<K>) -> Matrix<K> {
    let n = g.rows();
    Matrix::from_fn(n, n, |i, j| g.get(n - 1 - i, n - 1 - j).clone())
}

/// Klein's group of order 168 with invariants `F4, F6, F14, F21`, primary
/// subset `(F4, F6, F14)` and the degree-42 syzygy.
///
/// The printed generator matrices fix `X1 X2^3 + X2 X3^3 + X3 X1^3`, the
/// quartic with `X1` and `X3` exchanged, so they are conjugated by that
/// exchange to fix `F4` itself.
pub fn klein_preset() -> (GroupSpec, InvariantBasis) {
    let gens = klein_generator_matrices().iter().map(reverse_coordinates).collect();
    let group = GroupSpec::new(3, gens, KLEIN_ORDER).expect("preset matrices are invertible");
    let names = ["F4", "F6", "F14", "F21"].iter().map(|s| s.to_string()).collect();
    let basis = InvariantBasis::new(
        names,
        klein_invariants().to_vec(),
        vec![4, 6, 14, 21],
        vec![0, 1, 2],
        vec![klein_syzygy()],
    )
    .expect("preset invariants are consistent");
    (group, basis)
}
