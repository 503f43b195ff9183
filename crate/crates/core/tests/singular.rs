use schwarz_core::algebra::{rat, RamifiedFunction, RatFunc, Rational, Ring, UPoly};
use schwarz_core::builder::{construct_ode, ConstructOptions, OdeResult};
use schwarz_core::invariant::klein_preset;
use schwarz_core::singular::*;
use schwarz_core::Error;

type F = RamifiedFunction<Rational>;

fn poly(c: &[i64]) -> UPoly<Rational> {
    UPoly::from_coeffs(c.iter().map(|&v| rat(v, 1)).collect())
}

fn q(scale: Rational, num: &[i64], den: &[i64]) -> F {
    F::from_z(RatFunc::new(poly(num).mul_scalar(&scale), poly(den)).unwrap())
}

fn ode(c: Vec<F>) -> OdeResult<Rational> {
    OdeResult::new(c)
}

fn locations(o: &OdeResult<Rational>) -> Vec<Location> {
    singular_points(o).unwrap().into_iter().map(|p| p.location).collect()
}

fn hurwitz() -> OdeResult<Rational> {
    let (group, basis) = klein_preset();
    let f = [F::zero(), F::power_of_z(rat(1, 1), -4, 1), F::power_of_z(rat(-12, 1), -9, 1)];
    let args: Vec<_> = f.into_iter().map(Some).chain([None]).collect();
    construct_ode(&basis, Some(&group), &args, ConstructOptions::default(), None).unwrap()
}

#[test]
fn trivial_equations() {
    assert_eq!(locations(&ode(vec![F::zero(), F::zero()])), [Location::Infinity]);
    // y' = y/z
    let o = ode(vec![q(rat(-1, 1), &[1], &[0, 1])]);
    assert_eq!(locations(&o), [Location::Finite(rat(0, 1)), Location::Infinity]);
    let flat = ode(vec![F::zero(), F::zero()]);
    assert_eq!(indicial_exponents(&flat, &Location::Finite(rat(0, 1))).unwrap(), [rat(0, 1), rat(1, 1)]);
}

#[test]
fn euler_equation() {
    // z^2 y'' + z y' - y/4 = 0
    let o = ode(vec![q(rat(-1, 4), &[1], &[0, 0, 1]), q(rat(1, 1), &[1], &[0, 1])]);
    let e = indicial_exponents(&o, &Location::Finite(rat(0, 1))).unwrap();
    assert_eq!(e, [rat(-1, 2), rat(1, 2)]);
    // At infinity the equation is again of Euler type.
    let e = indicial_exponents(&o, &Location::Infinity).unwrap();
    assert_eq!(e, [rat(-1, 2), rat(1, 2)]);
}

#[test]
fn typed_failures() {
    let irregular = ode(vec![q(rat(1, 1), &[1], &[0, 0, 0, 1]), F::zero()]);
    assert!(matches!(
        indicial_exponents(&irregular, &Location::Finite(rat(0, 1))),
        Err(Error::IrregularSingularity { .. })
    ));
    let irrational = ode(vec![q(rat(-2, 1), &[1], &[0, 0, 1]), q(rat(1, 1), &[1], &[0, 1])]);
    assert!(matches!(
        indicial_exponents(&irrational, &Location::Finite(rat(0, 1))),
        Err(Error::NonRationalExponents { .. })
    ));
    let log = ode(vec![F::zero(), q(rat(1, 1), &[1], &[0, 1])]);
    let e = indicial_exponents(&log, &Location::Finite(rat(0, 1))).unwrap();
    assert_eq!(exponent_normal_form(&e), Err(Error::RepeatedExponents));
    let ramified = ode(vec![F::power_of_z(rat(1, 1), 1, 2), F::zero()]);
    assert!(matches!(singular_points(&ramified), Err(Error::Scope(_))));
}

#[test]
fn conjugate_points_share_data() {
    // y'' + z/(z^2+1) y' = 0: residue 1/2 at both z = ±i.
    let o = ode(vec![F::zero(), q(rat(1, 1), &[0, 1], &[1, 0, 1])]);
    let locs = locations(&o);
    assert_eq!(locs[0], Location::Conjugates(poly(&[1, 0, 1])));
    assert_eq!(locs[0].count(), 2);
    assert_eq!(indicial_exponents(&o, &locs[0]).unwrap(), [rat(0, 1), rat(1, 2)]);
}

#[test]
fn hurwitz_geometry() {
    let o = hurwitz();
    let opts = AnalysisOptions { m: 1, group_order: 168, ..Default::default() };
    let report = analyze(&o, &opts).unwrap();
    let locs: Vec<_> = report.points.iter().map(|p| p.location.clone()).collect();
    assert_eq!(locs, [Location::Finite(rat(0, 1)), Location::Finite(rat(1, 1)), Location::Infinity]);
    let raw: Vec<_> = report.points.iter().map(|p| p.exponents.raw.clone()).collect();
    assert_eq!(raw[0], [rat(-2, 3), rat(-1, 3), rat(0, 1)]);
    assert_eq!(raw[1], [rat(0, 1), rat(1, 2), rat(1, 1)]);
    assert_eq!(raw[2], [rat(9, 14), rat(11, 14), rat(15, 14)]);
    let r: Vec<u32> = report.points.iter().map(|p| p.exponents.r).collect();
    assert_eq!(r, [3, 2, 7]);
    assert_eq!(report.euler_characteristic, rat(-4, 1));
    assert_eq!(report.genus, Some(3));
    assert_eq!(report.exponent_sum, rat(-1, 42));
    assert_eq!(report.degree, Some(rat(4, 1)));
    assert!(report.fuchs.holds());
    assert!(report.warnings.is_empty());
    assert!(report.points.iter().all(|p| !p.classification.apparent && p.classification.local.is_some()));
}

#[test]
fn degree_scale_calibration() {
    let o = hurwitz();
    let base = AnalysisOptions { m: 1, group_order: 168, ..Default::default() };
    let by_order = analyze(&o, &AnalysisOptions { degree_scale: DegreeScale::GroupOrder, ..base.clone() }).unwrap();
    let by_genus = analyze(&o, &AnalysisOptions { degree_scale: DegreeScale::Genus, ..base }).unwrap();
    assert_eq!(by_order.degree, Some(rat(4, 1)));
    assert_eq!(by_genus.degree, Some(rat(1, 14)));
}

#[test]
fn printed_hurwitz_has_the_same_geometry() {
    // The classical normalization of the same equation.
    let z_z1 = [0, -1, 1];
    let z2_z1_2 = [0, 0, 1, -2, 1];
    let o = ode(vec![
        q(rat(1, 24696), &[-40805, 57024], &z2_z1_2),
        q(rat(1, 252), &[560, -2963, 2592], &z2_z1_2),
        q(rat(1, 1), &[-4, 7], &z_z1),
    ]);
    let report = analyze(&o, &AnalysisOptions { m: 1, group_order: 168, ..Default::default() }).unwrap();
    let r: Vec<u32> = report.points.iter().map(|p| p.exponents.r).collect();
    assert_eq!(r, [3, 2, 7]);
    assert_eq!(report.euler_characteristic, rat(-4, 1));
    assert_eq!(report.degree, Some(rat(4, 1)));
    assert!(report.fuchs.holds());
}

#[test]
fn beukers_classes_satisfy_fuchs() {
    let (group, basis) = klein_preset();
    let class3 = [F::power_of_z(rat(1, 1), -1, 1), F::zero(), F::power_of_z(rat(16, 1), -3, 1)];
    let args: Vec<_> = class3.into_iter().map(Some).chain([None]).collect();
    let o = construct_ode(&basis, Some(&group), &args, ConstructOptions::default(), None).unwrap();
    let report = analyze(&o, &AnalysisOptions { m: 1, group_order: 168, ..Default::default() }).unwrap();
    assert!(report.fuchs.holds());
    assert_eq!(report.points.len(), 3);
}
