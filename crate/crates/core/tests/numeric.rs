use std::time::Instant;

use schwarz_core::algebra::{rat, MPoly, RamifiedFunction, RatFunc, Rational, Ring, UPoly};
use schwarz_core::builder::{construct_ode, ConstructOptions, OdeResult};
use schwarz_core::invariant::{klein_preset, InvariantBasis};
use schwarz_core::numeric::*;

type F = RamifiedFunction<Rational>;

fn poly(c: &[i64]) -> UPoly<Rational> {
    UPoly::from_coeffs(c.iter().map(|&v| rat(v, 1)).collect())
}

fn zpow(c: i64, p: i64, r: u32) -> F {
    F::power_of_z(rat(c, 1), p, r)
}

fn golden() -> Vec<(&'static str, [F; 3])> {
    vec![
        ("hurwitz", [F::zero(), zpow(1, -4, 1), zpow(-12, -9, 1)]),
        ("class 3", [zpow(1, -1, 1), F::zero(), zpow(16, -3, 1)]),
        (
            "class 4.1",
            [zpow(8, 3, 7), zpow(3, 8, 7), F::from_z(RatFunc::from_poly(poly(&[-16384, 9216, -1008, 1]).mul_scalar(&rat(-4, 1))))],
        ),
        (
            "class 4.2",
            [
                zpow(-32, 3, 7),
                zpow(1, 1, 7).mul(&F::from_z(RatFunc::from_poly(poly(&[-128, 5])))),
                F::from_z(RatFunc::from_poly(poly(&[-16384, 591872, -14624, 1]).mul_scalar(&rat(4, 1)))),
            ],
        ),
    ]
}

fn run(basis: &InvariantBasis, f: &[F; 3]) -> (OdeResult<Rational>, Vec<Option<F>>) {
    let (group, _) = klein_preset();
    let args: Vec<_> = f.iter().cloned().map(Some).chain([None]).collect();
    let ode = construct_ode(basis, Some(&group), &args, ConstructOptions::default(), None).unwrap();
    (ode, args)
}

#[test]
fn golden_runs_verify_and_are_sensitive() {
    let (_, basis) = klein_preset();
    let config = NumericConfig::default();
    for (name, f) in golden() {
        let start = Instant::now();
        let (ode, args) = run(&basis, &f);
        let report = verify(&basis, &ode, &args, &config).unwrap();
        assert!(report.verified, "{name}: residual {}", report.residual);
        assert!(report.ode_residual_at_base < 1e-8, "{name}: {}", report.ode_residual_at_base);
        assert!(report.initial.residual < 1e-12);
        // The omitted degree-21 generator is checked through its square.
        assert!(report.per_generator[3].is_some());
        for i in 0..3 {
            let mut c = ode.coeffs().to_vec();
            c[i] = c[i].mul(&F::from_z(RatFunc::constant(rat(101, 100))));
            let bad = verify(&basis, &OdeResult::new(c), &args, &config).unwrap();
            assert!(bad.residual > config.tolerance, "{name}: corrupting c{i} gave {}", bad.residual);
        }
        assert!(start.elapsed().as_secs() < 120);
    }
}

#[test]
fn homotopic_paths_agree() {
    let (_, basis) = klein_preset();
    let (ode, args) = run(&basis, &golden()[0].1);
    let tol = 1e-8;
    let a = default_path();
    let b = vec![a[0], a[0] + num_complex::Complex64::new(1.0, 0.0), *a.last().unwrap()];
    let s = 1;
    let report = verify(&basis, &ode, &args, &NumericConfig { tolerance: tol, ..Default::default() }).unwrap();
    let x0 = report.initial.x.clone();
    // Same initial data, two paths with the same endpoints.
    let sys = NumSystem::new(&basis.primary_generators());
    let n = 3;
    let f_taylor: Vec<Vec<num_complex::Complex64>> = (0..3)
        .map(|i| {
            let mut d = args[i].clone().unwrap();
            (0..n)
                .map(|k| {
                    let v = NumFunc::new(&d, s).eval(a[0]) / (1..=k).product::<usize>() as f64;
                    d = d.derivative();
                    v
                })
                .collect()
        })
        .collect();
    let series = taylor_solution(&sys, &x0, &f_taylor, n).unwrap();
    let mut state = Vec::new();
    for row in &series {
        state.extend(row.iter().enumerate().map(|(k, v)| v * (1..=k).product::<usize>() as f64));
    }
    let ta = integrate(&ode, s, &a, state.clone(), tol / 100.0).unwrap();
    let tb = integrate(&ode, s, &b, state, tol / 100.0).unwrap();
    let ea = &ta.samples.last().unwrap().state;
    let eb = &tb.samples.last().unwrap().state;
    let diff = ea.iter().zip(eb).map(|(x, y)| (x - y).norm() / (1.0 + x.norm())).fold(0.0, f64::max);
    assert!(diff < 10.0 * tol, "endpoint mismatch {diff}");
}

#[test]
fn single_variable_sanity() {
    // F = X^3, f = z: y = z^(1/3) solves y' = y / (3z).
    let x3 = MPoly::from_terms(1, [(schwarz_core::algebra::Monomial::new(vec![3]), rat(1, 1))]);
    let basis = InvariantBasis::new(vec!["F".into()], vec![x3], vec![3], vec![0], vec![]).unwrap();
    let f = F::z();
    let ode = construct_ode(&basis, None, &[Some(f.clone())], ConstructOptions::default(), None).unwrap();
    assert_eq!(ode.coeff(0), &F::power_of_z(rat(-1, 3), -1, 1));
    let config = NumericConfig { tolerance: 1e-10, ..Default::default() };
    let report = verify(&basis, &ode, &[Some(f)], &config).unwrap();
    assert!(report.verified, "{}", report.residual);
}
