//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria that cannot hold as stated are reported as FAIL with the reason
//! and do not stop the run; every other criterion must pass.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::{prop_assert, prop_assert_eq, prop_assume};
use proptest::strategy::Strategy as _;
use proptest::test_runner::{Config, TestRunner};
use schwarz_cli::commands::build;
use schwarz_cli::problem::{parse_problem, ProblemSpec};
use schwarz_cli::render::Equation;
use schwarz_core::algebra::{
    nullspace_cofactor, rat, CycNum, Field, MPoly, Matrix, Monomial, RamifiedFunction, RatFunc, Rational, Ring, UPoly,
};
use schwarz_core::builder::{construct_ode, ConstructOptions, OdeResult, Strategy};
use schwarz_core::invariant::{
    bordered_hessian_determinant, check_invariance, hessian_determinant, jacobian, klein_f4, klein_preset,
    klein_syzygy, printed_syzygy, InvariantBasis, Rewriter,
};
use schwarz_core::numeric::{verify, NumericConfig};
use schwarz_core::singular::{analyze, AnalysisOptions, Location};

/// Residual bound for the numeric check.
const TOLERANCE: f64 = 1e-6;
/// Multiplier applied to one coefficient in the sensitivity check.
const CORRUPTION: (i64, i64) = (101, 100);
const CASES: u32 = 1000;

type F = RamifiedFunction<Rational>;
type R = RatFunc<Rational>;
type K = RatFunc<Rational>;

enum Status {
    Pass,
    /// Not attainable as stated; reported but not fatal.
    Known,
    Fail,
}

struct Line {
    id: u32,
    title: &'static str,
    status: Status,
    detail: String,
}

fn problem(name: &str) -> ProblemSpec {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "problems", name].iter().collect();
    parse_problem(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn rational_ode(name: &str) -> (OdeResult<Rational>, Duration) {
    let start = Instant::now();
    match build(&problem(name), Strategy::Frame).unwrap() {
        Equation::Rational(ode) => (ode, start.elapsed()),
        Equation::Parametric(..) => panic!("{name} has a parameter"),
    }
}

fn poly(c: &[i64]) -> UPoly<Rational> {
    UPoly::from_coeffs(c.iter().map(|&v| rat(v, 1)).collect())
}

/// `scale * num / den` in `z`.
fn q(scale: Rational, num: &[i64], den: &[i64]) -> R {
    R::new(poly(num).mul_scalar(&scale), poly(den)).unwrap()
}

fn in_z(ode: &OdeResult<Rational>) -> Vec<R> {
    ode.coeffs().iter().map(|c| c.in_z().expect("descends").clone()).collect()
}

const Z_Z1: [i64; 3] = [0, -1, 1];
const Z2_Z1: [i64; 4] = [0, 0, -1, 1];
const Z2_Z1_2: [i64; 5] = [0, 0, 1, -2, 1];

/// Coefficients of `L(g u)/g` for `L` monic of order 3 and `g'/g = s`.
fn gauge(c: &[R], s: &R) -> Vec<R> {
    let mut full = c.to_vec();
    full.push(R::one());
    let mut h = vec![R::one()];
    for j in 0..3 {
        let next = h[j].derivative().add(&s.mul(&h[j]));
        h.push(next);
    }
    let binom = |n: usize, k: usize| -> i64 { [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 1, 0], [1, 3, 3, 1]][n][k] };
    (0..3)
        .map(|i| {
            (i..=3).fold(R::zero(), |acc, k| {
                acc.add(&full[k].mul(&h[k - i]).mul(&R::from_i64(binom(k, k - i))))
            })
        })
        .collect()
}

fn criterion_1() -> Line {
    let (ode, elapsed) = rational_ode("hurwitz.toml");
    let got = in_z(&ode);
    let printed = vec![
        q(rat(1, 24696), &[-40805, 57024], &Z2_Z1_2),
        q(rat(1, 252), &[560, -2963, 2592], &Z2_Z1_2),
        q(rat(1, 1), &[-4, 7], &Z_Z1),
    ];
    let exact = got == printed;
    let gauge_match = [rat(1, 2), rat(-1, 2)].into_iter().find(|a| {
        let s = q(a.clone(), &[1], &[-1, 1]);
        gauge(&printed, &s) == got
    });
    let detail = format!(
        "{:.1}s; constructed c2 = (11z-8)/(2z(z-1)); {}",
        elapsed.as_secs_f64(),
        match &gauge_match {
            Some(a) => format!("equals the printed equation after y -> (z-1)^({a}) y"),
            None => "no (z-1)^(+-1/2) gauge relates it to the printed equation".into(),
        }
    );
    let status = if exact && elapsed.as_secs() < 60 {
        Status::Pass
    } else if gauge_match.is_some() {
        Status::Known
    } else {
        Status::Fail
    };
    Line { id: 1, title: "golden equation, Hurwitz", status, detail }
}

fn criterion_2() -> Line {
    let (ode, elapsed) = rational_ode("class3.toml");
    let expected = vec![
        q(rat(195, 2744), &[1], &Z2_Z1),
        q(rat(3, 112), &[-35, 116], &Z2_Z1),
        q(rat(3, 2), &[-2, 3], &Z_Z1),
    ];
    let ok = in_z(&ode) == expected && elapsed.as_secs() < 60;
    Line {
        id: 2,
        title: "golden equation, Beukers class 3",
        status: if ok { Status::Pass } else { Status::Fail },
        detail: format!("{:.1}s, exact", elapsed.as_secs_f64()),
    }
}

fn criterion_3() -> Line {
    let mut ok = true;
    let mut times = Vec::new();
    for (file, c1) in [("class4_1.toml", 16), ("class4_2.toml", 72)] {
        let (ode, elapsed) = rational_ode(file);
        let expected = vec![
            q(rat(9, 2744), &[1], &Z2_Z1),
            q(rat(1, 196), &[c1, 173], &Z2_Z1),
            q(rat(1, 14), &[-20, 41], &Z_Z1),
        ];
        ok &= ode.ramification() == 7 || ode.descends_to_z();
        ok &= in_z(&ode) == expected && elapsed.as_secs() < 300;
        times.push(format!("{:.1}s", elapsed.as_secs_f64()));
    }
    Line {
        id: 3,
        title: "golden equations, classes 4.1 and 4.2",
        status: if ok { Status::Pass } else { Status::Fail },
        detail: format!("{}, exact; c1 numerators 173z+16 and 173z+72", times.join(" and ")),
    }
}

fn k(n: i64, d: i64) -> K {
    K::constant(rat(n, d))
}

/// `a z + b` over `Q(t)`.
fn linear_z(a: K, b: K) -> RatFunc<K> {
    RatFunc::from_poly(UPoly::from_coeffs(vec![b, a]))
}

fn criterion_4() -> Line {
    let spec = problem("fricke_pencil.toml");
    let start = Instant::now();
    let Equation::Parametric(ode, param) = build(&spec, Strategy::Frame).unwrap() else {
        panic!("the pencil has a parameter")
    };
    let elapsed = start.elapsed();
    assert_eq!(param.power, 9);
    let c: Vec<RatFunc<K>> = ode.coeffs().iter().map(|c| c.in_z().expect("descends").clone()).collect();

    let mu = K::x().pow(9);
    let inv_mu = mu.inv().unwrap();
    let z4 = mu.pow(2).mul(&k(81, 1)).sub(&mu.mul(&k(432, 1))).sub(&k(80, 1)).div(&mu.mul(&k(-3, 1))).unwrap();
    let z_z4 = linear_z(K::one(), z4.neg());
    let inv_z_z4 = z_z4.inv().unwrap();
    let lift = |v: K| RatFunc::constant(v);

    // As printed, P does not depend on z, so (3/2) dP/dz vanishes.
    let printed_c2 = inv_z_z4.neg();
    let printed_matches = c[2] == printed_c2;

    // P = z^3 + p1 z + p0 reproduces the printed z4, c0 and the shape of c2.
    let p1 = mu.mul(&k(-1008, 1)).add(&k(-4480, 3)).add(&inv_mu.mul(&k(256, 1)));
    let p0 = mu
        .pow(2)
        .mul(&k(1728, 1))
        .add(&mu.mul(&k(30464, 1)))
        .add(&k(93184, 27))
        .add(&inv_mu.mul(&k(28672, 3)));
    let p = RatFunc::from_poly(UPoly::from_coeffs(vec![p0, p1, K::zero(), K::one()]));
    let c2 = p.derivative().div(&p).unwrap().mul(&lift(k(3, 2))).sub(&inv_z_z4);
    let a = mu.mul(&k(27, 1)).add(&k(4, 1)).mul(&mu.sub(&k(4, 1)));
    let c0 = lift(k(-15, 2744))
        .sub(&lift(a.mul(&k(5, 196)).div(&mu).unwrap()).mul(&inv_z_z4))
        .div(&p)
        .unwrap();
    let derived_matches = c[2] == c2 && c[0] == c0;

    let detail = format!(
        "{:.1}s over Q(mu) with f14 = (-mu)^(1/9)(z+88/3); printed c2 = (3/2)dP/dz - 1/(z-z4) {}; \
         c2 = (3/2)P'/P - 1/(z-z4) and the printed c0 {} for P = z^3 + p1 z + p0",
        elapsed.as_secs_f64(),
        if printed_matches { "matches" } else { "does not match (printed P is constant in z)" },
        if derived_matches { "match" } else { "do not match" },
    );
    let status = if printed_matches && elapsed.as_secs() < 1800 {
        Status::Pass
    } else if derived_matches {
        Status::Known
    } else {
        Status::Fail
    };
    Line { id: 4, title: "Fricke pencil, parametric", status, detail }
}

fn criterion_5() -> Line {
    let start = Instant::now();
    let (_, basis) = klein_preset();
    let gens = basis.generators();
    let f4 = klein_f4();
    let hessian = hessian_determinant(&f4) == gens[1].scale(&rat(54, 1));
    let bordered = bordered_hessian_determinant(&f4, &gens[1]);
    let f14 = bordered.total_degree() == Some(14) && bordered.scale(&rat(1, 9)) == gens[2];
    let jac = jacobian(&gens[..3]).det() == gens[3].scale(&rat(14, 1));
    let printed = basis.expand(&printed_syzygy()).is_zero();
    let corrected = basis.expand(&klein_syzygy()).is_zero();
    let elapsed = start.elapsed();
    let identities = hessian && f14 && jac && corrected && elapsed.as_secs() < 120;
    let detail = format!(
        "{:.1}s; Hessian(F4) = 54 F6: {hessian}; bordered Hessian of degree 14: {f14}; \
         Jacobian = 14 F21: {jac}; printed T (10 terms) vanishes: {printed}; \
         T with the odd-F6 terms negated vanishes: {corrected}",
        elapsed.as_secs_f64()
    );
    let status = if identities && printed {
        Status::Pass
    } else if identities {
        Status::Known
    } else {
        Status::Fail
    };
    Line { id: 5, title: "invariant-ring identities", status, detail }
}

fn criterion_6() -> Line {
    let start = Instant::now();
    let (group, basis) = klein_preset();
    let mut checks = 0;
    let ok = group.generators().iter().all(|g| {
        basis.generators().iter().all(|f| {
            checks += 1;
            check_invariance(f, g) == Some(CycNum::one())
        })
    });
    let elapsed = start.elapsed();
    Line {
        id: 6,
        title: "strict invariance over Q(zeta_7)",
        status: if ok && checks == 12 && elapsed.as_secs() < 60 { Status::Pass } else { Status::Fail },
        detail: format!("{:.1}s, {checks} generator/invariant pairs with lambda = 1", elapsed.as_secs_f64()),
    }
}

fn criterion_7() -> Line {
    let (ode, _) = rational_ode("hurwitz.toml");
    let opts = AnalysisOptions { m: 1, group_order: 168, genus: Some(3), ..Default::default() };
    let report = analyze(&ode, &opts).unwrap();
    let locs: Vec<_> = report.points.iter().map(|p| p.location.clone()).collect();
    let mut r: Vec<u32> = report.points.iter().map(|p| p.exponents.r).collect();
    let shown = format!("{r:?}");
    r.sort();
    let ok = locs == [Location::Finite(rat(0, 1)), Location::Finite(rat(1, 1)), Location::Infinity]
        && r == [2, 3, 7]
        && report.euler_characteristic == rat(-4, 1)
        && report.degree == Some(rat(4, 1))
        && report.fuchs.holds();
    Line {
        id: 7,
        title: "geometry of the Hurwitz equation",
        status: if ok { Status::Pass } else { Status::Fail },
        detail: format!(
            "singular set {{0, 1, infinity}}, r = {shown}, chi = {}, degree {} with scale |G|",
            report.euler_characteristic,
            report.degree.map(|d| d.to_string()).unwrap_or_default()
        ),
    }
}

fn criterion_8() -> Line {
    let config = NumericConfig { tolerance: TOLERANCE, ..NumericConfig::default() };
    let corruption = F::from_z(RatFunc::constant(rat(CORRUPTION.0, CORRUPTION.1)));
    let mut ok = true;
    let mut parts = Vec::new();
    for file in ["hurwitz.toml", "class3.toml", "class4_1.toml", "class4_2.toml"] {
        let start = Instant::now();
        let spec = problem(file);
        let pullbacks = spec.rational_pullbacks().unwrap();
        let (ode, _) = rational_ode(file);
        let report = verify(&spec.basis, &ode, &pullbacks, &config).unwrap();
        let mut least_corrupted = f64::INFINITY;
        for i in 0..ode.order() {
            let mut c = ode.coeffs().to_vec();
            c[i] = c[i].mul(&corruption);
            let bad = verify(&spec.basis, &OdeResult::new(c), &pullbacks, &config).unwrap();
            least_corrupted = least_corrupted.min(bad.residual);
        }
        let elapsed = start.elapsed();
        ok &= report.verified && least_corrupted > TOLERANCE && elapsed.as_secs() < 120;
        parts.push(format!(
            "{} {:.1e} (corrupted >= {:.1e}, {:.1}s)",
            file.trim_end_matches(".toml"),
            report.residual,
            least_corrupted,
            elapsed.as_secs_f64()
        ));
    }
    Line {
        id: 8,
        title: "numeric verification and sensitivity",
        status: if ok { Status::Pass } else { Status::Fail },
        detail: format!("tolerance {TOLERANCE:.0e}, default path; {}", parts.join("; ")),
    }
}

fn small_rational() -> impl proptest::strategy::Strategy<Value = Rational> {
    (-20i64..21, 1i64..6).prop_map(|(n, d)| rat(n, d))
}

fn small_mpoly() -> impl proptest::strategy::Strategy<Value = MPoly<Rational>> {
    proptest::collection::vec((0u32..3, 0u32..3, 0u32..3, small_rational()), 0..5).prop_map(|terms| {
        MPoly::from_terms(3, terms.into_iter().map(|(a, b, c, v)| (Monomial::new(vec![a, b, c]), v)))
    })
}

fn small_upoly() -> impl proptest::strategy::Strategy<Value = UPoly<Rational>> {
    proptest::collection::vec(-5i64..6, 1..4).prop_map(|c| poly(&c))
}

fn small_function() -> impl proptest::strategy::Strategy<Value = F> {
    (small_upoly(), small_upoly(), 1u32..4)
        .prop_filter("nonzero", |(n, d, _)| !n.is_zero() && !d.is_zero())
        .prop_map(|(n, d, r)| F::new(r, R::new(n, d).unwrap()))
}

fn property(name: &str, f: impl Fn(&mut TestRunner) -> Result<(), String>) -> (String, bool) {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    match f(&mut runner) {
        Ok(()) => (format!("{name} ok"), true),
        Err(e) => (format!("{name} FAILED: {e}"), false),
    }
}

fn power_basis(k: u32) -> InvariantBasis {
    let x = MPoly::from_terms(1, [(Monomial::new(vec![k]), rat(1, 1))]);
    InvariantBasis::new(vec!["F".into()], vec![x], vec![k], vec![0], vec![]).unwrap()
}

fn criterion_9() -> Line {
    let start = Instant::now();
    let (_, klein) = klein_preset();
    let results = [
        property("ring axioms", |runner| {
            runner
                .run(&(small_mpoly(), small_mpoly(), small_mpoly()), |(a, b, c)| {
                    prop_assert_eq!(a.add(&b), b.add(&a));
                    prop_assert_eq!(a.mul(&b), b.mul(&a));
                    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                    prop_assert!(a.sub(&a).is_zero());
                    Ok(())
                })
                .map_err(|e| e.to_string())
        }),
        property("Leibniz rule", |runner| {
            runner
                .run(&(small_function(), small_function()), |(f, g)| {
                    let lhs = f.mul(&g).derivative();
                    let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
                    prop_assert_eq!(lhs, rhs);
                    Ok(())
                })
                .map_err(|e| e.to_string())
        }),
        property("nullspace annihilation", |runner| {
            let entries = proptest::collection::vec(small_mpoly(), 6);
            runner
                .run(&entries, |e| {
                    let m = Matrix::from_fn(2, 3, |i, j| e[3 * i + j].clone());
                    let v = nullspace_cofactor(&m);
                    prop_assume!(v.is_ok());
                    let v = v.unwrap();
                    prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
                    Ok(())
                })
                .map_err(|e| e.to_string())
        }),
        property("rewrite round trip", |runner| {
            let rw = std::cell::RefCell::new(Rewriter::new(&klein));
            // Weighted degree 24: F4^6, F4^3 F6^2, F6^4.
            let coeffs = (small_rational(), small_rational(), small_rational());
            runner
                .run(&coeffs, |(a, b, c)| {
                    let sym = MPoly::from_terms(
                        4,
                        [
                            (Monomial::new(vec![6, 0, 0, 0]), a),
                            (Monomial::new(vec![3, 2, 0, 0]), b),
                            (Monomial::new(vec![0, 4, 0, 0]), c),
                        ],
                    );
                    let p = klein.expand(&sym);
                    let back = rw.borrow_mut().rewrite(&p).unwrap();
                    prop_assert_eq!(klein.expand(&back), p);
                    prop_assert_eq!(back, sym);
                    Ok(())
                })
                .map_err(|e| e.to_string())
        }),
        property("n = 1 family", |runner| {
            runner
                .run(&(1u32..8, small_function()), |(k, f)| {
                    let f = F::from_z(f.lift(f.ramification()));
                    let ode = construct_ode(&power_basis(k), None, &[Some(f.clone())], ConstructOptions::default(), None)
                        .unwrap();
                    let expected = f.derivative().div(&f.mul(&F::from_i64(k as i64))).unwrap().neg();
                    prop_assert_eq!(ode.coeff(0), &expected);
                    Ok(())
                })
                .map_err(|e| e.to_string())
        }),
    ];
    let ok = results.iter().all(|(_, ok)| *ok);
    let names: Vec<String> = results.into_iter().map(|(s, _)| s).collect();
    Line {
        id: 9,
        title: "property suites",
        status: if ok { Status::Pass } else { Status::Fail },
        detail: format!("{CASES} cases each, {:.1}s: {}", start.elapsed().as_secs_f64(), names.join(", ")),
    }
}

fn main() -> ExitCode {
    let criteria: [fn() -> Line; 9] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
    ];
    let mut fatal = 0;
    for c in criteria {
        let line = c();
        let tag = match line.status {
            Status::Pass => "PASS",
            Status::Known | Status::Fail => "FAIL",
        };
        let note = match line.status {
            Status::Known => " [not attainable as stated]",
            _ => "",
        };
        if matches!(line.status, Status::Fail) {
            fatal += 1;
        }
        println!("{tag} criterion {} ({}){note}: {}", line.id, line.title, line.detail);
    }
    if fatal == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{fatal} attainable criteria failed");
        ExitCode::FAILURE
    }
}
