//! The four workflows, as functions returning a human-readable report and
//! a JSON document.

use std::fmt::Write as _;

use schwarz_core::algebra::{RamifiedFunction, Rational};
use schwarz_core::builder::{construct_ode, ConstructOptions, OdeResult, Strategy};
use schwarz_core::numeric::{self, NumericConfig, VerifyReport};
use schwarz_core::singular::{self, AnalysisOptions, CurveReport, DegreeScale, EulerConvention, LocalType, Location};
use schwarz_core::{Error, ErrorClass};
use serde_json::{json, Value};

use crate::expr::to_rational;
use crate::format;
use crate::problem::{preset, ProblemError, ProblemSpec, PRESETS};
use crate::render::{self, Equation, JsonError, Metadata};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Problem(#[from] ProblemError),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Json(#[from] JsonError),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
    NotVerified { residual: f64, tolerance: f64 },
}

impl CliError {
    /// Process exit code: 2 parse or validation, 3 degenerate input,
    /// 4 analysis scope, 5 verification.
    pub fn exit_code(&self) -> i32 {
        let class = match self {
            CliError::Problem(ProblemError::Core(e)) | CliError::Core(e) => e.class(),
            CliError::NotVerified { .. } => ErrorClass::Verification,
            _ => ErrorClass::Validation,
        };
        match class {
            ErrorClass::Validation => 2,
            ErrorClass::Degenerate => 3,
            ErrorClass::Analysis => 4,
            ErrorClass::Verification => 5,
        }
    }
}

/// Options shared by the commands.
#[derive(Clone, Debug)]
pub struct Settings {
    pub strategy: Strategy,
    pub euler: EulerConvention,
    pub degree_scale: DegreeScale,
    pub m: Option<u32>,
    pub genus: Option<u32>,
    pub group_order: Option<u64>,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        let n = NumericConfig::default();
        Settings {
            strategy: Strategy::Frame,
            euler: EulerConvention::Validated,
            degree_scale: DegreeScale::GroupOrder,
            m: None,
            genus: None,
            group_order: None,
            tolerance: n.tolerance,
            seed: n.seed,
        }
    }
}

/// Text for people, JSON for machines.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Frame => "frame",
        Strategy::Literal => "literal",
    }
}

fn options(strategy: Strategy) -> ConstructOptions {
    ConstructOptions {
        strategy,
        ..ConstructOptions::default()
    }
}

fn metadata(spec: &ProblemSpec, settings: &Settings) -> Metadata {
    let b = &spec.basis;
    Metadata {
        names: b.names().to_vec(),
        degrees: b.degrees().to_vec(),
        primary: b.primary().to_vec(),
        pullbacks: spec.pullback_strings(),
        strategy: strategy_name(settings.strategy).into(),
        m: settings.m.unwrap_or(spec.m),
        genus: settings.genus.or(spec.genus),
        group_order: settings.group_order.or(spec.effective_group_order()),
    }
}

/// Builds the equation exactly, over `Q` or over `Q(t)` when a parameter
/// is declared.
pub fn build(spec: &ProblemSpec, strategy: Strategy) -> Result<Equation, CliError> {
    let group = spec.group.as_ref();
    match &spec.parameter {
        None => {
            let pullbacks: Vec<Option<RamifiedFunction<Rational>>> = spec
                .pullbacks
                .iter()
                .map(|f| f.as_ref().map(|f| to_rational(f).expect("no parameter declared")))
                .collect();
            let ode = construct_ode(&spec.basis, group, &pullbacks, options(strategy), None)?;
            Ok(Equation::Rational(ode))
        }
        Some(p) => {
            let ode = construct_ode(&spec.basis, group, &spec.pullbacks, options(strategy), None)?;
            Ok(Equation::Parametric(ode, p.clone()))
        }
    }
}

type RationalPullbacks = Vec<Option<RamifiedFunction<Rational>>>;

/// The rational equation used by analysis and verification, with its
/// rational pullbacks.
fn rational_equation(
    spec: &ProblemSpec,
    strategy: Strategy,
) -> Result<(OdeResult<Rational>, RationalPullbacks), CliError> {
    let pullbacks = spec.rational_pullbacks()?;
    let ode = construct_ode(&spec.basis, spec.group.as_ref(), &pullbacks, options(strategy), None)?;
    Ok((ode, pullbacks))
}

pub fn construct(spec: &ProblemSpec, settings: &Settings) -> Result<Output, CliError> {
    let eq = build(spec, settings.strategy)?;
    let meta = metadata(spec, settings);
    let mut text = render::text(&eq);
    writeln!(text, "\nLaTeX:\n{}", render::latex(&eq)).unwrap();
    Ok(Output {
        text,
        json: render::to_json(&eq, &meta),
    })
}

fn rational_json(q: &Rational) -> Value {
    json!([q.numer().to_string(), q.denom().to_string()])
}

fn location_json(l: &Location) -> Value {
    match l {
        Location::Finite(a) => json!({"kind": "finite", "value": rational_json(a)}),
        Location::Conjugates(q) => json!({
            "kind": "conjugates",
            "polynomial": format::upoly(q, "z"),
            "count": l.count(),
        }),
        Location::Infinity => json!({"kind": "infinity"}),
    }
}

fn local_name(t: &Option<LocalType>) -> Value {
    match t {
        None => Value::Null,
        Some(LocalType::Cusp(a, b)) => json!(format!("({a},{b})-cusp")),
        Some(LocalType::Flex(a, b)) => json!(format!("({a},{b})-flex")),
        Some(LocalType::Regular) => json!("regular"),
    }
}

fn euler_name(e: EulerConvention) -> &'static str {
    match e {
        EulerConvention::Validated => "validated",
        EulerConvention::Printed => "printed",
    }
}

fn scale_name(s: DegreeScale) -> &'static str {
    match s {
        DegreeScale::Genus => "genus",
        DegreeScale::GroupOrder => "group-order",
    }
}

fn report_json(r: &CurveReport) -> Value {
    let points: Vec<Value> = r
        .points
        .iter()
        .map(|p| {
            let d = &p.exponents;
            json!({
                "location": location_json(&p.location),
                "exponents": d.raw.iter().map(rational_json).collect::<Vec<_>>(),
                "e": rational_json(&d.e),
                "r": d.r,
                "nu": d.nu,
                "lambdas": d.lambdas,
                "smooth": p.classification.smooth,
                "apparent": p.classification.apparent,
                "local_type": local_name(&p.classification.local),
            })
        })
        .collect();
    json!({
        "order": r.order,
        "points": points,
        "m": r.m,
        "group_order": r.group_order,
        "euler_convention": euler_name(r.euler_convention),
        "euler_characteristic": rational_json(&r.euler_characteristic),
        "genus": r.genus,
        "exponent_sum": rational_json(&r.exponent_sum),
        "degree_scale": scale_name(r.degree_scale),
        "degree": r.degree.as_ref().map(rational_json),
        "fuchs": {
            "sum": rational_json(&r.fuchs.sum),
            "expected": rational_json(&r.fuchs.expected),
            "holds": r.fuchs.holds(),
        },
        "warnings": r.warnings,
    })
}

fn report_text(r: &CurveReport) -> String {
    let mut s = String::new();
    writeln!(s, "Singular points ({}):", r.points.len()).unwrap();
    for p in &r.points {
        let d = &p.exponents;
        let exps: Vec<String> = d.raw.iter().map(format::rational).collect();
        let lambdas: Vec<String> = d.lambdas.iter().map(u32::to_string).collect();
        let mut line = format!(
            "  z = {}: exponents {{{}}}, e = {}, r = {}, nu = {}, lambda = ({})",
            p.location,
            exps.join(", "),
            format::rational(&d.e),
            d.r,
            d.nu,
            lambdas.join(", ")
        );
        if p.classification.apparent {
            line.push_str(", apparent");
        }
        if p.classification.smooth {
            line.push_str(", smooth");
        }
        if let Value::String(t) = local_name(&p.classification.local) {
            write!(line, ", {t}").unwrap();
        }
        writeln!(s, "{line}").unwrap();
    }
    writeln!(
        s,
        "Euler characteristic ({} convention, |G| = {}): {}",
        euler_name(r.euler_convention),
        r.group_order,
        format::rational(&r.euler_characteristic)
    )
    .unwrap();
    match r.genus {
        Some(g) => writeln!(s, "Genus: {g}").unwrap(),
        None => writeln!(s, "Genus: unknown").unwrap(),
    }
    writeln!(s, "Sum of e_p: {}", format::rational(&r.exponent_sum)).unwrap();
    match &r.degree {
        Some(d) => writeln!(s, "Degree (scale {}, m = {}): {}", scale_name(r.degree_scale), r.m, format::rational(d)).unwrap(),
        None => writeln!(s, "Degree: needs the genus for scale {}", scale_name(r.degree_scale)).unwrap(),
    }
    writeln!(
        s,
        "Fuchs relation: sum of exponents {} (expected {}): {}",
        format::rational(&r.fuchs.sum),
        format::rational(&r.fuchs.expected),
        if r.fuchs.holds() { "holds" } else { "FAILS" }
    )
    .unwrap();
    for w in &r.warnings {
        writeln!(s, "warning: {w}").unwrap();
    }
    s
}

fn analysis_options(meta: &Metadata, settings: &Settings) -> Result<AnalysisOptions, CliError> {
    let Some(group_order) = settings.group_order.or(meta.group_order) else {
        return Err(CliError::Usage(
            "the group order is unknown: declare a group or pass --group-order".into(),
        ));
    };
    Ok(AnalysisOptions {
        m: settings.m.unwrap_or(meta.m.max(1)),
        group_order,
        genus: settings.genus.or(meta.genus),
        euler: settings.euler,
        degree_scale: settings.degree_scale,
    })
}

pub fn analyze_equation(ode: &OdeResult<Rational>, meta: &Metadata, settings: &Settings) -> Result<Output, CliError> {
    let opts = analysis_options(meta, settings)?;
    let report = singular::analyze(ode, &opts)?;
    Ok(Output {
        text: report_text(&report),
        json: report_json(&report),
    })
}

/// Analysis of a problem file. With a parameter, the equation is rebuilt
/// at the declared value.
pub fn analyze(spec: &ProblemSpec, settings: &Settings) -> Result<Output, CliError> {
    let (ode, _) = rational_equation(spec, settings.strategy)?;
    let mut out = analyze_equation(&ode, &metadata(spec, settings), settings)?;
    if let (Some(p), Some(v)) = (&spec.parameter, &spec.value) {
        out.text = format!("At {} = {}:\n{}", p.name, format::rational(v), out.text);
        out.json["parameter_value"] = json!({"name": p.name, "value": rational_json(v)});
    }
    Ok(out)
}

/// Analysis of a saved equation.
pub fn analyze_json(doc: &Value, settings: &Settings) -> Result<Output, CliError> {
    let (eq, meta) = render::from_json(doc)?;
    match eq {
        Equation::Rational(ode) => analyze_equation(&ode, &meta, settings),
        Equation::Parametric(..) => Err(Error::Scope(
            "the saved equation depends on a parameter; analyze the problem file with a [values] entry".into(),
        )
        .into()),
    }
}

fn complex_json(z: &num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

fn verify_json(r: &VerifyReport, tolerance: f64, names: &[String]) -> Value {
    let per: serde_json::Map<String, Value> = names
        .iter()
        .zip(&r.per_generator)
        .map(|(n, v)| (n.clone(), json!(v)))
        .collect();
    json!({
        "base": complex_json(&r.base),
        "path": r.path.iter().map(complex_json).collect::<Vec<_>>(),
        "seed": r.seed,
        "tolerance": tolerance,
        "initial_point": r.initial.x.iter().map(complex_json).collect::<Vec<_>>(),
        "initial_condition_number": r.initial.condition,
        "ode_residual_at_base": r.ode_residual_at_base,
        "residual": r.residual,
        "per_generator": per,
        "samples": r.samples,
        "verified": r.verified,
    })
}

/// Constructs, then integrates along the default path and compares every
/// generator with its pullback.
pub fn verify(spec: &ProblemSpec, settings: &Settings) -> Result<(Output, bool), CliError> {
    let (ode, pullbacks) = rational_equation(spec, settings.strategy)?;
    let config = NumericConfig {
        tolerance: settings.tolerance,
        seed: settings.seed,
        ..NumericConfig::default()
    };
    let r = numeric::verify(&spec.basis, &ode, &pullbacks, &config)?;
    let mut text = String::new();
    if let (Some(p), Some(v)) = (&spec.parameter, &spec.value) {
        writeln!(text, "At {} = {}:", p.name, format::rational(v)).unwrap();
    }
    let path: Vec<String> = r.path.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
    writeln!(text, "Path: {}", path.join(" -> ")).unwrap();
    writeln!(text, "Newton seed {}, condition number {:.3e}", r.seed, r.initial.condition).unwrap();
    writeln!(text, "ODE residual at the base point: {:.3e}", r.ode_residual_at_base).unwrap();
    for (n, v) in spec.basis.names().iter().zip(&r.per_generator) {
        match v {
            Some(v) => writeln!(text, "  {n}: max deviation {v:.3e}").unwrap(),
            None => writeln!(text, "  {n}: not checked").unwrap(),
        }
    }
    writeln!(
        text,
        "Residual {:.3e} over {} samples: {}",
        r.residual,
        r.samples,
        if r.verified { "verified" } else { "NOT verified" }
    )
    .unwrap();
    let json = verify_json(&r, settings.tolerance, spec.basis.names());
    Ok((Output { text, json }, r.verified))
}

pub fn preset_listing(name: &str) -> Result<Output, CliError> {
    let Some((group, basis)) = preset(name) else {
        return Err(CliError::Usage(format!(
            "unknown preset {name} (known: {})",
            PRESETS.join(", ")
        )));
    };
    let vars: Vec<String> = (1..=basis.nvars()).map(|i| format!("x{i}")).collect();
    let mut text = format!("Preset {name}: group of order {} in dimension {}\n", group.order(), group.dimension());
    let mut invariants = Vec::new();
    for ((n, g), d) in basis.names().iter().zip(basis.generators()).zip(basis.degrees()) {
        let terms = g.num_terms();
        writeln!(text, "  {n}: degree {d}, {terms} terms").unwrap();
        invariants.push(json!({"name": n, "degree": d, "terms": terms, "polynomial": format::mpoly(g, &vars)}));
    }
    let primary: Vec<&str> = basis.primary().iter().map(|&i| basis.names()[i].as_str()).collect();
    writeln!(text, "Primary: {}", primary.join(", ")).unwrap();
    let syzygies: Vec<Value> = basis
        .syzygies()
        .iter()
        .map(|s| json!({"terms": s.num_terms(), "relation": format::mpoly(s, basis.names())}))
        .collect();
    for s in basis.syzygies() {
        writeln!(text, "Syzygy ({} terms): {} = 0", s.num_terms(), format::mpoly(s, basis.names())).unwrap();
    }
    let generators: Vec<Value> = group
        .generators()
        .iter()
        .map(|m| {
            Value::Array(
                (0..m.rows())
                    .map(|i| Value::Array(m.row(i).iter().map(|c| json!(format::cyclotomic(c))).collect()))
                    .collect(),
            )
        })
        .collect();
    let json = json!({
        "name": name,
        "order": group.order(),
        "dimension": group.dimension(),
        "generators": generators,
        "invariants": invariants,
        "degrees": basis.degrees(),
        "primary": basis.primary(),
        "syzygies": syzygies,
    });
    Ok(Output { text, json })
}
