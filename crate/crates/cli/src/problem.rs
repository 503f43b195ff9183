//! Problem files: TOML with quoted expression strings.
//!
//! ```toml
//! group = "klein168"
//! f4 = "0"
//! f6 = "1/z^4"
//! f14 = "-12/z^9"
//! m = 1
//! genus = 3
//! ```
//!
//! Inline problems list `variables`, `names`, `invariants`, optional
//! `degrees`, `primary` (0-based indices) and `syzygies`, and may carry a
//! `[group]` table with `dimension`, `order` and `generators` (matrices of
//! expressions in `zeta_m`). Pullbacks are top-level keys named after the
//! lowercased generator names, or entries of a `[pullbacks]` table. One
//! parameter may be declared with `parameters = ["mu"]`, and given a value
//! for numeric work in a `[values]` table.

use std::collections::BTreeMap;

use schwarz_core::algebra::{CycNum, Matrix, RamifiedFunction, Rational, Ring};
use schwarz_core::invariant::{check_invariance, klein_preset, GroupSpec, InvariantBasis};
use toml::{Table, Value};

use crate::expr::{self, rational_root, specialize, to_rational, Expr, ExprError, FunctionDomain, Parameter, Pullback};
use crate::format;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ProblemError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error(transparent)]
    Core(#[from] schwarz_core::Error),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ProblemError> {
    Err(ProblemError::Validation(msg.into()))
}

/// Where the group comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupSource {
    Preset(String),
    Inline {
        dimension: usize,
        order: u64,
        generators: Vec<Matrix<CycNum>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub source: Option<GroupSource>,
    pub group: Option<GroupSpec>,
    pub variables: Vec<String>,
    pub basis: InvariantBasis,
    pub parameter: Option<Parameter>,
    /// Value of the parameter used for analysis and numeric verification.
    pub value: Option<Rational>,
    /// One slot per generator.
    pub pullbacks: Vec<Option<Pullback>>,
    pub m: u32,
    pub genus: Option<u32>,
    pub group_order: Option<u64>,
}

pub const PRESETS: &[&str] = &["klein168"];

/// Generators, group and variables of a named preset.
pub fn preset(name: &str) -> Option<(GroupSpec, InvariantBasis)> {
    match name {
        "klein168" => Some(klein_preset()),
        _ => None,
    }
}

const KEYS: &[&str] = &[
    "group",
    "variables",
    "names",
    "invariants",
    "degrees",
    "primary",
    "syzygies",
    "parameters",
    "values",
    "pullbacks",
    "m",
    "genus",
    "group_order",
];

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Places an expression error inside the problem text: at the quoted
/// literal when it can be found, else at the key.
fn locate(text: &str, key: &str, src: &str, e: ExprError) -> ProblemError {
    for quote in ['"', '\''] {
        let lit = format!("{quote}{src}{quote}");
        if let Some(off) = text.find(&lit) {
            let (line, col) = line_col(text, off);
            return ProblemError::Syntax {
                line,
                column: col + e.column,
                message: format!("{key}: {}", e.message),
            };
        }
    }
    let off = text
        .lines()
        .scan(0, |acc, l| {
            let start = *acc;
            *acc += l.len() + 1;
            Some((start, l))
        })
        .find(|(_, l)| l.trim_start().starts_with(key))
        .map_or(0, |(s, _)| s);
    let (line, _) = line_col(text, off);
    ProblemError::Syntax {
        line,
        column: e.column,
        message: format!("{key}: {}", e.message),
    }
}

fn string(v: &Value, key: &str) -> Result<String, ProblemError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Integer(i) => Ok(i.to_string()),
        _ => invalid(format!("{key} must be a string")),
    }
}

fn strings(v: Option<&Value>, key: &str) -> Result<Option<Vec<String>>, ProblemError> {
    match v {
        None => Ok(None),
        Some(Value::Array(a)) => a.iter().map(|x| string(x, key)).collect::<Result<_, _>>().map(Some),
        Some(_) => invalid(format!("{key} must be a list of strings")),
    }
}

fn unsigned(v: Option<&Value>, key: &str) -> Result<Option<u64>, ProblemError> {
    match v {
        None => Ok(None),
        Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
        Some(_) => invalid(format!("{key} must be a nonnegative integer")),
    }
}

fn unsigned_list(v: Option<&Value>, key: &str) -> Result<Option<Vec<u64>>, ProblemError> {
    match v {
        None => Ok(None),
        Some(Value::Array(a)) => a.iter().map(|x| unsigned(Some(x), key).map(Option::unwrap)).collect::<Result<_, _>>().map(Some),
        Some(_) => invalid(format!("{key} must be a list of integers")),
    }
}

fn small<T: TryFrom<u64>>(v: u64, key: &str) -> Result<T, ProblemError> {
    T::try_from(v).map_err(|_| ProblemError::Validation(format!("{key} is out of range")))
}

fn parse_group(text: &str, t: &Table) -> Result<(usize, u64, Vec<Matrix<CycNum>>), ProblemError> {
    for k in t.keys() {
        if !["dimension", "order", "generators"].contains(&k.as_str()) {
            return invalid(format!("unknown key group.{k}"));
        }
    }
    let Some(dim) = unsigned(t.get("dimension"), "group.dimension")? else {
        return invalid("group.dimension is required");
    };
    let Some(order) = unsigned(t.get("order"), "group.order")? else {
        return invalid("group.order is required");
    };
    let dim: usize = small(dim, "group.dimension")?;
    let Some(Value::Array(gens)) = t.get("generators") else {
        return invalid("group.generators must be a list of matrices");
    };
    let mut out = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let Value::Array(rows) = g else {
            return invalid(format!("group generator {gi} must be a list of rows"));
        };
        let mut mat = Vec::new();
        for row in rows {
            let Value::Array(entries) = row else {
                return invalid(format!("group generator {gi} must be a list of rows"));
            };
            let mut r = Vec::new();
            for e in entries {
                let src = string(e, "group.generators")?;
                r.push(expr::cyclotomic(&src).map_err(|x| locate(text, "generators", &src, x))?);
            }
            mat.push(r);
        }
        if mat.len() != dim || mat.iter().any(|r| r.len() != dim) {
            return invalid(format!("group generator {gi} is not {dim}x{dim}"));
        }
        out.push(Matrix::from_rows(mat));
    }
    Ok((dim, order, out))
}

/// `x1, ..., xn` with `n` the largest index used.
fn infer_variables(srcs: &[String]) -> Vec<String> {
    let mut n = 0;
    for s in srcs {
        if let Ok(e) = expr::parse(s) {
            for sym in e.symbols() {
                if let Some(i) = sym.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
                    n = n.max(i);
                }
            }
        }
    }
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec, ProblemError> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        ProblemError::Syntax {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;

    let mut named_pullbacks: BTreeMap<String, String> = BTreeMap::new();
    let mut loose: Vec<(String, String)> = Vec::new();
    for (k, v) in &table {
        if KEYS.contains(&k.as_str()) {
            continue;
        }
        if k.starts_with('f') || k.starts_with('F') {
            loose.push((k.clone(), string(v, k)?));
        } else {
            return invalid(format!("unknown key {k}"));
        }
    }
    match table.get("pullbacks") {
        None => {}
        Some(Value::Table(t)) => {
            for (k, v) in t {
                named_pullbacks.insert(k.clone(), string(v, k)?);
            }
        }
        Some(_) => return invalid("pullbacks must be a table"),
    }

    // Group and generators.
    let (source, group, preset_basis) = match table.get("group") {
        None => (None, None, None),
        Some(Value::String(name)) => {
            let Some((g, b)) = preset(name) else {
                return invalid(format!("unknown preset {name} (known: {})", PRESETS.join(", ")));
            };
            (Some(GroupSource::Preset(name.clone())), Some(g), Some(b))
        }
        Some(Value::Table(t)) => {
            let (dimension, order, generators) = parse_group(text, t)?;
            let g = GroupSpec::new(dimension, generators.clone(), order)?;
            let src = GroupSource::Inline {
                dimension,
                order,
                generators,
            };
            (Some(src), Some(g), None)
        }
        Some(_) => return invalid("group must be a preset name or a table"),
    };

    let (basis, variables) = match preset_basis {
        Some(b) => {
            for k in ["invariants", "names", "degrees", "primary", "syzygies", "variables"] {
                if table.contains_key(k) {
                    return invalid(format!("{k} cannot be combined with a preset group"));
                }
            }
            let vars = (1..=b.nvars()).map(|i| format!("x{i}")).collect();
            (b, vars)
        }
        None => parse_basis(text, &table, group.as_ref())?,
    };

    if let Some(g) = &group {
        if g.dimension() != basis.nvars() {
            return invalid(format!(
                "the group acts on {} variables but the invariants use {}",
                g.dimension(),
                basis.nvars()
            ));
        }
        for (name, f) in basis.names().iter().zip(basis.generators()) {
            for (gi, m) in g.generators().iter().enumerate() {
                match check_invariance(f, m) {
                    Some(l) if l.is_one() => {}
                    _ => return invalid(format!("{name} is not invariant under group generator {gi}")),
                }
            }
        }
    }

    // Parameter.
    let params = strings(table.get("parameters"), "parameters")?.unwrap_or_default();
    if params.len() > 1 {
        return invalid("at most one parameter is supported");
    }
    let param_name = params.first().cloned();
    if let Some(p) = &param_name {
        if p == "z" || basis.names().contains(p) || !p.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return invalid(format!("{p} cannot be used as a parameter name"));
        }
    }

    // Pullback sources, one slot per generator.
    let mut srcs: Vec<Option<String>> = vec![None; basis.len()];
    for (k, v) in named_pullbacks {
        let Some(i) = basis.names().iter().position(|n| *n == k) else {
            return invalid(format!("pullback for unknown generator {k}"));
        };
        srcs[i] = Some(v);
    }
    for (k, v) in loose {
        let Some(i) = basis.names().iter().position(|n| n.to_lowercase() == k.to_lowercase()) else {
            return invalid(format!("unknown key {k} (no generator of that name)"));
        };
        if srcs[i].is_some() {
            return invalid(format!("pullback for {} given twice", basis.names()[i]));
        }
        srcs[i] = Some(v);
    }
    let mut exprs: Vec<Option<Expr>> = Vec::new();
    for (i, s) in srcs.iter().enumerate() {
        let key = basis.names()[i].to_lowercase();
        exprs.push(match s {
            Some(s) => Some(expr::parse(s).map_err(|e| locate(text, &key, s, e))?),
            None => None,
        });
    }
    let parameter = match &param_name {
        None => None,
        Some(p) => {
            let refs: Vec<&Expr> = exprs.iter().flatten().collect();
            let power = expr::parameter_power(&refs, p).map_err(|e| ProblemError::Validation(e.to_string()))?;
            Some(Parameter {
                name: p.clone(),
                power,
            })
        }
    };
    let domain = FunctionDomain {
        variable: "z",
        parameter: parameter.as_ref(),
    };
    let mut pullbacks = Vec::new();
    for (i, e) in exprs.iter().enumerate() {
        pullbacks.push(match e {
            Some(e) => {
                let key = basis.names()[i].to_lowercase();
                let src = srcs[i].as_deref().unwrap_or_default();
                Some(expr::eval(e, &domain).map_err(|x| locate(text, &key, src, x))?)
            }
            None => None,
        });
    }

    let value = match table.get("values") {
        None => None,
        Some(Value::Table(t)) => {
            let mut value = None;
            for (k, v) in t {
                if Some(k) != param_name.as_ref() {
                    return invalid(format!("value given for undeclared parameter {k}"));
                }
                let src = string(v, k)?;
                value = Some(expr::rational(&src).map_err(|e| locate(text, k, &src, e))?);
            }
            value
        }
        Some(_) => return invalid("values must be a table"),
    };

    let m = unsigned(table.get("m"), "m")?.unwrap_or(1);
    if m == 0 {
        return invalid("m must be positive");
    }
    let genus = unsigned(table.get("genus"), "genus")?.map(|g| small(g, "genus")).transpose()?;
    let group_order = unsigned(table.get("group_order"), "group_order")?;
    if group_order == Some(0) {
        return invalid("group_order must be positive");
    }

    let spec = ProblemSpec {
        source,
        group,
        variables,
        basis,
        parameter,
        value,
        pullbacks,
        m: small(m, "m")?,
        genus,
        group_order,
    };
    spec.parameter_root()?;
    Ok(spec)
}

fn parse_basis(
    text: &str,
    table: &Table,
    group: Option<&GroupSpec>,
) -> Result<(InvariantBasis, Vec<String>), ProblemError> {
    let Some(inv_srcs) = strings(table.get("invariants"), "invariants")? else {
        return invalid("invariants are required without a preset group");
    };
    let variables = match strings(table.get("variables"), "variables")? {
        Some(v) => v,
        None => match group {
            Some(g) => (1..=g.dimension()).map(|i| format!("x{i}")).collect(),
            None => infer_variables(&inv_srcs),
        },
    };
    if variables.is_empty() {
        return invalid("no variables");
    }
    let names = strings(table.get("names"), "names")?
        .unwrap_or_else(|| (1..=inv_srcs.len()).map(|i| format!("F{i}")).collect());
    if names.len() != inv_srcs.len() {
        return invalid("names and invariants must have equal length");
    }
    let mut gens = Vec::new();
    for (name, s) in names.iter().zip(&inv_srcs) {
        let p = expr::polynomial(s, &variables).map_err(|e| locate(text, "invariants", s, e))?;
        if p.is_zero() || !p.is_homogeneous() {
            return invalid(format!("invariant {name} must be a nonzero homogeneous polynomial"));
        }
        gens.push(p);
    }
    let computed: Vec<u32> = gens.iter().map(|g| g.total_degree().unwrap_or(0)).collect();
    if let Some(declared) = unsigned_list(table.get("degrees"), "degrees")? {
        if declared.len() != computed.len() {
            return invalid("degrees and invariants must have equal length");
        }
        for ((name, d), c) in names.iter().zip(&declared).zip(&computed) {
            if *d != *c as u64 {
                return invalid(format!("declared degree {d} for {name}, but the invariant has degree {c}"));
            }
        }
    }
    let primary = match unsigned_list(table.get("primary"), "primary")? {
        Some(p) => p.into_iter().map(|i| small(i, "primary")).collect::<Result<Vec<usize>, _>>()?,
        None => (0..variables.len().min(gens.len())).collect(),
    };
    let mut syzygies = Vec::new();
    for s in strings(table.get("syzygies"), "syzygies")?.unwrap_or_default() {
        syzygies.push(expr::polynomial(&s, &names).map_err(|e| locate(text, "syzygies", &s, e))?);
    }
    let basis = InvariantBasis::new(names, gens, computed, primary, syzygies)?;
    Ok((basis, variables))
}

impl ProblemSpec {
    /// The rational `t` with `t^power` equal to the parameter value.
    pub fn parameter_root(&self) -> Result<Option<Rational>, ProblemError> {
        match (&self.parameter, &self.value) {
            (Some(p), Some(v)) => match rational_root(v, p.power) {
                Some(t) => Ok(Some(t)),
                None => invalid(format!(
                    "{} = {} has no rational {}-th root, which the pullbacks need",
                    p.name, v, p.power
                )),
            },
            _ => Ok(None),
        }
    }

    /// Pullbacks with rational coefficients: directly when no parameter is
    /// declared, after substituting the parameter value otherwise.
    pub fn rational_pullbacks(&self) -> Result<Vec<Option<RamifiedFunction<Rational>>>, ProblemError> {
        let t = self.parameter_root()?;
        if self.parameter.is_some() && t.is_none() {
            return Err(schwarz_core::Error::Scope(
                "the coefficients depend on a parameter; give it a value in [values]".into(),
            )
            .into());
        }
        self.pullbacks
            .iter()
            .zip(self.basis.names())
            .map(|(f, name)| match f {
                None => Ok(None),
                Some(f) => {
                    let g = match &t {
                        Some(t) => specialize(f, t),
                        None => to_rational(f),
                    };
                    g.map(Some).ok_or_else(|| {
                        ProblemError::Validation(format!("pullback for {name} is undefined at the parameter value"))
                    })
                }
            })
            .collect()
    }

    /// The group order used by analysis: the override, else the group's.
    pub fn effective_group_order(&self) -> Option<u64> {
        self.group_order.or(self.group.as_ref().map(GroupSpec::order))
    }

    /// Pullbacks as expression strings.
    pub fn pullback_strings(&self) -> Vec<Option<String>> {
        self.pullbacks
            .iter()
            .map(|f| f.as_ref().map(|f| format::pullback(f, self.parameter.as_ref())))
            .collect()
    }

    /// Canonical problem-file text; parsing it gives back an equal spec.
    pub fn to_toml(&self) -> String {
        let mut t = Table::new();
        match &self.source {
            Some(GroupSource::Preset(name)) => {
                t.insert("group".into(), Value::String(name.clone()));
            }
            Some(GroupSource::Inline {
                dimension,
                order,
                generators,
            }) => {
                let mut g = Table::new();
                g.insert("dimension".into(), Value::Integer(*dimension as i64));
                g.insert("order".into(), Value::Integer(*order as i64));
                let mats = generators
                    .iter()
                    .map(|m| {
                        Value::Array(
                            (0..m.rows())
                                .map(|i| Value::Array(m.row(i).iter().map(|c| Value::String(format::cyclotomic(c))).collect()))
                                .collect(),
                        )
                    })
                    .collect();
                g.insert("generators".into(), Value::Array(mats));
                t.insert("group".into(), Value::Table(g));
            }
            None => {}
        }
        if !matches!(self.source, Some(GroupSource::Preset(_))) {
            let list = |v: Vec<String>| Value::Array(v.into_iter().map(Value::String).collect());
            let ints = |v: Vec<i64>| Value::Array(v.into_iter().map(Value::Integer).collect());
            let b = &self.basis;
            t.insert("variables".into(), list(self.variables.clone()));
            t.insert("names".into(), list(b.names().to_vec()));
            t.insert(
                "invariants".into(),
                list(b.generators().iter().map(|g| format::mpoly(g, &self.variables)).collect()),
            );
            t.insert("degrees".into(), ints(b.degrees().iter().map(|&d| d as i64).collect()));
            t.insert("primary".into(), ints(b.primary().iter().map(|&d| d as i64).collect()));
            if !b.syzygies().is_empty() {
                t.insert(
                    "syzygies".into(),
                    list(b.syzygies().iter().map(|s| format::mpoly(s, b.names())).collect()),
                );
            }
        }
        if let Some(p) = &self.parameter {
            t.insert("parameters".into(), Value::Array(vec![Value::String(p.name.clone())]));
            if let Some(v) = &self.value {
                let mut vals = Table::new();
                vals.insert(p.name.clone(), Value::String(format::rational(v)));
                t.insert("values".into(), Value::Table(vals));
            }
        }
        t.insert("m".into(), Value::Integer(self.m as i64));
        if let Some(g) = self.genus {
            t.insert("genus".into(), Value::Integer(g as i64));
        }
        if let Some(o) = self.group_order {
            t.insert("group_order".into(), Value::Integer(o as i64));
        }
        let mut pb = Table::new();
        for (name, s) in self.basis.names().iter().zip(self.pullback_strings()) {
            if let Some(s) = s {
                pb.insert(name.clone(), Value::String(s));
            }
        }
        if !pb.is_empty() {
            t.insert("pullbacks".into(), Value::Table(pb));
        }
        toml::to_string(&t).expect("tables serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use schwarz_core::algebra::rat;

    const HURWITZ: &str = "group = \"klein168\"\nf4 = \"0\"\nf6 = \"1/z^4\"\nf14 = \"-12/z^9\"\nm = 1\ngenus = 3\n";

    const CYCLIC: &str = r#"
variables = ["x1", "x2"]
names = ["A", "B", "C"]
invariants = ["x1*x2", "x1^4", "x2^4"]
degrees = [2, 4, 4]
primary = [1, 2]
syzygies = ["B*C - A^4"]

[group]
dimension = 2
order = 4
generators = [[["zeta_4", "0"], ["0", "-zeta_4"]]]

[pullbacks]
B = "z"
C = "1/(z - 1)"
"#;

    #[test]
    fn preset_problem() {
        let spec = parse_problem(HURWITZ).unwrap();
        assert_eq!(spec.basis.degrees(), &[4, 6, 14, 21]);
        assert!(spec.pullbacks[0].as_ref().unwrap().is_zero());
        assert!(spec.pullbacks[3].is_none());
        assert_eq!(spec.effective_group_order(), Some(168));
        assert_eq!(spec.genus, Some(3));
        let f14 = spec.rational_pullbacks().unwrap()[2].clone().unwrap();
        assert_eq!(f14, RamifiedFunction::power_of_z(rat(-12, 1), -9, 1));
    }

    #[test]
    fn ramified_pullback() {
        let spec = parse_problem("group = \"klein168\"\nf4 = \"8*z^(3/7)\"\n").unwrap();
        assert_eq!(spec.pullbacks[0].as_ref().unwrap().ramification(), 7);
    }

    #[test]
    fn errors_point_into_the_file() {
        let e = parse_problem("group = \"klein168\"\nf4 = \"1/0\"\n").unwrap_err();
        assert_eq!(
            e,
            ProblemError::Syntax {
                line: 2,
                column: 8,
                message: "f4: division by zero".into()
            }
        );
        let e = parse_problem("group = \"klein168\"\nf4 = \n").unwrap_err();
        assert!(matches!(e, ProblemError::Syntax { line: 2, .. }), "{e:?}");
        assert!(matches!(parse_problem("group = \"nope\"\n"), Err(ProblemError::Validation(_))));
        assert!(matches!(parse_problem("group = \"klein168\"\nf5 = \"1\"\n"), Err(ProblemError::Validation(_))));
        let bad_degree = CYCLIC.replace("degrees = [2, 4, 4]", "degrees = [2, 4, 5]");
        let e = parse_problem(&bad_degree).unwrap_err();
        assert!(e.to_string().contains("declared degree 5 for C"), "{e}");
        // X1^4 picks up zeta_8^4 = -1.
        let not_invariant = CYCLIC.replace(
            "[[\"zeta_4\", \"0\"], [\"0\", \"-zeta_4\"]]",
            "[[\"zeta_8\", \"0\"], [\"0\", \"zeta_8^7\"]]",
        );
        assert!(matches!(parse_problem(&not_invariant), Err(ProblemError::Validation(_))));
    }

    #[test]
    fn inline_problem_round_trips() {
        let spec = parse_problem(CYCLIC).unwrap();
        assert_eq!(spec.basis.names(), &["A", "B", "C"]);
        assert_eq!(spec.effective_group_order(), Some(4));
        let again = parse_problem(&spec.to_toml()).unwrap();
        assert_eq!(again, spec);
        let hurwitz = parse_problem(HURWITZ).unwrap();
        assert_eq!(parse_problem(&hurwitz.to_toml()).unwrap(), hurwitz);
    }

    #[test]
    fn parameter_problem() {
        let text = "group = \"klein168\"\nparameters = [\"mu\"]\nf4 = \"(-mu)^(-1/9)\"\nf6 = \"(-mu)^(1/3)\"\nf14 = \"(-mu)^(-1/9)*(z + 88/3)\"\n[values]\nmu = \"1\"\n";
        let spec = parse_problem(text).unwrap();
        assert_eq!(spec.parameter.as_ref().unwrap().power, 9);
        assert_eq!(parse_problem(&spec.to_toml()).unwrap(), spec);
        let f = spec.rational_pullbacks().unwrap();
        assert_eq!(f[0].clone().unwrap(), RamifiedFunction::from_rational(&rat(-1, 1)));
        let bad = text.replace("mu = \"1\"", "mu = \"2\"");
        assert!(parse_problem(&bad).is_err());
    }
}
