use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::exponents::{classify_point, exponent_normal_form, Classification, ExponentData};
use super::points::{indicial_exponents, singular_points, Location};
use crate::algebra::{Rational, Ring};
use crate::builder::OdeResult;
use crate::error::{Error, Result};

/// Which form of the Euler characteristic formula to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EulerConvention {
    /// `|G| (2 + Σ_p (1/r_p - 1))`, consistent with the Klein quartic.
    #[default]
    Validated,
    /// `|G| (Σ_p (1/r_p - 1) - 2)`.
    Printed,
}

/// Constant multiplying `-Σ e_p / m` in the degree formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DegreeScale {
    Genus,
    #[default]
    GroupOrder,
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn euler_characteristic(r_values: &[u32], group_order: u64, convention: EulerConvention) -> Rational {
    let sum = r_values
        .iter()
        .fold(<Rational as Ring>::zero(), |acc, &r| acc + Rational::new(1.into(), r.into()) - int(1));
    let g = Rational::from_integer(BigInt::from(group_order));
    match convention {
        EulerConvention::Validated => g * (int(2) + sum),
        EulerConvention::Printed => g * (sum - int(2)),
    }
}

/// `-(scale / m) Σ_p e_p`.
pub fn curve_degree(exponent_sum: &Rational, m: u32, scale: &Rational) -> Result<Rational> {
    if m == 0 {
        return Err(Error::InvalidInput("the quotient map degree m must be positive".into()));
    }
    Ok(-(scale * exponent_sum) / int(m as i64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisOptions {
    /// Degree of the quotient map.
    pub m: u32,
    pub group_order: u64,
    /// Genus of the curve, when known.
    pub genus: Option<u32>,
    pub euler: EulerConvention,
    pub degree_scale: DegreeScale,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            m: 1,
            group_order: 1,
            genus: None,
            euler: EulerConvention::Validated,
            degree_scale: DegreeScale::GroupOrder,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointReport {
    pub location: Location,
    pub exponents: ExponentData,
    pub classification: Classification,
}

/// Sum of all exponents over the finite singular points and infinity, and
/// the value `n(n-1)(s-1)/2` it must equal for a Fuchsian equation with `s`
/// finite singular points.
#[derive(Clone, Debug, PartialEq)]
pub struct FuchsCheck {
    pub sum: Rational,
    pub expected: Rational,
}

impl FuchsCheck {
    pub fn holds(&self) -> bool {
        self.sum == self.expected
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveReport {
    pub order: usize,
    pub points: Vec<PointReport>,
    pub m: u32,
    pub group_order: u64,
    pub euler_convention: EulerConvention,
    pub euler_characteristic: Rational,
    /// Genus as supplied, or `(2 - χ)/2` when that is a non-negative integer.
    pub genus: Option<u32>,
    pub exponent_sum: Rational,
    pub degree_scale: DegreeScale,
    /// `None` when the genus scale is selected and no genus is known.
    pub degree: Option<Rational>,
    pub fuchs: FuchsCheck,
    pub warnings: Vec<String>,
}

/// Locates the singular points, computes exponent data and evaluates the
/// geometric formulas.
pub fn analyze(ode: &OdeResult<Rational>, options: &AnalysisOptions) -> Result<CurveReport> {
    let n = ode.order();
    if n < 2 {
        return Err(Error::Scope("curve data needs order at least 2".into()));
    }
    if options.group_order == 0 {
        return Err(Error::InvalidInput("the group order must be positive".into()));
    }
    let mut points = Vec::new();
    let mut r_values = Vec::new();
    let mut exponent_sum = <Rational as Ring>::zero();
    let mut all_sum = <Rational as Ring>::zero();
    let mut finite = 0i64;
    let mut infinity_seen = false;
    for p in singular_points(ode)? {
        let raw = indicial_exponents(ode, &p.location)?;
        let data = exponent_normal_form(&raw)?;
        let count = p.location.count();
        let weight = int(count as i64);
        exponent_sum += &data.e * &weight;
        let total = raw.iter().fold(<Rational as Ring>::zero(), |a, x| a + x);
        all_sum += total * &weight;
        match p.location {
            Location::Infinity => infinity_seen = true,
            _ => finite += count as i64,
        }
        r_values.extend(core::iter::repeat_n(data.r, count));
        let classification = classify_point(&data, options.m, n);
        points.push(PointReport {
            location: p.location,
            exponents: data,
            classification,
        });
    }
    if !infinity_seen {
        let raw = indicial_exponents(ode, &Location::Infinity)?;
        all_sum = raw.iter().fold(all_sum, |a, x| a + x);
    }
    let nn = n as i64;
    let fuchs = FuchsCheck {
        sum: all_sum,
        expected: int(nn * (nn - 1) * (finite - 1)) / int(2),
    };

    let mut warnings = Vec::new();
    let chi = euler_characteristic(&r_values, options.group_order, options.euler);
    if !chi.is_integer() {
        warnings.push(format!("inconsistent singularity data: Euler characteristic {chi} is not an integer"));
    }
    let derived_genus = if options.euler == EulerConvention::Validated && chi.is_integer() {
        let g = (int(2) - &chi) / int(2);
        (g.is_integer() && g >= int(0)).then(|| g.to_integer().try_into().ok()).flatten()
    } else {
        None
    };
    if let (Some(g), Some(d)) = (options.genus, derived_genus) {
        if g != d {
            warnings.push(format!("supplied genus {g} differs from 1 - χ/2 = {d}"));
        }
    }
    let genus = options.genus.or(derived_genus);
    let scale = match options.degree_scale {
        DegreeScale::GroupOrder => Some(Rational::from_integer(BigInt::from(options.group_order))),
        DegreeScale::Genus => genus.map(|g| int(g as i64)),
    };
    let degree = scale
        .map(|s| curve_degree(&exponent_sum, options.m, &s))
        .transpose()?;
    if !fuchs.holds() {
        warnings.push(format!(
            "exponent sum {} differs from the Fuchs value {}",
            fuchs.sum, fuchs.expected
        ));
    }
    Ok(CurveReport {
        order: n,
        points,
        m: options.m,
        group_order: options.group_order,
        euler_convention: options.euler,
        euler_characteristic: chi,
        genus,
        exponent_sum,
        degree_scale: options.degree_scale,
        degree,
        fuchs,
        warnings,
    })
}
