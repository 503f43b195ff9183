//! Singular points, characteristic exponents and the curve invariants they
//! determine.

mod exponents;
mod points;
mod report;

pub use exponents::{classify_point, exponent_normal_form, local_type, Classification, ExponentData, LocalType};
pub use points::{format_upoly, indicial_exponents, indicial_polynomial, singular_points, Location, SingularPoint};
pub use report::{
    analyze, curve_degree, euler_characteristic, AnalysisOptions, CurveReport, DegreeScale, EulerConvention,
    FuchsCheck, PointReport,
};
