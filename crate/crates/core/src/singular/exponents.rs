use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Exponents written as `{e, e + ν/r, e + (ν + λ_1)/r, ..., e + (ν + λ_{n-2})/r}`
/// with `gcd(r, ν, λ_1, ..., λ_{n-2}) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentData {
    pub e: Rational,
    pub r: u32,
    pub nu: u32,
    pub lambdas: Vec<u32>,
    /// The exponents in increasing order.
    pub raw: Vec<Rational>,
}

impl ExponentData {
    /// The sorted exponents rebuilt from `(e, r, ν, λ)`.
    pub fn reconstruct(&self) -> Vec<Rational> {
        let r = Rational::from_integer(BigInt::from(self.r));
        let step = |k: u32| &self.e + Rational::from_integer(BigInt::from(k)) / &r;
        let mut out = alloc::vec![self.e.clone(), step(self.nu)];
        out.extend(self.lambdas.iter().map(|&l| step(self.nu + l)));
        out
    }
}

fn small(q: &Rational, what: &str) -> Result<u32> {
    q.to_integer()
        .to_u32()
        .ok_or_else(|| Error::Scope(format!("{what} does not fit in 32 bits")))
}

/// Normal form of at least two distinct rational exponents.
pub fn exponent_normal_form(exponents: &[Rational]) -> Result<ExponentData> {
    if exponents.len() < 2 {
        return Err(Error::Scope("exponent data needs order at least 2".into()));
    }
    let mut raw = exponents.to_vec();
    raw.sort();
    if raw.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedExponents);
    }
    let e = raw[0].clone();
    let diffs: Vec<Rational> = raw[1..].iter().map(|x| x - &e).collect();
    let r = diffs.iter().fold(BigInt::one(), |acc, d| acc.lcm(d.denom()));
    let rq = Rational::from_integer(r.clone());
    let nu = small(&(&diffs[0] * &rq), "ν")?;
    let lambdas = diffs[1..]
        .iter()
        .map(|d| small(&(d * &rq), "λ").map(|v| v - nu))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentData {
        e,
        r: small(&rq, "r")?,
        nu,
        lambdas,
        raw,
    })
}

/// Local shape of the curve above a point (order 3, degree-one quotient).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalType {
    /// `(ν, ν + λ_1)`-cusp, `ν ≥ 2`.
    Cusp(u32, u32),
    /// `(1, 1 + λ_1)`-flex, `λ_1 ≥ 2`.
    Flex(u32, u32),
    /// `ν = λ_1 = 1`.
    Regular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    /// The curve is smooth above the point.
    pub smooth: bool,
    /// All local solutions are single-valued.
    pub apparent: bool,
    /// Cusp or flex label; `None` outside order 3 with `m = 1`.
    pub local: Option<LocalType>,
}

/// Cusp or flex label, defined only for order 3 and a quotient map of
/// degree 1.
pub fn local_type(data: &ExponentData, m: u32, n: usize) -> Result<LocalType> {
    if m != 1 || n != 3 {
        return Err(Error::Scope(format!(
            "cusp and flex labels need order 3 and m = 1 (got order {n}, m = {m})"
        )));
    }
    let l1 = data.lambdas[0];
    Ok(if data.nu >= 2 {
        LocalType::Cusp(data.nu, data.nu + l1)
    } else if l1 >= 2 {
        LocalType::Flex(1, 1 + l1)
    } else {
        LocalType::Regular
    })
}

pub fn classify_point(data: &ExponentData, m: u32, n: usize) -> Classification {
    Classification {
        smooth: data.nu == 1 && data.lambdas.iter().all(|&l| l == 1),
        apparent: data.r == 1,
        local: local_type(data, m, n).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn normal_form_examples() {
        let d = exponent_normal_form(&[rat(0, 1), rat(1, 2), rat(3, 2)]).unwrap();
        assert_eq!((d.e.clone(), d.r, d.nu, d.lambdas.clone()), (rat(0, 1), 2, 1, alloc::vec![2]));
        let d = exponent_normal_form(&[rat(0, 1), rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!((d.r, d.nu, d.lambdas.clone()), (1, 1, alloc::vec![1]));
        let d = exponent_normal_form(&[rat(-1, 3), rat(0, 1), rat(1, 3)]).unwrap();
        assert_eq!((d.e.clone(), d.r, d.nu, d.lambdas.clone()), (rat(-1, 3), 3, 1, alloc::vec![1]));
        assert_eq!(
            exponent_normal_form(&[rat(0, 1), rat(0, 1), rat(1, 1)]),
            Err(Error::RepeatedExponents)
        );
    }

    fn data(r: u32, nu: u32, l: u32) -> ExponentData {
        ExponentData { e: rat(0, 1), r, nu, lambdas: alloc::vec![l], raw: alloc::vec![] }
    }

    #[test]
    fn labels() {
        assert_eq!(local_type(&data(5, 2, 1), 1, 3), Ok(LocalType::Cusp(2, 3)));
        assert_eq!(local_type(&data(5, 1, 2), 1, 3), Ok(LocalType::Flex(1, 3)));
        let c = classify_point(&data(1, 1, 1), 1, 3);
        assert!(c.smooth && c.apparent);
        assert!(matches!(local_type(&data(1, 1, 1), 2, 3), Err(Error::Scope(_))));
        assert!(matches!(local_type(&data(1, 1, 1), 1, 4), Err(Error::Scope(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn normal_form_round_trip(
            e in (-30i64..30, 1i64..12),
            steps in proptest::collection::vec((1i64..20, 1i64..12), 1..5),
        ) {
            let mut xs = alloc::vec![rat(e.0, e.1)];
            for (a, b) in steps {
                let next = xs.last().unwrap() + rat(a, b);
                xs.push(next);
            }
            let d = exponent_normal_form(&xs).unwrap();
            prop_assert_eq!(d.reconstruct(), xs);
            let g = d.lambdas.iter().fold(d.r.gcd(&d.nu), |acc, l| acc.gcd(l));
            prop_assert_eq!(g, 1);
            prop_assert!(d.lambdas.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
