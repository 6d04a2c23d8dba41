use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parses `"3"`, `"-1/4"` or a finite decimal such as `"0.25"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::MalformedInput(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = BigInt::from(10).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int.abs() * &den + frac;
        let num = if negative { -mag } else { mag };
        return Ok(BigRational::new(num, den));
    }
    Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?))
}

/// Renders `num/den`, or just `num` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod rational_vec {
    use num_rational::BigRational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&super::format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| super::parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub(crate) mod rational_opt {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&super::format_rational(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| super::parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Entry law for the exact oracle, described by its even moments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleLaw {
    /// `±v` with `v = 1/2`.
    Rademacher,
    /// Centered normal with variance `1/4`.
    Gaussian,
}

impl OracleLaw {
    /// `V_2, V_4, ..., V_{2 l_max}`.
    pub fn moments(self, l_max: usize) -> Vec<BigRational> {
        let quarter = BigRational::new(1.into(), 4.into());
        let mut out = Vec::with_capacity(l_max);
        let mut pow = BigRational::one();
        let mut dfact = BigInt::one();
        for l in 1..=l_max {
            pow *= &quarter;
            dfact *= BigInt::from(2 * l - 1);
            out.push(match self {
                OracleLaw::Rademacher => pow.clone(),
                OracleLaw::Gaussian => &pow * BigRational::from_integer(dfact.clone()),
            });
        }
        out
    }

    /// Square of the largest possible entry, if the law is bounded.
    pub fn bound_sq(self) -> Option<BigRational> {
        match self {
            OracleLaw::Rademacher => Some(BigRational::new(1.into(), 4.into())),
            OracleLaw::Gaussian => None,
        }
    }
}

/// Inputs of the exact moment oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSpec {
    pub n: u32,
    #[serde(with = "rational_str")]
    pub rho: BigRational,
    pub s: usize,
    /// `V_2, V_4, ..., V_{2s}`.
    #[serde(with = "rational_vec")]
    pub moments: Vec<BigRational>,
    /// Truncation level `U_n` (a bound on `|a_ij|`), if any.
    #[serde(default, with = "rational_opt")]
    pub truncation: Option<BigRational>,
}

impl MomentSpec {
    pub fn new(n: u32, rho: BigRational, s: usize, moments: Vec<BigRational>) -> Result<Self> {
        let spec = MomentSpec {
            n,
            rho,
            s,
            moments,
            truncation: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_law(n: u32, rho: BigRational, s: usize, law: OracleLaw) -> Result<Self> {
        let mut spec = MomentSpec::new(n, rho, s, law.moments(s.max(1)))?;
        if law == OracleLaw::Rademacher {
            spec.truncation = Some(BigRational::new(1.into(), 2.into()));
        }
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        if !self.rho.is_positive() || self.rho > BigRational::from_integer(self.n.into()) {
            return Err(Error::Config(format!(
                "rho must lie in (0, n], got {}",
                format_rational(&self.rho)
            )));
        }
        match self.moments.first() {
            Some(v2) if v2.is_positive() => {}
            _ => return Err(Error::Config("V_2 must be given and positive".into())),
        }
        if self.moments.len() < self.s {
            return Err(Error::Config(format!(
                "order 2s = {} needs {} even moments, got {}",
                2 * self.s,
                self.s,
                self.moments.len()
            )));
        }
        Ok(())
    }

    /// `V_{2l}`.
    pub fn v(&self, two_l: usize) -> Result<&BigRational> {
        self.moments.get(two_l / 2 - 1).ok_or_else(|| {
            Error::Config(format!("moment V_{two_l} is not in the moment list"))
        })
    }

    /// Replaces every `V_{2l}` by `c^{2l} V_{2l}`.
    pub fn scaled(&self, c: &BigRational) -> Self {
        let c2 = c * c;
        let mut f = BigRational::one();
        let moments = self
            .moments
            .iter()
            .map(|v| {
                f *= &c2;
                v * &f
            })
            .collect();
        MomentSpec {
            moments,
            truncation: self.truncation.as_ref().map(|u| u * c.abs()),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1/4").unwrap(), q(1, 4));
        assert_eq!(parse_rational(" 6 ").unwrap(), q(6, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&q(2, 8)), "1/4");
        assert_eq!(format_rational(&q(3, 1)), "3");
    }

    #[test]
    fn law_moments() {
        assert_eq!(OracleLaw::Rademacher.moments(3), vec![q(1, 4), q(1, 16), q(1, 64)]);
        assert_eq!(OracleLaw::Gaussian.moments(3), vec![q(1, 4), q(3, 16), q(15, 64)]);
    }

    #[test]
    fn validation() {
        assert!(MomentSpec::with_law(4, q(5, 1), 2, OracleLaw::Rademacher).is_err());
        assert!(MomentSpec::new(4, q(1, 1), 3, vec![q(1, 4)]).is_err());
        assert!(MomentSpec::new(4, q(1, 1), 1, vec![q(0, 1)]).is_err());
        let spec = MomentSpec::with_law(4, q(2, 1), 2, OracleLaw::Rademacher).unwrap();
        assert!(spec.v(6).is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = MomentSpec::with_law(4, q(1, 2), 2, OracleLaw::Gaussian).unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"rho\":\"1/2\""));
        let back: MomentSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }
}
