//! Exact rational scalars and their `"num/den"` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational used by every computation in the crate.
pub type Rational = BigRational;

/// Shorthand constructor, mostly for tests and literals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"`, `"n/d"` or a plain decimal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{t}`")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{t}`")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{t}`")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal `{t}`")));
        }
        let num: BigInt = digits.parse().expect("checked digits");
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        let value = Rational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    t.parse::<BigInt>()
        .map(Rational::from_integer)
        .map_err(|_| Error::Parse(format!("bad rational `{t}`")))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Nearest rational to a finite float with denominator at most `max_den`.
///
/// The float is first converted exactly, then reduced along its continued
/// fraction expansion; the closer of the last convergent and the best
/// semiconvergent wins (ties go to the convergent).
pub fn nearest_with_denominator(value: f64, max_den: u64) -> Result<Rational> {
    if !value.is_finite() {
        return Err(Error::NonFinite("value to approximate"));
    }
    if max_den < 1 {
        return Err(Error::DenominatorBound(max_den));
    }
    let exact = Rational::from_float(value).ok_or(Error::NonFinite("value to approximate"))?;
    let limit = BigInt::from(max_den);
    if exact.denom() <= &limit {
        return Ok(exact);
    }

    let (mut p0, mut q0, mut p1, mut q1) =
        (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let (mut n, mut d) = (exact.numer().clone(), exact.denom().clone());
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > limit {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let r = &n - &a * &d;
        n = std::mem::replace(&mut d, r);
        if d.is_zero() {
            break;
        }
    }
    let k = (&limit - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    if (&conv - &exact).abs() <= (&semi - &exact).abs() {
        Ok(conv)
    } else {
        Ok(semi)
    }
}

/// Serde adapters that encode rationals as `"num/den"` strings.
pub mod serde_text {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &Rational,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = RationalText::deserialize(d)?;
        raw.into_rational().map_err(de::Error::custom)
    }

    /// Accepts either a string or a JSON integer.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalText {
        Text(String),
        Int(i64),
    }

    impl RationalText {
        pub(crate) fn into_rational(self) -> Result<Rational> {
            match self {
                RationalText::Text(t) => parse_rational(&t),
                RationalText::Int(i) => Ok(int(i)),
            }
        }
    }

    /// A rational that (de)serializes as text, for use inside containers.
    #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
    pub struct Exact(pub Rational);

    impl serde::Serialize for Exact {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            serialize(&self.0, s)
        }
    }

    impl<'de> Deserialize<'de> for Exact {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            deserialize(d).map(Exact)
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            values: &[Rational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&format_rational(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            let raw = Vec::<RationalText>::deserialize(d)?;
            raw.into_iter()
                .map(|r| r.into_rational().map_err(de::Error::custom))
                .collect()
        }
    }
}
