//! Coefficient fields.
//!
//! Two backends implement [`Scalar`]: [`ExactScalar`], an always-reduced
//! arbitrary-precision rational, and [`NumericScalar`], a finite complex double.
//! Everything above this module is generic over the field, so the same
//! identity builder runs exactly on rational parameters and numerically when
//! `e^{iθ}` or an infinite q-product forces floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Exact,
    Numeric,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Exact => f.write_str("exact"),
            FieldKind::Numeric => f.write_str("numeric"),
        }
    }
}

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Mixed tolerance `|x−y| ≤ atol + rtol·max(|x|,|y|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::uniform(DEFAULT_TOLERANCE)
    }
}

impl Tolerance {
    pub fn uniform(tol: f64) -> Self {
        Tolerance { atol: tol, rtol: tol }
    }

    pub fn accepts(&self, x: Complex64, y: Complex64) -> bool {
        (x - y).norm() <= self.allowance(x, y)
    }

    pub fn allowance(&self, x: Complex64, y: Complex64) -> f64 {
        self.atol + self.rtol * x.norm().max(y.norm())
    }
}

/// Which field a computation runs in, and for the numeric field the tolerance
/// used when comparing results.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldTag {
    pub kind: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl FieldTag {
    pub fn exact() -> Self {
        FieldTag {
            kind: FieldKind::Exact,
            tolerance: None,
        }
    }

    pub fn numeric(tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::invalid(
                "tolerance",
                "numeric tolerance must be positive and finite",
            ));
        }
        Ok(FieldTag {
            kind: FieldKind::Numeric,
            tolerance: Some(tolerance),
        })
    }

    pub fn default_for(kind: FieldKind) -> Self {
        match kind {
            FieldKind::Exact => FieldTag::exact(),
            FieldKind::Numeric => FieldTag {
                kind,
                tolerance: Some(DEFAULT_TOLERANCE),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        match (self.kind, self.tolerance) {
            (FieldKind::Exact, None) => Ok(()),
            (FieldKind::Exact, Some(_)) => Err(Error::invalid("tolerance", "the exact field carries no tolerance")),
            (FieldKind::Numeric, Some(t)) if t > 0.0 && t.is_finite() => Ok(()),
            (FieldKind::Numeric, _) => Err(Error::invalid(
                "tolerance",
                "numeric tolerance must be positive and finite",
            )),
        }
    }

    pub fn tolerance(&self) -> Tolerance {
        Tolerance::uniform(self.tolerance.unwrap_or(0.0))
    }
}

/// Arithmetic shared by both coefficient fields.
///
/// `Div` panics on a zero divisor for the exact field; code that can meet a
/// pole calls [`Scalar::checked_div`] instead.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// Exact field rejects anything with an imaginary part or a non-dyadic
    /// value it cannot represent faithfully.
    fn from_complex(z: Complex64) -> Result<Self>;

    /// Exact zero test. Numeric zero means bitwise `0.0 + 0.0i`.
    fn is_zero(&self) -> bool;
    fn modulus(&self) -> f64;
    fn to_complex(&self) -> Complex64;
    /// `Some(n)` when the value is a non-negative integer.
    fn as_nonneg_int(&self) -> Option<usize>;
    fn as_integer(&self) -> Option<i64>;
    fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool;

    fn from_usize(v: usize) -> Self {
        Self::from_int(v as i64)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.clone() / rhs.clone())
        }
    }

    fn recip(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * sq.clone();
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }

    fn powu(&self, e: usize) -> Self {
        self.powi(e as i64).expect("non-negative powers never divide")
    }
}

/// Arbitrary-precision rational kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar(BigRational::new(numer.into(), d)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("literal ratio with zero denominator")
    }

    pub fn integer(v: i64) -> Self {
        ExactScalar(BigRational::from_integer(v.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        ExactScalar(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs(&self) -> Self {
        ExactScalar(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(['.', 'e', 'E']) {
            return Err(Error::Parse(format!(
                "`{s}` is not a rational literal; write exact values as p/q (e.g. 2/5)"
            )));
        }
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("`{s}` is not a rational literal p/q")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("`{s}` has a zero denominator")));
                }
                Ok(ExactScalar(BigRational::new(parse_int(n)?, d)))
            }
            None => Ok(ExactScalar(BigRational::from_integer(parse_int(s)?))),
        }
    }
}

impl Serialize for ExactScalar {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $ty((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(ExactScalar, Add, add);
forward_binop!(ExactScalar, Sub, sub);
forward_binop!(ExactScalar, Mul, mul);
forward_binop!(ExactScalar, Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Scalar for ExactScalar {
    const KIND: FieldKind = FieldKind::Exact;

    fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    fn from_int(v: i64) -> Self {
        ExactScalar::integer(v)
    }

    fn from_rational(r: &BigRational) -> Self {
        ExactScalar(r.clone())
    }

    fn from_complex(z: Complex64) -> Result<Self> {
        if z.im != 0.0 {
            return Err(Error::UnsupportedMode(
                "complex values are not representable in the exact field".into(),
            ));
        }
        BigRational::from_float(z.re)
            .map(ExactScalar)
            .ok_or_else(|| Error::invalid("value", "not a finite number"))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn modulus(&self) -> f64 {
        self.to_f64().abs()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }

    fn as_nonneg_int(&self) -> Option<usize> {
        if self.0.is_integer() && !self.0.is_negative() {
            self.0.numer().to_usize()
        } else {
            None
        }
    }

    fn as_integer(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    fn approx_eq(&self, other: &Self, _tol: Tolerance) -> bool {
        self == other
    }
}

/// Complex double with finite components.
#[derive(Clone, Copy, PartialEq)]
pub struct NumericScalar(Complex64);

impl NumericScalar {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::invalid("value", "numeric scalars must be finite"));
        }
        Ok(NumericScalar(Complex64::new(re, im)))
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    /// `e^{iθ}`.
    pub fn cis(theta: f64) -> Self {
        NumericScalar(Complex64::from_polar(1.0, theta))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }

    pub fn exp(&self) -> Self {
        NumericScalar(self.0.exp())
    }

    pub fn powc(&self, e: &NumericScalar) -> Self {
        NumericScalar(self.0.powc(e.0))
    }

    pub fn sqrt(&self) -> Self {
        NumericScalar(self.0.sqrt())
    }

    pub fn acos(&self) -> Self {
        NumericScalar(self.0.acos())
    }
}

impl fmt::Display for NumericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else if self.0.im < 0.0 {
            write!(f, "{}-{}i", self.0.re, -self.0.im)
        } else {
            write!(f, "{}+{}i", self.0.re, self.0.im)
        }
    }
}

impl fmt::Debug for NumericScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for NumericScalar {
    type Err = Error;

    /// Accepts decimals, `p/q` rationals and `re,im` pairs.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let real = |t: &str| -> Result<f64> {
            let t = t.trim();
            if t.contains('/') {
                Ok(t.parse::<ExactScalar>()?.to_f64())
            } else {
                t.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("`{s}` is not a number")))
            }
        };
        match s.split_once(',') {
            Some((re, im)) => NumericScalar::new(real(re)?, real(im)?),
            None => NumericScalar::new(real(s)?, 0.0),
        }
    }
}

impl Serialize for NumericScalar {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for NumericScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        NumericScalar::new(re, im).map_err(de::Error::custom)
    }
}

forward_binop!(NumericScalar, Add, add);
forward_binop!(NumericScalar, Sub, sub);
forward_binop!(NumericScalar, Mul, mul);
forward_binop!(NumericScalar, Div, div);

impl Neg for NumericScalar {
    type Output = NumericScalar;
    fn neg(self) -> NumericScalar {
        NumericScalar(-self.0)
    }
}

fn nearest_integer(z: Complex64) -> Option<i64> {
    if z.im != 0.0 || !z.re.is_finite() {
        return None;
    }
    let r = z.re.round();
    if (z.re - r).abs() <= 1e-12 * r.abs().max(1.0) && r.abs() < 9.0e15 {
        Some(r as i64)
    } else {
        None
    }
}

impl Scalar for NumericScalar {
    const KIND: FieldKind = FieldKind::Numeric;

    fn zero() -> Self {
        NumericScalar(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        NumericScalar(Complex64::new(1.0, 0.0))
    }

    fn from_int(v: i64) -> Self {
        NumericScalar(Complex64::new(v as f64, 0.0))
    }

    fn from_rational(r: &BigRational) -> Self {
        NumericScalar(Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0))
    }

    fn from_complex(z: Complex64) -> Result<Self> {
        NumericScalar::new(z.re, z.im)
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    fn modulus(&self) -> f64 {
        self.0.norm()
    }

    fn to_complex(&self) -> Complex64 {
        self.0
    }

    fn as_nonneg_int(&self) -> Option<usize> {
        nearest_integer(self.0).and_then(|v| usize::try_from(v).ok())
    }

    fn as_integer(&self) -> Option<i64> {
        nearest_integer(self.0)
    }

    fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        tol.accepts(self.0, other.0)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = NumericScalar(self.0 / rhs.0);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(Error::DivisionByZero)
        }
    }
}

/// Parses a literal into the field `S`. The exact field accepts only `p/q`
/// rationals; the numeric field also accepts decimals.
pub fn parse_scalar<S: Scalar>(s: &str) -> Result<S> {
    match S::KIND {
        FieldKind::Exact => {
            let r: ExactScalar = s.parse()?;
            Ok(S::from_rational(r.as_big()))
        }
        FieldKind::Numeric => {
            let v: NumericScalar = s.parse()?;
            S::from_complex(v.value())
        }
    }
}
