//! Numeric backends.
//!
//! Everything in the crate is generic over [`Scalar`]. Three backends exist:
//! exact rationals ([`BigRational`]), `f64`, and [`HpFloat`], a binary
//! floating-point number with a configurable mantissa. Square roots and
//! logarithms are only available on the [`Real`] backends.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default mantissa width of [`HpFloat`], in bits.
pub const DEFAULT_PRECISION: usize = 128;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic (other than `sqrt`) is exact.
    const EXACT: bool;

    fn from_rational(q: &BigRational) -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn floor_i64(&self) -> i64;
    /// `Some(n)` when the value is the integer `n`; float backends accept a
    /// relative error of `rel_tol`.
    fn nearest_integer(&self, rel_tol: f64) -> Option<i64>;
    /// Square root. Exact backends return `None` unless the root is exact.
    fn sqrt(&self) -> Option<Self>;
    /// Lossless (rational) or round-trippable (float) text form.
    fn to_text(&self) -> String;

    /// Relative rounding error of one operation; zero for exact backends.
    fn unit_roundoff() -> f64 {
        0.0
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    /// Equality up to `rel_tol` relative to the larger magnitude; exact
    /// backends compare exactly and ignore the tolerance.
    fn close_to(&self, other: &Self, rel_tol: f64) -> bool {
        if Self::EXACT || self == other {
            return self == other;
        }
        let diff = (self.clone() - other.clone()).abs();
        let scale = Self::max_of(self.abs(), other.abs());
        diff <= scale * Self::from_f64(rel_tol)
    }

    /// Relative distance `|a - b| / max(|a|, |b|)` as `f64`, zero when both vanish.
    fn rel_diff(&self, other: &Self) -> f64 {
        let scale = Self::max_of(self.abs(), other.abs());
        if scale.is_zero() {
            return 0.0;
        }
        ((self.clone() - other.clone()).abs() / scale).to_f64()
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational(text).map(|q| Self::from_rational(&q))
    }
}

/// Backends with square roots and logarithms.
pub trait Real: Scalar {
    fn sqrt_real(&self) -> Self;
    fn ln(&self) -> Self;
}

/// Parses `"p/q"`, integers, decimals and scientific notation into an exact
/// rational. `"0.1"` becomes `1/10`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e = i32::from_str(&s[pos + 1..]).map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let joined = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let q = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(q)
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite f64")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn floor_i64(&self) -> i64 {
        self.floor().to_integer().to_i64().expect("floor fits in i64")
    }

    fn nearest_integer(&self, _rel_tol: f64) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| BigRational::new(n, d))
    }

    fn to_text(&self) -> String {
        rational_text(self)
    }

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }

    fn from_rational(q: &BigRational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn floor_i64(&self) -> i64 {
        f64::floor(*self) as i64
    }

    fn nearest_integer(&self, rel_tol: f64) -> Option<i64> {
        let r = self.round();
        ((self - r).abs() <= rel_tol * f64::abs(*self).max(1.0)).then_some(r as i64)
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn to_text(&self) -> String {
        format!("{self:?}")
    }

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

impl Real for f64 {
    fn sqrt_real(&self) -> Self {
        f64::sqrt(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }
}

type Big = FBig<HalfEven, 2>;

thread_local! {
    static PRECISION: Cell<usize> = const { Cell::new(DEFAULT_PRECISION) };
}

/// Mantissa width used for new [`HpFloat`] values on this thread.
pub fn precision() -> usize {
    PRECISION.with(Cell::get)
}

/// Sets the mantissa width for new [`HpFloat`] values on this thread.
pub fn set_precision(bits: usize) {
    PRECISION.with(|p| p.set(bits.max(53)));
}

/// Runs `f` with a temporary precision, restoring the previous one afterwards.
pub fn with_precision<T>(bits: usize, f: impl FnOnce() -> T) -> T {
    let previous = precision();
    set_precision(bits);
    let out = f();
    set_precision(previous);
    out
}

/// Binary floating-point number with a mantissa of [`precision`] bits.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct HpFloat(Big);

impl HpFloat {
    fn wrap(v: Big) -> Self {
        HpFloat(v.with_precision(precision()).value())
    }

    fn from_bigint(n: &BigInt) -> Big {
        let i = IBig::from_str(&n.to_string()).expect("decimal integer");
        Big::from(i).with_precision(precision()).value()
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        self.0
            .clone()
            .with_base_and_precision::<10>(digits)
            .value()
            .to_string()
    }
}

impl Debug for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HpFloat({})", self.to_text())
    }
}

impl Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! hp_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for HpFloat {
            type Output = HpFloat;
            fn $m(self, rhs: HpFloat) -> HpFloat {
                HpFloat(self.0 $op rhs.0)
            }
        }
    };
}

hp_binop!(Add, add, +);
hp_binop!(Sub, sub, -);
hp_binop!(Mul, mul, *);
hp_binop!(Div, div, /);

impl Neg for HpFloat {
    type Output = HpFloat;
    fn neg(self) -> HpFloat {
        HpFloat(-self.0)
    }
}

impl Scalar for HpFloat {
    const EXACT: bool = false;

    fn unit_roundoff() -> f64 {
        2f64.powi(-(precision() as i32))
    }

    fn from_rational(q: &BigRational) -> Self {
        let n = Self::from_bigint(q.numer());
        if q.denom().is_one() {
            return HpFloat(n);
        }
        HpFloat(n / Self::from_bigint(q.denom()))
    }

    fn from_f64(v: f64) -> Self {
        Self::wrap(Big::try_from(v).expect("finite f64"))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    fn floor_i64(&self) -> i64 {
        let i = self.0.floor().to_int().value();
        i64::try_from(i).expect("floor fits in i64")
    }

    fn nearest_integer(&self, rel_tol: f64) -> Option<i64> {
        let r = self.0.round();
        let diff = HpFloat(dashu_base::Abs::abs(self.0.clone() - r.clone()));
        let scale = Self::max_of(self.abs(), Self::one());
        if diff <= scale * Self::from_f64(rel_tol) {
            i64::try_from(r.to_int().value()).ok()
        } else {
            None
        }
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= Self::zero()).then(|| self.sqrt_real())
    }

    fn to_text(&self) -> String {
        // ~log10(2) digits per bit, plus a guard digit
        let digits = (self.precision() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1;
        self.to_decimal(digits)
    }

    fn zero() -> Self {
        Self::wrap(Big::ZERO)
    }

    fn one() -> Self {
        Self::wrap(Big::ONE)
    }

    fn abs(&self) -> Self {
        HpFloat(dashu_base::Abs::abs(self.0.clone()))
    }
}

impl Real for HpFloat {
    fn sqrt_real(&self) -> Self {
        HpFloat(self.0.sqrt())
    }

    fn ln(&self) -> Self {
        HpFloat(self.0.ln())
    }
}

/// Total order helper for backends whose `partial_cmp` never fails on finite input.
pub fn cmp<S: Scalar>(a: &S, b: &S) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Serde helper: writes a scalar as its [`Scalar::to_text`] string.
pub fn ser_text<S: Scalar, Ser: serde::Serializer>(
    v: &S,
    ser: Ser,
) -> std::result::Result<Ser::Ok, Ser::Error> {
    ser.serialize_str(&v.to_text())
}

/// Serde helper for sequences of scalars.
pub fn ser_text_seq<S: Scalar, Ser: serde::Serializer>(
    v: &[S],
    ser: Ser,
) -> std::result::Result<Ser::Ok, Ser::Error> {
    ser.collect_seq(v.iter().map(Scalar::to_text))
}
