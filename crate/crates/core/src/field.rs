//! Exact scalars: rationals and Gaussian rationals.
//!
//! Everything in this crate that decides a rank, an equality or a dimension
//! runs over these types. There are no tolerances anywhere.

use std::fmt::Debug;
use std::ops::Neg;
use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, Complex, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Q = BigRational;

/// Gaussian rational `a + b i` with `a, b` exact rationals.
pub type Gq = Complex<Q>;

/// A field with decidable equality, as needed by exact elimination.
pub trait Scalar: Clone + PartialEq + Debug + num::Num + Neg<Output = Self> + Send + Sync {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + num::Num + Neg<Output = T> + Send + Sync {}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn gq(re: i64, im: i64) -> Gq {
    Complex::new(q(re), q(im))
}

pub fn gq_real(x: Q) -> Gq {
    Complex::new(x, Q::zero())
}

/// Parses `"3"`, `"-3/2"` into an exact rational.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Formats a rational as `"n"` or `"n/d"` in lowest terms.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_gq(z: &Gq) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format_q(&z.re),
        (true, false) => format!("{}i", format_q(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{}{}i", format_q(&z.re), sign, format_q(&z.im.abs()))
        }
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn sqrt_q(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Exact square root in `Q(i)`, if one exists. Returns the root with
/// positive real part (or positive imaginary part when the real part is 0).
pub fn sqrt_gq(z: &Gq) -> Option<Gq> {
    if z.is_zero() {
        return Some(Gq::zero());
    }
    // (a + bi)^2 = z  =>  a^2 = (re + |z|)/2, b^2 = (|z| - re)/2.
    let modulus = sqrt_q(&(&z.re * &z.re + &z.im * &z.im))?;
    let two = q(2);
    let a = sqrt_q(&((&z.re + &modulus) / &two))?;
    let b = sqrt_q(&((&modulus - &z.re) / &two))?;
    let candidates = [
        Gq::new(a.clone(), b.clone()),
        Gq::new(a.clone(), -b.clone()),
    ];
    let root = candidates.into_iter().find(|c| &(c * c) == z)?;
    if root.re.is_negative() || (root.re.is_zero() && root.im.is_negative()) {
        Some(-root)
    } else {
        Some(root)
    }
}

/// Total order on Gaussian rationals used only for deterministic tie-breaks.
pub fn cmp_gq(a: &Gq, b: &Gq) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Size measure used to prefer small entries in deterministic choices.
pub fn height_gq(z: &Gq) -> BigInt {
    let h = |x: &Q| x.numer().abs() + x.denom().abs();
    h(&z.re) + h(&z.im)
}
