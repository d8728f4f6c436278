//! Exact scalars: rationals, Gaussian rationals ℚ(i), truncated power series
//! in one variable and rational exponents.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (sign, body) = match s.as_bytes()[0] {
        b'+' => (1, &s[1..]),
        b'-' => (-1, &s[1..]),
        _ => (1, s),
    };
    if body.is_empty() || body.starts_with(['+', '-']) {
        return None;
    }
    let r = match body.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() || n.is_negative() || d.is_negative() {
                return None;
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(body.parse::<BigInt>().ok()?),
    };
    Some(if sign < 0 { -r } else { r })
}

/// An element `re + im·i` of the Gaussian rationals ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRational::new(rat_int(n), Rational::zero())
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        GaussRational::new(rat(n, d), Rational::zero())
    }

    pub fn real(r: Rational) -> Self {
        GaussRational::new(r, Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`; zero exactly when the value is zero.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRational::new(&self.re * r, &self.im * r)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::from_int(1)
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let im = fmt_rational(&self.im);
        if self.re.is_zero() {
            return write!(f, "{im}*i");
        }
        if self.im.is_negative() {
            write!(f, "{}{}*i", fmt_rational(&self.re), im)
        } else {
            write!(f, "{}+{}*i", fmt_rational(&self.re), im)
        }
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRational {
    type Err = Error;

    /// Accepts `a`, `a/b`, `c/d*i`, `a/b+c/d*i`, `i`, `-i`, `2i` and the like.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParseScalar(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        if !t.ends_with('i') {
            return parse_rational(&t).map(GaussRational::real).ok_or_else(err);
        }
        // Split into real and imaginary parts at the last sign that is not leading.
        let bytes = t.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| bytes[k] == b'+' || bytes[k] == b'-');
        let (re_part, im_part) = match split {
            Some(k) => (&t[..k], &t[k..]),
            None => ("", t.as_str()),
        };
        let im_body = im_part.strip_suffix('i').ok_or_else(err)?;
        let im_body = im_body.strip_suffix('*').unwrap_or(im_body);
        let im = match im_body {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            b => parse_rational(b).ok_or_else(err)?,
        };
        let re = if re_part.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_part).ok_or_else(err)?
        };
        Ok(GaussRational::new(re, im))
    }
}

impl serde::Serialize for GaussRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRational::real(&self.re * &rhs.re);
        }
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussRational {
            type Output = GaussRational;
            fn $m(self, rhs: GaussRational) -> GaussRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// Shorthand constructor used heavily by the catalog.
pub fn q(n: i64) -> GaussRational {
    GaussRational::from_int(n)
}

/// A power series in `t` truncated modulo `t^(N+1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncPoly {
    coeffs: Vec<GaussRational>,
}

impl TruncPoly {
    pub fn zero(order: usize) -> Self {
        TruncPoly {
            coeffs: vec![GaussRational::zero(); order + 1],
        }
    }

    pub fn constant(c: GaussRational, order: usize) -> Self {
        let mut p = TruncPoly::zero(order);
        p.coeffs[0] = c;
        p
    }

    /// Builds from low-to-high coefficients; terms above `order` are dropped.
    pub fn from_coeffs(coeffs: &[GaussRational], order: usize) -> Self {
        let mut p = TruncPoly::zero(order);
        for (k, c) in coeffs.iter().enumerate().take(order + 1) {
            p.coeffs[k] = c.clone();
        }
        p
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &GaussRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: GaussRational) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TruncPoly) -> TruncPoly {
        let n = self.order().min(other.order());
        TruncPoly {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &TruncPoly) -> TruncPoly {
        let n = self.order().min(other.order());
        TruncPoly {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> TruncPoly {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Product modulo `t^(order+1)`.
    pub fn mul_trunc(&self, other: &TruncPoly, order: usize) -> TruncPoly {
        let mut out = TruncPoly::zero(order);
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || p > order {
                continue;
            }
            for (r, b) in other.coeffs.iter().enumerate() {
                if p + r > order {
                    break;
                }
                if !b.is_zero() {
                    out.coeffs[p + r] += &(a * b);
                }
            }
        }
        out
    }

    /// Horner evaluation at `t0`.
    pub fn eval(&self, t0: &GaussRational) -> GaussRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussRational::zero(), |acc, c| &(&acc * t0) + c)
    }
}

pub fn poly_mul_trunc(p: &TruncPoly, q: &TruncPoly, order: usize) -> TruncPoly {
    p.mul_trunc(q, order)
}

pub fn poly_eval(p: &TruncPoly, t0: &GaussRational) -> GaussRational {
    p.eval(t0)
}

/// A rational exponent of the contraction parameter ε.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatExp(pub Rational);

impl RatExp {
    pub fn int(n: i64) -> Self {
        RatExp(rat_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        RatExp(rat(n, d))
    }
}

impl PartialOrd for RatExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatExp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for RatExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl FromStr for RatExp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s)
            .map(RatExp)
            .ok_or_else(|| Error::ParseScalar(s.to_string()))
    }
}

impl serde::Serialize for RatExp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for RatExp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    #[test]
    fn field_examples() {
        assert_eq!(&g("1/2") + &g("1/2"), q(1));
        assert_eq!(&GaussRational::i() * &GaussRational::i(), q(-1));
        let inv = g("1+1*i").inv().unwrap();
        assert_eq!(inv, g("1/2-1/2*i"));
        // oracle: multiply back
        assert_eq!(&inv * &g("1+i"), q(1));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(GaussRational::zero().inv(), Err(Error::DivisionByZero));
        assert!(q(1).checked_div(&GaussRational::zero()).is_err());
    }

    #[test]
    fn lowest_terms() {
        let a = g("2/4");
        assert_eq!(a.re.numer(), &BigInt::from(1));
        assert_eq!(g("-3/6").to_string(), "-1/2");
        assert_eq!(g("0/7").to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(g("i"), GaussRational::i());
        assert_eq!(g("-i"), -GaussRational::i());
        assert_eq!(g("2*i").to_string(), "2*i");
        assert_eq!(g("1/3+2/5*i").to_string(), "1/3+2/5*i");
        assert_eq!(g("-1/3-2/5*i").to_string(), "-1/3-2/5*i");
        assert_eq!(g("+7"), q(7));
        for bad in ["", "1/0", "abc", "1//2", "--1", "1+"] {
            assert!(bad.parse::<GaussRational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn trunc_poly_examples() {
        let one_plus_t = TruncPoly::from_coeffs(&[q(1), q(1)], 2);
        let one_minus_t = TruncPoly::from_coeffs(&[q(1), q(-1)], 2);
        assert_eq!(
            poly_mul_trunc(&one_plus_t, &one_minus_t, 2),
            TruncPoly::from_coeffs(&[q(1), q(0), q(-1)], 2)
        );
        let t = TruncPoly::from_coeffs(&[q(0), q(1)], 1);
        assert!(poly_mul_trunc(&t, &t, 1).is_zero());

        let p = TruncPoly::from_coeffs(&[q(1), q(2), q(1)], 2);
        // schoolbook oracle
        let mut school = [q(0), q(0), q(0), q(0), q(0)];
        for a in 0..3 {
            for b in 0..3 {
                school[a + b] += &(p.coeff(a) * p.coeff(b));
            }
        }
        let sq = poly_mul_trunc(&p, &p, 2);
        assert_eq!(sq.coeffs(), &school[..3]);
        assert_eq!(sq, TruncPoly::from_coeffs(&[q(1), q(4), q(6)], 2));
    }

    #[test]
    fn eval_examples() {
        let p = TruncPoly::from_coeffs(&[q(1), q(0), q(-1)], 2);
        assert_eq!(poly_eval(&p, &q(1)), q(0));
        let t = TruncPoly::from_coeffs(&[q(0), q(1)], 1);
        assert_eq!(poly_eval(&t, &q(0)), q(0));
        let p = TruncPoly::from_coeffs(&[q(1), q(4), q(6)], 2);
        // direct substitution: 1 + 4/2 + 6/4
        assert_eq!(poly_eval(&p, &g("1/2")), g("9/2"));
    }

    #[test]
    fn rat_exp_order() {
        let a: RatExp = "1/3".parse().unwrap();
        assert!(a < RatExp::int(1));
        assert!(RatExp::frac(-1, 2) < RatExp::int(0));
        assert_eq!(a.to_string(), "1/3");
    }
}
