//! Exact reduced rationals over arbitrary-precision integers.
//!
//! A [`Rational`] is always stored as `num/den` with `gcd(|num|, den) = 1`
//! and `den >= 1`; zero is `0/1`. Every constructor and every arithmetic
//! operation re-establishes that form, so parity and valuation can be read
//! straight off the stored numerator and denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::valuation::Valuation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    /// Builds `m/n` in lowest terms with a positive denominator.
    pub fn new(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (m, n) = (m.into(), n.into());
        if n.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(m, n))
    }

    pub fn from_integer(z: impl Into<BigInt>) -> Self {
        Rational {
            num: z.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Caller guarantees `gcd(|num|, den) = 1` and `den > 0`.
    pub(crate) fn from_reduced(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        debug_assert!(num.gcd(&den).is_one());
        Rational { num, den }
    }

    fn reduce(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Rational { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn abs(&self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce(self.den.clone(), self.num.clone()))
    }

    /// `2^k` as an exact rational (any sign of `k`).
    pub fn pow2(k: i64) -> Rational {
        let p = BigInt::one() << k.unsigned_abs();
        if k >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::from_reduced(BigInt::one(), p)
        }
    }

    pub fn parity(&self) -> Parity {
        if self.den.is_even() {
            Parity::None
        } else if self.num.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Odd numerator: the union of the odd and none classes.
    pub fn is_uneven(&self) -> bool {
        self.num.is_odd()
    }

    /// 2-adic order, read from trailing zero bits.
    pub fn nu2(&self) -> Valuation {
        match self.num.trailing_zeros() {
            None => Valuation::Infinite,
            Some(tz) => {
                let dz = self.den.trailing_zeros().unwrap_or(0);
                Valuation::Finite(tz as i64 - dz as i64)
            }
        }
    }

    /// p-adic order for any base `p >= 2`. Primality of `p` is not checked.
    pub fn nu(&self, p: i64) -> Result<Valuation> {
        if p < 2 {
            return Err(Error::InvalidBase(p));
        }
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let p = BigInt::from(p);
        Ok(Valuation::Finite(
            multiplicity(&self.num, &p) - multiplicity(&self.den, &p),
        ))
    }

    /// Decimal rendering with exactly `digits` significant digits, rounded
    /// half away from zero. Computed exactly; no floating point.
    pub fn to_sig_decimal(&self, digits: u32) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return match digits {
                1 => "0".to_string(),
                _ => format!("0.{}", "0".repeat(digits as usize - 1)),
            };
        }
        let num = self.num.abs();
        let den = &self.den;
        // exponent e with 10^e <= |q| < 10^(e+1)
        let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
        let ten = BigInt::from(10);
        let cmp_pow = |e: i64| -> Ordering {
            // compare num/den with 10^e
            if e >= 0 {
                num.cmp(&(den * ten.pow(e as u32)))
            } else {
                (&num * ten.pow((-e) as u32)).cmp(den)
            }
        };
        while cmp_pow(e) == Ordering::Less {
            e -= 1;
        }
        while cmp_pow(e + 1) != Ordering::Less {
            e += 1;
        }
        let shift = digits as i64 - 1 - e;
        let scaled = |shift: i64| -> BigInt {
            let (n, d) = if shift >= 0 {
                (&num * ten.pow(shift as u32), den.clone())
            } else {
                (num.clone(), den * ten.pow((-shift) as u32))
            };
            let (q, r) = n.div_rem(&d);
            if r * 2 >= d {
                q + 1
            } else {
                q
            }
        };
        let mut mant = scaled(shift);
        if mant == ten.pow(digits) {
            e += 1;
            mant = scaled(shift - 1);
        }
        let mant = mant.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let body = if e < 0 {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), mant)
        } else if e as u32 >= digits - 1 {
            format!("{}{}", mant, "0".repeat((e - digits as i64 + 1) as usize))
        } else {
            let (int, frac) = mant.split_at(e as usize + 1);
            format!("{int}.{frac}")
        };
        format!("{sign}{body}")
    }

    pub fn to_f64(&self) -> f64 {
        match (self.num.to_f64(), self.den.to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => f64::NAN,
        }
    }
}

fn multiplicity(z: &BigInt, p: &BigInt) -> i64 {
    let mut z = z.clone();
    let mut k = 0;
    loop {
        let (q, r) = z.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        z = q;
        k += 1;
    }
}

/// Free-function forms of the classification surface.
pub fn make_rational(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(m, n)
}

pub fn classify(q: &Rational) -> Parity {
    q.parity()
}

pub fn is_uneven(q: &Rational) -> bool {
    q.is_uneven()
}

pub fn nu(q: &Rational, p: i64) -> Result<Valuation> {
    q.nu(p)
}

pub fn nu2(q: &Rational) -> Valuation {
    q.nu2()
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(z: i64) -> Self {
        Rational::from_integer(z)
    }
}

impl From<BigInt> for Rational {
    fn from(z: BigInt) -> Self {
        Rational::from_integer(z)
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;

    fn add(self, rhs: &Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Rational::reduce(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;

    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;

    fn mul(self, rhs: &Rational) -> Rational {
        Rational::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                (&self).$m(rhs)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `m/n`, `m`, and either with a leading `-`. Whitespace, a zero
/// denominator and a signed denominator are rejected.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (m, n) = match body.split_once('/') {
            Some((m, n)) => (m, Some(n)),
            None => (body, None),
        };
        if !digits(m) || !n.is_none_or(digits) {
            return Err(bad());
        }
        let mut m: BigInt = m.parse().map_err(|_| bad())?;
        if neg {
            m = -m;
        }
        match n {
            None => Ok(Rational::from_integer(m)),
            Some(n) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                if n.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Rational::reduce(m, n))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: i64, n: i64) -> Rational {
        Rational::new(m, n).unwrap()
    }

    #[test]
    fn construction_reduces() {
        assert_eq!(q(10, 3).to_string(), "10/3");
        assert_eq!(q(2, 8).to_string(), "1/4");
        assert_eq!(q(3, -6).to_string(), "-1/2");
        assert_eq!(q(0, -5).to_string(), "0/1");
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 4) + q(1, 4), q(1, 2));
        assert_eq!(q(2, 3) * q(3, 2), Rational::one());
        assert_eq!(q(3, 4) - q(1, 4), q(1, 2));
        assert_eq!(-q(1, 3), q(-1, 3));
        assert_eq!(q(1, 6) + q(1, 3), q(1, 2));
        assert_eq!(q(5, 7).recip(), Some(q(7, 5)));
        assert_eq!(Rational::zero().recip(), None);
    }

    #[test]
    fn classification() {
        assert_eq!(q(5, 1).parity(), Parity::Odd);
        assert_eq!(q(10, 1).parity(), Parity::Even);
        assert_eq!(q(1, 2).parity(), Parity::None);
        assert_eq!(Rational::zero().parity(), Parity::Even);
        assert_eq!(q(-3, 7).parity(), Parity::Odd);
        assert!(q(1, 4).is_uneven());
        assert!(!q(2, 3).is_uneven());
        assert!(q(7, 1).is_uneven());
    }

    #[test]
    fn valuations() {
        assert_eq!(Rational::zero().nu(2), Ok(Valuation::Infinite));
        assert_eq!(q(3, 8).nu(2), Ok(Valuation::Finite(-3)));
        assert_eq!(q(18, 5).nu(3), Ok(Valuation::Finite(2)));
        assert_eq!(q(12, 1).nu2(), 2);
        assert_eq!(q(1, 2).nu2(), -1);
        assert_eq!(q(5, 7).nu2(), 0);
        assert_eq!(q(-40, 9).nu2(), 3);
        assert_eq!(q(5, 7).nu(1), Err(Error::InvalidBase(1)));
        assert_eq!(q(5, 7).nu(-2), Err(Error::InvalidBase(-2)));
        // composite bases are accepted as-is
        assert_eq!(q(36, 1).nu(6), Ok(Valuation::Finite(2)));
    }

    #[test]
    fn nu_matches_nu2_for_base_two() {
        for m in -50..50 {
            for n in 1..40 {
                let r = q(m, n);
                assert_eq!(r.nu(2).unwrap(), r.nu2(), "{r}");
            }
        }
    }

    #[test]
    fn ordering() {
        assert!(q(1, 3) < q(1, 2));
        assert!(q(-1, 2) < q(-1, 3));
        assert_eq!(q(2, 4).cmp(&q(1, 2)), Ordering::Equal);
    }

    #[test]
    fn parsing() {
        assert_eq!("3/4".parse::<Rational>(), Ok(q(3, 4)));
        assert_eq!("-6/4".parse::<Rational>(), Ok(q(-3, 2)));
        assert_eq!("10".parse::<Rational>(), Ok(q(10, 1)));
        assert_eq!("-0".parse::<Rational>(), Ok(Rational::zero()));
        assert_eq!("1/0".parse::<Rational>(), Err(Error::ZeroDenominator));
        for bad in [
            "", " 1/2", "1 /2", "1/-2", "+1", "1/2/3", "a/b", "1/", "/2", "--1",
        ] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(q(1, 3).to_sig_decimal(12), "0.333333333333");
        assert_eq!(q(2, 3).to_sig_decimal(12), "0.666666666667");
        assert_eq!(q(1, 2).to_sig_decimal(12), "0.500000000000");
        assert_eq!(Rational::one().to_sig_decimal(12), "1.00000000000");
        assert_eq!(q(6, 1).to_sig_decimal(12), "6.00000000000");
        assert_eq!(q(-1, 8).to_sig_decimal(3), "-0.125");
        assert_eq!(q(1, 1024).to_sig_decimal(4), "0.0009766");
        assert_eq!(q(999_999, 1).to_sig_decimal(3), "1000000");
        assert_eq!(q(123_456, 1).to_sig_decimal(12), "123456.000000");
        assert_eq!(q(19_999, 20_000).to_sig_decimal(3), "1.00");
        assert_eq!(Rational::zero().to_sig_decimal(12), "0.00000000000");
        assert_eq!(Rational::zero().to_sig_decimal(1), "0");
    }

    #[test]
    fn pow2() {
        assert_eq!(Rational::pow2(3), q(8, 1));
        assert_eq!(Rational::pow2(-2), q(1, 4));
        assert_eq!(Rational::pow2(0), Rational::one());
    }
}
