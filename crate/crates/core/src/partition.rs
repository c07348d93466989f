//! The 2-adic partition of ℚ.
//!
//! `Q_k` is the set of rationals of 2-adic order exactly `k`, and
//! `Q_K = {q : ν₂(q) >= K}` is an additive subgroup for every `K`.
//! `Q_P = Q_0` (odd denominators) splits each `Q_{-k}`, `k >= 1`, into
//! `2^(k-1)` cosets with representatives `q_k^ℓ = (2ℓ-1)/2^k`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parity::Parity;
use crate::rational::Rational;
use crate::valuation::Valuation;

/// Largest `k` for which [`coset_reps`] will materialise the full list.
pub const MAX_COSET_LIST_K: i64 = 27;

/// Names the coset representative `(2ℓ-1)/2^k`, with `1 <= ℓ <= 2^(k-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetRep {
    k: u64,
    ell: BigInt,
}

impl CosetRep {
    pub fn new(k: u64, ell: impl Into<BigInt>) -> Result<Self> {
        let ell = ell.into();
        if k < 1 {
            return Err(Error::OutOfRange {
                what: "coset level k",
                min: 1,
                got: k as i64,
            });
        }
        let top = BigInt::one() << (k - 1);
        if ell < BigInt::one() || ell > top {
            return Err(Error::OutOfRange {
                what: "coset index ell",
                min: 1,
                got: i64::try_from(&ell).unwrap_or(i64::MAX),
            });
        }
        Ok(CosetRep { k, ell })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn ell(&self) -> &BigInt {
        &self.ell
    }

    pub fn value(&self) -> Rational {
        let odd: BigInt = (&self.ell << 1) - 1;
        Rational::from_reduced(odd, BigInt::one() << self.k)
    }
}

impl fmt::Display for CosetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value().fmt(f)
    }
}

/// Where a rational sits relative to the cosets of `Q_P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetClass {
    /// The rational is already in `Q_P` (the trivial coset).
    InQp,
    Rep(CosetRep),
}

/// `2^k (2ℓ - 1)`, or zero. Negative values carry `ℓ <= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DyadicForm {
    Zero,
    Scaled { k: i64, ell: BigInt },
}

impl DyadicForm {
    pub fn value(&self) -> Rational {
        match self {
            DyadicForm::Zero => Rational::zero(),
            DyadicForm::Scaled { k, ell } => {
                &Rational::pow2(*k) * &Rational::from_integer((ell << 1) - 1)
            }
        }
    }
}

impl fmt::Display for DyadicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicForm::Zero => f.write_str("0"),
            DyadicForm::Scaled { k, ell } => {
                let odd: BigInt = (ell << 1) - 1;
                write!(f, "2^{k} * {odd} (k={k}, l={ell})")
            }
        }
    }
}

/// The `k` with `q ∈ Q_k`; `+∞` for zero.
pub fn level(q: &Rational) -> Valuation {
    q.nu2()
}

/// Membership in the subgroup `Q_K`. `K = 0` is `Q_P`, `K = 1` is the even
/// rationals.
pub fn in_qk(q: &Rational, k: i64) -> bool {
    q.nu2() >= k
}

pub fn in_qp(q: &Rational) -> bool {
    in_qk(q, 0)
}

/// Writes a dyadic rational as `2^k (2ℓ-1)`. Returns `None` when the
/// denominator is not a power of two.
pub fn dyadic_decompose(q: &Rational) -> Option<DyadicForm> {
    if q.is_zero() {
        return Some(DyadicForm::Zero);
    }
    let den = q.denom();
    let dz = den.trailing_zeros().unwrap_or(0);
    if !(den >> dz).is_one() {
        return None;
    }
    let nz = q.numer().trailing_zeros().unwrap_or(0);
    // exactly one of nz, dz is nonzero
    let k = nz as i64 - dz as i64;
    let odd: BigInt = q.numer() >> nz;
    let ell = (odd + BigInt::one()).div_floor(&BigInt::from(2));
    Some(DyadicForm::Scaled { k, ell })
}

/// Splits a rational of negative 2-adic order `-k` as `a / (2^k b)` with
/// `a`, `b` odd and `b > 0`.
fn split_negative(q: &Rational) -> Option<(u64, &BigInt, BigInt)> {
    let k = q.denom().trailing_zeros()?;
    if k == 0 {
        return None;
    }
    Some((k, q.numer(), q.denom() >> k))
}

/// Outcome of comparing two rationals' `Q_P`-cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetComparison {
    pub equal: bool,
    /// `(k, ν₂(a1·b2 − a2·b1))` when both rationals lie in the same
    /// `Q_{-k}` with `k >= 1`; the cosets agree iff the valuation is `>= k`.
    pub witness: Option<(u64, Valuation)>,
}

/// Decides `q1 + Q_P == q2 + Q_P` without forming `q1 - q2`.
///
/// Rationals of different negative order are never coset-equivalent; for a
/// common order `-k` the comparison reduces to `2^k | a1·b2 − a2·b1`.
pub fn compare_cosets(q1: &Rational, q2: &Rational) -> CosetComparison {
    match (split_negative(q1), split_negative(q2)) {
        (None, None) => CosetComparison {
            equal: true,
            witness: None,
        },
        (Some((k1, a1, b1)), Some((k2, a2, b2))) if k1 == k2 => {
            let cross = a1 * &b2 - a2 * &b1;
            let v = Rational::from_integer(cross).nu2();
            CosetComparison {
                equal: v >= k1 as i64,
                witness: Some((k1, v)),
            }
        }
        _ => CosetComparison {
            equal: false,
            witness: None,
        },
    }
}

pub fn coset_equal(q1: &Rational, q2: &Rational) -> bool {
    compare_cosets(q1, q2).equal
}

/// The unique representative `q_k^ℓ` with `q − q_k^ℓ ∈ Q_P`, or
/// [`CosetClass::InQp`] when `q` has no negative 2-adic order.
///
/// With `q = n/(2^k m)`, `m`, `n` odd, the index solves
/// `ℓ·m ≡ (n+m)/2 (mod 2^(k-1))`; residue 0 lifts to `ℓ = 2^(k-1)`.
pub fn coset_rep(q: &Rational) -> CosetClass {
    let Some((k, n, m)) = split_negative(q) else {
        return CosetClass::InQp;
    };
    let modulus = BigInt::one() << (k - 1);
    let ell = if k == 1 {
        BigInt::one()
    } else {
        let s: BigInt = (n + &m) / 2;
        let inv = m
            .modinv(&modulus)
            .expect("odd numbers are invertible modulo a power of two");
        let r: BigInt = (s * inv).mod_floor(&modulus);
        if r.is_zero() {
            modulus
        } else {
            r
        }
    };
    CosetClass::Rep(CosetRep { k, ell })
}

/// All `2^(k-1)` coset representatives inside `Q_{-k}`, in increasing ℓ.
pub fn coset_reps(k: i64) -> Result<Vec<CosetRep>> {
    if k < 1 {
        return Err(Error::OutOfRange {
            what: "coset level k",
            min: 1,
            got: k,
        });
    }
    if k > MAX_COSET_LIST_K {
        return Err(Error::CapExceeded {
            requested: 1u128 << (k - 1).min(127),
            cap: 1 << (MAX_COSET_LIST_K - 1),
        });
    }
    let k = k as u64;
    Ok((1..=1u64 << (k - 1))
        .map(|ell| CosetRep {
            k,
            ell: BigInt::from(ell),
        })
        .collect())
}

/// Some rational of the requested parity within `eps` of `target`.
///
/// Picks a denominator `d > 1/eps` of the parity the class needs, then the
/// nearest numerator of the right parity to `target·d`, which is within 1.
pub fn dense_witness(target: &Rational, eps: &Rational, class: Parity) -> Result<Rational> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveTolerance(eps.to_string()));
    }
    let (en, ed) = (eps.numer(), eps.denom());
    let mut d: BigInt = ed.div_floor(en) + 1;
    let want_even_den = class == Parity::None;
    if d.is_even() != want_even_den {
        d += 1;
    }
    let want_even_num = class == Parity::Even;
    let scaled = target.numer() * &d;
    let mut m = scaled.div_floor(target.denom());
    if m.is_even() != want_even_num {
        m += 1;
    }
    Rational::new(m, d)
}

/// Rationals in the same coset as `q` are exactly `q + Q_P`; convenience
/// for tests and callers building samples.
pub fn coset_member(q: &Rational, offset_in_qp: &Rational) -> Option<Rational> {
    in_qp(offset_in_qp).then(|| q + offset_in_qp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: i64, n: i64) -> Rational {
        Rational::new(m, n).unwrap()
    }

    fn rep(c: CosetClass) -> CosetRep {
        match c {
            CosetClass::Rep(r) => r,
            CosetClass::InQp => panic!("expected a representative"),
        }
    }

    #[test]
    fn levels_and_subgroups() {
        assert_eq!(level(&q(3, 4)), -2);
        assert_eq!(level(&q(6, 5)), 1);
        assert_eq!(level(&Rational::zero()), Valuation::Infinite);
        assert!(in_qk(&q(3, 5), 0));
        assert!(!in_qk(&q(1, 2), 0));
        assert!(in_qk(&Rational::zero(), 7));
        assert!(in_qk(&q(4, 3), 1));
        assert!(!in_qk(&q(4, 3), 3));
        assert!(in_qk(&q(1, 8), -3));
    }

    #[test]
    fn dyadic_examples() {
        assert_eq!(
            dyadic_decompose(&q(12, 1)),
            Some(DyadicForm::Scaled {
                k: 2,
                ell: 2.into()
            })
        );
        assert_eq!(
            dyadic_decompose(&q(3, 8)),
            Some(DyadicForm::Scaled {
                k: -3,
                ell: 2.into()
            })
        );
        assert_eq!(dyadic_decompose(&q(1, 3)), None);
        assert_eq!(dyadic_decompose(&Rational::zero()), Some(DyadicForm::Zero));
        assert_eq!(
            dyadic_decompose(&q(-1, 2)),
            Some(DyadicForm::Scaled {
                k: -1,
                ell: 0.into()
            })
        );
        assert_eq!(
            dyadic_decompose(&q(-12, 1)),
            Some(DyadicForm::Scaled {
                k: 2,
                ell: (-1).into()
            })
        );
    }

    #[test]
    fn coset_equality_examples() {
        assert!(!coset_equal(&q(1, 4), &q(3, 4)));
        assert!(coset_equal(&q(1, 4), &q(5, 4)));
        assert!(!coset_equal(&q(1, 2), &q(1, 4)));
        assert!(coset_equal(&q(2, 3), &q(7, 5)));
        assert!(!coset_equal(&q(1, 2), &q(1, 3)));
        let c = compare_cosets(&q(1, 4), &q(5, 4));
        assert_eq!(c.witness, Some((2, Valuation::Finite(2))));
        let c = compare_cosets(&q(1, 4), &q(3, 4));
        assert_eq!(c.witness, Some((2, Valuation::Finite(1))));
    }

    #[test]
    fn representative_examples() {
        let r = rep(coset_rep(&q(3, 4)));
        assert_eq!((r.k(), r.ell().clone()), (2, 2.into()));
        let r = rep(coset_rep(&q(5, 4)));
        assert_eq!((r.k(), r.ell().clone()), (2, 1.into()));
        assert_eq!(r.value(), q(1, 4));
        let r = rep(coset_rep(&q(1, 6)));
        assert_eq!(r.value(), q(1, 2));
        assert_eq!(coset_rep(&q(3, 5)), CosetClass::InQp);
        assert_eq!(coset_rep(&Rational::zero()), CosetClass::InQp);
    }

    #[test]
    fn representative_of_negative_and_deep_rationals() {
        for x in [q(-3, 4), q(-1, 2), q(-7, 24), q(11, 1024), q(-1, 1 << 40)] {
            let r = rep(coset_rep(&x));
            assert!(in_qp(&(&x - &r.value())), "{x} vs {r}");
        }
    }

    #[test]
    fn representative_lists() {
        let show = |k| {
            coset_reps(k)
                .unwrap()
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show(1), ["1/2"]);
        assert_eq!(show(2), ["1/4", "3/4"]);
        assert_eq!(show(3), ["1/8", "3/8", "5/8", "7/8"]);
        assert!(coset_reps(0).is_err());
        assert!(coset_reps(-2).is_err());
        assert!(matches!(coset_reps(60), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn coset_rep_validates_range() {
        assert!(CosetRep::new(3, 4).is_ok());
        assert!(CosetRep::new(3, 5).is_err());
        assert!(CosetRep::new(3, 0).is_err());
        assert!(CosetRep::new(0, 1).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = dense_witness(&Rational::zero(), &q(1, 100), Parity::Odd).unwrap();
        assert_eq!(w, q(1, 101));
        let w = dense_witness(&q(1, 2), &q(1, 10), Parity::Even).unwrap();
        assert_eq!(w, q(6, 11));
        let w = dense_witness(&Rational::one(), &q(1, 1000), Parity::None).unwrap();
        assert_eq!(w.parity(), Parity::None);
        assert!((&w - &Rational::one()).abs() < q(1, 1000));
        assert!(dense_witness(&Rational::one(), &Rational::zero(), Parity::Odd).is_err());
        assert!(dense_witness(&Rational::one(), &q(-1, 2), Parity::Odd).is_err());
    }

    #[test]
    fn witness_contract_on_grid() {
        let targets = [q(0, 1), q(-7, 3), q(5, 8), q(1000, 7), q(-1, 2)];
        let eps = [q(1, 1), q(1, 3), q(2, 7), q(1, 10_000), q(5, 2)];
        for t in &targets {
            for e in &eps {
                for class in Parity::ALL {
                    let w = dense_witness(t, e, class).unwrap();
                    assert_eq!(w.parity(), class, "{t} {e} {class}");
                    assert!((&w - t).abs() < *e, "{t} {e} {class} -> {w}");
                }
            }
        }
    }

    #[test]
    fn coset_member_requires_qp_offset() {
        assert_eq!(coset_member(&q(1, 4), &q(2, 3)), Some(q(11, 12)));
        assert_eq!(coset_member(&q(1, 4), &q(1, 2)), None);
    }
}
