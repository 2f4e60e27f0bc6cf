//! Exact coefficient rings: star-subrings of ℂ containing 1 and closed under
//! complex conjugation.
//!
//! Every element is stored as a pair of arbitrary-precision rationals
//! `re + im·i`; the ring tag constrains which pairs are admissible. All four
//! rings are closed under the ring operations, so membership is only checked
//! where elements enter from outside (literals, `from_parts`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::RingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StarRing {
    /// ℤ
    Integers,
    /// ℤ\[i\]
    GaussianIntegers,
    /// ℤ\[1/2\]
    DyadicRationals,
    /// ℚ
    Rationals,
}

impl StarRing {
    pub const ALL: [StarRing; 4] = [
        StarRing::Integers,
        StarRing::GaussianIntegers,
        StarRing::DyadicRationals,
        StarRing::Rationals,
    ];

    /// Whether `λ₀ = Σᵢ₌₀ⁿ |λᵢ|²` forces `λ₁ = … = λₙ = 0` in this ring.
    ///
    /// For ℤ and ℤ\[i\], `λ₀` is a real integer with `λ₀² ≤ λ₀`, so
    /// `λ₀ ∈ {0, 1}` and the remaining terms vanish. ℤ\[1/2\] and ℚ fail on
    /// `1/2 = (1/2)² + (1/2)²`.
    pub fn is_kind(self) -> bool {
        matches!(self, StarRing::Integers | StarRing::GaussianIntegers)
    }

    /// The flag string used on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            StarRing::Integers => "Z",
            StarRing::GaussianIntegers => "Zi",
            StarRing::DyadicRationals => "Z_half",
            StarRing::Rationals => "Q",
        }
    }

    fn admits(self, re: &BigRational, im: &BigRational) -> bool {
        match self {
            StarRing::Integers => im.is_zero() && re.is_integer(),
            StarRing::GaussianIntegers => re.is_integer() && im.is_integer(),
            StarRing::DyadicRationals => im.is_zero() && is_power_of_two(re.denom()),
            StarRing::Rationals => im.is_zero(),
        }
    }
}

impl fmt::Display for StarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for StarRing {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" => Ok(StarRing::Integers),
            "Zi" => Ok(StarRing::GaussianIntegers),
            "Z_half" => Ok(StarRing::DyadicRationals),
            "Q" => Ok(StarRing::Rationals),
            other => Err(RingError::UnknownRing(other.to_owned())),
        }
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: StarRing,
    re: BigRational,
    im: BigRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Neg,
    Conj,
}

impl RingElement {
    pub fn zero(ring: StarRing) -> Self {
        Self {
            ring,
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one(ring: StarRing) -> Self {
        Self::from_integer(ring, 1)
    }

    pub fn from_integer(ring: StarRing, n: i64) -> Self {
        Self {
            ring,
            re: BigRational::from_integer(n.into()),
            im: BigRational::zero(),
        }
    }

    /// Builds `re + im·i`, rejecting values outside `ring`.
    pub fn from_parts(ring: StarRing, re: BigRational, im: BigRational) -> Result<Self, RingError> {
        if !ring.admits(&re, &im) {
            let value = Self {
                ring,
                re: re.clone(),
                im: im.clone(),
            }
            .to_string();
            return Err(RingError::NotInRing {
                value,
                ring: ring.tag(),
            });
        }
        Ok(Self { ring, re, im })
    }

    pub fn rational(ring: StarRing, numer: i64, denom: i64) -> Result<Self, RingError> {
        Self::from_parts(
            ring,
            BigRational::new(numer.into(), denom.into()),
            BigRational::zero(),
        )
    }

    pub fn gaussian(ring: StarRing, re: i64, im: i64) -> Result<Self, RingError> {
        Self::from_parts(
            ring,
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    /// Parses a literal such as `-3`, `1/2`, `1+2i`, `i` or `-i`, optionally
    /// wrapped in parentheses.
    pub fn parse(ring: StarRing, src: &str) -> Result<Self, RingError> {
        let (re, im) = parse_literal(src).ok_or_else(|| RingError::Malformed(src.to_owned()))?;
        Self::from_parts(ring, re, im)
    }

    pub fn ring(&self) -> StarRing {
        self.ring
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `true` for real elements below zero; used when printing signs.
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }

    pub fn conj(&self) -> Self {
        Self {
            ring: self.ring,
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `a·conj(a) = |a|²`, a nonnegative real element of the same ring.
    pub fn abs_sq(&self) -> Self {
        Self {
            ring: self.ring,
            re: &self.re * &self.re + &self.im * &self.im,
            im: BigRational::zero(),
        }
    }

    /// Checked arithmetic: operands must come from the same ring.
    pub fn arith(op: RingOp, a: &Self, b: Option<&Self>) -> Result<Self, RingError> {
        let binary = || -> Result<&Self, RingError> {
            let b = b.ok_or_else(|| RingError::Malformed("missing second operand".into()))?;
            if a.ring != b.ring {
                return Err(RingError::MixedRings(a.ring.tag(), b.ring.tag()));
            }
            Ok(b)
        };
        match op {
            RingOp::Add => Ok(a + binary()?),
            RingOp::Mul => Ok(a * binary()?),
            RingOp::Neg => Ok(-a),
            RingOp::Conj => Ok(a.conj()),
        }
    }
}

impl std::ops::Add for &RingElement {
    type Output = RingElement;

    fn add(self, rhs: &RingElement) -> RingElement {
        assert_eq!(self.ring, rhs.ring, "mixed-ring addition");
        RingElement {
            ring: self.ring,
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl std::ops::AddAssign<&RingElement> for RingElement {
    fn add_assign(&mut self, rhs: &RingElement) {
        assert_eq!(self.ring, rhs.ring, "mixed-ring addition");
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl std::ops::Sub for &RingElement {
    type Output = RingElement;

    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &RingElement {
    type Output = RingElement;

    fn mul(self, rhs: &RingElement) -> RingElement {
        assert_eq!(self.ring, rhs.ring, "mixed-ring multiplication");
        if self.im.is_zero() && rhs.im.is_zero() {
            return RingElement {
                ring: self.ring,
                re: &self.re * &rhs.re,
                im: BigRational::zero(),
            };
        }
        RingElement {
            ring: self.ring,
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl std::ops::Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring,
            re: -&self.re,
            im: -&self.im,
        }
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.im.is_one() {
            f.write_str("i")
        } else if (-&self.im).is_one() {
            f.write_str("-i")
        } else {
            fmt_rational(&self.im, f)?;
            f.write_str("i")
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = |t: &str, signed: bool| {
        let body = if signed {
            t.strip_prefix(['-', '+']).unwrap_or(t)
        } else {
            t
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num, true) {
        return None;
    }
    let numer: BigInt = num.parse().ok()?;
    let denom: BigInt = match den {
        Some(d) if digits(d, false) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return None;
    }
    Some(BigRational::new(numer, denom))
}

fn parse_imaginary(s: &str) -> Option<BigRational> {
    let body = s.strip_suffix('i')?;
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_rational(body),
    }
}

fn parse_literal(src: &str) -> Option<(BigRational, BigRational)> {
    let mut s = src.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        s = inner.trim();
    }
    let s = s.replace('\u{2212}', "-");
    let s = s.as_str();
    if !s.ends_with('i') {
        return parse_rational(s).map(|re| (re, BigRational::zero()));
    }
    // split at the last sign that is not the leading one
    let split = s
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(i, _)| i)
        .last();
    match split {
        Some(i) => Some((parse_rational(&s[..i])?, parse_imaginary(&s[i..])?)),
        None => Some((BigRational::zero(), parse_imaginary(s)?)),
    }
}

/// Outcome of testing one instance of the kindness condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KindVerdict {
    /// `λ₀ ≠ Σᵢ₌₀ⁿ |λᵢ|²`: the instance says nothing.
    HypothesisNotMet,
    /// The hypothesis holds and `λ₁ = … = λₙ = 0`.
    Consistent,
    /// The hypothesis holds but some `λᵢ ≠ 0` with `i ≥ 1`.
    KindnessViolated { witness: Vec<RingElement> },
}

/// Evaluates one instance `(λ₀, …, λₙ)` of the kindness condition.
///
/// A violation inside a ring asserted to be kind is an arithmetic bug and is
/// returned as an error rather than a verdict.
pub fn kind_instance_check(
    ring: StarRing,
    lambdas: &[RingElement],
) -> Result<KindVerdict, RingError> {
    let Some(first) = lambdas.first() else {
        return Err(RingError::Malformed("empty tuple".into()));
    };
    if let Some(bad) = lambdas.iter().find(|l| l.ring != ring) {
        return Err(RingError::MixedRings(ring.tag(), bad.ring.tag()));
    }
    let mut sum = RingElement::zero(ring);
    for l in lambdas {
        sum += &l.abs_sq();
    }
    if &sum != first {
        return Ok(KindVerdict::HypothesisNotMet);
    }
    if lambdas[1..].iter().all(RingElement::is_zero) {
        return Ok(KindVerdict::Consistent);
    }
    if ring.is_kind() {
        let witness = lambdas
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",");
        return Err(RingError::KindContradiction {
            ring: ring.tag(),
            witness,
        });
    }
    Ok(KindVerdict::KindnessViolated {
        witness: lambdas.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: i64) -> RingElement {
        RingElement::from_integer(StarRing::Integers, n)
    }

    fn half(n: i64, d: i64) -> RingElement {
        RingElement::rational(StarRing::DyadicRationals, n, d).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(
            RingElement::arith(RingOp::Add, &z(1), Some(&z(1))).unwrap(),
            z(2)
        );
        let g = RingElement::gaussian(StarRing::GaussianIntegers, 1, 1).unwrap();
        assert_eq!(g.conj().to_string(), "1-i");
        assert_eq!(
            RingElement::arith(RingOp::Mul, &half(1, 2), Some(&half(1, 2))).unwrap(),
            half(1, 4)
        );
        assert_eq!(
            RingElement::arith(RingOp::Add, &z(1), Some(&half(1, 2))),
            Err(RingError::MixedRings("Z", "Z_half"))
        );
        assert!(matches!(
            RingElement::rational(StarRing::DyadicRationals, 1, 3),
            Err(RingError::NotInRing { .. })
        ));
        assert!(RingElement::rational(StarRing::Integers, 1, 2).is_err());
        assert!(RingElement::gaussian(StarRing::Rationals, 0, 1).is_err());
    }

    #[test]
    fn abs_sq_examples() {
        let g = RingElement::gaussian(StarRing::GaussianIntegers, 1, 1).unwrap();
        assert_eq!(
            g.abs_sq(),
            RingElement::from_integer(StarRing::GaussianIntegers, 2)
        );
        assert_eq!(z(-3).abs_sq(), z(9));
        assert_eq!(half(1, 2).abs_sq(), half(1, 4));
    }

    #[test]
    fn literals() {
        let zi = StarRing::GaussianIntegers;
        for (src, re, im) in [
            ("1+2i", 1, 2),
            ("i", 0, 1),
            ("-i", 0, -1),
            ("1-i", 1, -1),
            ("-3", -3, 0),
            ("(2-3i)", 2, -3),
            ("4i", 0, 4),
            ("\u{2212}2", -2, 0),
        ] {
            let x = RingElement::parse(zi, src).unwrap();
            assert_eq!(x, RingElement::gaussian(zi, re, im).unwrap(), "{src}");
            assert_eq!(RingElement::parse(zi, &x.to_string()).unwrap(), x);
        }
        assert_eq!(
            RingElement::parse(StarRing::Rationals, "-1/2")
                .unwrap()
                .to_string(),
            "-1/2"
        );
        assert!(RingElement::parse(StarRing::Integers, "1/0").is_err());
        assert!(RingElement::parse(StarRing::Integers, "x").is_err());
        assert!(RingElement::parse(StarRing::Integers, "1+i").is_err());
    }

    #[test]
    fn kind_check_examples() {
        assert_eq!(
            kind_instance_check(StarRing::Integers, &[z(1), z(0)]),
            Ok(KindVerdict::Consistent)
        );
        assert_eq!(
            kind_instance_check(StarRing::DyadicRationals, &[half(1, 2), half(1, 2)]),
            Ok(KindVerdict::KindnessViolated {
                witness: vec![half(1, 2), half(1, 2)]
            })
        );
        assert_eq!(
            kind_instance_check(StarRing::Integers, &[z(2), z(1)]),
            Ok(KindVerdict::HypothesisNotMet)
        );
    }

    /// Enumerates every tuple `(λ₀, …, λₙ)` with entries drawn from `pool`.
    fn tuples(pool: &[RingElement], len: usize) -> Vec<Vec<RingElement>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|t| {
                    pool.iter().map(move |x| {
                        let mut t = t.clone();
                        t.push(x.clone());
                        t
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn integers_have_no_violation_in_small_search() {
        let pool: Vec<_> = (-3..=3).map(z).collect();
        for len in 2..=5 {
            for t in tuples(&pool, len) {
                assert!(kind_instance_check(StarRing::Integers, &t).is_ok());
            }
        }
    }

    #[test]
    fn gaussian_integers_have_no_violation_in_small_search() {
        let zi = StarRing::GaussianIntegers;
        let pool: Vec<_> = (-1..=1)
            .flat_map(|a| (-1..=1).map(move |b| RingElement::gaussian(zi, a, b).unwrap()))
            .chain([RingElement::from_integer(zi, 2)])
            .collect();
        for len in 2..=4 {
            for t in tuples(&pool, len) {
                assert!(kind_instance_check(zi, &t).is_ok());
            }
        }
    }

    #[test]
    fn dyadic_search_finds_half_half() {
        let zh = StarRing::DyadicRationals;
        let pool: Vec<_> = [(0, 1), (1, 4), (1, 2), (3, 4), (1, 1)]
            .iter()
            .map(|&(n, d)| half(n, d))
            .collect();
        let found: Vec<_> = tuples(&pool, 2)
            .into_iter()
            .filter(|t| {
                matches!(
                    kind_instance_check(zh, t),
                    Ok(KindVerdict::KindnessViolated { .. })
                )
            })
            .collect();
        assert_eq!(found, vec![vec![half(1, 2), half(1, 2)]]);
    }

    fn gaussian() -> impl Strategy<Value = RingElement> {
        (-50i64..50, -50i64..50)
            .prop_map(|(a, b)| RingElement::gaussian(StarRing::GaussianIntegers, a, b).unwrap())
    }

    proptest! {
        #[test]
        fn conjugation_laws(a in gaussian(), b in gaussian()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            prop_assert_eq!(a.abs_sq().is_zero(), a.is_zero());
            prop_assert!(a.abs_sq().is_real() && !a.abs_sq().re().is_negative());
        }
    }
}
