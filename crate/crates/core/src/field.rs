//! Exact scalars over the rationals or a prime field.
//!
//! Rationals keep an `i64` fast path and fall back to arbitrary precision
//! on overflow. Both representations are canonical (lowest terms, positive
//! denominator, small whenever it fits), so structural equality is value
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field: either ℚ or F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Largest supported prime; residues are multiplied in `u64`.
    pub const MAX_PRIME: u64 = u32::MAX as u64;

    pub fn prime(p: u64) -> Result<Self> {
        if !(2..=Self::MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(Rational::from_integer(n)),
            FieldSpec::Prime(p) => Scalar::Residue(Residue::new(n.rem_euclid(*p as i64) as u64, *p)),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den).inverse()?;
        Ok(self.from_i64(num) * d)
    }

    /// Enumerates every element of a finite field in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..*p).map(|v| Scalar::Residue(Residue::new(v, *p))).collect()),
        }
    }

    /// Parses the textual scalar form: `"3/4"`, `"-2"` over ℚ and
    /// `"2 mod 5"` (or a bare integer) over F_p.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => {
                let bad = || Error::Parse(format!("bad rational scalar {s:?}"));
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(Rational::from_big(BigRational::new(num, den))))
            }
            FieldSpec::Prime(p) => {
                let bad = || Error::Parse(format!("bad residue scalar {s:?}"));
                let value = match s.split_once("mod") {
                    Some((v, m)) => {
                        let m: u64 = m.trim().parse().map_err(|_| bad())?;
                        if m != *p {
                            return Err(Error::MixedFields);
                        }
                        v.trim()
                    }
                    None => s,
                };
                let v: BigInt = value.parse().map_err(|_| bad())?;
                let r = v.mod_floor(&BigInt::from(*p)).to_u64().ok_or_else(bad)?;
                Ok(Scalar::Residue(Residue::new(r, *p)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `F5`, `F_5`, `GF(5)` or a bare prime `5`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t
            .trim_start_matches("GF(")
            .trim_end_matches(')')
            .trim_start_matches(['F', 'f'])
            .trim_start_matches('_');
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Canonical exact rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

impl Rational {
    pub fn from_integer(n: i64) -> Self {
        Rational::Small { num: n, den: 1 }
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational::Small { num, den },
            _ => Rational::Big(Box::new(BigRational::new(n.into(), d.into()))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new already reduces and normalizes the sign.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Rational::Small { num, den },
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small { num, den } => BigRational::new_raw((*num).into(), (*den).into()),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { num: 0, .. })
    }

    fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small { num, den } if *num != i64::MIN => Rational::Small { num: -num, den: *den },
            _ => Self::from_big(-self.to_big()),
        }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        })
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { num, den: 1 } => write!(f, "{num}"),
            Rational::Small { num, den } => write!(f, "{num}/{den}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.add(&other.neg());
        match &diff {
            Rational::Small { num, .. } => num.cmp(&0),
            Rational::Big(b) => {
                if b.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }
}

/// Residue class in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        Residue { value: value % modulus, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Residue::new(acc, self.modulus)
    }
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Residue(Residue),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue(r) => FieldSpec::Prime(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => matches!(r, Rational::Small { num: 1, den: 1 }),
            Scalar::Residue(r) => r.value == 1,
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a.add(b))),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                Ok(Scalar::Residue(Residue::new(a.value + b.value, a.modulus)))
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar> {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a.mul(b))),
            (Scalar::Residue(a), Scalar::Residue(b)) if a.modulus == b.modulus => {
                Ok(Scalar::Residue(Residue::new(a.value * b.value, a.modulus)))
            }
            _ => Err(Error::MixedFields),
        }
    }

    pub fn checked_sub(&self, o: &Scalar) -> Result<Scalar> {
        self.checked_add(&-o)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => r.inverse().map(Scalar::Rational).ok_or(Error::DivisionByZero),
            Scalar::Residue(r) => {
                if r.value == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Residue(r.pow(r.modulus - 2)))
                }
            }
        }
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar> {
        self.checked_mul(&o.inverse()?)
    }

    pub fn pow(&self, e: u64) -> Scalar {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Residue(r) => write!(f, "{} mod {}", r.value, r.modulus),
        }
    }
}

// Operator forms panic on mixed fields; every object is validated against a
// single FieldSpec at construction, so mixing here is an internal bug.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.checked_add(o).expect("scalar addition across fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.checked_sub(o).expect("scalar subtraction across fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.checked_mul(o).expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.neg()),
            Scalar::Residue(r) => Scalar::Residue(Residue::new(r.modulus - r.value, r.modulus)),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_in_f5() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.from_i64(2).inverse().unwrap(), f.from_i64(3));
    }

    #[test]
    fn rational_sum() {
        let q = FieldSpec::Rationals;
        let a = q.from_ratio(1, 2).unwrap();
        let b = q.from_ratio(1, 3).unwrap();
        assert_eq!(&a + &b, q.from_ratio(5, 6).unwrap());
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = FieldSpec::prime(3).unwrap();
        assert!(matches!(f.zero().inverse(), Err(Error::DivisionByZero)));
        assert!(matches!(FieldSpec::Rationals.zero().inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldSpec::prime(3).unwrap().one();
        let b = FieldSpec::prime(5).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(Error::MixedFields)));
        assert!(matches!(a.checked_mul(&FieldSpec::Rationals.one()), Err(Error::MixedFields)));
    }

    #[test]
    fn non_primes_rejected() {
        assert!(FieldSpec::prime(4).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!("F7".parse::<FieldSpec>().is_ok());
        assert_eq!("GF(11)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(11));
        assert!("F9".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn small_path_overflows_into_big() {
        let q = FieldSpec::Rationals;
        let big = q.from_i64(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Rational(Rational::Big(_))));
        let back = &sq * &big.inverse().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Rational(Rational::Small { .. })));
        assert!(q.from_i64(i64::MIN).neg().checked_add(&q.from_i64(i64::MIN)).unwrap().is_zero());
    }

    #[test]
    fn textual_round_trip() {
        let q = FieldSpec::Rationals;
        for s in ["3/4", "-1", "0", "-7/3", "123456789012345678901234567891/11"] {
            assert_eq!(q.parse_scalar(s).unwrap().to_string(), s);
        }
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.parse_scalar("2 mod 5").unwrap().to_string(), "2 mod 5");
        assert_eq!(f.parse_scalar("-1").unwrap().to_string(), "4 mod 5");
        assert!(matches!(f.parse_scalar("2 mod 7"), Err(Error::MixedFields)));
        assert_eq!(q.parse_scalar("6/-4").unwrap().to_string(), "-3/2");
    }

    fn field_strategy() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            Just(FieldSpec::Prime(2)),
            Just(FieldSpec::Prime(3)),
            Just(FieldSpec::Prime(7)),
            Just(FieldSpec::Prime(65521)),
        ]
    }

    fn scalar_in(f: FieldSpec) -> impl Strategy<Value = Scalar> {
        (-1000i64..1000, 1i64..50).prop_map(move |(n, d)| match f {
            FieldSpec::Rationals => f.from_ratio(n, d).unwrap(),
            _ => f.from_i64(n),
        })
    }

    proptest! {
        #[test]
        fn field_axioms(
            (x, y, z) in field_strategy().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
        ) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&x + &-&x).is_zero());
            if !x.is_zero() {
                prop_assert!((&x * &x.inverse().unwrap()).is_one());
            }
        }
    }
}
