//! Exact coefficient arithmetic: the fields 𝔽_p, ℚ, ℚ(t) and the two DVR
//! models (ℤ localized at p with π = p; rationals in t regular at 0 with
//! π = t), with valuation, residue and fraction functors.

pub mod ratfunc;

pub use ratfunc::{RatFunc, UniPoly};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// π-adic valuation of a DVR element (or its image in K).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => std::cmp::Ordering::Equal,
            (Valuation::Infinite, _) => std::cmp::Ordering::Greater,
            (_, Valuation::Infinite) => std::cmp::Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        })
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// A coefficient field element. The interpretation (which field, which p)
/// is carried by the companion `CoeffModel`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    /// An element of ℚ.
    Q(BigRational),
    /// A residue in 𝔽_p, stored reduced to [0, p).
    Fp(BigInt),
    /// An element of ℚ(t).
    Qt(RatFunc),
}

/// Tag for the coefficient field of a polynomial: ℚ, 𝔽_p or ℚ(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffModel {
    Q,
    Fp(BigInt),
    Qt,
}

impl CoeffModel {
    pub fn zero(&self) -> Coeff {
        match self {
            CoeffModel::Q => Coeff::Q(BigRational::zero()),
            CoeffModel::Fp(_) => Coeff::Fp(BigInt::zero()),
            CoeffModel::Qt => Coeff::Qt(RatFunc::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoeffModel::Q => Coeff::Q(BigRational::one()),
            CoeffModel::Fp(_) => Coeff::Fp(BigInt::one()),
            CoeffModel::Qt => Coeff::Qt(RatFunc::one()),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            CoeffModel::Q => Coeff::Q(BigRational::from_integer(n.clone())),
            CoeffModel::Fp(p) => Coeff::Fp(n.mod_floor(p)),
            CoeffModel::Qt => Coeff::Qt(RatFunc::from_rational(BigRational::from_integer(n.clone()))),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Q(r) => r.is_zero(),
            Coeff::Fp(n) => n.is_zero(),
            Coeff::Qt(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Q(r) => r.is_one(),
            Coeff::Fp(n) => n.is_one(),
            Coeff::Qt(f) => f.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoeffModel::Q, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (CoeffModel::Fp(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp((x + y).mod_floor(p)),
            (CoeffModel::Qt, Coeff::Qt(x), Coeff::Qt(y)) => Coeff::Qt(x.add(y)),
            _ => panic!("coefficient model mismatch"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoeffModel::Q, Coeff::Q(x)) => Coeff::Q(-x),
            (CoeffModel::Fp(p), Coeff::Fp(x)) => Coeff::Fp((-x).mod_floor(p)),
            (CoeffModel::Qt, Coeff::Qt(x)) => Coeff::Qt(x.neg()),
            _ => panic!("coefficient model mismatch"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoeffModel::Q, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (CoeffModel::Fp(p), Coeff::Fp(x), Coeff::Fp(y)) => Coeff::Fp((x * y).mod_floor(p)),
            (CoeffModel::Qt, Coeff::Qt(x), Coeff::Qt(y)) => Coeff::Qt(x.mul(y)),
            _ => panic!("coefficient model mismatch"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (CoeffModel::Q, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (CoeffModel::Fp(p), Coeff::Fp(x)) => Coeff::Fp(mod_inverse(x, p)?),
            (CoeffModel::Qt, Coeff::Qt(x)) => Coeff::Qt(x.inv()?),
            _ => panic!("coefficient model mismatch"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// Extended-Euclid inverse of a mod m (m > 1, gcd(a, m) = 1).
fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(Error::DivisionByZero);
    }
    Ok(e.x.mod_floor(m))
}

/// The base discrete valuation ring V with uniformizer π.
///
/// Two instances: `MixedChar { p }` is ℤ localized at the prime p with
/// π = p (so K = ℚ, k = 𝔽_p); `EquiChar0` is rational functions in t
/// regular at 0 with π = t (so K = ℚ(t), k = ℚ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DvrModel {
    #[serde(rename = "mixed")]
    MixedChar {
        #[serde(with = "bigint_serde")]
        p: BigInt,
    },
    #[serde(rename = "equichar0")]
    EquiChar0,
}

mod bigint_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match n.try_into() as Result<i64, _> {
            Ok(v) => v.serialize(s),
            Err(_) => n.to_string().serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let v = i64::deserialize(d)?;
        Ok(BigInt::from(v))
    }
}

impl DvrModel {
    /// Mixed-characteristic model; p is checked prime by trial division.
    pub fn mixed(p: i64) -> Result<Self> {
        let p = BigInt::from(p);
        if !is_prime_trial_division(&p) {
            return Err(Error::Precondition(format!("{} is not prime", p)));
        }
        Ok(DvrModel::MixedChar { p })
    }

    pub fn equichar0() -> Self {
        DvrModel::EquiChar0
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DvrModel::MixedChar { p } => {
                if !is_prime_trial_division(p) {
                    return Err(Error::Precondition(format!("{} is not prime", p)));
                }
                Ok(())
            }
            DvrModel::EquiChar0 => Ok(()),
        }
    }

    /// Residue characteristic: p, or 0 in equicharacteristic zero.
    pub fn residue_char(&self) -> BigInt {
        match self {
            DvrModel::MixedChar { p } => p.clone(),
            DvrModel::EquiChar0 => BigInt::zero(),
        }
    }

    /// Coefficient model of the fraction field K.
    pub fn fraction_model(&self) -> CoeffModel {
        match self {
            DvrModel::MixedChar { .. } => CoeffModel::Q,
            DvrModel::EquiChar0 => CoeffModel::Qt,
        }
    }

    /// Coefficient model of the residue field k.
    pub fn residue_model(&self) -> CoeffModel {
        match self {
            DvrModel::MixedChar { p } => CoeffModel::Fp(p.clone()),
            DvrModel::EquiChar0 => CoeffModel::Q,
        }
    }

    /// The uniformizer π as an element of K.
    pub fn uniformizer(&self) -> Coeff {
        match self {
            DvrModel::MixedChar { p } => Coeff::Q(BigRational::from_integer(p.clone())),
            DvrModel::EquiChar0 => Coeff::Qt(RatFunc::t()),
        }
    }

    /// Spelling of π in polynomial strings: "p" or "t".
    pub fn pi_symbol(&self) -> &'static str {
        match self {
            DvrModel::MixedChar { .. } => "p",
            DvrModel::EquiChar0 => "t",
        }
    }

    /// Exact π-adic valuation of an element of K; Infinite iff zero.
    pub fn valuation(&self, c: &Coeff) -> Valuation {
        match (self, c) {
            (DvrModel::MixedChar { p }, Coeff::Q(r)) => {
                if r.is_zero() {
                    Valuation::Infinite
                } else {
                    let vn = padic_val(r.numer(), p);
                    let vd = padic_val(r.denom(), p);
                    Valuation::Finite(vn - vd)
                }
            }
            (DvrModel::EquiChar0, Coeff::Qt(f)) => match f.ord0() {
                None => Valuation::Infinite,
                Some(v) => Valuation::Finite(v),
            },
            _ => panic!("element does not belong to this model's fraction field"),
        }
    }

    /// Image of an element of V in the residue field k.
    ///
    /// Errors with NegativeValuation if the element is not in V.
    pub fn reduce_mod_pi(&self, c: &Coeff) -> Result<Coeff> {
        match self.valuation(c) {
            Valuation::Finite(v) if v < 0 => {
                return Err(Error::NegativeValuation(self.display_coeff(c)))
            }
            _ => {}
        }
        Ok(match (self, c) {
            (DvrModel::MixedChar { p }, Coeff::Q(r)) => {
                let n = r.numer().mod_floor(p);
                let d = r.denom().mod_floor(p);
                Coeff::Fp((n * mod_inverse(&d, p)?).mod_floor(p))
            }
            (DvrModel::EquiChar0, Coeff::Qt(f)) => Coeff::Q(f.eval0()?),
            _ => panic!("element does not belong to this model's fraction field"),
        })
    }

    /// π^k as an element of K (k may be negative).
    pub fn pi_pow(&self, k: i64) -> Coeff {
        let m = self.fraction_model();
        let pi = self.uniformizer();
        let mut acc = m.one();
        for _ in 0..k.unsigned_abs() {
            acc = m.mul(&acc, &pi);
        }
        if k < 0 {
            m.inv(&acc).expect("pi is nonzero")
        } else {
            acc
        }
    }

    pub fn display_coeff(&self, c: &Coeff) -> String {
        match c {
            Coeff::Q(r) => r.to_string(),
            Coeff::Fp(n) => n.to_string(),
            Coeff::Qt(f) => f.to_string(),
        }
    }
}

/// An element of V: an element of K with non-negative π-adic valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvrElement {
    value: Coeff,
}

impl DvrElement {
    pub fn new(value: Coeff, model: &DvrModel) -> Result<Self> {
        match model.valuation(&value) {
            Valuation::Finite(v) if v < 0 => {
                Err(Error::NegativeValuation(model.display_coeff(&value)))
            }
            _ => Ok(DvrElement { value }),
        }
    }

    pub fn value(&self) -> &Coeff {
        &self.value
    }
}

fn padic_val(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        n = q;
    }
}

/// Trial division up to √p; the corpus uses small primes.
pub fn is_prime_trial_division(p: &BigInt) -> bool {
    if *p < BigInt::from(2) {
        return false;
    }
    let two = BigInt::from(2);
    if *p == two {
        return true;
    }
    if p.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *p {
        if p.mod_floor(&d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

/// Parse an element of K from a decimal string or t-expression, e.g.
/// "12", "7/3", "t^3/(1+t)". Delegates to the polynomial expression parser
/// with an empty variable set.
pub fn parse_element(s: &str, model: &DvrModel) -> Result<Coeff> {
    crate::poly::parse_constant(s, model)
}

pub fn rational_to_i64(r: &BigRational) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mixed2() -> DvrModel {
        DvrModel::mixed(2).unwrap()
    }

    #[test]
    fn valuation_of_12_at_2_is_2() {
        // 12 = 2^2 * 3 by trial division
        let m = mixed2();
        let v = m.valuation(&Coeff::Q(BigRational::from_integer(BigInt::from(12))));
        assert_eq!(v, Valuation::Finite(2));
    }

    #[test]
    fn valuation_of_zero_is_infinite() {
        let m = mixed2();
        assert!(m.valuation(&Coeff::Q(BigRational::zero())).is_infinite());
        let e = DvrModel::equichar0();
        assert!(e.valuation(&Coeff::Qt(RatFunc::zero())).is_infinite());
    }

    #[test]
    fn valuation_t3_over_1_plus_t() {
        let m = DvrModel::equichar0();
        let c = parse_element("t^3/(1+t)", &m).unwrap();
        assert_eq!(m.valuation(&c), Valuation::Finite(3));
    }

    #[test]
    fn reduce_7_mod_2() {
        let m = mixed2();
        let r = m
            .reduce_mod_pi(&Coeff::Q(BigRational::from_integer(BigInt::from(7))))
            .unwrap();
        assert_eq!(r, Coeff::Fp(BigInt::one()));
    }

    #[test]
    fn reduce_t_plus_3_at_zero() {
        let m = DvrModel::equichar0();
        let c = parse_element("t + 3", &m).unwrap();
        let r = m.reduce_mod_pi(&c).unwrap();
        assert_eq!(r, Coeff::Q(BigRational::from_integer(BigInt::from(3))));
    }

    #[test]
    fn reduce_one_third_mod_2() {
        // 3 ≡ 1 mod 2, so 1/3 ≡ 1 in F_2
        let m = mixed2();
        let c = parse_element("1/3", &m).unwrap();
        assert_eq!(m.reduce_mod_pi(&c).unwrap(), Coeff::Fp(BigInt::one()));
    }

    #[test]
    fn inverse_of_3_mod_5() {
        let f5 = CoeffModel::Fp(BigInt::from(5));
        let inv = f5.inv(&Coeff::Fp(BigInt::from(3))).unwrap();
        assert_eq!(inv, Coeff::Fp(BigInt::from(2)));
    }

    #[test]
    fn zero_inverse_is_error() {
        let q = CoeffModel::Q;
        assert_eq!(q.inv(&q.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn negative_valuation_rejected() {
        let m = mixed2();
        let half = Coeff::Q(BigRational::new(BigInt::one(), BigInt::from(2)));
        assert!(DvrElement::new(half, &m).is_err());
    }

    #[test]
    fn primality_by_trial_division() {
        for p in [2i64, 3, 5, 7, 11, 97] {
            assert!(DvrModel::mixed(p).is_ok(), "{} should be prime", p);
        }
        for c in [1i64, 4, 9, 15, 91] {
            assert!(DvrModel::mixed(c).is_err(), "{} should be rejected", c);
        }
    }
}
