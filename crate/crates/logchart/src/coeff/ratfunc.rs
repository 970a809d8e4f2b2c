//! Dense univariate polynomials over ℚ and rational functions in t.
//!
//! `UniPoly` stores coefficients in ascending degree order; the vector is
//! empty for zero, and the last entry is nonzero otherwise. `RatFunc` is a
//! reduced fraction of `UniPoly`s with monic denominator — the fraction
//! field ℚ(t) and, restricted to functions regular at 0, the
//! equicharacteristic-zero model of V.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            UniPoly { coeffs: vec![c] }
        }
    }

    /// The indeterminate t.
    pub fn t() -> Self {
        UniPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at t = 0; None for the zero polynomial.
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let factor = rem.leading().unwrap() / &lead;
            quot[dr - dd] = factor.clone();
            let mut sub = vec![BigRational::zero(); dr + 1];
            for (i, c) in div.coeffs.iter().enumerate() {
                sub[i + dr - dd] = c * &factor;
            }
            rem = rem.sub(&UniPoly::from_coeffs(sub));
        }
        (Self::from_coeffs(quot), rem)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&(BigRational::one() / l)),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", monomial_t(i))?;
            } else {
                write!(f, "{}*{}", mag, monomial_t(i))?;
            }
        }
        Ok(())
    }
}

fn monomial_t(i: usize) -> String {
    if i == 1 {
        "t".to_string()
    } else {
        format!("t^{}", i)
    }
}

/// A rational function num/den over ℚ in the variable t.
///
/// Canonical form: gcd(num, den) = 1 and den monic; zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: UniPoly::zero(),
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let lead = den.leading().unwrap().clone();
        RatFunc {
            num: num.scale(&(BigRational::one() / &lead)),
            den: den.monic(),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: UniPoly::one(),
            den: UniPoly::one(),
        }
    }

    pub fn t() -> Self {
        RatFunc {
            num: UniPoly::t(),
            den: UniPoly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        RatFunc {
            num: UniPoly::constant(c),
            den: UniPoly::one(),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == UniPoly::one() && self.den == UniPoly::one()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Order of vanishing at t = 0: ord0(num) - ord0(den). None if zero.
    pub fn ord0(&self) -> Option<i64> {
        let n = self.num.ord0()? as i64;
        let d = self.den.ord0().expect("nonzero denominator") as i64;
        Some(n - d)
    }

    /// Value at t = 0; requires the function to be regular there.
    pub fn eval0(&self) -> Result<BigRational> {
        self.eval(&BigRational::zero())
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// True iff the denominator does not vanish at t = 0.
    pub fn regular_at_0(&self) -> bool {
        !self.den.eval(&BigRational::zero()).is_zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            if self.num.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            }
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

pub fn rational_from_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        rational_from_int(n)
    }

    #[test]
    fn divrem_roundtrip() {
        // (t^2 - 1) / (t - 1) = t + 1
        let num = UniPoly::from_coeffs(vec![rat(-1), rat(0), rat(1)]);
        let den = UniPoly::from_coeffs(vec![rat(-1), rat(1)]);
        let (q, r) = num.divrem(&den);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_coeffs(vec![rat(1), rat(1)]));
    }

    #[test]
    fn ratfunc_cancellation() {
        let num = UniPoly::from_coeffs(vec![rat(-1), rat(0), rat(1)]);
        let den = UniPoly::from_coeffs(vec![rat(-1), rat(1)]);
        let f = RatFunc::new(num, den).unwrap();
        assert_eq!(f, RatFunc::from_poly(UniPoly::from_coeffs(vec![rat(1), rat(1)])));
    }

    #[test]
    fn ord0_of_reduced_fraction() {
        // t^3 / (1 + t): ord 3
        let f = RatFunc::new(
            UniPoly::from_coeffs(vec![rat(0), rat(0), rat(0), rat(1)]),
            UniPoly::from_coeffs(vec![rat(1), rat(1)]),
        )
        .unwrap();
        assert_eq!(f.ord0(), Some(3));
        assert!(f.regular_at_0());
    }

    #[test]
    fn division_by_zero_detected() {
        assert_eq!(RatFunc::zero().inv(), Err(Error::DivisionByZero));
    }
}
