//! Sparse multivariate polynomial arithmetic over the coefficient fields,
//! ideals, quotient presentations and module presentations of Kähler
//! differentials.
//!
//! Exponents are arbitrary-precision: the substitution exponents (Nm)^i of
//! the normalization recursion grow geometrically and overflow fixed-width
//! integers already at small instances.

pub mod parse;

pub use parse::{parse_constant, parse_fracpoly, parse_poly, parse_poly_in};

use crate::coeff::{Coeff, CoeffModel, DvrModel, Valuation};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Ordered list of distinct variable names. Order is fixed at creation;
/// monomial orders and exponent vectors reference positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(|s| s.into()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::Parse("empty variable name".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("duplicate variable name {}", n)));
            }
        }
        Ok(VarSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Extend with fresh names; errors on duplicates.
    pub fn extended<S: Into<String>>(&self, extra: Vec<S>) -> Result<Self> {
        let mut names = self.names.clone();
        names.extend(extra.into_iter().map(|s| s.into()));
        VarSet::new(names)
    }

    /// Reorder so that the listed positions come first (in the given order).
    pub fn permuted_front(&self, front: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut perm: Vec<usize> = front.to_vec();
        for i in 0..self.len() {
            if !front.contains(&i) {
                perm.push(i);
            }
        }
        if perm.len() != self.len() {
            return Err(Error::Precondition("invalid variable permutation".into()));
        }
        let names = perm.iter().map(|&i| self.names[i].clone()).collect();
        Ok((VarSet { names }, perm))
    }
}

/// Exponent vector; multiplication adds exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<BigUint>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![BigUint::zero(); nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![BigUint::zero(); nvars];
        e[i] = BigUint::one();
        Monomial(e)
    }

    pub fn var_pow(i: usize, e: BigUint, nvars: usize) -> Self {
        let mut v = vec![BigUint::zero(); nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn total_degree(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self; None when not divisible.
    pub fn div_into(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a > b {
                return None;
            }
            out.push(b - a);
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        )
    }

    /// Componentwise scaling by k (monomial k-th power).
    pub fn pow_scale(&self, k: &BigUint) -> Self {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

/// Sparse multivariate polynomial over a coefficient model.
///
/// Invariant: no zero coefficients stored; all exponent vectors have
/// length `nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    model: CoeffModel,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero(model: CoeffModel, nvars: usize) -> Self {
        Poly {
            model,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(model: CoeffModel, nvars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(model, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(model: CoeffModel, nvars: usize) -> Self {
        let c = model.one();
        Self::constant(model, nvars, c)
    }

    pub fn var(model: CoeffModel, nvars: usize, i: usize) -> Self {
        let c = model.one();
        let mut p = Self::zero(model, nvars);
        p.add_term(Monomial::var(i, nvars), c);
        p
    }

    pub fn from_terms(
        model: CoeffModel,
        nvars: usize,
        terms: Vec<(Monomial, Coeff)>,
    ) -> Self {
        let mut p = Self::zero(model, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn model(&self) -> &CoeffModel {
        &self.model
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.model.zero())
    }

    /// Constant coefficient if the polynomial is a constant (or zero).
    pub fn as_constant(&self) -> Option<Coeff> {
        if self.terms.is_empty() {
            return Some(self.model.zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// (monomial, coefficient) if the polynomial has exactly one term.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        assert_eq!(m.nvars(), self.nvars, "exponent vector length mismatch");
        if self.model.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.model.add(e.get(), &c);
                if self.model.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            model: self.model.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.model.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.model.clone(), self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.model.mul(c1, c2));
            }
        }
        out
    }

    /// Multiply by a single term c * x^m.
    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        if self.model.is_zero(c) {
            return Self::zero(self.model.clone(), self.nvars);
        }
        Poly {
            model: self.model.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m1, c1)| (m1.mul(m), self.model.mul(c1, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.model.clone(), self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// self^e with an arbitrary-precision exponent. Single-term polynomials
    /// take the fast exact path; otherwise e must fit in u32 (the huge
    /// exponents of the normalization trick only ever occur on monomials).
    pub fn pow_big(&self, e: &BigUint) -> Self {
        if e.is_zero() {
            return Self::one(self.model.clone(), self.nvars);
        }
        if let Some((m, c)) = self.as_single_term() {
            let ce = pow_coeff(&self.model, c, e);
            return Poly::from_terms(
                self.model.clone(),
                self.nvars,
                vec![(m.pow_scale(e), ce)],
            );
        }
        let small = e
            .to_u32()
            .unwrap_or_else(|| panic!("polynomial power {} too large for a non-monomial base", e));
        self.pow(small)
    }

    pub fn total_degree(&self) -> Option<BigUint> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, v: usize) -> Option<BigUint> {
        self.terms.keys().map(|m| m.0[v].clone()).max()
    }

    /// Coefficient of the highest power of variable v, as a polynomial in
    /// the remaining variables (exponent of v set to zero).
    pub fn leading_coefficient_in(&self, v: usize) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.degree_in(v).unwrap();
        let mut out = Self::zero(self.model.clone(), self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] == d {
                let mut e = m.clone();
                e.0[v] = BigUint::zero();
                out.add_term(e, c.clone());
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable i.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.model.clone(), self.nvars);
        for (m, c) in &self.terms {
            if m.0[i].is_zero() {
                continue;
            }
            let mut e = m.clone();
            e.0[i] -= BigUint::one();
            let factor = self
                .model
                .from_bigint(&BigInt::from(m.0[i].clone()));
            out.add_term(e, self.model.mul(c, &factor));
        }
        out
    }

    /// Exact composed polynomial under a full variable assignment
    /// (assignment[i] substituted for variable i). Ring homomorphism.
    pub fn substitute(&self, assignment: &[Poly]) -> Self {
        assert_eq!(assignment.len(), self.nvars, "assignment incomplete");
        let out_nvars = assignment
            .first()
            .map(|p| p.nvars)
            .unwrap_or(self.nvars);
        let mut out = Self::zero(self.model.clone(), out_nvars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(self.model.clone(), out_nvars, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                term = term.mul(&assignment[i].pow_big(e));
            }
            out = out.add(&term);
        }
        out
    }

    /// Substitute a single variable, leaving the others in place.
    pub fn substitute_var(&self, v: usize, value: &Poly) -> Self {
        let assignment: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                if i == v {
                    value.clone()
                } else {
                    Poly::var(self.model.clone(), self.nvars, i)
                }
            })
            .collect();
        self.substitute(&assignment)
    }

    /// Apply a permutation of variables: new variable j = old variable perm[j].
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut inv = vec![0usize; self.nvars];
        for (new_i, &old_i) in perm.iter().enumerate() {
            inv[old_i] = new_i;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![BigUint::zero(); self.nvars];
                for (old_i, exp) in m.0.iter().enumerate() {
                    e[inv[old_i]] = exp.clone();
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Poly {
            model: self.model.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    /// Reinterpret over a larger variable set (old variable i becomes
    /// variable embed[i]).
    pub fn embed(&self, new_nvars: usize, embed: &[usize]) -> Self {
        assert_eq!(embed.len(), self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![BigUint::zero(); new_nvars];
                for (old_i, exp) in m.0.iter().enumerate() {
                    e[embed[old_i]] = exp.clone();
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Poly {
            model: self.model.clone(),
            nvars: new_nvars,
            terms,
        }
    }

    /// Map coefficients into another model; drops terms that map to zero.
    pub fn map_coeffs<F>(&self, model: CoeffModel, f: F) -> Result<Poly>
    where
        F: Fn(&Coeff) -> Result<Coeff>,
    {
        let mut out = Poly::zero(model, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Minimum π-adic valuation over the coefficients; None when zero.
    pub fn content_valuation(&self, dvr: &DvrModel) -> Option<i64> {
        self.terms
            .values()
            .map(|c| match dvr.valuation(c) {
                Valuation::Finite(v) => v,
                Valuation::Infinite => unreachable!("zero coefficients are never stored"),
            })
            .min()
    }

    /// Divide out the π-content: returns (self / π^v, v) where v is the
    /// minimum coefficient valuation. The result has at least one
    /// coefficient of valuation 0, hence nonzero image in k[x].
    pub fn content_normalize(&self, dvr: &DvrModel) -> Result<(Poly, i64)> {
        let v = self.content_valuation(dvr).ok_or(Error::ZeroPolynomial)?;
        if v == 0 {
            return Ok((self.clone(), 0));
        }
        let scale = dvr.pi_pow(-v);
        Ok((self.scale(&scale), v))
    }

    /// Base change to the generic (K) or special (k) fiber.
    pub fn fiber(&self, dvr: &DvrModel, which: Fiber) -> Result<Poly> {
        match which {
            Fiber::Generic => {
                assert_eq!(self.model, dvr.fraction_model(), "coefficients not in K");
                Ok(self.clone())
            }
            Fiber::Special => self.map_coeffs(dvr.residue_model(), |c| dvr.reduce_mod_pi(c)),
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.model, other.model, "coefficient model mismatch");
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    /// Render with variable names; terms in descending lexicographic order.
    pub fn display(&self, vars: &VarSet) -> String {
        assert_eq!(vars.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign_neg, mag) = coeff_sign_split(&self.model, c);
            if i == 0 {
                if sign_neg {
                    out.push('-');
                }
            } else if sign_neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&term_string(&self.model, &mag, m, vars));
        }
        out
    }
}

/// Fiber selector for base change.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fiber {
    Generic,
    Special,
}

fn coeff_sign_split(model: &CoeffModel, c: &Coeff) -> (bool, Coeff) {
    match c {
        Coeff::Q(r) if r.is_negative() => (true, Coeff::Q(-r)),
        Coeff::Qt(f) => {
            let neg = f
                .num()
                .leading()
                .map(|l| l.is_negative())
                .unwrap_or(false);
            if neg {
                (true, model.neg(c))
            } else {
                (false, c.clone())
            }
        }
        _ => (false, c.clone()),
    }
}

fn term_string(model: &CoeffModel, c: &Coeff, m: &Monomial, vars: &VarSet) -> String {
    let mono = monomial_string(m, vars);
    let coeff_str = match c {
        Coeff::Q(r) => r.to_string(),
        Coeff::Fp(n) => n.to_string(),
        Coeff::Qt(f) => f.to_string(),
    };
    if mono.is_empty() {
        coeff_str
    } else if model.is_one(c) {
        mono
    } else {
        format!("{}*{}", coeff_str, mono)
    }
}

fn monomial_string(m: &Monomial, vars: &VarSet) -> String {
    let mut parts = Vec::new();
    for (i, e) in m.0.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(vars.name(i).to_string());
        } else {
            parts.push(format!("{}^{}", vars.name(i), e));
        }
    }
    parts.join("*")
}

fn pow_coeff(model: &CoeffModel, c: &Coeff, e: &BigUint) -> Coeff {
    if model.is_one(c) {
        return c.clone();
    }
    let neg_one = model.neg(&model.one());
    if *c == neg_one {
        return if (e % 2u32).is_zero() {
            model.one()
        } else {
            neg_one
        };
    }
    let small = e
        .to_u32()
        .unwrap_or_else(|| panic!("coefficient power {} too large", e));
    let mut acc = model.one();
    for _ in 0..small {
        acc = model.mul(&acc, c);
    }
    acc
}

/// A fraction of polynomials. No gcd reduction is attempted (multivariate
/// gcd is out of scope); zero tests and comparisons go through the
/// numerator and cross-multiplication.
#[derive(Clone, Debug)]
pub struct FracPoly {
    pub num: Poly,
    pub den: Poly,
}

impl FracPoly {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FracPoly { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.model().clone(), p.nvars());
        FracPoly { num: p, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        FracPoly {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn neg(&self) -> Self {
        FracPoly {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        FracPoly {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FracPoly {
            num: self.num.mul(&other.den),
            den: self.den.mul(&other.num),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        FracPoly {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Lower to a polynomial; requires the denominator to be a nonzero
    /// constant.
    pub fn into_poly(self) -> Result<Poly> {
        match self.den.as_constant() {
            Some(c) => {
                let model = self.num.model().clone();
                let inv = model.inv(&c)?;
                Ok(self.num.scale(&inv))
            }
            None => Err(Error::Parse(
                "expression has a nonconstant polynomial denominator".into(),
            )),
        }
    }
}

/// Generating list of polynomials over one variable set and model.
/// Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(gens: Vec<Poly>) -> Self {
        Ideal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn zero() -> Self {
        Ideal { gens: Vec::new() }
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn fiber(&self, dvr: &DvrModel, which: Fiber) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.fiber(dvr, which))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(gens))
    }
}

/// A presentation R = V[x_1..x_n]/I of an affine S-scheme. Flatness over V
/// is a declared assumption recorded as a flag, not verified.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub vars: VarSet,
    pub ideal: Ideal,
    pub model: DvrModel,
    pub flat_asserted: bool,
}

impl QuotientPresentation {
    pub fn new(vars: VarSet, ideal: Ideal, model: DvrModel) -> Result<Self> {
        for g in ideal.gens() {
            assert_eq!(g.nvars(), vars.len(), "generator over wrong variable set");
            assert_eq!(
                g.model(),
                &model.fraction_model(),
                "generators must have coefficients in K"
            );
            if g.content_valuation(&model).map_or(false, |v| v < 0) {
                return Err(Error::NegativeValuation(g.display(&vars)));
            }
        }
        Ok(QuotientPresentation {
            vars,
            ideal,
            model,
            flat_asserted: true,
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

/// Finite presentation of Ω¹_f: rows are the module generators dx_1..dx_n,
/// one column per ideal generator and one per map component (entries are
/// the partial derivatives). dπ = 0 holds automatically: π is a constant
/// of the coefficient ring.
#[derive(Clone, Debug)]
pub struct PresentationMatrix {
    pub vars: VarSet,
    /// cols[j][i] = entry in row i (generator dx_i) of column j.
    pub cols: Vec<Vec<Poly>>,
    /// Number of leading columns that come from ideal generators.
    pub n_ideal_cols: usize,
}

impl PresentationMatrix {
    pub fn nrows(&self) -> usize {
        self.vars.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
}

/// Columns of partial derivatives presenting Ω¹_f for the map f out of
/// Spec(V[x]/I): one column per ideal generator, then one per f entry.
pub fn jacobian_presentation(pres: &QuotientPresentation, f: &[Poly]) -> PresentationMatrix {
    let n = pres.nvars();
    let mut cols = Vec::new();
    for g in pres.ideal.gens() {
        cols.push((0..n).map(|i| g.partial(i)).collect());
    }
    let n_ideal_cols = cols.len();
    for fl in f {
        assert_eq!(fl.nvars(), n, "map entry over wrong variable set");
        cols.push((0..n).map(|i| fl.partial(i)).collect());
    }
    PresentationMatrix {
        vars: pres.vars.clone(),
        cols,
        n_ideal_cols,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::DvrModel;

    fn mixed2() -> DvrModel {
        DvrModel::mixed(2).unwrap()
    }

    fn xy_vars() -> VarSet {
        VarSet::new(vec!["x", "y"]).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let dvr = mixed2();
        let vars = xy_vars();
        let f = parse_poly("x*y - p", &vars, &dvr).unwrap();
        assert_eq!(f.display(&vars), "x*y - 2");
        let g = parse_poly(&f.display(&vars), &vars, &dvr).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn substitute_xy_minus_p() {
        // substitute(xy - p, {x -> x - y^4, y -> y}) = xy - y^5 - p
        let dvr = mixed2();
        let vars = xy_vars();
        let f = parse_poly("x*y - p", &vars, &dvr).unwrap();
        let sub_x = parse_poly("x - y^4", &vars, &dvr).unwrap();
        let got = f.substitute_var(0, &sub_x);
        let want = parse_poly("x*y - y^5 - p", &vars, &dvr).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn substitute_identity_and_zero() {
        let dvr = mixed2();
        let vars = xy_vars();
        let f = parse_poly("x^2*y + 3*x - 7", &vars, &dvr).unwrap();
        let id: Vec<Poly> = (0..2).map(|i| Poly::var(CoeffModel::Q, 2, i)).collect();
        assert_eq!(f.substitute(&id), f);
        let x2 = parse_poly("x^2", &vars, &dvr).unwrap();
        assert!(x2.substitute_var(0, &Poly::zero(CoeffModel::Q, 2)).is_zero());
    }

    #[test]
    fn leading_coefficient_examples() {
        let dvr = mixed2();
        let vars = xy_vars();
        // xy - y^5 - p in y: degree 5 coefficient is -1
        let f = parse_poly("x*y - y^5 - p", &vars, &dvr).unwrap();
        let lc = f.leading_coefficient_in(1).unwrap();
        assert_eq!(lc, Poly::constant(CoeffModel::Q, 2, CoeffModel::Q.from_i64(-1)));
        // x^2 + y in x: monic
        let g = parse_poly("x^2 + y", &vars, &dvr).unwrap();
        assert_eq!(
            g.leading_coefficient_in(0).unwrap(),
            Poly::one(CoeffModel::Q, 2)
        );
        // y*x in x: coefficient y
        let h = parse_poly("y*x", &vars, &dvr).unwrap();
        let y = Poly::var(CoeffModel::Q, 2, 1);
        assert_eq!(h.leading_coefficient_in(0).unwrap(), y);
        assert_eq!(
            Poly::zero(CoeffModel::Q, 2).leading_coefficient_in(0),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn content_normalize_examples() {
        let dvr = mixed2();
        let vars = xy_vars();
        let f = parse_poly("4*x + 2*y", &vars, &dvr).unwrap();
        let (g, v) = f.content_normalize(&dvr).unwrap();
        assert_eq!(v, 1);
        assert_eq!(g, parse_poly("2*x + y", &vars, &dvr).unwrap());

        let f2 = parse_poly("x*y - p", &vars, &dvr).unwrap();
        let (g2, v2) = f2.content_normalize(&dvr).unwrap();
        assert_eq!(v2, 0);
        assert_eq!(g2, f2);

        let e0 = DvrModel::equichar0();
        let x_vars = VarSet::new(vec!["x"]).unwrap();
        let f3 = parse_poly("t^2*x", &x_vars, &e0).unwrap();
        let (g3, v3) = f3.content_normalize(&e0).unwrap();
        assert_eq!(v3, 2);
        assert_eq!(g3, parse_poly("x", &x_vars, &e0).unwrap());
    }

    #[test]
    fn fiber_examples() {
        let dvr = mixed2();
        let vars = xy_vars();
        let f = parse_poly("x*y - p", &vars, &dvr).unwrap();
        let special = f.fiber(&dvr, Fiber::Special).unwrap();
        let fp = CoeffModel::Fp(num_bigint::BigInt::from(2));
        let mut want = Poly::zero(fp.clone(), 2);
        want.add_term(Monomial(vec![BigUint::one(), BigUint::one()]), fp.one());
        assert_eq!(special, want);

        let generic = f.fiber(&dvr, Fiber::Generic).unwrap();
        assert_eq!(generic, f);

        let g = parse_poly("x + 2*y", &vars, &dvr).unwrap();
        let gs = g.fiber(&dvr, Fiber::Special).unwrap();
        assert_eq!(gs.num_terms(), 1);
    }

    #[test]
    fn jacobian_presentation_semistable() {
        // V[x,y]/(xy - p), f = (x): columns (y, x)^T and (1, 0)^T
        let dvr = mixed2();
        let vars = xy_vars();
        let ideal = Ideal::new(vec![parse_poly("x*y - p", &vars, &dvr).unwrap()]);
        let pres = QuotientPresentation::new(vars.clone(), ideal, dvr.clone()).unwrap();
        let f = vec![parse_poly("x", &vars, &dvr).unwrap()];
        let m = jacobian_presentation(&pres, &f);
        assert_eq!(m.ncols(), 2);
        assert_eq!(m.n_ideal_cols, 1);
        assert_eq!(m.cols[0][0], parse_poly("y", &vars, &dvr).unwrap());
        assert_eq!(m.cols[0][1], parse_poly("x", &vars, &dvr).unwrap());
        assert_eq!(m.cols[1][0], Poly::one(CoeffModel::Q, 2));
        assert!(m.cols[1][1].is_zero());
    }

    #[test]
    fn jacobian_presentation_with_quartic() {
        let dvr = mixed2();
        let vars = xy_vars();
        let ideal = Ideal::new(vec![parse_poly("x*y - p", &vars, &dvr).unwrap()]);
        let pres = QuotientPresentation::new(vars.clone(), ideal, dvr.clone()).unwrap();
        let f = vec![parse_poly("x + y^4", &vars, &dvr).unwrap()];
        let m = jacobian_presentation(&pres, &f);
        assert_eq!(m.cols[1][0], Poly::one(CoeffModel::Q, 2));
        assert_eq!(m.cols[1][1], parse_poly("4*y^3", &vars, &dvr).unwrap());
    }

    #[test]
    fn empty_ideal_presentation() {
        let dvr = mixed2();
        let vars = VarSet::new(vec!["x"]).unwrap();
        let pres = QuotientPresentation::new(vars, Ideal::zero(), dvr).unwrap();
        let m = jacobian_presentation(&pres, &[]);
        assert_eq!(m.ncols(), 0);
        assert_eq!(m.nrows(), 1);
    }

    #[test]
    fn big_exponent_monomial_power() {
        let vars = xy_vars();
        let y = Poly::var(CoeffModel::Q, 2, 1);
        let e = BigUint::from(3u32).pow(40); // far beyond u64 after squaring again
        let p = y.pow_big(&e);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.degree_in(1), Some(e));
        let _ = vars;
    }
}
