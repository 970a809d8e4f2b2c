//! Buchberger engine over exact fields (𝔽_p, ℚ, ℚ(t)) with elimination
//! orders, ideal membership, the per-fiber finiteness criterion, and toric
//! ideals of relation lattices.
//!
//! The engine is deliberately simple: normal pair-selection strategy,
//! Buchberger's product and chain criteria, full reduction, explicit
//! budget. Corpus instances are small (≤ 9 variables); there is no F4/F5
//! and no Gröbner over V itself — all certification is per fiber over a
//! field.

use crate::coeff::{Coeff, CoeffModel};
use crate::error::{Error, Result};
use crate::poly::{Ideal, Monomial, Poly};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

/// Monomial order: lex, graded reverse lex, or a block (elimination)
/// order. For `Block`, monomials are first compared on the `head`
/// positions with `head_order`, ties broken on the remaining positions
/// with `tail_order`; the head positions are eliminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block {
        head: Vec<usize>,
        head_order: Box<MonomialOrder>,
        tail_order: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Elimination order with grevlex inside each block.
    pub fn elimination(head: Vec<usize>) -> Self {
        MonomialOrder::Block {
            head,
            head_order: Box::new(MonomialOrder::GrevLex),
            tail_order: Box::new(MonomialOrder::GrevLex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.0.len();
        debug_assert_eq!(n, b.0.len());
        let all: Vec<usize> = (0..n).collect();
        self.cmp_on(a, b, &all)
    }

    fn cmp_on(&self, a: &Monomial, b: &Monomial, positions: &[usize]) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for &i in positions {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                let da: BigUint = positions.iter().map(|&i| a.0[i].clone()).sum();
                let db: BigUint = positions.iter().map(|&i| b.0[i].clone()).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &i in positions.iter().rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        // reverse: smaller exponent in the last differing
                        // position means greater monomial
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block {
                head,
                head_order,
                tail_order,
            } => {
                match head_order.cmp_on(a, b, head) {
                    Ordering::Equal => {}
                    o => return o,
                }
                let tail: Vec<usize> = positions
                    .iter()
                    .copied()
                    .filter(|i| !head.contains(i))
                    .collect();
                tail_order.cmp_on(a, b, &tail)
            }
        }
    }

    /// Check that a block partition covers the variable set exactly once.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        if let MonomialOrder::Block { head, .. } = self {
            let mut seen = vec![false; nvars];
            for &i in head {
                if i >= nvars || seen[i] {
                    return Err(Error::Precondition(
                        "block order does not partition the variable set".into(),
                    ));
                }
                seen[i] = true;
            }
        }
        Ok(())
    }
}

/// Budget for a single Buchberger run. Exceeding it signals that the
/// instance is beyond desk scale rather than hanging.
#[derive(Clone, Copy, Debug)]
pub struct GbBudget {
    pub max_pair_reductions: usize,
    pub max_total_degree: u64,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget {
            max_pair_reductions: 50_000,
            max_total_degree: 256,
        }
    }
}

impl GbBudget {
    fn check_degree(&self, p: &Poly) -> Result<()> {
        if let Some(d) = p.total_degree() {
            if d > BigUint::from(self.max_total_degree) {
                return Err(Error::BudgetExceeded(format!(
                    "total degree {} exceeds cap {}",
                    d, self.max_total_degree
                )));
            }
        }
        Ok(())
    }
}

/// A reduced Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub basis: Vec<Poly>,
    pub order: MonomialOrder,
    model: CoeffModel,
    nvars: usize,
}

pub fn leading_term<'a>(p: &'a Poly, ord: &MonomialOrder) -> Option<(&'a Monomial, &'a Coeff)> {
    p.terms().max_by(|a, b| ord.cmp(a.0, b.0))
}

fn make_monic(p: &Poly, ord: &MonomialOrder) -> Poly {
    match leading_term(p, ord) {
        None => p.clone(),
        Some((_, c)) => {
            let inv = p.model().inv(c).expect("nonzero leading coefficient");
            p.scale(&inv)
        }
    }
}

/// Full normal form of f with respect to a list of (nonzero) reducers.
fn reduce_full(
    f: &Poly,
    reducers: &[Poly],
    lts: &[(Monomial, Coeff)],
    ord: &MonomialOrder,
    budget: &GbBudget,
) -> Result<Poly> {
    let model = f.model().clone();
    let mut work = f.clone();
    let mut rem = Poly::zero(model.clone(), f.nvars());
    'outer: while !work.is_zero() {
        budget.check_degree(&work)?;
        let (m, c) = {
            let (m, c) = leading_term(&work, ord).unwrap();
            (m.clone(), c.clone())
        };
        for (g, (gm, gc)) in reducers.iter().zip(lts) {
            if let Some(q) = gm.div_into(&m) {
                let factor = model.div(&c, gc)?;
                work = work.sub(&g.mul_term(&q, &factor));
                continue 'outer;
            }
        }
        // leading term is irreducible: move it to the remainder
        rem.add_term(m.clone(), c.clone());
        work.add_term(m, model.neg(&c));
    }
    Ok(rem)
}

fn s_polynomial(
    gi: &Poly,
    gj: &Poly,
    lti: &(Monomial, Coeff),
    ltj: &(Monomial, Coeff),
) -> Poly {
    let model = gi.model().clone();
    let lcm = lti.0.lcm(&ltj.0);
    let qi = lti.0.div_into(&lcm).unwrap();
    let qj = ltj.0.div_into(&lcm).unwrap();
    let ci = model.inv(&lti.1).expect("nonzero leading coefficient");
    let cj = model.inv(&ltj.1).expect("nonzero leading coefficient");
    gi.mul_term(&qi, &ci).sub(&gj.mul_term(&qj, &cj))
}

/// Buchberger's algorithm with the normal selection strategy and the
/// product and chain criteria; output is the reduced Gröbner basis
/// (canonical for the pair (ideal, order)).
pub fn buchberger(
    gens: &[Poly],
    model: &CoeffModel,
    nvars: usize,
    ord: &MonomialOrder,
    budget: &GbBudget,
) -> Result<GroebnerBasis> {
    ord.validate(nvars)?;
    let mut basis: Vec<Poly> = Vec::new();
    let mut lts: Vec<(Monomial, Coeff)> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        budget.check_degree(g)?;
        let monic = make_monic(g, ord);
        if !basis.contains(&monic) {
            let lt = leading_term(&monic, ord).unwrap();
            lts.push((lt.0.clone(), lt.1.clone()));
            basis.push(monic);
        }
    }

    // Pair queue keyed by (lcm degree, lcm, i, j): the minimum element is
    // the normal-strategy choice and makes the run deterministic.
    let mut pairs: BTreeSet<(BigUint, Monomial, usize, usize)> = BTreeSet::new();
    let add_pairs = |pairs: &mut BTreeSet<(BigUint, Monomial, usize, usize)>,
                         lts: &Vec<(Monomial, Coeff)>,
                         j: usize| {
        for i in 0..j {
            let lcm = lts[i].0.lcm(&lts[j].0);
            pairs.insert((lcm.total_degree(), lcm, i, j));
        }
    };
    for j in 0..basis.len() {
        add_pairs(&mut pairs, &lts, j);
    }

    let mut processed: HashSet<(usize, usize)> = HashSet::new();
    let mut reductions = 0usize;

    while let Some(entry) = pairs.iter().next().cloned() {
        pairs.remove(&entry);
        let (_, lcm, i, j) = entry;
        processed.insert((i, j));

        // product criterion: coprime leading monomials
        if lcm == lts[i].0.mul(&lts[j].0) {
            continue;
        }
        // chain criterion
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if lts[k].0.divides(&lcm)
                && processed.contains(&key(i, k))
                && processed.contains(&key(j, k))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        reductions += 1;
        if reductions > budget.max_pair_reductions {
            return Err(Error::BudgetExceeded(format!(
                "pair reduction count exceeds cap {}",
                budget.max_pair_reductions
            )));
        }

        let s = s_polynomial(&basis[i], &basis[j], &lts[i], &lts[j]);
        let nf = reduce_full(&s, &basis, &lts, ord, budget)?;
        if nf.is_zero() {
            continue;
        }
        let monic = make_monic(&nf, ord);
        let lt = leading_term(&monic, ord).unwrap();
        lts.push((lt.0.clone(), lt.1.clone()));
        basis.push(monic);
        add_pairs(&mut pairs, &lts, basis.len() - 1);
    }

    // Minimize: drop elements whose leading monomial is divisible by
    // another's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if lts[j].0.divides(&lts[i].0) && (lts[j].0 != lts[i].0 || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Poly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();

    // Inter-reduce tails.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| if j != i { Some(g.clone()) } else { None })
            .collect();
        let other_lts: Vec<(Monomial, Coeff)> = others
            .iter()
            .map(|g| {
                let lt = leading_term(g, ord).unwrap();
                (lt.0.clone(), lt.1.clone())
            })
            .collect();
        let nf = reduce_full(&minimal[i], &others, &other_lts, ord, budget)?;
        reduced.push(make_monic(&nf, ord));
    }
    reduced.sort_by(|a, b| {
        let la = leading_term(a, ord).unwrap().0;
        let lb = leading_term(b, ord).unwrap().0;
        ord.cmp(la, lb)
    });

    Ok(GroebnerBasis {
        basis: reduced,
        order: ord.clone(),
        model: model.clone(),
        nvars,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl GroebnerBasis {
    pub fn model(&self) -> &CoeffModel {
        &self.model
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The unique remainder of f modulo the basis.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let lts: Vec<(Monomial, Coeff)> = self
            .basis
            .iter()
            .map(|g| {
                let lt = leading_term(g, &self.order).unwrap();
                (lt.0.clone(), lt.1.clone())
            })
            .collect();
        let loose = GbBudget {
            max_pair_reductions: usize::MAX,
            max_total_degree: u64::MAX,
        };
        reduce_full(f, &self.basis, &lts, &self.order, &loose).expect("unbudgeted reduction")
    }

    /// Ideal membership: f ∈ (basis) iff its normal form vanishes.
    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Audit the Buchberger criterion and reducedness on this basis:
    /// every S-pair reduces to zero, leading coefficients are 1, no
    /// leading monomial divides another, and tails are fully reduced.
    pub fn audit(&self) -> Result<()> {
        let lts: Vec<(Monomial, Coeff)> = self
            .basis
            .iter()
            .map(|g| {
                let lt = leading_term(g, &self.order).unwrap();
                (lt.0.clone(), lt.1.clone())
            })
            .collect();
        for (i, (m, c)) in lts.iter().enumerate() {
            if !self.model.is_one(c) {
                return Err(Error::Precondition(format!(
                    "basis element {} is not monic",
                    i
                )));
            }
            for (j, (mj, _)) in lts.iter().enumerate() {
                if i != j && mj.divides(m) {
                    return Err(Error::Precondition(format!(
                        "leading monomial of element {} divides that of {}",
                        j, i
                    )));
                }
            }
            // tails reduced: no non-leading monomial divisible by any lt
            for (mono, _) in self.basis[i].terms() {
                if mono == m {
                    continue;
                }
                for (j, (mj, _)) in lts.iter().enumerate() {
                    if mj.divides(mono) {
                        return Err(Error::Precondition(format!(
                            "tail of element {} is reducible by element {}",
                            i, j
                        )));
                    }
                }
            }
        }
        let loose = GbBudget {
            max_pair_reductions: usize::MAX,
            max_total_degree: u64::MAX,
        };
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = s_polynomial(&self.basis[i], &self.basis[j], &lts[i], &lts[j]);
                let nf = reduce_full(&s, &self.basis, &lts, &self.order, &loose)?;
                if !nf.is_zero() {
                    return Err(Error::Precondition(format!(
                        "S-pair ({}, {}) does not reduce to zero",
                        i, j
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Convenience wrapper: reduced Gröbner basis of an ideal.
pub fn buchberger_ideal(
    ideal: &Ideal,
    model: &CoeffModel,
    nvars: usize,
    ord: &MonomialOrder,
    budget: &GbBudget,
) -> Result<GroebnerBasis> {
    buchberger(ideal.gens(), model, nvars, ord, budget)
}

/// Decide whether F[x_1..x_n]/I is a finite module over the image of
/// F[t_1..t_d] under t_j ↦ f_j.
///
/// Method: form J = I + (t_j − f_j) in F[x, t], compute a Gröbner basis
/// for the block order eliminating the x-variables, and test that for
/// every i some basis element has leading monomial a pure power of x_i
/// (the standard finiteness criterion for subalgebra extensions presented
/// by elimination).
pub fn is_finite_over_image(
    ideal: &Ideal,
    model: &CoeffModel,
    nvars: usize,
    f: &[Poly],
    budget: &GbBudget,
) -> Result<bool> {
    let d = f.len();
    let total = nvars + d;
    let embed: Vec<usize> = (0..nvars).collect();
    let mut gens: Vec<Poly> = ideal
        .gens()
        .iter()
        .map(|g| g.embed(total, &embed))
        .collect();
    for (j, fj) in f.iter().enumerate() {
        assert_eq!(fj.nvars(), nvars);
        let tj = Poly::var(model.clone(), total, nvars + j);
        gens.push(tj.sub(&fj.embed(total, &embed)));
    }
    let ord = MonomialOrder::elimination((0..nvars).collect());
    let gb = buchberger(&gens, model, total, &ord, budget)?;

    // Unit ideal: the fibers are empty, trivially finite.
    if gb
        .basis
        .iter()
        .any(|g| g.as_constant().map_or(false, |c| !model.is_zero(&c)))
    {
        return Ok(true);
    }

    'var: for i in 0..nvars {
        for g in &gb.basis {
            let lt = leading_term(g, &ord).unwrap().0;
            let pure = lt.0.iter().enumerate().all(|(k, e)| {
                if k == i {
                    !e.is_zero()
                } else {
                    e.is_zero()
                }
            });
            if pure {
                continue 'var;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// The saturated toric ideal of a lattice of relations among monoid
/// generators: all binomials u^{v+} − u^{v−} for v in the saturation of
/// the lattice, computed as ((u^{v+} − u^{v−} : v basis) : (u_1⋯u_s)^∞)
/// via the extra-variable trick and elimination.
pub fn toric_ideal(
    lattice_basis: &[Vec<BigInt>],
    nvars: usize,
    budget: &GbBudget,
) -> Result<Ideal> {
    let model = CoeffModel::Q;
    let mut binomials = Vec::new();
    for v in lattice_basis {
        assert_eq!(v.len(), nvars, "lattice vector length mismatch");
        let mut plus = vec![BigUint::zero(); nvars];
        let mut minus = vec![BigUint::zero(); nvars];
        for (i, c) in v.iter().enumerate() {
            if c.is_positive() {
                plus[i] = c.to_biguint().unwrap();
            } else if c.is_negative() {
                minus[i] = (-c).to_biguint().unwrap();
            }
        }
        let mut b = Poly::zero(model.clone(), nvars);
        b.add_term(Monomial(plus), model.one());
        b.add_term(Monomial(minus), model.neg(&model.one()));
        if !b.is_zero() {
            binomials.push(b);
        }
    }
    if binomials.is_empty() {
        return Ok(Ideal::zero());
    }

    // Adjoin w with w * u_1...u_s = 1 and eliminate it.
    let total = nvars + 1;
    let embed: Vec<usize> = (0..nvars).collect();
    let mut gens: Vec<Poly> = binomials.iter().map(|b| b.embed(total, &embed)).collect();
    let mut all = vec![BigUint::from(1u32); nvars];
    all.push(BigUint::from(1u32)); // w itself
    let mut sat = Poly::zero(model.clone(), total);
    sat.add_term(Monomial(all), model.one());
    sat.add_term(Monomial::one(total), model.neg(&model.one()));
    gens.push(sat);

    let ord = MonomialOrder::elimination(vec![nvars]);
    let gb = buchberger(&gens, &model, total, &ord, budget)?;

    let mut out = Vec::new();
    for g in &gb.basis {
        if g.degree_in(nvars).map_or(true, |d| d.is_zero()) {
            // contract away the w coordinate
            let mut h = Poly::zero(model.clone(), nvars);
            for (m, c) in g.terms() {
                let mut e = m.0.clone();
                let w = e.pop().unwrap();
                assert!(w.is_zero());
                h.add_term(Monomial(e), c.clone());
            }
            out.push(h);
        }
    }
    Ok(Ideal::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::DvrModel;
    use crate::poly::{parse_poly, VarSet};

    fn q_polys(srcs: &[&str], names: &[&str]) -> (Vec<Poly>, VarSet) {
        let dvr = DvrModel::mixed(2).unwrap();
        let vars = VarSet::new(names.to_vec()).unwrap();
        let ps = srcs
            .iter()
            .map(|s| parse_poly(s, &vars, &dvr).unwrap())
            .collect();
        (ps, vars)
    }

    #[test]
    fn buchberger_collapses_to_linear() {
        // (x^2 - 1, x - 1) -> {x - 1}
        let (gens, _) = q_polys(&["x^2 - 1", "x - 1"], &["x"]);
        let gb = buchberger(&gens, &CoeffModel::Q, 1, &MonomialOrder::Lex, &GbBudget::default())
            .unwrap();
        assert_eq!(gb.basis.len(), 1);
        let (want, _) = q_polys(&["x - 1"], &["x"]);
        assert_eq!(gb.basis[0], want[0]);
        gb.audit().unwrap();
    }

    #[test]
    fn buchberger_zero_ideal() {
        let gb = buchberger(&[], &CoeffModel::Q, 2, &MonomialOrder::Lex, &GbBudget::default())
            .unwrap();
        assert!(gb.basis.is_empty());
    }

    #[test]
    fn buchberger_unit_ideal() {
        // (xy - 1, x) -> {1}
        let (gens, _) = q_polys(&["x*y - 1", "x"], &["x", "y"]);
        let gb = buchberger(&gens, &CoeffModel::Q, 2, &MonomialOrder::Lex, &GbBudget::default())
            .unwrap();
        assert_eq!(gb.basis.len(), 1);
        assert!(gb.basis[0].as_constant().is_some());
        gb.audit().unwrap();
    }

    #[test]
    fn normal_form_substitutes() {
        // normal_form(x^2, {x - 1}) = 1
        let (gens, _) = q_polys(&["x - 1"], &["x"]);
        let gb = buchberger(&gens, &CoeffModel::Q, 1, &MonomialOrder::Lex, &GbBudget::default())
            .unwrap();
        let (f, _) = q_polys(&["x^2"], &["x"]);
        let nf = gb.normal_form(&f[0]);
        assert_eq!(nf, Poly::one(CoeffModel::Q, 1));
        assert_eq!(gb.normal_form(&nf), nf, "normal form is idempotent");
    }

    #[test]
    fn membership_of_generators_and_one() {
        let (gens, _) = q_polys(&["x^2*y - x + 1", "x*y^3 - y"], &["x", "y"]);
        let gb = buchberger(&gens, &CoeffModel::Q, 2, &MonomialOrder::GrevLex, &GbBudget::default())
            .unwrap();
        for g in &gens {
            assert!(gb.contains(g));
        }
        let (proper, _) = q_polys(&["x", "y"], &["x", "y"]);
        let gb2 = buchberger(&proper, &CoeffModel::Q, 2, &MonomialOrder::Lex, &GbBudget::default())
            .unwrap();
        assert!(!gb2.contains(&Poly::one(CoeffModel::Q, 2)));
    }

    #[test]
    fn finiteness_examples() {
        let b = GbBudget::default();
        // I = (xy) over F_2, f = x + y^4: finite
        let f2 = CoeffModel::Fp(BigInt::from(2));
        let vars = VarSet::new(vec!["x", "y"]).unwrap();
        let xy = parse_poly_in_f2("x*y", &vars);
        let f = parse_poly_in_f2("x + y^4", &vars);
        assert!(is_finite_over_image(&Ideal::new(vec![xy]), &f2, 2, &[f], &b).unwrap());

        // I = (xy - 1) over Q, f = (x): not finite (y = 1/x not integral)
        let (gens, _) = q_polys(&["x*y - 1"], &["x", "y"]);
        let (fx, _) = q_polys(&["x"], &["x", "y"]);
        assert!(!is_finite_over_image(&Ideal::new(gens), &CoeffModel::Q, 2, &fx, &b).unwrap());

        // identity map on A^1
        let (fid, _) = q_polys(&["x"], &["x"]);
        assert!(is_finite_over_image(&Ideal::zero(), &CoeffModel::Q, 1, &fid, &b).unwrap());
    }

    fn parse_poly_in_f2(s: &str, vars: &VarSet) -> Poly {
        let f2 = CoeffModel::Fp(BigInt::from(2));
        crate::poly::parse_poly_in(s, vars, &f2).unwrap()
    }

    #[test]
    fn toric_ideal_of_free_monoid_is_zero() {
        let i = toric_ideal(&[], 2, &GbBudget::default()).unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn toric_ideal_of_a2_pattern() {
        // relation (1, -2, 1) among (1,0),(1,1),(1,2): ideal (u1 u3 - u2^2)
        let lat = vec![vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)]];
        let i = toric_ideal(&lat, 3, &GbBudget::default()).unwrap();
        assert_eq!(i.gens().len(), 1);
        let vars = VarSet::new(vec!["u1", "u2", "u3"]).unwrap();
        let want = crate::poly::parse_poly_in("u1*u3 - u2^2", &vars, &CoeffModel::Q).unwrap();
        // basis is monic: compare up to sign
        let g = &i.gens()[0];
        assert!(g == &want || g == &want.neg());
        // membership oracle: the generating binomial saturates correctly
        let gb = buchberger(i.gens(), &CoeffModel::Q, 3, &MonomialOrder::GrevLex, &GbBudget::default())
            .unwrap();
        assert!(gb.contains(&want));
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let (gens, _) = q_polys(&["x^9 + y", "y^9 + x"], &["x", "y"]);
        let tight = GbBudget {
            max_pair_reductions: 50_000,
            max_total_degree: 8,
        };
        assert!(matches!(
            buchberger(&gens, &CoeffModel::Q, 2, &MonomialOrder::GrevLex, &tight),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn lex_vs_grevlex_membership_agrees() {
        let (gens, _) = q_polys(&["x^2 + y", "x*y - 1"], &["x", "y"]);
        let (probe, _) = q_polys(&["x^3 + x*y + y^2", "x + y", "x^3 + x"], &["x", "y"]);
        let b = GbBudget::default();
        let lex = buchberger(&gens, &CoeffModel::Q, 2, &MonomialOrder::Lex, &b).unwrap();
        let grev = buchberger(&gens, &CoeffModel::Q, 2, &MonomialOrder::GrevLex, &b).unwrap();
        for f in &probe {
            assert_eq!(lex.contains(f), grev.contains(f));
        }
    }
}
