//! Fine (affine) monoid computations: membership with exact certificates,
//! units, faces, localization, Smith normal form, the quotient
//! decomposition P[ρ⁻¹] ≅ T ⊕ ℤ ⊕ ℤ^a ⊕ ℕ^b, freeness of the sharp
//! quotient, and lifting χ: ℕ^d → P.
//!
//! Monoids are finitely generated submonoids of ℤ^r (hence fine). All
//! searches are cap-bounded: an undecided search surfaces `CapExceeded`
//! instead of guessing.

pub mod simplex;
pub mod snf;

pub use snf::{
    column_lattice_basis, kernel_basis, smith_normal_form, solve_integer, IMat, SnfResult,
};

use crate::coeff::DvrModel;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use simplex::LpOutcome;

/// A fine monoid P ⊆ ℤ^r given by generators. Duplicates and zero vectors
/// are dropped at construction; integrality is automatic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    rank: usize,
    gens: Vec<Vec<BigInt>>,
}

/// Default bound for all monoid searches (generator multiplicities and
/// the ρ-shift range of lift searches).
pub const DEFAULT_CAP: u64 = 64;

impl AffineMonoid {
    pub fn new(rank: usize, gens: Vec<Vec<BigInt>>) -> Result<Self> {
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        for g in gens {
            if g.len() != rank {
                return Err(Error::Precondition(format!(
                    "generator {:?} does not have length {}",
                    g, rank
                )));
            }
            if g.iter().all(|x| x.is_zero()) {
                continue;
            }
            if !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(AffineMonoid { rank, gens: out })
    }

    pub fn free(rank: usize) -> Self {
        let gens = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        AffineMonoid { rank, gens }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vec<BigInt>] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    fn gen_matrix(&self) -> IMat {
        IMat::from_cols(&self.gens, self.rank)
    }

    /// Search a non-negative integer combination Σ c_i g_i = v.
    ///
    /// `Ok(Some(c))` is a verified witness; `Ok(None)` is an exact
    /// non-membership proof (lattice or rational-cone infeasibility, or an
    /// exhaustive search that never hit the cap); `Err(CapExceeded)` means
    /// the bound was reached without a decision.
    ///
    /// The returned witness is canonical: minimal total multiplicity, then
    /// minimal when multiplicities are compared from the last generator
    /// backwards. This pins every downstream tie-break.
    pub fn membership(&self, v: &[BigInt], cap: u64) -> Result<Option<Vec<u64>>> {
        assert_eq!(v.len(), self.rank, "vector has wrong length");
        let s = self.gens.len();
        if v.iter().all(|x| x.is_zero()) {
            return Ok(Some(vec![0; s]));
        }
        if s == 0 {
            return Ok(None);
        }
        // Sign box: a strictly positive (negative) coordinate needs some
        // generator with a positive (negative) entry there.
        if !self.sign_box_ok(v, s) {
            return Ok(None);
        }
        // Lattice pre-check via SNF: prunes e.g. parity obstructions.
        let gmat = self.gen_matrix();
        if solve_integer(&gmat, v).is_none() {
            return Ok(None);
        }
        // Rational cone relaxation.
        let (a_rows, all_idx) = self.lp_rows();
        let b: Vec<BigRational> = v.iter().map(big_to_rat).collect();
        if !simplex::feasible(&a_rows, &b, all_idx) {
            return Ok(None);
        }
        // Bound on the total multiplicity from the LP, when finite.
        let ones = vec![BigRational::one(); s];
        let mut capped = false;
        let total_cap = s as u64 * cap;
        let t_max = match simplex::maximize(&a_rows, &b, &ones) {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => {
                capped = true;
                total_cap
            }
            LpOutcome::Optimal(val, _) => {
                let fl = val.floor().to_integer();
                match fl.to_u64() {
                    Some(f) if f <= total_cap => f,
                    _ => {
                        capped = true;
                        total_cap
                    }
                }
            }
        };

        // Lower bound on the total multiplicity: minimize Σc over the
        // relaxation (= -maximize -Σc).
        let neg_ones = vec![-BigRational::one(); s];
        let t_min = match simplex::maximize(&a_rows, &b, &neg_ones) {
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => 0,
            LpOutcome::Optimal(val, _) => {
                let min_total = -val;
                min_total.ceil().to_integer().to_u64().unwrap_or(0)
            }
        };

        let mut search = MembershipSearch {
            monoid: self,
            cap,
            capped,
            assignment: vec![0u64; s],
        };
        for t in t_min..=t_max {
            if let Some(w) = search.dfs(s, v.to_vec(), t) {
                return Ok(Some(w));
            }
        }
        if search.capped {
            Err(Error::CapExceeded(format!(
                "membership search for {:?} undecided at cap {}",
                v, cap
            )))
        } else {
            Ok(None)
        }
    }

    fn lp_rows(&self) -> (Vec<Vec<BigRational>>, usize) {
        let s = self.gens.len();
        let rows = (0..self.rank)
            .map(|i| (0..s).map(|j| big_to_rat(&self.gens[j][i])).collect())
            .collect();
        (rows, s)
    }

    /// Necessary condition on signs, restricted to the first j generators.
    fn sign_box_ok(&self, v: &[BigInt], j: usize) -> bool {
        for i in 0..self.rank {
            if v[i].is_positive() && !(0..j).any(|k| self.gens[k][i].is_positive()) {
                return false;
            }
            if v[i].is_negative() && !(0..j).any(|k| self.gens[k][i].is_negative()) {
                return false;
            }
        }
        true
    }

    /// True membership with witness re-evaluation (used in tests and
    /// certificate verification).
    pub fn eval_witness(&self, witness: &[u64]) -> Vec<BigInt> {
        assert_eq!(witness.len(), self.gens.len());
        let mut acc = vec![BigInt::zero(); self.rank];
        for (c, g) in witness.iter().zip(&self.gens) {
            if *c == 0 {
                continue;
            }
            let cb = BigInt::from(*c);
            for (a, x) in acc.iter_mut().zip(g) {
                *a += x * &cb;
            }
        }
        acc
    }

    /// Generators of the unit group P* = {g : -g ∈ P}, together with a
    /// lattice basis. A sum of generators is invertible only if each
    /// summand is, so the invertible generators generate P*.
    pub fn units(&self, cap: u64) -> Result<Units> {
        let mut indices = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            let neg: Vec<BigInt> = g.iter().map(|x| -x.clone()).collect();
            if self.membership(&neg, cap)?.is_some() {
                indices.push(i);
            }
        }
        let unit_gens: Vec<Vec<BigInt>> = indices.iter().map(|&i| self.gens[i].clone()).collect();
        let basis = if unit_gens.is_empty() {
            Vec::new()
        } else {
            column_lattice_basis(&IMat::from_cols(&unit_gens, self.rank))
        };
        Ok(Units { indices, basis })
    }

    /// The face generated by a ∈ P, restricted to generator detection:
    /// F = {g_i : ∃ n ≤ cap with n·a − g_i ∈ P}.
    pub fn face_generated_by(&self, a: &[BigInt], cap: u64) -> Result<Vec<usize>> {
        if self.membership(a, cap)?.is_none() {
            return Err(Error::Precondition(format!("{:?} is not in the monoid", a)));
        }
        let mut face = Vec::new();
        let mut undecided = false;
        for (i, g) in self.gens.iter().enumerate() {
            let mut found = false;
            let mut this_undecided = false;
            for n in 1..=cap {
                let nb = BigInt::from(n);
                let probe: Vec<BigInt> = a
                    .iter()
                    .zip(g)
                    .map(|(ai, gi)| ai * &nb - gi)
                    .collect();
                match self.membership(&probe, cap) {
                    Ok(Some(_)) => {
                        found = true;
                        break;
                    }
                    Ok(None) => continue,
                    Err(Error::CapExceeded(_)) => {
                        this_undecided = true;
                    }
                    Err(e) => return Err(e),
                }
            }
            if found {
                face.push(i);
            } else if this_undecided {
                undecided = true;
            }
        }
        if undecided {
            return Err(Error::CapExceeded(
                "face detection undecided for some generator".into(),
            ));
        }
        Ok(face)
    }

    /// Localization at a face (given as generator indices): generators of
    /// P together with the negatives of the face generators.
    pub fn localize(&self, face: &[usize]) -> Result<AffineMonoid> {
        let mut gens = self.gens.clone();
        for &i in face {
            gens.push(self.gens[i].iter().map(|x| -x.clone()).collect());
        }
        AffineMonoid::new(self.rank, gens)
    }

    /// P[ρ⁻¹]: the submonoid of P^gp generated by P and −ρ.
    pub fn localize_at_element(&self, rho: &[BigInt]) -> Result<AffineMonoid> {
        let mut gens = self.gens.clone();
        gens.push(rho.iter().map(|x| -x.clone()).collect());
        AffineMonoid::new(self.rank, gens)
    }
}

fn big_to_rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Unit-group data: which generators are invertible and a lattice basis
/// of the group they generate.
#[derive(Clone, Debug)]
pub struct Units {
    pub indices: Vec<usize>,
    pub basis: Vec<Vec<BigInt>>,
}

struct MembershipSearch<'a> {
    monoid: &'a AffineMonoid,
    cap: u64,
    capped: bool,
    assignment: Vec<u64>,
}

impl<'a> MembershipSearch<'a> {
    /// Assign c_{j-1} (positions from the last generator down), ascending
    /// values, exact remaining-total constraint. The first solution found
    /// is the canonical witness.
    fn dfs(&mut self, j: usize, v_rem: Vec<BigInt>, t_rem: u64) -> Option<Vec<u64>> {
        if j == 0 {
            if t_rem == 0 && v_rem.iter().all(|x| x.is_zero()) {
                return Some(self.assignment.clone());
            }
            return None;
        }
        if t_rem == 0 {
            if v_rem.iter().all(|x| x.is_zero()) {
                for k in 0..j {
                    self.assignment[k] = 0;
                }
                return Some(self.assignment.clone());
            }
            return None;
        }
        if !self.monoid.sign_box_ok(&v_rem, j) {
            return None;
        }
        // LP prune on the free prefix with the total constraint; with one
        // free generator the loop below is already exact.
        if j > 1 && !self.node_feasible(j, &v_rem, t_rem) {
            return None;
        }
        let hi = self.cap.min(t_rem);
        if hi < t_rem {
            // values above the cap are never tried: record that a branch
            // may have been cut
            self.capped = true;
        }
        for c in 0..=hi {
            self.assignment[j - 1] = c;
            let cb = BigInt::from(c);
            let v_next: Vec<BigInt> = v_rem
                .iter()
                .zip(&self.monoid.gens[j - 1])
                .map(|(vi, gi)| vi - gi * &cb)
                .collect();
            if let Some(w) = self.dfs(j - 1, v_next, t_rem - c) {
                return Some(w);
            }
        }
        self.assignment[j - 1] = 0;
        None
    }

    fn node_feasible(&self, j: usize, v_rem: &[BigInt], t_rem: u64) -> bool {
        let r = self.monoid.rank;
        let mut rows: Vec<Vec<BigRational>> = (0..r)
            .map(|i| (0..j).map(|k| big_to_rat(&self.monoid.gens[k][i])).collect())
            .collect();
        rows.push(vec![BigRational::one(); j]);
        let mut b: Vec<BigRational> = v_rem.iter().map(big_to_rat).collect();
        b.push(BigRational::from_integer(BigInt::from(t_rem)));
        simplex::feasible(&rows, &b, j)
    }
}

/// Freeness verdict for the sharp quotient M̄ = M / M*.
#[derive(Clone, Debug)]
pub enum SharpFreeness {
    /// M̄ ≅ ℕ^b with the given basis (in sharp coordinates).
    Free { basis: Vec<Vec<BigInt>> },
    NotFree {
        reason: String,
        irreducibles: Vec<Vec<BigInt>>,
    },
}

impl SharpFreeness {
    pub fn is_free(&self) -> bool {
        matches!(self, SharpFreeness::Free { .. })
    }
}

/// Sharp-quotient data shared by `is_sharp_free` and `decompose_quotient`.
struct SharpData {
    units: Units,
    /// Rows of the ambient transform whose image is the free part of
    /// ℤ^r / P*: sharp coordinates are z(x) = (transform · x)[u..].
    ambient_transform: IMat,
    unit_rank: usize,
    freeness: SharpFreeness,
    /// Basis order and, for each basis vector, the index of the first
    /// generator projecting onto it (the chosen section).
    section_gen: Vec<usize>,
}

fn sharp_data(m: &AffineMonoid, cap: u64) -> Result<SharpData> {
    let units = m.units(cap)?;
    let u = units.basis.len();
    let r = m.rank();

    let (transform, _snf) = if u == 0 {
        (IMat::identity(r), None)
    } else {
        let snf = smith_normal_form(&IMat::from_cols(&units.basis, r));
        (snf.u.clone(), Some(snf))
    };
    let zdim = r - u;
    let project = |x: &[BigInt]| -> Vec<BigInt> {
        let y = transform.mul_vec(x);
        y[u..].to_vec()
    };

    // Torsion of M^gp / M*: if nontrivial, the group hull of the sharp
    // quotient has torsion, hence the sharp quotient cannot be free.
    if u > 0 && !m.gens.is_empty() {
        let mgp_basis = column_lattice_basis(&m.gen_matrix());
        let bm = IMat::from_cols(&mgp_basis, r);
        let coords: Vec<Vec<BigInt>> = units
            .basis
            .iter()
            .map(|ub| solve_integer(&bm, ub).expect("unit basis lies in M^gp"))
            .collect();
        let torsion = smith_normal_form(&IMat::from_cols(&coords, mgp_basis.len()))
            .torsion_invariants();
        if !torsion.is_empty() {
            return Ok(SharpData {
                units,
                ambient_transform: transform,
                unit_rank: u,
                freeness: SharpFreeness::NotFree {
                    reason: format!(
                        "group hull of the sharp quotient has torsion invariants {:?}",
                        torsion
                    ),
                    irreducibles: Vec::new(),
                },
                section_gen: Vec::new(),
            });
        }
    }

    let projected: Vec<Vec<BigInt>> = m.gens.iter().map(|g| project(g)).collect();
    let mut distinct: Vec<Vec<BigInt>> = Vec::new();
    let mut first_gen: Vec<usize> = Vec::new();
    for (i, p) in projected.iter().enumerate() {
        if p.iter().all(|x| x.is_zero()) {
            continue;
        }
        if !distinct.contains(p) {
            distinct.push(p.clone());
            first_gen.push(i);
        }
    }

    let sharp_monoid = AffineMonoid::new(zdim, distinct.clone())?;

    // Irreducible = not a sum of two nonzero elements of the quotient:
    // equivalently no generator ḡ_j with ḡ − ḡ_j in M̄ \ {0}.
    let mut irreducibles = Vec::new();
    let mut irr_sections = Vec::new();
    for (p, &gi) in distinct.iter().zip(&first_gen) {
        let mut reducible = false;
        for q in &distinct {
            let diff: Vec<BigInt> = p.iter().zip(q).map(|(a, b)| a - b).collect();
            if diff.iter().all(|x| x.is_zero()) {
                continue;
            }
            if sharp_monoid.membership(&diff, cap)?.is_some() {
                reducible = true;
                break;
            }
        }
        if !reducible {
            irreducibles.push(p.clone());
            irr_sections.push(gi);
        }
    }

    // Linear independence over ℤ.
    let freeness = if irreducibles.is_empty() {
        SharpFreeness::Free { basis: Vec::new() }
    } else {
        let rank = smith_normal_form(&IMat::from_cols(&irreducibles, zdim)).rank();
        if rank < irreducibles.len() {
            SharpFreeness::NotFree {
                reason: format!(
                    "{} irreducible elements span a lattice of rank {}",
                    irreducibles.len(),
                    rank
                ),
                irreducibles: irreducibles.clone(),
            }
        } else {
            // Every generator must be a non-negative combination.
            let imat = IMat::from_cols(&irreducibles, zdim);
            let mut all_generated = true;
            for p in &distinct {
                match solve_integer(&imat, p) {
                    Some(c) if c.iter().all(|x| !x.is_negative()) => {}
                    _ => {
                        all_generated = false;
                        break;
                    }
                }
            }
            if all_generated {
                SharpFreeness::Free {
                    basis: irreducibles.clone(),
                }
            } else {
                SharpFreeness::NotFree {
                    reason: "a generator is not a non-negative combination of the irreducibles"
                        .into(),
                    irreducibles: irreducibles.clone(),
                }
            }
        }
    };

    Ok(SharpData {
        units,
        ambient_transform: transform,
        unit_rank: u,
        freeness,
        section_gen: irr_sections,
    })
}

/// Freeness of the sharp quotient M̄ = M / M*, with basis or counterexample.
pub fn is_sharp_free(m: &AffineMonoid, cap: u64) -> Result<SharpFreeness> {
    Ok(sharp_data(m, cap)?.freeness)
}

/// Class coordinates of a generator of P[ρ⁻¹] under the decomposition
/// P/ρ ≅ T ⊕ ℤ^a ⊕ ℕ^b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoords {
    /// Residue in T (0 ≤ torsion < #T when T is nontrivial, else 0).
    pub torsion: BigInt,
    /// ℤ^a coordinates.
    pub z: Vec<BigInt>,
    /// ℕ^b coordinates.
    pub sharp: Vec<BigInt>,
}

/// A lift χ(e_i) ∈ P of a class of P/ρ, with its membership witness and
/// the ρ-shift used.
#[derive(Clone, Debug)]
pub struct ChiLift {
    pub image: Vec<BigInt>,
    pub witness: Vec<u64>,
    pub rho_shift: i64,
}

/// The decomposition data of §(P, ρ): P[ρ⁻¹] ≅ T ⊕ ℤ ⊕ ℤ^a ⊕ ℕ^b with ρ
/// in the distinguished ℤ summand, plus the maps realizing it.
#[derive(Clone, Debug)]
pub struct MonoidDecomposition {
    pub monoid: AffineMonoid,
    pub rho: Vec<BigInt>,
    pub rho_witness: Vec<u64>,
    pub localized: AffineMonoid,
    /// Torsion invariants of T (integers > 1 with divisibility).
    pub torsion: Vec<BigInt>,
    pub a: usize,
    pub b: usize,
    /// Ambient lattice basis of the unit group of P[ρ⁻¹].
    pub unit_basis: Vec<Vec<BigInt>>,
    /// Ambient representatives of the ℤ^a basis classes (sign-canonical).
    pub z_basis: Vec<Vec<BigInt>>,
    /// Sharp basis in sharp coordinates, and ambient section lifts.
    pub sharp_basis: Vec<Vec<BigInt>>,
    pub sharp_section: Vec<Vec<BigInt>>,
    /// Canonical lifts of χ₀: first the a unit-part classes, then the b
    /// sharp-part classes.
    pub chi_lifts: Vec<ChiLift>,
    /// Class coordinates of each generator of the localized monoid.
    pub gen_coords: Vec<ClassCoords>,
    // internal transforms
    ambient_transform: IMat,
    unit_rank: usize,
    y_map: IMat,
    y_unmap: IMat,
    g_t: BigInt,
    signs: Vec<i8>,
}

impl MonoidDecomposition {
    pub fn d(&self) -> usize {
        self.a + self.b
    }

    /// #T = product of the torsion invariants.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion
            .iter()
            .fold(BigInt::one(), |acc, t| acc * t)
    }

    /// Sharp coordinates of an ambient vector.
    fn sharp_coords_of(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.ambient_transform.mul_vec(x);
        y[self.unit_rank..].to_vec()
    }

    /// Class of an ambient element of P[ρ⁻¹] in T ⊕ ℤ^a ⊕ ℕ^b.
    pub fn class_of(&self, x: &[BigInt]) -> Result<ClassCoords> {
        // sharp part first
        let z = self.sharp_coords_of(x);
        let sharp = if self.b == 0 {
            if z.iter().any(|v| !v.is_zero()) {
                return Err(Error::Precondition(
                    "element does not project into the sharp quotient's span".into(),
                ));
            }
            Vec::new()
        } else {
            let bm = IMat::from_cols(&self.sharp_basis, z.len());
            let c = solve_integer(&bm, &z).ok_or_else(|| {
                Error::Precondition("sharp projection is not in the basis lattice".into())
            })?;
            if c.iter().any(|v| v.is_negative()) {
                return Err(Error::Precondition(
                    "sharp projection has negative coordinates".into(),
                ));
            }
            c
        };
        // subtract the section to land in the unit group
        let mut rem: Vec<BigInt> = x.to_vec();
        for (cj, sec) in sharp.iter().zip(&self.sharp_section) {
            for (ri, si) in rem.iter_mut().zip(sec) {
                *ri -= si * cj;
            }
        }
        let ucoords = solve_integer(
            &IMat::from_cols(&self.unit_basis, self.monoid.rank()),
            &rem,
        )
        .ok_or_else(|| Error::Precondition("element is not in the unit coset".into()))?;
        let y = self.y_map.mul_vec(&ucoords);
        let torsion = if self.g_t.is_one() {
            BigInt::zero()
        } else {
            y[0].mod_floor(&self.g_t)
        };
        let z_out: Vec<BigInt> = (0..self.a)
            .map(|i| {
                let v = y[i + 1].clone();
                if self.signs[i] < 0 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        Ok(ClassCoords {
            torsion,
            z: z_out,
            sharp,
        })
    }

    /// An ambient representative of a class (the stated isomorphism
    /// witness in the reverse direction).
    pub fn class_lift(&self, c: &ClassCoords) -> Vec<BigInt> {
        let u = self.unit_basis.len();
        let mut y = vec![BigInt::zero(); u];
        if u > 0 {
            y[0] = c.torsion.clone();
            for i in 0..self.a {
                y[i + 1] = if self.signs[i] < 0 {
                    -c.z[i].clone()
                } else {
                    c.z[i].clone()
                };
            }
        }
        let ucoords = self.y_unmap.mul_vec(&y);
        let mut x = vec![BigInt::zero(); self.monoid.rank()];
        for (k, ub) in self.unit_basis.iter().enumerate() {
            for (xi, ui) in x.iter_mut().zip(ub) {
                *xi += ui * &ucoords[k];
            }
        }
        for (cj, sec) in c.sharp.iter().zip(&self.sharp_section) {
            for (xi, si) in x.iter_mut().zip(sec) {
                *xi += si * cj;
            }
        }
        x
    }

    /// True iff x ≡ y modulo the subgroup generated by ρ.
    pub fn same_class(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        is_integer_multiple(&diff, &self.rho)
    }
}

fn is_integer_multiple(x: &[BigInt], v: &[BigInt]) -> bool {
    // x = k v for some integer k?
    let mut k: Option<BigRational> = None;
    for (xi, vi) in x.iter().zip(v) {
        if vi.is_zero() {
            if !xi.is_zero() {
                return false;
            }
            continue;
        }
        let q = BigRational::new(xi.clone(), vi.clone());
        match &k {
            None => {
                if !q.denom().is_one() {
                    return false;
                }
                k = Some(q);
            }
            Some(k0) => {
                if q != *k0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Canonical witness order: total multiplicity, then multiplicities
/// compared from the last generator backwards, ascending.
fn witness_key(w: &[u64]) -> (u64, Vec<u64>) {
    let total = w.iter().sum();
    let rev: Vec<u64> = w.iter().rev().copied().collect();
    (total, rev)
}

/// Decompose P/ρ: computes L = P[ρ⁻¹], its units, the torsion part T of
/// the quotient group, the ranks a and b, the sharp basis with sections,
/// the canonical lift data for χ, and per-generator class coordinates.
///
/// Fails with `NotFree` when the sharp quotient of L is not free (the
/// hypothesis under which the whole construction proceeds).
pub fn decompose_quotient(
    p: &AffineMonoid,
    rho: &[BigInt],
    cap: u64,
) -> Result<MonoidDecomposition> {
    let rho_witness = p
        .membership(rho, cap)?
        .ok_or_else(|| Error::Precondition(format!("rho {:?} is not in the monoid", rho)))?;
    let neg_rho: Vec<BigInt> = rho.iter().map(|x| -x.clone()).collect();
    if p.membership(&neg_rho, cap)?.is_some() {
        return Err(Error::Precondition(
            "rho is invertible; the quotient construction needs a non-invertible rho".into(),
        ));
    }

    let localized = p.localize_at_element(rho)?;
    let data = sharp_data(&localized, cap)?;
    let sharp_basis = match &data.freeness {
        SharpFreeness::Free { basis } => basis.clone(),
        SharpFreeness::NotFree { reason, .. } => {
            return Err(Error::NotFree(reason.clone()));
        }
    };
    let b = sharp_basis.len();
    let u = data.unit_rank;
    if u == 0 {
        return Err(Error::Precondition(
            "rho is not invertible in its own localization (internal invariant violated)".into(),
        ));
    }
    let a = u - 1;

    let sharp_section: Vec<Vec<BigInt>> = data
        .section_gen
        .iter()
        .map(|&gi| localized.gens()[gi].clone())
        .collect();

    // ρ in unit-lattice coordinates, then SNF of that column vector:
    // y = U₁·(coords) puts ρ at (g_t, 0, .., 0).
    let ub_mat = IMat::from_cols(&data.units.basis, p.rank());
    let rho_u = solve_integer(&ub_mat, rho)
        .expect("rho lies in the unit group of the localization");
    let snf_rho = smith_normal_form(&IMat::from_cols(&[rho_u], u));
    let y_map = snf_rho.u.clone();
    let y_unmap = snf_rho.u_inv.clone();
    let g_t = snf_rho.d[(0, 0)].clone();
    assert!(g_t.is_positive(), "rho has nonzero unit coordinates");
    let torsion: Vec<BigInt> = if g_t.is_one() {
        Vec::new()
    } else {
        vec![g_t.clone()]
    };

    // Pre-sign ℤ^a basis: ambient vectors for y-coordinates e_2..e_u.
    let mut z_basis: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..a {
        let mut e = vec![BigInt::zero(); u];
        e[i + 1] = BigInt::one();
        let ucoords = y_unmap.mul_vec(&e);
        let mut x = vec![BigInt::zero(); p.rank()];
        for (k, ubv) in data.units.basis.iter().enumerate() {
            for (xi, ui) in x.iter_mut().zip(ubv) {
                *xi += ui * &ucoords[k];
            }
        }
        z_basis.push(x);
    }

    // Canonical lifts: for each ℤ^a basis class try both signs and all
    // ρ-shifts |n| ≤ cap; keep the lift with the smallest canonical
    // witness. Smallest-witness ties cannot occur across distinct lifts.
    let mut signs: Vec<i8> = Vec::new();
    let mut chi_lifts: Vec<ChiLift> = Vec::new();
    for w in z_basis.iter() {
        let mut best: Option<(ChiLift, i8, (u64, Vec<u64>), (u64, i8))> = None;
        let mut saw_undecided = false;
        for &eps in &[1i8, -1] {
            for n in -(cap as i64)..=(cap as i64) {
                let cand: Vec<BigInt> = w
                    .iter()
                    .zip(rho)
                    .map(|(wi, ri)| {
                        let base = if eps < 0 { -wi.clone() } else { wi.clone() };
                        base + ri * BigInt::from(n)
                    })
                    .collect();
                match p.membership(&cand, cap) {
                    Ok(Some(witness)) => {
                        let key = witness_key(&witness);
                        let tie = (n.unsigned_abs(), -eps);
                        let better = match &best {
                            None => true,
                            Some((_, _, bkey, btie)) => {
                                key < *bkey || (key == *bkey && tie < *btie)
                            }
                        };
                        if better {
                            best = Some((
                                ChiLift {
                                    image: cand,
                                    witness,
                                    rho_shift: n,
                                },
                                eps,
                                key,
                                tie,
                            ));
                        }
                    }
                    Ok(None) => {}
                    Err(Error::CapExceeded(_)) => saw_undecided = true,
                    Err(e) => return Err(e),
                }
            }
        }
        match best {
            Some((lift, eps, _, _)) => {
                signs.push(eps);
                // flip the stored basis vector to the chosen sign
                chi_lifts.push(lift);
            }
            None => {
                return Err(Error::CapExceeded(if saw_undecided {
                    "chi lift search undecided at cap".into()
                } else {
                    format!("no lift of a unit-part basis class within {} rho-shifts", cap)
                }));
            }
        }
    }
    for (i, s) in signs.iter().enumerate() {
        if *s < 0 {
            for v in z_basis[i].iter_mut() {
                *v = -v.clone();
            }
        }
    }

    // Sharp-part lifts: the section value is a generator of P, so n = 0
    // always works; still search for the canonical witness.
    for sec in &sharp_section {
        let mut best: Option<(ChiLift, (u64, Vec<u64>), u64)> = None;
        for n in -(cap as i64)..=(cap as i64) {
            let cand: Vec<BigInt> = sec
                .iter()
                .zip(rho)
                .map(|(si, ri)| si + ri * BigInt::from(n))
                .collect();
            match p.membership(&cand, cap) {
                Ok(Some(witness)) => {
                    let key = witness_key(&witness);
                    let better = match &best {
                        None => true,
                        Some((_, bkey, bn)) => key < *bkey || (key == *bkey && n.unsigned_abs() < *bn),
                    };
                    if better {
                        best = Some((
                            ChiLift {
                                image: cand,
                                witness,
                                rho_shift: n,
                            },
                            key,
                            n.unsigned_abs(),
                        ));
                    }
                }
                Ok(None) => {}
                Err(Error::CapExceeded(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let (lift, _, _) = best.expect("the section itself is a generator of P");
        chi_lifts.push(lift);
    }

    let mut dec = MonoidDecomposition {
        monoid: p.clone(),
        rho: rho.to_vec(),
        rho_witness,
        localized: localized.clone(),
        torsion,
        a,
        b,
        unit_basis: data.units.basis.clone(),
        z_basis,
        sharp_basis,
        sharp_section,
        chi_lifts,
        gen_coords: Vec::new(),
        ambient_transform: data.ambient_transform,
        unit_rank: u,
        y_map,
        y_unmap,
        g_t,
        signs,
    };

    // Class coordinates of every generator of L, with a round-trip check:
    // lifting the coordinates lands in the same class modulo ρ.
    let mut gen_coords = Vec::new();
    for g in localized.gens() {
        let c = dec.class_of(g)?;
        let back = dec.class_lift(&c);
        if !dec.same_class(g, &back) {
            return Err(Error::Precondition(format!(
                "decomposition round trip failed for generator {:?}",
                g
            )));
        }
        gen_coords.push(c);
    }
    dec.gen_coords = gen_coords;

    // χ classes must match χ₀: unit-part lift i has class e_i in ℤ^a and
    // zero torsion; sharp-part lift j has class e_j in ℕ^b.
    for (i, lift) in dec.chi_lifts.iter().enumerate() {
        let c = dec.class_of(&lift.image)?;
        if i < dec.a {
            let ok = c.torsion.is_zero()
                && c.sharp.iter().all(|x| x.is_zero())
                && (0..dec.a).all(|k| {
                    if k == i {
                        c.z[k].is_one()
                    } else {
                        c.z[k].is_zero()
                    }
                });
            if !ok {
                return Err(Error::Precondition(format!(
                    "chi lift {} does not represent its unit-part class: {:?}",
                    i, c
                )));
            }
        } else {
            let j = i - dec.a;
            let ok = c.torsion.is_zero()
                && c.z.iter().all(|x| x.is_zero())
                && (0..dec.b).all(|k| {
                    if k == j {
                        c.sharp[k].is_one()
                    } else {
                        c.sharp[k].is_zero()
                    }
                });
            if !ok {
                return Err(Error::Precondition(format!(
                    "chi lift {} does not represent its sharp-part class: {:?}",
                    i, c
                )));
            }
        }
    }

    Ok(dec)
}

/// A monoid homomorphism ℕ^d → P recorded by generator images with
/// membership witnesses.
#[derive(Clone, Debug)]
pub struct MonoidHom {
    pub source_rank: usize,
    pub target: AffineMonoid,
    pub images: Vec<Vec<BigInt>>,
    pub witnesses: Vec<Vec<u64>>,
}

impl MonoidHom {
    /// Check that each witness evaluates to the stated image.
    pub fn verify(&self) -> bool {
        self.images
            .iter()
            .zip(&self.witnesses)
            .all(|(img, w)| &self.target.eval_witness(w) == img)
    }
}

/// The lift χ: ℕ^d → P of χ₀ chosen by `decompose_quotient` (smallest
/// witness in the canonical order), packaged as a verified hom.
pub fn lift_chi(p: &AffineMonoid, dec: &MonoidDecomposition, _cap: u64) -> Result<MonoidHom> {
    let hom = MonoidHom {
        source_rank: dec.d(),
        target: p.clone(),
        images: dec.chi_lifts.iter().map(|l| l.image.clone()).collect(),
        witnesses: dec.chi_lifts.iter().map(|l| l.witness.clone()).collect(),
    };
    if !hom.verify() {
        return Err(Error::Precondition(
            "chi lift witnesses do not re-evaluate to their images".into(),
        ));
    }
    Ok(hom)
}

/// gcd(#T, residue characteristic) = 1; always true in equicharacteristic
/// zero.
pub fn torsion_invertibility_check(dec: &MonoidDecomposition, model: &DvrModel) -> bool {
    let p = model.residue_char();
    if p.is_zero() {
        return true;
    }
    dec.torsion_order().gcd(&p).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn monoid(rank: usize, gens: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::new(rank, gens.iter().map(|g| v(g)).collect()).unwrap()
    }

    #[test]
    fn membership_basic() {
        let n2 = AffineMonoid::free(2);
        assert_eq!(
            n2.membership(&v(&[2, 1]), 64).unwrap(),
            Some(vec![2, 1])
        );
        let m = monoid(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(m.membership(&v(&[1, 1]), 64).unwrap(), Some(vec![0, 1, 0]));
        // parity obstruction
        let m2 = monoid(2, &[&[2, 0], &[0, 2]]);
        assert_eq!(m2.membership(&v(&[1, 0]), 64).unwrap(), None);
    }

    #[test]
    fn membership_witness_reevaluates() {
        let m = monoid(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        for target in [&[4, 2], &[3, 3], &[2, 4]] {
            if let Some(w) = m.membership(&v(target), 64).unwrap() {
                assert_eq!(m.eval_witness(&w), v(target));
            }
        }
    }

    #[test]
    fn membership_canonical_witness_prefers_early_generators() {
        // (1,0) and (0,1) are both single generators; the canonical order
        // compares multiplicities from the last generator backwards.
        let n2 = AffineMonoid::free(2);
        assert_eq!(n2.membership(&v(&[1, 0]), 64).unwrap(), Some(vec![1, 0]));
        assert_eq!(n2.membership(&v(&[0, 1]), 64).unwrap(), Some(vec![0, 1]));
        // (2,2) = 2*(1,1) beats mixtures on total multiplicity
        let m = monoid(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(m.membership(&v(&[2, 2]), 64).unwrap(), Some(vec![0, 2, 0]));
    }

    #[test]
    fn units_examples() {
        // N^2: trivial group
        let n2 = AffineMonoid::free(2);
        let u = n2.units(64).unwrap();
        assert!(u.indices.is_empty());
        assert!(u.basis.is_empty());

        // <(1,0),(0,1),(-1,-1)>: all of Z^2
        let m = monoid(2, &[&[1, 0], &[0, 1], &[-1, -1]]);
        let u = m.units(64).unwrap();
        assert_eq!(u.indices.len(), 3);
        assert_eq!(u.basis.len(), 2);

        // <(1,0),(-1,0),(0,1)>: lattice Z x {0}
        let m = monoid(2, &[&[1, 0], &[-1, 0], &[0, 1]]);
        let u = m.units(64).unwrap();
        assert_eq!(u.indices, vec![0, 1]);
        assert_eq!(u.basis.len(), 1);
        assert!(u.basis[0][1].is_zero());
    }

    #[test]
    fn face_examples() {
        let n2 = AffineMonoid::free(2);
        // a = (1,0): face {(1,0)}
        assert_eq!(n2.face_generated_by(&v(&[1, 0]), 64).unwrap(), vec![0]);
        // a = (1,1): both generators
        assert_eq!(n2.face_generated_by(&v(&[1, 1]), 64).unwrap(), vec![0, 1]);
        // a = 0: the unit face (empty here)
        assert!(n2.face_generated_by(&v(&[0, 0]), 64).unwrap().is_empty());
    }

    #[test]
    fn localize_examples() {
        let n2 = AffineMonoid::free(2);
        let l = n2.localize_at_element(&v(&[1, 1])).unwrap();
        // all generators become invertible
        let u = l.units(64).unwrap();
        assert_eq!(u.indices.len(), 3);
        assert_eq!(u.basis.len(), 2);

        // trivial face: localization is P itself
        let same = n2.localize(&[]).unwrap();
        assert_eq!(same, n2);

        // N^3 at rho = (1,1,0): Z^2 + N
        let n3 = AffineMonoid::free(3);
        let l3 = n3.localize_at_element(&v(&[1, 1, 0])).unwrap();
        let u3 = l3.units(64).unwrap();
        assert_eq!(u3.basis.len(), 2);
    }

    #[test]
    fn sharp_freeness_examples() {
        // free monoid: free with standard basis
        let n3 = AffineMonoid::free(3);
        match is_sharp_free(&n3, 64).unwrap() {
            SharpFreeness::Free { basis } => assert_eq!(basis.len(), 3),
            other => panic!("expected free, got {:?}", other),
        }
        // A1 cone: three irreducibles in rank 2
        let a1 = monoid(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        match is_sharp_free(&a1, 64).unwrap() {
            SharpFreeness::NotFree { irreducibles, .. } => assert_eq!(irreducibles.len(), 3),
            other => panic!("expected not free, got {:?}", other),
        }
        // all units: free with empty basis
        let z2 = monoid(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        match is_sharp_free(&z2, 64).unwrap() {
            SharpFreeness::Free { basis } => assert!(basis.is_empty()),
            other => panic!("expected free, got {:?}", other),
        }
    }

    #[test]
    fn decompose_n2_diagonal() {
        // P = N^2, rho = (1,1): T trivial, a = 1, b = 0, d = 1,
        // chi(e_1) = (1,0)
        let n2 = AffineMonoid::free(2);
        let dec = decompose_quotient(&n2, &v(&[1, 1]), 64).unwrap();
        assert!(dec.torsion.is_empty());
        assert_eq!(dec.a, 1);
        assert_eq!(dec.b, 0);
        assert_eq!(dec.d(), 1);
        assert_eq!(dec.chi_lifts[0].image, v(&[1, 0]));
        assert_eq!(dec.chi_lifts[0].witness, vec![1, 0]);
    }

    #[test]
    fn decompose_n3_with_sharp_part() {
        // P = N^3, rho = (1,1,0): T trivial, a = 1, b = 1, d = 2,
        // chi = (1,0,0), (0,0,1)
        let n3 = AffineMonoid::free(3);
        let dec = decompose_quotient(&n3, &v(&[1, 1, 0]), 64).unwrap();
        assert!(dec.torsion.is_empty());
        assert_eq!(dec.a, 1);
        assert_eq!(dec.b, 1);
        assert_eq!(dec.chi_lifts[0].image, v(&[1, 0, 0]));
        assert_eq!(dec.chi_lifts[1].image, v(&[0, 0, 1]));
    }

    #[test]
    fn decompose_rejects_a1_cone_quotient() {
        // P = N + A1-cone, rho = (1,(0,0)): sharp quotient is the A1 cone
        let p = monoid(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]);
        let err = decompose_quotient(&p, &v(&[1, 0, 0]), 64).unwrap_err();
        assert!(matches!(err, Error::NotFree(_)), "got {:?}", err);
    }

    #[test]
    fn decompose_imprimitive_rho_gives_torsion() {
        // P = N, rho = 2: L = Z, U = Z, rho imprimitive: T = Z/2
        let n1 = AffineMonoid::free(1);
        let dec = decompose_quotient(&n1, &v(&[2]), 64).unwrap();
        assert_eq!(dec.torsion, vec![BigInt::from(2)]);
        assert_eq!(dec.a, 0);
        assert_eq!(dec.b, 0);
        assert_eq!(dec.torsion_order(), BigInt::from(2));
    }

    #[test]
    fn decompose_trivial_chart() {
        // P = N, rho = 1: everything collapses, d = 0
        let n1 = AffineMonoid::free(1);
        let dec = decompose_quotient(&n1, &v(&[1]), 64).unwrap();
        assert!(dec.torsion.is_empty());
        assert_eq!(dec.d(), 0);
    }

    #[test]
    fn decompose_rejects_invertible_rho() {
        let m = monoid(1, &[&[1], &[-1]]);
        assert!(matches!(
            decompose_quotient(&m, &v(&[1]), 64),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn chi_is_a_verified_hom() {
        let n3 = AffineMonoid::free(3);
        let dec = decompose_quotient(&n3, &v(&[1, 1, 1]), 64).unwrap();
        let chi = lift_chi(&n3, &dec, 64).unwrap();
        assert!(chi.verify());
        assert_eq!(chi.source_rank, 2);
    }

    #[test]
    fn torsion_invertibility() {
        let n1 = AffineMonoid::free(1);
        let trivial = decompose_quotient(&n1, &v(&[1]), 64).unwrap();
        let two = decompose_quotient(&n1, &v(&[2]), 64).unwrap();
        let three = decompose_quotient(&n1, &v(&[3]), 64).unwrap();
        let p2 = DvrModel::mixed(2).unwrap();
        assert!(torsion_invertibility_check(&trivial, &p2));
        assert!(!torsion_invertibility_check(&two, &p2));
        assert!(torsion_invertibility_check(&three, &p2));
        assert!(torsion_invertibility_check(&two, &DvrModel::equichar0()));
    }

    #[test]
    fn semistable_family_shape() {
        // P = N^r, rho with a zero-coordinate pattern: T trivial and
        // a + b + 1 = r.
        for r in 2..=4usize {
            for zeros in 0..r - 1 {
                let rho: Vec<BigInt> = (0..r)
                    .map(|i| {
                        if i < r - zeros {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect();
                let p = AffineMonoid::free(r);
                let dec = decompose_quotient(&p, &rho, 64).unwrap();
                assert!(dec.torsion.is_empty(), "r={} zeros={}", r, zeros);
                assert_eq!(dec.a + dec.b + 1, r, "r={} zeros={}", r, zeros);
            }
        }
    }
}
