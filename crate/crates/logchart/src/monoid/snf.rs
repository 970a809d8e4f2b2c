//! Integer matrices and Smith normal form with unimodular transforms.
//!
//! `smith_normal_form` returns U, W (with tracked inverses) and the
//! diagonal D with U·A·W = D and d_1 | d_2 | ... — the engine behind every
//! lattice computation here: integer solving, kernels, lattice bases and
//! quotient-group invariants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Columns are the given vectors (length = rows).
    pub fn from_cols(cols: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let x = self[(a, j)].clone();
            self[(a, j)] = self[(b, j)].clone();
            self[(b, j)] = x;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self[(i, a)].clone();
            self[(i, a)] = self[(i, b)].clone();
            self[(i, b)] = x;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    fn neg_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// row i += c * row j
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let t = &self[(j, k)] * c;
            self[(i, k)] += t;
        }
    }

    /// col i += c * col j
    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.rows {
            let t = &self[(k, j)] * c;
            self[(k, i)] += t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// U·A·W = D with U, W unimodular (tracked inverses certify this) and a
/// divisibility chain d_1 | d_2 | ... on the diagonal of D.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IMat,
    pub u_inv: IMat,
    pub d: IMat,
    pub w: IMat,
    pub w_inv: IMat,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        let n = self.d.rows.min(self.d.cols);
        (0..n).filter(|&i| !self.d[(i, i)].is_zero()).count()
    }

    /// Nonzero diagonal entries d_1 | d_2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n)
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Invariant factors > 1: the torsion invariants of coker(A).
    pub fn torsion_invariants(&self) -> Vec<BigInt> {
        self.invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }
}

struct Work {
    d: IMat,
    u: IMat,
    u_inv: IMat,
    w: IMat,
    w_inv: IMat,
}

impl Work {
    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.w.swap_cols(a, b);
        self.w_inv.swap_rows(a, b);
    }

    fn row_neg(&mut self, i: usize) {
        self.d.neg_row(i);
        self.u.neg_row(i);
        self.u_inv.neg_col(i);
    }

    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        self.d.row_add(i, j, c);
        self.u.row_add(i, j, c);
        let neg = -c;
        self.u_inv.col_add(j, i, &neg);
    }

    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        self.d.col_add(i, j, c);
        self.w.col_add(i, j, c);
        let neg = -c;
        self.w_inv.row_add(j, i, &neg);
    }
}

/// Smith normal form by elementary unimodular row and column operations.
pub fn smith_normal_form(a: &IMat) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut wk = Work {
        d: a.clone(),
        u: IMat::identity(m),
        u_inv: IMat::identity(m),
        w: IMat::identity(n),
        w_inv: IMat::identity(n),
    };

    let steps = m.min(n);
    for k in 0..steps {
        'stage: loop {
            // Pick the minimal-magnitude nonzero entry of the trailing
            // block as pivot (deterministic scan order).
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if wk.d[(i, j)].is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if wk.d[(i, j)].abs() < wk.d[(pi, pj)].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let (pi, pj) = match pivot {
                None => return finish(wk),
                Some(p) => p,
            };
            wk.row_swap(k, pi);
            wk.col_swap(k, pj);
            if wk.d[(k, k)].is_negative() {
                wk.row_neg(k);
            }

            // Euclid steps on the pivot cross.
            let mut reduced_all = true;
            for i in k + 1..m {
                if wk.d[(i, k)].is_zero() {
                    continue;
                }
                let q = wk.d[(i, k)].div_floor(&wk.d[(k, k)]);
                let nq = -q;
                wk.row_add(i, k, &nq);
                if !wk.d[(i, k)].is_zero() {
                    reduced_all = false;
                }
            }
            for j in k + 1..n {
                if wk.d[(k, j)].is_zero() {
                    continue;
                }
                let q = wk.d[(k, j)].div_floor(&wk.d[(k, k)]);
                let nq = -q;
                wk.col_add(j, k, &nq);
                if !wk.d[(k, j)].is_zero() {
                    reduced_all = false;
                }
            }
            if !reduced_all {
                continue 'stage;
            }

            // Divisibility fix: pull a non-divisible trailing entry into
            // row k and restart the stage.
            for i in k + 1..m {
                for j in k + 1..n {
                    if !wk.d[(i, j)].mod_floor(&wk.d[(k, k)]).is_zero() {
                        wk.row_add(k, i, &BigInt::one());
                        continue 'stage;
                    }
                }
            }
            break 'stage;
        }
    }
    finish(wk)
}

fn finish(wk: Work) -> SnfResult {
    SnfResult {
        u: wk.u,
        u_inv: wk.u_inv,
        d: wk.d,
        w: wk.w,
        w_inv: wk.w_inv,
    }
}

/// Solve A x = b over ℤ; None when no integer solution exists.
pub fn solve_integer(a: &IMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < r {
            let (q, rem) = ubi.div_rem(&snf.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            if i < a.cols {
                y[i] = q;
            }
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(snf.w.mul_vec(&y))
}

/// Basis of {x : A x = 0} ⊆ ℤ^cols.
pub fn kernel_basis(a: &IMat) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (r..a.cols).map(|j| snf.w.col(j)).collect()
}

/// Basis of the lattice spanned by the columns of A.
pub fn column_lattice_basis(a: &IMat) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    (0..r)
        .map(|j| {
            let c = snf.u_inv.col(j);
            c.into_iter().map(|x| x * &snf.d[(j, j)]).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IMat {
        IMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    fn check_invariants(a: &IMat, snf: &SnfResult) {
        // exactness: U A W = D
        assert_eq!(snf.u.mul(a).mul(&snf.w), snf.d);
        // unimodularity via tracked inverses
        assert_eq!(snf.u.mul(&snf.u_inv), IMat::identity(a.rows));
        assert_eq!(snf.w.mul(&snf.w_inv), IMat::identity(a.cols));
        // divisibility chain and off-diagonal zeros
        let inv = snf.invariant_factors();
        for w in inv.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "chain broken: {:?}", inv);
        }
        for i in 0..snf.d.rows {
            for j in 0..snf.d.cols {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn identity_matrix() {
        let a = IMat::identity(2);
        let snf = smith_normal_form(&a);
        check_invariants(&a, &snf);
        assert_eq!(snf.invariant_factors(), vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn diag_2_4_example() {
        // [[2,4],[6,8]]: d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let a = mat(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&a);
        check_invariants(&a, &snf);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(4)]
        );
    }

    #[test]
    fn diag_1_2_example() {
        let a = mat(&[&[1, 1], &[1, -1]]);
        let snf = smith_normal_form(&a);
        check_invariants(&a, &snf);
        assert_eq!(
            snf.invariant_factors(),
            vec![BigInt::from(1), BigInt::from(2)]
        );
    }

    #[test]
    fn solve_and_kernel() {
        let a = mat(&[&[2, 0, 1], &[0, 2, 1]]);
        let b = vec![BigInt::from(3), BigInt::from(5)];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);

        let ker = kernel_basis(&a);
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&ker[0]).iter().all(|v| v.is_zero()));

        // parity obstruction: (1,0) not in the lattice 2Z x 2Z
        let a2 = mat(&[&[2, 0], &[0, 2]]);
        assert!(solve_integer(&a2, &[BigInt::one(), BigInt::zero()]).is_none());
    }

    #[test]
    fn column_lattice_of_unit_vectors() {
        let a = mat(&[&[1, 0, -1], &[0, 1, -1]]);
        let basis = column_lattice_basis(&a);
        assert_eq!(basis.len(), 2);
        // the basis spans Z^2: solve for both unit vectors
        let bm = IMat::from_cols(&basis, 2);
        assert!(solve_integer(&bm, &[BigInt::one(), BigInt::zero()]).is_some());
        assert!(solve_integer(&bm, &[BigInt::zero(), BigInt::one()]).is_some());
    }
}
