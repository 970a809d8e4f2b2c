//! Exact two-phase simplex over ℚ for the rational-cone relaxations of
//! monoid membership: feasibility of {x ≥ 0 : Ax = b} and exact upper
//! bounds max x_i over that polytope. Bland's rule throughout, so every
//! run terminates.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    /// Optimal value and an optimal point.
    Optimal(BigRational, Vec<BigRational>),
    Unbounded,
}

/// Maximize c·x subject to A x = b, x ≥ 0. Pass a zero objective for a
/// pure feasibility check.
pub fn maximize(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    c: &[BigRational],
) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    for row in a {
        assert_eq!(row.len(), n);
    }
    assert_eq!(b.len(), m);

    // Normalize to b >= 0.
    let mut rows: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs: Vec<BigRational> = b.to_vec();
    for i in 0..m {
        if rhs[i].is_negative() {
            for v in rows[i].iter_mut() {
                *v = -v.clone();
            }
            rhs[i] = -rhs[i].clone();
        }
    }

    // Phase 1 tableau: columns = n structural + m artificial.
    let total = n + m;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = rows[i].clone();
        for j in 0..m {
            row.push(if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(rhs[i].clone());
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..total).collect();

    // Phase 1 objective: minimize sum of artificials = maximize -(sum).
    // Reduced-cost row for that objective given the artificial basis.
    let mut obj = vec![BigRational::zero(); total + 1];
    for j in 0..total {
        let mut s = BigRational::zero();
        for (_, row) in t.iter().enumerate() {
            s += &row[j];
        }
        // cost of artificial columns is 1, structural 0
        let cost = if j >= n {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        obj[j] = s - cost;
    }
    obj[total] = t.iter().map(|r| r[total].clone()).sum();

    run_simplex(&mut t, &mut obj, &mut basis, total);

    if !obj[total].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis where possible; rows that cannot
    // pivot are redundant and dropped.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            let mut pivoted = false;
            for j in 0..n {
                if !t[i][j].is_zero() {
                    pivot(&mut t, &mut obj, &mut basis, i, j, total);
                    pivoted = true;
                    break;
                }
            }
            if !pivoted {
                t.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    // Phase 2: real objective over structural columns only (forbid
    // artificials by leaving their reduced costs at an unusable value).
    let mut obj2 = vec![BigRational::zero(); total + 1];
    for j in 0..n {
        let mut s = BigRational::zero();
        for (i, row) in t.iter().enumerate() {
            let cb = if basis[i] < n {
                c[basis[i]].clone()
            } else {
                BigRational::zero()
            };
            s += cb * &row[j];
        }
        obj2[j] = s - &c[j];
    }
    obj2[total] = t
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if basis[i] < n {
                c[basis[i]].clone() * &row[total]
            } else {
                BigRational::zero()
            }
        })
        .sum();

    if !run_simplex_phase2(&mut t, &mut obj2, &mut basis, n, total) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![BigRational::zero(); n];
    for (i, &bi) in basis.iter().enumerate() {
        if bi < n {
            x[bi] = t[i][total].clone();
        }
    }
    LpOutcome::Optimal(obj2[total].clone(), x)
}

/// Feasibility of {x ≥ 0 : Ax = b}.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational], n: usize) -> bool {
    let c = vec![BigRational::zero(); n];
    !matches!(maximize(a, b, &c), LpOutcome::Infeasible)
}

fn pivot(
    t: &mut [Vec<BigRational>],
    obj: &mut [BigRational],
    basis: &mut [usize],
    r: usize,
    col: usize,
    total: usize,
) {
    let piv = t[r][col].clone();
    for j in 0..=total {
        t[r][j] = &t[r][j] / &piv;
    }
    for i in 0..t.len() {
        if i == r || t[i][col].is_zero() {
            continue;
        }
        let f = t[i][col].clone();
        for j in 0..=total {
            let delta = &f * &t[r][j];
            t[i][j] = &t[i][j] - delta;
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for j in 0..=total {
            let delta = &f * &t[r][j];
            obj[j] = &obj[j] - delta;
        }
    }
    basis[r] = col;
}

/// Phase-1 loop: pivot while some reduced cost is positive (maximizing
/// the negated artificial sum). Bland's rule: smallest eligible column,
/// smallest ratio then smallest basis index for the row.
fn run_simplex(
    t: &mut Vec<Vec<BigRational>>,
    obj: &mut Vec<BigRational>,
    basis: &mut Vec<usize>,
    total: usize,
) {
    loop {
        let enter = (0..total).find(|&j| obj[j].is_positive());
        let enter = match enter {
            None => return,
            Some(j) => j,
        };
        let leave = ratio_test(t, enter, total, basis);
        match leave {
            None => return, // phase-1 objective is bounded; unreachable
            Some(r) => pivot(t, obj, basis, r, enter, total),
        }
    }
}

/// Phase-2 loop restricted to structural columns; false = unbounded.
fn run_simplex_phase2(
    t: &mut Vec<Vec<BigRational>>,
    obj: &mut Vec<BigRational>,
    basis: &mut Vec<usize>,
    n: usize,
    total: usize,
) -> bool {
    loop {
        let enter = (0..n).find(|&j| obj[j].is_negative());
        let enter = match enter {
            None => return true,
            Some(j) => j,
        };
        match ratio_test(t, enter, total, basis) {
            None => return false,
            Some(r) => pivot(t, obj, basis, r, enter, total),
        }
    }
}

fn ratio_test(
    t: &[Vec<BigRational>],
    col: usize,
    total: usize,
    basis: &[usize],
) -> Option<usize> {
    let mut best: Option<(BigRational, usize, usize)> = None; // (ratio, basis var, row)
    for (i, row) in t.iter().enumerate() {
        if !row[col].is_positive() {
            continue;
        }
        let ratio = &row[total] / &row[col];
        match &best {
            None => best = Some((ratio, basis[i], i)),
            Some((br, bv, _)) => {
                if ratio < *br || (ratio == *br && basis[i] < *bv) {
                    best = Some((ratio, basis[i], i));
                }
            }
        }
    }
    best.map(|(_, _, r)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn feasible_point_found() {
        // x + y = 3, x,y >= 0: feasible
        let a = vec![vec![r(1), r(1)]];
        let b = vec![r(3)];
        assert!(feasible(&a, &b, 2));
    }

    #[test]
    fn infeasible_detected() {
        // x + y = -1, x,y >= 0
        let a = vec![vec![r(1), r(1)]];
        let b = vec![r(-1)];
        assert!(!feasible(&a, &b, 2));
        // x = 1 and x = 2 simultaneously
        let a2 = vec![vec![r(1)], vec![r(1)]];
        let b2 = vec![r(1), r(2)];
        assert!(!feasible(&a2, &b2, 1));
    }

    #[test]
    fn maximize_coordinate() {
        // x + y = 3: max x = 3
        let a = vec![vec![r(1), r(1)]];
        let b = vec![r(3)];
        match maximize(&a, &b, &[r(1), r(0)]) {
            LpOutcome::Optimal(v, x) => {
                assert_eq!(v, r(3));
                assert_eq!(x[0], r(3));
            }
            other => panic!("unexpected outcome {:?}", other),
        }
    }

    #[test]
    fn unbounded_direction() {
        // x - y = 0: max x unbounded
        let a = vec![vec![r(1), r(-1)]];
        let b = vec![r(0)];
        assert_eq!(maximize(&a, &b, &[r(1), r(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        // duplicated constraint
        let a = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
        let b = vec![r(2), r(2)];
        assert!(feasible(&a, &b, 2));
    }

    #[test]
    fn fractional_optimum() {
        // 2x + 3y = 1: max x = 1/2
        let a = vec![vec![r(2), r(3)]];
        let b = vec![r(1)];
        match maximize(&a, &b, &[r(1), r(0)]) {
            LpOutcome::Optimal(v, _) => {
                assert_eq!(v, BigRational::new(BigInt::from(1), BigInt::from(2)));
            }
            other => panic!("unexpected outcome {:?}", other),
        }
    }
}
