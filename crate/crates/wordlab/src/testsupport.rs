//! Independent reference implementations used by the test suite.
//!
//! Nothing in this module is called from production code paths: these are
//! the oracles the tests compare against, kept deliberately naive.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::group::{AssocCheck, CayleyGroup, FiniteGroup};
use crate::signature::IntMatrix;

/// The symmetric group S3 as a Cayley table: the smallest non-nilpotent
/// group, used to exercise the brute-force paths and failure modes.
/// Elements: 0 = id, 1 = (12), 2 = (13), 3 = (23), 4 = (123), 5 = (132).
pub fn s3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [2, 1, 0],
        [0, 2, 1],
        [1, 2, 0],
        [2, 0, 1],
    ];
    let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] {
        // (a*b)(x) = a(b(x))
        [a[b[0]], a[b[1]], a[b[2]]]
    };
    let rows: Vec<Vec<u32>> = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let c = compose(a, b);
                    perms.iter().position(|p| *p == c).unwrap() as u32
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_cayley(CayleyGroup::from_table("s3", &rows, AssocCheck::Auto).unwrap())
}

/// Determinant by the Bareiss fraction-free algorithm.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.clone();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Plain Smith normal form diagonal (invariant factors, zeros last), using
/// independent row and column operations without witness tracking.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.clone();
    let mut t = 0;
    while t < rows.min(cols) {
        // Find a pivot of minimal magnitude.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = num_integer::Integer::div_floor(&a[i][t], &a[t][t]);
                    for j in t..cols {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = num_integer::Integer::div_floor(&a[t][j], &a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        // Enforce divisibility into the remaining block.
        let d = a[t][t].clone();
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &d).is_zero() {
                    for jj in t..cols {
                        let v = a[i][jj].clone();
                        a[t][jj] += v;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            if a[t][t].is_negative() {
                a[t][t] = -a[t][t].clone();
            }
            t += 1;
        }
    }
    (0..rows.min(cols)).map(|i| a[i][i].clone()).collect()
}

/// Exhaustively counts solutions of `sum_i a_i z_i = c` componentwise over
/// `Z_{m_1} x ... x Z_{m_t}`, for cross-checking the closed-form solver.
pub fn count_abelian_exhaustive(invariants: &[u64], a: &[i64], c: &[u64]) -> u64 {
    assert_eq!(invariants.len(), c.len());
    let k = a.len();
    let mut count = 0u64;
    // Odometer over Z_{m_1} x ... x Z_{m_t} per variable.
    let total: u64 = invariants.iter().product::<u64>().pow(k as u32);
    let radix: Vec<u64> = invariants.to_vec();
    let t = radix.len();
    let mut z = vec![0u64; k * t];
    for _ in 0..total {
        let ok = (0..t).all(|f| {
            let m = radix[f] as i128;
            let mut s = 0i128;
            for v in 0..k {
                s += a[v] as i128 * z[v * t + f] as i128;
            }
            s.rem_euclid(m) == c[f] as i128
        });
        if ok {
            count += 1;
        }
        // Increment odometer.
        for d in 0..k * t {
            let f = d % t;
            z[d] += 1;
            if z[d] < radix[f] {
                break;
            }
            z[d] = 0;
        }
    }
    count
}
