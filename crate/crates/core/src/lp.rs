//! Exact linear feasibility over the rationals.
//!
//! Only the two primitives the rest of the crate needs: a feasible point of
//! `{x : A x = b, x >= 0}` (phase I of the simplex method, Bland's rule, so
//! it terminates) and the full vertex list of that polyhedron by basis
//! enumeration.

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::{Error, Rational, Result};

/// A point of `{x : A x = b, x >= 0}`, or `None` if the set is empty.
///
/// Every row of `a` must have the same length.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.len(), b.len(), "row count of A and b differ");
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let rhs = n + m;

    // row i: [A_i | e_i | b_i], sign-flipped so that b_i >= 0
    let mut t: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            assert_eq!(row.len(), n, "ragged constraint matrix");
            let flip = bi.is_negative();
            let mut r: Vec<Rational> = row
                .iter()
                .map(|v| if flip { -v } else { v.clone() })
                .collect();
            r.extend((0..m).map(|k| {
                if k == i {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            r.push(bi.abs());
            r
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs of `min sum of artificials`; last entry is -objective
    let mut cost = vec![Rational::zero(); rhs + 1];
    for row in &t {
        for j in (0..n).chain(std::iter::once(rhs)) {
            cost[j] -= &row[j];
        }
    }

    while let Some(enter) = (0..rhs).find(|&j| cost[j].is_negative()) {
        let leave = (0..m)
            .filter(|&i| t[i][enter].is_positive())
            .min_by(|&i, &k| {
                let ri = &t[i][rhs] / &t[i][enter];
                let rk = &t[k][rhs] / &t[k][enter];
                ri.cmp(&rk).then(basis[i].cmp(&basis[k]))
            })
            .expect("phase I objective is bounded below");
        pivot(&mut t, &mut cost, leave, enter);
        basis[leave] = enter;
    }

    if !cost[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in t.iter().zip(&basis) {
        if bv < n {
            x[bv] = row[rhs].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let p = t[r][c].clone();
    for v in t[r].iter_mut() {
        *v /= &p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            *v -= &f * pv;
        }
    }
}

/// Reduced row echelon form of `[A | b]` with zero rows dropped.
///
/// Returns `None` when the system is inconsistent.
fn reduce(a: &[Vec<Rational>], b: &[Rational]) -> Option<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pv = rows[rank][col].clone();
        for v in rows[rank].iter_mut() {
            *v /= &pv;
        }
        let prow = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    rows.truncate(rank);
    let rhs = rows
        .iter_mut()
        .map(|r| r.pop().expect("augmented"))
        .collect();
    Some((rows, rhs))
}

/// Solves the square system `m x = r`; `None` if singular.
fn solve_square(mut m: Vec<Vec<Rational>>, mut r: Vec<Rational>) -> Option<Vec<Rational>> {
    let k = m.len();
    for col in 0..k {
        let p = (col..k).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        r.swap(col, p);
        let pv = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &pv;
        }
        r[col] /= &pv;
        let prow = m[col].clone();
        let pr = r[col].clone();
        for (i, (row, ri)) in m.iter_mut().zip(r.iter_mut()).enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
                *ri -= &f * &pr;
            }
        }
    }
    Some(r)
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All vertices of `{x : A x = b, x >= 0}`, sorted and deduplicated.
///
/// Enumerates every choice of `rank(A)` columns; `budget` caps that count.
pub fn vertices(a: &[Vec<Rational>], b: &[Rational], budget: u64) -> Result<Vec<Vec<Rational>>> {
    assert_eq!(a.len(), b.len(), "row count of A and b differ");
    let n = a.first().map_or(0, Vec::len);
    let Some((rows, rhs)) = reduce(a, b) else {
        return Ok(Vec::new());
    };
    let r = rows.len();
    let needed = binomial(n, r);
    if needed > budget {
        return Err(Error::TooLarge { needed, budget });
    }
    let mut out = Vec::new();
    for cols in (0..n).combinations(r) {
        let m = rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let Some(xb) = solve_square(m, rhs.clone()) else {
            continue;
        };
        if xb.iter().any(Signed::is_negative) {
            continue;
        }
        let mut x = vec![Rational::zero(); n];
        for (&c, v) in cols.iter().zip(xb) {
            x[c] = v;
        }
        out.push(x);
    }
    out.sort();
    out.dedup();
    Ok(out)
}
