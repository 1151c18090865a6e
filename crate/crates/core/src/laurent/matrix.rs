use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// Dense square matrix of Laurent polynomials, row-major.
pub type PolyMatrix = Vec<Vec<LaurentPoly>>;

fn check_square(m: &PolyMatrix) -> Result<usize> {
    let n = m.len();
    let nv = m.first().and_then(|r| r.first()).map(|p| p.nvars());
    for row in m {
        if row.len() != n {
            return Err(Error::InvalidArgument("matrix is not square".into()));
        }
        for p in row {
            if Some(p.nvars()) != nv {
                return Err(Error::ArityMismatch(nv.unwrap_or(0), p.nvars()));
            }
        }
    }
    Ok(n)
}

/// Determinant. Small matrices use division-free expansion by minors,
/// larger ones fraction-free elimination.
pub fn determinant(m: &PolyMatrix, nvars: usize) -> Result<LaurentPoly> {
    let n = check_square(m)?;
    if n <= 10 {
        Ok(minor_expansion(m, nvars))
    } else {
        bareiss(m, nvars)
    }
}

/// Laplace expansion along rows, memoized over the set of used columns.
fn minor_expansion(m: &PolyMatrix, nvars: usize) -> LaurentPoly {
    let n = m.len();
    // minors[s]: determinant of rows n-|s|.. restricted to column set s
    let mut minors = vec![LaurentPoly::zero(nvars); 1 << n];
    minors[0] = LaurentPoly::one(nvars);
    for s in 1usize..(1 << n) {
        let row = n - s.count_ones() as usize;
        let mut acc = LaurentPoly::zero(nvars);
        let mut before = 0;
        for j in 0..n {
            if s & (1 << j) == 0 {
                continue;
            }
            let rest = &minors[s & !(1 << j)];
            if !m[row][j].is_zero() && !rest.is_zero() {
                let t = &m[row][j] * rest;
                acc = if before % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            before += 1;
        }
        minors[s] = acc;
    }
    minors[(1 << n) - 1].clone()
}

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Each row is first stripped of its monomial content so elimination runs on
/// ordinary polynomials of the smallest degree. Pivots are the first nonzero
/// entry down the current column; each row swap flips the sign.
pub(crate) fn bareiss(m: &PolyMatrix, nvars: usize) -> Result<LaurentPoly> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(LaurentPoly::one(nvars));
    }
    let mut a = m.clone();
    let mut factor = vec![0i32; nvars];
    for row in a.iter_mut() {
        let nonzero: Vec<&LaurentPoly> = row.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(LaurentPoly::zero(nvars));
        }
        let mut mins = nonzero[0].min_exponents();
        for p in &nonzero[1..] {
            for (m, x) in mins.iter_mut().zip(p.min_exponents()) {
                *m = (*m).min(x);
            }
        }
        if mins.iter().any(|&x| x != 0) {
            let neg: Vec<i32> = mins.iter().map(|x| -x).collect();
            for p in row.iter_mut() {
                *p = p.shift(&neg);
            }
            for (f, x) in factor.iter_mut().zip(&mins) {
                *f += x;
            }
        }
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_divide(&prev)?;
            }
            a[i][k] = LaurentPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].shift(&factor);
    Ok(if negate { -det } else { det })
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, nvars: usize) -> PolyMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    b.iter()
                        .enumerate()
                        .fold(LaurentPoly::zero(nvars), |acc, (k, row)| &acc + &(&a[i][k] * &row[j]))
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize, nvars: usize) -> PolyMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one(nvars) } else { LaurentPoly::zero(nvars) }).collect())
        .collect()
}
