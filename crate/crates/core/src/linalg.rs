//! Exact linear algebra over ℚ and ℤ for the small systems that appear in
//! homology computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::laurent::Q;

pub type IntMatrix = Vec<Vec<i64>>;
pub type QMatrix = Vec<Vec<Q>>;

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..m).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

pub fn int_apply(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn int_transpose(a: &IntMatrix) -> IntMatrix {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn int_sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn to_q(a: &IntMatrix) -> QMatrix {
    a.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect()
}

/// Inverse of an integer matrix, if it is unimodular.
pub fn int_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    let inv = q_inverse(&to_q(a))?;
    inv.iter()
        .map(|r| r.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn q_rank(m: &QMatrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

pub fn q_inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant over ℚ by Gaussian elimination.
pub fn q_determinant(m: &QMatrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            let pivot_row = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Some solution of `m x = b`, or `None` if the system is inconsistent.
pub fn q_solve(m: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut aug: QMatrix = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of the right kernel of `m`.
pub fn q_kernel(m: &QMatrix, cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    (0..cols)
        .filter(|c| !piv.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (i, &c) in piv.iter().enumerate() {
                v[c] = -a[i][free].clone();
            }
            v
        })
        .collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Q]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Integer solution of `m x = b`, by column-style Hermite reduction.
///
/// Returns one solution together with a lattice basis of the integer kernel.
pub fn int_solve(m: &IntMatrix, b: &[i64], cols: usize) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
    let rows = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    // u tracks the column operations: a_current = a_original · u
    let mut u: Vec<Vec<BigInt>> =
        (0..cols).map(|i| (0..cols).map(|j| BigInt::from(i64::from(i == j))).collect()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut col = 0;
    for r in 0..rows {
        if col == cols {
            break;
        }
        // gcd-reduce row r over columns col.. into column col
        loop {
            let nz: Vec<usize> = (col..cols).filter(|&j| !a[r][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| a[r][j].abs()).unwrap();
            swap_cols(&mut a, &mut u, col, p);
            let mut done = true;
            for j in col + 1..cols {
                if a[r][j].is_zero() {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][col]);
                add_col(&mut a, &mut u, j, col, &-q);
                if !a[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !a[r][col].is_zero() {
            pivots.push((r, col));
            col += 1;
        }
    }
    // forward substitution in the echelon columns
    let mut y = vec![BigInt::zero(); cols];
    let mut residual: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
    for &(r, c) in &pivots {
        let (q, rem) = residual[r].div_rem(&a[r][c]);
        if !rem.is_zero() {
            return None;
        }
        y[c] = q.clone();
        for i in 0..rows {
            let t = &a[i][c] * &q;
            residual[i] -= t;
        }
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x: Vec<i64> = (0..cols)
        .map(|i| (0..cols).map(|j| &u[i][j] * &y[j]).sum::<BigInt>().to_i64().expect("solution fits in i64"))
        .collect();
    let kernel = (col..cols)
        .map(|j| (0..cols).map(|i| u[i][j].to_i64().expect("kernel fits in i64")).collect())
        .collect();
    Some((x, kernel))
}

fn swap_cols(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize) {
    for r in a.iter_mut() {
        r.swap(i, j);
    }
    for r in u.iter_mut() {
        r.swap(i, j);
    }
}

/// column `dst` += k · column `src`
fn add_col(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], dst: usize, src: usize, k: &BigInt) {
    for r in a.iter_mut().chain(u.iter_mut()) {
        let t = &r[src] * k;
        r[dst] += t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::q;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn inverse_roundtrip() {
        let a = vec![vec![2, 1], vec![1, 1]];
        let inv = int_inverse(&a).unwrap();
        assert_eq!(int_mul(&a, &inv), int_identity(2));
        assert!(int_inverse(&vec![vec![2, 0], vec![0, 1]]).is_none());
    }

    #[test]
    fn solve_and_kernel() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let x = q_solve(&m, &[q(1), q(2)]).unwrap();
        assert_eq!(&x[0] + &(q(2) * &x[1]) + q(3) * &x[2], q(1));
        assert!(q_solve(&m, &[q(1), q(3)]).is_none());
        assert_eq!(q_kernel(&m, 3).len(), 2);
        assert_eq!(q_rank(&m), 1);
        assert_eq!(q_determinant(&qm(&[&[0, 2], &[3, 1]])), q(-6));
        assert_eq!(q_determinant(&m[..1].iter().map(|r| r[..1].to_vec()).collect()), q(1));
    }

    #[test]
    fn integer_solve() {
        let m = vec![vec![2, 4], vec![0, 3]];
        let (x, k) = int_solve(&m, &[2, 3], 2).unwrap();
        assert_eq!(int_apply(&m, &x), vec![2, 3]);
        assert!(k.is_empty());
        assert!(int_solve(&m, &[1, 0], 2).is_none());
        let m = vec![vec![2, 2]];
        let (x, k) = int_solve(&m, &[4], 2).unwrap();
        assert_eq!(int_apply(&m, &x), vec![4]);
        assert_eq!(k.len(), 1);
        assert_eq!(int_apply(&m, &k[0]), vec![0]);
        // rational solution exists, integer one does not
        assert!(int_solve(&vec![vec![2, 4]], &[1], 2).is_none());
    }

    #[test]
    fn integer_solve_random_against_construction() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(1..5);
            let m: IntMatrix = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let x0: Vec<i64> = (0..cols).map(|_| rng.gen_range(-3..=3)).collect();
            let b = int_apply(&m, &x0);
            let (x, kernel) = int_solve(&m, &b, cols).expect("constructed system is solvable");
            assert_eq!(int_apply(&m, &x), b);
            for k in kernel {
                assert!(int_apply(&m, &k).iter().all(|&v| v == 0));
            }
        }
    }
}
