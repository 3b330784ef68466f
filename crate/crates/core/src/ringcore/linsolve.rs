//! Solving `A·x = b` over the coefficient rings.
//!
//! `ℤ` and `ℤ/m` go through the Smith form; `ℚ` through Gaussian elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abgroup::{smith_normal_form, IntMatrix};

use super::{CoeffRing, Coefficient};

/// A solution of `a·x = b` (`a` given by rows), or `None`.
pub fn solve(k: &CoeffRing, a: &[Vec<Coefficient>], b: &[Coefficient]) -> Option<Vec<Coefficient>> {
    let cols = a.first().map_or(0, |r| r.len());
    match k {
        CoeffRing::Rationals => solve_rational(a, b, cols),
        CoeffRing::Integers => solve_integral(a, b, cols, None).map(|x| {
            x.into_iter().map(Coefficient::Int).collect()
        }),
        CoeffRing::Modular(m) => solve_integral(a, b, cols, Some(m)).map(|x| {
            x.into_iter().map(|v| k.from_int(v)).collect()
        }),
    }
}

/// `v·a = 0 ⇒ v = 0` over `k`, i.e. the rows of `a` are independent.
/// Over `ℤ` this is the rational rank test.
pub fn rows_independent(k: &CoeffRing, a: &[Vec<Coefficient>]) -> bool {
    let rows = a.len();
    if rows == 0 {
        return true;
    }
    let cols = a[0].len();
    match k {
        CoeffRing::Integers | CoeffRing::Rationals => rational_rank(a, cols) == rows,
        CoeffRing::Modular(m) => {
            let f = smith_normal_form(&lift(a, cols));
            let d = f.diagonal();
            rows <= cols && (0..rows).all(|i| d[i].gcd(m).is_one())
        }
    }
}

fn lift(a: &[Vec<Coefficient>], cols: usize) -> IntMatrix {
    let data = a
        .iter()
        .flat_map(|r| {
            r.iter()
                .map(|c| c.to_integer().expect("integral coefficient"))
                .collect::<Vec<_>>()
        })
        .collect();
    IntMatrix::from_big_rows(a.len(), cols, data).expect("rectangular system")
}

fn solve_integral(
    a: &[Vec<Coefficient>],
    b: &[Coefficient],
    cols: usize,
    modulus: Option<&BigInt>,
) -> Option<Vec<BigInt>> {
    let rows = a.len();
    if rows == 0 {
        return Some(vec![BigInt::zero(); cols]);
    }
    let f = smith_normal_form(&lift(a, cols));
    let rhs: Vec<BigInt> = b.iter().map(|c| c.to_integer().expect("integral")).collect();
    let c = f.u.mul_vec(&rhs);
    let d = f.diagonal();
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let di = d.get(i).cloned().unwrap_or_else(BigInt::zero);
        match modulus {
            None => {
                if di.is_zero() {
                    if !c[i].is_zero() {
                        return None;
                    }
                } else {
                    let (q, r) = c[i].div_rem(&di);
                    if !r.is_zero() {
                        return None;
                    }
                    y[i] = q;
                }
            }
            Some(m) => {
                let g = di.gcd(m);
                if !c[i].mod_floor(&g).is_zero() {
                    return None;
                }
                if di.is_zero() {
                    continue;
                }
                let mg = m / &g;
                let dg = (&di / &g).mod_floor(&mg);
                let cg = (&c[i] / &g).mod_floor(&mg);
                let inv = dg.extended_gcd(&mg).x.mod_floor(&mg);
                y[i] = (cg * inv).mod_floor(&mg);
            }
        }
    }
    Some(f.v.mul_vec(&y))
}

fn solve_rational(a: &[Vec<Coefficient>], b: &[Coefficient], cols: usize) -> Option<Vec<Coefficient>> {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row: Vec<BigRational> = r.iter().map(|c| c.to_rational()).collect();
            row.push(bi.to_rational());
            row
        })
        .collect();
    let pivots = eliminate(&mut m, cols);
    // inconsistent row: zero left side, nonzero right side
    for row in m.iter().skip(pivots.len()) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][cols].clone();
    }
    Some(x.into_iter().map(Coefficient::Rat).collect())
}

fn rational_rank(a: &[Vec<Coefficient>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|c| c.to_rational()).collect())
        .collect();
    eliminate(&mut m, cols).len()
}

/// Reduced row echelon form on the first `cols` columns; returns pivot columns.
fn eliminate(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..m[i].len() {
                    let t = &m[r][j] * &f;
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
