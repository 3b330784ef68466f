//! Smith normal form over the integers with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U·A·V = S` with `U`, `V` unimodular and `S` diagonal, `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// The full diagonal of `S` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Nonzero invariant factors, including units.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = s.get(t, t).clone();
            for i in t + 1..m {
                let q = s.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    s.add_row_multiple(i, t, &f);
                    u.add_row_multiple(i, t, &f);
                }
            }
            for j in t + 1..n {
                let q = s.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    let f = -q;
                    s.add_col_multiple(j, t, &f);
                    v.add_col_multiple(j, t, &f);
                }
            }

            // A nonzero remainder is smaller than the pivot: move it in and repeat.
            let col_rem = (t + 1..m).find(|&i| !s.get(i, t).is_zero());
            let row_rem = (t + 1..n).find(|&j| !s.get(t, j).is_zero());
            if let Some(i) = col_rem {
                let best = (t + 1..m)
                    .filter(|&r| !s.get(r, t).is_zero())
                    .min_by_key(|&r| s.get(r, t).abs())
                    .unwrap_or(i);
                s.swap_rows(t, best);
                u.swap_rows(t, best);
                continue;
            }
            if let Some(j) = row_rem {
                let best = (t + 1..n)
                    .filter(|&c| !s.get(t, c).is_zero())
                    .min_by_key(|&c| s.get(t, c).abs())
                    .unwrap_or(j);
                s.swap_cols(t, best);
                v.swap_cols(t, best);
                continue;
            }

            // Row and column are clear; enforce divisibility of the trailing block.
            let pivot = s.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot))
            });
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithForm { s, u, v }
}

fn min_abs_entry(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(a);
        assert_eq!(&(&f.u * a) * &f.v, f.s);
        assert!(f.u.is_unimodular());
        assert!(f.v.is_unimodular());
        f
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntMatrix::identity(3);
        let f = check(&id);
        assert_eq!(f.s, id);
        assert_eq!(f.u, id);
        assert_eq!(f.v, id);
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]).unwrap();
        let f = check(&a);
        assert_eq!(f.s, IntMatrix::from_rows(&[[2, 0], [0, 4]]).unwrap());
    }

    #[test]
    fn zero_and_empty() {
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(check(&z).s, z);
        let e = IntMatrix::zeros(0, 3);
        assert_eq!(check(&e).rank(), 0);
        let e = IntMatrix::zeros(3, 0);
        assert_eq!(check(&e).rank(), 0);
    }

    #[test]
    fn divisibility_needs_row_mixing() {
        // diag(2, 3) is already diagonal but 2 does not divide 3
        let a = IntMatrix::from_rows(&[[2, 0], [0, 3]]).unwrap();
        let f = check(&a);
        assert_eq!(f.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
