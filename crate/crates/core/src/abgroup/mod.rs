//! Integer linear algebra and finitely generated abelian groups.
//!
//! The K-theory sequences computed elsewhere in the crate reduce to kernels
//! and cokernels of integer matrices acting coordinatewise on a coefficient
//! group; everything here is exact.

mod matrix;
mod smith;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};

/// `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `d₁ | d₂ | …` and every `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `ℤ/m`; `m = 0` gives `ℤ`, `m = ±1` the trivial group.
    pub fn cyclic(m: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(&[m.into()])
    }

    /// Normalizes a direct sum of cyclic groups `ℤ/mᵢ` (`mᵢ = 0` meaning `ℤ`).
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let free_rank = orders.iter().filter(|m| m.is_zero()).count();
        let finite: Vec<BigInt> = orders
            .iter()
            .filter(|m| !m.is_zero())
            .map(|m| m.abs())
            .filter(|m| !m.is_one())
            .collect();
        let mut diag = IntMatrix::zeros(finite.len(), finite.len());
        for (i, m) in finite.iter().enumerate() {
            diag.set(i, i, m.clone());
        }
        let torsion = smith_normal_form(&diag)
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        FgAbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order if finite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |a, d| a * d))
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut orders = self.cyclic_orders();
        orders.extend(other.cyclic_orders());
        Self::from_cyclic_orders(&orders)
    }

    /// `self ⊕ … ⊕ self` (`n` copies).
    pub fn power(&self, n: usize) -> FgAbelianGroup {
        let orders: Vec<BigInt> = (0..n).flat_map(|_| self.cyclic_orders()).collect();
        Self::from_cyclic_orders(&orders)
    }

    /// Orders of a cyclic decomposition, `0` for each free summand.
    pub fn cyclic_orders(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.free_rank];
        v.extend(self.torsion.iter().cloned());
        v
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free_rank": self.free_rank,
            "torsion": self.torsion.iter().map(big_to_json).collect::<Vec<_>>(),
            "display": self.to_string(),
        })
    }
}

pub(crate) fn big_to_json(b: &BigInt) -> Value {
    match i64::try_from(b) {
        Ok(v) => json!(v),
        Err(_) => json!(b.to_string()),
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{}", r)),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{}", d)));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Columns form a ℤ-basis of `{ v : A·v = 0 }`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let f = smith_normal_form(a);
    let r = f.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    f.v.select_columns(&cols)
}

/// `ℤ^rows / colspan(A)`.
pub fn cokernel(a: &IntMatrix) -> FgAbelianGroup {
    let f = smith_normal_form(a);
    let mut orders = f.invariant_factors();
    orders.extend((orders.len()..a.rows()).map(|_| BigInt::zero()));
    FgAbelianGroup::from_cyclic_orders(&orders)
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Kernel and cokernel of `A ⊗ id_G : G^cols → G^rows`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesSegment {
    pub kernel: FgAbelianGroup,
    pub cokernel: FgAbelianGroup,
    pub map_matrix: IntMatrix,
    pub coefficients: FgAbelianGroup,
}

impl LesSegment {
    pub fn to_json(&self) -> Value {
        json!({
            "kernel": self.kernel.to_json(),
            "cokernel": self.cokernel.to_json(),
            "coefficients": self.coefficients.to_json(),
        })
    }
}

/// Kernel/cokernel of the map induced by `map` on copies of `coeff`.
///
/// `coeff` must be free or finite; a group with both parts has to be split by
/// the caller (see [`segment_on`] for the combined computation).
pub fn les_segment(map: &IntMatrix, coeff: &FgAbelianGroup) -> Result<LesSegment> {
    if coeff.free_rank() > 0 && !coeff.is_free() {
        return Err(Error::MixedCoefficients(coeff.to_string()));
    }
    let (kernel, cokernel) = if coeff.is_free() {
        free_segment(map, coeff.free_rank())
    } else {
        let mut k = FgAbelianGroup::trivial();
        let mut c = FgAbelianGroup::trivial();
        for m in coeff.torsion() {
            let (km, cm) = cyclic_segment(map, m);
            k = k.direct_sum(&km);
            c = c.direct_sum(&cm);
        }
        (k, c)
    };
    Ok(LesSegment {
        kernel,
        cokernel,
        map_matrix: map.clone(),
        coefficients: coeff.clone(),
    })
}

/// Same as [`les_segment`] but splits `coeff` into its free and torsion parts.
pub fn segment_on(map: &IntMatrix, coeff: &FgAbelianGroup) -> LesSegment {
    let free = les_segment(map, &FgAbelianGroup::free(coeff.free_rank()))
        .expect("free coefficients");
    let tors = les_segment(
        map,
        &FgAbelianGroup::from_cyclic_orders(coeff.torsion()),
    )
    .expect("finite coefficients");
    LesSegment {
        kernel: free.kernel.direct_sum(&tors.kernel),
        cokernel: free.cokernel.direct_sum(&tors.cokernel),
        map_matrix: map.clone(),
        coefficients: coeff.clone(),
    }
}

fn free_segment(map: &IntMatrix, r: usize) -> (FgAbelianGroup, FgAbelianGroup) {
    if r == 0 {
        return (FgAbelianGroup::trivial(), FgAbelianGroup::trivial());
    }
    let nullity = map.cols() - rank(map);
    (
        FgAbelianGroup::free(nullity * r),
        cokernel(map).power(r),
    )
}

/// Induced map on `(ℤ/m)^cols → (ℤ/m)^rows`.
fn cyclic_segment(map: &IntMatrix, m: &BigInt) -> (FgAbelianGroup, FgAbelianGroup) {
    let f = smith_normal_form(map);
    let diag = f.diagonal();
    // ker(S mod m) is ⊕ ℤ/gcd(dᵢ, m), with dᵢ = 0 past the diagonal.
    let kernel_orders: Vec<BigInt> = (0..map.cols())
        .map(|i| diag.get(i).cloned().unwrap_or_default().gcd(m))
        .collect();
    let augmented = map
        .hconcat(&IntMatrix::identity(map.rows()).scaled(m))
        .expect("same row count");
    (
        FgAbelianGroup::from_cyclic_orders(&kernel_orders),
        cokernel(&augmented),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn group_normal_form() {
        let g = FgAbelianGroup::from_cyclic_orders(&[2.into(), 3.into(), 0.into(), 1.into()]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion(), &[BigInt::from(6)]);
        assert_eq!(g.to_string(), "Z + Z/6");
        assert_eq!(FgAbelianGroup::cyclic(1).to_string(), "0");
        assert_eq!(
            FgAbelianGroup::from_cyclic_orders(&[2.into(), 4.into()]).to_string(),
            "Z/2 + Z/4"
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        assert_eq!(kernel_basis(&m(&[&[1], &[-1]])).cols(), 0);
        let k = kernel_basis(&m(&[&[0]]));
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0).abs(), BigInt::one());
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&m(&[&[1 - 3]])), FgAbelianGroup::cyclic(2));
        assert_eq!(cokernel(&m(&[&[1], &[-1]])), FgAbelianGroup::free(1));
        assert_eq!(cokernel(&m(&[&[0]])), FgAbelianGroup::free(1));
        // empty-column map: the whole target
        assert_eq!(cokernel(&IntMatrix::zeros(3, 0)), FgAbelianGroup::free(3));
    }

    #[test]
    fn segment_examples() {
        let z = FgAbelianGroup::free(1);
        let s = les_segment(&m(&[&[0]]), &z).unwrap();
        assert_eq!((s.kernel, s.cokernel), (z.clone(), z.clone()));

        let s = les_segment(&m(&[&[-1]]), &z).unwrap();
        assert!(s.kernel.is_trivial() && s.cokernel.is_trivial());

        let s = les_segment(&m(&[&[2]]), &FgAbelianGroup::cyclic(4)).unwrap();
        assert_eq!(s.kernel, FgAbelianGroup::cyclic(2));
        assert_eq!(s.cokernel, FgAbelianGroup::cyclic(2));
    }

    #[test]
    fn mixed_coefficients_rejected() {
        let mixed = FgAbelianGroup::from_cyclic_orders(&[0.into(), 2.into()]);
        assert!(matches!(
            les_segment(&m(&[&[1]]), &mixed),
            Err(Error::MixedCoefficients(_))
        ));
        let s = segment_on(&m(&[&[2]]), &mixed);
        assert_eq!(s.kernel, FgAbelianGroup::cyclic(2));
        assert_eq!(
            s.cokernel,
            FgAbelianGroup::from_cyclic_orders(&[2.into(), 2.into()])
        );
    }

    /// Enumerates (ℤ/m)^cols and (ℤ/m)^rows directly.
    fn brute_force(map: &IntMatrix, m: i64) -> (usize, usize) {
        let (r, c) = (map.rows(), map.cols());
        let domain = (m as usize).pow(c as u32);
        let mut kernel = 0;
        let mut image = std::collections::BTreeSet::new();
        for idx in 0..domain {
            let mut v = Vec::with_capacity(c);
            let mut t = idx;
            for _ in 0..c {
                v.push(BigInt::from((t % m as usize) as i64));
                t /= m as usize;
            }
            let w: Vec<i64> = map
                .mul_vec(&v)
                .iter()
                .map(|x| i64::try_from(x.mod_floor(&BigInt::from(m))).unwrap())
                .collect();
            if w.iter().all(|&x| x == 0) {
                kernel += 1;
            }
            image.insert(w);
        }
        let codomain = (m as usize).pow(r as u32);
        (kernel, codomain / image.len())
    }

    #[test]
    fn cyclic_coefficients_match_enumeration() {
        let cases: Vec<(IntMatrix, i64)> = vec![
            (m(&[&[2]]), 4),
            (m(&[&[2, 4], [6, 8].as_slice()]), 6),
            (m(&[&[3, 0, 1], &[0, 0, 2]]), 4),
            (m(&[&[1], &[-1]]), 3),
            (IntMatrix::zeros(2, 1), 5),
        ];
        for (map, modulus) in cases {
            let (k, c) = brute_force(&map, modulus);
            let s = les_segment(&map, &FgAbelianGroup::cyclic(modulus)).unwrap();
            assert_eq!(
                s.kernel.order().unwrap(),
                BigInt::from(k),
                "kernel of {} mod {}",
                map,
                modulus
            );
            assert_eq!(s.cokernel.order().unwrap(), BigInt::from(c));
        }
    }
}
