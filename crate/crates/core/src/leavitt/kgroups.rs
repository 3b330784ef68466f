use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::abgroup::{big_to_json, segment_on, FgAbelianGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::ringcore::{is_prime, CoeffRing};

use super::Quiver;

/// `finite ⊕ countable^{(ℕ)}`; the second summand is carried symbolically.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KGroup {
    pub finite: FgAbelianGroup,
    pub countable: FgAbelianGroup,
}

impl KGroup {
    pub fn fg(g: FgAbelianGroup) -> Self {
        KGroup {
            finite: g,
            countable: FgAbelianGroup::trivial(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.finite.is_trivial() && self.countable.is_trivial()
    }

    pub fn is_free(&self) -> bool {
        self.finite.is_free() && self.countable.is_free()
    }

    pub fn direct_sum(&self, other: &KGroup) -> KGroup {
        KGroup {
            finite: self.finite.direct_sum(&other.finite),
            countable: self.countable.direct_sum(&other.countable),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.finite.to_json();
        if !self.countable.is_trivial() {
            v["countable_summand"] = self.countable.to_json();
        }
        v["display"] = json!(self.to_string());
        v
    }
}

impl fmt::Display for KGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.finite.is_trivial(), self.countable.is_trivial()) {
            (_, true) => write!(f, "{}", self.finite),
            (true, false) => write!(f, "({})^(inf)", self.countable),
            (false, false) => write!(f, "{} + ({})^(inf)", self.finite, self.countable),
        }
    }
}

/// Coefficient groups `E_n(k)` indexed by degree; missing degrees are unknown
/// except negative ones, which are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPresets {
    pub label: String,
    pub groups: BTreeMap<i64, KGroup>,
}

impl KPresets {
    pub fn new(label: impl Into<String>, groups: BTreeMap<i64, KGroup>) -> Self {
        KPresets {
            label: label.into(),
            groups,
        }
    }

    /// `K₀` and `K₁` of `ℤ`, `ℚ` and `F_p`.
    pub fn for_coeff(k: &CoeffRing) -> Result<Self> {
        let mut groups = BTreeMap::new();
        groups.insert(0, KGroup::fg(FgAbelianGroup::free(1)));
        let e1 = match k {
            CoeffRing::Integers => KGroup::fg(FgAbelianGroup::cyclic(2)),
            CoeffRing::Rationals => KGroup {
                finite: FgAbelianGroup::cyclic(2),
                countable: FgAbelianGroup::free(1),
            },
            CoeffRing::Modular(m) => {
                if !is_prime(m) {
                    return Err(Error::Unsupported(format!(
                        "unit group presets need a field; {} is not prime",
                        m
                    )));
                }
                KGroup::fg(FgAbelianGroup::cyclic(m - BigInt::one()))
            }
        };
        groups.insert(1, e1);
        Ok(KPresets::new(k.to_string(), groups))
    }

    pub fn get(&self, n: i64) -> Option<KGroup> {
        if n < 0 {
            return Some(KGroup::default());
        }
        self.groups.get(&n).cloned()
    }
}

/// `N′_Q`, the reduced `N_Q` and the map `M = E_n(i) − N_Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyData {
    /// `N′[x][y]` = number of arrows `x → y`.
    pub full: IntMatrix,
    /// `N[y][v] = N′[v][y]` for `v ∈ ρ(Q)`, rows `Q⁰`.
    pub reduced: IntMatrix,
    /// `M[y][v] = δ_{y,v} − N′[v][y]`, rows `Q⁰`, columns `ρ(Q)`.
    pub map: IntMatrix,
    pub regular: Vec<usize>,
}

pub fn adjacency(q: &Quiver) -> AdjacencyData {
    let n = q.vertex_count();
    let mut full = IntMatrix::zeros(n, n);
    for e in q.edges() {
        let v = full.get(e.source, e.range) + 1;
        full.set(e.source, e.range, v);
    }
    let regular = q.regular_vertices();
    let mut reduced = IntMatrix::zeros(n, regular.len());
    let mut map = IntMatrix::zeros(n, regular.len());
    for (j, &v) in regular.iter().enumerate() {
        for y in 0..n {
            let c = full.get(v, y).clone();
            let d = if y == v { BigInt::one() } else { BigInt::default() };
            map.set(y, j, d - &c);
            reduced.set(y, j, c);
        }
    }
    AdjacencyData {
        full,
        reduced,
        map,
        regular,
    }
}

/// One degree of the sequence `E_n(k)^{cols} → E_n(k)^{rows} → E_n(O) → E_{n−1}(k)^{cols}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: i64,
    /// Cokernel of the map on `E_n`.
    pub cokernel: KGroup,
    /// Kernel of the map on `E_{n−1}`.
    pub kernel: KGroup,
    /// `cokernel ⊕ kernel` when the kernel is free.
    pub assembled: Option<KGroup>,
}

impl DegreeReport {
    pub fn split_status(&self) -> &'static str {
        if self.assembled.is_some() {
            "split-assembled"
        } else {
            "unassembled"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "kernel": self.kernel.to_json(),
            "cokernel": self.cokernel.to_json(),
            "assembled_group": self.assembled.as_ref().map(KGroup::to_json),
            "split_status": self.split_status(),
        })
    }
}

/// Kernels and cokernels of an integer map on preset coefficient groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub map: IntMatrix,
    pub coefficients: String,
    pub degrees: Vec<DegreeReport>,
}

impl SequenceReport {
    pub fn degree(&self, n: i64) -> Option<&DegreeReport> {
        self.degrees.iter().find(|d| d.degree == n)
    }

    /// Assembled group in degree `n`, if known and split.
    pub fn group(&self, n: i64) -> Option<&KGroup> {
        self.degree(n).and_then(|d| d.assembled.as_ref())
    }

    pub fn matrix_json(&self) -> Value {
        json!({
            "row_labels": self.row_labels,
            "col_labels": self.col_labels,
            "rows": self.map.to_rows().iter()
                .map(|r| r.iter().map(big_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "coefficients": self.coefficients,
            "matrix_M": self.matrix_json(),
            "degrees": self.degrees.iter().map(DegreeReport::to_json).collect::<Vec<_>>(),
        })
    }
}

fn on_group(map: &IntMatrix, g: &KGroup) -> (KGroup, KGroup) {
    let a = segment_on(map, &g.finite);
    let b = segment_on(map, &g.countable);
    (
        KGroup {
            finite: a.kernel,
            countable: b.kernel,
        },
        KGroup {
            finite: a.cokernel,
            countable: b.cokernel,
        },
    )
}

/// Evaluates every degree `n` for which `E_n` and `E_{n−1}` are both preset.
pub fn sequence_report(
    map: &IntMatrix,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    presets: &KPresets,
) -> SequenceReport {
    let mut degrees = Vec::new();
    for (&n, g) in &presets.groups {
        let Some(prev) = presets.get(n - 1) else {
            continue;
        };
        let (_, cokernel) = on_group(map, g);
        let (kernel, _) = on_group(map, &prev);
        let assembled = kernel.is_free().then(|| cokernel.direct_sum(&kernel));
        degrees.push(DegreeReport {
            degree: n,
            cokernel,
            kernel,
            assembled,
        });
    }
    SequenceReport {
        row_labels,
        col_labels,
        map: map.clone(),
        coefficients: presets.label.clone(),
        degrees,
    }
}

/// K-groups of a Leavitt path algebra from the map `1_v ↦ 1_v − Σ_{s(e)=v} 1_{r(e)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverKReport {
    pub quiver: Quiver,
    pub adjacency: AdjacencyData,
    pub sequence: SequenceReport,
}

impl QuiverKReport {
    pub fn to_json(&self) -> Value {
        let q = &self.quiver;
        json!({
            "quiver": {
                "vertices": q.vertices(),
                "edges": q.edges().iter().map(|e| json!({
                    "name": e.name,
                    "source": q.vertices()[e.source],
                    "range": q.vertices()[e.range],
                })).collect::<Vec<_>>(),
            },
            "regular_vertices": self.adjacency.regular.iter()
                .map(|&v| q.vertices()[v].clone()).collect::<Vec<_>>(),
            "coefficients": self.sequence.coefficients,
            "matrix_M": self.sequence.matrix_json(),
            "degrees": self.sequence.degrees.iter().map(DegreeReport::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn k_groups(q: &Quiver, presets: &KPresets) -> QuiverKReport {
    let adjacency = adjacency(q);
    let rows = q.vertices().to_vec();
    let cols = adjacency.regular.iter().map(|&v| q.vertices()[v].clone()).collect();
    let sequence = sequence_report(&adjacency.map, rows, cols, presets);
    QuiverKReport {
        quiver: q.clone(),
        adjacency,
        sequence,
    }
}

/// Sequence for `R ⋊_α ℤ` with `R = k^r` and `E_n(α)` given by `alpha`.
pub fn crossed_product_k_groups(alpha: &IntMatrix, presets: &KPresets) -> Result<SequenceReport> {
    if !alpha.is_square() {
        return Err(Error::Shape(format!(
            "automorphism matrix must be square, got {}x{}",
            alpha.rows(),
            alpha.cols()
        )));
    }
    let map = IntMatrix::identity(alpha.rows()).checked_sub(alpha)?;
    let labels: Vec<String> = (0..alpha.rows()).map(|i| format!("x{}", i)).collect();
    Ok(sequence_report(&map, labels.clone(), labels, presets))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> KPresets {
        KPresets::for_coeff(&CoeffRing::Integers).unwrap()
    }

    fn k0(q: &Quiver) -> KGroup {
        k_groups(q, &z()).sequence.group(0).unwrap().clone()
    }

    #[test]
    fn rose_adjacency() {
        let a = adjacency(&Quiver::rose(3));
        assert_eq!(a.full, IntMatrix::from_rows(&[[3]]).unwrap());
        assert_eq!(a.map, IntMatrix::from_rows(&[[-2]]).unwrap());
    }

    #[test]
    fn a2_adjacency() {
        let a = adjacency(&Quiver::a2());
        assert_eq!(a.map, IntMatrix::from_rows(&[[1], [-1]]).unwrap());
        assert_eq!(a.regular, vec![0]);
    }

    #[test]
    fn edgeless_adjacency() {
        let q = Quiver::from_names(&["a", "b"], &[]).unwrap();
        let a = adjacency(&q);
        assert_eq!((a.map.rows(), a.map.cols()), (2, 0));
        assert_eq!(k0(&q), KGroup::fg(FgAbelianGroup::free(2)));
    }

    #[test]
    fn rose_k0() {
        assert!(k0(&Quiver::rose(2)).is_trivial());
        for d in 2..=6u32 {
            assert_eq!(k0(&Quiver::rose(d as usize)), KGroup::fg(FgAbelianGroup::cyclic(d - 1)));
        }
        assert_eq!(k0(&Quiver::a2()), KGroup::fg(FgAbelianGroup::free(1)));
    }

    #[test]
    fn rose_one_matches_laurent() {
        let r = k_groups(&Quiver::rose(1), &z());
        let c = crossed_product_k_groups(&IntMatrix::identity(1), &z()).unwrap();
        assert_eq!(r.sequence.group(0), c.group(0));
        assert_eq!(r.sequence.group(0).unwrap().finite, FgAbelianGroup::free(1));
        // K₁(ℤ[x,x⁻¹]) = ℤ/2 ⊕ ℤ
        assert_eq!(c.group(1).unwrap().finite, FgAbelianGroup::from_cyclic_orders(&[0.into(), 2.into()]));
    }

    #[test]
    fn crossed_products() {
        let c = crossed_product_k_groups(&IntMatrix::from_rows(&[[-1]]).unwrap(), &z()).unwrap();
        assert_eq!(c.degree(0).unwrap().cokernel.finite, FgAbelianGroup::cyclic(2));
        assert!(c.degree(1).unwrap().kernel.is_trivial());
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        let c = crossed_product_k_groups(&swap, &z()).unwrap();
        assert_eq!(c.degree(0).unwrap().cokernel.finite, FgAbelianGroup::free(1));
        assert_eq!(c.degree(1).unwrap().kernel.finite, FgAbelianGroup::free(1));
        assert!(crossed_product_k_groups(&IntMatrix::zeros(1, 2), &z()).is_err());
    }

    #[test]
    fn presets() {
        let f5 = KPresets::for_coeff(&CoeffRing::prime_field(5).unwrap()).unwrap();
        assert_eq!(f5.get(1).unwrap().finite, FgAbelianGroup::cyclic(4));
        assert!(f5.get(-1).unwrap().is_trivial());
        assert!(KPresets::for_coeff(&CoeffRing::modular(6).unwrap()).is_err());
        let q = KPresets::for_coeff(&CoeffRing::Rationals).unwrap();
        let r = k_groups(&Quiver::rose(3), &q);
        // K₁(L_ℚ(R₃)) = coker of [−2] on ℚ^×: ℤ/2 ⊕ (ℤ/2)^(∞)
        let g = r.sequence.group(1).unwrap();
        assert_eq!(g.finite, FgAbelianGroup::cyclic(2));
        assert_eq!(g.countable, FgAbelianGroup::cyclic(2));
    }

    #[test]
    fn torsion_kernel_is_unassembled() {
        let mut groups = BTreeMap::new();
        groups.insert(1, KGroup::fg(FgAbelianGroup::cyclic(4)));
        groups.insert(2, KGroup::fg(FgAbelianGroup::free(1)));
        let p = KPresets::new("custom", groups);
        let r = k_groups(&Quiver::rose(3), &p);
        let d2 = r.sequence.degree(2).unwrap();
        assert_eq!(d2.kernel.finite, FgAbelianGroup::cyclic(2));
        assert_eq!(d2.split_status(), "unassembled");
    }
}
