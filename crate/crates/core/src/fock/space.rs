use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funcmod::{tensor, Correspondence, ModVector, Side, Sym};
use crate::ringcore::{LinComb, Monomial, RingDescriptor, RingElement};

use super::word::Letter;

/// Basis key of the Fock module: a ring symbol in degree 0, a reduced pure
/// tensor of `X^{⊗n}` (or `X′^{⊗n}`) in degree `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FockKey {
    Scalar(Monomial),
    Tensor(usize, Sym),
}

impl FockKey {
    pub fn degree(&self) -> usize {
        match self {
            FockKey::Scalar(_) => 0,
            FockKey::Tensor(n, _) => *n,
        }
    }
}

impl fmt::Display for FockKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FockKey::Scalar(m) => write!(f, "{:?}", m),
            FockKey::Tensor(_, s) => write!(f, "{}", s),
        }
    }
}

pub type FockVector = LinComb<FockKey>;

/// Degree of a homogeneous vector, `None` for zero or mixed vectors.
pub fn homogeneous_degree(v: &FockVector) -> Option<usize> {
    let mut it = v.keys().map(FockKey::degree);
    let d = it.next()?;
    it.all(|e| e == d).then_some(d)
}

/// `⊕_{n ≤ N} X^{⊗n}` together with the dual side `⊕_{n ≤ N} X′^{⊗n}`.
#[derive(Clone, Debug)]
pub struct TruncatedFock {
    corr: Arc<Correspondence>,
    depth: usize,
    /// `levels[n]` is `X^{⊗n}` as a correspondence over `R` (`levels[0]` unused).
    levels: Vec<Arc<Correspondence>>,
    bases: [Vec<Vec<FockKey>>; 2],
    index: [Vec<HashMap<FockKey, usize>>; 2],
}

fn side_slot(side: Side) -> usize {
    match side {
        Side::X => 0,
        Side::Dual => 1,
    }
}

impl TruncatedFock {
    /// Needs a correspondence over `R` itself (left ring = right ring) with
    /// finite bases on both sides.
    pub fn new(corr: Arc<Correspondence>, depth: usize) -> Result<Self> {
        if corr.left_ring() != corr.ring() {
            return Err(Error::RingMismatch(
                "the Fock module needs a correspondence over a single ring".into(),
            ));
        }
        let ring = corr.ring().clone();
        let module = corr.module().clone();
        let (Some(rb), Some(xb), Some(pb)) = (
            ring.finite_basis(),
            module.finite_basis(Side::X),
            module.finite_basis(Side::Dual),
        ) else {
            return Err(Error::Unsupported(
                "truncated Fock modules need finite bases for R, X and X′".into(),
            ));
        };
        let bare = Arc::new(Correspondence::new(
            module.clone(),
            corr.left_ring().clone(),
            corr.action().clone(),
            None,
        )?);
        let mut levels = vec![corr.clone(), corr.clone()];
        for n in 1..depth {
            let next = tensor(&bare, &levels[n])?;
            levels.push(Arc::new(next));
        }

        let scalars: Vec<FockKey> = rb.into_iter().map(FockKey::Scalar).collect();
        let mut xs = vec![scalars.clone()];
        let mut ps = vec![scalars];
        if depth >= 1 {
            xs.push(xb.iter().map(|s| FockKey::Tensor(1, s.clone())).collect());
            ps.push(pb.iter().map(|s| FockKey::Tensor(1, s.clone())).collect());
        }
        for n in 1..depth {
            let m = levels[n + 1].module();
            let mut nx = BTreeSet::new();
            for a in &xb {
                for b in &xs[n] {
                    let FockKey::Tensor(_, b) = b else { unreachable!() };
                    nx.extend(m.tensor_basis(a, b).keys().cloned());
                }
            }
            let mut np = BTreeSet::new();
            for psi in &ps[n] {
                let FockKey::Tensor(_, psi) = psi else { unreachable!() };
                for phi in &pb {
                    np.extend(m.tensor_basis_dual(psi, phi).keys().cloned());
                }
            }
            xs.push(nx.into_iter().map(|s| FockKey::Tensor(n + 1, s)).collect());
            ps.push(np.into_iter().map(|s| FockKey::Tensor(n + 1, s)).collect());
        }
        let idx = |b: &Vec<Vec<FockKey>>| -> Vec<HashMap<FockKey, usize>> {
            b.iter()
                .map(|level| level.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
                .collect()
        };
        let index = [idx(&xs), idx(&ps)];
        Ok(TruncatedFock {
            corr,
            depth,
            levels,
            bases: [xs, ps],
            index,
        })
    }

    pub fn correspondence(&self) -> &Arc<Correspondence> {
        &self.corr
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        self.corr.ring()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Basis of degree `n` on the given side.
    pub fn basis(&self, side: Side, n: usize) -> &[FockKey] {
        &self.bases[side_slot(side)][n]
    }

    pub fn dimension(&self, side: Side, n: usize) -> usize {
        self.basis(side, n).len()
    }

    pub(crate) fn position(&self, side: Side, key: &FockKey) -> Option<usize> {
        self.index[side_slot(side)].get(key.degree())?.get(key).copied()
    }

    /// `X^{⊗n}` as a correspondence, `n ≥ 1`.
    pub fn level(&self, n: usize) -> &Arc<Correspondence> {
        &self.levels[n]
    }

    pub fn check_letter(&self, letter: &Letter) -> Result<()> {
        let module = self.corr.module();
        match letter {
            Letter::Create(x) => module.check_vector(Side::X, x),
            Letter::Annihilate(phi) => module.check_vector(Side::Dual, phi),
            Letter::Scalar(r) => RingElement::new(self.ring().clone(), r.clone()).map(|_| ()),
        }
    }

    pub fn check_vector(&self, side: Side, v: &FockVector) -> Result<()> {
        for k in v.keys() {
            if k.degree() > self.depth || self.position(side, k).is_none() {
                return Err(Error::ModuleMismatch(format!(
                    "{} is not a basis tensor of the truncated Fock module",
                    k
                )));
            }
        }
        Ok(())
    }

    /// `x ⊗ p` on a basis key; dropped from degree `N`.
    pub(crate) fn create_key(&self, x: &ModVector, key: &FockKey) -> FockVector {
        let k = self.ring().coeff();
        let module = self.corr.module();
        match key {
            FockKey::Scalar(m) if self.depth >= 1 => module
                .right_mul(x, &LinComb::basis(m.clone(), k))
                .iter()
                .map(|(s, c)| (FockKey::Tensor(1, s.clone()), c.clone()))
                .collect(),
            FockKey::Tensor(n, p) if *n < self.depth => {
                let m = self.levels[n + 1].module();
                let mut out = LinComb::zero();
                for (a, c) in x {
                    for (s, d) in &m.tensor_basis(a, p) {
                        out.add_term(FockKey::Tensor(n + 1, s.clone()), c * d);
                    }
                }
                out
            }
            _ => LinComb::zero(),
        }
    }

    /// `φ(p₁)·p₂⊗⋯⊗pₙ`, zero in degree 0.
    pub(crate) fn annihilate_key(&self, phi: &ModVector, key: &FockKey) -> FockVector {
        let module = self.corr.module();
        match key {
            FockKey::Scalar(_) => LinComb::zero(),
            FockKey::Tensor(1, s) => {
                let mut out = LinComb::zero();
                for (p, c) in phi {
                    for (m, d) in &module.pair_basis(p, s) {
                        out.add_term(FockKey::Scalar(m.clone()), c * d);
                    }
                }
                out
            }
            FockKey::Tensor(n, Sym::Tensor(g, rest)) => {
                let mut out = LinComb::zero();
                for (p, c) in phi {
                    let r = module.pair_basis(p, g);
                    for (s, d) in &self.levels[n - 1].act_terms(&r, rest) {
                        out.add_term(FockKey::Tensor(n - 1, s.clone()), c * d);
                    }
                }
                out
            }
            FockKey::Tensor(..) => unreachable!("higher Fock keys are tensors"),
        }
    }

    /// `r·p`
    pub(crate) fn scalar_key(&self, r: &LinComb<Monomial>, key: &FockKey) -> FockVector {
        match key {
            FockKey::Scalar(m) => r
                .flat_map(|a| self.ring().mul_monomials(a, m))
                .iter()
                .map(|(b, c)| (FockKey::Scalar(b.clone()), c.clone()))
                .collect(),
            FockKey::Tensor(n, p) => self.levels[*n]
                .act_terms(r, p)
                .iter()
                .map(|(s, c)| (FockKey::Tensor(*n, s.clone()), c.clone()))
                .collect(),
        }
    }

    /// `T_x^*(ψ) = ψ₁⊗⋯⊗ψₙ₋₁·ψₙ(x)`, zero in degree 0.
    pub(crate) fn create_dual_key(&self, x: &ModVector, key: &FockKey) -> FockVector {
        let module = self.corr.module();
        match key {
            FockKey::Scalar(_) => LinComb::zero(),
            FockKey::Tensor(1, s) => {
                let mut out = LinComb::zero();
                for (a, c) in x {
                    for (m, d) in &module.pair_basis(s, a) {
                        out.add_term(FockKey::Scalar(m.clone()), c * d);
                    }
                }
                out
            }
            FockKey::Tensor(n, Sym::Tensor(psi, g)) => {
                let mut out = LinComb::zero();
                for (a, c) in x {
                    let r = module.pair_basis(g, a);
                    for (s, d) in &self.levels[n - 1].act_dual_terms(psi, &r) {
                        out.add_term(FockKey::Tensor(n - 1, s.clone()), c * d);
                    }
                }
                out
            }
            FockKey::Tensor(..) => unreachable!("higher Fock keys are tensors"),
        }
    }

    /// `T_φ^*(ψ) = ψ ⊗ φ`; dropped from degree `N`.
    pub(crate) fn annihilate_dual_key(&self, phi: &ModVector, key: &FockKey) -> FockVector {
        let k = self.ring().coeff();
        let module = self.corr.module();
        match key {
            FockKey::Scalar(m) if self.depth >= 1 => module
                .left_mul_dual(&LinComb::basis(m.clone(), k), phi)
                .iter()
                .map(|(s, c)| (FockKey::Tensor(1, s.clone()), c.clone()))
                .collect(),
            FockKey::Tensor(n, psi) if *n < self.depth => {
                let m = self.levels[n + 1].module();
                let mut out = LinComb::zero();
                for (p, c) in phi {
                    for (s, d) in &m.tensor_basis_dual(psi, p) {
                        out.add_term(FockKey::Tensor(n + 1, s.clone()), c * d);
                    }
                }
                out
            }
            _ => LinComb::zero(),
        }
    }

    /// `ψ·r`
    pub(crate) fn scalar_dual_key(&self, r: &LinComb<Monomial>, key: &FockKey) -> FockVector {
        match key {
            FockKey::Scalar(m) => r
                .flat_map(|a| self.ring().mul_monomials(m, a))
                .iter()
                .map(|(b, c)| (FockKey::Scalar(b.clone()), c.clone()))
                .collect(),
            FockKey::Tensor(n, p) => self.levels[*n]
                .act_dual_terms(p, r)
                .iter()
                .map(|(s, c)| (FockKey::Tensor(*n, s.clone()), c.clone()))
                .collect(),
        }
    }

    /// One letter acting on a basis key, on either side. On the dual side the
    /// letter acts by its adjoint.
    pub(crate) fn letter_key(&self, side: Side, letter: &Letter, key: &FockKey) -> FockVector {
        match (side, letter) {
            (Side::X, Letter::Create(x)) => self.create_key(x, key),
            (Side::X, Letter::Annihilate(phi)) => self.annihilate_key(phi, key),
            (Side::X, Letter::Scalar(r)) => self.scalar_key(r, key),
            (Side::Dual, Letter::Create(x)) => self.create_dual_key(x, key),
            (Side::Dual, Letter::Annihilate(phi)) => self.annihilate_dual_key(phi, key),
            (Side::Dual, Letter::Scalar(r)) => self.scalar_dual_key(r, key),
        }
    }

    pub(crate) fn letter_vec(&self, side: Side, letter: &Letter, v: &FockVector) -> FockVector {
        v.flat_map(|k| self.letter_key(side, letter, k))
    }

    /// `x ⊗ q` for a basis tensor `x` of degree `n` and a basis key `q`,
    /// i.e. `T_x(q)` for `x ∈ X^{⊗n}`; zero past degree `N`.
    pub(crate) fn tensor_keys(&self, p: &FockKey, q: &FockKey) -> FockVector {
        let k = self.ring().coeff();
        match p {
            FockKey::Scalar(m) => self.scalar_key(&LinComb::basis(m.clone(), k), q),
            FockKey::Tensor(1, s) => self.create_key(&LinComb::basis(s.clone(), k), q),
            FockKey::Tensor(n, Sym::Tensor(g, rest)) => {
                let inner = self.tensor_keys(&FockKey::Tensor(n - 1, (**rest).clone()), q);
                let g = LinComb::basis((**g).clone(), k);
                inner.flat_map(|key| self.create_key(&g, key))
            }
            FockKey::Tensor(..) => unreachable!("higher Fock keys are tensors"),
        }
    }

    /// The graded pairing `g̃(ψ, p)`: zero across degrees, `ψp` in degree 0.
    pub fn pairing(&self, psi: &FockVector, p: &FockVector) -> Result<RingElement> {
        self.check_vector(Side::Dual, psi)?;
        self.check_vector(Side::X, p)?;
        let mut out = LinComb::zero();
        for (a, c) in psi {
            for (b, d) in p {
                let terms = match (a, b) {
                    (FockKey::Scalar(m), FockKey::Scalar(n)) => self.ring().mul_monomials(m, n),
                    (FockKey::Tensor(i, s), FockKey::Tensor(j, t)) if i == j => {
                        self.levels[*i].module().pair_basis(s, t)
                    }
                    _ => continue,
                };
                out.add_scaled(&terms, &(c * d));
            }
        }
        RingElement::new(self.ring().clone(), out)
    }
}
