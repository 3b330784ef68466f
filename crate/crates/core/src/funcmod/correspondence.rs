use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ringcore::{LinComb, Monomial, RingDescriptor, RingElement, RingKind};
use crate::selfsim::GroupWord;

use super::compact::compact_decomposition;
use super::{CompactOperator, FunctionalHom, FunctionalModule, HomMap, ModVector, ModuleKind, Side, Sym};

/// The left action `Δ : A → L_R(X)` of a correspondence, with the adjoint
/// right action of `A` on `X′` (`φ·a = φ ∘ Δ(a)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LeftAction {
    /// Tables on basis symbols; missing entries are zero.
    Table {
        on_x: BTreeMap<(Monomial, Sym), ModVector>,
        on_dual: BTreeMap<(Sym, Monomial), ModVector>,
    },
    /// Left multiplication on the coordinates of `R^{(I)}`.
    Multiplication,
    /// `h·(ε_x g) = ε_{h(x)} h|_x g` on `kG^{(X)}`.
    SelfSimilar,
    /// Action on the left factor of a tensor module.
    Induced,
}

/// A correspondence `(X, Δ, U, I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Correspondence {
    module: Arc<FunctionalModule>,
    left_ring: Arc<RingDescriptor>,
    action: LeftAction,
    hom: Option<Arc<FunctionalHom>>,
}

impl Correspondence {
    pub fn new(
        module: Arc<FunctionalModule>,
        left_ring: Arc<RingDescriptor>,
        action: LeftAction,
        hom: Option<Arc<FunctionalHom>>,
    ) -> Result<Self> {
        match (&action, module.kind()) {
            (LeftAction::Multiplication, ModuleKind::Free { .. }) if left_ring == *module.ring() => {}
            (LeftAction::Multiplication, _) => {
                return Err(Error::ModuleMismatch(
                    "multiplication action needs a free module over the same ring".into(),
                ))
            }
            (LeftAction::SelfSimilar, ModuleKind::Free { index }) => {
                let Some(g) = left_ring.group() else {
                    return Err(Error::RingMismatch("self-similar action needs a group ring".into()));
                };
                if index.len() != g.degree() || left_ring != *module.ring() {
                    return Err(Error::ModuleMismatch("module index must be the alphabet".into()));
                }
            }
            (LeftAction::SelfSimilar, _) => {
                return Err(Error::ModuleMismatch("self-similar action needs a free module".into()))
            }
            (LeftAction::Induced, ModuleKind::Tensor(..)) => {}
            (LeftAction::Induced, _) => {
                return Err(Error::ModuleMismatch("induced action needs a tensor module".into()))
            }
            (LeftAction::Table { .. }, _) => {}
        }
        if let Some(h) = &hom {
            if h.source() != &module {
                return Err(Error::ModuleMismatch("hom source is not the module".into()));
            }
            if !matches!(h.target().kind(), ModuleKind::Free { .. }) {
                return Err(Error::ModuleMismatch("hom target must be a free module".into()));
            }
        }
        Ok(Correspondence {
            module,
            left_ring,
            action,
            hom,
        })
    }

    /// `(R, R, μ)`: `R` as a correspondence over itself.
    pub fn identity(ring: Arc<RingDescriptor>) -> Self {
        let module = Arc::new(FunctionalModule::free(ring.clone(), vec!["1".into()]));
        let hom = Arc::new(FunctionalHom::identity(module.clone()));
        Correspondence {
            module,
            left_ring: ring,
            action: LeftAction::Multiplication,
            hom: Some(hom),
        }
    }

    pub fn module(&self) -> &Arc<FunctionalModule> {
        &self.module
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        self.module.ring()
    }

    pub fn left_ring(&self) -> &Arc<RingDescriptor> {
        &self.left_ring
    }

    pub fn action(&self) -> &LeftAction {
        &self.action
    }

    pub fn hom(&self) -> Option<&Arc<FunctionalHom>> {
        self.hom.as_ref()
    }

    /// Index set `I` of the free model `R^{(I)}`.
    pub fn index_set(&self) -> Option<&[String]> {
        self.hom.as_ref().and_then(|h| match h.target().kind() {
            ModuleKind::Free { index } => Some(index.as_slice()),
            _ => None,
        })
    }

    /// `Δ(m)·x` on basis symbols.
    pub fn act(&self, m: &Monomial, x: &Sym) -> ModVector {
        let k = self.left_ring.coeff();
        match (&self.action, x) {
            (LeftAction::Table { on_x, .. }, _) => on_x.get(&(m.clone(), x.clone())).cloned().unwrap_or_default(),
            (LeftAction::Multiplication, Sym::Coord(i, a)) => self
                .left_ring
                .mul_monomials(m, a)
                .iter()
                .map(|(b, c)| (Sym::Coord(*i, b.clone()), c.clone()))
                .collect(),
            (LeftAction::SelfSimilar, Sym::Coord(y, g)) => {
                let (Monomial::Group(h), Monomial::Group(g)) = (m, g) else {
                    panic!("group ring symbols expected");
                };
                let group = self.left_ring.group().expect("group ring");
                let (hy, res) = group.step(h, *y);
                let word = res.mul(g);
                let elem = RingElement::from_terms(self.left_ring.clone(), LinComb::basis(Monomial::Group(word), k));
                elem.terms()
                    .iter()
                    .map(|(w, c)| (Sym::Coord(hy, w.clone()), c.clone()))
                    .collect()
            }
            (LeftAction::Induced, Sym::Tensor(g, y)) => {
                let ModuleKind::Tensor(xc, _) = self.module.kind() else {
                    unreachable!()
                };
                let moved = xc.act(m, g);
                let mut out = LinComb::zero();
                for (b, c) in &moved {
                    out.add_scaled(&self.module.tensor_basis(b, y), c);
                }
                out
            }
            _ => panic!("symbol {} is not in this correspondence", x),
        }
    }

    /// `φ·m = φ ∘ Δ(m)` on basis symbols of `X′`.
    pub fn act_dual(&self, p: &Sym, m: &Monomial) -> ModVector {
        let k = self.left_ring.coeff();
        match (&self.action, p) {
            (LeftAction::Table { on_dual, .. }, _) => {
                on_dual.get(&(p.clone(), m.clone())).cloned().unwrap_or_default()
            }
            (LeftAction::Multiplication, Sym::Coord(i, a)) => self
                .left_ring
                .mul_monomials(a, m)
                .iter()
                .map(|(b, c)| (Sym::Coord(*i, b.clone()), c.clone()))
                .collect(),
            (LeftAction::SelfSimilar, Sym::Coord(y, g)) => {
                // (g ε_y*)·h = g·h|_x ε_x*  with x = h⁻¹(y)
                let (Monomial::Group(h), Monomial::Group(g)) = (m, g) else {
                    panic!("group ring symbols expected");
                };
                let group = self.left_ring.group().expect("group ring");
                let (x, _) = group.step(&h.inverse(), *y);
                let (_, res) = group.step(h, x);
                let word = g.mul(&res);
                let elem = RingElement::from_terms(self.left_ring.clone(), LinComb::basis(Monomial::Group(word), k));
                elem.terms()
                    .iter()
                    .map(|(w, c)| (Sym::Coord(x, w.clone()), c.clone()))
                    .collect()
            }
            (LeftAction::Induced, Sym::Tensor(psi, g)) => {
                let ModuleKind::Tensor(xc, _) = self.module.kind() else {
                    unreachable!()
                };
                let moved = xc.act_dual(g, m);
                let mut out = LinComb::zero();
                for (b, c) in &moved {
                    out.add_scaled(&self.module.tensor_basis_dual(psi, b), c);
                }
                out
            }
            _ => panic!("symbol {} is not in this correspondence", p),
        }
    }

    /// `Δ(r)·x` for ring terms `r` and a basis symbol.
    pub fn act_terms(&self, r: &LinComb<Monomial>, x: &Sym) -> ModVector {
        let mut out = LinComb::zero();
        for (m, c) in r {
            out.add_scaled(&self.act(m, x), c);
        }
        out
    }

    pub fn act_dual_terms(&self, p: &Sym, r: &LinComb<Monomial>) -> ModVector {
        let mut out = LinComb::zero();
        for (m, c) in r {
            out.add_scaled(&self.act_dual(p, m), c);
        }
        out
    }

    /// `Δ(r)·x`
    pub fn left_action(&self, r: &RingElement, x: &ModVector) -> Result<ModVector> {
        if r.ring() != &self.left_ring {
            return Err(Error::RingMismatch("element outside the acting ring".into()));
        }
        self.module.check_vector(Side::X, x)?;
        Ok(x.flat_map(|s| self.act_terms(r.terms(), s)))
    }

    /// `φ·r`
    pub fn right_action_dual(&self, phi: &ModVector, r: &RingElement) -> Result<ModVector> {
        if r.ring() != &self.left_ring {
            return Err(Error::RingMismatch("element outside the acting ring".into()));
        }
        self.module.check_vector(Side::Dual, phi)?;
        Ok(phi.flat_map(|s| self.act_dual_terms(s, r.terms())))
    }

    /// Ring symbols on which action laws are tested: the finite basis, or the
    /// unit generators plus group generators and their inverses.
    pub fn test_monomials(&self) -> Vec<Monomial> {
        if let Some(b) = self.left_ring.finite_basis() {
            return b;
        }
        let mut out = self.left_ring.unit_generators();
        match self.left_ring.kind() {
            RingKind::GroupRing { group } => {
                for i in 0..group.generators().len() {
                    out.push(Monomial::Group(GroupWord::generator(i)));
                    out.push(Monomial::Group(GroupWord::generator(i).inverse()));
                }
            }
            RingKind::FreeQuotient(_) => {
                let q = self.left_ring.quiver().expect("leavitt ring");
                for e in 0..q.edge_count() {
                    out.push(Monomial::Path(crate::leavitt::LpaWord::edge(q, e)));
                    out.push(Monomial::Path(crate::leavitt::LpaWord::ghost(q, e)));
                }
            }
            _ => {}
        }
        out
    }

    fn test_symbols(&self, side: Side) -> Vec<Sym> {
        self.module
            .finite_basis(side)
            .unwrap_or_else(|| self.module.generators(side))
    }

    /// `g(φ, Δ(m)x) = g(φ·m, x)` on basis pairs and test symbols.
    pub fn check_adjoint_law(&self) -> bool {
        let xs = self.test_symbols(Side::X);
        let ps = self.test_symbols(Side::Dual);
        let k = self.ring().coeff();
        for m in self.test_monomials() {
            for p in &ps {
                let pm = self.act_dual(p, &m);
                for x in &xs {
                    let lhs = self.module.pair_terms(&LinComb::basis(p.clone(), k), &self.act(&m, x));
                    let rhs = self.module.pair_terms(&pm, &LinComb::basis(x.clone(), k));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `Δ` is multiplicative and commutes with the right action on test data.
    pub fn check_action_laws(&self) -> bool {
        let xs = self.test_symbols(Side::X);
        let ms = self.test_monomials();
        let right = self.ring().finite_basis().unwrap_or_else(|| self.ring().unit_generators());
        let k = self.ring().coeff();
        for a in &ms {
            for b in &ms {
                let ab = self.left_ring.mul_monomials(a, b);
                for x in &xs {
                    let lhs = self.act_terms(&ab, x);
                    let rhs = self.act(b, x).flat_map(|s| self.act(a, s));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            for x in &xs {
                for r in &right {
                    let lhs = self.act(a, x).flat_map(|s| self.module.right_act(s, r));
                    let rhs = self.module.right_act(x, r).flat_map(|s| self.act(a, s));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        let _ = k;
        true
    }

    /// `Δ(A)·X = X` and `X′·Δ(A) = X′` on generators, using the unit generators
    /// of the acting ring.
    pub fn check_non_degenerate_action(&self) -> bool {
        let units = self.left_ring.unit_generators();
        let k = self.ring().coeff();
        let units_lc: LinComb<Monomial> = units.iter().map(|u| (u.clone(), k.one())).collect();
        self.test_symbols(Side::X)
            .iter()
            .all(|x| self.act_terms(&units_lc, x) == LinComb::basis(x.clone(), k))
            && self
                .test_symbols(Side::Dual)
                .iter()
                .all(|p| self.act_dual_terms(p, &units_lc) == LinComb::basis(p.clone(), k))
    }

    /// `Δ(r)` as a compact operator, or [`Error::NotCompact`].
    pub fn compact_left_action(&self, r: &RingElement) -> Result<CompactOperator> {
        if r.ring() != &self.left_ring {
            return Err(Error::RingMismatch("element outside the acting ring".into()));
        }
        let test = self.test_symbols(Side::X);
        compact_decomposition(&self.module, &test, &|s| self.act_terms(r.terms(), s))
            .ok_or_else(|| Error::NotCompact(format!("Δ({}) has no finite decomposition", r)))
    }
}

/// `X ⊗_S Y` for an `R`–`S` correspondence and an `S`–`T` correspondence.
pub fn tensor(c1: &Arc<Correspondence>, c2: &Arc<Correspondence>) -> Result<Correspondence> {
    let module = Arc::new(FunctionalModule::tensor_of(c1.clone(), c2.clone())?);
    let hom = match (c1.hom(), c2.hom()) {
        (Some(h1), Some(h2)) => {
            let (Some(i), Some(j)) = (c1.index_set(), c2.index_set()) else {
                unreachable!("homs into free modules")
            };
            let index: Vec<String> = i
                .iter()
                .flat_map(|a| j.iter().map(move |b| format!("{}.{}", a, b)))
                .collect();
            let target = Arc::new(FunctionalModule::free(c2.ring().clone(), index));
            Some(Arc::new(FunctionalHom::new(
                module.clone(),
                target,
                HomMap::Tensor(h1.clone(), h2.clone()),
                HomMap::Tensor(h1.clone(), h2.clone()),
            )?))
        }
        _ => None,
    };
    Correspondence::new(module, c1.left_ring().clone(), LeftAction::Induced, hom)
}
