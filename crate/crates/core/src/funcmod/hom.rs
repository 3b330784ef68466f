use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ringcore::LinComb;

use super::{CompactOperator, FunctionalModule, ModVector, ModuleKind, Side, Sym};

/// How one side of a functional homomorphism is stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomMap {
    Identity,
    /// Images of basis symbols (or of generators, extended as module maps).
    Table(BTreeMap<Sym, ModVector>),
    /// Composite `X ⊗ Y → S^{(I)} ⊗ Y ≅ Y^{(I)} → T^{(I×J)}` for a tensor source.
    Tensor(Arc<FunctionalHom>, Arc<FunctionalHom>),
}

/// A pair `(U, V)` with `V(φ)(U(x)) = φ(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionalHom {
    source: Arc<FunctionalModule>,
    target: Arc<FunctionalModule>,
    u: HomMap,
    v: HomMap,
}

impl FunctionalHom {
    pub fn new(
        source: Arc<FunctionalModule>,
        target: Arc<FunctionalModule>,
        u: HomMap,
        v: HomMap,
    ) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch("hom between modules over different rings".into()));
        }
        for (side, map) in [(Side::X, &u), (Side::Dual, &v)] {
            if let HomMap::Table(t) = map {
                for (s, img) in t {
                    if !source.contains(side, s) {
                        return Err(Error::ModuleMismatch(format!("{} is not in the source", s)));
                    }
                    target.check_vector(side, img)?;
                }
            }
        }
        Ok(FunctionalHom { source, target, u, v })
    }

    pub fn identity(module: Arc<FunctionalModule>) -> Self {
        FunctionalHom {
            source: module.clone(),
            target: module,
            u: HomMap::Identity,
            v: HomMap::Identity,
        }
    }

    pub fn source(&self) -> &Arc<FunctionalModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FunctionalModule> {
        &self.target
    }

    pub fn u_map(&self) -> &HomMap {
        &self.u
    }

    pub fn v_map(&self) -> &HomMap {
        &self.v
    }

    /// `U` scaled by `c`, `V` unchanged.
    pub fn with_scaled_u(&self, c: &crate::ringcore::Coefficient) -> Self {
        let table = match &self.u {
            HomMap::Table(t) => t.iter().map(|(s, v)| (s.clone(), v.scaled(c))).collect(),
            _ => self
                .source
                .generators(Side::X)
                .into_iter()
                .map(|g| {
                    let img = self.u_basis(&g).scaled(c);
                    (g, img)
                })
                .collect(),
        };
        FunctionalHom {
            u: HomMap::Table(table),
            ..self.clone()
        }
    }

    pub fn apply_u(&self, x: &ModVector) -> Result<ModVector> {
        self.source.check_vector(Side::X, x)?;
        Ok(x.flat_map(|s| self.u_basis(s)))
    }

    pub fn apply_v(&self, phi: &ModVector) -> Result<ModVector> {
        self.source.check_vector(Side::Dual, phi)?;
        Ok(phi.flat_map(|s| self.v_basis(s)))
    }

    pub(crate) fn u_basis(&self, x: &Sym) -> ModVector {
        match &self.u {
            HomMap::Identity => LinComb::basis(x.clone(), self.source.ring().coeff()),
            HomMap::Table(t) => {
                if let Some(img) = t.get(x) {
                    return img.clone();
                }
                let (g, m) = self.source.split_right(x);
                match t.get(&g) {
                    Some(img) => self.target.right_mul(img, &LinComb::basis(m, self.source.ring().coeff())),
                    None => LinComb::zero(),
                }
            }
            HomMap::Tensor(h1, h2) => tensor_image(&self.source, h1, h2, x, Side::X),
        }
    }

    pub(crate) fn v_basis(&self, p: &Sym) -> ModVector {
        match &self.v {
            HomMap::Identity => LinComb::basis(p.clone(), self.source.ring().coeff()),
            HomMap::Table(t) => {
                if let Some(img) = t.get(p) {
                    return img.clone();
                }
                let (m, g) = self.source.split_left_dual(p);
                match t.get(&g) {
                    Some(img) => self
                        .target
                        .left_mul_dual(&LinComb::basis(m, self.source.ring().coeff()), img),
                    None => LinComb::zero(),
                }
            }
            HomMap::Tensor(h1, h2) => tensor_image(&self.source, h1, h2, p, Side::Dual),
        }
    }
}

fn tensor_image(
    source: &FunctionalModule,
    h1: &FunctionalHom,
    h2: &FunctionalHom,
    s: &Sym,
    side: Side,
) -> ModVector {
    let ModuleKind::Tensor(_, yc) = source.kind() else {
        panic!("tensor hom on a non-tensor module");
    };
    let j_len = match h2.target.kind() {
        ModuleKind::Free { index } => index.len(),
        _ => panic!("tensor hom needs a free target"),
    };
    let Sym::Tensor(a, b) = s else {
        panic!("symbol {} is not a tensor", s);
    };
    let mut out = LinComb::zero();
    match side {
        Side::X => {
            // U(g ⊗ y) = Σ_i ε_i ⊗ U₂(sᵢ·y) where U₁(g) = Σ ε_i sᵢ
            for (c1, c) in &h1.u_basis(a) {
                let Sym::Coord(i, sm) = c1 else { panic!("free target expected") };
                let moved = yc.act(sm, b);
                for (y2, d) in &moved {
                    for (c2, e) in &h2.u_basis(y2) {
                        let Sym::Coord(j, t) = c2 else { panic!("free target expected") };
                        out.add_term(Sym::Coord(i * j_len + j, t.clone()), &(c * d) * e);
                    }
                }
            }
        }
        Side::Dual => {
            // V(ψ ⊗ φ) with V₁(φ) = Σ sᵢ ε_i*: (ψ·sᵢ) ⊗ ε_i* ↦ V₂(ψ·sᵢ) placed at i
            for (c1, c) in &h1.v_basis(b) {
                let Sym::Coord(i, sm) = c1 else { panic!("free target expected") };
                let moved = yc.act_dual(a, sm);
                for (y2, d) in &moved {
                    for (c2, e) in &h2.v_basis(y2) {
                        let Sym::Coord(j, t) = c2 else { panic!("free target expected") };
                        out.add_term(Sym::Coord(i * j_len + j, t.clone()), &(c * d) * e);
                    }
                }
            }
        }
    }
    out
}

/// `V(φ)(U(x)) = φ(x)` on all basis pairs (generator pairs for infinite modules).
pub fn check_functional_hom(h: &FunctionalHom) -> bool {
    let xs = h
        .source
        .finite_basis(Side::X)
        .unwrap_or_else(|| h.source.generators(Side::X));
    let ps = h
        .source
        .finite_basis(Side::Dual)
        .unwrap_or_else(|| h.source.generators(Side::Dual));
    for p in &ps {
        let vp = h.v_basis(p);
        for x in &xs {
            let ux = h.u_basis(x);
            if h.target.pair_terms(&vp, &ux) != h.source.pair_basis(p, x) {
                return false;
            }
        }
    }
    true
}

/// `ι = U ⊗ V : K(X) → K(Y)`.
pub fn induced_compact_map(h: &FunctionalHom, k: &CompactOperator) -> Result<CompactOperator> {
    if k.module().as_ref() != h.source.as_ref() {
        return Err(Error::ModuleMismatch("compact operator is not over the hom's source".into()));
    }
    let mut out = CompactOperator::zero(h.target.clone());
    for ((g, p), c) in k.terms() {
        let img = CompactOperator::elementary(h.target.clone(), &h.u_basis(g), &h.v_basis(p))?;
        out = out.plus_scaled(&img, c)?;
    }
    Ok(out)
}

/// Injectivity of `U` and `V` on the finite basis span.
pub fn hom_is_injective(h: &FunctionalHom) -> bool {
    use crate::ringcore::linsolve;
    let k = h.source.ring().coeff();
    let check = |basis: Vec<Sym>, img: &dyn Fn(&Sym) -> ModVector| {
        let images: Vec<ModVector> = basis.iter().map(img).collect();
        let mut keys = std::collections::BTreeSet::new();
        for v in &images {
            keys.extend(v.keys().cloned());
        }
        let rows: Vec<Vec<_>> = images
            .iter()
            .map(|v| {
                keys.iter()
                    .map(|s| v.coefficient(s).cloned().unwrap_or_else(|| k.zero()))
                    .collect()
            })
            .collect();
        basis.is_empty() || linsolve::rows_independent(k, &rows)
    };
    let xs = h
        .source
        .finite_basis(Side::X)
        .unwrap_or_else(|| h.source.generators(Side::X));
    let ps = h
        .source
        .finite_basis(Side::Dual)
        .unwrap_or_else(|| h.source.generators(Side::Dual));
    check(xs, &|s| h.u_basis(s)) && check(ps, &|s| h.v_basis(s))
}
