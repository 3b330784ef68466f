use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ringcore::{linsolve, CoeffRing, Coefficient, LinComb, Monomial, RingDescriptor, RingElement};

use super::{FunctionalModule, ModVector, ModuleKind, Side, Sym};

/// Element of `K_R(X) = X ⊗_R X′` in normal form: a combination of
/// `(generator, X′ basis symbol)` pairs with the generator's right support
/// moved across the tensor sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactOperator {
    module: Arc<FunctionalModule>,
    terms: LinComb<(Sym, Sym)>,
}

impl CompactOperator {
    pub fn zero(module: Arc<FunctionalModule>) -> Self {
        CompactOperator {
            module,
            terms: LinComb::zero(),
        }
    }

    /// `x ⊗ φ`
    pub fn elementary(module: Arc<FunctionalModule>, x: &ModVector, phi: &ModVector) -> Result<Self> {
        module.check_vector(Side::X, x)?;
        module.check_vector(Side::Dual, phi)?;
        let terms = normal_terms(&module, x, phi);
        Ok(CompactOperator { module, terms })
    }

    pub fn module(&self) -> &Arc<FunctionalModule> {
        &self.module
    }

    pub fn terms(&self) -> &LinComb<(Sym, Sym)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check_same(&self, other: &CompactOperator) -> Result<()> {
        if Arc::ptr_eq(&self.module, &other.module) || self.module == other.module {
            Ok(())
        } else {
            Err(Error::ModuleMismatch("compact operators over different modules".into()))
        }
    }

    pub fn plus(&self, other: &CompactOperator) -> Result<Self> {
        self.check_same(other)?;
        Ok(CompactOperator {
            module: self.module.clone(),
            terms: self.terms.plus(&other.terms),
        })
    }

    pub fn plus_scaled(&self, other: &CompactOperator, c: &Coefficient) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        terms.add_scaled(&other.terms, c);
        Ok(CompactOperator {
            module: self.module.clone(),
            terms,
        })
    }

    pub fn minus(&self, other: &CompactOperator) -> Result<Self> {
        self.check_same(other)?;
        Ok(CompactOperator {
            module: self.module.clone(),
            terms: self.terms.minus(&other.terms),
        })
    }

    pub fn scaled(&self, c: &Coefficient) -> Self {
        CompactOperator {
            module: self.module.clone(),
            terms: self.terms.scaled(c),
        }
    }

    /// Under `K_R(R^{(I)}) ≅ M_I(R)`: `ε_i e ⊗ a ε_j* ↦ E_{ij}(a)`.
    pub fn to_matrix(&self, matrix_ring: &Arc<RingDescriptor>) -> Result<RingElement> {
        if !matches!(self.module.kind(), ModuleKind::Free { .. }) {
            return Err(Error::Unsupported("matrix form needs a free module".into()));
        }
        let mut out = LinComb::zero();
        for ((g, p), c) in &self.terms {
            let (Sym::Coord(i, _), Sym::Coord(j, a)) = (g, p) else {
                unreachable!("free module symbols are coordinates")
            };
            out.add_term(
                Monomial::MatrixUnit {
                    row: *i,
                    col: *j,
                    entry: Box::new(a.clone()),
                },
                c.clone(),
            );
        }
        RingElement::new(matrix_ring.clone(), out)
    }

    /// Inverse of [`to_matrix`](Self::to_matrix).
    pub fn from_matrix(module: Arc<FunctionalModule>, m: &RingElement) -> Result<Self> {
        let mut terms = LinComb::zero();
        for (mono, c) in m.terms() {
            let Monomial::MatrixUnit { row, col, entry } = mono else {
                return Err(Error::RingMismatch("expected a matrix ring element".into()));
            };
            let x = LinComb::basis(Sym::Coord(*row, module.ring().left_unit(entry)), module.ring().coeff());
            let p = LinComb::basis(Sym::Coord(*col, (**entry).clone()), module.ring().coeff());
            terms.add_scaled(&normal_terms(&module, &x, &p), c);
        }
        Ok(CompactOperator { module, terms })
    }
}

pub(crate) fn normal_terms(module: &FunctionalModule, x: &ModVector, phi: &ModVector) -> LinComb<(Sym, Sym)> {
    let k = module.ring().coeff();
    let mut out = LinComb::zero();
    for (xs, cx) in x {
        let (g, m) = module.split_right(xs);
        let moved = module.left_mul_dual(&LinComb::basis(m, k), phi);
        for (p, cp) in &moved {
            out.add_term((g.clone(), p.clone()), cx * cp);
        }
    }
    out
}

/// `(x₁ ⊗ φ₁)(x₂ ⊗ φ₂) = x₁ ⊗ φ₁(x₂)·φ₂`
pub fn compact_mul(a: &CompactOperator, b: &CompactOperator) -> Result<CompactOperator> {
    a.check_same(b)?;
    let module = &a.module;
    let k = module.ring().coeff();
    let mut terms = LinComb::zero();
    for ((g1, p1), c1) in &a.terms {
        for ((g2, p2), c2) in &b.terms {
            let s = module.pair_basis(p1, g2);
            if s.is_zero() {
                continue;
            }
            let phi = module.left_mul_dual(&s, &LinComb::basis(p2.clone(), k));
            let x = LinComb::basis(g1.clone(), k);
            terms.add_scaled(&normal_terms(module, &x, &phi), &(c1 * c2));
        }
    }
    Ok(CompactOperator {
        module: module.clone(),
        terms,
    })
}

/// `θ_{x,φ}(y) = x·φ(y)`
pub fn theta_apply(k: &CompactOperator, y: &ModVector) -> Result<ModVector> {
    k.module.check_vector(Side::X, y)?;
    Ok(theta_terms(k, y))
}

pub(crate) fn theta_terms(k: &CompactOperator, y: &ModVector) -> ModVector {
    let module = &k.module;
    let kr = module.ring().coeff();
    let mut out = LinComb::zero();
    for ((g, p), c) in &k.terms {
        let s = module.pair_terms(&LinComb::basis(p.clone(), kr), y);
        if s.is_zero() {
            continue;
        }
        out.add_scaled(&module.right_mul(&LinComb::basis(g.clone(), kr), &s), c);
    }
    out
}

/// `ψ·(x ⊗ φ) = ψ(x)·φ`
pub fn theta_apply_right(psi: &ModVector, k: &CompactOperator) -> Result<ModVector> {
    k.module.check_vector(Side::Dual, psi)?;
    Ok(theta_right_terms(psi, k))
}

pub(crate) fn theta_right_terms(psi: &ModVector, k: &CompactOperator) -> ModVector {
    let module = &k.module;
    let kr = module.ring().coeff();
    let mut out = LinComb::zero();
    for ((g, p), c) in &k.terms {
        let s = module.pair_terms(psi, &LinComb::basis(g.clone(), kr));
        if s.is_zero() {
            continue;
        }
        out.add_scaled(&module.left_mul_dual(&s, &LinComb::basis(p.clone(), kr)), c);
    }
    out
}

/// Candidate generator pairs for compact operators touching the given supports.
fn candidates(module: &FunctionalModule, xs: &[ModVector], phis: &[ModVector]) -> Vec<(Sym, Sym)> {
    if let ModuleKind::Table(t) = module.kind() {
        let mut out = Vec::new();
        for g in &t.x_basis {
            for p in &t.xp_basis {
                out.push((g.clone(), p.clone()));
            }
        }
        return out;
    }
    let mut gens = BTreeSet::new();
    let mut duals = BTreeSet::new();
    for v in xs {
        for s in v.keys() {
            gens.insert(module.split_right(s).0);
        }
    }
    for v in phis {
        for s in v.keys() {
            duals.insert(module.split_left_dual(s).1);
        }
    }
    let extra_gens: Vec<Sym> = duals.iter().filter_map(|p| dual_generator(module, Side::Dual, p)).collect();
    gens.extend(extra_gens);
    let extra_duals: Vec<Sym> = gens.iter().filter_map(|g| dual_generator(module, Side::X, g)).collect();
    duals.extend(extra_duals);
    let mut out = Vec::new();
    for g in &gens {
        for p in &duals {
            out.push((g.clone(), p.clone()));
        }
    }
    out
}

/// The generator on the opposite side matching `g` (for free-like modules).
pub(crate) fn dual_generator(module: &FunctionalModule, side: Side, g: &Sym) -> Option<Sym> {
    match (module.kind(), g) {
        (ModuleKind::Free { .. }, Sym::Coord(i, m)) => {
            let u = match side {
                Side::X => module.ring().left_unit(m),
                Side::Dual => module.ring().right_unit(m),
            };
            Some(Sym::Coord(*i, u))
        }
        (ModuleKind::DirectSum(a, _), Sym::Left(s)) => {
            dual_generator(a, side, s).map(|d| Sym::Left(Box::new(d)))
        }
        (ModuleKind::DirectSum(_, b), Sym::Right(s)) => {
            dual_generator(b, side, s).map(|d| Sym::Right(Box::new(d)))
        }
        (ModuleKind::Tensor(x, y), Sym::Tensor(a, b)) => match side {
            Side::X => {
                let gy = y.module().split_right(b).0;
                Some(Sym::tensor(
                    dual_generator(y.module(), Side::X, &gy)?,
                    dual_generator(x.module(), Side::X, a)?,
                ))
            }
            Side::Dual => {
                let gy = y.module().split_left_dual(a).1;
                Some(Sym::tensor(
                    dual_generator(x.module(), Side::Dual, b)?,
                    dual_generator(y.module(), Side::Dual, &gy)?,
                ))
            }
        },
        (ModuleKind::Table(t), _) => {
            let k = module.ring().coeff();
            match side {
                Side::X => {
                    let (_, u) = module.split_right(g);
                    let want = LinComb::basis(u, k);
                    t.xp_basis.iter().find(|p| module.pair_basis(p, g) == want).cloned()
                }
                Side::Dual => {
                    let (u, _) = module.split_left_dual(g);
                    let want = LinComb::basis(u, k);
                    t.x_basis.iter().find(|x| module.pair_basis(g, x) == want).cloned()
                }
            }
        }
        _ => None,
    }
}

/// Solves `Σ c_j v_j = target` for unknown scalars, where each `v_j` and
/// `target` is a list of vectors (one per equation block).
fn solve_combination<K: Ord + Clone>(
    k: &CoeffRing,
    columns: &[Vec<LinComb<K>>],
    target: &[LinComb<K>],
) -> Option<Vec<Coefficient>> {
    let mut keys: Vec<BTreeSet<K>> = vec![BTreeSet::new(); target.len()];
    for (b, t) in target.iter().enumerate() {
        keys[b].extend(t.keys().cloned());
        for col in columns {
            keys[b].extend(col[b].keys().cloned());
        }
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (b, ks) in keys.iter().enumerate() {
        for key in ks {
            rows.push(
                columns
                    .iter()
                    .map(|col| col[b].coefficient(key).cloned().unwrap_or_else(|| k.zero()))
                    .collect::<Vec<_>>(),
            );
            rhs.push(target[b].coefficient(key).cloned().unwrap_or_else(|| k.zero()));
        }
    }
    if columns.is_empty() {
        return rhs.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    if rows.is_empty() {
        return Some(vec![k.zero(); columns.len()]);
    }
    linsolve::solve(k, &rows, &rhs)
}

/// Witnesses for condition (FS): `Θ₁·xᵢ = xᵢ` and `φᵢ·Θ₂ = φᵢ`.
/// `Ok(None)` means no witness exists among the candidate generators.
pub fn fs_witness(
    module: &Arc<FunctionalModule>,
    xs: &[ModVector],
    phis: &[ModVector],
) -> Result<Option<(CompactOperator, CompactOperator)>> {
    for x in xs {
        module.check_vector(Side::X, x)?;
    }
    for p in phis {
        module.check_vector(Side::Dual, p)?;
    }
    let k = module.ring().coeff();
    let cands = candidates(module, xs, phis);
    let elems: Vec<CompactOperator> = cands
        .iter()
        .map(|(g, p)| CompactOperator {
            module: module.clone(),
            terms: normal_terms(module, &LinComb::basis(g.clone(), k), &LinComb::basis(p.clone(), k)),
        })
        .collect();
    let combine = |coeffs: Vec<Coefficient>| {
        let mut terms = LinComb::zero();
        for (e, c) in elems.iter().zip(&coeffs) {
            terms.add_scaled(&e.terms, c);
        }
        CompactOperator {
            module: module.clone(),
            terms,
        }
    };
    let cols1: Vec<Vec<ModVector>> = elems
        .iter()
        .map(|e| xs.iter().map(|x| theta_terms(e, x)).collect())
        .collect();
    let Some(c1) = solve_combination(k, &cols1, xs) else {
        return Ok(None);
    };
    let cols2: Vec<Vec<ModVector>> = elems
        .iter()
        .map(|e| phis.iter().map(|p| theta_right_terms(p, e)).collect())
        .collect();
    let Some(c2) = solve_combination(k, &cols2, phis) else {
        return Ok(None);
    };
    Ok(Some((combine(c1), combine(c2))))
}

/// A compact operator agreeing with `f` on every symbol of `test`, searched
/// among elementary tensors of the symbols in the images and the dual generators.
pub fn compact_decomposition(
    module: &Arc<FunctionalModule>,
    test: &[Sym],
    f: &dyn Fn(&Sym) -> ModVector,
) -> Option<CompactOperator> {
    let k = module.ring().coeff();
    let images: Vec<ModVector> = test.iter().map(f).collect();
    let mut xs_keys = BTreeSet::new();
    for img in &images {
        xs_keys.extend(img.keys().cloned());
    }
    let mut gens: BTreeSet<Sym> = xs_keys.iter().map(|s| module.split_right(s).0).collect();
    let mut duals: BTreeSet<Sym> = BTreeSet::new();
    if let ModuleKind::Table(t) = module.kind() {
        gens.extend(t.x_basis.iter().cloned());
        duals.extend(t.xp_basis.iter().cloned());
    } else {
        let scalars: BTreeSet<Monomial> = xs_keys.iter().map(|s| module.split_right(s).1).collect();
        for s in test {
            let g = module.split_right(s).0;
            if let Some(d) = dual_generator(module, Side::X, &g) {
                // the normal form of x·m ⊗ φ is x ⊗ m·φ
                for m in &scalars {
                    let moved = module.left_mul_dual(&LinComb::basis(m.clone(), k), &LinComb::basis(d.clone(), k));
                    duals.extend(moved.keys().cloned());
                }
                duals.insert(d);
            }
        }
    }
    let elems: Vec<LinComb<(Sym, Sym)>> = gens
        .iter()
        .flat_map(|g| {
            duals.iter().map(move |p| {
                normal_terms(module, &LinComb::basis(g.clone(), k), &LinComb::basis(p.clone(), k))
            })
        })
        .filter(|t| !t.is_zero())
        .collect();
    let testv: Vec<ModVector> = test.iter().map(|s| LinComb::basis(s.clone(), k)).collect();
    let cols: Vec<Vec<ModVector>> = elems
        .iter()
        .map(|t| {
            let e = CompactOperator {
                module: module.clone(),
                terms: t.clone(),
            };
            testv.iter().map(|y| theta_terms(&e, y)).collect()
        })
        .collect();
    let coeffs = solve_combination(k, &cols, &images)?;
    let mut terms = LinComb::zero();
    for (t, c) in elems.iter().zip(&coeffs) {
        terms.add_scaled(t, c);
    }
    Some(CompactOperator {
        module: module.clone(),
        terms,
    })
}
