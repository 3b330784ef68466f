use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ringcore::{linsolve, Coefficient, LinComb, Monomial, RingDescriptor, RingElement};

use super::Correspondence;

/// Basis symbol of a module's `X` or `X′` side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Named(Arc<str>),
    /// `ε_i·m` in `R^{(I)}` (on `X′`: `m·ε_i*`).
    Coord(usize, Monomial),
    Left(Box<Sym>),
    Right(Box<Sym>),
    /// Reduced balanced tensor of a generator and a basis symbol.
    Tensor(Box<Sym>, Box<Sym>),
}

impl Sym {
    pub fn named(s: &str) -> Self {
        Sym::Named(Arc::from(s))
    }

    pub fn tensor(a: Sym, b: Sym) -> Self {
        Sym::Tensor(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Named(s) => write!(f, "{}", s),
            Sym::Coord(i, m) => write!(f, "ε{}·{:?}", i, m),
            Sym::Left(s) => write!(f, "L({})", s),
            Sym::Right(s) => write!(f, "R({})", s),
            Sym::Tensor(a, b) => write!(f, "{}⊗{}", a, b),
        }
    }
}

/// Element of `X` or `X′`.
pub type ModVector = LinComb<Sym>;

/// Which side of a functional module a symbol lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Dual,
}

/// Finite-dimensional module given by action and pairing tables over a
/// ring with a finite basis. Missing table entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableData {
    pub x_basis: Vec<Sym>,
    pub xp_basis: Vec<Sym>,
    /// `x·m`
    pub right_action: BTreeMap<(Sym, Monomial), ModVector>,
    /// `m·φ`
    pub left_action: BTreeMap<(Monomial, Sym), ModVector>,
    /// `φ(x)`, keyed `(φ, x)`
    pub pairing: BTreeMap<(Sym, Sym), LinComb<Monomial>>,
    /// Idempotent `u` with `x·u = x`.
    pub right_units: BTreeMap<Sym, Monomial>,
    /// Idempotent `u` with `u·φ = φ`.
    pub left_units: BTreeMap<Sym, Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Table(TableData),
    /// `R^{(I)}` with the standard pairing `Σ αᵢβᵢ`.
    Free { index: Vec<String> },
    DirectSum(Arc<FunctionalModule>, Arc<FunctionalModule>),
    /// `X ⊗_S Y` for an `R`–`S` correspondence `X` and an `S`–`T`
    /// correspondence `Y`; the result is a module over `T`.
    Tensor(Arc<Correspondence>, Arc<Correspondence>),
}

/// A functional module `(X, X′, g)` over a ring with local units.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionalModule {
    ring: Arc<RingDescriptor>,
    kind: ModuleKind,
}

impl FunctionalModule {
    pub fn from_table(ring: Arc<RingDescriptor>, table: TableData) -> Result<Self> {
        if ring.finite_basis().is_none() {
            return Err(Error::Unsupported(
                "table modules need a ring with a finite basis".into(),
            ));
        }
        for x in &table.x_basis {
            if !table.right_units.contains_key(x) {
                return Err(Error::Semantic(format!("no right unit for {}", x)));
            }
        }
        for p in &table.xp_basis {
            if !table.left_units.contains_key(p) {
                return Err(Error::Semantic(format!("no left unit for {}", p)));
            }
        }
        Ok(FunctionalModule {
            ring,
            kind: ModuleKind::Table(table),
        })
    }

    /// `R^{(I)}`
    pub fn free(ring: Arc<RingDescriptor>, index: Vec<String>) -> Self {
        FunctionalModule {
            ring,
            kind: ModuleKind::Free { index },
        }
    }

    /// The zero module over `ring`.
    pub fn zero(ring: Arc<RingDescriptor>) -> Self {
        Self::free(ring, Vec::new())
    }

    pub(crate) fn tensor_of(x: Arc<Correspondence>, y: Arc<Correspondence>) -> Result<Self> {
        if x.module().ring() != y.left_ring() {
            return Err(Error::RingMismatch(
                "middle rings of the tensor product differ".into(),
            ));
        }
        Ok(FunctionalModule {
            ring: y.module().ring().clone(),
            kind: ModuleKind::Tensor(x, y),
        })
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn contains(&self, side: Side, s: &Sym) -> bool {
        match (&self.kind, s) {
            (ModuleKind::Table(t), _) => match side {
                Side::X => t.x_basis.contains(s),
                Side::Dual => t.xp_basis.contains(s),
            },
            (ModuleKind::Free { index }, Sym::Coord(i, m)) => *i < index.len() && self.ring.contains(m),
            (ModuleKind::DirectSum(a, _), Sym::Left(s)) => a.contains(side, s),
            (ModuleKind::DirectSum(_, b), Sym::Right(s)) => b.contains(side, s),
            (ModuleKind::Tensor(x, y), Sym::Tensor(a, b)) => match side {
                Side::X => x.module().contains(Side::X, a) && y.module().contains(Side::X, b),
                Side::Dual => {
                    y.module().contains(Side::Dual, a) && x.module().contains(Side::Dual, b)
                }
            },
            _ => false,
        }
    }

    pub fn check_vector(&self, side: Side, v: &ModVector) -> Result<()> {
        for (s, c) in v {
            if !self.contains(side, s) {
                return Err(Error::ModuleMismatch(format!(
                    "{} is not a basis symbol of this module",
                    s
                )));
            }
            if !self.ring.coeff().contains(c) {
                return Err(Error::ModuleMismatch(format!(
                    "coefficient {} is outside {}",
                    c,
                    self.ring.coeff()
                )));
            }
        }
        Ok(())
    }

    /// `x·m` on a basis symbol of `X`.
    pub fn right_act(&self, x: &Sym, m: &Monomial) -> ModVector {
        match (&self.kind, x) {
            (ModuleKind::Table(t), _) => t
                .right_action
                .get(&(x.clone(), m.clone()))
                .cloned()
                .unwrap_or_default(),
            (ModuleKind::Free { .. }, Sym::Coord(i, a)) => coord_terms(*i, &self.ring.mul_monomials(a, m)),
            (ModuleKind::DirectSum(a, _), Sym::Left(s)) => wrap(&a.right_act(s, m), Sym::Left),
            (ModuleKind::DirectSum(_, b), Sym::Right(s)) => wrap(&b.right_act(s, m), Sym::Right),
            (ModuleKind::Tensor(_, y), Sym::Tensor(g, s)) => y
                .module()
                .right_act(s, m)
                .iter()
                .map(|(s2, c)| (Sym::tensor((**g).clone(), s2.clone()), c.clone()))
                .collect(),
            _ => panic!("symbol {} is not in this module", x),
        }
    }

    /// `m·φ` on a basis symbol of `X′`.
    pub fn left_act_dual(&self, m: &Monomial, p: &Sym) -> ModVector {
        match (&self.kind, p) {
            (ModuleKind::Table(t), _) => t
                .left_action
                .get(&(m.clone(), p.clone()))
                .cloned()
                .unwrap_or_default(),
            (ModuleKind::Free { .. }, Sym::Coord(i, a)) => coord_terms(*i, &self.ring.mul_monomials(m, a)),
            (ModuleKind::DirectSum(a, _), Sym::Left(s)) => wrap(&a.left_act_dual(m, s), Sym::Left),
            (ModuleKind::DirectSum(_, b), Sym::Right(s)) => wrap(&b.left_act_dual(m, s), Sym::Right),
            (ModuleKind::Tensor(_, y), Sym::Tensor(s, g)) => y
                .module()
                .left_act_dual(m, s)
                .iter()
                .map(|(s2, c)| (Sym::tensor(s2.clone(), (**g).clone()), c.clone()))
                .collect(),
            _ => panic!("symbol {} is not in this module", p),
        }
    }

    /// `φ(x)` on basis symbols, as ring terms.
    pub fn pair_basis(&self, p: &Sym, x: &Sym) -> LinComb<Monomial> {
        match (&self.kind, p, x) {
            (ModuleKind::Table(t), _, _) => t
                .pairing
                .get(&(p.clone(), x.clone()))
                .cloned()
                .unwrap_or_default(),
            (ModuleKind::Free { .. }, Sym::Coord(i, a), Sym::Coord(j, b)) => {
                if i == j {
                    self.ring.mul_monomials(a, b)
                } else {
                    LinComb::zero()
                }
            }
            (ModuleKind::DirectSum(a, _), Sym::Left(p), Sym::Left(x)) => a.pair_basis(p, x),
            (ModuleKind::DirectSum(_, b), Sym::Right(p), Sym::Right(x)) => b.pair_basis(p, x),
            (ModuleKind::DirectSum(..), _, _) => LinComb::zero(),
            (ModuleKind::Tensor(xc, yc), Sym::Tensor(psi, gphi), Sym::Tensor(gx, y)) => {
                // (ψ ⊗ φ)(x ⊗ y) = ψ(φ(x)·y)
                let inner = xc.module().pair_basis(gphi, gx);
                let moved = yc.act_terms(&inner, y);
                let ym = yc.module();
                moved.iter().fold(LinComb::zero(), |mut acc, (s, c)| {
                    acc.add_scaled(&ym.pair_basis(psi, s), c);
                    acc
                })
            }
            _ => panic!("symbols {} and {} are not in this module", p, x),
        }
    }

    /// `x = gen·m` with `gen` a canonical generator.
    pub fn split_right(&self, x: &Sym) -> (Sym, Monomial) {
        match (&self.kind, x) {
            (ModuleKind::Table(t), _) => (x.clone(), t.right_units[x].clone()),
            (ModuleKind::Free { .. }, Sym::Coord(i, m)) => {
                (Sym::Coord(*i, self.ring.left_unit(m)), m.clone())
            }
            (ModuleKind::DirectSum(a, _), Sym::Left(s)) => {
                let (g, m) = a.split_right(s);
                (Sym::Left(Box::new(g)), m)
            }
            (ModuleKind::DirectSum(_, b), Sym::Right(s)) => {
                let (g, m) = b.split_right(s);
                (Sym::Right(Box::new(g)), m)
            }
            (ModuleKind::Tensor(_, y), Sym::Tensor(g, s)) => {
                let (gy, m) = y.module().split_right(s);
                (Sym::tensor((**g).clone(), gy), m)
            }
            _ => panic!("symbol {} is not in this module", x),
        }
    }

    /// `φ = m·gen` with `gen` a canonical generator of `X′`.
    pub fn split_left_dual(&self, p: &Sym) -> (Monomial, Sym) {
        match (&self.kind, p) {
            (ModuleKind::Table(t), _) => (t.left_units[p].clone(), p.clone()),
            (ModuleKind::Free { .. }, Sym::Coord(i, m)) => {
                (m.clone(), Sym::Coord(*i, self.ring.right_unit(m)))
            }
            (ModuleKind::DirectSum(a, _), Sym::Left(s)) => {
                let (m, g) = a.split_left_dual(s);
                (m, Sym::Left(Box::new(g)))
            }
            (ModuleKind::DirectSum(_, b), Sym::Right(s)) => {
                let (m, g) = b.split_left_dual(s);
                (m, Sym::Right(Box::new(g)))
            }
            (ModuleKind::Tensor(_, y), Sym::Tensor(s, g)) => {
                let (m, gy) = y.module().split_left_dual(s);
                (m, Sym::tensor(gy, (**g).clone()))
            }
            _ => panic!("symbol {} is not in this module", p),
        }
    }

    /// A finite `k`-basis of `X` (or `X′`), when the module is finite dimensional.
    pub fn finite_basis(&self, side: Side) -> Option<Vec<Sym>> {
        match &self.kind {
            ModuleKind::Table(t) => Some(match side {
                Side::X => t.x_basis.clone(),
                Side::Dual => t.xp_basis.clone(),
            }),
            ModuleKind::Free { index } => {
                let b = self.ring.finite_basis()?;
                Some(
                    (0..index.len())
                        .flat_map(|i| b.iter().map(move |m| Sym::Coord(i, m.clone())))
                        .collect(),
                )
            }
            ModuleKind::DirectSum(a, b) => {
                let mut out: Vec<Sym> = a
                    .finite_basis(side)?
                    .into_iter()
                    .map(|s| Sym::Left(Box::new(s)))
                    .collect();
                out.extend(b.finite_basis(side)?.into_iter().map(|s| Sym::Right(Box::new(s))));
                Some(out)
            }
            ModuleKind::Tensor(..) => {
                self.ring.finite_basis()?;
                let gens = self.generators(side);
                let mut out = BTreeSet::new();
                for g in gens {
                    for m in self.ring.finite_basis()? {
                        let v = match side {
                            Side::X => self.right_act(&g, &m),
                            Side::Dual => self.left_act_dual(&m, &g),
                        };
                        out.extend(v.keys().cloned());
                    }
                }
                Some(out.into_iter().collect())
            }
        }
    }

    /// Basis symbols generating `X` as a right module (`X′` as a left module).
    pub fn generators(&self, side: Side) -> Vec<Sym> {
        match &self.kind {
            ModuleKind::Table(t) => match side {
                Side::X => t.x_basis.clone(),
                Side::Dual => t.xp_basis.clone(),
            },
            ModuleKind::Free { index } => {
                let units = self.ring.unit_generators();
                (0..index.len())
                    .flat_map(|i| units.iter().map(move |u| Sym::Coord(i, u.clone())))
                    .collect()
            }
            ModuleKind::DirectSum(a, b) => {
                let mut out: Vec<Sym> = a
                    .generators(side)
                    .into_iter()
                    .map(|s| Sym::Left(Box::new(s)))
                    .collect();
                out.extend(b.generators(side).into_iter().map(|s| Sym::Right(Box::new(s))));
                out
            }
            ModuleKind::Tensor(x, y) => {
                let mut out = BTreeSet::new();
                match side {
                    Side::X => {
                        for gx in x.module().generators(Side::X) {
                            for gy in y.module().generators(Side::X) {
                                let t = self.tensor_basis(&gx, &gy);
                                out.extend(t.keys().cloned());
                            }
                        }
                    }
                    Side::Dual => {
                        for gy in y.module().generators(Side::Dual) {
                            for gx in x.module().generators(Side::Dual) {
                                let t = self.tensor_basis_dual(&gy, &gx);
                                out.extend(t.keys().cloned());
                            }
                        }
                    }
                }
                out.into_iter().collect()
            }
        }
    }

    /// Normal form of `a ⊗ b` for basis symbols `a ∈ X`, `b ∈ Y` of a tensor module.
    pub fn tensor_basis(&self, a: &Sym, b: &Sym) -> ModVector {
        let ModuleKind::Tensor(x, y) = &self.kind else {
            panic!("not a tensor module");
        };
        let (g, m) = x.module().split_right(a);
        y.act(&m, b)
            .iter()
            .map(|(s, c)| (Sym::tensor(g.clone(), s.clone()), c.clone()))
            .collect()
    }

    /// Normal form of `ψ ⊗ φ` for `ψ ∈ Y′`, `φ ∈ X′` of a tensor module.
    pub fn tensor_basis_dual(&self, psi: &Sym, phi: &Sym) -> ModVector {
        let ModuleKind::Tensor(x, y) = &self.kind else {
            panic!("not a tensor module");
        };
        let (m, g) = x.module().split_left_dual(phi);
        y.act_dual(psi, &m)
            .iter()
            .map(|(s, c)| (Sym::tensor(s.clone(), g.clone()), c.clone()))
            .collect()
    }

    /// Bilinear extension of the pairing.
    pub fn pair(&self, phi: &ModVector, x: &ModVector) -> Result<RingElement> {
        self.check_vector(Side::Dual, phi)?;
        self.check_vector(Side::X, x)?;
        Ok(RingElement::from_terms(self.ring.clone(), self.pair_terms(phi, x)))
    }

    pub(crate) fn pair_terms(&self, phi: &ModVector, x: &ModVector) -> LinComb<Monomial> {
        let mut out = LinComb::zero();
        for (p, cp) in phi {
            for (s, cs) in x {
                out.add_scaled(&self.pair_basis(p, s), &(cp * cs));
            }
        }
        out
    }

    /// `x·r`
    pub fn right_mul(&self, x: &ModVector, r: &LinComb<Monomial>) -> ModVector {
        let mut out = LinComb::zero();
        for (s, c) in x {
            for (m, d) in r {
                out.add_scaled(&self.right_act(s, m), &(c * d));
            }
        }
        out
    }

    /// `r·φ`
    pub fn left_mul_dual(&self, r: &LinComb<Monomial>, phi: &ModVector) -> ModVector {
        let mut out = LinComb::zero();
        for (m, d) in r {
            for (s, c) in phi {
                out.add_scaled(&self.left_act_dual(m, s), &(c * d));
            }
        }
        out
    }

    /// The bimodule laws `g(m·φ, x) = m·g(φ, x)` and `g(φ, x·m) = g(φ, x)·m`
    /// on all basis pairs and ring basis symbols (finite modules only).
    pub fn check_pairing_laws(&self) -> Result<bool> {
        let (Some(xs), Some(ps), Some(ms)) = (
            self.finite_basis(Side::X),
            self.finite_basis(Side::Dual),
            self.ring.finite_basis(),
        ) else {
            return Err(Error::Unsupported("pairing laws need finite bases".into()));
        };
        let mul_left = |m: &Monomial, r: &LinComb<Monomial>| -> LinComb<Monomial> {
            r.flat_map(|a| self.ring.mul_monomials(m, a))
        };
        let mul_right = |r: &LinComb<Monomial>, m: &Monomial| -> LinComb<Monomial> {
            r.flat_map(|a| self.ring.mul_monomials(a, m))
        };
        for p in &ps {
            for x in &xs {
                let g = self.pair_basis(p, x);
                for m in &ms {
                    let lhs = self.pair_terms(&self.left_act_dual(m, p), &LinComb::basis(x.clone(), self.ring.coeff()));
                    if lhs != mul_left(m, &g) {
                        return Ok(false);
                    }
                    let rhs = self.pair_terms(&LinComb::basis(p.clone(), self.ring.coeff()), &self.right_act(x, m));
                    if rhs != mul_right(&g, m) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Non-degeneracy on the finite basis span (generators for infinite modules):
    /// the pairing matrix has no nonzero null vector on either side.
    pub fn check_non_degenerate(&self) -> bool {
        let xs = self
            .finite_basis(Side::X)
            .unwrap_or_else(|| self.generators(Side::X));
        let ps = self
            .finite_basis(Side::Dual)
            .unwrap_or_else(|| self.generators(Side::Dual));
        let k = self.ring.coeff();
        let table: Vec<Vec<LinComb<Monomial>>> = ps
            .iter()
            .map(|p| xs.iter().map(|x| self.pair_basis(p, x)).collect())
            .collect();
        let mut monos = BTreeSet::new();
        for row in &table {
            for e in row {
                monos.extend(e.keys().cloned());
            }
        }
        let monos: Vec<Monomial> = monos.into_iter().collect();
        let coeff = |e: &LinComb<Monomial>, m: &Monomial| e.coefficient(m).cloned().unwrap_or_else(|| k.zero());
        // rows: X′ basis; columns: (x, monomial)
        let left: Vec<Vec<Coefficient>> = table
            .iter()
            .map(|row| {
                row.iter()
                    .flat_map(|e| monos.iter().map(move |m| coeff(e, m)))
                    .collect()
            })
            .collect();
        let right: Vec<Vec<Coefficient>> = (0..xs.len())
            .map(|j| {
                table
                    .iter()
                    .flat_map(|row| monos.iter().map(|m| coeff(&row[j], m)).collect::<Vec<_>>())
                    .collect()
            })
            .collect();
        linsolve::rows_independent(k, &left) && linsolve::rows_independent(k, &right)
    }
}

fn coord_terms(i: usize, r: &LinComb<Monomial>) -> ModVector {
    r.iter().map(|(m, c)| (Sym::Coord(i, m.clone()), c.clone())).collect()
}

fn wrap(v: &ModVector, f: fn(Box<Sym>) -> Sym) -> ModVector {
    v.iter().map(|(s, c)| (f(Box::new(s.clone())), c.clone())).collect()
}

/// `X ⊕ Y` with the block pairing `g + h`.
pub fn direct_sum(a: &Arc<FunctionalModule>, b: &Arc<FunctionalModule>) -> Result<FunctionalModule> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch("direct sum over different rings".into()));
    }
    Ok(FunctionalModule {
        ring: a.ring().clone(),
        kind: ModuleKind::DirectSum(a.clone(), b.clone()),
    })
}
