use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::leavitt::{lpa, LpaWord, Quiver};
use crate::selfsim::{GroupWord, SelfSimilarGroup};

use super::{CoeffRing, Coefficient, LinComb};

/// Basis symbol of a bundled ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    /// Unit of the scalar ring `k`.
    One,
    /// Idempotent `1_v` of `k^{(S)}`.
    Vertex(usize),
    /// `E_{row,col}(entry)` with `entry` a basis symbol of the base ring.
    MatrixUnit {
        row: usize,
        col: usize,
        entry: Box<Monomial>,
    },
    /// `xⁿ·c` with `c` a basis symbol of the base ring.
    Power { exp: i64, coeff: Box<Monomial> },
    Group(GroupWord),
    Path(LpaWord),
}

/// Finite presentations bundled as quotient rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    /// `L_k(Q)` with basis the reduced `p q*` words.
    Leavitt(Arc<Quiver>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Scalar,
    DirectSum { vertices: Vec<String> },
    Matrix { base: Arc<RingDescriptor>, index: Vec<String> },
    Laurent { base: Arc<RingDescriptor> },
    GroupRing { group: Arc<SelfSimilarGroup> },
    FreeQuotient(Presentation),
}

/// A ring with local units over an exact coefficient ring, with its
/// multiplication rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    coeff: CoeffRing,
    kind: RingKind,
}

impl RingDescriptor {
    pub fn scalar(k: CoeffRing) -> Arc<Self> {
        Arc::new(RingDescriptor {
            coeff: k,
            kind: RingKind::Scalar,
        })
    }

    /// `k^{(S)} = ⊕_{v∈S} k·1_v`
    pub fn direct_sum(k: CoeffRing, vertices: Vec<String>) -> Arc<Self> {
        Arc::new(RingDescriptor {
            coeff: k,
            kind: RingKind::DirectSum { vertices },
        })
    }

    /// `M_I(R)`, finitely supported matrices.
    pub fn matrix(base: Arc<RingDescriptor>, index: Vec<String>) -> Arc<Self> {
        Arc::new(RingDescriptor {
            coeff: base.coeff.clone(),
            kind: RingKind::Matrix { base, index },
        })
    }

    /// `R[x, x⁻¹]` with `x` central.
    pub fn laurent(base: Arc<RingDescriptor>) -> Arc<Self> {
        Arc::new(RingDescriptor {
            coeff: base.coeff.clone(),
            kind: RingKind::Laurent { base },
        })
    }

    pub fn group_ring(k: CoeffRing, group: Arc<SelfSimilarGroup>) -> Arc<Self> {
        Arc::new(RingDescriptor {
            coeff: k,
            kind: RingKind::GroupRing { group },
        })
    }

    pub fn leavitt(k: CoeffRing, quiver: Arc<Quiver>) -> Arc<Self> {
        Arc::new(RingDescriptor {
            coeff: k,
            kind: RingKind::FreeQuotient(Presentation::Leavitt(quiver)),
        })
    }

    pub fn coeff(&self) -> &CoeffRing {
        &self.coeff
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn quiver(&self) -> Option<&Arc<Quiver>> {
        match &self.kind {
            RingKind::FreeQuotient(Presentation::Leavitt(q)) => Some(q),
            _ => None,
        }
    }

    pub fn group(&self) -> Option<&Arc<SelfSimilarGroup>> {
        match &self.kind {
            RingKind::GroupRing { group } => Some(group),
            _ => None,
        }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        match (&self.kind, m) {
            (RingKind::Scalar, Monomial::One) => true,
            (RingKind::DirectSum { vertices }, Monomial::Vertex(v)) => *v < vertices.len(),
            (RingKind::Matrix { base, index }, Monomial::MatrixUnit { row, col, entry }) => {
                *row < index.len() && *col < index.len() && base.contains(entry)
            }
            (RingKind::Laurent { base }, Monomial::Power { coeff, .. }) => base.contains(coeff),
            (RingKind::GroupRing { group }, Monomial::Group(w)) => w
                .letters()
                .iter()
                .all(|l| l.generator < group.generators().len()),
            (RingKind::FreeQuotient(Presentation::Leavitt(q)), Monomial::Path(w)) => {
                w.is_valid(q) && w.is_reduced(q)
            }
            _ => false,
        }
    }

    /// Product of two basis symbols as a combination of basis symbols.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> LinComb<Monomial> {
        let k = &self.coeff;
        match (&self.kind, a, b) {
            (RingKind::Scalar, Monomial::One, Monomial::One) => LinComb::basis(Monomial::One, k),
            (RingKind::DirectSum { .. }, Monomial::Vertex(v), Monomial::Vertex(w)) => {
                if v == w {
                    LinComb::basis(Monomial::Vertex(*v), k)
                } else {
                    LinComb::zero()
                }
            }
            (
                RingKind::Matrix { base, .. },
                Monomial::MatrixUnit { row, col, entry },
                Monomial::MatrixUnit {
                    row: r2,
                    col: c2,
                    entry: e2,
                },
            ) => {
                if col != r2 {
                    return LinComb::zero();
                }
                base.mul_monomials(entry, e2)
                    .iter()
                    .map(|(m, c)| {
                        (
                            Monomial::MatrixUnit {
                                row: *row,
                                col: *c2,
                                entry: Box::new(m.clone()),
                            },
                            c.clone(),
                        )
                    })
                    .collect()
            }
            (
                RingKind::Laurent { base },
                Monomial::Power { exp, coeff },
                Monomial::Power { exp: e2, coeff: c2 },
            ) => base
                .mul_monomials(coeff, c2)
                .iter()
                .map(|(m, c)| {
                    (
                        Monomial::Power {
                            exp: exp + e2,
                            coeff: Box::new(m.clone()),
                        },
                        c.clone(),
                    )
                })
                .collect(),
            (RingKind::GroupRing { .. }, Monomial::Group(g), Monomial::Group(h)) => {
                LinComb::basis(Monomial::Group(g.mul(h)), k)
            }
            (RingKind::FreeQuotient(Presentation::Leavitt(q)), Monomial::Path(u), Monomial::Path(w)) => {
                let prod = lpa::mul_words(q, k, u, w);
                prod.iter()
                    .map(|(w, c)| (Monomial::Path(w.clone()), c.clone()))
                    .collect()
            }
            _ => panic!("monomials do not belong to this ring"),
        }
    }

    /// Idempotent basis symbol `l` with `l·m = m`.
    pub fn left_unit(&self, m: &Monomial) -> Monomial {
        match (&self.kind, m) {
            (RingKind::Scalar, _) => Monomial::One,
            (RingKind::DirectSum { .. }, Monomial::Vertex(v)) => Monomial::Vertex(*v),
            (RingKind::Matrix { base, .. }, Monomial::MatrixUnit { row, entry, .. }) => {
                Monomial::MatrixUnit {
                    row: *row,
                    col: *row,
                    entry: Box::new(base.left_unit(entry)),
                }
            }
            (RingKind::Laurent { base }, Monomial::Power { coeff, .. }) => Monomial::Power {
                exp: 0,
                coeff: Box::new(base.left_unit(coeff)),
            },
            (RingKind::GroupRing { .. }, _) => Monomial::Group(GroupWord::identity()),
            (RingKind::FreeQuotient(Presentation::Leavitt(q)), Monomial::Path(w)) => {
                Monomial::Path(LpaWord::vertex(w.source(q)))
            }
            _ => panic!("monomial does not belong to this ring"),
        }
    }

    /// Idempotent basis symbol `u` with `m·u = m`.
    pub fn right_unit(&self, m: &Monomial) -> Monomial {
        match (&self.kind, m) {
            (RingKind::Matrix { base, .. }, Monomial::MatrixUnit { col, entry, .. }) => {
                Monomial::MatrixUnit {
                    row: *col,
                    col: *col,
                    entry: Box::new(base.right_unit(entry)),
                }
            }
            (RingKind::Laurent { base }, Monomial::Power { coeff, .. }) => Monomial::Power {
                exp: 0,
                coeff: Box::new(base.right_unit(coeff)),
            },
            (RingKind::FreeQuotient(Presentation::Leavitt(q)), Monomial::Path(w)) => {
                Monomial::Path(LpaWord::vertex(w.co_source(q)))
            }
            _ => self.left_unit(m),
        }
    }

    /// Orthogonal idempotent basis symbols that generate the ring as a
    /// one-sided module, when there are finitely many.
    pub fn unit_generators(&self) -> Vec<Monomial> {
        match &self.kind {
            RingKind::Scalar => vec![Monomial::One],
            RingKind::DirectSum { vertices } => (0..vertices.len()).map(Monomial::Vertex).collect(),
            RingKind::Matrix { base, index } => (0..index.len())
                .flat_map(|i| {
                    base.unit_generators().into_iter().map(move |u| Monomial::MatrixUnit {
                        row: i,
                        col: i,
                        entry: Box::new(u),
                    })
                })
                .collect(),
            RingKind::Laurent { base } => base
                .unit_generators()
                .into_iter()
                .map(|u| Monomial::Power {
                    exp: 0,
                    coeff: Box::new(u),
                })
                .collect(),
            RingKind::GroupRing { .. } => vec![Monomial::Group(GroupWord::identity())],
            RingKind::FreeQuotient(Presentation::Leavitt(q)) => (0..q.vertex_count())
                .map(|v| Monomial::Path(LpaWord::vertex(v)))
                .collect(),
        }
    }

    /// The `k`-basis when the ring is finite dimensional.
    pub fn finite_basis(&self) -> Option<Vec<Monomial>> {
        match &self.kind {
            RingKind::Scalar | RingKind::DirectSum { .. } => Some(self.unit_generators()),
            RingKind::Matrix { base, index } => {
                let b = base.finite_basis()?;
                let mut out = Vec::new();
                for i in 0..index.len() {
                    for j in 0..index.len() {
                        for m in &b {
                            out.push(Monomial::MatrixUnit {
                                row: i,
                                col: j,
                                entry: Box::new(m.clone()),
                            });
                        }
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        match (&self.kind, m) {
            (RingKind::Scalar, Monomial::One) => "1".into(),
            (RingKind::DirectSum { vertices }, Monomial::Vertex(v)) => {
                format!("1_{}", vertices.get(*v).map_or("?", |s| s.as_str()))
            }
            (RingKind::Matrix { base, index }, Monomial::MatrixUnit { row, col, entry }) => format!(
                "E[{},{}]({})",
                index.get(*row).map_or("?", |s| s.as_str()),
                index.get(*col).map_or("?", |s| s.as_str()),
                base.format_monomial(entry)
            ),
            (RingKind::Laurent { base }, Monomial::Power { exp, coeff }) => {
                let c = base.format_monomial(coeff);
                match exp {
                    0 => c,
                    1 => format!("x·{}", c),
                    e => format!("x^{}·{}", e, c),
                }
            }
            (RingKind::GroupRing { group }, Monomial::Group(w)) => w.display(group).to_string(),
            (RingKind::FreeQuotient(Presentation::Leavitt(q)), Monomial::Path(w)) => {
                w.display(q).to_string()
            }
            _ => format!("{:?}", m),
        }
    }

    /// Merges basis words that the group's equality oracle identifies.
    fn normalize(&self, terms: LinComb<Monomial>) -> LinComb<Monomial> {
        let RingKind::GroupRing { group } = &self.kind else {
            return terms;
        };
        let mut reps: Vec<GroupWord> = vec![GroupWord::identity()];
        let mut out = LinComb::zero();
        let mut entries: Vec<(GroupWord, Coefficient)> = terms
            .iter()
            .map(|(m, c)| match m {
                Monomial::Group(w) => (w.clone(), c.clone()),
                _ => unreachable!("group ring terms are group words"),
            })
            .collect();
        entries.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        for (w, c) in entries {
            let rep = reps
                .iter()
                .find(|r| **r == w || group.group_equal(r, &w))
                .cloned();
            let rep = rep.unwrap_or_else(|| {
                reps.push(w.clone());
                w
            });
            out.add_term(Monomial::Group(rep), c);
        }
        out
    }
}

/// Element of a [`RingDescriptor`]: a finite combination of basis symbols.
#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Arc<RingDescriptor>,
    terms: LinComb<Monomial>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        if !same_ring(&self.ring, &other.ring) {
            return false;
        }
        if self.terms == other.terms {
            return true;
        }
        // group words may name the same element differently
        matches!(self.ring.kind, RingKind::GroupRing { .. })
            && self.ring.normalize(self.terms.minus(&other.terms)).is_zero()
    }
}

impl Eq for RingElement {}

fn same_ring(a: &Arc<RingDescriptor>, b: &Arc<RingDescriptor>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl RingElement {
    pub fn new(ring: Arc<RingDescriptor>, terms: LinComb<Monomial>) -> Result<Self> {
        for (m, c) in &terms {
            if !ring.contains(m) {
                return Err(Error::UnknownSymbol {
                    symbol: ring.format_monomial(m),
                    context: "the declared ring".into(),
                });
            }
            if !ring.coeff.contains(c) {
                return Err(Error::RingMismatch(format!(
                    "coefficient {} is not in {}",
                    c, ring.coeff
                )));
            }
        }
        let terms = ring.normalize(terms);
        Ok(RingElement { ring, terms })
    }

    /// Trusted constructor for terms produced by the ring's own operations.
    pub(crate) fn from_terms(ring: Arc<RingDescriptor>, terms: LinComb<Monomial>) -> Self {
        let terms = ring.normalize(terms);
        RingElement { ring, terms }
    }

    pub fn zero(ring: &Arc<RingDescriptor>) -> Self {
        RingElement {
            ring: ring.clone(),
            terms: LinComb::zero(),
        }
    }

    pub fn monomial(ring: &Arc<RingDescriptor>, m: Monomial) -> Result<Self> {
        let k = ring.coeff.clone();
        Self::new(ring.clone(), LinComb::basis(m, &k))
    }

    pub fn scaled_monomial(ring: &Arc<RingDescriptor>, m: Monomial, c: Coefficient) -> Result<Self> {
        Self::new(ring.clone(), LinComb::single(m, c))
    }

    /// `1_v` by vertex index in a direct sum or Leavitt ring.
    pub fn vertex(ring: &Arc<RingDescriptor>, v: usize) -> Result<Self> {
        let m = match ring.kind() {
            RingKind::FreeQuotient(Presentation::Leavitt(_)) => Monomial::Path(LpaWord::vertex(v)),
            _ => Monomial::Vertex(v),
        };
        Self::monomial(ring, m)
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check_same(&self, other: &RingElement) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                "operands belong to different rings".into(),
            ))
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_terms(self.ring.clone(), self.terms.plus(&other.terms)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_terms(self.ring.clone(), self.terms.minus(&other.terms)))
    }

    pub fn neg(&self) -> Self {
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.negated(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        Self::from_terms(self.ring.clone(), self.terms.scaled(c))
    }

    pub fn mul(&self, other: &RingElement) -> Result<Self> {
        self.check_same(other)?;
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&self.ring.mul_monomials(a, b), &(ca * cb));
            }
        }
        Ok(Self::from_terms(self.ring.clone(), out))
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self).map(|sq| sq == *self).unwrap_or(false)
    }

    /// Left and right support idempotents of every term.
    fn support_units(&self) -> BTreeSet<Monomial> {
        let mut units = BTreeSet::new();
        for m in self.terms.keys() {
            units.insert(self.ring.left_unit(m));
            units.insert(self.ring.right_unit(m));
        }
        units
    }

    pub fn format(&self) -> String {
        self.to_string()
    }
}

/// An idempotent `e` with `e·r = r·e = r` for every input.
pub fn local_unit_for(ring: &Arc<RingDescriptor>, elements: &[RingElement]) -> Result<RingElement> {
    let mut units = BTreeSet::new();
    for r in elements {
        if !same_ring(ring, &r.ring) {
            return Err(Error::RingMismatch("element outside the ring".into()));
        }
        units.extend(r.support_units());
    }
    let k = ring.coeff().clone();
    let terms = units.into_iter().map(|u| (u, k.one())).collect();
    Ok(RingElement::from_terms(ring.clone(), terms))
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let name = self.ring.format_monomial(m);
            if c.is_one() {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}*{}", c, name)?;
            }
        }
        Ok(())
    }
}
