use std::sync::Arc;

use serde_json::{json, Value};

use crate::abgroup::IntMatrix;
use crate::error::{Error, Result};
use crate::funcmod::{Correspondence, FunctionalHom, FunctionalModule, LeftAction, ModVector, Sym};
use crate::leavitt::{sequence_report, KPresets, SequenceReport};
use crate::ringcore::{CoeffRing, LinComb, Monomial, RingDescriptor, RingElement};

use super::{GroupWord, SelfSimilarGroup};

/// `x·g` as a basis symbol of `kG^{(X)}`.
pub fn letter_sym(x: usize, g: GroupWord) -> Sym {
    Sym::Coord(x, Monomial::Group(g))
}

/// `⟨Σ λ_x x·g_x, Σ μ_x x·h_x⟩ = Σ_x λ_x μ_x g_x⁻¹ h_x`.
pub fn nek_pairing(ring: &Arc<RingDescriptor>, xi: &ModVector, eta: &ModVector) -> Result<RingElement> {
    if ring.group().is_none() {
        return Err(Error::RingMismatch("pairing needs a group ring".into()));
    }
    let mut terms = LinComb::zero();
    for (a, c) in xi {
        for (b, d) in eta {
            match (a, b) {
                (Sym::Coord(x, Monomial::Group(g)), Sym::Coord(y, Monomial::Group(h))) => {
                    if x == y {
                        terms.add_term(Monomial::Group(g.inverse().mul(h)), c * d);
                    }
                }
                _ => {
                    return Err(Error::ModuleMismatch(format!(
                        "{} or {} is not a letter times a group element",
                        a, b
                    )))
                }
            }
        }
    }
    RingElement::new(ring.clone(), terms)
}

/// Outcome of the checks run while building the correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NekChecks {
    /// `g·(x·e) = g(x)·g|_x` for every generator and letter, and the
    /// generators act invertibly (`g⁻¹·(g·x) = x` up to the equality depth).
    pub module_law: bool,
    /// `⟨ξ, g·η⟩ = ⟨g⁻¹·ξ, η⟩` on letters, i.e. `g` acts adjointably.
    pub adjoint_law: bool,
    /// Every generator acts by a `d×d` matrix over `kG`.
    pub compact: bool,
    pub equality_depth: usize,
}

impl NekChecks {
    pub fn all_pass(&self) -> bool {
        self.module_law && self.adjoint_law && self.compact
    }
}

/// `kG^{(X)}` with `g·x = g(x)·g|_x`.
#[derive(Clone, Debug)]
pub struct NekCorrespondence {
    pub group: Arc<SelfSimilarGroup>,
    pub ring: Arc<RingDescriptor>,
    pub correspondence: Arc<Correspondence>,
    pub checks: NekChecks,
}

impl NekCorrespondence {
    /// Left action of `g` as an element of `M_X(kG)`.
    pub fn action_matrix(&self, g: &GroupWord) -> Result<RingElement> {
        let elt = RingElement::monomial(&self.ring, Monomial::Group(g.clone()))?;
        let k = self.correspondence.compact_left_action(&elt)?;
        k.to_matrix(&self.matrix_ring())
    }

    pub fn matrix_ring(&self) -> Arc<RingDescriptor> {
        RingDescriptor::matrix(self.ring.clone(), self.group.alphabet().to_vec())
    }

    pub fn to_json(&self) -> Value {
        let g = &self.group;
        json!({
            "alphabet": g.alphabet(),
            "generators": g.generators().iter().map(|gen| json!({
                "name": gen.name,
                "perm": gen.perm.iter().map(|&y| g.alphabet()[y].clone()).collect::<Vec<_>>(),
                "restrictions": gen.restrictions.iter().map(|w| {
                    let s = w.display(g).to_string();
                    if s.is_empty() { "e".to_string() } else { s }
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "equality_depth": self.checks.equality_depth,
            "equality_is_depth_bounded": true,
            "checks": {
                "module_law": self.checks.module_law,
                "adjoint_law": self.checks.adjoint_law,
                "compact": self.checks.compact,
            },
        })
    }
}

pub fn build_nek_correspondence(group: Arc<SelfSimilarGroup>, k: CoeffRing) -> Result<NekCorrespondence> {
    let ring = RingDescriptor::group_ring(k.clone(), group.clone());
    let module = Arc::new(FunctionalModule::free(ring.clone(), group.alphabet().to_vec()));
    let hom = Arc::new(FunctionalHom::identity(module.clone()));
    let corr = Arc::new(Correspondence::new(
        module.clone(),
        ring.clone(),
        LeftAction::SelfSimilar,
        Some(hom),
    )?);
    let d = group.degree();
    let depth = group.equality_depth();
    let gens: Vec<GroupWord> = (0..group.generators().len())
        .flat_map(|i| [GroupWord::generator(i), GroupWord::generator(i).inverse()])
        .collect();

    let mut module_law = true;
    for g in &gens {
        let gm = Monomial::Group(g.clone());
        let ginv = Monomial::Group(g.inverse());
        for x in 0..d {
            let (y, res) = group.step(g, x);
            let img = corr.act(&gm, &letter_sym(x, GroupWord::identity()));
            let want = RingElement::monomial(&ring, Monomial::Group(res))?;
            let want: ModVector = want.terms().iter().map(|(m, c)| (Sym::Coord(y, m.clone()), c.clone())).collect();
            if img != want {
                module_law = false;
            }
            let back = img.flat_map(|s| corr.act(&ginv, s));
            let back_ok = back.iter().count() == 1
                && back.iter().all(|(s, c)| match s {
                    Sym::Coord(z, Monomial::Group(w)) => {
                        *z == x && c.is_one() && group.group_equal(w, &GroupWord::identity())
                    }
                    _ => false,
                });
            if !back_ok {
                module_law = false;
            }
        }
    }

    let mut adjoint_law = true;
    for g in &gens {
        let gm = Monomial::Group(g.clone());
        let ginv = Monomial::Group(g.inverse());
        for x in 0..d {
            for y in 0..d {
                let xi = LinComb::basis(letter_sym(x, GroupWord::identity()), &k);
                let eta = LinComb::basis(letter_sym(y, GroupWord::identity()), &k);
                let lhs = nek_pairing(&ring, &xi, &eta.flat_map(|s| corr.act(&gm, s)))?;
                let rhs = nek_pairing(&ring, &xi.flat_map(|s| corr.act(&ginv, s)), &eta)?;
                if lhs != rhs {
                    adjoint_law = false;
                }
                // the same law through the stored dual action
                let phi = LinComb::basis(Sym::Coord(x, Monomial::Group(GroupWord::identity())), &k);
                let l2 = module.pair(&phi, &eta.flat_map(|s| corr.act(&gm, s)))?;
                let r2 = module.pair(&phi.flat_map(|s| corr.act_dual(s, &gm)), &eta)?;
                if l2 != r2 {
                    adjoint_law = false;
                }
            }
        }
    }

    let mut compact = true;
    let mr = RingDescriptor::matrix(ring.clone(), group.alphabet().to_vec());
    for g in &gens {
        let elt = RingElement::monomial(&ring, Monomial::Group(g.clone()))?;
        match corr.compact_left_action(&elt).and_then(|c| c.to_matrix(&mr)) {
            Ok(m) => {
                // one nonzero entry per column: the matrix of a monomial action
                compact &= m.terms().iter().count() == d;
            }
            Err(_) => compact = false,
        }
    }

    Ok(NekCorrespondence {
        group,
        ring,
        correspondence: corr,
        checks: NekChecks {
            module_law,
            adjoint_law,
            compact,
            equality_depth: depth,
        },
    })
}

/// Sequence data `1 − E_n(X)` for the Nekrashevych algebra.
///
/// For the trivial group `E_n(X)` is multiplication by `d`; otherwise the
/// caller must supply the action matrix on a finite quotient, and `None` is
/// returned without one.
pub fn nek_k_groups(
    nek: &NekCorrespondence,
    action: Option<&IntMatrix>,
    presets: &KPresets,
) -> Result<Option<SequenceReport>> {
    let matrix = match action {
        Some(m) => {
            if !m.is_square() {
                return Err(Error::Shape("action matrix must be square".into()));
            }
            m.clone()
        }
        None if nek.group.generators().is_empty() => {
            IntMatrix::from_rows(&[[nek.group.degree() as i64]])?
        }
        None => return Ok(None),
    };
    let map = IntMatrix::identity(matrix.rows()).checked_sub(&matrix)?;
    let labels: Vec<String> = (0..matrix.rows()).map(|i| format!("c{}", i)).collect();
    Ok(Some(sequence_report(&map, labels.clone(), labels, presets)))
}
