use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::funcmod::{ModVector, Side, Sym};
use crate::ringcore::{Coefficient, LinComb, Monomial};

use super::operator::{Evaluator, TruncatedFockOperator};
use super::space::{FockKey, TruncatedFock};
use super::word::{FockWord, Letter, WordSum};

/// Candidate covariant representation `(S, T, σ)` with values in the
/// Toeplitz ring, given on basis generators and extended linearly.
#[derive(Clone, Debug, Default)]
pub struct Representation {
    pub t_map: BTreeMap<Sym, WordSum>,
    pub s_map: BTreeMap<Sym, WordSum>,
    pub sigma: BTreeMap<Monomial, WordSum>,
}

impl Representation {
    /// `T(x) = T_x`, `S(φ) = T_φ`, `σ(r) = r`.
    pub fn canonical(fock: &TruncatedFock) -> Self {
        let k = fock.ring().coeff().clone();
        let one = k.one();
        let gen = |l: Letter| WordSum::word(one.clone(), FockWord::letter(l));
        let mut rep = Representation::default();
        if fock.depth() >= 1 {
            for key in fock.basis(Side::X, 1) {
                if let FockKey::Tensor(_, s) = key {
                    rep.t_map
                        .insert(s.clone(), gen(Letter::Create(LinComb::basis(s.clone(), &k))));
                }
            }
            for key in fock.basis(Side::Dual, 1) {
                if let FockKey::Tensor(_, s) = key {
                    rep.s_map
                        .insert(s.clone(), gen(Letter::Annihilate(LinComb::basis(s.clone(), &k))));
                }
            }
        }
        for key in fock.basis(Side::X, 0) {
            if let FockKey::Scalar(m) = key {
                rep.sigma
                    .insert(m.clone(), gen(Letter::Scalar(LinComb::basis(m.clone(), &k))));
            }
        }
        rep
    }

    pub fn with_t_scaled(mut self, c: &Coefficient) -> Self {
        for w in self.t_map.values_mut() {
            *w = w.scaled(c);
        }
        self
    }

    fn extend(map: &BTreeMap<Sym, WordSum>, v: &ModVector, what: &str) -> Result<WordSum> {
        let mut out = WordSum::zero();
        for (s, c) in v {
            let w = map.get(s).ok_or_else(|| Error::UnknownSymbol {
                symbol: s.to_string(),
                context: what.to_string(),
            })?;
            out = out.plus(&w.scaled(c));
        }
        Ok(out)
    }

    pub fn t(&self, x: &ModVector) -> Result<WordSum> {
        Self::extend(&self.t_map, x, "T")
    }

    pub fn s(&self, phi: &ModVector) -> Result<WordSum> {
        Self::extend(&self.s_map, phi, "S")
    }

    pub fn sigma(&self, r: &LinComb<Monomial>) -> Result<WordSum> {
        let mut out = WordSum::zero();
        for (m, c) in r {
            let w = self.sigma.get(m).ok_or_else(|| Error::UnknownSymbol {
                symbol: format!("{:?}", m),
                context: "sigma".into(),
            })?;
            out = out.plus(&w.scaled(c));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CovariantReport {
    pub holds: bool,
    /// Source degrees on which at least one relation was compared.
    pub checked_degrees: BTreeSet<usize>,
    pub failures: Vec<String>,
}

struct Checker<'a, 'b> {
    ev: &'b mut Evaluator<'a>,
    report: CovariantReport,
}

impl Checker<'_, '_> {
    fn compare(&mut self, label: impl FnOnce() -> String, lhs: &WordSum, rhs: &WordSum) -> Result<()> {
        let a = self.ev.pi0(lhs)?;
        let b = self.ev.pi0(rhs)?;
        let common: BTreeSet<usize> = a.coverage().intersection(b.coverage()).copied().collect();
        self.report.checked_degrees.extend(common.iter().copied());
        if !agree(&a, &b) {
            self.report.failures.push(label());
        }
        Ok(())
    }
}

fn agree(a: &TruncatedFockOperator, b: &TruncatedFockOperator) -> bool {
    a.agrees_with(b)
}

/// Checks the bimodule laws for `(S, T)` over `σ`, multiplicativity of `σ`
/// and `σ(g(φ⊗x)) = S(φ)T(x)` on all basis generators, each compared under
/// the canonical representation on the degrees within budget.
pub fn covariant_check(fock: &TruncatedFock, rep: &Representation) -> Result<CovariantReport> {
    let corr = fock.correspondence();
    let module = corr.module();
    let ring = fock.ring();
    let k = ring.coeff().clone();
    let xs: Vec<Sym> = rep.t_map.keys().cloned().collect();
    let phis: Vec<Sym> = rep.s_map.keys().cloned().collect();
    let ms: Vec<Monomial> = rep.sigma.keys().cloned().collect();
    let mut ev = Evaluator::new(fock);
    let mut ch = Checker {
        ev: &mut ev,
        report: CovariantReport::default(),
    };
    for a in &ms {
        for b in &ms {
            let ra = LinComb::basis(a.clone(), &k);
            let rb = LinComb::basis(b.clone(), &k);
            let lhs = rep.sigma(&ring.mul_monomials(a, b))?;
            let rhs = rep.sigma(&ra)?.mul(&rep.sigma(&rb)?);
            ch.compare(|| format!("sigma({:?}*{:?})", a, b), &lhs, &rhs)?;
        }
    }
    for m in &ms {
        let r = LinComb::basis(m.clone(), &k);
        let sm = rep.sigma(&r)?;
        for s in &xs {
            let x = LinComb::basis(s.clone(), &k);
            let tx = rep.t(&x)?;
            ch.compare(|| format!("T({}·{:?})", s, m), &rep.t(&module.right_mul(&x, &r))?, &tx.mul(&sm))?;
            let left = x.flat_map(|s| corr.act_terms(&r, s));
            ch.compare(|| format!("T({:?}·{})", m, s), &rep.t(&left)?, &sm.mul(&tx))?;
        }
        for s in &phis {
            let phi = LinComb::basis(s.clone(), &k);
            let sp = rep.s(&phi)?;
            ch.compare(
                || format!("S({:?}·{})", m, s),
                &rep.s(&module.left_mul_dual(&r, &phi))?,
                &sm.mul(&sp),
            )?;
            let right = phi.flat_map(|p| corr.act_dual_terms(p, &r));
            ch.compare(|| format!("S({}·{:?})", s, m), &rep.s(&right)?, &sp.mul(&sm))?;
        }
    }
    for p in &phis {
        let phi = LinComb::basis(p.clone(), &k);
        for s in &xs {
            let x = LinComb::basis(s.clone(), &k);
            let g = module.pair_terms(&phi, &x);
            let lhs = rep.sigma(&g)?;
            let rhs = rep.s(&phi)?.mul(&rep.t(&x)?);
            ch.compare(|| format!("sigma(g({}⊗{})) = S T", p, s), &lhs, &rhs)?;
        }
    }
    let mut report = ch.report;
    report.holds = report.failures.is_empty();
    Ok(report)
}
