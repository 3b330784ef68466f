use std::collections::{BTreeSet, HashSet};

use serde_json::{json, Value};

use pimsner::error::{Error, Result};
use pimsner::fock::{
    coefficient_identity, covariant_check, quasi_hom_defect, Evaluator, FockKey, FockWord, HomotopySuite, Letter,
    Representation, TruncatedFock,
};
use pimsner::funcmod::{ModVector, Side, Sym};
use pimsner::ringcore::LinComb;
use pimsner::selfsim::{GroupWord, NekCorrespondence, SelfSimilarGroup};

/// Normal-form words up to this many letters enter the defect suite.
pub const DEFECT_LETTERS: usize = 3;
const COLUMNS_PER_DEGREE: usize = 8;
const LEVEL_LIMIT: usize = 100_000;
const RECURSION_LIMIT: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    InsufficientDepth,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::InsufficientDepth => "insufficient depth",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Suite {
    pub name: &'static str,
    pub status: Status,
    pub checks: usize,
    /// Degrees (or word lengths) actually exercised.
    pub coverage: BTreeSet<usize>,
    pub notes: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            status: Status::Pass,
            checks: 0,
            coverage: BTreeSet::new(),
            notes: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.status = Status::Fail;
            if self.notes.len() < 10 {
                self.notes.push(what());
            }
        }
    }

    fn short(&mut self, why: String) {
        if self.status == Status::Pass {
            self.status = Status::InsufficientDepth;
        }
        if self.notes.len() < 10 {
            self.notes.push(why);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "status": self.status.label(),
            "checks": self.checks,
            "coverage": self.coverage,
            "notes": self.notes,
        })
    }
}

fn generators(fock: &TruncatedFock, side: Side) -> Vec<ModVector> {
    if fock.depth() == 0 {
        return Vec::new();
    }
    let k = fock.ring().coeff();
    fock.basis(side, 1)
        .iter()
        .filter_map(|key| match key {
            FockKey::Tensor(_, s) => Some(LinComb::basis(s.clone(), k)),
            FockKey::Scalar(_) => None,
        })
        .collect()
}

fn scalars(fock: &TruncatedFock) -> Vec<Letter> {
    let k = fock.ring().coeff();
    fock.basis(Side::X, 0)
        .iter()
        .filter_map(|key| match key {
            FockKey::Scalar(m) => Some(Letter::Scalar(LinComb::basis(m.clone(), k))),
            FockKey::Tensor(..) => None,
        })
        .collect()
}

fn tuples(pool: &[Letter], n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                pool.iter().map(move |l| {
                    let mut v = w.clone();
                    v.push(l.clone());
                    v
                })
            })
            .collect();
    }
    out
}

fn show(v: &ModVector) -> String {
    v.keys().map(Sym::to_string).collect::<Vec<_>>().join("+")
}

pub fn fock_suites(fock: &TruncatedFock, word_bound: usize, seed: u64) -> Result<Vec<Suite>> {
    let mut out = Vec::new();

    let mut cov = Suite::new("covariant_relation");
    let report = covariant_check(fock, &Representation::canonical(fock))?;
    cov.checks = report.checked_degrees.len();
    cov.coverage = report.checked_degrees;
    for f in report.failures {
        cov.record(false, || f);
    }
    out.push(cov);

    let xs = generators(fock, Side::X);
    let ps = generators(fock, Side::Dual);
    let mut defect = Suite::new("defect_support");
    let mut ev = Evaluator::new(fock);
    let creates: Vec<Letter> = xs.iter().cloned().map(Letter::Create).collect();
    let annihilates: Vec<Letter> = ps.iter().cloned().map(Letter::Annihilate).collect();
    for k in 0..=DEFECT_LETTERS {
        for l in 0..=DEFECT_LETTERS - k {
            for a in tuples(&creates, k) {
                for b in tuples(&annihilates, l) {
                    let mut letters = a.clone();
                    letters.extend(b);
                    let w = FockWord::new(letters);
                    match quasi_hom_defect(&mut ev, &w) {
                        Ok(d) => {
                            let (_, dl) = d.shape;
                            defect.coverage.extend(dl.saturating_sub(1)..=dl + 1);
                            let blocks = d.operator.nonzero_blocks();
                            let covered = (dl.saturating_sub(1)..=dl + 1).all(|n| d.operator.coverage().contains(&n));
                            if blocks.iter().any(|&b| b != d.shape) {
                                defect.record(false, || format!("{}: blocks {:?}", w, blocks));
                            } else if covered {
                                defect.record(true, String::new);
                            } else {
                                defect.short(format!("{}: degrees {}..={} not all within budget", w, dl.saturating_sub(1), dl + 1));
                            }
                        }
                        Err(Error::InsufficientDepth(why)) => defect.short(format!("{}: {}", w, why)),
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    out.push(defect);

    let suite = HomotopySuite::new(fock, word_bound, COLUMNS_PER_DEGREE, seed);
    let degrees = suite.column_degrees();
    let mut ends = Suite::new("homotopy_endpoints");
    ends.coverage = degrees.clone();
    let mut letters: Vec<Letter> = creates.clone();
    letters.extend(annihilates.iter().cloned());
    letters.extend(scalars(fock));
    for l in &letters {
        ends.record(suite.endpoint_zero(l)?, || format!("H(0) at {}", l));
        ends.record(suite.endpoint_one(l)?, || format!("H(1) at {}", l));
    }
    out.push(ends);

    let mut pairing = Suite::new("pairing_preservation");
    pairing.coverage = degrees;
    pairing.record(coefficient_identity(), || "t(2t - t^3) + (1 - t^2)^2 != 1".into());
    for x in &xs {
        for p in &ps {
            pairing.record(suite.pairing(x, p)?, || format!("{} / {}", show(p), show(x)));
        }
    }
    out.push(pairing);
    Ok(out)
}

fn all_words(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..d).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn elements(g: &SelfSimilarGroup) -> Vec<GroupWord> {
    let mut out = vec![GroupWord::identity()];
    for i in 0..g.generators().len() {
        out.push(GroupWord::generator(i));
        out.push(GroupWord::generator(i).inverse());
    }
    out
}

pub fn group_suites(nek: &NekCorrespondence) -> Vec<Suite> {
    let g = &nek.group;
    let d = g.degree();
    let depth = g.equality_depth();
    let elems = elements(g);

    let mut bij = Suite::new("level_bijectivity");
    let mut rec = Suite::new("self_similarity");
    for n in 0..=depth {
        let size = d.checked_pow(n as u32).unwrap_or(usize::MAX);
        if size > LEVEL_LIMIT {
            break;
        }
        let level = all_words(d, n);
        bij.coverage.insert(n);
        for h in &elems {
            let images: HashSet<Vec<usize>> = level.iter().map(|w| g.act(h, w)).collect();
            bij.record(images.len() == level.len(), || format!("level {} under {}", n, h.display(g)));
        }
        if n == 0 || n + 1 > depth || size > RECURSION_LIMIT {
            continue;
        }
        rec.coverage.insert(n);
        for w in &level {
            let (x, rest) = w.split_first().expect("nonempty");
            for h in &elems {
                let mut rhs = g.act(h, &[*x]);
                rhs.extend(g.act(&g.restriction(h, &[*x]), rest));
                rec.record(g.act(h, w) == rhs, || format!("{} on {}", h.display(g), g.format_letters(w)));
            }
        }
    }

    let mut cocycle = Suite::new("cocycle");
    cocycle.coverage.insert(depth.saturating_sub(1));
    for a in &elems {
        for b in &elems {
            for x in 0..d {
                let lhs = g.restriction(&a.mul(b), &[x]);
                let rhs = g.restriction(a, &g.act(b, &[x])).mul(&g.restriction(b, &[x]));
                cocycle.record(g.equal_to_depth(&lhs, &rhs, depth.saturating_sub(1)), || {
                    format!("({}{})|{}", a.display(g), b.display(g), g.alphabet()[x])
                });
            }
        }
    }

    let mut corr = Suite::new("nek_correspondence");
    corr.coverage.insert(depth);
    corr.record(nek.checks.module_law, || "module law".into());
    corr.record(nek.checks.adjoint_law, || "adjoint law".into());
    corr.record(nek.checks.compact, || "compact left action".into());

    vec![bij, rec, cocycle, corr]
}

pub fn overall(suites: &[Suite]) -> Status {
    suites.iter().map(|s| s.status).max().unwrap_or(Status::Pass)
}
