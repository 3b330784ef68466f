use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funcmod::{ModVector, Side};
use crate::ringcore::{Coefficient, LinComb, RingElement};

use super::space::{FockKey, FockVector, TruncatedFock};
use super::word::{normal_form, FockWord, Letter, WordSum};

/// Columns of one `(target, source)` block: source basis index to the image
/// coordinates in the target basis.
pub type Block = BTreeMap<usize, LinComb<usize>>;

/// An operator on the truncated Fock module as a block matrix over the graded
/// bases. Blocks are only stored for source degrees in `coverage`, the
/// degrees on which truncation has not cut anything off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedFockOperator {
    side: Side,
    depth: usize,
    shift: Option<i64>,
    coverage: BTreeSet<usize>,
    blocks: BTreeMap<(usize, usize), Block>,
}

impl TruncatedFockOperator {
    pub fn zero(side: Side, depth: usize) -> Self {
        TruncatedFockOperator {
            side,
            depth,
            shift: None,
            coverage: (0..=depth).collect(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(fock: &TruncatedFock, side: Side) -> Self {
        let k = fock.ring().coeff();
        let mut blocks = BTreeMap::new();
        for n in 0..=fock.depth() {
            let b: Block = (0..fock.dimension(side, n))
                .map(|i| (i, LinComb::basis(i, k)))
                .collect();
            if !b.is_empty() {
                blocks.insert((n, n), b);
            }
        }
        TruncatedFockOperator {
            side,
            depth: fock.depth(),
            shift: Some(0),
            coverage: (0..=fock.depth()).collect(),
            blocks,
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Degree shift of a homogeneous operator.
    pub fn shift(&self) -> Option<i64> {
        self.shift
    }

    /// Source degrees on which the operator is exact.
    pub fn coverage(&self) -> &BTreeSet<usize> {
        &self.coverage
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), Block> {
        &self.blocks
    }

    pub fn block(&self, target: usize, source: usize) -> Option<&Block> {
        self.blocks.get(&(target, source))
    }

    /// `(target, source)` positions of the nonzero blocks.
    pub fn nonzero_blocks(&self) -> Vec<(usize, usize)> {
        self.blocks.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Dense form of one block, rows indexed by the target basis.
    pub fn dense_block(&self, fock: &TruncatedFock, target: usize, source: usize) -> Vec<Vec<Coefficient>> {
        let k = fock.ring().coeff();
        let rows = fock.dimension(self.side, target);
        let cols = fock.dimension(self.side, source);
        let mut out = vec![vec![k.zero(); cols]; rows];
        if let Some(b) = self.block(target, source) {
            for (j, col) in b {
                for (i, c) in col {
                    out[*i][*j] = c.clone();
                }
            }
        }
        out
    }

    fn insert_column(&mut self, t: usize, s: usize, j: usize, col: LinComb<usize>) {
        if col.is_zero() {
            return;
        }
        self.blocks.entry((t, s)).or_default().insert(j, col);
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.side != other.side || self.depth != other.depth {
            return Err(Error::ModuleMismatch("operators on different Fock modules".into()));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        self.check_same(other)?;
        let coverage: BTreeSet<usize> = self.coverage.intersection(&other.coverage).copied().collect();
        let shift = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.shift,
            (_, true) => self.shift,
            _ if self.shift == other.shift => self.shift,
            _ => None,
        };
        let mut out = TruncatedFockOperator {
            side: self.side,
            depth: self.depth,
            shift,
            coverage,
            blocks: BTreeMap::new(),
        };
        let mut keys: BTreeSet<(usize, usize)> = self.blocks.keys().copied().collect();
        keys.extend(other.blocks.keys().copied());
        for (t, s) in keys {
            if !out.coverage.contains(&s) {
                continue;
            }
            let empty = Block::new();
            let a = self.blocks.get(&(t, s)).unwrap_or(&empty);
            let b = other.blocks.get(&(t, s)).unwrap_or(&empty);
            let mut cols: BTreeSet<usize> = a.keys().copied().collect();
            cols.extend(b.keys().copied());
            for j in cols {
                let mut col = a.get(&j).cloned().unwrap_or_default();
                if let Some(v) = b.get(&j) {
                    col = if negate { col.minus(v) } else { col.plus(v) };
                }
                out.insert_column(t, s, j, col);
            }
        }
        Ok(out)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn scaled(&self, c: &Coefficient) -> Self {
        let mut out = TruncatedFockOperator {
            blocks: BTreeMap::new(),
            ..self.clone()
        };
        for (&(t, s), b) in &self.blocks {
            for (j, col) in b {
                out.insert_column(t, s, *j, col.scaled(c));
            }
        }
        out
    }

    fn targets_of(&self, s: usize) -> Vec<usize> {
        match self.shift {
            Some(d) => {
                let t = s as i64 + d;
                if t >= 0 && t <= self.depth as i64 {
                    vec![t as usize]
                } else {
                    Vec::new()
                }
            }
            None => self
                .blocks
                .keys()
                .filter(|(_, src)| *src == s)
                .map(|(t, _)| *t)
                .collect(),
        }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coverage: BTreeSet<usize> = other
            .coverage
            .iter()
            .copied()
            .filter(|&s| other.targets_of(s).iter().all(|t| self.coverage.contains(t)))
            .collect();
        let shift = match (self.shift, other.shift) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        let mut out = TruncatedFockOperator {
            side: self.side,
            depth: self.depth,
            shift,
            coverage,
            blocks: BTreeMap::new(),
        };
        let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, LinComb<usize>>> = BTreeMap::new();
        for (&(mid, s), b) in &other.blocks {
            if !out.coverage.contains(&s) {
                continue;
            }
            for (&(t, m2), a) in &self.blocks {
                if m2 != mid {
                    continue;
                }
                for (j, col) in b {
                    let mut img = LinComb::zero();
                    for (i, c) in col {
                        if let Some(v) = a.get(i) {
                            img.add_scaled(v, c);
                        }
                    }
                    let entry = acc.entry((t, s)).or_default().entry(*j).or_default();
                    entry.add_assign(&img);
                }
            }
        }
        for ((t, s), cols) in acc {
            for (j, col) in cols {
                out.insert_column(t, s, j, col);
            }
        }
        Ok(out)
    }

    /// Equality on the source degrees covered by both operators.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.side != other.side || self.depth != other.depth {
            return false;
        }
        let common: BTreeSet<usize> = self.coverage.intersection(&other.coverage).copied().collect();
        let restrict = |op: &Self| -> BTreeMap<(usize, usize), Block> {
            op.blocks
                .iter()
                .filter(|((_, s), _)| common.contains(s))
                .map(|(k, v)| (*k, v.clone()))
                .collect()
        };
        restrict(self) == restrict(other)
    }

    /// Applies the operator to a vector whose degrees are all covered.
    pub fn apply(&self, fock: &TruncatedFock, v: &FockVector) -> Result<FockVector> {
        fock.check_vector(self.side, v)?;
        let mut out = LinComb::zero();
        for (key, c) in v {
            let s = key.degree();
            if !self.coverage.contains(&s) {
                return Err(Error::InsufficientDepth(format!(
                    "degree {} is outside the operator's budget",
                    s
                )));
            }
            let j = fock.position(self.side, key).expect("checked above");
            for (&(t, src), b) in &self.blocks {
                if src != s {
                    continue;
                }
                if let Some(col) = b.get(&j) {
                    for (i, d) in col {
                        out.add_term(fock.basis(self.side, t)[*i].clone(), c * d);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Which representation of the Toeplitz ring to materialize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rep {
    /// The canonical representation on `T(X)`.
    Pi0,
    /// `π₁`: each generator is cut off where its source or target has degree 0.
    Pi1,
}

/// Materializes letters, words and word sums, caching each letter.
pub struct Evaluator<'a> {
    fock: &'a TruncatedFock,
    cache: HashMap<(Side, Rep, Letter), Arc<TruncatedFockOperator>>,
    words: HashMap<(Side, Rep, Vec<Letter>), Arc<TruncatedFockOperator>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(fock: &'a TruncatedFock) -> Self {
        Evaluator {
            fock,
            cache: HashMap::new(),
            words: HashMap::new(),
        }
    }

    pub fn fock(&self) -> &TruncatedFock {
        self.fock
    }

    fn letter(&mut self, side: Side, rep: Rep, letter: &Letter) -> Result<Arc<TruncatedFockOperator>> {
        if let Some(op) = self.cache.get(&(side, rep, letter.clone())) {
            return Ok(op.clone());
        }
        self.fock.check_letter(letter)?;
        let fock = self.fock;
        let n_max = fock.depth();
        let shift = match side {
            Side::X => letter.shift(),
            Side::Dual => -letter.shift(),
        };
        let mut op = TruncatedFockOperator {
            side,
            depth: n_max,
            shift: Some(shift),
            coverage: BTreeSet::new(),
            blocks: BTreeMap::new(),
        };
        for s in 0..=n_max {
            let t = s as i64 + shift;
            if t > n_max as i64 {
                continue;
            }
            op.coverage.insert(s);
            if t < 0 || (rep == Rep::Pi1 && (s == 0 || t == 0)) {
                continue;
            }
            let t = t as usize;
            for (j, key) in fock.basis(side, s).iter().enumerate() {
                let img = fock.letter_key(side, letter, key);
                let col: LinComb<usize> = img
                    .iter()
                    .map(|(k, c)| {
                        let i = fock
                            .position(side, k)
                            .unwrap_or_else(|| panic!("{} escaped the graded basis", k));
                        (i, c.clone())
                    })
                    .collect();
                op.insert_column(t, s, j, col);
            }
        }
        let op = Arc::new(op);
        self.cache.insert((side, rep, letter.clone()), op.clone());
        Ok(op)
    }

    pub fn word(&mut self, rep: Rep, word: &FockWord) -> Result<TruncatedFockOperator> {
        if word.letters.is_empty() {
            let mut id = TruncatedFockOperator::identity(self.fock, word.side);
            if rep == Rep::Pi1 {
                // π₁ of the unit: the projection off degree 0
                id.blocks.remove(&(0, 0));
            }
            return Ok(id);
        }
        Ok((*self.suffix(word.side, rep, &word.letters)?).clone())
    }

    // Words are evaluated right to left, so shared suffixes are cached.
    fn suffix(&mut self, side: Side, rep: Rep, letters: &[Letter]) -> Result<Arc<TruncatedFockOperator>> {
        let (first, rest) = letters.split_first().expect("nonempty word");
        if rest.is_empty() {
            return self.letter(side, rep, first);
        }
        let key = (side, rep, letters.to_vec());
        if let Some(op) = self.words.get(&key) {
            return Ok(op.clone());
        }
        let inner = self.suffix(side, rep, rest)?;
        let op = Arc::new(self.letter(side, rep, first)?.compose(&inner)?);
        self.words.insert(key, op.clone());
        Ok(op)
    }

    pub fn sum(&mut self, rep: Rep, sum: &WordSum, side: Side) -> Result<TruncatedFockOperator> {
        let mut acc: Option<TruncatedFockOperator> = None;
        for (c, w) in &sum.terms {
            if w.side != side {
                return Err(Error::ModuleMismatch("word acts on the other side".into()));
            }
            let op = self.word(rep, w)?.scaled(c);
            acc = Some(match acc {
                None => op,
                Some(a) => a.plus(&op)?,
            });
        }
        Ok(acc.unwrap_or_else(|| TruncatedFockOperator::zero(side, self.fock.depth())))
    }

    pub fn pi0(&mut self, sum: &WordSum) -> Result<TruncatedFockOperator> {
        self.sum(Rep::Pi0, sum, Side::X)
    }

    pub fn pi1(&mut self, sum: &WordSum) -> Result<TruncatedFockOperator> {
        self.sum(Rep::Pi1, sum, Side::X)
    }
}

/// Applies a word (π₀) to a vector directly, dropping anything pushed past
/// degree `N`.
pub fn apply_word(fock: &TruncatedFock, word: &FockWord, v: &FockVector) -> Result<FockVector> {
    fock.check_vector(word.side, v)?;
    for l in &word.letters {
        fock.check_letter(l)?;
    }
    let mut cur = v.clone();
    for l in word.letters.iter().rev() {
        cur = fock.letter_vec(word.side, l, &cur);
    }
    Ok(cur)
}

/// `T_x` as an operator.
pub fn creation(fock: &TruncatedFock, x: &ModVector) -> Result<TruncatedFockOperator> {
    Evaluator::new(fock).word(Rep::Pi0, &FockWord::letter(Letter::Create(x.clone())))
}

/// `T_φ` as an operator.
pub fn annihilation(fock: &TruncatedFock, phi: &ModVector) -> Result<TruncatedFockOperator> {
    Evaluator::new(fock).word(Rep::Pi0, &FockWord::letter(Letter::Annihilate(phi.clone())))
}

/// Left multiplication by a ring element.
pub fn scalar_operator(fock: &TruncatedFock, r: &RingElement) -> Result<TruncatedFockOperator> {
    Evaluator::new(fock).word(Rep::Pi0, &FockWord::letter(Letter::scalar(r)))
}

pub fn pi0(fock: &TruncatedFock, word: &FockWord) -> Result<TruncatedFockOperator> {
    Evaluator::new(fock).word(Rep::Pi0, word)
}

pub fn pi1(fock: &TruncatedFock, word: &FockWord) -> Result<TruncatedFockOperator> {
    Evaluator::new(fock).word(Rep::Pi1, word)
}

/// Outcome of a defect computation for a normal-form word.
#[derive(Clone, Debug)]
pub struct Defect {
    pub shape: (usize, usize),
    pub operator: TruncatedFockOperator,
}

impl Defect {
    /// Nonzero blocks only at `(k, l)` and the degrees `l − 1, l, l + 1`
    /// all within the budget.
    pub fn support_ok(&self) -> bool {
        let (k, l) = self.shape;
        let cov = self.operator.coverage();
        let seen = (l.saturating_sub(1)..=l + 1).all(|d| cov.contains(&d));
        seen && self.operator.nonzero_blocks().iter().all(|&b| b == (k, l))
    }
}

/// `π₀(τ) − π₁(τ)` after rewriting `τ` into normal form.
pub fn quasi_hom_defect(ev: &mut Evaluator<'_>, word: &FockWord) -> Result<Defect> {
    if word.side != Side::X {
        return Err(Error::NotAWord);
    }
    let fock = ev.fock();
    let depth = fock.depth();
    let Some(nf) = normal_form(fock, word)? else {
        return Ok(Defect {
            shape: (0, 0),
            operator: TruncatedFockOperator::zero(Side::X, depth),
        });
    };
    let (k, l) = nf.normal_shape().ok_or(Error::NotAWord)?;
    if l + 1 > depth {
        return Err(Error::InsufficientDepth(format!(
            "a word with {} annihilations needs depth at least {}",
            l,
            l + 1
        )));
    }
    let p0 = ev.word(Rep::Pi0, &nf)?;
    let p1 = ev.word(Rep::Pi1, &nf)?;
    Ok(Defect {
        shape: (k, l),
        operator: p0.minus(&p1)?,
    })
}

/// `i·P₀ = i·id − Σ T_{x_i}T_{φ_i}` with `Δ(i) = Σ x_i ⊗ φ_i`.
pub fn p0_element(fock: &TruncatedFock, i: &RingElement) -> Result<WordSum> {
    let k = fock.ring().coeff().clone();
    let delta = fock.correspondence().compact_left_action(i)?;
    let mut out = WordSum::word(k.one(), FockWord::letter(Letter::scalar(i)));
    for ((g, p), c) in delta.terms() {
        let w = FockWord::new(vec![
            Letter::Create(LinComb::basis(g.clone(), &k)),
            Letter::Annihilate(LinComb::basis(p.clone(), &k)),
        ]);
        out.terms.push((-c, w));
    }
    Ok(out)
}

pub fn p0_compact_form(fock: &TruncatedFock, i: &RingElement) -> Result<TruncatedFockOperator> {
    let e = p0_element(fock, i)?;
    Evaluator::new(fock).pi0(&e)
}

/// `T_{x₁}⋯T_{x_n}(i·P₀)T_{φ₁}⋯T_{φ_m}`
pub fn j_ideal_generator(
    fock: &TruncatedFock,
    p: &[ModVector],
    i: &RingElement,
    psi: &[ModVector],
) -> Result<TruncatedFockOperator> {
    let depth = fock.depth();
    if p.len() > depth || psi.len() > depth {
        return Err(Error::InsufficientDepth(format!(
            "block ({}, {}) lies beyond depth {}",
            p.len(),
            psi.len(),
            depth
        )));
    }
    let k = fock.ring().coeff().clone();
    let left = FockWord::new(p.iter().map(|x| Letter::Create(x.clone())).collect());
    let right = FockWord::new(psi.iter().map(|f| Letter::Annihilate(f.clone())).collect());
    let e = WordSum::word(k.one(), left)
        .mul(&p0_element(fock, i)?)
        .mul(&WordSum::word(k.one(), right));
    Evaluator::new(fock).pi0(&e)
}

/// The basis vector of a key as a Fock vector.
pub fn basis_vector(fock: &TruncatedFock, key: &FockKey) -> FockVector {
    LinComb::basis(key.clone(), fock.ring().coeff())
}
