use std::fmt;

use crate::error::Result;
use crate::funcmod::{ModVector, Side};
use crate::ringcore::{Coefficient, LinComb, Monomial, RingElement};

use super::TruncatedFock;

/// A generator of the Toeplitz ring: `T_x`, `T_φ` or a ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Create(ModVector),
    Annihilate(ModVector),
    Scalar(LinComb<Monomial>),
}

impl Letter {
    /// Degree change on the `X` side.
    pub fn shift(&self) -> i64 {
        match self {
            Letter::Create(_) => 1,
            Letter::Annihilate(_) => -1,
            Letter::Scalar(_) => 0,
        }
    }

    pub fn scalar(r: &RingElement) -> Self {
        Letter::Scalar(r.terms().clone())
    }

    fn is_zero(&self) -> bool {
        match self {
            Letter::Create(v) | Letter::Annihilate(v) => v.is_zero(),
            Letter::Scalar(r) => r.is_zero(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Create(x) => write!(f, "T[{}]", x),
            Letter::Annihilate(p) => write!(f, "T[{}]", p),
            Letter::Scalar(r) => write!(f, "({:?})", r.keys().collect::<Vec<_>>()),
        }
    }
}

/// A product `L₁L₂⋯L_k` of letters, acting right to left. On the dual side
/// the letters act by their adjoints, so `adjoint` reverses and flips.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockWord {
    pub letters: Vec<Letter>,
    pub side: Side,
}

impl FockWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FockWord { letters, side: Side::X }
    }

    pub fn letter(l: Letter) -> Self {
        Self::new(vec![l])
    }

    pub fn identity() -> Self {
        Self::new(Vec::new())
    }

    pub fn adjoint(&self) -> Self {
        FockWord {
            letters: self.letters.iter().rev().cloned().collect(),
            side: match self.side {
                Side::X => Side::Dual,
                Side::Dual => Side::X,
            },
        }
    }

    /// `self · other`
    pub fn concat(&self, other: &FockWord) -> Self {
        assert_eq!(self.side, other.side, "words act on different sides");
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        FockWord { letters, side: self.side }
    }

    fn letter_shift(&self, l: &Letter) -> i64 {
        match self.side {
            Side::X => l.shift(),
            Side::Dual => -l.shift(),
        }
    }

    pub fn shift(&self) -> i64 {
        self.letters.iter().map(|l| self.letter_shift(l)).sum()
    }

    /// Largest degree gain over the partial products, applied right to left.
    pub fn max_prefix_shift(&self) -> i64 {
        let mut cur = 0;
        let mut best = 0;
        for l in self.letters.iter().rev() {
            cur += self.letter_shift(l);
            best = best.max(cur);
        }
        best
    }

    /// `(k, l)` for a word `T_{p₁}⋯T_{p_k}T_{φ₁}⋯T_{φ_l}`, possibly with one
    /// scalar when `k = l = 0`.
    pub fn normal_shape(&self) -> Option<(usize, usize)> {
        let mut k = 0;
        let mut l = 0;
        let mut scalars = 0;
        for letter in &self.letters {
            match letter {
                Letter::Create(_) if l == 0 => k += 1,
                Letter::Annihilate(_) => l += 1,
                Letter::Scalar(_) => scalars += 1,
                Letter::Create(_) => return None,
            }
        }
        (scalars == 0 || (scalars == 1 && k + l == 0)).then_some((k, l))
    }
}

impl fmt::Display for FockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
        }
        if self.side == Side::Dual {
            write!(f, " (adjoint)")?;
        }
        Ok(())
    }
}

/// Finite `k`-combination of words: an element of the Toeplitz ring.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordSum {
    pub terms: Vec<(Coefficient, FockWord)>,
}

impl WordSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(c: Coefficient, w: FockWord) -> Self {
        WordSum { terms: vec![(c, w)] }
    }

    pub fn plus(&self, other: &WordSum) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        WordSum { terms }
    }

    pub fn scaled(&self, c: &Coefficient) -> Self {
        WordSum {
            terms: self.terms.iter().map(|(d, w)| (d * c, w.clone())).collect(),
        }
    }

    pub fn minus(&self, other: &WordSum) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(c, w)| (-c, w.clone())));
        WordSum { terms }
    }

    /// `self · other`
    pub fn mul(&self, other: &WordSum) -> Self {
        let mut terms = Vec::new();
        for (a, u) in &self.terms {
            for (b, v) in &other.terms {
                terms.push((a * b, u.concat(v)));
            }
        }
        WordSum { terms }
    }

    pub fn adjoint(&self) -> Self {
        WordSum {
            terms: self.terms.iter().map(|(c, w)| (c.clone(), w.adjoint())).collect(),
        }
    }
}

/// Rewrites a word into `T_{p₁}⋯T_{p_k}T_{φ₁}⋯T_{φ_l}` form using
/// `T_φT_x = g(φ⊗x)` and the bimodule laws that absorb ring elements into
/// neighbouring vectors. Returns `None` when the word vanishes.
pub fn normal_form(fock: &TruncatedFock, word: &FockWord) -> Result<Option<FockWord>> {
    if word.side == Side::Dual {
        return Ok(normal_form(fock, &word.adjoint())?.map(|w| w.adjoint()));
    }
    for l in &word.letters {
        fock.check_letter(l)?;
    }
    let corr = fock.correspondence();
    let module = corr.module();
    let ring = fock.ring();
    let mut letters = word.letters.clone();
    loop {
        if letters.iter().any(Letter::is_zero) {
            return Ok(None);
        }
        let mut changed = false;
        // contract T_φ T_x first
        for i in 0..letters.len().saturating_sub(1) {
            if let (Letter::Annihilate(phi), Letter::Create(x)) = (&letters[i], &letters[i + 1]) {
                let g = module.pair_terms(phi, x);
                letters.splice(i..i + 2, [Letter::Scalar(g)]);
                changed = true;
                break;
            }
        }
        if changed {
            continue;
        }
        for i in 0..letters.len().saturating_sub(1) {
            let merged = match (&letters[i], &letters[i + 1]) {
                (Letter::Scalar(a), Letter::Scalar(b)) => {
                    Letter::Scalar(a.flat_map(|m| b.flat_map(|n| ring.mul_monomials(m, n))))
                }
                (Letter::Scalar(r), Letter::Create(x)) => {
                    Letter::Create(x.flat_map(|s| corr.act_terms(r, s)))
                }
                (Letter::Create(x), Letter::Scalar(r)) => Letter::Create(module.right_mul(x, r)),
                (Letter::Scalar(r), Letter::Annihilate(phi)) => {
                    Letter::Annihilate(module.left_mul_dual(r, phi))
                }
                (Letter::Annihilate(phi), Letter::Scalar(r)) => {
                    Letter::Annihilate(phi.flat_map(|p| corr.act_dual_terms(p, r)))
                }
                _ => continue,
            };
            letters.splice(i..i + 2, [merged]);
            changed = true;
            break;
        }
        if !changed {
            break;
        }
    }
    Ok(Some(FockWord::new(letters)))
}
