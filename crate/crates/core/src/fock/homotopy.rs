use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::funcmod::{ModVector, Side};
use crate::ringcore::{LinComb, Monomial};

use super::poly::UniPoly;
use super::space::{homogeneous_degree, FockKey, TruncatedFock};
use super::word::{FockWord, Letter};

/// A vector of `T(X) ⊗_R T`, stored as `(column degree n, T_p τ(q))` for the
/// column `p ⊗ τ` with `deg p = n`, evaluated on a Fock basis vector `q`.
pub type Column = LinComb<(usize, FockKey)>;

/// Coefficients of a polynomial-valued column, by power of `t`.
pub type PolyColumn = BTreeMap<usize, Column>;

/// The pieces out of which `H` is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    /// `π₀ ⊗ id`
    Pi0Id,
    /// `π₁ ⊗ id`
    Pi1Id,
    Lambda0,
    Lambda1,
}

fn apply_part(fock: &TruncatedFock, part: Part, letter: &Letter, col: &Column) -> Column {
    let n_max = fock.depth() as i64;
    let mut out = LinComb::zero();
    for ((n, key), c) in col {
        let n = *n as i64;
        let m = n + letter.shift();
        let target = match part {
            Part::Pi0Id => m,
            Part::Pi1Id if n == 0 || m == 0 => continue,
            Part::Pi1Id => m,
            Part::Lambda0 => match (letter, n) {
                (Letter::Create(_), 0) => 1,
                (Letter::Annihilate(_), 1) => 0,
                (Letter::Scalar(_), 0) => 0,
                _ => continue,
            },
            Part::Lambda1 if n == 0 => 0,
            Part::Lambda1 => continue,
        };
        if target < 0 || target > n_max {
            continue;
        }
        for (k, d) in &fock.letter_key(Side::X, letter, key) {
            out.add_term((target as usize, k.clone()), c * d);
        }
    }
    out
}

/// Finite sum of rational multiples of chains of parts, composed left to
/// right (the last chain element acts first).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ColumnOperator {
    pub terms: Vec<(BigRational, Vec<(Part, Letter)>)>,
}

impl ColumnOperator {
    pub fn part(part: Part, letter: Letter) -> Self {
        ColumnOperator {
            terms: vec![(BigRational::one(), vec![(part, letter)])],
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ColumnOperator { terms }
    }

    pub fn apply(&self, fock: &TruncatedFock, col: &Column) -> Result<Column> {
        let k = fock.ring().coeff();
        let mut out = LinComb::zero();
        for (c, chain) in &self.terms {
            let mut cur = col.clone();
            for (part, letter) in chain.iter().rev() {
                cur = apply_part(fock, *part, letter, &cur);
            }
            out.add_scaled(&cur, &k.from_rational(c)?);
        }
        Ok(out)
    }
}

/// Operator-valued polynomial `Σ_k t^k A_k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolyOperator {
    coeffs: BTreeMap<usize, ColumnOperator>,
}

impl PolyOperator {
    pub fn from_parts(parts: Vec<(UniPoly, Part, Letter)>) -> Self {
        let mut coeffs: BTreeMap<usize, ColumnOperator> = BTreeMap::new();
        for (p, part, letter) in parts {
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                coeffs
                    .entry(i)
                    .or_default()
                    .terms
                    .push((c.clone(), vec![(part, letter.clone())]));
            }
        }
        PolyOperator { coeffs }
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, ColumnOperator> {
        &self.coeffs
    }

    /// `self ∘ other`
    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<usize, ColumnOperator> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let slot = coeffs.entry(i + j).or_default();
                for (c, u) in &a.terms {
                    for (d, v) in &b.terms {
                        let mut chain = u.clone();
                        chain.extend(v.iter().cloned());
                        slot.terms.push((c * d, chain));
                    }
                }
            }
        }
        PolyOperator { coeffs }
    }

    /// Specializes `t`.
    pub fn evaluate(&self, t: &BigRational) -> ColumnOperator {
        let mut out = ColumnOperator::default();
        let mut power = BigRational::one();
        let mut last = 0;
        for (i, op) in &self.coeffs {
            while last < *i {
                power *= t;
                last += 1;
            }
            for (c, chain) in &op.terms {
                out.terms.push((c * &power, chain.clone()));
            }
        }
        out
    }

    pub fn apply(&self, fock: &TruncatedFock, col: &Column) -> Result<PolyColumn> {
        let mut out = BTreeMap::new();
        for (i, op) in &self.coeffs {
            let v = op.apply(fock, col)?;
            if !v.is_zero() {
                out.insert(*i, v);
            }
        }
        Ok(out)
    }
}

/// `H(T_x) = (1−t²)λ₀ + (2t−t³)λ₁ + π₁⊗id`, `H(T_φ) = (1−t²)λ₀ + tλ₁ + π₁⊗id`
/// and `H(r) = r·id`.
pub fn homotopy_h(letter: &Letter) -> PolyOperator {
    let l = letter.clone();
    match letter {
        Letter::Create(_) => PolyOperator::from_parts(vec![
            (UniPoly::from_ints(&[1, 0, -1]), Part::Lambda0, l.clone()),
            (UniPoly::from_ints(&[0, 2, 0, -1]), Part::Lambda1, l.clone()),
            (UniPoly::one(), Part::Pi1Id, l),
        ]),
        Letter::Annihilate(_) => PolyOperator::from_parts(vec![
            (UniPoly::from_ints(&[1, 0, -1]), Part::Lambda0, l.clone()),
            (UniPoly::t(), Part::Lambda1, l.clone()),
            (UniPoly::one(), Part::Pi1Id, l),
        ]),
        Letter::Scalar(_) => PolyOperator::from_parts(vec![(UniPoly::one(), Part::Pi0Id, l)]),
    }
}

/// `t(2t − t³) + (1 − t²)² = 1` in `ℚ[t]`, and its value at `t = 1/2`
/// split as `7/16 + 9/16`.
pub fn coefficient_identity() -> bool {
    let t = UniPoly::t();
    let a = t.mul(&UniPoly::from_ints(&[0, 2, 0, -1]));
    let b = UniPoly::from_ints(&[1, 0, -1]);
    let b2 = b.mul(&b);
    let half = BigRational::new(1.into(), 2.into());
    a.add(&b2) == UniPoly::one()
        && a.eval(&half) == BigRational::new(7.into(), 16.into())
        && b2.eval(&half) == BigRational::new(9.into(), 16.into())
}

/// Sampled columns of `T(X) ⊗_R T` on which `H` is checked.
pub struct HomotopySuite<'a> {
    fock: &'a TruncatedFock,
    columns: Vec<Column>,
}

impl<'a> HomotopySuite<'a> {
    /// Draws up to `per_column_degree` columns `p ⊗ τ` for each column degree
    /// `n < N`, with `τ` a word of length at most `word_bound` in basis
    /// generators. Only columns with room for one more creation are kept, and
    /// `τ` is never evaluated past the truncation.
    pub fn new(fock: &'a TruncatedFock, word_bound: usize, per_column_degree: usize, seed: u64) -> Self {
        let k = fock.ring().coeff().clone();
        let n_max = fock.depth();
        let mut pool: Vec<Letter> = Vec::new();
        for s in fock.basis(Side::X, 1.min(n_max)) {
            if let FockKey::Tensor(_, s) = s {
                pool.push(Letter::Create(LinComb::basis(s.clone(), &k)));
            }
        }
        for s in fock.basis(Side::Dual, 1.min(n_max)) {
            if let FockKey::Tensor(_, s) = s {
                pool.push(Letter::Annihilate(LinComb::basis(s.clone(), &k)));
            }
        }
        for m in fock.basis(Side::X, 0) {
            if let FockKey::Scalar(m) = m {
                pool.push(Letter::Scalar(LinComb::basis(m.clone(), &k)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut columns = BTreeSet::new();
        for n in 0..n_max {
            let ps = fock.basis(Side::X, n);
            if ps.is_empty() {
                continue;
            }
            let mut found = 0;
            for _ in 0..per_column_degree * 40 {
                if found >= per_column_degree {
                    break;
                }
                let p = &ps[rng.gen_range(0..ps.len())];
                let len = rng.gen_range(0..=word_bound);
                let tau = FockWord::new(
                    (0..len)
                        .filter(|_| !pool.is_empty())
                        .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                        .collect(),
                );
                let dq = rng.gen_range(0..=n_max);
                let qs = fock.basis(Side::X, dq);
                if qs.is_empty() || dq as i64 + tau.max_prefix_shift() > n_max as i64 {
                    continue;
                }
                let q = &qs[rng.gen_range(0..qs.len())];
                let mut v = LinComb::basis(q.clone(), &k);
                for l in tau.letters.iter().rev() {
                    v = fock.letter_vec(Side::X, l, &v);
                }
                let Some(d) = homogeneous_degree(&v) else { continue };
                if n + d >= n_max {
                    continue;
                }
                let realized = v.flat_map(|key| fock.tensor_keys(p, key));
                if realized.is_zero() {
                    continue;
                }
                let col: Column = realized.iter().map(|(key, c)| ((n, key.clone()), c.clone())).collect();
                if columns.insert(col) {
                    found += 1;
                }
            }
        }
        HomotopySuite {
            fock,
            columns: columns.into_iter().collect(),
        }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    /// Column degrees represented among the samples.
    pub fn column_degrees(&self) -> BTreeSet<usize> {
        self.columns
            .iter()
            .flat_map(|c| c.keys().map(|(n, _)| *n))
            .collect()
    }

    fn agree(&self, a: &ColumnOperator, b: &ColumnOperator) -> Result<bool> {
        for col in &self.columns {
            if a.apply(self.fock, col)? != b.apply(self.fock, col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn agree_poly(&self, a: &PolyOperator, b: &PolyOperator) -> Result<bool> {
        for col in &self.columns {
            if a.apply(self.fock, col)? != b.apply(self.fock, col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `H(0) = π₀ ⊗ id`
    pub fn endpoint_zero(&self, letter: &Letter) -> Result<bool> {
        self.fock.check_letter(letter)?;
        let h0 = homotopy_h(letter).evaluate(&BigRational::zero());
        self.agree(&h0, &ColumnOperator::part(Part::Pi0Id, letter.clone()))
    }

    /// `H(1) = λ₁ + π₁ ⊗ id`
    pub fn endpoint_one(&self, letter: &Letter) -> Result<bool> {
        self.fock.check_letter(letter)?;
        let h1 = homotopy_h(letter).evaluate(&BigRational::one());
        let want = ColumnOperator::part(Part::Lambda1, letter.clone())
            .plus(&ColumnOperator::part(Part::Pi1Id, letter.clone()));
        self.agree(&h1, &want)
    }

    /// `H(T_φ)H(T_x) = H(g(φ⊗x))` as polynomials in `t`.
    pub fn pairing(&self, x: &ModVector, phi: &ModVector) -> Result<bool> {
        let cx = Letter::Create(x.clone());
        let cp = Letter::Annihilate(phi.clone());
        self.fock.check_letter(&cx)?;
        self.fock.check_letter(&cp)?;
        let g = self.fock.correspondence().module().pair_terms(phi, x);
        let lhs = homotopy_h(&cp).mul(&homotopy_h(&cx));
        self.agree_poly(&lhs, &homotopy_h(&Letter::Scalar(g)))
    }

    /// The bimodule relations `T_x r = T_{x·r}`, `r T_x = T_{r·x}`,
    /// `T_φ r = T_{φ·r}` and `r T_φ = T_{r·φ}` under `H`.
    pub fn bimodule(&self, x: &ModVector, phi: &ModVector, r: &LinComb<Monomial>) -> Result<bool> {
        let corr = self.fock.correspondence();
        let module = corr.module();
        let hr = homotopy_h(&Letter::Scalar(r.clone()));
        let h = |l: Letter| homotopy_h(&l);
        let checks = [
            (
                h(Letter::Create(x.clone())).mul(&hr),
                h(Letter::Create(module.right_mul(x, r))),
            ),
            (
                hr.mul(&h(Letter::Create(x.clone()))),
                h(Letter::Create(x.flat_map(|s| corr.act_terms(r, s)))),
            ),
            (
                h(Letter::Annihilate(phi.clone())).mul(&hr),
                h(Letter::Annihilate(phi.flat_map(|p| corr.act_dual_terms(p, r)))),
            ),
            (
                hr.mul(&h(Letter::Annihilate(phi.clone()))),
                h(Letter::Annihilate(module.left_mul_dual(r, phi))),
            ),
        ];
        for (a, b) in &checks {
            if !self.agree_poly(a, b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
