use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_EQUALITY_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl GroupLetter {
    fn inv(self) -> Self {
        GroupLetter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// Freely reduced word in the generators and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<GroupLetter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        GroupWord(vec![GroupLetter {
            generator: index,
            inverse: false,
        }])
    }

    pub fn from_letters<I: IntoIterator<Item = GroupLetter>>(letters: I) -> Self {
        let mut out: Vec<GroupLetter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord(out)
    }

    /// `g^e` for a generator index; negative exponents use the inverse.
    pub fn generator_power(index: usize, exp: i64) -> Self {
        let l = GroupLetter {
            generator: index,
            inverse: exp < 0,
        };
        GroupWord::from_letters(std::iter::repeat_n(l, exp.unsigned_abs() as usize))
    }

    pub fn letters(&self) -> &[GroupLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn mul(&self, other: &GroupWord) -> Self {
        GroupWord::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn display<'a>(&'a self, group: &'a SelfSimilarGroup) -> impl fmt::Display + 'a {
        WordDisplay { word: self, group }
    }
}

struct WordDisplay<'a> {
    word: &'a GroupWord,
    group: &'a SelfSimilarGroup,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "e");
        }
        // collapse runs into powers
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = &self.group.generators[letters[i].generator].name;
            let exp = (j - i) as i64 * if letters[i].inverse { -1 } else { 1 };
            if exp == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, exp)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// One wreath-recursion entry `g = σ_g (g|_0, …, g|_{d-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    /// `perm[x]` is the image of letter `x`.
    pub perm: Vec<usize>,
    /// `restrictions[x] = g|_x`.
    pub restrictions: Vec<GroupWord>,
}

/// Group generated by automaton states acting on words over a finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SelfSimilarGroup {
    alphabet: Vec<String>,
    generators: Vec<Generator>,
    equality_depth: usize,
}

/// Outcome of a depth-bounded equality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqualityVerdict {
    /// The two elements act identically on every word of length at most `depth`.
    pub agrees_to_depth: bool,
    /// Every restriction of `g·h⁻¹` reached within `depth` freely reduces to the
    /// identity, which proves equality in the group.
    pub certified: bool,
    pub depth: usize,
}

impl SelfSimilarGroup {
    pub fn new(alphabet: Vec<String>, generators: Vec<Generator>) -> Result<Self> {
        if alphabet.len() < 2 {
            return Err(Error::Semantic(format!(
                "alphabet needs at least two letters, got {}",
                alphabet.len()
            )));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(a) {
                return Err(Error::Semantic(format!("duplicate letter `{}`", a)));
            }
        }
        let d = alphabet.len();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Semantic(format!("duplicate generator `{}`", g.name)));
            }
            let mut seen = vec![false; d];
            if g.perm.len() != d {
                return Err(Error::InconsistentRecursion(format!(
                    "permutation of `{}` has {} entries for {} letters",
                    g.name,
                    g.perm.len(),
                    d
                )));
            }
            for &y in &g.perm {
                if y >= d || seen[y] {
                    return Err(Error::InconsistentRecursion(format!(
                        "σ_{} is not a permutation of the alphabet",
                        g.name
                    )));
                }
                seen[y] = true;
            }
            if g.restrictions.len() != d {
                return Err(Error::InconsistentRecursion(format!(
                    "`{}` has {} restrictions for {} letters",
                    g.name,
                    g.restrictions.len(),
                    d
                )));
            }
            for w in &g.restrictions {
                if w.letters().iter().any(|l| l.generator >= generators.len()) {
                    return Err(Error::InconsistentRecursion(format!(
                        "restriction of `{}` uses an unknown generator",
                        g.name
                    )));
                }
            }
        }
        Ok(SelfSimilarGroup {
            alphabet,
            generators,
            equality_depth: DEFAULT_EQUALITY_DEPTH,
        })
    }

    /// The trivial group on `d` letters (no generators).
    pub fn trivial(d: usize) -> Result<Self> {
        Self::new((0..d).map(|i| i.to_string()).collect(), Vec::new())
    }

    /// Binary odometer `a = (0 1)(e, a)`.
    pub fn odometer() -> Self {
        Self::new(
            vec!["0".into(), "1".into()],
            vec![Generator {
                name: "a".into(),
                perm: vec![1, 0],
                restrictions: vec![GroupWord::identity(), GroupWord::generator(0)],
            }],
        )
        .expect("odometer recursion is consistent")
    }

    pub fn with_equality_depth(mut self, depth: usize) -> Self {
        self.equality_depth = depth;
        self
    }

    pub fn equality_depth(&self) -> usize {
        self.equality_depth
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.alphabet.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    /// Parses `a`, `a^-1`, `a b^2`, `a*b`; `e` and `1` are the identity.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*' || c == '·') {
            if tok.is_empty() || tok == "e" || tok == "1" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::Semantic(format!("bad exponent in `{}`", tok)))?,
                ),
                None => (tok, 1),
            };
            let g = self.generator_index(name).ok_or_else(|| Error::UnknownSymbol {
                symbol: name.to_string(),
                context: "the generators of the group".into(),
            })?;
            letters.extend_from_slice(GroupWord::generator_power(g, exp).letters());
        }
        Ok(GroupWord::from_letters(letters))
    }

    /// Parses a word over the alphabet: one character per letter when all
    /// letters are single characters, whitespace-separated otherwise.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<usize>> {
        let single = self.alphabet.iter().all(|a| a.chars().count() == 1);
        let tokens: Vec<String> = if single {
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(String::from)
                .collect()
        } else {
            text.split_whitespace().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| {
                self.letter_index(t).ok_or_else(|| Error::UnknownSymbol {
                    symbol: t.clone(),
                    context: "the alphabet".into(),
                })
            })
            .collect()
    }

    pub fn format_letters(&self, w: &[usize]) -> String {
        let single = self.alphabet.iter().all(|a| a.chars().count() == 1);
        let parts: Vec<&str> = w.iter().map(|&x| self.alphabet[x].as_str()).collect();
        parts.join(if single { "" } else { " " })
    }

    /// Image of letter `x` under `g` together with the restriction `g|_x`.
    ///
    /// Words act right to left, so `(gh)|_x = g|_{h(x)} · h|_x`.
    pub fn step(&self, g: &GroupWord, x: usize) -> (usize, GroupWord) {
        let mut cur = x;
        let mut parts: Vec<GroupWord> = Vec::with_capacity(g.len());
        for l in g.letters().iter().rev() {
            let gen = &self.generators[l.generator];
            if l.inverse {
                let pre = gen.perm.iter().position(|&y| y == cur).expect("bijective");
                parts.push(gen.restrictions[pre].inverse());
                cur = pre;
            } else {
                parts.push(gen.restrictions[cur].clone());
                cur = gen.perm[cur];
            }
        }
        let restriction = GroupWord::from_letters(
            parts.iter().rev().flat_map(|w| w.letters().iter().copied()),
        );
        (cur, restriction)
    }

    /// `g(w)`, computed letter by letter through `g(xw) = g(x) g|_x(w)`.
    pub fn act(&self, g: &GroupWord, w: &[usize]) -> Vec<usize> {
        let mut state = g.clone();
        let mut out = Vec::with_capacity(w.len());
        for &x in w {
            let (y, next) = self.step(&state, x);
            out.push(y);
            state = next;
        }
        out
    }

    /// Iterated restriction `g|_w`.
    pub fn restriction(&self, g: &GroupWord, w: &[usize]) -> GroupWord {
        w.iter().fold(g.clone(), |state, &x| self.step(&state, x).1)
    }

    pub fn equality_verdict(&self, g: &GroupWord, h: &GroupWord, depth: usize) -> EqualityVerdict {
        let k = g.mul(&h.inverse());
        let mut memo = HashMap::new();
        let (agrees, certified) = self.trivial_below(&k, depth, &mut memo);
        EqualityVerdict {
            agrees_to_depth: agrees,
            certified: agrees && certified,
            depth,
        }
    }

    /// Depth-bounded equality at the group's configured depth: `false` means the
    /// elements are distinct; `true` means they agree on all words up to that depth.
    pub fn group_equal(&self, g: &GroupWord, h: &GroupWord) -> bool {
        self.equal_to_depth(g, h, self.equality_depth)
    }

    pub fn equal_to_depth(&self, g: &GroupWord, h: &GroupWord, depth: usize) -> bool {
        self.equality_verdict(g, h, depth).agrees_to_depth
    }

    fn trivial_below(
        &self,
        k: &GroupWord,
        depth: usize,
        memo: &mut HashMap<(GroupWord, usize), (bool, bool)>,
    ) -> (bool, bool) {
        if k.is_identity() {
            return (true, true);
        }
        if depth == 0 {
            return (true, false);
        }
        if let Some(&r) = memo.get(&(k.clone(), depth)) {
            return r;
        }
        let mut result = (true, true);
        for x in 0..self.degree() {
            let (y, r) = self.step(k, x);
            if y != x {
                result = (false, false);
                break;
            }
            let (a, c) = self.trivial_below(&r, depth - 1, memo);
            if !a {
                result = (false, false);
                break;
            }
            result.1 &= c;
        }
        memo.insert((k.clone(), depth), result);
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(g: &SelfSimilarGroup, s: &str) -> Vec<usize> {
        g.parse_letters(s).unwrap()
    }

    #[test]
    fn odometer_action() {
        let g = SelfSimilarGroup::odometer();
        let a = g.parse_word("a").unwrap();
        let id = GroupWord::identity();
        assert_eq!(g.act(&id, &w(&g, "0110")), w(&g, "0110"));
        assert_eq!(g.act(&a, &w(&g, "11")), w(&g, "00"));
        assert_eq!(g.act(&a, &w(&g, "01")), w(&g, "11"));
    }

    #[test]
    fn odometer_restrictions() {
        let g = SelfSimilarGroup::odometer();
        let a = g.parse_word("a").unwrap();
        let aa = g.parse_word("a^2").unwrap();
        assert!(g.restriction(&GroupWord::identity(), &w(&g, "0101")).is_identity());
        assert_eq!(g.restriction(&a, &w(&g, "1")), a);
        assert_eq!(g.restriction(&aa, &w(&g, "1")), a);
    }

    #[test]
    fn equality_examples() {
        let g = SelfSimilarGroup::odometer();
        let a = g.parse_word("a").unwrap();
        let aa = g.parse_word("a a").unwrap();
        assert!(g.equal_to_depth(&a, &a, 3));
        assert!(!g.equal_to_depth(&aa, &a, 3));
        let cancel = g.parse_word("a a^-1").unwrap();
        assert!(cancel.is_identity());
        let v = g.equality_verdict(&cancel, &GroupWord::identity(), 3);
        assert!(v.agrees_to_depth && v.certified);
    }

    #[test]
    fn non_permutation_rejected() {
        let bad = SelfSimilarGroup::new(
            vec!["0".into(), "1".into()],
            vec![Generator {
                name: "b".into(),
                perm: vec![0, 0],
                restrictions: vec![GroupWord::identity(), GroupWord::identity()],
            }],
        );
        assert!(matches!(bad, Err(Error::InconsistentRecursion(_))));
        assert!(SelfSimilarGroup::trivial(1).is_err());
    }

    #[test]
    fn word_display() {
        let g = SelfSimilarGroup::odometer();
        let x = g.parse_word("a a a^-1 a^-1 a^-1").unwrap();
        assert_eq!(x.display(&g).to_string(), "a^-1");
        assert_eq!(GroupWord::identity().display(&g).to_string(), "e");
    }
}
