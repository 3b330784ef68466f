use std::fmt;

use crate::ringcore::{CoeffRing, LinComb};

use super::Quiver;

/// Normal-form word `p q*` with `r(p) = r(q) = vertex`.
///
/// An empty path stands for the vertex itself. Words whose paths both end in
/// the special edge of a regular vertex are not reduced; [`reduce_word`]
/// rewrites them through the vertex relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LpaWord {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub vertex: usize,
}

impl LpaWord {
    pub fn vertex(v: usize) -> Self {
        LpaWord {
            p: Vec::new(),
            q: Vec::new(),
            vertex: v,
        }
    }

    pub fn edge(quiver: &Quiver, e: usize) -> Self {
        LpaWord {
            p: vec![e],
            q: Vec::new(),
            vertex: quiver.range(e),
        }
    }

    pub fn ghost(quiver: &Quiver, e: usize) -> Self {
        LpaWord {
            p: Vec::new(),
            q: vec![e],
            vertex: quiver.range(e),
        }
    }

    /// `|p| − |q|`
    pub fn degree(&self) -> i64 {
        self.p.len() as i64 - self.q.len() as i64
    }

    pub fn source(&self, quiver: &Quiver) -> usize {
        self.p.first().map_or(self.vertex, |&e| quiver.source(e))
    }

    /// Source of `q`, i.e. the vertex on the right of `p q*`.
    pub fn co_source(&self, quiver: &Quiver) -> usize {
        self.q.first().map_or(self.vertex, |&e| quiver.source(e))
    }

    pub fn is_valid(&self, quiver: &Quiver) -> bool {
        let ends = |path: &[usize]| path.last().map_or(self.vertex, |&e| quiver.range(e));
        self.vertex < quiver.vertex_count()
            && quiver.is_path(&self.p)
            && quiver.is_path(&self.q)
            && ends(&self.p) == self.vertex
            && ends(&self.q) == self.vertex
    }

    pub fn is_reduced(&self, quiver: &Quiver) -> bool {
        match (self.p.last(), self.q.last()) {
            (Some(&e), Some(&f)) if e == f => quiver.special_edge(quiver.source(e)) != Some(e),
            _ => true,
        }
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> impl fmt::Display + 'a {
        WordDisplay { w: self, q: quiver }
    }
}

struct WordDisplay<'a> {
    w: &'a LpaWord,
    q: &'a Quiver,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.p.is_empty() && self.w.q.is_empty() {
            return write!(f, "{}", self.q.vertices()[self.w.vertex]);
        }
        let mut parts: Vec<String> = self.w.p.iter().map(|&e| self.q.edges()[e].name.clone()).collect();
        parts.extend(self.w.q.iter().rev().map(|&e| format!("{}*", self.q.edges()[e].name)));
        write!(f, "{}", parts.join(" "))
    }
}

/// Product of two normal-form words, reduced.
pub fn mul_words(quiver: &Quiver, k: &CoeffRing, a: &LpaWord, b: &LpaWord) -> LinComb<LpaWord> {
    // q₁* p₂ is nonzero only when one path is a prefix of the other
    let (q1, p2) = (&a.q, &b.p);
    if a.co_source(quiver) != b.source(quiver) {
        return LinComb::zero();
    }
    let word = if q1.len() <= p2.len() {
        if p2[..q1.len()] != q1[..] {
            return LinComb::zero();
        }
        let mut p = a.p.clone();
        p.extend_from_slice(&p2[q1.len()..]);
        LpaWord {
            p,
            q: b.q.clone(),
            vertex: b.vertex,
        }
    } else {
        if q1[..p2.len()] != p2[..] {
            return LinComb::zero();
        }
        let mut q = b.q.clone();
        q.extend_from_slice(&q1[p2.len()..]);
        LpaWord {
            p: a.p.clone(),
            q,
            vertex: a.vertex,
        }
    };
    reduce_word(quiver, k, word)
}

/// Rewrites `p' e e* q'*` (with `e` special at `s(e)`) as
/// `p' q'* − Σ_{f ≠ e} p' f f* q'*`, recursively.
pub fn reduce_word(quiver: &Quiver, k: &CoeffRing, w: LpaWord) -> LinComb<LpaWord> {
    if w.is_reduced(quiver) {
        return LinComb::basis(w, k);
    }
    let e = *w.p.last().expect("unreduced word has edges");
    let v = quiver.source(e);
    let p = w.p[..w.p.len() - 1].to_vec();
    let q = w.q[..w.q.len() - 1].to_vec();
    let mut out = reduce_word(
        quiver,
        k,
        LpaWord {
            p: p.clone(),
            q: q.clone(),
            vertex: v,
        },
    );
    let minus_one = k.from_int(-1);
    for &f in quiver.out_edges(v) {
        if f == e {
            continue;
        }
        let mut pf = p.clone();
        pf.push(f);
        let mut qf = q.clone();
        qf.push(f);
        out.add_term(
            LpaWord {
                p: pf,
                q: qf,
                vertex: quiver.range(f),
            },
            minus_one.clone(),
        );
    }
    out
}
