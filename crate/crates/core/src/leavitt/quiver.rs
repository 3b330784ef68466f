use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub range: usize,
}

/// Finite quiver `(Q⁰, Q¹, s, r)` with its regular vertices precomputed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    regular: Vec<bool>,
    out_edges: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Semantic(format!("duplicate vertex `{}`", v)));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if edges[..i].iter().any(|f| f.name == e.name) || vertices.contains(&e.name) {
                return Err(Error::Semantic(format!("duplicate name `{}`", e.name)));
            }
            if e.source >= vertices.len() || e.range >= vertices.len() {
                return Err(Error::Semantic(format!(
                    "edge `{}` has an endpoint outside the vertex set",
                    e.name
                )));
            }
        }
        let mut out_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source].push(i);
        }
        let regular = out_edges.iter().map(|o| !o.is_empty()).collect();
        Ok(Quiver {
            vertices,
            edges,
            regular,
            out_edges,
        })
    }

    /// Builds from `(name, source, range)` triples given by vertex name.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |n: &str| {
            vs.iter().position(|v| v == n).ok_or_else(|| Error::UnknownSymbol {
                symbol: n.to_string(),
                context: "the declared vertices".into(),
            })
        };
        let es = edges
            .iter()
            .map(|&(n, s, r)| {
                Ok(Edge {
                    name: n.to_string(),
                    source: find(s)?,
                    range: find(r)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(vs, es)
    }

    /// One vertex with `d` loops.
    pub fn rose(d: usize) -> Self {
        let edges = (0..d)
            .map(|i| Edge {
                name: format!("e{}", i + 1),
                source: 0,
                range: 0,
            })
            .collect();
        Quiver::new(vec!["v".into()], edges).expect("rose is well formed")
    }

    /// `v --e--> w`
    pub fn a2() -> Self {
        Quiver::from_names(&["v", "w"], &[("e", "v", "w")]).expect("A2 is well formed")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn source(&self, e: usize) -> usize {
        self.edges[e].source
    }

    pub fn range(&self, e: usize) -> usize {
        self.edges[e].range
    }

    /// `s⁻¹(v)` in edge order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// `0 < |s⁻¹(v)| < ∞`; every emitting vertex of a finite quiver.
    pub fn is_regular(&self, v: usize) -> bool {
        self.regular[v]
    }

    pub fn regular_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.regular[v]).collect()
    }

    /// The edge whose `e e*` term is eliminated by the vertex relation at a
    /// regular vertex: the last edge leaving it.
    pub fn special_edge(&self, v: usize) -> Option<usize> {
        self.out_edges[v].last().copied()
    }

    /// All paths of length `n` (edge index sequences), lexicographic.
    pub fn paths(&self, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return Vec::new();
        }
        let mut cur: Vec<Vec<usize>> = (0..self.edges.len()).map(|e| vec![e]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for p in &cur {
                let end = self.range(*p.last().expect("nonempty"));
                for &e in &self.out_edges[end] {
                    let mut q = p.clone();
                    q.push(e);
                    next.push(q);
                }
            }
            cur = next;
        }
        cur.sort();
        cur
    }

    pub fn is_path(&self, p: &[usize]) -> bool {
        p.iter().all(|&e| e < self.edges.len())
            && p.windows(2).all(|w| self.range(w[0]) == self.source(w[1]))
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        writeln!(f, "edges:")?;
        for e in &self.edges {
            writeln!(
                f,
                "  {}: {} -> {}",
                e.name, self.vertices[e.source], self.vertices[e.range]
            )?;
        }
        Ok(())
    }
}
