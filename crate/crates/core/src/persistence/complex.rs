use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::PersistenceError;

/// A simplex as its strictly increasing list of (positive) vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Result<Self, PersistenceError> {
        if vertices.is_empty() {
            return Err(PersistenceError::InvalidSimplex("empty simplex".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v == 0) {
            return Err(PersistenceError::InvalidSimplex(format!(
                "vertex {v} is not a positive integer"
            )));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(PersistenceError::InvalidSimplex(format!(
                "repeated vertex in {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    /// Parses a whitespace-separated vertex list such as `"1 2 3"`.
    pub fn parse(text: &str) -> Result<Self, PersistenceError> {
        let vertices = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| PersistenceError::InvalidSimplex(format!("bad vertex `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Simplex::new(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces, the i-th omitting the i-th vertex.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }
}

impl Simplex {
    /// Every nonempty face, the simplex itself included.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(
        simplices: I,
    ) -> Result<Self, PersistenceError> {
        let simplices: BTreeSet<Simplex> = simplices.into_iter().collect();
        for s in &simplices {
            for f in s.facets() {
                if !simplices.contains(&f) {
                    return Err(PersistenceError::NotFaceClosed {
                        simplex: s.to_string(),
                        face: f.to_string(),
                    });
                }
            }
        }
        Ok(SimplicialComplex { simplices })
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    /// Simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        SimplicialComplex {
            simplices: self.simplices.iter().filter(|s| s.dim() <= k).cloned().collect(),
        }
    }

    /// The 1-skeleton together with the given simplices and all their faces.
    /// Each given simplex must already belong to `self`.
    pub fn restrict_to(&self, higher: &[Simplex]) -> Result<SimplicialComplex, PersistenceError> {
        let mut simplices = self.skeleton(1).simplices;
        for s in higher {
            if !self.contains(s) {
                return Err(PersistenceError::ComplexMismatch(format!(
                    "{s} is not a simplex of the complex"
                )));
            }
            simplices.extend(s.faces());
        }
        Ok(SimplicialComplex { simplices })
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for s in &self.simplices {
            *out.entry(s.dim()).or_insert(0) += 1;
        }
        out
    }
}

/// All cliques of the graph with at most `max_dim + 1` vertices.
pub fn flag_complex(
    vertices: &[u32],
    edges: &[(u32, u32)],
    max_dim: usize,
) -> Result<SimplicialComplex, PersistenceError> {
    if max_dim < 1 {
        return Err(PersistenceError::InvalidSimplex("max_dim must be at least 1".into()));
    }
    let vs: BTreeSet<u32> = vertices.iter().copied().collect();
    let mut adjacency: BTreeMap<u32, BTreeSet<u32>> = vs.iter().map(|&v| (v, BTreeSet::new())).collect();
    for &(a, b) in edges {
        for v in [a, b] {
            if !vs.contains(&v) {
                return Err(PersistenceError::UnknownVertex(v));
            }
        }
        if a == b {
            return Err(PersistenceError::InvalidSimplex(format!("self-loop on vertex {a}")));
        }
        adjacency.get_mut(&a).unwrap().insert(b);
        adjacency.get_mut(&b).unwrap().insert(a);
    }
    let mut simplices = Vec::new();
    // extend each clique only by larger common neighbours, so every clique is produced once
    fn grow(
        clique: &mut Vec<u32>,
        candidates: &BTreeSet<u32>,
        adjacency: &BTreeMap<u32, BTreeSet<u32>>,
        max_size: usize,
        out: &mut Vec<Simplex>,
    ) {
        out.push(Simplex(clique.clone()));
        if clique.len() == max_size {
            return;
        }
        for &v in candidates {
            let next: BTreeSet<u32> = candidates
                .range(v + 1..)
                .filter(|u| adjacency[&v].contains(u))
                .copied()
                .collect();
            clique.push(v);
            grow(clique, &next, adjacency, max_size, out);
            clique.pop();
        }
    }
    for &v in &vs {
        if v == 0 {
            return Err(PersistenceError::InvalidSimplex("vertex 0 is not positive".into()));
        }
        let higher: BTreeSet<u32> = adjacency[&v].range(v + 1..).copied().collect();
        grow(&mut vec![v], &higher, &adjacency, max_dim + 1, &mut simplices);
    }
    SimplicialComplex::from_simplices(simplices)
}
