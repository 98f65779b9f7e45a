//! Feynman graphs: labeled multigraphs with loops, their genus
//! bookkeeping, and half-edge automorphism counting.

pub mod catalog;
mod automorphism;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use automorphism::{count_automorphisms, MAX_AUTOMORPHISM_VERTICES};

/// Connected labeled multigraph. Vertices are stored 0-based; edge `k`
/// carries the formal variable `q_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FeynmanGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl FeynmanGraph {
    /// Builds and validates a graph from 1-based endpoint pairs.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        let mut zero_based = Vec::with_capacity(edges.len());
        for (k, &(u, v)) in edges.iter().enumerate() {
            for endpoint in [u, v] {
                if endpoint == 0 || endpoint > vertex_count {
                    return Err(Error::EndpointOutOfRange {
                        edge: k + 1,
                        endpoint,
                        vertices: vertex_count,
                    });
                }
            }
            zero_based.push((u - 1, v - 1));
        }
        let g = Self {
            vertex_count,
            edges: zero_based,
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks every structural invariant.
    pub fn validate(&self) -> Result<()> {
        if self.vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            for endpoint in [u, v] {
                if endpoint >= self.vertex_count {
                    return Err(Error::EndpointOutOfRange {
                        edge: k + 1,
                        endpoint: endpoint + 1,
                        vertices: self.vertex_count,
                    });
                }
            }
        }
        // union-find over edges
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut components = self.vertex_count;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        if components != 1 {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 0-based endpoint pairs, in labeling order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_loop(&self, k: usize) -> bool {
        let (u, v) = self.edges[k];
        u == v
    }

    pub fn loop_count(&self) -> usize {
        (0..self.edge_count()).filter(|&k| self.is_loop(k)).count()
    }

    /// First Betti number `|E| - |V| + 1`.
    pub fn first_betti(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    pub fn total_genus(&self, gf: &GenusFunction) -> Result<usize> {
        gf.check_len(self)?;
        Ok(self.first_betti() + gf.0.iter().map(|&g| g as usize).sum::<usize>())
    }

    /// Number of non-loop edge endpoints at each vertex.
    pub fn nonloop_valence(&self) -> Vec<usize> {
        let mut v = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            if a != b {
                v[a] += 1;
                v[b] += 1;
            }
        }
        v
    }

    /// Valence with loops counted twice.
    pub fn valence(&self) -> Vec<usize> {
        let mut v = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            v[a] += 1;
            v[b] += 1;
        }
        v
    }

    pub fn is_trivalent(&self) -> bool {
        self.valence().iter().all(|&d| d == 3)
    }

    /// Relabels vertices by `vertex_perm` (old index -> new index) and
    /// reorders edges so new edge `k` is old edge `edge_perm[k]`.
    pub fn relabeled(&self, vertex_perm: &[usize], edge_perm: &[usize]) -> Result<Self> {
        if vertex_perm.len() != self.vertex_count {
            return Err(Error::LengthMismatch {
                what: "vertex permutation",
                expected: self.vertex_count,
                got: vertex_perm.len(),
            });
        }
        if edge_perm.len() != self.edges.len() {
            return Err(Error::LengthMismatch {
                what: "edge permutation",
                expected: self.edges.len(),
                got: edge_perm.len(),
            });
        }
        let edges = edge_perm
            .iter()
            .map(|&k| {
                let (u, v) = self.edges[k];
                (vertex_perm[u], vertex_perm[v])
            })
            .collect();
        let g = Self {
            vertex_count: self.vertex_count,
            edges,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u + 1, v + 1]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(j.vertices, &edges)
    }
}

/// Wire form: `{"vertices": n, "edges": [[u, v], ...]}`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Per-vertex genus `g_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenusFunction(pub Vec<u32>);

impl GenusFunction {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&g| g == 0)
    }

    pub fn check_len(&self, g: &FeynmanGraph) -> Result<()> {
        if self.0.len() == g.vertex_count() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                what: "genus function",
                expected: g.vertex_count(),
                got: self.0.len(),
            })
        }
    }
}

/// Per-edge degrees `a = (a_1, ..., a_r)` with cached total `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchType {
    degrees: Vec<u32>,
    total: u64,
}

impl BranchType {
    pub fn new(degrees: Vec<u32>) -> Self {
        let total = degrees.iter().map(|&a| a as u64).sum();
        Self { degrees, total }
    }

    pub fn for_graph(g: &FeynmanGraph, degrees: Vec<u32>) -> Result<Self> {
        if degrees.len() != g.edge_count() {
            return Err(Error::LengthMismatch {
                what: "branch type",
                expected: g.edge_count(),
                got: degrees.len(),
            });
        }
        Ok(Self::new(degrees))
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }
}

impl From<Vec<u32>> for BranchType {
    fn from(v: Vec<u32>) -> Self {
        Self::new(v)
    }
}

/// All weak compositions of `total` into `parts` ordered parts, in
/// lexicographic order.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(remaining);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=remaining {
            cur.push(first);
            rec(remaining - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn theta() -> FeynmanGraph {
        FeynmanGraph::new(2, &[(1, 2), (1, 2), (1, 2)]).unwrap()
    }

    pub(crate) fn dumbbell() -> FeynmanGraph {
        FeynmanGraph::new(2, &[(1, 1), (1, 2), (2, 2)]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(theta().validate().is_ok());
        assert_eq!(FeynmanGraph::new(3, &[(1, 2)]), Err(Error::Disconnected));
        assert!(matches!(
            FeynmanGraph::new(2, &[(1, 3)]),
            Err(Error::EndpointOutOfRange { endpoint: 3, .. })
        ));
        assert_eq!(FeynmanGraph::new(0, &[]), Err(Error::NoVertices));
        assert!(FeynmanGraph::new(1, &[]).is_ok());
    }

    #[test]
    fn betti_and_genus() {
        let one_loop = FeynmanGraph::new(1, &[(1, 1)]).unwrap();
        assert_eq!(theta().first_betti(), 2);
        assert_eq!(dumbbell().first_betti(), 2);
        assert_eq!(one_loop.first_betti(), 1);
        assert_eq!(theta().total_genus(&GenusFunction(vec![0, 0])).unwrap(), 2);
        assert_eq!(theta().total_genus(&GenusFunction(vec![1, 0])).unwrap(), 3);
        assert_eq!(dumbbell().total_genus(&GenusFunction(vec![0, 0])).unwrap(), 2);
        assert!(theta().total_genus(&GenusFunction(vec![0])).is_err());
    }

    #[test]
    fn valences() {
        assert_eq!(theta().nonloop_valence(), vec![3, 3]);
        assert_eq!(dumbbell().nonloop_valence(), vec![1, 1]);
        assert_eq!(FeynmanGraph::new(1, &[(1, 1)]).unwrap().nonloop_valence(), vec![0]);
        assert_eq!(dumbbell().valence(), vec![3, 3]);
        assert!(theta().is_trivalent() && dumbbell().is_trivalent());
    }

    #[test]
    fn trivalent_counts_match_genus() {
        for g in catalog::all().into_iter().map(|e| e.graph).filter(|g| g.is_trivalent()) {
            let b = g.first_betti();
            assert_eq!(g.edge_count(), 3 * b - 3);
            assert_eq!(g.vertex_count(), 2 * b - 2);
        }
    }

    #[test]
    fn json_round_trip() {
        let j = dumbbell().to_json();
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"vertices":2,"edges":[[1,1],[1,2],[2,2]]}"#);
        assert_eq!(FeynmanGraph::from_json(&j).unwrap(), dumbbell());
    }

    #[test]
    fn compositions() {
        assert_eq!(weak_compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(weak_compositions(3, 3).len(), 10);
        assert_eq!(weak_compositions(0, 0), vec![Vec::<u32>::new()]);
        assert!(weak_compositions(1, 0).is_empty());
        assert!(weak_compositions(4, 3).iter().all(|c| c.iter().sum::<u32>() == 4));
    }

    #[test]
    fn branch_type_total() {
        let a = BranchType::for_graph(&theta(), vec![0, 0, 2]).unwrap();
        assert_eq!(a.total(), 2);
        assert!(BranchType::for_graph(&theta(), vec![1]).is_err());
    }
}
