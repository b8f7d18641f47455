//! Vertices and the polyhedral graph: basis enumeration, breadth-first
//! search, diameter and the two-sided BFS meeting experiment.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{dot, Rational};
use crate::polyhedron::{binomial, Polyhedron};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub coords: Vec<Rational>,
    /// Sorted indices of the rows satisfied with equality.
    pub tight_rows: Vec<usize>,
}

impl Vertex {
    pub fn is_simple(&self, n: usize) -> bool {
        self.tight_rows.len() == n
    }
}

#[derive(Clone, Debug)]
pub struct PolyGraph {
    pub n: usize,
    pub vertices: Vec<Vertex>,
    /// Pairs `(u, w)` with `u < w`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub adjacency: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsTrace {
    pub source: usize,
    /// `layers[k]` holds the vertices at distance exactly `k`, sorted.
    pub layers: Vec<Vec<usize>>,
    pub eccentricity: usize,
}

impl BfsTrace {
    /// Vertices discovered within the first `j` iterations.
    pub fn prefix(&self, j: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.layers.iter().take(j + 1).flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn reached(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }
}

/// Every vertex of `P` by exhaustive enumeration of row bases, in order of the
/// lexicographically first basis producing it, together with the graph on
/// vertices (rays are not part of it).
pub fn enumerate_vertices(p: &Polyhedron, budget: u128) -> Result<PolyGraph> {
    let (m, n) = (p.m(), p.n());
    let required = binomial(m, n);
    if required > budget {
        return Err(Error::Budget { what: "basis", required, budget });
    }
    let rows = p.a().row_vecs();
    let rhs = p.rhs();
    let bases: Vec<Vec<usize>> = (0..m).combinations(n).collect();
    let found: Vec<Option<Vertex>> = bases
        .par_iter()
        .map(|basis| {
            let sub = p.a().select_rows(basis).ok()?;
            let b: Vec<Rational> = basis.iter().map(|&i| rhs[i].clone()).collect();
            let x = sub.solve(&b).ok()?;
            let mut tight = Vec::with_capacity(n);
            for (i, row) in rows.iter().enumerate() {
                let lhs = dot(row, &x);
                if lhs > rhs[i] {
                    return None;
                }
                if lhs == rhs[i] {
                    tight.push(i);
                }
            }
            Some(Vertex { coords: x, tight_rows: tight })
        })
        .collect();

    let mut seen = BTreeSet::new();
    let vertices: Vec<Vertex> = found
        .into_iter()
        .flatten()
        .filter(|v| seen.insert(v.coords.clone()))
        .collect();
    Ok(PolyGraph::from_vertices(p, vertices))
}

/// The system itself if every vertex is simple, otherwise its perturbation,
/// together with the graph of the result.
pub fn simple_system(p: &Polyhedron, budget: u128) -> Result<(Polyhedron, PolyGraph)> {
    let g = enumerate_vertices(p, budget)?;
    if g.is_simple() {
        return Ok((p.clone(), g));
    }
    let q = p.perturb(budget)?;
    let h = enumerate_vertices(&q, budget)?;
    Ok((q, h))
}

impl PolyGraph {
    /// Edges join vertices sharing `n - 1` linearly independent tight rows.
    pub fn from_vertices(p: &Polyhedron, vertices: Vec<Vertex>) -> Self {
        let n = p.n();
        let pairs: Vec<(usize, usize)> = (0..vertices.len()).tuple_combinations().collect();
        let edges: Vec<(usize, usize)> = pairs
            .into_par_iter()
            .filter(|&(u, w)| {
                let (tu, tw) = (&vertices[u].tight_rows, &vertices[w].tight_rows);
                let shared: Vec<usize> =
                    tu.iter().filter(|r| tw.binary_search(r).is_ok()).copied().collect();
                if shared.len() + 1 < n {
                    return false;
                }
                if tu.len() == n && tw.len() == n {
                    // subsets of a basis are independent
                    return shared.len() == n - 1;
                }
                n == 1 || p.a().select_rows(&shared).map(|s| s.rank()).unwrap_or(0) == n - 1
            })
            .collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for &(u, w) in &edges {
            adjacency[u].push(w);
            adjacency[w].push(u);
        }
        adjacency.iter_mut().for_each(|a| a.sort_unstable());
        Self { n, vertices, edges, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_simple(&self) -> bool {
        self.vertices.iter().all(|v| v.is_simple(self.n))
    }

    pub fn are_adjacent(&self, u: usize, w: usize) -> bool {
        self.adjacency.get(u).is_some_and(|a| a.binary_search(&w).is_ok())
    }

    /// Tight rows shared by two vertices.
    pub fn shared_rows(&self, u: usize, w: usize) -> Vec<usize> {
        let tw = &self.vertices[w].tight_rows;
        self.vertices[u]
            .tight_rows
            .iter()
            .filter(|r| tw.binary_search(r).is_ok())
            .copied()
            .collect()
    }

    /// Index of the vertex with the given coordinates.
    pub fn find_vertex(&self, coords: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|v| v.coords == coords)
    }

    pub fn bfs(&self, source: usize) -> BfsTrace {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        let mut layers: Vec<Vec<usize>> = vec![vec![source]];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    if layers.len() <= dist[w] {
                        layers.push(Vec::new());
                    }
                    layers[dist[w]].push(w);
                    queue.push_back(w);
                }
            }
        }
        layers.iter_mut().for_each(|l| l.sort_unstable());
        BfsTrace { source, eccentricity: layers.len() - 1, layers }
    }

    /// Shortest-path distance between two vertices, `None` if disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs(u).layers.iter().position(|l| l.binary_search(&v).is_ok())
    }

    /// Largest shortest-path distance over all vertex pairs.
    pub fn diameter(&self) -> Result<usize> {
        let v = self.vertices.len();
        if v == 0 {
            return Err(Error::NoVertex);
        }
        let eccentricities: Vec<Option<usize>> = (0..v)
            .into_par_iter()
            .map(|s| {
                let t = self.bfs(s);
                (t.reached() == v).then_some(t.eccentricity)
            })
            .collect();
        eccentricities
            .into_iter()
            .try_fold(0, |acc, e| e.map(|e| acc.max(e)))
            .ok_or(Error::Disconnected)
    }

    /// Grow BFS balls around `u` and `v` in lockstep and return the first
    /// radius at which they intersect.
    pub fn dual_bfs_meet(&self, u: usize, v: usize) -> Result<usize> {
        if u == v {
            return Ok(0);
        }
        let len = self.vertices.len();
        let mut in_u = vec![false; len];
        let mut in_v = vec![false; len];
        in_u[u] = true;
        in_v[v] = true;
        let mut front_u = vec![u];
        let mut front_v = vec![v];
        let mut radius = 0;
        loop {
            radius += 1;
            front_u = self.expand(&front_u, &mut in_u);
            front_v = self.expand(&front_v, &mut in_v);
            if in_u.iter().zip(&in_v).any(|(a, b)| *a && *b) {
                return Ok(radius);
            }
            if front_u.is_empty() && front_v.is_empty() {
                return Err(Error::Disconnected);
            }
        }
    }

    fn expand(&self, front: &[usize], seen: &mut [bool]) -> Vec<usize> {
        let mut next = Vec::new();
        for &x in front {
            for &y in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    next.push(y);
                }
            }
        }
        next
    }
}
