use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Configuration;

/// Where graph distances between members of a subset are measured.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMode {
    /// Paths stay inside the subset.
    #[default]
    Induced,
    /// Paths may pass through any curve of the configuration.
    Ambient,
}

impl std::fmt::Display for DistanceMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DistanceMode::Induced => "induced",
            DistanceMode::Ambient => "ambient",
        })
    }
}

/// Undirected graph on curve indices; an edge joins `E_i`, `E_j` when `E_i . E_j > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGraph {
    adj: Vec<Vec<usize>>,
}

impl CurveGraph {
    pub fn from_configuration(c: &Configuration) -> Self {
        let n = c.len();
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| c.pairing(i, j) > 0);
        Self::from_edges(n, edges)
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.adj.len()).flat_map(|i| self.adj[i].iter().filter(move |&&j| j > i).map(move |&j| (i, j))).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    fn bfs(&self, src: usize, allowed: Option<&[bool]>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &w in &self.adj[u] {
                if dist[w].is_none() && allowed.is_none_or(|a| a[w]) {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    fn membership(&self, subset: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.adj.len()];
        for &i in subset {
            m[i] = true;
        }
        m
    }

    /// Distance from `a` to `b`; `None` when unreachable.
    pub fn distance(&self, a: usize, b: usize, subset: &[usize], mode: DistanceMode) -> Option<usize> {
        match mode {
            DistanceMode::Induced => self.bfs(a, Some(&self.membership(subset)))[b],
            DistanceMode::Ambient => self.bfs(a, None)[b],
        }
    }

    /// Distances between members of `subset`, indexed by position in `subset`.
    pub fn distance_table(&self, subset: &[usize], mode: DistanceMode) -> Vec<Vec<Option<usize>>> {
        let member = self.membership(subset);
        subset
            .iter()
            .map(|&a| {
                let d = match mode {
                    DistanceMode::Induced => self.bfs(a, Some(&member)),
                    DistanceMode::Ambient => self.bfs(a, None),
                };
                subset.iter().map(|&b| d[b]).collect()
            })
            .collect()
    }

    /// Connected components of the subgraph induced on `subset`, each sorted.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let member = self.membership(subset);
        let mut seen = vec![false; self.adj.len()];
        let mut out = Vec::new();
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        for &s in &sorted {
            if seen[s] {
                continue;
            }
            let d = self.bfs(s, Some(&member));
            let comp: Vec<usize> = sorted.iter().copied().filter(|&v| d[v].is_some()).collect();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, subset: &[usize]) -> bool {
        self.components(subset).len() <= 1
    }

    pub fn all_vertices(&self) -> Vec<usize> {
        (0..self.adj.len()).collect()
    }

    /// Largest distance between members of `subset`; `None` when some pair is unreachable.
    pub fn diameter(&self, subset: &[usize], mode: DistanceMode) -> Option<usize> {
        let table = self.distance_table(subset, mode);
        let mut best = 0;
        for row in &table {
            for d in row {
                best = best.max((*d)?);
            }
        }
        Some(best)
    }
}
