//! Graph isomorphism by joint color refinement and individualization.
//!
//! Both graphs are refined together so that color names agree; a branch dies
//! as soon as some color class has different sizes on the two sides. Twin
//! candidates are tried once, since swapping twins is an automorphism.

use crate::error::{Error, Result};
use crate::graph::PlainGraph;

/// Default cap on vertices for isomorphism checks.
pub const DEFAULT_ISO_CAP: usize = 256;
/// Default number of search nodes before giving up.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Returns `Some(perm)` with `g.has_edge(a, b) == h.has_edge(perm[a], perm[b])`,
/// or `None` when the graphs are not isomorphic.
pub fn is_isomorphic(g: &PlainGraph, h: &PlainGraph, cap: usize) -> Result<Option<Vec<usize>>> {
    is_isomorphic_with_budget(g, h, cap, DEFAULT_BUDGET)
}

pub fn is_isomorphic_with_budget(
    g: &PlainGraph,
    h: &PlainGraph,
    cap: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    if n.max(h.vertex_count()) > cap {
        return Err(Error::CapExceeded { what: "vertices for isomorphism", limit: cap, actual: n.max(h.vertex_count()) });
    }
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut search = Search { g, h, n, nodes: 0, budget };
    let mut colors: Vec<u64> = invariants(g).into_iter().chain(invariants(h)).collect();
    if !search.refine(&mut colors) {
        return Ok(None);
    }
    let found = search.descend(colors)?;
    if let Some(perm) = &found {
        if !verify(g, h, perm) {
            return Err(Error::Inconsistency("isomorphism certificate failed verification".into()));
        }
    }
    Ok(found)
}

/// Checks that `perm` is a bijection mapping edges onto edges.
pub fn verify(g: &PlainGraph, h: &PlainGraph, perm: &[usize]) -> bool {
    let n = g.vertex_count();
    if h.vertex_count() != n || perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    g.edge_count() == h.edge_count() && g.edges().into_iter().all(|(a, b)| h.has_edge(perm[a], perm[b]))
}

// degree, triangles through the vertex, size of its twin class
fn invariants(g: &PlainGraph) -> Vec<u64> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| {
            let deg = g.degree(v) as u64;
            let tri: u64 = g
                .neighbors(v)
                .map(|u| g.row(v).iter().zip(g.row(u)).map(|(a, b)| (a & b).count_ones() as u64).sum::<u64>())
                .sum::<u64>()
                / 2;
            let twins = (0..n).filter(|&u| u != v && are_twins(g, u, v)).count() as u64;
            (deg << 42) | (tri.min((1 << 28) - 1) << 14) | twins.min((1 << 14) - 1)
        })
        .collect()
}

/// `N(u) - {v} == N(v) - {u}`.
fn are_twins(g: &PlainGraph, u: usize, v: usize) -> bool {
    let (ru, rv) = (g.row(u), g.row(v));
    ru.iter().zip(rv).enumerate().all(|(w, (&a, &b))| {
        let mut mask = !0u64;
        if u / 64 == w {
            mask &= !(1 << (u % 64));
        }
        if v / 64 == w {
            mask &= !(1 << (v % 64));
        }
        a & mask == b & mask
    })
}

fn verify_or_none(g: &PlainGraph, h: &PlainGraph, perm: Vec<usize>) -> Option<Vec<usize>> {
    verify(g, h, &perm).then_some(perm)
}

struct Search<'a> {
    g: &'a PlainGraph,
    h: &'a PlainGraph,
    n: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn graph_of(&self, v: usize) -> (&PlainGraph, usize) {
        if v < self.n {
            (self.g, v)
        } else {
            (self.h, v - self.n)
        }
    }

    /// Refines to the coarsest equitable coloring of the disjoint union;
    /// false if the two halves disagree on some class size.
    fn refine(&self, colors: &mut Vec<u64>) -> bool {
        let total = 2 * self.n;
        let mut classes = count_classes(colors);
        loop {
            let sigs: Vec<(u64, Vec<u64>)> = (0..total)
                .map(|v| {
                    let (graph, local) = self.graph_of(v);
                    let offset = if v < self.n { 0 } else { self.n };
                    let mut nb: Vec<u64> = graph.neighbors(local).map(|u| colors[u + offset]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut order: Vec<usize> = (0..total).collect();
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut next = vec![0u64; total];
            let mut c = 0u64;
            for (i, &v) in order.iter().enumerate() {
                if i > 0 && sigs[v] != sigs[order[i - 1]] {
                    c += 1;
                }
                next[v] = c;
            }
            *colors = next;
            if !balanced(colors, self.n) {
                return false;
            }
            let now = c as usize + 1;
            if now == classes {
                return true;
            }
            classes = now;
        }
    }

    fn descend(&mut self, colors: Vec<u64>) -> Result<Option<Vec<usize>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget(self.budget));
        }
        let n = self.n;
        let mut size = std::collections::HashMap::new();
        for &c in &colors[..n] {
            *size.entry(c).or_insert(0usize) += 1;
        }
        let target = (0..n).filter(|&v| size[&colors[v]] > 1).min_by_key(|&v| (size[&colors[v]], v));
        let Some(v) = target else {
            let mut perm = vec![0; n];
            let mut by_color = std::collections::HashMap::new();
            for w in 0..n {
                by_color.insert(colors[n + w], w);
            }
            for (a, p) in perm.iter_mut().enumerate() {
                *p = by_color[&colors[a]];
            }
            return Ok(verify_or_none(self.g, self.h, perm));
        };
        let fresh = colors.iter().max().unwrap() + 1;
        let mut tried: Vec<usize> = Vec::new();
        for w in (0..n).filter(|&w| colors[n + w] == colors[v]) {
            if tried.iter().any(|&t| are_twins(self.h, t, w)) {
                continue;
            }
            tried.push(w);
            let mut next = colors.clone();
            next[v] = fresh;
            next[n + w] = fresh;
            if self.refine(&mut next) {
                if let Some(perm) = self.descend(next)? {
                    return Ok(Some(perm));
                }
            }
        }
        Ok(None)
    }
}

fn count_classes(colors: &[u64]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn balanced(colors: &[u64], n: usize) -> bool {
    let mut a = colors[..n].to_vec();
    let mut b = colors[n..].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}
