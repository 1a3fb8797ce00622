//! Exact clique and independence numbers by branch and bound with a greedy
//! coloring bound.

use crate::error::{Error, Result};
use crate::graph::PlainGraph;

/// Graphs above this size are rejected.
pub const CLIQUE_CAP: usize = 128;

type Set = u128;

fn rows(g: &PlainGraph, cap: usize) -> Result<Vec<Set>> {
    let n = g.vertex_count();
    if n > cap.min(CLIQUE_CAP) {
        return Err(Error::CapExceeded { what: "vertices for clique search", limit: cap.min(CLIQUE_CAP), actual: n });
    }
    Ok((0..n).map(|v| g.neighbors(v).fold(0, |s, u| s | 1 << u)).collect())
}

/// A maximum clique, vertices ascending.
pub fn max_clique(g: &PlainGraph, cap: usize) -> Result<Vec<usize>> {
    let adj = rows(g, cap)?;
    let n = adj.len();
    let mut best: Vec<usize> = Vec::new();
    let mut current = Vec::new();
    let all: Set = if n == 128 { !0 } else { (1 << n) - 1 };
    expand(&adj, &mut current, all, &mut best);
    best.sort_unstable();
    Ok(best)
}

fn expand(adj: &[Set], current: &mut Vec<usize>, mut cand: Set, best: &mut Vec<usize>) {
    if cand == 0 {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    // greedy coloring: order[i] has color bound[i], colors nondecreasing
    let mut order = Vec::new();
    let mut bound = Vec::new();
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            uncolored &= !(1 << v);
            order.push(v);
            bound.push(color);
        }
    }
    for i in (0..order.len()).rev() {
        if current.len() + bound[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        expand(adj, current, cand & adj[v], best);
        current.pop();
        cand &= !(1 << v);
    }
}

pub fn clique_number(g: &PlainGraph, cap: usize) -> Result<usize> {
    Ok(max_clique(g, cap)?.len())
}

pub fn independence_number(g: &PlainGraph, cap: usize) -> Result<usize> {
    clique_number(&g.complement(), cap)
}
