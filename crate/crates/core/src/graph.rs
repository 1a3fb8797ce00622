//! Simple undirected graphs and materialized gcd-graphs `G_f(D)`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::charpoly::CharPoly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::charpoly_faddeev;
use crate::poly::{divisors, Poly, PolyJson};
use crate::ramanujan::{gcd_classes, spectral_vector, validate_divisor_set};

/// Default cap on materialized gcd-graphs.
pub const DEFAULT_MAX_VERTICES: usize = 1024;

/// Undirected loopless graph stored as adjacency bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlainGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for PlainGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PlainGraph(n = {}, m = {})", self.n, self.edge_count())
    }
}

/// Summary from [`PlainGraph::props`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphProps {
    pub components: usize,
    pub component_sizes: Vec<usize>,
    pub bipartite: bool,
    pub degrees: Vec<usize>,
}

/// Result of a homogeneous-set check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Homogeneity {
    pub homogeneous: bool,
    /// `2 <= |X| < |V|`.
    pub nontrivial: bool,
}

impl PlainGraph {
    pub fn empty(n: usize) -> PlainGraph {
        let words = n.div_ceil(64).max(1);
        PlainGraph { n, words, rows: vec![0; n * words], labels: None }
    }

    /// `K_n`.
    pub fn complete(n: usize) -> PlainGraph {
        let mut g = PlainGraph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<PlainGraph> {
        let mut g = PlainGraph::empty(n);
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::invalid(format!("bad edge ({a}, {b}) for {n} vertices")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> PlainGraph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub(crate) fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(a).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }

    pub fn degree(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|a| self.neighbors(a).filter(move |&b| b > a).map(move |b| (a, b))).collect()
    }

    pub fn complement(&self) -> PlainGraph {
        let mut g = PlainGraph::empty(self.n);
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.has_edge(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Lexicographic product: `(x, y) ~ (x', y')` iff `x ~ x'`, or `x = x'` and `y ~ y'`.
    /// Vertex `(x, y)` gets index `x * |V(other)| + y`.
    pub fn wreath(&self, other: &PlainGraph) -> PlainGraph {
        let m = other.n;
        let mut g = PlainGraph::empty(self.n * m);
        for x in 0..self.n {
            for y in 0..m {
                let a = x * m + y;
                for y2 in other.neighbors(y).filter(|&y2| y2 > y) {
                    g.add_edge(a, x * m + y2);
                }
                for x2 in self.neighbors(x).filter(|&x2| x2 > x) {
                    for y2 in 0..m {
                        g.add_edge(a, x2 * m + y2);
                    }
                }
            }
        }
        g
    }

    /// Disjoint union of `copies` copies.
    pub fn repeat(&self, copies: usize) -> PlainGraph {
        PlainGraph::empty(copies).wreath(self)
    }

    pub fn props(&self) -> GraphProps {
        let mut color = vec![u8::MAX; self.n];
        let mut sizes = Vec::new();
        let mut bipartite = true;
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut size = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                size += 1;
                for b in self.neighbors(a) {
                    if color[b] == u8::MAX {
                        color[b] = 1 - color[a];
                        queue.push_back(b);
                    } else if color[b] == color[a] {
                        bipartite = false;
                    }
                }
            }
            sizes.push(size);
        }
        GraphProps {
            components: sizes.len(),
            component_sizes: sizes,
            bipartite,
            degrees: (0..self.n).map(|a| self.degree(a)).collect(),
        }
    }

    /// Every vertex outside `set` sees all or none of it.
    pub fn is_homogeneous(&self, set: &[usize]) -> Homogeneity {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        let size = inside.iter().filter(|&&b| b).count();
        let homogeneous = (0..self.n).filter(|&v| !inside[v]).all(|v| {
            let seen = set.iter().filter(|&&x| self.has_edge(v, x)).count();
            seen == 0 || seen == set.len()
        });
        Homogeneity { homogeneous, nontrivial: size >= 2 && size < self.n }
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.has_edge(a, b) as i64).collect()).collect()
    }

    /// Characteristic polynomial of the adjacency matrix, computed exactly.
    pub fn char_poly(&self, cap: usize) -> Result<CharPoly> {
        if self.n > cap {
            return Err(Error::CapExceeded { what: "vertices for matrix charpoly", limit: cap, actual: self.n });
        }
        let coeffs: Vec<BigInt> = charpoly_faddeev(&self.adjacency_matrix());
        Ok(CharPoly::from_coeffs(coeffs))
    }

    /// Checks a claimed spectrum `(value, multiplicity)` against the adjacency
    /// matrix: `prod (A - lambda I) = 0` over the distinct values, and
    /// `tr A^j = sum m lambda^j` for `j` below the number of distinct values.
    /// Symmetric matrices are diagonalizable, so this pins down the spectrum.
    pub fn has_spectrum(&self, spectrum: &[(i64, u64)]) -> Result<bool> {
        let n = self.n;
        if spectrum.iter().map(|&(_, m)| m).sum::<u64>() != n as u64 {
            return Ok(false);
        }
        let overflow = || Error::Inconsistency("overflow in spectrum check".into());
        let adj: Vec<Vec<usize>> = (0..n).map(|a| self.neighbors(a).collect()).collect();
        // A * M for dense M
        let times_adj = |m: &[Vec<i128>]| -> Option<Vec<Vec<i128>>> {
            adj.iter()
                .map(|nb| {
                    (0..n).try_fold(Vec::with_capacity(n), |mut row, j| {
                        row.push(nb.iter().try_fold(0i128, |acc, &l| acc.checked_add(m[l][j]))?);
                        Some(row)
                    })
                })
                .collect()
        };
        let identity: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
        let mut power = identity.clone();
        for j in 0..spectrum.len() as u32 {
            let trace: i128 = (0..n).map(|i| power[i][i]).sum();
            let expect = spectrum
                .iter()
                .try_fold(0i128, |acc, &(v, m)| acc.checked_add((m as i128).checked_mul((v as i128).checked_pow(j)?)?))
                .ok_or_else(overflow)?;
            if trace != expect {
                return Ok(false);
            }
            power = times_adj(&power).ok_or_else(overflow)?;
        }
        let mut prod = identity;
        for &(v, _) in spectrum {
            let mut next = times_adj(&prod).ok_or_else(overflow)?;
            for (row, old) in next.iter_mut().zip(&prod) {
                for (x, &o) in row.iter_mut().zip(old) {
                    *x = o.checked_mul(v as i128).and_then(|t| x.checked_sub(t)).ok_or_else(overflow)?;
                }
            }
            prod = next;
        }
        Ok(prod.iter().all(|row| row.iter().all(|&x| x == 0)))
    }

    /// Image of the graph under a vertex map `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> PlainGraph {
        let mut g = PlainGraph::empty(self.n);
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]);
        }
        g
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for v in 0..self.n {
            let label = self.labels.as_ref().map(|l| l[v].clone()).unwrap_or_else(|| v.to_string());
            let _ = writeln!(out, "  {v} [label=\"{label}\"];");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

/// `G_f(D)`: vertices are residues mod `f` in index order, `a ~ b` iff
/// `gcd(a - b, f)` lies in `D`.
#[derive(Debug, Clone)]
pub struct GcdGraph {
    modulus: Poly,
    d_set: Vec<Poly>,
    connection: Vec<usize>,
    graph: PlainGraph,
}

/// Adds two residues given by index, coefficientwise.
pub(crate) fn residue_add(field: &Field, a: usize, b: usize, len: usize) -> usize {
    let q = field.q() as usize;
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..len {
        let s = field.add(field.elem(a % q), field.elem(b % q));
        out += s.index() * scale;
        scale *= q;
        a /= q;
        b /= q;
    }
    out
}

pub fn build_graph(f: &Poly, d_set: &[Poly], cap: usize) -> Result<GcdGraph> {
    let d_set = validate_divisor_set(f, d_set)?;
    if f.is_constant() {
        return Err(Error::invalid("gcd-graphs need a modulus of positive degree"));
    }
    let field = f.field();
    let deg = f.deg();
    let n = (field.q() as usize)
        .checked_pow(deg as u32)
        .filter(|&n| n <= cap)
        .ok_or(Error::CapExceeded {
            what: "vertices",
            limit: cap,
            actual: (field.q() as u64).saturating_pow(deg as u32).min(usize::MAX as u64) as usize,
        })?;
    let divs = divisors(f, false)?;
    let in_d: Vec<bool> = divs.iter().map(|t| d_set.binary_search(t).is_ok()).collect();
    let classes = gcd_classes(f, &divs);
    let connection: Vec<usize> = (0..n).filter(|&h| in_d[classes[h] as usize]).collect();
    let mut graph = PlainGraph::empty(n);
    for a in 0..n {
        for &s in &connection {
            let b = residue_add(field, a, s, deg);
            if a < b {
                graph.add_edge(a, b);
            }
        }
    }
    let labels = (0..n).map(|i| Poly::from_index(field, i as u64).to_string()).collect();
    graph = graph.with_labels(labels);
    Ok(GcdGraph { modulus: f.clone(), d_set, connection, graph })
}

impl GcdGraph {
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn divisor_set(&self) -> &[Poly] {
        &self.d_set
    }

    pub fn graph(&self) -> &PlainGraph {
        &self.graph
    }

    pub fn into_graph(self) -> PlainGraph {
        self.graph
    }

    /// Residue indices `h` with `gcd(h, f)` in `D`.
    pub fn connection_set(&self) -> &[usize] {
        &self.connection
    }

    pub fn vertex(&self, i: usize) -> Poly {
        Poly::from_index(self.modulus.field(), i as u64)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            modulus: self.modulus.to_json(),
            d: self.d_set.iter().map(Poly::to_json).collect(),
            n: self.graph.vertex_count(),
            edges: self.graph.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub modulus: PolyJson,
    #[serde(rename = "D")]
    pub d: Vec<PolyJson>,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// `prod_g (x - lambda_g(f, D))`, computed from the spectral vector without materializing the graph.
pub fn char_poly_spectral(f: &Poly, d_set: &[Poly]) -> Result<CharPoly> {
    let sv = spectral_vector(f, d_set)?;
    Ok(CharPoly::from_roots(&sv.multiset()))
}

/// Vertex indices of the ideal generated by `h` in F_q[x]/f.
pub fn ideal_vertices(f: &Poly, h: &Poly) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = crate::poly::residues(f)
        .map(|a| a.mul(h).rem(f).map(|r| r.index() as usize))
        .collect::<Result<_>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
