//! Orderly generation of connected simple cubic graphs.
//!
//! A labelled graph is encoded by its upper-triangle adjacency bits read
//! column by column: `(0,1), (0,2), (1,2), (0,3), ...`. A graph is canonical
//! when no relabelling yields a lexicographically larger code. Deleting the
//! last edge (in code order) of a canonical graph leaves a canonical graph,
//! so every canonical graph is reached exactly once by adding edges after the
//! current last one and keeping only canonical results.

use std::fmt;

use crate::par::{self, Strategy};

/// Graphs here have at most this many vertices (one `u32` row each).
const MAX_VERTICES: usize = 32;

/// A canonically labelled connected cubic graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicGraph {
    vertices: usize,
    adjacency: Vec<u32>,
}

impl CubicGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        edges_of(&self.adjacency, self.vertices)
    }

    /// Canonical code as a hex string prefixed with the vertex count; equal
    /// strings mean isomorphic graphs.
    pub fn code(&self) -> String {
        let bits = code_bits(&self.adjacency, self.vertices);
        let mut hex = String::new();
        for chunk in bits.chunks(4) {
            let nibble = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (k, &b)| acc | (u8::from(b) << (3 - k)));
            hex.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        format!("cubic{}:{hex}", self.vertices)
    }
}

impl fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.code(), self.edges())
    }
}

fn edges_of(adj: &[u32], v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..v {
        for (i, row) in adj.iter().enumerate().take(j) {
            if row >> j & 1 == 1 {
                out.push((i, j));
            }
        }
    }
    out
}

fn code_bits(adj: &[u32], v: usize) -> Vec<bool> {
    let mut out = Vec::new();
    for j in 1..v {
        out.extend(adj[..j].iter().map(|row| row >> j & 1 == 1));
    }
    out
}

fn pair_of(pos: usize) -> (usize, usize) {
    let mut j = 1;
    while j * (j + 1) / 2 <= pos {
        j += 1;
    }
    (pos - j * (j - 1) / 2, j)
}

/// Column `j` of the code under the labelling `perm`, as a number whose most
/// significant bit is row 0.
#[inline]
fn column(adj: &[u32], perm: &[usize], j: usize) -> u32 {
    let target = perm[j];
    let mut col = 0u32;
    for (i, &p) in perm[..j].iter().enumerate() {
        if adj[p] >> target & 1 == 1 {
            col |= 1 << (31 - i);
        }
    }
    col
}

/// True if no relabelling of the graph has a larger code.
pub fn is_canonical(adj: &[u32], v: usize) -> bool {
    let identity: Vec<usize> = (0..v).collect();
    let original: Vec<u32> = (0..v).map(|j| column(adj, &identity, j)).collect();
    let mut perm = vec![0usize; v];
    let mut used = 0u32;

    fn search(
        j: usize,
        v: usize,
        adj: &[u32],
        original: &[u32],
        perm: &mut [usize],
        used: &mut u32,
    ) -> bool {
        if j == v {
            return true;
        }
        for c in 0..v {
            if *used >> c & 1 == 1 {
                continue;
            }
            perm[j] = c;
            let col = column(adj, perm, j);
            if col > original[j] {
                return false;
            }
            if col == original[j] {
                *used |= 1 << c;
                let ok = search(j + 1, v, adj, original, perm, used);
                *used &= !(1 << c);
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    search(0, v, adj, &original, &mut perm, &mut used)
}

#[derive(Clone)]
struct State {
    adj: Vec<u32>,
    /// Position of the last edge in code order, `None` for the empty graph.
    last: Option<usize>,
}

/// Every vertex can still reach degree 3 using pairs after `pos`.
fn feasible(adj: &[u32], v: usize, pos: usize) -> bool {
    let (i, j) = pair_of(pos);
    (0..v).all(|x| {
        let missing = 3 - adj[x].count_ones() as usize;
        let later_columns = v - 1 - j.max(x);
        let same_column = if x == j {
            j - 1 - i
        } else if x > i && x < j {
            1
        } else {
            0
        };
        let own_column = if x > j { x } else { 0 };
        missing <= later_columns + same_column + own_column
    })
}

fn children(s: &State, v: usize) -> Vec<State> {
    let total = v * (v - 1) / 2;
    let start = s.last.map_or(0, |p| p + 1);
    let mut out = Vec::new();
    for pos in start..total {
        let (i, j) = pair_of(pos);
        if s.adj[i].count_ones() >= 3 || s.adj[j].count_ones() >= 3 {
            continue;
        }
        let mut adj = s.adj.clone();
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
        if feasible(&adj, v, pos) && is_canonical(&adj, v) {
            out.push(State {
                adj,
                last: Some(pos),
            });
        }
    }
    out
}

fn is_connected(adj: &[u32], v: usize) -> bool {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let x = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[x] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen.count_ones() as usize == v
}

fn walk(s: State, v: usize, out: &mut Vec<CubicGraph>) {
    if s.adj[..v].iter().all(|r| r.count_ones() == 3) {
        if is_connected(&s.adj, v) {
            out.push(CubicGraph {
                vertices: v,
                adjacency: s.adj,
            });
        }
        return;
    }
    for c in children(&s, v) {
        walk(c, v, out);
    }
}

/// All connected simple cubic graphs on exactly `v` vertices, one per
/// isomorphism class, sorted by canonical code.
pub fn cubic_graphs(v: usize, strategy: Strategy) -> Vec<CubicGraph> {
    assert!(
        v <= MAX_VERTICES,
        "at most {MAX_VERTICES} vertices supported"
    );
    if v < 4 || v % 2 == 1 {
        return Vec::new();
    }
    // Expand breadth-first to get enough independent subtrees to share out.
    let mut frontier = vec![State {
        adj: vec![0; v],
        last: None,
    }];
    for _ in 0..v * 3 / 2 {
        if frontier.len() >= 256 {
            break;
        }
        let expanded = par::map(strategy, &frontier, |s| {
            if s.adj[..v].iter().all(|r| r.count_ones() == 3) {
                vec![s.clone()]
            } else {
                children(s, v)
            }
        });
        frontier = expanded.into_iter().flatten().collect();
    }
    let mut out: Vec<CubicGraph> = par::map(strategy, &frontier, |s| {
        let mut found = Vec::new();
        walk(s.clone(), v, &mut found);
        found
    })
    .into_iter()
    .flatten()
    .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_positions() {
        assert_eq!(pair_of(0), (0, 1));
        assert_eq!(pair_of(1), (0, 2));
        assert_eq!(pair_of(2), (1, 2));
        assert_eq!(pair_of(3), (0, 3));
        assert_eq!(pair_of(5), (2, 3));
    }

    #[test]
    fn small_counts() {
        assert_eq!(cubic_graphs(4, Strategy::Sequential).len(), 1);
        assert_eq!(cubic_graphs(6, Strategy::Sequential).len(), 2);
        assert_eq!(cubic_graphs(8, Strategy::Sequential).len(), 5);
    }

    #[test]
    fn path_labelling_is_not_canonical() {
        // Path 0-1-2: the labelling with the middle vertex first is larger.
        let adj = [0b010u32, 0b101, 0b010];
        assert!(!is_canonical(&adj, 3));
        let star = [0b110u32, 0b001, 0b001];
        assert!(is_canonical(&star, 3));
    }
}
