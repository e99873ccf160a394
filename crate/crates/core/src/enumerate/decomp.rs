//! Decompositions of multilinear paths into primitive closed paths, their
//! type diagrams, and admissibility (triangles must be fans, consecutive
//! mark-2 edges must be chains).

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::quiver::{canonical_letters, ArrowRef, PathWord, Quiver, VertexId};

use super::letters_multilinear;

/// A partition of the letters of a path into primitive closed paths. Parts
/// are canonical words, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub parts: Vec<PathWord>,
}

impl Decomposition {
    fn from_cycles(cycles: &[Vec<ArrowRef>]) -> Self {
        let mut parts: Vec<PathWord> = cycles
            .iter()
            .map(|c| PathWord::new(canonical_letters(c)))
            .collect();
        parts.sort();
        Decomposition { parts }
    }

    pub fn display(&self, q: &Quiver) -> String {
        let parts: Vec<String> = self.parts.iter().map(|p| q.display_word(p)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Intersection graph of a decomposition. Edges are keyed `(i, j)` with
/// `i < j` and carry the number of shared vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub nodes: usize,
    pub edges: BTreeMap<(usize, usize), u32>,
}

impl Diagram {
    pub fn mark(&self, i: usize, j: usize) -> Option<u32> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.nodes)
            .filter(|&j| j != i && self.mark(i, j).is_some())
            .collect()
    }

    /// Isomorphism respecting marks, by trying every node permutation.
    /// Intended for the small diagrams of examples.
    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        if self.nodes != other.nodes || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut marks_a: Vec<u32> = self.edges.values().copied().collect();
        let mut marks_b: Vec<u32> = other.edges.values().copied().collect();
        marks_a.sort();
        marks_b.sort();
        if marks_a != marks_b {
            return false;
        }
        let mut perm: Vec<usize> = (0..self.nodes).collect();
        self.permutations_match(other, &mut perm, 0)
    }

    fn permutations_match(&self, other: &Diagram, perm: &mut Vec<usize>, k: usize) -> bool {
        if k == perm.len() {
            return self
                .edges
                .iter()
                .all(|(&(i, j), &m)| other.mark(perm[i], perm[j]) == Some(m));
        }
        for s in k..perm.len() {
            perm.swap(k, s);
            if self.permutations_match(other, perm, k + 1) {
                perm.swap(k, s);
                return true;
            }
            perm.swap(k, s);
        }
        false
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.edges.is_empty() {
            return "(no edges)".to_string();
        }
        self.edges
            .iter()
            .map(|(&(i, j), m)| format!("{} -{}- {}", labels[i], m, labels[j]))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Biconnected components as edge lists.
    fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.nodes;
        let adj: Vec<Vec<usize>> = (0..n).map(|i| self.neighbors(i)).collect();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut stack: Vec<(usize, usize)> = Vec::new();
        let mut out = Vec::new();
        for root in 0..n {
            if disc[root] == usize::MAX {
                block_dfs(root, usize::MAX, &adj, &mut disc, &mut low, &mut timer, &mut stack, &mut out);
            }
        }
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn block_dfs(
    u: usize,
    parent: usize,
    adj: &[Vec<usize>],
    disc: &mut [usize],
    low: &mut [usize],
    timer: &mut usize,
    stack: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    disc[u] = *timer;
    low[u] = *timer;
    *timer += 1;
    for &v in &adj[u] {
        if v == parent {
            continue;
        }
        if disc[v] == usize::MAX {
            stack.push((u, v));
            block_dfs(v, u, adj, disc, low, timer, stack, out);
            low[u] = low[u].min(low[v]);
            if low[v] >= disc[u] {
                let mut block = Vec::new();
                while let Some(e) = stack.pop() {
                    block.push(e);
                    if e == (u, v) {
                        break;
                    }
                }
                out.push(block);
            }
        } else if disc[v] < disc[u] {
            stack.push((u, v));
            low[u] = low[u].min(disc[v]);
        }
    }
}

/// Calls `visit` on every decomposition of a balanced multilinear letter
/// set, as raw cycles, until it breaks.
fn for_each_decomposition<F>(q: &Quiver, letters: &[ArrowRef], visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Vec<ArrowRef>]) -> ControlFlow<()>,
{
    let mut remaining = letters.to_vec();
    remaining.sort();
    let mut parts = Vec::new();
    decompose_rest(q, &remaining, &mut parts, visit)
}

fn decompose_rest<F>(
    q: &Quiver,
    remaining: &[ArrowRef],
    parts: &mut Vec<Vec<ArrowRef>>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vec<ArrowRef>]) -> ControlFlow<()>,
{
    if remaining.is_empty() {
        return visit(parts);
    }
    for cycle in primitive_cycles_through_first(q, remaining) {
        let rest: Vec<ArrowRef> = remaining
            .iter()
            .filter(|r| !cycle.contains(r))
            .copied()
            .collect();
        parts.push(cycle);
        decompose_rest(q, &rest, parts, visit)?;
        parts.pop();
    }
    ControlFlow::Continue(())
}

/// Primitive closed paths that start with `letters[0]` and use only letters
/// of the (sorted) set.
fn primitive_cycles_through_first(q: &Quiver, letters: &[ArrowRef]) -> Vec<Vec<ArrowRef>> {
    let first = letters[0];
    let start = q.head(first);
    let mut out = Vec::new();
    if q.tail(first) == start {
        out.push(vec![first]);
        return out;
    }
    let mut path = vec![first];
    let mut visited = BTreeSet::from([start, q.tail(first)]);
    let mut used = vec![false; letters.len()];
    used[0] = true;
    extend_cycle(q, letters, start, &mut path, &mut visited, &mut used, &mut out);
    out
}

fn extend_cycle(
    q: &Quiver,
    letters: &[ArrowRef],
    start: VertexId,
    path: &mut Vec<ArrowRef>,
    visited: &mut BTreeSet<VertexId>,
    used: &mut [bool],
    out: &mut Vec<Vec<ArrowRef>>,
) {
    let cur = q.tail(*path.last().unwrap());
    for k in 0..letters.len() {
        let r = letters[k];
        if used[k] || q.head(r) != cur || q.tail(r) == cur {
            continue;
        }
        let next = q.tail(r);
        if next == start {
            let mut cycle = path.clone();
            cycle.push(r);
            out.push(cycle);
        } else if !visited.contains(&next) {
            used[k] = true;
            visited.insert(next);
            path.push(r);
            extend_cycle(q, letters, start, path, visited, used, out);
            path.pop();
            visited.remove(&next);
            used[k] = false;
        }
    }
}

fn require_multilinear(q: &Quiver, w: &PathWord) -> Result<()> {
    q.check_letters(w)?;
    if !q.is_closed(w) {
        return Err(Error::NotClosed);
    }
    if !letters_multilinear(&w.letters) {
        return Err(Error::NotMultilinear);
    }
    Ok(())
}

/// All decompositions of a multilinear closed path, sorted.
pub fn enumerate_decompositions(q: &Quiver, w: &PathWord) -> Result<Vec<Decomposition>> {
    require_multilinear(q, w)?;
    let mut found = BTreeSet::new();
    let _ = for_each_decomposition(q, &w.letters, &mut |cycles| {
        found.insert(Decomposition::from_cycles(cycles));
        ControlFlow::Continue(())
    });
    Ok(found.into_iter().collect())
}

pub fn type_diagram(q: &Quiver, d: &Decomposition) -> Diagram {
    let verts: Vec<BTreeSet<VertexId>> = d.parts.iter().map(|p| q.word_vertices(&p.letters)).collect();
    let mut edges = BTreeMap::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let t = verts[i].intersection(&verts[j]).count() as u32;
            if t > 0 {
                edges.insert((i, j), t);
            }
        }
    }
    Diagram {
        nodes: verts.len(),
        edges,
    }
}

/// Marks are 1 or 2 and every cycle of the diagram is a triangle marked
/// with 1's; equivalently, every biconnected component is a single edge or
/// such a triangle.
pub fn diagram_admissible(dg: &Diagram) -> bool {
    if dg.edges.values().any(|&m| m != 1 && m != 2) {
        return false;
    }
    dg.blocks().iter().all(|block| match block.len() {
        1 => true,
        3 => {
            let nodes: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
            nodes.len() == 3 && block.iter().all(|&(a, b)| dg.mark(a, b) == Some(1))
        }
        _ => false,
    })
}

/// Diagram admissibility plus the fan and chain conditions.
pub fn decomposition_admissible(q: &Quiver, d: &Decomposition) -> bool {
    let dg = type_diagram(q, d);
    if !diagram_admissible(&dg) {
        return false;
    }
    let verts: Vec<BTreeSet<VertexId>> = d.parts.iter().map(|p| q.word_vertices(&p.letters)).collect();
    let meet = |i: usize, j: usize| -> BTreeSet<VertexId> { verts[i].intersection(&verts[j]).copied().collect() };
    for block in dg.blocks().iter().filter(|b| b.len() == 3) {
        let nodes: Vec<usize> = block
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let (i, j, k) = (nodes[0], nodes[1], nodes[2]);
        let m = meet(i, j);
        if m.len() != 1 || meet(i, k) != m || meet(j, k) != m {
            return false;
        }
    }
    for j in 0..dg.nodes {
        let twos: Vec<usize> = dg
            .neighbors(j)
            .into_iter()
            .filter(|&i| dg.mark(i, j) == Some(2))
            .collect();
        for &i in &twos {
            for &k in &twos {
                if i != k && !is_chain(q, &d.parts[j], &meet(i, j), &verts[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// `b_j ~ c_1 c_2` where `c_1` runs between the two vertices of `shared`
/// and avoids `other` entirely.
fn is_chain(q: &Quiver, bj: &PathWord, shared: &BTreeSet<VertexId>, other: &BTreeSet<VertexId>) -> bool {
    let cycle: Vec<VertexId> = bj.letters.iter().map(|&r| q.head(r)).collect();
    let ends: Vec<usize> = (0..cycle.len()).filter(|&p| shared.contains(&cycle[p])).collect();
    if ends.len() != 2 {
        return false;
    }
    let n = cycle.len();
    let arc_clear = |from: usize, to: usize| {
        let mut p = from;
        loop {
            if other.contains(&cycle[p]) {
                return false;
            }
            if p == to {
                return true;
            }
            p = (p + 1) % n;
        }
    };
    arc_clear(ends[0], ends[1]) || arc_clear(ends[1], ends[0])
}

/// First admissible decomposition of a balanced multilinear letter set.
pub(crate) fn letters_admissible(q: &Quiver, letters: &[ArrowRef]) -> Option<Decomposition> {
    let mut witness = None;
    let _ = for_each_decomposition(q, letters, &mut |cycles| {
        let d = Decomposition::from_cycles(cycles);
        if decomposition_admissible(q, &d) {
            witness = Some(d);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    witness
}

/// Returns an admissible decomposition when the path is admissible.
pub fn path_admissible(q: &Quiver, w: &PathWord) -> Result<Option<Decomposition>> {
    require_multilinear(q, w)?;
    Ok(letters_admissible(q, &w.letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loops(names: &[&str]) -> Quiver {
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, "v", "v")).collect();
        Quiver::from_parts(&["v"], &arrows).unwrap()
    }

    fn diagram(nodes: usize, edges: &[(usize, usize, u32)]) -> Diagram {
        Diagram {
            nodes,
            edges: edges.iter().map(|&(i, j, m)| ((i.min(j), i.max(j)), m)).collect(),
        }
    }

    #[test]
    fn loops_split_into_single_parts() {
        let q = loops(&["a", "b"]);
        let w = q.parse_word("a b").unwrap();
        let ds = enumerate_decompositions(&q, &w).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].display(&q), "{a, b}");
        let prim = q.parse_word("a").unwrap();
        assert_eq!(enumerate_decompositions(&q, &prim).unwrap().len(), 1);
        let bad = q.parse_word("a a").unwrap();
        assert_eq!(enumerate_decompositions(&q, &bad), Err(Error::NotMultilinear));
    }

    #[test]
    fn diagram_rules() {
        assert!(diagram_admissible(&diagram(3, &[(0, 1, 2), (1, 2, 2)])));
        assert!(diagram_admissible(&diagram(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)])));
        assert!(!diagram_admissible(&diagram(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 1)])));
        assert!(!diagram_admissible(&diagram(2, &[(0, 1, 3)])));
        let square = diagram(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)]);
        assert!(!diagram_admissible(&square));
        let bowtie = diagram(5, &[(0, 1, 1), (1, 2, 1), (0, 2, 1), (2, 3, 1), (3, 4, 1), (2, 4, 1)]);
        assert!(diagram_admissible(&bowtie));
        assert!(diagram_admissible(&diagram(1, &[])));
    }

    #[test]
    fn isomorphism_respects_marks() {
        let a = diagram(3, &[(0, 1, 2), (1, 2, 1)]);
        let b = diagram(3, &[(2, 0, 2), (0, 1, 1)]);
        let c = diagram(3, &[(0, 1, 1), (1, 2, 1)]);
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn loop_counts_at_one_vertex() {
        let q = loops(&["a", "b", "c", "d"]);
        let three = q.parse_word("a b c").unwrap();
        assert!(path_admissible(&q, &three).unwrap().is_some());
        let four = q.parse_word("a b c d").unwrap();
        assert!(path_admissible(&q, &four).unwrap().is_none());
    }

    #[test]
    fn two_cycles() {
        let q = Quiver::from_parts(
            &["u", "v", "w"],
            &[("p", "u", "v"), ("q", "v", "w"), ("r", "w", "v")],
        )
        .unwrap();
        let w = q.parse_word("p* p q q*").unwrap();
        let ds = enumerate_decompositions(&q, &w).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(type_diagram(&q, &ds[0]), diagram(2, &[(0, 1, 1)]));
        assert!(path_admissible(&q, &w).unwrap().is_some());
        let w2 = q.parse_word("q q* r* r").unwrap();
        let ds = enumerate_decompositions(&q, &w2).unwrap();
        assert_eq!(ds.len(), 2);
        for d in &ds {
            assert_eq!(type_diagram(&q, d), diagram(2, &[(0, 1, 2)]));
        }
    }

    #[test]
    fn chain_arcs() {
        // A 4-cycle b_j through u, v, w, s; b_i meets it at u, v and b_k at w, s.
        let q = Quiver::from_parts(
            &["u", "v", "w", "s"],
            &[("e1", "u", "v"), ("e2", "v", "w"), ("e3", "w", "s"), ("e4", "s", "u")],
        )
        .unwrap();
        let bj = q.parse_word("e1 e2 e3 e4").unwrap();
        let id = |n: &str| q.vertex_id(n).unwrap();
        let uv = BTreeSet::from([id("u"), id("v")]);
        let ws = BTreeSet::from([id("w"), id("s")]);
        let uw = BTreeSet::from([id("u"), id("w")]);
        let vs = BTreeSet::from([id("v"), id("s")]);
        assert!(is_chain(&q, &bj, &uv, &ws));
        assert!(!is_chain(&q, &bj, &uw, &vs));
        assert!(!is_chain(&q, &bj, &uv, &uv));
    }
}
