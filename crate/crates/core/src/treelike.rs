//! Tree-like quivers: the reduced graph, good colorings and their
//! generator paths, the tree corollary, and the two-vertex case in closed
//! form.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::enumerate::{letters_form_tree_path, minimal_generating_set, Branch, GeneratorSet, TracePaths};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::quiver::{canonical_letters, letters_mdeg, ArrowId, ArrowRef, PathWord, Quiver, UnionFind, VertexId};

/// Colorings are enumerated as arrow subsets; this bounds the arrow count.
pub const COLORING_ARROW_CAP: usize = 24;

/// The underlying graph with loops removed and parallel edges merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatGraph {
    pub vertices: Vec<VertexId>,
    /// `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(VertexId, VertexId)>,
    /// Arrows of the quiver behind each edge, sorted.
    pub backrefs: Vec<Vec<ArrowId>>,
    /// Loop arrows per vertex, indexed by vertex id.
    pub loops: Vec<Vec<ArrowId>>,
}

pub fn hat_graph(q: &Quiver) -> HatGraph {
    let mut loops = vec![Vec::new(); q.num_vertices()];
    let mut parallel: BTreeMap<(VertexId, VertexId), Vec<ArrowId>> = BTreeMap::new();
    for a in q.arrow_ids() {
        let arrow = q.arrow(a);
        if arrow.is_loop() {
            loops[arrow.head.0].push(a);
        } else {
            let key = (arrow.head.min(arrow.tail), arrow.head.max(arrow.tail));
            parallel.entry(key).or_default().push(a);
        }
    }
    let (edges, backrefs) = parallel.into_iter().unzip();
    HatGraph {
        vertices: q.vertex_ids().collect(),
        edges,
        backrefs,
        loops,
    }
}

impl HatGraph {
    /// No cycles; components are trees.
    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        self.edges.iter().all(|&(u, v)| uf.union(u.0, v.0))
    }

    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty() && self.is_forest() && self.edges.len() + 1 == self.vertices.len()
    }

    fn edge_of(&self, a: ArrowId) -> Option<usize> {
        self.backrefs.iter().position(|b| b.contains(&a))
    }
}

/// A quiver is tree-like when its reduced graph has no cycles.
pub fn is_tree_like(q: &Quiver) -> bool {
    hat_graph(q).is_forest()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Coloring {
    /// Chosen loops, indexed by vertex id.
    pub theta_v: Vec<Vec<ArrowId>>,
    /// Chosen parallel arrows, indexed like the hat graph's edges.
    pub theta_x: Vec<Vec<ArrowId>>,
}

impl Coloring {
    pub fn empty(h: &HatGraph) -> Self {
        Coloring {
            theta_v: vec![Vec::new(); h.vertices.len()],
            theta_x: vec![Vec::new(); h.edges.len()],
        }
    }

    /// The coloring that selects exactly the given arrows.
    pub fn from_arrows(q: &Quiver, h: &HatGraph, arrows: &[ArrowId]) -> Self {
        let mut c = Coloring::empty(h);
        let set: BTreeSet<ArrowId> = arrows.iter().copied().collect();
        for a in set {
            let arrow = q.arrow(a);
            if arrow.is_loop() {
                c.theta_v[arrow.head.0].push(a);
            } else if let Some(e) = h.edge_of(a) {
                c.theta_x[e].push(a);
            }
        }
        c
    }

    pub fn is_empty(&self) -> bool {
        self.theta_v.iter().chain(&self.theta_x).all(Vec::is_empty)
    }

    pub fn arrows(&self) -> Vec<ArrowId> {
        let mut all: Vec<ArrowId> = self.theta_v.iter().chain(&self.theta_x).flatten().copied().collect();
        all.sort();
        all
    }

    fn fits(&self, h: &HatGraph) -> bool {
        self.theta_v.len() == h.vertices.len()
            && self.theta_x.len() == h.edges.len()
            && self.theta_v.iter().zip(&h.loops).all(|(t, l)| t.iter().all(|a| l.contains(a)))
            && self.theta_x.iter().zip(&h.backrefs).all(|(t, b)| t.iter().all(|a| b.contains(a)))
    }

    /// Vertices of the colored subgraph: those with chosen loops or on an
    /// edge with chosen arrows.
    fn support(&self, h: &HatGraph) -> BTreeSet<VertexId> {
        let mut s: BTreeSet<VertexId> = h
            .vertices
            .iter()
            .copied()
            .filter(|v| !self.theta_v[v.0].is_empty())
            .collect();
        for (e, &(u, v)) in h.edges.iter().enumerate() {
            if !self.theta_x[e].is_empty() {
                s.insert(u);
                s.insert(v);
            }
        }
        s
    }

    fn active_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.theta_x.len()).filter(|&e| !self.theta_x[e].is_empty())
    }
}

pub fn is_good_coloring(h: &HatGraph, theta: &Coloring) -> Result<bool> {
    if !h.is_forest() {
        return Err(Error::NotTreeLike);
    }
    if !theta.fits(h) {
        return Err(Error::BadColoring);
    }
    Ok(good(h, theta))
}

fn good(h: &HatGraph, theta: &Coloring) -> bool {
    if theta.is_empty() {
        return false;
    }
    if theta.theta_x.iter().any(|t| t.len() > 1 && t.len() % 2 == 1) {
        return false;
    }
    let support = theta.support(h);
    let mut uf = UnionFind::new(h.vertices.len());
    let mut degree = vec![0usize; h.vertices.len()];
    for e in theta.active_edges() {
        let (u, v) = h.edges[e];
        uf.union(u.0, v.0);
        degree[u.0] += 1;
        degree[v.0] += 1;
    }
    let root = uf.find(support.first().expect("non-empty").0);
    if support.iter().any(|v| uf.find(v.0) != root) {
        return false;
    }
    theta.active_edges().filter(|&e| theta.theta_x[e].len() == 1).all(|e| {
        let (u, v) = h.edges[e];
        [u, v].iter().all(|w| degree[w.0] != 1 || !theta.theta_v[w.0].is_empty())
    })
}

/// Good colorings of a tree-like quiver, in arrow-subset order.
pub fn good_colorings(q: &Quiver) -> Result<Vec<Coloring>> {
    let h = hat_graph(q);
    if !h.is_forest() {
        return Err(Error::NotTreeLike);
    }
    let n = q.num_arrows();
    if n > COLORING_ARROW_CAP {
        return Err(Error::CapExceeded {
            what: "arrows",
            value: n,
            cap: COLORING_ARROW_CAP,
        });
    }
    let found: Vec<Coloring> = (1u64..(1u64 << n))
        .into_par_iter()
        .filter_map(|mask| {
            let arrows: Vec<ArrowId> = (0..n).filter(|i| mask >> i & 1 == 1).map(ArrowId).collect();
            let c = Coloring::from_arrows(q, &h, &arrows);
            good(&h, &c).then_some(c)
        })
        .collect();
    Ok(found)
}

/// The refinement used outside characteristic 2: either a single edge
/// carrying four arrows and nothing else, or every edge carries at most two
/// arrows and every vertex meets at most three chosen loops and colored
/// edges in total.
pub fn satisfies_not_char2(h: &HatGraph, theta: &Coloring) -> bool {
    let active: Vec<usize> = theta.active_edges().collect();
    if active.len() == 1
        && theta.theta_x[active[0]].len() == 4
        && theta.theta_v.iter().all(Vec::is_empty)
    {
        return true;
    }
    if theta.theta_x.iter().any(|t| t.len() > 2) {
        return false;
    }
    let mut load: Vec<usize> = theta.theta_v.iter().map(Vec::len).collect();
    for &e in &active {
        let (u, v) = h.edges[e];
        load[u.0] += 1;
        load[v.0] += 1;
    }
    load.iter().all(|&k| k <= 3)
}

/// The closed path of a good coloring: every chosen loop once, every arrow
/// of an edge with several chosen arrows once, the lone arrow of an edge
/// with one chosen arrow in both directions. Built as an Euler circuit and
/// returned in canonical form.
pub fn b_theta(q: &Quiver, h: &HatGraph, theta: &Coloring) -> Result<PathWord> {
    if !is_good_coloring(h, theta)? {
        return Err(Error::BadColoring);
    }
    let mut out: Vec<Vec<ArrowRef>> = vec![Vec::new(); h.vertices.len()];
    let mut push = |r: ArrowRef| out[q.head(r).0].push(r);
    for &a in theta.theta_v.iter().flatten() {
        push(ArrowRef::plain(a));
    }
    for (e, chosen) in theta.theta_x.iter().enumerate() {
        let (u, _) = h.edges[e];
        if chosen.len() == 1 {
            push(ArrowRef::plain(chosen[0]));
            push(ArrowRef::plain(chosen[0]).star());
            continue;
        }
        for (i, &a) in chosen.iter().enumerate() {
            // First half leaves the smaller endpoint, second half returns.
            let forward = i < chosen.len() / 2;
            let plain = ArrowRef::plain(a);
            let leaves_u = q.head(plain) == u;
            push(if forward == leaves_u { plain } else { plain.star() });
        }
    }
    for list in &mut out {
        list.sort();
        list.reverse();
    }
    let start = *theta.support(h).first().expect("good colorings are non-empty");
    let letters = euler_circuit(q, out, start);
    if !letters_form_tree_path(q, &letters) {
        return Err(Error::NotTreePath);
    }
    Ok(PathWord::new(canonical_letters(&letters)))
}

/// Hierholzer on the letter graph; `out[v]` holds letters leaving `v` with
/// the next one to use at the back.
fn euler_circuit(q: &Quiver, mut out: Vec<Vec<ArrowRef>>, start: VertexId) -> Vec<ArrowRef> {
    let mut stack: Vec<(VertexId, Option<ArrowRef>)> = vec![(start, None)];
    let mut circuit = Vec::new();
    while let Some(&(v, via)) = stack.last() {
        match out[v.0].pop() {
            Some(r) => stack.push((q.tail(r), Some(r))),
            None => {
                stack.pop();
                circuit.extend(via);
            }
        }
    }
    circuit.reverse();
    circuit
}

/// Generators of a tree-like quiver read off its good colorings.
pub fn tree_like_generating_set(q: &Quiver, fs: FieldSpec) -> Result<GeneratorSet> {
    let h = hat_graph(q);
    let branch = Branch::of(fs);
    let mut traces = TracePaths::new();
    for theta in good_colorings(q)? {
        if branch == Branch::NotChar2 && !satisfies_not_char2(&h, &theta) {
            continue;
        }
        let w = b_theta(q, &h, &theta)?;
        traces.insert(letters_mdeg(q.num_arrows(), &w.letters), w);
    }
    Ok(GeneratorSet {
        branch,
        dets: q.arrow_ids().collect(),
        traces,
    })
}

/// For a quiver whose underlying graph is a tree the determinants generate.
pub fn tree_quiver_gens(q: &Quiver, fs: FieldSpec) -> Result<GeneratorSet> {
    if !q.is_tree() {
        return Err(Error::NotTree);
    }
    let set = minimal_generating_set(q, fs)?;
    if !set.traces.is_empty() {
        return Err(Error::Invalid("tree quiver produced trace generators".into()));
    }
    Ok(set)
}

/// Largest `p + q + l` accepted by [`two_vertex_generating_set`].
pub const TWO_VERTEX_ARROW_CAP: usize = 24;

/// Vertices `u`, `v`; loops `x1..xp` at `u`, loops `y1..yq` at `v`, arrows
/// `z1..zl` with head `u` and tail `v`.
pub fn two_vertex_quiver(p: usize, q: usize, l: usize) -> Result<Quiver> {
    let mut text = String::from("vertex u\nvertex v\n");
    for i in 1..=p {
        text.push_str(&format!("arrow x{i} u u\n"));
    }
    for i in 1..=q {
        text.push_str(&format!("arrow y{i} v v\n"));
    }
    for i in 1..=l {
        text.push_str(&format!("arrow z{i} u v\n"));
    }
    Quiver::parse(&text)
}

#[derive(Clone, Debug)]
pub struct TwoVertex {
    pub quiver: Quiver,
    pub set: GeneratorSet,
}

impl TwoVertex {
    pub fn count(&self) -> usize {
        self.set.len()
    }
}

/// Lists the four families of closed paths of the two-vertex quiver
/// directly, with the degree constraints outside characteristic 2, and adds
/// the determinants.
pub fn two_vertex_generating_set(p: usize, q: usize, l: usize, fs: FieldSpec) -> Result<TwoVertex> {
    let total = p + q + l;
    if total > TWO_VERTEX_ARROW_CAP {
        return Err(Error::CapExceeded {
            what: "arrows",
            value: total,
            cap: TWO_VERTEX_ARROW_CAP,
        });
    }
    let quiver = two_vertex_quiver(p, q, l)?;
    let id = |name: String| quiver.arrow_id(&name).map(ArrowRef::plain);
    let xs = (1..=p).map(|i| id(format!("x{i}"))).collect::<Result<Vec<_>>>()?;
    let ys = (1..=q).map(|i| id(format!("y{i}"))).collect::<Result<Vec<_>>>()?;
    let zs = (1..=l).map(|i| id(format!("z{i}"))).collect::<Result<Vec<_>>>()?;
    let branch = Branch::of(fs);
    let strict = branch == Branch::NotChar2;

    let x_sets = subsets(&xs);
    let y_sets = subsets(&ys);
    let mut words: Vec<Vec<ArrowRef>> = Vec::new();
    // a) and b): products of loops at one vertex.
    for s in x_sets.iter().chain(&y_sets) {
        if !s.is_empty() && (!strict || s.len() <= 3) {
            words.push(s.clone());
        }
    }
    // c) x's z y's z*.
    for &z in &zs {
        for xi in x_sets.iter().filter(|s| !s.is_empty() && (!strict || s.len() <= 2)) {
            for yj in y_sets.iter().filter(|s| !s.is_empty() && (!strict || s.len() <= 2)) {
                let mut w = xi.clone();
                w.push(z);
                w.extend(yj);
                w.push(z.star());
                words.push(w);
            }
        }
    }
    // d) x's z y's z* z z* ... with an even number of z's.
    for zset in subsets(&zs).into_iter().filter(|s| !s.is_empty() && s.len() % 2 == 0) {
        let t = zset.len() / 2;
        if strict && t > 2 {
            continue;
        }
        for xi in &x_sets {
            for yj in &y_sets {
                if strict && ((t == 1 && (xi.len() > 2 || yj.len() > 2)) || (t == 2 && (!xi.is_empty() || !yj.is_empty()))) {
                    continue;
                }
                let mut w = xi.clone();
                w.push(zset[0]);
                w.extend(yj);
                for (k, &z) in zset.iter().enumerate().skip(1) {
                    w.push(if k % 2 == 1 { z.star() } else { z });
                }
                words.push(w);
            }
        }
    }
    let n = quiver.num_arrows();
    let traces: TracePaths = words
        .into_iter()
        .map(|w| (letters_mdeg(n, &w), PathWord::new(canonical_letters(&w))))
        .collect();
    let set = GeneratorSet {
        branch,
        dets: quiver.arrow_ids().collect(),
        traces,
    };
    Ok(TwoVertex { quiver, set })
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0u64..(1u64 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Closed-form size of the two-vertex generating set in characteristic 2.
pub fn two_vertex_count_char2(p: u64, q: u64, l: u64) -> u128 {
    let pp = (1u128 << p) - 1;
    let qq = (1u128 << q) - 1;
    let even: u128 = (1..=l / 2).map(|t| binomial(l, 2 * t)).sum();
    pp + qq + l as u128 * pp * qq + even * (1u128 << p) * (1u128 << q) + (p + q + l) as u128
}

/// Closed-form size of the two-vertex generating set outside
/// characteristic 2.
pub fn two_vertex_count_not_char2(p: u64, q: u64, l: u64) -> u128 {
    let up_to = |n: u64, lo: u64, hi: u64| (lo..=hi).map(|r| binomial(n, r)).sum::<u128>();
    up_to(p, 1, 3)
        + up_to(q, 1, 3)
        + l as u128 * up_to(p, 1, 2) * up_to(q, 1, 2)
        + binomial(l, 2) * up_to(p, 0, 2) * up_to(q, 0, 2)
        + binomial(l, 4)
        + (p + q + l) as u128
}
