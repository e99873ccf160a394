//! Quivers, the doubled quiver `Q*`, path words and multidegrees.
//!
//! Arrows are kept sorted by name (bytewise), so the numeric order of
//! [`ArrowId`] is the name order and the derived order on [`ArrowRef`]
//! (arrow first, unstarred before starred) is the letter order used for
//! canonical forms.
//!
//! A word `a_1 ... a_s` composes like a matrix product: `tail(a_i) =
//! head(a_{i+1})`. Read left to right, each letter is traversed from its head
//! to its tail.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub head: VertexId,
    pub tail: VertexId,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.head == self.tail
    }
}

/// Unvalidated quiver description, as read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    /// `(name, head, tail)` triples.
    pub arrows: Vec<(String, String, String)>,
}

impl RawQuiver {
    /// Parses the line format: `vertex <name>`, `arrow <name> <head> <tail>`,
    /// `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawQuiver::default();
        for (idx, line) in text.lines().enumerate() {
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: &str| Error::Parse {
                line: idx + 1,
                msg: msg.to_string(),
            };
            match fields.as_slice() {
                [] => {}
                ["vertex", name] => raw.vertices.push(name.to_string()),
                ["vertex", ..] => return Err(err("expected `vertex <name>`")),
                ["arrow", name, head, tail] => {
                    raw.arrows
                        .push((name.to_string(), head.to_string(), tail.to_string()))
                }
                ["arrow", ..] => return Err(err("expected `arrow <name> <head> <tail>`")),
                [other, ..] => return Err(err(&format!("unknown directive `{other}`"))),
            }
        }
        Ok(raw)
    }
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, VertexId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

/// Checks a raw description and builds the quiver.
pub fn validate_quiver(raw: &RawQuiver) -> Result<Quiver> {
    let mut vertex_index = HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if vertex_index.insert(v.clone(), VertexId(i)).is_some() {
            return Err(Error::DuplicateVertex(v.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    let mut arrows = Vec::with_capacity(raw.arrows.len());
    for (name, head, tail) in &raw.arrows {
        if !seen.insert(name.clone()) {
            return Err(Error::DuplicateArrow(name.clone()));
        }
        let lookup = |v: &String| {
            vertex_index
                .get(v)
                .copied()
                .ok_or_else(|| Error::UndeclaredVertex {
                    arrow: name.clone(),
                    vertex: v.clone(),
                })
        };
        arrows.push(Arrow {
            name: name.clone(),
            head: lookup(head)?,
            tail: lookup(tail)?,
        });
    }
    arrows.sort_by(|a, b| a.name.as_bytes().cmp(b.name.as_bytes()));
    let arrow_index = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.clone(), ArrowId(i)))
        .collect();
    Ok(Quiver {
        vertices: raw.vertices.clone(),
        arrows,
        vertex_index,
        arrow_index,
    })
}

impl Quiver {
    pub fn parse(text: &str) -> Result<Self> {
        validate_quiver(&RawQuiver::parse(text)?)
    }

    /// Convenience constructor; arrows are `(name, head, tail)`.
    pub fn from_parts(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        validate_quiver(&RawQuiver {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(n, h, t)| (n.to_string(), h.to_string(), t.to_string()))
                .collect(),
        })
    }

    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| {
                    (
                        a.name.clone(),
                        self.vertices[a.head.0].clone(),
                        self.vertices[a.tail.0].clone(),
                    )
                })
                .collect(),
        }
    }

    /// Renders the quiver in the file format accepted by [`Quiver::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "arrow {} {} {}\n",
                a.name, self.vertices[a.head.0], self.vertices[a.tail.0]
            ));
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0]
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn head(&self, r: ArrowRef) -> VertexId {
        let a = &self.arrows[r.arrow.0];
        if r.starred {
            a.tail
        } else {
            a.head
        }
    }

    pub fn tail(&self, r: ArrowRef) -> VertexId {
        let a = &self.arrows[r.arrow.0];
        if r.starred {
            a.head
        } else {
            a.tail
        }
    }

    /// Parses a path word: whitespace-separated arrow names, `*` suffix for
    /// starred letters, `1@<vertex>` for an empty path.
    pub fn parse_word(&self, text: &str) -> Result<PathWord> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if let [single] = tokens.as_slice() {
            if let Some(v) = single.strip_prefix("1@") {
                return Ok(PathWord::empty(self.vertex_id(v)?));
            }
        }
        if tokens.is_empty() {
            return Err(Error::BadWord("empty word; write 1@<vertex>".into()));
        }
        let letters = tokens
            .iter()
            .map(|tok| {
                let (name, starred) = match tok.strip_suffix('*') {
                    Some(base) => (base, true),
                    None => (*tok, false),
                };
                if name.is_empty() || name.contains('*') || name.starts_with("1@") {
                    return Err(Error::BadWord(format!("bad letter `{tok}`")));
                }
                Ok(ArrowRef {
                    arrow: self.arrow_id(name)?,
                    starred,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PathWord::new(letters))
    }

    pub fn display_letter(&self, r: ArrowRef) -> String {
        if r.starred {
            format!("{}*", self.arrow_name(r.arrow))
        } else {
            self.arrow_name(r.arrow).to_string()
        }
    }

    pub fn display_word(&self, w: &PathWord) -> String {
        if w.letters.is_empty() {
            let v = w.basepoint.map(|v| self.vertex_name(v)).unwrap_or("?");
            return format!("1@{v}");
        }
        w.letters
            .iter()
            .map(|&r| self.display_letter(r))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn display_mdeg(&self, m: &Multidegree) -> String {
        let body = m
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, c)| format!("{}:{}", self.arrows[i].name, c))
            .collect::<Vec<_>>()
            .join(",");
        format!("{{{body}}}")
    }

    /// Vertex set `Ver(w)`.
    pub fn word_vertices(&self, letters: &[ArrowRef]) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = letters.iter().map(|&r| self.head(r)).collect();
        if let Some(&last) = letters.last() {
            out.insert(self.tail(last));
        }
        out
    }

    pub fn check_letters(&self, w: &PathWord) -> Result<()> {
        for r in &w.letters {
            if r.arrow.0 >= self.arrows.len() {
                return Err(Error::UnknownArrow(format!("#{}", r.arrow.0)));
            }
        }
        if let Some(v) = w.basepoint {
            if v.0 >= self.vertices.len() {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
        }
        Ok(())
    }

    pub fn is_composable(&self, letters: &[ArrowRef]) -> bool {
        letters
            .windows(2)
            .all(|p| self.tail(p[0]) == self.head(p[1]))
    }

    pub fn is_closed(&self, w: &PathWord) -> bool {
        match (w.letters.first(), w.letters.last()) {
            (Some(&f), Some(&l)) => self.is_composable(&w.letters) && self.head(f) == self.tail(l),
            _ => false,
        }
    }

    /// Connected components of the underlying graph, as a vertex labelling.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for a in &self.arrows {
            uf.union(a.head.0, a.tail.0);
        }
        (0..self.vertices.len()).map(|v| uf.find(v)).collect()
    }

    /// True when the underlying graph (loops and parallel arrows included)
    /// is a tree.
    pub fn is_tree(&self) -> bool {
        if self.vertices.is_empty() || self.arrows.len() + 1 != self.vertices.len() {
            return false;
        }
        let comp = self.components();
        comp.iter().all(|&c| c == comp[0])
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A letter of `Q*`: an arrow, possibly starred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowRef {
    pub arrow: ArrowId,
    pub starred: bool,
}

impl ArrowRef {
    pub fn plain(arrow: ArrowId) -> Self {
        ArrowRef {
            arrow,
            starred: false,
        }
    }

    pub fn star(self) -> Self {
        ArrowRef {
            arrow: self.arrow,
            starred: !self.starred,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub letters: Vec<ArrowRef>,
    /// Only meaningful for the empty path `1_v`.
    pub basepoint: Option<VertexId>,
}

impl PathWord {
    pub fn new(letters: Vec<ArrowRef>) -> Self {
        PathWord {
            letters,
            basepoint: None,
        }
    }

    pub fn empty(v: VertexId) -> Self {
        PathWord {
            letters: Vec::new(),
            basepoint: Some(v),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cyclic rotation by `k` letters to the left.
    pub fn rotated(&self, k: usize) -> PathWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        PathWord {
            letters,
            basepoint: self.basepoint,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    NotAPath,
    OpenPath,
    ClosedPath,
    EmptyPath,
}

pub fn path_kind(q: &Quiver, w: &PathWord) -> Result<PathKind> {
    q.check_letters(w)?;
    if w.letters.is_empty() {
        return Ok(PathKind::EmptyPath);
    }
    if !q.is_composable(&w.letters) {
        return Ok(PathKind::NotAPath);
    }
    let head = q.head(w.letters[0]);
    let tail = q.tail(*w.letters.last().unwrap());
    Ok(if head == tail {
        PathKind::ClosedPath
    } else {
        PathKind::OpenPath
    })
}

/// `a_1 ... a_s` becomes `a_s* ... a_1*`.
pub fn star_path(w: &PathWord) -> PathWord {
    PathWord {
        letters: star_letters(&w.letters),
        basepoint: w.basepoint,
    }
}

pub(crate) fn star_letters(letters: &[ArrowRef]) -> Vec<ArrowRef> {
    letters.iter().rev().map(|r| r.star()).collect()
}

/// Per-arrow degree `deg_a + deg_{a*}`, indexed by [`ArrowId`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree {
    pub counts: Vec<u32>,
}

impl Multidegree {
    pub fn zero(num_arrows: usize) -> Self {
        Multidegree {
            counts: vec![0; num_arrows],
        }
    }

    pub fn unit(num_arrows: usize, a: ArrowId, times: u32) -> Self {
        let mut m = Self::zero(num_arrows);
        m.counts[a.0] = times;
        m
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn get(&self, a: ArrowId) -> u32 {
        self.counts[a.0]
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        Multidegree {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `self - other` when `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Multidegree { counts })
    }

    pub fn le(&self, other: &Multidegree) -> bool {
        self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, t: u32) -> Multidegree {
        Multidegree {
            counts: self.counts.iter().map(|c| c * t).collect(),
        }
    }
}

pub fn mdeg(q: &Quiver, w: &PathWord) -> Multidegree {
    letters_mdeg(q.num_arrows(), &w.letters)
}

pub(crate) fn letters_mdeg(num_arrows: usize, letters: &[ArrowRef]) -> Multidegree {
    let mut m = Multidegree::zero(num_arrows);
    for r in letters {
        m.counts[r.arrow.0] += 1;
    }
    m
}

/// Least word among the rotations of `letters` and of its star. Assumes the
/// word is closed.
pub(crate) fn canonical_letters(letters: &[ArrowRef]) -> Vec<ArrowRef> {
    let starred = star_letters(letters);
    let mut best = min_rotation(letters);
    let other = min_rotation(&starred);
    if other < best {
        best = other;
    }
    best
}

fn min_rotation(letters: &[ArrowRef]) -> Vec<ArrowRef> {
    let n = letters.len();
    let mut best: Option<Vec<ArrowRef>> = None;
    for k in 0..n {
        let cand: Vec<ArrowRef> = letters[k..].iter().chain(&letters[..k]).copied().collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// Canonical representative of the `~` class of a closed word.
pub fn canonicalize(q: &Quiver, w: &PathWord) -> Result<PathWord> {
    q.check_letters(w)?;
    if !q.is_closed(w) {
        return Err(Error::NotClosed);
    }
    Ok(PathWord::new(canonical_letters(&w.letters)))
}

/// Glues `drop` onto `keep`; arrow names are preserved.
pub fn glue_vertices(q: &Quiver, keep: &str, drop: &str) -> Result<Quiver> {
    q.vertex_id(keep)?;
    q.vertex_id(drop)?;
    if keep == drop {
        return Err(Error::SelfGlue(keep.to_string()));
    }
    let mut raw = q.to_raw();
    raw.vertices.retain(|v| v != drop);
    for (_, h, t) in raw.arrows.iter_mut() {
        if h == drop {
            *h = keep.to_string();
        }
        if t == drop {
            *t = keep.to_string();
        }
    }
    validate_quiver(&raw)
}

/// Swaps head and tail of every named arrow.
pub fn flip_arrows(q: &Quiver, subset: &[&str]) -> Result<Quiver> {
    for name in subset {
        q.arrow_id(name)?;
    }
    let mut raw = q.to_raw();
    for (name, h, t) in raw.arrows.iter_mut() {
        if subset.contains(&name.as_str()) {
            std::mem::swap(h, t);
        }
    }
    validate_quiver(&raw)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<VertexId>,
    pub letters: Vec<ArrowRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub double_arrows: Vec<ArrowId>,
    pub blocks: Vec<Block>,
    /// One edge `(block of head, block of tail, arrow)` per double arrow.
    pub tree: Vec<(usize, usize, ArrowId)>,
}

/// Blocks of a tree path and the tree joining them.
pub fn blocks_and_tree(q: &Quiver, w: &PathWord) -> Result<BlockDecomposition> {
    if !crate::enumerate::is_tree_path(q, w)? {
        return Err(Error::NotTreePath);
    }
    let doubles: BTreeSet<ArrowId> = w
        .letters
        .iter()
        .filter(|r| w.letters.contains(&r.star()))
        .map(|r| r.arrow)
        .collect();
    let verts: Vec<VertexId> = q.word_vertices(&w.letters).into_iter().collect();
    let mut uf = UnionFind::new(q.num_vertices());
    for &r in &w.letters {
        if !doubles.contains(&r.arrow) {
            uf.union(q.head(r).0, q.tail(r).0);
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    let mut block_of = HashMap::new();
    for &v in &verts {
        let root = uf.find(v.0);
        let idx = match roots.iter().position(|&r| r == root) {
            Some(i) => i,
            None => {
                roots.push(root);
                blocks.push(Block {
                    vertices: Vec::new(),
                    letters: Vec::new(),
                });
                roots.len() - 1
            }
        };
        blocks[idx].vertices.push(v);
        block_of.insert(v, idx);
    }
    for &r in &w.letters {
        if !doubles.contains(&r.arrow) {
            blocks[block_of[&q.head(r)]].letters.push(r);
        }
    }
    let tree = doubles
        .iter()
        .map(|&x| {
            let a = q.arrow(x);
            (block_of[&a.head], block_of[&a.tail], x)
        })
        .collect();
    Ok(BlockDecomposition {
        double_arrows: doubles.into_iter().collect(),
        blocks,
        tree,
    })
}

impl BlockDecomposition {
    /// Checks that the block graph is a tree and that leaf blocks carry arrows.
    pub fn is_valid_tree(&self) -> bool {
        let n = self.blocks.len();
        if n == 0 || self.tree.len() + 1 != n {
            return false;
        }
        let mut uf = UnionFind::new(n);
        for &(a, b, _) in &self.tree {
            if uf.find(a) == uf.find(b) {
                return false;
            }
            uf.union(a, b);
        }
        let mut degree = vec![0usize; n];
        for &(a, b, _) in &self.tree {
            degree[a] += 1;
            degree[b] += 1;
        }
        (0..n).all(|j| degree[j] > 1 || !self.blocks[j].letters.is_empty())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_arrow() -> Quiver {
        Quiver::from_parts(&["u", "v"], &[("z1", "u", "v")]).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert!(one_arrow().num_arrows() == 1);
        let undeclared = Quiver::from_parts(&[], &[("a", "u", "u")]);
        assert!(matches!(undeclared, Err(Error::UndeclaredVertex { .. })));
        let dup = Quiver::from_parts(&["v"], &[("a", "v", "v"), ("a", "v", "v")]);
        assert_eq!(dup, Err(Error::DuplicateArrow("a".into())));
        let dupv = Quiver::from_parts(&["v", "v"], &[]);
        assert_eq!(dupv, Err(Error::DuplicateVertex("v".into())));
    }

    #[test]
    fn parse_file_format() {
        let q = Quiver::parse("# comment\nvertex u\nvertex v  # trailing\n\narrow z1 u v\n").unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.arrow(ArrowId(0)).head, VertexId(0));
        assert!(matches!(
            Quiver::parse("vertex u\nedge a u u"),
            Err(Error::Parse { line: 2, .. })
        ));
        let again = Quiver::parse(&q.to_text()).unwrap();
        assert_eq!(again, q);
    }

    #[test]
    fn kinds() {
        let q = one_arrow();
        let w = q.parse_word("z1 z1*").unwrap();
        assert_eq!(path_kind(&q, &w).unwrap(), PathKind::ClosedPath);
        let w = q.parse_word("z1 z1").unwrap();
        assert_eq!(path_kind(&q, &w).unwrap(), PathKind::NotAPath);
        let w = q.parse_word("z1").unwrap();
        assert_eq!(path_kind(&q, &w).unwrap(), PathKind::OpenPath);
        let w = q.parse_word("1@v").unwrap();
        assert_eq!(path_kind(&q, &w).unwrap(), PathKind::EmptyPath);
        let looped = Quiver::from_parts(&["v"], &[("a", "v", "v")]).unwrap();
        let w = looped.parse_word("a").unwrap();
        assert_eq!(path_kind(&looped, &w).unwrap(), PathKind::ClosedPath);
        assert!(matches!(q.parse_word("zz"), Err(Error::UnknownArrow(_))));
    }

    #[test]
    fn star_and_canonical() {
        let q = Quiver::from_parts(
            &["v"],
            &[("x", "v", "v"), ("y", "v", "v"), ("z", "v", "v")],
        )
        .unwrap();
        let w = q.parse_word("x y* z").unwrap();
        assert_eq!(q.display_word(&star_path(&w)), "z* y x*");
        let other = q.parse_word("x* z* y").unwrap();
        assert_eq!(canonicalize(&q, &w).unwrap(), canonicalize(&q, &other).unwrap());
        let xy = q.parse_word("x y").unwrap();
        let yx = q.parse_word("y x").unwrap();
        assert_eq!(canonicalize(&q, &xy).unwrap(), canonicalize(&q, &yx).unwrap());
        let a = q.parse_word("x").unwrap();
        assert_eq!(q.display_word(&star_path(&a)), "x*");
        assert_eq!(canonicalize(&q, &star_path(&a)).unwrap(), a);
    }

    #[test]
    fn multidegree_counts() {
        let q = one_arrow();
        let w = q.parse_word("z1 z1*").unwrap();
        assert_eq!(q.display_mdeg(&mdeg(&q, &w)), "{z1:2}");
        let e = q.parse_word("1@u").unwrap();
        assert!(mdeg(&q, &e).is_zero());
    }

    #[test]
    fn glue_and_flip() {
        let q = Quiver::from_parts(&["u", "v"], &[("z", "u", "v")]).unwrap();
        let g = glue_vertices(&q, "u", "v").unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert!(g.arrow(ArrowId(0)).is_loop());
        assert_eq!(glue_vertices(&q, "u", "u"), Err(Error::SelfGlue("u".into())));
        assert!(matches!(glue_vertices(&q, "u", "w"), Err(Error::UnknownVertex(_))));
        let f = flip_arrows(&q, &["z"]).unwrap();
        assert_eq!(f.arrow(ArrowId(0)).head, VertexId(1));
        assert_eq!(flip_arrows(&f, &["z"]).unwrap(), q);
        assert!(matches!(flip_arrows(&q, &["w"]), Err(Error::UnknownArrow(_))));
    }

    #[test]
    fn blocks_of_simple_tree_path() {
        let q = Quiver::from_parts(
            &["u", "v"],
            &[("a", "u", "u"), ("b", "v", "v"), ("z1", "u", "v")],
        )
        .unwrap();
        let w = q.parse_word("a z1 b z1*").unwrap();
        let bd = blocks_and_tree(&q, &w).unwrap();
        assert_eq!(bd.double_arrows, vec![q.arrow_id("z1").unwrap()]);
        assert_eq!(bd.blocks.len(), 2);
        assert_eq!(bd.tree.len(), 1);
        assert!(bd.is_valid_tree());
        let single = q.parse_word("a").unwrap();
        let bd = blocks_and_tree(&q, &single).unwrap();
        assert_eq!(bd.blocks.len(), 1);
        assert!(bd.double_arrows.is_empty());
        let bad = q.parse_word("z1 z1*").unwrap();
        assert_eq!(blocks_and_tree(&q, &bad), Err(Error::NotTreePath));
    }
}
