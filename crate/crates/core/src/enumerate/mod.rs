//! Tree paths, the sets `S_II` and `S_I`, and minimal generating sets.
//!
//! Whether a multilinear closed path is a tree path depends only on its
//! letter set, and every connected balanced letter set is traversed by some
//! closed walk. The fast enumerator therefore works on multidegrees: it
//! decides each candidate multidegree combinatorially and only then builds
//! the least closed walk realizing it. [`enumerate_tree_paths_by_walks`]
//! is the direct walk search, kept as a reference for small quivers.

mod decomp;
mod gens;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

pub use decomp::{
    decomposition_admissible, diagram_admissible, enumerate_decompositions, path_admissible,
    type_diagram, Decomposition, Diagram,
};
pub use gens::{minimal_generating_set, minimal_generating_set_with, Branch, Generator, GeneratorSet};

pub(crate) use decomp::letters_admissible;

use crate::error::{Error, Result};
use crate::quiver::{
    canonical_letters, letters_mdeg, ArrowId, ArrowRef, Multidegree, PathWord, Quiver, UnionFind,
};

pub const DEFAULT_ARROW_CAP: usize = 14;

/// One representative closed path per multidegree.
pub type TracePaths = BTreeMap<Multidegree, PathWord>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub arrow_cap: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            arrow_cap: DEFAULT_ARROW_CAP,
        }
    }
}

fn require_closed(q: &Quiver, w: &PathWord) -> Result<()> {
    q.check_letters(w)?;
    if q.is_closed(w) {
        Ok(())
    } else {
        Err(Error::NotClosed)
    }
}

fn letters_multilinear(letters: &[ArrowRef]) -> bool {
    let set: BTreeSet<&ArrowRef> = letters.iter().collect();
    set.len() == letters.len()
}

/// Every letter of `Q*` occurs at most once.
pub fn is_multilinear(q: &Quiver, w: &PathWord) -> Result<bool> {
    require_closed(q, w)?;
    Ok(letters_multilinear(&w.letters))
}

pub fn is_tree_path(q: &Quiver, w: &PathWord) -> Result<bool> {
    require_closed(q, w)?;
    Ok(letters_form_tree_path(q, &w.letters))
}

/// Checks the tree condition on a closed word: for every double arrow `x`,
/// writing the word as `x c x* d`, both `c` and `d` are non-empty and share
/// no vertex.
pub(crate) fn letters_form_tree_path(q: &Quiver, letters: &[ArrowRef]) -> bool {
    if !letters_multilinear(letters) {
        return false;
    }
    for (i, r) in letters.iter().enumerate() {
        if r.starred || !letters.contains(&r.star()) {
            continue;
        }
        let rotated: Vec<ArrowRef> = letters[i..].iter().chain(&letters[..i]).copied().collect();
        let j = rotated.iter().position(|&s| s == r.star()).unwrap();
        let (c, d) = (&rotated[1..j], &rotated[j + 1..]);
        if c.is_empty() || d.is_empty() {
            return false;
        }
        if !q.word_vertices(c).is_disjoint(&q.word_vertices(d)) {
            return false;
        }
    }
    true
}

fn check_cap(q: &Quiver, opts: &EnumOptions) -> Result<()> {
    if q.num_arrows() > opts.arrow_cap {
        return Err(Error::CapExceeded {
            what: "arrow count",
            value: q.num_arrows(),
            cap: opts.arrow_cap,
        });
    }
    Ok(())
}

/// All multilinear closed walks of `Q*` up to `~`, in canonical form and
/// sorted. Walks are limited to `max_len` letters and, when given, to the
/// per-arrow degrees of `bound`.
pub fn multilinear_closed_paths(
    q: &Quiver,
    bound: Option<&Multidegree>,
    max_len: usize,
) -> Vec<PathWord> {
    let mut letters: Vec<ArrowRef> = Vec::new();
    for a in q.arrow_ids() {
        if bound.is_none_or(|b| b.get(a) > 0) {
            letters.push(ArrowRef::plain(a));
            letters.push(ArrowRef::plain(a).star());
        }
    }
    let mut found = BTreeSet::new();
    let mut used = vec![false; letters.len()];
    let mut degree = vec![0u32; q.num_arrows()];
    let mut walk = Vec::new();
    for first in 0..letters.len() {
        used[first] = true;
        degree[letters[first].arrow.0] += 1;
        walk.push(letters[first]);
        extend_walk(q, &letters, first, bound, max_len, &mut used, &mut degree, &mut walk, &mut found);
        walk.pop();
        degree[letters[first].arrow.0] -= 1;
        used[first] = false;
    }
    found.into_iter().map(PathWord::new).collect()
}

/// Depth-first extension of a walk whose least letter is `letters[first]`;
/// only larger letters are appended so each rotation class is met once per
/// orientation.
#[allow(clippy::too_many_arguments)]
fn extend_walk(
    q: &Quiver,
    letters: &[ArrowRef],
    first: usize,
    bound: Option<&Multidegree>,
    max_len: usize,
    used: &mut [bool],
    degree: &mut [u32],
    walk: &mut Vec<ArrowRef>,
    found: &mut BTreeSet<Vec<ArrowRef>>,
) {
    let start = q.head(walk[0]);
    let cur = q.tail(*walk.last().unwrap());
    if cur == start {
        found.insert(canonical_letters(walk));
    }
    if walk.len() >= max_len {
        return;
    }
    for k in first + 1..letters.len() {
        let r = letters[k];
        if used[k] || q.head(r) != cur {
            continue;
        }
        if let Some(b) = bound {
            if degree[r.arrow.0] + 1 > b.get(r.arrow) {
                continue;
            }
        }
        used[k] = true;
        degree[r.arrow.0] += 1;
        walk.push(r);
        extend_walk(q, letters, first, bound, max_len, used, degree, walk, found);
        walk.pop();
        degree[r.arrow.0] -= 1;
        used[k] = false;
    }
}

/// Reference enumeration of `S_II` by exhaustive walk search. Exponential;
/// meant for small quivers and cross-checks.
pub fn enumerate_tree_paths_by_walks(q: &Quiver) -> TracePaths {
    let mut out = TracePaths::new();
    for w in multilinear_closed_paths(q, None, 2 * q.num_arrows()) {
        if letters_form_tree_path(q, &w.letters) {
            let m = letters_mdeg(q.num_arrows(), &w.letters);
            out.entry(m).or_insert(w);
        }
    }
    out
}

/// Reference enumeration of `S_I` by exhaustive walk search.
pub fn enumerate_admissible_tree_paths_by_walks(q: &Quiver) -> TracePaths {
    let mut out = TracePaths::new();
    for w in multilinear_closed_paths(q, None, 2 * q.num_arrows()) {
        if letters_form_tree_path(q, &w.letters) && letters_admissible(q, &w.letters).is_some() {
            let m = letters_mdeg(q.num_arrows(), &w.letters);
            out.entry(m).or_insert(w);
        }
    }
    out
}

/// `S_II`: the least tree path of every multidegree realized by one.
pub fn enumerate_tree_paths(q: &Quiver) -> Result<TracePaths> {
    enumerate_tree_paths_with(q, &EnumOptions::default())
}

pub fn enumerate_tree_paths_with(q: &Quiver, opts: &EnumOptions) -> Result<TracePaths> {
    enumerate_by_multidegree(q, opts, false)
}

/// `S_I`: the least admissible tree path of every multidegree realized by
/// one.
pub fn enumerate_admissible_tree_paths(q: &Quiver) -> Result<TracePaths> {
    enumerate_admissible_tree_paths_with(q, &EnumOptions::default())
}

pub fn enumerate_admissible_tree_paths_with(q: &Quiver, opts: &EnumOptions) -> Result<TracePaths> {
    enumerate_by_multidegree(q, opts, true)
}

fn enumerate_by_multidegree(q: &Quiver, opts: &EnumOptions, admissible: bool) -> Result<TracePaths> {
    check_cap(q, opts)?;
    let n = q.num_arrows();
    // Loops may occur at most once: a loop together with its star never
    // passes the tree test.
    let radix: Vec<u64> = q
        .arrows()
        .iter()
        .map(|a| if a.is_loop() { 2 } else { 3 })
        .collect();
    let total: u64 = radix.iter().product();
    let found: Vec<(Multidegree, PathWord)> = (1..total)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut m = vec![0u8; n];
            for (slot, &r) in m.iter_mut().zip(&radix) {
                *slot = (idx % r) as u8;
                idx /= r;
            }
            if !multidegree_admits_tree_path(q, &m) {
                return None;
            }
            let word = least_tree_path(q, &m, admissible)?;
            Some((letters_mdeg(n, &word), PathWord::new(word)))
        })
        .collect();
    Ok(found.into_iter().collect())
}

/// Decides whether some tree path has multidegree `m` (entries at most 2).
pub(crate) fn multidegree_admits_tree_path(q: &Quiver, m: &[u8]) -> bool {
    let arrows = q.arrows();
    let support: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
    if support.is_empty() {
        return false;
    }
    let mut uf = UnionFind::new(q.num_vertices());
    let mut odd = vec![false; q.num_vertices()];
    let mut incident = vec![0usize; q.num_vertices()];
    for &i in &support {
        let a = &arrows[i];
        if a.is_loop() && m[i] > 1 {
            return false;
        }
        uf.union(a.head.0, a.tail.0);
        incident[a.head.0] += 1;
        if !a.is_loop() {
            incident[a.tail.0] += 1;
            if m[i] == 1 {
                odd[a.head.0] ^= true;
                odd[a.tail.0] ^= true;
            }
        }
    }
    if odd.iter().any(|&o| o) {
        return false;
    }
    let root = uf.find(arrows[support[0]].head.0);
    if support.iter().any(|&i| uf.find(arrows[i].head.0) != root) {
        return false;
    }
    for &x in support.iter().filter(|&&i| m[i] == 2) {
        let (h, t) = (arrows[x].head.0, arrows[x].tail.0);
        if incident[h] < 2 || incident[t] < 2 {
            return false;
        }
        let mut rest = UnionFind::new(q.num_vertices());
        for &i in support.iter().filter(|&&i| i != x) {
            rest.union(arrows[i].head.0, arrows[i].tail.0);
        }
        if rest.find(h) == rest.find(t) {
            return false;
        }
    }
    true
}

/// Letter sets with multidegree `m` whose walks are closed: loops unstarred,
/// double arrows as `x, x*`, single arrows oriented so that every vertex is
/// balanced. Each set is sorted.
fn balanced_letter_sets(q: &Quiver, m: &[u8]) -> Vec<Vec<ArrowRef>> {
    let mut fixed = Vec::new();
    let mut free = Vec::new();
    for (i, &c) in m.iter().enumerate() {
        let r = ArrowRef::plain(ArrowId(i));
        match c {
            0 => {}
            2 => {
                fixed.push(r);
                fixed.push(r.star());
            }
            _ if q.arrow(r.arrow).is_loop() => fixed.push(r),
            _ => free.push(r),
        }
    }
    let mut out = Vec::new();
    let mut balance = vec![0i32; q.num_vertices()];
    for mask in 0u64..(1u64 << free.len()) {
        balance.iter_mut().for_each(|b| *b = 0);
        for (k, &r) in free.iter().enumerate() {
            let r = if mask >> k & 1 == 1 { r.star() } else { r };
            balance[q.head(r).0] += 1;
            balance[q.tail(r).0] -= 1;
        }
        if balance.iter().all(|&b| b == 0) {
            let mut set = fixed.clone();
            set.extend(
                free.iter()
                    .enumerate()
                    .map(|(k, &r)| if mask >> k & 1 == 1 { r.star() } else { r }),
            );
            set.sort();
            out.push(set);
        }
    }
    out
}

/// Lexicographically least closed walk using each letter of a connected
/// balanced set exactly once. Starts at the least letter and always takes
/// the least letter after which the rest can still be completed.
pub(crate) fn least_circuit(q: &Quiver, letters: &[ArrowRef]) -> Option<Vec<ArrowRef>> {
    let mut remaining: Vec<ArrowRef> = letters.to_vec();
    remaining.sort();
    if remaining.is_empty() {
        return None;
    }
    let first = remaining.remove(0);
    let start = q.head(first);
    let mut cur = q.tail(first);
    let mut out = vec![first];
    while !remaining.is_empty() {
        let pick = (0..remaining.len())
            .find(|&i| q.head(remaining[i]) == cur && can_complete(q, &remaining, i, start))?;
        let r = remaining.remove(pick);
        cur = q.tail(r);
        out.push(r);
    }
    (cur == start).then_some(out)
}

fn can_complete(q: &Quiver, remaining: &[ArrowRef], skip: usize, start: crate::quiver::VertexId) -> bool {
    let next = q.tail(remaining[skip]);
    if remaining.len() == 1 {
        return next == start;
    }
    let mut uf = UnionFind::new(q.num_vertices());
    let mut touches_next = false;
    for (j, &s) in remaining.iter().enumerate() {
        if j != skip {
            uf.union(q.head(s).0, q.tail(s).0);
            touches_next |= q.head(s) == next;
        }
    }
    touches_next
        && remaining
            .iter()
            .enumerate()
            .all(|(j, &s)| j == skip || uf.find(q.head(s).0) == uf.find(next.0))
}

/// Least tree path (optionally admissible) of multidegree `m`, assuming
/// [`multidegree_admits_tree_path`] holds.
fn least_tree_path(q: &Quiver, m: &[u8], admissible: bool) -> Option<Vec<ArrowRef>> {
    let mut circuits: Vec<Vec<ArrowRef>> = balanced_letter_sets(q, m)
        .iter()
        .filter_map(|set| least_circuit(q, set))
        .collect();
    circuits.sort();
    if admissible {
        circuits
            .into_iter()
            .find(|c| letters_admissible(q, c).is_some())
    } else {
        circuits.into_iter().next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loops(names: &[&str]) -> Quiver {
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, "v", "v")).collect();
        Quiver::from_parts(&["v"], &arrows).unwrap()
    }

    #[test]
    fn multilinear_and_tree() {
        let q = Quiver::from_parts(
            &["u", "v"],
            &[("a", "u", "u"), ("b", "v", "v"), ("z1", "u", "v")],
        )
        .unwrap();
        let w = |t: &str| q.parse_word(t).unwrap();
        assert!(is_multilinear(&q, &w("z1 z1*")).unwrap());
        assert!(!is_tree_path(&q, &w("z1 z1*")).unwrap());
        assert!(is_tree_path(&q, &w("a")).unwrap());
        assert!(is_tree_path(&q, &w("a z1 b z1*")).unwrap());
        assert!(!is_multilinear(&q, &w("a a")).unwrap());
        assert!(!is_tree_path(&q, &w("a a")).unwrap());
        assert_eq!(is_tree_path(&q, &w("z1")), Err(Error::NotClosed));
        assert_eq!(is_multilinear(&q, &w("a z1")), Err(Error::NotClosed));
    }

    #[test]
    fn one_loop() {
        let q = loops(&["a"]);
        let s = enumerate_tree_paths(&q).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(q.display_word(s.values().next().unwrap()), "a");
        assert_eq!(enumerate_tree_paths_by_walks(&q), s);
    }

    #[test]
    fn least_circuit_is_least() {
        let q = loops(&["a", "b", "c"]);
        let letters: Vec<ArrowRef> = q.parse_word("c b* a").unwrap().letters;
        let c = least_circuit(&q, &letters).unwrap();
        assert_eq!(q.display_word(&PathWord::new(c)), "a b* c");
    }

    #[test]
    fn fast_matches_walks_on_small_quivers() {
        let quivers = [
            loops(&["a", "b", "c"]),
            Quiver::from_parts(
                &["u", "v"],
                &[("a", "u", "u"), ("b", "v", "v"), ("z1", "u", "v"), ("z2", "u", "v")],
            )
            .unwrap(),
            Quiver::from_parts(
                &["u", "v", "w"],
                &[("p", "u", "v"), ("q", "v", "w"), ("r", "w", "u"), ("s", "v", "v")],
            )
            .unwrap(),
        ];
        for q in &quivers {
            assert_eq!(enumerate_tree_paths(q).unwrap(), enumerate_tree_paths_by_walks(q));
            assert_eq!(
                enumerate_admissible_tree_paths(q).unwrap(),
                enumerate_admissible_tree_paths_by_walks(q)
            );
        }
    }

    #[test]
    fn arrow_cap() {
        let names: Vec<String> = (0..15).map(|i| format!("a{i:02}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let q = loops(&refs);
        assert!(matches!(enumerate_tree_paths(&q), Err(Error::CapExceeded { .. })));
    }
}
