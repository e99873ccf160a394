use std::path::PathBuf;

use quiver_si::enumerate::{
    decomposition_admissible, diagram_admissible, enumerate_admissible_tree_paths, enumerate_decompositions,
    enumerate_tree_paths, is_multilinear, is_tree_path, minimal_generating_set, path_admissible, type_diagram,
    Decomposition, Diagram,
};
use quiver_si::quiver::{blocks_and_tree, canonicalize, glue_vertices, mdeg};
use quiver_si::symalg::{det_of_arrow, sigma};
use quiver_si::treelike::{hat_graph, is_tree_like, tree_like_generating_set, tree_quiver_gens, two_vertex_generating_set};
use quiver_si::verify::{is_decomposable, Verdict};
use quiver_si::{FieldSpec, PathWord, Quiver};

fn fixture(name: &str) -> (Quiver, Option<String>) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.quiver"));
    let text = std::fs::read_to_string(path).unwrap();
    let word = text
        .lines()
        .find_map(|l| l.strip_prefix("# path: "))
        .map(str::to_string);
    (Quiver::parse(&text).unwrap(), word)
}

fn with_path(name: &str) -> (Quiver, PathWord) {
    let (q, w) = fixture(name);
    let w = q.parse_word(&w.unwrap()).unwrap();
    (q, w)
}

fn decomposition(q: &Quiver, parts: &[&str]) -> Decomposition {
    let mut parts: Vec<PathWord> = parts
        .iter()
        .map(|p| canonicalize(q, &q.parse_word(p).unwrap()).unwrap())
        .collect();
    parts.sort();
    Decomposition { parts }
}

fn diagram(nodes: usize, edges: &[(usize, usize, u32)]) -> Diagram {
    Diagram {
        nodes,
        edges: edges.iter().map(|&(i, j, m)| ((i, j), m)).collect(),
    }
}

#[test]
fn all_fixtures_parse() {
    for name in [
        "ex_decomp",
        "ex1",
        "ex1b",
        "ex_treelike",
        "one_loop",
        "one_arrow",
        "four_loops",
        "path3",
        "star_tree",
        "two_vertex_222",
        "r2",
    ] {
        let (q, w) = fixture(name);
        assert!(q.num_arrows() > 0, "{name}");
        if let Some(w) = w {
            let w = q.parse_word(&w).unwrap();
            assert!(q.is_closed(&w), "{name}");
            assert!(is_multilinear(&q, &w).unwrap(), "{name}");
        }
    }
}

#[test]
fn decomposition_example_lists_both_decompositions() {
    let (q, h) = with_path("ex_decomp");
    let all = enumerate_decompositions(&q, &h).unwrap();
    let a = decomposition(&q, &["a1 b1 c1 d1 d2 d3 c3 b3 a3 a4", "a2 b4", "b2 c4", "c2 d4"]);
    let b = decomposition(&q, &["a1 a2 a3 a4", "b1 b2 b3 b4", "c1 c2 c3 c4", "d1 d2 d3 d4"]);
    assert!(all.contains(&a));
    assert!(all.contains(&b));

    // A star with three arms marked 2, and a path of three edges marked 2.
    let star = diagram(4, &[(0, 1, 2), (0, 2, 2), (0, 3, 2)]);
    let path = diagram(4, &[(0, 1, 2), (1, 2, 2), (2, 3, 2)]);
    assert!(type_diagram(&q, &a).is_isomorphic(&star));
    assert!(type_diagram(&q, &b).is_isomorphic(&path));
    assert!(!type_diagram(&q, &b).is_isomorphic(&star));
    assert!(diagram_admissible(&path));
    assert!(decomposition_admissible(&q, &a));
    assert!(decomposition_admissible(&q, &b));
    assert!(path_admissible(&q, &h).unwrap().is_some());
}

#[test]
fn first_admissible_example() {
    let (q, h) = with_path("ex1");
    let d = decomposition(&q, &["x1 x2 x3 x4", "a1 a2 a3", "b1 b2", "c1 c2 c3", "y1 y2"]);
    assert!(enumerate_decompositions(&q, &h).unwrap().contains(&d));
    let name = |p: &PathWord| q.arrow_name(p.letters[0].arrow).chars().next().unwrap();
    let labels: Vec<char> = d.parts.iter().map(name).collect();
    let idx = |c: char| labels.iter().position(|&l| l == c).unwrap();
    let expected = {
        let mut edges = vec![
            (idx('x'), idx('a'), 2),
            (idx('a'), idx('b'), 1),
            (idx('a'), idx('c'), 1),
            (idx('b'), idx('c'), 1),
            (idx('c'), idx('y'), 1),
        ];
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        diagram(5, &edges)
    };
    assert_eq!(type_diagram(&q, &d), expected);
    assert!(decomposition_admissible(&q, &d));
    assert!(path_admissible(&q, &h).unwrap().is_some());
}

#[test]
fn second_admissible_example() {
    let (q, h) = with_path("ex1b");
    let witness = path_admissible(&q, &h).unwrap().expect("admissible");
    assert!(diagram_admissible(&type_diagram(&q, &witness)));
}

#[test]
fn four_loops_are_not_admissible() {
    let (q, w) = with_path("four_loops");
    assert!(is_tree_path(&q, &w).unwrap());
    assert!(path_admissible(&q, &w).unwrap().is_none());
    let s1 = enumerate_admissible_tree_paths(&q).unwrap();
    assert!(!s1.contains_key(&mdeg(&q, &w)));
    let s2 = enumerate_tree_paths(&q).unwrap();
    assert!(s2.contains_key(&mdeg(&q, &w)));
    let three = q.parse_word("a b c").unwrap();
    assert!(s1.contains_key(&mdeg(&q, &three)));
}

#[test]
fn four_loop_trace_depends_on_the_characteristic() {
    let (q, w) = with_path("four_loops");
    let f = sigma(&q, 1, &w).unwrap();
    let r0 = is_decomposable(&f, &q, FieldSpec::Rational).unwrap();
    assert_eq!(r0.verdict, Verdict::Decomposable);
    assert!(r0.round_trip);
    let r2 = is_decomposable(&f, &q, FieldSpec::Prime(2)).unwrap();
    assert_eq!(r2.verdict, Verdict::Indecomposable);
}

#[test]
fn second_relation_depends_on_the_characteristic() {
    let (q, w) = with_path("r2");
    let f = sigma(&q, 1, &w).unwrap();
    assert_eq!(is_decomposable(&f, &q, FieldSpec::Rational).unwrap().verdict, Verdict::Decomposable);
    assert_eq!(is_decomposable(&f, &q, FieldSpec::Prime(2)).unwrap().verdict, Verdict::Indecomposable);
}

#[test]
fn tree_like_example() {
    let (q, _) = fixture("ex_treelike");
    assert!(is_tree_like(&q));
    assert!(hat_graph(&q).is_tree());
    for fs in [FieldSpec::Prime(2), FieldSpec::Rational] {
        let by_colorings = tree_like_generating_set(&q, fs).unwrap();
        let general = minimal_generating_set(&q, fs).unwrap();
        assert_eq!(
            by_colorings.traces.keys().collect::<Vec<_>>(),
            general.traces.keys().collect::<Vec<_>>()
        );
    }
}

#[test]
fn tree_quivers() {
    for (name, arrows) in [("path3", 2), ("one_arrow", 1), ("star_tree", 4)] {
        let (q, _) = fixture(name);
        for fs in [FieldSpec::Prime(2), FieldSpec::Rational] {
            let set = tree_quiver_gens(&q, fs).unwrap();
            assert_eq!(set.len(), arrows);
            assert_eq!(set, minimal_generating_set(&q, fs).unwrap());
        }
    }
}

#[test]
fn two_vertex_fixture_has_46_generators() {
    let (q, _) = fixture("two_vertex_222");
    for fs in [FieldSpec::Prime(2), FieldSpec::Rational] {
        assert_eq!(minimal_generating_set(&q, fs).unwrap().len(), 46);
        assert_eq!(two_vertex_generating_set(2, 2, 2, fs).unwrap().count(), 46);
    }
}

#[test]
fn flagship_two_vertex_counts() {
    let tv = two_vertex_generating_set(4, 4, 4, FieldSpec::Prime(2)).unwrap();
    assert_eq!(tv.count(), 2734);
    assert_eq!(enumerate_tree_paths(&tv.quiver).unwrap().len(), 2722);
    assert_eq!(enumerate_admissible_tree_paths(&tv.quiver).unwrap().len(), 1155);
    assert_eq!(two_vertex_generating_set(4, 4, 4, FieldSpec::Rational).unwrap().count(), 1167);
}

#[test]
fn one_arrow_trace_of_a_double_pass() {
    let (q, _) = fixture("one_arrow");
    let w = q.parse_word("z1 z1*").unwrap();
    assert!(!is_tree_path(&q, &w).unwrap());
    assert_eq!(sigma(&q, 1, &w).unwrap(), det_of_arrow(q.arrow_id("z1").unwrap()).scale(2));
}

#[test]
fn simple_tree_path_blocks() {
    let q = Quiver::parse("vertex u\nvertex v\narrow a u u\narrow b v v\narrow z1 u v\n").unwrap();
    let w = q.parse_word("a z1 b z1*").unwrap();
    assert!(is_tree_path(&q, &w).unwrap());
    let bd = blocks_and_tree(&q, &w).unwrap();
    assert_eq!(bd.double_arrows, vec![q.arrow_id("z1").unwrap()]);
    assert_eq!(bd.blocks.len(), 2);
    assert_eq!(bd.tree.len(), 1);
    assert!(bd.is_valid_tree());
    // Gluing the two block vertices turns the double arrow into a loop.
    let glued = glue_vertices(&q, "u", "v").unwrap();
    assert_eq!(glued.num_vertices(), 1);
    let image = glued.parse_word("a z1 b z1*").unwrap();
    assert!(glued.is_closed(&image));
}

#[test]
fn second_admissible_example_diagram() {
    let (q, h) = with_path("ex1b");
    let d = decomposition(
        &q,
        &["a1 a2", "b1 b2", "c1 c2", "d1 d2", "x1 x2", "y1 y2 y3 y4", "z2 z1"],
    );
    assert!(enumerate_decompositions(&q, &h).unwrap().contains(&d));
    // Every small cycle meets the long one once; a-b and c-d close triangles.
    let (a, b, c, dd, x, y, z) = (0, 1, 2, 3, 4, 5, 6);
    let expected = diagram(
        7,
        &[(a, b, 1), (a, y, 1), (b, y, 1), (c, dd, 1), (c, y, 1), (dd, y, 1), (x, y, 1), (y, z, 1)],
    );
    assert_eq!(type_diagram(&q, &d), expected);
    assert!(decomposition_admissible(&q, &d));
}
