//! Exact trace identities for 2×2 matrices, their multilinearizations, and
//! the congruences modulo decomposables that follow from them.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::field::FieldSpec;
use crate::quiver::Quiver;
use crate::symalg::{det_of_arrow, entry_var, sigma, Poly, Var};

use super::oracle::{is_decomposable, Verdict};
use super::report::Report;

/// A small quiver together with shorthand for traces and determinants.
struct Shape {
    q: Quiver,
}

impl Shape {
    fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Self {
        Shape {
            q: Quiver::from_parts(vertices, arrows).expect("synthetic quiver is valid"),
        }
    }

    fn tr(&self, word: &str) -> Poly {
        let w = self.q.parse_word(word).expect("synthetic word parses");
        sigma(&self.q, 1, &w).expect("synthetic word is closed")
    }

    fn det_path(&self, word: &str) -> Poly {
        let w = self.q.parse_word(word).expect("synthetic word parses");
        sigma(&self.q, 2, &w).expect("synthetic word is closed")
    }

    fn det(&self, arrow: &str) -> Poly {
        det_of_arrow(self.q.arrow_id(arrow).expect("synthetic arrow exists"))
    }

    fn vars(&self, arrow: &str) -> BTreeSet<Var> {
        let a = self.q.arrow_id(arrow).unwrap().0;
        (1..=2).flat_map(|i| (1..=2).map(move |j| entry_var(a, i, j))).collect()
    }

    /// Substitutes `X_x -> X_{x1} + X_{x2}` and keeps the part of degree
    /// one in each of `x1` and `x2`.
    fn linearize(&self, f: &Poly, x: &str, x1: &str, x2: &str) -> Poly {
        let (a, a1, a2) = (
            self.q.arrow_id(x).unwrap().0,
            self.q.arrow_id(x1).unwrap().0,
            self.q.arrow_id(x2).unwrap().0,
        );
        let sub = f.substitute(|v| {
            if v / 4 == a as Var {
                let slot = v % 4;
                Some(Poly::var(4 * a1 as Var + slot).add(&Poly::var(4 * a2 as Var + slot)))
            } else {
                None
            }
        });
        sub.part_of_degree_in(&self.vars(x1), 1)
            .part_of_degree_in(&self.vars(x2), 1)
    }
}

fn loops(names: &[&str]) -> Shape {
    let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, "v", "v")).collect();
    Shape::new(&["v"], &arrows)
}

/// `a`, `b`, `c` loops at `v`; `a1`, `a2` further loops.
fn loop_shape() -> Shape {
    loops(&["a", "a1", "a2", "b", "c"])
}

/// `x, x1, x2: u <- v` with a loop `a` at `u`.
fn c_shape() -> Shape {
    Shape::new(
        &["u", "v"],
        &[("a", "u", "u"), ("x", "u", "v"), ("x1", "u", "v"), ("x2", "u", "v")],
    )
}

/// `x, x1, x2, y1, y2: u <- v`.
fn d_shape() -> Shape {
    Shape::new(
        &["u", "v"],
        &[
            ("x", "u", "v"),
            ("x1", "u", "v"),
            ("x2", "u", "v"),
            ("y1", "u", "v"),
            ("y2", "u", "v"),
        ],
    )
}

fn identity(report: &mut Report, fs: FieldSpec, id: &str, lhs: &Poly, rhs: &Poly, detail: &str) {
    let ok = lhs.equals_in(rhs, fs);
    report.record(ok, format!("identity-{id}"), format!("{detail} over {fs}"));
}

/// Coefficient-exact checks of the trace identities and their
/// multilinearizations.
pub fn identity_suite(fs: FieldSpec) -> Report {
    let mut r = Report::new();
    let l = loop_shape();

    identity(&mut r, fs, "0-star-tr", &l.tr("a b"), &l.tr("b* a*"), "tr(ab) = tr((ab)*)");
    identity(&mut r, fs, "0-star-det", &l.det_path("a b"), &l.det_path("b* a*"), "det(ab) = det((ab)*)");
    let rot = Shape::new(&["u", "v"], &[("y1", "u", "v"), ("y2", "v", "u")]);
    identity(&mut r, fs, "0-rotate-tr", &rot.tr("y1 y2"), &rot.tr("y2 y1"), "tr(y1 y2) = tr(y2 y1)");
    identity(&mut r, fs, "0-rotate-det", &rot.det_path("y1 y2"), &rot.det_path("y2 y1"), "det(y1 y2) = det(y2 y1)");
    identity(
        &mut r,
        fs,
        "0-det-product",
        &l.det_path("a b"),
        &l.det("a").mul(&l.det("b")),
        "det(ab) = det(a) det(b)",
    );

    let a_rhs = l.tr("a").mul(&l.tr("a b")).sub(&l.det("a").mul(&l.tr("b")));
    identity(&mut r, fs, "A", &l.tr("a a b"), &a_rhs, "tr(a^2 b) = tr(a) tr(ab) - det(a) tr(b)");
    let ap_lhs = l.tr("a1 a2 b").add(&l.tr("a2 a1 b"));
    let ap_rhs = l
        .tr("a1")
        .mul(&l.tr("a2 b"))
        .add(&l.tr("a2").mul(&l.tr("a1 b")))
        .sub(&l.tr("a1 a2*").mul(&l.tr("b")));
    identity(
        &mut r,
        fs,
        "A'",
        &ap_lhs,
        &ap_rhs,
        "tr(a1 a2 b) + tr(a2 a1 b) = tr(a1) tr(a2 b) + tr(a2) tr(a1 b) - tr(a1 a2*) tr(b)",
    );
    identity(
        &mut r,
        fs,
        "A'-linearized-lhs",
        &l.linearize(&l.tr("a a b"), "a", "a1", "a2"),
        &ap_lhs,
        "bidegree (1,1) part of tr(a^2 b) under a -> a1 + a2",
    );
    identity(
        &mut r,
        fs,
        "A'-linearized-rhs",
        &l.linearize(&a_rhs, "a", "a1", "a2"),
        &ap_rhs,
        "bidegree (1,1) part of tr(a) tr(ab) - det(a) tr(b) under a -> a1 + a2",
    );

    let b_rhs = l.tr("a b").neg().add(&l.tr("a").mul(&l.tr("b")));
    identity(&mut r, fs, "B", &l.tr("a* b"), &b_rhs, "tr(a* b) = -tr(ab) + tr(a) tr(b)");

    let c = c_shape();
    let c_rhs = c.det("x").mul(&c.tr("a"));
    identity(&mut r, fs, "C", &c.tr("x x* a"), &c_rhs, "tr(x x* a) = det(x) tr(a)");
    let cp_lhs = c.tr("x1 x2* a").add(&c.tr("x2 x1* a"));
    let cp_rhs = c.tr("x1 x2*").mul(&c.tr("a"));
    identity(&mut r, fs, "C'", &cp_lhs, &cp_rhs, "tr(x1 x2* a) + tr(x2 x1* a) = tr(x1 x2*) tr(a)");
    identity(
        &mut r,
        fs,
        "C'-linearized-lhs",
        &c.linearize(&c.tr("x x* a"), "x", "x1", "x2"),
        &cp_lhs,
        "bidegree (1,1) part of tr(x x* a) under x -> x1 + x2",
    );
    identity(
        &mut r,
        fs,
        "C'-linearized-rhs",
        &c.linearize(&c_rhs, "x", "x1", "x2"),
        &cp_rhs,
        "bidegree (1,1) part of det(x) tr(a) under x -> x1 + x2",
    );

    let d = d_shape();
    let d_rhs = d
        .det("x")
        .mul(&d.tr("y1* y2"))
        .neg()
        .add(&d.tr("x* y1").mul(&d.tr("x* y2")));
    identity(
        &mut r,
        fs,
        "D",
        &d.tr("x* y1 x* y2"),
        &d_rhs,
        "tr(x* y1 x* y2) = -det(x) tr(y1* y2) + tr(x* y1) tr(x* y2)",
    );
    let dp_lhs = d.tr("x1* y1 x2* y2").add(&d.tr("x2* y1 x1* y2"));
    let dp_rhs = d
        .tr("x1 x2*")
        .mul(&d.tr("y1* y2"))
        .neg()
        .add(&d.tr("x1* y1").mul(&d.tr("x2* y2")))
        .add(&d.tr("x2* y1").mul(&d.tr("x1* y2")));
    identity(
        &mut r,
        fs,
        "D'",
        &dp_lhs,
        &dp_rhs,
        "tr(x1* y1 x2* y2) + tr(x2* y1 x1* y2) = -tr(x1 x2*) tr(y1* y2) + tr(x1* y1) tr(x2* y2) + tr(x2* y1) tr(x1* y2)",
    );
    identity(
        &mut r,
        fs,
        "D'-linearized-lhs",
        &d.linearize(&d.tr("x* y1 x* y2"), "x", "x1", "x2"),
        &dp_lhs,
        "bidegree (1,1) part of tr(x* y1 x* y2) under x -> x1 + x2",
    );
    identity(
        &mut r,
        fs,
        "D'-linearized-rhs",
        &d.linearize(&d_rhs, "x", "x1", "x2"),
        &dp_rhs,
        "bidegree (1,1) part of the right side of D under x -> x1 + x2",
    );

    let e = Shape::new(&["u", "v"], &[("x", "u", "v")]);
    identity(&mut r, fs, "E", &e.tr("x x*"), &e.det("x").scale(2), "tr(x x*) = 2 det(x)");
    r
}

fn congruence(r: &mut Report, fs: FieldSpec, id: &str, shape: &Shape, f: &Poly, expect: Verdict, detail: &str) -> Result<()> {
    let rep = is_decomposable(f, &shape.q, fs)?;
    let ok = rep.verdict == expect && rep.round_trip;
    let verdict = match rep.verdict {
        Verdict::Decomposable => "decomposable",
        Verdict::Indecomposable => "indecomposable",
    };
    r.record(ok, format!("congruence-{id}"), format!("{detail} is {verdict} over {fs}"));
    Ok(())
}

/// Decomposability of the relation shapes, decided by the oracle. The
/// four-loop and two-intersection shapes separate characteristic 2 from the
/// rest.
pub fn congruence_suite(fs: FieldSpec) -> Result<Report> {
    use Verdict::*;
    let mut r = Report::new();
    let two = loops(&["a", "b"]);
    congruence(&mut r, fs, "0-det", &two, &two.det_path("a b"), Decomposable, "det(ab)")?;
    congruence(&mut r, fs, "A", &two, &two.tr("a a b"), Decomposable, "tr(a^2 b)")?;
    congruence(
        &mut r,
        fs,
        "B",
        &two,
        &two.tr("a* b").add(&two.tr("a b")),
        Decomposable,
        "tr(a* b) + tr(ab)",
    )?;
    let three = loops(&["a", "b", "c"]);
    congruence(
        &mut r,
        fs,
        "A'",
        &three,
        &three.tr("a b c").add(&three.tr("a c b")),
        Decomposable,
        "tr(abc) + tr(acb)",
    )?;
    let c = Shape::new(&["u", "v"], &[("a", "u", "u"), ("x", "u", "v")]);
    congruence(&mut r, fs, "C", &c, &c.tr("x x* a"), Decomposable, "tr(x x* a)")?;
    let cp = Shape::new(&["u", "v"], &[("a", "u", "u"), ("x1", "u", "v"), ("x2", "u", "v")]);
    congruence(
        &mut r,
        fs,
        "C'",
        &cp,
        &cp.tr("x1 x2* a").add(&cp.tr("x2 x1* a")),
        Decomposable,
        "tr(x1 x2* a) + tr(x2 x1* a)",
    )?;
    let d = Shape::new(&["u", "v"], &[("x", "u", "v"), ("y1", "u", "v"), ("y2", "u", "v")]);
    congruence(&mut r, fs, "D", &d, &d.tr("x* y1 x* y2"), Decomposable, "tr(x* y1 x* y2)")?;
    let dp = Shape::new(
        &["u", "v"],
        &[("x1", "u", "v"), ("x2", "u", "v"), ("y1", "u", "v"), ("y2", "u", "v")],
    );
    congruence(
        &mut r,
        fs,
        "D'",
        &dp,
        &dp.tr("x1* y1 x2* y2").add(&dp.tr("x2* y1 x1* y2")),
        Decomposable,
        "tr(x1* y1 x2* y2) + tr(x2* y1 x1* y2)",
    )?;
    let char2 = fs.is_char2();
    let expect = if char2 { Indecomposable } else { Decomposable };
    let four = loops(&["a", "b", "c", "d"]);
    congruence(&mut r, fs, "R1", &four, &four.tr("a b c d"), expect, "tr(abcd) on four loops")?;
    // a = x1 y1 and b = x2 y2 meet at w, away from the base vertex v of c.
    let r2 = Shape::new(
        &["v", "w"],
        &[
            ("c", "v", "v"),
            ("x1", "v", "w"),
            ("x2", "v", "w"),
            ("y1", "w", "v"),
            ("y2", "w", "v"),
        ],
    );
    congruence(&mut r, fs, "R2", &r2, &r2.tr("x1 y1 x2 y2 c"), expect, "tr(abc) with a = x1 y1, b = x2 y2")?;
    Ok(r)
}

/// Identities followed by congruences.
pub fn relation_suite(fs: FieldSpec) -> Result<Report> {
    let mut r = identity_suite(fs);
    r.extend(congruence_suite(fs)?);
    Ok(r)
}
