//! Verification: exact semi-invariance, relation identities, and the graded
//! oracle for minimality and spanning.

pub mod linalg;
mod oracle;
mod relations;
mod report;

use std::collections::BTreeMap;

pub use oracle::{
    component_basis, component_basis_with_cap, fedotov_generators, generator_set_candidates, is_decomposable,
    is_decomposable_with_cap, span_rank, spanning_generators, Candidate, Combination, DecomposabilityReport,
    GradedAlgebra, GradedComponent, Verdict, DEFAULT_DEGREE_CAP,
};
pub use relations::{congruence_suite, identity_suite, relation_suite};
pub use report::{Check, Report, Status};

use crate::enumerate::{letters_form_tree_path, minimal_generating_set, multilinear_closed_paths};
use crate::error::Result;
use crate::field::{FieldOps, FieldSpec, PrimeField, Rationals};
use crate::quiver::{letters_mdeg, Multidegree, PathWord, Quiver};
use crate::symalg::{elementary_action, letters_trace, param_var, Elementary, Poly, PARAM_BASE};

/// Exact invariance under both elementary subgroups at every vertex.
pub fn check_semi_invariance(f: &Poly, q: &Quiver) -> Result<bool> {
    let next = f
        .vars()
        .into_iter()
        .filter(|&v| v >= PARAM_BASE)
        .map(|v| v - PARAM_BASE + 1)
        .max()
        .unwrap_or(0);
    let t = param_var(next);
    for v in q.vertex_ids() {
        for kind in [Elementary::Upper, Elementary::Lower] {
            if elementary_action(f, q, v, kind, t)? != *f {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every generator of the minimal set within the degree cap is fixed by the
/// elementary subgroups at every vertex.
pub fn verify_invariance(q: &Quiver, fs: FieldSpec, max_deg: u32) -> Result<Report> {
    let set = minimal_generating_set(q, fs)?;
    let mut r = Report::new();
    for (m, g) in set.generators(q) {
        let label = g.display(q);
        if m.total() > max_deg {
            r.skip("invariance", format!("{label} exceeds degree cap {max_deg}"));
            continue;
        }
        let f = g.poly(q)?;
        r.record(check_semi_invariance(&f, q)?, "invariance", label);
    }
    Ok(r)
}

fn trace_of(w: &PathWord) -> Poly {
    letters_trace(&w.letters)
}

/// Every generator of the minimal set within the degree cap is
/// indecomposable among all semi-invariants and not a polynomial in the
/// other generators.
pub fn verify_minimality(q: &Quiver, fs: FieldSpec, max_deg: u32) -> Result<Report> {
    match fs {
        FieldSpec::Rational => minimality(Rationals, q, max_deg),
        FieldSpec::Prime(p) => minimality(PrimeField::new(p)?, q, max_deg),
    }
}

fn minimality<F: FieldOps>(field: F, q: &Quiver, max_deg: u32) -> Result<Report> {
    let fs = field.spec();
    let set = minimal_generating_set(q, fs)?;
    let mut all = GradedAlgebra::new(field.clone(), q.num_arrows(), fedotov_generators(q, max_deg));
    let mut minimal = GradedAlgebra::new(field, q.num_arrows(), generator_set_candidates(q, &set, max_deg)?);
    let mut r = Report::new();
    for (m, g) in set.generators(q) {
        let label = g.display(q);
        if m.total() > max_deg {
            r.skip("minimality", format!("{label} exceeds degree cap {max_deg}"));
            continue;
        }
        let f = g.poly(q)?;
        let dec = all.decompose(&f)?;
        r.record(dec.is_none(), "indecomposable", format!("{label} over {fs}"));
        let red = minimal.decompose(&f)?;
        r.record(red.is_none(), "non-redundant", format!("{label} over {fs}"));
    }
    Ok(r)
}

/// Every multilinear trace within the cap lies in the subalgebra generated
/// by the minimal set; traces of equal multidegree agree up to sign modulo
/// decomposables; traces of non-tree paths other than `x x*` are
/// decomposable.
pub fn verify_spanning(q: &Quiver, fs: FieldSpec, max_deg: u32) -> Result<Report> {
    match fs {
        FieldSpec::Rational => spanning(Rationals, q, max_deg),
        FieldSpec::Prime(p) => spanning(PrimeField::new(p)?, q, max_deg),
    }
}

fn spanning<F: FieldOps>(field: F, q: &Quiver, max_deg: u32) -> Result<Report> {
    let fs = field.spec();
    let set = minimal_generating_set(q, fs)?;
    let mut all = GradedAlgebra::new(field.clone(), q.num_arrows(), fedotov_generators(q, max_deg));
    let mut minimal = GradedAlgebra::new(field, q.num_arrows(), generator_set_candidates(q, &set, max_deg)?);
    let mut r = Report::new();
    let paths = multilinear_closed_paths(q, None, max_deg as usize);
    let mut by_mdeg: BTreeMap<Multidegree, Vec<&PathWord>> = BTreeMap::new();
    for w in &paths {
        let shown = q.display_word(w);
        let f = trace_of(w);
        match minimal.express(&f)? {
            Some(c) => {
                let ok = minimal.reproduces(&c, &f.reduced(fs));
                r.record(
                    ok,
                    "span",
                    format!("tr({shown}) = {} over {fs}", minimal.render(&c)),
                );
            }
            None => r.record(false, "span", format!("tr({shown}) not generated over {fs}")),
        }
        by_mdeg.entry(letters_mdeg(q.num_arrows(), &w.letters)).or_default().push(w);

        let is_xx = w.len() == 2 && w.letters[0].arrow == w.letters[1].arrow;
        if !letters_form_tree_path(q, &w.letters) && !is_xx {
            let dec = all.decompose(&f)?;
            let ok = dec.as_ref().is_some_and(|c| all.reproduces(c, &f.reduced(fs)));
            r.record(ok, "not-tree-path", format!("tr({shown}) decomposable over {fs}"));
        }
    }
    for (m, group) in &by_mdeg {
        let first = group[0];
        let fa = trace_of(first);
        for other in &group[1..] {
            let fb = trace_of(other);
            let minus = all.decompose(&fa.sub(&fb))?.is_some();
            let plus = all.decompose(&fa.add(&fb))?.is_some();
            let sign = match (minus, plus) {
                (true, true) => "+/-",
                (true, false) => "+",
                (false, true) => "-",
                (false, false) => "none",
            };
            r.record(
                minus || plus,
                "mdeg-trace",
                format!(
                    "tr({}) = {sign} tr({}) mod decomposables, mdeg {} over {fs}",
                    q.display_word(first),
                    q.display_word(other),
                    q.display_mdeg(m)
                ),
            );
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::entry_var;

    fn loops(names: &[&str]) -> Quiver {
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, "v", "v")).collect();
        Quiver::from_parts(&["v"], &arrows).unwrap()
    }

    #[test]
    fn coordinates_are_not_invariant() {
        let q = loops(&["a"]);
        assert!(!check_semi_invariance(&Poly::var(entry_var(0, 1, 1)), &q).unwrap());
        let tr = trace_of(&q.parse_word("a").unwrap());
        assert!(check_semi_invariance(&tr, &q).unwrap());
        assert!(check_semi_invariance(&tr.mul(&tr).add(&tr), &q).unwrap());
    }

    #[test]
    fn generators_are_invariant() {
        let q = Quiver::from_parts(&["u", "v"], &[("a", "u", "u"), ("z1", "u", "v"), ("z2", "u", "v")]).unwrap();
        for fs in [FieldSpec::Rational, FieldSpec::Prime(2)] {
            let r = verify_invariance(&q, fs, 8).unwrap();
            assert!(r.passed(), "{}", r.render());
            assert_eq!(r.count(Status::Pass), minimal_generating_set(&q, fs).unwrap().len());
        }
    }

    #[test]
    fn identities_hold_in_both_characteristics() {
        for fs in [FieldSpec::Rational, FieldSpec::Prime(2)] {
            let r = identity_suite(fs);
            assert!(r.passed(), "{}", r.render());
        }
    }

    #[test]
    fn one_loop_minimal_and_spanning() {
        let q = loops(&["a"]);
        for fs in [FieldSpec::Rational, FieldSpec::Prime(2)] {
            let r = verify_minimality(&q, fs, 8).unwrap();
            assert!(r.passed(), "{}", r.render());
            assert_eq!(r.count(Status::Pass), 4);
            let s = verify_spanning(&q, fs, 8).unwrap();
            assert!(s.passed(), "{}", s.render());
        }
    }
}
