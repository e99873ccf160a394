//! Brute-force graded linear algebra over the semi-invariants.
//!
//! A [`GradedAlgebra`] is spanned by products of candidate generators. For a
//! multidegree `d` it keeps the span of products with at least two factors,
//! i.e. the degree-`d` part of `(A+)^2`, and the whole component `A_d`.
//! Candidates that lie in `(A+)^2` of their own multidegree are dropped as
//! factors of higher products; this does not change the algebra.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::enumerate::{multilinear_closed_paths, GeneratorSet};
use crate::error::{Error, Result};
use crate::field::{FieldOps, FieldSpec, PrimeField, Rationals};
use crate::quiver::{letters_mdeg, Multidegree, Quiver};
use crate::symalg::{det_of_arrow, entry_var, letters_trace, Monomial, Poly};

use super::linalg::{Columns, Echelon, SparseVec};

pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// A polynomial offered as a generator, with a printable label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub label: String,
    pub mdeg: Multidegree,
    pub poly: Poly,
}

fn sort_candidates(cands: &mut [Candidate]) {
    cands.sort_by(|a, b| {
        (a.mdeg.total(), std::cmp::Reverse(&a.mdeg.counts), &a.label)
            .cmp(&(b.mdeg.total(), std::cmp::Reverse(&b.mdeg.counts), &b.label))
    });
}

/// Determinants of arrows and traces of multilinear closed paths whose
/// total degree is at most `cap`.
pub fn fedotov_generators(q: &Quiver, cap: u32) -> Vec<Candidate> {
    let n = q.num_arrows();
    let mut out = Vec::new();
    if cap >= 2 {
        for a in q.arrow_ids() {
            out.push(Candidate {
                label: format!("det({})", q.arrow_name(a)),
                mdeg: Multidegree::unit(n, a, 2),
                poly: det_of_arrow(a),
            });
        }
    }
    for w in multilinear_closed_paths(q, None, cap as usize) {
        out.push(Candidate {
            label: format!("tr({})", q.display_word(&w)),
            mdeg: letters_mdeg(n, &w.letters),
            poly: letters_trace(&w.letters),
        });
    }
    sort_candidates(&mut out);
    out
}

/// The generators of a generating set whose total degree is at most `cap`.
pub fn generator_set_candidates(q: &Quiver, set: &GeneratorSet, cap: u32) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for (m, g) in set.generators(q) {
        if m.total() <= cap {
            let label = match &g {
                crate::enumerate::Generator::Det(a) => format!("det({})", q.arrow_name(*a)),
                crate::enumerate::Generator::Trace(w) => format!("tr({})", q.display_word(w)),
            };
            out.push(Candidate {
                label,
                mdeg: m,
                poly: g.poly(q)?,
            });
        }
    }
    sort_candidates(&mut out);
    Ok(out)
}

#[derive(Clone, Debug)]
struct Component<F: FieldOps> {
    cols: Columns,
    /// Products with at least two factors.
    dec: Echelon<F>,
    /// `dec` plus the candidates of exactly this multidegree.
    full: Echelon<F>,
    /// Factor lists (candidate indices) of the vectors fed to the echelons.
    inputs: Vec<Vec<usize>>,
    /// Products forming a basis of the component.
    basis: Vec<(Vec<usize>, Poly)>,
    /// Candidates of this multidegree independent modulo `dec`.
    new_gens: Vec<usize>,
}

/// A linear combination of products of candidates.
#[derive(Clone, Debug, PartialEq)]
pub struct Combination<E> {
    pub terms: Vec<(E, Vec<usize>)>,
}

pub struct GradedAlgebra<F: FieldOps> {
    field: F,
    num_arrows: usize,
    candidates: Vec<Candidate>,
    components: HashMap<Multidegree, Component<F>>,
}

impl<F: FieldOps> GradedAlgebra<F> {
    pub fn new(field: F, num_arrows: usize, candidates: Vec<Candidate>) -> Self {
        GradedAlgebra {
            field,
            num_arrows,
            candidates,
            components: HashMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn label(&self, factors: &[usize]) -> String {
        factors
            .iter()
            .map(|&i| self.candidates[i].label.as_str())
            .collect::<Vec<_>>()
            .join(" * ")
    }

    fn ensure(&mut self, d: &Multidegree) {
        if self.components.contains_key(d) {
            return;
        }
        let below: Vec<Multidegree> = self
            .candidates
            .iter()
            .filter(|c| c.mdeg.le(d) && c.mdeg != *d)
            .map(|c| c.mdeg.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for e in &below {
            self.ensure(e);
            self.ensure(&d.checked_sub(e).unwrap());
        }
        let comp = self.build(d);
        self.components.insert(d.clone(), comp);
    }

    fn build(&self, d: &Multidegree) -> Component<F> {
        let mut comp = Component {
            cols: Columns::new(),
            dec: Echelon::new(self.field.clone()),
            full: Echelon::new(self.field.clone()),
            inputs: Vec::new(),
            basis: Vec::new(),
            new_gens: Vec::new(),
        };
        if d.is_zero() {
            comp.basis.push((Vec::new(), Poly::constant(1)));
            return comp;
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for (gi, g) in self.candidates.iter().enumerate() {
            if !g.mdeg.le(d) || g.mdeg == *d || !self.components[&g.mdeg].new_gens.contains(&gi) {
                continue;
            }
            let rest = d.checked_sub(&g.mdeg).unwrap();
            for (factors, h) in &self.components[&rest].basis {
                let mut all = factors.clone();
                all.push(gi);
                all.sort();
                if !seen.insert(all.clone()) {
                    continue;
                }
                let p = g.poly.mul(h);
                let v = comp.cols.vector(&self.field, &p);
                let id = comp.inputs.len();
                comp.inputs.push(all.clone());
                if comp.dec.insert(&v, id) {
                    comp.basis.push((all, p));
                }
            }
        }
        comp.full = comp.dec.clone();
        for (gi, g) in self.candidates.iter().enumerate() {
            if g.mdeg != *d {
                continue;
            }
            let v = comp.cols.vector(&self.field, &g.poly);
            let id = comp.inputs.len();
            comp.inputs.push(vec![gi]);
            if comp.full.insert(&v, id) {
                comp.new_gens.push(gi);
                comp.basis.push((vec![gi], g.poly.clone()));
            }
        }
        comp
    }

    /// Dimension of the component spanned by products of multidegree `d`.
    pub fn dimension(&mut self, d: &Multidegree) -> usize {
        self.ensure(d);
        self.components[d].full.rank()
    }

    /// Candidates that are not in `(A+)^2` of their multidegree.
    pub fn indecomposable_candidates(&mut self, d: &Multidegree) -> Vec<usize> {
        self.ensure(d);
        self.components[d].new_gens.clone()
    }

    fn target_degree(&self, f: &Poly) -> Result<Multidegree> {
        let counts = f
            .homogeneous_arrow_degrees(self.num_arrows)
            .ok_or(Error::NotHomogeneous)?;
        Ok(Multidegree { counts })
    }

    fn solve_in(&mut self, f: &Poly, decomposables_only: bool) -> Result<Option<Combination<F::Elem>>> {
        if f.is_zero_in(self.field.spec()) {
            return Ok(Some(Combination { terms: Vec::new() }));
        }
        let d = self.target_degree(&f.reduced(self.field.spec()))?;
        self.ensure(&d);
        let comp = self.components.get_mut(&d).unwrap();
        let v = comp.cols.vector(&self.field, f);
        let ech = if decomposables_only { &comp.dec } else { &comp.full };
        Ok(ech.solve(&v).map(|combo| Combination {
            terms: combo
                .into_iter()
                .map(|(id, c)| (c, comp.inputs[id].clone()))
                .collect(),
        }))
    }

    /// A combination of products with at least two factors equal to `f`,
    /// if `f` lies in `(A+)^2`.
    pub fn decompose(&mut self, f: &Poly) -> Result<Option<Combination<F::Elem>>> {
        self.solve_in(f, true)
    }

    /// A combination of products equal to `f`, if `f` lies in the algebra.
    pub fn express(&mut self, f: &Poly) -> Result<Option<Combination<F::Elem>>> {
        self.solve_in(f, false)
    }

    /// Expands a combination and compares it with `f` in the field.
    pub fn reproduces(&self, combo: &Combination<F::Elem>, f: &Poly) -> bool {
        let field = &self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        let mut add = |m: &Monomial, c: F::Elem| {
            let slot = acc.entry(m.clone()).or_insert_with(|| field.zero());
            *slot = field.add(slot, &c);
        };
        for (c, factors) in &combo.terms {
            let p = factors
                .iter()
                .fold(Poly::constant(1), |acc, &i| acc.mul(&self.candidates[i].poly));
            for (m, k) in p.terms() {
                add(m, field.mul(c, &field.from_i64(k)));
            }
        }
        for (m, k) in f.terms() {
            add(m, field.neg(&field.from_i64(k)));
        }
        acc.values().all(|c| field.is_zero(c))
    }

    pub fn render(&self, combo: &Combination<F::Elem>) -> String {
        if combo.terms.is_empty() {
            return "0".to_string();
        }
        combo
            .terms
            .iter()
            .map(|(c, factors)| format!("({c}) * {}", self.label(factors)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Decomposable,
    Indecomposable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposabilityReport {
    pub target: Poly,
    pub mdeg: Multidegree,
    pub verdict: Verdict,
    /// Rendered witness combination, present for decomposable targets.
    pub witness: Option<String>,
    /// Whether the witness expands back to the target.
    pub round_trip: bool,
}

fn check_degree_cap(total: u32, cap: u32) -> Result<()> {
    if total > cap {
        return Err(Error::CapExceeded {
            what: "total degree",
            value: total as usize,
            cap: cap as usize,
        });
    }
    Ok(())
}

pub fn is_decomposable(f: &Poly, q: &Quiver, fs: FieldSpec) -> Result<DecomposabilityReport> {
    is_decomposable_with_cap(f, q, fs, DEFAULT_DEGREE_CAP)
}

pub fn is_decomposable_with_cap(f: &Poly, q: &Quiver, fs: FieldSpec, cap: u32) -> Result<DecomposabilityReport> {
    match fs {
        FieldSpec::Rational => decomposability(Rationals, f, q, cap),
        FieldSpec::Prime(p) => decomposability(PrimeField::new(p)?, f, q, cap),
    }
}

fn decomposability<F: FieldOps>(field: F, f: &Poly, q: &Quiver, cap: u32) -> Result<DecomposabilityReport> {
    let fs = field.spec();
    let reduced = f.reduced(fs);
    let mdeg = if reduced.is_zero() {
        Multidegree::zero(q.num_arrows())
    } else {
        Multidegree {
            counts: reduced
                .homogeneous_arrow_degrees(q.num_arrows())
                .ok_or(Error::NotHomogeneous)?,
        }
    };
    check_degree_cap(mdeg.total(), cap)?;
    let mut alg = GradedAlgebra::new(field, q.num_arrows(), fedotov_generators(q, mdeg.total()));
    let found = alg.decompose(&reduced)?;
    Ok(match found {
        Some(combo) => DecomposabilityReport {
            target: f.clone(),
            mdeg,
            verdict: Verdict::Decomposable,
            round_trip: alg.reproduces(&combo, &reduced),
            witness: Some(alg.render(&combo)),
        },
        None => DecomposabilityReport {
            target: f.clone(),
            mdeg,
            verdict: Verdict::Indecomposable,
            witness: None,
            round_trip: true,
        },
    })
}

/// A homogeneous component of the polynomial ring: every monomial of the
/// given multidegree, in monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub mdeg: Multidegree,
    pub basis: Vec<Monomial>,
    pub field: FieldSpec,
}

pub fn component_basis(q: &Quiver, d: &Multidegree, fs: FieldSpec) -> Result<GradedComponent> {
    component_basis_with_cap(q, d, fs, DEFAULT_DEGREE_CAP)
}

pub fn component_basis_with_cap(q: &Quiver, d: &Multidegree, fs: FieldSpec, cap: u32) -> Result<GradedComponent> {
    check_degree_cap(d.total(), cap)?;
    let mut partial: Vec<Vec<(u32, u16)>> = vec![Vec::new()];
    for a in q.arrow_ids() {
        let vars: Vec<u32> = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| entry_var(a.0, i, j)))
            .collect();
        let mut next = Vec::new();
        for base in &partial {
            for choice in multisets(&vars, d.get(a)) {
                let mut m = base.clone();
                m.extend(choice);
                next.push(m);
            }
        }
        partial = next;
    }
    let mut basis: Vec<Monomial> = partial.into_iter().map(Monomial::from_exponents).collect();
    basis.sort();
    Ok(GradedComponent {
        mdeg: d.clone(),
        basis,
        field: fs,
    })
}

/// Exponent vectors of the multisets of size `k` drawn from `vars`.
fn multisets(vars: &[u32], k: u32) -> Vec<Vec<(u32, u16)>> {
    if vars.is_empty() {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for e in 0..=k {
        for mut rest in multisets(&vars[1..], k - e) {
            if e > 0 {
                rest.insert(0, (vars[0], e as u16));
            }
            out.push(rest);
        }
    }
    out
}

/// Every product of determinants and multilinear traces with multidegree
/// `d`, reduced in the field.
pub fn spanning_generators(q: &Quiver, d: &Multidegree, fs: FieldSpec) -> Result<Vec<Poly>> {
    check_degree_cap(d.total(), DEFAULT_DEGREE_CAP)?;
    if let FieldSpec::Prime(p) = fs {
        PrimeField::new(p)?;
    }
    let cands: Vec<Candidate> = fedotov_generators(q, d.total())
        .into_iter()
        .filter(|c| c.mdeg.le(d))
        .collect();
    let mut out = Vec::new();
    products_summing_to(&cands, 0, d, Poly::constant(1), &mut out);
    Ok(out.into_iter().map(|p| p.reduced(fs)).collect())
}

fn products_summing_to(cands: &[Candidate], from: usize, rest: &Multidegree, acc: Poly, out: &mut Vec<Poly>) {
    if rest.is_zero() {
        out.push(acc);
        return;
    }
    for i in from..cands.len() {
        if let Some(r) = rest.checked_sub(&cands[i].mdeg) {
            products_summing_to(cands, i, &r, acc.mul(&cands[i].poly), out);
        }
    }
}

/// Dimension of the span of polynomials read in the field.
pub fn span_rank(polys: &[Poly], fs: FieldSpec) -> Result<usize> {
    fn rank<F: FieldOps>(field: F, polys: &[Poly]) -> usize {
        let mut cols = Columns::new();
        let mut ech = Echelon::new(field.clone());
        for (i, p) in polys.iter().enumerate() {
            let v: SparseVec<F::Elem> = cols.vector(&field, p);
            ech.insert(&v, i);
        }
        ech.rank()
    }
    Ok(match fs {
        FieldSpec::Rational => rank(Rationals, polys),
        FieldSpec::Prime(p) => rank(PrimeField::new(p)?, polys),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::sigma;

    fn loops(names: &[&str]) -> Quiver {
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, "v", "v")).collect();
        Quiver::from_parts(&["v"], &arrows).unwrap()
    }

    #[test]
    fn basis_sizes() {
        let q = loops(&["a", "b"]);
        let m = |c: Vec<u32>| Multidegree { counts: c };
        assert_eq!(component_basis(&q, &m(vec![1, 0]), FieldSpec::Rational).unwrap().basis.len(), 4);
        assert_eq!(component_basis(&q, &m(vec![0, 0]), FieldSpec::Rational).unwrap().basis, vec![Monomial::one()]);
        assert_eq!(component_basis(&q, &m(vec![2, 0]), FieldSpec::Rational).unwrap().basis.len(), 10);
        assert_eq!(component_basis(&q, &m(vec![2, 1]), FieldSpec::Rational).unwrap().basis.len(), 40);
        assert!(matches!(
            component_basis(&q, &m(vec![5, 4]), FieldSpec::Rational),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn a_squared_b_is_decomposable() {
        let q = loops(&["a", "b"]);
        let f = sigma(&q, 1, &q.parse_word("a a b").unwrap()).unwrap();
        for fs in [FieldSpec::Rational, FieldSpec::Prime(2)] {
            let r = is_decomposable(&f, &q, fs).unwrap();
            assert_eq!(r.verdict, Verdict::Decomposable);
            assert!(r.round_trip);
        }
        let ab = sigma(&q, 1, &q.parse_word("a b").unwrap()).unwrap();
        let r = is_decomposable(&ab, &q, FieldSpec::Rational).unwrap();
        assert_eq!(r.verdict, Verdict::Indecomposable);
    }

    #[test]
    fn non_homogeneous_rejected() {
        let q = loops(&["a", "b"]);
        let f = Poly::var(entry_var(0, 1, 1)).add(&Poly::var(entry_var(1, 1, 1)).pow(2));
        assert_eq!(is_decomposable(&f, &q, FieldSpec::Rational), Err(Error::NotHomogeneous));
    }
}
