//! Symbolic layer: integer polynomials in the entries of generic 2×2
//! matrices, the star involution, traces and determinants of path products,
//! and the elementary `SL(2)` substitutions used for invariance checks.

mod poly;

use std::collections::HashMap;

pub use poly::{entry_var, param_var, var_arrow, Monomial, Poly, Var, PARAM_BASE};

use crate::error::{Error, Result};
use crate::field::{FieldOps, FieldSpec};
use crate::quiver::{path_kind, ArrowId, ArrowRef, PathKind, PathWord, Quiver, VertexId};

/// Words longer than this are not expanded.
pub const DEFAULT_EXPANSION_CAP: usize = 12;

/// Row-major 2×2 matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericMatrix {
    pub entries: [Poly; 4],
}

impl GenericMatrix {
    pub fn new(m11: Poly, m12: Poly, m21: Poly, m22: Poly) -> Self {
        GenericMatrix {
            entries: [m11, m12, m21, m22],
        }
    }

    pub fn identity() -> Self {
        Self::scalar(Poly::constant(1))
    }

    pub fn scalar(c: Poly) -> Self {
        GenericMatrix::new(c.clone(), Poly::zero(), Poly::zero(), c)
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[2 * (i - 1) + (j - 1)]
    }

    pub fn mul(&self, other: &GenericMatrix) -> GenericMatrix {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        GenericMatrix::new(
            a.mul(e).add(&b.mul(g)),
            a.mul(f).add(&b.mul(h)),
            c.mul(e).add(&d.mul(g)),
            c.mul(f).add(&d.mul(h)),
        )
    }

    pub fn add(&self, other: &GenericMatrix) -> GenericMatrix {
        let e = |k: usize| self.entries[k].add(&other.entries[k]);
        GenericMatrix::new(e(0), e(1), e(2), e(3))
    }

    pub fn scale(&self, c: &Poly) -> GenericMatrix {
        let e = |k: usize| self.entries[k].mul(c);
        GenericMatrix::new(e(0), e(1), e(2), e(3))
    }

    pub fn trace(&self) -> Poly {
        self.entries[0].add(&self.entries[3])
    }

    pub fn det(&self) -> Poly {
        let [a, b, c, d] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> GenericMatrix {
        GenericMatrix::new(
            f(&self.entries[0]),
            f(&self.entries[1]),
            f(&self.entries[2]),
            f(&self.entries[3]),
        )
    }
}

/// `X_a` with entries `x^a_{ij}`.
pub fn generic_matrix(q: &Quiver, arrow: &str) -> Result<GenericMatrix> {
    Ok(generic_matrix_of(q.arrow_id(arrow)?))
}

pub fn generic_matrix_of(a: ArrowId) -> GenericMatrix {
    let v = |i, j| Poly::var(entry_var(a.0, i, j));
    GenericMatrix::new(v(1, 1), v(1, 2), v(2, 1), v(2, 2))
}

/// `M* = -J M^T J` with `J = [[0,1],[-1,0]]`, i.e. the adjugate.
pub fn adjoint_star(m: &GenericMatrix) -> GenericMatrix {
    let [a, b, c, d] = &m.entries;
    GenericMatrix::new(d.clone(), b.neg(), c.neg(), a.clone())
}

pub fn letter_matrix(r: ArrowRef) -> GenericMatrix {
    let m = generic_matrix_of(r.arrow);
    if r.starred {
        adjoint_star(&m)
    } else {
        m
    }
}

/// Product of letter matrices, left to right, without any composability
/// check.
pub(crate) fn letters_product(letters: &[ArrowRef]) -> GenericMatrix {
    letters
        .iter()
        .fold(GenericMatrix::identity(), |acc, &r| acc.mul(&letter_matrix(r)))
}

/// Trace of the product of letter matrices; assumes a closed word.
pub(crate) fn letters_trace(letters: &[ArrowRef]) -> Poly {
    letters_product(letters).trace()
}

pub fn path_matrix(q: &Quiver, w: &PathWord) -> Result<GenericMatrix> {
    path_matrix_with_cap(q, w, DEFAULT_EXPANSION_CAP)
}

pub fn path_matrix_with_cap(q: &Quiver, w: &PathWord, cap: usize) -> Result<GenericMatrix> {
    if path_kind(q, w)? == PathKind::NotAPath {
        return Err(Error::NotAPath);
    }
    if w.len() > cap {
        return Err(Error::CapExceeded {
            what: "word length",
            value: w.len(),
            cap,
        });
    }
    Ok(letters_product(&w.letters))
}

/// `sigma_1` (trace) or `sigma_2` (determinant) of a closed path.
pub fn sigma(q: &Quiver, t: u8, w: &PathWord) -> Result<Poly> {
    if path_kind(q, w)? != PathKind::ClosedPath {
        return Err(Error::NotClosed);
    }
    let m = path_matrix(q, w)?;
    match t {
        1 => Ok(m.trace()),
        2 => Ok(m.det()),
        _ => Err(Error::Invalid(format!("sigma_{t} is not defined for 2x2 matrices"))),
    }
}

pub fn det_of_arrow(a: ArrowId) -> Poly {
    generic_matrix_of(a).det()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `[[1, t], [0, 1]]`
    Upper,
    /// `[[1, 0], [t, 1]]`
    Lower,
}

impl Elementary {
    fn matrices(self, t: Var) -> (GenericMatrix, GenericMatrix) {
        let tp = Poly::var(t);
        let (zero, one) = (Poly::zero(), Poly::constant(1));
        match self {
            Elementary::Upper => (
                GenericMatrix::new(one.clone(), tp.clone(), zero.clone(), one.clone()),
                GenericMatrix::new(one.clone(), tp.neg(), zero, one),
            ),
            Elementary::Lower => (
                GenericMatrix::new(one.clone(), zero.clone(), tp.clone(), one.clone()),
                GenericMatrix::new(one.clone(), zero, tp.neg(), one),
            ),
        }
    }
}

/// Acts by the elementary matrix `g` at vertex `v`: `X_a <- g^{-1} X_a` when
/// `head(a) = v` and `X_a <- X_a g` when `tail(a) = v`.
pub fn elementary_action(
    f: &Poly,
    q: &Quiver,
    v: VertexId,
    kind: Elementary,
    param: Var,
) -> Result<Poly> {
    if f.vars().contains(&param) || param < PARAM_BASE {
        return Err(Error::ParamNotFresh);
    }
    let (g, g_inv) = kind.matrices(param);
    let mut images: HashMap<Var, Poly> = HashMap::new();
    for a in q.arrow_ids() {
        let arrow = q.arrow(a);
        if arrow.head != v && arrow.tail != v {
            continue;
        }
        let mut m = generic_matrix_of(a);
        if arrow.head == v {
            m = g_inv.mul(&m);
        }
        if arrow.tail == v {
            m = m.mul(&g);
        }
        for i in 1..=2 {
            for j in 1..=2 {
                images.insert(entry_var(a.0, i, j), m.get(i, j).clone());
            }
        }
    }
    Ok(f.substitute(|var| images.get(&var).cloned()))
}

/// Human-readable variable names: `x[a][i][j]` and `t<k>`.
pub fn var_name(q: &Quiver, v: Var) -> String {
    match var_arrow(v) {
        Some(a) if a < q.num_arrows() => {
            let slot = v % 4;
            format!("x[{}][{}][{}]", q.arrow_name(ArrowId(a)), slot / 2 + 1, slot % 2 + 1)
        }
        Some(a) => format!("x[#{a}][{}][{}]", (v % 4) / 2 + 1, v % 2 + 1),
        None => format!("t{}", v - PARAM_BASE),
    }
}

pub fn render_poly(q: &Quiver, f: &Poly, fs: FieldSpec) -> String {
    f.render(fs, |v| var_name(q, v))
}

/// An assignment of field values to variables.
#[derive(Clone, Debug)]
pub struct Point<E> {
    pub field: FieldSpec,
    pub values: HashMap<Var, E>,
}

pub fn evaluate_at_point<F: FieldOps>(
    q: &Quiver,
    f: &Poly,
    field: &F,
    point: &Point<F::Elem>,
) -> Result<F::Elem> {
    if point.field != field.spec() {
        return Err(Error::CharacteristicMismatch {
            expected: field.spec().characteristic(),
            found: point.field.characteristic(),
        });
    }
    f.evaluate(field, &point.values, |v| var_name(q, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::quiver::star_path;

    fn loops(names: &[&str]) -> Quiver {
        let arrows: Vec<(&str, &str, &str)> = names.iter().map(|n| (*n, "v", "v")).collect();
        Quiver::from_parts(&["v"], &arrows).unwrap()
    }

    #[test]
    fn generic_entries() {
        let q = loops(&["a", "b"]);
        let a = generic_matrix(&q, "a").unwrap();
        assert_eq!(*a.get(1, 2), Poly::var(entry_var(0, 1, 2)));
        assert_eq!(a.trace(), Poly::var(entry_var(0, 1, 1)).add(&Poly::var(entry_var(0, 2, 2))));
        let b = generic_matrix(&q, "b").unwrap();
        let va: std::collections::BTreeSet<_> = a.entries.iter().flat_map(|p| p.vars()).collect();
        let vb: std::collections::BTreeSet<_> = b.entries.iter().flat_map(|p| p.vars()).collect();
        assert!(va.is_disjoint(&vb));
        assert!(matches!(generic_matrix(&q, "c"), Err(Error::UnknownArrow(_))));
    }

    #[test]
    fn star_is_adjugate() {
        let q = loops(&["a"]);
        let m = generic_matrix(&q, "a").unwrap();
        assert_eq!(adjoint_star(&adjoint_star(&m)), m);
        // Hand expansion for [[a,b],[c,d]]: M M* = (ad - bc) E.
        let prod = m.mul(&adjoint_star(&m));
        assert_eq!(prod, GenericMatrix::scalar(m.det()));
        assert_eq!(adjoint_star(&m).trace(), m.trace());
        assert_eq!(adjoint_star(&m).det(), m.det());
        // -J M^T J computed literally.
        let j = GenericMatrix::new(Poly::zero(), Poly::constant(1), Poly::constant(-1), Poly::zero());
        let mt = GenericMatrix::new(
            m.get(1, 1).clone(),
            m.get(2, 1).clone(),
            m.get(1, 2).clone(),
            m.get(2, 2).clone(),
        );
        let lit = j.mul(&mt).mul(&j).map(|p| p.neg());
        assert_eq!(lit, adjoint_star(&m));
    }

    #[test]
    fn path_products() {
        let q = Quiver::from_parts(&["u", "v"], &[("z1", "u", "v")]).unwrap();
        let e = q.parse_word("1@u").unwrap();
        assert_eq!(path_matrix(&q, &e).unwrap(), GenericMatrix::identity());
        let w = q.parse_word("z1 z1*").unwrap();
        let det = det_of_arrow(ArrowId(0));
        assert_eq!(path_matrix(&q, &w).unwrap(), GenericMatrix::scalar(det.clone()));
        assert_eq!(sigma(&q, 1, &w).unwrap(), det.scale(2));
        assert!(matches!(path_matrix(&q, &q.parse_word("z1 z1").unwrap()), Err(Error::NotAPath)));
        assert_eq!(sigma(&q, 1, &q.parse_word("z1").unwrap()), Err(Error::NotClosed));
        assert_eq!(sigma(&q, 2, &w).unwrap(), det.pow(2));
    }

    #[test]
    fn star_of_path_is_star_of_matrix() {
        let q = loops(&["a", "b", "c"]);
        for text in ["a b* c", "c c* a b", "b"] {
            let w = q.parse_word(text).unwrap();
            let lhs = path_matrix(&q, &star_path(&w)).unwrap();
            let rhs = adjoint_star(&path_matrix(&q, &w).unwrap());
            assert_eq!(lhs, rhs, "{text}");
        }
    }

    #[test]
    fn expansion_cap() {
        let q = loops(&["a"]);
        let w = PathWord::new(vec![ArrowRef::plain(ArrowId(0)); 13]);
        assert!(matches!(path_matrix(&q, &w), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn elementary_invariance() {
        let q = Quiver::from_parts(&["u", "v"], &[("a", "u", "u"), ("z", "u", "v")]).unwrap();
        let t = param_var(0);
        let det = det_of_arrow(q.arrow_id("z").unwrap());
        for v in q.vertex_ids() {
            for kind in [Elementary::Upper, Elementary::Lower] {
                assert_eq!(elementary_action(&det, &q, v, kind, t).unwrap(), det);
            }
        }
        let tr = sigma(&q, 1, &q.parse_word("a z z*").unwrap()).unwrap();
        let moved = elementary_action(&tr, &q, VertexId(0), Elementary::Upper, t).unwrap();
        assert_eq!(moved, tr);
        let coord = Poly::var(entry_var(0, 1, 1));
        let moved = elementary_action(&coord, &q, VertexId(0), Elementary::Upper, t).unwrap();
        assert_ne!(moved, coord);
        let with_t = coord.mul(&Poly::var(t));
        assert_eq!(
            elementary_action(&with_t, &q, VertexId(0), Elementary::Upper, t),
            Err(Error::ParamNotFresh)
        );
    }

    #[test]
    fn evaluation_at_identity() {
        let q = Quiver::from_parts(&["u", "v"], &[("x", "u", "v")]).unwrap();
        let f = sigma(&q, 1, &q.parse_word("x x*").unwrap()).unwrap();
        let id = |field: FieldSpec| -> HashMap<Var, i64> {
            let _ = field;
            [(0, 1), (1, 0), (2, 0), (3, 1)].into()
        };
        let pq = Point {
            field: FieldSpec::Rational,
            values: id(FieldSpec::Rational).into_iter().map(|(k, v)| (k, Rationals.from_i64(v))).collect(),
        };
        assert_eq!(evaluate_at_point(&q, &f, &Rationals, &pq).unwrap(), Rationals.from_i64(2));
        let f2 = PrimeField::new(2).unwrap();
        let p2 = Point {
            field: FieldSpec::Prime(2),
            values: id(FieldSpec::Prime(2)).into_iter().map(|(k, v)| (k, f2.from_i64(v))).collect(),
        };
        assert_eq!(evaluate_at_point(&q, &f, &f2, &p2).unwrap(), 0);
        let f3 = PrimeField::new(3).unwrap();
        assert!(matches!(
            evaluate_at_point(&q, &f, &f3, &p2),
            Err(Error::CharacteristicMismatch { expected: 3, found: 2 })
        ));
    }
}
