//! Exact sparse row echelon forms with combination tracking.

use std::collections::{BTreeMap, HashMap};

use crate::field::FieldOps;
use crate::symalg::{Monomial, Poly};

pub type SparseVec<E> = BTreeMap<usize, E>;

/// A stored row and the combination of inserted vectors it equals.
type Row<E> = (SparseVec<E>, SparseVec<E>);

/// Assigns column indices to monomials as they are met.
#[derive(Clone, Debug, Default)]
pub struct Columns {
    index: HashMap<Monomial, usize>,
    monomials: Vec<Monomial>,
}

impl Columns {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, col: usize) -> &Monomial {
        &self.monomials[col]
    }

    /// Coefficient vector of `f` read in the field; zero entries dropped.
    pub fn vector<F: FieldOps>(&mut self, field: &F, f: &Poly) -> SparseVec<F::Elem> {
        let mut v = SparseVec::new();
        for (m, c) in f.terms() {
            let e = field.from_i64(c);
            if field.is_zero(&e) {
                continue;
            }
            let next = self.monomials.len();
            let col = *self.index.entry(m.clone()).or_insert_with(|| {
                self.monomials.push(m.clone());
                next
            });
            v.insert(col, e);
        }
        v
    }
}

/// Row echelon form over a field. Every stored row has its pivot as its
/// least column with coefficient one, and remembers which combination of
/// the inserted vectors it equals.
#[derive(Clone, Debug)]
pub struct Echelon<F: FieldOps> {
    field: F,
    rows: Vec<Row<F::Elem>>,
    pivots: BTreeMap<usize, usize>,
}

impl<F: FieldOps> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows. Returns the remainder and the
    /// combination `c` of inserted vectors with `v = remainder + c`.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut work = v.clone();
        let mut combo: SparseVec<F::Elem> = SparseVec::new();
        let mut from = 0usize;
        loop {
            let next = work
                .range(from..)
                .find(|(col, _)| self.pivots.contains_key(col))
                .map(|(&col, c)| (col, c.clone()));
            let Some((col, factor)) = next else { break };
            let (row, row_combo) = &self.rows[self.pivots[&col]];
            axpy(f, &mut work, &factor, row);
            axpy(f, &mut combo, &f.neg(&factor), row_combo);
            from = col + 1;
        }
        combo.retain(|_, c| !f.is_zero(c));
        (work, combo)
    }

    /// Inserts `v` under the identifier `id`; returns whether it was
    /// independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>, id: usize) -> bool {
        let f = self.field.clone();
        let (mut rem, combo) = self.reduce(v);
        let Some((&pivot, lead)) = rem.iter().next() else {
            return false;
        };
        let inv = f.inv(lead).expect("non-zero entry is invertible");
        for c in rem.values_mut() {
            *c = f.mul(c, &inv);
        }
        // rem = v - combo, scaled by inv.
        let mut rc: SparseVec<F::Elem> = combo.iter().map(|(&k, c)| (k, f.neg(&f.mul(c, &inv)))).collect();
        rc.insert(id, inv);
        rc.retain(|_, c| !f.is_zero(c));
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push((rem, rc));
        true
    }

    /// Expresses `v` through inserted vectors, if it lies in their span.
    pub fn solve(&self, v: &SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let (rem, combo) = self.reduce(v);
        rem.is_empty().then_some(combo)
    }
}

/// `acc -= factor * row`, dropping zeros.
fn axpy<F: FieldOps>(f: &F, acc: &mut SparseVec<F::Elem>, factor: &F::Elem, row: &SparseVec<F::Elem>) {
    for (&k, c) in row {
        let delta = f.mul(factor, c);
        match acc.get_mut(&k) {
            Some(slot) => {
                *slot = f.sub(slot, &delta);
                if f.is_zero(slot) {
                    acc.remove(&k);
                }
            }
            None => {
                let val = f.neg(&delta);
                if !f.is_zero(&val) {
                    acc.insert(k, val);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn vec_of<F: FieldOps>(f: &F, entries: &[(usize, i64)]) -> SparseVec<F::Elem> {
        entries
            .iter()
            .map(|&(k, c)| (k, f.from_i64(c)))
            .filter(|(_, c)| !f.is_zero(c))
            .collect()
    }

    #[test]
    fn rank_and_solve_over_rationals() {
        let f = Rationals;
        let mut e = Echelon::new(f);
        assert!(e.insert(&vec_of(&f, &[(0, 1), (1, 2)]), 0));
        assert!(e.insert(&vec_of(&f, &[(1, 1), (2, 1)]), 1));
        assert!(!e.insert(&vec_of(&f, &[(0, 2), (1, 5), (2, 1)]), 2));
        assert_eq!(e.rank(), 2);
        // 3*v0 - 2*v1 = (3, 4, -2)
        let target = vec_of(&f, &[(0, 3), (1, 4), (2, -2)]);
        let combo = e.solve(&target).unwrap();
        assert_eq!(combo, vec_of(&f, &[(0, 3), (1, -2)]));
        assert!(e.solve(&vec_of(&f, &[(2, 1)])).is_none());
    }

    #[test]
    fn characteristic_two_collapses() {
        let f = PrimeField::new(2).unwrap();
        let mut e = Echelon::new(f);
        assert!(e.insert(&vec_of(&f, &[(0, 1), (1, 1)]), 0));
        assert!(!e.insert(&vec_of(&f, &[(0, 1), (1, -1)]), 1));
        let q = Rationals;
        let mut e = Echelon::new(q);
        assert!(e.insert(&vec_of(&q, &[(0, 1), (1, 1)]), 0));
        assert!(e.insert(&vec_of(&q, &[(0, 1), (1, -1)]), 1));
    }
}
