use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldOps, FieldSpec};

/// Variable index. Entry `x^a_{ij}` of arrow number `a` is `4a + 2(i-1) + (j-1)`;
/// auxiliary parameters start at [`PARAM_BASE`].
pub type Var = u32;

pub const PARAM_BASE: Var = 1 << 24;

pub fn entry_var(arrow: usize, i: usize, j: usize) -> Var {
    debug_assert!((1..=2).contains(&i) && (1..=2).contains(&j));
    (4 * arrow + 2 * (i - 1) + (j - 1)) as Var
}

pub fn param_var(k: u32) -> Var {
    PARAM_BASE + k
}

/// Arrow index of an entry variable, `None` for parameters.
pub fn var_arrow(v: Var) -> Option<usize> {
    (v < PARAM_BASE).then_some((v / 4) as usize)
}

/// Sorted sparse exponent list. Ordered by total degree, then
/// lexicographically so that earlier variables with higher exponents come
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_exponents(mut exps: Vec<(Var, u16)>) -> Self {
        exps.retain(|&(_, e)| e > 0);
        exps.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u16)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn exponents(&self) -> &[(Var, u16)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Per-arrow degrees over `num_arrows` arrows; parameters are ignored.
    pub fn arrow_degrees(&self, num_arrows: usize) -> Vec<u32> {
        let mut d = vec![0u32; num_arrows];
        for &(v, e) in &self.0 {
            if let Some(a) = var_arrow(v) {
                if a < num_arrows {
                    d[a] += e as u32;
                }
            }
        }
        d
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (x, y) in self.0.iter().zip(&other.0) {
                if x.0 != y.0 {
                    // The monomial holding the earlier variable is lex-larger
                    // and sorts first.
                    return x.0.cmp(&y.0);
                }
                if x.1 != y.1 {
                    return y.1.cmp(&x.1);
                }
            }
            other.0.len().cmp(&self.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with integer coefficients; no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, i64>,
}

fn checked(c: Option<i64>) -> i64 {
    c.expect("polynomial coefficient overflowed i64")
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: i64) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Monomial::var(v), 1)
    }

    pub fn term(m: Monomial, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = checked(e.get().checked_add(c));
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), checked(c.checked_neg()));
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Poly {
        if k == 0 {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), checked(c.checked_mul(k))))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut acc: HashMap<Monomial, i64> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let slot = acc.entry(m1.mul(m2)).or_insert(0);
                *slot = checked(slot.checked_add(checked(c1.checked_mul(c2))));
            }
        }
        Poly {
            terms: acc.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::constant(1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    /// Replaces variables by polynomials; `None` keeps the variable.
    pub fn substitute(&self, mut image: impl FnMut(Var) -> Option<Poly>) -> Poly {
        let mut cache: HashMap<Var, Option<Poly>> = HashMap::new();
        let mut powers: HashMap<(Var, u16), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, &c) in &self.terms {
            let mut prod = Poly::constant(c);
            for &(v, e) in &m.0 {
                let img = cache.entry(v).or_insert_with(|| image(v)).clone();
                let factor = match img {
                    None => Poly::term(Monomial(vec![(v, e)]), 1),
                    Some(p) => powers.entry((v, e)).or_insert_with(|| p.pow(e as u32)).clone(),
                };
                prod = prod.mul(&factor);
            }
            out = out.add(&prod);
        }
        out
    }

    /// Keeps the terms whose monomial satisfies `pred`.
    pub fn filter_terms(&self, mut pred: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Degree of each monomial restricted to `vars`, and the component of
    /// that degree.
    pub fn part_of_degree_in(&self, vars: &BTreeSet<Var>, degree: u32) -> Poly {
        self.filter_terms(|m| {
            m.0.iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|&(_, e)| e as u32)
                .sum::<u32>()
                == degree
        })
    }

    /// Coefficients reduced into the field's canonical range.
    pub fn reduced(&self, fs: FieldSpec) -> Poly {
        match fs {
            FieldSpec::Rational => self.clone(),
            FieldSpec::Prime(_) => Poly {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, &c)| (m.clone(), fs.reduce(c)))
                    .filter(|&(_, c)| c != 0)
                    .collect(),
            },
        }
    }

    pub fn is_zero_in(&self, fs: FieldSpec) -> bool {
        self.reduced(fs).is_zero()
    }

    pub fn equals_in(&self, other: &Poly, fs: FieldSpec) -> bool {
        self.sub(other).is_zero_in(fs)
    }

    /// Common per-arrow degree of all monomials, if there is one.
    pub fn homogeneous_arrow_degrees(&self, num_arrows: usize) -> Option<Vec<u32>> {
        let mut it = self.terms.keys().map(|m| m.arrow_degrees(num_arrows));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Exact evaluation at a point of the given field.
    pub fn evaluate<F: FieldOps>(
        &self,
        field: &F,
        point: &HashMap<Var, F::Elem>,
        names: impl Fn(Var) -> String,
    ) -> Result<F::Elem> {
        let mut acc = field.zero();
        for (m, &c) in &self.terms {
            let mut t = field.from_i64(c);
            for &(v, e) in &m.0 {
                let x = point.get(&v).ok_or_else(|| Error::MissingVariable(names(v)))?;
                for _ in 0..e {
                    t = field.mul(&t, x);
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Renders terms in monomial order as `coef * var^e * ...`.
    pub fn render(&self, fs: FieldSpec, names: impl Fn(Var) -> String) -> String {
        let reduced = self.reduced(fs);
        if reduced.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, &c)) in reduced.terms.iter().enumerate() {
            if idx == 0 {
                let _ = write!(out, "{c}");
            } else if c < 0 {
                let _ = write!(out, " - {}", c.unsigned_abs());
            } else {
                let _ = write!(out, " + {c}");
            }
            for &(v, e) in &m.0 {
                let _ = write!(out, " * {}", names(v));
                if e > 1 {
                    let _ = write!(out, "^{e}");
                }
            }
        }
        out
    }
}
