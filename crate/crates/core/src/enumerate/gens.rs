use std::cmp::Reverse;

use crate::error::Result;
use crate::field::FieldSpec;
use crate::quiver::{mdeg, ArrowId, Multidegree, PathWord, Quiver};
use crate::symalg::{det_of_arrow, path_matrix, Poly};

use super::{enumerate_admissible_tree_paths_with, enumerate_tree_paths_with, EnumOptions, TracePaths};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// Traces over `S_II`.
    Char2,
    /// Traces over `S_I`.
    NotChar2,
}

impl Branch {
    pub fn of(fs: FieldSpec) -> Self {
        if fs.is_char2() {
            Branch::Char2
        } else {
            Branch::NotChar2
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Det(ArrowId),
    Trace(PathWord),
}

impl Generator {
    pub fn mdeg(&self, q: &Quiver) -> Multidegree {
        match self {
            Generator::Det(a) => Multidegree::unit(q.num_arrows(), *a, 2),
            Generator::Trace(w) => mdeg(q, w),
        }
    }

    pub fn poly(&self, q: &Quiver) -> Result<Poly> {
        match self {
            Generator::Det(a) => Ok(det_of_arrow(*a)),
            Generator::Trace(w) => Ok(path_matrix(q, w)?.trace()),
        }
    }

    pub fn display(&self, q: &Quiver) -> String {
        match self {
            Generator::Det(a) => format!("det {}", q.arrow_name(*a)),
            Generator::Trace(w) => format!("tr {} | mdeg {}", q.display_word(w), q.display_mdeg(&mdeg(q, w))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub branch: Branch,
    pub dets: Vec<ArrowId>,
    pub traces: TracePaths,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.dets.len() + self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Generators with their multidegrees, ordered by total degree and then
    /// by multidegree (larger count vectors first).
    pub fn generators(&self, q: &Quiver) -> Vec<(Multidegree, Generator)> {
        let mut all: Vec<(Multidegree, Generator)> = self
            .dets
            .iter()
            .map(|&a| Generator::Det(a))
            .chain(self.traces.values().cloned().map(Generator::Trace))
            .map(|g| (g.mdeg(q), g))
            .collect();
        all.sort_by_key(|(m, _)| (m.total(), Reverse(m.counts.clone())));
        all
    }

    /// One line per generator: `det <arrow>` or
    /// `tr <word> | mdeg {arrow:count,...}`.
    pub fn serialize(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (_, g) in self.generators(q) {
            out.push_str(&g.display(q));
            out.push('\n');
        }
        out
    }
}

pub fn minimal_generating_set(q: &Quiver, fs: FieldSpec) -> Result<GeneratorSet> {
    minimal_generating_set_with(q, fs, &EnumOptions::default())
}

pub fn minimal_generating_set_with(q: &Quiver, fs: FieldSpec, opts: &EnumOptions) -> Result<GeneratorSet> {
    let branch = Branch::of(fs);
    let traces = match branch {
        Branch::Char2 => enumerate_tree_paths_with(q, opts)?,
        Branch::NotChar2 => enumerate_admissible_tree_paths_with(q, opts)?,
    };
    Ok(GeneratorSet {
        branch,
        dets: q.arrow_ids().collect(),
        traces,
    })
}
