//! Finite-state acceptors over the symmetrized alphabet `Σ`, possibly with
//! ε-arrows, plus the standard constructions the decomposition needs.

mod family;
mod json;
mod ops;
mod special;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::freegroup::{Alphabet, Letter, WordError};

pub use family::{make_family, FamilySpec};
pub use ops::{
    accepts, adjacency_matrix, concat, determinize, prepare, reduced_normalize, split_by_incoming_label, trim, union,
};
pub use special::{check_sigma_complete, check_speciality, SigmaKind, SpecialKind, SpecialityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("the automaton accepts the empty language")]
    EmptyLanguage,
    #[error("ε-arrows present")]
    EpsilonArrowsPresent,
    #[error("expected a {expected} automaton, found {found:?}")]
    KindMismatch { expected: &'static str, found: SpecialKind },
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("automaton JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One arrow; `label == None` is an ε-arrow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub from: usize,
    pub label: Option<Letter>,
    pub to: usize,
}

/// `(S, Σ, δ, I, Z)` with named states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    names: Vec<String>,
    arrows: Vec<Arrow>,
    initial: Vec<usize>,
    finals: Vec<usize>,
}

impl Automaton {
    pub fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        arrows: Vec<Arrow>,
        initial: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self, AutomatonError> {
        let n = names.len();
        let initial: Vec<usize> = initial.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let finals: Vec<usize> = finals.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if initial.is_empty() {
            return Err(AutomatonError::Malformed("no initial state".into()));
        }
        if let Some(bad) = initial.iter().chain(&finals).find(|&&s| s >= n) {
            return Err(AutomatonError::Malformed(format!("state {bad} out of range")));
        }
        for a in &arrows {
            if a.from >= n || a.to >= n {
                return Err(AutomatonError::Malformed(format!("arrow {a:?} out of range")));
            }
            if let Some(l) = a.label {
                if !alphabet.contains(l) {
                    return Err(WordError::OutOfRank { index: l.index(), rank: alphabet.rank() }.into());
                }
            }
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != n {
            return Err(AutomatonError::Malformed("duplicate state names".into()));
        }
        Ok(Automaton { alphabet, names, arrows, initial, finals })
    }

    /// Unnamed states get `q0, q1, ...`.
    pub fn with_states(
        rank: u32,
        n: usize,
        arrows: impl IntoIterator<Item = (usize, Option<Letter>, usize)>,
        initial: impl IntoIterator<Item = usize>,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self, AutomatonError> {
        let alphabet = Alphabet::new(rank)?;
        let names = (0..n).map(|i| format!("q{i}")).collect();
        let arrows = arrows.into_iter().map(|(from, label, to)| Arrow { from, label, to }).collect();
        Self::from_parts(alphabet, names, arrows, initial, finals)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn rank(&self) -> u32 {
        self.alphabet.rank()
    }

    pub fn n_states(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn initial_states(&self) -> &[usize] {
        &self.initial
    }

    pub fn final_states(&self) -> &[usize] {
        &self.finals
    }

    /// The initial state when there is exactly one.
    pub fn initial(&self) -> Option<usize> {
        match self.initial.as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals.binary_search(&s).is_ok()
    }

    pub fn has_epsilon(&self) -> bool {
        self.arrows.iter().any(|a| a.label.is_none())
    }

    /// Partial determinism: no ε, one initial state, at most one arrow per
    /// `(state, label)`.
    pub fn is_deterministic(&self) -> bool {
        if self.has_epsilon() || self.initial.len() != 1 {
            return false;
        }
        let mut seen = BTreeSet::new();
        self.arrows.iter().all(|a| seen.insert((a.from, a.label)))
    }

    pub fn out_arrows(&self, s: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.from == s)
    }

    pub fn in_arrows(&self, s: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.to == s)
    }

    /// Deterministic transition, if present.
    pub fn step(&self, s: usize, l: Letter) -> Option<usize> {
        self.arrows.iter().find(|a| a.from == s && a.label == Some(l)).map(|a| a.to)
    }

    /// Per-state outgoing `(label, target)` lists.
    pub fn out_index(&self) -> Vec<Vec<(Option<Letter>, usize)>> {
        let mut idx = vec![Vec::new(); self.n_states()];
        for a in &self.arrows {
            idx[a.from].push((a.label, a.to));
        }
        idx
    }

    /// Same graph with a different set of final states.
    pub fn with_finals(&self, finals: impl IntoIterator<Item = usize>) -> Self {
        let mut out = self.clone();
        out.finals = finals.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        out
    }

    /// Same graph with a different set of initial states.
    pub fn with_initial(&self, initial: impl IntoIterator<Item = usize>) -> Self {
        let mut out = self.clone();
        out.initial = initial.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        assert!(!out.initial.is_empty(), "an automaton needs an initial state");
        out
    }

    /// Same automaton with states renamed `s0, s1, ...`.
    pub fn with_plain_names(&self) -> Self {
        let mut out = self.clone();
        out.names = (0..self.n_states()).map(|i| format!("s{i}")).collect();
        out
    }

    /// Keep only the arrows satisfying `keep`.
    pub fn filter_arrows(&self, keep: impl Fn(&Arrow) -> bool) -> Self {
        let mut out = self.clone();
        out.arrows.retain(|a| keep(a));
        out
    }

    /// Restrict to the states flagged in `keep` (renumbered in order).
    /// Returns `None` when no initial state survives.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Option<Self> {
        let mut map = vec![usize::MAX; self.n_states()];
        let mut names = Vec::new();
        for (s, &k) in keep.iter().enumerate() {
            if k {
                map[s] = names.len();
                names.push(self.names[s].clone());
            }
        }
        let initial: Vec<usize> = self.initial.iter().filter(|&&s| keep[s]).map(|&s| map[s]).collect();
        if initial.is_empty() {
            return None;
        }
        let arrows = self
            .arrows
            .iter()
            .filter(|a| keep[a.from] && keep[a.to])
            .map(|a| Arrow { from: map[a.from], label: a.label, to: map[a.to] })
            .collect();
        let finals = self.finals.iter().filter(|&&s| keep[s]).map(|&s| map[s]).collect();
        Some(Automaton { alphabet: self.alphabet, names, arrows, initial, finals })
    }
}
