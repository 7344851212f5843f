//! Speciality conditions (a)-(f) and Σ-completeness.
//!
//! * (a) the initial state has no inedges;
//! * (b) exactly one final state `z0`;
//! * (c) every state is accessible;
//! * (d) every state reaches the final state;
//! * (e) all arrows entering a state share one label, the *type* of the state;
//! * (f) a state of type `x` has no outgoing arrow labelled `x⁻¹`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{Automaton, AutomatonError};
use crate::freegroup::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpecialKind {
    /// (a)-(e)
    SpecialOverMonoid,
    /// (a)-(f)
    SpecialOverGroup,
    /// (b)-(f) with the initial state equal to the final state.
    SpecialMonoid,
    NotSpecial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialityReport {
    pub deterministic: bool,
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
    pub f: bool,
    /// Common incoming label per state; `None` for states without inedges
    /// or with mixed incoming labels.
    pub types: Vec<Option<Letter>>,
    pub kind: SpecialKind,
}

pub fn check_speciality(a: &Automaton) -> SpecialityReport {
    let n = a.n_states();
    let deterministic = a.is_deterministic();
    let mut in_labels: Vec<BTreeSet<Option<Letter>>> = vec![BTreeSet::new(); n];
    for ar in a.arrows() {
        in_labels[ar.to].insert(ar.label);
    }
    let types: Vec<Option<Letter>> = in_labels
        .iter()
        .map(|ls| match ls.iter().collect::<Vec<_>>().as_slice() {
            [Some(l)] => Some(*l),
            _ => None,
        })
        .collect();

    let cond_a = a.initial().is_some_and(|i| in_labels[i].is_empty());
    let cond_b = a.final_states().len() == 1;
    let (cond_c, cond_d) = accessibility(a);
    let cond_e = in_labels.iter().all(|ls| ls.len() <= 1 && !ls.contains(&None));
    let cond_f = a.arrows().iter().all(|ar| match (types[ar.from], ar.label) {
        (Some(x), Some(l)) => l != x.inverse(),
        _ => true,
    });

    let monoid = a.initial().is_some() && cond_b && a.initial() == a.final_states().first().copied();
    let kind = if !deterministic {
        SpecialKind::NotSpecial
    } else if monoid && cond_c && cond_d && cond_e && cond_f {
        SpecialKind::SpecialMonoid
    } else if cond_a && cond_b && cond_c && cond_d && cond_e && cond_f {
        SpecialKind::SpecialOverGroup
    } else if cond_a && cond_b && cond_c && cond_d && cond_e {
        SpecialKind::SpecialOverMonoid
    } else {
        SpecialKind::NotSpecial
    };
    SpecialityReport { deterministic, a: cond_a, b: cond_b, c: cond_c, d: cond_d, e: cond_e, f: cond_f, types, kind }
}

fn accessibility(a: &Automaton) -> (bool, bool) {
    (reachable_all(a), reach_final_all(a))
}

fn reachable_all(a: &Automaton) -> bool {
    let mut seen = vec![false; a.n_states()];
    let mut stack: Vec<usize> = a.initial_states().to_vec();
    stack.iter().for_each(|&s| seen[s] = true);
    let idx = a.out_index();
    while let Some(s) = stack.pop() {
        for &(_, t) in &idx[s] {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

fn reach_final_all(a: &Automaton) -> bool {
    let mut seen = vec![false; a.n_states()];
    let mut stack: Vec<usize> = a.final_states().to_vec();
    stack.iter().for_each(|&s| seen[s] = true);
    while let Some(s) = stack.pop() {
        for ar in a.in_arrows(s) {
            if !seen[ar.from] {
                seen[ar.from] = true;
                stack.push(ar.from);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaKind {
    /// A special automaton over the group: the initial state must emit all
    /// `2m` labels and every other state of type `x` all of `Σ ∖ {x⁻¹}`.
    FirstType,
    /// A special monoid automaton: every state of type `x` emits `Σ ∖ {x⁻¹}`.
    SecondType,
}

pub fn check_sigma_complete(a: &Automaton, kind: SigmaKind) -> Result<bool, AutomatonError> {
    let report = check_speciality(a);
    let expected = match kind {
        SigmaKind::FirstType => SpecialKind::SpecialOverGroup,
        SigmaKind::SecondType => SpecialKind::SpecialMonoid,
    };
    if report.kind != expected {
        let name = match kind {
            SigmaKind::FirstType => "first-type (special over the group)",
            SigmaKind::SecondType => "second-type (special monoid)",
        };
        return Err(AutomatonError::KindMismatch { expected: name, found: report.kind });
    }
    let alphabet = a.alphabet();
    let initial = a.initial().expect("special automata have one initial state");
    let complete = (0..a.n_states()).all(|s| {
        let emitted: BTreeSet<Letter> = a.out_arrows(s).filter_map(|ar| ar.label).collect();
        let required: BTreeSet<Letter> = match (kind, report.types[s]) {
            (SigmaKind::FirstType, _) if s == initial => alphabet.letters().collect(),
            (_, Some(x)) => alphabet.letters().filter(|&l| l != x.inverse()).collect(),
            (_, None) => alphabet.letters().collect(),
        };
        required.is_subset(&emitted)
    });
    Ok(complete)
}
