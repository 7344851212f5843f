//! Decomposition of a regular set into pieces accepted by special automata,
//! the `R = R1 ∘ R2`, `R2 = (R3)*` splitting of a saturated piece, and the
//! thick/negligible classification built on them.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::BigRational;
use thiserror::Error;

use crate::automaton::{
    check_sigma_complete, check_speciality, prepare, split_by_incoming_label, trim, Arrow, Automaton, AutomatonError,
    SigmaKind, SpecialKind,
};
use crate::freegroup::{Letter, Word};
use crate::measures::{cesaro_mu0, genfunc_algi, MeasureError};
use crate::oracle::{Claim, Oracle, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("the automaton accepts the empty language")]
    EmptyLanguage,
    #[error("the automaton is not special over the group (kind {0:?})")]
    NotSpecial(SpecialKind),
    #[error("expected a {expected} automaton, found {found:?}")]
    KindMismatch { expected: &'static str, found: SpecialKind },
    #[error("classification inconsistency: {0}")]
    ClassificationInconsistency(String),
    #[error(transparent)]
    Automaton(AutomatonError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl From<AutomatonError> for DecomposeError {
    fn from(e: AutomatonError) -> Self {
        match e {
            AutomatonError::EmptyLanguage => DecomposeError::EmptyLanguage,
            AutomatonError::KindMismatch { expected, found } => DecomposeError::KindMismatch { expected, found },
            other => DecomposeError::Automaton(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum PieceKind {
    SpecialOverGroup,
    SpecialMonoid,
    /// The set `{1}`.
    TrivialIdentity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub automaton: Automaton,
    pub kind: PieceKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// The normalized automaton the pieces were cut from.
    pub normalized: Automaton,
    pub pieces: Vec<Piece>,
}

/// The acceptor of `{1}`.
pub fn identity_automaton(rank: u32) -> Automaton {
    Automaton::from_parts(
        crate::freegroup::Alphabet::new(rank).expect("rank is positive"),
        vec!["1".into()],
        Vec::new(),
        [0],
        [0],
    )
    .expect("well formed")
}

/// One piece per final state of the normalized automaton (in state order):
/// the sub-automaton of paths from the initial state to that final state.
/// An accepting initial state yields a separate `{1}` piece.
pub fn decompose(a: &Automaton) -> Result<Decomposition, DecomposeError> {
    let normalized = split_by_incoming_label(&prepare(a)?)?;
    let i0 = normalized.initial().expect("normalized automata are deterministic");
    let mut pieces = Vec::new();
    for &z in normalized.final_states() {
        if z == i0 {
            pieces.push(Piece { automaton: identity_automaton(a.rank()), kind: PieceKind::TrivialIdentity });
            continue;
        }
        let piece = trim(&normalized.with_finals([z]))?;
        let kind = check_speciality(&piece).kind;
        if kind != SpecialKind::SpecialOverGroup {
            return Err(DecomposeError::NotSpecial(kind));
        }
        pieces.push(Piece { automaton: piece, kind: PieceKind::SpecialOverGroup });
    }
    Ok(Decomposition { normalized, pieces })
}

/// `A1`, `A2`, `A3` of a special automaton; `A2`, `A3` exist iff the final
/// state has outgoing arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialSplit {
    pub a1: Automaton,
    pub a2: Option<Automaton>,
    pub a3: Option<Automaton>,
    pub saturated: bool,
}

pub fn split_saturated(a: &Automaton) -> Result<SpecialSplit, DecomposeError> {
    let kind = check_speciality(a).kind;
    if kind != SpecialKind::SpecialOverGroup {
        return Err(DecomposeError::NotSpecial(kind));
    }
    let z0 = a.final_states()[0];
    if a.out_arrows(z0).next().is_none() {
        return Ok(SpecialSplit { a1: a.clone(), a2: None, a3: None, saturated: false });
    }
    let a1 = trim(&a.filter_arrows(|ar| ar.from != z0))?;
    let a2 = trim(&a.with_initial([z0]))?;
    let a3 = split_monoid_state(&a2);
    Ok(SpecialSplit { a1, a2: Some(a2), a3: Some(a3), saturated: true })
}

/// Split the initial-and-final state of a monoid automaton into an
/// inedge-free initial copy and an outedge-free final copy.
fn split_monoid_state(a2: &Automaton) -> Automaton {
    let z = a2.initial().expect("monoid automata have one initial state");
    let z3 = a2.n_states();
    let mut names = a2.names().to_vec();
    names.push(format!("{}'", a2.names()[z]));
    let arrows: Vec<Arrow> =
        a2.arrows().iter().map(|ar| Arrow { to: if ar.to == z { z3 } else { ar.to }, ..*ar }).collect();
    Automaton::from_parts(a2.alphabet(), names, arrows, [z], [z3]).expect("split is well formed")
}

fn require_monoid(a2: &Automaton) -> Result<(), DecomposeError> {
    let found = check_speciality(a2).kind;
    if found != SpecialKind::SpecialMonoid {
        return Err(DecomposeError::KindMismatch { expected: "second-type (special monoid)", found });
    }
    Ok(())
}

/// Words of `L(A3)` up to length `depth` that are not `u ∘ v` with
/// `u, v ∈ L(A3) ∖ {1}`.
pub fn monoid_generators(a2: &Automaton, depth: usize) -> Result<BTreeSet<Word>, DecomposeError> {
    require_monoid(a2)?;
    let a3 = split_monoid_state(a2);
    let words = Oracle::default().language(&a3, depth)?;
    let set: HashSet<&Word> = words.iter().collect();
    let factors = |w: &Word| (1..w.len()).any(|i| set.contains(&w.prefix(i)) && set.contains(&w.suffix_from(i)));
    Ok(words.iter().filter(|w| !w.is_empty() && !factors(w)).cloned().collect())
}

/// All prefixes of words in `L(a)`: every state of the trimmed automaton
/// becomes final.
pub fn prefix_closure(a: &Automaton) -> Result<Automaton, DecomposeError> {
    let t = trim(a)?;
    let all: Vec<usize> = (0..t.n_states()).collect();
    Ok(t.with_finals(all))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Thick(BigRational),
    ExponentiallyNegligible,
}

/// A piece's `A2` when it is a Σ-complete monoid.
fn thick_monoid_of(piece: &Piece) -> Result<Option<SpecialSplit>, DecomposeError> {
    if piece.kind != PieceKind::SpecialOverGroup {
        return Ok(None);
    }
    let split = split_saturated(&piece.automaton)?;
    match &split.a2 {
        Some(a2) if check_sigma_complete(a2, SigmaKind::SecondType)? => Ok(Some(split)),
        _ => Ok(None),
    }
}

/// Pole order of `g` at 1, cross-checked against Σ-completeness of the
/// monoids of the decomposed pieces.
pub fn classify(a: &Automaton) -> Result<Classification, DecomposeError> {
    let g = match prepare(a) {
        Ok(p) => genfunc_algi::<BigRational>(&p)?,
        Err(AutomatonError::EmptyLanguage) => return Ok(Classification::ExponentiallyNegligible),
        Err(e) => return Err(e.into()),
    };
    let by_pole = match g.g.pole_order_at_one() {
        0 => Classification::ExponentiallyNegligible,
        1 => Classification::Thick(cesaro_mu0(&g)?),
        k => return Err(MeasureError::Algebra(crate::exactalg::AlgebraError::HigherOrderPole(k)).into()),
    };
    let mut complete = false;
    for piece in &decompose(a)?.pieces {
        complete |= thick_monoid_of(piece)?.is_some();
    }
    if complete != matches!(by_pole, Classification::Thick(_)) {
        return Err(DecomposeError::ClassificationInconsistency(format!(
            "pole test says {by_pole:?}, Σ-complete monoid present: {complete}"
        )));
    }
    Ok(by_pole)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThickWitness {
    /// `w ∘ L(t) ⊆ L(A)`, checked on `B_depth`.
    Witness {
        w: Word,
        t: Automaton,
        depth: usize,
    },
    NotThick,
}

/// Shortest (then first in letter order) accepted word of a deterministic
/// automaton.
pub fn shortest_word(a: &Automaton) -> Option<Word> {
    let idx = a.out_index();
    let start = a.initial()?;
    let mut prev: Vec<Option<(usize, Letter)>> = vec![None; a.n_states()];
    let mut seen = vec![false; a.n_states()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        if a.is_final(s) {
            let mut letters = Vec::new();
            let mut cur = s;
            while let Some((p, l)) = prev[cur] {
                letters.push(l);
                cur = p;
            }
            letters.reverse();
            return Word::new(letters).ok();
        }
        let mut outs: Vec<(Letter, usize)> = idx[s].iter().filter_map(|&(l, t)| l.map(|l| (l, t))).collect();
        outs.sort();
        for (l, t) in outs {
            if !seen[t] {
                seen[t] = true;
                prev[t] = Some((s, l));
                queue.push_back(t);
            }
        }
    }
    None
}

/// For a thick set: the shortest word of `A1` of the first piece whose
/// monoid is Σ-complete, and that monoid.
pub fn witness_thick(a: &Automaton, depth: usize) -> Result<ThickWitness, DecomposeError> {
    if classify(a)? == Classification::ExponentiallyNegligible {
        return Ok(ThickWitness::NotThick);
    }
    for piece in &decompose(a)?.pieces {
        let Some(split) = thick_monoid_of(piece)? else { continue };
        let w = shortest_word(&split.a1).expect("trim automata accept a word");
        let t = split.a2.expect("saturated");
        let report =
            Oracle::default().check(&Claim::PrefixedInclusion { prefix: w.clone(), inner: &t, outer: a }, depth)?;
        if let Some(bad) = report.counterexample {
            return Err(DecomposeError::ClassificationInconsistency(format!(
                "witness {w} ∘ T is not contained in the set: {bad}"
            )));
        }
        return Ok(ThickWitness::Witness { w, t, depth });
    }
    Err(DecomposeError::ClassificationInconsistency("thick set without a Σ-complete monoid".into()))
}

/// Inverses of the labels of all simple paths ending at the final state of
/// a third-type automaton (including the empty path).
pub fn suffix_witnesses(a3: &Automaton) -> Result<BTreeSet<Word>, DecomposeError> {
    let found = check_speciality(a3).kind;
    let z3 = match a3.final_states() {
        [z] if found == SpecialKind::SpecialOverGroup && a3.out_arrows(*z).next().is_none() => *z,
        _ => return Err(DecomposeError::KindMismatch { expected: "third-type", found }),
    };
    // Walk backwards from z3 along simple paths.
    let mut ins: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); a3.n_states()];
    for ar in a3.arrows() {
        ins[ar.to].push((ar.label.expect("special automata have no ε"), ar.from));
    }
    fn back(
        s: usize,
        ins: &[Vec<(Letter, usize)>],
        on_path: &mut Vec<bool>,
        suffix: &mut Vec<Letter>,
        out: &mut BTreeSet<Word>,
    ) {
        let label: Vec<Letter> = suffix.iter().rev().copied().collect();
        out.insert(Word::new(label).expect("special automata read reduced words").inverse());
        for &(l, p) in &ins[s] {
            if !on_path[p] {
                on_path[p] = true;
                suffix.push(l);
                back(p, ins, on_path, suffix, out);
                suffix.pop();
                on_path[p] = false;
            }
        }
    }
    let mut on_path = vec![false; a3.n_states()];
    on_path[z3] = true;
    let mut out = BTreeSet::new();
    back(z3, &ins, &mut on_path, &mut Vec::new(), &mut out);
    Ok(out)
}
