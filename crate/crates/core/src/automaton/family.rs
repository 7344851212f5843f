//! Constructors for the standard families of regular subsets.

use std::fmt;

use super::{prepare, Arrow, Automaton, AutomatonError};
use crate::freegroup::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// The whole group `F`.
    Full,
    /// `F ∖ {1}`.
    FullNontrivial,
    /// `C(w)`: words with initial subword `w`.
    Cone(Word),
    /// `C[w]`: words ending in `w`.
    RightCone(Word),
    /// `C(u, v)`: all `u ∘ f ∘ v`; both handles nontrivial.
    DoubleCone(Word, Word),
    /// `C(Y, x)`: union of `C(y, x)` over `y ≠ x⁻¹`.
    GeneralizedCone(Letter),
    /// `(C[x] ∖ C(x⁻¹, x)) ∪ {1}`, a Σ-complete special monoid.
    ThickMonoidM(Letter),
    /// Words of length at least `r`.
    BallComplement(usize),
    /// Words of even length.
    EvenSubgroup,
    Singleton(Word),
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = |w: &Word| w.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        match self {
            FamilySpec::Full => write!(f, "full"),
            FamilySpec::FullNontrivial => write!(f, "nontrivial"),
            FamilySpec::Cone(w) => write!(f, "cone({})", compact(w)),
            FamilySpec::RightCone(w) => write!(f, "rcone({})", compact(w)),
            FamilySpec::DoubleCone(u, v) => write!(f, "dcone({},{})", compact(u), compact(v)),
            FamilySpec::GeneralizedCone(x) => write!(f, "gcone({x})"),
            FamilySpec::ThickMonoidM(x) => write!(f, "thickmonoid({x})"),
            FamilySpec::BallComplement(r) => write!(f, "ballcomp({r})"),
            FamilySpec::EvenSubgroup => write!(f, "even"),
            FamilySpec::Singleton(w) => write!(f, "singleton({})", compact(w)),
        }
    }
}

/// Small NFA builder; states are numbered in creation order.
struct Builder {
    n: usize,
    arrows: Vec<(usize, Option<Letter>, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder { n: 0, arrows: Vec::new() }
    }

    fn state(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn arrow(&mut self, from: usize, l: Letter, to: usize) {
        self.arrows.push((from, Some(l), to));
    }

    fn any(&mut self, alphabet: Alphabet, from: usize, to: usize) {
        for l in alphabet.letters() {
            self.arrow(from, l, to);
        }
    }

    /// A chain spelling `w` from `from`; returns its last state.
    fn chain(&mut self, from: usize, w: &Word) -> usize {
        let mut cur = from;
        for &l in w.letters() {
            let next = self.state();
            self.arrow(cur, l, next);
            cur = next;
        }
        cur
    }

    fn finish(self, rank: u32, initial: usize, finals: &[usize]) -> Result<Automaton, AutomatonError> {
        let raw = Automaton::with_states(rank, self.n, self.arrows, [initial], finals.iter().copied())?;
        Ok(prepare(&raw)?.with_plain_names())
    }
}

/// A trim deterministic acceptor of the named set of reduced words.
pub fn make_family(spec: &FamilySpec, m: u32) -> Result<Automaton, AutomatonError> {
    let alphabet = Alphabet::new(m)?;
    let check_letter = |x: Letter| {
        alphabet.check_word(&Word::new(vec![x]).expect("one letter is reduced")).map_err(AutomatonError::from)
    };
    let mut b = Builder::new();
    let s0 = b.state();
    match spec {
        FamilySpec::Full => {
            b.any(alphabet, s0, s0);
            b.finish(m, s0, &[s0])
        }
        FamilySpec::FullNontrivial => {
            let s1 = b.state();
            b.any(alphabet, s0, s1);
            b.any(alphabet, s1, s1);
            b.finish(m, s0, &[s1])
        }
        FamilySpec::Cone(w) => {
            alphabet.check_word(w)?;
            let end = b.chain(s0, w);
            b.any(alphabet, end, end);
            b.finish(m, s0, &[end])
        }
        FamilySpec::RightCone(w) => {
            alphabet.check_word(w)?;
            b.any(alphabet, s0, s0);
            let end = b.chain(s0, w);
            b.finish(m, s0, &[end])
        }
        FamilySpec::DoubleCone(u, v) => {
            if u.is_empty() || v.is_empty() {
                return Err(AutomatonError::InvalidSpec("double cone handles must be nontrivial".into()));
            }
            alphabet.check_word(u)?;
            alphabet.check_word(v)?;
            let hub = b.chain(s0, u);
            b.any(alphabet, hub, hub);
            let end = b.chain(hub, v);
            b.finish(m, s0, &[end])
        }
        FamilySpec::GeneralizedCone(x) => {
            check_letter(*x)?;
            let hub = b.state();
            let end = b.state();
            for y in alphabet.letters().filter(|&y| y != x.inverse()) {
                b.arrow(s0, y, hub);
            }
            b.any(alphabet, hub, hub);
            b.arrow(hub, *x, end);
            b.finish(m, s0, &[end])
        }
        FamilySpec::ThickMonoidM(x) => {
            check_letter(*x)?;
            Ok(thick_monoid(alphabet, *x))
        }
        FamilySpec::BallComplement(r) => {
            let mut cur = s0;
            for _ in 0..*r {
                let next = b.state();
                b.any(alphabet, cur, next);
                cur = next;
            }
            b.any(alphabet, cur, cur);
            b.finish(m, s0, &[cur])
        }
        FamilySpec::EvenSubgroup => {
            let s1 = b.state();
            b.any(alphabet, s0, s1);
            b.any(alphabet, s1, s0);
            b.finish(m, s0, &[s0])
        }
        FamilySpec::Singleton(w) => {
            alphabet.check_word(w)?;
            let end = b.chain(s0, w);
            b.finish(m, s0, &[end])
        }
    }
}

/// State `z0` (initial and final, type `x`) plus one state `q_y` per
/// letter `y ≠ x`. From a state of type `y`, reading `l ≠ y⁻¹` leads to
/// `z0` when `l = x` and to `q_l` otherwise.
fn thick_monoid(alphabet: Alphabet, x: Letter) -> Automaton {
    let others: Vec<Letter> = alphabet.letters().filter(|&y| y != x).collect();
    let state_of =
        |l: Letter| if l == x { 0 } else { 1 + others.iter().position(|&y| y == l).expect("letter in alphabet") };
    let mut names = vec!["z0".to_string()];
    names.extend(others.iter().map(|y| format!("q_{y}")));
    let types: Vec<Letter> = std::iter::once(x).chain(others.iter().copied()).collect();
    let mut arrows = Vec::new();
    for (s, ty) in types.iter().enumerate() {
        for l in alphabet.letters().filter(|&l| l != ty.inverse()) {
            arrows.push(Arrow { from: s, label: Some(l), to: state_of(l) });
        }
    }
    Automaton::from_parts(alphabet, names, arrows, [0], [0]).expect("well formed")
}
