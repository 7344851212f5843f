//! Brute-force ground truth. Every reduced word up to a given length is
//! enumerated and run through a direct simulation of the raw automaton
//! (ε-closures over bit sets); nothing here goes through matrices or
//! generating functions.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::automaton::Automaton;
use crate::freegroup::{sphere_size, Letter, Word};
use crate::measures::{FrequencySeries, MeasureError};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration of S_{depth} for rank {rank} ({size} words) exceeds the budget of {budget}")]
    BudgetExceeded { rank: u32, depth: usize, size: String, budget: u64 },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

type Bits = Vec<u64>;

fn is_empty(b: &Bits) -> bool {
    b.iter().all(|w| *w == 0)
}

/// Subset simulation of an automaton with ε-arrows.
struct Simulator {
    init: Bits,
    finals: Bits,
    /// `delta[state][letter code]`, already ε-closed.
    delta: Vec<Vec<Bits>>,
}

impl Simulator {
    fn new(a: &Automaton) -> Self {
        let n = a.n_states();
        let width = n.div_ceil(64).max(1);
        let size = a.alphabet().size();
        let single = |s: usize| {
            let mut b = vec![0u64; width];
            b[s / 64] |= 1 << (s % 64);
            b
        };
        let mut eps: Vec<Vec<usize>> = vec![Vec::new(); n];
        for ar in a.arrows() {
            if ar.label.is_none() {
                eps[ar.from].push(ar.to);
            }
        }
        let closure = |seed: &Bits| {
            let mut out = seed.clone();
            let mut stack: Vec<usize> = (0..n).filter(|&s| seed[s / 64] >> (s % 64) & 1 == 1).collect();
            while let Some(s) = stack.pop() {
                for &t in &eps[s] {
                    if out[t / 64] >> (t % 64) & 1 == 0 {
                        out[t / 64] |= 1 << (t % 64);
                        stack.push(t);
                    }
                }
            }
            out
        };
        let mut raw = vec![vec![vec![0u64; width]; size]; n];
        for ar in a.arrows() {
            if let Some(l) = ar.label {
                raw[ar.from][l.code()][ar.to / 64] |= 1 << (ar.to % 64);
            }
        }
        let delta = raw.iter().map(|row| row.iter().map(&closure).collect()).collect();
        let mut init = vec![0u64; width];
        for &i in a.initial_states() {
            for (d, s) in init.iter_mut().zip(single(i)) {
                *d |= s;
            }
        }
        let mut finals = vec![0u64; width];
        for &z in a.final_states() {
            finals[z / 64] |= 1 << (z % 64);
        }
        Simulator { init: closure(&init), finals, delta }
    }

    fn step(&self, set: &Bits, code: usize) -> Bits {
        let mut out = vec![0u64; set.len()];
        for (wi, &word) in set.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let s = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (d, t) in out.iter_mut().zip(&self.delta[s][code]) {
                    *d |= t;
                }
            }
        }
        out
    }

    fn accepting(&self, set: &Bits) -> bool {
        set.iter().zip(&self.finals).any(|(a, b)| a & b != 0)
    }

    fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = self.init.clone();
        for l in w {
            if is_empty(&cur) {
                return false;
            }
            cur = self.step(&cur, l.code());
        }
        self.accepting(&cur)
    }
}

/// Depth-first walk over `B_depth`, partitioned by first letter across
/// threads. `visit` sees the current word and the state set of every
/// simulator; with `prune`, subtrees where all sets are empty are skipped.
fn walk<A, F>(m: u32, depth: usize, sims: &[Simulator], prune: bool, make: impl Fn() -> A + Sync, visit: F) -> Vec<A>
where
    A: Send,
    F: Fn(&mut A, &[Letter], &[Bits]) + Sync,
{
    let size = 2 * m as usize;
    let dfs = |acc: &mut A, word: &mut Vec<Letter>, sets: Vec<Bits>| {
        #[allow(clippy::too_many_arguments)]
        fn rec<A, F: Fn(&mut A, &[Letter], &[Bits])>(
            acc: &mut A,
            word: &mut Vec<Letter>,
            sets: Vec<Bits>,
            sims: &[Simulator],
            size: usize,
            depth: usize,
            prune: bool,
            visit: &F,
        ) {
            if prune && sets.iter().all(is_empty) {
                return;
            }
            visit(acc, word, &sets);
            if word.len() == depth {
                return;
            }
            let last = word.last().map(|l| l.inverse().code());
            for code in (0..size).filter(|&c| Some(c) != last) {
                let next: Vec<Bits> = sims.iter().zip(&sets).map(|(s, set)| s.step(set, code)).collect();
                word.push(Letter::from_code(code));
                rec(acc, word, next, sims, size, depth, prune, visit);
                word.pop();
            }
        }
        rec(acc, word, sets, sims, size, depth, prune, &visit)
    };
    let init: Vec<Bits> = sims.iter().map(|s| s.init.clone()).collect();
    let mut root = make();
    if !(prune && init.iter().all(is_empty)) {
        visit(&mut root, &[], &init);
    }
    if depth == 0 {
        return vec![root];
    }
    let mut out = vec![root];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..size)
            .map(|code| {
                let (make, dfs, init) = (&make, &dfs, &init);
                scope.spawn(move || {
                    let mut acc = make();
                    let sets: Vec<Bits> = sims.iter().zip(init).map(|(s, set)| s.step(set, code)).collect();
                    dfs(&mut acc, &mut vec![Letter::from_code(code)], sets);
                    acc
                })
            })
            .collect();
        out.extend(handles.into_iter().map(|h| h.join().expect("oracle worker panicked")));
    });
    out
}

/// `n_0..=n_K` and `f_k = n_k / |S_k|` of a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyPrefix {
    pub m: u32,
    pub depth: usize,
    pub counts: Vec<BigUint>,
    pub freqs: Vec<BigRational>,
}

fn ratio_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl Serialize for FrequencyPrefix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FrequencyPrefix", 4)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("depth", &self.depth)?;
        st.serialize_field("counts", &self.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>())?;
        st.serialize_field("frequencies", &self.freqs.iter().map(ratio_text).collect::<Vec<_>>())?;
        st.end()
    }
}

/// First index where a series and the enumeration disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementReport {
    pub depth: usize,
    /// `(k, series coefficient, oracle frequency)`.
    pub first_mismatch: Option<(usize, BigRational, BigRational)>,
}

impl AgreementReport {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// A set-algebra statement checked on `B_K`.
#[derive(Debug, Clone)]
pub enum Claim<'a> {
    Disjoint(Vec<&'a Automaton>),
    UnionEquals {
        whole: &'a Automaton,
        parts: Vec<&'a Automaton>,
    },
    Inclusion {
        sub: &'a Automaton,
        sup: &'a Automaton,
    },
    /// `(u, v) ↦ u ∘ v` is a bijection `L(left) × L(right) → L(product)`
    /// on `B_K`.
    CircBijection {
        left: &'a Automaton,
        right: &'a Automaton,
        product: &'a Automaton,
    },
    /// `prefix ∘ L(inner) ⊆ L(outer)` for the words of `B_K` where `∘` is
    /// defined.
    PrefixedInclusion {
        prefix: Word,
        inner: &'a Automaton,
        outer: &'a Automaton,
    },
}

impl Claim<'_> {
    fn operands(&self) -> Vec<&Automaton> {
        match self {
            Claim::Disjoint(v) => v.clone(),
            Claim::UnionEquals { whole, parts } => std::iter::once(*whole).chain(parts.iter().copied()).collect(),
            Claim::Inclusion { sub, sup } => vec![sub, sup],
            Claim::CircBijection { left, right, product } => vec![left, right, product],
            Claim::PrefixedInclusion { inner, outer, .. } => vec![inner, outer],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub holds: bool,
    /// Shortest (then lexicographically first) violating word.
    pub counterexample: Option<Word>,
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "holds"),
            Some(w) => write!(f, "fails at `{w}`"),
        }
    }
}

fn word_of(letters: &[Letter]) -> Word {
    Word::new(letters.to_vec()).expect("enumerated words are reduced")
}

fn shortlex_min(a: Option<Word>, b: Option<Word>) -> Option<Word> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (x.len(), &x) <= (y.len(), &y) { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Exhaustive enumerator with a budget on `|S_K|`.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { budget: DEFAULT_BUDGET }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Self {
        Oracle { budget }
    }

    fn check_budget(&self, m: u32, depth: usize) -> Result<(), OracleError> {
        let size = sphere_size(m, depth);
        if size > BigUint::from(self.budget) {
            return Err(OracleError::BudgetExceeded { rank: m, depth, size: size.to_string(), budget: self.budget });
        }
        Ok(())
    }

    /// Number of accepted words of each length `0..=depth`.
    pub fn counts(&self, a: &Automaton, depth: usize) -> Result<Vec<u64>, OracleError> {
        let m = a.rank();
        self.check_budget(m, depth)?;
        let sims = [Simulator::new(a)];
        let parts = walk(
            m,
            depth,
            &sims,
            true,
            || vec![0u64; depth + 1],
            |acc, w, sets| {
                if sims[0].accepting(&sets[0]) {
                    acc[w.len()] += 1;
                }
            },
        );
        Ok(parts.into_iter().fold(vec![0u64; depth + 1], |mut tot, p| {
            tot.iter_mut().zip(p).for_each(|(t, c)| *t += c);
            tot
        }))
    }

    pub fn frequencies(&self, a: &Automaton, depth: usize) -> Result<FrequencyPrefix, OracleError> {
        let m = a.rank();
        let counts: Vec<BigUint> = self.counts(a, depth)?.into_iter().map(BigUint::from).collect();
        let freqs = counts
            .iter()
            .enumerate()
            .map(|(k, n)| BigRational::new(BigInt::from(n.clone()), BigInt::from(sphere_size(m, k))))
            .collect();
        Ok(FrequencyPrefix { m, depth, counts, freqs })
    }

    /// All accepted words up to `depth`, in shortlex order.
    pub fn language(&self, a: &Automaton, depth: usize) -> Result<Vec<Word>, OracleError> {
        self.check_budget(a.rank(), depth)?;
        let sims = [Simulator::new(a)];
        let parts = walk(a.rank(), depth, &sims, true, Vec::new, |acc: &mut Vec<Word>, w, sets| {
            if sims[0].accepting(&sets[0]) {
                acc.push(word_of(w));
            }
        });
        let mut all: Vec<Word> = parts.into_iter().flatten().collect();
        all.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        Ok(all)
    }

    pub fn check(&self, claim: &Claim<'_>, depth: usize) -> Result<ClaimReport, OracleError> {
        let ops = claim.operands();
        let m = ops[0].rank();
        if let Some(o) = ops.iter().find(|o| o.rank() != m) {
            return Err(OracleError::RankMismatch(m, o.rank()));
        }
        self.check_budget(m, depth)?;
        let sims: Vec<Simulator> = ops.iter().map(|a| Simulator::new(a)).collect();
        let prune = !matches!(claim, Claim::CircBijection { .. });
        let found = walk(
            m,
            depth,
            &sims,
            prune,
            || None,
            |worst: &mut Option<Word>, w, sets| {
                let inside = |i: usize| sims[i].accepting(&sets[i]);
                let bad = match claim {
                    Claim::Disjoint(v) => (0..v.len()).filter(|&i| inside(i)).count() > 1,
                    Claim::UnionEquals { parts, .. } => inside(0) != (1..=parts.len()).any(inside),
                    Claim::Inclusion { .. } => inside(0) && !inside(1),
                    Claim::CircBijection { .. } => {
                        let mut prefix = sims[0].init.clone();
                        let mut factorizations = 0;
                        for i in 0..=w.len() {
                            if i > 0 {
                                prefix = sims[0].step(&prefix, w[i - 1].code());
                            }
                            if sims[0].accepting(&prefix) && sims[1].accepts(&w[i..]) {
                                factorizations += 1;
                            }
                        }
                        factorizations != usize::from(inside(2))
                    }
                    Claim::PrefixedInclusion { prefix, .. } => {
                        inside(0) && {
                            let v = word_of(w);
                            match prefix.circ(&v) {
                                Ok(pv) => !sims[1].accepts(pv.letters()),
                                Err(_) => false,
                            }
                        }
                    }
                };
                if bad && worst.as_ref().is_none_or(|x| (w.len(), w) < (x.len(), x.letters())) {
                    *worst = Some(word_of(w));
                }
            },
        );
        let counterexample = found.into_iter().fold(None, shortlex_min);
        Ok(ClaimReport { holds: counterexample.is_none(), counterexample })
    }
}

pub fn frequencies(a: &Automaton, depth: usize) -> Result<FrequencyPrefix, OracleError> {
    Oracle::default().frequencies(a, depth)
}

/// Compare the Taylor coefficients of `gs` with enumerated frequencies.
pub fn compare_series(gs: &FrequencySeries<BigRational>, fp: &FrequencyPrefix) -> Result<AgreementReport, OracleError> {
    if gs.rank != fp.m {
        return Err(OracleError::RankMismatch(gs.rank, fp.m));
    }
    let coeffs = gs.coefficients(fp.depth)?;
    let first_mismatch =
        coeffs.into_iter().zip(&fp.freqs).enumerate().find(|(_, (c, f))| c != *f).map(|(k, (c, f))| (k, c, f.clone()));
    Ok(AgreementReport { depth: fp.depth, first_mismatch })
}

/// Exact partial sum `Σ_{k ≤ K} f_k` of the enumerated frequencies.
pub fn partial_lambda(fp: &FrequencyPrefix) -> BigRational {
    fp.freqs.iter().fold(BigRational::zero(), |acc, f| acc + f)
}

/// Total number of enumerated words, for reporting.
pub fn total_count(fp: &FrequencyPrefix) -> u64 {
    fp.counts.iter().map(|c| c.to_u64().unwrap_or(u64::MAX)).sum()
}
