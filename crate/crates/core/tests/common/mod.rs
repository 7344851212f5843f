//! Shared fixtures: the worked example and a seeded corpus of small random
//! acceptors.
#![allow(dead_code)]

use fg_core::automaton::{prepare, Automaton};
use fg_core::freegroup::{Alphabet, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_f00d;
pub const CORPUS_SIZE: usize = 24;

/// `i -x1-> p, i -X1-> q, p -x2-> z, q -x2-> z, z -x1-> p, z -X1-> q`,
/// final `z`; accepts `(x1 x2 | X1 x2)^+`.
pub fn worked_example() -> Automaton {
    let (x, big_x, y) = (Letter::gen(1), Letter::inv(1), Letter::gen(2));
    Automaton::with_states(
        2,
        4,
        [(0, Some(x), 1), (0, Some(big_x), 2), (1, Some(y), 3), (2, Some(y), 3), (3, Some(x), 1), (3, Some(big_x), 2)],
        [0],
        [3],
    )
    .unwrap()
}

/// A raw acceptor with at most 6 states over rank 2: random labelled
/// arrows (some nondeterministic, a few ε), random finals. Some draws get
/// a state looping on every letter, so that thick sets occur.
pub fn random_automaton(rng: &mut impl Rng) -> Automaton {
    let alphabet = Alphabet::new(2).unwrap();
    let n = rng.gen_range(2..=6);
    let mut arrows = Vec::new();
    for s in 0..n {
        for l in alphabet.letters() {
            if rng.gen_bool(0.45) {
                arrows.push((s, Some(l), rng.gen_range(0..n)));
                if rng.gen_bool(0.1) {
                    arrows.push((s, Some(l), rng.gen_range(0..n)));
                }
            }
        }
        if rng.gen_bool(0.05) {
            arrows.push((s, None, rng.gen_range(0..n)));
        }
    }
    if rng.gen_bool(0.25) {
        let hub = rng.gen_range(1..n);
        arrows.extend(alphabet.letters().map(|l| (hub, Some(l), hub)));
    }
    let mut finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    if finals.is_empty() {
        finals.push(rng.gen_range(0..n));
    }
    Automaton::with_states(2, n, arrows, [0], finals).unwrap()
}

/// `CORPUS_SIZE` raw acceptors with nonempty languages, from a fixed seed.
pub fn corpus() -> Vec<Automaton> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    while out.len() < CORPUS_SIZE {
        let a = random_automaton(&mut rng);
        if prepare(&a).is_ok() {
            out.push(a);
        }
    }
    out
}
