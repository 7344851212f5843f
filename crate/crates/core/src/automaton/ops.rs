use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{Arrow, Automaton, AutomatonError};
use crate::exactalg::Matrix;
use crate::freegroup::{Letter, Word};

fn eps_closure(idx: &[Vec<(Option<Letter>, usize)>], seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::new();
    let mut stack: Vec<usize> = Vec::new();
    for s in seeds {
        if set.insert(s) {
            stack.push(s);
        }
    }
    while let Some(s) = stack.pop() {
        for &(l, t) in &idx[s] {
            if l.is_none() && set.insert(t) {
                stack.push(t);
            }
        }
    }
    set
}

fn step_set(idx: &[Vec<(Option<Letter>, usize)>], from: &BTreeSet<usize>, l: Letter) -> BTreeSet<usize> {
    let moved = from.iter().flat_map(|&s| idx[s].iter().filter(|(m, _)| *m == Some(l)).map(|&(_, t)| t));
    eps_closure(idx, moved)
}

/// True iff some path from an initial to a final state spells `w`.
pub fn accepts(a: &Automaton, w: &Word) -> bool {
    let idx = a.out_index();
    let mut cur = eps_closure(&idx, a.initial_states().iter().copied());
    for &l in w.letters() {
        if cur.is_empty() {
            return false;
        }
        cur = step_set(&idx, &cur, l);
    }
    cur.iter().any(|&s| a.is_final(s))
}

/// Subset construction. Empty subsets are dropped, so the result is
/// partial-deterministic. When the initial subset would receive arrows, it
/// is cloned into a fresh initial state without inedges.
pub fn determinize(a: &Automaton) -> Automaton {
    let idx = a.out_index();
    let start = eps_closure(&idx, a.initial_states().iter().copied());
    let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut queue = VecDeque::new();
    ids.insert(start.clone(), 0);
    subsets.push(start);
    queue.push_back(0);
    while let Some(cur) = queue.pop_front() {
        for l in a.alphabet().letters() {
            let next = step_set(&idx, &subsets[cur], l);
            if next.is_empty() {
                continue;
            }
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = subsets.len();
                    ids.insert(next.clone(), id);
                    subsets.push(next);
                    queue.push_back(id);
                    id
                }
            };
            arrows.push(Arrow { from: cur, label: Some(l), to: id });
        }
    }
    let subset_name = |s: &BTreeSet<usize>| {
        let parts: Vec<&str> = s.iter().map(|&q| a.names()[q].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    };
    let mut names: Vec<String> = subsets.iter().map(subset_name).collect();
    let mut finals: Vec<usize> =
        subsets.iter().enumerate().filter(|(_, s)| s.iter().any(|&q| a.is_final(q))).map(|(i, _)| i).collect();
    let mut initial = 0;
    if arrows.iter().any(|ar| ar.to == 0) {
        let clone = names.len();
        names.push(format!("{}#init", names[0]));
        let copies: Vec<Arrow> =
            arrows.iter().filter(|ar| ar.from == 0).map(|ar| Arrow { from: clone, ..*ar }).collect();
        arrows.extend(copies);
        if finals.first() == Some(&0) {
            finals.push(clone);
        }
        initial = clone;
    }
    Automaton::from_parts(a.alphabet(), names, arrows, [initial], finals).expect("subset construction is well formed")
}

/// Remove states that are unreachable from an initial state or cannot reach
/// a final state.
pub fn trim(a: &Automaton) -> Result<Automaton, AutomatonError> {
    let n = a.n_states();
    let mut fwd = vec![false; n];
    let mut stack: Vec<usize> = a.initial_states().to_vec();
    for &s in &stack {
        fwd[s] = true;
    }
    let out = a.out_index();
    while let Some(s) = stack.pop() {
        for &(_, t) in &out[s] {
            if !fwd[t] {
                fwd[t] = true;
                stack.push(t);
            }
        }
    }
    let mut back = vec![false; n];
    let mut preds = vec![Vec::new(); n];
    for ar in a.arrows() {
        preds[ar.to].push(ar.from);
    }
    let mut stack: Vec<usize> = a.final_states().to_vec();
    for &s in &stack {
        back[s] = true;
    }
    while let Some(s) = stack.pop() {
        for &p in &preds[s] {
            if !back[p] {
                back[p] = true;
                stack.push(p);
            }
        }
    }
    let keep: Vec<bool> = (0..n).map(|s| fwd[s] && back[s]).collect();
    a.restrict(&keep).ok_or(AutomatonError::EmptyLanguage)
}

/// Intersect with the canonical acceptor of reduced words (start state plus
/// one state per "last letter read"). No accepting path of the result spells
/// a cancelling pair.
pub fn reduced_normalize(a: &Automaton) -> Automaton {
    let idx = a.out_index();
    let mut ids: HashMap<(usize, Option<Letter>), usize> = HashMap::new();
    let mut pairs: Vec<(usize, Option<Letter>)> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |p: (usize, Option<Letter>), pairs: &mut Vec<_>, queue: &mut VecDeque<usize>| {
        *ids.entry(p).or_insert_with(|| {
            pairs.push(p);
            queue.push_back(pairs.len() - 1);
            pairs.len() - 1
        })
    };
    let initial: Vec<usize> = a.initial_states().iter().map(|&i| intern((i, None), &mut pairs, &mut queue)).collect();
    let mut arrows = Vec::new();
    while let Some(cur) = queue.pop_front() {
        let (q, last) = pairs[cur];
        for &(l, t) in &idx[q] {
            let next = match l {
                None => (t, last),
                Some(x) if last == Some(x.inverse()) => continue,
                Some(x) => (t, Some(x)),
            };
            let id = intern(next, &mut pairs, &mut queue);
            arrows.push(Arrow { from: cur, label: l, to: id });
        }
    }
    let names = pairs
        .iter()
        .map(|(q, last)| match last {
            None => format!("{}|^", a.names()[*q]),
            Some(l) => format!("{}|{l}", a.names()[*q]),
        })
        .collect();
    let finals: Vec<usize> = pairs.iter().enumerate().filter(|(_, (q, _))| a.is_final(*q)).map(|(i, _)| i).collect();
    Automaton::from_parts(a.alphabet(), names, arrows, initial, finals).expect("product is well formed")
}

/// `trim(determinize(reduced_normalize(a)))`: a trim deterministic acceptor
/// of the reduced words in `L(a)` whose initial state has no inedges.
pub fn prepare(a: &Automaton) -> Result<Automaton, AutomatonError> {
    trim(&determinize(&reduced_normalize(a)))
}

/// Split every non-initial state whose incoming arrows carry several labels
/// into one copy per label. Copies replicate all outgoing arrows.
pub fn split_by_incoming_label(a: &Automaton) -> Result<Automaton, AutomatonError> {
    if a.has_epsilon() {
        return Err(AutomatonError::EpsilonArrowsPresent);
    }
    let n = a.n_states();
    let mut in_labels: Vec<BTreeSet<Letter>> = vec![BTreeSet::new(); n];
    for ar in a.arrows() {
        in_labels[ar.to].insert(ar.label.expect("no ε"));
    }
    let is_initial = |s: usize| a.initial_states().contains(&s);
    let mut names = Vec::new();
    let mut copies: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut copy_for: Vec<BTreeMap<Letter, usize>> = vec![BTreeMap::new(); n];
    for s in 0..n {
        if is_initial(s) || in_labels[s].len() <= 1 {
            copies[s].push(names.len());
            names.push(a.names()[s].clone());
        } else {
            for &l in &in_labels[s] {
                copy_for[s].insert(l, names.len());
                copies[s].push(names.len());
                names.push(format!("{}/{l}", a.names()[s]));
            }
        }
    }
    let target = |s: usize, l: Letter| copy_for[s].get(&l).copied().unwrap_or(copies[s][0]);
    let mut arrows = Vec::new();
    for ar in a.arrows() {
        let l = ar.label.expect("no ε");
        let to = target(ar.to, l);
        for &from in &copies[ar.from] {
            arrows.push(Arrow { from, label: ar.label, to });
        }
    }
    arrows.sort();
    let initial: Vec<usize> = a.initial_states().iter().map(|&s| copies[s][0]).collect();
    let finals: Vec<usize> = a.final_states().iter().flat_map(|&s| copies[s].clone()).collect();
    Automaton::from_parts(a.alphabet(), names, arrows, initial, finals)
}

/// String concatenation: ε-arrows from the finals of `a` to the initial
/// states of `b`. On reduced words this accepts `L(a) ∘ L(b)`.
pub fn concat(a: &Automaton, b: &Automaton) -> Result<Automaton, AutomatonError> {
    if a.rank() != b.rank() {
        return Err(AutomatonError::Malformed(format!("rank {} vs {}", a.rank(), b.rank())));
    }
    let off = a.n_states();
    let mut names: Vec<String> = a.names().iter().map(|n| format!("L.{n}")).collect();
    names.extend(b.names().iter().map(|n| format!("R.{n}")));
    let mut arrows: Vec<Arrow> = a.arrows().to_vec();
    arrows.extend(b.arrows().iter().map(|ar| Arrow { from: ar.from + off, label: ar.label, to: ar.to + off }));
    for &z in a.final_states() {
        for &i in b.initial_states() {
            arrows.push(Arrow { from: z, label: None, to: i + off });
        }
    }
    let finals: Vec<usize> = b.final_states().iter().map(|&z| z + off).collect();
    Automaton::from_parts(a.alphabet(), names, arrows, a.initial_states().to_vec(), finals)
}

/// A fresh initial state with ε-arrows to the initial states of both.
pub fn union(a: &Automaton, b: &Automaton) -> Result<Automaton, AutomatonError> {
    if a.rank() != b.rank() {
        return Err(AutomatonError::Malformed(format!("rank {} vs {}", a.rank(), b.rank())));
    }
    let off = a.n_states() + 1;
    let mut names = vec!["start".to_string()];
    names.extend(a.names().iter().map(|n| format!("L.{n}")));
    names.extend(b.names().iter().map(|n| format!("R.{n}")));
    let mut arrows: Vec<Arrow> =
        a.arrows().iter().map(|ar| Arrow { from: ar.from + 1, label: ar.label, to: ar.to + 1 }).collect();
    arrows.extend(b.arrows().iter().map(|ar| Arrow { from: ar.from + off, label: ar.label, to: ar.to + off }));
    arrows.extend(a.initial_states().iter().map(|&i| Arrow { from: 0, label: None, to: i + 1 }));
    arrows.extend(b.initial_states().iter().map(|&i| Arrow { from: 0, label: None, to: i + off }));
    let finals = a.final_states().iter().map(|&z| z + 1).chain(b.final_states().iter().map(|&z| z + off));
    Automaton::from_parts(a.alphabet(), names, arrows, [0], finals)
}

/// `entry (i, j)` = number of arrows `i -> j`.
pub fn adjacency_matrix(a: &Automaton) -> Result<Matrix<u64>, AutomatonError> {
    if a.has_epsilon() {
        return Err(AutomatonError::EpsilonArrowsPresent);
    }
    let n = a.n_states();
    let mut m = Matrix::from_fn(n, n, |_, _| 0u64);
    for ar in a.arrows() {
        let v = *m.get(ar.from, ar.to) + 1;
        m.set(ar.from, ar.to, v);
    }
    Ok(m)
}
