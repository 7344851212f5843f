//! λ-measure of a special automaton via absorbing Markov chains.

use super::MeasureError;
use crate::automaton::{check_speciality, Automaton, AutomatonError, SpecialKind};
use crate::decompose::{decompose, split_saturated, DecomposeError, PieceKind};
use crate::exactalg::{solve_scalar, Matrix};
use crate::scalar::Scalar;

/// States of the automaton plus a dead state `D` (index `n`). The start
/// row gives each arrow weight `1/(2m)`, every other row `1/(2m-1)`;
/// missing labels go to `D`. The target and `D` are absorbing.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorbingChain<T> {
    pub start: usize,
    pub target: usize,
    pub dead: usize,
    /// `rows[s]` lists `(successor, probability)`; empty for absorbing states.
    pub rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> AbsorbingChain<T> {
    /// Chain of a special automaton whose final state has no outgoing arrows.
    pub fn from_special(a: &Automaton) -> Result<Self, MeasureError> {
        if check_speciality(a).kind != SpecialKind::SpecialOverGroup {
            return Err(MeasureError::NotSpecial);
        }
        let target = a.final_states()[0];
        if a.out_arrows(target).next().is_some() {
            return Err(MeasureError::NotSpecial);
        }
        let start = a.initial().expect("special automata have one initial state");
        let n = a.n_states();
        let two_m = a.alphabet().size() as i64;
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n + 1];
        for (s, row) in rows.iter_mut().enumerate().take(n) {
            if s == target {
                continue;
            }
            let slots = if s == start { two_m } else { two_m - 1 };
            let outs: Vec<usize> = a.out_arrows(s).map(|ar| ar.to).collect();
            row.extend(outs.iter().map(|&t| (t, T::from_ratio(1, slots))));
            let missing = slots - outs.len() as i64;
            if missing > 0 {
                row.push((n, T::from_ratio(missing, slots)));
            }
        }
        Ok(AbsorbingChain { start, target, dead: n, rows })
    }

    /// Probability of absorption in the target from the start state.
    pub fn absorption_probability(&self) -> Result<T, MeasureError> {
        if self.start == self.target {
            return Ok(T::one());
        }
        let transient: Vec<usize> = (0..self.rows.len()).filter(|&s| s != self.target && s != self.dead).collect();
        let pos = |s: usize| transient.iter().position(|&x| x == s);
        let k = transient.len();
        let mut m = Matrix::from_fn(k, k, |i, j| if i == j { T::one() } else { T::zero() });
        let mut r = vec![T::zero(); k];
        for (i, &s) in transient.iter().enumerate() {
            for (t, p) in &self.rows[s] {
                if *t == self.target {
                    r[i] = r[i].clone() + p.clone();
                } else if let Some(j) = pos(*t) {
                    let v = m.get(i, j).clone() - p.clone();
                    m.set(i, j, v);
                }
            }
        }
        let h = solve_scalar(&m, &r)?;
        Ok(h[pos(self.start).expect("start is transient")].clone())
    }
}

fn from_decompose(e: DecomposeError) -> MeasureError {
    match e {
        DecomposeError::NotSpecial(_) | DecomposeError::KindMismatch { .. } => MeasureError::NotSpecial,
        DecomposeError::EmptyLanguage => MeasureError::Automaton(AutomatonError::EmptyLanguage),
        DecomposeError::Automaton(e) => MeasureError::Automaton(e),
        DecomposeError::Measure(e) => e,
        other => MeasureError::Automaton(AutomatonError::Malformed(other.to_string())),
    }
}

/// `λ(R) = λ(R1) · λ*(R2)` with `λ*(R2) = 1 / (1 - λ*(R3))`, each
/// λ an absorption probability.
pub fn lambda_algii<T: Scalar>(a: &Automaton) -> Result<T, MeasureError> {
    let m = a.rank();
    if m < 2 {
        return Err(MeasureError::RankTooSmall(m));
    }
    let split = split_saturated(a).map_err(from_decompose)?;
    let lambda1 = AbsorbingChain::<T>::from_special(&split.a1)?.absorption_probability()?;
    let Some(a3) = &split.a3 else { return Ok(lambda1) };
    let lambda3 = AbsorbingChain::<T>::from_special(a3)?.absorption_probability()?;
    let star3 = lambda3 * T::from_ratio(2 * m as i64, 2 * m as i64 - 1);
    if star3 >= T::one() || (!T::EXACT && (T::one() - star3.clone()).is_negligible()) {
        return Err(MeasureError::ThickSet(format!("{:?}", star3)));
    }
    let star2 = T::one() / (T::one() - star3);
    Ok(lambda1 * star2)
}

/// λ of an arbitrary regular set: the chain method summed over the pieces of
/// its decomposition (`{1}` contributes 1).
pub fn lambda_by_pieces<T: Scalar>(a: &Automaton) -> Result<T, MeasureError> {
    let d = match decompose(a) {
        Ok(d) => d,
        Err(DecomposeError::EmptyLanguage) => return Ok(T::zero()),
        Err(e) => return Err(from_decompose(e)),
    };
    let mut total = T::zero();
    for piece in &d.pieces {
        total = total
            + match piece.kind {
                PieceKind::TrivialIdentity => T::one(),
                _ => lambda_algii(&piece.automaton)?,
            };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{make_family, FamilySpec};
    use crate::freegroup::Letter;
    use crate::Rational;

    fn example() -> Automaton {
        let (x, big_x, y) = (Letter::gen(1), Letter::inv(1), Letter::gen(2));
        Automaton::with_states(
            2,
            4,
            [
                (0, Some(x), 1),
                (0, Some(big_x), 2),
                (1, Some(y), 3),
                (2, Some(y), 3),
                (3, Some(x), 1),
                (3, Some(big_x), 2),
            ],
            [0],
            [3],
        )
        .unwrap()
    }

    #[test]
    fn example_chain_values() {
        let split = split_saturated(&example()).unwrap();
        let l1: Rational = AbsorbingChain::from_special(&split.a1).unwrap().absorption_probability().unwrap();
        assert_eq!(l1, Rational::from_ratio(1, 6));
        let l3: Rational =
            AbsorbingChain::from_special(split.a3.as_ref().unwrap()).unwrap().absorption_probability().unwrap();
        assert_eq!(l3 * Rational::from_ratio(4, 3), Rational::from_ratio(2, 9));
        assert_eq!(lambda_algii::<Rational>(&example()).unwrap(), Rational::from_ratio(3, 14));
        let approx: f64 = lambda_algii(&example()).unwrap();
        assert!((approx - 3.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn chain_rows_are_stochastic() {
        let chain = AbsorbingChain::<Rational>::from_special(&split_saturated(&example()).unwrap().a1).unwrap();
        for (s, row) in chain.rows.iter().enumerate() {
            if s != chain.target && s != chain.dead {
                let total = row.iter().fold(Rational::from_int(0), |acc, (_, p)| acc + p);
                assert_eq!(total, Rational::from_int(1));
            }
        }
    }

    #[test]
    fn singleton_and_thick() {
        let x1 = make_family(&FamilySpec::Singleton("x1".parse().unwrap()), 2).unwrap();
        assert_eq!(lambda_algii::<Rational>(&x1).unwrap(), Rational::from_ratio(1, 4));
        let cone = make_family(&FamilySpec::DoubleCone("x1".parse().unwrap(), "x2".parse().unwrap()), 2).unwrap();
        let piece = &decompose(&cone).unwrap().pieces[0].automaton;
        assert!(matches!(lambda_algii::<Rational>(piece), Err(MeasureError::ThickSet(_))));
        let full = make_family(&FamilySpec::Full, 2).unwrap();
        assert_eq!(lambda_algii::<Rational>(&full), Err(MeasureError::NotSpecial));
    }

    #[test]
    fn lambda_over_pieces() {
        let x1 = make_family(&FamilySpec::Singleton("x1".parse().unwrap()), 2).unwrap();
        let x2 = make_family(&FamilySpec::Singleton("x2 x1".parse().unwrap()), 2).unwrap();
        let union = crate::automaton::union(&x1, &x2).unwrap();
        assert_eq!(
            lambda_by_pieces::<Rational>(&union).unwrap(),
            Rational::from_ratio(1, 4) + Rational::from_ratio(1, 12)
        );
        let full = make_family(&FamilySpec::Full, 2).unwrap();
        assert!(matches!(lambda_by_pieces::<Rational>(&full), Err(MeasureError::ThickSet(_))));
    }
}
