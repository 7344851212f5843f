//! Frequency generating functions, Cesaro densities and λ-measures.
//!
//! `f_k(R) = |R ∩ S_k| / |S_k|`, `g_R(t) = Σ f_k t^k`, `μ0(R) = -Res_{t=1} g_R`
//! and `λ(R) = Σ f_k`. Adjusted quantities weight a word `w` by
//! `(2m-1)^(-|w|)`, which makes them multiplicative under `∘`.

mod chain;
mod closed_form;
mod report;

use thiserror::Error;

use crate::automaton::{determinize, trim, Automaton, AutomatonError};
use crate::exactalg::{solve_fraction_free, AlgebraError, PolyMatrix, Polynomial, RationalFunction};
use crate::scalar::Scalar;

pub use chain::{lambda_algii, lambda_by_pieces, AbsorbingChain};
pub use closed_form::{published_closed_form, verify_fidelity, FidelityReport, Mismatch};
pub use report::{measure_report, ratio_text, Lambda, MeasureClass, MeasureReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("measures need rank at least 2, got {0}")]
    RankTooSmall(u32),
    #[error("the automaton accepts unreduced strings")]
    NotReducedAcceptor,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("the third-type set contains the identity")]
    IdentityInR3,
    #[error("the set is not λ-measurable (pole at t = 1)")]
    NotMeasurable,
    #[error("the set is thick: adjusted measure of the third-type set is {0}, not below 1")]
    ThickSet(String),
    #[error("the automaton is not special over the group")]
    NotSpecial,
    #[error("oracle: {0}")]
    Oracle(String),
    #[error("no closed form for family {0}")]
    UnsupportedFamily(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// `g_R(t)` together with the rank it was computed for.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySeries<T> {
    pub g: RationalFunction<T>,
    pub rank: u32,
    /// `g(0) = 1`, i.e. `1 ∈ R`.
    pub contains_identity: bool,
}

impl<T: Scalar> FrequencySeries<T> {
    pub fn new(g: RationalFunction<T>, rank: u32) -> Result<Self, MeasureError> {
        let contains_identity = g.at_zero()?.is_one();
        Ok(FrequencySeries { g, rank, contains_identity })
    }

    pub fn zero(rank: u32) -> Self {
        FrequencySeries { g: RationalFunction::zero(), rank, contains_identity: false }
    }

    /// The series of `{1}`.
    pub fn identity(rank: u32) -> Self {
        FrequencySeries { g: RationalFunction::one(), rank, contains_identity: true }
    }

    /// `f_0..=f_depth`.
    pub fn coefficients(&self, depth: usize) -> Result<Vec<T>, MeasureError> {
        Ok(self.g.series_coefficients(depth)?)
    }

    fn same_rank(&self, other: &Self) -> Result<(), MeasureError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(MeasureError::RankMismatch(self.rank, other.rank))
        }
    }
}

fn check_rank(m: u32) -> Result<(), MeasureError> {
    if m < 2 {
        Err(MeasureError::RankTooSmall(m))
    } else {
        Ok(())
    }
}

/// Path counting: with `s = t/(2m-1)` and `B = sA(E - sA)^(-1)`,
/// `g = [1 ∈ L] + (2m-1)/(2m) · Σ_{j ∈ Z} B_{i0 j}`.
///
/// The system `((2m-1)E - tA) x = (2m-1) 1_Z` is solved once over the
/// integers; then `Σ_j B_{i0 j} = (t/(2m-1)) Σ_j A_{i0 j} x_j`.
pub fn genfunc_algi<T: Scalar>(a: &Automaton) -> Result<FrequencySeries<T>, MeasureError> {
    let m = a.rank();
    check_rank(m)?;
    let det = if a.is_deterministic() { a.clone() } else { determinize(a) };
    let a = match trim(&det) {
        Ok(t) => t,
        Err(AutomatonError::EmptyLanguage) => return Ok(FrequencySeries::zero(m)),
        Err(e) => return Err(e.into()),
    };
    if !accepts_only_reduced(&a) {
        return Err(MeasureError::NotReducedAcceptor);
    }
    let n = a.n_states();
    let i0 = a.initial().expect("deterministic");
    let q = T::from_int(2 * m as i64 - 1);
    let mut counts = vec![vec![0i64; n]; n];
    for ar in a.arrows() {
        counts[ar.from][ar.to] += 1;
    }
    let matrix: PolyMatrix<T> = PolyMatrix::from_fn(n, n, |i, j| {
        let diag = if i == j { q.clone() } else { T::zero() };
        Polynomial::new(vec![diag, T::from_int(-counts[i][j])])
    });
    let rhs: Vec<Polynomial<T>> =
        (0..n).map(|j| if a.is_final(j) { Polynomial::constant(q.clone()) } else { Polynomial::zero() }).collect();
    let sol = solve_fraction_free(&matrix, &rhs)?;
    let mut sum = Polynomial::zero();
    for (j, &c) in counts[i0].iter().enumerate() {
        if c != 0 {
            sum = &sum + &sol.numerators[j].scale(&T::from_int(c));
        }
    }
    let num = sum.shift(1);
    let den = sol.denominator.scale(&T::from_int(2 * m as i64));
    let mut g = RationalFunction::new(num, den)?;
    if a.is_final(i0) {
        g = &g + &RationalFunction::one();
    }
    FrequencySeries::new(g, m)
}

/// In a trim deterministic automaton an unreduced string is accepted iff
/// some state is entered by `x` and left by `x⁻¹`.
fn accepts_only_reduced(a: &Automaton) -> bool {
    let n = a.n_states();
    let mut ins = vec![Vec::new(); n];
    for ar in a.arrows() {
        if let Some(l) = ar.label {
            ins[ar.to].push(l);
        }
    }
    a.arrows().iter().all(|ar| match ar.label {
        Some(l) => !ins[ar.from].contains(&l.inverse()),
        None => true,
    })
}

/// `g*(t) = (2m/(2m-1)) (g(t) - g(0)) + g(0)`.
pub fn adjusted<T: Scalar>(gs: &FrequencySeries<T>) -> RationalFunction<T> {
    let m = gs.rank as i64;
    let g0 = if gs.contains_identity { RationalFunction::one() } else { RationalFunction::zero() };
    let factor = T::from_ratio(2 * m, 2 * m - 1);
    &(&gs.g - &g0).scale(&factor) + &g0
}

/// `g_{R1 ∪ R2} = g_{R1} + g_{R2} - g_{R1 ∩ R2}`.
pub fn compose_union<T: Scalar>(
    g1: &FrequencySeries<T>,
    g2: &FrequencySeries<T>,
    g12: &FrequencySeries<T>,
) -> Result<FrequencySeries<T>, MeasureError> {
    g1.same_rank(g2)?;
    g1.same_rank(g12)?;
    FrequencySeries::new(&(&g1.g + &g2.g) - &g12.g, g1.rank)
}

/// `g_{R1 ∘ R2} = g_{R1} · g*_{R2}` for an unambiguous product.
pub fn compose_circ<T: Scalar>(
    g1: &FrequencySeries<T>,
    g2: &FrequencySeries<T>,
) -> Result<FrequencySeries<T>, MeasureError> {
    g1.same_rank(g2)?;
    FrequencySeries::new(&g1.g * &adjusted(g2), g1.rank)
}

/// The monoid `R2 = 1 ⊔ R3 ⊔ R3∘R3 ⊔ ...`: `g2 = 1 + g3 / (1 - g3*)`.
pub fn star_second_type<T: Scalar>(g3: &FrequencySeries<T>) -> Result<FrequencySeries<T>, MeasureError> {
    if !g3.g.at_zero()?.is_zero() {
        return Err(MeasureError::IdentityInR3);
    }
    let denom = &RationalFunction::one() - &adjusted(g3);
    let g = &RationalFunction::one() + &g3.g.checked_div(&denom)?;
    FrequencySeries::new(g, g3.rank)
}

/// `μ0 = -Res_{t=1} g`.
pub fn cesaro_mu0<T: Scalar>(gs: &FrequencySeries<T>) -> Result<T, MeasureError> {
    Ok(-gs.g.residue_at_one()?)
}

/// `λ = g(1)` for a set without a pole at 1.
pub fn lambda_eval<T: Scalar>(gs: &FrequencySeries<T>) -> Result<T, MeasureError> {
    if gs.g.pole_order_at_one() > 0 {
        return Err(MeasureError::NotMeasurable);
    }
    Ok(gs.g.evaluate(&T::one())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{make_family, FamilySpec};
    use crate::freegroup::Letter;
    use crate::{RatFunc, Rational};

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn series(s: &str) -> FrequencySeries<Rational> {
        FrequencySeries::new(rf(s), 2).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn genfunc_on_families() {
        let full = make_family(&FamilySpec::Full, 2).unwrap();
        assert_eq!(genfunc_algi::<Rational>(&full).unwrap().g, rf("1 / (1 - t)"));
        let cone = make_family(&FamilySpec::Cone("x1 x2".parse().unwrap()), 2).unwrap();
        assert_eq!(genfunc_algi::<Rational>(&cone).unwrap().g, rf("t^2 / (12 - 12*t)"));
        let even = make_family(&FamilySpec::EvenSubgroup, 3).unwrap();
        assert_eq!(genfunc_algi::<Rational>(&even).unwrap().g, rf("1 / (1 - t^2)"));
    }

    #[test]
    fn genfunc_generic_scalars() {
        let cone = make_family(&FamilySpec::Cone("x1".parse().unwrap()), 2).unwrap();
        let g = genfunc_algi::<f64>(&cone).unwrap();
        let c = g.coefficients(3).unwrap();
        assert!((c[2] - 0.25).abs() < 1e-12);
        let g = genfunc_algi::<num_rational::Rational64>(&cone).unwrap();
        assert_eq!(g.coefficients(2).unwrap()[1], num_rational::Rational64::new(1, 4));
    }

    #[test]
    fn genfunc_rejects() {
        let full = make_family(&FamilySpec::Full, 1).unwrap();
        assert_eq!(genfunc_algi::<Rational>(&full), Err(MeasureError::RankTooSmall(1)));
        let x = Letter::gen(1);
        let raw = Automaton::with_states(2, 3, [(0, Some(x), 1), (1, Some(x.inverse()), 2)], [0], [2]).unwrap();
        assert_eq!(genfunc_algi::<Rational>(&raw), Err(MeasureError::NotReducedAcceptor));
        let empty = Automaton::with_states(2, 2, [(0, Some(x), 1)], [0], []).unwrap();
        assert!(genfunc_algi::<Rational>(&empty).unwrap().g.is_zero());
    }

    #[test]
    fn adjusted_series() {
        assert_eq!(adjusted(&series("t^2 / (12 - 12*t)")), rf("t^2 / (9 - 9*t)"));
        assert_eq!(adjusted(&series("1")), rf("1"));
    }

    #[test]
    fn composition_laws() {
        let x = series("t / 4");
        assert_eq!(compose_union(&x, &x, &FrequencySeries::zero(2)).unwrap().g, rf("t / 2"));
        assert_eq!(compose_union(&x, &x, &x).unwrap().g, x.g);
        let c1 = series("t / (4 - 4*t)");
        assert_eq!(compose_union(&c1, &c1, &FrequencySeries::zero(2)).unwrap().g, rf("t / (2 - 2*t)"));
        assert_eq!(compose_circ(&x, &x).unwrap().g, rf("t^2 / 12"));
        assert_eq!(compose_circ(&x, &FrequencySeries::identity(2)).unwrap().g, x.g);
        let r1 = series("t^2 / 6");
        let r2 = star_second_type(&r1).unwrap();
        assert_eq!(compose_circ(&r1, &r2).unwrap().g, rf("3*t^2 / (18 - 4*t^2)"));
        let other = FrequencySeries::new(rf("t / 6"), 3).unwrap();
        assert_eq!(compose_circ(&x, &other), Err(MeasureError::RankMismatch(2, 3)));
    }

    #[test]
    fn second_type_star() {
        let g2 = star_second_type(&series("t^2 / 6")).unwrap();
        assert_eq!(g2.g, &rf("1") + &rf("3*t^2 / (18 - 4*t^2)"));
        assert_eq!(star_second_type(&FrequencySeries::zero(2)).unwrap().g, rf("1"));
        let g2 = star_second_type(&series("t / 4")).unwrap();
        assert_eq!(g2.g, &rf("1") + &rf("3*t / (12 - 4*t)"));
        assert_eq!(star_second_type(&series("1 + t")), Err(MeasureError::IdentityInR3));
    }

    #[test]
    fn densities_and_lambda() {
        assert_eq!(cesaro_mu0(&series("1 / (1 - t)")).unwrap(), q(1, 1));
        assert_eq!(cesaro_mu0(&series("3*t^2 / (18 - 4*t^2)")).unwrap(), q(0, 1));
        assert_eq!(lambda_eval(&series("3*t^2 / (18 - 4*t^2)")).unwrap(), q(3, 14));
        assert_eq!(lambda_eval(&series("t^2 / 12")).unwrap(), q(1, 12));
        assert_eq!(lambda_eval(&series("1 / (1 - t)")), Err(MeasureError::NotMeasurable));
        assert!(matches!(cesaro_mu0(&series("1 / (1 - 2*t + t^2)")), Err(MeasureError::Algebra(_))));
    }
}
