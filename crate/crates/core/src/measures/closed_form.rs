//! The published closed forms of the standard families, kept separate from
//! ground truth so that they can be checked against it.

use std::fmt;

use super::{cesaro_mu0, genfunc_algi, FrequencySeries, MeasureError};
use crate::automaton::{make_family, FamilySpec};
use crate::exactalg::{Polynomial, RationalFunction};
use crate::scalar::Scalar;

fn int<T: Scalar>(v: i64) -> T {
    T::from_int(v)
}

/// `c t^k / d(t)` with `d` given by integer coefficients.
fn term<T: Scalar>(c: T, k: usize, den: &[i64]) -> RationalFunction<T> {
    RationalFunction::new(Polynomial::monomial(c, k), Polynomial::from_ints(den)).expect("nonzero denominator")
}

/// The closed form as published, without any correction.
///
/// Double cones `C(u0 ∘ a, b ∘ v0)` use the handle-letter formula for
/// `C(a, b)` times `(t/(2m-1))^(|u0|+|v0|)`.
pub fn published_closed_form<T: Scalar>(family: &FamilySpec, m: u32) -> Result<RationalFunction<T>, MeasureError> {
    if m < 2 {
        return Err(MeasureError::RankTooSmall(m));
    }
    let c = 2 * m as i64;
    let q = c - 1;
    let one_minus_t = [1, -1];
    let f = match family {
        FamilySpec::Full => term(int(1), 0, &one_minus_t),
        FamilySpec::FullNontrivial => term(int(1), 1, &one_minus_t),
        FamilySpec::Cone(w) | FamilySpec::RightCone(w) if !w.is_empty() => {
            let r = w.len();
            let mut den = T::from_int(c);
            for _ in 1..r {
                den = den * T::from_int(q);
            }
            term(T::one() / den, r, &one_minus_t)
        }
        FamilySpec::BallComplement(r) => term(int(1), *r, &one_minus_t),
        FamilySpec::EvenSubgroup => term(int(1), 0, &[1, 0, -1]),
        FamilySpec::DoubleCone(u, v) if !u.is_empty() && !v.is_empty() => {
            let a = u.last().expect("nonempty");
            let b = v.first().expect("nonempty");
            let base = if b == a.inverse() {
                &(&term(T::from_ratio(1, c * c), 2, &one_minus_t) - &term(T::from_ratio(1, c * c), 2, &[1]))
                    - &term(T::from_ratio(1, c), 3, &[q, -1])
            } else {
                &(&term(T::from_ratio(1, c * c), 2, &one_minus_t) + &term(T::from_ratio(1, c * c * q), 2, &[1]))
                    + &term(T::from_ratio(1, c * q), 3, &[q, -1])
            };
            let shift = (u.len() - 1 + v.len() - 1) as u32;
            &base * &term(T::one(), 1, &[q]).pow(shift)
        }
        FamilySpec::ThickMonoidM(_) => {
            let parts = [
                term(T::from_ratio(q, c * c), 2, &one_minus_t),
                term(int(1), 0, &[1]),
                term(T::from_ratio(1, c), 1, &[1]),
                term(T::from_ratio(1, c * c), 2, &[1]),
                term(T::from_ratio(1, c), 3, &[q, -1]),
            ];
            parts.iter().fold(RationalFunction::zero(), |acc, p| &acc + p)
        }
        other => return Err(MeasureError::UnsupportedFamily(other.to_string())),
    };
    Ok(f)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch<T> {
    pub k: usize,
    pub truth: T,
    pub closed_form: T,
}

/// Coefficient-by-coefficient comparison of a closed form with the
/// generating function computed from the family's automaton.
#[derive(Debug, Clone, PartialEq)]
pub struct FidelityReport<T> {
    pub family: String,
    pub m: u32,
    pub depth: usize,
    pub first_mismatch: Option<Mismatch<T>>,
    pub mu0_truth: T,
    pub mu0_closed_form: T,
}

impl<T: Scalar> FidelityReport<T> {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none() && self.mu0_truth == self.mu0_closed_form
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for FidelityReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (m={}): ", self.family, self.m)?;
        match &self.first_mismatch {
            Some(mm) => {
                write!(f, "first mismatch at k={}: ground truth {}, closed form {}", mm.k, mm.truth, mm.closed_form)?
            }
            None => write!(f, "coefficients agree to k={}", self.depth)?,
        }
        let verdict = if self.mu0_truth == self.mu0_closed_form { "agrees" } else { "differs" };
        write!(f, "; mu0 {verdict}: ground truth {}, closed form {}", self.mu0_truth, self.mu0_closed_form)
    }
}

pub fn verify_fidelity<T: Scalar>(
    family: &FamilySpec,
    m: u32,
    depth: usize,
) -> Result<FidelityReport<T>, MeasureError> {
    let published = FrequencySeries { g: published_closed_form::<T>(family, m)?, rank: m, contains_identity: false };
    let truth = genfunc_algi::<T>(&make_family(family, m)?)?;
    let tc = truth.coefficients(depth)?;
    let pc = published.coefficients(depth)?;
    let first_mismatch = tc
        .into_iter()
        .zip(pc)
        .enumerate()
        .find(|(_, (a, b))| a != b)
        .map(|(k, (truth, closed_form))| Mismatch { k, truth, closed_form });
    Ok(FidelityReport {
        family: family.to_string(),
        m,
        depth,
        first_mismatch,
        mu0_truth: cesaro_mu0(&truth)?,
        mu0_closed_form: cesaro_mu0(&published)?,
    })
}
