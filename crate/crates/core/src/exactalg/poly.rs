//! Dense univariate polynomials in `t` over a [`Scalar`] field.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Coefficients stored in ascending degree; the highest stored coefficient
/// is never zero, so the zero polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_negligible()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^degree`
    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Index and value of the lowest-degree nonzero coefficient.
    pub fn lowest(&self) -> Option<(usize, &T)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_negligible())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_negligible() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Euclidean division over the coefficient field.
    ///
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if c.is_negligible() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            rem[i + dd] = T::zero();
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Division known to leave no remainder (checked in debug builds for
    /// exact scalars).
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(!T::EXACT || r.is_zero(), "inexact polynomial division");
        q
    }

    /// Scale so the highest coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = T::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Multiplicity of the root `t = 1`, together with the cofactor.
    pub fn split_root_one(&self) -> (usize, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        let linear = Self::new(vec![-T::one(), T::one()]);
        let mut p = self.clone();
        let mut k = 0;
        while p.eval(&T::one()).is_negligible() && !p.is_zero() {
            p = p.div_rem(&linear).0;
            k += 1;
        }
        (k, p)
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $m(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Polynomial<BigRational>;

    #[test]
    fn trims_and_degrees() {
        let p = P::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(P::from_ints(&[0, 0]).is_zero());
        assert_eq!(P::t().shift(2), P::monomial(BigRational::from_int(1), 3));
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = &P::from_ints(&[-1, 1]) * &P::from_ints(&[2, 1]);
        let b = &P::from_ints(&[-1, 1]) * &P::from_ints(&[-3, 1]);
        assert_eq!(a.gcd(&b), P::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&P::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, P::from_ints(&[2, 1]));
        assert_eq!(P::zero().gcd(&P::zero()), P::zero());
    }

    #[test]
    fn root_one_multiplicity() {
        let p = &P::from_ints(&[1, -2, 1]) * &P::from_ints(&[3, 1]);
        let (k, rest) = p.split_root_one();
        assert_eq!(k, 2);
        assert_eq!(rest, P::from_ints(&[3, 1]));
        assert_eq!(P::from_ints(&[18, 0, -4]).split_root_one().0, 0);
    }

    #[test]
    fn float_instance_behaves() {
        let a = Polynomial::<f64>::from_ints(&[-1, 0, 1]);
        let b = Polynomial::<f64>::from_ints(&[-1, 1]);
        let g = a.gcd(&b);
        assert_eq!(g.degree(), Some(1));
        assert!((g.eval(&1.0)).abs() < 1e-12);
    }
}
