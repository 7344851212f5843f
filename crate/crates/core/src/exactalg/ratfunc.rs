//! Rational functions `P(t)/Q(t)` kept in a unique canonical form.

use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Polynomial;
use super::AlgebraError;
use crate::scalar::Scalar;

/// A ratio of polynomials in canonical form:
///
/// * numerator and denominator are coprime,
/// * the lowest-degree nonzero coefficient of the denominator is 1,
/// * zero is stored as `0 / 1`.
///
/// Two equal functions therefore have identical fields, so derived
/// equality is equality of functions.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl<T: Scalar> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial<T>, den: Polynomial<T>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) =
            if g.degree().unwrap_or(0) > 0 { (num.exact_div(&g), den.exact_div(&g)) } else { (num, den) };
        let low = den.lowest().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !low.is_one() {
            let inv = T::one() / low;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalFunction { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self::canonical(p, Polynomial::one())
    }

    /// `t`
    pub fn t() -> Self {
        Self::from_poly(Polynomial::t())
    }

    pub fn numer(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::canonical(self.num.pow(e), self.den.pow(e))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::one().checked_div(self)
    }

    pub fn arith(op: ArithOp, a: &Self, b: &Self) -> Result<Self, AlgebraError> {
        Ok(match op {
            ArithOp::Add => a + b,
            ArithOp::Sub => a - b,
            ArithOp::Mul => a * b,
            ArithOp::Div => a.checked_div(b)?,
        })
    }

    /// Taylor coefficients `c_0..=c_depth` of the expansion at `t = 0`.
    pub fn series_coefficients(&self, depth: usize) -> Result<Vec<T>, AlgebraError> {
        let q0 = self.den.coeff(0);
        if q0.is_negligible() {
            return Err(AlgebraError::PoleAtZero);
        }
        // Q * c = P, solved term by term.
        let mut out: Vec<T> = Vec::with_capacity(depth + 1);
        for k in 0..=depth {
            let mut acc = self.num.coeff(k);
            for (j, qj) in self.den.coeffs().iter().enumerate().skip(1).take(k) {
                acc = acc - qj.clone() * out[k - j].clone();
            }
            out.push(acc / q0.clone());
        }
        Ok(out)
    }

    /// Multiplicity of `t - 1` in the denominator.
    pub fn pole_order_at_one(&self) -> usize {
        self.den.split_root_one().0
    }

    /// `lim_{t -> 1} (t - 1) f(t)`.
    pub fn residue_at_one(&self) -> Result<T, AlgebraError> {
        let (order, cofactor) = self.den.split_root_one();
        match order {
            0 => Ok(T::zero()),
            1 => Ok(self.num.eval(&T::one()) / cofactor.eval(&T::one())),
            k => Err(AlgebraError::HigherOrderPole(k)),
        }
    }

    pub fn evaluate(&self, at: &T) -> Result<T, AlgebraError> {
        let d = self.den.eval(at);
        if d.is_negligible() {
            return Err(AlgebraError::PoleAtPoint(format!("{:?}", at)));
        }
        Ok(self.num.eval(at) / d)
    }

    /// Value at `t = 0`; requires analyticity there.
    pub fn at_zero(&self) -> Result<T, AlgebraError> {
        self.evaluate(&T::zero()).map_err(|_| AlgebraError::PoleAtZero)
    }

    /// Substitute `t -> c t`.
    pub fn rescale_variable(&self, c: &T) -> Self {
        let sub = |p: &Polynomial<T>| {
            let mut pow = T::one();
            let mut coeffs = Vec::with_capacity(p.coeffs().len());
            for a in p.coeffs() {
                coeffs.push(a.clone() * pow.clone());
                pow = pow * c.clone();
            }
            Polynomial::new(coeffs)
        };
        Self::canonical(sub(&self.num), sub(&self.den))
    }
}

impl<T: Scalar> From<Polynomial<T>> for RationalFunction<T> {
    fn from(p: Polynomial<T>) -> Self {
        Self::from_poly(p)
    }
}

impl<T: Scalar> Add for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn add(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<T: Scalar> Sub for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn sub(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn mul(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl<T: Scalar> Neg for RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: RationalFunction<T>) -> RationalFunction<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
