//! Text rendering `"P(t) / Q(t)"` with integer coefficients, and its parser.
//!
//! Rendering scales numerator and denominator together so that all
//! coefficients are integers with joint content 1 and the lowest-order
//! coefficient of the denominator is positive, e.g. `3*t^2 / (18 - 4*t^2)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::AlgebraError;
use crate::scalar::Scalar;

/// Integer coefficient vectors (ascending degree) of a canonical function.
pub fn integer_form<T: Scalar>(f: &RationalFunction<T>) -> (Vec<BigInt>, Vec<BigInt>) {
    let num: Vec<BigRational> = f.numer().coeffs().iter().map(Scalar::to_big_rational).collect();
    let den: Vec<BigRational> = f.denom().coeffs().iter().map(Scalar::to_big_rational).collect();
    let lcm = num.iter().chain(&den).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let to_int = |c: &BigRational| (c * BigRational::from_integer(lcm.clone())).to_integer();
    let mut ni: Vec<BigInt> = num.iter().map(to_int).collect();
    let mut di: Vec<BigInt> = den.iter().map(to_int).collect();
    let content = ni.iter().chain(&di).fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        ni.iter_mut().for_each(|c| *c = &*c / &content);
        di.iter_mut().for_each(|c| *c = &*c / &content);
    }
    if di.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        ni.iter_mut().for_each(|c| *c = -&*c);
        di.iter_mut().for_each(|c| *c = -&*c);
    }
    (ni, di)
}

fn render_terms(coeffs: &[BigInt]) -> (String, usize) {
    let mut out = String::new();
    let mut terms = 0;
    for (d, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match (d, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "t".to_string(),
            (1, false) => format!("{mag}*t"),
            (_, true) => format!("t^{d}"),
            (_, false) => format!("{mag}*t^{d}"),
        };
        if terms == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
        terms += 1;
    }
    if terms == 0 {
        out.push('0');
        terms = 1;
    }
    (out, terms)
}

fn render_float<T: Scalar>(p: &Polynomial<T>) -> (String, usize) {
    let mut parts = Vec::new();
    for (d, c) in p.coeffs().iter().enumerate() {
        if c.is_negligible() {
            continue;
        }
        let v = c.to_big_rational().to_f64().unwrap_or(f64::NAN);
        parts.push(match d {
            0 => format!("{v}"),
            1 => format!("{v}*t"),
            _ => format!("{v}*t^{d}"),
        });
    }
    if parts.is_empty() {
        return ("0".into(), 1);
    }
    let n = parts.len();
    (parts.join(" + ").replace("+ -", "- "), n)
}

impl<T: Scalar> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ((num, nt), (den, dt), den_is_one) = if T::EXACT {
            let (ni, di) = integer_form(self);
            let one = di.len() == 1 && di[0].is_one();
            (render_terms(&ni), render_terms(&di), one)
        } else {
            (render_float(self.numer()), render_float(self.denom()), self.denom().is_one())
        };
        if den_is_one {
            return f.write_str(&num);
        }
        let wrap = |s: String, terms: usize| if terms > 1 { format!("({s})") } else { s };
        write!(f, "{} / {}", wrap(num, nt), wrap(den, dt))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{what} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    /// `[int] ['*'] ['t' ['^' int]]`, at least one of the two parts.
    fn term(&mut self) -> Result<(BigInt, usize), AlgebraError> {
        let coeff = self.integer();
        if let Some(c) = &coeff {
            if !self.eat(b'*') && self.peek() != Some(b't') {
                return Ok((c.clone(), 0));
            }
        }
        if !self.eat(b't') {
            return match coeff {
                Some(c) => Ok((c, 0)),
                None => Err(self.err("expected a term")),
            };
        }
        let degree = if self.eat(b'^') {
            self.integer().and_then(|d| d.to_usize()).ok_or_else(|| self.err("bad exponent"))?
        } else {
            1
        };
        Ok((coeff.unwrap_or_else(BigInt::one), degree))
    }

    fn sum(&mut self) -> Result<Vec<BigInt>, AlgebraError> {
        let parens = self.eat(b'(');
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut negative = self.eat(b'-');
        loop {
            let (c, d) = self.term()?;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::zero());
            }
            coeffs[d] += if negative { -c } else { c };
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        if parens && !self.eat(b')') {
            return Err(self.err("expected `)`"));
        }
        Ok(coeffs)
    }
}

fn to_poly<T: Scalar>(coeffs: Vec<BigInt>) -> Polynomial<T> {
    Polynomial::new(coeffs.into_iter().map(|c| T::from_big_rational(&BigRational::from_integer(c))).collect())
}

impl<T: Scalar> FromStr for RationalFunction<T> {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let num = p.sum()?;
        let den = if p.eat(b'/') { p.sum()? } else { vec![BigInt::one()] };
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        RationalFunction::new(to_poly(num), to_poly(den))
    }
}
