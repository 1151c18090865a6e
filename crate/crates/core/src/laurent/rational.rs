use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::gcd::{monic, poly_gcd};
use super::poly::{Exponents, LaurentPoly, Vars, Q};
use crate::error::{Error, Result};

/// Quotient of Laurent polynomials.
///
/// After [`RationalFn::normalize`] the denominator is an ordinary polynomial
/// that no variable divides, with lex-leading coefficient 1, and shares no
/// factor with the numerator. That form is unique.
#[derive(Clone, Debug)]
pub struct RationalFn {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

/// `coeff · t^exponents`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialForm {
    pub coeff: Q,
    pub exponents: Exponents,
}

impl MonomialForm {
    pub fn is_unit_coefficient(&self) -> bool {
        self.coeff.is_one()
    }
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::ArityMismatch(num.nvars(), den.nvars()));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let n = p.nvars();
        Self { num: p, den: LaurentPoly::one(n) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::one(nvars))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn normalize(&self) -> Self {
        let nv = self.nvars();
        if self.num.is_zero() {
            return Self::zero(nv);
        }
        // exact division catches the common polynomial case without a gcd
        if let Some(q) = self.num.try_exact_divide(&self.den) {
            return Self::from_poly(q);
        }
        let (mn, n) = self.num.split_monomial();
        let (md, d) = self.den.split_monomial();
        let g = poly_gcd(&n, &d);
        let n = n.exact_divide(&g).expect("gcd divides numerator");
        let d = d.exact_divide(&g).expect("gcd divides denominator");
        let lc = d.leading_coeff();
        let d = monic(&d);
        let shift: Exponents = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        let n = n.shift(&shift).scale(&lc.recip());
        Self { num: n, den: d }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self { num: &self.num + &o.num, den: self.den.clone() };
        }
        Self {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    pub fn substitute_monomials(&self, images: &[Exponents], target_vars: usize) -> Self {
        Self {
            num: self.num.substitute_monomials(images, target_vars),
            den: self.den.substitute_monomials(images, target_vars),
        }
    }

    /// `Some` iff numerator and denominator are single terms after normalization.
    pub fn as_monomial(&self) -> Option<MonomialForm> {
        let f = self.normalize();
        if !(f.num.is_monomial() && f.den.is_monomial()) {
            return None;
        }
        let (en, cn) = f.num.terms().next().unwrap();
        let (ed, cd) = f.den.terms().next().unwrap();
        Some(MonomialForm {
            coeff: cn / cd,
            exponents: en.iter().zip(ed).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn format(&self, vars: &Vars) -> String {
        if self.den.is_one() {
            vars.format(&self.num)
        } else {
            format!("({}) / ({})", vars.format(&self.num), vars.format(&self.den))
        }
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}
