use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub type Exponents = Vec<i32>;

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in lexicographic order of their exponent vectors and no
/// zero coefficient is ever stored, so structural equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(nvars, c, vec![0; nvars])
    }

    pub fn monomial(nvars: usize, c: Q, exps: Exponents) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// The variable `t_i` raised to `e`.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        let mut ex = vec![0; nvars];
        ex[i] = e;
        Self::monomial(nvars, Q::one(), ex)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, e: Exponents, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            Err(Error::ArityMismatch(self.nvars, o.nvars))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_arity(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_arity(o)?;
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_arity(o)?;
        let mut acc: BTreeMap<Exponents, Q> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self { nvars: self.nvars, terms: acc })
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one(self.nvars);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(self.nvars, c.recip(), e.iter().map(|x| -x).collect()))
    }

    /// Componentwise minimum exponent over all terms (zero vector for zero).
    pub fn min_exponents(&self) -> Exponents {
        let mut m: Option<Exponents> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Splits `self = t^m · P` with `P` an ordinary polynomial not divisible by any variable.
    pub fn split_monomial(&self) -> (Exponents, Self) {
        let m = self.min_exponents();
        let neg: Exponents = m.iter().map(|x| -x).collect();
        (m, self.shift(&neg))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Q {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Coefficient of `t_v^k`, as a polynomial with the `v` exponent cleared.
    pub fn coeff_in(&self, v: usize, k: i32) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut e2 = e.clone();
                e2[v] = 0;
                r.terms.insert(e2, c.clone());
            }
        }
        r
    }

    /// Exact evaluation at a point with nonzero coordinates.
    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch(self.nvars, point.len()));
        }
        if self.terms.keys().any(|e| e.iter().zip(point).any(|(&x, p)| x < 0 && p.is_zero())) {
            return Err(Error::PoleAtPoint);
        }
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (&x, p) in e.iter().zip(point) {
                if x != 0 {
                    t *= pow_q(p, x);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `t_i ↦ t^{images[i]}` (a Laurent monomial in `target_vars`
    /// variables) for every variable.
    pub fn substitute_monomials(&self, images: &[Exponents], target_vars: usize) -> Self {
        assert_eq!(images.len(), self.nvars);
        let mut r = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let mut ex = vec![0i32; target_vars];
            for (k, &x) in e.iter().enumerate() {
                if x != 0 {
                    for (t, &im) in ex.iter_mut().zip(&images[k]) {
                        *t += x * im;
                    }
                }
            }
            r.add_term(ex, c.clone());
        }
        r
    }

    /// Exact quotient `self / q` in the Laurent ring.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.check_arity(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (mp, pp) = self.split_monomial();
        let (mq, qq) = divisor.split_monomial();
        let quot = poly_divide_exact(&pp, &qq)?;
        let shift: Exponents = mp.iter().zip(&mq).map(|(a, b)| a - b).collect();
        Ok(quot.shift(&shift))
    }

    pub fn try_exact_divide(&self, divisor: &Self) -> Option<Self> {
        self.exact_divide(divisor).ok()
    }
}

pub(crate) fn pow_q(p: &Q, e: i32) -> Q {
    let base = if e < 0 { p.recip() } else { p.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Division of ordinary polynomials in lex order; fails unless the remainder is zero.
pub(crate) fn poly_divide_exact(p: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly> {
    let nv = p.nvars;
    let (ld, lc) = {
        let (e, c) = d.leading_term().ok_or(Error::DivisionByZero)?;
        (e.clone(), c.clone())
    };
    let mut rem = p.clone();
    let mut quot = LaurentPoly::zero(nv);
    while let Some((le, lcoef)) = rem.leading_term() {
        let diff: Exponents = le.iter().zip(&ld).map(|(a, b)| a - b).collect();
        if diff.iter().any(|&x| x < 0) {
            return Err(Error::NotDivisible);
        }
        let c = lcoef / &lc;
        let t = LaurentPoly::monomial(nv, c, diff);
        rem = rem.try_sub(&(&t * d))?;
        quot = quot.try_add(&t)?;
    }
    Ok(quot)
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: &LaurentPoly) -> LaurentPoly {
                self.$f(o).expect("arity mismatch")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$f(&o).expect("arity mismatch")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Q::one())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Variable names for the canonical text form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars {
    names: Vec<String>,
}

impl Vars {
    pub fn new(names: Vec<String>) -> Self {
        Self { names }
    }

    /// `x1 y1 … xg yg z1 … z_{B-1}`: character coordinates on handles and free puncture loops.
    pub fn character(genus: usize, punctures: usize) -> Self {
        let mut names = Vec::new();
        for i in 1..=genus {
            names.push(format!("x{i}"));
            names.push(format!("y{i}"));
        }
        for j in 1..punctures {
            names.push(format!("z{j}"));
        }
        Self { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn format(&self, p: &LaurentPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in p.terms() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], x) })
                .collect();
            if mono.is_empty() {
                parts.push(c.to_string());
            } else {
                parts.push(format!("{} * {}", c, mono.join(" ")));
            }
        }
        parts.join(" + ")
    }

    pub fn parse(&self, s: &str) -> Result<LaurentPoly> {
        let nv = self.names.len();
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero(nv));
        }
        let mut p = LaurentPoly::zero(nv);
        for term in s.split(" + ") {
            let mut c = Q::one();
            let mut e = vec![0i32; nv];
            for f in term.split(|ch: char| ch == '*' || ch.is_whitespace()).filter(|f| !f.is_empty()) {
                if f.starts_with(|ch: char| ch.is_ascii_digit() || ch == '-') {
                    let k: Q = f.parse().map_err(|_| Error::Parse(format!("bad coefficient `{f}`")))?;
                    c *= k;
                    continue;
                }
                let (name, ex) = match f.split_once('^') {
                    Some((n, x)) => (n, x.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in `{f}`")))?),
                    None => (f, 1),
                };
                let idx = self
                    .names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                e[idx] += ex;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = (1..=self.nvars).map(|i| format!("t{i}")).collect();
        f.write_str(&Vars::new(names).format(self))
    }
}
