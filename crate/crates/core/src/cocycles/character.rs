use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::{Exponents, LaurentPoly, Vars, Q};
use crate::linalg::IntMatrix;
use crate::words::{GenKind, GeneratorSymbol, Letter, SurfacePresentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterMode {
    Symbolic,
    Numeric,
}

/// A character `π₁ → K^×`, stored as one Laurent monomial per free generator.
///
/// Symbolic characters use the coordinate variables `x_i, y_i, z_j`; numeric
/// ones are constants in a ring with no variables. Arc values `b_i = χ̃(c_i)`
/// default to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub presentation: SurfacePresentation,
    pub mode: CharacterMode,
    pub values: Vec<LaurentPoly>,
    pub arc_values: Vec<LaurentPoly>,
}

impl Character {
    pub fn symbolic(p: &SurfacePresentation) -> Self {
        let n = p.rank_generators();
        Self {
            presentation: *p,
            mode: CharacterMode::Symbolic,
            values: (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
            arc_values: vec![LaurentPoly::one(n); p.arc_count()],
        }
    }

    pub fn numeric(p: &SurfacePresentation, values: &[Q]) -> Result<Self> {
        if values.len() != p.rank_generators() {
            return Err(Error::InvalidArgument(format!(
                "expected {} character values, got {}",
                p.rank_generators(),
                values.len()
            )));
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidArgument("character values must be nonzero".into()));
        }
        Ok(Self {
            presentation: *p,
            mode: CharacterMode::Numeric,
            values: values.iter().map(|v| LaurentPoly::constant(0, v.clone())).collect(),
            arc_values: vec![LaurentPoly::one(0); p.arc_count()],
        })
    }

    /// Replaces the arc values; each must be a nonzero monomial.
    pub fn with_arc_values(mut self, b: Vec<LaurentPoly>) -> Result<Self> {
        if b.len() != self.presentation.arc_count() {
            return Err(Error::InvalidArgument("wrong number of arc values".into()));
        }
        if b.iter().any(|x| !x.is_monomial() || x.nvars() != self.nvars()) {
            return Err(Error::InvalidArgument("arc values must be nonzero monomials".into()));
        }
        self.arc_values = b;
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        match self.mode {
            CharacterMode::Symbolic => self.presentation.rank_generators(),
            CharacterMode::Numeric => 0,
        }
    }

    pub fn vars(&self) -> Vars {
        match self.mode {
            CharacterMode::Symbolic => Vars::character(self.presentation.genus, self.presentation.punctures),
            CharacterMode::Numeric => Vars::new(Vec::new()),
        }
    }

    pub fn of_letter(&self, l: Letter) -> LaurentPoly {
        let p = &self.presentation;
        let v = if let Some(k) = p.generator_position(l) {
            self.values[k].clone()
        } else if let Some(k) = p.arc_position(l) {
            self.arc_values[k].clone()
        } else if l.symbol().kind == GenKind::PunctureLoop {
            return self.of_word(&p.expand(&Word::letter(l)));
        } else {
            panic!("letter {l} outside presentation {p:?}");
        };
        if l.is_positive() {
            v
        } else {
            v.monomial_inverse().expect("character values are monomials")
        }
    }

    pub fn of_word(&self, w: &Word) -> LaurentPoly {
        w.letters()
            .iter()
            .fold(LaurentPoly::one(self.nvars()), |acc, &l| &acc * &self.of_letter(l))
    }

    pub fn of_generator(&self, s: GeneratorSymbol) -> LaurentPoly {
        self.of_letter(s.letter())
    }

    /// `f_*χ = χ ∘ f⁻¹`, given the inverse absolute homology matrix of `f`
    /// (columns are images of the free generators).
    pub fn pushforward(&self, inverse_action: &IntMatrix) -> Character {
        let n = self.values.len();
        let values = (0..n)
            .map(|k| {
                (0..n).fold(LaurentPoly::one(self.nvars()), |acc, j| {
                    let e = inverse_action[j][k];
                    &acc * &mono_pow(&self.values[j], e)
                })
            })
            .collect();
        Character { values, ..self.clone() }
    }

    /// Exponent vectors of a symbolic character's generator values, used as
    /// monomial substitution images.
    pub fn exponent_images(&self) -> Vec<Exponents> {
        self.values
            .iter()
            .map(|v| v.terms().next().map(|(e, _)| e.clone()).unwrap_or_default())
            .collect()
    }

    /// Evaluates a symbolic character at a numeric point.
    pub fn evaluate_at(&self, point: &[Q]) -> Result<Character> {
        let values: Result<Vec<Q>> = self.values.iter().map(|v| v.evaluate(point)).collect();
        let mut c = Character::numeric(&self.presentation, &values?)?;
        c.arc_values = self
            .arc_values
            .iter()
            .map(|v| v.evaluate(point).map(|x| LaurentPoly::constant(0, x)))
            .collect::<Result<_>>()?;
        Ok(c)
    }
}

pub(crate) fn mono_pow(m: &LaurentPoly, e: i64) -> LaurentPoly {
    let base = if e < 0 { m.monomial_inverse().expect("monomial") } else { m.clone() };
    base.pow(e.unsigned_abs() as u32)
}

/// Fox-calculus coefficients of a word: `λ(w) = Σ gens[k]·λ(x_k) + Σ arcs[i]·λ(c_i)`
/// for every cocycle `λ` with character `χ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoxDerivative {
    pub gens: Vec<LaurentPoly>,
    pub arcs: Vec<LaurentPoly>,
}

pub fn fox(chi: &Character, w: &Word) -> FoxDerivative {
    let p = &chi.presentation;
    let nv = chi.nvars();
    let mut gens = vec![LaurentPoly::zero(nv); p.rank_generators()];
    let mut arcs = vec![LaurentPoly::zero(nv); p.arc_count()];
    let mut prefix = LaurentPoly::one(nv);
    for &l in p.expand(w).letters() {
        let slot = match (p.generator_position(l), p.arc_position(l)) {
            (Some(k), _) => &mut gens[k],
            (None, Some(k)) => &mut arcs[k],
            _ => panic!("letter {l} outside presentation {p:?}"),
        };
        if l.is_positive() {
            *slot = &*slot + &prefix;
            prefix = &prefix * &chi.of_letter(l);
        } else {
            prefix = &prefix * &chi.of_letter(l);
            *slot = &*slot - &prefix;
        }
    }
    FoxDerivative { gens, arcs }
}
