//! Free-group words and the surface-group presentation data that every
//! π₁ computation in the crate runs on.
//!
//! Letters are signed integers: the absolute value names a generator and
//! the sign is the exponent, so inversion is negation. Handle generators
//! are `a_i = 2i-1` and `b_i = 2i`; puncture loops `d_j` live at `100 + j`
//! and arcs `c_i` at `200 + i`. The encoding does not depend on the genus,
//! which keeps parsing independent of the presentation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const PUNCTURE_BASE: i32 = 100;
const ARC_BASE: i32 = 200;

/// Kind of a free generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    HandleA,
    HandleB,
    PunctureLoop,
    Arc,
}

/// A generator with a sign. `index` is 1-based within its kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub kind: GenKind,
    pub index: usize,
    pub sign: i8,
}

impl GeneratorSymbol {
    pub fn new(kind: GenKind, index: usize) -> Self {
        Self { kind, index, sign: 1 }
    }

    pub fn a(i: usize) -> Self {
        Self::new(GenKind::HandleA, i)
    }

    pub fn b(i: usize) -> Self {
        Self::new(GenKind::HandleB, i)
    }

    pub fn d(j: usize) -> Self {
        Self::new(GenKind::PunctureLoop, j)
    }

    pub fn c(i: usize) -> Self {
        Self::new(GenKind::Arc, i)
    }

    pub fn inverse(self) -> Self {
        Self { sign: -self.sign, ..self }
    }

    pub fn letter(self) -> Letter {
        let base = match self.kind {
            GenKind::HandleA => 2 * self.index as i32 - 1,
            GenKind::HandleB => 2 * self.index as i32,
            GenKind::PunctureLoop => PUNCTURE_BASE + self.index as i32,
            GenKind::Arc => ARC_BASE + self.index as i32,
        };
        Letter(base * self.sign as i32)
    }

    /// The symplectic dual of a handle generator (`a_i <-> b_i`).
    pub fn dual(self) -> Option<Self> {
        match self.kind {
            GenKind::HandleA => Some(Self::b(self.index)),
            GenKind::HandleB => Some(Self::a(self.index)),
            _ => None,
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A signed generator code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub i32);

impl Letter {
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// The positive letter with the same generator.
    pub fn generator(self) -> Letter {
        Letter(self.0.abs())
    }

    pub fn symbol(self) -> GeneratorSymbol {
        let v = self.0.abs();
        let sign = if self.0 > 0 { 1 } else { -1 };
        let (kind, index) = if v > ARC_BASE {
            (GenKind::Arc, (v - ARC_BASE) as usize)
        } else if v > PUNCTURE_BASE {
            (GenKind::PunctureLoop, (v - PUNCTURE_BASE) as usize)
        } else if v % 2 == 1 {
            (GenKind::HandleA, ((v + 1) / 2) as usize)
        } else {
            (GenKind::HandleB, (v / 2) as usize)
        };
        GeneratorSymbol { kind, index, sign }
    }

    pub fn is_arc(self) -> bool {
        self.0.abs() > ARC_BASE
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.symbol();
        let ch = match (s.kind, s.sign > 0) {
            (GenKind::HandleA, true) => 'a',
            (GenKind::HandleA, false) => 'A',
            (GenKind::HandleB, true) => 'b',
            (GenKind::HandleB, false) => 'B',
            (GenKind::PunctureLoop, true) => 'd',
            (GenKind::PunctureLoop, false) => 'D',
            (GenKind::Arc, true) => 'c',
            (GenKind::Arc, false) => 'C',
        };
        write!(f, "{}{}", ch, s.index)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self> {
        let mut chars = tok.chars();
        let head = chars.next().ok_or_else(|| Error::Parse("empty letter".into()))?;
        let index: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad letter `{tok}`")))?;
        if index == 0 {
            return Err(Error::Parse(format!("generator index must be positive in `{tok}`")));
        }
        let (kind, sign) = match head {
            'a' => (GenKind::HandleA, 1),
            'A' => (GenKind::HandleA, -1),
            'b' => (GenKind::HandleB, 1),
            'B' => (GenKind::HandleB, -1),
            'd' => (GenKind::PunctureLoop, 1),
            'D' => (GenKind::PunctureLoop, -1),
            'c' => (GenKind::Arc, 1),
            'C' => (GenKind::Arc, -1),
            _ => return Err(Error::Parse(format!("unknown generator `{tok}`"))),
        };
        Ok(GeneratorSymbol { kind, index, sign }.letter())
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds a word and freely reduces it.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        reduce_letters(letters)
    }

    pub fn from_symbols(symbols: impl IntoIterator<Item = GeneratorSymbol>) -> Self {
        Self::new(symbols.into_iter().map(GeneratorSymbol::letter))
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `self * other * self^-1`
    pub fn conjugate(&self, other: &Word) -> Word {
        self.mul(other).mul(&self.inverse())
    }

    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// Substitutes a word for each positive generator; inverse letters get the
    /// inverse image. Generators missing from `image` are left fixed.
    pub fn substitute(&self, image: &dyn Fn(Letter) -> Option<Word>) -> Word {
        let mut out = Word::identity();
        for &l in &self.0 {
            let img = image(l.generator()).unwrap_or_else(|| Word::letter(l.generator()));
            out = if l.is_positive() { out.mul(&img) } else { out.mul(&img.inverse()) };
        }
        out
    }

    pub fn contains_arc(&self) -> bool {
        self.0.iter().any(|l| l.is_arc())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) if self.0.len() > 1 => f != l.inverse(),
            _ => true,
        }
    }

    /// All cyclic rotations of the word.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.0.len().max(1);
        (0..n).map(move |k| {
            if self.0.is_empty() {
                return Word::identity();
            }
            let mut v = self.0[k..].to_vec();
            v.extend_from_slice(&self.0[..k]);
            Word(v)
        })
    }

    pub fn is_rotation_of(&self, other: &Word) -> bool {
        self.len() == other.len() && other.rotations().any(|r| &r == self)
    }
}

/// Free reduction with a stack: one pass yields the normal form.
pub fn reduce_letters(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

pub fn reduce(w: &Word) -> Word {
    reduce_letters(w.0.iter().copied())
}

/// Splits `w` as `conjugator * core * conjugator^-1` with `core` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let w = reduce(w);
    let l = &w.0;
    let mut k = 0;
    while l.len() >= 2 * (k + 1) && l[k] == l[l.len() - 1 - k].inverse() {
        k += 1;
    }
    let conj = Word(l[..k].to_vec());
    let core = Word(l[k..l.len() - k].to_vec());
    (core, conj)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Letter>>>()?;
        Ok(Word::new(letters))
    }
}

impl TryFrom<String> for Word {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// Presentation data for `π₁(Σ_g ∖ B, p)` with `|P|` marked points.
///
/// With no punctures the group is the one-relator surface group. With
/// punctures it is free on `a_i, b_i, d_1..d_{B-1}`; the last puncture loop
/// is eliminated through `∏[a_i,b_i] · d_1 ⋯ d_B = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfacePresentation {
    pub genus: usize,
    pub punctures: usize,
    pub marked: usize,
}

impl SurfacePresentation {
    pub fn new(genus: usize, punctures: usize, marked: usize) -> Result<Self> {
        if genus < 1 {
            return Err(Error::UnsupportedConfiguration(format!("genus {genus} < 1")));
        }
        if marked < 1 {
            return Err(Error::UnsupportedConfiguration("need at least the basepoint".into()));
        }
        Ok(Self { genus, punctures, marked })
    }

    pub fn closed(genus: usize) -> Self {
        Self { genus, punctures: 0, marked: 1 }
    }

    pub fn is_closed(&self) -> bool {
        self.punctures == 0
    }

    pub fn arc_count(&self) -> usize {
        self.marked - 1
    }

    /// Free generators of the π₁ presentation in canonical order.
    pub fn generators(&self) -> Vec<GeneratorSymbol> {
        let mut out = Vec::with_capacity(self.rank_generators());
        for i in 1..=self.genus {
            out.push(GeneratorSymbol::a(i));
            out.push(GeneratorSymbol::b(i));
        }
        for j in 1..self.punctures {
            out.push(GeneratorSymbol::d(j));
        }
        out
    }

    /// Number of free generators (`2g`, or `2g + B - 1` with punctures).
    pub fn rank_generators(&self) -> usize {
        2 * self.genus + self.punctures.saturating_sub(1)
    }

    /// Position of a generator in `generators()`, or `None` for letters that
    /// are not free generators (arcs, the eliminated puncture loop).
    pub fn generator_position(&self, l: Letter) -> Option<usize> {
        let s = l.symbol();
        match s.kind {
            GenKind::HandleA if s.index <= self.genus => Some(2 * (s.index - 1)),
            GenKind::HandleB if s.index <= self.genus => Some(2 * s.index - 1),
            GenKind::PunctureLoop if s.index < self.punctures => Some(2 * self.genus + s.index - 1),
            _ => None,
        }
    }

    pub fn arc_position(&self, l: Letter) -> Option<usize> {
        let s = l.symbol();
        (s.kind == GenKind::Arc && s.index >= 1 && s.index <= self.arc_count()).then(|| s.index - 1)
    }

    /// `∏[a_i,b_i]`, the boundary word of the handles.
    pub fn handle_product(&self) -> Word {
        (1..=self.genus).fold(Word::identity(), |acc, i| {
            let a = Word::letter(GeneratorSymbol::a(i).letter());
            let b = Word::letter(GeneratorSymbol::b(i).letter());
            acc.mul(&Word::commutator(&a, &b))
        })
    }

    /// The eliminated puncture loop `d_B` written in the free generators.
    pub fn eliminated_loop(&self) -> Option<Word> {
        if self.punctures == 0 {
            return None;
        }
        let mut w = self.handle_product();
        for j in 1..self.punctures {
            w = w.mul(&Word::letter(GeneratorSymbol::d(j).letter()));
        }
        Some(w.inverse())
    }

    /// Rewrites occurrences of `d_B` in terms of the free generators.
    pub fn expand(&self, w: &Word) -> Word {
        match self.eliminated_loop() {
            None => w.clone(),
            Some(e) => {
                let last = GeneratorSymbol::d(self.punctures).letter();
                w.substitute(&|l| (l == last).then(|| e.clone()))
            }
        }
    }

    /// Dimension of the absolute homology basis: handles plus `Δ_1..Δ_{B-1}`.
    pub fn homology_rank(&self) -> usize {
        self.rank_generators()
    }

    /// Euler characteristic of `Σ_g` minus `B + P` points.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - (self.punctures + self.marked) as i64
    }

    /// Checks that every letter of `w` is a generator (or arc) of this presentation.
    pub fn check_word(&self, w: &Word, allow_arcs: bool) -> Result<()> {
        for &l in w.letters() {
            let s = l.symbol();
            let ok = match s.kind {
                GenKind::HandleA | GenKind::HandleB => s.index <= self.genus,
                GenKind::PunctureLoop => s.index <= self.punctures,
                GenKind::Arc => allow_arcs && s.index <= self.arc_count(),
            };
            if !ok {
                return Err(Error::Parse(format!("letter {l} not in presentation {self:?}")));
            }
        }
        Ok(())
    }
}

/// `∏[a_i,b_i]` for a closed presentation.
pub fn commutator_relator(p: &SurfacePresentation) -> Result<Word> {
    if !p.is_closed() {
        return Err(Error::NotClosed);
    }
    Ok(p.handle_product())
}

/// Integer coordinates in a homology basis. Absolute basis:
/// `a_1, b_1, …, a_g, b_g, Δ_1, …, Δ_{B-1}`; relative basis appends arc
/// classes `c_1, …, c_{|P|-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyVector(pub Vec<i64>);

impl HomologyVector {
    pub fn zero(n: usize) -> Self {
        HomologyVector(vec![0; n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        HomologyVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        HomologyVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        HomologyVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        HomologyVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Zero-padded or truncated copy of length `n`.
    pub fn resized(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(n, 0);
        HomologyVector(v)
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Signed letter counts in the absolute basis; `d_B` expands to `-∑ Δ_j`.
/// Arc letters are counted in trailing relative coordinates.
pub fn abelianize(w: &Word, p: &SurfacePresentation) -> HomologyVector {
    let n = p.homology_rank();
    let mut v = vec![0i64; n + p.arc_count()];
    for &l in w.letters() {
        let e = if l.is_positive() { 1 } else { -1 };
        if let Some(k) = p.generator_position(l) {
            v[k] += e;
        } else if let Some(k) = p.arc_position(l) {
            v[n + k] += e;
        } else if l.symbol().kind == GenKind::PunctureLoop && l.symbol().index == p.punctures {
            for x in v.iter_mut().take(n).skip(2 * p.genus) {
                *x -= e;
            }
        }
    }
    if p.arc_count() == 0 {
        v.truncate(n);
    }
    HomologyVector(v)
}

/// Abelianization restricted to the absolute block.
pub fn abelianize_absolute(w: &Word, p: &SurfacePresentation) -> HomologyVector {
    let mut v = abelianize(w, p);
    v.0.truncate(p.homology_rank());
    v
}

/// Algebraic intersection on the absolute basis: `⟨a_i,b_i⟩ = 1`, boundary
/// classes in the kernel. Extra (arc) coordinates are ignored.
pub fn intersection(x: &HomologyVector, y: &HomologyVector, genus: usize) -> i64 {
    (0..genus)
        .map(|i| x.0[2 * i] * y.0[2 * i + 1] - x.0[2 * i + 1] * y.0[2 * i])
        .sum()
}
