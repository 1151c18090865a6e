//! Mapping classes as automorphisms of the fundamental groupoid, optionally
//! carrying a factorization into table generators.

mod table;
mod twist;
mod validate;

pub use table::{CurveRecord, GeneratorTable, PointPushRecord, TABLE_VERSION};
pub use twist::{parse_twist_word, format_twist_word, TwistGen, TwistLetter};
pub use validate::{validate_mapping_class, ValidationReport};

use crate::error::{Error, Result};
use crate::linalg::{int_identity, int_inverse, int_mul, IntMatrix};
use crate::words::{
    abelianize, intersection, HomologyVector, Letter, SurfacePresentation, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologyMode {
    Absolute,
    Relative,
}

/// An endomorphism of the groupoid generated by `π₁(Σ ∖ B, p₀)` and the arcs
/// `c_i` from `p₀` to `p_i`, given by the images of the free generators
/// (in presentation order) followed by the images of the arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct MappingClass {
    pub presentation: SurfacePresentation,
    pub images: Vec<Word>,
    pub twist_word: Option<Vec<TwistLetter>>,
    pub label: String,
}

impl MappingClass {
    pub fn identity(p: &SurfacePresentation) -> Self {
        let mut images: Vec<Word> = p.generators().into_iter().map(|s| Word::letter(s.letter())).collect();
        images.extend((1..=p.arc_count()).map(|i| Word::letter(crate::words::GeneratorSymbol::c(i).letter())));
        Self { presentation: *p, images, twist_word: Some(Vec::new()), label: "id".into() }
    }

    /// Builds a mapping class from explicit images; generators missing from
    /// `images` are fixed.
    pub fn from_images(p: &SurfacePresentation, images: &[(Letter, Word)], label: &str) -> Result<Self> {
        let mut f = Self::identity(p);
        for (l, w) in images {
            p.check_word(w, true)?;
            let k = f.slot(*l).ok_or_else(|| Error::InvalidArgument(format!("{l} is not a free generator")))?;
            f.images[k] = w.clone();
        }
        f.twist_word = None;
        f.label = label.into();
        Ok(f)
    }

    fn slot(&self, l: Letter) -> Option<usize> {
        if !l.is_positive() {
            return None;
        }
        let p = &self.presentation;
        p.generator_position(l).or_else(|| p.arc_position(l).map(|k| p.rank_generators() + k))
    }

    pub fn image_of(&self, l: Letter) -> Word {
        match self.slot(l.generator()) {
            Some(k) if l.is_positive() => self.images[k].clone(),
            Some(k) => self.images[k].inverse(),
            None => {
                // eliminated puncture loop
                let e = self.presentation.expand(&Word::letter(l));
                self.apply(&e)
            }
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        let w = self.presentation.expand(w);
        crate::words::reduce_letters(w.letters().iter().flat_map(|&l| self.image_of(l).letters().to_vec()))
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &MappingClass) -> MappingClass {
        let images = other.images.iter().map(|w| self.apply(w)).collect();
        let twist_word = match (&self.twist_word, &other.twist_word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        MappingClass {
            presentation: self.presentation,
            images,
            twist_word,
            label: format!("{}·{}", self.label, other.label),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images == MappingClass::identity(&self.presentation).images
    }

    /// Integer matrix whose columns are the classes of the generator images.
    pub fn homology_action(&self, mode: HomologyMode) -> IntMatrix {
        let p = &self.presentation;
        let n = p.homology_rank();
        let (cols, dim) = match mode {
            HomologyMode::Absolute => (n, n),
            HomologyMode::Relative => (n + p.arc_count(), n + p.arc_count()),
        };
        let columns: Vec<Vec<i64>> = self.images[..cols]
            .iter()
            .map(|w| abelianize(w, p).resized(dim).0)
            .collect();
        (0..dim).map(|i| (0..cols).map(|j| columns[j][i]).collect()).collect()
    }

    pub fn inverse_homology_action(&self, mode: HomologyMode) -> Result<IntMatrix> {
        int_inverse(&self.homology_action(mode))
            .ok_or_else(|| Error::InvalidMappingClass(format!("{}: homology action not invertible", self.label)))
    }

    /// Inverse, available when a twist word is attached.
    pub fn inverse(&self, table: &GeneratorTable) -> Result<MappingClass> {
        let word = self.twist_word.as_ref().ok_or(Error::TwistWordAbsent)?;
        let inv: Vec<TwistLetter> = word.iter().rev().map(|t| t.inverse()).collect();
        table.compose(&inv)
    }
}

/// Transvection `x ↦ x + k⟨x,d⟩d` on the absolute basis.
pub fn transvection(d: &HomologyVector, k: i64, genus: usize) -> IntMatrix {
    let n = d.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = HomologyVector::unit(n, j);
                    i64::from(i == j) + k * intersection(&e, d, genus) * d.0[i]
                })
                .collect()
        })
        .collect()
}

/// Absolute action of a twist word computed purely from curve classes:
/// a product of transvections, pushes acting trivially.
pub fn transvection_product(table: &GeneratorTable, word: &[TwistLetter]) -> Result<IntMatrix> {
    let p = table.presentation();
    let n = p.homology_rank();
    let mut m = int_identity(n);
    for t in word {
        let step = match &t.gen {
            TwistGen::Curve(name) => {
                let rec = table.curve(name)?;
                transvection(&rec.homology, t.exp as i64, p.genus)
            }
            TwistGen::Push { .. } => int_identity(n),
        };
        m = int_mul(&m, &step);
    }
    Ok(m)
}

/// Absolute homology class of the loop part of a word (arcs dropped).
pub fn loop_class(w: &Word, p: &SurfacePresentation) -> HomologyVector {
    let mut v = abelianize(w, p);
    v.0.truncate(p.homology_rank());
    v
}

/// `γ·x = x + ⟨γ̄,x⟩Δ_b` for the push of boundary component `b` along `γ`.
pub fn push_action_boundary(gamma: &Word, x: &HomologyVector, b: usize, p: &SurfacePresentation) -> Result<HomologyVector> {
    let delta = boundary_class(b, p)?;
    let g = loop_class(gamma, p);
    Ok(x.add(&delta.scale(intersection(&g, x, p.genus))))
}

/// Class of the boundary loop `Δ_b` in the absolute basis (`Δ_B = -ΣΔ_j`).
pub fn boundary_class(b: usize, p: &SurfacePresentation) -> Result<HomologyVector> {
    if b == 0 || b > p.punctures {
        return Err(Error::InvalidArgument(format!("no boundary component {b}")));
    }
    let w = Word::letter(crate::words::GeneratorSymbol::d(b).letter());
    Ok(abelianize(&w, p).resized(p.homology_rank()))
}

/// `γ·α = α + χ(Σ_{g,n+1})⟨[γ],α⟩[γ]` on relative classes; the `n + 1`
/// removed points are the punctures and the marked points, basepoint included.
pub fn push_action_relative(gamma: &Word, alpha: &HomologyVector, p: &SurfacePresentation) -> HomologyVector {
    let g = loop_class(gamma, p).resized(alpha.dim());
    let k = p.euler_characteristic() * intersection(&g, alpha, p.genus);
    alpha.add(&g.scale(k))
}
