use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::twist::{TwistGen, TwistLetter};
use super::MappingClass;
use crate::error::{Error, Result};
use crate::words::{abelianize, GeneratorSymbol, HomologyVector, Letter, SurfacePresentation, Word};

pub const TABLE_VERSION: u32 = 1;

/// A Dehn twist about a curve of the standard system (right-handed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub name: String,
    /// Images of the generators moved by the twist; others are fixed.
    pub action: BTreeMap<String, Word>,
    pub inverse_action: BTreeMap<String, Word>,
    pub homology: HomologyVector,
    pub fiber_coeff: i64,
    pub separating: bool,
    /// Euler characteristic of the subsurface to the left, for separating curves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_euler: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointPushRecord {
    pub name: String,
    pub around: usize,
    pub loop_word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorTable {
    pub version: u32,
    pub genus: usize,
    pub punctures: usize,
    pub marked: usize,
    pub curves: Vec<CurveRecord>,
    pub pushes: Vec<PointPushRecord>,
}

fn w(letters: &[Letter]) -> Word {
    Word::new(letters.iter().copied())
}

fn a(i: usize) -> Letter {
    GeneratorSymbol::a(i).letter()
}

fn b(i: usize) -> Letter {
    GeneratorSymbol::b(i).letter()
}

fn conj_all(p: &SurfacePresentation, by: &Word) -> (BTreeMap<String, Word>, BTreeMap<String, Word>) {
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    for s in p.generators() {
        let x = Word::letter(s.letter());
        fwd.insert(s.letter().to_string(), by.mul(&x).mul(&by.inverse()));
        back.insert(s.letter().to_string(), by.inverse().mul(&x).mul(by));
    }
    for i in 1..=p.arc_count() {
        let c = Word::letter(GeneratorSymbol::c(i).letter());
        fwd.insert(c.to_string(), by.mul(&c));
        back.insert(c.to_string(), by.inverse().mul(&c));
    }
    (fwd, back)
}

impl GeneratorTable {
    pub fn check_range(genus: usize, punctures: usize, marked: usize) -> Result<()> {
        if !(2..=4).contains(&genus) || punctures > 2 || !(1..=3).contains(&marked) {
            return Err(Error::UnsupportedConfiguration(format!(
                "tables cover 2 ≤ g ≤ 4, B ≤ 2, 1 ≤ P ≤ 3; got g={genus}, B={punctures}, P={marked}"
            )));
        }
        Ok(())
    }

    /// Builds the standard table: twists about `a_i`, `b_i`, the chain curves
    /// `c_i` joining consecutive handles, the separating curve around the
    /// first handle, loops around punctures, and pushes along each `a_i`, `b_i`.
    pub fn standard(genus: usize, punctures: usize, marked: usize) -> Result<Self> {
        Self::check_range(genus, punctures, marked)?;
        let p = SurfacePresentation::new(genus, punctures, marked)?;
        let n = p.homology_rank();
        let mut curves = Vec::new();
        for i in 1..=genus {
            curves.push(CurveRecord {
                name: format!("a{i}"),
                action: BTreeMap::from([(b(i).to_string(), w(&[b(i), a(i).inverse()]))]),
                inverse_action: BTreeMap::from([(b(i).to_string(), w(&[b(i), a(i)]))]),
                homology: HomologyVector::unit(n, 2 * i - 2),
                fiber_coeff: 0,
                separating: false,
                left_euler: None,
            });
            curves.push(CurveRecord {
                name: format!("b{i}"),
                action: BTreeMap::from([(a(i).to_string(), w(&[a(i), b(i)]))]),
                inverse_action: BTreeMap::from([(a(i).to_string(), w(&[a(i), b(i).inverse()]))]),
                homology: HomologyVector::unit(n, 2 * i - 1),
                fiber_coeff: 0,
                separating: false,
                left_euler: None,
            });
        }
        for i in 1..genus {
            let g = w(&[b(i), a(i).inverse(), b(i).inverse(), a(i + 1)]);
            let gi = g.inverse();
            let bi = Word::letter(b(i));
            let aj = Word::letter(a(i + 1));
            let bj = Word::letter(b(i + 1));
            curves.push(CurveRecord {
                name: format!("c{i}"),
                action: BTreeMap::from([
                    (b(i).to_string(), g.mul(&bi)),
                    (a(i + 1).to_string(), g.mul(&aj).mul(&gi)),
                    (b(i + 1).to_string(), bj.mul(&gi)),
                ]),
                inverse_action: BTreeMap::from([
                    (b(i).to_string(), gi.mul(&bi)),
                    (a(i + 1).to_string(), gi.mul(&aj).mul(&g)),
                    (b(i + 1).to_string(), bj.mul(&g)),
                ]),
                homology: abelianize(&g, &p).resized(n),
                fiber_coeff: 1,
                separating: false,
                left_euler: None,
            });
        }
        let s = w(&[a(1), b(1), a(1).inverse(), b(1).inverse()]);
        let si = s.inverse();
        curves.push(CurveRecord {
            name: "s".into(),
            action: BTreeMap::from([
                (a(1).to_string(), s.mul(&Word::letter(a(1))).mul(&si)),
                (b(1).to_string(), s.mul(&Word::letter(b(1))).mul(&si)),
            ]),
            inverse_action: BTreeMap::from([
                (a(1).to_string(), si.mul(&Word::letter(a(1))).mul(&s)),
                (b(1).to_string(), si.mul(&Word::letter(b(1))).mul(&s)),
            ]),
            homology: HomologyVector::zero(n),
            fiber_coeff: -1,
            separating: true,
            left_euler: Some(-1),
        });
        for j in 1..=punctures {
            let d = p.expand(&Word::letter(GeneratorSymbol::d(j).letter()));
            let (action, inverse_action) = conj_all(&p, &d);
            let homology = abelianize(&d, &p).resized(n);
            let separating = homology.is_zero();
            // exponent of the loop's character in the determinant cocycle
            let fiber = 2 * genus as i64 + punctures as i64 - 2;
            curves.push(CurveRecord {
                name: format!("d{j}"),
                action,
                inverse_action,
                fiber_coeff: if separating { 1 - 2 * genus as i64 } else { fiber },
                left_euler: separating.then_some(1 - 2 * genus as i64),
                homology,
                separating,
            });
        }
        let mut pushes = Vec::new();
        for around in 0..marked {
            for i in 1..=genus {
                for l in [a(i), b(i)] {
                    let name = if around == 0 { format!("Push({l})") } else { format!("Push@{around}({l})") };
                    pushes.push(PointPushRecord { name, around, loop_word: Word::letter(l) });
                }
            }
        }
        Ok(Self { version: TABLE_VERSION, genus, punctures, marked, curves, pushes })
    }

    pub fn presentation(&self) -> SurfacePresentation {
        SurfacePresentation { genus: self.genus, punctures: self.punctures, marked: self.marked }
    }

    pub fn file_name(genus: usize, punctures: usize, marked: usize) -> String {
        format!("g{genus}_b{punctures}_p{marked}.json")
    }

    /// Directory holding the shipped tables; `TWISTKIT_TABLE_DIR` overrides it.
    pub fn table_dir() -> PathBuf {
        match std::env::var_os("TWISTKIT_TABLE_DIR") {
            Some(d) => PathBuf::from(d),
            None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/tables")),
        }
    }

    /// Loads and re-validates a shipped table.
    pub fn load(genus: usize, punctures: usize, marked: usize) -> Result<Self> {
        Self::check_range(genus, punctures, marked)?;
        let path = Self::table_dir().join(Self::file_name(genus, punctures, marked));
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let table = Self::from_json(&text)?;
        if (table.genus, table.punctures, table.marked) != (genus, punctures, marked) {
            return Err(Error::Validation(format!("{} describes a different surface", path.display())));
        }
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let table: GeneratorTable = serde_json::from_str(text)?;
        if table.version != TABLE_VERSION {
            return Err(Error::Validation(format!("unsupported table version {}", table.version)));
        }
        table.validate()?;
        Ok(table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    /// Checks every record: well-formed actions, inverse actions that really
    /// invert, homology data matching the π₁ action, and a valid mapping class.
    pub fn validate(&self) -> Result<()> {
        let p = SurfacePresentation::new(self.genus, self.punctures, self.marked)?;
        let n = p.homology_rank();
        for rec in &self.curves {
            let f = self.curve_class(rec, 1)?;
            let g = self.curve_class(rec, -1)?;
            if !f.compose(&g).is_identity() || !g.compose(&f).is_identity() {
                return Err(Error::Validation(format!("T{}: inverse action does not invert", rec.name)));
            }
            if rec.homology.dim() != n {
                return Err(Error::Validation(format!("T{}: homology has wrong length", rec.name)));
            }
            if rec.separating != rec.homology.is_zero() {
                return Err(Error::Validation(format!("T{}: separating flag disagrees with homology", rec.name)));
            }
            if rec.separating && rec.left_euler != Some(rec.fiber_coeff) {
                return Err(Error::Validation(format!(
                    "T{}: fiber coefficient {} is not the Euler characteristic to its left",
                    rec.name, rec.fiber_coeff
                )));
            }
            let expected = super::transvection(&rec.homology, 1, self.genus);
            if f.homology_action(super::HomologyMode::Absolute) != expected {
                return Err(Error::Validation(format!("T{}: π₁ action disagrees with its curve class", rec.name)));
            }
            super::validate_mapping_class(&f)?;
        }
        for push in &self.pushes {
            let f = self.generator_class(&TwistLetter::push(push.around, push.loop_word.clone(), 1))?;
            super::validate_mapping_class(&f)?;
        }
        Ok(())
    }

    pub fn curve(&self, name: &str) -> Result<&CurveRecord> {
        self.curves
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| Error::Parse(format!("no curve `{name}` in the table")))
    }

    fn curve_class(&self, rec: &CurveRecord, exp: i32) -> Result<MappingClass> {
        let p = self.presentation();
        let map = if exp > 0 { &rec.action } else { &rec.inverse_action };
        let images: Result<Vec<(Letter, Word)>> =
            map.iter().map(|(k, v)| Ok((k.parse::<Letter>()?, v.clone()))).collect();
        let mut f = MappingClass::from_images(&p, &images?, "")?;
        let t = TwistLetter::curve(&rec.name, exp);
        f.label = t.to_string();
        f.twist_word = Some(vec![t]);
        Ok(f)
    }

    /// Mapping class of a single generator letter.
    pub fn generator_class(&self, t: &TwistLetter) -> Result<MappingClass> {
        let p = self.presentation();
        if t.exp.abs() != 1 {
            return Err(Error::InvalidArgument(format!("letter exponent {} is not ±1", t.exp)));
        }
        match &t.gen {
            TwistGen::Curve(name) => self.curve_class(self.curve(name)?, t.exp),
            TwistGen::Push { around, loop_word } => {
                p.check_word(loop_word, false)?;
                if *around > p.arc_count() {
                    return Err(Error::Parse(format!("no marked point {around}")));
                }
                let gamma = if t.exp > 0 { loop_word.clone() } else { loop_word.inverse() };
                let mut images = Vec::new();
                if *around == 0 {
                    let (fwd, _) = conj_all(&p, &gamma);
                    for (k, v) in fwd {
                        images.push((k.parse::<Letter>()?, v));
                    }
                } else {
                    let c = Word::letter(GeneratorSymbol::c(*around).letter());
                    images.push((GeneratorSymbol::c(*around).letter(), gamma.mul(&c)));
                }
                let mut f = MappingClass::from_images(&p, &images, &t.to_string())?;
                f.twist_word = Some(vec![t.clone()]);
                Ok(f)
            }
        }
    }

    /// `t_1 ∘ t_2 ∘ … ∘ t_k` for the word `t_1,…,t_k`.
    pub fn compose(&self, word: &[TwistLetter]) -> Result<MappingClass> {
        let mut f = MappingClass::identity(&self.presentation());
        for t in word {
            f = f.compose(&self.generator_class(t)?);
        }
        f.twist_word = Some(word.to_vec());
        f.label = if word.is_empty() { "id".into() } else { super::format_twist_word(word) };
        Ok(f)
    }

    /// All table generators with exponent +1.
    pub fn generators(&self) -> Vec<TwistLetter> {
        let mut out: Vec<TwistLetter> = self.curves.iter().map(|c| TwistLetter::curve(&c.name, 1)).collect();
        out.extend(self.pushes.iter().map(|p| TwistLetter::push(p.around, p.loop_word.clone(), 1)));
        out
    }

    /// Uniformly random word of the given length over generators and inverses.
    pub fn random_word(&self, rng: &mut impl rand::Rng, len: usize) -> Vec<TwistLetter> {
        let gens = self.generators();
        (0..len)
            .map(|_| {
                let t = &gens[rng.gen_range(0..gens.len())];
                if rng.gen_bool(0.5) { t.clone() } else { t.inverse() }
            })
            .collect()
    }
}
