//! Seeded property suites over the generator tables.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cocycles::{determinant_cocycle_at, Character, DeterminantCocycleValue};
use crate::error::{Error, Result};
use crate::laurent::{q, q_frac, Q};
use crate::linalg::{int_apply, int_mul};
use crate::mapping::{
    boundary_class, format_twist_word, push_action_boundary, push_action_relative, transvection, GeneratorTable,
    MappingClass, TwistLetter,
};
use crate::volume::chart_consistency;
use crate::winding::{
    change_of_word, cpsi_on_boundary_twists, derive_framing_from_a, invariant_relative_class, WindingClass,
};
use crate::words::{HomologyVector, SurfacePresentation, Word};

pub const SUITES: [&str; 6] =
    ["cocycle-identity", "monomiality", "grand-cross-check", "chart-consistency", "push-formulas", "arc-conditions"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub genus: usize,
    pub punctures: usize,
    pub marked: usize,
    pub seed: u64,
    pub max_word_len: usize,
    pub case_count: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { genus: 2, punctures: 0, marked: 1, seed: 42, max_word_len: 6, case_count: 100 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Case = std::result::Result<(), Failure>;

fn fail(input: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Failure {
    Failure { input: input.into(), expected: expected.to_string(), actual: actual.to_string() }
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let table = GeneratorTable::load(cfg.genus, cfg.punctures, cfg.marked)?;
    let results: Vec<Case> = match name {
        "cocycle-identity" => cocycle_identity(&table, cfg)?,
        "monomiality" => monomiality(&table, cfg)?,
        "grand-cross-check" => grand_cross_check(&table, cfg)?,
        "chart-consistency" => chart_cases(&table, cfg)?,
        "push-formulas" => push_formulas(&table)?,
        "arc-conditions" => arc_conditions(&table, cfg)?,
        other => return Err(Error::Parse(format!("unknown suite `{other}`; known: {}", SUITES.join(", ")))),
    };
    Ok(SuiteReport {
        suite: name.into(),
        seed: cfg.seed,
        cases: results.len(),
        failures: results.into_iter().filter_map(|r| r.err()).collect(),
        elapsed: start.elapsed(),
    })
}

/// All signed table generators.
pub fn signed_generators(table: &GeneratorTable) -> Vec<TwistLetter> {
    table.generators().into_iter().flat_map(|t| [t.clone(), t.inverse()]).collect()
}

/// Word pairs: every ordered pair of signed generators, then `cases` random
/// pairs with lengths in `1..=max_len`.
pub fn word_pair_corpus(table: &GeneratorTable, cfg: &RunConfig) -> Vec<(Vec<TwistLetter>, Vec<TwistLetter>)> {
    let gens = signed_generators(table);
    let mut out: Vec<_> = gens
        .iter()
        .flat_map(|f| gens.iter().map(move |g| (vec![f.clone()], vec![g.clone()])))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let max = cfg.max_word_len.max(1);
    for _ in 0..cfg.case_count {
        let lf = rng.gen_range(1..=max);
        let f = table.random_word(&mut rng, lf);
        let lg = rng.gen_range(1..=max);
        let g = table.random_word(&mut rng, lg);
        out.push((f, g));
    }
    out
}

/// Single words: signed generators, then `cases` random words.
pub fn word_corpus(table: &GeneratorTable, cfg: &RunConfig) -> Vec<Vec<TwistLetter>> {
    let mut out: Vec<Vec<TwistLetter>> = signed_generators(table).into_iter().map(|t| vec![t]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let max = cfg.max_word_len.max(1);
    for _ in 0..cfg.case_count {
        let l = rng.gen_range(1..=max);
        out.push(table.random_word(&mut rng, l));
    }
    out
}

fn cocycle_values(
    table: &GeneratorTable,
    f: &[TwistLetter],
    g: &[TwistLetter],
) -> Result<(DeterminantCocycleValue, DeterminantCocycleValue, DeterminantCocycleValue)> {
    let chi = Character::symbolic(&table.presentation());
    let fm = table.compose(f)?;
    let gm = table.compose(g)?;
    let ag = determinant_cocycle_at(&gm, &chi, None)?;
    let af = determinant_cocycle_at(&fm, &ag.pushed, None)?;
    let afg = determinant_cocycle_at(&fm.compose(&gm), &chi, None)?;
    Ok((afg, af, ag))
}

fn pair_label(f: &[TwistLetter], g: &[TwistLetter]) -> String {
    format!("f={} g={}", format_twist_word(f), format_twist_word(g))
}

fn cocycle_identity(table: &GeneratorTable, cfg: &RunConfig) -> Result<Vec<Case>> {
    let corpus = word_pair_corpus(table, cfg);
    corpus
        .par_iter()
        .map(|(f, g)| {
            let (afg, af, ag) = cocycle_values(table, f, g)?;
            let rhs = af.value.mul(&ag.value).normalize();
            Ok(if afg.value == rhs { Ok(()) } else { Err(fail(pair_label(f, g), &rhs, &afg.value)) })
        })
        .collect()
}

fn monomiality(table: &GeneratorTable, cfg: &RunConfig) -> Result<Vec<Case>> {
    let corpus = word_pair_corpus(table, cfg);
    corpus
        .par_iter()
        .map(|(f, g)| {
            let (afg, af, ag) = cocycle_values(table, f, g)?;
            for (name, a) in [("fg", &afg), ("f@g", &af), ("g", &ag)] {
                match &a.monomial {
                    Some(m) if m.is_unit_coefficient() => {}
                    _ => return Ok(Err(fail(format!("{} [{name}]", pair_label(f, g)), "unit monomial", &a.value))),
                }
            }
            Ok(Ok(()))
        })
        .collect()
}

fn grand_cross_check(table: &GeneratorTable, cfg: &RunConfig) -> Result<Vec<Case>> {
    let w = derive_framing_from_a(table)?;
    let chi = Character::symbolic(&table.presentation());
    let corpus = word_corpus(table, cfg);
    corpus.par_iter().map(|word| cross_check_word(table, &w, &chi, word)).collect()
}

/// Exponent vector of `A(f, χ)` against the twist-calculus change of `W`.
pub fn cross_check_word(table: &GeneratorTable, w: &WindingClass, chi: &Character, word: &[TwistLetter]) -> Result<Case> {
    let f = table.compose(word)?;
    let a = determinant_cocycle_at(&f, chi, None)?;
    let change = change_of_word(w, table, word)?;
    let label = format_twist_word(word);
    Ok(match a.monomial {
        Some(m) => {
            let e: Vec<i64> = m.exponents.iter().map(|&x| i64::from(x)).collect();
            if e == change.vector.0 {
                Ok(())
            } else {
                Err(fail(label, format!("{:?}", change.vector.0), format!("{e:?}")))
            }
        }
        None => Err(fail(label, "monomial", &a.value)),
    })
}

/// A numeric character with values in `±{1..9}/{1..4}` avoiding 1.
pub fn random_numeric_character(rng: &mut impl Rng, p: &SurfacePresentation) -> Result<Character> {
    let vals: Vec<Q> = (0..p.rank_generators())
        .map(|_| loop {
            let x = q_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            if x != q(0) && x != q(1) {
                break x;
            }
        })
        .collect();
    Character::numeric(p, &vals)
}

fn chart_cases(table: &GeneratorTable, cfg: &RunConfig) -> Result<Vec<Case>> {
    let p = table.presentation();
    if !p.is_closed() {
        return Err(Error::UnsupportedConfiguration("chart consistency needs a closed surface".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let chars: Vec<Character> =
        (0..cfg.case_count).map(|_| random_numeric_character(&mut rng, &p)).collect::<Result<_>>()?;
    let gens = p.generators();
    Ok(chars
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, chi)| {
            let gens = &gens;
            gens.iter().flat_map(move |&c| {
                gens.iter().map(move |&s| match chart_consistency(chi, c, s) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err(fail(format!("character {k}, charts {c}/{s}"), "ω_c = ω_s", "mismatch")),
                    Err(e) => Err(fail(format!("character {k}, charts {c}/{s}"), "admissible", e)),
                })
            })
        })
        .collect())
}

/// Boundary push, boundary-twist and relative push formulas on every
/// generator and basis vector, each against an independent computation.
fn push_formulas(table: &GeneratorTable) -> Result<Vec<Case>> {
    let g = table.genus;
    let mut cases = Vec::new();

    // boundary pushes on a surface with two boundary components
    let pb = SurfacePresentation::new(g, 2.max(table.punctures), 1)?;
    let n = pb.homology_rank();
    for b in 1..=pb.punctures {
        let delta = boundary_class(b, &pb)?;
        for k in 0..2 * g {
            let gamma = Word::letter(pb.generators()[k].letter());
            let gv = HomologyVector::unit(n, k);
            // push = T_{γ₁} T_{γ₂}⁻¹ with [γ₂] = [γ₁] + Δ_b
            let oracle = int_mul(&transvection(&gv, 1, g), &transvection(&gv.add(&delta), -1, g));
            for j in 0..n {
                let x = HomologyVector::unit(n, j);
                let got = push_action_boundary(&gamma, &x, b, &pb)?;
                let want = HomologyVector(int_apply(&oracle, &x.0));
                cases.push(if got == want {
                    Ok(())
                } else {
                    Err(fail(format!("boundary push Δ{b} γ={gamma} x=e{j}"), format!("{:?}", want.0), format!("{:?}", got.0)))
                });
            }
        }
    }

    // boundary twists: W(Δ_j)·Δ_j against the arc twist calculus
    let tb = GeneratorTable::standard(g, pb.punctures, 2)?;
    let mut w = WindingClass::new(1);
    for rec in &tb.curves {
        w.curve_values.insert(rec.name.clone(), rec.fiber_coeff);
    }
    for j in 1..=pb.punctures {
        w.curve_values.insert(format!("d{j}"), -(j as i64));
    }
    for j in 1..=pb.punctures {
        let want = boundary_class(j, &pb)?.scale(-(j as i64));
        cases.push(match cpsi_on_boundary_twists(&w, &tb, j) {
            Ok(v) if v.0[..n] == want.0[..] => Ok(()),
            Ok(v) => Err(fail(format!("C(ψ)(Δ{j})"), format!("{:?}", want.0), format!("{:?}", v.0))),
            Err(e) => Err(fail(format!("C(ψ)(Δ{j})"), format!("{:?}", want.0), e)),
        });
    }

    // relative pushes on H₁(Σ, Q′), against the matrix I + χ·γ⊗⟨γ,·⟩
    let pr = SurfacePresentation::new(g, 0, table.marked.max(2))?;
    let dim = pr.homology_rank() + pr.arc_count();
    let chi = 2 - 2 * g as i64 - pr.marked as i64;
    for k in 0..2 * g {
        let gamma = Word::letter(pr.generators()[k].letter());
        let matrix: Vec<Vec<i64>> = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| {
                        let pairing = if c >= 2 * g {
                            0
                        } else if k % 2 == 0 && c == k + 1 {
                            1
                        } else if k % 2 == 1 && c + 1 == k {
                            -1
                        } else {
                            0
                        };
                        i64::from(r == c) + chi * pairing * i64::from(r == k)
                    })
                    .collect()
            })
            .collect();
        for j in 0..dim {
            let alpha = HomologyVector::unit(dim, j);
            let got = push_action_relative(&gamma, &alpha, &pr);
            let want = int_apply(&matrix, &alpha.0);
            cases.push(if got.0 == want {
                Ok(())
            } else {
                Err(fail(format!("relative push γ={gamma} α=e{j}"), format!("{want:?}"), format!("{:?}", got.0)))
            });
        }
    }
    Ok(cases)
}

/// Invariant-class search against brute force over a small box, on random
/// subgroups preserving a framing with zero change on pushes.
fn arc_conditions(table: &GeneratorTable, cfg: &RunConfig) -> Result<Vec<Case>> {
    let p = SurfacePresentation::new(table.genus, 0, table.marked.max(2))?;
    let marked_table = GeneratorTable::standard(p.genus, 0, p.marked)?;
    let n = p.homology_rank();
    let m = p.arc_count();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = marked_table.generators();
    let mut inputs = Vec::new();
    for _ in 0..cfg.case_count.min(40) {
        let k = rng.gen_range(1..=2);
        let gens: Vec<TwistLetter> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let d: Vec<i64> = (0..m).map(|_| rng.gen_range(-1..=1)).collect();
        inputs.push((gens, d));
    }
    inputs
        .par_iter()
        .map(|(gens, d)| {
            let classes: Vec<MappingClass> =
                gens.iter().map(|x| marked_table.compose(std::slice::from_ref(x))).collect::<Result<_>>()?;
            let label = format!("G={} D={d:?}", format_twist_word(gens));
            let found = invariant_relative_class(&classes, d, n, m)?;
            if let Some(gv) = &found {
                for g in &classes {
                    let a = g.homology_action(crate::mapping::HomologyMode::Relative);
                    if int_apply(&a, &gv.0) != gv.0 {
                        return Ok(Err(fail(label, "invariant γ", format!("{:?}", gv.0))));
                    }
                }
            }
            let brute = brute_force_invariant(&classes, d, n);
            Ok(match (found.is_some(), brute) {
                (false, Some(v)) => Err(fail(label, format!("solution {v:?}"), "none")),
                _ => Ok(()),
            })
        })
        .collect()
}

fn brute_force_invariant(classes: &[MappingClass], d: &[i64], n: usize) -> Option<Vec<i64>> {
    let mats: Vec<_> = classes.iter().map(|g| g.homology_action(crate::mapping::HomologyMode::Relative)).collect();
    let range = 5i64;
    let total = range.pow(n as u32);
    (0..total).find_map(|code| {
        let mut v: Vec<i64> = (0..n as u32).map(|k| (code / range.pow(k)) % range - range / 2).collect();
        v.extend_from_slice(d);
        mats.iter().all(|a| int_apply(a, &v) == v).then_some(v)
    })
}

#[cfg(test)]
mod tests;
