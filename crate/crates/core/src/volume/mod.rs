//! Fiberwise volume forms on cocycle spaces, chart consistency, and the
//! coboundary solver for determinant cocycles on subgroups.

use serde::Serialize;

use crate::cocycles::{chart_position, constraint_weights, evaluate_cocycle, standard_basis, Character};
use crate::error::{Error, Result};
use crate::laurent::Q;
use crate::linalg::{common_denominator, int_inverse, q_determinant, q_rank, q_solve, QMatrix};
use crate::mapping::{GeneratorTable, HomologyMode, MappingClass};
use crate::winding::{framed_membership, WindingClass};
use crate::words::{intersection, GeneratorSymbol, HomologyVector, Word};

/// `ω_c = (1 − χ(d))⁻¹ · ∧ dλ(x)` over the arc functionals and the retained
/// generators, in that order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberForm {
    pub chart: String,
    pub coefficient: Q,
    pub ordered_basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoboundaryCertificate {
    pub v: Vec<Q>,
    #[serde(rename = "N")]
    pub n: i64,
    /// `N·v`, integral.
    pub integral_class: Vec<i64>,
    pub validated: bool,
}

/// Generators whose stacked system has no rational solution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Obstruction {
    pub witness: Vec<usize>,
    pub labels: Vec<String>,
    pub rank: usize,
    pub augmented_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum SolveOutcome {
    Certificate(CoboundaryCertificate),
    Obstruction(Obstruction),
}

fn numeric_value(chi: &Character, s: GeneratorSymbol) -> Result<Q> {
    chi.of_generator(s)
        .as_constant()
        .ok_or_else(|| Error::InvalidArgument("volume forms need a numeric character".into()))
}

pub fn omega_chart(chi: &Character, chart: GeneratorSymbol) -> Result<FiberForm> {
    let p = &chi.presentation;
    let k = chart_position(p, chart)?;
    let d = chart.dual().expect("handle generator");
    let one_minus = Q::from_integer(1.into()) - numeric_value(chi, d)?;
    if one_minus == Q::from_integer(0.into()) {
        return Err(Error::InadmissibleChart(format!("χ({}) = 1", d.letter())));
    }
    let mut ordered_basis: Vec<String> = (1..=p.arc_count()).map(|i| format!("c{i}")).collect();
    ordered_basis.extend(
        p.generators()
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, s)| s.letter().to_string()),
    );
    Ok(FiberForm { chart: chart.letter().to_string(), coefficient: one_minus.recip(), ordered_basis })
}

/// Matrix sending chart-`s` coordinates to chart-`c` coordinates.
pub fn change_of_charts(chi: &Character, c: GeneratorSymbol, s: GeneratorSymbol) -> Result<QMatrix> {
    let p = &chi.presentation;
    let basis_s = standard_basis(chi, s)?;
    let kc = chart_position(p, c)?;
    let rows: Vec<usize> = (0..p.rank_generators()).filter(|&k| k != kc).collect();
    let gens = p.generators();
    let mut m = Vec::new();
    for &k in &rows {
        let x = Word::letter(gens[k].letter());
        let row: Result<Vec<Q>> = basis_s.cocycles[..basis_s.retained.len()]
            .iter()
            .map(|l| evaluate_cocycle(l, &x)?.evaluate(&[]))
            .collect();
        m.push(row?);
    }
    Ok(m)
}

/// `ω_c = ω_s`: `coefficient_c · det(change) = coefficient_s`.
pub fn chart_consistency(chi: &Character, c: GeneratorSymbol, s: GeneratorSymbol) -> Result<bool> {
    let wc = omega_chart(chi, c)?;
    let ws = omega_chart(chi, s)?;
    constraint_weights(chi)?;
    let det = q_determinant(&change_of_charts(chi, c, s)?);
    Ok(wc.coefficient * det == ws.coefficient)
}

/// Solves `(M_f⁻¹ − 1)v = e_f` over ℚ for all generators, where `e_f` is
/// the exponent vector of `A(f, χ)`, so that `χ(v)` is a monomial with
/// `A(f, χ) = F(f_*χ)/F(χ)`.
pub fn coboundary_solve(generators: &[(MappingClass, Vec<i64>)]) -> Result<SolveOutcome> {
    let Some((first, _)) = generators.first() else {
        return Ok(SolveOutcome::Certificate(CoboundaryCertificate {
            v: Vec::new(),
            n: 1,
            integral_class: Vec::new(),
            validated: true,
        }));
    };
    let dim = first.presentation.homology_rank();
    let blocks: Vec<(QMatrix, Vec<Q>)> = generators.iter().map(|(f, e)| block(f, e, dim)).collect::<Result<_>>()?;
    let all: Vec<usize> = (0..generators.len()).collect();
    match solve_subset(&blocks, &all) {
        Some(v) => {
            let den = common_denominator(&v);
            let n: i64 = den.try_into().map_err(|_| Error::InvalidArgument("denominator overflow".into()))?;
            let scaled: Vec<i64> = v
                .iter()
                .map(|x| (x * Q::from_integer(n.into())).to_integer().try_into().expect("entry fits in i64"))
                .collect();
            let validated = blocks.iter().all(|(m, e)| apply_q(m, &v) == *e);
            Ok(SolveOutcome::Certificate(CoboundaryCertificate { v, n, integral_class: scaled, validated }))
        }
        None => {
            // deletion filter down to a minimal inconsistent subset
            let mut witness = all;
            let mut i = 0;
            while i < witness.len() {
                let mut trial = witness.clone();
                trial.remove(i);
                if solve_subset(&blocks, &trial).is_none() {
                    witness = trial;
                } else {
                    i += 1;
                }
            }
            let (a, b) = stack(&blocks, &witness);
            let rank = q_rank(&a);
            let augmented: QMatrix = a.iter().zip(&b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
            Ok(SolveOutcome::Obstruction(Obstruction {
                labels: witness.iter().map(|&i| generators[i].0.label.clone()).collect(),
                witness,
                rank,
                augmented_rank: q_rank(&augmented),
            }))
        }
    }
}

fn block(f: &MappingClass, e: &[i64], dim: usize) -> Result<(QMatrix, Vec<Q>)> {
    if e.len() != dim {
        return Err(Error::InvalidArgument(format!("{}: exponent vector has length {}", f.label, e.len())));
    }
    let minv = int_inverse(&f.homology_action(HomologyMode::Absolute))
        .ok_or_else(|| Error::InvalidMappingClass(f.label.clone()))?;
    let m = (0..dim)
        .map(|i| (0..dim).map(|j| Q::from_integer((minv[i][j] - i64::from(i == j)).into())).collect())
        .collect();
    Ok((m, e.iter().map(|&x| Q::from_integer(x.into())).collect()))
}

fn stack(blocks: &[(QMatrix, Vec<Q>)], subset: &[usize]) -> (QMatrix, Vec<Q>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &i in subset {
        a.extend(blocks[i].0.iter().cloned());
        b.extend(blocks[i].1.iter().cloned());
    }
    (a, b)
}

fn solve_subset(blocks: &[(QMatrix, Vec<Q>)], subset: &[usize]) -> Option<Vec<Q>> {
    let (a, b) = stack(blocks, subset);
    if a.is_empty() {
        return Some(Vec::new());
    }
    q_solve(&a, &b)
}

fn apply_q(m: &QMatrix, v: &[Q]) -> Vec<Q> {
    m.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// The `N`-framing `N·W − ⟨·, N·v⟩`, checked against every generator.
pub fn n_framing_extract(
    cert: &CoboundaryCertificate,
    w: &WindingClass,
    table: &GeneratorTable,
    generators: &[MappingClass],
) -> Result<WindingClass> {
    let p = table.presentation();
    let dim = p.homology_rank();
    let z = if cert.integral_class.is_empty() {
        HomologyVector::zero(dim)
    } else {
        HomologyVector(cert.integral_class.clone()).scale(-1)
    };
    let mut out = WindingClass::new(w.n * cert.n);
    for rec in &table.curves {
        let base = w.curve(&rec.name)?;
        out.curve_values.insert(rec.name.clone(), cert.n * base + intersection(&rec.homology, &z, p.genus));
    }
    out.point_values = w.point_values.iter().map(|(k, x)| (k.clone(), cert.n * x)).collect();
    out.arc_values = w.arc_values.as_ref().map(|m| m.iter().map(|(k, x)| (k.clone(), cert.n * x)).collect());
    for f in generators {
        if !framed_membership(&out, table, f)? {
            return Err(Error::Validation(format!("{} does not preserve the extracted framing", f.label)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
