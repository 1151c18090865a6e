//! Winding-number functions of framings, their change under mapping classes,
//! and membership in framed subgroups.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cocycles::determinant_cocycle;
use crate::error::{Error, Result};
use crate::laurent::Q;
use crate::linalg::{int_identity, int_solve, int_sub, q_solve, IntMatrix};
use crate::mapping::{loop_class, GeneratorTable, HomologyMode, MappingClass, TwistGen, TwistLetter};
use crate::words::{abelianize, intersection, GenKind, GeneratorSymbol, HomologyVector, SurfacePresentation, Word};

/// Winding numbers of a framing: the level `N` (value on the fiber), the
/// values on the Johnson lifts of table curves, on loops around marked points
/// (`p0`, `p1`, …), and optionally relative values on the arcs (`c1`, …).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindingClass {
    #[serde(rename = "N")]
    pub n: i64,
    pub curve_values: BTreeMap<String, i64>,
    #[serde(default)]
    pub point_values: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_values: Option<BTreeMap<String, i64>>,
}

/// `PD((f*−1)W)` on absolute classes, and the change of each arc value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindingChange {
    pub vector: HomologyVector,
    pub arc_deltas: Vec<i64>,
}

impl WindingChange {
    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.arc_deltas.iter().all(|&d| d == 0)
    }
}

/// `(W(Δ₁),…,W(Δ_B))` followed by the marked-point loops `W(δ_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundarySignature {
    pub values: Vec<i64>,
}

impl BoundarySignature {
    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Coboundary,
    Obstructed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcConditionReport {
    pub eta_framing_ok: bool,
    pub d_eta: Vec<i64>,
    pub invariant_gamma: Option<HomologyVector>,
    pub arc_basis_preserved: bool,
    pub eta_signature: BoundarySignature,
    pub xi_signature: BoundarySignature,
    pub verdict: Verdict,
}

impl WindingClass {
    pub fn new(n: i64) -> Self {
        Self { n, curve_values: BTreeMap::new(), point_values: BTreeMap::new(), arc_values: None }
    }

    pub fn curve(&self, name: &str) -> Result<i64> {
        self.curve_values
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("no winding number for curve `{name}`")))
    }

    pub fn point(&self, q: usize) -> Result<i64> {
        self.point_values
            .get(&format!("p{q}"))
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("no winding number around marked point p{q}")))
    }

    pub fn boundary_signature(&self, p: &SurfacePresentation) -> Result<BoundarySignature> {
        let mut values = Vec::new();
        for j in 1..=p.punctures {
            values.push(self.curve(&format!("d{j}"))?);
        }
        for q in 0..p.marked {
            values.push(self.point(q)?);
        }
        Ok(BoundarySignature { values })
    }

    /// Checks the stored invariants against a table: separating curves carry
    /// `fiber_coeff·N`, and arc values require zero winding at the arc endpoints.
    pub fn check(&self, table: &GeneratorTable) -> Result<()> {
        for rec in table.curves.iter().filter(|c| c.separating) {
            if let Some(&w) = self.curve_values.get(&rec.name) {
                if w != rec.fiber_coeff * self.n {
                    return Err(Error::Inconsistent(format!(
                        "W({}) = {w}, coherence requires {}",
                        rec.name,
                        rec.fiber_coeff * self.n
                    )));
                }
            }
        }
        if self.arc_values.is_some() {
            for q in 1..table.marked {
                if self.point(q)? != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "arc values need zero winding around p{q}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn arc(&self, i: usize) -> Option<i64> {
        self.arc_values.as_ref().and_then(|m| m.get(&format!("c{i}")).copied())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("winding class serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Coefficient `k` with `f(c) c⁻¹ = k·[d]` in homology, for an arc `c` moved
/// by a twist about a curve of class `d`.
fn arc_crossing(image: &Word, arc: &Word, d: &HomologyVector, p: &SurfacePresentation) -> Result<i64> {
    let eta = image.mul(&arc.inverse());
    if eta.is_empty() {
        return Ok(0);
    }
    let v = loop_class(&eta, p);
    let Some(i) = d.0.iter().position(|&x| x != 0) else {
        return Err(Error::Inconsistent("separating twist moves an arc".into()));
    };
    let k = v.0[i] / d.0[i];
    if d.scale(k) != v {
        return Err(Error::Inconsistent(format!("arc loop {eta} is not a multiple of the twist curve")));
    }
    Ok(k)
}

/// Winding number of a loop word in the current framing `W + ⟨·, v⟩`,
/// extended additively over its letters.
fn loop_winding(w: &WindingClass, word: &Word, v: &HomologyVector, p: &SurfacePresentation) -> Result<i64> {
    let mut total = 0;
    for &l in word.letters() {
        let s = l.symbol();
        let name = match s.kind {
            GenKind::HandleA => format!("a{}", s.index),
            GenKind::HandleB => format!("b{}", s.index),
            GenKind::PunctureLoop => format!("d{}", s.index),
            GenKind::Arc => return Err(Error::InvalidArgument("push loops cannot contain arcs".into())),
        };
        let x = w.curve(&name)?;
        total += if l.is_positive() { x } else { -x };
    }
    Ok(total + intersection(&loop_class(word, p), v, p.genus))
}

/// `(f*−1)W` by twist-linearity `W(T_d(c)) = W(c) + ⟨c,d⟩W(d)`, one letter at
/// a time. A push of the point `q` along `γ` is the product of twists about
/// the two sides of `γ`, whose winding numbers differ by `W(δ_q) − N`.
pub fn pullback_change(w: &WindingClass, table: &GeneratorTable, f: &MappingClass) -> Result<WindingChange> {
    let word = f.twist_word.as_ref().ok_or(Error::TwistWordAbsent)?;
    change_of_word(w, table, word)
}

pub fn change_of_word(w: &WindingClass, table: &GeneratorTable, word: &[TwistLetter]) -> Result<WindingChange> {
    let p = table.presentation();
    let n = p.homology_rank();
    let arcs = p.arc_count();
    let mut v = HomologyVector::zero(n);
    let mut deltas = vec![0i64; arcs];
    for t in word {
        let eps = i64::from(t.exp.signum());
        let step = match &t.gen {
            TwistGen::Curve(name) => {
                let rec = table.curve(name)?;
                let d = &rec.homology;
                let weight = eps * (w.curve(name)? + intersection(d, &v, p.genus));
                let single = table.generator_class(&TwistLetter::curve(name, 1))?;
                for (i, delta) in deltas.iter_mut().enumerate() {
                    let c = Word::letter(GeneratorSymbol::c(i + 1).letter());
                    let k = arc_crossing(&single.apply(&c), &c, d, &p)?;
                    *delta += k * weight;
                }
                d.scale(weight)
            }
            TwistGen::Push { around, loop_word } => {
                let gamma = loop_class(loop_word, &p);
                let moved: Vec<usize> = if *around == 0 { (0..arcs).collect() } else { vec![around - 1] };
                if !moved.is_empty() {
                    let lw = loop_winding(w, loop_word, &v, &p)?;
                    for i in moved {
                        deltas[i] += eps * lw;
                    }
                }
                gamma.scale(eps * (w.point(*around)? - w.n))
            }
        };
        v = v.add(&step);
    }
    Ok(WindingChange { vector: v, arc_deltas: deltas })
}

/// Whether `f` preserves the framing (absolute and arc winding numbers).
pub fn framed_membership(w: &WindingClass, table: &GeneratorTable, f: &MappingClass) -> Result<bool> {
    let ch = pullback_change(w, table, f)?;
    let arcs_ok = w.arc_values.is_none() || ch.arc_deltas.iter().all(|&d| d == 0);
    Ok(ch.vector.is_zero() && arcs_ok)
}

/// `∑ ± W(ĉᵢ) = N·euler` over the given boundary curves (`pq` names a
/// marked-point loop; orientation is ±1).
pub fn coherence_check(w: &WindingClass, boundary: &[(String, i64)], euler: i64) -> Result<bool> {
    let mut total = 0;
    for (name, orient) in boundary {
        let x = match name.strip_prefix('p').and_then(|q| q.parse::<usize>().ok()) {
            Some(q) => w.point(q)?,
            None => w.curve(name)?,
        };
        total += orient * x;
    }
    Ok(total == w.n * euler)
}

/// Framing read off the determinant cocycle on a closed surface with one
/// marked point: `A(T_d, χ) = χ(d)^{W(d̂)}` for non-separating `d`, and
/// `A(Push(γ), χ) = χ(γ)^{W(δ) − N}`. The values are then fitted to
/// `W(d̂) = ⟨w,[d]⟩ + fiber_coeff(d)·N` across the whole table.
pub fn derive_framing_from_a(table: &GeneratorTable) -> Result<WindingClass> {
    let p = table.presentation();
    if !p.is_closed() || p.marked != 1 {
        return Err(Error::UnsupportedConfiguration(
            "framings are derived on closed surfaces with one marked point".into(),
        ));
    }
    let n = p.homology_rank();
    let mut w = WindingClass::new(1);
    for rec in &table.curves {
        let f = table.generator_class(&TwistLetter::curve(&rec.name, 1))?;
        let e = exponents_of(&f)?;
        let value = if rec.separating {
            if e.iter().any(|&x| x != 0) {
                return Err(Error::Inconsistent(format!("A(T{}) is not 1", rec.name)));
            }
            rec.fiber_coeff * w.n
        } else {
            multiple_of(&e, &rec.homology.0)
                .ok_or_else(|| Error::Inconsistent(format!("A(T{}) is not a power of χ(d)", rec.name)))?
        };
        w.curve_values.insert(rec.name.clone(), value);
    }
    let mut point = None;
    for push in table.pushes.iter().filter(|x| x.around == 0) {
        let f = table.generator_class(&TwistLetter::push(0, push.loop_word.clone(), 1))?;
        let e = exponents_of(&f)?;
        let m = multiple_of(&e, &loop_class(&push.loop_word, &p).0)
            .ok_or_else(|| Error::Inconsistent(format!("A({}) is not a power of χ(γ)", push.name)))?;
        let value = m + w.n;
        if point.is_some_and(|x| x != value) {
            return Err(Error::Inconsistent("pushes disagree on the marked-point winding number".into()));
        }
        point = Some(value);
    }
    w.point_values.insert("p0".into(), point.unwrap_or_default());

    // overdetermined fit: unknowns (w_1..w_n, N)
    let rows: Vec<Vec<Q>> = table
        .curves
        .iter()
        .map(|rec| {
            let mut row: Vec<Q> = (0..n)
                .map(|k| Q::from_integer(intersection(&HomologyVector::unit(n, k), &rec.homology, p.genus).into()))
                .collect();
            row.push(Q::from_integer(rec.fiber_coeff.into()));
            row
        })
        .collect();
    let rhs: Vec<Q> = table.curves.iter().map(|rec| Q::from_integer(w.curve_values[&rec.name].into())).collect();
    let sol = q_solve(&rows, &rhs)
        .ok_or_else(|| Error::Inconsistent("derived winding numbers are not coherent with the table".into()))?;
    if sol[n] != Q::from_integer(1.into()) {
        return Err(Error::Inconsistent(format!("fitted framing level is {}", sol[n])));
    }
    Ok(w)
}

fn exponents_of(f: &MappingClass) -> Result<Vec<i64>> {
    let a = determinant_cocycle(f, None)?;
    let m = a
        .monomial
        .ok_or_else(|| Error::Inconsistent(format!("A({}) is not a monomial", f.label)))?;
    Ok(m.exponents.iter().map(|&x| i64::from(x)).collect())
}

fn multiple_of(e: &[i64], d: &[i64]) -> Option<i64> {
    let Some(i) = d.iter().position(|&x| x != 0) else {
        return e.iter().all(|&x| x == 0).then_some(0);
    };
    let k = e[i] / d[i];
    e.iter().zip(d).all(|(x, y)| *x == k * y).then_some(k)
}

/// `C(ψ)(Δ_j) = W(Δ_j)·Δ_j`, cross-checked against the twist-calculus change
/// of an arc crossing `Δ_j` once.
pub fn cpsi_on_boundary_twists(w: &WindingClass, table: &GeneratorTable, j: usize) -> Result<HomologyVector> {
    let p = table.presentation();
    if j == 0 || j > p.punctures {
        return Err(Error::InvalidArgument(format!("no boundary component {j}")));
    }
    let delta = crate::mapping::boundary_class(j, &p)?;
    let wj = w.curve(&format!("d{j}"))?;
    let expected = delta.scale(wj);
    let with_arc = if p.arc_count() > 0 {
        table.clone()
    } else {
        GeneratorTable::standard(p.genus, p.punctures, 2)?
    };
    let ch = change_of_word(w, &with_arc, &[TwistLetter::curve(&format!("d{j}"), 1)])?;
    if ch.vector != expected || ch.arc_deltas[0] != wj {
        return Err(Error::Inconsistent(format!(
            "boundary twist d{j}: twist calculus gives {:?} / {}, expected {:?} / {wj}",
            ch.vector, ch.arc_deltas[0], expected
        )));
    }
    Ok(expected)
}

/// Conditions for a subgroup `G` to preserve the relative framing: an
/// invariant relative class `γ` with `δ(γ) = D_η`, and invariance of the arc
/// winding numbers.
pub fn arc_framed_conditions(
    gens: &[MappingClass],
    table: &GeneratorTable,
    eta: &WindingClass,
    xi0: &WindingClass,
    arc_basis: &[usize],
) -> Result<ArcConditionReport> {
    let p = table.presentation();
    let n = p.homology_rank();
    let m = p.arc_count();
    for g in gens {
        if !pullback_change(eta, table, g)?.vector.is_zero() {
            return Err(Error::FramingNotPreserved(g.label.clone()));
        }
    }
    let eta_sig = eta.boundary_signature(&p)?;
    let xi_sig = xi0.boundary_signature(&p)?;
    // marked points p_1..p_m follow the punctures and p_0 in the signature
    let d_eta: Vec<i64> = (0..m).map(|i| xi_sig.values[p.punctures + 1 + i] - eta_sig.values[p.punctures + 1 + i]).collect();

    let invariant_gamma = invariant_relative_class(gens, &d_eta, n, m)?;
    let mut arc_basis_preserved = true;
    for g in gens {
        let ch = pullback_change(xi0, table, g)?;
        for &i in arc_basis {
            if i == 0 || i > m {
                return Err(Error::InvalidArgument(format!("no arc c{i}")));
            }
            if xi0.arc(i).is_none() {
                return Err(Error::InvalidArgument(format!("no winding number for arc c{i}")));
            }
            if ch.arc_deltas[i - 1] != 0 {
                arc_basis_preserved = false;
            }
        }
    }
    let verdict = if invariant_gamma.is_some() && arc_basis_preserved {
        Verdict::Coboundary
    } else {
        Verdict::Obstructed
    };
    Ok(ArcConditionReport {
        eta_framing_ok: true,
        d_eta,
        invariant_gamma,
        arc_basis_preserved,
        eta_signature: eta_sig,
        xi_signature: xi_sig,
        verdict,
    })
}

/// Solves `(g − 1)γ = 0` for all `g`, with arc part of `γ` fixed to `d`.
pub fn invariant_relative_class(gens: &[MappingClass], d: &[i64], n: usize, m: usize) -> Result<Option<HomologyVector>> {
    let mut rows: IntMatrix = Vec::new();
    let mut rhs = Vec::new();
    for g in gens {
        let a = int_sub(&g.homology_action(HomologyMode::Relative), &int_identity(n + m));
        for row in a {
            let fixed: i64 = row[n..].iter().zip(d).map(|(x, y)| x * y).sum();
            rows.push(row[..n].to_vec());
            rhs.push(-fixed);
        }
    }
    if rows.is_empty() {
        let mut v = vec![0; n];
        v.extend_from_slice(d);
        return Ok(Some(HomologyVector(v)));
    }
    Ok(int_solve(&rows, &rhs, n).map(|(x, _)| {
        let mut v = x;
        v.extend_from_slice(d);
        HomologyVector(v)
    }))
}

/// Relative homology class of an arc or loop word.
pub fn relative_class(w: &Word, p: &SurfacePresentation) -> HomologyVector {
    abelianize(w, p)
}

#[cfg(test)]
mod tests;
