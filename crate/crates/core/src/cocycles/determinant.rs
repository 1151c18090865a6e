use super::basis::{chart_position, constraint_weights, default_chart};
use super::character::{fox, Character};
use crate::error::{Error, Result};
use crate::laurent::{determinant, LaurentPoly, MonomialForm, PolyMatrix, RationalFn};
use crate::mapping::{HomologyMode, MappingClass};
use crate::words::{GenKind, GeneratorSymbol, Word};

/// Value of the determinant cocycle `A(f, χ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeterminantCocycleValue {
    pub value: RationalFn,
    pub monomial: Option<MonomialForm>,
    /// Determinant of the generator block.
    pub abs_part: RationalFn,
    /// Product of `f_*χ(η_i)` over the arc loops `η_i = f(c_i)c_i⁻¹`.
    pub rel_part: LaurentPoly,
    /// Generator dropped by the chart (closed surfaces only).
    pub chart: Option<GeneratorSymbol>,
    pub pushed: Character,
}

/// Fox Jacobian of `f` over the character `ψ`: entry `(i, j)` is the
/// coefficient of generator `i` in `f(x_j)`. Rows and columns list free
/// generators, then arcs.
pub fn action_matrix(f: &MappingClass, psi: &Character) -> PolyMatrix {
    let p = &f.presentation;
    let n = p.rank_generators();
    let cols: Vec<_> = f.images.iter().map(|w| fox(psi, w)).collect();
    (0..n + p.arc_count())
        .map(|i| {
            cols.iter()
                .map(|fx| if i < n { fx.gens[i].clone() } else { fx.arcs[i - n].clone() })
                .collect()
        })
        .collect()
}

/// Arc loops `η_i = f(c_i)·c_i⁻¹`; fails if an endpoint is moved.
pub fn arc_loops(f: &MappingClass) -> Result<Vec<Word>> {
    let p = &f.presentation;
    (1..=p.arc_count())
        .map(|i| {
            let c = GeneratorSymbol::c(i).letter();
            let eta = f.image_of(c).mul(&Word::letter(c.inverse()));
            if eta.contains_arc() {
                Err(Error::EndpointPermuted(i))
            } else {
                Ok(eta)
            }
        })
        .collect()
}

/// `∏ ψ(η_i)`.
pub fn relative_factor(f: &MappingClass, psi: &Character) -> Result<LaurentPoly> {
    Ok(arc_loops(f)?.iter().fold(LaurentPoly::one(psi.nvars()), |acc, eta| &acc * &psi.of_word(eta)))
}

/// `A(f, χ)` for the symbolic character.
pub fn determinant_cocycle(f: &MappingClass, chart: Option<GeneratorSymbol>) -> Result<DeterminantCocycleValue> {
    determinant_cocycle_at(f, &Character::symbolic(&f.presentation), chart)
}

/// `A(f, χ)` at an arbitrary character. On closed surfaces an inadmissible
/// requested chart falls back to the first admissible handle generator.
pub fn determinant_cocycle_at(
    f: &MappingClass,
    chi: &Character,
    chart: Option<GeneratorSymbol>,
) -> Result<DeterminantCocycleValue> {
    let p = &f.presentation;
    if chi.presentation != *p {
        return Err(Error::InvalidArgument("character and mapping class live on different surfaces".into()));
    }
    let nv = chi.nvars();
    let minv = f.inverse_homology_action(HomologyMode::Absolute)?;
    let mut psi = chi.pushforward(&minv);
    let loops = arc_loops(f)?;
    psi.arc_values = loops
        .iter()
        .zip(&chi.arc_values)
        .map(|(eta, b)| b * &psi.of_word(eta).monomial_inverse().expect("character values are monomials"))
        .collect();
    let rel_part = loops.iter().fold(LaurentPoly::one(nv), |acc, eta| &acc * &psi.of_word(eta));
    let jac = action_matrix(f, &psi);
    let n = p.rank_generators();
    let m = p.arc_count();

    let (value, abs_part, chart) = if p.is_closed() {
        let c = pick_chart(chi, &psi, chart)?;
        let (value, abs_part) = closed_determinant(&jac, chi, &psi, c, n, m)?;
        (value, abs_part, Some(c))
    } else {
        let abs_block: PolyMatrix = jac[..n].iter().map(|r| r[..n].to_vec()).collect();
        let abs_part = RationalFn::from_poly(determinant(&abs_block, nv)?);
        let full = RationalFn::from_poly(determinant(&jac, nv)?);
        (full, abs_part, None)
    };
    let value = value.normalize();
    Ok(DeterminantCocycleValue {
        monomial: value.as_monomial(),
        value,
        abs_part: abs_part.normalize(),
        rel_part,
        chart,
        pushed: psi,
    })
}

fn pick_chart(chi: &Character, psi: &Character, requested: Option<GeneratorSymbol>) -> Result<GeneratorSymbol> {
    let p = &chi.presentation;
    let wc = constraint_weights(chi)?;
    let wp = constraint_weights(psi)?;
    let ok = |c: GeneratorSymbol| -> Result<bool> {
        let k = chart_position(p, c)?;
        Ok(!wc[k].is_zero() && !wp[k].is_zero())
    };
    let first = requested.unwrap_or_else(|| default_chart(p));
    if ok(first)? {
        return Ok(first);
    }
    for s in p.generators().into_iter().rev() {
        if ok(s)? {
            return Ok(s);
        }
    }
    Err(Error::InadmissibleChart("character is trivial on every handle generator".into()))
}

/// Closed case. Rows of the generator block are scaled by `w_c(ψ)` to keep
/// entries polynomial; the result is
/// `ε·det / ((1 − χ(d))(1 − ψ(d))^{n−1})` with `d` dual to the chart.
fn closed_determinant(
    jac: &PolyMatrix,
    chi: &Character,
    psi: &Character,
    c: GeneratorSymbol,
    n: usize,
    m: usize,
) -> Result<(RationalFn, RationalFn)> {
    let p = &chi.presentation;
    let nv = chi.nvars();
    let ci = chart_position(p, c)?;
    let w = constraint_weights(psi)?;
    let retained: Vec<usize> = (0..n).filter(|&k| k != ci).collect();
    let cols: Vec<usize> = retained.iter().copied().chain(n..n + m).collect();
    let mut full: PolyMatrix = Vec::with_capacity(retained.len() + m);
    for &i in &retained {
        full.push(cols.iter().map(|&j| &(&w[ci] * &jac[i][j]) - &(&w[i] * &jac[ci][j])).collect());
    }
    for a in n..n + m {
        full.push(cols.iter().map(|&j| jac[a][j].clone()).collect());
    }
    let r = retained.len();
    let abs_block: PolyMatrix = full[..r].iter().map(|row| row[..r].to_vec()).collect();

    let d = c.dual().expect("handle generator");
    let one = LaurentPoly::one(nv);
    let mut den = &one - &chi.of_generator(d);
    let dpsi = &one - &psi.of_generator(d);
    for _ in 1..r {
        den = &den * &dpsi;
    }
    let eps = if c.kind == GenKind::HandleA { 1 } else { -1 };
    let finish = |det: LaurentPoly| -> Result<RationalFn> {
        let num = if eps == 1 { det } else { -&det };
        RationalFn::new(num, den.clone())
    };
    let value = finish(determinant(&full, nv)?)?;
    let abs_part = finish(determinant(&abs_block, nv)?)?;
    Ok((value, abs_part))
}
