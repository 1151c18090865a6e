use super::character::{fox, Character};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RationalFn};
use crate::words::{GenKind, GeneratorSymbol, SurfacePresentation, Word};

/// A twisted cocycle `λ ∈ Z¹_χ`, determined by its values on the free
/// generators and, for based cocycles, on the arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedCocycle {
    pub chi: Character,
    pub gen_values: Vec<RationalFn>,
    pub arc_values: Option<Vec<RationalFn>>,
}

/// Chart basis: the cocycles dual to the retained generators (and arcs).
#[derive(Clone, Debug)]
pub struct TwistedCocycleBasis {
    pub chi: Character,
    pub dropped: Option<GeneratorSymbol>,
    pub retained: Vec<usize>,
    pub cocycles: Vec<TwistedCocycle>,
}

/// Coefficients `w_k` of the cocycle condition `Σ w_k λ(x_k) = 0`:
/// `w(a_i) = 1 − χ(b_i)` and `w(b_i) = −(1 − χ(a_i))`.
pub fn constraint_weights(chi: &Character) -> Result<Vec<LaurentPoly>> {
    let p = &chi.presentation;
    if !p.is_closed() {
        return Err(Error::NotClosed);
    }
    let one = LaurentPoly::one(chi.nvars());
    let mut w = Vec::with_capacity(2 * p.genus);
    for i in 1..=p.genus {
        w.push(&one - &chi.of_generator(GeneratorSymbol::b(i)));
        w.push(&chi.of_generator(GeneratorSymbol::a(i)) - &one);
    }
    Ok(w)
}

/// Position of a chart generator, or `InadmissibleChart` for non-handle symbols.
pub fn chart_position(p: &SurfacePresentation, c: GeneratorSymbol) -> Result<usize> {
    if !matches!(c.kind, GenKind::HandleA | GenKind::HandleB) || c.index == 0 || c.index > p.genus {
        return Err(Error::InadmissibleChart(format!("{} is not a handle generator", c.letter())));
    }
    Ok(p.generator_position(c.letter()).unwrap())
}

/// The default chart drops `b_g`.
pub fn default_chart(p: &SurfacePresentation) -> GeneratorSymbol {
    GeneratorSymbol::b(p.genus)
}

/// Whether `χ(dual(c)) ≠ 1`, i.e. whether the chart weight is nonzero.
pub fn chart_admissible(chi: &Character, c: GeneratorSymbol) -> Result<bool> {
    let k = chart_position(&chi.presentation, c)?;
    Ok(!constraint_weights(chi)?[k].is_zero())
}

impl TwistedCocycle {
    pub fn nvars(&self) -> usize {
        self.chi.nvars()
    }

    pub fn is_based(&self) -> bool {
        self.arc_values.is_some()
    }
}

/// `λ(w)` by the cocycle recursion `λ(uv) = λ(u) + χ(u)λ(v)`.
pub fn evaluate_cocycle(lambda: &TwistedCocycle, w: &Word) -> Result<RationalFn> {
    if w.contains_arc() && lambda.arc_values.is_none() {
        return Err(Error::ArcOnUnbasedCocycle);
    }
    lambda.chi.presentation.check_word(w, true)?;
    let fx = fox(&lambda.chi, w);
    let mut acc = RationalFn::zero(lambda.nvars());
    for (c, v) in fx.gens.iter().zip(&lambda.gen_values) {
        if !c.is_zero() {
            acc = acc.add(&RationalFn::from_poly(c.clone()).mul(v));
        }
    }
    if let Some(arcs) = &lambda.arc_values {
        for (c, v) in fx.arcs.iter().zip(arcs) {
            if !c.is_zero() {
                acc = acc.add(&RationalFn::from_poly(c.clone()).mul(v));
            }
        }
    }
    Ok(acc.normalize())
}

/// Chart basis of `Z¹_χ`. Closed surfaces give `2g − 1` cocycles with the
/// dropped generator's value solved from the cocycle condition; punctured
/// surfaces give the free dual basis. With marked points every cocycle is
/// based (zero on arcs) and the arc cocycles `ξ_i` are appended.
pub fn standard_basis(chi: &Character, dropped: GeneratorSymbol) -> Result<TwistedCocycleBasis> {
    let p = chi.presentation;
    let nv = chi.nvars();
    let rank = p.rank_generators();
    let based = p.arc_count() > 0;
    let zero_arcs = || based.then(|| vec![RationalFn::zero(nv); p.arc_count()]);
    let mut cocycles = Vec::new();
    let (dropped, retained) = if p.is_closed() {
        let c = chart_position(&p, dropped)?;
        let w = constraint_weights(chi)?;
        if w[c].is_zero() {
            return Err(Error::InadmissibleChart(format!(
                "χ({}) = 1",
                dropped.dual().map(|d| d.letter().to_string()).unwrap_or_default()
            )));
        }
        let retained: Vec<usize> = (0..rank).filter(|&k| k != c).collect();
        for &i in &retained {
            let mut vals = vec![RationalFn::zero(nv); rank];
            vals[i] = RationalFn::one(nv);
            vals[c] = RationalFn::new(-&w[i], w[c].clone())?.normalize();
            cocycles.push(TwistedCocycle { chi: chi.clone(), gen_values: vals, arc_values: zero_arcs() });
        }
        (Some(dropped), retained)
    } else {
        for i in 0..rank {
            let mut vals = vec![RationalFn::zero(nv); rank];
            vals[i] = RationalFn::one(nv);
            cocycles.push(TwistedCocycle { chi: chi.clone(), gen_values: vals, arc_values: zero_arcs() });
        }
        (None, (0..rank).collect())
    };
    for i in 0..p.arc_count() {
        let mut arcs = vec![RationalFn::zero(nv); p.arc_count()];
        arcs[i] = RationalFn::one(nv);
        cocycles.push(TwistedCocycle {
            chi: chi.clone(),
            gen_values: vec![RationalFn::zero(nv); rank],
            arc_values: Some(arcs),
        });
    }
    Ok(TwistedCocycleBasis { chi: chi.clone(), dropped, retained, cocycles })
}

/// `δ(v)(γ) = (1 − χ(γ))·v`.
pub fn coboundary_cocycle(v: &RationalFn, chi: &Character) -> TwistedCocycle {
    let one = LaurentPoly::one(chi.nvars());
    let gen_values = chi
        .values
        .iter()
        .map(|x| RationalFn::from_poly(&one - x).mul(v).normalize())
        .collect();
    let arc_values = (chi.presentation.arc_count() > 0).then(|| {
        chi.arc_values.iter().map(|x| RationalFn::from_poly(&one - x).mul(v).normalize()).collect()
    });
    TwistedCocycle { chi: chi.clone(), gen_values, arc_values }
}

/// The based extension with `λ(c_i) = a_i` and `χ̃(c_i) = b_i`.
pub fn extend_to_based(lambda: &TwistedCocycle, a: Vec<RationalFn>, b: Vec<LaurentPoly>) -> Result<TwistedCocycle> {
    if lambda.is_based() {
        return Err(Error::InvalidArgument("cocycle is already based".into()));
    }
    let n = lambda.chi.presentation.arc_count();
    if a.len() != n || b.len() != n {
        return Err(Error::InvalidArgument(format!("expected {n} arc values")));
    }
    if b.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidArgument("arc character values must be nonzero".into()));
    }
    let chi = lambda.chi.clone().with_arc_values(b)?;
    Ok(TwistedCocycle { chi, gen_values: lambda.gen_values.clone(), arc_values: Some(a) })
}

/// Whether the cocycle evaluates to zero on the relator (closed case).
pub fn satisfies_relator(lambda: &TwistedCocycle) -> Result<bool> {
    let r = crate::words::commutator_relator(&lambda.chi.presentation)?;
    Ok(evaluate_cocycle(lambda, &r)?.is_zero())
}
