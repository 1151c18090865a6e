use serde::Serialize;

use super::{HomologyMode, MappingClass};
use crate::cocycles::{constraint_weights, fox, Character};
use crate::error::{Error, Result};
use crate::words::{commutator_relator, cyclic_reduce, intersection, GeneratorSymbol, HomologyVector, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub relator_ok: bool,
    pub symplectic_ok: bool,
    pub cocycle_ok: bool,
    pub arcs_ok: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.relator_ok && self.symplectic_ok && self.cocycle_ok && self.arcs_ok
    }
}

fn is_conjugate_core(image: &Word, target: &Word) -> bool {
    let (core, _) = cyclic_reduce(image);
    let (t, _) = cyclic_reduce(target);
    core.is_rotation_of(&t)
}

/// Runs the relator, symplectic, cocycle-annihilation and arc checks.
pub fn validate_mapping_class(f: &MappingClass) -> Result<ValidationReport> {
    let p = &f.presentation;
    let relator_ok = if p.is_closed() {
        let r = commutator_relator(p)?;
        is_conjugate_core(&f.apply(&r), &r)
    } else {
        (1..=p.punctures).all(|j| {
            let d = p.expand(&Word::letter(GeneratorSymbol::d(j).letter()));
            let img = f.apply(&d);
            (1..=p.punctures).any(|k| is_conjugate_core(&img, &p.expand(&Word::letter(GeneratorSymbol::d(k).letter()))))
        })
    };

    let m = f.homology_action(HomologyMode::Absolute);
    let n = p.homology_rank();
    let col = |j: usize| HomologyVector((0..n).map(|i| m[i][j]).collect());
    let symplectic_ok = (0..n).all(|i| {
        (0..n).all(|j| {
            let ei = HomologyVector::unit(n, i);
            let ej = HomologyVector::unit(n, j);
            intersection(&col(i), &col(j), p.genus) == intersection(&ei, &ej, p.genus)
        })
    });

    let cocycle_ok = if p.is_closed() && relator_ok {
        let chi = Character::symbolic(p);
        let w = constraint_weights(&chi)?;
        let c = n - 1;
        let img = f.apply(&commutator_relator(p)?);
        let fx = fox(&chi, &img);
        (0..n).filter(|&i| i != c).all(|i| (&(&w[c] * &fx.gens[i]) - &(&w[i] * &fx.gens[c])).is_zero())
    } else {
        relator_ok
    };

    let arcs_ok = (1..=p.arc_count()).all(|i| {
        let c = Word::letter(GeneratorSymbol::c(i).letter());
        !f.apply(&c).mul(&c.inverse()).contains_arc()
    });

    let report = ValidationReport { relator_ok, symplectic_ok, cocycle_ok, arcs_ok };
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::InvalidMappingClass(format!("{}: {:?}", f.label, report)))
    }
}
