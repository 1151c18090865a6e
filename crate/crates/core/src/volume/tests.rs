use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::laurent::{q, q_frac};
use crate::mapping::parse_twist_word;
use crate::winding::{derive_framing_from_a, pullback_change};
use crate::words::SurfacePresentation;

fn random_character(rng: &mut ChaCha8Rng, p: &SurfacePresentation) -> Character {
    let vals: Vec<Q> = (0..p.rank_generators())
        .map(|_| loop {
            let x = q_frac(rng.gen_range(-9..=9), rng.gen_range(1..=4));
            if x != q(0) && x != q(1) {
                break x;
            }
        })
        .collect();
    Character::numeric(p, &vals).unwrap()
}

fn cofactor(m: &QMatrix) -> Q {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    (0..m.len())
        .map(|j| {
            let minor: QMatrix = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
            let t = &m[0][j] * cofactor(&minor);
            if j % 2 == 0 { t } else { -t }
        })
        .sum()
}

#[test]
fn omega_examples() {
    let p = SurfacePresentation::closed(2);
    let chi = Character::numeric(&p, &[q(3), q(5), q(2), q(7)]).unwrap();
    let w = omega_chart(&chi, GeneratorSymbol::b(2)).unwrap();
    assert_eq!(w.coefficient, q(-1));
    assert_eq!(w.ordered_basis, vec!["a1", "b1", "a2"]);
    let flat = Character::numeric(&p, &[q(3), q(5), q(1), q(7)]).unwrap();
    assert!(matches!(omega_chart(&flat, GeneratorSymbol::b(2)), Err(Error::InadmissibleChart(_))));
    let marked = SurfacePresentation::new(2, 0, 3).unwrap();
    let chi = Character::numeric(&marked, &[q(3), q(5), q(2), q(7)]).unwrap();
    assert_eq!(omega_chart(&chi, GeneratorSymbol::a(1)).unwrap().ordered_basis[..2], ["c1", "c2"]);
}

#[test]
fn charts_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for g in [2, 3] {
        let p = SurfacePresentation::closed(g);
        for _ in 0..5 {
            let chi = random_character(&mut rng, &p);
            for c in p.generators() {
                for s in p.generators() {
                    let m = change_of_charts(&chi, c, s).unwrap();
                    assert_eq!(q_determinant(&m), cofactor(&m));
                    assert!(chart_consistency(&chi, c, s).unwrap(), "{c} {s}");
                }
            }
        }
    }
}

fn with_exponents(t: &GeneratorTable, words: &[&str]) -> Vec<(MappingClass, Vec<i64>)> {
    words
        .iter()
        .map(|w| {
            let f = t.compose(&parse_twist_word(w).unwrap()).unwrap();
            let a = crate::cocycles::determinant_cocycle(&f, None).unwrap();
            let e = a.monomial.unwrap().exponents.iter().map(|&x| i64::from(x)).collect();
            (f, e)
        })
        .collect()
}

#[test]
fn separating_twists_give_trivial_certificate() {
    let t = GeneratorTable::standard(2, 0, 1).unwrap();
    let gens = with_exponents(&t, &["Ts", "Ta1,Ts,Ta1^-1"]);
    let SolveOutcome::Certificate(c) = coboundary_solve(&gens).unwrap() else { panic!("obstructed") };
    assert!(c.v.iter().all(|x| *x == q(0)));
    assert_eq!(c.n, 1);
    assert!(c.validated);
}

#[test]
fn incompatible_twists_are_obstructed() {
    let t = GeneratorTable::standard(2, 0, 1).unwrap();
    let gens = with_exponents(&t, &["Tb1", "Ta1", "Ta2", "Tc1"]);
    let SolveOutcome::Obstruction(o) = coboundary_solve(&gens).unwrap() else { panic!("solved") };
    assert_eq!(o.labels, vec!["Ta1", "Ta2", "Tc1"]);
    assert!(o.rank < o.augmented_rank);
}

#[test]
fn framed_generators_certificate_and_extraction() {
    let t = GeneratorTable::standard(2, 0, 1).unwrap();
    let w = derive_framing_from_a(&t).unwrap();
    let words = ["Ta1", "Tb1", "Ta2", "Tb2", "Ts", "Tc1,Tc1,Push(b1 A1 B1 a2)^-1"];
    let gens = with_exponents(&t, &words);
    let SolveOutcome::Certificate(c) = coboundary_solve(&gens).unwrap() else { panic!("obstructed") };
    let classes: Vec<MappingClass> = gens.iter().map(|(f, _)| f.clone()).collect();
    let framed = n_framing_extract(&c, &w, &t, &classes).unwrap();
    for f in &classes {
        assert!(pullback_change(&framed, &t, f).unwrap().is_zero());
    }
}

#[test]
fn half_integral_translate_doubles_level() {
    let t = GeneratorTable::standard(2, 0, 1).unwrap();
    // (M⁻¹ − 1)v = −2⟨v,c⟩c for T_c², so the exponent c forces ⟨v,c⟩ = −1/2
    let f = t.compose(&parse_twist_word("Tc1,Tc1").unwrap()).unwrap();
    let c: Vec<i64> = t.curve("c1").unwrap().homology.0.clone();
    let SolveOutcome::Certificate(cert) = coboundary_solve(&[(f, c)]).unwrap() else { panic!("obstructed") };
    assert_eq!(cert.n, 2);
    assert!(cert.validated);
    let v2: Vec<Q> = cert.v.iter().map(|x| x * q(2)).collect();
    assert_eq!(v2, cert.integral_class.iter().map(|&x| q(x)).collect::<Vec<_>>());
}
