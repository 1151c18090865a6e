//! Multivariate polynomial GCD over ℚ by recursion on the main variable:
//! content/primitive-part splitting plus a primitive pseudo-remainder sequence.

use super::poly::{poly_divide_exact, LaurentPoly};

/// Makes the lex-leading coefficient 1.
pub(crate) fn monic(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    p.scale(&p.leading_coeff().recip())
}

fn main_variable(p: &LaurentPoly, q: &LaurentPoly) -> Option<usize> {
    (0..p.nvars()).find(|&v| p.degree_in(v) > 0 || q.degree_in(v) > 0)
}

fn coefficients(p: &LaurentPoly, v: usize) -> Vec<LaurentPoly> {
    (0..=p.degree_in(v)).map(|k| p.coeff_in(v, k)).filter(|c| !c.is_zero()).collect()
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
fn content(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut g = LaurentPoly::zero(p.nvars());
    for c in coefficients(p, v) {
        g = poly_gcd(&g, &c);
        if g.as_constant().is_some() && !g.is_zero() {
            return LaurentPoly::one(p.nvars());
        }
    }
    g
}

fn exact(p: &LaurentPoly, d: &LaurentPoly) -> LaurentPoly {
    poly_divide_exact(p, d).expect("exact division inside gcd")
}

fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = b.degree_in(v);
    let lb = b.coeff_in(v, db);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeff_in(v, dr);
        let xs = LaurentPoly::var_pow(r.nvars(), v, dr - db);
        r = &(&lb * &r) - &(&(&lr * &xs) * b);
    }
    r
}

/// GCD of two ordinary polynomials (non-negative exponents), monic in lex order.
pub fn poly_gcd(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return monic(q);
    }
    if q.is_zero() {
        return monic(p);
    }
    if p.as_constant().is_some() || q.as_constant().is_some() {
        return LaurentPoly::one(p.nvars());
    }
    let v = match main_variable(p, q) {
        Some(v) => v,
        None => return LaurentPoly::one(p.nvars()),
    };
    if p.degree_in(v) == 0 {
        return poly_gcd(p, &content(q, v));
    }
    if q.degree_in(v) == 0 {
        return poly_gcd(&content(p, v), q);
    }
    let cp = content(p, v);
    let cq = content(q, v);
    let cg = poly_gcd(&cp, &cq);
    let mut a = exact(p, &cp);
    let mut b = exact(q, &cq);
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        a = b;
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            // remainder free of v: the primitive parts are coprime in v
            a = LaurentPoly::one(p.nvars());
            break;
        }
        let cr = content(&r, v);
        b = monic(&exact(&r, &cr));
    }
    let pa = if a.degree_in(v) > 0 { exact(&a, &content(&a, v)) } else { LaurentPoly::one(p.nvars()) };
    monic(&(&cg * &pa))
}
