use super::Poly;

/// Greatest common divisor of two polynomials over the rationals.
///
/// The result is primitive with positive leading coefficient; `gcd(0, 0)` is
/// zero. Works recursively: content/primitive split over the main variable,
/// then a primitive pseudo-remainder sequence.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.vars(), b.vars(), "variable lists differ");
    gcd_rec(a, b)
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.vars());
    }
    let (pa, pb) = (a.primitive(), b.primitive());
    if pa == pb {
        return pa;
    }
    let ua = a.used_vars();
    let ub = b.used_vars();
    let v = (0..ua.len()).rev().find(|&i| ua[i] || ub[i]).expect("non-constant");
    if !ua[v] {
        return gcd_rec(a, &content_in(b, v));
    }
    if !ub[v] {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = prs(pa, pb, v);
    (&c * &g).primitive()
}

/// Content with respect to `v`: gcd of the coefficients of powers of `v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(p.vars());
    for c in p.coeffs_in(v).iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return Poly::one(p.vars());
        }
    }
    g
}

fn primitive_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    p.exact_div(&c).expect("content divides").primitive()
}

fn prem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.coeffs_in(v).pop().expect("non-zero divisor");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v).pop().expect("non-zero");
        r = &(&lb * &r) - &(&lr * &b.shift_in(v, dr - db));
    }
    r
}

fn prs(a: Poly, b: Poly, v: usize) -> Poly {
    let (mut r0, mut r1) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = prem(&r0, &r1, v);
        if r.is_zero() {
            return primitive_in(&r1, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one(r.vars());
        }
        r0 = r1;
        r1 = primitive_in(&r, v);
    }
}
