//! Exact and pseudo division.

use super::Polynomial;

/// Quotient `p / d` if `d` divides `p` exactly, else None.
pub fn divides(d: &Polynomial, p: &Polynomial) -> Option<Polynomial> {
    assert!(!d.is_zero(), "division by zero polynomial");
    let mut r = p.clone();
    let mut q = Polynomial::zero(p.ctx());
    let (dm, dc) = {
        let (m, c) = d.leading().unwrap();
        (m.clone(), c.clone())
    };
    while !r.is_zero() {
        let (rm, rc) = r.leading().unwrap();
        // Monomial divisibility of the leading terms is necessary: if d | r
        // then lt(d) | lt(r) under any monomial order.
        let mut e = rm.0.clone();
        for (ei, di) in e.iter_mut().zip(dm.0.iter()) {
            if *ei < *di {
                return None;
            }
            *ei -= *di;
        }
        let t_m = super::Monomial(e);
        let t_c = rc / &dc;
        r = r.sub(&d.mul_term(&t_m, &t_c));
        q.add_term(t_m, t_c);
    }
    Some(q)
}

/// Exact division; panics if not divisible (caller guarantees divisibility).
pub fn exact_div(p: &Polynomial, d: &Polynomial) -> Polynomial {
    divides(d, p).expect("exact division failed")
}

/// Pseudo-remainder of f by g with respect to indeterminate `v`:
/// `lc_v(g)^(deg_v f - deg_v g + 1) * f = q*g + r` with `deg_v r < deg_v g`.
pub fn pseudo_rem(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let dg = g.degree_in(v);
    assert!(dg >= 0, "pseudo division by zero");
    let df = f.degree_in(v);
    if df < dg {
        return f.clone();
    }
    let lc_g = g.leading_coefficient_wrt(v);
    let mut r = f.clone();
    let mut steps = 0i64;
    let e = df - dg + 1;
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lc_r = r.leading_coefficient_wrt(v);
        // r = lc_g * r - lc_r * v^(dr-dg) * g
        let shift = Polynomial::var(f.ctx(), v).pow((dr - dg) as u32);
        r = r.mul(&lc_g).sub(&g.mul(&lc_r).mul(&shift));
        steps += 1;
        debug_assert!(r.is_zero() || r.degree_in(v) < dr);
    }
    // Match the standard exponent exactly so subresultant corrections divide.
    for _ in steps..e {
        r = r.mul(&lc_g);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::poly::parse_polynomial;

    fn p(src: &str) -> Polynomial {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        parse_polynomial(&ctx, src, 1).unwrap()
    }

    #[test]
    fn exact_division_inverts_multiplication() {
        let f = p("x^2 + a*y - 3");
        let g = p("x*y - a + 1");
        assert_eq!(divides(&g, &f.mul(&g)), Some(f.clone()));
        assert_eq!(divides(&f, &f), Some(p("1")));
        assert!(divides(&g, &f).is_none());
    }

    #[test]
    fn nondivisible_with_divisible_leading_term() {
        // lt(g) divides lt(f) but g does not divide f.
        let f = p("x^3 + 1");
        let g = p("x + 1");
        assert!(divides(&g, &f).is_some()); // x^3+1 = (x+1)(x^2-x+1)
        assert!(divides(&g, &p("x^3 + 2")).is_none());
    }

    #[test]
    fn pseudo_remainder_identity() {
        // prem(f, g, x): lc_g^(df-dg+1) f ≡ r (mod g), deg_x r < deg_x g.
        let f = p("a*x^3 + y*x + 1");
        let g = p("y*x^2 + x + a");
        let r = pseudo_rem(&f, &g, 1);
        assert!(r.degree_in(1) < g.degree_in(1));
        // Verify lc^e*f - r is divisible by g.
        let lc = g.leading_coefficient_wrt(1);
        let e = (f.degree_in(1) - g.degree_in(1) + 1) as u32;
        let lhs = f.mul(&lc.pow(e)).sub(&r);
        assert!(divides(&g, &lhs).is_some());
    }

    #[test]
    fn pseudo_rem_degree_drop_pads_factor() {
        // When the loop finishes early the lc_g^e factor is still exact.
        let f = p("x^2");
        let g = p("a*x");
        let r = pseudo_rem(&f, &g, 1);
        assert!(r.is_zero());
        let f2 = p("x^2 + 1");
        let r2 = pseudo_rem(&f2, &g, 1);
        // a^2*(x^2+1) mod a*x = a^2
        assert_eq!(r2, p("a^2"));
    }
}
