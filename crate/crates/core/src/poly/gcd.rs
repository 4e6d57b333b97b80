//! Multivariate GCD.
//!
//! Strategy: recursive content/primitive-part reduction on a main
//! indeterminate; primitive parts go to a modular univariate gcd, an
//! evaluation/interpolation bivariate gcd, or the subresultant PRS for three
//! or more active indeterminates. Results are primitive with positive leading
//! coefficient; gcd(p, 0) is the canonical form of p; gcd(0, 0) = 0.

use super::{divides, exact_div, pseudo_rem, Polynomial};
use crate::rat::Rational;
use crate::zpoly::{gcd_univ_int, interpolate_rational, ZPoly};
use num::{BigInt, One, Zero};

pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.canonical();
    }
    if b.is_zero() {
        return a.canonical();
    }
    let one = Polynomial::constant(a.ctx(), Rational::one());
    if a.is_constant() || b.is_constant() {
        return one;
    }
    let a = a.canonical();
    let b = b.canonical();
    if a == b {
        return a;
    }
    let act_a = a.active_indets();
    let act_b = b.active_indets();
    let common: Vec<usize> = act_a.iter().copied().filter(|i| act_b.contains(i)).collect();
    let Some(&v) = common.last() else {
        return one;
    };
    let ca = content_wrt(&a, v);
    let cb = content_wrt(&b, v);
    let cont_gcd = gcd(&ca, &cb);
    let pa = exact_div(&a, &ca);
    let pb = exact_div(&b, &cb);
    let g = gcd_pp(&pa.canonical(), &pb.canonical(), v);
    cont_gcd.mul(&g).canonical()
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
    let mut it = polys.into_iter();
    let Some(first) = it.next() else {
        panic!("gcd of empty collection");
    };
    let mut acc = first.canonical();
    for p in it {
        if acc.is_one() {
            return acc;
        }
        acc = gcd(&acc, p);
    }
    acc
}

/// GCD of the coefficients of p as a polynomial in `v` (canonical form; 1 for
/// polynomials with coprime coefficients, 0 only for the zero polynomial).
pub fn content_wrt(p: &Polynomial, v: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    gcd_many(&p.coefficients_wrt(v))
}

pub fn primitive_part_wrt(p: &Polynomial, v: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    exact_div(p, &content_wrt(p, v)).canonical()
}

// Both inputs primitive w.r.t. v, canonical, deg_v >= 1.
fn gcd_pp(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let one = Polynomial::constant(a.ctx(), Rational::one());
    if a.degree_in(v) < 1 || b.degree_in(v) < 1 {
        return one;
    }
    let mut active = a.active_indets();
    for i in b.active_indets() {
        if !active.contains(&i) {
            active.push(i);
        }
    }
    match active.len() {
        1 => gcd_univariate(a, b, v),
        2 => {
            let w = *active.iter().find(|&&i| i != v).unwrap();
            gcd_bivariate(a, b, v, w).unwrap_or_else(|| gcd_prs(a, b, v))
        }
        _ => gcd_prs(a, b, v),
    }
}

pub(crate) fn to_zpoly(p: &Polynomial, v: usize) -> ZPoly {
    let coeffs = p.coefficients_wrt(v);
    ZPoly::new(
        coeffs
            .iter()
            .map(|c| {
                let r = c.as_constant().expect("not univariate");
                assert!(r.denom().is_one(), "not integer-normalized");
                r.numer().clone()
            })
            .collect(),
    )
}

pub(crate) fn from_zpoly(ctx: &crate::context::Ctx, z: &ZPoly, v: usize) -> Polynomial {
    let coeffs: Vec<Polynomial> = z
        .c
        .iter()
        .map(|c| Polynomial::constant(ctx, Rational::from_integer(c.clone())))
        .collect();
    Polynomial::from_coefficients_wrt(ctx, v, &coeffs)
}

fn gcd_univariate(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let g = gcd_univ_int(&to_zpoly(a, v), &to_zpoly(b, v));
    from_zpoly(a.ctx(), &g, v).canonical()
}

// Dense v-coefficient vectors over Z[w].
fn to_biv(p: &Polynomial, v: usize, w: usize) -> Vec<ZPoly> {
    p.coefficients_wrt(v)
        .iter()
        .map(|c| to_zpoly(c, w))
        .collect()
}

fn eval_biv(rows: &[ZPoly], beta: &BigInt) -> ZPoly {
    ZPoly::new(rows.iter().map(|r| r.eval(beta)).collect())
}

/// Brown-style evaluation/interpolation gcd for exactly two active
/// indeterminates. None = give up (caller falls back to PRS).
fn gcd_bivariate(a: &Polynomial, b: &Polynomial, v: usize, w: usize) -> Option<Polynomial> {
    let ctx = a.ctx();
    let av = to_biv(a, v, w);
    let bv = to_biv(b, v, w);
    let g_lc = gcd_univ_int(av.last().unwrap(), bv.last().unwrap());
    let points_needed = (a.degree_in(w).min(b.degree_in(w)) + g_lc.deg() + 1) as usize;
    let mut dmin = a.degree_in(v).min(b.degree_in(v));
    let mut pts: Vec<Rational> = Vec::new();
    let mut vals: Vec<Vec<Rational>> = Vec::new(); // per point, v-coefficients
    let mut beta_iter = (0i64..).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] });
    let mut attempts = 0usize;
    loop {
        attempts += 1;
        if attempts > 8 * points_needed + 64 {
            return None;
        }
        let beta = BigInt::from(beta_iter.next().unwrap());
        if av.last().unwrap().eval(&beta).is_zero() || bv.last().unwrap().eval(&beta).is_zero() {
            continue;
        }
        let ga = eval_biv(&av, &beta);
        let gb = eval_biv(&bv, &beta);
        let g = gcd_univ_int(&ga, &gb);
        let dg = g.deg();
        if dg == 0 {
            return Some(Polynomial::constant(ctx, Rational::one()));
        }
        if dg > dmin {
            continue; // unlucky evaluation point
        }
        if dg < dmin {
            dmin = dg;
            pts.clear();
            vals.clear();
        }
        let scale = Rational::new(g_lc.eval(&beta), g.lc());
        let mut vrow = vec![Rational::zero(); dmin as usize + 1];
        for (i, c) in g.c.iter().enumerate() {
            vrow[i] = Rational::from_integer(c.clone()) * &scale;
        }
        pts.push(Rational::from_integer(beta));
        vals.push(vrow);
        if pts.len() < points_needed {
            continue;
        }
        // Interpolate each v-coefficient in w, assemble, verify.
        let mut coeffs: Vec<Polynomial> = Vec::with_capacity(dmin as usize + 1);
        for i in 0..=(dmin as usize) {
            let col: Vec<Rational> = vals.iter().map(|r| r[i].clone()).collect();
            let wc = interpolate_rational(&pts, &col);
            let wpolys: Vec<Polynomial> = wc
                .iter()
                .map(|c| Polynomial::constant(ctx, c.clone()))
                .collect();
            coeffs.push(Polynomial::from_coefficients_wrt(ctx, w, &wpolys));
        }
        let cand = Polynomial::from_coefficients_wrt(ctx, v, &coeffs).canonical();
        if !cand.is_zero() && divides(&cand, a).is_some() && divides(&cand, b).is_some() {
            return Some(cand);
        }
        pts.clear();
        vals.clear();
    }
}

// Subresultant pseudo-remainder sequence.
fn gcd_prs(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let ctx = a.ctx();
    let one = Polynomial::constant(ctx, Rational::one());
    let (mut big, mut small) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = (big.degree_in(v) - small.degree_in(v)) as u32;
        let r = pseudo_rem(&big, &small, v);
        if r.is_zero() {
            return primitive_part_wrt(&small, v);
        }
        if r.degree_in(v) == 0 {
            return one;
        }
        big = small;
        small = exact_div(&r, &g.mul(&h.pow(delta)));
        g = big.leading_coefficient_wrt(v);
        h = if delta == 0 {
            h
        } else {
            exact_div(&g.pow(delta), &h.pow(delta - 1))
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::poly::parse_polynomial;

    fn ctx3() -> crate::context::Ctx {
        Context::new(&["a", "b"], &["x", "y"]).unwrap()
    }

    fn p(src: &str) -> Polynomial {
        parse_polynomial(&ctx3(), src, 1).unwrap()
    }

    #[test]
    fn gcd_zero_rules() {
        let f = p("2*x^2 - 2");
        let z = Polynomial::zero(&ctx3());
        assert_eq!(gcd(&f, &z), p("x^2 - 1"));
        assert_eq!(gcd(&z, &f), p("x^2 - 1"));
        assert_eq!(gcd(&z, &z), z);
    }

    #[test]
    fn gcd_univariate_cases() {
        let f = p("x^2 - 1").mul(&p("x + 3"));
        let g = p("x^2 - 1").mul(&p("x - 5"));
        assert_eq!(gcd(&f, &g), p("x^2 - 1"));
        assert_eq!(gcd(&p("x + 1"), &p("x - 1")), p("1"));
        // Constant inputs are units.
        assert_eq!(gcd(&p("4"), &p("6")), p("1"));
    }

    #[test]
    fn gcd_bivariate_with_parameter_lc() {
        // common factor with nonconstant leading coefficient in main var
        let c = p("a*x^2 + a - 1");
        let f = c.mul(&p("x + a"));
        let g = c.mul(&p("a*x - 3"));
        assert_eq!(gcd(&f, &g), c.canonical());
    }

    #[test]
    fn gcd_trivariate_prs() {
        let c = p("x*y + a*b + 1");
        let f = c.mul(&p("x^2 + y"));
        let g = c.mul(&p("y^2 - a"));
        assert_eq!(gcd(&f, &g), c.canonical());
        assert_eq!(gcd(&p("x*y + 1"), &p("x + y")), p("1"));
    }

    #[test]
    fn gcd_output_is_canonical() {
        // Result is primitive with positive leading coefficient regardless of
        // input scaling.
        let c = p("x - y");
        let f = c.mul(&p("6*x + 2")).mul_rational(&crate::rat::rat(-3, 7));
        let g = c.mul(&p("4*y - 2")).mul_rational(&crate::rat::rat(5, 11));
        assert_eq!(gcd(&f, &g), p("x - y"));
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p("a*x^2 + a*x").mul(&p("y + 1"));
        let c = content_wrt(&f, 2); // wrt x
        assert_eq!(c, p("a*y + a"));
        assert_eq!(primitive_part_wrt(&f, 2), p("x^2 + x"));
        // Disjoint actives are coprime.
        assert_eq!(gcd(&p("x + 1"), &p("y - 2")), p("1"));
    }
}
