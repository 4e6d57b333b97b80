//! Real-root isolation for exact univariate polynomials.
//!
//! Bisection with Descartes bounds on the transformed interval (0,1).
//! All endpoints are rationals; a point interval marks an exact root hit
//! by a bisection midpoint. Roots coinciding with window edges are excluded.

use crate::factor::square_free;
use crate::poly::Polynomial;
use crate::rat::{sign_of, Rational};
use crate::regions::interval::Iv;
use crate::zpoly::ZPoly;
use num::{BigInt, Integer, One, Signed, Zero};
use std::collections::BTreeMap;

/// Isolating intervals for the distinct real roots of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootIsolation {
    /// Square-free part that was isolated; refinement must test against this.
    pub poly: Polynomial,
    pub var: usize,
    /// Sorted and disjoint; each contains exactly one root. Open intervals
    /// have nonzero endpoint values, points are exact roots.
    pub intervals: Vec<Iv>,
}

/// Isolates every real root of `p`, which must be univariate in `v`.
pub fn isolate_real_roots(p: &Polynomial, v: usize) -> RootIsolation {
    let sf = square_free_part(p, v);
    if sf.degree_in(v) <= 0 {
        return RootIsolation { poly: sf, var: v, intervals: vec![] };
    }
    let z = to_z(&sf, v);
    let b = cauchy_power_of_two(&z);
    let zero = Rational::zero();
    let mut intervals = isolate_window_z(&z, &-b.clone(), &zero);
    if z.c[0].is_zero() {
        intervals.push(Iv::point(zero.clone()));
    }
    intervals.extend(isolate_window_z(&z, &zero, &b));
    RootIsolation { poly: sf, var: v, intervals }
}

/// Isolates the roots lying strictly inside the open window.
pub fn isolate_roots_in(p: &Polynomial, v: usize, window: &Iv) -> RootIsolation {
    assert!(window.lo < window.hi, "empty window");
    let sf = square_free_part(p, v);
    if sf.degree_in(v) <= 0 {
        return RootIsolation { poly: sf, var: v, intervals: vec![] };
    }
    let z = to_z(&sf, v);
    let intervals = isolate_window_z(&z, &window.lo, &window.hi);
    RootIsolation { poly: sf, var: v, intervals }
}

/// One bisection step toward the root inside `iv`; `p` must be the
/// square-free polynomial the interval isolates a root of.
pub fn refine_root(p: &Polynomial, v: usize, iv: &Iv) -> Iv {
    if iv.is_point() {
        return iv.clone();
    }
    let mid = iv.mid();
    let sm = sign_at(p, v, &mid);
    if sm == 0 {
        return Iv::point(mid);
    }
    let slo = sign_at(p, v, &iv.lo);
    debug_assert!(slo != 0, "open isolating interval with a root endpoint");
    if slo != sm {
        Iv::new(iv.lo.clone(), mid)
    } else {
        Iv::new(mid, iv.hi.clone())
    }
}

pub fn sign_at(p: &Polynomial, v: usize, x: &Rational) -> i32 {
    let mut a = BTreeMap::new();
    a.insert(v, x.clone());
    sign_of(&p.evaluate_full(&a))
}

/// Number of distinct real roots by Sturm's theorem, as an independent
/// cross-check of the isolation count.
pub fn sturm_distinct_real_roots(p: &Polynomial, v: usize) -> usize {
    let sf = square_free_part(p, v);
    if sf.degree_in(v) <= 0 {
        return 0;
    }
    let z = to_z(&sf, v);
    let p0: Vec<Rational> = z.c.iter().map(|c| Rational::from_integer(c.clone())).collect();
    let mut p1 = vec![Rational::zero(); p0.len() - 1];
    for (i, c) in p0.iter().enumerate().skip(1) {
        p1[i - 1] = c * Rational::from_integer(BigInt::from(i));
    }
    let mut chain = vec![p0, p1];
    loop {
        let r = dense_rem(&chain[chain.len() - 2], &chain[chain.len() - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    let var_at = |toward_plus: bool| {
        let mut last = 0;
        let mut n = 0;
        for q in &chain {
            let deg = q.len() - 1;
            let mut s = sign_of(q.last().unwrap());
            if !toward_plus && deg % 2 == 1 {
                s = -s;
            }
            if s != 0 {
                if last != 0 && s != last {
                    n += 1;
                }
                last = s;
            }
        }
        n
    };
    var_at(false) - var_at(true)
}

fn square_free_part(p: &Polynomial, v: usize) -> Polynomial {
    assert!(!p.is_zero(), "zero polynomial");
    assert!(
        p.active_indets().iter().all(|&i| i == v),
        "polynomial is not univariate in the requested indeterminate"
    );
    let (_, factors) = square_free(p);
    let mut sf = Polynomial::from_int(p.ctx(), 1);
    for (f, _) in &factors {
        sf = sf.mul(f);
    }
    sf.canonical()
}

fn to_z(sf: &Polynomial, v: usize) -> ZPoly {
    let coeffs = sf.coefficients_wrt(v);
    ZPoly::new(
        coeffs
            .iter()
            .map(|c| {
                let r = c.as_constant().expect("univariate by precondition");
                debug_assert!(r.denom().is_one());
                r.numer().clone()
            })
            .collect(),
    )
}

/// Smallest power of two strictly bounding every real root in magnitude.
fn cauchy_power_of_two(z: &ZPoly) -> Rational {
    let n = z.c.len() - 1;
    let an = z.c[n].abs();
    let maxa = z.c[..n].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    let bound = Rational::one() + Rational::new(maxa, an);
    let mut b = Rational::one();
    while b < bound {
        b = b * Rational::from_integer(2.into());
    }
    b
}

fn isolate_window_z(z: &ZPoly, lo: &Rational, hi: &Rational) -> Vec<Iv> {
    let w = hi - lo;
    let mut g = window_transform(z, lo, &w);
    // Window edges are excluded: deflate exact edge roots instead of reporting.
    while g.len() > 1 && g[0].is_zero() {
        g.remove(0);
    }
    if g.len() > 1 && g.iter().sum::<BigInt>().is_zero() {
        g = deflate_at_one(&g);
    }
    if g.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::new();
    vca(prim(g), lo.clone(), hi.clone(), &mut out);
    // Intervals adjacent to a deflated root (a window edge or an exact
    // midpoint hit) inherit it as an endpoint; shrink those so every open
    // interval has a sign change across it.
    let zd = z_derivative(z);
    out.into_iter()
        .map(|iv| if iv.is_point() { iv } else { fix_endpoints(z, &zd, iv) })
        .collect()
}

fn zsign(z: &ZPoly, x: &Rational) -> i32 {
    let mut acc = Rational::zero();
    for c in z.c.iter().rev() {
        acc = acc * x + Rational::from_integer(c.clone());
    }
    sign_of(&acc)
}

fn z_derivative(z: &ZPoly) -> ZPoly {
    ZPoly::new(
        z.c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// `iv` encloses exactly one root r strictly inside it, but z may vanish at
/// either endpoint (deflated neighbours). Bisects until both endpoint values
/// are nonzero, keeping r inside. The sign of z just right of `lo` stays
/// fixed; when z(lo) == 0 it equals the sign of z'(lo) at that simple root.
fn fix_endpoints(z: &ZPoly, zd: &ZPoly, iv: Iv) -> Iv {
    let mut lo = iv.lo;
    let mut hi = iv.hi;
    let mut right_of_lo = zsign(z, &lo);
    if right_of_lo == 0 {
        right_of_lo = zsign(zd, &lo);
        debug_assert_ne!(right_of_lo, 0, "multiple root of a square-free polynomial");
    }
    loop {
        if zsign(z, &lo) != 0 && zsign(z, &hi) != 0 {
            return Iv::new(lo, hi);
        }
        let m = (&lo + &hi) / Rational::from_integer(2.into());
        let s = zsign(z, &m);
        if s == 0 {
            return Iv::point(m);
        }
        if s == right_of_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
}

/// Dense coefficients of z(lo + w*y), denominators cleared.
fn window_transform(z: &ZPoly, lo: &Rational, w: &Rational) -> Vec<BigInt> {
    let mut acc: Vec<Rational> = Vec::new();
    for c in z.c.iter().rev() {
        let mut next = vec![Rational::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] = &next[i] + a * lo;
            next[i + 1] = &next[i + 1] + a * w;
        }
        next[0] = &next[0] + Rational::from_integer(c.clone());
        acc = next;
    }
    let mut den = BigInt::one();
    for a in &acc {
        den = &den / den.gcd(a.denom()) * a.denom();
    }
    let den = Rational::from_integer(den);
    acc.iter()
        .map(|a| {
            let s = a * &den;
            debug_assert!(s.denom().is_one());
            s.numer().clone()
        })
        .collect()
}

/// Bisection with Descartes bounds. `g` lives on local (0,1) which maps to
/// the real interval (rlo, rhi); g(0) != 0 and g(1) != 0 on entry.
fn vca(g: Vec<BigInt>, rlo: Rational, rhi: Rational, out: &mut Vec<Iv>) {
    match descartes_bound(&g) {
        0 => {}
        1 => {
            debug_assert!(sign_of_big(&g[0]) * sign_of_big(&g.iter().sum::<BigInt>()) < 0);
            out.push(Iv::new(rlo, rhi));
        }
        _ => {
            let gl = prim(scale_half(&g));
            let gr = prim(shift1(gl.clone()));
            let mid = (&rlo + &rhi) / Rational::from_integer(2.into());
            if gr[0].is_zero() {
                let gl_def = prim(deflate_at_one(&gl));
                let mut gr_def = gr;
                gr_def.remove(0);
                vca(gl_def, rlo, mid.clone(), out);
                out.push(Iv::point(mid.clone()));
                vca(prim(gr_def), mid, rhi, out);
            } else {
                vca(gl, rlo, mid.clone(), out);
                vca(gr, mid, rhi, out);
            }
        }
    }
}

/// Sign variations of (y+1)^n g(1/(y+1)): bounds the roots of g in (0,1),
/// exact when the bound is 0 or 1.
fn descartes_bound(g: &[BigInt]) -> usize {
    let mut rev: Vec<BigInt> = g.iter().rev().cloned().collect();
    rev = shift1(rev);
    let mut last = 0;
    let mut n = 0;
    for c in &rev {
        let s = sign_of_big(c);
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// In-place Taylor shift: c(y) -> c(y+1).
fn shift1(mut c: Vec<BigInt>) -> Vec<BigInt> {
    let d = c.len();
    for k in 0..d.saturating_sub(1) {
        for j in (k..d - 1).rev() {
            let add = c[j + 1].clone();
            c[j] += add;
        }
    }
    c
}

/// 2^n g(y/2): the left half of (0,1) rescaled back onto (0,1).
fn scale_half(g: &[BigInt]) -> Vec<BigInt> {
    let n = g.len() - 1;
    g.iter()
        .enumerate()
        .map(|(i, c)| c << (n - i) as u32)
        .collect()
}

/// Exact division by (y - 1); the caller guarantees g(1) == 0.
fn deflate_at_one(c: &[BigInt]) -> Vec<BigInt> {
    let n = c.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    q[n - 1] = c[n].clone();
    for k in (1..n).rev() {
        q[k - 1] = &c[k] + &q[k];
    }
    debug_assert_eq!(-&q[0], c[0]);
    q
}

fn prim(c: Vec<BigInt>) -> Vec<BigInt> {
    ZPoly::new(c).primitive().c
}

fn sign_of_big(b: &BigInt) -> i32 {
    if b.is_zero() {
        0
    } else if b.is_negative() {
        -1
    } else {
        1
    }
}

fn dense_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let db = b.len() - 1;
    let lcb = b.last().unwrap();
    let mut r = a.to_vec();
    while r.len() > db {
        let f = r.last().unwrap() / lcb;
        let shift = r.len() - 1 - db;
        for (j, bc) in b.iter().enumerate() {
            let t = &f * bc;
            r[shift + j] = &r[shift + j] - t;
        }
        r.pop();
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{Context, Ctx};
    use crate::poly::parse_polynomial;
    use crate::rat::{rat, rat_i64};
    use proptest::prelude::*;

    fn ctx() -> Ctx {
        Context::new(&[], &["x"]).unwrap()
    }

    fn p(c: &Ctx, s: &str) -> Polynomial {
        parse_polynomial(c, s, 0).unwrap()
    }

    fn check_isolation(iso: &RootIsolation) {
        for w in iso.intervals.windows(2) {
            assert!(w[0].hi <= w[1].lo, "overlapping intervals");
        }
        for iv in &iso.intervals {
            if iv.is_point() {
                assert_eq!(sign_at(&iso.poly, iso.var, &iv.lo), 0);
            } else {
                let a = sign_at(&iso.poly, iso.var, &iv.lo);
                let b = sign_at(&iso.poly, iso.var, &iv.hi);
                assert_eq!(a * b, -1, "no sign change across an open interval");
            }
        }
    }

    #[test]
    fn sqrt_two_gets_two_intervals() {
        let c = ctx();
        let iso = isolate_real_roots(&p(&c, "x^2-2"), 0);
        assert_eq!(iso.intervals.len(), 2);
        check_isolation(&iso);
        assert!(iso.intervals[0].hi <= rat_i64(0));
        assert!(iso.intervals[1].lo >= rat_i64(0));
        assert!(iso.intervals[0].hi <= iso.intervals[1].lo);
    }

    #[test]
    fn no_real_roots_means_no_intervals() {
        let c = ctx();
        assert!(isolate_real_roots(&p(&c, "x^2+1"), 0).intervals.is_empty());
        assert!(isolate_real_roots(&p(&c, "7"), 0).intervals.is_empty());
    }

    #[test]
    fn zero_root_is_reported_exactly() {
        let c = ctx();
        let iso = isolate_real_roots(&p(&c, "x^2-x"), 0);
        assert_eq!(iso.intervals.len(), 2);
        assert_eq!(iso.intervals[0], Iv::point(rat_i64(0)));
        check_isolation(&iso);
    }

    #[test]
    fn multiplicities_are_squashed() {
        let c = ctx();
        // (x-1)^2 (x+2): the square-free part has the two distinct roots.
        let iso = isolate_real_roots(&p(&c, "x^3-3*x+2"), 0);
        assert_eq!(iso.intervals.len(), 2);
        assert_eq!(iso.poly, p(&c, "x^2+x-2"));
        check_isolation(&iso);
    }

    #[test]
    fn roots_at_both_subdivision_endpoints() {
        let c = ctx();
        // x (x-1) (3x-1): after the exact hits at 0 and 1, the interval for
        // 1/3 starts with roots at both endpoints.
        let f = p(&c, "3*x^3-4*x^2+x");
        let iso = isolate_real_roots(&f, 0);
        assert_eq!(iso.intervals.len(), 3);
        check_isolation(&iso);
        assert!(iso.intervals[1].contains(&rat(1, 3)));
        // Same shape with irrational roots between the exact hits.
        let g = p(&c, "2*x^4-2*x^3-x^2+x");
        let giso = isolate_real_roots(&g, 0);
        assert_eq!(giso.intervals.len(), 4);
        check_isolation(&giso);
    }

    #[test]
    fn rational_roots_are_covered() {
        let c = ctx();
        let f = p(&c, "2*x^2-7*x+3"); // roots 1/2 and 3
        let iso = isolate_real_roots(&f, 0);
        assert_eq!(iso.intervals.len(), 2);
        check_isolation(&iso);
        for (iv, root) in iso.intervals.iter().zip([rat(1, 2), rat_i64(3)]) {
            assert!(iv.contains(&root));
        }
    }

    #[test]
    fn windows_clip_and_exclude_edges() {
        let c = ctx();
        let f = p(&c, "x^2-2");
        let iso = isolate_roots_in(&f, 0, &Iv::new(rat_i64(0), rat_i64(2)));
        assert_eq!(iso.intervals.len(), 1);
        assert!(isolate_roots_in(&f, 0, &Iv::new(rat_i64(2), rat_i64(3)))
            .intervals
            .is_empty());
        // Both roots of (x-1)(x-2) sit on the window edges: excluded.
        let g = p(&c, "x^2-3*x+2");
        assert!(isolate_roots_in(&g, 0, &Iv::new(rat_i64(1), rat_i64(2)))
            .intervals
            .is_empty());
        let wide = isolate_roots_in(&g, 0, &Iv::new(rat_i64(0), rat_i64(5)));
        assert_eq!(wide.intervals.len(), 2);
    }

    #[test]
    fn refinement_narrows_toward_the_root() {
        let c = ctx();
        let f = p(&c, "x^2-2");
        let iso = isolate_real_roots(&f, 0);
        let mut iv = iso.intervals[1].clone();
        for _ in 0..20 {
            iv = refine_root(&iso.poly, 0, &iv);
        }
        assert!(iv.width() <= rat(1, 1 << 18));
        // Still brackets sqrt(2).
        assert_eq!(sign_at(&iso.poly, 0, &iv.lo) * sign_at(&iso.poly, 0, &iv.hi), -1);
        assert!(iv.lo < rat(14143, 10000) && iv.hi > rat(14142, 10000));
        // Refinement of a dyadic root terminates in a point.
        let g = p(&c, "2*x-1");
        let giso = isolate_real_roots(&g, 0);
        let mut jv = giso.intervals[0].clone();
        for _ in 0..64 {
            jv = refine_root(&giso.poly, 0, &jv);
            if jv.is_point() {
                break;
            }
        }
        assert_eq!(jv, Iv::point(rat(1, 2)));
    }

    #[test]
    fn sturm_agrees_on_a_root_ladder() {
        let c = ctx();
        for (s, n) in [
            ("x^2-2", 2),
            ("x^2+1", 0),
            ("x^3-3*x+2", 2),
            ("x^5-5*x^3+4*x", 5),
            ("x^4+x^2-1", 2),
            ("x^6-1", 2),
        ] {
            let f = p(&c, s);
            assert_eq!(sturm_distinct_real_roots(&f, 0), n, "{s}");
            assert_eq!(isolate_real_roots(&f, 0).intervals.len(), n, "{s}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn isolation_count_matches_sturm(coeffs in prop::collection::vec(-9i64..=9, 2..7)) {
            prop_assume!(coeffs.iter().any(|c| *c != 0));
            let c = ctx();
            let x = Polynomial::var(&c, 0);
            let mut f = Polynomial::from_int(&c, 0);
            let mut xp = Polynomial::from_int(&c, 1);
            for co in &coeffs {
                f = f.add(&xp.mul_rational(&rat_i64(*co)));
                xp = xp.mul(&x);
            }
            prop_assume!(f.degree_in(0) >= 1);
            let iso = isolate_real_roots(&f, 0);
            check_isolation(&iso);
            prop_assert_eq!(iso.intervals.len(), sturm_distinct_real_roots(&f, 0));
        }
    }
}
