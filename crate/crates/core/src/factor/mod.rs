//! Squarefree decomposition and factorization into irreducibles over the
//! rationals. Univariate and multivariate factorizations are certified; when
//! the multivariate lift cannot find a usable evaluation point the squarefree
//! part is returned whole with `certified` false.

mod multivariate;
mod univariate;

use crate::poly::gcd::{from_zpoly, to_zpoly};
use crate::poly::{content_wrt, divides, exact_div, gcd, Polynomial};
use crate::rat::Rational;
use univariate::factor_squarefree_univ;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub poly: Polynomial,
    pub multiplicity: u32,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<Factor>,
}

impl Factorization {
    /// Multiply everything back together.
    pub fn expand(&self) -> Polynomial {
        let ctx = self
            .factors
            .first()
            .map(|f| f.poly.ctx().clone())
            .expect("empty factorization has no context");
        let mut p = Polynomial::constant(&ctx, self.unit.clone());
        for f in &self.factors {
            p = p.mul(&f.poly.pow(f.multiplicity));
        }
        p
    }
}

/// Squarefree decomposition: p = unit * prod q_i^m_i with the q_i canonical,
/// squarefree and pairwise coprime, sorted. Panics on zero.
pub fn square_free(p: &Polynomial) -> (Rational, Vec<(Polynomial, u32)>) {
    assert!(!p.is_zero(), "squarefree decomposition of zero");
    if p.is_constant() {
        return (p.as_constant().unwrap(), Vec::new());
    }
    let mut parts = Vec::new();
    sqf_rec(&p.canonical(), &mut parts);
    parts.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    // Assemble and read the unit off the exact quotient.
    let mut prod = Polynomial::from_int(p.ctx(), 1);
    for (q, m) in &parts {
        prod = prod.mul(&q.pow(*m));
    }
    let unit = divides(&prod, p)
        .and_then(|u| u.as_constant())
        .expect("squarefree parts do not multiply back");
    (unit, parts)
}

fn sqf_rec(p: &Polynomial, out: &mut Vec<(Polynomial, u32)>) {
    if p.is_constant() {
        return;
    }
    let v = p.active_indets()[0];
    let cont = content_wrt(p, v);
    let pp = if cont.is_constant() { p.clone() } else { exact_div(p, &cont).canonical() };
    yun(&pp, v, out);
    if !cont.is_constant() {
        sqf_rec(&cont, out);
    }
}

/// Yun's algorithm with respect to v; pp must be content-free in v, so every
/// repeated factor shows up in the gcd with the v-derivative.
fn yun(pp: &Polynomial, v: usize, out: &mut Vec<(Polynomial, u32)>) {
    let dp = pp.derivative(v);
    let g = gcd(pp, &dp);
    let mut c = exact_div(pp, &g);
    let mut d = exact_div(&dp, &g).sub(&c.derivative(v));
    let mut i = 1u32;
    while !c.is_constant() {
        let a = gcd(&c, &d);
        if !a.is_constant() {
            out.push((a.canonical(), i));
        }
        c = exact_div(&c, &a);
        d = exact_div(&d, &a).sub(&c.derivative(v));
        i += 1;
    }
}

/// Full factorization into irreducibles. Panics on zero.
pub fn factorize(p: &Polynomial) -> Factorization {
    assert!(!p.is_zero(), "factorization of zero");
    if p.is_constant() {
        return Factorization { unit: p.as_constant().unwrap(), factors: Vec::new() };
    }
    let (_, parts) = square_free(p);
    let mut factors: Vec<Factor> = Vec::new();
    for (q, m) in parts {
        for (f, certified) in factor_squarefree_certified(&q) {
            match factors.iter_mut().find(|x| x.poly == f) {
                Some(x) => x.multiplicity += m,
                None => factors.push(Factor { poly: f, multiplicity: m, certified }),
            }
        }
    }
    factors.sort_by(|a, b| (&a.poly, a.multiplicity).cmp(&(&b.poly, b.multiplicity)));
    let mut prod = Polynomial::from_int(p.ctx(), 1);
    for f in &factors {
        prod = prod.mul(&f.poly.pow(f.multiplicity));
    }
    let unit = divides(&prod, p)
        .and_then(|u| u.as_constant())
        .expect("factors do not multiply back");
    Factorization { unit, factors }
}

/// Distinct irreducible factors only, certified or not, multiplicities
/// dropped. The workhorse for resultant chains.
pub fn distinct_factors(p: &Polynomial) -> Vec<Polynomial> {
    factorize(p).factors.into_iter().map(|f| f.poly).collect()
}

/// Factor a canonical squarefree nonconstant polynomial.
fn factor_squarefree_certified(q: &Polynomial) -> Vec<(Polynomial, bool)> {
    let active = q.active_indets();
    match active.len() {
        0 => Vec::new(),
        1 => factor_squarefree_univ(&to_zpoly(q, active[0]))
            .into_iter()
            .map(|z| (from_zpoly(q.ctx(), &z, active[0]).canonical(), true))
            .collect(),
        _ => multivariate::factor_squarefree_multi(q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::poly::parse_polynomial;

    fn ctx2() -> crate::context::Ctx {
        Context::new(&["a", "b"], &["x", "y"]).unwrap()
    }

    fn p(src: &str) -> Polynomial {
        parse_polynomial(&ctx2(), src, 1).unwrap()
    }

    #[test]
    fn squarefree_splits_multiplicities() {
        let f = p("x^2 - 2*x + 1").mul(&p("x + 1")).mul(&p("x^2 + 1").pow(3));
        let (unit, parts) = square_free(&f);
        assert_eq!(unit, crate::rat::rat_i64(1));
        assert_eq!(
            parts,
            vec![(p("x + 1"), 1), (p("x - 1"), 2), (p("x^2 + 1"), 3)]
        );
    }

    #[test]
    fn squarefree_handles_content() {
        // (a+1)^2 * (x^2+a) has a v-free repeated factor.
        let f = p("a + 1").pow(2).mul(&p("x^2 + a"));
        let (_, parts) = square_free(&f);
        assert_eq!(parts, vec![(p("x^2 + a"), 1), (p("a + 1"), 2)]);
    }

    #[test]
    fn factors_the_circle_parabola_product() {
        let f = p("x^2 + y^2 - 1").mul(&p("y - x^2"));
        let fac = factorize(&f);
        // y - x^2 canonicalizes to x^2 - y, flipping the unit.
        assert_eq!(fac.unit, crate::rat::rat_i64(-1));
        let polys: Vec<_> = fac.factors.iter().map(|f| f.poly.clone()).collect();
        assert!(polys.contains(&p("x^2 + y^2 - 1")));
        assert!(polys.contains(&p("x^2 - y")));
        assert!(fac.factors.iter().all(|f| f.certified && f.multiplicity == 1));
    }

    #[test]
    fn keeps_multivariate_irreducibles_whole() {
        let f = p("x^2 + y^2 - 1");
        let fac = factorize(&f);
        assert_eq!(fac.factors.len(), 1);
        assert!(fac.factors[0].certified);
    }

    #[test]
    fn factors_with_parameter_leading_coefficient() {
        // (a*x + 1)(x + a) needs the monic transform.
        let f = p("a*x + 1").mul(&p("x + a"));
        let fac = factorize(&f);
        let polys: Vec<_> = fac.factors.iter().map(|f| f.poly.clone()).collect();
        assert_eq!(polys.len(), 2);
        assert!(polys.contains(&p("a*x + 1")));
        assert!(polys.contains(&p("x + a")));
    }

    #[test]
    fn factors_difference_of_squares_in_two_vars() {
        let f = p("x^2 - y^2");
        let fac = factorize(&f);
        let polys: Vec<_> = fac.factors.iter().map(|f| f.poly.clone()).collect();
        assert_eq!(polys.len(), 2);
        assert!(polys.contains(&p("x - y").canonical()) || polys.contains(&p("y - x").canonical()));
        assert!(polys.contains(&p("x + y")));
    }

    #[test]
    fn unit_tracks_rational_scaling() {
        let f = p("x^2 - 1").mul_rational(&crate::rat::rat(-3, 4));
        let fac = factorize(&f);
        assert_eq!(fac.unit, crate::rat::rat(-3, 4));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn quartic_in_one_parameter_is_irreducible() {
        let f = p("a^4 + a^2 - 1");
        let fac = factorize(&f);
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].poly, f);
    }

    #[test]
    fn distinct_factors_drop_multiplicities() {
        let f = p("x - 1").pow(3).mul(&p("x + 2"));
        let ds = distinct_factors(&f);
        assert_eq!(ds, vec![p("x - 1"), p("x + 2")]);
    }
}
