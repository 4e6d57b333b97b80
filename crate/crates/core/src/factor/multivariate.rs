//! Multivariate factorization by Hensel lifting. The input is made monic in a
//! main variable v by the substitution x -> v/lc (scaling by lc^(d-1)), a good
//! evaluation point for the remaining variables gives a squarefree univariate
//! image, its factors are lifted order by order against the ideal generated by
//! the shifted variables, and subset recombination repairs any splitting that
//! was finer modulo the ideal than over the rationals.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::Ctx;
use crate::poly::gcd::to_zpoly;
use crate::poly::{content_wrt, divides, exact_div, primitive_part_wrt, Monomial, Polynomial};
use crate::rat::{rat_i64, Rational};
use crate::zpoly::{gcd_univ_int, ZPoly};

use super::univariate::{factor_squarefree_univ, next_combination};

/// Factor a canonical squarefree polynomial with at least two active
/// indeterminates. Returns irreducible factors flagged certified; when no
/// usable evaluation point is found the input comes back uncertified.
pub(crate) fn factor_squarefree_multi(q: &Polynomial) -> Vec<(Polynomial, bool)> {
    let ctx = q.ctx().clone();
    let active = q.active_indets();
    debug_assert!(active.len() >= 2);

    // Main variable: prefer a constant leading coefficient, then low degree.
    let v = *active
        .iter()
        .min_by_key(|&&i| {
            let lc_const = q.leading_coefficient_wrt(i).is_constant();
            (!lc_const, q.degree_in(i), i)
        })
        .unwrap();

    // Split off the part free of v; both halves stay squarefree and coprime.
    let cont = content_wrt(q, v);
    if !cont.is_constant() {
        let pp = exact_div(q, &cont).canonical();
        let mut out = super::factor_squarefree_certified(&cont);
        out.extend(super::factor_squarefree_certified(&pp));
        return out;
    }

    let d = q.degree_in(v);
    if d == 1 {
        // Content-free and linear in v: a proper factor would be free of v.
        return vec![(q.clone(), true)];
    }

    let lc = q.leading_coefficient_wrt(v);
    // T = v^d + sum c_i lc^(d-1-i) v^i, the monic image of q under x -> v/lc.
    let t = if lc.is_one() {
        q.clone()
    } else {
        let coeffs = q.coefficients_wrt(v);
        let mut acc = Polynomial::var(&ctx, v).pow(d as u32);
        for (i, ci) in coeffs.iter().enumerate().take(d as usize) {
            let piece = ci
                .mul(&lc.pow((d - 1 - i as i64) as u32))
                .mul(&Polynomial::var(&ctx, v).pow(i as u32));
            acc = acc.add(&piece);
        }
        acc
    };
    let others: Vec<usize> = active.iter().copied().filter(|&i| i != v).collect();

    // Evaluation point: the univariate image must stay squarefree. Among the
    // first few valid points keep the one splitting least.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_e7a1);
    let mut point: Option<(Vec<i64>, Vec<ZPoly>)> = None;
    let mut valid = 0;
    for tries in 0..60 {
        if valid >= 3 {
            break;
        }
        let span = 2 + tries as i64 / 10;
        let c: Vec<i64> = if tries == 0 {
            vec![0; others.len()]
        } else {
            others.iter().map(|_| rng.gen_range(-span..=span)).collect()
        };
        let assign: BTreeMap<usize, Rational> =
            others.iter().copied().zip(c.iter().map(|&x| rat_i64(x))).collect();
        let uz = to_zpoly(&t.evaluate(&assign), v);
        debug_assert_eq!(uz.deg(), d);
        if gcd_univ_int(&uz, &uz.derivative()).deg() != 0 {
            continue;
        }
        valid += 1;
        let fac = factor_squarefree_univ(&uz);
        if fac.len() == 1 {
            return vec![(q.clone(), true)];
        }
        if point.as_ref().map_or(true, |(_, best)| fac.len() < best.len()) {
            point = Some((c, fac));
        }
    }
    let (c, ufac) = match point {
        Some(p) => p,
        None => return vec![(q.clone(), false)],
    };

    // Shift the others so the evaluation point becomes the origin.
    let mut t_hat = t.clone();
    for (&w, &cw) in others.iter().zip(c.iter()) {
        if cw != 0 {
            let shifted = Polynomial::var(&ctx, w).add(&Polynomial::from_int(&ctx, cw));
            t_hat = t_hat.substitute(w, &shifted);
        }
    }

    let factors = lift(&t_hat, v, &others, &ufac);

    // Undo the shift and the monic substitution, then strip contents.
    let mut out = Vec::new();
    let mut check = Polynomial::from_int(&ctx, 1);
    for f in factors {
        let mut g = f;
        for (&w, &cw) in others.iter().zip(c.iter()) {
            if cw != 0 {
                let shifted = Polynomial::var(&ctx, w).sub(&Polynomial::from_int(&ctx, cw));
                g = g.substitute(w, &shifted);
            }
        }
        if !lc.is_one() {
            let gc = g.coefficients_wrt(v);
            let mut acc = Polynomial::zero(&ctx);
            for (i, gi) in gc.iter().enumerate() {
                acc = acc.add(
                    &gi.mul(&lc.pow(i as u32)).mul(&Polynomial::var(&ctx, v).pow(i as u32)),
                );
            }
            g = acc;
        }
        g = primitive_part_wrt(&g, v).canonical();
        check = check.mul(&g);
        out.push((g, true));
    }
    // The product must reproduce q up to a constant.
    match divides(&check, q) {
        Some(u) if u.is_constant() => out,
        _ => vec![(q.clone(), false)],
    }
}

/// Lift the univariate factorization of t_hat at the origin to factors of
/// t_hat itself, order by order in the total degree of the shifted variables.
fn lift(t_hat: &Polynomial, v: usize, others: &[usize], ufac: &[ZPoly]) -> Vec<Polynomial> {
    let ctx = t_hat.ctx().clone();
    let cap = wdeg(t_hat, others);

    let us: Vec<Vec<Rational>> = ufac
        .iter()
        .map(|z| z.c.iter().map(|c| Rational::from_integer(c.clone())).collect())
        .collect();
    // Bezout data: beta_j inverts prod_{l != j} u_l modulo u_j.
    let betas: Vec<Vec<Rational>> = (0..us.len())
        .map(|j| {
            let mut prod = vec![Rational::one()];
            for (l, ul) in us.iter().enumerate() {
                if l != j {
                    prod = qp_rem(&qp_mul(&prod, ul), &us[j]);
                }
            }
            qp_inv_mod(&prod, &us[j])
        })
        .collect();

    let mut lifts: Vec<Polynomial> = us.iter().map(|u| qp_to_poly(&ctx, v, u)).collect();

    for m in 1..=cap {
        let mut prod = Polynomial::from_int(&ctx, 1);
        for f in &lifts {
            prod = truncate_wdeg(&prod.mul(f), others, m);
        }
        let err = truncate_wdeg(&t_hat.sub(&prod), others, m);
        if err.is_zero() {
            continue;
        }
        // Group the degree-m error terms by their monomial in the others, and
        // solve a univariate diophantine system for each group.
        let mut groups: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
        for (mon, coeff) in err.terms() {
            if others.iter().map(|&w| mon.exp(w) as i64).sum::<i64>() != m {
                continue;
            }
            let mut mu = mon.clone();
            mu.0[v] = 0;
            groups.entry(mu).or_default().push((mon.exp(v) as usize, coeff.clone()));
        }
        for (mu, entries) in groups {
            let mut e = vec![Rational::zero(); entries.iter().map(|(k, _)| k + 1).max().unwrap()];
            for (k, c) in entries {
                e[k] = c;
            }
            let e = qp_trim(e);
            let mu_poly = Polynomial::from_terms(&ctx, [(mu, Rational::one())]);
            for (j, uj) in us.iter().enumerate() {
                let sigma = qp_rem(&qp_mul(&e, &betas[j]), uj);
                if sigma.is_empty() {
                    continue;
                }
                let upd = lifts[j].add(&qp_to_poly(&ctx, v, &sigma).mul(&mu_poly));
                lifts[j] = upd;
            }
        }
    }

    let mut prod = Polynomial::from_int(&ctx, 1);
    for f in &lifts {
        prod = prod.mul(f);
    }
    if prod == *t_hat {
        return lifts;
    }

    // The splitting was finer than over the rationals: every true factor is a
    // subset product truncated at the degree cap.
    let mut active = lifts;
    let mut rem = t_hat.clone();
    let mut out = Vec::new();
    'restart: loop {
        for size in 1..=active.len() / 2 {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let mut cand = Polynomial::from_int(&ctx, 1);
                for &i in &idx {
                    cand = truncate_wdeg(&cand.mul(&active[i]), others, cap);
                }
                if let Some(quot) = divides(&cand, &rem) {
                    out.push(cand);
                    rem = quot;
                    for &i in idx.iter().rev() {
                        active.remove(i);
                    }
                    continue 'restart;
                }
                if !next_combination(&mut idx, active.len()) {
                    break;
                }
            }
        }
        break;
    }
    if rem.degree_in(v) > 0 {
        out.push(rem);
    }
    out
}

/// Total degree in the given variables.
fn wdeg(p: &Polynomial, ws: &[usize]) -> i64 {
    p.terms()
        .map(|(m, _)| ws.iter().map(|&w| m.exp(w) as i64).sum())
        .max()
        .unwrap_or(0)
}

/// Drop terms whose total degree in the given variables exceeds m.
fn truncate_wdeg(p: &Polynomial, ws: &[usize], m: i64) -> Polynomial {
    Polynomial::from_terms(
        p.ctx(),
        p.terms().filter_map(|(mon, c)| {
            if ws.iter().map(|&w| mon.exp(w) as i64).sum::<i64>() <= m {
                Some((mon.clone(), c.clone()))
            } else {
                None
            }
        }),
    )
}

// Dense univariate arithmetic over the rationals for the diophantine solves.

fn qp_trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qp_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            v[i + j] += ai * bj;
        }
    }
    qp_trim(v)
}

fn qp_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut v = vec![Rational::zero(); n];
    for (i, slot) in v.iter_mut().enumerate() {
        *slot = a.get(i).cloned().unwrap_or_else(Rational::zero)
            - b.get(i).cloned().unwrap_or_else(Rational::zero);
    }
    qp_trim(v)
}

fn qp_divmod(a: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!d.is_empty());
    let mut r = a.to_vec();
    if r.len() < d.len() {
        return (Vec::new(), qp_trim(r));
    }
    let lead = d.last().unwrap();
    let mut q = vec![Rational::zero(); r.len() - d.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + d.len() - 1] / lead;
        if c.is_zero() {
            continue;
        }
        q[k] = c.clone();
        for (i, di) in d.iter().enumerate() {
            r[k + i] = &r[k + i] - &c * di;
        }
    }
    r.truncate(d.len() - 1);
    (qp_trim(q), qp_trim(r))
}

fn qp_rem(a: &[Rational], d: &[Rational]) -> Vec<Rational> {
    qp_divmod(a, d).1
}

/// Inverse of a modulo m over the rationals (gcd(a, m) must be 1).
fn qp_inv_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let (mut r0, mut r1) = (m.to_vec(), qp_rem(a, m));
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = qp_divmod(&r0, &r1);
        let t = qp_sub(&t0, &qp_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.len(), 1, "factors not coprime");
    let inv = r0[0].recip();
    let scaled: Vec<Rational> = t0.iter().map(|c| c * &inv).collect();
    qp_rem(&scaled, m)
}

fn qp_to_poly(ctx: &Ctx, v: usize, c: &[Rational]) -> Polynomial {
    let coeffs: Vec<Polynomial> = c.iter().map(|x| Polynomial::constant(ctx, x.clone())).collect();
    Polynomial::from_coefficients_wrt(ctx, v, &coeffs)
}
