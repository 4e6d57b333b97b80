//! Univariate factorization over the integers: factor mod a small prime,
//! Hensel-lift the modular factors past the coefficient bound, then recombine
//! subsets until every remaining modular factor belongs to a true factor.

use num::bigint::Sign;
use num::{BigInt, Integer, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rat::isqrt;
use crate::zpoly::{is_prime_u64, symmetric_mod, PPoly, ZPoly};

/// Factor a primitive squarefree polynomial with positive leading coefficient
/// into primitive irreducibles with positive leading coefficients.
pub(crate) fn factor_squarefree_univ(f: &ZPoly) -> Vec<ZPoly> {
    assert!(f.deg() >= 1, "constant input");
    if f.deg() == 1 {
        return vec![f.clone()];
    }
    let lc = f.lc();

    // Pick the odd prime giving the fewest modular factors among the first
    // three that keep the degree and squarefreeness.
    let mut best: Option<(u64, Vec<PPoly>)> = None;
    let mut usable = 0;
    let mut p = 2u64;
    while usable < 3 {
        p += 1;
        while !is_prime_u64(p) {
            p += 1;
        }
        assert!(p < 100_000, "no usable factoring prime");
        if (&lc % p).is_zero() {
            continue;
        }
        let fp = f.mod_p(p).monic();
        if !fp.is_squarefree() {
            continue;
        }
        let fac = factor_modp(&fp, p);
        if fac.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().map_or(true, |(_, b)| fac.len() < b.len()) {
            best = Some((p, fac));
        }
        usable += 1;
    }
    let (p, modular) = best.unwrap();

    // Mignotte: any integer factor of f has coefficients below 2^deg * |f|_2,
    // and we recombine candidates scaled by the leading coefficient.
    let norm2 = isqrt(&f.c.iter().map(|c| c * c).sum::<BigInt>()) + 1;
    let bound: BigInt = lc.abs() * norm2 * (BigInt::one() << f.deg() as u64);
    let mut levels = 0u32;
    let mut modulus = BigInt::from(p);
    let mut chain = vec![modulus.clone()];
    while modulus < 2 * &bound + 1 {
        modulus = &modulus * &modulus;
        chain.push(modulus.clone());
        levels += 1;
    }

    // Monic image of f modulo the lift target.
    let inv_lc = inv_mod_big(&lc, &modulus);
    let fm: Vec<BigInt> = f.c.iter().map(|c| (c * &inv_lc).mod_floor(&modulus)).collect();

    let lifted = lift_tree(&fm, &modular, &chain, levels);
    recombine(f, lifted, &modulus)
}

/// Distinct-degree then equal-degree splitting of a monic squarefree
/// polynomial mod an odd prime. Deterministically seeded.
fn factor_modp(f: &PPoly, p: u64) -> Vec<PPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0dd5 ^ p);
    let x = PPoly::new(vec![0, 1], p);
    let mut out = Vec::new();
    let mut h = x.rem(f);
    let mut fs = f.clone();
    let mut d = 1i64;
    while fs.deg() >= 2 * d {
        h = h.powmod(p, &fs);
        let g = h.sub(&x).gcd(&fs);
        if g.deg() > 0 {
            edf(&g, d as usize, p, &mut rng, &mut out);
            fs = fs.divmod(&g).0;
            h = h.rem(&fs);
        }
        d += 1;
    }
    if fs.deg() > 0 {
        out.push(fs.monic());
    }
    out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
    out
}

/// Split a product of irreducibles of equal degree d (Cantor-Zassenhaus).
fn edf(g: &PPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<PPoly>) {
    if g.deg() as usize == d {
        out.push(g.monic());
        return;
    }
    let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
    loop {
        let c: Vec<u64> = (0..g.deg() as usize).map(|_| rng.gen_range(0..p)).collect();
        let r = PPoly::new(c, p);
        if r.deg() < 1 {
            continue;
        }
        let m = r.powmod_big(&e, g).sub(&PPoly::new(vec![1], p));
        let s = m.gcd(g);
        if s.deg() > 0 && s.deg() < g.deg() {
            edf(&s, d, p, rng, out);
            edf(&g.divmod(&s).0, d, p, rng, out);
            return;
        }
    }
}

// Dense coefficient vectors reduced into [0, m): helpers for Hensel lifting.

fn mp_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn mp_from_ppoly(f: &PPoly) -> Vec<BigInt> {
    f.c.iter().map(|&c| BigInt::from(c)).collect()
}

fn mp_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut v = vec![BigInt::zero(); n];
    for (i, slot) in v.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default();
        *slot = x.mod_floor(m);
    }
    mp_trim(v)
}

fn mp_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut v = vec![BigInt::zero(); n];
    for (i, slot) in v.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default();
        *slot = x.mod_floor(m);
    }
    mp_trim(v)
}

fn mp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            v[i + j] += ai * bj;
        }
    }
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
    mp_trim(v)
}

/// Division by a monic divisor, coefficients mod m.
fn mp_divmod(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(d.last().map_or(false, |c| c.is_one()));
    let mut r = a.to_vec();
    if r.len() < d.len() {
        return (Vec::new(), mp_trim(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - d.len() + 1];
    for k in (0..q.len()).rev() {
        let c = r[k + d.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        q[k] = c.clone();
        for (i, di) in d.iter().enumerate() {
            let x = &r[k + i] - &c * di;
            r[k + i] = x.mod_floor(m);
        }
    }
    r.truncate(d.len() - 1);
    (mp_trim(q), mp_trim(r))
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = r1;
        r1 = r;
        let t = &t0 - &q * &t1;
        t0 = t1;
        t1 = t;
    }
    assert!(r0.is_one(), "not invertible");
    t0.mod_floor(m)
}

/// Lift the monic factorization fm = prod(factors) from mod p to mod
/// chain[levels], splitting the factor list in halves.
fn lift_tree(fm: &[BigInt], factors: &[PPoly], chain: &[BigInt], levels: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![fm.to_vec()];
    }
    let mid = factors.len() / 2;
    let p = factors[0].p;
    let one = PPoly::new(vec![1], p);
    let g0 = factors[..mid].iter().fold(one.clone(), |acc, f| acc.mul(f));
    let h0 = factors[mid..].iter().fold(one, |acc, f| acc.mul(f));
    let (u, s0, t0) = g0.ext_gcd(&h0);
    debug_assert_eq!(u.deg(), 0);

    let mut g = mp_from_ppoly(&g0);
    let mut h = mp_from_ppoly(&h0);
    let mut s = mp_from_ppoly(&s0);
    let mut t = mp_from_ppoly(&t0);
    for step in 0..levels as usize {
        let m2 = &chain[step + 1];
        // Lift the factorization: e = fm - g*h, se = q*h + r,
        // g += t*e + q*g, h += r.
        let e = mp_sub(fm, &mp_mul(&g, &h, m2), m2);
        let (q, r) = mp_divmod(&mp_mul(&s, &e, m2), &h, m2);
        g = mp_add(&g, &mp_add(&mp_mul(&t, &e, m2), &mp_mul(&q, &g, m2), m2), m2);
        h = mp_add(&h, &r, m2);
        // Lift the Bezout pair past b = s*g + t*h - 1.
        let mut b = mp_add(&mp_mul(&s, &g, m2), &mp_mul(&t, &h, m2), m2);
        b = mp_sub(&b, &[BigInt::one()], m2);
        let (c, d) = mp_divmod(&mp_mul(&s, &b, m2), &h, m2);
        s = mp_sub(&s, &d, m2);
        t = mp_sub(&t, &mp_add(&mp_mul(&t, &b, m2), &mp_mul(&c, &g, m2), m2), m2);
    }
    debug_assert!(g.last().map_or(false, |c| c.is_one()));
    debug_assert!(h.last().map_or(false, |c| c.is_one()));

    let mut out = lift_tree(&g, &factors[..mid], chain, levels);
    out.extend(lift_tree(&h, &factors[mid..], chain, levels));
    out
}

/// Next k-combination of 0..n in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] != i + n - k {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Try subset products of the lifted factors (scaled by the current leading
/// coefficient, coefficients in the symmetric range) as divisors over Z.
fn recombine(f: &ZPoly, lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut active = lifted;
    let mut rem = f.clone();
    let mut out = Vec::new();
    'restart: loop {
        for size in 1..=active.len() / 2 {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let mut prod = vec![rem.lc().mod_floor(modulus)];
                for &i in &idx {
                    prod = mp_mul(&prod, &active[i], modulus);
                }
                let cand = ZPoly::new(prod.iter().map(|c| symmetric_mod(c, modulus)).collect())
                    .primitive();
                if let Some(quot) = rem.exact_div(&cand) {
                    out.push(positive_lc(cand));
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
    if rem.deg() > 0 {
        out.push(positive_lc(rem));
    }
    out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
    out
}

fn positive_lc(f: ZPoly) -> ZPoly {
    if f.lc().sign() == Sign::Minus {
        ZPoly::new(f.c.iter().map(|c| -c).collect())
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn splits_quadratics() {
        // (x - 1)(x + 2) = x^2 + x - 2
        let f = z(&[-2, 1, 1]);
        let fac = factor_squarefree_univ(&f);
        assert_eq!(fac, vec![z(&[-1, 1]), z(&[2, 1])]);
    }

    #[test]
    fn keeps_irreducibles_whole() {
        // x^4 + x^2 - 1 is irreducible; so is x^2 - 3x + 1.
        assert_eq!(factor_squarefree_univ(&z(&[-1, 0, 1, 0, 1])).len(), 1);
        assert_eq!(factor_squarefree_univ(&z(&[1, -3, 1])).len(), 1);
    }

    #[test]
    fn cyclotomic_like_product() {
        // (x^2 + x + 1)(x^2 - x + 1)(x - 1)(x + 1) = x^6 - 1 ... not squarefree-safe;
        // use (x^2+x+1)(x^2-x+1) = x^4 + x^2 + 1.
        let fac = factor_squarefree_univ(&z(&[1, 0, 1, 0, 1]));
        assert_eq!(fac, vec![z(&[1, -1, 1]), z(&[1, 1, 1])]);
    }

    #[test]
    fn respects_leading_coefficients() {
        // (2x + 3)(3x - 5)(x^2 + 7) = 6x^4 - x^3 - 15x^2 ... compute via mul.
        let f = z(&[3, 2]).mul(&z(&[-5, 3])).mul(&z(&[7, 0, 1]));
        let fac = factor_squarefree_univ(&f);
        assert_eq!(fac, vec![z(&[-5, 3]), z(&[3, 2]), z(&[7, 0, 1])]);
    }

    #[test]
    fn swinnerton_dyer_needs_recombination() {
        // Minimal polynomial of sqrt(2)+sqrt(3): x^4 - 10x^2 + 1, irreducible
        // over Q but splits into quadratics mod every prime.
        let fac = factor_squarefree_univ(&z(&[1, 0, -10, 0, 1]));
        assert_eq!(fac, vec![z(&[1, 0, -10, 0, 1])]);
    }

    #[test]
    fn many_linear_factors() {
        let mut f = z(&[1]);
        for r in 1..=6 {
            f = f.mul(&z(&[-r, 1]));
        }
        let fac = factor_squarefree_univ(&f);
        assert_eq!(fac.len(), 6);
        assert_eq!(fac[0], z(&[-6, 1]));
    }
}
