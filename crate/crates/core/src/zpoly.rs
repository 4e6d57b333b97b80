//! Dense univariate integer/modular polynomial kernels.
//!
//! Internal workhorses for modular GCDs, interpolation determinants, and
//! factorization. Coefficient index = power.

use num::{BigInt, Integer, One, Signed, Zero};

// --- u64 primes -------------------------------------------------------------

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes descending from `below`, for CRT ladders.
pub fn primes_below(below: u64) -> impl Iterator<Item = u64> {
    let mut n = below;
    std::iter::from_fn(move || loop {
        if n < 3 {
            return None;
        }
        n -= 1;
        if is_prime_u64(n) {
            return Some(n);
        }
    })
}

// --- dense mod-p polynomials -------------------------------------------------

/// Dense univariate polynomial over Z/p, p prime < 2^63.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPoly {
    pub c: Vec<u64>,
    pub p: u64,
}

impl PPoly {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in &mut c {
            *x %= p;
        }
        let mut poly = PPoly { c, p };
        poly.trim();
        poly
    }

    pub fn zero(p: u64) -> Self {
        PPoly { c: vec![], p }
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn scale(&self, k: u64) -> PPoly {
        PPoly::new(self.c.iter().map(|&x| mulmod(x, k, self.p)).collect(), self.p)
    }

    pub fn monic(&self) -> PPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    #[cfg(test)]
    pub fn add(&self, o: &PPoly) -> PPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, item) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *item = (a + b) % self.p;
        }
        PPoly::new(c, self.p)
    }

    pub fn sub(&self, o: &PPoly) -> PPoly {
        let n = self.c.len().max(o.c.len());
        let mut c = vec![0u64; n];
        for (i, item) in c.iter_mut().enumerate() {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = o.c.get(i).copied().unwrap_or(0);
            *item = (a + self.p - b) % self.p;
        }
        PPoly::new(c, self.p)
    }

    pub fn mul(&self, o: &PPoly) -> PPoly {
        if self.is_zero() || o.is_zero() {
            return PPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        PPoly::new(c, self.p)
    }

    /// (quotient, remainder) by a nonzero divisor.
    pub fn divmod(&self, d: &PPoly) -> (PPoly, PPoly) {
        assert!(!d.is_zero());
        let p = self.p;
        let dd = d.deg();
        if self.deg() < dd {
            return (PPoly::zero(p), self.clone());
        }
        let inv_lc = inv_mod(d.lc(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; (self.deg() - dd + 1) as usize];
        for i in (0..q.len()).rev() {
            let top = r[i + dd as usize];
            if top == 0 {
                continue;
            }
            let f = mulmod(top, inv_lc, p);
            q[i] = f;
            for (j, &dc) in d.c.iter().enumerate() {
                let idx = i + j;
                r[idx] = (r[idx] + p - mulmod(f, dc, p)) % p;
            }
        }
        (PPoly::new(q, p), PPoly::new(r, p))
    }

    pub fn rem(&self, d: &PPoly) -> PPoly {
        self.divmod(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &PPoly) -> PPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PPoly {
        if self.c.len() <= 1 {
            return PPoly::zero(self.p);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| mulmod(x, (i as u64) % self.p, self.p))
            .collect();
        PPoly::new(c, self.p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u64, m: &PPoly) -> PPoly {
        let mut base = self.rem(m);
        let mut r = PPoly::new(vec![1], self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    /// self^e mod m with arbitrary-precision exponent.
    pub fn powmod_big(&self, e: &BigInt, m: &PPoly) -> PPoly {
        let mut base = self.rem(m);
        let mut r = PPoly::new(vec![1], self.p);
        for i in 0..e.bits() {
            if e.bit(i) {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        r
    }

    /// Extended Euclid: (g, s, t) monic with s*self + t*other = g.
    pub fn ext_gcd(&self, other: &PPoly) -> (PPoly, PPoly, PPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PPoly::new(vec![1], p), PPoly::zero(p));
        let (mut t0, mut t1) = (PPoly::zero(p), PPoly::new(vec![1], p));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        let k = inv_mod(r0.lc(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

// --- dense integer polynomials ----------------------------------------------

/// Dense univariate polynomial over Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPoly {
    pub c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn zero() -> Self {
        ZPoly { c: vec![] }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![BigInt::one()] }
    }

    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for co in self.c.iter().rev() {
            acc = acc * x + co;
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for co in &self.c {
            g = g.gcd(co);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive with positive leading coefficient; zero stays zero.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        ZPoly::new(self.c.iter().map(|x| x / &g).collect())
    }

    #[cfg(test)]
    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZPoly::new(c)
    }

    /// Exact division; None if it does not divide.
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); (self.deg() - dd + 1) as usize];
        let dlc = d.lc();
        for i in (0..q.len()).rev() {
            let top = std::mem::take(&mut r[i + dd as usize]);
            if top.is_zero() {
                continue;
            }
            let (f, rem) = top.div_rem(&dlc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.c.iter().enumerate().take(dd as usize) {
                r[i + j] -= &f * dc;
            }
            q[i] = f;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> ZPoly {
        let mut c = Vec::new();
        for (i, ci) in self.c.iter().enumerate().skip(1) {
            c.push(ci * BigInt::from(i));
        }
        ZPoly::new(c)
    }

    pub fn mod_p(&self, p: u64) -> PPoly {
        let pb = BigInt::from(p);
        let c = self
            .c
            .iter()
            .map(|x| {
                let m = x.mod_floor(&pb);
                u64::try_from(&m).unwrap()
            })
            .collect();
        PPoly::new(c, p)
    }
}

/// Symmetric representative of x mod m in (-m/2, m/2].
pub fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// CRT: combine `x ≡ a (mod m)` with `x ≡ b (mod p)`, yielding residue mod m*p.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let m_mod_p = u64::try_from(&m.mod_floor(&pb)).unwrap();
    let a_mod_p = u64::try_from(&a.mod_floor(&pb)).unwrap();
    let diff = (b + p - a_mod_p) % p;
    let t = mulmod(diff, inv_mod(m_mod_p, p), p);
    a + m * BigInt::from(t)
}

/// Univariate gcd over Z by modular images + CRT, primitive output.
pub fn gcd_univ_int(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let a = a.primitive();
    let b = b.primitive();
    if a.deg() == 0 || b.deg() == 0 {
        return ZPoly::one();
    }
    let g_lc = a.lc().gcd(&b.lc());
    let mut acc: Option<(ZPoly, BigInt, i64)> = None; // (residues, modulus, deg)
    let mut last_candidate: Option<ZPoly> = None;
    for p in primes_below(1 << 62) {
        let pb = BigInt::from(p);
        if (a.lc() % &pb).is_zero() || (b.lc() % &pb).is_zero() {
            continue;
        }
        let g = a.mod_p(p).gcd(&b.mod_p(p));
        let dg = g.deg();
        if dg == 0 {
            return ZPoly::one();
        }
        // Normalize image lc to g_lc mod p.
        let target = u64::try_from(&g_lc.mod_floor(&pb)).unwrap();
        let g = g.scale(target);
        match &mut acc {
            Some((res, m, d)) if dg == *d => {
                let mut c = Vec::with_capacity(g.c.len());
                for i in 0..=(dg as usize) {
                    let prev = res.c.get(i).cloned().unwrap_or_else(BigInt::zero);
                    c.push(crt(&prev, m, g.c.get(i).copied().unwrap_or(0), p));
                }
                *res = ZPoly { c };
                *m *= &pb;
            }
            Some((_, _, d)) if dg > *d => continue, // unlucky prime
            _ => {
                acc = Some((
                    ZPoly {
                        c: g.c.iter().map(|&x| BigInt::from(x)).collect(),
                    },
                    pb.clone(),
                    dg,
                ));
                last_candidate = None;
            }
        }
        let (res, m, _) = acc.as_ref().unwrap();
        let sym = ZPoly::new(res.c.iter().map(|x| symmetric_mod(x, m)).collect());
        let cand = sym.primitive();
        if last_candidate.as_ref() == Some(&cand) {
            // Stable under a new prime: verify by division.
            if a.exact_div(&cand).is_some() && b.exact_div(&cand).is_some() {
                return cand;
            }
        }
        last_candidate = Some(cand);
    }
    unreachable!("prime supply exhausted");
}

/// Newton interpolation through exact points; returns dense coefficients.
pub fn interpolate_rational(
    points: &[num::BigRational],
    values: &[num::BigRational],
) -> Vec<num::BigRational> {
    use num::BigRational;
    assert_eq!(points.len(), values.len());
    let n = points.len();
    // Divided differences.
    let mut dd: Vec<BigRational> = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i] - &points[i - level];
            dd[i] = num / den;
        }
    }
    // Expand Newton form to monomial coefficients.
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()]; // product of (x - points[j]) for j < i
    for (i, d) in dd.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            coeffs[j] += d * b;
        }
        if i + 1 < n {
            let c = &points[i];
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += b;
                next[j] -= c * b;
            }
            basis = next;
        }
    }
    coeffs
}
