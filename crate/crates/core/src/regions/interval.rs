//! Exact interval arithmetic over the rationals.

use crate::poly::Polynomial;
use crate::rat::Rational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Closed rational interval [lo, hi]. Degenerate (lo == hi) intervals are
/// ordinary points; all operations stay exact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Iv {
    pub lo: Rational,
    pub hi: Rational,
}

impl Iv {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Iv { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Iv { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersects(&self, o: &Iv) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// True when self lies in the interior of `o`.
    pub fn strictly_inside(&self, o: &Iv) -> bool {
        o.lo < self.lo && self.hi < o.hi
    }

    pub fn neg(&self) -> Iv {
        Iv { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn add(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &Iv) -> Iv {
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Iv { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Iv {
        if c.is_negative() {
            Iv { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            Iv { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    /// Tight power: for even n on a straddling interval the image starts at 0,
    /// which repeated multiplication would overestimate.
    pub fn pow(&self, n: u32) -> Iv {
        if n == 0 {
            return Iv::point(Rational::one());
        }
        let a = rat_pow(&self.lo, n);
        let b = rat_pow(&self.hi, n);
        if n % 2 == 1 {
            return Iv { lo: a, hi: b };
        }
        if !self.lo.is_negative() {
            Iv { lo: a, hi: b }
        } else if !self.hi.is_positive() {
            Iv { lo: b, hi: a }
        } else {
            Iv { lo: Rational::zero(), hi: a.max(b) }
        }
    }
}

fn rat_pow(r: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut base = r.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc *= &base;
        }
        n >>= 1;
        if n > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Interval evaluation of `p` over a box. Every active indeterminate of `p`
/// must be assigned; the result encloses the exact range over the box.
pub fn eval_box(p: &Polynomial, vals: &BTreeMap<usize, Iv>) -> Iv {
    let mut acc = Iv::point(Rational::zero());
    for (m, c) in p.terms() {
        let mut t = Iv::point(c.clone());
        for (v, e) in m.0.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let iv = vals
                .get(&v)
                .unwrap_or_else(|| panic!("unassigned indeterminate {v}"));
            t = t.mul(&iv.pow(*e as u32));
        }
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::poly::parse_polynomial;
    use crate::rat::{rat, rat_i64};

    fn iv(a: i64, b: i64) -> Iv {
        Iv::new(rat_i64(a), rat_i64(b))
    }

    #[test]
    fn arithmetic_is_tight() {
        assert_eq!(iv(-1, 2).mul(&iv(-3, 1)), iv(-6, 3));
        assert_eq!(iv(-1, 2).pow(2), iv(0, 4));
        assert_eq!(iv(-3, -1).pow(2), iv(1, 9));
        assert_eq!(iv(-2, 1).pow(3), iv(-8, 1));
        assert_eq!(iv(1, 2).sub(&iv(3, 5)), iv(-4, -1));
        assert_eq!(iv(-1, 2).scale(&rat_i64(-2)), iv(-4, 2));
        assert_eq!(iv(2, 3).pow(0), Iv::point(rat_i64(1)));
    }

    #[test]
    fn squares_beat_repeated_multiplication() {
        let x = iv(-1, 2);
        let by_mul = x.mul(&x);
        let by_pow = x.pow(2);
        assert!(by_pow.lo > by_mul.lo);
        assert_eq!(by_pow, iv(0, 4));
    }

    #[test]
    fn box_evaluation_encloses_the_range() {
        let ctx = Context::new(&[], &["x", "y"]).unwrap();
        let p = parse_polynomial(&ctx, "x^2 - 2*x*y + y^2", 0).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert(0, iv(-1, 1));
        vals.insert(1, iv(-1, 1));
        let range = eval_box(&p, &vals);
        // (x-y)^2 over the box is [0,4]; the naive term sum gives an enclosure.
        assert!(range.contains(&rat_i64(0)));
        assert!(range.contains(&rat_i64(4)));
        // A point box evaluates exactly.
        let mut pt = BTreeMap::new();
        pt.insert(0, Iv::point(rat(1, 2)));
        pt.insert(1, Iv::point(rat(-1, 2)));
        assert_eq!(eval_box(&p, &pt), Iv::point(rat_i64(1)));
    }
}
