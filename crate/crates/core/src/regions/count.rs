//! Certified counting of real solutions at a rational parameter point.
//!
//! Per-coordinate eliminants confine every solution to a finite grid of
//! boxes; interval rejection discards empty boxes and a Krawczyk step
//! certifies boxes holding exactly one solution. Boxes still undecided at
//! the depth limit leave the count uncertified instead of guessed.

use crate::discvar::ParametricSystem;
use crate::poly::Polynomial;
use crate::rat::{rat, sign_of, Rational};
use crate::regions::interval::{eval_box, Iv};
use crate::regions::isolate::{isolate_real_roots, refine_root, sign_at};
use crate::reschain::{res_chain_branching, ChainStatus};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::error::Error;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Real,
    /// Every coordinate strictly positive.
    Positive,
    /// Every coordinate nonnegative; exact boundary zeros are kept.
    Nonnegative,
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMode::Real => "real",
            CountMode::Positive => "positive",
            CountMode::Nonnegative => "nonnegative",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountError {
    /// The specialized system does not have finitely many solutions.
    NotZeroDimensional,
}

impl fmt::Display for CountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountError::NotZeroDimensional => {
                write!(f, "specialized system is not zero-dimensional")
            }
        }
    }
}

impl Error for CountError {}

pub const DEFAULT_DEPTH: u32 = 64;

/// Counts the solutions of the square system at the given parameter point.
/// Returns the count and whether every candidate box was decided.
pub fn count_solutions(
    sys: &ParametricSystem,
    point: &[Rational],
    mode: CountMode,
) -> Result<(usize, bool), CountError> {
    count_solutions_depth(sys, point, mode, DEFAULT_DEPTH)
}

pub fn count_solutions_depth(
    sys: &ParametricSystem,
    point: &[Rational],
    mode: CountMode,
    depth: u32,
) -> Result<(usize, bool), CountError> {
    assert_eq!(point.len(), sys.parameters.len(), "wrong point dimension");
    assert_eq!(
        sys.equations.len(),
        sys.variables.len(),
        "counting needs a square system"
    );
    let mut at = BTreeMap::new();
    for (k, v) in sys.parameters.iter().zip(point) {
        at.insert(*k, v.clone());
    }
    let spec: Vec<Polynomial> = sys.equations.iter().map(|f| f.evaluate(&at)).collect();
    if spec.iter().any(|f| f.is_zero()) {
        // An equation dropped out entirely: a positive-dimensional set.
        return Err(CountError::NotZeroDimensional);
    }
    if spec.iter().any(|f| f.is_constant()) {
        return Ok((0, true));
    }
    // One eliminant product per coordinate; its roots cover that coordinate
    // of every solution.
    let mut axes: Vec<Vec<Coord>> = Vec::with_capacity(sys.variables.len());
    for &xi in &sys.variables {
        let others: Vec<usize> = sys.variables.iter().copied().filter(|&v| v != xi).collect();
        let run = res_chain_branching(&spec, &others);
        match run.status {
            ChainStatus::FailedZero => return Err(CountError::NotZeroDimensional),
            ChainStatus::EmptySystem => return Ok((0, true)),
            ChainStatus::Complete => {}
        }
        let mut prod = Polynomial::from_int(sys.ctx(), 1);
        for p in &run.polynomials {
            prod = prod.mul(p);
        }
        debug_assert!(prod.active_indets().iter().all(|&v| v == xi));
        let iso = isolate_real_roots(&prod, xi);
        axes.push(coords_for_axis(iso.poly, xi, iso.intervals, mode));
    }
    if axes.iter().any(|roots| roots.is_empty()) {
        return Ok((0, true));
    }
    let jac: Vec<Vec<Polynomial>> = spec
        .iter()
        .map(|f| sys.variables.iter().map(|&v| f.derivative(v)).collect())
        .collect();
    let mut count = 0;
    let mut certified = true;
    let mut combo = vec![0usize; axes.len()];
    loop {
        let coords: Vec<&Coord> = combo.iter().zip(&axes).map(|(&i, ax)| &ax[i]).collect();
        match verify_box(&spec, &jac, &sys.variables, &coords, depth) {
            Some(true) => count += 1,
            Some(false) => {}
            None => certified = false,
        }
        // Next combination, last axis fastest.
        let mut k = axes.len();
        loop {
            if k == 0 {
                return Ok((count, certified));
            }
            k -= 1;
            combo[k] += 1;
            if combo[k] < axes[k].len() {
                break;
            }
            combo[k] = 0;
        }
    }
}

/// An isolated eliminant root along one coordinate axis.
struct Coord {
    poly: Polynomial,
    var: usize,
    iv: Iv,
    /// Exact rational root, when known.
    exact: Option<Rational>,
    /// Half-width budget for inflating an exact root without touching the
    /// neighbouring root intervals.
    inflate: Rational,
}

/// Separates, sign-classifies, and mode-filters the isolated roots.
fn coords_for_axis(poly: Polynomial, var: usize, intervals: Vec<Iv>, mode: CountMode) -> Vec<Coord> {
    let mut ivs = intervals;
    let mut i = 0;
    while i + 1 < ivs.len() {
        if ivs[i].hi >= ivs[i + 1].lo {
            ivs[i] = refine_root(&poly, var, &ivs[i]);
            ivs[i + 1] = refine_root(&poly, var, &ivs[i + 1]);
        } else {
            i += 1;
        }
    }
    let mut out = Vec::new();
    for (i, iv) in ivs.iter().enumerate() {
        let (iv, sign) = root_sign(&poly, var, iv.clone());
        match (mode, sign) {
            (CountMode::Real, _) => {}
            (CountMode::Positive, s) if s <= 0 => continue,
            (CountMode::Nonnegative, s) if s < 0 => continue,
            _ => {}
        }
        let gap_before = if i == 0 {
            rat(1, 1024)
        } else {
            &iv.lo - &ivs[i - 1].hi
        };
        let gap_after = if i + 1 == ivs.len() {
            rat(1, 1024)
        } else {
            &ivs[i + 1].lo - &iv.hi
        };
        let inflate = gap_before.min(gap_after).min(rat(1, 1024)) / rat(2, 1);
        let exact = if iv.is_point() { Some(iv.lo.clone()) } else { None };
        out.push(Coord { poly: poly.clone(), var, iv, exact, inflate });
    }
    out
}

/// Sign of the root isolated by `iv`: refines until the interval lies on one
/// side of zero or the root is found to be exactly zero.
fn root_sign(poly: &Polynomial, var: usize, iv: Iv) -> (Iv, i32) {
    if iv.is_point() {
        return (iv.clone(), sign_of(&iv.lo));
    }
    if iv.lo.is_positive() {
        return (iv, 1);
    }
    if iv.hi.is_negative() {
        return (iv, -1);
    }
    let zero = Rational::zero();
    let s0 = sign_at(poly, var, &zero);
    if s0 == 0 {
        // Zero is a root of the square-free eliminant and lies inside this
        // isolating interval, so it is the isolated root.
        return (Iv::point(zero), 0);
    }
    let slo = sign_at(poly, var, &iv.lo);
    if slo != s0 {
        (Iv::new(iv.lo, zero), -1)
    } else {
        (Iv::new(zero, iv.hi), 1)
    }
}

enum Kr {
    Inside,
    Disjoint,
    Undecided,
}

fn verify_box(
    spec: &[Polynomial],
    jac: &[Vec<Polynomial>],
    vars: &[usize],
    coords: &[&Coord],
    depth: u32,
) -> Option<bool> {
    let mut exact: Vec<Option<Rational>> = coords.iter().map(|c| c.exact.clone()).collect();
    let mut ivs: Vec<Iv> = Vec::with_capacity(coords.len());
    let mut inflate: Vec<Rational> = Vec::with_capacity(coords.len());
    for c in coords {
        match &c.exact {
            Some(r) => {
                ivs.push(Iv::new(r - &c.inflate, r + &c.inflate));
                inflate.push(c.inflate.clone());
            }
            None => {
                ivs.push(c.iv.clone());
                inflate.push(Rational::zero());
            }
        }
    }
    for _ in 0..=depth {
        // A fully rational candidate is decided by substitution; this also
        // settles multiple roots, which the contraction test never can.
        if exact.iter().all(|e| e.is_some()) {
            let mut at = BTreeMap::new();
            for (v, e) in vars.iter().zip(&exact) {
                at.insert(*v, e.clone().unwrap());
            }
            return Some(spec.iter().all(|f| f.evaluate_full(&at).is_zero()));
        }
        let mut bx = BTreeMap::new();
        for (v, iv) in vars.iter().zip(&ivs) {
            bx.insert(*v, iv.clone());
        }
        if spec.iter().any(|f| !eval_box(f, &bx).contains_zero()) {
            return Some(false);
        }
        match krawczyk(spec, jac, vars, &ivs) {
            Kr::Inside => return Some(true),
            Kr::Disjoint => return Some(false),
            Kr::Undecided => {}
        }
        for (k, c) in coords.iter().enumerate() {
            if let Some(r) = &exact[k] {
                inflate[k] = &inflate[k] / rat(2, 1);
                ivs[k] = Iv::new(r - &inflate[k], r + &inflate[k]);
            } else {
                let refined = refine_root(&c.poly, c.var, &ivs[k]);
                if refined.is_point() {
                    // Bisection hit the eliminant root exactly.
                    let r = refined.lo;
                    exact[k] = Some(r.clone());
                    inflate[k] = c.inflate.clone();
                    ivs[k] = Iv::new(&r - &inflate[k], &r + &inflate[k]);
                } else {
                    ivs[k] = refined;
                }
            }
        }
    }
    None
}

fn krawczyk(spec: &[Polynomial], jac: &[Vec<Polynomial>], vars: &[usize], ivs: &[Iv]) -> Kr {
    let n = vars.len();
    let mids: Vec<Rational> = ivs.iter().map(|iv| iv.mid()).collect();
    let mut at = BTreeMap::new();
    let mut bx = BTreeMap::new();
    for (k, v) in vars.iter().enumerate() {
        at.insert(*v, mids[k].clone());
        bx.insert(*v, ivs[k].clone());
    }
    let fm: Vec<Rational> = spec.iter().map(|f| f.evaluate_full(&at)).collect();
    let jm: Vec<Vec<Rational>> = jac
        .iter()
        .map(|row| row.iter().map(|d| d.evaluate_full(&at)).collect())
        .collect();
    let y = match invert(jm) {
        Some(y) => y,
        None => return Kr::Undecided,
    };
    let jx: Vec<Vec<Iv>> = jac
        .iter()
        .map(|row| row.iter().map(|d| eval_box(d, &bx)).collect())
        .collect();
    let mut inside = true;
    for i in 0..n {
        // K_i = m_i - (Y F(m))_i + sum_j (I - Y J(X))_ij (X_j - m_j)
        let mut yf = Rational::zero();
        for j in 0..n {
            yf = yf + &y[i][j] * &fm[j];
        }
        let mut k = Iv::point(&mids[i] - yf);
        for j in 0..n {
            let mut yj = Iv::point(Rational::zero());
            for (l, jrow) in jx.iter().enumerate() {
                yj = yj.add(&jrow[j].scale(&y[i][l]));
            }
            let delta = if i == j { Rational::one() } else { Rational::zero() };
            let e = Iv::point(delta).sub(&yj);
            let d = Iv::new(&ivs[j].lo - &mids[j], &ivs[j].hi - &mids[j]);
            k = k.add(&e.mul(&d));
        }
        if !k.intersects(&ivs[i]) {
            return Kr::Disjoint;
        }
        if !k.strictly_inside(&ivs[i]) {
            inside = false;
        }
    }
    if inside {
        Kr::Inside
    } else {
        Kr::Undecided
    }
}

fn invert(mut m: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let a = &m[col][j] * &f;
                m[r][j] = &m[r][j] - a;
                let b = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - b;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::discvar::{ParametricSystem, SignConstraint};
    use crate::poly::parse_polynomial;
    use crate::rat::rat_i64;

    fn quadratic() -> ParametricSystem {
        let ctx = Context::new(&["b", "c"], &["x"]).unwrap();
        let f = parse_polynomial(&ctx, "x^2+b*x+c", 0).unwrap();
        ParametricSystem::new(vec![f], vec![2], vec![0, 1], vec![SignConstraint::Free])
    }

    #[test]
    fn quadratic_counts_by_mode() {
        let sys = quadratic();
        let at = |b: i64, c: i64| vec![rat_i64(b), rat_i64(c)];
        assert_eq!(count_solutions(&sys, &at(0, -1), CountMode::Real), Ok((2, true)));
        assert_eq!(count_solutions(&sys, &at(0, 1), CountMode::Real), Ok((0, true)));
        assert_eq!(count_solutions(&sys, &at(0, -1), CountMode::Positive), Ok((1, true)));
        assert_eq!(count_solutions(&sys, &at(-3, 2), CountMode::Positive), Ok((2, true)));
        assert_eq!(count_solutions(&sys, &at(3, 2), CountMode::Positive), Ok((0, true)));
    }

    #[test]
    fn exact_double_root_counts_once() {
        let sys = quadratic();
        // x^2 - 2x + 1 = (x-1)^2: one geometric solution.
        let (n, certified) =
            count_solutions(&sys, &[rat_i64(-2), rat_i64(1)], CountMode::Real).unwrap();
        assert_eq!((n, certified), (1, true));
    }

    #[test]
    fn boundary_zeros_split_positive_from_nonnegative() {
        let ctx = Context::new(&["c"], &["x"]).unwrap();
        let f = parse_polynomial(&ctx, "x^2-c*x", 0).unwrap();
        let sys = ParametricSystem::new(vec![f], vec![1], vec![0], vec![SignConstraint::Nonnegative]);
        let pt = vec![rat_i64(2)];
        assert_eq!(count_solutions(&sys, &pt, CountMode::Real), Ok((2, true)));
        assert_eq!(count_solutions(&sys, &pt, CountMode::Positive), Ok((1, true)));
        assert_eq!(count_solutions(&sys, &pt, CountMode::Nonnegative), Ok((2, true)));
    }

    #[test]
    fn circle_and_line_intersection() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let f = parse_polynomial(&ctx, "x^2+y^2-a", 0).unwrap();
        let g = parse_polynomial(&ctx, "x-y", 0).unwrap();
        let sys = ParametricSystem::new(
            vec![f, g],
            vec![1, 2],
            vec![0],
            vec![SignConstraint::Free, SignConstraint::Free],
        );
        let pt = vec![rat_i64(2)];
        assert_eq!(count_solutions(&sys, &pt, CountMode::Real), Ok((2, true)));
        assert_eq!(count_solutions(&sys, &pt, CountMode::Positive), Ok((1, true)));
        // Radius 0: the circle degenerates to the origin.
        let origin = vec![rat_i64(0)];
        assert_eq!(count_solutions(&sys, &origin, CountMode::Real), Ok((1, true)));
        assert_eq!(count_solutions(&sys, &origin, CountMode::Positive), Ok((0, true)));
        assert_eq!(count_solutions(&sys, &origin, CountMode::Nonnegative), Ok((1, true)));
        // Negative radius: empty.
        assert_eq!(count_solutions(&sys, &[rat_i64(-1)], CountMode::Real), Ok((0, true)));
    }

    #[test]
    fn degenerate_specializations_are_reported() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let f = parse_polynomial(&ctx, "a*x-a*y", 0).unwrap();
        let g = parse_polynomial(&ctx, "x+y-1", 0).unwrap();
        let sys = ParametricSystem::new(
            vec![f, g],
            vec![1, 2],
            vec![0],
            vec![SignConstraint::Free, SignConstraint::Free],
        );
        // a = 0 kills the first equation.
        assert_eq!(
            count_solutions(&sys, &[rat_i64(0)], CountMode::Real),
            Err(CountError::NotZeroDimensional)
        );
        // a = 1 leaves the line x = y: the chain fails to zero.
        let h = parse_polynomial(&ctx, "2*x-2*y", 0).unwrap();
        let f2 = parse_polynomial(&ctx, "a*x-a*y", 0).unwrap();
        let sys2 = ParametricSystem::new(
            vec![f2, h],
            vec![1, 2],
            vec![0],
            vec![SignConstraint::Free, SignConstraint::Free],
        );
        assert_eq!(
            count_solutions(&sys2, &[rat_i64(1)], CountMode::Real),
            Err(CountError::NotZeroDimensional)
        );
    }

    #[test]
    fn inconsistent_systems_count_zero() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let f = parse_polynomial(&ctx, "x-y", 0).unwrap();
        let g = parse_polynomial(&ctx, "x-y-a", 0).unwrap();
        let sys = ParametricSystem::new(
            vec![f, g],
            vec![1, 2],
            vec![0],
            vec![SignConstraint::Free, SignConstraint::Free],
        );
        assert_eq!(count_solutions(&sys, &[rat_i64(1)], CountMode::Real), Ok((0, true)));
    }

    #[test]
    fn counting_matches_direct_isolation_for_one_variable() {
        let sys = quadratic();
        for (b, c) in [(0, -4), (1, -1), (-5, 6), (2, 5), (4, 4)] {
            let pt = vec![rat_i64(b), rat_i64(c)];
            let at: BTreeMap<usize, Rational> =
                [(0, rat_i64(b)), (1, rat_i64(c))].into_iter().collect();
            let f = sys.equations[0].evaluate(&at);
            let direct = isolate_real_roots(&f, 2).intervals.len();
            let (n, certified) = count_solutions(&sys, &pt, CountMode::Real).unwrap();
            assert!(certified);
            assert_eq!(n, direct, "b={b} c={c}");
        }
    }
}
