//! Matrices of polynomials, exact determinants, and rank probing.
//!
//! Two determinant routes: Bareiss fraction-free elimination works over any
//! number of indeterminates; when at most two indeterminates appear the
//! determinant is instead sampled on an integer grid and reconstructed by
//! Newton interpolation, which is far faster on the large structured matrices
//! the Dixon construction produces. Both routes are exact.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::context::Ctx;
use crate::poly::{divides, Polynomial};
use crate::rat::{rat_i64, Rational};
use crate::zpoly::interpolate_rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ctx: Ctx,
    rows: usize,
    cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ctx: &Ctx, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![Polynomial::zero(ctx); rows * cols],
        }
    }

    pub fn from_rows(ctx: &Ctx, rows: Vec<Vec<Polynomial>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        PolyMatrix { ctx: ctx.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.data[i * self.cols + j] = p;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.at(i, j).clone()))
            .collect();
        PolyMatrix { ctx: self.ctx.clone(), rows: rows.len(), cols: cols.len(), data }
    }

    /// Union of active indeterminates over all entries.
    pub fn active_indets(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ctx.len()];
        for p in &self.data {
            for i in p.active_indets() {
                seen[i] = true;
            }
        }
        seen.iter().enumerate().filter_map(|(i, &s)| s.then_some(i)).collect()
    }
}

/// Exact determinant of a square polynomial matrix.
pub fn determinant(m: &PolyMatrix) -> Polynomial {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Polynomial::from_int(&m.ctx, 1);
    }
    if n <= 3 {
        return det_cofactor(m);
    }
    if m.active_indets().len() <= 2 {
        det_interpolate(m)
    } else {
        det_bareiss(m)
    }
}

fn det_cofactor(m: &PolyMatrix) -> Polynomial {
    let n = m.rows;
    match n {
        1 => m.at(0, 0).clone(),
        2 => m.at(0, 0).mul(m.at(1, 1)).sub(&m.at(0, 1).mul(m.at(1, 0))),
        _ => {
            let mut det = Polynomial::zero(&m.ctx);
            let rest: Vec<usize> = (1..n).collect();
            for j in 0..n {
                if m.at(0, j).is_zero() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = det_cofactor(&m.submatrix(&rest, &cols));
                let term = m.at(0, j).mul(&minor);
                det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
            }
            det
        }
    }
}

/// Fraction-free elimination; every division is exact by the Sylvester
/// identity, so no rational functions appear.
pub fn det_bareiss(m: &PolyMatrix) -> Polynomial {
    let n = m.rows;
    if n == 0 {
        return Polynomial::from_int(&m.ctx, 1);
    }
    let mut a = m.clone();
    let mut prev = Polynomial::from_int(&m.ctx, 1);
    let mut sign = 1i32;
    for k in 0..n - 1 {
        if a.at(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.at(r, k).is_zero()) {
                Some(r) => {
                    for j in 0..n {
                        let x = a.at(k, j).clone();
                        let y = a.at(r, j).clone();
                        a.set(k, j, y);
                        a.set(r, j, x);
                    }
                    sign = -sign;
                }
                None => return Polynomial::zero(&m.ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.at(k, k).mul(a.at(i, j)).sub(&a.at(i, k).mul(a.at(k, j)));
                let q = divides(&prev, &num).expect("Bareiss division not exact");
                a.set(i, j, q);
            }
        }
        prev = a.at(k, k).clone();
    }
    let det = a.at(n - 1, n - 1).clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

/// Rational Gaussian elimination, first-nonzero pivoting.
fn det_numeric(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&r| !a[r][k].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if pivot != k {
            a.swap(k, pivot);
            det = -det;
        }
        let pk = a[k][k].clone();
        det *= &pk;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pk;
            for j in k + 1..n {
                let x = &a[i][j] - &f * &a[k][j];
                a[i][j] = x;
            }
        }
    }
    det
}

fn eval_entries(m: &PolyMatrix, assign: &BTreeMap<usize, Rational>) -> Vec<Vec<Rational>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.at(i, j).evaluate_full(assign)).collect())
        .collect()
}

/// Evaluation/interpolation determinant for matrices whose entries involve at
/// most two indeterminates. Degree bounds come from row-wise maxima.
pub fn det_interpolate(m: &PolyMatrix) -> Polynomial {
    let vars = m.active_indets();
    assert!(vars.len() <= 2, "too many indeterminates to interpolate");
    let n = m.rows;
    let bound = |v: usize| -> i64 {
        (0..n)
            .map(|i| (0..n).map(|j| m.at(i, j).degree_in(v).max(0)).max().unwrap())
            .sum()
    };
    match vars.len() {
        0 => {
            let a = eval_entries(m, &BTreeMap::new());
            Polynomial::constant(&m.ctx, det_numeric(a))
        }
        1 => {
            let v = vars[0];
            let bv = bound(v);
            let points: Vec<Rational> = sample_points(bv + 1);
            let values: Vec<Rational> = points
                .par_iter()
                .map(|t| {
                    let mut assign = BTreeMap::new();
                    assign.insert(v, t.clone());
                    det_numeric(eval_entries(m, &assign))
                })
                .collect();
            univ_from_samples(&m.ctx, v, &points, &values)
        }
        _ => {
            let (v, w) = (vars[0], vars[1]);
            let (bv, bw) = (bound(v), bound(w));
            let vpoints: Vec<Rational> = sample_points(bv + 1);
            let wpoints: Vec<Rational> = sample_points(bw + 1);
            // One univariate determinant in w per v-sample, then interpolate
            // each w-coefficient across the v-samples.
            let slices: Vec<Vec<Rational>> = vpoints
                .par_iter()
                .map(|tv| {
                    let dets: Vec<Rational> = wpoints
                        .iter()
                        .map(|tw| {
                            let mut assign = BTreeMap::new();
                            assign.insert(v, tv.clone());
                            assign.insert(w, tw.clone());
                            det_numeric(eval_entries(m, &assign))
                        })
                        .collect();
                    interpolate_rational(&wpoints, &dets)
                })
                .collect();
            let mut acc = Polynomial::zero(&m.ctx);
            for k in 0..=bw as usize {
                let column: Vec<Rational> =
                    slices.iter().map(|s| s.get(k).cloned().unwrap_or_else(Rational::zero)).collect();
                let ck = univ_from_samples(&m.ctx, v, &vpoints, &column);
                if ck.is_zero() {
                    continue;
                }
                acc = acc.add(&ck.mul(&Polynomial::var(&m.ctx, w).pow(k as u32)));
            }
            acc
        }
    }
}

fn sample_points(count: i64) -> Vec<Rational> {
    (0..count)
        .map(|i| {
            let k = (i + 1) / 2;
            rat_i64(if i % 2 == 1 { k } else { -k })
        })
        .collect()
}

fn univ_from_samples(ctx: &Ctx, v: usize, points: &[Rational], values: &[Rational]) -> Polynomial {
    let coeffs = interpolate_rational(points, values);
    let polys: Vec<Polynomial> = coeffs.iter().map(|c| Polynomial::constant(ctx, c.clone())).collect();
    Polynomial::from_coefficients_wrt(ctx, v, &polys)
}

/// Row and column sets of a maximal nonsingular submatrix, chosen greedily in
/// index order on a random integer evaluation so the result is deterministic
/// for a fixed seed. The returned submatrix has exactly nonzero determinant
/// (verified exactly); maximality holds with high probability and is
/// cross-checked over several evaluations.
pub fn maximal_nonsingular_submatrix(
    m: &PolyMatrix,
    seed: u64,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let vars = m.active_indets();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5e1ec7);
    for attempt in 0..12 {
        let span = 40 + 40 * attempt as i64;
        let assign: BTreeMap<usize, Rational> =
            vars.iter().map(|&v| (v, rat_i64(rng.gen_range(-span..=span)))).collect();
        let a = eval_entries(m, &assign);

        // Greedy independent rows in index order.
        let rows = independent_rows(&a);
        if rows.is_empty() {
            // Possibly the zero matrix; trust two agreeing evaluations.
            if m.data.iter().all(|p| p.is_zero()) {
                return None;
            }
            continue;
        }
        // Columns of the selected row block, same greedy on the transpose.
        let sub: Vec<Vec<Rational>> = rows.iter().map(|&i| a[i].clone()).collect();
        let t: Vec<Vec<Rational>> =
            (0..m.cols).map(|j| sub.iter().map(|r| r[j].clone()).collect()).collect();
        let cols = independent_rows(&t);
        if cols.len() != rows.len() {
            continue;
        }
        let det = determinant(&m.submatrix(&rows, &cols));
        if !det.is_zero() {
            return Some((rows, cols));
        }
    }
    None
}

/// Indices of a lexicographically-first maximal independent row set.
fn independent_rows(a: &[Vec<Rational>]) -> Vec<usize> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut picked = Vec::new();
    for (i, row) in a.iter().enumerate() {
        let mut r = row.clone();
        for b in &basis {
            let lead = b.iter().position(|x| !x.is_zero()).unwrap();
            if !r[lead].is_zero() {
                let f = &r[lead] / &b[lead];
                for (x, y) in r.iter_mut().zip(b.iter()) {
                    *x = &*x - &f * y;
                }
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            basis.push(r);
            picked.push(i);
        }
    }
    picked
}
