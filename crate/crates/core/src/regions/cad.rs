//! Open cylindrical decomposition of 1- and 2-parameter boxes.
//!
//! Only full-dimensional cells are produced: the sign-invariant open sets
//! between the candidate curves. Boundaries are returned as rational
//! enclosures of the algebraic cell bounds.

use crate::factor::square_free;
use crate::poly::{exact_div, gcd, Polynomial};
use crate::rat::{simplest_in_interval, sign_of, Rational};
use crate::regions::interval::Iv;
use crate::regions::isolate::{isolate_roots_in, refine_root, RootIsolation};
use crate::resultants::resultant;
use std::collections::BTreeMap;

/// One open cell of the decomposition, carrying a rational sample point
/// strictly inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dimension: u8,
    /// Index of the base-axis interval this cell lives over.
    pub base: usize,
    /// Index of the sector in the stack over the base interval; 0 in 1D.
    pub sector: usize,
    /// Rational enclosures of the true cell bounds, one per axis.
    pub spans: Vec<Iv>,
    pub sample: Vec<Rational>,
}

/// Splits a window at the roots of the candidates, one cell per open gap.
pub fn open_cad_1d(candidates: &[Polynomial], k: usize, window: &Iv) -> Vec<Cell> {
    let basis = coprime_basis(candidates);
    for p in &basis {
        assert!(
            p.active_indets().iter().all(|&i| i == k),
            "candidate involves an indeterminate besides the parameter"
        );
    }
    let sectors = open_sectors(&basis, k, window);
    let cells: Vec<Cell> = sectors
        .into_iter()
        .enumerate()
        .map(|(i, s)| Cell {
            dimension: 1,
            base: i,
            sector: 0,
            spans: vec![s.span],
            sample: vec![s.sample],
        })
        .collect();
    debug_assert!(samples_avoid(candidates, &[k], &cells));
    cells
}

/// Decomposes the box into open cells on which every candidate has constant
/// sign: the base axis `k1` splits at the projection polynomials (leading
/// coefficients, discriminants, pairwise resultants with respect to `k2`),
/// and each stack splits at the curve branches over a base sample.
pub fn open_cad_2d(
    candidates: &[Polynomial],
    k1: usize,
    k2: usize,
    b1: &Iv,
    b2: &Iv,
) -> Vec<Cell> {
    let basis = coprime_basis(candidates);
    for p in &basis {
        assert!(
            p.active_indets().iter().all(|&i| i == k1 || i == k2),
            "candidate involves an indeterminate besides the parameters"
        );
    }
    let mut base_polys: Vec<Polynomial> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        if p.degree_in(k2) == 0 {
            base_polys.push(p.clone());
            continue;
        }
        let lc = p.leading_coefficient_wrt(k2);
        if !lc.is_constant() {
            base_polys.push(lc.canonical());
        }
        if p.degree_in(k2) >= 2 {
            let d = resultant(p, &p.derivative(k2), k2);
            assert!(!d.is_zero(), "square-free candidate with zero discriminant");
            if !d.is_constant() {
                base_polys.push(d.canonical());
            }
        }
        for q in &basis[i + 1..] {
            if q.degree_in(k2) == 0 {
                continue;
            }
            let r = resultant(p, q, k2);
            assert!(!r.is_zero(), "coprime candidates with zero resultant");
            if !r.is_constant() {
                base_polys.push(r.canonical());
            }
        }
    }
    let base_sectors = open_sectors(&base_polys, k1, b1);
    let stack: Vec<&Polynomial> = basis.iter().filter(|p| p.degree_in(k2) > 0).collect();
    let mut cells = Vec::new();
    for (bi, bs) in base_sectors.iter().enumerate() {
        let mut at = BTreeMap::new();
        at.insert(k1, bs.sample.clone());
        let fibers: Vec<Polynomial> = stack
            .iter()
            .map(|p| {
                let f = p.evaluate(&at);
                // The sample avoids every leading-coefficient root, so no
                // curve degenerates over it.
                debug_assert_eq!(f.degree_in(k2), p.degree_in(k2));
                f
            })
            .collect();
        for (sj, ss) in open_sectors(&fibers, k2, b2).into_iter().enumerate() {
            cells.push(Cell {
                dimension: 2,
                base: bi,
                sector: sj,
                spans: vec![bs.span.clone(), ss.span],
                sample: vec![bs.sample.clone(), ss.sample],
            });
        }
    }
    debug_assert!(samples_avoid(candidates, &[k1, k2], &cells));
    cells
}

/// Square-free, pairwise coprime generators with the same zero set as the
/// input. Constants vanish nowhere and are dropped.
pub fn coprime_basis(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut work: Vec<Polynomial> = Vec::new();
    for p in polys {
        assert!(!p.is_zero(), "zero candidate");
        if p.is_constant() {
            continue;
        }
        let (_, fs) = square_free(p);
        for (f, _) in fs {
            let f = f.canonical();
            if !work.contains(&f) {
                work.push(f);
            }
        }
    }
    'split: loop {
        for i in 0..work.len() {
            for j in i + 1..work.len() {
                let h = gcd(&work[i], &work[j]);
                if h.is_constant() {
                    continue;
                }
                let a = exact_div(&work[i], &h).canonical();
                let b = exact_div(&work[j], &h).canonical();
                work.swap_remove(j);
                work.swap_remove(i);
                for part in [h, a, b] {
                    if !part.is_constant() && !work.contains(&part) {
                        work.push(part);
                    }
                }
                continue 'split;
            }
        }
        break;
    }
    work.sort();
    work
}

struct Sector {
    span: Iv,
    sample: Rational,
}

/// Open gaps between the roots of the product of `polys` inside the window,
/// each with a small-denominator rational sample strictly between the
/// neighbouring roots.
fn open_sectors(polys: &[Polynomial], v: usize, window: &Iv) -> Vec<Sector> {
    let mut cuts: Vec<Iv> = Vec::new();
    let mut prod: Option<Polynomial> = None;
    for p in polys {
        if p.degree_in(v) == 0 {
            continue;
        }
        prod = Some(match prod {
            None => p.clone(),
            Some(q) => q.mul(p),
        });
    }
    let iso = prod.map(|p| isolate_roots_in(&p, v, window));
    if let Some(iso) = &iso {
        cuts = separated_intervals(iso, window);
    }
    let mut sectors = Vec::with_capacity(cuts.len() + 1);
    let mut prev_exit = window.lo.clone();
    let mut prev_outer = window.lo.clone();
    for iv in &cuts {
        sectors.push(Sector {
            span: Iv::new(prev_outer.clone(), iv.hi.clone()),
            sample: simplest_in_interval(&prev_exit, &iv.lo),
        });
        prev_exit = iv.hi.clone();
        prev_outer = iv.lo.clone();
    }
    sectors.push(Sector {
        span: Iv::new(prev_outer, window.hi.clone()),
        sample: simplest_in_interval(&prev_exit, &window.hi),
    });
    sectors
}

/// Refines until every interval sits strictly inside the window and
/// consecutive intervals have a gap between them.
fn separated_intervals(iso: &RootIsolation, window: &Iv) -> Vec<Iv> {
    let mut ivs = iso.intervals.clone();
    for iv in ivs.iter_mut() {
        while !iv.is_point() && (iv.lo <= window.lo || iv.hi >= window.hi) {
            *iv = refine_root(&iso.poly, iso.var, iv);
        }
    }
    let mut i = 0;
    while i + 1 < ivs.len() {
        if ivs[i].hi >= ivs[i + 1].lo {
            ivs[i] = refine_root(&iso.poly, iso.var, &ivs[i]);
            ivs[i + 1] = refine_root(&iso.poly, iso.var, &ivs[i + 1]);
        } else {
            i += 1;
        }
    }
    ivs
}

fn samples_avoid(candidates: &[Polynomial], ks: &[usize], cells: &[Cell]) -> bool {
    cells.iter().all(|c| {
        let mut at = BTreeMap::new();
        for (k, s) in ks.iter().zip(&c.sample) {
            at.insert(*k, s.clone());
        }
        candidates
            .iter()
            .all(|p| sign_of(&p.evaluate_full(&at)) != 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{Context, Ctx};
    use crate::poly::parse_polynomial;
    use crate::rat::{rat, rat_i64};

    fn ctx() -> Ctx {
        // Base axis first: index 0 stacks along index 1.
        Context::new(&["c", "b"], &["x"]).unwrap()
    }

    fn p(c: &Ctx, s: &str) -> Polynomial {
        parse_polynomial(c, s, 0).unwrap()
    }

    fn iv(a: i64, b: i64) -> Iv {
        Iv::new(rat_i64(a), rat_i64(b))
    }

    #[test]
    fn coprime_basis_splits_shared_factors() {
        let c = ctx();
        let basis = coprime_basis(&[p(&c, "c^2-1"), p(&c, "c-1"), p(&c, "3")]);
        assert_eq!(basis, vec![p(&c, "c-1"), p(&c, "c+1")]);
        // Repeated factors collapse.
        let basis = coprime_basis(&[p(&c, "c^2-2*c+1")]);
        assert_eq!(basis, vec![p(&c, "c-1")]);
    }

    #[test]
    fn one_parameter_windows_split_at_roots() {
        let c = ctx();
        let cells = open_cad_1d(&[p(&c, "c^2-3*c+1")], 0, &Iv::new(rat_i64(0), rat_i64(1)));
        // One root (3-sqrt(5))/2 in (0,1): two cells.
        assert_eq!(cells.len(), 2);
        assert!(cells[0].sample[0] < cells[1].sample[0]);
        for cell in &cells {
            assert_eq!(cell.dimension, 1);
            assert!(cell.spans[0].contains(&cell.sample[0]));
        }
        // No candidate roots inside: the whole window is one cell.
        let whole = open_cad_1d(&[p(&c, "c^2+1")], 0, &iv(-3, 3));
        assert_eq!(whole.len(), 1);
        assert_eq!(whole[0].sample[0], rat_i64(0));
    }

    #[test]
    fn parabola_gives_four_quadratic_cells() {
        let c = ctx();
        let cells = open_cad_2d(&[p(&c, "b^2-4*c")], 0, 1, &iv(-3, 3), &iv(-3, 3));
        assert_eq!(cells.len(), 4);
        // One sector left of the parabola vertex line, three right of it.
        assert_eq!(
            cells.iter().map(|c| (c.base, c.sector)).collect::<Vec<_>>(),
            vec![(0, 0), (1, 0), (1, 1), (1, 2)]
        );
        let signs: Vec<i32> = cells
            .iter()
            .map(|cell| {
                let mut at = BTreeMap::new();
                at.insert(0, cell.sample[0].clone());
                at.insert(1, cell.sample[1].clone());
                sign_of(&p(&c, "b^2-4*c").evaluate_full(&at))
            })
            .collect();
        assert_eq!(signs, vec![1, 1, -1, 1]);
    }

    #[test]
    fn empty_candidate_set_is_one_cell() {
        let cells = open_cad_2d(&[], 0, 1, &iv(-3, 3), &iv(-3, 3));
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].sample, vec![rat_i64(0), rat_i64(0)]);
        assert_eq!(cells[0].spans, vec![iv(-3, 3), iv(-3, 3)]);
    }

    #[test]
    fn vertical_lines_split_the_base() {
        let c = ctx();
        // c = 0 is a vertical line: two base intervals, full stacks.
        let cells = open_cad_2d(&[p(&c, "c")], 0, 1, &iv(-3, 3), &iv(-3, 3));
        assert_eq!(cells.len(), 2);
        assert!(cells[0].sample[0] < rat_i64(0) && cells[1].sample[0] > rat_i64(0));
    }

    #[test]
    fn leading_coefficient_roots_split_the_base() {
        let c = ctx();
        // b*c - 1: the hyperbola degenerates over c = 0.
        let cells = open_cad_2d(&[p(&c, "b*c-1")], 0, 1, &iv(-3, 3), &iv(-3, 3));
        assert_eq!(cells.len(), 4);
        let f = p(&c, "b*c-1");
        for cell in &cells {
            let mut at = BTreeMap::new();
            at.insert(0, cell.sample[0].clone());
            at.insert(1, cell.sample[1].clone());
            assert_ne!(sign_of(&f.evaluate_full(&at)), 0);
        }
    }

    #[test]
    fn zoomed_windows_keep_only_local_roots() {
        let c = ctx();
        let cells = open_cad_1d(
            &[p(&c, "c^2-3*c+1"), p(&c, "c-1")],
            0,
            &Iv::new(rat(3, 8), rat(1, 2)),
        );
        // Only (3-sqrt(5))/2 ~ 0.382 lies inside (3/8, 1/2).
        assert_eq!(cells.len(), 2);
        assert!(cells[0].sample[0] > rat(3, 8) && cells[1].sample[0] < rat(1, 2));
    }
}
