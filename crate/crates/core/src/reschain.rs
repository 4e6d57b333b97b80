//! Variable elimination by iterated univariate resultants.
//!
//! Both algorithms walk the variable tuple last to first, carrying branches
//! of factor lists. Within a branch the first list is the pivot: its factors
//! are resolved against every later list through modified resultants, common
//! factors split off into branches of their own, and the surviving lists drop
//! to the next level. The simple chain produces one successor branch per
//! branch and level; the branching chain forks one successor per pivot
//! factor, trading branch count for smaller resultants.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::factor::distinct_factors;
use crate::poly::{divides, exact_div, gcd, Polynomial};
use crate::resultants::modified_resultant;

/// One elimination branch. `factor_lists` is an ordered sequence of factor
/// sets, one per remaining polynomial; the first is the pivot of the next
/// step. Lists hold nonconstant canonical factors, each list sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactorBranch {
    pub factor_lists: Vec<Vec<Polynomial>>,
    /// Variables still to eliminate; the next one is xvars[level - 1].
    pub level: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStatus {
    /// All variables eliminated; the output is parameter-only.
    Complete,
    /// A branch shrank to a single list still containing the level variable.
    /// Resultants cannot eliminate further, and the only sound cover of the
    /// projection is V(0), so the whole run aborts with {0}.
    FailedZero,
    /// Every branch died on a constant resultant: no parameter value gives
    /// the system a common solution.
    EmptySystem,
}

#[derive(Debug, Clone)]
pub struct EliminationResult {
    /// Sorted distinct canonical polynomials; parameter-only when complete.
    pub polynomials: Vec<Polynomial>,
    pub status: ChainStatus,
    /// Branch work items processed across all levels.
    pub branch_count: usize,
    /// (variable index, wall clock) per level, in elimination order.
    pub timings: Vec<(usize, Duration)>,
    /// Common factors that were split into their own branch, tagged with the
    /// variable being eliminated when the split happened.
    pub isolated: Vec<(usize, Polynomial)>,
    /// Terminal branches; `polynomials` is the union of their lists.
    pub branches: Vec<FactorBranch>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Simple,
    Branching,
}

/// Elimination with one successor branch per branch and level.
pub fn res_chain_simple(f: &[Polynomial], xvars: &[usize]) -> EliminationResult {
    run_chain(f, xvars, Mode::Simple)
}

/// Elimination that forks one successor branch per pivot factor.
pub fn res_chain_branching(f: &[Polynomial], xvars: &[usize]) -> EliminationResult {
    run_chain(f, xvars, Mode::Branching)
}

/// True iff every reference polynomial divides the product of the result
/// polynomials: containment up to factor granularity and constants.
pub fn elimination_contains(result: &EliminationResult, reference: &[Polynomial]) -> bool {
    let mut prod = match reference.first() {
        Some(r) => Polynomial::from_int(r.ctx(), 1),
        None => return true,
    };
    for p in &result.polynomials {
        prod = prod.mul(p);
    }
    reference.iter().all(|r| divides(r, &prod).is_some())
}

/// Factor sets of resultants recur across branches; memoize them per run.
struct FactorCache(Mutex<BTreeMap<Polynomial, Vec<Polynomial>>>);

impl FactorCache {
    fn factors(&self, p: &Polynomial) -> Vec<Polynomial> {
        if p.is_constant() {
            return Vec::new();
        }
        if let Some(hit) = self.0.lock().unwrap().get(p) {
            return hit.clone();
        }
        let fs = distinct_factors(p);
        self.0.lock().unwrap().insert(p.clone(), fs.clone());
        fs
    }
}

enum Step {
    /// Single list still containing the level variable.
    Fail,
    /// `advanced` drop to the next level; `spawned` rerun the current one,
    /// keyed by the isolated common factor.
    Expand {
        advanced: Vec<Vec<Vec<Polynomial>>>,
        spawned: Vec<(Polynomial, Vec<Vec<Polynomial>>)>,
    },
}

fn run_chain(f: &[Polynomial], xvars: &[usize], mode: Mode) -> EliminationResult {
    assert!(!f.is_empty(), "empty input system");
    let ctx = f[0].ctx().clone();
    for p in f {
        assert!(!p.is_zero(), "zero polynomial in input system");
    }

    let cache = FactorCache(Mutex::new(BTreeMap::new()));
    let failed = AtomicBool::new(false);
    let mut queue = vec![FactorBranch {
        factor_lists: f.iter().map(distinct_factors).collect(),
        level: xvars.len(),
    }];
    let mut branch_count = 0usize;
    let mut timings = Vec::new();
    let mut isolated: Vec<(usize, Polynomial)> = Vec::new();

    for level in (1..=xvars.len()).rev() {
        let v = xvars[level - 1];
        let started = Instant::now();
        // Duplicate suppression: one copy per distinct list sequence and level.
        let mut seen: BTreeSet<Vec<Vec<Polynomial>>> =
            queue.iter().map(|b| b.factor_lists.clone()).collect();
        let mut seen_next = BTreeSet::new();
        let mut next = Vec::new();
        while !queue.is_empty() && !failed.load(Ordering::SeqCst) {
            branch_count += queue.len();
            let steps: Vec<Step> = queue
                .par_iter()
                .map(|b| process(b, v, mode, &cache, &failed))
                .collect();
            let mut respawned = Vec::new();
            for step in steps {
                let (advanced, spawned) = match step {
                    Step::Fail => continue,
                    Step::Expand { advanced, spawned } => (advanced, spawned),
                };
                for lists in advanced {
                    if seen_next.insert(lists.clone()) {
                        next.push(FactorBranch { factor_lists: lists, level: level - 1 });
                    }
                }
                for (h, lists) in spawned {
                    isolated.push((v, h));
                    if seen.insert(lists.clone()) {
                        respawned.push(FactorBranch { factor_lists: lists, level });
                    }
                }
            }
            queue = respawned;
        }
        timings.push((v, started.elapsed()));
        if failed.load(Ordering::SeqCst) {
            // Other branches of the failing wave may have been skipped, so
            // nothing besides the bare verdict is reportable here.
            return EliminationResult {
                polynomials: vec![Polynomial::zero(&ctx)],
                status: ChainStatus::FailedZero,
                branch_count,
                timings,
                isolated: Vec::new(),
                branches: Vec::new(),
            };
        }
        queue = next;
    }

    let mut polys = BTreeSet::new();
    for b in &queue {
        for list in &b.factor_lists {
            polys.extend(list.iter().cloned());
        }
    }
    let status = if queue.is_empty() { ChainStatus::EmptySystem } else { ChainStatus::Complete };
    debug_assert!(
        polys.iter().all(|p: &Polynomial| xvars.iter().all(|&v| p.degree_in(v) == 0)),
        "variable left in a completed elimination"
    );
    isolated.sort();
    isolated.dedup();
    EliminationResult {
        polynomials: polys.into_iter().collect(),
        status,
        branch_count,
        timings,
        isolated,
        branches: queue,
    }
}

fn process(
    b: &FactorBranch,
    v: usize,
    mode: Mode,
    cache: &FactorCache,
    failed: &AtomicBool,
) -> Step {
    if failed.load(Ordering::SeqCst) {
        return Step::Expand { advanced: Vec::new(), spawned: Vec::new() };
    }
    // An empty factor list is a nonzero constant equation: unsatisfiable.
    if b.factor_lists.iter().any(|l| l.is_empty()) {
        return Step::Expand { advanced: Vec::new(), spawned: Vec::new() };
    }
    if b.factor_lists.len() == 1 {
        if b.factor_lists[0].iter().any(|p| p.degree_in(v) > 0) {
            failed.store(true, Ordering::SeqCst);
            return Step::Fail;
        }
        // Nothing to resolve against; the list drops through unchanged.
        return Step::Expand { advanced: vec![b.factor_lists.clone()], spawned: Vec::new() };
    }
    match mode {
        Mode::Simple => expand_simple(b, v, cache),
        Mode::Branching => expand_branching(b, v, cache),
    }
}

fn expand_simple(b: &FactorBranch, v: usize, cache: &FactorCache) -> Step {
    let lists = &b.factor_lists;
    let mut spawned = Vec::new();
    let mut new_lists = Vec::with_capacity(lists.len() - 1);
    let mut alive = true;
    for j in 1..lists.len() {
        let mut pj = BTreeSet::new();
        for f in &lists[0] {
            for g in &lists[j] {
                pair(f, g, v, b, cache, &mut pj, &mut spawned);
            }
        }
        // Empty means the pivot and this polynomial never share a root, so
        // the branch is unsatisfiable. Spawns made so far still cover the
        // common-factor loci and stay.
        if pj.is_empty() {
            alive = false;
            break;
        }
        new_lists.push(pj.into_iter().collect());
    }
    let advanced = if alive { vec![new_lists] } else { Vec::new() };
    Step::Expand { advanced, spawned }
}

fn expand_branching(b: &FactorBranch, v: usize, cache: &FactorCache) -> Step {
    let lists = &b.factor_lists;
    let mut spawned = Vec::new();
    let mut advanced = Vec::new();
    for f in &lists[0] {
        let mut new_lists = Vec::with_capacity(lists.len() - 1);
        let mut alive = true;
        for j in 1..lists.len() {
            let mut pj = BTreeSet::new();
            for g in &lists[j] {
                pair(f, g, v, b, cache, &mut pj, &mut spawned);
            }
            if pj.is_empty() {
                alive = false;
                break;
            }
            new_lists.push(pj.into_iter().collect());
        }
        if alive {
            advanced.push(new_lists);
        }
    }
    Step::Expand { advanced, spawned }
}

/// Resolve one pivot/other factor pair. A nonconstant gcd h means the pair
/// can vanish jointly on V(h); that locus is split into its own branch, which
/// keeps [h] plus every list with no factor divisible by h. The resultant is
/// then taken on the cofactors. Those are coprime, so it is never zero; with
/// certified irreducible factors this reduces to an equality test on f and g.
fn pair(
    f: &Polynomial,
    g: &Polynomial,
    v: usize,
    b: &FactorBranch,
    cache: &FactorCache,
    out: &mut BTreeSet<Polynomial>,
    spawned: &mut Vec<(Polynomial, Vec<Vec<Polynomial>>)>,
) {
    let h = gcd(f, g);
    let (f, g) = if h.is_constant() {
        (f.clone(), g.clone())
    } else {
        let mut lists = vec![vec![h.clone()]];
        lists.extend(
            b.factor_lists
                .iter()
                .filter(|list| !list.iter().any(|q| divides(&h, q).is_some()))
                .cloned(),
        );
        spawned.push((h.clone(), lists));
        (exact_div(f, &h), exact_div(g, &h))
    };
    let r = modified_resultant(&f, &g, v);
    for q in cache.factors(&r) {
        out.insert(q);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{Context, Ctx};
    use crate::poly::parse_polynomial;

    fn p(ctx: &Ctx, s: &str) -> Polynomial {
        parse_polynomial(ctx, s, 0).unwrap()
    }

    fn set(ctx: &Ctx, strs: &[&str]) -> Vec<Polynomial> {
        let mut v: Vec<Polynomial> = strs.iter().map(|s| p(ctx, s)).collect();
        v.sort();
        v
    }

    fn curve_system(ctx: &Ctx) -> Vec<Polynomial> {
        vec![
            p(ctx, "(x^2+y^2-1)*(y-x^2)"),
            p(ctx, "x^3+x^2-y^2"),
            p(ctx, "y-a"),
        ]
    }

    #[test]
    fn quadratic_discriminant_in_one_step() {
        let ctx = Context::new(&["b", "c"], &["x"]).unwrap();
        let f = vec![p(&ctx, "x^2+b*x+c"), p(&ctx, "2*x+b")];
        for r in [res_chain_simple(&f, &[2]), res_chain_branching(&f, &[2])] {
            assert_eq!(r.status, ChainStatus::Complete);
            assert_eq!(r.polynomials, set(&ctx, &["b^2-4*c"]));
            assert_eq!(r.branch_count, 1);
            assert_eq!(r.timings.len(), 1);
        }
    }

    #[test]
    fn simple_chain_keeps_mixed_pivot_resultants() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let r = res_chain_simple(&curve_system(&ctx), &[1, 2]);
        assert_eq!(r.status, ChainStatus::Complete);
        assert_eq!(
            r.polynomials,
            set(&ctx, &["a", "a-1", "a+1", "a^2-3*a+1", "a^4+a^2-1"])
        );
        assert_eq!(r.branch_count, 2);
        assert!(r.isolated.is_empty());
    }

    #[test]
    fn branching_chain_drops_cross_factor_components() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let r = res_chain_branching(&curve_system(&ctx), &[1, 2]);
        assert_eq!(r.status, ChainStatus::Complete);
        assert_eq!(r.polynomials, set(&ctx, &["a", "a^2-3*a+1", "a^4+a^2-1"]));
        assert_eq!(r.branch_count, 3);
        // Two pivot factors met the same final list {a}; merged, three leaves.
        assert_eq!(r.branches.len(), 3);
        assert!(r.branches.iter().all(|b| b.level == 0));
    }

    #[test]
    fn branching_isolates_a_shared_linear_factor() {
        let ctx = Context::new(&["a", "b", "c"], &["x", "y"]).unwrap();
        let f = vec![
            p(&ctx, "x^2+y^2-1"),
            p(&ctx, "(x^2-y^2)*(x-c)"),
            p(&ctx, "(y-x^2+a)*(x-c)"),
            p(&ctx, "y-b"),
        ];
        let r = res_chain_branching(&f, &[3, 4]);
        assert_eq!(r.status, ChainStatus::Complete);
        assert_eq!(
            r.polynomials,
            set(
                &ctx,
                &[
                    "2*c^2-1",
                    "4*a^2-4*a-1",
                    "2*b^2-1",
                    "c^4-2*a*c^2+c^2+a^2-1",
                    "b^2+c^2-1",
                ]
            )
        );
        // The shared factor x-c is canonical as c-x: c outranks x here.
        assert_eq!(r.isolated, vec![(3, p(&ctx, "c-x"))]);
        // Same containment holds against the fractional reference forms.
        let reference = set(
            &ctx,
            &["c^2-1/2", "a^2-a-1/4", "b^2-1/2", "c^4-2*a*c^2+a^2+c^2-1", "b^2+c^2-1"],
        );
        assert!(elimination_contains(&r, &reference));
    }

    #[test]
    fn single_polynomial_with_variables_fails_zero() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let f = vec![p(&ctx, "x^2+y^2-1")];
        let r = res_chain_simple(&f, &[1, 2]);
        assert_eq!(r.status, ChainStatus::FailedZero);
        assert_eq!(r.polynomials.len(), 1);
        assert!(r.polynomials[0].is_zero());
    }

    #[test]
    fn late_single_list_failure_after_one_level() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        // Eliminating y leaves one list {x} that still contains x.
        let f = vec![p(&ctx, "x^2+y^2-1"), p(&ctx, "x")];
        for r in [res_chain_simple(&f, &[1, 2]), res_chain_branching(&f, &[1, 2])] {
            assert_eq!(r.status, ChainStatus::FailedZero);
            assert!(r.polynomials[0].is_zero());
            assert_eq!(r.timings.len(), 2);
        }
    }

    #[test]
    fn coprime_constant_resultant_gives_empty_system() {
        let ctx = Context::new(&["a"], &["x"]).unwrap();
        let f = vec![p(&ctx, "x"), p(&ctx, "x+1")];
        for r in [res_chain_simple(&f, &[1]), res_chain_branching(&f, &[1])] {
            assert_eq!(r.status, ChainStatus::EmptySystem);
            assert!(r.polynomials.is_empty());
            assert!(r.branches.is_empty());
        }
    }

    #[test]
    fn constant_equation_gives_empty_system() {
        let ctx = Context::new(&["a"], &["x"]).unwrap();
        let f = vec![p(&ctx, "3"), p(&ctx, "x-a")];
        let r = res_chain_simple(&f, &[1]);
        assert_eq!(r.status, ChainStatus::EmptySystem);
        assert!(r.polynomials.is_empty());
    }

    #[test]
    fn contains_needs_every_reference_factor() {
        let ctx = Context::new(&["a"], &[]).unwrap();
        let hit = EliminationResult {
            polynomials: set(&ctx, &["a", "a^2-3*a+1"]),
            status: ChainStatus::Complete,
            branch_count: 1,
            timings: Vec::new(),
            isolated: Vec::new(),
            branches: Vec::new(),
        };
        assert!(!elimination_contains(&hit, &[p(&ctx, "a+1")]));
        assert!(elimination_contains(&hit, &[p(&ctx, "a"), p(&ctx, "a^2-3*a+1")]));
        assert!(elimination_contains(&hit, &[]));
    }

    #[test]
    fn branching_output_is_contained_in_simple_output() {
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let f = curve_system(&ctx);
        let simple = res_chain_simple(&f, &[1, 2]);
        let branching = res_chain_branching(&f, &[1, 2]);
        assert!(elimination_contains(&simple, &branching.polynomials));
        assert!(!elimination_contains(&branching, &simple.polynomials));
    }

    #[test]
    fn chain_runs_are_reproducible() {
        let ctx = Context::new(&["a", "b", "c"], &["x", "y"]).unwrap();
        let f = vec![
            p(&ctx, "x^2+y^2-1"),
            p(&ctx, "(x^2-y^2)*(x-c)"),
            p(&ctx, "(y-x^2+a)*(x-c)"),
            p(&ctx, "y-b"),
        ];
        let a = res_chain_branching(&f, &[3, 4]);
        let b = res_chain_branching(&f, &[3, 4]);
        assert_eq!(a.polynomials, b.polynomials);
        assert_eq!(a.branch_count, b.branch_count);
        assert_eq!(a.isolated, b.isolated);
        assert_eq!(a.branches, b.branches);
    }

    #[test]
    fn output_vanishes_where_the_system_has_solutions() {
        use crate::rat::Rational;
        use num::{BigInt, Zero};
        use std::collections::BTreeMap;

        let ctx = Context::new(&["b", "c"], &["x"]).unwrap();
        let f = vec![p(&ctx, "x^2+b*x+c"), p(&ctx, "2*x+b")];
        let r = res_chain_simple(&f, &[2]);
        // Points with a double root: b = -2t, c = t^2.
        for (n, d) in [(1i64, 2i64), (-3, 1), (7, 5), (0, 1)] {
            let t = Rational::new(BigInt::from(n), BigInt::from(d));
            let mut at = BTreeMap::new();
            at.insert(0usize, Rational::from(BigInt::from(-2)) * t.clone());
            at.insert(1usize, t.clone() * t.clone());
            assert!(
                r.polynomials.iter().any(|q| q.evaluate_full(&at).is_zero()),
                "no output polynomial vanishes at t = {n}/{d}"
            );
        }
    }
}
