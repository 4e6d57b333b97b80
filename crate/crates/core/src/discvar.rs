//! Discriminant-variety candidates for parametric systems.
//!
//! The boundary sources are the two the underlying method uses: solutions of
//! multiplicity above one (system plus Jacobian determinant) and solutions
//! crossing zero in a sign-constrained variable (system plus that variable).
//! Each boundary system is eliminated down to parameter-only polynomials by
//! Dixon or by a resultant chain, and the factor sets are merged. Also hosts
//! the n-patch Allee model generator and the system file format.

use std::collections::BTreeSet;
use std::fmt;

use num::Signed;
use rayon::prelude::*;

use crate::context::{Context, ContextError, Ctx};
use crate::dixon::dixon_resultant_seeded;
use crate::factor::distinct_factors;
use crate::matrix::{determinant, PolyMatrix};
use crate::poly::{parse_polynomial, ParseError, Polynomial};
use crate::reschain::{res_chain_branching, res_chain_simple, ChainStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConstraint {
    Free,
    Positive,
    Nonnegative,
}

/// A square-or-not parametric system: equations over a shared context whose
/// indeterminates are split into variables (to eliminate or solve for) and
/// parameters, with one sign constraint per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricSystem {
    pub equations: Vec<Polynomial>,
    pub variables: Vec<usize>,
    pub parameters: Vec<usize>,
    pub signs: Vec<SignConstraint>,
}

impl ParametricSystem {
    pub fn new(
        equations: Vec<Polynomial>,
        variables: Vec<usize>,
        parameters: Vec<usize>,
        signs: Vec<SignConstraint>,
    ) -> ParametricSystem {
        assert!(!equations.is_empty(), "system without equations");
        assert!(!variables.is_empty() && !parameters.is_empty(), "need variables and parameters");
        assert_eq!(signs.len(), variables.len(), "one sign constraint per variable");
        let ctx = equations[0].ctx();
        for p in &equations {
            assert!(!p.is_zero(), "zero polynomial as equation");
        }
        for &v in variables.iter().chain(parameters.iter()) {
            assert!(v < ctx.len(), "indeterminate index out of range");
        }
        for &v in &variables {
            assert!(!parameters.contains(&v), "index used as both variable and parameter");
        }
        ParametricSystem { equations, variables, parameters, signs }
    }

    pub fn ctx(&self) -> &Ctx {
        self.equations[0].ctx()
    }
}

/// Jacobian determinant of a square system with respect to its variables.
pub fn jacobian_determinant(sys: &ParametricSystem) -> Polynomial {
    assert_eq!(sys.equations.len(), sys.variables.len(), "non-square system");
    let ctx = sys.ctx().clone();
    let rows = sys
        .equations
        .iter()
        .map(|f| sys.variables.iter().map(|&v| f.derivative(v)).collect())
        .collect();
    determinant(&PolyMatrix::from_rows(&ctx, rows))
}

/// The boundary systems whose projections cover the discriminant variety:
/// the multiplicity branch (equations plus Jacobian determinant) and, for
/// each sign-constrained variable, a zero-crossing branch (equations plus
/// that variable).
pub fn build_boundary_systems(sys: &ParametricSystem) -> Vec<(String, Vec<Polynomial>)> {
    let ctx = sys.ctx().clone();
    let mut mult = sys.equations.clone();
    mult.push(jacobian_determinant(sys));
    let mut out = vec![("multiplicity".to_string(), mult)];
    for (i, &v) in sys.variables.iter().enumerate() {
        if sys.signs[i] == SignConstraint::Free {
            continue;
        }
        let mut eqs = sys.equations.clone();
        eqs.push(Polynomial::var(&ctx, v));
        out.push((format!("{}=0", ctx.name(v)), eqs));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElimMethod {
    Dixon,
    ChainSimple,
    ChainBranching,
}

impl fmt::Display for ElimMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElimMethod::Dixon => "dixon",
            ElimMethod::ChainSimple => "chain-simple",
            ElimMethod::ChainBranching => "chain-branching",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    /// Sorted distinct canonical parameter-only polynomials.
    pub polynomials: Vec<Polynomial>,
    /// Parallel to `polynomials`: every coefficient shares one sign, so the
    /// factor has no zero with all coordinates strictly positive.
    pub orthant_empty: Vec<bool>,
    pub method: ElimMethod,
    /// Per boundary branch: label and its eliminated factor set.
    pub components: Vec<(String, Vec<Polynomial>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscvarError {
    /// A chain shrank to one polynomial still holding a variable; the branch
    /// projection degenerates to all of parameter space.
    FailedZero { branch: String },
    /// The Dixon matrix of the branch is identically singular.
    Degenerate { branch: String },
}

impl fmt::Display for DiscvarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscvarError::FailedZero { branch } => {
                write!(f, "elimination failed with zero on branch {branch}")
            }
            DiscvarError::Degenerate { branch } => {
                write!(f, "degenerate Dixon system on branch {branch}")
            }
        }
    }
}

impl std::error::Error for DiscvarError {}

/// True when all coefficients share one sign: such a polynomial cannot
/// vanish at any point with every coordinate strictly positive.
pub fn orthant_empty(p: &Polynomial) -> bool {
    let mut pos = false;
    let mut neg = false;
    for (_, c) in p.terms() {
        if c.is_positive() {
            pos = true;
        } else {
            neg = true;
        }
    }
    !p.is_zero() && !(pos && neg)
}

/// Which boundary sources feed the candidate set. Zero-crossing branches can
/// legitimately project onto all of parameter space (a system with an
/// always-present xi = 0 solution), which surfaces as FailedZero; restricting
/// to the multiplicity branch is then the useful mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryFilter {
    All,
    Multiplicity,
    Zeros,
}

/// Eliminate the variables from every boundary system of `sys` and merge the
/// resulting factor sets. The requested method drives the multiplicity
/// branch; zero-crossing branches always go through the branching chain,
/// whose input shape they match regardless of the equation count.
pub fn discriminant_candidates(
    sys: &ParametricSystem,
    method: ElimMethod,
) -> Result<CandidateSet, DiscvarError> {
    discriminant_candidates_with(sys, method, BoundaryFilter::All)
}

pub fn discriminant_candidates_with(
    sys: &ParametricSystem,
    method: ElimMethod,
    filter: BoundaryFilter,
) -> Result<CandidateSet, DiscvarError> {
    discriminant_candidates_seeded(sys, method, filter, 0)
}

pub fn discriminant_candidates_seeded(
    sys: &ParametricSystem,
    method: ElimMethod,
    filter: BoundaryFilter,
    seed: u64,
) -> Result<CandidateSet, DiscvarError> {
    let branches: Vec<(String, Vec<Polynomial>)> = build_boundary_systems(sys)
        .into_iter()
        .filter(|(label, _)| match filter {
            BoundaryFilter::All => true,
            BoundaryFilter::Multiplicity => label == "multiplicity",
            BoundaryFilter::Zeros => label != "multiplicity",
        })
        .collect();
    let parts: Vec<Result<(String, Vec<Polynomial>), DiscvarError>> = branches
        .par_iter()
        .map(|(label, polys)| {
            let m = if label == "multiplicity" { method } else { ElimMethod::ChainBranching };
            eliminate_branch(label, polys, &sys.variables, m, seed).map(|f| (label.clone(), f))
        })
        .collect();
    let mut components = Vec::new();
    for part in parts {
        components.push(part?);
    }
    let mut merged = BTreeSet::new();
    for (_, f) in &components {
        merged.extend(f.iter().cloned());
    }
    let polynomials: Vec<Polynomial> = merged.into_iter().collect();
    let orthant_empty = polynomials.iter().map(orthant_empty).collect();
    Ok(CandidateSet { polynomials, orthant_empty, method, components })
}

fn eliminate_branch(
    label: &str,
    polys: &[Polynomial],
    xvars: &[usize],
    method: ElimMethod,
    seed: u64,
) -> Result<Vec<Polynomial>, DiscvarError> {
    // A zero polynomial (a structurally singular Jacobian) is no constraint.
    let polys: Vec<Polynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    let result = match method {
        ElimMethod::Dixon => {
            if polys.len() != xvars.len() + 1 {
                return Err(DiscvarError::Degenerate { branch: label.to_string() });
            }
            let r = dixon_resultant_seeded(&polys, xvars, seed)
                .map_err(|_| DiscvarError::Degenerate { branch: label.to_string() })?;
            return Ok(distinct_factors(&r));
        }
        ElimMethod::ChainSimple => res_chain_simple(&polys, xvars),
        ElimMethod::ChainBranching => res_chain_branching(&polys, xvars),
    };
    match result.status {
        ChainStatus::FailedZero => Err(DiscvarError::FailedZero { branch: label.to_string() }),
        // An empty system has no boundary contribution.
        _ => Ok(result.polynomials),
    }
}

/// The n-patch population model with a uniform dispersal rate a and a shared
/// Allee threshold b: every patch follows a cubic strong-Allee law and all
/// patches are pairwise connected.
pub fn allee_system(n_patches: usize) -> ParametricSystem {
    assert!(n_patches >= 1, "need at least one patch");
    let var_names: Vec<String> = (1..=n_patches).map(|i| format!("x{i}")).collect();
    let var_refs: Vec<&str> = var_names.iter().map(|s| s.as_str()).collect();
    let ctx = Context::new(&["a", "b"], &var_refs).unwrap();
    let a = Polynomial::var(&ctx, 0);
    let b = Polynomial::var(&ctx, 1);
    let one = Polynomial::from_int(&ctx, 1);
    let drain = Polynomial::from_int(&ctx, n_patches as i64 - 1).mul(&a);
    let mut equations = Vec::with_capacity(n_patches);
    for i in 0..n_patches {
        let xi = Polynomial::var(&ctx, 2 + i);
        let mut f = xi.mul(&one.sub(&xi)).mul(&xi.sub(&b)).sub(&drain.mul(&xi));
        for j in 0..n_patches {
            if j != i {
                f = f.add(&a.mul(&Polynomial::var(&ctx, 2 + j)));
            }
        }
        equations.push(f);
    }
    ParametricSystem::new(
        equations,
        (2..2 + n_patches).collect(),
        vec![0, 1],
        vec![SignConstraint::Nonnegative; n_patches],
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemError {
    Header { line: usize, msg: String },
    Poly(ParseError),
    Context(ContextError),
}

impl fmt::Display for SystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemError::Header { line, msg } => write!(f, "line {line}: {msg}"),
            SystemError::Poly(e) => e.fmt(f),
            SystemError::Context(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for SystemError {}

impl From<ParseError> for SystemError {
    fn from(e: ParseError) -> Self {
        SystemError::Poly(e)
    }
}

impl From<ContextError> for SystemError {
    fn from(e: ContextError) -> Self {
        SystemError::Context(e)
    }
}

/// Parse the system file format: a `params:` line, a `vars:` line, an
/// optional `signs:` line with `name>0` or `name>=0` entries, then one
/// polynomial per line. Blank lines and `#` comments are skipped.
pub fn parse_system(src: &str) -> Result<ParametricSystem, SystemError> {
    let mut params: Option<(usize, Vec<String>)> = None;
    let mut vars: Option<(usize, Vec<String>)> = None;
    let mut signs_line: Option<(usize, String)> = None;
    let mut poly_lines: Vec<(usize, &str)> = Vec::new();

    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(rest) = text.strip_prefix("params:") {
            if params.is_some() {
                return Err(SystemError::Header { line, msg: "repeated params header".into() });
            }
            params = Some((line, split_names(rest)));
        } else if let Some(rest) = text.strip_prefix("vars:") {
            if vars.is_some() {
                return Err(SystemError::Header { line, msg: "repeated vars header".into() });
            }
            vars = Some((line, split_names(rest)));
        } else if let Some(rest) = text.strip_prefix("signs:") {
            if signs_line.is_some() {
                return Err(SystemError::Header { line, msg: "repeated signs header".into() });
            }
            signs_line = Some((line, rest.to_string()));
        } else {
            poly_lines.push((line, raw));
        }
    }

    let (pline, params) = params.ok_or(SystemError::Header { line: 1, msg: "missing params header".into() })?;
    let (vline, vars) = vars.ok_or(SystemError::Header { line: 1, msg: "missing vars header".into() })?;
    if params.is_empty() {
        return Err(SystemError::Header { line: pline, msg: "params header names nothing".into() });
    }
    if vars.is_empty() {
        return Err(SystemError::Header { line: vline, msg: "vars header names nothing".into() });
    }
    let names: Vec<&str> = params.iter().chain(vars.iter()).map(|s| s.as_str()).collect();
    let ctx = Context::from_names(names.iter().map(|s| s.to_string()).collect(), params.len())?;

    let mut signs = vec![SignConstraint::Free; vars.len()];
    if let Some((line, text)) = signs_line {
        for entry in text.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (name, sign) = if let Some(n) = entry.strip_suffix(">=0") {
                (n.trim(), SignConstraint::Nonnegative)
            } else if let Some(n) = entry.strip_suffix(">0") {
                (n.trim(), SignConstraint::Positive)
            } else {
                return Err(SystemError::Header {
                    line,
                    msg: format!("sign entry `{entry}` is not name>0 or name>=0"),
                });
            };
            match vars.iter().position(|v| v == name) {
                Some(i) => signs[i] = sign,
                None => {
                    return Err(SystemError::Header {
                        line,
                        msg: format!("sign constraint on unknown variable `{name}`"),
                    })
                }
            }
        }
    }

    if poly_lines.is_empty() {
        return Err(SystemError::Header { line: vline, msg: "no equations".into() });
    }
    let mut equations = Vec::with_capacity(poly_lines.len());
    for (line, text) in poly_lines {
        let p = parse_polynomial(&ctx, text, line)?;
        if p.is_zero() {
            return Err(SystemError::Header { line, msg: "zero polynomial as equation".into() });
        }
        equations.push(p);
    }
    let r = params.len();
    let n = vars.len();
    Ok(ParametricSystem::new(equations, (r..r + n).collect(), (0..r).collect(), signs))
}

/// Inverse of `parse_system` up to whitespace.
pub fn format_system(sys: &ParametricSystem) -> String {
    let ctx = sys.ctx();
    let join = |idx: &[usize]| idx.iter().map(|&i| ctx.name(i)).collect::<Vec<_>>().join(", ");
    let mut out = format!("params: {}\nvars: {}\n", join(&sys.parameters), join(&sys.variables));
    let signs: Vec<String> = sys
        .variables
        .iter()
        .zip(&sys.signs)
        .filter_map(|(&v, s)| match s {
            SignConstraint::Free => None,
            SignConstraint::Positive => Some(format!("{}>0", ctx.name(v))),
            SignConstraint::Nonnegative => Some(format!("{}>=0", ctx.name(v))),
        })
        .collect();
    if !signs.is_empty() {
        out.push_str("signs: ");
        out.push_str(&signs.join(", "));
        out.push('\n');
    }
    for eq in &sys.equations {
        out.push_str(&eq.to_string());
        out.push('\n');
    }
    out
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',').map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn p(ctx: &Ctx, s: &str) -> Polynomial {
        parse_polynomial(ctx, s, 0).unwrap()
    }

    fn quadratic(sign: SignConstraint) -> ParametricSystem {
        let ctx = Context::new(&["b", "c"], &["x"]).unwrap();
        ParametricSystem::new(vec![p(&ctx, "x^2+b*x+c")], vec![2], vec![0, 1], vec![sign])
    }

    #[test]
    fn jacobian_of_the_quadratic() {
        let sys = quadratic(SignConstraint::Free);
        assert_eq!(jacobian_determinant(&sys), p(sys.ctx(), "2*x+b"));
    }

    #[test]
    fn jacobian_of_one_patch() {
        let sys = allee_system(1);
        assert_eq!(
            jacobian_determinant(&sys),
            p(sys.ctx(), "-3*x1^2+2*(1+b)*x1-b")
        );
    }

    #[test]
    fn jacobian_of_a_linear_system() {
        let ctx = Context::new(&["k"], &["x1", "x2"]).unwrap();
        let sys = ParametricSystem::new(
            vec![p(&ctx, "x1+k"), p(&ctx, "x2-k")],
            vec![1, 2],
            vec![0],
            vec![SignConstraint::Free; 2],
        );
        assert_eq!(jacobian_determinant(&sys), p(&ctx, "1"));
    }

    #[test]
    fn boundary_systems_add_zero_branches_per_constraint() {
        let free = build_boundary_systems(&quadratic(SignConstraint::Free));
        assert_eq!(free.len(), 1);
        assert_eq!(free[0].0, "multiplicity");
        assert_eq!(free[0].1.len(), 2);

        let pos = build_boundary_systems(&quadratic(SignConstraint::Positive));
        assert_eq!(pos.len(), 2);
        assert_eq!(pos[1].0, "x=0");
        let ctx = quadratic(SignConstraint::Positive).ctx().clone();
        assert_eq!(pos[1].1, vec![p(&ctx, "x^2+b*x+c"), p(&ctx, "x")]);

        assert_eq!(build_boundary_systems(&allee_system(3)).len(), 4);
    }

    #[test]
    fn quadratic_candidates_for_every_method() {
        let sys = quadratic(SignConstraint::Positive);
        let ctx = sys.ctx().clone();
        let want = {
            let mut v = vec![p(&ctx, "b^2-4*c"), p(&ctx, "c")];
            v.sort();
            v
        };
        for method in [ElimMethod::Dixon, ElimMethod::ChainSimple, ElimMethod::ChainBranching] {
            let set = discriminant_candidates(&sys, method).unwrap();
            assert_eq!(set.polynomials, want, "method {method}");
            assert_eq!(set.components.len(), 2);
            // c is single-signed, so it cannot vanish in the open orthant.
            assert_eq!(set.orthant_empty, vec![true, false]);
        }
    }

    #[test]
    fn free_variable_skips_the_zero_branch() {
        let sys = quadratic(SignConstraint::Free);
        let set = discriminant_candidates(&sys, ElimMethod::ChainBranching).unwrap();
        assert_eq!(set.polynomials, vec![p(sys.ctx(), "b^2-4*c")]);
    }

    #[test]
    fn singular_jacobian_propagates_failed_zero() {
        // Twice the same line: the Jacobian determinant is identically zero
        // and the remaining pair shares its only factor.
        let ctx = Context::new(&["a"], &["x", "y"]).unwrap();
        let sys = ParametricSystem::new(
            vec![p(&ctx, "x+y-a"), p(&ctx, "2*x+2*y-2*a")],
            vec![1, 2],
            vec![0],
            vec![SignConstraint::Free; 2],
        );
        let err = discriminant_candidates(&sys, ElimMethod::ChainSimple);
        assert_eq!(err, Err(DiscvarError::FailedZero { branch: "multiplicity".into() }));
        let err = discriminant_candidates(&sys, ElimMethod::Dixon);
        assert_eq!(err, Err(DiscvarError::Degenerate { branch: "multiplicity".into() }));
    }

    #[test]
    fn always_occupied_zero_branch_propagates_failed_zero() {
        // x1 = x2 = 0 solves the two-patch system for every parameter value,
        // so the x1 = 0 boundary projects onto the whole parameter plane.
        let err = discriminant_candidates(&allee_system(2), ElimMethod::ChainBranching);
        assert_eq!(err, Err(DiscvarError::FailedZero { branch: "x1=0".into() }));
    }

    #[test]
    fn allee_equations_match_the_model() {
        let two = allee_system(2);
        let ctx = two.ctx().clone();
        assert_eq!(
            two.equations[0],
            p(&ctx, "x1*(1-x1)*(x1-b) - a*x1 + a*x2")
        );
        assert_eq!(
            two.equations[1],
            p(&ctx, "x2*(1-x2)*(x2-b) - a*x2 + a*x1")
        );
        assert_eq!(two.signs, vec![SignConstraint::Nonnegative; 2]);

        let one = allee_system(1);
        assert_eq!(one.equations[0], p(one.ctx(), "x1*(1-x1)*(x1-b)"));

        let three = allee_system(3);
        let c3 = three.ctx().clone();
        assert_eq!(
            three.equations[0],
            p(&c3, "x1*(1-x1)*(x1-b) - 2*a*x1 + a*x2 + a*x3")
        );
    }

    fn swapped(q: &Polynomial, i: usize, j: usize) -> Polynomial {
        Polynomial::from_terms(
            q.ctx(),
            q.terms().map(|(m, c)| {
                let mut e = m.0.clone();
                e.swap(i, j);
                (Monomial(e), c.clone())
            }),
        )
    }

    #[test]
    fn allee_model_is_symmetric_under_patch_swaps() {
        let sys = allee_system(3);
        // Swapping x1 and x2 maps equation 1 to equation 2 and fixes 3.
        assert_eq!(swapped(&sys.equations[0], 2, 3), sys.equations[1]);
        assert_eq!(swapped(&sys.equations[2], 2, 3), sys.equations[2]);
        assert_eq!(swapped(&sys.equations[1], 3, 4), sys.equations[2]);
    }

    #[test]
    fn two_patch_multiplicity_candidates_are_parameter_only() {
        let sys = allee_system(2);
        let set =
            discriminant_candidates_with(&sys, ElimMethod::ChainBranching, BoundaryFilter::Multiplicity)
                .unwrap();
        assert!(!set.polynomials.is_empty());
        for q in &set.polynomials {
            assert!(q.degree_in(2) == 0 && q.degree_in(3) == 0, "variable leaked: {q}");
        }
        assert_eq!(set.components.len(), 1);
    }

    #[test]
    fn orthant_sign_analysis() {
        let ctx = Context::new(&["a", "b"], &["x1"]).unwrap();
        assert!(orthant_empty(&p(&ctx, "3*a+b")));
        assert!(orthant_empty(&p(&ctx, "-2*a-b")));
        assert!(!orthant_empty(&p(&ctx, "b^2+3*a-b")));
        assert!(!orthant_empty(&p(&ctx, "b-1")));
    }

    #[test]
    fn candidates_vanish_where_double_roots_exist() {
        use crate::rat::Rational;
        use num::{BigInt, Zero};
        use std::collections::BTreeMap;

        let sys = quadratic(SignConstraint::Positive);
        let set = discriminant_candidates(&sys, ElimMethod::ChainBranching).unwrap();
        // x = t is a double root at b = -2t, c = t^2.
        for n in [-5i64, -1, 0, 2, 9] {
            let t = Rational::from(BigInt::from(n)) / Rational::from(BigInt::from(3));
            let mut at = BTreeMap::new();
            at.insert(0usize, -t.clone() - t.clone());
            at.insert(1usize, t.clone() * t.clone());
            assert!(set.polynomials.iter().any(|q| q.evaluate_full(&at).is_zero()));
        }
    }

    #[test]
    fn system_file_round_trip() {
        let sys = allee_system(3);
        let text = format_system(&sys);
        let back = parse_system(&text).unwrap();
        assert_eq!(back, sys);

        let quad = quadratic(SignConstraint::Positive);
        assert_eq!(parse_system(&format_system(&quad)).unwrap(), quad);
    }

    #[test]
    fn parse_rejects_bad_input_with_line_numbers() {
        assert!(matches!(
            parse_system("vars: x\nx^2"),
            Err(SystemError::Header { line: 1, .. })
        ));
        assert!(matches!(
            parse_system("params: a\nvars: x\nsigns: y>0\nx^2-a"),
            Err(SystemError::Header { line: 3, .. })
        ));
        assert!(matches!(
            parse_system("params: a\nvars: x\nsigns: x<0\nx^2-a"),
            Err(SystemError::Header { line: 3, .. })
        ));
        match parse_system("params: a\nvars: x\nx^2-a\nx^2+*a") {
            Err(SystemError::Poly(e)) => assert_eq!(e.line, 4),
            other => panic!("expected a polynomial error, got {other:?}"),
        }
        assert!(parse_system("params: a\nvars: x\n0").is_err());
    }
}
