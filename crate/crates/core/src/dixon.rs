//! Dixon resultant of n+1 polynomials in n variables: the cancellation matrix
//! over auxiliary copies of the variables, the Dixon polynomial as its
//! determinant divided by prod(xi - xi_bar), the Dixon matrix of coefficients,
//! and the determinant of a maximal-rank submatrix.

use std::collections::BTreeSet;
use std::fmt;

use crate::context::Ctx;
use crate::matrix::{determinant, maximal_nonsingular_submatrix, PolyMatrix};
use crate::poly::{divides, Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DixonError {
    /// The Dixon matrix is zero: the construction degenerates on this input
    /// and the caller should fall back to resultant chains.
    Degenerate,
}

impl fmt::Display for DixonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DixonError::Degenerate => write!(f, "Dixon matrix is zero"),
        }
    }
}

impl std::error::Error for DixonError {}

#[derive(Debug, Clone)]
pub struct DixonIntermediate {
    pub base: Ctx,
    /// Base context extended by one auxiliary per eliminated variable.
    pub ext: Ctx,
    pub xvars: Vec<usize>,
    pub aux: Vec<usize>,
    pub cancellation_matrix: PolyMatrix,
    pub dixon_polynomial: Polynomial,
    /// Monomials in the auxiliaries (rows) and the variables (columns),
    /// descending; filled by `dixon_matrix`.
    pub row_monomials: Vec<Polynomial>,
    pub col_monomials: Vec<Polynomial>,
    /// Parameter-only coefficient grid over the base context.
    pub dixon_matrix: PolyMatrix,
}

fn aux_names(ctx: &Ctx, xvars: &[usize]) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    for &v in xvars {
        let mut n = format!("{}_bar", ctx.name(v));
        while ctx.names().contains(&n) || names.contains(&n) {
            n.push('_');
        }
        names.push(n);
    }
    names
}

/// Build the cancellation matrix (row i substitutes auxiliaries for the first
/// i variables) and divide its determinant by prod(xi - xi_bar).
pub fn dixon_polynomial(f: &[Polynomial], xvars: &[usize]) -> DixonIntermediate {
    let n = xvars.len();
    assert_eq!(f.len(), n + 1, "need n+1 polynomials for n variables");
    assert!(f.iter().all(|p| !p.is_zero()), "zero polynomial in Dixon input");
    let base = f[0].ctx().clone();
    let ext = base.extended(&aux_names(&base, xvars)).expect("auxiliary names clash");
    let aux: Vec<usize> = (base.len()..ext.len()).collect();

    let rows: Vec<Vec<Polynomial>> = (0..=n)
        .map(|i| {
            f.iter()
                .map(|p| {
                    let mut q = p.lift_to(&ext);
                    for k in 0..i {
                        q = q.substitute_var(xvars[k], aux[k]);
                    }
                    q
                })
                .collect()
        })
        .collect();
    let cancellation = PolyMatrix::from_rows(&ext, rows);

    let mut p = determinant(&cancellation);
    for k in 0..n {
        let divisor = Polynomial::var(&ext, xvars[k]).sub(&Polynomial::var(&ext, aux[k]));
        p = divides(&divisor, &p).expect("cancellation determinant not divisible");
    }

    DixonIntermediate {
        base: base.clone(),
        ext: ext.clone(),
        xvars: xvars.to_vec(),
        aux,
        cancellation_matrix: cancellation,
        dixon_polynomial: p,
        row_monomials: Vec::new(),
        col_monomials: Vec::new(),
        dixon_matrix: PolyMatrix::zero(&base, 0, 0),
    }
}

fn project(mon: &Monomial, keep: &[usize], len: usize) -> Monomial {
    let mut m = Monomial::one(len);
    for &i in keep {
        m.0[i] = mon.exp(i);
    }
    m
}

/// Extract the coefficient grid of the Dixon polynomial over the monomial
/// bases in the auxiliaries (rows) and the variables (columns).
pub fn dixon_matrix(mut inter: DixonIntermediate) -> DixonIntermediate {
    let p = &inter.dixon_polynomial;
    if p.is_zero() {
        return inter;
    }
    let len = inter.ext.len();
    let mut row_set: BTreeSet<Monomial> = BTreeSet::new();
    let mut col_set: BTreeSet<Monomial> = BTreeSet::new();
    for (mon, _) in p.terms() {
        row_set.insert(project(mon, &inter.aux, len));
        col_set.insert(project(mon, &inter.xvars, len));
    }
    let row_mons: Vec<Monomial> = row_set.into_iter().rev().collect();
    let col_mons: Vec<Monomial> = col_set.into_iter().rev().collect();

    let mut grid = PolyMatrix::zero(&inter.ext, row_mons.len(), col_mons.len());
    for (mon, coeff) in p.terms() {
        let r = project(mon, &inter.aux, len);
        let c = project(mon, &inter.xvars, len);
        let mut k = mon.clone();
        for &i in inter.aux.iter().chain(inter.xvars.iter()) {
            k.0[i] = 0;
        }
        let i = row_mons.iter().position(|m| *m == r).unwrap();
        let j = col_mons.iter().position(|m| *m == c).unwrap();
        let add = Polynomial::from_terms(&inter.ext, [(k, coeff.clone())]);
        grid.set(i, j, grid.at(i, j).add(&add));
    }

    let mut base_grid = PolyMatrix::zero(&inter.base, row_mons.len(), col_mons.len());
    for i in 0..row_mons.len() {
        for j in 0..col_mons.len() {
            let e = grid
                .at(i, j)
                .restrict_to(&inter.base)
                .expect("Dixon matrix entry not parameter-only");
            base_grid.set(i, j, e);
        }
    }

    inter.row_monomials = row_mons
        .into_iter()
        .map(|m| Polynomial::from_terms(&inter.ext, [(m, crate::rat::rat_i64(1))]))
        .collect();
    inter.col_monomials = col_mons
        .into_iter()
        .map(|m| Polynomial::from_terms(&inter.ext, [(m, crate::rat::rat_i64(1))]))
        .collect();
    inter.dixon_matrix = base_grid;
    inter
}

/// Determinant of a maximal-rank submatrix of the Dixon matrix, chosen
/// deterministically. Vanishes wherever the specialized system has a common
/// solution; may carry extraneous factors.
pub fn dixon_resultant(f: &[Polynomial], xvars: &[usize]) -> Result<Polynomial, DixonError> {
    dixon_resultant_seeded(f, xvars, 0)
}

/// Same with an explicit seed for the rank-probing specializations. Any seed
/// yields a valid maximal submatrix; different seeds may pick different ones,
/// whose determinants differ by extraneous factors.
pub fn dixon_resultant_seeded(
    f: &[Polynomial],
    xvars: &[usize],
    seed: u64,
) -> Result<Polynomial, DixonError> {
    let inter = dixon_matrix(dixon_polynomial(f, xvars));
    if inter.dixon_matrix.rows() == 0 {
        return Err(DixonError::Degenerate);
    }
    let (rows, cols) =
        maximal_nonsingular_submatrix(&inter.dixon_matrix, seed).ok_or(DixonError::Degenerate)?;
    Ok(determinant(&inter.dixon_matrix.submatrix(&rows, &cols)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Context;
    use crate::poly::parse_polynomial;

    fn ctx() -> Ctx {
        Context::new(&["a", "b", "c"], &["x", "y"]).unwrap()
    }

    fn p(src: &str) -> Polynomial {
        parse_polynomial(&ctx(), src, 1).unwrap()
    }

    fn x() -> usize {
        ctx().index_of("x").unwrap()
    }

    #[test]
    fn quadratic_example_polynomial_matrix_and_resultant() {
        let f = [p("x^2 + b*x + c"), p("2*x + b")];
        let inter = dixon_matrix(dixon_polynomial(&f, &[x()]));

        // p = 2*x*xbar + b*(x + xbar) + b^2 - 2c
        let ext = &inter.ext;
        let xe = Polynomial::var(ext, x());
        let xb = Polynomial::var(ext, inter.aux[0]);
        let b = p("b").lift_to(ext);
        let expected = xe
            .mul(&xb)
            .mul_rational(&crate::rat::rat_i64(2))
            .add(&b.mul(&xe.add(&xb)))
            .add(&p("b^2 - 2*c").lift_to(ext));
        assert_eq!(inter.dixon_polynomial, expected);

        // M2 = [[2, b], [b, b^2 - 2c]] over row basis [xbar, 1], cols [x, 1].
        assert_eq!(inter.row_monomials, vec![xb.clone(), Polynomial::from_int(ext, 1)]);
        assert_eq!(inter.col_monomials, vec![xe.clone(), Polynomial::from_int(ext, 1)]);
        let m = &inter.dixon_matrix;
        assert_eq!(
            vec![
                vec![m.at(0, 0).clone(), m.at(0, 1).clone()],
                vec![m.at(1, 0).clone(), m.at(1, 1).clone()],
            ],
            vec![vec![p("2"), p("b")], vec![p("b"), p("b^2 - 2*c")]]
        );

        assert_eq!(dixon_resultant(&f, &[x()]).unwrap(), p("b^2 - 4*c"));
    }

    #[test]
    fn reconstruction_identity() {
        let f = [p("x^2 + b*x + c"), p("2*x + b")];
        let inter = dixon_matrix(dixon_polynomial(&f, &[x()]));
        let mut acc = Polynomial::zero(&inter.ext);
        for (i, rm) in inter.row_monomials.iter().enumerate() {
            for (j, cm) in inter.col_monomials.iter().enumerate() {
                let e = inter.dixon_matrix.at(i, j).lift_to(&inter.ext);
                acc = acc.add(&rm.mul(&e).mul(cm));
            }
        }
        assert_eq!(acc, inter.dixon_polynomial);
    }

    #[test]
    fn cancellation_determinant_is_divisible_exactly() {
        let f = [p("x^2 + b*x + c"), p("2*x + b")];
        let inter = dixon_polynomial(&f, &[x()]);
        let det = determinant(&inter.cancellation_matrix);
        let divisor = Polynomial::var(&inter.ext, x())
            .sub(&Polynomial::var(&inter.ext, inter.aux[0]));
        assert_eq!(divisor.mul(&inter.dixon_polynomial), det);
    }

    #[test]
    fn two_lines_give_their_root_gap() {
        let f = [p("x - a"), p("x - b")];
        let inter = dixon_matrix(dixon_polynomial(&f, &[x()]));
        assert_eq!(inter.dixon_matrix.rows(), 1);
        assert_eq!(inter.dixon_matrix.at(0, 0), &p("a - b"));
        assert_eq!(dixon_resultant(&f, &[x()]).unwrap(), p("a - b"));
    }

    #[test]
    fn identical_polynomials_degenerate() {
        let f = [p("x^2 + b*x + c"), p("x^2 + b*x + c")];
        let inter = dixon_matrix(dixon_polynomial(&f, &[x()]));
        assert!(inter.dixon_polynomial.is_zero());
        assert_eq!(inter.dixon_matrix.rows(), 0);
        assert_eq!(dixon_resultant(&f, &[x()]), Err(DixonError::Degenerate));
    }

    #[test]
    fn factor_set_agrees_with_sylvester_resultant_for_one_variable() {
        let f = p("x^2 + b*x + c");
        let g = p("2*x + b");
        let viad = crate::factor::distinct_factors(&dixon_resultant(&[f.clone(), g.clone()], &[x()]).unwrap());
        let vias = crate::factor::distinct_factors(&crate::resultants::resultant(&f, &g, x()));
        assert_eq!(viad, vias);
    }

    #[test]
    fn two_variable_system_contains_the_solvability_condition() {
        // x + y = a, x - y = b, x*y = c is solvable iff a^2 - b^2 = 4c.
        let y = ctx().index_of("y").unwrap();
        let f = [p("x + y - a"), p("x - y - b"), p("x*y - c")];
        let r = dixon_resultant(&f, &[x(), y]).unwrap();
        assert!(r.degree_in(x()) <= 0 && r.degree_in(y) <= 0);
        assert!(divides(&p("a^2 - b^2 - 4*c"), &r).is_some());
        // No common solution at a=3, b=1, c=0: the resultant must not vanish.
        let mut at = std::collections::BTreeMap::new();
        at.insert(0, crate::rat::rat_i64(3));
        at.insert(1, crate::rat::rat_i64(1));
        at.insert(2, crate::rat::rat_i64(0));
        assert!(!r.evaluate_full(&at).eq(&crate::rat::rat_i64(0)));
        // Common solution at a=3, b=1, c=2 (x=2, y=1): it must vanish.
        at.insert(2, crate::rat::rat_i64(2));
        assert!(r.evaluate_full(&at).eq(&crate::rat::rat_i64(0)));
    }
}
