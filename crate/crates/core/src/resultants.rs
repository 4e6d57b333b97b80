//! Sylvester resultants with respect to one indeterminate, the modified
//! resultant that absorbs degree drops, and factor-wise resultant sets.

use crate::factor::{factorize, Factorization};
use crate::matrix::{determinant, PolyMatrix};
use crate::poly::Polynomial;

/// Sylvester matrix of f and g with respect to `eliminated`. Column j < n
/// holds the descending coefficients of f starting at row j, the remaining m
/// columns hold those of g, where m, n are the degrees of f, g.
#[derive(Debug, Clone)]
pub struct SylvesterMatrix {
    pub matrix: PolyMatrix,
    pub eliminated: usize,
}

impl SylvesterMatrix {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

pub fn sylvester(f: &Polynomial, g: &Polynomial, v: usize) -> SylvesterMatrix {
    let m = f.degree_in(v);
    let n = g.degree_in(v);
    assert!(m >= 1 && n >= 1, "degree drop in sylvester; use modified_resultant");
    let ctx = f.ctx().clone();
    let size = (m + n) as usize;
    let fc = f.coefficients_wrt(v);
    let gc = g.coefficients_wrt(v);
    let mut mat = PolyMatrix::zero(&ctx, size, size);
    for j in 0..n as usize {
        for k in 0..=m as usize {
            mat.set(j + k, j, fc[m as usize - k].clone());
        }
    }
    for i in 0..m as usize {
        for k in 0..=n as usize {
            mat.set(i + k, n as usize + i, gc[n as usize - k].clone());
        }
    }
    SylvesterMatrix { matrix: mat, eliminated: v }
}

/// Determinant of the Sylvester matrix; free of v, zero exactly when f and g
/// share a root over the closure.
pub fn resultant(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    determinant(&sylvester(f, g, v).matrix)
}

/// Resultant redefined on degree drops: a polynomial free of v passes through
/// unchanged, and two v-free polynomials multiply. Panics on zero input.
pub fn modified_resultant(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    assert!(!f.is_zero() && !g.is_zero(), "modified_resultant of zero");
    let df = f.degree_in(v);
    let dg = g.degree_in(v);
    match (df >= 1, dg >= 1) {
        (true, true) => resultant(f, g, v),
        (false, true) => f.clone(),
        (true, false) => g.clone(),
        (false, false) => f.mul(g),
    }
}

/// All pairwise modified resultants of the irreducible factors, re-factorized
/// into one sorted set of distinct nonconstant irreducibles.
pub fn resultant_factorwise(
    f: &Factorization,
    g: &Factorization,
    v: usize,
) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for fi in &f.factors {
        for gj in &g.factors {
            let r = modified_resultant(&fi.poly, &gj.poly, v);
            assert!(!r.is_zero(), "factor pair shares a root; strip common factors first");
            if r.is_constant() {
                continue;
            }
            for part in factorize(&r).factors {
                if !out.contains(&part.poly) {
                    out.push(part.poly);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{Context, Ctx};
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

    fn y() -> usize {
        ctx().index_of("y").unwrap()
    }

    fn rows(s: &SylvesterMatrix) -> Vec<Vec<Polynomial>> {
        (0..s.size())
            .map(|i| (0..s.size()).map(|j| s.matrix.at(i, j).clone()).collect())
            .collect()
    }

    #[test]
    fn sylvester_layout_quadratic_vs_derivative() {
        let s = sylvester(&p("x^2 + b*x + c"), &p("2*x + b"), x());
        assert_eq!(s.size(), 3);
        assert_eq!(
            rows(&s),
            vec![
                vec![p("1"), p("2"), p("0")],
                vec![p("b"), p("b"), p("2")],
                vec![p("c"), p("0"), p("b")],
            ]
        );
    }

    #[test]
    fn sylvester_layout_quadratic_vs_x() {
        let s = sylvester(&p("x^2 + b*x + c"), &p("x"), x());
        assert_eq!(
            rows(&s),
            vec![
                vec![p("1"), p("1"), p("0")],
                vec![p("b"), p("0"), p("1")],
                vec![p("c"), p("0"), p("0")],
            ]
        );
    }

    #[test]
    fn sylvester_layout_two_linear() {
        let s = sylvester(&p("x + 1"), &p("x - 1"), x());
        assert_eq!(rows(&s), vec![vec![p("1"), p("1")], vec![p("1"), p("-1")]]);
    }

    #[test]
    fn resultant_of_quadratic_and_derivative_is_minus_discriminant() {
        let r = resultant(&p("x^2 + b*x + c"), &p("2*x + b"), x());
        assert_eq!(r, p("-(b^2 - 4*c)"));
    }

    #[test]
    fn resultant_with_x_extracts_constant_term() {
        assert_eq!(resultant(&p("x^2 + b*x + c"), &p("x"), x()), p("c"));
    }

    #[test]
    fn resultant_of_two_shifted_lines() {
        let r = resultant(&p("x - a"), &p("x - b"), x());
        assert!(r == p("a - b") || r == p("b - a"));
    }

    #[test]
    fn resultant_is_free_of_the_eliminated_indeterminate() {
        let r = resultant(&p("x^2 + a*x + y"), &p("x^3 - b*x + 1"), x());
        assert!(r.degree_in(x()) <= 0);
        assert!(!r.is_zero());
    }

    #[test]
    fn resultant_vanishes_iff_common_root() {
        // Shared factor (x - 2).
        let f = p("x - 2").mul(&p("x + 1"));
        let g = p("x - 2").mul(&p("x - 5"));
        assert!(resultant(&f, &g, x()).is_zero());
        // Coprime.
        assert!(!resultant(&p("x - 2"), &p("x - 5"), x()).is_zero());
    }

    #[test]
    fn resultant_is_multiplicative_in_the_first_argument() {
        let p1 = p("x^2 + a");
        let p2 = p("x - b");
        let q = p("x^2 + c*x - 1");
        let lhs = resultant(&p1.mul(&p2), &q, x());
        let rhs = resultant(&p1, &q, x()).mul(&resultant(&p2, &q, x()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn modified_resultant_degree_drop_rules() {
        assert_eq!(modified_resultant(&p("c"), &p("2*x + b"), x()), p("c"));
        assert_eq!(modified_resultant(&p("2*x + b"), &p("c"), x()), p("c"));
        assert_eq!(modified_resultant(&p("b - 1"), &p("c"), x()), p("(b - 1)*c"));
        assert_eq!(
            modified_resultant(&p("x^2 + b*x + c"), &p("2*x + b"), x()),
            p("-(b^2 - 4*c)")
        );
    }

    #[test]
    fn factorwise_of_coprime_linears_is_empty() {
        let f = crate::factor::factorize(&p("x - 1").mul(&p("x - 2")));
        let g = crate::factor::factorize(&p("x - 3"));
        assert!(resultant_factorwise(&f, &g, x()).is_empty());
    }

    #[test]
    fn factorwise_of_quadratic_and_derivative() {
        let f = crate::factor::factorize(&p("x^2 + b*x + c"));
        let g = crate::factor::factorize(&p("2*x + b"));
        assert_eq!(resultant_factorwise(&f, &g, x()), vec![p("b^2 - 4*c")]);
    }

    #[test]
    fn factorwise_splits_the_circle_parabola_product() {
        let f = crate::factor::factorize(&p("x^2 + y^2 - 1").mul(&p("y - x^2")));
        let g = crate::factor::factorize(&p("y - a"));
        let set = resultant_factorwise(&f, &g, y());
        assert_eq!(set, vec![p("x^2 - a"), p("x^2 + a^2 - 1")]);
    }
}
