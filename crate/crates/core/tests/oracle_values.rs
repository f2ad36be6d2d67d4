//! Frozen values cross-checked against the reference implementations in
//! `common`.

mod common;

use common::{q, Q};
use terracini_core::interpolation::{double_point_conditions, interp_dim, InterpConfig};
use terracini_core::terracini::{
    grassmann_defect, grassmann_defect_direct, grassmann_defect_via_segre, secant_dim,
    secant_rank_at, Route, SecantQuery,
};
use terracini_core::varieties::{
    grassmann_jacobian, segre_terracini_matrix, veronese_eval, veronese_jacobian, VeroneseChart,
};
use terracini_core::{ArithmeticDomain, DenseMatrix, Field, Rationals};

fn lib_rows(m: &DenseMatrix<Q>) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

#[test]
fn veronese_surface_secant_line_defect() {
    // 6 tangent vectors in a 6-dimensional space span only 5
    let pts = common::points(2, 2, 1);
    assert_eq!(common::rank(&common::secant_vectors(2, 2, &pts)), 5);
    let chart = VeroneseChart::new(2, 2).unwrap();
    assert_eq!(secant_rank_at(&Rationals, &chart, &pts).unwrap(), 5);

    for domain in [
        ArithmeticDomain::default_prime(),
        ArithmeticDomain::Rational,
    ] {
        let r = secant_dim(&SecantQuery::secant(2, 2, 1).with_domain(domain)).unwrap();
        assert_eq!((r.computed_dim, r.defect), (4, 1));
    }
}

#[test]
fn twisted_cubic_secant_lines_fill() {
    let pts = common::points(1, 2, 2);
    assert_eq!(common::rank(&common::secant_vectors(1, 3, &pts)), 4);
    let r = secant_dim(&SecantQuery::secant(1, 3, 1)).unwrap();
    assert_eq!((r.computed_dim, r.defect), (3, 0));
}

#[test]
fn segre_conic_pencil_not_defective() {
    // sigma(P^1 x V_{1,2}), two points: 6 x 6
    let pts = common::points(1, 2, 3);
    let lambdas = vec![vec![q(1), q(2)], vec![q(3), q(-1)]];
    let vecs = common::segre_vectors(1, 2, &lambdas, &pts);
    assert_eq!(vecs.len(), 6);
    assert_eq!(common::rank(&vecs), 6);
    let r = grassmann_defect_via_segre(&SecantQuery::grassmann(1, 2, 1, 1)).unwrap();
    assert_eq!(r.defect, 0);
}

#[test]
fn plane_cubic_pencils_at_five_points() {
    let pts = common::points(2, 5, 4);
    let lambdas: Vec<Vec<Q>> = (0..5).map(|j| vec![q(1), q(2 * j + 3)]).collect();
    let vecs = common::segre_vectors(2, 3, &lambdas, &pts);
    assert_eq!(common::rank(&vecs), 19);

    let chart = VeroneseChart::new(2, 3).unwrap();
    let seg = terracini_core::varieties::SegreProductChart::new(1, chart.clone());
    let lam = DenseMatrix::from_columns(lambdas.clone(), 2).unwrap();
    let m = segre_terracini_matrix(&Rationals, &seg, &lam, &pts).unwrap();
    assert_eq!((m.rows(), m.cols()), (20, 20));
    assert_eq!(Rationals.rank(&m), 19);
    let j = grassmann_jacobian(&Rationals, &chart, 1, 4, &lam, &pts).unwrap();
    assert_eq!((j.rows(), j.cols()), (20, 20));
    assert_eq!(common::rank(&lib_rows(&j.transpose())), 19);

    let out = grassmann_defect(&SecantQuery::grassmann(2, 3, 1, 4), Route::Both).unwrap();
    let (d, s) = (out.direct.unwrap(), out.segre.unwrap());
    assert_eq!((d.defect, s.defect), (1, 1));
    assert_eq!((s.expected_dim, s.computed_dim), (19, 18));
    assert_eq!((d.expected_dim, d.computed_dim), (16, 15));
}

#[test]
fn plane_cubic_pencils_at_four_points() {
    let r = grassmann_defect_direct(&SecantQuery::grassmann(2, 3, 1, 3)).unwrap();
    assert_eq!(r.defect, 0);
    let r = grassmann_defect_via_segre(&SecantQuery::grassmann(2, 3, 1, 3)).unwrap();
    assert_eq!(r.defect, 0);
    let r = grassmann_defect_direct(&SecantQuery::grassmann(2, 2, 0, 1)).unwrap();
    assert_eq!(r.defect, 1);
}

#[test]
fn quintics_through_six_double_points() {
    let pts = common::points(2, 6, 5);
    let mut rows = Vec::new();
    for u in &pts {
        rows.push(common::veronese(2, 5, u));
        rows.push(common::veronese_partial(2, 5, u, 0));
        rows.push(common::veronese_partial(2, 5, u, 1));
    }
    assert_eq!((rows.len(), rows[0].len()), (18, 21));
    assert_eq!(common::rank(&rows), 18);
    let m = double_point_conditions(&Rationals, 2, 5, &pts).unwrap();
    assert_eq!(Rationals.rank(&m), 18);

    let r = interp_dim(5, 6, &InterpConfig::default()).unwrap();
    assert_eq!(
        (r.dims.virtual_dim, r.dims.actual_dim, r.dims.special),
        (2, 2, false)
    );
}

#[test]
fn chart_matches_brute_force_monomials() {
    for n in 1..=3 {
        for d in 1..=5 {
            let chart = VeroneseChart::new(n, d).unwrap();
            let mut mine = common::monomials(n, d);
            let mut theirs = chart.exponents().to_vec();
            mine.sort();
            theirs.sort();
            assert_eq!(mine, theirs);
        }
    }
}

#[test]
fn jacobian_matches_taylor_coefficient() {
    // d/du_j p(u) is the coefficient of t in p(u + t e_j)
    let (n, d) = (3, 4);
    let chart = VeroneseChart::new(n, d).unwrap();
    let u = vec![q(2), Q::new(3.into(), 5.into()), q(-7)];
    let jac = veronese_jacobian(&Rationals, &chart, &u).unwrap();
    for j in 0..n {
        let samples: Vec<Vec<Q>> = (0..=d as i64)
            .map(|t| {
                let mut v = u.clone();
                v[j] += q(t);
                veronese_eval(&Rationals, &chart, &v).unwrap()
            })
            .collect();
        for beta in 0..chart.len() {
            let vals: Vec<Q> = samples.iter().map(|s| s[beta].clone()).collect();
            assert_eq!(common::linear_coefficient(&vals), *jac.get(beta, j));
        }
    }
}
