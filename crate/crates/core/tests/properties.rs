mod common;

use proptest::prelude::*;
use terracini_core::certificates::{certificates, SegreInstance};
use terracini_core::interpolation::{interp_dim, InterpConfig};
use terracini_core::matrix::{left_null_space, null_space, vec_mat};
use terracini_core::terracini::{
    grassmann_defect_via_segre, secant_dim, secant_rank_at, SecantQuery,
};
use terracini_core::varieties::{
    segre_tangent_block, veronese_eval, veronese_jacobian, SegreProductChart, VeroneseChart,
};
use terracini_core::{DenseMatrix, Field, PrimeField, RandomSource, Rationals};

fn int_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        // small entries make rank drops common
        (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c))
    })
}

fn lift<F: Field>(f: &F, r: usize, c: usize, v: &[i64]) -> DenseMatrix<F::Elem> {
    DenseMatrix::from_entries(r, c, v.iter().map(|&x| f.from_i64(x)).collect()).unwrap()
}

fn shuffle<T: Clone>(m: &DenseMatrix<T>, seed: u64) -> DenseMatrix<T> {
    let mut rng = RandomSource::new(seed);
    let mut rows: Vec<usize> = (0..m.rows()).collect();
    let mut cols: Vec<usize> = (0..m.cols()).collect();
    for v in [&mut rows, &mut cols] {
        for i in (1..v.len()).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            v.swap(i, j);
        }
    }
    let out: Vec<Vec<T>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
        .collect();
    DenseMatrix::from_rows(out, m.cols()).unwrap()
}

fn rescale_rows<F: Field>(f: &F, m: &DenseMatrix<F::Elem>, seed: u64) -> DenseMatrix<F::Elem> {
    let mut rng = RandomSource::new(seed);
    let mut out = m.clone();
    for i in 0..m.rows() {
        let c = f.sample_nonzero(&mut rng);
        for j in 0..m.cols() {
            out.set(i, j, f.mul(&c, m.get(i, j)));
        }
    }
    out
}

fn rank_invariance<F: Field>(f: &F, m: &DenseMatrix<F::Elem>, seed: u64) {
    let r = f.rank(m);
    assert_eq!(f.rank(&shuffle(m, seed)), r);
    assert_eq!(f.rank(&rescale_rows(f, m, seed ^ 1)), r);
    assert_eq!(f.rank(&m.transpose()), r);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rank_invariant_prime((r, c, v) in int_matrix(), seed in any::<u64>()) {
        let f = PrimeField::default();
        rank_invariance(&f, &lift(&f, r, c, &v), seed);
    }

    #[test]
    fn rank_invariant_rational((r, c, v) in int_matrix(), seed in any::<u64>()) {
        rank_invariance(&Rationals, &lift(&Rationals, r, c, &v), seed);
    }

    #[test]
    fn rational_rank_matches_oracle((r, c, v) in int_matrix()) {
        let m = lift(&Rationals, r, c, &v);
        let rows: Vec<Vec<_>> = (0..r).map(|i| m.row(i).to_vec()).collect();
        prop_assert_eq!(Rationals.rank(&m), common::rank(&rows));
    }

    #[test]
    fn reduction_mod_p_never_raises_rank(
        (r, c, v) in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(-(1i64 << 62)..(1i64 << 62), r * c))
        })
    ) {
        let fp = PrimeField::default();
        prop_assert!(fp.rank(&lift(&fp, r, c, &v)) <= Rationals.rank(&lift(&Rationals, r, c, &v)));
    }

    #[test]
    fn null_spaces_are_kernels((r, c, v) in int_matrix()) {
        let f = PrimeField::default();
        let m = lift(&f, r, c, &v);
        let rank = f.rank(&m);
        let right = null_space(&f, &m);
        prop_assert_eq!(right.len(), c - rank);
        for x in &right {
            prop_assert!(vec_mat(&f, x, &m.transpose()).iter().all(|e| *e == 0));
        }
        let left = left_null_space(&f, &m);
        prop_assert_eq!(left.len(), r - rank);
        for y in &left {
            prop_assert!(vec_mat(&f, y, &m).iter().all(|e| *e == 0));
        }
        let stacked = DenseMatrix::from_rows(left.clone(), r).unwrap_or_else(|_| DenseMatrix::filled(0, r, 0));
        prop_assert_eq!(f.rank(&stacked), left.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn veronese_multiplicative(n in 1usize..4, d in 1u32..6, seed in any::<u64>()) {
        let f = PrimeField::default();
        let chart = VeroneseChart::new(n, d).unwrap();
        let mut rng = RandomSource::new(seed);
        let u: Vec<u64> = (0..n).map(|_| f.sample_nonzero(&mut rng)).collect();
        let p = veronese_eval(&f, &chart, &u).unwrap();
        for (a, e) in chart.exponents().iter().enumerate() {
            for (b, g) in chart.exponents().iter().enumerate() {
                let sum: Vec<u32> = e.iter().zip(g).map(|(x, y)| x + y).collect();
                if let Some(c) = chart.index_of(&sum) {
                    prop_assert_eq!(p[c], f.mul(&p[a], &p[b]));
                }
            }
        }
    }

    #[test]
    fn tangent_rank_chart_independent(n in 1usize..4, d in 2u32..5, seed in any::<u64>()) {
        let f = PrimeField::default();
        let chart = VeroneseChart::new(n, d).unwrap();
        let mut rng = RandomSource::new(seed);
        let u: Vec<u64> = (0..n).map(|_| f.sample_nonzero(&mut rng)).collect();
        let a: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| f.sample_nonzero(&mut rng)).collect()).collect();
        let am = DenseMatrix::from_rows(a.clone(), n).unwrap();
        prop_assume!(f.rank(&am) == n);
        let v: Vec<u64> = a
            .iter()
            .map(|row| row.iter().zip(&u).fold(0, |acc, (x, y)| f.add(&acc, &f.mul(x, y))))
            .collect();
        let tangent_rank = |pt: &[u64]| {
            let p = veronese_eval(&f, &chart, pt).unwrap();
            let j = veronese_jacobian(&f, &chart, pt).unwrap();
            let mut cols = vec![p];
            cols.extend((0..n).map(|c| j.column(c)));
            f.rank(&DenseMatrix::from_columns(cols, chart.len()).unwrap())
        };
        prop_assert_eq!(tangent_rank(&u), n + 1);
        prop_assert_eq!(tangent_rank(&v), n + 1);
    }

    #[test]
    fn segre_block_at_k0_is_tangent_cone(n in 1usize..4, d in 1u32..5, seed in any::<u64>()) {
        let f = PrimeField::default();
        let chart = VeroneseChart::new(n, d).unwrap();
        let mut rng = RandomSource::new(seed);
        let u: Vec<u64> = (0..n).map(|_| f.sample_nonzero(&mut rng)).collect();
        let l0 = f.sample_nonzero(&mut rng);
        let block = segre_tangent_block(&f, &SegreProductChart::new(0, chart.clone()), &[l0], &u).unwrap();
        let p = veronese_eval(&f, &chart, &u).unwrap();
        let jac = veronese_jacobian(&f, &chart, &u).unwrap();
        for (beta, pb) in p.iter().enumerate() {
            prop_assert_eq!(block.get(beta, 0), pb);
            for j in 0..n {
                prop_assert_eq!(*block.get(beta, 1 + j), f.mul(&l0, jac.get(beta, j)));
            }
        }
        prop_assert_eq!(f.rank(&block), n + 1);
    }

    #[test]
    fn report_invariants(n in 1usize..4, d in 2u32..5, k in 0usize..3, extra in 0usize..5, seed in any::<u64>()) {
        let q = SecantQuery::grassmann(n, d, k, k + extra).with_seed(seed);
        let r = grassmann_defect_via_segre(&q).unwrap();
        prop_assert_eq!(r.expected_dim - r.computed_dim, r.defect as i64);
        prop_assert!(r.computed_dim <= r.expected_dim);
        prop_assert_eq!(r.trials.len(), q.trials);
    }

    #[test]
    fn certificates_round_trip(n in 1usize..3, d in 2u32..5, k in 0usize..3, extra in 0usize..6, seed in any::<u64>()) {
        let f = PrimeField::default();
        let q = SecantQuery::grassmann(n, d, k, k + extra).with_seed(seed);
        let inst = SegreInstance::for_trial(&f, &q, 0).unwrap();
        let certs = certificates(&f, &inst).unwrap();
        prop_assert_eq!(certs.len(), inst.matrix.rows() - f.rank(&inst.matrix));
        prop_assert!(certs.iter().all(|c| c.verified && c.forms.len() == k + 1));
    }
}

#[test]
fn secant_dimension_monotone_in_h() {
    for n in 1..=3 {
        for d in 2..=4 {
            let mut prev: Option<i64> = None;
            for h in 0..8 {
                let c = secant_dim(&SecantQuery::secant(n, d, h))
                    .unwrap()
                    .computed_dim;
                if let Some(p) = prev {
                    assert!(c >= p && c - p <= n as i64 + 1, "n={n} d={d} h={h}");
                }
                prev = Some(c);
            }
            for k in 1..=2 {
                let mut prev: Option<i64> = None;
                for h in k..k + 8 {
                    let q = SecantQuery::grassmann(n, d, k, h);
                    let c = grassmann_defect_via_segre(&q).unwrap().computed_dim;
                    if let Some(p) = prev {
                        assert!(
                            c >= p && c - p <= (n + k + 1) as i64,
                            "n={n} d={d} k={k} h={h}"
                        );
                    }
                    prev = Some(c);
                }
            }
        }
    }
}

#[test]
fn interpolation_dimension_monotone_in_points() {
    for d in 1..=6 {
        let mut prev = None;
        for s in 0..=12 {
            let a = interp_dim(d, s, &InterpConfig::default())
                .unwrap()
                .dims
                .actual_dim;
            if let Some(p) = prev {
                assert!(a <= p && p - a <= 3, "d={d} s={s}");
            }
            prev = Some(a);
        }
    }
}

#[test]
fn sampling_statistics() {
    let f = PrimeField::default();
    let mut rng = RandomSource::new(2024);
    let draws: Vec<u64> = (0..1000).map(|_| f.sample_nonzero(&mut rng)).collect();
    assert!(draws.iter().all(|&x| x != 0 && x < f.modulus()));
    let mut uniq = draws.clone();
    uniq.sort_unstable();
    uniq.dedup();
    assert_eq!(uniq.len(), draws.len());
    // top bit of x / p is a fair coin
    let high = draws.iter().filter(|&&x| x > f.modulus() / 2).count();
    assert!((400..=600).contains(&high), "{high}");

    let qd: Vec<_> = (0..1000)
        .map(|_| Rationals.sample_nonzero(&mut rng))
        .collect();
    let h = num_rational::BigRational::from_integer((1i64 << 15).into());
    assert!(qd
        .iter()
        .all(|x| *x != Rationals.zero() && x.is_integer() && *x <= h && *x >= -h.clone()));
    let neg = qd.iter().filter(|x| **x < Rationals.zero()).count();
    assert!((400..=600).contains(&neg), "{neg}");
}

#[test]
fn secant_rank_matches_oracle_on_samples() {
    let chart = VeroneseChart::new(2, 4).unwrap();
    for salt in 0..4 {
        let pts = common::points(2, 4, salt);
        assert_eq!(
            secant_rank_at(&Rationals, &chart, &pts).unwrap(),
            common::rank(&common::secant_vectors(2, 4, &pts))
        );
    }
}
