use terracini_core::certificates::{
    certify_v23, certify_v23_with, count_certificates, CertifyConfig,
};
use terracini_core::terracini::{grassmann_defect_via_segre, sample_frame, Frame, SecantQuery};
use terracini_core::{ArithmeticDomain, DenseMatrix, Error, Field, PrimeField, RandomSource};

#[test]
fn v23_prime() {
    let rep = certify_v23(&CertifyConfig::default()).unwrap();
    println!("{rep:#?}");
    assert_eq!((rep.rows, rep.cols, rep.rank), (20, 20, 19));
    assert_eq!((rep.expected_dim, rep.computed_dim), (19, 18));
    assert!(rep.passed());
}

#[test]
fn v23_rational() {
    let cfg = CertifyConfig {
        domain: ArithmeticDomain::Rational,
        ..CertifyConfig::default()
    };
    let rep = certify_v23(&cfg).unwrap();
    assert!(rep.passed());
}

#[test]
fn v23_several_seeds() {
    for seed in 0..5 {
        let cfg = CertifyConfig {
            seed,
            ..CertifyConfig::default()
        };
        assert!(certify_v23(&cfg).unwrap().passed(), "seed {seed}");
    }
}

#[test]
fn collinear_samples_are_redrawn() {
    let f = PrimeField::default();
    let cfg = CertifyConfig::default();
    let mut rng = RandomSource::new(5);
    let mut calls = 0;
    let rep = certify_v23_with(&f, &cfg, || {
        calls += 1;
        let mut frame = sample_frame(&f, 2, 1, 4, &mut rng)?;
        if calls <= 3 {
            // put three points on u2 = u1
            for p in frame.points.iter_mut().take(3) {
                p[1] = p[0];
            }
        }
        Ok(frame)
    })
    .unwrap();
    assert_eq!(rep.resamples, 3);
    assert!(rep.passed());
}

#[test]
fn always_degenerate_sampler_errors() {
    let f = PrimeField::default();
    let cfg = CertifyConfig {
        max_resamples: 4,
        ..CertifyConfig::default()
    };
    let err = certify_v23_with(&f, &cfg, || {
        let pts = (1..=5).map(|i| vec![i, 2 * i]).collect();
        let lambda = DenseMatrix::filled(2, 5, 1u64);
        Ok(Frame {
            lambda,
            points: pts,
        })
    })
    .unwrap_err();
    assert!(matches!(err, Error::DegenerateSample { attempts: 5 }));
    let _ = f.one();
}

#[test]
fn certificate_count_matches_defect() {
    for (n, d, k, h) in [(2, 3, 1, 4), (2, 2, 0, 1), (2, 4, 1, 6), (2, 3, 0, 2)] {
        let q = SecantQuery::grassmann(n, d, k, h);
        let rep = grassmann_defect_via_segre(&q).unwrap();
        let count = count_certificates(&q).unwrap();
        // tall matrices always have hyperplanes; only the excess is defect
        let trivial = rep.rows.saturating_sub(rep.cols);
        assert_eq!(count, rep.defect + trivial, "({n},{d},{k},{h})");
    }
}

#[test]
fn double_line_certificate() {
    use terracini_core::certificates::{certificates, SegreInstance};
    use terracini_core::poly::Poly;
    use terracini_core::varieties::VeroneseChart;
    use terracini_core::Rationals;

    let f = Rationals;
    let q = SecantQuery::grassmann(2, 2, 0, 1).with_domain(ArithmeticDomain::Rational);
    let inst = SegreInstance::for_trial(&f, &q, 0).unwrap();
    let certs = certificates(&f, &inst).unwrap();
    assert_eq!(certs.len(), 1);
    let g = &certs[0].forms[0];
    assert_eq!(g.degree(), Some(2));
    // line through the two points, squared, divides g
    let (p, r) = (&inst.frame.points[0], &inst.frame.points[1]);
    let lines = VeroneseChart::new(2, 1).unwrap();
    let c0 = f.sub(&f.mul(&p[0], &r[1]), &f.mul(&p[1], &r[0]));
    let c1 = f.sub(&p[1], &r[1]);
    let c2 = f.sub(&r[0], &p[0]);
    let line = Poly::from_chart(&f, &lines, &[c0, c1, c2]);
    assert!(f.is_zero(&line.eval(&f, p)) && f.is_zero(&line.eval(&f, r)));
    let (quo, rem) = g.div_rem(&f, &line.mul(&f, &line));
    assert!(rem.is_zero());
    assert_eq!(quo.degree(), Some(0));
}
