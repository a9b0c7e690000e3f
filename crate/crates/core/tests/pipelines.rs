//! Cross-module pipelines at the library level: measure a class, chase
//! its zeta series through detection, certification, closure, and
//! triangle reconstruction, and confirm every certificate replays.

use num_bigint::BigInt;
use wittzeta::grothendieck::{Atom, ClassExpr, CountingMeasure};
use wittzeta::rationality::{
    certificate_verify, detect_rational, star_closure_check, two_out_of_three, DetectOutcome,
    KnownPair, RationalCertificate, DEFAULT_MARGIN,
};
use wittzeta::TruncatedSeries;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Atoms whose zeta functions are rational with known degree bounds
/// (numerator degree, denominator degree).
fn bounded_corpus() -> Vec<(ClassExpr, usize, usize)> {
    vec![
        (ClassExpr::point(), 0, 1),
        (ClassExpr::atom(Atom::Affine(1)), 0, 1),
        (ClassExpr::atom(Atom::Affine(2)), 0, 1),
        (ClassExpr::atom(Atom::Projective(1)), 0, 2),
        (ClassExpr::atom(Atom::Projective(2)), 0, 3),
        (ClassExpr::atom(Atom::Torus), 1, 1),
        (
            ClassExpr::atom(Atom::curve(1, vec![big(1), big(-2), big(5)]).unwrap()),
            2,
            2,
        ),
        (
            ClassExpr::atom(Atom::curve(2, vec![big(1), big(1), big(2), big(2), big(4)]).unwrap()),
            4,
            2,
        ),
    ]
}

fn certify(measure: &CountingMeasure, x: &ClassExpr, maxdeg: usize) -> RationalCertificate {
    let series = measure.zeta_sym(x).unwrap().as_series().clone();
    match detect_rational(&series, maxdeg, DEFAULT_MARGIN).unwrap() {
        DetectOutcome::Certified(cert) => cert,
        DetectOutcome::NotDetected(_) => panic!("zeta of {x} must be rational"),
    }
}

#[test]
fn detection_is_complete_on_classes_with_known_degree_bounds() {
    for q in [2u64, 3, 5] {
        let order = 16;
        let measure = CountingMeasure::new(q, order).unwrap();
        for (x, num_bound, den_bound) in bounded_corpus() {
            let series = measure.zeta_sym(&x).unwrap().as_series().clone();
            let maxdeg = den_bound.max(num_bound);
            assert!(2 * maxdeg + DEFAULT_MARGIN <= order);
            let cert = match detect_rational(&series, maxdeg, DEFAULT_MARGIN).unwrap() {
                DetectOutcome::Certified(cert) => cert,
                DetectOutcome::NotDetected(_) => panic!("zeta of {x} must be detected at q={q}"),
            };
            assert!(
                cert.num().degree().unwrap_or(0) <= num_bound,
                "{x} at q={q}"
            );
            assert!(
                cert.den().degree().unwrap_or(0) <= den_bound,
                "{x} at q={q}"
            );
            let report = certificate_verify(&series, &cert);
            assert!(report.pass && !report.partial, "{x} at q={q}");
        }
    }
}

#[test]
fn certified_zetas_stay_certified_under_sum_and_star() {
    let q = 3u64;
    let curve = ClassExpr::atom(Atom::curve(1, vec![big(1), big(-1), big(3)]).unwrap());
    let p1 = ClassExpr::atom(Atom::Projective(1));

    // Witt sum of zetas is the zeta of the disjoint union, so the
    // certificate of the sum must match the one detected from the
    // union class directly.
    let order = 16;
    let measure = CountingMeasure::new(q, order).unwrap();
    let cert_curve = certify(&measure, &curve, 4);
    let cert_p1 = certify(&measure, &p1, 2);
    let cert_union = certify(&measure, &curve.add(&p1), 6);
    assert_eq!(cert_union.num(), &(cert_curve.num() * cert_p1.num()));
    assert_eq!(cert_union.den(), &(cert_curve.den() * cert_p1.den()));

    // Star product: the closure check certifies the product of the
    // curve zeta with itself, and the result matches the zeta of the
    // product class detected independently.
    let deep = CountingMeasure::new(q, 36).unwrap();
    let cert_f = certify(&deep, &curve, 4);
    let star = star_closure_check(&cert_f, &cert_f, 36, DEFAULT_MARGIN).unwrap();
    let square = certify(&deep, &curve.mul(&curve), star.total_degree());
    assert_eq!(star.num(), square.num());
    assert_eq!(star.den(), square.den());
}

#[test]
fn scissor_corpus_recovers_every_missing_vertex() {
    let order = 14;
    let a1 = ClassExpr::atom(Atom::Affine(1));
    let a2 = ClassExpr::atom(Atom::Affine(2));
    let p1 = ClassExpr::atom(Atom::Projective(1));
    let p2 = ClassExpr::atom(Atom::Projective(2));
    let gm = ClassExpr::atom(Atom::Torus);
    let pt = ClassExpr::point();
    let triples = [(&a1, &p1, &pt), (&a2, &p2, &p1), (&gm, &a1, &pt)];

    for q in [2u64, 3, 5] {
        let measure = CountingMeasure::new(q, order).unwrap();
        for (x, y, z) in triples {
            let series = |v: &ClassExpr| -> TruncatedSeries {
                measure.zeta_sym(v).unwrap().as_series().clone()
            };
            let cx = certify(&measure, x, 3);
            let cy = certify(&measure, y, 4);
            let cz = certify(&measure, z, 3);

            let derived = two_out_of_three(KnownPair::XY, &cx, &cy, Some(&series(z))).unwrap();
            assert_eq!(derived.num(), cz.num(), "q={q}");
            assert_eq!(derived.den(), cz.den(), "q={q}");

            let derived = two_out_of_three(KnownPair::XZ, &cx, &cz, Some(&series(y))).unwrap();
            assert_eq!(derived.den(), cy.den(), "q={q}");

            let derived = two_out_of_three(KnownPair::YZ, &cy, &cz, Some(&series(x))).unwrap();
            assert_eq!(derived.den(), cx.den(), "q={q}");
        }
    }
}
