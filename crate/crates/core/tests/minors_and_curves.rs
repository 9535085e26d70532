mod common;

use common::{curve, matrix, quadric};
use toric_syzygy::error::Error;
use toric_syzygy::forms::{determinant, parse_form, MultiPoly};
use toric_syzygy::linalg::Field;
use toric_syzygy::poly::parse_polynomial;
use toric_syzygy::syzygy::curve_matrix;

#[test]
fn quadric_minor_gcd_stabilizes() {
    let m = matrix("quadric_proper.json", Field::Rational);
    assert_eq!(m.shape(), (6, 11));
    let g = m.minor_gcd(6, 0).unwrap();
    assert_eq!(g.minors_used, 6);
    assert_eq!(g.gcd, quadric());
    let mut reached = None;
    for k in 1..=8 {
        let g = m.minor_gcd(k, 0).unwrap();
        if g.gcd == quadric() {
            reached = Some(k);
            break;
        }
    }
    assert!(reached.is_some_and(|k| k <= 8));
}

#[test]
fn minors_are_multiples_of_the_quadric() {
    let m = matrix("quadric_proper.json", Field::Rational);
    let g = m.minor_gcd(1, 3).unwrap();
    assert_eq!(g.gcd.total_degree(), Some(6));
    assert!(g.gcd.exact_div(&quadric()).is_some());
}

#[test]
fn size_guard() {
    let m = matrix("sparse_sextic.json", Field::Rational);
    assert!(matches!(m.minor_gcd(2, 0), Err(Error::SizeGuard { rows: 17, limit: 12 })));
}

#[test]
fn circle() {
    let m = curve("circle_curve.json").matrix().unwrap();
    assert_eq!(m.shape(), (2, 2));
    let det = m.determinant().unwrap();
    let expected = parse_form(3, "T1^2 + T2^2 - T3^2").unwrap();
    assert_eq!(det.normalized(), expected);
    // Eliminating s from T1 c3 - T3 c1 and T2 c3 - T3 c2 gives T3^2 F.
    let t = |i| MultiPoly::var(3, i);
    let (t1, t2, t3) = (t(0), t(1), t(2));
    let two = MultiPoly::constant(3, 2.into());
    let a = [t1.sub(&t3), MultiPoly::zero(3), t1.add(&t3)];
    let b = [t2.clone(), two.mul(&t3).neg(), t2.clone()];
    let res = sylvester_resultant(&a, &b);
    let t3_squared = t3.mul(&t3);
    assert_eq!(res.exact_div(&t3_squared).unwrap().normalized(), det.normalized());
}

/// Resultant of `sum a_i s^i` and `sum b_i s^i` by the Sylvester determinant.
fn sylvester_resultant(a: &[MultiPoly], b: &[MultiPoly]) -> MultiPoly {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let zero = MultiPoly::zero(a[0].nvars());
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (i, c) in a.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (i, c) in b.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

#[test]
fn line() {
    let c = [parse_polynomial("s").unwrap(), parse_polynomial("1").unwrap(), parse_polynomial("s + 1").unwrap()];
    let m = curve_matrix(&c, 1, 0, Field::Rational).unwrap();
    let g = m.minor_gcd(1, 0).unwrap();
    assert_eq!(g.gcd, parse_form(3, "T1 + T2 - T3").unwrap());
}

#[test]
fn twisted_parametrization_of_a_conic_has_power() {
    // (s^2, s, 1) squared in s: degree 2 map onto the conic T2^2 = T1 T3.
    let c = [
        parse_polynomial("s^4").unwrap(),
        parse_polynomial("s^2").unwrap(),
        parse_polynomial("1").unwrap(),
    ];
    let m = curve_matrix(&c, 4, 3, Field::Rational).unwrap();
    let det = m.determinant().unwrap().normalized();
    let conic = parse_form(3, "T2^2 - T1*T3").unwrap();
    assert_eq!(det, conic.mul(&conic).normalized());
}
