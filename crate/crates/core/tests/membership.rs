mod common;

use common::{job, matrix, parameter_grid, q, quadric, sextic};
use num_rational::BigRational;
use num_traits::Zero;
use toric_syzygy::forms::MultiPoly;
use toric_syzygy::linalg::{ExactMatrix, Field};
use toric_syzygy::repmat::{RepresentationMatrix, SurfacePoint};
use toric_syzygy::sampling::{random_integer_point, rng};

fn image(name: &str, s: i64, t: i64) -> SurfacePoint {
    let f = job(name).parametrization().unwrap();
    SurfacePoint::new(f.evaluate(&q(s), &q(t)).unwrap().to_vec()).unwrap()
}

#[test]
fn evaluation_examples() {
    let m = matrix("sparse_sextic.json", Field::Rational);
    let p = image("sparse_sextic.json", 1, 1);
    assert_eq!(p, SurfacePoint::from_integers(&[3, -2, 6, 3]).unwrap());
    assert!(m.evaluate(&p).unwrap().rank() < 17);

    let e1 = SurfacePoint::from_integers(&[1, 0, 0, 0]).unwrap();
    assert_eq!(&m.evaluate(&e1).unwrap(), &m.coefficient_matrices()[0]);
}

#[test]
fn generic_ranks() {
    assert_eq!(matrix("sparse_sextic.json", Field::Rational).generic_rank(0), 17);
    assert_eq!(matrix("quadric_proper.json", Field::Rational).generic_rank(0), 6);
    let z = ExactMatrix::zeros(4, 6, Field::Rational);
    let zero = RepresentationMatrix::new(0, 1, vec![], vec![(0, 0); 4], vec![z.clone(), z.clone(), z.clone(), z]).unwrap();
    assert_eq!(zero.generic_rank(0), 0);
}

#[test]
fn verdict_examples() {
    let m = matrix("sparse_sextic.json", Field::Rational);
    let v = m.is_on_surface(&image("sparse_sextic.json", 2, 1), 0).unwrap();
    assert!(v.on_surface);
    assert_eq!(v.generic_rank, 17);

    // Every monomial of the sextic contains T2, T3 or T4.
    let e1 = SurfacePoint::from_integers(&[1, 0, 0, 0]).unwrap();
    assert!(sextic().evaluate(e1.coords()).is_zero());
    assert!(m.is_on_surface(&e1, 0).unwrap().on_surface);

    let ones = SurfacePoint::from_integers(&[1, 1, 1, 1]).unwrap();
    let expected = sextic().evaluate(ones.coords()).is_zero();
    assert_eq!(m.is_on_surface(&ones, 0).unwrap().on_surface, expected);
}

fn soundness(name: &str, equation: &MultiPoly) {
    let f = job(name).parametrization().unwrap();
    let m = matrix(name, Field::Rational);
    let generic = m.generic_rank(0);
    assert_eq!(generic, m.shape().0);

    let mut on = 0;
    for (s, t) in parameter_grid(400) {
        if on == 100 {
            break;
        }
        let Ok(values) = f.evaluate(&s, &t) else { continue };
        let Ok(p) = SurfacePoint::new(values.to_vec()) else { continue };
        assert!(m.membership_against(&p, generic).unwrap().on_surface, "{name}: f({s}, {t})");
        on += 1;
    }
    assert_eq!(on, 100);

    let mut r = rng(17);
    let mut off = 0;
    while off < 100 {
        let p = SurfacePoint::new(random_integer_point(&mut r, 4, 50)).unwrap();
        if equation.evaluate(p.coords()).is_zero() {
            continue;
        }
        let v = m.membership_against(&p, generic).unwrap();
        assert!(!v.on_surface, "{name}: {:?}", p.coords());
        assert_eq!(v.evaluated_rank, generic);
        off += 1;
    }
}

#[test]
fn sextic_soundness() {
    soundness("sparse_sextic.json", &sextic());
}

#[test]
fn quadric_soundness() {
    soundness("quadric_proper.json", &quadric());
}

#[test]
fn evaluation_is_linear() {
    let m = matrix("sparse_sextic.json", Field::Rational);
    let mut r = rng(3);
    for _ in 0..5 {
        let p = random_integer_point(&mut r, 4, 20);
        let p2 = random_integer_point(&mut r, 4, 20);
        let (a, b) = (BigRational::new(3.into(), 7.into()), q(-5));
        let combo: Vec<BigRational> = p.iter().zip(&p2).map(|(x, y)| &a * x + &b * y).collect();
        let lhs = m.evaluate_raw(&combo).unwrap();
        let scalar = |x: &BigRational| Field::Rational.from_rational(x).unwrap();
        let rhs = ExactMatrix::zeros(17, 34, Field::Rational)
            .add_scaled(&scalar(&a), &m.evaluate_raw(&p).unwrap())
            .unwrap()
            .add_scaled(&scalar(&b), &m.evaluate_raw(&p2).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn verdict_is_scale_invariant() {
    let m = matrix("quadric_proper.json", Field::Rational);
    let mut r = rng(8);
    for k in 0..20 {
        let raw = if k % 2 == 0 {
            let f = job("quadric_proper.json").parametrization().unwrap();
            f.evaluate(&q(k + 2), &q(3 - k)).unwrap().to_vec()
        } else {
            random_integer_point(&mut r, 4, 9)
        };
        let lambda = BigRational::new((-(k + 2)).into(), 11.into());
        let scaled: Vec<BigRational> = raw.iter().map(|x| x * &lambda).collect();
        assert_eq!(m.evaluate_raw(&raw).unwrap().rank(), m.evaluate_raw(&scaled).unwrap().rank());
        let (Ok(p), Ok(sp)) = (SurfacePoint::new(raw), SurfacePoint::new(scaled)) else { continue };
        assert_eq!(p, sp);
        assert_eq!(m.is_on_surface(&p, 1).unwrap(), m.is_on_surface(&sp, 1).unwrap());
    }
}
