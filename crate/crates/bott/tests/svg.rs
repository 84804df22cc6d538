use bott::svg::render;
use bott_core::linalg::ints;
use bott_core::{build_fan, GeneralFan, IntegralSequence};
use num_bigint::BigInt;

fn figure_two() -> GeneralFan {
    let rays = vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, 2]), ints(&[0, -1])];
    GeneralFan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap()
}

#[test]
fn draws_every_ray_and_cone() {
    let svg = render(&figure_two()).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.ends_with("</svg>\n"));
    assert_eq!(svg.matches("<line ").count(), 4);
    assert_eq!(svg.matches("marker-end").count(), 4);
    assert_eq!(svg.matches(" A ").count(), 4);
    assert!(svg.contains("(-1, 2)"));
}

#[test]
fn rendering_is_deterministic() {
    let fan = build_fan(&IntegralSequence::hirzebruch(BigInt::from(-3)), 2).unwrap().to_general();
    assert_eq!(render(&fan).unwrap(), render(&fan).unwrap());
    assert!(!render(&fan).unwrap().contains("-0.00"));
}

#[test]
fn rejects_other_dimensions() {
    let fan = build_fan(&IntegralSequence::zero(3).unwrap(), 3).unwrap().to_general();
    assert!(render(&fan).is_err());
}
