use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::fixtures::{self, presented};
use crate::linalg::scalar;
use crate::vector::Vector;

const FREE_S2: &str = r#"
relations = []
max_degree = 8
truncate = true
[[generators]]
name = "a"
degree = 2
[[generators]]
name = "b"
degree = 3
[differentials]
b = "a^2"
"#;

const FLAT_S2: &str = r#"
relations = ["a^3"]
max_degree = 7
[[generators]]
name = "a"
degree = 2
[[generators]]
name = "b"
degree = 3
"#;

fn ground() -> Arc<Cdga> {
    Arc::new(Cdga::ground())
}

fn el(a: &Cdga, name: &str) -> Vector {
    a.element(name).unwrap_or_else(|| panic!("no element {name}"))
}

#[test]
fn sphere_algebra_is_valid() {
    let s4 = presented(fixtures::S4).algebra;
    assert!(verify_cdga(&s4).is_valid());
    assert_eq!(s4.cohomology().dims(), [(0, 1), (4, 1)].into());
}

#[test]
fn odd_square_is_rejected() {
    let space = GradedSpace::new(vec![("1".into(), 0), ("y".into(), 3)]).unwrap();
    let bad = CdgaBuilder::new(space).product("y", "y", &[(1, "1")]).build_unchecked();
    let report = verify_cdga(&bad);
    assert!(report.has(axiom::DEGREE));
    assert!(matches!(bad.checked(), Err(Error::NotACdga(_))));
}

#[test]
fn sphere_two_model() {
    let a = presented(fixtures::S2_MODEL).algebra;
    assert!(verify_cdga(&a).is_valid());
    assert_eq!(a.d(&el(&a, "b")), el(&a, "a^2"));
    // d(ab) = a·a², which dies modulo a³.
    assert!(a.d(&el(&a, "a*b")).is_zero());
    assert_eq!(a.dim(), 6);
    assert_eq!(a.cohomology().dims(), [(0, 1), (2, 1), (5, 1), (7, 1)].into());
}

#[test]
fn free_sphere_two_model_below_the_cut() {
    let a = presented(FREE_S2).algebra;
    assert!(verify_cdga(&a).is_valid());
    let betti = a.cohomology().betti(7);
    assert_eq!(betti, vec![1, 0, 1, 0, 0, 0, 0, 0]);
}

#[test]
fn acyclic_line() {
    let space = GradedSpace::new(vec![("u".into(), 0), ("du".into(), 1)]).unwrap();
    let m = DgModule::new(ground(), space, vec![Vector::basis(1), Vector::zero()], vec![Vector::basis(0), Vector::basis(1)]).unwrap();
    let h = m.cohomology();
    assert_eq!(h.dim(), 0);
    assert_eq!(h.class_of(&Vector::basis(0)), Err(Error::NotACocycle));
    assert!(h.class_of(&Vector::basis(1)).unwrap().is_zero());
}

#[test]
fn class_of_inverts_representatives() {
    let a = presented(fixtures::S2_MODEL).algebra;
    let h = a.cohomology();
    for i in 0..h.dim() {
        assert_eq!(h.class_of(h.representative(i)).unwrap(), Vector::basis(i));
    }
    // a² = d(b) is exact.
    assert!(h.is_exact(&el(&a, "a^2")).unwrap());
}

#[test]
fn tensor_with_ground_is_identity() {
    let s4 = presented(fixtures::S4).algebra;
    let t = Cdga::tensor(&Cdga::ground(), &s4);
    assert_eq!(t.space().names(), &["1⊗1".to_string(), "1⊗x".to_string()]);
    assert_eq!(t.space().degrees(), s4.space().degrees());
    assert!(t.mul(&Vector::basis(1), &Vector::basis(1)).is_zero());
}

#[test]
fn koszul_sign_on_odd_generators() {
    let e3 = presented("relations=[]\nmax_degree=3\n[[generators]]\nname=\"y\"\ndegree=3\n").algebra;
    let t = Cdga::tensor(&e3, &e3);
    assert!(verify_cdga(&t).is_valid());
    let (left, right, both) = (el(&t, "y⊗1"), el(&t, "1⊗y"), el(&t, "y⊗y"));
    assert_eq!(t.mul(&left, &right), both);
    assert_eq!(t.mul(&right, &left), -&both);
}

#[test]
fn koszul_sign_on_tensor_differential() {
    let s4 = presented(fixtures::S4).algebra;
    let s2 = presented(fixtures::S2_MODEL).algebra;
    let e3 = presented("relations=[]\nmax_degree=3\n[[generators]]\nname=\"y\"\ndegree=3\n").algebra;
    let even = Cdga::tensor(&s4, &s2);
    assert_eq!(even.d(&el(&even, "x⊗b")), el(&even, "x⊗a^2"));
    let odd = Cdga::tensor(&e3, &s2);
    assert_eq!(odd.d(&el(&odd, "y⊗b")), -&el(&odd, "y⊗a^2"));
    assert!(verify_cdga(&odd).is_valid());
}

#[test]
fn dual_shift_degrees() {
    let g = ground();
    let line = DgModule::trivial(Arc::clone(&g), "1", 0).unwrap();
    assert_eq!(line.dual_shift(-5).space().degrees(), &[5]);

    let s4 = Arc::new(presented(fixtures::S4).algebra.as_ref().clone());
    let dual = s4.as_module().dual_shift(-4);
    assert_eq!(dual.space().dims(), [(0, 1), (4, 1)].into());
    assert!(dual.verify().is_valid());

    let s2 = presented(fixtures::S2_MODEL).algebra;
    let dual = s2.as_module().dual_shift(-7);
    assert!(dual.verify().is_valid());
    let h = s2.cohomology();
    let hd = dual.cohomology();
    for q in -1..=8 {
        assert_eq!(hd.dim_in_degree(7 - q), h.dim_in_degree(q), "degree {q}");
    }
}

#[test]
fn suspension_conventions() {
    let g = ground();
    let line = DgModule::trivial(Arc::clone(&g), "1", 0).unwrap();
    assert_eq!(line.suspend(1).space().degrees(), &[-1]);

    let s2 = presented(fixtures::S2_MODEL).algebra;
    let m = s2.as_module();
    let back = m.suspend(1).suspend(-1);
    assert_eq!(back.space().degrees(), m.space().degrees());
    for i in 0..m.dim() {
        assert_eq!(back.d_basis(i), m.d_basis(i));
    }
    let s = m.suspend(1);
    assert!(s.verify().is_valid());
    let b = s2.space().index_of("b").unwrap();
    assert_eq!(s.d_basis(b), &-m.d_basis(b));
    // b·s(a) = (-1)^{|b|} s(ba) and a·s(b) = s(ab).
    let a = s2.space().index_of("a").unwrap();
    assert_eq!(s.act_basis(b, a), &-m.act_basis(b, a));
    assert_eq!(s.act_basis(a, b), m.act_basis(a, b));
}

#[test]
fn morphism_reports() {
    let s2 = presented(fixtures::S2_MODEL).algebra;
    let m = s2.as_module();
    assert!(verify_morphism(&DgMorphism::identity(&m)).is_valid());
    assert!(verify_morphism(&DgMorphism::zero(&m, &m)).is_valid());

    let flat = presented(FLAT_S2).algebra;
    assert_eq!(flat.space().names(), s2.space().names());
    let images = (0..flat.dim())
        .map(|i| {
            let name = flat.space().name(i);
            let v = Vector::basis(s2.space().index_of(name).unwrap());
            if name.contains('b') {
                v.scaled(&scalar(2))
            } else {
                v
            }
        })
        .collect();
    let f = CdgaMorphism::from_images(Arc::clone(&flat), Arc::clone(&s2), images).unwrap();
    assert!(f.verify().has(axiom::CHAIN_MAP));
}

#[test]
fn euler_characteristic_survives_cohomology() {
    let s2 = presented(fixtures::S2_MODEL).algebra;
    assert_eq!(euler_characteristic(s2.space()), s2.cohomology().euler_characteristic());
}
