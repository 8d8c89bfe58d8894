use toric_core::cone::{classify, Cone, SingularityClass, SingularityKind};
use toric_core::fan::{
    contraction_target, is_wall_removable, validate_fan, wall_relation, wall_type, RemovabilityWitness, WallType,
};
use toric_core::lattice::{IntegerMatrix, LatticeVector, Rational};
use toric_core::mmp::{
    flip, flip_diagram, flop, flop_odp, recognize_flip, standard_flip_fan, theorem4_fan, verify_flip_diagram,
    wall_crossing, Family, FlipFamily, MmpError, Theorem4Side,
};

fn lv(x: i64, y: i64, z: i64) -> LatticeVector {
    LatticeVector::new(x, y, z)
}

fn fam(f: Family, r: i64, a: i64) -> FlipFamily {
    FlipFamily::new(f, r, a).unwrap()
}

#[test]
fn involution_and_support() {
    for f in FlipFamily::all_up_to(15) {
        let x = standard_flip_fan(f);
        let w = x.walls()[0];
        let xp = flip(&x, &w).unwrap();
        let back = wall_crossing(&xp, &xp.walls()[0]).unwrap();
        assert!(back.same_cones(&x), "{f}");
        let y = contraction_target(&x, &w).unwrap();
        assert_eq!(xp.hull().unwrap(), y.cone(0), "{f}");
        assert_eq!(x.hull().unwrap(), y.cone(0), "{f}");
        assert!(xp.has_convex_support());
        // the flipped wall has K positive, so it is not a flipping wall
        assert_eq!(flip(&xp, &xp.walls()[0]), Err(MmpError::NotFlipping));
    }
}

#[test]
fn one_smooth_endpoint_one_index_r() {
    for f in FlipFamily::all_up_to(15) {
        let d = flip_diagram(f).unwrap();
        let mut kinds: Vec<SingularityKind> = d.endpoints.iter().map(|c| c.kind()).collect();
        kinds.sort();
        assert_eq!(kinds[0], SingularityKind::Smooth, "{f}");
        assert!(matches!(kinds[1], SingularityKind::TerminalQuotient { r, .. } if r == f.r()), "{f}");
        let expected_sum = match f.family() {
            Family::A => 1,
            Family::B => f.r() - f.a(),
        };
        assert_eq!(d.relation.sum(), expected_sum, "{f}");
        assert_eq!(wall_type(&d.relation), WallType::Flipping);
        assert!(verify_flip_diagram(f).passed(), "{f}");
    }
}

#[test]
fn flipped_fan_examples() {
    let x = standard_flip_fan(fam(Family::A, 2, 1));
    let xp = flip(&x, &x.walls()[0]).unwrap();
    for i in 0..2 {
        let rays = xp.cone_rays(i);
        assert_eq!(toric_core::lattice::det3(&rays[0], &rays[1], &rays[2]).abs(), 1);
    }
    let x = standard_flip_fan(fam(Family::A, 5, 2));
    let xp = flip(&x, &x.walls()[0]).unwrap();
    for i in 0..2 {
        assert!(classify(&xp.cone(i)).unwrap().is_terminal());
    }
    let rel = wall_relation(&xp, &xp.walls()[0]).unwrap();
    assert_eq!(rel.k_sign(), std::cmp::Ordering::Greater);
}

#[test]
fn diagram_rejects_trivial_index() {
    assert_eq!(FlipFamily::new(Family::A, 1, 1), Err(MmpError::InvalidFamily));
}

#[test]
fn standard_flop() {
    let (a, b) = flop_odp(&Cone::standard_odp()).unwrap();
    let cones = |f: &toric_core::Fan| {
        let mut cs: Vec<Vec<LatticeVector>> = (0..f.cones().len())
            .map(|i| {
                let mut c = f.cone_rays(i);
                c.sort();
                c
            })
            .collect();
        cs.sort();
        cs
    };
    let (e1, e2, e3, v4) = (lv(1, 0, 0), lv(0, 1, 0), lv(0, 0, 1), lv(1, 1, -1));
    let mut through_e3_v4 = vec![vec![e3, e1, v4], vec![e3, e2, v4]];
    let mut through_e1_e2 = vec![vec![e3, e1, e2], vec![e1, e2, v4]];
    for set in [&mut through_e3_v4, &mut through_e1_e2] {
        for c in set.iter_mut() {
            c.sort();
        }
        set.sort();
    }
    let mut got = vec![cones(&a), cones(&b)];
    got.sort();
    let mut want = vec![through_e3_v4, through_e1_e2];
    want.sort();
    assert_eq!(got, want);
    for f in [&a, &b] {
        let w = f.walls()[0];
        let rel = wall_relation(f, &w).unwrap();
        assert_eq!(rel.sum(), 0);
        assert_eq!(wall_type(&rel), WallType::Flopping);
    }
    assert!(flop(&a, &a.walls()[0]).unwrap().same_cones(&b));
    assert!(flop(&b, &b.walls()[0]).unwrap().same_cones(&a));
}

#[test]
fn recognition_through_a_transform() {
    let u = IntegerMatrix::from_rows(&[[1, 2, 0], [0, 1, 1], [1, 2, 1]]);
    assert!(u.is_unimodular());
    let x = standard_flip_fan(fam(Family::A, 5, 3)).transform(&u).unwrap();
    let (got, t) = recognize_flip(&x, &x.walls()[0]).unwrap().unwrap();
    // A(5,3) and A(5,2) differ by swapping v₁ and v₂; the smaller label is reported
    assert_eq!(got, fam(Family::A, 5, 2));
    assert!(x.transform(&t).unwrap().same_cones(&standard_flip_fan(got)));
}

#[test]
fn canonical_endpoint_is_not_recognized() {
    let x = validate_fan(
        vec![lv(1, 0, 0), lv(0, 1, 0), lv(1, 2, 4), lv(0, 0, -1)],
        vec![vec![0, 1, 2], vec![0, 1, 3]],
    )
    .unwrap();
    assert!(matches!(
        classify(&x.cone(0)).unwrap(),
        SingularityClass::CanonicalNotTerminal { .. }
    ));
    assert!(matches!(recognize_flip(&x, &x.walls()[0]), Err(MmpError::NotApplicable(_))));
}

fn witness(f: FlipFamily, side: Theorem4Side) -> (usize, Vec<(usize, Rational)>) {
    let x = theorem4_fan(f, side).unwrap();
    let rem = is_wall_removable(&x, &x.find_wall(0, 1).unwrap());
    assert!(!rem.removable);
    match rem.witness {
        Some(RemovabilityWitness::NonExtremalRay { ray, mut combination }) => {
            combination.sort();
            (ray, combination)
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn removal_witness_examples() {
    let q = Rational::new;
    // Δ₁, family A, r = 2, a = 1: v₂ = 2/3 v₅ + 1/3 v₁ + 1/3 v₄
    assert_eq!(witness(fam(Family::A, 2, 1), Theorem4Side::Delta1), (1, vec![(0, q(1, 3)), (3, q(1, 3)), (4, q(2, 3))]));
    // Δ₂, family A, r = 2, a = 1: v₁ = 2/3 v₆ + 1/3 v₂ + 1/3 v₄
    assert_eq!(witness(fam(Family::A, 2, 1), Theorem4Side::Delta2), (0, vec![(1, q(1, 3)), (3, q(1, 3)), (4, q(2, 3))]));
    // Δ₂, family A, r = 3, a = 2: v₁ = 3/5 v₆ + 2/5 v₂ + 1/5 v₄
    assert_eq!(witness(fam(Family::A, 3, 2), Theorem4Side::Delta2), (0, vec![(1, q(2, 5)), (3, q(1, 5)), (4, q(3, 5))]));
}

#[test]
fn removal_witness_closed_forms() {
    let q = |a: i64, b: i64| Rational::new(a as i128, b as i128);
    for f in FlipFamily::all_up_to(15) {
        let (r, a) = (f.r(), f.a());
        for side in [Theorem4Side::Delta1, Theorem4Side::Delta2] {
            let (ray, mut want) = match (side, f.family()) {
                (Theorem4Side::Delta1, Family::A) => (1, vec![(4, q(r, 2 * r - a)), (0, q(r - a, 2 * r - a)), (3, q(1, 2 * r - a))]),
                (Theorem4Side::Delta1, Family::B) => (1, vec![(4, q(r, r + 1)), (0, q(r - a, r + 1)), (3, q(1, r + 1))]),
                (Theorem4Side::Delta2, Family::A) => (0, vec![(4, q(r, r + a)), (1, q(a, r + a)), (3, q(1, r + a))]),
                (Theorem4Side::Delta2, Family::B) => (0, vec![(4, q(r, r + a)), (1, q(r - 1, r + a)), (3, q(1, r + a))]),
            };
            want.sort();
            assert_eq!(witness(f, side), (ray, want), "{f} {}", side.name());
            let x = theorem4_fan(f, side).unwrap();
            assert!(matches!(classify(&x.cone(0)).unwrap(), SingularityClass::OrdinaryDoublePoint { .. }));
        }
    }
}
