//! Library results against independent brute-force recomputations.

use std::collections::BTreeSet;

use toric_core::cone::{classify, make_cone, quotient_type, white_normal_form, ConeError, SingularityClass};
use toric_core::fan::{validate_fan, wall_relation};
use toric_core::lattice::{det3, hull_lattice_points, integer_kernel, LatticeVector};

fn lv(x: i64, y: i64, z: i64) -> LatticeVector {
    LatticeVector::new(x, y, z)
}

fn box_vectors(b: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            for z in -b..=b {
                out.push(lv(x, y, z));
            }
        }
    }
    out
}

/// Integer points of the bounding box of `pts`.
fn bounding_box(pts: &[LatticeVector]) -> Vec<LatticeVector> {
    let lo: Vec<i64> = (0..3).map(|c| pts.iter().map(|p| p.0[c]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..3).map(|c| pts.iter().map(|p| p.0[c]).max().unwrap()).collect();
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                out.push(lv(x, y, z));
            }
        }
    }
    out
}

/// Coordinates of `x` in the basis `a`, as numerators over `|det a|`.
fn cramer(a: &[LatticeVector; 3], x: &LatticeVector) -> ([i64; 3], i64) {
    let d = det3(&a[0], &a[1], &a[2]);
    let s = d.signum();
    let n = [det3(x, &a[1], &a[2]), det3(&a[0], x, &a[2]), det3(&a[0], &a[1], x)];
    (n.map(|v| v * s), d.abs())
}

/// Lattice points of `conv(points)`: `x` is in the hull iff it lies in the
/// simplex of some affinely independent 4-subset.
fn hull_points_by_simplices(points: &[LatticeVector]) -> BTreeSet<LatticeVector> {
    let mut out = BTreeSet::new();
    let n = points.len();
    for x in bounding_box(points) {
        'search: for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let p = points[i];
                        let a = [points[j] - p, points[k] - p, points[l] - p];
                        if det3(&a[0], &a[1], &a[2]) == 0 {
                            continue;
                        }
                        let (t, d) = cramer(&a, &(x - p));
                        if t.iter().all(|&v| v >= 0) && t.iter().sum::<i64>() <= d {
                            out.insert(x);
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Elements of `N / ⟨rays⟩` as ray-basis coordinates with numerators in `[0, d)`.
fn parallelepiped_group(rays: &[LatticeVector; 3]) -> (BTreeSet<[i64; 3]>, i64) {
    let corners: Vec<LatticeVector> = (0..8)
        .map(|m: usize| (0..3).filter(|i| m >> i & 1 == 1).fold(LatticeVector::ZERO, |acc, i| acc + rays[i]))
        .collect();
    let mut group = BTreeSet::new();
    let mut den = 0;
    for x in bounding_box(&corners) {
        let (t, d) = cramer(rays, &x);
        den = d;
        if t.iter().all(|&v| (0..d).contains(&v)) {
            group.insert(t);
        }
    }
    (group, den)
}

fn order(t: &[i64; 3], d: i64) -> i64 {
    (1..=d).find(|k| t.iter().all(|v| (k * v) % d == 0)).unwrap()
}

/// Smallest `a` with some element of order `r` reading `(a, r−a, 1)/r` in
/// some coordinate order.
fn white_form_oracle(group: &BTreeSet<[i64; 3]>, r: i64) -> Option<i64> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    group
        .iter()
        .filter(|g| order(g, r) == r)
        .flat_map(|g| perms.iter().map(move |p| [g[p[0]], g[p[1]], g[p[2]]]))
        .filter(|w| w[2] == 1 && w[0] > 0 && w[0] + w[1] == r)
        .map(|w| w[0])
        .min()
}

fn simplicial_samples() -> Vec<[LatticeVector; 3]> {
    let e1 = LatticeVector::unit(0);
    let e2 = LatticeVector::unit(1);
    let mut out: Vec<[LatticeVector; 3]> = box_vectors(4)
        .into_iter()
        .filter(|v| v.0[2] != 0 && v.is_primitive())
        .map(|v| [e1, e2, v])
        .collect();
    // cones with no ray on a coordinate axis
    let vs: Vec<LatticeVector> = box_vectors(2).into_iter().filter(|v| v.is_primitive()).collect();
    for (i, a) in vs.iter().enumerate().step_by(7) {
        for b in vs[i + 1..].iter().step_by(5) {
            for c in vs.iter().step_by(11) {
                let d = det3(a, b, c);
                if d != 0 && d.abs() <= 12 {
                    out.push([*a, *b, *c]);
                }
            }
        }
    }
    out
}

#[test]
fn lattice_points_of_simplices_and_pyramids() {
    let samples: Vec<Vec<LatticeVector>> = vec![
        vec![LatticeVector::ZERO, lv(1, 0, 0), lv(0, 1, 0), lv(1, 2, 4)],
        vec![LatticeVector::ZERO, lv(1, 0, 0), lv(0, 1, 0), lv(2, 3, -5)],
        vec![LatticeVector::ZERO, lv(-1, -1, 5), lv(1, 0, 0), lv(0, 1, 0)],
        vec![LatticeVector::ZERO, lv(1, 0, 0), lv(0, 1, 0), lv(0, 0, 1), lv(1, 1, -1)],
        vec![LatticeVector::ZERO, lv(1, 0, 0), lv(0, 1, 0), lv(0, 0, 1), lv(2, 2, -1)],
        vec![lv(3, 0, 0), lv(0, 3, 0), lv(0, 0, 3), lv(1, 1, 1), lv(-1, 2, 0)],
    ];
    for pts in samples {
        let lib: BTreeSet<LatticeVector> = hull_lattice_points(&pts).into_iter().collect();
        assert_eq!(lib, hull_points_by_simplices(&pts), "hull of {pts:?}");
    }
}

#[test]
fn quotient_type_matches_parallelepiped() {
    for rays in simplicial_samples() {
        let cone = make_cone(&rays).unwrap();
        let sorted: [LatticeVector; 3] = [cone.rays()[0], cone.rays()[1], cone.rays()[2]];
        let (group, d) = parallelepiped_group(&sorted);
        assert_eq!(group.len() as i64, d, "{rays:?}");
        match quotient_type(&cone) {
            Ok(q) => {
                assert_eq!(q.r(), d);
                let generated: BTreeSet<[i64; 3]> = (0..d).map(|k| q.power(k)).collect();
                assert_eq!(generated, group, "{rays:?}: {q}");
            }
            Err(ConeError::NonCyclic(_)) => {
                assert!(group.iter().all(|g| order(g, d) < d), "{rays:?}");
            }
            Err(e) => panic!("{rays:?}: {e}"),
        }
    }
}

#[test]
fn terminality_and_normal_form_match_parallelepiped() {
    let mut terminal = 0;
    for rays in simplicial_samples() {
        let cone = make_cone(&rays).unwrap();
        let sorted: [LatticeVector; 3] = [cone.rays()[0], cone.rays()[1], cone.rays()[2]];
        let (group, d) = parallelepiped_group(&sorted);
        // terminal iff every nontrivial element has coordinate sum > 1
        let oracle_terminal = group.iter().all(|g| *g == [0, 0, 0] || g.iter().sum::<i64>() > d);
        let class = classify(&cone).unwrap();
        assert_eq!(class.is_terminal(), oracle_terminal, "{rays:?}: {class}");
        if let SingularityClass::TerminalQuotient { r, a, .. } = class {
            terminal += 1;
            assert_eq!(r, d);
            assert_eq!(Some(a), white_form_oracle(&group, d), "{rays:?}");
        }
        if let Ok(q) = quotient_type(&cone) {
            if q.r() > 1 {
                assert_eq!(white_normal_form(&q).map(|(_, a)| a), white_form_oracle(&group, d));
            }
        }
    }
    assert!(terminal > 10);
}

#[test]
fn flip_family_endpoint_index() {
    // endpoint ⟨e₁, e₂, (2, 3, −5)⟩ of family A with r = 5, a = 2
    let rays = [lv(1, 0, 0), lv(0, 1, 0), lv(2, 3, -5)];
    let cone = make_cone(&rays).unwrap();
    let sorted = [cone.rays()[0], cone.rays()[1], cone.rays()[2]];
    let (group, d) = parallelepiped_group(&sorted);
    let expected = white_form_oracle(&group, d).unwrap();
    match classify(&cone).unwrap() {
        SingularityClass::TerminalQuotient { r, a, .. } => assert_eq!((r, a), (5, expected)),
        other => panic!("{other}"),
    }
}

/// All nonzero `α ∈ [−m, m]⁴` with `Σ αᵢvᵢ = 0`.
fn kernel_by_search(vs: &[LatticeVector; 4], m: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in -m..=m {
        for b in -m..=m {
            for c in -m..=m {
                for d in -m..=m {
                    let s = a * vs[0] + b * vs[1] + c * vs[2] + d * vs[3];
                    if s.is_zero() && [a, b, c, d] != [0, 0, 0, 0] {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn kernel_matches_search() {
    let vs: Vec<LatticeVector> = box_vectors(1).into_iter().filter(|v| !v.is_zero()).collect();
    let mut checked = 0;
    for (i, a) in vs.iter().enumerate().step_by(3) {
        for b in vs[i + 1..].iter().step_by(4) {
            for c in vs.iter().step_by(5) {
                for d in vs.iter().step_by(6) {
                    let four = [*a, *b, *c, *d];
                    let Ok(alpha) = integer_kernel(&four) else { continue };
                    // 3×3 minors of {−1,0,1} vectors are at most 4 in size
                    let found = kernel_by_search(&four, 4);
                    let scale = alpha.iter().map(|x| x.abs()).max().unwrap();
                    let expected: BTreeSet<[i64; 4]> =
                        (-4 / scale..=4 / scale).filter(|&k| k != 0).map(|k| alpha.map(|x| k * x)).collect();
                    assert_eq!(found.into_iter().collect::<BTreeSet<_>>(), expected, "{four:?}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn wall_relation_examples() {
    for (v4, alpha) in [
        (lv(1, 1, -1), [-1, -1, 1, 1]),
        (lv(1, 1, -2), [-1, -1, 2, 1]),
        (lv(2, 1, -3), [-2, -1, 3, 1]),
    ] {
        let rays = vec![lv(1, 0, 0), lv(0, 1, 0), lv(0, 0, 1), v4];
        let four = [rays[0], rays[1], rays[2], rays[3]];
        let found = kernel_by_search(&four, 3);
        let primitive: Vec<&[i64; 4]> = found.iter().filter(|a| a[2] > 0 && a[3] > 0).collect();
        assert_eq!(primitive.iter().min_by_key(|a| a[2]).copied(), Some(&alpha));
        let fan = validate_fan(rays, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(wall_relation(&fan, &fan.walls()[0]).unwrap().alpha, alpha);
    }
}
