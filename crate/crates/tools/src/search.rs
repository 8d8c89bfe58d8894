//! Exhaustive searches over bounded lattice data.
//!
//! Each search enumerates its space in a fixed order, splits it into
//! independent chunks and merges chunk results by chunk index, so a report
//! does not depend on how many threads ran it. A non-empty counterexample
//! list means a checked statement failed on some instance.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};
use toric_core::cone::{
    classify, discrepancy_class, is_gorenstein, quotient_type, reid_tai_is_terminal, white_normal_form, Discrepancy,
    QuotientType, SingularityClass, SingularityKind, STANDARD_ODP_RAYS,
};
use toric_core::fan::{validate_fan, wall_relation, wall_type, WallType};
use toric_core::lattice::{hyperplane_chart, primitivize, unimodular_match, LatticeVector, Rational, RationalFunctional};
use toric_core::mmp::{
    check_theorem4, recognize_flip, standard_flip_fan, verify_flip_diagram, Family, FlipFamily, Theorem4Side,
};
use toric_core::Cone;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub theorem: String,
    pub space: String,
    pub bounds: BTreeMap<String, i64>,
    pub instances: u64,
    pub skipped: u64,
    pub counts: BTreeMap<String, u64>,
    pub counterexamples: Vec<String>,
    pub duration: Duration,
    pub ordering: String,
}

impl SearchReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// Keys come out sorted. Without timing the output is reproducible
    /// byte for byte.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let mut v = json!({
            "theorem": self.theorem,
            "space": self.space,
            "bounds": self.bounds,
            "instances": self.instances,
            "skipped": self.skipped,
            "counts": self.counts,
            "counterexamples": self.counterexamples,
            "passed": self.passed(),
            "ordering": self.ordering,
        });
        if with_timing {
            v["duration_ms"] = json!(self.duration.as_millis() as u64);
        }
        v
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "theorem {}: {} instances checked, {} skipped, {} counterexamples ({:.2?})\n  space: {}\n",
            self.theorem,
            self.instances,
            self.skipped,
            self.counterexamples.len(),
            self.duration,
            self.space
        );
        for (k, n) in &self.counts {
            s.push_str(&format!("  {k}: {n}\n"));
        }
        for c in &self.counterexamples {
            s.push_str(&format!("  counterexample: {c}\n"));
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    skipped: u64,
    counts: BTreeMap<String, u64>,
    counterexamples: Vec<String>,
}

impl Tally {
    fn count(&mut self, key: impl Into<String>) {
        *self.counts.entry(key.into()).or_insert(0) += 1;
    }

    fn fail(&mut self, what: String) {
        self.counterexamples.push(what);
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.skipped += other.skipped;
        for (k, n) in other.counts {
            *self.counts.entry(k).or_insert(0) += n;
        }
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

fn run_chunks<T, F>(exec: Execution, chunks: &[T], f: F) -> Tally
where
    T: Sync,
    F: Fn(&T) -> Tally + Sync,
{
    let parts: Vec<Tally> = match exec {
        Execution::Sequential => chunks.iter().map(&f).collect(),
        Execution::Parallel => chunks.par_iter().map(&f).collect(),
    };
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

fn report(theorem: &str, space: String, bounds: &[(&str, i64)], tally: Tally, start: Instant, ordering: &str) -> SearchReport {
    SearchReport {
        theorem: theorem.into(),
        space,
        bounds: bounds.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        instances: tally.instances,
        skipped: tally.skipped,
        counts: tally.counts,
        counterexamples: tally.counterexamples,
        duration: start.elapsed(),
        ordering: ordering.into(),
    }
}

/// Nonzero integer points of `[−b, b]³` in lexicographic order.
fn box_points(b: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            for z in -b..=b {
                let v = LatticeVector::new(x, y, z);
                if !v.is_zero() {
                    out.push(v);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Cyclic quotients

/// For every `r ≤ r_max` and every weight triple in `[0, r)³` without
/// pseudo-reflections: the fractional-part criterion holds iff the type is
/// `1/r(a, −a, 1)` up to permutation and choice of generator. Triples with
/// pseudo-reflections are skipped.
pub fn verify_quotient_classification(r_max: i64, exec: Execution) -> SearchReport {
    let start = Instant::now();
    let rs: Vec<i64> = (2..=r_max).collect();
    let tally = run_chunks(exec, &rs, |&r| {
        let mut t = Tally::default();
        for w1 in 0..r {
            for w2 in 0..r {
                for w3 in 0..r {
                    let q = QuotientType::new(r, [w1, w2, w3]);
                    if !q.is_small() {
                        t.skipped += 1;
                        continue;
                    }
                    t.instances += 1;
                    match (reid_tai_is_terminal(&q), white_normal_form(&q)) {
                        (true, Some(_)) => t.count("terminal"),
                        (false, None) => t.count("not terminal"),
                        (rt, wf) => t.fail(format!("{q}: fractional-part criterion {rt}, normal form {wf:?}")),
                    }
                }
            }
        }
        t
    });
    report(
        "2.1",
        format!("weight triples in [0,r)^3 for 2 <= r <= {r_max}; triples with pseudo-reflections skipped"),
        &[("r_max", r_max)],
        tally,
        start,
        "r ascending, then weights lexicographic",
    )
}

/// For every cone `⟨e₁, e₂, v⟩` with `v` primitive in the box and off the
/// plane `z = 0`: terminality by lattice points in the cone agrees with the
/// fractional-part criterion on its quotient type, and with the existence of
/// a `1/r(a, −a, 1)` form.
pub fn cross_validate_terminality(b: i64, exec: Execution) -> SearchReport {
    let start = Instant::now();
    let xs: Vec<i64> = (-b..=b).collect();
    let tally = run_chunks(exec, &xs, |&x| {
        let mut t = Tally::default();
        for y in -b..=b {
            for z in -b..=b {
                let v = LatticeVector::new(x, y, z);
                if z == 0 || !v.is_primitive() {
                    t.skipped += 1;
                    continue;
                }
                t.instances += 1;
                let cone = match Cone::new(&[LatticeVector::unit(0), LatticeVector::unit(1), v]) {
                    Ok(c) => c,
                    Err(e) => {
                        t.fail(format!("{v}: {e}"));
                        continue;
                    }
                };
                let by_points = match discrepancy_class(&cone) {
                    Ok(d) => matches!(d, Discrepancy::Terminal { .. }),
                    Err(e) => {
                        t.fail(format!("{v}: {e}"));
                        continue;
                    }
                };
                let q = match quotient_type(&cone) {
                    Ok(q) => q,
                    Err(e) => {
                        t.fail(format!("{v}: {e}"));
                        continue;
                    }
                };
                let by_fractions = reid_tai_is_terminal(&q);
                let by_form = white_normal_form(&q).is_some();
                if by_points == by_fractions && by_fractions == by_form {
                    t.count(if by_points { "terminal" } else { "not terminal" });
                } else {
                    t.fail(format!(
                        "<e1,e2,{v}> {q}: lattice points {by_points}, fractional parts {by_fractions}, normal form {by_form}"
                    ));
                }
            }
        }
        t
    });
    report(
        "oracle",
        format!("cones <e1,e2,v>, v primitive in [-{b},{b}]^3 with z != 0"),
        &[("box", b)],
        tally,
        start,
        "v lexicographic",
    )
}

// ---------------------------------------------------------------------------
// Non-simplicial cones

/// Every terminal cone whose 4 to 6 rays lie on one affine plane `m = 1`
/// (that is, every Q-Gorenstein cone) with rays in the box has exactly four
/// rays, is Gorenstein and is equivalent to the standard ordinary double
/// point.
///
/// Ray sets whose polygon `conv(rays)` contains another lattice point are
/// canonical but not terminal and are pruned during enumeration.
pub fn verify_nonqfactorial_classification(b: i64, exec: Execution) -> SearchReport {
    let start = Instant::now();
    let points = box_points(b);
    let primitive: Vec<LatticeVector> = points.iter().copied().filter(|v| v.is_primitive()).collect();
    let owners: Vec<usize> = (0..primitive.len()).collect();
    let tally = run_chunks(exec, &owners, |&i| planes_owned_by(i, &primitive, &points));
    report(
        "2.3",
        format!(
            "cones over lattice-empty polygons with 4-6 primitive vertices in [-{b},{b}]^3 on a plane n.x = h > 0"
        ),
        &[("box", b)],
        tally,
        start,
        "planes by smallest ray index, then ray subsets lexicographic",
    )
}

/// Planes through `primitive[i]` on which `i` is the smallest primitive index.
fn planes_owned_by(i: usize, primitive: &[LatticeVector], points: &[LatticeVector]) -> Tally {
    let mut t = Tally::default();
    let p = primitive[i];
    let mut planes: BTreeSet<(LatticeVector, i64)> = BTreeSet::new();
    for j in i + 1..primitive.len() {
        let d1 = primitive[j] - p;
        for q in &primitive[j + 1..] {
            let n = d1.cross(&(*q - p));
            if n.is_zero() {
                continue;
            }
            let n = primitivize(&n).expect("nonzero").0;
            let h = n.dot(&p);
            match h.signum() {
                0 => {}
                1 => {
                    planes.insert((n, h));
                }
                _ => {
                    planes.insert((-n, -h));
                }
            }
        }
    }
    for (n, h) in planes {
        let on_plane: Vec<usize> = (0..primitive.len()).filter(|&k| n.dot(&primitive[k]) == h).collect();
        if on_plane[0] != i || on_plane.len() < 4 {
            continue;
        }
        let rays: Vec<LatticeVector> = on_plane.iter().map(|&k| primitive[k]).collect();
        let lattice: Vec<LatticeVector> = points.iter().copied().filter(|x| n.dot(x) == h).collect();
        check_plane(n, h, &rays, &lattice, &mut t);
    }
    t
}

fn check_plane(n: LatticeVector, h: i64, rays: &[LatticeVector], lattice: &[LatticeVector], t: &mut Tally) {
    let m = RationalFunctional(n.coords().map(|c| Rational::new(c as i128, h as i128)));
    let (Ok(ray_chart), Ok(lattice_chart)) = (hyperplane_chart(&m, rays), hyperplane_chart(&m, lattice)) else {
        t.fail(format!("plane {n}.x = {h}: chart failed"));
        return;
    };
    let mut chosen: Vec<usize> = Vec::new();
    extend_empty_polygons(0, &mut chosen, &ray_chart, &lattice_chart, &mut |set| {
        let gens: Vec<LatticeVector> = set.iter().map(|&k| rays[k]).collect();
        check_qgorenstein_cone(&gens, t);
    });
}

/// Depth-first over subsets of `rays` in index order, keeping only sets in
/// convex position whose hull has no other point of `lattice`. Both
/// properties fail for every superset once they fail, so the search prunes.
fn extend_empty_polygons(
    from: usize,
    chosen: &mut Vec<usize>,
    rays: &[[i64; 2]],
    lattice: &[[i64; 2]],
    visit: &mut dyn FnMut(&[usize]),
) {
    for k in from..rays.len() {
        chosen.push(k);
        let pts: Vec<[i64; 2]> = chosen.iter().map(|&c| rays[c]).collect();
        if is_empty_convex_polygon(&pts, lattice) {
            if chosen.len() >= 4 {
                visit(chosen);
            }
            if chosen.len() < 6 {
                extend_empty_polygons(k + 1, chosen, rays, lattice, visit);
            }
        }
        chosen.pop();
    }
}

fn check_qgorenstein_cone(gens: &[LatticeVector], t: &mut Tally) {
    t.instances += 1;
    let cone = match Cone::new(gens) {
        Ok(c) if c.rays().len() == gens.len() => c,
        Ok(_) => return t.fail(format!("{gens:?}: polygon vertex is not an extremal ray")),
        Err(e) => return t.fail(format!("{gens:?}: {e}")),
    };
    match classify(&cone) {
        Ok(class) => {
            t.count(class.kind().name());
            if !class.is_terminal() {
                return;
            }
            let odp = matches!(class, SingularityClass::OrdinaryDoublePoint { .. });
            let matched = unimodular_match(cone.rays(), &STANDARD_ODP_RAYS).is_some();
            let gorenstein = is_gorenstein(&cone).unwrap_or(false);
            if !(cone.rays().len() == 4 && odp && matched && gorenstein) {
                t.fail(format!(
                    "{cone:?}: terminal with {} rays, ordinary double point {odp}, matched {matched}, Gorenstein {gorenstein}",
                    cone.rays().len()
                ));
            }
        }
        Err(e) => t.fail(format!("{cone:?}: {e}")),
    }
}

fn cross2(o: [i64; 2], a: [i64; 2], b: [i64; 2]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Vertices of the convex hull, counter-clockwise, collinear points dropped.
fn convex_hull(points: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<[i64; 2]> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &[i64; 2]>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross2(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn in_closed_hull(hull: &[[i64; 2]], p: [i64; 2]) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == p,
        2 => {
            let (a, b) = (hull[0], hull[1]);
            cross2(a, b, p) == 0
                && p[0] >= a[0].min(b[0])
                && p[0] <= a[0].max(b[0])
                && p[1] >= a[1].min(b[1])
                && p[1] <= a[1].max(b[1])
        }
        n => (0..n).all(|i| cross2(hull[i], hull[(i + 1) % n], p) >= 0),
    }
}

fn is_empty_convex_polygon(pts: &[[i64; 2]], lattice: &[[i64; 2]]) -> bool {
    let hull = convex_hull(pts);
    if hull.len() != pts.len() {
        return false;
    }
    lattice.iter().all(|p| pts.contains(p) || !in_closed_hull(&hull, *p))
}

// ---------------------------------------------------------------------------
// Flips

/// With `v₁ = e₁`, `v₂ = e₂` fixed, every fan `{⟨v₁,v₂,v₃⟩, ⟨v₁,v₂,v₄⟩}` with
/// `v₃, v₄` primitive in the box on opposite sides of `z = 0` whose wall is
/// flipping with both cones terminal is a flip family up to `GL₃(Z)`, and
/// exactly one of its cones is smooth.
pub fn search_flips(b: i64, exec: Execution) -> SearchReport {
    let start = Instant::now();
    let upper: Vec<LatticeVector> = box_points(b).into_iter().filter(|v| v.0[2] > 0 && v.is_primitive()).collect();
    let lower: Vec<LatticeVector> = box_points(b).into_iter().filter(|v| v.0[2] < 0 && v.is_primitive()).collect();
    let e1 = LatticeVector::unit(0);
    let e2 = LatticeVector::unit(1);
    let side_kinds = |vs: &[LatticeVector]| -> Vec<Option<SingularityKind>> {
        let kind = |v: &LatticeVector| Cone::new(&[e1, e2, *v]).ok().and_then(|c| classify(&c).ok()).map(|k| k.kind());
        match exec {
            Execution::Sequential => vs.iter().map(kind).collect(),
            Execution::Parallel => vs.par_iter().map(kind).collect(),
        }
    };
    let upper_kinds = side_kinds(&upper);
    let lower_kinds = side_kinds(&lower);
    let chunks: Vec<usize> = (0..upper.len()).collect();
    let tally = run_chunks(exec, &chunks, |&i| {
        let mut t = Tally::default();
        let v3 = upper[i];
        for (j, &v4) in lower.iter().enumerate() {
            let fan = match validate_fan(vec![e1, e2, v3, v4], vec![vec![0, 1, 2], vec![0, 1, 3]]) {
                Ok(f) => f,
                Err(_) => {
                    t.skipped += 1;
                    continue;
                }
            };
            t.instances += 1;
            let Some(w) = fan.find_wall(0, 1) else {
                t.fail(format!("v3={v3} v4={v4}: no wall <v1,v2>"));
                continue;
            };
            let typ = match wall_relation(&fan, &w) {
                Ok(rel) => wall_type(&rel),
                Err(e) => {
                    t.fail(format!("v3={v3} v4={v4}: {e}"));
                    continue;
                }
            };
            t.count(format!("wall {}", typ.name()));
            if typ != WallType::Flipping {
                continue;
            }
            let (Some(k3), Some(k4)) = (upper_kinds[i], lower_kinds[j]) else {
                t.fail(format!("v3={v3} v4={v4}: endpoint not classified"));
                continue;
            };
            if !(k3.is_terminal() && k4.is_terminal()) {
                t.count("flipping, endpoint not terminal");
                continue;
            }
            t.count("flipping, terminal");
            let smooth = [k3, k4].iter().filter(|k| **k == SingularityKind::Smooth).count();
            if smooth != 1 {
                t.fail(format!("v3={v3} v4={v4}: {smooth} smooth endpoints ({k3}, {k4})"));
            }
            match recognize_flip(&fan, &w) {
                Ok(Some((fam, u))) => {
                    let matches = fan.transform(&u).is_ok_and(|g| g.same_cones(&standard_flip_fan(fam)));
                    if matches {
                        t.count(format!("family {fam}"));
                    } else {
                        t.fail(format!("v3={v3} v4={v4}: transform does not reach {fam}"));
                    }
                }
                Ok(None) => t.fail(format!("v3={v3} v4={v4}: no flip family matches")),
                Err(e) => t.fail(format!("v3={v3} v4={v4}: {e}")),
            }
        }
        t
    });
    report(
        "3.1",
        format!("v1=e1, v2=e2, v3 and v4 primitive in [-{b},{b}]^3 with z > 0 and z < 0"),
        &[("box", b)],
        tally,
        start,
        "v3 lexicographic, then v4 lexicographic",
    )
}

/// Both families, `r ≤ r_max`: the full `X → Y ← X⁺` diagram checks.
pub fn verify_flip_diagrams(r_max: i64, exec: Execution) -> SearchReport {
    let start = Instant::now();
    let fams = FlipFamily::all_up_to(r_max);
    let tally = run_chunks(exec, &fams, |&fam| {
        let mut t = Tally { instances: 1, ..Tally::default() };
        let rep = verify_flip_diagram(fam);
        if rep.passed() {
            t.count(format!("family {}", fam.family().name()));
        } else {
            t.fail(format!("{fam}: failed {}", rep.failures().join("; ")));
        }
        t
    });
    report(
        "1.1",
        format!("flip families A and B with 2 <= r <= {r_max}"),
        &[("r_max", r_max)],
        tally,
        start,
        "family, then r, then a",
    )
}

fn case_number(fam: FlipFamily, side: Theorem4Side) -> u8 {
    match (side, fam.family()) {
        (Theorem4Side::Delta1, Family::A) => 1,
        (Theorem4Side::Delta1, Family::B) => 2,
        (Theorem4Side::Delta2, Family::A) => 3,
        (Theorem4Side::Delta2, Family::B) => 4,
    }
}

/// For every family with `r ≤ r_max` and both placements of an ordinary
/// double point next to the flipping curve, the wall `⟨v₁, v₂⟩` cannot be
/// removed and the buried wall ray has the expected convex combination.
pub fn verify_no_odp_on_flips(r_max: i64, exec: Execution) -> SearchReport {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for fam in FlipFamily::all_up_to(r_max) {
        jobs.push((fam, Theorem4Side::Delta1));
        jobs.push((fam, Theorem4Side::Delta2));
    }
    let tally = run_chunks(exec, &jobs, |&(fam, side)| {
        let mut t = Tally { instances: 1, ..Tally::default() };
        match check_theorem4(fam, side) {
            Ok(true) => t.count(format!("case {}", case_number(fam, side))),
            Ok(false) => t.fail(format!("{fam} {}: removable or unexpected witness", side.name())),
            Err(e) => t.fail(format!("{fam} {}: {e}", side.name())),
        }
        t
    });
    report(
        "4.1",
        format!("flip families A and B with 2 <= r <= {r_max}, ordinary double point on either side"),
        &[("r_max", r_max)],
        tally,
        start,
        "family, then r, then a, then side",
    )
}
