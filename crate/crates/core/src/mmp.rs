//! Flip and flop surgery on fans.
//!
//! The flip families are the fans
//! `X = {⟨v₁,v₂,v₃⟩, ⟨v₁,v₂,v₄⟩}` with `vᵢ = eᵢ` for `i ≤ 3` and
//! `v₄ = (a, r−a, −r)` (family A) or `v₄ = (a, 1, −r)` (family B),
//! where `0 < a < r` and `gcd(a, r) = 1`. Every flipping wall between two
//! terminal cones is, up to `GL₃(Z)`, one of these.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;

use crate::cone::{classify, Cone, ConeError, SingularityClass, SingularityKind};
use crate::fan::{
    contraction_target, is_wall_removable, validate_fan, wall_relation, wall_type, Fan, FanError,
    RemovabilityWitness, Wall, WallRelation, WallType,
};
use crate::lattice::{IntegerMatrix, LatticeVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MmpError {
    #[error("invalid family parameters")]
    InvalidFamily,
    #[error("not a flipping wall")]
    NotFlipping,
    #[error("not a flopping wall")]
    NotFlopping,
    #[error("flop defined only for ordinary double points")]
    NotOdp,
    #[error("operation not applicable: {0}")]
    NotApplicable(&'static str),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("contradiction: {0}")]
    Contradiction(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipFamily {
    family: Family,
    r: i64,
    a: i64,
}

impl FlipFamily {
    pub fn new(family: Family, r: i64, a: i64) -> Result<Self, MmpError> {
        if r < 2 || a <= 0 || a >= r || a.gcd(&r) != 1 {
            return Err(MmpError::InvalidFamily);
        }
        Ok(FlipFamily { family, r, a })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn v4(&self) -> LatticeVector {
        match self.family {
            Family::A => LatticeVector::new(self.a, self.r - self.a, -self.r),
            Family::B => LatticeVector::new(self.a, 1, -self.r),
        }
    }

    /// All valid families with `r ≤ r_max`, ordered by family, `r`, `a`.
    pub fn all_up_to(r_max: i64) -> Vec<FlipFamily> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B] {
            for r in 2..=r_max {
                for a in 1..r {
                    if let Ok(f) = FlipFamily::new(family, r, a) {
                        out.push(f);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for FlipFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.family.name(), self.r, self.a)
    }
}

fn base_rays() -> Vec<LatticeVector> {
    (0..3).map(LatticeVector::unit).collect()
}

pub fn standard_flip_fan(fam: FlipFamily) -> Fan {
    let mut rays = base_rays();
    rays.push(fam.v4());
    validate_fan(rays, vec![vec![0, 1, 2], vec![0, 1, 3]]).expect("flip family fans are valid")
}

/// Replaces the two cones at a small wall by the triangulation through the
/// other diagonal of their union.
pub fn wall_crossing(f: &Fan, w: &Wall) -> Result<Fan, MmpError> {
    let rel = wall_relation(f, w)?;
    if !wall_type(&rel).is_small() {
        return Err(FanError::NotSmall.into());
    }
    let [p, q, s, t] = rel.rays;
    let mut cones: Vec<Vec<usize>> = f.cones().to_vec();
    cones[w.cones[0]] = sorted(vec![s, t, p]);
    cones[w.cones[1]] = sorted(vec![s, t, q]);
    Ok(validate_fan(f.rays().to_vec(), cones)?)
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

pub fn flip(f: &Fan, w: &Wall) -> Result<Fan, MmpError> {
    match wall_type(&wall_relation(f, w)?) {
        WallType::Flipping => wall_crossing(f, w),
        _ => Err(MmpError::NotFlipping),
    }
}

pub fn flop(f: &Fan, w: &Wall) -> Result<Fan, MmpError> {
    match wall_type(&wall_relation(f, w)?) {
        WallType::Flopping => wall_crossing(f, w),
        _ => Err(MmpError::NotFlopping),
    }
}

/// The two small resolutions of an ordinary double point, one per diagonal
/// of its four rays. The first contains the diagonal through `c.rays()[0]`.
pub fn flop_odp(c: &Cone) -> Result<(Fan, Fan), MmpError> {
    if !matches!(classify(c), Ok(SingularityClass::OrdinaryDoublePoint { .. })) {
        return Err(MmpError::NotOdp);
    }
    let rays = c.rays().to_vec();
    let facets: Vec<Vec<LatticeVector>> = c.facets();
    let is_facet = |i: usize, j: usize| {
        facets.iter().any(|fc| fc.len() == 2 && fc.contains(&rays[i]) && fc.contains(&rays[j]))
    };
    let mut diagonals: Vec<[usize; 2]> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            if !is_facet(i, j) {
                diagonals.push([i, j]);
            }
        }
    }
    if diagonals.len() != 2 {
        return Err(MmpError::Contradiction(alloc::format!("ordinary double point with {} diagonals", diagonals.len())));
    }
    let resolve = |d: [usize; 2]| -> Result<Fan, MmpError> {
        let cones = (0..4).filter(|k| !d.contains(k)).map(|k| sorted(vec![d[0], d[1], k])).collect();
        Ok(validate_fan(rays.clone(), cones)?)
    };
    Ok((resolve(diagonals[0])?, resolve(diagonals[1])?))
}

/// Finds `U ∈ GL₃(Z)` and a family with `U·f = standard_flip_fan(family)`
/// on the two cones at `w`.
///
/// `Err(NotApplicable)` when the wall is not flipping or an endpoint is not
/// terminal; `Ok(None)` when the preconditions hold and no family matches.
/// When several presentations match, family A with the smallest `a` wins,
/// then family B with the smallest `a`.
pub fn recognize_flip(f: &Fan, w: &Wall) -> Result<Option<(FlipFamily, IntegerMatrix)>, MmpError> {
    let rel = match wall_relation(f, w) {
        Ok(rel) => rel,
        Err(FanError::NonSimplicialSide) => return Err(MmpError::NotApplicable("a side of the wall is not simplicial")),
        Err(e) => return Err(e.into()),
    };
    if wall_type(&rel) != WallType::Flipping {
        return Err(MmpError::NotApplicable("wall is not flipping"));
    }
    for &ci in &w.cones {
        if !classify(&f.cone(ci))?.is_terminal() {
            return Err(MmpError::NotApplicable("endpoint is not terminal"));
        }
    }
    let [p, q, s, t] = rel.rays;
    let v = |i: usize| f.rays()[i];
    let mut best: Option<(FlipFamily, IntegerMatrix)> = None;
    for (w1, w2) in [(p, q), (q, p)] {
        for (smooth, other) in [(s, t), (t, s)] {
            let m = IntegerMatrix::from_columns(&[v(w1), v(w2), v(smooth)]);
            let Some(u) = m.inverse_unimodular() else { continue };
            let Some(fam) = match_family(&u.apply(&v(other))) else { continue };
            if best.as_ref().is_none_or(|(b, _)| fam < *b) {
                best = Some((fam, u));
            }
        }
    }
    Ok(best)
}

fn match_family(v4: &LatticeVector) -> Option<FlipFamily> {
    let [a, y, z] = v4.coords();
    let r = -z;
    if y == r - a {
        if let Ok(f) = FlipFamily::new(Family::A, r, a) {
            return Some(f);
        }
    }
    if y == 1 {
        return FlipFamily::new(Family::B, r, a).ok();
    }
    None
}

// ---------------------------------------------------------------------------
// Fans with an ordinary double point on the flipping curve

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem4Side {
    /// The 4-ray cone is `⟨v₁, v₂, v₃, v₅⟩`, `v₅ = (−1, 1, 1)`.
    Delta1,
    /// The 4-ray cone is `⟨v₁, v₂, v₃, v₆⟩`, `v₆ = (1, −1, 1)`.
    Delta2,
}

impl Theorem4Side {
    pub fn name(&self) -> &'static str {
        match self {
            Theorem4Side::Delta1 => "d1",
            Theorem4Side::Delta2 => "d2",
        }
    }

    pub fn extra_ray(&self) -> LatticeVector {
        match self {
            Theorem4Side::Delta1 => LatticeVector::new(-1, 1, 1),
            Theorem4Side::Delta2 => LatticeVector::new(1, -1, 1),
        }
    }
}

/// Rays `v₁, v₂, v₃, v₄, v₅|v₆` (indices 0..5); cones `⟨v₁,v₂,v₃,v₅|v₆⟩` and
/// `⟨v₁,v₂,v₄⟩`. The first cone is checked to be an ordinary double point.
pub fn theorem4_fan(fam: FlipFamily, side: Theorem4Side) -> Result<Fan, MmpError> {
    let mut rays = base_rays();
    rays.push(fam.v4());
    rays.push(side.extra_ray());
    let f = validate_fan(rays, vec![vec![0, 1, 2, 4], vec![0, 1, 3]])?;
    match classify(&f.cone(0))? {
        SingularityClass::OrdinaryDoublePoint { .. } => Ok(f),
        other => Err(MmpError::Contradiction(alloc::format!("4-ray cone classified {other}"))),
    }
}

/// The ray of the wall `⟨v₁, v₂⟩` of [`theorem4_fan`] that is a positive
/// combination of the others, with its coefficients as `(ray index, c)`.
pub fn expected_removal_witness(fam: FlipFamily, side: Theorem4Side) -> (usize, Vec<(usize, Rational)>) {
    let (r, a) = (fam.r as i128, fam.a as i128);
    let q = Rational::new;
    match (side, fam.family) {
        (Theorem4Side::Delta1, Family::A) => {
            (1, vec![(4, q(r, 2 * r - a)), (0, q(r - a, 2 * r - a)), (3, q(1, 2 * r - a))])
        }
        (Theorem4Side::Delta1, Family::B) => (1, vec![(4, q(r, r + 1)), (0, q(r - a, r + 1)), (3, q(1, r + 1))]),
        (Theorem4Side::Delta2, Family::A) => (0, vec![(4, q(r, r + a)), (1, q(a, r + a)), (3, q(1, r + a))]),
        (Theorem4Side::Delta2, Family::B) => (0, vec![(4, q(r, r + a)), (1, q(r - 1, r + a)), (3, q(1, r + a))]),
    }
}

/// Whether the removability witness at wall `⟨v₁, v₂⟩` of the fan equals
/// [`expected_removal_witness`], up to the order of the terms.
pub fn removal_witness_matches(fam: FlipFamily, side: Theorem4Side, witness: &RemovabilityWitness) -> bool {
    let RemovabilityWitness::NonExtremalRay { ray, combination } = witness else {
        return false;
    };
    let (want_ray, mut want) = expected_removal_witness(fam, side);
    let mut got = combination.clone();
    want.sort();
    got.sort();
    *ray == want_ray && got == want
}

// ---------------------------------------------------------------------------
// Flip diagrams

/// `X → Y ← X⁺` for one flip family.
#[derive(Clone, Debug)]
pub struct FlipDiagram {
    pub family: FlipFamily,
    pub x: Fan,
    pub y: Cone,
    pub x_plus: Fan,
    pub wall: Wall,
    pub relation: WallRelation,
    pub plus_relation: WallRelation,
    /// Classification of the two maximal cones of `X`, in fan order.
    pub endpoints: [SingularityClass; 2],
}

pub fn flip_diagram(fam: FlipFamily) -> Result<FlipDiagram, MmpError> {
    let x = standard_flip_fan(fam);
    let wall = x.find_wall(0, 1).ok_or(FanError::NotAWall(0, 1))?;
    let relation = wall_relation(&x, &wall)?;
    let y_fan = contraction_target(&x, &wall)?;
    let x_plus = flip(&x, &wall)?;
    let plus_wall = x_plus.walls().first().copied().ok_or(MmpError::NotApplicable("flipped fan has no wall"))?;
    let plus_relation = wall_relation(&x_plus, &plus_wall)?;
    Ok(FlipDiagram {
        family: fam,
        endpoints: [classify(&x.cone(0))?, classify(&x.cone(1))?],
        y: y_fan.cone(0),
        x,
        x_plus,
        wall,
        relation,
        plus_relation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipDiagramReport {
    pub family: FlipFamily,
    /// `(check name, passed)` for the five checks, in order.
    pub checks: Vec<(&'static str, bool)>,
    pub endpoints: Vec<SingularityKind>,
    pub plus_cones: Vec<SingularityKind>,
}

impl FlipDiagramReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect()
    }
}

pub const DIAGRAM_CHECKS: [&str; 5] = [
    "X is a valid fan with a flipping wall",
    "endpoints are one smooth point and one terminal quotient of index r",
    "Y is a single strictly convex cone",
    "X+ is valid, terminal, with K positive on its wall",
    "X+ and Y have the same support",
];

/// Builds the diagram for `fam` step by step and records each check.
/// Only an invalid family is an error; everything else lands in the report.
pub fn verify_flip_diagram(fam: FlipFamily) -> FlipDiagramReport {
    let mut checks = Vec::new();
    let mut endpoints = Vec::new();
    let mut plus_cones = Vec::new();
    let x = standard_flip_fan(fam);
    let wall = x.find_wall(0, 1);
    let relation = wall.and_then(|w| wall_relation(&x, &w).ok());
    checks.push((DIAGRAM_CHECKS[0], relation.is_some_and(|rel| wall_type(&rel) == WallType::Flipping)));

    for ci in 0..x.cones().len() {
        if let Ok(c) = classify(&x.cone(ci)) {
            endpoints.push(c.kind());
        }
    }
    let mut sorted_ends = endpoints.clone();
    sorted_ends.sort();
    let expected_pair = matches!(
        sorted_ends.as_slice(),
        [SingularityKind::Smooth, SingularityKind::TerminalQuotient { r, .. }] if *r == fam.r && *r >= 2
    );
    checks.push((DIAGRAM_CHECKS[1], expected_pair));

    let y = wall.and_then(|w| contraction_target(&x, &w).ok());
    let y_cone = y.as_ref().filter(|y| y.cones().len() == 1).map(|y| y.cone(0));
    checks.push((DIAGRAM_CHECKS[2], y_cone.as_ref().is_some_and(|c| c.rays().len() == 4 && c.dim() == 3)));

    let x_plus = wall.and_then(|w| flip(&x, &w).ok());
    let plus_ok = x_plus.as_ref().is_some_and(|xp| {
        for ci in 0..xp.cones().len() {
            match classify(&xp.cone(ci)) {
                Ok(c) => plus_cones.push(c.kind()),
                Err(_) => return false,
            }
        }
        let plus_walls = xp.walls();
        plus_cones.iter().all(|k| k.is_terminal())
            && plus_walls.len() == 1
            && wall_relation(xp, &plus_walls[0]).is_ok_and(|rel| rel.k_sign() == Ordering::Greater)
    });
    checks.push((DIAGRAM_CHECKS[3], plus_ok));

    let same_support = match (&x_plus, &y_cone) {
        (Some(xp), Some(yc)) => xp.has_convex_support() && xp.hull().is_ok_and(|h| h == *yc),
        _ => false,
    };
    checks.push((DIAGRAM_CHECKS[4], same_support));

    FlipDiagramReport { family: fam, checks, endpoints, plus_cones }
}

/// Non-removability of the wall `⟨v₁, v₂⟩` of a [`theorem4_fan`], with the
/// witness compared against [`expected_removal_witness`].
pub fn check_theorem4(fam: FlipFamily, side: Theorem4Side) -> Result<bool, MmpError> {
    let f = theorem4_fan(fam, side)?;
    let w = f.find_wall(0, 1).ok_or(FanError::NotAWall(0, 1))?;
    let rem = is_wall_removable(&f, &w);
    Ok(!rem.removable && rem.witness.as_ref().is_some_and(|wit| removal_witness_matches(fam, side, wit)))
}
