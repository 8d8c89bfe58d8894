//! Fans, walls between maximal cones, and the integer relations across them.
//!
//! For a wall `⟨v₁, v₂⟩` separating `⟨v₁, v₂, v₃⟩` from `⟨v₁, v₂, v₄⟩` the
//! four rays satisfy a unique primitive relation
//! `α₁v₁ + α₂v₂ + α₃v₃ + α₄v₄ = 0` with `α₃, α₄ > 0`. The wall is small
//! (the merged cone is strictly convex with all four rays extremal) iff
//! `α₁, α₂ < 0`, and the sign of `K·V(w)` is the sign of `−Σαᵢ`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;

use crate::cone::{Cone, ConeError};
use crate::lattice::{det3, integer_kernel, IntegerMatrix, LatticeVector, Rational};
use crate::polyhedral::{self, ConeHRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("fan has no cones")]
    Empty,
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("duplicate ray: rays {0} and {1} coincide")]
    DuplicateRay(usize, usize),
    #[error("ray {0} is not used by any cone")]
    UnusedRay(usize),
    #[error("cone {0} is empty")]
    EmptyCone(usize),
    #[error("cone {cone}: ray index {index} out of range")]
    RayIndexOutOfRange { cone: usize, index: usize },
    #[error("cone {cone}: ray index {index} listed twice")]
    RepeatedIndex { cone: usize, index: usize },
    #[error("cone {cone}: {source}")]
    InvalidCone { cone: usize, source: ConeError },
    #[error("cone {cone}: ray {ray} is not extremal")]
    NonExtremalRay { cone: usize, ray: usize },
    #[error("cones {0} and {1} are identical")]
    DuplicateCone(usize, usize),
    #[error("cone {0} is a face of cone {1}")]
    NotMaximal(usize, usize),
    #[error("overlapping cones {0} and {1}: intersection is not a common face")]
    OverlappingCones(usize, usize),
    #[error("rays {0},{1} do not span a wall")]
    NotAWall(usize, usize),
    #[error("relation undefined; resolve or handle as 4-ray cone")]
    NonSimplicialSide,
    #[error("merge would not be a small contraction")]
    NotSmall,
    #[error("transform is not unimodular")]
    NotUnimodular,
}

/// A fan given by its rays and maximal cones (sorted ray-index sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: Vec<LatticeVector>,
    cones: Vec<Vec<usize>>,
    convex_support: bool,
}

impl Fan {
    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> Cone {
        Cone::new(&self.cone_rays(i)).expect("validated cone")
    }

    pub fn cone_rays(&self, i: usize) -> Vec<LatticeVector> {
        self.cones[i].iter().map(|&j| self.rays[j]).collect()
    }

    /// Whether the union of the cones is itself a convex cone.
    pub fn has_convex_support(&self) -> bool {
        self.convex_support
    }

    /// The cone generated by all rays.
    pub fn hull(&self) -> Result<Cone, ConeError> {
        Cone::new(&self.rays)
    }

    /// Same maximal cones, compared as sets of ray vectors.
    pub fn same_cones(&self, other: &Fan) -> bool {
        let key = |f: &Fan| {
            let mut cs: Vec<Vec<LatticeVector>> = (0..f.cones.len())
                .map(|i| {
                    let mut c = f.cone_rays(i);
                    c.sort();
                    c
                })
                .collect();
            cs.sort();
            cs
        };
        key(self) == key(other)
    }

    pub fn transform(&self, u: &IntegerMatrix) -> Result<Fan, FanError> {
        if u.rows() != 3 || !u.is_unimodular() {
            return Err(FanError::NotUnimodular);
        }
        validate_fan(self.rays.iter().map(|v| u.apply(v)).collect(), self.cones.clone())
    }

    pub fn walls(&self) -> Vec<Wall> {
        walls(self)
    }

    /// The wall spanned by rays `a` and `b`, if there is one.
    pub fn find_wall(&self, a: usize, b: usize) -> Option<Wall> {
        let face = if a < b { [a, b] } else { [b, a] };
        walls(self).into_iter().find(|w| w.face == face)
    }
}

pub fn validate_fan(rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
    if cones.is_empty() {
        return Err(FanError::Empty);
    }
    for (i, r) in rays.iter().enumerate() {
        if !r.is_primitive() {
            return Err(FanError::NonPrimitiveRay(i));
        }
        if let Some(j) = rays[..i].iter().position(|s| s == r) {
            return Err(FanError::DuplicateRay(j, i));
        }
    }
    let mut sorted = Vec::with_capacity(cones.len());
    let mut hreps = Vec::with_capacity(cones.len());
    for (ci, cone) in cones.into_iter().enumerate() {
        if cone.is_empty() {
            return Err(FanError::EmptyCone(ci));
        }
        let mut idx = cone;
        idx.sort_unstable();
        for w in idx.windows(2) {
            if w[0] == w[1] {
                return Err(FanError::RepeatedIndex { cone: ci, index: w[0] });
            }
        }
        if let Some(&bad) = idx.iter().find(|&&j| j >= rays.len()) {
            return Err(FanError::RayIndexOutOfRange { cone: ci, index: bad });
        }
        let gens: Vec<LatticeVector> = idx.iter().map(|&j| rays[j]).collect();
        let c = Cone::new(&gens).map_err(|source| FanError::InvalidCone { cone: ci, source })?;
        if let Some(&j) = idx.iter().find(|&&j| !c.rays().contains(&rays[j])) {
            return Err(FanError::NonExtremalRay { cone: ci, ray: j });
        }
        hreps.push(ConeHRep::from_generators(&gens));
        sorted.push(idx);
    }
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            check_pair(&rays, &sorted, &hreps, i, j)?;
        }
    }
    if let Some(unused) = (0..rays.len()).find(|r| !sorted.iter().any(|c| c.contains(r))) {
        return Err(FanError::UnusedRay(unused));
    }
    let convex_support = support_is_convex(&rays, &sorted, &hreps);
    Ok(Fan { rays, cones: sorted, convex_support })
}

fn check_pair(
    rays: &[LatticeVector],
    cones: &[Vec<usize>],
    hreps: &[ConeHRep],
    i: usize,
    j: usize,
) -> Result<(), FanError> {
    let (a, b) = (&cones[i], &cones[j]);
    if a == b {
        return Err(FanError::DuplicateCone(i, j));
    }
    let shared: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
    let is_common_face = is_face(rays, a, &hreps[i], &shared) && is_face(rays, b, &hreps[j], &shared);
    let shared_rays: Vec<LatticeVector> = shared.iter().map(|&k| rays[k]).collect();
    let inside_shared = if shared.is_empty() {
        hreps[i].intersection_directions(&hreps[j]).is_empty()
    } else {
        let face = ConeHRep::from_generators(&shared_rays);
        hreps[i].intersection_directions(&hreps[j]).iter().all(|d| face.contains(d))
    };
    if !(is_common_face && inside_shared) {
        return Err(FanError::OverlappingCones(i, j));
    }
    if shared.len() == a.len() {
        return Err(FanError::NotMaximal(i, j));
    }
    if shared.len() == b.len() {
        return Err(FanError::NotMaximal(j, i));
    }
    Ok(())
}

/// Whether the rays `subset` of the cone `cone` span a face of it: the
/// smallest face containing them has no other rays.
fn is_face(rays: &[LatticeVector], cone: &[usize], hrep: &ConeHRep, subset: &[usize]) -> bool {
    let supporting: Vec<&LatticeVector> = hrep
        .inequalities
        .iter()
        .filter(|u| subset.iter().all(|&s| u.dot(&rays[s]) == 0))
        .collect();
    cone.iter()
        .filter(|&&g| supporting.iter().all(|u| u.dot(&rays[g]) == 0))
        .all(|g| subset.contains(g))
}

/// The union of `d`-dimensional cones spanning a `d`-dimensional space is
/// convex iff every facet of every cone is either shared with another cone
/// or lies on the boundary of the hull.
fn support_is_convex(rays: &[LatticeVector], cones: &[Vec<usize>], hreps: &[ConeHRep]) -> bool {
    let dim = polyhedral::rank(rays);
    let hull = ConeHRep::from_generators(rays);
    let hull_facets: Vec<LatticeVector> = hull.facets(rays).into_iter().map(|(u, _)| u).collect();
    for (ci, cone) in cones.iter().enumerate() {
        let gens: Vec<LatticeVector> = cone.iter().map(|&j| rays[j]).collect();
        if polyhedral::rank(&gens) != dim {
            return false;
        }
        for (_, on) in hreps[ci].facets(&gens) {
            let facet: Vec<usize> = on.iter().map(|&k| cone[k]).collect();
            let shared = cones.iter().enumerate().any(|(cj, other)| cj != ci && facet.iter().all(|x| other.contains(x)));
            let on_boundary = hull_facets.iter().any(|u| facet.iter().all(|&x| u.dot(&rays[x]) == 0));
            if !shared && !on_boundary {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Walls

/// A two-dimensional face shared by two three-dimensional maximal cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    /// Ray indices of the shared face, ascending.
    pub face: [usize; 2],
    /// Indices of the two adjacent maximal cones, ascending.
    pub cones: [usize; 2],
    /// The ray of each adjacent cone off the wall, when that cone is simplicial.
    pub opposite: [Option<usize>; 2],
}

pub fn walls(f: &Fan) -> Vec<Wall> {
    let three_dim: Vec<bool> = (0..f.cones.len())
        .map(|i| polyhedral::rank(&f.cone_rays(i)) == 3)
        .collect();
    let mut out = Vec::new();
    for i in 0..f.cones.len() {
        for j in i + 1..f.cones.len() {
            if !(three_dim[i] && three_dim[j]) {
                continue;
            }
            let shared: Vec<usize> = f.cones[i].iter().copied().filter(|x| f.cones[j].contains(x)).collect();
            if shared.len() != 2 {
                continue;
            }
            let opposite = |c: &Vec<usize>| {
                if c.len() == 3 {
                    c.iter().copied().find(|x| !shared.contains(x))
                } else {
                    None
                }
            };
            out.push(Wall {
                face: [shared[0], shared[1]],
                cones: [i, j],
                opposite: [opposite(&f.cones[i]), opposite(&f.cones[j])],
            });
        }
    }
    out.sort();
    out
}

/// Primitive relation across a wall, indexed as
/// `(wall ray 1, wall ray 2, opposite ray of side A, opposite ray of side B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WallRelation {
    pub alpha: [i64; 4],
    pub rays: [usize; 4],
}

impl WallRelation {
    pub fn sum(&self) -> i64 {
        self.alpha.iter().sum()
    }

    /// Sign of `K·V(w)`, defined as the sign of `−Σαᵢ`.
    pub fn k_sign(&self) -> Ordering {
        0.cmp(&self.sum())
    }

    /// The same relation with the two sides exchanged.
    pub fn swap_sides(&self) -> WallRelation {
        let [a1, a2, a3, a4] = self.alpha;
        let [r1, r2, r3, r4] = self.rays;
        WallRelation { alpha: [a1, a2, a4, a3], rays: [r1, r2, r4, r3] }
    }

    pub fn is_satisfied_by(&self, rays: &[LatticeVector]) -> bool {
        let s = (0..4).fold(LatticeVector::ZERO, |acc, i| acc + self.alpha[i] * rays[self.rays[i]]);
        s.is_zero()
    }
}

pub fn wall_relation(f: &Fan, w: &Wall) -> Result<WallRelation, FanError> {
    let (Some(a), Some(b)) = (w.opposite[0], w.opposite[1]) else {
        return Err(FanError::NonSimplicialSide);
    };
    let idx = [w.face[0], w.face[1], a, b];
    let alpha = integer_kernel(&idx.map(|i| f.rays[i])).map_err(|_| FanError::NotAWall(w.face[0], w.face[1]))?;
    debug_assert!(alpha[2] > 0 && alpha[3] > 0, "opposite rays on the same side of a wall");
    Ok(WallRelation { alpha, rays: idx })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WallType {
    /// `α₁, α₂ < 0`, `Σα > 0`: `K·C < 0`.
    Flipping,
    /// `α₁, α₂ < 0`, `Σα = 0`.
    Flopping,
    /// `α₁, α₂ < 0`, `Σα < 0`: `K·C > 0`.
    SmallKPositive,
    /// Some of `α₁, α₂` is nonnegative: merging the sides is not small.
    NotSmall,
}

impl WallType {
    pub fn name(&self) -> &'static str {
        match self {
            WallType::Flipping => "Flipping",
            WallType::Flopping => "Flopping",
            WallType::SmallKPositive => "SmallKPositive",
            WallType::NotSmall => "NotSmall",
        }
    }

    pub fn is_small(&self) -> bool {
        !matches!(self, WallType::NotSmall)
    }
}

pub fn wall_type(rel: &WallRelation) -> WallType {
    let [a1, a2, ..] = rel.alpha;
    if a1 >= 0 || a2 >= 0 {
        return WallType::NotSmall;
    }
    match rel.sum().cmp(&0) {
        Ordering::Greater => WallType::Flipping,
        Ordering::Equal => WallType::Flopping,
        Ordering::Less => WallType::SmallKPositive,
    }
}

/// Deletes the wall, merging its two cones into the 4-ray cone.
pub fn contraction_target(f: &Fan, w: &Wall) -> Result<Fan, FanError> {
    let rel = wall_relation(f, w)?;
    if !wall_type(&rel).is_small() {
        return Err(FanError::NotSmall);
    }
    let merged = union_of(&f.cones[w.cones[0]], &f.cones[w.cones[1]]);
    let cones = f
        .cones
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            if i == w.cones[0] {
                Some(merged.clone())
            } else if i == w.cones[1] {
                None
            } else {
                Some(c.clone())
            }
        })
        .collect();
    validate_fan(f.rays.clone(), cones)
}

fn union_of(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

// ---------------------------------------------------------------------------
// Removability

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RemovabilityWitness {
    /// The rays of the two cones generate a cone containing a line.
    NotStrictlyConvex,
    /// `ray = Σ coefficient · other ray`, coefficients nonnegative.
    NonExtremalRay { ray: usize, combination: Vec<(usize, Rational)> },
    /// A facet of one side, other than the wall, inside the hull of both.
    ExposedFace { cone: usize, rays: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Removability {
    pub removable: bool,
    pub witness: Option<RemovabilityWitness>,
}

/// Whether the union of the two cones at `w` is a single convex cone whose
/// extremal rays are exactly the rays of the two cones.
pub fn is_wall_removable(f: &Fan, w: &Wall) -> Removability {
    let not = |witness| Removability { removable: false, witness: Some(witness) };
    let union = union_of(&f.cones[w.cones[0]], &f.cones[w.cones[1]]);
    let gens: Vec<LatticeVector> = union.iter().map(|&i| f.rays[i]).collect();
    let hull = ConeHRep::from_generators(&gens);
    if !hull.is_pointed(&gens) {
        return not(RemovabilityWitness::NotStrictlyConvex);
    }
    // wall rays first: they are the ones a merge would bury
    let mut order: Vec<usize> = w.face.to_vec();
    order.extend(union.iter().copied().filter(|x| !w.face.contains(x)));
    for &g in &order {
        let others: Vec<usize> = union.iter().copied().filter(|&x| x != g).collect();
        let other_rays: Vec<LatticeVector> = others.iter().map(|&i| f.rays[i]).collect();
        if !ConeHRep::from_generators(&other_rays).contains(&f.rays[g]) {
            continue;
        }
        let partner = w.face.iter().copied().find(|&x| x != g && w.face.contains(&g));
        if let Some(combination) = positive_combination(&f.rays, g, &others, partner) {
            return not(RemovabilityWitness::NonExtremalRay { ray: g, combination });
        }
    }
    let hull_facets: Vec<LatticeVector> = hull.facets(&gens).into_iter().map(|(u, _)| u).collect();
    for &ci in &w.cones {
        let cone = &f.cones[ci];
        let cone_gens = f.cone_rays(ci);
        for (_, on) in ConeHRep::from_generators(&cone_gens).facets(&cone_gens) {
            let facet: Vec<usize> = on.iter().map(|&k| cone[k]).collect();
            if facet == w.face {
                continue;
            }
            if !hull_facets.iter().any(|u| facet.iter().all(|&x| u.dot(&f.rays[x]) == 0)) {
                return not(RemovabilityWitness::ExposedFace { cone: ci, rays: facet });
            }
        }
    }
    Removability { removable: true, witness: None }
}

/// Expresses `rays[target]` as a nonnegative combination of linearly
/// independent rays among `others`, preferring triples that contain
/// `partner`, then other triples, then pairs.
fn positive_combination(
    rays: &[LatticeVector],
    target: usize,
    others: &[usize],
    partner: Option<usize>,
) -> Option<Vec<(usize, Rational)>> {
    let x = rays[target];
    let n = others.len();
    let mut triples: Vec<[usize; 3]> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                triples.push([others[i], others[j], others[k]]);
            }
        }
    }
    triples.sort_by_key(|t| !partner.is_some_and(|p| t.contains(&p)));
    for t in triples {
        let [a, b, c] = t.map(|i| rays[i]);
        let d = det3(&a, &b, &c);
        if d == 0 {
            continue;
        }
        // Cramer's rule
        let coeffs = [det3(&x, &b, &c), det3(&a, &x, &c), det3(&a, &b, &x)]
            .map(|num| Rational::new(num as i128, d as i128));
        if coeffs.iter().all(|c| *c >= Rational::zero()) {
            return Some(t.iter().copied().zip(coeffs).collect());
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (rays[others[i]], rays[others[j]]);
            let ab = a.cross(&b);
            if ab.is_zero() || det3(&a, &b, &x) != 0 {
                continue;
            }
            let norm = ab.dot(&ab) as i128;
            let ca = Rational::new(x.cross(&b).dot(&ab) as i128, norm);
            let cb = Rational::new(a.cross(&x).dot(&ab) as i128, norm);
            if ca >= Rational::zero() && cb >= Rational::zero() {
                return Some(alloc::vec![(others[i], ca), (others[j], cb)]);
            }
        }
    }
    None
}
