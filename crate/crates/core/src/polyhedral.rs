//! Half-space descriptions of small cones and polytopes in `Q^3`.
//!
//! Every facet of a cone (or polytope) in three dimensions is orthogonal to
//! two vectors drawn from its generators (edge directions) and the normals of
//! its span, so facet normals are found among cross products of such pairs.

use alloc::vec::Vec;

use crate::lattice::{det3, primitivize, row_kernel_basis, LatticeVector};

pub(crate) fn rank(vs: &[LatticeVector]) -> usize {
    let nonzero: Vec<&LatticeVector> = vs.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return 0;
    }
    let mut has_pair = false;
    for (i, a) in nonzero.iter().enumerate() {
        for (j, b) in nonzero.iter().enumerate().skip(i + 1) {
            if a.cross(b).is_zero() {
                continue;
            }
            has_pair = true;
            if nonzero.iter().skip(j + 1).any(|c| det3(a, b, c) != 0) {
                return 3;
            }
        }
    }
    if has_pair {
        2
    } else {
        1
    }
}

/// Primitive integer basis of the orthogonal complement of `span(vs)`.
pub(crate) fn complement_normals(vs: &[LatticeVector]) -> Vec<LatticeVector> {
    match rank(vs) {
        3 => Vec::new(),
        2 => {
            for (i, a) in vs.iter().enumerate() {
                for b in &vs[i + 1..] {
                    let c = a.cross(b);
                    if !c.is_zero() {
                        return alloc::vec![primitivize(&c).expect("nonzero").0];
                    }
                }
            }
            unreachable!("rank 2 without an independent pair")
        }
        1 => {
            let v = vs.iter().find(|v| !v.is_zero()).expect("rank 1");
            row_kernel_basis(&v.0)
                .into_iter()
                .map(|k| primitivize(&LatticeVector([k[0], k[1], k[2]])).expect("kernel vector").0)
                .collect()
        }
        _ => (0..3).map(LatticeVector::unit).collect(),
    }
}

fn push_unique(list: &mut Vec<LatticeVector>, v: LatticeVector) {
    if !list.contains(&v) {
        list.push(v);
    }
}

/// `{x : e·x = 0 for e in equalities, u·x ≥ 0 for u in inequalities}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ConeHRep {
    pub equalities: Vec<LatticeVector>,
    pub inequalities: Vec<LatticeVector>,
}

impl ConeHRep {
    /// Supporting half-spaces of `cone(gens)`: every facet normal is among
    /// them, together possibly with normals of lower-dimensional faces.
    pub fn from_generators(gens: &[LatticeVector]) -> Self {
        let equalities = complement_normals(gens);
        let mut pool: Vec<LatticeVector> = gens.iter().copied().filter(|g| !g.is_zero()).collect();
        pool.extend(equalities.iter().copied());
        let mut inequalities = Vec::new();
        for (i, a) in pool.iter().enumerate() {
            for b in &pool[i + 1..] {
                let c = a.cross(b);
                if c.is_zero() {
                    continue;
                }
                let c = primitivize(&c).expect("nonzero").0;
                for s in [c, -c] {
                    let mut positive = false;
                    let supporting = gens.iter().all(|g| {
                        let d = s.dot(g);
                        positive |= d > 0;
                        d >= 0
                    });
                    if supporting && positive {
                        push_unique(&mut inequalities, s);
                    }
                }
            }
        }
        ConeHRep { equalities, inequalities }
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.equalities.iter().all(|e| e.dot(x) == 0) && self.inequalities.iter().all(|u| u.dot(x) >= 0)
    }

    /// A functional strictly positive on the cone minus the origin exists iff
    /// the cone is pointed; the sum of all supporting normals is one when it
    /// does.
    pub fn is_pointed(&self, gens: &[LatticeVector]) -> bool {
        let s = self.inequalities.iter().fold(LatticeVector::ZERO, |acc, &u| acc + u);
        gens.iter().all(|g| s.dot(g) > 0)
    }

    /// Facets of `cone(gens)` as `(inward normal, indices of generators on it)`,
    /// one entry per facet.
    pub fn facets(&self, gens: &[LatticeVector]) -> Vec<(LatticeVector, Vec<usize>)> {
        let dim = 3 - self.equalities.len();
        let mut out: Vec<(LatticeVector, Vec<usize>)> = Vec::new();
        for u in &self.inequalities {
            let on: Vec<usize> = (0..gens.len()).filter(|&i| u.dot(&gens[i]) == 0).collect();
            let vs: Vec<LatticeVector> = on.iter().map(|&i| gens[i]).collect();
            if rank(&vs) + 1 == dim && !out.iter().any(|(_, o)| *o == on) {
                out.push((*u, on));
            }
        }
        out
    }

    /// Candidate extreme directions of the intersection of two cones; every
    /// extreme ray of `self ∩ other` is among the returned vectors, and every
    /// returned vector lies in the intersection.
    pub fn intersection_directions(&self, other: &ConeHRep) -> Vec<LatticeVector> {
        let mut pool: Vec<LatticeVector> = Vec::new();
        for e in self.equalities.iter().chain(other.equalities.iter()) {
            push_unique(&mut pool, *e);
        }
        for u in self.inequalities.iter().chain(other.inequalities.iter()) {
            push_unique(&mut pool, *u);
        }
        let mut out = Vec::new();
        for (i, a) in pool.iter().enumerate() {
            for b in &pool[i + 1..] {
                let c = a.cross(b);
                if c.is_zero() {
                    continue;
                }
                let c = primitivize(&c).expect("nonzero").0;
                for s in [c, -c] {
                    if self.contains(&s) && other.contains(&s) {
                        push_unique(&mut out, s);
                    }
                }
            }
        }
        out
    }
}

/// `{y : n·y = c for (n, c) in equalities, u·y ≤ d for (u, d) in inequalities}`,
/// the convex hull of finitely many integer points.
#[derive(Clone, Debug)]
pub(crate) struct PolytopeHRep {
    equalities: Vec<(LatticeVector, i64)>,
    inequalities: Vec<(LatticeVector, i64)>,
}

impl PolytopeHRep {
    pub fn from_points(points: &[LatticeVector]) -> Self {
        let p0 = points[0];
        let mut diffs: Vec<LatticeVector> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                let d = *q - *p;
                if !d.is_zero() {
                    push_unique(&mut diffs, d);
                }
            }
        }
        let normals = complement_normals(&diffs);
        let dim = 3 - normals.len();
        let equalities: Vec<(LatticeVector, i64)> = normals.iter().map(|n| (*n, n.dot(&p0))).collect();
        let mut inequalities: Vec<(LatticeVector, i64)> = Vec::new();
        if dim > 0 {
            let mut pool = diffs.clone();
            pool.extend(normals.iter().copied());
            for (i, a) in pool.iter().enumerate() {
                for b in &pool[i + 1..] {
                    let c = a.cross(b);
                    if c.is_zero() {
                        continue;
                    }
                    let c = primitivize(&c).expect("nonzero").0;
                    for u in [c, -c] {
                        if inequalities.iter().any(|(w, _)| *w == u) {
                            continue;
                        }
                        let max = points.iter().map(|p| u.dot(p)).max().expect("nonempty");
                        // keep only facet-defining normals
                        let base = *points.iter().find(|p| u.dot(p) == max).expect("attained");
                        let face_dirs: Vec<LatticeVector> =
                            points.iter().filter(|p| u.dot(p) == max).map(|p| *p - base).collect();
                        if rank(&face_dirs) + 1 == dim && points.iter().any(|p| u.dot(p) < max) {
                            inequalities.push((u, max));
                        }
                    }
                }
            }
        }
        PolytopeHRep { equalities, inequalities }
    }

    pub fn contains(&self, y: &LatticeVector) -> bool {
        self.equalities.iter().all(|(n, c)| n.dot(y) == *c) && self.inequalities.iter().all(|(u, d)| u.dot(y) <= *d)
    }
}
