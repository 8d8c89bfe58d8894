//! Strictly convex rational polyhedral cones and the singularities of the
//! affine toric threefolds they define.
//!
//! Terminality is decided operationally: with `m` the functional taking the
//! value 1 on every ray (when it exists), the cone is terminal iff the only
//! nonzero lattice points `x` in it with `m(x) ≤ 1` are the rays themselves.
//! For simplicial cones this is cross-checked against the fractional-part
//! (Reid–Tai) criterion on the cyclic quotient data; for non-simplicial cones
//! a terminal verdict must come with an explicit lattice isomorphism to the
//! cone over the unit square, i.e. an ordinary double point.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::One;

use crate::lattice::{
    first_basis, hull_lattice_points, primitivize, smith_form, unimodular_match, IntegerMatrix, LatticeVector,
    Rational, RationalFunctional,
};
use crate::polyhedral::{self, ConeHRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("cone needs at least one generator")]
    NoGenerators,
    #[error("zero generator")]
    ZeroGenerator,
    #[error("not strictly convex")]
    NotStrictlyConvex,
    #[error("operation requires a three-dimensional cone, got dimension {0}")]
    NotFullDimensional(usize),
    #[error("quotient type undefined for non-simplicial cone")]
    NonSimplicial,
    #[error("quotient group is not cyclic (invariant factors {0:?})")]
    NonCyclic([i64; 3]),
    #[error("transform is not unimodular")]
    NotUnimodular,
    #[error("classification contradiction: {0}")]
    ClassificationContradiction(String),
}

/// A strictly convex cone, stored by its primitive extremal rays in
/// lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    rays: Vec<LatticeVector>,
    dim: usize,
}

impl Cone {
    /// Primitivizes the generators, drops duplicates and non-extremal ones,
    /// and sorts the remaining rays.
    pub fn new(generators: &[LatticeVector]) -> Result<Cone, ConeError> {
        if generators.is_empty() {
            return Err(ConeError::NoGenerators);
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let (p, _) = primitivize(g).map_err(|_| ConeError::ZeroGenerator)?;
            if !gens.contains(&p) {
                gens.push(p);
            }
        }
        gens.sort();
        let hrep = ConeHRep::from_generators(&gens);
        if !hrep.is_pointed(&gens) {
            return Err(ConeError::NotStrictlyConvex);
        }
        let mut rays = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let others: Vec<LatticeVector> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| *v).collect();
            if others.is_empty() || !ConeHRep::from_generators(&others).contains(g) {
                rays.push(*g);
            }
        }
        let dim = polyhedral::rank(&rays);
        Ok(Cone { rays, dim })
    }

    /// The cone over the unit lattice square: `⟨e₁, e₂, e₃, (1,1,−1)⟩`.
    pub fn standard_odp() -> Cone {
        Cone::new(&STANDARD_ODP_RAYS).expect("standard ordinary double point cone")
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.hrep().contains(x)
    }

    pub(crate) fn hrep(&self) -> ConeHRep {
        ConeHRep::from_generators(&self.rays)
    }

    /// Facets as sets of rays.
    pub fn facets(&self) -> Vec<Vec<LatticeVector>> {
        self.hrep()
            .facets(&self.rays)
            .into_iter()
            .map(|(_, on)| on.into_iter().map(|i| self.rays[i]).collect())
            .collect()
    }

    /// Image under a unimodular change of coordinates.
    pub fn transform(&self, u: &IntegerMatrix) -> Result<Cone, ConeError> {
        if !u.is_unimodular() || u.rows() != 3 {
            return Err(ConeError::NotUnimodular);
        }
        let image: Vec<LatticeVector> = self.rays.iter().map(|v| u.apply(v)).collect();
        Cone::new(&image)
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "⟩")
    }
}

pub const STANDARD_ODP_RAYS: [LatticeVector; 4] = [
    LatticeVector::new(1, 0, 0),
    LatticeVector::new(0, 1, 0),
    LatticeVector::new(0, 0, 1),
    LatticeVector::new(1, 1, -1),
];

pub fn make_cone(generators: &[LatticeVector]) -> Result<Cone, ConeError> {
    Cone::new(generators)
}

fn require_dim3(c: &Cone) -> Result<(), ConeError> {
    if c.dim != 3 {
        return Err(ConeError::NotFullDimensional(c.dim));
    }
    Ok(())
}

/// The functional equal to 1 on every ray, if one exists.
pub fn q_gorenstein_functional(c: &Cone) -> Result<Option<RationalFunctional>, ConeError> {
    require_dim3(c)?;
    let m = basis_functional(c);
    Ok(c.rays.iter().all(|r| m.eval(r) == Rational::one()).then_some(m))
}

fn basis_functional(c: &Cone) -> RationalFunctional {
    let (i, j, k) = first_basis(&c.rays).expect("three-dimensional cone has a basis among its rays");
    RationalFunctional::through([&c.rays[i], &c.rays[j], &c.rays[k]]).expect("independent rays")
}

pub fn is_gorenstein(c: &Cone) -> Result<bool, ConeError> {
    Ok(q_gorenstein_functional(c)?.is_some_and(|m| m.is_integral()))
}

// ---------------------------------------------------------------------------
// Cyclic quotients

/// Cyclic quotient data `1/r(w₁, w₂, w₃)`: a generator of `μ_r` acts on the
/// three coordinates with weights `wᵢ mod r`. `r = 1` is the smooth case.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QuotientType {
    r: i64,
    weights: [i64; 3],
}

impl QuotientType {
    /// Weights are reduced into `[0, r)`. Panics unless `r ≥ 1`.
    pub fn new(r: i64, weights: [i64; 3]) -> Self {
        assert!(r >= 1, "quotient order must be positive");
        QuotientType { r, weights: weights.map(|w| w.rem_euclid(r)) }
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn weights(&self) -> [i64; 3] {
        self.weights
    }

    /// No nontrivial element fixes a hyperplane pointwise: `gcd(wᵢ, wⱼ, r) = 1`
    /// for every pair.
    pub fn is_small(&self) -> bool {
        let [a, b, c] = self.weights;
        [(a, b), (a, c), (b, c)].iter().all(|&(x, y)| x.gcd(&y).gcd(&self.r) == 1)
    }

    /// `k`-th power of the generator, weights reduced mod `r`.
    pub fn power(&self, k: i64) -> [i64; 3] {
        self.weights.map(|w| (k * w).rem_euclid(self.r))
    }
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        write!(f, "1/{}({},{},{})", self.r, a, b, c)
    }
}

/// Cyclic quotient data of a simplicial cone, read off the Smith form of its
/// ray matrix: with `U·A·V = diag(1, 1, r)` the class of `U⁻¹e₃` generates
/// `N / ⟨rays⟩` and has ray-basis coordinates `V e₃ / r`.
pub fn quotient_type(c: &Cone) -> Result<QuotientType, ConeError> {
    require_dim3(c)?;
    if !c.is_simplicial() {
        return Err(ConeError::NonSimplicial);
    }
    let a = IntegerMatrix::from_columns(&c.rays);
    let (d, _u, v) = smith_form(&a);
    if d[1] != 1 {
        return Err(ConeError::NonCyclic([d[0], d[1], d[2]]));
    }
    let r = d[2];
    Ok(QuotientType::new(r, [v.get(0, 2), v.get(1, 2), v.get(2, 2)]))
}

/// Fractional-part criterion: every nontrivial power `k` of the generator has
/// `Σ {k·wᵢ / r} > 1`.
pub fn reid_tai_is_terminal(t: &QuotientType) -> bool {
    (1..t.r).all(|k| {
        let p = t.power(k);
        p == [0, 0, 0] || p.iter().sum::<i64>() > t.r
    })
}

/// Smallest `a` such that, after permuting coordinates and changing the
/// generator of `μ_r`, the type reads `1/r(a, r−a, 1)` with `gcd(a, r) = 1`.
/// Returns `(r, a)`; `r = 1` gives `(1, 1)`.
pub fn white_normal_form(t: &QuotientType) -> Option<(i64, i64)> {
    let r = t.r;
    if r == 1 {
        return Some((1, 1));
    }
    const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut best: Option<i64> = None;
    for u in (1..r).filter(|u| u.gcd(&r) == 1) {
        let w = t.power(u);
        for p in PERMUTATIONS {
            let (x, y, z) = (w[p[0]], w[p[1]], w[p[2]]);
            if z == 1 && x > 0 && (x + y) == r && x.gcd(&r) == 1 {
                best = Some(best.map_or(x, |b| b.min(x)));
            }
        }
    }
    best.map(|a| (r, a))
}

// ---------------------------------------------------------------------------
// Discrepancy trichotomy

/// Terminal / canonical verdict of a three-dimensional cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    Terminal { functional: RationalFunctional },
    /// A non-ray lattice point `witness` with `m(witness) = 1`.
    CanonicalNotTerminal { functional: RationalFunctional, witness: LatticeVector },
    /// A lattice point `witness` in the cone with `0 < m(witness) < 1`.
    NotCanonical { functional: RationalFunctional, witness: LatticeVector },
    /// The functional through the first basis among the rays misses 1 at `ray`.
    NotQGorenstein { ray: LatticeVector, value: Rational },
}

pub fn discrepancy_class(c: &Cone) -> Result<Discrepancy, ConeError> {
    require_dim3(c)?;
    let m = basis_functional(c);
    if let Some(ray) = c.rays.iter().find(|r| m.eval(r) != Rational::one()) {
        return Ok(Discrepancy::NotQGorenstein { ray: *ray, value: m.eval(ray) });
    }
    // cone ∩ {m ≤ 1} = conv(0, rays)
    let mut vertices = Vec::with_capacity(c.rays.len() + 1);
    vertices.push(LatticeVector::ZERO);
    vertices.extend_from_slice(&c.rays);
    let points = hull_lattice_points(&vertices);
    let one = Rational::one();
    if let Some(x) = points.iter().find(|x| !x.is_zero() && m.eval(x) < one) {
        return Ok(Discrepancy::NotCanonical { functional: m, witness: *x });
    }
    if let Some(x) = points.iter().find(|x| !x.is_zero() && !c.rays.contains(x)) {
        return Ok(Discrepancy::CanonicalNotTerminal { functional: m, witness: *x });
    }
    Ok(Discrepancy::Terminal { functional: m })
}

// ---------------------------------------------------------------------------
// Classification

/// Singularity of the affine toric threefold of a three-dimensional cone.
/// Every variant but `Smooth` carries data that [`SingularityClass::verify`]
/// re-checks against the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityClass {
    Smooth,
    /// Type `1/r(a, −a, 1)`, `0 < a < r`, `gcd(a, r) = 1`, `r ≥ 2`.
    TerminalQuotient { r: i64, a: i64, quotient: QuotientType, functional: RationalFunctional },
    /// `to_standard` maps the rays onto those of the standard square cone.
    OrdinaryDoublePoint { to_standard: IntegerMatrix, functional: RationalFunctional },
    CanonicalNotTerminal { functional: RationalFunctional, witness: LatticeVector },
    NotCanonical { functional: RationalFunctional, witness: LatticeVector },
    NotQGorenstein { ray: LatticeVector, value: Rational },
}

/// [`SingularityClass`] without witness data, for comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityKind {
    Smooth,
    TerminalQuotient { r: i64, a: i64 },
    OrdinaryDoublePoint,
    CanonicalNotTerminal,
    NotCanonical,
    NotQGorenstein,
}

impl SingularityKind {
    pub fn name(&self) -> &'static str {
        match self {
            SingularityKind::Smooth => "Smooth",
            SingularityKind::TerminalQuotient { .. } => "TerminalQuotient",
            SingularityKind::OrdinaryDoublePoint => "OrdinaryDoublePoint",
            SingularityKind::CanonicalNotTerminal => "CanonicalNotTerminal",
            SingularityKind::NotCanonical => "NotCanonical",
            SingularityKind::NotQGorenstein => "NotQGorenstein",
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(
            self,
            SingularityKind::Smooth | SingularityKind::TerminalQuotient { .. } | SingularityKind::OrdinaryDoublePoint
        )
    }
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityKind::TerminalQuotient { r, a } => write!(f, "TerminalQuotient(r={r}, a={a})"),
            other => f.write_str(other.name()),
        }
    }
}

impl SingularityClass {
    pub fn kind(&self) -> SingularityKind {
        match self {
            SingularityClass::Smooth => SingularityKind::Smooth,
            SingularityClass::TerminalQuotient { r, a, .. } => SingularityKind::TerminalQuotient { r: *r, a: *a },
            SingularityClass::OrdinaryDoublePoint { .. } => SingularityKind::OrdinaryDoublePoint,
            SingularityClass::CanonicalNotTerminal { .. } => SingularityKind::CanonicalNotTerminal,
            SingularityClass::NotCanonical { .. } => SingularityKind::NotCanonical,
            SingularityClass::NotQGorenstein { .. } => SingularityKind::NotQGorenstein,
        }
    }

    pub fn is_terminal(&self) -> bool {
        self.kind().is_terminal()
    }

    /// Re-checks the attached witness against `c`.
    pub fn verify(&self, c: &Cone) -> bool {
        let hits_one = |m: &RationalFunctional| c.rays.iter().all(|r| m.eval(r) == Rational::one());
        match self {
            SingularityClass::Smooth => {
                c.is_simplicial() && c.dim == 3 && IntegerMatrix::from_columns(&c.rays).is_unimodular()
            }
            SingularityClass::TerminalQuotient { r, a, quotient, functional } => {
                hits_one(functional)
                    && quotient_type(c).is_ok_and(|q| q == *quotient)
                    && white_normal_form(quotient) == Some((*r, *a))
                    && reid_tai_is_terminal(quotient)
            }
            SingularityClass::OrdinaryDoublePoint { to_standard, functional } => {
                let mut image: Vec<LatticeVector> = c.rays.iter().map(|v| to_standard.apply(v)).collect();
                image.sort();
                let mut std = STANDARD_ODP_RAYS.to_vec();
                std.sort();
                hits_one(functional) && to_standard.is_unimodular() && image == std
            }
            SingularityClass::CanonicalNotTerminal { functional, witness } => {
                hits_one(functional) && c.contains(witness) && functional.eval(witness) == Rational::one() && !c.rays.contains(witness)
            }
            SingularityClass::NotCanonical { functional, witness } => {
                let v = functional.eval(witness);
                hits_one(functional) && c.contains(witness) && !witness.is_zero() && v < Rational::one()
            }
            SingularityClass::NotQGorenstein { ray, value } => {
                c.rays.contains(ray) && basis_functional(c).eval(ray) == *value && *value != Rational::one()
            }
        }
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.kind(), f)
    }
}

fn contradiction(c: &Cone, what: &str) -> ConeError {
    ConeError::ClassificationContradiction(format!("{what} for cone {c:?}"))
}

/// Full classification. A simplicial terminal cone without a `1/r(a,−a,1)`
/// form, or a non-simplicial terminal cone that is not an ordinary double
/// point, is reported as [`ConeError::ClassificationContradiction`].
pub fn classify(c: &Cone) -> Result<SingularityClass, ConeError> {
    require_dim3(c)?;
    let quotient = if c.is_simplicial() {
        match quotient_type(c) {
            Ok(q) if q.r == 1 => return Ok(SingularityClass::Smooth),
            Ok(q) => Some(q),
            Err(ConeError::NonCyclic(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let verdict = discrepancy_class(c)?;
    if let (Some(q), false) = (&quotient, matches!(verdict, Discrepancy::Terminal { .. })) {
        if reid_tai_is_terminal(q) {
            return Err(contradiction(c, "fractional-part criterion says terminal, lattice points say not"));
        }
    }
    Ok(match verdict {
        Discrepancy::Terminal { functional } if c.is_simplicial() => {
            let q = quotient.ok_or_else(|| contradiction(c, "terminal simplicial cone with non-cyclic quotient"))?;
            if !reid_tai_is_terminal(&q) {
                return Err(contradiction(c, "lattice points say terminal, fractional-part criterion says not"));
            }
            let (r, a) = white_normal_form(&q).ok_or_else(|| contradiction(c, "terminal quotient without White form"))?;
            SingularityClass::TerminalQuotient { r, a, quotient: q, functional }
        }
        Discrepancy::Terminal { functional } => {
            if c.rays.len() != 4 {
                return Err(contradiction(c, "non-simplicial terminal cone without exactly four rays"));
            }
            let to_standard = unimodular_match(&c.rays, &STANDARD_ODP_RAYS)
                .ok_or_else(|| contradiction(c, "non-simplicial terminal cone is not an ordinary double point"))?;
            SingularityClass::OrdinaryDoublePoint { to_standard, functional }
        }
        Discrepancy::CanonicalNotTerminal { functional, witness } => {
            SingularityClass::CanonicalNotTerminal { functional, witness }
        }
        Discrepancy::NotCanonical { functional, witness } => SingularityClass::NotCanonical { functional, witness },
        Discrepancy::NotQGorenstein { ray, value } => SingularityClass::NotQGorenstein { ray, value },
    })
}
