//! Exact integer linear algebra on the rank-3 lattice `N = Z^3`.
//!
//! Everything here is integral or rational; there is no floating point in
//! the crate. Matrices are small (at most 4 columns in practice), so the
//! algorithms favour clarity over asymptotics.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::polyhedral;

/// Exact rational number used for functionals and barycentric data.
pub type Rational = num_rational::Ratio<i128>;

/// A point with rational coordinates in `N ⊗ Q`.
pub type RationalPoint = [Rational; 3];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("degenerate configuration")]
    DegenerateConfiguration,
    #[error("not on hyperplane: {0}")]
    NotOnHyperplane(LatticeVector),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A point of `N = Z^3`. Ordering is lexicographic on coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector(pub [i64; 3]);

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector([0, 0, 0]);

    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticeVector([x, y, z])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(i: usize) -> Self {
        let mut c = [0; 3];
        c[i] = 1;
        LatticeVector(c)
    }

    pub fn coords(&self) -> [i64; 3] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    pub fn dot(&self, other: &LatticeVector) -> i64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, other: &LatticeVector) -> LatticeVector {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        LatticeVector([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    /// gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn to_rational(&self) -> RationalPoint {
        self.0.map(|c| Rational::from_integer(c as i128))
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.map(|c| -c))
    }
}

impl Mul<LatticeVector> for i64 {
    type Output = LatticeVector;
    fn mul(self, rhs: LatticeVector) -> LatticeVector {
        LatticeVector(rhs.0.map(|c| self * c))
    }
}

impl From<[i64; 3]> for LatticeVector {
    fn from(c: [i64; 3]) -> Self {
        LatticeVector(c)
    }
}

/// `det[a b c]` with the vectors as columns.
pub fn det3(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> i64 {
    a.dot(&b.cross(c))
}

/// Splits `v` into its primitive direction and the positive multiplier.
pub fn primitivize(v: &LatticeVector) -> Result<(LatticeVector, i64), LatticeError> {
    let g = v.content();
    if g == 0 {
        return Err(LatticeError::ZeroVector);
    }
    Ok((LatticeVector(v.0.map(|c| c / g)), g))
}

// ---------------------------------------------------------------------------
// Matrices

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        IntegerMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[[i64; 3]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        IntegerMatrix::new(rows.len(), 3, data)
    }

    /// 3×k matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[LatticeVector]) -> Self {
        let mut m = Self::zeros(3, columns.len());
        for (j, v) in columns.iter().enumerate() {
            for i in 0..3 {
                m.set(i, j, v.0[i]);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Column `j` of a 3-row matrix as a lattice vector.
    pub fn column_vector(&self, j: usize) -> LatticeVector {
        assert_eq!(self.rows, 3);
        LatticeVector([self.get(0, j), self.get(1, j), self.get(2, j)])
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "incompatible matrix product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s = (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, s);
            }
        }
        out
    }

    /// `self · v` for a 3×3 matrix.
    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert!(self.rows == 3 && self.cols == 3);
        let mut out = [0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|k| self.get(i, k) * v.0[k]).sum();
        }
        LatticeVector(out)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k * n + k] == 0 {
                match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        i64::try_from(sign * a[n * n - 1]).expect("determinant overflows i64")
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs() == 1
    }

    /// Adjugate of a 3×3 matrix: `A · adj(A) = det(A) · I`.
    pub fn adjugate3(&self) -> IntegerMatrix {
        assert!(self.rows == 3 && self.cols == 3);
        let mut adj = Self::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                let (r0, r1) = others(j);
                let (c0, c1) = others(i);
                let minor = self.get(r0, c0) * self.get(r1, c1) - self.get(r0, c1) * self.get(r1, c0);
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj.set(i, j, sign * minor);
            }
        }
        adj
    }

    /// Inverse of a unimodular 3×3 matrix.
    pub fn inverse_unimodular(&self) -> Option<IntegerMatrix> {
        if self.rows != 3 || self.cols != 3 {
            return None;
        }
        let d = self.determinant();
        if d.abs() != 1 {
            return None;
        }
        let mut inv = self.adjugate3();
        for x in inv.data.iter_mut() {
            *x *= d;
        }
        Some(inv)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `col[dst] += k · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    /// `row[dst] += k · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Normal forms

/// Hermite and Smith normal forms of an integer matrix `M`, with transforms.
///
/// * `hermite = M · hermite_transform` is in column-style Hermite normal
///   form: lower echelon, positive pivots, entries left of a pivot reduced
///   into `[0, pivot)`, zero columns last.
/// * `smith_left · M · smith_right` is diagonal with entries `smith`,
///   each dividing the next; rank deficiency shows up as trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForms {
    pub hermite: IntegerMatrix,
    pub hermite_transform: IntegerMatrix,
    pub smith: Vec<i64>,
    pub smith_left: IntegerMatrix,
    pub smith_right: IntegerMatrix,
    pub rank: usize,
}

pub fn normal_forms(m: &IntegerMatrix) -> NormalForms {
    let (hermite, hermite_transform) = hermite_form(m);
    let (smith, smith_left, smith_right) = smith_form(m);
    let rank = smith.iter().filter(|&&d| d != 0).count();
    NormalForms { hermite, hermite_transform, smith, smith_left, smith_right, rank }
}

/// Column-style Hermite normal form `H = M·V` with `V` unimodular.
pub fn hermite_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = m.clone();
    let mut v = IntegerMatrix::identity(m.cols);
    let mut pivot_col = 0;
    for row in 0..h.rows {
        if pivot_col == h.cols {
            break;
        }
        loop {
            // smallest nonzero |entry| in this row among the free columns
            let best = (pivot_col..h.cols)
                .filter(|&j| h.get(row, j) != 0)
                .min_by_key(|&j| (h.get(row, j).abs(), j));
            let Some(best) = best else { break };
            h.swap_cols(pivot_col, best);
            v.swap_cols(pivot_col, best);
            let p = h.get(row, pivot_col);
            let mut done = true;
            for j in pivot_col + 1..h.cols {
                let q = Integer::div_floor(&h.get(row, j), &p);
                h.add_col(j, pivot_col, -q);
                v.add_col(j, pivot_col, -q);
                if h.get(row, j) != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(row, pivot_col) == 0 {
            continue;
        }
        if h.get(row, pivot_col) < 0 {
            h.negate_col(pivot_col);
            v.negate_col(pivot_col);
        }
        let p = h.get(row, pivot_col);
        for j in 0..pivot_col {
            let q = Integer::div_floor(&h.get(row, j), &p);
            h.add_col(j, pivot_col, -q);
            v.add_col(j, pivot_col, -q);
        }
        pivot_col += 1;
    }
    (h, v)
}

/// Smith normal form: returns `(diagonal, U, V)` with `U·M·V = diag`.
pub fn smith_form(m: &IntegerMatrix) -> (Vec<i64>, IntegerMatrix, IntegerMatrix) {
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut v = IntegerMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        'pivot: loop {
            let best = (t..a.rows)
                .flat_map(|i| (t..a.cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a.get(i, j) != 0)
                .min_by_key(|&(i, j)| (a.get(i, j).abs(), i, j));
            let Some((bi, bj)) = best else { break 'pivot };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let p = a.get(t, t);
            let mut clean = true;
            for i in t + 1..a.rows {
                let q = Integer::div_floor(&a.get(i, t), &p);
                a.add_row(i, t, -q);
                u.add_row(i, t, -q);
                clean &= a.get(i, t) == 0;
            }
            for j in t + 1..a.cols {
                let q = Integer::div_floor(&a.get(t, j), &p);
                a.add_col(j, t, -q);
                v.add_col(j, t, -q);
                clean &= a.get(t, j) == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let offender = (t + 1..a.rows)
                .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                .find(|&(i, j)| a.get(i, j) % p != 0);
            match offender {
                Some((i, _)) => {
                    a.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break 'pivot,
            }
        }
        if a.get(t, t) < 0 {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let diag = (0..n).map(|i| a.get(i, i)).collect();
    (diag, u, v)
}

/// Integer basis of `{x ∈ Z^k : row · x = 0}` for a single row.
pub(crate) fn row_kernel_basis(row: &[i64]) -> Vec<Vec<i64>> {
    let m = IntegerMatrix::new(1, row.len(), row.to_vec());
    let (h, v) = hermite_form(&m);
    let first_zero = usize::from(h.get(0, 0) != 0);
    (first_zero..row.len()).map(|j| v.column(j)).collect()
}

// ---------------------------------------------------------------------------
// Kernels

/// The primitive integer relation `Σ αᵢ vᵢ = 0` among four vectors spanning
/// `Q^3`, normalized so that `α₃ > 0` (falling back to `α₄`, then to the
/// first nonzero entry, when `α₃ = 0`).
pub fn integer_kernel(vectors: &[LatticeVector; 4]) -> Result<[i64; 4], LatticeError> {
    let [v1, v2, v3, v4] = vectors;
    // signed maximal minors of the 3×4 matrix
    let mut alpha = [det3(v2, v3, v4), -det3(v1, v3, v4), det3(v1, v2, v4), -det3(v1, v2, v3)];
    let g = alpha.iter().fold(0i64, |g, &a| g.gcd(&a));
    if g == 0 {
        return Err(LatticeError::DegenerateConfiguration);
    }
    let pivot = [2, 3, 0, 1].into_iter().find(|&i| alpha[i] != 0).unwrap_or(0);
    let s = if alpha[pivot] < 0 { -g } else { g };
    for a in alpha.iter_mut() {
        *a /= s;
    }
    Ok(alpha)
}

// ---------------------------------------------------------------------------
// Functionals

/// A linear functional on `N ⊗ Q` with rational coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunctional(pub [Rational; 3]);

impl RationalFunctional {
    pub fn from_integers(c: [i64; 3]) -> Self {
        RationalFunctional(c.map(|x| Rational::from_integer(x as i128)))
    }

    pub fn coefficients(&self) -> [Rational; 3] {
        self.0
    }

    pub fn eval(&self, v: &LatticeVector) -> Rational {
        (0..3).fold(Rational::zero(), |acc, i| acc + self.0[i] * Rational::from_integer(v.0[i] as i128))
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Integer form `(n, h)` with `self(x) = (n · x) / h`, `h > 0`, `n` not
    /// necessarily primitive.
    pub fn integer_form(&self) -> (LatticeVector, i64) {
        let l = self.0.iter().fold(1i128, |l, c| l.lcm(c.denom()));
        let n = self.0.map(|c| i64::try_from((c * Rational::from_integer(l)).to_integer()).expect("functional overflow"));
        (LatticeVector(n), i64::try_from(l).expect("functional overflow"))
    }

    /// The functional through three linearly independent points taking the
    /// value 1 on each, if they are independent.
    pub fn through(points: [&LatticeVector; 3]) -> Option<Self> {
        let [a, b, c] = points;
        let det = det3(a, b, c);
        if det == 0 {
            return None;
        }
        // m = (1,1,1) · A^{-1} = (1,1,1) · adj(A) / det
        let adj = IntegerMatrix::from_columns(&[*a, *b, *c]).adjugate3();
        let coeffs = core::array::from_fn(|j| {
            let s: i64 = (0..3).map(|i| adj.get(i, j)).sum();
            Rational::new(s as i128, det as i128)
        });
        Some(RationalFunctional(coeffs))
    }
}

impl fmt::Display for RationalFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

// ---------------------------------------------------------------------------
// Lattice points

/// All lattice points in the closed convex hull of the given rational
/// points, by scanning the integer bounding box with exact half-space tests.
/// The result is sorted lexicographically.
pub fn simplex_lattice_points(vertices: &[RationalPoint]) -> Vec<LatticeVector> {
    if vertices.is_empty() {
        return Vec::new();
    }
    // scale to integer points: x ∈ hull(P) ⇔ D·x ∈ hull(D·P)
    let denom = vertices
        .iter()
        .flat_map(|p| p.iter())
        .fold(1i128, |l, c| l.lcm(c.denom()));
    let scaled: Vec<LatticeVector> = vertices
        .iter()
        .map(|p| {
            LatticeVector(p.map(|c| i64::try_from((c * Rational::from_integer(denom)).to_integer()).expect("coordinate overflow")))
        })
        .collect();
    let hull = polyhedral::PolytopeHRep::from_points(&scaled);
    let denom = denom as i64;
    let mut lo = [i64::MAX; 3];
    let mut hi = [i64::MIN; 3];
    for p in vertices {
        for i in 0..3 {
            lo[i] = lo[i].min(i64::try_from(p[i].floor().to_integer()).expect("coordinate overflow"));
            hi[i] = hi[i].max(i64::try_from(p[i].ceil().to_integer()).expect("coordinate overflow"));
        }
    }
    let mut out = Vec::new();
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                let v = LatticeVector([x, y, z]);
                if hull.contains(&(denom * v)) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Lattice points in the convex hull of integer points.
pub fn hull_lattice_points(points: &[LatticeVector]) -> Vec<LatticeVector> {
    let rational: Vec<RationalPoint> = points.iter().map(LatticeVector::to_rational).collect();
    simplex_lattice_points(&rational)
}

// ---------------------------------------------------------------------------
// Unimodular equivalence

/// Finds a unimodular `U` with `U·A = B` as sets, trying every assignment of
/// a basis of `A` to ordered triples of `B`.
pub fn unimodular_match(rays_a: &[LatticeVector], rays_b: &[LatticeVector]) -> Option<IntegerMatrix> {
    if rays_a.len() != rays_b.len() {
        return None;
    }
    let n = rays_a.len();
    let (i, j, k) = first_basis(rays_a)?;
    let a_sel = IntegerMatrix::from_columns(&[rays_a[i], rays_a[j], rays_a[k]]);
    let det_a = a_sel.determinant();
    let adj_a = a_sel.adjugate3();
    let mut target: Vec<LatticeVector> = rays_b.to_vec();
    target.sort();
    for p in 0..n {
        for q in 0..n {
            for s in 0..n {
                if p == q || q == s || p == s {
                    continue;
                }
                let b_sel = IntegerMatrix::from_columns(&[rays_b[p], rays_b[q], rays_b[s]]);
                if b_sel.determinant().abs() != det_a.abs() {
                    continue;
                }
                // U = B · adj(A) / det(A)
                let num = b_sel.mul(&adj_a);
                if num.data.iter().any(|&x| x % det_a != 0) {
                    continue;
                }
                let u = IntegerMatrix::new(3, 3, num.data.iter().map(|&x| x / det_a).collect());
                if !u.is_unimodular() {
                    continue;
                }
                let mut image: Vec<LatticeVector> = rays_a.iter().map(|v| u.apply(v)).collect();
                image.sort();
                if image == target {
                    return Some(u);
                }
            }
        }
    }
    None
}

pub(crate) fn first_basis(vs: &[LatticeVector]) -> Option<(usize, usize, usize)> {
    let n = vs.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if det3(&vs[i], &vs[j], &vs[k]) != 0 {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Hyperplane charts

/// Coordinates of points of the affine hyperplane `{m = 1}` in a basis of its
/// rank-2 lattice `{m = 1} ∩ N`.
///
/// With `n·x = h` the integer form of the hyperplane and `V` the Hermite
/// transform of the row `n` (so `n·V = (1, 0, 0)`), a point `x` has chart
/// coordinates `(V⁻¹x)₂, (V⁻¹x)₃`; the chart origin is `V·(h, 0, 0)`.
pub fn hyperplane_chart(m: &RationalFunctional, points: &[LatticeVector]) -> Result<Vec<[i64; 2]>, LatticeError> {
    if let Some(p) = points.iter().find(|p| m.eval(p) != Rational::one()) {
        return Err(LatticeError::NotOnHyperplane(*p));
    }
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let (n, _) = m.integer_form();
    let (n, _) = primitivize(&n).map_err(|_| LatticeError::DegenerateConfiguration)?;
    let row = IntegerMatrix::new(1, 3, n.0.to_vec());
    let (h, v) = hermite_form(&row);
    debug_assert_eq!(h.get(0, 0), 1);
    let v_inv = v.inverse_unimodular().expect("Hermite transform is unimodular");
    Ok(points
        .iter()
        .map(|p| {
            let y = v_inv.apply(p);
            [y.0[1], y.0[2]]
        })
        .collect())
}

/// Rank of the span of the given vectors.
pub fn rank(vs: &[LatticeVector]) -> usize {
    polyhedral::rank(vs)
}
