//! Homogeneous polynomial vector fields on ℙⁿ, their brackets and pointwise
//! evaluation modulo the Euler field, seeded sampling of rational points on
//! ℙⁿ and on smooth quadrics, and the tangent-algebra and adjoint-kernel
//! computations built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::liecore::{sl, LieAlgebra, LieError, Subalgebra};
use crate::poly::{parse_poly, Monomial, MultiPoly, PolyError};
use crate::qlinalg::{dot, rat, QMatrix, Rational, RowReducer, SpanCoordinates};

/// Coordinates of random points lie in `[-COORD_BOUND, COORD_BOUND]`.
pub const COORD_BOUND: i64 = 10_000;
/// Default number of sample points for orbit and maximality checks.
pub const DEFAULT_SAMPLES: usize = 25;
/// The last this-many points must not shrink the tangent algebra.
pub const STABILIZATION_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("ambient mismatch: ℙ^{left} vs ℙ^{right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("field has {got} components, expected {expected}")]
    ComponentCount { expected: usize, got: usize },
    #[error("components are not homogeneous of one common degree")]
    NotHomogeneous,
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    SizeMismatch { rows: usize, cols: usize, expected: usize },
    #[error("hyperplane x{coordinate} = 0 is not invariant under field {field}: component restricts to {residual}")]
    NotInvariant {
        field: usize,
        coordinate: usize,
        residual: MultiPoly,
    },
    #[error("point has all coordinates zero")]
    ZeroPoint,
    #[error("point is nilpotent (p^n = 0)")]
    NilpotentPoint,
    #[error("matrix is not traceless")]
    NotTraceless,
    #[error("fields are linearly dependent")]
    DependentFields,
    #[error("bracket of fields {i} and {j} leaves their span")]
    NotClosed { i: usize, j: usize },
    #[error("field {index} is not in the span of the ambient algebra")]
    NotInSpan { index: usize },
    #[error("field depends on the parameter t; specialize it first")]
    Parametric,
    #[error("no rational isotropic base point found for the quadric")]
    NoIsotropicPoint,
    #[error("quadric form must be symmetric and invertible")]
    BadQuadric,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A vector field `sum_i F_i ∂/∂x_i` on `ℂ^{n+1}` with homogeneous
/// components of one common degree (the zero component is compatible with
/// every degree).
#[derive(Clone, PartialEq)]
pub struct PolyVectorField {
    n: usize,
    components: Vec<MultiPoly>,
}

impl PolyVectorField {
    /// Components must share a ring with `n + 1` variables.
    pub fn new(components: Vec<MultiPoly>) -> Result<Self, GeomError> {
        let Some(first) = components.first() else {
            return Err(GeomError::InvalidArgument(
                "a field needs at least one component".into(),
            ));
        };
        let nvars = first.nvars();
        let has_param = first.has_param();
        if nvars != components.len() {
            return Err(GeomError::ComponentCount {
                expected: nvars,
                got: components.len(),
            });
        }
        if let Some(c) = components
            .iter()
            .find(|c| c.nvars() != nvars || c.has_param() != has_param)
        {
            return Err(GeomError::Poly(PolyError::VariableMismatch {
                left: first.ring_label(),
                right: c.ring_label(),
            }));
        }
        let mut degree = None;
        for c in components.iter().filter(|c| !c.is_zero()) {
            let d = c.homogeneous_degree().ok_or(GeomError::NotHomogeneous)?;
            if *degree.get_or_insert(d) != d {
                return Err(GeomError::NotHomogeneous);
            }
        }
        Ok(PolyVectorField {
            n: nvars - 1,
            components,
        })
    }

    /// Parses one expression per coordinate.
    pub fn parse(n: usize, has_param: bool, components: &[&str]) -> Result<Self, GeomError> {
        if components.len() != n + 1 {
            return Err(GeomError::ComponentCount {
                expected: n + 1,
                got: components.len(),
            });
        }
        let comps = components
            .iter()
            .map(|s| parse_poly(s, n + 1, has_param))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(comps)
    }

    pub fn zero(n: usize, has_param: bool) -> Self {
        PolyVectorField {
            n,
            components: vec![MultiPoly::zero(n + 1, has_param); n + 1],
        }
    }

    /// `E = sum_i x_i ∂_i`.
    pub fn euler(n: usize) -> Self {
        PolyVectorField {
            n,
            components: (0..=n).map(|i| MultiPoly::var(i, n + 1, false)).collect(),
        }
    }

    /// `(X_A)_i = sum_j A_ij x_j`.
    pub fn linear(a: &QMatrix) -> Result<Self, GeomError> {
        let m = a.rows();
        if m == 0 || a.cols() != m {
            return Err(GeomError::SizeMismatch {
                rows: a.rows(),
                cols: a.cols(),
                expected: m.max(1),
            });
        }
        let components = (0..m)
            .map(|i| {
                (0..m).fold(MultiPoly::zero(m, false), |acc, j| {
                    &acc + &MultiPoly::var(j, m, false).scale(&a[(i, j)])
                })
            })
            .collect();
        Ok(PolyVectorField { n: m - 1, components })
    }

    /// Ambient projective dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn has_param(&self) -> bool {
        self.components[0].has_param()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    /// Common degree of the components; `None` for the zero field.
    pub fn degree(&self) -> Option<u32> {
        self.components
            .iter()
            .find(|c| !c.is_zero())
            .and_then(MultiPoly::homogeneous_degree)
    }

    fn check_ambient(&self, other: &Self) -> Result<(), GeomError> {
        if self.n != other.n {
            return Err(GeomError::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.has_param() != other.has_param() {
            return Err(GeomError::Poly(PolyError::VariableMismatch {
                left: self.components[0].ring_label(),
                right: other.components[0].ring_label(),
            }));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Result<Self, GeomError> {
        self.check_ambient(other)?;
        Self::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self, GeomError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GeomError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyVectorField {
            n: self.n,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every component by a polynomial of the same ring.
    pub fn scale_poly(&self, c: &MultiPoly) -> Result<Self, GeomError> {
        Self::new(
            self.components
                .iter()
                .map(|p| p.checked_mul(c))
                .collect::<Result<Vec<_>, _>>()?,
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn specialize_param(&self, t0: &Rational) -> Self {
        PolyVectorField {
            n: self.n,
            components: self.components.iter().map(|c| c.specialize_param(t0)).collect(),
        }
    }

    pub fn with_param(&self) -> Self {
        PolyVectorField {
            n: self.n,
            components: self.components.iter().map(MultiPoly::with_param).collect(),
        }
    }

    /// `X(f) = sum_j X_j ∂_j f`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, GeomError> {
        let mut out = MultiPoly::zero(f.nvars(), f.has_param());
        for (j, xj) in self.components.iter().enumerate() {
            out = out.checked_add(&xj.checked_mul(&f.partial_derivative(j))?)?;
        }
        Ok(out)
    }

    /// Value at a point of `ℚ^{n+1}`. Parametric fields must be specialized
    /// first.
    pub fn eval(&self, p: &[Rational]) -> Result<Vec<Rational>, GeomError> {
        if self.has_param() {
            return Err(GeomError::Parametric);
        }
        if p.len() != self.n + 1 {
            return Err(GeomError::AmbientMismatch {
                left: self.n,
                right: p.len().saturating_sub(1),
            });
        }
        Ok(self.components.iter().map(|c| c.eval(p)).collect())
    }

    /// Coefficients keyed by `(component, monomial)`.
    pub fn coefficients(&self) -> BTreeMap<(usize, Monomial), Rational> {
        let mut out = BTreeMap::new();
        for (i, c) in self.components.iter().enumerate() {
            for (m, a) in c.terms() {
                out.insert((i, m.clone()), a.clone());
            }
        }
        out
    }
}

impl fmt::Display for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*d{i}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyVectorField(ℙ^{}: {})", self.n, self)
    }
}

/// `[X, Y]_i = sum_j X_j ∂_j Y_i - Y_j ∂_j X_i`.
pub fn bracket_vf(x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField, GeomError> {
    x.check_ambient(y)?;
    let components = (0..=x.n)
        .map(|i| Ok(x.apply(&y.components[i])?.checked_sub(&y.apply(&x.components[i])?)?))
        .collect::<Result<Vec<_>, GeomError>>()?;
    PolyVectorField::new(components)
}

/// Coefficient rows of `fields` over a shared key set, in key order.
pub fn coefficient_rows(fields: &[&PolyVectorField]) -> (Vec<(usize, Monomial)>, Vec<Vec<Rational>>) {
    let maps: Vec<_> = fields.iter().map(|f| f.coefficients()).collect();
    let mut keys: Vec<(usize, Monomial)> = maps.iter().flat_map(|m| m.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let rows = maps
        .iter()
        .map(|m| {
            keys.iter()
                .map(|k| m.get(k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    (keys, rows)
}

/// Linear span of a list of fields with coordinate lookup.
pub struct FieldSpan {
    keys: Vec<(usize, Monomial)>,
    coords: SpanCoordinates,
    n: usize,
}

impl FieldSpan {
    pub fn new(fields: &[PolyVectorField]) -> Result<Self, GeomError> {
        let n = fields.first().map_or(0, PolyVectorField::n);
        if let Some(f) = fields.iter().find(|f| f.n() != n) {
            return Err(GeomError::AmbientMismatch { left: n, right: f.n() });
        }
        let refs: Vec<&PolyVectorField> = fields.iter().collect();
        let (keys, rows) = coefficient_rows(&refs);
        let m = QMatrix::from_rows(rows, keys.len());
        let coords = SpanCoordinates::new(&m).ok_or(GeomError::DependentFields)?;
        Ok(FieldSpan { keys, coords, n })
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// Coordinates of `x` in the spanning list, `None` outside the span.
    pub fn coords(&self, x: &PolyVectorField) -> Option<Vec<Rational>> {
        if x.n() != self.n {
            return None;
        }
        let mut v = vec![Rational::zero(); self.keys.len()];
        for (k, c) in x.coefficients() {
            match self.keys.binary_search(&k) {
                Ok(idx) => v[idx] = c,
                Err(_) => return None,
            }
        }
        self.coords.coords(&v)
    }
}

/// Structure constants of a bracket-closed list of fields, computed from
/// [`bracket_vf`].
pub fn field_algebra(fields: &[PolyVectorField], names: Vec<String>) -> Result<LieAlgebra, GeomError> {
    let span = FieldSpan::new(fields)?;
    let d = fields.len();
    let mut table = vec![vec![Rational::zero(); d]; d * d];
    for i in 0..d {
        for j in i + 1..d {
            let br = bracket_vf(&fields[i], &fields[j])?;
            let c = span.coords(&br).ok_or(GeomError::NotClosed { i, j })?;
            table[j * d + i] = c.iter().map(|x| -x).collect();
            table[i * d + j] = c;
        }
    }
    Ok(LieAlgebra::from_fn(names, |i, j| table[i * d + j].clone()))
}

/// Linear fields together with their field-side structure constants.
#[derive(Clone, Debug)]
pub struct LinearFamily {
    pub fields: Vec<PolyVectorField>,
    pub algebra: LieAlgebra,
}

/// `A ↦ X_A` for each matrix. Since `[X_A, X_B] = X_{BA-AB}`, the
/// structure constants are taken from the fields, not from the matrices.
pub fn linear_fields_from_matrices(basis: &[QMatrix], names: Vec<String>) -> Result<LinearFamily, GeomError> {
    let m = basis.first().map_or(0, QMatrix::rows);
    if let Some(a) = basis.iter().find(|a| a.rows() != m || a.cols() != m) {
        return Err(GeomError::SizeMismatch {
            rows: a.rows(),
            cols: a.cols(),
            expected: m,
        });
    }
    let fields = basis
        .iter()
        .map(PolyVectorField::linear)
        .collect::<Result<Vec<_>, _>>()?;
    let algebra = field_algebra(&fields, names)?;
    Ok(LinearFamily { fields, algebra })
}

/// A point of `ℙⁿ` given by rational homogeneous coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint(Vec<Rational>);

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, GeomError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(GeomError::ZeroPoint);
        }
        Ok(ProjPoint(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, GeomError> {
        Self::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// Equality up to a nonzero scalar.
    pub fn same_point(&self, other: &Self) -> bool {
        if self.0.len() != other.0.len() {
            return false;
        }
        let m = QMatrix::from_rows(vec![self.0.clone(), other.0.clone()], self.0.len());
        m.rank() == 1
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Field values at `p` as rows, followed by the row `E(p) = p`.
pub fn evaluate_mod_euler(fields: &[PolyVectorField], p: &ProjPoint) -> Result<QMatrix, GeomError> {
    let mut rows = fields
        .iter()
        .map(|f| f.eval(p.coords()))
        .collect::<Result<Vec<_>, _>>()?;
    rows.push(p.coords().to_vec());
    Ok(QMatrix::from_rows(rows, p.n() + 1))
}

/// Dimension of the image of the fields in `T_p ℙⁿ`.
pub fn tangent_rank(fields: &[PolyVectorField], p: &ProjPoint) -> Result<usize, GeomError> {
    Ok(evaluate_mod_euler(fields, p)?.rank() - 1)
}

/// Smooth quadric `{xᵀ B x = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricModel {
    b: QMatrix,
}

impl QuadricModel {
    pub fn new(b: QMatrix) -> Result<Self, GeomError> {
        if b.rows() != b.cols() || !b.is_symmetric() || b.det().is_zero() {
            return Err(GeomError::BadQuadric);
        }
        Ok(QuadricModel { b })
    }

    pub fn form(&self) -> &QMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.b.rows() - 1
    }

    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(x, &self.b.mul_vec(y))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.pairing(p.coords(), p.coords()).is_zero()
    }

    /// First isotropic vector among `e_i`, then `e_i ± e_j`, then vectors
    /// with entries in `{-2..2}` ordered by height.
    pub fn base_point(&self) -> Result<Vec<Rational>, GeomError> {
        let m = self.b.rows();
        let unit = |i: usize| -> Vec<Rational> { (0..m).map(|k| rat((k == i) as i64)).collect() };
        let mut candidates: Vec<Vec<Rational>> = (0..m).map(unit).collect();
        for i in 0..m {
            for j in i + 1..m {
                for s in [1, -1] {
                    let mut v = unit(i);
                    v[j] = rat(s);
                    candidates.push(v);
                }
            }
        }
        if m <= 6 {
            let mut small: Vec<Vec<i64>> = vec![vec![]];
            for _ in 0..m {
                small = small
                    .into_iter()
                    .flat_map(|v| {
                        (-2..=2).map(move |c| {
                            let mut w = v.clone();
                            w.push(c);
                            w
                        })
                    })
                    .collect();
            }
            small.sort_by_key(|v| (v.iter().map(|c| c.abs()).max(), v.iter().map(|c| c.abs()).sum::<i64>()));
            candidates.extend(small.into_iter().map(|v| v.into_iter().map(rat).collect()));
        }
        candidates
            .into_iter()
            .find(|v| v.iter().any(|c| !c.is_zero()) && self.pairing(v, v).is_zero())
            .ok_or(GeomError::NoIsotropicPoint)
    }

    /// Second intersection of the line through the base point `p0` in
    /// direction `v` with the quadric: `q(v) p0 - 2 B(p0, v) v`. `None`
    /// when the line is tangent at `p0` or lies on the quadric.
    pub fn project_from(&self, p0: &[Rational], v: &[Rational]) -> Option<ProjPoint> {
        let bpv = self.pairing(p0, v);
        if bpv.is_zero() {
            return None;
        }
        let qv = self.pairing(v, v);
        let two_b = bpv * rat(2);
        let coords: Vec<Rational> = p0.iter().zip(v).map(|(a, b)| &qv * a - &two_b * b).collect();
        ProjPoint::new(coords).ok()
    }
}

/// Where sample points are drawn from.
#[derive(Clone, Debug)]
pub enum PointSampler {
    Projective { n: usize },
    Quadric(QuadricModel),
}

impl PointSampler {
    pub fn n(&self) -> usize {
        match self {
            PointSampler::Projective { n } => *n,
            PointSampler::Quadric(q) => q.n(),
        }
    }

    /// `count` points from a generator seeded with `seed`.
    pub fn sample(&self, count: usize, seed: u64) -> Result<Vec<ProjPoint>, GeomError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = match self {
            PointSampler::Quadric(q) => Some(q.base_point()?),
            PointSampler::Projective { .. } => None,
        };
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let v = random_vector(&mut rng, self.n() + 1);
            match (self, &base) {
                (PointSampler::Quadric(q), Some(p0)) => {
                    if let Some(p) = q.project_from(p0, v.coords()) {
                        out.push(p);
                    }
                }
                _ => out.push(v),
            }
        }
        Ok(out)
    }
}

/// Uniform integer coordinates in the sampling box, never all zero.
pub fn random_vector(rng: &mut impl Rng, len: usize) -> ProjPoint {
    loop {
        let v: Vec<Rational> = (0..len)
            .map(|_| rat(rng.random_range(-COORD_BOUND..=COORD_BOUND)))
            .collect();
        if let Ok(p) = ProjPoint::new(v) {
            return p;
        }
    }
}

/// A rational point on the quadric, deterministic per seed.
pub fn quadric_point(q: &QuadricModel, seed: u64) -> Result<ProjPoint, GeomError> {
    Ok(PointSampler::Quadric(q.clone()).sample(1, seed)?.remove(0))
}

/// Tangent ranks at each sampled point.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitReport {
    /// Maximum rank seen.
    pub dim: usize,
    pub samples: Vec<(ProjPoint, usize)>,
}

pub fn generic_orbit_dim(
    fields: &[PolyVectorField],
    sampler: &PointSampler,
    samples: usize,
    seed: u64,
) -> Result<OrbitReport, GeomError> {
    if samples == 0 {
        return Err(GeomError::InvalidArgument("samples must be at least 1".into()));
    }
    let n = sampler.n();
    if let Some(f) = fields.iter().find(|f| f.n() != n) {
        return Err(GeomError::AmbientMismatch { left: n, right: f.n() });
    }
    let mut log = Vec::with_capacity(samples);
    for p in sampler.sample(samples, seed)? {
        let r = tangent_rank(fields, &p)?;
        log.push((p, r));
    }
    let dim = log.iter().map(|(_, r)| *r).max().unwrap_or(0);
    Ok(OrbitReport { dim, samples: log })
}

/// The subspace of `L` tangent to the foliation of `𝔤` at every sampled
/// point, as a subalgebra of the field-side algebra of `L`.
#[derive(Clone, Debug)]
pub struct TangentAlgebra {
    pub result: Subalgebra,
    /// Coordinates of the `𝔤` fields in the `L` basis.
    pub g_coords: Vec<Vec<Rational>>,
    /// Dimension of the solution space after each point.
    pub dims: Vec<usize>,
    /// The space reached `dim 𝔤` (it cannot shrink further), or the last
    /// [`STABILIZATION_WINDOW`] points did not shrink it.
    pub stabilized: bool,
    pub samples: usize,
    pub seed: u64,
}

impl TangentAlgebra {
    pub fn dim(&self) -> usize {
        self.result.dim()
    }

    pub fn g_dim(&self) -> usize {
        self.g_coords.len()
    }

    /// `dim = dim 𝔤`; a necessary condition checked at finitely many points.
    pub fn maximal(&self) -> bool {
        self.dim() == self.g_dim()
    }
}

/// `{Y ∈ L : Y(p) ∈ span(𝔤(p), p)}` over the sampled points.
pub fn tangent_algebra(
    l_fields: &[PolyVectorField],
    g_fields: &[PolyVectorField],
    sampler: &PointSampler,
    samples: usize,
    seed: u64,
) -> Result<TangentAlgebra, GeomError> {
    if samples == 0 {
        return Err(GeomError::InvalidArgument("samples must be at least 1".into()));
    }
    let names = (0..l_fields.len()).map(|i| format!("Y{}", i + 1)).collect();
    let l_alg = Arc::new(field_algebra(l_fields, names)?);
    let span = FieldSpan::new(l_fields)?;
    let g_coords = g_fields
        .iter()
        .enumerate()
        .map(|(index, f)| span.coords(f).ok_or(GeomError::NotInSpan { index }))
        .collect::<Result<Vec<_>, _>>()?;
    let d = l_fields.len();
    let m = sampler.n() + 1;
    let mut conditions = RowReducer::new(d);
    let mut dims = Vec::with_capacity(samples);
    for p in sampler.sample(samples, seed)? {
        let mut rows = g_fields
            .iter()
            .map(|f| f.eval(p.coords()))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(p.coords().to_vec());
        let annihilator = QMatrix::from_rows(rows, m).kernel_basis();
        let values = l_fields
            .iter()
            .map(|f| f.eval(p.coords()))
            .collect::<Result<Vec<_>, _>>()?;
        for alpha in annihilator {
            conditions.insert(values.iter().map(|y| dot(&alpha, y)).collect());
        }
        dims.push(d - conditions.rank());
    }
    let kernel = conditions.kernel_basis();
    let result = Subalgebra::new(l_alg, QMatrix::from_rows(kernel, d))?;
    // The space always contains 𝔤, so reaching dim 𝔤 is final; otherwise
    // require the last window of points not to shrink it.
    let last = dims[dims.len() - 1];
    let stabilized = last == g_fields.len()
        || (dims.len() > STABILIZATION_WINDOW && last == dims[dims.len() - 1 - STABILIZATION_WINDOW]);
    Ok(TangentAlgebra {
        result,
        g_coords,
        dims,
        stabilized,
        samples,
        seed,
    })
}

/// Substitutes `x_i = 0` and drops coordinate `i`. The hyperplane must be
/// invariant: `x_i` divides the `i`-th component of every field.
pub fn restrict_to_hyperplane(fields: &[PolyVectorField], i: usize) -> Result<Vec<PolyVectorField>, GeomError> {
    fields
        .iter()
        .enumerate()
        .map(|(index, f)| {
            if i > f.n() || f.n() == 0 {
                return Err(GeomError::InvalidArgument(format!(
                    "coordinate {i} out of range for ℙ^{}",
                    f.n()
                )));
            }
            let residual = f.components[i].restrict_to_zero(i);
            if !residual.is_zero() {
                return Err(GeomError::NotInvariant {
                    field: index,
                    coordinate: i,
                    residual,
                });
            }
            let comps = f
                .components
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, c)| c.restrict_to_zero(i))
                .collect();
            PolyVectorField::new(comps)
        })
        .collect()
}

/// The adjoint action of `sl_n` on `ℙ(sl_n)`, in the coordinates of the
/// [`sl`] basis: the field of `x` is `p ↦ [x, p]`.
#[derive(Clone, Debug)]
pub struct AdjointFamily {
    pub n: usize,
    pub algebra: crate::liecore::MatrixLieAlgebra,
    pub fields: Vec<PolyVectorField>,
}

pub fn adjoint_fields(n: usize) -> Result<AdjointFamily, GeomError> {
    let algebra = sl(n)?;
    let fields = (0..algebra.algebra.dim())
        .map(|i| PolyVectorField::linear(&algebra.algebra.ad(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AdjointFamily { n, algebra, fields })
}

/// Pointwise check of the centralizer sections at a traceless matrix `p`.
#[derive(Clone, Debug)]
pub struct AdjointKernelReport {
    pub point: ProjPoint,
    /// `Z_k(p) = p^k - tr(p^k)/n · Id` for `k = 1..n-1`.
    pub sections: Vec<QMatrix>,
    pub commute: bool,
    pub independent: bool,
    /// `dim {x : [x, p] ∈ ⟨p⟩}`.
    pub kernel_dim: usize,
    /// `Id, p, ..., p^{n-1}` are independent.
    pub regular: bool,
}

impl AdjointKernelReport {
    /// Kernel of dimension `n - 1`, sections commuting and independent.
    pub fn passes(&self) -> bool {
        self.commute && self.independent && self.regular && self.kernel_dim == self.sections.len()
    }
}

pub fn adjoint_kernel_sections(family: &AdjointFamily, p: &QMatrix) -> Result<AdjointKernelReport, GeomError> {
    let n = family.n;
    if p.rows() != n || p.cols() != n {
        return Err(GeomError::SizeMismatch {
            rows: p.rows(),
            cols: p.cols(),
            expected: n,
        });
    }
    if p.is_zero() {
        return Err(GeomError::ZeroPoint);
    }
    if !p.trace().is_zero() {
        return Err(GeomError::NotTraceless);
    }
    if p.pow(n as u32).is_zero() {
        return Err(GeomError::NilpotentPoint);
    }
    let coords = family.algebra.coords_of(p).ok_or(GeomError::NotTraceless)?;
    let point = ProjPoint::new(coords)?;
    let id = QMatrix::identity(n);
    let inv_n = Rational::one() / rat(n as i64);
    let sections: Vec<QMatrix> = (1..n as u32)
        .map(|k| {
            let pk = p.pow(k);
            let tr = pk.trace();
            pk.sub(&id.scale(&(tr * &inv_n)))
        })
        .collect();
    let commute = sections.iter().all(|z| z.commutator(p).is_zero());
    let flat = |ms: &[QMatrix]| QMatrix::from_rows(ms.iter().map(|m| m.entries().to_vec()).collect(), n * n);
    let independent = sections.is_empty() || flat(&sections).rank() == sections.len();
    let powers: Vec<QMatrix> = (0..n as u32).map(|k| p.pow(k)).collect();
    let regular = flat(&powers).rank() == n;
    let rank = tangent_rank(&family.fields, &point)?;
    let kernel_dim = family.fields.len() - rank;
    Ok(AdjointKernelReport {
        point,
        sections,
        commute,
        independent,
        kernel_dim,
        regular,
    })
}

/// Seeded random traceless integer matrices that are regular and not
/// nilpotent.
pub fn random_regular_points(n: usize, count: usize, seed: u64) -> Vec<QMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut m = QMatrix::from_fn(n, n, |_, _| rat(rng.random_range(-COORD_BOUND..=COORD_BOUND)));
        let tr = m.trace();
        m[(n - 1, n - 1)] -= tr;
        let powers: Vec<Vec<Rational>> = (0..n as u32).map(|k| m.pow(k).entries().to_vec()).collect();
        if !m.pow(n as u32).is_zero() && QMatrix::from_rows(powers, n * n).rank() == n {
            out.push(m);
        }
    }
    out
}

/// Height of a rational vector (max of numerator and denominator sizes);
/// used in sample logs.
pub fn height(v: &[Rational]) -> u64 {
    v.iter()
        .map(|c| c.numer().abs().bits().max(c.denom().bits()))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::{invariant_symmetric_form, sl2_sym_power};

    fn f(n: usize, comps: &[&str]) -> PolyVectorField {
        PolyVectorField::parse(n, false, comps).unwrap()
    }

    #[test]
    fn basic_brackets() {
        let x = f(2, &["0", "x0", "0"]);
        let y = f(2, &["0", "0", "x1"]);
        assert_eq!(bracket_vf(&x, &y).unwrap(), f(2, &["0", "0", "x0"]));
        let e = PolyVectorField::euler(2);
        let a = f(2, &["x1 + 2*x2", "x0", "-1*x2"]);
        assert!(bracket_vf(&e, &a).unwrap().is_zero());
        // Degree additivity.
        let q = f(2, &["x0^2", "0", "x1*x2"]);
        assert_eq!(bracket_vf(&q, &a).unwrap().degree(), Some(2));
        assert!(bracket_vf(&x, &f(3, &["0", "0", "0", "x1"])).is_err());
    }

    #[test]
    fn linear_fields() {
        assert_eq!(
            PolyVectorField::linear(&QMatrix::identity(3)).unwrap(),
            PolyVectorField::euler(2)
        );
        let e = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(PolyVectorField::linear(&e).unwrap(), f(1, &["x1", "0"]));
        // Anti-homomorphism: [X_A, X_B] = X_{BA - AB}.
        let a = QMatrix::from_ints(&[&[1, 2], &[0, -1]]);
        let b = QMatrix::from_ints(&[&[0, 0], &[3, 0]]);
        let lhs = bracket_vf(
            &PolyVectorField::linear(&a).unwrap(),
            &PolyVectorField::linear(&b).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, PolyVectorField::linear(&b.commutator(&a)).unwrap());
    }

    #[test]
    fn sym4_fields_close_as_sl2() {
        let s = sl2_sym_power(4).unwrap();
        let fam = linear_fields_from_matrices(
            &[s.h.clone(), s.e.clone(), s.f.clone()],
            vec!["h".into(), "e".into(), "f".into()],
        )
        .unwrap();
        assert!(fam.algebra.validate().is_valid());
        assert!(fam.algebra.is_semisimple());
        // Field side reverses the matrix bracket: [X_h, X_e] = -2 X_e.
        assert_eq!(fam.algebra.bracket_basis(0, 1), &[(1, rat(-2))]);
    }

    #[test]
    fn evaluation_ranks() {
        let p = ProjPoint::from_ints(&[3, -1, 4]).unwrap();
        assert_eq!(tangent_rank(&[PolyVectorField::euler(2)], &p).unwrap(), 0);
        let s = sl2_sym_power(4).unwrap();
        let fields: Vec<_> = s.triple().iter().map(|m| PolyVectorField::linear(m).unwrap()).collect();
        let x = ProjPoint::from_ints(&[1, 0, 0, 0, 1]).unwrap();
        assert_eq!(tangent_rank(&fields, &x).unwrap(), 3);
        let adj = adjoint_fields(3).unwrap();
        let diag = QMatrix::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
        let pt = ProjPoint::new(adj.algebra.coords_of(&diag).unwrap()).unwrap();
        assert_eq!(tangent_rank(&adj.fields, &pt).unwrap(), 6);
    }

    #[test]
    fn points_are_deterministic_and_projective_equality() {
        let s = PointSampler::Projective { n: 3 };
        assert_eq!(s.sample(4, 7).unwrap(), s.sample(4, 7).unwrap());
        assert_ne!(s.sample(4, 7).unwrap(), s.sample(4, 8).unwrap());
        let a = ProjPoint::from_ints(&[1, 2, 3]).unwrap();
        let b = ProjPoint::from_ints(&[-2, -4, -6]).unwrap();
        assert!(a.same_point(&b));
        assert!(!a.same_point(&ProjPoint::from_ints(&[1, 2, 4]).unwrap()));
        assert_eq!(ProjPoint::from_ints(&[0, 0]), Err(GeomError::ZeroPoint));
    }

    #[test]
    fn quadric_points() {
        let s = sl2_sym_power(4).unwrap();
        let b = invariant_symmetric_form(&s.triple().map(|m| m.clone())).unwrap();
        let q = QuadricModel::new(b).unwrap();
        assert_eq!(q.base_point().unwrap(), [1, 0, 0, 0, 0].map(rat).to_vec());
        for seed in 0..10 {
            assert!(q.contains(&quadric_point(&q, seed).unwrap()));
        }
        assert!(!quadric_point(&q, 0).unwrap().same_point(&quadric_point(&q, 1).unwrap()));
        assert!(QuadricModel::new(QMatrix::from_ints(&[&[1, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn tangent_algebra_examples() {
        let sl2 = sl(2).unwrap();
        let l: Vec<_> = sl2
            .matrices
            .iter()
            .map(|m| PolyVectorField::linear(m).unwrap())
            .collect();
        let sampler = PointSampler::Projective { n: 1 };
        let aff = tangent_algebra(&l, &l[..2], &sampler, 10, 0).unwrap();
        assert_eq!(aff.dim(), 3);
        assert!(!aff.maximal());
        let full = tangent_algebra(&l, &l, &sampler, 10, 0).unwrap();
        assert!(full.maximal());
        assert!(full.stabilized);
    }

    #[test]
    fn hyperplane_restriction() {
        let s = sl2_sym_power(4).unwrap();
        let h = PolyVectorField::linear(&s.h).unwrap();
        let e = PolyVectorField::linear(&s.e).unwrap();
        let fl = PolyVectorField::linear(&s.f).unwrap();
        let r = restrict_to_hyperplane(&[h, e], 4).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.n() == 3));
        assert!(matches!(
            restrict_to_hyperplane(&[fl], 4),
            Err(GeomError::NotInvariant {
                field: 0,
                coordinate: 4,
                ..
            })
        ));
        assert_eq!(
            restrict_to_hyperplane(&[PolyVectorField::euler(3)], 1).unwrap()[0],
            PolyVectorField::euler(2)
        );
    }

    #[test]
    fn adjoint_kernel() {
        let fam = adjoint_fields(3).unwrap();
        let p = QMatrix::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]);
        let r = adjoint_kernel_sections(&fam, &p).unwrap();
        assert_eq!(r.kernel_dim, 2);
        assert!(r.commute && r.independent && r.regular);
        let fam2 = adjoint_fields(2).unwrap();
        let r2 = adjoint_kernel_sections(&fam2, &QMatrix::from_ints(&[&[1, 0], &[0, -1]])).unwrap();
        assert_eq!(r2.kernel_dim, 1);
        let nil = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(
            adjoint_kernel_sections(&fam2, &nil).unwrap_err(),
            GeomError::NilpotentPoint
        );
        assert_eq!(
            adjoint_kernel_sections(&fam2, &QMatrix::zeros(2, 2)).unwrap_err(),
            GeomError::ZeroPoint
        );
    }
}
