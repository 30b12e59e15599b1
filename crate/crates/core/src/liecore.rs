//! Finite-dimensional Lie algebras over ℚ given by structure constants,
//! their subalgebras and modules, and the constructors used by the catalog.

use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::qlinalg::{rat, QMatrix, Rational, SpanCoordinates};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("not closed under the bracket: [b{i}, b{j}] leaves the span")]
    NotClosed { i: usize, j: usize },
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("bilinear form is degenerate")]
    SingularForm,
    #[error("no nonzero invariant symmetric form")]
    NoInvariantForm,
    #[error("invariant symmetric forms are not unique up to scale (solution space of dimension {dim})")]
    NonUniqueForm { dim: usize },
    #[error("representation law fails for basis pair ({i}, {j})")]
    RepresentationLaw { i: usize, j: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Lie algebra on a fixed basis, `[e_i, e_j] = sum_k c_ij^k e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    names: Vec<String>,
    // Row-major over (i, j); each entry is a sparse vector.
    table: Vec<Vec<(usize, Rational)>>,
}

/// Outcome of [`LieAlgebra::validate`]. Violations are data, not errors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    /// `(i, j, c_ij + c_ji)` for each failing pair `i <= j`.
    pub antisymmetry: Vec<(usize, usize, Vec<Rational>)>,
    /// `(i, j, k, residual)` for each triple `i < j < k` whose cyclic
    /// Jacobi sum is nonzero.
    pub jacobi: Vec<(usize, usize, usize, Vec<Rational>)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

fn sparse(v: &[Rational]) -> Vec<(usize, Rational)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl LieAlgebra {
    /// Builds an algebra from dense brackets `f(i, j) = [e_i, e_j]`.
    pub fn from_fn(names: Vec<String>, mut f: impl FnMut(usize, usize) -> Vec<Rational>) -> Self {
        let d = names.len();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let v = f(i, j);
                assert_eq!(v.len(), d, "bracket vector has wrong length");
                table.push(sparse(&v));
            }
        }
        LieAlgebra { names, table }
    }

    /// Builds an algebra from listed brackets. A pair given only as
    /// `(i, j)` gets `[e_j, e_i] = -[e_i, e_j]`; pairs given both ways are
    /// stored verbatim so [`validate`](Self::validate) can flag them.
    pub fn from_brackets(
        names: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vec<(usize, Rational)>)>,
    ) -> Result<Self, LieError> {
        let d = names.len();
        let mut dense: Vec<Option<Vec<Rational>>> = vec![None; d * d];
        for (i, j, terms) in brackets {
            for idx in [i, j] {
                if idx >= d {
                    return Err(LieError::IndexOutOfRange { index: idx, dim: d });
                }
            }
            let slot = dense[i * d + j].get_or_insert_with(|| vec![Rational::zero(); d]);
            for (k, c) in terms {
                if k >= d {
                    return Err(LieError::IndexOutOfRange { index: k, dim: d });
                }
                slot[k] += c;
            }
        }
        Ok(Self::from_fn(names, |i, j| {
            match (&dense[i * d + j], &dense[j * d + i]) {
                (Some(v), _) => v.clone(),
                (None, Some(v)) if i != j => v.iter().map(|c| -c).collect(),
                _ => vec![Rational::zero(); d],
            }
        }))
    }

    pub fn abelian(d: usize) -> Self {
        Self::from_fn((0..d).map(|i| format!("a{i}")).collect(), |_, _| {
            vec![Rational::zero(); d]
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        assert!(x.len() == d && y.len() == d, "coordinate vector has wrong length");
        let mut out = vec![Rational::zero(); d];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(e_i)`: column `j` holds `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for j in 0..d {
            for (k, c) in self.bracket_basis(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    pub fn ad_of(&self, x: &[Rational]) -> QMatrix {
        let d = self.dim();
        let mut m = QMatrix::zeros(d, d);
        for (i, a) in x.iter().enumerate() {
            if !a.is_zero() {
                m = m.add(&self.ad(i).scale(a));
            }
        }
        m
    }

    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let mut report = ValidationReport::default();
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        };
        let dense = |i: usize, j: usize| {
            let mut v = vec![Rational::zero(); d];
            for (k, c) in self.bracket_basis(i, j) {
                v[*k] = c.clone();
            }
            v
        };
        for i in 0..d {
            for j in i..d {
                let s: Vec<Rational> = dense(i, j).iter().zip(dense(j, i)).map(|(a, b)| a + b).collect();
                if s.iter().any(|c| !c.is_zero()) {
                    report.antisymmetry.push((i, j, s));
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let a = self.bracket(&unit(i), &dense(j, k));
                    let b = self.bracket(&unit(j), &dense(k, i));
                    let c = self.bracket(&unit(k), &dense(i, j));
                    let r: Vec<Rational> = (0..d).map(|t| &a[t] + &b[t] + &c[t]).collect();
                    if r.iter().any(|x| !x.is_zero()) {
                        report.jacobi.push((i, j, k, r));
                    }
                }
            }
        }
        report
    }

    /// `K(e_i, e_j) = tr(ad e_i · ad e_j)`.
    pub fn killing_form(&self) -> QMatrix {
        let d = self.dim();
        let ads: Vec<QMatrix> = (0..d).map(|i| self.ad(i)).collect();
        let mut k = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = ads[i].mul(&ads[j]).trace();
                k[(i, j)] = v.clone();
                k[(j, i)] = v;
            }
        }
        k
    }

    /// Cartan's criterion: nondegenerate Killing form.
    pub fn is_semisimple(&self) -> bool {
        self.dim() > 0 && !self.killing_form().det().is_zero()
    }

    /// `exp(ad x)` when `ad x` is nilpotent (the series is then finite);
    /// `None` otherwise.
    pub fn exp_ad(&self, x: &[Rational]) -> Option<QMatrix> {
        let d = self.dim();
        let ad = self.ad_of(x);
        let mut term = QMatrix::identity(d);
        let mut sum = QMatrix::identity(d);
        for k in 1..=d {
            term = term.mul(&ad).scale(&(Rational::one() / rat(k as i64)));
            if term.is_zero() {
                return Some(sum);
            }
            sum = sum.add(&term);
        }
        term.mul(&ad).is_zero().then_some(sum)
    }
}

/// A Lie algebra realized by matrices, with structure constants taken from
/// the matrix commutator.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub algebra: LieAlgebra,
    pub matrices: Vec<QMatrix>,
    coords: SpanCoordinates,
}

fn flatten(m: &QMatrix) -> Vec<Rational> {
    m.entries().to_vec()
}

impl MatrixLieAlgebra {
    /// Fails when the matrices are dependent or their span is not closed
    /// under commutators.
    pub fn new(names: Vec<String>, matrices: Vec<QMatrix>) -> Result<Self, LieError> {
        assert_eq!(names.len(), matrices.len(), "one name per matrix");
        let size = matrices.first().map_or(0, |m| m.rows());
        if matrices.iter().any(|m| m.rows() != size || m.cols() != size) {
            return Err(LieError::Shape("matrices must be square of one size".into()));
        }
        let flat = QMatrix::from_rows(matrices.iter().map(flatten).collect(), size * size);
        let coords = SpanCoordinates::new(&flat).ok_or(LieError::DependentBasis)?;
        let d = matrices.len();
        let mut brackets = vec![vec![Rational::zero(); d]; d * d];
        for i in 0..d {
            for j in i + 1..d {
                let c = coords
                    .coords(&flatten(&matrices[i].commutator(&matrices[j])))
                    .ok_or(LieError::NotClosed { i, j })?;
                brackets[j * d + i] = c.iter().map(|x| -x).collect();
                brackets[i * d + j] = c;
            }
        }
        let algebra = LieAlgebra::from_fn(names, |i, j| brackets[i * d + j].clone());
        Ok(MatrixLieAlgebra {
            algebra,
            matrices,
            coords,
        })
    }

    pub fn size(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.rows())
    }

    /// Coordinates of a matrix in this basis, `None` outside the span.
    pub fn coords_of(&self, m: &QMatrix) -> Option<Vec<Rational>> {
        self.coords.coords(&flatten(m))
    }

    pub fn matrix_of(&self, x: &[Rational]) -> QMatrix {
        let n = self.size();
        x.iter()
            .zip(&self.matrices)
            .filter(|(c, _)| !c.is_zero())
            .fold(QMatrix::zeros(n, n), |acc, (c, m)| acc.add(&m.scale(c)))
    }
}

/// `sl(n)`: traceless `n × n` matrices on the basis `H_1..H_{n-1}`
/// (`H_i = E_ii - E_{i+1,i+1}`) followed by `E_ij`, `i != j`, row-major.
/// For `n = 2` the basis is named `h, e, f`.
pub fn sl(n: usize) -> Result<MatrixLieAlgebra, LieError> {
    if n < 2 {
        return Err(LieError::InvalidArgument(format!("sl(n) needs n >= 2, got {n}")));
    }
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n - 1 {
        let mut m = QMatrix::zeros(n, n);
        m[(i, i)] = rat(1);
        m[(i + 1, i + 1)] = rat(-1);
        names.push(format!("H{}", i + 1));
        mats.push(m);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = QMatrix::zeros(n, n);
                m[(i, j)] = rat(1);
                names.push(format!("E{}{}", i + 1, j + 1));
                mats.push(m);
            }
        }
    }
    if n == 2 {
        names = vec!["h".into(), "e".into(), "f".into()];
    }
    MatrixLieAlgebra::new(names, mats)
}

/// `{A : Aᵀ B + B A = 0}` for a symmetric nondegenerate `B`, on the
/// reduced echelon basis of the solution space (ordered by leading entry).
pub fn so_from_form(b: &QMatrix) -> Result<MatrixLieAlgebra, LieError> {
    if !b.is_symmetric() {
        return Err(LieError::NotSymmetric);
    }
    if b.det().is_zero() {
        return Err(LieError::SingularForm);
    }
    let n = b.rows();
    // Unknown A_kl sits at column k*n + l; equation (i, j) for i <= j.
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row = vec![Rational::zero(); n * n];
            for k in 0..n {
                row[k * n + i] += &b[(k, j)];
                row[k * n + j] += &b[(i, k)];
            }
            eqs.push(row);
        }
    }
    let sys = QMatrix::from_rows(eqs, n * n);
    let kernel = QMatrix::from_rows(sys.kernel_basis(), n * n);
    let (basis, pivots) = kernel.rref();
    let mats: Vec<QMatrix> = (0..pivots.len())
        .map(|r| QMatrix::from_fn(n, n, |i, j| basis[(r, i * n + j)].clone()))
        .collect();
    let names = (0..mats.len()).map(|i| format!("A{}", i + 1)).collect();
    MatrixLieAlgebra::new(names, mats)
}

/// `sl₂` acting on degree-`m` binary forms.
#[derive(Clone, Debug)]
pub struct SymPower {
    pub degree: usize,
    /// The abstract `sl₂` on `h, e, f`.
    pub sl2: MatrixLieAlgebra,
    /// Images of `h, e, f` as `(m+1) × (m+1)` matrices.
    pub h: QMatrix,
    pub e: QMatrix,
    pub f: QMatrix,
    /// Coordinates of `h, e, f` in [`sl`]`(m+1)`.
    pub embedding: Vec<Vec<Rational>>,
}

impl SymPower {
    pub fn triple(&self) -> [&QMatrix; 3] {
        [&self.h, &self.e, &self.f]
    }
}

/// `Sym^m` of the standard representation on the monomials
/// `u^m, u^{m-1} v, ..., v^m` (index `k` is `u^{m-k} v^k`), with
/// `e = u ∂_v`, `f = v ∂_u`, `h = u ∂_u - v ∂_v`.
pub fn sl2_sym_power(m: usize) -> Result<SymPower, LieError> {
    if m < 1 {
        return Err(LieError::InvalidArgument("symmetric power degree must be >= 1".into()));
    }
    let n = m + 1;
    let mut h = QMatrix::zeros(n, n);
    let mut e = QMatrix::zeros(n, n);
    let mut f = QMatrix::zeros(n, n);
    for k in 0..n {
        h[(k, k)] = rat(m as i64 - 2 * k as i64);
        if k >= 1 {
            e[(k - 1, k)] = rat(k as i64);
        }
        if k < m {
            f[(k + 1, k)] = rat((m - k) as i64);
        }
    }
    let big = sl(n)?;
    let embedding = [&h, &e, &f]
        .iter()
        .map(|x| big.coords_of(x).expect("traceless"))
        .collect();
    Ok(SymPower {
        degree: m,
        sl2: sl(2)?,
        h,
        e,
        f,
        embedding,
    })
}

/// A nonzero symmetric `B` with `Xᵀ B + B X = 0` for every `X` in `rep`,
/// required to be unique up to scale.
#[allow(clippy::needless_range_loop)]
pub fn invariant_symmetric_form(rep: &[QMatrix]) -> Result<QMatrix, LieError> {
    let n = rep.first().map(|m| m.rows()).unwrap_or(0);
    if rep.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(LieError::Shape(
            "representation matrices must be square of one size".into(),
        ));
    }
    // Unknowns: B_ij for i <= j.
    let mut slot = vec![vec![0usize; n]; n];
    let mut count = 0;
    for i in 0..n {
        for j in i..n {
            slot[i][j] = count;
            slot[j][i] = count;
            count += 1;
        }
    }
    let mut eqs = Vec::new();
    for x in rep {
        for i in 0..n {
            for j in i..n {
                // (XᵀB + BX)_ij = sum_k X_ki B_kj + B_ik X_kj
                let mut row = vec![Rational::zero(); count];
                for k in 0..n {
                    row[slot[k][j]] += &x[(k, i)];
                    row[slot[i][k]] += &x[(k, j)];
                }
                eqs.push(row);
            }
        }
    }
    let kernel = QMatrix::from_rows(eqs, count).kernel_basis();
    match kernel.len() {
        0 => Err(LieError::NoInvariantForm),
        1 => Ok(QMatrix::from_fn(n, n, |i, j| kernel[0][slot[i][j]].clone())),
        dim => Err(LieError::NonUniqueForm { dim }),
    }
}

/// A subspace of a parent algebra given by coordinate rows.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    parent: Arc<LieAlgebra>,
    basis: QMatrix,
    coords: SpanCoordinates,
}

/// Result of a bracket-closure test.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureCheck {
    pub closed: bool,
    /// First offending pair, its bracket, and the residual off the span.
    pub witness: Option<ClosureWitness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosureWitness {
    pub i: usize,
    pub j: usize,
    pub bracket: Vec<Rational>,
    pub residual: Vec<Rational>,
}

impl Subalgebra {
    /// Rows of `basis` are coordinates in `parent`; they must be independent.
    /// Closure is not checked here.
    pub fn new(parent: Arc<LieAlgebra>, basis: QMatrix) -> Result<Self, LieError> {
        if basis.cols() != parent.dim() {
            return Err(LieError::Shape(format!(
                "basis rows have length {}, parent has dimension {}",
                basis.cols(),
                parent.dim()
            )));
        }
        let coords = SpanCoordinates::new(&basis).ok_or(LieError::DependentBasis)?;
        Ok(Subalgebra { parent, basis, coords })
    }

    /// Span of the given parent basis elements.
    pub fn from_indices(parent: Arc<LieAlgebra>, indices: &[usize]) -> Result<Self, LieError> {
        let d = parent.dim();
        if let Some(&index) = indices.iter().find(|&&i| i >= d) {
            return Err(LieError::IndexOutOfRange { index, dim: d });
        }
        let basis = QMatrix::from_fn(indices.len(), d, |r, c| rat((indices[r] == c) as i64));
        Self::new(parent, basis)
    }

    /// The whole parent.
    pub fn full(parent: Arc<LieAlgebra>) -> Self {
        let d = parent.dim();
        Self::new(parent, QMatrix::identity(d)).expect("identity rows are independent")
    }

    pub fn parent(&self) -> &Arc<LieAlgebra> {
        &self.parent
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords.coords(v).is_some()
    }

    /// Coordinates of a parent vector in this basis, `None` off the span.
    pub fn coords_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.coords.coords(v)
    }

    pub fn closure_check(&self) -> ClosureCheck {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                let br = self.parent.bracket(self.basis.row(i), self.basis.row(j));
                let residual = self.coords.residual(&br);
                if residual.iter().any(|c| !c.is_zero()) {
                    return ClosureCheck {
                        closed: false,
                        witness: Some(ClosureWitness {
                            i,
                            j,
                            bracket: br,
                            residual,
                        }),
                    };
                }
            }
        }
        ClosureCheck {
            closed: true,
            witness: None,
        }
    }

    /// Structure constants of the subalgebra in its own basis.
    pub fn structure(&self) -> Result<LieAlgebra, LieError> {
        let d = self.dim();
        let mut table = vec![vec![Rational::zero(); d]; d * d];
        for i in 0..d {
            for j in i + 1..d {
                let br = self.parent.bracket(self.basis.row(i), self.basis.row(j));
                let c = self.coords.coords(&br).ok_or(LieError::NotClosed { i, j })?;
                table[j * d + i] = c.iter().map(|x| -x).collect();
                table[i * d + j] = c;
            }
        }
        let names = (0..d).map(|i| format!("g{}", i + 1)).collect();
        Ok(LieAlgebra::from_fn(names, |i, j| table[i * d + j].clone()))
    }

    /// `L/𝔤` as a 𝔤-module.
    ///
    /// The complement is spanned by the standard basis vectors at the
    /// non-pivot columns of the reduced echelon basis of 𝔤. For `v ∈ L`
    /// its complement coordinate at column `c` is
    /// `v_c - sum_p v_p R_p[c]`, which is the residual at `c`.
    pub fn quotient_module(&self) -> Result<GModule, LieError> {
        let algebra = self.structure()?;
        let n = self.parent.dim();
        let pivots = self.coords.pivots();
        let comp: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let m = comp.len();
        let action = (0..self.dim())
            .map(|a| {
                let x = self.basis.row(a);
                let mut mat = QMatrix::zeros(m, m);
                for (col, &c) in comp.iter().enumerate() {
                    let mut e = vec![Rational::zero(); n];
                    e[c] = Rational::one();
                    let res = self.coords.residual(&self.parent.bracket(x, &e));
                    for (row, &r) in comp.iter().enumerate() {
                        mat[(row, col)] = res[r].clone();
                    }
                }
                mat
            })
            .collect();
        GModule::new(algebra, action)
    }

    /// Same subspace on a different basis: `mix * basis`.
    pub fn rebased(&self, mix: &QMatrix) -> Result<Self, LieError> {
        Self::new(self.parent.clone(), mix.mul(&self.basis))
    }

    /// Image under a parent automorphism given as a matrix on coordinates.
    pub fn transformed(&self, auto: &QMatrix) -> Result<Self, LieError> {
        Self::new(self.parent.clone(), self.basis.mul(&auto.transpose()))
    }
}

/// A 𝔤-module: `action[a] · v` is `x_a · v` for the basis `x_a` of 𝔤.
#[derive(Clone, Debug)]
pub struct GModule {
    algebra: LieAlgebra,
    action: Vec<QMatrix>,
    dim: usize,
}

impl GModule {
    pub fn new(algebra: LieAlgebra, action: Vec<QMatrix>) -> Result<Self, LieError> {
        if action.len() != algebra.dim() {
            return Err(LieError::Shape(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(LieError::Shape("action matrices must be square of one size".into()));
        }
        Ok(GModule { algebra, action, dim })
    }

    /// Module of dimension `dim` for an algebra with no basis (or any
    /// algebra acting trivially).
    pub fn trivial(algebra: LieAlgebra, dim: usize) -> Self {
        let action = vec![QMatrix::zeros(dim, dim); algebra.dim()];
        GModule { algebra, action, dim }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn action(&self) -> &[QMatrix] {
        &self.action
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Checks `ρ([x_i, x_j]) = [ρ(x_i), ρ(x_j)]` on all basis pairs.
    pub fn check_representation(&self) -> Result<(), LieError> {
        let d = self.algebra.dim();
        for i in 0..d {
            for j in i + 1..d {
                let lhs = self
                    .algebra
                    .bracket_basis(i, j)
                    .iter()
                    .fold(QMatrix::zeros(self.dim, self.dim), |acc, (k, c)| {
                        acc.add(&self.action[*k].scale(c))
                    });
                if lhs != self.action[i].commutator(&self.action[j]) {
                    return Err(LieError::RepresentationLaw { i, j });
                }
            }
        }
        Ok(())
    }

    /// `dim M^𝔤`: common kernel of the action matrices.
    pub fn invariants_dim(&self) -> usize {
        if self.action.is_empty() {
            return self.dim;
        }
        let stacked = self
            .action
            .iter()
            .skip(1)
            .fold(self.action[0].clone(), |acc, m| acc.vstack(m));
        self.dim - stacked.rank()
    }
}

/// `L` acting on itself by `ad`.
pub fn adjoint_module(l: &LieAlgebra) -> GModule {
    let action = (0..l.dim()).map(|i| l.ad(i)).collect();
    GModule::new(l.clone(), action).expect("ad matrices are square")
}
