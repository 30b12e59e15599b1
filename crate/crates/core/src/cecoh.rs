//! Chevalley–Eilenberg cochains `Hom(Λᵏ𝔤, M)`, their differentials as
//! explicit matrices, cohomology dimensions, rigidity verdicts, and bracket
//! closure of field families over ℚ(t).
//!
//! The differential is
//! `δf(x_0,…,x_k) = Σ_i (-1)^i x_i·f(…x̂_i…) + Σ_{i<j} (-1)^{i+j} f([x_i,x_j], …x̂_i…x̂_j…)`,
//! so `δ⁰m = (x ↦ x·m)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::geom::{bracket_vf, field_algebra, GeomError, PolyVectorField};
use crate::liecore::{GModule, LieError, Subalgebra};
use crate::qlinalg::{rank_ratfunc, Mat, QMatrix, RatFunc, Rational, UPoly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CEError {
    #[error("degree {k} out of range (max degree {max})")]
    DegreeOutOfRange { k: usize, max: usize },
    #[error("max degree must be at least 2")]
    MaxDegree,
    #[error("δ^{} ∘ δ^{} ≠ 0", k + 1, k)]
    NotAComplex { k: usize },
    #[error("generators are linearly dependent over ℚ(t)")]
    DependentGenerators,
    #[error("empty field family")]
    EmptyFamily,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Lexicographic `k`-subsets of `0..d`.
pub fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= d {
        go(0, d, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// `dim C^k = binom(d, k) · dim M`.
pub fn cochain_dim(d: usize, m: usize, k: usize) -> usize {
    subsets(d, k).len() * m
}

fn differential_unchecked(module: &GModule, k: usize) -> QMatrix {
    let g = module.algebra();
    let d = g.dim();
    let m = module.dim();
    let sources = subsets(d, k);
    let targets = subsets(d, k + 1);
    let index: HashMap<&[usize], usize> = sources.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut out = QMatrix::zeros(targets.len() * m, sources.len() * m);
    let sign = |e: usize| {
        if e & 1 == 0 {
            Rational::from_integer(1.into())
        } else {
            Rational::from_integer((-1).into())
        }
    };
    for (t, s) in targets.iter().enumerate() {
        // Action terms.
        for i in 0..=k {
            let rest: Vec<usize> = s.iter().enumerate().filter(|(p, _)| *p != i).map(|(_, &x)| x).collect();
            let col = index[rest.as_slice()];
            let act = &module.action()[s[i]];
            let sg = sign(i);
            for a in 0..m {
                for b in 0..m {
                    let v = &act[(a, b)];
                    if !v.is_zero() {
                        out[(t * m + a, col * m + b)] += &sg * v;
                    }
                }
            }
        }
        // Bracket terms.
        for i in 0..=k {
            for j in i + 1..=k {
                let rest: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(p, _)| *p != i && *p != j)
                    .map(|(_, &x)| x)
                    .collect();
                for (c, coef) in g.bracket_basis(s[i], s[j]) {
                    if rest.contains(c) {
                        continue;
                    }
                    let pos = rest.iter().filter(|&&x| x < *c).count();
                    let mut key = rest.clone();
                    key.insert(pos, *c);
                    let col = index[key.as_slice()];
                    let w = sign(i + j + pos) * coef;
                    for a in 0..m {
                        out[(t * m + a, col * m + a)] += &w;
                    }
                }
            }
        }
    }
    out
}

/// Matrix of `δᵏ : C^k → C^{k+1}` on the basis
/// (lexicographic `k`-subset) × (module basis), subset-major.
pub fn ce_differential(module: &GModule, k: usize) -> Result<QMatrix, CEError> {
    module.check_representation()?;
    Ok(differential_unchecked(module, k))
}

/// `(dim Z^k, dim B^k, dim H^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub degree: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

pub fn cohomology_dims(module: &GModule, k: usize) -> Result<CohomologyDims, CEError> {
    module.check_representation()?;
    let d = module.algebra().dim();
    let m = module.dim();
    let ck = cochain_dim(d, m, k);
    let dk = differential_unchecked(module, k);
    let dim_z = ck - if dk.rows() == 0 || dk.cols() == 0 { 0 } else { dk.rank() };
    let dim_b = if k == 0 {
        0
    } else {
        let prev = differential_unchecked(module, k - 1);
        if prev.rows() == 0 || prev.cols() == 0 {
            0
        } else {
            prev.rank()
        }
    };
    Ok(CohomologyDims {
        degree: k,
        dim_z,
        dim_b,
        dim_h: dim_z - dim_b,
    })
}

/// The truncated complex `C⁰ → … → C^{max_degree}`.
#[derive(Clone, Debug)]
pub struct CEComplex {
    module: GModule,
    max_degree: usize,
    differentials: Vec<QMatrix>,
}

impl CEComplex {
    pub const DEFAULT_MAX_DEGREE: usize = 2;

    pub fn new(module: GModule, max_degree: usize) -> Result<Self, CEError> {
        if max_degree < 2 {
            return Err(CEError::MaxDegree);
        }
        module.check_representation()?;
        let differentials = (0..max_degree).map(|k| differential_unchecked(&module, k)).collect();
        Ok(CEComplex {
            module,
            max_degree,
            differentials,
        })
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `δ⁰, …, δ^{max_degree-1}`.
    pub fn differentials(&self) -> &[QMatrix] {
        &self.differentials
    }

    /// Verifies `δ^{k+1} δ^k = 0` for every stored pair.
    pub fn audit(&self) -> Result<(), CEError> {
        for k in 0..self.differentials.len() - 1 {
            let prod = self.differentials[k + 1].mul(&self.differentials[k]);
            if !prod.is_zero() {
                return Err(CEError::NotAComplex { k });
            }
        }
        Ok(())
    }

    /// Dimensions in degree `k < max_degree`.
    pub fn dims(&self, k: usize) -> Result<CohomologyDims, CEError> {
        if k >= self.max_degree {
            return Err(CEError::DegreeOutOfRange {
                k,
                max: self.max_degree,
            });
        }
        let rank = |m: &QMatrix| if m.rows() == 0 || m.cols() == 0 { 0 } else { m.rank() };
        let ck = self.differentials[k].cols();
        let dim_z = ck - rank(&self.differentials[k]);
        let dim_b = if k == 0 { 0 } else { rank(&self.differentials[k - 1]) };
        Ok(CohomologyDims {
            degree: k,
            dim_z,
            dim_b,
            dim_h: dim_z - dim_b,
        })
    }
}

/// First-order deformation data of `𝔤 ⊆ L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub dim_g: usize,
    pub dim_module: usize,
    #[serde(rename = "dim_Z1")]
    pub dim_z1: usize,
    #[serde(rename = "dim_B1")]
    pub dim_b1: usize,
    #[serde(rename = "dim_H1")]
    pub dim_h1: usize,
    pub rigid: bool,
    pub dim_invariants: usize,
}

/// Z¹, B¹ and H¹ of `𝔤` with coefficients in `L/𝔤`; rigid iff `Z¹ = B¹`.
pub fn rigidity_verdict(g: &Subalgebra) -> Result<RigidityReport, CEError> {
    let module = g.quotient_module()?;
    let complex = CEComplex::new(module, CEComplex::DEFAULT_MAX_DEGREE)?;
    complex.audit()?;
    let dims = complex.dims(1)?;
    Ok(RigidityReport {
        dim_g: g.dim(),
        dim_module: complex.module().dim(),
        dim_z1: dims.dim_z,
        dim_b1: dims.dim_b,
        dim_h1: dims.dim_h,
        rigid: dims.dim_z == dims.dim_b,
        dim_invariants: complex.module().invariants_dim(),
    })
}

/// Sign convention for brackets of field families.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketConvention {
    /// `[X, Y] = XY - YX` as derivations.
    Derivation,
    /// `[X_A, X_B] = X_{[A, B]}` for linear fields: the negated derivation
    /// bracket.
    #[default]
    Matrix,
}

impl BracketConvention {
    pub fn bracket(self, x: &PolyVectorField, y: &PolyVectorField) -> Result<PolyVectorField, GeomError> {
        let b = bracket_vf(x, y)?;
        Ok(match self {
            BracketConvention::Derivation => b,
            BracketConvention::Matrix => b.neg(),
        })
    }
}

impl FromStr for BracketConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "derivation" => Ok(BracketConvention::Derivation),
            "matrix" => Ok(BracketConvention::Matrix),
            other => Err(format!(
                "unknown bracket convention `{other}` (expected derivation or matrix)"
            )),
        }
    }
}

impl fmt::Display for BracketConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BracketConvention::Derivation => "derivation",
            BracketConvention::Matrix => "matrix",
        })
    }
}

/// `[X_i, X_j] = Σ_k c_k X_k` with `c_k ∈ ℚ(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyBracket {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<RatFunc>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilyClosure {
    /// Brackets for all pairs `i < j`.
    Closed(Vec<FamilyBracket>),
    /// First pair whose bracket leaves the ℚ(t)-span.
    NotClosed {
        i: usize,
        j: usize,
        bracket: PolyVectorField,
    },
}

impl FamilyClosure {
    pub fn is_closed(&self) -> bool {
        matches!(self, FamilyClosure::Closed(_))
    }

    /// The table at `t = t0`, or `None` if a coefficient has a pole there
    /// or the family is not closed.
    pub fn specialize(&self, t0: &Rational) -> Option<Vec<(usize, usize, Vec<Rational>)>> {
        match self {
            FamilyClosure::Closed(rows) => rows
                .iter()
                .map(|b| {
                    let c = b.coeffs.iter().map(|c| c.eval(t0)).collect::<Option<Vec<_>>>()?;
                    Some((b.i, b.j, c))
                })
                .collect(),
            FamilyClosure::NotClosed { .. } => None,
        }
    }
}

type Key = (usize, Vec<u32>);

/// Coefficients of a field as polynomials in `t`, keyed by
/// `(component, exponents in x)`.
fn t_coefficients(f: &PolyVectorField) -> BTreeMap<Key, Vec<Rational>> {
    let nx = f.n() + 1;
    let mut out: BTreeMap<Key, Vec<Rational>> = BTreeMap::new();
    for (i, c) in f.components().iter().enumerate() {
        for (m, a) in c.terms() {
            let e = m.exponents();
            let td = if c.has_param() { e[nx] as usize } else { 0 };
            let slot = out.entry((i, e[..nx].to_vec())).or_default();
            if slot.len() <= td {
                slot.resize(td + 1, Rational::zero());
            }
            slot[td] += a;
        }
    }
    out
}

/// Expresses each pairwise bracket in the ℚ(t)-span of the generators.
pub fn family_closure_check(
    fields: &[PolyVectorField],
    convention: BracketConvention,
) -> Result<FamilyClosure, CEError> {
    let Some(first) = fields.first() else {
        return Err(CEError::EmptyFamily);
    };
    let param = fields.iter().any(PolyVectorField::has_param);
    let fields: Vec<PolyVectorField> = fields
        .iter()
        .map(|f| {
            if param && !f.has_param() {
                f.with_param()
            } else {
                f.clone()
            }
        })
        .collect();
    if let Some(f) = fields.iter().find(|f| f.n() != first.n()) {
        return Err(GeomError::AmbientMismatch {
            left: first.n(),
            right: f.n(),
        }
        .into());
    }
    let coeffs: Vec<_> = fields.iter().map(t_coefficients).collect();
    let mut keys: Vec<Key> = coeffs.iter().flat_map(|c| c.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let d = fields.len();
    let to_ratfunc = |v: Option<&Vec<Rational>>| {
        v.map_or_else(
            || RatFunc::constant(Rational::zero()),
            |c| RatFunc::from_poly(UPoly::new(c.clone())),
        )
    };
    let a = Mat::from_fn(keys.len(), d, |r, c| to_ratfunc(coeffs[c].get(&keys[r])));
    if rank_ratfunc(&a) < d {
        return Err(CEError::DependentGenerators);
    }
    let mut table = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let br = convention.bracket(&fields[i], &fields[j])?;
            let bc = t_coefficients(&br);
            let outside = bc
                .iter()
                .any(|(k, v)| v.iter().any(|c| !c.is_zero()) && keys.binary_search(k).is_err());
            let solution = if outside {
                None
            } else {
                let b: Vec<RatFunc> = keys.iter().map(|k| to_ratfunc(bc.get(k))).collect();
                a.solve(&b)
            };
            match solution {
                Some(coeffs) => table.push(FamilyBracket { i, j, coeffs }),
                None => return Ok(FamilyClosure::NotClosed { i, j, bracket: br }),
            }
        }
    }
    Ok(FamilyClosure::Closed(table))
}

/// Compares the ℚ(t) table at `t0` with the structure constants of the
/// fiber at `t0` computed over ℚ. Returns `None` when `t0` is not
/// admissible (a pole of the table, or dependent fiber generators).
pub fn specialization_agrees(
    fields: &[PolyVectorField],
    closure: &FamilyClosure,
    convention: BracketConvention,
    t0: &Rational,
) -> Result<Option<bool>, CEError> {
    let fiber: Vec<PolyVectorField> = fields
        .iter()
        .map(|f| {
            if f.has_param() {
                f.specialize_param(t0)
            } else {
                f.clone()
            }
        })
        .collect();
    let names = (0..fiber.len()).map(|i| format!("X{}", i + 1)).collect();
    let fiber_alg = match field_algebra(&fiber, names) {
        Ok(a) => Some(a),
        Err(GeomError::DependentFields) => return Ok(None),
        Err(GeomError::NotClosed { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    match (closure.specialize(t0), fiber_alg) {
        (Some(table), Some(alg)) => {
            let d = fiber.len();
            let agree = table.iter().all(|(i, j, c)| {
                let mut expected = vec![Rational::zero(); d];
                for (k, v) in alg.bracket_basis(*i, *j) {
                    expected[*k] = match convention {
                        BracketConvention::Derivation => v.clone(),
                        BracketConvention::Matrix => -v,
                    };
                }
                &expected == c
            });
            Ok(Some(agree))
        }
        (None, _) if closure.is_closed() => Ok(None),
        (None, None) => Ok(Some(true)),
        _ => Ok(Some(false)),
    }
}
