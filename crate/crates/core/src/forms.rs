//! Polynomial differential forms on `ℂ^{n+1}`: exterior derivative, wedge,
//! contraction, the defining 1-form of a codimension-one distribution
//! spanned by fields modulo Euler, Frobenius integrability and pointwise
//! Kupka classification.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::geom::{GeomError, PolyVectorField, ProjPoint};
use crate::poly::{content_and_primitive, MultiPoly, PolyError};
use crate::qlinalg::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormError {
    #[error("ambient mismatch: ℙ^{left} vs ℙ^{right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("index tuple {0:?} is not strictly increasing or out of range")]
    BadIndex(Vec<usize>),
    #[error("coefficients are not homogeneous of one common degree")]
    NotHomogeneous,
    #[error("a codimension-one form on ℙ^{n} needs {expected} fields, got {got}")]
    FieldCount { n: usize, expected: usize, got: usize },
    #[error("fields are dependent modulo the Euler field everywhere (the contraction vanishes)")]
    ZeroForm,
    #[error("only 1-forms are supported here, got degree {0}")]
    UnsupportedDegree(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `sum_I f_I dx_I` over strictly increasing index tuples `I`.
#[derive(Clone, PartialEq)]
pub struct DiffForm {
    n: usize,
    q: usize,
    coeffs: BTreeMap<Vec<usize>, MultiPoly>,
}

/// Sign of the permutation sorting `v` (entries distinct), or `None` if
/// `v` has a repeated entry.
fn sort_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

impl DiffForm {
    pub fn zero(n: usize, q: usize) -> Self {
        DiffForm {
            n,
            q,
            coeffs: BTreeMap::new(),
        }
    }

    /// `dx_0 ∧ ⋯ ∧ dx_n`.
    pub fn volume(n: usize) -> Self {
        let mut f = Self::zero(n, n + 1);
        f.coeffs.insert((0..=n).collect(), MultiPoly::one(n + 1, false));
        f
    }

    /// Terms may be listed in any index order; they are normalized with the
    /// permutation sign and summed.
    pub fn from_terms(n: usize, q: usize, terms: Vec<(Vec<usize>, MultiPoly)>) -> Result<Self, FormError> {
        let mut f = Self::zero(n, q);
        for (mut idx, c) in terms {
            if idx.len() != q || idx.iter().any(|&i| i > n) || c.nvars() != n + 1 {
                return Err(FormError::BadIndex(idx));
            }
            let Some(s) = sort_sign(&mut idx) else {
                continue;
            };
            f.add_term(idx, &c.scale(&Rational::from_integer(s.into())))?;
        }
        f.check_homogeneous()?;
        Ok(f)
    }

    fn add_term(&mut self, idx: Vec<usize>, c: &MultiPoly) -> Result<(), FormError> {
        if c.is_zero() {
            return Ok(());
        }
        let entry = self
            .coeffs
            .entry(idx.clone())
            .or_insert_with(|| MultiPoly::zero(c.nvars(), c.has_param()));
        *entry = entry.checked_add(c)?;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
        Ok(())
    }

    fn check_homogeneous(&self) -> Result<(), FormError> {
        let mut deg = None;
        for c in self.coeffs.values() {
            let d = c.homogeneous_degree().ok_or(FormError::NotHomogeneous)?;
            if *deg.get_or_insert(d) != d {
                return Err(FormError::NotHomogeneous);
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, MultiPoly> {
        &self.coeffs
    }

    pub fn coefficient(&self, idx: &[usize]) -> MultiPoly {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.n + 1, false))
    }

    /// Common homogeneous degree of the coefficients (`None` when zero).
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.coeffs.values().next().and_then(MultiPoly::homogeneous_degree)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.q);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v.scale(c))).collect();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, FormError> {
        if self.n != other.n || self.q != other.q {
            return Err(FormError::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v)?;
        }
        Ok(out)
    }

    /// Multiplies each coefficient by `p`.
    pub fn mul_poly(&self, p: &MultiPoly) -> Result<Self, FormError> {
        let mut out = Self::zero(self.n, self.q);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), &v.checked_mul(p)?)?;
        }
        Ok(out)
    }

    /// Exact division of every coefficient by `p`; `None` if some
    /// coefficient is not divisible.
    pub fn div_poly(&self, p: &MultiPoly) -> Option<Self> {
        let mut out = Self::zero(self.n, self.q);
        for (k, v) in &self.coeffs {
            out.coeffs.insert(k.clone(), v.div_exact(p)?);
        }
        Some(out)
    }

    /// `d(f dx_I) = Σ_j ∂_j f dx_j ∧ dx_I`.
    pub fn exterior_derivative(&self) -> Self {
        let mut out = Self::zero(self.n, self.q + 1);
        for (idx, f) in &self.coeffs {
            for j in 0..=self.n {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.partial_derivative(j);
                if df.is_zero() {
                    continue;
                }
                let pos = idx.iter().filter(|&&i| i < j).count();
                let mut key = idx.clone();
                key.insert(pos, j);
                let s = if pos % 2 == 0 { 1 } else { -1 };
                out.add_term(key, &df.scale(&Rational::from_integer(s.into())))
                    .expect("coefficients share a ring");
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, FormError> {
        if self.n != other.n {
            return Err(FormError::AmbientMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::zero(self.n, self.q + other.q);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let mut key: Vec<usize> = i.iter().chain(j).copied().collect();
                if let Some(s) = sort_sign(&mut key) {
                    let c = a.checked_mul(b)?.scale(&Rational::from_integer(s.into()));
                    out.add_term(key, &c)?;
                }
            }
        }
        Ok(out)
    }

    /// `i_X(f dx_{i_1} ∧ ⋯ ∧ dx_{i_q}) = Σ_r (-1)^r X_{i_r} f dx_{I∖i_r}`.
    pub fn contract(&self, x: &PolyVectorField) -> Result<Self, FormError> {
        if x.n() != self.n {
            return Err(FormError::AmbientMismatch {
                left: self.n,
                right: x.n(),
            });
        }
        if self.q == 0 {
            return Ok(Self::zero(self.n, 0));
        }
        let mut out = Self::zero(self.n, self.q - 1);
        for (idx, f) in &self.coeffs {
            for (r, &i) in idx.iter().enumerate() {
                let xi = &x.components()[i];
                if xi.is_zero() {
                    continue;
                }
                let mut key = idx.clone();
                key.remove(r);
                let s = if r % 2 == 0 { 1 } else { -1 };
                out.add_term(key, &xi.checked_mul(f)?.scale(&Rational::from_integer(s.into())))?;
            }
        }
        Ok(out)
    }

    /// Coefficient values at a point.
    pub fn eval(&self, p: &[Rational]) -> BTreeMap<Vec<usize>, Rational> {
        self.coeffs
            .iter()
            .map(|(k, v)| (k.clone(), v.eval(p)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }

    pub fn vanishes_at(&self, p: &[Rational]) -> bool {
        self.eval(p).is_empty()
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (t, (idx, c)) in self.coeffs.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            let d: Vec<String> = idx.iter().map(|i| format!("dx{i}")).collect();
            if d.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", d.join("∧"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffForm(ℙ^{}, q={}: {})", self.n, self.q, self)
    }
}

/// Output of [`defining_one_form`].
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningForm {
    /// `i_{X_{n-1}} ⋯ i_{X_1} i_E (dx_0 ∧ ⋯ ∧ dx_n)`.
    pub raw: DiffForm,
    /// Common polynomial factor removed from `raw`.
    pub content: MultiPoly,
    /// `raw / content`.
    pub form: DiffForm,
}

/// Defining 1-form of the distribution spanned by `n - 1` fields on `ℙⁿ`
/// together with the Euler field.
pub fn defining_one_form(fields: &[PolyVectorField]) -> Result<DefiningForm, FormError> {
    let Some(first) = fields.first() else {
        return Err(FormError::FieldCount {
            n: 0,
            expected: 1,
            got: 0,
        });
    };
    let n = first.n();
    if n < 2 || fields.len() != n - 1 {
        return Err(FormError::FieldCount {
            n,
            expected: n.saturating_sub(1),
            got: fields.len(),
        });
    }
    if let Some(f) = fields.iter().find(|f| f.n() != n) {
        return Err(FormError::AmbientMismatch { left: n, right: f.n() });
    }
    if fields.iter().any(PolyVectorField::has_param) {
        return Err(GeomError::Parametric.into());
    }
    let mut raw = DiffForm::volume(n).contract(&PolyVectorField::euler(n))?;
    for x in fields {
        raw = raw.contract(x)?;
    }
    let keys: Vec<Vec<usize>> = raw.coeffs.keys().cloned().collect();
    let polys: Vec<MultiPoly> = raw.coeffs.values().cloned().collect();
    let (content, reduced) = match content_and_primitive(&polys) {
        Ok(r) => r,
        Err(PolyError::AllZero) => return Err(FormError::ZeroForm),
        Err(e) => return Err(e.into()),
    };
    let form = DiffForm {
        n,
        q: 1,
        coeffs: keys.into_iter().zip(reduced).filter(|(_, c)| !c.is_zero()).collect(),
    };
    Ok(DefiningForm { raw, content, form })
}

/// `ω ∧ dω` and whether it vanishes identically.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusReport {
    pub integrable: bool,
    pub residual: DiffForm,
    /// Decomposability is automatic for 1-forms.
    pub plucker_trivial: bool,
}

pub fn frobenius_check(omega: &DiffForm) -> Result<FrobeniusReport, FormError> {
    if omega.q != 1 {
        return Err(FormError::UnsupportedDegree(omega.q));
    }
    let residual = omega.wedge(&omega.exterior_derivative())?;
    Ok(FrobeniusReport {
        integrable: residual.is_zero(),
        residual,
        plucker_trivial: true,
    })
}

/// Generators of the ideal of `Z(ω)`: the nonzero coefficients.
pub fn singular_ideal(omega: &DiffForm) -> Vec<MultiPoly> {
    omega.coeffs.values().cloned().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum KupkaLabel {
    Regular,
    Kupka,
    NonKupkaSingular,
}

impl fmt::Display for KupkaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KupkaLabel::Regular => "REGULAR",
            KupkaLabel::Kupka => "KUPKA",
            KupkaLabel::NonKupkaSingular => "NON-KUPKA-SINGULAR",
        })
    }
}

/// `REGULAR` if `ω(p) ≠ 0`, else `KUPKA` if `dω(p) ≠ 0`, else
/// `NON-KUPKA-SINGULAR`.
pub fn kupka_classify(omega: &DiffForm, points: &[ProjPoint]) -> Result<Vec<KupkaLabel>, FormError> {
    let d_omega = omega.exterior_derivative();
    points
        .iter()
        .map(|p| {
            if p.n() != omega.n {
                return Err(FormError::AmbientMismatch {
                    left: omega.n,
                    right: p.n(),
                });
            }
            Ok(if !omega.vanishes_at(p.coords()) {
                KupkaLabel::Regular
            } else if !d_omega.vanishes_at(p.coords()) {
                KupkaLabel::Kupka
            } else {
                KupkaLabel::NonKupkaSingular
            })
        })
        .collect()
}
