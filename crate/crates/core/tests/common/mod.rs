//! Shared fixtures: seeded random objects and the Whitehead test cases.

#![allow(dead_code)]

use std::sync::Arc;

use liefol_core::catalog::{self, Params};
use liefol_core::cecoh::{rigidity_verdict, CEComplex, RigidityReport};
use liefol_core::geom::PolyVectorField;
use liefol_core::liecore::{
    adjoint_module, invariant_symmetric_form, sl, sl2_sym_power, so_from_form, GModule, LieAlgebra, MatrixLieAlgebra,
    Subalgebra,
};
use liefol_core::poly::MultiPoly;
use liefol_core::qlinalg::{rat, QMatrix, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer matrix of rank at most `rank`, as a product of random factors.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize) -> QMatrix {
    let a = QMatrix::from_fn(rows, rank, |_, _| rat(rng.random_range(-4..=4)));
    let b = QMatrix::from_fn(rank, cols, |_, _| rat(rng.random_range(-4..=4)));
    a.mul(&b)
}

/// Invertible integer matrix: unit lower times unit upper triangular.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> QMatrix {
    let l = QMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => rat(rng.random_range(-3..=3)),
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Less => rat(0),
    });
    let u = QMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => rat(rng.random_range(-3..=3)),
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Greater => rat(0),
    });
    l.mul(&u)
}

/// All exponent vectors of total degree `d` in `nvars` variables.
pub fn monomials(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|a| {
            monomials(nvars - 1, d - a).into_iter().map(move |mut rest| {
                rest.insert(0, a);
                rest
            })
        })
        .collect()
}

/// Sparse random homogeneous polynomial of degree `d`.
pub fn random_homogeneous(rng: &mut impl Rng, nvars: usize, d: u32) -> MultiPoly {
    let mut terms: Vec<(Vec<u32>, Rational)> = Vec::new();
    for m in monomials(nvars, d) {
        if rng.random_bool(0.4) {
            terms.push((m, rat(rng.random_range(-5..=5))));
        }
    }
    let mut p = MultiPoly::zero(nvars, false);
    for (m, c) in terms {
        let mut mono = MultiPoly::constant(c, nvars, false);
        for (i, &e) in m.iter().enumerate() {
            mono = mono.checked_mul(&MultiPoly::var(i, nvars, false).pow(e)).unwrap();
        }
        p = p.checked_add(&mono).unwrap();
    }
    p
}

/// Random field on `ℙⁿ` with homogeneous components of degree `d`.
pub fn random_field(rng: &mut impl Rng, n: usize, d: u32) -> PolyVectorField {
    PolyVectorField::new((0..=n).map(|_| random_homogeneous(rng, n + 1, d)).collect()).unwrap()
}

/// Random integer combination of the given coordinate vectors.
pub fn random_combination(rng: &mut impl Rng, vecs: &[Vec<Rational>]) -> Vec<Rational> {
    let d = vecs[0].len();
    let mut out = vec![rat(0); d];
    for v in vecs {
        let c = rat(rng.random_range(-3..=3));
        for (o, x) in out.iter_mut().zip(v) {
            *o += &c * x;
        }
    }
    out
}

/// A matrix Lie algebra with its nilpotent "upper" and "lower" parts, used
/// to generate inner automorphisms `exp(ad x)`.
pub struct Ambient {
    pub label: &'static str,
    pub matrices: MatrixLieAlgebra,
    pub algebra: Arc<LieAlgebra>,
    pub upper: Vec<Vec<Rational>>,
    pub lower: Vec<Vec<Rational>>,
    /// Template subalgebras, as coordinate rows.
    pub templates: Vec<(&'static str, Vec<Vec<Rational>>)>,
}

impl Ambient {
    fn new(label: &'static str, matrices: MatrixLieAlgebra) -> Self {
        let d = matrices.algebra.dim();
        let unit = |k: usize| (0..d).map(|i| rat((i == k) as i64)).collect::<Vec<_>>();
        let strictly = |m: &QMatrix, upper: bool| {
            let n = m.rows();
            (0..n).all(|i| (0..n).all(|j| if upper { i < j } else { i > j } || m[(i, j)] == rat(0)))
        };
        let upper = (0..d)
            .filter(|&k| strictly(&matrices.matrices[k], true))
            .map(unit)
            .collect();
        let lower = (0..d)
            .filter(|&k| strictly(&matrices.matrices[k], false))
            .map(unit)
            .collect();
        let algebra = Arc::new(matrices.algebra.clone());
        Ambient {
            label,
            matrices,
            algebra,
            upper,
            lower,
            templates: Vec::new(),
        }
    }

    fn coords(&self, m: &QMatrix) -> Vec<Rational> {
        self.matrices.coords_of(m).expect("template matrix lies in the algebra")
    }

    fn template(mut self, name: &'static str, mats: &[QMatrix]) -> Self {
        let rows = mats.iter().map(|m| self.coords(m)).collect();
        self.templates.push((name, rows));
        self
    }

    pub fn full(&self) -> Subalgebra {
        Subalgebra::full(self.algebra.clone())
    }

    /// `exp(ad u) exp(ad l)` for random nilpotent `u`, `l`.
    pub fn random_automorphism(&self, rng: &mut impl Rng) -> QMatrix {
        let u = random_combination(rng, &self.upper);
        let l = random_combination(rng, &self.lower);
        let eu = self.algebra.exp_ad(&u).expect("upper part is nilpotent");
        let el = self.algebra.exp_ad(&l).expect("lower part is nilpotent");
        eu.mul(&el)
    }

    pub fn subalgebra(&self, rows: &[Vec<Rational>]) -> Subalgebra {
        let d = self.algebra.dim();
        Subalgebra::new(self.algebra.clone(), QMatrix::from_rows(rows.to_vec(), d)).unwrap()
    }
}

fn e(n: usize, i: usize, j: usize) -> QMatrix {
    QMatrix::from_fn(n, n, |a, b| rat((a == i && b == j) as i64))
}

pub fn sl2_ambient() -> Ambient {
    let s = sl(2).unwrap();
    let (h, e01, e10) = (s.matrices[0].clone(), e(2, 0, 1), e(2, 1, 0));
    Ambient::new("sl2", s)
        .template("sl2", &[h.clone(), e01.clone(), e10.clone()])
        .template("aff (h, e)", &[h.clone(), e01.clone()])
        .template("cartan (h)", &[h])
        .template("nilpotent (e)", &[e01])
}

pub fn sl3_ambient() -> Ambient {
    let s = sl(3).unwrap();
    let d = |a: i64, b: i64, c: i64| QMatrix::from_fn(3, 3, |i, j| if i != j { rat(0) } else { rat([a, b, c][i]) });
    let add = |x: &QMatrix, y: &QMatrix| x.add(y);
    let root_h = d(1, -1, 0);
    let principal = [
        d(2, 0, -2),
        add(&e(3, 0, 1), &e(3, 1, 2)),
        add(&e(3, 1, 0), &e(3, 2, 1)).scale(&rat(2)),
    ];
    let so3 = [
        e(3, 0, 1).sub(&e(3, 1, 0)),
        e(3, 0, 2).sub(&e(3, 2, 0)),
        e(3, 1, 2).sub(&e(3, 2, 1)),
    ];
    Ambient::new("sl3", s)
        .template("root sl2", &[root_h, e(3, 0, 1), e(3, 1, 0)])
        .template("principal sl2", &principal)
        .template("so3", &so3)
        .template("borel", &[d(1, -1, 0), d(0, 1, -1), e(3, 0, 1), e(3, 0, 2), e(3, 1, 2)])
        .template("gl2 block", &[d(1, -1, 0), d(1, 1, -2), e(3, 0, 1), e(3, 1, 0)])
}

pub fn so5_ambient() -> Ambient {
    let s = sl2_sym_power(4).unwrap();
    let b = invariant_symmetric_form(&[s.h.clone(), s.e.clone(), s.f.clone()]).unwrap();
    let so5 = so_from_form(&b).unwrap();
    Ambient::new("so5", so5)
        .template("principal sl2", &[s.h.clone(), s.e.clone(), s.f.clone()])
        .template("aff (h, e)", &[s.h.clone(), s.e.clone()])
        .template("cartan (h)", std::slice::from_ref(&s.h))
}

pub struct WhiteheadCase {
    pub label: String,
    pub subalgebra: Subalgebra,
    pub semisimple: bool,
    /// Verdict of the unconjugated template.
    pub template: RigidityReport,
}

/// Five seeded random closed subalgebras of `amb`: conjugates of the
/// templates by random inner automorphisms.
pub fn random_closed_subalgebras(amb: &Ambient, seed: u64) -> Vec<WhiteheadCase> {
    let mut r = rng(seed);
    (0..5)
        .map(|k| {
            let (name, rows) = &amb.templates[k % amb.templates.len()];
            let base = amb.subalgebra(rows);
            let auto = amb.random_automorphism(&mut r);
            let sub = base.transformed(&auto).unwrap();
            assert!(sub.closure_check().closed, "conjugate of {name} must be closed");
            let semisimple = sub.structure().unwrap().is_semisimple();
            WhiteheadCase {
                label: format!("{} ⊂ {} (conjugate #{k})", name, amb.label),
                subalgebra: sub,
                semisimple,
                template: rigidity_verdict(&base).unwrap(),
            }
        })
        .collect()
}

/// `H¹(L, L)` for the adjoint module.
pub fn adjoint_h1(amb: &Ambient) -> usize {
    let complex = CEComplex::new(adjoint_module(&amb.algebra), 2).unwrap();
    complex.audit().unwrap();
    complex.dims(1).unwrap().dim_h
}

/// Modules from every construction in the crate, for complex audits.
pub fn constructed_modules() -> Vec<(String, GModule)> {
    let mut out = Vec::new();
    for amb in [sl2_ambient(), sl3_ambient(), so5_ambient()] {
        out.push((format!("adjoint {}", amb.label), adjoint_module(&amb.algebra)));
        for case in random_closed_subalgebras(&amb, 11) {
            out.push((
                format!("L/g for {}", case.label),
                case.subalgebra.quotient_module().unwrap(),
            ));
        }
    }
    for name in ["familia1", "sl2-sym4", "exceptional-p3", "aff-so5-quadric"] {
        let entry = catalog::build(name, &Params::default()).unwrap();
        out.push((
            format!("L/g for catalog {name}"),
            entry.subalgebra.quotient_module().unwrap(),
        ));
    }
    for m in 1..=4 {
        let s = sl2_sym_power(m).unwrap();
        let module = GModule::new(s.sl2.algebra.clone(), vec![s.h.clone(), s.e.clone(), s.f.clone()]).unwrap();
        out.push((format!("Sym^{m} of sl2"), module));
    }
    out
}
