//! Rigidity certificates for Lie subalgebras of vector fields and checks of
//! the foliations they induce, in exact rational arithmetic.
//!
//! * [`qlinalg`] — matrices over ℚ and ℚ(t), rank, kernels, span coordinates.
//! * [`poly`] — multivariate polynomials over ℚ with an optional parameter `t`.
//! * [`liecore`] — Lie algebras by structure constants, subalgebras, modules.
//! * [`cecoh`] — Chevalley–Eilenberg differentials, cohomology, rigidity.
//! * [`geom`] — polynomial vector fields on ℙⁿ, orbits, tangent algebras.
//! * [`forms`] — defining 1-forms, Frobenius integrability, Kupka points.
//! * [`catalog`] — the named worked examples and their expected claims.

pub mod catalog;
pub mod cecoh;
pub mod forms;
pub mod geom;
pub mod liecore;
pub mod poly;
pub mod qlinalg;

pub use catalog::{CatalogEntry, CatalogReport, Claim, ClaimValue, Params, Provenance, Status};
pub use cecoh::{
    ce_differential, cohomology_dims, family_closure_check, rigidity_verdict, BracketConvention, CEComplex,
    CohomologyDims, FamilyClosure, RigidityReport,
};
pub use forms::{defining_one_form, frobenius_check, kupka_classify, DiffForm, KupkaLabel};
pub use geom::{
    bracket_vf, evaluate_mod_euler, generic_orbit_dim, tangent_algebra, PointSampler, PolyVectorField, ProjPoint,
    QuadricModel,
};
pub use liecore::{GModule, LieAlgebra, MatrixLieAlgebra, Subalgebra};
pub use poly::{parse_poly, MultiPoly};
pub use qlinalg::{rat, QMatrix, RatFunc, Rational};
