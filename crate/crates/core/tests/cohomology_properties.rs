//! Invariants of Lie algebras, modules and Chevalley–Eilenberg complexes.

mod common;

use common::{
    constructed_modules, random_closed_subalgebras, random_unimodular, rng, sl3_ambient, so5_ambient, Ambient,
};
use liefol_core::cecoh::{cohomology_dims, rigidity_verdict, CEComplex};
use liefol_core::liecore::{invariant_symmetric_form, sl, sl2_sym_power, so_from_form};
use liefol_core::qlinalg::rat;
use proptest::prelude::*;

#[test]
fn differentials_compose_to_zero_on_all_constructed_complexes() {
    for (label, module) in constructed_modules() {
        let complex = CEComplex::new(module, 3).unwrap();
        assert!(complex.audit().is_ok(), "δδ ≠ 0 for {label}");
    }
}

#[test]
fn coboundaries_are_module_modulo_invariants() {
    for (label, module) in constructed_modules() {
        let dims = cohomology_dims(&module, 1).unwrap();
        assert_eq!(
            dims.dim_b,
            module.dim() - module.invariants_dim(),
            "dim B1 = dim M - dim M^g fails for {label}"
        );
        let h0 = cohomology_dims(&module, 0).unwrap();
        assert_eq!(h0.dim_h, module.invariants_dim(), "H0 = M^g fails for {label}");
    }
}

#[test]
fn quotient_modules_have_complementary_dimension_and_are_representations() {
    for amb in [sl3_ambient(), so5_ambient()] {
        for case in random_closed_subalgebras(&amb, 5) {
            let m = case.subalgebra.quotient_module().unwrap();
            assert_eq!(m.dim(), amb.algebra.dim() - case.subalgebra.dim());
            m.check_representation().unwrap();
        }
    }
}

#[test]
fn constructors_validate_and_sl_n_is_semisimple() {
    for n in 2..=6 {
        let s = sl(n).unwrap();
        assert!(s.algebra.validate().is_valid(), "sl({n}) valid");
        assert!(s.algebra.is_semisimple(), "sl({n}) semisimple");
    }
    let s = sl2_sym_power(4).unwrap();
    let so5 = so_from_form(&invariant_symmetric_form(&[s.h.clone(), s.e.clone(), s.f.clone()]).unwrap()).unwrap();
    assert_eq!(so5.algebra.dim(), 10);
    assert!(so5.algebra.validate().is_valid() && so5.algebra.is_semisimple());
}

#[test]
fn sym_power_embeddings_preserve_brackets() {
    for m in 1..=6 {
        let s = sl2_sym_power(m).unwrap();
        assert_eq!(s.h.commutator(&s.e), s.e.scale(&rat(2)), "[h,e] = 2e in Sym^{m}");
        assert_eq!(s.h.commutator(&s.f), s.f.scale(&rat(-2)), "[h,f] = -2f in Sym^{m}");
        assert_eq!(s.e.commutator(&s.f), s.h, "[e,f] = h in Sym^{m}");
    }
}

fn check_invariance(amb: &Ambient, seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    for case in random_closed_subalgebras(amb, seed) {
        let base = rigidity_verdict(&case.subalgebra).unwrap();
        // Change of basis inside g.
        let mix = random_unimodular(&mut r, case.subalgebra.dim());
        let rebased = case.subalgebra.rebased(&mix).unwrap();
        prop_assert_eq!(&rigidity_verdict(&rebased).unwrap(), &base);
        // Conjugation by an inner automorphism of L.
        let auto = amb.random_automorphism(&mut r);
        let moved = case.subalgebra.transformed(&auto).unwrap();
        prop_assert!(moved.closure_check().closed);
        prop_assert_eq!(&rigidity_verdict(&moved).unwrap(), &base);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn rigidity_is_invariant_under_basis_change_and_conjugation(seed in any::<u64>()) {
        check_invariance(&sl3_ambient(), seed)?;
        check_invariance(&so5_ambient(), seed)?;
    }

    /// `exp(ad x)` of a nilpotent element is an automorphism.
    #[test]
    fn inner_automorphisms_preserve_brackets(seed in any::<u64>()) {
        let amb = sl3_ambient();
        let mut r = rng(seed);
        let a = amb.random_automorphism(&mut r);
        let d = amb.algebra.dim();
        for i in 0..d {
            for j in 0..d {
                let ei: Vec<_> = (0..d).map(|k| rat((k == i) as i64)).collect();
                let ej: Vec<_> = (0..d).map(|k| rat((k == j) as i64)).collect();
                let lhs = a.mul_vec(&amb.algebra.bracket(&ei, &ej));
                let rhs = amb.algebra.bracket(&a.mul_vec(&ei), &a.mul_vec(&ej));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
