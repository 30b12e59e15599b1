//! First cohomology of semisimple algebras vanishes: adjoint modules of
//! sl2, sl3, so5 and quotient modules L/g of seeded random closed
//! subalgebras g whenever g is semisimple.

mod common;

use common::{adjoint_h1, random_closed_subalgebras, sl2_ambient, sl3_ambient, so5_ambient};
use liefol_core::cecoh::{cohomology_dims, rigidity_verdict, CEComplex};
use liefol_core::liecore::{adjoint_module, sl2_sym_power, GModule};

#[test]
fn adjoint_h1_vanishes_for_sl2_sl3_so5() {
    for amb in [sl2_ambient(), sl3_ambient(), so5_ambient()] {
        assert!(amb.algebra.is_semisimple(), "{} is semisimple", amb.label);
        assert_eq!(adjoint_h1(&amb), 0, "H1({0}, {0})", amb.label);
    }
}

#[test]
fn adjoint_h2_vanishes_for_sl2_sl3() {
    for amb in [sl2_ambient(), sl3_ambient()] {
        let complex = CEComplex::new(adjoint_module(&amb.algebra), 3).unwrap();
        complex.audit().unwrap();
        assert_eq!(complex.dims(2).unwrap().dim_h, 0, "H2({0}, {0})", amb.label);
    }
}

#[test]
fn quotient_h1_vanishes_for_semisimple_subalgebras() {
    for (amb, seed) in [(sl2_ambient(), 1), (sl3_ambient(), 2), (so5_ambient(), 3)] {
        let cases = random_closed_subalgebras(&amb, seed);
        assert_eq!(cases.len(), 5);
        for case in cases {
            let r = rigidity_verdict(&case.subalgebra).unwrap();
            if case.semisimple {
                assert_eq!(r.dim_h1, 0, "H1 must vanish for {}", case.label);
                assert!(r.rigid, "{} must be rigid", case.label);
            }
            assert_eq!(r, case.template, "verdict changes under conjugation for {}", case.label);
        }
    }
}

#[test]
fn some_random_subalgebras_are_semisimple() {
    let semisimple = [(sl3_ambient(), 2), (so5_ambient(), 3)]
        .iter()
        .flat_map(|(amb, seed)| random_closed_subalgebras(amb, *seed))
        .filter(|c| c.semisimple)
        .count();
    assert!(semisimple >= 3, "only {semisimple} semisimple cases drawn");
}

#[test]
fn irreducible_sl2_modules_have_no_first_cohomology() {
    for m in 0..=5 {
        let s = sl2_sym_power(m.max(1)).unwrap();
        let module = if m == 0 {
            GModule::trivial(s.sl2.algebra.clone(), 1)
        } else {
            GModule::new(s.sl2.algebra.clone(), vec![s.h.clone(), s.e.clone(), s.f.clone()]).unwrap()
        };
        assert_eq!(cohomology_dims(&module, 1).unwrap().dim_h, 0, "H1(sl2, V_{m})");
    }
}

#[test]
fn non_semisimple_subalgebras_are_computed_not_assumed_rigid() {
    // The Cartan line of sl2 acts on L/g = span{e, f} with weights ±2.
    let amb = sl2_ambient();
    let h = amb.subalgebra(&amb.templates[2].1);
    let r = rigidity_verdict(&h).unwrap();
    assert_eq!((r.dim_z1, r.dim_b1, r.dim_h1), (2, 2, 0));
    // The Borel of sl3 is solvable: H1 is computed, not asserted to vanish.
    let amb3 = sl3_ambient();
    let borel = amb3.subalgebra(&amb3.templates[3].1);
    assert!(!borel.structure().unwrap().is_semisimple());
    let r = rigidity_verdict(&borel).unwrap();
    assert_eq!(r.dim_b1, r.dim_module - r.dim_invariants);
}
