//! Acceptance suite: one PASS/FAIL line per criterion, each with its time
//! limit. Run with `cargo test -p liefol-core --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    adjoint_h1, constructed_modules, random_closed_subalgebras, random_field, random_matrix, random_unimodular, rng,
};
use common::{sl2_ambient, sl3_ambient, so5_ambient, Ambient};
use liefol_core::catalog::{self, familia1_fields, render_table, Params};
use liefol_core::cecoh::{
    cohomology_dims, family_closure_check, rigidity_verdict, specialization_agrees, BracketConvention, CEComplex,
    FamilyClosure,
};
use liefol_core::forms::{defining_one_form, frobenius_check};
use liefol_core::geom::{
    adjoint_fields, adjoint_kernel_sections, bracket_vf, generic_orbit_dim, random_regular_points, PointSampler,
    PolyVectorField,
};
use liefol_core::qlinalg::{rat, QMatrix};
use rand::Rng;

const SEED: u64 = 0;
const SAMPLES: usize = 25;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn familia1_rigidity() -> Outcome {
    let params = Params {
        n: Some(5),
        t: Some(rat(1)),
        ..Params::default()
    };
    let entry = catalog::build("familia1", &params).map_err(err)?;
    let r = rigidity_verdict(&entry.subalgebra).map_err(err)?;
    ensure(entry.subalgebra.parent().dim() == 35, "L is not 35-dimensional")?;
    ensure(
        r.dim_z1 == 32 && r.dim_b1 == 28,
        format!("dim Z1 = {}, dim B1 = {}", r.dim_z1, r.dim_b1),
    )?;
    let report = catalog::run(&entry).map_err(err)?;
    ensure(report.paper_claims_pass(), "catalog claims do not all pass")?;
    Ok(format!("dim L = 35, dim Z1 = {}, dim B1 = {}", r.dim_z1, r.dim_b1))
}

fn quadric() -> Outcome {
    let entry = catalog::build("aff-so5-quadric", &Params::default()).map_err(err)?;
    let catalog::Ambient::Quadric { model } = &entry.ambient else {
        return Err("entry does not live on a quadric".into());
    };
    let r = rigidity_verdict(&entry.subalgebra).map_err(err)?;
    ensure(r.dim_z1 == 8 && r.dim_b1 == 8 && r.rigid, format!("{r:?}"))?;
    let orbit =
        generic_orbit_dim(&entry.g_fields, &PointSampler::Quadric(model.clone()), SAMPLES, SEED).map_err(err)?;
    ensure(orbit.samples.len() >= SAMPLES, "too few sampled points")?;
    ensure(
        orbit.samples.iter().all(|(p, _)| model.contains(p)),
        "a sampled point is off the quadric",
    )?;
    ensure(orbit.dim == 2, format!("generic orbit dim {}", orbit.dim))?;
    Ok(format!(
        "dim Z1 = dim B1 = 8, rigid, orbit dim 2 over {} points",
        orbit.samples.len()
    ))
}

fn whitehead() -> Outcome {
    let mut semisimple = 0;
    for (amb, seed) in [(sl2_ambient(), 1), (sl3_ambient(), 2), (so5_ambient(), 3)] {
        ensure(amb.algebra.is_semisimple(), format!("{} not semisimple", amb.label))?;
        ensure(adjoint_h1(&amb) == 0, format!("H1({0}, {0}) ≠ 0", amb.label))?;
        for case in random_closed_subalgebras(&amb, seed) {
            if case.semisimple {
                semisimple += 1;
                let r = rigidity_verdict(&case.subalgebra).map_err(err)?;
                ensure(r.dim_h1 == 0, format!("H1 ≠ 0 for {}", case.label))?;
            }
        }
    }
    ensure(semisimple > 0, "no semisimple subalgebra drawn")?;
    Ok(format!(
        "adjoint H1 = 0 for sl2, sl3, so5; L/g H1 = 0 for {semisimple} semisimple g"
    ))
}

fn adjoint_kernel() -> Outcome {
    for n in 2..=4 {
        let fam = adjoint_fields(n).map_err(err)?;
        for p in random_regular_points(n, 10, SEED) {
            let r = adjoint_kernel_sections(&fam, &p).map_err(err)?;
            ensure(r.kernel_dim == n - 1, format!("n = {n}: kernel dim {}", r.kernel_dim))?;
            ensure(
                r.commute && r.independent,
                format!("n = {n}: sections fail at {}", r.point),
            )?;
        }
    }
    Ok("kernel dim n-1, sections commute and are independent, n = 2, 3, 4 x 10 points".into())
}

fn sym4_orbit() -> Outcome {
    let entry = catalog::build("sl2-sym4", &Params::default()).map_err(err)?;
    let orbit = generic_orbit_dim(&entry.g_fields, &PointSampler::Projective { n: 4 }, SAMPLES, SEED).map_err(err)?;
    ensure(orbit.samples.len() == SAMPLES, "wrong number of samples")?;
    let ranks: Vec<usize> = orbit.samples.iter().map(|(_, r)| *r).collect();
    ensure(ranks.iter().all(|&r| r == 3), format!("ranks {ranks:?}"))?;
    Ok(format!("orbit dim 3 at all {SAMPLES} points"))
}

fn exceptional_form() -> Outcome {
    let entry = catalog::build("exceptional-p3", &Params::default()).map_err(err)?;
    let df = defining_one_form(&entry.g_fields).map_err(err)?;
    let omega = &df.form;
    ensure(
        omega.coefficient_degree() == Some(3),
        format!("coefficient degree {:?}", omega.coefficient_degree()),
    )?;
    let n = omega.n();
    ensure(
        omega.contract(&PolyVectorField::euler(n)).map_err(err)?.is_zero(),
        "i_E omega ≠ 0",
    )?;
    for (i, x) in entry.g_fields.iter().enumerate() {
        ensure(
            omega.contract(x).map_err(err)?.is_zero(),
            format!("omega(X{}) ≠ 0", i + 1),
        )?;
    }
    ensure(frobenius_check(omega).map_err(err)?.integrable, "omega ^ d omega ≠ 0")?;
    Ok(format!(
        "omega = {omega}; degree 3, i_E omega = 0, omega(X_i) = 0, omega ^ d omega = 0"
    ))
}

fn family_closure() -> Outcome {
    let fields = familia1_fields(5).map_err(err)?;
    let convention = BracketConvention::Matrix;
    let closure = family_closure_check(&fields, convention).map_err(err)?;
    let FamilyClosure::Closed(rows) = &closure else {
        return Err("family is not closed over Q(t)".into());
    };
    let table = render_table(&rows.iter().map(|b| (b.i, b.j, b.coeffs.clone())).collect::<Vec<_>>());
    let expected = "[X1,X2] = X2; [X1,X3] = t*X2 + X3; [X2,X3] = 0";
    ensure(table == expected, format!("table {table}"))?;
    for t0 in 0..=2 {
        let agrees = specialization_agrees(&fields, &closure, convention, &rat(t0)).map_err(err)?;
        ensure(agrees == Some(true), format!("specialization at t = {t0}: {agrees:?}"))?;
    }
    Ok(format!("{table}; specialization agrees at t = 0, 1, 2"))
}

fn invariance(amb: &Ambient, seed: u64) -> Result<usize, String> {
    let mut r = rng(seed);
    let mut checked = 0;
    for case in random_closed_subalgebras(amb, seed) {
        let base = rigidity_verdict(&case.subalgebra).map_err(err)?;
        let mix = random_unimodular(&mut r, case.subalgebra.dim());
        let rebased = case.subalgebra.rebased(&mix).map_err(err)?;
        ensure(
            rigidity_verdict(&rebased).map_err(err)? == base,
            format!("basis change alters {}", case.label),
        )?;
        let moved = case
            .subalgebra
            .transformed(&amb.random_automorphism(&mut r))
            .map_err(err)?;
        ensure(
            rigidity_verdict(&moved).map_err(err)? == base,
            format!("conjugation alters {}", case.label),
        )?;
        checked += 1;
    }
    Ok(checked)
}

fn properties() -> Outcome {
    let modules = constructed_modules();
    for (label, module) in &modules {
        let complex = CEComplex::new(module.clone(), 3).map_err(err)?;
        complex.audit().map_err(|e| format!("{label}: {e}"))?;
        let b1 = cohomology_dims(module, 1).map_err(err)?.dim_b;
        ensure(
            b1 == module.dim() - module.invariants_dim(),
            format!("{label}: dim B1 = {b1}"),
        )?;
    }
    let mut r = rng(SEED);
    for _ in 0..50 {
        let n = r.random_range(1..=3);
        let mut field = || {
            let d = r.random_range(0..=2);
            random_field(&mut r, n, d)
        };
        let (x, y, z) = (field(), field(), field());
        let b = |u: &PolyVectorField, v: &PolyVectorField| bracket_vf(u, v).map_err(err);
        let jac = b(&x, &b(&y, &z)?)?
            .add(&b(&y, &b(&z, &x)?)?)
            .map_err(err)?
            .add(&b(&z, &b(&x, &y)?)?)
            .map_err(err)?;
        ensure(jac.is_zero(), "Jacobi identity fails for a field triple")?;
    }
    let mut cases = 0;
    for seed in 0..3 {
        cases += invariance(&sl3_ambient(), seed)? + invariance(&so5_ambient(), seed)?;
    }
    for _ in 0..100 {
        let (rows, cols) = (r.random_range(1..=8), r.random_range(1..=8));
        let rank = r.random_range(1..=6);
        let a: QMatrix = random_matrix(&mut r, rows, cols, rank);
        let kernel = a.kernel_basis();
        ensure(a.rank() + kernel.len() == cols, "rank + nullity ≠ cols")?;
        for v in &kernel {
            ensure(
                a.mul_vec(v).iter().all(|x| *x == rat(0)),
                "kernel vector not annihilated",
            )?;
        }
    }
    Ok(format!(
        "δδ = 0 and dim B1 = dim M - dim M^g on {} complexes; 50 Jacobi triples; {cases} invariance cases; 100 rank-nullity matrices",
        modules.len()
    ))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "familia1 rigidity numbers",
            limit: Duration::from_secs(5),
            run: familia1_rigidity,
        },
        Criterion {
            id: 2,
            name: "quadric example",
            limit: Duration::from_secs(5),
            run: quadric,
        },
        Criterion {
            id: 3,
            name: "Whitehead suite",
            limit: Duration::from_secs(30),
            run: whitehead,
        },
        Criterion {
            id: 4,
            name: "adjoint sl_n kernel",
            limit: Duration::from_secs(20),
            run: adjoint_kernel,
        },
        Criterion {
            id: 5,
            name: "sl2-Sym4 orbit dimension",
            limit: Duration::from_secs(5),
            run: sym4_orbit,
        },
        Criterion {
            id: 6,
            name: "exceptional form",
            limit: Duration::from_secs(10),
            run: exceptional_form,
        },
        Criterion {
            id: 7,
            name: "family closure",
            limit: Duration::from_secs(5),
            run: family_closure,
        },
        Criterion {
            id: 8,
            name: "property suites",
            limit: Duration::from_secs(60),
            run: properties,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; exceeded time limit")),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failures += outcome.is_err() as usize;
        println!(
            "{status} {}. {} [{:.2}s / {}s] {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
