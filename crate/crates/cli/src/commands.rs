//! One function per subcommand, each turning an input into a [`Report`].

use std::sync::Arc;

use liefol_core::catalog::{self, matrix_of_linear_field, render_table_named, LinearAmbient, Params};
use liefol_core::cecoh::{
    family_closure_check, rigidity_verdict, specialization_agrees, BracketConvention, CEComplex, FamilyClosure,
};
use liefol_core::forms::{defining_one_form, frobenius_check, kupka_classify};
use liefol_core::geom::{
    field_algebra, generic_orbit_dim, tangent_algebra, GeomError, PointSampler, PolyVectorField, ProjPoint,
};
use liefol_core::liecore::{adjoint_module, so_from_form, GModule, LieAlgebra, Subalgebra};
use liefol_core::poly::MultiPoly;
use liefol_core::qlinalg::{QMatrix, Rational};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::input::{AmbientSpec, Document, FieldsDoc, SubSpec};
use crate::report::Report;

/// Short descriptions for `catalog list`, in catalog order.
pub const CATALOG_DESCRIPTIONS: [(&str, &str, &str); 6] = [
    (
        "familia1",
        "--n (>= 5, default 5) --t (default 1)",
        "three-field family on P^n inside sl(n+1): Z1/B1 and the bracket table over Q(t)",
    ),
    (
        "sl2-sym4",
        "--seed --samples",
        "sl2 acting on P^4 through Sym^4: orbit dimension, rigidity, maximality",
    ),
    (
        "exceptional-p3",
        "(none)",
        "aff(C) fields restricted to the hyperplane x4 = 0: defining 1-form on P^3, Frobenius, Kupka points",
    ),
    (
        "aff-so5-quadric",
        "--seed --samples",
        "aff(C) inside so5 on the Sym^4-invariant quadric: Z1/B1 and orbit dimension",
    ),
    (
        "adjoint-sln",
        "--n (>= 2, default 3) --seed",
        "adjoint action of sl_n on P(sl_n): pointwise kernels of the anchor map",
    ),
    ("codigoM2", "(none)", "familia1 at n = 5, t = 1 as a standalone entry"),
];

/// `L`, `𝔤 ⊆ L`, and both as fields when the input has fields.
struct Roles {
    l_label: String,
    l_fields: Vec<PolyVectorField>,
    g_fields: Vec<PolyVectorField>,
    sub: Subalgebra,
}

fn specialized(doc: &FieldsDoc, t: Option<&Rational>) -> Result<Vec<PolyVectorField>, CliError> {
    match (doc.has_param, t) {
        (true, Some(t0)) => Ok(doc.fields.iter().map(|f| f.specialize_param(t0)).collect()),
        (true, None) => Err(CliError::Input("the fields depend on t; pass --t <value>".into())),
        (false, Some(_)) => Err(CliError::Input(
            "--t given but the document declares no parameter".into(),
        )),
        (false, None) => Ok(doc.fields.clone()),
    }
}

fn combination(fields: &[PolyVectorField], row: &[Rational]) -> Result<PolyVectorField, CliError> {
    let first = &fields[0];
    let mut acc = PolyVectorField::zero(first.n(), first.has_param());
    for (f, c) in fields.iter().zip(row) {
        acc = acc.add(&f.scale(c))?;
    }
    Ok(acc)
}

fn require_closed(sub: &Subalgebra) -> Result<(), CliError> {
    let check = sub.closure_check();
    match check.witness {
        Some(w) if !check.closed => Err(CliError::Input(format!(
            "the subalgebra is not closed under the bracket: [b{}, b{}] leaves its span",
            w.i, w.j
        ))),
        _ => Ok(()),
    }
}

fn require_valid(alg: &LieAlgebra) -> Result<(), CliError> {
    if alg.validate().is_valid() {
        Ok(())
    } else {
        Err(CliError::Input(
            "the structure constants do not define a Lie algebra (run `liefol validate`)".into(),
        ))
    }
}

fn ambient_algebra(ambient: &AmbientSpec) -> Result<(LinearAmbient, String), CliError> {
    Ok(match ambient {
        AmbientSpec::Projective(n) => (
            LinearAmbient::sl(n + 1)?,
            format!("sl({}) as linear fields on P^{n}", n + 1),
        ),
        AmbientSpec::Quadric(q) => (
            LinearAmbient::from_matrices(so_from_form(q.form())?)?,
            format!("so(B) as linear fields on the quadric in P^{}", q.n()),
        ),
    })
}

fn roles(doc: &Document, sub_flag: Option<&SubSpec>, t: Option<&Rational>) -> Result<Roles, CliError> {
    match doc {
        Document::Structure(s) => {
            if t.is_some() {
                return Err(CliError::Input(
                    "--t applies only to field documents with a parameter".into(),
                ));
            }
            let spec = sub_flag.or(s.subalgebra.as_ref()).ok_or_else(|| {
                CliError::Input("structure documents need a subalgebra (document key or --subalgebra)".into())
            })?;
            require_valid(&s.algebra)?;
            let d = s.algebra.dim();
            let sub = Subalgebra::new(Arc::new(s.algebra.clone()), QMatrix::from_rows(spec.rows(d)?, d))?;
            require_closed(&sub)?;
            Ok(Roles {
                l_label: "structure constants".into(),
                l_fields: Vec::new(),
                g_fields: Vec::new(),
                sub,
            })
        }
        Document::Fields(f) => {
            let fields = specialized(f, t)?;
            if let Some(spec) = sub_flag.or(f.subalgebra.as_ref()) {
                let l = field_algebra(&fields, f.names.clone())?;
                let d = l.dim();
                let rows = spec.rows(d)?;
                let g_fields = rows.iter().map(|r| combination(&fields, r)).collect::<Result<_, _>>()?;
                let sub = Subalgebra::new(Arc::new(l), QMatrix::from_rows(rows, d))?;
                require_closed(&sub)?;
                Ok(Roles {
                    l_label: "span of the input fields".into(),
                    l_fields: fields,
                    g_fields,
                    sub,
                })
            } else {
                let (amb, label) = ambient_algebra(&f.ambient)?;
                let mats = fields
                    .iter()
                    .zip(&f.names)
                    .map(|(x, name)| {
                        matrix_of_linear_field(x).map_err(|_| {
                            CliError::Input(format!(
                                "field `{name}` is not linear; give a subalgebra to use the span of the fields as L"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let sub = amb.subalgebra(&mats).map_err(|e| match e {
                    GeomError::NotInSpan { index } => {
                        CliError::Input(format!("field `{}` does not lie in {label}", f.names[index]))
                    }
                    other => other.into(),
                })?;
                require_closed(&sub)?;
                Ok(Roles {
                    l_label: label,
                    l_fields: amb.fields,
                    g_fields: fields,
                    sub,
                })
            }
        }
    }
}

fn fields_doc<'a>(doc: &'a Document, command: &str) -> Result<&'a FieldsDoc, CliError> {
    match doc {
        Document::Fields(f) => Ok(f),
        Document::Structure(_) => Err(CliError::Input(format!("`{command}` needs a fields document"))),
    }
}

/// The fields spanning `𝔤`: the selected combinations, or all fields.
fn g_fields_only(
    doc: &FieldsDoc,
    sub_flag: Option<&SubSpec>,
    t: Option<&Rational>,
) -> Result<Vec<PolyVectorField>, CliError> {
    let fields = specialized(doc, t)?;
    match sub_flag.or(doc.subalgebra.as_ref()) {
        Some(spec) => spec
            .rows(fields.len())?
            .iter()
            .map(|r| combination(&fields, r))
            .collect(),
        None => Ok(fields),
    }
}

fn sampler(ambient: &AmbientSpec) -> PointSampler {
    match ambient {
        AmbientSpec::Projective(n) => PointSampler::Projective { n: *n },
        AmbientSpec::Quadric(q) => PointSampler::Quadric(q.clone()),
    }
}

fn quadric_poly(b: &QMatrix, has_param: bool) -> Result<MultiPoly, CliError> {
    let m = b.rows();
    let mut q = MultiPoly::zero(m, has_param);
    for i in 0..m {
        for j in 0..m {
            let term = MultiPoly::var(i, m, has_param)
                .checked_mul(&MultiPoly::var(j, m, has_param))
                .map_err(|e| CliError::Internal(e.to_string()))?
                .scale(&b[(i, j)]);
            q = q.checked_add(&term).map_err(|e| CliError::Internal(e.to_string()))?;
        }
    }
    Ok(q)
}

pub fn validate(doc: &Document, command: &str) -> Result<Report, CliError> {
    let mut rep = Report::new(command);
    match doc {
        Document::Structure(s) => {
            let alg = &s.algebra;
            rep.set("kind", "structure");
            rep.set("dim", alg.dim());
            rep.set("names", json!(alg.names()));
            let v = alg.validate();
            let name = |i: usize| alg.names()[i].clone();
            let vec_text = |v: &[Rational]| -> String {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(", "))
            };
            let anti: Vec<Value> = v
                .antisymmetry
                .iter()
                .map(|(i, j, r)| format!("[{0},{1}] + [{1},{0}] = {2}", name(*i), name(*j), vec_text(r)).into())
                .collect();
            let jac: Vec<Value> = v
                .jacobi
                .iter()
                .map(|(i, j, k, r)| {
                    format!(
                        "({}, {}, {}): cyclic sum = {}",
                        name(*i),
                        name(*j),
                        name(*k),
                        vec_text(r)
                    )
                    .into()
                })
                .collect();
            rep.set("antisymmetry violations", anti);
            rep.set("jacobi violations", jac);
            rep.check("antisymmetry", v.antisymmetry.is_empty());
            rep.check("jacobi identity", v.jacobi.is_empty());
            if v.is_valid() {
                rep.set("semisimple (Killing form nondegenerate)", alg.is_semisimple());
                rep.check(
                    "adjoint representation law",
                    adjoint_module(alg).check_representation().is_ok(),
                );
                if let Some(spec) = &s.subalgebra {
                    let d = alg.dim();
                    let sub = Subalgebra::new(Arc::new(alg.clone()), QMatrix::from_rows(spec.rows(d)?, d))?;
                    let check = sub.closure_check();
                    rep.set("subalgebra dim", sub.dim());
                    if let Some(w) = &check.witness {
                        rep.set(
                            "closure witness",
                            format!(
                                "[b{}, b{}] has residual {} off the span",
                                w.i,
                                w.j,
                                vec_text(&w.residual)
                            ),
                        );
                    }
                    rep.check("subalgebra closed under the bracket", check.closed);
                }
            }
        }
        Document::Fields(f) => {
            rep.set("kind", "fields");
            rep.set("ambient", f.ambient.label());
            rep.set("parameter t", f.has_param);
            let degrees: serde_json::Map<String, Value> = f
                .names
                .iter()
                .zip(&f.fields)
                .map(|(n, x)| (n.clone(), x.degree().map_or(Value::Null, Value::from)))
                .collect();
            rep.set("field degrees", degrees);
            if let AmbientSpec::Quadric(model) = &f.ambient {
                let q = quadric_poly(model.form(), f.has_param)?;
                let mut tangent = true;
                for x in &f.fields {
                    let xq = x.apply(&q)?;
                    tangent &= xq.is_zero() || xq.div_exact(&q).is_some();
                }
                rep.check("fields tangent to the quadric", tangent);
            }
            if f.has_param {
                match family_closure_check(&f.fields, BracketConvention::default()) {
                    Ok(c) => rep.check("fields span a Lie algebra over Q(t)", c.is_closed()),
                    Err(e) => {
                        rep.set("span", e.to_string());
                        rep.check("fields span a Lie algebra over Q(t)", false);
                    }
                }
            } else {
                let span = field_algebra(&f.fields, f.names.clone());
                match &span {
                    Ok(l) => rep.set("span dim", l.dim()),
                    Err(e) => rep.set("span", e.to_string()),
                }
                if let Some(spec) = &f.subalgebra {
                    rep.check("fields span a Lie algebra", span.is_ok());
                    if let Ok(l) = span {
                        let d = l.dim();
                        let sub = Subalgebra::new(Arc::new(l), QMatrix::from_rows(spec.rows(d)?, d))?;
                        rep.set("subalgebra dim", sub.dim());
                        rep.check("subalgebra closed under the bracket", sub.closure_check().closed);
                    }
                }
            }
        }
    }
    Ok(rep)
}

pub fn rigidity(
    doc: &Document,
    sub: Option<&SubSpec>,
    t: Option<&Rational>,
    command: &str,
) -> Result<Report, CliError> {
    let roles = roles(doc, sub, t)?;
    let r = rigidity_verdict(&roles.sub)?;
    let mut rep = Report::new(command);
    rep.set("L", roles.l_label);
    rep.set("dim L", roles.sub.parent().dim());
    rep.set("dim g", r.dim_g);
    rep.set("dim L/g", r.dim_module);
    rep.set("dim Z1", r.dim_z1);
    rep.set("dim B1", r.dim_b1);
    rep.set("dim H1", r.dim_h1);
    rep.set("rigid", r.rigid);
    rep.set("dim (L/g)^g", r.dim_invariants);
    rep.notes.push("rigid means dim Z1(g, L/g) = dim B1(g, L/g)".into());
    Ok(rep)
}

pub fn cohomology(
    doc: &Document,
    sub: Option<&SubSpec>,
    t: Option<&Rational>,
    degree: usize,
    command: &str,
) -> Result<Report, CliError> {
    let has_sub = match doc {
        Document::Structure(s) => sub.or(s.subalgebra.as_ref()).is_some(),
        Document::Fields(f) => sub.or(f.subalgebra.as_ref()).is_some(),
    };
    let (label, module): (String, GModule) = match doc {
        Document::Structure(s) if !has_sub => {
            if t.is_some() {
                return Err(CliError::Input(
                    "--t applies only to field documents with a parameter".into(),
                ));
            }
            require_valid(&s.algebra)?;
            ("adjoint module of L".into(), adjoint_module(&s.algebra))
        }
        _ => {
            let roles = roles(doc, sub, t)?;
            (format!("L/g with L = {}", roles.l_label), roles.sub.quotient_module()?)
        }
    };
    let algebra_dim = module.algebra().dim();
    let module_dim = module.dim();
    let complex = CEComplex::new(module, (degree + 2).max(CEComplex::DEFAULT_MAX_DEGREE))?;
    complex.audit()?;
    let dims = complex.dims(degree)?;
    let mut rep = Report::new(command);
    rep.set("module", label);
    rep.set("dim algebra", algebra_dim);
    rep.set("dim module", module_dim);
    rep.set("degree", degree);
    rep.set(&format!("dim Z{degree}"), dims.dim_z);
    rep.set(&format!("dim B{degree}"), dims.dim_b);
    rep.set(&format!("dim H{degree}"), dims.dim_h);
    rep.check("consecutive differentials compose to zero", true);
    Ok(rep)
}

pub fn orbit_dim(
    doc: &Document,
    sub: Option<&SubSpec>,
    t: Option<&Rational>,
    samples: usize,
    seed: u64,
    command: &str,
) -> Result<Report, CliError> {
    let f = fields_doc(doc, "orbit-dim")?;
    let g = g_fields_only(f, sub, t)?;
    let orbit = generic_orbit_dim(&g, &sampler(&f.ambient), samples, seed)?;
    let mut rep = Report::new(command);
    rep.seed = Some(seed);
    rep.samples = Some(samples);
    rep.set("ambient", f.ambient.label());
    rep.set("fields", g.len());
    rep.set("generic orbit dim", orbit.dim);
    let log: Vec<Value> = orbit
        .samples
        .iter()
        .map(|(p, r)| json!({"point": p.to_string(), "rank": r}))
        .collect();
    rep.set("sample log", log);
    rep.notes
        .push("ranks are taken modulo the Euler field; the maximum over the samples is reported".into());
    Ok(rep)
}

pub fn maximality(
    doc: &Document,
    sub: Option<&SubSpec>,
    t: Option<&Rational>,
    samples: usize,
    seed: u64,
    command: &str,
) -> Result<Report, CliError> {
    let f = fields_doc(doc, "maximality")?;
    let roles = roles(doc, sub, t)?;
    let ta = tangent_algebra(&roles.l_fields, &roles.g_fields, &sampler(&f.ambient), samples, seed)?;
    let mut rep = Report::new(command);
    rep.seed = Some(seed);
    rep.samples = Some(samples);
    rep.set("L", roles.l_label);
    rep.set("dim L", roles.l_fields.len());
    rep.set("dim g", ta.g_dim());
    rep.set("tangent algebra dim", ta.dim());
    rep.set("dims after each point", json!(ta.dims));
    rep.set("stabilized", ta.stabilized);
    let verdict = match (ta.maximal(), ta.stabilized) {
        (true, _) => "maximal",
        (false, true) => "not maximal",
        (false, false) => "indeterminate (not stabilized; increase --samples)",
    };
    rep.set("verdict", verdict);
    rep.notes.push(format!(
        "maximality is probabilistic: necessary conditions at {samples} seeded points (seed {seed})"
    ));
    Ok(rep)
}

pub fn family_check(
    doc: &Document,
    convention: BracketConvention,
    at: &[Rational],
    command: &str,
) -> Result<Report, CliError> {
    let f = fields_doc(doc, "family-check")?;
    let closure = family_closure_check(&f.fields, convention)?;
    let mut rep = Report::new(command);
    rep.set("convention", convention.to_string());
    rep.set("generators", json!(f.names));
    match &closure {
        FamilyClosure::Closed(rows) => {
            let rows: Vec<_> = rows.iter().map(|b| (b.i, b.j, b.coeffs.clone())).collect();
            rep.set("table", render_table_named(&rows, &f.names));
        }
        FamilyClosure::NotClosed { i, j, bracket } => {
            rep.set("witness", format!("[{},{}] = {bracket}", f.names[*i], f.names[*j]));
        }
    }
    let over = if f.has_param { "Q(t)" } else { "Q" };
    rep.check(&format!("bracket-closed over {over}"), closure.is_closed());
    if closure.is_closed() && f.has_param {
        for t0 in at {
            let name = format!("specialization commutes with closure at t={t0}");
            match specialization_agrees(&f.fields, &closure, convention, t0)? {
                Some(ok) => rep.check(&name, ok),
                None => rep.undecided(&name, "not admissible"),
            }
        }
    }
    match convention {
        BracketConvention::Matrix => rep
            .notes
            .push("matrix convention: [X_A, X_B] = X_[A,B] for linear fields".into()),
        BracketConvention::Derivation => rep.notes.push("derivation convention: [X, Y] = XY - YX".into()),
    }
    Ok(rep)
}

pub fn form(
    doc: &Document,
    sub: Option<&SubSpec>,
    t: Option<&Rational>,
    frobenius: bool,
    kupka: &[ProjPoint],
    command: &str,
) -> Result<Report, CliError> {
    let f = fields_doc(doc, "form")?;
    let g = g_fields_only(f, sub, t)?;
    let df = defining_one_form(&g)?;
    let mut rep = Report::new(command);
    let n = g[0].n();
    rep.set("ambient", format!("P^{n}"));
    rep.set("omega", df.form.to_string());
    rep.set(
        "coefficient degree",
        df.form.coefficient_degree().map_or(Value::Null, Value::from),
    );
    rep.set("removed content", df.content.to_string());
    rep.check("i_E omega = 0", df.form.contract(&PolyVectorField::euler(n))?.is_zero());
    let mut annihilates = true;
    for x in &g {
        annihilates &= df.form.contract(x)?.is_zero();
    }
    rep.check("omega(X_i) = 0", annihilates);
    if frobenius {
        let fr = frobenius_check(&df.form)?;
        if !fr.integrable {
            rep.set("omega ^ d omega", fr.residual.to_string());
        }
        rep.check("frobenius (omega ^ d omega = 0)", fr.integrable);
    }
    if !kupka.is_empty() {
        let labels = kupka_classify(&df.form, kupka)?;
        let rows: Vec<Value> = kupka
            .iter()
            .zip(&labels)
            .map(|(p, l)| json!({"point": p.to_string(), "label": l.to_string()}))
            .collect();
        rep.set("kupka", rows);
    }
    Ok(rep)
}

pub fn catalog_list(command: &str) -> Report {
    let mut rep = Report::new(command);
    let entries: Vec<Value> = catalog::NAMES
        .iter()
        .map(|name| {
            let (_, params, desc) = CATALOG_DESCRIPTIONS
                .iter()
                .find(|(n, _, _)| n == name)
                .expect("every catalog name is described");
            json!({"name": name, "params": params, "description": desc})
        })
        .collect();
    rep.set("entries", entries);
    rep
}

pub fn catalog_run(name: &str, params: &Params, command: &str) -> Result<Report, CliError> {
    let r = catalog::build_and_run(name, params)?;
    Ok(Report::from_catalog(command, &r))
}

/// Runs every entry concurrently with its default parameters; the result
/// order is the catalog order regardless of completion order.
pub fn catalog_run_all(params: &Params, command: &str) -> Vec<Result<Report, CliError>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = catalog::NAMES
            .iter()
            .map(|name| s.spawn(move || catalog_run(name, params, command)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(CliError::Internal("catalog worker panicked".into())))
            })
            .collect()
    })
}
