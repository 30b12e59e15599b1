//! Input documents: a Lie algebra by structure constants, or a family of
//! polynomial vector fields on a projective space or a quadric.

use std::path::Path;

use liefol_core::geom::{PolyVectorField, QuadricModel};
use liefol_core::liecore::LieAlgebra;
use liefol_core::qlinalg::{rat, QMatrix, Rational};
use serde::Deserialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawDocument {
    Structure(RawStructure),
    Fields(RawFields),
}

/// `[i, j, [[k, c], ...]]`: `[e_i, e_j] = Σ c e_k`.
type RawBracket = (usize, usize, Vec<(usize, Value)>);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    dim: usize,
    #[serde(default)]
    names: Option<Vec<String>>,
    brackets: Vec<RawBracket>,
    #[serde(default)]
    subalgebra: Option<RawSubalgebra>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFields {
    ambient: RawAmbient,
    #[serde(default)]
    parameters: Vec<String>,
    fields: Vec<RawField>,
    #[serde(default)]
    subalgebra: Option<RawSubalgebra>,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawAmbient {
    Projective {
        n: usize,
    },
    Quadric {
        #[serde(rename = "B")]
        b: Vec<Vec<Value>>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    name: String,
    components: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSubalgebra {
    Indices(Vec<usize>),
    Rows(Vec<Vec<Value>>),
}

/// A subalgebra given by basis indices or by coefficient rows.
#[derive(Clone, Debug, PartialEq)]
pub enum SubSpec {
    Indices(Vec<usize>),
    Rows(Vec<Vec<Rational>>),
}

impl SubSpec {
    /// `0,2,3` (indices) or `1,0,0;0,1/2,1` (rows separated by `;`).
    pub fn parse(src: &str) -> Result<Self, CliError> {
        let src = src.trim();
        if src.contains(';') || src.contains('/') {
            let rows = src
                .split(';')
                .map(|row| row.split(',').map(|c| parse_rational(c.trim())).collect())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SubSpec::Rows(rows))
        } else {
            let idx = src
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Input(format!("bad subalgebra index `{}`", s.trim())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(SubSpec::Indices(idx))
        }
    }

    /// Basis rows in a space of dimension `dim`.
    pub fn rows(&self, dim: usize) -> Result<Vec<Vec<Rational>>, CliError> {
        match self {
            SubSpec::Indices(idx) => idx
                .iter()
                .map(|&i| {
                    if i >= dim {
                        Err(CliError::Input(format!(
                            "subalgebra index {i} out of range for dimension {dim}"
                        )))
                    } else {
                        Ok((0..dim).map(|k| rat((k == i) as i64)).collect())
                    }
                })
                .collect(),
            SubSpec::Rows(rows) => {
                if let Some(r) = rows.iter().find(|r| r.len() != dim) {
                    return Err(CliError::Input(format!(
                        "subalgebra row has {} entries, expected {dim}",
                        r.len()
                    )));
                }
                Ok(rows.clone())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum AmbientSpec {
    Projective(usize),
    Quadric(QuadricModel),
}

impl AmbientSpec {
    pub fn n(&self) -> usize {
        match self {
            AmbientSpec::Projective(n) => *n,
            AmbientSpec::Quadric(q) => q.n(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            AmbientSpec::Projective(n) => format!("P^{n}"),
            AmbientSpec::Quadric(q) => format!("quadric in P^{}", q.n()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureDoc {
    pub algebra: LieAlgebra,
    pub subalgebra: Option<SubSpec>,
}

#[derive(Clone, Debug)]
pub struct FieldsDoc {
    pub ambient: AmbientSpec,
    pub has_param: bool,
    pub names: Vec<String>,
    pub fields: Vec<PolyVectorField>,
    pub subalgebra: Option<SubSpec>,
}

#[derive(Clone, Debug)]
pub enum Document {
    Structure(StructureDoc),
    Fields(FieldsDoc),
}

/// Integers, or strings holding an integer or a fraction `p/q`.
pub fn parse_rational(src: &str) -> Result<Rational, CliError> {
    src.parse::<Rational>()
        .map_err(|_| CliError::Input(format!("`{src}` is not a rational number (use an integer or p/q)")))
}

fn rational_of(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| CliError::Input(format!("coefficient {n} must be an integer or a \"p/q\" string"))),
        Value::String(s) => parse_rational(s.trim()),
        other => Err(CliError::Input(format!(
            "coefficient {other} must be an integer or a \"p/q\" string"
        ))),
    }
}

fn subspec_of(raw: RawSubalgebra) -> Result<SubSpec, CliError> {
    Ok(match raw {
        RawSubalgebra::Indices(i) => SubSpec::Indices(i),
        RawSubalgebra::Rows(rows) => SubSpec::Rows(
            rows.iter()
                .map(|r| r.iter().map(rational_of).collect())
                .collect::<Result<_, _>>()?,
        ),
    })
}

pub fn load(path: &Path) -> Result<Document, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> Result<Document, CliError> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed input document: {e}")))?;
    match raw {
        RawDocument::Structure(s) => structure(s),
        RawDocument::Fields(f) => fields(f),
    }
}

fn structure(raw: RawStructure) -> Result<Document, CliError> {
    let names = match raw.names {
        Some(n) if n.len() != raw.dim => {
            return Err(CliError::Input(format!(
                "{} names given for dimension {}",
                n.len(),
                raw.dim
            )))
        }
        Some(n) => n,
        None => (0..raw.dim).map(|i| format!("e{i}")).collect(),
    };
    let brackets = raw
        .brackets
        .into_iter()
        .map(|(i, j, terms)| {
            let terms = terms
                .into_iter()
                .map(|(k, c)| Ok((k, rational_of(&c)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok((i, j, terms))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let algebra = LieAlgebra::from_brackets(names, brackets)?;
    let subalgebra = raw.subalgebra.map(subspec_of).transpose()?;
    if let Some(s) = &subalgebra {
        s.rows(raw.dim)?;
    }
    Ok(Document::Structure(StructureDoc { algebra, subalgebra }))
}

fn fields(raw: RawFields) -> Result<Document, CliError> {
    let has_param = match raw.parameters.as_slice() {
        [] => false,
        [t] if t == "t" => true,
        other => {
            return Err(CliError::Input(format!(
                "unsupported parameters {other:?}: only a single parameter \"t\" is allowed"
            )))
        }
    };
    let ambient = match raw.ambient {
        RawAmbient::Projective { n: 0 } => return Err(CliError::Input("projective ambient needs n >= 1".into())),
        RawAmbient::Projective { n } => AmbientSpec::Projective(n),
        RawAmbient::Quadric { b } => {
            let rows = b
                .iter()
                .map(|r| r.iter().map(rational_of).collect())
                .collect::<Result<Vec<Vec<Rational>>, _>>()?;
            let m = rows.len();
            if m < 2 || rows.iter().any(|r| r.len() != m) {
                return Err(CliError::Input(
                    "quadric form B must be a square matrix of size >= 2".into(),
                ));
            }
            AmbientSpec::Quadric(QuadricModel::new(QMatrix::from_rows(rows, m))?)
        }
    };
    let n = ambient.n();
    if raw.fields.is_empty() {
        return Err(CliError::Input("document lists no fields".into()));
    }
    let mut names = Vec::with_capacity(raw.fields.len());
    let mut fields = Vec::with_capacity(raw.fields.len());
    for f in raw.fields {
        let comps: Vec<&str> = f.components.iter().map(String::as_str).collect();
        let field = PolyVectorField::parse(n, has_param, &comps)
            .map_err(|e| CliError::Input(format!("field `{}`: {e}", f.name)))?;
        names.push(f.name);
        fields.push(field);
    }
    let subalgebra = raw.subalgebra.map(subspec_of).transpose()?;
    if let Some(s) = &subalgebra {
        s.rows(fields.len())?;
    }
    Ok(Document::Fields(FieldsDoc {
        ambient,
        has_param,
        names,
        fields,
        subalgebra,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use liefol_core::qlinalg::ratio;

    #[test]
    fn parses_structure_document() {
        let doc = parse_document(
            r#"{"kind": "structure", "dim": 3, "names": ["h", "e", "f"],
                "brackets": [[0, 1, [[1, 2]]], [0, 2, [[2, -2]]], [1, 2, [[0, 1]]]]}"#,
        )
        .unwrap();
        let Document::Structure(s) = doc else {
            panic!("expected a structure document")
        };
        assert_eq!(s.algebra.dim(), 3);
        assert!(s.algebra.validate().is_valid());
    }

    #[test]
    fn parses_fields_with_fraction_rows() {
        let doc = parse_document(
            r#"{"kind": "fields", "ambient": {"type": "projective", "n": 1},
                "fields": [{"name": "A", "components": ["x0", "-1*x1"]},
                           {"name": "B", "components": ["x1", "0"]}],
                "subalgebra": [["1/2", 0]]}"#,
        )
        .unwrap();
        let Document::Fields(f) = doc else {
            panic!("expected a fields document")
        };
        assert_eq!(f.fields.len(), 2);
        assert_eq!(f.subalgebra, Some(SubSpec::Rows(vec![vec![ratio(1, 2), rat(0)]])));
    }

    #[test]
    fn rejects_floats_and_unknown_keys() {
        let float = r#"{"kind": "structure", "dim": 1, "brackets": [[0, 0, [[0, 0.5]]]]}"#;
        assert!(matches!(parse_document(float), Err(CliError::Input(_))));
        let extra = r#"{"kind": "structure", "dim": 1, "brackets": [], "bogus": 1}"#;
        assert!(matches!(parse_document(extra), Err(CliError::Input(_))));
    }

    #[test]
    fn subspec_flag_forms() {
        assert_eq!(SubSpec::parse("0, 2").unwrap(), SubSpec::Indices(vec![0, 2]));
        assert_eq!(SubSpec::parse("1,0;0,1/3").unwrap().rows(2).unwrap()[1][1], ratio(1, 3));
        assert!(SubSpec::Indices(vec![4]).rows(3).is_err());
    }
}
