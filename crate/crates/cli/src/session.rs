//! The session document: a single JSON file declaring the base field, the
//! formal symbols and relations, named motives, raw triples and curves, and
//! an ordered list of queries.
//!
//! The format is strict: unknown fields are rejected, names must be unique
//! across all object kinds, and every query must reference a declared
//! object. The schema is published in `schema/session.schema.json` and
//! versioned through the `schema_version` field.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Embedded copy of the published JSON schema.
pub const SCHEMA_JSON: &str = include_str!("../schema/session.schema.json");

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SessionDocument {
    pub schema_version: u32,
    #[serde(default)]
    pub base_field: BaseFieldDecl,
    #[serde(default)]
    pub symbols: Vec<SymbolDecl>,
    #[serde(default)]
    pub relations: Vec<RelationDecl>,
    #[serde(default)]
    pub motives: Vec<MotiveDecl>,
    #[serde(default)]
    pub triples: Vec<TripleDecl>,
    #[serde(default)]
    pub curves: Vec<CurveDecl>,
    pub queries: Vec<QueryDecl>,
}

#[derive(Clone, Debug, PartialEq, Default, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseFieldDecl {
    #[default]
    Rational,
    NumberField {
        /// Coefficients of the monic defining polynomial, low degree first.
        min_poly: Vec<String>,
        generator: String,
    },
}

/// One element of the base field: a rational string like "3/2", or the
/// coordinate vector over the power basis for a number field.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FieldElemDecl {
    Rational(String),
    Coords(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SymbolDecl {
    LogPrime { prime: String },
    LogUnit { name: String, value: FieldElemDecl },
    AbelianPeriod { name: String },
    EllipticLog { name: String },
    User { name: String },
}

/// A triangular rewrite rule: lhs monomial, K-linear right-hand side of
/// strictly smaller monomials.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDecl {
    pub lhs: Vec<(String, u32)>,
    pub rhs: Vec<TermDecl>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TermDecl {
    pub coeff: FieldElemDecl,
    #[serde(default)]
    pub monomial: Vec<(String, u32)>,
}

/// A period scalar: a plain rational, a polynomial, or a fraction.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ScalarDecl {
    Constant(String),
    Terms(Vec<TermDecl>),
    Fraction {
        num: Vec<TermDecl>,
        den: Vec<TermDecl>,
    },
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MotiveDecl {
    pub name: String,
    #[serde(default)]
    pub lattice_rank: usize,
    #[serde(default)]
    pub lattice_torsion: Vec<u64>,
    /// torus_rank × lattice_rank values; the torus rank is the row count.
    #[serde(default)]
    pub torus_values: Vec<Vec<FieldElemDecl>>,
    /// torus_rank × #torsion values of finite order.
    #[serde(default)]
    pub torsion_values: Vec<Vec<FieldElemDecl>>,
    #[serde(default)]
    pub abelian: Option<AbelianDecl>,
    /// One label (or null) per free lattice generator when abelian.
    #[serde(default)]
    pub point_labels: Vec<Option<String>>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AbelianDecl {
    /// Standard genus-1 datum with the Legendre relation, symbols prefixed.
    Elliptic { prefix: String },
    /// Explicit datum; relations are declared in the top-level section.
    Custom {
        genus: usize,
        period_symbols: Vec<Vec<String>>,
        hodge_rows: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDecl {
    pub name: String,
    #[serde(default = "default_side")]
    pub side: String,
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
    pub k_dim: usize,
    pub omega: Vec<Vec<ScalarDecl>>,
    /// When set, the computed invertibility flag must match.
    #[serde(default)]
    pub declared_iso: Option<bool>,
}

fn default_side() -> String {
    "homological".into()
}

/// "inf" (or "O" on elliptic curves) for the point at infinity, an x-value
/// for P¹, or an `[x, y]` pair for an elliptic curve.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum PointDecl {
    Named(String),
    Affine([String; 2]),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDecl {
    pub name: String,
    /// "p1" or "elliptic".
    pub kind: String,
    /// Weierstrass coefficients, required for elliptic curves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    pub punctures: Vec<PointDecl>,
    #[serde(default)]
    pub bound: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum QueryDecl {
    /// Betti-de Rham (side = "bdr", default) or de Rham-Betti ("drb").
    Realize {
        motive: String,
        #[serde(default)]
        side: Option<String>,
    },
    Hom { source: String, target: String },
    Dual { object: String },
    /// Cartier-duality check on a motive: compares the dualized realization
    /// with the realization of the dual motive.
    Cartier { motive: String },
    Tensor { left: String, right: String },
    Twist {
        object: String,
        #[serde(default)]
        q: Option<i64>,
    },
    /// Period cohomology of a triple or of a motive's realization.
    Hphi { object: String },
    Keru { motive: String },
    Biext { left: String, right: String },
    Albanese { curve: String },
    Report {
        curve: String,
        q_min: i64,
        q_max: i64,
    },
    Fullnesscheck { source: String, target: String },
}

/// A validation problem with its location inside the document.
#[derive(Clone, Debug)]
pub struct SchemaError {
    pub location: String,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// Parses and structurally validates a session document. Returns either
/// the document or the list of schema errors with locations.
pub fn parse_session(text: &str) -> Result<SessionDocument, Vec<SchemaError>> {
    let doc: SessionDocument = serde_json::from_str(text).map_err(|e| {
        vec![SchemaError {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        }]
    })?;
    let mut errors = Vec::new();
    if doc.schema_version != SCHEMA_VERSION {
        errors.push(SchemaError {
            location: "schema_version".into(),
            message: format!(
                "unsupported schema version {} (expected {})",
                doc.schema_version, SCHEMA_VERSION
            ),
        });
    }
    // names must be unique across motives, triples and curves
    let mut names: Vec<(&str, &str)> = Vec::new();
    for m in &doc.motives {
        names.push((&m.name, "motives"));
    }
    for t in &doc.triples {
        names.push((&t.name, "triples"));
    }
    for c in &doc.curves {
        names.push((&c.name, "curves"));
    }
    for (i, (name, section)) in names.iter().enumerate() {
        if names[..i].iter().any(|(n, _)| n == name) {
            errors.push(SchemaError {
                location: format!("{section}.{name}"),
                message: format!("duplicate object name `{name}`"),
            });
        }
    }
    // every query must reference a declared object
    let exists = |n: &str| names.iter().any(|(name, _)| *name == n);
    let motive_exists = |n: &str| doc.motives.iter().any(|m| m.name == n);
    let curve_exists = |n: &str| doc.curves.iter().any(|c| c.name == n);
    for (i, q) in doc.queries.iter().enumerate() {
        let mut check = |name: &str, kind: &str, ok: bool| {
            if !ok {
                errors.push(SchemaError {
                    location: format!("queries[{i}]"),
                    message: format!("unknown {kind} `{name}`"),
                });
            }
        };
        match q {
            QueryDecl::Realize { motive, side } => {
                check(motive, "motive", motive_exists(motive));
                if let Some(s) = side {
                    if s != "bdr" && s != "drb" {
                        errors.push(SchemaError {
                            location: format!("queries[{i}].side"),
                            message: format!("side must be \"bdr\" or \"drb\", got `{s}`"),
                        });
                    }
                }
            }
            QueryDecl::Hom { source, target } | QueryDecl::Fullnesscheck { source, target } => {
                check(source, "object", exists(source));
                check(target, "object", exists(target));
            }
            QueryDecl::Dual { object } | QueryDecl::Hphi { object } => {
                check(object, "object", exists(object));
            }
            QueryDecl::Twist { object, .. } => check(object, "object", exists(object)),
            QueryDecl::Cartier { motive } | QueryDecl::Keru { motive } => {
                check(motive, "motive", motive_exists(motive));
            }
            QueryDecl::Tensor { left, right } | QueryDecl::Biext { left, right } => {
                check(left, "object", exists(left));
                check(right, "object", exists(right));
            }
            QueryDecl::Albanese { curve } | QueryDecl::Report { curve, .. } => {
                check(curve, "curve", curve_exists(curve));
            }
        }
    }
    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(errors)
    }
}
