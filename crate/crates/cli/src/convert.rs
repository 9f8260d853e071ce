//! Conversion of a parsed session document into core objects: the base
//! field, the frozen symbol registry, and the named motives, triples and
//! curves. Every conversion failure is reported as a schema error with the
//! location of the offending declaration.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num::BigRational;

use permotive::albanese::{CurveModel, EcPoint, P1Point};
use permotive::numfield::{FieldElem, FieldMatrix, NumberField};
use permotive::onemotive::{prepare_registry, AbelianDatum, OneMotive};
use permotive::perimod::{PeriodTriple, Side};
use permotive::periodring::{Monomial, PeriodMatrix, PeriodScalar, Poly, SymbolRegistry};

use crate::session::{
    AbelianDecl, BaseFieldDecl, CurveDecl, FieldElemDecl, MotiveDecl, PointDecl, ScalarDecl,
    SchemaError, SessionDocument, SymbolDecl, TermDecl, TripleDecl,
};

/// The session after all declarations are built and the registry is frozen.
pub struct ResolvedSession {
    pub field: Arc<NumberField>,
    pub registry: Arc<SymbolRegistry>,
    pub motives: BTreeMap<String, OneMotive>,
    pub triples: BTreeMap<String, PeriodTriple>,
    pub curves: BTreeMap<String, CurveModel>,
    /// Declared multiplicative-basis values, for the exponent solvers.
    pub units: Vec<FieldElem>,
}

fn err(location: impl Into<String>, message: impl Into<String>) -> Vec<SchemaError> {
    vec![SchemaError {
        location: location.into(),
        message: message.into(),
    }]
}

fn parse_rational(s: &str, location: &str) -> Result<BigRational, Vec<SchemaError>> {
    BigRational::from_str(s.trim())
        .map_err(|e| err(location, format!("cannot parse rational `{s}`: {e}")))
}

fn parse_field_elem(
    decl: &FieldElemDecl,
    field: &Arc<NumberField>,
    location: &str,
) -> Result<FieldElem, Vec<SchemaError>> {
    match decl {
        FieldElemDecl::Rational(s) => Ok(field.from_rational(parse_rational(s, location)?)),
        FieldElemDecl::Coords(coords) => {
            let mut parsed = Vec::with_capacity(coords.len());
            for (i, c) in coords.iter().enumerate() {
                parsed.push(parse_rational(c, &format!("{location}[{i}]"))?);
            }
            field
                .from_coords(parsed)
                .map_err(|e| err(location, e.to_string()))
        }
    }
}

/// Parsing freezes the symbol registry: declared symbols first (document
/// order), then everything the motives need, then the declared relations.
pub fn resolve(doc: &SessionDocument) -> Result<ResolvedSession, Vec<SchemaError>> {
    let field = match &doc.base_field {
        BaseFieldDecl::Rational => NumberField::rationals(),
        BaseFieldDecl::NumberField { min_poly, generator } => {
            let coeffs = min_poly
                .iter()
                .enumerate()
                .map(|(i, c)| parse_rational(c, &format!("base_field.min_poly[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            NumberField::extension(coeffs, generator)
                .map_err(|e| err("base_field", e.to_string()))?
        }
    };

    let mut builder = SymbolRegistry::new(field.clone());
    let mut units = Vec::new();
    for (i, decl) in doc.symbols.iter().enumerate() {
        let location = format!("symbols[{i}]");
        match decl {
            SymbolDecl::LogPrime { prime } => {
                let p = parse_rational(prime, &location)?;
                if !p.is_integer() {
                    return Err(err(location, "prime must be an integer"));
                }
                builder
                    .register_log_prime(p.to_integer())
                    .map_err(|e| err(&location, e.to_string()))?;
            }
            SymbolDecl::LogUnit { name, value } => {
                let v = parse_field_elem(value, &field, &location)?;
                builder
                    .declare_log_unit(name, v.clone())
                    .map_err(|e| err(&location, e.to_string()))?;
                units.push(v);
            }
            SymbolDecl::AbelianPeriod { name } => {
                builder
                    .register_abelian_period(name)
                    .map_err(|e| err(&location, e.to_string()))?;
            }
            SymbolDecl::EllipticLog { name } => {
                builder
                    .register_elliptic_log(name)
                    .map_err(|e| err(&location, e.to_string()))?;
            }
            SymbolDecl::User { name } => {
                builder
                    .register_user_symbol(name)
                    .map_err(|e| err(&location, e.to_string()))?;
            }
        }
    }

    // motives first pass: build objects so the registry can be prepared
    let mut motives = BTreeMap::new();
    for decl in &doc.motives {
        let location = format!("motives.{}", decl.name);
        let motive = build_motive(decl, &field, &location)?;
        prepare_registry(&mut builder, &motive).map_err(|e| err(&location, e.to_string()))?;
        motives.insert(decl.name.clone(), motive);
    }

    for (i, rel) in doc.relations.iter().enumerate() {
        let location = format!("relations[{i}]");
        let to_monomial = |pairs: &[(String, u32)]| -> Result<Monomial, Vec<SchemaError>> {
            let mut ids = Vec::new();
            for (name, e) in pairs {
                let id = builder
                    .lookup(name)
                    .ok_or_else(|| err(&location, format!("unknown symbol `{name}`")))?;
                ids.push((id, *e));
            }
            Ok(Monomial::from_pairs(&ids))
        };
        let lhs = to_monomial(&rel.lhs)?;
        let mut rhs = Vec::new();
        for term in &rel.rhs {
            let coeff = parse_field_elem(&term.coeff, &field, &location)?;
            rhs.push((coeff, to_monomial(&term.monomial)?));
        }
        builder
            .add_relation(lhs, rhs)
            .map_err(|e| err(&location, e.to_string()))?;
    }

    let registry = builder
        .freeze()
        .map_err(|e| err("relations", e.to_string()))?;

    let mut triples = BTreeMap::new();
    for decl in &doc.triples {
        let location = format!("triples.{}", decl.name);
        triples.insert(decl.name.clone(), build_triple(decl, &registry, &location)?);
    }

    let mut curves = BTreeMap::new();
    for decl in &doc.curves {
        let location = format!("curves.{}", decl.name);
        curves.insert(decl.name.clone(), build_curve(decl, &location)?);
    }

    Ok(ResolvedSession {
        field,
        registry,
        motives,
        triples,
        curves,
        units,
    })
}

fn build_motive(
    decl: &MotiveDecl,
    field: &Arc<NumberField>,
    location: &str,
) -> Result<OneMotive, Vec<SchemaError>> {
    let torus_rank = decl.torus_values.len();
    let parse_matrix = |rows: &[Vec<FieldElemDecl>],
                        cols: usize,
                        what: &str|
     -> Result<FieldMatrix, Vec<SchemaError>> {
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(err(
                    format!("{location}.{what}[{r}]"),
                    format!("expected {cols} entries, got {}", row.len()),
                ));
            }
            for (c, v) in row.iter().enumerate() {
                entries.push(parse_field_elem(
                    v,
                    field,
                    &format!("{location}.{what}[{r}][{c}]"),
                )?);
            }
        }
        Ok(FieldMatrix::from_fn(field, rows.len(), cols, |r, c| {
            entries[r * cols + c].clone()
        }))
    };
    let u_torus = parse_matrix(&decl.torus_values, decl.lattice_rank, "torus_values")?;
    let torsion: Vec<num::BigInt> = decl
        .lattice_torsion
        .iter()
        .map(|&d| num::BigInt::from(d))
        .collect();
    let torsion_values = if torsion.is_empty() {
        FieldMatrix::zero(field, torus_rank, 0)
    } else if decl.torsion_values.is_empty() {
        return Err(err(
            format!("{location}.torsion_values"),
            "torsion generators need explicit image values",
        ));
    } else {
        parse_matrix(&decl.torsion_values, torsion.len(), "torsion_values")?
    };
    let abelian = decl.abelian.as_ref().map(|a| match a {
        AbelianDecl::Elliptic { prefix } => AbelianDatum::elliptic(prefix),
        AbelianDecl::Custom {
            genus,
            period_symbols,
            hodge_rows,
        } => AbelianDatum {
            genus: *genus,
            period_symbols: period_symbols.clone(),
            hodge_rows: hodge_rows.clone(),
            relations: Vec::new(),
        },
    });
    OneMotive::new(
        field.clone(),
        decl.lattice_rank,
        torsion,
        torus_rank,
        u_torus,
        torsion_values,
        abelian,
        decl.point_labels.clone(),
    )
    .map_err(|e| err(location, e.to_string()))
}

fn build_poly(
    terms: &[TermDecl],
    registry: &Arc<SymbolRegistry>,
    location: &str,
) -> Result<Poly, Vec<SchemaError>> {
    let field = registry.field().clone();
    let mut poly = Poly::zero();
    for (i, term) in terms.iter().enumerate() {
        let coeff = parse_field_elem(&term.coeff, &field, &format!("{location}[{i}].coeff"))?;
        let mut ids = Vec::new();
        for (name, e) in &term.monomial {
            let id = registry.lookup(name).ok_or_else(|| {
                err(
                    format!("{location}[{i}].monomial"),
                    format!("unknown symbol `{name}` (declare it in the symbols section)"),
                )
            })?;
            ids.push((id, *e));
        }
        poly.add_term(Monomial::from_pairs(&ids), coeff);
    }
    Ok(poly)
}

fn build_scalar(
    decl: &ScalarDecl,
    registry: &Arc<SymbolRegistry>,
    location: &str,
) -> Result<PeriodScalar, Vec<SchemaError>> {
    match decl {
        ScalarDecl::Constant(s) => Ok(PeriodScalar::from_rational(
            registry,
            parse_rational(s, location)?,
        )),
        ScalarDecl::Terms(terms) => {
            let num = build_poly(terms, registry, location)?;
            PeriodScalar::fraction(
                registry,
                num,
                Poly::constant(registry.field().one()),
            )
            .map_err(|e| err(location, e.to_string()))
        }
        ScalarDecl::Fraction { num, den } => {
            let num = build_poly(num, registry, &format!("{location}.num"))?;
            let den = build_poly(den, registry, &format!("{location}.den"))?;
            PeriodScalar::fraction(registry, num, den).map_err(|e| err(location, e.to_string()))
        }
    }
}

fn build_triple(
    decl: &TripleDecl,
    registry: &Arc<SymbolRegistry>,
    location: &str,
) -> Result<PeriodTriple, Vec<SchemaError>> {
    let side = match decl.side.as_str() {
        "homological" => Side::Homological,
        "cohomological" => Side::Cohomological,
        other => {
            return Err(err(
                format!("{location}.side"),
                format!("side must be \"homological\" or \"cohomological\", got `{other}`"),
            ))
        }
    };
    let (rows, cols) = match side {
        Side::Homological => (decl.k_dim, decl.free_rank),
        Side::Cohomological => (decl.free_rank, decl.k_dim),
    };
    if decl.omega.len() != rows || decl.omega.iter().any(|r| r.len() != cols) {
        return Err(err(
            format!("{location}.omega"),
            format!("comparison matrix must be {rows}×{cols}"),
        ));
    }
    let mut omega = PeriodMatrix::zero(registry, rows, cols);
    for (r, row) in decl.omega.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            *omega.entry_mut(r, c) =
                build_scalar(s, registry, &format!("{location}.omega[{r}][{c}]"))?;
        }
    }
    let torsion: Vec<num::BigInt> = decl.torsion.iter().map(|&d| num::BigInt::from(d)).collect();
    let triple = PeriodTriple::new(
        side,
        decl.free_rank,
        torsion,
        decl.k_dim,
        omega,
        None,
        None,
    )
    .map_err(|e| err(location, e.to_string()))?;
    if decl.declared_iso == Some(true) && !triple.is_iso() {
        return Err(err(
            format!("{location}.declared_iso"),
            "declared \"≅\" but the comparison determinant normalizes to 0",
        ));
    }
    Ok(triple)
}

fn build_curve(decl: &CurveDecl, location: &str) -> Result<CurveModel, Vec<SchemaError>> {
    let bound = decl.bound.unwrap_or(permotive::albanese::DEFAULT_RELATION_BOUND);
    match decl.kind.as_str() {
        "p1" => {
            let punctures = decl
                .punctures
                .iter()
                .enumerate()
                .map(|(i, p)| -> Result<P1Point, Vec<SchemaError>> {
                    match p {
                        PointDecl::Named(s) if s == "inf" || s == "O" => Ok(P1Point::Infinity),
                        PointDecl::Named(s) => Ok(P1Point::Finite(parse_rational(
                            s,
                            &format!("{location}.punctures[{i}]"),
                        )?)),
                        PointDecl::Affine(_) => Err(err(
                            format!("{location}.punctures[{i}]"),
                            "P¹ points are single values, not pairs",
                        )),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut model =
                CurveModel::p1(punctures).map_err(|e| err(location, e.to_string()))?;
            model.relation_bound = bound;
            Ok(model)
        }
        "elliptic" => {
            let a = decl.a.as_ref().ok_or_else(|| {
                err(format!("{location}.a"), "elliptic curves need coefficient a")
            })?;
            let b = decl.b.as_ref().ok_or_else(|| {
                err(format!("{location}.b"), "elliptic curves need coefficient b")
            })?;
            let a = parse_rational(a, &format!("{location}.a"))?;
            let b = parse_rational(b, &format!("{location}.b"))?;
            let punctures = decl
                .punctures
                .iter()
                .enumerate()
                .map(|(i, p)| -> Result<EcPoint, Vec<SchemaError>> {
                    match p {
                        PointDecl::Named(s) if s == "inf" || s == "O" => Ok(EcPoint::Infinity),
                        PointDecl::Named(s) => Err(err(
                            format!("{location}.punctures[{i}]"),
                            format!("elliptic points are [x, y] pairs or \"O\", got `{s}`"),
                        )),
                        PointDecl::Affine([x, y]) => Ok(EcPoint::affine(
                            parse_rational(x, &format!("{location}.punctures[{i}][0]"))?,
                            parse_rational(y, &format!("{location}.punctures[{i}][1]"))?,
                        )),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            CurveModel::elliptic(a, b, punctures, bound).map_err(|e| err(location, e.to_string()))
        }
        other => Err(err(
            format!("{location}.kind"),
            format!("curve kind must be \"p1\" or \"elliptic\", got `{other}`"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use crate::run::{run_session_text, OutputFormat, RunError, RunOptions};

    #[test]
    fn non_triangular_relation_rejected_with_location() {
        // y -> x rewrites upward in the monomial order and must be refused
        let text = r#"{
            "schema_version": 1,
            "symbols": [
                {"kind": "user", "name": "x"},
                {"kind": "user", "name": "y"}
            ],
            "relations": [
                {"lhs": [["y", 1]], "rhs": [{"coeff": "1", "monomial": [["x", 1]]}]}
            ],
            "queries": []
        }"#;
        let doc = crate::session::parse_session(text).unwrap();
        let err = match crate::convert::resolve(&doc) {
            Err(e) => e,
            Ok(_) => panic!("non-triangular relation was accepted"),
        };
        assert!(err.iter().any(|e| e.message.contains("triangular")), "{err:?}");
    }

    #[test]
    fn computation_errors_carry_the_query_index() {
        // dual of a non-invertible raw triple fails at query 1, exit path 2
        let text = r#"{
            "schema_version": 1,
            "triples": [
                {"name": "Zero", "free_rank": 1, "k_dim": 1, "omega": [["0"]]}
            ],
            "queries": [
                {"op": "hphi", "object": "Zero"},
                {"op": "dual", "object": "Zero"}
            ]
        }"#;
        let opts = RunOptions {
            format: OutputFormat::Json,
            ..Default::default()
        };
        match run_session_text(text, &opts) {
            Err(RunError::Computation { query, .. }) => assert_eq!(query, 1),
            other => panic!("expected a computation error, got {other:?}"),
        }
    }
}
