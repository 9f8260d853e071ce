//! Query execution. Results are built as JSON values first (deterministic
//! field order) and the table renderer derives its lines from the same
//! values, so the two formats cannot drift apart.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use permotive::albanese::{
    albanese_motive, ker_u1_star, period_conjecture_report, AlbaneseTarget,
};
use permotive::onemotive::{
    cartier_identification, hom_motives, ker_u, realize_bdr, realize_drb, OneMotive,
};
use permotive::perimod::{
    biext_group, find_mutually_inverse, hom_group, period_cohomology, HomLattice, PeriodTriple,
    Side, TripleMorphism,
};

use crate::convert::ResolvedSession;
use crate::session::{QueryDecl, SessionDocument};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub format: OutputFormat,
    /// Overrides the relation bound of every curve.
    pub bound: Option<u64>,
    /// Default q for `twist` queries that omit it.
    pub twist: i64,
    /// Execute independent queries on worker threads (output order is
    /// unchanged; there is no shared mutable state after the freeze).
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            format: OutputFormat::Table,
            bound: None,
            twist: 1,
            parallel: false,
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Schema(Vec<crate::session::SchemaError>),
    Computation { query: usize, message: String },
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Schema(errors) => {
                writeln!(f, "schema validation failed:")?;
                for e in errors {
                    writeln!(f, "  {e}")?;
                }
                Ok(())
            }
            RunError::Computation { query, message } => {
                if *query == usize::MAX {
                    write!(f, "session setup failed: {message}")
                } else {
                    write!(f, "query #{query} failed: {message}")
                }
            }
        }
    }
}

/// Parses, resolves and executes a session; returns the rendered output.
/// Byte-deterministic for a fixed document and options.
pub fn run_session_text(text: &str, opts: &RunOptions) -> Result<String, RunError> {
    let doc = crate::session::parse_session(text).map_err(RunError::Schema)?;
    run_session(&doc, opts)
}

pub fn run_session(doc: &SessionDocument, opts: &RunOptions) -> Result<String, RunError> {
    let mut resolved = crate::convert::resolve(doc).map_err(RunError::Schema)?;
    if let Some(b) = opts.bound {
        for curve in resolved.curves.values_mut() {
            curve.relation_bound = b;
        }
    }
    let runner = Runner::new(&resolved)?;
    let results: Vec<Value> = if opts.parallel {
        std::thread::scope(|scope| {
            let handles: Vec<_> = doc
                .queries
                .iter()
                .enumerate()
                .map(|(i, q)| {
                    let runner = &runner;
                    scope.spawn(move || runner.execute(i, q, opts))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("query worker panicked"))
                .collect::<Result<Vec<_>, _>>()
        })?
    } else {
        doc.queries
            .iter()
            .enumerate()
            .map(|(i, q)| runner.execute(i, q, opts))
            .collect::<Result<Vec<_>, _>>()?
    };

    match opts.format {
        OutputFormat::Json => {
            let out = json!({
                "schema_version": crate::session::SCHEMA_VERSION,
                "results": results,
            });
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&out).expect("serializable")
            ))
        }
        OutputFormat::Table => {
            let mut out = String::new();
            for value in &results {
                render_table(value, &mut out);
                out.push('\n');
            }
            Ok(out)
        }
    }
}

struct Runner<'a> {
    session: &'a ResolvedSession,
    /// Realizations are shared between queries; computed once up front so
    /// parallel execution needs no locking.
    realized: BTreeMap<String, PeriodTriple>,
}

impl<'a> Runner<'a> {
    fn new(session: &'a ResolvedSession) -> Result<Self, RunError> {
        let mut realized = BTreeMap::new();
        for (name, motive) in &session.motives {
            let triple = realize_bdr(motive, &session.registry).map_err(|e| {
                RunError::Computation {
                    query: usize::MAX,
                    message: format!("realizing motive `{name}`: {e}"),
                }
            })?;
            realized.insert(name.clone(), triple);
        }
        Ok(Runner { session, realized })
    }

    fn motive(&self, q: usize, name: &str) -> Result<&OneMotive, RunError> {
        self.session
            .motives
            .get(name)
            .ok_or_else(|| RunError::Computation {
                query: q,
                message: format!("`{name}` is not a motive"),
            })
    }

    /// A triple by name: raw triples as declared, motives through their
    /// Betti-de Rham realization.
    fn triple(&self, q: usize, name: &str) -> Result<&PeriodTriple, RunError> {
        if let Some(t) = self.session.triples.get(name) {
            return Ok(t);
        }
        self.realized
            .get(name)
            .ok_or_else(|| RunError::Computation {
                query: q,
                message: format!("`{name}` is neither a triple nor a motive"),
            })
    }

    fn curve(&self, q: usize, name: &str) -> Result<&permotive::albanese::CurveModel, RunError> {
        self.session
            .curves
            .get(name)
            .ok_or_else(|| RunError::Computation {
                query: q,
                message: format!("`{name}` is not a curve"),
            })
    }

    fn execute(&self, index: usize, query: &QueryDecl, opts: &RunOptions) -> Result<Value, RunError> {
        let fail = |e: permotive::Error| RunError::Computation {
            query: index,
            message: e.to_string(),
        };
        let value = match query {
            QueryDecl::Realize { motive, side } => {
                let m = self.motive(index, motive)?;
                let side = side.as_deref().unwrap_or("bdr");
                let triple = match side {
                    "drb" => realize_drb(m, &self.session.registry).map_err(fail)?,
                    _ => self.realized[motive].clone(),
                };
                let law = if side == "drb" {
                    "de-rham-betti-realization"
                } else {
                    "betti-de-rham-realization"
                };
                let mut v = triple_value(&triple);
                prepend(&mut v, index, "realize", law);
                v
            }
            QueryDecl::Hom { source, target } => {
                let s = self.triple(index, source)?;
                let t = self.triple(index, target)?;
                let hom = hom_group(s, t).map_err(fail)?;
                let mut v = hom_value(&hom, true);
                prepend(&mut v, index, "hom", "hom-solver");
                v
            }
            QueryDecl::Dual { object } => {
                let t = self.triple(index, object)?;
                let mut v = triple_value(&t.dual().map_err(fail)?);
                prepend(&mut v, index, "dual", "dual-triple");
                v
            }
            QueryDecl::Cartier { motive } => {
                let m = self.motive(index, motive)?;
                let realized = &self.realized[motive];
                let dual_motive = m.cartier_dual_motive().map_err(fail)?;
                let realized_dual =
                    realize_bdr(&dual_motive, &self.session.registry).map_err(fail)?;
                let cartier_triple = realized.cartier_dual().map_err(fail)?;
                let ident = cartier_identification(m).map_err(fail)?;
                let matrix_identity = ident
                    .satisfies_square(&realized_dual, &cartier_triple)
                    .map_err(fail)?;
                let isomorphic =
                    find_mutually_inverse(&realized_dual, &cartier_triple, 2).map_err(fail)?;
                let mut v = json!({
                    "matrix_identity": matrix_identity,
                    "isomorphic": isomorphic.is_some(),
                });
                prepend(&mut v, index, "cartier", "cartier-duality");
                v
            }
            QueryDecl::Tensor { left, right } => {
                let l = self.triple(index, left)?;
                let r = self.triple(index, right)?;
                let mut v = triple_value(&l.tensor(r).map_err(fail)?);
                prepend(&mut v, index, "tensor", "tensor-product");
                v
            }
            QueryDecl::Twist { object, q } => {
                let t = self.triple(index, object)?;
                let twist = q.unwrap_or(opts.twist);
                let mut v = triple_value(&t.tate_twist(twist).map_err(fail)?);
                prepend(&mut v, index, "twist", "tate-twist");
                v
            }
            QueryDecl::Hphi { object } => {
                let t = self.triple(index, object)?;
                let coh = period_cohomology(t).map_err(fail)?;
                let mut v = hom_value(&coh, false);
                prepend(&mut v, index, "hphi", "period-cohomology");
                v
            }
            QueryDecl::Keru { motive } => {
                let m = self.motive(index, motive)?;
                let k = ker_u(m, &self.session.units).map_err(fail)?;
                let mut v = json!({
                    "rank": k.rank(),
                    "torsion": strings(k.torsion.iter()),
                    "basis": int_matrix_values(k.lattice.basis()),
                });
                prepend(&mut v, index, "keru", "ker-u-law");
                v
            }
            QueryDecl::Biext { left, right } => {
                let l = self.triple(index, left)?;
                let r = self.triple(index, right)?;
                let b = biext_group(l, r).map_err(fail)?;
                let mut v = json!({
                    "rank": b.group.rank(),
                    "invariants": strings(b.group.torsion().iter()),
                    "alternating_rank": b.alternating.as_ref().map(|l| l.rank()),
                });
                prepend(&mut v, index, "biext", "biextension-pairing");
                v
            }
            QueryDecl::Albanese { curve } => {
                let c = self.curve(index, curve)?;
                let motive = albanese_motive(c).map_err(fail)?;
                let kernel = ker_u1_star(c).map_err(fail)?;
                let target = match &motive.target {
                    AlbaneseTarget::Zero => json!("zero"),
                    AlbaneseTarget::Elliptic { images, .. } => {
                        json!({ "images": images.iter().map(|p| p.to_string()).collect::<Vec<_>>() })
                    }
                };
                let mut v = json!({
                    "lattice_rank": motive.lattice_rank,
                    "target": target,
                    "kernel_rank": kernel.lattice.rank(),
                    "kernel_basis": int_matrix_values(kernel.lattice.basis()),
                    "completeness": kernel.completeness.to_string(),
                });
                prepend(&mut v, index, "albanese", "albanese-motive");
                v
            }
            QueryDecl::Report { curve, q_min, q_max } => {
                let c = self.curve(index, curve)?;
                let report = period_conjecture_report(c, *q_min, *q_max).map_err(fail)?;
                let rows: Vec<Value> = report
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "q": r.q,
                            "rank": r.predicted_rank,
                            "law": r.law,
                            "completeness": r.completeness.to_string(),
                        })
                    })
                    .collect();
                let mut v = json!({ "rows": rows });
                prepend(&mut v, index, "report", "period-conjecture-report");
                v
            }
            QueryDecl::Fullnesscheck { source, target } => {
                let sm = self.motive(index, source)?;
                let tm = self.motive(index, target)?;
                let motive_hom = hom_motives(sm, tm, &self.session.units).map_err(fail)?;
                let st = self.triple(index, source)?;
                let tt = self.triple(index, target)?;
                let triple_hom = hom_group(st, tt).map_err(fail)?;
                let agree = motive_hom.invariants() == triple_hom.invariants();
                let mut v = json!({
                    "motive_rank": motive_hom.rank(),
                    "triple_rank": triple_hom.rank(),
                    "triple_invariants": strings(triple_hom.torsion().iter()),
                    "agree": agree,
                });
                prepend(&mut v, index, "fullnesscheck", "full-faithfulness");
                v
            }
        };
        Ok(value)
    }
}

fn prepend(value: &mut Value, index: usize, op: &str, law: &str) {
    if let Value::Object(map) = value {
        map.insert("query".into(), json!(index));
        map.insert("op".into(), json!(op));
        map.insert("law".into(), json!(law));
    }
}

fn strings<'b, T: std::fmt::Display + 'b>(iter: impl Iterator<Item = &'b T>) -> Vec<String> {
    iter.map(|x| x.to_string()).collect()
}

fn int_matrix_values(m: &permotive::numfield::IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.entry(r, c).to_string()).collect())
        .collect()
}

fn triple_value(t: &PeriodTriple) -> Value {
    let omega: Vec<Vec<String>> = (0..t.omega().rows())
        .map(|r| {
            (0..t.omega().cols())
                .map(|c| t.omega().entry(r, c).to_string())
                .collect()
        })
        .collect();
    json!({
        "side": match t.side() { Side::Homological => "homological", Side::Cohomological => "cohomological" },
        "free_rank": t.free_rank(),
        "torsion": strings(t.torsion().iter()),
        "k_dim": t.k_dim(),
        "iso": t.is_iso(),
        "omega": omega,
        "weight_ranks": t.weight().map(|w| {
            w.iter().map(|(i, l)| json!({"index": i, "rank": l.rank()})).collect::<Vec<_>>()
        }),
        "hodge_dim": t.hodge().map(|h| h.cols()),
    })
}

fn hom_value(hom: &HomLattice, with_generators: bool) -> Value {
    let generators: Vec<Value> = if with_generators {
        hom.generators().iter().map(morphism_value).collect()
    } else {
        hom.generators()
            .iter()
            .map(|g| json!({ "phi_z": int_matrix_values(&g.phi_z) }))
            .collect()
    };
    json!({
        "rank": hom.rank(),
        "invariants": strings(hom.torsion().iter()),
        "generators": generators,
    })
}

fn morphism_value(m: &TripleMorphism) -> Value {
    let phi_k: Vec<Vec<String>> = (0..m.phi_k.rows())
        .map(|r| {
            (0..m.phi_k.cols())
                .map(|c| m.phi_k.entry(r, c).to_string())
                .collect()
        })
        .collect();
    json!({
        "phi_z": int_matrix_values(&m.phi_z),
        "phi_k": phi_k,
    })
}

/// Renders one result value as an indented key/value block.
fn render_table(value: &Value, out: &mut String) {
    let obj = value.as_object().expect("results are objects");
    let query = obj.get("query").and_then(Value::as_u64).unwrap_or(0);
    let op = obj.get("op").and_then(Value::as_str).unwrap_or("?");
    let law = obj.get("law").and_then(Value::as_str).unwrap_or("?");
    out.push_str(&format!("# query {query}: {op} [{law}]\n"));
    for (key, v) in obj {
        if key == "query" || key == "op" || key == "law" {
            continue;
        }
        render_entry(key, v, 2, out);
    }
}

fn render_entry(key: &str, value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Array(items) if items.iter().all(|i| i.is_array()) && !items.is_empty() => {
            // matrix
            out.push_str(&format!("{pad}{key}:\n"));
            for row in items {
                let cells: Vec<String> = row
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|c| c.as_str().map(String::from).unwrap_or_else(|| c.to_string()))
                    .collect();
                out.push_str(&format!("{pad}  [{}]\n", cells.join(", ")));
            }
        }
        Value::Array(items) if items.iter().all(|i| i.is_object()) && !items.is_empty() => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{pad}  [{i}]\n"));
                for (k, v) in item.as_object().unwrap() {
                    render_entry(k, v, indent + 4, out);
                }
            }
        }
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render_entry(k, v, indent + 2, out);
            }
        }
        other => {
            let shown = match other {
                Value::String(s) => s.clone(),
                Value::Null => "-".into(),
                v => v.to_string(),
            };
            out.push_str(&format!("{pad}{key}: {shown}\n"));
        }
    }
}
