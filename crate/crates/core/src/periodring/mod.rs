//! The coefficient ring for all comparison maps: rational functions in
//! formal transcendental symbols over the base field.
//!
//! A [`SymbolRegistry`] names the transcendental constants in play (2πi,
//! logarithms of primes, declared logarithms of number-field units, abelian
//! periods, elliptic logarithms, free user symbols) and carries the declared
//! relations between them as a triangular rewriting system: each rule
//! replaces one monomial by a K-linear combination of strictly smaller
//! monomials in the graded-lex order, which yields a terminating,
//! deterministic normal form. Symbols not linked by a declared relation are
//! treated as algebraically independent; that modelling assumption is what
//! makes the Hom-solvers exact.
//!
//! The registry is frozen before any computation. Scalars constructed from a
//! frozen registry are immutable values and safe to share across threads.

mod monomial;
mod poly;
mod scalar;

pub mod matrix;

pub use matrix::PeriodMatrix;
pub use monomial::Monomial;
pub use poly::Poly;
pub use scalar::{log_decompose, monomial_coefficients, PeriodScalar};
pub(crate) use scalar::factor_rational;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::BigInt;

use crate::numfield::{FieldElem, NumberField};
use crate::{Error, Result};

/// Index of a registered symbol; doubles as the lex weight (earlier symbols
/// weigh more in the monomial order).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymbolId(pub(crate) usize);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// What a formal symbol stands for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SymbolKind {
    /// The distinguished period of the multiplicative group; exactly one
    /// exists per registry.
    TwoPiI,
    /// log p for a rational prime p.
    LogPrime(BigInt),
    /// A declared logarithm of a multiplicative-basis element of the field.
    LogUnit(String),
    /// An entry of the period matrix of an abelian datum.
    AbelianPeriod(String),
    /// An abelian logarithm attached to a point label.
    EllipticLog(String),
    /// A free user symbol.
    User(String),
}

#[derive(Clone, Debug)]
struct SymbolInfo {
    name: String,
    kind: SymbolKind,
}

/// One rewriting rule of the triangular system.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    pub(crate) lhs: Monomial,
    pub(crate) rhs: Poly,
}

impl RewriteRule {
    pub fn lhs(&self) -> &Monomial {
        &self.lhs
    }

    pub fn rhs(&self) -> &Poly {
        &self.rhs
    }
}

/// The shared table of formal symbols and declared relations.
pub struct SymbolRegistry {
    field: Arc<NumberField>,
    symbols: Vec<SymbolInfo>,
    by_name: BTreeMap<String, SymbolId>,
    log_primes: BTreeMap<BigInt, SymbolId>,
    log_units: Vec<(FieldElem, SymbolId)>,
    relations: Vec<RewriteRule>,
    frozen: bool,
}

impl SymbolRegistry {
    /// A fresh registry over the given base field with 2πi pre-registered.
    pub fn new(field: Arc<NumberField>) -> Self {
        let mut reg = SymbolRegistry {
            field,
            symbols: Vec::new(),
            by_name: BTreeMap::new(),
            log_primes: BTreeMap::new(),
            log_units: Vec::new(),
            relations: Vec::new(),
            frozen: false,
        };
        reg.symbols.push(SymbolInfo {
            name: "2πi".into(),
            kind: SymbolKind::TwoPiI,
        });
        reg.by_name.insert("2πi".into(), SymbolId(0));
        reg
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn two_pi_i(&self) -> SymbolId {
        SymbolId(0)
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    /// The id of the i-th registered symbol, in registration order.
    pub fn symbol_id(&self, index: usize) -> Option<SymbolId> {
        if index < self.symbols.len() {
            Some(SymbolId(index))
        } else {
            None
        }
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id.0].name
    }

    pub fn kind(&self, id: SymbolId) -> &SymbolKind {
        &self.symbols[id.0].kind
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.by_name.get(name).copied()
    }

    pub fn lookup_log_prime(&self, p: &BigInt) -> Option<SymbolId> {
        self.log_primes.get(p).copied()
    }

    pub fn lookup_log_unit(&self, value: &FieldElem) -> Option<SymbolId> {
        self.log_units
            .iter()
            .find(|(v, _)| v == value)
            .map(|&(_, id)| id)
    }

    pub fn relations(&self) -> &[RewriteRule] {
        &self.relations
    }

    fn insert(&mut self, name: String, kind: SymbolKind) -> Result<SymbolId> {
        if self.frozen {
            return Err(Error::RegistryFrozen);
        }
        if self.by_name.contains_key(&name) {
            return Err(Error::DuplicateSymbol(name));
        }
        let id = SymbolId(self.symbols.len());
        self.by_name.insert(name.clone(), id);
        self.symbols.push(SymbolInfo { name, kind });
        Ok(id)
    }

    /// Registers log p; idempotent for a prime already present.
    pub fn register_log_prime(&mut self, p: BigInt) -> Result<SymbolId> {
        if let Some(id) = self.log_primes.get(&p) {
            return Ok(*id);
        }
        let id = self.insert(format!("log({p})"), SymbolKind::LogPrime(p.clone()))?;
        self.log_primes.insert(p, id);
        Ok(id)
    }

    /// Declares a multiplicative-basis element of a number field together
    /// with its formal logarithm.
    pub fn declare_log_unit(&mut self, name: &str, value: FieldElem) -> Result<SymbolId> {
        if value.is_zero() {
            return Err(Error::Unsupported("logarithm of zero".into()));
        }
        let id = self.insert(name.into(), SymbolKind::LogUnit(name.into()))?;
        self.log_units.push((value, id));
        Ok(id)
    }

    pub fn register_abelian_period(&mut self, name: &str) -> Result<SymbolId> {
        self.insert(name.into(), SymbolKind::AbelianPeriod(name.into()))
    }

    pub fn register_elliptic_log(&mut self, name: &str) -> Result<SymbolId> {
        self.insert(name.into(), SymbolKind::EllipticLog(name.into()))
    }

    pub fn register_user_symbol(&mut self, name: &str) -> Result<SymbolId> {
        self.insert(name.into(), SymbolKind::User(name.into()))
    }

    /// Queues a rewrite rule; validated at [`SymbolRegistry::freeze`].
    pub fn add_relation(&mut self, lhs: Monomial, rhs: Vec<(FieldElem, Monomial)>) -> Result<()> {
        if self.frozen {
            return Err(Error::RegistryFrozen);
        }
        let mut rhs_poly = Poly::zero();
        for (c, m) in rhs {
            rhs_poly.add_term(m, c);
        }
        self.relations.push(RewriteRule { lhs, rhs: rhs_poly });
        Ok(())
    }

    /// Validates the rewriting system and freezes the registry. After this
    /// no symbol or relation may be added, and scalars may be built.
    pub fn freeze(mut self) -> Result<Arc<Self>> {
        let check_ids = |m: &Monomial, n: usize| -> Result<()> {
            for &(id, _) in m.exponents() {
                if id.0 >= n {
                    return Err(Error::MissingSymbol(format!("symbol #{}", id.0)));
                }
            }
            Ok(())
        };
        let n = self.symbols.len();
        for rule in &self.relations {
            check_ids(&rule.lhs, n)?;
            for (m, _) in rule.rhs.terms() {
                check_ids(m, n)?;
            }
            if rule.lhs.is_constant() {
                return Err(Error::BadRelation(
                    "left-hand side must be a non-constant monomial".into(),
                ));
            }
            if rule.rhs.is_zero() {
                return Err(Error::BadRelation(
                    "right-hand side must be nonzero (a zero rule would introduce zero divisors)"
                        .into(),
                ));
            }
            for (m, _) in rule.rhs.terms() {
                if m >= &rule.lhs {
                    return Err(Error::BadRelation(format!(
                        "rule is not triangular: a right-hand monomial is not strictly smaller \
                         than the left-hand side {}",
                        self.render_monomial(&rule.lhs)
                    )));
                }
            }
        }
        for i in 0..self.relations.len() {
            for j in 0..self.relations.len() {
                if i != j && self.relations[i].lhs == self.relations[j].lhs {
                    return Err(Error::BadRelation(
                        "left-hand monomials must be pairwise distinct".into(),
                    ));
                }
            }
        }
        // Inter-reduce the right-hand sides so no rule's rhs contains (or is
        // divisible by) any rule's lhs. Terminates: every step replaces a
        // monomial by strictly smaller ones.
        loop {
            let snapshot = self.relations.clone();
            let mut changed = false;
            for i in 0..self.relations.len() {
                let reduced = self.relations[i].rhs.reduce(&snapshot);
                if reduced != self.relations[i].rhs {
                    if reduced.is_zero() {
                        return Err(Error::BadRelation(
                            "relations collapse a monomial to zero (zero divisor)".into(),
                        ));
                    }
                    self.relations[i].rhs = reduced;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.frozen = true;
        Ok(Arc::new(self))
    }

    pub(crate) fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_constant() {
            return "1".into();
        }
        m.exponents()
            .iter()
            .map(|&(id, e)| {
                if e == 1 {
                    self.name(id).to_string()
                } else {
                    format!("{}^{}", self.name(id), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub(crate) fn render_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms().rev().enumerate() {
            let (sign_negative, mag) = match c.as_rational() {
                Some(q) if q.numer().sign() == num::bigint::Sign::Minus => {
                    (true, self.field.from_rational(-q.clone()))
                }
                _ => (false, c.clone()),
            };
            if i == 0 {
                if sign_negative {
                    out.push('-');
                }
            } else if sign_negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = if mag.as_rational().is_some() {
                format!("{mag}")
            } else {
                format!("({mag})")
            };
            if m.is_constant() {
                out.push_str(&coeff_str);
            } else if mag.is_one() {
                out.push_str(&self.render_monomial(m));
            } else {
                out.push_str(&format!("{}*{}", coeff_str, self.render_monomial(m)));
            }
        }
        out
    }
}

impl fmt::Debug for SymbolRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SymbolRegistry({} symbols, {} relations, frozen: {})",
            self.symbols.len(),
            self.relations.len(),
            self.frozen
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_has_unique_two_pi_i() {
        let reg = SymbolRegistry::new(NumberField::rationals());
        assert_eq!(reg.lookup("2πi"), Some(SymbolId(0)));
        assert!(matches!(reg.kind(SymbolId(0)), SymbolKind::TwoPiI));
    }

    #[test]
    fn log_prime_registration_is_idempotent() {
        let mut reg = SymbolRegistry::new(NumberField::rationals());
        let a = reg.register_log_prime(BigInt::from(2)).unwrap();
        let b = reg.register_log_prime(BigInt::from(2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(reg.name(a), "log(2)");
    }

    #[test]
    fn frozen_registry_rejects_new_symbols() {
        let reg = SymbolRegistry::new(NumberField::rationals());
        let frozen = reg.freeze().unwrap();
        assert!(frozen.is_frozen());
        // Arc gives no mutable access; the builder API itself also guards:
        let mut builder = SymbolRegistry::new(NumberField::rationals());
        builder.frozen = true;
        assert!(matches!(
            builder.register_user_symbol("x"),
            Err(Error::RegistryFrozen)
        ));
    }

    #[test]
    fn non_triangular_relation_rejected() {
        let field = NumberField::rationals();
        let mut reg = SymbolRegistry::new(field.clone());
        let x = reg.register_user_symbol("x").unwrap();
        let y = reg.register_user_symbol("y").unwrap();
        // x -> y is fine (y later, hence smaller); y -> x is not triangular.
        reg.add_relation(
            Monomial::symbol(y),
            vec![(field.one(), Monomial::symbol(x))],
        )
        .unwrap();
        assert!(matches!(reg.freeze(), Err(Error::BadRelation(_))));
    }

    #[test]
    fn legendre_shape_relation_accepted() {
        let field = NumberField::rationals();
        let mut reg = SymbolRegistry::new(field.clone());
        let om1 = reg.register_abelian_period("om1").unwrap();
        let om2 = reg.register_abelian_period("om2").unwrap();
        let eta1 = reg.register_abelian_period("eta1").unwrap();
        let eta2 = reg.register_abelian_period("eta2").unwrap();
        let lhs = Monomial::from_pairs(&[(om1, 1), (eta2, 1)]);
        reg.add_relation(
            lhs,
            vec![
                (field.one(), Monomial::from_pairs(&[(om2, 1), (eta1, 1)])),
                (field.one(), Monomial::symbol(SymbolId(0))),
            ],
        )
        .unwrap();
        assert!(reg.freeze().is_ok());
    }
}
