//! Elements of the fraction field of the symbol ring: every matrix entry of
//! every comparison map is one of these.
//!
//! A scalar is a pair numerator/denominator of multivariate polynomials in
//! normal form (all rewrite rules exhaustively applied). Canonicalization
//! cancels the common monomial content, attempts an exact polynomial
//! division, and normalizes the denominator to be monic-leading; equality is
//! decided by cross-multiplication, so the simplification is cosmetic, never
//! load-bearing.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::numfield::FieldElem;
use crate::{Error, Result};

use super::monomial::Monomial;
use super::poly::Poly;
use super::{SymbolId, SymbolRegistry};

#[derive(Clone)]
pub struct PeriodScalar {
    registry: Arc<SymbolRegistry>,
    num: Poly,
    den: Poly,
}

impl PeriodScalar {
    fn make(registry: Arc<SymbolRegistry>, num: Poly, den: Poly) -> Self {
        assert!(
            registry.is_frozen(),
            "scalars may only be built from a frozen registry"
        );
        let rules = registry.relations();
        let mut num = num.reduce(rules);
        let mut den = den.reduce(rules);
        assert!(
            !den.is_zero(),
            "zero denominator (or the declared relations introduce zero divisors)"
        );
        if num.is_zero() {
            return PeriodScalar {
                den: Poly::constant(registry.field().one()),
                registry,
                num: Poly::zero(),
            };
        }
        let content = num.monomial_content().gcd(&den.monomial_content());
        if !content.is_constant() {
            num = num.divide_monomial(&content);
            den = den.divide_monomial(&content);
        }
        if den.as_constant().is_none() {
            if let Some(q) = num.exact_div(&den) {
                let q = q.reduce(rules);
                if q.mul(&den).reduce(rules) == num {
                    num = q;
                    den = Poly::constant(registry.field().one());
                }
            }
        }
        let lead = den.leading().expect("denominator nonzero").1.clone();
        if !lead.is_one() {
            let inv = lead.inv().expect("leading coefficient nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        PeriodScalar { registry, num, den }
    }

    pub fn zero(registry: &Arc<SymbolRegistry>) -> Self {
        Self::make(
            registry.clone(),
            Poly::zero(),
            Poly::constant(registry.field().one()),
        )
    }

    pub fn one(registry: &Arc<SymbolRegistry>) -> Self {
        Self::constant(registry, registry.field().one())
    }

    pub fn constant(registry: &Arc<SymbolRegistry>, c: FieldElem) -> Self {
        Self::make(
            registry.clone(),
            Poly::constant(c),
            Poly::constant(registry.field().one()),
        )
    }

    pub fn from_rational(registry: &Arc<SymbolRegistry>, q: BigRational) -> Self {
        Self::constant(registry, registry.field().from_rational(q))
    }

    pub fn from_integer(registry: &Arc<SymbolRegistry>, n: i64) -> Self {
        Self::constant(registry, registry.field().from_integer(n))
    }

    pub fn symbol(registry: &Arc<SymbolRegistry>, id: SymbolId) -> Self {
        Self::monomial(registry, Monomial::symbol(id))
    }

    pub fn monomial(registry: &Arc<SymbolRegistry>, m: Monomial) -> Self {
        Self::make(
            registry.clone(),
            Poly::term(m, registry.field().one()),
            Poly::constant(registry.field().one()),
        )
    }

    pub fn two_pi_i(registry: &Arc<SymbolRegistry>) -> Self {
        Self::symbol(registry, registry.two_pi_i())
    }

    /// (2πi)^r for any integer r; negative powers land in the denominator.
    pub fn two_pi_i_pow(registry: &Arc<SymbolRegistry>, r: i64) -> Self {
        let m = Monomial::symbol(registry.two_pi_i()).pow(r.unsigned_abs() as u32);
        let p = Poly::term(m, registry.field().one());
        let one = Poly::constant(registry.field().one());
        if r >= 0 {
            Self::make(registry.clone(), p, one)
        } else {
            Self::make(registry.clone(), one, p)
        }
    }

    pub fn fraction(registry: &Arc<SymbolRegistry>, num: Poly, den: Poly) -> Result<Self> {
        if den.reduce(registry.relations()).is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(registry.clone(), num, den))
    }

    pub fn registry(&self) -> &Arc<SymbolRegistry> {
        &self.registry
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some(c) when the scalar is the constant c of the base field
    /// (zero included); None when any symbol survives.
    pub fn as_field_constant(&self) -> Option<FieldElem> {
        if self.den.as_constant().map(|c| c.is_one()) != Some(true) {
            return None;
        }
        if self.num.is_zero() {
            return Some(self.registry.field().zero());
        }
        self.num.as_constant()
    }

    fn assert_same_registry(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.registry, &other.registry),
            "scalars from different symbol registries"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_registry(other);
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::make(self.registry.clone(), num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PeriodScalar {
            registry: self.registry.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_registry(other);
        let out = Self::make(
            self.registry.clone(),
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        );
        // Integral-domain heuristic: a vanishing product of nonzero factors
        // means the declared relations introduced a zero divisor.
        assert!(
            !(out.is_zero() && !self.is_zero() && !other.is_zero()),
            "declared relations introduce zero divisors"
        );
        out
    }

    pub fn scale_field(&self, c: &FieldElem) -> Self {
        Self::make(
            self.registry.clone(),
            self.num.scale(c),
            self.den.clone(),
        )
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make(
            self.registry.clone(),
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Re-runs canonicalization. Scalars are always kept in normal form, so
    /// this is the identity; it exists as the explicit, testable operation.
    pub fn normal_form(&self) -> Self {
        Self::make(self.registry.clone(), self.num.clone(), self.den.clone())
    }
}

impl PartialEq for PeriodScalar {
    fn eq(&self, other: &Self) -> bool {
        self.assert_same_registry(other);
        // cross-multiplication, re-reduced: exact equality in the quotient ring
        let rules = self.registry.relations();
        let lhs = self.num.mul(&other.den).reduce(rules);
        let rhs = other.num.mul(&self.den).reduce(rules);
        lhs == rhs
    }
}

impl Eq for PeriodScalar {}

impl fmt::Display for PeriodScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.registry.render_poly(&self.num);
        if self.den.as_constant().map(|c| c.is_one()) == Some(true) {
            write!(f, "{num}")
        } else {
            let den = self.registry.render_poly(&self.den);
            let num_wrapped = if self.num.num_terms() > 1 {
                format!("({num})")
            } else {
                num
            };
            let den_wrapped = if self.den.num_terms() > 1 {
                format!("({den})")
            } else {
                den
            };
            write!(f, "{num_wrapped}/{den_wrapped}")
        }
    }
}

impl fmt::Debug for PeriodScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes log a as a K-linear combination of registry symbols.
///
/// Over Q: a = ±Π p^{e_p} and the result is Σ e_p·log(p) plus, for a < 0,
/// the principal-branch term (1/2)·2πi. Over a number field only declared
/// multiplicative-basis elements (plus the universal ±1) are accepted.
pub fn log_decompose(a: &FieldElem, registry: &Arc<SymbolRegistry>) -> Result<PeriodScalar> {
    if a.is_zero() {
        return Err(Error::Unsupported("logarithm of zero".into()));
    }
    let field = registry.field();
    if a.is_one() {
        return Ok(PeriodScalar::zero(registry));
    }
    let minus_one = field.from_integer(-1);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if *a == minus_one {
        return Ok(PeriodScalar::two_pi_i(registry).scale_field(&field.from_rational(half)));
    }
    if field.is_rational() {
        let q = a.as_rational().expect("rational base field");
        let mut out = PeriodScalar::zero(registry);
        if q.is_negative() {
            out = out.add(
                &PeriodScalar::two_pi_i(registry).scale_field(&field.from_rational(half)),
            );
        }
        for (p, e) in factor_rational(q)? {
            let id = registry
                .lookup_log_prime(&p)
                .ok_or_else(|| Error::MissingSymbol(format!("log({p})")))?;
            out = out.add(
                &PeriodScalar::symbol(registry, id)
                    .scale_field(&field.from_rational(BigRational::from(BigInt::from(e)))),
            );
        }
        Ok(out)
    } else {
        match registry.lookup_log_unit(a) {
            Some(id) => Ok(PeriodScalar::symbol(registry, id)),
            None => Err(Error::UndeclaredUnit(a.to_string())),
        }
    }
}

/// Prime factorization of a nonzero rational: |q| = Π p^{e_p} with signed
/// exponents. Trial division at desk scale; out-of-range inputs are refused
/// rather than mis-factored.
pub(crate) fn factor_rational(q: &BigRational) -> Result<Vec<(BigInt, i64)>> {
    let mut out: Vec<(BigInt, i64)> = Vec::new();
    let mut push = |p: BigInt, e: i64| {
        for entry in out.iter_mut() {
            if entry.0 == p {
                entry.1 += e;
                return;
            }
        }
        out.push((p, e));
    };
    for (n, sign) in [(q.numer().abs(), 1i64), (q.denom().abs(), -1i64)] {
        for (p, e) in factor_natural(n)? {
            push(p, sign * e);
        }
    }
    out.retain(|&(_, e)| e != 0);
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn factor_natural(mut n: BigInt) -> Result<Vec<(BigInt, i64)>> {
    assert!(n.is_positive() || n.is_one(), "factor_natural needs n >= 1");
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    let cap = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= cap {
        let mut e = 0i64;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if !n.is_one() {
        // No factor up to 10^6: n is prime whenever n <= 10^12.
        if n > BigInt::from(1_000_000_000_000u64) {
            return Err(Error::Unsupported(format!(
                "factorization of {n} is outside the supported desk range"
            )));
        }
        out.push((n, 1));
    }
    Ok(out)
}

/// The finite coefficient map of a polynomial scalar: monomial -> K.
/// Fails when the scalar has a non-trivial denominator.
pub fn monomial_coefficients(
    s: &PeriodScalar,
) -> Result<std::collections::BTreeMap<Monomial, FieldElem>> {
    if s.den().as_constant().map(|c| c.is_one()) != Some(true) {
        return Err(Error::NonTrivialDenominator);
    }
    Ok(s.num()
        .terms()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;

    fn fixture() -> Arc<SymbolRegistry> {
        let mut reg = SymbolRegistry::new(NumberField::rationals());
        reg.register_log_prime(BigInt::from(2)).unwrap();
        reg.register_log_prime(BigInt::from(3)).unwrap();
        reg.freeze().unwrap()
    }

    #[test]
    fn log_decompose_twelve() {
        let reg = fixture();
        let field = reg.field().clone();
        let twelve = field.from_integer(12);
        let got = log_decompose(&twelve, &reg).unwrap();
        let log2 = PeriodScalar::symbol(&reg, reg.lookup("log(2)").unwrap());
        let log3 = PeriodScalar::symbol(&reg, reg.lookup("log(3)").unwrap());
        let expected = log2.scale_field(&field.from_integer(2)).add(&log3);
        assert_eq!(got, expected);
    }

    #[test]
    fn log_decompose_one_and_minus_one() {
        let reg = fixture();
        let field = reg.field().clone();
        assert!(log_decompose(&field.one(), &reg).unwrap().is_zero());
        let got = log_decompose(&field.from_integer(-1), &reg).unwrap();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let expected = PeriodScalar::two_pi_i(&reg).scale_field(&field.from_rational(half));
        assert_eq!(got, expected);
    }

    #[test]
    fn log_decompose_is_multiplicative_up_to_branch() {
        let reg = fixture();
        let field = reg.field().clone();
        // decompose(a) + decompose(b) - decompose(ab) lies in Z·2πi
        let cases: [(i64, i64); 4] = [(2, 3), (-2, -3), (-2, 3), (6, 6)];
        for (a, b) in cases {
            let da = log_decompose(&field.from_integer(a), &reg).unwrap();
            let db = log_decompose(&field.from_integer(b), &reg).unwrap();
            let dab = log_decompose(&field.from_integer(a * b), &reg).unwrap();
            let diff = da.add(&db).sub(&dab);
            let coeffs = monomial_coefficients(&diff).unwrap();
            for (m, c) in coeffs {
                assert_eq!(m, Monomial::symbol(reg.two_pi_i()));
                assert!(c.as_rational().unwrap().is_integer());
            }
        }
    }

    #[test]
    fn fraction_reduction() {
        let reg = fixture();
        // (2πi)^2 / (2πi) -> 2πi
        let t2 = PeriodScalar::two_pi_i_pow(&reg, 2);
        let t1 = PeriodScalar::two_pi_i(&reg);
        assert_eq!(t2.div(&t1).unwrap(), t1);
        // and the denominator is restored to 1 in canonical form
        let q = t2.div(&t1).unwrap();
        assert!(q.den().as_constant().unwrap().is_one());
    }

    #[test]
    fn legendre_rewrite() {
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
        let reg = reg.freeze().unwrap();
        // om1*eta2 - om2*eta1 -> 2πi
        let a = PeriodScalar::monomial(&reg, Monomial::from_pairs(&[(om1, 1), (eta2, 1)]));
        let b = PeriodScalar::monomial(&reg, Monomial::from_pairs(&[(om2, 1), (eta1, 1)]));
        assert_eq!(a.sub(&b), PeriodScalar::two_pi_i(&reg));
    }

    #[test]
    fn monomial_coefficients_read_off() {
        let reg = fixture();
        let field = reg.field().clone();
        let log2 = PeriodScalar::symbol(&reg, reg.lookup("log(2)").unwrap());
        let s = PeriodScalar::two_pi_i(&reg)
            .scale_field(&field.from_integer(3))
            .add(&log2);
        let coeffs = monomial_coefficients(&s).unwrap();
        assert_eq!(coeffs.len(), 2);
        assert_eq!(
            coeffs[&Monomial::symbol(reg.two_pi_i())],
            field.from_integer(3)
        );
        // zero scalar has empty support
        assert!(monomial_coefficients(&PeriodScalar::zero(&reg)).unwrap().is_empty());
        // non-trivial denominator is refused
        let frac = PeriodScalar::one(&reg).div(&log2).unwrap();
        assert!(matches!(
            monomial_coefficients(&frac),
            Err(Error::NonTrivialDenominator)
        ));
    }

    #[test]
    fn normal_form_is_idempotent_ring_hom() {
        let reg = fixture();
        let field = reg.field().clone();
        let log2 = PeriodScalar::symbol(&reg, reg.lookup("log(2)").unwrap());
        let x = PeriodScalar::two_pi_i(&reg).add(&log2.scale_field(&field.from_integer(5)));
        let y = log2.mul(&log2).sub(&PeriodScalar::one(&reg));
        assert_eq!(x.normal_form(), x);
        assert_eq!(x.add(&y).normal_form(), x.normal_form().add(&y.normal_form()));
        assert_eq!(x.mul(&y).normal_form(), x.normal_form().mul(&y.normal_form()));
    }
}
