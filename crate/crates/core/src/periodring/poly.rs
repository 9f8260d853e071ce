//! Multivariate polynomials in the period symbols with coefficients in the
//! base field. Terms are kept in a sorted map, so iteration order (and
//! printing) is canonical.

use std::collections::BTreeMap;

use crate::numfield::FieldElem;

use super::monomial::Monomial;
use super::RewriteRule;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn term(m: Monomial, c: FieldElem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Monomial, FieldElem> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&FieldElem> {
        self.terms.get(m)
    }

    /// Largest term in the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Some(c) when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => None, // caller handles zero via is_zero with field context
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_constant() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Symbol-wise gcd of all monomials in the polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let mut content = match iter.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        for m in iter {
            content = content.gcd(m);
            if content.is_constant() {
                break;
            }
        }
        content
    }

    /// Divides every monomial by `m`; panics when not divisible.
    pub fn divide_monomial(&self, m: &Monomial) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| {
                    (
                        m.divide_into(mm).expect("monomial content divides all terms"),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Exact polynomial division: Some(q) with self = q * g, None otherwise.
    pub fn exact_div(&self, g: &Poly) -> Option<Poly> {
        let (g_lead_m, g_lead_c) = g.leading()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while !rem.is_zero() {
            let (r_m, r_c) = rem.leading().unwrap();
            let m = g_lead_m.divide_into(r_m)?;
            let c = r_c.div(g_lead_c).expect("leading coefficient nonzero");
            let piece = Poly::term(m, c);
            rem = rem.sub(&piece.mul(g));
            quot = quot.add(&piece);
        }
        Some(quot)
    }

    /// Exhaustively applies the rewrite rules: whenever a term's monomial is
    /// divisible by a rule's left-hand side, the term is replaced by the
    /// correspondingly shifted right-hand side. Deterministic (largest term
    /// first, rules in declaration order) and terminating because right-hand
    /// monomials are strictly smaller and the order is multiplicative.
    pub fn reduce(&self, rules: &[RewriteRule]) -> Self {
        if rules.is_empty() {
            return self.clone();
        }
        let mut current = self.clone();
        'outer: loop {
            let mut target: Option<(Monomial, FieldElem, usize, Monomial)> = None;
            for (m, c) in current.terms.iter().rev() {
                for (ri, rule) in rules.iter().enumerate() {
                    if let Some(q) = rule.lhs.divide_into(m) {
                        target = Some((m.clone(), c.clone(), ri, q));
                        break;
                    }
                }
                if target.is_some() {
                    break;
                }
            }
            match target {
                None => break 'outer,
                Some((m, c, ri, q)) => {
                    current.terms.remove(&m);
                    let replacement = rules[ri].rhs.mul_monomial(&q).scale(&c);
                    current = current.add(&replacement);
                }
            }
        }
        current
    }
}
