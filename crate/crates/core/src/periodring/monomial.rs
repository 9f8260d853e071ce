//! Monomials in the formal period symbols, ordered by total degree with a
//! lexicographic tie-break (earlier symbols weigh more). The order is
//! multiplicative, which is what makes the triangular rewriting terminate.

use std::cmp::Ordering;

use super::SymbolId;

/// A monomial: sorted sparse exponent vector, no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<(SymbolId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn symbol(id: SymbolId) -> Self {
        Monomial { exps: vec![(id, 1)] }
    }

    pub fn from_pairs(pairs: &[(SymbolId, u32)]) -> Self {
        let mut exps: Vec<(SymbolId, u32)> = pairs.iter().copied().filter(|&(_, e)| e > 0).collect();
        exps.sort_by_key(|&(id, _)| id);
        // merge duplicates
        let mut merged: Vec<(SymbolId, u32)> = Vec::with_capacity(exps.len());
        for (id, e) in exps {
            match merged.last_mut() {
                Some((last, acc)) if *last == id => *acc += e,
                _ => merged.push((id, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn is_constant(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, id: SymbolId) -> u32 {
        self.exps
            .iter()
            .find(|&&(s, _)| s == id)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[(SymbolId, u32)] {
        &self.exps
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.exps.len() || j < other.exps.len() {
            let take_left = match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(a, _)), Some(&(b, _))) => {
                    if a == b {
                        exps.push((a, self.exps[i].1 + other.exps[j].1));
                        i += 1;
                        j += 1;
                        continue;
                    }
                    a < b
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_left {
                exps.push(self.exps[i]);
                i += 1;
            } else {
                exps.push(other.exps[j]);
                j += 1;
            }
        }
        Monomial { exps }
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Self) -> Option<Monomial> {
        let mut exps = Vec::new();
        let mut i = 0;
        for &(id, e) in &other.exps {
            let mine = loop {
                match self.exps.get(i) {
                    Some(&(s, se)) if s < id => {
                        // a symbol of self missing from other
                        if se > 0 {
                            return None;
                        }
                        i += 1;
                    }
                    Some(&(s, se)) if s == id => {
                        i += 1;
                        break se;
                    }
                    _ => break 0,
                }
            };
            if mine > e {
                return None;
            }
            if e - mine > 0 {
                exps.push((id, e - mine));
            }
        }
        if i < self.exps.len() {
            return None;
        }
        Some(Monomial { exps })
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(id, x)| (id, x * e)).collect(),
        }
    }

    /// Symbol-wise minimum, the gcd of two monomials.
    pub fn gcd(&self, other: &Self) -> Monomial {
        let mut exps = Vec::new();
        for &(id, e) in &self.exps {
            let oe = other.exponent(id);
            let m = e.min(oe);
            if m > 0 {
                exps.push((id, m));
            }
        }
        Monomial { exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // lex tie-break: larger exponent on the earliest differing symbol wins
        let mut i = 0;
        let mut j = 0;
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) => {
                    if a < b {
                        return Ordering::Greater;
                    }
                    if b < a {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: usize) -> SymbolId {
        SymbolId(n)
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial::symbol(id(0));
        let y = Monomial::symbol(id(1));
        let one = Monomial::one();
        assert!(x > one);
        assert!(x > y); // earlier symbol wins at equal degree
        assert!(y.mul(&y) > x); // degree dominates
        assert!(x.mul(&y) > y.mul(&y));
    }

    #[test]
    fn division() {
        let x = Monomial::symbol(id(0));
        let y = Monomial::symbol(id(1));
        let xy = x.mul(&y);
        assert_eq!(x.divide_into(&xy), Some(y.clone()));
        assert_eq!(xy.divide_into(&x), None);
        assert_eq!(Monomial::one().divide_into(&x), Some(x.clone()));
        let x2 = x.pow(2);
        assert_eq!(x.divide_into(&x2), Some(x));
    }

    #[test]
    fn from_pairs_merges_and_sorts() {
        let m = Monomial::from_pairs(&[(id(3), 1), (id(1), 2), (id(3), 1), (id(2), 0)]);
        assert_eq!(m.exponents(), &[(id(1), 2), (id(3), 2)]);
        assert_eq!(m.degree(), 4);
    }
}
