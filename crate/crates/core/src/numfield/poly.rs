//! Dense univariate polynomials over Q, used internally for number field
//! arithmetic and the irreducibility check of defining polynomials.
//!
//! Coefficients are stored low degree first and trailing zeros are trimmed,
//! so the zero polynomial is the empty vector.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(mut p: QPoly) -> QPoly {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

pub fn degree(p: &QPoly) -> Option<usize> {
    if p.is_empty() { None } else { Some(p.len() - 1) }
}

pub fn add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn neg(a: &QPoly) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &QPoly, b: &QPoly) -> QPoly {
    add(a, &neg(b))
}

pub fn mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(out)
}

pub fn scale(a: &QPoly, c: &BigRational) -> QPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Quotient and remainder of `a` by `b` (`b` nonzero).
pub fn div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut rem = a.clone();
    let mut quot: QPoly = Vec::new();
    while rem.len() > db && !rem.is_empty() {
        let dr = rem.len() - 1;
        let coeff = rem.last().unwrap() / lead;
        let shift = dr - db;
        if quot.len() < shift + 1 {
            quot.resize(shift + 1, BigRational::zero());
        }
        quot[shift] = coeff.clone();
        for (i, cb) in b.iter().enumerate() {
            let idx = i + shift;
            let v = &rem[idx] - cb * &coeff;
            rem[idx] = v;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    div_rem(a, b).1
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g and g monic (or zero).
pub fn xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0: QPoly = vec![BigRational::one()];
    let mut s1: QPoly = Vec::new();
    let mut t0: QPoly = Vec::new();
    let mut t1: QPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        let t = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = BigRational::one() / lead;
        r0 = scale(&r0, &inv);
        s0 = scale(&s0, &inv);
        t0 = scale(&t0, &inv);
    }
    (r0, s0, t0)
}

pub fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Clears denominators and divides by the content, returning a primitive
/// integer polynomial with the same roots.
pub fn primitive_int(p: &QPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in p {
        den = num::integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from(den.clone())).to_integer()).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = num::integer::gcd(content, c.clone());
    }
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut divs = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            divs.push(d.clone());
            let other = &n / &d;
            if other != d {
                divs.push(other);
            }
        }
        d += 1;
    }
    divs.sort();
    divs
}

fn has_rational_root(f: &[BigInt]) -> bool {
    // Rational root theorem on a primitive integer polynomial.
    let lead = f.last().unwrap();
    let constant = &f[0];
    if constant.is_zero() {
        return true;
    }
    let ps = positive_divisors(constant);
    let qs = positive_divisors(lead);
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let num = BigRational::new(p.clone() * BigInt::from(sign), q.clone());
                let mut acc = BigRational::zero();
                for c in f.iter().rev() {
                    acc = acc * &num + BigRational::from(c.clone());
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn lagrange(points: &[(BigInt, BigInt)]) -> QPoly {
    let mut out: QPoly = Vec::new();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis: QPoly = vec![BigRational::from(yi.clone())];
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = BigRational::from(xi - xj);
            // multiply by (x - xj) / (xi - xj)
            let linear = vec![
                BigRational::from(-xj.clone()) / &denom,
                BigRational::one() / &denom,
            ];
            basis = mul(&basis, &linear);
        }
        out = add(&out, &basis);
    }
    out
}

/// Kronecker search for a factor of degree `k` of the primitive integer
/// polynomial `f`. Returns true when a proper factor exists. The search is
/// exhaustive; `budget` caps the number of divisor tuples tried.
fn kronecker_has_factor(f: &[BigInt], fq: &QPoly, k: usize, budget: &mut u64) -> Option<bool> {
    let points: Vec<BigInt> = (0..=k as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = points.iter().map(|x| eval_int(f, x)).collect();
    if values.iter().any(|v| v.is_zero()) {
        return Some(true); // integer root, caught here as well
    }
    let divisor_sets: Vec<Vec<BigInt>> = values
        .iter()
        .map(|v| {
            let mut ds = Vec::new();
            for d in positive_divisors(v) {
                ds.push(d.clone());
                ds.push(-d);
            }
            ds
        })
        .collect();
    let mut idx = vec![0usize; divisor_sets.len()];
    loop {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let tuple: Vec<(BigInt, BigInt)> = points
            .iter()
            .zip(idx.iter().enumerate().map(|(i, &j)| divisor_sets[i][j].clone()))
            .map(|(x, y)| (x.clone(), y))
            .collect();
        let g = lagrange(&tuple);
        if degree(&g) == Some(k)
            && g.iter().all(|c| c.is_integer())
            && g.last().unwrap().abs().is_one()
        {
            let (_, r) = div_rem(fq, &g);
            if r.is_empty() {
                return Some(true);
            }
        }
        // advance the mixed-radix counter
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Some(false);
            }
            idx[pos] += 1;
            if idx[pos] < divisor_sets[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Exhaustive irreducibility test over Q for a monic polynomial of degree <= 8:
/// rational-root search plus Kronecker factor search for every factor degree.
pub fn is_irreducible(p: &QPoly) -> crate::Result<bool> {
    let d = degree(p).unwrap_or(0);
    if d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    let f = primitive_int(p);
    if has_rational_root(&f) {
        return Ok(false);
    }
    let fq: QPoly = f.iter().map(|c| BigRational::from(c.clone())).collect();
    let mut budget: u64 = 4_000_000;
    for k in 2..=d / 2 {
        match kronecker_has_factor(&f, &fq, k, &mut budget) {
            Some(true) => return Ok(false),
            Some(false) => {}
            None => {
                return Err(crate::Error::Unsupported(
                    "irreducibility check exceeded its search budget".into(),
                ))
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn div_rem_exact() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let a = vec![q(-1), q(0), q(1)];
        let b = vec![q(-1), q(1)];
        let (quot, rem) = div_rem(&a, &b);
        assert_eq!(quot, vec![q(1), q(1)]);
        assert!(rem.is_empty());
    }

    #[test]
    fn xgcd_coprime() {
        // gcd(x^2 + 1, x) = 1
        let a = vec![q(1), q(0), q(1)];
        let b = vec![q(0), q(1)];
        let (g, s, t) = xgcd(&a, &b);
        assert_eq!(g, vec![q(1)]);
        let lhs = add(&mul(&s, &a), &mul(&t, &b));
        assert_eq!(lhs, vec![q(1)]);
    }

    #[test]
    fn irreducibility_small_cases() {
        // x^2 - 2 irreducible, x^2 - 1 = (x-1)(x+1), x^4 + 1 irreducible,
        // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
        assert!(is_irreducible(&vec![q(-2), q(0), q(1)]).unwrap());
        assert!(!is_irreducible(&vec![q(-1), q(0), q(1)]).unwrap());
        assert!(is_irreducible(&vec![q(1), q(0), q(0), q(0), q(1)]).unwrap());
        assert!(!is_irreducible(&vec![q(4), q(0), q(0), q(0), q(1)]).unwrap());
        // x^3 - 2 irreducible
        assert!(is_irreducible(&vec![q(-2), q(0), q(0), q(1)]).unwrap());
    }
}
