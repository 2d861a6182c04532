//! Sparse multivariate polynomials with rational coefficients.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::scalar::{sign, Scalar};

/// A closed range `[lo, hi]` enclosing the values of an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Scalar,
    pub hi: Scalar,
}

impl Enclosure {
    pub fn point(v: Scalar) -> Enclosure {
        Enclosure { lo: v.clone(), hi: v }
    }

    fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn mul(&self, other: &Enclosure) -> Enclosure {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Enclosure { lo, hi }
    }

    fn scale(&self, k: &Scalar) -> Enclosure {
        let a = k * &self.lo;
        let b = k * &self.hi;
        if sign(k) == Ordering::Less {
            Enclosure { lo: b, hi: a }
        } else {
            Enclosure { lo: a, hi: b }
        }
    }

    fn powi(&self, k: u32) -> Enclosure {
        if k == 0 {
            return Enclosure::point(Scalar::one());
        }
        let a = self.lo.pow(k);
        let b = self.hi.pow(k);
        if k % 2 == 1 || !self.lo.is_negative() {
            Enclosure { lo: a, hi: b }
        } else if !self.hi.is_positive() {
            Enclosure { lo: b, hi: a }
        } else {
            Enclosure {
                lo: Scalar::zero(),
                hi: a.max(b),
            }
        }
    }
}

/// A polynomial in the variables `x0 .. x{nvars-1}`.
///
/// Terms are keyed by exponent vectors; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Poly {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, index: usize) -> Poly {
        assert!(index < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Scalar::one());
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Scalar, Vec<u32>)>>(nvars: usize, terms: I) -> Poly {
        let mut p = Poly::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Highest exponent of variable `index` in any term.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|e| e[index]).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut p = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Scalar::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = t * v.pow(k);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Natural interval extension over the closed box `ranges`.
    pub fn eval_range(&self, ranges: &[Enclosure]) -> Enclosure {
        assert_eq!(ranges.len(), self.nvars);
        let mut acc = Enclosure::point(Scalar::zero());
        for (e, c) in &self.terms {
            let mut t = Enclosure::point(Scalar::one());
            for (r, &k) in ranges.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&r.powi(k));
                }
            }
            acc = acc.add(&t.scale(c));
        }
        acc
    }

    pub fn partial(&self, index: usize) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[index] > 0 {
                let mut d = e.clone();
                d[index] -= 1;
                p.add_term(d, c * &Scalar::from_int(e[index] as i64));
            }
        }
        p
    }

    /// Renames `x_i` to `x_{n-1-i}`.
    pub fn reverse_vars(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut r = e.clone();
                    r.reverse();
                    (r, c.clone())
                })
                .collect(),
        }
    }

    /// Coefficients of a polynomial in `x_index` alone, lowest degree first.
    /// `None` if another variable occurs.
    pub fn univariate(&self, index: usize) -> Option<Vec<Scalar>> {
        let mut coeffs = vec![Scalar::zero(); self.degree_in(index) as usize + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(i, &k)| i != index && k > 0) {
                return None;
            }
            coeffs[e[index] as usize] = c.clone();
        }
        Some(coeffs)
    }

    /// Splits `p = a * x_index + g` where `g` does not involve `x_index`.
    /// `None` when `x_index` occurs other than linearly with a constant coefficient.
    pub fn split_linear(&self, index: usize) -> Option<(Scalar, Poly)> {
        let mut a = Scalar::zero();
        let mut rest = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            match e[index] {
                0 => rest.add_term(e.clone(), c.clone()),
                1 if e.iter().enumerate().all(|(i, &k)| i == index || k == 0) => a = c.clone(),
                _ => return None,
            }
        }
        Some((a, rest))
    }
}

/// Evaluates a univariate polynomial (lowest degree first).
pub fn eval_univariate(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first, reads like hand-written input
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<alloc::string::String> = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(alloc::format!("x{v}")),
                    _ => factors.push(alloc::format!("x{v}^{k}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != Scalar::one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = x(1).sub(&x(0).pow(2));
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval(&[q(1, 2), q(1, 4)]), q(0, 1));
        assert_eq!(p.partial(0), x(0).mul(&Poly::constant(2, q(-2, 1))));
        assert_eq!(alloc::format!("{p}"), "-x0^2 + x1");
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn range_encloses_values() {
        let p = x(1).sub(&x(0).pow(2));
        let r = p.eval_range(&[
            Enclosure { lo: q(1, 2), hi: q(1, 1) },
            Enclosure { lo: q(0, 1), hi: q(1, 4) },
        ]);
        assert_eq!(r.lo, q(-1, 1));
        assert_eq!(r.hi, q(0, 1));
        let sq = x(0).pow(2).eval_range(&[
            Enclosure { lo: q(-1, 2), hi: q(1, 1) },
            Enclosure::point(q(0, 1)),
        ]);
        assert_eq!(sq.lo, q(0, 1));
    }

    #[test]
    fn splitting() {
        let p = x(1).sub(&x(0).pow(2));
        let (a, g) = p.split_linear(1).unwrap();
        assert_eq!(a, q(1, 1));
        assert_eq!(g.univariate(0).unwrap(), alloc::vec![q(0, 1), q(0, 1), q(-1, 1)]);
        assert!(x(0).mul(&x(1)).split_linear(1).is_none());
        assert_eq!(p.reverse_vars(), x(0).sub(&x(1).pow(2)));
    }
}
