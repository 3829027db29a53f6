//! Sparse multivariate Laurent polynomials over the integers.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so iteration
//! order is lexicographic and structural equality is canonical. Exponents
//! may be negative; the ordinary polynomial ring is the sub-ring where every
//! stored exponent is nonnegative.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Exponents = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range ({nvars} variables)");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, 1)
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    /// `true` when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// `true` when the polynomial is a single term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Componentwise minimum of the exponents (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * BigInt::from(e[i]));
            }
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`. Negative exponents require the
    /// image to be a monomial.
    pub fn substitute(&self, images: &[Poly]) -> Option<Poly> {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = &term * &images[i].pow(k as u32);
                } else if k < 0 {
                    let inv = images[i].monomial_inverse()?;
                    term = &term * &inv.pow((-k) as u32);
                }
            }
            out += &term;
        }
        Some(out)
    }

    /// Inverse of a unit monomial `±x^e`.
    pub fn monomial_inverse(&self) -> Option<Poly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if !(c.is_one() || (-c).is_one()) {
            return None;
        }
        Some(Poly::monomial(self.nvars, e.iter().map(|x| -x).collect(), c.clone()))
    }

    /// Evaluates at an integer point. Returns `None` when a negative power
    /// meets a zero coordinate or the value is not an integer.
    pub fn eval(&self, point: &[BigInt]) -> Option<BigInt> {
        assert_eq!(point.len(), self.nvars);
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (e, c) in &self.terms {
            let mut tn = c.clone();
            let mut td = BigInt::one();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    tn *= num_traits::pow(x.clone(), k as usize);
                } else if k < 0 {
                    if x.is_zero() {
                        return None;
                    }
                    td *= num_traits::pow(x.clone(), (-k) as usize);
                }
            }
            num = num * &td + tn * &den;
            den *= td;
            let g = num.gcd(&den);
            if !g.is_zero() && !g.is_one() {
                num /= &g;
                den /= &g;
            }
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if den.is_one() {
            Some(num)
        } else {
            None
        }
    }

    /// Exact division in the Laurent ring. Returns `None` when `divisor`
    /// does not divide `self` with integer coefficients.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        let dmin = divisor.min_exponents();
        let nmin = self.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let d0 = divisor.shift(&neg(&dmin));
        let n0 = self.shift(&neg(&nmin));
        let q0 = n0.div_exact_polynomial(&d0)?;
        let offset: Vec<i32> = nmin.iter().zip(&dmin).map(|(a, b)| a - b).collect();
        Some(q0.shift(&offset))
    }

    /// Lex-order long division of polynomials with nonnegative exponents.
    fn div_exact_polynomial(&self, divisor: &Poly) -> Option<Poly> {
        let (lead_e, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            let mut qe = Vec::with_capacity(self.nvars);
            for (a, b) in re.iter().zip(lead_e) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let (qc, r) = rc.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            for (de, dc) in &divisor.terms {
                let e: Exponents = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(e, -(dc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Renders the polynomial with the given variable names, e.g. `x1^-1*x2 + 1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                let name = names.get(i).map(String::as_str).unwrap_or("?");
                if k == 1 {
                    mono.push_str(name);
                } else {
                    let _ = write!(mono, "{name}^{k}");
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{abs}*{mono}");
            }
        }
        out
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
