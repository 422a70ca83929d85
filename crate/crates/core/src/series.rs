//! Laurent polynomials in one variable and truncated multivariate power
//! series over F_p.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};

/// Finite sums `Σ c_m x^m` with `m ∈ ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Fp>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(c: Fp, m: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: i64, c: Fp) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert(c.zero_like());
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: i64) -> Option<Fp> {
        self.terms.get(&m).copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, Fp)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn scale(&self, c: Fp) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, a) in self.terms() {
            out.add_term(m, a * c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, a) in self.terms() {
            for (n, b) in other.terms() {
                out.add_term(m + n, a * b);
            }
        }
        out
    }

    /// `∂^(n) x^m = binom(m, n) x^(m-n)`, extended linearly.
    pub fn hasse(&self, field: &PrimeField, n: u64) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in self.terms() {
            out.add_term(m - n as i64, c * field.binom(m, n));
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{}*x^{}", c.signed(), m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Which coefficients a [`TruncSeries`] keeps: total degree at most `total`
/// and, per variable, exponent at most `per_var[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub total: u32,
    pub per_var: Vec<u32>,
}

impl Truncation {
    pub fn total(nvars: usize, k: u32) -> Self {
        Truncation {
            total: k,
            per_var: vec![k; nvars],
        }
    }

    /// Independent cutoffs per variable; the total cutoff is their sum.
    pub fn boxed(per_var: Vec<u32>) -> Self {
        Truncation {
            total: per_var.iter().sum(),
            per_var,
        }
    }

    pub fn keeps(&self, e: &[u32]) -> bool {
        e.iter().sum::<u32>() <= self.total && e.iter().zip(&self.per_var).all(|(a, b)| a <= b)
    }
}

/// Power series in a fixed ordered list of variables, truncated on every
/// operation. Terms iterate in lexicographic order of exponent vectors.
#[derive(Clone, Debug)]
pub struct TruncSeries {
    field: PrimeField,
    vars: Vec<String>,
    trunc: Truncation,
    terms: BTreeMap<Vec<u32>, Fp>,
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.trunc == other.trunc && self.terms == other.terms
    }
}

impl Eq for TruncSeries {}

impl TruncSeries {
    pub fn zero(field: &PrimeField, vars: &[&str], trunc: Truncation) -> Self {
        assert_eq!(vars.len(), trunc.per_var.len(), "truncation arity");
        TruncSeries {
            field: field.clone(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
            trunc,
            terms: BTreeMap::new(),
        }
    }

    fn empty_like(&self) -> Self {
        TruncSeries {
            field: self.field.clone(),
            vars: self.vars.clone(),
            trunc: self.trunc.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(&self, c: Fp) -> Self {
        let mut s = self.empty_like();
        s.add_term(vec![0; self.vars.len()], c);
        s
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(self.field.one())
    }

    /// The monomial `c · Π vars^e`.
    pub fn monomial_like(&self, e: Vec<u32>, c: Fp) -> Self {
        let mut s = self.empty_like();
        s.add_term(e, c);
        s
    }

    pub fn var_like(&self, name: &str) -> Result<Self> {
        let i = self.var_index(name)?;
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        Ok(self.monomial_like(e, self.field.one()))
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Fp) {
        if c.is_zero() || !self.trunc.keeps(&e) {
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

    pub fn coeff(&self, e: &[u32]) -> Fp {
        self.terms.get(e).copied().unwrap_or(self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, Fp)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Fp {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-self.field.one())
    }

    pub fn scale(&self, c: Fp) -> Self {
        let mut out = self.empty_like();
        for (e, a) in self.terms() {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.empty_like();
        for (e, a) in self.terms() {
            for (f, b) in other.terms() {
                let g: Vec<u32> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                out.add_term(g, a * b);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term().inv().ok_or(Error::NotInvertible)?;
        // 1/f = c · Σ (1 - c f)^i, and 1 - c f has no constant term.
        let q = self.one_like().sub(&self.scale(c));
        let mut acc = self.one_like();
        let mut term = self.one_like();
        for _ in 0..self.trunc.total {
            term = term.mul(&q);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.scale(c))
    }

    /// Integer power; negative exponents go through [`TruncSeries::inverse`].
    pub fn pow_i(&self, n: i64) -> Result<Self> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inverse()?.pow(n.unsigned_abs()))
        }
    }

    /// Replace variable `var` by `s`, which must have zero constant term.
    pub fn substitute(&self, var: &str, s: &TruncSeries) -> Result<Self> {
        let i = self.var_index(var)?;
        if !s.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let max = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        let mut powers = vec![s.one_like()];
        for k in 1..=max as usize {
            let next = powers[k - 1].mul(s);
            powers.push(next);
        }
        let mut out = self.empty_like();
        for (e, c) in self.terms() {
            let mut rest = e.clone();
            rest[i] = 0;
            let m = self.monomial_like(rest, c).mul(&powers[e[i] as usize]);
            out = out.add(&m);
        }
        Ok(out)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c.signed())?;
            for (v, k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Small expression language for building series.
#[derive(Clone, Debug)]
pub enum SeriesExpr {
    Var(String),
    Const(i64),
    Add(Box<SeriesExpr>, Box<SeriesExpr>),
    Sub(Box<SeriesExpr>, Box<SeriesExpr>),
    Mul(Box<SeriesExpr>, Box<SeriesExpr>),
    Neg(Box<SeriesExpr>),
    Pow(Box<SeriesExpr>, i64),
    /// `Subst(f, v, g)` is `f` with `v` replaced by `g`.
    Subst(Box<SeriesExpr>, String, Box<SeriesExpr>),
}

impl SeriesExpr {
    pub fn var(name: &str) -> Self {
        SeriesExpr::Var(name.to_string())
    }

    pub fn int(n: i64) -> Self {
        SeriesExpr::Const(n)
    }

    pub fn pow(self, n: i64) -> Self {
        SeriesExpr::Pow(Box::new(self), n)
    }

    pub fn subst(self, var: &str, g: SeriesExpr) -> Self {
        SeriesExpr::Subst(Box::new(self), var.to_string(), Box::new(g))
    }

    pub fn eval(&self, field: &PrimeField, vars: &[&str], trunc: &Truncation) -> Result<TruncSeries> {
        let z = TruncSeries::zero(field, vars, trunc.clone());
        self.eval_in(&z)
    }

    fn eval_in(&self, z: &TruncSeries) -> Result<TruncSeries> {
        Ok(match self {
            SeriesExpr::Var(v) => z.var_like(v)?,
            SeriesExpr::Const(c) => z.constant_like(z.field.elem(*c)),
            SeriesExpr::Add(a, b) => a.eval_in(z)?.add(&b.eval_in(z)?),
            SeriesExpr::Sub(a, b) => a.eval_in(z)?.sub(&b.eval_in(z)?),
            SeriesExpr::Mul(a, b) => a.eval_in(z)?.mul(&b.eval_in(z)?),
            SeriesExpr::Neg(a) => a.eval_in(z)?.neg(),
            SeriesExpr::Pow(a, n) => a.eval_in(z)?.pow_i(*n)?,
            SeriesExpr::Subst(f, v, g) => f.eval_in(z)?.substitute(v, &g.eval_in(z)?)?,
        })
    }
}

impl std::ops::Add for SeriesExpr {
    type Output = SeriesExpr;
    fn add(self, rhs: SeriesExpr) -> SeriesExpr {
        SeriesExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for SeriesExpr {
    type Output = SeriesExpr;
    fn sub(self, rhs: SeriesExpr) -> SeriesExpr {
        SeriesExpr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Mul for SeriesExpr {
    type Output = SeriesExpr;
    fn mul(self, rhs: SeriesExpr) -> SeriesExpr {
        SeriesExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Neg for SeriesExpr {
    type Output = SeriesExpr;
    fn neg(self) -> SeriesExpr {
        SeriesExpr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn hasse_examples() {
        let f = k(5);
        let x5 = LaurentPoly::monomial(f.one(), 5);
        assert!(x5.hasse(&f, 2).is_zero());
        assert_eq!(x5.hasse(&f, 0), x5);
        let f7 = k(7);
        let xm3 = LaurentPoly::monomial(f7.one(), -3);
        // binom(-3, 2) = 6
        assert_eq!(xm3.hasse(&f7, 2), LaurentPoly::monomial(f7.elem(6), -5));
    }

    #[test]
    fn geometric_series() {
        let f = k(7);
        let t = Truncation::total(2, 3);
        let e = (SeriesExpr::int(1) - SeriesExpr::var("z") * SeriesExpr::var("z0")).pow(-2);
        let s = e.eval(&f, &["z", "z0"], &t).unwrap();
        for i in 0..=1u32 {
            assert_eq!(s.coeff(&[i, i]), f.elem(i as i64 + 1));
        }
        // total degree 4 is beyond the cutoff
        assert!(s.coeff(&[2, 2]).is_zero());
        assert_eq!(s.terms().count(), 2);
    }

    #[test]
    fn substitution_requires_zero_constant_term() {
        let f = k(5);
        let t = Truncation::total(2, 4);
        let x = SeriesExpr::var("x");
        let g = SeriesExpr::int(1) + SeriesExpr::var("y");
        assert_eq!(
            x.clone().subst("x", g).eval(&f, &["x", "y"], &t).unwrap_err(),
            Error::NonzeroConstantTerm
        );
        let inv = SeriesExpr::int(0).pow(-1).eval(&f, &["x", "y"], &t);
        assert_eq!(inv.unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn mobius_substitution() {
        // x/(1 - z x) with x -> x/(1 - z x) again gives x/(1 - 2 z x)
        let f = k(11);
        let t = Truncation::total(2, 6);
        let vars = ["z", "x"];
        let z = SeriesExpr::var("z");
        let x = SeriesExpr::var("x");
        let m = x.clone() * (SeriesExpr::int(1) - z.clone() * x.clone()).pow(-1);
        let twice = m.clone().subst("x", m.clone()).eval(&f, &vars, &t).unwrap();
        let direct = (x.clone() * (SeriesExpr::int(1) - SeriesExpr::int(2) * z * x).pow(-1))
            .eval(&f, &vars, &t)
            .unwrap();
        assert_eq!(twice, direct);
    }

    #[test]
    fn per_variable_truncation() {
        let f = k(5);
        let t = Truncation::boxed(vec![1, 3]);
        let s = (SeriesExpr::var("a") + SeriesExpr::var("b"))
            .pow(3)
            .eval(&f, &["a", "b"], &t)
            .unwrap();
        assert_eq!(s.coeff(&[0, 3]), f.one());
        assert_eq!(s.coeff(&[1, 2]), f.elem(3));
        assert!(s.coeff(&[2, 1]).is_zero());
    }
}
