//! The divided-power form of U(sl2) over F_p.
//!
//! Basis monomials are `D^(i) H^(j) E^(k)` where `D = L_{-1}`, `H = L_0`,
//! `E = L_1` and `X^(n)` is the n-th divided power. `H^(n)` stands for the
//! binomial `binom(L_0, n)`, so on a weight module it acts as
//! `binom(-2 deg, n)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::series::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HMonomial {
    pub d: u32,
    pub h: u32,
    pub e: u32,
}

impl HMonomial {
    pub const ONE: HMonomial = HMonomial { d: 0, h: 0, e: 0 };

    pub fn new(d: u32, h: u32, e: u32) -> Self {
        HMonomial { d, h, e }
    }

    pub fn d(n: u32) -> Self {
        HMonomial::new(n, 0, 0)
    }

    pub fn h(n: u32) -> Self {
        HMonomial::new(0, n, 0)
    }

    pub fn e(n: u32) -> Self {
        HMonomial::new(0, 0, n)
    }

    /// `D` raises the degree, `E` lowers it.
    pub fn degree(self) -> i64 {
        self.d as i64 - self.e as i64
    }
}

impl fmt::Display for HMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, n) in [("D", self.d), ("H", self.h), ("E", self.e)] {
            if n > 0 {
                parts.push(format!("{name}^({n})"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// One of the three generator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HGen {
    D,
    H,
    E,
}

impl HGen {
    pub const ALL: [HGen; 3] = [HGen::D, HGen::H, HGen::E];

    pub fn power(self, n: u32) -> HMonomial {
        match self {
            HGen::D => HMonomial::d(n),
            HGen::H => HMonomial::h(n),
            HGen::E => HMonomial::e(n),
        }
    }
}

impl fmt::Display for HGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HGen::D => "D",
            HGen::H => "H",
            HGen::E => "E",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grade {
    Degree(i64),
    Mixed,
    /// The zero element, homogeneous of every degree.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HElement {
    terms: BTreeMap<HMonomial, Fp>,
}

impl HElement {
    pub fn zero() -> Self {
        HElement::default()
    }

    pub fn one(field: &PrimeField) -> Self {
        HElement::monomial(HMonomial::ONE, field.one())
    }

    pub fn monomial(m: HMonomial, c: Fp) -> Self {
        let mut x = HElement::zero();
        x.add_term(m, c);
        x
    }

    pub fn add_term(&mut self, m: HMonomial, c: Fp) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (HMonomial, Fp)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coeff(&self, m: HMonomial) -> Option<Fp> {
        self.terms.get(&m).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &HElement) -> HElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, -c);
        }
        out
    }

    pub fn scale(&self, c: Fp) -> HElement {
        let mut out = HElement::zero();
        for (m, a) in self.terms() {
            out.add_term(m, a * c);
        }
        out
    }

    pub fn grade(&self) -> Grade {
        let mut degs = self.terms.keys().map(|m| m.degree());
        let Some(first) = degs.next() else {
            return Grade::Zero;
        };
        if degs.all(|d| d == first) {
            Grade::Degree(first)
        } else {
            Grade::Mixed
        }
    }

    /// Counit: the coefficient of the identity.
    pub fn counit(&self, field: &PrimeField) -> Fp {
        self.coeff(HMonomial::ONE).unwrap_or(field.zero())
    }
}

/// Prints terms from the largest monomial down, with residues in
/// `(-p/2, p/2]` and unit coefficients omitted.
impl fmt::Display for HElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().rev().enumerate() {
            let v = c.signed();
            let (neg, a) = (v < 0, v.unsigned_abs());
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m == HMonomial::ONE {
                write!(f, "{a}")?;
            } else if a == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a} {m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HTensor {
    terms: BTreeMap<(HMonomial, HMonomial), Fp>,
}

impl HTensor {
    pub fn zero() -> Self {
        HTensor::default()
    }

    pub fn add_term(&mut self, a: HMonomial, b: HMonomial, c: Fp) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (HMonomial, HMonomial, Fp)> + '_ {
        self.terms.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for HTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(a, b, c)| format!("{} ({a} ⊗ {b})", c.signed()))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Product = Arc<[(HMonomial, Fp)]>;

/// Multiplication and comultiplication over a fixed field, with a shared
/// memo of monomial products.
pub struct HAlgebra {
    field: PrimeField,
    memo: RwLock<HashMap<(HMonomial, HMonomial), Product>>,
}

impl fmt::Debug for HAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HAlgebra({:?})", self.field)
    }
}

impl HAlgebra {
    pub fn new(field: &PrimeField) -> Self {
        HAlgebra {
            field: field.clone(),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn one(&self) -> HElement {
        HElement::one(&self.field)
    }

    pub fn gen(&self, g: HGen, n: u32) -> HElement {
        HElement::monomial(g.power(n), self.field.one())
    }

    /// `H^(m) H^(n) = Σ_j binom(m, j) binom(n + j, m) H^(n + j)`.
    fn h_merge(&self, m: u32, n: u32, out: &mut Vec<(u32, Fp)>) {
        let f = &self.field;
        for j in 0..=m {
            let c = f.binom(m as i64, j as u64) * f.binom((n + j) as i64, m as u64);
            if !c.is_zero() {
                out.push((n + j, c));
            }
        }
    }

    /// `H^(m) H^(n)` as a list of `(power, coefficient)`.
    pub fn h_product(&self, m: u32, n: u32) -> Vec<(u32, Fp)> {
        let mut out = Vec::new();
        self.h_merge(m, n, &mut out);
        out
    }

    /// Normal-ordered product of two basis monomials.
    fn compute_product(&self, x: HMonomial, y: HMonomial) -> Vec<(HMonomial, Fp)> {
        let f = &self.field;
        let (a1, b1, c1) = (x.d, x.h, x.e);
        let (a2, b2, c2) = (y.d, y.h, y.e);
        let mut acc: BTreeMap<HMonomial, Fp> = BTreeMap::new();
        // E^(c1) D^(a2) = Σ_{i,j} (-1)^i binom(-c1-a2+2i, j) D^(a2-i) H^(i-j) E^(c1-i)
        for i in 0..=c1.min(a2) {
            let d_pow = a1 + a2 - i;
            let e_pow = c1 - i + c2;
            let outer = f.sign(i as i64)
                * f.binom(d_pow as i64, a1 as u64)
                * f.binom(e_pow as i64, c2 as u64);
            if outer.is_zero() {
                continue;
            }
            // H^(b1) D^(a2-i) = D^(a2-i) Σ_t binom(-2(a2-i), t) H^(b1-t)
            let left: Vec<(u32, Fp)> = (0..=b1)
                .map(|t| (b1 - t, f.binom(-2 * (a2 - i) as i64, t as u64)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            // E^(c1-i) H^(b2) = Σ_u binom(-2(c1-i), u) H^(b2-u) E^(c1-i)
            let right: Vec<(u32, Fp)> = (0..=b2)
                .map(|u| (b2 - u, f.binom(-2 * (c1 - i) as i64, u as u64)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            let mid: Vec<(u32, Fp)> = (0..=i)
                .map(|j| (i - j, f.binom(2 * i as i64 - c1 as i64 - a2 as i64, j as u64)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            // H^(l) H^(m) H^(r), merged left to right
            let mut lm: BTreeMap<u32, Fp> = BTreeMap::new();
            let mut buf = Vec::new();
            for &(l, cl) in &left {
                for &(m, cm) in &mid {
                    buf.clear();
                    self.h_merge(l, m, &mut buf);
                    for &(k, ck) in &buf {
                        *lm.entry(k).or_insert(f.zero()) += cl * cm * ck;
                    }
                }
            }
            let mut lmr: BTreeMap<u32, Fp> = BTreeMap::new();
            for (&k, &ck) in &lm {
                if ck.is_zero() {
                    continue;
                }
                for &(r, cr) in &right {
                    buf.clear();
                    self.h_merge(k, r, &mut buf);
                    for &(s, cs) in &buf {
                        *lmr.entry(s).or_insert(f.zero()) += ck * cr * cs;
                    }
                }
            }
            for (h, c) in lmr {
                let c = c * outer;
                if c.is_zero() {
                    continue;
                }
                let e = acc.entry(HMonomial::new(d_pow, h, e_pow)).or_insert(f.zero());
                *e += c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Memoized monomial product.
    pub fn mul_monomials(&self, x: HMonomial, y: HMonomial) -> Product {
        if let Some(p) = self.memo.read().get(&(x, y)) {
            return p.clone();
        }
        let p: Product = self.compute_product(x, y).into();
        self.memo.write().insert((x, y), p.clone());
        p
    }

    pub fn mul(&self, a: &HElement, b: &HElement) -> HElement {
        let mut out = HElement::zero();
        for (x, cx) in a.terms() {
            for (y, cy) in b.terms() {
                let c = cx * cy;
                for &(m, cm) in self.mul_monomials(x, y).iter() {
                    out.add_term(m, c * cm);
                }
            }
        }
        out
    }

    pub fn tensor_mul(&self, a: &HTensor, b: &HTensor) -> HTensor {
        let mut out = HTensor::zero();
        for (x1, y1, c1) in a.terms() {
            for (x2, y2, c2) in b.terms() {
                let left = self.mul_monomials(x1, x2);
                let right = self.mul_monomials(y1, y2);
                for &(l, cl) in left.iter() {
                    for &(r, cr) in right.iter() {
                        out.add_term(l, r, c1 * c2 * cl * cr);
                    }
                }
            }
        }
        out
    }

    /// `Δ(X^(n)) = Σ_i X^(n-i) ⊗ X^(i)` for each generator family.
    pub fn coproduct_gen(&self, g: HGen, n: u32) -> HTensor {
        let mut t = HTensor::zero();
        for i in 0..=n {
            t.add_term(g.power(n - i), g.power(i), self.field.one());
        }
        t
    }

    pub fn coproduct_monomial(&self, m: HMonomial) -> HTensor {
        let dh = self.tensor_mul(&self.coproduct_gen(HGen::D, m.d), &self.coproduct_gen(HGen::H, m.h));
        self.tensor_mul(&dh, &self.coproduct_gen(HGen::E, m.e))
    }

    pub fn coproduct(&self, a: &HElement) -> HTensor {
        let mut out = HTensor::zero();
        for (m, c) in a.terms() {
            for (x, y, cm) in self.coproduct_monomial(m).terms() {
                out.add_term(x, y, c * cm);
            }
        }
        out
    }

    pub fn counit(&self, a: &HElement) -> Fp {
        a.counit(&self.field)
    }

    /// Anti-automorphism swapping `D` and `E` and fixing `H`. On a basis
    /// monomial the reversed product is already normal ordered.
    pub fn theta(&self, a: &HElement) -> HElement {
        let mut out = HElement::zero();
        for (m, c) in a.terms() {
            out.add_term(HMonomial::new(m.e, m.h, m.d), c);
        }
        out
    }

    /// `σ(H^(n)) = (-1)^n Σ_i binom(n-1, i) H^(n-i)`.
    pub fn sigma_h(&self, n: u32) -> HElement {
        let f = &self.field;
        let mut out = HElement::zero();
        for i in 0..=n {
            out.add_term(
                HMonomial::h(n - i),
                f.sign(n as i64) * f.binom(n as i64 - 1, i as u64),
            );
        }
        out
    }

    /// Automorphism swapping `D` and `E` and sending `L_0` to `-L_0`.
    pub fn sigma(&self, a: &HElement) -> HElement {
        let mut out = HElement::zero();
        for (m, c) in a.terms() {
            let x = self.mul(&self.gen(HGen::E, m.d), &self.sigma_h(m.h));
            let x = self.mul(&x, &self.gen(HGen::D, m.e));
            out = out.add(&x.scale(c));
        }
        out
    }

    /// Action on `F[x, x^-1]` with `deg x^m = -m`.
    pub fn act_laurent_gen(&self, g: HGen, r: u32, poly: &LaurentPoly) -> LaurentPoly {
        let f = &self.field;
        let r64 = r as u64;
        let mut out = LaurentPoly::zero();
        for (m, c) in poly.terms() {
            let (k, coeff) = match g {
                HGen::D => (m - r as i64, f.sign(r as i64) * f.binom(m, r64)),
                HGen::H => (m, f.binom(2 * m, r64)),
                HGen::E => (m + r as i64, f.binom(-m, r64)),
            };
            out.add_term(k, c * coeff);
        }
        out
    }

    pub fn act_laurent(&self, a: &HElement, poly: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in a.terms() {
            let v = self.act_laurent_gen(HGen::E, m.e, poly);
            let v = self.act_laurent_gen(HGen::H, m.h, &v);
            let v = self.act_laurent_gen(HGen::D, m.d, &v);
            out = out.add(&v.scale(c));
        }
        out
    }

    /// Parses sums of products such as `3 E^(1) D^(2) - H^(1) + 1` and
    /// returns their normal-ordered value.
    pub fn parse(&self, text: &str) -> Result<HElement> {
        Parser::new(self, text).parse()
    }
}

struct Parser<'a> {
    alg: &'a HAlgebra,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(alg: &'a HAlgebra, text: &str) -> Self {
        Parser {
            alg,
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("number too large"))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn parse(mut self) -> Result<HElement> {
        let f = self.alg.field.clone();
        let mut total = HElement::zero();
        let mut sign = f.one();
        if self.peek() == Some('-') {
            self.pos += 1;
            sign = -sign;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            total = total.add(&t.scale(sign));
            match self.peek() {
                None => break,
                Some('+') => sign = f.one(),
                Some('-') => sign = -f.one(),
                Some(_) => return Err(self.err("unexpected character")),
            }
            self.pos += 1;
        }
        Ok(total)
    }

    fn term(&mut self) -> Result<HElement> {
        let f = self.alg.field.clone();
        let mut acc = self.alg.one();
        let mut seen = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    acc = acc.scale(f.elem_i128(n as i128));
                }
                Some(g @ ('D' | 'H' | 'E')) => {
                    self.pos += 1;
                    let mut n = 1u64;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        if self.peek() == Some('(') {
                            self.pos += 1;
                            n = self.number()?;
                            self.expect(')')?;
                        } else {
                            n = self.number()?;
                        }
                    }
                    let n = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                    let gen = match g {
                        'D' => HGen::D,
                        'H' => HGen::H,
                        _ => HGen::E,
                    };
                    acc = self.alg.mul(&acc, &self.alg.gen(gen, n));
                }
                Some('*') if seen => {
                    self.pos += 1;
                    continue;
                }
                _ => break,
            }
            seen = true;
        }
        if !seen {
            return Err(self.err("expected a term"));
        }
        Ok(acc)
    }
}
