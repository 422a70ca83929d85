//! Truncated vacuum modules of affine and Virasoro algebras.
//!
//! Vectors are written in the PBW basis `Y_1 Y_2 ... Y_r 1` of creation
//! modes (`a(-s)`, `s >= 1`, or `L(-s)`, `s >= 2`), sorted by `s`
//! descending and then by generator index. Every operation knows the degree
//! of its result and fails with [`Error::TruncationOverflow`] instead of
//! producing a vector above the truncation.

use std::cmp::{Ordering, Reverse};
use std::collections::{btree_map, BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::hopf::{HAlgebra, HElement, HGen};
use crate::lie::{LieSpec, Mode, ModeAlgebra, ModeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Creation {
    pub s: u32,
    pub gen: u16,
}

impl Creation {
    fn key(self) -> (Reverse<u32>, u16) {
        (Reverse(self.s), self.gen)
    }

    pub fn mode(self) -> Mode {
        Mode {
            gen: self.gen,
            index: -(self.s as i64),
        }
    }
}

impl PartialOrd for Creation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Creation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

pub type Word = SmallVec<[Creation; 8]>;

/// A sorted word of creation modes applied to the vacuum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PbwMonomial {
    word: Word,
    degree: u32,
}

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial {
            word: SmallVec::new(),
            degree: 0,
        }
    }

    /// Sorts the word into canonical order.
    pub fn from_word(mut word: Word) -> Self {
        word.sort();
        let degree = word.iter().map(|c| c.s).sum();
        PbwMonomial { word, degree }
    }

    pub fn word(&self) -> &[Creation] {
        &self.word
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_vacuum(&self) -> bool {
        self.word.is_empty()
    }

    /// Leading mode and the rest of the word.
    pub fn split_first(&self) -> Option<(Creation, PbwMonomial)> {
        let (&first, rest) = self.word.split_first()?;
        Some((
            first,
            PbwMonomial {
                word: rest.iter().copied().collect(),
                degree: self.degree - first.s,
            },
        ))
    }

    fn prepend(&self, c: Creation) -> PbwMonomial {
        let mut word = Word::with_capacity(self.word.len() + 1);
        word.push(c);
        word.extend_from_slice(&self.word);
        PbwMonomial {
            word,
            degree: self.degree + c.s,
        }
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then the words lexicographically.
impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.word.as_slice().cmp(other.word.as_slice()))
    }
}

/// Sparse vector in the PBW basis, possibly spread over several degrees.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVector {
    terms: BTreeMap<PbwMonomial, Fp>,
}

impl GradedVector {
    pub fn zero() -> Self {
        GradedVector::default()
    }

    pub fn monomial(m: PbwMonomial, c: Fp) -> Self {
        let mut v = GradedVector::zero();
        v.add_term(m, c);
        v
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: Fp) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &GradedVector, c: Fp) {
        if c.is_zero() {
            return;
        }
        for (m, &a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn add(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        for (m, &a) in &other.terms {
            out.add_term(m.clone(), a);
        }
        out
    }

    pub fn sub(&self, other: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        for (m, &a) in &other.terms {
            out.add_term(m.clone(), -a);
        }
        out
    }

    pub fn scale(&self, c: Fp) -> GradedVector {
        let mut out = GradedVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, Fp)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Option<Fp> {
        self.terms.get(m).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms; `None` for mixed or zero vectors.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| m.degree).collect();
        d.dedup();
        d
    }

    /// The degree-`n` component.
    pub fn component(&self, n: u32) -> GradedVector {
        GradedVector {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == n)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Coefficient of the vacuum.
    pub fn vacuum_coeff(&self) -> Option<Fp> {
        self.coeff(&PbwMonomial::vacuum())
    }
}

type Memo<K> = RwLock<HashMap<K, Arc<GradedVector>>>;

fn cached<K: std::hash::Hash + Eq + Clone>(
    memo: &Memo<K>,
    key: K,
    compute: impl FnOnce() -> Result<GradedVector>,
) -> Result<Arc<GradedVector>> {
    if let Some(v) = memo.read().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(compute()?);
    memo.write().insert(key, v.clone());
    Ok(v)
}

/// A vacuum module truncated to degrees `0..=N`, with PBW bases per degree.
pub struct Carrier {
    field: PrimeField,
    modes: ModeAlgebra,
    hopf: HAlgebra,
    central: Fp,
    truncation: u32,
    bases: Vec<Vec<PbwMonomial>>,
    index: Vec<HashMap<PbwMonomial, usize>>,
    apply_memo: Memo<(Mode, PbwMonomial)>,
    hact_memo: Memo<(HGen, u32, PbwMonomial)>,
    composite_memo: Memo<(PbwMonomial, i64, PbwMonomial)>,
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl Carrier {
    /// `central` is the level for affine algebras and the central charge
    /// for Virasoro.
    pub fn new(modes: ModeAlgebra, central: Fp, truncation: u32) -> Self {
        let field = modes.field().clone();
        let min_s = match modes.kind() {
            ModeKind::Affine(_) => 1,
            ModeKind::Virasoro => 2,
        };
        let ngens = modes.num_gens() as u16;
        let mut bases = Vec::new();
        for n in 0..=truncation {
            let mut out = Vec::new();
            let mut word = Word::new();
            enumerate_words(n, u32::MAX, 0, min_s, ngens, &mut word, &mut out);
            let mut monos: Vec<PbwMonomial> = out.into_iter().map(PbwMonomial::from_word).collect();
            monos.sort();
            bases.push(monos);
        }
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        Carrier {
            hopf: HAlgebra::new(&field),
            field,
            modes,
            central,
            truncation,
            bases,
            index,
            apply_memo: RwLock::new(HashMap::new()),
            hact_memo: RwLock::new(HashMap::new()),
            composite_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn affine(spec: LieSpec, level: Fp, truncation: u32) -> Self {
        Carrier::new(ModeAlgebra::affine(Arc::new(spec)), level, truncation)
    }

    pub fn virasoro(field: &PrimeField, c: Fp, truncation: u32) -> Self {
        Carrier::new(ModeAlgebra::virasoro(field), c, truncation)
    }

    pub fn describe(&self) -> String {
        match self.modes.kind() {
            ModeKind::Affine(spec) => format!(
                "affine vacuum module (dim g = {}, level {}) over F_{} truncated at degree {}",
                spec.dim(),
                self.central.signed(),
                self.field.p(),
                self.truncation
            ),
            ModeKind::Virasoro => format!(
                "Virasoro vacuum module (c = {}) over F_{} truncated at degree {}",
                self.central.signed(),
                self.field.p(),
                self.truncation
            ),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn modes(&self) -> &ModeAlgebra {
        &self.modes
    }

    pub fn hopf(&self) -> &HAlgebra {
        &self.hopf
    }

    pub fn central(&self) -> Fp {
        self.central
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_virasoro(&self) -> bool {
        matches!(self.modes.kind(), ModeKind::Virasoro)
    }

    /// Weight of the generating fields: 1 (affine) or 2 (Virasoro).
    pub fn weight(&self) -> i64 {
        self.modes.weight()
    }

    pub fn num_gens(&self) -> usize {
        self.modes.num_gens()
    }

    pub fn basis(&self, n: u32) -> Result<&[PbwMonomial]> {
        self.bases
            .get(n as usize)
            .map(|b| b.as_slice())
            .ok_or(Error::DegreeOutOfRange {
                degree: n as i64,
                truncation: self.truncation,
            })
    }

    pub fn dim(&self, n: u32) -> usize {
        self.bases.get(n as usize).map_or(0, |b| b.len())
    }

    pub fn index_of(&self, m: &PbwMonomial) -> Option<usize> {
        self.index.get(m.degree as usize)?.get(m).copied()
    }

    pub fn vacuum(&self) -> GradedVector {
        GradedVector::monomial(PbwMonomial::vacuum(), self.field.one())
    }

    pub fn basis_vector(&self, n: u32, i: usize) -> GradedVector {
        GradedVector::monomial(self.bases[n as usize][i].clone(), self.field.one())
    }

    /// Coordinates of the degree-`n` component of `v`.
    pub fn coords(&self, v: &GradedVector, n: u32) -> Vec<Fp> {
        let mut out = vec![self.field.zero(); self.dim(n)];
        for (m, c) in v.terms() {
            if m.degree == n {
                out[self.index_of(m).expect("basis monomial")] = c;
            }
        }
        out
    }

    pub fn from_coords(&self, n: u32, coords: &[Fp]) -> GradedVector {
        let mut v = GradedVector::zero();
        for (m, &c) in self.bases[n as usize].iter().zip(coords) {
            v.add_term(m.clone(), c);
        }
        v
    }

    pub fn format_monomial(&self, m: &PbwMonomial) -> String {
        let mut parts: Vec<String> = m
            .word
            .iter()
            .map(|c| self.modes.mode_name(c.mode()))
            .collect();
        parts.push("1".to_string());
        parts.join(" ")
    }

    pub fn format_vector(&self, v: &GradedVector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.terms()
            .map(|(m, c)| format!("{}*[{}]", c.signed(), self.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses a word such as `e(0) f(-1)` or `L(2) L(-2)` into Lie modes,
    /// leftmost first. A trailing `1` is optional.
    pub fn parse_modes(&self, text: &str) -> Result<Vec<Mode>> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, rest) = tok
                .split_once('(')
                .ok_or_else(|| Error::Parse(format!("bad mode `{tok}`")))?;
            let idx: i64 = rest
                .strip_suffix(')')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad mode index in `{tok}`")))?;
            let gen = (0..self.num_gens())
                .find(|&g| self.modes.gen_name(g) == name)
                .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            out.push(Mode::new(gen, idx));
        }
        Ok(out)
    }

    fn check_degree(&self, degree: i64) -> Result<bool> {
        if degree > self.truncation as i64 {
            return Err(Error::TruncationOverflow {
                degree,
                truncation: self.truncation,
            });
        }
        Ok(degree >= 0)
    }

    fn creation(&self, x: Mode) -> Option<Creation> {
        let min_s = if self.is_virasoro() { 2 } else { 1 };
        (x.index <= -min_s).then_some(Creation {
            s: (-x.index) as u32,
            gen: x.gen,
        })
    }

    /// Lie mode applied to a PBW monomial, normal ordered.
    pub fn apply_mode_monomial(&self, x: Mode, m: &PbwMonomial) -> Result<Arc<GradedVector>> {
        assert!((x.gen as usize) < self.num_gens(), "generator index");
        if !self.check_degree(m.degree as i64 - x.index)? {
            return Ok(Arc::new(GradedVector::zero()));
        }
        cached(&self.apply_memo, (x, m.clone()), || {
            let one = self.field.one();
            let created = self.creation(x);
            let Some((y1, rest)) = m.split_first() else {
                return Ok(match created {
                    Some(c) => GradedVector::monomial(m.prepend(c), one),
                    None => GradedVector::zero(),
                });
            };
            if let Some(c) = created {
                if c <= y1 {
                    return Ok(GradedVector::monomial(m.prepend(c), one));
                }
            }
            // X Y1 R = Y1 (X R) + [X, Y1] R
            let mut out = GradedVector::zero();
            let xr = self.apply_mode_monomial(x, &rest)?;
            for (t, c) in xr.terms() {
                out.add_scaled(&*self.apply_mode_monomial(y1.mode(), t)?, c);
            }
            let br = self.modes.bracket_modes(x, y1.mode());
            for (&z, &c) in &br.modes {
                out.add_scaled(&*self.apply_mode_monomial(z, &rest)?, c);
            }
            out.add_term(rest, br.central * self.central);
            Ok(out)
        })
    }

    /// `a(n) v` or `L_n v`.
    pub fn apply_mode(&self, x: Mode, v: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&*self.apply_mode_monomial(x, m)?, c);
        }
        Ok(out)
    }

    /// Applies a word of Lie modes to the vacuum, rightmost first.
    pub fn normal_order_word(&self, word: &[Mode]) -> Result<GradedVector> {
        let mut v = self.vacuum();
        for &x in word.iter().rev() {
            v = self.apply_mode(x, &v)?;
        }
        Ok(v)
    }

    /// Mode `x_j` of a generating field in vertex-operator indexing:
    /// `a_j = a(j)`, `ω_j = L_{j-1}`.
    pub fn vertex_index_mode(&self, gen: usize, j: i64) -> Mode {
        Mode::new(gen, j - (self.weight() - 1))
    }

    /// The state `a(-1) 1` or `ω = L(-2) 1`.
    pub fn generator_state(&self, gen: usize) -> GradedVector {
        let s = self.weight() as u32;
        GradedVector::monomial(
            PbwMonomial::from_word(SmallVec::from_slice(&[Creation { s, gen: gen as u16 }])),
            self.field.one(),
        )
    }

    /// `X^(r)` on a monomial through the coproduct: the leading mode and the
    /// rest of the word share the divided power.
    pub fn act_gen_monomial(&self, g: HGen, r: u32, m: &PbwMonomial) -> Result<Arc<GradedVector>> {
        let one = self.field.one();
        if r == 0 {
            return Ok(Arc::new(GradedVector::monomial(m.clone(), one)));
        }
        let shift = match g {
            HGen::D => r as i64,
            HGen::H => 0,
            HGen::E => -(r as i64),
        };
        if !self.check_degree(m.degree as i64 + shift)? {
            return Ok(Arc::new(GradedVector::zero()));
        }
        cached(&self.hact_memo, (g, r, m.clone()), || {
            let Some((y1, rest)) = m.split_first() else {
                return Ok(GradedVector::zero());
            };
            let mut out = GradedVector::zero();
            for i in 0..=r {
                let (z, c) = self.modes.act_gen_on_mode(g, r - i, y1.mode());
                if c.is_zero() {
                    continue;
                }
                let tail = self.act_gen_monomial(g, i, &rest)?;
                for (t, ct) in tail.terms() {
                    out.add_scaled(&*self.apply_mode_monomial(z, t)?, c * ct);
                }
            }
            Ok(out)
        })
    }

    pub fn act_gen(&self, g: HGen, r: u32, v: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&*self.act_gen_monomial(g, r, m)?, c);
        }
        Ok(out)
    }

    /// Action of an arbitrary element of the divided-power algebra.
    pub fn act(&self, a: &HElement, v: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (m, c) in a.terms() {
            let w = self.act_gen(HGen::E, m.e, v)?;
            let w = self.act_gen(HGen::H, m.h, &w)?;
            let w = self.act_gen(HGen::D, m.d, &w)?;
            out.add_scaled(&w, c);
        }
        Ok(out)
    }

    /// `v_m w` for basis monomials, by the iterate formula
    /// `(x_n r)_m w = Σ_i (-1)^i binom(n,i) (x_{n-i} r_{m+i} w - (-1)^n r_{n+m-i} x_i w)`
    /// applied to the leading creation mode `x_n` of `v = x_n r`.
    pub fn composite_mode_monomial(
        &self,
        v: &PbwMonomial,
        m: i64,
        w: &PbwMonomial,
    ) -> Result<Arc<GradedVector>> {
        let one = self.field.one();
        if v.is_vacuum() {
            return Ok(Arc::new(if m == -1 {
                GradedVector::monomial(w.clone(), one)
            } else {
                GradedVector::zero()
            }));
        }
        let (dv, dw) = (v.degree as i64, w.degree as i64);
        if !self.check_degree(dv + dw - m - 1)? {
            return Ok(Arc::new(GradedVector::zero()));
        }
        cached(&self.composite_memo, (v.clone(), m, w.clone()), || {
            let f = &self.field;
            let (y1, r) = v.split_first().expect("nonempty word");
            let wt = self.weight();
            let gen = y1.gen as usize;
            let n = wt - 1 - y1.s as i64;
            let dr = r.degree as i64;
            let wvec = GradedVector::monomial(w.clone(), one);
            let imax = (dr + dw - m - 1).max(wt + dw - 1);
            let mut out = GradedVector::zero();
            for i in 0..=imax.max(0) {
                let c = f.sign(i) * f.binom(n, i as u64);
                if c.is_zero() {
                    continue;
                }
                let rw = self.composite_mode_monomial(&r, m + i, w)?;
                if !rw.is_zero() {
                    let t = self.apply_mode(self.vertex_index_mode(gen, n - i), &rw)?;
                    out.add_scaled(&t, c);
                }
                let xw = self.apply_mode(self.vertex_index_mode(gen, i), &wvec)?;
                if !xw.is_zero() {
                    let t = self.composite_mode(&GradedVector::monomial(r.clone(), one), n + m - i, &xw)?;
                    out.add_scaled(&t, -c * f.sign(n));
                }
            }
            Ok(out)
        })
    }

    /// `v_m w` for arbitrary vectors, in vertex-operator indexing
    /// (`Y(v, x) = Σ v_m x^(-m-1)`).
    pub fn composite_mode(&self, v: &GradedVector, m: i64, w: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (a, ca) in v.terms() {
            for (b, cb) in w.terms() {
                out.add_scaled(&*self.composite_mode_monomial(a, m, b)?, ca * cb);
            }
        }
        Ok(out)
    }
}

fn enumerate_words(
    remaining: u32,
    max_s: u32,
    min_gen_at_max: u16,
    min_s: u32,
    ngens: u16,
    word: &mut Word,
    out: &mut Vec<Word>,
) {
    if remaining == 0 {
        out.push(word.clone());
        return;
    }
    let top = remaining.min(max_s);
    for s in (min_s..=top).rev() {
        let first_gen = if s == max_s { min_gen_at_max } else { 0 };
        for gen in first_gen..ngens {
            word.push(Creation { s, gen });
            enumerate_words(remaining - s, s, gen, min_s, ngens, word, out);
            word.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(p: u64, level: i64, n: u32) -> Carrier {
        let f = PrimeField::new(p).unwrap();
        Carrier::affine(LieSpec::sl2(&f), f.elem(level), n)
    }

    fn vir(p: u64, c: i64, n: u32) -> Carrier {
        let f = PrimeField::new(p).unwrap();
        Carrier::virasoro(&f, f.elem(c), n)
    }

    #[test]
    fn small_bases() {
        let v = vir(7, 1, 4);
        let names: Vec<String> = v.basis(4).unwrap().iter().map(|m| v.format_monomial(m)).collect();
        assert_eq!(names, ["L(-4) 1", "L(-2) L(-2) 1"]);
        let a = sl2(5, 1, 2);
        let names: Vec<String> = a.basis(1).unwrap().iter().map(|m| a.format_monomial(m)).collect();
        assert_eq!(names, ["e(-1) 1", "h(-1) 1", "f(-1) 1"]);
        assert_eq!(a.dim(2), 9);
        assert!(a.basis(3).is_err());
    }

    #[test]
    fn normal_ordering_examples() {
        let a = sl2(5, 1, 3);
        let w = a.parse_modes("e(0) f(-1)").unwrap();
        let v = a.normal_order_word(&w).unwrap();
        assert_eq!(a.format_vector(&v), "1*[h(-1) 1]");
        let z = a.normal_order_word(&a.parse_modes("h(2)").unwrap()).unwrap();
        assert!(z.is_zero());
        let v7 = vir(7, 3, 4);
        assert!(v7.normal_order_word(&v7.parse_modes("L(-1)").unwrap()).unwrap().is_zero());
        let x = v7.normal_order_word(&v7.parse_modes("L(2) L(-2)").unwrap()).unwrap();
        // c/2 with c = 3: 3 * 4 = 12 = 5 mod 7
        assert_eq!(x, v7.vacuum().scale(v7.field().elem(5)));
        let y = a.normal_order_word(&a.parse_modes("e(1) f(-1)").unwrap()).unwrap();
        assert_eq!(y, a.vacuum());
    }

    #[test]
    fn overflow_is_reported() {
        let a = sl2(5, 1, 2);
        let err = a.normal_order_word(&a.parse_modes("e(-2) e(-1)").unwrap()).unwrap_err();
        assert_eq!(err, Error::TruncationOverflow { degree: 3, truncation: 2 });
    }

    #[test]
    fn translation_by_d() {
        let a = sl2(5, 1, 3);
        let x = a.act_gen(HGen::D, 1, &a.generator_state(0)).unwrap();
        assert_eq!(a.format_vector(&x), "1*[e(-2) 1]");
    }

    #[test]
    fn composite_examples() {
        let a = sl2(5, 1, 4);
        let h = a.generator_state(1);
        let e = a.generator_state(0);
        let x = a.composite_mode(&h, 0, &e).unwrap();
        assert_eq!(x, e.scale(a.field().elem(2)));
        let one = a.vacuum();
        assert_eq!(a.composite_mode(&one, -1, &e).unwrap(), e);
        assert!(a.composite_mode(&one, 0, &e).unwrap().is_zero());
    }
}
