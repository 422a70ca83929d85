//! Finite-dimensional Lie algebras with an invariant symmetric form, their
//! affinizations, the Virasoro algebra, and the action of the divided-power
//! algebra on modes.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::hopf::{HElement, HGen};

/// Structure constants and form over a fixed prime field.
#[derive(Clone, Debug)]
pub struct LieSpec {
    field: PrimeField,
    names: Vec<String>,
    /// `bracket[a][b][c]` is the coefficient of basis element `c` in `[a, b]`.
    bracket: Vec<Vec<Vec<Fp>>>,
    form: Vec<Vec<Fp>>,
}

/// The JSON exchange format. Brackets are sparse `[a, b, {c: coeff}]`
/// entries for ordered pairs; the reversed pair is filled in by
/// antisymmetry.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieDocument {
    #[serde(default)]
    pub p: Option<u64>,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<(String, String, BTreeMap<String, i64>)>,
    pub form: Vec<Vec<i64>>,
}

fn axiom(name: &str, witness: &[&str], detail: String) -> Error {
    Error::LieAxiom {
        axiom: name.to_string(),
        witness: witness.iter().map(|s| s.to_string()).collect(),
        detail,
    }
}

impl LieSpec {
    /// Builds and validates a Lie algebra; `None` entries of `bracket` are
    /// filled in by antisymmetry.
    fn from_parts(
        field: &PrimeField,
        names: Vec<String>,
        mut bracket: Vec<Vec<Option<Vec<Fp>>>>,
        form: Vec<Vec<Fp>>,
    ) -> Result<Self> {
        let n = names.len();
        let zero = vec![field.zero(); n];
        for a in 0..n {
            for b in 0..n {
                if bracket[a][b].is_none() {
                    bracket[a][b] = match &bracket[b][a] {
                        Some(v) => Some(v.iter().map(|&x| -x).collect()),
                        None => Some(zero.clone()),
                    };
                }
            }
        }
        let bracket: Vec<Vec<Vec<Fp>>> = bracket
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.expect("filled")).collect())
            .collect();
        let spec = LieSpec {
            field: field.clone(),
            names,
            bracket,
            form,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_document(doc: &LieDocument, field: &PrimeField) -> Result<Self> {
        if let Some(p) = doc.p {
            if p != field.p() as u64 {
                return Err(Error::LieDocument(format!(
                    "document is for p = {p} but the run uses p = {}",
                    field.p()
                )));
            }
        }
        let n = doc.basis.len();
        let mut index = BTreeMap::new();
        for (i, name) in doc.basis.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || "()".contains(c)) {
                return Err(Error::LieDocument(format!("bad basis name `{name}`")));
            }
            if index.insert(name.as_str(), i).is_some() {
                return Err(Error::LieDocument(format!("duplicate basis name `{name}`")));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::LieDocument(format!("unknown basis element `{s}`")))
        };
        let mut bracket: Vec<Vec<Option<Vec<Fp>>>> = vec![vec![None; n]; n];
        for (a, b, value) in &doc.brackets {
            let (ia, ib) = (lookup(a)?, lookup(b)?);
            let mut v = vec![field.zero(); n];
            for (c, &x) in value {
                v[lookup(c)?] += field.elem(x);
            }
            if bracket[ia][ib].is_some() {
                return Err(Error::LieDocument(format!("bracket [{a}, {b}] listed twice")));
            }
            if let Some(rev) = &bracket[ib][ia] {
                if rev.iter().zip(&v).any(|(&x, &y)| x != -y) {
                    return Err(axiom(
                        "antisymmetry",
                        &[a, b],
                        format!("[{a}, {b}] and [{b}, {a}] are both listed and do not cancel"),
                    ));
                }
            }
            bracket[ia][ib] = Some(v);
        }
        if doc.form.len() != n || doc.form.iter().any(|r| r.len() != n) {
            return Err(Error::LieDocument(format!("form must be a {n}x{n} matrix")));
        }
        let form = doc
            .form
            .iter()
            .map(|r| r.iter().map(|&x| field.elem(x)).collect())
            .collect();
        LieSpec::from_parts(field, doc.basis.clone(), bracket, form)
    }

    pub fn from_json(text: &str, field: &PrimeField) -> Result<Self> {
        let doc: LieDocument =
            serde_json::from_str(text).map_err(|e| Error::LieDocument(e.to_string()))?;
        LieSpec::from_document(&doc, field)
    }

    /// `sl2` with basis `e, h, f` and form `<e,f> = 1`, `<h,h> = 2`.
    pub fn sl2(field: &PrimeField) -> Self {
        LieSpec::from_json(
            r#"{"basis": ["e", "h", "f"],
                "brackets": [["e", "f", {"h": 1}], ["h", "e", {"e": 2}], ["h", "f", {"f": -2}]],
                "form": [[0, 0, 1], [0, 2, 0], [1, 0, 0]]}"#,
            field,
        )
        .expect("sl2 is a valid Lie algebra")
    }

    /// One-dimensional abelian algebra with `<a,a> = 1`.
    pub fn abelian1(field: &PrimeField) -> Self {
        LieSpec::from_json(r#"{"basis": ["a"], "form": [[1]]}"#, field)
            .expect("abelian1 is a valid Lie algebra")
    }

    pub fn builtin(name: &str, field: &PrimeField) -> Option<Self> {
        match name {
            "sl2" => Some(LieSpec::sl2(field)),
            "abelian1" => Some(LieSpec::abelian1(field)),
            _ => None,
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[Fp] {
        &self.bracket[a][b]
    }

    pub fn form(&self, a: usize, b: usize) -> Fp {
        self.form[a][b]
    }

    fn bracket_vec(&self, u: &[Fp], v: &[Fp]) -> Vec<Fp> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for a in 0..n {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if v[b].is_zero() {
                    continue;
                }
                let c = u[a] * v[b];
                for (o, &x) in out.iter_mut().zip(&self.bracket[a][b]) {
                    *o += c * x;
                }
            }
        }
        out
    }

    fn form_vec(&self, u: &[Fp], v: &[Fp]) -> Fp {
        let mut acc = self.field.zero();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                acc += u[a] * self.form[a][b] * v[b];
            }
        }
        acc
    }

    fn unit(&self, a: usize) -> Vec<Fp> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[a] = self.field.one();
        v
    }

    /// Checks form symmetry, antisymmetry, Jacobi and invariance, in that
    /// order, over lexicographically ordered basis tuples.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let nm = |i: usize| self.names[i].as_str();
        for a in 0..n {
            for b in 0..n {
                if self.form[a][b] != self.form[b][a] {
                    return Err(axiom(
                        "symmetry of the form",
                        &[nm(a), nm(b)],
                        format!(
                            "<{}, {}> = {} but <{}, {}> = {}",
                            nm(a),
                            nm(b),
                            self.form[a][b].signed(),
                            nm(b),
                            nm(a),
                            self.form[b][a].signed()
                        ),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in a..n {
                let ok = self.bracket[a][b]
                    .iter()
                    .zip(&self.bracket[b][a])
                    .all(|(&x, &y)| (x + y).is_zero());
                if !ok || (a == b && self.bracket[a][a].iter().any(|x| !x.is_zero())) {
                    return Err(axiom(
                        "antisymmetry",
                        &[nm(a), nm(b)],
                        format!("[{}, {}] + [{}, {}] is nonzero", nm(a), nm(b), nm(b), nm(a)),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ua, ub, uc) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket_vec(&ua, &self.bracket_vec(&ub, &uc));
                    let t2 = self.bracket_vec(&ub, &self.bracket_vec(&uc, &ua));
                    let t3 = self.bracket_vec(&uc, &self.bracket_vec(&ua, &ub));
                    if t1.iter().zip(&t2).zip(&t3).any(|((&x, &y), &z)| !(x + y + z).is_zero()) {
                        return Err(axiom(
                            "Jacobi identity",
                            &[nm(a), nm(b), nm(c)],
                            "cyclic sum of nested brackets is nonzero".to_string(),
                        ));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ua, ub, uc) = (self.unit(a), self.unit(b), self.unit(c));
                    let lhs = self.form_vec(&self.bracket_vec(&ua, &ub), &uc);
                    let rhs = self.form_vec(&ua, &self.bracket_vec(&ub, &uc));
                    if lhs != rhs {
                        return Err(axiom(
                            "invariance of the form",
                            &[nm(a), nm(b), nm(c)],
                            format!(
                                "<[{}, {}], {}> = {} but <{}, [{}, {}]> = {}",
                                nm(a),
                                nm(b),
                                nm(c),
                                lhs.signed(),
                                nm(a),
                                nm(b),
                                nm(c),
                                rhs.signed()
                            ),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A mode `a(n)` of the affine algebra, or `L_n` of the Virasoro algebra
/// (where `gen` is always 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub gen: u16,
    pub index: i64,
}

impl Mode {
    pub fn new(gen: usize, index: i64) -> Self {
        Mode {
            gen: gen as u16,
            index,
        }
    }

    /// The degree `-n` of the mode.
    pub fn degree(self) -> i64 {
        -self.index
    }
}

/// Linear combination of modes plus a multiple of the central element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeElement {
    pub modes: BTreeMap<Mode, Fp>,
    pub central: Fp,
}

impl ModeElement {
    pub fn zero(field: &PrimeField) -> Self {
        ModeElement {
            modes: BTreeMap::new(),
            central: field.zero(),
        }
    }

    pub fn mode(field: &PrimeField, m: Mode) -> Self {
        let mut x = ModeElement::zero(field);
        x.add_mode(m, field.one());
        x
    }

    pub fn central(field: &PrimeField, c: Fp) -> Self {
        let mut x = ModeElement::zero(field);
        x.central = c;
        x
    }

    pub fn add_mode(&mut self, m: Mode, c: Fp) {
        if c.is_zero() {
            return;
        }
        let e = self.modes.entry(m).or_insert(c.zero_like());
        *e += c;
        if e.is_zero() {
            self.modes.remove(&m);
        }
    }

    pub fn add(&self, other: &ModeElement) -> ModeElement {
        let mut out = self.clone();
        for (&m, &c) in &other.modes {
            out.add_mode(m, c);
        }
        out.central += other.central;
        out
    }

    pub fn scale(&self, c: Fp) -> ModeElement {
        let mut out = ModeElement {
            modes: BTreeMap::new(),
            central: self.central * c,
        };
        for (&m, &a) in &self.modes {
            out.add_mode(m, a * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty() && self.central.is_zero()
    }
}

#[derive(Clone, Debug)]
pub enum ModeKind {
    Affine(Arc<LieSpec>),
    Virasoro,
}

/// The affine algebra of a [`LieSpec`] or the Virasoro algebra, with its
/// bracket and the divided-power action on modes.
#[derive(Clone, Debug)]
pub struct ModeAlgebra {
    field: PrimeField,
    kind: ModeKind,
}

impl ModeAlgebra {
    pub fn affine(spec: Arc<LieSpec>) -> Self {
        ModeAlgebra {
            field: spec.field().clone(),
            kind: ModeKind::Affine(spec),
        }
    }

    pub fn virasoro(field: &PrimeField) -> Self {
        ModeAlgebra {
            field: field.clone(),
            kind: ModeKind::Virasoro,
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn kind(&self) -> &ModeKind {
        &self.kind
    }

    pub fn num_gens(&self) -> usize {
        match &self.kind {
            ModeKind::Affine(s) => s.dim(),
            ModeKind::Virasoro => 1,
        }
    }

    /// Conformal weight of the generating field: 1 for `a(z)`, 2 for `T(z)`.
    pub fn weight(&self) -> i64 {
        match &self.kind {
            ModeKind::Affine(_) => 1,
            ModeKind::Virasoro => 2,
        }
    }

    pub fn gen_name(&self, g: usize) -> &str {
        match &self.kind {
            ModeKind::Affine(s) => s.name(g),
            ModeKind::Virasoro => "L",
        }
    }

    pub fn central_name(&self) -> &'static str {
        match &self.kind {
            ModeKind::Affine(_) => "k",
            ModeKind::Virasoro => "c",
        }
    }

    pub fn mode_name(&self, m: Mode) -> String {
        format!("{}({})", self.gen_name(m.gen as usize), m.index)
    }

    /// `[a(m), b(n)] = [a,b](m+n) + m <a,b> δ_{m+n,0} k` or
    /// `[L_m, L_n] = (m-n) L_{m+n} + ½ binom(m+1, 3) δ_{m+n,0} c`.
    pub fn bracket_modes(&self, x: Mode, y: Mode) -> ModeElement {
        let f = &self.field;
        let (m, n) = (x.index, y.index);
        let mut out = ModeElement::zero(f);
        match &self.kind {
            ModeKind::Affine(spec) => {
                let (a, b) = (x.gen as usize, y.gen as usize);
                for (c, &v) in spec.bracket(a, b).iter().enumerate() {
                    out.add_mode(Mode::new(c, m + n), v);
                }
                if m + n == 0 {
                    out.central = f.elem(m) * spec.form(a, b);
                }
            }
            ModeKind::Virasoro => {
                out.add_mode(Mode::new(0, m + n), f.elem(m - n));
                if m + n == 0 {
                    out.central = f.half() * f.binom(m + 1, 3);
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &ModeElement, y: &ModeElement) -> ModeElement {
        let mut out = ModeElement::zero(&self.field);
        for (&a, &ca) in &x.modes {
            for (&b, &cb) in &y.modes {
                out = out.add(&self.bracket_modes(a, b).scale(ca * cb));
            }
        }
        out
    }

    /// Action of `X^(r)` on a single mode; the result is a multiple of one
    /// mode.
    pub fn act_gen_on_mode(&self, g: HGen, r: u32, x: Mode) -> (Mode, Fp) {
        let f = &self.field;
        let n = x.index;
        let r64 = r as u64;
        let ri = r as i64;
        let shift = match &self.kind {
            ModeKind::Affine(_) => 0,
            ModeKind::Virasoro => 1,
        };
        match g {
            HGen::D => (
                Mode { index: n - ri, ..x },
                f.sign(ri) * f.binom(n + shift, r64),
            ),
            HGen::H => (x, f.binom(2 * n, r64)),
            HGen::E => (
                Mode { index: n + ri, ..x },
                f.binom(shift - n, r64),
            ),
        }
    }

    pub fn act_gen(&self, g: HGen, r: u32, x: &ModeElement) -> ModeElement {
        let f = &self.field;
        let mut out = ModeElement::zero(f);
        for (&m, &c) in &x.modes {
            let (m2, k) = self.act_gen_on_mode(g, r, m);
            out.add_mode(m2, c * k);
        }
        if r == 0 {
            out.central = x.central;
        }
        out
    }

    pub fn act(&self, a: &HElement, x: &ModeElement) -> ModeElement {
        let mut out = ModeElement::zero(&self.field);
        for (m, c) in a.terms() {
            let v = self.act_gen(HGen::E, m.e, x);
            let v = self.act_gen(HGen::H, m.h, &v);
            let v = self.act_gen(HGen::D, m.d, &v);
            out = out.add(&v.scale(c));
        }
        out
    }

    pub fn format_element(&self, x: &ModeElement) -> String {
        let mut parts = Vec::new();
        for (&m, &c) in &x.modes {
            parts.push(format!("{}*{}", c.signed(), self.mode_name(m)));
        }
        if !x.central.is_zero() {
            parts.push(format!("{}*{}", x.central.signed(), self.central_name()));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for LieSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lie algebra of dimension {} over {:?}", self.dim(), self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn builtins_are_valid() {
        for p in [3, 5, 7] {
            assert_eq!(LieSpec::sl2(&k(p)).dim(), 3);
            assert_eq!(LieSpec::abelian1(&k(p)).dim(), 1);
        }
    }

    #[test]
    fn bad_form_reports_witness() {
        let doc = r#"{"basis": ["e", "h", "f"],
            "brackets": [["e", "f", {"h": 1}], ["h", "e", {"e": 2}], ["h", "f", {"f": -2}]],
            "form": [[0, 0, 1], [0, 1, 0], [1, 0, 0]]}"#;
        match LieSpec::from_json(doc, &k(5)).unwrap_err() {
            Error::LieAxiom { axiom, witness, .. } => {
                assert!(axiom.contains("invariance"));
                assert_eq!(witness, vec!["e", "f", "h"]);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn document_errors() {
        let f = k(5);
        assert!(matches!(
            LieSpec::from_json(r#"{"p": 7, "basis": ["a"], "form": [[1]]}"#, &f),
            Err(Error::LieDocument(_))
        ));
        assert!(matches!(
            LieSpec::from_json(r#"{"basis": ["a"], "form": [[1, 0]]}"#, &f),
            Err(Error::LieDocument(_))
        ));
        assert!(matches!(
            LieSpec::from_json(r#"{"basis": ["a", "b"], "form": [[1, 1], [0, 1]]}"#, &f),
            Err(Error::LieAxiom { .. })
        ));
        assert!(matches!(
            LieSpec::from_json(
                r#"{"basis": ["a"], "brackets": [["a", "a", {"a": 1}]], "form": [[1]]}"#,
                &f
            ),
            Err(Error::LieAxiom { .. })
        ));
    }

    #[test]
    fn bracket_examples() {
        let f = k(7);
        let sl2 = ModeAlgebra::affine(Arc::new(LieSpec::sl2(&f)));
        let x = sl2.bracket_modes(Mode::new(0, 1), Mode::new(2, -1));
        assert_eq!(sl2.format_element(&x), "1*h(0) + 1*k");
        let ab = ModeAlgebra::affine(Arc::new(LieSpec::abelian1(&f)));
        let y = ab.bracket_modes(Mode::new(0, 2), Mode::new(0, -2));
        assert!(y.modes.is_empty());
        assert_eq!(y.central, f.elem(2));
        let vir = ModeAlgebra::virasoro(&f);
        let z = vir.bracket_modes(Mode::new(0, 2), Mode::new(0, -2));
        assert_eq!(z.modes[&Mode::new(0, 0)], f.elem(4));
        assert_eq!(z.central, f.elem(4));
        let w = vir.bracket_modes(Mode::new(0, 1), Mode::new(0, -1));
        assert_eq!(w.central, f.zero());
        assert_eq!(w.modes[&Mode::new(0, 0)], f.elem(2));
    }

    #[test]
    fn action_examples() {
        let f = k(7);
        let ab = ModeAlgebra::affine(Arc::new(LieSpec::abelian1(&f)));
        assert_eq!(ab.act_gen_on_mode(HGen::E, 2, Mode::new(0, -3)), (Mode::new(0, -1), f.elem(3)));
        let vir = ModeAlgebra::virasoro(&f);
        assert_eq!(vir.act_gen_on_mode(HGen::D, 1, Mode::new(0, -2)), (Mode::new(0, -3), f.one()));
        let x = ModeElement::mode(&f, Mode::new(0, 5)).add(&ModeElement::central(&f, f.one()));
        assert_eq!(vir.act_gen(HGen::E, 0, &x), x);
        assert!(vir.act_gen(HGen::E, 1, &ModeElement::central(&f, f.one())).is_zero());
    }
}
