//! Named verification suites. Each suite enumerates its checks in order of
//! increasing size, so the first recorded failure is the smallest witness,
//! and adds seeded random samples above the exhaustive bounds.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dual::{DualCarrier, DualVector};
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::forms::{apply_adjoint, form_space_dim, lminus_subset_check, InvariantForm};
use crate::hopf::{HAlgebra, HElement, HGen, HMonomial, HTensor};
use crate::identity::{self, IdentityEngine, Mismatch, Step};
use crate::lie::{LieSpec, Mode, ModeAlgebra, ModeElement};
use crate::linalg;
use crate::series::{LaurentPoly, SeriesExpr};
use crate::vacuum::{Carrier, GradedVector};

pub const SUITES: [&str; 14] = [
    "hopf-axioms",
    "module-lie",
    "laurent-example",
    "weight-law",
    "conj-E",
    "ed-deg",
    "skew-symmetry",
    "commutators",
    "invariance",
    "symmetry",
    "l1-vanishing",
    "radical-ideal",
    "dual-module",
    "lminus-subset",
];

/// Failures kept per report; the counts still cover every check.
pub const MAX_WITNESSES: usize = 10;

/// Order of the formal variables in the conjugation identities.
const SERIES_ORDER: i64 = 3;

#[derive(Clone, Debug)]
pub enum CarrierSpec {
    Affine {
        label: String,
        spec: Arc<LieSpec>,
        level: Fp,
    },
    Virasoro {
        c: Fp,
    },
}

impl CarrierSpec {
    pub fn affine(label: &str, spec: LieSpec, level: Fp) -> Self {
        CarrierSpec::Affine {
            label: label.to_string(),
            spec: Arc::new(spec),
            level,
        }
    }

    pub fn virasoro(c: Fp) -> Self {
        CarrierSpec::Virasoro { c }
    }

    pub fn build(&self, truncation: u32) -> Carrier {
        Carrier::new(self.modes(), self.central(), truncation)
    }

    pub fn modes(&self) -> ModeAlgebra {
        match self {
            CarrierSpec::Affine { spec, .. } => ModeAlgebra::affine(spec.clone()),
            CarrierSpec::Virasoro { c } => ModeAlgebra::virasoro(&field_of(*c)),
        }
    }

    pub fn central(&self) -> Fp {
        match self {
            CarrierSpec::Affine { level, .. } => *level,
            CarrierSpec::Virasoro { c } => *c,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CarrierSpec::Affine { label, .. } => format!("affine:{label}"),
            CarrierSpec::Virasoro { .. } => "virasoro".to_string(),
        }
    }

    fn weight(&self) -> i64 {
        match self {
            CarrierSpec::Affine { .. } => 1,
            CarrierSpec::Virasoro { .. } => 2,
        }
    }
}

fn field_of(x: Fp) -> PrimeField {
    PrimeField::new(x.modulus() as u64).expect("modulus of an existing element")
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub field: PrimeField,
    pub carrier: CarrierSpec,
    /// Largest degree of the vectors under test.
    pub max_degree: u32,
    /// Exhaustive bound on divided-power exponents.
    pub bound: u32,
    pub seed: u64,
}

impl SuiteParams {
    pub fn new(field: PrimeField, carrier: CarrierSpec) -> Self {
        SuiteParams {
            field,
            carrier,
            max_degree: 4,
            bound: 4,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_degree > 10 {
            return Err(Error::Parameter(format!(
                "max degree {} exceeds 10",
                self.max_degree
            )));
        }
        if !(1..=8).contains(&self.bound) {
            return Err(Error::Parameter(format!(
                "bound {} outside 1..=8",
                self.bound
            )));
        }
        if self.carrier.central().modulus() != self.field.p() {
            return Err(Error::Parameter("carrier defined over a different field".into()));
        }
        Ok(())
    }

    fn rng(&self, suite: &str) -> ChaCha8Rng {
        let salt = suite
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ salt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub p: u64,
    pub carrier: String,
    pub central: i64,
    pub max_degree: u32,
    pub bound: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: ReportParams,
    pub attempted: u64,
    pub passed: u64,
    pub failures: Vec<Witness>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.attempted == self.passed
    }
}

type Outcome = std::result::Result<(), Witness>;

/// Runs one check; `body` returns the two differing sides, if any.
fn attempt(inputs: impl FnOnce() -> String, body: impl FnOnce() -> Result<Option<(String, String)>>) -> Outcome {
    match body() {
        Ok(None) => Ok(()),
        Ok(Some((lhs, rhs))) => Err(Witness {
            inputs: inputs(),
            lhs,
            rhs,
        }),
        Err(e) => Err(Witness {
            inputs: inputs(),
            lhs: format!("error: {e}"),
            rhs: String::new(),
        }),
    }
}

fn differ<T: PartialEq>(a: &T, b: &T, show: impl Fn(&T) -> String) -> Option<(String, String)> {
    (a != b).then(|| (show(a), show(b)))
}

fn par_checks<T: Sync>(items: &[T], f: impl Fn(&T) -> Vec<Outcome> + Sync + Send) -> Vec<Outcome> {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().collect()
}

#[derive(Default)]
struct Tally {
    attempted: u64,
    passed: u64,
    failures: Vec<Witness>,
}

impl Tally {
    fn extend(&mut self, outcomes: Vec<Outcome>) {
        for o in outcomes {
            self.attempted += 1;
            match o {
                Ok(()) => self.passed += 1,
                Err(w) if self.failures.len() < MAX_WITNESSES => self.failures.push(w),
                Err(_) => {}
            }
        }
    }

    fn push(&mut self, o: Outcome) {
        self.extend(vec![o]);
    }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    params.validate()?;
    let mut t = Tally::default();
    match name {
        "hopf-axioms" => hopf_axioms(params, &mut t),
        "module-lie" => module_lie(params, &mut t),
        "laurent-example" => laurent_example(params, &mut t),
        "weight-law" => weight_law(params, &mut t),
        "conj-E" => conj_e(params, &mut t),
        "ed-deg" => ed_deg(params, &mut t),
        "skew-symmetry" => skew_symmetry(params, &mut t),
        "commutators" => commutators(params, &mut t),
        "invariance" => invariance(params, &mut t)?,
        "symmetry" => symmetry(params, &mut t)?,
        "l1-vanishing" => l1_vanishing(params, &mut t)?,
        "radical-ideal" => radical_ideal(params, &mut t)?,
        "dual-module" => dual_module(params, &mut t)?,
        "lminus-subset" => lminus_subset(params, &mut t)?,
        _ => return Err(Error::UnknownSuite(name.to_string())),
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        params: ReportParams {
            p: params.field.p() as u64,
            carrier: params.carrier.label(),
            central: params.carrier.central().signed(),
            max_degree: params.max_degree,
            bound: params.bound,
            seed: params.seed,
        },
        attempted: t.attempted,
        passed: t.passed,
        failures: t.failures,
    })
}

pub fn run_all(params: &SuiteParams) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s, params)).collect()
}

fn monomials_upto(b: u32) -> Vec<HMonomial> {
    let mut out = Vec::new();
    for d in 0..=b {
        for h in 0..=b {
            for e in 0..=b {
                out.push(HMonomial::new(d, h, e));
            }
        }
    }
    out.sort_by_key(|m| (m.d + m.h + m.e, *m));
    out
}

fn hmono(m: HMonomial, f: &PrimeField) -> HElement {
    HElement::monomial(m, f.one())
}

type Triple = BTreeMap<(HMonomial, HMonomial, HMonomial), Fp>;

fn add_triple(t: &mut Triple, k: (HMonomial, HMonomial, HMonomial), c: Fp) {
    let e = t.entry(k).or_insert(c.zero_like());
    *e += c;
    if e.is_zero() {
        t.remove(&k);
    }
}

fn show_triple(t: &Triple) -> String {
    let parts: Vec<String> = t
        .iter()
        .map(|((a, b, c), x)| format!("{}*({a})⊗({b})⊗({c})", x.signed()))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn coassoc_sides(h: &HAlgebra, m: HMonomial) -> (Triple, Triple) {
    let (mut l, mut r) = (Triple::new(), Triple::new());
    for (x, y, c) in h.coproduct_monomial(m).terms() {
        for (x1, x2, cx) in h.coproduct_monomial(x).terms() {
            add_triple(&mut l, (x1, x2, y), c * cx);
        }
        for (y1, y2, cy) in h.coproduct_monomial(y).terms() {
            add_triple(&mut r, (x, y1, y2), c * cy);
        }
    }
    (l, r)
}

fn counit_sides(h: &HAlgebra, m: HMonomial) -> (HElement, HElement) {
    let (mut l, mut r) = (HElement::zero(), HElement::zero());
    for (x, y, c) in h.coproduct_monomial(m).terms() {
        if x == HMonomial::ONE {
            l.add_term(y, c);
        }
        if y == HMonomial::ONE {
            r.add_term(x, c);
        }
    }
    (l, r)
}

fn grade_sum(a: &HElement, b: &HElement) -> Option<i64> {
    use crate::hopf::Grade;
    match (a.grade(), b.grade()) {
        (Grade::Degree(x), Grade::Degree(y)) => Some(x + y),
        _ => None,
    }
}

fn hopf_axioms(params: &SuiteParams, t: &mut Tally) {
    let f = &params.field;
    let h = HAlgebra::new(f);
    let monos = monomials_upto(params.bound);
    let show = |e: &HElement| e.to_string();
    let show_t = |e: &HTensor| e.to_string();

    // Associativity over all triples, grouped by the left pair.
    let pairs: Vec<(HMonomial, HMonomial)> = monos
        .iter()
        .flat_map(|&x| monos.iter().map(move |&y| (x, y)))
        .collect();
    let prod = |x: HMonomial, y: HMonomial| h.mul(&hmono(x, f), &hmono(y, f));
    t.extend(par_checks(&pairs, |&(x, y)| {
        let xy = prod(x, y);
        monos
            .iter()
            .map(|&z| {
                attempt(
                    || format!("associativity: a = {x}, b = {y}, c = {z}"),
                    || {
                        let l = h.mul(&xy, &hmono(z, f));
                        let r = h.mul(&hmono(x, f), &prod(y, z));
                        Ok(differ(&l, &r, show))
                    },
                )
            })
            .collect()
    }));

    t.extend(par_checks(&monos, |&m| {
        let (l, r) = coassoc_sides(&h, m);
        let (cl, cr) = counit_sides(&h, m);
        let me = hmono(m, f);
        let th = h.theta(&me);
        let si = h.sigma(&me);
        vec![
            attempt(|| format!("coassociativity: a = {m}"), || Ok(differ(&l, &r, show_triple))),
            attempt(|| format!("left counit: a = {m}"), || Ok(differ(&cl, &me, show))),
            attempt(|| format!("right counit: a = {m}"), || Ok(differ(&cr, &me, show))),
            attempt(|| format!("theta involution: a = {m}"), || Ok(differ(&h.theta(&th), &me, show))),
            attempt(|| format!("sigma involution: a = {m}"), || Ok(differ(&h.sigma(&si), &me, show))),
        ]
    }));

    // Multiplicativity of the coproduct against every generator divided
    // power on either side; generators span the algebra, so this covers all
    // products.
    let gens: Vec<(HGen, u32)> = (1..=params.bound)
        .flat_map(|r| HGen::ALL.into_iter().map(move |g| (g, r)))
        .collect();
    t.extend(par_checks(&gens, |&(g, r)| {
        let gm = g.power(r);
        let dg = h.coproduct_gen(g, r);
        monos
            .iter()
            .flat_map(|&m| {
                let dm = h.coproduct_monomial(m);
                [
                    attempt(
                        || format!("coproduct multiplicative: a = {gm}, b = {m}"),
                        || {
                            let l = h.coproduct(&prod(gm, m));
                            Ok(differ(&l, &h.tensor_mul(&dg, &dm), show_t))
                        },
                    ),
                    attempt(
                        || format!("coproduct multiplicative: a = {m}, b = {gm}"),
                        || {
                            let l = h.coproduct(&prod(m, gm));
                            Ok(differ(&l, &h.tensor_mul(&dm, &dg), show_t))
                        },
                    ),
                ]
            })
            .collect()
    }));

    t.extend(par_checks(&pairs, |&(x, y)| {
        let (xe, ye) = (hmono(x, f), hmono(y, f));
        let xy = prod(x, y);
        vec![
            attempt(
                || format!("theta anti-homomorphism: a = {x}, b = {y}"),
                || Ok(differ(&h.theta(&xy), &h.mul(&h.theta(&ye), &h.theta(&xe)), show)),
            ),
            attempt(
                || format!("sigma homomorphism: a = {x}, b = {y}"),
                || Ok(differ(&h.sigma(&xy), &h.mul(&h.sigma(&xe), &h.sigma(&ye)), show)),
            ),
            attempt(
                || format!("grade additivity: a = {x}, b = {y}"),
                || {
                    let want = grade_sum(&xe, &ye);
                    let got = match xy.grade() {
                        crate::hopf::Grade::Degree(d) => Some(d),
                        crate::hopf::Grade::Zero => want,
                        crate::hopf::Grade::Mixed => None,
                    };
                    Ok(differ(&got, &want, |g| format!("{g:?}")))
                },
            ),
        ]
    }));

    // Random products with exponents up to twice the bound.
    let mut rng = params.rng("hopf-axioms");
    let big = 2 * params.bound;
    let mut rand_mono = || HMonomial::new(rng.gen_range(0..=big), rng.gen_range(0..=big), rng.gen_range(0..=big));
    let samples: Vec<[HMonomial; 3]> = (0..24).map(|_| [rand_mono(), rand_mono(), rand_mono()]).collect();
    t.extend(par_checks(&samples, |&[x, y, z]| {
        let xy = prod(x, y);
        vec![
            attempt(
                || format!("associativity (sampled): a = {x}, b = {y}, c = {z}"),
                || Ok(differ(&h.mul(&xy, &hmono(z, f)), &h.mul(&hmono(x, f), &prod(y, z)), show)),
            ),
            attempt(
                || format!("coproduct multiplicative (sampled): a = {x}, b = {y}"),
                || {
                    let r = h.tensor_mul(&h.coproduct_monomial(x), &h.coproduct_monomial(y));
                    Ok(differ(&h.coproduct(&xy), &r, show_t))
                },
            ),
            attempt(
                || format!("theta anti-homomorphism (sampled): a = {x}, b = {y}"),
                || Ok(differ(&h.theta(&xy), &h.mul(&h.theta(&hmono(y, f)), &h.theta(&hmono(x, f))), show)),
            ),
            attempt(
                || format!("sigma homomorphism (sampled): a = {x}, b = {y}"),
                || Ok(differ(&h.sigma(&xy), &h.mul(&h.sigma(&hmono(x, f)), &h.sigma(&hmono(y, f))), show)),
            ),
        ]
    }));

    // E^(m) D^(n) on weight vectors x^k of the Laurent module, whose degree
    // is -k, against the weight-specialized reordering.
    let cases: Vec<(u32, u32, i64)> = (0..=5)
        .flat_map(|m| (0..=5).flat_map(move |n| (-5..=5).map(move |k| (m, n, k))))
        .collect();
    t.extend(par_checks(&cases, |&(m, n, k)| {
        vec![attempt(
            || format!("weight specialization: E^({m}) D^({n}) on x^{k}"),
            || {
                let w = LaurentPoly::monomial(f.one(), k);
                let ed = h.mul(&h.gen(HGen::E, m), &h.gen(HGen::D, n));
                let lhs = h.act_laurent(&ed, &w);
                let mut rhs = LaurentPoly::zero();
                for i in 0..=m.min(n) {
                    let v = h.act_laurent_gen(HGen::E, m - i, &w);
                    // degree of E^(m-i) x^k
                    let deg = -k - (m - i) as i64;
                    let c = f.sign(i as i64) * f.binom(-2 * deg - m as i64 - n as i64 + 2 * i as i64, i as u64);
                    rhs = rhs.add(&h.act_laurent_gen(HGen::D, n - i, &v).scale(c));
                }
                Ok(differ(&lhs, &rhs, |p| p.to_string()))
            },
        )]
    }));
}

fn module_lie(params: &SuiteParams, t: &mut Tally) {
    let f = &params.field;
    let h = HAlgebra::new(f);
    let modes = params.carrier.modes();
    let b = params.bound as i64;
    let mut pairs = Vec::new();
    for span in 0..=2 * b {
        for m in -b..=b {
            for n in -b..=b {
                if m.abs() + n.abs() != span {
                    continue;
                }
                for g1 in 0..modes.num_gens() {
                    for g2 in 0..modes.num_gens() {
                        pairs.push((Mode::new(g1, m), Mode::new(g2, n)));
                    }
                }
            }
        }
    }
    let show = |x: &ModeElement| modes.format_element(x);
    t.extend(par_checks(&pairs, |&(x, y)| {
        let (u, v) = (ModeElement::mode(f, x), ModeElement::mode(f, y));
        let uv = modes.bracket(&u, &v);
        let mut out = Vec::new();
        for r in 0..=params.bound {
            for g in HGen::ALL {
                out.push(attempt(
                    || format!("{g}^({r}) on [{}, {}]", modes.mode_name(x), modes.mode_name(y)),
                    || {
                        let lhs = modes.act_gen(g, r, &uv);
                        let mut rhs = ModeElement::zero(f);
                        for (a, c, k) in h.coproduct_gen(g, r).terms() {
                            let ua = modes.act(&hmono(a, f), &u);
                            let vc = modes.act(&hmono(c, f), &v);
                            rhs = rhs.add(&modes.bracket(&ua, &vc).scale(k));
                        }
                        Ok(differ(&lhs, &rhs, show))
                    },
                ));
            }
        }
        // Degree compatibility of the raising and lowering families.
        for r in 1..=params.bound {
            out.push(attempt(
                || format!("degree shift of D^({r}), E^({r}) on {}", modes.mode_name(x)),
                || {
                    let (d, _) = modes.act_gen_on_mode(HGen::D, r, x);
                    let (e, _) = modes.act_gen_on_mode(HGen::E, r, x);
                    let got = (d.degree() - x.degree(), e.degree() - x.degree());
                    Ok(differ(&got, &(r as i64, -(r as i64)), |g| format!("{g:?}")))
                },
            ));
        }
        out
    }));
}

fn laurent_example(params: &SuiteParams, t: &mut Tally) {
    let f = &params.field;
    let h = HAlgebra::new(f);
    let show = |p: &LaurentPoly| p.to_string();
    let x = |m: i64| LaurentPoly::monomial(f.one(), m);
    let mut cases = Vec::new();
    for r in 0..=params.bound {
        for g in HGen::ALL {
            for a in -5..=5i64 {
                for b in -5..=5i64 {
                    cases.push((g, r, a, b));
                }
            }
        }
    }
    t.extend(par_checks(&cases, |&(g, r, a, b)| {
        vec![attempt(
            || format!("{g}^({r}) on x^{a} * x^{b}"),
            || {
                let lhs = h.act_laurent_gen(g, r, &x(a + b));
                let mut rhs = LaurentPoly::zero();
                for i in 0..=r {
                    let fa = h.act_laurent_gen(g, r - i, &x(a));
                    let fb = h.act_laurent_gen(g, i, &x(b));
                    rhs = rhs.add(&fa.mul(&fb));
                }
                Ok(differ(&lhs, &rhs, show))
            },
        )]
    }));
    // Products of generators through the full coproduct.
    let monos: Vec<HMonomial> = monomials_upto(2);
    t.extend(par_checks(&monos, |&m| {
        let mut out = Vec::new();
        for a in -3..=3i64 {
            for b in -3..=3i64 {
                out.push(attempt(
                    || format!("{m} on x^{a} * x^{b}"),
                    || {
                        let lhs = h.act_laurent(&hmono(m, f), &x(a + b));
                        let mut rhs = LaurentPoly::zero();
                        for (p, q, c) in h.coproduct_monomial(m).terms() {
                            let fa = h.act_laurent(&hmono(p, f), &x(a));
                            let fb = h.act_laurent(&hmono(q, f), &x(b));
                            rhs = rhs.add(&fa.mul(&fb).scale(c));
                        }
                        Ok(differ(&lhs, &rhs, show))
                    },
                ));
            }
        }
        out
    }));
    // H^(r) x^m = binom(2m, r) x^m and D^(r) = (-1)^r times the Hasse
    // derivative.
    for r in 0..=params.bound {
        for m in -5..=5i64 {
            t.push(attempt(
                || format!("H^({r}) on x^{m}"),
                || {
                    let want = x(m).scale(f.binom(2 * m, r as u64));
                    Ok(differ(&h.act_laurent_gen(HGen::H, r, &x(m)), &want, show))
                },
            ));
            t.push(attempt(
                || format!("D^({r}) on x^{m}"),
                || {
                    let want = x(m).hasse(f, r as u64).scale(f.sign(r as i64));
                    Ok(differ(&h.act_laurent_gen(HGen::D, r, &x(m)), &want, show))
                },
            ));
        }
    }
}

/// Basis vectors of degrees `0..=max`, smallest degree first.
fn basis_upto(c: &Carrier, max: u32) -> Vec<(u32, usize, GradedVector)> {
    (0..=max.min(c.truncation()))
        .flat_map(|n| (0..c.dim(n)).map(move |i| (n, i, c.basis_vector(n, i))))
        .collect()
}

fn show_mismatch(c: &Carrier, m: Mismatch) -> (String, String) {
    (
        format!("coefficient {:?}: {}", m.exponents, c.format_vector(&m.lhs)),
        format!("coefficient {:?}: {}", m.exponents, c.format_vector(&m.rhs)),
    )
}

fn weight_law(params: &SuiteParams, t: &mut Tally) {
    let n_max = params.max_degree;
    let c = params.carrier.build(n_max);
    let f = &params.field;
    let cut = [2 * n_max as i64];
    let one_minus_x = SeriesExpr::int(1) - SeriesExpr::var("x");
    let lhs = vec![Step::DegreePower {
        base: one_minus_x.clone(),
        factor: -2,
    }];
    let against = |n: u32| vec![Step::Scalar(one_minus_x.clone().pow(-2 * n as i64))];
    let engine = IdentityEngine::new(&c, &["x"]);
    let basis = basis_upto(&c, n_max);
    let sv = |v: &GradedVector| c.format_vector(v);
    t.extend(par_checks(&basis, |(n, _, w)| {
        let mut out = Vec::new();
        for k in 0..=n_max {
            out.push(attempt(
                || format!("(1-x)^(-2deg) vs (1-x)^(-2*{k}) on {}", c.format_vector(w)),
                || {
                    let m = engine.compare(&lhs, &against(k), w, &cut)?;
                    let agree = m.is_none();
                    Ok(differ(&agree, &(k == *n), |b| format!("agree = {b}")))
                },
            ));
        }
        for r in 0..=params.bound {
            out.push(attempt(
                || format!("H^({r}) on {}", c.format_vector(w)),
                || {
                    let want = w.scale(f.binom(-2 * *n as i64, r as u64));
                    Ok(differ(&c.act_gen(HGen::H, r, w)?, &want, sv))
                },
            ));
        }
        // Creation: v_{-1-k} 1 = D^(k) v.
        for k in 0..=(n_max - n) {
            out.push(attempt(
                || format!("creation: mode {} of {} on the vacuum", -1 - k as i64, c.format_vector(w)),
                || {
                    let l = c.composite_mode(w, -1 - k as i64, &c.vacuum())?;
                    Ok(differ(&l, &c.act_gen(HGen::D, k, w)?, sv))
                },
            ));
        }
        out
    }));
    // Sums of two different degrees are homogeneous of no degree.
    let firsts: Vec<GradedVector> = (0..=n_max)
        .filter(|&n| c.dim(n) > 0)
        .map(|n| c.basis_vector(n, 0))
        .collect();
    let mut mixed = Vec::new();
    for a in 0..firsts.len() {
        for b in a + 1..firsts.len() {
            mixed.push(firsts[a].add(&firsts[b]));
        }
    }
    t.extend(par_checks(&mixed, |w| {
        (0..=n_max)
            .map(|k| {
                attempt(
                    || format!("(1-x)^(-2deg) vs (1-x)^(-2*{k}) on {}", c.format_vector(w)),
                    || {
                        let m = engine.compare(&lhs, &against(k), w, &cut)?;
                        Ok(differ(&m.is_none(), &false, |b| format!("agree = {b}")))
                    },
                )
            })
            .collect()
    }));
}

fn conj_e(params: &SuiteParams, t: &mut Tally) {
    let wt = params.carrier.weight();
    let c = params.carrier.build(params.max_degree + wt as u32 + SERIES_ORDER as u32);
    let cut = [SERIES_ORDER, SERIES_ORDER];
    let mut cases = Vec::new();
    for (n, i, w) in basis_upto(&c, params.max_degree) {
        for g in 0..c.num_gens() {
            cases.push((g, n, i, w.clone()));
        }
    }
    let one_minus = SeriesExpr::int(1) - SeriesExpr::var("z") * SeriesExpr::var("z0");
    t.extend(par_checks(&cases, |(g, _, _, w)| {
        let a = c.generator_state(*g);
        let id = identity::conjugation_by_e(&a);
        let closed = vec![
            Step::Scalar(one_minus.clone().pow(-2 * wt)),
            Step::Vertex {
                state: a.clone(),
                state_steps: vec![],
                var: 1,
                scale: one_minus.clone().pow(-1),
            },
        ];
        let inputs = |what: &str| format!("{what}: a = {}, w = {}", c.format_vector(&a), c.format_vector(w));
        vec![
            attempt(
                || inputs("conjugation by e^(zE)"),
                || Ok(id.check(&c, w, &cut)?.map(|m| show_mismatch(&c, m))),
            ),
            attempt(
                || inputs("closed form of the conjugation"),
                || {
                    let e = IdentityEngine::new(&c, &id.vars);
                    Ok(e.compare(&id.lhs, &closed, w, &cut)?.map(|m| show_mismatch(&c, m)))
                },
            ),
        ]
    }));
}

fn ed_deg(params: &SuiteParams, t: &mut Tally) {
    let c = params.carrier.build(params.max_degree + SERIES_ORDER as u32);
    let cut = [SERIES_ORDER, SERIES_ORDER];
    let basis = basis_upto(&c, params.max_degree);
    let exchange = identity::exchange_e_d();
    let degree = identity::degree_operator();
    t.extend(par_checks(&basis, |(_, _, w)| {
        vec![
            attempt(
                || format!("exchange of e^(zE) and e^(z0 D) on {}", c.format_vector(w)),
                || Ok(exchange.check(&c, w, &cut)?.map(|m| show_mismatch(&c, m))),
            ),
            attempt(
                || format!("degree operator on {}", c.format_vector(w)),
                || Ok(degree.check(&c, w, &cut)?.map(|m| show_mismatch(&c, m))),
            ),
        ]
    }));
}

fn skew_symmetry(params: &SuiteParams, t: &mut Tally) {
    let n = params.max_degree;
    let c = params.carrier.build(n);
    let small = basis_upto(&c, n.min(3));
    let mut pairs = Vec::new();
    for (du, _, u) in &small {
        for (dv, _, v) in &small {
            if du + dv <= n {
                pairs.push((du + dv, u.clone(), v.clone()));
            }
        }
    }
    pairs.sort_by_key(|p| p.0);
    t.extend(par_checks(&pairs, |(d, u, v)| {
        vec![attempt(
            || format!("Y(u,x)v = e^(xD)Y(v,-x)u: u = {}, v = {}", c.format_vector(u), c.format_vector(v)),
            || {
                let id = identity::skew_symmetry(u, v);
                let e = IdentityEngine::new(&c, &id.vars);
                let cut = [(n - d) as i64];
                Ok(e.compare_on(&id.lhs, v, &id.rhs, u, &cut)?.map(|m| show_mismatch(&c, m)))
            },
        )]
    }));
}

/// The bracket of two generator modes from the structure constants and the
/// central term, written out independently of the mode algebra.
fn bracket_oracle(c: &Carrier, x: Mode, y: Mode) -> (Vec<(Mode, Fp)>, Fp) {
    let f = c.field();
    let (m, n) = (x.index, y.index);
    match c.modes().kind() {
        crate::lie::ModeKind::Affine(spec) => {
            let (a, b) = (x.gen as usize, y.gen as usize);
            let modes = (0..spec.dim())
                .map(|k| (Mode::new(k, m + n), spec.bracket(a, b)[k]))
                .collect();
            let central = if m + n == 0 {
                f.elem(m) * spec.form(a, b) * c.central()
            } else {
                f.zero()
            };
            (modes, central)
        }
        crate::lie::ModeKind::Virasoro => {
            let central = if m + n == 0 {
                let b3 = (m as i128 + 1) * m as i128 * (m as i128 - 1) / 6;
                f.half() * f.elem_i128(b3) * c.central()
            } else {
                f.zero()
            };
            (vec![(Mode::new(0, m + n), f.elem(m - n))], central)
        }
    }
}

/// Partitions-style count of PBW monomials of degree `n`.
fn pbw_count(ngens: usize, min_s: u32, n: u32) -> u64 {
    let mut ways = vec![0u64; n as usize + 1];
    ways[0] = 1;
    for s in min_s..=n.max(min_s) {
        for _ in 0..ngens {
            for k in s as usize..=n as usize {
                ways[k] += ways[k - s as usize];
            }
        }
    }
    ways[n as usize]
}

fn commutators(params: &SuiteParams, t: &mut Tally) {
    let n_max = params.max_degree;
    let c = params.carrier.build(n_max);
    let nm = n_max as i64;
    let sv = |v: &GradedVector| c.format_vector(v);
    let mut cases = Vec::new();
    for span in 0..=nm {
        for m in -span..=span {
            let rest = span - m.abs();
            for n in [-rest, rest] {
                for g1 in 0..c.num_gens() {
                    for g2 in 0..c.num_gens() {
                        cases.push((Mode::new(g1, m), Mode::new(g2, n), span));
                    }
                }
                if rest == 0 {
                    break;
                }
            }
        }
    }
    t.extend(par_checks(&cases, |&(x, y, span)| {
        let window = basis_upto(&c, (nm - span) as u32);
        let modes = c.modes();
        window
            .iter()
            .map(|(_, _, w)| {
                attempt(
                    || format!("[{}, {}] on {}", modes.mode_name(x), modes.mode_name(y), c.format_vector(w)),
                    || {
                        let xy = c.apply_mode(x, &c.apply_mode(y, w)?)?;
                        let yx = c.apply_mode(y, &c.apply_mode(x, w)?)?;
                        let lhs = xy.sub(&yx);
                        let (terms, central) = bracket_oracle(&c, x, y);
                        let mut rhs = w.scale(central);
                        for (z, k) in terms {
                            if !k.is_zero() {
                                rhs.add_scaled(&c.apply_mode(z, w)?, k);
                            }
                        }
                        Ok(differ(&lhs, &rhs, sv))
                    },
                )
            })
            .collect()
    }));
    let min_s = params.carrier.weight() as u32;
    for n in 0..=n_max {
        t.push(attempt(
            || format!("dimension of degree {n}"),
            || {
                let got = c.dim(n) as u64;
                Ok(differ(&got, &pbw_count(c.num_gens(), min_s, n), |d| d.to_string()))
            },
        ));
    }
}

/// Room above the tested degrees for the intermediate terms of iterate
/// expansions.
fn headroom(params: &SuiteParams) -> u32 {
    2 * params.carrier.weight() as u32
}

fn invariance(params: &SuiteParams, t: &mut Tally) -> Result<()> {
    let n_max = params.max_degree;
    let c = params.carrier.build(n_max + headroom(params));
    let form = InvariantForm::new(&c);
    let f = c.field();
    let sign = if c.is_virasoro() { f.one() } else { -f.one() };
    let show = |x: &Fp| x.signed().to_string();
    let basis = basis_upto(&c, n_max);
    let nm = n_max as i64;

    // Generator modes: (x(m)u, v) = ±(u, x(-m)v).
    let mut cases = Vec::new();
    for m in -nm..=nm {
        for g in 0..c.num_gens() {
            for (du, _, u) in &basis {
                let dv = *du as i64 - m;
                if (0..=nm).contains(&dv) {
                    cases.push((Mode::new(g, m), u.clone(), dv as u32));
                }
            }
        }
    }
    t.extend(par_checks(&cases, |(x, u, dv)| {
        (0..c.dim(*dv))
            .map(|j| {
                let v = c.basis_vector(*dv, j);
                attempt(
                    || format!("mode {}: u = {}, v = {}", c.modes().mode_name(*x), c.format_vector(u), c.format_vector(&v)),
                    || {
                        let lhs = form.pair(&c.apply_mode(*x, u)?, &v)?;
                        let dual = Mode::new(x.gen as usize, -x.index);
                        let rhs = sign * form.pair(u, &c.apply_mode(dual, &v)?)?;
                        Ok(differ(&lhs, &rhs, show))
                    },
                )
            })
            .collect()
    }));

    // Composite states: (v_m u, w) = (u, v'_m w), exhaustive for small
    // degrees and sampled above.
    let mut comp = Vec::new();
    for (dv, _, v) in basis.iter().filter(|b| (1..=2).contains(&b.0)) {
        for (du, _, u) in basis.iter().filter(|b| b.0 <= 2) {
            for m in -3..=3i64 {
                let dw = *dv as i64 + *du as i64 - m - 1;
                if (0..=nm).contains(&dw) {
                    for j in 0..c.dim(dw as u32) {
                        comp.push((v.clone(), m, u.clone(), c.basis_vector(dw as u32, j)));
                    }
                }
            }
        }
    }
    let mut rng = params.rng("invariance");
    let pool: Vec<&(u32, usize, GradedVector)> = basis.iter().filter(|b| (1..=3).contains(&b.0)).collect();
    for _ in 0..48 {
        let (dv, _, v) = pool[rng.gen_range(0..pool.len())];
        let (du, _, u) = &basis[rng.gen_range(0..basis.len())];
        let m = rng.gen_range(-4..=4i64);
        let dw = *dv as i64 + *du as i64 - m - 1;
        if (0..=nm).contains(&dw) && c.dim(dw as u32) > 0 {
            let j = rng.gen_range(0..c.dim(dw as u32));
            comp.push((v.clone(), m, u.clone(), c.basis_vector(dw as u32, j)));
        }
    }
    t.extend(par_checks(&comp, |(v, m, u, w)| {
        vec![attempt(
            || format!("adjoint of mode {m} of {}: u = {}, w = {}", c.format_vector(v), c.format_vector(u), c.format_vector(w)),
            || {
                let lhs = form.pair(&c.composite_mode(v, *m, u)?, w)?;
                let rhs = form.pair(u, &apply_adjoint(&c, v, *m, w)?)?;
                Ok(differ(&lhs, &rhs, show))
            },
        )]
    }));

    // (a u, v) = (u, θ(a) v) for monomials a, which covers the series
    // identity (e^{xE}u, v) = (u, e^{xD}v) coefficientwise.
    let h = c.hopf();
    let mut hcases = Vec::new();
    for r in 1..=n_max {
        for (du, _, u) in basis.iter().filter(|b| b.0 >= r) {
            hcases.push((HMonomial::e(r), u.clone(), du - r));
        }
    }
    for m in monomials_upto(2) {
        for (du, _, u) in basis.iter().filter(|b| b.0 <= 2) {
            let dv = *du as i64 + m.degree();
            if (0..=nm).contains(&dv) && *du as i64 + m.d as i64 <= nm {
                hcases.push((m, u.clone(), dv as u32));
            }
        }
    }
    t.extend(par_checks(&hcases, |(a, u, dv)| {
        let ae = HElement::monomial(*a, f.one());
        let th = h.theta(&ae);
        (0..c.dim(*dv))
            .map(|j| {
                let v = c.basis_vector(*dv, j);
                attempt(
                    || format!("H-invariance: a = {a}, u = {}, v = {}", c.format_vector(u), c.format_vector(&v)),
                    || {
                        let lhs = form.pair(&c.act(&ae, u)?, &v)?;
                        let rhs = form.pair(u, &c.act(&th, &v)?)?;
                        Ok(differ(&lhs, &rhs, show))
                    },
                )
            })
            .collect()
    }));

    // Different degrees are orthogonal.
    for _ in 0..16 {
        let (da, _, a) = &basis[rng.gen_range(0..basis.len())];
        let (db, _, b) = &basis[rng.gen_range(0..basis.len())];
        if da == db {
            continue;
        }
        t.push(attempt(
            || format!("orthogonality: {} and {}", c.format_vector(a), c.format_vector(b)),
            || Ok(differ(&form.pair(a, b)?, &f.zero(), show)),
        ));
    }
    Ok(())
}

fn symmetry(params: &SuiteParams, t: &mut Tally) -> Result<()> {
    let c = params.carrier.build(params.max_degree);
    let form = InvariantForm::new(&c);
    let f = c.field();
    for row in form.gram_table(params.max_degree)? {
        let n = row.dim();
        let mut outs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                outs.push(attempt(
                    || format!("degree {}: ({}, {}) against ({}, {})", row.degree, row.basis[i], row.basis[j], row.basis[j], row.basis[i]),
                    || Ok(differ(&row.matrix[i][j], &row.matrix[j][i], |x| x.signed().to_string())),
                ));
            }
        }
        t.extend(outs);
    }
    t.push(attempt(
        || "normalisation (1, 1)".into(),
        || Ok(differ(&form.gram_matrix(0)?, &vec![vec![f.one()]], |m| format!("{m:?}"))),
    ));
    Ok(())
}

fn l1_vanishing(params: &SuiteParams, t: &mut Tally) -> Result<()> {
    let n_max = params.max_degree;
    let c = params.carrier.build(n_max);
    let basis = basis_upto(&c, n_max);
    let positive: Vec<_> = basis.into_iter().filter(|b| b.0 >= 1).collect();
    t.extend(par_checks(&positive, |(n, _, w)| {
        vec![attempt(
            || format!("E^({n}) on {}", c.format_vector(w)),
            || Ok(differ(&c.act_gen(HGen::E, *n, w)?, &GradedVector::zero(), |v| c.format_vector(v))),
        )]
    }));
    let fs = form_space_dim(&c)?;
    t.push(attempt(
        || "dimension of the space of invariant forms".into(),
        || {
            Ok(differ(&(fs.dim, fs.stabilized), &(1, true), |(d, s)| {
                format!("dim {d}, stabilized {s}")
            }))
        },
    ));
    Ok(())
}

/// Vectors of degree `n` that every word of annihilation modes of total
/// degree `n` sends to zero.
fn annihilated_subspace(c: &Carrier, n: u32) -> Result<Vec<Vec<Fp>>> {
    let mut words: Vec<Vec<Mode>> = Vec::new();
    let mut stack: Vec<(Vec<Mode>, u32)> = vec![(Vec::new(), 0)];
    while let Some((w, used)) = stack.pop() {
        if used == n {
            words.push(w);
            continue;
        }
        for k in 1..=(n - used) {
            for g in 0..c.num_gens() {
                let mut w2 = w.clone();
                w2.push(Mode::new(g, k as i64));
                stack.push((w2, used + k));
            }
        }
    }
    let f = c.field();
    let dim = c.dim(n);
    let mut matrix = vec![Vec::with_capacity(dim); words.len()];
    for i in 0..dim {
        let b = c.basis_vector(n, i);
        for (row, word) in matrix.iter_mut().zip(&words) {
            let mut v = b.clone();
            for &x in word.iter().rev() {
                v = c.apply_mode(x, &v)?;
            }
            row.push(v.vacuum_coeff().unwrap_or(f.zero()));
        }
    }
    Ok(linalg::kernel(f, &matrix, dim))
}

fn same_span(a: &[Vec<Fp>], b: &[Vec<Fp>], ncols: usize) -> bool {
    linalg::rank(a, ncols) == linalg::rank(b, ncols)
        && a.iter().all(|v| linalg::in_row_span(b, v))
        && b.iter().all(|v| linalg::in_row_span(a, v))
}

fn radical_ideal(params: &SuiteParams, t: &mut Tally) -> Result<()> {
    let n_max = params.max_degree;
    let c = params.carrier.build(n_max);
    let form = InvariantForm::new(&c);
    let rows = form.gram_table(n_max)?;
    let degrees: Vec<u32> = (0..=n_max).collect();
    t.extend(par_checks(&degrees, |&n| {
        vec![attempt(
            || format!("radical of degree {n} against annihilated vectors"),
            || {
                let oracle = annihilated_subspace(&c, n)?;
                let rad = &rows[n as usize].radical;
                let ok = same_span(rad, &oracle, c.dim(n));
                Ok(differ(&ok, &true, |_| format!("radical {rad:?}, annihilated {oracle:?}")))
            },
        )]
    }));
    let nm = n_max as i64;
    let mut cases = Vec::new();
    for row in &rows {
        for (k, r) in row.radical.iter().enumerate() {
            for g in 0..c.num_gens() {
                for m in (row.degree as i64 - nm)..=(row.degree as i64) {
                    cases.push((row.degree, k, c.from_coords(row.degree, r), Mode::new(g, m)));
                }
            }
        }
    }
    t.extend(par_checks(&cases, |(n, k, u, x)| {
        vec![attempt(
            || format!("mode {} on radical vector {k} of degree {n}", c.modes().mode_name(*x)),
            || {
                let image = c.apply_mode(*x, u)?;
                let target = (*n as i64 - x.index) as u32;
                let coords = c.coords(&image, target);
                let g = linalg::mat_vec(c.field(), &rows[target as usize].matrix, &coords);
                let zero = vec![c.field().zero(); g.len()];
                Ok(differ(&g, &zero, |v| format!("Gram image {v:?}")))
            },
        )]
    }));
    Ok(())
}

fn dual_module(params: &SuiteParams, t: &mut Tally) -> Result<()> {
    let n_max = params.max_degree;
    let c = params.carrier.build(n_max + headroom(params));
    let f = c.field();
    let dual = DualCarrier::new(&c, n_max)?;
    let form = InvariantForm::new(&c);
    let h = c.hopf();
    let show = |x: &Fp| x.signed().to_string();
    let show_d = |x: &DualVector| format!("{:?}", x.parts.iter().map(|(n, r)| (n, r.iter().map(|v| v.value()).collect::<Vec<_>>())).collect::<Vec<_>>());
    let basis = basis_upto(&c, n_max);
    let functionals: Vec<(u32, usize, DualVector)> =
        basis.iter().map(|(n, i, _)| (*n, *i, dual.basis_functional(*n, *i))).collect();
    let nm = n_max as i64;

    // The vacuum functional.
    let vac = dual.basis_functional(0, 0);
    for (n, _, w) in &basis {
        t.push(attempt(
            || format!("vacuum functional on {}", c.format_vector(w)),
            || {
                let want = if *n == 0 { f.one() } else { f.zero() };
                Ok(differ(&dual.pair(&vac, w), &want, show))
            },
        ));
    }

    // Module axiom for the divided-power algebra.
    let small: Vec<HMonomial> = monomials_upto(1);
    let mut hcases = Vec::new();
    for &a in &small {
        for &b in &small {
            for (n, i, _) in functionals.iter().filter(|x| x.0 <= 2) {
                let mid = *n as i64 + b.degree();
                let top = mid + a.degree();
                if (0..=nm).contains(&mid) && (0..=nm).contains(&top) && top + a.e as i64 <= nm {
                    hcases.push((a, b, *n, *i));
                }
            }
        }
    }
    t.extend(par_checks(&hcases, |&(a, b, n, i)| {
        vec![attempt(
            || format!("({a})({b}) on the dual of basis vector {i} of degree {n}"),
            || {
                let phi = dual.basis_functional(n, i);
                let (ae, be) = (hmono(a, f), hmono(b, f));
                let lhs = dual.act(&h.mul(&ae, &be), &phi)?;
                let rhs = dual.act(&ae, &dual.act(&be, &phi)?)?;
                Ok(differ(&lhs, &rhs, show_d))
            },
        )]
    }));

    // Intertwining with the form: Φ(w) = (w, ·) satisfies Φ(v_m w) = v_m Φ(w)
    // and Φ(a w) = a Φ(w).
    let states: Vec<GradedVector> = basis.iter().filter(|b| (1..=2).contains(&b.0)).map(|b| b.2.clone()).collect();
    let mut icases = Vec::new();
    for v in &states {
        let dv = v.homogeneous_degree().expect("basis vector") as i64;
        for m in -2..=2i64 {
            for (dw, _, w) in &basis {
                let target = *dw as i64 + dv - m - 1;
                if (0..=nm).contains(&target) {
                    icases.push((v.clone(), m, w.clone()));
                }
            }
        }
    }
    let pair = |a: &GradedVector, b: &GradedVector| form.pair(a, b);
    t.extend(par_checks(&icases, |(v, m, w)| {
        vec![attempt(
            || format!("intertwining: mode {m} of {} on {}", c.format_vector(v), c.format_vector(w)),
            || {
                let lhs = dual.functional_of(&c.composite_mode(v, *m, w)?, pair)?;
                let rhs = dual.mode(v, *m, &dual.functional_of(w, pair)?)?;
                Ok(differ(&lhs, &rhs, show_d))
            },
        )]
    }));
    let mut acases = Vec::new();
    for g in HGen::ALL {
        for r in 1..=2 {
            for (dw, _, w) in &basis {
                let shift = match g {
                    HGen::D => r as i64,
                    HGen::H => 0,
                    HGen::E => -(r as i64),
                };
                if *dw as i64 + shift <= nm {
                    acases.push((g, r, w.clone()));
                }
            }
        }
    }
    t.extend(par_checks(&acases, |(g, r, w)| {
        vec![attempt(
            || format!("intertwining: {g}^({r}) on {}", c.format_vector(w)),
            || {
                let a = h.gen(*g, *r);
                let lhs = dual.functional_of(&c.act(&a, w)?, pair)?;
                let rhs = dual.act(&a, &dual.functional_of(w, pair)?)?;
                Ok(differ(&lhs, &rhs, show_d))
            },
        )]
    }));

    // Commutators of dual generator modes, with all intermediate degrees in
    // the window.
    let wt = c.weight();
    let mut ccases = Vec::new();
    for m in -2..=2i64 {
        for n in -2..=2i64 {
            for g1 in 0..c.num_gens() {
                for g2 in 0..c.num_gens() {
                    for (s, i, _) in &functionals {
                        let s = *s as i64;
                        if [s - n, s - n - m, s - m].iter().all(|d| (0..=nm).contains(d)) {
                            ccases.push((Mode::new(g1, m), Mode::new(g2, n), s as u32, *i));
                        }
                    }
                }
            }
        }
    }
    let dual_mode = |x: Mode, phi: &DualVector| dual.mode(&c.generator_state(x.gen as usize), x.index + wt - 1, phi);
    t.extend(par_checks(&ccases, |&(x, y, s, i)| {
        vec![attempt(
            || format!("dual [{}, {}] on functional {i} of degree {s}", c.modes().mode_name(x), c.modes().mode_name(y)),
            || {
                let phi = dual.basis_functional(s, i);
                let mut lhs = dual_mode(x, &dual_mode(y, &phi)?)?;
                lhs.add_scaled(&dual_mode(y, &dual_mode(x, &phi)?)?, -f.one());
                let (terms, central) = bracket_oracle(&c, x, y);
                let mut rhs = DualVector::default();
                rhs.add_scaled(&phi, central);
                for (z, k) in terms {
                    rhs.add_scaled(&dual_mode(z, &phi)?, k);
                }
                Ok(differ(&lhs, &rhs, show_d))
            },
        )]
    }));

    // Window-only double dual: ⟨v_m w, φ⟩ = (-1)^d Σ_i ⟨w, (E^(i)v)'_{2d-m-2-i} φ⟩.
    let mut rng = params.rng("dual-module");
    let mut dcases = Vec::new();
    for v in &states {
        let dv = v.homogeneous_degree().expect("basis vector") as i64;
        for m in -2..=2i64 {
            for _ in 0..4 {
                let (dw, _, w) = &basis[rng.gen_range(0..basis.len())];
                let target = *dw as i64 + dv - m - 1;
                if (0..=nm).contains(&target) {
                    let j = rng.gen_range(0..c.dim(target as u32));
                    dcases.push((v.clone(), m, w.clone(), target as u32, j));
                }
            }
        }
    }
    t.extend(par_checks(&dcases, |(v, m, w, s, j)| {
        vec![attempt(
            || format!("window double dual: mode {m} of {} on {} against functional {j} of degree {s}", c.format_vector(v), c.format_vector(w)),
            || {
                let phi = dual.basis_functional(*s, *j);
                let lhs = dual.pair(&phi, &c.composite_mode(v, *m, w)?);
                let d = v.homogeneous_degree().expect("basis vector") as i64;
                let mut rhs = f.zero();
                for i in 0..=d {
                    let state = c.act_gen(HGen::E, i as u32, v)?;
                    if state.is_zero() {
                        continue;
                    }
                    let psi = dual.mode(&state, 2 * d - m - 2 - i, &phi)?;
                    rhs += f.sign(d) * dual.pair(&psi, w);
                }
                Ok(differ(&lhs, &rhs, show))
            },
        )]
    }));
    Ok(())
}

fn lminus_subset(params: &SuiteParams, t: &mut Tally) -> Result<()> {
    let c = params.carrier.build(params.max_degree);
    let report = lminus_subset_check(&c)?;
    t.push(attempt(
        || "degree-0 part of the L(-1) span inside the L(1) span".into(),
        || {
            Ok(differ(&report.witness, &None, |w| {
                w.as_ref().map_or("none".into(), |v| c.format_vector(v))
            }))
        },
    ));
    Ok(())
}
