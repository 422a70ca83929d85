//! Coefficientwise checking of operator identities such as
//! `e^{zL_1} Y(v, z_0) e^{-zL_1} = Y(e^{z(1-zz_0)L_1}(1-zz_0)^{-2deg} v, z_0/(1-zz_0))`.
//!
//! A recipe is a product of operator-valued series written left to right.
//! Applying it to a vector produces a series with vector coefficients and
//! integer exponents, kept up to a per-variable upper cutoff. Exponents only
//! grow under scalar factors, so terms above the cutoff can be dropped as
//! soon as they appear. The one exception is a vertex operator, whose
//! `x^(-n-1)` factor can lower the exponent of its variable by up to twice
//! the truncation; every factor to its right is therefore expanded with that
//! much extra room.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::hopf::HGen;
use crate::series::{SeriesExpr, TruncSeries, Truncation};
use crate::vacuum::{Carrier, GradedVector};

#[derive(Clone, Debug)]
pub enum Step {
    /// `e^{f X} = Σ_r f^r X^(r)`; `f` must have zero constant term.
    Exp { gen: HGen, arg: SeriesExpr },
    /// `base^{factor · deg}` on homogeneous components.
    DegreePower { base: SeriesExpr, factor: i64 },
    /// Multiplication by a scalar series.
    Scalar(SeriesExpr),
    /// `Y(S state, z_var · scale)` where `S` is the product `state_steps`
    /// and `scale` has an invertible constant term.
    Vertex {
        state: GradedVector,
        state_steps: Vec<Step>,
        var: usize,
        scale: SeriesExpr,
    },
}

/// A series with vector coefficients and integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VecSeries {
    pub terms: BTreeMap<Vec<i64>, GradedVector>,
}

impl VecSeries {
    pub fn constant(nvars: usize, v: GradedVector) -> Self {
        let mut s = VecSeries::default();
        if !v.is_zero() {
            s.terms.insert(vec![0; nvars], v);
        }
        s
    }

    fn add(&mut self, e: Vec<i64>, v: &GradedVector, c: Fp) {
        if v.is_zero() || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_default();
        entry.add_scaled(v, c);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn min_exponents(&self, nvars: usize) -> Vec<i64> {
        let mut m = vec![0; nvars];
        for e in self.terms.keys() {
            for (a, &b) in m.iter_mut().zip(e) {
                *a = (*a).min(b);
            }
        }
        m
    }

    pub fn coeff(&self, e: &[i64]) -> GradedVector {
        self.terms.get(e).cloned().unwrap_or_default()
    }
}

/// First exponent where two expansions differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponents: Vec<i64>,
    pub lhs: GradedVector,
    pub rhs: GradedVector,
}

pub struct IdentityEngine<'c> {
    carrier: &'c Carrier,
    vars: Vec<String>,
}

impl<'c> IdentityEngine<'c> {
    pub fn new(carrier: &'c Carrier, vars: &[&str]) -> Self {
        IdentityEngine {
            carrier,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn eval(&self, e: &SeriesExpr, room: &[i64]) -> Result<TruncSeries> {
        let per_var: Vec<u32> = room.iter().map(|&r| r.max(0) as u32).collect();
        let names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        e.eval(self.carrier.field(), &names, &Truncation::boxed(per_var))
    }

    fn slack(&self) -> i64 {
        2 * self.carrier.truncation() as i64
    }

    /// Extra room needed to the right of a step.
    fn down_shift(&self, step: &Step) -> Vec<i64> {
        let mut d = vec![0; self.nvars()];
        if let Step::Vertex { var, .. } = step {
            d[*var] = self.slack();
        }
        d
    }

    /// Applies `steps` (written left to right) to `input`, keeping exponents
    /// up to `cutoff`.
    pub fn apply(&self, steps: &[Step], input: VecSeries, cutoff: &[i64]) -> Result<VecSeries> {
        let mut cuts = vec![cutoff.to_vec()];
        for step in steps {
            let prev = cuts.last().expect("nonempty");
            let next: Vec<i64> = prev
                .iter()
                .zip(self.down_shift(step))
                .map(|(a, b)| a + b)
                .collect();
            cuts.push(next);
        }
        let mut cur = truncate(input, &cuts[steps.len()]);
        for (k, step) in steps.iter().enumerate().rev() {
            cur = self.apply_step(step, &cur, &cuts[k])?;
        }
        Ok(cur)
    }

    fn multiply_into(&self, out: &mut VecSeries, e: &[i64], v: &GradedVector, s: &TruncSeries, cut: &[i64]) {
        for (t, c) in s.terms() {
            let g: Vec<i64> = e.iter().zip(t).map(|(&a, &b)| a + b as i64).collect();
            if g.iter().zip(cut).all(|(a, b)| a <= b) {
                out.add(g, v, c);
            }
        }
    }

    fn room(&self, cut: &[i64], low: &[i64]) -> Vec<i64> {
        cut.iter().zip(low).map(|(a, b)| a - b).collect()
    }

    fn apply_step(&self, step: &Step, input: &VecSeries, cut: &[i64]) -> Result<VecSeries> {
        let c = self.carrier;
        let n = self.nvars();
        let mut out = VecSeries::default();
        let low = input.min_exponents(n);
        let room = self.room(cut, &low);
        if room.iter().any(|&r| r < 0) {
            return Ok(out);
        }
        match step {
            Step::Scalar(expr) => {
                let s = self.eval(expr, &room)?;
                for (e, v) in &input.terms {
                    self.multiply_into(&mut out, e, v, &s, cut);
                }
            }
            Step::DegreePower { base, factor } => {
                let b = self.eval(base, &room)?;
                for (e, v) in &input.terms {
                    for d in v.degrees() {
                        let s = b.pow_i(factor * d as i64)?;
                        self.multiply_into(&mut out, e, &v.component(d), &s, cut);
                    }
                }
            }
            Step::Exp { gen, arg } => {
                let f = self.eval(arg, &room)?;
                if !f.constant_term().is_zero() {
                    return Err(Error::NonzeroConstantTerm);
                }
                let max_r: i64 = room.iter().sum();
                let mut power = f.one_like();
                for r in 0..=max_r {
                    if power.is_zero() {
                        break;
                    }
                    for (e, v) in &input.terms {
                        let survives = power.terms().any(|(t, _)| {
                            e.iter().zip(t).zip(cut).all(|((&a, &b), &k)| a + b as i64 <= k)
                        });
                        if !survives {
                            continue;
                        }
                        let image = c.act_gen(*gen, r as u32, v)?;
                        if !image.is_zero() {
                            self.multiply_into(&mut out, e, &image, &power, cut);
                        }
                    }
                    power = power.mul(&f);
                }
            }
            Step::Vertex {
                state,
                state_steps,
                var,
                scale,
            } => {
                let mut state_cut = room.clone();
                state_cut[*var] += self.slack();
                let states = self.apply(state_steps, VecSeries::constant(n, state.clone()), &state_cut)?;
                for (eb, b) in &states.terms {
                    for db in b.degrees() {
                        let bc = b.component(db);
                        for (eu, u) in &input.terms {
                            for du in u.degrees() {
                                let uc = u.component(du);
                                let base_var = eb[*var] + eu[*var];
                                let n_lo = base_var - 1 - cut[*var];
                                let n_hi = db as i64 + du as i64 - 1;
                                for mode in n_lo..=n_hi {
                                    let mut e: Vec<i64> = eb.iter().zip(eu).map(|(a, b)| a + b).collect();
                                    e[*var] += -mode - 1;
                                    let r = self.room(cut, &e);
                                    if r.iter().any(|&x| x < 0) {
                                        continue;
                                    }
                                    let image = c.composite_mode(&bc, mode, &uc)?;
                                    if image.is_zero() {
                                        continue;
                                    }
                                    let g = self.eval(scale, &r)?.pow_i(-mode - 1)?;
                                    self.multiply_into(&mut out, &e, &image, &g, cut);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Expands both sides on `w` and compares every coefficient with all
    /// exponents at most `cutoff`.
    pub fn compare(
        &self,
        lhs: &[Step],
        rhs: &[Step],
        w: &GradedVector,
        cutoff: &[i64],
    ) -> Result<Option<Mismatch>> {
        self.compare_on(lhs, w, rhs, w, cutoff)
    }

    /// Like [`compare`](Self::compare) with separate inputs for each side.
    pub fn compare_on(
        &self,
        lhs: &[Step],
        lhs_input: &GradedVector,
        rhs: &[Step],
        rhs_input: &GradedVector,
        cutoff: &[i64],
    ) -> Result<Option<Mismatch>> {
        let n = self.nvars();
        let l = self.apply(lhs, VecSeries::constant(n, lhs_input.clone()), cutoff)?;
        let r = self.apply(rhs, VecSeries::constant(n, rhs_input.clone()), cutoff)?;
        let mut keys: Vec<&Vec<i64>> = l.terms.keys().chain(r.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for e in keys {
            let (a, b) = (l.coeff(e), r.coeff(e));
            if a != b {
                return Ok(Some(Mismatch {
                    exponents: e.clone(),
                    lhs: a,
                    rhs: b,
                }));
            }
        }
        Ok(None)
    }
}

fn truncate(s: VecSeries, cut: &[i64]) -> VecSeries {
    VecSeries {
        terms: s
            .terms
            .into_iter()
            .filter(|(e, _)| e.iter().zip(cut).all(|(a, b)| a <= b))
            .collect(),
    }
}

/// Both sides of an identity, in the variables `vars`.
#[derive(Clone, Debug)]
pub struct Identity {
    pub vars: Vec<&'static str>,
    pub lhs: Vec<Step>,
    pub rhs: Vec<Step>,
}

fn z() -> SeriesExpr {
    SeriesExpr::var("z")
}

fn z0() -> SeriesExpr {
    SeriesExpr::var("z0")
}

fn one_minus_zz0() -> SeriesExpr {
    SeriesExpr::int(1) - z() * z0()
}

/// `e^{zE} Y(a, z0) e^{-zE} = Y(e^{z(1-zz0)E} (1-zz0)^{-2deg} a, z0/(1-zz0))`.
pub fn conjugation_by_e(a: &GradedVector) -> Identity {
    Identity {
        vars: vec!["z", "z0"],
        lhs: vec![
            Step::Exp { gen: HGen::E, arg: z() },
            Step::Vertex {
                state: a.clone(),
                state_steps: vec![],
                var: 1,
                scale: SeriesExpr::int(1),
            },
            Step::Exp { gen: HGen::E, arg: -z() },
        ],
        rhs: vec![Step::Vertex {
            state: a.clone(),
            state_steps: vec![
                Step::Exp {
                    gen: HGen::E,
                    arg: z() * one_minus_zz0(),
                },
                Step::DegreePower {
                    base: one_minus_zz0(),
                    factor: -2,
                },
            ],
            var: 1,
            scale: one_minus_zz0().pow(-1),
        }],
    }
}

/// `e^{zE} e^{z0 D} = e^{z0 (1-zz0)^{-1} D} (1-zz0)^{-2deg} e^{z (1-zz0)^{-1} E}`.
pub fn exchange_e_d() -> Identity {
    Identity {
        vars: vec!["z", "z0"],
        lhs: vec![
            Step::Exp { gen: HGen::E, arg: z() },
            Step::Exp { gen: HGen::D, arg: z0() },
        ],
        rhs: vec![
            Step::Exp {
                gen: HGen::D,
                arg: z0() * one_minus_zz0().pow(-1),
            },
            Step::DegreePower {
                base: one_minus_zz0(),
                factor: -2,
            },
            Step::Exp {
                gen: HGen::E,
                arg: z() * one_minus_zz0().pow(-1),
            },
        ],
    }
}

/// `(1-zz0)^{-2deg} = e^{-z(1-zz0)E} e^{-z0(1-zz0)^{-1} D} e^{zE} e^{z0 D}`.
pub fn degree_operator() -> Identity {
    Identity {
        vars: vec!["z", "z0"],
        lhs: vec![Step::DegreePower {
            base: one_minus_zz0(),
            factor: -2,
        }],
        rhs: vec![
            Step::Exp {
                gen: HGen::E,
                arg: -(z() * one_minus_zz0()),
            },
            Step::Exp {
                gen: HGen::D,
                arg: -(z0() * one_minus_zz0().pow(-1)),
            },
            Step::Exp { gen: HGen::E, arg: z() },
            Step::Exp { gen: HGen::D, arg: z0() },
        ],
    }
}

/// `Y(u, x) v` against `e^{xD} Y(v, -x) u`; apply the left side to `v` and
/// the right side to `u`.
pub fn skew_symmetry(u: &GradedVector, v: &GradedVector) -> Identity {
    Identity {
        vars: vec!["x"],
        lhs: vec![Step::Vertex {
            state: u.clone(),
            state_steps: vec![],
            var: 0,
            scale: SeriesExpr::int(1),
        }],
        rhs: vec![
            Step::Exp {
                gen: HGen::D,
                arg: SeriesExpr::var("x"),
            },
            Step::Vertex {
                state: v.clone(),
                state_steps: vec![],
                var: 0,
                scale: SeriesExpr::int(-1),
            },
        ],
    }
}

impl Identity {
    /// Checks the identity on `w` up to `cutoff`.
    pub fn check(&self, carrier: &Carrier, w: &GradedVector, cutoff: &[i64]) -> Result<Option<Mismatch>> {
        IdentityEngine::new(carrier, &self.vars).compare(&self.lhs, &self.rhs, w, cutoff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::lie::LieSpec;

    fn sl2(p: u64, n: u32) -> Carrier {
        let f = PrimeField::new(p).unwrap();
        Carrier::affine(LieSpec::sl2(&f), f.one(), n)
    }

    #[test]
    fn exchange_and_degree_hold_on_low_degrees() {
        let f = PrimeField::new(7).unwrap();
        let vir = Carrier::virasoro(&f, f.elem(2), 7);
        for n in 0..=4 {
            for i in 0..vir.dim(n) {
                let w = vir.basis_vector(n, i);
                assert_eq!(exchange_e_d().check(&vir, &w, &[3, 3]).unwrap(), None);
                assert_eq!(degree_operator().check(&vir, &w, &[3, 3]).unwrap(), None);
            }
        }
    }

    #[test]
    fn conjugation_holds_for_generators() {
        let c = sl2(5, 8);
        for g in 0..3 {
            let a = c.generator_state(g);
            for n in 0..=2 {
                for i in 0..c.dim(n) {
                    let w = c.basis_vector(n, i);
                    assert_eq!(conjugation_by_e(&a).check(&c, &w, &[2, 2]).unwrap(), None);
                }
            }
        }
    }

    #[test]
    fn conjugation_with_wrong_twist_fails() {
        let c = sl2(5, 8);
        let mut id = conjugation_by_e(&c.generator_state(0));
        if let Step::Vertex { scale, .. } = &mut id.rhs[0] {
            *scale = SeriesExpr::int(1);
        }
        let w = c.generator_state(2);
        assert!(id.check(&c, &w, &[2, 2]).unwrap().is_some());
        let lhs = IdentityEngine::new(&c, &id.vars)
            .apply(&id.lhs, VecSeries::constant(2, w), &[2, 2])
            .unwrap();
        assert!(lhs.terms.len() > 3);
    }

    #[test]
    fn wrong_exponent_is_caught() {
        let c = sl2(7, 6);
        let mut id = degree_operator();
        id.lhs = vec![Step::DegreePower {
            base: one_minus_zz0(),
            factor: -1,
        }];
        let w = c.generator_state(1);
        let m = id.check(&c, &w, &[2, 2]).unwrap().expect("mismatch");
        assert_eq!(m.exponents, vec![1, 1]);
    }

    #[test]
    fn translations_compose() {
        let c = sl2(5, 6);
        let x = SeriesExpr::var("x");
        let y = SeriesExpr::var("y");
        let lhs = vec![
            Step::Exp { gen: HGen::D, arg: x.clone() },
            Step::Exp { gen: HGen::D, arg: y.clone() },
        ];
        let rhs = vec![Step::Exp { gen: HGen::D, arg: x + y }];
        let e = IdentityEngine::new(&c, &["x", "y"]);
        let w = c.generator_state(0);
        assert_eq!(e.compare(&lhs, &rhs, &w, &[2, 3]).unwrap(), None);
    }

    #[test]
    fn skew_symmetry_on_generators() {
        let c = sl2(5, 6);
        for a in 0..3 {
            for b in 0..3 {
                let (u, v) = (c.generator_state(a), c.generator_state(b));
                let id = skew_symmetry(&u, &v);
                let l = IdentityEngine::new(&c, &id.vars)
                    .apply(&id.lhs, VecSeries::constant(1, v.clone()), &[4])
                    .unwrap();
                let r = IdentityEngine::new(&c, &id.vars)
                    .apply(&id.rhs, VecSeries::constant(1, u.clone()), &[4])
                    .unwrap();
                assert_eq!(l, r, "{a} {b}");
            }
        }
    }
}
