//! The restricted dual `W' = ⊕ W_n^*` of a carrier on a window of degrees.
//!
//! Functionals are stored as coordinate rows against the PBW basis of each
//! degree. The divided-power algebra acts through `θ`, and vertex operators
//! act through the transpose of the adjoint expansion.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::forms::apply_adjoint;
use crate::hopf::HElement;
use crate::vacuum::{Carrier, GradedVector};

/// Element of the dual, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DualVector {
    pub parts: BTreeMap<u32, Vec<Fp>>,
}

impl DualVector {
    pub fn is_zero(&self) -> bool {
        self.parts.values().all(|v| v.iter().all(|x| x.is_zero()))
    }

    pub fn add_scaled(&mut self, other: &DualVector, c: Fp) {
        for (&n, row) in &other.parts {
            let entry = self
                .parts
                .entry(n)
                .or_insert_with(|| vec![c.zero_like(); row.len()]);
            for (a, &b) in entry.iter_mut().zip(row) {
                *a += c * b;
            }
        }
        self.parts.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    }
}

pub struct DualCarrier<'c> {
    carrier: &'c Carrier,
    window: u32,
}

impl<'c> DualCarrier<'c> {
    pub fn new(carrier: &'c Carrier, window: u32) -> Result<Self> {
        if window > carrier.truncation() {
            return Err(Error::DegreeOutOfRange {
                degree: window as i64,
                truncation: carrier.truncation(),
            });
        }
        Ok(DualCarrier { carrier, window })
    }

    pub fn carrier(&self) -> &'c Carrier {
        self.carrier
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn dim(&self, n: u32) -> usize {
        if n <= self.window {
            self.carrier.dim(n)
        } else {
            0
        }
    }

    /// The coordinate functional dual to basis vector `i` of degree `n`.
    pub fn basis_functional(&self, n: u32, i: usize) -> DualVector {
        let f = self.carrier.field();
        let mut row = vec![f.zero(); self.carrier.dim(n)];
        row[i] = f.one();
        DualVector {
            parts: BTreeMap::from([(n, row)]),
        }
    }

    pub fn pair(&self, phi: &DualVector, w: &GradedVector) -> Fp {
        let mut acc = self.carrier.field().zero();
        for (&n, row) in &phi.parts {
            for (a, b) in row.iter().zip(self.carrier.coords(w, n)) {
                acc += *a * b;
            }
        }
        acc
    }

    /// Builds the functional `w ↦ φ(op(w))` on the degrees of the window
    /// where it can be nonzero.
    fn pull_back(
        &self,
        phi: &DualVector,
        shift: i64,
        op: impl Fn(&GradedVector) -> Result<GradedVector>,
    ) -> Result<DualVector> {
        let mut out = DualVector::default();
        for &n in phi.parts.keys() {
            let target = n as i64 + shift;
            if target < 0 || target > self.window as i64 {
                continue;
            }
            let t = target as u32;
            let mut row = Vec::with_capacity(self.carrier.dim(t));
            for i in 0..self.carrier.dim(t) {
                let image = op(&self.carrier.basis_vector(t, i))?;
                row.push(self.pair(phi, &image));
            }
            if row.iter().any(|x| !x.is_zero()) {
                out.parts.insert(t, row);
            }
        }
        Ok(out)
    }

    /// `(a φ)(w) = φ(θ(a) w)`.
    pub fn act(&self, a: &HElement, phi: &DualVector) -> Result<DualVector> {
        let mut out = DualVector::default();
        for (m, c) in a.terms() {
            let th = self.carrier.hopf().theta(&HElement::monomial(m, c));
            let part = self.pull_back(phi, m.degree(), |w| self.carrier.act(&th, w))?;
            out.add_scaled(&part, self.carrier.field().one());
        }
        Ok(out)
    }

    /// Mode `v_m` of `Y'(v, z)`, for homogeneous `v`.
    pub fn mode(&self, v: &GradedVector, m: i64, phi: &DualVector) -> Result<DualVector> {
        if v.is_zero() {
            return Ok(DualVector::default());
        }
        let d = v.homogeneous_degree().ok_or(Error::NonHomogeneous)? as i64;
        self.pull_back(phi, d - m - 1, |w| apply_adjoint(self.carrier, v, m, w))
    }

    /// The functional `(w, ·)` given by a bilinear form.
    pub fn functional_of(
        &self,
        w: &GradedVector,
        form: impl Fn(&GradedVector, &GradedVector) -> Result<Fp>,
    ) -> Result<DualVector> {
        let mut out = DualVector::default();
        for n in w.degrees() {
            if n > self.window {
                continue;
            }
            let row: Vec<Fp> = (0..self.carrier.dim(n))
                .map(|i| form(w, &self.carrier.basis_vector(n, i)))
                .collect::<Result<_>>()?;
            if row.iter().any(|x| !x.is_zero()) {
                out.parts.insert(n, row);
            }
        }
        Ok(out)
    }
}
