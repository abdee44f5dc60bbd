//! Pure multi-qubit states and the Segre map.
//!
//! Amplitudes are stored densely. The amplitude of the basis vector
//! `|x_m … x_2 x_1⟩` lives at flat index `x = Σ_k x_k · 2^(k-1)`, so slot 1
//! is the least significant bit and slot `m` the most significant. This
//! convention is used everywhere, including JSON I/O.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Default cap on the qubit count accepted by [`MultiQubitState::from_amplitudes`].
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// A flat basis index together with the qubit count needed to print it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub m: usize,
    pub flat: usize,
}

impl BasisIndex {
    /// Builds the flat index from bits listed in display order `x_m, …, x_1`.
    pub fn from_bits(bits: &[u8]) -> Self {
        let m = bits.len();
        let flat = bits
            .iter()
            .enumerate()
            .map(|(pos, &b)| usize::from(b & 1) << (m - 1 - pos))
            .sum();
        Self { m, flat }
    }

    /// Bit of slot `s` (1-based, slot 1 least significant).
    pub fn bit(&self, s: usize) -> u8 {
        ((self.flat >> (s - 1)) & 1) as u8
    }

    /// Bits in display order `x_m, …, x_1`.
    pub fn bits(&self) -> Vec<u8> {
        (1..=self.m).rev().map(|s| self.bit(s)).collect()
    }

    pub fn with_bit(&self, s: usize, b: u8) -> Self {
        let mask = 1usize << (s - 1);
        let flat = if b & 1 == 1 {
            self.flat | mask
        } else {
            self.flat & !mask
        };
        Self { m: self.m, flat }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// One point `(α_0, α_1)` of a projective line, i.e. an unnormalized qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitFactor<R: Real> {
    pub a0: Scalar<R>,
    pub a1: Scalar<R>,
}

impl<R: Real> QubitFactor<R> {
    pub fn new(a0: Scalar<R>, a1: Scalar<R>) -> Self {
        Self { a0, a1 }
    }

    pub fn component(&self, bit: u8) -> &Scalar<R> {
        if bit == 0 {
            &self.a0
        } else {
            &self.a1
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    pub fn norm_squared(&self) -> R {
        self.a0.norm_sqr() + self.a1.norm_sqr()
    }
}

/// A pure state on `m` qubits with `2^m` (not necessarily normalized) amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiQubitState<R: Real> {
    m: usize,
    amps: Vec<Scalar<R>>,
}

impl<R: Real> MultiQubitState<R> {
    /// Wraps `amps` as an `m`-qubit state, with the default qubit cap.
    pub fn from_amplitudes(m: usize, amps: Vec<Scalar<R>>) -> Result<Self> {
        Self::from_amplitudes_with_limit(m, amps, DEFAULT_MAX_QUBITS)
    }

    pub fn from_amplitudes_with_limit(
        m: usize,
        amps: Vec<Scalar<R>>,
        max_qubits: usize,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::NoQubits);
        }
        if m > max_qubits || m >= usize::BITS as usize {
            return Err(Error::TooManyQubits {
                m,
                limit: max_qubits,
            });
        }
        let expected = 1usize << m;
        if amps.len() != expected {
            return Err(Error::LengthMismatch {
                m,
                expected,
                actual: amps.len(),
            });
        }
        Ok(Self { m, amps })
    }

    /// Segre map: the product state `f_m ⊗ … ⊗ f_1`, where `factors[s-1]`
    /// is the qubit in slot `s`.
    pub fn segre_embed(factors: &[QubitFactor<R>]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::NoQubits);
        }
        if let Some(index) = factors.iter().position(QubitFactor::is_zero) {
            return Err(Error::ZeroFactor { index });
        }
        let m = factors.len();
        if m > DEFAULT_MAX_QUBITS {
            return Err(Error::TooManyQubits {
                m,
                limit: DEFAULT_MAX_QUBITS,
            });
        }
        // Kronecker build-up: after k factors, amps holds the k-qubit product.
        let mut amps = vec![Scalar::<R>::new(R::one(), R::zero())];
        for f in factors {
            let mut next = Vec::with_capacity(amps.len() * 2);
            for bit in 0..2u8 {
                next.extend(amps.iter().map(|a| a.clone() * f.component(bit).clone()));
            }
            amps = next;
        }
        Ok(Self { m, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[Scalar<R>] {
        &self.amps
    }

    pub fn amplitude(&self, x: BasisIndex) -> &Scalar<R> {
        &self.amps[x.flat]
    }

    pub fn index(&self, flat: usize) -> BasisIndex {
        BasisIndex { m: self.m, flat }
    }

    /// `⟨Ψ|Ψ⟩`.
    pub fn norm_squared(&self) -> R {
        self.amps
            .iter()
            .fold(R::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Whether `⟨Ψ|Ψ⟩ = 1` up to `tol` (exactly, on the exact backend).
    pub fn is_normalized(&self, tol: f64) -> bool {
        let n = self.norm_squared();
        if R::BACKEND.is_exact() {
            n == R::one()
        } else {
            (n.to_f64() - 1.0).abs() <= tol
        }
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, lambda: &Scalar<R>) -> Self {
        Self {
            m: self.m,
            amps: self
                .amps
                .iter()
                .map(|a| a.clone() * lambda.clone())
                .collect(),
        }
    }

    /// Applies a 2×2 matrix `g` to qubit slot `s`.
    pub fn apply_local(&self, s: usize, g: &crate::matrix::Mat2<R>) -> Result<Self> {
        if s == 0 || s > self.m {
            return Err(Error::SlotOutOfRange { s, m: self.m });
        }
        let mask = 1usize << (s - 1);
        let mut amps = self.amps.clone();
        for x in (0..self.amps.len()).filter(|x| x & mask == 0) {
            let (a0, a1) = g.apply(&self.amps[x], &self.amps[x | mask]);
            amps[x] = a0;
            amps[x | mask] = a1;
        }
        Ok(Self { m: self.m, amps })
    }

    /// Converts every amplitude into another backend.
    pub fn map_backend<S: Real>(&self, f: impl Fn(&R) -> S) -> MultiQubitState<S> {
        MultiQubitState {
            m: self.m,
            amps: self
                .amps
                .iter()
                .map(|a| Scalar::new(f(&a.re), f(&a.im)))
                .collect(),
        }
    }
}
