//! Reproducible generators of exact-rational test inputs.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conifold::ConifoldPoint;
use crate::matrix::Mat2;
use crate::ncg::Lambda;
use crate::state::{MultiQubitState, QubitFactor};

type Q = BigRational;

/// Samples complex rationals `a/d + i b/e` with bounded numerators and denominators.
#[derive(Debug, Clone)]
pub struct ExactSampler {
    rng: ChaCha8Rng,
    max_numer: i64,
    max_denom: i64,
}

impl ExactSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_bounds(seed, 9, 6)
    }

    pub fn with_bounds(seed: u64, max_numer: i64, max_denom: i64) -> Self {
        assert!(max_numer >= 1 && max_denom >= 1);
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_numer,
            max_denom,
        }
    }

    pub fn rational(&mut self) -> Q {
        let n = self.rng.gen_range(-self.max_numer..=self.max_numer);
        let d = self.rng.gen_range(1..=self.max_denom);
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn scalar(&mut self) -> Complex<Q> {
        Complex::new(self.rational(), self.rational())
    }

    pub fn nonzero_scalar(&mut self) -> Complex<Q> {
        loop {
            let c = self.scalar();
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// A state with independent random amplitudes; never the zero vector.
    pub fn state(&mut self, m: usize) -> MultiQubitState<Q> {
        loop {
            let amps = (0..1usize << m).map(|_| self.scalar()).collect();
            let st = MultiQubitState::from_amplitudes(m, amps).expect("length is 2^m");
            if !st.is_zero() {
                return st;
            }
        }
    }

    pub fn factor(&mut self) -> QubitFactor<Q> {
        loop {
            let f = QubitFactor::new(self.scalar(), self.scalar());
            if !f.is_zero() {
                return f;
            }
        }
    }

    pub fn factors(&mut self, m: usize) -> Vec<QubitFactor<Q>> {
        (0..m).map(|_| self.factor()).collect()
    }

    pub fn product_state(&mut self, m: usize) -> MultiQubitState<Q> {
        MultiQubitState::segre_embed(&self.factors(m)).expect("factors are nonzero")
    }

    pub fn lambda(&mut self, n: usize) -> Lambda<Q> {
        let mu = (0..n).map(|_| self.scalar()).collect();
        let nu = (0..n).map(|_| self.scalar()).collect();
        Lambda::new(mu, nu).expect("equal widths")
    }

    pub fn conifold_point(&mut self) -> ConifoldPoint<Q> {
        ConifoldPoint::new(std::array::from_fn(|_| self.scalar()))
    }

    /// A random element of SL(2) as upper shear · lower shear · diag(d, 1/d).
    pub fn unimodular(&mut self) -> Mat2<Q> {
        let one = Complex::new(Q::from_integer(1.into()), Q::zero());
        let zero = Complex::zero();
        let d = self.nonzero_scalar();
        let upper = Mat2::new(one.clone(), self.scalar(), zero.clone(), one.clone());
        let lower = Mat2::new(one.clone(), zero.clone(), self.scalar(), one.clone());
        let diag = Mat2::new(d.clone(), zero.clone(), zero, one / d);
        upper.mul(&lower).mul(&diag)
    }

    /// A random invertible 2×2 matrix, generally not unimodular.
    pub fn invertible(&mut self) -> Mat2<Q> {
        loop {
            let g = Mat2::new(self.scalar(), self.scalar(), self.scalar(), self.scalar());
            if !g.det().is_zero() {
                return g;
            }
        }
    }
}
