//! The conifold quadric `z₁² + z₂² + z₃² + z₄² = 0` in ℂ⁴ and its link to
//! the two-qubit Segre quadric.
//!
//! The linear change of coordinates
//!
//! ```text
//! ⎡ z₁ + i z₂   −z₄ + i z₃ ⎤
//! ⎣ z₄ + i z₃    z₁ − i z₂ ⎦
//! ```
//!
//! has determinant `Σ z_k²`, so the conifold is the cone over the Segre
//! quadric `α₀₀α₁₁ − α₀₁α₁₀ = 0`. Replacing `0` by a parameter `Ω` gives the
//! deformed conifold, and for a two-qubit state `Ω` is the single
//! flattening minor.
//!
//! Writing `z = u + i v`, the real form is `f₁ = Σ(u_k² − v_k²)` and
//! `f₂ = Σ u_k v_k`. Note `Re Σz² = f₁` but `Im Σz² = 2 f₂`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::scalar::{Real, Scalar};
use crate::state::MultiQubitState;

#[derive(Debug, Clone, PartialEq)]
pub struct ConifoldPoint<R: Real> {
    pub z: [Scalar<R>; 4],
}

/// Componentwise real and imaginary parts of a conifold point.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSplit<R: Real> {
    pub u: [R; 4],
    pub v: [R; 4],
    /// `Σ(u_k² − v_k²)`
    pub f1: R,
    /// `Σ u_k v_k`
    pub f2: R,
}

impl<R: Real> RealSplit<R> {
    pub fn reassemble(&self) -> ConifoldPoint<R> {
        ConifoldPoint {
            z: std::array::from_fn(|k| Scalar::new(self.u[k].clone(), self.v[k].clone())),
        }
    }
}

/// Entries of the inverse coordinate change, `z = T · (a, b, c, d)` for the
/// matrix `[[a, b], [c, d]]`. Each entry is `(re_num, im_num)` over 2.
const INVERSE_CHANGE: [[(i64, i64); 4]; 4] = [
    // z1 = (a + d) / 2
    [(1, 0), (0, 0), (0, 0), (1, 0)],
    // z2 = -i (a - d) / 2
    [(0, -1), (0, 0), (0, 0), (0, 1)],
    // z3 = -i (b + c) / 2
    [(0, 0), (0, -1), (0, -1), (0, 0)],
    // z4 = (c - b) / 2
    [(0, 0), (-1, 0), (1, 0), (0, 0)],
];

impl<R: Real> ConifoldPoint<R> {
    pub fn new(z: [Scalar<R>; 4]) -> Self {
        Self { z }
    }

    /// `Σ z_k²`; the point lies on the conifold iff this vanishes.
    pub fn residual(&self) -> Scalar<R> {
        self.z
            .iter()
            .fold(Scalar::zero(), |acc, z| acc + z.clone() * z.clone())
    }

    pub fn real_split(&self) -> RealSplit<R> {
        let u: [R; 4] = std::array::from_fn(|k| self.z[k].re.clone());
        let v: [R; 4] = std::array::from_fn(|k| self.z[k].im.clone());
        let mut f1 = R::zero();
        let mut f2 = R::zero();
        for k in 0..4 {
            f1 = f1 + u[k].clone() * u[k].clone() - v[k].clone() * v[k].clone();
            f2 = f2 + u[k].clone() * v[k].clone();
        }
        RealSplit { u, v, f1, f2 }
    }

    /// The 2×2 matrix `[[z₁+iz₂, −z₄+iz₃], [z₄+iz₃, z₁−iz₂]]`.
    pub fn to_segre_coords(&self) -> Mat2<R> {
        let i = Scalar::<R>::i();
        let [z1, z2, z3, z4] = &self.z;
        Mat2::new(
            z1.clone() + i.clone() * z2.clone(),
            -z4.clone() + i.clone() * z3.clone(),
            z4.clone() + i.clone() * z3.clone(),
            z1.clone() - i * z2.clone(),
        )
    }

    /// Inverse of [`ConifoldPoint::to_segre_coords`].
    pub fn from_segre_coords(m: &Mat2<R>) -> Self {
        let entries = [&m.0[0][0], &m.0[0][1], &m.0[1][0], &m.0[1][1]];
        let half = R::from_ratio(1, 2);
        let z = std::array::from_fn(|k| {
            let mut acc = Scalar::zero();
            for (col, e) in entries.iter().enumerate() {
                let (re, im) = INVERSE_CHANGE[k][col];
                if re != 0 || im != 0 {
                    let c = Scalar::new(R::from_int(re), R::from_int(im)).scale(half.clone());
                    acc = acc + c * (*e).clone();
                }
            }
            acc
        });
        Self { z }
    }
}

/// `Ω = α₀₀α₁₁ − α₀₁α₁₀` of a two-qubit state.
///
/// `Ω = 0` exactly on the Segre quadric (product states); otherwise the
/// state sits on the conifold deformed by `Ω`.
pub fn deformation<R: Real>(state: &MultiQubitState<R>) -> Result<Scalar<R>> {
    if state.num_qubits() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            actual: state.num_qubits(),
        });
    }
    let a = state.amplitudes();
    Ok(a[0].clone() * a[3].clone() - a[1].clone() * a[2].clone())
}

/// The amplitude matrix `[[α₀₀, α₀₁], [α₁₀, α₁₁]]` of a two-qubit state.
pub fn amplitude_matrix<R: Real>(state: &MultiQubitState<R>) -> Result<Mat2<R>> {
    if state.num_qubits() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            actual: state.num_qubits(),
        });
    }
    let a = state.amplitudes();
    Ok(Mat2::new(
        a[0].clone(),
        a[1].clone(),
        a[2].clone(),
        a[3].clone(),
    ))
}
