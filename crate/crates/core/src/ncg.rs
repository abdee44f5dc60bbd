//! Noncommutative rewriting of the flattening minors.
//!
//! For a flattening with rows `μ` (u-row) and `ν` (v-row) of width `N`, the
//! minors are the ε-contractions `ε^{ab} μ_{i_a} ν_{i_b}` over a column pair
//! `(i_1, i_2)`, while `ε μ μ` and `ε ν ν` vanish identically. With the
//! antisymmetrizer `X_[i Y_j] = (X_i Y_j − X_j Y_i)/2` the Φ tensor is
//! `Φ_ij = μ_[i ν_j]`, which at `N = 2` is `ε_ij Ω / 2`.
//!
//! Stacking the rows as `Λ = (μ; ν)`, the difference of products
//! `Λ_ki Λ_lj − Λ_kj Λ_li` equals `ε_kl (μ_i ν_j − μ_j ν_i) = 2 ε_kl Φ_ij`
//! for every `k, l ∈ {1, 2}` and every column pair. This holds for any
//! 2×N matrix, not only flattenings of states, and is what
//! [`lambda_relation_check`] evaluates. The same relation written with an
//! R-matrix reads `Λ_ki Λ_lj − R^{mn}_{kl} Λ_mj Λ_ni`; which tensor makes
//! that form an identity is decided by brute force in [`compare_rmatrices`].

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::scalar::{is_negligible, modulus_f64, validate_tol, Real, Scalar};
use crate::segre::{self, Flattening};
use crate::state::MultiQubitState;

/// The 2-dimensional Levi-Civita symbol with `ε_12 = +1` (1-based indices).
pub fn epsilon(a: usize, b: usize) -> i64 {
    match (a, b) {
        (1, 2) => 1,
        (2, 1) => -1,
        _ => 0,
    }
}

/// The two rows `μ`, `ν` of a flattening.
#[derive(Debug, Clone, PartialEq)]
pub struct RowPair<R: Real> {
    mu: Vec<Scalar<R>>,
    nu: Vec<Scalar<R>>,
}

impl<R: Real> RowPair<R> {
    pub fn new(mu: Vec<Scalar<R>>, nu: Vec<Scalar<R>>) -> Result<Self> {
        if mu.len() != nu.len() {
            return Err(Error::DimensionMismatch(format!(
                "rows of length {} and {}",
                mu.len(),
                nu.len()
            )));
        }
        Ok(Self { mu, nu })
    }

    pub fn width(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[Scalar<R>] {
        &self.mu
    }

    pub fn nu(&self) -> &[Scalar<R>] {
        &self.nu
    }
}

impl<R: Real> From<Flattening<R>> for RowPair<R> {
    fn from(f: Flattening<R>) -> Self {
        Self { mu: f.u, nu: f.v }
    }
}

/// The 2×N matrix `Λ` with `Λ_1i = μ_i` and `Λ_2i = ν_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lambda<R: Real> {
    rows: [Vec<Scalar<R>>; 2],
}

impl<R: Real> From<RowPair<R>> for Lambda<R> {
    fn from(p: RowPair<R>) -> Self {
        Self { rows: [p.mu, p.nu] }
    }
}

impl<R: Real> From<Flattening<R>> for Lambda<R> {
    fn from(f: Flattening<R>) -> Self {
        RowPair::from(f).into()
    }
}

impl<R: Real> Lambda<R> {
    pub fn new(mu: Vec<Scalar<R>>, nu: Vec<Scalar<R>>) -> Result<Self> {
        RowPair::new(mu, nu).map(Into::into)
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    /// `Λ_ki`, 1-based.
    pub fn get(&self, k: usize, i: usize) -> &Scalar<R> {
        &self.rows[k - 1][i - 1]
    }

    pub fn row_pair(&self) -> RowPair<R> {
        RowPair {
            mu: self.rows[0].clone(),
            nu: self.rows[1].clone(),
        }
    }

    /// `g · Λ`.
    pub fn left_mul(&self, g: &Mat2<R>) -> Self {
        let (mu, nu) = self.rows[0]
            .iter()
            .zip(&self.rows[1])
            .map(|(a, b)| g.apply(a, b))
            .unzip();
        Self { rows: [mu, nu] }
    }

    /// 2×2 minors of `Λ` for `i < j`, in lexicographic order.
    pub fn minors(&self) -> Vec<Scalar<R>> {
        let n = self.width();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(
                    self.get(1, i).clone() * self.get(2, j).clone()
                        - self.get(1, j).clone() * self.get(2, i).clone(),
                );
            }
        }
        out
    }
}

/// Results of the three ε-contractions on one column pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonContraction<R: Real> {
    /// `ε^{ab} μ_a ν_b`, the minor on the pair.
    pub mu_nu: Scalar<R>,
    /// `ε^{ab} μ_a μ_b`, identically zero.
    pub mu_mu: Scalar<R>,
    /// `ε^{ab} ν_a ν_b`, identically zero.
    pub nu_nu: Scalar<R>,
}

fn contract<R: Real>(x: &[Scalar<R>], y: &[Scalar<R>], cols: [usize; 2]) -> Scalar<R> {
    let mut acc = Scalar::zero();
    for a in 1..=2 {
        for b in 1..=2 {
            let e = epsilon(a, b);
            if e != 0 {
                let term = x[cols[a - 1]].clone() * y[cols[b - 1]].clone();
                acc = acc + term.scale(R::from_int(e));
            }
        }
    }
    acc
}

/// ε-contractions restricted to columns `i < j` (1-based).
pub fn epsilon_contract<R: Real>(
    p: &RowPair<R>,
    i: usize,
    j: usize,
) -> Result<EpsilonContraction<R>> {
    let n = p.width();
    if i == 0 || i >= j || j > n {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    let cols = [i - 1, j - 1];
    Ok(EpsilonContraction {
        mu_nu: contract(&p.mu, &p.nu, cols),
        mu_mu: contract(&p.mu, &p.mu, cols),
        nu_nu: contract(&p.nu, &p.nu, cols),
    })
}

/// Antisymmetric `N × N` tensor `Φ_ij = (μ_i ν_j − μ_j ν_i)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiTensor<R: Real> {
    n: usize,
    data: Vec<Scalar<R>>,
}

impl<R: Real> PhiTensor<R> {
    pub fn width(&self) -> usize {
        self.n
    }

    /// `Φ_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Scalar<R> {
        &self.data[(i - 1) * self.n + (j - 1)]
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| is_negligible(x, tol))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (1..=self.n).all(|i| (1..=self.n).all(|j| *self.get(i, j) == -self.get(j, i).clone()))
    }

    pub fn rows(&self) -> Vec<Vec<Scalar<R>>> {
        self.data.chunks(self.n.max(1)).map(<[_]>::to_vec).collect()
    }
}

pub fn phi_tensor<R: Real>(p: &RowPair<R>) -> PhiTensor<R> {
    let n = p.width();
    let half = R::from_ratio(1, 2);
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let d = p.mu[i].clone() * p.nu[j].clone() - p.mu[j].clone() * p.nu[i].clone();
            data.push(d.scale(half.clone()));
        }
    }
    PhiTensor { n, data }
}

/// A residual tensor `T_klij` over `k, l ∈ {1, 2}` and `i, j ∈ 1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationResidual<R: Real> {
    n: usize,
    data: Vec<Scalar<R>>,
}

impl<R: Real> RelationResidual<R> {
    fn build(n: usize, f: impl Fn(usize, usize, usize, usize) -> Scalar<R>) -> Self {
        let mut data = Vec::with_capacity(4 * n * n);
        for k in 1..=2 {
            for l in 1..=2 {
                for i in 1..=n {
                    for j in 1..=n {
                        data.push(f(k, l, i, j));
                    }
                }
            }
        }
        Self { n, data }
    }

    /// `T_klij`, 1-based.
    pub fn get(&self, k: usize, l: usize, i: usize, j: usize) -> &Scalar<R> {
        let n = self.n;
        &self.data[(((k - 1) * 2 + (l - 1)) * n + (i - 1)) * n + (j - 1)]
    }

    /// Number of index tuples evaluated.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(modulus_f64).fold(0.0, f64::max)
    }

    /// Every entry vanishes (exactly on the exact backend, else within `tol`).
    pub fn holds(&self, tol: f64) -> bool {
        self.data.iter().all(|x| is_negligible(x, tol))
    }
}

/// `Λ_ki Λ_lj − Λ_kj Λ_li`
fn product_difference<R: Real>(
    l: &Lambda<R>,
    k: usize,
    ll: usize,
    i: usize,
    j: usize,
) -> Scalar<R> {
    l.get(k, i).clone() * l.get(ll, j).clone() - l.get(k, j).clone() * l.get(ll, i).clone()
}

/// `T_klij = (Λ_ki Λ_lj − Λ_kj Λ_li) − 2 ε_kl Φ_ij`; vanishes identically.
pub fn lambda_relation_check<R: Real>(l: &Lambda<R>) -> RelationResidual<R> {
    let n = l.width();
    let entries: Vec<Scalar<R>> = l.rows.iter().flatten().cloned().collect();
    if let Some(w) = R::integer_view(&entries) {
        let at = |k: usize, i: usize| (k - 1) * n + (i - 1);
        return RelationResidual::build(n, |k, ll, i, j| {
            let lhs = w.product(at(k, i), at(ll, j)) - w.product(at(k, j), at(ll, i));
            let omega = w.product(at(1, i), at(2, j)) - w.product(at(1, j), at(2, i));
            w.rescale(lhs - omega * BigInt::from(epsilon(k, ll)))
        });
    }
    let phi = phi_tensor(&l.row_pair());
    let two = R::from_int(2);
    RelationResidual::build(l.width(), |k, ll, i, j| {
        let rhs = phi
            .get(i, j)
            .clone()
            .scale(two.clone() * R::from_int(epsilon(k, ll)));
        product_difference(l, k, ll, i, j) - rhs
    })
}

/// `T_klij = (Λ_ki Λ_lj − Λ_kj Λ_li) − ε_kl Φ_ij` with no factor 2.
///
/// This is off by `ε_kl Φ_ij` and so is nonzero whenever `Φ` is; it is kept
/// for the comparison report.
pub fn lambda_relation_check_unscaled<R: Real>(l: &Lambda<R>) -> RelationResidual<R> {
    let phi = phi_tensor(&l.row_pair());
    RelationResidual::build(l.width(), |k, ll, i, j| {
        product_difference(l, k, ll, i, j)
            - phi.get(i, j).clone().scale(R::from_int(epsilon(k, ll)))
    })
}

/// Candidate numeric content for `R^{mn}_{kl} = ε^m_k ε^n_l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RMatrixKind {
    /// `ε^m_k` read as `ε^{ma} ε_{ak}` (one index raised with `ε^{12} = +1`),
    /// which is `−δ^m_k`, so the product is `δ^m_k δ^n_l`.
    Kronecker,
    /// `ε^m_k` read as the antisymmetric symbol `ε_{mk}` itself.
    LiteralEpsilon,
}

impl RMatrixKind {
    pub const ALL: [RMatrixKind; 2] = [RMatrixKind::Kronecker, RMatrixKind::LiteralEpsilon];

    pub fn name(self) -> &'static str {
        match self {
            RMatrixKind::Kronecker => "kronecker",
            RMatrixKind::LiteralEpsilon => "literal-epsilon",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Four-index tensor `R^{mn}_{kl}` over `{1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RMatrix {
    kind: RMatrixKind,
    /// `entries[m][n][k][l]`, 0-based.
    entries: [[[[i64; 2]; 2]; 2]; 2],
}

impl RMatrix {
    pub fn new(kind: RMatrixKind) -> Self {
        let mixed = |m: usize, k: usize| -> i64 {
            match kind {
                // ε^{ma} ε_{ak}
                RMatrixKind::Kronecker => (1..=2).map(|a| epsilon(m, a) * epsilon(a, k)).sum(),
                RMatrixKind::LiteralEpsilon => epsilon(m, k),
            }
        };
        let mut entries = [[[[0; 2]; 2]; 2]; 2];
        for m in 1..=2 {
            for n in 1..=2 {
                for k in 1..=2 {
                    for l in 1..=2 {
                        entries[m - 1][n - 1][k - 1][l - 1] = mixed(m, k) * mixed(n, l);
                    }
                }
            }
        }
        Self { kind, entries }
    }

    pub fn kind(&self) -> RMatrixKind {
        self.kind
    }

    /// `R^{mn}_{kl}`, 1-based.
    pub fn get(&self, m: usize, n: usize, k: usize, l: usize) -> i64 {
        self.entries[m - 1][n - 1][k - 1][l - 1]
    }
}

impl Default for RMatrix {
    fn default() -> Self {
        Self::new(RMatrixKind::Kronecker)
    }
}

/// `T_klij = (Λ_ki Λ_lj − Σ_mn R^{mn}_{kl} Λ_mj Λ_ni) − 2 ε_kl Φ_ij`.
pub fn rmatrix_relation_check<R: Real>(l: &Lambda<R>, r: &RMatrix) -> RelationResidual<R> {
    let phi = phi_tensor(&l.row_pair());
    let two = R::from_int(2);
    RelationResidual::build(l.width(), |k, ll, i, j| {
        let mut braided = Scalar::zero();
        for m in 1..=2 {
            for n in 1..=2 {
                let c = r.get(m, n, k, ll);
                if c != 0 {
                    braided =
                        braided + (l.get(m, j).clone() * l.get(n, i).clone()).scale(R::from_int(c));
                }
            }
        }
        let rhs = phi
            .get(i, j)
            .clone()
            .scale(two.clone() * R::from_int(epsilon(k, ll)));
        l.get(k, i).clone() * l.get(ll, j).clone() - braided - rhs
    })
}

/// Outcome of running one R-matrix candidate over a sample of `Λ`s.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrixVerdict {
    pub kind: RMatrixKind,
    pub samples: usize,
    pub failures: usize,
    pub max_residual: f64,
}

impl RMatrixVerdict {
    pub fn identity_holds(&self) -> bool {
        self.failures == 0
    }
}

/// Runs every R-matrix candidate over `samples` and counts failures.
pub fn compare_rmatrices<R: Real>(samples: &[Lambda<R>], tol: f64) -> Result<Vec<RMatrixVerdict>> {
    validate_tol::<R>(tol)?;
    Ok(RMatrixKind::ALL
        .into_iter()
        .map(|kind| {
            let r = RMatrix::new(kind);
            let mut failures = 0;
            let mut max_residual = 0.0f64;
            for l in samples {
                let res = rmatrix_relation_check(l, &r);
                if !res.holds(tol) {
                    failures += 1;
                }
                max_residual = max_residual.max(res.max_abs());
            }
            RMatrixVerdict {
                kind,
                samples: samples.len(),
                failures,
                max_residual,
            }
        })
        .collect())
}

fn check_det<R: Real>(det: &Scalar<R>, target: &Scalar<R>, tol: f64) -> Result<()> {
    if is_negligible(&(det.clone() - target.clone()), tol) {
        Ok(())
    } else {
        Err(Error::NotUnimodular {
            det: det.to_string(),
        })
    }
}

/// Acts with `g ∈ SL(2)` on the rows of every flattening and returns the
/// largest change of any minor, which must vanish.
pub fn sl2_invariance_check<R: Real>(
    state: &MultiQubitState<R>,
    g: &Mat2<R>,
    tol: f64,
) -> Result<f64> {
    validate_tol::<R>(tol)?;
    check_det(&g.det(), &Scalar::new(R::one(), R::zero()), tol)?;
    minor_scaling_deviation(state, g, &Scalar::new(R::one(), R::zero()))
}

/// Largest `|Ω(g·Λ) − det(g)·Ω(Λ)|` over all flattenings, for any `g`.
pub fn det_scaling_check<R: Real>(state: &MultiQubitState<R>, g: &Mat2<R>) -> Result<f64> {
    minor_scaling_deviation(state, g, &g.det())
}

fn minor_scaling_deviation<R: Real>(
    state: &MultiQubitState<R>,
    g: &Mat2<R>,
    factor: &Scalar<R>,
) -> Result<f64> {
    let m = state.num_qubits();
    if m < 2 {
        return Err(Error::TooFewQubits(m));
    }
    let mut worst = 0.0f64;
    for s in 1..=m {
        let lambda = Lambda::from(segre::flatten(state, s)?);
        let before = lambda.minors();
        let after = lambda.left_mul(g).minors();
        for (b, a) in before.iter().zip(&after) {
            worst = worst.max(modulus_f64(&(a.clone() - b.clone() * factor.clone())));
        }
    }
    Ok(worst)
}
