//! Quadratic generators of the Segre ideal and the separability test.
//!
//! Two equivalent families of quadrics are evaluated:
//!
//! * **Flattening minors.** Singling out qubit slot `s` reshapes the
//!   amplitude tensor into a `2 × 2^(m-1)` matrix with rows `u` (slot bit 0)
//!   and `v` (slot bit 1). Every column pair `i < j` gives the minor
//!   `Ω_ij = u_i v_j − u_j v_i`; there are `2^(m-1)(2^(m-1) − 1)/2` per slot.
//! * **Swap generators.** For two basis indices `x`, `y` and a slot `s`,
//!   `P = α_x α_y − α_{x'} α_{y'}` where `x'`, `y'` are `x`, `y` with their
//!   slot-`s` bits exchanged.
//!
//! A state is a point of the Segre variety (a product state) iff every
//! flattening minor vanishes. Column indices in reports are 1-based; the
//! columns of flattening `s` enumerate the remaining `m − 1` bits as an
//! integer in increasing order.
//!
//! Work per state is `m` flattenings times `2^(m-2)(2^(m-1) − 1)` minors,
//! each costing two products. Flattenings are evaluated in parallel.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{is_negligible, modulus_f64, validate_tol, Real, Scalar};
use crate::state::{BasisIndex, MultiQubitState};

/// Number of 2×2 minors of a single `2 × 2^(m-1)` flattening.
pub fn minor_count(m: usize) -> Result<u128> {
    if m < 2 {
        return Err(Error::TooFewQubits(m));
    }
    if m > 64 {
        return Err(Error::TooManyQubits { m, limit: 64 });
    }
    let n = 1u128 << (m - 1);
    Ok(n * (n - 1) / 2)
}

/// Flat index of the entry `(row, col)` of flattening `s`.
pub(crate) fn flattening_index(s: usize, row: usize, col: usize) -> usize {
    let low_mask = (1usize << (s - 1)) - 1;
    let low = col & low_mask;
    let high = col >> (s - 1);
    (high << s) | (row << (s - 1)) | low
}

/// The `2 × 2^(m-1)` matrix of a state with qubit slot `s` singled out.
#[derive(Debug, Clone, PartialEq)]
pub struct Flattening<R: Real> {
    pub s: usize,
    /// Row for slot bit 0.
    pub u: Vec<Scalar<R>>,
    /// Row for slot bit 1.
    pub v: Vec<Scalar<R>>,
}

impl<R: Real> Flattening<R> {
    pub fn width(&self) -> usize {
        self.u.len()
    }

    /// `u_i v_j − u_j v_i` for 1-based columns.
    pub fn minor(&self, i: usize, j: usize) -> Result<Scalar<R>> {
        let n = self.width();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        Ok(self.minor0(i - 1, j - 1))
    }

    fn minor0(&self, i: usize, j: usize) -> Scalar<R> {
        self.u[i].clone() * self.v[j].clone() - self.u[j].clone() * self.v[i].clone()
    }

    /// All minors `(i, j, Ω_ij)` for `1 ≤ i < j ≤ width`, in lexicographic order.
    pub fn minors(&self) -> Vec<Minor<R>> {
        let n = self.width();
        let rows: Vec<Scalar<R>> = self.u.iter().chain(&self.v).cloned().collect();
        let view = R::integer_view(&rows);
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let omega = match &view {
                    Some(w) => w.product_difference(i, n + j, j, n + i),
                    None => self.minor0(i, j),
                };
                out.push(Minor {
                    i: i + 1,
                    j: j + 1,
                    omega,
                });
            }
        }
        out
    }

    /// Reorders columns: new column `k` is old column `order[k]` (0-based).
    pub fn permute_columns(&self, order: &[usize]) -> Result<Self> {
        let n = self.width();
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&c| c >= n || std::mem::replace(&mut seen[c], true))
        {
            return Err(Error::DimensionMismatch(format!(
                "{order:?} is not a permutation of {n} columns"
            )));
        }
        Ok(Self {
            s: self.s,
            u: order.iter().map(|&c| self.u[c].clone()).collect(),
            v: order.iter().map(|&c| self.v[c].clone()).collect(),
        })
    }
}

/// Flattening of `state` about slot `s` (1-based).
pub fn flatten<R: Real>(state: &MultiQubitState<R>, s: usize) -> Result<Flattening<R>> {
    let m = state.num_qubits();
    if s == 0 || s > m {
        return Err(Error::SlotOutOfRange { s, m });
    }
    let n = 1usize << (m - 1);
    let amps = state.amplitudes();
    let row = |r| {
        (0..n)
            .map(|c| amps[flattening_index(s, r, c)].clone())
            .collect()
    };
    Ok(Flattening {
        s,
        u: row(0),
        v: row(1),
    })
}

/// One minor `Ω_ij` of a flattening (1-based columns, `i < j`).
#[derive(Debug, Clone, PartialEq)]
pub struct Minor<R: Real> {
    pub i: usize,
    pub j: usize,
    pub omega: Scalar<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlatteningMinors<R: Real> {
    pub s: usize,
    pub minors: Vec<Minor<R>>,
}

/// A swap generator `α_x α_y − α_{x'} α_{y'}` about slot `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SwapGenerator<R: Real> {
    pub s: usize,
    pub x: BasisIndex,
    pub y: BasisIndex,
    pub value: Scalar<R>,
}

/// Every flattening minor and every nontrivial swap generator of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorReport<R: Real> {
    pub m: usize,
    pub flattenings: Vec<FlatteningMinors<R>>,
    pub generators: Vec<SwapGenerator<R>>,
}

impl<R: Real> MinorReport<R> {
    pub fn all_minors(&self) -> impl Iterator<Item = (usize, &Minor<R>)> {
        self.flattenings
            .iter()
            .flat_map(|f| f.minors.iter().map(move |mi| (f.s, mi)))
    }

    pub fn total_minors(&self) -> usize {
        self.flattenings.iter().map(|f| f.minors.len()).sum()
    }
}

/// Flattening minors for every slot `1..=m`.
pub fn flattening_minors<R: Real>(state: &MultiQubitState<R>) -> Result<Vec<FlatteningMinors<R>>> {
    let m = state.num_qubits();
    if m < 2 {
        return Err(Error::TooFewQubits(m));
    }
    (1..=m)
        .into_par_iter()
        .map(|s| {
            let f = flatten(state, s)?;
            Ok(FlatteningMinors {
                s,
                minors: f.minors(),
            })
        })
        .collect()
}

/// Swap generators evaluated directly on amplitudes.
///
/// For each slot `s`, every unordered pair `x < y` whose slot-`s` bits
/// differ and whose remaining bits differ somewhere is listed once; pairs
/// differing only in slot `s` give the trivially zero quadric and are
/// skipped. That leaves `2^(m-1)(2^(m-1) − 1)` generators per slot.
pub fn swap_generators<R: Real>(state: &MultiQubitState<R>) -> Result<Vec<SwapGenerator<R>>> {
    let m = state.num_qubits();
    if m < 2 {
        return Err(Error::TooFewQubits(m));
    }
    let dim = 1usize << m;
    let view = R::integer_view(state.amplitudes());
    let per_slot: Vec<Vec<SwapGenerator<R>>> = (1..=m)
        .into_par_iter()
        .map(|s| {
            let mask = 1usize << (s - 1);
            let mut out = Vec::new();
            for x in 0..dim {
                for y in x + 1..dim {
                    let diff = x ^ y;
                    if diff & mask == 0 || diff == mask {
                        continue;
                    }
                    let xs = state.index(x);
                    let ys = state.index(y);
                    let xp = xs.with_bit(s, ys.bit(s));
                    let yp = ys.with_bit(s, xs.bit(s));
                    let value = match &view {
                        Some(w) => w.product_difference(x, y, xp.flat, yp.flat),
                        None => {
                            state.amplitude(xs).clone() * state.amplitude(ys).clone()
                                - state.amplitude(xp).clone() * state.amplitude(yp).clone()
                        }
                    };
                    out.push(SwapGenerator {
                        s,
                        x: xs,
                        y: ys,
                        value,
                    });
                }
            }
            out
        })
        .collect();
    Ok(per_slot.into_iter().flatten().collect())
}

/// All flattening minors plus all swap generators.
pub fn minors<R: Real>(state: &MultiQubitState<R>) -> Result<MinorReport<R>> {
    Ok(MinorReport {
        m: state.num_qubits(),
        flattenings: flattening_minors(state)?,
        generators: swap_generators(state)?,
    })
}

/// The nonvanishing minor reported for an entangled state.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<R: Real> {
    pub s: usize,
    pub i: usize,
    pub j: usize,
    pub omega: Scalar<R>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Separability<R: Real> {
    Separable,
    Entangled(Witness<R>),
}

impl<R: Real> Separability<R> {
    pub fn is_separable(&self) -> bool {
        matches!(self, Separability::Separable)
    }
}

/// Verdict plus the largest minor modulus, for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport<R: Real> {
    pub verdict: Separability<R>,
    pub max_abs_minor: f64,
}

/// Decides whether `state` is a product state.
///
/// The witness of an entangled state is a minor of maximal modulus, ties
/// broken by the smallest `(s, i, j)`. Single-qubit states are always
/// separable.
pub fn check_separability<R: Real>(
    state: &MultiQubitState<R>,
    tol: f64,
) -> Result<SeparabilityReport<R>> {
    validate_tol::<R>(tol)?;
    if state.is_zero() {
        return Err(Error::ZeroState);
    }
    if state.num_qubits() < 2 {
        return Ok(SeparabilityReport {
            verdict: Separability::Separable,
            max_abs_minor: 0.0,
        });
    }
    let flats = flattening_minors(state)?;
    let mut best: Option<(R, Witness<R>)> = None;
    for f in &flats {
        for mi in &f.minors {
            let size = mi.omega.norm_sqr();
            if best.as_ref().is_none_or(|(b, _)| size > *b) {
                best = Some((
                    size,
                    Witness {
                        s: f.s,
                        i: mi.i,
                        j: mi.j,
                        omega: mi.omega.clone(),
                    },
                ));
            }
        }
    }
    let (_, witness) = best.expect("m >= 2 has at least one minor");
    let max_abs_minor = modulus_f64(&witness.omega);
    let verdict = if is_negligible(&witness.omega, tol) {
        Separability::Separable
    } else {
        Separability::Entangled(witness)
    };
    Ok(SeparabilityReport {
        verdict,
        max_abs_minor,
    })
}

pub fn is_separable<R: Real>(state: &MultiQubitState<R>, tol: f64) -> Result<Separability<R>> {
    check_separability(state, tol).map(|r| r.verdict)
}

/// Whether every minor of every flattening is exactly zero.
pub fn all_minors_vanish<R: Real>(report: &MinorReport<R>) -> bool {
    report.all_minors().all(|(_, mi)| mi.omega.is_zero())
        && report.generators.iter().all(|g| g.value.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat2;
    use crate::scalar::int;
    use crate::state::QubitFactor;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    fn state(m: usize, v: &[i64]) -> MultiQubitState<Q> {
        MultiQubitState::from_amplitudes(m, v.iter().map(|&x| int(x, 0)).collect()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar<Q>> {
        v.iter().map(|&x| int(x, 0)).collect()
    }

    fn basis(m: usize, ones: &[usize]) -> MultiQubitState<Q> {
        let mut v = vec![0; 1 << m];
        for &x in ones {
            v[x] = 1;
        }
        state(m, &v)
    }

    /// Brute-force oracle: the minor on (i, j) of flattening s computed from
    /// explicit bit strings rather than the index arithmetic.
    fn oracle_minor(st: &MultiQubitState<Q>, s: usize, i: usize, j: usize) -> Scalar<Q> {
        let m = st.num_qubits();
        let entry = |row: u8, col: usize| {
            // Insert `row` at slot s into the bits of `col` (other slots in order).
            let mut bits_lsb = Vec::with_capacity(m);
            let mut c = col;
            for slot in 1..=m {
                if slot == s {
                    bits_lsb.push(row);
                } else {
                    bits_lsb.push((c & 1) as u8);
                    c >>= 1;
                }
            }
            let flat: usize = bits_lsb
                .iter()
                .enumerate()
                .map(|(k, &b)| (b as usize) << k)
                .sum();
            st.amplitudes()[flat].clone()
        };
        entry(0, i) * entry(1, j) - entry(0, j) * entry(1, i)
    }

    #[test]
    fn flatten_examples() {
        let s = MultiQubitState::<Q>::from_amplitudes(
            2,
            vec![int(1, 0), int(2, 0), int(3, 0), int(4, 0)],
        )
        .unwrap();
        let f = flatten(&s, 2).unwrap();
        assert_eq!(f.u, ints(&[1, 2]));
        assert_eq!(f.v, ints(&[3, 4]));

        let ghz = basis(3, &[0, 7]);
        let f = flatten(&ghz, 3).unwrap();
        assert_eq!(f.u, ints(&[1, 0, 0, 0]));
        assert_eq!(f.v, ints(&[0, 0, 0, 1]));

        let one = state(1, &[5, 7]);
        let f = flatten(&one, 1).unwrap();
        assert_eq!((f.u, f.v), (ints(&[5]), ints(&[7])));
        assert!(flatten(&one, 1).unwrap().minors().is_empty());

        assert_eq!(flatten(&ghz, 4), Err(Error::SlotOutOfRange { s: 4, m: 3 }));
        assert_eq!(flatten(&ghz, 0), Err(Error::SlotOutOfRange { s: 0, m: 3 }));
    }

    #[test]
    fn three_qubit_flattenings_match_displayed_matrices() {
        // amps[x] = x + 1 so each entry names its own basis index.
        let st = state(3, &[1, 2, 3, 4, 5, 6, 7, 8]);
        let a = |bits: &str| int::<Q>(i64::from_str_radix(bits, 2).unwrap() + 1, 0);
        let rows = |u: [&str; 4], v: [&str; 4]| (u.map(a).to_vec(), v.map(a).to_vec());

        let f3 = flatten(&st, 3).unwrap();
        assert_eq!(
            (f3.u, f3.v),
            rows(["000", "001", "010", "011"], ["100", "101", "110", "111"])
        );
        let f2 = flatten(&st, 2).unwrap();
        assert_eq!(
            (f2.u, f2.v),
            rows(["000", "001", "100", "101"], ["010", "011", "110", "111"])
        );
        // Slot 1 is displayed with the middle two columns exchanged.
        let f1 = flatten(&st, 1)
            .unwrap()
            .permute_columns(&[0, 2, 1, 3])
            .unwrap();
        assert_eq!(
            (f1.u, f1.v),
            rows(["000", "100", "010", "110"], ["001", "101", "011", "111"])
        );
    }

    #[test]
    fn minor_count_examples() {
        assert_eq!(minor_count(2), Ok(1));
        assert_eq!(minor_count(3), Ok(6));
        assert_eq!(minor_count(4), Ok(28));
        assert_eq!(minor_count(1), Err(Error::TooFewQubits(1)));
        for m in 2..=8 {
            let n = 1usize << (m - 1);
            let enumerated = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|(i, j)| i < j)
                .count();
            assert_eq!(minor_count(m).unwrap(), enumerated as u128);
        }
    }

    #[test]
    fn minors_of_small_states() {
        let bell = state(2, &[1, 0, 0, 1]);
        let r = minors(&bell).unwrap();
        assert_eq!(r.flattenings.len(), 2);
        for f in &r.flattenings {
            assert_eq!(f.minors.len(), 1);
            let w = &f.minors[0].omega;
            assert!(*w == int(1, 0) || *w == int(-1, 0));
        }
        assert_eq!(r.flattenings[1].minors[0].omega, int(1, 0));

        let product = state(2, &[1, 1, 1, 1]);
        assert!(all_minors_vanish(&minors(&product).unwrap()));

        assert!(matches!(
            minors(&state(1, &[1, 0])),
            Err(Error::TooFewQubits(1))
        ));
    }

    #[test]
    fn ghz_minors_by_brute_force() {
        let ghz = basis(3, &[0, 7]);
        let r = minors(&ghz).unwrap();
        assert_eq!(r.total_minors(), 18);
        let nonzero: Vec<_> = r
            .all_minors()
            .filter(|(_, mi)| !mi.omega.is_zero())
            .collect();
        assert_eq!(nonzero.len(), 3);
        let s3: Vec<_> = nonzero.iter().filter(|(s, _)| *s == 3).collect();
        assert_eq!(s3.len(), 1);
        assert_eq!((s3[0].1.i, s3[0].1.j), (1, 4));
        assert_eq!(s3[0].1.omega, int(1, 0));
        for (s, mi) in r.all_minors() {
            assert_eq!(mi.omega, oracle_minor(&ghz, s, mi.i - 1, mi.j - 1));
        }
    }

    #[test]
    fn separability_examples() {
        let bell = state(2, &[1, 0, 0, 1]);
        match is_separable(&bell, 0.0).unwrap() {
            Separability::Entangled(w) => {
                assert_eq!((w.s, w.i, w.j), (1, 1, 2));
                assert_eq!(w.omega, int(1, 0));
            }
            v => panic!("{v:?}"),
        }

        let product = MultiQubitState::<Q>::segre_embed(&[
            QubitFactor::new(int(1, 0), int(2, 0)),
            QubitFactor::new(int(3, 0), int(5, 0)),
            QubitFactor::new(int(7, 0), int(11, 0)),
        ])
        .unwrap();
        let r = minors(&product).unwrap();
        assert_eq!(r.total_minors(), 18);
        assert!(all_minors_vanish(&r));
        assert_eq!(
            is_separable(&product, 0.0).unwrap(),
            Separability::Separable
        );

        let w = basis(3, &[1, 2, 4]);
        assert!(!is_separable(&w, 0.0).unwrap().is_separable());
        // Slot 1, columns for other bits 00 and 01: u = (0, 1), v = (1, 0).
        let f1 = flatten(&w, 1).unwrap();
        assert_eq!(f1.minor(1, 2).unwrap(), int(-1, 0));

        assert_eq!(
            is_separable(&state(2, &[0, 0, 0, 0]), 0.0),
            Err(Error::ZeroState)
        );
        assert_eq!(
            is_separable(&bell, 1e-9),
            Err(Error::ToleranceOnExact(1e-9))
        );
        assert_eq!(
            is_separable(&state(1, &[3, 4]), 0.0).unwrap(),
            Separability::Separable
        );
    }

    #[test]
    fn float_backend_tolerance() {
        let h = 1.0 / 2f64.sqrt();
        let z = Scalar::new(0.0, 0.0);
        let bell = MultiQubitState::<f64>::from_amplitudes(
            2,
            vec![Scalar::new(h, 0.0), z, z, Scalar::new(h, 0.0)],
        )
        .unwrap();
        let r = check_separability(&bell, 1e-10).unwrap();
        assert!(!r.verdict.is_separable());
        assert!((r.max_abs_minor - 0.5).abs() < 1e-12);

        let eps = Scalar::new(1e-14, 0.0);
        let nearly =
            MultiQubitState::<f64>::from_amplitudes(2, vec![Scalar::new(1.0, 0.0), z, z, eps])
                .unwrap();
        assert!(is_separable(&nearly, 1e-10).unwrap().is_separable());
        assert!(!is_separable(&nearly, 0.0).unwrap().is_separable());
    }

    #[test]
    fn witness_tie_breaking_is_lexicographic() {
        // Bell-like pairs on slots 1 and 2 give equal-modulus minors in several places.
        let st = state(3, &[1, 0, 0, 1, 0, 0, 0, 0]);
        match is_separable(&st, 0.0).unwrap() {
            Separability::Entangled(w) => assert_eq!((w.s, w.i, w.j), (1, 1, 2)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn generator_counts() {
        for m in 2..=4 {
            let st = basis(m, &[0]);
            let g = swap_generators(&st).unwrap();
            let n = 1usize << (m - 1);
            assert_eq!(g.len(), m * n * (n - 1));
        }
    }

    fn rat() -> impl Strategy<Value = Scalar<Q>> {
        (-9i64..=9, -9i64..=9, 1i64..=5)
            .prop_map(|(a, b, d)| Scalar::new(Q::from_ratio(a, d), Q::from_ratio(b, d)))
    }

    fn any_state(m: usize) -> impl Strategy<Value = MultiQubitState<Q>> {
        prop::collection::vec(rat(), 1 << m)
            .prop_map(move |v| MultiQubitState::from_amplitudes(m, v).unwrap())
    }

    fn factor() -> impl Strategy<Value = QubitFactor<Q>> {
        (rat(), rat())
            .prop_filter("nonzero", |(a, b)| !a.is_zero() || !b.is_zero())
            .prop_map(|(a, b)| QubitFactor::new(a, b))
    }

    fn invertible() -> impl Strategy<Value = Mat2<Q>> {
        (rat(), rat(), rat(), rat())
            .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
            .prop_filter("invertible", |g| !g.det().is_zero())
    }

    proptest! {
        #[test]
        fn segre_soundness(factors in prop::collection::vec(factor(), 2..=4)) {
            let st = MultiQubitState::segre_embed(&factors).unwrap();
            prop_assert!(all_minors_vanish(&minors(&st).unwrap()));
        }

        #[test]
        fn two_qubit_completeness(st in any_state(2)) {
            prop_assume!(!st.is_zero());
            let a = st.amplitudes();
            let det = a[0].clone() * a[3].clone() - a[1].clone() * a[2].clone();
            prop_assert_eq!(is_separable(&st, 0.0).unwrap().is_separable(), det.is_zero());
        }

        #[test]
        fn scale_covariance(st in any_state(3), lambda in rat()) {
            prop_assume!(!lambda.is_zero() && !st.is_zero());
            let a = minors(&st).unwrap();
            let b = minors(&st.scaled(&lambda)).unwrap();
            let l2 = lambda.clone() * lambda;
            for ((_, x), (_, y)) in a.all_minors().zip(b.all_minors()) {
                prop_assert_eq!(y.omega.clone(), x.omega.clone() * l2.clone());
            }
            prop_assert_eq!(
                is_separable(&st, 0.0).unwrap().is_separable(),
                is_separable(&st.scaled(&Scalar::new(Q::from_int(2), Q::from_int(-1))), 0.0).unwrap().is_separable()
            );
        }

        #[test]
        fn local_invertible_preserves_verdict(
            factors in prop::collection::vec(factor(), 3),
            st in any_state(3),
            g in invertible(),
            slot in 1usize..=3,
        ) {
            let product = MultiQubitState::segre_embed(&factors).unwrap();
            prop_assert!(is_separable(&product.apply_local(slot, &g).unwrap(), 0.0).unwrap().is_separable());
            prop_assume!(!st.is_zero());
            prop_assert_eq!(
                is_separable(&st, 0.0).unwrap().is_separable(),
                is_separable(&st.apply_local(slot, &g).unwrap(), 0.0).unwrap().is_separable()
            );
        }

        #[test]
        fn minors_match_oracle(st in any_state(4)) {
            for f in flattening_minors(&st).unwrap() {
                for mi in f.minors {
                    prop_assert_eq!(mi.omega, oracle_minor(&st, f.s, mi.i - 1, mi.j - 1));
                }
            }
        }

        #[test]
        fn antisymmetry(st in any_state(3), s in 1usize..=3, i in 1usize..=4, j in 1usize..=4) {
            let f = flatten(&st, s).unwrap();
            prop_assert_eq!(f.minor(i, j).unwrap(), -f.minor(j, i).unwrap());
        }
    }

    #[test]
    fn swap_generators_match_minors_up_to_sign() {
        let mut sampler = crate::random::ExactSampler::new(11);
        for m in 2..=4 {
            for _ in 0..8 {
                let st = sampler.state(m);
                let r = minors(&st).unwrap();
                // Brute force: look for a minor with equal value or negated value.
                for g in &r.generators {
                    let f = &r.flattenings[g.s - 1];
                    let found = f
                        .minors
                        .iter()
                        .any(|mi| mi.omega == g.value || mi.omega == -g.value.clone());
                    assert!(found, "generator {g:?} matches no minor of slot {}", g.s);
                }
            }
        }
    }
}
