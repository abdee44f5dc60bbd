//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use segre_geom::conifold::deformation;
use segre_geom::ncg::{compare_rmatrices, lambda_relation_check, phi_tensor, RMatrix};
use segre_geom::qplane::{
    equal_in_qplane, normalize, normalize_specialized, normalize_with, qcommute_exponent, Laurent,
    Letter, QPolynomial, RewriteStrategy, Word,
};
use segre_geom::random::ExactSampler;
use segre_geom::segre::{self, all_minors_vanish, flatten, minor_count};
use segre_geom::{BigRational, ExactScalar, ExactState, Lambda, MultiQubitState, RowPair};
use serde_json::Value;

type Q = BigRational;

/// Zero tolerance: every criterion runs on the exact backend.
const EXACT_TOL: f64 = 0.0;
/// Wall-clock budget for the soundness sweep.
const SOUNDNESS_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: i64, im: i64) -> ExactScalar {
    ExactScalar::new(Q::from_integer(re.into()), Q::from_integer(im.into()))
}

fn segre_soundness() -> Outcome {
    let start = Instant::now();
    let mut sampler = ExactSampler::new(1);
    let mut checked = 0usize;
    for m in 2..=5 {
        for k in 0..1000 {
            let st = sampler.product_state(m);
            let report = segre::minors(&st).map_err(|e| e.to_string())?;
            ensure(all_minors_vanish(&report), || {
                format!("m={m} sample {k}: nonzero quadric")
            })?;
            ensure(
                report.total_minors() == m * minor_count(m).unwrap() as usize,
                || format!("m={m}: wrong minor total {}", report.total_minors()),
            )?;
            checked += report.total_minors() + report.generators.len();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < SOUNDNESS_BUDGET, || {
        format!("took {elapsed:.2?}, budget {SOUNDNESS_BUDGET:?}")
    })?;
    Ok(format!(
        "4000 product states, {checked} quadrics all zero in {elapsed:.2?}"
    ))
}

fn two_qubit_completeness() -> Outcome {
    let mut generic = ExactSampler::new(2);
    let mut small = ExactSampler::with_bounds(3, 1, 1);
    let (mut sep, mut ent) = (0, 0);
    for k in 0..1000 {
        let st = match k % 3 {
            0 => generic.state(2),
            1 => generic.product_state(2),
            _ => small.state(2),
        };
        let a = st.amplitudes();
        let predicate = a[0].clone() * a[3].clone() - a[1].clone() * a[2].clone() == c(0, 0);
        let verdict = segre::is_separable(&st, EXACT_TOL).map_err(|e| e.to_string())?;
        ensure(verdict.is_separable() == predicate, || {
            format!("disagreement on {a:?}")
        })?;
        if predicate {
            sep += 1;
        } else {
            ent += 1;
        }
    }
    Ok(format!(
        "1000 states agree ({sep} separable, {ent} entangled)"
    ))
}

fn minor_counts() -> Outcome {
    let mut sampler = ExactSampler::new(4);
    for m in 2..=8usize {
        let width = 1usize << (m - 1);
        let mut pairs = 0u128;
        for i in 0..width {
            for j in 0..width {
                if i < j {
                    pairs += 1;
                }
            }
        }
        let closed = (1u128 << (m - 1)) * ((1u128 << (m - 1)) - 1) / 2;
        let formula = minor_count(m).map_err(|e| e.to_string())?;
        ensure(formula == pairs && closed == pairs, || {
            format!("m={m}: formula {formula}, enumeration {pairs}")
        })?;
        let st = sampler.state(m);
        for s in 1..=m {
            let listed = flatten(&st, s).unwrap().minors().len() as u128;
            ensure(listed == pairs, || format!("m={m} s={s}: {listed} listed"))?;
        }
    }
    ensure(minor_count(3) == Ok(6), || "m=3 is not 6".into())?;
    Ok("m=2..8 match enumeration; m=3 gives 6 per flattening".into())
}

fn conifold_identity() -> Outcome {
    let mut sampler = ExactSampler::new(5);
    for k in 0..10_000 {
        let p = sampler.conifold_point();
        let sum = p.residual();
        let det = p.to_segre_coords().det();
        ensure(det == sum, || format!("point {k}: det {det} vs sum {sum}"))?;
        let split = p.real_split();
        ensure(split.f1 == sum.re, || format!("point {k}: f1"))?;
        ensure(split.f2.clone() + split.f2.clone() == sum.im, || {
            format!("point {k}: f2")
        })?;
    }
    Ok("10000 points: det = sum z^2, f1 = Re, 2 f2 = Im".into())
}

/// `Λ_ki Λ_lj − Λ_kj Λ_li − ε_kl (μ_i ν_j − μ_j ν_i)`, computed from scratch.
fn lambda_oracle_holds(l: &Lambda<Q>) -> bool {
    let n = l.width();
    let eps = |k: usize, ll: usize| match (k, ll) {
        (1, 2) => c(1, 0),
        (2, 1) => c(-1, 0),
        _ => c(0, 0),
    };
    (1..=2).all(|k| {
        (1..=2).all(|ll| {
            (1..=n).all(|i| {
                (1..=n).all(|j| {
                    let lhs = l.get(k, i).clone() * l.get(ll, j).clone()
                        - l.get(k, j).clone() * l.get(ll, i).clone();
                    let omega = l.get(1, i).clone() * l.get(2, j).clone()
                        - l.get(1, j).clone() * l.get(2, i).clone();
                    lhs == eps(k, ll) * omega
                })
            })
        })
    })
}

fn lambda_identity() -> Outcome {
    let mut sampler = ExactSampler::new(6);
    for n in [2, 4, 8] {
        for k in 0..1000 {
            let l = sampler.lambda(n);
            ensure(lambda_relation_check(&l).holds(EXACT_TOL), || {
                format!(
                    "N={n} sample {k}: residual {}",
                    lambda_relation_check(&l).max_abs()
                )
            })?;
            ensure(lambda_oracle_holds(&l), || {
                format!("N={n} sample {k}: oracle disagrees")
            })?;
        }
    }
    Ok("3000 random 2xN matrices (N = 2, 4, 8) have zero residual".into())
}

fn all_flattening_minors(st: &ExactState) -> Vec<Vec<ExactScalar>> {
    (1..=st.num_qubits())
        .map(|s| {
            flatten(st, s)
                .unwrap()
                .minors()
                .into_iter()
                .map(|m| m.omega)
                .collect()
        })
        .collect()
}

fn sl2_invariance() -> Outcome {
    let mut sampler = ExactSampler::new(7);
    for k in 0..500 {
        let m = 2 + k % 2;
        let st = sampler.state(m);
        let g = sampler.unimodular();
        ensure(g.det() == c(1, 0), || {
            format!("sample {k}: det {}", g.det())
        })?;
        let h = sampler.invertible();
        let det_h = h.det();
        let before = all_flattening_minors(&st);
        for s in 1..=m {
            let moved = st.apply_local(s, &g).unwrap();
            let after = flatten(&moved, s).unwrap().minors();
            ensure(after.iter().map(|x| &x.omega).eq(&before[s - 1]), || {
                format!("sample {k} slot {s}: SL(2) changed a minor")
            })?;
            let scaled = flatten(&st.apply_local(s, &h).unwrap(), s)
                .unwrap()
                .minors();
            ensure(
                scaled
                    .iter()
                    .zip(&before[s - 1])
                    .all(|(a, b)| a.omega == b.clone() * det_h.clone()),
                || format!("sample {k} slot {s}: minor did not scale by det"),
            )?;
        }
    }
    Ok("500 unimodular and 500 general row actions on m = 2, 3".into())
}

/// Breadth-first search over every adjacent swap `vu -> uv`, each costing one `q`.
fn swap_closure(word: &Word) -> Result<(i64, u32, u32), String> {
    let mut seen: BTreeMap<Vec<Letter>, i64> = BTreeMap::new();
    let mut queue = VecDeque::from([(word.0.clone(), 0i64)]);
    let mut terminal = None;
    while let Some((w, e)) = queue.pop_front() {
        if let Some(&prev) = seen.get(&w) {
            if prev != e {
                return Err(format!("{word}: two exponents for one word"));
            }
            continue;
        }
        seen.insert(w.clone(), e);
        let mut stuck = true;
        for p in 0..w.len().saturating_sub(1) {
            if w[p] == Letter::V && w[p + 1] == Letter::U {
                stuck = false;
                let mut next = w.clone();
                next.swap(p, p + 1);
                queue.push_back((next, e + 1));
            }
        }
        if stuck {
            let a = w.iter().filter(|&&l| l == Letter::U).count() as u32;
            let t = (e, a, w.len() as u32 - a);
            if terminal.is_some_and(|x| x != t) {
                return Err(format!("{word}: two terminal words"));
            }
            terminal = Some(t);
        }
    }
    terminal.ok_or_else(|| format!("{word}: no terminal word"))
}

fn qplane_oracle() -> Outcome {
    let mut words = 0;
    for len in 0..=10u32 {
        for bits in 0..(1u32 << len) {
            let w = Word(
                (0..len)
                    .map(|p| {
                        if bits >> p & 1 == 1 {
                            Letter::V
                        } else {
                            Letter::U
                        }
                    })
                    .collect(),
            );
            let (e, a, b) = swap_closure(&w)?;
            let p = QPolynomial::<Q>::word(w.clone());
            let expected = Laurent::monomial(c(1, 0), e);
            for strategy in [RewriteStrategy::Leftmost, RewriteStrategy::Rightmost] {
                let nf = normalize_with(&p, strategy);
                ensure(
                    nf.coefficient(a, b) == Some(&expected) && nf.terms().count() == 1,
                    || format!("{w}: {nf} vs q^{e} u^{a} v^{b}"),
                )?;
            }
            words += 1;
        }
    }
    for i in 0..=6u32 {
        for j in 0..=6u32 {
            let e = qcommute_exponent(i, j);
            ensure(e == i64::from(i * j), || {
                format!("exponent ({i},{j}) = {e}")
            })?;
            let vu = Word(
                std::iter::repeat_n(Letter::V, j as usize)
                    .chain(std::iter::repeat_n(Letter::U, i as usize))
                    .collect(),
            );
            let lhs = QPolynomial::<Q>::word(vu);
            let rhs = QPolynomial::term(
                Laurent::monomial(c(1, 0), i64::from(i * j)),
                Word::ordered(i, j),
            );
            ensure(equal_in_qplane(&lhs, &rhs), || {
                format!("v^{j} u^{i} != q^(ij) u^{i} v^{j}")
            })?;
        }
    }
    let short: Vec<Word> = (0..=4u32)
        .flat_map(|len| {
            (0..(1u32 << len)).map(move |bits| {
                Word(
                    (0..len)
                        .map(|p| {
                            if bits >> p & 1 == 1 {
                                Letter::V
                            } else {
                                Letter::U
                            }
                        })
                        .collect(),
                )
            })
        })
        .collect();
    let one = c(1, 0);
    let mut pairs = 0;
    for x in &short {
        for y in &short {
            let px = QPolynomial::<Q>::word(x.clone()).add(&QPolynomial::word(y.clone()));
            let py = QPolynomial::<Q>::word(y.clone()).add(&QPolynomial::word(x.clone()));
            let diff = QPolynomial::<Q>::word(x.clone()).sub(&QPolynomial::word(y.clone()));
            let commutative = x.count(Letter::U) == y.count(Letter::U) && x.len() == y.len();
            let at_one = normalize_specialized(&diff, &one).map_err(|e| e.to_string())?;
            ensure(at_one.is_empty() == commutative, || {
                format!("q=1: {x} vs {y}")
            })?;
            let via_nf = normalize(&diff)
                .specialize(&one)
                .map_err(|e| e.to_string())?;
            ensure(via_nf.is_empty() == commutative, || {
                format!("q=1 via normal form: {x} vs {y}")
            })?;
            ensure(equal_in_qplane(&px, &py), || {
                format!("sum order: {x} + {y}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{words} words match the swap enumerator; exponents i*j for i,j <= 6; {pairs} pairs at q = 1"
    ))
}

fn biseparable(sampler: &mut ExactSampler) -> ExactState {
    let a = sampler.factor();
    let b = sampler.state(2);
    let amps = (0..8usize)
        .map(|x| a.component((x & 1) as u8).clone() * b.amplitudes()[x >> 1].clone())
        .collect();
    MultiQubitState::from_amplitudes(3, amps).unwrap()
}

fn cross_module() -> Outcome {
    let mut sampler = ExactSampler::new(8);
    let (mut sep, mut ent) = (0, 0);
    for k in 0..1000 {
        let m = 2 + k % 2;
        let st = match (k / 2) % 3 {
            0 => sampler.state(m),
            1 => sampler.product_state(m),
            _ if m == 3 => biseparable(&mut sampler),
            _ => sampler.state(m),
        };
        if m == 2 {
            let omega = deformation(&st).unwrap();
            for s in 1..=2 {
                let minor = flatten(&st, s).unwrap().minor(1, 2).unwrap();
                ensure(omega == minor, || {
                    format!("sample {k}: deformation {omega} vs minor {minor}")
                })?;
            }
        }
        let phi_zero = (1..=m)
            .all(|s| phi_tensor(&RowPair::from(flatten(&st, s).unwrap())).is_zero(EXACT_TOL));
        let separable = segre::is_separable(&st, EXACT_TOL).unwrap().is_separable();
        ensure(phi_zero == separable, || {
            format!("sample {k}: phi zero {phi_zero}, separable {separable}")
        })?;
        if separable {
            sep += 1;
        } else {
            ent += 1;
        }
    }
    Ok(format!(
        "1000 states ({sep} separable, {ent} entangled) consistent"
    ))
}

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_segre-geom"))
        .args(args)
        .env_remove("SEGRE_GEOM_TOL")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

fn fixture_goldens() -> Outcome {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let mut files = 0;
    for name in ["bell", "ghz3", "w3", "product3"] {
        let path = root.join("../../fixtures").join(format!("{name}.json"));
        let path = path.to_string_lossy();
        for cmd in ["check-separability", "minors"] {
            let (code, first) = cli(&[cmd, &path])?;
            let (_, second) = cli(&[cmd, &path])?;
            let golden =
                std::fs::read_to_string(root.join(format!("tests/golden/{cmd}_{name}.json")))
                    .map_err(|e| e.to_string())?;
            ensure(code == 0 && first == second && first == golden, || {
                format!("{cmd} {name}: output differs from golden")
            })?;
            files += 1;
        }
    }

    let ghz = [1, 0, 0, 0, 0, 0, 0, 1];
    let mut brute_nonzero = 0;
    let mut brute_total = 0;
    for s in 1..=3usize {
        let others: Vec<usize> = (1..=3).filter(|&t| t != s).collect();
        let column = |col: usize, bit: usize| {
            let mut x = bit << (s - 1);
            for (k, &t) in others.iter().enumerate() {
                x |= (col >> k & 1) << (t - 1);
            }
            ghz[x]
        };
        for i in 0..4 {
            for j in i + 1..4 {
                brute_total += 1;
                if column(i, 0) * column(j, 1) - column(j, 0) * column(i, 1) != 0 {
                    brute_nonzero += 1;
                }
            }
        }
    }
    let (_, out) = cli(&["minors", "--fixture", "ghz3"])?;
    let report: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let minors: Vec<&Value> = report["flattenings"]
        .as_array()
        .into_iter()
        .flatten()
        .flat_map(|f| f["minors"].as_array().into_iter().flatten())
        .collect();
    let nonzero = minors
        .iter()
        .filter(|m| m["omega"]["re"] != "0" || m["omega"]["im"] != "0")
        .count();
    ensure(
        (minors.len(), nonzero) == (brute_total, brute_nonzero)
            && nonzero == 3
            && minors.len() == 18,
        || {
            format!(
                "ghz3: CLI {nonzero}/{}, brute force {brute_nonzero}/{brute_total}",
                minors.len()
            )
        },
    )?;
    Ok(format!(
        "{files} outputs byte-stable and equal to goldens; ghz3 has {nonzero} of {} nonzero",
        minors.len()
    ))
}

fn rmatrix_report() -> Outcome {
    let (code, out) = cli(&["verify-relations", "--fixture", "bell", "--samples", "100"])?;
    ensure(code == 0, || format!("default R-matrix run exited {code}"))?;
    let report: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let cmp = &report["rmatrix_comparison"];
    let candidates = cmp["candidates"].as_array().ok_or("no candidates")?;
    let holding: Vec<&str> = candidates
        .iter()
        .filter(|c| c["identity_holds"] == true)
        .filter_map(|c| c["kind"].as_str())
        .collect();
    ensure(cmp["samples"] == 100 && candidates.len() == 2, || {
        "comparison incomplete".into()
    })?;
    ensure(holding.len() == 1 && cmp["default"] == holding[0], || {
        format!("holding {holding:?}, default {}", cmp["default"])
    })?;

    let (code, out) = cli(&[
        "verify-relations",
        "--fixture",
        "bell",
        "--rmatrix",
        "literal-epsilon",
    ])?;
    let literal: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let failing = literal["relations"]
        .as_array()
        .into_iter()
        .flatten()
        .any(|r| r["relation"] == "rmatrix_relation" && r["pass"] == false);
    ensure(code == 4 && failing, || {
        format!("literal-epsilon run exited {code}")
    })?;

    let mut sampler = ExactSampler::new(10);
    for n in [2, 4, 8] {
        let lambdas: Vec<_> = (0..100).map(|_| sampler.lambda(n)).collect();
        let verdicts = compare_rmatrices(&lambdas, EXACT_TOL).map_err(|e| e.to_string())?;
        let default_kind = RMatrix::default().kind();
        for v in &verdicts {
            ensure(v.identity_holds() == (v.kind == default_kind), || {
                format!("N={n}: {} has {} failures", v.kind.name(), v.failures)
            })?;
        }
    }
    let losing: Vec<_> = candidates
        .iter()
        .filter(|c| c["identity_holds"] == false)
        .map(|c| {
            format!(
                "{} fails {}/100",
                c["kind"].as_str().unwrap_or("?"),
                c["failures"]
            )
        })
        .collect();
    Ok(format!(
        "{} holds identically and is the default; {}",
        holding[0],
        losing.join(", ")
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("segre soundness", segre_soundness),
        ("two-qubit completeness", two_qubit_completeness),
        ("minor count", minor_counts),
        ("conifold identity", conifold_identity),
        ("lambda relation identity", lambda_identity),
        ("SL(2) invariance", sl2_invariance),
        ("quantum-plane oracle", qplane_oracle),
        ("cross-module consistency", cross_module),
        ("fixture goldens", fixture_goldens),
        ("R-matrix report", rmatrix_report),
    ];
    println!("acceptance: exact backend, tolerance {EXACT_TOL}");
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
