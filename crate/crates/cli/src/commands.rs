use std::fmt::Write as _;

use segre_geom::conifold::{amplitude_matrix, deformation, ConifoldPoint};
use segre_geom::json::{point_from_json, real_to_json, scalar_to_json, StateDocument};
use segre_geom::ncg::{
    compare_rmatrices, det_scaling_check, epsilon_contract, lambda_relation_check,
    lambda_relation_check_unscaled, phi_tensor, rmatrix_relation_check, sl2_invariance_check,
    RelationResidual,
};
use segre_geom::qplane::{self, parse_expression, Laurent, QPolynomial, Word};
use segre_geom::random::ExactSampler;
use segre_geom::scalar::{approx_zero, int, modulus_f64};
use segre_geom::segre::{self, Separability};
use segre_geom::{
    fixtures, BigRational, Lambda, Mat2, RMatrix, RMatrixKind, Real, RowPair, Scalar,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{BackendArg, Failure, Report, Settings, EXIT_OK, EXIT_RELATION};

/// Width cap for the random matrices of the R-matrix comparison.
pub const COMPARISON_MAX_WIDTH: usize = 8;

macro_rules! dispatch {
    ($settings:expr, $f:ident($($arg:expr),*)) => {
        match $settings.backend {
            BackendArg::Exact => $f::<BigRational>($($arg),*),
            BackendArg::Float => $f::<f64>($($arg),*),
        }
    };
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn negligible<R: Real>(x: &Scalar<R>, tol: f64) -> bool {
    approx_zero(x, tol).expect("tolerance validated")
}

#[derive(Serialize)]
struct WitnessJson {
    s: usize,
    i: usize,
    j: usize,
    omega: Value,
}

#[derive(Serialize)]
struct SeparabilityJson {
    verdict: &'static str,
    witness: Option<WitnessJson>,
    max_abs_minor: f64,
}

pub fn check_separability(doc: &StateDocument, settings: Settings) -> Result<Report, Failure> {
    dispatch!(settings, check_separability_in(doc, settings.tol))
}

fn check_separability_in<R: Real>(doc: &StateDocument, tol: f64) -> Result<Report, Failure> {
    let state = doc.to_state::<R>()?;
    let report = segre::check_separability(&state, tol)?;
    let (verdict, witness) = match report.verdict {
        Separability::Separable => ("separable", None),
        Separability::Entangled(w) => (
            "entangled",
            Some(WitnessJson {
                s: w.s,
                i: w.i,
                j: w.j,
                omega: scalar_to_json(&w.omega),
            }),
        ),
    };
    Ok(Report::ok(to_value(&SeparabilityJson {
        verdict,
        witness,
        max_abs_minor: report.max_abs_minor,
    })))
}

#[derive(Serialize)]
struct MinorJson {
    i: usize,
    j: usize,
    omega: Value,
}

#[derive(Serialize)]
struct FlatteningJson {
    s: usize,
    minors: Vec<MinorJson>,
}

#[derive(Serialize)]
struct MinorsJson {
    m: usize,
    flattenings: Vec<FlatteningJson>,
}

pub fn minors(doc: &StateDocument, settings: Settings) -> Result<Report, Failure> {
    dispatch!(settings, minors_in(doc))
}

fn minors_in<R: Real>(doc: &StateDocument) -> Result<Report, Failure> {
    let state = doc.to_state::<R>()?;
    let flattenings = segre::flattening_minors(&state)?
        .into_iter()
        .map(|f| FlatteningJson {
            s: f.s,
            minors: f
                .minors
                .iter()
                .map(|mi| MinorJson {
                    i: mi.i,
                    j: mi.j,
                    omega: scalar_to_json(&mi.omega),
                })
                .collect(),
        })
        .collect();
    Ok(Report::ok(to_value(&MinorsJson {
        m: state.num_qubits(),
        flattenings,
    })))
}

#[derive(Serialize)]
struct RealSplitJson {
    u: Vec<Value>,
    v: Vec<Value>,
    f1: Value,
    f2: Value,
}

#[derive(Serialize)]
struct ConifoldResidualsJson {
    identity: Value,
    f1: Value,
    f2: Value,
    round_trip: bool,
}

#[derive(Serialize)]
struct ConifoldJson {
    z: Vec<Value>,
    matrix: [[Value; 2]; 2],
    det: Value,
    sum_of_squares: Value,
    on_conifold: bool,
    real_split: RealSplitJson,
    residuals: ConifoldResidualsJson,
}

pub fn conifold_map(value: &Value, settings: Settings) -> Result<Report, Failure> {
    dispatch!(settings, conifold_map_in(value, settings.tol))
}

fn conifold_map_in<R: Real>(value: &Value, tol: f64) -> Result<Report, Failure> {
    let point = ConifoldPoint::<R>::new(point_from_json(value)?);
    let mat = point.to_segre_coords();
    let det = mat.det();
    let sum = point.residual();
    let split = point.real_split();
    let identity = det.clone() - sum.clone();
    let f1 = split.f1.clone() - sum.re.clone();
    let f2 = split.f2.clone() + split.f2.clone() - sum.im.clone();
    let back = ConifoldPoint::from_segre_coords(&mat);
    let round_trip = back
        .z
        .iter()
        .zip(&point.z)
        .all(|(a, b)| negligible(&(a.clone() - b.clone()), tol));
    let real = |x: &R| negligible(&Scalar::new(x.clone(), R::zero()), tol);
    let pass = negligible(&identity, tol) && real(&f1) && real(&f2) && round_trip;
    let entry = |r: usize, c: usize| scalar_to_json(&mat.0[r][c]);
    let out = ConifoldJson {
        z: point.z.iter().map(scalar_to_json).collect(),
        matrix: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]],
        det: scalar_to_json(&det),
        sum_of_squares: scalar_to_json(&sum),
        on_conifold: negligible(&sum, tol),
        real_split: RealSplitJson {
            u: split.u.iter().map(real_to_json).collect(),
            v: split.v.iter().map(real_to_json).collect(),
            f1: real_to_json(&split.f1),
            f2: real_to_json(&split.f2),
        },
        residuals: ConifoldResidualsJson {
            identity: scalar_to_json(&identity),
            f1: real_to_json(&f1),
            f2: real_to_json(&f2),
            round_trip,
        },
    };
    let mut report = Report::ok(to_value(&out));
    if !pass {
        report.code = EXIT_RELATION;
        report.diagnostics = "conifold identity residuals are nonzero\n".into();
    }
    Ok(report)
}

/// Largest residual and whether every entry was negligible.
struct Tally {
    max: f64,
    ok: bool,
}

impl Tally {
    fn new() -> Self {
        Self { max: 0.0, ok: true }
    }

    fn push<R: Real>(&mut self, x: &Scalar<R>, tol: f64) {
        self.max = self.max.max(modulus_f64(x));
        self.ok &= negligible(x, tol);
    }

    fn push_residual<R: Real>(&mut self, r: &RelationResidual<R>, tol: f64) {
        self.max = self.max.max(r.max_abs());
        self.ok &= r.holds(tol);
    }

    fn push_deviation(&mut self, d: f64, tol: f64) {
        self.max = self.max.max(d);
        self.ok &= d <= tol;
    }
}

#[derive(Serialize)]
struct RelationRow {
    relation: &'static str,
    pass: bool,
    max_residual: Option<f64>,
    informational: bool,
}

impl RelationRow {
    fn from_tally(relation: &'static str, t: &Tally) -> Self {
        Self {
            relation,
            pass: t.ok,
            max_residual: Some(t.max),
            informational: false,
        }
    }
}

#[derive(Serialize)]
struct CandidateJson {
    kind: &'static str,
    identity_holds: bool,
    failures: usize,
    max_residual: f64,
}

#[derive(Serialize)]
struct ComparisonJson {
    samples: usize,
    seed: u64,
    width: usize,
    default: &'static str,
    candidates: Vec<CandidateJson>,
}

#[derive(Serialize)]
struct RelationsJson {
    m: usize,
    backend: &'static str,
    tol: f64,
    rmatrix: &'static str,
    all_pass: bool,
    relations: Vec<RelationRow>,
    rmatrix_comparison: ComparisonJson,
}

fn fixed_matrices<R: Real>() -> (Vec<Mat2<R>>, Vec<Mat2<R>>) {
    let unimodular = vec![
        Mat2::new(int(2, 0), int(1, 0), int(3, 0), int(2, 0)),
        Mat2::new(int(1, 0), int(0, 1), int(0, 0), int(1, 0)),
    ];
    let general = vec![
        Mat2::new(int(2, 0), int(1, 0), int(1, 0), int(3, 0)),
        Mat2::new(int(1, 0), int(0, 1), int(0, 1), int(1, 0)),
    ];
    (unimodular, general)
}

pub fn verify_relations(
    doc: &StateDocument,
    settings: Settings,
    kind: RMatrixKind,
    samples: usize,
    seed: u64,
) -> Result<Report, Failure> {
    dispatch!(
        settings,
        verify_relations_in(doc, settings, kind, samples, seed)
    )
}

fn verify_relations_in<R: Real>(
    doc: &StateDocument,
    settings: Settings,
    kind: RMatrixKind,
    samples: usize,
    seed: u64,
) -> Result<Report, Failure> {
    let tol = settings.tol;
    let state = doc.to_state::<R>()?;
    let m = state.num_qubits();
    if m < 2 {
        return Err(segre_geom::Error::TooFewQubits(m).into());
    }
    if state.is_zero() {
        return Err(segre_geom::Error::ZeroState.into());
    }
    let rmatrix = RMatrix::new(kind);
    let mut symmetric = Tally::new();
    let mut contraction = Tally::new();
    let mut antisymmetry = Tally::new();
    let mut lambda_rel = Tally::new();
    let mut unscaled = Tally::new();
    let mut braided = Tally::new();
    let mut all_phi_zero = true;
    for s in 1..=m {
        let f = segre::flatten(&state, s)?;
        let pair = RowPair::from(f.clone());
        let n = pair.width();
        for i in 1..=n {
            for j in i + 1..=n {
                let c = epsilon_contract(&pair, i, j)?;
                symmetric.push(&c.mu_mu, tol);
                symmetric.push(&c.nu_nu, tol);
                contraction.push(&(c.mu_nu - f.minor(i, j)?), tol);
            }
        }
        let phi = phi_tensor(&pair);
        for i in 1..=n {
            for j in 1..=n {
                antisymmetry.push(&(phi.get(i, j).clone() + phi.get(j, i).clone()), tol);
            }
        }
        all_phi_zero &= phi.is_zero(tol);
        let lambda = Lambda::from(pair);
        lambda_rel.push_residual(&lambda_relation_check(&lambda), tol);
        unscaled.push_residual(&lambda_relation_check_unscaled(&lambda), tol);
        braided.push_residual(&rmatrix_relation_check(&lambda, &rmatrix), tol);
    }
    let separable = segre::is_separable(&state, tol)?.is_separable();

    let (unimodular, general) = fixed_matrices::<R>();
    let mut sl2 = Tally::new();
    for g in &unimodular {
        sl2.push_deviation(sl2_invariance_check(&state, g, tol)?, tol);
    }
    let mut scaling = Tally::new();
    for g in &general {
        scaling.push_deviation(det_scaling_check(&state, g)?, tol);
    }

    let mut rows = vec![
        RelationRow::from_tally("epsilon_symmetric_vanishes", &symmetric),
        RelationRow::from_tally("epsilon_contraction_is_minor", &contraction),
        RelationRow::from_tally("phi_antisymmetric", &antisymmetry),
        RelationRow {
            relation: "phi_zero_iff_separable",
            pass: all_phi_zero == separable,
            max_residual: None,
            informational: false,
        },
        RelationRow::from_tally("lambda_relation", &lambda_rel),
        RelationRow {
            informational: true,
            ..RelationRow::from_tally("lambda_relation_unscaled", &unscaled)
        },
        RelationRow::from_tally("rmatrix_relation", &braided),
        RelationRow::from_tally("sl2_invariance", &sl2),
        RelationRow::from_tally("det_scaling", &scaling),
    ];
    if m == 2 {
        let omega = deformation(&state)?;
        let mut deform = Tally::new();
        deform.push(&(omega - segre::flatten(&state, 1)?.minor(1, 2)?), tol);
        let a = amplitude_matrix(&state)?;
        let point = ConifoldPoint::from_segre_coords(&a);
        let mut identity = Tally::new();
        identity.push(&(a.det() - point.residual()), tol);
        let back = point.to_segre_coords();
        for r in 0..2 {
            for c in 0..2 {
                identity.push(&(back.0[r][c].clone() - a.0[r][c].clone()), tol);
            }
        }
        rows.push(RelationRow::from_tally(
            "conifold_deformation_is_minor",
            &deform,
        ));
        rows.push(RelationRow::from_tally("conifold_identity", &identity));
    }
    let all_pass = rows.iter().all(|r| r.pass || r.informational);

    let width = (1usize << (m - 1)).min(COMPARISON_MAX_WIDTH);
    let mut sampler = ExactSampler::new(seed);
    let lambdas: Vec<_> = (0..samples).map(|_| sampler.lambda(width)).collect();
    let candidates = compare_rmatrices(&lambdas, 0.0)?
        .into_iter()
        .map(|v| CandidateJson {
            kind: v.kind.name(),
            identity_holds: v.identity_holds(),
            failures: v.failures,
            max_residual: v.max_residual,
        })
        .collect();

    let mut table = String::new();
    for r in &rows {
        let status = match (r.pass, r.informational) {
            (_, true) => "info",
            (true, false) => "pass",
            (false, false) => "FAIL",
        };
        let residual = r
            .max_residual
            .map_or("-".to_string(), |x| format!("{x:.3e}"));
        let _ = writeln!(table, "{status:<5} {:<30} {residual}", r.relation);
    }

    let out = RelationsJson {
        m,
        backend: R::BACKEND.name(),
        tol,
        rmatrix: kind.name(),
        all_pass,
        relations: rows,
        rmatrix_comparison: ComparisonJson {
            samples,
            seed,
            width,
            default: RMatrix::default().kind().name(),
            candidates,
        },
    };
    Ok(Report {
        json: to_value(&out),
        code: if all_pass { EXIT_OK } else { EXIT_RELATION },
        diagnostics: table,
    })
}

fn parse_q(src: &str) -> Result<Scalar<BigRational>, Failure> {
    let p = parse_expression::<BigRational>(src)?;
    let not_number = || Failure::input(format!("--q {src:?} must be a number without u, v or q"));
    let c = p.as_coefficient().ok_or_else(not_number)?;
    if c.is_zero() {
        return Ok(int(0, 0));
    }
    match c.as_monomial() {
        Some((s, 0)) => Ok(s.clone()),
        _ => Err(not_number()),
    }
}

pub fn qplane_normalize(expr: &str, q: Option<&str>) -> Result<Report, Failure> {
    let p = parse_expression::<BigRational>(expr)?;
    let nf = qplane::normalize(&p);
    let mut out = json!({
        "input": expr,
        "normal_form": nf.to_string(),
    });
    if let Some(src) = q {
        let qv = parse_q(src)?;
        let terms = qplane::normalize_specialized(&p, &qv)?;
        let commutative = terms
            .into_iter()
            .fold(QPolynomial::zero(), |acc, ((a, b), c)| {
                acc.add(&QPolynomial::term(
                    Laurent::constant(c),
                    Word::ordered(a, b),
                ))
            });
        out["q"] = scalar_to_json(&qv);
        out["specialized"] = Value::String(qplane::normalize(&commutative).to_string());
    }
    Ok(Report::ok(out))
}

#[derive(Serialize)]
struct FixtureJson {
    name: &'static str,
    file: &'static str,
    m: usize,
    label: Option<String>,
}

pub fn fixtures_list() -> Result<Report, Failure> {
    let list = fixtures::FIXTURES
        .iter()
        .map(|f| {
            let doc = f.document()?;
            Ok(FixtureJson {
                name: f.name,
                file: f.file,
                m: doc.m,
                label: doc.label,
            })
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(Report::ok(to_value(&list)))
}
