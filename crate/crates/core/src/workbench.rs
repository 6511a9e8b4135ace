//! High-level commands over a loaded model, each producing a [`Report`].
//! The CLI and the Python bindings are thin layers over these.

use std::str::FromStr;

use crate::calculus::hessian;
use crate::contact::{
    eta_einstein_fit, eta_einstein_suite, kenmotsu_identity_suite, verify_almost_contact, verify_kenmotsu,
    AlmostContactStructure, EtaEinsteinFit,
};
use crate::deformation::{analyze_deformation, invariance_check, DeformationParams};
use crate::document::LoadedModel;
use crate::error::{Error, Result};
use crate::frame::{frame_identity_suite, validate_frame, FrameVector, Geometry};
use crate::rational::{parse_rational, Rational};
use crate::report::{Quantity, Report};
use crate::soliton::{
    check_classification_by_mu, check_sum_constraint, gradient_soliton_check, soliton_lemma_suite, solve_soliton,
    trace_constant, SolitonProblem, SolitonSolution, SolitonStatus,
};
use crate::validation::{tuples, Check, ValidationReport, Witness};

/// Potential field: the characteristic vector or explicit frame components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PotentialSpec {
    Xi,
    Components(Vec<Rational>),
}

impl FromStr for PotentialSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "xi" {
            return Ok(PotentialSpec::Xi);
        }
        s.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(PotentialSpec::Components)
    }
}

impl PotentialSpec {
    pub fn resolve(&self, acs: &AlmostContactStructure) -> Result<FrameVector> {
        match self {
            PotentialSpec::Xi => Ok(acs.xi().clone()),
            PotentialSpec::Components(xs) if xs.len() == acs.dim() => Ok(FrameVector::from_vec(xs.clone())),
            PotentialSpec::Components(xs) => Err(Error::DimensionMismatch { expected: acs.dim(), found: xs.len() }),
        }
    }
}

struct Prepared {
    geometry: Geometry,
    acs: AlmostContactStructure,
    kenmotsu: bool,
}

fn require_contact(model: &LoadedModel) -> Result<&AlmostContactStructure> {
    model
        .contact
        .as_ref()
        .ok_or_else(|| Error::Malformed { what: "document", detail: format!("{} has no contact block", model.name) })
}

/// Frame validation, then geometry and contact checks when the frame is sound.
fn base_checks(model: &LoadedModel, report: &mut Report, suites: bool) -> Result<Option<(Geometry, Option<bool>)>> {
    let frame = validate_frame(&model.manifold);
    let sound = frame.passed();
    report.extend("frame", frame);
    if !sound {
        return Ok(None);
    }
    let geometry = Geometry::compute(model.manifold.clone())?;
    if suites {
        report.extend("riemannian_identities", frame_identity_suite(&geometry));
    }
    let kenmotsu = match &model.contact {
        None => None,
        Some(acs) => {
            report.extend("almost_contact", verify_almost_contact(&geometry.manifold, acs)?);
            let k = verify_kenmotsu(&geometry.manifold, &geometry.connection, acs);
            let ok = k.passed();
            report.extend("kenmotsu", k);
            if ok && suites {
                report.extend("kenmotsu_identities", kenmotsu_identity_suite(&geometry, acs));
            }
            report.label("kenmotsu", if ok { "yes" } else { "no" });
            Some(ok)
        }
    };
    Ok(Some((geometry, kenmotsu)))
}

fn prepare(model: &LoadedModel, report: &mut Report) -> Result<Option<Prepared>> {
    let acs = require_contact(model)?.clone();
    Ok(base_checks(model, report, false)?.map(|(geometry, k)| Prepared { geometry, acs, kenmotsu: k.unwrap_or(false) }))
}

pub fn validate(model: &LoadedModel) -> Result<Report> {
    let mut report = Report::new("validate", &model.name);
    base_checks(model, &mut report, true)?;
    Ok(report)
}

fn fit_quantities(report: &mut Report, prefix: &str, fit: &EtaEinsteinFit) {
    if let Some(a) = &fit.alpha {
        report.quantity(format!("{prefix}alpha"), Quantity::scalar(a));
    }
    if let Some(b) = &fit.beta {
        report.quantity(format!("{prefix}beta"), Quantity::scalar(b));
    }
    report.label(format!("{prefix}eta_einstein"), if fit.is_eta_einstein { "yes" } else { "no" });
    report.label(format!("{prefix}einstein"), if fit.is_einstein { "yes" } else { "no" });
}

/// Validation plus the computed geometry: metric, connection, Ricci data and
/// the η-Einstein fit.
pub fn analyze(model: &LoadedModel) -> Result<Report> {
    let mut report = Report::new("analyze", &model.name);
    let Some((geo, _)) = base_checks(model, &mut report, true)? else {
        return Ok(report);
    };
    report.quantity("metric", Quantity::matrix(geo.manifold.metric()));
    // row j, column k of connection.e<i> is the e_k component of ∇_{e_i} e_j
    for i in 0..geo.dim() {
        let block = geo.connection.0.index_axis(ndarray::Axis(0), i).to_owned();
        report.quantity(format!("connection.e{}", i + 1), Quantity::matrix(&block));
    }
    report.quantity("ricci", Quantity::matrix(&geo.ricci.0));
    report.quantity("ricci_operator", Quantity::matrix(&geo.ricci_operator.0));
    report.quantity("scalar_curvature", Quantity::scalar(&geo.scalar_curvature));
    if let Some(acs) = &model.contact {
        let fit = eta_einstein_fit(&geo.manifold, &geo.ricci, acs);
        report.extend("eta_einstein", eta_einstein_suite(&geo, acs, &fit));
        fit_quantities(&mut report, "", &fit);
    }
    Ok(report)
}

/// Identities derived for Kenmotsu models are not applicable elsewhere.
fn gate(checks: ValidationReport, kenmotsu: bool) -> ValidationReport {
    if kenmotsu {
        return checks;
    }
    let mut out = ValidationReport::new();
    for c in checks.checks {
        out.push(Check::not_applicable(c.name));
    }
    out
}

fn solution_entries(report: &mut Report, section: &str, sol: &SolitonSolution) {
    report.quantity("lambda", Quantity::scalar(&sol.lambda));
    report.quantity("mu", Quantity::scalar(&sol.mu));
    report.quantity("residual", Quantity::matrix(&sol.residual.0));
    let (status, check) = match &sol.status {
        SolitonStatus::ExactSoliton => ("exact_soliton".to_string(), Check::pass("exact_soliton")),
        SolitonStatus::Inconsistent { witness: [i, j] } => {
            let w = Witness {
                indices: vec![i + 1, j + 1],
                lhs: crate::rational::format_rational(&sol.residual.0[[*i, *j]]),
                rhs: "0".into(),
            };
            ("inconsistent".to_string(), Check::fail("exact_soliton", Some(w)))
        }
        SolitonStatus::Underdetermined { direction } => {
            report.quantity("solution_direction", Quantity::vector(direction.iter()));
            ("underdetermined".to_string(), Check::fail("exact_soliton", None))
        }
    };
    report.label("status", status);
    if let Some(c) = sol.classification {
        report.label("classification", c.to_string());
    }
    report.push(section, check);
}

/// Solves the soliton equation for `(λ, μ)`, or its gradient form with
/// `potential` read as `Df`, and runs the dependent identity checks.
pub fn soliton(model: &LoadedModel, potential: &PotentialSpec, p: &Rational, gradient: bool) -> Result<Report> {
    let mut report = Report::new(if gradient { "soliton --gradient" } else { "soliton" }, &model.name);
    let Some(prep) = prepare(model, &mut report)? else {
        return Ok(report);
    };
    let Prepared { geometry: geo, acs, kenmotsu } = prep;
    let v = potential.resolve(&acs)?;
    let prob = SolitonProblem::new(v.clone(), p.clone());
    report.quantity("p", Quantity::scalar(p));
    report.quantity("potential", Quantity::vector(v.0.iter()));
    report.quantity("trace_constant", Quantity::scalar(&trace_constant(acs.n(), p)));

    let sol = if gradient {
        let hess = hessian(&geo.manifold, &geo.connection, &v)?;
        report.quantity("hessian", Quantity::matrix(&hess.tensor.0));
        let t = &hess.tensor.0;
        report.push(
            "gradient",
            Check::identity("hessian_symmetric", tuples(geo.dim(), 2), |ix| {
                (t[[ix[0], ix[1]]].clone(), t[[ix[1], ix[0]]].clone())
            }),
        );
        if !hess.symmetric {
            return Ok(report);
        }
        let g = gradient_soliton_check(&geo, &acs, &v, p)?;
        solution_entries(&mut report, "soliton", &g.solution);
        report.label("collinear_with_xi", if g.collinear { "yes" } else { "no" });
        report.extend("gradient", gate(g.checks, kenmotsu));
        g.solution
    } else {
        let sol = solve_soliton(&geo, &acs, &prob)?;
        solution_entries(&mut report, "soliton", &sol);
        sol
    };
    report.push("soliton", check_sum_constraint(&sol, &acs, &prob, kenmotsu));
    report.push("soliton", check_classification_by_mu(&sol, &acs, &prob, kenmotsu));
    if !gradient {
        report.extend("soliton_identities", gate(soliton_lemma_suite(&geo, &acs, &prob, &sol)?, kenmotsu));
    }
    Ok(report)
}

/// Deforms the structure, compares the closed forms against recomputation
/// and, given a potential, reports how the soliton equation transforms.
pub fn deform(
    model: &LoadedModel,
    params: &DeformationParams,
    soliton: Option<(&PotentialSpec, &Rational)>,
) -> Result<Report> {
    let mut report = Report::new("deform", &model.name);
    let Some(Prepared { geometry: geo, acs, kenmotsu }) = prepare(model, &mut report)? else {
        return Ok(report);
    };
    report.quantity("a", Quantity::scalar(params.a()));
    report.quantity("b", Quantity::scalar(params.b()));
    let an = analyze_deformation(&geo, &acs, params)?;
    report.extend("deformation", an.checks);
    report.quantity("deformed.metric", Quantity::matrix(an.deformed.manifold.metric()));
    report.quantity("deformed.xi", Quantity::vector(an.deformed.acs.xi().0.iter()));
    report.quantity("deformed.eta", Quantity::vector(an.deformed.acs.eta().iter()));
    report.quantity("deformed.ricci", Quantity::matrix(&an.geometry.ricci.0));
    report.quantity("deformed.ricci_formula", Quantity::matrix(&an.ricci_formula.0));
    report.quantity("deformed.scalar_curvature", Quantity::scalar(&an.geometry.scalar_curvature));
    for i in 0..geo.dim() {
        let block = an.geometry.connection.0.index_axis(ndarray::Axis(0), i).to_owned();
        report.quantity(format!("deformed.connection.e{}", i + 1), Quantity::matrix(&block));
    }
    let Some((potential, p)) = soliton else {
        return Ok(report);
    };
    let v = potential.resolve(&acs)?;
    let prob = SolitonProblem::new(v, p.clone());
    let sol = solve_soliton(&geo, &acs, &prob)?;
    report.quantity("p", Quantity::scalar(p));
    solution_entries(&mut report, "soliton", &sol);
    if !sol.is_exact() || !kenmotsu {
        return Ok(report);
    }
    let inv = invariance_check(&geo, &acs, &prob, &sol, params)?;
    report.extend("invariance", inv.checks);
    report.quantity("defect", Quantity::matrix(&inv.defect.0));
    report.quantity("defect.reference_closed_form", Quantity::matrix(&inv.reference_closed_form.0));
    report.quantity("defect.general_closed_form", Quantity::matrix(&inv.general_closed_form.0));
    report.label("invariant", if inv.invariant { "yes" } else { "no" });
    fit_quantities(&mut report, "", &inv.fit);
    fit_quantities(&mut report, "deformed.", &inv.deformed_fit);
    Ok(report)
}
