use miura_core::critical::{bethe_residuals, fertility_direction, is_fertile, is_generic, wronskian_target, PolyTuple};
use miura_core::exactalg::{log_derivative, rat, RatFunc};
use miura_core::liedata::{weyl_length, Family};
use miura_core::miura::{deform, miura_from_tuple, reduced_wronskian_check_exact};
use miura_core::population::{descend as descend_tuple, explore, reproduce_path, Projective, ReproductionPath};
use miura_core::solutions::{
    apply_miura, d0_check, default_rep, rep_standard_sl, rep_standard_sp, solution_a, solution_bc,
    solution_general_path, BcSign, MatrixRep, TwistedMatrix,
};

use crate::problem::{coefficient_strings, parse_indices, parse_projective, Problem};
use crate::report::{
    matrix_entries, tuple_strings, Body, CellRow, CheckBody, D0Summary, DescendBody, DirectionReport,
    ExceptionalRow, PopulateBody, SolveBody, StepReport, VerifyBody,
};
use crate::{Failure, RepChoice};

type Outcome = Result<(Body, bool), Failure>;

pub fn check(problem: &Problem) -> Outcome {
    let (y, p) = (&problem.tuple, &problem.data);
    let genericity = is_generic(y, p);
    let directions = (0..p.rank())
        .map(|i| {
            let canonical = fertility_direction(y, i, p)?;
            Ok(DirectionReport {
                direction: i + 1,
                fertile: canonical.is_some(),
                canonical: canonical.as_ref().map(coefficient_strings),
                wronskian_target: coefficient_strings(&wronskian_target(y, i, p)?),
            })
        })
        .collect::<Result<Vec<_>, miura_core::Error>>()?;
    let fertile = directions.iter().all(|d| d.fertile);
    let (bethe, critical) = match &problem.coordinates {
        Some(t) => {
            let residuals = bethe_residuals(t, p)?;
            let critical = residuals.iter().all(|r| *r == rat(0));
            (Some(residuals.iter().map(ToString::to_string).collect()), Some(critical))
        }
        None => (None, None),
    };
    let body = CheckBody {
        generic: genericity.is_generic(),
        genericity: genericity.to_string(),
        fertile,
        directions,
        bethe_residuals: bethe,
        critical,
    };
    Ok((Body::Check(body), fertile))
}

pub fn descend(problem: &Problem, direction: usize, param: Option<&str>) -> Outcome {
    let (y, p) = (&problem.tuple, &problem.data);
    let i = parse_indices(&direction.to_string(), p.rank(), "--direction")?[0];
    let c = match param {
        Some(s) => parse_projective(s, "--param")?,
        None => Projective::canonical(),
    };
    let next = descend_tuple(y, i, &c, p)?;
    let generic = is_generic(&next, p).is_generic();
    let fertile = generic && is_fertile(&next, p);
    let body = DescendBody {
        direction,
        parameter: c.to_string(),
        tuple: tuple_strings(&next),
        degrees: next.degrees(),
        generic,
        fertile,
    };
    Ok((Body::Descend(body), true))
}

pub fn populate(problem: &Problem, max_cells: Option<usize>) -> Outcome {
    let p = &problem.data;
    let summary = explore(&problem.tuple, p)?;
    let cells = summary
        .cells
        .iter()
        .map(|(degrees, cell)| {
            Ok(CellRow {
                degrees: degrees.clone(),
                word: cell.word.one_based(),
                length: weyl_length(&cell.word, &p.cartan)?,
                sample: tuple_strings(&cell.sample),
            })
        })
        .collect::<Result<Vec<_>, miura_core::Error>>()?;
    let exceptional = summary
        .exceptional
        .iter()
        .map(|e| ExceptionalRow {
            from: e.from.clone(),
            direction: e.direction + 1,
            parameter: e.used.to_string(),
        })
        .collect();
    let within = max_cells.is_none_or(|m| cells.len() <= m);
    let body = PopulateBody {
        cells,
        base: summary.base,
        exceptional,
        descents: summary.descents,
    };
    Ok((Body::Populate(body), within))
}

fn requested_path(problem: &Problem, path: Option<&str>, param: Option<&str>) -> Result<ReproductionPath, Failure> {
    let rank = problem.data.rank();
    let indices = match path {
        Some(s) => parse_indices(s, rank, "--path")?,
        None => problem.path.clone().unwrap_or_default(),
    };
    let parameters = match (param, &problem.parameters) {
        (Some(s), _) => s
            .split(',')
            .enumerate()
            .map(|(k, c)| parse_projective(c, &format!("--param[{k}]")))
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(ps)) if path.is_none() => ps.clone(),
        _ => vec![Projective::canonical(); indices.len()],
    };
    if parameters.len() != indices.len() {
        return Err(Failure::Input(format!(
            "{} path steps but {} parameters",
            indices.len(),
            parameters.len()
        )));
    }
    Ok(reproduce_path(&problem.tuple, &indices, &parameters, &problem.data)?)
}

fn choose_rep(problem: &Problem, choice: RepChoice) -> Result<MatrixRep, Failure> {
    let r = problem.data.rank();
    Ok(match choice {
        RepChoice::Auto => default_rep(&problem.data)?,
        RepChoice::Sl => rep_standard_sl(r + 1)?,
        RepChoice::Sp => rep_standard_sp(r)?,
    })
}

fn solve_body(builder: &str, rep: &MatrixRep, bc_sign: Option<BcSign>, m: &TwistedMatrix) -> SolveBody {
    SolveBody {
        builder: builder.to_string(),
        representation: rep.cartan.label(),
        bc_sign: bc_sign.map(|s| format!("{s:?}").to_lowercase()),
        rows: m.rows(),
        cols: m.cols(),
        entries: matrix_entries(m),
        exponents_in_lattice: m.exponents_in_lattice(),
        verification: "DY=0: exact".to_string(),
    }
}

pub fn solve(problem: &Problem, path: Option<&str>, param: Option<&str>, choice: RepChoice) -> Outcome {
    let (y, p) = (&problem.tuple, &problem.data);
    let general = path.is_some() || problem.path.is_some();
    let explicit = matches!(
        (p.cartan.family, choice),
        (Family::A, RepChoice::Auto | RepChoice::Sl) | (Family::B, RepChoice::Auto | RepChoice::Sp)
    );
    if !general && !explicit {
        return Err(Failure::Input(format!(
            "no explicit builder for {} with representation {}; pass --path to use the general construction",
            p.cartan.label(),
            choice.name()
        )));
    }
    let rep = choose_rep(problem, choice)?;
    let (builder, sign, m) = if general {
        let path = requested_path(problem, path, param)?;
        ("general", None, solution_general_path(&path, &rep, p)?)
    } else if p.cartan.family == Family::A {
        ("sl", None, solution_a(y, p)?)
    } else {
        let s = solution_bc(y, p)?;
        ("bc", Some(s.sign), s.matrix)
    };
    let residual = apply_miura(&miura_from_tuple(y, p)?, &rep, &m)?;
    if let Some((i, j, f)) = residual.first_nonzero() {
        return Err(Failure::Computation(format!("DY has nonzero entry ({}, {}): {f}", i + 1, j + 1)));
    }
    Ok((Body::Solve(solve_body(builder, &rep, sign, &m)), true))
}

/// Directions whose canonical gauge transformation disagrees with the oper of
/// the canonical descendant; 1-based.
fn gauge_failures(y: &PolyTuple, problem: &Problem) -> Result<(usize, Vec<usize>), Failure> {
    let p = &problem.data;
    let d = miura_from_tuple(y, p)?;
    let (mut checked, mut failures) = (0, Vec::new());
    for i in 0..p.rank() {
        let Some(tilde) = fertility_direction(y, i, p)? else {
            failures.push(i + 1);
            continue;
        };
        checked += 1;
        let g = log_derivative(&RatFunc::new(tilde, y.get(i).clone())?)?;
        let agrees = descend_tuple(y, i, &Projective::canonical(), p)
            .and_then(|next| miura_from_tuple(&next, p))
            .and_then(|expected| Ok(deform(&d, i, &g)?.h_coords == expected.h_coords))
            .unwrap_or(false);
        if !agrees {
            failures.push(i + 1);
        }
    }
    Ok((checked, failures))
}

pub fn verify(problem: &Problem, path: Option<&str>, param: Option<&str>) -> Outcome {
    let (y, p) = (&problem.tuple, &problem.data);
    let reproduction = requested_path(problem, path, param)?;
    let generation = reproduction.verify(p).is_ok();
    let reduced = reduced_wronskian_check_exact(&reproduction, p);
    let d0 = match default_rep(p) {
        Ok(rep) => {
            let r = d0_check(y, &rep, p)?;
            Some(D0Summary {
                conjugation: r.conjugation,
                exponents_cancel: r.exponents_cancel,
                diagonal_agrees: r.diagonal_agrees,
            })
        }
        Err(_) => None,
    };
    let (gauge_squares, gauge_failures) = gauge_failures(y, problem)?;
    let passed = generation
        && reduced.passed
        && d0
            .as_ref()
            .is_none_or(|r| r.conjugation && r.exponents_cancel && r.diagonal_agrees)
        && gauge_failures.is_empty();
    let body = VerifyBody {
        path: reproduction.indices.iter().map(|i| i + 1).collect(),
        parameters: reproduction.parameters.iter().map(ToString::to_string).collect(),
        generation_relations: generation,
        reduced_relations: StepReport {
            passed: reduced.passed,
            failing_step: reduced.failing_step,
        },
        d0,
        gauge_squares,
        gauge_failures,
        passed,
    };
    Ok((Body::Verify(body), passed))
}
