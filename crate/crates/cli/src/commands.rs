use std::f64::consts::TAU;
use std::path::Path;

use disc_ergodics::dynamics::{classify_report, ClassReport, ClassifyConfig};
use disc_ergodics::ergodicity::{
    cesaro_apply, orbit_density, verdict as decide, weyl_test, Decision, ErgodicityVerdict, Space, TestFunction,
    VerdictBudgets, WeightModel,
};
use disc_ergodics::weighted::{
    counterexample_pair, lacunary_exponents, make_weight_v_alpha, weighted_sup_norm, Angle, CounterexampleReport,
    LacunarySequence, Weight,
};
use disc_ergodics::{gallery, Complex, Symbol, SymbolClass};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{complex, emit, float, io_error, report, Csv};
use crate::{
    CesaroArgs, ClassifyArgs, CliError, CounterexampleArgs, DensityArgs, Format, GalleryArgs, Status, VerdictArgs,
    WeightArg, WeylArgs,
};

/// Grid used for weighted sup-norms in counterexample reports.
const SUP_RADII: usize = 64;
const SUP_ANGLES: usize = 512;

fn load_symbol(spec: &str) -> Result<Symbol, CliError> {
    if let Some(name) = spec.strip_prefix("gallery:") {
        return Ok(gallery::get(name)?);
    }
    let path = Path::new(spec);
    let doc = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(Symbol::parse(&doc)?)
}

fn parse_complex(s: &str) -> Result<Complex, CliError> {
    let bad = || CliError::Usage(format!("cannot parse complex number {s:?} (expected RE or RE,IM)"));
    let mut parts = s.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => p.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

fn parse_angle(s: &str) -> Result<Angle, CliError> {
    let bad = || CliError::Usage(format!("cannot parse angle {s:?}"));
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let unsigned = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    match s.split_once(':') {
        None if s == "golden" => Ok(Angle::golden()),
        None if s == "sqrt2" => Ok(Angle::sqrt2_minus_1()),
        Some(("turns", v)) => Ok(Angle::Turns {
            value: v.trim().parse().map_err(|_| bad())?,
        }),
        Some(("rational", v)) => {
            let (p, q) = v.split_once('/').ok_or_else(bad)?;
            Ok(Angle::Rational {
                num: num(p)?,
                den: unsigned(q)?,
            })
        }
        Some(("quadratic", v)) => {
            let parts: Vec<&str> = v.split(',').collect();
            let [p, d, q] = parts[..] else { return Err(bad()) };
            Ok(Angle::Quadratic {
                p: num(p)?,
                d: unsigned(d)?,
                q: num(q)?,
            })
        }
        _ => Err(bad()),
    }
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol <= 1e-2 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--tol must lie in (0, 1e-2], got {tol}")))
    }
}

fn check_budget(name: &str, n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Usage(format!("{name} must be positive")));
    }
    Ok(())
}

fn decision(d: Decision) -> &'static str {
    match d {
        Decision::Yes => "yes",
        Decision::No => "no",
        Decision::Unknown => "unknown",
    }
}

/// Point, scalar and period columns of a classification.
fn class_columns(class: &SymbolClass) -> (Option<Complex>, Option<f64>, String) {
    match *class {
        SymbolClass::Identity => (None, None, String::new()),
        SymbolClass::EllipticAutomorphism {
            fixed_point,
            multiplier,
            period,
        } => {
            let period = serde_json::to_value(period).map(|v| v.to_string().replace('"', ""));
            (
                Some(fixed_point),
                Some(multiplier.arg() / TAU),
                period.unwrap_or_default(),
            )
        }
        SymbolClass::InteriorDw { z0, multiplier_modulus } => (Some(z0), Some(multiplier_modulus), String::new()),
        SymbolClass::HyperbolicDw { z0, angular_derivative } | SymbolClass::ParabolicDw { z0, angular_derivative } => {
            (Some(z0), Some(angular_derivative), String::new())
        }
    }
}

fn classify_csv(reports: &[(&str, &ClassReport)]) -> Result<Vec<u8>, CliError> {
    let mut csv = Csv::new(&[
        "symbol", "kind", "class", "point_re", "point_im", "scalar", "period", "residual", "warnings",
    ])?;
    for (name, r) in reports {
        let (point, scalar, period) = class_columns(&r.class);
        let [re, im] = point.map(complex).unwrap_or_default();
        csv.row([
            name.to_string(),
            r.kind.clone(),
            r.class.name().to_string(),
            re,
            im,
            scalar.map(float).unwrap_or_default(),
            period,
            float(r.residual),
            r.warnings.join("; "),
        ])?;
    }
    csv.finish()
}

pub fn classify(args: ClassifyArgs) -> Result<Status, CliError> {
    check_tol(args.tol)?;
    let s = load_symbol(&args.symbol.symbol)?;
    let cfg = ClassifyConfig {
        tol_par: args.tol,
        ..ClassifyConfig::default()
    };
    let r = classify_report(&s, &cfg)?;
    let format = args.output.format.unwrap_or(Format::Report);
    let bytes = match format {
        Format::Report => report(&r)?,
        Format::Csv => classify_csv(&[(args.symbol.symbol.as_str(), &r)])?,
    };
    emit(&args.output, "classify", format, &bytes)?;
    Ok(Status::Done)
}

fn verdicts_csv(rows: &[(&str, &ErgodicityVerdict)]) -> Result<Vec<u8>, CliError> {
    let mut csv = Csv::new(&[
        "symbol",
        "space",
        "mean_ergodic",
        "uniformly_mean_ergodic",
        "theorem_tag",
        "explanation",
    ])?;
    for (name, v) in rows {
        csv.row([
            name,
            v.space.name(),
            decision(v.mean_ergodic),
            decision(v.uniformly_mean_ergodic),
            v.theorem_tag.as_deref().unwrap_or(""),
            v.explanation.as_deref().unwrap_or(""),
        ])?;
    }
    csv.finish()
}

fn budgets(n: usize, tol: f64, weight: WeightArg) -> VerdictBudgets {
    let defaults = VerdictBudgets::default();
    VerdictBudgets {
        density_n: n,
        classify: ClassifyConfig {
            tol_par: tol,
            ..defaults.classify
        },
        weight: match weight {
            WeightArg::Typical => WeightModel::Typical,
            WeightArg::VAlpha => WeightModel::VAlpha,
        },
        ..defaults
    }
}

pub fn verdict(args: VerdictArgs) -> Result<Status, CliError> {
    check_tol(args.tol)?;
    check_budget("--N", args.n)?;
    let spaces: Vec<Space> = if args.space.is_empty() {
        Space::ALL.to_vec()
    } else {
        args.space.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let s = load_symbol(&args.symbol.symbol)?;
    let b = budgets(args.n, args.tol, args.weight);
    let verdicts: Vec<ErgodicityVerdict> = spaces.iter().map(|&sp| decide(&s, sp, &b)).collect();
    let format = args.output.format.unwrap_or(Format::Report);
    let bytes = match format {
        Format::Report => report(&verdicts)?,
        Format::Csv => {
            let name = args.symbol.symbol.as_str();
            verdicts_csv(&verdicts.iter().map(|v| (name, v)).collect::<Vec<_>>())?
        }
    };
    emit(&args.output, "verdict", format, &bytes)?;
    Ok(if verdicts.iter().all(ErgodicityVerdict::is_decided) {
        Status::Done
    } else {
        Status::Undecided
    })
}

pub fn cesaro(args: CesaroArgs) -> Result<Status, CliError> {
    check_budget("--N", args.n)?;
    let s = load_symbol(&args.symbol.symbol)?;
    let f: TestFunction = args.f.parse()?;
    let z = parse_complex(&args.z)?;
    let trace = cesaro_apply(&s, &f, z, args.n)?;
    let format = args.output.format.unwrap_or(Format::Csv);
    let bytes = match format {
        Format::Report => report(&trace)?,
        Format::Csv => {
            let mut csv = Csv::new(&["n", "orbit_re", "orbit_im", "mean_re", "mean_im"])?;
            for (i, (w, m)) in trace.orbit.iter().zip(&trace.partial_means).enumerate() {
                let [wr, wi] = complex(*w);
                let [mr, mi] = complex(*m);
                csv.row([(i + 1).to_string(), wr, wi, mr, mi])?;
            }
            csv.finish()?
        }
    };
    emit(&args.output, "cesaro", format, &bytes)?;
    Ok(Status::Done)
}

pub fn density(args: DensityArgs) -> Result<Status, CliError> {
    check_budget("--N", args.n)?;
    check_budget("--seeds", args.seeds)?;
    let s = load_symbol(&args.symbol.symbol)?;
    let z0 = match &args.z0 {
        Some(z0) => parse_complex(z0)?,
        None => classify_report(&s, &ClassifyConfig::default())?
            .class
            .dw_point()
            .ok_or_else(|| CliError::Usage("symbol has no Denjoy-Wolff point; pass --z0".into()))?,
    };
    let radii = if args.radius.is_empty() {
        VerdictBudgets::default().density_radii
    } else {
        args.radius.clone()
    };
    let jobs: Vec<(usize, Complex, f64)> = (0..args.seeds)
        .flat_map(|k| {
            let z = Complex::from_polar(1.0, TAU * (k as f64 + 0.5) / args.seeds as f64);
            radii.iter().map(move |&r| (k, z, r))
        })
        .collect();
    let estimates = jobs
        .par_iter()
        .map(|&(k, z, r)| orbit_density(&s, z, z0, r, args.n).map(|d| (k, d)))
        .collect::<Result<Vec<_>, _>>()?;
    let format = args.output.format.unwrap_or(Format::Csv);
    let bytes = match format {
        Format::Report => report(&estimates.iter().map(|(_, d)| d).collect::<Vec<_>>())?,
        Format::Csv => {
            let mut csv = Csv::new(&[
                "seed",
                "z_re",
                "z_im",
                "z0_re",
                "z0_im",
                "radius",
                "n",
                "hits",
                "running_min_ratio",
                "estimate",
            ])?;
            for (k, d) in &estimates {
                let [zr, zi] = complex(d.z);
                let [z0r, z0i] = complex(d.z0);
                csv.row([
                    k.to_string(),
                    zr,
                    zi,
                    z0r,
                    z0i,
                    float(d.neighborhood_radius),
                    d.n.to_string(),
                    d.hits.to_string(),
                    float(d.running_min_ratio),
                    float(d.estimate),
                ])?;
            }
            csv.finish()?
        }
    };
    emit(&args.output, "density", format, &bytes)?;
    Ok(Status::Done)
}

pub fn weyl(args: WeylArgs) -> Result<Status, CliError> {
    check_budget("--N", args.n)?;
    check_budget("--j-max", args.j_max)?;
    let s = load_symbol(&args.symbol.symbol)?;
    let z = parse_complex(&args.z)?;
    let orbit = s.iterate(z, args.n)?;
    let w = weyl_test(&orbit.points, args.j_max)?;
    let format = args.output.format.unwrap_or(Format::Csv);
    let bytes = match format {
        Format::Report => report(&w)?,
        Format::Csv => {
            let mut csv = Csv::new(&["j", "abs_mean"])?;
            for (i, m) in w.per_j.iter().enumerate() {
                csv.row([(i + 1).to_string(), float(*m)])?;
            }
            csv.finish()?
        }
    };
    emit(&args.output, "weyl", format, &bytes)?;
    Ok(Status::Done)
}

#[derive(Serialize)]
struct CounterexampleDoc<'a> {
    sequence: &'a LacunarySequence,
    weight: &'a Weight,
    report: &'a CounterexampleReport,
    weighted_sup_norm_f: f64,
    weighted_sup_norm_g: f64,
}

pub fn counterexample(args: CounterexampleArgs) -> Result<Status, CliError> {
    check_budget("--K", args.k)?;
    if !(1..=16).contains(&args.probe_depth) {
        return Err(CliError::Usage("--probe-depth must lie in 1..=16".into()));
    }
    let angle = parse_angle(&args.angle)?;
    let seq = lacunary_exponents(&angle, args.ratio, args.k, args.n_max)?;
    let w = make_weight_v_alpha(args.alpha, args.r0, &seq, args.k)?;
    let radii: Vec<f64> = (1..=args.probe_depth).map(|m| 1.0 - 10f64.powi(-m)).collect();
    let pair = counterexample_pair(&seq, args.k, Some(&w), &radii)?;

    let mut csv = Csv::new(&["radius", "v", "v_abs_f", "v_abs_g"])?;
    for p in &pair.report.probes {
        csv.row([float(p.radius), float(p.v), float(p.v_abs_f), float(p.v_abs_g)])?;
    }
    let csv = csv.finish()?;
    let doc = CounterexampleDoc {
        sequence: &seq,
        weight: &w,
        report: &pair.report,
        weighted_sup_norm_f: weighted_sup_norm(&pair.f, &w, SUP_RADII, SUP_ANGLES),
        weighted_sup_norm_g: weighted_sup_norm(&pair.g, &w, SUP_RADII, SUP_ANGLES),
    };
    let json = report(&doc)?;
    match (args.output.format, &args.output.out) {
        // a directory gets both artifacts unless one format is requested
        (None, Some(_)) => {
            emit(&args.output, "counterexample", Format::Csv, &csv)?;
            emit(&args.output, "counterexample", Format::Report, &json)?;
        }
        (Some(Format::Report), _) => emit(&args.output, "counterexample", Format::Report, &json)?,
        _ => emit(&args.output, "counterexample", Format::Csv, &csv)?,
    }
    Ok(Status::Done)
}

#[derive(Serialize)]
struct GalleryEntry {
    name: &'static str,
    description: &'static str,
    classification: ClassReport,
    verdicts: Vec<ErgodicityVerdict>,
}

pub fn gallery(args: GalleryArgs) -> Result<Status, CliError> {
    check_budget("--N", args.n)?;
    let b = budgets(args.n, ClassifyConfig::default().tol_par, WeightArg::Typical);
    let mut entries = Vec::new();
    for &(name, description, _) in gallery::ENTRIES {
        let s = gallery::get(name)?;
        let classification = classify_report(&s, &b.classify)?;
        let verdicts = Space::ALL.iter().map(|&sp| decide(&s, sp, &b)).collect();
        entries.push(GalleryEntry {
            name,
            description,
            classification,
            verdicts,
        });
    }
    let format = args.output.format.unwrap_or(Format::Csv);
    let bytes = match format {
        Format::Report => report(&entries)?,
        Format::Csv => {
            let rows: Vec<(&str, &ErgodicityVerdict)> = entries
                .iter()
                .flat_map(|e| e.verdicts.iter().map(move |v| (e.name, v)))
                .collect();
            verdicts_csv(&rows)?
        }
    };
    emit(&args.output, "gallery", format, &bytes)?;
    Ok(Status::Done)
}
