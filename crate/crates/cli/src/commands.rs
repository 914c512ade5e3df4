use gdof_core::io::{rational_str, vertices_csv, RegionDocument};
use gdof_core::rank_oracle::{oracle_configs, rank_oracle_sweep};
use gdof_core::rational::{format_rational, to_f64};
use gdof_core::regions::lp_sum;
use gdof_core::svg::{render_regions, render_series, RegionLayer, Series, Stroke};
use gdof_core::{
    corner_points, delayed_region, dof_region_delayed, perfect_csit_region, perfect_sum_gdof,
    sum_gdof_closed_form, tin_region, verify_inner_equals_outer, Alpha, AntennaConfig, CaseId,
    GdofPoint, PowerAllocation, Rational, Region2D,
};
use gdof_mc::{estimate_fterm_slope, estimate_slope, Ladder, McOptions};
use clap::ValueEnum;
use serde::Serialize;

use crate::args::*;
use crate::output::{emit, slug, write_file};

/// Failure of a command: usage problems exit 1, failed checks exit 2.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Check(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(flag: &str) -> impl Fn(gdof_core::Error) -> Failure + '_ {
    move |e| Failure::Usage(format!("{flag}: {e}"))
}

fn io(e: String) -> Failure {
    Failure::Usage(e)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Region(a) => region(a),
        Command::Sum(a) => sum(a),
        Command::Compare(a) => compare(a),
        Command::Corners(a) => corners(a),
        Command::Verify(a) => verify(a),
        Command::Oracle { which: OracleCommand::Rank(a) } => oracle_rank(a),
        Command::Validate(a) => validate(a),
        Command::Plot(a) => plot(a),
    }
}

pub fn build_region(cfg: &AntennaConfig, alpha: Alpha, kind: Kind) -> Result<Region2D, Failure> {
    match kind {
        Kind::Delayed => Ok(delayed_region(cfg, alpha)),
        Kind::Perfect => perfect_csit_region(cfg, alpha).map_err(usage("--config")),
        Kind::Dof => dof_region_delayed(cfg).map_err(usage("--config")),
        Kind::Tin => Ok(tin_region(cfg, alpha)),
    }
}

fn sum_of(cfg: &AntennaConfig, alpha: Alpha, kind: Kind) -> Result<Rational, Failure> {
    match kind {
        Kind::Delayed => sum_gdof_closed_form(cfg, alpha).map_err(usage("--config")),
        Kind::Perfect => perfect_sum_gdof(cfg, alpha).map_err(usage("--config")),
        Kind::Dof | Kind::Tin => build_region(cfg, alpha, kind).map(|r| lp_sum(&r)),
    }
}

fn stroke(kind: Kind, first: bool) -> Stroke {
    match (kind, first) {
        (Kind::Tin, _) => Stroke::Dotted,
        (_, true) => Stroke::Solid,
        _ => Stroke::Dashed,
    }
}

fn region(a: RegionArgs) -> Outcome {
    let r = build_region(&a.config, a.alpha, a.csit)?;
    let content = match a.format {
        Format::Json => RegionDocument::new(a.config, a.alpha, &r).to_json() + "\n",
        Format::Csv => vertices_csv(&r),
        Format::Svg => render_regions(
            &format!("{} region of {} at alpha = {}", a.csit.name(), a.config, a.alpha),
            &[RegionLayer {
                label: a.csit.name().into(),
                region: &r,
                stroke: Stroke::Solid,
            }],
        ),
    };
    let name = format!(
        "region-{}-{}-{}.{}",
        a.csit.name(),
        slug(&a.config.to_string()),
        slug(&a.alpha.to_string()),
        a.format.ext()
    );
    emit(&a.output.out, &name, &content).map_err(io)
}

#[derive(Serialize)]
struct SumPoint {
    #[serde(with = "rational_str")]
    alpha: Rational,
    #[serde(with = "rational_str")]
    sum: Rational,
}

#[derive(Serialize)]
struct SumSeries {
    csit: &'static str,
    points: Vec<SumPoint>,
}

#[derive(Serialize)]
struct SumDocument {
    config: AntennaConfig,
    series: Vec<SumSeries>,
}

fn sum_series(cfg: &AntennaConfig, grid: &gdof_core::AlphaGrid, kinds: &[Kind]) -> Result<SumDocument, Failure> {
    let mut series = Vec::new();
    for &k in kinds {
        let mut points = Vec::new();
        for &v in grid.iter() {
            let alpha = Alpha::new(v).map_err(usage("--alpha-grid"))?;
            points.push(SumPoint { alpha: v, sum: sum_of(cfg, alpha, k)? });
        }
        series.push(SumSeries { csit: k.name(), points });
    }
    Ok(SumDocument { config: *cfg, series })
}

fn sum_svg(doc: &SumDocument) -> String {
    let series: Vec<Series> = doc
        .series
        .iter()
        .enumerate()
        .map(|(i, s)| Series {
            label: s.csit.into(),
            points: s.points.iter().map(|p| (to_f64(&p.alpha), to_f64(&p.sum))).collect(),
            stroke: if s.csit == "tin" {
                Stroke::Dotted
            } else if i == 0 {
                Stroke::Solid
            } else {
                Stroke::Dashed
            },
        })
        .collect();
    render_series(&format!("sum-GDoF of {}", doc.config), "α", "d₁+d₂", &series)
}

fn sum(a: SumArgs) -> Outcome {
    let doc = sum_series(&a.config, &a.alpha_grid, &a.csit)?;
    let content = match a.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut s = String::from("alpha");
            for ser in &doc.series {
                s.push(',');
                s.push_str(ser.csit);
            }
            s.push('\n');
            for (i, v) in a.alpha_grid.iter().enumerate() {
                s.push_str(&format_rational(v));
                for ser in &doc.series {
                    s.push(',');
                    s.push_str(&format_rational(&ser.points[i].sum));
                }
                s.push('\n');
            }
            s
        }
        Format::Svg => sum_svg(&doc),
    };
    let name = format!("sum-{}.{}", slug(&a.config.to_string()), a.format.ext());
    emit(&a.output.out, &name, &content).map_err(io)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Equal,
    StrictSubset,
    StrictSuperset,
    Incomparable,
}

pub fn relation(left: &Region2D, right: &Region2D) -> Relation {
    if left.equals(right) {
        Relation::Equal
    } else if left.subset(right) {
        Relation::StrictSubset
    } else if right.subset(left) {
        Relation::StrictSuperset
    } else {
        Relation::Incomparable
    }
}

#[derive(Serialize)]
struct NamedRegion {
    csit: &'static str,
    halfplanes: Vec<gdof_core::HalfPlane>,
    vertices: Vec<GdofPoint>,
    #[serde(with = "rational_str")]
    max_sum: Rational,
}

#[derive(Serialize)]
struct RelationRecord {
    left: &'static str,
    right: &'static str,
    relation: Relation,
}

#[derive(Serialize)]
struct CompareDocument {
    config: AntennaConfig,
    #[serde(with = "rational_str")]
    alpha: Rational,
    regions: Vec<NamedRegion>,
    relations: Vec<RelationRecord>,
}

fn compare(a: CompareArgs) -> Outcome {
    let regions: Vec<(Kind, Region2D)> = a
        .csit
        .iter()
        .map(|&k| build_region(&a.config, a.alpha, k).map(|r| (k, r)))
        .collect::<Result<_, _>>()?;
    let mut relations = Vec::new();
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            relations.push(RelationRecord {
                left: regions[i].0.name(),
                right: regions[j].0.name(),
                relation: relation(&regions[i].1, &regions[j].1),
            });
        }
    }
    let doc = CompareDocument {
        config: a.config,
        alpha: a.alpha.value(),
        regions: regions
            .iter()
            .map(|(k, r)| NamedRegion {
                csit: k.name(),
                halfplanes: r.halfplanes().to_vec(),
                vertices: r.vertices().to_vec(),
                max_sum: lp_sum(r),
            })
            .collect(),
        relations,
    };
    if let Some(path) = &a.svg {
        let layers: Vec<RegionLayer> = regions
            .iter()
            .enumerate()
            .map(|(i, (k, r))| RegionLayer {
                label: k.name().into(),
                region: r,
                stroke: stroke(*k, i == 0),
            })
            .collect();
        let svg = render_regions(&format!("{} at alpha = {}", a.config, a.alpha), &layers);
        write_file(path, &svg).map_err(io)?;
    }
    let name = format!("compare-{}-{}.json", slug(&a.config.to_string()), slug(&a.alpha.to_string()));
    emit(&a.output.out, &name, &to_json(&doc)).map_err(io)
}

#[derive(Serialize)]
struct CornersDocument {
    config: AntennaConfig,
    #[serde(with = "rational_str")]
    alpha: Rational,
    case: CaseId,
    corners: Vec<CornerRecord>,
}

#[derive(Serialize)]
struct CornerRecord {
    point: GdofPoint,
    allocation: PowerAllocation,
}

fn corners(a: CornersArgs) -> Outcome {
    let set = corner_points(&a.config, a.alpha).map_err(usage("--config"))?;
    let doc = CornersDocument {
        config: a.config,
        alpha: a.alpha.value(),
        case: set.case_id,
        corners: set
            .points
            .into_iter()
            .map(|(point, allocation)| CornerRecord { point, allocation })
            .collect(),
    };
    let name = format!("corners-{}-{}.json", slug(&a.config.to_string()), slug(&a.alpha.to_string()));
    emit(&a.output.out, &name, &to_json(&doc)).map_err(io)
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Unverified,
}

#[derive(Serialize)]
struct VerifyLine {
    config: AntennaConfig,
    #[serde(with = "rational_str")]
    alpha: Rational,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<CaseId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    corners: Option<Vec<CornerRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

fn verify(a: VerifyArgs) -> Outcome {
    let configs = match a.max_antennas {
        Some(k) => AntennaConfig::all_up_to(k),
        None if !a.config.is_empty() => a.config.clone(),
        None => return Err(Failure::Usage("verify: give --max-antennas or at least one --config".into())),
    };
    let mut out = String::new();
    let (mut pass, mut fail, mut unverified) = (0usize, 0usize, 0usize);
    for cfg in &configs {
        for &v in a.alpha_grid.iter() {
            let alpha = Alpha::new(v).map_err(usage("--alpha-grid"))?;
            let line = if !cfg.is_canonical() {
                unverified += 1;
                VerifyLine {
                    config: *cfg,
                    alpha: v,
                    status: Status::Unverified,
                    case: None,
                    corners: None,
                    detail: Some("tuple is not canonical".into()),
                }
            } else {
                match verify_inner_equals_outer(cfg, alpha) {
                    Ok(rec) => {
                        pass += 1;
                        VerifyLine {
                            config: *cfg,
                            alpha: v,
                            status: Status::Pass,
                            case: Some(rec.case),
                            corners: Some(
                                rec.corners
                                    .into_iter()
                                    .map(|(point, allocation)| CornerRecord { point, allocation })
                                    .collect(),
                            ),
                            detail: None,
                        }
                    }
                    Err(e) => {
                        fail += 1;
                        VerifyLine {
                            config: *cfg,
                            alpha: v,
                            status: Status::Fail,
                            case: None,
                            corners: None,
                            detail: Some(e.to_string()),
                        }
                    }
                }
            };
            out.push_str(&serde_json::to_string(&line).expect("serializable"));
            out.push('\n');
        }
    }
    emit(&a.output.out, "verify.jsonl", &out).map_err(io)?;
    eprintln!("verify: {pass} pass, {fail} fail, {unverified} unverified");
    if fail > 0 {
        let first = out.lines().find(|l| l.contains(r#""status":"fail""#)).unwrap_or_default();
        return Err(Failure::Check(format!("{fail} verification failures; first: {first}")));
    }
    Ok(())
}

fn oracle_rank(a: RankArgs) -> Outcome {
    let configs = oracle_configs(a.max_antennas, a.max_m2);
    let summary = rank_oracle_sweep(&configs, a.alpha_grid.values()).map_err(usage("--alpha-grid"))?;
    let content = to_json(&summary);
    emit(&a.output.out, "oracle-rank.json", &content).map_err(io)?;
    if !summary.failures.is_empty() {
        return Err(Failure::Check(format!(
            "{} rank oracle failures; first: {}",
            summary.failures.len(),
            serde_json::to_string(&summary.failures[0]).expect("serializable")
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct ValidateDocument {
    term: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    config: Option<AntennaConfig>,
    #[serde(with = "rational_str")]
    alpha: Rational,
    #[serde(with = "rational_str")]
    a2: Rational,
    #[serde(with = "rational_str")]
    prediction: Rational,
    slope: f64,
    stderr: f64,
    tolerance: f64,
    within_tolerance: bool,
    ladder: Vec<f64>,
    fit_top: usize,
    mean_rates: Vec<f64>,
    samples: usize,
    seed: u64,
}

fn validate(a: ValidateArgs) -> Outcome {
    let ladder = Ladder::new(a.ladder.clone())
        .and_then(|l| l.with_fit_top(a.fit_top))
        .map_err(|e| Failure::Usage(format!("--ladder/--fit-top: {e}")))?;
    let opts = McOptions {
        ladder,
        samples_per_point: a.samples,
        seed: a.seed,
        sampling: a.sampling.into(),
    };
    let mc = |flag: &'static str| move |e: gdof_mc::McError| match e {
        gdof_mc::McError::NumericalFailure(m) => Failure::Check(format!("numerical failure: {m}")),
        other => Failure::Usage(format!("{flag}: {other}")),
    };
    let (term, est) = match (a.fterm, a.config, a.term) {
        (Some(spec), _, _) => (
            format!("f({},({},{}),({},{}))", spec.u, spec.a1, spec.u1, spec.a2, spec.u2),
            estimate_fterm_slope(spec, &opts).map_err(mc("--samples"))?,
        ),
        (None, Some(cfg), Some(term)) => (
            term.name().to_string(),
            estimate_slope(&cfg, term, a.alpha, a.a2, &opts).map_err(mc("--config/--a2/--samples"))?,
        ),
        _ => return Err(Failure::Usage("validate: give --config and --term, or --fterm".into())),
    };
    let doc = ValidateDocument {
        term: term.clone(),
        config: a.config,
        alpha: a.alpha.value(),
        a2: a.a2,
        prediction: est.prediction,
        slope: est.slope,
        stderr: est.stderr,
        tolerance: est.tolerance(),
        within_tolerance: est.within_tolerance(),
        ladder: est.snr_exponents.clone(),
        fit_top: est.fit_top,
        mean_rates: est.mean_rates.clone(),
        samples: est.samples,
        seed: a.seed,
    };
    if let Some(path) = &a.csv {
        let mut s = String::from("log2_rho,mean_rate\n");
        for (x, y) in est.snr_exponents.iter().zip(&est.mean_rates) {
            s.push_str(&format!("{x},{y}\n"));
        }
        write_file(path, &s).map_err(io)?;
    }
    emit(&a.output.out, &format!("validate-{}.json", slug(&term)), &to_json(&doc)).map_err(io)?;
    if !doc.within_tolerance {
        return Err(Failure::Check(format!(
            "slope {:.4} differs from prediction {} by more than {:.4}",
            doc.slope,
            format_rational(&doc.prediction),
            doc.tolerance
        )));
    }
    Ok(())
}

fn alpha(s: &str) -> Alpha {
    s.parse().expect("literal alpha")
}

fn cfg(s: &str) -> AntennaConfig {
    s.parse().expect("literal tuple")
}

/// Configuration, alphas and region kinds of each named figure.
pub fn figure_spec(f: Figure) -> (AntennaConfig, Vec<Alpha>, Vec<Kind>) {
    match f {
        Figure::CaseI => (cfg("1,2,3,2"), vec![alpha("0.5")], vec![Kind::Delayed]),
        Figure::CaseIi => (cfg("2,2,3,2"), vec![alpha("0.4")], vec![Kind::Delayed]),
        Figure::AlphaFamily => (
            cfg("2,2,3,2"),
            ["0.4", "0.8", "1", "1.2", "1.6"].into_iter().map(alpha).collect(),
            vec![Kind::Delayed],
        ),
        Figure::TinGap => (cfg("1,2,1,1"), vec![alpha("0.4")], vec![Kind::Delayed, Kind::Tin]),
    }
}

fn plot(a: PlotArgs) -> Outcome {
    let (config, alphas, kinds, name) = match a.figure {
        Some(f) => {
            let (c, al, k) = figure_spec(f);
            let name = f.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            (c, al, k, name)
        }
        None => {
            let c = a.config.expect("clap enforces --config without --figure");
            let name = if a.sum {
                format!("sum-{}", slug(&c.to_string()))
            } else {
                let al: Vec<String> = a.alpha.iter().map(|x| slug(&x.to_string())).collect();
                format!("regions-{}-{}", slug(&c.to_string()), al.join("-"))
            };
            (c, a.alpha.clone(), a.csit.clone(), name)
        }
    };
    let svg = if a.sum && a.figure.is_none() {
        sum_svg(&sum_series(&config, &a.alpha_grid, &kinds)?)
    } else {
        let mut owned = Vec::new();
        for &al in &alphas {
            for (i, &k) in kinds.iter().enumerate() {
                let label = if alphas.len() > 1 {
                    format!("{} α={}", k.name(), al)
                } else {
                    k.name().to_string()
                };
                let st = if alphas.len() > 1 { Stroke::Solid } else { stroke(k, i == 0) };
                owned.push((label, build_region(&config, al, k)?, st));
            }
        }
        let layers: Vec<RegionLayer> = owned
            .iter()
            .map(|(label, r, st)| RegionLayer {
                label: label.clone(),
                region: r,
                stroke: *st,
            })
            .collect();
        let al: Vec<String> = alphas.iter().map(|x| x.to_string()).collect();
        render_regions(&format!("{config} at α = {}", al.join(", ")), &layers)
    };
    emit(&a.output.out, &format!("{name}.svg"), &svg).map_err(io)
}
