use std::process::ExitCode;

use anyhow::{anyhow, Result};
use purify_core::crossover::{CompetitorValue, Endpoint, ScanConfig, DEFAULT_BISECT_TOL};
use purify_core::enumerate::write_table_csv;
use purify_core::protocols::MAX_MS_BLOCK;
use purify_core::{
    crossover_scan, fidelity_grid, generate_table, verify, yield_curve, yield_point, BellDiagonal, CurveConfig,
    Protocol, VerifyTarget,
};
use serde::Serialize;

use crate::cli::{CrossoverArgs, CurveArgs, CurveFormat, GridArgs, ReportFormat, TableArgs, VerifyArgs};
use crate::output::{round, round_point, sink, write_curve_csv};
use crate::UsageError;

fn parse_protocols(names: &[String]) -> Result<Vec<Protocol>> {
    let mut out: Vec<Protocol> = names
        .iter()
        .map(|n| n.parse::<Protocol>().map_err(|e| UsageError(e.to_string()).into()))
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn check_limits(grid: &GridArgs) -> Result<()> {
    if !(2..=MAX_MS_BLOCK).contains(&grid.m_max) {
        return Err(UsageError(format!("--m-max must lie in 2..={MAX_MS_BLOCK}, got {}", grid.m_max)).into());
    }
    Ok(())
}

fn grid_points(grid: &GridArgs) -> Result<Vec<f64>> {
    fidelity_grid(grid.f_min, grid.f_max, grid.step).map_err(|e| UsageError(e.to_string()).into())
}

#[derive(Serialize)]
struct CurveConfigEcho<'a> {
    f_min: f64,
    f_max: f64,
    step: f64,
    dist: Option<[f64; 4]>,
    protocols: &'a [Protocol],
    k_max: usize,
    m_max: usize,
}

#[derive(Serialize)]
struct CurveDocument<'a, T: Serialize> {
    config: CurveConfigEcho<'a>,
    points: T,
}

pub fn curve(args: CurveArgs) -> Result<ExitCode> {
    check_limits(&args.grid)?;
    let config = CurveConfig {
        protocols: parse_protocols(&args.protocols)?,
        k_max: args.grid.k_max,
        m_max: args.grid.m_max,
    };
    let (points, dist) = match &args.dist {
        Some(spec) => {
            let d: BellDiagonal = spec.parse().map_err(|e: purify_core::Error| UsageError(e.to_string()))?;
            (vec![yield_point(&d, &config)?], Some(d.probs()))
        }
        None => (yield_curve(&grid_points(&args.grid)?, &config)?, None),
    };
    let points: Vec<_> = points.iter().map(round_point).collect();

    let mut out = sink(args.grid.output.as_deref())?;
    match args.format {
        CurveFormat::Csv => write_curve_csv(&points, &mut out)?,
        CurveFormat::Json => {
            let doc = CurveDocument {
                config: CurveConfigEcho {
                    f_min: args.grid.f_min,
                    f_max: args.grid.f_max,
                    step: args.grid.step,
                    dist,
                    protocols: &config.protocols,
                    k_max: config.k_max,
                    m_max: config.m_max,
                },
                points: &points,
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct EndpointJson {
    fidelity: f64,
    refined: bool,
    ls: f64,
    competitors: Vec<CompetitorJson>,
}

#[derive(Serialize)]
struct CompetitorJson {
    protocol: Protocol,
    value: f64,
    config: Option<usize>,
}

#[derive(Serialize)]
struct IntervalJson {
    start: EndpointJson,
    end: EndpointJson,
}

#[derive(Serialize)]
struct PointJson {
    fidelity: f64,
    ls: f64,
    best_competitor: Option<CompetitorJson>,
    ls_wins: bool,
}

#[derive(Serialize)]
struct CrossoverDocument<'a> {
    config: &'a ScanConfigEcho,
    intervals: Vec<IntervalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<PointJson>>,
}

#[derive(Serialize)]
struct ScanConfigEcho {
    f_min: f64,
    f_max: f64,
    step: f64,
    competitors: Vec<Protocol>,
    k_max: usize,
    m_max: usize,
    bisect_tol: f64,
}

fn competitor_json(c: &CompetitorValue) -> CompetitorJson {
    CompetitorJson {
        protocol: c.protocol,
        value: round(c.value),
        config: c.config,
    }
}

fn endpoint_json(e: &Endpoint) -> EndpointJson {
    EndpointJson {
        fidelity: (e.fidelity * 1000.0).round() / 1000.0,
        refined: e.refined,
        ls: round(e.point.ls),
        competitors: e.point.competitors.iter().map(competitor_json).collect(),
    }
}

fn describe_competitor(c: &CompetitorValue) -> String {
    let choice = match (c.protocol, c.config) {
        (Protocol::Ms, Some(m)) => format!(" (m={m})"),
        (_, Some(k)) => format!(" (k={k})"),
        _ => String::new(),
    };
    format!("{}={}{choice}", c.protocol, round(c.value))
}

fn describe_endpoint(label: &str, e: &Endpoint) -> String {
    let competitors: Vec<String> = e.point.competitors.iter().map(describe_competitor).collect();
    format!(
        "  {label} F={:.3}{}: ls={} {}",
        e.fidelity,
        if e.refined { "" } else { " (range edge)" },
        round(e.point.ls),
        competitors.join(" ")
    )
}

pub fn crossover(args: CrossoverArgs) -> Result<ExitCode> {
    check_limits(&args.grid)?;
    grid_points(&args.grid)?;
    let config = ScanConfig {
        competitors: parse_protocols(&args.protocols)?,
        k_max: args.grid.k_max,
        m_max: args.grid.m_max,
        bisect_tol: DEFAULT_BISECT_TOL,
    };
    let report = crossover_scan(args.grid.f_min, args.grid.f_max, args.grid.step, &config)?;
    let echo = ScanConfigEcho {
        f_min: args.grid.f_min,
        f_max: args.grid.f_max,
        step: args.grid.step,
        competitors: config.competitors.clone(),
        k_max: config.k_max,
        m_max: config.m_max,
        bisect_tol: config.bisect_tol,
    };

    let mut out = sink(args.grid.output.as_deref())?;
    match args.format {
        ReportFormat::Json => {
            let doc = CrossoverDocument {
                config: &echo,
                intervals: report
                    .intervals
                    .iter()
                    .map(|i| IntervalJson {
                        start: endpoint_json(&i.start),
                        end: endpoint_json(&i.end),
                    })
                    .collect(),
                points: args.points.then(|| {
                    report
                        .points
                        .iter()
                        .map(|p| PointJson {
                            fidelity: round(p.fidelity),
                            ls: round(p.ls),
                            best_competitor: p.best_competitor().map(competitor_json),
                            ls_wins: p.ls_wins,
                        })
                        .collect()
                }),
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        ReportFormat::Text => {
            let names: Vec<&str> = config.competitors.iter().map(|p| p.name()).collect();
            writeln!(
                out,
                "scan F in [{}, {}] step {}; competitors: {} (k_max {}, m_max {})",
                args.grid.f_min,
                args.grid.f_max,
                args.grid.step,
                if names.is_empty() { "none".to_string() } else { names.join(", ") },
                config.k_max,
                config.m_max
            )?;
            if report.intervals.is_empty() {
                writeln!(out, "no interval where ls strictly beats all competitors")?;
            }
            for (n, i) in report.intervals.iter().enumerate() {
                writeln!(out, "interval {}: [{:.3}, {:.3}]", n + 1, i.start.fidelity, i.end.fidelity)?;
                writeln!(out, "{}", describe_endpoint("start", &i.start))?;
                writeln!(out, "{}", describe_endpoint("end  ", &i.end))?;
            }
            if args.points {
                writeln!(out, "F,ls,best_competitor,best_value,winner")?;
                for p in &report.points {
                    let best = p.best_competitor();
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        round(p.fidelity),
                        round(p.ls),
                        best.map(|c| c.protocol.name()).unwrap_or(""),
                        best.map(|c| round(c.value).to_string()).unwrap_or_default(),
                        if p.ls_wins { "ls" } else { best.map(|c| c.protocol.name()).unwrap_or("tie") }
                    )?;
                }
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify_cmd(args: VerifyArgs) -> Result<ExitCode> {
    let targets: Vec<VerifyTarget> = if args.target == "all" {
        VerifyTarget::ALL.to_vec()
    } else {
        vec![args
            .target
            .parse()
            .map_err(|e: purify_core::Error| UsageError(e.to_string()))?]
    };
    let mut all_passed = true;
    for t in targets {
        let report = verify(t);
        print!("{report}");
        if !report.passed() {
            all_passed = false;
            if let Some(c) = report.checks.iter().find(|c| !c.passed) {
                eprintln!("verification failed: {} / {}: {}", t.name(), c.name, c.detail);
            }
        }
    }
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn table(args: TableArgs) -> Result<ExitCode> {
    let rows = generate_table();
    if rows.len() != 64 {
        return Err(anyhow!("expected 64 rows, generated {}", rows.len()));
    }
    let mut out = sink(args.output.as_deref())?;
    write_table_csv(&rows, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}
