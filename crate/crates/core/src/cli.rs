//! The `lemni` command line: argument parsing, dispatch, file output and SVG
//! rendering.
//!
//! Exit codes: 0 success, 2 inconclusive certificate, 1 usage or runtime
//! error (and failed claims).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::capacity::{capacity, diameter, diameter_is_exact, CapacityValue, CompactSetModel};
use crate::chebyshev::monic_chebyshev;
use crate::claims::{self, rows_to_csv, AreaRow, ClaimParams, ClaimResult, ClaimStatus, CLAIM_IDS};
use crate::error::{Error, Result};
use crate::fekete::{circle_fekete_polynomial, fekete_points, fekete_polynomial, FeketeConfig, FeketeResult};
use crate::json::to_json_line;
use crate::lemniscate::{
    certified_area, certified_area_with_cells, components, AreaCertificate, AreaOptions, CellClass, ComponentSummary,
    Disk, Grid, Leaf, DEFAULT_MAX_DEPTH,
};
use crate::polycore::{compose_with_chebyshev, ComplexPoint, MonicPolynomial};
use crate::roots::FiberSolveConfig;

pub const SCHEMA_VERSION: u32 = 1;
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
const RENDER_DEFAULT_DEPTH: u32 = 10;

#[derive(Debug, Parser)]
#[command(name = "lemni", version, about = "Certified areas of polynomial lemniscates")]
pub struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// Exactly one polynomial source.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Roots as `re[,im]` separated by `;`, e.g. `1,0;-1,0`.
    #[arg(long, allow_hyphen_values = true)]
    pub roots: Option<String>,
    /// Monic Chebyshev polynomial of [-2, 2] of this degree.
    #[arg(long)]
    pub chebyshev: Option<usize>,
    /// Chebyshev composition `N:c0,c1,...,1` (ascending real coefficients of Q).
    #[arg(long, allow_hyphen_values = true)]
    pub compose: Option<String>,
    /// JSON file holding `{"roots": [[re, im], ...]}`.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Budget {
    /// Maximum quadtree depth.
    #[arg(long)]
    pub depth: Option<u32>,
    /// Smallest cell side (absolute).
    #[arg(long)]
    pub min_cell: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub level: f64,
}

impl Budget {
    fn options(&self, default_depth: u32) -> AreaOptions {
        AreaOptions {
            level: self.level,
            max_depth: self.depth.unwrap_or(default_depth),
            min_cell: self.min_cell,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Output {
    /// Directory receiving all output files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print JSON on stdout even when `--csv` is given (JSON is the default).
    #[arg(long)]
    pub json: bool,
    /// Emit CSV rows where the command has a table: on stdout, and as a
    /// file under `--out`.
    #[arg(long)]
    pub csv: bool,
    /// Render the cell decomposition to SVG under `--out`.
    #[arg(long)]
    pub svg: bool,
    /// Record wall-clock times; otherwise they are written as 0 so reruns
    /// are byte-identical.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Monic Chebyshev polynomials of [-2, 2].
    Chebyshev,
    /// `z^n - radius^n`.
    Circle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified area of {|p| < level}.
    Area {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Connected components of {|p| < level}.
    Components {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// Approximate Fekete points of a compact set.
    Fekete {
        /// Set model as JSON, e.g. `{"kind":"interval","a":-2,"b":2}`.
        #[arg(long)]
        set: String,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 256)]
        candidates: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Logarithmic capacity and diameter of a compact set.
    Capacity {
        #[arg(long)]
        set: String,
        #[command(flatten)]
        output: Output,
    },
    /// Roots of T_n composed with a monic Q.
    Compose {
        #[arg(long)]
        chebyshev: usize,
        /// Ascending real coefficients of Q, ending in 1.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run a registered claim, or `all`.
    Verify {
        /// Claim id or `all`.
        #[arg(required_unless_present = "params", conflicts_with = "params")]
        claim: Option<String>,
        /// Full claim parameters as JSON, tagged by `"claim"`.
        #[arg(long)]
        params: Option<String>,
        /// Override the quadtree depth of area-certifying claims.
        #[arg(long)]
        depth: Option<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Certified areas over a polynomial family.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        /// Degrees, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Circle radius for the `circle` family.
        #[arg(long, default_value_t = 1.2)]
        radius: f64,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        output: Output,
    },
    /// SVG picture of the certified cell decomposition.
    Render {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        budget: Budget,
        /// Overlay disk `re,im,radius`; repeatable.
        #[arg(long = "disk", allow_hyphen_values = true)]
        disks: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaReport {
    pub polynomial: MonicPolynomial,
    pub certificate: AreaCertificate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentsReport {
    pub polynomial: MonicPolynomial,
    pub level: f64,
    pub max_depth: u32,
    pub summary: ComponentSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeketeReport {
    pub model: CompactSetModel,
    pub config: FeketeConfig,
    pub result: FeketeResult,
    pub polynomial: MonicPolynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub model: CompactSetModel,
    pub capacity: CapacityValue,
    pub diameter: f64,
    pub diameter_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComposeReport {
    pub chebyshev: usize,
    pub q: Vec<f64>,
    pub polynomial: MonicPolynomial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub results: Vec<ClaimResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: Family,
    pub radius: Option<f64>,
    pub rows: Vec<AreaRow>,
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("{what}: cannot parse `{s}` as a number")))?;
    if !v.is_finite() {
        return Err(Error::NonFinite("command-line number"));
    }
    Ok(v)
}

/// `re[,im]` points separated by `;`.
pub fn parse_roots(s: &str) -> Result<Vec<ComplexPoint>> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let parts: Vec<&str> = t.split(',').collect();
            match parts.as_slice() {
                [re] => Ok(ComplexPoint::new(parse_f64(re, "--roots")?, 0.0)),
                [re, im] => Ok(ComplexPoint::new(parse_f64(re, "--roots")?, parse_f64(im, "--roots")?)),
                _ => Err(Error::InvalidParameter(format!("--roots: bad point `{t}`"))),
            }
        })
        .collect()
}

fn parse_coeffs(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|t| parse_f64(t, "coefficients")).collect()
}

fn compose(n: usize, q: &[f64], seed: u64) -> Result<MonicPolynomial> {
    let q: Vec<ComplexPoint> = q.iter().map(|&c| ComplexPoint::new(c, 0.0)).collect();
    compose_with_chebyshev(
        n,
        &q,
        &FiberSolveConfig {
            seed,
            ..Default::default()
        },
    )
}

fn load_polynomial(src: &Source, seed: u64) -> Result<MonicPolynomial> {
    if let Some(r) = &src.roots {
        return MonicPolynomial::new(parse_roots(r)?);
    }
    if let Some(n) = src.chebyshev {
        return monic_chebyshev(n);
    }
    if let Some(spec) = &src.compose {
        let (n, q) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter("--compose expects N:c0,c1,...,1".into()))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("--compose: bad degree `{n}`")))?;
        return compose(n, &parse_coeffs(q)?, seed);
    }
    if let Some(path) = &src.file {
        let text = fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&text)?);
    }
    Err(Error::InvalidParameter("no polynomial source given".into()))
}

fn parse_disk(s: &str) -> Result<Disk> {
    let v = parse_coeffs(s)?;
    match v.as_slice() {
        &[re, im, radius] if radius > 0.0 => Ok(Disk {
            center: ComplexPoint::new(re, im),
            radius,
        }),
        _ => Err(Error::InvalidParameter(format!(
            "--disk expects re,im,radius with radius > 0, got `{s}`"
        ))),
    }
}

/// Deterministic SVG of a cell decomposition: inside cells filled,
/// undecided cells outlined, roots as markers and optional overlay disks.
pub fn render_svg(grid: &Grid, leaves: &[Leaf], roots: &[ComplexPoint], disks: &[Disk]) -> String {
    const WIDTH: f64 = 800.0;
    let mut region = grid.bounding_region();
    for d in disks {
        region = region.union(&crate::lemniscate::Rect {
            min: d.center - ComplexPoint::new(d.radius, d.radius),
            max: d.center + ComplexPoint::new(d.radius, d.radius),
        });
    }
    let scale = WIDTH / region.width();
    let height = region.height() * scale;
    let x = |re: f64| (re - region.min.re) * scale;
    let y = |im: f64| (region.max.im - im) * scale;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.3} {height:.3}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let mut cells = |class: CellClass, style: &str| {
        let _ = writeln!(s, "<g {style}>");
        for leaf in leaves.iter().filter(|l| l.class == class) {
            let r = grid.rect(leaf.cell);
            let _ = writeln!(
                s,
                r#"<rect x="{:.4}" y="{:.4}" width="{:.4}" height="{:.4}"/>"#,
                x(r.min.re),
                y(r.max.im),
                r.width() * scale,
                r.height() * scale
            );
        }
        let _ = writeln!(s, "</g>");
    };
    cells(CellClass::Inside, r##"fill="#3465a4" stroke="none""##);
    cells(
        CellClass::Undecided,
        r##"fill="none" stroke="#cc0000" stroke-width="0.3""##,
    );
    let _ = writeln!(s, r##"<g fill="none" stroke="#4e9a06" stroke-width="1.5">"##);
    for d in disks {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.4}" cy="{:.4}" r="{:.4}"/>"#,
            x(d.center.re),
            y(d.center.im),
            d.radius * scale
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="black">"##);
    for z in roots {
        let _ = writeln!(s, r#"<circle cx="{:.4}" cy="{:.4}" r="3"/>"#, x(z.re), y(z.im));
    }
    let _ = writeln!(s, "</g>\n</svg>");
    s
}

/// What a command produced, before it is written anywhere.
struct Emission {
    stem: &'static str,
    json: String,
    csv: Option<String>,
    svg: Option<String>,
    code: i32,
}

fn envelope<T: Serialize>(command: &str, body: T) -> Result<String> {
    to_json_line(&Envelope {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        body,
    })
}

fn certificate(p: &MonicPolynomial, opts: &AreaOptions, timing: bool) -> Result<AreaCertificate> {
    let mut c = certified_area(p, opts)?;
    if !timing {
        c.elapsed_ms = 0.0;
    }
    Ok(c)
}

/// Inconclusive when no cell could be certified inside: the enclosure then
/// says nothing beyond the trivial bounds.
fn area_code(c: &AreaCertificate) -> i32 {
    if c.cells_inside == 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn svg_of(p: &MonicPolynomial, opts: &AreaOptions, disks: &[Disk]) -> Result<String> {
    let (_, cells) = certified_area_with_cells(p, opts, true)?;
    let (grid, leaves) = cells.expect("leaves requested");
    Ok(render_svg(&grid, &leaves, p.roots(), disks))
}

fn execute(cli: &Cli) -> Result<(Emission, &Output)> {
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Area { source, budget, output } => {
            let p = load_polynomial(source, seed)?;
            let opts = budget.options(DEFAULT_MAX_DEPTH);
            let c = certificate(&p, &opts, output.timing)?;
            let code = area_code(&c);
            let csv = rows_to_csv(&[AreaRow {
                n: p.degree(),
                lower: c.lower,
                upper: c.upper,
                cells_inside: c.cells_inside,
                cells_undecided: c.cells_undecided,
                elapsed_ms: c.elapsed_ms,
            }]);
            let svg = if output.svg {
                Some(svg_of(&p, &opts, &[])?)
            } else {
                None
            };
            let json = envelope(
                "area",
                AreaReport {
                    polynomial: p,
                    certificate: c,
                },
            )?;
            (
                Emission {
                    stem: "area",
                    json,
                    csv: Some(csv),
                    svg,
                    code,
                },
                output,
            )
        }
        Command::Components { source, budget, output } => {
            let p = load_polynomial(source, seed)?;
            let opts = budget.options(DEFAULT_MAX_DEPTH);
            let summary = components(&p, &opts)?;
            let code = if summary.count_range.0 == summary.count_range.1 {
                EXIT_OK
            } else {
                EXIT_INCONCLUSIVE
            };
            let svg = if output.svg {
                Some(svg_of(&p, &opts, &[])?)
            } else {
                None
            };
            let report = ComponentsReport {
                polynomial: p,
                level: opts.level,
                max_depth: opts.max_depth,
                summary,
            };
            let json = envelope("components", report)?;
            (
                Emission {
                    stem: "components",
                    json,
                    csv: None,
                    svg,
                    code,
                },
                output,
            )
        }
        Command::Fekete {
            set,
            n,
            candidates,
            output,
        } => {
            let model = CompactSetModel::from_json(set)?;
            let config = FeketeConfig {
                candidate_count: *candidates,
                seed,
                ..Default::default()
            };
            let result = fekete_points(&model, *n, &config)?;
            let polynomial = fekete_polynomial(&result)?;
            let json = envelope(
                "fekete",
                FeketeReport {
                    model,
                    config,
                    result,
                    polynomial,
                },
            )?;
            (
                Emission {
                    stem: "fekete",
                    json,
                    csv: None,
                    svg: None,
                    code: EXIT_OK,
                },
                output,
            )
        }
        Command::Capacity { set, output } => {
            let model = CompactSetModel::from_json(set)?;
            let report = CapacityReport {
                capacity: capacity(&model),
                diameter: diameter(&model),
                diameter_exact: diameter_is_exact(&model),
                model,
            };
            let json = envelope("capacity", report)?;
            (
                Emission {
                    stem: "capacity",
                    json,
                    csv: None,
                    svg: None,
                    code: EXIT_OK,
                },
                output,
            )
        }
        Command::Compose { chebyshev, q, output } => {
            let q = parse_coeffs(q)?;
            let polynomial = compose(*chebyshev, &q, seed)?;
            let json = envelope(
                "compose",
                ComposeReport {
                    chebyshev: *chebyshev,
                    q,
                    polynomial,
                },
            )?;
            (
                Emission {
                    stem: "compose",
                    json,
                    csv: None,
                    svg: None,
                    code: EXIT_OK,
                },
                output,
            )
        }
        Command::Verify {
            claim,
            params,
            depth,
            output,
        } => {
            let mut list = match (claim.as_deref(), params) {
                (_, Some(json)) => vec![serde_json::from_str::<ClaimParams>(json)?],
                (Some("all"), None) => CLAIM_IDS.iter().map(|id| ClaimParams::defaults(id).unwrap()).collect(),
                (Some(id), None) => vec![ClaimParams::defaults(id).ok_or_else(|| {
                    Error::InvalidParameter(format!("unknown claim `{id}`; known: all, {}", CLAIM_IDS.join(", ")))
                })?],
                (None, None) => unreachable!("clap requires a claim or --params"),
            };
            if let Some(d) = depth {
                list = list.into_iter().map(|p| p.with_depth(*d)).collect();
            }
            let mut results = Vec::with_capacity(list.len());
            let mut summary = String::from("claim_id,status,params_hash\n");
            for params in &list {
                let mut r = claims::run(params)?;
                if !output.timing {
                    r = r.without_timing();
                }
                if let Some(dir) = &output.out {
                    r = claims::write_artifacts(&r, params, dir)?;
                }
                let _ = writeln!(summary, "{},{},{}", r.claim_id, r.status.as_str(), params.params_hash());
                results.push(r);
            }
            let code = if results.iter().any(|r| r.status == ClaimStatus::Fail) {
                EXIT_ERROR
            } else if results.iter().any(|r| r.status == ClaimStatus::Inconclusive) {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            let json = envelope("verify", VerifyReport { results })?;
            (
                Emission {
                    stem: "verify",
                    json,
                    csv: Some(summary),
                    svg: None,
                    code,
                },
                output,
            )
        }
        Command::Sweep {
            family,
            n,
            radius,
            budget,
            output,
        } => {
            let opts = budget.options(DEFAULT_MAX_DEPTH);
            let mut rows = Vec::with_capacity(n.len());
            let mut code = EXIT_OK;
            for &deg in n {
                let p = match family {
                    Family::Chebyshev => monic_chebyshev(deg)?,
                    Family::Circle => circle_fekete_polynomial(ComplexPoint::new(0.0, 0.0), *radius, deg)?,
                };
                let c = certificate(&p, &opts, output.timing)?;
                code = code.max(area_code(&c));
                rows.push(AreaRow {
                    n: deg,
                    lower: c.lower,
                    upper: c.upper,
                    cells_inside: c.cells_inside,
                    cells_undecided: c.cells_undecided,
                    elapsed_ms: c.elapsed_ms,
                });
            }
            let csv = rows_to_csv(&rows);
            let report = SweepReport {
                family: *family,
                radius: (*family == Family::Circle).then_some(*radius),
                rows,
            };
            let json = envelope("sweep", report)?;
            (
                Emission {
                    stem: "sweep",
                    json,
                    csv: Some(csv),
                    svg: None,
                    code,
                },
                output,
            )
        }
        Command::Render {
            source,
            budget,
            disks,
            output,
        } => {
            let p = load_polynomial(source, seed)?;
            let disks = disks.iter().map(|d| parse_disk(d)).collect::<Result<Vec<_>>>()?;
            let opts = budget.options(RENDER_DEFAULT_DEPTH);
            let (mut c, cells) = certified_area_with_cells(&p, &opts, true)?;
            if !output.timing {
                c.elapsed_ms = 0.0;
            }
            let (grid, leaves) = cells.expect("leaves requested");
            let svg = render_svg(&grid, &leaves, p.roots(), &disks);
            let code = area_code(&c);
            let json = envelope(
                "render",
                AreaReport {
                    polynomial: p,
                    certificate: c,
                },
            )?;
            (
                Emission {
                    stem: "render",
                    json,
                    csv: None,
                    svg: Some(svg),
                    code,
                },
                output,
            )
        }
    })
}

fn write_file(dir: &Path, name: String, contents: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn emit(e: &Emission, output: &Output, render: bool, stdout: &mut dyn std::io::Write) -> Result<()> {
    let csv = e.csv.as_deref().filter(|_| output.csv);
    match (&output.out, render) {
        (None, true) => stdout.write_all(e.svg.as_deref().unwrap_or_default().as_bytes())?,
        _ => stdout.write_all(csv.filter(|_| !output.json).unwrap_or(&e.json).as_bytes())?,
    }
    if let Some(dir) = &output.out {
        write_file(dir, format!("{}.json", e.stem), &e.json)?;
        if let Some(csv) = csv {
            write_file(dir, format!("{}.csv", e.stem), csv)?;
        }
        if let Some(svg) = &e.svg {
            write_file(dir, format!("{}.svg", e.stem), svg)?;
        }
    }
    Ok(())
}

/// Caps the global worker pool from `LEMNI_THREADS` (0 or unset: automatic).
fn configure_threads() {
    if let Some(n) = std::env::var("LEMNI_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            // fails only if the pool already exists, which is harmless
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Results go to `stdout`, diagnostics to `stderr`.
pub fn parse_and_dispatch<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn std::io::Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    configure_threads();
    let render = matches!(cli.command, Command::Render { .. });
    let outcome = execute(&cli).and_then(|(e, output)| emit(&e, output, render, stdout).map(|_| e.code));
    match outcome {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            EXIT_ERROR
        }
    }
}
