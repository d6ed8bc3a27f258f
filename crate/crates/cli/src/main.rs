//! `parabasin`: analyze plane holomorphic germs tangent to the identity and
//! verify basin predictions dynamically.
//!
//! Exit codes: 0 on success, 2 on input errors (bad flags, malformed or
//! invalid germ files), 3 on I/O failures while writing outputs.

mod germfile;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use parabasin_core::criteria::{lemma1_condition, RegionR, RegionS, RegionTest};
use parabasin_core::dynamics::{
    fatou_coordinate, iterate_orbit, model_map, raster_slice, write_csv, write_ppm, OrbitConfig,
    OrbitFate, SectorRegion, SliceSpec,
};
use parabasin_core::germ::Germ;

use germfile::GermFile;

type Point2 = (Complex64, Complex64);

#[derive(Parser)]
#[command(
    name = "parabasin",
    version,
    about = "Characteristic directions, indices, basin criteria, and orbit dynamics of plane germs tangent to the identity",
    after_help = "Environment: PARABOLIC_SEED overrides the sampling seed (default 42)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate characteristic directions with indices and basin verdicts
    Analyze {
        /// Germ file (JSON)
        germ: PathBuf,
        /// Machine-readable JSON output (default)
        #[arg(long, conflicts_with = "table")]
        json: bool,
        /// Human-readable table output
        #[arg(long)]
        table: bool,
    },
    /// Iterate one orbit and classify its fate
    Orbit {
        germ: PathBuf,
        /// Start point as re,im,re,im
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[command(flatten)]
        orbit: OrbitFlags,
    },
    /// Rasterize orbit fates over a plane slice into PPM or CSV
    Raster {
        germ: PathBuf,
        /// Output path; format chosen by extension (.ppm or .csv)
        #[arg(long)]
        out: PathBuf,
        /// Slice origin as re,im,re,im
        #[arg(long, default_value = "0,0,0,0", allow_hyphen_values = true)]
        origin: String,
        /// First basis vector as re,im,re,im
        #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
        e1: String,
        /// Second basis vector as re,im,re,im
        #[arg(long, default_value = "0,0,1,0", allow_hyphen_values = true)]
        e2: String,
        #[arg(long, default_value_t = 64)]
        width: usize,
        #[arg(long, default_value_t = 64)]
        height: usize,
        /// Half-width of the parameter square
        #[arg(long, default_value_t = 1.0)]
        extent: f64,
        #[command(flatten)]
        orbit: OrbitFlags,
    },
    /// Test an index value against region R or S, or test the cone condition
    Check {
        /// Region name (R or S); requires --m and --zeta, R also needs --k
        #[arg(long)]
        region: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        /// Index value as re,im
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        /// Cone condition data as c_re,c_im,d_re,d_im,a,b
        #[arg(long, allow_hyphen_values = true)]
        lemma1: Option<String>,
    },
    /// Fatou coordinates of the model map (x+1, y+1/x), or of a germ's
    /// case-(b.1)/(b.2) normal form
    Fatou {
        /// Start point as re,im,re,im (in the normal-form coordinates)
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 2_000_000)]
        max_iter: usize,
        /// Also verify the translation property on this many seeded samples
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Run on this germ's conjugated blow-up instead of the model map.
        /// Those maps carry slowly decaying error terms, so expect partial
        /// sums with converged = false unless the germ is exactly normalized.
        #[arg(long)]
        germ: Option<PathBuf>,
        /// Normal-form case for --germ: b1 (m = 0) or b2 (m > 0)
        #[arg(long, default_value = "b1")]
        case: String,
        /// Chart-U direction the germ is normalized at, as re,im
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        direction: String,
        /// Sector radius R for --samples
        #[arg(long, default_value_t = 50.0)]
        region_r: f64,
        /// Sector exponent N for --samples (default 2 for b1, 4.5 for b2)
        #[arg(long)]
        region_n: Option<f64>,
    },
}

#[derive(Args)]
struct OrbitFlags {
    #[arg(long, default_value_t = 100_000)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-4)]
    attract_radius: f64,
    #[arg(long, default_value_t = 10.0)]
    escape_radius: f64,
    #[arg(long, default_value_t = 1e-3)]
    tangency_tol: f64,
    #[arg(long, default_value_t = 50)]
    window: usize,
}

impl OrbitFlags {
    fn to_config(&self) -> Result<OrbitConfig, CliError> {
        let cfg = OrbitConfig {
            max_iter: self.max_iter,
            attract_radius: self.attract_radius,
            escape_radius: self.escape_radius,
            tangency_tol: self.tangency_tol,
            direction_window: self.window,
        };
        if !cfg.is_valid() {
            return Err(CliError::Input(
                "orbit flags must satisfy 0 < attract-radius < escape-radius, tangency-tol > 0, window >= 2"
                    .into(),
            ));
        }
        Ok(cfg)
    }
}

enum CliError {
    /// Bad flags or an invalid germ file; exits with code 2.
    Input(String),
    /// Output could not be written; exits with code 3.
    Io(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn sampling_seed() -> u64 {
    std::env::var("PARABOLIC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(42)
}

fn load_germ(path: &Path) -> Result<Germ, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: GermFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("malformed germ file {}: {e}", path.display())))?;
    file.to_germ()
        .map_err(|e| CliError::Input(format!("invalid germ in {}: {e}", path.display())))
}

fn parse_floats(text: &str, expected: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    match parts {
        Ok(v) if v.len() == expected => Ok(v),
        _ => Err(CliError::Input(format!(
            "{what} must be {expected} comma-separated numbers, got {text:?}"
        ))),
    }
}

fn parse_point(text: &str, what: &str) -> Result<(Complex64, Complex64), CliError> {
    let v = parse_floats(text, 4, what)?;
    Ok((Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3])))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { germ, table, .. } => cmd_analyze(&germ, table),
        Command::Orbit { germ, start, orbit } => cmd_orbit(&germ, &start, &orbit),
        Command::Raster {
            germ,
            out,
            origin,
            e1,
            e2,
            width,
            height,
            extent,
            orbit,
        } => cmd_raster(
            &germ, &out, &origin, &e1, &e2, width, height, extent, &orbit,
        ),
        Command::Check {
            region,
            m,
            k,
            zeta,
            lemma1,
        } => cmd_check(region.as_deref(), m, k, zeta.as_deref(), lemma1.as_deref()),
        Command::Fatou {
            start,
            tol,
            max_iter,
            samples,
            germ,
            case,
            direction,
            region_r,
            region_n,
        } => cmd_fatou(
            &start,
            tol,
            max_iter,
            samples,
            germ.as_deref(),
            &case,
            &direction,
            region_r,
            region_n,
        ),
    }
}

fn cmd_analyze(path: &Path, table: bool) -> Result<(), CliError> {
    let germ = load_germ(path)?;
    let report = report::build_report(&germ)
        .map_err(|e| CliError::Input(format!("analysis failed: {e}")))?;
    if table {
        print!("{}", report::render_table(&report));
    } else {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        println!("{json}");
    }
    Ok(())
}

fn fate_json(fate: &OrbitFate) -> serde_json::Value {
    match fate {
        OrbitFate::AttractedAlong(dir) => serde_json::json!({
            "kind": "AttractedAlong",
            "direction_estimate": {
                "z": {"re": dir.z.re, "im": dir.z.im},
                "w": {"re": dir.w.re, "im": dir.w.im},
            },
        }),
        OrbitFate::AttractedNoDirection => serde_json::json!({"kind": "AttractedNoDirection"}),
        OrbitFate::Escaped => serde_json::json!({"kind": "Escaped"}),
        OrbitFate::Undecided => serde_json::json!({"kind": "Undecided"}),
    }
}

fn cmd_orbit(path: &Path, start: &str, flags: &OrbitFlags) -> Result<(), CliError> {
    let germ = load_germ(path)?;
    let p0 = parse_point(start, "--start")?;
    let cfg = flags.to_config()?;
    let result = iterate_orbit(&germ, p0, &cfg);
    let out = serde_json::json!({
        "fate": fate_json(&result.fate),
        "iterations": result.iterations,
        "final_point": {
            "z": {"re": result.final_point.0.re, "im": result.final_point.0.im},
            "w": {"re": result.final_point.1.re, "im": result.final_point.1.im},
        },
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_raster(
    path: &Path,
    out: &Path,
    origin: &str,
    e1: &str,
    e2: &str,
    width: usize,
    height: usize,
    extent: f64,
    flags: &OrbitFlags,
) -> Result<(), CliError> {
    let germ = load_germ(path)?;
    if width == 0 || height == 0 || !extent.is_finite() || extent <= 0.0 {
        return Err(CliError::Input(
            "raster needs positive width, height, and extent".into(),
        ));
    }
    let slice = SliceSpec {
        origin: parse_point(origin, "--origin")?,
        e1: parse_point(e1, "--e1")?,
        e2: parse_point(e2, "--e2")?,
        width,
        height,
        extent,
    };
    let cfg = flags.to_config()?;
    let grid = raster_slice(&germ, &slice, &cfg);

    let ext = out.extension().and_then(|e| e.to_str()).unwrap_or("");
    let mut buf: Vec<u8> = Vec::new();
    match ext {
        "ppm" => write_ppm(&grid, &mut buf).expect("in-memory write"),
        "csv" => write_csv(&grid, &mut buf).expect("in-memory write"),
        other => {
            return Err(CliError::Input(format!(
                "unsupported output extension {other:?}: use .ppm or .csv"
            )))
        }
    }
    fs::write(out, &buf).map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;

    for (code, count) in grid.histogram() {
        let name = match code {
            0 => "undecided".to_string(),
            1 => "escaped".to_string(),
            2 => "attracted (no direction match)".to_string(),
            j => format!("attracted along direction {}", j - 3),
        };
        println!("{name}: {count}");
    }
    Ok(())
}

fn region_test_name(t: RegionTest) -> &'static str {
    match t {
        RegionTest::Inside => "true",
        RegionTest::Outside => "false",
        RegionTest::Boundary => "boundary",
    }
}

fn cmd_check(
    region: Option<&str>,
    m: Option<u32>,
    k: Option<u32>,
    zeta: Option<&str>,
    lemma1: Option<&str>,
) -> Result<(), CliError> {
    match (region, lemma1) {
        (Some(name), None) => {
            let m = m.ok_or_else(|| CliError::Input("--region requires --m".into()))?;
            let zeta = zeta.ok_or_else(|| CliError::Input("--region requires --zeta".into()))?;
            let v = parse_floats(zeta, 2, "--zeta")?;
            let zeta = Complex64::new(v[0], v[1]);
            match name {
                "R" | "r" => {
                    let k =
                        k.ok_or_else(|| CliError::Input("--region R requires --k".into()))?;
                    if k < 2 {
                        return Err(CliError::Input("--k must be at least 2".into()));
                    }
                    let region = RegionR::new(m, k);
                    println!("{}", region_test_name(region.test(zeta)));
                    println!(
                        "half_plane_bound = {}, circle_center = {}, circle_radius = {}",
                        region.half_plane_bound(),
                        region.circle_center(),
                        region.circle_radius()
                    );
                }
                "S" | "s" => {
                    let region = RegionS::new(m);
                    println!("{}", region_test_name(region.test(zeta)));
                    println!("center = {}, radius = {}", region.center(), region.radius());
                }
                other => {
                    return Err(CliError::Input(format!(
                        "unknown region {other:?}: expected R or S"
                    )))
                }
            }
            Ok(())
        }
        (None, Some(data)) => {
            let v = parse_floats(data, 6, "--lemma1")?;
            let c = Complex64::new(v[0], v[1]);
            let d = Complex64::new(v[2], v[3]);
            let (a, b) = (v[4] as u32, v[5] as u32);
            if a == 0 {
                return Err(CliError::Input("--lemma1 needs a >= 1".into()));
            }
            let holds = lemma1_condition(c, d, a, b)
                .map_err(|e| CliError::Input(format!("cone condition: {e}")))?;
            println!("{holds}");
            println!(
                "half_plane_bound = {}, circle_center = {}, circle_radius = {}",
                -(b as f64) / a as f64,
                -(b as f64) / (2.0 * a as f64),
                b as f64 / (2.0 * a as f64)
            );
            Ok(())
        }
        _ => Err(CliError::Input(
            "check needs exactly one of --region or --lemma1".into(),
        )),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_fatou(
    start: &str,
    tol: f64,
    max_iter: usize,
    samples: usize,
    germ_path: Option<&Path>,
    case: &str,
    direction: &str,
    region_r: f64,
    region_n: Option<f64>,
) -> Result<(), CliError> {
    use parabasin_core::dynamics::{CaseB1Transform, CaseB2Transform};

    let p0 = parse_point(start, "--start")?;

    // Resolve the map under study and the sector the samples come from.
    let (map, region): (Box<dyn Fn(Point2) -> Point2>, SectorRegion) = match germ_path {
        None => (
            Box::new(model_map),
            SectorRegion::new(
                region_r,
                region_n.unwrap_or(2.0),
                std::f64::consts::FRAC_PI_8,
            ),
        ),
        Some(path) => {
            let germ = load_germ(path)?;
            let v = parse_floats(direction, 2, "--direction")?;
            let u0 = Complex64::new(v[0], v[1]);
            match case {
                "b1" => {
                    let t = CaseB1Transform::new(&germ, parabasin_core::algebra::Chart::U, u0)
                        .map_err(|e| CliError::Input(format!("case b1: {e}")))?;
                    let n = region_n.unwrap_or(2.0);
                    let form = t.normal_form();
                    (
                        Box::new(move |p| form.eval(p)),
                        SectorRegion::new(region_r, n, std::f64::consts::FRAC_PI_8),
                    )
                }
                "b2" => {
                    let n = region_n.unwrap_or(4.5);
                    let t = CaseB2Transform::new(&germ, parabasin_core::algebra::Chart::U, u0)
                        .map_err(|e| CliError::Input(format!("case b2: {e}")))?;
                    let form = t.normal_form(n);
                    (
                        Box::new(move |p| form.eval(p)),
                        SectorRegion::new(region_r, n, std::f64::consts::FRAC_PI_8),
                    )
                }
                other => {
                    return Err(CliError::Input(format!(
                        "unknown case {other:?}: expected b1 or b2"
                    )))
                }
            }
        }
    };

    let result = fatou_coordinate(&map, p0, tol, max_iter)
        .map_err(|e| CliError::Input(format!("Fatou coordinate failed: {e}")))?;
    let mut out = serde_json::json!({
        "phi1": {"re": result.phi.0.re, "im": result.phi.0.im},
        "phi2": {"re": result.phi.1.re, "im": result.phi.1.im},
        "iterations": result.iterations,
        "converged": result.converged,
    });
    if samples > 0 {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(sampling_seed());
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let p = region.sample(&mut rng);
            let here = fatou_coordinate(&map, p, tol, max_iter)
                .map_err(|e| CliError::Input(format!("Fatou coordinate failed: {e}")))?;
            let ahead = fatou_coordinate(&map, map(p), tol, max_iter)
                .map_err(|e| CliError::Input(format!("Fatou coordinate failed: {e}")))?;
            let d1 = ahead.phi.0 - here.phi.0 - 1.0;
            let d2 = ahead.phi.1 - here.phi.1;
            worst = worst.max((d1.norm_sqr() + d2.norm_sqr()).sqrt());
        }
        out["translation_residual_max"] = serde_json::json!(worst);
        out["translation_samples"] = serde_json::json!(samples);
    }
    println!("{}", serde_json::to_string_pretty(&out).expect("serializes"));
    Ok(())
}
