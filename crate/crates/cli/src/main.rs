//! `polytile`: discretize polygonal sets, decide whether they tile the plane
//! by translations, and analyze given tilings.

mod analyze;
mod certificate;
mod error;
mod input;
mod view;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polytile_core::engine::{decide, DecideOptions, Verdict};
use polytile_core::render::{
    render_discrete, render_discretization, render_partition, render_polygon, RenderSpec, RenderTarget, Viewport,
};
use polytile_core::{RPoint, ZPoint};

use certificate::{to_json, Certificate, Refutation, SessionState};
use error::{write_file, CliError};
use input::{Input, Subject};

#[derive(Parser)]
#[command(name = "polytile", version, about = "Translational tilings of the plane by polygonal sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a polygonal set as a discrete tile.
    Discretize {
        /// Polygonal-set JSON.
        input: PathBuf,
        /// Tile file to write instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also draw the set, its unit-cell partition and the tile.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide whether a polygonal set or discrete tile tiles the plane.
    ///
    /// Exits 0 with a certificate, 1 with a refutation, or 2 after saving a
    /// state file when the work budget runs out.
    Decide {
        /// Polygonal-set JSON or tile file.
        input: PathBuf,
        /// Work units (one torus or one patch search each) for this run.
        #[arg(long)]
        budget: Option<u64>,
        /// Continue from a saved state file.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Where to save the state when undecided [default: <input>.state.json].
        #[arg(long)]
        state: Option<PathBuf>,
        /// Also write the certificate to this file.
        #[arg(long)]
        emit_certificate: Option<PathBuf>,
    },
    /// Report vertex-sharing classes, plates and periodicity of a tiling.
    Analyze {
        /// Polygonal-set JSON or tile file.
        input: PathBuf,
        /// Tiling description or decide certificate.
        tiling: PathBuf,
        /// Earthquake direction `x,y` for the plate decomposition.
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        earthquake: Option<ZPoint>,
        /// Draw the tiling, colored by plate or class.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check a certificate or tiling description independently of the search.
    Verify {
        /// Polygonal-set JSON or tile file.
        input: PathBuf,
        /// Tiling description or decide certificate.
        tiling: PathBuf,
    },
    /// Draw a set, its partition, its discrete tile, a tiling or its plates.
    Render {
        /// Polygonal-set JSON or tile file.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::Polygon)]
        target: Target,
        /// Tiling description or certificate, for the tiling and plates targets.
        #[arg(long)]
        tiling: Option<PathBuf>,
        /// Earthquake direction `x,y`, for the plates target.
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        earthquake: Option<ZPoint>,
        /// Pixels per unit length [default: 400 for the partition, 40 otherwise].
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        cell_pixels: Option<u32>,
        /// SVG file to write instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Polygon,
    Partition,
    Discrete,
    Tiling,
    Plates,
}

fn parse_vector(s: &str) -> Result<ZPoint, String> {
    let (x, y) = s.split_once(',').ok_or("expected `x,y`")?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    let v = ZPoint::new(p(x)?, p(y)?);
    if v.is_zero() {
        return Err("direction must be nonzero".into());
    }
    Ok(v)
}

fn threads() -> Result<usize, CliError> {
    match std::env::var("POLYTILE_THREADS") {
        Err(_) => Ok(1),
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("POLYTILE_THREADS must be a positive integer, got {s:?}"))),
    }
}

fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_discretize(input: &Path, output: Option<&Path>, svg: Option<&Path>) -> Result<u8, CliError> {
    let Input::Polygon(omega) = input::load(input)? else {
        return Err(CliError::Data(format!("{}: expected a polygonal-set JSON document", input.display())));
    };
    let tile = polytile_core::discretize(&omega);
    if let Some(path) = svg {
        write_file(path, &render_discretization(&tile, 40).expect("tile has provenance"))?;
    }
    emit(output, &tile.to_text())?;
    Ok(0)
}

fn cmd_decide(
    input: &Path,
    budget: Option<u64>,
    resume: Option<&Path>,
    state: Option<&Path>,
    certificate: Option<&Path>,
) -> Result<u8, CliError> {
    let tile = input::to_tile(input::load(input)?);
    let resume = resume.map(|p| SessionState::parse(&input::read(p)?, &tile)).transpose()?;
    let opts = DecideOptions { budget, threads: threads()?, resume };
    let decision = decide(tile.points(), &opts);
    match decision.verdict {
        Verdict::Tileable(t) => {
            let cert = to_json(&Certificate::new(&t, tile.scale()));
            if let Some(p) = certificate {
                write_file(p, &cert)?;
            }
            print!("{cert}");
            Ok(0)
        }
        Verdict::NotTileable { radius } => {
            print!("{}", to_json(&Refutation { radius }));
            Ok(1)
        }
        Verdict::Undecided(progress) => {
            let path = state.map(Path::to_path_buf).unwrap_or_else(|| {
                let mut p = input.as_os_str().to_owned();
                p.push(".state.json");
                PathBuf::from(p)
            });
            write_file(&path, &to_json(&SessionState::new(&tile, progress)))?;
            eprintln!(
                "undecided after {} work units (round {}); state saved to {}",
                progress.stats.work_units,
                progress.round,
                path.display()
            );
            Ok(2)
        }
    }
}

fn cmd_verify(input: &Path, tiling: &Path) -> Result<u8, CliError> {
    let subject = input::subject(input, tiling)?;
    match analyze::check(&subject)? {
        None => {
            println!("ok: tiling verified");
            Ok(0)
        }
        Some(msg) => {
            eprintln!("{msg}");
            Ok(1)
        }
    }
}

fn cmd_analyze(input: &Path, tiling: &Path, earthquake: Option<ZPoint>, svg: Option<&Path>) -> Result<u8, CliError> {
    let subject = input::subject(input, tiling)?;
    if let Some(msg) = analyze::check(&subject)? {
        eprintln!("{msg}");
        return Ok(1);
    }
    let report = analyze::report(&subject, earthquake)?;
    if let Some(path) = svg {
        write_file(path, &view::tiling_svg(&subject, earthquake, 40)?)?;
    }
    print!("{}", to_json(&report));
    Ok(0)
}

fn cmd_render(
    input: &Path,
    target: Target,
    tiling: Option<&Path>,
    earthquake: Option<ZPoint>,
    cell_pixels: Option<u32>,
    output: Option<&Path>,
) -> Result<u8, CliError> {
    let px = cell_pixels.unwrap_or(if matches!(target, Target::Partition) { 400 } else { 40 });
    let polygon = |what: &str| -> Result<polytile_core::IntegerPolygonalSet, CliError> {
        match input::load(input)? {
            Input::Polygon(omega) => Ok(omega),
            Input::Tile(_) => Err(CliError::Data(format!("the {what} target needs a polygonal-set JSON input"))),
        }
    };
    let svg = match target {
        Target::Polygon => {
            let omega = polygon("polygon")?;
            let (lo, hi) = omega.bounding_box();
            render_polygon(
                &omega,
                &RenderSpec { target: RenderTarget::Polygon, viewport: view::padded(&lo, &hi), cell_pixels: px },
            )
        }
        Target::Partition => {
            let omega = polygon("partition")?;
            let part = polytile_core::discretize::unit_cell_partition(&omega);
            render_partition(
                &part,
                &RenderSpec { target: RenderTarget::Partition, viewport: view::unit_square(), cell_pixels: px },
            )
        }
        Target::Discrete => {
            let tile = input::to_tile(input::load(input)?);
            let n = tile.scale();
            let corner =
                |p: ZPoint| RPoint::new(polytile_core::geometry::ratio(p.x, n), polytile_core::geometry::ratio(p.y, n));
            let lo = tile.points().iter().copied().reduce(|a, b| ZPoint::new(a.x.min(b.x), a.y.min(b.y))).unwrap();
            let hi = tile.points().iter().copied().reduce(|a, b| ZPoint::new(a.x.max(b.x), a.y.max(b.y))).unwrap();
            let viewport =
                Viewport::around([&corner(lo), &corner(hi + ZPoint::new(1, 1))], &polytile_core::geometry::ratio(1, n));
            render_discrete(&tile, &RenderSpec { target: RenderTarget::DiscreteTile, viewport, cell_pixels: px })
        }
        Target::Tiling | Target::Plates => {
            let tiling = tiling.ok_or_else(|| CliError::Usage("--tiling is required for this target".into()))?;
            let earthquake = match target {
                Target::Plates => Some(
                    earthquake
                        .ok_or_else(|| CliError::Usage("--earthquake is required for the plates target".into()))?,
                ),
                _ => None,
            };
            let subject: Subject = input::subject(input, tiling)?;
            if let Some(msg) = analyze::check(&subject)? {
                eprintln!("{msg}");
                return Ok(1);
            }
            view::tiling_svg(&subject, earthquake, px)?
        }
    };
    emit(output, &svg)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Discretize { input, output, svg } => cmd_discretize(&input, output.as_deref(), svg.as_deref()),
        Command::Decide { input, budget, resume, state, emit_certificate } => {
            cmd_decide(&input, budget, resume.as_deref(), state.as_deref(), emit_certificate.as_deref())
        }
        Command::Analyze { input, tiling, earthquake, svg } => cmd_analyze(&input, &tiling, earthquake, svg.as_deref()),
        Command::Verify { input, tiling } => cmd_verify(&input, &tiling),
        Command::Render { input, target, tiling, earthquake, cell_pixels, output } => {
            cmd_render(&input, target, tiling.as_deref(), earthquake, cell_pixels, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(e)) => {
            eprintln!("polytile: {e}");
            ExitCode::from(e.code())
        }
        Err(_) => ExitCode::from(70),
    }
}
