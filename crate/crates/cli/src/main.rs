use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mori_core::bounds::BoundOptions;
use mori_core::catalog;
use mori_core::config::{DistanceMode, DEFAULT_MAX_SUBSET};
use mori_core::cone::DEFAULT_FACE_CAP;
use mori_core::dot::export_dot;
use mori_core::exact::{parse_rational, Rational};
use mori_core::oriented::ThreefoldFlags;
use mori_core::report::{self, Report};
use mori_core::schema::{parse_document, render_document, Document};
use mori_core::Error;

#[derive(Parser)]
#[command(name = "mori", version, about = "Exact analysis of curve and extremal-ray configurations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write a DOT rendering of the input document to this path.
    #[arg(long, value_name = "PATH", global = true)]
    dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Induced,
    Ambient,
}

impl From<Mode> for DistanceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Induced => DistanceMode::Induced,
            Mode::Ambient => DistanceMode::Ambient,
        }
    }
}

#[derive(Args)]
struct Enumeration {
    /// Largest subset size examined.
    #[arg(long, default_value_t = DEFAULT_MAX_SUBSET)]
    max_subset: usize,
    /// Where distances inside a subset are measured.
    #[arg(long, value_enum, default_value_t = Mode::Induced)]
    distance_mode: Mode,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, graph statistics and the subset inventory.
    Classify {
        /// Catalog name or JSON file.
        input: String,
        #[command(flatten)]
        enumeration: Enumeration,
    },
    /// Nef cone, vertex kinds, face polynomial and face averages.
    Cone {
        input: String,
        /// Largest rank accepted.
        #[arg(long, default_value_t = DEFAULT_FACE_CAP)]
        cap: usize,
    },
    /// Narrow-parts search and an ample candidate.
    Narrow { input: String },
    /// Diagram-Method constants and Picard-number bounds.
    Bounds {
        input: String,
        #[command(flatten)]
        enumeration: Enumeration,
        /// Override the diameter constant d.
        #[arg(long)]
        d: Option<usize>,
        /// Override C1 (integer or p/q).
        #[arg(long, value_parser = rational_arg)]
        c1: Option<Rational>,
        /// Override C2 (integer or p/q).
        #[arg(long, value_parser = rational_arg)]
        c2: Option<Rational>,
    },
    /// Family and E-set recognition with the 3-fold bound exceptions.
    Cy3 {
        input: String,
        /// Largest subset size examined.
        #[arg(long, default_value_t = DEFAULT_MAX_SUBSET)]
        max_subset: usize,
        /// Some extremal ray is small.
        #[arg(long)]
        small_ray: bool,
        /// Some face of NE has Kodaira dimension at most 2.
        #[arg(long)]
        low_kodaira_face: bool,
        /// Some rational nef D has D^3 = 0.
        #[arg(long)]
        nef_d3_zero: bool,
        /// The Mori cone is not finite polyhedral.
        #[arg(long)]
        cone_not_finite: bool,
    },
    /// List catalog entries, or print one as a document.
    Catalog { name: Option<String> },
    /// DOT rendering of a document (stdout unless --dot is given).
    Export { input: String },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("{s:?} is not an integer or p/q rational"))
}

fn load(input: &str) -> Result<Document, Error> {
    if catalog::catalog_names().iter().any(|n| n == input) {
        return catalog::load_catalog(input);
    }
    let path = Path::new(input);
    if !path.is_file() {
        return Err(Error::Invalid(format!("{input}: neither a catalog entry nor a readable file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{input}: {e}")))?;
    parse_document(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{input}: {msg}")),
        other => other,
    })
}

fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report::render_text(report),
        Format::Json => report::render_json(report),
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    let (doc, out) = match cli.command {
        Command::Classify { input, enumeration } => {
            let doc = load(&input)?;
            let r = report::classify_report(&doc, enumeration.max_subset, enumeration.distance_mode.into())?;
            (Some(doc), emit(&r, cli.format))
        }
        Command::Cone { input, cap } => {
            let doc = load(&input)?;
            let r = report::cone_report(&doc, cap)?;
            (Some(doc), emit(&r, cli.format))
        }
        Command::Narrow { input } => {
            let doc = load(&input)?;
            let r = report::narrow_report(&doc)?;
            (Some(doc), emit(&r, cli.format))
        }
        Command::Bounds { input, enumeration, d, c1, c2 } => {
            let doc = load(&input)?;
            let opts = BoundOptions {
                max_subset: enumeration.max_subset,
                d,
                c1,
                c2,
                distance_mode: enumeration.distance_mode.into(),
            };
            let r = report::bounds_report(&doc, &opts)?;
            (Some(doc), emit(&r, cli.format))
        }
        Command::Cy3 { input, max_subset, small_ray, low_kodaira_face, nef_d3_zero, cone_not_finite } => {
            let doc = load(&input)?;
            let flags = ThreefoldFlags {
                has_small_ray: small_ray,
                has_low_kodaira_face: low_kodaira_face,
                has_nef_d_with_d3_zero: nef_d3_zero,
                cone_finite: !cone_not_finite,
            };
            let r = report::cy3_report(&doc, max_subset, flags)?;
            (Some(doc), emit(&r, cli.format))
        }
        Command::Catalog { name: Some(name) } => {
            let doc = catalog::load_catalog(&name)?;
            let text = render_document(&doc);
            (Some(doc), text)
        }
        Command::Catalog { name: None } => (None, emit(&report::catalog_list()?, cli.format)),
        Command::Export { input } => {
            let doc = load(&input)?;
            let dot = export_dot(&doc)?;
            if cli.dot.is_some() {
                (Some(doc), String::new())
            } else {
                (None, dot)
            }
        }
    };
    if let Some(path) = &cli.dot {
        let doc = doc.ok_or_else(|| Error::Invalid("--dot needs an input document".into()))?;
        let dot = export_dot(&doc)?;
        std::fs::write(path, dot).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
