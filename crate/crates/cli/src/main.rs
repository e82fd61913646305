use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellfib::field::FieldKind;
use ellfib::report::{self, ExplicitSpectral, ReportEnvelope, SelftestPayload};
use ellfib::rootsys::CartanType;
use ellfib::Error;

/// Principal bundles on elliptic curves: WPS atlas, strata, quotient maps,
/// and SL(n) spectral covers.
#[derive(Parser)]
#[command(name = "ellfib", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Weights and degrees of the weighted projective moduli space.
    WpsTable {
        /// "all", series letters, or explicit types such as "B3,G2".
        #[arg(long = "type", default_value = "all")]
        types: String,
        #[arg(long, default_value_t = 8)]
        rank: usize,
    },
    /// Root subsystem cut out by the images of the fundamental coweights.
    Strata {
        #[arg(long = "type")]
        cartan_type: CartanType,
        #[command(flatten)]
        curve: CurveArgs,
        /// Images, "x,y;x,y;O"; omit with --scan.
        #[arg(long, required_unless_present = "scan")]
        points: Option<String>,
        /// Enumerate every assignment over F_p instead.
        #[arg(long)]
        scan: bool,
    },
    /// SL(n) Abel–Jacobi image of n points summing to the origin.
    AbelJacobi {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        points: String,
    },
    /// Branch divisor, genus, Prym and moduli dimensions of a spectral cover.
    SpectralReport {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coefficients of b2 from the constant term up, e.g. "1,-2,3,0,1".
        #[arg(long, requires_all = ["b3", "section"])]
        b2: Option<String>,
        #[arg(long)]
        b3: Option<String>,
        /// Section coefficients after the constant monomial, ";"-separated.
        #[arg(long)]
        section: Option<String>,
        #[arg(long)]
        selfcheck: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Args)]
struct CurveArgs {
    /// "b2,b3" for y^2 = x^3 + b2 x + b3.
    #[arg(long)]
    curve: String,
    /// "q" or "p:<prime>".
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: FieldKind,
}

fn parse_field(s: &str) -> Result<FieldKind, String> {
    FieldKind::parse(s).map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<ReportEnvelope, Error> {
    match &cli.command {
        Command::WpsTable { types, rank } => report::cmd_wps_table(types, *rank),
        Command::Strata {
            cartan_type,
            curve,
            points,
            scan,
        } => {
            if *scan {
                let FieldKind::Prime(p) = curve.field else {
                    return Err(Error::Input("--scan needs --field p:<prime>".into()));
                };
                report::cmd_strata_scan(*cartan_type, p, &curve.curve)
            } else {
                report::cmd_strata(*cartan_type, curve.field, &curve.curve, points.as_deref().unwrap_or(""))
            }
        }
        Command::AbelJacobi { curve, points } => report::cmd_abel_jacobi(curve.field, &curve.curve, points),
        Command::SpectralReport {
            n,
            k,
            seed,
            b2,
            b3,
            section,
            selfcheck,
        } => {
            let explicit = match (b2, b3, section) {
                (Some(b2), Some(b3), Some(sec)) => Some(ExplicitSpectral {
                    b2: b2.clone(),
                    b3: b3.clone(),
                    section: sec.split(';').map(|s| s.trim().to_string()).collect(),
                }),
                _ => None,
            };
            report::cmd_spectral_report(*n, *k, *seed, explicit.as_ref(), *selfcheck)
        }
        Command::Selftest { seed } => report::cmd_selftest(*seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let env = match run(&cli) {
        Ok(env) => env,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match cli.format {
        Format::Json => println!("{}", env.to_json()),
        Format::Md => print!("{}", env.to_markdown()),
    }
    if env.command == "selftest" {
        match env.payload_as::<SelftestPayload>() {
            Ok(p) if p.all_passed => {}
            Ok(p) => {
                eprintln!("selftest failed at {}", p.first_failure.unwrap_or_default());
                return ExitCode::from(3);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
        }
    }
    ExitCode::SUCCESS
}
