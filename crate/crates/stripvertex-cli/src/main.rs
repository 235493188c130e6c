use clap::{Args, Parser, Subcommand};

use stripvertex::schur::Convention;
use stripvertex_cli::{
    cmd_bps, cmd_expand, cmd_log, cmd_open, cmd_verify_dp3, load_geometry, parse_bound_spec,
    parse_contact_spec, CliError, OutputFormat, RunConfig, RunOutput,
};

/// Exact curve counts on toric strip geometries: open and logarithmic
/// generating functions through the topological vertex, BPS tables with
/// integrality verdicts, and the built-in closed-form verification run.
#[derive(Parser)]
#[command(name = "stripvertex", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Geometry preset name (dp3-0-2) or path to a geometry JSON file.
    #[arg(long, default_value = "dp3-0-2")]
    geometry: String,

    /// Specialization convention: minus (default) or plus (its q -> 1/q
    /// mirror).
    #[arg(long, default_value = "minus")]
    convention: String,

    /// Output format: json or csv.
    #[arg(long, default_value = "json")]
    format: String,

    /// Emit per-genus expansions up to this genus.
    #[arg(long)]
    genus: Option<usize>,

    /// Worker threads; output is byte-identical for any value.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct RangeArgs {
    /// Box bound on class coordinates, comma separated, e.g. 2,2,1.
    #[arg(long)]
    bound: Option<String>,

    /// Bound on the total degree of enumerated classes.
    #[arg(long)]
    total_degree: Option<i64>,
}

#[derive(Subcommand)]
enum Command {
    /// Connected open generating functions per curve class.
    Open {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Boundary winding number.
        #[arg(long, default_value_t = 1)]
        winding: i64,
    },
    /// Logarithmic generating functions per surface class.
    Log {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Contact specification m[:c1,...,cn]; m interior markings.
        #[arg(long, default_value = "1")]
        contact: String,
    },
    /// BPS invariants with integrality verdicts; exits 1 when any fails.
    Bps {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Contact specification m[:c1,...,cn]; m interior markings.
        #[arg(long, default_value = "1")]
        contact: String,
    },
    /// Compare the vertex pipeline against the built-in closed form.
    VerifyDp3 {
        #[command(flatten)]
        common: CommonArgs,
        /// Bound on the total surface degree of verified classes.
        #[arg(long, default_value_t = 6)]
        total_degree: i64,
    },
    /// Expand a serialized rational function into an hbar-series.
    Expand {
        /// Inline JSON in the rational-function wire format, or @path.
        #[arg(long)]
        value: String,
        /// Power of i multiplying the value.
        #[arg(long, default_value_t = 0)]
        i_power: i64,
        /// Highest retained hbar exponent.
        #[arg(long, default_value_t = 5)]
        order: i64,
        /// Output format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn build_config(common: &CommonArgs) -> Result<RunConfig, CliError> {
    let geometry = load_geometry(&common.geometry)?;
    let convention: Convention = common
        .convention
        .parse()
        .map_err(|e: stripvertex::Error| CliError::Input(e.to_string()))?;
    let format: OutputFormat = common.format.parse()?;
    if common.jobs == 0 {
        return Err(CliError::Input("--jobs must be >= 1".into()));
    }
    Ok(RunConfig {
        geometry,
        convention,
        format,
        genus: common.genus,
        jobs: common.jobs,
    })
}

fn parse_contact(spec: &str) -> Result<usize, CliError> {
    let (m, tangencies) = parse_contact_spec(spec)?;
    if tangencies.is_some() {
        return Err(CliError::Input(
            "table commands determine the single tangency order per class from the winding; \
             pass only the interior-marking count, e.g. --contact 1"
                .into(),
        ));
    }
    Ok(m)
}

fn run() -> Result<RunOutput, CliError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Open {
            common,
            range,
            winding,
        } => {
            let config = build_config(common)?;
            let bound = range.bound.as_deref().map(parse_bound_spec).transpose()?;
            cmd_open(&config, *winding, bound.as_deref(), range.total_degree)
        }
        Command::Log {
            common,
            range,
            contact,
        } => {
            let config = build_config(common)?;
            let m = parse_contact(contact)?;
            let bound = range.bound.as_deref().map(parse_bound_spec).transpose()?;
            cmd_log(&config, m, bound.as_deref(), range.total_degree)
        }
        Command::Bps {
            common,
            range,
            contact,
        } => {
            let config = build_config(common)?;
            let m = parse_contact(contact)?;
            let bound = range.bound.as_deref().map(parse_bound_spec).transpose()?;
            cmd_bps(&config, m, bound.as_deref(), range.total_degree)
        }
        Command::VerifyDp3 {
            common,
            total_degree,
        } => {
            let config = build_config(common)?;
            cmd_verify_dp3(&config, *total_degree)
        }
        Command::Expand {
            value,
            i_power,
            order,
            format,
        } => cmd_expand(value, *i_power, *order, format.parse()?),
    }
}

fn main() {
    match run() {
        Ok(output) => {
            print!("{}", output.stdout);
            if !output.stdout.ends_with('\n') {
                println!();
            }
            if let Some(failure) = output.failure {
                eprintln!("verification failed: {failure}");
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}
