mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "pencil", version, about = "Exact noncommutative algebra: Gröbner bases, normal elements, Frobenius classification")]
struct Cli {
    /// Degree bound for truncated Gröbner completion.
    #[arg(long, global = true, default_value_t = 12)]
    degree_bound: u32,
    /// Base field (Q, Q(sqrt(d)) or F(p)); replaces the `field` line of an input presentation.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Parse a presentation file and print it in canonical form.
    Parse { file: String },
    /// Gröbner basis, completeness flag and Hilbert data.
    Gb { file: String },
    /// Hilbert series coefficients, and the rational function when the basis is complete.
    Hilbert {
        file: String,
        #[arg(long)]
        degrees: Option<u32>,
    },
    /// Congruence class of a single quadratic relation in two generators.
    ClassifyRel { file: String },
    /// Quadratic dual and the dual Hilbert identity.
    Dual { file: String },
    /// The 4-dimensional algebra C(S/(f)).
    Clifford {
        file: String,
        /// Central element f of the 3-generator algebra in FILE.
        #[arg(long, conflicts_with = "pencil")]
        element: Option<String>,
        /// Treat FILE as a commutative pencil B and use this quadric as the extra generator.
        #[arg(long)]
        pencil: Option<String>,
    },
    /// Certify that an element is normal, with its normalizing automorphism.
    NormalCheck { file: String, element: String },
    /// Print the normalizing automorphism of a normal element.
    Nu { file: String, element: String },
    /// All homogeneous normal elements of one degree over a prime field, up to scalar.
    NormalSearch {
        file: String,
        #[arg(long)]
        degree: u32,
        /// Also compute admissible lower-degree terms.
        #[arg(long)]
        inhomogeneous: bool,
    },
    /// Strongly regular normal sequence check for (f, g).
    SrnsCheck { file: String, f: String, g: String },
    /// Replay a witness chain, or look for an inequivalence proof when the file has no steps.
    StVerify {
        #[arg(long)]
        chain: String,
    },
    /// Homogenize the relations of a commutative presentation.
    Homogenize { file: String },
    /// Dehomogenize a graded algebra at a regular linear form.
    Dehomogenize {
        file: String,
        /// Linear form to invert; found by search when omitted.
        #[arg(long)]
        at: Option<String>,
    },
    /// Structure of a finite-dimensional algebra.
    Findim { file: String },
    /// Frobenius test with a witnessing functional.
    Frobenius { file: String },
    /// Label a 4-dimensional Frobenius algebra.
    Classify4 { file: String },
    /// Check an explicit isomorphism given as JSON {source, target, images}.
    IsoVerify { file: String },
    /// Recompute a table from the golden data.
    Reproduce {
        #[arg(long)]
        table: Option<u32>,
    },
    /// Replay a certificate.
    Verify { certificate: String },
}

pub struct Ctx {
    pub bound: u32,
    pub field: Option<String>,
    pub seed: u64,
}

/// What a command prints, and its exit code.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { bound: cli.degree_bound, field: cli.field, seed: cli.seed };
    match commands::run(&ctx, cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = commands::error_code(&e);
            if cli.format == Format::Json {
                println!("{}", serde_json::json!({ "error": format!("{e:#}") }));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
