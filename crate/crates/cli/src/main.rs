use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use endoperm_core::brauer_tree::{star, BrauerTree};
use endoperm_core::dade::{dade_add, lift_character, psi, w_module, DadeElement};
use endoperm_core::descriptor::{emit_descriptor, parse_descriptor, DescriptorFile};
use endoperm_core::oracle::{CAPACITY_ENV, DEFAULT_CAPACITY};
use endoperm_core::report::{self, Format};
use endoperm_core::verify::{verify, Suite};
use endoperm_core::{GroupSpec, OracleConfig};

/// Endo-permutation sources of blocks with cyclic defect groups.
#[derive(Parser)]
#[command(name = "endoperm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormatArg {
    /// Output rendering.
    #[arg(long, default_value = "human", value_parser = parse_format)]
    format: Format,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Subcommand)]
enum Command {
    /// Determine W(B) for every block in a descriptor file.
    Infer {
        /// Descriptor file, or `-` for standard input.
        file: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run the oracle sweeps for C_{p^ell}.
    Verify {
        p: u64,
        ell: u32,
        /// Restrict to the named suites (repeatable).
        #[arg(long = "suite", value_parser = parse_suite)]
        suites: Vec<Suite>,
        /// Largest number of matrix entries the oracle may allocate.
        #[arg(long, env = CAPACITY_ENV, default_value_t = DEFAULT_CAPACITY)]
        oracle_cap: u128,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Brauer tree validation and comparison.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Arithmetic in the Dade group; elements are bit strings alpha_0..alpha_{ell-1}.
    #[command(subcommand)]
    Dade(DadeCommand),
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

#[derive(Subcommand)]
enum TreeCommand {
    /// List the violated invariants of every tree in a file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Report similarity and planar isomorphism of two trees, named by label or index.
    Compare {
        file: PathBuf,
        a: String,
        b: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Print the star with e edges and multiplicity m as a descriptor file.
    EmitStar {
        e: usize,
        m: BigUint,
        p: u64,
        ell: u32,
    },
}

#[derive(Subcommand)]
enum DadeCommand {
    /// Sum of the given elements.
    Add {
        p: u64,
        ell: u32,
        alphas: Vec<String>,
    },
    /// Sign vector, and the lift character for odd p.
    Signs { p: u64, ell: u32, alpha: String },
    /// Jordan size of W_D(alpha).
    Module { p: u64, ell: u32, alpha: String },
}

/// Exit code for unusable input, matching clap's usage errors.
const USAGE: u8 = 2;

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(USAGE)
}

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn load(path: &PathBuf, format: Format) -> Result<DescriptorFile, ExitCode> {
    let text = read_input(path).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    parse_descriptor(&text).map_err(|errors| {
        let rendered = report::render_parse_errors(&errors, format);
        match format {
            Format::Human => eprint!("{rendered}"),
            Format::JsonLines => print!("{rendered}"),
        }
        ExitCode::from(USAGE)
    })
}

fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn group(p: u64, ell: u32) -> Result<GroupSpec, ExitCode> {
    GroupSpec::new(p, ell).map_err(fail)
}

fn find_tree<'a>(file: &'a DescriptorFile, key: &str) -> Option<(String, &'a BrauerTree)> {
    file.trees
        .iter()
        .find(|t| t.label.as_deref() == Some(key))
        .or_else(|| key.parse::<usize>().ok().and_then(|k| file.trees.get(k)))
        .map(|t| (key.to_string(), t))
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Infer { file, format } => {
            let format = format.format;
            let descriptors = load(&file, format)?;
            let records = report::infer_records(&descriptors);
            emit(&report::render_infer(&records, format));
            let failed = records.iter().any(|r| r.outcome.is_err());
            Ok(ExitCode::from(failed as u8))
        }
        Command::Verify {
            p,
            ell,
            suites,
            oracle_cap,
            format,
        } => {
            let g = group(p, ell)?;
            let suites = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites
            };
            let report =
                verify(&g, &suites, &OracleConfig::with_capacity(oracle_cap)).map_err(fail)?;
            emit(&report::render_verify(&report, format.format));
            Ok(ExitCode::from(!report.passed() as u8))
        }
        Command::Tree(TreeCommand::Check { file, format }) => {
            let descriptors = load(&file, format.format)?;
            let (text, valid) = report::render_tree_check(&descriptors.trees, format.format);
            emit(&text);
            Ok(ExitCode::from(!valid as u8))
        }
        Command::Tree(TreeCommand::Compare { file, a, b, format }) => {
            let descriptors = load(&file, format.format)?;
            let ta =
                find_tree(&descriptors, &a).ok_or_else(|| fail(format!("no tree named {a:?}")))?;
            let tb =
                find_tree(&descriptors, &b).ok_or_else(|| fail(format!("no tree named {b:?}")))?;
            let (text, ok) =
                report::render_tree_compare((&ta.0, ta.1), (&tb.0, tb.1), format.format);
            emit(&text);
            Ok(ExitCode::from(!ok as u8))
        }
        Command::Tree(TreeCommand::EmitStar { e, m, p, ell }) => {
            let g = group(p, ell)?;
            let mut tree = star(e, m, g).map_err(fail)?.into_tree();
            tree.label = Some(format!("star-{e}"));
            emit(&emit_descriptor(&DescriptorFile {
                blocks: Vec::new(),
                trees: vec![tree],
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Dade(cmd) => dade(cmd),
    }
}

fn element(g: &GroupSpec, bits: &str) -> Result<DadeElement, ExitCode> {
    DadeElement::parse(g.clone(), bits).map_err(fail)
}

fn dade(cmd: DadeCommand) -> Result<ExitCode, ExitCode> {
    match cmd {
        DadeCommand::Add { p, ell, alphas } => {
            let g = group(p, ell)?;
            let mut acc = DadeElement::zero(g.clone());
            for a in &alphas {
                acc = dade_add(&acc, &element(&g, a)?).map_err(fail)?;
            }
            println!("{acc}");
        }
        DadeCommand::Signs { p, ell, alpha } => {
            let g = group(p, ell)?;
            let a = element(&g, &alpha)?;
            println!("signs {}", psi(&a));
            if p != 2 {
                let chi = lift_character(&a).map_err(fail)?;
                let values: Vec<String> =
                    chi.layer_values().iter().map(ToString::to_string).collect();
                println!("lift dim {} values ({})", chi.dim(), values.join(","));
            }
        }
        DadeCommand::Module { p, ell, alpha } => {
            let g = group(p, ell)?;
            println!("J_{}", w_module(&element(&g, &alpha)?));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
