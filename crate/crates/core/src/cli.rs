//! Command-line front end. Output is plain ASCII with LF newlines so it can
//! be compared byte for byte.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::group::{group_from_expr, parse_group_table, serialize_group, AssocCheck, FiniteGroup};
use crate::harness::{build_catalog_for, default_max_order, verify_theorems, Status};
use crate::omega::{omega_filtration, psi_brute};
use crate::psi::{order_bijection, predict_order, relation_symbol, BijectionOutcome};
use crate::{is_cp2_pairwise, Psi};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "psigroups",
    about = "Element-order sums and Omega filtrations of finite p-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sum of element orders
    Psi { expr: String },
    /// Omega-set and Omega-subgroup sizes per level
    Omega { expr: String },
    /// CP2 membership with a witness on failure
    Cp2 { expr: String },
    /// Element order spectrum
    Spectrum { expr: String },
    /// Compare psi of two groups of the same order
    Compare { p: String, q: String },
    /// Build the catalog and run every property suite
    Verify {
        /// Prime (repeatable)
        #[arg(long = "p", required = true)]
        primes: Vec<u64>,
        /// Largest group order; defaults to 256 / 243 / 125 for p = 2 / 3 / 5
        #[arg(long = "max-order")]
        max_order: Option<usize>,
    },
    /// Write a group's table in GT1 format
    Export {
        expr: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a single-group subcommand on a GT1 file
    Import {
        path: PathBuf,
        /// Check associativity on every triple even for large tables
        #[arg(long)]
        check_assoc: bool,
        #[command(subcommand)]
        action: GroupAction,
    },
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum GroupAction {
    Psi,
    Omega,
    Cp2,
    Spectrum,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io_fail(e: std::io::Error) -> Failure {
    Failure::usage(e)
}

fn load(expr: &str) -> Result<FiniteGroup, Failure> {
    group_from_expr(expr).map_err(Failure::usage)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Psi { expr } => group_action(GroupAction::Psi, &load(&expr)?, out),
        Command::Omega { expr } => group_action(GroupAction::Omega, &load(&expr)?, out),
        Command::Cp2 { expr } => group_action(GroupAction::Cp2, &load(&expr)?, out),
        Command::Spectrum { expr } => group_action(GroupAction::Spectrum, &load(&expr)?, out),
        Command::Compare { p, q } => compare(&load(&p)?, &load(&q)?, out),
        Command::Verify { primes, max_order } => verify(&primes, max_order, out),
        Command::Export { expr, out: path } => {
            let g = load(&expr)?;
            std::fs::write(&path, serialize_group(&g)).map_err(io_fail)?;
            writeln!(
                out,
                "wrote {} (order {}) to {}",
                g.name(),
                g.order(),
                path.display()
            )
            .map_err(io_fail)?;
            Ok(EXIT_OK)
        }
        Command::Import {
            path,
            check_assoc,
            action,
        } => {
            let g = import(&path, check_assoc)?;
            group_action(action, &g, out)
        }
    }
}

fn import(path: &Path, check_assoc: bool) -> Result<FiniteGroup, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let mode = if check_assoc {
        AssocCheck::Exhaustive
    } else {
        AssocCheck::Auto
    };
    parse_group_table(name, &text, mode)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn group_action(action: GroupAction, g: &FiniteGroup, out: &mut dyn Write) -> CmdResult {
    let mut text = String::new();
    match action {
        GroupAction::Psi => {
            let psi: Psi = psi_brute(g).map_err(Failure::usage)?;
            text.push_str(&format!("psi({}) = {psi}\n", g.name()));
        }
        GroupAction::Omega => {
            let f = omega_filtration(g).map_err(Failure::usage)?;
            for (i, level) in f.levels.iter().enumerate() {
                text.push_str(&format!(
                    "i={i} set={} gen={}\n",
                    level.set_size, level.subgroup_size
                ));
            }
        }
        GroupAction::Cp2 => {
            let report = is_cp2_pairwise(g);
            match report.witness {
                None => text.push_str("CP2: yes\n"),
                Some(w) => text.push_str(&format!("CP2: no\nwitness: {w}\n")),
            }
        }
        GroupAction::Spectrum => {
            let pairs: Vec<String> = g
                .order_spectrum()
                .iter()
                .map(|(o, c)| format!("{o}:{c}"))
                .collect();
            text.push_str(&pairs.join(" "));
            text.push('\n');
        }
    }
    out.write_all(text.as_bytes()).map_err(io_fail)?;
    Ok(EXIT_OK)
}

fn compare(p: &FiniteGroup, q: &FiniteGroup, out: &mut dyn Write) -> CmdResult {
    let cmp = predict_order(p, q).map_err(Failure::usage)?;
    let bijection = order_bijection(p, q).map_err(Failure::usage)?;
    let mut lines = vec![
        format!("P = {}", p.name()),
        format!("Q = {}", q.name()),
        format!("psi(P) = {}", cmp.psi_p),
        format!("psi(Q) = {}", cmp.psi_q),
        format!("relation: psi(P) {} psi(Q)", relation_symbol(cmp.relation)),
        format!("theorem: {}", cmp.theorem_note),
    ];
    lines.extend(
        cmp.hypothesis_log
            .iter()
            .map(|h| format!("hypothesis: {h}")),
    );
    lines.push(match bijection {
        BijectionOutcome::Found(_) => "bijection: yes".to_string(),
        BijectionOutcome::Mismatch {
            order,
            count_p,
            count_q,
        } => format!("bijection: no (order {order}: {count_p} vs {count_q})"),
    });
    let code = if cmp.prediction_holds() == Some(false) {
        lines.push("VIOLATION: prediction disagrees with the actual relation".into());
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    for l in lines {
        writeln!(out, "{l}").map_err(io_fail)?;
    }
    Ok(code)
}

fn verify(primes: &[u64], max_order: Option<usize>, out: &mut dyn Write) -> CmdResult {
    let specs: Vec<(u64, usize)> = primes
        .iter()
        .map(|&p| (p, max_order.unwrap_or_else(|| default_max_order(p))))
        .collect();
    let cat = build_catalog_for(&specs).map_err(Failure::usage)?;
    let reports = verify_theorems(&cat);
    writeln!(out, "catalog: {} groups", cat.len()).map_err(io_fail)?;
    for r in &reports {
        writeln!(out, "{r}").map_err(io_fail)?;
    }
    let count = |s| reports.iter().filter(|r| r.status() == s).count();
    let violated = count(Status::Violated);
    writeln!(
        out,
        "summary: {} verified, {} vacuous, {violated} violated",
        count(Status::Verified),
        count(Status::Vacuous)
    )
    .map_err(io_fail)?;
    Ok(if violated == 0 {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}
