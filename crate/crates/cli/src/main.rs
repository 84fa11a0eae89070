use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand};
use twobridge::report::{Aggregate, Format, PairReport, RowWriter};
use twobridge::svg::{self, RENDER_BOUND};
use twobridge::verify::verify_range;
use twobridge_core::audit::{AuditBounds, QMode};
use twobridge_core::{audit_all, decompose, trace_principal_underarc, AdmissiblePair};

#[derive(Parser)]
#[command(name = "twobridge", version, about = "Two-bridge knot invariants and exhaustive lemma audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the full invariant record of one pair as JSON.
    Info { p: u64, q: u64 },
    /// Audit every admissible pair up to a bound.
    Verify(RangeArgs),
    /// Like `verify`, without the move-neighbour checks.
    Audit(RangeArgs),
    /// Print the T1/T2/T3 word producing the pair from (1,1).
    Decompose { p: u64, q: u64 },
    /// Render the extended diagram as SVG.
    Svg {
        p: u64,
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct RangeArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_p: u64,
    /// Use every odd q up to N instead of the canonical range 0 < q < 2p.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    full_q: Option<u64>,
    /// Worker threads (default: available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stop after this many pairs; the report is then marked incomplete.
    #[arg(long)]
    max_pairs: Option<u64>,
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn pair_arg(p: u64, q: u64) -> AdmissiblePair {
    AdmissiblePair::new(p, q).unwrap_or_else(|e| usage_error(e))
}

fn open_out(path: &Option<PathBuf>) -> Box<dyn Write> {
    match path {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => usage_error(format_args!("cannot write {}: {e}", path.display())),
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    }
}

fn info(p: u64, q: u64) -> ExitCode {
    let audit = audit_all(pair_arg(p, q));
    let Some(report) = PairReport::from_audit(&audit) else {
        for o in audit.outcomes.iter().filter(|o| !o.passed) {
            eprintln!("{o}");
        }
        return ExitCode::from(1);
    };
    println!("{}", report.to_json());
    if audit.all_passed() {
        ExitCode::SUCCESS
    } else {
        for o in audit.outcomes.iter().filter(|o| !o.passed) {
            eprintln!("{o}");
        }
        ExitCode::from(1)
    }
}

fn verify(args: RangeArgs, move_checks: bool) -> ExitCode {
    let bounds = AuditBounds {
        max_p: args.max_p,
        q_mode: match args.full_q {
            Some(max_q) => QMode::Full { max_q },
            None => QMode::Canonical,
        },
        pair_budget: args.max_pairs,
        move_checks,
    };
    let started = Instant::now();
    let v = verify_range(bounds, args.jobs.map(|j| j as usize)).unwrap_or_else(|e| usage_error(e));
    let elapsed_ms = started.elapsed().as_millis();

    let aggregate = Aggregate::from(&v.report);
    let written = (|| {
        let mut w = RowWriter::new(args.format, open_out(&args.out))?;
        for row in &v.rows {
            w.row(row)?;
        }
        w.finish(&aggregate)
    })();
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(2);
    }

    let range = match bounds.q_mode {
        QMode::Canonical => "0<q<2p".to_owned(),
        QMode::Full { max_q } => format!("q<={max_q}"),
    };
    let summary = format!(
        "{} {} pairs (p<={}, {range}) in {elapsed_ms} ms; failures: {}; T2 bottom-sequence formula: {}{}",
        if move_checks { "verified" } else { "audited" },
        v.report.pairs_audited,
        bounds.max_p,
        v.report.failure_count(),
        aggregate.resolved_t2_formula.as_deref().unwrap_or("not checked"),
        if v.report.complete { "" } else { "; INCOMPLETE (pair budget reached)" },
    );
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }

    if v.report.all_passed() {
        ExitCode::SUCCESS
    } else {
        for line in &aggregate.failure_details {
            eprintln!("{line}");
        }
        ExitCode::from(1)
    }
}

fn render_svg(p: u64, q: u64, out: Option<PathBuf>) -> ExitCode {
    let x = pair_arg(p, q);
    if p + q > RENDER_BOUND {
        usage_error(format_args!("p+q = {} exceeds the render bound {RENDER_BOUND}", p + q));
    }
    let trace = match trace_principal_underarc(x) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let doc = svg::render(&trace);
    let mut w = open_out(&out);
    if let Err(e) = w.write_all(doc.as_bytes()).and_then(|_| w.flush()) {
        eprintln!("error: writing svg: {e}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        if !e.use_stderr() {
            e.exit();
        }
        let text = e.render().to_string();
        eprint!("{text}");
        if !text.contains("Usage:") {
            eprintln!("\n{}", Cli::command().render_usage());
        }
        std::process::exit(2);
    });
    match cli.command {
        Command::Info { p, q } => info(p, q),
        Command::Verify(args) => verify(args, true),
        Command::Audit(args) => verify(args, false),
        Command::Decompose { p, q } => {
            println!("{}", decompose(pair_arg(p, q)));
            ExitCode::SUCCESS
        }
        Command::Svg { p, q, out } => render_svg(p, q, out),
    }
}
