//! `comlang` — construct, analyze and classify commutative and
//! partially-commutative regular languages from the command line.
//!
//! Automata travel as JSON files (see the library's json module for the
//! format). Reports are JSON by default; tables can also be rendered as
//! Markdown or CSV. Exit codes: 0 on success, 1 on domain errors (with a
//! machine-readable error object on stderr), 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use comlang::alphabet::Alphabet;
use comlang::bounds::{
    gen_above_nm_pair, gen_coprime_pair, shuffle_ratio_search, verify_bound_with_guard, BoundOp,
    BoundReport,
};
use comlang::check::{run_checks, CheckConfig};
use comlang::commutative::{has_product_form, profile, projection_with_guard};
use comlang::dfa::Dfa;
use comlang::dot::emit_dot;
use comlang::error::Error;
use comlang::expr::{eval_with_guard, parse};
use comlang::group::{
    gen_sharp_group_pair, gen_threshold_language, group_shuffle_bound, PeriodVector,
};
use comlang::json::{dfa_from_json, dfa_to_json};
use comlang::minimize::minimize;
use comlang::partial::{canonical_automaton_with_guard, classify_with_guard, Partition};
use comlang::shuffle::{
    downward_closure_with_guard, downward_interior_with_guard, shuffle_commutative_with_guard,
    shuffle_nfa_with_guard, upward_closure_with_guard, upward_interior_with_guard,
};
use comlang::DEFAULT_STATE_GUARD;

#[derive(Parser)]
#[command(name = "comlang", version, about = "Commutative regular language toolkit")]
struct Cli {
    /// Cap on materialized states in subset and product constructions
    /// (overrides the COMLANG_STATE_GUARD environment variable).
    #[arg(long, global = true)]
    guard: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShuffleMethod {
    Nfa,
    Parikh,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureOp {
    Up,
    Down,
    UpInt,
    DownInt,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Md,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the resulting automaton to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit Graphviz DOT instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize an automaton.
    Min {
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compile an expression to a minimal automaton.
    Eval {
        /// The declared alphabet, e.g. "ab".
        #[arg(long)]
        alphabet: String,
        expr: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Index/period vectors and accepted class tuples of a commutative language.
    Profile { input: PathBuf },
    /// Decide the product-form property.
    ProductForm { input: PathBuf },
    /// Shuffle two automata.
    Shuffle {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "parikh")]
        method: ShuffleMethod,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Subsequence closures and interiors.
    Closure {
        #[arg(long, value_enum)]
        op: ClosureOp,
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Project onto a sub-alphabet.
    Project {
        /// Letters to keep, e.g. "ab".
        #[arg(long)]
        keep: String,
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Canonical automaton for a partition.
    Canonical {
        /// Blocks of concatenated letters joined by '|', e.g. "ac|b".
        #[arg(long)]
        partition: String,
        input: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Classify a language against the partition's subclasses.
    Classify {
        #[arg(long)]
        partition: String,
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
    /// The gcd/lcm shuffle bound for group languages.
    GroupBounds {
        /// Period vector of the left language, e.g. "2,2".
        #[arg(long)]
        p: String,
        /// Period vector of the right language, e.g. "3,3".
        #[arg(long)]
        q: String,
    },
    /// Generate worst-case families.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Verify state-complexity bounds over a family, as a report table.
    Bounds {
        #[arg(long)]
        family: String,
        /// Family parameters, e.g. "2,3".
        #[arg(long, default_value = "")]
        params: String,
        /// Alphabet size for parameterized families.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Input automaton for the closures family.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
        #[arg(long, default_value_t = 0xC0141A6)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        cases: usize,
    },
    /// Run the named invariant suite.
    Check {
        #[arg(long, default_value_t = 0xC0141A6)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        cases: usize,
        /// Include the slow worst-case family checks.
        #[arg(long)]
        slow: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormat,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Coprime pair with shuffle state complexity (pq)^k.
    Coprime {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long)]
        out_u: Option<PathBuf>,
        #[arg(long)]
        out_v: Option<PathBuf>,
    },
    /// Binary pair whose shuffle needs more than n·m states.
    Remark5 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out_u: Option<PathBuf>,
        #[arg(long)]
        out_v: Option<PathBuf>,
    },
    /// Threshold language with sc = ∏(n_j + 1).
    Threshold {
        /// Per-letter thresholds, e.g. "2,3".
        #[arg(long)]
        n: String,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sharp pair for the group-language shuffle bound.
    SharpGroup {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        out_u: Option<PathBuf>,
        #[arg(long)]
        out_v: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guard = cli
        .guard
        .or_else(|| {
            std::env::var("COMLANG_STATE_GUARD")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_STATE_GUARD);
    match run(cli.command, guard) {
        Ok(code) => code,
        Err(e) => {
            let kind = error_kind(&e);
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.to_string(), "kind": kind })
            );
            ExitCode::from(1)
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::StateBlowup(_) => "stateBlowup",
        Error::AlphabetMismatch => "alphabetMismatch",
        Error::LetterNotInAlphabet(_) => "letterNotInAlphabet",
        Error::NotCommutative => "notCommutative",
        Error::EmptyProjectionAlphabet => "emptyProjectionAlphabet",
        Error::NotCoprime(_, _) => "notCoprime",
        Error::NotDistinctPrimes(_, _) => "notDistinctPrimes",
        Error::PreconditionViolation(_) => "preconditionViolation",
        Error::HypothesisViolation(_) => "hypothesisViolation",
        Error::LengthMismatch => "lengthMismatch",
        Error::PartitionAlphabetMismatch(_) => "partitionAlphabetMismatch",
        Error::NotClosedUnderPartition => "notClosedUnderPartition",
        Error::UnreachableState(_) => "unreachableState",
        Error::Syntax { .. } => "syntaxError",
        Error::UndeclaredLetter { .. } => "undeclaredLetter",
        Error::InvalidAutomaton(_) => "invalidAutomaton",
    }
}

fn read_dfa(path: &PathBuf) -> Result<Dfa, Error> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidAutomaton(format!("{}: {e}", path.display())))?;
    dfa_from_json(&src)
}

fn write_dfa(d: &Dfa, output: &OutputArgs) -> Result<(), Error> {
    let text = if output.dot {
        emit_dot(d)
    } else {
        dfa_to_json(d) + "\n"
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidAutomaton(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_pair(
    u: &Dfa,
    v: &Dfa,
    out_u: Option<PathBuf>,
    out_v: Option<PathBuf>,
) -> Result<(), Error> {
    match (out_u, out_v) {
        (Some(pu), Some(pv)) => {
            std::fs::write(&pu, dfa_to_json(u) + "\n")
                .map_err(|e| Error::InvalidAutomaton(format!("{}: {e}", pu.display())))?;
            std::fs::write(&pv, dfa_to_json(v) + "\n")
                .map_err(|e| Error::InvalidAutomaton(format!("{}: {e}", pv.display())))?;
        }
        _ => {
            // compose by hand so the automaton field order stays canonical
            println!("{{\"u\":{},\"v\":{}}}", dfa_to_json(u), dfa_to_json(v));
        }
    }
    Ok(())
}

fn parse_vec(src: &str) -> Result<Vec<u64>, Error> {
    src.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::PreconditionViolation(format!("bad number '{s}'")))
        })
        .collect()
}

fn bound_rows_to_table(rows: &[BoundReport], format: TableFormat) -> String {
    match format {
        TableFormat::Json => serde_json::to_string_pretty(rows).expect("serializable"),
        TableFormat::Md => {
            let mut out = String::from(
                "| operation | n | m | measured | bound | slack | formula |\n|---|---|---|---|---|---|---|\n",
            );
            for r in rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} |\n",
                    r.operation,
                    r.left_states,
                    r.right_states.map_or(String::from("-"), |m| m.to_string()),
                    r.measured_sc,
                    r.bound,
                    r.slack,
                    r.formula
                ));
            }
            out
        }
        TableFormat::Csv => {
            let mut out = String::from("operation,n,m,measured,bound,slack,formula\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    r.operation,
                    r.left_states,
                    r.right_states.map_or(String::new(), |m| m.to_string()),
                    r.measured_sc,
                    r.bound,
                    r.slack,
                    r.formula
                ));
            }
            out
        }
    }
}

fn run(command: Command, guard: usize) -> Result<ExitCode, Error> {
    match command {
        Command::Min { input, output } => {
            let d = read_dfa(&input)?;
            write_dfa(&minimize(&d), &output)?;
        }
        Command::Eval {
            alphabet,
            expr,
            output,
        } => {
            let alphabet = Alphabet::new(&alphabet)?;
            let ast = parse(&expr, &alphabet)?;
            let d = eval_with_guard(&ast, &alphabet, guard)?;
            write_dfa(&d, &output)?;
        }
        Command::Profile { input } => {
            let d = read_dfa(&input)?;
            println!("{}", profile(&d)?.to_json());
        }
        Command::ProductForm { input } => {
            let d = read_dfa(&input)?;
            let report = has_product_form(&d)?;
            println!("{}", serde_json::to_string(&report).expect("serializable"));
        }
        Command::Shuffle {
            left,
            right,
            method,
            output,
        } => {
            let a = read_dfa(&left)?;
            let b = read_dfa(&right)?;
            let d = match method {
                ShuffleMethod::Nfa => shuffle_nfa_with_guard(&a, &b, guard)?,
                ShuffleMethod::Parikh => shuffle_commutative_with_guard(&a, &b, guard)?,
            };
            write_dfa(&d, &output)?;
        }
        Command::Closure { op, input, output } => {
            let d = read_dfa(&input)?;
            let result = match op {
                ClosureOp::Up => upward_closure_with_guard(&d, guard)?,
                ClosureOp::Down => downward_closure_with_guard(&d, guard)?,
                ClosureOp::UpInt => upward_interior_with_guard(&d, guard)?,
                ClosureOp::DownInt => downward_interior_with_guard(&d, guard)?,
            };
            write_dfa(&result, &output)?;
        }
        Command::Project { keep, input, output } => {
            let d = read_dfa(&input)?;
            let keep: Vec<char> = keep.chars().collect();
            write_dfa(&projection_with_guard(&d, &keep, guard)?, &output)?;
        }
        Command::Canonical {
            partition,
            input,
            dot,
        } => {
            let d = read_dfa(&input)?;
            let part = Partition::parse(&partition)?;
            let canon = canonical_automaton_with_guard(&d, &part, guard)?;
            if dot {
                print!("{}", emit_dot(canon.product()));
            } else {
                println!(
                    "{{\"partition\":{},\"blockSizes\":{},\"states\":{},\"finals\":{},\"product\":{}}}",
                    serde_json::to_string(&part.to_string_syntax()).expect("string"),
                    serde_json::to_string(&canon.block_sizes()).expect("ints"),
                    canon.product().state_count(),
                    serde_json::to_string(&canon.finals().iter().collect::<Vec<_>>())
                        .expect("tuples"),
                    dfa_to_json(canon.product())
                );
            }
        }
        Command::Classify {
            partition,
            input,
            format,
        } => {
            let d = read_dfa(&input)?;
            let part = Partition::parse(&partition)?;
            let report = classify_with_guard(&d, &part, guard)?;
            match format {
                TableFormat::Json => {
                    println!("{}", serde_json::to_string(&report).expect("serializable"))
                }
                TableFormat::Md => {
                    println!("| property | value |");
                    println!("|---|---|");
                    println!("| closed under partition | {} |", report.commutative_under_partition);
                    println!("| recognizes L | {} |", report.recognizes_l);
                    for (name, value) in [
                        ("l1", report.l1),
                        ("l2", report.l2),
                        ("l3", report.l3),
                        ("l4", report.l4),
                    ] {
                        println!("| {name} | {value} |");
                    }
                    println!("| sc | {} |", report.sc);
                    println!("| canonical states | {} |", report.canonical_states);
                    for (i, b) in report.blocks.iter().enumerate() {
                        println!("| block {i} |S_i| | {} |", b.size_si);
                        println!("| block {i} sc(projection) | {} |", b.sc_projection);
                    }
                    for w in &report.witnesses {
                        println!("| witness | {w} |");
                    }
                }
                TableFormat::Csv => {
                    println!("property,value");
                    println!("closedUnderPartition,{}", report.commutative_under_partition);
                    println!("recognizesL,{}", report.recognizes_l);
                    println!("l1,{}", report.l1);
                    println!("l2,{}", report.l2);
                    println!("l3,{}", report.l3);
                    println!("l4,{}", report.l4);
                    println!("sc,{}", report.sc);
                    println!("canonicalStates,{}", report.canonical_states);
                }
            }
        }
        Command::GroupBounds { p, q } => {
            let p = PeriodVector::new(parse_vec(&p)?)?;
            let q = PeriodVector::new(parse_vec(&q)?)?;
            let b = group_shuffle_bound(&p, &q)?;
            println!("{}", serde_json::to_string(&b).expect("serializable"));
        }
        Command::Gen(gen) => run_gen(gen)?,
        Command::Bounds {
            family,
            params,
            k,
            input,
            format,
            seed,
            cases,
        } => {
            let mut rows = Vec::new();
            match family.as_str() {
                "coprime" => {
                    let v = parse_vec(&params)?;
                    if v.len() != 2 {
                        return Err(Error::PreconditionViolation(
                            "coprime family takes --params p,q".into(),
                        ));
                    }
                    let letters: String = ('a'..).take(k).collect();
                    let alphabet = Alphabet::new(&letters)?;
                    let (u, w) = gen_coprime_pair(v[0], v[1], &alphabet)?;
                    for op in [BoundOp::Shuffle, BoundOp::Union, BoundOp::Intersection] {
                        rows.push(verify_bound_with_guard(op, &u, Some(&w), guard)?);
                    }
                    rows.push(verify_bound_with_guard(BoundOp::Projection, &u, None, guard)?);
                }
                "remark5" => {
                    let v = parse_vec(&params)?;
                    if v.len() != 2 {
                        return Err(Error::PreconditionViolation(
                            "remark5 family takes --params p,q".into(),
                        ));
                    }
                    let (u, w) = gen_above_nm_pair(v[0], v[1])?;
                    rows.push(verify_bound_with_guard(BoundOp::Shuffle, &u, Some(&w), guard)?);
                }
                "closures" => {
                    let input = input.ok_or_else(|| {
                        Error::PreconditionViolation(
                            "closures family needs an input automaton".into(),
                        )
                    })?;
                    let d = read_dfa(&input)?;
                    for op in [
                        BoundOp::UpwardClosure,
                        BoundOp::DownwardClosure,
                        BoundOp::UpwardInterior,
                        BoundOp::DownwardInterior,
                    ] {
                        rows.push(verify_bound_with_guard(op, &d, None, guard)?);
                    }
                }
                "ratio" => {
                    let letters: String = ('a'..).take(k).collect();
                    let alphabet = Alphabet::new(&letters)?;
                    let report = shuffle_ratio_search(&alphabet, cases, seed)?;
                    println!("{}", serde_json::to_string(&report).expect("serializable"));
                    return Ok(ExitCode::SUCCESS);
                }
                other => {
                    return Err(Error::PreconditionViolation(format!(
                        "unknown family '{other}' (coprime|remark5|closures|ratio)"
                    )))
                }
            }
            print!("{}", bound_rows_to_table(&rows, format));
            if rows.iter().any(|r| r.slack < 0) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Check {
            seed,
            cases,
            slow,
            format,
        } => {
            let cfg = CheckConfig { seed, cases, slow };
            let reports = run_checks(&cfg);
            let all_passed = reports.iter().all(|r| r.passed);
            match format {
                TableFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"))
                }
                _ => {
                    for r in &reports {
                        let status = if r.passed { "PASS" } else { "FAIL" };
                        println!("{status} {} — {}", r.name, r.detail);
                    }
                    println!(
                        "{} of {} checks passed (seed {seed}, {cases} cases each)",
                        reports.iter().filter(|r| r.passed).count(),
                        reports.len()
                    );
                }
            }
            if !all_passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_gen(gen: GenCommand) -> Result<(), Error> {
    match gen {
        GenCommand::Coprime {
            p,
            q,
            alphabet,
            out_u,
            out_v,
        } => {
            let alphabet = Alphabet::new(&alphabet)?;
            let (u, v) = gen_coprime_pair(p, q, &alphabet)?;
            write_pair(&u, &v, out_u, out_v)?;
        }
        GenCommand::Remark5 { p, q, out_u, out_v } => {
            let (u, v) = gen_above_nm_pair(p, q)?;
            write_pair(&u, &v, out_u, out_v)?;
        }
        GenCommand::Threshold { n, alphabet, out } => {
            let thresholds: Vec<usize> = parse_vec(&n)?.iter().map(|&x| x as usize).collect();
            let letters: String = match alphabet {
                Some(a) => a,
                None => ('a'..).take(thresholds.len()).collect(),
            };
            let alphabet = Alphabet::new(&letters)?;
            let d = gen_threshold_language(&thresholds, &alphabet)?;
            let text = dfa_to_json(&d) + "\n";
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Error::InvalidAutomaton(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        GenCommand::SharpGroup {
            p,
            q,
            k,
            out_u,
            out_v,
        } => {
            let letters: String = ('a'..).take(k).collect();
            let alphabet = Alphabet::new(&letters)?;
            let (u, v) = gen_sharp_group_pair(p, q, &alphabet)?;
            write_pair(&u, &v, out_u, out_v)?;
        }
    }
    Ok(())
}
