//! Command-line front end: run word machines, check their enumeration
//! properties, print reference codes, rank/unrank words, and lint
//! transition tables.
//!
//! Exit codes: 0 success/halt, 1 a check or lint found a defect, 2
//! usage or table errors, 3 step budget exhausted.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use machine_core::{
    default_budget, initial_config, parse_machine_table, reverse_run, step, trace_visits,
    validate_machine, Config, MachineSpec, StepResult,
};
use num_bigint::BigUint;
use ranking::{rank_t1, unrank_t1};
use reference_codes::{code_a, code_b, rbgc, sliding_code, universal_word};
use verify::{check_hamiltonian, check_prefix_hamiltonian, VerificationReport};

#[derive(Parser)]
#[command(name = "wordmill", version, about = "Run, check, reverse, rank and lint binary word machines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine from the all-zero word, one produced word per line.
    Run {
        /// Table file path, or builtin:NAME (T0, T1, T2, D0, D1, D2,
        /// toy-stack, toy-queue).
        machine: String,
        /// Length of the enumerated words.
        #[arg(long, default_value_t = 6)]
        word_size: usize,
        /// Step budget; the default is 64 steps per word, 64·2^ℓ total.
        #[arg(long)]
        max_steps: Option<u64>,
        /// Run backwards from the halting configuration instead.
        #[arg(long)]
        reverse: bool,
        /// Trace every configuration (step, state, word, head) to
        /// standard error.
        #[arg(long)]
        verbose: bool,
    },
    /// Check enumeration properties over a range of word sizes.
    Check {
        /// Table file path, builtin:NAME, or ALL for every bundled
        /// machine.
        machine: String,
        /// Inclusive size range A..B, or a single size.
        #[arg(long, default_value = "3..14")]
        sizes: String,
        /// Property to check; defaults to hamiltonian (prefix for D0,
        /// which never halts).
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
        /// Also require every output gap to stay within this many steps.
        #[arg(long)]
        delay_bound: Option<u64>,
        /// Also require consecutive outputs to differ in at most this
        /// many bits.
        #[arg(long)]
        hamming: Option<usize>,
        /// Also require consecutively flipped positions to be at most
        /// this far apart.
        #[arg(long)]
        skew: Option<usize>,
        /// Report format; tsv prints "subject ℓ property value pass|fail"
        /// lines.
        #[arg(long, value_enum)]
        report: Option<ReportFormat>,
    },
    /// Print a reference code, one word per line.
    Code {
        /// Which code: rbgc, a (append order), b (prepend order), or
        /// universal (sliding windows of a universal word).
        #[arg(value_enum, ignore_case = true)]
        which: CodeKind,
        /// Length of the code's words.
        #[arg(long, default_value_t = 6)]
        word_size: usize,
    },
    /// Print a word's 0-based position in the t1 enumeration.
    Rank {
        /// Which enumeration; only t1 has a closed-form rank.
        code: String,
        word: String,
    },
    /// Print the word at a 0-based position in the t1 enumeration.
    Unrank {
        /// Which enumeration; only t1 has a closed-form unrank.
        code: String,
        rank: String,
        word_size: usize,
    },
    /// Report table defects: shadowed, conflicting or unreachable rules,
    /// and rule pairs that block reverse execution.
    Lint {
        /// Table file path or builtin:NAME.
        machine: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expectation {
    /// Halts after producing every word exactly once.
    Hamiltonian,
    /// The first 2^ℓ outputs are distinct (the run may continue).
    Prefix,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeKind {
    Rbgc,
    A,
    B,
    Universal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { machine, word_size, max_steps, reverse, verbose } => {
            cmd_run(&machine, word_size, max_steps, reverse, verbose)
        }
        Command::Check { machine, sizes, expect, delay_bound, hamming, skew, report } => {
            cmd_check(&machine, &sizes, expect, delay_bound, hamming, skew, report)
        }
        Command::Code { which, word_size } => cmd_code(which, word_size),
        Command::Rank { code, word } => cmd_rank(&code, &word),
        Command::Unrank { code, rank, word_size } => cmd_unrank(&code, &rank, word_size),
        Command::Lint { machine } => cmd_lint(&machine),
    };
    result.unwrap_or_else(|msg| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    })
}

/// Loads a table from a file, or clones a bundled machine when the
/// argument has the form builtin:NAME.
fn load_machine(arg: &str) -> Result<MachineSpec, String> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        let spec = match name.to_ascii_lowercase().as_str() {
            "toy-stack" => builtin_machines::toy_stack(),
            "toy-queue" => builtin_machines::toy_queue(),
            _ => builtin_machines::builtin(name)?,
        };
        return Ok(spec.clone());
    }
    let text = fs::read_to_string(arg).map_err(|e| format!("cannot read {arg}: {e}"))?;
    let spec = parse_machine_table(&text).map_err(|e| format!("{arg}: {e}"))?;
    spec.check().map_err(|e| format!("{arg}: {e}"))?;
    Ok(spec)
}

/// The subject name used in check output: the builtin name, or the
/// table path as given.
fn subject_label(arg: &str) -> &str {
    arg.strip_prefix("builtin:").unwrap_or(arg)
}

fn cmd_run(
    machine: &str,
    word_size: usize,
    max_steps: Option<u64>,
    reverse: bool,
    verbose: bool,
) -> Result<ExitCode, String> {
    let spec = load_machine(machine)?;
    let budget = max_steps.unwrap_or_else(|| default_budget(word_size));
    if reverse {
        return run_backwards(&spec, word_size, budget, verbose);
    }

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut line: Vec<u8> = Vec::with_capacity(word_size + 1);
    if !verbose {
        let report = machine_core::run_with(&spec, word_size, budget, |bits| {
            emit(&mut out, &mut line, bits)
        })
        .map_err(|e| e.to_string())?;
        return Ok(if report.halted { ExitCode::SUCCESS } else { ExitCode::from(3) });
    }

    // Verbose runs step one rule at a time so every configuration can
    // be traced.
    let mut config = initial_config(&spec, word_size).map_err(|e| e.to_string())?;
    let mut steps: u64 = 0;
    loop {
        trace(steps, &config);
        if spec.is_output(config.state.as_str()) {
            emit(&mut out, &mut line, config.word.as_bytes());
        }
        if Some(&config.state) == spec.halting.as_ref() {
            return Ok(ExitCode::SUCCESS);
        }
        if steps >= budget {
            return Ok(ExitCode::from(3));
        }
        match step(&spec, &config).map_err(|e| e.to_string())? {
            StepResult::Next { config: next, .. } => {
                config = next;
                steps += 1;
            }
            StepResult::Halted => return Ok(ExitCode::SUCCESS),
            StepResult::NoRuleApplies => {
                return Err(format!(
                    "no rule applies at step {steps} in state {} on {}",
                    config.state, config.word
                ))
            }
        }
    }
}

/// Runs the machine forward (silently) to its halting configuration,
/// then replays the table's inverse back to the start, printing each
/// output visit. The result is the forward word sequence reversed.
fn run_backwards(
    spec: &MachineSpec,
    word_size: usize,
    budget: u64,
    verbose: bool,
) -> Result<ExitCode, String> {
    let halting = spec
        .halting
        .clone()
        .ok_or("this machine never halts, so there is no configuration to reverse from")?;
    let visits = trace_visits(spec, word_size, budget, |state, _| state == halting.as_str())
        .map_err(|e| e.to_string())?;
    let Some((_, halt_config)) = visits.into_iter().next() else {
        eprintln!("halting configuration not reached within {budget} steps");
        return Ok(ExitCode::from(3));
    };

    if verbose {
        // Step the inverse one rule at a time, tracing configurations.
        let reverser = machine_core::Reverser::new(spec).map_err(|e| e.to_string())?;
        let start = initial_config(spec, word_size).map_err(|e| e.to_string())?;
        let stdout = io::stdout();
        let mut out = stdout.lock();
        let mut line: Vec<u8> = Vec::with_capacity(word_size + 1);
        let mut config = halt_config;
        let mut steps: u64 = 0;
        loop {
            trace(steps, &config);
            if spec.is_output(config.state.as_str()) {
                emit(&mut out, &mut line, config.word.as_bytes());
            }
            if config == start {
                return Ok(ExitCode::SUCCESS);
            }
            if steps >= budget {
                return Ok(ExitCode::from(3));
            }
            match reverser.step_back(&config).map_err(|e| e.to_string())? {
                Some(pre) => {
                    config = pre;
                    steps += 1;
                }
                None => {
                    return Err(format!(
                        "no inverse rule applies in state {} on {}",
                        config.state, config.word
                    ))
                }
            }
        }
    }

    let report = reverse_run(spec, &halt_config, budget).map_err(|e| e.to_string())?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut line: Vec<u8> = Vec::with_capacity(word_size + 1);
    for word in &report.outputs.words {
        emit(&mut out, &mut line, word.as_bytes());
    }
    Ok(if report.halted { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn trace(step: u64, config: &Config) {
    match config.head {
        Some(h) => eprintln!("{step}\t{}\t{}\thead={h}", config.state, config.word),
        None => eprintln!("{step}\t{}\t{}", config.state, config.word),
    }
}

/// Writes one word (given as '0'/'1' bytes or raw bits) plus a newline.
/// Standard output is line-buffered, so each word is flushed as the
/// machine produces it.
fn emit(out: &mut impl Write, line: &mut Vec<u8>, bits: &[u8]) {
    line.clear();
    line.extend(bits.iter().map(|b| if *b <= 1 { b'0' + b } else { *b }));
    line.push(b'\n');
    if let Err(e) = out.write_all(line) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write output: {e}");
        std::process::exit(2);
    }
}

fn parse_sizes(arg: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = match arg.split_once("..") {
        Some((a, b)) => (
            a.parse::<usize>().map_err(|_| format!("bad size range {arg}"))?,
            b.parse::<usize>().map_err(|_| format!("bad size range {arg}"))?,
        ),
        None => {
            let n = arg.parse::<usize>().map_err(|_| format!("bad size {arg}"))?;
            (n, n)
        }
    };
    if lo < 1 || lo > hi {
        return Err(format!("bad size range {arg}"));
    }
    if hi > 30 {
        return Err("completeness checks support sizes up to 30".to_string());
    }
    Ok((lo, hi))
}

fn cmd_check(
    machine: &str,
    sizes: &str,
    expect: Option<Expectation>,
    delay_bound: Option<u64>,
    hamming: Option<usize>,
    skew: Option<usize>,
    report: Option<ReportFormat>,
) -> Result<ExitCode, String> {
    let (lo, hi) = parse_sizes(sizes)?;
    let subjects: Vec<(String, MachineSpec)> = if machine == "ALL" {
        builtin_machines::builtin_names()
            .iter()
            .map(|n| Ok((n.to_string(), builtin_machines::builtin(n)?.clone())))
            .collect::<Result<_, String>>()?
    } else {
        vec![(subject_label(machine).to_string(), load_machine(machine)?)]
    };

    let tsv = matches!(report, Some(ReportFormat::Tsv));
    let mut all_pass = true;
    let mut line = |subject: &str, len: usize, property: &str, value: String, pass: bool| {
        all_pass &= pass;
        let verdict = if pass { "pass" } else { "fail" };
        if tsv {
            println!("{subject}\t{len}\t{property}\t{value}\t{verdict}");
        } else {
            println!("{subject} ℓ={len} {property}={value} {verdict}");
        }
    };

    for (name, spec) in &subjects {
        // D0 enumerates everything but never halts, so unless told
        // otherwise it is held to the prefix property.
        let expectation = expect.unwrap_or(if name.eq_ignore_ascii_case("d0") {
            Expectation::Prefix
        } else {
            Expectation::Hamiltonian
        });
        for len in lo..=hi {
            if len < spec.min_length {
                continue;
            }
            let budget = default_budget(len);
            let rep: VerificationReport = match expectation {
                Expectation::Hamiltonian => check_hamiltonian(spec, name, len, budget),
                Expectation::Prefix => check_prefix_hamiltonian(spec, name, len, budget),
            }
            .map_err(|e| format!("{name} at size {len}: {e}"))?;
            let property = match expectation {
                Expectation::Hamiltonian => "hamiltonian",
                Expectation::Prefix => "prefix",
            };
            let value = rep
                .first_counterexample
                .clone()
                .unwrap_or_else(|| format!("{} words", rep.output_count));
            line(name, len, property, value, rep.passed);
            if let Some(bound) = delay_bound {
                line(name, len, "delay", rep.max_delay.to_string(), rep.max_delay <= bound);
            }
            if let Some(bound) = hamming {
                let value = rep.max_hamming.map_or("-".to_string(), |h| h.to_string());
                line(name, len, "hamming", value, rep.max_hamming.is_some_and(|h| h <= bound));
            }
            if let Some(bound) = skew {
                let value = rep.max_skew.map_or("-".to_string(), |s| s.to_string());
                line(name, len, "skew", value, rep.max_skew.is_some_and(|s| s <= bound));
            }
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_code(which: CodeKind, word_size: usize) -> Result<ExitCode, String> {
    if word_size < 1 || word_size > 24 {
        return Err(format!("code printing supports word sizes 1 to 24, got {word_size}"));
    }
    let code = match which {
        CodeKind::Rbgc => rbgc(word_size),
        CodeKind::A => code_a(word_size),
        CodeKind::B => code_b(word_size),
        CodeKind::Universal => sliding_code(&universal_word(word_size), word_size),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut line: Vec<u8> = Vec::with_capacity(word_size + 1);
    for word in &code.words {
        emit(&mut out, &mut line, word.as_bytes());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_rank(code: &str, word: &str) -> Result<ExitCode, String> {
    if !code.eq_ignore_ascii_case("t1") {
        return Err(format!("only the t1 enumeration has a rank function, got {code}"));
    }
    println!("{}", rank_t1(word)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_unrank(code: &str, rank: &str, word_size: usize) -> Result<ExitCode, String> {
    if !code.eq_ignore_ascii_case("t1") {
        return Err(format!("only the t1 enumeration has an unrank function, got {code}"));
    }
    let n: BigUint = rank.parse().map_err(|_| format!("bad rank {rank}"))?;
    println!("{}", unrank_t1(&n, word_size)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_lint(machine: &str) -> Result<ExitCode, String> {
    let spec = load_machine(machine)?;
    let findings = validate_machine(&spec);
    if findings.is_empty() {
        println!("no defects found");
        return Ok(ExitCode::SUCCESS);
    }
    for finding in &findings {
        println!("{}: {}", finding.kind.label(), finding.message);
    }
    Ok(ExitCode::from(1))
}
