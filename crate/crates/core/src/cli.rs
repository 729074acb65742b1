//! Command-line front end. Primary output is `key=value` lines on stdout;
//! diagnostics and timings go to stderr.
//!
//! Exit codes: 0 success (or theorem holds), 1 counterexample or
//! disagreement, 2 usage error, 3 resource limit.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand, ValueEnum};

use crate::encoding::{encode_nwa_input, folded_encode, len_base_k, to_base_k};
use crate::error::{Error, Result};
use crate::format::{read_ats, read_native, write_ats, write_native, Machine};
use crate::generators::{
    antipal_checker, base3_machine, base4_machine, fig1_machine, folded_case_machine,
    folded_syntax, gap_checker, gpal_checker, pal_checker, pal_checker2, pal_checker3,
    syntax_checker, syntax_checker_with, LengthParity, SyntaxConfig, ValueParity, BASE3_CASES,
    BASE4_CASES,
};
use crate::nfa::{self, minimize};
use crate::nwa::{determinize_with_budget, union_with_budget, DEFAULT_STATE_BUDGET};
use crate::oracle::{
    decide, decide_cases, density_prefix, exceptions, min_summands, simulate_range, Flavor,
    MinSummands, SumQuery,
};
use crate::prover::{ProveOptions, Theorem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Names understood by `gen`, `sim` and `export`. Append `.det` for the
/// determinized (NWA) or minimized (NFA) version.
pub const MACHINE_NAMES: &[&str] = &[
    "fig1",
    "palChecker",
    "palChecker2",
    "palChecker3",
    "FinalAut",
    "gpalChecker",
    "gapChecker",
    "antipal:<offsets>",
    "syntax",
    "syntax-gpal",
    "syntax-gap",
    "base3",
    "base3:<case>",
    "base4",
    "base4:<case>",
    "folded-syntax3",
    "folded-syntax4",
];

#[derive(Parser, Debug)]
#[command(name = "palsum", about = "Automata proofs about sums of palindromes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ats,
    Native,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a machine and print its size; write it (native format) to --out.
    Gen {
        machine: String,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Run a machine on an integer or an inclusive range `lo..hi` and compare
    /// with the oracle.
    Sim {
        machine: String,
        target: String,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Run a theorem-level proof.
    Prove {
        theorem: String,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
        #[arg(long = "negative-control")]
        negative_control: Option<String>,
    },
    /// Query the brute-force oracle: `<target>`, `<lo..hi>`, `exceptions`
    /// or `min <n>`.
    Oracle {
        flavor: String,
        base: u32,
        max_summands: usize,
        query: String,
        arg: Option<u64>,
        /// Upper bound for `exceptions`.
        #[arg(long, default_value_t = 10_000)]
        limit: u64,
        /// Keep only even exceptions.
        #[arg(long)]
        even: bool,
    },
    /// Prefix estimate of the Schnirelmann density.
    Density {
        flavor: String,
        max_summands: usize,
        limit: u64,
        #[arg(long, default_value_t = 2)]
        base: u32,
    },
    /// Print a machine in the chosen format.
    Export {
        machine: String,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
}

/// A machine plus the oracle predicate its language should match.
pub struct NamedMachine {
    pub name: String,
    pub machine: Machine,
    pub oracle: Option<Box<dyn Fn(u64) -> bool + Sync>>,
    /// Smallest value the construction is meant for; `sim` only compares
    /// the oracle from here on.
    pub domain_min: u64,
}

fn cases(flavor: Flavor, base: u32, cases: Vec<Vec<usize>>) -> Box<dyn Fn(u64) -> bool + Sync> {
    Box::new(move |n| decide_cases(n, base, flavor, &cases).is_some())
}

fn offsets_of(s: crate::generators::Summands) -> Vec<usize> {
    [(s.n, 0), (s.n1, 1), (s.n2, 2), (s.n3, 3)]
        .iter()
        .filter(|p| p.0)
        .map(|p| p.1)
        .collect()
}

fn folded(
    base: u8,
    all: &[(char, crate::generators::Summands)],
    pick: Option<&str>,
) -> Result<NamedMachine> {
    let chosen: Vec<_> = match pick {
        None => all.to_vec(),
        Some(c) => all
            .iter()
            .filter(|(n, _)| n.to_string() == c)
            .copied()
            .collect(),
    };
    if chosen.is_empty() {
        return Err(Error::contract(format!(
            "no base-{base} case `{}`",
            pick.unwrap_or("")
        )));
    }
    let machine = match pick {
        None if base == 3 => base3_machine(),
        None => base4_machine(),
        Some(_) => folded_case_machine(base, chosen[0].1),
    };
    Ok(NamedMachine {
        name: String::new(),
        machine: machine.into(),
        domain_min: if base == 3 { 27 } else { 0 },
        oracle: Some(cases(
            Flavor::Palindrome,
            base as u32,
            chosen.iter().map(|c| offsets_of(c.1)).collect(),
        )),
    })
}

/// Builds a machine by name (see [`MACHINE_NAMES`]).
pub fn build_machine(name: &str, budget: usize) -> Result<NamedMachine> {
    if let Some(base) = name.strip_suffix(".det") {
        let mut m = build_machine(base, budget)?;
        m.machine = match m.machine {
            Machine::Nwa(n) if n.is_deterministic() => Machine::Nwa(n),
            Machine::Nwa(n) => Machine::Nwa(determinize_with_budget(&n, budget)?),
            Machine::Nfa(n) => {
                Machine::Nfa(minimize(&nfa::determinize_with_budget(&n, budget)?).to_nfa())
            }
        };
        m.name = name.to_string();
        return Ok(m);
    }
    let pal = |offs: Vec<usize>| Some(cases(Flavor::Palindrome, 2, vec![offs]));
    let (machine, oracle): (Machine, _) = match name {
        "fig1" => (fig1_machine().into(), None),
        "palChecker" => (pal_checker().into(), pal(vec![0])),
        "palChecker2" => (pal_checker2().into(), pal(vec![0, 2, 3])),
        "palChecker3" => (pal_checker3().into(), pal(vec![1, 2, 3])),
        "FinalAut" => {
            let syntax = syntax_checker(4, ValueParity::OddOnly);
            let mut fin = determinize_with_budget(&pal_checker(), budget)?;
            for m in [pal_checker2(), pal_checker3()] {
                fin = union_with_budget(
                    &fin,
                    &determinize_with_budget(&m, budget)?,
                    &syntax,
                    budget,
                )?;
            }
            let all = cases(
                Flavor::Palindrome,
                2,
                vec![vec![0], vec![0, 2, 3], vec![1, 2, 3]],
            );
            let oracle: Box<dyn Fn(u64) -> bool + Sync> =
                Box::new(move |n| n % 2 == 1 && len_base_k(n, 2) >= 8 && all(n));
            (fin.into(), Some(oracle))
        }
        "gpalChecker" => (
            gpal_checker().into(),
            Some(cases(Flavor::GeneralizedPalindrome, 2, vec![vec![0, 0, 1]])),
        ),
        "gapChecker" => (
            gap_checker().into(),
            Some(cases(
                Flavor::GeneralizedAntipalindrome,
                2,
                vec![vec![2; 6]],
            )),
        ),
        "syntax" => (
            syntax_checker(4, ValueParity::OddOnly).into(),
            Some(Box::new(|n: u64| n % 2 == 1 && len_base_k(n, 2) >= 8)
                as Box<dyn Fn(u64) -> bool + Sync>),
        ),
        "syntax-gpal" => (
            syntax_checker_with(SyntaxConfig::new(3)).into(),
            Some(Box::new(|n: u64| len_base_k(n, 2) >= 6) as Box<dyn Fn(u64) -> bool + Sync>),
        ),
        "syntax-gap" => (
            syntax_checker_with(SyntaxConfig::new(3).lengths(LengthParity::Even)).into(),
            Some(Box::new(|n: u64| {
                let l = len_base_k(n, 2);
                l >= 6 && l.is_multiple_of(2)
            }) as Box<dyn Fn(u64) -> bool + Sync>),
        ),
        "folded-syntax3" => (
            folded_syntax(3, 9).into(),
            Some(Box::new(|n: u64| len_base_k(n, 3) >= 9) as Box<dyn Fn(u64) -> bool + Sync>),
        ),
        "folded-syntax4" => (
            folded_syntax(4, 7).into(),
            Some(Box::new(|n: u64| len_base_k(n, 4) >= 7) as Box<dyn Fn(u64) -> bool + Sync>),
        ),
        "base3" => {
            return folded(3, &BASE3_CASES, None).map(|m| NamedMachine {
                name: name.into(),
                ..m
            })
        }
        "base4" => {
            return folded(4, &BASE4_CASES, None).map(|m| NamedMachine {
                name: name.into(),
                ..m
            })
        }
        _ => {
            if let Some(c) = name.strip_prefix("base3:") {
                return folded(3, &BASE3_CASES, Some(c)).map(|m| NamedMachine {
                    name: name.into(),
                    ..m
                });
            }
            if let Some(c) = name.strip_prefix("base4:") {
                return folded(4, &BASE4_CASES, Some(c)).map(|m| NamedMachine {
                    name: name.into(),
                    ..m
                });
            }
            if let Some(list) = name.strip_prefix("antipal:") {
                let offs: Vec<u8> = list
                    .split(',')
                    .map(|o| o.trim().parse::<u8>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::contract(format!("bad offsets `{list}`")))?;
                if offs.is_empty() || offs.len() > 12 {
                    return Err(Error::contract("antipal needs 1 to 12 offsets"));
                }
                let cases_ = vec![offs.iter().map(|&o| o as usize).collect()];
                return Ok(NamedMachine {
                    name: name.into(),
                    machine: antipal_checker(&offs).into(),
                    oracle: Some(cases(Flavor::Antipalindrome, 2, cases_)),
                    domain_min: 0,
                });
            }
            return Err(Error::contract(format!(
                "unknown machine `{name}` (known: {})",
                MACHINE_NAMES.join(", ")
            )));
        }
    };
    let domain_min = if name == "gpalChecker" { 2 } else { 0 };
    Ok(NamedMachine {
        name: name.into(),
        machine,
        oracle,
        domain_min,
    })
}

/// Values without an input encoding (too short) are rejected.
fn accepts(m: &Machine, n: u64) -> Result<bool> {
    match m {
        Machine::Nwa(a) => match encode_nwa_input(n) {
            Ok(w) => a.accepts(&w),
            Err(Error::Contract(_)) => Ok(false),
            Err(e) => Err(e),
        },
        Machine::Nfa(a) => match folded_encode(n, a.alphabet().base() as u32) {
            Ok(w) => a.accepts(&w),
            Err(Error::Contract(_)) => Ok(false),
            Err(e) => Err(e),
        },
    }
}

fn word_of(m: &Machine, n: u64) -> Result<String> {
    Ok(match m {
        Machine::Nwa(_) => encode_nwa_input(n)?.to_string(),
        Machine::Nfa(a) => folded_encode(n, a.alphabet().base() as u32)?
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    })
}

fn parse_range(s: &str) -> Result<Option<RangeInclusive<u64>>> {
    let Some((lo, hi)) = s.split_once("..") else {
        return Ok(None);
    };
    let lo: u64 = lo
        .parse()
        .map_err(|_| Error::contract(format!("bad range `{s}`")))?;
    let hi: u64 = hi
        .parse()
        .map_err(|_| Error::contract(format!("bad range `{s}`")))?;
    if lo > hi {
        return Err(Error::contract(format!("empty range `{s}`")));
    }
    Ok(Some(lo..=hi))
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::contract(format!("`{s}` is not a natural number")))
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn kv(&mut self, k: &str, v: impl std::fmt::Display) -> Result<()> {
        writeln!(self.out, "{k}={v}")?;
        Ok(())
    }
}

fn write_or_print(ctx: &mut Ctx, out: &Option<String>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            ctx.kv("written", path)
        }
        None => {
            ctx.out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_or_build(name: &str, budget: usize) -> Result<NamedMachine> {
    // A path to a machine file is accepted wherever a name is.
    let path = std::path::Path::new(name);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        let machine = read_native(&text).or_else(|_| read_ats(&text))?;
        return Ok(NamedMachine {
            name: name.into(),
            machine,
            oracle: None,
            domain_min: 0,
        });
    }
    build_machine(name, budget)
}

fn run_command(cmd: Command, ctx: &mut Ctx) -> Result<i32> {
    match cmd {
        Command::Gen {
            machine,
            out,
            budget,
        } => {
            let m = load_or_build(&machine, budget)?;
            ctx.kv("machine", &machine)?;
            ctx.kv(
                "kind",
                if matches!(m.machine, Machine::Nwa(_)) {
                    "nwa"
                } else {
                    "nfa"
                },
            )?;
            ctx.kv("states", m.machine.num_states())?;
            ctx.kv("transitions", m.machine.num_transitions())?;
            if let Some(path) = &out {
                std::fs::write(path, write_native(&m.machine))?;
                ctx.kv("written", path)?;
            }
            Ok(EXIT_OK)
        }
        Command::Export {
            machine,
            format,
            out,
            budget,
        } => {
            let m = load_or_build(&machine, budget)?;
            let text = match format {
                Format::Native => write_native(&m.machine),
                Format::Ats => write_ats(&m.machine, &machine),
            };
            write_or_print(ctx, &out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Sim {
            machine,
            target,
            budget,
        } => {
            let m = load_or_build(&machine, budget)?;
            ctx.kv("machine", &machine)?;
            match parse_range(&target)? {
                None => {
                    let n = parse_u64(&target)?;
                    let got = accepts(&m.machine, n)?;
                    ctx.kv("value", n)?;
                    ctx.kv("word", word_of(&m.machine, n)?)?;
                    ctx.kv("accepted", got)?;
                    match &m.oracle {
                        Some(_) if n < m.domain_min => {
                            ctx.kv("oracle", "out-of-domain")?;
                            Ok(EXIT_OK)
                        }
                        Some(o) => {
                            let want = o(n);
                            ctx.kv("oracle", want)?;
                            Ok(if want == got {
                                EXIT_OK
                            } else {
                                EXIT_COUNTEREXAMPLE
                            })
                        }
                        None => Ok(EXIT_OK),
                    }
                }
                Some(r) => {
                    let oracle = m.oracle.as_deref();
                    let machine = &m.machine;
                    let floor = m.domain_min;
                    // Below the domain floor the machine is its own reference.
                    let rep = simulate_range(
                        *r.start(),
                        *r.end(),
                        |n| accepts(machine, n),
                        |n| match oracle {
                            Some(o) if n >= floor => o(n),
                            _ => accepts(machine, n).unwrap_or(false),
                        },
                    )?;
                    ctx.kv("range", format!("{}..{}", r.start(), r.end()))?;
                    if floor > *r.start() && oracle.is_some() {
                        ctx.kv("domain_min", floor)?;
                    }
                    ctx.kv("accepted", rep.accepted)?;
                    if oracle.is_some() {
                        ctx.kv("disagreements", rep.disagreements.len())?;
                        if let Some(d) = rep.disagreements.first() {
                            ctx.kv("first_disagreement", d.n)?;
                            ctx.kv("first_disagreement.machine", d.machine)?;
                        }
                    }
                    Ok(if rep.agrees() {
                        EXIT_OK
                    } else {
                        EXIT_COUNTEREXAMPLE
                    })
                }
            }
        }
        Command::Prove {
            theorem,
            budget,
            negative_control,
        } => {
            let t: Theorem = theorem.parse()?;
            let report = t.prove(&ProveOptions {
                budget,
                negative_control,
            })?;
            write!(ctx.out, "{report}")?;
            writeln!(ctx.err, "elapsed={:.3}s", report.elapsed.as_secs_f64())?;
            Ok(if report.holds {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
        Command::Oracle {
            flavor,
            base,
            max_summands,
            query,
            arg,
            limit,
            even,
        } => {
            let flavor: Flavor = flavor.parse()?;
            check_base(flavor, base)?;
            ctx.kv("flavor", flavor)?;
            ctx.kv("base", base)?;
            ctx.kv("max_summands", max_summands)?;
            match query.as_str() {
                "exceptions" => {
                    let mut ex = exceptions(flavor, base, max_summands, limit);
                    if even {
                        ex.retain(|n| n % 2 == 0);
                    }
                    ctx.kv("limit", limit)?;
                    ctx.kv("count", ex.len())?;
                    ctx.kv(
                        "exceptions",
                        ex.iter()
                            .map(|n| n.to_string())
                            .collect::<Vec<_>>()
                            .join(","),
                    )?;
                    Ok(EXIT_OK)
                }
                "min" => {
                    let n = arg.ok_or_else(|| Error::contract("`min` needs a target"))?;
                    ctx.kv("target", n)?;
                    match min_summands(n, base, flavor, max_summands) {
                        MinSummands::Exactly(k) => {
                            ctx.kv("min_summands", k)?;
                            Ok(EXIT_OK)
                        }
                        MinSummands::OverCap(c) => {
                            ctx.kv("min_summands", format!(">{c}"))?;
                            Ok(EXIT_COUNTEREXAMPLE)
                        }
                    }
                }
                q => match parse_range(q)? {
                    Some(r) => {
                        let bad: Vec<u64> = r
                            .clone()
                            .filter(|&n| {
                                decide(&SumQuery::new(n, base, max_summands, flavor)).is_none()
                            })
                            .collect();
                        ctx.kv("range", format!("{}..{}", r.start(), r.end()))?;
                        ctx.kv("not_representable_count", bad.len())?;
                        ctx.kv(
                            "not_representable",
                            bad.iter()
                                .map(|n| n.to_string())
                                .collect::<Vec<_>>()
                                .join(","),
                        )?;
                        Ok(if bad.is_empty() {
                            EXIT_OK
                        } else {
                            EXIT_COUNTEREXAMPLE
                        })
                    }
                    None => {
                        let n = parse_u64(q)?;
                        ctx.kv("target", n)?;
                        ctx.kv(
                            "digits",
                            to_base_k(n, base)
                                .iter()
                                .map(|d| d.to_string())
                                .collect::<String>(),
                        )?;
                        match decide(&SumQuery::new(n, base, max_summands, flavor)) {
                            Some(w) => {
                                ctx.kv("result", "representable")?;
                                ctx.kv("witness", w)?;
                                Ok(EXIT_OK)
                            }
                            None => {
                                ctx.kv("result", "not representable")?;
                                Ok(EXIT_COUNTEREXAMPLE)
                            }
                        }
                    }
                },
            }
        }
        Command::Density {
            flavor,
            max_summands,
            limit,
            base,
        } => {
            let flavor: Flavor = flavor.parse()?;
            check_base(flavor, base)?;
            if limit == 0 {
                return Err(Error::contract("limit must be at least 1"));
            }
            let d = density_prefix(flavor, base, max_summands, limit);
            ctx.kv("flavor", flavor)?;
            ctx.kv("base", base)?;
            ctx.kv("max_summands", max_summands)?;
            ctx.kv("limit", limit)?;
            ctx.kv("min_ratio", d.min_ratio)?;
            ctx.kv("min_ratio_decimal", format!("{:.6}", d.as_f64()))?;
            ctx.kv("argmin", d.argmin)?;
            Ok(EXIT_OK)
        }
    }
}

fn check_base(flavor: Flavor, base: u32) -> Result<()> {
    if base < 2 {
        return Err(Error::contract("base must be at least 2"));
    }
    if matches!(
        flavor,
        Flavor::Antipalindrome | Flavor::GeneralizedAntipalindrome
    ) && base != 2
    {
        return Err(Error::contract("antipalindromes are binary"));
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx { out, err };
    match run_command(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            match e {
                Error::ResourceLimit { .. } => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            }
        }
    }
}
