//! `redf`: command-line front end.
//!
//! Exit codes: 0 success, 1 domain or precondition error, 2 usage or parse
//! error, 3 scan finished with unknown verdicts.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use redf::genus::{
    ramification_genus, siegel_test, table1_admissible_ells, table1_verify, tuple_genus,
    two_set_ramification, BranchTuple, RamificationType, Table1Report,
};
use redf::permcore::{is_primitive, is_solvable, parse_group};
use redf::redset::{red_candidates, wreath_scan, MonodromyPair};
use redf::speclab::{parse_chain, scan_window, FactorOptions, Window};
use redf::structure::{
    goursat_split_check, no_nonsolvable_proper_quotient, transitive_by_affine_chain,
    transitive_by_solvable_quotient, ChainSpec,
};
use redf::{Caps, Error, PermGroup};

#[derive(Parser, Debug)]
#[command(name = "redf", version, about = "Reducible specializations: groups, genera, scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Emit a JSON report with sorted keys.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, orbits, transitivity, primitivity and solvability of a group.
    GroupInfo {
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Riemann–Hurwitz genus of a branch cycle tuple or ramification type.
    Genus {
        /// Tuple file: one permutation per line.
        #[arg(long, conflicts_with = "ramification", required_unless_present = "ramification")]
        tuple: Option<PathBuf>,
        /// Ramification text such as `[4],[2,2],[1^2,2]`.
        #[arg(long)]
        ramification: Option<String>,
        /// 0-based index of the entry over ∞.
        #[arg(long)]
        infinity: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Genus checks for the nine polynomial families with genus-0 2-set
    /// stabilizers.
    Table1 {
        #[arg(long, required_unless_present = "range")]
        row: Option<usize>,
        #[arg(long, requires = "row", conflicts_with = "range")]
        ell: Option<i64>,
        #[arg(long, requires = "ell")]
        a: Option<i64>,
        /// Every admissible instance with LO < ℓ ≤ HI (all rows unless
        /// `--row` is given).
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        range: Option<Vec<i64>>,
        #[command(flatten)]
        out: Output,
    },
    /// Covers through which reducible specializations arise.
    RedsetCandidates {
        /// Arithmetic monodromy group A; defaults to the tuple's group.
        #[arg(long)]
        group: Option<PathBuf>,
        /// Geometric monodromy group G ⊴ A; defaults to the tuple's group.
        #[arg(long)]
        geometric: Option<PathBuf>,
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        infinity: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Index-sum scan over class triples of S_k wr S_5 in product action.
    WreathScan {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Executable lemma instances checked against direct computation.
    LemmaCheck {
        #[command(subcommand)]
        lemma: Lemma,
    },
    /// Reducibility scan of f(x) − t0 against the value set of f1.
    SpeclabScan {
        /// Chain file, one polynomial per line, composed left to right.
        #[arg(long)]
        chain: PathBuf,
        /// f1 is the composition of the first N chain members.
        #[arg(long, default_value_t = 1)]
        f1_index: usize,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, required_unless_present = "grid", conflicts_with = "grid")]
        ints: Option<Vec<i64>>,
        /// Rationals a/b with |a| ≤ HEIGHT, 1 ≤ b ≤ DENOM.
        #[arg(long, num_args = 2, value_names = ["HEIGHT", "DENOM"])]
        grid: Option<Vec<u64>>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum Lemma {
    /// Transitivity from a nonsolvable H-chain and a solvable U-chain.
    SolvableQuotient {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Transitivity from an H-chain without nonsolvable proper quotients
    /// and an affine U-chain.
    AffineChain {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        u: PathBuf,
        /// Skip the distinct-kernels hypothesis (results tagged beyond-lemma).
        #[arg(long)]
        skip_distinct_kernels: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Normal subgroups of A × B split as products.
    Goursat {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Every proper quotient of the group is solvable.
    Quotients {
        #[arg(long)]
        group: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

/// A finished command: its JSON value, a human rendering and an exit code.
struct Report {
    value: Value,
    human: String,
    code: u8,
}

impl Report {
    fn new(value: impl Serialize, human: String) -> Result<Self, Failure> {
        let value = serde_json::to_value(value).map_err(|e| Error::inconsistent(format!("serialization: {e}")))?;
        Ok(Report { value, human, code: 0 })
    }
}

/// Library errors plus failures of the command line itself.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Prefixes parse errors with the file they came from, keeping the variant.
fn in_file<T>(path: &Path, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Error::parse(line, column, format!("{}: {message}", path.display()))
        }
        other => other,
    })
}

fn load_group(path: &Path) -> Result<PermGroup, Failure> {
    Ok(in_file(path, parse_group(&read(path)?))?)
}

fn load_chain(path: &Path) -> Result<ChainSpec, Failure> {
    Ok(in_file(path, ChainSpec::parse(&read(path)?))?)
}

fn load_tuple(path: &Path, infinity: Option<usize>) -> Result<BranchTuple, Failure> {
    let t = in_file(path, BranchTuple::parse(&read(path)?))?;
    match infinity {
        Some(i) => Ok(t.with_infinity(i)?),
        None => Ok(t),
    }
}

fn one_based(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    sets.iter().map(|s| s.iter().map(|p| p + 1).collect()).collect()
}

fn run(command: Command, caps: &Caps) -> Result<(Report, bool), Failure> {
    let (report, json) = match command {
        Command::GroupInfo { group, out } => (group_info(&group, caps)?, out.json),
        Command::Genus { tuple, ramification, infinity, out } => {
            (genus(tuple.as_deref(), ramification.as_deref(), infinity)?, out.json)
        }
        Command::Table1 { row, ell, a, range, out } => (table1(row, ell, a, range)?, out.json),
        Command::RedsetCandidates { group, geometric, tuple, infinity, out } => (
            redset(group.as_deref(), geometric.as_deref(), &tuple, infinity, caps)?,
            out.json,
        ),
        Command::WreathScan { k, threads, out } => (wreath(k, threads, caps)?, out.json),
        Command::LemmaCheck { lemma } => lemma_check(lemma, caps)?,
        Command::SpeclabScan { chain, f1_index, ints, grid, threads, out } => {
            let window = match (ints, grid) {
                (Some(v), _) => Window::Integers { lo: v[0], hi: v[1] },
                (None, Some(v)) => Window::Grid { height: v[0], denominator: v[1] },
                (None, None) => unreachable!("clap requires one window"),
            };
            (scan(&chain, f1_index, window, threads)?, out.json)
        }
    };
    Ok((report, json))
}

fn group_info(path: &Path, caps: &Caps) -> Result<Report, Failure> {
    let g = load_group(path)?;
    let order = g.try_order()?;
    let transitive = g.is_transitive();
    let primitive = if transitive { Some(is_primitive(&g)?) } else { None };
    let solvable = is_solvable(&g);
    let generators: Vec<String> = g
        .canonical_generators(caps.element_enumeration)
        .unwrap_or_else(|_| g.generators().to_vec())
        .iter()
        .map(|x| x.to_cycle_string())
        .collect();
    let orbits = one_based(&g.orbits());
    let human = format!(
        "degree {}, order {order}, {} orbit(s), transitive: {transitive}, primitive: {}, solvable: {solvable}\ngenerators: {}\n",
        g.degree(),
        orbits.len(),
        primitive.map_or("n/a".to_string(), |p| p.to_string()),
        generators.join(", "),
    );
    Report::new(
        json!({
            "degree": g.degree(),
            "order": order.to_string(),
            "orbits": orbits,
            "transitive": transitive,
            "primitive": primitive,
            "solvable": solvable,
            "generators": generators,
        }),
        human,
    )
}

fn genus(tuple: Option<&Path>, ramification: Option<&str>, infinity: Option<usize>) -> Result<Report, Failure> {
    let (r, g, inf) = match (tuple, ramification) {
        (Some(path), _) => {
            let t = load_tuple(path, infinity)?;
            let g = tuple_genus(&t)?;
            (t.ramification(), g, t.infinity())
        }
        (None, Some(text)) => {
            let r = RamificationType::parse(text)?;
            let g = ramification_genus(&r)?;
            if let Some(i) = infinity {
                if i >= r.entries().len() {
                    return Err(Error::input(format!("infinity index {i} out of range")).into());
                }
            }
            (r, g, infinity)
        }
        (None, None) => unreachable!("clap requires an input"),
    };
    let two_set = two_set_ramification(&r).and_then(|t| ramification_genus(&t)).ok();
    let siegel = inf.map(|i| siegel_test(&r.entries()[i], g));
    let human = format!(
        "degree {}, index sum {}, genus {g}, 2-set genus {}, siegel {}\n",
        r.degree(),
        r.index_sum(),
        two_set.map_or("n/a".into(), |x| x.to_string()),
        siegel.map_or("unknown".into(), |s| s.to_string()),
    );
    Report::new(
        json!({
            "degree": r.degree(),
            "ramification": r.entries(),
            "index_sum": r.index_sum(),
            "genus": g,
            "two_set_genus": two_set,
            "siegel": siegel,
        }),
        human,
    )
}

fn table1_line(r: &Table1Report) -> String {
    format!(
        "row {} ℓ={}{}  natural genus {}  2-set genus {}  {}\n",
        r.row,
        r.ell,
        r.a.map_or(String::new(), |a| format!(" a={a}")),
        r.natural_genus,
        r.two_set_genus,
        if r.admissible { "ok" } else { "FAIL" }
    )
}

fn table1(row: Option<usize>, ell: Option<i64>, a: Option<i64>, range: Option<Vec<i64>>) -> Result<Report, Failure> {
    if let Some(range) = range {
        let rows: Vec<usize> = match row {
            Some(r) => vec![r],
            None => (1..=9).collect(),
        };
        let mut reports = Vec::new();
        for r in rows {
            for (ell, a) in table1_admissible_ells(r, range[0], range[1])? {
                reports.push(table1_verify(r, ell, a)?);
            }
        }
        let failures = reports.iter().filter(|r| !r.admissible).count();
        let mut human = format!("{} instance(s), {failures} failure(s)\n", reports.len());
        for r in &reports {
            human.push_str(&table1_line(r));
        }
        return Report::new(json!({ "instances": reports, "failures": failures }), human);
    }
    let row = row.expect("clap requires --row");
    let ell = ell.ok_or_else(|| Error::input("--ell is required without --range"))?;
    let r = table1_verify(row, ell, a)?;
    let human = table1_line(&r);
    Report::new(&r, human)
}

fn redset(
    group: Option<&Path>,
    geometric: Option<&Path>,
    tuple: &Path,
    infinity: Option<usize>,
    caps: &Caps,
) -> Result<Report, Failure> {
    let t = load_tuple(tuple, infinity)?;
    let g = match geometric {
        Some(p) => load_group(p)?,
        None => t.group(),
    };
    let m = match group {
        Some(p) => MonodromyPair::new(load_group(p)?, g, t, caps)?,
        None if geometric.is_some() => MonodromyPair::new(g.clone(), g, t, caps)?,
        None => MonodromyPair::geometric_only(t, caps)?,
    };
    let report = red_candidates(&m, caps)?;
    let mut human = format!(
        "degree {}: {} candidate(s), {} rejected (DG ≠ A), {} rejected (genus ≥ 2)\n",
        report.degree,
        report.candidates.len(),
        report.rejected_dg,
        report.rejected_genus.len()
    );
    let _ = writeln!(human, "{:>8} {:>6} {:>7}  generators", "index", "genus", "siegel");
    for c in &report.candidates {
        let _ = writeln!(
            human,
            "{:>8} {:>6} {:>7}  {}",
            c.index,
            c.genus,
            c.siegel.map_or("?".into(), |s| s.to_string()),
            c.generators.join(", ")
        );
    }
    for n in &report.notes {
        let _ = writeln!(human, "note: {n}");
    }
    Report::new(&report, human)
}

fn wreath(k: usize, threads: usize, caps: &Caps) -> Result<Report, Failure> {
    let r = wreath_scan(k, threads, caps)?;
    let human = format!(
        "k={} degree {}: {} class triple(s), max index sum {}, {} flagged\n",
        r.k,
        r.degree,
        r.triples,
        r.max_index_sum,
        r.flagged.len()
    );
    Report::new(
        json!({
            "k": r.k,
            "degree": r.degree,
            "class_counts": r.classes.iter().map(Vec::len).collect::<Vec<_>>(),
            "triples": r.triples,
            "max_index_sum": r.max_index_sum,
            "flagged": r.flagged,
        }),
        human,
    )
}

fn lemma_check(lemma: Lemma, caps: &Caps) -> Result<(Report, bool), Failure> {
    let (value, json) = match lemma {
        Lemma::SolvableQuotient { h, u, out } => {
            let r = transitive_by_solvable_quotient(&load_chain(&h)?, &load_chain(&u)?, caps)?;
            (serde_json::to_value(r), out.json)
        }
        Lemma::AffineChain { h, u, skip_distinct_kernels, out } => {
            let r = transitive_by_affine_chain(&load_chain(&h)?, &load_chain(&u)?, !skip_distinct_kernels, caps)?;
            (serde_json::to_value(r), out.json)
        }
        Lemma::Goursat { a, b, out } => {
            let r = goursat_split_check(&load_group(&a)?, &load_group(&b)?, caps)?;
            (serde_json::to_value(r), out.json)
        }
        Lemma::Quotients { group, out } => {
            let ok = no_nonsolvable_proper_quotient(&load_group(&group)?, caps)?;
            (Ok(json!({ "every_proper_quotient_solvable": ok })), out.json)
        }
    };
    let value = value.map_err(|e| Error::inconsistent(format!("serialization: {e}")))?;
    let human = format!("{}\n", serde_json::to_string_pretty(&value).expect("values serialize"));
    Ok((Report { value, human, code: 0 }, json))
}

fn scan(chain: &Path, f1_index: usize, window: Window, threads: usize) -> Result<Report, Failure> {
    let chain = in_file(chain, parse_chain(&read(chain)?))?;
    let r = scan_window(&chain, f1_index, &window, &FactorOptions::default(), threads)?;
    let s = &r.summary;
    let mut human = format!(
        "f = {}, f1 = {}: {} point(s), {} reducible, {} in f1(Q), {} unknown, exceptions [{}], value-set misses [{}], discriminant points [{}]\n",
        r.f,
        r.f1,
        s.points,
        s.reducible,
        s.hits,
        s.unknown,
        s.exceptions.join(", "),
        s.value_set_misses.join(", "),
        s.discriminant_points.join(", ")
    );
    for rec in r.records.iter().filter(|x| x.reducible != redf::speclab::Reducibility::Irreducible) {
        let _ = writeln!(
            human,
            "{:>10} {:?} witness {} {}",
            rec.t0,
            rec.reducible,
            rec.witness.as_deref().unwrap_or("-"),
            rec.factors.join("")
        );
    }
    for n in &r.notes {
        let _ = writeln!(human, "note: {n}");
    }
    let mut report = Report::new(&r, human)?;
    if s.unknown > 0 {
        report.code = 3;
    }
    Ok(report)
}

fn exit_code(e: &Failure) -> u8 {
    match e {
        Failure::Usage(_) | Failure::Lib(Error::Parse { .. }) => 2,
        Failure::Lib(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command, &Caps::default()) {
        Ok((report, json)) => {
            if json {
                println!("{}", serde_json::to_string(&report.value).expect("values serialize"));
            } else {
                print!("{}", report.human);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
