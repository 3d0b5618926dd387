//! `igtn`: command-line front end for `igtn-core`.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use igtn_core::square::{SquareIndex, SquareRecord};
use igtn_core::verify::DEFAULT_MAX_COSETS;
use igtn_core::*;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

const N_CAP: usize = 12;
const SQUARE_WARN_N: usize = 8;

const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Parser)]
#[command(name = "igtn", version, about = "Maximal subgroups of IG(E(T_n)) at rank r")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for sampled output.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Allow r = n-1 for theorem commands.
    #[arg(long, global = true)]
    allow_boundary: bool,
    /// Lift the n ≤ 12 cap to the library limit.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Top,
    Middle,
    Bottom,
    All,
}

#[derive(clap::Args, Clone, Copy)]
struct Rank {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Counts of partitions, subsets, pairs, singular squares and labels.
    Stats(Rank),
    /// The label of a transversal pair.
    Label {
        #[arg(long = "P")]
        p: String,
        #[arg(long = "A")]
        a: String,
    },
    /// Stream squares as records.
    Squares {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        only_singular: bool,
        /// Emit a seeded sample of this many squares.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// The presentation with generators f[P|A].
    Present {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
    },
    /// Run the derivation and print the final presentation.
    Reduce {
        #[command(flatten)]
        rank: Rank,
        /// Write the derivation log here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Check a derivation log.
    Replay {
        #[arg(long)]
        log: PathBuf,
    },
    /// Decide the theorem at (n, r).
    Verify {
        #[command(flatten)]
        rank: Rank,
        #[arg(long)]
        with_coset_oracle: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
}

struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::InvalidParameters(_) | Error::Parse(_)) => EXIT_USAGE,
            Some(Error::BudgetExhausted(_)) => EXIT_BUDGET,
            Some(_) => EXIT_PRECONDITION,
            None if err.downcast_ref::<io::Error>().is_some() => 1,
            None => EXIT_PRECONDITION,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        anyhow::Error::from(err).into()
    }
}

fn usage(msg: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        err: anyhow!(msg),
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx {
    format: Format,
    seed: u64,
    allow_boundary: bool,
    cap: usize,
    out: BufWriter<io::Stdout>,
}

impl Ctx {
    fn check(&self, rank: Rank) -> Result<(), Failure> {
        let Rank { n, r } = rank;
        if n > self.cap {
            return Err(usage(format!("n = {n} exceeds the cap of {}", self.cap)));
        }
        if r == 0 || r > n {
            return Err(usage(format!("need 1 ≤ r ≤ n, got n = {n}, r = {r}")));
        }
        Ok(())
    }

    fn check_theorem(&self, rank: Rank) -> Result<(), Failure> {
        self.check(rank)?;
        let Rank { n, r } = rank;
        if r + 2 > n && !(self.allow_boundary && r + 1 == n) {
            return Err(usage(format!(
                "theorem commands need r ≤ n-2 (n = {n}, r = {r}); pass --allow-boundary for r = n-1"
            )));
        }
        Ok(())
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        serde_json::to_writer(&mut self.out, value).map_err(anyhow::Error::from)?;
        writeln!(self.out).map_err(anyhow::Error::from)?;
        Ok(())
    }

    fn line(&mut self, s: impl AsRef<str>) -> Result<(), Failure> {
        writeln!(self.out, "{}", s.as_ref()).map_err(anyhow::Error::from)?;
        Ok(())
    }
}

fn stats(ctx: &mut Ctx, rank: Rank) -> Outcome {
    ctx.check(rank)?;
    let Rank { n, r } = rank;
    let partitions = stirling2(n as u64, r as u64)?;
    let subsets = binomial(n as u64, r as u64)?;
    let pairs = count_transversal_pairs(n, r)?;
    let singular = SquareIndex::new(n, r)?.count_singular();
    let spectrum = label_spectrum(n, r)?;
    let entries: Vec<_> = spectrum
        .iter()
        .map(|(l, c)| json!({"label": l.cycle_form(), "image": l, "count": c}))
        .collect();
    if ctx.format == Format::Json {
        ctx.json(&json!({
            "n": n,
            "r": r,
            "partitions": partitions,
            "subsets": subsets,
            "transversal_pairs": pairs,
            "singular_squares": singular.all,
            "proper_singular_squares": singular.proper,
            "label_spectrum": {"distinct": spectrum.len(), "entries": entries},
        }))?;
    } else {
        ctx.line(format!("partitions {partitions}"))?;
        ctx.line(format!("subsets {subsets}"))?;
        ctx.line(format!("transversal_pairs {pairs}"))?;
        ctx.line(format!("singular_squares {}", singular.all))?;
        ctx.line(format!("proper_singular_squares {}", singular.proper))?;
        ctx.line(format!("distinct_labels {}", spectrum.len()))?;
        for (l, c) in &spectrum {
            ctx.line(format!("label {} {c}", l.cycle_form()))?;
        }
    }
    Ok(0)
}

fn label_cmd(ctx: &mut Ctx, p: &str, a: &str) -> Outcome {
    let p: Partition = p.parse()?;
    if p.n() > ctx.cap {
        return Err(usage(format!("n = {} exceeds the cap of {}", p.n(), ctx.cap)));
    }
    let a = Subset::parse(a, p.n())?;
    let lam = label(&p, &a)?;
    if ctx.format == Format::Json {
        let context = LabelContext::new(&p, &a)?;
        ctx.json(&json!({
            "P": p,
            "A": a,
            "label": lam.cycle_form(),
            "image": lam,
            "context": context,
        }))?;
    } else {
        ctx.line(lam.cycle_form())?;
    }
    Ok(0)
}

fn squares(ctx: &mut Ctx, rank: Rank, only_singular: bool, sample_size: Option<usize>) -> Outcome {
    ctx.check(rank)?;
    let Rank { n, r } = rank;
    if n > SQUARE_WARN_N {
        eprintln!("warning: square enumeration at n = {n} is large");
    }
    let index = SquareIndex::new(n, r)?;
    let mut all = if only_singular {
        index.singular_squares()
    } else {
        index.squares()
    };
    if let Some(k) = sample_size {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        let mut picks = sample(&mut rng, all.len(), k.min(all.len())).into_vec();
        picks.sort_unstable();
        all = picks.into_iter().map(|i| all[i]).collect();
    }
    let format = ctx.format;
    let lines: Vec<String> = all
        .par_iter()
        .map(|s| {
            let rec = SquareRecord::new(s);
            match format {
                Format::Json => serde_json::to_string(&rec).expect("square records serialize"),
                Format::Text => {
                    let l = rec.labels;
                    format!(
                        "{} {} {} {} {} {} {} {} {}",
                        s.p,
                        s.q,
                        s.a,
                        s.b,
                        l.pa.cycle_form(),
                        l.pb.cycle_form(),
                        l.qa.cycle_form(),
                        l.qb.cycle_form(),
                        if rec.singular { "singular" } else { "nonsingular" }
                    )
                }
            }
        })
        .collect();
    for l in lines {
        ctx.line(l)?;
    }
    Ok(0)
}

fn present(ctx: &mut Ctx, rank: Rank, family: Family) -> Outcome {
    ctx.check(rank)?;
    let Rank { n, r } = rank;
    let (pres, counts) = build_presentation(n, r)?;
    let (pres, name) = match family {
        Family::Top => (pres.filtered(&[Provenance::Top]), "top"),
        Family::Middle => (pres.filtered(&[Provenance::Middle]), "middle"),
        Family::Bottom => (pres.filtered(&[Provenance::Bottom]), "bottom"),
        Family::All => (pres, "all"),
    };
    if ctx.format == Format::Json {
        ctx.json(&json!({
            "n": n,
            "r": r,
            "family": name,
            "counts": counts,
            "generators": pres.generators,
            "relations": pres.relations,
        }))?;
    } else {
        write!(ctx.out, "{}", pres.to_text()).map_err(anyhow::Error::from)?;
    }
    Ok(0)
}

fn reduce(ctx: &mut Ctx, rank: Rank, log_path: Option<PathBuf>) -> Outcome {
    ctx.check_theorem(rank)?;
    let Rank { n, r } = rank;
    if r + 1 == n {
        return Err(Failure {
            code: EXIT_PRECONDITION,
            err: anyhow!("no derivation at r = n-1: the group is free; use `verify --allow-boundary`"),
        });
    }
    let (pres, log) = run_pipeline(n, r)?;
    if let Some(path) = log_path {
        let text = serde_json::to_string_pretty(&log).map_err(anyhow::Error::from)?;
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    let report = replay(&log);
    if ctx.format == Format::Json {
        ctx.json(&json!({
            "n": n,
            "r": r,
            "steps": log.steps.len(),
            "replay_ok": report.is_ok(),
            "presentation": pres,
        }))?;
    } else {
        ctx.line(format!("steps {}", log.steps.len()))?;
        write!(ctx.out, "{}", pres.to_text()).map_err(anyhow::Error::from)?;
    }
    Ok(if report.is_ok() { 0 } else { EXIT_VERIFICATION })
}

fn replay_cmd(ctx: &mut Ctx, path: PathBuf) -> Outcome {
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let log: DerivationLog = serde_json::from_str(&text).map_err(|e| usage(format!("malformed log: {e}")))?;
    let report = replay(&log);
    if ctx.format == Format::Json {
        ctx.json(&json!({
            "n": log.n,
            "r": log.r,
            "ok": report.is_ok(),
            "steps_checked": report.steps_checked,
            "values": report.values,
            "relators": report.relators,
            "failures": report.failures,
        }))?;
    } else {
        ctx.line(format!(
            "{} steps checked, {} values, {} relators, {} failures",
            report.steps_checked,
            report.values,
            report.relators,
            report.failures.len()
        ))?;
        for f in &report.failures {
            match f.step {
                Some(i) => ctx.line(format!("step {i}: {}", f.reason))?,
                None => ctx.line(format!("log: {}", f.reason))?,
            }
        }
    }
    Ok(if report.is_ok() { 0 } else { EXIT_VERIFICATION })
}

fn verify_cmd(ctx: &mut Ctx, rank: Rank, coset_oracle: bool, max_cosets: usize) -> Outcome {
    ctx.check_theorem(rank)?;
    let Rank { n, r } = rank;
    let v = verify_theorem(n, r, VerifyBudget { coset_oracle, max_cosets })?;
    if ctx.format == Format::Json {
        ctx.json(&v)?;
    } else {
        ctx.line(format!("pipeline {}", v.pipeline))?;
        ctx.line(format!("homomorphism {}", v.homomorphism))?;
        match v.coset_order {
            Some(k) => ctx.line(format!("coset_order {k}"))?,
            None => ctx.line("coset_order none")?,
        }
        ctx.line(format!("verdict {}", v.verdict))?;
    }
    Ok(if r + 1 == n {
        0
    } else if !v.confirmed() {
        EXIT_VERIFICATION
    } else if coset_oracle && v.coset_order.is_none() {
        EXIT_BUDGET
    } else {
        0
    })
}

fn run(cli: Cli) -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(anyhow::Error::from)?;
    let mut ctx = Ctx {
        format: cli.format,
        seed: cli.seed,
        allow_boundary: cli.allow_boundary,
        cap: if cli.allow_large { MAX_N } else { N_CAP },
        out: BufWriter::new(io::stdout()),
    };
    let code = pool.install(|| match cli.command {
        Command::Stats(rank) => stats(&mut ctx, rank),
        Command::Label { p, a } => label_cmd(&mut ctx, &p, &a),
        Command::Squares {
            rank,
            only_singular,
            sample,
        } => squares(&mut ctx, rank, only_singular, sample),
        Command::Present { rank, family } => present(&mut ctx, rank, family),
        Command::Reduce { rank, log } => reduce(&mut ctx, rank, log),
        Command::Replay { log } => replay_cmd(&mut ctx, log),
        Command::Verify {
            rank,
            with_coset_oracle,
            max_cosets,
        } => verify_cmd(&mut ctx, rank, with_coset_oracle, max_cosets),
    })?;
    ctx.out.flush().map_err(anyhow::Error::from)?;
    Ok(code)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
