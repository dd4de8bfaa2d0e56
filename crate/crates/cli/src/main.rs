use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use syzlab::betti::{
    betti_table, check_n0, check_n2p, check_np, k_normality, normality_threshold, property_report,
    regularity_of_sheaf, Method, Window,
};
use syzlab::groebner::groebner;
use syzlab::harness::{
    cache_dir_from_env, corpus_emit, run_job, run_report, standard_corpus, Check, Job, JobReport,
};
use syzlab::veronese::veronese_presentation;
use syzlab::{Budget, Ideal, MonomialOrder, DEFAULT_PRIME};

#[derive(Parser)]
#[command(name = "syzlab", version, about = "Groebner bases, Betti tables and syzygy properties over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Ideal file (text or JSON), `-` for stdin, or a corpus name.
    ideal: String,
    /// Prime for corpus names.
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    budget: Option<u64>,
}

impl Input {
    fn load(&self) -> Result<Ideal> {
        load_ideal(&self.ideal, self.prime)
    }

    fn budget(&self) -> Budget {
        self.budget.map_or_else(Budget::unlimited, |s| Budget::with_timeout(Duration::from_secs(s)))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis.
    Gb {
        #[command(flatten)]
        input: Input,
        /// grevlex, lex or elimK.
        #[arg(long)]
        order: Option<String>,
    },
    /// Graded Betti table of the quotient ring.
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_i: Option<usize>,
        #[arg(long)]
        max_q: Option<u32>,
        #[arg(long, value_enum, default_value_t = MethodArg::Koszul)]
        method: MethodArg,
        /// Print the JSON property report instead of the diagram.
        #[arg(long)]
        json: bool,
    },
    /// One syzygy property or invariant.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        what: CheckWhat,
        /// Stop scanning N_p or N_2,p after this p.
        #[arg(long)]
        max_p: Option<usize>,
    },
    /// Kernel of the degree-L re-embedding.
    Veronese {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        power: u32,
        /// Use all degree-L monomials instead of a basis of the quotient.
        #[arg(long)]
        full_ambient: bool,
        /// Write the kernel here and the header to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The built-in corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Check one statement family on an ideal or corpus entry.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        /// Ideal file or corpus name.
        target: String,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        /// Largest power for main1.
        #[arg(long, default_value_t = 3)]
        lmax: u32,
        /// Power for veronese and imply.
        #[arg(long, default_value_t = 2)]
        ell: u32,
        /// N_p bound used by imply.
        #[arg(long, default_value_t = 1)]
        p: usize,
        /// Powers for ci, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        ells: Vec<u32>,
        /// Seconds per claim.
        #[arg(long, default_value_t = 1800)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run a job file and write report.json and report.txt.
    Run {
        job: PathBuf,
        #[arg(long, default_value = "syzlab-report")]
        out: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CheckWhat {
    #[arg(long)]
    np: bool,
    #[arg(long)]
    n2p: bool,
    #[arg(long)]
    n0: bool,
    /// Decide k-normality for this k.
    #[arg(long, value_name = "K")]
    normality: Option<u32>,
    /// Least s with k-normality for all k >= s.
    #[arg(long)]
    threshold: bool,
    #[arg(long)]
    regularity: bool,
}

#[derive(Subcommand)]
enum CorpusAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Emit {
        name: String,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Koszul,
    Schreyer,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Koszul => Method::Koszul,
            MethodArg::Schreyer => Method::Schreyer,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    Main1,
    Veronese,
    Imply,
    Ci,
}

fn load_ideal(spec: &str, prime: u32) -> Result<Ideal> {
    if spec == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(Ideal::parse_any(&text)?);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Ideal::parse_any(&text).with_context(|| format!("parsing {spec}"));
    }
    corpus_emit(spec, prime, &Budget::unlimited()).with_context(|| format!("'{spec}' is neither a file nor a corpus name"))
}

fn window(max_i: Option<usize>, max_q: Option<u32>) -> Option<Window> {
    match (max_i, max_q) {
        (None, None) => None,
        (i, q) => Some(Window::new(i.unwrap_or(usize::MAX / 2), q.unwrap_or(u32::MAX / 2))),
    }
}

fn print_report(report: &JobReport, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

/// Exit status 1 when a literature claim that was evaluated came out false.
fn verdict(report: &JobReport) -> ExitCode {
    if report.literature_failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gb { input, order } => {
            let mut ideal = input.load()?;
            if let Some(o) = order {
                ideal = ideal.with_order(MonomialOrder::parse(&o)?);
            }
            let gb = groebner(&ideal, &input.budget())?;
            print!("{}", gb.as_ideal().to_text());
        }
        Command::Betti { input, max_i, max_q, method, json } => {
            let ideal = input.load()?;
            let budget = input.budget();
            let w = window(max_i, max_q);
            if json {
                let report = property_report(&ideal, w, method.into(), &budget)?;
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                let table = betti_table(&ideal, w, method.into(), &budget)?;
                print!("{}", table.diagram());
                if !table.is_complete() {
                    println!("(window not complete)");
                }
            }
        }
        Command::Check { input, what, max_p } => {
            let ideal = input.load()?;
            let b = input.budget();
            if what.np {
                println!("N_p: {}", check_np(&ideal, max_p, &b)?.label());
            } else if what.n2p {
                println!("N_2,p: {}", check_n2p(&ideal, max_p, &b)?.label());
            } else if what.n0 {
                let v = check_n0(&ideal, &b)?;
                match v.witness {
                    Some(k) => println!("N_0: {} (depth {}, not {k}-normal)", v.holds, v.depth),
                    None => println!("N_0: {} (depth {})", v.holds, v.depth),
                }
            } else if let Some(k) = what.normality {
                println!("{k}-normal: {}", k_normality(&ideal, k, &b)?);
            } else if what.threshold {
                println!("normal from: {}", normality_threshold(&ideal, &b)?);
            } else if what.regularity {
                println!("regularity: {}", regularity_of_sheaf(&ideal, &b)?);
            }
        }
        Command::Veronese { input, power, full_ambient, out } => {
            let ideal = input.load()?;
            let p = veronese_presentation(&ideal, power, full_ambient, &input.budget())?;
            let header = serde_json::to_string(&p.header())?;
            match out {
                Some(path) => {
                    fs::write(&path, p.kernel.to_text()).with_context(|| format!("writing {}", path.display()))?;
                    println!("{header}");
                }
                None => print!("# {header}\n{}", p.kernel.to_text()),
            }
        }
        Command::Corpus { action } => match action {
            CorpusAction::List { json } => {
                let corpus = standard_corpus();
                if json {
                    println!("{}", serde_json::to_string_pretty(&corpus)?);
                } else {
                    for e in corpus {
                        println!("{:<32} {}", e.name, e.family.name());
                    }
                }
            }
            CorpusAction::Emit { name, prime, json } => {
                let ideal = corpus_emit(&name, prime, &Budget::unlimited())?;
                if json {
                    println!("{}", serde_json::to_string_pretty(&ideal.to_json())?);
                } else {
                    print!("{}", ideal.to_text());
                }
            }
        },
        Command::Verify { theorem, target, prime, lmax, ell, p, ells, budget, json } => {
            let check = match theorem {
                Theorem::Main1 => Check::Main1 { lmax },
                Theorem::Veronese => Check::Veronese { ell },
                Theorem::Imply => Check::Imply { ell, p },
                Theorem::Ci => Check::Ci { ells },
            };
            let job = Job {
                entries: vec![target],
                checks: vec![check],
                window: None,
                prime,
                budget,
                method: Method::Koszul,
                verify_fraction: 0.1,
            };
            let report = run_job(&job, cache_dir_from_env().as_deref())?;
            if let Some(syzlab::harness::report::Outcome::Error { message }) = report.results.first().map(|r| &r.outcome) {
                bail!("{message}");
            }
            print_report(&report, json)?;
            return Ok(verdict(&report));
        }
        Command::Run { job, out } => {
            let text = fs::read_to_string(&job).with_context(|| format!("reading {}", job.display()))?;
            let job = Job::parse(&text)?;
            let summary = run_report(&job, &out, cache_dir_from_env().as_deref())?;
            println!(
                "{} items, {} from cache, {} failed literature claims; wrote {} and {}",
                summary.items,
                summary.cache_hits,
                summary.literature_failures,
                summary.json_path.display(),
                summary.text_path.display()
            );
            return Ok(verdict(&summary.report));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
