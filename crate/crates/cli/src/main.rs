use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use blockmonoid_cli::{build_job, exit, parse_input, run, Entry, Format, JobSpec, ParseError};

#[derive(Parser, Debug)]
#[command(name = "blockmon", version, about = "Block monoids of finitely generated abelian groups")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order (torsion part for groups with a free part).
    #[arg(long, global = true, value_name = "N")]
    cap_order: Option<u64>,
    /// Longest sequence.
    #[arg(long, global = true, value_name = "M")]
    cap_len: Option<usize>,
    /// Largest factorization search degree (twice the longest atom).
    #[arg(long, global = true, value_name = "D")]
    cap_degree: Option<u64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct Target {
    /// Group, e.g. `Z/6`, `Z/2 x Z/4`, `Z^2 x Z/3`.
    #[arg(long, short)]
    group: String,
    /// Elements as coordinate tuples, e.g. `(1),(1),(4)`.
    #[arg(long, short, allow_hyphen_values = true)]
    seq: String,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Atoms of B(g).
    Atoms(Target),
    /// A minimal presentation of B(g) under the length grading.
    Presentation(Target),
    /// Catenary degree of B(g).
    Catenary {
        #[command(flatten)]
        target: Target,
        /// Also report the graded catenary degree.
        #[arg(long)]
        graded: bool,
    },
    /// Transfer a presentation to the sequence with one entry repeated.
    Tilde {
        #[command(flatten)]
        target: Target,
        /// 1-based index of the entry to repeat.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
    /// Reduced Gröbner system of B(g), or the tilde system built from it.
    Groebner {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "lex", value_parser = ["lex", "grlex"])]
        order: String,
        #[arg(long)]
        tilde: bool,
        /// 1-based index of the entry to repeat (with --tilde).
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
    /// Catenary bounds and Davenport constants.
    Bounds(Target),
    /// B((g, h)) for an acyclic quiver with weight h.
    Quiver {
        /// Arrows as `s>t`, comma separated, e.g. `1>2,1>2`.
        #[arg(long)]
        arrows: String,
        /// Weight vector, e.g. `1,-1` or `(1,-1)`.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Run the verification sweeps.
    Sweep {
        /// Clip every range to groups of at most this order.
        #[arg(long)]
        max_order: Option<u64>,
        /// Clip every range to sequences of at most this length.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Run a job file (`-` for stdin).
    Run {
        #[arg(default_value = "-")]
        file: String,
    },
}

fn target(cmd: &str, t: &Target) -> Vec<Entry> {
    vec![
        Entry::arg("cmd", cmd),
        Entry::arg("group", &t.group),
        Entry::arg("seq", &t.seq),
    ]
}

fn job(cli: &Cli) -> Result<JobSpec, String> {
    let mut entries = match &cli.command {
        Cmd::Atoms(t) => target("atoms", t),
        Cmd::Presentation(t) => target("presentation", t),
        Cmd::Catenary { target: t, graded } => {
            let mut e = target("catenary", t);
            e.push(Entry::arg("graded", graded.to_string()));
            e
        }
        Cmd::Tilde { target: t, repeat } => {
            let mut e = target("tilde", t);
            e.push(Entry::arg("repeat", repeat.to_string()));
            e
        }
        Cmd::Groebner {
            target: t,
            order,
            tilde,
            repeat,
        } => {
            let mut e = target("groebner", t);
            e.push(Entry::arg("order", order));
            e.push(Entry::arg("tilde", tilde.to_string()));
            e.push(Entry::arg("repeat", repeat.to_string()));
            e
        }
        Cmd::Bounds(t) => target("bounds", t),
        Cmd::Quiver { arrows, h } => vec![
            Entry::arg("cmd", "quiver"),
            Entry::arg("arrows", arrows),
            Entry::arg("h", h),
        ],
        Cmd::Sweep { max_order, max_len } => {
            let mut e = vec![Entry::arg("cmd", "sweep")];
            if let Some(o) = max_order {
                e.push(Entry::arg("max-order", o.to_string()));
            }
            if let Some(l) = max_len {
                e.push(Entry::arg("max-len", l.to_string()));
            }
            e
        }
        Cmd::Run { file } => {
            let text = if file == "-" {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| format!("cannot read stdin: {e}"))?;
                s
            } else {
                std::fs::read_to_string(file).map_err(|e| format!("cannot read {file}: {e}"))?
            };
            let mut job = parse_input(&text).map_err(|e| render(&e, file))?;
            overrides(cli, &mut job);
            return Ok(job);
        }
    };
    if cli.json {
        entries.push(Entry::arg("format", "json"));
    }
    let mut job = build_job(&entries).map_err(|e| e.to_string())?;
    overrides(cli, &mut job);
    Ok(job)
}

fn render(e: &ParseError, file: &str) -> String {
    if e.line == 0 {
        format!("{file}: {}", e.message)
    } else {
        format!("{file}:{}:{}: {}", e.line, e.column, e.message)
    }
}

fn overrides(cli: &Cli, job: &mut JobSpec) {
    let caps = &mut job.options.caps;
    if let Some(n) = cli.cap_order {
        caps.max_order = n;
    }
    if let Some(m) = cli.cap_len {
        caps.max_len = m;
    }
    if let Some(d) = cli.cap_degree {
        caps.max_degree = d;
    }
    if cli.json {
        job.options.format = Format::Json;
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if [cli.cap_order.map(|x| x as u128), cli.cap_len.map(|x| x as u128), cli.cap_degree.map(|x| x as u128)]
        .contains(&Some(0))
    {
        eprintln!("error: caps must be positive");
        return ExitCode::from(exit::PARSE as u8);
    }
    let job = match job(&cli) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::PARSE as u8);
        }
    };
    match run(&job) {
        Ok(report) => {
            print!("{}", report.render(job.options.format));
            if report.passed {
                ExitCode::from(exit::OK as u8)
            } else {
                ExitCode::from(exit::FAILURE as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::FAILURE as u8)
        }
    }
}
