//! `poinf`: evaluate, compare and solve in the monoid of cofinite monotone
//! partial bijections of `N x N`.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use poinf::congruence::sigma_equiv;
use poinf::dsl::eval_str;
use poinf::equations::{solve_left, solve_right};
use poinf::oracle::{random_element, RandomParams};
use poinf::quotient::iota_map;
use poinf::verify::{self, Config};
use poinf::{Element, Point};

#[derive(Parser)]
#[command(name = "poinf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print its JSON form.
    Eval {
        expr: String,
        /// Print the image of the point `i,j` instead (`null` if undefined).
        #[arg(long, value_name = "I,J", value_parser = parse_point)]
        apply: Option<Point>,
    },
    /// Print the normalized JSON form.
    Normalize { expr: String },
    /// Equality; exit 0 when true, 1 when false.
    Eq { a: String, b: String },
    /// Natural partial order `a <= b`; exit 0 when true, 1 when false.
    Leq { a: String, b: String },
    /// Sigma-equivalence; exit 0 when true, 1 when false.
    SigmaEq { a: String, b: String },
    /// The image in the quotient: exponent word and orientation.
    Canon { expr: String },
    /// All `x` with `a x = b` (right) or `x a = b` (left), one JSON per line.
    Solve {
        #[arg(long, value_enum)]
        side: Side,
        a: String,
        b: String,
        /// Explicit search window; must not be below the analytic bound.
        #[arg(long)]
        margin: Option<u32>,
    },
    /// Run the verification suites; nonzero exit on any failure.
    Verify {
        /// Run a single suite (`a1` .. `a11`).
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, env = "MCM_SEED", default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Override the sample count of randomized suites.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Emit a seeded random element.
    Random {
        #[arg(long, env = "MCM_SEED", default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_window: u32,
        #[arg(long, default_value_t = 4)]
        max_shift: u32,
        #[arg(long, default_value_t = 6)]
        hole_budget: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Right,
    Left,
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (i, j) = s.split_once(',').ok_or("expected i,j")?;
    let coord = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad coordinate {t:?}: {e}"));
    Point::try_new(coord(i)?, coord(j)?).map_err(|e| e.to_string())
}

fn load(expr: &str) -> Result<Element, String> {
    eval_str(expr).map_err(|e| format!("{expr:?}: {e}"))
}

fn answer(b: bool) -> ExitCode {
    println!("{b}");
    if b {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Eval { expr, apply } => {
            let a = load(&expr)?;
            match apply {
                Some(x) => match a.apply(x) {
                    Some(y) => println!("[{},{}]", y.i, y.j),
                    None => println!("null"),
                },
                None => println!("{}", a.to_json()),
            }
        }
        Command::Normalize { expr } => println!("{}", load(&expr)?.normalize().to_json()),
        Command::Eq { a, b } => return Ok(answer(load(&a)? == load(&b)?)),
        Command::Leq { a, b } => return Ok(answer(load(&a)?.natural_leq(&load(&b)?))),
        Command::SigmaEq { a, b } => return Ok(answer(sigma_equiv(&load(&a)?, &load(&b)?))),
        Command::Canon { expr } => println!("{}", iota_map(&load(&expr)?).to_json()),
        Command::Solve { side, a, b, margin } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let sols = match side {
                Side::Right => solve_right(&a, &b, margin),
                Side::Left => solve_left(&a, &b, margin),
            }
            .map_err(|e| e.to_string())?;
            for x in sols {
                println!("{}", x.to_json());
            }
        }
        Command::Verify { suite, seed, samples } => {
            let config = Config { seed, samples };
            let reports = match suite {
                Some(name) => {
                    let s = verify::find(&name).ok_or_else(|| format!("unknown suite {name:?}"))?;
                    vec![s.run(&config)]
                }
                None => verify::run_all(&config),
            };
            for r in &reports {
                println!("{r}");
            }
            if reports.iter().any(|r| !r.passed()) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Random { seed, max_window, max_shift, hole_budget } => {
            let params = RandomParams { max_window, max_shift, hole_budget };
            println!("{}", random_element(seed, params).map_err(|e| e.to_string())?.to_json());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
