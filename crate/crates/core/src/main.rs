use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nilmult::baer::{baer_quotient, oracle_multiplier, relative_baer_quotient, BaerResult, Status};
use nilmult::finite::{parse_group_expr, schur_multiplier_oracle, DEFAULT_ORACLE_CAP};
use nilmult::harness::{parse_scenarios, reports_to_json, run_batch};
use nilmult::nq::{nilpotent_quotient, DEFAULT_CLASS_CAP};
use nilmult::presentations::{AmbientSubgroupSpec, FinitePresentation};
use nilmult::words::parse_word_in;
use nilmult::Integer;

#[derive(Parser)]
#[command(name = "nilmult", version, about = "c-nilpotent multipliers of finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A group given by a presentation file or a group expression.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupArg {
    /// Presentation file (`gens:` / `rel:` lines)
    #[arg(long)]
    pres: Option<PathBuf>,
    /// Group expression such as `semidirect:Z4,Z2,inv` or `wreath:Z2,Z2`
    #[arg(long)]
    group: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Class-j nilpotent quotient
    Nq {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long)]
        class: usize,
    },
    /// N_cM(G) = (R ∩ γ_{c+1}F) / [R, _cF]
    Baer {
        #[command(flatten)]
        g: GroupArg,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// (T ∩ γ_{c+1}K) / [T, _cK] for T the normal closure of --tgens in K
    BaerRel {
        /// Presentation file of K
        #[arg(long)]
        ambient: PathBuf,
        /// Comma-separated words over K's generators
        #[arg(long)]
        tgens: String,
        #[arg(long, default_value_t = 1)]
        c: usize,
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Schur multiplier H₂(G; Z) of a small finite group via the bar resolution
    OracleH2 {
        #[command(flatten)]
        g: GroupArg,
    },
    /// Run a scenario file and emit a JSON report
    Verify {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(g: &GroupArg) -> Result<FinitePresentation, String> {
    match (&g.pres, &g.group) {
        (Some(p), _) => FinitePresentation::parse(&read(p)?).map_err(|e| format!("{}: {e}", p.display())),
        (None, Some(e)) => Ok(parse_group_expr(e).and_then(|e| e.build()).map_err(|e| e.to_string())?.presentation),
        (None, None) => Err("give --pres or --group".into()),
    }
}

/// Splits at commas outside brackets and parentheses.
fn split_words(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|w| !w.is_empty()).collect()
}

fn print_baer(label: &str, r: &BaerResult, json: bool) -> Result<(), String> {
    if json {
        println!("{}", serde_json::to_string_pretty(r).map_err(|e| e.to_string())?);
    } else {
        println!("{label} = {}", r.invariants);
        println!("certificate: {}", serde_json::to_string(&r.certificate).map_err(|e| e.to_string())?);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Nq { g, class } => {
            let p = load(&g)?;
            let q = nilpotent_quotient::<Integer>(&p, class).map_err(|e| e.to_string())?;
            println!("class {} (requested {}){}", q.class(), q.requested_class(), if q.stabilized() { ", stabilized" } else { "" });
            for (i, l) in q.layers.iter().enumerate() {
                println!("γ_{}/γ_{} = {l}", i + 1, i + 2);
            }
            match q.order() {
                Some(n) => println!("order {n}"),
                None => println!("order infinite"),
            }
            let pc = &q.pc;
            for i in 0..pc.len() {
                let o = pc.order_of(i).map_or("∞".to_string(), |o| o.to_string());
                println!("g{i}: weight {}, relative order {o}, power {:?}", pc.weight(i), pc.power(i));
            }
            for j in 0..pc.len() {
                for i in 0..j {
                    if !pc.comm(j, i).is_empty() {
                        println!("[g{j}, g{i}] = {:?}", pc.comm(j, i));
                    }
                }
            }
            for (x, img) in q.generators.iter().zip(&q.images) {
                println!("{x} ↦ {img:?}");
            }
        }
        Command::Baer { g, c, cap, json } => {
            let p = load(&g)?;
            let r = baer_quotient(&p, c, cap).map_err(|e| e.to_string())?;
            print_baer(&format!("N_{c}M(G)"), &r, json)?;
        }
        Command::BaerRel { ambient, tgens, c, cap, json } => {
            let k = FinitePresentation::parse(&read(&ambient)?).map_err(|e| e.to_string())?;
            let words = split_words(&tgens)
                .into_iter()
                .map(|w| parse_word_in(w, k.generators()).map_err(|e| format!("`{w}`: {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            let spec = AmbientSubgroupSpec::new(k, words).map_err(|e| e.to_string())?;
            let r = relative_baer_quotient(&spec, c, cap).map_err(|e| e.to_string())?;
            print_baer("(T∩γ(K))/[T,K]", &r, json)?;
        }
        Command::OracleH2 { g } => {
            let m = match &g.group {
                Some(e) => parse_group_expr(e).and_then(|e| e.build()).map_err(|e| e.to_string())?.model,
                None => None,
            };
            let inv = match m {
                Some(m) => schur_multiplier_oracle(&m, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?,
                None => oracle_multiplier(&load(&g)?).map_err(|e| e.to_string())?.invariants,
            };
            println!("H_2(G) = {inv}");
        }
        Command::Verify { scenario, report, jobs } => {
            let text = read(&scenario)?;
            let stem = scenario.file_stem().map_or("scenario".into(), |s| s.to_string_lossy().into_owned());
            let items = parse_scenarios(&text, &stem, scenario.parent());
            let reports = run_batch(&items, jobs);
            let mut ok = true;
            for r in &reports {
                if let Some(e) = &r.error {
                    println!("{}: error: {e}", r.scenario_id);
                }
                for c in &r.checks {
                    let at = match (c.c, c.trunc) {
                        (Some(c), Some(j)) => format!(" c={c} j={j}"),
                        (Some(c), None) => format!(" c={c}"),
                        _ => String::new(),
                    };
                    let st = match c.status {
                        Status::Pass => "pass",
                        Status::Fail => "FAIL",
                        Status::Inconclusive => "inconclusive",
                    };
                    println!("{}: {}{at}: {st}: {}", r.scenario_id, c.name, c.witness);
                }
                ok &= r.ok();
            }
            let json = reports_to_json(&reports);
            match report {
                Some(path) => std::fs::write(&path, json + "\n").map_err(|e| format!("{}: {e}", path.display()))?,
                None => println!("{json}"),
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
