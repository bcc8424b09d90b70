//! `cy`: command-line access to the operator toolkit.

mod input;

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyeq::constructions::{fit_operator, hadamard_series, verify_entry, FitSpec, Formula};
use cyeq::criteria::{analyze_spectrum, classify, cyclo_label, enumerate_spectra};
use cyeq::db::{serialize_cyop, serialize_dataset, CyopDoc};
use cyeq::exact::{fmt_rat, rat, Rat};
use cyeq::frobenius::{mirror_map, power_exponents, yukawa_instantons, FrobeniusPair};
use cyeq::operator::{Point, ThetaOperator};
use cyeq::par::Jobs;
use cyeq::search::{filter_step2, sweep_step1, write_sweep, Family, SweepConfig};

use input::{usage, CliResult, UsageError};

#[derive(Parser)]
#[command(name = "cy", version, about = "Exact tools for fourth-order Calabi-Yau type operators")]
struct Cli {
    /// Dataset file used for `@ID` operands (default: bundled table).
    #[arg(long, global = true)]
    db: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Checks the five conditions.
    Check {
        op: String,
        /// Integrality window.
        #[arg(short = 'n', long = "coeffs", default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Prints the Frobenius coefficients A_n, B_n.
    Solve {
        op: String,
        #[arg(short = 'n', long = "coeffs", default_value_t = 10)]
        n: usize,
    },
    /// Exponents at infinity; with a rational instead of an operator, lists
    /// the admissible spectra with that symmetry constant.
    Spectrum { op: String },
    /// Instanton numbers N_1..N_depth.
    Instanton {
        op: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Prints `N0=.. N1=.. N3=..`.
    Fingerprint {
        op: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Power exponents r (of q/z) and s (of y_0).
    Powers {
        op: String,
        #[arg(short = 'n', long = "coeffs", default_value_t = 50)]
        n: usize,
    },
    /// Fits an operator to the coefficient product of two holomorphic solutions.
    Hadamard {
        left: String,
        right: String,
        #[arg(short = 'n', long = "coeffs", default_value_t = 80)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Fits an operator to a coefficient file.
    Fit {
        file: String,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Moves a MUM point `z0` to the origin; `--exp` shifts θ afterwards.
    Translate {
        op: String,
        #[arg(long)]
        z0: String,
        #[arg(long, default_value = "0")]
        exp: String,
    },
    /// Reflection at infinity with twist `--exp`.
    Reflect {
        op: String,
        #[arg(long, default_value = "0")]
        exp: String,
    },
    /// Rescales `z ↦ λz`.
    Scale {
        op: String,
        #[arg(long)]
        lambda: String,
    },
    /// Family sweep with the two-step filter.
    Search {
        #[arg(long)]
        family: String,
        /// `K=lo:hi` for K in A, B, C, c and the exponents p, q, r, s of
        /// 2, 3, 5, 7 in d.
        #[arg(long = "range")]
        ranges: Vec<String>,
        /// Comma-separated exponents at infinity (repeatable).
        #[arg(long = "spectrum")]
        spectra: Vec<String>,
        /// Also try negative d.
        #[arg(long)]
        negative_d: bool,
        /// Screen length N.
        #[arg(short = 'n', long = "coeffs", default_value_t = 50)]
        n: usize,
        /// Confirm length M.
        #[arg(long, default_value_t = 1000)]
        confirm: usize,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        /// Stop after step 1.
        #[arg(long)]
        step1_only: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Checks a dataset record's formula against its operator.
    Verify {
        id: String,
        #[arg(short = 'n', long = "coeffs", default_value_t = 100)]
        n: usize,
    },
    /// Dataset access.
    Db {
        #[command(subcommand)]
        cmd: DbCmd,
    },
}

#[derive(Subcommand)]
enum DbCmd {
    List,
    Show { id: String },
    Export {
        #[arg(long)]
        out: Option<String>,
    },
}

fn print_op(op: &ThetaOperator, id: Option<String>) {
    print!("{}", serialize_cyop(&CyopDoc { id, operator: op.clone() }));
}

fn emit(text: &str, out: Option<&str>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| UsageError(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn series_line(name: &str, coeffs: &[Rat]) {
    let body: Vec<String> = coeffs.iter().map(fmt_rat).collect();
    println!("{name}: {}", body.join(" "));
}

fn search_config(
    family: &str,
    ranges: &[String],
    spectra: &[String],
    negative_d: bool,
) -> CliResult<SweepConfig> {
    let Some(family) = Family::parse(family) else {
        return usage(format!("unknown family '{family}' (had2, had3, gen4, gen4q, fact4)"));
    };
    let mut cfg = SweepConfig::new(family);
    let mut exps = [0u32; 4];
    for r in ranges {
        let (k, lo, hi) = input::range(r)?;
        match k.as_str() {
            "A" => cfg.a = lo..=hi,
            "B" => cfg.b = lo..=hi,
            "C" => cfg.cc = lo..=hi,
            "c" => cfg.c_values = (lo..=hi).collect(),
            "p" | "q" | "r" | "s" => {
                if lo != 0 || hi < 0 {
                    return usage(format!("exponent range {k} must be 0:hi"));
                }
                let i = "pqrs".find(k.as_str()).expect("matched");
                exps[i] = u32::try_from(hi).map_err(|e| UsageError(e.to_string()))?;
            }
            _ => return usage(format!("unknown range key '{k}'")),
        }
    }
    cfg.d_primes = [2u64, 3, 5, 7].into_iter().zip(exps).filter(|(_, e)| *e > 0).collect();
    if negative_d {
        cfg.d_signs = vec![1, -1];
    }
    cfg.spectra = spectra.iter().map(|s| input::rational_list(s)).collect::<CliResult<_>>()?;
    if family.uses_spectrum() && cfg.spectra.is_empty() {
        cfg.spectra = enumerate_spectra(&rat(2)).into_iter().map(|s| s.lambdas).collect();
    }
    Ok(cfg)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let db = cli.db.as_deref();
    let load = |s: &str| input::operator(s, db);
    match cli.cmd {
        Cmd::Check { op, n, depth } => {
            let v = classify(&load(&op)?, n, n, depth);
            println!("{v}");
            return Ok(if v.overall { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Solve { op, n } => {
            let pair = FrobeniusPair::new(&load(&op)?, n)?;
            series_line("A", pair.a.coeffs());
            series_line("B", pair.b.coeffs());
        }
        Cmd::Spectrum { op } => {
            if let Some(s) = cyeq::exact::parse_rat(&op).filter(|_| !op.starts_with('@')) {
                for sp in enumerate_spectra(&s) {
                    let l: Vec<String> = sp.lambdas.iter().map(fmt_rat).collect();
                    println!("{}  {}", l.join(" "), cyclo_label(&sp.cyclo));
                }
                return Ok(ExitCode::SUCCESS);
            }
            let d = load(&op)?;
            for at in [Point::zero(), Point::Infinity] {
                let e = d.local_exponents(&at);
                let l: Vec<String> = e.rational().iter().map(fmt_rat).collect();
                println!("exponents at {at}: {}", l.join(" "));
            }
            let a = analyze_spectrum(&d);
            println!("{} {}", if a.passed { "PASS" } else { "FAIL" }, a.reason);
            return Ok(if a.passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Instanton { op, depth } => {
            let r = yukawa_instantons(&load(&op)?, depth)?;
            println!("N0={}", r.n0);
            for d in 1..=r.depth() {
                println!("N{d}={}", fmt_rat(r.instanton(d)));
            }
        }
        Cmd::Fingerprint { op, depth } => {
            let r = yukawa_instantons(&load(&op)?, depth)?;
            match r.fingerprint() {
                Some(fp) => println!("{fp}"),
                None => return usage("fingerprint needs depth >= 3 and integral N1, N3"),
            }
        }
        Cmd::Powers { op, n } => {
            let pair = FrobeniusPair::new(&load(&op)?, n)?;
            let qz = mirror_map(&pair)?;
            let p = power_exponents(&pair, &qz, n);
            println!("r={} s={}", p.r, p.s);
        }
        Cmd::Hadamard { left, right, n, max_order, max_degree } => {
            let a = FrobeniusPair::new(&load(&left)?, n)?.a;
            let b = FrobeniusPair::new(&load(&right)?, n)?.a;
            let op = fit_operator(&hadamard_series(&a, &b), FitSpec::new(max_order, max_degree))?;
            print_op(&op, None);
        }
        Cmd::Fit { file, max_order, max_degree } => {
            let a = input::series_file(&file)?;
            print_op(&fit_operator(&a, FitSpec::new(max_order, max_degree))?, None);
        }
        Cmd::Translate { op, z0, exp } => {
            let z0 = input::rational("--z0", &z0)?;
            let a = input::rational("--exp", &exp)?;
            print_op(&load(&op)?.translate_mum(&z0, &a), None);
        }
        Cmd::Reflect { op, exp } => {
            let twist = input::rational("--exp", &exp)?;
            print_op(&load(&op)?.reflect_infinity(&twist)?, None);
        }
        Cmd::Scale { op, lambda } => {
            let lam = input::rational("--lambda", &lambda)?;
            print_op(&load(&op)?.scale_z(&lam)?.normalize(), None);
        }
        Cmd::Search { family, ranges, spectra, negative_d, n, confirm, depth, step1_only, jobs, out } => {
            let mut cfg = search_config(&family, &ranges, &spectra, negative_d)?;
            cfg.n = n;
            cfg.m = confirm;
            cfg.jobs = Jobs(jobs);
            let mut cands = sweep_step1(&cfg)?;
            if !step1_only {
                cands = filter_step2(cands, depth, cfg.jobs);
            }
            emit(&write_sweep(&cfg, &cands), out.as_deref())?;
        }
        Cmd::Verify { id, n } => {
            let recs = input::records(db)?;
            let Some(rec) = cyeq::db::find(&recs, &id) else {
                return usage(format!("no dataset record with id {id}"));
            };
            let Some(src) = &rec.formula else {
                return usage(format!("record {id} has no formula"));
            };
            let formula = Formula::parse(src)?;
            let outcome = verify_entry(&rec.operator, &formula, &rec.base_cases, n)?;
            return Ok(match outcome.first_mismatch {
                None => {
                    println!("PASS");
                    ExitCode::SUCCESS
                }
                Some(m) => {
                    println!(
                        "FAIL at n={}: formula {} operator {}",
                        m.n,
                        fmt_rat(&m.formula),
                        fmt_rat(&m.operator)
                    );
                    ExitCode::from(1)
                }
            });
        }
        Cmd::Db { cmd } => {
            let recs = input::records(db)?;
            match cmd {
                DbCmd::List => {
                    for r in &recs {
                        let tags: Vec<String> = r.notes.iter().map(ToString::to_string).collect();
                        println!("{:<6} order {} degree {}  {}", r.id, r.operator.order(), r.operator.k(), tags.join(" "));
                    }
                }
                DbCmd::Show { id } => match cyeq::db::find(&recs, &id) {
                    Some(r) => print!("{}", r.to_block()),
                    None => return usage(format!("no dataset record with id {id}")),
                },
                DbCmd::Export { out } => emit(&serialize_dataset(&recs), out.as_deref())?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    std::panic::set_hook(Box::new(|info| eprintln!("error: internal failure: {info}")));
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(code)) => code,
        Ok(Err(UsageError(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(2),
    }
}
