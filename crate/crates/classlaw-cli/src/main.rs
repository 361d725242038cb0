//! `classlaw`: predict and verify the factorization of Hilbert class
//! polynomials over F_p.
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 mismatch between
//! prediction and factorization, 4 resource/precision/cache failure.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use classlaw::genus::{fundamental_range, predict, CaseTag, Prediction};
use classlaw::lawcheck::{Status, SweepSummary, VerificationReport, Verifier};
use classlaw::numtheory::kronecker;
use classlaw::quadforms::ClassGroup;
use classlaw::{Error, FundamentalDiscriminant};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_DOMAIN: i32 = 2;
const EXIT_MISMATCH: i32 = 3;
const EXIT_RESOURCE: i32 = 4;

#[derive(Parser)]
#[command(
    name = "classlaw",
    version,
    about = "Genus-theory prediction and verification of how Hilbert class polynomials factor over F_p"
)]
struct Cli {
    /// Emit newline-delimited JSON records with a stable key order.
    #[arg(long, global = true)]
    json: bool,

    /// Directory for cached class polynomials (default ./hd_cache, or
    /// CLASSLAW_CACHE_DIR when set).
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Worker threads for sweeps and density runs (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    /// Seed for the randomized factorization paths.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,

    /// Cap on the class-polynomial working precision, in bits.
    #[arg(long, global = true, value_name = "BITS")]
    max_bits: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kronecker symbol (a/n).
    Symbol {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Reduced forms, class number, and star decomposition of D.
    Classgroup {
        #[arg(allow_negative_numbers = true)]
        d: i64,
    },
    /// Hilbert class polynomial H_D (cached under the cache directory).
    Hilbert {
        #[arg(allow_negative_numbers = true)]
        d: i64,
    },
    /// Predicted splitting pattern of H_D mod p.
    Predict {
        #[arg(allow_negative_numbers = true)]
        d: i64,
        p: u64,
    },
    /// Compare the predicted pattern against the actual factorization.
    Verify {
        #[arg(
            allow_negative_numbers = true,
            required_unless_present = "sweep",
            conflicts_with = "sweep"
        )]
        d: Option<i64>,
        #[arg(required_unless_present = "sweep", conflicts_with = "sweep")]
        p: Option<u64>,
        /// Sweep every fundamental D in [DMIN, DMAX] and odd prime <= PMAX.
        #[arg(long, num_args = 3, value_names = ["DMIN", "DMAX", "PMAX"], allow_negative_numbers = true)]
        sweep: Option<Vec<i64>>,
    },
    /// Empirical vs theoretical density of primes where H_D has a root.
    Density {
        #[arg(allow_negative_numbers = true)]
        d: i64,
        x_max: u64,
    },
}

#[derive(Serialize)]
struct Record<I: Serialize, R: Serialize> {
    command: &'static str,
    inputs: I,
    result: R,
}

fn emit<I: Serialize, R: Serialize>(command: &'static str, inputs: I, result: R) {
    let rec = Record { command, inputs, result };
    println!("{}", serde_json::to_string(&rec).expect("serializable record"));
}

#[derive(Serialize)]
struct PredictionOut {
    case: String,
    f: Option<u64>,
    pattern: Vec<(u64, u64)>,
}

impl From<&Prediction> for PredictionOut {
    fn from(p: &Prediction) -> Self {
        PredictionOut {
            case: p.case_tag().to_string(),
            f: p.f_used(),
            pattern: p.pattern().entries().to_vec(),
        }
    }
}

#[derive(Serialize)]
struct VerifyOut {
    status: String,
    predicted: Option<PredictionOut>,
    actual: Option<Vec<(u64, u64)>>,
}

impl From<&VerificationReport> for VerifyOut {
    fn from(r: &VerificationReport) -> Self {
        VerifyOut {
            status: r.status.to_string(),
            predicted: r.prediction.as_ref().map(PredictionOut::from),
            actual: r.actual.as_ref().map(|a| a.entries().to_vec()),
        }
    }
}

fn describe_prediction(p: &Prediction) -> String {
    match p.case_tag() {
        CaseTag::Split => format!(
            "split: f = {}, pattern {}",
            p.f_used().expect("split case carries f"),
            p.pattern()
        ),
        tag => format!("{tag}: pattern {}", p.pattern()),
    }
}

fn ratio_to_f64(num: u64, den: u64) -> f64 {
    num as f64 / den.max(1) as f64
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::NotFundamental(..) => EXIT_DOMAIN,
        Error::Resource(_)
        | Error::Precision { .. }
        | Error::CacheIntegrity { .. }
        | Error::Io(_) => EXIT_RESOURCE,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(EXIT_OK);
            }
            eprint!("{e}");
            std::process::exit(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

fn run(cli: Cli) -> classlaw::Result<i32> {
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build_global()
            .map_err(|e| Error::Resource(format!("worker pool: {e}")))?;
    }
    let cache_dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("CLASSLAW_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("./hd_cache"));
    let mut verifier = Verifier::new().cache_dir(cache_dir);
    if let Some(seed) = cli.seed {
        verifier = verifier.seed(seed);
    }
    if let Some(max_bits) = cli.max_bits {
        verifier = verifier.max_bits(max_bits);
    }
    let json = cli.json;

    match cli.command {
        Command::Symbol { a, n } => {
            let value = kronecker(a, n)?;
            #[derive(Serialize)]
            struct In {
                a: i64,
                n: i64,
            }
            #[derive(Serialize)]
            struct Out {
                value: i32,
            }
            if json {
                emit("symbol", In { a, n }, Out { value });
            } else {
                println!("{value}");
            }
            Ok(EXIT_OK)
        }

        Command::Classgroup { d } => {
            let disc = FundamentalDiscriminant::new(d)?;
            let group = ClassGroup::enumerate(&disc);
            let stars: Vec<(u64, i64)> = disc.stars().iter().map(|s| (s.q(), s.qstar())).collect();
            let forms: Vec<(i64, i64, i64)> = group
                .forms()
                .iter()
                .map(|f| {
                    (
                        i64::try_from(f.a()).expect("reduced form fits i64"),
                        i64::try_from(f.b()).expect("reduced form fits i64"),
                        i64::try_from(f.c()).expect("reduced form fits i64"),
                    )
                })
                .collect();
            if json {
                #[derive(Serialize)]
                struct In {
                    d: i64,
                }
                #[derive(Serialize)]
                struct Out {
                    n: u64,
                    t: u32,
                    h: u64,
                    stars: Vec<(u64, i64)>,
                    forms: Vec<(i64, i64, i64)>,
                }
                emit(
                    "classgroup",
                    In { d },
                    Out {
                        n: disc.n(),
                        t: disc.t(),
                        h: group.h(),
                        stars,
                        forms,
                    },
                );
            } else {
                println!("D = {d}");
                println!("N = {}", disc.n());
                println!("t = {}", disc.t());
                println!("h = {}", group.h());
                let star_text: Vec<String> = stars
                    .iter()
                    .map(|(q, qs)| format!("{q}* = {qs}"))
                    .collect();
                println!("stars: {}", star_text.join(", "));
                let form_text: Vec<String> = forms
                    .iter()
                    .map(|(a, b, c)| format!("({a}, {b}, {c})"))
                    .collect();
                println!("forms: {}", form_text.join(", "));
            }
            Ok(EXIT_OK)
        }

        Command::Hilbert { d } => {
            let poly = verifier.class_polynomial(d)?;
            if json {
                #[derive(Serialize)]
                struct In {
                    d: i64,
                }
                #[derive(Serialize)]
                struct Out {
                    h: usize,
                    coeffs: Vec<String>,
                }
                emit(
                    "hilbert",
                    In { d },
                    Out {
                        h: poly.degree(),
                        coeffs: poly.coeffs().iter().map(|c| c.to_string()).collect(),
                    },
                );
            } else {
                println!("{poly}");
            }
            Ok(EXIT_OK)
        }

        Command::Predict { d, p } => {
            let disc = FundamentalDiscriminant::new(d)?;
            let group = ClassGroup::enumerate(&disc);
            let prediction = predict(&disc, p, &group)?;
            if json {
                #[derive(Serialize)]
                struct In {
                    d: i64,
                    p: u64,
                }
                emit("predict", In { d, p }, PredictionOut::from(&prediction));
            } else {
                println!("{}", describe_prediction(&prediction));
            }
            Ok(EXIT_OK)
        }

        Command::Verify { d: Some(d), p: Some(p), sweep: None } => {
            let report = verifier.verify_one(d, p)?;
            print_verify_report(&report, json);
            Ok(if report.status == Status::Mismatch {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            })
        }

        Command::Verify { sweep: Some(args), d: None, p: None } => {
            let (d_min, d_max, p_max) = (args[0], args[1], args[2]);
            if p_max < 3 {
                return Err(Error::Domain(format!("sweep requires PMAX >= 3, got {p_max}")));
            }
            let discs = fundamental_range(d_min, d_max);
            let d_set: Vec<i64> = discs.iter().map(|f| f.d()).collect();
            let summary = verifier.sweep(&d_set, p_max as u64)?;
            print_sweep_summary(&summary, d_min, d_max, p_max as u64, d_set.len(), json);
            Ok(if summary.mismatches > 0 {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            })
        }

        Command::Verify { .. } => Err(Error::Domain(
            "verify needs either D and P or --sweep DMIN DMAX PMAX".into(),
        )),

        Command::Density { d, x_max } => {
            let r = verifier.density_experiment(d, x_max)?;
            let emp = ratio_to_f64(*r.empirical.numer(), *r.empirical.denom());
            let theo = ratio_to_f64(*r.theoretical.numer() as u64, *r.theoretical.denom() as u64);
            if json {
                #[derive(Serialize)]
                struct In {
                    d: i64,
                    x_max: u64,
                }
                #[derive(Serialize)]
                struct Out {
                    primes_tested: u64,
                    primes_with_root: u64,
                    skipped_ramified: u64,
                    skipped_nonsquarefree: u64,
                    mismatches: u64,
                    empirical: String,
                    empirical_value: f64,
                    theoretical: String,
                    theoretical_value: f64,
                    abs_deviation: f64,
                }
                emit(
                    "density",
                    In { d, x_max },
                    Out {
                        primes_tested: r.primes_tested,
                        primes_with_root: r.primes_with_root,
                        skipped_ramified: r.skipped_ramified,
                        skipped_nonsquarefree: r.skipped_nonsquarefree,
                        mismatches: r.mismatches,
                        empirical: r.empirical.to_string(),
                        empirical_value: emp,
                        theoretical: r.theoretical.to_string(),
                        theoretical_value: theo,
                        abs_deviation: r.abs_deviation,
                    },
                );
            } else {
                println!("D = {d}");
                println!("x_max = {x_max}");
                println!("primes_tested = {}", r.primes_tested);
                println!("primes_with_root = {}", r.primes_with_root);
                println!("skipped_ramified = {}", r.skipped_ramified);
                println!("skipped_nonsquarefree = {}", r.skipped_nonsquarefree);
                println!("empirical = {} = {emp:.6}", r.empirical);
                println!("theoretical = {} = {theo:.6}", r.theoretical);
                println!("abs_deviation = {:.6}", r.abs_deviation);
            }
            Ok(if r.mismatches > 0 { EXIT_MISMATCH } else { EXIT_OK })
        }
    }
}

fn print_verify_report(report: &VerificationReport, json: bool) {
    if json {
        #[derive(Serialize)]
        struct In {
            d: i64,
            p: u64,
        }
        emit(
            "verify",
            In { d: report.d, p: report.p },
            VerifyOut::from(report),
        );
        return;
    }
    match report.status {
        Status::Match | Status::Mismatch => {
            let predicted = report.prediction.as_ref().expect("compared report");
            let actual = report.actual.as_ref().expect("compared report");
            println!(
                "{}: predicted {}, actual {}",
                report.status,
                predicted.pattern(),
                actual
            );
        }
        Status::SkippedRamified => {
            println!("skipped_ramified: {} divides D = {}", report.p, report.d);
        }
        Status::SkippedNonsquarefree => {
            println!(
                "skipped_nonsquarefree: H_D mod {} is not squarefree",
                report.p
            );
        }
    }
}

fn print_sweep_summary(
    summary: &SweepSummary,
    d_min: i64,
    d_max: i64,
    p_max: u64,
    discriminants: usize,
    json: bool,
) {
    if json {
        for report in &summary.mismatch_reports {
            print_verify_report(report, true);
        }
        #[derive(Serialize)]
        struct In {
            d_min: i64,
            d_max: i64,
            p_max: u64,
        }
        #[derive(Serialize)]
        struct Out {
            discriminants: usize,
            total: u64,
            matches: u64,
            mismatches: u64,
            skipped_ramified: u64,
            skipped_nonsquarefree: u64,
        }
        emit(
            "verify_sweep",
            In { d_min, d_max, p_max },
            Out {
                discriminants,
                total: summary.total,
                matches: summary.matches,
                mismatches: summary.mismatches,
                skipped_ramified: summary.skipped_ramified,
                skipped_nonsquarefree: summary.skipped_nonsquarefree,
            },
        );
        return;
    }
    println!("discriminants: {discriminants}");
    println!("total: {}", summary.total);
    println!("matches: {}", summary.matches);
    println!("skipped_ramified: {}", summary.skipped_ramified);
    println!("skipped_nonsquarefree: {}", summary.skipped_nonsquarefree);
    println!("mismatches: {}", summary.mismatches);
    for report in &summary.mismatch_reports {
        let predicted = report.prediction.as_ref().expect("mismatch report");
        let actual = report.actual.as_ref().expect("mismatch report");
        println!(
            "mismatch: D = {}, p = {}, predicted {}, actual {}",
            report.d,
            report.p,
            predicted.pattern(),
            actual
        );
    }
}
