//! Command-line surface: construct family pairs, verify pairs from files,
//! emit spectra and certificates, run exhaustive searches, and execute the
//! reproduction self-test suite.
//!
//! Exit codes: 0 success/verified, 1 verification or self-test failure
//! (with a witness printed), 2 usage or parse errors.

mod pairfile;

use clap::{Parser, Subcommand, ValueEnum};
use fdp::{
    character_spectrum, difference_spectrum, theta, verify_formally_dual, verify_primitive,
    Direction, DualPairReport, ElementSet, FiniteAbelianGroup, GroupRingElement,
    PrimitivityReport, SearchTask, SpectrumMultiset,
};
use pairfile::PairFile;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fdp", version, about = "Exact arithmetic for formally dual pairs in finite abelian groups")]
struct Cli {
    /// Worker threads for the data-parallel sections (also settable via
    /// the RAYON_NUM_THREADS environment variable)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Dircon1,
    Dircon2,
    Mix,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    #[value(alias = "S")]
    S,
    #[value(alias = "T")]
    T,
    Both,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::S => Direction::SSide,
            DirectionArg::T => Direction::TSide,
            DirectionArg::Both => Direction::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    #[value(alias = "S")]
    S,
    #[value(alias = "T")]
    T,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Difference,
    Character,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PredictArg {
    #[value(name = "dircon1-spectrum")]
    Dircon1Spectrum,
    #[value(name = "dircon2-theta")]
    Dircon2Theta,
    #[value(name = "mix-theta")]
    MixTheta,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a family pair and write it as a pair file
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Family parameter for dircon1/dircon2
        #[arg(long)]
        m: Option<u32>,
        /// First mix parameter
        #[arg(long)]
        m1: Option<u32>,
        /// Second mix parameter
        #[arg(long)]
        m2: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a pair file for formal duality (and primitivity)
    Verify {
        #[arg(long)]
        pair: PathBuf,
        /// Also require both sides primitive
        #[arg(long)]
        primitive: bool,
        #[arg(long, value_enum, default_value = "both")]
        direction: DirectionArg,
    },
    /// Print the difference or character spectrum of one side
    Spectrum {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long, value_enum, default_value = "difference")]
        kind: KindArg,
    },
    /// Print theta, the multiplicity of 0 in the difference spectrum
    Theta {
        #[arg(long)]
        pair: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Print closed-form spectrum or theta predictions
    Predict {
        #[arg(long, value_enum)]
        family: PredictArg,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        m1: Option<u32>,
        #[arg(long)]
        m2: Option<u32>,
    },
    /// Exhaustively search one group for normalized formally dual pairs
    Search {
        /// Cyclic factor orders, comma separated (e.g. 4,4)
        #[arg(long, value_delimiter = ',')]
        group: Vec<u32>,
        #[arg(long)]
        size_s: u64,
        #[arg(long)]
        size_t: u64,
        /// Keep only primitive pairs
        #[arg(long)]
        primitive: bool,
        /// Override the exhaustive-search order bound (default 32)
        #[arg(long)]
        max_order: Option<u64>,
    },
    /// Run the reproduction self-test suite
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.threads;
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_pair(path: &Path) -> Result<(PairFile, pairfile::ParsedPair), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    PairFile::parse(&text)
}

fn set_to_coords(set: &ElementSet) -> Vec<Vec<i64>> {
    set.elements()
        .map(|e| e.coords().iter().map(|&c| c as i64).collect())
        .collect()
}

fn set_display(set: &ElementSet) -> String {
    let parts: Vec<String> = set.elements().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn print_spectrum_lines(spec: &SpectrumMultiset) {
    for (value, mult) in spec.iter() {
        println!("{value} {mult}");
    }
}

fn spectrum_json(spec: &SpectrumMultiset) -> serde_json::Value {
    json!(spec.iter().collect::<Vec<(i64, u64)>>())
}

fn duality_json(report: &DualPairReport) -> serde_json::Value {
    json!({
        "ok": report.ok,
        "direction": format!("{:?}", report.direction),
        "group_order": report.group_order,
        "size_s": report.size_s,
        "size_t": report.size_t,
        "size_precheck_ok": report.size_precheck_ok,
        "failure_count": report.failures.len(),
        "failures": report.failures.iter().take(16).map(|f| json!({
            "side": format!("{:?}", f.side),
            "witness": f.witness.coords(),
            "lhs": f.lhs.to_string(),
            "rhs_num": f.rhs_num.to_string(),
            "rhs_den": f.rhs_den.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn primitivity_json(report: &PrimitivityReport) -> serde_json::Value {
    json!({
        "primitive": report.is_primitive(),
        "coset_confined": report.coset_confined,
        "stabilized": report.stabilized,
        "character_criterion_agrees": report.character_criterion_agrees,
    })
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Construct {
            family,
            m,
            m1,
            m2,
            out,
        } => {
            let pair = match family {
                FamilyArg::Dircon1 => {
                    let m = m.ok_or("--family dircon1 requires --m")?;
                    fdp::dircon1(m).map_err(|e| e.to_string())?
                }
                FamilyArg::Dircon2 => {
                    let m = m.ok_or("--family dircon2 requires --m")?;
                    fdp::dircon2(m).map_err(|e| e.to_string())?
                }
                FamilyArg::Mix => {
                    let m1 = m1.ok_or("--family mix requires --m1 and --m2")?;
                    let m2 = m2.ok_or("--family mix requires --m1 and --m2")?;
                    fdp::mix(m1, m2).map_err(|e| e.to_string())?
                }
            };
            let file = PairFile::from_sets(pair.s(), pair.t(), Some(pair.family().to_string()));
            let text = file.canonical_json()?;
            std::fs::write(out, text)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "written": out.display().to_string(),
                        "family": pair.family().to_string(),
                        "group": pair.group().factor_orders(),
                        "size_s": pair.s().len(),
                        "size_t": pair.t().len(),
                    })
                );
            } else {
                println!(
                    "wrote {} ({}, group {}, |S|={}, |T|={})",
                    out.display(),
                    pair.family(),
                    pair.group(),
                    pair.s().len(),
                    pair.t().len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify {
            pair,
            primitive,
            direction,
        } => {
            let (_, parsed) = read_pair(pair)?;
            let report = verify_formally_dual(&parsed.s, &parsed.t, (*direction).into())
                .map_err(|e| e.to_string())?;
            let mut verdict = report.ok;
            let prim = if *primitive {
                let ps = verify_primitive(&parsed.s).map_err(|e| e.to_string())?;
                let pt = verify_primitive(&parsed.t).map_err(|e| e.to_string())?;
                verdict = verdict && ps.is_primitive() && pt.is_primitive();
                Some((ps, pt))
            } else {
                None
            };
            if cli.json {
                let mut value = json!({
                    "verdict": verdict,
                    "duality": duality_json(&report),
                });
                if let Some((ps, pt)) = &prim {
                    value["primitivity"] = json!({
                        "s": primitivity_json(ps),
                        "t": primitivity_json(pt),
                    });
                }
                println!("{value}");
            } else {
                println!(
                    "group {}, |S|={}, |T|={}",
                    parsed.group, report.size_s, report.size_t
                );
                println!("duality: {report}");
                if let Some((ps, pt)) = &prim {
                    println!("S: {ps}");
                    println!("T: {pt}");
                }
            }
            Ok(if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Spectrum { pair, side, kind } => {
            let (_, parsed) = read_pair(pair)?;
            let set = match side {
                SideArg::S => &parsed.s,
                SideArg::T => &parsed.t,
            };
            let spec = match kind {
                KindArg::Difference => difference_spectrum(set),
                KindArg::Character => {
                    character_spectrum(&GroupRingElement::from_set(set))
                        .map_err(|e| e.to_string())?
                }
            };
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "side": format!("{side:?}"),
                        "kind": format!("{kind:?}"),
                        "spectrum": spectrum_json(&spec),
                    })
                );
            } else {
                print_spectrum_lines(&spec);
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Theta { pair, side } => {
            let (_, parsed) = read_pair(pair)?;
            let set = match side {
                SideArg::S => &parsed.s,
                SideArg::T => &parsed.t,
            };
            let value = theta(set);
            if cli.json {
                println!("{}", json!({ "theta": value }));
            } else {
                println!("{value}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Predict { family, m, m1, m2 } => match family {
            PredictArg::Dircon1Spectrum => {
                let m = m.ok_or("--family dircon1-spectrum requires --m")?;
                let spec = fdp::predict_dircon1_spectrum(m).map_err(|e| e.to_string())?;
                if cli.json {
                    println!("{}", json!({ "spectrum": spectrum_json(&spec) }));
                } else {
                    print_spectrum_lines(&spec);
                }
                Ok(ExitCode::SUCCESS)
            }
            PredictArg::Dircon2Theta => {
                let m = m.ok_or("--family dircon2-theta requires --m")?;
                let value = fdp::predict_dircon2_theta(m).map_err(|e| e.to_string())?;
                if cli.json {
                    println!("{}", json!({ "theta": value }));
                } else {
                    println!("{value}");
                }
                Ok(ExitCode::SUCCESS)
            }
            PredictArg::MixTheta => {
                let m1 = m1.ok_or("--family mix-theta requires --m1 and --m2")?;
                let m2 = m2.ok_or("--family mix-theta requires --m1 and --m2")?;
                let value = fdp::predict_mix_theta(m1, m2).map_err(|e| e.to_string())?;
                if cli.json {
                    println!("{}", json!({ "theta": value }));
                } else {
                    println!("{value}");
                }
                Ok(ExitCode::SUCCESS)
            }
        },

        Command::Search {
            group,
            size_s,
            size_t,
            primitive,
            max_order,
        } => {
            let group = FiniteAbelianGroup::new(group).map_err(|e| e.to_string())?;
            let mut task = SearchTask::new(group, *size_s, *size_t);
            if *primitive {
                task = task.primitive_only();
            }
            if let Some(bound) = max_order {
                task.max_order = *bound;
            }
            let pairs = fdp::exhaustive_pairs(&task).map_err(|e| e.to_string())?;
            for (s, t) in &pairs {
                if cli.json {
                    println!(
                        "{}",
                        json!({ "S": set_to_coords(s), "T": set_to_coords(t) })
                    );
                } else {
                    println!("S={} T={}", set_display(s), set_display(t));
                }
            }
            if !cli.json {
                println!("# {} pair(s)", pairs.len());
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Selftest => {
            let outcomes = fdp::selftest::run_all();
            let all_passed = outcomes.iter().all(|o| o.passed);
            if cli.json {
                let values: Vec<_> = outcomes
                    .iter()
                    .map(|o| {
                        json!({
                            "id": o.id,
                            "name": o.name,
                            "passed": o.passed,
                            "detail": o.detail,
                        })
                    })
                    .collect();
                println!("{}", json!({ "passed": all_passed, "criteria": values }));
            } else {
                for o in &outcomes {
                    println!(
                        "criterion {:2} {:<16} {}  {}",
                        o.id,
                        o.name,
                        if o.passed { "PASS" } else { "FAIL" },
                        o.detail
                    );
                }
            }
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
