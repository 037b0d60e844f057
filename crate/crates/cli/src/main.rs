use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pvform::acceptance::{run_all, run_criterion};
use pvform::enriques::{
    analyse, ergm_satisfiable, enumerate_separations, render_pw1, EnumerationOptions,
    QuoterPartition,
};
use pvform::fundcycle::{
    ambiguity_generators, separation_from_cycle, solve_fundamental_cycle, subgroup_membership,
    CurveArrangement,
};
use pvform::lattice::UnimodularLattice;
use pvform::par::Execution;
use pvform::quadspace::QuadraticSpace;
use pvform::surface::SurfaceUnion;
use pvform::tables::{check_table, load_table, table_labels, ReferenceTable};
use pvform::Error;

/// Brown invariants, real Enriques separations and fundamental cycles.
#[derive(Parser)]
#[command(name = "pvform", version)]
struct Cli {
    /// Run data-parallel stages on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Brown invariant of a quadratic space (`dim n`, n rows of 0/1, one line of residues)
    Brown {
        /// Input file; `-` or absent reads stdin
        file: Option<PathBuf>,
    },
    /// Signature against Brown invariant of the mod-2 reduction
    LatticeCheck {
        /// `E8`, `U`, `+1`, `-1`, `sum:E8,U,3*+1`, or a path to a `rank n` file
        lattice: String,
    },
    /// Every admissible complex separation of a component union
    Enumerate {
        /// Components, e.g. `4V1+2S`
        #[arg(long)]
        components: String,
        /// Compare with the matching case of this reference table
        #[arg(long)]
        reference: Option<String>,
        /// Restrict to half splits, e.g. `2V2|4S;V2+4S|V2`
        #[arg(long)]
        splits: Option<String>,
        /// Allow S1 components to share a half
        #[arg(long)]
        no_s1_rule: bool,
    },
    /// Congruence system and P(w1) for one partition, e.g. `{(V2)+(V2)}|{(2S)+(2S)}`
    Check { partition: String },
    /// Compare reference tables with the enumerator
    Tables {
        /// Labels to check; all when empty
        labels: Vec<String>,
        /// Write canonical renderings of the loaded tables into this directory
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Fundamental cycle of a curve arrangement file
    Fundcycle {
        file: Option<PathBuf>,
        /// Treat every fundamental cycle as proper (M-surface with connected real part)
        #[arg(long)]
        assume_proper: bool,
    },
    /// Run the numbered acceptance criteria
    Selfcheck {
        /// Run a single criterion
        #[arg(long)]
        criterion: Option<u8>,
    },
}

enum Outcome {
    Ok,
    Mismatch,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Dimension(_) | Error::Invalid(_) => 2,
        Error::Precondition(_) | Error::TooLarge { .. } => 3,
        Error::Reference(_) => 4,
    }
}

fn read_input(file: &Option<PathBuf>) -> Result<String, Error> {
    match file {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse_splits(text: &str) -> Result<Vec<(SurfaceUnion, SurfaceUnion)>, Error> {
    text.split(';')
        .map(|s| {
            let (a, b) = s
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("split `{s}` lacks `|`")))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    match cli.command {
        Command::Brown { file } => {
            let s: QuadraticSpace = read_input(&file)?.parse()?;
            let (rad, informative) = s.radical_and_informative();
            let profile = s.gauss_profile();
            println!("dim {} radical {} informative {}", s.dim(), rad.len(), informative);
            println!("profile n0..n3 = {:?}", profile.counts);
            println!("brown {}", s.brown());
            println!("brown (decomposition) {}", s.brown_by_decomposition());
            Ok(Outcome::Ok)
        }
        Command::LatticeCheck { lattice } => {
            let l: UnimodularLattice = match lattice.parse() {
                Ok(l) => l,
                Err(e) => match std::fs::read_to_string(&lattice) {
                    Ok(text) => text.parse()?,
                    Err(_) => return Err(e),
                },
            };
            let c = l.brown_signature_check();
            println!(
                "rank {} signature {} (mod 8: {}) brown {} {}",
                l.rank(),
                c.signature,
                c.signature_mod8,
                c.brown,
                if c.equal { "EQUAL" } else { "DIFFERENT" }
            );
            Ok(if c.equal { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::Enumerate {
            components,
            reference,
            splits,
            no_s1_rule,
        } => {
            let u: SurfaceUnion = components.parse()?;
            if let Some(label) = reference {
                let mut table = load_table(&label)?;
                table.cases.retain(|c| c.union().as_ref() == Some(&u));
                if table.cases.is_empty() {
                    return Err(Error::Reference(format!("table `{label}` has no case {u}")));
                }
                let report = check_table(&table, execution)?;
                print!("{report}");
                return Ok(if report.passed() { Outcome::Ok } else { Outcome::Mismatch });
            }
            let opts = EnumerationOptions {
                s1_rule: !no_s1_rule,
                half_splits: splits.as_deref().map(parse_splits).transpose()?,
                execution,
            };
            let rows = enumerate_separations(&u, &opts)?;
            for r in &rows {
                println!("{r}");
            }
            eprintln!("{} rows", rows.len());
            Ok(Outcome::Ok)
        }
        Command::Check { partition } => {
            let p: QuoterPartition = partition.parse()?;
            match ergm_satisfiable(&p)? {
                None => {
                    println!("{} unsatisfiable", p.canonical());
                    Ok(Outcome::Mismatch)
                }
                Some(a) => {
                    let analysis = analyse(&p)?;
                    println!("{} satisfiable", p.canonical());
                    match a.gamma {
                        Some(g) => println!("beta {:?} gamma {:?}", a.beta, g),
                        None => println!("beta {:?} (annihilator of w1)", a.beta),
                    }
                    println!("assignments {}", analysis.assignments.len());
                    println!("pw1={}", render_pw1(&analysis.pw1));
                    Ok(Outcome::Ok)
                }
            }
        }
        Command::Tables { labels, dump } => {
            let labels: Vec<String> = if labels.is_empty() {
                table_labels().into_iter().map(String::from).collect()
            } else {
                labels
            };
            let tables = labels
                .iter()
                .map(|l| load_table(l))
                .collect::<Result<Vec<ReferenceTable>, Error>>()?;
            if let Some(dir) = dump {
                std::fs::create_dir_all(&dir)
                    .map_err(|e| Error::Reference(format!("{}: {e}", dir.display())))?;
                for t in &tables {
                    let path = dir.join(format!("{}.tbl", t.label));
                    std::fs::write(&path, t.to_string())
                        .map_err(|e| Error::Reference(format!("{}: {e}", path.display())))?;
                }
                return Ok(Outcome::Ok);
            }
            let mut all = true;
            for t in &tables {
                let r = check_table(t, execution)?;
                all &= r.passed();
                print!("{r}");
            }
            Ok(if all { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::Fundcycle {
            file,
            assume_proper,
        } => {
            let arr: CurveArrangement = read_input(&file)?.parse()?;
            let member = subgroup_membership(&arr)?;
            match solve_fundamental_cycle(&arr)? {
                None => {
                    println!("no fundamental cycle");
                    println!("membership {member}");
                }
                Some(c) => {
                    println!("cycle {c}");
                    println!("membership {member}");
                    println!("proper {}", if assume_proper { "assumed" } else { "not checked" });
                    let s = separation_from_cycle(&c);
                    println!(
                        "Q-circles even {:?} odd {:?}",
                        s.q_circles.even.iter().map(|&j| &arr.q_circles[j]).collect::<Vec<_>>(),
                        s.q_circles.odd.iter().map(|&j| &arr.q_circles[j]).collect::<Vec<_>>()
                    );
                    let label = |l: usize| arr.plus_regions[l].label.as_str();
                    println!(
                        "plus-regions even {:?} odd {:?}",
                        s.plus_regions.even.iter().map(|&l| label(l)).collect::<Vec<_>>(),
                        s.plus_regions.odd.iter().map(|&l| label(l)).collect::<Vec<_>>()
                    );
                    let amb = ambiguity_generators(&arr)?;
                    println!("ambiguity generators {}", amb.generators.len());
                    println!(
                        "standard shifts are solutions {:?}; solutions within their span {}; shifts within solutions {}",
                        amb.canonical_are_solutions,
                        amb.solutions_within_canonical_span,
                        amb.canonical_within_solutions
                    );
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Selfcheck { criterion } => {
            // a missing table is reported as such, not as a failed criterion
            for label in table_labels() {
                if let Err(e @ Error::Reference(_)) = load_table(label) {
                    return Err(e);
                }
            }
            let results = match criterion {
                Some(id) => vec![run_criterion(id, execution)],
                None => run_all(execution),
            };
            for r in &results {
                println!("{r}");
            }
            Ok(if results.iter().all(|r| r.passed) {
                Outcome::Ok
            } else {
                Outcome::Mismatch
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
