//! `gdep` command-line tool.
//!
//! Exit status: 0 when the property holds or the command succeeded, 1 when
//! it fails, 2 on usage or input errors, 3 when a size guard trips.
//! Verdicts and data go to stdout, diagnostics to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gdep::calculus::DEFAULT_UNIVERSE_BOUND;
use gdep::logic::sentence_team;
use gdep::{
    build_armstrong, check_derivation, entails, mine_gdeps, parse_atom, parse_formula, translate_text,
    sample, semantic_oracle, ArmstrongSpec, Atom, AtomSet, Direction, Error, EvalContext, GAtom,
    Structure, Team, VarSet, Witness,
};

#[derive(Parser)]
#[command(name = "gdep", version, about = "G-dependence over teams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Gdep,
    Fdep,
}

#[derive(Subcommand)]
enum Command {
    /// Check a `gdep(..)` or `dep(..)` atom against a CSV team.
    Check { team: PathBuf, atom: String },
    /// Decide whether the atoms in a file entail a goal atom.
    Entail {
        sigma: PathBuf,
        goal: String,
        /// Write the derivation (or counter-model CSV) here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Build an Armstrong relation for the atoms in a file.
    Armstrong {
        sigma: PathBuf,
        /// Comma- or space-separated universe; defaults to the atoms' variables.
        #[arg(long)]
        vars: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_UNIVERSE_BOUND)]
        max_vars: usize,
    },
    /// Rewrite an atom or formula between `dep` and `gdep` atoms.
    Translate {
        input: String,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Evaluate a formula in a structure, on a team or as a sentence.
    Eval {
        structure: PathBuf,
        formula: String,
        #[arg(long)]
        team: Option<PathBuf>,
        #[arg(long)]
        max_split_rows: Option<usize>,
        #[arg(long)]
        max_choices: Option<u128>,
    },
    /// List minimal G-dependencies holding in a CSV team.
    Mine {
        team: PathBuf,
        #[arg(long, default_value_t = 1)]
        max_lhs: usize,
    },
    /// Cross-check the decision procedure against the brute-force oracle on
    /// random premise sets.
    Validate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        vars: usize,
    },
}

enum Failure {
    Input(String),
    Size(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_size() {
            Failure::Size(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_team(path: &Path) -> Result<Team, Failure> {
    Team::from_csv_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_sigma(path: &Path) -> Result<AtomSet, Failure> {
    AtomSet::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verdict(out: &mut impl Write, holds: bool) -> Outcome {
    writeln!(out, "{holds}").ok();
    Ok(holds)
}

fn check(team: &Path, atom: &str) -> Outcome {
    let team = load_team(team)?;
    let holds = match parse_atom(atom)? {
        Atom::G(a) => team.satisfies_gdep(&a)?,
        Atom::F(a) => team.satisfies_fdep(&a)?,
    };
    verdict(&mut std::io::stdout(), holds)
}

fn entail(sigma: &Path, goal: &str, witness: Option<&Path>) -> Outcome {
    let sigma = load_sigma(sigma)?;
    let goal = GAtom::parse(goal)?;
    let result = entails(&sigma, &goal);
    let text = match &result.witness {
        Witness::Derivation(d) => {
            debug_assert!(check_derivation(&sigma, d).is_ok());
            d.to_string()
        }
        Witness::CounterModel(m) => m.team.to_csv_string(),
    };
    if let Some(path) = witness {
        write_file(path, &text)?;
    }
    println!("{}", if result.verdict() { "derivable" } else { "not derivable" });
    Ok(result.verdict())
}

fn parse_var_list(list: &str) -> Result<VarSet, Failure> {
    let names = list.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty());
    Ok(VarSet::from_names(names)?)
}

fn armstrong(sigma: &Path, vars: Option<&str>, output: Option<&Path>, max_vars: usize) -> Outcome {
    let sigma = load_sigma(sigma)?;
    let universe = match vars {
        Some(list) => parse_var_list(list)?,
        None => sigma.variables(),
    };
    if universe.is_empty() {
        return Err(Failure::Input("empty universe: give --vars or a nonempty atom file".into()));
    }
    let spec = ArmstrongSpec {
        sigma,
        universe,
        bound: max_vars,
    };
    let csv = build_armstrong(&spec)?.to_csv_string();
    match output {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(true)
}

fn translate(input: &str, to: Target) -> Outcome {
    let direction = match to {
        Target::Gdep => Direction::ToGDep,
        Target::Fdep => Direction::ToFDep,
    };
    let lines = translate_text(input, direction)?;
    if lines.is_empty() {
        eprintln!("empty conjunction: the atom holds in every team");
    }
    for l in lines {
        println!("{l}");
    }
    Ok(true)
}

fn eval(
    structure: &Path,
    formula: &str,
    team: Option<&Path>,
    max_split_rows: Option<usize>,
    max_choices: Option<u128>,
) -> Outcome {
    let structure = Structure::parse(&read(structure)?)?;
    let phi = parse_formula(formula)?;
    let team = match team {
        Some(path) => load_team(path)?,
        None => sentence_team(),
    };
    let mut ctx = EvalContext::new(&structure, team);
    if let Some(n) = max_split_rows {
        ctx.limits.max_split_rows = n;
    }
    if let Some(n) = max_choices {
        ctx.limits.max_choice_functions = n;
    }
    let holds = gdep::eval(&ctx, &phi)?;
    verdict(&mut std::io::stdout(), holds)
}

fn mine(team: &Path, max_lhs: usize) -> Outcome {
    if max_lhs == 0 {
        return Err(Failure::Input("--max-lhs must be at least 1".into()));
    }
    let team = load_team(team)?;
    for atom in mine_gdeps(&team, max_lhs)? {
        println!("{atom}");
    }
    Ok(true)
}

fn validate(seed: u64, trials: usize, n: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = sample::variables(n);
    let (mut positive, mut discrepancies) = (0usize, 0usize);
    for _ in 0..trials {
        let sigma = sample::atom_set(&mut rng, &vars, 4, 2);
        let goal = sample::gatom(&mut rng, &vars, 1, 2);
        let result = entails(&sigma, &goal);
        let oracle = semantic_oracle(&sigma, &goal)?;
        let witness_ok = match &result.witness {
            Witness::Derivation(d) => check_derivation(&sigma, d).is_ok(),
            Witness::CounterModel(m) => {
                sigma.iter().all(|a| m.team.satisfies_gdep(a).unwrap_or(false))
                    && !m.team.satisfies_gdep(&goal).unwrap_or(true)
            }
        };
        if result.verdict() != oracle || !witness_ok {
            discrepancies += 1;
            eprintln!("discrepancy: sigma = {{{}}}, goal = {goal}", sigma.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "));
        }
        positive += usize::from(result.verdict());
    }
    println!("trials {trials}, derivable {positive}, discrepancies {discrepancies}");
    Ok(discrepancies == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { team, atom } => check(team, atom),
        Command::Entail { sigma, goal, witness } => entail(sigma, goal, witness.as_deref()),
        Command::Armstrong {
            sigma,
            vars,
            output,
            max_vars,
        } => armstrong(sigma, vars.as_deref(), output.as_deref(), *max_vars),
        Command::Translate { input, to } => translate(input, *to),
        Command::Eval {
            structure,
            formula,
            team,
            max_split_rows,
            max_choices,
        } => eval(structure, formula, team.as_deref(), *max_split_rows, *max_choices),
        Command::Mine { team, max_lhs } => mine(team, *max_lhs),
        Command::Validate { seed, trials, vars } => validate(*seed, *trials, *vars),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Size(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
