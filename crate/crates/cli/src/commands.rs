use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use sigpow::balance::{first_incompatible_pair, is_balanced, lift_path, project_path};
use sigpow::distance::{DistanceTable, Extremum};
use sigpow::format::{parse_graph, serialize_graph};
use sigpow::harness::{run_theorem, write_bundle, HarnessConfig, Theorem};
use sigpow::oracle::{generate, CorpusSpec};
use sigpow::power::{associated_complete, power, CompleteMode, PowerWitnesses};
use sigpow::spectra::{adjacency_matrix, eigenvalues};
use sigpow::{Sign, SignedGraph, VertexPath};

use crate::{Command, CompleteArg, DistanceMode, PowerMode, Side};

#[derive(Debug)]
pub enum CliError {
    Domain {
        error: sigpow::Error,
        detail: Option<String>,
    },
    Io {
        path: PathBuf,
        error: io::Error,
    },
    Usage(String),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Domain { error, .. } => error.name(),
            CliError::Io { .. } => "IoError",
            CliError::Usage(_) => "UsageError",
        }
    }

    pub fn detail(&self) -> Option<&str> {
        match self {
            CliError::Domain { detail, .. } => detail.as_deref(),
            _ => None,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain { error, .. } => write!(f, "{error}"),
            CliError::Io { path, error } => write!(f, "{}: {error}", path.display()),
            CliError::Usage(message) => f.write_str(message),
        }
    }
}

impl From<sigpow::Error> for CliError {
    fn from(error: sigpow::Error) -> Self {
        CliError::Domain {
            error,
            detail: None,
        }
    }
}

fn stdout_error(error: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        error,
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|error| CliError::Io {
        path: path.to_path_buf(),
        error,
    })
}

fn read_graph(path: &Path) -> CliResult<SignedGraph> {
    Ok(parse_graph(&read_text(path)?)?)
}

fn parse_vertices(text: &str) -> CliResult<VertexPath> {
    let vertices = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad vertex `{t}` in --path")))
        })
        .collect::<CliResult<Vec<usize>>>()?;
    Ok(VertexPath::new(vertices)?)
}

fn exponent(n: u64) -> CliResult<usize> {
    usize::try_from(n).map_err(|_| CliError::Usage(format!("exponent {n} too large")))
}

fn labels_line(labels: &[Sign]) -> String {
    labels
        .iter()
        .map(Sign::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn run(command: Command, out: &mut impl Write) -> CliResult<ExitCode> {
    let text = execute(command)?;
    out.write_all(text.output.as_bytes())
        .map_err(stdout_error)?;
    Ok(text.code)
}

struct Output {
    output: String,
    code: ExitCode,
}

impl Output {
    fn ok(output: String) -> Output {
        Output {
            output,
            code: ExitCode::SUCCESS,
        }
    }
}

fn execute(command: Command) -> CliResult<Output> {
    match command {
        Command::Info { file } => info(&read_graph(&file)?).map(Output::ok),
        Command::Distance { mode, file } => distance(&read_graph(&file)?, mode).map(Output::ok),
        Command::Power { n, mode, file } => {
            power_command(&read_graph(&file)?, exponent(n)?, mode).map(Output::ok)
        }
        Command::Complete { mode, file } => {
            let mode = match mode {
                CompleteArg::Max => CompleteMode::Max,
                CompleteArg::Min => CompleteMode::Min,
                CompleteArg::Pm => CompleteMode::Pm,
            };
            let g = associated_complete(&read_graph(&file)?, mode)?;
            Ok(Output::ok(serialize_graph(&g)))
        }
        Command::Balance { file } => balance(&read_graph(&file)?).map(Output::ok),
        Command::Compatible { file } => compatible(&read_graph(&file)?).map(Output::ok),
        Command::Spectrum {
            complete_pm,
            tol,
            file,
        } => {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Usage(format!(
                    "--tol must be positive, got {tol}"
                )));
            }
            let mut g = read_graph(&file)?;
            if complete_pm {
                g = associated_complete(&g, CompleteMode::Pm)?;
            }
            let spectrum = eigenvalues(&adjacency_matrix(&g), tol)?;
            Ok(Output::ok(spectrum.to_string()))
        }
        Command::Lift { n, path, file } => {
            let g = read_graph(&file)?;
            let n = exponent(n)?;
            let path = parse_vertices(&path)?;
            let lifted = lift_path(&g, &path, n)?;
            let p = power(&g, n)?;
            let sign = p.power_max.path_sign(&lifted)?;
            Ok(Output::ok(format!("path\t{lifted}\nsign\t{sign}\n")))
        }
        Command::Project {
            n,
            mode,
            path,
            file,
        } => {
            let g = read_graph(&file)?;
            let which = match mode {
                Side::Max => Extremum::Max,
                Side::Min => Extremum::Min,
            };
            let witnesses = PowerWitnesses::new(&g, exponent(n)?, which)?;
            let path = parse_vertices(&path)?;
            witnesses.power.path_sign(&path)?;
            let walk = project_path(&witnesses, &path)?;
            let sign = g.walk_sign(&walk)?;
            Ok(Output::ok(format!(
                "walk\t{walk}\nlength\t{}\nsign\t{sign}\n",
                walk.len()
            )))
        }
        Command::Verify {
            theorem,
            trials,
            seed,
            max_vertices,
            bundle,
        } => verify(&theorem, trials, seed, max_vertices, &bundle),
        Command::Generate { spec } => {
            let spec = CorpusSpec::parse(&read_text(&spec)?)?;
            let mut out = String::new();
            for g in generate(&spec) {
                out.push_str(&serialize_graph(&g?));
            }
            Ok(Output::ok(out))
        }
    }
}

fn info(g: &SignedGraph) -> CliResult<String> {
    let connected = g.is_connected();
    let mut out = format!(
        "vertices\t{}\nedges\t{}\nconnected\t{connected}\ntwo_connected\t{}\n",
        g.order(),
        g.edge_count(),
        g.is_two_connected()
    );
    if connected {
        let table = DistanceTable::new(g)?;
        out.push_str(&format!("diameter\t{}\n", table.diameter()));
        out.push_str(&format!("compatible\t{}\n", table.is_compatible()));
    }
    out.push_str(&format!("balanced\t{}\n", is_balanced(g)?.balanced));
    Ok(out)
}

fn distance(g: &SignedGraph, mode: DistanceMode) -> CliResult<String> {
    let table = DistanceTable::new(g)?;
    let render = |which| {
        let m = table.matrix(which);
        m.rows()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                cells.join("\t") + "\n"
            })
            .collect::<String>()
    };
    Ok(match mode {
        DistanceMode::Max => render(Extremum::Max),
        DistanceMode::Min => render(Extremum::Min),
        DistanceMode::Both => format!("{}\n{}", render(Extremum::Max), render(Extremum::Min)),
    })
}

fn power_command(g: &SignedGraph, n: usize, mode: PowerMode) -> CliResult<String> {
    let p = power(g, n)?;
    let chosen = match mode {
        PowerMode::Max => &p.power_max,
        PowerMode::Min => &p.power_min,
        PowerMode::Unique => match p.unique_power() {
            Some(h) => h,
            None => return Err(non_unique(g, n)?),
        },
    };
    Ok(serialize_graph(chosen))
}

/// The first pair within distance `n` joined by shortest paths of both signs.
fn non_unique(g: &SignedGraph, n: usize) -> CliResult<CliError> {
    let table = DistanceTable::new(g)?;
    let (u, v) = sigpow::power::first_incompatible_within(&table, n)
        .expect("power is not unique, so some pair within n is incompatible");
    let pos = table.shortest_path_with_sign(g, u, v, Sign::Pos);
    let neg = table.shortest_path_with_sign(g, u, v, Sign::Neg);
    let detail = match (pos, neg) {
        (Some(p), Some(q)) => format!("pair\t{u} {v}\n+\t{p}\n-\t{q}"),
        _ => format!("pair\t{u} {v}"),
    };
    Ok(CliError::Domain {
        error: sigpow::Error::NonUniquePower { n, u, v },
        detail: Some(detail),
    })
}

fn balance(g: &SignedGraph) -> CliResult<String> {
    let report = is_balanced(g)?;
    Ok(match (report.switching_labels, report.witness) {
        (Some(labels), _) if report.balanced => {
            format!("balanced\nlabels\t{}\n", labels_line(&labels))
        }
        (_, Some(cycle)) => format!("unbalanced\ncycle\t{cycle}\n"),
        _ => unreachable!("a balance report always carries a certificate"),
    })
}

fn compatible(g: &SignedGraph) -> CliResult<String> {
    Ok(match first_incompatible_pair(g)? {
        None => "compatible\n".to_string(),
        Some(pair) => format!(
            "incompatible {} {}\n+\t{}\n-\t{}\n",
            pair.u, pair.v, pair.positive, pair.negative
        ),
    })
}

fn parse_theorems(selection: &str) -> CliResult<Vec<Theorem>> {
    if selection == "all" {
        return Ok(Theorem::ALL.to_vec());
    }
    selection
        .split(',')
        .map(|id| {
            id.trim()
                .parse::<Theorem>()
                .map_err(|_| CliError::Usage(format!("unknown theorem `{id}`")))
        })
        .collect()
}

fn verify(
    selection: &str,
    trials: usize,
    seed: u64,
    max_vertices: usize,
    bundle: &Path,
) -> CliResult<Output> {
    let theorems = parse_theorems(selection)?;
    if max_vertices < 2 {
        return Err(CliError::Usage("--max-vertices must be at least 2".into()));
    }
    let config = HarnessConfig {
        trials,
        seed,
        max_vertices,
    };
    let mut out = String::from("theorem\ttrials\tpass\tfail\tskip\n");
    let mut counterexamples = Vec::new();
    for theorem in theorems {
        let tally = run_theorem(theorem, &config);
        out.push_str(&format!("{tally}\n"));
        counterexamples.extend(tally.counterexamples);
    }
    if counterexamples.is_empty() {
        return Ok(Output::ok(out));
    }
    write_bundle(bundle, &counterexamples).map_err(|error| CliError::Io {
        path: bundle.to_path_buf(),
        error,
    })?;
    eprintln!(
        "{} counterexample(s) written to {}",
        counterexamples.len(),
        bundle.display()
    );
    Ok(Output {
        output: out,
        code: ExitCode::FAILURE,
    })
}
