use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;
use thiserror::Error;
use voracious::{
    run_suite, CheckStatus, CoxeterGroup, CoxeterMatrix, VerifyConfig, VoraciousAutomaton, Wall,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] voracious::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Main output of a command plus what goes to stderr.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    /// Exit status 0 when true, 1 (reject or fail) otherwise.
    pub success: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            success: true,
            warnings: vec![],
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn emit(outcome: &Outcome, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, &outcome.output).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{}", outcome.output);
            Ok(())
        }
    }
}

fn preset(name: &str) -> Option<CoxeterMatrix> {
    let lower = name.to_ascii_lowercase().replace(['_', ' '], "");
    let m = match lower.as_str() {
        "a1" => CoxeterMatrix::rank_one(),
        "a2" => CoxeterMatrix::dihedral(3),
        "b2" => CoxeterMatrix::dihedral(4),
        "g2" => CoxeterMatrix::dihedral(6),
        "dinf" | "d∞" => CoxeterMatrix::dihedral(0),
        "a3" => CoxeterMatrix::a3(),
        _ => {
            let inner = |prefix: &str| {
                lower
                    .strip_prefix(prefix)
                    .and_then(|r| r.strip_prefix('('))
                    .and_then(|r| r.strip_suffix(')'))
                    .map(|r| {
                        r.split(',')
                            .map(str::parse::<u64>)
                            .collect::<Result<Vec<_>, _>>()
                    })
            };
            if let Some(Ok(v)) = inner("i2") {
                match v[..] {
                    [m] if m != 1 => CoxeterMatrix::dihedral(m),
                    _ => return None,
                }
            } else if let Some(Ok(v)) = inner("") {
                match v[..] {
                    [p, q, r] if p != 1 && q != 1 && r != 1 => CoxeterMatrix::triangle(p, q, r),
                    _ => return None,
                }
            } else {
                return None;
            }
        }
    };
    Some(m)
}

/// A preset name or a path to a group file.
pub fn load_group(source: &str) -> Result<CoxeterGroup, CliError> {
    let path = Path::new(source);
    let matrix = if path.exists() {
        CoxeterMatrix::parse(&read(path)?)?
    } else if let Some(m) = preset(source) {
        m
    } else {
        return Err(CliError::Usage(format!(
            "{source}: no such group file or preset"
        )));
    };
    Ok(CoxeterGroup::new(matrix))
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn text_or_json(format: Option<Format>) -> Result<Format, CliError> {
    match format.unwrap_or(Format::Text) {
        Format::Dot => Err(CliError::Usage(
            "dot output is only available for automata".into(),
        )),
        f => Ok(f),
    }
}

fn word_or_empty(group: &CoxeterGroup, w: &voracious::Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        group.format_word(w)
    }
}

pub fn reduce(
    group: &CoxeterGroup,
    word: &str,
    format: Option<Format>,
) -> Result<Outcome, CliError> {
    let g = group.element_of_word(&group.parse_word(word)?);
    let normal = group.format_word(&group.shortlex_word(&g));
    let out = match text_or_json(format)? {
        Format::Json => pretty(json!({"word": normal, "length": g.length()})),
        _ => format!(
            "{}\t{}\n",
            word_or_empty(group, &group.shortlex_word(&g)),
            g.length()
        ),
    };
    Ok(Outcome::ok(out))
}

pub fn project(
    group: &CoxeterGroup,
    word: &str,
    format: Option<Format>,
) -> Result<Outcome, CliError> {
    let g = group.element_of_word(&group.parse_word(word)?);
    let chain = group.factorization_chain(&g);
    let elements: Vec<String> = chain
        .elements
        .iter()
        .map(|e| group.element_name(e))
        .collect();
    let blocks: Vec<String> = chain
        .blocks_from_identity()
        .map(|b| group.format_word(&group.shortlex_word(b)))
        .collect();
    let canonical = group.format_word(&group.canonical_word(&g));
    let out = match text_or_json(format)? {
        Format::Json => pretty(json!({
            "chain": elements,
            "blocks": blocks,
            "canonical_word": canonical,
        })),
        _ => format!(
            "{}\nblocks: {}\n",
            elements.join(" → "),
            if blocks.is_empty() {
                "ε".to_string()
            } else {
                blocks.join("|")
            }
        ),
    };
    Ok(Outcome::ok(out))
}

fn wall_lines(walls: &[&Wall]) -> String {
    walls.iter().map(|w| format!("{}\n", w.root())).collect()
}

fn wall_json(walls: &[&Wall]) -> serde_json::Value {
    json!(walls
        .iter()
        .map(|w| w.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

pub fn walls(
    group: &CoxeterGroup,
    word: &str,
    format: Option<Format>,
) -> Result<Outcome, CliError> {
    let g = group.element_of_word(&group.parse_word(word)?);
    let frontier = group.frontier_set(&g);
    let walls: Vec<&Wall> = frontier.iter().collect();
    let out = match text_or_json(format)? {
        Format::Json => {
            pretty(json!({"element": group.element_name(&g), "walls": wall_json(&walls)}))
        }
        _ => wall_lines(&walls),
    };
    Ok(Outcome::ok(out))
}

pub fn small_roots(group: &CoxeterGroup, format: Option<Format>) -> Result<Outcome, CliError> {
    let u = group.small_roots()?;
    let walls: Vec<&Wall> = u.iter().collect();
    let out = match text_or_json(format)? {
        Format::Json => pretty(json!({"count": walls.len(), "walls": wall_json(&walls)})),
        _ => wall_lines(&walls),
    };
    Ok(Outcome::ok(out))
}

pub fn automaton(
    group: &CoxeterGroup,
    cap: usize,
    format: Option<Format>,
) -> Result<Outcome, CliError> {
    let build = group.build_automaton(cap)?;
    let out = match format.unwrap_or(Format::Dot) {
        Format::Json => build.automaton.to_json(group),
        Format::Dot => build.automaton.to_dot(group),
        Format::Text => {
            return Err(CliError::Usage(
                "automata are written as dot or json".into(),
            ))
        }
    };
    Ok(Outcome {
        output: out,
        success: true,
        warnings: build.warnings,
    })
}

fn verdict(
    accepted: bool,
    yes: &str,
    no: &str,
    format: Option<Format>,
) -> Result<Outcome, CliError> {
    let out = match text_or_json(format)? {
        Format::Json => pretty(json!({"accepted": accepted})),
        _ => format!("{}\n", if accepted { yes } else { no }),
    };
    Ok(Outcome {
        output: out,
        success: accepted,
        warnings: vec![],
    })
}

pub fn accept(
    group: &CoxeterGroup,
    file: &Path,
    word: &str,
    format: Option<Format>,
) -> Result<Outcome, CliError> {
    let aut = VoraciousAutomaton::from_json(group, &read(file)?)?;
    let v = group.parse_word(word)?;
    verdict(aut.accepts(&v), "accept", "reject", format)
}

pub fn member(
    group: &CoxeterGroup,
    word: &str,
    format: Option<Format>,
) -> Result<Outcome, CliError> {
    let v = group.parse_word(word)?;
    verdict(group.is_voracious(&v), "member", "not a member", format)
}

pub fn verify(
    group: &CoxeterGroup,
    config: Option<&Path>,
    radius: Option<usize>,
    seed: Option<u64>,
    cap: Option<usize>,
) -> Result<Outcome, CliError> {
    let mut cfg: VerifyConfig = match config {
        Some(path) => serde_json::from_str(&read(path)?).map_err(voracious::Error::from)?,
        None => VerifyConfig::default(),
    };
    if let Some(r) = radius {
        cfg.radius = r;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(c) = cap {
        cfg.max_word_length = c;
        cfg.pivot_cap = cfg.pivot_cap.max(c);
    }
    let report = run_suite(group, &cfg)?;
    let mut warnings = report.warnings.clone();
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        };
        eprintln!("{status:>7}  {}  ({} cases) {}", c.name, c.cases, c.detail);
        warnings.extend(c.warnings.iter().map(|w| format!("{}: {w}", c.name)));
    }
    Ok(Outcome {
        output: report.to_json(),
        success: report.passed(),
        warnings,
    })
}
