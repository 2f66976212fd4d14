//! Command implementations. Each returns the `input` echo and the `result`
//! payload; rendering lives in [`crate::output`].

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use tropical_rank::abelianize::{abelianization, character_lattice, relation_matrix};
use tropical_rank::magnus::{detect_ascending, grank_upper, hnn_data, magnus_rewrite, tietze_simplify, MagnusError};
use tropical_rank::novikov::{novikov_report, rank_bounds};
use tropical_rank::sigma::{sigma_report, Oracle, OracleKind, SigmaError, SigmaVerdict};
use tropical_rank::{Character, CharacterError, ParseError, Presentation};

use crate::scan::primitive_characters;
use crate::{CharArgs, Command};

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Magnus(#[from] MagnusError),
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error("height must be at least 1, got {0}")]
    Height(i64),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Sigma(e) if e.is_resource_cap() => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Character(_) | CliError::Magnus(_) => "character",
            CliError::Sigma(SigmaError::NoApplicableOracle { .. }) => "no-applicable-oracle",
            CliError::Sigma(e) if e.is_resource_cap() => "resource-cap",
            CliError::Sigma(_) => "sigma",
            CliError::Height(_) => "height",
        }
    }
}

/// What a command hands to the renderer.
pub struct Report {
    pub input: Value,
    pub result: Value,
    pub heuristic_fields: Vec<&'static str>,
    pub notes: Vec<&'static str>,
}

/// One line of `sphere-scan` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub character: Character,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_verdict: Option<SigmaVerdict>,
}

const SUBLEVEL_NOTE: &str = "sub-level set is {g : phi(g) <= 0}";

fn load(path: &Path) -> Result<Presentation, CliError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: display.clone(), source })?;
    Presentation::parse(&text).map_err(|source| CliError::Parse { path: display, source })
}

/// The presentation, the character as typed, and its primitive direction.
fn load_with_character(args: &CharArgs) -> Result<(Presentation, Character, Character), CliError> {
    let p = load(&args.file)?;
    let c = Character::parse_spec(&p, &args.character)?;
    let primitive = c.primitive()?;
    Ok((p, c, primitive))
}

fn to_json<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize to JSON")
}

fn input_echo(p: &Presentation, args: &CharArgs, given: &Character, primitive: &Character) -> Value {
    json!({
        "file": args.file.display().to_string(),
        "presentation": p.to_string(),
        "character": given.to_spec(p.generators()),
        "primitive_character": primitive.to_spec(p.generators()),
    })
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Abelianize { file } => abelianize(file),
        Command::Characters { file } => characters(file),
        Command::Rewrite { args, max_tietze_passes } => rewrite(args, *max_tietze_passes),
        Command::RankBounds { args, max_tietze_passes } => bounds(args, *max_tietze_passes),
        Command::NovikovB1 { args } => novikov(args),
        Command::SigmaBall { args, radius, oracle, vertex_cap } => sigma(args, *radius, (*oracle).into(), *vertex_cap),
        Command::SphereScan { file, height, max_tietze_passes, oracle, radius, vertex_cap } => {
            sphere_scan(file, *height, *max_tietze_passes, oracle.map(Into::into), *radius, *vertex_cap)
        }
    }
}

fn file_echo(path: &Path, p: &Presentation) -> Value {
    json!({ "file": path.display().to_string(), "presentation": p.to_string() })
}

fn abelianize(file: &Path) -> Result<Report, CliError> {
    let p = load(file)?;
    let group = abelianization(&p);
    let matrix = relation_matrix(&p);
    let entry = |x: String| x.parse::<i64>().map_or_else(|_| json!(x), |v| json!(v));
    let rows: Vec<Vec<Value>> =
        matrix.to_rows().iter().map(|r| r.iter().map(|x| entry(x.to_string())).collect()).collect();
    Ok(Report {
        input: file_echo(file, &p),
        result: json!({
            "group": group.to_string(),
            "free_rank": group.free_rank,
            "torsion": to_json(&group)["torsion"],
            "relation_matrix": rows,
        }),
        heuristic_fields: vec![],
        notes: vec![],
    })
}

fn characters(file: &Path) -> Result<Report, CliError> {
    let p = load(file)?;
    let basis = character_lattice(&p)?;
    let entries: Vec<Value> =
        basis.iter().map(|c| json!({ "values": c.values(), "spec": c.to_spec(p.generators()) })).collect();
    Ok(Report {
        input: file_echo(file, &p),
        result: json!({ "rank": basis.len(), "basis": entries }),
        heuristic_fields: vec![],
        notes: vec![],
    })
}

fn rewrite(args: &CharArgs, passes: usize) -> Result<Report, CliError> {
    let (p, given, c) = load_with_character(args)?;
    let raw = magnus_rewrite(&p, &c)?;
    let f = if passes == 0 { raw.clone() } else { tietze_simplify(&raw, passes) };
    let mut input = input_echo(&p, args, &given, &c);
    input["max_tietze_passes"] = json!(passes);
    Ok(Report {
        input,
        result: json!({
            "presentation": f.to_string(),
            "raw_d_count": raw.d_count(),
            "d_count": f.d_count(),
            "grank_upper": grank_upper(&f),
            "verdict": to_json(&detect_ascending(&f)),
            "hnn": to_json(&hnn_data(&f)),
            "fake_hnn": to_json(&f),
        }),
        heuristic_fields: vec![],
        notes: vec![],
    })
}

fn bounds(args: &CharArgs, passes: usize) -> Result<Report, CliError> {
    let (p, given, c) = load_with_character(args)?;
    let b = rank_bounds(&p, &c, passes)?;
    let mut result = to_json(&b);
    result["verdict"] = to_json(&detect_ascending(&b.upper_certificate));
    let mut input = input_echo(&p, args, &given, &c);
    input["max_tietze_passes"] = json!(passes);
    Ok(Report { input, result, heuristic_fields: vec![], notes: vec![] })
}

fn novikov(args: &CharArgs) -> Result<Report, CliError> {
    let (p, given, c) = load_with_character(args)?;
    let report = novikov_report(&p, &c)?;
    let mut result = to_json(&report);
    result["d1_text"] = json!(report.d1.to_string());
    result["d2_text"] = json!(report.d2.to_string());
    Ok(Report { input: input_echo(&p, args, &given, &c), result, heuristic_fields: vec![], notes: vec![] })
}

fn sigma(args: &CharArgs, radius: usize, kind: OracleKind, cap: usize) -> Result<Report, CliError> {
    let (p, given, c) = load_with_character(args)?;
    let oracle = Oracle::new(kind, &p)?;
    let report = sigma_report(&p, &c, radius, &oracle, cap)?;
    let mut input = input_echo(&p, args, &given, &c);
    input["radius"] = json!(radius);
    input["oracle"] = json!(kind.name());
    input["vertex_cap"] = json!(cap);
    Ok(Report {
        input,
        result: to_json(&report),
        heuristic_fields: vec!["result.components", "result.identity_component", "result.witnesses", "result.verdict"],
        notes: vec![SUBLEVEL_NOTE],
    })
}

fn sphere_scan(
    file: &Path,
    height: i64,
    passes: usize,
    kind: Option<OracleKind>,
    radius: usize,
    cap: usize,
) -> Result<Report, CliError> {
    if height < 1 {
        return Err(CliError::Height(height));
    }
    let p = load(file)?;
    let oracle = kind.map(|k| Oracle::new(k, &p)).transpose()?;
    let lattice = character_lattice(&p)?;
    let characters = primitive_characters(&lattice, p.rank(), height);
    let rows = characters
        .par_iter()
        .map(|c| -> Result<ScanRow, CliError> {
            let b = rank_bounds(&p, c, passes)?;
            let sigma_verdict = match &oracle {
                Some(o) => Some(sigma_report(&p, c, radius, o, cap)?.verdict),
                None => None,
            };
            Ok(ScanRow { character: c.clone(), lower: b.lower, upper: b.upper, exact: b.exact, sigma_verdict })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut input = file_echo(file, &p);
    input["height"] = json!(height);
    input["max_tietze_passes"] = json!(passes);
    if let Some(k) = kind {
        input["oracle"] = json!(k.name());
        input["radius"] = json!(radius);
        input["vertex_cap"] = json!(cap);
    }
    let (heuristic_fields, notes) =
        if kind.is_some() { (vec!["result.rows[].sigma_verdict"], vec![SUBLEVEL_NOTE]) } else { (vec![], vec![]) };
    Ok(Report {
        input,
        result: json!({ "generators": p.generators(), "rows": to_json(&rows) }),
        heuristic_fields,
        notes,
    })
}
