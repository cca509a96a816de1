use std::fs;
use std::path::{Path, PathBuf};

use nrh_core::constructions::{build_family, catalog, family, family_ids, grid, ConstructionError, FamilyParams};
use nrh_core::models::{classify_case, transvection, validate, InfinitesimalModel};
use serde_json::{json, Value};

use crate::model_file::ModelFile;
use crate::report::{self, Report};
use crate::{coords, Cli, CliError, Command, Outcome};

pub const CATALOG_ENV: &str = "NRH_CATALOG_DIR";

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { path } => {
            let m = load(path)?;
            let r = validate(&m);
            report::validation(&r).emit(cli.json);
            Ok(if r.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Classify { path } => {
            let m = load(path)?;
            let r = validate(&m);
            let label = classify_case(&m).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let f = if r.passed() { transvection(&m).ok() } else { None };
            let mut rep = report::classification(&m, &label, f.as_ref());
            rep.set("valid", json!(r.passed()));
            if !r.passed() {
                rep.line("  model fails validation; classification is provisional");
            }
            rep.emit(cli.json);
            Ok(if r.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Transvection { path } => {
            let m = load(path)?;
            let r = validate(&m);
            if !r.passed() {
                report::validation(&r).emit(cli.json);
                return Ok(Outcome::Fail);
            }
            let f = transvection(&m).map_err(|e| CliError::Usage(e.to_string()))?;
            report::transvection(&f).emit(cli.json);
            Ok(Outcome::Pass)
        }
        Command::Construct { family: id, params, out } => construct(cli, id, params, out.as_deref()),
        Command::Catalog { dim } => list_catalog(cli, *dim),
        Command::Coords { metric } => coords::run(cli, metric),
    }
}

pub fn load(path: &Path) -> Result<InfinitesimalModel, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let schema = |source| CliError::Schema { path: path.display().to_string(), source };
    ModelFile::parse(&text).and_then(|f| f.to_model()).map_err(schema)
}

fn unknown_family(id: &str) -> CliError {
    CliError::Usage(format!("unknown family `{id}`; known families: {}", family_ids().join(", ")))
}

fn construct(cli: &Cli, id: &str, raw: &[String], out: Option<&Path>) -> Result<Outcome, CliError> {
    let fam = family(id).map_err(|_| unknown_family(id))?;
    let mut params = FamilyParams::new();
    for a in raw {
        params.parse_assignment(a).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if cli.grid {
        return sweep(cli, fam.id, &params);
    }
    let model = match build_family(fam.id, &params) {
        Ok(m) => m,
        Err(ConstructionError::FamilyConstraintError { family, clauses }) => {
            let mut rep = Report::new("construction");
            rep.set("family", json!(family));
            rep.set("passed", json!(false));
            rep.set("violated", json!(clauses));
            rep.line(format!("{family}: constraints violated"));
            for c in &clauses {
                rep.line(format!("  {c}"));
            }
            rep.emit(cli.json);
            return Ok(Outcome::Fail);
        }
        Err(ConstructionError::UnknownFamily(id)) => return Err(unknown_family(&id)),
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let file = ModelFile::from_model(&model);
    match out {
        Some(path) => {
            fs::write(path, file.to_json() + "\n").map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
            let mut rep = Report::new("construction");
            rep.set("family", json!(fam.id));
            rep.set("dim", json!(file.dim));
            rep.set("path", json!(path.display().to_string()));
            rep.line(format!("{}: wrote {}-dimensional model to {}", fam.id, file.dim, path.display()));
            rep.emit(cli.json);
        }
        None => println!("{}", file.to_json()),
    }
    Ok(Outcome::Pass)
}

fn sweep(cli: &Cli, id: &str, fixed: &FamilyParams) -> Result<Outcome, CliError> {
    let points = grid(id).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut rep = Report::new("grid");
    let mut rows = Vec::new();
    let mut all = true;
    for mut p in points {
        for (k, v) in fixed.iter() {
            p.set(k, v.clone());
        }
        let shown: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let (passed, reason) = match build_family(id, &p) {
            Ok(m) => {
                let r = validate(&m);
                (r.passed(), r.first_failure().map(|c| c.name.to_string()))
            }
            Err(e) => (false, Some(e.to_string())),
        };
        all &= passed;
        rep.line(format!("{} {}{}", if passed { "ok  " } else { "FAIL" }, shown.join(" "), reason.map(|r| format!(" ({r})")).unwrap_or_default()));
        rows.push(json!({ "params": shown, "passed": passed }));
    }
    rep.set("family", json!(id));
    rep.set("points", Value::Array(rows));
    rep.set("passed", json!(all));
    rep.emit(cli.json);
    Ok(if all { Outcome::Pass } else { Outcome::Fail })
}

struct Listed {
    name: String,
    family: String,
    dim: usize,
    label: String,
    note: String,
    params: Vec<String>,
}

fn user_catalog() -> Result<Vec<Listed>, CliError> {
    let Some(dir) = std::env::var_os(CATALOG_ENV) else {
        return Ok(Vec::new());
    };
    let dir = PathBuf::from(dir);
    let entries = fs::read_dir(&dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
    let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let m = load(&path)?;
        let label = classify_case(&m).map(|c| c.kind.as_str().to_string()).unwrap_or_else(|e| e.to_string());
        out.push(Listed {
            name: path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
            family: "user".into(),
            dim: m.space().dim(),
            label,
            note: path.display().to_string(),
            params: Vec::new(),
        });
    }
    Ok(out)
}

fn list_catalog(cli: &Cli, dim: Option<usize>) -> Result<Outcome, CliError> {
    let mut listed: Vec<Listed> = catalog()
        .into_iter()
        .map(|e| Listed {
            name: e.name,
            family: e.family.to_string(),
            dim: e.dim,
            label: e.label.as_str().to_string(),
            note: e.note.to_string(),
            params: e.params.iter().map(|(k, v)| format!("{k}={v}")).collect(),
        })
        .collect();
    listed.extend(user_catalog()?);
    listed.retain(|e| dim.is_none_or(|d| e.dim == d));

    let mut rep = Report::new("catalog");
    rep.set(
        "entries",
        Value::Array(
            listed
                .iter()
                .map(|e| json!({ "name": e.name, "family": e.family, "dim": e.dim, "label": e.label, "note": e.note, "params": e.params }))
                .collect(),
        ),
    );
    for e in &listed {
        rep.line(format!("{:<22} dim {}  {:<18} {:<12} {}  {}", e.name, e.dim, e.family, e.label, e.params.join(" "), e.note));
    }
    if cli.grid {
        let mut grids = serde_json::Map::new();
        for id in family_ids() {
            let fam = family(id).map_err(|e| CliError::Usage(e.to_string()))?;
            if dim.is_some_and(|d| fam.dim.is_some_and(|fd| fd != d)) {
                continue;
            }
            let points = grid(id).map_err(|e| CliError::Usage(e.to_string()))?;
            let shown: Vec<String> = points.iter().map(|p| p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")).collect();
            rep.line(format!("grid {id}: {} points", shown.len()));
            grids.insert(id.to_string(), json!(shown));
        }
        rep.set("grids", Value::Object(grids));
    }
    rep.emit(cli.json);
    Ok(Outcome::Pass)
}
