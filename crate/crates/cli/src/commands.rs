use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Number, Value};

use septamer::families;
use septamer::mwis::{brute_mwis, solve_mwis, Weight, WeightedGraph};
use septamer::reconstruction::count_by_reconstruction;
use septamer::separators::{brute_force_separators, minimal_separators, separator_traces, trace_bound, MinimalSeparator};
use septamer::structures::{find_creature, find_skinny_ladder_minor, verify_creature, CreatureWitness};
use septamer::{Search, VertexSet};

use crate::document::{parse_graph, parse_weights, GraphDocument, Loaded};
use crate::error::{CliError, Status};
use crate::{read_input, Family, GenArgs};

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    let line = serde_json::to_string(value).expect("serializable output");
    writeln!(out, "{line}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn load(file: Option<&PathBuf>) -> Result<Loaded, CliError> {
    parse_graph(&read_input(file)?)
}

fn search_status<T>(s: &Search<T>) -> (&'static str, Status) {
    match s {
        Search::Found(_) => ("found", Status::Ok),
        Search::None => ("none", Status::NotFound),
        Search::Unknown => ("unknown", Status::Unknown),
    }
}

pub fn gen(args: &GenArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let bad = |e: septamer::Error| CliError::input(e.to_string());
    let doc = match args.family {
        Family::Prism => GraphDocument::from_labeled(&families::prism(args.k).map_err(bad)?),
        Family::Theta => GraphDocument::from_labeled(&families::theta(args.k, args.path_len).map_err(bad)?),
        Family::SkinnyLadder => GraphDocument::from_labeled(&families::skinny_ladder(args.k).map_err(bad)?),
        Family::Creature => {
            GraphDocument::from_labeled(&families::creature_graph(args.k, args.a_size, args.b_size).map_err(bad)?)
        }
        Family::Interval => GraphDocument::from_graph(&families::random_interval_graph(args.n, args.seed).map_err(bad)?),
    };
    match &args.output {
        Some(path) => {
            let text = serde_json::to_string(&doc).expect("serializable document") + "\n";
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
        }
        None => emit(out, &doc)?,
    }
    Ok(Status::Ok)
}

fn separators(g: &Loaded, brute: bool) -> Result<Vec<MinimalSeparator>, CliError> {
    if brute {
        brute_force_separators(&g.graph).map_err(|e| CliError::input(e.to_string()))
    } else {
        Ok(minimal_separators(&g.graph))
    }
}

pub fn sep_enum(file: Option<&PathBuf>, brute: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    for ms in separators(&g, brute)? {
        emit(out, &ms.separator)?;
    }
    Ok(Status::Ok)
}

pub fn sep_count(file: Option<&PathBuf>, brute: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    emit(out, &separators(&g, brute)?.len())?;
    Ok(Status::Ok)
}

pub fn sep_traces(file: Option<&PathBuf>, vertex: &str, k: Option<usize>, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    let v = g.resolve(vertex)?;
    let traces: Vec<VertexSet> = separator_traces(&g.graph, v, &minimal_separators(&g.graph)).into_iter().collect();
    let mut report = json!({ "vertex": v, "count": traces.len(), "traces": traces });
    let mut status = Status::Ok;
    if let Some(k) = k {
        let bound = trace_bound(g.graph.n(), k as u32);
        let within = traces.len() as u128 <= bound;
        report["k"] = json!(k);
        report["bound"] = json!(bound);
        report["within_bound"] = json!(within);
        if !within {
            status = Status::NotFound;
        }
    }
    emit(out, &report)?;
    Ok(status)
}

pub fn zeta(file: Option<&PathBuf>, set: &str, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    let s = g.resolve_list(set)?;
    let z = septamer::zeta::zeta(&g.graph, &s).map_err(|e| CliError::input(e.to_string()))?;
    let labels: Vec<Option<&str>> = z.witness.iter().map(|v| g.label_of(v)).collect();
    emit(out, &json!({ "set": z.set, "value": z.value, "witness": z.witness, "witness_labels": labels }))?;
    Ok(Status::Ok)
}

pub fn creature_find(file: Option<&PathBuf>, k: usize, budget: u64, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    if k == 0 {
        return Err(CliError::input("--k must be at least 1"));
    }
    let result = find_creature(&g.graph, k, budget);
    let (name, status) = search_status(&result);
    let mut report = json!({ "status": name, "k": k, "budget": budget });
    if let Search::Found(w) = result {
        report["witness"] = json!(w);
    }
    emit(out, &report)?;
    Ok(status)
}

fn witness_part(g: &Loaded, value: &Value, field: &str) -> Result<Vec<usize>, CliError> {
    let items = value
        .get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::input(format!("witness.{field}: expected an array")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let token = match item {
                Value::String(s) => s.clone(),
                Value::Number(_) if item.as_u64().is_some() => item.to_string(),
                _ => return Err(CliError::input(format!("witness.{field}[{i}]: expected a vertex"))),
            };
            g.resolve(&token).map_err(|e| CliError::input(format!("witness.{field}[{i}]: {e}")))
        })
        .collect()
}

pub fn creature_verify(file: Option<&PathBuf>, k: usize, witness: &PathBuf, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    let text = read_input(Some(witness))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("witness: line {}, column {}: {e}", e.line(), e.column())))?;
    let value = value.get("witness").cloned().unwrap_or(value);
    let w = CreatureWitness {
        a: witness_part(&g, &value, "a")?.into_iter().collect(),
        b: witness_part(&g, &value, "b")?.into_iter().collect(),
        x: witness_part(&g, &value, "x")?,
        y: witness_part(&g, &value, "y")?,
    };
    let report = if w.x.len() != k {
        json!({ "valid": false, "reason": format!("witness has {} matching edges, expected {k}", w.x.len()) })
    } else {
        match verify_creature(&g.graph, &w) {
            Ok(()) => json!({ "valid": true, "k": k }),
            Err(v) => json!({ "valid": false, "condition": v.condition(), "reason": v.to_string() }),
        }
    };
    let valid = report["valid"] == Value::Bool(true);
    emit(out, &report)?;
    Ok(if valid { Status::Ok } else { Status::NotFound })
}

pub fn ladder_find(file: Option<&PathBuf>, k: usize, budget: u64, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    if k == 0 {
        return Err(CliError::input("--k must be at least 1"));
    }
    let result = find_skinny_ladder_minor(&g.graph, k, budget);
    let (name, status) = search_status(&result);
    let mut report = json!({ "status": name, "k": k, "budget": budget });
    if let Search::Found(m) = result {
        report["model"] = json!(m.to_map());
    }
    emit(out, &report)?;
    Ok(status)
}

pub fn certify(file: Option<&PathBuf>, k: Option<usize>, zeta_max: Option<usize>, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    let report = count_by_reconstruction(&g.graph, k, zeta_max);
    let clean = report.is_clean() && report.z_below_k_squared != Some(false) && report.within_bound != Some(false);
    emit(out, &report)?;
    Ok(if clean { Status::Ok } else { Status::NotFound })
}

fn exact(w: &Weight) -> String {
    format!("{}/{}", w.numer(), w.denom())
}

fn approx(w: &Weight) -> Value {
    Number::from_f64(*w.numer() as f64 / *w.denom() as f64).map_or(Value::Null, Value::Number)
}

pub fn mwis(file: Option<&PathBuf>, weights: Option<&PathBuf>, brute: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let g = load(file)?;
    let n = g.graph.n();
    let ws = match weights {
        Some(path) => {
            let text = read_input(Some(path))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::input(format!("weights: line {}, column {}: {e}", e.line(), e.column())))?;
            let value = value.get("weights").cloned().unwrap_or(value);
            let numbers: Vec<Number> =
                serde_json::from_value(value).map_err(|_| CliError::input("weights: expected an array of numbers"))?;
            parse_weights(&numbers, n, "weights")?
        }
        None => g.weights.clone().unwrap_or_else(|| vec![Weight::from_integer(1); n]),
    };
    let wg = WeightedGraph::new(g.graph.clone(), ws).map_err(|e| CliError::input(e.to_string()))?;
    let (value, set) = solve_mwis(&wg);
    let mut report = json!({ "weight": approx(&value), "weight_exact": exact(&value), "set": set });
    let mut status = Status::Ok;
    if brute {
        let b = brute_mwis(&wg).map_err(|e| CliError::input(e.to_string()))?;
        report["brute_weight_exact"] = json!(exact(&b));
        report["agrees"] = json!(b == value);
        if b != value {
            status = Status::NotFound;
        }
    }
    emit(out, &report)?;
    Ok(status)
}
