//! The `blades` command line front end.
//!
//! Exit codes: `0` success, `1` domain error (invalid input for the
//! mathematics, exceeded time budget), `2` parse error (bad flags, malformed
//! JSON or OSP text).

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::boundary::{restrict_collection, restrict_osp};
use crate::combinatorics::{mask_labels, GroundSet, KSubset, WSCollection};
use crate::enumeration::{build_graph_on, count_maximal_collections, EnumerationOptions, NodeFilter};
use crate::error::Error;
use crate::membership::{blade_membership, translated_blade_membership, MembershipMethod, RationalPoint};
use crate::osp::{blade_from_vertex, Blade, DecoratedOsp};
use crate::subdivision::{exchange_violation, induce_subdivision, BladeArrangement, Cell};
use crate::trees::tree_arrangement;

#[derive(Parser, Debug)]
#[command(name = "blades", version, about = "Blade arrangements on hypersimplices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether a collection of k-subsets is weakly separated
    CheckWs {
        #[command(flatten)]
        input: CollectionArgs,
        /// Print an object with the first offending pair
        #[arg(long)]
        explain: bool,
    },
    /// Convert a vertex e_I to its decorated ordered set partition
    Blade {
        #[command(flatten)]
        ground: GroundArgs,
        /// Members of I, e.g. 1,2,4,7
        #[arg(long)]
        vertex: String,
    },
    /// List the maximal cells of the subdivision induced by an arrangement
    Subdivide {
        #[command(flatten)]
        input: ArrangementArgs,
    },
    /// Decide whether an arrangement induces a matroid subdivision
    Matroidal {
        #[command(flatten)]
        input: ArrangementArgs,
    },
    /// Restrict a collection or a blade to the facet x_j = 1
    Boundary {
        #[command(flatten)]
        input: CollectionArgs,
        /// Blade to restrict instead of a collection
        #[arg(long)]
        osp: Option<String>,
        #[arg(long)]
        j: u32,
        /// Keep frozen images in the restricted collection
        #[arg(long)]
        keep_frozen: bool,
    },
    /// Count maximal weakly separated collections of Δ(k,n)
    Enumerate {
        #[command(flatten)]
        ground: GroundArgs,
        /// all | two-interval
        #[arg(long, default_value = "all")]
        filter: String,
        /// Worker threads (0 = all cores)
        #[arg(long, env = "BLADES_THREADS", default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        time_budget_secs: Option<f64>,
        /// Include every maximal collection in the output
        #[arg(long)]
        materialize: bool,
    },
    /// Emit the tree arrangement of a weakly separated collection on Δ(3,n) as DOT
    Trees {
        #[command(flatten)]
        input: CollectionArgs,
        /// Only the tree on the facet x_j = 1
        #[arg(long)]
        j: Option<u32>,
    },
    /// Test whether a rational point lies on a blade
    Eval {
        #[command(flatten)]
        ground: GroundArgs,
        /// Blade in OSP notation
        #[arg(long, conflicts_with = "vertex")]
        osp: Option<String>,
        /// Use the translate ((σ_1 … σ_n))_{e_I} of this vertex
        #[arg(long)]
        vertex: Option<String>,
        /// Coordinates x_1,…,x_n as integers or p/q
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// chain | minkowski | tropical
        #[arg(long, default_value = "chain")]
        method: String,
    },
    /// Emit the dual graph of an induced subdivision as DOT
    Dualgraph {
        #[command(flatten)]
        input: ArrangementArgs,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct GroundArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Cyclic order, e.g. 1,3,2,4 (default: identity)
    #[arg(long)]
    sigma: Option<String>,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct CollectionArgs {
    #[command(flatten)]
    ground: GroundArgs,
    /// Subsets such as 13,24 or [1,10],[2,11]
    #[arg(long)]
    sets: Option<String>,
    /// Collection JSON file, or - for stdin
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
struct ArrangementArgs {
    #[command(flatten)]
    collection: CollectionArgs,
    /// Explicit blade in OSP notation (repeatable)
    #[arg(long)]
    osp: Vec<String>,
}

/// Collection JSON: `{"n": 7, "k": 3, "sigma": [...], "vertices": [[1,2,4], ...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CollectionJson {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<u32>>,
    pub vertices: Vec<Vec<u32>>,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Parse(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn parse_err(msg: impl Into<String>) -> Failure {
    Failure::Parse(msg.into())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let (target, result) = dispatch(cli.command);
    match result {
        Ok(text) => {
            let written = match target {
                Some(path) => fs::write(&path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dispatch(command: Command) -> (Option<PathBuf>, CliResult<String>) {
    match command {
        Command::CheckWs { input, explain } => (input.ground.out.clone(), check_ws(&input, explain)),
        Command::Blade { ground, vertex } => (ground.out.clone(), blade(&ground, &vertex)),
        Command::Subdivide { input } => (input.collection.ground.out.clone(), subdivide(&input)),
        Command::Matroidal { input } => (input.collection.ground.out.clone(), matroidal(&input)),
        Command::Boundary {
            input,
            osp,
            j,
            keep_frozen,
        } => (input.ground.out.clone(), boundary(&input, osp.as_deref(), j, keep_frozen)),
        Command::Enumerate {
            ground,
            filter,
            threads,
            time_budget_secs,
            materialize,
        } => (
            ground.out.clone(),
            enumerate(&ground, &filter, threads, time_budget_secs, materialize),
        ),
        Command::Trees { input, j } => (input.ground.out.clone(), trees(&input, j)),
        Command::Eval {
            ground,
            osp,
            vertex,
            point,
            method,
        } => (
            ground.out.clone(),
            eval(&ground, osp.as_deref(), vertex.as_deref(), &point, &method),
        ),
        Command::Dualgraph { input } => (input.collection.ground.out.clone(), dualgraph(&input)),
    }
}

fn parse_labels(text: &str) -> CliResult<Vec<u32>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| parse_err(format!("bad label {s:?}")))
        })
        .collect()
}

/// Splits `13,24,[1,10]` into `[[1,3],[2,4],[1,10]]`.
fn parse_sets(text: &str) -> CliResult<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(inner) = rest.strip_prefix('[') {
            let close = inner
                .find(']')
                .ok_or_else(|| parse_err(format!("unbalanced '[' in {text:?}")))?;
            out.push(parse_labels(&inner[..close])?);
            rest = inner[close + 1..].trim_start();
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            let token = rest[..end].trim();
            let labels = token
                .chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d > 0 => Ok(d),
                    _ => Err(parse_err(format!("bad subset {token:?}"))),
                })
                .collect::<CliResult<Vec<u32>>>()?;
            if labels.is_empty() {
                return Err(parse_err(format!("empty subset in {text:?}")));
            }
            out.push(labels);
            rest = &rest[end..];
        }
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

fn ground_from(n: usize, sigma: Option<Vec<u32>>) -> CliResult<GroundSet> {
    match sigma {
        None => Ok(GroundSet::new(n)?),
        Some(order) => {
            if order.len() != n {
                return Err(Failure::Domain(format!(
                    "sigma has {} labels but n = {n}",
                    order.len()
                )));
            }
            Ok(GroundSet::from_order(order)?)
        }
    }
}

fn check_k(k: usize, n: usize) -> CliResult<()> {
    if k == 0 || k >= n {
        return Err(Failure::Domain(format!("need 1 <= k <= n-1, got k = {k}, n = {n}")));
    }
    Ok(())
}

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Domain(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
    }
}

/// Ground set, k and members from `--in` or from `--n/--k/--sigma/--sets`.
fn load_collection(args: &CollectionArgs) -> CliResult<(GroundSet, usize, Vec<KSubset>)> {
    let (n, k, sigma, sets) = match &args.input {
        Some(path) => {
            let text = read_input(path)?;
            let c: CollectionJson =
                serde_json::from_str(&text).map_err(|e| parse_err(format!("collection JSON: {e}")))?;
            for (flag, given, found) in [("n", args.ground.n, c.n), ("k", args.ground.k, c.k)] {
                if given.is_some_and(|g| g != found) {
                    return Err(Failure::Domain(format!("--{flag} disagrees with the input file")));
                }
            }
            (c.n, c.k, c.sigma, c.vertices)
        }
        None => {
            let n = args.ground.n.ok_or_else(|| parse_err("--n is required"))?;
            let sets = match &args.sets {
                Some(s) => parse_sets(s)?,
                None => Vec::new(),
            };
            let k = match (args.ground.k, sets.first()) {
                (Some(k), _) => k,
                (None, Some(first)) => first.len(),
                (None, None) => return Err(parse_err("--k is required")),
            };
            let sigma = args.ground.sigma.as_deref().map(parse_labels).transpose()?;
            (n, k, sigma, sets)
        }
    };
    let ground = ground_from(n, sigma)?;
    check_k(k, n)?;
    let members = sets
        .iter()
        .map(|s| {
            let v = ground.subset(s)?;
            if v.len() != k {
                return Err(Error::CardinalityMismatch(k, v.len()));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok((ground, k, members))
}

fn load_arrangement(args: &ArrangementArgs) -> CliResult<BladeArrangement> {
    let (ground, k, vertices) = load_collection(&args.collection)?;
    let mut arr = BladeArrangement::from_vertices(ground.clone(), k, &vertices)?;
    for text in &args.osp {
        let osp = DecoratedOsp::parse_with_ground(text, &ground)?;
        arr.push_blade(Blade::new(osp))?;
    }
    Ok(arr)
}

fn members_json(vs: &[KSubset]) -> Value {
    Value::from(vs.iter().map(|v| v.members()).collect::<Vec<_>>())
}

fn cell_json(cell: &Cell) -> Value {
    let inequalities: Vec<Value> = cell
        .inequalities()
        .iter()
        .map(|q| json!({ "subset": mask_labels(q.subset).collect::<Vec<_>>(), "bound": q.bound }))
        .collect();
    json!({
        "vertices": members_json(cell.vertices()),
        "dim": cell.dim(),
        "inequalities": inequalities,
        "matroid": cell.is_matroid(),
        "positroid": cell.is_positroid(),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn check_ws(args: &CollectionArgs, explain: bool) -> CliResult<String> {
    let (ground, k, members) = load_collection(args)?;
    let c = WSCollection::new(ground, k, members)?;
    let violation = c.first_violation();
    if explain {
        let pair = violation.map(|(a, b)| json!([a.members(), b.members()]));
        Ok(pretty(&json!({
            "weakly_separated": violation.is_none(),
            "violation": pair,
        })))
    } else {
        Ok(format!("{}\n", violation.is_none()))
    }
}

fn blade(args: &GroundArgs, vertex: &str) -> CliResult<String> {
    let n = args.n.ok_or_else(|| parse_err("--n is required"))?;
    let labels = parse_labels(vertex)?;
    if let Some(k) = args.k {
        check_k(k, n)?;
        if k != labels.len() {
            return Err(Error::CardinalityMismatch(k, labels.len()).into());
        }
    }
    let sigma = args.sigma.as_deref().map(parse_labels).transpose()?;
    let ground = ground_from(n, sigma)?;
    let v = ground.subset(&labels)?;
    Ok(format!("{}\n", blade_from_vertex(&ground, v)?))
}

fn subdivide(args: &ArrangementArgs) -> CliResult<String> {
    let arr = load_arrangement(args)?;
    let sub = induce_subdivision(&arr)?;
    let cells: Vec<Value> = sub.cells().iter().map(cell_json).collect();
    Ok(pretty(&json!({
        "n": arr.ground().n(),
        "k": arr.k(),
        "cell_count": sub.len(),
        "cells": cells,
    })))
}

fn matroidal(args: &ArrangementArgs) -> CliResult<String> {
    let arr = load_arrangement(args)?;
    let sub = induce_subdivision(&arr)?;
    let witness = sub.cells().iter().find(|c| !c.is_matroid());
    let violation = witness.and_then(|c| exchange_violation(c.vertices())).map(|(b1, b2, a)| {
        json!({ "basis1": b1.members(), "basis2": b2.members(), "element": a })
    });
    Ok(pretty(&json!({
        "matroidal": witness.is_none(),
        "cell_count": sub.len(),
        "witness": witness.map(cell_json),
        "exchange_violation": violation,
    })))
}

fn boundary(args: &CollectionArgs, osp: Option<&str>, j: u32, keep_frozen: bool) -> CliResult<String> {
    if let Some(text) = osp {
        let parsed = match args.ground.n {
            Some(n) => {
                let sigma = args.ground.sigma.as_deref().map(parse_labels).transpose()?;
                DecoratedOsp::parse_with_ground(text, &ground_from(n, sigma)?)?
            }
            None => DecoratedOsp::parse(text)?,
        };
        let canonical = Blade::new(parsed);
        let r = restrict_osp(canonical.osp(), j)?;
        return Ok(pretty(&json!({
            "j": j,
            "blade": r.blade.to_string(),
            "trivial": r.trivial,
            "ground": r.blade.ground().order(),
        })));
    }
    let (ground, k, members) = load_collection(args)?;
    let c = WSCollection::new(ground, k, members)?;
    let r = restrict_collection(&c, j, !keep_frozen)?;
    let out = CollectionJson {
        n: r.ground().n(),
        k: r.k(),
        sigma: Some(r.ground().order().to_vec()),
        vertices: r.subsets().iter().map(|v| v.members()).collect(),
    };
    Ok(pretty(&serde_json::to_value(out).expect("collections serialize")))
}

fn enumerate(
    args: &GroundArgs,
    filter: &str,
    threads: usize,
    budget: Option<f64>,
    materialize: bool,
) -> CliResult<String> {
    let n = args.n.ok_or_else(|| parse_err("--n is required"))?;
    let k = args.k.ok_or_else(|| parse_err("--k is required"))?;
    let filter: NodeFilter = filter.parse()?;
    let sigma = args.sigma.as_deref().map(parse_labels).transpose()?;
    let ground = ground_from(n, sigma)?;
    let time_budget = match budget {
        Some(secs) if secs.is_finite() && secs >= 0.0 => Some(Duration::from_secs_f64(secs)),
        Some(secs) => return Err(Failure::Domain(format!("bad time budget {secs}"))),
        None => None,
    };
    let graph = build_graph_on(&ground, k, filter)?;
    let opts = EnumerationOptions {
        threads,
        time_budget,
        materialize,
        ..Default::default()
    };
    let r = count_maximal_collections(&graph, &opts)?;
    let mut v = json!({
        "k": k,
        "n": n,
        "filter": filter.to_string(),
        "maximal_count": r.count,
        "purity": r.is_pure(),
        "elapsed_ms": r.elapsed.as_millis() as u64,
    });
    if let Some(all) = &r.collections {
        v["collections"] = Value::from(all.iter().map(|c| members_json(c)).collect::<Vec<_>>());
    }
    Ok(pretty(&v))
}

fn trees(args: &CollectionArgs, j: Option<u32>) -> CliResult<String> {
    let (ground, k, members) = load_collection(args)?;
    if let Some(j) = j {
        if !ground.contains(j) {
            return Err(Error::LabelOutOfRange(j).into());
        }
    }
    let c = WSCollection::new(ground, k, members)?;
    let facets = tree_arrangement(&c)?;
    Ok(facets
        .iter()
        .filter(|f| j.map_or(true, |j| f.j == j))
        .map(|f| f.to_dot())
        .collect())
}

fn eval(args: &GroundArgs, osp: Option<&str>, vertex: Option<&str>, point: &str, method: &str) -> CliResult<String> {
    let method: MembershipMethod = method.parse()?;
    let x = RationalPoint::parse(point)?;
    let sigma = args.ground_sigma()?;
    let member = match (osp, vertex) {
        (Some(text), _) => {
            let parsed = match args.n {
                Some(n) => DecoratedOsp::parse_with_ground(text, &ground_from(n, sigma)?)?,
                None => DecoratedOsp::parse(text)?,
            };
            blade_membership(&Blade::new(parsed), &x, method)?
        }
        (None, Some(v)) => {
            let n = args.n.ok_or_else(|| parse_err("--n is required with --vertex"))?;
            if method == MembershipMethod::Tropical {
                return Err(Error::TropicalRequiresUndecorated.into());
            }
            let ground = ground_from(n, sigma)?;
            let v = ground.subset(&parse_labels(v)?)?;
            translated_blade_membership(&ground, v, &x)?
        }
        (None, None) => return Err(parse_err("one of --osp or --vertex is required")),
    };
    Ok(format!("{member}\n"))
}

impl GroundArgs {
    fn ground_sigma(&self) -> CliResult<Option<Vec<u32>>> {
        self.sigma.as_deref().map(parse_labels).transpose()
    }
}

fn dualgraph(args: &ArrangementArgs) -> CliResult<String> {
    let arr = load_arrangement(args)?;
    Ok(induce_subdivision(&arr)?.dual_graph()?.to_dot())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["blades"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn set_lists() {
        assert_eq!(parse_sets("13,24").unwrap(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(
            parse_sets("[1,10],[2, 11], 34").unwrap(),
            vec![vec![1, 10], vec![2, 11], vec![3, 4]]
        );
        assert!(parse_sets("[1,2").is_err());
        assert!(parse_sets("1a").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["blade", "--n", "8", "--k", "4", "--vertex", "1,2,4,7"]).0, 0);
        assert_eq!(call(&["blade", "--n", "8", "--vertex", "1,2,x"]).0, 2);
        assert_eq!(call(&["blade", "--n", "8", "--vertex", "1,2,9"]).0, 1);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
