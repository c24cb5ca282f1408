use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use linkless::graph::{builtin, canonical_form, parse_graph, MultiGraph, VertexId, MAX_CANONICAL_VERTICES};
use linkless::minor::{classify, search_minor, verify_minor_model, ClassifierOptions, MinorError, DEFAULT_BUDGET};
use linkless::moves::{delta_y, petersen_family, y_delta, TriangleSelector};
use linkless::spatial::{
    conway_gordon_experiment, edge_swap_check, omega_graph_with, random_embedding, RationalPoint,
    SpatialEmbedding, SpatialError,
};
use serde_json::{json, Value};

use crate::acceptance::{run_acceptance, AcceptanceConfig};
use crate::{CliError, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "linkless",
    version,
    about = "Intrinsic linking of graphs: Petersen-family minors, Delta-Y moves and mod-2 linking of PL embeddings",
    long_about = "Intrinsic linking of graphs: Petersen-family minors, Delta-Y moves and mod-2 linking of PL embeddings.\n\n\
        Graph arguments are builtin names (K6, K3,3,1, petersen, C5, P4, grid4x4, ...) or paths to edge-list files.\n\
        Reports are JSON on stdout; summaries and timing go to stderr.\n\
        Exit codes: 0 success, 1 a check failed, 2 usage or input error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide intrinsic linkedness by searching for a Petersen-family minor
    Classify {
        /// Builtin name or edge-list file
        graph: String,
        /// Search nodes allowed per family member
        #[arg(long, env = "LINKLESS_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Search even when the graph has fewer than 15 edges or 6 vertices
        #[arg(long)]
        no_prefilter: bool,
    },
    /// Search for H as a minor of G and print the branch sets
    Minor {
        /// Host graph
        g: String,
        /// Target graph (must be connected)
        h: String,
        /// Search nodes allowed before answering "unknown"
        #[arg(long, env = "LINKLESS_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// The Petersen family
    Petersen {
        #[command(subcommand)]
        action: PetersenAction,
    },
    /// Apply a Delta-Y move to a triangle, or a Y-Delta move to a degree-3 vertex
    Deltay {
        /// Builtin name or edge-list file
        graph: String,
        /// Triangle to replace, as `a,b,c`
        #[arg(long, value_parser = parse_triangle, conflicts_with = "vertex", required_unless_present = "vertex")]
        triangle: Option<[VertexId; 3]>,
        /// Degree-3 vertex to replace by a triangle
        #[arg(long, allow_hyphen_values = true)]
        vertex: Option<VertexId>,
    },
    /// Write a random straight-line embedding with exact rational coordinates
    Embed {
        /// Builtin name or edge-list file (simple graphs only)
        graph: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file for the embedding document
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Compute omega(G), the sum of lk mod 2 over disjoint circuit pairs, of an embedding
    Omega {
        /// Embedding JSON document
        file: PathBuf,
        /// First projection direction as `x,y,z` (integers or p/q)
        #[arg(long, allow_hyphen_values = true, value_parser = parse_direction)]
        direction: Option<RationalPoint>,
    },
    /// Reroute random edges of a random embedding and check that omega is unchanged
    RerouteCheck {
        /// K6 or K3,3,1
        graph: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Tabulate omega over random embeddings
    Experiment {
        /// `k6`, `k331`, a builtin name or an edge-list file
        target: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the acceptance suite and report PASS/FAIL per criterion
    Acceptance {
        /// Scale every randomized criterion down (or up) to this many trials
        #[arg(long)]
        trials: Option<usize>,
        /// Extra embedding to include in the rerouting and projection checks
        #[arg(long)]
        embedding: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PetersenAction {
    /// Print the seven members as edge lists with a JSON manifest
    List {
        /// Also write `<name>.txt` edge lists and `manifest.json` here
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// A finished command: the JSON report, whether its checks passed and
/// human-readable lines for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
    pub summary: Vec<String>,
}

impl Outcome {
    fn new(command: &str, argv: &[String], body: Value, passed: bool, summary: Vec<String>) -> Outcome {
        let mut report = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "argv": argv,
        });
        if let (Value::Object(r), Value::Object(b)) = (&mut report, body) {
            r.extend(b);
        }
        Outcome { report, passed, summary }
    }
}

fn parse_triangle(s: &str) -> Result<[VertexId; 3], String> {
    let parts: Vec<VertexId> = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("`{t}` is not a vertex id")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| "expected three vertex ids `a,b,c`".to_string())
}

fn parse_direction(s: &str) -> Result<RationalPoint, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let p = RationalPoint::parse(&parts)?;
    if p.is_zero() {
        return Err("direction must be nonzero".into());
    }
    Ok(p)
}

/// A builtin name, or the contents of the file at that path.
pub(crate) fn load_graph(spec: &str) -> Result<MultiGraph, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        return parse_graph(&text).map_err(|e| CliError::Input(format!("{spec}: {e}")));
    }
    Ok(builtin(spec)?)
}

pub(crate) fn load_embedding(path: &Path) -> Result<SpatialEmbedding, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    SpatialEmbedding::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn label(g: &MultiGraph) -> String {
    match g.name() {
        Some(n) => n.to_string(),
        None => format!("graph with {} vertices and {} edges", g.vertex_count(), g.edge_count()),
    }
}

fn canonical_hex(g: &MultiGraph) -> Option<String> {
    (g.vertex_count() <= MAX_CANONICAL_VERTICES)
        .then(|| canonical_form(g).ok().map(|c| c.to_hex()))
        .flatten()
}

pub fn run(cli: Cli, argv: Vec<String>) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Classify { graph, budget, no_prefilter } => {
            let g = load_graph(&graph)?;
            let options = ClassifierOptions { budget, prefilter: !no_prefilter };
            let v = classify(&g, &options)?;
            let mut passed = true;
            if let Some(w) = &v.witness {
                let member = &petersen_family().get(&w.member).expect("witness names a member").graph;
                passed = verify_minor_model(&g.simplified(), member, &w.model).is_valid();
            }
            let summary = vec![format!(
                "{}: {}{} after {} search nodes",
                label(&g),
                json!(v.verdict).as_str().unwrap_or_default(),
                v.witness.as_ref().map_or(String::new(), |w| format!(" ({} minor)", w.member)),
                v.stats.nodes
            )];
            let body = json!({
                "graph": label(&g),
                "budget": budget,
                "verdict": v.verdict,
                "witness": v.witness,
                "stats": v.stats,
            });
            Ok(Outcome::new("classify", &argv, body, passed, summary))
        }
        Command::Minor { g, h, budget } => {
            let (g, h) = (load_graph(&g)?, load_graph(&h)?);
            let search = search_minor(&g, &h, budget);
            let (result, model) = match search.outcome {
                Ok(Some(m)) => ("yes", Some(m)),
                Ok(None) => ("no", None),
                Err(MinorError::BudgetExhausted(_)) => ("unknown", None),
                Err(e) => return Err(e.into()),
            };
            let valid = model.as_ref().map(|m| verify_minor_model(&g, &h, m).is_valid());
            let summary = vec![format!("{} minor of {}: {result} ({} nodes)", label(&h), label(&g), search.nodes)];
            let body = json!({
                "g": label(&g),
                "h": label(&h),
                "budget": budget,
                "result": result,
                "model": model,
                "model_valid": valid,
                "nodes": search.nodes,
            });
            Ok(Outcome::new("minor", &argv, body, valid != Some(false), summary))
        }
        Command::Petersen { action: PetersenAction::List { out_dir } } => petersen_list(&argv, out_dir),
        Command::Deltay { graph, triangle, vertex } => {
            let g = load_graph(&graph)?;
            let (kind, h, new_vertex) = match (triangle, vertex) {
                (Some([a, b, c]), _) => {
                    let h = delta_y(&g, TriangleSelector::new(a, b, c)?)?;
                    let y = h.max_vertex_id();
                    ("delta-y", h, y)
                }
                (None, Some(v)) => ("y-delta", y_delta(&g, v)?, None),
                (None, None) => return Err(CliError::Input("give --triangle or --vertex".into())),
            };
            let member = petersen_family().member_of(&h).map(|m| m.name.clone());
            let summary = vec![format!(
                "{kind} on {}: {} vertices, {} edges{}",
                label(&g),
                h.vertex_count(),
                h.edge_count(),
                member.as_ref().map_or(String::new(), |m| format!(", Petersen family member {m}"))
            )];
            let body = json!({
                "input": label(&g),
                "move": kind,
                "triangle": triangle,
                "vertex": vertex,
                "new_vertex": new_vertex,
                "graph": h.to_edge_list(),
                "vertices": h.vertex_count(),
                "edges": h.edge_count(),
                "canonical": canonical_hex(&h),
                "family_member": member,
            });
            Ok(Outcome::new("deltay", &argv, body, true, summary))
        }
        Command::Embed { graph, seed, output } => {
            let g = load_graph(&graph)?;
            let e = random_embedding(&g, seed)?;
            fs::write(&output, e.to_json() + "\n")?;
            let summary = vec![format!("wrote {} ({} segments)", output.display(), e.segment_count())];
            let body = json!({
                "graph": label(&g),
                "seed": seed,
                "output": output,
                "vertices": g.vertex_count(),
                "segments": e.segment_count(),
            });
            Ok(Outcome::new("embed", &argv, body, true, summary))
        }
        Command::Omega { file, direction } => {
            let e = load_embedding(&file)?;
            let report = omega_graph_with(&e, direction.as_ref()).map_err(|err| match err {
                SpatialError::NonRegular(m) => CliError::Input(format!("direction is not regular: {m}")),
                other => other.into(),
            })?;
            let phrase = if report.total == 1 { "linked" } else { "ω=0 (inconclusive)" };
            let summary = vec![format!(
                "{}: {phrase}; {} of {} disjoint circuit pairs have odd linking number",
                label(e.graph()),
                report.odd_pairs(),
                report.pairs.len()
            )];
            let body = json!({
                "graph": label(e.graph()),
                "omega": report.total,
                "embedding": phrase,
                "odd_pairs": report.odd_pairs(),
                "directions": report.directions,
                "pairs": report.pairs,
            });
            Ok(Outcome::new("omega", &argv, body, true, summary))
        }
        Command::RerouteCheck { graph, trials, seed } => {
            let g = load_graph(&graph)?;
            let e = random_embedding(&g, seed)?;
            let r = edge_swap_check(&e, trials, seed)?;
            let summary = vec![format!(
                "{}: {}/{} reroutes preserved omega = {}, {}/{} parity cross-checks passed, {} degenerate proposals redrawn",
                r.graph, r.preserved, r.trials, r.omega, r.parity_passed, r.parity_checks, r.retries
            )];
            let passed = r.passed();
            let body = json!({ "report": r, "pass": passed });
            Ok(Outcome::new("reroute-check", &argv, body, passed, summary))
        }
        Command::Experiment { target, trials, seed } => {
            let g = match target.to_ascii_lowercase().as_str() {
                "k331" => builtin("K3,3,1")?,
                _ => load_graph(&target)?,
            };
            let r = conway_gordon_experiment(&g, trials, seed)?;
            // omega is 1 on every embedding only for these two
            let expected = petersen_family()
                .member_of(&g)
                .filter(|m| m.name == "K6" || m.name == "K3,3,1")
                .map(|_| 1u8);
            let passed = expected.is_none_or(|w| r.count(w) == trials);
            let summary = vec![format!(
                "{}: omega = 1 in {}/{} trials, omega = 0 in {}",
                r.graph,
                r.count(1),
                trials,
                r.count(0)
            )];
            let body = json!({ "report": r, "expected_omega": expected, "pass": passed });
            Ok(Outcome::new("experiment", &argv, body, passed, summary))
        }
        Command::Acceptance { trials, embedding } => {
            let embedding = embedding.as_deref().map(load_embedding).transpose()?;
            let report = run_acceptance(&AcceptanceConfig { trials, embedding });
            let summary = report.criteria.iter().map(|c| c.line()).collect();
            let passed = report.pass;
            let body = serde_json::to_value(&report).expect("report serialises");
            Ok(Outcome::new("acceptance", &argv, body, passed, summary))
        }
    }
}

fn petersen_list(argv: &[String], out_dir: Option<PathBuf>) -> Result<Outcome, CliError> {
    let family = petersen_family();
    if let Some(dir) = &out_dir {
        fs::create_dir_all(dir)?;
    }
    let mut members = Vec::new();
    for m in family.members() {
        let file = match &out_dir {
            Some(dir) => {
                let path = dir.join(format!("{}.txt", m.name));
                fs::write(&path, m.graph.to_edge_list())?;
                Some(path)
            }
            None => None,
        };
        members.push(json!({
            "name": m.name,
            "vertices": m.graph.vertex_count(),
            "edges": m.graph.edge_count(),
            "canonical": m.canonical.to_hex(),
            "derivation": m.derivation,
            "edge_list": m.graph.to_edge_list(),
            "file": file,
        }));
    }
    let violations: Vec<Value> = family
        .closure_violations()
        .into_iter()
        .map(|(name, t)| json!({ "member": name, "triangle": t }))
        .collect();
    let passed = family.len() == 7 && violations.is_empty();
    let body = json!({ "count": family.len(), "members": members, "closure_violations": violations });
    let outcome = Outcome::new("petersen list", argv, body, passed, vec![format!(
        "{} members: {}",
        family.len(),
        family.members().iter().map(|m| m.name.as_str()).collect::<Vec<_>>().join(", ")
    )]);
    if let Some(dir) = &out_dir {
        let manifest = serde_json::to_string_pretty(&outcome.report).expect("manifest serialises");
        fs::write(dir.join("manifest.json"), manifest + "\n")?;
    }
    Ok(outcome)
}
