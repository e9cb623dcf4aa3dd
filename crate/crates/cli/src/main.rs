//! `planegroups` command-line front end. Every run emits one JSON report.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use planegroups::fpalgo::{abelianization, coset_enumerate, reidemeister_schreier};
use planegroups::planes::{is_perfect_difference_set, singer_difference_set, PlaneIncidence};
use planegroups::pquotient::{fingerprint, p_quotient, PqConfig};
use planegroups::presentations::polyhedral::{order4, triangle_q2};
use planegroups::presentations::{
    howie_presentation, load_presentation_file, parse_word, star_graph, to_text, Catalog, Convention, Entry, Loaded, Presentation,
    SubgroupSpec,
};
use planegroups::ramification::{
    paper_tuple_words, paper_tuples, search_structures, system_type, verify_structure, DenseGroup, SearchConfig, Strategy,
};
use planegroups::repcheck::{verify_algebra, verify_paper_matrices, RepMatrices};
use planegroups::scenarios::{
    render_pc, run_scenario, star_vs_plane, subgroup_quotient, thm_main, z7_squared, ScenarioConfig, ScenarioError, SubgroupQuotient,
    DENSE_CAP,
};
use planegroups::surfaces::surface_invariants;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug, Serialize)]
#[command(name = "planegroups", version, about = "Groups from projective planes, p-quotients and ramification structures")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    /// Directory with extra `presentations/*.txt` and `matrices/appendix.json`
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Conjugation convention for `g^h`
    #[arg(long, global = true, value_enum, default_value_t = Conv::Right)]
    convention: Conv,
    /// Write the report here instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Largest group order handled by dense Σ-set computations
    #[arg(long, global = true, default_value_t = DENSE_CAP)]
    dense_cap: u64,
    /// Include wall-clock timings (reports are then no longer reproducible)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
enum Conv {
    /// g^h = h^-1 g h
    Right,
    /// g^h = h g h^-1
    Left,
}

impl From<Conv> for Convention {
    fn from(c: Conv) -> Self {
        match c {
            Conv::Right => Convention::Right,
            Conv::Left => Convention::Left,
        }
    }
}

#[derive(Subcommand, Debug, Serialize)]
enum Command {
    /// Difference sets, Singer planes and star-graph isomorphism
    #[command(subcommand)]
    Plane(PlaneCmd),
    /// Catalog entries, presentation files and presentation machines
    #[command(subcommand)]
    Present(PresentCmd),
    /// Coset enumeration, Reidemeister-Schreier and abelianization
    #[command(subcommand)]
    Subgroup(SubgroupCmd),
    /// Maximal p-quotient of bounded class
    Pquotient(PqArgs),
    /// Spherical systems and ramification structures
    #[command(subcommand)]
    Ramify(RamifyCmd),
    /// Invariants of the surface attached to two types
    Surface(SurfaceArgs),
    /// Check the bundled appendix matrices
    Repcheck {
        /// Matrix file to check instead of the bundled one
        #[arg(long)]
        matrices: Option<PathBuf>,
    },
    /// Run a named end-to-end scenario
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(planegroups::scenarios::SCENARIOS))]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug, Serialize)]
enum PlaneCmd {
    /// Test whether residues form a perfect difference set
    Check {
        #[arg(long)]
        modulus: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        residues: Vec<u32>,
    },
    /// Singer difference set and plane of order q
    Singer {
        #[arg(long)]
        q: u32,
    },
    /// Star graph of a presentation against the Singer plane of order q
    StarIso {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: u32,
    },
}

#[derive(Subcommand, Debug, Serialize)]
enum PresentCmd {
    /// Print a presentation in the text format
    Show {
        #[command(flatten)]
        source: Source,
    },
    /// List catalog entries
    Catalog,
    /// Presentation from a perfect difference set
    Build {
        #[arg(long)]
        q: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        residues: Vec<u32>,
        /// Keep cyclic duplicates of relators
        #[arg(long)]
        no_dedup: bool,
    },
    /// Star graph statistics
    Star {
        #[command(flatten)]
        source: Source,
    },
    /// Validate a bundled polyhedral presentation
    Polyhedral {
        #[arg(long, value_enum, default_value_t = Polyhedral::Order4)]
        which: Polyhedral,
        /// Use the data exactly as printed, without corrections
        #[arg(long)]
        printed: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
enum Polyhedral {
    TriangleQ2,
    Order4,
}

#[derive(Subcommand, Debug, Serialize)]
enum SubgroupCmd {
    /// Index of a subgroup by coset enumeration
    Index(SubArgs),
    /// Reidemeister-Schreier presentation of a subgroup
    Rewrite(SubArgs),
    /// Abelian invariants of a group or subgroup
    Abelianize(SubArgs),
}

#[derive(Args, Debug, Serialize)]
struct SubArgs {
    #[command(flatten)]
    source: Source,
    /// Subgroup generating words when the source is a plain presentation
    #[arg(long, value_delimiter = ',')]
    words: Vec<String>,
    #[arg(long, default_value_t = planegroups::fpalgo::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
}

/// A catalog entry or a presentation file.
#[derive(Args, Debug, Serialize, Clone)]
struct Source {
    /// Catalog name (G0, G, GK, H, ..., or Z7xZ7)
    #[arg(long, conflicts_with = "file")]
    group: Option<String>,
    /// Presentation file in the text format
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct PqArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, short)]
    prime: u32,
    #[arg(long, short = 'k')]
    class: u32,
    /// Include the fingerprint of the quotient
    #[arg(long)]
    fingerprint: bool,
    /// Run all consistency tests during lifting
    #[arg(long)]
    full_checks: bool,
    #[arg(long, default_value_t = planegroups::fpalgo::DEFAULT_MAX_COSETS)]
    max_cosets: usize,
}

#[derive(Subcommand, Debug, Serialize)]
enum RamifyCmd {
    /// Words of a tuple family
    PaperTuples {
        #[arg(long)]
        family: String,
    },
    /// Verify a tuple family in a p-quotient
    Verify(VerifyArgs),
    /// Search for ramification structures of given types
    Search(SearchArgs),
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    family: String,
    /// Defaults: H with p = 3 for thm-main, Z7xZ7 with p = 7 otherwise
    #[command(flatten)]
    source: Source,
    #[arg(long, short)]
    prime: Option<u32>,
    /// Defaults: 2 for thm-main, 1 otherwise
    #[arg(long, short = 'k')]
    class: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
enum StrategyArg {
    Exhaustive,
    Random,
}

#[derive(Args, Debug, Serialize)]
struct SearchArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, short)]
    prime: u32,
    #[arg(long, short = 'k', default_value_t = 1)]
    class: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    type_a: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    type_b: Vec<u64>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
    strategy: StrategyArg,
    /// Samples per type in random mode
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
    #[arg(long, default_value_t = 16)]
    max_results: usize,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct SurfaceArgs {
    #[arg(long)]
    order: u64,
    #[arg(long, value_delimiter = ',', required = true)]
    type_a: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    type_b: Vec<u64>,
}


#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] ScenarioError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

macro_rules! core_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        })*
    };
}

core_error!(
    planegroups::presentations::PresentationError,
    planegroups::fpalgo::FpError,
    planegroups::pquotient::PQuotientError,
    planegroups::ramification::RamificationError,
    planegroups::surfaces::SurfaceError,
    planegroups::repcheck::RepcheckError,
    planegroups::planes::PlaneError
);

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => e.exit_code() as u8,
            CliError::Usage(_) | CliError::Io(_) => 1,
        }
    }
}

type Res<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(CliError::Usage(msg.into()))
}

/// Result of a command: JSON payload, verdict and input provenance.
struct Outcome {
    result: Value,
    ok: bool,
    /// Exit code when `ok` is false.
    failure_code: u8,
    provenance: Value,
}

fn outcome(result: impl Serialize, ok: bool, provenance: Value) -> Res<Outcome> {
    let result = serde_json::to_value(result).expect("results serialize");
    Ok(Outcome { result, ok, failure_code: 2, provenance })
}

fn bundled() -> Value {
    json!("bundled")
}

enum Resolved {
    Presentation(Presentation),
    Subgroup(SubgroupSpec),
}

struct Ctx {
    catalog: Catalog,
    conv: Convention,
    dense_cap: u64,
    data_dir: Option<PathBuf>,
}

impl Ctx {
    fn resolve(&self, s: &Source) -> Res<(Resolved, Value)> {
        match (&s.group, &s.file) {
            (Some(name), None) => {
                if name == "Z7xZ7" {
                    return Ok((Resolved::Presentation(z7_squared()), json!({ "builtin": name })));
                }
                let entry = self.catalog.get(name)?;
                let source = entry.presentation().provenance.source.clone();
                let r = match entry {
                    Entry::Presentation(p) => Resolved::Presentation(p),
                    Entry::Subgroup(s) => Resolved::Subgroup(s),
                };
                Ok((r, json!({ "catalog": name, "source": source })))
            }
            (None, Some(path)) => {
                let r = match load_presentation_file(path, self.conv)? {
                    Loaded::Presentation(p) => Resolved::Presentation(p),
                    Loaded::Subgroup(s) => Resolved::Subgroup(s),
                };
                Ok((r, json!({ "file": path.display().to_string() })))
            }
            _ => usage("give exactly one of --group or --file"),
        }
    }

    fn presentation(&self, s: &Source) -> Res<(Presentation, Value)> {
        match self.resolve(s)? {
            (Resolved::Presentation(p), v) => Ok((p, v)),
            (Resolved::Subgroup(_), _) => usage("expected a presentation, got a subgroup"),
        }
    }

    fn subgroup(&self, a: &SubArgs) -> Res<(SubgroupSpec, Value)> {
        let (r, prov) = self.resolve(&a.source)?;
        let parent_or = |s: SubgroupSpec| if a.words.is_empty() { Ok(s) } else { self.words_subgroup(s.parent, &a.words) };
        let sub = match r {
            Resolved::Subgroup(s) => parent_or(s)?,
            Resolved::Presentation(p) => parent_or(SubgroupSpec::whole(p))?,
        };
        Ok((sub, prov))
    }

    fn words_subgroup(&self, p: Presentation, words: &[String]) -> Res<SubgroupSpec> {
        let ws = words.iter().map(|w| parse_word(w, &p.names, self.conv)).collect::<Result<Vec<_>, _>>()?;
        Ok(SubgroupSpec::new("K", p, ws)?)
    }

    /// p-quotient of a source with the images of its generators, or of
    /// the subgroup's generating words.
    fn quotient(&self, s: &Source, p: u32, k: u32, cfg: &PqConfig, max_cosets: usize) -> Res<(SubgroupQuotient, Value)> {
        let (r, prov) = self.resolve(s)?;
        let q = match r {
            Resolved::Subgroup(sub) => subgroup_quotient(&sub, p, k, cfg, max_cosets)?,
            Resolved::Presentation(pres) => {
                let quotient = p_quotient(&pres, p, k, cfg)?;
                let images = quotient.epi.images.clone();
                SubgroupQuotient { quotient, index: 1, images }
            }
        };
        Ok((q, prov))
    }
}

fn plane(ctx: &Ctx, cmd: &PlaneCmd) -> Res<Outcome> {
    match cmd {
        PlaneCmd::Check { modulus, residues } => {
            let c = is_perfect_difference_set(residues, *modulus);
            let ok = c.perfect;
            outcome(c, ok, json!({ "residues": residues }))
        }
        PlaneCmd::Singer { q } => {
            let d = singer_difference_set(*q)?;
            let plane = PlaneIncidence::from_difference_set(&d)?;
            let violations = plane.axiom_violations();
            let g = plane.incidence_graph();
            let ok = violations.is_empty() && is_perfect_difference_set(d.residues(), d.modulus()).perfect;
            let r = json!({
                "q": q,
                "modulus": d.modulus(),
                "residues": d.residues(),
                "points": plane.points,
                "lines": plane.lines,
                "axiom_violations": violations,
                "incidence_graph": { "vertices": g.order(), "edges": g.size(), "girth": g.girth() },
            });
            outcome(r, ok, json!({ "singer": q }))
        }
        PlaneCmd::StarIso { source, q } => {
            let (p, prov) = ctx.presentation(source)?;
            let name = source.group.clone().unwrap_or_else(|| "file".into());
            let r = star_vs_plane(&name, &p, *q)?;
            let ok = r.isomorphic && r.witness_verified;
            outcome(r, ok, prov)
        }
    }
}

fn present(ctx: &Ctx, cmd: &PresentCmd) -> Res<Outcome> {
    match cmd {
        PresentCmd::Show { source } => {
            let (r, prov) = ctx.resolve(source)?;
            let v = match r {
                Resolved::Presentation(p) => json!({
                    "generators": p.gen_count(),
                    "relators": p.relators.len(),
                    "text": to_text(&p),
                }),
                Resolved::Subgroup(s) => json!({
                    "generators": s.parent.gen_count(),
                    "relators": s.parent.relators.len(),
                    "subgroup_words": s.words.iter().map(|w| s.parent.render(w)).collect::<Vec<_>>(),
                    "text": planegroups::presentations::text::subgroup_to_text(&s),
                }),
            };
            outcome(v, true, prov)
        }
        PresentCmd::Catalog => outcome(&planegroups::presentations::catalog::ENTRIES[..], true, bundled()),
        PresentCmd::Build { q, residues, no_dedup } => {
            let p = howie_presentation(*q, residues, !no_dedup)?;
            let v = json!({ "generators": p.gen_count(), "relators": p.relators.len(), "text": to_text(&p) });
            outcome(v, true, json!({ "q": q, "residues": residues }))
        }
        PresentCmd::Star { source } => {
            let (p, prov) = ctx.presentation(source)?;
            let g = star_graph(&p)?;
            let v = json!({
                "vertices": g.order(),
                "edges": g.size(),
                "regular_degree": regular_degree(&g.degrees()),
                "girth": g.girth(),
                "bipartite": g.bipartition().is_some(),
                "multi_edges": g.has_multi_edges(),
                "loops": g.has_loops(),
            });
            outcome(v, true, prov)
        }
        PresentCmd::Polyhedral { which, printed } => {
            let pp = match which {
                Polyhedral::TriangleQ2 => triangle_q2(),
                Polyhedral::Order4 => order4(!printed),
            };
            let r = pp.validate();
            let ok = r.valid;
            outcome(r, ok, bundled())
        }
    }
}

fn regular_degree(d: &[usize]) -> Option<usize> {
    d.first().copied().filter(|&x| d.iter().all(|&y| y == x))
}

fn subgroup(ctx: &Ctx, cmd: &SubgroupCmd) -> Res<Outcome> {
    let (a, kind) = match cmd {
        SubgroupCmd::Index(a) => (a, 0),
        SubgroupCmd::Rewrite(a) => (a, 1),
        SubgroupCmd::Abelianize(a) => (a, 2),
    };
    let (sub, prov) = ctx.subgroup(a)?;
    let t = coset_enumerate(&sub.parent, &sub, a.max_cosets)?;
    let words: Vec<String> = sub.words.iter().map(|w| sub.parent.render(w)).collect();
    let v = match kind {
        0 => json!({ "subgroup_words": words, "index": t.index() }),
        1 => {
            let sp = reidemeister_schreier(&t, true)?;
            let best = sp.best();
            json!({
                "subgroup_words": words,
                "index": t.index(),
                "schreier_generators": sp.presentation.gen_count(),
                "schreier_relators": sp.presentation.relators.len(),
                "simplified_generators": best.gen_count(),
                "simplified_relators": best.relators.len(),
                "text": to_text(best),
            })
        }
        _ => {
            let sp = reidemeister_schreier(&t, true)?;
            let ab = abelianization(sp.best());
            json!({ "subgroup_words": words, "index": t.index(), "torsion": ab.torsion_u64(), "free_rank": ab.free_rank })
        }
    };
    outcome(v, true, prov)
}

fn pquotient(ctx: &Ctx, a: &PqArgs) -> Res<Outcome> {
    let cfg = PqConfig { full_checks: a.full_checks, ..PqConfig::default() };
    let (q, prov) = ctx.quotient(&a.source, a.prime, a.class, &cfg, a.max_cosets)?;
    let pc = &q.quotient.pc;
    let mut v = json!({
        "prime": a.prime,
        "class_bound": a.class,
        "class": pc.class,
        "order": format!("{}^{}", a.prime, pc.order_exponent()),
        "order_exponent": pc.order_exponent(),
        "layer_orders": q.quotient.orders,
        "layer_sizes": pc.layer_sizes(),
        "consistent": pc.is_consistent(),
        "index": q.index,
        "generator_images": q.images.iter().map(render_pc).collect::<Vec<_>>(),
    });
    if a.fingerprint {
        v["fingerprint"] = serde_json::to_value(fingerprint(pc)).expect("serializable");
    }
    outcome(v, true, prov)
}

fn ramify(ctx: &Ctx, cmd: &RamifyCmd) -> Res<Outcome> {
    match cmd {
        RamifyCmd::PaperTuples { family } => {
            let t = paper_tuple_words(family, ctx.conv)?;
            let (t1, t2) = t.render();
            outcome(json!({ "family": family, "generators": t.generators, "t1": t1, "t2": t2 }), true, bundled())
        }
        RamifyCmd::Verify(a) => {
            let no_source = a.source.group.is_none() && a.source.file.is_none();
            if a.family == "thm-main" && no_source && a.prime.unwrap_or(3) == 3 {
                let cfg = ScenarioConfig { data_dir: ctx.data_dir.clone(), convention: ctx.conv, dense_cap: ctx.dense_cap, ..Default::default() };
                let r = thm_main(a.class.unwrap_or(2), &cfg)?;
                let ok = r.verified;
                return outcome(r, ok, json!({ "catalog": "H" }));
            }
            let source = if no_source {
                let g = if a.family == "thm-main" { "H" } else { "Z7xZ7" };
                Source { group: Some(g.into()), file: None }
            } else {
                a.source.clone()
            };
            let default_p = if a.family == "thm-main" { 3 } else { 7 };
            let k = a.class.unwrap_or(if a.family == "thm-main" { 2 } else { 1 });
            let (q, prov) = ctx.quotient(&source, a.prime.unwrap_or(default_p), k, &PqConfig::default(), planegroups::fpalgo::DEFAULT_MAX_COSETS)?;
            let pc = &q.quotient.pc;
            let (t1, t2) = paper_tuples(&a.family, ctx.conv, pc, &q.images)?;
            let g = DenseGroup::new(pc, ctx.dense_cap)?;
            let c = pc.collector();
            let (w1, w2) = paper_tuple_words(&a.family, ctx.conv)?.render();
            let render = |t: &[_]| t.iter().map(render_pc).collect::<Vec<_>>();
            let mut v = json!({
                "family": a.family,
                "order": format!("{}^{}", pc.p, pc.order_exponent()),
                "t1": { "words": w1, "elements": render(&t1), "type": system_type(&c, &t1) },
                "t2": { "words": w2, "elements": render(&t2), "type": system_type(&c, &t2) },
            });
            let ok = match verify_structure(&g, &t1, &t2) {
                Ok(s) => {
                    let order = (pc.p as u64).pow(pc.order_exponent() as u32);
                    v["certificate"] = serde_json::to_value(s.certificate).expect("serializable");
                    v["invariants"] = match surface_invariants(order, &s.t1.system_type, &s.t2.system_type) {
                        Ok(inv) => serde_json::to_value(inv).expect("serializable"),
                        Err(e) => json!({ "error": e.to_string() }),
                    };
                    true
                }
                Err(e @ planegroups::ramification::RamificationError::NotAStructure(_)) => {
                    v["certificate"] = serde_json::to_value(planegroups::ramification::disjoint(&g, &t1, &t2)).expect("serializable");
                    v["failure"] = json!(e.to_string());
                    false
                }
                Err(e) => return Err(e.into()),
            };
            outcome(v, ok, prov)
        }
        RamifyCmd::Search(a) => {
            if let Some(w) = a.workers {
                // ignore failure when a pool already exists
                let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
            }
            let (q, prov) = ctx.quotient(&a.source, a.prime, a.class, &PqConfig::default(), planegroups::fpalgo::DEFAULT_MAX_COSETS)?;
            let pc = &q.quotient.pc;
            let g = DenseGroup::new(pc, ctx.dense_cap)?;
            let strategy = match a.strategy {
                StrategyArg::Exhaustive => Strategy::Exhaustive,
                StrategyArg::Random => Strategy::Random { samples: a.samples },
            };
            let cfg = SearchConfig { strategy, seed: a.seed, budget: a.budget, max_results: a.max_results };
            let out = search_structures(&g, &a.type_a, &a.type_b, &cfg)?;
            let order = (pc.p as u64).pow(pc.order_exponent() as u32);
            let structures: Vec<Value> = out
                .structures
                .iter()
                .map(|s| {
                    json!({
                        "t1": s.t1.elements.iter().map(render_pc).collect::<Vec<_>>(),
                        "t2": s.t2.elements.iter().map(render_pc).collect::<Vec<_>>(),
                        "types": [&s.t1.system_type, &s.t2.system_type],
                        "certificate": s.certificate,
                    })
                })
                .collect();
            let v = json!({
                "order": format!("{}^{}", pc.p, pc.order_exponent()),
                "types": [&a.type_a, &a.type_b],
                "found": out.structures.len(),
                "complete": out.complete,
                "examined": out.examined,
                "systems": out.systems,
                "sigma_classes": out.sigma_classes,
                "structures": structures,
                "invariants": surface_invariants(order, &a.type_a, &a.type_b).ok(),
            });
            let found = !out.structures.is_empty();
            let mut o = outcome(v, found, prov)?;
            if !found && !out.complete {
                o.failure_code = 3;
            }
            Ok(o)
        }
    }
}

fn run(cli: &Cli) -> Res<Outcome> {
    let g = &cli.global;
    let conv: Convention = g.convention.into();
    let ctx = Ctx { catalog: Catalog::new(g.data_dir.clone(), conv), conv, dense_cap: g.dense_cap, data_dir: g.data_dir.clone() };
    match &cli.command {
        Command::Plane(c) => plane(&ctx, c),
        Command::Present(c) => present(&ctx, c),
        Command::Subgroup(c) => subgroup(&ctx, c),
        Command::Pquotient(a) => pquotient(&ctx, a),
        Command::Ramify(c) => ramify(&ctx, c),
        Command::Surface(a) => {
            let inv = surface_invariants(a.order, &a.type_a, &a.type_b)?;
            outcome(inv, true, json!({ "order": a.order }))
        }
        Command::Repcheck { matrices } => {
            let path = matrices.clone().or_else(|| g.data_dir.as_ref().map(|d| d.join("matrices/appendix.json")).filter(|p| p.exists()));
            let (m, prov) = match &path {
                Some(p) => (RepMatrices::load(p)?, json!({ "file": p.display().to_string() })),
                None => (RepMatrices::bundled()?, bundled()),
            };
            let printed = verify_paper_matrices(&m);
            let algebra = verify_algebra(&m);
            let ok = printed.all_as_expected() && algebra.all_as_expected();
            outcome(json!({ "printed": printed, "algebra": algebra }), ok, prov)
        }
        Command::Reproduce { scenario, seed, budget } => {
            let cfg = ScenarioConfig { data_dir: g.data_dir.clone(), convention: conv, dense_cap: g.dense_cap, seed: *seed, budget: *budget };
            let o = run_scenario(scenario, &cfg)?;
            outcome(o.report, o.verified, json!({ "scenario": scenario }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let res = run(&cli);
    let (ok, code, mut report) = match res {
        Ok(o) => {
            let code = if o.ok { 0 } else { o.failure_code };
            (o.ok, code, json!({ "provenance": o.provenance, "result": o.result }))
        }
        Err(e) => {
            let code = e.exit_code();
            (false, code, json!({ "error": { "message": e.to_string(), "exit_code": code } }))
        }
    };
    report["schema_version"] = json!(SCHEMA_VERSION);
    report["tool"] = json!({ "name": "planegroups", "version": env!("CARGO_PKG_VERSION") });
    report["config"] = serde_json::to_value(&cli).expect("config serializes");
    report["ok"] = json!(ok);
    if cli.global.timings {
        report["timings"] = json!({ "seconds": start.elapsed().as_secs_f64() });
    }
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, &text).map_err(CliError::from),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("{e}");
        return ExitCode::from(1);
    }
    if let Some(msg) = report.get("error").and_then(|e| e.get("message")).and_then(Value::as_str) {
        eprintln!("error: {msg}");
    }
    ExitCode::from(code)
}
