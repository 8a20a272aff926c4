use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ninfty::group::{construct_group_with_bound, Group, DEFAULT_ORDER_BOUND};
use ninfty::indexing::{
    enumerate_all, pair_label, pairs_from_json, parse_pair_list, validate, IndexingSystem,
};
use ninfty::mackey::{build_burnside, verify_double_coset, verify_multiplicative_double_coset, frobenius_check};
use ninfty::operad::{
    find_separating_universe, operad_coinduce, operad_cotensor, operad_fixed_points, realization_census,
    OperadModel, SeparationMode,
};

/// Indexing systems, operad admissibility and Burnside-level checks for
/// finite groups.
///
/// Groups: C<n>, D<2n>, S<n>, A<n>, Q8, products like C2xC4, or
/// perm:(1,2)(3,4),(1,3) with 1-based points. Subgroups are named by lattice
/// labels such as e, C2, C2a, V4, S3, C2#1 or G for the whole group.
///
/// Systems (--system, -a, -b): `trivial`, `complete`, a JSON document
/// {"pairs": [["H","K"], ...]}, a path to such a file, or a list `H/K,H/K`
/// (the pairs H/H are implied). Listed pairs are closed under conjugation.
///
/// Universes (--universe): complete | trivial | fixed:<N> |
/// gen:<item>,<item>,... with items triv, reg, perm:<H>, regbar:<H>, irr:<i>.
///
/// Exit status: 0 on success, 1 on usage errors, 2 when a validation or
/// verification fails.
#[derive(Parser, Debug)]
#[command(name = "ninfty", version, verbatim_doc_comment)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Args, Debug)]
struct Common {
    /// Group specification.
    #[arg(long, short)]
    group: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Shorthand for `--format dot`.
    #[arg(long)]
    dot: bool,
    /// Largest admitted group order.
    #[arg(long, env = "NINFTY_ORDER_BOUND", default_value_t = DEFAULT_ORDER_BOUND)]
    order_bound: usize,
}

impl Common {
    fn format(&self) -> Format {
        if self.dot {
            Format::Dot
        } else {
            self.format
        }
    }
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// trivial, complete, disks, steiner, isometries or explicit.
    #[arg(long, default_value = "disks")]
    operad: String,
    #[arg(long, default_value = "complete")]
    universe: String,
    /// System for `--operad explicit`.
    #[arg(long)]
    system: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All indexing systems of the group with their Hasse diagram.
    Enumerate(Common),
    /// Checks the indexing system axioms on a pair set.
    Validate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        system: String,
    },
    /// Least indexing system containing the given pairs.
    Closure {
        #[command(flatten)]
        common: Common,
        /// Pairs `H/K,H/K,...`.
        #[arg(long)]
        pairs: String,
    },
    /// Intersection of two systems
    Meet {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        a: String,
        #[arg(short)]
        b: String,
    },
    /// Least system containing both
    Join {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        a: String,
        #[arg(short)]
        b: String,
    },
    /// Restriction of a system to a subgroup.
    Restrict {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        system: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Admissible orbits of an operad model.
    Admissibles {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// A universe over which disks and isometries differ.
    Separate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "pairwise")]
        mode: Mode,
    },
    /// Which systems are realized by disks or isometries operads.
    Census(Common),
    /// Coinduction of a model over a subgroup up to the group.
    Coinduce {
        #[command(flatten)]
        common: Common,
        /// Subgroup carrying the model; universes and systems refer to its
        /// own labels.
        #[arg(long)]
        subgroup: String,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Cotensor of a model with the universal space of a family.
    Cotensor {
        #[command(flatten)]
        common: Common,
        /// Subgroup labels, each standing for its conjugacy class, or `all`.
        #[arg(long)]
        family: String,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Fixed points of a model for a normal subgroup.
    FixedPoints {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        normal: String,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Double coset, multiplicative double coset and Frobenius checks.
    MackeyVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "complete")]
        system: String,
        /// Largest set size used for norms.
        #[arg(long, default_value_t = 3)]
        norm_size: usize,
    },
    /// Hasse diagram of the indexing systems.
    Hasse(Common),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Pairwise,
    AllIsometries,
}

struct Outcome {
    doc: Output,
    failed: bool,
}

enum Output {
    Json(Value),
    Text(String),
}

fn ok(doc: Value) -> Outcome {
    Outcome { doc: Output::Json(doc), failed: false }
}

fn group_of(c: &Common) -> anyhow::Result<Group> {
    Ok(construct_group_with_bound(&c.group, c.order_bound)?)
}

fn read_pairs(group: &Group, spec: &str) -> anyhow::Result<BTreeSet<(usize, usize)>> {
    let spec = spec.trim();
    match spec {
        "trivial" => return Ok(IndexingSystem::trivial(group).pairs()),
        "complete" => return Ok(IndexingSystem::complete(group).pairs()),
        _ => {}
    }
    if spec.starts_with('{') {
        let doc: Value = serde_json::from_str(spec).context("system JSON")?;
        return Ok(pairs_from_json(group, &doc)?);
    }
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {}", spec))?;
        let doc: Value = serde_json::from_str(&text).context("system JSON")?;
        return Ok(pairs_from_json(group, &doc)?);
    }
    let mut pairs = parse_pair_list(group, spec)?;
    pairs.extend((0..group.lattice().len()).map(|h| (h, h)));
    Ok(pairs)
}

/// Reads a system; invalid pair sets end the run with the validation report.
fn read_system(group: &Group, spec: &str) -> Result<IndexingSystem, Outcome> {
    let pairs = read_pairs(group, spec).map_err(usage)?;
    let report = validate(group, &pairs);
    if !report.valid {
        return Err(Outcome { doc: Output::Json(report.to_json()), failed: true });
    }
    Ok(IndexingSystem::from_pairs(group, &pairs).expect("validated"))
}

fn usage(e: anyhow::Error) -> Outcome {
    Outcome { doc: Output::Text(format!("error: {:#}", e)), failed: false }
}

fn model(group: &Group, m: &ModelArgs) -> Result<OperadModel, Outcome> {
    if m.operad == "explicit" {
        let spec = m.system.as_deref().ok_or_else(|| usage(anyhow::anyhow!("--operad explicit needs --system")))?;
        return Ok(OperadModel::explicit(read_system(group, spec)?));
    }
    OperadModel::parse(group, &m.operad, &m.universe).map_err(|e| usage(e.into()))
}

fn system_table(s: &IndexingSystem) -> String {
    let g = s.group();
    let mut out = format!("{}: {} pair classes\n", g.display_name(), s.representatives().len());
    for (h, k) in s.nontrivial_representatives() {
        out.push_str(&format!("  {}\n", pair_label(g, h, k)));
    }
    out
}

fn system_output(s: &IndexingSystem, format: Format) -> Outcome {
    match format {
        Format::Table => Outcome { doc: Output::Text(system_table(s)), failed: false },
        _ => ok(s.to_json()),
    }
}

/// Runs a command. `Err` carries usage errors (exit 1).
fn run(cmd: Command) -> Result<Outcome, Outcome> {
    Ok(match cmd {
        Command::Hasse(c) => {
            let g = group_of(&c).map_err(usage)?;
            Outcome { doc: Output::Text(enumerate_all(&g).to_dot(None)), failed: false }
        }
        Command::Enumerate(c) => {
            let hasse = matches!(c.format(), Format::Dot);
            let g = group_of(&c).map_err(usage)?;
            let lat = enumerate_all(&g);
            if hasse {
                Outcome { doc: Output::Text(lat.to_dot(None)), failed: false }
            } else if c.format() == Format::Table {
                let mut out = format!("{}: {} indexing systems\n", g.display_name(), lat.len());
                for (i, s) in lat.systems.iter().enumerate() {
                    let labels: Vec<String> =
                        s.nontrivial_representatives().iter().map(|&(h, k)| pair_label(&g, h, k)).collect();
                    out.push_str(&format!("{:>5}  {}\n", i, labels.join(" ")));
                }
                Outcome { doc: Output::Text(out), failed: false }
            } else {
                ok(lat.to_json())
            }
        }
        Command::Validate { common, system } => {
            let g = group_of(&common).map_err(usage)?;
            let pairs = read_pairs(&g, &system).map_err(usage)?;
            let report = validate(&g, &pairs);
            let failed = !report.valid;
            let doc = match common.format() {
                Format::Table => Output::Text(report.summary() + "\n"),
                _ => Output::Json(report.to_json()),
            };
            Outcome { doc, failed }
        }
        Command::Closure { common, pairs } => {
            let g = group_of(&common).map_err(usage)?;
            let seeds: Vec<(usize, usize)> = parse_pair_list(&g, &pairs).map_err(|e| usage(e.into()))?.into_iter().collect();
            let s = IndexingSystem::closure(&g, &seeds).map_err(|e| usage(e.into()))?;
            system_output(&s, common.format())
        }
        Command::Meet { common, a, b } => combine(&common, &a, &b, true)?,
        Command::Join { common, a, b } => combine(&common, &a, &b, false)?,
        Command::Restrict { common, system, subgroup } => {
            let g = group_of(&common).map_err(usage)?;
            let s = read_system(&g, &system)?;
            let h = g.lattice().find(&subgroup, g.name()).map_err(|e| usage(e.into()))?;
            system_output(&s.restrict(h), common.format())
        }
        Command::Admissibles { common, model: m } => {
            let g = group_of(&common).map_err(usage)?;
            let md = model(&g, &m)?;
            let mut doc = md.admissibles().to_json();
            doc["operad"] = json!(md.kind_name());
            if !matches!(m.operad.as_str(), "trivial" | "complete" | "explicit") {
                doc["universe"] = json!(m.universe);
            }
            match common.format() {
                Format::Table => Outcome { doc: Output::Text(system_table(&md.admissibles())), failed: false },
                _ => ok(doc),
            }
        }
        Command::Separate { common, mode } => {
            let g = group_of(&common).map_err(usage)?;
            let mode = match mode {
                Mode::Pairwise => SeparationMode::Pairwise,
                Mode::AllIsometries => SeparationMode::AllIsometries,
            };
            let found = find_separating_universe(&g, mode).map_err(|e| usage(e.into()))?;
            ok(match found {
                Some(s) => s.to_json(),
                None => json!({ "group": g.display_name(), "universe": null }),
            })
        }
        Command::Census(c) => {
            let g = group_of(&c).map_err(usage)?;
            let census = realization_census(&g).map_err(|e| usage(e.into()))?;
            match c.format() {
                Format::Dot => Outcome { doc: Output::Text(census.to_dot()), failed: false },
                _ => ok(census.to_json()),
            }
        }
        Command::Coinduce { common, subgroup, model: m } => {
            let g = group_of(&common).map_err(usage)?;
            let h = g.lattice().find(&subgroup, g.name()).map_err(|e| usage(e.into()))?;
            let hg = g.subgroup_group(h);
            let md = model(&hg, &m)?;
            let out = operad_coinduce(&md, &g).map_err(|e| usage(e.into()))?;
            system_output(&out.admissibles(), common.format())
        }
        Command::Cotensor { common, family, model: m } => {
            let g = group_of(&common).map_err(usage)?;
            let l = g.lattice();
            let mut members = BTreeSet::new();
            if family.trim() == "all" {
                members.extend(0..l.len());
            } else {
                for label in family.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let a = l.find(label, g.name()).map_err(|e| usage(e.into()))?;
                    members.extend((0..g.order()).map(|x| l.conjugate(x, a)));
                }
            }
            let members: Vec<usize> = members.into_iter().collect();
            let md = model(&g, &m)?;
            let out = operad_cotensor(&md, &members).map_err(|e| usage(e.into()))?;
            system_output(&out.admissibles(), common.format())
        }
        Command::FixedPoints { common, normal, model: m } => {
            let g = group_of(&common).map_err(usage)?;
            let n = g.lattice().find(&normal, g.name()).map_err(|e| usage(e.into()))?;
            let md = model(&g, &m)?;
            let (_, out) = operad_fixed_points(&md, n).map_err(|e| usage(e.into()))?;
            system_output(&out.admissibles(), common.format())
        }
        Command::MackeyVerify { common, system, norm_size } => {
            let g = group_of(&common).map_err(usage)?;
            let s = read_system(&g, &system)?;
            let m = build_burnside(&g, &s).map_err(|e| usage(e.into()))?;
            let reports =
                [verify_double_coset(&m), verify_multiplicative_double_coset(&m, norm_size), frobenius_check(&m)];
            let failed = reports.iter().any(|r| !r.passed());
            let doc = json!({
                "group": g.display_name(),
                "system": s.to_json()["pairs"],
                "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            Outcome { doc: Output::Json(doc), failed }
        }
    })
}

fn combine(common: &Common, a: &str, b: &str, meet: bool) -> Result<Outcome, Outcome> {
    let g = group_of(common).map_err(usage)?;
    let (sa, sb) = (read_system(&g, a)?, read_system(&g, b)?);
    let s = if meet { sa.meet(&sb) } else { sa.join(&sb) };
    Ok(system_output(&s.map_err(|e| usage(e.into()))?, common.format()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (outcome, code) = match run(cli.command) {
        Ok(o) => {
            let code = if o.failed { 2 } else { 0 };
            (o, code)
        }
        Err(o) if o.failed => (o, 2),
        Err(o) => (o, 1),
    };
    // A closed pipe is not an error worth reporting.
    let _ = match outcome.doc {
        Output::Json(v) => writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&v).expect("serializable")),
        Output::Text(t) if code == 1 => writeln!(std::io::stderr(), "{}", t),
        Output::Text(t) => write!(std::io::stdout(), "{}", t),
    };
    ExitCode::from(code)
}
