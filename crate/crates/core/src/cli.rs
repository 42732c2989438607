//! The `netcube` command line.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check
//! fails, 2 on bad input (unreadable or malformed files, exceeded
//! budgets, impossible requests).

use crate::analyze::{self, bdr_generate, AnalyzeOptions, SCHEMA_VERSION};
use crate::complex::{
    build_xn, check_npc, check_special, check_trace_labeling, complex_to_json, hair_complex, isomorphic,
    parse_complex, to_dot, write_complex, Respect, SquareComplex, VertexId,
};
use crate::data::{self, Kind};
use crate::events::{check_les, check_nice_labeling, domain_alphabet, extract_events, EventStructurePrefix, Relation};
use crate::net::{hair_net, net_to_json, parse_net, write_net, NetSystem};
use crate::selftest::{self, SelftestOptions};
use crate::trace::TraceAlphabet;
use crate::unfold::{check_domain_isomorphism, hair_domain, unfold_complex, unfold_net, validate_median, DomainPrefix};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "netcube", version)]
#[command(about = "Petri nets, square complexes and their event-structure unfoldings")]
pub struct Cli {
    /// Depth bound K of unfoldings
    #[arg(long, global = true, default_value_t = 8)]
    pub depth: usize,

    /// Maximum number of vertices any construction may create
    #[arg(long, global = true, env = "NETCUBE_BUDGET", default_value_t = 2_000_000)]
    pub budget: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for sampled checks and random instances
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the square complex of a net (or load a complex) and check it
    Complex {
        /// Net or complex file, or the name of a shipped example
        input: String,
        /// Also write the complex in text format to this file
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Unfold a net or complex to depth K and validate the prefix
    Unfold {
        input: String,
        /// Base vertex of a complex (default: its first vertex)
        #[arg(long)]
        base: Option<String>,
        /// For nets: compare with the unfolding of the net's complex
        #[arg(long)]
        cross_check: bool,
    },
    /// Extract the event structure of a prefix
    Events {
        input: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Clusters, grids, bicliques and end types of a prefix
    Analyze {
        /// Net, complex, shipped example, or `bdr` for the plane tiling
        input: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Add hairs to a net or complex
    Hair {
        input: String,
        /// Check that hairing commutes with building and unfolding
        #[arg(long)]
        verify: bool,
    },
    /// List the shipped examples or print one
    Examples {
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the acceptance suite
    Selftest {
        /// Run a single criterion
        #[arg(long)]
        criterion: Option<usize>,
    },
}

enum Input {
    Net(NetSystem),
    Complex(SquareComplex),
    Bdr,
}

fn sniff_net(text: &str) -> bool {
    let t = text.trim_start();
    if t.starts_with('{') {
        return t.contains("\"places\"");
    }
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next());
    matches!(first, Some("place" | "transition" | "initial"))
}

fn load(input: &str) -> Result<Input> {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            if input == "bdr" {
                return Ok(Input::Bdr);
            }
            match data::EXAMPLES.iter().find(|(n, _, _)| *n == input) {
                Some((_, _, t)) => t.to_string(),
                None => return Err(e).with_context(|| format!("cannot read `{input}`")),
            }
        }
    };
    if sniff_net(&text) {
        Ok(Input::Net(parse_net(&text).with_context(|| format!("in `{input}`"))?))
    } else {
        Ok(Input::Complex(parse_complex(&text).with_context(|| format!("in `{input}`"))?))
    }
}

fn base_vertex(c: &SquareComplex, base: &Option<String>) -> Result<VertexId> {
    match base {
        None if c.num_vertices() == 0 => bail!("the complex has no vertices"),
        None => Ok(VertexId(0)),
        Some(name) => c.vertex_id(name).ok_or_else(|| anyhow!("unknown base vertex `{name}`")),
    }
}

fn domain(cli: &Cli, input: &Input, base: &Option<String>) -> Result<DomainPrefix> {
    Ok(match input {
        Input::Net(n) => unfold_net(n, cli.depth, cli.budget)?,
        Input::Complex(c) => unfold_complex(c, base_vertex(c, base)?, cli.depth, cli.budget)?,
        Input::Bdr => bdr_generate(cli.depth),
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out`. Returns the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

/// The report and whether all checks passed.
pub fn execute(cli: &Cli) -> Result<(String, bool)> {
    match &cli.command {
        Command::Complex { input, output } => cmd_complex(cli, input, output),
        Command::Unfold { input, base, cross_check } => cmd_unfold(cli, input, base, *cross_check),
        Command::Events { input, base } => cmd_events(cli, input, base),
        Command::Analyze { input, base } => cmd_analyze(cli, input, base),
        Command::Hair { input, verify } => cmd_hair(cli, input, *verify),
        Command::Examples { name, output } => cmd_examples(name, output),
        Command::Selftest { criterion } => cmd_selftest(cli, *criterion),
    }
}

fn cmd_complex(cli: &Cli, input: &str, output: &Option<PathBuf>) -> Result<(String, bool)> {
    let (c, alphabet) = match load(input)? {
        Input::Net(n) => (build_xn(&n, cli.budget)?.complex, Some(n.alphabet())),
        Input::Complex(c) => (c, None),
        Input::Bdr => bail!("`bdr` is a domain, not a complex"),
    };
    let npc = check_npc(&c);
    let special = check_special(&c);
    let tl = alphabet.as_ref().map(|a| check_trace_labeling(&c, a)).transpose()?;
    let ok = npc.is_npc() && special.is_special() && tl.as_ref().is_none_or(|r| r.is_ok());
    if let Some(path) = output {
        std::fs::write(path, write_complex(&c)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let text = match cli.format {
        Format::Dot => to_dot(&c),
        Format::Json => pretty(json!({
            "schema_version": SCHEMA_VERSION,
            "vertices": c.num_vertices(),
            "edges": c.num_edges(),
            "squares": c.num_squares(),
            "npc": npc.is_npc(),
            "special": special.is_special(),
            "special_witness": special.witness(&c),
            "trace_labeling": tl.as_ref().map(|r| r.is_ok()),
            "complex": complex_to_json(&c),
        })),
        Format::Text => {
            let mut s = format!(
                "{} vertices, {} edges, {} squares; special: {}\n",
                c.num_vertices(),
                c.num_edges(),
                c.num_squares(),
                yes(special.is_special())
            );
            writeln!(s, "nonpositively curved: {}", yes(npc.is_npc()))?;
            for v in &npc.violations {
                writeln!(s, "  {v:?}")?;
            }
            if let Some(w) = special.witness(&c) {
                writeln!(s, "witness: {w}")?;
            }
            if let Some(r) = &tl {
                writeln!(s, "trace labeling: {}", if r.is_ok() { "ok" } else { "violated" })?;
                for v in &r.violations {
                    writeln!(s, "  {v:?}")?;
                }
            }
            s
        }
    };
    Ok((text, ok))
}

fn cmd_unfold(cli: &Cli, input: &str, base: &Option<String>, cross_check: bool) -> Result<(String, bool)> {
    let input = load(input)?;
    let d = domain(cli, &input, base)?;
    let median = validate_median(&d, 200, cli.seed);
    let cross = if cross_check {
        let Input::Net(n) = &input else { bail!("--cross-check needs a net") };
        let xn = build_xn(n, cli.budget)?;
        let other = unfold_complex(&xn.complex, xn.initial_vertex(), cli.depth, cli.budget)?;
        Some(check_domain_isomorphism(&d, &other))
    } else {
        None
    };
    let ok = median.is_ok() && cross.as_ref().is_none_or(|r| r.is_ok());
    let text = match cli.format {
        Format::Dot => d.to_dot(),
        Format::Json => pretty(json!({
            "schema_version": SCHEMA_VERSION,
            "depth_bound": d.depth_bound(),
            "levels": d.level_sizes(),
            "vertices": d.num_vertices(),
            "arcs": d.arcs().len(),
            "squares": d.squares().len(),
            "median": median,
            "isomorphic": cross.as_ref().map(|r| r.is_ok()),
            "mismatch": cross.as_ref().and_then(|r| r.as_ref().err()),
        })),
        Format::Text => {
            let mut s = format!("depth bound: {}\nlevel  vertices\n", d.depth_bound());
            for (k, n) in d.level_sizes().iter().enumerate() {
                writeln!(s, "{k:>5}  {n:>8}")?;
            }
            writeln!(s, "total: {} vertices, {} arcs, {} squares", d.num_vertices(), d.arcs().len(), d.squares().len())?;
            writeln!(
                s,
                "median: {} ({} quadrangles, {} cubes, {} sampled triples)",
                if median.is_ok() { "ok" } else { "violated" },
                median.quadrangles_checked,
                median.cubes_checked,
                median.triples_checked
            )?;
            for v in median.violations.iter().take(10) {
                writeln!(s, "  {v:?}")?;
            }
            match &cross {
                Some(Ok(_)) => writeln!(s, "isomorphic: yes")?,
                Some(Err(m)) => writeln!(s, "isomorphic: no (vertex {}: {})", m.vertex, m.reason)?,
                None => {}
            }
            s
        }
    };
    Ok((text, ok))
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Equal => "equal",
        Relation::Below => "below",
        Relation::Above => "above",
        Relation::Concurrent => "concurrent",
        Relation::Conflict => "conflict",
        Relation::Unknown => "unknown",
    }
}

fn minimal_conflicts(es: &EventStructurePrefix) -> Vec<(usize, usize)> {
    let n = es.len();
    (0..n).flat_map(|e| (e + 1..n).map(move |f| (e, f))).filter(|&(e, f)| es.minimal_conflict(e, f) == Some(true)).collect()
}

fn events_dot(es: &EventStructurePrefix) -> String {
    let mut s = String::from("digraph events {\n");
    for e in &es.events {
        let _ = writeln!(s, "  e{} [label=\"e{} {}\"];", e.id, e.id, e.label);
    }
    for f in 0..es.len() {
        for &e in es.immediate_predecessors(f) {
            let _ = writeln!(s, "  e{e} -> e{f};");
        }
    }
    for (e, f) in minimal_conflicts(es) {
        let _ = writeln!(s, "  e{e} -> e{f} [dir=none, style=dashed, label=\"#\"];");
    }
    s.push_str("}\n");
    s
}

fn cmd_events(cli: &Cli, input: &str, base: &Option<String>) -> Result<(String, bool)> {
    let input = load(input)?;
    let d = domain(cli, &input, base)?;
    let es = extract_events(&d);
    let alphabet: TraceAlphabet = match &input {
        Input::Net(n) => n.alphabet(),
        _ => domain_alphabet(&d),
    };
    let les = check_les(&es, &alphabet);
    let nice = check_nice_labeling(&d);
    let ok = les.is_ok() && nice.is_ok();
    let minimal = minimal_conflicts(&es);
    let counts: Vec<(Relation, usize)> =
        [Relation::Below, Relation::Concurrent, Relation::Conflict, Relation::Unknown].iter().map(|&r| (r, es.count(r))).collect();
    let render = |e: &crate::events::Event| e.prime_trace.as_ref().map(|t| alphabet.render(t).join(" "));
    let text = match cli.format {
        Format::Dot => events_dot(&es),
        Format::Json => pretty(json!({
            "schema_version": SCHEMA_VERSION,
            "depth_bound": d.depth_bound(),
            "events": es.events.iter().map(|e| json!({
                "id": e.id,
                "label": e.label,
                "past": e.past,
                "prime_trace": render(e),
                "immediate_predecessors": es.immediate_predecessors(e.id),
            })).collect::<Vec<_>>(),
            "pairs": counts.iter().map(|(r, n)| (relation_name(*r).to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
            "minimal_conflicts": minimal,
            "les": les.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|v| format!("{v:?}")),
            "nice_labeling": nice.as_ref().map(|_| "ok".to_string()).unwrap_or_else(|v| format!("{v:?}")),
        })),
        Format::Text => {
            let mut s = format!("events: {}\n", es.len());
            for (r, n) in &counts {
                writeln!(s, "{} pairs: {n}", relation_name(*r))?;
            }
            writeln!(s, "minimal conflicts: {}", minimal.len())?;
            match &les {
                Ok(()) => writeln!(s, "LES: ok")?,
                Err(v) => writeln!(s, "LES: violated ({v:?})")?,
            }
            match &nice {
                Ok(()) => writeln!(s, "nice labeling: ok")?,
                Err(v) => writeln!(s, "nice labeling: violated ({v:?})")?,
            }
            if es.len() <= 64 {
                for e in &es.events {
                    write!(s, "e{} {} past={}", e.id, e.label, e.past)?;
                    if let Some(t) = render(e) {
                        write!(s, " trace=[{t}]")?;
                    }
                    writeln!(s)?;
                }
            }
            s
        }
    };
    Ok((text, ok))
}

fn cmd_analyze(cli: &Cli, input: &str, base: &Option<String>) -> Result<(String, bool)> {
    let input = load(input)?;
    let d = domain(cli, &input, base)?;
    let opts = AnalyzeOptions::for_depth(cli.depth);
    let report = analyze::analyze(&d, &opts)?;
    let text = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => pretty(serde_json::to_value(&report)?),
        Format::Dot => match &report.grids.witness {
            Some(g) => g.to_dot(&d),
            None => "digraph grid {\n}\n".to_string(),
        },
    };
    Ok((text, true))
}

fn cmd_hair(cli: &Cli, input: &str, verify: bool) -> Result<(String, bool)> {
    let input = load(input)?;
    let mut notes = String::new();
    let mut ok = true;
    let text = match &input {
        Input::Net(n) => {
            let h = hair_net(n);
            if verify {
                let (xn, xh) = (build_xn(n, cli.budget)?, build_xn(&h, cli.budget)?);
                let rooted = Respect {
                    colors: true,
                    orientation: true,
                    basepoints: Some((xh.initial_vertex(), xn.initial_vertex())),
                };
                let complexes = isomorphic(&xh.complex, &hair_complex(&xn.complex), rooted).is_some();
                let domains =
                    check_domain_isomorphism(&unfold_net(&h, cli.depth, cli.budget)?, &hair_domain(&unfold_net(n, cli.depth, cli.budget)?));
                writeln!(notes, "X of the haired net = hair of X: {}", yes(complexes))?;
                writeln!(notes, "domains at depth {}: {}", cli.depth, yes(domains.is_ok()))?;
                ok = complexes && domains.is_ok();
            }
            match cli.format {
                Format::Text => write_net(&h),
                Format::Json => pretty(net_to_json(&h)),
                Format::Dot => bail!("dot output is available for complexes only"),
            }
        }
        Input::Complex(c) => {
            let h = hair_complex(c);
            if verify {
                let v = base_vertex(c, &None)?;
                let domains = check_domain_isomorphism(
                    &unfold_complex(&h, v, cli.depth, cli.budget)?,
                    &hair_domain(&unfold_complex(c, v, cli.depth, cli.budget)?),
                );
                writeln!(notes, "domains at depth {}: {}", cli.depth, yes(domains.is_ok()))?;
                ok = domains.is_ok();
            }
            match cli.format {
                Format::Text => write_complex(&h),
                Format::Json => pretty(complex_to_json(&h)),
                Format::Dot => to_dot(&h),
            }
        }
        Input::Bdr => bail!("`bdr` is a domain; hair it through `analyze` or `events` instead"),
    };
    // verification notes go after the object, as comments in text form
    let notes = match cli.format {
        Format::Text => notes.lines().map(|l| format!("# {l}\n")).collect(),
        _ => String::new(),
    };
    Ok((text + &notes, ok))
}

fn cmd_examples(name: &Option<String>, output: &Option<PathBuf>) -> Result<(String, bool)> {
    let Some(name) = name else {
        let mut s = String::new();
        for (n, kind, _) in data::EXAMPLES {
            let k = match kind {
                Kind::Net => "net",
                Kind::Complex => "complex",
            };
            writeln!(s, "{n:<10} {k}")?;
        }
        return Ok((s, true));
    };
    let (_, _, text) =
        data::EXAMPLES.iter().find(|(n, _, _)| n == name).ok_or_else(|| anyhow!("no example named `{name}`"))?;
    match output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            Ok((String::new(), true))
        }
        None => Ok((text.to_string(), true)),
    }
}

fn cmd_selftest(cli: &Cli, criterion: Option<usize>) -> Result<(String, bool)> {
    let opts = SelftestOptions { seed: cli.seed, budget: cli.budget, ..SelftestOptions::default() };
    let results = match criterion {
        Some(id) if (1..=selftest::CRITERIA.len()).contains(&id) => vec![selftest::run(id, &opts)],
        Some(id) => bail!("no criterion {id}"),
        None => selftest::run_all(&opts),
    };
    let ok = results.iter().all(|r| r.passed);
    let text = match cli.format {
        Format::Json => pretty(json!({ "schema_version": SCHEMA_VERSION, "criteria": results })),
        _ => {
            let mut s: String = results.iter().map(|r| r.line() + "\n").collect();
            let passed = results.iter().filter(|r| r.passed).count();
            writeln!(s, "{passed}/{} criteria passed", results.len())?;
            s
        }
    };
    Ok((text, ok))
}
