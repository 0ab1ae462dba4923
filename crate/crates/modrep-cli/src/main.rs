//! Command-line interface: enumerate support tau-tilting posets, run the
//! verification suite, report block data, inspect module expressions, and
//! sweep vertices. Exit code 0 only when every selected check passes.

mod expr;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use modrep::block::{block_of, covers, fong_correspondents, inertia};
use modrep::error::{Error, Result};
use modrep::export::{poset_document, to_dot, to_json, Markers};
use modrep::rng::Rng;
use modrep::scenario::Scenario;
use modrep::stt::{enumerate, AlgebraView};
use modrep::twist::{invariant_flags, star_subset};
use modrep::verify::{ScenarioCtx, Status};
use modrep::vertex::{verify_vertex_theorem, vertex};

#[derive(Parser)]
#[command(name = "modrep", version, about = "Exact modular representation theory: stt posets, blocks, vertices")]
struct Cli {
    /// Scenario file (flat key=value); flags below override its entries.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Characteristic of the coefficient field.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Field extension degree; defaults to the minimal splitting degree.
    #[arg(long, global = true)]
    field_degree: Option<u32>,
    /// Ambient group, e.g. `builtin:symmetric:4` or `perm:4:(1 2 3 4)`.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Normal subgroup, e.g. `builtin:alternating:4` or `order:12`.
    #[arg(long, global = true)]
    normal: Option<String>,
    /// Block selector: `principal`, `defect-zero`, or an index.
    #[arg(long, global = true)]
    block: Option<String>,
    /// PRNG seed (decimal or 0x-hex).
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Node cap for poset enumeration.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Output directory for emitted files.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    /// Output format for emitted artifacts.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Dot,
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the stt posets of the ambient algebra, the normal
    /// subalgebra and the selected block; write DOT and JSON artifacts.
    Stt,
    /// Run the full theorem-verification suite.
    Verify {
        /// Only run the named checks (comma separated).
        #[arg(long)]
        only: Option<String>,
    },
    /// Report the block decomposition with covering and inertia data.
    Blocks,
    /// Evaluate a module expression and report its invariants.
    Inspect { expression: String },
    /// Vertex sweep over the tau-rigid indecomposables of the ambient algebra.
    Vertex,
}

fn build_scenario(cli: &Cli) -> Result<Scenario> {
    let mut s = match &cli.scenario {
        Some(path) => Scenario::parse(&fs::read_to_string(path)?)?,
        None => Scenario::default(),
    };
    if let Some(p) = cli.p {
        s.p = p;
    }
    if let Some(m) = cli.field_degree {
        s.field_degree = Some(m);
    }
    if let Some(g) = &cli.group {
        s.group_spec = g.clone();
    }
    if let Some(n) = &cli.normal {
        s.normal_spec = n.clone();
    }
    if let Some(b) = &cli.block {
        s.block_selector = Some(b.clone());
    }
    if let Some(seed) = &cli.seed {
        s.seed = if let Some(hex) = seed.strip_prefix("0x") {
            u64::from_str_radix(hex, 16)
                .map_err(|_| Error::Scenario(format!("bad seed '{seed}'")))?
        } else {
            seed.parse()
                .map_err(|_| Error::Scenario(format!("bad seed '{seed}'")))?
        };
    }
    if let Some(cap) = cli.cap {
        s.node_cap = cap;
    }
    Ok(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let scenario = build_scenario(cli)?;
    let t0 = Instant::now();
    let ctx = ScenarioCtx::prepare(scenario.resolve()?)?;
    eprintln!("prepared scenario in {:?}", t0.elapsed());
    match &cli.command {
        Command::Stt => cmd_stt(cli, &ctx),
        Command::Verify { only } => cmd_verify(cli, &ctx, only.as_deref()),
        Command::Blocks => cmd_blocks(&ctx),
        Command::Inspect { expression } => cmd_inspect(&ctx, expression),
        Command::Vertex => cmd_vertex(&ctx),
    }
}

fn cmd_stt(cli: &Cli, ctx: &ScenarioCtx) -> Result<bool> {
    fs::create_dir_all(&cli.out_dir)?;
    let scenario = &ctx.resolved.scenario;
    let mut rng = Rng::new(scenario.seed ^ 0x577);

    let emb = &ctx.resolved.normal;
    let inv_normal = invariant_flags(&ctx.poset_normal, emb)?;
    let star = star_subset(
        &ctx.poset_ambient,
        emb,
        &ctx.resolved.quotient,
        &ctx.poset_normal,
        &mut rng,
    )?;

    let header = scenario.header(&ctx.resolved.field);
    println!("{header}");
    let mut emitted = Vec::new();
    {
        let doc = poset_document(
            &ctx.poset_ambient,
            "ambient group algebra",
            &[Markers { name: "star", flags: star.flags.clone() }],
        )?;
        emitted.push(("ambient", ctx.poset_ambient.node_count(), ctx.poset_ambient.edge_count(), doc));
    }
    {
        let doc = poset_document(
            &ctx.poset_normal,
            "normal subgroup algebra",
            &[Markers { name: "invariant", flags: inv_normal.clone() }],
        )?;
        emitted.push(("normal", ctx.poset_normal.node_count(), ctx.poset_normal.edge_count(), doc));
    }
    {
        let datum = &ctx.selected;
        let view = AlgebraView::of_block(
            &ctx.ga_normal,
            datum.block.index,
            datum.block.idempotent.clone(),
        );
        let poset = enumerate(&view, scenario.node_cap, &mut rng)?;
        let doc = poset_document(&poset, &format!("block {} of the normal subalgebra", datum.block.index), &[])?;
        emitted.push(("block", poset.node_count(), poset.edge_count(), doc));
    }
    for (tag, nodes, edges, doc) in emitted {
        println!("{tag}: {nodes} nodes, {edges} edges");
        let dot = to_dot(&doc);
        let json = to_json(&doc);
        fs::write(cli.out_dir.join(format!("stt-{tag}.dot")), dot)?;
        fs::write(cli.out_dir.join(format!("stt-{tag}.json")), json)?;
    }
    println!("artifacts written to {}", cli.out_dir.display());
    Ok(true)
}

fn cmd_verify(cli: &Cli, ctx: &ScenarioCtx, only: Option<&str>) -> Result<bool> {
    let filter: Option<Vec<&str>> = only.map(|s| s.split(',').map(|t| t.trim()).collect());
    let t0 = Instant::now();
    let report = modrep::verify::run_selected(ctx, filter.as_deref());
    eprintln!("suite finished in {:?}", t0.elapsed());
    let text = report.render_text();
    println!("{text}");
    fs::create_dir_all(&cli.out_dir)?;
    fs::write(cli.out_dir.join("verify-report.txt"), &text)?;
    Ok(report.results.iter().all(|r| r.status == Status::Pass))
}

fn cmd_blocks(ctx: &ScenarioCtx) -> Result<bool> {
    let scenario = &ctx.resolved.scenario;
    println!("{}", scenario.header(&ctx.resolved.field));
    for (label, ga, blocks) in [
        ("ambient", &ctx.ga_ambient, &ctx.ambient_blocks),
        ("normal", &ctx.ga_normal, &ctx.normal_blocks),
    ] {
        println!("{label} group algebra: {} block(s)", blocks.len());
        for b in blocks.iter() {
            let simples: Vec<String> = b
                .simples
                .iter()
                .map(|&c| ga.class_info(c).display)
                .collect();
            let support = b.idempotent.iter().filter(|&&c| c != 0).count();
            println!(
                "  block {}: dim {}, idempotent support {}, simples [{}]{}{}",
                b.index,
                b.dim,
                support,
                simples.join(", "),
                if b.is_principal { ", principal" } else { "" },
                if b.defect_zero { ", defect zero" } else { "" },
            );
        }
    }
    // Covering and inertia table for the declared normal inclusion.
    println!("covering table (ambient block <- normal block), with inertia orders:");
    for b in &ctx.normal_blocks {
        let inert = inertia(&ctx.ga_ambient, &ctx.resolved.normal, b)?;
        let covering: Vec<String> = ctx
            .ambient_blocks
            .iter()
            .filter(|bt| covers(&ctx.ga_ambient, bt, &ctx.resolved.normal, b).unwrap_or(false))
            .map(|bt| bt.index.to_string())
            .collect();
        println!(
            "  normal block {}: covered by [{}], inertia order {}",
            b.index,
            covering.join(", "),
            inert.sub.order()
        );
    }
    let data = fong_correspondents(
        &ctx.ga_ambient,
        &ctx.ambient_blocks,
        &ctx.resolved.normal,
        &ctx.selected.block,
        scenario.seed ^ 0xF0,
    )?;
    println!(
        "selected block {}: {} Fong correspondent(s) over inertia of order {}",
        ctx.selected.block.index,
        data.len(),
        ctx.selected.inertia_in_ambient.sub.order()
    );
    Ok(true)
}

fn cmd_inspect(ctx: &ScenarioCtx, expression: &str) -> Result<bool> {
    let mut rng = Rng::new(ctx.resolved.scenario.seed ^ 0x1115);
    let value = expr::evaluate(ctx, expression, &mut rng)?;
    let (ga, blocks, side) = match value.side {
        expr::Side::Ambient => (&ctx.ga_ambient, &ctx.ambient_blocks, "ambient"),
        expr::Side::Normal => (&ctx.ga_normal, &ctx.normal_blocks, "normal"),
    };
    let m = &value.module;
    println!("side: {side} group algebra");
    println!("dim: {}", m.dim);
    println!("stack: {}", ga.stack_name(m)?);
    if m.dim == 0 {
        return Ok(true);
    }
    let classes = ga.decompose_classes(m, &mut rng)?;
    let parts: Vec<String> = classes
        .iter()
        .map(|&(c, mult)| {
            let info = ga.class_info(c);
            if mult == 1 {
                info.display
            } else {
                format!("{}^{}", info.display, mult)
            }
        })
        .collect();
    println!("decomposition: {}", parts.join(" + "));
    let view = AlgebraView::full(ga);
    let class_list: Vec<_> = classes.iter().map(|&(c, _)| c).collect();
    println!(
        "tau-rigid: {}",
        modrep::stt::is_tau_rigid_classes(&view, &class_list)?
    );
    for &(c, _) in &classes {
        let rep = ga.class_rep(c);
        let block = block_of(blocks, &rep)?;
        let (vreport, _) = vertex(&rep, &mut rng)?;
        println!(
            "  summand {}: dim {}, block {}, vertex order {}{}",
            ga.class_info(c).display,
            rep.dim,
            block,
            vreport.vertex_order,
            if vreport.proper { " (proper)" } else { " (full Sylow)" }
        );
    }
    Ok(true)
}

fn cmd_vertex(ctx: &ScenarioCtx) -> Result<bool> {
    let mut rng = Rng::new(ctx.resolved.scenario.seed ^ 0x7e);
    let report = verify_vertex_theorem(&ctx.ga_ambient, &ctx.poset_ambient, &mut rng)?;
    println!("{}", ctx.resolved.scenario.header(&ctx.resolved.field));
    for r in &report.per_class {
        let name = r
            .class
            .map(|c| ctx.ga_ambient.class_info(c).display)
            .unwrap_or_default();
        println!(
            "  {:16} dim {:3} vertex order {:3} {}",
            name,
            r.module_dim,
            r.vertex_order,
            if r.proper { "proper" } else { "full Sylow" }
        );
    }
    println!(
        "all vertices proper: {}; normal subgroup of p-power index: {}{}",
        report.all_vertices_proper,
        report.has_p_power_normal,
        report
            .witness_subgroup_order
            .map(|o| format!(" (witness of order {o})"))
            .unwrap_or_default()
    );
    Ok(true)
}
