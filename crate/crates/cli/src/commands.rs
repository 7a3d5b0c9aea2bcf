use std::fs::File;
use std::io::{BufRead, BufReader};
use std::time::Instant;

use serde_json::{json, Value};

use genus_core::genus::{
    is_planar_with, max_genus_with, min_genus_capped, overlapping_triples, GenusBound,
    SolverOptions, XuongOptions,
};
use genus_core::graph::MultiGraph;
use genus_core::scaffold::{gamma_t, milgram_graph, milgram_report};
use genus_core::survey::{
    census, census_graph6, default_blocks, duke_check, g_table, generate_cubic, CensusOptions,
    CensusReport, CubicFilters, DEFAULT_STATE_BUDGET,
};
use genus_core::{emit_graph6, Error, Exec};

use crate::input::load_graph;
use crate::{Cli, Command, Format, GraphArgs, ShowFormat};

const MILGRAM_EXPECTED: [(u8, [usize; 4]); 3] =
    [(4, [28, 15, 4, 7]), (5, [35, 18, 5, 9]), (6, [40, 21, 6, 10])];

const GTABLE_EXPECTED: [usize; 11] = [4, 8, 12, 15, 18, 21, 25, 29, 33, 36, 39];

/// What a subcommand produced: the report plus any failed expectations.
struct Outcome {
    json: Value,
    tsv: String,
    mismatches: Vec<String>,
}

impl Outcome {
    fn new(json: Value, tsv: String) -> Self {
        Outcome {
            json,
            tsv,
            mismatches: Vec::new(),
        }
    }

    fn expect(&mut self, what: &str, got: impl ToString, want: impl ToString) {
        let (got, want) = (got.to_string(), want.to_string());
        if got != want {
            self.mismatches.push(format!("{what}: got {got}, expected {want}"));
        }
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchBudget { .. } | Error::Inconclusive(_) | Error::BudgetRefused { .. } => {
                Failure::Compute(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn solver(cli: &Cli) -> SolverOptions {
    SolverOptions {
        budget: cli.budget,
        upper_hint: None,
        exec: if cli.width == Some(1) {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
    }
}

fn kv_tsv(rows: &[(&str, String)]) -> String {
    rows.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
}

pub fn run(cli: &Cli) -> u8 {
    let start = Instant::now();
    let result = match &cli.command {
        Command::Betti(g) => betti(g),
        Command::Genus { graph, cap } => genus(cli, graph, *cap),
        Command::Maxgenus(g) => maxgenus(cli, g),
        Command::Planar(g) => planar(cli, g),
        Command::Show { graph, format } => return show(graph, *format),
        Command::Milgram { k } => milgram(cli, *k),
        Command::Chordings { k } => chordings(cli, *k),
        Command::Census {
            n,
            ingest,
            order,
            cap,
            checkpoint,
        } => run_census(cli, *n, ingest.as_deref(), *order, *cap, checkpoint.clone()),
        Command::Gtable { kmax } => gtable(cli, *kmax),
    };
    match result {
        Ok(mut out) => {
            if !cli.deterministic {
                if let Value::Object(map) = &mut out.json {
                    map.insert("elapsed_ms".into(), json!(start.elapsed().as_millis()));
                }
            }
            if !out.mismatches.is_empty() {
                if let Value::Object(map) = &mut out.json {
                    map.insert("mismatches".into(), json!(out.mismatches));
                }
            }
            match cli.output {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap()),
                Format::Tsv => print!("{}", out.tsv),
            }
            if out.mismatches.is_empty() {
                0
            } else {
                for m in &out.mismatches {
                    eprintln!("mismatch: {m}");
                }
                1
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("genus: {m}");
            2
        }
        Err(Failure::Compute(m)) => {
            eprintln!("genus: {m}");
            3
        }
    }
}

fn graph(args: &GraphArgs) -> Result<MultiGraph, Failure> {
    load_graph(&args.graph).map_err(Failure::Usage)
}

fn check_expect(out: &mut Outcome, args: &GraphArgs, what: &str, got: impl ToString) {
    if let Some(want) = &args.expect {
        out.expect(what, got, want);
    }
}

fn betti(args: &GraphArgs) -> Result<Outcome, Failure> {
    let g = graph(args)?;
    let inv = g.invariants();
    let json = json!({
        "graph": args.graph,
        "vertices": inv.num_vertices,
        "edges": inv.num_edges,
        "components": inv.num_components,
        "betti": inv.betti,
        "is_cubic": inv.is_cubic,
        "is_triangle_free": inv.is_triangle_free,
        "is_biconnected": inv.is_biconnected,
    });
    let tsv = kv_tsv(&[
        ("vertices", inv.num_vertices.to_string()),
        ("edges", inv.num_edges.to_string()),
        ("components", inv.num_components.to_string()),
        ("betti", inv.betti.to_string()),
        ("is_cubic", inv.is_cubic.to_string()),
        ("is_triangle_free", inv.is_triangle_free.to_string()),
        ("is_biconnected", inv.is_biconnected.to_string()),
    ]);
    let mut out = Outcome::new(json, tsv);
    check_expect(&mut out, args, "betti", inv.betti);
    Ok(out)
}

fn genus(cli: &Cli, args: &GraphArgs, cap: Option<usize>) -> Result<Outcome, Failure> {
    let g = graph(args)?;
    let out = match min_genus_capped(&g, cap, &solver(cli))? {
        GenusBound::Exact(r) => {
            let mut json = json!({
                "graph": args.graph,
                "betti": g.betti(),
                "genus": r.genus,
                "witness": r.witness.to_text(),
            });
            if !cli.deterministic {
                json["nodes_explored"] = json!(r.nodes_explored);
            }
            let tsv = kv_tsv(&[("genus", r.genus.to_string()), ("betti", g.betti().to_string())]);
            let mut out = Outcome::new(json, tsv);
            check_expect(&mut out, args, "genus", r.genus);
            out
        }
        GenusBound::AtLeast { genus, nodes_explored } => {
            let mut json = json!({
                "graph": args.graph,
                "betti": g.betti(),
                "genus_at_least": genus,
            });
            if !cli.deterministic {
                json["nodes_explored"] = json!(nodes_explored);
            }
            let tsv = kv_tsv(&[("genus_at_least", genus.to_string())]);
            let mut out = Outcome::new(json, tsv);
            check_expect(&mut out, args, "genus", format!(">={genus}"));
            out
        }
    };
    Ok(out)
}

fn maxgenus(cli: &Cli, args: &GraphArgs) -> Result<Outcome, Failure> {
    let g = graph(args)?;
    let opts = XuongOptions {
        seed: cli.seed,
        ..XuongOptions::default()
    };
    let cert = max_genus_with(&g, &opts)?;
    let json = json!({
        "graph": args.graph,
        "betti": cert.betti,
        "max_genus": cert.max_genus,
        "deficiency": cert.deficiency,
        "optimal": cert.optimal,
        "upper_embeddable": cert.deficiency <= 1,
        "tree_edges": cert.tree_edges,
    });
    let tsv = kv_tsv(&[
        ("max_genus", cert.max_genus.to_string()),
        ("deficiency", cert.deficiency.to_string()),
        ("betti", cert.betti.to_string()),
        ("optimal", cert.optimal.to_string()),
    ]);
    let mut out = Outcome::new(json, tsv);
    if !cert.optimal {
        return Err(Failure::Compute(format!(
            "best tree has deficiency {}, optimality not established",
            cert.deficiency
        )));
    }
    check_expect(&mut out, args, "max_genus", cert.max_genus);
    Ok(out)
}

fn planar(cli: &Cli, args: &GraphArgs) -> Result<Outcome, Failure> {
    let g = graph(args)?;
    let p = is_planar_with(&g, &solver(cli))?;
    let mut out = Outcome::new(
        json!({ "graph": args.graph, "planar": p }),
        kv_tsv(&[("planar", p.to_string())]),
    );
    check_expect(&mut out, args, "planar", p);
    Ok(out)
}

fn show(arg: &str, format: ShowFormat) -> u8 {
    let g = match load_graph(arg) {
        Ok(g) => g,
        Err(m) => {
            eprintln!("genus: {m}");
            return 2;
        }
    };
    match format {
        ShowFormat::Edges => print!("{}", g.to_edge_list_text()),
        ShowFormat::Graph6 => match emit_graph6(&g) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("genus: {e}");
                return 2;
            }
        },
    }
    0
}

fn milgram(cli: &Cli, k: u8) -> Result<Outcome, Failure> {
    let r = milgram_report(k as usize, &solver(cli))?;
    let json = serde_json::to_value(&r).unwrap();
    let tsv = kv_tsv(&[
        ("k", r.k.to_string()),
        ("vertices", r.vertices.to_string()),
        ("edges", r.edges.to_string()),
        ("betti", r.betti.to_string()),
        ("genus", r.genus.to_string()),
        ("max_genus", r.max_genus.to_string()),
        ("gamma_t", r.gamma_t.to_string()),
        ("best_chording", r.best_chording.describe()),
        ("upper_embeddable", r.upper_embeddable.to_string()),
    ]);
    let mut out = Outcome::new(json, tsv);
    let want = MILGRAM_EXPECTED.iter().find(|(kk, _)| *kk == k).unwrap().1;
    out.expect("vertices", r.vertices, want[0]);
    out.expect("betti", r.betti, want[1]);
    out.expect("genus", r.genus, want[2]);
    out.expect("max_genus", r.max_genus, want[3]);
    Ok(out)
}

fn chordings(cli: &Cli, k: u8) -> Result<Outcome, Failure> {
    let (host, t) = milgram_graph(k as usize)?;
    let gt = gamma_t(&host, &t, &solver(cli))?;
    // host vertices 0..n run around the Hamiltonian cycle
    let n = host.num_vertices();
    let cycle: Vec<usize> = (0..n).collect();
    let host_chords: Vec<(usize, usize)> = host.edge_list()[n..].to_vec();
    let name = |v: usize| host.label(v).map_or(v.to_string(), str::to_string);

    let mut rows = Vec::new();
    let mut tsv = String::from("index\tchords\tgenus\tplanar\toverlap\n");
    let mut certified = 0;
    for c in &gt.per_chording {
        let added = c.assignment.chords(&t);
        let all: Vec<_> = host_chords.iter().chain(&added).copied().collect();
        let triples = overlapping_triples(&cycle, &all)?;
        let cert: Option<Vec<String>> = triples
            .first()
            .map(|tr| tr.iter().map(|&i| format!("{}{}", name(all[i].0), name(all[i].1))).collect());
        if cert.is_some() {
            certified += 1;
        }
        let chord_names: Vec<String> = added.iter().map(|&(u, v)| format!("{}{}", name(u), name(v))).collect();
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            c.assignment.index(),
            chord_names.join(","),
            c.genus,
            c.genus == 0,
            cert.as_ref().map_or("-".to_string(), |c| c.join(",")),
        ));
        rows.push(json!({
            "index": c.assignment.index(),
            "chords": chord_names,
            "genus": c.genus,
            "planar": c.genus == 0,
            "overlap": cert,
        }));
    }
    let planar = gt.per_chording.iter().filter(|c| c.genus == 0).count();
    let json = json!({
        "k": k,
        "chordings": gt.per_chording.len(),
        "gamma_t": gt.gamma,
        "planar": planar,
        "certified_by_overlap": certified,
        "best": gt.best.describe(),
        "witness": gt.witness.witness.to_text(),
        "per_chording": rows,
    });
    let mut out = Outcome::new(json, tsv);
    out.expect("gamma_t", gt.gamma, 1);
    out.expect("planar chordings", planar, 0);
    Ok(out)
}

fn census_tsv(r: &CensusReport) -> String {
    let mut s = String::from("genus\tcount\n");
    for (g, c) in &r.genus_histogram {
        s.push_str(&format!("{g}\t{c}\n"));
    }
    if let Some(cap) = r.genus_cap {
        s.push_str(&format!(">={cap}\t{}\n", r.at_least_cap));
    }
    s.push_str(&format!("total\t{}\n", r.total));
    s
}

fn first_order(path: &std::path::Path) -> Result<usize, Failure> {
    let f = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    for line in BufReader::new(f).lines() {
        let line = line.map_err(|e| Failure::Usage(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Ok(g) = genus_core::parse_graph6(line.as_bytes()) {
            return Ok(g.num_vertices());
        }
    }
    Ok(0)
}

fn run_census(
    cli: &Cli,
    n: Option<usize>,
    ingest: Option<&std::path::Path>,
    order: Option<usize>,
    cap: Option<usize>,
    checkpoint: Option<std::path::PathBuf>,
) -> Result<Outcome, Failure> {
    let opts = CensusOptions {
        genus_cap: cap,
        solver: solver(cli),
        checkpoint,
        ..CensusOptions::default()
    };
    let report = match (n, ingest) {
        (Some(n), _) => {
            let graphs = generate_cubic(n, CubicFilters::census(), DEFAULT_STATE_BUDGET)?;
            census(graphs.into_iter().enumerate().map(|(i, g)| (i + 1, g)), n, "generator", &opts)?
        }
        (None, Some(path)) => {
            let order = match order {
                Some(o) => o,
                None => first_order(path)?,
            };
            let f = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            census_graph6(BufReader::new(f), order, &path.display().to_string(), &opts)?
        }
        (None, None) => return Err(Failure::Usage("census needs --n or --ingest".into())),
    };
    let duke = duke_check(&report);
    let report = if cli.deterministic {
        report.without_telemetry()
    } else {
        report
    };
    let mut json = serde_json::to_value(&report).unwrap();
    json["duke_check"] = json!(duke);
    if cli.deterministic {
        json.as_object_mut().unwrap().remove("telemetry");
    }
    let mut out = Outcome::new(json, census_tsv(&report));
    out.expect("duke_check", duke, true);
    Ok(out)
}

fn gtable(cli: &Cli, kmax: usize) -> Result<Outcome, Failure> {
    let blocks = default_blocks(&solver(cli))?;
    let table = g_table(kmax, &blocks)?;
    let json = serde_json::to_value(&table).unwrap();
    let mut out = Outcome::new(json, table.to_tsv());
    for r in &table.rows {
        if let Some(&want) = GTABLE_EXPECTED.get(r.k - 1) {
            out.expect(&format!("g({})", r.k), r.bound, want);
        }
    }
    Ok(out)
}
