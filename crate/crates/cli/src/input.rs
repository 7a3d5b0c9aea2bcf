use std::fs;
use std::path::Path;

use genus_core::graph::MultiGraph;
use genus_core::named;
use genus_core::scaffold::{c3_host, milgram_graph, scaffold, w5_host};
use genus_core::parse_graph6;

pub const BUILTINS: &[&str] = &[
    "k33", "k5", "k4", "petersen", "h3", "m4", "m5", "m6", "w5scaffold", "c3scaffold", "c15chords4",
];

fn builtin(name: &str) -> Option<MultiGraph> {
    let scaffolded = |(host, t)| scaffold(&host, &t).expect("builtin scaffold").graph;
    Some(match name {
        "k33" => named::k33(),
        "k5" => named::k5(),
        "k4" => named::k4(),
        "petersen" => named::petersen(),
        "h3" => genus_core::scaffold::build_h3(),
        "m4" => scaffolded(milgram_graph(4).unwrap()),
        "m5" => scaffolded(milgram_graph(5).unwrap()),
        "m6" => scaffolded(milgram_graph(6).unwrap()),
        "w5scaffold" => scaffolded(w5_host()),
        "c3scaffold" => scaffolded(c3_host()),
        "c15chords4" => {
            let (mut g, _) = milgram_graph(6).unwrap();
            for (x, y) in [("a0", "b0"), ("a1", "b1"), ("b2", "c2"), ("b3", "c3")] {
                let (u, v) = (g.vertex_by_label(x).unwrap(), g.vertex_by_label(y).unwrap());
                g.add_edge(u, v).unwrap();
            }
            g
        }
        _ => return None,
    })
}

/// A builtin name, a graph6 file (one graph) or an edge-list file.
pub fn load_graph(arg: &str) -> Result<MultiGraph, String> {
    if let Some(g) = builtin(arg) {
        return Ok(g);
    }
    let path = Path::new(arg);
    let text = fs::read_to_string(path).map_err(|e| {
        format!(
            "{arg}: {e} (builtins: {})",
            BUILTINS.join(", ")
        )
    })?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let graph6 = matches!(path.extension().and_then(|e| e.to_str()), Some("g6" | "graph6"))
        || (!lines.is_empty() && lines.iter().all(|l| !l.contains(char::is_whitespace)) && !lines[0].chars().all(|c| c.is_ascii_digit()));
    if graph6 {
        match lines.as_slice() {
            [one] => parse_graph6(one.as_bytes()).map_err(|e| format!("{arg}: {e}")),
            _ => Err(format!("{arg}: expected exactly one graph6 line, found {}", lines.len())),
        }
    } else {
        MultiGraph::parse_edge_list_text(&text).map_err(|e| format!("{arg}: {e}"))
    }
}
