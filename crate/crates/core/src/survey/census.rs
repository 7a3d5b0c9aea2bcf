//! Genus census over a stream of cubic graphs.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genus::{min_genus_capped, GenusBound, SolverOptions};
use crate::graph::MultiGraph;
use crate::graph6::{emit_graph6, parse_graph6};

/// Why a graph was left out of a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestIssue {
    /// 1-based input line.
    pub line: usize,
    pub reason: String,
}

/// Census filter violations of `g`, empty when it is simple, cubic,
/// triangle-free and 2-connected.
pub fn census_violations(g: &MultiGraph) -> Vec<String> {
    let mut out = Vec::new();
    if !g.is_simple() {
        out.push("not simple".to_string());
    }
    if let Some((v, d)) = g.vertices().iter().map(|&v| (v, g.degree(v))).find(|&(_, d)| d != 3) {
        out.push(format!("not cubic (vertex {v} has degree {d})"));
    }
    if !g.is_triangle_free() {
        out.push("contains a triangle".to_string());
    }
    if !g.is_biconnected() {
        out.push("not 2-connected".to_string());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IngestItem {
    Graph { line: usize, graph: MultiGraph },
    Issue(IngestIssue),
}

/// Streams graph6 lines from `reader`. Blank lines and `#` comments are
/// skipped; parse errors and filter violations become issues.
pub fn ingest_graph6<R: BufRead>(reader: R) -> impl Iterator<Item = IngestItem> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line_no = i + 1;
        let text = match line {
            Ok(t) => t,
            Err(e) => {
                return Some(IngestItem::Issue(IngestIssue {
                    line: line_no,
                    reason: format!("read error: {e}"),
                }))
            }
        };
        let text = text.trim_end();
        if text.is_empty() || text.starts_with('#') {
            return None;
        }
        Some(match parse_graph6(text.as_bytes()) {
            Err(e) => IngestItem::Issue(IngestIssue {
                line: line_no,
                reason: e.to_string(),
            }),
            Ok(graph) => {
                let bad = census_violations(&graph);
                if bad.is_empty() {
                    IngestItem::Graph { line: line_no, graph }
                } else {
                    IngestItem::Issue(IngestIssue {
                        line: line_no,
                        reason: bad.join("; "),
                    })
                }
            }
        })
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Telemetry {
    pub elapsed_ms: u128,
    pub nodes_explored: u64,
    pub resumed_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub source: String,
    pub total: u64,
    pub genus_histogram: BTreeMap<usize, u64>,
    /// Graphs whose genus is at least `genus_cap`; not in the histogram.
    pub at_least_cap: u64,
    pub genus_cap: Option<usize>,
    pub max_genus_seen: Option<usize>,
    pub issues: Vec<IngestIssue>,
    pub telemetry: Telemetry,
}

impl CensusReport {
    pub fn new(n: usize, source: impl Into<String>, genus_cap: Option<usize>) -> Self {
        CensusReport {
            n,
            source: source.into(),
            total: 0,
            genus_histogram: BTreeMap::new(),
            at_least_cap: 0,
            genus_cap,
            max_genus_seen: None,
            issues: Vec::new(),
            telemetry: Telemetry::default(),
        }
    }

    pub fn record(&mut self, genus: Option<usize>) {
        self.total += 1;
        match genus {
            Some(g) => {
                *self.genus_histogram.entry(g).or_default() += 1;
                self.max_genus_seen = self.max_genus_seen.max(Some(g));
            }
            None => self.at_least_cap += 1,
        }
    }

    /// Betti number shared by every cubic graph of order `n`.
    pub fn betti(&self) -> usize {
        self.n / 2 + 1
    }

    /// Drops run-dependent fields so reports compare byte for byte.
    pub fn without_telemetry(mut self) -> Self {
        self.telemetry = Telemetry::default();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    /// Stop refining once the genus is known to be at least this value.
    pub genus_cap: Option<usize>,
    pub solver: SolverOptions,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: usize,
    /// Graphs handed to the workers at once.
    pub chunk: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            genus_cap: None,
            solver: SolverOptions::default(),
            checkpoint: None,
            checkpoint_every: 10_000,
            chunk: 1024,
        }
    }
}

/// Resumable progress: the number of graphs already counted and their tally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub processed: usize,
    pub last_line: usize,
    pub histogram: BTreeMap<usize, u64>,
    pub at_least_cap: u64,
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# genus census checkpoint\nprocessed {}\nlast_line {}\nat_least_cap {}\n",
            self.processed, self.last_line, self.at_least_cap
        );
        for (g, c) in &self.histogram {
            s.push_str(&format!("genus {g} {c}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cp = Checkpoint {
            processed: 0,
            last_line: 0,
            histogram: BTreeMap::new(),
            at_least_cap: 0,
        };
        for (i, line) in text.lines().enumerate() {
            let err = |reason: &str| Error::Parse {
                line: i + 1,
                reason: reason.to_string(),
            };
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<u64>().map_err(|_| err("expected an integer"));
            match parts.as_slice() {
                ["processed", x] => cp.processed = num(x)? as usize,
                ["last_line", x] => cp.last_line = num(x)? as usize,
                ["at_least_cap", x] => cp.at_least_cap = num(x)?,
                ["genus", g, c] => {
                    cp.histogram.insert(num(g)? as usize, num(c)?);
                }
                _ => return Err(err("unrecognised checkpoint line")),
            }
        }
        Ok(cp)
    }

    pub fn load(path: &Path) -> Result<Option<Self>> {
        match fs::read_to_string(path) {
            Ok(t) => Self::parse(&t).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp)?;
        f.write_all(self.to_text().as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn classify(
    line: usize,
    g: &MultiGraph,
    opts: &CensusOptions,
) -> Result<(Option<usize>, u64)> {
    match min_genus_capped(g, opts.genus_cap, &opts.solver) {
        Ok(GenusBound::Exact(r)) => Ok((Some(r.genus), r.nodes_explored)),
        Ok(GenusBound::AtLeast { nodes_explored, .. }) => Ok((None, nodes_explored)),
        Err(e) => {
            let g6 = emit_graph6(g).unwrap_or_else(|_| g.to_edge_list_text());
            Err(Error::Inconclusive(format!("graph on line {line} ({g6}): {e}")))
        }
    }
}

/// Minimum-genus histogram of `graphs` (each tagged with its input line).
/// Any solver failure aborts the census with the offending graph in the
/// message. With a checkpoint path, progress is written every
/// `checkpoint_every` graphs and an existing checkpoint is resumed.
pub fn census<I>(graphs: I, n: usize, source: &str, opts: &CensusOptions) -> Result<CensusReport>
where
    I: IntoIterator<Item = (usize, MultiGraph)>,
{
    let start = Instant::now();
    let mut report = CensusReport::new(n, source, opts.genus_cap);
    let resume = match &opts.checkpoint {
        Some(p) => Checkpoint::load(p)?,
        None => None,
    };
    let skip = resume.as_ref().map_or(0, |c| c.processed);
    if let Some(cp) = &resume {
        report.total = cp.processed as u64;
        report.genus_histogram = cp.histogram.clone();
        report.at_least_cap = cp.at_least_cap;
        report.max_genus_seen = cp.histogram.keys().next_back().copied();
        report.telemetry.resumed_from = Some(cp.processed);
    }

    let mut last_line = resume.as_ref().map_or(0, |c| c.last_line);
    let mut since_checkpoint = 0;
    let mut iter = graphs.into_iter().skip(skip).peekable();
    let inner = CensusOptions {
        solver: SolverOptions {
            exec: crate::exec::Exec::Sequential,
            ..opts.solver
        },
        ..opts.clone()
    };
    while iter.peek().is_some() {
        let room = if opts.checkpoint.is_some() {
            opts.chunk.min(opts.checkpoint_every - since_checkpoint)
        } else {
            opts.chunk
        };
        let batch: Vec<(usize, MultiGraph)> = iter.by_ref().take(room.max(1)).collect();
        let count = batch.len();
        last_line = batch.last().map_or(last_line, |b| b.0);
        let results = opts
            .solver
            .exec
            .map(batch, |(line, g)| classify(line, &g, &inner));
        for r in results {
            let (genus, nodes) = r?;
            report.record(genus);
            report.telemetry.nodes_explored += nodes;
        }
        since_checkpoint += count;
        if let Some(path) = &opts.checkpoint {
            if since_checkpoint >= opts.checkpoint_every {
                since_checkpoint = 0;
                Checkpoint {
                    processed: report.total as usize,
                    last_line,
                    histogram: report.genus_histogram.clone(),
                    at_least_cap: report.at_least_cap,
                }
                .store(path)?;
            }
        }
    }
    if let Some(path) = &opts.checkpoint {
        Checkpoint {
            processed: report.total as usize,
            last_line,
            histogram: report.genus_histogram.clone(),
            at_least_cap: report.at_least_cap,
        }
        .store(path)?;
    }
    report.telemetry.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Census of a graph6 stream; lines failing to parse or failing the filters
/// are listed in `issues` and not counted.
pub fn census_graph6<R: BufRead>(
    reader: R,
    n: usize,
    source: &str,
    opts: &CensusOptions,
) -> Result<CensusReport> {
    let mut issues = Vec::new();
    let mut wrong_order = Vec::new();
    let graphs = ingest_graph6(reader).filter_map(|item| match item {
        IngestItem::Graph { line, graph } if graph.num_vertices() == n => Some((line, graph)),
        IngestItem::Graph { line, graph } => {
            wrong_order.push(IngestIssue {
                line,
                reason: format!("has {} vertices, expected {n}", graph.num_vertices()),
            });
            None
        }
        IngestItem::Issue(i) => {
            issues.push(i);
            None
        }
    });
    let mut report = census(graphs, n, source, opts)?;
    issues.extend(wrong_order);
    issues.sort_by_key(|i| i.line);
    report.issues = issues;
    Ok(report)
}

/// Whether every counted graph has Betti number at least four times its genus.
/// Graphs only known to reach the cap are unverified and fail the check.
pub fn duke_check(report: &CensusReport) -> bool {
    let beta = report.betti();
    let exact_ok = report.max_genus_seen.map_or(true, |g| beta >= 4 * g);
    let capped_ok = report.at_least_cap == 0;
    exact_ok && capped_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn ingest_reports_bad_lines() {
        let text = "E?~o\n\n# comment\nE?~\nBw\nEFz_\n";
        let items: Vec<_> = ingest_graph6(text.as_bytes()).collect();
        assert_eq!(items.len(), 4);
        assert!(matches!(&items[1], IngestItem::Issue(i) if i.line == 4));
        assert!(matches!(&items[2], IngestItem::Issue(i) if i.line == 5 && i.reason.contains("triangle")));
        assert!(matches!(&items[3], IngestItem::Graph { line: 6, .. }));
        assert!(matches!(&items[0], IngestItem::Issue(i) if i.reason.contains("not cubic")));
    }

    #[test]
    fn empty_input() {
        assert_eq!(ingest_graph6("".as_bytes()).count(), 0);
        let r = census_graph6("".as_bytes(), 10, "empty", &CensusOptions::default()).unwrap();
        assert_eq!(r.total, 0);
        assert!(duke_check(&r));
    }

    #[test]
    fn k33_census() {
        let r = census_graph6("EFz_\n".as_bytes(), 6, "k33", &CensusOptions::default()).unwrap();
        assert_eq!(r.genus_histogram, BTreeMap::from([(1, 1)]));
        assert_eq!(r.max_genus_seen, Some(1));
        assert!(duke_check(&r));
        assert!(r.issues.is_empty());
    }

    #[test]
    fn capped_census() {
        let graphs = vec![(1, named::k33()), (2, named::petersen())];
        let opts = CensusOptions {
            genus_cap: Some(1),
            ..CensusOptions::default()
        };
        let r = census(graphs, 6, "mixed", &opts).unwrap();
        assert_eq!(r.total, 2);
        assert_eq!(r.at_least_cap, 2);
        assert!(r.genus_histogram.is_empty());
    }

    #[test]
    fn checkpoint_round_trip_and_resume() {
        let cp = Checkpoint {
            processed: 3,
            last_line: 7,
            histogram: BTreeMap::from([(0, 1), (1, 2)]),
            at_least_cap: 0,
        };
        assert_eq!(Checkpoint::parse(&cp.to_text()).unwrap(), cp);
        assert!(Checkpoint::parse("bogus 1").is_err());

        let dir = std::env::temp_dir().join(format!("genus-census-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.ckpt");
        let _ = fs::remove_file(&path);
        let graphs: Vec<_> = (1..=5).map(|i| (i, named::k33())).collect();
        let opts = CensusOptions {
            checkpoint: Some(path.clone()),
            checkpoint_every: 2,
            ..CensusOptions::default()
        };
        let full = census(graphs.clone(), 6, "k33s", &opts).unwrap();
        assert_eq!(full.total, 5);
        let saved = Checkpoint::load(&path).unwrap().unwrap();
        assert_eq!(saved.processed, 5);

        // a partial checkpoint resumes where it stopped
        Checkpoint {
            processed: 4,
            last_line: 4,
            histogram: BTreeMap::from([(1, 4)]),
            at_least_cap: 0,
        }
        .store(&path)
        .unwrap();
        let resumed = census(graphs, 6, "k33s", &opts).unwrap();
        assert_eq!(resumed.telemetry.resumed_from, Some(4));
        assert_eq!(resumed.clone().without_telemetry().genus_histogram, full.genus_histogram);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn duke_bounds() {
        let mut r = CensusReport::new(12, "t", None);
        r.record(Some(1));
        assert!(duke_check(&r));
        r.record(Some(2));
        assert!(!duke_check(&r));
    }
}
