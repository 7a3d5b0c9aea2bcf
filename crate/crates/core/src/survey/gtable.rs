//! Upper bounds on the least Betti number of a genus-k graph, from
//! bar-amalgamations of building blocks whose Betti number and genus add.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genus::{min_genus, SolverOptions};
use crate::named;
use crate::scaffold::{milgram_graph, scaffold, scaffold_genus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub name: String,
    pub betti: usize,
    pub genus: usize,
}

impl Block {
    pub fn new(name: impl Into<String>, betti: usize, genus: usize) -> Self {
        Block {
            name: name.into(),
            betti,
            genus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkRow {
    pub k: usize,
    pub bound: usize,
    /// Block names of one optimal composition, in block-list order.
    pub blocks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkTable {
    pub blocks: Vec<Block>,
    pub rows: Vec<GkRow>,
}

impl GkTable {
    pub fn bound(&self, k: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.k == k).map(|r| r.bound)
    }

    /// Two-row layout: `k` across the top, bounds underneath, then the
    /// composition achieving each bound.
    pub fn to_tsv(&self) -> String {
        let join = |f: &dyn Fn(&GkRow) -> String| {
            self.rows.iter().map(f).collect::<Vec<_>>().join("\t")
        };
        format!(
            "k\t{}\ng(k) <=\t{}\nblocks\t{}\n",
            join(&|r| r.k.to_string()),
            join(&|r| r.bound.to_string()),
            join(&|r| r.blocks.join("+")),
        )
    }
}

/// Least total Betti number of a multiset of blocks with genus summing to
/// exactly k, for k = 1..=k_max. Ties keep the composition found first when
/// blocks are tried in list order.
pub fn g_table(k_max: usize, blocks: &[Block]) -> Result<GkTable> {
    if blocks.iter().any(|b| b.genus == 0) {
        return Err(Error::InvalidArgument("blocks must have positive genus".into()));
    }
    let mut best: Vec<Option<(usize, usize)>> = vec![None; k_max + 1];
    let mut cost = vec![None; k_max + 1];
    cost[0] = Some(0usize);
    for k in 1..=k_max {
        for (i, b) in blocks.iter().enumerate() {
            if b.genus > k {
                continue;
            }
            if let Some(c) = cost[k - b.genus] {
                let total = c + b.betti;
                if cost[k].map_or(true, |cur| total < cur) {
                    cost[k] = Some(total);
                    best[k] = Some((i, k - b.genus));
                }
            }
        }
    }
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let Some(bound) = cost[k] else {
            return Err(Error::InvalidArgument(format!("no composition of the blocks reaches genus {k}")));
        };
        let mut used = Vec::new();
        let mut at = k;
        while let Some((i, prev)) = best[at] {
            used.push(i);
            at = prev;
        }
        used.sort_unstable();
        rows.push(GkRow {
            k,
            bound,
            blocks: used.into_iter().map(|i| blocks[i].name.clone()).collect(),
        });
    }
    Ok(GkTable {
        blocks: blocks.to_vec(),
        rows,
    })
}

/// K₃,₃ and the Milgram graphs M₄, M₅, M₆, each with its Betti number and
/// genus computed here rather than assumed.
pub fn default_blocks(opts: &SolverOptions) -> Result<Vec<Block>> {
    let k33 = named::k33();
    let mut blocks = vec![Block::new("K33", k33.betti(), min_genus(&k33, opts)?.genus)];
    for k in [4, 5, 6] {
        let (host, t) = milgram_graph(k)?;
        let betti = scaffold(&host, &t)?.graph.betti();
        blocks.push(Block::new(format!("M{k}"), betti, scaffold_genus(&host, &t, opts)?));
    }
    Ok(blocks)
}
