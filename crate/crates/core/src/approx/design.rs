//! `(n, M, 2)` covering designs: families of `M`-subsets of `{1..n}` such that
//! every pair of points lies in some block.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::model::all_pairs;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("block size {m} is outside 2..={n}")]
    BadBlockSize { n: usize, m: usize },
    #[error("design has no blocks")]
    NoBlocks,
    #[error("block {block} has {got} elements, expected {expected}")]
    BlockSize { block: usize, got: usize, expected: usize },
    #[error("block {block} repeats element {element}")]
    RepeatedElement { block: usize, element: usize },
    #[error("block {block} contains {element}, outside 1..={n}")]
    OutOfRange { block: usize, element: usize, n: usize },
    #[error("blocks {first} and {second} are identical")]
    DuplicateBlock { first: usize, second: usize },
    #[error("pair {{{j},{k}}} is not covered by any block")]
    Uncovered { j: usize, k: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringDesign {
    n: usize,
    block_size: usize,
    /// Each block sorted ascending; blocks in input order.
    blocks: Vec<Vec<usize>>,
}

impl CoveringDesign {
    /// Validates and stores a design. Block numbers in errors are 1-based.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let first = blocks.first().ok_or(DesignError::NoBlocks)?;
        let m = first.len();
        if m < 2 || m > n {
            return Err(DesignError::BadBlockSize { n, m });
        }
        let mut seen: Vec<BTreeSet<usize>> = Vec::with_capacity(blocks.len());
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (idx, block) in blocks.into_iter().enumerate() {
            let no = idx + 1;
            if block.len() != m {
                return Err(DesignError::BlockSize { block: no, got: block.len(), expected: m });
            }
            let mut set = BTreeSet::new();
            for &v in &block {
                if v == 0 || v > n {
                    return Err(DesignError::OutOfRange { block: no, element: v, n });
                }
                if !set.insert(v) {
                    return Err(DesignError::RepeatedElement { block: no, element: v });
                }
            }
            if let Some(prev) = seen.iter().position(|s| *s == set) {
                return Err(DesignError::DuplicateBlock { first: prev + 1, second: no });
            }
            sorted_blocks.push(set.iter().copied().collect());
            seen.push(set);
        }
        for p in all_pairs(n) {
            if !seen.iter().any(|s| s.contains(&p.j()) && s.contains(&p.k())) {
                return Err(DesignError::Uncovered { j: p.j(), k: p.k() });
            }
        }
        Ok(CoveringDesign { n, block_size: m, blocks: sorted_blocks })
    }

    /// Reads one block per line as whitespace-separated 1-based indices.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(n: usize, text: &str) -> Result<Self, DesignError> {
        let mut blocks = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let block = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| DesignError::Syntax {
                        line: idx + 1,
                        message: format!("expected a vertex index, found {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(block);
        }
        CoveringDesign::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

impl fmt::Display for CoveringDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            let line: Vec<String> = block.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Builds a covering from `ceil(n/mu)` consecutive chunks of `mu = floor(M/2)`
/// points (the last chunk shifted back to stay full): every union of two
/// chunks becomes a block, topped up to exactly `M` points with the smallest
/// missing indices. Blocks come out in lexicographic order without repeats.
pub fn covering_design(n: usize, m: usize) -> Result<CoveringDesign, DesignError> {
    if m < 2 || m > n {
        return Err(DesignError::BadBlockSize { n, m });
    }
    let mu = m / 2;
    let chunks: Vec<Vec<usize>> = (0..n.div_ceil(mu))
        .map(|i| {
            let start = (i * mu + 1).min(n + 1 - mu);
            (start..start + mu).collect()
        })
        .collect();
    let pad = |mut set: BTreeSet<usize>| {
        let mut v = 1;
        while set.len() < m {
            set.insert(v);
            v += 1;
        }
        set
    };
    let mut blocks: BTreeSet<Vec<usize>> = BTreeSet::new();
    if chunks.len() == 1 {
        blocks.insert(pad(chunks[0].iter().copied().collect()).into_iter().collect());
    }
    for a in 0..chunks.len() {
        for b in a + 1..chunks.len() {
            let set: BTreeSet<usize> = chunks[a].iter().chain(&chunks[b]).copied().collect();
            blocks.insert(pad(set).into_iter().collect());
        }
    }
    CoveringDesign::new(n, blocks.into_iter().collect())
}
