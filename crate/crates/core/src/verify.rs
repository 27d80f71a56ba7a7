//! Block invertibility checks.
//!
//! A matrix blocked into `p x p` blocks is block invertible when every block
//! is invertible, and a block invertible square matrix when it is also square
//! and invertible as a whole. Every check here is an actual inversion.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::Matrix;
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Whole {
    Yes,
    No,
    NotSquare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    /// Row count.
    pub n: usize,
    /// Column count.
    pub m: usize,
    pub p: usize,
    pub whole_invertible: Whole,
    /// `n/p` rows of `m/p` verdicts.
    pub block_verdicts: Vec<Vec<bool>>,
    /// Singular blocks, row-major.
    pub failing_blocks: Vec<(usize, usize)>,
    pub is_block_invertible: bool,
    pub is_block_invertible_square: bool,
}

pub fn verify_blocks(m: &Matrix, p: usize) -> Result<BlockReport> {
    verify_blocks_with(m, p, Exec::default())
}

/// Like [`verify_blocks`], with the per-block inversions run under `exec`.
pub fn verify_blocks_with(m: &Matrix, p: usize, exec: Exec) -> Result<BlockReport> {
    let verdicts = block_verdicts(m, p, exec)?;
    let whole = if m.is_square() {
        if m.inverse().is_ok() {
            Whole::Yes
        } else {
            Whole::No
        }
    } else {
        Whole::NotSquare
    };
    let failing_blocks: Vec<(usize, usize)> = verdicts
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, ok)| !**ok).map(move |(j, _)| (i, j)))
        .collect();
    let is_block_invertible = failing_blocks.is_empty();
    Ok(BlockReport {
        n: m.rows(),
        m: m.cols(),
        p,
        whole_invertible: whole,
        block_verdicts: verdicts,
        is_block_invertible,
        is_block_invertible_square: is_block_invertible && whole == Whole::Yes,
        failing_blocks,
    })
}

/// Invertibility of each `p x p` block, in grid order.
pub(crate) fn block_verdicts(m: &Matrix, p: usize, exec: Exec) -> Result<Vec<Vec<bool>>> {
    let (br, bc) = m.block_grid(p)?;
    let flat = exec.map_indexed(br * bc, |k| m.submatrix((k / bc) * p, (k % bc) * p, p, p).inverse().is_ok());
    Ok(flat.chunks(bc).map(<[bool]>::to_vec).collect())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl BlockReport {
    /// True when the report meets the bar for its shape: block invertible
    /// square for square input, block invertible otherwise.
    pub fn passes(&self) -> bool {
        if self.n == self.m {
            self.is_block_invertible_square
        } else {
            self.is_block_invertible
        }
    }

    pub fn summary(&self) -> String {
        let whole = match self.whole_invertible {
            Whole::Yes => "yes",
            Whole::No => "no",
            Whole::NotSquare => "not square",
        };
        let mut s = String::new();
        let total = self.block_verdicts.iter().map(Vec::len).sum::<usize>();
        let _ = writeln!(s, "matrix: {}x{}, block size {}", self.n, self.m, self.p);
        let _ = writeln!(s, "invertible blocks: {}/{}", total - self.failing_blocks.len(), total);
        if !self.failing_blocks.is_empty() {
            let list: Vec<String> = self.failing_blocks.iter().map(|(i, j)| format!("({i},{j})")).collect();
            let _ = writeln!(s, "failing blocks: {}", list.join(" "));
        }
        let _ = writeln!(s, "whole matrix invertible: {whole}");
        let _ = writeln!(s, "block invertible: {}", yes_no(self.is_block_invertible));
        let _ = writeln!(s, "block invertible square: {}", yes_no(self.is_block_invertible_square));
        s
    }

    /// Grid of `✓`/`✗` per block followed by the summary lines.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for row in &self.block_verdicts {
            let cells: Vec<&str> = row.iter().map(|&ok| if ok { "✓" } else { "✗" }).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s.push_str(&self.summary());
        s
    }
}
