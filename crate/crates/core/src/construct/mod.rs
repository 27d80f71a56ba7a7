//! Inductive construction of `(n, p)` block invertible square matrices.
//!
//! Start from a random invertible `p x p` matrix `M` and repeatedly grow a
//! `(t, p)` block invertible square matrix to size `t + p`:
//!
//! ```text
//!     N = [ M  Y             ]
//!         [ X  X M^-1 Y + W  ]
//! ```
//!
//! `X` is one row of blocks of `M` (`p x t`), `Y` one column of blocks
//! (`t x p`), and `W` is chosen by [`complete_w`] so that the corner is
//! invertible. Since
//! `[[M, 0], [X, W]] * [[I, M^-1 Y], [0, I]] = N`, `N` is invertible, and all
//! of its blocks are blocks of `M`, `X`, `Y` or the corner.

mod kronecker;
mod lemma;
mod sample;

pub use kronecker::{
    find_all_nonzero_invertible, kronecker_generate, kronecker_generate_with, KroneckerOutcome, SearchMode,
    DEFAULT_MAX_TRIALS, EXHAUSTIVE_LIMIT,
};
pub use lemma::{complete_w, lemma_a, Completion};
pub use sample::{acceptance_ratio, gl_count, random_invertible};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::par::Exec;
use crate::rng::SplitMix64;
use crate::verify::block_verdicts;

/// Which row and column of blocks of `M` become `X` and `Y`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum StripChoice {
    #[default]
    First,
    Last,
    /// Row index then column index, each drawn with `rng.below(t / p)`.
    Random,
}

impl FromStr for StripChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "first" => Ok(StripChoice::First),
            "last" => Ok(StripChoice::Last),
            "random" => Ok(StripChoice::Random),
            _ => Err(Error::InvalidConfig(format!("unknown strip choice {s:?}"))),
        }
    }
}

impl fmt::Display for StripChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StripChoice::First => "first",
            StripChoice::Last => "last",
            StripChoice::Random => "random",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorConfig {
    pub n: usize,
    pub p: usize,
    pub field: FieldSpec,
    pub seed: u64,
    pub strip_choice: StripChoice,
}

impl GeneratorConfig {
    pub fn new(n: usize, p: usize, field: FieldSpec, seed: u64) -> Self {
        GeneratorConfig { n, p, field, seed, strip_choice: StripChoice::First }
    }

    pub fn with_strip(mut self, strip_choice: StripChoice) -> Self {
        self.strip_choice = strip_choice;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 2 {
            return Err(Error::BlockTooSmall(self.p));
        }
        if self.n < self.p {
            return Err(Error::InvalidConfig(format!("n = {} is smaller than p = {}", self.n, self.p)));
        }
        if !self.n.is_multiple_of(self.p) {
            return Err(Error::InvalidConfig(format!("p must divide n (n = {}, p = {})", self.n, self.p)));
        }
        Ok(())
    }

    /// Number of growth steps, `(n - p) / p`.
    pub fn extension_steps(&self) -> usize {
        (self.n - self.p) / self.p
    }
}

/// Grows a `(t, p)` block invertible square matrix into a `(t + p, p)` one.
///
/// The input is re-verified first; a matrix that is not block invertible
/// square is rejected with [`Error::InputNotBlockInvertible`].
pub fn extend(m: &Matrix, p: usize, rng: &mut SplitMix64, strip: StripChoice) -> Result<Matrix> {
    if p < 2 {
        return Err(Error::BlockTooSmall(p));
    }
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let t = m.rows();
    let not_bi = || Error::InputNotBlockInvertible { t, p };
    let verdicts = block_verdicts(m, p, Exec::default())?;
    if verdicts.iter().flatten().any(|ok| !ok) {
        return Err(not_bi());
    }
    let m_inv = m.inverse().map_err(|_| not_bi())?;

    let blocks = t / p;
    let (row, col) = match strip {
        StripChoice::First => (0, 0),
        StripChoice::Last => (blocks - 1, blocks - 1),
        StripChoice::Random => {
            let i = rng.below(blocks as u64) as usize;
            let j = rng.below(blocks as u64) as usize;
            (i, j)
        }
    };
    let x = m.blocks_row(p, row)?;
    let y = m.blocks_col(p, col)?;
    let s = x.mul(&m_inv)?.mul(&y)?;
    let corner = complete_w(&s)?.corner;
    Matrix::assemble(&[vec![m.clone(), y], vec![x, corner]])
}

/// Step-by-step generator; each [`Generator::step`] performs one extension.
#[derive(Debug, Clone)]
pub struct Generator {
    p: usize,
    strip: StripChoice,
    rng: SplitMix64,
    current: Matrix,
}

impl Generator {
    /// Seeds the generator with a uniform random invertible `p x p` matrix.
    pub fn new(p: usize, field: FieldSpec, seed: u64, strip: StripChoice) -> Result<Self> {
        if p < 2 {
            return Err(Error::BlockTooSmall(p));
        }
        let mut rng = SplitMix64::new(seed);
        let current = random_invertible(p, field, &mut rng);
        Ok(Generator { p, strip, rng, current })
    }

    pub fn current(&self) -> &Matrix {
        &self.current
    }

    pub fn step(&mut self) -> Result<&Matrix> {
        self.current = extend(&self.current, self.p, &mut self.rng, self.strip)?;
        Ok(&self.current)
    }

    pub fn into_matrix(self) -> Matrix {
        self.current
    }
}

/// An `n x n` matrix whose `p x p` blocks are all invertible and which is
/// itself invertible. Deterministic in `config`.
pub fn generate(config: &GeneratorConfig) -> Result<Matrix> {
    config.validate()?;
    let mut g = Generator::new(config.p, config.field, config.seed, config.strip_choice)?;
    for _ in 0..config.extension_steps() {
        g.step()?;
    }
    Ok(g.into_matrix())
}

/// Runs independent generations, returning results in input order.
pub fn generate_batch(configs: &[GeneratorConfig], exec: Exec) -> Vec<Result<Matrix>> {
    exec.map_slice(configs, generate)
}
