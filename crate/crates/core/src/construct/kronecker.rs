use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::par::Exec;
use crate::rng::SplitMix64;

use super::sample::random_invertible;

/// Fields and sizes with `q^(p^2)` at most this many matrices are searched
/// exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;
/// Default number of random candidates tried above [`EXHAUSTIVE_LIMIT`].
pub const DEFAULT_MAX_TRIALS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Every all-nonzero candidate was examined (`(q-1)^(p^2)` of them).
    Exhaustive { candidates: u64 },
    /// Random all-nonzero candidates, capped at `trials`.
    Randomized { trials: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KroneckerOutcome {
    /// `product = a (x) b`, a `(p^2, p)` block invertible square matrix.
    Found { a: Matrix, b: Matrix, product: Matrix, mode: SearchMode },
    /// No invertible matrix with all entries nonzero was found. Proves
    /// nonexistence only for [`SearchMode::Exhaustive`].
    NoAllNonzeroMatrix { mode: SearchMode },
}

impl KroneckerOutcome {
    /// False only for a capped random search that found nothing.
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, KroneckerOutcome::NoAllNonzeroMatrix { mode: SearchMode::Randomized { .. } })
    }
}

/// Searches for an invertible `p x p` matrix with no zero entry.
///
/// Exhaustive candidates are enumerated in lexicographic order of their
/// row-major codes, so the first hit is the same for every execution strategy.
pub fn find_all_nonzero_invertible(
    p: usize,
    field: FieldSpec,
    rng: &mut SplitMix64,
    max_trials: u64,
    exec: Exec,
) -> (Option<Matrix>, SearchMode) {
    let q = u64::from(field.order());
    let cells = (p * p) as u32;
    let exhaustive = q.checked_pow(cells).is_some_and(|total| total <= EXHAUSTIVE_LIMIT);
    if exhaustive {
        let nonzero = q - 1;
        let candidates = nonzero.pow(cells);
        let hit = exec.find_first(candidates, |mut index| {
            let mut codes = vec![0u32; p * p];
            for c in codes.iter_mut().rev() {
                *c = (index % nonzero) as u32 + 1;
                index /= nonzero;
            }
            let m = Matrix::from_codes(p, p, field, &codes).expect("codes below order");
            m.is_invertible().then_some(m)
        });
        return (hit, SearchMode::Exhaustive { candidates });
    }
    for _ in 0..max_trials {
        let codes: Vec<u32> = (0..p * p).map(|_| rng.below(q - 1) as u32 + 1).collect();
        let m = Matrix::from_codes(p, p, field, &codes).expect("codes below order");
        if m.is_invertible() {
            return (Some(m), SearchMode::Randomized { trials: max_trials });
        }
    }
    (None, SearchMode::Randomized { trials: max_trials })
}

/// Kronecker construction of a `(p^2, p)` block invertible square matrix.
pub fn kronecker_generate(p: usize, field: FieldSpec, rng: &mut SplitMix64) -> Result<KroneckerOutcome> {
    kronecker_generate_with(p, field, rng, DEFAULT_MAX_TRIALS, Exec::default())
}

pub fn kronecker_generate_with(
    p: usize,
    field: FieldSpec,
    rng: &mut SplitMix64,
    max_trials: u64,
    exec: Exec,
) -> Result<KroneckerOutcome> {
    if p < 2 {
        return Err(Error::BlockTooSmall(p));
    }
    match find_all_nonzero_invertible(p, field, rng, max_trials, exec) {
        (Some(a), mode) => {
            let b = random_invertible(p, field, rng);
            let product = a.kronecker(&b)?;
            Ok(KroneckerOutcome::Found { a, b, product, mode })
        }
        (None, mode) => Ok(KroneckerOutcome::NoAllNonzeroMatrix { mode }),
    }
}
