//! Block invertible square matrices over finite fields.
//!
//! An `(n, p)` block invertible square matrix is an invertible `n x n`
//! matrix whose `p x p` blocks are all invertible. [`construct::generate`]
//! builds one for any `p >= 2` dividing `n` over any supported field, and
//! [`verify::verify_blocks`] checks the property independently.
//!
//! ```
//! use bim::{construct::{generate, GeneratorConfig}, field::FieldSpec, verify::verify_blocks};
//!
//! let gf2 = FieldSpec::prime(2).unwrap();
//! let m = generate(&GeneratorConfig::new(8, 2, gf2, 7)).unwrap();
//! assert!(verify_blocks(&m, 2).unwrap().is_block_invertible_square);
//! ```

pub mod cli;
pub mod construct;
pub mod decompose;
pub mod error;
pub mod field;
pub mod format;
pub mod matrix;
pub mod par;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldKind, FieldSpec};
pub use matrix::Matrix;
