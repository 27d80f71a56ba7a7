//! Matrix files.
//!
//! Text form:
//!
//! ```text
//! bim v1
//! gf(2^8)
//! 4 4 2
//! 1 0 3 7
//! ...
//! ```
//!
//! Line 2 is the field notation, line 3 is `rows cols p` (the block size is
//! optional metadata and omitted when unknown), then one line per row of
//! space-separated decimal codes. The JSON form carries the same fields on a
//! single line:
//! `{"format":"bim","version":1,"field":"gf(2)","rows":2,"cols":2,"p":2,"data":[[1,0],[0,1]]}`.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::Matrix;

pub const TEXT_MAGIC: &str = "bim v1";
pub const FORMAT_NAME: &str = "bim";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed matrix file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, FormatError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(FormatError::Malformed(format!("unknown format {other:?}"))),
        }
    }
}

/// A matrix plus the optional block size recorded alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub matrix: Matrix,
    pub block_size: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct JsonFile {
    format: String,
    version: u32,
    field: String,
    rows: usize,
    cols: usize,
    p: Option<usize>,
    data: Vec<Vec<u32>>,
}

fn malformed(msg: impl Into<String>) -> FormatError {
    FormatError::Malformed(msg.into())
}

impl MatrixFile {
    pub fn new(matrix: Matrix, block_size: Option<usize>) -> Self {
        MatrixFile { matrix, block_size }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_text(&self) -> String {
        let m = &self.matrix;
        let mut out = format!("{TEXT_MAGIC}\n{}\n{} {}", m.field(), m.rows(), m.cols());
        if let Some(p) = self.block_size {
            out.push_str(&format!(" {p}"));
        }
        out.push('\n');
        out.push_str(&m.to_string());
        out
    }

    pub fn to_json(&self) -> String {
        let m = &self.matrix;
        let file = JsonFile {
            format: FORMAT_NAME.to_string(),
            version: FORMAT_VERSION,
            field: m.field().to_string(),
            rows: m.rows(),
            cols: m.cols(),
            p: self.block_size,
            data: (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.code()).collect()).collect(),
        };
        let mut s = serde_json::to_string(&file).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Parses either form; JSON is recognized by a leading `{`.
    pub fn parse(input: &str) -> Result<Self, FormatError> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }

    pub fn parse_text(input: &str) -> Result<Self, FormatError> {
        let mut lines = input.lines();
        if lines.next().map(str::trim_end) != Some(TEXT_MAGIC) {
            return Err(malformed(format!("first line must be {TEXT_MAGIC:?}")));
        }
        let field: FieldSpec = lines.next().ok_or_else(|| malformed("missing field line"))?.trim().parse()?;
        let dims: Vec<usize> = lines
            .next()
            .ok_or_else(|| malformed("missing dimension line"))?
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| malformed(format!("bad dimension {t:?}"))))
            .collect::<Result<_, _>>()?;
        let (rows, cols, block_size) = match dims[..] {
            [r, c] => (r, c, None),
            [r, c, p] => (r, c, Some(p)),
            _ => return Err(malformed("dimension line must be `rows cols [p]`")),
        };
        let body: Vec<&str> = lines.filter(|l| !l.trim().is_empty()).collect();
        if body.len() != rows {
            return Err(malformed(format!("expected {rows} rows, found {}", body.len())));
        }
        let mut codes = Vec::with_capacity(rows * cols);
        for (i, line) in body.iter().enumerate() {
            let before = codes.len();
            for t in line.split_whitespace() {
                codes.push(t.parse::<u32>().map_err(|_| malformed(format!("bad code {t:?} in row {i}")))?);
            }
            if codes.len() - before != cols {
                return Err(malformed(format!("row {i} has {} entries, expected {cols}", codes.len() - before)));
            }
        }
        Ok(MatrixFile { matrix: Matrix::from_codes(rows, cols, field, &codes)?, block_size })
    }

    pub fn parse_json(input: &str) -> Result<Self, FormatError> {
        let file: JsonFile = serde_json::from_str(input).map_err(|e| malformed(e.to_string()))?;
        if file.format != FORMAT_NAME || file.version != FORMAT_VERSION {
            return Err(malformed(format!("unsupported format {} v{}", file.format, file.version)));
        }
        let field: FieldSpec = file.field.parse()?;
        if file.data.len() != file.rows || file.data.iter().any(|r| r.len() != file.cols) {
            return Err(malformed(format!("data does not match {}x{}", file.rows, file.cols)));
        }
        let codes: Vec<u32> = file.data.concat();
        Ok(MatrixFile { matrix: Matrix::from_codes(file.rows, file.cols, field, &codes)?, block_size: file.p })
    }

    pub fn save(&self, path: &Path, format: Format) -> Result<(), FormatError> {
        fs::write(path, self.render(format))?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, FormatError> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MatrixFile {
        let f = FieldSpec::binary_with_modulus(8, 0x11d).unwrap();
        MatrixFile::new(Matrix::from_rows(f, &[[1, 2, 3, 255], [0, 9, 8, 7]]).unwrap(), Some(2))
    }

    #[test]
    fn text_layout() {
        let f = FieldSpec::prime(2).unwrap();
        let file = MatrixFile::new(Matrix::identity(2, f), Some(2));
        assert_eq!(file.to_text(), "bim v1\ngf(2)\n2 2 2\n1 0\n0 1\n");
        let file = MatrixFile::new(Matrix::identity(2, f), None);
        assert_eq!(file.to_text(), "bim v1\ngf(2)\n2 2\n1 0\n0 1\n");
    }

    #[test]
    fn json_layout() {
        let f = FieldSpec::prime(2).unwrap();
        let file = MatrixFile::new(Matrix::identity(2, f), Some(2));
        assert_eq!(
            file.to_json(),
            "{\"format\":\"bim\",\"version\":1,\"field\":\"gf(2)\",\"rows\":2,\"cols\":2,\"p\":2,\"data\":[[1,0],[0,1]]}\n"
        );
    }

    #[test]
    fn round_trip_keeps_modulus() {
        let file = sample();
        for fmt in [Format::Text, Format::Json] {
            let back = MatrixFile::parse(&file.render(fmt)).unwrap();
            assert_eq!(back, file);
            assert_eq!(back.matrix.field().modulus_polynomial(), Some(0x11d));
        }
    }

    #[test]
    fn malformed_inputs() {
        let bad = [
            "",
            "bim v2\ngf(2)\n1 1\n0\n",
            "bim v1\ngf(4)\n1 1\n0\n",
            "bim v1\ngf(2)\n2 2\n1 0\n",
            "bim v1\ngf(2)\n2 2\n1 0\n0 1 1\n",
            "bim v1\ngf(2)\n1 1\n2\n",
            "bim v1\ngf(2)\n1\n1\n",
            "bim v1\ngf(2)\n1 1\nx\n",
            "{\"format\":\"bim\",\"version\":1,\"field\":\"gf(2)\",\"rows\":1,\"cols\":2,\"p\":null,\"data\":[[1]]}",
            "{\"format\":\"other\",\"version\":1,\"field\":\"gf(2)\",\"rows\":1,\"cols\":1,\"p\":null,\"data\":[[1]]}",
            "{not json",
        ];
        for s in bad {
            assert!(MatrixFile::parse(s).is_err(), "{s:?}");
        }
    }
}
