//! The three-valued relation rig and call matrices over it.
//!
//! A [`Relation`] says how a call argument compares to a parameter of the
//! calling function under the structural term order: strictly smaller,
//! (at least) equal, or unknown. Parallel combination ([`Relation::plus`])
//! merges independent evidence about the same pair, serial combination
//! ([`Relation::times`]) chains relations through an intermediate value.
//! With `Unknown` as zero and `Equal` as one these form a commutative rig,
//! so matrix multiplication composes relation matrices the usual way.
//!
//! A [`CallMatrix`] has one row per argument of the called function and one
//! column per parameter of the calling function, with at most one known
//! entry per row: the extractor can relate each argument to at most one
//! parameter, and that shape is preserved by multiplication.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Less,
    Equal,
    Unknown,
}

pub const RELATIONS: [Relation; 3] = [Relation::Less, Relation::Equal, Relation::Unknown];

impl Relation {
    /// Parallel combination: `<` dominates, `?` is neutral.
    pub fn plus(self, other: Relation) -> Relation {
        use Relation::*;
        match (self, other) {
            (Less, _) | (_, Less) => Less,
            (Equal, _) | (_, Equal) => Equal,
            (Unknown, Unknown) => Unknown,
        }
    }

    /// Serial combination: `?` destroys all information, `=` is neutral.
    pub fn times(self, other: Relation) -> Relation {
        use Relation::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (Less, _) | (_, Less) => Less,
            (Equal, Equal) => Equal,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Relation::Less => '<',
            Relation::Equal => '=',
            Relation::Unknown => '?',
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixError {
    /// A row has more than one entry different from `Unknown`.
    RowConstraint { row: usize },
    DimensionMismatch,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::RowConstraint { row } => {
                write!(f, "row {} has more than one known relation", row)
            }
            MatrixError::DimensionMismatch => write!(f, "matrix dimensions do not agree"),
        }
    }
}

/// Matrix over [`Relation`], row-major, with at most one non-`Unknown`
/// entry per row. Zero-dimensional matrices are legal; constants have
/// arity 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CallMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Relation>,
}

impl CallMatrix {
    /// Builds a matrix from row-major entries, rejecting rows that violate
    /// the one-known-entry-per-row constraint.
    pub fn new(rows: usize, cols: usize, entries: Vec<Relation>) -> Result<Self, MatrixError> {
        if entries.len() != rows.checked_mul(cols).ok_or(MatrixError::DimensionMismatch)? {
            return Err(MatrixError::DimensionMismatch);
        }
        for row in 0..rows {
            let known = entries[row * cols..(row + 1) * cols]
                .iter()
                .filter(|r| **r != Relation::Unknown)
                .count();
            if known > 1 {
                return Err(MatrixError::RowConstraint { row });
            }
        }
        Ok(CallMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Relation>>, cols: usize) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MatrixError::DimensionMismatch);
            }
            entries.extend(row);
        }
        Self::new(n, cols, entries)
    }

    /// All-`Unknown` matrix.
    pub fn unknown(rows: usize, cols: usize) -> Self {
        CallMatrix {
            rows,
            cols,
            entries: vec![Relation::Unknown; rows * cols],
        }
    }

    /// `Equal` on the diagonal, `Unknown` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::unknown(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Relation::Equal;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Relation {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Relation] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    /// Matrix product under (`plus`, `times`); the result again satisfies
    /// the per-row constraint.
    pub fn multiply(&self, rhs: &CallMatrix) -> Result<CallMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimensionMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Relation::Unknown;
                for k in 0..self.cols {
                    acc = acc.plus(self.get(i, k).times(rhs.get(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(Self::new(self.rows, rhs.cols, entries)
            .expect("a product of call matrices is a call matrix"))
    }

    pub fn diagonal(&self) -> Result<Vec<Relation>, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::DimensionMismatch);
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).collect())
    }
}

/// Rows rendered `[<?][?=]`, one bracket group per row.
impl fmt::Display for CallMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}
