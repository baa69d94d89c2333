//! Small dense interval matrices and vectors.
//!
//! Only the operations the membership forms need: a matrix-vector product
//! with a *real* vector, componentwise `dual` / `mid` / `rad` / negation,
//! vector sums and differences, and real-matrix helpers (Hadamard product,
//! absolute value).  Everything is row-major and desk-scale; dimension
//! mismatches are programming errors and panic.

use std::fmt;

use crate::interval::Interval;

/// A dense row-major matrix of directed intervals.
#[derive(Clone, PartialEq, Eq)]
pub struct IMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Interval>,
}

impl IMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Interval>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        IMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Interval>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "rows have unequal lengths"
        );
        IMatrix::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    /// A `rows x cols` matrix of `[0,0]` entries.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMatrix::new(rows, cols, vec![Interval::ZERO; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Interval {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Interval) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[Interval] {
        &self.data
    }

    fn map(&self, f: impl Fn(Interval) -> Interval) -> IMatrix {
        IMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().copied().map(f).collect(),
        }
    }

    /// Componentwise endpoint swap.
    pub fn dual(&self) -> IMatrix {
        self.map(Interval::dual)
    }

    /// Componentwise opposite.
    pub fn neg(&self) -> IMatrix {
        self.map(|u| -u)
    }

    /// Componentwise midpoint.
    ///
    /// # Panics
    ///
    /// Panics on infinite entries.
    pub fn mid(&self) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|u| u.mid().expect("mid requires finite entries"))
                .collect(),
        }
    }

    /// Componentwise radius (negative on improper entries).
    ///
    /// # Panics
    ///
    /// Panics on infinite entries.
    pub fn rad(&self) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|u| u.rad().expect("rad requires finite entries"))
                .collect(),
        }
    }
}

impl fmt::Debug for IMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A vector of directed intervals.
#[derive(Clone, PartialEq, Eq)]
pub struct IVector {
    data: Vec<Interval>,
}

impl IVector {
    pub fn new(data: Vec<Interval>) -> Self {
        IVector { data }
    }

    pub fn zero(len: usize) -> Self {
        IVector::new(vec![Interval::ZERO; len])
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> Interval {
        self.data[i]
    }

    pub fn set(&mut self, i: usize, value: Interval) {
        self.data[i] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = Interval> + '_ {
        self.data.iter().copied()
    }

    pub fn dual(&self) -> IVector {
        IVector::new(self.data.iter().map(|u| u.dual()).collect())
    }

    pub fn neg(&self) -> IVector {
        IVector::new(self.data.iter().map(|u| -*u).collect())
    }

    /// Componentwise midpoint; panics on infinite entries.
    pub fn mid(&self) -> Vec<f64> {
        self.data
            .iter()
            .map(|u| u.mid().expect("mid requires finite entries"))
            .collect()
    }

    /// Componentwise radius; panics on infinite entries.
    pub fn rad(&self) -> Vec<f64> {
        self.data
            .iter()
            .map(|u| u.rad().expect("rad requires finite entries"))
            .collect()
    }

    /// Componentwise sum.
    ///
    /// # Panics
    ///
    /// Panics on length mismatch or an indeterminate endpoint sum.
    pub fn add(&self, other: &IVector) -> IVector {
        assert_eq!(self.len(), other.len(), "vector length mismatch");
        IVector::new(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&u, &v)| u + v)
                .collect(),
        )
    }

    /// Componentwise difference `self - other`.
    pub fn sub(&self, other: &IVector) -> IVector {
        self.add(&other.neg())
    }
}

impl fmt::Debug for IVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, u) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}")?;
        }
        write!(f, ")")
    }
}

/// Interval-matrix times real-vector product.
///
/// Row `i` of the result is the interval sum of `x_j * A[i][j]` over `j`
/// (scaling by the sign rule, then endpointwise addition).  All entries and
/// coordinates must be finite.
///
/// # Panics
///
/// Panics on dimension mismatch or non-finite input.
pub fn mat_vec(a: &IMatrix, x: &[f64]) -> IVector {
    assert_eq!(a.cols(), x.len(), "matrix-vector dimension mismatch");
    assert!(
        a.entries().iter().all(|u| u.is_finite()),
        "mat_vec requires finite matrix entries"
    );
    assert!(
        x.iter().all(|v| v.is_finite()),
        "mat_vec requires finite coordinates"
    );
    let rows = (0..a.rows())
        .map(|i| {
            (0..a.cols()).fold(Interval::ZERO, |acc, j| acc + a.get(i, j).scale(x[j]))
        })
        .collect();
    IVector::new(rows)
}

/// A dense row-major matrix of reals.
#[derive(Clone, PartialEq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        RMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j]
    }

    /// Componentwise (Hadamard) product.
    ///
    /// # Panics
    ///
    /// Panics on shape mismatch.
    pub fn hadamard(&self, other: &RMatrix) -> RMatrix {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "hadamard product requires equal shapes"
        );
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Ordinary real matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0.0, |acc, j| acc + self.get(i, j) * x[j]))
            .collect()
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Componentwise absolute value of a real vector.
pub fn abs_vec(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v.abs()).collect()
}
