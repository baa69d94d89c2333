//! Deterministic rasterization of planar solution sets.
//!
//! Each pixel centre of a `width x height` grid laid over a rectangular
//! window is classified with the real-arithmetic membership test
//! (boundary-inclusive, like the relations themselves).  Rows are
//! classified in parallel, but pixels are assembled in index order, so the
//! encoded output is byte-identical for any thread count.  The environment
//! variable `QLINSET_THREADS` caps the worker pool.

use rayon::prelude::*;

use qlinset_core::{member_real, QuantIntervalSystem};

use crate::error::CliError;

/// Output encoding of a raster.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum RasterFormat {
    /// Plain (`P2`) portable graymap, maxval 255: member pixels black (0),
    /// non-member pixels white (255).
    Pgm,
    /// One `x1,x2,member` row per pixel, member flagged 1 / 0.
    Csv,
}

/// A rasterization request: the window and the pixel grid laid over it.
///
/// Pixel `(col, row)` has centre
/// `x1 = x1.0 + (col + 1/2) * (x1.1 - x1.0) / width` and
/// `x2 = x2.1 - (row + 1/2) * (x2.1 - x2.0) / height`;
/// row 0 is the top of the image.
#[derive(Clone, Copy, Debug)]
pub struct RasterJob {
    pub x1: (f64, f64),
    pub x2: (f64, f64),
    pub width: usize,
    pub height: usize,
}

impl RasterJob {
    pub fn center(&self, col: usize, row: usize) -> (f64, f64) {
        let dx = (self.x1.1 - self.x1.0) / self.width as f64;
        let dy = (self.x2.1 - self.x2.0) / self.height as f64;
        (
            self.x1.0 + (col as f64 + 0.5) * dx,
            self.x2.1 - (row as f64 + 0.5) * dy,
        )
    }

    fn validate(&self) -> Result<(), CliError> {
        let finite = [self.x1.0, self.x1.1, self.x2.0, self.x2.1]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x1.0 >= self.x1.1 || self.x2.0 >= self.x2.1 {
            return Err(CliError::Arg(format!(
                "window [{},{}]x[{},{}] is not a finite rectangle",
                self.x1.0, self.x1.1, self.x2.0, self.x2.1
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(CliError::Arg("resolution must be at least 1x1".into()));
        }
        Ok(())
    }
}

/// Builds the worker pool, honouring `QLINSET_THREADS`.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(text) = std::env::var("QLINSET_THREADS") {
        let threads: usize = text
            .parse()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| CliError::Arg(format!("QLINSET_THREADS=`{text}` is not a thread count")))?;
        builder = builder.num_threads(threads);
    }
    builder
        .build()
        .map_err(|e| CliError::Arg(format!("cannot build thread pool: {e}")))
}

/// Classifies every pixel centre, row-major from the top-left.
pub fn classify_grid(sys: &QuantIntervalSystem, job: &RasterJob) -> Result<Vec<bool>, CliError> {
    if sys.n() != 2 {
        return Err(CliError::Arg(format!(
            "rasterization needs a 2-column system, this one has {} columns",
            sys.n()
        )));
    }
    job.validate()?;
    // Surface prefix problems once, before fanning out.
    let (x1, x2) = job.center(0, 0);
    member_real(sys, &[x1, x2])?;

    let pool = thread_pool()?;
    let grid = pool.install(|| {
        (0..job.height)
            .into_par_iter()
            .flat_map_iter(|row| {
                (0..job.width).map(move |col| {
                    let (x1, x2) = job.center(col, row);
                    member_real(sys, &[x1, x2])
                        .expect("system validated before classification")
                        .member
                })
            })
            .collect()
    });
    Ok(grid)
}

/// Encodes a classified grid as a plain PGM (`P2`) document with lines
/// shorter than 70 characters.
pub fn encode_pgm(grid: &[bool], width: usize, height: usize) -> String {
    assert_eq!(grid.len(), width * height, "grid size mismatch");
    let mut out = format!("P2\n{width} {height}\n255\n");
    for row in 0..height {
        let mut line = String::new();
        for col in 0..width {
            let token = if grid[row * width + col] { "0" } else { "255" };
            if !line.is_empty() && line.len() + 1 + token.len() > 69 {
                out.push_str(&line);
                out.push('\n');
                line.clear();
            }
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(token);
        }
        if !line.is_empty() {
            out.push_str(&line);
            out.push('\n');
        }
    }
    out
}

/// Encodes a classified grid as CSV rows `x1,x2,member`, in the same
/// top-left row-major order the grid was classified in.
pub fn encode_csv(grid: &[bool], job: &RasterJob) -> String {
    assert_eq!(grid.len(), job.width * job.height, "grid size mismatch");
    let mut out = String::from("x1,x2,member\n");
    for row in 0..job.height {
        for col in 0..job.width {
            let (x1, x2) = job.center(col, row);
            let member = u8::from(grid[row * job.width + col]);
            out.push_str(&format!("{x1},{x2},{member}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlinset_core::{IMatrix, Interval, IVector, Quantifier, RelationSign};

    /// `[1,2] x1 + [1,2] x2 >= [1,1]` with everything universal: the strong
    /// half-plane test `x1 + x2 >= 1` on the positive quadrant.
    fn half_plane() -> QuantIntervalSystem {
        QuantIntervalSystem::new(
            IMatrix::from_rows(vec![vec![Interval::new(1.0, 2.0), Interval::new(1.0, 2.0)]]),
            IVector::new(vec![Interval::new(1.0, 1.0)]),
            vec![Quantifier::ForAll, Quantifier::ForAll],
            vec![Quantifier::ForAll],
            vec![RelationSign::Ge],
            None,
        )
        .unwrap()
    }

    fn job(width: usize, height: usize) -> RasterJob {
        RasterJob {
            x1: (0.0, 2.0),
            x2: (0.0, 2.0),
            width,
            height,
        }
    }

    #[test]
    fn pixel_centers_follow_the_window() {
        let j = job(4, 2);
        assert_eq!(j.center(0, 0), (0.25, 1.5));
        assert_eq!(j.center(3, 1), (1.75, 0.5));
    }

    #[test]
    fn classification_matches_the_half_plane() {
        let sys = half_plane();
        let j = job(4, 4);
        let grid = classify_grid(&sys, &j).unwrap();
        for row in 0..4 {
            for col in 0..4 {
                let (x1, x2) = j.center(col, row);
                // Worst case over the boxes: min coefficient 1 suffices on
                // this quadrant.
                assert_eq!(grid[row * 4 + col], x1 + x2 >= 1.0, "pixel ({col},{row})");
            }
        }
    }

    #[test]
    fn pgm_encoding_is_plain_and_wrapped() {
        let grid = classify_grid(&half_plane(), &job(30, 30)).unwrap();
        let pgm = encode_pgm(&grid, 30, 30);
        let mut lines = pgm.lines();
        assert_eq!(lines.next(), Some("P2"));
        assert_eq!(lines.next(), Some("30 30"));
        assert_eq!(lines.next(), Some("255"));
        for line in lines {
            assert!(line.len() < 70, "overlong line: {line:?}");
            assert!(line
                .split(' ')
                .all(|tok| tok == "0" || tok == "255"));
        }
    }

    #[test]
    fn csv_rows_carry_centers_and_flags() {
        let j = job(2, 1);
        let csv = encode_csv(&[true, false], &j);
        assert_eq!(csv, "x1,x2,member\n0.5,1,1\n1.5,1,0\n");
    }

    #[test]
    fn non_planar_systems_and_bad_windows_are_refused() {
        let sys = half_plane();
        let mut bad = job(4, 4);
        bad.x1 = (1.0, 1.0);
        assert!(classify_grid(&sys, &bad).is_err());

        let one_dim = QuantIntervalSystem::new(
            IMatrix::from_rows(vec![vec![Interval::new(1.0, 2.0)]]),
            IVector::new(vec![Interval::new(1.0, 1.0)]),
            vec![Quantifier::ForAll],
            vec![Quantifier::ForAll],
            vec![RelationSign::Ge],
            None,
        )
        .unwrap();
        assert!(classify_grid(&one_dim, &job(4, 4)).is_err());
    }
}
