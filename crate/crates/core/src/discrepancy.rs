//! Guaranteed two-sided star-discrepancy bounds from a bracketing cover.
//!
//! For a leaf `[alpha, beta]` of the cover, every corner `x` with
//! `alpha <= x <= beta` satisfies `vol(alpha) <= vol(x) <= vol(beta)` and
//! `A(alpha) <= A(x) <= A(beta)` for the strict below-count `A`. The maximum
//! of `vol(beta) - A(alpha)/n` and `A(beta)/n - vol(alpha)` therefore
//! dominates the local discrepancy everywhere inside the leaf, and exceeds
//! the supremum by at most the leaf weight. Evaluating the local discrepancy
//! at the leaf corners themselves gives the certified lower bound.

use crate::decomposer::{self, BuildOptions};
use crate::error::{Error, Result};
use crate::geometry::{product, Point, TypedBracket};

/// A nonempty finite point set in `[0,1)^d` with uniform dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::EmptyPointSet);
        };
        let dim = first.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            for (index, &value) in p.coords().iter().enumerate() {
                if !(0.0..1.0).contains(&value) {
                    return Err(Error::CoordinateOutOfRange {
                        index,
                        value,
                        range: "[0,1)",
                    });
                }
            }
        }
        Ok(Self { points })
    }

    /// Builds a point set from a flat row-major coordinate buffer.
    pub fn from_flat(coords: &[f64], dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionZero);
        }
        if coords.is_empty() || coords.len() % dim != 0 {
            return Err(Error::Domain {
                context: "PointSet::from_flat",
                detail: format!(
                    "coordinate buffer of length {} is not a positive multiple of {dim}",
                    coords.len()
                ),
            });
        }
        let points = coords
            .chunks_exact(dim)
            .map(|c| Point::new(c.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees n >= 1
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }
}

/// Number of points strictly inside the anchored box `[0, x)`.
pub fn count_below(points: &PointSet, x: &Point) -> Result<usize> {
    if x.dim() != points.dim() {
        return Err(Error::DimensionMismatch {
            expected: points.dim(),
            got: x.dim(),
        });
    }
    Ok(count_below_coords(points, x.coords()))
}

fn count_below_coords(points: &PointSet, x: &[f64]) -> usize {
    points
        .points
        .iter()
        .filter(|p| p.coords().iter().zip(x).all(|(&c, &b)| c < b))
        .count()
}

/// Certified sandwich around the star discrepancy.
///
/// The guarantee is `lower <= D* <= upper` with `upper <= D* + epsilon`;
/// nothing tighter is promised about `upper - lower`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscrepancyBound {
    pub lower: f64,
    pub upper: f64,
    pub epsilon: f64,
    pub n: usize,
    pub dimension: usize,
    pub cover_size: u64,
}

/// Options for [`disc_sandwich_with`].
#[derive(Debug, Clone, Default)]
#[non_exhaustive]
pub struct SandwichOptions {
    pub parallel: bool,
    pub max_leaves: Option<u64>,
}

impl SandwichOptions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn max_leaves(mut self, n: u64) -> Self {
        self.max_leaves = Some(n);
        self
    }
}

#[derive(Clone, Copy)]
struct Sandwich {
    lower: f64,
    upper: f64,
}

impl Sandwich {
    fn empty() -> Self {
        Self {
            lower: 0.0,
            upper: 0.0,
        }
    }

    fn merge(self, other: Self) -> Self {
        Self {
            lower: self.lower.max(other.lower),
            upper: self.upper.max(other.upper),
        }
    }
}

fn leaf_sandwich(points: &PointSet, leaf: &TypedBracket) -> Sandwich {
    let n = points.len() as f64;
    let alpha = leaf.alpha().coords();
    let beta = leaf.beta().coords();
    let vol_alpha = product(alpha);
    let vol_beta = product(beta);
    let count_alpha = count_below_coords(points, alpha) as f64;
    let count_beta = count_below_coords(points, beta) as f64;
    let upper = (vol_beta - count_alpha / n).max(count_beta / n - vol_alpha);
    let lower = (vol_alpha - count_alpha / n)
        .abs()
        .max((vol_beta - count_beta / n).abs());
    Sandwich {
        lower,
        upper: upper.max(0.0),
    }
}

/// Streams the `(d, epsilon)` cover and folds the per-leaf corner bounds
/// into a [`DiscrepancyBound`]. The cover is never materialized.
pub fn disc_sandwich(points: &PointSet, epsilon: f64) -> Result<DiscrepancyBound> {
    disc_sandwich_with(points, epsilon, &SandwichOptions::default())
}

pub fn disc_sandwich_with(
    points: &PointSet,
    epsilon: f64,
    opts: &SandwichOptions,
) -> Result<DiscrepancyBound> {
    let dim = points.dim();
    let mut build = BuildOptions::new();
    if let Some(n) = opts.max_leaves {
        build = build.max_leaves(n);
    }
    let (stats, acc) = if opts.parallel {
        decomposer::reduce_leaves_parallel(
            dim,
            epsilon,
            &build,
            |leaf| leaf_sandwich(points, leaf),
            Sandwich::merge,
        )?
    } else {
        let mut acc = Sandwich::empty();
        let stats = decomposer::build_cover_with(dim, epsilon, &build, |leaf| {
            acc = acc.merge(leaf_sandwich(points, leaf));
        })?;
        (stats, acc)
    };
    Ok(DiscrepancyBound {
        lower: acc.lower,
        upper: acc.upper,
        epsilon,
        n: points.len(),
        dimension: dim,
        cover_size: stats.leaf_count,
    })
}
