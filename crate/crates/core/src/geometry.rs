//! Half-open axis-parallel boxes and anchored corners in the unit cube.
//!
//! A *corner* is an anchored box `[0, x)`; its volume is the plain coordinate
//! product. A [`TypedBracket`] is a half-open box `[alpha, beta)` carrying the
//! type index assigned to it by the decomposition; its *weight* is the volume
//! difference of the two anchored corners, which is exactly the L1 distance
//! between the corner indicators `1_{[0,alpha)}` and `1_{[0,beta)}`.

use crate::error::{Error, Result};

/// A point of the closed unit cube with exactly `d >= 1` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    /// Validates `d >= 1` and every coordinate in `[0, 1]`.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionZero);
        }
        for (index, &value) in coords.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::CoordinateOutOfRange {
                    index,
                    value,
                    range: "[0,1]",
                });
            }
        }
        Ok(Self { coords })
    }

    /// The origin of `[0,1]^d`.
    pub fn zero(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    /// The far corner of `[0,1]^d`.
    pub fn one(dim: usize) -> Result<Self> {
        Self::new(vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }
}

/// Volume of the anchored box `[0, x)`: the coordinate product, evaluated
/// left to right so that identical inputs give bit-identical results.
pub fn anchored_volume(x: &Point) -> f64 {
    product(x.coords())
}

pub(crate) fn product(coords: &[f64]) -> f64 {
    let mut p = 1.0;
    for &c in coords {
        p *= c;
    }
    p
}

pub(crate) fn corner_between(alpha: &[f64], beta: &[f64], x: &[f64]) -> bool {
    alpha
        .iter()
        .zip(beta.iter())
        .zip(x.iter())
        .all(|((&a, &b), &v)| a <= v && v <= b)
}

pub(crate) fn cell_member(alpha: &[f64], beta: &[f64], x: &[f64]) -> bool {
    alpha
        .iter()
        .zip(beta.iter())
        .zip(x.iter())
        .all(|((&a, &b), &v)| a <= v && v < b)
}

/// A half-open box `[alpha, beta)` tagged with its decomposition type.
///
/// Types `1..=d` mark intervals that may be decomposed further; type `d + 1`
/// marks the corner child that is always emitted as a leaf. For any type
/// `<= d` the last alpha coordinate is zero, which makes the weight equal to
/// the product of the beta coordinates alone.
#[derive(Debug, Clone, PartialEq)]
pub struct TypedBracket {
    alpha: Point,
    beta: Point,
    type_index: u32,
}

impl TypedBracket {
    pub fn new(alpha: Point, beta: Point, type_index: u32) -> Result<Self> {
        if alpha.dim() != beta.dim() {
            return Err(Error::DimensionMismatch {
                expected: alpha.dim(),
                got: beta.dim(),
            });
        }
        let d = alpha.dim();
        if type_index < 1 || type_index as usize > d + 1 {
            return Err(Error::InvalidBracket(format!(
                "type index {type_index} outside 1..={}",
                d + 1
            )));
        }
        for i in 0..d {
            if alpha.coords()[i] > beta.coords()[i] {
                return Err(Error::InvalidBracket(format!(
                    "alpha[{i}] = {} exceeds beta[{i}] = {}",
                    alpha.coords()[i],
                    beta.coords()[i]
                )));
            }
        }
        if type_index as usize <= d && alpha.coords()[d - 1] != 0.0 {
            return Err(Error::InvalidBracket(format!(
                "type {type_index} <= d requires alpha[{}] = 0, got {}",
                d - 1,
                alpha.coords()[d - 1]
            )));
        }
        Ok(Self {
            alpha,
            beta,
            type_index,
        })
    }

    /// The whole cube `[0,1)^d` as the root interval of type 1.
    pub fn unit_cube(dim: usize) -> Result<Self> {
        Self::new(Point::zero(dim)?, Point::one(dim)?, 1)
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim()
    }

    pub fn type_index(&self) -> u32 {
        self.type_index
    }

    pub fn alpha(&self) -> &Point {
        &self.alpha
    }

    pub fn beta(&self) -> &Point {
        &self.beta
    }

    /// Bracket weight `prod(beta) - prod(alpha)`; nonnegative for any valid
    /// bracket.
    pub fn weight(&self) -> f64 {
        anchored_volume(&self.beta) - anchored_volume(&self.alpha)
    }

    /// Lebesgue volume of the half-open cell `[alpha, beta)`.
    pub fn cell_volume(&self) -> f64 {
        let mut v = 1.0;
        for (a, b) in self.alpha.coords().iter().zip(self.beta.coords()) {
            v *= b - a;
        }
        v
    }

    /// Closed bracket membership: does the corner `[0, x)` lie between the
    /// corners `[0, alpha)` and `[0, beta)`, i.e. `alpha <= x <= beta`
    /// componentwise?
    pub fn contains_corner(&self, x: &Point) -> Result<bool> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(corner_between(
            self.alpha.coords(),
            self.beta.coords(),
            x.coords(),
        ))
    }

    /// Half-open cell membership: `alpha <= x < beta` componentwise. Distinct
    /// from [`Self::contains_corner`]; partition checks need this one.
    pub fn cell_contains(&self, x: &Point) -> Result<bool> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(cell_member(
            self.alpha.coords(),
            self.beta.coords(),
            x.coords(),
        ))
    }
}

/// An anchored box `[0, upper)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerBox {
    upper: Point,
}

impl CornerBox {
    pub fn new(upper: Point) -> Self {
        Self { upper }
    }

    pub fn upper(&self) -> &Point {
        &self.upper
    }

    pub fn volume(&self) -> f64 {
        anchored_volume(&self.upper)
    }

    /// Half-open membership `x in [0, upper)`.
    pub fn contains(&self, x: &Point) -> Result<bool> {
        if x.dim() != self.upper.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.upper.dim(),
                got: x.dim(),
            });
        }
        Ok(x.coords()
            .iter()
            .zip(self.upper.coords())
            .all(|(&v, &u)| v < u))
    }
}
