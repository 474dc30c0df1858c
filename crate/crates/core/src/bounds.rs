//! Closed-form cardinality, height, and packing bounds for the generated
//! covers, plus the comparison table row used by the CLI.
//!
//! Binomial-coefficient bounds are evaluated in exact arbitrary-precision
//! integers; everything else is 64-bit floating point, evaluated exactly as
//! displayed with no algebraic rearrangement.

use crate::decomposer;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;

/// Default truncation tolerance for [`f_series`].
pub const F_SERIES_REL_TOL: f64 = 1e-12;
const F_SERIES_MAX_TERMS: usize = 200;

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// Leaves of the triangular tree of width `w` and height `h`:
/// `C(h + w - 1, w - 1)`, exact.
pub fn leaf_count_triangular(width: u64, height: u64) -> Result<BigUint> {
    if width == 0 {
        return Err(Error::Domain {
            context: "leaf_count_triangular",
            detail: "width must be >= 1".into(),
        });
    }
    Ok(binomial(height + width - 1, width - 1))
}

/// Upper bound on the cover cardinality through the triangular-tree
/// embedding: `C(h + d, d)`, exact.
pub fn tree_cardinality_bound(dim: usize, height: u64) -> Result<BigUint> {
    if dim == 0 {
        return Err(Error::DimensionZero);
    }
    Ok(binomial(height + dim as u64, dim as u64))
}

fn check_epsilon_open(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon, "(0,1)"));
    }
    Ok(())
}

fn check_epsilon_half_open(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon, "(0,1]"));
    }
    Ok(())
}

/// `d^d / d!`, evaluated as a product of ratios to avoid overflow.
pub fn dd_over_factorial(dim: usize) -> f64 {
    let d = dim as f64;
    let mut p = 1.0;
    for i in 1..=dim {
        p *= d / i as f64;
    }
    p
}

/// Ceiling height bound `ceil(d * (1/eps - 1))`.
pub fn height_bound(dim: usize, epsilon: f64) -> Result<u64> {
    if dim == 0 {
        return Err(Error::DimensionZero);
    }
    check_epsilon_half_open(epsilon)?;
    Ok((dim as f64 * (1.0 / epsilon - 1.0)).ceil() as u64)
}

/// The historical cardinality bound `(d^d/d!) (ln(1/eps)/eps + 1)^d`,
/// stated for `d >= 3` only.
pub fn thiemard_bound(dim: usize, epsilon: f64) -> Result<f64> {
    if dim < 3 {
        return Err(Error::Domain {
            context: "thiemard_bound",
            detail: format!("stated for d >= 3, got {dim}"),
        });
    }
    check_epsilon_open(epsilon)?;
    let base = (1.0 / epsilon).ln() / epsilon + 1.0;
    Ok(dd_over_factorial(dim) * base.powi(dim as i32))
}

/// The sharper cardinality bound: `2 (1/eps + 1/2) (1/eps)` for `d = 2`, and
/// `(d^d/d!) (1/eps - (1/2)(1 - 3/d))^d` for `d >= 3`.
pub fn new_bound(dim: usize, epsilon: f64) -> Result<f64> {
    check_epsilon_half_open(epsilon)?;
    match dim {
        0 | 1 => Err(Error::Domain {
            context: "new_bound",
            detail: format!("no displayed form for d = {dim}"),
        }),
        2 => {
            let inv = 1.0 / epsilon;
            Ok(2.0 * (inv + 0.5) * inv)
        }
        _ => {
            let d = dim as f64;
            let base = 1.0 / epsilon - 0.5 * (1.0 - 3.0 / d);
            Ok(dd_over_factorial(dim) * base.powi(dim as i32))
        }
    }
}

/// Product-form bound sitting between the binomial and its arithmetic-mean
/// envelope: `(d^d/d!) (1/eps + 1/d)(1/eps)(1/eps - 1/d)...(1/eps - (d-2)/d)`.
pub fn intermediate_bound(dim: usize, epsilon: f64) -> Result<f64> {
    if dim < 2 {
        return Err(Error::Domain {
            context: "intermediate_bound",
            detail: format!("stated for d >= 2, got {dim}"),
        });
    }
    check_epsilon_half_open(epsilon)?;
    let d = dim as f64;
    let inv = 1.0 / epsilon;
    let mut prod = dd_over_factorial(dim);
    for k in 0..dim {
        // offsets +1/d, 0, -1/d, ..., -(d-2)/d
        let factor = inv + (1.0 - k as f64) / d;
        if factor <= 0.0 {
            return Err(Error::Domain {
                context: "intermediate_bound",
                detail: format!("nonpositive factor {factor} at position {k}"),
            });
        }
        prod *= factor;
    }
    Ok(prod)
}

/// The per-level weight-drop refinement series
///
/// ```text
/// f(x) = 1 + sum_{k>=1} (k - 1/d)(k - 1 - 1/d)...(1 - 1/d) / (k+1)! * x^k
/// ```
///
/// truncated once the next term falls below `rel_tol` times the running sum.
/// Satisfies `f(x) >= 1 + ((d-1)/(2d)) x` and equals
/// `d (1 - (1-x)^(1/d)) / x` in closed form.
pub fn f_series(dim: usize, x: f64, rel_tol: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::DimensionZero);
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain {
            context: "f_series",
            detail: format!("x = {x} outside [0,1)"),
        });
    }
    if !(rel_tol > 0.0) {
        return Err(Error::Domain {
            context: "f_series",
            detail: format!("rel_tol = {rel_tol} must be positive"),
        });
    }
    let inv_d = 1.0 / dim as f64;
    let mut sum = 1.0;
    // term_1 = (1 - 1/d)/2! * x; term_{k+1} = term_k * (k+1 - 1/d)/(k+2) * x
    let mut term = (1.0 - inv_d) / 2.0 * x;
    for k in 1..=F_SERIES_MAX_TERMS {
        if term < rel_tol * sum {
            return Ok(sum);
        }
        sum += term;
        term *= (((k + 1) as f64) - inv_d) / ((k + 2) as f64) * x;
    }
    Err(Error::SeriesDiverged {
        max_terms: F_SERIES_MAX_TERMS,
    })
}

/// Refined height bound `ceil(d (1/eps - 1) / f(eps))`.
pub fn improved_height_bound(dim: usize, epsilon: f64) -> Result<u64> {
    if dim == 0 {
        return Err(Error::DimensionZero);
    }
    check_epsilon_open(epsilon)?;
    let f = f_series(dim, epsilon, F_SERIES_REL_TOL)?;
    Ok((dim as f64 * (1.0 / epsilon - 1.0) / f).ceil() as u64)
}

/// Refined cardinality bound built on [`improved_height_bound`]:
/// `2 (q + 3/2)(q + 1)` for `d = 2` and `(d^d/d!) (q + (1/2)(1 + 3/d))^d`
/// for `d >= 3`, with `q = (1/eps - 1)/f(eps)`.
pub fn improved_card_bound(dim: usize, epsilon: f64) -> Result<f64> {
    if dim < 2 {
        return Err(Error::Domain {
            context: "improved_card_bound",
            detail: format!("stated for d >= 2, got {dim}"),
        });
    }
    check_epsilon_open(epsilon)?;
    let f = f_series(dim, epsilon, F_SERIES_REL_TOL)?;
    let q = (1.0 / epsilon - 1.0) / f;
    if dim == 2 {
        Ok(2.0 * (q + 1.5) * (q + 1.0))
    } else {
        let d = dim as f64;
        let base = q + 0.5 * (1.0 + 3.0 / d);
        Ok(dd_over_factorial(dim) * base.powi(dim as i32))
    }
}

/// The previously best known corner-box bound with explicit constants:
/// `max(1, 1.1^(d-101)) (d^d/d!) (1/eps + 1)^d`.
pub fn gpw_bound(dim: usize, epsilon: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::DimensionZero);
    }
    check_epsilon_half_open(epsilon)?;
    let scale = 1.1f64.powi(dim as i32 - 101).max(1.0);
    Ok(scale * dd_over_factorial(dim) * (1.0 / epsilon + 1.0).powi(dim as i32))
}

/// Bracketing count for arbitrary boxes from a corner-box count at half the
/// weight: the square of the input.
pub fn rectangle_bound(corner_bound_at_half_epsilon: f64) -> f64 {
    corner_bound_at_half_epsilon * corner_bound_at_half_epsilon
}

/// Cover-by-functions count from a bracketing count: twice the input.
pub fn delta_cover_bound(bracketing_count: f64) -> f64 {
    2.0 * bracketing_count
}

/// The two packing-number bounds under comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackingBounds {
    /// VC-dimension route: `(d+1) 2^d e^(d+1) eps^-d`.
    pub haussler: f64,
    /// Bracketing route: `(d^d/d!) eps^-d`; smaller for every `d >= 3`.
    pub via_bracketing: f64,
}

pub fn packing_bounds(dim: usize, epsilon: f64) -> Result<PackingBounds> {
    if dim < 3 {
        return Err(Error::Domain {
            context: "packing_bounds",
            detail: format!("bracketing-derived bound stated for d >= 3, got {dim}"),
        });
    }
    check_epsilon_open(epsilon)?;
    let d = dim as f64;
    let inv_pow = epsilon.powi(-(dim as i32));
    Ok(PackingBounds {
        haussler: (d + 1.0) * 2f64.powi(dim as i32) * (d + 1.0).exp() * inv_pow,
        via_bracketing: dd_over_factorial(dim) * inv_pow,
    })
}

/// Stirling envelope `e^d / sqrt(2 pi d)`, dominating `d^d/d!`.
pub fn stirling_factor(dim: usize) -> f64 {
    let d = dim as f64;
    d.exp() / (2.0 * std::f64::consts::PI * d).sqrt()
}

/// Explicit-constant two-dimensional corner-box bound
/// `2 ln2 eps^-2 + 3(ln2 + 1) eps^-1 - (13/9 ln2 - 1)`.
pub fn d2_explicit_bound(epsilon: f64) -> Result<f64> {
    check_epsilon_open(epsilon)?;
    let ln2 = std::f64::consts::LN_2;
    let inv = 1.0 / epsilon;
    Ok(2.0 * ln2 * inv * inv + 3.0 * (ln2 + 1.0) * inv - (13.0 / 9.0 * ln2 - 1.0))
}

/// One row of the bound comparison table. Fields are absent where the
/// corresponding display does not apply to the row's dimension or epsilon.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub dimension: usize,
    pub epsilon: f64,
    pub height_bound: Option<u64>,
    pub improved_height: Option<u64>,
    pub tree_binomial: Option<BigUint>,
    pub new_d2: Option<f64>,
    pub new_dge3: Option<f64>,
    pub intermediate: Option<f64>,
    pub improved_card: Option<f64>,
    pub thiemard: Option<f64>,
    pub gpw: Option<f64>,
    pub d2_explicit: Option<f64>,
    pub rectangle: Option<f64>,
    pub haussler: Option<f64>,
    pub stirling_packing: Option<f64>,
}

impl BoundsRow {
    pub const COLUMNS: [&'static str; 16] = [
        "dimension",
        "epsilon",
        "height_bound",
        "improved_height",
        "tree_binomial",
        "new_d2",
        "new_dge3",
        "intermediate",
        "improved_card",
        "thiemard",
        "gpw",
        "d2_explicit",
        "rectangle",
        "haussler",
        "stirling_packing",
        "delta_cover",
    ];

    /// Smallest applicable corner-box cardinality bound in the row, used to
    /// derive the rectangle and function-cover columns.
    fn best_corner_bound(&self) -> Option<f64> {
        [self.new_d2, self.new_dge3, self.improved_card]
            .into_iter()
            .flatten()
            .fold(None, |best: Option<f64>, v| {
                Some(best.map_or(v, |b| b.min(v)))
            })
    }
}

/// Evaluates every applicable bound at `(dim, epsilon)`.
pub fn bounds_row(dim: usize, epsilon: f64) -> Result<BoundsRow> {
    if dim == 0 {
        return Err(Error::DimensionZero);
    }
    check_epsilon_half_open(epsilon)?;
    let exact_height = decomposer::height(dim, epsilon)? as u64;
    let mut row = BoundsRow {
        dimension: dim,
        epsilon,
        height_bound: Some(height_bound(dim, epsilon)?),
        improved_height: improved_height_bound(dim, epsilon).ok(),
        tree_binomial: Some(tree_cardinality_bound(dim, exact_height)?),
        new_d2: None,
        new_dge3: None,
        intermediate: None,
        improved_card: None,
        thiemard: None,
        gpw: None,
        d2_explicit: None,
        rectangle: None,
        haussler: None,
        stirling_packing: None,
    };
    if dim >= 2 {
        if dim == 2 {
            row.new_d2 = new_bound(dim, epsilon).ok();
            row.d2_explicit = d2_explicit_bound(epsilon).ok();
        } else {
            row.new_dge3 = new_bound(dim, epsilon).ok();
        }
        row.intermediate = intermediate_bound(dim, epsilon).ok();
        row.improved_card = improved_card_bound(dim, epsilon).ok();
        row.gpw = gpw_bound(dim, epsilon).ok();
        row.rectangle = new_bound(dim, epsilon / 2.0).ok().map(rectangle_bound);
    }
    if dim >= 3 {
        row.thiemard = thiemard_bound(dim, epsilon).ok();
        if let Ok(p) = packing_bounds(dim, epsilon) {
            row.haussler = Some(p.haussler);
            row.stirling_packing = Some(stirling_factor(dim) * epsilon.powi(-(dim as i32)));
        }
    }
    Ok(row)
}

/// Function-cover column value for a row: twice its best corner bound.
pub fn row_delta_cover(row: &BoundsRow) -> Option<f64> {
    row.best_corner_bound().map(delta_cover_bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(4, 7), BigUint::ZERO);
    }

    #[test]
    fn binomial_pascal_identity_large() {
        // C(100, 50) = C(99, 49) + C(99, 50); exceeds u64.
        let lhs = binomial(100, 50);
        let rhs = binomial(99, 49) + binomial(99, 50);
        assert_eq!(lhs, rhs);
        assert!(lhs > BigUint::from(u64::MAX));
    }

    #[test]
    fn triangular_leaf_counts() {
        assert_eq!(leaf_count_triangular(1, 9).unwrap(), BigUint::one());
        assert_eq!(leaf_count_triangular(3, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(leaf_count_triangular(4, 3).unwrap(), BigUint::from(20u32));
        assert!(leaf_count_triangular(0, 3).is_err());
    }

    #[test]
    fn tree_bound_values() {
        assert_eq!(tree_cardinality_bound(1, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(tree_cardinality_bound(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(tree_cardinality_bound(5, 0).unwrap(), BigUint::one());
    }

    #[test]
    fn height_bound_values() {
        assert_eq!(height_bound(3, 1.0).unwrap(), 0);
        assert_eq!(height_bound(2, 0.5).unwrap(), 2);
        assert_eq!(height_bound(3, 0.1).unwrap(), 27);
        assert!(height_bound(3, 0.0).is_err());
        assert!(height_bound(3, 1.5).is_err());
    }

    #[test]
    fn thiemard_bound_values() {
        let v = thiemard_bound(3, 0.1).unwrap();
        let expect = 4.5 * (10.0 * 10f64.ln() + 1.0).powi(3);
        assert!((v - expect).abs() / expect < 1e-12);

        let e = std::f64::consts::E;
        let v = thiemard_bound(3, 1.0 / e).unwrap();
        let expect = 4.5 * (e + 1.0).powi(3);
        assert!((v - expect).abs() / expect < 1e-12);
        assert!((v - 231.3).abs() / v < 1e-2);

        let v = thiemard_bound(4, 0.1).unwrap();
        let expect = 256.0 / 24.0 * (10.0 * 10f64.ln() + 1.0).powi(4);
        assert!((v - expect).abs() / expect < 1e-12);

        assert!(thiemard_bound(2, 0.1).is_err());
    }

    #[test]
    fn new_bound_values() {
        assert!((new_bound(2, 0.1).unwrap() - 210.0).abs() < 1e-9);
        // d = 3: the shift term vanishes, the sharper form meets the envelope.
        assert!((new_bound(3, 0.1).unwrap() - 4500.0).abs() < 1e-9);
        let v = new_bound(4, 0.1).unwrap();
        let expect = 256.0 / 24.0 * (10.0 - 0.125f64).powi(4);
        assert!((v - expect).abs() / expect < 1e-12);
        assert!(new_bound(1, 0.1).is_err());
    }

    #[test]
    fn intermediate_bound_values() {
        assert!((intermediate_bound(2, 0.1).unwrap() - 210.0).abs() < 1e-9);
        let v = intermediate_bound(3, 0.1).unwrap();
        let expect = 4.5 * (10.0 + 1.0 / 3.0) * 10.0 * (10.0 - 1.0 / 3.0);
        assert!((v - expect).abs() < 1e-9);
        assert!((v - 4495.0).abs() < 1e-6);
        // factors stay positive across the admissible range
        assert!(intermediate_bound(3, 0.9).unwrap() > 0.0);
    }

    #[test]
    fn intermediate_at_most_new_bound_for_d_ge_3() {
        for d in 3..=12 {
            for eps in [0.5, 0.2, 0.1, 0.01] {
                let inter = intermediate_bound(d, eps).unwrap();
                let newer = new_bound(d, eps).unwrap();
                assert!(inter <= newer * (1.0 + 1e-12), "d={d} eps={eps}");
            }
        }
    }

    #[test]
    fn f_series_values() {
        assert_eq!(f_series(3, 0.0, 1e-12).unwrap(), 1.0);
        let f = f_series(2, 0.5, 1e-12).unwrap();
        assert!(f >= 1.0 + 0.25 * 0.5);
        assert!(f_series(2, 1.0, 1e-12).is_err());
        assert!(f_series(2, -0.1, 1e-12).is_err());
    }

    #[test]
    fn f_series_matches_closed_form() {
        for d in [1usize, 2, 3, 7, 20] {
            for x in [0.01, 0.1, 0.3, 0.5, 0.7, 0.8] {
                let series = f_series(d, x, 1e-13).unwrap();
                let closed = d as f64 * (1.0 - (1.0 - x).powf(1.0 / d as f64)) / x;
                assert!(
                    (series - closed).abs() / closed < 1e-10,
                    "d={d} x={x}: {series} vs {closed}"
                );
            }
        }
    }

    #[test]
    fn f_series_monotone_in_x() {
        let mut prev = 1.0;
        for i in 1..=16 {
            let x = i as f64 / 20.0;
            let f = f_series(3, x, 1e-12).unwrap();
            assert!(f >= prev);
            prev = f;
        }
    }

    #[test]
    fn f_series_reports_slow_convergence() {
        // near x = 1 the term ratio approaches 1; the 200-term cap fires
        assert!(matches!(
            f_series(3, 0.99, 1e-12),
            Err(Error::SeriesDiverged { .. })
        ));
    }

    #[test]
    fn improved_height_values() {
        for d in 1..=8 {
            for eps in [0.5, 0.3, 0.1, 0.01] {
                assert!(improved_height_bound(d, eps).unwrap() <= height_bound(d, eps).unwrap());
            }
        }
        assert_eq!(improved_height_bound(3, 0.5).unwrap(), 3);
    }

    #[test]
    fn improved_card_values() {
        // d = 2 form with the f evaluation plugged in
        let f = f_series(2, 0.5, F_SERIES_REL_TOL).unwrap();
        let q = (2.0 - 1.0) / f;
        let v = improved_card_bound(2, 0.5).unwrap();
        assert!((v - 2.0 * (q + 1.5) * (q + 1.0)).abs() < 1e-12);

        // d = 3 exponent base uses + 1
        let f3 = f_series(3, 0.2, F_SERIES_REL_TOL).unwrap();
        let q3 = (5.0 - 1.0) / f3;
        let v3 = improved_card_bound(3, 0.2).unwrap();
        assert!((v3 - 4.5 * (q3 + 1.0).powi(3)).abs() / v3 < 1e-12);

        // consistency with the plain envelope at small epsilon
        assert!(improved_card_bound(3, 0.01).unwrap() < 4.5e6);
    }

    #[test]
    fn improved_card_at_most_unrefined_form() {
        for d in 2..=10 {
            for eps in [0.5, 0.2, 0.05] {
                let q = 1.0 / eps - 1.0;
                let plain = if d == 2 {
                    2.0 * (q + 1.5) * (q + 1.0)
                } else {
                    dd_over_factorial(d) * (q + 0.5 * (1.0 + 3.0 / d as f64)).powi(d as i32)
                };
                assert!(improved_card_bound(d, eps).unwrap() <= plain + 1e-9);
            }
        }
    }

    #[test]
    fn gpw_values() {
        assert!((gpw_bound(3, 0.1).unwrap() - 5989.5).abs() < 1e-9);
        // dimension factor kicks in above 101
        let base = dd_over_factorial(102) * 3f64.powi(102);
        let v = gpw_bound(102, 0.5).unwrap();
        assert!((v - 1.1 * base).abs() / v < 1e-12);
        // and stays at 1 below
        let v = gpw_bound(50, 0.5).unwrap();
        assert!((v - dd_over_factorial(50) * 3f64.powi(50)).abs() / v < 1e-12);
    }

    #[test]
    fn rectangle_and_delta_cover() {
        assert_eq!(rectangle_bound(1.0), 1.0);
        let corner = new_bound(3, 0.05).unwrap();
        assert!((corner - 36000.0).abs() < 1e-6);
        assert!((rectangle_bound(corner) - 1.296e9).abs() < 1.0);
        assert_eq!(delta_cover_bound(1.0), 2.0);
        assert_eq!(delta_cover_bound(4500.0), 9000.0);
        assert!((delta_cover_bound(new_bound(2, 0.1).unwrap()) - 420.0).abs() < 1e-9);
    }

    #[test]
    fn packing_values() {
        let p = packing_bounds(3, 0.1).unwrap();
        assert!((p.haussler - 4.0 * 8.0 * 4f64.exp() * 1000.0).abs() / p.haussler < 1e-12);
        assert!((p.via_bracketing - 4500.0).abs() < 1e-9);
        assert!(p.via_bracketing < p.haussler);
        assert!(packing_bounds(2, 0.1).is_err());
    }

    #[test]
    fn stirling_envelope_dominates() {
        assert!((dd_over_factorial(5) - 3125.0 / 120.0).abs() < 1e-12);
        assert!((stirling_factor(5) - 5f64.exp() / (10.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
        for d in 1..=20 {
            assert!(dd_over_factorial(d) <= stirling_factor(d), "d = {d}");
        }
    }

    #[test]
    fn d2_explicit_values() {
        let v = d2_explicit_bound(0.1).unwrap();
        assert!((v - 189.4226).abs() < 0.01);
        let v = d2_explicit_bound(0.01).unwrap();
        assert!((v - (13862.943611 + 507.944154 - 0.001268)).abs() < 0.01);
        // smaller leading coefficient than the sharper bound's 2/eps^2
        assert!(2.0 * std::f64::consts::LN_2 < 2.0);
    }

    #[test]
    fn new_bound_below_thiemard_on_its_range() {
        for d in 3..=12 {
            for i in 1..=40 {
                let eps = i as f64 / 40.0 * (1.0 / std::f64::consts::E);
                assert!(
                    new_bound(d, eps).unwrap() <= thiemard_bound(d, eps).unwrap(),
                    "d={d} eps={eps}"
                );
            }
        }
    }

    #[test]
    fn bounds_row_population() {
        let row = bounds_row(3, 0.1).unwrap();
        assert!(row.thiemard.is_some());
        let new = row.new_dge3.unwrap();
        assert!((new - 4500.0).abs() < 1e-9);
        assert!(new < row.thiemard.unwrap());
        assert!(row.new_d2.is_none());
        assert!(row.haussler.is_some());

        let row = bounds_row(2, 0.1).unwrap();
        assert!(row.thiemard.is_none());
        assert!(row.new_d2.is_some());
        assert!(row.d2_explicit.is_some());

        let row = bounds_row(1, 0.1).unwrap();
        assert!(row.height_bound.is_some());
        assert!(row.improved_height.is_some());
        assert!(row.tree_binomial.is_some());
        assert!(row.new_d2.is_none());
        assert!(row.new_dge3.is_none());
        assert!(row.gpw.is_none());
        assert!(row.haussler.is_none());
        assert!(row_delta_cover(&row).is_none());
    }
}
