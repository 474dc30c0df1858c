//! Recursive decomposition of the unit cube into an epsilon-bracketing cover.
//!
//! The cube starts as an interval of type 1. An interval `P = [alpha, beta)`
//! of type `j <= d` whose weight exceeds `epsilon` is split into children of
//! types `j..=d`, all of weight `delta * W(P)`, plus one corner child
//! `[gamma, beta)` of type `d + 1` and weight exactly `epsilon`. Children of
//! weight at most `epsilon` become leaves of the cover. The shrink factor
//! `delta` is recomputed from local data at every node; see [`delta_of`].
//!
//! Generation is streaming: leaves are handed to a visitor in a fixed
//! depth-first order (children in increasing type order) and never stored.

use crate::error::{Error, Result};
use crate::geometry::{anchored_volume, Point, TypedBracket};
use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};

/// Tree coordinates of an interval in the decomposition: the nondecreasing
/// sequence of types chosen along the root-to-node walk. Empty for the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecompositionPath {
    indices: Vec<u32>,
}

impl DecompositionPath {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        for w in indices.windows(2) {
            if w[0] > w[1] {
                return Err(Error::Domain {
                    context: "decomposition path",
                    detail: format!("indices not nondecreasing: {} > {}", w[0], w[1]),
                });
            }
        }
        if indices.iter().any(|&i| i == 0) {
            return Err(Error::Domain {
                context: "decomposition path",
                detail: "indices must be >= 1".into(),
            });
        }
        Ok(Self { indices })
    }

    pub fn root() -> Self {
        Self { indices: Vec::new() }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

impl std::fmt::Display for DecompositionPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// Aggregate results of one cover generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverStats {
    pub leaf_count: u64,
    pub height: u32,
    pub max_leaf_weight: f64,
    pub min_leaf_weight: f64,
    pub epsilon: f64,
    pub dimension: usize,
}

/// Knobs for cover generation. `max_leaves` aborts generation once the
/// budget is exhausted; the fault switch exists only so the verification
/// suite can prove its own checks are not vacuous.
#[derive(Debug, Clone, Default)]
#[non_exhaustive]
pub struct BuildOptions {
    pub max_leaves: Option<u64>,
    delta_exponent_fault: bool,
}

impl BuildOptions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn max_leaves(mut self, n: u64) -> Self {
        self.max_leaves = Some(n);
        self
    }

    /// Swaps the corrected exponent `1/(d - j + 1)` for its reciprocal,
    /// reproducing a broken shrink factor. Negative-control use only.
    #[doc(hidden)]
    pub fn delta_exponent_fault(mut self, on: bool) -> Self {
        self.delta_exponent_fault = on;
        self
    }

    pub(crate) fn fault(&self) -> bool {
        self.delta_exponent_fault
    }
}

/// A decomposed interval as seen by a [`CoverVisitor`], together with the
/// children it is being split into (types `j..=d` first, corner child last).
#[derive(Debug)]
pub struct DecomposedNode<'a> {
    pub bracket: &'a TypedBracket,
    pub delta: f64,
    pub weight: f64,
    pub path: &'a [u32],
    pub depth: u32,
    pub children: &'a [TypedBracket],
}

/// Streaming consumer of a cover generation.
///
/// `on_leaf` receives every cover element exactly once. For leaves of type
/// `<= d` the path is the leaf's own tree coordinate (`path.len() == depth`);
/// for corner leaves of type `d + 1` it is the path of the decompose call
/// that produced them (`path.len() + 1 == depth`).
pub trait CoverVisitor {
    fn on_decompose(&mut self, _node: &DecomposedNode<'_>) {}
    fn on_leaf(&mut self, leaf: &TypedBracket, path: &[u32], depth: u32);
}

struct LeafSink<F: FnMut(&TypedBracket)>(F);

impl<F: FnMut(&TypedBracket)> CoverVisitor for LeafSink<F> {
    fn on_leaf(&mut self, leaf: &TypedBracket, _path: &[u32], _depth: u32) {
        (self.0)(leaf)
    }
}

/// Shrink factor of a decompose call: with `j` the type of `bracket`,
///
/// ```text
/// delta = ( (prod(beta) - epsilon) / (prod(alpha[..j-1]) * prod(beta[j-1..])) )^(1/(d-j+1))
/// ```
///
/// Requires `weight > epsilon` and type `<= d`. The result always lies in
/// `(0, 1)`; anything else signals a numerical-domain failure.
pub fn delta_of(bracket: &TypedBracket, epsilon: f64) -> Result<f64> {
    delta_with_mode(bracket, epsilon, false)
}

fn delta_with_mode(bracket: &TypedBracket, epsilon: f64, fault: bool) -> Result<f64> {
    let d = bracket.dim();
    let j = bracket.type_index() as usize;
    if j > d {
        return Err(Error::Domain {
            context: "delta_of",
            detail: format!("type {j} exceeds dimension {d}; corner leaves are not decomposed"),
        });
    }
    let w = bracket.weight();
    if !(w > epsilon) {
        return Err(Error::Domain {
            context: "delta_of",
            detail: format!("weight {w} not larger than epsilon {epsilon}"),
        });
    }
    let alpha = bracket.alpha().coords();
    let beta = bracket.beta().coords();
    let num = anchored_volume(bracket.beta()) - epsilon;
    let mut den = 1.0;
    for &a in &alpha[..j - 1] {
        den *= a;
    }
    for &b in &beta[j - 1..] {
        den *= b;
    }
    let exponent = 1.0 / ((d - j + 1) as f64);
    let delta = if fault {
        (num / den).powf((d - j + 1) as f64)
    } else {
        (num / den).powf(exponent)
    };
    if delta > 0.0 && delta < 1.0 {
        Ok(delta)
    } else {
        Err(Error::NumericalDomain {
            context: "delta_of",
            value: delta,
        })
    }
}

/// Split corner of a decompose call: `gamma_i = alpha_i` for `i < j` and
/// `delta * beta_i` for `i >= j`. The corner satisfies
/// `prod(gamma) = weight - epsilon` up to rounding.
pub fn gamma_of(bracket: &TypedBracket, delta: f64) -> Point {
    let j = bracket.type_index() as usize;
    let coords = bracket
        .alpha()
        .coords()
        .iter()
        .zip(bracket.beta().coords())
        .enumerate()
        .map(|(i, (&a, &b))| if i + 1 < j { a } else { delta * b })
        .collect();
    Point::new(coords).expect("gamma stays inside the unit cube")
}

/// One decompose call: returns the `d - j + 2` nonempty children in type
/// order `j, ..., d, d+1`. Empty children of types below `j` are never
/// materialized.
pub fn decompose_step(bracket: &TypedBracket, epsilon: f64) -> Result<Vec<TypedBracket>> {
    let delta = delta_of(bracket, epsilon)?;
    decompose_with_delta(bracket, delta)
}

fn decompose_with_delta(bracket: &TypedBracket, delta: f64) -> Result<Vec<TypedBracket>> {
    let d = bracket.dim();
    let j = bracket.type_index() as usize;
    let alpha = bracket.alpha().coords();
    let beta = bracket.beta().coords();
    let gamma = gamma_of(bracket, delta);
    let g = gamma.coords();

    let mut children = Vec::with_capacity(d - j + 2);
    for k in j..=d {
        // alpha' = (gamma_1, .., gamma_{k-1}, alpha_k, .., alpha_d)
        // beta'  = (beta_1, .., beta_{k-1}, gamma_k, beta_{k+1}, .., beta_d)
        let mut a = Vec::with_capacity(d);
        let mut b = Vec::with_capacity(d);
        for i in 0..d {
            a.push(if i + 1 < k { g[i] } else { alpha[i] });
            b.push(if i + 1 == k { g[i] } else { beta[i] });
        }
        children.push(TypedBracket::new(
            Point::new(a)?,
            Point::new(b)?,
            k as u32,
        )?);
    }
    children.push(TypedBracket::new(
        gamma,
        bracket.beta().clone(),
        (d + 1) as u32,
    )?);
    Ok(children)
}

/// Shrink factor of a child expressed through its parent's data:
///
/// ```text
/// delta_child = ( (W - epsilon/delta) / (W - epsilon) )^(1/(d-i+1)) * delta
/// ```
///
/// for the child of type `i` of a parent with weight `W` and shrink factor
/// `delta`. Strictly increasing in `delta` and `W`, strictly decreasing in
/// `i`. Must agree with [`delta_of`] applied to the materialized child; the
/// direct formula is what generation uses, this one exists as a cross-check.
pub fn delta_recursion(
    delta_parent: f64,
    weight_parent: f64,
    child_type: u32,
    dim: usize,
    epsilon: f64,
) -> Result<f64> {
    if dim == 0 {
        return Err(Error::DimensionZero);
    }
    let i = child_type as usize;
    if i < 1 || i > dim {
        return Err(Error::Domain {
            context: "delta_recursion",
            detail: format!("child type {i} outside 1..={dim}"),
        });
    }
    if !(weight_parent > epsilon) {
        return Err(Error::Domain {
            context: "delta_recursion",
            detail: format!("parent weight {weight_parent} not larger than epsilon {epsilon}"),
        });
    }
    if !(delta_parent * weight_parent > epsilon) {
        return Err(Error::Domain {
            context: "delta_recursion",
            detail: format!(
                "child weight {} not larger than epsilon {epsilon}; child is a leaf",
                delta_parent * weight_parent
            ),
        });
    }
    let ratio = (weight_parent - epsilon / delta_parent) / (weight_parent - epsilon);
    Ok(ratio.powf(1.0 / ((dim - i + 1) as f64)) * delta_parent)
}

fn validate_inputs(dim: usize, epsilon: f64) -> Result<()> {
    if dim == 0 {
        return Err(Error::DimensionZero);
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::EpsilonOutOfRange(epsilon, "(0,1]"));
    }
    Ok(())
}

/// Upper bound on admissible recursion depth. Exceeding it is impossible in
/// real arithmetic, so hitting the guard flags floating-point pathology.
fn depth_guard(dim: usize, epsilon: f64) -> u64 {
    (dim as f64 * (1.0 / epsilon - 1.0)).ceil() as u64 + 2
}

/// Tree height via the scalar weight recursion along the all-ones path:
/// `w_0 = 1`, `w_{r+1} = w_r * ((w_r - epsilon)/w_r)^(1/d)`, stopping at the
/// least `r` with `w_r <= epsilon`. Performs the same floating-point
/// operations as the generated tree, so it agrees with the observed height
/// exactly.
pub fn height(dim: usize, epsilon: f64) -> Result<u32> {
    validate_inputs(dim, epsilon)?;
    let guard = depth_guard(dim, epsilon);
    let exponent = 1.0 / (dim as f64);
    let mut w = 1.0f64;
    let mut h = 0u64;
    while w > epsilon {
        let delta = ((w - epsilon) / w).powf(exponent);
        w = delta * w;
        h += 1;
        if h > guard {
            return Err(Error::DepthGuardExceeded {
                depth: h.min(u32::MAX as u64) as u32,
                guard: guard.min(u32::MAX as u64) as u32,
            });
        }
    }
    Ok(h as u32)
}

struct WalkStats {
    leaf_count: u64,
    height: u32,
    max_leaf_weight: f64,
    min_leaf_weight: f64,
}

impl WalkStats {
    fn new() -> Self {
        Self {
            leaf_count: 0,
            height: 0,
            max_leaf_weight: f64::NEG_INFINITY,
            min_leaf_weight: f64::INFINITY,
        }
    }

    fn record(&mut self, weight: f64, depth: u32) {
        self.leaf_count += 1;
        self.height = self.height.max(depth);
        self.max_leaf_weight = self.max_leaf_weight.max(weight);
        self.min_leaf_weight = self.min_leaf_weight.min(weight);
    }

    fn finish(self, dimension: usize, epsilon: f64) -> CoverStats {
        CoverStats {
            leaf_count: self.leaf_count,
            height: self.height,
            max_leaf_weight: self.max_leaf_weight,
            min_leaf_weight: self.min_leaf_weight,
            epsilon,
            dimension,
        }
    }
}

enum Task {
    Visit(TypedBracket, u32),
    PushPath(u32),
    PopPath,
}

/// Full traversal of the decomposition with access to every decomposed node
/// and every leaf. Iterative, so deep trees (small epsilon in low dimension)
/// cannot overflow the stack.
pub fn walk_cover<V: CoverVisitor>(
    dim: usize,
    epsilon: f64,
    opts: &BuildOptions,
    visitor: &mut V,
) -> Result<CoverStats> {
    validate_inputs(dim, epsilon)?;
    let guard = depth_guard(dim, epsilon);
    let mut stats = WalkStats::new();
    let mut path: Vec<u32> = Vec::new();
    let mut stack: Vec<Task> = vec![Task::Visit(TypedBracket::unit_cube(dim)?, 0)];

    while let Some(task) = stack.pop() {
        match task {
            Task::PushPath(t) => {
                path.push(t);
            }
            Task::PopPath => {
                path.pop();
            }
            Task::Visit(bracket, depth) => {
                let w = bracket.weight();
                let is_leaf = bracket.type_index() as usize == dim + 1 || w <= epsilon;
                if is_leaf {
                    if let Some(budget) = opts.max_leaves {
                        if stats.leaf_count >= budget {
                            return Err(Error::BudgetExceeded {
                                emitted: stats.leaf_count,
                            });
                        }
                    }
                    stats.record(w, depth);
                    visitor.on_leaf(&bracket, &path, depth);
                    continue;
                }
                if depth as u64 >= guard {
                    return Err(Error::DepthGuardExceeded {
                        depth,
                        guard: guard.min(u32::MAX as u64) as u32,
                    });
                }
                let delta = delta_with_mode(&bracket, epsilon, opts.fault())?;
                let children = decompose_with_delta(&bracket, delta)?;
                visitor.on_decompose(&DecomposedNode {
                    bracket: &bracket,
                    delta,
                    weight: w,
                    path: &path,
                    depth,
                    children: &children,
                });
                // Schedule children in type order; the stack is LIFO, so push
                // the per-child task groups in reverse.
                for child in children.into_iter().rev() {
                    let t = child.type_index();
                    if t as usize <= dim {
                        stack.push(Task::PopPath);
                        stack.push(Task::Visit(child, depth + 1));
                        stack.push(Task::PushPath(t));
                    } else {
                        stack.push(Task::Visit(child, depth + 1));
                    }
                }
            }
        }
    }
    Ok(stats.finish(dim, epsilon))
}

/// Generates the cover for `(dim, epsilon)`, feeding every leaf to `sink` in
/// deterministic depth-first order, and returns the aggregate stats.
pub fn build_cover<F: FnMut(&TypedBracket)>(
    dim: usize,
    epsilon: f64,
    sink: F,
) -> Result<CoverStats> {
    build_cover_with(dim, epsilon, &BuildOptions::default(), sink)
}

pub fn build_cover_with<F: FnMut(&TypedBracket)>(
    dim: usize,
    epsilon: f64,
    opts: &BuildOptions,
    sink: F,
) -> Result<CoverStats> {
    walk_cover(dim, epsilon, opts, &mut LeafSink(sink))
}

/// Collects the cover into memory. Intended for tests and small covers; the
/// leaf count grows like `epsilon^-d`.
pub fn collect_cover(dim: usize, epsilon: f64) -> Result<(CoverStats, Vec<TypedBracket>)> {
    let mut leaves = Vec::new();
    let stats = build_cover(dim, epsilon, |leaf| leaves.push(leaf.clone()))?;
    Ok((stats, leaves))
}

// Parallel traversal recurses into independent subtrees concurrently near the
// root and falls back to sequential walks below this depth.
const PARALLEL_DEPTH: u32 = 3;

/// Map-reduce over the leaves of the cover with subtrees processed in
/// parallel. Leaf order is unspecified; the reduction must be associative
/// and commutative. The returned stats are identical to the sequential run.
pub fn reduce_leaves_parallel<T, M, R>(
    dim: usize,
    epsilon: f64,
    opts: &BuildOptions,
    map: M,
    reduce: R,
) -> Result<(CoverStats, T)>
where
    T: Send,
    M: Fn(&TypedBracket) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    validate_inputs(dim, epsilon)?;
    let ctx = ParCtx {
        epsilon,
        dim,
        guard: depth_guard(dim, epsilon),
        fault: opts.fault(),
        budget: opts.max_leaves,
        emitted: AtomicU64::new(0),
        map,
        reduce,
    };
    let (partial, acc) = par_visit(&ctx, TypedBracket::unit_cube(dim)?, 0)?;
    let acc = acc.expect("every cover has at least one leaf");
    Ok((partial.finish(dim, epsilon), acc))
}

struct ParCtx<T, M, R>
where
    M: Fn(&TypedBracket) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    epsilon: f64,
    dim: usize,
    guard: u64,
    fault: bool,
    budget: Option<u64>,
    emitted: AtomicU64,
    map: M,
    reduce: R,
}

fn par_combine<T, M, R>(
    ctx: &ParCtx<T, M, R>,
    a: (WalkStats, Option<T>),
    b: (WalkStats, Option<T>),
) -> (WalkStats, Option<T>)
where
    T: Send,
    M: Fn(&TypedBracket) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    let stats = WalkStats {
        leaf_count: a.0.leaf_count + b.0.leaf_count,
        height: a.0.height.max(b.0.height),
        max_leaf_weight: a.0.max_leaf_weight.max(b.0.max_leaf_weight),
        min_leaf_weight: a.0.min_leaf_weight.min(b.0.min_leaf_weight),
    };
    let acc = match (a.1, b.1) {
        (Some(x), Some(y)) => Some((ctx.reduce)(x, y)),
        (x, None) => x,
        (None, y) => y,
    };
    (stats, acc)
}

fn par_visit<T, M, R>(
    ctx: &ParCtx<T, M, R>,
    bracket: TypedBracket,
    depth: u32,
) -> Result<(WalkStats, Option<T>)>
where
    T: Send,
    M: Fn(&TypedBracket) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    let w = bracket.weight();
    if bracket.type_index() as usize == ctx.dim + 1 || w <= ctx.epsilon {
        if let Some(budget) = ctx.budget {
            if ctx.emitted.fetch_add(1, Ordering::Relaxed) >= budget {
                return Err(Error::BudgetExceeded { emitted: budget });
            }
        }
        let mut stats = WalkStats::new();
        stats.record(w, depth);
        return Ok((stats, Some((ctx.map)(&bracket))));
    }
    if depth as u64 >= ctx.guard {
        return Err(Error::DepthGuardExceeded {
            depth,
            guard: ctx.guard.min(u32::MAX as u64) as u32,
        });
    }
    let delta = delta_with_mode(&bracket, ctx.epsilon, ctx.fault)?;
    let children = decompose_with_delta(&bracket, delta)?;
    if depth < PARALLEL_DEPTH {
        children
            .into_par_iter()
            .map(|child| par_visit(ctx, child, depth + 1))
            .try_reduce_with(|a, b| Ok(par_combine(ctx, a, b)))
            .expect("decomposed nodes have children")
    } else {
        let mut out = (WalkStats::new(), None);
        for child in children {
            let part = par_visit(ctx, child, depth + 1)?;
            out = par_combine(ctx, out, part);
        }
        Ok(out)
    }
}
