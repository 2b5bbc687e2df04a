//! The one-dimensional Swiss-cheese operad on rational interval
//! configurations, the comparison map θ from colored metric trees, and the
//! algebra of piecewise-constant loops and relative paths.
//!
//! Closed operations are ordered little intervals in `[0,1]`. Open
//! operations use the folded model: closed slots to the left, plus an
//! optional distinguished interval whose right endpoint is `1`; this is the
//! reading of a symmetric configuration in `[−1,1]` after folding, and it is
//! the canonical representation here. A conversion to the symmetric picture
//! is provided for display.

use thiserror::Error;

use crate::operad_k::ActPoint;
use crate::scalar::{int, Scalar};
use crate::tree::{Color, TreeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("a configuration needs at least one interval")]
    Empty,
    #[error("intervals must be ordered with disjoint interiors inside [0,1]")]
    Unordered,
    #[error("slot index {index} out of range 1..={slots}")]
    SlotIndex { index: usize, slots: usize },
    #[error("the open configuration has no distinguished interval")]
    NoDistinguished,
    #[error("θ is defined on trees with at least one leaf")]
    InvalidTree,
    #[error("expected {expected} loops, got {got}")]
    LoopArity { expected: usize, got: usize },
    #[error("breakpoints must be strictly increasing from 0 to 1")]
    BadBreakpoints,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A configuration of ordered little intervals in `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedConfig<R> {
    intervals: Vec<(R, R)>,
}

impl<R: Scalar> ClosedConfig<R> {
    pub fn new(intervals: Vec<(R, R)>) -> Result<ClosedConfig<R>, ConfigError> {
        if intervals.is_empty() {
            return Err(ConfigError::Empty);
        }
        let mut prev = R::zero();
        for (a, b) in &intervals {
            if *a < prev || a >= b || *b > R::one() {
                return Err(ConfigError::Unordered);
            }
            prev = b.clone();
        }
        Ok(ClosedConfig { intervals })
    }

    /// The operad identity `[0,1]`.
    pub fn identity() -> ClosedConfig<R> {
        ClosedConfig {
            intervals: vec![(R::zero(), R::one())],
        }
    }

    pub fn intervals(&self) -> &[(R, R)] {
        &self.intervals
    }

    pub fn arity(&self) -> usize {
        self.intervals.len()
    }
}

/// An open configuration in the folded model: ordered closed slots, then an
/// optional distinguished interval `[a, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenConfig<R> {
    closed: Vec<(R, R)>,
    distinguished: Option<R>,
}

impl<R: Scalar> OpenConfig<R> {
    pub fn new(closed: Vec<(R, R)>, distinguished: Option<R>) -> Result<OpenConfig<R>, ConfigError> {
        if closed.is_empty() && distinguished.is_none() {
            return Err(ConfigError::Empty);
        }
        let mut prev = R::zero();
        for (a, b) in &closed {
            if *a < prev || a >= b || *b > R::one() {
                return Err(ConfigError::Unordered);
            }
            prev = b.clone();
        }
        if let Some(a) = &distinguished {
            if *a < prev || *a >= R::one() {
                return Err(ConfigError::Unordered);
            }
        }
        Ok(OpenConfig {
            closed,
            distinguished,
        })
    }

    /// The open identity: no closed slot, distinguished `[0,1]`.
    pub fn identity() -> OpenConfig<R> {
        OpenConfig {
            closed: Vec::new(),
            distinguished: Some(R::zero()),
        }
    }

    pub fn closed_slots(&self) -> &[(R, R)] {
        &self.closed
    }

    /// Left endpoint of the distinguished interval `[a,1]`, when present.
    pub fn distinguished(&self) -> Option<&R> {
        self.distinguished.as_ref()
    }

    /// The symmetric picture in `[−1,1]` for display: the folded model is
    /// reflected through `t ↦ 1 − t` and mirrored.
    pub fn to_symmetric(&self) -> Vec<(R, R)> {
        let flip = |x: &R| R::one() - x.clone();
        let mut out: Vec<(R, R)> = Vec::new();
        // mirrored negative copies, outermost first
        for (a, b) in &self.closed {
            out.push((-flip(a), -flip(b)));
        }
        if let Some(a) = &self.distinguished {
            out.push((-flip(a), flip(a)));
        }
        for (a, b) in self.closed.iter().rev() {
            out.push((flip(b), flip(a)));
        }
        out
    }
}

/// Either color of configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Config<R> {
    Closed(ClosedConfig<R>),
    Open(OpenConfig<R>),
}

fn rescale<R: Scalar>(x: &R, a: &R, b: &R) -> R {
    a.clone() + (b.clone() - a.clone()) * x.clone()
}

/// Glue `d` into the `i`-th interval of `c` by the affine map onto that
/// interval.
pub fn compose_closed<R: Scalar>(
    c: &ClosedConfig<R>,
    i: usize,
    d: &ClosedConfig<R>,
) -> Result<ClosedConfig<R>, ConfigError> {
    let n = c.arity();
    if i == 0 || i > n {
        return Err(ConfigError::SlotIndex { index: i, slots: n });
    }
    let (a, b) = &c.intervals[i - 1];
    let mut out = c.intervals[..i - 1].to_vec();
    for (x, y) in &d.intervals {
        out.push((rescale(x, a, b), rescale(y, a, b)));
    }
    out.extend_from_slice(&c.intervals[i..]);
    ClosedConfig::new(out)
}

/// Glue `o2` into the distinguished interval of `o1` by the affine map
/// `[0,1] → [a,1]` fixing `1`.
pub fn compose_open_open<R: Scalar>(
    o1: &OpenConfig<R>,
    o2: &OpenConfig<R>,
) -> Result<OpenConfig<R>, ConfigError> {
    let a = o1
        .distinguished
        .clone()
        .ok_or(ConfigError::NoDistinguished)?;
    let one = R::one();
    let mut closed = o1.closed.clone();
    for (x, y) in &o2.closed {
        closed.push((rescale(x, &a, &one), rescale(y, &a, &one)));
    }
    let distinguished = o2
        .distinguished
        .as_ref()
        .map(|x| rescale(x, &a, &one));
    OpenConfig::new(closed, distinguished)
}

/// Glue a closed configuration into the `i`-th closed slot of an open one;
/// in the folded model this is plain affine gluing.
pub fn compose_open_closed<R: Scalar>(
    o: &OpenConfig<R>,
    i: usize,
    c: &ClosedConfig<R>,
) -> Result<OpenConfig<R>, ConfigError> {
    let n = o.closed.len();
    if i == 0 || i > n {
        return Err(ConfigError::SlotIndex { index: i, slots: n });
    }
    let (a, b) = &o.closed[i - 1];
    let mut closed = o.closed[..i - 1].to_vec();
    for (x, y) in c.intervals() {
        closed.push((rescale(x, a, b), rescale(y, a, b)));
    }
    closed.extend_from_slice(&o.closed[i..]);
    OpenConfig::new(closed, o.distinguished.clone())
}

/// The comparison map θ: corollas tile `[0,1]` evenly, and a grafted tree
/// maps to the convex combination, in the edge label, of the collapsed
/// image (label 0) and the glued image (label 1).
pub fn theta<R: Scalar>(pt: &ActPoint<R>) -> Result<Config<R>, ConfigError> {
    let pt = pt.normalize();
    theta_with(&pt, &mut |_| 0)
}

/// θ with an explicit decomposition chooser, for well-definedness checks.
pub fn theta_with<R: Scalar>(
    pt: &ActPoint<R>,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<Config<R>, ConfigError> {
    let leaves = pt.tree.leaf_count();
    if leaves == 0 {
        return Err(ConfigError::InvalidTree);
    }
    if pt.tree.is_corolla() {
        return theta_corolla(pt);
    }
    let edges = pt.tree.internal_edge_count();
    let k = choose(edges) % edges;
    let (outer_tree, i, r, inner_tree) = pt.tree.split_at_edge(k).expect("edge in range");
    let inner_is_open =
        pt.color == Color::Open && i + inner_tree.leaf_count() - 1 == leaves;
    let outer = ActPoint {
        tree: outer_tree.clone(),
        color: pt.color,
    };
    let inner = ActPoint {
        tree: inner_tree.clone(),
        color: if inner_is_open {
            Color::Open
        } else {
            Color::Closed
        },
    };
    let glued = compose_theta(&theta_with(&outer, choose)?, i, &theta_with(&inner, choose)?)?;
    let collapsed_tree = outer_tree.graft(i, R::zero(), &inner_tree)?.normalize();
    let collapsed = theta_with(
        &ActPoint {
            tree: collapsed_tree,
            color: pt.color,
        },
        choose,
    )?;
    convex_combination(&r, &collapsed, &glued)
}

fn theta_corolla<R: Scalar>(pt: &ActPoint<R>) -> Result<Config<R>, ConfigError> {
    let n = pt.tree.leaf_count();
    match pt.color {
        Color::Closed => {
            let den = int::<R>(n as i64);
            let tiles = (0..n)
                .map(|k| {
                    (
                        int::<R>(k as i64) / den.clone(),
                        int::<R>(k as i64 + 1) / den.clone(),
                    )
                })
                .collect();
            Ok(Config::Closed(ClosedConfig::new(tiles)?))
        }
        Color::Open => {
            // p closed leaves and the open leaf: p+1 tiles, the last one
            // distinguished and containing 1
            let den = int::<R>(n as i64);
            let tiles = (0..n - 1)
                .map(|k| {
                    (
                        int::<R>(k as i64) / den.clone(),
                        int::<R>(k as i64 + 1) / den.clone(),
                    )
                })
                .collect();
            let dist = int::<R>(n as i64 - 1) / den;
            Ok(Config::Open(OpenConfig::new(tiles, Some(dist))?))
        }
    }
}

fn compose_theta<R: Scalar>(
    outer: &Config<R>,
    i: usize,
    inner: &Config<R>,
) -> Result<Config<R>, ConfigError> {
    match (outer, inner) {
        (Config::Closed(c), Config::Closed(d)) => Ok(Config::Closed(compose_closed(c, i, d)?)),
        (Config::Open(o), Config::Closed(d)) => Ok(Config::Open(compose_open_closed(o, i, d)?)),
        (Config::Open(o), Config::Open(d)) => Ok(Config::Open(compose_open_open(o, d)?)),
        (Config::Closed(_), Config::Open(_)) => Err(ConfigError::InvalidTree),
    }
}

fn convex_combination<R: Scalar>(
    r: &R,
    at_zero: &Config<R>,
    at_one: &Config<R>,
) -> Result<Config<R>, ConfigError> {
    let mix = |x: &R, y: &R| -> R {
        (R::one() - r.clone()) * x.clone() + r.clone() * y.clone()
    };
    match (at_zero, at_one) {
        (Config::Closed(c0), Config::Closed(c1)) => {
            debug_assert_eq!(c0.arity(), c1.arity());
            let intervals = c0
                .intervals
                .iter()
                .zip(&c1.intervals)
                .map(|((a0, b0), (a1, b1))| (mix(a0, a1), mix(b0, b1)))
                .collect();
            Ok(Config::Closed(ClosedConfig::new(intervals)?))
        }
        (Config::Open(o0), Config::Open(o1)) => {
            debug_assert_eq!(o0.closed.len(), o1.closed.len());
            let closed = o0
                .closed
                .iter()
                .zip(&o1.closed)
                .map(|((a0, b0), (a1, b1))| (mix(a0, a1), mix(b0, b1)))
                .collect();
            let distinguished = match (&o0.distinguished, &o1.distinguished) {
                (Some(a0), Some(a1)) => Some(mix(a0, a1)),
                (None, None) => None,
                _ => return Err(ConfigError::NoDistinguished),
            };
            Ok(Config::Open(OpenConfig::new(closed, distinguished)?))
        }
        _ => Err(ConfigError::InvalidTree),
    }
}

/// A piecewise-constant right-continuous path on `[0,1]` with values in a
/// finite set, stored canonically (adjacent equal pieces merged) with an
/// explicit value at `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCPath<R> {
    breakpoints: Vec<R>,
    values: Vec<usize>,
    end: usize,
}

impl<R: Scalar> PCPath<R> {
    /// `breakpoints` must run strictly from 0 to 1 with one value per piece.
    pub fn new(breakpoints: Vec<R>, values: Vec<usize>, end: usize) -> Result<PCPath<R>, ConfigError> {
        if breakpoints.len() < 2
            || breakpoints.first() != Some(&R::zero())
            || breakpoints.last() != Some(&R::one())
            || values.len() + 1 != breakpoints.len()
        {
            return Err(ConfigError::BadBreakpoints);
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::BadBreakpoints);
        }
        let mut out = PCPath {
            breakpoints,
            values,
            end,
        };
        out.canonicalize();
        Ok(out)
    }

    pub fn constant(v: usize) -> PCPath<R> {
        PCPath {
            breakpoints: vec![R::zero(), R::one()],
            values: vec![v],
            end: v,
        }
    }

    fn canonicalize(&mut self) {
        let mut bp = vec![self.breakpoints[0].clone()];
        let mut vals: Vec<usize> = Vec::new();
        for (k, v) in self.values.iter().enumerate() {
            if vals.last() == Some(v) {
                continue;
            }
            if !vals.is_empty() {
                bp.push(self.breakpoints[k].clone());
            }
            vals.push(*v);
        }
        bp.push(self.breakpoints.last().unwrap().clone());
        self.breakpoints = bp;
        self.values = vals;
    }

    pub fn at(&self, t: &R) -> usize {
        if *t >= R::one() {
            return self.end;
        }
        for (k, w) in self.breakpoints.windows(2).enumerate() {
            if *t >= w[0] && *t < w[1] {
                return self.values[k];
            }
        }
        self.values[0]
    }

    pub fn start(&self) -> usize {
        self.values[0]
    }

    pub fn end_value(&self) -> usize {
        self.end
    }

    pub fn breakpoints(&self) -> &[R] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Run each loop through its closed slot, the relative path through the
/// distinguished slot, and the basepoint elsewhere.
pub fn rho_action<R: Scalar>(
    o: &OpenConfig<R>,
    loops: &[PCPath<R>],
    rel: &PCPath<R>,
    base: usize,
) -> Result<PCPath<R>, ConfigError> {
    let dist = o
        .distinguished
        .clone()
        .ok_or(ConfigError::NoDistinguished)?;
    if loops.len() != o.closed.len() {
        return Err(ConfigError::LoopArity {
            expected: o.closed.len(),
            got: loops.len(),
        });
    }
    let mut bp = vec![R::zero()];
    let mut vals: Vec<usize> = Vec::new();
    let push_piece = |bp: &mut Vec<R>, vals: &mut Vec<usize>, to: R, v: usize| {
        if *bp.last().unwrap() < to {
            bp.push(to);
            vals.push(v);
        }
    };
    for ((a, b), lp) in o.closed.iter().zip(loops) {
        push_piece(&mut bp, &mut vals, a.clone(), base);
        for (k, w) in lp.breakpoints.windows(2).enumerate() {
            push_piece(&mut bp, &mut vals, rescale(&w[1], a, b), lp.values[k]);
        }
    }
    push_piece(&mut bp, &mut vals, dist.clone(), base);
    let one = R::one();
    for (k, w) in rel.breakpoints.windows(2).enumerate() {
        push_piece(&mut bp, &mut vals, rescale(&w[1], &dist, &one), rel.values[k]);
    }
    PCPath::new(bp, vals, rel.end)
}

/// The closed-color action: loops through slots, basepoint elsewhere.
pub fn closed_action<R: Scalar>(
    c: &ClosedConfig<R>,
    loops: &[PCPath<R>],
    base: usize,
) -> Result<PCPath<R>, ConfigError> {
    if loops.len() != c.arity() {
        return Err(ConfigError::LoopArity {
            expected: c.arity(),
            got: loops.len(),
        });
    }
    let mut bp = vec![R::zero()];
    let mut vals: Vec<usize> = Vec::new();
    let push_piece = |bp: &mut Vec<R>, vals: &mut Vec<usize>, to: R, v: usize| {
        if *bp.last().unwrap() < to {
            bp.push(to);
            vals.push(v);
        }
    };
    for ((a, b), lp) in c.intervals.iter().zip(loops) {
        push_piece(&mut bp, &mut vals, a.clone(), base);
        for (k, w) in lp.breakpoints.windows(2).enumerate() {
            push_piece(&mut bp, &mut vals, rescale(&w[1], a, b), lp.values[k]);
        }
    }
    push_piece(&mut bp, &mut vals, R::one(), base);
    PCPath::new(bp, vals, base)
}
