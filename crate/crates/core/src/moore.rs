//! Moore paths with piecewise-affine parameter dependence.
//!
//! A path is a list of segments; each segment is a one-parameter family (a
//! shape whose labels are affine functions of local time) together with a
//! rational duration. Evaluation substitutes the time into the family and
//! normalizes, so a path takes values in the quotient space while being
//! stored as labeled representatives. The Moore convention applies: past the
//! total length the endpoint is returned.
//!
//! The same machinery carries tree-space paths (`Tree<Affine<R>>` families)
//! and bar-space paths (see [`crate::bar`]); both only need the [`Family`]
//! operations, which are affine reparameterizations of local time.

use std::fmt;

use thiserror::Error;

use crate::scalar::{in_unit_interval, midpoint, Scalar};
use crate::tree::Tree;

/// An affine function `base + slope·t` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine<R> {
    pub base: R,
    pub slope: R,
}

impl<R: Scalar> Affine<R> {
    pub fn new(base: R, slope: R) -> Affine<R> {
        Affine { base, slope }
    }

    pub fn constant(v: R) -> Affine<R> {
        Affine {
            base: v,
            slope: R::zero(),
        }
    }

    /// The function `t` itself.
    pub fn time() -> Affine<R> {
        Affine {
            base: R::zero(),
            slope: R::one(),
        }
    }

    /// `a − t` for sliding labels downward.
    pub fn descending(a: R) -> Affine<R> {
        Affine {
            base: a,
            slope: -R::one(),
        }
    }

    pub fn eval(&self, t: &R) -> R {
        self.base.clone() + self.slope.clone() * t.clone()
    }

    /// `s ↦ self(s + c)`.
    pub fn time_shift(&self, c: &R) -> Affine<R> {
        Affine {
            base: self.base.clone() + self.slope.clone() * c.clone(),
            slope: self.slope.clone(),
        }
    }

    /// `s ↦ self(k·s)`.
    pub fn time_scale(&self, k: &R) -> Affine<R> {
        Affine {
            base: self.base.clone(),
            slope: self.slope.clone() * k.clone(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }
}

impl<R: Scalar> fmt::Display for Affine<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", self.base)
        } else if self.base.is_zero() {
            write!(f, "{}*t", self.slope)
        } else if self.slope.is_negative() {
            write!(f, "{}-{}*t", self.base, -self.slope.clone())
        } else {
            write!(f, "{}+{}*t", self.base, self.slope)
        }
    }
}

/// A one-parameter family of points, affine in local time.
pub trait Family<R: Scalar>: Clone {
    type Point: Clone + Eq + fmt::Debug;

    /// Evaluate and return the normalized point.
    fn at(&self, t: &R) -> Self::Point;

    /// `s ↦ self(s + c)`.
    fn time_shift(&self, c: &R) -> Self;

    /// `s ↦ self(k·s)`; `k` may be negative (used by reversal).
    fn time_scale(&self, k: &R) -> Self;

    /// The constant family at a point.
    fn constant(p: &Self::Point) -> Self;

    /// Whether the family stays inside its value space for local time in
    /// `[0, duration]`.
    fn valid_on(&self, _duration: &R) -> bool {
        true
    }
}

impl<R: Scalar> Family<R> for Tree<Affine<R>> {
    type Point = Tree<R>;

    fn at(&self, t: &R) -> Tree<R> {
        self.map_labels(&|a| a.eval(t)).normalize()
    }

    fn time_shift(&self, c: &R) -> Self {
        self.map_labels(&|a| a.time_shift(c))
    }

    fn time_scale(&self, k: &R) -> Self {
        self.map_labels(&|a| a.time_scale(k))
    }

    fn constant(p: &Tree<R>) -> Self {
        p.map_labels(&|r| Affine::constant(r.clone()))
    }

    fn valid_on(&self, duration: &R) -> bool {
        let zero = R::zero();
        let mut ok = true;
        self.for_each_label(&mut |a: &Affine<R>| {
            ok &= in_unit_interval(&a.eval(&zero)) && in_unit_interval(&a.eval(duration));
        });
        ok
    }
}

/// The constant family at a labeled tree, for grafting fixed subtrees into
/// moving ones.
pub fn const_family<R: Scalar>(t: &Tree<R>) -> Tree<Affine<R>> {
    t.map_labels(&|r| Affine::constant(r.clone()))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("a path needs at least one segment")]
    Empty,
    #[error("segment {0} has negative duration")]
    NegativeDuration(usize),
    #[error("segment {0} leaves the value space on its time interval")]
    SegmentRange(usize),
    #[error("consecutive segments disagree at junction {0}")]
    Junction(usize),
    #[error("juxtaposition endpoint mismatch")]
    EndpointMismatch,
    #[error("evaluation time is negative")]
    NegativeTime,
    #[error("cut bounds must satisfy 0 <= a <= b")]
    BadCut,
    #[error("star composition parameters must satisfy 0 < a < b < 1")]
    BadStarParameter,
    #[error("star composition expects unit-length paths")]
    NotUnitLength,
}

/// A Moore path: ordered segments of (family, duration).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoorePath<R: Scalar, F: Family<R>> {
    segments: Vec<(F, R)>,
}

impl<R: Scalar, F: Family<R>> MoorePath<R, F> {
    /// Validate durations, segment ranges and junction continuity, then
    /// drop zero-duration segments (keeping one if nothing remains).
    pub fn new(segments: Vec<(F, R)>) -> Result<MoorePath<R, F>, PathError> {
        if segments.is_empty() {
            return Err(PathError::Empty);
        }
        for (k, (f, d)) in segments.iter().enumerate() {
            if d.is_negative() {
                return Err(PathError::NegativeDuration(k));
            }
            if !f.valid_on(d) {
                return Err(PathError::SegmentRange(k));
            }
        }
        for k in 0..segments.len() - 1 {
            let (f, d) = &segments[k];
            let (g, _) = &segments[k + 1];
            if f.at(d) != g.at(&R::zero()) {
                return Err(PathError::Junction(k));
            }
        }
        let first = F::constant(&segments[0].0.at(&R::zero()));
        let mut kept: Vec<(F, R)> = segments
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .collect();
        if kept.is_empty() {
            kept.push((first, R::zero()));
        }
        Ok(MoorePath { segments: kept })
    }

    /// The constant path of the given length.
    pub fn constant(point: &F::Point, length: R) -> MoorePath<R, F> {
        MoorePath {
            segments: vec![(F::constant(point), length)],
        }
    }

    pub fn segments(&self) -> &[(F, R)] {
        &self.segments
    }

    pub fn total_length(&self) -> R {
        self.segments
            .iter()
            .fold(R::zero(), |acc, (_, d)| acc + d.clone())
    }

    pub fn start(&self) -> F::Point {
        self.segments[0].0.at(&R::zero())
    }

    pub fn end(&self) -> F::Point {
        let (f, d) = self.segments.last().expect("non-empty");
        f.at(d)
    }

    /// Evaluate at global time `t ≥ 0` under the Moore convention.
    pub fn eval(&self, t: &R) -> Result<F::Point, PathError> {
        if t.is_negative() {
            return Err(PathError::NegativeTime);
        }
        let mut local = t.clone();
        for (f, d) in &self.segments {
            if local <= *d {
                return Ok(f.at(&local));
            }
            local = local - d.clone();
        }
        Ok(self.end())
    }

    /// Cumulative segment boundaries, `0` and the total length included.
    pub fn breakpoints(&self) -> Vec<R> {
        let mut out = vec![R::zero()];
        let mut acc = R::zero();
        for (_, d) in &self.segments {
            acc = acc + d.clone();
            out.push(acc.clone());
        }
        out
    }

    /// Juxtaposition `self · other`; lengths add.
    pub fn juxtapose(&self, other: &MoorePath<R, F>) -> Result<MoorePath<R, F>, PathError> {
        if self.end() != other.start() {
            return Err(PathError::EndpointMismatch);
        }
        let mut segs = self.segments.clone();
        segs.extend(other.segments.iter().cloned());
        MoorePath::new(segs)
    }

    /// The cut `γ_{[a,b]}`, of length `b − a`, frozen at the endpoint past
    /// the original length.
    pub fn cut(&self, a: &R, b: &R) -> Result<MoorePath<R, F>, PathError> {
        if a.is_negative() || a > b {
            return Err(PathError::BadCut);
        }
        if a == b {
            return Ok(MoorePath::constant(&self.eval(a)?, R::zero()));
        }
        let mut segs: Vec<(F, R)> = Vec::new();
        let mut seg_start = R::zero();
        for (f, d) in &self.segments {
            let seg_end = seg_start.clone() + d.clone();
            let lo = if *a > seg_start { a.clone() } else { seg_start.clone() };
            let hi = if *b < seg_end { b.clone() } else { seg_end.clone() };
            if lo < hi {
                let local = lo.clone() - seg_start.clone();
                segs.push((f.time_shift(&local), hi - lo));
            }
            seg_start = seg_end;
        }
        // seg_start is now the total length; freeze the tail if b overruns
        if *b > seg_start {
            let from = if *a > seg_start { a.clone() } else { seg_start };
            segs.push((F::constant(&self.end()), b.clone() - from));
        }
        MoorePath::new(segs)
    }

    /// Time reversal: `t ↦ γ(len − t)`.
    pub fn reverse(&self) -> MoorePath<R, F> {
        let minus_one = -R::one();
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|(f, d)| (f.time_shift(d).time_scale(&minus_one), d.clone()))
            .collect();
        MoorePath { segments }
    }

    /// Affine reparameterization onto total length `new_len > 0`.
    pub fn rescale_to(&self, new_len: &R) -> MoorePath<R, F> {
        assert!(new_len > &R::zero(), "rescale target must be positive");
        let len = self.total_length();
        if len.is_zero() {
            return MoorePath::constant(&self.start(), new_len.clone());
        }
        let k = len.clone() / new_len.clone();
        let segments = self
            .segments
            .iter()
            .map(|(f, d)| (f.time_scale(&k), d.clone() * new_len.clone() / len.clone()))
            .collect();
        MoorePath { segments }
    }

    /// Map every segment family, revalidating the result.
    pub fn map_segments<G: Family<R>>(
        &self,
        f: impl Fn(&F) -> G,
    ) -> Result<MoorePath<R, G>, PathError> {
        MoorePath::new(
            self.segments
                .iter()
                .map(|(fam, d)| (f(fam), d.clone()))
                .collect(),
        )
    }

    /// Decide equality of paths: equal lengths, then agreement at both ends
    /// and the midpoint of every piece of the common refinement. Labels are
    /// affine per piece, so on matching shapes three samples pin the piece;
    /// callers wanting more confidence can compare extra sample times via
    /// [`MoorePath::eval`].
    pub fn path_equal(&self, other: &MoorePath<R, F>) -> bool {
        if self.total_length() != other.total_length() {
            return false;
        }
        let mut cuts = self.breakpoints();
        cuts.extend(other.breakpoints());
        cuts.sort();
        cuts.dedup();
        if cuts.len() == 1 {
            return self.start() == other.start();
        }
        for w in cuts.windows(2) {
            let mid = midpoint(&w[0], &w[1]);
            for t in [&w[0], &mid, &w[1]] {
                if self.eval(t) != other.eval(t) {
                    return false;
                }
            }
        }
        true
    }
}

/// `x_{c;a,b} = a(c−b) / (b(c−a))` for `0 < a < b < c`.
pub fn x_value<R: Scalar>(c: &R, a: &R, b: &R) -> Result<R, PathError> {
    if !(R::zero() < *a && a < b && b < c) {
        return Err(PathError::BadStarParameter);
    }
    Ok(a.clone() * (c.clone() - b.clone()) / (b.clone() * (c.clone() - a.clone())))
}

fn require_unit_length<R: Scalar, F: Family<R>>(p: &MoorePath<R, F>) -> Result<(), PathError> {
    if p.total_length() != R::one() {
        return Err(PathError::NotUnitLength);
    }
    Ok(())
}

/// `α₁ *ᵃ α₂` on unit-length paths: `α₁` rescaled to `[0,a]`, `α₂` to `[a,1]`.
pub fn star_compose<R: Scalar, F: Family<R>>(
    a1: &MoorePath<R, F>,
    a2: &MoorePath<R, F>,
    a: &R,
) -> Result<MoorePath<R, F>, PathError> {
    if !(R::zero() < *a && *a < R::one()) {
        return Err(PathError::BadStarParameter);
    }
    require_unit_length(a1)?;
    require_unit_length(a2)?;
    a1.rescale_to(a)
        .juxtapose(&a2.rescale_to(&(R::one() - a.clone())))
}

/// `α₁ *ᵃ α₂ *ᵇ α₃` on unit-length paths for `0 < a < b < 1`.
pub fn star_compose3<R: Scalar, F: Family<R>>(
    a1: &MoorePath<R, F>,
    a2: &MoorePath<R, F>,
    a3: &MoorePath<R, F>,
    a: &R,
    b: &R,
) -> Result<MoorePath<R, F>, PathError> {
    if !(R::zero() < *a && a < b && *b < R::one()) {
        return Err(PathError::BadStarParameter);
    }
    require_unit_length(a1)?;
    require_unit_length(a2)?;
    require_unit_length(a3)?;
    a1.rescale_to(a)
        .juxtapose(&a2.rescale_to(&(b.clone() - a.clone())))?
        .juxtapose(&a3.rescale_to(&(R::one() - b.clone())))
}

/// Tree-space paths, the most common instantiation.
pub type TreePath<R> = MoorePath<R, Tree<Affine<R>>>;
