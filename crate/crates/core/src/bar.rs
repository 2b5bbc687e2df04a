//! The two-sided bar construction over finite discrete coefficients.
//!
//! An element is a tree with `n+2` leaves whose first leaf carries a right
//! module label, whose last leaf carries a left module label (possibly a
//! cone point) and whose middle leaves carry monoid elements. The rewriting
//! normal form evaluates full-length edges through the structure maps,
//! contracts zero-length edges, and erases unit labels by degeneracy; since
//! the coefficients are discrete, the structure maps are tree-independent
//! and every identity is decided exactly.
//!
//! Path-valued operations (the usual map and its higher loops, the
//! retraction homotopy Γ and its interpolation H, the projected paths α_P,
//! the cone paths γ_p, the equivariant family F_n and the relative loops β)
//! reuse the Moore-path machinery with bar-valued families.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::action::FiniteAction;
use crate::moore::{const_family, Affine, Family, MoorePath, PathError};
use crate::operad_k::{length_l, shapes, KError};
use crate::paths::{gamma, lambda, sigma, PathsError};
use crate::scalar::{in_unit_interval, Scalar};
use crate::tree::{Redex, Tree, TreeError};

/// Label of an end slot (the first or last leaf).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EndLabel<R> {
    /// The one-point space; absorbs every action.
    Star,
    /// The monoid acting on itself.
    Monoid(usize),
    /// An element of the designated finite module (left set for the last
    /// slot, right set for the first slot).
    Set(usize),
    /// A cone point `[p, h]` over the left set, `0 ≤ h ≤ 1`.
    Cone { base: usize, height: R },
    /// The cone tip: every `[p, 1]` identified.
    Apex,
}

impl<R: Scalar> EndLabel<R> {
    /// Canonical form: height 0 is the embedded base, height 1 the apex.
    fn canonical(self) -> EndLabel<R> {
        match self {
            EndLabel::Cone { base, height } => {
                if height.is_zero() {
                    EndLabel::Set(base)
                } else if height.is_one() {
                    EndLabel::Apex
                } else {
                    EndLabel::Cone { base, height }
                }
            }
            other => other,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BarError {
    #[error("tree has {leaves} leaves but labels give {labels}")]
    LabelCount { leaves: usize, labels: usize },
    #[error("monoid element index {0} out of range")]
    BadElement(usize),
    #[error("module label out of range or module not present")]
    BadModule,
    #[error("cone heights must lie in [0,1]")]
    BadHeight,
    #[error("cone points may only label the last slot")]
    ConeInFirstSlot,
    #[error("operation requires a {0} label in this slot")]
    SlotKind(&'static str),
    #[error("a time parameter is outside [0,1]")]
    BadTime,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Paths(#[from] PathsError),
    #[error(transparent)]
    Length(#[from] KError),
}

/// An element `[T; q, x₁…xₙ, p]` of a two-sided bar construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarElement<R: Scalar> {
    pub action: Arc<FiniteAction>,
    pub tree: Tree<R>,
    pub q: EndLabel<R>,
    pub xs: Vec<usize>,
    pub p: EndLabel<R>,
}

impl<R: Scalar> fmt::Display for BarElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::literal::bar_literal(self))
    }
}

fn check_end<R: Scalar>(
    action: &FiniteAction,
    label: &EndLabel<R>,
    first_slot: bool,
) -> Result<(), BarError> {
    match label {
        EndLabel::Star => Ok(()),
        EndLabel::Monoid(x) => {
            if *x >= action.len() {
                Err(BarError::BadElement(*x))
            } else {
                Ok(())
            }
        }
        EndLabel::Set(i) => {
            let set = if first_slot {
                action.right_set()
            } else {
                action.left_set()
            };
            match set {
                Some(s) if *i < s.names.len() => Ok(()),
                _ => Err(BarError::BadModule),
            }
        }
        EndLabel::Cone { base, height } => {
            if first_slot {
                return Err(BarError::ConeInFirstSlot);
            }
            if !in_unit_interval(height) {
                return Err(BarError::BadHeight);
            }
            match action.left_set() {
                Some(s) if *base < s.names.len() => Ok(()),
                _ => Err(BarError::BadModule),
            }
        }
        EndLabel::Apex => {
            if first_slot {
                Err(BarError::ConeInFirstSlot)
            } else {
                Ok(())
            }
        }
    }
}

impl<R: Scalar> BarElement<R> {
    pub fn new(
        action: Arc<FiniteAction>,
        tree: Tree<R>,
        q: EndLabel<R>,
        xs: Vec<usize>,
        p: EndLabel<R>,
    ) -> Result<BarElement<R>, BarError> {
        let leaves = tree.leaf_count();
        if leaves != xs.len() + 2 {
            return Err(BarError::LabelCount {
                leaves,
                labels: xs.len() + 2,
            });
        }
        check_end(&action, &q, true)?;
        check_end(&action, &p, false)?;
        if let Some(&x) = xs.iter().find(|&&x| x >= action.len()) {
            return Err(BarError::BadElement(x));
        }
        Ok(BarElement {
            action,
            tree,
            q,
            xs,
            p: p.canonical(),
        })
    }

    /// `q · y` through the right structure.
    fn right_act(&self, q: &EndLabel<R>, y: usize) -> EndLabel<R> {
        match q {
            EndLabel::Star => EndLabel::Star,
            EndLabel::Monoid(z) => EndLabel::Monoid(self.action.mul(*z, y)),
            EndLabel::Set(i) => EndLabel::Set(self.action.right_act(*i, y)),
            EndLabel::Cone { .. } | EndLabel::Apex => unreachable!("cone in first slot"),
        }
    }

    /// `y · p` through the left structure; the apex is fixed.
    fn left_act(&self, y: usize, p: &EndLabel<R>) -> EndLabel<R> {
        match p {
            EndLabel::Star => EndLabel::Star,
            EndLabel::Monoid(z) => EndLabel::Monoid(self.action.mul(y, *z)),
            EndLabel::Set(i) => EndLabel::Set(self.action.left_act(y, *i)),
            EndLabel::Cone { base, height } => EndLabel::Cone {
                base: self.action.left_act(y, *base),
                height: height.clone(),
            },
            EndLabel::Apex => EndLabel::Apex,
        }
    }

    /// Evaluate the full-length edge with preorder index `k`: the subtree
    /// hanging there is absorbed into a single label through the structure
    /// map matching its position.
    fn evaluate_edge(&self, k: usize) -> BarElement<R> {
        let (outer, pos, _label, inner) = self.tree.split_at_edge(k).expect("edge index");
        let m = inner.leaf_count();
        let n = self.xs.len();
        let lo = pos - 1; // first combined label index of the block
        let hi = pos + m - 2; // last combined label index
        debug_assert!(!(lo == 0 && hi == n + 1), "block cannot span both ends");
        let mut out = self.clone();
        out.tree = outer;
        if lo == 0 {
            let y = self.action.product(self.xs[..hi].iter().copied());
            out.q = self.right_act(&self.q, y);
            out.xs = self.xs[hi..].to_vec();
        } else if hi == n + 1 {
            let y = self.action.product(self.xs[lo - 1..].iter().copied());
            out.p = self.left_act(y, &self.p).canonical();
            out.xs = self.xs[..lo - 1].to_vec();
        } else {
            let y = self.action.product(self.xs[lo - 1..hi].iter().copied());
            out.xs.splice(lo - 1..hi, [y]);
        }
        out
    }

    /// Erase the unit middle label at `xs[i]` by degeneracy.
    fn erase_unit(&self, i: usize) -> BarElement<R> {
        debug_assert_eq!(self.xs[i], self.action.unit());
        let mut out = self.clone();
        out.tree = self.tree.degeneracy(i + 2).expect("leaf in range");
        out.xs.remove(i);
        out
    }

    /// The rewriting normal form: tree quotient, full-length edges
    /// evaluated, unit labels erased, cone heights canonicalized.
    pub fn normalize(&self) -> BarElement<R> {
        let mut cur = self.clone();
        cur.p = cur.p.canonical();
        loop {
            let t = cur.tree.normalize();
            if t != cur.tree {
                cur.tree = t;
                continue;
            }
            if let Some(k) = find_full_edge(&cur.tree) {
                cur = cur.evaluate_edge(k);
                cur.p = cur.p.canonical();
                continue;
            }
            if let Some(i) = cur.xs.iter().position(|&x| x == cur.action.unit()) {
                cur = cur.erase_unit(i);
                continue;
            }
            return cur;
        }
    }

    /// Every available rewriting step, for randomized confluence checks.
    pub fn redexes(&self) -> Vec<BarRedex> {
        let mut out: Vec<BarRedex> = self.tree.redexes().into_iter().map(BarRedex::Tree).collect();
        for k in 0..self.tree.internal_edge_count() {
            if edge_label_is_one(&self.tree, k) {
                out.push(BarRedex::FullEdge(k));
            }
        }
        for (i, &x) in self.xs.iter().enumerate() {
            if x == self.action.unit() {
                out.push(BarRedex::UnitLabel(i));
            }
        }
        out
    }

    pub fn apply_redex(&self, r: &BarRedex) -> BarElement<R> {
        let mut out = match r {
            BarRedex::Tree(t) => {
                let mut o = self.clone();
                o.tree = self.tree.apply_redex(t);
                o
            }
            BarRedex::FullEdge(k) => self.evaluate_edge(*k),
            BarRedex::UnitLabel(i) => self.erase_unit(*i),
        };
        out.p = out.p.canonical();
        out
    }

    pub fn is_normal(&self) -> bool {
        *self == self.normalize()
    }
}

fn edge_label_is_one<R: Scalar>(t: &Tree<R>, k: usize) -> bool {
    t.split_at_edge(k)
        .map(|(_, _, l, _)| l.is_one())
        .unwrap_or(false)
}

/// Preorder index of the first full-length edge, in one traversal.
fn find_full_edge<R: Scalar>(t: &Tree<R>) -> Option<usize> {
    let mut index = 0usize;
    let mut found = None;
    fn go<R: Scalar>(
        ch: &[crate::tree::Branch<R>],
        index: &mut usize,
        found: &mut Option<usize>,
    ) {
        for b in ch {
            if found.is_some() {
                return;
            }
            if let crate::tree::Branch::Edge(l, gch) = b {
                if l.is_one() {
                    *found = Some(*index);
                    return;
                }
                *index += 1;
                go(gch, index, found);
            }
        }
    }
    if let Tree::Rooted(ch) = t {
        go(ch, &mut index, &mut found);
    }
    found
}

/// One rewriting opportunity in a bar element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarRedex {
    /// A quotient step on the underlying tree.
    Tree(Redex),
    /// Evaluate the full-length edge with this preorder index.
    FullEdge(usize),
    /// Erase the unit middle label at this index.
    UnitLabel(usize),
}

/// The last-slot label of a path segment: fixed, or a cone whose height is
/// affine in local time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndFamily<R> {
    Fixed(EndLabel<R>),
    Cone { base: usize, height: Affine<R> },
}

impl<R: Scalar> EndFamily<R> {
    fn at(&self, t: &R) -> EndLabel<R> {
        match self {
            EndFamily::Fixed(l) => l.clone().canonical(),
            EndFamily::Cone { base, height } => EndLabel::Cone {
                base: *base,
                height: height.eval(t),
            }
            .canonical(),
        }
    }
}

/// A one-parameter family of bar elements: the tree labels and the cone
/// height vary affinely, the discrete labels are constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarFamily<R: Scalar> {
    pub action: Arc<FiniteAction>,
    pub tree: Tree<Affine<R>>,
    pub q: EndLabel<R>,
    pub xs: Vec<usize>,
    pub p: EndFamily<R>,
}

impl<R: Scalar> Family<R> for BarFamily<R> {
    type Point = BarElement<R>;

    fn at(&self, t: &R) -> BarElement<R> {
        BarElement {
            action: self.action.clone(),
            tree: self.tree.map_labels(&|a| a.eval(t)),
            q: self.q.clone(),
            xs: self.xs.clone(),
            p: self.p.at(t),
        }
        .normalize()
    }

    fn time_shift(&self, c: &R) -> Self {
        let mut out = self.clone();
        out.tree = self.tree.map_labels(&|a| a.time_shift(c));
        if let EndFamily::Cone { base, height } = &self.p {
            out.p = EndFamily::Cone {
                base: *base,
                height: height.time_shift(c),
            };
        }
        out
    }

    fn time_scale(&self, k: &R) -> Self {
        let mut out = self.clone();
        out.tree = self.tree.map_labels(&|a| a.time_scale(k));
        if let EndFamily::Cone { base, height } = &self.p {
            out.p = EndFamily::Cone {
                base: *base,
                height: height.time_scale(k),
            };
        }
        out
    }

    fn constant(p: &BarElement<R>) -> Self {
        BarFamily {
            action: p.action.clone(),
            tree: const_family(&p.tree),
            q: p.q.clone(),
            xs: p.xs.clone(),
            p: EndFamily::Fixed(p.p.clone()),
        }
    }

    fn valid_on(&self, duration: &R) -> bool {
        let zero = R::zero();
        let mut ok = true;
        self.tree.for_each_label(&mut |a: &Affine<R>| {
            ok &= in_unit_interval(&a.eval(&zero)) && in_unit_interval(&a.eval(duration));
        });
        if let EndFamily::Cone { height, .. } = &self.p {
            ok &= in_unit_interval(&height.eval(&zero)) && in_unit_interval(&height.eval(duration));
        }
        ok
    }
}

pub type BarPath<R> = MoorePath<R, BarFamily<R>>;

/// Turn a tree path into a bar path with fixed labels.
pub fn label_path<R: Scalar>(
    path: &crate::moore::TreePath<R>,
    action: &Arc<FiniteAction>,
    q: EndLabel<R>,
    xs: Vec<usize>,
    p: EndFamily<R>,
) -> Result<BarPath<R>, BarError> {
    Ok(path.map_segments(|fam| BarFamily {
        action: action.clone(),
        tree: fam.clone(),
        q: q.clone(),
        xs: xs.clone(),
        p: p.clone(),
    })?)
}

/// The basepoint class `[δ₂; ∗, ∗]` of `B(∗,X,∗)`.
pub fn basepoint<R: Scalar>(action: &Arc<FiniteAction>) -> BarElement<R> {
    BarElement {
        action: action.clone(),
        tree: Tree::corolla(2),
        q: EndLabel::Star,
        xs: Vec::new(),
        p: EndLabel::Star,
    }
}

/// The usual map `f(x)`: the length-two loop sliding `x` across the tree.
pub fn usual_map<R: Scalar>(action: &Arc<FiniteAction>, x: usize) -> Result<BarPath<R>, BarError> {
    if x >= action.len() {
        return Err(BarError::BadElement(x));
    }
    let delta2 = const_family::<R>(&Tree::corolla(2));
    let down = delta2.graft(2, Affine::descending(R::one()), &delta2)?;
    let up = delta2.graft(1, Affine::time(), &delta2)?;
    let seg = |tree| BarFamily {
        action: action.clone(),
        tree,
        q: EndLabel::Star,
        xs: vec![x],
        p: EndFamily::Fixed(EndLabel::Star),
    };
    Ok(MoorePath::new(vec![
        (seg(down), R::one()),
        (seg(up), R::one()),
    ])?)
}

/// The higher loops `f_n(T; xs)(t) = [σ(T)(t); ∗, xs, ∗]` of the usual map.
pub fn f_n<R: Scalar>(
    action: &Arc<FiniteAction>,
    t: &Tree<R>,
    xs: &[usize],
) -> Result<BarPath<R>, BarError> {
    let n = t.normalize();
    if n.leaf_count() != xs.len() + 1 {
        return Err(BarError::LabelCount {
            leaves: n.leaf_count() + 1,
            labels: xs.len() + 2,
        });
    }
    label_path(
        &sigma(&n)?.path,
        action,
        EndLabel::Star,
        xs.to_vec(),
        EndFamily::Fixed(EndLabel::Star),
    )
}

/// The embedding `p ↦ [δ₂; e, p]` of the left module into `B(X,X,P)`.
pub fn embed<R: Scalar>(action: &Arc<FiniteAction>, p: usize) -> Result<BarElement<R>, BarError> {
    BarElement::new(
        action.clone(),
        Tree::corolla(2),
        EndLabel::Monoid(action.unit()),
        Vec::new(),
        EndLabel::Set(p),
    )
}

/// The retraction `[T; x, xs, p] ↦ N(T; x, xs, p)`: the whole word acts on
/// the last label. Requires a monoid label in the first slot.
pub fn retract<R: Scalar>(el: &BarElement<R>) -> Result<EndLabel<R>, BarError> {
    let EndLabel::Monoid(x) = el.q else {
        return Err(BarError::SlotKind("monoid"));
    };
    let y = el
        .action
        .mul(x, el.action.product(el.xs.iter().copied()));
    Ok(el.left_act(y, &el.p).canonical())
}

/// The retraction homotopy `Γ(el)(t) = [γ_T(t); e, x, xs, p]` as a
/// unit-length path from `[T∘₁δ₂; e, x, xs, p]` to the embedded retraction.
pub fn big_gamma_path<R: Scalar>(el: &BarElement<R>) -> Result<BarPath<R>, BarError> {
    let EndLabel::Monoid(x) = el.q else {
        return Err(BarError::SlotKind("monoid"));
    };
    let mut xs = Vec::with_capacity(el.xs.len() + 1);
    xs.push(x);
    xs.extend(&el.xs);
    label_path(
        &gamma(&el.tree)?.path,
        &el.action,
        EndLabel::Monoid(el.action.unit()),
        xs,
        EndFamily::Fixed(el.p.clone()),
    )
}

/// Γ evaluated at `t ∈ [0,1]`.
pub fn big_gamma<R: Scalar>(el: &BarElement<R>, t: &R) -> Result<BarElement<R>, BarError> {
    if !in_unit_interval(t) {
        return Err(BarError::BadTime);
    }
    Ok(big_gamma_path(el)?.eval(t)?)
}

/// The interpolating homotopy `H_{(T∘₁S, T)}(x, xs, p)(t, u)` between
/// `Γ(T∘₁S)` (at `u = 0`) and the reduced `Γ(T)` (at `u = 1`).
#[allow(clippy::too_many_arguments)]
pub fn h_homotopy<R: Scalar>(
    action: &Arc<FiniteAction>,
    t_tree: &Tree<R>,
    s_tree: &Tree<R>,
    x: usize,
    xs: &[usize],
    p: &EndLabel<R>,
    t: &R,
    u: &R,
) -> Result<BarElement<R>, BarError> {
    if !in_unit_interval(t) || !in_unit_interval(u) {
        return Err(BarError::BadTime);
    }
    let s_leaves = s_tree.leaf_count();
    if xs.len() + 2 < s_leaves + 1 {
        return Err(BarError::LabelCount {
            leaves: t_tree.leaf_count() + s_leaves - 1,
            labels: xs.len() + 2,
        });
    }
    let l_s = length_l(s_tree)?;
    let l = length_l(t_tree)? + l_s.clone();
    // the S-block (x, x₁ … x_{|S|−1}) reduces to one monoid label
    let reduced = action.mul(x, action.product(xs[..s_leaves - 1].iter().copied()));
    let rest = xs[s_leaves - 1..].to_vec();
    let el = BarElement::new(
        action.clone(),
        t_tree.clone(),
        EndLabel::Monoid(reduced),
        rest,
        p.clone(),
    )?;
    let threshold = (R::one() - u.clone()) * l_s / l;
    if *t <= threshold {
        Ok(el.normalize())
    } else {
        let rescaled = (t.clone() - threshold.clone()) / (R::one() - threshold);
        big_gamma(&el, &rescaled)
    }
}

/// `α_P`: the reversed projection of Γ to `B(∗,X,P)`, running from the
/// embedded retraction `[δ₂; ∗, N(T;x,xs,p)]` to `[T; ∗, xs, p]`.
pub fn alpha_p<R: Scalar>(el: &BarElement<R>) -> Result<BarPath<R>, BarError> {
    let projected = big_gamma_path(el)?.map_segments(|fam| {
        let mut f = fam.clone();
        f.q = EndLabel::Star;
        f
    })?;
    Ok(projected.reverse())
}

/// The relative embedding `γ_p(t) = [δ₂; ∗, [p, t]]`, from the embedded
/// point at height zero to the apex class.
pub fn embed_relative<R: Scalar>(
    action: &Arc<FiniteAction>,
    p: usize,
) -> Result<BarPath<R>, BarError> {
    match action.left_set() {
        Some(s) if p < s.names.len() => {}
        _ => return Err(BarError::BadModule),
    }
    let fam = BarFamily {
        action: action.clone(),
        tree: const_family::<R>(&Tree::corolla(2)),
        q: EndLabel::Star,
        xs: Vec::new(),
        p: EndFamily::Cone {
            base: p,
            height: Affine::time(),
        },
    };
    Ok(MoorePath::new(vec![(fam, R::one())])?)
}

/// The equivariant family
/// `F_n(T; xs, p) = Λ(T; xs, p) · [T; ∗, xs, [p, t]]` with
/// `Λ(T; xs, p)(t) = [λ(T)(t); ∗, xs, [p, 0]]`.
pub fn f_n_equivariant<R: Scalar>(
    action: &Arc<FiniteAction>,
    t: &Tree<R>,
    xs: &[usize],
    p: usize,
) -> Result<BarPath<R>, BarError> {
    let n = t.normalize();
    if n.leaf_count() != xs.len() + 2 {
        return Err(BarError::LabelCount {
            leaves: n.leaf_count(),
            labels: xs.len() + 2,
        });
    }
    let cone0 = EndFamily::Fixed(EndLabel::Cone {
        base: p,
        height: R::zero(),
    });
    let moving = label_path(
        &lambda(&n)?.path,
        action,
        EndLabel::Star,
        xs.to_vec(),
        cone0,
    )?;
    let rising = BarFamily {
        action: action.clone(),
        tree: const_family(&n),
        q: EndLabel::Star,
        xs: xs.to_vec(),
        p: EndFamily::Cone {
            base: p,
            height: Affine::time(),
        },
    };
    Ok(moving.juxtapose(&MoorePath::new(vec![(rising, R::one())])?)?)
}

/// The relative loop `β(el)`: the reversed cone path of the retraction
/// followed by `α_P`, from the apex class into `P⫽X`.
pub fn beta<R: Scalar>(el: &BarElement<R>) -> Result<BarPath<R>, BarError> {
    let EndLabel::Set(n0) = retract(el)? else {
        return Err(BarError::SlotKind("left set"));
    };
    let descending = BarFamily {
        action: el.action.clone(),
        tree: const_family::<R>(&Tree::corolla(2)),
        q: EndLabel::Star,
        xs: Vec::new(),
        p: EndFamily::Cone {
            base: n0,
            height: Affine::descending(R::one()),
        },
    };
    let first = MoorePath::new(vec![(descending, R::one())])?;
    Ok(first.juxtapose(&alpha_p(el)?)?)
}

/// A discrete structure-map evaluator: a tree, its monoid word, and a
/// module point, to a module point.
pub type StructureMap<'a, R> = &'a dyn Fn(&Tree<R>, &[usize], usize) -> usize;

/// Map-family structure maps from action structure maps:
/// `f_{n−1}(T; xs)(p) = N_n(deshift T; xs, p)`.
pub fn n_to_f<'a, R: Scalar>(
    n: StructureMap<'a, R>,
) -> impl Fn(&Tree<R>, &[usize], usize) -> usize + 'a {
    move |t, xs, p| n(&t.deshift(), xs, p)
}

/// Action structure maps from map-family structure maps, via the shift.
pub fn f_to_n<'a, R: Scalar>(
    f: StructureMap<'a, R>,
) -> impl Fn(&Tree<R>, &[usize], usize) -> usize + 'a {
    move |t, xs, p| f(&t.shift(), xs, p)
}

/// The discrete action structure map: the word acts on the point,
/// independently of the tree.
pub fn discrete_n<R: Scalar>(action: &FiniteAction, _t: &Tree<R>, xs: &[usize], p: usize) -> usize {
    action.left_act(action.product(xs.iter().copied()), p)
}

/// One violation found by [`validate_iwase_mimura`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImViolation {
    pub condition: &'static str,
    pub detail: String,
}

/// Report of the action-axiom conditions checked over all tree shapes up to
/// a leaf bound and all label words.
#[derive(Clone, Debug, Default)]
pub struct ImReport {
    pub checked: usize,
    pub violations: Vec<ImViolation>,
}

impl ImReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the associativity condition, the nested-action condition, the
/// basepoint condition along `h(x) = x·p₀`, and the unit-degeneracy
/// consequence, exhaustively over shapes with at most `max_leaves` leaves.
pub fn validate_iwase_mimura(action: &FiniteAction, max_leaves: usize) -> ImReport {
    let mut report = ImReport::default();
    let Some(left) = action.left_set() else {
        report.violations.push(ImViolation {
            condition: "shape",
            detail: "no left module to act on".into(),
        });
        return report;
    };
    let n_el = action.len();
    let n_pts = left.names.len();
    let ok_shape = !action.is_empty()
        && left.table.len() == n_el
        && left.table.iter().all(|r| r.len() == n_pts)
        && left.table.iter().all(|r| r.iter().all(|&v| v < n_pts));
    if !ok_shape {
        report.violations.push(ImViolation {
            condition: "shape",
            detail: "action table has wrong dimensions or entries".into(),
        });
        return report;
    }
    let prod = |word: &[usize]| action.product(word.iter().copied());
    let act = |y: usize, p: usize| action.left_act(y, p);
    // N_k(T; xs, p): the word acts once, through the left-folded product
    let n_eval = |xs: &[usize], p: usize| act(prod(xs), p);

    let mut words_cache: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for k in 1..max_leaves {
        let mut next = Vec::new();
        for w in &words_cache[k - 1] {
            for x in 0..n_el {
                let mut w2 = w.clone();
                w2.push(x);
                next.push(w2);
            }
        }
        words_cache.push(next);
    }
    let shape_lists: Vec<Vec<Tree<()>>> = (0..=max_leaves)
        .map(|n| if n == 0 { Vec::new() } else { shapes(n) })
        .collect();

    // conditions on compositions ρ ∘ⱼ τ
    for r in 2..=max_leaves {
        for s in 1..=max_leaves {
            let k = r + s - 1;
            if k > max_leaves {
                continue;
            }
            for rho in &shape_lists[r] {
                for tau in &shape_lists[s] {
                    let _ = (rho, tau); // evaluation is tree-independent by construction
                    for word in &words_cache[k - 1] {
                        for p in 0..n_pts {
                            // j < r: the τ-block multiplies into the word
                            for j in 1..r {
                                report.checked += 1;
                                let merged = prod(&word[j - 1..j + s - 1]);
                                let mut reduced = word[..j - 1].to_vec();
                                reduced.push(merged);
                                reduced.extend(&word[j + s - 1..]);
                                if n_eval(word, p) != n_eval(&reduced, p) {
                                    report.violations.push(ImViolation {
                                        condition: "i",
                                        detail: format!(
                                            "word {word:?} at slot {j}, block {s}, point {p}"
                                        ),
                                    });
                                }
                            }
                            // j = r: the τ-block acts first
                            report.checked += 1;
                            let inner = n_eval(&word[r - 1..], p);
                            if n_eval(word, p) != n_eval(&word[..r - 1], inner) {
                                report.violations.push(ImViolation {
                                    condition: "ii",
                                    detail: format!("word {word:?} split at {r}, point {p}"),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    // basepoint condition along h(x) = x·p₀
    if let Some(p0) = action.basepoint() {
        for k in 1..=max_leaves {
            for word in &words_cache[k - 1] {
                report.checked += 1;
                let h = act(prod(word), p0);
                if n_eval(word, p0) != h {
                    report.violations.push(ImViolation {
                        condition: "iii",
                        detail: format!("word {word:?} at the basepoint"),
                    });
                }
            }
        }
    }
    // unit degeneracy: inserting the unit anywhere is invisible
    for k in 2..=max_leaves {
        for word in &words_cache[k - 2] {
            for i in 0..=word.len() {
                for p in 0..n_pts {
                    report.checked += 1;
                    let mut with_unit = word.clone();
                    with_unit.insert(i, action.unit());
                    if n_eval(&with_unit, p) != n_eval(word, p) {
                        report.violations.push(ImViolation {
                            condition: "unit-degeneracy",
                            detail: format!("word {word:?} with unit at {i}, point {p}"),
                        });
                    }
                }
            }
        }
    }
    report
}
