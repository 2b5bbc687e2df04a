//! The associahedra operad and its two-colored extension.
//!
//! Points of `Kₙ` are normalized closed trees with `n` leaves; operadic
//! composition grafts at full length and normalizes. The comb decomposition
//! splits a tree along the internal edges on its first-leaf spine; it drives
//! the length calculus used by every explicit path family.

use thiserror::Error;

use crate::scalar::{int, Scalar};
use crate::tree::{Branch, Color, Tree, TreeError};

/// `T ∘ᵢ S`: graft at length one and normalize.
pub fn compose_k<R: Scalar>(t: &Tree<R>, i: usize, s: &Tree<R>) -> Result<Tree<R>, TreeError> {
    Ok(t.graft(i, R::one(), s)?.normalize())
}

/// The unique factorization `T = T_{k+1} ∘₁^{u_k} ··· ∘₁^{u_1} T₁` into
/// comb-irreducible factors. `factors[0]` is `T₁` (the factor containing the
/// first leaf) and `factors[k]` the root factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombDecomposition<R> {
    pub factors: Vec<Tree<R>>,
    pub labels: Vec<R>,
}

impl<R: Scalar> CombDecomposition<R> {
    /// Replay the grafts; reproduces the decomposed tree exactly.
    pub fn recompose(&self) -> Tree<R> {
        let mut acc = self.factors[0].clone();
        for (factor, u) in self.factors[1..].iter().zip(&self.labels) {
            acc = factor
                .graft(1, u.clone(), &acc)
                .expect("comb factors recompose");
        }
        acc
    }

    /// `R_i ∘₁^{u_i} L_i = T` with `L_i = T_i ∘₁^{u_{i-1}} ··· T₁` and `R_i`
    /// the remaining upper part, for `1 ≤ i ≤ k`.
    pub fn split(&self, i: usize) -> (Tree<R>, R, Tree<R>) {
        assert!(i >= 1 && i <= self.labels.len());
        let mut lower = self.factors[0].clone();
        for j in 1..i {
            lower = self.factors[j]
                .graft(1, self.labels[j - 1].clone(), &lower)
                .expect("comb factors recompose");
        }
        let mut upper = self.factors.last().unwrap().clone();
        for j in (i..self.factors.len() - 1).rev() {
            upper = upper
                .graft(1, self.labels[j].clone(), &self.factors[j])
                .expect("comb factors recompose");
        }
        (upper, self.labels[i - 1].clone(), lower)
    }
}

/// Comb decomposition along the first-leaf spine.
pub fn comb_decompose<R: Scalar>(t: &Tree<R>) -> CombDecomposition<R> {
    match t {
        Tree::Unit => CombDecomposition {
            factors: vec![Tree::Unit],
            labels: Vec::new(),
        },
        Tree::Rooted(ch) => {
            if let Some(Branch::Edge(u, d)) = ch.first() {
                let mut outer_children = ch.clone();
                outer_children[0] = Branch::Leaf;
                let outer = Tree::Rooted(outer_children);
                let mut inner = comb_decompose(&Tree::Rooted(d.clone()));
                inner.factors.push(outer);
                inner.labels.push(u.clone());
                inner
            } else {
                CombDecomposition {
                    factors: vec![t.clone()],
                    labels: Vec::new(),
                }
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KError {
    #[error("length is defined for trees with at least one leaf")]
    LengthArity,
    #[error("spine index {index} out of range 1..={spine}")]
    SpineIndex { index: usize, spine: usize },
    #[error("face enumeration supports 2..=9 leaves, got {0}")]
    FacesRange(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelArity { expected: usize, got: usize },
}

/// The length `l(T) = 2(1 + Σ uᵢ)` over the comb spine; `l(δ₁) = 0`.
pub fn length_l<R: Scalar>(t: &Tree<R>) -> Result<R, KError> {
    match t {
        Tree::Unit => Ok(R::zero()),
        Tree::Rooted(ch) if ch.is_empty() => Err(KError::LengthArity),
        _ => {
            let comb = comb_decompose(t);
            let sum = comb.labels.iter().fold(R::zero(), |a, u| a + u.clone());
            Ok(int::<R>(2) * (R::one() + sum))
        }
    }
}

/// `lᵢ(T) = 1 + 2·Σ_{k<i} u_k + uᵢ` for the `i`-th spine label.
pub fn length_li<R: Scalar>(t: &Tree<R>, i: usize) -> Result<R, KError> {
    let comb = comb_decompose(t);
    let spine = comb.labels.len();
    if i == 0 || i > spine {
        return Err(KError::SpineIndex { index: i, spine });
    }
    let prefix = comb.labels[..i - 1]
        .iter()
        .fold(R::zero(), |a, u| a + u.clone());
    Ok(R::one() + int::<R>(2) * prefix + comb.labels[i - 1].clone())
}

/// One face of `Kₙ`: a tree shape and its cell dimension
/// `n − 2 − |i(T)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub shape: Tree<()>,
    pub dim: usize,
}

/// All faces of `Kₙ` for `2 ≤ n ≤ 9`, in a deterministic order.
pub fn enumerate_faces(n: usize) -> Result<Vec<Face>, KError> {
    if !(2..=9).contains(&n) {
        return Err(KError::FacesRange(n));
    }
    let mut out: Vec<Face> = shapes(n)
        .into_iter()
        .map(|shape| {
            let dim = n - 2 - shape.internal_edge_count();
            Face { shape, dim }
        })
        .collect();
    out.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.shape.cmp(&b.shape)));
    Ok(out)
}

/// Face counts by dimension `(f₀, …, f_{n−2})`.
pub fn f_vector(n: usize) -> Result<Vec<usize>, KError> {
    let faces = enumerate_faces(n)?;
    let mut counts = vec![0usize; n - 1];
    for f in &faces {
        counts[f.dim] += 1;
    }
    Ok(counts)
}

/// All tree shapes with `n` leaves and every vertex at least binary.
pub fn shapes(n: usize) -> Vec<Tree<()>> {
    fn branch_lists(n: usize) -> Vec<Vec<Branch<()>>> {
        // children lists of a vertex whose subtrees have n leaves in total
        let mut out = Vec::new();
        for k in 2..=n {
            for comp in compositions(n, k) {
                let per_part: Vec<Vec<Branch<()>>> = comp
                    .iter()
                    .map(|&p| {
                        if p == 1 {
                            vec![Branch::Leaf]
                        } else {
                            branch_lists(p)
                                .into_iter()
                                .map(|ch| Branch::Edge((), ch))
                                .collect()
                        }
                    })
                    .collect();
                let mut acc: Vec<Vec<Branch<()>>> = vec![Vec::new()];
                for options in &per_part {
                    let mut next = Vec::with_capacity(acc.len() * options.len());
                    for prefix in &acc {
                        for opt in options {
                            let mut row = prefix.clone();
                            row.push(opt.clone());
                            next.push(row);
                        }
                    }
                    acc = next;
                }
                out.extend(acc);
            }
        }
        out
    }
    if n == 1 {
        return vec![Tree::Unit];
    }
    branch_lists(n).into_iter().map(Tree::Rooted).collect()
}

fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            acc.push(n);
            out.push(acc.clone());
            acc.pop();
            return;
        }
        for first in 1..=n - (k - 1) {
            acc.push(first);
            go(n - first, k - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && n >= k {
        go(n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// A representative point inside a face's open cell: every label `1/2`.
pub fn face_representative<R: Scalar>(shape: &Tree<()>) -> Tree<R> {
    shape.map_labels(&|_| R::one() / int::<R>(2))
}

/// Structure map of a discrete monoid viewed as an algebra over the operad:
/// the ordered product of the labels, independent of the tree and of every
/// edge length.
pub fn apply_discrete<R: Scalar>(
    t: &Tree<R>,
    xs: &[usize],
    act: &crate::action::FiniteAction,
) -> Result<usize, KError> {
    if t.leaf_count() != xs.len() {
        return Err(KError::LabelArity {
            expected: t.leaf_count(),
            got: xs.len(),
        });
    }
    Ok(act.product(xs.iter().copied()))
}

/// A point of the two-colored operad: a tree plus its output color. For an
/// open point the open input is by convention the last leaf, so the coloring
/// of every edge is determined by the output color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActPoint<R> {
    pub tree: Tree<R>,
    pub color: Color,
}

impl<R: Scalar> ActPoint<R> {
    pub fn closed(tree: Tree<R>) -> ActPoint<R> {
        ActPoint {
            tree,
            color: Color::Closed,
        }
    }

    pub fn open(tree: Tree<R>) -> ActPoint<R> {
        ActPoint {
            tree,
            color: Color::Open,
        }
    }

    /// Closed-leaf count `p`; the signature is `(p, q)` with `q = 1` iff the
    /// output color is open.
    pub fn closed_leaves(&self) -> usize {
        match self.color {
            Color::Closed => self.tree.leaf_count(),
            Color::Open => self.tree.leaf_count() - 1,
        }
    }

    pub fn open_leaves(&self) -> usize {
        match self.color {
            Color::Closed => 0,
            Color::Open => 1,
        }
    }

    /// Color of the `i`-th input slot.
    pub fn slot_color(&self, i: usize) -> Color {
        if self.color == Color::Open && i == self.tree.leaf_count() {
            Color::Open
        } else {
            Color::Closed
        }
    }

    pub fn normalize(&self) -> ActPoint<R> {
        ActPoint {
            tree: self.tree.normalize(),
            color: self.color,
        }
    }
}

/// Whether the two-colored operad carries the adjoined 0-ary closed point
/// (and with it the degeneracies) or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActVariant {
    Unital,
    NonUnital,
}

/// Validate a point against the chosen variant: open points need their open
/// input, and the 0-ary closed point exists only in the unital operad.
pub fn validate_act_point<R: Scalar>(
    pt: &ActPoint<R>,
    variant: ActVariant,
) -> Result<(), TreeError> {
    let leaves = pt.tree.leaf_count();
    if pt.color == Color::Open && leaves == 0 {
        return Err(TreeError::Arity { min: 1, got: 0 });
    }
    if variant == ActVariant::NonUnital && pt.color == Color::Closed && leaves == 0 {
        return Err(TreeError::Arity { min: 1, got: 0 });
    }
    Ok(())
}

/// Colored grafting: the slot color must equal the grafted output color.
pub fn compose_act<R: Scalar>(
    a: &ActPoint<R>,
    i: usize,
    label: R,
    b: &ActPoint<R>,
) -> Result<ActPoint<R>, TreeError> {
    let leaves = a.tree.leaf_count();
    if i == 0 || i > leaves {
        return Err(TreeError::LeafIndex { index: i, leaves });
    }
    let slot = a.slot_color(i);
    if slot != b.color {
        return Err(TreeError::ColorMismatch {
            slot,
            root: b.color,
        });
    }
    Ok(ActPoint {
        tree: a.tree.graft(i, label, &b.tree)?,
        color: a.color,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use crate::tree::equal_mod;
    use crate::Q;
    use num_traits::{One, Zero};

    fn d(n: usize) -> Tree<Q> {
        Tree::corolla(n)
    }

    #[test]
    fn unit_laws() {
        let t = d(3).graft(2, frac(1, 2), &d(2)).unwrap();
        assert_eq!(compose_k(&Tree::Unit, 1, &t).unwrap(), t);
        for i in 1..=t.leaf_count() {
            assert_eq!(compose_k(&t, i, &Tree::Unit).unwrap(), t);
        }
    }

    #[test]
    fn compose_binary() {
        let t = compose_k(&d(2), 1, &d(2)).unwrap();
        assert_eq!(t, d(2).graft(1, Q::one(), &d(2)).unwrap());
    }

    #[test]
    fn comb_of_corolla_is_singleton() {
        let c = comb_decompose(&d(3));
        assert_eq!(c.factors, vec![d(3)]);
        assert!(c.labels.is_empty());
    }

    #[test]
    fn comb_of_left_graft() {
        let t = d(2).graft(1, frac(1, 2), &d(2)).unwrap();
        let c = comb_decompose(&t);
        assert_eq!(c.factors, vec![d(2), d(2)]);
        assert_eq!(c.labels, vec![frac(1, 2)]);
        assert_eq!(c.recompose(), t);
    }

    #[test]
    fn lengths() {
        for n in 2..=5 {
            assert_eq!(length_l(&d(n)).unwrap(), frac(2, 1));
        }
        assert_eq!(length_l::<Q>(&Tree::Unit).unwrap(), Q::zero());
        let t = d(2).graft(1, frac(1, 2), &d(2)).unwrap();
        assert_eq!(length_l(&t).unwrap(), frac(3, 1));
        assert_eq!(length_li(&t, 1).unwrap(), frac(3, 2));
        assert_eq!(length_l::<Q>(&Tree::delta0()), Err(KError::LengthArity));
    }

    #[test]
    fn length_additivity_under_first_slot_grafting() {
        let t = d(3).graft(1, frac(1, 4), &d(2)).unwrap();
        let s = d(2).graft(2, frac(2, 3), &d(2)).unwrap();
        let r: Q = frac(5, 7);
        let glued = t.graft(1, r.clone(), &s).unwrap();
        assert_eq!(
            length_l(&glued).unwrap(),
            length_l(&t).unwrap() + length_l(&s).unwrap() + frac::<Q>(2, 1) * r - frac::<Q>(2, 1)
        );
    }

    #[test]
    fn f_vectors_match_known_values() {
        assert_eq!(f_vector(3).unwrap(), vec![2, 1]);
        assert_eq!(f_vector(4).unwrap(), vec![5, 5, 1]);
        assert_eq!(f_vector(5).unwrap(), vec![14, 21, 9, 1]);
        assert_eq!(enumerate_faces(10), Err(KError::FacesRange(10)));
    }

    #[test]
    fn discrete_structure_map_is_tree_independent() {
        let act = crate::action::FiniteAction::z2();
        let g = act.index("g").unwrap();
        let e = act.unit();
        let t = d(2).graft(1, frac(1, 2), &d(2)).unwrap();
        assert_eq!(apply_discrete(&t, &[g, g, g], &act).unwrap(), g);
        assert_eq!(apply_discrete(&d(3), &[g, g, g], &act).unwrap(), g);
        assert_eq!(apply_discrete(&Tree::<Q>::delta0(), &[], &act).unwrap(), e);
        assert!(apply_discrete(&d(3), &[g], &act).is_err());
    }

    #[test]
    fn colored_composition_respects_slots() {
        let open = ActPoint::open(d(3));
        let closed = ActPoint::closed(d(2));
        // closed slot takes closed input
        let c = compose_act(&open, 1, Q::one(), &closed).unwrap();
        assert_eq!(c.color, Color::Open);
        assert_eq!(c.closed_leaves(), 3);
        // open slot refuses closed input
        assert!(matches!(
            compose_act(&open, 3, Q::one(), &closed),
            Err(TreeError::ColorMismatch { .. })
        ));
        // open input fits only the last slot of an open point
        let o2 = ActPoint::open(d(2));
        assert!(compose_act(&open, 3, Q::one(), &o2).is_ok());
        assert!(compose_act(&closed, 1, Q::one(), &o2).is_err());
    }

    #[test]
    fn comb_split_reassembles() {
        let t = d(2)
            .graft(1, frac(1, 3), &d(2))
            .unwrap()
            .graft(1, frac(1, 2), &d(3))
            .unwrap();
        let comb = comb_decompose(&t);
        assert!(equal_mod(&comb.recompose(), &t));
        for i in 1..=comb.labels.len() {
            let (upper, u, lower) = comb.split(i);
            assert_eq!(upper.graft(1, u, &lower).unwrap(), t);
        }
    }
}
