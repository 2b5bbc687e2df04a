//! Planar rooted trees with labeled internal edges.
//!
//! A tree is either the unit `δ₁` (a single external edge, no vertex) or a
//! root vertex with an ordered list of branches. A branch is a leaf (external
//! edge) or a labeled internal edge into another vertex. The corolla with no
//! branches is `δ₀`. Labels are generic: scalar labels give edge-labeled
//! trees, `()` gives bare shapes, and affine labels give one-parameter
//! families (see [`crate::moore`]).
//!
//! The quotient taken throughout is: contract internal edges labeled zero,
//! erase 0-ary vertices (stubs) together with their edge, and remove unary
//! vertices by merging the two adjacent edge labels with `max` (an external
//! edge absorbs the label). [`Tree::normalize`] computes the canonical
//! representative; [`equal_mod`] decides the quotient relation.

use std::fmt;

use thiserror::Error;

use crate::scalar::{max, Scalar};

/// Leaf color of the two-colored operads.
///
/// `Closed < Open`; open inputs are always the last leaf of a planar tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Closed,
    Open,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Closed => write!(f, "closed"),
            Color::Open => write!(f, "open"),
        }
    }
}

/// A branch of a vertex: an external leaf edge, or a labeled internal edge
/// into a vertex given by its own branch list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch<L> {
    Leaf,
    Edge(L, Vec<Branch<L>>),
}

/// A planar rooted tree. `Unit` is `δ₁`; `Rooted(vec![])` is `δ₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree<L> {
    Unit,
    Rooted(Vec<Branch<L>>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("leaf index {index} out of range 1..={leaves}")]
    LeafIndex { index: usize, leaves: usize },
    #[error("shift/deshift are defined on closed trees only")]
    ClosedOnly,
    #[error("operation requires a tree with at least {min} leaves, got {got}")]
    Arity { min: usize, got: usize },
    #[error("color mismatch: slot is {slot} but the grafted root is {root}")]
    ColorMismatch { slot: Color, root: Color },
    #[error("an open-rooted tree may only be grafted on the last leaf of an open-rooted tree")]
    OpenSlotNotLast,
}

impl<L> Branch<L> {
    fn leaves(&self) -> usize {
        match self {
            Branch::Leaf => 1,
            Branch::Edge(_, ch) => ch.iter().map(Branch::leaves).sum(),
        }
    }

    fn internal_edges(&self) -> usize {
        match self {
            Branch::Leaf => 0,
            Branch::Edge(_, ch) => 1 + ch.iter().map(Branch::internal_edges).sum::<usize>(),
        }
    }
}

impl<L> Tree<L> {
    /// The corolla `δₙ`: a single vertex with `n` leaves. `δ₁` is the unit.
    pub fn corolla(n: usize) -> Tree<L> {
        if n == 1 {
            Tree::Unit
        } else {
            Tree::Rooted((0..n).map(|_| Branch::Leaf).collect())
        }
    }

    /// `δ₀`, the 0-ary point.
    pub fn delta0() -> Tree<L> {
        Tree::Rooted(Vec::new())
    }

    pub fn is_corolla(&self) -> bool {
        self.internal_edge_count() == 0
    }

    /// Number of leaves `|T|`.
    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Unit => 1,
            Tree::Rooted(ch) => ch.iter().map(Branch::leaves).sum(),
        }
    }

    /// Number of internal edges `|i(T)|`.
    pub fn internal_edge_count(&self) -> usize {
        match self {
            Tree::Unit => 0,
            Tree::Rooted(ch) => ch.iter().map(Branch::internal_edges).sum(),
        }
    }

    /// Children of the root vertex; `None` for the unit.
    pub fn root_children(&self) -> Option<&[Branch<L>]> {
        match self {
            Tree::Unit => None,
            Tree::Rooted(ch) => Some(ch),
        }
    }

    /// Map every edge label.
    pub fn map_labels<M>(&self, f: &impl Fn(&L) -> M) -> Tree<M> {
        fn go<L, M>(b: &Branch<L>, f: &impl Fn(&L) -> M) -> Branch<M> {
            match b {
                Branch::Leaf => Branch::Leaf,
                Branch::Edge(l, ch) => Branch::Edge(f(l), ch.iter().map(|c| go(c, f)).collect()),
            }
        }
        match self {
            Tree::Unit => Tree::Unit,
            Tree::Rooted(ch) => Tree::Rooted(ch.iter().map(|c| go(c, f)).collect()),
        }
    }

    /// The label-free shape of the tree.
    pub fn shape(&self) -> Tree<()> {
        self.map_labels(&|_| ())
    }

    /// Visit every edge label in preorder.
    pub fn for_each_label(&self, f: &mut impl FnMut(&L)) {
        fn go<L>(ch: &[Branch<L>], f: &mut impl FnMut(&L)) {
            for c in ch {
                if let Branch::Edge(l, gch) = c {
                    f(l);
                    go(gch, f);
                }
            }
        }
        if let Tree::Rooted(ch) = self {
            go(ch, f);
        }
    }
}

impl<L: Clone> Tree<L> {
    /// Graft `sub` on the `i`-th leaf (1-based) creating an internal edge
    /// labeled `label`. Grafting the unit in either direction drops the
    /// label, because the would-be internal edge is external in the
    /// composite.
    pub fn graft(&self, i: usize, label: L, sub: &Tree<L>) -> Result<Tree<L>, TreeError> {
        let leaves = self.leaf_count();
        if i == 0 || i > leaves {
            return Err(TreeError::LeafIndex { index: i, leaves });
        }
        match (self, sub) {
            (_, Tree::Unit) => Ok(self.clone()),
            (Tree::Unit, _) => Ok(sub.clone()),
            (Tree::Rooted(ch), Tree::Rooted(sub_ch)) => {
                let mut remaining = i;
                let out = graft_branches(ch, &mut remaining, &label, sub_ch);
                debug_assert_eq!(remaining, 0);
                Ok(Tree::Rooted(out))
            }
        }
    }

    /// Internal edges in preorder: root children left to right, each edge
    /// before the edges inside its subtree.
    pub fn edge_paths(&self) -> Vec<Vec<usize>> {
        fn go<L>(ch: &[Branch<L>], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for (k, c) in ch.iter().enumerate() {
                if let Branch::Edge(_, gch) = c {
                    prefix.push(k);
                    out.push(prefix.clone());
                    go(gch, prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        if let Tree::Rooted(ch) = self {
            go(ch, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Split at the `k`-th internal edge (preorder): returns `(outer, i,
    /// label, inner)` with `self = outer ∘ᵢ^label inner`.
    pub fn split_at_edge(&self, k: usize) -> Option<(Tree<L>, usize, L, Tree<L>)> {
        let path = self.edge_paths().into_iter().nth(k)?;
        let mut children = match self {
            Tree::Rooted(ch) => ch,
            Tree::Unit => return None,
        };
        // leaves strictly to the left of the addressed subtree
        let mut left = 0usize;
        for (depth, &idx) in path.iter().enumerate() {
            left += children[..idx].iter().map(Branch::leaves).sum::<usize>();
            match &children[idx] {
                Branch::Edge(l, gch) => {
                    if depth + 1 == path.len() {
                        let inner = Tree::Rooted(gch.clone());
                        let label = l.clone();
                        let pos = left + 1;
                        let outer = self.replace_subtree(&path, Branch::Leaf);
                        return Some((outer, pos, label, inner));
                    }
                    children = gch;
                }
                Branch::Leaf => unreachable!("edge path addresses an edge"),
            }
        }
        None
    }

    fn replace_subtree(&self, path: &[usize], with: Branch<L>) -> Tree<L> {
        fn go<L: Clone>(ch: &[Branch<L>], path: &[usize], with: &Branch<L>) -> Vec<Branch<L>> {
            let mut out = ch.to_vec();
            let idx = path[0];
            if path.len() == 1 {
                out[idx] = with.clone();
            } else if let Branch::Edge(l, gch) = &ch[idx] {
                out[idx] = Branch::Edge(l.clone(), go(gch, &path[1..], with));
            } else {
                unreachable!("path addresses an edge");
            }
            out
        }
        match self {
            Tree::Unit => Tree::Unit,
            Tree::Rooted(ch) => Tree::Rooted(go(ch, path, &with)),
        }
    }
}

fn graft_branches<L: Clone>(
    ch: &[Branch<L>],
    remaining: &mut usize,
    label: &L,
    sub_children: &[Branch<L>],
) -> Vec<Branch<L>> {
    let mut out = Vec::with_capacity(ch.len());
    for c in ch {
        if *remaining == 0 {
            out.push(c.clone());
            continue;
        }
        match c {
            Branch::Leaf => {
                *remaining -= 1;
                if *remaining == 0 {
                    out.push(Branch::Edge(label.clone(), sub_children.to_vec()));
                } else {
                    out.push(Branch::Leaf);
                }
            }
            Branch::Edge(l, gch) => {
                let leaves = gch.iter().map(Branch::leaves).sum::<usize>();
                if *remaining > leaves {
                    *remaining -= leaves;
                    out.push(c.clone());
                } else {
                    out.push(Branch::Edge(
                        l.clone(),
                        graft_branches(gch, remaining, label, sub_children),
                    ));
                }
            }
        }
    }
    out
}

impl<R: Scalar> Tree<R> {
    /// Canonical representative of the class: no zero-labeled edges, no
    /// stubs, no unary vertices. Idempotent and total.
    pub fn normalize(&self) -> Tree<R> {
        match self {
            Tree::Unit => Tree::Unit,
            Tree::Rooted(ch) => {
                let ch = normalize_children(ch);
                match ch.len() {
                    1 => match ch.into_iter().next().unwrap() {
                        Branch::Leaf => Tree::Unit,
                        Branch::Edge(_, gch) => Tree::Rooted(gch),
                    },
                    _ => Tree::Rooted(ch),
                }
            }
        }
    }

    pub fn is_normal(&self) -> bool {
        self.normalize() == *self
    }

    /// Degeneracy `sᵢ`: graft `δ₀` on the `i`-th leaf and normalize.
    pub fn degeneracy(&self, i: usize) -> Result<Tree<R>, TreeError> {
        Ok(self.graft(i, R::one(), &Tree::delta0())?.normalize())
    }

    /// Re-root along the last leaf.
    pub fn shift(&self) -> Tree<R> {
        match self {
            Tree::Unit => Tree::Unit,
            Tree::Rooted(ch) => {
                if self.is_corolla() {
                    return self.clone();
                }
                if let Some(Branch::Edge(r, d)) = ch.last() {
                    // T = S ∘_{|S|}^r T'  ⇒  shift(T) = shift(T') ∘₁^r shift(S)
                    let t_inner = Tree::Rooted(d.clone());
                    let mut s_children = ch.to_vec();
                    *s_children.last_mut().unwrap() = Branch::Leaf;
                    let s = Tree::Rooted(s_children);
                    t_inner
                        .shift()
                        .graft(1, r.clone(), &s.shift())
                        .expect("arity preserved")
                } else {
                    // last child is a leaf: no internal edge touches the
                    // last leaf, so T = S ∘ᵢ^r T'' with i < |S| for any edge
                    let (s, i, r, inner) = self.split_at_edge(0).expect("non-corolla has an edge");
                    s.shift().graft(i + 1, r, &inner).expect("arity preserved")
                }
            }
        }
    }

    /// Re-root along the first leaf; inverse to [`Tree::shift`].
    pub fn deshift(&self) -> Tree<R> {
        match self {
            Tree::Unit => Tree::Unit,
            Tree::Rooted(ch) => {
                if self.is_corolla() {
                    return self.clone();
                }
                if let Some(Branch::Edge(r, d)) = ch.first() {
                    // T = S ∘₁^r T'  ⇒  deshift(T) = deshift(T') ∘_{|T'|}^r deshift(S)
                    let t_inner = Tree::Rooted(d.clone());
                    let mut s_children = ch.to_vec();
                    s_children[0] = Branch::Leaf;
                    let s = Tree::Rooted(s_children);
                    let at = t_inner.leaf_count();
                    t_inner
                        .deshift()
                        .graft(at, r.clone(), &s.deshift())
                        .expect("arity preserved")
                } else {
                    let (s, i, r, inner) = self.split_at_edge(0).expect("non-corolla has an edge");
                    debug_assert!(i >= 2);
                    s.deshift()
                        .graft(i - 1, r, &inner)
                        .expect("arity preserved")
                }
            }
        }
    }
}

fn normalize_children<R: Scalar>(ch: &[Branch<R>]) -> Vec<Branch<R>> {
    let mut out = Vec::with_capacity(ch.len());
    for c in ch {
        match c {
            Branch::Leaf => out.push(Branch::Leaf),
            Branch::Edge(l, gch) => {
                let gch = normalize_children(gch);
                match gch.len() {
                    0 => {} // stub erased, label discarded
                    1 => match gch.into_iter().next().unwrap() {
                        // unary vertex: external edge absorbs the labels
                        Branch::Leaf => out.push(Branch::Leaf),
                        Branch::Edge(l2, ggch) => {
                            let merged = max(l.clone(), l2);
                            if merged.is_zero() {
                                out.extend(ggch);
                            } else {
                                out.push(Branch::Edge(merged, ggch));
                            }
                        }
                    },
                    _ => {
                        if l.is_zero() {
                            out.extend(gch);
                        } else {
                            out.push(Branch::Edge(l.clone(), gch));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Quotient equality: equality of normal forms.
pub fn equal_mod<R: Scalar>(a: &Tree<R>, b: &Tree<R>) -> bool {
    a.normalize() == b.normalize()
}

/// A single rewriting opportunity inside a raw tree, for confluence checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Redex {
    /// Contract the zero-labeled edge at this path.
    ZeroEdge(Vec<usize>),
    /// Erase the stub (0-ary vertex) hanging at this path.
    Stub(Vec<usize>),
    /// Remove the unary vertex under the edge at this path (empty path: the
    /// root vertex itself is unary).
    Unary(Vec<usize>),
}

impl<R: Scalar> Tree<R> {
    /// Every redex of the quotient rewriting in this tree.
    pub fn redexes(&self) -> Vec<Redex> {
        fn go<R: Scalar>(ch: &[Branch<R>], prefix: &mut Vec<usize>, out: &mut Vec<Redex>) {
            for (k, c) in ch.iter().enumerate() {
                if let Branch::Edge(l, gch) = c {
                    prefix.push(k);
                    if gch.is_empty() {
                        out.push(Redex::Stub(prefix.clone()));
                    } else {
                        if l.is_zero() {
                            out.push(Redex::ZeroEdge(prefix.clone()));
                        }
                        if gch.len() == 1 {
                            out.push(Redex::Unary(prefix.clone()));
                        }
                        go(gch, prefix, out);
                    }
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        if let Tree::Rooted(ch) = self {
            if ch.len() == 1 {
                out.push(Redex::Unary(Vec::new()));
            }
            go(ch, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Apply one rewriting step. The redex must come from [`Tree::redexes`]
    /// on this very tree.
    pub fn apply_redex(&self, redex: &Redex) -> Tree<R> {
        fn splice<R: Scalar>(ch: &[Branch<R>], path: &[usize], mode: &Redex) -> Vec<Branch<R>> {
            let idx = path[0];
            let mut out = ch.to_vec();
            if path.len() > 1 {
                if let Branch::Edge(l, gch) = &ch[idx] {
                    out[idx] = Branch::Edge(l.clone(), splice(gch, &path[1..], mode));
                    return out;
                }
                unreachable!("redex path addresses an edge");
            }
            let Branch::Edge(l, gch) = ch[idx].clone() else {
                unreachable!("redex path addresses an edge");
            };
            match mode {
                Redex::Stub(_) => {
                    out.remove(idx);
                }
                Redex::ZeroEdge(_) => {
                    out.splice(idx..=idx, gch);
                }
                Redex::Unary(_) => {
                    debug_assert_eq!(gch.len(), 1);
                    out[idx] = match gch.into_iter().next().unwrap() {
                        Branch::Leaf => Branch::Leaf,
                        Branch::Edge(l2, ggch) => Branch::Edge(max(l, l2), ggch),
                    };
                }
            }
            out
        }
        let Tree::Rooted(ch) = self else {
            return self.clone();
        };
        match redex {
            Redex::Unary(path) if path.is_empty() => {
                debug_assert_eq!(ch.len(), 1);
                match ch[0].clone() {
                    Branch::Leaf => Tree::Unit,
                    Branch::Edge(_, gch) => Tree::Rooted(gch),
                }
            }
            Redex::ZeroEdge(path) | Redex::Stub(path) | Redex::Unary(path) => {
                Tree::Rooted(splice(ch, path, redex))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;
    use crate::Q;

    fn d(n: usize) -> Tree<Q> {
        Tree::corolla(n)
    }

    #[test]
    fn grafting_counts() {
        let t = d(2).graft(1, frac(1, 2), &d(2)).unwrap();
        assert_eq!(t.leaf_count(), 3);
        assert_eq!(t.internal_edge_count(), 1);
    }

    #[test]
    fn graft_index_errors() {
        assert_eq!(
            d(2).graft(3, Q::from_integer(1.into()), &d(2)),
            Err(TreeError::LeafIndex {
                index: 3,
                leaves: 2
            })
        );
    }

    #[test]
    fn zero_graft_collapses_to_corolla() {
        let t = d(2).graft(1, frac(0, 1), &d(2)).unwrap();
        assert!(equal_mod(&t, &d(3)));
        assert_eq!(t.normalize(), d(3));
        // a zero edge in the middle of a corolla merges the vertices
        let t = d(3).graft(2, frac(0, 1), &d(2)).unwrap();
        assert_eq!(t.normalize(), d(4));
    }

    #[test]
    fn quotient_equality_sees_planar_positions() {
        assert!(equal_mod(
            &d(2).graft(1, frac(0, 1), &d(2)).unwrap(),
            &d(3)
        ));
        // same labels on different slots are different points
        assert!(!equal_mod(
            &d(2).graft(1, frac(1, 2), &d(2)).unwrap(),
            &d(2).graft(2, frac(1, 2), &d(2)).unwrap()
        ));
    }

    #[test]
    fn operadic_associativity_instance() {
        // (U ∘ᵢ^q T) ∘_{j+i−1}^r S = U ∘ᵢ^q (T ∘ⱼ^r S), U=T=S=δ₂, i=j=1
        let q: Q = frac(1, 3);
        let r: Q = frac(2, 3);
        let lhs = d(2)
            .graft(1, q.clone(), &d(2))
            .unwrap()
            .graft(1, r.clone(), &d(2))
            .unwrap();
        let rhs = d(2)
            .graft(1, q, &d(2).graft(1, r, &d(2)).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn operadic_commutation_instance() {
        // (U ∘ᵢ^q T) ∘ⱼ^r S = (U ∘ⱼ^r S) ∘_{i+|S|−1}^q T  for j < i
        let q: Q = frac(1, 5);
        let r: Q = frac(4, 5);
        let u = d(3);
        let lhs = u
            .graft(2, q.clone(), &d(2))
            .unwrap()
            .graft(1, r.clone(), &d(3))
            .unwrap();
        let rhs = u
            .graft(1, r, &d(3))
            .unwrap()
            .graft(2 + 3 - 1, q, &d(2))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalize_erases_stub_and_merges_max() {
        // binary 3-leaf tree, erase the middle leaf: the two labels on the
        // path merge by max
        let t = d(2)
            .graft(1, frac(1, 3), &d(2))
            .unwrap()
            .graft(2, frac(3, 4), &d(2))
            .unwrap();
        // t = ([1/3](* [3/4](* *)) *) ; erasing leaf 1 leaves a unary vertex
        // between the 1/3 and 3/4 edges
        let s = t.degeneracy(1).unwrap();
        let expect = d(2).graft(1, frac(3, 4), &d(2)).unwrap();
        assert_eq!(s, expect);
        // erasing leaf 3 instead leaves the unary vertex against a leaf edge,
        // which absorbs the inner label
        let s3 = t.degeneracy(3).unwrap();
        assert_eq!(s3, d(2).graft(1, frac(1, 3), &d(2)).unwrap());
    }

    #[test]
    fn degeneracy_of_delta2_is_unit() {
        assert_eq!(d(2).degeneracy(1).unwrap(), Tree::Unit);
        assert_eq!(d(2).degeneracy(2).unwrap(), Tree::Unit);
    }

    #[test]
    fn unit_grafts_are_identities() {
        let t = d(3).graft(2, frac(1, 2), &d(2)).unwrap();
        assert_eq!(t.graft(1, frac(1, 7), &Tree::Unit).unwrap(), t);
        assert_eq!(Tree::Unit.graft(1, frac(1, 7), &t).unwrap(), t);
    }

    #[test]
    fn shift_examples() {
        assert_eq!(d(4).shift(), d(4));
        // shift(δ₂ ∘₂^r δ₂) = δ₂ ∘₁^r δ₂
        let r: Q = frac(2, 7);
        let t = d(2).graft(2, r.clone(), &d(2)).unwrap();
        assert_eq!(t.shift(), d(2).graft(1, r, &d(2)).unwrap());
    }

    #[test]
    fn shift_deshift_roundtrip_small() {
        let t = d(3)
            .graft(1, frac(1, 2), &d(2))
            .unwrap()
            .graft(4, frac(1, 3), &d(3))
            .unwrap();
        assert_eq!(t.shift().deshift(), t);
        assert_eq!(t.deshift().shift(), t);
        assert_eq!(t.shift().leaf_count(), t.leaf_count());
        assert_eq!(t.shift().internal_edge_count(), t.internal_edge_count());
    }

    #[test]
    fn split_at_edge_recomposes() {
        let t = d(3)
            .graft(2, frac(1, 2), &d(2))
            .unwrap()
            .graft(1, frac(1, 5), &d(2))
            .unwrap();
        for k in 0..t.internal_edge_count() {
            let (outer, i, r, inner) = t.split_at_edge(k).unwrap();
            assert_eq!(outer.graft(i, r, &inner).unwrap(), t);
        }
    }

    #[test]
    fn redex_steps_reach_the_normal_form() {
        let raw = d(2)
            .graft(1, frac(0, 1), &d(2))
            .unwrap()
            .graft(3, frac(1, 2), &Tree::delta0())
            .unwrap();
        let mut t = raw.clone();
        while let Some(r) = t.redexes().first().cloned() {
            t = t.apply_redex(&r);
        }
        assert_eq!(t, raw.normalize());
    }
}
