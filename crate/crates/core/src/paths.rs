//! The explicit sliding-edge path families σ, γ and λ.
//!
//! Each family assigns to a tree a path in tree space, built recursively
//! from corolla base cases by grafting and splicing:
//!
//! - `σ(T)` has Moore length `l(T)`, runs from `δ₂ ∘₂ deshift(T)` to
//!   `δ₂ ∘₁ T`, and turns trees into loops of the classifying space;
//! - `γ_T` is parameterized by `[0,1]`, runs from `T ∘₁ δ₂` to `δ₂ ∘₂ T`,
//!   and drives the retraction homotopy of the two-sided bar construction;
//! - `λ(T)` runs from `δ₂ ∘₂ s_{|T|}(deshift T)` to `T` and provides the
//!   equivariance of the relative-loop embedding.
//!
//! The recursions are independent of the chosen tree decomposition and pass
//! to the quotient; both facts are checked by the verification suites on
//! randomized decompositions and representatives.

use std::collections::HashMap;

use thiserror::Error;

use crate::moore::{const_family, Affine, MoorePath, PathError, TreePath};
use crate::operad_k::{comb_decompose, length_l, KError};
use crate::scalar::{max, Scalar};
use crate::tree::{Branch, Tree, TreeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    Sigma,
    Gamma,
    Lambda,
    /// σ repackaged as the loop skeleton of the structure maps of the usual
    /// map, before bar labels are attached.
    UsualLoop,
}

/// A family path together with its provenance.
#[derive(Clone, Debug)]
pub struct FamilyPath<R: Scalar> {
    pub path: TreePath<R>,
    pub source: Tree<R>,
    pub tag: FamilyTag,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathsError {
    #[error("family is defined for trees with at least {min} leaves, got {got}")]
    Arity { min: usize, got: usize },
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Length(#[from] KError),
}

/// Graft a constant subtree into every point of a path.
pub fn graft_path<R: Scalar>(
    path: &TreePath<R>,
    i: usize,
    label: &R,
    sub: &Tree<R>,
) -> Result<TreePath<R>, PathError> {
    let sub = const_family(sub);
    let label = Affine::constant(label.clone());
    path.map_segments(|fam| {
        fam.graft(i, label.clone(), &sub)
            .expect("graft arity checked by caller")
    })
}

/// Recursion state shared by the σ and λ builders: memo tables plus the
/// decomposition chooser (an index into the preorder edge list).
struct Builder<'a, R: Scalar> {
    sigma_memo: HashMap<Tree<R>, TreePath<R>>,
    lambda_memo: HashMap<Tree<R>, TreePath<R>>,
    choose: &'a mut dyn FnMut(usize) -> usize,
}

impl<'a, R: Scalar> Builder<'a, R> {
    fn new(choose: &'a mut dyn FnMut(usize) -> usize) -> Self {
        Builder {
            sigma_memo: HashMap::new(),
            lambda_memo: HashMap::new(),
            choose,
        }
    }

    fn pick_edge(&mut self, t: &Tree<R>) -> usize {
        let edges = t.internal_edge_count();
        (self.choose)(edges) % edges
    }

    fn sigma(&mut self, t: &Tree<R>) -> Result<TreePath<R>, PathsError> {
        let leaves = t.leaf_count();
        if leaves < 2 {
            return Err(PathsError::Arity {
                min: 2,
                got: leaves,
            });
        }
        if let Some(p) = self.sigma_memo.get(t) {
            return Ok(p.clone());
        }
        let path = if t.is_corolla() {
            // δ₂ ∘₂^{1−t} T for t ∈ [0,1], then δ₂ ∘₁^{t−1} T for t ∈ [1,2]
            let delta2 = const_family::<R>(&Tree::corolla(2));
            let down = delta2.graft(2, Affine::descending(R::one()), &const_family(t))?;
            let up = delta2.graft(1, Affine::time(), &const_family(t))?;
            MoorePath::new(vec![(down, R::one()), (up, R::one())])?
        } else {
            let k = self.pick_edge(t);
            let (outer, i, r, inner) = t.split_at_edge(k).expect("edge index in range");
            if i > 1 {
                graft_path(&self.sigma(&outer)?, i, &r, &inner)?
            } else {
                // (σ(S)_{[0, l(S)+r−1]} ∘_{|S|+1}^r deshift(T₁)) ·
                // (σ(T₁)_{[1−r, l(T₁)]} ∘₁^r S)   for T = T₁ ∘₁^r S
                let l_inner = length_l(&inner)?;
                let l_outer = length_l(&outer)?;
                let first = graft_path(
                    &self
                        .sigma(&inner)?
                        .cut(&R::zero(), &(l_inner + r.clone() - R::one()))?,
                    inner.leaf_count() + 1,
                    &r,
                    &outer.deshift(),
                )?;
                let second = graft_path(
                    &self.sigma(&outer)?.cut(&(R::one() - r.clone()), &l_outer)?,
                    1,
                    &r,
                    &inner,
                )?;
                first.juxtapose(&second)?
            }
        };
        self.sigma_memo.insert(t.clone(), path.clone());
        Ok(path)
    }

    fn lambda(&mut self, t: &Tree<R>) -> Result<TreePath<R>, PathsError> {
        let leaves = t.leaf_count();
        if leaves < 2 {
            return Err(PathsError::Arity {
                min: 2,
                got: leaves,
            });
        }
        if let Some(p) = self.lambda_memo.get(t) {
            return Ok(p.clone());
        }
        let delta2: Tree<R> = Tree::corolla(2);
        if *t == delta2 {
            return Ok(MoorePath::constant(&delta2, R::zero()));
        }
        let children = t.root_children().expect("more than one leaf").to_vec();
        let path = if children.len() >= 3 {
            self.lambda_wide(t)?
        } else {
            self.lambda_binary_root(&children)?
        };
        self.lambda_memo.insert(t.clone(), path.clone());
        Ok(path)
    }

    /// First case: the root vertex has at least three incoming edges. The
    /// Moore length is `l(T) − 1`.
    fn lambda_wide(&mut self, t: &Tree<R>) -> Result<TreePath<R>, PathsError> {
        if t.is_corolla() {
            // δ₂ ∘₂^{1−t} s_{|T|}(deshift T) over one time unit
            let erased = t.deshift().degeneracy(t.leaf_count())?;
            let fam = const_family::<R>(&Tree::corolla(2)).graft(
                2,
                Affine::descending(R::one()),
                &const_family(&erased),
            )?;
            return Ok(MoorePath::new(vec![(fam, R::one())])?);
        }
        let k = self.pick_edge(t);
        let (outer, i, r, inner) = t.split_at_edge(k).expect("edge index in range");
        if i > 1 {
            Ok(graft_path(&self.lambda(&outer)?, i, &r, &inner)?)
        } else {
            // (σ(S)_{[0, l(S)+r−1]} ∘_{|S|+1}^r s_{|T₁|}(deshift T₁)) ·
            // (λ(T₁)_{[1−r, l(T₁)−1]} ∘₁^r S)   for T = T₁ ∘₁^r S
            let l_inner = length_l(&inner)?;
            let l_outer = length_l(&outer)?;
            let erased = outer.deshift().degeneracy(outer.leaf_count())?;
            let first = graft_path(
                &self
                    .sigma(&inner)?
                    .cut(&R::zero(), &(l_inner + r.clone() - R::one()))?,
                inner.leaf_count() + 1,
                &r,
                &erased,
            )?;
            let second = graft_path(
                &self
                    .lambda(&outer)?
                    .cut(&(R::one() - r.clone()), &(l_outer - R::one()))?,
                1,
                &r,
                &inner,
            )?;
            Ok(first.juxtapose(&second)?)
        }
    }

    /// Second case: the root vertex is binary, `T = (δ₂ ∘₂^v T₂) ∘₁^u T₁`
    /// with a leaf child read as the unit grafted at length one.
    fn lambda_binary_root(&mut self, children: &[Branch<R>]) -> Result<TreePath<R>, PathsError> {
        let part = |b: &Branch<R>| -> (R, Tree<R>) {
            match b {
                Branch::Leaf => (R::one(), Tree::Unit),
                Branch::Edge(l, ch) => (l.clone(), Tree::Rooted(ch.clone())),
            }
        };
        let (u, t1) = part(&children[0]);
        let (v, t2) = part(&children[1]);
        let m = max(u.clone(), v.clone());

        // (δ₂ ∘₂^{m−t} T₂)_{[0, m−v]} ∘₁^u T₁
        let slide = const_family::<R>(&Tree::corolla(2))
            .graft(2, Affine::new(m.clone(), -R::one()), &const_family(&t2))?
            .graft(1, Affine::constant(u.clone()), &const_family(&t1))?;
        let second = MoorePath::new(vec![(slide, m.clone() - v.clone())])?;

        if t1 == Tree::Unit {
            // λ(δ₂ ∘₂^v T₂): only the sliding factor remains
            return Ok(second);
        }
        // σ(T₁)_{[0, l(T₁)+u−1]} ∘_{|T₁|+1}^{max(u,v)} T₂
        let l1 = length_l(&t1)?;
        let first = graft_path(
            &self
                .sigma(&t1)?
                .cut(&R::zero(), &(l1 + u.clone() - R::one()))?,
            t1.leaf_count() + 1,
            &m,
            &t2,
        )?;
        Ok(first.juxtapose(&second)?)
    }
}

fn first_edge(_: usize) -> usize {
    0
}

/// σ on the normal form of `T`, defined for at least two leaves.
pub fn sigma<R: Scalar>(t: &Tree<R>) -> Result<FamilyPath<R>, PathsError> {
    let n = t.normalize();
    let mut choose = first_edge;
    let path = Builder::new(&mut choose).sigma(&n)?;
    Ok(FamilyPath {
        path,
        source: n,
        tag: FamilyTag::Sigma,
    })
}

/// σ built on a raw representative with an explicit decomposition chooser;
/// used to check independence of the decomposition and passage to the
/// quotient.
pub fn sigma_on<R: Scalar>(
    t: &Tree<R>,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<TreePath<R>, PathsError> {
    Builder::new(choose).sigma(t)
}

/// λ on the normal form of `T`, defined for at least two leaves.
pub fn lambda<R: Scalar>(t: &Tree<R>) -> Result<FamilyPath<R>, PathsError> {
    let n = t.normalize();
    let mut choose = first_edge;
    let path = Builder::new(&mut choose).lambda(&n)?;
    Ok(FamilyPath {
        path,
        source: n,
        tag: FamilyTag::Lambda,
    })
}

/// λ on a raw representative with an explicit decomposition chooser.
pub fn lambda_on<R: Scalar>(
    t: &Tree<R>,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<TreePath<R>, PathsError> {
    Builder::new(choose).lambda(t)
}

/// The loop skeleton of the structure maps of the usual map: σ with its
/// provenance tag set apart.
pub fn fn_loop<R: Scalar>(t: &Tree<R>) -> Result<FamilyPath<R>, PathsError> {
    let mut fp = sigma(t)?;
    fp.tag = FamilyTag::UsualLoop;
    Ok(fp)
}

/// γ_T as a unit-length path, built from the comb decomposition of the
/// normal form.
pub fn gamma<R: Scalar>(t: &Tree<R>) -> Result<FamilyPath<R>, PathsError> {
    let n = t.normalize();
    let path = gamma_on(&n)?;
    Ok(FamilyPath {
        path,
        source: n,
        tag: FamilyTag::Gamma,
    })
}

/// γ on a raw representative: the four-piece sliding formula applied to the
/// comb decomposition as given.
pub fn gamma_on<R: Scalar>(t: &Tree<R>) -> Result<TreePath<R>, PathsError> {
    let leaves = t.leaf_count();
    if leaves < 1 {
        return Err(PathsError::Arity {
            min: 1,
            got: leaves,
        });
    }
    let delta2: Tree<R> = Tree::corolla(2);
    if *t == Tree::Unit {
        return Ok(MoorePath::constant(&delta2, R::one()));
    }
    let comb = comb_decompose(t);
    let l = length_l(t)?;
    let inv_l = R::one() / l.clone();
    let mut segs = Vec::with_capacity(2 * comb.labels.len() + 2);
    // T ∘₁^{1−l·t} δ₂ on [0, 1/l]
    segs.push((
        const_family(t).graft(1, Affine::new(R::one(), -l.clone()), &const_family(&delta2))?,
        inv_l.clone(),
    ));
    for i in 1..=comb.labels.len() {
        let (upper, u, lower) = comb.split(i);
        let dur = u.clone() * inv_l.clone();
        // R_i ∘₁^{uᵢ} (δ₂ ∘₂^{l·t−(lᵢ−uᵢ)} L_i) while the new edge grows
        let growing = const_family(&delta2).graft(
            2,
            Affine::new(R::zero(), l.clone()),
            &const_family(&lower),
        )?;
        segs.push((
            const_family(&upper).graft(1, Affine::constant(u.clone()), &growing)?,
            dur.clone(),
        ));
        // R_i ∘₁^{lᵢ+uᵢ−l·t} (δ₂ ∘₂^{uᵢ} L_i) while the old edge shrinks
        let grown =
            const_family(&delta2).graft(2, Affine::constant(u.clone()), &const_family(&lower))?;
        segs.push((
            const_family(&upper).graft(1, Affine::new(u, -l.clone()), &grown)?,
            dur,
        ));
    }
    // δ₂ ∘₂^{l·t−(l_k+u_k)} T on the final 1/l
    segs.push((
        const_family(&delta2).graft(2, Affine::new(R::zero(), l.clone()), &const_family(t))?,
        inv_l,
    ));
    Ok(MoorePath::new(segs)?)
}

/// Endpoints `σ(T)(0) = δ₂ ∘₂ deshift T` and `σ(T)(l) = δ₂ ∘₁ T`, as
/// normalized trees.
pub fn sigma_endpoints<R: Scalar>(t: &Tree<R>) -> Result<(Tree<R>, Tree<R>), PathsError> {
    let n = t.normalize();
    let delta2: Tree<R> = Tree::corolla(2);
    let start = delta2.graft(2, R::one(), &n.deshift())?.normalize();
    let end = delta2.graft(1, R::one(), &n)?.normalize();
    Ok((start, end))
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

    fn graft(t: &Tree<Q>, i: usize, r: Q, s: &Tree<Q>) -> Tree<Q> {
        t.graft(i, r, s).unwrap()
    }

    #[test]
    fn sigma_of_delta2_is_the_sliding_loop() {
        let s = sigma(&d(2)).unwrap().path;
        assert_eq!(s.total_length(), frac(2, 1));
        // t ∈ [0,1]: δ₂ ∘₂^{1−t} δ₂
        let t: Q = frac(1, 3);
        assert_eq!(s.eval(&t).unwrap(), graft(&d(2), 2, frac(2, 3), &d(2)));
        // t ∈ [1,2]: δ₂ ∘₁^{t−1} δ₂
        let t: Q = frac(3, 2);
        assert_eq!(s.eval(&t).unwrap(), graft(&d(2), 1, frac(1, 2), &d(2)));
        // the middle point is δ₃
        assert_eq!(s.eval(&Q::one()).unwrap(), d(3));
    }

    #[test]
    fn sigma_lengths_and_endpoints() {
        for n in 2..=5 {
            let s = sigma(&d(n)).unwrap().path;
            assert_eq!(s.total_length(), frac(2, 1));
            let (a, b) = sigma_endpoints(&d(n)).unwrap();
            assert_eq!(s.start(), a);
            assert_eq!(s.end(), b);
        }
        let t = graft(&d(2), 1, frac(1, 2), &d(2));
        let s = sigma(&t).unwrap().path;
        assert_eq!(s.total_length(), frac(3, 1));
        let (a, b) = sigma_endpoints(&t).unwrap();
        assert_eq!(s.start(), a);
        assert_eq!(s.end(), b);
    }

    #[test]
    fn sigma_splice_matches_direct_formula() {
        // T = δ₂ ∘₁^{1/2} δ₂: σ(T) juxtaposes the two cut pieces; check a
        // point in each against the displayed formula
        let r: Q = frac(1, 2);
        let t = graft(&d(2), 1, r.clone(), &d(2));
        let s = sigma(&t).unwrap().path;
        assert_eq!(s.total_length(), frac(3, 1));
        let inner = sigma(&d(2)).unwrap().path;
        // first piece (length l(S)+r−1 = 3/2) at time 1/4:
        // σ(δ₂)(1/4) ∘₃^{1/2} deshift(δ₂)
        let expect = graft(&inner.eval(&frac(1, 4)).unwrap(), 3, r.clone(), &d(2));
        assert_eq!(s.eval(&frac(1, 4)).unwrap(), expect.normalize());
        // second piece at global 2 = 3/2 + 1/2: σ(δ₂)(1−r+1/2) ∘₁^r δ₂
        let expect = graft(&inner.eval(&Q::one()).unwrap(), 1, r, &d(2));
        assert_eq!(s.eval(&frac(2, 1)).unwrap(), expect.normalize());
    }

    #[test]
    fn sigma_is_decomposition_independent_here() {
        let t = graft(&graft(&d(2), 1, frac(1, 3), &d(2)), 3, frac(2, 3), &d(2));
        let base = sigma(&t).unwrap().path;
        let mut pick_last = |n: usize| n - 1;
        let alt = sigma_on(&t, &mut pick_last).unwrap();
        assert!(base.path_equal(&alt));
    }

    #[test]
    fn gamma_endpoints_and_degeneracy_avatar() {
        for t in [
            d(2),
            d(3),
            graft(&d(2), 1, frac(1, 2), &d(2)),
            graft(&graft(&d(3), 2, frac(1, 3), &d(2)), 1, frac(3, 4), &d(2)),
        ] {
            let g = gamma(&t).unwrap().path;
            assert_eq!(g.total_length(), Q::one());
            assert_eq!(g.start(), graft(&t, 1, Q::one(), &d(2)).normalize());
            assert_eq!(g.end(), graft(&d(2), 2, Q::one(), &t).normalize());
            // erasing the slid-in first leaf recovers T at every sample time
            for k in 0..=8 {
                let time: Q = frac(k, 8);
                let point = g.eval(&time).unwrap();
                assert!(equal_mod(&point.degeneracy(1).unwrap(), &t));
            }
        }
    }

    #[test]
    fn gamma_circ_i_relation_sampled() {
        // γ_{δ₃ ∘₂^u δ₂} = γ_{δ₃} ∘₃^u δ₂
        let u: Q = frac(2, 5);
        let t = graft(&d(3), 2, u.clone(), &d(2));
        let lhs = gamma(&t).unwrap().path;
        let rhs = graft_path(&gamma(&d(3)).unwrap().path, 3, &u, &d(2)).unwrap();
        assert!(lhs.path_equal(&rhs));
    }

    #[test]
    fn lambda_base_cases() {
        let l2 = lambda(&d(2)).unwrap().path;
        assert_eq!(l2.total_length(), Q::zero());
        assert_eq!(l2.start(), d(2));

        // λ(δ₃)(t) = δ₂ ∘₂^{1−t} δ₂, length l(δ₃) − 1 = 1
        let l3 = lambda(&d(3)).unwrap().path;
        assert_eq!(l3.total_length(), Q::one());
        let t: Q = frac(1, 4);
        assert_eq!(l3.eval(&t).unwrap(), graft(&d(2), 2, frac(3, 4), &d(2)));
        assert_eq!(l3.end(), d(3));
        assert_eq!(l3.start(), graft(&d(2), 2, Q::one(), &d(2)).normalize());
    }

    #[test]
    fn lambda_endpoints_general() {
        for t in [
            d(4),
            graft(&d(3), 2, frac(1, 2), &d(2)),
            graft(&d(2), 1, frac(1, 3), &d(2)),
            graft(&graft(&d(2), 2, frac(2, 3), &d(2)), 1, frac(1, 3), &d(2)),
        ] {
            let p = lambda(&t).unwrap().path;
            let start_expect = Tree::corolla(2)
                .graft(2, Q::one(), &t.deshift().degeneracy(t.leaf_count()).unwrap())
                .unwrap()
                .normalize();
            assert_eq!(p.start(), start_expect);
            assert_eq!(p.end(), t.normalize());
        }
    }

    #[test]
    fn lambda_length_on_wide_roots() {
        for t in [d(3), d(4), graft(&d(3), 2, frac(1, 2), &d(2))] {
            let p = lambda(&t).unwrap().path;
            let l = length_l(&t).unwrap();
            assert_eq!(p.total_length(), l - Q::one());
        }
    }

    #[test]
    fn lambda_second_case_juxtaposition() {
        // T = (δ₂ ∘₂^v δ₂) ∘₁^u δ₂ with u = 1/3, v = 2/3
        let u: Q = frac(1, 3);
        let v: Q = frac(2, 3);
        let t = graft(&graft(&d(2), 2, v.clone(), &d(2)), 1, u.clone(), &d(2));
        let p = lambda(&t).unwrap().path;
        // length: (l(T₁)+u−1) + (max(u,v)−v) = (2+1/3−1) + 0 = 4/3
        assert_eq!(p.total_length(), frac(4, 3));
        assert_eq!(p.end(), t);
        // start: σ(T₁)(0) ∘_{|T₁|+1}^{max(u,v)} T₂ = (δ₂∘₂δ₂) ∘₃^{2/3} δ₂
        let start = graft(&graft(&d(2), 2, Q::one(), &d(2)), 3, v, &d(2)).normalize();
        assert_eq!(p.start(), start);
    }
}
