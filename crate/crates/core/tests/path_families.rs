//! Properties of the σ, γ and λ families beyond their unit tests: random
//! decompositions, quotient passage, boundary consistency and the star
//! calculus identities.

use operads::gen::{self, case_rng};
use operads::moore::{const_family, star_compose, star_compose3, x_value, MoorePath, TreePath};
use operads::operad_k::length_l;
use operads::paths::{gamma, gamma_on, graft_path, lambda, lambda_on, sigma, sigma_on};
use operads::scalar::frac;
use operads::tree::{equal_mod, Tree};
use operads::Q;

use num_traits::{One, Zero};
use rand::Rng;

fn sample_times(len: &Q, count: u64, seed: u64) -> Vec<Q> {
    let mut out = vec![Q::zero(), len.clone()];
    let mut rng = case_rng(seed, 99);
    for _ in 0..count {
        let t: Q = gen::unit_rational(&mut rng);
        out.push(t * len.clone());
    }
    out
}

#[test]
fn sigma_respects_random_decompositions_and_the_quotient() {
    for case in 0..60u64 {
        let mut rng = case_rng(21, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let base = sigma(&t).unwrap().path;
        assert_eq!(base.total_length(), length_l(&t).unwrap());
        // random decomposition of the same normal form
        let mut chooser = {
            let mut r = case_rng(21, case + 1000);
            move |n: usize| r.gen_range(0..n.max(1))
        };
        let alt = sigma_on(&t, &mut chooser).unwrap();
        assert!(base.path_equal(&alt), "decomposition changed σ on {t:?}");
        // raw representative with zero labels degraded in
        let raw = t.map_labels(&|l| {
            if l == &frac::<Q>(1, 2) {
                Q::zero()
            } else {
                l.clone()
            }
        });
        if raw.normalize().leaf_count() >= 2 {
            let mut first = |_: usize| 0usize;
            let raw_sigma = sigma_on(&raw, &mut first).unwrap();
            let on_normal = sigma(&raw).unwrap().path;
            assert!(
                raw_sigma.path_equal(&on_normal),
                "σ failed to pass to the quotient on {raw:?}"
            );
        }
    }
}

#[test]
fn sigma_boundary_consistency_as_a_label_vanishes() {
    // build T₁ ∘₁^0 T₂ through the splice clause and compare with σ of the
    // collapsed tree
    for case in 0..40u64 {
        let mut rng = case_rng(22, case);
        let t1: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let t2: Tree<Q> = gen::tree(&mut rng, 2, 4);
        for i in 1..=t1.leaf_count() {
            let raw = t1.graft(i, Q::zero(), &t2).unwrap();
            let mut first = |_: usize| 0usize;
            let via_raw = sigma_on(&raw, &mut first).unwrap();
            let via_collapsed = sigma(&raw.normalize()).unwrap().path;
            assert!(via_raw.path_equal(&via_collapsed));
        }
    }
}

#[test]
fn gamma_relations_on_random_trees() {
    for case in 0..40u64 {
        let mut rng = case_rng(23, case);
        let t: Tree<Q> = gen::tree(&mut rng, 1, 5);
        let s: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let u: Q = gen::label(&mut rng);
        // γ_{T ∘ᵢ^u S} = γ_T ∘_{i+1}^u S for i ≥ 2
        if t.leaf_count() >= 2 {
            let i = rng.gen_range(2..=t.leaf_count());
            let lhs = gamma(&t.graft(i, u.clone(), &s).unwrap()).unwrap().path;
            let rhs = graft_path(&gamma(&t).unwrap().path, i + 1, &u, &s).unwrap();
            assert!(lhs.path_equal(&rhs));
        }
        // quotient passage for the formula itself
        let raw = t.graft(1, Q::zero(), &s).unwrap();
        let on_raw = gamma_on(&raw).unwrap();
        let on_normal = gamma_on(&raw.normalize()).unwrap();
        assert!(on_raw.path_equal(&on_normal));
    }
}

#[test]
fn gamma_circ1_splicing_identity() {
    // γ_{T∘₁^u S}(t) agrees with the two-branch reparameterization through
    // γ_S and γ_T
    for case in 0..30u64 {
        let mut rng = case_rng(24, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let s: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let u: Q = gen::label(&mut rng);
        let glued = t.graft(1, u.clone(), &s).unwrap();
        let g = gamma(&glued).unwrap().path;
        let g_t = gamma(&t).unwrap().path;
        let g_s = gamma(&s).unwrap().path;
        let l = length_l(&glued).unwrap();
        let l_s = length_l(&s).unwrap();
        let two = frac::<Q>(2, 1);
        let switch = (l_s.clone() + u.clone() - Q::one()) / l.clone();
        let lower = (l_s.clone() + two.clone() * u.clone() - two.clone()) / l.clone();
        for time in sample_times(&Q::one(), 12, 500 + case) {
            let lhs = g.eval(&time).unwrap();
            let rhs = if time <= switch {
                // T ∘₁^u γ_S(l·t / l(S))
                let inner = g_s.eval(&(l.clone() * time.clone() / l_s.clone())).unwrap();
                t.graft(1, u.clone(), &inner).unwrap().normalize()
            } else {
                // γ_T((t − lower)/(1 − lower)) ∘₂^u S
                let arg = (time.clone() - lower.clone()) / (Q::one() - lower.clone());
                let outer = g_t.eval(&arg).unwrap();
                outer.graft(2, u.clone(), &s).unwrap().normalize()
            };
            assert_eq!(lhs, rhs, "time {time} on {glued:?}");
        }
    }
}

#[test]
fn lambda_passes_to_the_quotient_and_respects_decompositions() {
    for case in 0..40u64 {
        let mut rng = case_rng(25, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let base = lambda(&t).unwrap().path;
        let mut chooser = {
            let mut r = case_rng(25, case + 1000);
            move |n: usize| r.gen_range(0..n.max(1))
        };
        let alt = lambda_on(&t, &mut chooser).unwrap();
        assert!(base.path_equal(&alt), "decomposition changed λ on {t:?}");
    }
}

#[test]
fn lambda_case_boundary_agreement() {
    // second case at u → 0 and v → 0 agrees with the first case applied to
    // the collapsed tree, exactly at the boundary label
    let d2 = Tree::<Q>::corolla(2);
    for case in 0..30u64 {
        let mut rng = case_rng(26, case);
        let t1: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let t2: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let v: Q = gen::label(&mut rng);
        let u: Q = gen::label(&mut rng);
        // u = 0: (δ₂ ∘₂^v T₂) ∘₁^0 T₁
        let raw = d2
            .graft(2, v.clone(), &t2)
            .unwrap()
            .graft(1, Q::zero(), &t1)
            .unwrap();
        let mut first = |_: usize| 0usize;
        let second_case = lambda_on(&raw, &mut first).unwrap();
        let collapsed = lambda(&raw.normalize()).unwrap().path;
        assert!(second_case.path_equal(&collapsed), "u→0 on {raw:?}");
        // v = 0: (δ₂ ∘₂^0 T₂) ∘₁^u T₁
        let raw = d2
            .graft(2, Q::zero(), &t2)
            .unwrap()
            .graft(1, u.clone(), &t1)
            .unwrap();
        let mut first = |_: usize| 0usize;
        let second_case = lambda_on(&raw, &mut first).unwrap();
        let collapsed = lambda(&raw.normalize()).unwrap().path;
        assert!(second_case.path_equal(&collapsed), "v→0 on {raw:?}");
    }
}

#[test]
fn lambda_recursion_clauses_sampled() {
    for case in 0..30u64 {
        let mut rng = case_rng(27, case);
        // clause at i ≥ 2 on wide-rooted trees
        let leaves = rng.gen_range(3..=5);
        let t: Tree<Q> = gen::tree_with_leaves(&mut rng, leaves);
        if t.root_children().map(|c| c.len()).unwrap_or(0) >= 3 && t.leaf_count() >= 2 {
            let s: Tree<Q> = gen::tree(&mut rng, 2, 3);
            let u: Q = gen::label(&mut rng);
            let i = rng.gen_range(2..=t.leaf_count());
            let lhs = lambda(&t.graft(i, u.clone(), &s).unwrap()).unwrap().path;
            let rhs = graft_path(&lambda(&t).unwrap().path, i, &u, &s).unwrap();
            assert!(lhs.path_equal(&rhs), "λ ∘ᵢ clause failed on {t:?} at {i}");
        }
    }
    // the ∘₁ clause with full-length labels, as stated
    let d2 = Tree::<Q>::corolla(2);
    for case in 0..20u64 {
        let mut rng = case_rng(28, case);
        let mut t1: Tree<Q> = gen::tree(&mut rng, 3, 5);
        while t1.root_children().map(|c| c.len()).unwrap_or(0) < 3 {
            t1 = gen::tree(&mut rng, 3, 5);
        }
        let t2: Tree<Q> = gen::tree(&mut rng, 2, 3);
        let glued = t1.graft(1, Q::one(), &t2).unwrap();
        let lhs = lambda(&glued).unwrap().path;
        let erased = t1.deshift().degeneracy(t1.leaf_count()).unwrap();
        let first = graft_path(
            &sigma(&t2).unwrap().path,
            t2.leaf_count() + 1,
            &Q::one(),
            &erased,
        )
        .unwrap();
        let second = graft_path(&lambda(&t1).unwrap().path, 1, &Q::one(), &t2).unwrap();
        let rhs = first.juxtapose(&second).unwrap();
        assert!(lhs.path_equal(&rhs), "λ ∘₁ clause failed on {glued:?}");
        let _ = d2.clone();
    }
}

#[test]
fn star_calculus_fundamental_identity() {
    // (α₁ *^{x_{c;a₁,a₂}} α₂) *^{x_{c;a₂,a₃}} α₃
    //   = α₁ *^{x_{c;a₁,a₃}} α₂ *^{x_{c;a₂,a₃}} α₃
    //   = α₁ *^{x_{c;a₁,a₃}} (α₂ *^{x_{c−a₁;a₂−a₁,a₃−a₁}} α₃)
    for case in 0..60u64 {
        let mut rng = case_rng(29, case);
        // three affine unit paths with matching endpoints
        let t: Tree<Q> = gen::tree(&mut rng, 2, 5);
        let g = gamma(&t).unwrap().path;
        let end = g.end();
        let a2_path: TreePath<Q> = MoorePath::constant(&end, Q::one());
        let a3_path: TreePath<Q> = MoorePath::constant(&end, Q::one());
        // 0 < a₁ < a₂ < a₃ < c on an eighth grid
        let picks = {
            let mut v: Vec<i64> = Vec::new();
            while v.len() < 3 {
                let k = rng.gen_range(1..8i64);
                if !v.contains(&k) {
                    v.push(k);
                }
            }
            v.sort_unstable();
            v
        };
        let (a1, a2, a3) = (
            frac::<Q>(picks[0], 8),
            frac::<Q>(picks[1], 8),
            frac::<Q>(picks[2], 8),
        );
        let c = Q::one();
        let left = star_compose(
            &star_compose(&g, &a2_path, &x_value(&c, &a1, &a2).unwrap()).unwrap(),
            &a3_path,
            &x_value(&c, &a2, &a3).unwrap(),
        )
        .unwrap();
        let mid = star_compose3(
            &g,
            &a2_path,
            &a3_path,
            &x_value(&c, &a1, &a3).unwrap(),
            &x_value(&c, &a2, &a3).unwrap(),
        )
        .unwrap();
        let shifted = x_value(
            &(c.clone() - a1.clone()),
            &(a2.clone() - a1.clone()),
            &(a3.clone() - a1.clone()),
        )
        .unwrap();
        let right = star_compose(
            &g,
            &star_compose(&a2_path, &a3_path, &shifted).unwrap(),
            &x_value(&c, &a1, &a3).unwrap(),
        )
        .unwrap();
        assert!(left.path_equal(&mid));
        assert!(right.path_equal(&mid));
        // extra random sample times beyond the refinement
        for time in sample_times(&Q::one(), 16, 700 + case) {
            assert_eq!(left.eval(&time), mid.eval(&time));
            assert_eq!(right.eval(&time), mid.eval(&time));
        }
    }
}

#[test]
fn gamma_avatar_under_erasure_holds_at_dense_samples() {
    for case in 0..30u64 {
        let mut rng = case_rng(30, case);
        let t: Tree<Q> = gen::tree(&mut rng, 1, 6);
        let g = gamma(&t).unwrap().path;
        for k in 0..=8u64 {
            let time = frac::<Q>(k as i64, 8);
            let point = g.eval(&time).unwrap();
            assert!(equal_mod(&point.degeneracy(1).unwrap(), &t));
        }
    }
    let _ = const_family::<Q>(&Tree::corolla(2));
}
