//! Laws of the bar construction: rewriting confluence, the retraction, the
//! loop families and their compatibilities, the projected paths and the
//! equivariant family.

use std::sync::Arc;

use operads::action::FiniteAction;
use operads::bar::{
    alpha_p, basepoint, beta, big_gamma_path, embed, embed_relative, f_n, f_n_equivariant,
    h_homotopy, label_path, retract, usual_map, BarElement, EndFamily, EndLabel,
};
use operads::gen::{self, case_rng};
use operads::moore::{x_value, Affine};
use operads::operad_k::{length_l, shapes};
use operads::paths::sigma;
use operads::scalar::frac;
use operads::tree::Tree;
use operads::Q;

use num_traits::{One, Zero};
use rand::Rng;

fn d(n: usize) -> Tree<Q> {
    Tree::corolla(n)
}

fn actions() -> Vec<Arc<FiniteAction>> {
    vec![
        Arc::new(FiniteAction::z2()),
        Arc::new(FiniteAction::right_zero_monoid()),
    ]
}

#[test]
fn rewriting_is_confluent_under_random_schedules() {
    for action in actions() {
        for case in 0..120u64 {
            let mut rng = case_rng(31, case);
            let el: BarElement<Q> = gen::bar_element(&mut rng, &action, 6, true);
            let normal = el.normalize();
            for round in 0..4u64 {
                let mut order = case_rng(32, case * 10 + round);
                let mut cur = el.clone();
                loop {
                    let rs = cur.redexes();
                    if rs.is_empty() {
                        break;
                    }
                    let pick = order.gen_range(0..rs.len());
                    cur = cur.apply_redex(&rs[pick]);
                }
                assert_eq!(cur, normal, "schedule diverged on {el}");
            }
        }
    }
}

#[test]
fn retract_is_a_rewriting_invariant() {
    for action in actions() {
        for case in 0..150u64 {
            let mut rng = case_rng(33, case);
            let mut el: BarElement<Q> = gen::bar_element(&mut rng, &action, 6, true);
            // force the shape of B(X,X,P)
            el.q = EndLabel::Monoid(rng.gen_range(0..action.len()));
            if let Some(s) = action.left_set() {
                el.p = EndLabel::Set(rng.gen_range(0..s.names.len()));
            }
            let value = retract(&el).unwrap();
            let rs = el.redexes();
            if !rs.is_empty() {
                let pick = rng.gen_range(0..rs.len());
                let stepped = el.apply_redex(&rs[pick]);
                assert_eq!(retract(&stepped).unwrap(), value, "on {el}");
            }
            assert_eq!(retract(&el.normalize()).unwrap(), value);
        }
    }
}

#[test]
fn retract_after_embed_is_the_identity() {
    for action in actions() {
        let pts = action.left_set().unwrap().names.len();
        for p in 0..pts {
            let e = embed::<Q>(&action, p).unwrap();
            assert_eq!(retract(&e).unwrap(), EndLabel::Set(p));
        }
    }
}

#[test]
fn f_n_loops_close_at_the_basepoint() {
    let action = Arc::new(FiniteAction::z2());
    for case in 0..80u64 {
        let mut rng = case_rng(34, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 5);
        let xs: Vec<usize> = (0..t.leaf_count() - 1)
            .map(|_| rng.gen_range(0..action.len()))
            .collect();
        let f = f_n::<Q>(&action, &t, &xs).unwrap();
        assert_eq!(f.start(), basepoint::<Q>(&action));
        assert_eq!(f.end(), basepoint::<Q>(&action));
        assert_eq!(f.total_length(), length_l(&t).unwrap());
    }
}

#[test]
fn amap_relations_small() {
    let action = Arc::new(FiniteAction::z2());
    let trees: Vec<Tree<Q>> = shapes(2)
        .into_iter()
        .chain(shapes(3))
        .map(|s| s.map_labels(&|_| frac::<Q>(1, 2)))
        .collect();
    for rho in &trees {
        for tau in &trees {
            let k = rho.leaf_count() + tau.leaf_count() - 2;
            for bits in 0..(1u32 << k) {
                let xs: Vec<usize> = (0..k).map(|b| ((bits >> b) & 1) as usize).collect();
                // amap1: grafting beyond the first slot folds labels
                for j in 1..rho.leaf_count() {
                    let composite = rho.graft(j + 1, Q::one(), tau).unwrap();
                    let lhs = f_n::<Q>(&action, &composite, &xs).unwrap();
                    let block = tau.leaf_count();
                    let folded = action.product(xs[j - 1..j - 1 + block].iter().copied());
                    let mut reduced = xs[..j - 1].to_vec();
                    reduced.push(folded);
                    reduced.extend(&xs[j - 1 + block..]);
                    let rhs = f_n::<Q>(&action, rho, &reduced).unwrap();
                    assert!(lhs.path_equal(&rhs), "amap1 at {rho:?} ∘_{} {tau:?}", j + 1);
                }
                // amap2: grafting on the first slot juxtaposes loops
                let composite = rho.graft(1, Q::one(), tau).unwrap();
                let lhs = f_n::<Q>(&action, &composite, &xs).unwrap();
                let split = tau.leaf_count() - 1;
                let first = f_n::<Q>(&action, tau, &xs[..split]).unwrap();
                let second = f_n::<Q>(&action, rho, &xs[split..]).unwrap();
                let rhs = first.juxtapose(&second).unwrap();
                assert!(lhs.path_equal(&rhs), "amap2 at {rho:?} ∘₁ {tau:?}");
            }
        }
    }
}

#[test]
fn alpha_three_formulas_on_small_elements() {
    let action = Arc::new(FiniteAction::z2());
    for case in 0..60u64 {
        let mut rng = case_rng(35, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 5);
        let x = rng.gen_range(0..2);
        let xs: Vec<usize> = (0..t.leaf_count() - 2)
            .map(|_| rng.gen_range(0..2))
            .collect();
        let p = rng.gen_range(0..2);
        let el = BarElement::new(
            action.clone(),
            t.clone(),
            EndLabel::Monoid(x),
            xs.clone(),
            EndLabel::Set(p),
        )
        .unwrap();
        let alpha = alpha_p(&el).unwrap();
        // α(0) = [δ₂; ∗, N(T; x, xs, p)]
        let start = alpha.start();
        assert_eq!(start.tree, d(2));
        assert_eq!(start.q, EndLabel::Star);
        assert_eq!(start.p, retract(&el).unwrap());
        // α(1) = [T; ∗, xs, p]
        let end = alpha.end();
        let expect = BarElement::new(
            action.clone(),
            t,
            EndLabel::Star,
            xs,
            EndLabel::Set(p),
        )
        .unwrap()
        .normalize();
        assert_eq!(end, expect);
    }
    // the δ₂ base case reproduces the two-piece formula
    let g = 1usize;
    let el = BarElement::new(
        action.clone(),
        d(2),
        EndLabel::Monoid(g),
        vec![],
        EndLabel::Set(0),
    )
    .unwrap();
    let alpha = alpha_p(&el).unwrap();
    for k in 0..=8i64 {
        let t = frac::<Q>(k, 8);
        let expect_tree = if t <= frac(1, 2) {
            d(2).graft(2, Q::one() - frac::<Q>(2, 1) * t.clone(), &d(2))
                .unwrap()
        } else {
            d(2).graft(1, frac::<Q>(2, 1) * t.clone() - Q::one(), &d(2))
                .unwrap()
        };
        let expect = BarElement::new(
            action.clone(),
            expect_tree,
            EndLabel::Star,
            vec![g],
            EndLabel::Set(0),
        )
        .unwrap()
        .normalize();
        assert_eq!(alpha.eval(&t).unwrap(), expect, "at t = {t}");
    }
}

#[test]
fn alpha_restricted_to_the_monoid_matches_the_usual_map() {
    // α on [δ₂; x, ∗] against the usual map, after rescaling Moore lengths
    let action = Arc::new(FiniteAction::z2());
    for x in 0..2usize {
        let el = BarElement::new(
            action.clone(),
            d(2),
            EndLabel::Monoid(x),
            vec![],
            EndLabel::Star,
        )
        .unwrap();
        let alpha = alpha_p(&el).unwrap();
        let usual = usual_map::<Q>(&action, x).unwrap();
        let rescaled = usual.rescale_to(&Q::one());
        assert!(alpha.path_equal(&rescaled));
    }
}

#[test]
fn h_homotopy_boundaries_and_splice() {
    let action = Arc::new(FiniteAction::z2());
    let samples: Vec<Q> = (0..=8).map(|k| frac(k, 8)).collect();
    for case in 0..25u64 {
        let mut rng = case_rng(36, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let s: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let n = t.leaf_count() + s.leaf_count() - 3;
        let x = rng.gen_range(0..2);
        let xs: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let p = EndLabel::Set(rng.gen_range(0..2));
        // u = 0 is Γ(T ∘₁ S)
        let composite = t.graft(1, Q::one(), &s).unwrap();
        let el = BarElement::new(
            action.clone(),
            composite,
            EndLabel::Monoid(x),
            xs.clone(),
            p.clone(),
        )
        .unwrap();
        let gpath = big_gamma_path(&el).unwrap();
        for time in &samples {
            let h = h_homotopy(&action, &t, &s, x, &xs, &p, time, &Q::zero()).unwrap();
            assert_eq!(h, gpath.eval(time).unwrap(), "u=0 at t={time}");
        }
        // u = 1 is Γ(T) on the reduced labels
        let folded = action.mul(x, action.product(xs[..s.leaf_count() - 1].iter().copied()));
        let reduced = BarElement::new(
            action.clone(),
            t.clone(),
            EndLabel::Monoid(folded),
            xs[s.leaf_count() - 1..].to_vec(),
            p.clone(),
        )
        .unwrap();
        let reduced_gamma = big_gamma_path(&reduced).unwrap();
        for time in &samples {
            let h = h_homotopy(&action, &t, &s, x, &xs, &p, time, &Q::one()).unwrap();
            assert_eq!(h, reduced_gamma.eval(time).unwrap(), "u=1 at t={time}");
        }
    }
}

#[test]
fn h_splice_identity_three_factors() {
    // H_{(T,T₃)}(t) = H_{(T,T₃∘₁T₂)}(t) *^{x_{l;l₁,l₁+l₂}}
    //                 H_{(T₃∘₁T₂,T₃)}(M-reduced labels)(t), in u
    let action = Arc::new(FiniteAction::z2());
    for case in 0..25u64 {
        let mut rng = case_rng(37, case);
        let t1: Tree<Q> = gen::tree(&mut rng, 2, 3);
        let t2: Tree<Q> = gen::tree(&mut rng, 2, 3);
        let t3: Tree<Q> = gen::tree(&mut rng, 2, 3);
        let t21 = t2.graft(1, Q::one(), &t1).unwrap();
        let t32 = t3.graft(1, Q::one(), &t2).unwrap();
        let total = t3.graft(1, Q::one(), &t21).unwrap();
        let n = total.leaf_count() - 2;
        let x = rng.gen_range(0..2);
        let xs: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let p = EndLabel::Set(rng.gen_range(0..2));
        let l1 = length_l(&t1).unwrap();
        let l2 = length_l(&t2).unwrap();
        let l = length_l(&total).unwrap();
        let splice = x_value(&l, &l1, &(l1.clone() + l2)).unwrap();
        // labels for the right factor: the T₁ block is folded
        let fold_len = t1.leaf_count() - 1;
        let folded = action.mul(x, action.product(xs[..fold_len].iter().copied()));
        let rest: Vec<usize> = xs[fold_len..].to_vec();
        for kt in 0..=6i64 {
            let t = frac::<Q>(kt, 6);
            for ku in 0..=8i64 {
                let u = frac::<Q>(ku, 8);
                let lhs = h_homotopy(&action, &t3, &t21, x, &xs, &p, &t, &u).unwrap();
                let rhs = if u <= splice {
                    h_homotopy(
                        &action,
                        &t32,
                        &t1,
                        x,
                        &xs,
                        &p,
                        &t,
                        &(u.clone() / splice.clone()),
                    )
                    .unwrap()
                } else {
                    h_homotopy(
                        &action,
                        &t3,
                        &t2,
                        folded,
                        &rest,
                        &p,
                        &t,
                        &((u.clone() - splice.clone()) / (Q::one() - splice.clone())),
                    )
                    .unwrap()
                };
                assert_eq!(lhs, rhs, "(t,u)=({t},{u})");
            }
        }
    }
}

#[test]
fn equivariance_clauses_small() {
    let action = Arc::new(FiniteAction::z2());
    let trees: Vec<Tree<Q>> = shapes(2)
        .into_iter()
        .chain(shapes(3))
        .map(|s| s.map_labels(&|_| Q::one()))
        .collect();
    for tau in &trees {
        for rho in &trees {
            let i = tau.leaf_count() - 1;
            let j = rho.leaf_count() - 1;
            let n = i + j;
            for bits in 0..(1u32 << (n - 1)) {
                let xs: Vec<usize> = (0..n - 1).map(|b| ((bits >> b) & 1) as usize).collect();
                for p in 0..2usize {
                    // middle clauses 2 ≤ k ≤ i: M folds into the word
                    for k in 2..=i {
                        let composite = tau.graft(k, Q::one(), rho).unwrap();
                        let lhs = f_n_equivariant::<Q>(&action, &composite, &xs, p).unwrap();
                        let folded =
                            action.product(xs[k - 2..k - 2 + (j + 1)].iter().copied());
                        let mut reduced = xs[..k - 2].to_vec();
                        reduced.push(folded);
                        reduced.extend(&xs[k - 2 + (j + 1)..]);
                        let rhs = f_n_equivariant::<Q>(&action, tau, &reduced, p).unwrap();
                        assert!(lhs.path_equal(&rhs), "middle clause k={k}");
                    }
                    // last clause k = i+1: the block acts on the point
                    let composite = tau.graft(i + 1, Q::one(), rho).unwrap();
                    let lhs = f_n_equivariant::<Q>(&action, &composite, &xs, p).unwrap();
                    let acted = action
                        .left_act(action.product(xs[i - 1..].iter().copied()), p);
                    let rhs = f_n_equivariant::<Q>(&action, tau, &xs[..i - 1], acted).unwrap();
                    assert!(lhs.path_equal(&rhs), "action clause");
                    // first clause k = 1: the loop factor splits off
                    let composite = tau.graft(1, Q::one(), rho).unwrap();
                    let lhs = f_n_equivariant::<Q>(&action, &composite, &xs, p).unwrap();
                    let tail = &xs[j..];
                    let anchor = action.left_act(action.product(tail.iter().copied()), p);
                    let loop_part = label_path(
                        &sigma(rho).unwrap().path,
                        &action,
                        EndLabel::Star,
                        xs[..j].to_vec(),
                        EndFamily::Fixed(EndLabel::Cone {
                            base: anchor,
                            height: Q::zero(),
                        }),
                    )
                    .unwrap();
                    let rhs = loop_part
                        .juxtapose(&f_n_equivariant::<Q>(&action, tau, tail, p).unwrap())
                        .unwrap();
                    assert!(lhs.path_equal(&rhs), "loop clause on {tau:?} ∘₁ {rho:?}");
                }
            }
        }
    }
}

#[test]
fn correspondence_roundtrip_exhaustive_and_unital() {
    // both composites of the shift correspondence are the identity on
    // evaluator behavior, over every shape with at most 5 leaves and every
    // Z/2 word; inserting the unit anywhere is invisible on both sides
    let a = FiniteAction::z2();
    let n_map = |t: &Tree<Q>, xs: &[usize], p: usize| operads::bar::discrete_n(&a, t, xs, p);
    let f_map = operads::bar::n_to_f::<Q>(&n_map);
    let back = operads::bar::f_to_n::<Q>(&f_map);
    let forth = |t: &Tree<Q>, xs: &[usize], p: usize| f_map(t, xs, p);
    for n in 2..=5usize {
        for shape in shapes(n) {
            let t: Tree<Q> = shape.map_labels(&|_| frac(1, 2));
            for bits in 0..(1u32 << (n - 1)) {
                let xs: Vec<usize> =
                    (0..n - 1).map(|b| ((bits >> b) & 1) as usize).collect();
                for p in 0..2usize {
                    assert_eq!(back(&t, &xs, p), n_map(&t, &xs, p));
                    // unitality: erasing an inserted unit changes nothing
                    for at in 0..=xs.len() {
                        let mut with_unit = xs.clone();
                        with_unit.insert(at, a.unit());
                        let bigger = t
                            .graft(1, Q::one(), &Tree::corolla(2))
                            .unwrap()
                            .normalize();
                        assert_eq!(forth(&bigger, &with_unit, p), forth(&t, &xs, p));
                    }
                }
            }
        }
    }
    // f₁(δ₂; x)(p) = N₂(δ₂; x, p) and f(e) = Id
    for p in 0..2usize {
        assert_eq!(f_map(&d(2), &[1], p), a.left_act(1, p));
        assert_eq!(f_map(&d(2), &[a.unit()], p), p);
    }
}

#[test]
fn correspondence_respects_first_slot_composition() {
    // f(T ∘₁ S; x)(p) = f(S; head)(f(T; tail)(p)), exhaustively over Z/2
    let a = FiniteAction::z2();
    let n_map = |t: &Tree<Q>, xs: &[usize], p: usize| operads::bar::discrete_n(&a, t, xs, p);
    let f_map = operads::bar::n_to_f::<Q>(&n_map);
    let comp = d(2).graft(1, Q::one(), &d(2)).unwrap();
    for x in 0..2usize {
        for y in 0..2usize {
            for p in 0..2usize {
                let lhs = f_map(&comp, &[x, y], p);
                let rhs = f_map(&d(2), &[x], f_map(&d(2), &[y], p));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn relative_embedding_and_beta_targets() {
    let action = Arc::new(FiniteAction::z2());
    for p in 0..2usize {
        let gp = embed_relative::<Q>(&action, p).unwrap();
        assert_eq!(gp.end().p, EndLabel::Apex);
        // F₁(δ₂; p) = γ_p
        let f1 = f_n_equivariant::<Q>(&action, &d(2), &[], p).unwrap();
        assert!(f1.path_equal(&gp));
    }
    for case in 0..40u64 {
        let mut rng = case_rng(38, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 5);
        let x = rng.gen_range(0..2);
        let xs: Vec<usize> = (0..t.leaf_count() - 2)
            .map(|_| rng.gen_range(0..2))
            .collect();
        let el = BarElement::new(
            action.clone(),
            t.clone(),
            EndLabel::Monoid(x),
            xs.clone(),
            EndLabel::Set(rng.gen_range(0..2)),
        )
        .unwrap();
        let b = beta(&el).unwrap();
        assert_eq!(b.start().p, EndLabel::Apex);
        // the evaluation target is the projected element
        let end = b.end();
        let mut projected = el.clone();
        projected.q = EndLabel::Star;
        assert_eq!(end, projected.normalize());
    }
}

#[test]
fn usual_map_multiplicativity_ordering() {
    // f(x·y) relates to f(y) then f(x) through the first-slot splice
    let action = Arc::new(FiniteAction::z2());
    let composite = d(2).graft(1, Q::one(), &d(2)).unwrap();
    for x in 0..2usize {
        for y in 0..2usize {
            let lhs = f_n::<Q>(&action, &composite, &[x, y]).unwrap();
            let rhs = usual_map::<Q>(&action, x)
                .unwrap()
                .juxtapose(&usual_map::<Q>(&action, y).unwrap())
                .unwrap();
            assert!(lhs.path_equal(&rhs));
        }
    }
    let _ = Affine::<Q>::time();
}
