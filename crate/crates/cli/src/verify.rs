//! The seeded verification driver.
//!
//! Every suite draws its cases from one ChaCha stream per case index, so a
//! report is reproducible from `(suite, seed)` alone. Failing cases are
//! shrunk by subtree replacement and reported as literals that re-parse to
//! reproduce the failure. The `Mutation` hook plants a known defect so the
//! driver itself can be tested end to end.

use std::sync::Arc;
use std::time::Instant;

use operads::action::FiniteAction;
use operads::bar::{
    alpha_p, basepoint, embed, embed_relative, f_n, f_n_equivariant, label_path,
    retract, BarElement, EndFamily, EndLabel,
};
use operads::gen::{self, case_rng};
use operads::literal::{closed_tree_literal, config_literal, tree_literal};
use operads::moore::{star_compose, star_compose3, x_value, MoorePath};
use operads::operad_k::{f_vector, length_l, ActPoint};
use operads::paths::{gamma, graft_path, lambda, lambda_on, sigma, sigma_on};
use operads::scalar::{frac, int};
use operads::swiss_cheese::{
    closed_action, compose_closed, compose_open_closed, compose_open_open, rho_action,
    ClosedConfig, Config, OpenConfig, PCPath, theta, theta_with,
};
use operads::tree::Tree;
use operads::Q;

use num_traits::{One, Zero};
use rand::Rng;

#[derive(Clone, Debug)]
pub struct Failure {
    pub case: u64,
    pub literal: String,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub millis: u128,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A deliberately planted defect, for testing the driver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    None,
    /// Flip the sign of the spine contribution in the tree length.
    LengthSign,
}

pub const SUITES: &[&str] = &[
    "operad-axioms",
    "normalize",
    "shift-deshift",
    "length",
    "faces",
    "sigma",
    "gamma",
    "lambda",
    "star",
    "bar-confluence",
    "retract",
    "usual-map",
    "alpha",
    "equivariance",
    "sc-operad",
    "theta",
    "rho",
];

pub fn run(suite: &str, seed: u64, cases: u64, mutation: Mutation) -> Option<VerificationReport> {
    let start = Instant::now();
    let mut failures = Vec::new();
    match suite {
        "operad-axioms" => suite_operad_axioms(seed, cases, &mut failures),
        "normalize" => suite_normalize(seed, cases, &mut failures),
        "shift-deshift" => suite_shift_deshift(seed, cases, &mut failures),
        "length" => suite_length(seed, cases, mutation, &mut failures),
        "faces" => suite_faces(&mut failures),
        "sigma" => suite_sigma(seed, cases, &mut failures),
        "gamma" => suite_gamma(seed, cases, &mut failures),
        "lambda" => suite_lambda(seed, cases, &mut failures),
        "star" => suite_star(seed, cases, &mut failures),
        "bar-confluence" => suite_bar_confluence(seed, cases, &mut failures),
        "retract" => suite_retract(seed, cases, &mut failures),
        "usual-map" => suite_usual_map(seed, cases, &mut failures),
        "alpha" => suite_alpha(seed, cases, &mut failures),
        "equivariance" => suite_equivariance(seed, cases, &mut failures),
        "sc-operad" => suite_sc_operad(seed, cases, &mut failures),
        "theta" => suite_theta(seed, cases, &mut failures),
        "rho" => suite_rho(seed, cases, &mut failures),
        _ => return None,
    }
    failures.sort_by_key(|f| f.case);
    Some(VerificationReport {
        suite: suite.to_string(),
        seed,
        cases,
        failures,
        millis: start.elapsed().as_millis(),
    })
}

/// Shrink a failing tree by replacing subtrees with their pieces or the
/// whole tree by a corolla, while the predicate keeps failing.
pub fn shrink_tree(t: &Tree<Q>, fails: &dyn Fn(&Tree<Q>) -> bool) -> Tree<Q> {
    let size = |x: &Tree<Q>| (x.leaf_count(), x.internal_edge_count());
    let mut cur = t.clone();
    loop {
        let mut improved = false;
        let corolla: Tree<Q> = Tree::corolla(cur.leaf_count());
        let mut candidates: Vec<Tree<Q>> = vec![corolla];
        for k in 0..cur.internal_edge_count() {
            if let Some((outer, _, _, inner)) = cur.split_at_edge(k) {
                candidates.push(outer);
                candidates.push(inner);
            }
        }
        for cand in candidates {
            let cand = cand.normalize();
            if cand != cur && size(&cand) <= size(&cur) && cand.leaf_count() >= 1 && fails(&cand)
            {
                cur = cand;
                improved = true;
                break;
            }
        }
        if !improved {
            return cur;
        }
    }
}

fn suite_operad_axioms(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let u: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let s: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let q: Q = gen::unit_rational(&mut rng);
        let r: Q = gen::unit_rational(&mut rng);
        let i = rng.gen_range(1..=u.leaf_count());
        let j = rng.gen_range(1..=t.leaf_count());
        let assoc_ok = u
            .graft(i, q.clone(), &t.graft(j, r.clone(), &s).unwrap())
            .unwrap()
            == u.graft(i, q.clone(), &t)
                .unwrap()
                .graft(j + i - 1, r.clone(), &s)
                .unwrap();
        let comm_ok = if u.leaf_count() >= 2 {
            let hi = rng.gen_range(2..=u.leaf_count());
            let lo = rng.gen_range(1..hi);
            u.graft(hi, q.clone(), &t)
                .unwrap()
                .graft(lo, r.clone(), &s)
                .unwrap()
                == u.graft(lo, r.clone(), &s)
                    .unwrap()
                    .graft(hi + s.leaf_count() - 1, q.clone(), &t)
                    .unwrap()
        } else {
            true
        };
        if !(assoc_ok && comm_ok) {
            failures.push(Failure {
                case,
                literal: format!(
                    "u={} t={} s={} q={} r={}",
                    closed_tree_literal(&u),
                    closed_tree_literal(&t),
                    closed_tree_literal(&s),
                    q,
                    r
                ),
                message: "operadic relation violated".into(),
            });
        }
    }
}

fn suite_normalize(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let t: Tree<Q> = gen::raw_tree(&mut rng, 2, 7);
        let normal = t.normalize();
        let mut problem = None;
        if normal.normalize() != normal {
            problem = Some("normal form is not a fixed point");
        }
        let mut cur = t.clone();
        loop {
            let rs = cur.redexes();
            if rs.is_empty() {
                break;
            }
            let pick = rng.gen_range(0..rs.len());
            cur = cur.apply_redex(&rs[pick]);
        }
        if cur != normal {
            problem = Some("rewrite schedule diverged");
        }
        if let Some(message) = problem {
            let min = shrink_tree(&t, &|c| {
                let mut cur = c.clone();
                loop {
                    let rs = cur.redexes();
                    if rs.is_empty() {
                        break;
                    }
                    cur = cur.apply_redex(&rs[rs.len() - 1]);
                }
                cur != c.normalize()
            });
            failures.push(Failure {
                case,
                literal: closed_tree_literal(&min),
                message: message.into(),
            });
        }
    }
}

fn suite_shift_deshift(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let t: Tree<Q> = gen::tree(&mut rng, 1, 7);
        if t.shift().deshift() != t || t.deshift().shift() != t {
            let min = shrink_tree(&t, &|c| c.shift().deshift() != *c || c.deshift().shift() != *c);
            failures.push(Failure {
                case,
                literal: closed_tree_literal(&min),
                message: "shift/deshift round trip failed".into(),
            });
        }
    }
}

fn mutated_length(t: &Tree<Q>, mutation: Mutation) -> Q {
    let l = length_l(t).expect("length defined");
    match mutation {
        Mutation::None => l,
        // 2(1+Σu) becomes 2(1−Σu)
        Mutation::LengthSign => int::<Q>(4) - l,
    }
}

fn suite_length(seed: u64, cases: u64, mutation: Mutation, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let s: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let r: Q = gen::unit_rational(&mut rng);
        let check = |t: &Tree<Q>, s: &Tree<Q>, r: &Q| {
            let glued = t.graft(1, r.clone(), s).unwrap();
            mutated_length(&glued, mutation)
                == mutated_length(t, mutation) + mutated_length(s, mutation)
                    + int::<Q>(2) * r.clone()
                    - int::<Q>(2)
        };
        if !check(&t, &s, &r) {
            let min_t = shrink_tree(&t, &|c| !check(c, &s, &r));
            let min_s = shrink_tree(&s, &|c| !check(&min_t, c, &r));
            failures.push(Failure {
                case,
                literal: format!(
                    "t={} s={} r={}",
                    closed_tree_literal(&min_t),
                    closed_tree_literal(&min_s),
                    r
                ),
                message: "length additivity failed".into(),
            });
        }
    }
}

fn suite_faces(failures: &mut Vec<Failure>) {
    let expected: [(usize, &[usize]); 3] = [(3, &[2, 1]), (4, &[5, 5, 1]), (5, &[14, 21, 9, 1])];
    for (n, want) in expected {
        match f_vector(n) {
            Ok(got) if got == want => {}
            other => failures.push(Failure {
                case: n as u64,
                literal: format!("K_{n}"),
                message: format!("f-vector mismatch: {other:?}"),
            }),
        }
    }
    let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429];
    for n in 2..=8usize {
        let fv = f_vector(n).unwrap();
        if fv[0] != catalan[n - 1] {
            failures.push(Failure {
                case: n as u64,
                literal: format!("K_{n}"),
                message: format!("vertex count {} is not Catalan {}", fv[0], catalan[n - 1]),
            });
        }
    }
}

fn suite_sigma(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let fails = |t: &Tree<Q>| -> Option<&'static str> {
            let Ok(fp) = sigma(t) else {
                return Some("sigma failed to build");
            };
            let p = fp.path;
            if p.total_length() != length_l(t).unwrap() {
                return Some("Moore length differs from l(T)");
            }
            let d2: Tree<Q> = Tree::corolla(2);
            let start = d2.graft(2, Q::one(), &t.deshift()).unwrap().normalize();
            let end = d2.graft(1, Q::one(), t).unwrap().normalize();
            if p.start() != start || p.end() != end {
                return Some("endpoint identity failed");
            }
            let mut chooser = {
                let mut r = case_rng(0xD15C0, t.internal_edge_count() as u64);
                move |n: usize| r.gen_range(0..n.max(1))
            };
            let alt = sigma_on(t, &mut chooser).unwrap();
            if !p.path_equal(&alt) {
                return Some("decomposition dependence detected");
            }
            None
        };
        if let Some(message) = fails(&t.normalize()) {
            let min = shrink_tree(&t, &|c| c.leaf_count() >= 2 && fails(&c.normalize()).is_some());
            failures.push(Failure {
                case,
                literal: closed_tree_literal(&min),
                message: message.into(),
            });
        }
    }
}

fn suite_gamma(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let t: Tree<Q> = gen::tree(&mut rng, 1, 6);
        let fails = |t: &Tree<Q>| -> Option<&'static str> {
            let Ok(fp) = gamma(t) else {
                return Some("gamma failed to build");
            };
            let p = fp.path;
            let d2: Tree<Q> = Tree::corolla(2);
            if p.start() != t.graft(1, Q::one(), &d2).unwrap().normalize()
                || p.end() != d2.graft(2, Q::one(), t).unwrap().normalize()
            {
                return Some("endpoint identity failed");
            }
            for k in 0..=8i64 {
                let time = frac::<Q>(k, 8);
                let point = p.eval(&time).unwrap();
                if !operads::tree::equal_mod(&point.degeneracy(1).unwrap(), t) {
                    return Some("first-leaf erasure does not recover T");
                }
            }
            None
        };
        let normal = t.normalize();
        let mut message = fails(&normal);
        if message.is_none() && normal.leaf_count() >= 2 {
            // the ∘_{i+1} compatibility on a random slot
            let s: Tree<Q> = gen::tree(&mut rng, 2, 4);
            let u: Q = gen::label(&mut rng);
            let i = rng.gen_range(2..=normal.leaf_count());
            let lhs = gamma(&normal.graft(i, u.clone(), &s).unwrap()).unwrap().path;
            let rhs = graft_path(&gamma(&normal).unwrap().path, i + 1, &u, &s).unwrap();
            if !lhs.path_equal(&rhs) {
                message = Some("grafting compatibility failed");
            }
        }
        if let Some(message) = message {
            let min = shrink_tree(&t, &|c| fails(&c.normalize()).is_some());
            failures.push(Failure {
                case,
                literal: closed_tree_literal(&min),
                message: message.into(),
            });
        }
    }
}

fn suite_lambda(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 6);
        let fails = |t: &Tree<Q>| -> Option<&'static str> {
            let Ok(fp) = lambda(t) else {
                return Some("lambda failed to build");
            };
            let p = fp.path;
            let d2: Tree<Q> = Tree::corolla(2);
            let erased = t.deshift().degeneracy(t.leaf_count()).unwrap();
            let start = d2.graft(2, Q::one(), &erased).unwrap().normalize();
            if p.start() != start || p.end() != *t {
                return Some("endpoint identity failed");
            }
            if t.root_children().map(|c| c.len()).unwrap_or(0) >= 3
                && p.total_length() != length_l(t).unwrap() - Q::one()
            {
                return Some("Moore length differs from l(T) − 1");
            }
            let mut chooser = {
                let mut r = case_rng(0x7A3B, t.internal_edge_count() as u64);
                move |n: usize| r.gen_range(0..n.max(1))
            };
            let alt = lambda_on(t, &mut chooser).unwrap();
            if !p.path_equal(&alt) {
                return Some("decomposition dependence detected");
            }
            None
        };
        if let Some(message) = fails(&t.normalize()) {
            let min = shrink_tree(&t, &|c| c.leaf_count() >= 2 && fails(&c.normalize()).is_some());
            failures.push(Failure {
                case,
                literal: closed_tree_literal(&min),
                message: message.into(),
            });
        }
    }
}

fn suite_star(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 5);
        let g = gamma(&t).unwrap().path;
        let end = g.end();
        let a2 = MoorePath::constant(&end, Q::one());
        let a3 = MoorePath::constant(&end, Q::one());
        let mut picks: Vec<i64> = Vec::new();
        while picks.len() < 3 {
            let k = rng.gen_range(1..12i64);
            if !picks.contains(&k) {
                picks.push(k);
            }
        }
        picks.sort_unstable();
        let (a1v, a2v, a3v) = (
            frac::<Q>(picks[0], 12),
            frac::<Q>(picks[1], 12),
            frac::<Q>(picks[2], 12),
        );
        let c = Q::one();
        let left = star_compose(
            &star_compose(&g, &a2, &x_value(&c, &a1v, &a2v).unwrap()).unwrap(),
            &a3,
            &x_value(&c, &a2v, &a3v).unwrap(),
        )
        .unwrap();
        let mid = star_compose3(
            &g,
            &a2,
            &a3,
            &x_value(&c, &a1v, &a3v).unwrap(),
            &x_value(&c, &a2v, &a3v).unwrap(),
        )
        .unwrap();
        let shifted = x_value(
            &(c.clone() - a1v.clone()),
            &(a2v.clone() - a1v.clone()),
            &(a3v.clone() - a1v.clone()),
        )
        .unwrap();
        let right = star_compose(
            &g,
            &star_compose(&a2, &a3, &shifted).unwrap(),
            &x_value(&c, &a1v, &a3v).unwrap(),
        )
        .unwrap();
        let mut ok = left.path_equal(&mid) && right.path_equal(&mid);
        for _ in 0..64 {
            let time: Q = gen::unit_rational(&mut rng);
            ok &= left.eval(&time) == mid.eval(&time) && right.eval(&time) == mid.eval(&time);
        }
        if !ok {
            failures.push(Failure {
                case,
                literal: format!(
                    "t={} a1={a1v} a2={a2v} a3={a3v}",
                    closed_tree_literal(&t)
                ),
                message: "star bracketing identity failed".into(),
            });
        }
    }
}

fn bar_actions() -> Vec<Arc<FiniteAction>> {
    vec![
        Arc::new(FiniteAction::z2()),
        Arc::new(FiniteAction::right_zero_monoid()),
    ]
}

fn suite_bar_confluence(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for (a_idx, action) in bar_actions().into_iter().enumerate() {
        for case in 0..cases {
            let mut rng = case_rng(seed.wrapping_add(a_idx as u64), case);
            let el: BarElement<Q> = gen::bar_element(&mut rng, &action, 6, true);
            let normal = el.normalize();
            let mut diverged = false;
            for _ in 0..4 {
                let mut cur = el.clone();
                loop {
                    let rs = cur.redexes();
                    if rs.is_empty() {
                        break;
                    }
                    let pick = rng.gen_range(0..rs.len());
                    cur = cur.apply_redex(&rs[pick]);
                }
                diverged |= cur != normal;
            }
            if diverged {
                failures.push(Failure {
                    case,
                    literal: el.to_string(),
                    message: "rewriting schedule diverged".into(),
                });
            }
        }
    }
}

fn suite_retract(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for action in bar_actions() {
        let pts = action.left_set().unwrap().names.len();
        for p in 0..pts {
            let e = embed::<Q>(&action, p).unwrap();
            if retract(&e).unwrap() != EndLabel::Set(p) {
                failures.push(Failure {
                    case: p as u64,
                    literal: e.to_string(),
                    message: "retract ∘ embed is not the identity".into(),
                });
            }
        }
        for case in 0..cases {
            let mut rng = case_rng(seed, case);
            let mut el: BarElement<Q> = gen::bar_element(&mut rng, &action, 6, true);
            el.q = EndLabel::Monoid(rng.gen_range(0..action.len()));
            el.p = EndLabel::Set(rng.gen_range(0..pts));
            let value = retract(&el).unwrap();
            let rs = el.redexes();
            let stepped_ok = rs.is_empty() || {
                let pick = rng.gen_range(0..rs.len());
                retract(&el.apply_redex(&rs[pick])).unwrap() == value
            };
            if !stepped_ok || retract(&el.normalize()).unwrap() != value {
                failures.push(Failure {
                    case,
                    literal: el.to_string(),
                    message: "retract is not rewriting-invariant".into(),
                });
            }
        }
    }
}

fn suite_usual_map(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    let action = Arc::new(FiniteAction::z2());
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let t: Tree<Q> = gen::tree(&mut rng, 2, 5);
        let xs: Vec<usize> = (0..t.leaf_count() - 1)
            .map(|_| rng.gen_range(0..action.len()))
            .collect();
        let f = f_n::<Q>(&action, &t, &xs).unwrap();
        let base = basepoint::<Q>(&action);
        if f.start() != base || f.end() != base {
            failures.push(Failure {
                case,
                literal: closed_tree_literal(&t),
                message: "loop does not close at the basepoint".into(),
            });
            continue;
        }
        // one random composition relation per case
        let s: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let k = t.leaf_count() + s.leaf_count() - 2;
        let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..action.len())).collect();
        let j = rng.gen_range(1..=t.leaf_count());
        let ok = if j == 1 {
            let composite = t.graft(1, Q::one(), &s).unwrap();
            let lhs = f_n::<Q>(&action, &composite, &xs).unwrap();
            let split = s.leaf_count() - 1;
            let rhs = f_n::<Q>(&action, &s, &xs[..split])
                .unwrap()
                .juxtapose(&f_n::<Q>(&action, &t, &xs[split..]).unwrap())
                .unwrap();
            lhs.path_equal(&rhs)
        } else {
            let composite = t.graft(j, Q::one(), &s).unwrap();
            let lhs = f_n::<Q>(&action, &composite, &xs).unwrap();
            let block = s.leaf_count();
            let folded = action.product(xs[j - 2..j - 2 + block].iter().copied());
            let mut reduced = xs[..j - 2].to_vec();
            reduced.push(folded);
            reduced.extend(&xs[j - 2 + block..]);
            let rhs = f_n::<Q>(&action, &t, &reduced).unwrap();
            lhs.path_equal(&rhs)
        };
        if !ok {
            failures.push(Failure {
                case,
                literal: format!(
                    "t={} s={} at={}",
                    closed_tree_literal(&t),
                    closed_tree_literal(&s),
                    j
                ),
                message: "structure map relation failed".into(),
            });
        }
    }
}

fn suite_alpha(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    let action = Arc::new(FiniteAction::z2());
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
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
        let start = alpha.start();
        let end = alpha.end();
        let target = BarElement::new(action.clone(), t, EndLabel::Star, xs, EndLabel::Set(p))
            .unwrap()
            .normalize();
        let ok = start.tree == Tree::corolla(2)
            && start.q == EndLabel::Star
            && start.p == retract(&el).unwrap()
            && end == target;
        if !ok {
            failures.push(Failure {
                case,
                literal: el.to_string(),
                message: "projected path endpoint formula failed".into(),
            });
        }
    }
}

fn suite_equivariance(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    let action = Arc::new(FiniteAction::z2());
    for p in 0..2usize {
        let gp = embed_relative::<Q>(&action, p).unwrap();
        if gp.end().p != EndLabel::Apex {
            failures.push(Failure {
                case: p as u64,
                literal: format!("p={p}"),
                message: "relative embedding does not reach the apex".into(),
            });
        }
    }
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let tau: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let rho: Tree<Q> = gen::tree(&mut rng, 2, 4);
        let i = tau.leaf_count() - 1;
        let j = rho.leaf_count() - 1;
        let n = i + j;
        let xs: Vec<usize> = (0..n - 1).map(|_| rng.gen_range(0..2)).collect();
        let p = rng.gen_range(0..2usize);
        let k = rng.gen_range(1..=i + 1);
        let composite = tau.graft(k, Q::one(), &rho).unwrap();
        let lhs = f_n_equivariant::<Q>(&action, &composite, &xs, p).unwrap();
        let ok = if k == 1 {
            let tail = &xs[j..];
            let anchor = action.left_act(action.product(tail.iter().copied()), p);
            let loop_part = label_path(
                &sigma(&rho).unwrap().path,
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
                .juxtapose(&f_n_equivariant::<Q>(&action, &tau, tail, p).unwrap())
                .unwrap();
            lhs.path_equal(&rhs)
        } else if k == i + 1 {
            let acted = action.left_act(action.product(xs[i - 1..].iter().copied()), p);
            let rhs = f_n_equivariant::<Q>(&action, &tau, &xs[..i - 1], acted).unwrap();
            lhs.path_equal(&rhs)
        } else {
            let folded = action.product(xs[k - 2..k - 2 + (j + 1)].iter().copied());
            let mut reduced = xs[..k - 2].to_vec();
            reduced.push(folded);
            reduced.extend(&xs[k - 2 + (j + 1)..]);
            let rhs = f_n_equivariant::<Q>(&action, &tau, &reduced, p).unwrap();
            lhs.path_equal(&rhs)
        };
        if !ok {
            failures.push(Failure {
                case,
                literal: format!(
                    "tau={} rho={} k={}",
                    closed_tree_literal(&tau),
                    closed_tree_literal(&rho),
                    k
                ),
                message: "equivariance clause failed".into(),
            });
        }
    }
}

fn suite_sc_operad(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let c: ClosedConfig<Q> = gen::closed_config(&mut rng, 4);
        let d: ClosedConfig<Q> = gen::closed_config(&mut rng, 4);
        let e: ClosedConfig<Q> = gen::closed_config(&mut rng, 4);
        let i = rng.gen_range(1..=c.arity());
        let j = rng.gen_range(1..=d.arity());
        let mut ok = compose_closed(&c, i, &compose_closed(&d, j, &e).unwrap()).unwrap()
            == compose_closed(&compose_closed(&c, i, &d).unwrap(), j + i - 1, &e).unwrap();
        let o1: OpenConfig<Q> = gen::open_config(&mut rng, 3);
        let o2: OpenConfig<Q> = gen::open_config(&mut rng, 3);
        let o3: OpenConfig<Q> = gen::open_config(&mut rng, 3);
        if o1.distinguished().is_some() && o2.distinguished().is_some() {
            ok &= compose_open_open(&compose_open_open(&o1, &o2).unwrap(), &o3).unwrap()
                == compose_open_open(&o1, &compose_open_open(&o2, &o3).unwrap()).unwrap();
        }
        if o1.distinguished().is_some() && !o1.closed_slots().is_empty() {
            let slot = rng.gen_range(1..=o1.closed_slots().len());
            ok &= compose_open_open(&compose_open_closed(&o1, slot, &c).unwrap(), &o2).unwrap()
                == compose_open_closed(&compose_open_open(&o1, &o2).unwrap(), slot, &c).unwrap();
        }
        if !ok {
            failures.push(Failure {
                case,
                literal: format!(
                    "c={} d={} e={}",
                    config_literal(&Config::Closed(c)),
                    config_literal(&Config::Closed(d)),
                    config_literal(&Config::Closed(e))
                ),
                message: "interval operad axiom failed".into(),
            });
        }
    }
}

fn suite_theta(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let pt: ActPoint<Q> = gen::act_point(&mut rng, 6);
        let pt = pt.normalize();
        if pt.tree.leaf_count() == 0 {
            continue;
        }
        let image = theta(&pt).unwrap();
        let valid = match &image {
            Config::Closed(c) => ClosedConfig::new(c.intervals().to_vec()).is_ok(),
            Config::Open(o) => {
                OpenConfig::new(o.closed_slots().to_vec(), o.distinguished().cloned()).is_ok()
            }
        };
        let mut chooser_rng = case_rng(seed ^ 0xBEEF, case);
        let mut chooser = move |n: usize| chooser_rng.gen_range(0..n.max(1));
        let stable = theta_with(&pt, &mut chooser).unwrap() == image;
        if !(valid && stable) {
            failures.push(Failure {
                case,
                literal: tree_literal(&pt.tree, pt.color),
                message: if valid {
                    "θ depends on the decomposition".into()
                } else {
                    "θ image is not a valid configuration".into()
                },
            });
        }
    }
}

fn suite_rho(seed: u64, cases: u64, failures: &mut Vec<Failure>) {
    let base = 0usize;
    for case in 0..cases {
        let mut rng = case_rng(seed, case);
        let o1: OpenConfig<Q> = gen::open_config(&mut rng, 3);
        let o2: OpenConfig<Q> = gen::open_config(&mut rng, 3);
        if o1.distinguished().is_none() || o2.distinguished().is_none() {
            continue;
        }
        let loops1: Vec<PCPath<Q>> = (0..o1.closed_slots().len())
            .map(|_| gen::pc_path(&mut rng, 3, base, base, 3))
            .collect();
        let loops2: Vec<PCPath<Q>> = (0..o2.closed_slots().len())
            .map(|_| gen::pc_path(&mut rng, 3, base, base, 3))
            .collect();
        let end = if rng.gen_bool(0.5) { 2 } else { base };
        let rel: PCPath<Q> = gen::pc_path(&mut rng, 3, base, end, 3);
        let composed = compose_open_open(&o1, &o2).unwrap();
        let mut all = loops1.clone();
        all.extend(loops2.clone());
        let lhs = rho_action(&composed, &all, &rel, base).unwrap();
        let rhs = rho_action(
            &o1,
            &loops1,
            &rho_action(&o2, &loops2, &rel, base).unwrap(),
            base,
        )
        .unwrap();
        let mut ok = lhs == rhs && lhs.start() == base && lhs.end_value() == rel.end_value();
        if !o1.closed_slots().is_empty() {
            let c: ClosedConfig<Q> = gen::closed_config(&mut rng, 3);
            let slot = rng.gen_range(1..=o1.closed_slots().len());
            let block: Vec<PCPath<Q>> = (0..c.arity())
                .map(|_| gen::pc_path(&mut rng, 3, base, base, 3))
                .collect();
            let composed = compose_open_closed(&o1, slot, &c).unwrap();
            let mut all = loops1[..slot - 1].to_vec();
            all.extend(block.clone());
            all.extend(loops1[slot..].to_vec());
            let lhs = rho_action(&composed, &all, &rel, base).unwrap();
            let mut replaced = loops1.clone();
            replaced[slot - 1] = closed_action(&c, &block, base).unwrap();
            ok &= lhs == rho_action(&o1, &replaced, &rel, base).unwrap();
        }
        if !ok {
            failures.push(Failure {
                case,
                literal: config_literal(&Config::Open(o1)),
                message: "loop-algebra axiom failed".into(),
            });
        }
    }
}

/// Re-evaluate one failure literal of the length suite; used to confirm
/// that reported counterexamples reproduce.
pub fn replay_length_failure(literal: &str, mutation: Mutation) -> Option<bool> {
    let s_at = literal.find(" s=")?;
    let r_at = literal.find(" r=")?;
    let t_text = literal.strip_prefix("t=")?.get(..s_at - 2)?;
    let s_text = &literal[s_at + 3..r_at];
    let r_text = &literal[r_at + 3..];
    let t = operads::literal::parse_closed_tree::<Q>(t_text.trim()).ok()?;
    let s = operads::literal::parse_closed_tree::<Q>(s_text.trim()).ok()?;
    let wrapped = format!("([{}](* *) *)", r_text.trim());
    let r = operads::literal::parse_closed_tree::<Q>(&wrapped)
        .ok()
        .and_then(|tree| tree.split_at_edge(0).map(|(_, _, label, _)| label))?;
    let glued = t.graft(1, r.clone(), &s).ok()?;
    let holds = mutated_length(&glued, mutation)
        == mutated_length(&t, mutation) + mutated_length(&s, mutation) + int::<Q>(2) * r
            - int::<Q>(2);
    Some(!holds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_clean() {
        for suite in SUITES {
            let report = run(suite, 42, 40, Mutation::None).unwrap();
            assert!(
                report.ok(),
                "suite {suite} failed: {:?}",
                report.failures.first()
            );
        }
    }

    #[test]
    fn planted_length_bug_is_caught_and_minimized() {
        let report = run("length", 42, 60, Mutation::LengthSign).unwrap();
        assert!(!report.ok());
        let f = &report.failures[0];
        // the counterexample shrinks to corollas
        assert!(f.literal.contains("t=(* *)") || f.literal.contains("t=(* * "));
        assert_eq!(replay_length_failure(&f.literal, Mutation::LengthSign), Some(true));
        assert_eq!(replay_length_failure(&f.literal, Mutation::None), Some(false));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run("nope", 1, 1, Mutation::None).is_none());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run("operad-axioms", 7, 50, Mutation::None).unwrap();
        let b = run("operad-axioms", 7, 50, Mutation::None).unwrap();
        assert_eq!(a.failures.len(), b.failures.len());
        assert_eq!(a.cases, b.cases);
    }
}
