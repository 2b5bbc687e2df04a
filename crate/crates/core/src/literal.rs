//! Literal syntax for every value the kernel works with.
//!
//! Trees:
//!
//! ```text
//! tree     := leaf | "(" child* ")"
//! child    := tree | "[" label "]" tree
//! leaf     := "*" (closed) | "o" (open)
//! rational := ["-"] int ["/" int]
//! ```
//!
//! `([1/2](* *) * *)` is the 3-corolla with a 2-corolla grafted on the first
//! leaf at length `1/2`. A vertex child without brackets carries length one;
//! canonical printing always writes the label. `()` is the 0-ary point. An
//! `o` leaf is allowed once, as the last leaf, and makes the tree open.
//!
//! Path skeletons use affine labels `a`, `b*t` or `a±b*t` in place of
//! rationals. Interval configurations are written
//! `cl{[0,1/3],[1/3,2/3]}` and `op{[0,1/2];[1/2,1]}` (the part after `;` is
//! the distinguished interval, which must end at 1 and may be empty).
//! Piecewise-constant paths are written `pc{v 1/2 w ; end}`: values
//! separated by their breakpoints, then the value at 1. Bar elements are
//! written `[<tree>; q, x1, ..., xn, p]` with `*` for the point, element or
//! module names for labels, `[p,1/2]` for cone points and `apex` for the
//! tip.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::action::FiniteAction;
use crate::bar::{BarElement, EndLabel};
use crate::moore::Affine;
use crate::scalar::{in_unit_interval, Scalar};
use crate::swiss_cheese::{ClosedConfig, Config, OpenConfig, PCPath};
use crate::tree::{Branch, Color, Tree};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .text
            .as_bytes()
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == b => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(format!("expected `{}`, found `{}`", b as char, c as char)),
            None => self.err(format!("expected `{}`, found end of input", b as char)),
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.text.as_bytes().get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self
            .text
            .as_bytes()
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && &self.text[start..self.pos] == "-") {
            return self.err("expected an integer");
        }
        self.text[start..self.pos]
            .parse::<i64>()
            .map_err(|e| ParseError {
                offset: start,
                message: format!("integer out of range: {e}"),
            })
    }

    fn rational<R: Scalar>(&mut self) -> Result<R, ParseError> {
        let p = self.integer()?;
        let num = R::from_i64(p).expect("i64 fits");
        if self.eat(b'/') {
            let q = self.integer()?;
            if q == 0 {
                return self.err("zero denominator");
            }
            Ok(num / R::from_i64(q).expect("i64 fits"))
        } else {
            Ok(num)
        }
    }

    /// `a`, `b*t`, `a+b*t` or `a-b*t`.
    fn affine<R: Scalar>(&mut self) -> Result<Affine<R>, ParseError> {
        let first = self.rational::<R>()?;
        if self.eat(b'*') {
            self.expect(b't')?;
            return Ok(Affine::new(R::zero(), first));
        }
        let sign = match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                R::one()
            }
            Some(b'-') => {
                self.pos += 1;
                -R::one()
            }
            _ => return Ok(Affine::constant(first)),
        };
        let slope = self.rational::<R>()?;
        self.expect(b'*')?;
        self.expect(b't')?;
        Ok(Affine::new(first, sign * slope))
    }

    fn name(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .as_bytes()
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a name");
        }
        Ok(&self.text[start..self.pos])
    }
}

/// Outcome of parsing one tree: the structure and whether an open leaf was
/// seen (it must be the last leaf). An unlabeled vertex child carries the
/// full-length label produced by `default`.
fn tree_with<'a, L, F>(
    cur: &mut Cursor<'a>,
    label: &mut F,
    default: &dyn Fn() -> L,
) -> Result<(Tree<L>, Color), ParseError>
where
    F: FnMut(&mut Cursor<'a>) -> Result<L, ParseError>,
{
    fn children<'a, L, F>(
        cur: &mut Cursor<'a>,
        label: &mut F,
        default: &dyn Fn() -> L,
        open_seen: &mut bool,
    ) -> Result<Vec<Branch<L>>, ParseError>
    where
        F: FnMut(&mut Cursor<'a>) -> Result<L, ParseError>,
    {
        cur.expect(b'(')?;
        let mut out = Vec::new();
        loop {
            match cur.peek() {
                Some(b')') => {
                    cur.pos += 1;
                    return Ok(out);
                }
                None => return cur.err("unclosed `(`"),
                Some(_) => {
                    if *open_seen {
                        return cur.err("the open leaf must be the last leaf");
                    }
                    out.push(child(cur, label, default, open_seen)?);
                }
            }
        }
    }
    fn child<'a, L, F>(
        cur: &mut Cursor<'a>,
        label: &mut F,
        default: &dyn Fn() -> L,
        open_seen: &mut bool,
    ) -> Result<Branch<L>, ParseError>
    where
        F: FnMut(&mut Cursor<'a>) -> Result<L, ParseError>,
    {
        match cur.peek() {
            Some(b'*') => {
                cur.pos += 1;
                Ok(Branch::Leaf)
            }
            Some(b'o') => {
                cur.pos += 1;
                *open_seen = true;
                Ok(Branch::Leaf)
            }
            Some(b'[') => {
                cur.pos += 1;
                let l = label(cur)?;
                cur.expect(b']')?;
                let ch = children(cur, label, default, open_seen)?;
                Ok(Branch::Edge(l, ch))
            }
            Some(b'(') => {
                let ch = children(cur, label, default, open_seen)?;
                Ok(Branch::Edge(default(), ch))
            }
            _ => cur.err("expected a leaf or a subtree"),
        }
    }

    let mut open_seen = false;
    let tree = match cur.peek() {
        Some(b'*') => {
            cur.pos += 1;
            Tree::Unit
        }
        Some(b'o') => {
            cur.pos += 1;
            open_seen = true;
            Tree::Unit
        }
        Some(b'(') => Tree::Rooted(children(cur, label, default, &mut open_seen)?),
        _ => return cur.err("expected a tree"),
    };
    Ok((
        tree,
        if open_seen { Color::Open } else { Color::Closed },
    ))
}

/// Parse one rational `p/q` or integer, consuming the whole input.
pub fn parse_rational<R: Scalar>(text: &str) -> Result<R, ParseError> {
    let mut cur = Cursor::new(text);
    let r = cur.rational::<R>()?;
    cur.finish()?;
    Ok(r)
}

/// Parse a colored tree with rational labels in `[0,1]`.
pub fn parse_tree<R: Scalar>(text: &str) -> Result<(Tree<R>, Color), ParseError> {
    let mut cur = Cursor::new(text);
    let mut label = |c: &mut Cursor| {
        let at = c.pos;
        let r = c.rational::<R>()?;
        if !in_unit_interval(&r) {
            return Err(ParseError {
                offset: at,
                message: "edge length must lie in [0,1]".into(),
            });
        }
        Ok(r)
    };
    let out = tree_with(&mut cur, &mut label, &R::one)?;
    cur.finish()?;
    Ok(out)
}

/// Parse a closed tree, rejecting open leaves.
pub fn parse_closed_tree<R: Scalar>(text: &str) -> Result<Tree<R>, ParseError> {
    let (t, color) = parse_tree::<R>(text)?;
    if color == Color::Open {
        return Err(ParseError {
            offset: 0,
            message: "expected a closed tree (no `o` leaf)".into(),
        });
    }
    Ok(t)
}

/// Parse a closed path skeleton with affine labels.
pub fn parse_affine_tree<R: Scalar>(text: &str) -> Result<Tree<Affine<R>>, ParseError> {
    let mut cur = Cursor::new(text);
    let mut label = |c: &mut Cursor| c.affine::<R>();
    let (t, color) = tree_with(&mut cur, &mut label, &|| Affine::constant(R::one()))?;
    cur.finish()?;
    if color == Color::Open {
        return Err(ParseError {
            offset: 0,
            message: "path skeletons are closed trees".into(),
        });
    }
    Ok(t)
}

fn write_tree<L>(out: &mut String, t: &Tree<L>, color: Color, label: &impl Fn(&L) -> String) {
    fn branch<L>(
        out: &mut String,
        b: &Branch<L>,
        label: &impl Fn(&L) -> String,
        leaves_left: &mut usize,
        open_last: bool,
    ) {
        match b {
            Branch::Leaf => {
                *leaves_left -= 1;
                out.push(if open_last && *leaves_left == 0 { 'o' } else { '*' });
            }
            Branch::Edge(l, ch) => {
                let _ = write!(out, "[{}]", label(l));
                vertex(out, ch, label, leaves_left, open_last);
            }
        }
    }
    fn vertex<L>(
        out: &mut String,
        ch: &[Branch<L>],
        label: &impl Fn(&L) -> String,
        leaves_left: &mut usize,
        open_last: bool,
    ) {
        out.push('(');
        for (k, b) in ch.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            branch(out, b, label, leaves_left, open_last);
        }
        out.push(')');
    }
    let mut leaves_left = t.leaf_count();
    let open_last = color == Color::Open;
    match t {
        Tree::Unit => out.push(if open_last { 'o' } else { '*' }),
        Tree::Rooted(ch) => vertex(out, ch, label, &mut leaves_left, open_last),
    }
}

/// Canonical literal of a colored tree.
pub fn tree_literal<R: Scalar>(t: &Tree<R>, color: Color) -> String {
    let mut out = String::new();
    write_tree(&mut out, t, color, &|l| l.to_string());
    out
}

/// Canonical literal of a closed tree.
pub fn closed_tree_literal<R: Scalar>(t: &Tree<R>) -> String {
    tree_literal(t, Color::Closed)
}

/// Canonical literal of a path skeleton.
pub fn affine_tree_literal<R: Scalar>(t: &Tree<Affine<R>>) -> String {
    let mut out = String::new();
    write_tree(&mut out, t, Color::Closed, &|l| l.to_string());
    out
}

/// Canonical literal of a tree shape (all labels printed as `1`).
pub fn shape_literal(t: &Tree<()>) -> String {
    let mut out = String::new();
    write_tree(&mut out, t, Color::Closed, &|_| "1".to_string());
    out
}

fn interval<R: Scalar>(cur: &mut Cursor) -> Result<(R, R), ParseError> {
    cur.expect(b'[')?;
    let a = cur.rational::<R>()?;
    cur.expect(b',')?;
    let b = cur.rational::<R>()?;
    cur.expect(b']')?;
    Ok((a, b))
}

/// Parse `cl{...}` or `op{...}` interval configurations.
pub fn parse_config<R: Scalar>(text: &str) -> Result<Config<R>, ParseError> {
    let mut cur = Cursor::new(text);
    let kind = cur.name()?;
    let open = match kind {
        "cl" => false,
        "op" => true,
        other => {
            return Err(ParseError {
                offset: 0,
                message: format!("expected `cl` or `op`, found `{other}`"),
            })
        }
    };
    cur.expect(b'{')?;
    let mut intervals: Vec<(R, R)> = Vec::new();
    if cur.peek() == Some(b'[') {
        intervals.push(interval(&mut cur)?);
        while cur.eat(b',') {
            intervals.push(interval(&mut cur)?);
        }
    }
    let config = if open {
        let distinguished = if cur.eat(b';') {
            if cur.peek() == Some(b'[') {
                let at = cur.pos;
                let (a, b) = interval::<R>(&mut cur)?;
                if !b.is_one() {
                    return Err(ParseError {
                        offset: at,
                        message: "the distinguished interval must end at 1".into(),
                    });
                }
                Some(a)
            } else {
                None
            }
        } else {
            None
        };
        Config::Open(OpenConfig::new(intervals, distinguished).map_err(|e| ParseError {
            offset: cur.pos,
            message: e.to_string(),
        })?)
    } else {
        Config::Closed(ClosedConfig::new(intervals).map_err(|e| ParseError {
            offset: cur.pos,
            message: e.to_string(),
        })?)
    };
    cur.expect(b'}')?;
    cur.finish()?;
    Ok(config)
}

/// Canonical literal of a configuration.
pub fn config_literal<R: Scalar>(c: &Config<R>) -> String {
    let mut out = String::new();
    match c {
        Config::Closed(c) => {
            out.push_str("cl{");
            for (k, (a, b)) in c.intervals().iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let _ = write!(out, "[{a},{b}]");
            }
            out.push('}');
        }
        Config::Open(o) => {
            out.push_str("op{");
            for (k, (a, b)) in o.closed_slots().iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let _ = write!(out, "[{a},{b}]");
            }
            out.push(';');
            if let Some(a) = o.distinguished() {
                let _ = write!(out, "[{a},1]");
            }
            out.push('}');
        }
    }
    out
}

/// Parse `pc{v 1/2 w ; end}` against a name resolver.
pub fn parse_pc_path<R: Scalar>(
    text: &str,
    resolve: &dyn Fn(&str) -> Option<usize>,
) -> Result<PCPath<R>, ParseError> {
    let mut cur = Cursor::new(text);
    let kind = cur.name()?;
    if kind != "pc" {
        return Err(ParseError {
            offset: 0,
            message: format!("expected `pc`, found `{kind}`"),
        });
    }
    cur.expect(b'{')?;
    let value = |c: &mut Cursor| -> Result<usize, ParseError> {
        let at = c.pos;
        if c.eat(b'*') {
            return resolve("*").ok_or(ParseError {
                offset: at,
                message: "no basepoint name `*`".into(),
            });
        }
        let n = c.name()?;
        resolve(n).ok_or(ParseError {
            offset: at,
            message: format!("unknown value `{n}`"),
        })
    };
    let mut breakpoints = vec![R::zero()];
    let mut values = vec![value(&mut cur)?];
    while cur.peek().is_some_and(|b| b.is_ascii_digit()) {
        breakpoints.push(cur.rational::<R>()?);
        values.push(value(&mut cur)?);
    }
    cur.expect(b';')?;
    let end = value(&mut cur)?;
    cur.expect(b'}')?;
    cur.finish()?;
    breakpoints.push(R::one());
    PCPath::new(breakpoints, values, end).map_err(|e| ParseError {
        offset: 0,
        message: e.to_string(),
    })
}

/// Canonical literal of a piecewise-constant path.
pub fn pc_path_literal<R: Scalar>(p: &PCPath<R>, name: &dyn Fn(usize) -> String) -> String {
    let mut out = String::from("pc{");
    for (k, v) in p.values().iter().enumerate() {
        if k > 0 {
            let _ = write!(out, " {} ", p.breakpoints()[k]);
        }
        out.push_str(&name(*v));
    }
    let _ = write!(out, " ; {}}}", name(p.end_value()));
    out
}

fn end_label_literal<R: Scalar>(action: &FiniteAction, l: &EndLabel<R>, first: bool) -> String {
    match l {
        EndLabel::Star => "*".into(),
        EndLabel::Monoid(x) => action.name(*x).to_string(),
        EndLabel::Set(i) => {
            let set = if first {
                action.right_set()
            } else {
                action.left_set()
            };
            set.map(|s| s.names[*i].clone())
                .unwrap_or_else(|| format!("#{i}"))
        }
        EndLabel::Cone { base, height } => {
            let name = action
                .left_set()
                .map(|s| s.names[*base].clone())
                .unwrap_or_else(|| format!("#{base}"));
            format!("[{name},{height}]")
        }
        EndLabel::Apex => "apex".into(),
    }
}

/// Canonical literal `[<tree>; q, x1, ..., xn, p]` of a bar element.
pub fn bar_literal<R: Scalar>(el: &BarElement<R>) -> String {
    let mut out = String::from("[");
    out.push_str(&closed_tree_literal(&el.tree));
    out.push_str("; ");
    out.push_str(&end_label_literal(&el.action, &el.q, true));
    for &x in &el.xs {
        let _ = write!(out, ", {}", el.action.name(x));
    }
    let _ = write!(out, ", {}", end_label_literal(&el.action, &el.p, false));
    out.push(']');
    out
}

fn end_label<R: Scalar>(
    cur: &mut Cursor,
    action: &FiniteAction,
    first: bool,
) -> Result<EndLabel<R>, ParseError> {
    if cur.eat(b'*') {
        return Ok(EndLabel::Star);
    }
    if cur.peek() == Some(b'[') {
        if first {
            return cur.err("cone points may only label the last slot");
        }
        cur.pos += 1;
        let at = cur.pos;
        let n = cur.name()?;
        let base = action
            .left_set()
            .and_then(|s| s.names.iter().position(|m| m == n))
            .ok_or(ParseError {
                offset: at,
                message: format!("unknown module element `{n}`"),
            })?;
        cur.expect(b',')?;
        let h = cur.rational::<R>()?;
        if !in_unit_interval(&h) {
            return cur.err("cone height must lie in [0,1]");
        }
        cur.expect(b']')?;
        return Ok(EndLabel::Cone { base, height: h });
    }
    let at = cur.pos;
    let n = cur.name()?;
    if n == "apex" {
        if first {
            return cur.err("cone points may only label the last slot");
        }
        return Ok(EndLabel::Apex);
    }
    // end slots prefer their own module names; the first slot falls back to
    // monoid labels (the canonical right action of the monoid on itself)
    if first {
        if let Some(x) = action.index(n) {
            return Ok(EndLabel::Monoid(x));
        }
        if let Some(i) = action
            .right_set()
            .and_then(|s| s.names.iter().position(|m| m == n))
        {
            return Ok(EndLabel::Set(i));
        }
    } else {
        if let Some(i) = action
            .left_set()
            .and_then(|s| s.names.iter().position(|m| m == n))
        {
            return Ok(EndLabel::Set(i));
        }
        if let Some(x) = action.index(n) {
            return Ok(EndLabel::Monoid(x));
        }
    }
    Err(ParseError {
        offset: at,
        message: format!("unknown label `{n}`"),
    })
}

/// Parse a bar element `[<tree>; q, x1, ..., xn, p]`.
pub fn parse_bar_element<R: Scalar>(
    text: &str,
    action: &Arc<FiniteAction>,
) -> Result<BarElement<R>, ParseError> {
    let mut cur = Cursor::new(text);
    cur.expect(b'[')?;
    let mut label = |c: &mut Cursor| {
        let at = c.pos;
        let r = c.rational::<R>()?;
        if !in_unit_interval(&r) {
            return Err(ParseError {
                offset: at,
                message: "edge length must lie in [0,1]".into(),
            });
        }
        Ok(r)
    };
    let (tree, color) = tree_with(&mut cur, &mut label, &R::one)?;
    if color == Color::Open {
        return Err(ParseError {
            offset: 0,
            message: "bar elements are built on closed trees".into(),
        });
    }
    cur.expect(b';')?;
    let q = end_label::<R>(&mut cur, action, true)?;
    let mut labels: Vec<EndLabel<R>> = Vec::new();
    while cur.eat(b',') {
        labels.push(end_label::<R>(&mut cur, action, false)?);
    }
    let Some(p) = labels.pop() else {
        return cur.err("expected at least the last-slot label");
    };
    let mut xs = Vec::with_capacity(labels.len());
    for l in labels {
        match l {
            EndLabel::Monoid(x) => xs.push(x),
            EndLabel::Set(i) => {
                // middle labels are monoid elements; retry the name there
                let name = action
                    .left_set()
                    .map(|s| s.names[i].clone())
                    .unwrap_or_default();
                match action.index(&name) {
                    Some(x) => xs.push(x),
                    None => {
                        return cur.err(format!("middle label `{name}` is not a monoid element"))
                    }
                }
            }
            _ => return cur.err("middle labels must be monoid elements"),
        }
    }
    cur.expect(b']')?;
    cur.finish()?;
    BarElement::new(action.clone(), tree, q, xs, p).map_err(|e| ParseError {
        offset: 0,
        message: e.to_string(),
    })
}
