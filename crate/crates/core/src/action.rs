//! Finite monoids with left/right actions on finite sets.
//!
//! These are the discrete coefficients of the bar construction: a monoid `X`
//! given by a multiplication table, an optional left `X`-set `P` (with a
//! basepoint) and an optional right `X`-set `Q`. All axioms are verified
//! exhaustively at construction time; [`FiniteAction::new_unchecked`] skips
//! verification so that deliberately broken tables can be fed to the
//! validation report.

use thiserror::Error;

/// A finite set with an action table.
///
/// For a left action the table is indexed `table[x][p] = x·p`; for a right
/// action it is `table[q][x] = q·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetAction {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAction {
    elements: Vec<String>,
    unit: usize,
    mul: Vec<Vec<usize>>,
    left: Option<SetAction>,
    right: Option<SetAction>,
    basepoint: Option<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("{0}")]
    Shape(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("associativity fails: ({x}·{y})·{z} ≠ {x}·({y}·{z})")]
    Associativity { x: String, y: String, z: String },
    #[error("`{unit}` is not a two-sided unit at {x}")]
    Unit { unit: String, x: String },
    #[error("left action fails unit law at {p}")]
    LeftUnit { p: String },
    #[error("left action fails ({x}·{y})·{p} = {x}·({y}·{p})")]
    LeftCompat { x: String, y: String, p: String },
    #[error("right action fails unit law at {q}")]
    RightUnit { q: String },
    #[error("right action fails {q}·({x}·{y}) = ({q}·{x})·{y}")]
    RightCompat { q: String, x: String, y: String },
}

impl FiniteAction {
    pub fn new(
        elements: Vec<String>,
        unit: &str,
        mul: Vec<Vec<usize>>,
        left: Option<SetAction>,
        right: Option<SetAction>,
        basepoint: Option<&str>,
    ) -> Result<FiniteAction, ActionError> {
        let unit = elements
            .iter()
            .position(|e| e == unit)
            .ok_or_else(|| ActionError::UnknownName(unit.to_string()))?;
        let basepoint = match (basepoint, &left) {
            (Some(b), Some(l)) => Some(
                l.names
                    .iter()
                    .position(|n| n == b)
                    .ok_or_else(|| ActionError::UnknownName(b.to_string()))?,
            ),
            (Some(b), None) => return Err(ActionError::UnknownName(b.to_string())),
            (None, _) => None,
        };
        let act = FiniteAction {
            elements,
            unit,
            mul,
            left,
            right,
            basepoint,
        };
        act.verify()?;
        Ok(act)
    }

    /// Build without verifying the axioms. The validation report is the
    /// consumer of deliberately invalid tables.
    pub fn new_unchecked(
        elements: Vec<String>,
        unit: usize,
        mul: Vec<Vec<usize>>,
        left: Option<SetAction>,
        right: Option<SetAction>,
        basepoint: Option<usize>,
    ) -> FiniteAction {
        FiniteAction {
            elements,
            unit,
            mul,
            left,
            right,
            basepoint,
        }
    }

    /// Exhaustive axiom check: monoid laws plus both action laws.
    pub fn verify(&self) -> Result<(), ActionError> {
        let n = self.elements.len();
        if n == 0 {
            return Err(ActionError::Shape("empty element list".into()));
        }
        if self.mul.len() != n || self.mul.iter().any(|row| row.len() != n) {
            return Err(ActionError::Shape(format!("mul table must be {n}×{n}")));
        }
        if self
            .mul
            .iter()
            .any(|row| row.iter().any(|&v| v >= n))
        {
            return Err(ActionError::Shape("mul entry out of range".into()));
        }
        for x in 0..n {
            if self.mul[self.unit][x] != x || self.mul[x][self.unit] != x {
                return Err(ActionError::Unit {
                    unit: self.elements[self.unit].clone(),
                    x: self.elements[x].clone(),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]] {
                        return Err(ActionError::Associativity {
                            x: self.elements[x].clone(),
                            y: self.elements[y].clone(),
                            z: self.elements[z].clone(),
                        });
                    }
                }
            }
        }
        if let Some(l) = &self.left {
            let m = l.names.len();
            if l.table.len() != n || l.table.iter().any(|row| row.len() != m) {
                return Err(ActionError::Shape(format!(
                    "left action table must be {n}×{m}"
                )));
            }
            if l.table.iter().any(|row| row.iter().any(|&v| v >= m)) {
                return Err(ActionError::Shape("left action entry out of range".into()));
            }
            for p in 0..m {
                if l.table[self.unit][p] != p {
                    return Err(ActionError::LeftUnit {
                        p: l.names[p].clone(),
                    });
                }
            }
            for x in 0..n {
                for y in 0..n {
                    for p in 0..m {
                        if l.table[self.mul[x][y]][p] != l.table[x][l.table[y][p]] {
                            return Err(ActionError::LeftCompat {
                                x: self.elements[x].clone(),
                                y: self.elements[y].clone(),
                                p: l.names[p].clone(),
                            });
                        }
                    }
                }
            }
        }
        if let Some(r) = &self.right {
            let m = r.names.len();
            if r.table.len() != m || r.table.iter().any(|row| row.len() != n) {
                return Err(ActionError::Shape(format!(
                    "right action table must be {m}×{n}"
                )));
            }
            if r.table.iter().any(|row| row.iter().any(|&v| v >= m)) {
                return Err(ActionError::Shape("right action entry out of range".into()));
            }
            for q in 0..m {
                if r.table[q][self.unit] != q {
                    return Err(ActionError::RightUnit {
                        q: r.names[q].clone(),
                    });
                }
            }
            for q in 0..m {
                for x in 0..n {
                    for y in 0..n {
                        if r.table[r.table[q][x]][y] != r.table[q][self.mul[x][y]] {
                            return Err(ActionError::RightCompat {
                                q: r.names[q].clone(),
                                x: self.elements[x].clone(),
                                y: self.elements[y].clone(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x][y]
    }

    /// Left-folded product of a word, empty word giving the unit.
    pub fn product<I: IntoIterator<Item = usize>>(&self, word: I) -> usize {
        word.into_iter().fold(self.unit, |acc, x| self.mul(acc, x))
    }

    pub fn name(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn left_set(&self) -> Option<&SetAction> {
        self.left.as_ref()
    }

    pub fn right_set(&self) -> Option<&SetAction> {
        self.right.as_ref()
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    /// `x·p` in the left set.
    pub fn left_act(&self, x: usize, p: usize) -> usize {
        self.left.as_ref().expect("left set present").table[x][p]
    }

    /// `q·x` in the right set.
    pub fn right_act(&self, q: usize, x: usize) -> usize {
        self.right.as_ref().expect("right set present").table[q][x]
    }

    /// The cyclic group `Z/n` acting on itself on the left and right, based
    /// at the unit.
    pub fn cyclic(n: usize) -> FiniteAction {
        assert!(n >= 1);
        let elements: Vec<String> = (0..n)
            .map(|k| if k == 0 { "e".into() } else { format!("g{k}") })
            .collect();
        let mul: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let set = SetAction {
            names: elements.clone(),
            table: mul.clone(),
        };
        FiniteAction::new_unchecked(elements, 0, mul, Some(set.clone()), Some(set), Some(0))
    }

    /// Z/2 with shorter names, based at `p0 = e`.
    pub fn z2() -> FiniteAction {
        let elements = vec!["e".to_string(), "g".to_string()];
        let mul = vec![vec![0, 1], vec![1, 0]];
        let set = SetAction {
            names: elements.clone(),
            table: mul.clone(),
        };
        FiniteAction::new_unchecked(elements, 0, mul, Some(set.clone()), Some(set), Some(0))
    }

    /// The right-zero band `{a, b | x·y = y}` with a unit adjoined, acting
    /// on itself.
    pub fn right_zero_monoid() -> FiniteAction {
        let elements = vec!["e".to_string(), "a".to_string(), "b".to_string()];
        // e two-sided unit; x·y = y otherwise
        let mul = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]];
        let left = SetAction {
            names: elements.clone(),
            table: mul.clone(),
        };
        let right = SetAction {
            names: elements.clone(),
            table: mul.clone(),
        };
        FiniteAction::new_unchecked(elements, 0, mul, Some(left), Some(right), Some(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_actions_verify() {
        FiniteAction::z2().verify().unwrap();
        FiniteAction::cyclic(3).verify().unwrap();
        FiniteAction::right_zero_monoid().verify().unwrap();
    }

    #[test]
    fn corrupted_table_is_rejected() {
        // unit laws hold but (x·x)·y = y while x·(x·y) = e
        let mul = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
        let err = FiniteAction::new(
            vec!["e".into(), "x".into(), "y".into()],
            "e",
            mul,
            None,
            None,
            None,
        )
        .unwrap_err();
        assert!(matches!(err, ActionError::Associativity { .. }));
    }

    #[test]
    fn right_zero_products() {
        let m = FiniteAction::right_zero_monoid();
        let a = m.index("a").unwrap();
        let b = m.index("b").unwrap();
        assert_eq!(m.product([a, b]), b);
        assert_eq!(m.product([b, a]), a);
        assert_eq!(m.product([]), m.unit());
    }
}
