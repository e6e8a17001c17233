//! Unital commutative quantales: finite tables and the analytic cost and Łukasiewicz kinds.

mod finite;
mod validate;
mod value;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

pub use finite::{FiniteTable, TableOrigin};
pub use validate::{validate_quantale, QuantaleReport};
pub use value::{format_rational, parse_rational, Cost, Rational, Value};

use crate::error::{structural, type_err, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantaleKind {
    FiniteTable,
    Bool2,
    CostPlus,
    CostMax,
    LukasiewiczGrid(u32),
}

// Always behind an `Arc`, so the variant size difference costs nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, PartialEq, Eq)]
enum Repr {
    Finite(FiniteTable),
    CostPlus,
    CostMax,
    Lukasiewicz(u32),
}

/// A quantale descriptor. Cheap to clone; equality compares the full description.
#[derive(Debug, Clone)]
pub struct Quantale {
    repr: Arc<Repr>,
    integral: bool,
    lean: bool,
    totally_ordered: bool,
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.repr, &other.repr) || self.repr == other.repr
    }
}
impl Eq for Quantale {}

impl Quantale {
    fn from_repr(repr: Repr) -> Quantale {
        let mut q = Quantale { repr: Arc::new(repr), integral: true, lean: true, totally_ordered: true };
        if let Repr::Finite(t) = &*q.repr {
            q.integral = t.unit == t.top;
            q.lean = validate::lean_witness(t).is_none();
            q.totally_ordered = validate::incomparable_pair(t).is_none();
        }
        q
    }

    pub fn bool2() -> Quantale {
        Self::from_repr(Repr::Finite(FiniteTable::chain(2).expect("2-chain")))
    }

    /// The chain `0 < 1 < … < n-1` with `⊗ = ∧`; `chain(2)` is `bool2`.
    pub fn chain(n: usize) -> Result<Quantale> {
        Ok(Self::from_repr(Repr::Finite(FiniteTable::chain(n)?)))
    }

    pub fn cost_plus() -> Quantale {
        Self::from_repr(Repr::CostPlus)
    }

    pub fn cost_max() -> Quantale {
        Self::from_repr(Repr::CostMax)
    }

    pub fn lukasiewicz_grid(n: u32) -> Result<Quantale> {
        if n == 0 {
            return Err(structural!("lukasiewicz grid size must be positive"));
        }
        Ok(Self::from_repr(Repr::Lukasiewicz(n)))
    }

    /// A finite quantale from explicit tables. `order[i][j]` means `i ≤ j`.
    pub fn finite_table(
        labels: Vec<String>,
        order: &[Vec<bool>],
        tensor: &[Vec<usize>],
        unit: usize,
    ) -> Result<Quantale> {
        Ok(Self::from_repr(Repr::Finite(FiniteTable::new(TableOrigin::Custom, labels, order, tensor, unit)?)))
    }

    pub fn kind(&self) -> QuantaleKind {
        match &*self.repr {
            Repr::Finite(t) if t.origin == TableOrigin::Bool2 => QuantaleKind::Bool2,
            Repr::Finite(_) => QuantaleKind::FiniteTable,
            Repr::CostPlus => QuantaleKind::CostPlus,
            Repr::CostMax => QuantaleKind::CostMax,
            Repr::Lukasiewicz(n) => QuantaleKind::LukasiewiczGrid(*n),
        }
    }

    pub fn table(&self) -> Option<&FiniteTable> {
        match &*self.repr {
            Repr::Finite(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_cost(&self) -> bool {
        matches!(*self.repr, Repr::CostPlus | Repr::CostMax)
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn is_lean(&self) -> bool {
        self.lean
    }

    pub fn is_totally_ordered(&self) -> bool {
        self.totally_ordered
    }

    pub fn bottom(&self) -> Value {
        match &*self.repr {
            Repr::Finite(t) => Value::Elem(t.bottom),
            Repr::CostPlus | Repr::CostMax => Value::Cost(Cost::Infinite),
            Repr::Lukasiewicz(_) => Value::unit_zero(),
        }
    }

    pub fn top(&self) -> Value {
        match &*self.repr {
            Repr::Finite(t) => Value::Elem(t.top),
            Repr::CostPlus | Repr::CostMax => Value::Cost(Cost::ZERO),
            Repr::Lukasiewicz(_) => Value::unit_one(),
        }
    }

    /// The tensor unit `k`.
    pub fn unit(&self) -> Value {
        match &*self.repr {
            Repr::Finite(t) => Value::Elem(t.unit),
            _ => self.top(),
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (&*self.repr, v) {
            (Repr::Finite(t), Value::Elem(i)) => *i < t.n,
            (Repr::CostPlus | Repr::CostMax, Value::Cost(Cost::Infinite)) => true,
            (Repr::CostPlus | Repr::CostMax, Value::Cost(Cost::Finite(r))) => *r >= Rational::zero(),
            (Repr::Lukasiewicz(n), Value::Unit(r)) => {
                *r >= Rational::zero() && *r <= Rational::one() && (*r * Rational::from_integer(*n as i64)).is_integer()
            }
            _ => false,
        }
    }

    pub fn check(&self, v: &Value) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(type_err!("value {v:?} does not belong to quantale {}", self.describe()))
        }
    }

    /// All elements, for the finite kinds (tables and the Łukasiewicz grid), in ascending order
    /// for chains and grids and in table order otherwise.
    pub fn elements(&self) -> Option<Vec<Value>> {
        match &*self.repr {
            Repr::Finite(t) => Some((0..t.n).map(Value::Elem).collect()),
            Repr::Lukasiewicz(n) => Some((0..=*n as i64).map(|i| Value::unit_ratio(i, *n as i64)).collect()),
            _ => None,
        }
    }

    // Unchecked operations: callers guarantee membership.

    pub(crate) fn mul(&self, u: Value, v: Value) -> Value {
        match (&*self.repr, u, v) {
            (Repr::Finite(t), Value::Elem(a), Value::Elem(b)) => Value::Elem(t.tensor[a * t.n + b]),
            (Repr::CostPlus, Value::Cost(a), Value::Cost(b)) => Value::Cost(a.add(b)),
            (Repr::CostMax, Value::Cost(a), Value::Cost(b)) => Value::Cost(a.num_max(b)),
            (Repr::Lukasiewicz(_), Value::Unit(a), Value::Unit(b)) => {
                Value::Unit((a + b - Rational::one()).max(Rational::zero()))
            }
            _ => panic!("foreign value in tensor"),
        }
    }

    pub(crate) fn le(&self, u: Value, v: Value) -> bool {
        match (&*self.repr, u, v) {
            (Repr::Finite(t), Value::Elem(a), Value::Elem(b)) => t.le(a, b),
            (Repr::CostPlus | Repr::CostMax, Value::Cost(a), Value::Cost(b)) => a.num_ge(b),
            (Repr::Lukasiewicz(_), Value::Unit(a), Value::Unit(b)) => a <= b,
            _ => panic!("foreign value in comparison"),
        }
    }

    pub(crate) fn jn(&self, u: Value, v: Value) -> Value {
        match (&*self.repr, u, v) {
            (Repr::Finite(t), Value::Elem(a), Value::Elem(b)) => Value::Elem(t.join[a * t.n + b]),
            (Repr::CostPlus | Repr::CostMax, Value::Cost(a), Value::Cost(b)) => Value::Cost(a.num_min(b)),
            (Repr::Lukasiewicz(_), Value::Unit(a), Value::Unit(b)) => Value::Unit(a.max(b)),
            _ => panic!("foreign value in join"),
        }
    }

    pub(crate) fn mt(&self, u: Value, v: Value) -> Value {
        match (&*self.repr, u, v) {
            (Repr::Finite(t), Value::Elem(a), Value::Elem(b)) => Value::Elem(t.meet[a * t.n + b]),
            (Repr::CostPlus | Repr::CostMax, Value::Cost(a), Value::Cost(b)) => Value::Cost(a.num_max(b)),
            (Repr::Lukasiewicz(_), Value::Unit(a), Value::Unit(b)) => Value::Unit(a.min(b)),
            _ => panic!("foreign value in meet"),
        }
    }

    pub(crate) fn hm(&self, u: Value, v: Value) -> Value {
        match (&*self.repr, u, v) {
            (Repr::Finite(t), Value::Elem(a), Value::Elem(b)) => Value::Elem(t.hom[a * t.n + b]),
            (Repr::CostPlus, Value::Cost(a), Value::Cost(b)) => Value::Cost(Cost::monus(b, a)),
            (Repr::CostMax, Value::Cost(a), Value::Cost(b)) => Value::Cost(match (a, b) {
                (Cost::Infinite, _) => Cost::ZERO,
                (Cost::Finite(_), Cost::Infinite) => Cost::Infinite,
                (Cost::Finite(x), Cost::Finite(y)) => {
                    if x < y {
                        Cost::Finite(y)
                    } else {
                        Cost::ZERO
                    }
                }
            }),
            (Repr::Lukasiewicz(_), Value::Unit(a), Value::Unit(b)) => {
                Value::Unit((Rational::one() - a + b).min(Rational::one()))
            }
            _ => panic!("foreign value in hom"),
        }
    }

    pub(crate) fn im(&self, u: Value, v: Value) -> Value {
        match &*self.repr {
            Repr::Finite(t) => match (u, v) {
                (Value::Elem(a), Value::Elem(b)) => Value::Elem(t.imp[a * t.n + b]),
                _ => panic!("foreign value in implication"),
            },
            _ => {
                if self.le(u, v) {
                    self.top()
                } else {
                    v
                }
            }
        }
    }

    pub(crate) fn join_iter(&self, it: impl IntoIterator<Item = Value>) -> Value {
        it.into_iter().fold(self.bottom(), |a, b| self.jn(a, b))
    }

    pub(crate) fn meet_iter(&self, it: impl IntoIterator<Item = Value>) -> Value {
        it.into_iter().fold(self.top(), |a, b| self.mt(a, b))
    }

    fn check2(&self, u: &Value, v: &Value) -> Result<()> {
        self.check(u)?;
        self.check(v)
    }

    pub fn tensor(&self, u: Value, v: Value) -> Result<Value> {
        self.check2(&u, &v)?;
        Ok(self.mul(u, v))
    }

    pub fn leq(&self, u: Value, v: Value) -> Result<bool> {
        self.check2(&u, &v)?;
        Ok(self.le(u, v))
    }

    pub fn join2(&self, u: Value, v: Value) -> Result<Value> {
        self.check2(&u, &v)?;
        Ok(self.jn(u, v))
    }

    pub fn meet2(&self, u: Value, v: Value) -> Result<Value> {
        self.check2(&u, &v)?;
        Ok(self.mt(u, v))
    }

    /// `hom(u, v)`, the largest `w` with `w ⊗ u ≤ v`.
    pub fn hom(&self, u: Value, v: Value) -> Result<Value> {
        self.check2(&u, &v)?;
        Ok(self.hm(u, v))
    }

    /// Heyting implication: the largest `w` with `w ∧ u ≤ v`.
    pub fn imp(&self, u: Value, v: Value) -> Result<Value> {
        self.check2(&u, &v)?;
        Ok(self.im(u, v))
    }

    /// Join of a finite set; the empty join is `⊥`.
    pub fn join<'a>(&self, us: impl IntoIterator<Item = &'a Value>) -> Result<Value> {
        let mut acc = self.bottom();
        for u in us {
            self.check(u)?;
            acc = self.jn(acc, *u);
        }
        Ok(acc)
    }

    /// Meet of a finite set; the empty meet is `⊤`.
    pub fn meet<'a>(&self, us: impl IntoIterator<Item = &'a Value>) -> Result<Value> {
        let mut acc = self.top();
        for u in us {
            self.check(u)?;
            acc = self.mt(acc, *u);
        }
        Ok(acc)
    }

    pub fn format_value(&self, v: &Value) -> String {
        match (&*self.repr, v) {
            (Repr::Finite(t), Value::Elem(i)) if *i < t.n => t.labels[*i].clone(),
            (_, Value::Cost(c)) => c.to_string(),
            (_, Value::Unit(r)) => format_rational(r),
            (_, Value::Elem(i)) => format!("#{i}"),
        }
    }

    pub fn parse_value(&self, s: &str) -> std::result::Result<Value, String> {
        match &*self.repr {
            Repr::Finite(t) => t
                .labels
                .iter()
                .position(|l| l == s)
                .map(Value::Elem)
                .ok_or_else(|| format!("unknown quantale element {s:?}")),
            Repr::CostPlus | Repr::CostMax => {
                if s == "inf" {
                    return Ok(Value::INFINITY);
                }
                let r = parse_rational(s)?;
                if r < Rational::zero() {
                    return Err(format!("cost {s:?} is negative"));
                }
                Ok(Value::Cost(Cost::Finite(r)))
            }
            Repr::Lukasiewicz(n) => {
                let v = Value::Unit(parse_rational(s)?);
                if self.contains(&v) {
                    Ok(v)
                } else {
                    Err(format!("{s:?} is not on the grid i/{n} in [0,1]"))
                }
            }
        }
    }

    /// Short human-readable name of the kind, e.g. `chain 3` or `cost-plus`.
    pub fn describe(&self) -> String {
        match &*self.repr {
            Repr::Finite(t) => match t.origin {
                TableOrigin::Bool2 => "bool2".into(),
                TableOrigin::Chain(n) => format!("chain {n}"),
                TableOrigin::Custom => format!("finite-table ({} elements)", t.n),
            },
            Repr::CostPlus => "cost-plus".into(),
            Repr::CostMax => "cost-max".into(),
            Repr::Lukasiewicz(n) => format!("lukasiewicz-grid {n}"),
        }
    }
}

impl fmt::Display for Quantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Value {
        Value::cost(n)
    }

    #[test]
    fn spec_examples() {
        let b = Quantale::bool2();
        assert_eq!(b.tensor(b.top(), b.bottom()).unwrap(), b.bottom());
        assert_eq!(b.join(&[b.bottom(), b.top()]).unwrap(), b.top());
        assert!(b.leq(b.bottom(), b.top()).unwrap());

        let l = Quantale::lukasiewicz_grid(10).unwrap();
        let u = |p| Value::unit_ratio(p, 10);
        assert_eq!(l.tensor(u(7), u(6)).unwrap(), u(3));
        assert_eq!(l.hom(u(5), u(2)).unwrap(), u(7));
        assert!(!l.leq(u(4), u(2)).unwrap());

        let p = Quantale::cost_plus();
        assert_eq!(p.tensor(c(2), c(3)).unwrap(), c(5));
        assert_eq!(p.join(&[c(3), c(5)]).unwrap(), c(3));
        assert_eq!(p.join(&[]).unwrap(), Value::INFINITY);
        assert_eq!(p.hom(c(3), c(5)).unwrap(), c(2));
        assert!(p.leq(c(5), c(3)).unwrap());

        let m = Quantale::cost_max();
        assert_eq!(m.hom(c(5), c(2)).unwrap(), c(0));
        assert_eq!(m.hom(c(2), c(5)).unwrap(), c(5));
    }

    #[test]
    fn mixed_operands_are_type_errors() {
        let p = Quantale::cost_plus();
        let b = Quantale::bool2();
        assert!(matches!(p.tensor(c(1), b.top()), Err(crate::Error::Type(_))));
        let l = Quantale::lukasiewicz_grid(4).unwrap();
        assert!(l.tensor(Value::unit_ratio(1, 3), l.top()).is_err());
    }

    #[test]
    fn hom_with_unit_is_identity() {
        for q in [Quantale::bool2(), Quantale::chain(4).unwrap(), Quantale::lukasiewicz_grid(4).unwrap()] {
            for v in q.elements().unwrap() {
                assert_eq!(q.hom(q.unit(), v).unwrap(), v);
            }
        }
        for q in [Quantale::cost_plus(), Quantale::cost_max()] {
            for v in [c(0), c(3), Value::cost_ratio(1, 2), Value::INFINITY] {
                assert_eq!(q.hom(q.unit(), v).unwrap(), v);
            }
        }
    }

    #[test]
    fn value_text_round_trip() {
        let p = Quantale::cost_plus();
        for s in ["0", "3/2", "inf", "7"] {
            assert_eq!(p.format_value(&p.parse_value(s).unwrap()), s);
        }
        assert!(p.parse_value("-1").is_err());
        let l = Quantale::lukasiewicz_grid(4).unwrap();
        assert!(l.parse_value("1/3").is_err());
        assert_eq!(l.format_value(&l.parse_value("2/4").unwrap()), "1/2");
        let b = Quantale::bool2();
        assert_eq!(b.parse_value("1").unwrap(), b.top());
    }

    #[test]
    fn non_lattice_order_is_rejected() {
        // Two incomparable elements with no bottom.
        let labels = vec!["a".to_string(), "b".to_string()];
        let order = vec![vec![true, false], vec![false, true]];
        let tensor = vec![vec![0, 0], vec![0, 1]];
        assert!(matches!(Quantale::finite_table(labels, &order, &tensor, 1), Err(crate::Error::Structural(_))));
    }
}
