use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

/// A cost in `[0, ∞]`. Only arithmetic lives here; comparisons in the quantale
/// order go through [`super::Quantale::leq`], which reverses the numeric order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cost {
    Finite(Rational),
    Infinite,
}

impl Cost {
    pub const ZERO: Cost = Cost::Finite(Ratio::new_raw(0, 1));

    pub fn int(n: i64) -> Cost {
        Cost::Finite(Rational::from_integer(n))
    }

    pub(crate) fn add(self, other: Cost) -> Cost {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Infinite,
        }
    }

    /// Numeric `self >= other`, with ∞ above every finite cost.
    pub(crate) fn num_ge(self, other: Cost) -> bool {
        match (self, other) {
            (Cost::Infinite, _) => true,
            (Cost::Finite(_), Cost::Infinite) => false,
            (Cost::Finite(a), Cost::Finite(b)) => a >= b,
        }
    }

    pub(crate) fn num_min(self, other: Cost) -> Cost {
        if self.num_ge(other) {
            other
        } else {
            self
        }
    }

    pub(crate) fn num_max(self, other: Cost) -> Cost {
        if self.num_ge(other) {
            self
        } else {
            other
        }
    }

    /// Truncated subtraction `v ⊖ u` as used by the cost-plus residuation, with ∞ ⊖ ∞ = 0.
    pub(crate) fn monus(v: Cost, u: Cost) -> Cost {
        match (u, v) {
            (Cost::Infinite, _) => Cost::ZERO,
            (Cost::Finite(_), Cost::Infinite) => Cost::Infinite,
            (Cost::Finite(a), Cost::Finite(b)) => {
                if b >= a {
                    Cost::Finite(b - a)
                } else {
                    Cost::ZERO
                }
            }
        }
    }
}

/// A quantale element. Which variant is meaningful depends on the quantale:
/// finite tables (including `bool2` and chains) use `Elem`, the cost quantales use
/// `Cost`, and the Łukasiewicz grid uses `Unit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Elem(usize),
    Cost(Cost),
    Unit(Rational),
}

impl Value {
    pub fn cost(n: i64) -> Value {
        Value::Cost(Cost::int(n))
    }

    pub fn cost_ratio(p: i64, q: i64) -> Value {
        Value::Cost(Cost::Finite(Rational::new(p, q)))
    }

    pub const INFINITY: Value = Value::Cost(Cost::Infinite);

    pub fn unit_ratio(p: i64, q: i64) -> Value {
        Value::Unit(Rational::new(p, q))
    }

    pub(crate) fn unit_zero() -> Value {
        Value::Unit(Rational::zero())
    }

    pub(crate) fn unit_one() -> Value {
        Value::Unit(Rational::one())
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` with `p, q` decimal integers and `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let parse_int = |t: &str| -> Result<i64, String> {
        if t.is_empty() {
            return Err(format!("malformed rational {s:?}: missing digits"));
        }
        t.parse::<i64>().map_err(|_| format!("malformed rational {s:?}"))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q <= 0 {
                return Err(format!("malformed rational {s:?}: denominator must be positive"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(r) => f.write_str(&format_rational(r)),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational("4/2").unwrap(), Rational::from_integer(2));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7));
        assert!(parse_rational("3/").is_err());
        assert!(parse_rational("/3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn monus_edges() {
        assert_eq!(Cost::monus(Cost::int(5), Cost::int(3)), Cost::int(2));
        assert_eq!(Cost::monus(Cost::int(3), Cost::int(5)), Cost::ZERO);
        assert_eq!(Cost::monus(Cost::Infinite, Cost::int(5)), Cost::Infinite);
        assert_eq!(Cost::monus(Cost::Infinite, Cost::Infinite), Cost::ZERO);
        assert_eq!(Cost::monus(Cost::int(1), Cost::Infinite), Cost::ZERO);
    }
}
