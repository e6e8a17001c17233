//! Exhaustive enumeration of structures on small carriers and canonical forms.

use std::collections::HashSet;

use itertools::Itertools;

use crate::budget::Budget;
use crate::carrier::Carrier;
use crate::error::{unsupported, Result};
use crate::monad::Monad;
use crate::quantale::{Cost, Quantale, Rational, Value};
use crate::space::{require_identity_like, Space};
use crate::vrel::VRel;

/// Reflexivity and transitivity of a point matrix `α : X ⇸ X`.
pub(crate) fn is_valid_point_matrix(alpha: &VRel) -> bool {
    let q = alpha.quantale();
    let n = alpha.dom().len();
    (0..n).all(|i| q.le(q.unit(), alpha.get(i, i)))
        && (0..n).all(|i| {
            (0..n).all(|j| {
                let aij = alpha.get(i, j);
                (0..n).all(|l| q.le(q.mul(aij, alpha.get(j, l)), alpha.get(i, l)))
            })
        })
}

/// Every valid structure on `x` over a finite-valued quantale, in lexicographic order of
/// the point matrix (elements in the quantale's listing order). Needs an identity-like monad.
pub fn all_structures(x: &Carrier, monad: Monad, q: &Quantale, budget: &Budget) -> Result<Vec<Space>> {
    require_identity_like(monad)?;
    let vals =
        q.elements().ok_or_else(|| unsupported!("{q} has infinitely many values; structures cannot be enumerated"))?;
    let diag: Vec<Value> = vals.iter().copied().filter(|&v| q.le(q.unit(), v)).collect();
    let n = x.len();
    let count = (vals.len() as u64)
        .checked_pow((n * n - n) as u32)
        .and_then(|c| c.checked_mul((diag.len() as u64).checked_pow(n as u32)?));
    budget.check_enumeration("structures on the carrier", count)?;
    let choices: Vec<&[Value]> = (0..n * n).map(|p| if p / n == p % n { &diag[..] } else { &vals[..] }).collect();
    let mut out = Vec::new();
    let mut alpha = VRel::bottom(x, x, q);
    let mut idx = vec![0usize; n * n];
    for (p, c) in choices.iter().enumerate() {
        alpha.set(p / n, p % n, c[0]);
    }
    loop {
        if is_valid_point_matrix(&alpha) {
            out.push(Space::from_points(monad, alpha.clone())?);
        }
        // Odometer step, last entry fastest.
        let mut p = n * n;
        loop {
            if p == 0 {
                return Ok(out);
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < choices[p].len() {
                alpha.set(p / n, p % n, choices[p][idx[p]]);
                break;
            }
            idx[p] = 0;
            alpha.set(p / n, p % n, choices[p][0]);
        }
    }
}

/// A total order key on values of one quantale, used only for canonical forms.
fn value_key(v: &Value) -> (u8, Rational) {
    match *v {
        Value::Elem(i) => (0, Rational::from_integer(i as i64)),
        Value::Cost(Cost::Finite(r)) => (1, r),
        Value::Cost(Cost::Infinite) => (2, Rational::from_integer(0)),
        Value::Unit(r) => (3, r),
    }
}

/// The lexicographically least point matrix over all relabellings of the carrier.
/// Two spaces in the same setting are isomorphic iff their canonical forms agree.
pub fn canonical_form(x: &Space) -> Vec<(u8, Rational)> {
    let pm = x.point_matrix();
    let n = x.len();
    let key_of = |perm: &[usize]| -> Vec<(u8, Rational)> {
        (0..n * n).map(|p| value_key(&pm.get(perm[p / n], perm[p % n]))).collect()
    };
    (0..n).permutations(n).map(|p| key_of(&p)).min().unwrap_or_default()
}

pub fn are_isomorphic(x: &Space, y: &Space) -> bool {
    x.monad() == y.monad()
        && x.quantale() == y.quantale()
        && x.len() == y.len()
        && canonical_form(x) == canonical_form(y)
}

/// Keep the first space of every isomorphism class.
pub fn dedupe_isomorphic(spaces: Vec<Space>) -> Vec<Space> {
    let mut seen = HashSet::new();
    spaces.into_iter().filter(|s| seen.insert((s.len(), canonical_form(s)))).collect()
}

/// Valid structures on `n` points, one per isomorphism class.
pub fn structures_up_to_iso(n: usize, monad: Monad, q: &Quantale, budget: &Budget) -> Result<Vec<Space>> {
    Ok(dedupe_isomorphic(all_structures(&Carrier::range(n), monad, q, budget)?))
}
