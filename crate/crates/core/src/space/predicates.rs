use super::Space;
use crate::budget::Budget;
use crate::carrier::MapArrow;
use crate::error::{type_err, Error, Result};
use crate::quantale::{Cost, Rational, Value};

/// First `𝔵` with `k ≰ ⋁_x a(𝔵,x) ⊗ a(𝔵,x)`.
pub fn compact_witness(x: &Space) -> Option<usize> {
    let q = x.quantale();
    let a = x.structure();
    (0..a.dom().len()).find(|&s| !q.le(q.unit(), q.join_iter((0..x.len()).map(|i| q.mul(a.get(s, i), a.get(s, i))))))
}

pub fn is_compact(x: &Space) -> bool {
    compact_witness(x).is_none()
}

/// First `(x, y, 𝔵)` violating `a · a° ≤ 1_X`: for `x ≠ y` a nonzero `a(𝔵,x) ⊗ a(𝔵,y)`,
/// for `x = y` a value above `k` (impossible when integral).
pub fn hausdorff_witness(x: &Space) -> Option<(usize, usize, usize)> {
    let q = x.quantale();
    let a = x.structure();
    let n = x.len();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                let v = q.join_iter((0..a.dom().len()).map(|s| q.mul(a.get(s, i), a.get(s, i))));
                if !q.le(v, q.unit()) {
                    return Some((i, i, 0));
                }
                continue;
            }
            if let Some(s) = (0..a.dom().len()).find(|&s| q.mul(a.get(s, i), a.get(s, j)) != q.bottom()) {
                return Some((i, j, s));
            }
        }
    }
    None
}

pub fn is_hausdorff(x: &Space) -> bool {
    hausdorff_witness(x).is_none()
}

/// A pair `y ≠ y'` with `y ≤ y'` and `y' ≤ y` in the order `k ≤ b(e(y), y')`.
pub fn separation_witness(x: &Space) -> Option<(usize, usize)> {
    let q = x.quantale();
    let pm = x.point_matrix();
    let le = |i: usize, j: usize| q.le(q.unit(), pm.get(i, j));
    (0..x.len()).flat_map(|i| (i + 1..x.len()).map(move |j| (i, j))).find(|&(i, j)| le(i, j) && le(j, i))
}

pub fn is_separated(x: &Space) -> bool {
    separation_witness(x).is_none()
}

/// `f ≤ g` iff `k ≤ b(e_Y(f x), g x)` for every `x`.
pub fn map_order_leq(f: &MapArrow, g: &MapArrow, x: &Space, y: &Space) -> Result<bool> {
    x.same_setting(y)?;
    if f.dom() != x.carrier() || g.dom() != x.carrier() || f.cod() != y.carrier() || g.cod() != y.carrier() {
        return Err(type_err!("map order needs parallel maps {} → {}", x.carrier(), y.carrier()));
    }
    let q = y.quantale();
    let e = y.monad().unit_map(y.carrier());
    let b = y.structure();
    Ok((0..x.len()).all(|i| q.le(q.unit(), b.get(e.apply(f.apply(i)), g.apply(i)))))
}

/// A failure of the exponentiability inequality, with the values involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpoWitness {
    /// Index into `TTX`.
    pub big: usize,
    pub point: usize,
    pub u: Value,
    pub v: Value,
    pub lhs: Value,
    pub rhs: Value,
}

fn lcm_of(d: i64, r: &Rational) -> Result<i64> {
    let b = *r.denom();
    (d / num_integer::gcd(d, b))
        .checked_mul(b)
        .ok_or_else(|| Error::Resource("denominators overflow while building candidate values".into()))
}

/// Candidate values for `u, v`. Finite kinds use every element. For the cost kinds the
/// truth of the inequality is constant on the faces of the line arrangement
/// `u = c`, `v = c`, `u ± v = c` with `c ∈ (1/D)ℤ`, `|c| ≤ 2M` (`D` the common denominator,
/// `M` the largest finite entry), so one point per face of the `1/(6D)` grid on `[0, 4M+2]`
/// together with `∞` decides it exactly.
fn expo_candidates(x: &Space, budget: &Budget) -> Result<Vec<Value>> {
    let q = x.quantale();
    if let Some(all) = q.elements() {
        return Ok(all);
    }
    let mut d = 1i64;
    let mut m = Rational::from_integer(0);
    for v in x.structure().entries() {
        if let Value::Cost(Cost::Finite(r)) = v {
            d = lcm_of(d, r)?;
            m = m.max(*r);
        }
    }
    let step = d.checked_mul(6).ok_or_else(|| Error::Resource("candidate grid overflows".into()))?;
    let hi = (m * Rational::from_integer(4) + Rational::from_integer(2)) * Rational::from_integer(step);
    let count = hi.ceil().to_integer();
    if count < 0 || count as u64 + 2 > budget.value_cap as u64 {
        return Err(Error::Resource(format!(
            "exponentiability test needs {} candidate values, above the cap {}",
            count + 2,
            budget.value_cap
        )));
    }
    let mut vals: Vec<Value> = (0..=count).map(|k| Value::Cost(Cost::Finite(Rational::new(k, step)))).collect();
    vals.push(Value::INFINITY);
    Ok(vals)
}

/// Search for a failure of
/// `⋁_𝔵 (Ta(𝔛,𝔵) ∧ u) ⊗ (a(𝔵,x) ∧ v) ≥ a(m𝔛, x) ∧ (u ⊗ v)`.
pub fn expo_witness(x: &Space, budget: &Budget) -> Result<Option<ExpoWitness>> {
    let q = x.quantale();
    let a = x.structure();
    let t = x.monad();
    let ta = t.lift(a);
    let m = t.mult_map(x.carrier());
    let cands = expo_candidates(x, budget)?;
    let ntx = a.dom().len();
    let mut au = vec![q.bottom(); ntx];
    for big in 0..ta.dom().len() {
        for i in 0..x.len() {
            let base = a.get(m.apply(big), i);
            for &u in &cands {
                for (s, slot) in au.iter_mut().enumerate() {
                    *slot = q.mt(ta.get(big, s), u);
                }
                for &v in &cands {
                    let rhs = q.mt(base, q.mul(u, v));
                    let lhs = q.join_iter((0..ntx).map(|s| q.mul(au[s], q.mt(a.get(s, i), v))));
                    if !q.le(rhs, lhs) {
                        return Ok(Some(ExpoWitness { big, point: i, u, v, lhs, rhs }));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn is_exponentiable_with(x: &Space, budget: &Budget) -> Result<bool> {
    Ok(expo_witness(x, budget)?.is_none())
}

pub fn is_exponentiable(x: &Space) -> Result<bool> {
    is_exponentiable_with(x, &Budget::default())
}
