//! (T,V)-spaces over finite carriers.

mod exponential;
mod limits;
mod predicates;

pub use exponential::{continuous_maps, exponential, exponential_with, point_of, FunctionSpace};
pub use limits::{
    coproduct, coproduct_injections, final_structure, initial_structure, product, subspace, Sink, Source,
};
pub use predicates::{
    compact_witness, expo_witness, hausdorff_witness, is_compact, is_exponentiable, is_exponentiable_with,
    is_hausdorff, is_separated, map_order_leq, separation_witness, ExpoWitness,
};

use crate::carrier::{Carrier, MapArrow};
use crate::error::{precondition, structural, type_err, Result};
use crate::monad::Monad;
use crate::quantale::{Quantale, Value};
use crate::report::ValidationReport;
use crate::vrel::VRel;

/// A carrier with a structure `a : TX ⇸ X`. Construction checks shapes only; use
/// [`validate_space`] for the lax-algebra axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    carrier: Carrier,
    monad: Monad,
    structure: VRel,
}

impl Space {
    pub fn new(carrier: Carrier, monad: Monad, structure: VRel) -> Result<Space> {
        if structure.dom() != &monad.t_carrier(&carrier) || structure.cod() != &carrier {
            return Err(structural!(
                "structure must be a relation T{} ⇸ {}, got {} ⇸ {}",
                carrier,
                carrier,
                structure.dom(),
                structure.cod()
            ));
        }
        Ok(Space { carrier, monad, structure })
    }

    /// Build from a matrix of values with rows indexed by `TX`.
    pub fn from_matrix(carrier: Carrier, monad: Monad, q: Quantale, entries: Vec<Value>) -> Result<Space> {
        let tx = monad.t_carrier(&carrier);
        let a = VRel::new(tx, carrier.clone(), q, entries)?;
        Space::new(carrier, monad, a)
    }

    /// Build from a point matrix `α : X ⇸ X` as `a = α · e_X°`, i.e. `a(e(x), y) = α(x, y)`.
    /// Requires an identity-like monad.
    pub fn from_points(monad: Monad, alpha: VRel) -> Result<Space> {
        require_identity_like(monad)?;
        if alpha.dom() != alpha.cod() {
            return Err(type_err!("point matrix must be square"));
        }
        let x = alpha.dom().clone();
        let e_op = VRel::from_map(&monad.unit_map(&x), alpha.quantale()).transpose();
        let a = e_op.then(&alpha)?;
        Space::new(x, monad, a)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn monad(&self) -> Monad {
        self.monad
    }

    pub fn quantale(&self) -> &Quantale {
        self.structure.quantale()
    }

    pub fn structure(&self) -> &VRel {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// `α = a · e_X : X ⇸ X`, the underlying V-category.
    pub fn point_matrix(&self) -> VRel {
        let e = VRel::from_map(&self.monad.unit_map(&self.carrier), self.quantale());
        e.then(&self.structure).expect("e_X composes with a")
    }

    /// Same structure with relabelled points (carriers of equal size).
    pub fn relabel(&self, carrier: &Carrier) -> Result<Space> {
        if carrier.len() != self.carrier.len() {
            return Err(type_err!("relabelling needs a carrier of the same size"));
        }
        let a = self.structure.relabel(&self.monad.t_carrier(carrier), carrier);
        Space::new(carrier.clone(), self.monad, a)
    }

    pub(crate) fn same_setting(&self, other: &Space) -> Result<()> {
        if self.monad != other.monad {
            return Err(type_err!("spaces over different monads ({} vs {})", self.monad.name(), other.monad.name()));
        }
        if self.quantale() != other.quantale() {
            return Err(type_err!("spaces over different quantales ({} vs {})", self.quantale(), other.quantale()));
        }
        Ok(())
    }
}

pub(crate) fn require_identity_like(monad: Monad) -> Result<()> {
    if monad.is_identity_like() {
        Ok(())
    } else {
        Err(crate::error::unsupported!("monad {} is not carrier-isomorphic to the identity", monad.name()))
    }
}

/// Check reflexivity `k ≤ a(e(x), x)` and transitivity `⋁_𝔵 Ta(𝔛,𝔵) ⊗ a(𝔵,x) ≤ a(m(𝔛), x)`.
pub fn validate_space(x: &Space) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let q = x.quantale();
    let a = &x.structure;
    let t = x.monad;
    let e = t.unit_map(&x.carrier);
    for i in 0..x.len() {
        let v = a.get(e.apply(i), i);
        if !q.le(q.unit(), v) {
            rep.push("reflexivity", vec![x.carrier.label(i).to_string(), q.format_value(&v)]);
        }
    }
    let ta = t.lift(a);
    let m = t.mult_map(&x.carrier);
    let tx = a.dom();
    for big in 0..ta.dom().len() {
        for i in 0..x.len() {
            let lhs = q.join_iter((0..tx.len()).map(|s| q.mul(ta.get(big, s), a.get(s, i))));
            let rhs = a.get(m.apply(big), i);
            if !q.le(lhs, rhs) {
                rep.push(
                    "transitivity",
                    vec![
                        ta.dom().label(big).to_string(),
                        x.carrier.label(i).to_string(),
                        q.format_value(&lhs),
                        q.format_value(&rhs),
                    ],
                );
            }
        }
    }
    rep
}

fn check_map(f: &MapArrow, x: &Space, y: &Space) -> Result<()> {
    x.same_setting(y)?;
    if f.dom() != &x.carrier || f.cod() != &y.carrier {
        return Err(type_err!("map {} → {} does not match spaces {} → {}", f.dom(), f.cod(), x.carrier, y.carrier));
    }
    Ok(())
}

/// First `(𝔵, x)` with `a(𝔵, x) ≰ b(Tf 𝔵, f x)`, as indices.
pub fn continuity_witness(f: &MapArrow, x: &Space, y: &Space) -> Result<Option<(usize, usize)>> {
    check_map(f, x, y)?;
    Ok(first_discontinuity(f, x, y))
}

pub(crate) fn first_discontinuity(f: &MapArrow, x: &Space, y: &Space) -> Option<(usize, usize)> {
    let q = x.quantale();
    let (a, b) = (&x.structure, &y.structure);
    let n = x.len();
    let tf = x.monad.t_map(f);
    for s in 0..a.dom().len() {
        let ts = tf.apply(s);
        for i in 0..n {
            if !q.le(a.get(s, i), b.get(ts, f.apply(i))) {
                return Some((s, i));
            }
        }
    }
    None
}

/// `a ≤ f° · b · Tf`.
pub fn is_continuous(f: &MapArrow, x: &Space, y: &Space) -> Result<bool> {
    Ok(continuity_witness(f, x, y)?.is_none())
}

/// `a = f° · b · Tf`.
pub fn is_fully_faithful(f: &MapArrow, x: &Space, y: &Space) -> Result<bool> {
    check_map(f, x, y)?;
    let (a, b) = (&x.structure, &y.structure);
    let tf = x.monad.t_map(f);
    Ok((0..a.dom().len()).all(|s| (0..x.len()).all(|i| a.get(s, i) == b.get(tf.apply(s), f.apply(i)))))
}

/// `a = e_X°`.
pub fn discrete_space(x: &Carrier, monad: Monad, q: &Quantale) -> Space {
    let a = VRel::from_map(&monad.unit_map(x), q).transpose();
    Space::new(x.clone(), monad, a).expect("shape of e°")
}

/// The constant-`⊤` structure.
pub fn indiscrete_space(x: &Carrier, monad: Monad, q: &Quantale) -> Space {
    let a = VRel::top(&monad.t_carrier(x), x, q);
    Space::new(x.clone(), monad, a).expect("shape of ⊤")
}

/// The Sierpiński space `(V, hom · ξ)`. Finite kinds use all elements unless `grid` is
/// given; the cost kinds need an explicit finite `grid` of values.
pub fn sierpinski(q: &Quantale, monad: Monad, grid: Option<&[Value]>) -> Result<Space> {
    let vals: Vec<Value> = match (grid, q.elements()) {
        (Some(g), _) => {
            for (i, v) in g.iter().enumerate() {
                q.check(v)?;
                if g[..i].contains(v) {
                    return Err(structural!("grid value {} listed twice", q.format_value(v)));
                }
            }
            g.to_vec()
        }
        (None, Some(all)) => all,
        (None, None) => return Err(precondition!("the Sierpiński space over {q} needs a finite grid of values")),
    };
    let carrier = Carrier::new(vals.iter().map(|v| q.format_value(v)))?;
    let xi = monad.xi_map(&carrier);
    let tx = monad.t_carrier(&carrier);
    let mut entries = Vec::with_capacity(vals.len() * vals.len());
    for s in 0..tx.len() {
        let u = vals[xi.apply(s)];
        for v in &vals {
            entries.push(q.hm(u, *v));
        }
    }
    Space::new(carrier.clone(), monad, VRel::new(tx, carrier, q.clone(), entries)?)
}

/// The carrier values of a Sierpiński space, recovered from its labels.
pub fn sierpinski_values(s: &Space) -> Result<Vec<Value>> {
    let q = s.quantale();
    s.carrier
        .labels()
        .iter()
        .map(|l| q.parse_value(l).map_err(|e| type_err!("not a Sierpiński carrier: {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Value {
        Value::cost(n)
    }

    #[test]
    fn discrete_and_metric_validate() {
        let q = Quantale::cost_plus();
        for t in [Monad::Identity, Monad::UltrafilterFinite] {
            assert!(validate_space(&discrete_space(&Carrier::range(3), t, &q)).passed());
            let x = Space::from_matrix(Carrier::new(["a", "b"]).unwrap(), t, q.clone(), vec![c(0), c(1), c(1), c(0)])
                .unwrap();
            assert!(validate_space(&x).passed());
        }
    }

    #[test]
    fn missing_loop_is_reflexivity_violation() {
        let q = Quantale::bool2();
        let x = Carrier::new(["x", "y"]).unwrap();
        let s = Space::from_matrix(x, Monad::Identity, q.clone(), vec![q.bottom(), q.bottom(), q.bottom(), q.top()])
            .unwrap();
        let rep = validate_space(&s);
        let v: Vec<_> = rep.of_law("reflexivity").collect();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].witness[0], "x");
    }

    #[test]
    fn stretched_map_is_discontinuous() {
        let q = Quantale::cost_plus();
        let x =
            Space::from_matrix(Carrier::range(2), Monad::Identity, q.clone(), vec![c(0), c(2), c(2), c(0)]).unwrap();
        let y =
            Space::from_matrix(Carrier::range(2), Monad::Identity, q.clone(), vec![c(0), c(1), c(1), c(0)]).unwrap();
        let id = MapArrow::identity(&Carrier::range(2));
        assert!(is_continuous(&id, &x, &y).unwrap());
        assert_eq!(continuity_witness(&id, &y, &x).unwrap(), Some((0, 1)));
    }

    #[test]
    fn collapsing_chain_is_not_fully_faithful() {
        let q = Quantale::bool2();
        let (t, b) = (q.top(), q.bottom());
        let chain = Space::from_matrix(Carrier::range(2), Monad::Identity, q.clone(), vec![t, t, b, t]).unwrap();
        let pt = discrete_space(&Carrier::range(1), Monad::Identity, &q);
        let f = MapArrow::constant(&Carrier::range(2), &Carrier::range(1), 0).unwrap();
        assert!(is_continuous(&f, &chain, &pt).unwrap());
        assert!(!is_fully_faithful(&f, &chain, &pt).unwrap());
    }

    #[test]
    fn sierpinski_examples() {
        let b = Quantale::bool2();
        let s = sierpinski(&b, Monad::Identity, None).unwrap();
        let (t, f) = (b.top(), b.bottom());
        assert_eq!(s.structure().entries(), &[t, t, f, t]);
        let p = Quantale::cost_plus();
        assert!(sierpinski(&p, Monad::Identity, None).is_err());
        let grid = [c(0), c(1), c(2), Value::INFINITY];
        let s = sierpinski(&p, Monad::Identity, Some(&grid)).unwrap();
        assert_eq!(s.structure().get(1, 2), c(1));
        assert_eq!(s.structure().get(2, 1), c(0));
        assert!(validate_space(&s).passed());
        let l = Quantale::lukasiewicz_grid(4).unwrap();
        let s = sierpinski(&l, Monad::UltrafilterFinite, None).unwrap();
        assert_eq!(s.structure().get(2, 1), Value::unit_ratio(3, 4));
        assert!(validate_space(&s).passed());
    }
}
