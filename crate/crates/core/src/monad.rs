//! Monads with a lax extension to V-relations, acting on finite carriers.
//!
//! Both shipped instances are carrier-isomorphic to the identity: on a finite set every
//! ultrafilter is principal, so `UX` is materialised as one point `^x` per `x ∈ X`.

use crate::carrier::{Carrier, MapArrow};
use crate::error::{type_err, Result};
use crate::quantale::Quantale;
use crate::report::ValidationReport;
use crate::vrel::VRel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monad {
    Identity,
    UltrafilterFinite,
}

impl Monad {
    pub fn name(&self) -> &'static str {
        match self {
            Monad::Identity => "identity",
            Monad::UltrafilterFinite => "ultrafilter-finite",
        }
    }

    pub fn from_name(s: &str) -> Option<Monad> {
        match s {
            "identity" => Some(Monad::Identity),
            "ultrafilter-finite" => Some(Monad::UltrafilterFinite),
            _ => None,
        }
    }

    /// Whether `e_X` is a bijection for every `X`; final structures and exponentials
    /// are only computed for such instances.
    pub fn is_identity_like(&self) -> bool {
        true
    }

    /// Beck–Chevalley is declared by the instance, not verified.
    pub fn declares_beck_chevalley(&self) -> bool {
        true
    }

    /// The carrier `TX`.
    pub fn t_carrier(&self, x: &Carrier) -> Carrier {
        match self {
            Monad::Identity => x.clone(),
            Monad::UltrafilterFinite => x.prefixed("^"),
        }
    }

    /// `Tf : TX → TY`.
    pub fn t_map(&self, f: &MapArrow) -> MapArrow {
        MapArrow::new_unchecked(self.t_carrier(f.dom()), self.t_carrier(f.cod()), f.table().to_vec())
    }

    /// The lax extension `Tr : TX ⇸ TY`, transported along the principal bijection.
    pub fn lift(&self, r: &VRel) -> VRel {
        r.relabel(&self.t_carrier(r.dom()), &self.t_carrier(r.cod()))
    }

    /// `e_X : X → TX`.
    pub fn unit_map(&self, x: &Carrier) -> MapArrow {
        MapArrow::new_unchecked(x.clone(), self.t_carrier(x), (0..x.len()).collect())
    }

    pub fn unit_rel(&self, x: &Carrier, q: &Quantale) -> VRel {
        VRel::from_map(&self.unit_map(x), q)
    }

    /// `m_X : TTX → TX`.
    pub fn mult_map(&self, x: &Carrier) -> MapArrow {
        let tx = self.t_carrier(x);
        MapArrow::new_unchecked(self.t_carrier(&tx), tx, (0..x.len()).collect())
    }

    /// The algebra map `ξ : TV → V` restricted to a finite set of values `vals`
    /// (a carrier whose points are quantale values): the identity on principal ultrafilters.
    pub fn xi_map(&self, vals: &Carrier) -> MapArrow {
        MapArrow::new_unchecked(self.t_carrier(vals), vals.clone(), (0..vals.len()).collect())
    }

    /// Monad laws, `T1 = 1` and the `ξ`-algebra laws on the carrier `x`.
    pub fn check_laws(&self, x: &Carrier) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let tx = self.t_carrier(x);
        let m = self.mult_map(x);
        let m_t = self.mult_map(&tx);
        let tm = self.t_map(&m);
        let assoc_l = tm.then(&m).expect("m·Tm composable");
        let assoc_r = m_t.then(&m).expect("m·m_T composable");
        if assoc_l.table() != assoc_r.table() {
            rep.push("monad-associativity", vec![x.to_string()]);
        }
        let id = MapArrow::identity(&tx);
        let te = self.t_map(&self.unit_map(x));
        if te.then(&m).expect("m·Te composable").table() != id.table() {
            rep.push("monad-unit-left", vec![x.to_string()]);
        }
        if self.unit_map(&tx).then(&m).expect("m·e_T composable").table() != id.table() {
            rep.push("monad-unit-right", vec![x.to_string()]);
        }
        if self.t_carrier(&Carrier::range(1)).len() != 1 {
            rep.push("T1=1", vec![]);
        }
        let xi = self.xi_map(x);
        if self.unit_map(x).then(&xi).expect("ξ·e composable").table() != MapArrow::identity(x).table() {
            rep.push("xi-unit", vec![x.to_string()]);
        }
        let lhs = self.t_map(&xi).then(&xi).expect("ξ·Tξ composable");
        let rhs = self.mult_map(x).then(&xi).expect("ξ·m composable");
        if lhs.table() != rhs.table() {
            rep.push("xi-multiplication", vec![x.to_string()]);
        }
        rep
    }

    /// Naturality of `e` and `m` along `f`.
    pub fn check_naturality(&self, f: &MapArrow) -> ValidationReport {
        let mut rep = ValidationReport::new();
        let (x, y) = (f.dom(), f.cod());
        let l = f.then(&self.unit_map(y)).expect("e·f");
        let r = self.unit_map(x).then(&self.t_map(f)).expect("Tf·e");
        if l.table() != r.table() {
            rep.push("unit-naturality", vec![f.to_string()]);
        }
        let ttf = self.t_map(&self.t_map(f));
        let l = ttf.then(&self.mult_map(y)).expect("m·TTf");
        let r = self.mult_map(x).then(&self.t_map(f)).expect("Tf·m");
        if l.table() != r.table() {
            rep.push("mult-naturality", vec![f.to_string()]);
        }
        rep
    }

    /// Flatness and compatibility with transposition for the extension of `r`.
    pub fn check_lift_laws(&self, r: &VRel) -> Result<ValidationReport> {
        let mut rep = ValidationReport::new();
        let q = r.quantale();
        let id = VRel::identity(r.dom(), q);
        if self.lift(&id) != VRel::identity(&self.t_carrier(r.dom()), q) {
            rep.push("flatness", vec![r.dom().to_string()]);
        }
        if self.lift(&r.transpose()) != self.lift(r).transpose() {
            rep.push("involution", vec![]);
        }
        if r.dom() == r.cod() {
            let lhs = self.lift(&r.then(r)?);
            let rhs = self.lift(r).then(&self.lift(r))?;
            if !lhs.leq(&rhs).map_err(|_| type_err!("lift shape"))? {
                rep.push("lax-functoriality", vec![]);
            }
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_for_both_instances() {
        for t in [Monad::Identity, Monad::UltrafilterFinite] {
            for n in 0..4 {
                assert!(t.check_laws(&Carrier::range(n)).passed());
            }
            let f = MapArrow::new(Carrier::range(3), Carrier::range(2), vec![1, 0, 1]).unwrap();
            assert!(t.check_naturality(&f).passed());
        }
    }

    #[test]
    fn ultrafilter_labels() {
        let x = Carrier::new(["a", "b"]).unwrap();
        let t = Monad::UltrafilterFinite;
        assert_eq!(t.t_carrier(&x).labels(), &["^a", "^b"]);
        assert_eq!(t.t_carrier(&t.t_carrier(&x)).labels(), &["^^a", "^^b"]);
        assert_eq!(t.unit_map(&x).table(), &[0, 1]);
    }

    #[test]
    fn identity_lift_is_identity() {
        let q = Quantale::bool2();
        let x = Carrier::range(2);
        let r = VRel::new(x.clone(), x, q.clone(), vec![q.top(), q.top(), q.bottom(), q.top()]).unwrap();
        assert_eq!(Monad::Identity.lift(&r), r);
        assert!(Monad::UltrafilterFinite.check_lift_laws(&r).unwrap().passed());
    }
}
