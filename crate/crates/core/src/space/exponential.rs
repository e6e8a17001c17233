use std::collections::HashMap;

use super::predicates::expo_witness;
use super::{first_discontinuity, require_identity_like, Space};
use crate::budget::Budget;
use crate::carrier::{AllMaps, Carrier, MapArrow};
use crate::error::{precondition, type_err, Result};
use crate::vrel::VRel;

/// A space whose points are maps `Y → Z`, labelled `[z0,z1,…]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSpace {
    pub space: Space,
    maps: Vec<MapArrow>,
    index: HashMap<Vec<usize>, usize>,
    /// Conditions that were checked and failed without blocking the construction.
    pub warnings: Vec<String>,
}

impl FunctionSpace {
    pub(crate) fn new(space: Space, maps: Vec<MapArrow>) -> FunctionSpace {
        let index = maps.iter().enumerate().map(|(i, m)| (m.table().to_vec(), i)).collect();
        FunctionSpace { space, maps, index, warnings: Vec::new() }
    }

    pub(crate) fn carrier_for(maps: &[MapArrow]) -> Result<Carrier> {
        Carrier::new(maps.iter().map(|m| m.graph_label()))
    }

    pub fn maps(&self) -> &[MapArrow] {
        &self.maps
    }

    pub fn index_of(&self, f: &MapArrow) -> Option<usize> {
        self.index.get(f.table()).copied()
    }

    /// Index of the map with the given table, for maps with the right domain and codomain.
    pub fn index_of_table(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// Evaluation `F × Y → Z`, `(g, y) ↦ g(y)`, on the product carrier of [`crate::space::product`].
    pub fn ev(&self, y: &Carrier, z: &Carrier) -> MapArrow {
        let fy = self.space.carrier().product(y);
        let m = y.len();
        let table = (0..fy.len()).map(|i| self.maps[i / m].apply(i % m)).collect();
        MapArrow::new_unchecked(fy, z.clone(), table)
    }
}

pub fn exponential(y: &Space, z: &Space) -> Result<FunctionSpace> {
    exponential_with(y, z, &Budget::default())
}

/// `Z^Y` on the continuous maps, with
/// `d(g, h) = ⋁{v | ∀y,y': b(y,y') ∧ v ≤ c(g y, h y')} = ⋀_{y,y'} (b(y,y') ⇒ c(g y, h y'))`.
pub fn exponential_with(y: &Space, z: &Space, budget: &Budget) -> Result<FunctionSpace> {
    y.same_setting(z)?;
    require_identity_like(y.monad())?;
    if let Some(w) = expo_witness(y, budget)? {
        let q = y.quantale();
        return Err(precondition!(
            "exponential needs an exponentiable base; it fails at ({}, {}) with u = {}, v = {}",
            w.big,
            y.carrier().label(w.point),
            q.format_value(&w.u),
            q.format_value(&w.v)
        ));
    }
    let maps = continuous_maps(y, z, budget)?;
    let q = y.quantale();
    let (b, c) = (y.point_matrix(), z.point_matrix());
    let carrier = FunctionSpace::carrier_for(&maps)?;
    let mut d = VRel::top(&carrier, &carrier, q);
    for (gi, g) in maps.iter().enumerate() {
        for (hi, h) in maps.iter().enumerate() {
            let n = y.len();
            let v = q.meet_iter((0..n * n).map(|p| q.im(b.get(p / n, p % n), c.get(g.apply(p / n), h.apply(p % n)))));
            d.set(gi, hi, v);
        }
    }
    Ok(FunctionSpace::new(Space::from_points(y.monad(), d)?, maps))
}

/// All continuous maps `Y → Z` in enumeration order.
pub fn continuous_maps(y: &Space, z: &Space, budget: &Budget) -> Result<Vec<MapArrow>> {
    y.same_setting(z)?;
    budget.check_enumeration("maps between spaces", AllMaps::count(y.carrier(), z.carrier()))?;
    Ok(AllMaps::new(y.carrier(), z.carrier()).filter(|f| first_discontinuity(f, y, z).is_none()).collect())
}

/// The point of `Z^Y` for the given map, or an error when the map is not continuous.
pub fn point_of(fs: &FunctionSpace, f: &MapArrow) -> Result<usize> {
    fs.index_of(f).ok_or_else(|| type_err!("map {} is not a point of the function space", f.graph_label()))
}

#[cfg(test)]
mod tests {
    use super::super::{discrete_space, is_continuous, product, validate_space};
    use super::*;
    use crate::monad::Monad;
    use crate::quantale::Quantale;

    fn chain2(q: &crate::quantale::Quantale) -> Space {
        let (t, b) = (q.top(), q.bottom());
        Space::from_matrix(Carrier::range(2), Monad::Identity, q.clone(), vec![t, t, b, t]).unwrap()
    }

    #[test]
    fn chain_to_the_chain() {
        let q = Quantale::bool2();
        let s = chain2(&q);
        let e = exponential(&s, &s).unwrap();
        assert_eq!(e.maps().len(), 3);
        assert!(validate_space(&e.space).passed());
        // Linear order: each pair comparable.
        let pm = e.space.point_matrix();
        for i in 0..3 {
            for j in 0..3 {
                assert!(pm.get(i, j) == q.top() || pm.get(j, i) == q.top());
            }
        }
        let ev = e.ev(s.carrier(), s.carrier());
        assert!(is_continuous(&ev, &product(&e.space, &s).unwrap(), &s).unwrap());
    }

    #[test]
    fn power_of_point_is_base() {
        let q = Quantale::chain(3).unwrap();
        let pt = discrete_space(&Carrier::range(1), Monad::Identity, &q);
        let z = chain2(&q);
        let e = exponential(&pt, &z).unwrap();
        assert_eq!(e.space.structure().entries(), z.structure().entries());
    }
}
