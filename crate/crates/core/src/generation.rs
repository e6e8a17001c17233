//! C-generated structures: probes, the coreflection `a ↦ a^c`, C-continuity, the
//! function spaces `C-Map(Y, Z)` and the Alexandroff functors.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::budget::Budget;
use crate::carrier::{AllMaps, Carrier, MapArrow};
use crate::enumerate::{all_structures, dedupe_isomorphic};
use crate::error::{precondition, structural, type_err, Error, Result};
use crate::monad::Monad;
use crate::quantale::{Quantale, Value};
use crate::report::ValidationReport;
use crate::space::{
    discrete_space, exponential_with, final_structure, first_discontinuity, initial_structure, is_compact,
    is_exponentiable_with, is_hausdorff, product, sierpinski, validate_space, FunctionSpace, Space,
};
use crate::vrel::VRel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProbeMode {
    Explicit,
    CompactHausdorffUpto(usize),
    SierpinskiOnly,
}

/// A finite class `𝒞` of generating spaces in one setting, deduplicated up to isomorphism.
#[derive(Debug)]
pub struct ProbeClass {
    objects: Vec<Space>,
    mode: ProbeMode,
    monad: Monad,
    quantale: Quantale,
    budget: Budget,
    products: OnceLock<std::result::Result<ValidationReport, Error>>,
}

impl Clone for ProbeClass {
    fn clone(&self) -> Self {
        ProbeClass {
            objects: self.objects.clone(),
            mode: self.mode,
            monad: self.monad,
            quantale: self.quantale.clone(),
            budget: self.budget,
            products: OnceLock::new(),
        }
    }
}

impl PartialEq for ProbeClass {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.monad == other.monad && self.quantale == other.quantale
    }
}

impl ProbeClass {
    fn build(
        objects: Vec<Space>,
        mode: ProbeMode,
        monad: Monad,
        quantale: Quantale,
        budget: Budget,
    ) -> Result<ProbeClass> {
        if !objects.iter().any(|c| !c.is_empty()) {
            return Err(precondition!("a probe class needs at least one object with a nonempty carrier"));
        }
        for (i, c) in objects.iter().enumerate() {
            if c.monad() != monad || c.quantale() != &quantale {
                return Err(type_err!("class object #{i} lives over ({}, {})", c.monad().name(), c.quantale()));
            }
            let rep = validate_space(c);
            if !rep.passed() {
                return Err(structural!("class object #{i} is not a valid space: {}", rep.violations[0]));
            }
        }
        Ok(ProbeClass { objects: dedupe_isomorphic(objects), mode, monad, quantale, budget, products: OnceLock::new() })
    }

    /// An explicit list of validated generating spaces.
    pub fn explicit(objects: Vec<Space>) -> Result<ProbeClass> {
        let first = objects.first().ok_or_else(|| precondition!("a probe class needs at least one object"))?;
        let (monad, q) = (first.monad(), first.quantale().clone());
        ProbeClass::build(objects, ProbeMode::Explicit, monad, q, Budget::default())
    }

    /// All compact Hausdorff spaces on `0..=n` points, up to isomorphism.
    ///
    /// Finite-valued quantales are enumerated. For the cost kinds, which are integral, a
    /// compact Hausdorff space with an identity-like monad is discrete (`a(x,x) = ⊤` forces
    /// `a(x,y) = ⊤ ⊗ a(x,y) = ⊥` for `y ≠ x`), so the class is the discrete spaces.
    pub fn compact_hausdorff_upto(monad: Monad, q: &Quantale, n: usize, budget: &Budget) -> Result<ProbeClass> {
        if n == 0 {
            return Err(precondition!("compact-hausdorff-upto needs n ≥ 1"));
        }
        let mut objects = Vec::new();
        for size in 0..=n {
            let x = Carrier::range(size);
            if q.elements().is_some() {
                objects.extend(
                    all_structures(&x, monad, q, budget)?.into_iter().filter(|s| is_compact(s) && is_hausdorff(s)),
                );
            } else {
                objects.push(discrete_space(&x, monad, q));
            }
        }
        ProbeClass::build(objects, ProbeMode::CompactHausdorffUpto(n), monad, q.clone(), *budget)
    }

    /// The singleton class of the Sierpiński space; cost kinds need an explicit grid.
    pub fn sierpinski(q: &Quantale, monad: Monad, grid: Option<&[Value]>) -> Result<ProbeClass> {
        let s = sierpinski(q, monad, grid)?;
        ProbeClass::build(vec![s], ProbeMode::SierpinskiOnly, monad, q.clone(), Budget::default())
    }

    pub fn with_budget(mut self, budget: Budget) -> ProbeClass {
        self.budget = budget;
        self.products = OnceLock::new();
        self
    }

    pub fn objects(&self) -> &[Space] {
        &self.objects
    }

    pub fn mode(&self) -> ProbeMode {
        self.mode
    }

    pub fn monad(&self) -> Monad {
        self.monad
    }

    pub fn quantale(&self) -> &Quantale {
        &self.quantale
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn describe_object(&self, i: usize) -> String {
        format!("class object #{i} on {}", self.objects[i].carrier())
    }

    pub(crate) fn check_setting(&self, x: &Space) -> Result<()> {
        if x.monad() != self.monad || x.quantale() != &self.quantale {
            return Err(type_err!(
                "space over ({}, {}) used with a class over ({}, {})",
                x.monad().name(),
                x.quantale(),
                self.monad.name(),
                self.quantale
            ));
        }
        Ok(())
    }

    /// Index of the class object isomorphic to `x`, if any.
    pub fn position_of(&self, x: &Space) -> Option<usize> {
        self.objects.iter().position(|c| crate::enumerate::are_isomorphic(c, x))
    }

    /// First half of (EP): every object is exponentiable.
    pub fn require_exponentiable(&self) -> Result<()> {
        for (i, c) in self.objects.iter().enumerate() {
            if !is_exponentiable_with(c, &self.budget)? {
                return Err(precondition!("(EP) fails: {} is not exponentiable", self.describe_object(i)));
            }
        }
        Ok(())
    }

    /// Second half of (EP): binary products of objects are C-generated. Computed once.
    pub fn product_report(&self) -> Result<ValidationReport> {
        self.products
            .get_or_init(|| {
                let mut rep = ValidationReport::new();
                for i in 0..self.objects.len() {
                    for j in i..self.objects.len() {
                        let p = product(&self.objects[i], &self.objects[j])?;
                        if !is_c_generated(&p, self)? {
                            rep.push("EP-product", vec![self.describe_object(i), self.describe_object(j)]);
                        }
                    }
                }
                Ok(rep)
            })
            .clone()
    }
}

/// A probe `map : C → X` out of class object `object`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub object: usize,
    pub map: MapArrow,
}

/// All probes over `x`: continuous maps from each class object, in class then map order.
pub fn enumerate_probes(class: &ProbeClass, x: &Space) -> Result<Vec<Probe>> {
    class.check_setting(x)?;
    let total = class
        .objects
        .iter()
        .try_fold(0u64, |acc, c| AllMaps::count(c.carrier(), x.carrier()).and_then(|n| acc.checked_add(n)));
    class.budget.check_enumeration("probes", total)?;
    let mut out = Vec::new();
    for (i, c) in class.objects.iter().enumerate() {
        for f in AllMaps::new(c.carrier(), x.carrier()) {
            if first_discontinuity(&f, c, x).is_none() {
                out.push(Probe { object: i, map: f });
            }
        }
    }
    Ok(out)
}

/// `a^c`: the final structure with respect to all probes.
pub fn c_generated_structure(x: &Space, class: &ProbeClass) -> Result<Space> {
    let probes = enumerate_probes(class, x)?;
    let sink: Vec<(MapArrow, &Space)> = probes.into_iter().map(|p| (p.map, &class.objects[p.object])).collect();
    final_structure(x.carrier(), x.monad(), x.quantale(), &sink)
}

pub fn is_c_generated(x: &Space, class: &ProbeClass) -> Result<bool> {
    Ok(&c_generated_structure(x, class)? == x)
}

fn check_map(f: &MapArrow, x: &Space, y: &Space, class: &ProbeClass) -> Result<()> {
    class.check_setting(x)?;
    class.check_setting(y)?;
    if f.dom() != x.carrier() || f.cod() != y.carrier() {
        return Err(type_err!("map {} → {} does not match spaces {} → {}", f.dom(), f.cod(), x.carrier(), y.carrier()));
    }
    Ok(())
}

/// Whether `f ∘ p` is continuous for every probe `p` over `x`.
pub fn is_c_continuous_by_probes(f: &MapArrow, x: &Space, y: &Space, class: &ProbeClass) -> Result<bool> {
    check_map(f, x, y, class)?;
    c_continuous_unchecked(f, &enumerate_probes(class, x)?, y, class)
}

fn c_continuous_unchecked(f: &MapArrow, probes: &[Probe], y: &Space, class: &ProbeClass) -> Result<bool> {
    for p in probes {
        if first_discontinuity(&p.map.then(f)?, &class.objects[p.object], y).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// C-continuity decided probe by probe and cross-checked against continuity of
/// `f : (X, a^c) → (Y, b)` and `f : (X, a^c) → (Y, b^c)`.
pub fn is_c_continuous(f: &MapArrow, x: &Space, y: &Space, class: &ProbeClass) -> Result<bool> {
    let by_probes = is_c_continuous_by_probes(f, x, y, class)?;
    let xc = c_generated_structure(x, class)?;
    let yc = c_generated_structure(y, class)?;
    let from_xc = first_discontinuity(f, &xc, y).is_none();
    let both_c = first_discontinuity(f, &xc, &yc).is_none();
    if by_probes != from_xc || by_probes != both_c {
        return Err(Error::Invariant(format!(
            "C-continuity of {f}: probes say {by_probes}, (X,a^c)→(Y,b) says {from_xc}, (X,a^c)→(Y,b^c) says {both_c}"
        )));
    }
    Ok(by_probes)
}

/// `C-Map(Y, Z)` on the C-continuous maps, with the initial structure along
/// `t_q : g ↦ g ∘ q` into `Z^{C}` for every probe `q : C → Y`.
///
/// Fails when some class object is not exponentiable; a failure of the product half of
/// (EP) is returned as a warning on the result.
pub fn cmap_space(y: &Space, z: &Space, class: &ProbeClass) -> Result<FunctionSpace> {
    class.check_setting(y)?;
    class.check_setting(z)?;
    class.require_exponentiable()?;
    let probes = enumerate_probes(class, y)?;
    class.budget.check_enumeration("maps between spaces", AllMaps::count(y.carrier(), z.carrier()))?;
    let mut maps = Vec::new();
    for g in AllMaps::new(y.carrier(), z.carrier()) {
        if c_continuous_unchecked(&g, &probes, z, class)? {
            maps.push(g);
        }
    }
    let carrier = FunctionSpace::carrier_for(&maps)?;
    let mut expo: HashMap<usize, FunctionSpace> = HashMap::new();
    for p in &probes {
        if let std::collections::hash_map::Entry::Vacant(e) = expo.entry(p.object) {
            e.insert(exponential_with(&class.objects[p.object], z, &class.budget)?);
        }
    }
    let mut source = Vec::with_capacity(probes.len());
    for p in &probes {
        let e = &expo[&p.object];
        let table = maps
            .iter()
            .map(|g| {
                let gq = p.map.then(g)?;
                e.index_of(&gq)
                    .ok_or_else(|| Error::Invariant(format!("{} ∘ probe is not continuous", g.graph_label())))
            })
            .collect::<Result<Vec<usize>>>()?;
        source.push((MapArrow::new(carrier.clone(), e.space.carrier().clone(), table)?, &e.space));
    }
    let space = initial_structure(&carrier, y.monad(), y.quantale(), &source)?;
    let mut fs = FunctionSpace::new(space, maps);
    let rep = class.product_report()?;
    for v in &rep.violations {
        fs.warnings
            .push(format!("(EP) product condition fails: {} × {} is not C-generated", v.witness[0], v.witness[1]));
    }
    Ok(fs)
}

/// `f̄ : X → C-Map(Y,Z)`, `f̄(x) = f(x, −)`, for `f : X × Y → Z`.
pub fn transpose_cmap(f: &MapArrow, x: &Carrier, y: &Carrier, cm: &FunctionSpace) -> Result<MapArrow> {
    if f.dom() != &x.product(y) {
        return Err(type_err!("transpose needs a map out of {} × {}", x, y));
    }
    let m = y.len();
    let table = (0..x.len())
        .map(|i| {
            let section: Vec<usize> = (0..m).map(|j| f.apply(i * m + j)).collect();
            cm.index_of_table(&section)
                .ok_or_else(|| type_err!("section at {} is not a point of the function space", x.label(i)))
        })
        .collect::<Result<Vec<usize>>>()?;
    MapArrow::new(x.clone(), cm.space.carrier().clone(), table)
}

/// `(x, y) ↦ g(x)(y)` for `g : X → C-Map(Y,Z)`.
pub fn untranspose_cmap(g: &MapArrow, y: &Carrier, z: &Carrier, cm: &FunctionSpace) -> Result<MapArrow> {
    if g.cod() != cm.space.carrier() {
        return Err(type_err!("untranspose needs a map into the function space"));
    }
    let xy = g.dom().product(y);
    let m = y.len();
    let table = (0..xy.len()).map(|i| cm.maps()[g.apply(i / m)].apply(i % m)).collect();
    MapArrow::new(xy, z.clone(), table)
}

/// `A_e(X, a) = (X, a · e_X)`, a space for the identity monad.
pub fn alexandroff_ae(x: &Space) -> Result<Space> {
    Space::new(x.carrier().clone(), Monad::Identity, x.point_matrix())
}

/// `A°(Y, β) = (Y, e_Y° · Tβ)` over `monad`, for a space `Y` over the identity monad.
pub fn alexandroff_aup(y: &Space, monad: Monad) -> Result<Space> {
    if y.monad() != Monad::Identity {
        return Err(type_err!("A° takes a space over the identity monad, got {}", y.monad().name()));
    }
    let lifted = monad.lift(y.structure());
    let e_op = VRel::from_map(&monad.unit_map(y.carrier()), y.quantale()).transpose();
    Space::new(y.carrier().clone(), monad, lifted.then(&e_op)?)
}

/// C-generated for the Sierpiński class; the cost kinds need an explicit grid.
pub fn is_alexandroff(x: &Space, grid: Option<&[Value]>) -> Result<bool> {
    let class = ProbeClass::sierpinski(x.quantale(), x.monad(), grid)?;
    is_c_generated(x, &class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{indiscrete_space, is_continuous};

    fn chain2(q: &Quantale) -> Space {
        let (t, b) = (q.top(), q.bottom());
        Space::from_matrix(Carrier::range(2), Monad::Identity, q.clone(), vec![t, t, b, t]).unwrap()
    }

    fn point_class(q: &Quantale) -> ProbeClass {
        ProbeClass::explicit(vec![discrete_space(&Carrier::range(1), Monad::Identity, q)]).unwrap()
    }

    #[test]
    fn probe_counts() {
        let q = Quantale::bool2();
        let s = chain2(&q);
        assert_eq!(enumerate_probes(&point_class(&q), &s).unwrap().len(), 2);
        let c = ProbeClass::explicit(vec![s.clone()]).unwrap();
        assert_eq!(enumerate_probes(&c, &s).unwrap().len(), 3);
        let empty = discrete_space(&Carrier::empty(), Monad::Identity, &q);
        assert!(enumerate_probes(&c, &empty).unwrap().is_empty());
    }

    #[test]
    fn class_needs_a_nonempty_object() {
        let q = Quantale::bool2();
        let empty = discrete_space(&Carrier::empty(), Monad::Identity, &q);
        assert!(ProbeClass::explicit(vec![empty]).is_err());
        assert!(ProbeClass::explicit(vec![]).is_err());
    }

    #[test]
    fn compact_hausdorff_class_is_discrete_in_vcat() {
        let q = Quantale::chain(3).unwrap();
        let c = ProbeClass::compact_hausdorff_upto(Monad::Identity, &q, 2, &Budget::default()).unwrap();
        assert_eq!(c.objects().len(), 3);
        for o in c.objects() {
            assert_eq!(o, &discrete_space(o.carrier(), Monad::Identity, &q));
        }
        let x = chain2(&q);
        assert_eq!(c_generated_structure(&x, &c).unwrap(), discrete_space(x.carrier(), Monad::Identity, &q));
    }

    #[test]
    fn sierpinski_generates_ord() {
        let q = Quantale::bool2();
        let x = chain2(&q);
        assert!(is_alexandroff(&x, None).unwrap());
        let s = sierpinski(&q, Monad::Identity, None).unwrap();
        assert!(is_alexandroff(&s, None).unwrap());
    }

    #[test]
    fn c_continuous_but_not_continuous() {
        // Points see only the discrete structure, so every map is C-continuous.
        let q = Quantale::bool2();
        let i = indiscrete_space(&Carrier::range(2), Monad::Identity, &q);
        let s = sierpinski(&q, Monad::Identity, None).unwrap();
        let id = MapArrow::new(Carrier::range(2), s.carrier().clone(), vec![1, 0]).unwrap();
        assert!(!is_continuous(&id, &i, &s).unwrap());
        assert!(is_c_continuous(&id, &i, &s, &point_class(&q)).unwrap());
    }

    #[test]
    fn cmap_in_ord_is_monotone_maps() {
        let q = Quantale::bool2();
        let s = chain2(&q);
        let class = ProbeClass::explicit(vec![s.clone()]).unwrap();
        let cm = cmap_space(&s, &s, &class).unwrap();
        let e = exponential_with(&s, &s, &Budget::default()).unwrap();
        assert_eq!(cm.maps(), e.maps());
        assert_eq!(cm.space, e.space);
        assert!(cm.warnings.is_empty());
    }

    #[test]
    fn transpose_of_evaluation_is_identity() {
        let q = Quantale::bool2();
        let s = chain2(&q);
        let class = ProbeClass::explicit(vec![s.clone()]).unwrap();
        let cm = cmap_space(&s, &s, &class).unwrap();
        let ev = cm.ev(s.carrier(), s.carrier());
        let t = transpose_cmap(&ev, cm.space.carrier(), s.carrier(), &cm).unwrap();
        assert_eq!(t, MapArrow::identity(cm.space.carrier()));
        assert_eq!(untranspose_cmap(&t, s.carrier(), s.carrier(), &cm).unwrap(), ev);
    }

    #[test]
    fn alexandroff_round_trip() {
        let q = Quantale::chain(3).unwrap();
        let x = chain2(&q);
        let u = alexandroff_aup(&x, Monad::UltrafilterFinite).unwrap();
        assert!(validate_space(&u).passed());
        assert_eq!(alexandroff_ae(&u).unwrap(), x);
        assert_eq!(alexandroff_aup(&alexandroff_ae(&u).unwrap(), Monad::UltrafilterFinite).unwrap(), u);
        assert_eq!(alexandroff_aup(&x, Monad::Identity).unwrap(), x);
    }
}
