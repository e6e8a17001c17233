//! Quasi-spaces over a finite class of compact Hausdorff spaces, stored extensionally as
//! explicit sets of admissible maps.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::budget::Budget;
use crate::carrier::{projections, AllMaps, Carrier, MapArrow};
use crate::error::{precondition, structural, type_err, Error, Result};
use crate::generation::ProbeClass;
use crate::report::ValidationReport;
use crate::space::{coproduct, final_structure, first_discontinuity, is_compact, is_hausdorff, product, Space};

/// A probe class prepared for quasi-structures: continuous maps between its objects and
/// the results of the closure checks.
#[derive(Debug)]
pub struct QuasiClass {
    class: ProbeClass,
    homs: Vec<Vec<Vec<MapArrow>>>,
    report: ValidationReport,
}

impl QuasiClass {
    pub fn new(class: ProbeClass) -> Result<Arc<QuasiClass>> {
        let objs = class.objects();
        let budget = *class.budget();
        let mut homs = Vec::with_capacity(objs.len());
        for c in objs {
            let mut row = Vec::with_capacity(objs.len());
            for d in objs {
                budget.check_enumeration("maps between class objects", AllMaps::count(c.carrier(), d.carrier()))?;
                row.push(
                    AllMaps::new(c.carrier(), d.carrier()).filter(|h| first_discontinuity(h, c, d).is_none()).collect(),
                );
            }
            homs.push(row);
        }
        let mut qc = QuasiClass { class, homs, report: ValidationReport::new() };
        qc.report = qc.closure_report()?;
        Ok(Arc::new(qc))
    }

    pub fn class(&self) -> &ProbeClass {
        &self.class
    }

    pub fn objects(&self) -> &[Space] {
        self.class.objects()
    }

    pub fn object(&self, i: usize) -> &Space {
        &self.class.objects()[i]
    }

    pub fn len(&self) -> usize {
        self.objects().len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects().is_empty()
    }

    /// Continuous maps `C_i → C_j`.
    pub fn homs(&self, i: usize, j: usize) -> &[MapArrow] {
        &self.homs[i][j]
    }

    pub fn budget(&self) -> &Budget {
        self.class.budget()
    }

    /// Compactness and Hausdorffness of every object, and closure of the class under
    /// binary products, binary coproducts, the empty coproduct and equalizers.
    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    fn closure_report(&self) -> Result<ValidationReport> {
        let mut rep = ValidationReport::new();
        let objs = self.objects();
        let name = |i: usize| self.class.describe_object(i);
        for (i, c) in objs.iter().enumerate() {
            if !is_compact(c) {
                rep.push("class-compact", vec![name(i)]);
            }
            if !is_hausdorff(c) {
                rep.push("class-hausdorff", vec![name(i)]);
            }
        }
        if !objs.iter().any(|c| c.is_empty()) {
            rep.push("closure-empty-coproduct", vec![]);
        }
        for i in 0..objs.len() {
            for j in i..objs.len() {
                if self.class.position_of(&product(&objs[i], &objs[j])?).is_none() {
                    rep.push("closure-products", vec![name(i), name(j)]);
                }
                if self.class.position_of(&coproduct(&[&objs[i], &objs[j]])?).is_none() {
                    rep.push("closure-coproducts", vec![name(i), name(j)]);
                }
            }
        }
        for (i, c) in objs.iter().enumerate() {
            for (j, _) in objs.iter().enumerate() {
                let hs = &self.homs[i][j];
                'pairs: for f in hs {
                    for g in hs {
                        let eq: Vec<usize> = (0..c.len()).filter(|&p| f.apply(p) == g.apply(p)).collect();
                        let (e, _) = crate::space::subspace(c, &eq)?;
                        if self.class.position_of(&e).is_none() {
                            rep.push("closure-equalizers", vec![name(i), name(j), f.graph_label(), g.graph_label()]);
                            break 'pairs;
                        }
                    }
                }
            }
        }
        if rep.passed() {
            rep.note("class is closed under finite coproducts, binary products and equalizers");
        }
        Ok(rep)
    }

    fn same(a: &Arc<QuasiClass>, b: &Arc<QuasiClass>) -> bool {
        Arc::ptr_eq(a, b) || a.class == b.class
    }
}

type Tables = Vec<BTreeSet<Vec<usize>>>;

/// A carrier with a set `Q(C, X)` of admissible maps for every class object `C`.
#[derive(Debug, Clone)]
pub struct QuasiSpace {
    carrier: Carrier,
    class: Arc<QuasiClass>,
    admissible: Tables,
}

impl PartialEq for QuasiSpace {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier
            && QuasiClass::same(&self.class, &other.class)
            && self.admissible == other.admissible
    }
}

impl QuasiSpace {
    /// Build from explicit admissible maps, listed per class object. Only shapes are
    /// checked; use [`validate_quasi`] for the axioms.
    pub fn new(carrier: Carrier, class: &Arc<QuasiClass>, admissible: Vec<Vec<MapArrow>>) -> Result<QuasiSpace> {
        if admissible.len() != class.len() {
            return Err(structural!(
                "expected admissible maps for {} class objects, got {}",
                class.len(),
                admissible.len()
            ));
        }
        let mut tables = Vec::with_capacity(class.len());
        for (i, maps) in admissible.into_iter().enumerate() {
            let mut set = BTreeSet::new();
            for m in maps {
                if m.dom().len() != class.object(i).len() || m.cod() != &carrier {
                    return Err(structural!(
                        "admissible map {m} does not go from {} to {carrier}",
                        class.class().describe_object(i)
                    ));
                }
                set.insert(m.table().to_vec());
            }
            tables.push(set);
        }
        Ok(QuasiSpace { carrier, class: class.clone(), admissible: tables })
    }

    fn from_tables(carrier: Carrier, class: &Arc<QuasiClass>, admissible: Tables) -> QuasiSpace {
        QuasiSpace { carrier, class: class.clone(), admissible }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn class(&self) -> &Arc<QuasiClass> {
        &self.class
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// `Q(C_i, X)` as maps, in table order.
    pub fn admissible(&self, i: usize) -> Vec<MapArrow> {
        let dom = self.class.object(i).carrier();
        self.admissible[i]
            .iter()
            .map(|t| MapArrow::new_unchecked(dom.clone(), self.carrier.clone(), t.clone()))
            .collect()
    }

    pub fn admissible_tables(&self, i: usize) -> &BTreeSet<Vec<usize>> {
        &self.admissible[i]
    }

    pub fn is_admissible(&self, i: usize, alpha: &MapArrow) -> bool {
        self.admissible[i].contains(alpha.table())
    }

    fn check_class(&self, other: &QuasiSpace) -> Result<()> {
        if !QuasiClass::same(&self.class, &other.class) {
            return Err(type_err!("quasi-spaces over different classes"));
        }
        Ok(())
    }
}

fn all_tables(dom: usize, cod: &Carrier, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let d = Carrier::range(dom);
    budget.check_enumeration("maps from a class object", AllMaps::count(&d, cod))?;
    Ok(AllMaps::new(&d, cod).map(|m| m.table().to_vec()).collect())
}

fn compose_tables(h: &MapArrow, alpha: &[usize]) -> Vec<usize> {
    h.table().iter().map(|&p| alpha[p]).collect()
}

/// Candidate cover pieces for `alpha : C_c → X`: continuous `η : C_k → C_c` with
/// `alpha ∘ η` admissible, as `(k, η)`.
fn cover_pieces<'a>(
    qc: &'a QuasiClass,
    sets: &Tables,
    c: usize,
    alpha: &[usize],
) -> Result<Vec<(usize, &'a MapArrow)>> {
    let total: u64 = (0..qc.len()).map(|k| qc.homs(k, c).len() as u64).sum();
    if total > qc.budget().cover_search {
        return Err(Error::Resource(format!(
            "cover search needs {total} candidate pieces, above the budget {}",
            qc.budget().cover_search
        )));
    }
    Ok((0..qc.len())
        .flat_map(|k| qc.homs(k, c).iter().map(move |h| (k, h)))
        .filter(|(k, h)| sets[*k].contains(&compose_tables(h, alpha)))
        .collect())
}

fn covers_all(n: usize, pieces: &[(usize, &MapArrow)]) -> bool {
    let mut hit = vec![false; n];
    for (_, h) in pieces {
        for &p in h.table() {
            hit[p] = true;
        }
    }
    hit.into_iter().all(|b| b)
}

/// A smallest family of at most `max` pieces whose images cover `0..n`.
fn min_cover<'a>(n: usize, pieces: &[(usize, &'a MapArrow)], max: usize) -> Option<Vec<(usize, &'a MapArrow)>> {
    fn go<'a>(
        pieces: &[(usize, &'a MapArrow)],
        left: usize,
        hit: &mut Vec<u32>,
        chosen: &mut Vec<(usize, &'a MapArrow)>,
    ) -> bool {
        let Some(first) = hit.iter().position(|&h| h == 0) else { return true };
        if left == 0 {
            return false;
        }
        for &(k, h) in pieces.iter().filter(|(_, h)| h.table().contains(&first)) {
            for &p in h.table() {
                hit[p] += 1;
            }
            chosen.push((k, h));
            if go(pieces, left - 1, hit, chosen) {
                return true;
            }
            chosen.pop();
            for &p in h.table() {
                hit[p] -= 1;
            }
        }
        false
    }
    (0..=max).find_map(|size| {
        let mut hit = vec![0u32; n];
        let mut chosen = Vec::new();
        go(pieces, size, &mut hit, &mut chosen).then_some(chosen)
    })
}

/// The covering map `η : ⊔ C_k → C` of a family of pieces.
fn eta_of(qc: &QuasiClass, c: usize, family: &[(usize, &MapArrow)]) -> Result<MapArrow> {
    let parts: Vec<&Space> = family.iter().map(|(k, _)| qc.object(*k)).collect();
    let dom = if parts.is_empty() { Carrier::empty() } else { coproduct(&parts)?.carrier().clone() };
    let table = family.iter().flat_map(|(_, h)| h.table().iter().copied()).collect();
    MapArrow::new(dom, qc.object(c).carrier().clone(), table)
}

/// Pieces `(k, alpha ∘ η_k)` of a covering, with the covering map `η`.
pub type Covering = (Vec<(usize, MapArrow)>, MapArrow);

/// A covering of `alpha : C_c → X` by at most `max_pieces` admissible maps, as the
/// family `(k, alpha ∘ η_k)` together with `η`.
pub fn covering_family(q: &QuasiSpace, c: usize, alpha: &MapArrow, max_pieces: usize) -> Result<Option<Covering>> {
    let qc = &q.class;
    let pieces = cover_pieces(qc, &q.admissible, c, alpha.table())?;
    let n = qc.object(c).len();
    match min_cover(n, &pieces, max_pieces) {
        None => Ok(None),
        Some(fam) => {
            let eta = eta_of(qc, c, &fam)?;
            let family = fam.iter().map(|(k, h)| Ok((*k, h.then(alpha)?))).collect::<Result<Vec<_>>>()?;
            Ok(Some((family, eta)))
        }
    }
}

/// Whether `alpha : C_c → X` is covered by the family `(C_k, α_k)`: a continuous
/// surjection `η : ⊔ C_k → C_c` with `alpha ∘ η = ⊔ α_k`. Returns `η` when it exists.
pub fn is_covered(
    q: &QuasiSpace,
    c: usize,
    alpha: &MapArrow,
    family: &[(usize, MapArrow)],
) -> Result<Option<MapArrow>> {
    let qc = &q.class;
    if alpha.dom().len() != qc.object(c).len() || alpha.cod() != q.carrier() {
        return Err(type_err!("covered map must go from {} to {}", qc.class().describe_object(c), q.carrier()));
    }
    for (k, a) in family {
        if *k >= qc.len() || a.dom().len() != qc.object(*k).len() || a.cod() != q.carrier() {
            return Err(type_err!("family member {a} does not fit its class object"));
        }
    }
    // Per summand, the continuous η_k with alpha ∘ η_k = α_k.
    let cands: Vec<Vec<&MapArrow>> = family
        .iter()
        .map(|(k, a)| qc.homs(*k, c).iter().filter(|h| compose_tables(h, alpha.table()) == a.table()).collect())
        .collect();
    let total: u64 = cands.iter().map(|v| v.len() as u64).sum();
    if total > qc.budget().cover_search {
        return Err(Error::Resource(format!("cover search over {total} pieces exceeds the budget")));
    }
    let n = qc.object(c).len();
    let mut choice = vec![0usize; family.len()];
    let mut examined = 0u64;
    fn go(
        i: usize,
        cands: &[Vec<&MapArrow>],
        choice: &mut Vec<usize>,
        n: usize,
        examined: &mut u64,
        limit: u64,
    ) -> Result<bool> {
        if i == cands.len() {
            *examined += 1;
            if *examined > limit {
                return Err(Error::Resource("cover search budget exhausted".into()));
            }
            let mut hit = vec![false; n];
            for (j, &c) in choice.iter().enumerate() {
                for &p in cands[j][c].table() {
                    hit[p] = true;
                }
            }
            return Ok(hit.into_iter().all(|b| b));
        }
        for c in 0..cands[i].len() {
            choice[i] = c;
            if go(i + 1, cands, choice, n, examined, limit)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
    if !go(0, &cands, &mut choice, n, &mut examined, qc.budget().cover_search)? {
        return Ok(None);
    }
    let fam: Vec<(usize, &MapArrow)> =
        family.iter().zip(&choice).enumerate().map(|(j, ((k, _), &c))| (*k, cands[j][c])).collect();
    Ok(Some(eta_of(qc, c, &fam)?))
}

/// QS1, QS2 and QS3 with witnesses, plus the class checks. QS3 is exact when the cover
/// budget is at least the size of every class object (one piece per point suffices);
/// otherwise it is marked as verified up to budget.
pub fn validate_quasi(q: &QuasiSpace) -> Result<ValidationReport> {
    let qc = &q.class;
    let mut rep = ValidationReport::new();
    for v in qc.report().of_law("class-compact").chain(qc.report().of_law("class-hausdorff")) {
        rep.violations.push(v.clone());
    }
    let name = |i: usize| qc.class().describe_object(i);
    let label = |t: &[usize]| {
        let parts: Vec<&str> = t.iter().map(|&y| q.carrier.label(y)).collect();
        format!("[{}]", parts.join(","))
    };
    for i in 0..qc.len() {
        let n = qc.object(i).len();
        for y in 0..q.len() {
            let t = vec![y; n];
            if !q.admissible[i].contains(&t) {
                rep.push("QS1", vec![name(i), label(&t)]);
            }
        }
        if q.is_empty() && n == 0 && !q.admissible[i].contains(&Vec::new()) {
            rep.push("QS1", vec![name(i), "[]".into()]);
        }
    }
    for i in 0..qc.len() {
        for j in 0..qc.len() {
            for h in qc.homs(i, j) {
                for a in &q.admissible[j] {
                    let t = compose_tables(h, a);
                    if !q.admissible[i].contains(&t) {
                        rep.push("QS2", vec![name(j), label(a), h.graph_label(), label(&t)]);
                    }
                }
            }
        }
    }
    let max = qc.budget().cover_family;
    let mut bounded = false;
    for i in 0..qc.len() {
        let n = qc.object(i).len();
        for t in all_tables(n, &q.carrier, qc.budget())? {
            let pieces = cover_pieces(qc, &q.admissible, i, &t)?;
            let admissible = q.admissible[i].contains(&t);
            let covered = if max >= n {
                covers_all(n, &pieces)
            } else {
                bounded = true;
                min_cover(n, &pieces, max).is_some()
            };
            if covered && !admissible {
                rep.push("QS3", vec![name(i), label(&t), "covered but not admissible".into()]);
            }
            if admissible && !covers_all(n, &pieces) {
                rep.push("QS3", vec![name(i), label(&t), "admissible but not covered".into()]);
            }
        }
    }
    if bounded {
        rep.note(format!("QS3 verified up to budget ({max} pieces per family)"));
    }
    Ok(rep)
}

/// Close admissible sets under QS1, QS2 and unbounded cover-closure.
fn close(carrier: &Carrier, qc: &QuasiClass, mut sets: Tables) -> Result<Tables> {
    for (i, s) in sets.iter_mut().enumerate() {
        let n = qc.object(i).len();
        for y in 0..carrier.len() {
            s.insert(vec![y; n]);
        }
    }
    let all: Vec<Vec<Vec<usize>>> =
        (0..qc.len()).map(|i| all_tables(qc.object(i).len(), carrier, qc.budget())).collect::<Result<_>>()?;
    loop {
        let mut changed = false;
        for i in 0..qc.len() {
            for j in 0..qc.len() {
                let add: Vec<Vec<usize>> =
                    qc.homs(i, j).iter().flat_map(|h| sets[j].iter().map(move |a| compose_tables(h, a))).collect();
                for t in add {
                    changed |= sets[i].insert(t);
                }
            }
        }
        for i in 0..qc.len() {
            let n = qc.object(i).len();
            for t in &all[i] {
                if !sets[i].contains(t) && covers_all(n, &cover_pieces(qc, &sets, i, t)?) {
                    sets[i].insert(t.clone());
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(sets);
        }
    }
}

/// `Q_a(C, X)`: the continuous maps.
pub fn associated_quasi(x: &Space, qc: &Arc<QuasiClass>) -> Result<QuasiSpace> {
    qc.class().check_setting(x)?;
    let mut sets = Vec::with_capacity(qc.len());
    for c in qc.objects() {
        qc.budget().check_enumeration("maps from a class object", AllMaps::count(c.carrier(), x.carrier()))?;
        sets.push(
            AllMaps::new(c.carrier(), x.carrier())
                .filter(|f| first_discontinuity(f, c, x).is_none())
                .map(|f| f.table().to_vec())
                .collect(),
        );
    }
    Ok(QuasiSpace::from_tables(x.carrier().clone(), qc, sets))
}

/// The least quasi-structure: the constant maps closed under precomposition and covers.
pub fn discrete_quasi(x: &Carrier, qc: &Arc<QuasiClass>) -> Result<QuasiSpace> {
    let sets = close(x, qc, vec![BTreeSet::new(); qc.len()])?;
    Ok(QuasiSpace::from_tables(x.clone(), qc, sets))
}

/// Exactly the constant maps. Fails QS3 whenever a non-constant map is covered by constants.
pub fn constants_only_quasi(x: &Carrier, qc: &Arc<QuasiClass>) -> QuasiSpace {
    let sets = (0..qc.len())
        .map(|i| {
            let n = qc.object(i).len();
            let mut s: BTreeSet<Vec<usize>> = (0..x.len()).map(|y| vec![y; n]).collect();
            if n == 0 {
                s.insert(Vec::new());
            }
            s
        })
        .collect();
    QuasiSpace::from_tables(x.clone(), qc, sets)
}

/// All maps are admissible.
pub fn indiscrete_quasi(x: &Carrier, qc: &Arc<QuasiClass>) -> Result<QuasiSpace> {
    let sets = (0..qc.len())
        .map(|i| Ok(all_tables(qc.object(i).len(), x, qc.budget())?.into_iter().collect()))
        .collect::<Result<_>>()?;
    Ok(QuasiSpace::from_tables(x.clone(), qc, sets))
}

/// The one-point quasi-space, `Q(C, 1) = {!}`.
pub fn singleton_quasi(qc: &Arc<QuasiClass>) -> QuasiSpace {
    let one = Carrier::new(["*"]).expect("one label");
    let sets = (0..qc.len()).map(|i| BTreeSet::from([vec![0; qc.object(i).len()]])).collect();
    QuasiSpace::from_tables(one, qc, sets)
}

/// `f ∘ α ∈ Q(C, Y)` for every `α ∈ Q(C, X)`.
pub fn is_quasi_continuous(f: &MapArrow, qx: &QuasiSpace, qy: &QuasiSpace) -> Result<bool> {
    Ok(quasi_discontinuity(f, qx, qy)?.is_none())
}

/// First `(i, α)` with `f ∘ α ∉ Q(C_i, Y)`.
pub fn quasi_discontinuity(f: &MapArrow, qx: &QuasiSpace, qy: &QuasiSpace) -> Result<Option<(usize, Vec<usize>)>> {
    qx.check_class(qy)?;
    if f.dom() != qx.carrier() || f.cod() != qy.carrier() {
        return Err(type_err!(
            "map {} → {} does not match quasi-spaces {} → {}",
            f.dom(),
            f.cod(),
            qx.carrier(),
            qy.carrier()
        ));
    }
    for (i, set) in qx.admissible.iter().enumerate() {
        for a in set {
            let t: Vec<usize> = a.iter().map(|&p| f.apply(p)).collect();
            if !qy.admissible[i].contains(&t) {
                return Ok(Some((i, a.clone())));
            }
        }
    }
    Ok(None)
}

/// Every map `X → |Y|` is quasi-continuous `DX → Y`.
pub fn discrete_adjunction_report(x: &Carrier, y: &QuasiSpace) -> Result<ValidationReport> {
    let dx = discrete_quasi(x, y.class())?;
    hom_set_report("D ⊣ |-|", &dx, y)
}

/// Every map `|Y| → X` is quasi-continuous `Y → IX`.
pub fn indiscrete_adjunction_report(y: &QuasiSpace, x: &Carrier) -> Result<ValidationReport> {
    let ix = indiscrete_quasi(x, y.class())?;
    hom_set_report("|-| ⊣ I", y, &ix)
}

/// `Qs(1, Y) ≅ |Y|`: every point is a quasi-continuous map out of the singleton.
pub fn singleton_represents_report(y: &QuasiSpace) -> Result<ValidationReport> {
    hom_set_report("|-| ≅ Qs(1,-)", &singleton_quasi(y.class()), y)
}

fn hom_set_report(law: &str, a: &QuasiSpace, b: &QuasiSpace) -> Result<ValidationReport> {
    let mut rep = ValidationReport::new();
    a.class().budget().check_enumeration("maps between quasi-spaces", AllMaps::count(a.carrier(), b.carrier()))?;
    let mut count = 0u64;
    for f in AllMaps::new(a.carrier(), b.carrier()) {
        count += 1;
        if !is_quasi_continuous(&f, a, b)? {
            rep.push(law, vec![f.to_string()]);
        }
    }
    rep.note(format!("{law}: {count} maps checked"));
    Ok(rep)
}

/// `α ∈ Q(C, A) ⟺ i_A ∘ α ∈ Q(C, X)`.
pub fn subspace_quasi(q: &QuasiSpace, subset: &[usize]) -> Result<(QuasiSpace, MapArrow)> {
    for (k, &i) in subset.iter().enumerate() {
        if i >= q.len() {
            return Err(precondition!("point index {i} is not in the carrier {}", q.carrier()));
        }
        if subset[..k].contains(&i) {
            return Err(structural!("point {} listed twice in the subset", q.carrier().label(i)));
        }
    }
    let a = Carrier::new(subset.iter().map(|&i| q.carrier().label(i).to_string()))?;
    let incl = MapArrow::new(a.clone(), q.carrier().clone(), subset.to_vec())?;
    let s = initial_quasi(&a, &[(incl.clone(), q)])?;
    Ok((s, incl))
}

/// `α ∈ Q(C, X) ⟺ f_j ∘ α ∈ Q(C, X_j)` for every `j`; needs a nonempty source.
pub fn initial_quasi(x: &Carrier, source: &[(MapArrow, &QuasiSpace)]) -> Result<QuasiSpace> {
    let (_, first) = source.first().ok_or_else(|| {
        precondition!("initial quasi-structure of an empty source needs a class; use indiscrete_quasi")
    })?;
    let qc = first.class().clone();
    for (f, y) in source {
        first.check_class(y)?;
        if f.dom() != x || f.cod() != y.carrier() {
            return Err(type_err!("source map {} → {} does not fit {} → {}", f.dom(), f.cod(), x, y.carrier()));
        }
    }
    let mut sets = Vec::with_capacity(qc.len());
    for i in 0..qc.len() {
        let set = all_tables(qc.object(i).len(), x, qc.budget())?
            .into_iter()
            .filter(|t| {
                source.iter().all(|(f, y)| y.admissible[i].contains(&t.iter().map(|&p| f.apply(p)).collect::<Vec<_>>()))
            })
            .collect();
        sets.push(set);
    }
    Ok(QuasiSpace::from_tables(x.clone(), &qc, sets))
}

/// Product of a list with its projections; the empty product is the singleton, which
/// needs the class supplied separately.
pub fn product_quasi(parts: &[&QuasiSpace], qc: &Arc<QuasiClass>) -> Result<(QuasiSpace, Vec<MapArrow>)> {
    let Some((first, rest)) = parts.split_first() else {
        return Ok((singleton_quasi(qc), Vec::new()));
    };
    let mut acc = (*first).clone();
    let mut projs = vec![MapArrow::identity(first.carrier())];
    for p in rest {
        let (p1, p2) = projections(acc.carrier(), p.carrier());
        let xy = p1.dom().clone();
        let next = initial_quasi(&xy, &[(p1.clone(), &acc), (p2.clone(), p)])?;
        projs = projs.iter().map(|f| p1.then(f)).collect::<Result<_>>()?;
        projs.push(p2);
        acc = next;
    }
    Ok((acc, projs))
}

/// Binary product on the carrier `X × Y`.
pub fn product2_quasi(x: &QuasiSpace, y: &QuasiSpace) -> Result<QuasiSpace> {
    Ok(product_quasi(&[x, y], x.class())?.0)
}

/// `β ∈ Q(C, Y)` iff `f ∘ α' = β ∘ f'` for some continuous surjection `f' : C' → C` of
/// class objects and `α' ∈ Q(C', X)`. Fails when the result is not a quasi-structure,
/// which happens when the class lacks the pullbacks used for QS2.
pub fn quotient_quasi(q: &QuasiSpace, f: &MapArrow) -> Result<QuasiSpace> {
    if f.dom() != q.carrier() {
        return Err(type_err!("quotient map must start at {}", q.carrier()));
    }
    if !f.is_surjective() {
        return Err(precondition!("quotient map {f} is not surjective"));
    }
    let qc = q.class().clone();
    let y = f.cod().clone();
    let mut sets = vec![BTreeSet::new(); qc.len()];
    for (c, set) in sets.iter_mut().enumerate() {
        let n = qc.object(c).len();
        for cp in 0..qc.len() {
            for fp in qc.homs(cp, c).iter().filter(|h| h.is_surjective()) {
                'alpha: for a in &q.admissible[cp] {
                    let mut beta = vec![usize::MAX; n];
                    for (p, &img) in fp.table().iter().enumerate() {
                        let v = f.apply(a[p]);
                        if beta[img] != usize::MAX && beta[img] != v {
                            continue 'alpha;
                        }
                        beta[img] = v;
                    }
                    set.insert(beta);
                }
            }
        }
    }
    let out = QuasiSpace::from_tables(y, &qc, sets);
    let rep = validate_quasi(&out)?;
    if let Some(v) = rep.violations.iter().find(|v| v.law.starts_with("QS")) {
        return Err(precondition!(
            "quotient structure is not a quasi-structure ({v}); the class is not closed under the pullbacks it needs"
        ));
    }
    Ok(out)
}

/// The function quasi-space `Qs(X, Y)` with its evaluation.
#[derive(Debug, Clone)]
pub struct QuasiFunctionSpace {
    pub quasi: QuasiSpace,
    maps: Vec<MapArrow>,
    index: HashMap<Vec<usize>, usize>,
    /// Class-closure conditions that failed; the structure is still computed by its formula.
    pub warnings: Vec<String>,
}

impl QuasiFunctionSpace {
    pub fn maps(&self) -> &[MapArrow] {
        &self.maps
    }

    pub fn index_of_table(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// `ev : Qs(X,Y) × X → Y`.
    pub fn ev(&self, x: &Carrier, y: &Carrier) -> MapArrow {
        let fx = self.quasi.carrier().product(x);
        let m = x.len();
        MapArrow::new_unchecked(fx.clone(), y.clone(), (0..fx.len()).map(|i| self.maps[i / m].apply(i % m)).collect())
    }

    /// `f̄(z) = f(z, −)` for `f : Z × X → Y`; fails when a section is not quasi-continuous.
    pub fn transpose(&self, f: &MapArrow, z: &Carrier, x: &Carrier) -> Result<MapArrow> {
        if f.dom() != &z.product(x) {
            return Err(type_err!("transpose needs a map out of {z} × {x}"));
        }
        let m = x.len();
        let table = (0..z.len())
            .map(|i| {
                let s: Vec<usize> = (0..m).map(|j| f.apply(i * m + j)).collect();
                self.index_of_table(&s).ok_or_else(|| type_err!("section at {} is not quasi-continuous", z.label(i)))
            })
            .collect::<Result<Vec<_>>>()?;
        MapArrow::new(z.clone(), self.quasi.carrier().clone(), table)
    }

    pub fn untranspose(&self, g: &MapArrow, x: &Carrier, y: &Carrier) -> Result<MapArrow> {
        if g.cod() != self.quasi.carrier() {
            return Err(type_err!("untranspose needs a map into the function space"));
        }
        let zx = g.dom().product(x);
        let m = x.len();
        MapArrow::new(zx.clone(), y.clone(), (0..zx.len()).map(|i| self.maps[g.apply(i / m)].apply(i % m)).collect())
    }
}

/// `β ∈ Q(C, Qs(X,Y))` iff `ev ∘ ⟨β ∘ h, α⟩ ∈ Q(B, Y)` for every continuous `h : B → C`
/// and `α ∈ Q(B, X)`. Missing class closures are reported as warnings.
pub fn exponential_quasi(qx: &QuasiSpace, qy: &QuasiSpace) -> Result<QuasiFunctionSpace> {
    qx.check_class(qy)?;
    let qc = qx.class().clone();
    qc.budget().check_enumeration("maps between quasi-spaces", AllMaps::count(qx.carrier(), qy.carrier()))?;
    let mut maps = Vec::new();
    for f in AllMaps::new(qx.carrier(), qy.carrier()) {
        if is_quasi_continuous(&f, qx, qy)? {
            maps.push(f);
        }
    }
    let carrier = Carrier::new(maps.iter().map(|m| m.graph_label()))?;
    let mut sets = Vec::with_capacity(qc.len());
    for c in 0..qc.len() {
        let mut set = BTreeSet::new();
        for beta in all_tables(qc.object(c).len(), &carrier, qc.budget())? {
            let ok = (0..qc.len()).all(|b| {
                qc.homs(b, c).iter().all(|h| {
                    qx.admissible[b].iter().all(|a| {
                        let t: Vec<usize> = (0..a.len()).map(|p| maps[beta[h.apply(p)]].apply(a[p])).collect();
                        qy.admissible[b].contains(&t)
                    })
                })
            });
            if ok {
                set.insert(beta);
            }
        }
        sets.push(set);
    }
    let index = maps.iter().enumerate().map(|(i, m)| (m.table().to_vec(), i)).collect();
    let quasi = QuasiSpace::from_tables(carrier, &qc, sets);
    let mut warnings: Vec<String> = qc
        .report()
        .violations
        .iter()
        .filter(|v| v.law == "closure-products" || v.law == "closure-equalizers")
        .map(|v| format!("class closure fails: {v}"))
        .collect();
    let rep = validate_quasi(&quasi)?;
    warnings.extend(rep.violations.iter().map(|v| format!("function quasi-space: {v}")));
    Ok(QuasiFunctionSpace { quasi, maps, index, warnings })
}

/// `a_Q`: the final structure of the sink of all admissible maps.
pub fn reflect_to_cgenerated(q: &QuasiSpace) -> Result<Space> {
    let qc = q.class();
    let mut sink = Vec::new();
    for i in 0..qc.len() {
        for a in q.admissible(i) {
            let m = MapArrow::new_unchecked(qc.object(i).carrier().clone(), q.carrier().clone(), a.table().to_vec());
            sink.push((m, qc.object(i)));
        }
    }
    let c = qc.class();
    final_structure(q.carrier(), c.monad(), c.quantale(), &sink)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::Monad;
    use crate::quantale::Quantale;
    use crate::space::discrete_space;

    fn ch2(q: &Quantale) -> Arc<QuasiClass> {
        QuasiClass::new(ProbeClass::compact_hausdorff_upto(Monad::Identity, q, 2, &Budget::default()).unwrap()).unwrap()
    }

    fn chain2(q: &Quantale) -> Space {
        let (t, b) = (q.top(), q.bottom());
        Space::from_matrix(Carrier::range(2), Monad::Identity, q.clone(), vec![t, t, b, t]).unwrap()
    }

    #[test]
    fn associated_in_vcat_is_indiscrete() {
        let q = Quantale::bool2();
        let qc = ch2(&q);
        let x = chain2(&q);
        let a = associated_quasi(&x, &qc).unwrap();
        assert!(validate_quasi(&a).unwrap().passed());
        assert_eq!(a, indiscrete_quasi(x.carrier(), &qc).unwrap());
    }

    #[test]
    fn discrete_quasi_is_cover_closure_of_constants() {
        let q = Quantale::bool2();
        let qc = ch2(&q);
        let x = Carrier::range(2);
        let d = discrete_quasi(&x, &qc).unwrap();
        assert!(validate_quasi(&d).unwrap().passed());
        assert_eq!(d, indiscrete_quasi(&x, &qc).unwrap());
        let lit = constants_only_quasi(&x, &qc);
        let rep = validate_quasi(&lit).unwrap();
        assert!(rep.of_law("QS3").next().is_some());
    }

    #[test]
    fn missing_constant_is_qs1_violation() {
        let q = Quantale::bool2();
        let qc = ch2(&q);
        let x = Carrier::range(2);
        let mut i = indiscrete_quasi(&x, &qc).unwrap();
        let k = qc.objects().iter().position(|o| o.len() == 1).unwrap();
        i.admissible[k].remove(&vec![1]);
        let rep = validate_quasi(&i).unwrap();
        assert!(rep.of_law("QS1").next().is_some());
    }

    #[test]
    fn covers() {
        let q = Quantale::bool2();
        let qc = ch2(&q);
        let x = Carrier::range(2);
        let i = indiscrete_quasi(&x, &qc).unwrap();
        let two = qc.objects().iter().position(|o| o.len() == 2).unwrap();
        let one = qc.objects().iter().position(|o| o.len() == 1).unwrap();
        let alpha = MapArrow::identity(&x);
        let alpha = MapArrow::new(qc.object(two).carrier().clone(), x.clone(), alpha.table().to_vec()).unwrap();
        let eta = is_covered(&i, two, &alpha, &[(two, alpha.clone())]).unwrap().unwrap();
        assert_eq!(eta.table(), &[0, 1]);
        let pt = qc.object(one).carrier().clone();
        let fam = [(one, MapArrow::constant(&pt, &x, 0).unwrap()), (one, MapArrow::constant(&pt, &x, 1).unwrap())];
        assert!(is_covered(&i, two, &alpha, &fam).unwrap().is_some());
        let wrong = [(one, MapArrow::constant(&pt, &x, 0).unwrap()), (one, MapArrow::constant(&pt, &x, 0).unwrap())];
        assert!(is_covered(&i, two, &alpha, &wrong).unwrap().is_none());
        let (fam, eta) = covering_family(&i, two, &alpha, 4).unwrap().unwrap();
        assert_eq!(fam.len(), 1);
        assert!(eta.is_surjective());
    }

    #[test]
    fn singleton_and_adjunctions() {
        let q = Quantale::chain(3).unwrap();
        let qc = ch2(&q);
        let s = singleton_quasi(&qc);
        assert!(validate_quasi(&s).unwrap().passed());
        for i in 0..qc.len() {
            assert_eq!(s.admissible_tables(i).len(), 1);
        }
        let y = associated_quasi(&chain2(&q), &qc).unwrap();
        assert!(discrete_adjunction_report(&Carrier::range(2), &y).unwrap().passed());
        assert!(indiscrete_adjunction_report(&y, &Carrier::range(3)).unwrap().passed());
        assert!(singleton_represents_report(&y).unwrap().passed());
    }

    #[test]
    fn reflections_in_vcat() {
        let q = Quantale::bool2();
        let qc = ch2(&q);
        let x = Carrier::range(3);
        let d = discrete_space(&x, Monad::Identity, &q);
        assert_eq!(reflect_to_cgenerated(&indiscrete_quasi(&x, &qc).unwrap()).unwrap(), d);
        assert_eq!(reflect_to_cgenerated(&discrete_quasi(&x, &qc).unwrap()).unwrap(), d);
        let a = associated_quasi(&d, &qc).unwrap();
        assert_eq!(reflect_to_cgenerated(&a).unwrap(), d);
    }

    #[test]
    fn subspace_product_and_quotient() {
        let q = Quantale::bool2();
        let qc = ch2(&q);
        let x = indiscrete_quasi(&Carrier::range(2), &qc).unwrap();
        let (full, _) = subspace_quasi(&x, &[0, 1]).unwrap();
        assert_eq!(full, x);
        let p = product2_quasi(&x, &x).unwrap();
        assert_eq!(p, indiscrete_quasi(p.carrier(), &qc).unwrap());
        let f = MapArrow::constant(&Carrier::range(2), &Carrier::range(1), 0).unwrap();
        let quo = quotient_quasi(&x, &f).unwrap();
        assert!(validate_quasi(&quo).unwrap().passed());
        let g = MapArrow::constant(&Carrier::range(2), &Carrier::range(2), 0).unwrap();
        assert!(matches!(quotient_quasi(&x, &g), Err(Error::Precondition(_))));
    }

    #[test]
    fn exponential_of_point_base() {
        let q = Quantale::bool2();
        let qc = ch2(&q);
        let one = singleton_quasi(&qc);
        let y = indiscrete_quasi(&Carrier::range(2), &qc).unwrap();
        let e = exponential_quasi(&one, &y).unwrap();
        assert_eq!(e.maps().len(), 2);
        for i in 0..qc.len() {
            assert_eq!(e.quasi.admissible_tables(i), y.admissible_tables(i));
        }
    }
}
