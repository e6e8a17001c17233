//! Finite carriers with labelled points, and total maps between them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{structural, type_err, Result};

#[derive(Debug)]
struct CarrierInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered list of distinct labels. Two carriers are equal when their label lists are.
#[derive(Debug, Clone)]
pub struct Carrier(Arc<CarrierInner>);

impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}
impl Eq for Carrier {}

impl std::hash::Hash for Carrier {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.labels.hash(state);
    }
}

impl Carrier {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Carrier> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(structural!("duplicate carrier label {l:?}"));
            }
        }
        Ok(Carrier(Arc::new(CarrierInner { labels, index })))
    }

    /// Carrier with labels `0, 1, …, n-1`.
    pub fn range(n: usize) -> Carrier {
        Carrier::new((0..n).map(|i| i.to_string())).expect("distinct labels")
    }

    pub fn empty() -> Carrier {
        Carrier::range(0)
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    /// Same points, each label prefixed (used for the carriers `TX`).
    pub fn prefixed(&self, prefix: &str) -> Carrier {
        Carrier::new(self.0.labels.iter().map(|l| format!("{prefix}{l}"))).expect("prefixing keeps labels distinct")
    }

    /// Pairs `(a,b)` in row-major order: index `i * |other| + j`.
    pub fn product(&self, other: &Carrier) -> Carrier {
        let mut labels = Vec::with_capacity(self.len() * other.len());
        for a in self.labels() {
            for b in other.labels() {
                labels.push(format!("({a},{b})"));
            }
        }
        Carrier::new(labels).expect("pair labels are distinct")
    }

    /// Disjoint union with labels `i:a` for summand `i`.
    pub fn coproduct(parts: &[Carrier]) -> Carrier {
        let labels = parts.iter().enumerate().flat_map(|(i, c)| c.labels().iter().map(move |l| format!("{i}:{l}")));
        Carrier::new(labels).expect("tagged labels are distinct")
    }

    /// Offsets of each summand inside [`Carrier::coproduct`].
    pub fn coproduct_offsets(parts: &[Carrier]) -> Vec<usize> {
        let mut acc = 0;
        parts
            .iter()
            .map(|c| {
                let o = acc;
                acc += c.len();
                o
            })
            .collect()
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.labels.join(" "))
    }
}

/// A total function between carriers, stored as the image index of each point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapArrow {
    dom: Carrier,
    cod: Carrier,
    table: Vec<usize>,
}

impl MapArrow {
    pub fn new(dom: Carrier, cod: Carrier, table: Vec<usize>) -> Result<MapArrow> {
        if table.len() != dom.len() {
            return Err(structural!("map table has {} entries but the domain has {} points", table.len(), dom.len()));
        }
        if let Some((i, &y)) = table.iter().enumerate().find(|(_, &y)| y >= cod.len()) {
            return Err(structural!("image {y} of point {} is outside the codomain", dom.label(i)));
        }
        Ok(MapArrow { dom, cod, table })
    }

    pub(crate) fn new_unchecked(dom: Carrier, cod: Carrier, table: Vec<usize>) -> MapArrow {
        debug_assert!(table.len() == dom.len() && table.iter().all(|&y| y < cod.len()));
        MapArrow { dom, cod, table }
    }

    /// Build from `(point, image)` label pairs, which must cover the domain exactly once.
    pub fn from_pairs<'a>(
        dom: Carrier,
        cod: Carrier,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<MapArrow> {
        let mut table = vec![usize::MAX; dom.len()];
        for (a, b) in pairs {
            let i = dom.index_of(a).ok_or_else(|| structural!("{a:?} is not in the domain"))?;
            let j = cod.index_of(b).ok_or_else(|| structural!("{b:?} is not in the codomain"))?;
            if table[i] != usize::MAX {
                return Err(structural!("point {a:?} is mapped twice"));
            }
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&y| y == usize::MAX) {
            return Err(structural!("map is not total: {:?} has no image", dom.label(i)));
        }
        Ok(MapArrow { dom, cod, table })
    }

    pub fn identity(x: &Carrier) -> MapArrow {
        MapArrow { dom: x.clone(), cod: x.clone(), table: (0..x.len()).collect() }
    }

    pub fn constant(dom: &Carrier, cod: &Carrier, y: usize) -> Result<MapArrow> {
        MapArrow::new(dom.clone(), cod.clone(), vec![y; dom.len()])
    }

    pub fn dom(&self) -> &Carrier {
        &self.dom
    }

    pub fn cod(&self) -> &Carrier {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &MapArrow) -> Result<MapArrow> {
        if self.cod != g.dom {
            return Err(type_err!("cannot compose: codomain {} differs from domain {}", self.cod, g.dom));
        }
        Ok(MapArrow {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            table: self.table.iter().map(|&y| g.table[y]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        self.table.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    /// Constant maps include every map out of the empty carrier.
    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    /// Label of the form `[y0,y1,…]` listing images in domain order.
    pub fn graph_label(&self) -> String {
        let parts: Vec<&str> = self.table.iter().map(|&y| self.cod.label(y)).collect();
        format!("[{}]", parts.join(","))
    }

    /// `⟨f, g⟩ : X → Y × Z`.
    pub fn pairing(f: &MapArrow, g: &MapArrow) -> Result<MapArrow> {
        if f.dom != g.dom {
            return Err(type_err!("pairing needs a common domain"));
        }
        let cod = f.cod.product(&g.cod);
        let m = g.cod.len();
        let table = (0..f.dom.len()).map(|i| f.table[i] * m + g.table[i]).collect();
        Ok(MapArrow { dom: f.dom.clone(), cod, table })
    }

    /// `f × g : X × Y → X' × Y'`.
    pub fn product(f: &MapArrow, g: &MapArrow) -> MapArrow {
        let dom = f.dom.product(&g.dom);
        let cod = f.cod.product(&g.cod);
        let (n, m) = (g.dom.len(), g.cod.len());
        let table = (0..dom.len()).map(|i| f.table[i / n] * m + g.table[i % n]).collect();
        MapArrow { dom, cod, table }
    }
}

impl fmt::Display for MapArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            (0..self.dom.len()).map(|i| format!("{}->{}", self.dom.label(i), self.cod.label(self.table[i]))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Projections `X × Y → X` and `X × Y → Y`.
pub fn projections(x: &Carrier, y: &Carrier) -> (MapArrow, MapArrow) {
    let xy = x.product(y);
    let m = y.len();
    let p1 = MapArrow::new_unchecked(xy.clone(), x.clone(), (0..xy.len()).map(|i| i / m).collect());
    let p2 = MapArrow::new_unchecked(xy.clone(), y.clone(), (0..xy.len()).map(|i| i % m).collect());
    (p1, p2)
}

/// All maps `X → Y` in lexicographic order of their tables (last point varies fastest).
pub struct AllMaps {
    dom: Carrier,
    cod: Carrier,
    next: Option<Vec<usize>>,
}

impl AllMaps {
    pub fn new(dom: &Carrier, cod: &Carrier) -> AllMaps {
        let next = if cod.is_empty() && !dom.is_empty() { None } else { Some(vec![0; dom.len()]) };
        AllMaps { dom: dom.clone(), cod: cod.clone(), next }
    }

    /// `|Y|^|X|`, or `None` on overflow.
    pub fn count(dom: &Carrier, cod: &Carrier) -> Option<u64> {
        (cod.len() as u64).checked_pow(u32::try_from(dom.len()).ok()?)
    }
}

impl Iterator for AllMaps {
    type Item = MapArrow;

    fn next(&mut self) -> Option<MapArrow> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let m = self.cod.len();
        let mut i = succ.len();
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < m {
                advanced = true;
                break;
            }
            succ[i] = 0;
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(MapArrow::new_unchecked(self.dom.clone(), self.cod.clone(), cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        assert!(Carrier::new(["a", "a"]).is_err());
    }

    #[test]
    fn all_maps_counts() {
        let x = Carrier::range(2);
        let y = Carrier::range(3);
        assert_eq!(AllMaps::new(&x, &y).count(), 9);
        assert_eq!(AllMaps::new(&Carrier::empty(), &y).count(), 1);
        assert_eq!(AllMaps::new(&x, &Carrier::empty()).count(), 0);
        assert_eq!(AllMaps::new(&Carrier::empty(), &Carrier::empty()).count(), 1);
    }

    #[test]
    fn from_pairs_requires_totality() {
        let x = Carrier::new(["a", "b"]).unwrap();
        let y = Carrier::new(["c"]).unwrap();
        assert!(MapArrow::from_pairs(x.clone(), y.clone(), [("a", "c")]).is_err());
        let f = MapArrow::from_pairs(x, y, [("a", "c"), ("b", "c")]).unwrap();
        assert!(f.is_constant() && f.is_surjective());
        assert_eq!(f.graph_label(), "[c,c]");
    }

    #[test]
    fn product_map_matches_pairing() {
        let x = Carrier::range(2);
        let y = Carrier::range(3);
        let f = MapArrow::new(x.clone(), y.clone(), vec![2, 0]).unwrap();
        let g = MapArrow::new(y.clone(), x.clone(), vec![1, 1, 0]).unwrap();
        let fg = MapArrow::product(&f, &g);
        let (p1, p2) = projections(&x, &y);
        let alt = MapArrow::pairing(&p1.then(&f).unwrap(), &p2.then(&g).unwrap()).unwrap();
        assert_eq!(fg, alt);
    }
}
