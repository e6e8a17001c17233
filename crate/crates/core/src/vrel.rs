//! V-relations: dense V-valued matrices between finite carriers.

use crate::carrier::{Carrier, MapArrow};
use crate::error::{type_err, unsupported, Result};
use crate::quantale::{Quantale, Value};

/// A V-relation `X ⇸ Y`, stored row-major with rows indexed by `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRel {
    dom: Carrier,
    cod: Carrier,
    q: Quantale,
    entries: Vec<Value>,
}

impl VRel {
    pub fn new(dom: Carrier, cod: Carrier, q: Quantale, entries: Vec<Value>) -> Result<VRel> {
        if entries.len() != dom.len() * cod.len() {
            return Err(crate::error::structural!(
                "matrix has {} entries, expected {}x{}",
                entries.len(),
                dom.len(),
                cod.len()
            ));
        }
        for v in &entries {
            q.check(v)?;
        }
        Ok(VRel { dom, cod, q, entries })
    }

    pub(crate) fn new_unchecked(dom: Carrier, cod: Carrier, q: Quantale, entries: Vec<Value>) -> VRel {
        debug_assert_eq!(entries.len(), dom.len() * cod.len());
        VRel { dom, cod, q, entries }
    }

    pub fn from_rows(dom: Carrier, cod: Carrier, q: Quantale, rows: Vec<Vec<Value>>) -> Result<VRel> {
        if rows.len() != dom.len() || rows.iter().any(|r| r.len() != cod.len()) {
            return Err(crate::error::structural!("matrix must be {}x{}", dom.len(), cod.len()));
        }
        VRel::new(dom, cod, q, rows.into_iter().flatten().collect())
    }

    pub fn constant(dom: &Carrier, cod: &Carrier, q: &Quantale, v: Value) -> VRel {
        VRel::new_unchecked(dom.clone(), cod.clone(), q.clone(), vec![v; dom.len() * cod.len()])
    }

    pub fn bottom(dom: &Carrier, cod: &Carrier, q: &Quantale) -> VRel {
        VRel::constant(dom, cod, q, q.bottom())
    }

    pub fn top(dom: &Carrier, cod: &Carrier, q: &Quantale) -> VRel {
        VRel::constant(dom, cod, q, q.top())
    }

    pub fn identity(x: &Carrier, q: &Quantale) -> VRel {
        VRel::from_map(&MapArrow::identity(x), q)
    }

    /// The graph of `f`: entry `(x, y)` is `k` when `f(x) = y` and `⊥` otherwise.
    pub fn from_map(f: &MapArrow, q: &Quantale) -> VRel {
        let (n, m) = (f.dom().len(), f.cod().len());
        let mut entries = vec![q.bottom(); n * m];
        for i in 0..n {
            entries[i * m + f.apply(i)] = q.unit();
        }
        VRel::new_unchecked(f.dom().clone(), f.cod().clone(), q.clone(), entries)
    }

    pub fn dom(&self) -> &Carrier {
        &self.dom
    }

    pub fn cod(&self) -> &Carrier {
        &self.cod
    }

    pub fn quantale(&self) -> &Quantale {
        &self.q
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Value {
        self.entries[i * self.cod.len() + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: Value) {
        let m = self.cod.len();
        self.entries[i * m + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Value] {
        let m = self.cod.len();
        &self.entries[i * m..(i + 1) * m]
    }

    /// Same matrix over relabelled carriers of equal size.
    pub(crate) fn relabel(&self, dom: &Carrier, cod: &Carrier) -> VRel {
        debug_assert!(dom.len() == self.dom.len() && cod.len() == self.cod.len());
        VRel::new_unchecked(dom.clone(), cod.clone(), self.q.clone(), self.entries.clone())
    }

    fn same_shape(&self, other: &VRel) -> Result<()> {
        if self.q != other.q {
            return Err(type_err!("relations over different quantales ({} vs {})", self.q, other.q));
        }
        if self.dom != other.dom || self.cod != other.cod {
            return Err(type_err!("relations of different shapes"));
        }
        Ok(())
    }

    /// `s · self`: `(s·r)(x,z) = ⋁_y r(x,y) ⊗ s(y,z)`.
    pub fn then(&self, s: &VRel) -> Result<VRel> {
        if self.q != s.q {
            return Err(type_err!("relations over different quantales ({} vs {})", self.q, s.q));
        }
        if self.cod != s.dom {
            return Err(type_err!("cannot compose: codomain {} differs from domain {}", self.cod, s.dom));
        }
        let (n, k, m) = (self.dom.len(), self.cod.len(), s.cod.len());
        let q = &self.q;
        let bot = q.bottom();
        let mut out = vec![bot; n * m];
        for x in 0..n {
            for y in 0..k {
                let r = self.entries[x * k + y];
                if r == bot {
                    continue;
                }
                for z in 0..m {
                    let cell = &mut out[x * m + z];
                    *cell = q.jn(*cell, q.mul(r, s.entries[y * m + z]));
                }
            }
        }
        Ok(VRel::new_unchecked(self.dom.clone(), s.cod.clone(), q.clone(), out))
    }

    pub fn transpose(&self) -> VRel {
        let (n, m) = (self.dom.len(), self.cod.len());
        let mut out = Vec::with_capacity(n * m);
        for j in 0..m {
            for i in 0..n {
                out.push(self.entries[i * m + j]);
            }
        }
        VRel::new_unchecked(self.cod.clone(), self.dom.clone(), self.q.clone(), out)
    }

    pub fn leq(&self, other: &VRel) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| self.q.le(*a, *b)))
    }

    /// First cell where `self ≤ other` fails.
    pub fn first_excess(&self, other: &VRel) -> Result<Option<(usize, usize)>> {
        self.same_shape(other)?;
        let m = self.cod.len();
        Ok(self.entries.iter().zip(&other.entries).position(|(a, b)| !self.q.le(*a, *b)).map(|p| (p / m, p % m)))
    }

    pub fn join(&self, other: &VRel) -> Result<VRel> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |q, a, b| q.jn(a, b)))
    }

    pub fn meet(&self, other: &VRel) -> Result<VRel> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |q, a, b| q.mt(a, b)))
    }

    fn zip_with(&self, other: &VRel, f: impl Fn(&Quantale, Value, Value) -> Value) -> VRel {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(&self.q, *a, *b)).collect();
        VRel::new_unchecked(self.dom.clone(), self.cod.clone(), self.q.clone(), entries)
    }

    fn require_closure(&self) -> Result<()> {
        if self.dom != self.cod {
            return Err(type_err!("closure needs a square relation"));
        }
        if !self.q.is_integral() {
            return Err(unsupported!("reflexive-transitive closure needs an integral quantale, {} is not", self.q));
        }
        Ok(())
    }

    /// Least reflexive transitive relation above `self`, by one Floyd–Warshall sweep after
    /// joining in the identity. Exact for integral quantales, where `u ⊗ v ≤ u ∧ v` means
    /// paths revisiting a node never improve.
    pub fn reflexive_transitive_closure(&self) -> Result<VRel> {
        self.require_closure()?;
        let n = self.dom.len();
        let q = &self.q;
        let mut c = self.entries.clone();
        for i in 0..n {
            c[i * n + i] = q.jn(c[i * n + i], q.unit());
        }
        let bot = q.bottom();
        for p in 0..n {
            for x in 0..n {
                let xp = c[x * n + p];
                if xp == bot {
                    continue;
                }
                for y in 0..n {
                    let via = q.mul(xp, c[p * n + y]);
                    c[x * n + y] = q.jn(c[x * n + y], via);
                }
            }
        }
        Ok(VRel::new_unchecked(self.dom.clone(), self.cod.clone(), q.clone(), c))
    }

    /// Same closure by iterating `b ← b ∨ b·b` from `r ∨ 1` until stable.
    pub fn reflexive_transitive_closure_naive(&self) -> Result<VRel> {
        self.require_closure()?;
        let mut b = self.join(&VRel::identity(&self.dom, &self.q))?;
        loop {
            let next = b.join(&b.then(&b)?)?;
            if next == b {
                return Ok(b);
            }
            b = next;
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.dom.len()).all(|i| self.q.le(self.q.unit(), self.get(i, i)))
    }

    /// The same (square) matrix read through the bijections given by the two maps:
    /// entry `(i, j)` of the result is `self(f(i), g(j))`.
    pub fn reindex(&self, f: &MapArrow, g: &MapArrow) -> Result<VRel> {
        if f.cod() != &self.dom || g.cod() != &self.cod {
            return Err(type_err!("reindexing maps do not land in the relation's carriers"));
        }
        let (n, m) = (f.dom().len(), g.dom().len());
        let mut out = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                out.push(self.get(f.apply(i), g.apply(j)));
            }
        }
        Ok(VRel::new_unchecked(f.dom().clone(), g.dom().clone(), self.q.clone(), out))
    }
}

/// `compose(r, s) = s · r` for `r: X ⇸ Y`, `s: Y ⇸ Z`.
pub fn compose(r: &VRel, s: &VRel) -> Result<VRel> {
    r.then(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Value {
        Value::cost(n)
    }

    #[test]
    fn cost_plus_compose() {
        let q = Quantale::cost_plus();
        let x = Carrier::range(2);
        let r = VRel::new(x.clone(), x.clone(), q.clone(), vec![c(0), c(1), Value::INFINITY, c(0)]).unwrap();
        assert_eq!(r.then(&r).unwrap(), r);
    }

    #[test]
    fn join_meet_cost_plus() {
        let q = Quantale::cost_plus();
        let one = Carrier::range(1);
        let two = Carrier::range(2);
        let a = VRel::new(one.clone(), two.clone(), q.clone(), vec![c(0), c(5)]).unwrap();
        let b = VRel::new(one, two, q, vec![c(3), c(1)]).unwrap();
        assert_eq!(a.join(&b).unwrap().entries(), &[c(0), c(1)]);
        assert_eq!(a.meet(&b).unwrap().entries(), &[c(3), c(5)]);
    }

    #[test]
    fn closure_shortens_path() {
        let q = Quantale::cost_plus();
        let x = Carrier::range(3);
        let i = Value::INFINITY;
        let r = VRel::new(x.clone(), x, q, vec![c(0), c(1), c(5), i, c(0), c(1), i, i, c(0)]).unwrap();
        let cl = r.reflexive_transitive_closure().unwrap();
        assert_eq!(cl.get(0, 2), c(2));
        assert_eq!(cl, r.reflexive_transitive_closure_naive().unwrap());
    }

    #[test]
    fn closure_requires_integral() {
        let labels = vec!["bot".to_string(), "k".to_string(), "top".to_string()];
        let order: Vec<Vec<bool>> = (0..3).map(|i| (0..3).map(|j| i <= j).collect()).collect();
        let tensor = vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]];
        let q = Quantale::finite_table(labels, &order, &tensor, 1).unwrap();
        let x = Carrier::range(1);
        assert!(matches!(VRel::identity(&x, &q).reflexive_transitive_closure(), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn from_map_is_functorial() {
        let q = Quantale::chain(3).unwrap();
        let x = Carrier::range(3);
        let f = MapArrow::new(x.clone(), x.clone(), vec![1, 2, 2]).unwrap();
        let g = MapArrow::new(x.clone(), x, vec![0, 0, 1]).unwrap();
        let lhs = VRel::from_map(&f, &q).then(&VRel::from_map(&g, &q)).unwrap();
        assert_eq!(lhs, VRel::from_map(&f.then(&g).unwrap(), &q));
    }
}
