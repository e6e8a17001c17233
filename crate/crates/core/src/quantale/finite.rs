use crate::error::{structural, Result};

/// Which presentation produced a finite table; kept so that printing reproduces the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableOrigin {
    Bool2,
    Chain(usize),
    Custom,
}

/// A finite quantale given by its order and tensor tables. Join, meet, bottom, top,
/// residuation and Heyting implication are derived once at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    pub(crate) origin: TableOrigin,
    pub(crate) labels: Vec<String>,
    pub(crate) n: usize,
    pub(crate) order: Vec<bool>,
    pub(crate) tensor: Vec<usize>,
    pub(crate) unit: usize,
    pub(crate) join: Vec<usize>,
    pub(crate) meet: Vec<usize>,
    pub(crate) bottom: usize,
    pub(crate) top: usize,
    pub(crate) hom: Vec<usize>,
    pub(crate) imp: Vec<usize>,
}

impl FiniteTable {
    pub(crate) fn new(
        origin: TableOrigin,
        labels: Vec<String>,
        order: &[Vec<bool>],
        tensor: &[Vec<usize>],
        unit: usize,
    ) -> Result<FiniteTable> {
        let n = labels.len();
        if n == 0 {
            return Err(structural!("finite quantale needs at least one element"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(structural!("duplicate quantale element label {l:?}"));
            }
        }
        if order.len() != n || order.iter().any(|r| r.len() != n) {
            return Err(structural!("order table must be {n}x{n}"));
        }
        if tensor.len() != n || tensor.iter().any(|r| r.len() != n) {
            return Err(structural!("tensor table must be {n}x{n}"));
        }
        if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| tensor[i][j] >= n) {
            return Err(structural!(
                "tensor entry ({},{}) = {} is not an element index",
                labels[i],
                labels[j],
                tensor[i][j]
            ));
        }
        if unit >= n {
            return Err(structural!("unit index {unit} out of range"));
        }
        let ord: Vec<bool> = order.iter().flatten().copied().collect();
        let le = |i: usize, j: usize| ord[i * n + j];
        for i in 0..n {
            if !le(i, i) {
                return Err(structural!("order is not reflexive at {}", labels[i]));
            }
            for j in 0..n {
                if i != j && le(i, j) && le(j, i) {
                    return Err(structural!("order is not antisymmetric at ({},{})", labels[i], labels[j]));
                }
                for k in 0..n {
                    if le(i, j) && le(j, k) && !le(i, k) {
                        return Err(structural!(
                            "order is not transitive at ({},{},{})",
                            labels[i],
                            labels[j],
                            labels[k]
                        ));
                    }
                }
            }
        }
        let least_of = |cands: &[usize]| cands.iter().copied().find(|&c| cands.iter().all(|&d| le(c, d)));
        let greatest_of = |cands: &[usize]| cands.iter().copied().find(|&c| cands.iter().all(|&d| le(d, c)));
        let all: Vec<usize> = (0..n).collect();
        let bottom = least_of(&all).ok_or_else(|| structural!("order has no bottom element"))?;
        let top = greatest_of(&all).ok_or_else(|| structural!("order has no top element"))?;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&w| le(i, w) && le(j, w)).collect();
                let lb: Vec<usize> = (0..n).filter(|&w| le(w, i) && le(w, j)).collect();
                join[i * n + j] = least_of(&ub).ok_or_else(|| {
                    structural!("order is not a lattice: {} and {} have no join", labels[i], labels[j])
                })?;
                meet[i * n + j] = greatest_of(&lb).ok_or_else(|| {
                    structural!("order is not a lattice: {} and {} have no meet", labels[i], labels[j])
                })?;
            }
        }
        let tens: Vec<usize> = tensor.iter().flatten().copied().collect();
        let sup = |set: &mut dyn Iterator<Item = usize>| set.fold(bottom, |acc, w| join[acc * n + w]);
        let mut hom = vec![0; n * n];
        let mut imp = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                hom[u * n + v] = sup(&mut (0..n).filter(|&w| le(tens[w * n + u], v)));
                imp[u * n + v] = sup(&mut (0..n).filter(|&w| le(meet[w * n + u], v)));
            }
        }
        Ok(FiniteTable { origin, labels, n, order: ord, tensor: tens, unit, join, meet, bottom, top, hom, imp })
    }

    pub(crate) fn chain(n: usize) -> Result<FiniteTable> {
        if n < 2 {
            return Err(structural!("a chain quantale needs at least 2 elements"));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let order: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        let tensor: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i.min(j)).collect()).collect();
        let origin = if n == 2 { TableOrigin::Bool2 } else { TableOrigin::Chain(n) };
        FiniteTable::new(origin, labels, &order, &tensor, n - 1)
    }

    #[inline]
    pub(crate) fn le(&self, i: usize, j: usize) -> bool {
        self.order[i * self.n + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn origin(&self) -> TableOrigin {
        self.origin
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn order_table(&self) -> Vec<Vec<bool>> {
        self.order.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn tensor_table(&self) -> Vec<Vec<usize>> {
        self.tensor.chunks(self.n).map(|c| c.to_vec()).collect()
    }
}
