use super::{require_identity_like, Space};
use crate::carrier::{projections, Carrier, MapArrow};
use crate::error::{precondition, structural, type_err, unsupported, Result};
use crate::monad::Monad;
use crate::quantale::Quantale;
use crate::vrel::VRel;

/// A source `(f_i : X → Y_i)` of maps out of a common carrier.
pub type Source<'a> = [(MapArrow, &'a Space)];
/// A sink `(f_i : X_i → X)` of maps into a common carrier.
pub type Sink<'a> = [(MapArrow, &'a Space)];

fn check_member(s: &Space, monad: Monad, q: &Quantale) -> Result<()> {
    if s.monad() != monad || s.quantale() != q {
        return Err(type_err!(
            "space over ({}, {}) in a ({}, {}) construction",
            s.monad().name(),
            s.quantale(),
            monad.name(),
            q
        ));
    }
    Ok(())
}

/// The initial structure `⋀_i f_i° · b_i · Tf_i`; the empty source gives the indiscrete space.
pub fn initial_structure(x: &Carrier, monad: Monad, q: &Quantale, source: &Source) -> Result<Space> {
    let tx = monad.t_carrier(x);
    let mut a = VRel::top(&tx, x, q);
    for (f, y) in source {
        check_member(y, monad, q)?;
        if f.dom() != x || f.cod() != y.carrier() {
            return Err(type_err!("source map {} → {} does not fit {} → {}", f.dom(), f.cod(), x, y.carrier()));
        }
        let tf = monad.t_map(f);
        let b = y.structure();
        for s in 0..tx.len() {
            for i in 0..x.len() {
                let v = q.mt(a.get(s, i), b.get(tf.apply(s), f.apply(i)));
                a.set(s, i, v);
            }
        }
    }
    Space::new(x.clone(), monad, a)
}

/// The final structure of a sink: the reflexive-transitive closure of `⋁_i f_i · α_i · f_i°`
/// on point matrices. Needs an identity-like monad and an integral quantale; the empty
/// sink gives the discrete space.
pub fn final_structure(x: &Carrier, monad: Monad, q: &Quantale, sink: &Sink) -> Result<Space> {
    require_identity_like(monad)?;
    if !q.is_integral() {
        return Err(unsupported!("final structures need an integral quantale, {q} is not"));
    }
    let mut alpha = VRel::bottom(x, x, q);
    for (f, xi) in sink {
        check_member(xi, monad, q)?;
        if f.cod() != x || f.dom() != xi.carrier() {
            return Err(type_err!("sink map {} → {} does not fit {} → {}", f.dom(), f.cod(), xi.carrier(), x));
        }
        join_image(&mut alpha, f, &xi.point_matrix());
    }
    Space::from_points(monad, alpha.reflexive_transitive_closure()?)
}

/// `alpha ← alpha ∨ f · beta · f°`.
pub(crate) fn join_image(alpha: &mut VRel, f: &MapArrow, beta: &VRel) {
    let q = alpha.quantale().clone();
    let n = f.dom().len();
    for c in 0..n {
        for d in 0..n {
            let (i, j) = (f.apply(c), f.apply(d));
            let v = q.jn(alpha.get(i, j), beta.get(c, d));
            alpha.set(i, j, v);
        }
    }
}

/// The subspace on the points `subset` (in the given order), with its inclusion.
pub fn subspace(x: &Space, subset: &[usize]) -> Result<(Space, MapArrow)> {
    for (k, &i) in subset.iter().enumerate() {
        if i >= x.len() {
            return Err(precondition!("point index {i} is not in the carrier {}", x.carrier()));
        }
        if subset[..k].contains(&i) {
            return Err(structural!("point {} listed twice in the subset", x.carrier().label(i)));
        }
    }
    let a_carrier = Carrier::new(subset.iter().map(|&i| x.carrier().label(i).to_string()))?;
    let incl = MapArrow::new(a_carrier.clone(), x.carrier().clone(), subset.to_vec())?;
    let s = initial_structure(&a_carrier, x.monad(), x.quantale(), &[(incl.clone(), x)])?;
    Ok((s, incl))
}

/// Binary product: the initial structure along both projections.
pub fn product(x: &Space, y: &Space) -> Result<Space> {
    x.same_setting(y)?;
    let (p1, p2) = projections(x.carrier(), y.carrier());
    let xy = p1.dom().clone();
    initial_structure(&xy, x.monad(), x.quantale(), &[(p1, x), (p2, y)])
}

/// Coproduct of a nonempty list: block structure with `⊥` across summands.
/// Points are labelled `i:a` for summand `i`.
pub fn coproduct(parts: &[&Space]) -> Result<Space> {
    let first = parts.first().ok_or_else(|| precondition!("coproduct needs at least one summand"))?;
    for p in parts {
        first.same_setting(p)?;
    }
    require_identity_like(first.monad())?;
    let carriers: Vec<Carrier> = parts.iter().map(|p| p.carrier().clone()).collect();
    let offsets = Carrier::coproduct_offsets(&carriers);
    let u = Carrier::coproduct(&carriers);
    let q = first.quantale();
    let mut alpha = VRel::bottom(&u, &u, q);
    for (p, &o) in parts.iter().zip(&offsets) {
        let pm = p.point_matrix();
        for i in 0..p.len() {
            for j in 0..p.len() {
                alpha.set(o + i, o + j, pm.get(i, j));
            }
        }
    }
    Space::from_points(first.monad(), alpha)
}

/// Coproduct injections, matching [`coproduct`].
pub fn coproduct_injections(parts: &[&Space], sum: &Space) -> Vec<MapArrow> {
    let carriers: Vec<Carrier> = parts.iter().map(|p| p.carrier().clone()).collect();
    let offsets = Carrier::coproduct_offsets(&carriers);
    carriers
        .iter()
        .zip(offsets)
        .map(|(c, o)| MapArrow::new_unchecked(c.clone(), sum.carrier().clone(), (o..o + c.len()).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::{discrete_space, indiscrete_space, is_continuous, is_fully_faithful, validate_space};
    use super::*;
    use crate::quantale::Value;

    fn chain2(q: &Quantale) -> Space {
        let (t, b) = (q.top(), q.bottom());
        Space::from_matrix(Carrier::range(2), Monad::Identity, q.clone(), vec![t, t, b, t]).unwrap()
    }

    #[test]
    fn empty_source_and_sink() {
        let q = Quantale::bool2();
        let x = Carrier::range(2);
        assert_eq!(initial_structure(&x, Monad::Identity, &q, &[]).unwrap(), indiscrete_space(&x, Monad::Identity, &q));
        assert_eq!(final_structure(&x, Monad::Identity, &q, &[]).unwrap(), discrete_space(&x, Monad::Identity, &q));
    }

    #[test]
    fn identity_source_and_sink() {
        let q = Quantale::chain(3).unwrap();
        let s = chain2(&q);
        let id = MapArrow::identity(s.carrier());
        assert_eq!(initial_structure(s.carrier(), Monad::Identity, &q, &[(id.clone(), &s)]).unwrap(), s);
        assert_eq!(final_structure(s.carrier(), Monad::Identity, &q, &[(id, &s)]).unwrap(), s);
    }

    #[test]
    fn quotient_of_chain_collapsing_endpoints() {
        let q = Quantale::bool2();
        let s = chain2(&q);
        let pt = Carrier::range(1);
        let f = MapArrow::constant(s.carrier(), &pt, 0).unwrap();
        let fin = final_structure(&pt, Monad::Identity, &q, &[(f, &s)]).unwrap();
        assert_eq!(fin.structure().entries(), &[q.top()]);
    }

    #[test]
    fn subspace_examples() {
        let q = Quantale::cost_plus();
        let x = Space::from_matrix(
            Carrier::range(3),
            Monad::Identity,
            q.clone(),
            [0, 1, 2, 1, 0, 1, 2, 1, 0].iter().map(|&n| Value::cost(n)).collect(),
        )
        .unwrap();
        let (full, incl) = subspace(&x, &[0, 1, 2]).unwrap();
        assert_eq!(full, x);
        assert!(is_fully_faithful(&incl, &full, &x).unwrap());
        let (empty, _) = subspace(&x, &[]).unwrap();
        assert!(empty.is_empty() && validate_space(&empty).passed());
        let (one, _) = subspace(&x, &[2]).unwrap();
        assert_eq!(one.structure().entries(), &[Value::cost(0)]);
        assert!(subspace(&x, &[3]).is_err());
    }

    #[test]
    fn product_of_chains_is_product_order() {
        let q = Quantale::bool2();
        let s = chain2(&q);
        let p = product(&s, &s).unwrap();
        assert!(validate_space(&p).passed());
        let pm = p.point_matrix();
        for i in 0..4 {
            for j in 0..4 {
                let le = (i / 2 <= j / 2) && (i % 2 <= j % 2);
                assert_eq!(pm.get(i, j) == q.top(), le);
            }
        }
    }

    #[test]
    fn coproduct_of_points_is_infinitely_far() {
        let q = Quantale::cost_plus();
        let pt = discrete_space(&Carrier::range(1), Monad::Identity, &q);
        let s = coproduct(&[&pt, &pt]).unwrap();
        assert_eq!(s.structure().get(0, 1), Value::INFINITY);
        assert_eq!(s.carrier().labels(), &["0:0", "1:0"]);
        for j in coproduct_injections(&[&pt, &pt], &s) {
            assert!(is_continuous(&j, &pt, &s).unwrap());
        }
    }
}
