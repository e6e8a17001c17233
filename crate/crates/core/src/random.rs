//! Random relations and spaces for property tests and batteries.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::carrier::Carrier;
use crate::error::{unsupported, Result};
use crate::monad::Monad;
use crate::quantale::{Quantale, Value};
use crate::space::Space;
use crate::vrel::VRel;

/// Values to sample from: all elements for finite kinds, a small rational grid with `∞`
/// for the cost kinds.
pub fn sample_values(q: &Quantale) -> Vec<Value> {
    q.elements().unwrap_or_else(|| {
        let mut v: Vec<Value> = (0..=8).map(|k| Value::cost_ratio(k, 2)).collect();
        v.push(Value::INFINITY);
        v
    })
}

/// A square relation with independent entries; `bottom_weight` in `[0,1]` is the
/// probability of a `⊥` entry.
pub fn random_relation<R: Rng + ?Sized>(rng: &mut R, n: usize, q: &Quantale, bottom_weight: f64) -> VRel {
    let vals = sample_values(q);
    let x = Carrier::range(n);
    let entries = (0..n * n)
        .map(|_| if rng.gen_bool(bottom_weight) { q.bottom() } else { *vals.choose(rng).expect("nonempty") })
        .collect();
    VRel::new_unchecked(x.clone(), x, q.clone(), entries)
}

/// A valid space: the reflexive-transitive closure of a random relation. Needs an
/// integral quantale and an identity-like monad.
pub fn random_space<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    monad: Monad,
    q: &Quantale,
    bottom_weight: f64,
) -> Result<Space> {
    if !q.is_integral() {
        return Err(unsupported!("random spaces are built by closure, which needs an integral quantale"));
    }
    let r = random_relation(rng, n, q, bottom_weight);
    Space::from_points(monad, r.reflexive_transitive_closure()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::validate_space;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_spaces_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [
            Quantale::bool2(),
            Quantale::chain(4).unwrap(),
            Quantale::cost_plus(),
            Quantale::lukasiewicz_grid(3).unwrap(),
        ] {
            for n in 0..5 {
                let s = random_space(&mut rng, n, Monad::UltrafilterFinite, &q, 0.3).unwrap();
                assert!(validate_space(&s).passed());
            }
        }
    }
}
