//! Seeded random instances.

use rand::seq::index::sample;
use rand::Rng;

use crate::colorset::{ColorId, ColorSet};
use crate::graph::{ListAssignment, Request};

/// Independent uniform `sizes[v]`-subsets of `0..pot`.
pub fn random_lists<R: Rng + ?Sized>(sizes: &[usize], pot: usize, rng: &mut R) -> ListAssignment {
    assert!(pot <= ColorSet::CAPACITY && sizes.iter().all(|&s| s <= pot), "list sizes must fit the pot");
    ListAssignment::new(sizes.iter().map(|&k| sample(rng, pot, k).into_iter().map(|c| ColorId(c as u32)).collect()).collect())
}

/// Uniform domain of `domain_size` vertices, each requesting a uniform color
/// from its list.
pub fn random_request<R: Rng + ?Sized>(l: &ListAssignment, domain_size: usize, rng: &mut R) -> Request {
    let n = l.len();
    let pairs: Vec<(usize, ColorId)> = sample(rng, n, domain_size)
        .into_iter()
        .map(|v| {
            let opts = l.list(v).to_vec();
            (v, opts[rng.gen_range(0..opts.len())])
        })
        .collect();
    Request::from_pairs(n, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let l = random_lists(&[2, 3, 1], 5, &mut rng);
        assert_eq!(l.lists().iter().map(|s| s.len()).collect::<Vec<_>>(), [2, 3, 1]);
        assert!(l.pot_size() <= 5);
        let r = random_request(&l, 2, &mut rng);
        assert_eq!(r.domain_size(), 2);
        assert!(r.pairs().all(|(v, c)| l.list(v).contains(c)));
    }
}
