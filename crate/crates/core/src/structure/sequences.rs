use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A monotone subsequence, given by positions in the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monotone {
    pub direction: Direction,
    pub indices: Vec<usize>,
    pub values: Vec<i64>,
}

/// Length-`len` chain of `seq` ordered by `less`, ending as early as possible.
fn chain(seq: &[i64], len: usize, less: impl Fn(i64, i64) -> bool) -> Option<Vec<usize>> {
    let n = seq.len();
    let mut best = vec![1usize; n];
    for i in 0..n {
        for j in 0..i {
            if less(seq[j], seq[i]) && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
            }
        }
    }
    let mut end = (0..n).find(|&i| best[i] >= len)?;
    let mut out = vec![end];
    for want in (1..len).rev() {
        end = (0..end).find(|&j| best[j] >= want && less(seq[j], seq[end]))?;
        out.push(end);
    }
    out.reverse();
    Some(out)
}

/// An increasing subsequence of length `k` or a decreasing one of length `l`.
///
/// Needs at least `(l − 1)(k − 1) + 1` distinct entries, which guarantees one
/// of the two. The increasing one is preferred when both exist.
pub fn erdos_szekeres(seq: &[i64], k: usize, l: usize) -> Result<Monotone> {
    if k == 0 || l == 0 {
        return Err(Error::Parameter("k and l must be positive".into()));
    }
    let need = (l - 1) * (k - 1) + 1;
    if seq.len() < need {
        return Err(Error::Precondition(format!("{} entries, at least {need} required", seq.len())));
    }
    let mut seen = HashSet::new();
    if let Some(d) = seq.iter().find(|&&x| !seen.insert(x)) {
        return Err(Error::Precondition(format!("entry {d} is repeated")));
    }
    let found = chain(seq, k, |a, b| a < b)
        .map(|i| (Direction::Increasing, i))
        .or_else(|| chain(seq, l, |a, b| a > b).map(|i| (Direction::Decreasing, i)));
    let (direction, indices) =
        found.ok_or_else(|| Error::Invariant("no monotone subsequence of the guaranteed length".into()))?;
    Ok(Monotone {
        direction,
        values: indices.iter().map(|&i| seq[i]).collect(),
        indices,
    })
}

/// Checks monotonicity, index order and the length guarantee.
pub fn is_valid_monotone(seq: &[i64], k: usize, l: usize, m: &Monotone) -> bool {
    let len_ok = match m.direction {
        Direction::Increasing => m.indices.len() >= k,
        Direction::Decreasing => m.indices.len() >= l,
    };
    let order_ok = m.indices.windows(2).all(|w| w[0] < w[1]) && m.indices.iter().all(|&i| i < seq.len());
    let values_ok = m.indices.iter().map(|&i| seq[i]).eq(m.values.iter().copied());
    let mono_ok = m.values.windows(2).all(|w| match m.direction {
        Direction::Increasing => w[0] < w[1],
        Direction::Decreasing => w[0] > w[1],
    });
    len_ok && order_ok && values_ok && mono_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let m = erdos_szekeres(&[5, 4, 3, 2, 1], 2, 5).unwrap();
        assert_eq!((m.direction, m.values.len()), (Direction::Decreasing, 5));
        let m = erdos_szekeres(&[1, 2, 3, 4, 5], 5, 2).unwrap();
        assert_eq!((m.direction, m.values.clone()), (Direction::Increasing, vec![1, 2, 3, 4, 5]));
        let m = erdos_szekeres(&[2, 4, 1, 5, 3], 3, 3).unwrap();
        assert_eq!((m.direction, m.values), (Direction::Increasing, vec![2, 4, 5]));
    }

    #[test]
    fn preconditions() {
        assert!(matches!(erdos_szekeres(&[1, 2, 3], 3, 3), Err(Error::Precondition(_))));
        assert!(matches!(erdos_szekeres(&[1, 1, 2, 3, 4], 3, 3), Err(Error::Precondition(_))));
        assert!(matches!(erdos_szekeres(&[1], 0, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn every_permutation_of_threshold_length() {
        // all 120 orderings of 5 = (3 − 1)(3 − 1) + 1 values
        let mut seq = [0i64, 1, 2, 3, 4];
        let mut count = 0;
        permute(&mut seq, 0, &mut |s| {
            let m = erdos_szekeres(s, 3, 3).unwrap();
            assert!(is_valid_monotone(s, 3, 3, &m));
            count += 1;
        });
        assert_eq!(count, 120);
    }

    fn permute(s: &mut [i64], i: usize, f: &mut dyn FnMut(&[i64])) {
        if i == s.len() {
            f(s);
            return;
        }
        for j in i..s.len() {
            s.swap(i, j);
            permute(s, i + 1, f);
            s.swap(i, j);
        }
    }

    #[test]
    fn random_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 1..=6 {
            for l in 1..=6 {
                let n = (l - 1) * (k - 1) + 1;
                let mut v: Vec<i64> = (0..3 * n as i64).collect();
                v.shuffle(&mut rng);
                v.truncate(n);
                let m = erdos_szekeres(&v, k, l).unwrap();
                assert!(is_valid_monotone(&v, k, l, &m));
            }
        }
    }
}
