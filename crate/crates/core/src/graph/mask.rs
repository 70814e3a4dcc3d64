//! Helpers for 64-bit vertex masks used by the exact algorithms.

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn lowest(mask: u64) -> Option<usize> {
    if mask == 0 {
        None
    } else {
        Some(mask.trailing_zeros() as usize)
    }
}

pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Union of the neighbourhoods of the vertices in `set`.
#[inline]
pub fn neighbourhood(adj: &[u64], set: u64) -> u64 {
    bits(set).fold(0, |acc, v| acc | adj[v])
}

/// Vertices reachable from `start` using only vertices of `within` (start included).
pub fn reach(adj: &[u64], start: u64, within: u64) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let next = neighbourhood(adj, frontier) & within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

pub fn is_connected(adj: &[u64], set: u64) -> bool {
    match lowest(set) {
        None => true,
        Some(v) => reach(adj, bit(v), set) == set,
    }
}
