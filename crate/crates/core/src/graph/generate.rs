use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families understood by [`generate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Complete { n: usize },
    CompleteBipartite { p: usize, q: usize },
    /// Two `r`-vertex paths joined by `r` length-two rungs.
    Xi { r: usize },
    Cycle { n: usize },
    Path { n: usize },
    /// `K_{1,n}`: centre 0 and `n` leaves.
    Star { n: usize },
    Grid { rows: usize, cols: usize },
    DisjointCopies { k: usize, base: Box<Family> },
    RandomGnp { n: usize, p: f64, seed: u64 },
    RandomTernaryTree { n: usize, seed: u64 },
    /// Random graph of pathwidth at most two, see [`random_pw2_with_bags`].
    RandomPw2 { n: usize, seed: u64 },
}

fn positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        Err(Error::Parameter(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// Builds the graph of the given family. Random families are pure functions of their seed.
pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::Complete { n } => {
            positive("n", n)?;
            Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        }
        Family::CompleteBipartite { p, q } => {
            positive("p", p)?;
            positive("q", q)?;
            Graph::new(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))))
        }
        Family::Xi { r } => {
            positive("r", r)?;
            let rows = (0..r.saturating_sub(1)).flat_map(|i| [(i, i + 1), (2 * r + i, 2 * r + i + 1)]);
            let rungs = (0..r).flat_map(|i| [(i, r + i), (r + i, 2 * r + i)]);
            Graph::new(3 * r, rows.chain(rungs))
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::Parameter("a cycle needs at least 3 vertices".into()));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Path { n } => {
            positive("n", n)?;
            Graph::new(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Star { n } => {
            positive("n", n)?;
            Graph::new(n + 1, (1..=n).map(|i| (0, i)))
        }
        Family::Grid { rows, cols } => {
            positive("rows", rows)?;
            positive("cols", cols)?;
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            Graph::new(rows * cols, edges)
        }
        Family::DisjointCopies { k, ref base } => {
            positive("k", k)?;
            let base = generate(base)?;
            let mut g = Graph::empty(0);
            for _ in 0..k {
                g = g.disjoint_union(&base);
            }
            Ok(g)
        }
        Family::RandomGnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Parameter(format!("probability {p} outside [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, edges)
        }
        Family::RandomTernaryTree { n, seed } => {
            positive("n", n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut degree = vec![0usize; n];
            let mut open: Vec<usize> = vec![0];
            let mut edges = Vec::new();
            for v in 1..n {
                let slot = rng.gen_range(0..open.len());
                let parent = open[slot];
                edges.push((parent, v));
                degree[parent] += 1;
                degree[v] += 1;
                if degree[parent] == 3 {
                    open.swap_remove(slot);
                }
                open.push(v);
            }
            Graph::new(n, edges)
        }
        Family::RandomPw2 { n, seed } => Ok(random_pw2_with_bags(n, seed)?.0),
    }
}

/// Random graph with a width-≤2 path decomposition built left to right.
///
/// A window of at most two live vertices slides over `0..n`; each new vertex is
/// joined to a random subset of the window, the bag `window ∪ {v}` is recorded,
/// and then a random member of the bag is retired if the bag is full.
pub fn random_pw2_with_bags(n: usize, seed: u64) -> Result<(Graph, Vec<Vec<usize>>)> {
    positive("n", n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut window: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    let mut bags = Vec::with_capacity(n);
    for v in 0..n {
        for &u in &window {
            if rng.gen_bool(0.7) {
                edges.push((u, v));
            }
        }
        let mut bag = window.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag.clone());
        window = bag;
        if window.len() == 3 || (window.len() == 2 && rng.gen_bool(0.15)) {
            let drop = *window.choose(&mut rng).expect("window is non-empty");
            window.retain(|&x| x != drop);
        }
    }
    Ok((Graph::new(n, edges)?, bags))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_five_matches_figure() {
        let g = generate(&Family::Xi { r: 5 }).unwrap();
        assert_eq!(g.n(), 15);
        assert_eq!(g.m(), 18);
        assert!(g.has_edge(0, 5) && g.has_edge(5, 10) && g.has_edge(10, 11));
    }

    #[test]
    fn small_families() {
        let k23 = generate(&Family::CompleteBipartite { p: 2, q: 3 }).unwrap();
        assert_eq!((k23.n(), k23.m()), (5, 6));
        let three_triangles = generate(&Family::DisjointCopies {
            k: 3,
            base: Box::new(Family::Complete { n: 3 }),
        })
        .unwrap();
        assert_eq!((three_triangles.n(), three_triangles.m()), (9, 9));
        assert_eq!(three_triangles.components().len(), 3);
        assert_eq!(generate(&Family::Xi { r: 1 }).unwrap().m(), 2);
    }

    #[test]
    fn parameter_errors() {
        assert!(generate(&Family::Xi { r: 0 }).is_err());
        assert!(generate(&Family::Cycle { n: 2 }).is_err());
        assert!(generate(&Family::RandomGnp { n: 4, p: 1.5, seed: 0 }).is_err());
    }

    #[test]
    fn random_families_are_seeded() {
        for family in [
            Family::RandomGnp { n: 20, p: 0.3, seed: 9 },
            Family::RandomTernaryTree { n: 30, seed: 9 },
            Family::RandomPw2 { n: 12, seed: 9 },
        ] {
            let a = generate(&family).unwrap();
            let b = generate(&family).unwrap();
            assert_eq!(a.canonical_text(), b.canonical_text());
        }
    }

    #[test]
    fn ternary_trees_are_ternary() {
        for seed in 0..50 {
            let t = generate(&Family::RandomTernaryTree { n: 40, seed }).unwrap();
            assert!(t.is_tree());
            assert!(t.max_degree() <= 3);
        }
    }

    #[test]
    fn pw2_bags_cover_the_graph() {
        for seed in 0..50 {
            let (g, bags) = random_pw2_with_bags(10, seed).unwrap();
            assert!(bags.iter().all(|b| b.len() <= 3));
            for (u, v) in g.edges() {
                assert!(bags.iter().any(|b| b.contains(&u) && b.contains(&v)));
            }
        }
    }
}
