use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{generate, Family, Graph};
use crate::limits::Limits;
use crate::minors::{find_minor_model, verify_model, MinorModel};
use crate::width::pathwidth_exact;

/// A model of `h` in `Ξ_n`, `n = |V(h)|`, for `h` of pathwidth at most 2.
///
/// The model comes from generic minor search. `Ξ_m` is a subgraph of `Ξ_n`
/// for `m ≤ n`, so the search tries `m = ⌈n/3⌉, …, n` in turn and lifts the
/// first model found; the host limit is raised to `3n` when needed.
pub fn check_pw2_minor_of_xi(h: &Graph, limits: &Limits) -> Result<MinorModel> {
    let n = h.n();
    if n == 0 {
        return Err(Error::Parameter("the graph needs at least one vertex".into()));
    }
    let (pw, _) = pathwidth_exact(h, limits)?;
    if pw > 2 {
        return Err(Error::Precondition(format!("pathwidth {pw} exceeds 2")));
    }
    let xi = Arc::new(generate(&Family::Xi { r: n })?);
    let mut relaxed = limits.clone();
    relaxed.minor_host = relaxed.minor_host.max(xi.n());
    for m in n.div_ceil(3)..=n {
        let small = Arc::new(generate(&Family::Xi { r: m })?);
        if let Some(model) = find_minor_model(&small, h, &relaxed)? {
            let map: Vec<usize> = (0..3 * m).map(|v| (v / m) * n + v % m).collect();
            let model = model.lift(&xi, &map);
            if !verify_model(&model).is_valid() {
                return Err(Error::Invariant("minor search returned an invalid model".into()));
            }
            return Ok(model);
        }
    }
    Err(Error::Invariant(format!("no model of a pathwidth-{pw} graph in Ξ_{n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let l = Limits::default();
        for n in 1..=7 {
            let p = generate(&Family::Path { n }).unwrap();
            assert!(verify_model(&check_pw2_minor_of_xi(&p, &l).unwrap()).is_valid());
        }
        let c4 = generate(&Family::Cycle { n: 4 }).unwrap();
        assert_eq!(check_pw2_minor_of_xi(&c4, &l).unwrap().host.n(), 12);
        let claw = generate(&Family::Star { n: 3 }).unwrap();
        assert!(verify_model(&check_pw2_minor_of_xi(&claw, &l).unwrap()).is_valid());
        let k4 = generate(&Family::Complete { n: 4 }).unwrap();
        assert!(matches!(check_pw2_minor_of_xi(&k4, &l), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_pathwidth_two_graphs() {
        let l = Limits::default();
        for seed in 0..30 {
            let n = 1 + seed as usize % 9;
            let g = generate(&Family::RandomPw2 { n, seed }).unwrap();
            let m = check_pw2_minor_of_xi(&g, &l).unwrap();
            assert!(verify_model(&m).is_valid(), "seed {seed}");
        }
    }
}
