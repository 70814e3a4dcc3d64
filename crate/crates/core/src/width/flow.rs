//! Vertex-disjoint paths by unit-capacity max-flow on the split graph.

use std::collections::VecDeque;

use crate::graph::Graph;

struct Arc {
    to: usize,
    cap: i32,
    original: i32,
    rev: usize,
}

struct Network {
    arcs: Vec<Vec<Arc>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: (0..nodes).map(|_| Vec::new()).collect(),
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: i32) {
        let rev_from = self.arcs[to].len();
        let rev_to = self.arcs[from].len();
        self.arcs[from].push(Arc {
            to,
            cap,
            original: cap,
            rev: rev_from,
        });
        self.arcs[to].push(Arc {
            to: from,
            cap: 0,
            original: 0,
            rev: rev_to,
        });
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        let mut queue = VecDeque::from([s]);
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for (i, arc) in self.arcs[u].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    prev[arc.to] = Some((u, i));
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while let Some((u, i)) = prev[v] {
            self.arcs[u][i].cap -= 1;
            let (to, rev) = (self.arcs[u][i].to, self.arcs[u][i].rev);
            self.arcs[to][rev].cap += 1;
            v = u;
        }
        true
    }
}

/// Maximum family (up to `limit` paths) of vertex-disjoint paths from `sources` to `sinks`.
///
/// Sources and sinks are only used as path ends. A vertex may be an internal
/// vertex of a path only if `internal_ok` accepts it, and an edge may be used
/// only if `edge_ok` accepts it. Each returned path lists its vertices from a
/// source to a sink. Sources and sinks must be disjoint.
pub fn vertex_disjoint_paths(
    g: &Graph,
    sources: &[usize],
    sinks: &[usize],
    internal_ok: &dyn Fn(usize) -> bool,
    edge_ok: &dyn Fn(usize, usize) -> bool,
    limit: usize,
) -> Vec<Vec<usize>> {
    let n = g.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let node_in = |v: usize| 2 * v;
    let node_out = |v: usize| 2 * v + 1;
    let mut is_end = vec![false; n];
    let mut is_sink = vec![false; n];
    for &v in sources {
        is_end[v] = true;
    }
    for &v in sinks {
        is_end[v] = true;
        is_sink[v] = true;
    }
    let mut net = Network::new(2 * n + 2);
    for v in 0..n {
        if !is_end[v] && internal_ok(v) {
            net.add(node_in(v), node_out(v), 1);
        }
    }
    for (u, v) in g.edges() {
        if edge_ok(u, v) {
            net.add(node_out(u), node_in(v), 1);
            net.add(node_out(v), node_in(u), 1);
        }
    }
    for &v in sources {
        net.add(s, node_out(v), 1);
    }
    for &v in sinks {
        net.add(node_in(v), t, 1);
    }
    let mut flow = 0;
    while flow < limit && net.augment(s, t) {
        flow += 1;
    }
    // Decompose the flow by walking saturated arcs from each used source.
    let mut used: Vec<Vec<bool>> = net.arcs.iter().map(|a| vec![false; a.len()]).collect();
    let mut paths = Vec::with_capacity(flow);
    for &src in sources {
        let started = net.arcs[s]
            .iter()
            .any(|a| a.to == node_out(src) && a.original > a.cap);
        if !started {
            continue;
        }
        let mut path = vec![src];
        let mut u = node_out(src);
        loop {
            let next = (0..net.arcs[u].len()).find(|&i| {
                let arc = &net.arcs[u][i];
                !used[u][i] && arc.original > arc.cap && arc.to < 2 * n
            });
            let Some(i) = next else { break };
            used[u][i] = true;
            let v = net.arcs[u][i].to / 2;
            path.push(v);
            if is_sink[v] {
                break;
            }
            u = node_out(v);
        }
        paths.push(path);
    }
    paths
}
