//! Planarity decision by the Demoucron–Malgrange–Pertuiset path-addition
//! method, run separately on each biconnected block.
//!
//! This is deliberately independent of the rotation-system machinery: it
//! works on vertex lists of faces only and serves as a second opinion for
//! the embedding searches.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Planarity of an arbitrary simple graph given as an edge list on `1..=n`.
pub fn is_planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    blocks(n, edges).iter().all(|b| planar_block(b))
}

/// Biconnected blocks as edge lists (Hopcroft–Tarjan edge stack).
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n + 1];
    for (i, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    struct St<'a> {
        adj: &'a [Vec<(usize, usize)>],
        edges: &'a [(usize, usize)],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut St, u: usize, parent_edge: usize) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for k in 0..s.adj[u].len() {
            let (w, e) = s.adj[u][k];
            if e == parent_edge {
                continue;
            }
            if s.disc[w] == 0 {
                s.stack.push(e);
                dfs(s, w, e);
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(f) = s.stack.pop() {
                        block.push(s.edges[f]);
                        if f == e {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[w] < s.disc[u] {
                s.stack.push(e);
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let mut st = St {
        adj: &adj,
        edges,
        disc: vec![0; n + 1],
        low: vec![0; n + 1],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 1..=n {
        if st.disc[v] == 0 {
            dfs(&mut st, v, usize::MAX);
        }
    }
    st.out
}

fn planar_block(edges: &[(usize, usize)]) -> bool {
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let (n, m) = (verts.len(), edges.len());
    if m <= 3 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let key = |u: usize, v: usize| if u < v { (u, v) } else { (v, u) };

    let cycle = find_cycle(&adj);
    let mut in_h: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        h_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev];

    while h_edges.len() < m {
        // Fragments: chords between H vertices, and components of G - V(H).
        let mut fragments: Vec<(BTreeSet<usize>, Vec<usize>)> = Vec::new();
        for &(u, v) in edges {
            if in_h.contains(&u) && in_h.contains(&v) && !h_edges.contains(&key(u, v)) {
                fragments.push(([u, v].into_iter().collect(), vec![u, v]));
            }
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for &s in adj.keys() {
            if in_h.contains(&s) || seen.contains(&s) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut attach = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(x) = queue.pop_front() {
                comp.insert(x);
                for &y in &adj[&x] {
                    if in_h.contains(&y) {
                        attach.insert(y);
                    } else if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            let path = fragment_path(&adj, &comp, &attach);
            fragments.push((attach, path));
        }
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|(att, _)| {
                (0..faces.len())
                    .filter(|&f| att.iter().all(|a| faces[f].contains(a)))
                    .collect()
            })
            .collect();
        if admissible.iter().any(|a| a.is_empty()) {
            return false;
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let f = admissible[pick][0];
        let path = fragments[pick].1.clone();
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        for &x in &path {
            in_h.insert(x);
        }
        let face = faces.swap_remove(f);
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let walk = |from: usize, to: usize| {
            let mut out = vec![face[from]];
            let mut k = from;
            while k != to {
                k = (k + 1) % face.len();
                out.push(face[k]);
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut f1 = walk(i, j);
        f1.extend(inner.iter().rev());
        let mut f2 = walk(j, i);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
    }
    true
}

/// A cycle through the first vertex, found by DFS.
fn find_cycle(adj: &BTreeMap<usize, Vec<usize>>) -> Vec<usize> {
    let start = *adj.keys().next().unwrap();
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut depth: BTreeMap<usize, usize> = BTreeMap::new();
    let mut stack = vec![(start, 0usize)];
    depth.insert(start, 0);
    parent.insert(start, 0);
    while let Some(&(u, k)) = stack.last() {
        if k >= adj[&u].len() {
            stack.pop();
            continue;
        }
        stack.last_mut().unwrap().1 += 1;
        let w = adj[&u][k];
        if w == parent[&u] {
            continue;
        }
        if let Some(&dw) = depth.get(&w) {
            if dw < depth[&u] {
                let mut cyc = vec![u];
                let mut x = u;
                while x != w {
                    x = parent[&x];
                    cyc.push(x);
                }
                return cyc;
            }
            continue;
        }
        depth.insert(w, depth[&u] + 1);
        parent.insert(w, u);
        stack.push((w, 0));
    }
    unreachable!("a block with more than one edge has a cycle")
}

/// Path from one attachment through the component to a different attachment.
fn fragment_path(
    adj: &BTreeMap<usize, Vec<usize>>,
    comp: &BTreeSet<usize>,
    attach: &BTreeSet<usize>,
) -> Vec<usize> {
    let a = *attach.iter().next().unwrap();
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &y in &adj[&a] {
        if comp.contains(&y) && !prev.contains_key(&y) {
            prev.insert(y, a);
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        for &y in &adj[&x] {
            if attach.contains(&y) && y != a {
                let mut path = vec![y, x];
                let mut z = x;
                while prev[&z] != a {
                    z = prev[&z];
                    path.push(z);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if comp.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragment of a block has two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn planar(g: &SimpleGraph) -> bool {
        let e: Vec<_> = g.edges().collect();
        is_planar_edges(g.n(), &e)
    }

    #[test]
    fn small_cases() {
        assert!(planar(&SimpleGraph::complete(4)));
        assert!(!planar(&SimpleGraph::complete(5)));
        assert!(planar(&SimpleGraph::complete(5).without_edge(1, 2)));
        let k33 = SimpleGraph::new(6, (1..=3).flat_map(|a| (4..=6).map(move |b| (a, b)))).unwrap();
        assert!(!planar(&k33));
        assert!(planar(&k33.without_edge(1, 4)));
        assert!(planar(&SimpleGraph::path(5)));
        assert!(planar(&SimpleGraph::empty(3)));
    }

    #[test]
    fn petersen_is_not_planar() {
        let outer = (0..5).map(|i| (i + 1, (i + 1) % 5 + 1));
        let spokes = (0..5).map(|i| (i + 1, i + 6));
        let inner = (0..5).map(|i| (i + 6, (i + 2) % 5 + 6));
        let g = SimpleGraph::new(10, outer.chain(spokes).chain(inner)).unwrap();
        assert!(!planar(&g));
    }

    #[test]
    fn two_k5_sharing_a_cut_vertex() {
        let mut edges = Vec::new();
        for u in 1..=5 {
            for v in u + 1..=5 {
                if (u, v) != (1, 2) {
                    edges.push((u, v));
                }
            }
        }
        for u in [5, 6, 7, 8, 9] {
            for v in [5, 6, 7, 8, 9] {
                if u < v && (u, v) != (5, 6) {
                    edges.push((u, v));
                }
            }
        }
        assert!(is_planar_edges(9, &edges));
        edges.push((1, 2));
        assert!(!is_planar_edges(9, &edges));
    }
}
