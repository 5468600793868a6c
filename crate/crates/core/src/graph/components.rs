//! Weak and strong connectivity.

use super::{GraphError, ServiceGraph};

/// Weakly connected component label per vertex. Labels are dense and
/// numbered by smallest member index.
pub fn weak_components(g: &ServiceGraph) -> Vec<usize> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in g.edges() {
        let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
        if a != b {
            // keep the smaller index as root
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if label[r] == usize::MAX {
            label[r] = next;
            next += 1;
        }
        out[v] = label[r];
    }
    out
}

/// Largest weakly connected component. Ties go to the component whose
/// lexicographically smallest vertex id is smallest.
pub fn giant_wcc(g: &ServiceGraph) -> Result<ServiceGraph, GraphError> {
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    let labels = weak_components(g);
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; count];
    for &l in &labels {
        sizes[l] += 1;
    }
    // labels are ordered by min member, so the first maximum wins ties
    let best = (0..count)
        .max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a)))
        .expect("non-empty graph has a component");
    if sizes[best] == g.n() {
        return Ok(g.clone());
    }
    let keep: Vec<bool> = labels.iter().map(|&l| l == best).collect();
    Ok(g.induced_subgraph(&keep))
}

/// Strongly connected components (iterative Tarjan). Each component is
/// sorted; for undirected graphs these coincide with connected components.
pub fn strong_components(g: &ServiceGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next_index = 0;
    // (vertex, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let adj = g.out_neighbors(v);
            if *pos < adj.len() {
                let w = adj[*pos].0;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}
