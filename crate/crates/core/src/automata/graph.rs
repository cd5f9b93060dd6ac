//! Strongly connected components and path search on explicit graphs.

use std::collections::VecDeque;

/// Tarjan's algorithm restricted to vertices with `keep[v]`, iterative.
/// Components come out in reverse topological order.
pub fn sccs(adj: &[Vec<usize>], keep: &[bool]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if !keep[root] || index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if !keep[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("scc stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

/// Whether a component carries a cycle: more than one vertex or a self-loop.
pub fn is_nontrivial(comp: &[usize], adj: &[Vec<usize>]) -> bool {
    comp.len() > 1 || adj[comp[0]].contains(&comp[0])
}

/// Shortest path from `from` to `to` (at least one edge when `from == to`)
/// through vertices with `keep`, as the list of edge labels. Edges are
/// `(label, target)` pairs.
pub fn path_labels(
    edges: &dyn Fn(usize) -> Vec<(usize, usize)>,
    n: usize,
    from: usize,
    to: usize,
    keep: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for (a, w) in edges(from) {
        if keep(w) && !seen[w] {
            seen[w] = true;
            parent[w] = Some((from, a));
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut labels = Vec::new();
            let mut cur = v;
            loop {
                let (p, a) = parent[cur].expect("parent");
                labels.push(a);
                if p == from {
                    break;
                }
                cur = p;
            }
            labels.reverse();
            return Some(labels);
        }
        for (a, w) in edges(v) {
            if keep(w) && !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, a));
                queue.push_back(w);
            }
        }
    }
    None
}
