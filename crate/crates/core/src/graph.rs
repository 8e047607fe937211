//! Small graph routines over adjacency lists of `u32` node ids.

/// True when the subgraph induced by `active` nodes contains a cycle.
pub(crate) fn has_cycle(edges: &[Vec<u32>], active: &[bool]) -> bool {
    let n = edges.len();
    let mut indeg = vec![0usize; n];
    for (q, out) in edges.iter().enumerate() {
        if !active[q] {
            continue;
        }
        for &r in out {
            if active[r as usize] {
                indeg[r as usize] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&q| active[q] && indeg[q] == 0).collect();
    let mut removed = 0;
    while let Some(q) = stack.pop() {
        removed += 1;
        for &r in &edges[q] {
            let r = r as usize;
            if active[r] {
                indeg[r] -= 1;
                if indeg[r] == 0 {
                    stack.push(r);
                }
            }
        }
    }
    removed < active.iter().filter(|&&a| a).count()
}

/// Strongly connected components (iterative Tarjan). Returns the component
/// id of each node; ids are in reverse topological order of the condensation.
pub(crate) fn scc(edges: &[Vec<u32>]) -> Vec<usize> {
    let n = edges.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < edges[v].len() {
                let w = edges[v][*pos] as usize;
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
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}
