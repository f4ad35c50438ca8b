use super::{bitset_of, Graph};

/// Coarsest equitable partition by colour refinement, starting from a single
/// block. Blocks are ordered by their smallest vertex and sorted internally.
pub fn equitable_refinement(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut colour = vec![0usize; n];
    let mut count = 1;
    loop {
        let sets: Vec<Vec<u64>> = (0..count)
            .map(|c| bitset_of(n, (0..n).filter(|&v| colour[v] == c)))
            .collect();
        // signature: own colour followed by neighbour counts into each block
        let mut keyed: Vec<(Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut sig = Vec::with_capacity(count + 1);
                sig.push(colour[v]);
                sig.extend(sets.iter().map(|s| g.neighbors_in(v, s)));
                (sig, v)
            })
            .collect();
        keyed.sort();
        let mut next = vec![0usize; n];
        let mut fresh = 0;
        for i in 0..n {
            if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                fresh += 1;
            }
            next[keyed[i].1] = fresh;
        }
        let next_count = fresh + 1;
        if next_count == count {
            break;
        }
        colour = next;
        count = next_count;
    }

    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        blocks[colour[v]].push(v);
    }
    blocks.sort_by_key(|b| b[0]);
    blocks
}
