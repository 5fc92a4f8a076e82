//! Maximum bipartite matching.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

const FREE: usize = usize::MAX;

/// Hopcroft-Karp on a bipartite graph with `adj[left] = right neighbours`.
/// Returns the matching size.
pub fn max_matching(adj: &[Vec<usize>], n_right: usize) -> usize {
    let n_left = adj.len();
    let mut match_l = alloc::vec![FREE; n_left];
    let mut match_r = alloc::vec![FREE; n_right];
    let mut dist = alloc::vec![0usize; n_left];
    let mut size = 0;
    loop {
        // BFS layers from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if match_l[l] == FREE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = match_r[r];
                if m == FREE {
                    found = true;
                } else if dist[m] == usize::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            return size;
        }
        let mut iter = alloc::vec![0usize; n_left];
        for l in 0..n_left {
            if match_l[l] == FREE && augment(l, adj, &mut match_l, &mut match_r, &mut dist, &mut iter) {
                size += 1;
            }
        }
    }
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    iter: &mut [usize],
) -> bool {
    // Iterative DFS along the layered graph.
    let mut stack = alloc::vec![l];
    while let Some(&top) = stack.last() {
        if iter[top] == adj[top].len() {
            dist[top] = usize::MAX;
            stack.pop();
            continue;
        }
        let r = adj[top][iter[top]];
        iter[top] += 1;
        let m = match_r[r];
        if m == FREE {
            // Flip the path recorded on the stack.
            let mut r_cur = r;
            while let Some(lv) = stack.pop() {
                let prev = match_l[lv];
                match_l[lv] = r_cur;
                match_r[r_cur] = lv;
                r_cur = prev;
            }
            return true;
        }
        if dist[m] == dist[top] + 1 {
            stack.push(m);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn perfect_and_imperfect() {
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        assert_eq!(max_matching(&adj, 3), 3);
        let adj = vec![vec![0], vec![0], vec![0]];
        assert_eq!(max_matching(&adj, 3), 1);
    }

    #[test]
    fn needs_augmenting_path() {
        // greedy 0-0 blocks 1; augmenting path reroutes 0 to 1
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(max_matching(&adj, 2), 2);
    }
}
