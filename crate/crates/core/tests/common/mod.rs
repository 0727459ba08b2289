#![allow(dead_code)]

//! Test-side oracles that share no code with the library's counting.

use std::collections::BTreeSet;

/// Supports of the positive roots of `A_n`: the intervals `[i, j]`.
pub fn a_supports(n: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push((i..=j).collect());
        }
    }
    out
}

pub fn a_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// `D_4` with branch vertex 2 (index 1): supports of its twelve positive roots.
pub fn d4_supports() -> Vec<BTreeSet<usize>> {
    let roots: [&[usize]; 12] = [
        &[0],
        &[1],
        &[2],
        &[3],
        &[0, 1],
        &[1, 2],
        &[1, 3],
        &[0, 1, 2],
        &[0, 1, 3],
        &[1, 2, 3],
        &[0, 1, 2, 3],
        &[0, 1, 2, 3], // α1 + 2α2 + α3 + α4
    ];
    roots.iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn d4_edges() -> Vec<(usize, usize)> {
    vec![(0, 1), (1, 2), (1, 3)]
}

fn connected(set: &BTreeSet<usize>, edges: &[(usize, usize)]) -> bool {
    let Some(&start) = set.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && set.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    seen.len() == set.len()
}

/// Counts nonzero exponent vectors `0 ≤ m_β < N_β` whose combined support is
/// connected, by walking every vector.
pub fn enumerate_dim_l(supports: &[BTreeSet<usize>], heights: &[u64], edges: &[(usize, usize)]) -> u64 {
    assert_eq!(supports.len(), heights.len());
    let mut exps = vec![0u64; heights.len()];
    let mut count = 0;
    loop {
        let mut k = 0;
        while k < exps.len() {
            exps[k] += 1;
            if exps[k] < heights[k] {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
        if k == exps.len() {
            return count;
        }
        let support: BTreeSet<usize> = exps
            .iter()
            .zip(supports)
            .filter(|(m, _)| **m > 0)
            .flat_map(|(_, s)| s.iter().copied())
            .collect();
        if connected(&support, edges) {
            count += 1;
        }
    }
}
