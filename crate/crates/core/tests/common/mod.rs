//! Brute-force oracles shared by the integration tests. None of them call
//! into the library except to build inputs.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

/// Graph distances from `0` to every integer within `depth` steps, by
/// breadth-first search over `Z` with steps `±k`, `±t`.
pub fn bfs_from_zero(k: i64, t: i64, depth: u32) -> HashMap<i64, u32> {
    let mut dist = HashMap::from([(0i64, 0u32)]);
    let mut queue = VecDeque::from([0i64]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == depth {
            continue;
        }
        for step in [k, -k, t, -t] {
            dist.entry(v + step).or_insert_with(|| {
                queue.push_back(v + step);
                d + 1
            });
        }
    }
    dist
}

/// `true` when some two equal colors `c` of the periodic word sit at
/// distance at most `c`, checked pair by pair on a long enough window.
pub fn periodic_word_has_conflict(k: i64, t: i64, word: &[u32]) -> bool {
    let l = word.len();
    let top = *word.iter().max().unwrap();
    let near = bfs_from_zero(k, t, top);
    // Three periods, stretched when a ball reaches further than two periods.
    let n = (3 * l).max(l + (top as usize) * t as usize + 1);
    for u in 0..l {
        for v in (u + 1)..n {
            let c = word[u];
            if word[v % l] == c && near.get(&((v - u) as i64)).is_some_and(|&d| d <= c) {
                return true;
            }
        }
    }
    false
}

/// Plain backtracking over `colors[i] in 1..=c` for `n` vertices with
/// pairwise distances `dist`. Returns a coloring when one exists.
pub fn naive_packing(dist: &[Vec<u32>], c: u32, fixed: &[(usize, u32)]) -> Option<Vec<u32>> {
    let n = dist.len();
    let mut colors = vec![0u32; n];
    for &(v, col) in fixed {
        colors[v] = col;
    }
    let ok_fixed = fixed.iter().all(|&(u, cu)| {
        fixed
            .iter()
            .all(|&(v, cv)| u == v || cu != cv || dist[u][v] > cu)
    });
    if !ok_fixed {
        return None;
    }
    fn go(i: usize, dist: &[Vec<u32>], c: u32, colors: &mut Vec<u32>) -> bool {
        if i == colors.len() {
            return true;
        }
        if colors[i] != 0 {
            return go(i + 1, dist, c, colors);
        }
        for col in 1..=c {
            let clash = (0..colors.len()).any(|j| j != i && colors[j] == col && dist[i][j] <= col);
            if !clash {
                colors[i] = col;
                if go(i + 1, dist, c, colors) {
                    return true;
                }
                colors[i] = 0;
            }
        }
        false
    }
    go(0, dist, c, &mut colors).then_some(colors)
}

/// Distances between the window vertices `1..=p` measured in all of `D(k,t)`.
pub fn full_window_distances(k: i64, t: i64, p: usize) -> Vec<Vec<u32>> {
    let far = bfs_from_zero(k, t, 16);
    (0..p)
        .map(|i| {
            (0..p)
                .map(|j| far.get(&(j as i64 - i as i64)).copied().unwrap_or(u32::MAX))
                .collect()
        })
        .collect()
}

/// Distances inside the subgraph induced by `1..=p`; `u32::MAX` when
/// disconnected there.
pub fn induced_window_distances(k: i64, t: i64, p: usize) -> Vec<Vec<u32>> {
    (0..p)
        .map(|s| {
            let mut d = vec![u32::MAX; p];
            d[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for step in [k, -k, t, -t] {
                    let w = v as i64 + step;
                    if (0..p as i64).contains(&w) && d[w as usize] == u32::MAX {
                        d[w as usize] = d[v] + 1;
                        queue.push_back(w as usize);
                    }
                }
            }
            d
        })
        .collect()
}

/// `true` when `colors` is a packing coloring for the distances `dist`.
pub fn is_packing(dist: &[Vec<u32>], colors: &[u32]) -> bool {
    (0..colors.len())
        .all(|i| (i + 1..colors.len()).all(|j| colors[i] != colors[j] || dist[i][j] > colors[i]))
}

pub fn coprime_pairs(max_t: u64) -> Vec<(u64, u64)> {
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    (2..=max_t)
        .flat_map(|t| (1..t).map(move |k| (k, t)))
        .filter(|&(k, t)| gcd(k, t) == 1)
        .collect()
}
