use num_bigint::BigUint;
use num_traits::One;

use super::FeynmanGraph;
use crate::error::{Error, Result};

pub const MAX_AUTOMORPHISM_VERTICES: usize = 12;

/// Order of the automorphism group of `g` acting on half-edges.
///
/// Vertex permutations preserving all edge multiplicities are found by
/// backtracking; each contributes the same number of compatible edge
/// bijections: `m!` for every bundle of `m` parallel edges and `2^l l!`
/// for `l` loops at one vertex (loops can be flipped).
pub fn count_automorphisms(g: &FeynmanGraph) -> Result<BigUint> {
    let n = g.vertex_count();
    if n > MAX_AUTOMORPHISM_VERTICES {
        return Err(Error::SizeLimit(format!(
            "automorphism counting supports at most {MAX_AUTOMORPHISM_VERTICES} vertices, got {n}"
        )));
    }
    let mut mult = vec![vec![0usize; n]; n];
    for &(u, v) in g.edges() {
        mult[u][v] += 1;
        if u != v {
            mult[v][u] += 1;
        }
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let vertex_perms = extend(0, &mult, &mut image, &mut used);

    let mut edge_factor = BigUint::one();
    for u in 0..n {
        for v in u..n {
            let m = mult[u][v];
            edge_factor *= factorial(m);
            if u == v {
                edge_factor <<= m;
            }
        }
    }
    Ok(edge_factor * vertex_perms)
}

fn extend(depth: usize, mult: &[Vec<usize>], image: &mut [usize], used: &mut [bool]) -> u64 {
    let n = mult.len();
    if depth == n {
        return 1;
    }
    let mut count = 0;
    for target in 0..n {
        if used[target] {
            continue;
        }
        let consistent = (0..=depth).all(|u| {
            let tu = if u == depth { target } else { image[u] };
            mult[u][depth] == mult[tu][target]
        });
        if !consistent {
            continue;
        }
        image[depth] = target;
        used[target] = true;
        count += extend(depth + 1, mult, image, used);
        used[target] = false;
        image[depth] = usize::MAX;
    }
    count
}

fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}
