use crate::curve::ChordEvaluator;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::oracle::grid_point;

/// Searches the uniform grid `{0, 1/(m−1), …, 1}` for breakpoints
/// `0 = t₀ ≤ t₁ ≤ … ≤ t_N = 1` with every chord `D(t_{i−1}, t_i) ≤ eps`.
///
/// Reachability is computed layer by layer; node `u` steps to `v ≥ u` when
/// `D(u, v) ≤ eps`. Among the chains found, the one with the most strictly
/// increasing steps is returned, ties going to the lexicographically smallest.
///
/// `None` only means no such chain exists on this grid at this tolerance; a
/// zero chain between grid points can be missed.
pub fn detect_zero_chain(
    ev: &ChordEvaluator,
    n: usize,
    eps: f64,
    grid_m: usize,
) -> Result<Option<Vec<f64>>> {
    if n == 0 {
        return Err(Error::domain("N must be at least 1"));
    }
    if grid_m < 2 {
        return Err(Error::domain("zero-chain grid needs at least 2 points"));
    }
    if !(eps >= 0.0) {
        return Err(Error::domain("eps must be nonnegative"));
    }
    let m = grid_m;
    // edges[u][v - u]
    let edges: Vec<Vec<bool>> = Exec::default().map_collect(m, |u| {
        let gu = grid_point(u, m);
        (u..m)
            .map(|v| ev.chord_unchecked(gu, grid_point(v, m)) <= eps)
            .collect()
    });

    // best chain reaching each node: (strict moves, node path)
    let mut layer: Vec<Option<(usize, Vec<usize>)>> = vec![None; m];
    layer[0] = Some((0, vec![0]));
    for _ in 0..n {
        let mut next: Vec<Option<(usize, Vec<usize>)>> = vec![None; m];
        for (u, entry) in layer.iter().enumerate() {
            let Some((moves, path)) = entry else { continue };
            for (dv, &ok) in edges[u].iter().enumerate() {
                if !ok {
                    continue;
                }
                let v = u + dv;
                let cand_moves = moves + usize::from(dv > 0);
                let better = match &next[v] {
                    None => true,
                    Some((bm, bp)) => {
                        cand_moves > *bm
                            || (cand_moves == *bm && path.as_slice() < &bp[..bp.len() - 1])
                    }
                };
                if better {
                    let mut p = path.clone();
                    p.push(v);
                    next[v] = Some((cand_moves, p));
                }
            }
        }
        layer = next;
    }
    Ok(layer[m - 1]
        .take()
        .map(|(_, path)| path.into_iter().map(|k| grid_point(k, m)).collect()))
}
