//! Euclidean projection onto the convex hull of a point set.
//!
//! Wolfe's minimum-norm-point algorithm, specialized to point-vs-polytope
//! queries: an active-set iteration that alternates a linear minimization
//! step over the generators with exact affine minimization over the current
//! support simplex. Terminates at the optimum up to floating-point rounding;
//! the dual gap bounds the error on the squared distance.

use arrayvec::ArrayVec;

use crate::point::Point;

/// Active-set capacity. The optimal support has at most N+1 vertices; one
/// extra slot holds the incoming vertex during a major iteration.
const MAX_SUPPORT: usize = 8;

/// Relative tolerance on the squared distance.
const GAP_TOL: f64 = 1e-13;

const MAX_MAJOR_ITERS: usize = 200;

/// Result of projecting a query point onto a convex hull.
#[derive(Clone, Debug)]
pub struct Projection<const N: usize> {
    /// Nearest point of the hull.
    pub point: Point<N>,
    /// Euclidean distance from the query to the hull (0 inside).
    pub distance: f64,
    /// Generator indices supporting the nearest point (positive weight).
    pub support: ArrayVec<usize, MAX_SUPPORT>,
}

impl<const N: usize> Projection<N> {
    /// Number of generators carrying the projection: 1 on a vertex, 2 on an
    /// edge, 3+ on a facet interior (or inside the hull).
    pub fn support_dim(&self) -> usize {
        self.support.len()
    }
}

/// Projects `x` onto conv(`points`). `points` must be nonempty.
pub fn project_hull<const N: usize>(x: Point<N>, points: &[Point<N>]) -> Projection<N> {
    assert!(!points.is_empty(), "projection onto an empty hull");

    // Work with the translated set q_i = p_i - x; we seek the min-norm point.
    let scale_sq = points
        .iter()
        .map(|p| (*p - x).norm_sq())
        .fold(0.0_f64, f64::max)
        .max(1.0);

    // Start from the generator nearest to x.
    let start = points
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let da = (**a - x).norm_sq();
            let db = (**b - x).norm_sq();
            da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
        })
        .map(|(i, _)| i)
        .unwrap();

    let mut support: ArrayVec<usize, MAX_SUPPORT> = ArrayVec::new();
    let mut weights: ArrayVec<f64, MAX_SUPPORT> = ArrayVec::new();
    support.push(start);
    weights.push(1.0);
    let mut w = points[start] - x;

    for _ in 0..MAX_MAJOR_ITERS {
        // Linear minimization: the generator most opposed to w.
        let mut best = 0;
        let mut best_dot = f64::INFINITY;
        for (i, p) in points.iter().enumerate() {
            let d = (*p - x).dot(w);
            if d < best_dot {
                best_dot = d;
                best = i;
            }
        }
        // Dual gap: |w|^2 - min_i <q_i, w> bounds |w|^2 - dist^2.
        if w.norm_sq() - best_dot <= GAP_TOL * scale_sq {
            break;
        }
        if support.contains(&best) || support.is_full() {
            break;
        }
        support.push(best);
        weights.push(0.0);

        // Minor loop: pull the weights to the affine minimizer over the
        // support, dropping vertices whose weight would turn negative.
        loop {
            let Some(affine) = affine_minimizer(x, points, &support) else {
                // Degenerate support; drop the smallest-weight vertex.
                let (drop_idx, _) = weights
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| a.partial_cmp(b).unwrap())
                    .unwrap();
                support.remove(drop_idx);
                weights.remove(drop_idx);
                if support.len() <= 1 {
                    break;
                }
                continue;
            };
            if affine.iter().all(|&m| m >= -1e-14) {
                weights.clear();
                for &m in &affine {
                    weights.push(m.max(0.0));
                }
                break;
            }
            // Step from `weights` toward `affine` until a coordinate hits 0;
            // only negative target weights can bind.
            let mut theta = 1.0_f64;
            for (&lam, &mu) in weights.iter().zip(affine.iter()) {
                if mu < 0.0 {
                    theta = theta.min(lam / (lam - mu));
                }
            }
            let mut drop = None;
            for i in 0..weights.len() {
                weights[i] = (1.0 - theta) * weights[i] + theta * affine[i];
                if weights[i] <= 1e-14 && drop.is_none() && affine[i] < 0.0 {
                    drop = Some(i);
                }
            }
            if let Some(i) = drop {
                support.remove(i);
                weights.remove(i);
            }
            if support.len() <= 1 {
                if let Some(w0) = weights.first_mut() {
                    *w0 = 1.0;
                }
                break;
            }
        }

        // Renormalize and recompute the current point.
        let total: f64 = weights.iter().sum();
        if total > 0.0 {
            for wt in &mut weights {
                *wt /= total;
            }
        }
        w = Point::ZERO;
        for (&i, &wt) in support.iter().zip(weights.iter()) {
            w += (points[i] - x) * wt;
        }
    }

    // Prune numerically-zero weights from the reported support.
    let mut pruned: ArrayVec<usize, MAX_SUPPORT> = ArrayVec::new();
    for (&i, &wt) in support.iter().zip(weights.iter()) {
        if wt > 1e-10 {
            pruned.push(i);
        }
    }
    if pruned.is_empty() {
        pruned.push(support[0]);
    }

    Projection {
        point: x + w,
        distance: w.norm(),
        support: pruned,
    }
}

/// Minimizes |sum mu_i (p_i - x)| over the affine hull of the support
/// (sum mu_i = 1, mu unconstrained in sign). Returns `None` when the normal
/// system is singular.
fn affine_minimizer<const N: usize>(
    x: Point<N>,
    points: &[Point<N>],
    support: &[usize],
) -> Option<ArrayVec<f64, MAX_SUPPORT>> {
    let k = support.len();
    debug_assert!(k >= 2);
    // KKT system: [G 1; 1^T 0] [mu; nu] = [0; 1] with G_ij = <q_i, q_j>.
    let m = k + 1;
    let mut a = [[0.0_f64; MAX_SUPPORT + 1]; MAX_SUPPORT + 1];
    let mut rhs = [0.0_f64; MAX_SUPPORT + 1];
    for i in 0..k {
        let qi = points[support[i]] - x;
        for j in 0..k {
            let qj = points[support[j]] - x;
            a[i][j] = qi.dot(qj);
        }
        a[i][k] = 1.0;
        a[k][i] = 1.0;
    }
    rhs[k] = 1.0;

    // Gaussian elimination with partial pivoting on the (k+1) system.
    let mut perm: [usize; MAX_SUPPORT + 1] = std::array::from_fn(|i| i);
    for col in 0..m {
        let mut piv = col;
        let mut piv_val = a[perm[col]][col].abs();
        for row in (col + 1)..m {
            let v = a[perm[row]][col].abs();
            if v > piv_val {
                piv = row;
                piv_val = v;
            }
        }
        if piv_val < 1e-300 {
            return None;
        }
        perm.swap(col, piv);
        for row in (col + 1)..m {
            let f = a[perm[row]][col] / a[perm[col]][col];
            if f == 0.0 {
                continue;
            }
            for c in col..m {
                a[perm[row]][c] -= f * a[perm[col]][c];
            }
            rhs[perm[row]] -= f * rhs[perm[col]];
        }
    }
    let mut sol = [0.0_f64; MAX_SUPPORT + 1];
    for col in (0..m).rev() {
        let mut acc = rhs[perm[col]];
        for c in (col + 1)..m {
            acc -= a[perm[col]][c] * sol[c];
        }
        sol[col] = acc / a[perm[col]][col];
    }
    if sol[..k].iter().any(|v| !v.is_finite()) {
        return None;
    }
    let mut out = ArrayVec::new();
    for &v in &sol[..k] {
        out.push(v);
    }
    Some(out)
}
