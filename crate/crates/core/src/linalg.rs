//! Small dense complex linear algebra: rank and solving by Gaussian
//! elimination with partial pivoting.

use num_complex::Complex64;

/// Rank of the matrix whose rows are `rows`. Each row is scaled to unit
/// max-norm first, so `tol` acts as a relative threshold.
pub fn rank(rows: &[Vec<Complex64>], tol: f64) -> usize {
    let mut m: Vec<Vec<Complex64>> = rows
        .iter()
        .filter_map(|r| {
            let n = max_norm(r);
            (n > 0.0).then(|| r.iter().map(|z| z / n).collect())
        })
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == m.len() {
            break;
        }
        let (pivot, size) =
            (rank..m.len())
                .map(|r| (r, m[r][col].norm()))
                .fold(
                    (rank, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if size <= tol {
            continue;
        }
        m.swap(rank, pivot);
        let p = m[rank][col];
        for r in rank + 1..m.len() {
            let f = m[r][col] / p;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in col..cols {
                let sub = f * m[rank][c];
                m[r][c] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Least-effort solve of `coeffs · basis = target` for the coefficients,
/// where `basis` rows are linearly independent. Returns `None` when the
/// target is not in the row span (residual above `tol`).
pub fn solve_in_span(
    basis: &[Vec<Complex64>],
    target: &[Complex64],
    tol: f64,
) -> Option<Vec<Complex64>> {
    let k = basis.len();
    let n = target.len();
    // augmented system: columns are basis vectors, rows are coordinates
    let mut a: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Complex64> = basis.iter().map(|b| b[i]).collect();
            row.push(target[i]);
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for col in 0..k {
        let (pivot, size) = (r..n)
            .map(|i| (i, a[i][col].norm()))
            .fold(
                (r, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if size <= tol {
            return None;
        }
        a.swap(r, pivot);
        let p = a[r][col];
        for c in col..=k {
            a[r][c] /= p;
        }
        for i in 0..n {
            if i != r {
                let f = a[i][col];
                for c in col..=k {
                    let sub = f * a[r][c];
                    a[i][c] -= sub;
                }
            }
        }
        pivots.push(r);
        r += 1;
    }
    let scale = max_norm(target).max(1.0);
    if (r..n).any(|i| a[i][k].norm() > tol * scale) {
        return None;
    }
    Some(pivots.iter().map(|&i| a[i][k]).collect())
}

pub fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn conj(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(|z| z.conj()).collect()
}
