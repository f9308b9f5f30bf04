//! All solutions of a linear congruence system `A·x ≡ t (mod m)`.

use crate::int::ext_gcd;

/// Every `x ∈ [0, m)^n` with `Σ_l a[k][l]·x_l ≡ t[k] (mod m)` for all rows `k`.
///
/// Column operations bring `A` into echelon form `A·V = L`; the triangular
/// system in `y = V⁻¹x` is then solved row by row, each pivot contributing
/// `gcd(pivot, m)` branches and each zero column all `m` residues.
pub fn solve_mod(a: &[Vec<i128>], t: &[i128], n: usize, m: i128) -> Vec<Vec<i128>> {
    assert!(m >= 1);
    assert_eq!(a.len(), t.len());
    let rows = a.len();
    let md = |x: i128| x.rem_euclid(m);
    let mut l: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| md(x)).collect()).collect();
    let t: Vec<i128> = t.iter().map(|&x| md(x)).collect();
    if m == 1 {
        return vec![vec![0; n]];
    }
    let mut v: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    // Column operation helpers act on L and V together; V is stored by columns.
    let mut pivots: Vec<usize> = Vec::new();
    let mut j = 0;
    for r in 0..rows {
        if j == n {
            break;
        }
        for i in j + 1..n {
            let b = l[r][i];
            if b == 0 {
                continue;
            }
            let p = l[r][j];
            if p == 0 {
                for row in l.iter_mut() {
                    row.swap(j, i);
                }
                v.swap(j, i);
                continue;
            }
            let (g, s, u) = ext_gcd(&p, &b).expect("residues are small");
            let (pg, bg) = (p / g, b / g);
            for row in l.iter_mut() {
                let (x, y) = (row[j], row[i]);
                row[j] = md(s * x + u * y);
                row[i] = md(pg * y - bg * x);
            }
            for k in 0..n {
                let (x, y) = (v[j][k], v[i][k]);
                v[j][k] = md(s * x + u * y);
                v[i][k] = md(pg * y - bg * x);
            }
        }
        if l[r][j] != 0 {
            pivots.push(r);
            j += 1;
        }
    }
    let npiv = pivots.len();
    let mut out = Vec::new();
    let mut y = vec![0i128; n];
    dfs(&l, &t, &pivots, m, 0, &mut y, &mut |y| {
        // Free columns are zero in L, so every residue works for them.
        let free = n - npiv;
        let mut idx = vec![0i128; free];
        loop {
            for (f, &val) in idx.iter().enumerate() {
                y[npiv + f] = val;
            }
            let x: Vec<i128> = (0..n).map(|k| md((0..n).map(|c| v[c][k] * y[c] % m).sum::<i128>())).collect();
            out.push(x);
            let mut f = 0;
            loop {
                if f == free {
                    return;
                }
                idx[f] += 1;
                if idx[f] < m {
                    break;
                }
                idx[f] = 0;
                f += 1;
            }
        }
    });
    out
}

fn row_ok(l: &[Vec<i128>], t: &[i128], r: usize, upto: usize, y: &[i128], m: i128) -> bool {
    let s: i128 = (0..upto).map(|c| l[r][c] * y[c] % m).sum();
    (s - t[r]).rem_euclid(m) == 0
}

fn dfs(
    l: &[Vec<i128>],
    t: &[i128],
    pivots: &[usize],
    m: i128,
    j: usize,
    y: &mut Vec<i128>,
    emit: &mut dyn FnMut(&mut Vec<i128>),
) {
    let rows = l.len();
    if j == pivots.len() {
        let start = pivots.last().map_or(0, |&p| p + 1);
        if (start..rows).all(|r| row_ok(l, t, r, j, y, m)) {
            emit(y);
        }
        return;
    }
    let r = pivots[j];
    // Rows between the previous pivot and this one involve only y_0..y_{j-1}.
    let start = if j == 0 { 0 } else { pivots[j - 1] + 1 };
    if !(start..r).all(|rr| row_ok(l, t, rr, j, y, m)) {
        return;
    }
    let rhs = (t[r] - (0..j).map(|c| l[r][c] * y[c] % m).sum::<i128>()).rem_euclid(m);
    let p = l[r][j];
    let (h, s, _) = ext_gcd(&p, &m).expect("residues are small");
    if rhs % h != 0 {
        return;
    }
    let step = m / h;
    let y0 = ((rhs / h) * s).rem_euclid(step);
    for k in 0..h {
        y[j] = y0 + k * step;
        dfs(l, t, pivots, m, j + 1, y, emit);
    }
}
