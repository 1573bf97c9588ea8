//! Rectangular linear assignment (Hungarian method with potentials,
//! `O(r² c)` for `r` rows and `c >= r` columns).

/// Minimum-cost assignment of every row to a distinct column.
///
/// `cost` is row-major `rows x cols` with `rows <= cols`. Returns the column
/// chosen for each row.
pub fn min_cost_assignment(cost: &[f64], rows: usize, cols: usize) -> Vec<usize> {
    assert!(rows <= cols, "need rows <= cols, got {rows} x {cols}");
    assert_eq!(cost.len(), rows * cols);
    if rows == 0 {
        return Vec::new();
    }
    let at = |r: usize, c: usize| cost[(r - 1) * cols + (c - 1)];

    // 1-based bookkeeping; column 0 is a virtual root.
    let mut u = vec![0.0; rows + 1];
    let mut v = vec![0.0; cols + 1];
    let mut row_of_col = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];

    for r in 1..=rows {
        row_of_col[0] = r;
        let mut col = 0;
        let mut min_to = vec![f64::INFINITY; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[col] = true;
            let row = row_of_col[col];
            let mut delta = f64::INFINITY;
            let mut next = 0;
            for c in 1..=cols {
                if used[c] {
                    continue;
                }
                let reduced = at(row, c) - u[row] - v[c];
                if reduced < min_to[c] {
                    min_to[c] = reduced;
                    way[c] = col;
                }
                if min_to[c] < delta {
                    delta = min_to[c];
                    next = c;
                }
            }
            for c in 0..=cols {
                if used[c] {
                    u[row_of_col[c]] += delta;
                    v[c] -= delta;
                } else {
                    min_to[c] -= delta;
                }
            }
            col = next;
            if row_of_col[col] == 0 {
                break;
            }
        }
        // Augment along the alternating path.
        loop {
            let prev = way[col];
            row_of_col[col] = row_of_col[prev];
            col = prev;
            if col == 0 {
                break;
            }
        }
    }

    let mut out = vec![0; rows];
    for c in 1..=cols {
        if row_of_col[c] != 0 {
            out[row_of_col[c] - 1] = c - 1;
        }
    }
    out
}

/// Maximum total weight of a one-to-one matching between rows and columns of
/// an arbitrary rectangular weight matrix. Unmatched rows or columns (the
/// surplus side) contribute nothing.
pub fn max_weight_matching(weights: &[f64], rows: usize, cols: usize) -> (f64, Vec<(usize, usize)>) {
    assert_eq!(weights.len(), rows * cols);
    if rows == 0 || cols == 0 {
        return (0.0, Vec::new());
    }
    let transpose = rows > cols;
    let (r, c) = if transpose { (cols, rows) } else { (rows, cols) };
    let w = |i: usize, j: usize| {
        if transpose {
            weights[j * cols + i]
        } else {
            weights[i * cols + j]
        }
    };
    let max = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cost: Vec<f64> = (0..r)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .map(|(i, j)| max - w(i, j))
        .collect();
    let chosen = min_cost_assignment(&cost, r, c);
    let pairs: Vec<(usize, usize)> = chosen
        .iter()
        .enumerate()
        .map(|(i, &j)| if transpose { (j, i) } else { (i, j) })
        .collect();
    let total = chosen.iter().enumerate().map(|(i, &j)| w(i, j)).sum();
    (total, pairs)
}
