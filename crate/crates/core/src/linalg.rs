//! Exact Gaussian elimination over F_q, just enough for nullspace
//! computations in the left-division solver.

use crate::gf::{FieldCtx, FieldElement};

/// Basis of the right nullspace of the given row-major matrix.
///
/// Reduces to row echelon form with exact field arithmetic, then reads one
/// basis vector off per free column.
#[allow(clippy::needless_range_loop)]
pub(crate) fn nullspace(
    ctx: &FieldCtx,
    mut rows: Vec<Vec<FieldElement>>,
    ncols: usize,
) -> Vec<Vec<FieldElement>> {
    let nrows = rows.len();
    let mut pivot_col_of_row = Vec::new();
    let mut pivot_row_of_col = vec![usize::MAX; ncols];
    let mut rank = 0;

    for col in 0..ncols {
        // Find a pivot in this column below the current rank.
        let mut pivot = None;
        for r in rank..nrows {
            if !ctx.is_zero(rows[r][col]) {
                pivot = Some(r);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let inv = ctx.inv(rows[rank][col]);
        for c in col..ncols {
            rows[rank][c] = ctx.mul(rows[rank][c], inv);
        }
        for r in 0..nrows {
            if r != rank && !ctx.is_zero(rows[r][col]) {
                let factor = rows[r][col];
                for c in col..ncols {
                    let sub = ctx.mul(factor, rows[rank][c]);
                    rows[r][c] = ctx.sub(rows[r][c], sub);
                }
            }
        }
        pivot_row_of_col[col] = rank;
        pivot_col_of_row.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }

    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_row_of_col[free] != usize::MAX {
            continue;
        }
        let mut v = vec![ctx.zero(); ncols];
        v[free] = ctx.one();
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = ctx.neg(rows[r][free]);
        }
        basis.push(v);
    }
    basis
}
