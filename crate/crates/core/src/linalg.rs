//! Exact rank of small integer matrices.

use num_rational::BigRational;
use num_traits::Zero;

/// Rank over the rationals. Elimination runs on `i128` with row gcd
/// normalization and falls back to rationals if a product would overflow.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    match rank_i128(&mut m) {
        Some(r) => r,
        None => rank_rational(rows),
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn rank_i128(m: &mut [Vec<i128>]) -> Option<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let p = pivot_row[col];
        for row in bottom {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let mut g = 0;
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.checked_mul(p)?.checked_sub(y.checked_mul(f)?)?;
                g = gcd(g, *x);
            }
            if g > 1 {
                for v in &mut row[col..] {
                    *v /= g;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(&[vec![1, 1], vec![1, 1]]), 1);
        assert_eq!(rank(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(rank(&[vec![2, 3], vec![4, 5]]), 2);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 3;
        let rows = vec![vec![big, big - 1, 7], vec![big - 5, big, 3], vec![1, 2, 3]];
        assert_eq!(rank(&rows), rank_rational(&rows));
    }
}
