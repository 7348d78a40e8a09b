//! Oracles shared by the property suites and the acceptance harness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Fraction-free elimination; returns the rank and, for square input, the
/// determinant.
pub fn bareiss(rows: &[Vec<BigInt>]) -> (usize, BigInt) {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..m {
            for j in c + 1..n {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == m {
            break;
        }
    }
    let det = if m == n && r == m {
        sign * prev
    } else {
        BigInt::zero()
    };
    (r, det)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k x k minors, the k-th determinantal divisor.
pub fn determinantal_divisor(rows: &[Vec<BigInt>], k: usize) -> BigInt {
    let cols = rows.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for rs in subsets(rows.len(), k) {
        for cs in subsets(cols, k) {
            let minor: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                .collect();
            g = g.gcd(&bareiss(&minor).1);
        }
    }
    g
}
