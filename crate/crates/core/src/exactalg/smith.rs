//! Smith normal form over the integers.
//!
//! Two entry points share one contract on the diagonal:
//!
//! * [`smith_normal_form`] works densely and tracks the unimodular transforms
//!   `U`, `V` with `U * M * V = D`.
//! * [`invariant_factors`] only produces the nonzero diagonal. It eliminates on
//!   a sparse row representation and never materialises a transform, which is
//!   what homology queries need.
//!
//! Both return the same invariant factors since the Smith form is unique.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// `U * M * V = D`, with `diagonal` the nonzero entries `d_1 | d_2 | ... | d_r`
/// of `D` (all positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Checks every postcondition against the input `m`: the product identity,
    /// unimodularity of both transforms, the divisibility chain and positivity.
    pub fn verify(&self, m: &IntegerMatrix) -> Result<(), String> {
        if self.u.mul(m).mul(&self.v) != self.d {
            return Err("U*M*V != D".into());
        }
        for (name, t) in [("U", &self.u), ("V", &self.v)] {
            if t.determinant().abs() != BigInt::one() {
                return Err(format!("{name} is not unimodular"));
            }
        }
        for (i, di) in self.diagonal.iter().enumerate() {
            if !di.is_positive() {
                return Err(format!("d_{} = {di} is not positive", i + 1));
            }
            if self.d.get(i, i) != di {
                return Err(format!("diagonal list disagrees with D at {i}"));
            }
            if let Some(next) = self.diagonal.get(i + 1) {
                if !next.is_multiple_of(di) {
                    return Err(format!(
                        "d_{} = {di} does not divide d_{} = {next}",
                        i + 1,
                        i + 2
                    ));
                }
            }
        }
        for r in 0..self.d.rows() {
            for c in 0..self.d.cols() {
                let on_diag = r == c && r < self.diagonal.len();
                if !on_diag && !self.d.get(r, c).is_zero() {
                    return Err(format!("D has a stray entry at ({r}, {c})"));
                }
            }
        }
        Ok(())
    }
}

fn smaller_pivot(candidate: &BigInt, best: Option<&BigInt>) -> bool {
    match best {
        None => true,
        Some(b) => candidate.magnitude() < b.magnitude(),
    }
}

/// Dense Smith normal form with transforms.
///
/// The pivot is the nonzero entry of smallest absolute value in the remaining
/// block, ties broken by lowest `(row, col)`, so the output is a deterministic
/// function of the input.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let e = a.get(r, c);
                    if !e.is_zero() && smaller_pivot(e, pivot.map(|(pr, pc)| a.get(pr, pc))) {
                        pivot = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pivot else {
                break;
            };
            a.swap_rows(t, pr);
            u.swap_rows(t, pr);
            a.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t) / &p;
                let neg = -q;
                a.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j) / &p;
                let neg = -q;
                a.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // The pivot must divide the remaining block; otherwise fold an
            // offending row into the pivot row and reduce again.
            let offending =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            if let Some(i) = offending {
                let one = BigInt::one();
                a.add_row_multiple(t, i, &one);
                u.add_row_multiple(t, i, &one);
                continue;
            }

            if p.is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            diagonal.push(a.get(t, t).clone());
            break;
        }
        if diagonal.len() <= t {
            break;
        }
    }

    let decomposition = SmithDecomposition {
        u,
        d: a,
        v,
        diagonal,
    };
    debug_assert!(
        rows * cols > 400 || decomposition.verify(m).is_ok(),
        "Smith decomposition failed its postconditions: {:?}",
        decomposition.verify(m)
    );
    decomposition
}

/// Sparse row: `(column, value)` pairs sorted by column, no zeros stored.
type SparseRow = Vec<(usize, BigInt)>;

fn sparse_axpy(target: &SparseRow, factor: &BigInt, source: &SparseRow) -> SparseRow {
    // target - factor * source
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let tc = target.get(i).map(|e| e.0);
        let sc = source.get(j).map(|e| e.0);
        match (tc, sc) {
            (Some(a), Some(b)) if a == b => {
                let v = &target[i].1 - factor * &source[j].1;
                if !v.is_zero() {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(target[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(target[i].clone());
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b, -(factor * &source[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn lookup(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|k| &row[k].1)
}

/// Nonzero invariant factors `d_1 | ... | d_r` of `m`, without transforms.
#[allow(clippy::needless_range_loop)] // rows are rewritten in place by index
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut rows: Vec<SparseRow> = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(c, e)| (c, e.clone()))
                .collect()
        })
        .collect();
    rows.retain(|r| !r.is_empty());
    let mut diagonal = Vec::new();

    loop {
        // Smallest magnitude first; among equals prefer the sparsest row, then
        // the lowest position, to limit fill-in.
        let mut best: Option<(usize, usize)> = None;
        for (ri, row) in rows.iter().enumerate() {
            for (k, (_, e)) in row.iter().enumerate() {
                let better = match best {
                    None => true,
                    Some((bi, bk)) => {
                        let be = &rows[bi][bk].1;
                        match e.magnitude().cmp(be.magnitude()) {
                            std::cmp::Ordering::Less => true,
                            std::cmp::Ordering::Greater => false,
                            std::cmp::Ordering::Equal => row.len() < rows[bi].len(),
                        }
                    }
                };
                if better {
                    best = Some((ri, k));
                }
            }
        }
        let Some((pr, pk)) = best else {
            break;
        };
        let (pc, p) = rows[pr][pk].clone();

        let mut clean = true;
        let pivot_row = rows[pr].clone();
        for ri in 0..rows.len() {
            if ri == pr {
                continue;
            }
            let Some(e) = lookup(&rows[ri], pc) else {
                continue;
            };
            let q = e / &p;
            let updated = sparse_axpy(&rows[ri], &q, &pivot_row);
            if lookup(&updated, pc).is_some() {
                clean = false;
            }
            rows[ri] = updated;
        }
        // Column operations against the pivot column only touch the pivot row
        // once the column is clear; before that, reduce the row in place.
        let mut reduced: SparseRow = Vec::with_capacity(pivot_row.len());
        for (c, e) in &pivot_row {
            if *c == pc {
                reduced.push((*c, e.clone()));
                continue;
            }
            let r = e - (e / &p) * &p;
            if !r.is_zero() {
                clean = false;
                reduced.push((*c, r));
            }
        }
        if clean && reduced.len() == 1 {
            diagonal.push(p.abs());
            rows.swap_remove(pr);
        } else {
            // Column ops with quotient q = e / p are unimodular; apply them to
            // the other rows as well so the matrix stays equivalent.
            for ri in 0..rows.len() {
                if ri == pr {
                    continue;
                }
                let Some(colval) = lookup(&rows[ri], pc).cloned() else {
                    continue;
                };
                let mut adjust: SparseRow = Vec::new();
                for (c, e) in &pivot_row {
                    if *c == pc {
                        continue;
                    }
                    let q = e / &p;
                    if !q.is_zero() {
                        adjust.push((*c, q));
                    }
                }
                // row_ri[c] -= q_c * row_ri[pc]
                let updated = sparse_axpy(&rows[ri], &colval, &adjust);
                rows[ri] = updated;
            }
            rows[pr] = reduced;
        }
        rows.retain(|r| !r.is_empty());
    }

    normalize_divisibility(diagonal)
}

/// Turns a diagonal into the equivalent divisibility chain by repeated
/// `(a, b) -> (gcd, lcm)` replacement.
fn normalize_divisibility(diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let units = diagonal.iter().filter(|d| d.is_one()).count();
    let mut rest: Vec<BigInt> = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if rest[j].is_multiple_of(&rest[i]) {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    // `rest` is now a divisibility chain, so any units it produced lead it.
    let mut out = vec![BigInt::one(); units];
    out.extend(rest);
    out
}

/// Rank over the integers, equal to the rank over the rationals.
pub fn rank(m: &IntegerMatrix) -> usize {
    invariant_factors(m).len()
}

/// A basis of the lattice `{v : M v = 0}` as integer column vectors.
///
/// Read off from the trailing columns of `V` in `U M V = D`.
pub fn integer_kernel_basis(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    (snf.rank()..m.cols()).map(|c| snf.v.column(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal, ints(&[2, 4]));
        snf.verify(&m).unwrap();
        let product: BigInt = snf.diagonal.iter().product();
        assert_eq!(product, m.determinant().abs());
        assert_eq!(invariant_factors(&m), ints(&[2, 4]));
    }

    #[test]
    fn identity_and_zero() {
        let id = IntegerMatrix::identity(3);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.diagonal, ints(&[1, 1, 1]));
        assert_eq!(snf.u, IntegerMatrix::identity(3));
        assert_eq!(snf.v, IntegerMatrix::identity(3));

        let z = IntegerMatrix::zeros(2, 3);
        let snf = smith_normal_form(&z);
        assert!(snf.diagonal.is_empty());
        snf.verify(&z).unwrap();
        assert_eq!(rank(&z), 0);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (4, 0)] {
            let m = IntegerMatrix::zeros(r, c);
            let snf = smith_normal_form(&m);
            assert!(snf.diagonal.is_empty());
            assert_eq!(snf.u.rows(), r);
            assert_eq!(snf.v.rows(), c);
            assert!(invariant_factors(&m).is_empty());
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(
            rank(&IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]])),
            2
        );
        assert_eq!(
            rank(&IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]])),
            1
        );
    }

    #[test]
    fn kernel_examples() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2]]);
        let basis = integer_kernel_basis(&m);
        assert_eq!(basis.len(), 1);
        assert!(m.mul_vec(&basis[0]).iter().all(Zero::is_zero));
        // primitive: (2, -1) up to sign
        let v = &basis[0];
        assert!(v == &ints(&[2, -1]) || v == &ints(&[-2, 1]));

        assert!(integer_kernel_basis(&IntegerMatrix::identity(3)).is_empty());
        assert_eq!(integer_kernel_basis(&IntegerMatrix::zeros(1, 2)).len(), 2);
    }

    #[test]
    fn torsion_needs_gcd_step() {
        // diag(2, 3) has Smith form diag(1, 6)
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).diagonal, ints(&[1, 6]));
        assert_eq!(invariant_factors(&m), ints(&[1, 6]));
        let m = IntegerMatrix::from_rows(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
        assert_eq!(smith_normal_form(&m).diagonal, ints(&[2, 2, 60]));
        assert_eq!(invariant_factors(&m), ints(&[2, 2, 60]));
    }

    #[test]
    fn normalize_keeps_chain() {
        assert_eq!(normalize_divisibility(ints(&[1, 4, 6])), ints(&[1, 2, 12]));
        assert_eq!(normalize_divisibility(ints(&[2, 1])), ints(&[1, 2]));
    }
}
