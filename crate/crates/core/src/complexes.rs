//! Chain complexes of free modules over the integers, their (co)homology,
//! relative quotients and induced maps.
//!
//! A complex lives on a contiguous range of degrees starting at `min_degree`.
//! Cochain complexes are handled as chain complexes in negated degrees (see
//! [`ChainComplex::dual`]), so every routine here is written once for
//! homology.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{invariant_factors, IntegerMatrix, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Coefficients {
    #[default]
    Integers,
    Rationals,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("boundary in degree {degree} has shape {found:?}, expected {expected:?}")]
    ShapeMismatch {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("malformed complex: boundary composite is nonzero at degree {degree}")]
    MalformedComplex { degree: i64 },
    #[error("not a subcomplex: generator {generator} in degree {degree} has boundary outside the selection")]
    NotASubcomplex { degree: i64, generator: usize },
    #[error("selection references generator {generator} in degree {degree}, which does not exist")]
    BadSelection { degree: i64, generator: usize },
    #[error("not a chain map: commutation with boundaries fails at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("augmentation requires a complex starting in degree 0, found {0}")]
    BadAugmentation(i64),
}

/// One (co)homology group: free rank plus torsion coefficients `> 1` in
/// divisibility order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in a contiguous range of degrees. Degrees outside the range are
/// zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyProfile {
    pub min_degree: i64,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn at(&self, degree: i64) -> HomologyGroup {
        if degree < self.min_degree {
            return HomologyGroup::default();
        }
        self.groups
            .get((degree - self.min_degree) as usize)
            .cloned()
            .unwrap_or_default()
    }

    pub fn free_rank(&self, degree: i64) -> usize {
        self.at(degree).free_rank
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.groups.len()).map(move |k| self.min_degree + k as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Degrees carrying a nonzero group, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.degrees().filter(|&d| !self.at(d).is_zero()).collect()
    }

    /// Same groups with torsion dropped; what rational coefficients would see.
    pub fn rationalized(&self) -> HomologyProfile {
        HomologyProfile {
            min_degree: self.min_degree,
            groups: self
                .groups
                .iter()
                .map(|g| HomologyGroup::free(g.free_rank))
                .collect(),
        }
    }

    /// Degree-wise comparison over the union of both ranges.
    pub fn same_groups(&self, other: &HomologyProfile) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn first_difference(&self, other: &HomologyProfile) -> Option<i64> {
        let lo = self.min_degree.min(other.min_degree);
        let hi = (self.min_degree + self.groups.len() as i64)
            .max(other.min_degree + other.groups.len() as i64);
        (lo..hi).find(|&d| self.at(d) != other.at(d))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|d| {
                let r = self.free_rank(d) as i64;
                if d.rem_euclid(2) == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .degrees()
            .map(|d| format!("{d}: {}", self.at(d)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Chain complex `... -> C_d -> C_{d-1} -> ...` of free abelian groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    min_degree: i64,
    ranks: Vec<usize>,
    /// `boundaries[k]` is the boundary out of degree `min_degree + k`.
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    /// Validates shapes and that consecutive boundaries compose to zero.
    pub fn new(
        min_degree: i64,
        ranks: Vec<usize>,
        boundaries: Vec<IntegerMatrix>,
    ) -> Result<Self, ComplexError> {
        assert_eq!(ranks.len(), boundaries.len(), "one boundary per degree");
        for (k, b) in boundaries.iter().enumerate() {
            let below = if k == 0 { 0 } else { ranks[k - 1] };
            let expected = (below, ranks[k]);
            if (b.rows(), b.cols()) != expected {
                return Err(ComplexError::ShapeMismatch {
                    degree: min_degree + k as i64,
                    expected,
                    found: (b.rows(), b.cols()),
                });
            }
        }
        for k in 1..boundaries.len() {
            if boundaries[k - 1].rows() == 0 || boundaries[k].cols() == 0 {
                continue;
            }
            if !boundaries[k - 1].mul(&boundaries[k]).is_zero() {
                return Err(ComplexError::MalformedComplex {
                    degree: min_degree + k as i64,
                });
            }
        }
        Ok(ChainComplex {
            min_degree,
            ranks,
            boundaries,
        })
    }

    pub fn empty() -> Self {
        ChainComplex {
            min_degree: 0,
            ranks: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.ranks.len()).map(move |k| self.min_degree + k as i64)
    }

    fn slot(&self, degree: i64) -> Option<usize> {
        if degree < self.min_degree {
            return None;
        }
        let k = (degree - self.min_degree) as usize;
        (k < self.ranks.len()).then_some(k)
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.slot(degree).map_or(0, |k| self.ranks[k])
    }

    /// Boundary out of `degree`, shape `rank(degree - 1) x rank(degree)`.
    pub fn boundary(&self, degree: i64) -> IntegerMatrix {
        match self.slot(degree) {
            Some(k) => self.boundaries[k].clone(),
            None => IntegerMatrix::zeros(self.rank(degree - 1), self.rank(degree)),
        }
    }

    fn boundary_ref(&self, degree: i64) -> Option<&IntegerMatrix> {
        self.slot(degree).map(|k| &self.boundaries[k])
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|d| {
                let r = self.rank(d) as i64;
                if d.rem_euclid(2) == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    /// The cochain complex, reindexed so that `C^d` sits in degree `-d` and
    /// the coboundary lowers the new degree by one.
    pub fn dual(&self) -> ChainComplex {
        if self.ranks.is_empty() {
            return ChainComplex::empty();
        }
        let max = self.max_degree();
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        let boundaries = (0..ranks.len())
            .map(|k| {
                let d = max - k as i64;
                match self.boundary_ref(d + 1) {
                    Some(b) => b.transpose(),
                    None => IntegerMatrix::zeros(0, self.rank(d)),
                }
            })
            .collect();
        ChainComplex {
            min_degree: -max,
            ranks,
            boundaries,
        }
    }

    /// Prepends degree -1 of rank one with the augmentation sending every
    /// degree-0 generator to 1.
    pub fn augmented(&self) -> Result<ChainComplex, ComplexError> {
        if self.ranks.is_empty() {
            return ChainComplex::new(-1, vec![1], vec![IntegerMatrix::zeros(0, 1)]);
        }
        if self.min_degree != 0 {
            return Err(ComplexError::BadAugmentation(self.min_degree));
        }
        let mut ranks = vec![1];
        ranks.extend(&self.ranks);
        let mut boundaries = vec![IntegerMatrix::zeros(0, 1)];
        boundaries.push(IntegerMatrix::from_fn(1, self.ranks[0], |_, _| {
            BigInt::one()
        }));
        boundaries.extend(self.boundaries.iter().skip(1).cloned());
        ChainComplex::new(-1, ranks, boundaries)
    }

    /// Transform of every boundary matrix's invariant factors, computed once.
    fn boundary_invariants(&self) -> Vec<Vec<BigInt>> {
        self.boundaries.iter().map(invariant_factors).collect()
    }
}

/// Homology over the requested coefficients, one group per degree of `c`.
pub fn homology(c: &ChainComplex, coefficients: Coefficients) -> HomologyProfile {
    let inv = c.boundary_invariants();
    let groups = (0..c.ranks.len())
        .map(|k| {
            let rank_out = inv[k].len();
            let incoming: &[BigInt] = inv.get(k + 1).map_or(&[], Vec::as_slice);
            let free_rank = c.ranks[k] - rank_out - incoming.len();
            let torsion = match coefficients {
                Coefficients::Integers => {
                    incoming.iter().filter(|d| !d.is_one()).cloned().collect()
                }
                Coefficients::Rationals => Vec::new(),
            };
            HomologyGroup { free_rank, torsion }
        })
        .collect();
    HomologyProfile {
        min_degree: c.min_degree,
        groups,
    }
}

/// Cohomology computed from the transposed boundaries.
pub fn cohomology(c: &ChainComplex, coefficients: Coefficients) -> HomologyProfile {
    let dual = homology(&c.dual(), coefficients);
    if c.ranks.is_empty() {
        return HomologyProfile::default();
    }
    HomologyProfile {
        min_degree: c.min_degree,
        groups: c.degrees().map(|d| dual.at(-d)).collect(),
    }
}

/// A quotient complex together with, per degree, the indices of the total
/// complex's generators that survive (in order).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: ChainComplex,
    pub retained: Vec<Vec<usize>>,
}

/// Quotient of `total` by the subcomplex spanned by `sub_generators`, given per
/// degree of `total` (missing trailing degrees mean "nothing selected").
pub fn quotient_complex(
    total: &ChainComplex,
    sub_generators: &[BTreeSet<usize>],
) -> Result<Quotient, ComplexError> {
    let empty = BTreeSet::new();
    let selected = |k: usize| sub_generators.get(k).unwrap_or(&empty);
    for k in 0..total.ranks.len() {
        let degree = total.min_degree + k as i64;
        if let Some(&g) = selected(k).iter().find(|&&g| g >= total.ranks[k]) {
            return Err(ComplexError::BadSelection {
                degree,
                generator: g,
            });
        }
        if k == 0 {
            continue;
        }
        let b = &total.boundaries[k];
        for &g in selected(k) {
            for r in 0..b.rows() {
                if !b.get(r, g).is_zero() && !selected(k - 1).contains(&r) {
                    return Err(ComplexError::NotASubcomplex {
                        degree,
                        generator: g,
                    });
                }
            }
        }
    }
    let retained: Vec<Vec<usize>> = (0..total.ranks.len())
        .map(|k| {
            (0..total.ranks[k])
                .filter(|g| !selected(k).contains(g))
                .collect()
        })
        .collect();
    let ranks: Vec<usize> = retained.iter().map(Vec::len).collect();
    let boundaries = (0..total.ranks.len())
        .map(|k| {
            let rows: &[usize] = if k == 0 { &[] } else { &retained[k - 1] };
            total.boundaries[k].submatrix(rows, &retained[k])
        })
        .collect();
    Ok(Quotient {
        complex: ChainComplex::new(total.min_degree, ranks, boundaries)?,
        retained,
    })
}

/// Per-degree integer matrices `f_d : S_d -> T_d`; missing degrees are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub min_degree: i64,
    pub components: Vec<IntegerMatrix>,
}

impl ChainMap {
    pub fn component(
        &self,
        degree: i64,
        source: &ChainComplex,
        target: &ChainComplex,
    ) -> IntegerMatrix {
        if degree >= self.min_degree {
            if let Some(m) = self.components.get((degree - self.min_degree) as usize) {
                return m.clone();
            }
        }
        IntegerMatrix::zeros(target.rank(degree), source.rank(degree))
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        ChainMap {
            min_degree: c.min_degree,
            components: c
                .ranks
                .iter()
                .map(|&r| IntegerMatrix::identity(r))
                .collect(),
        }
    }

    /// `self` after `first`, degree-wise.
    pub fn compose(
        &self,
        first: &ChainMap,
        source: &ChainComplex,
        middle: &ChainComplex,
        target: &ChainComplex,
    ) -> ChainMap {
        ChainMap {
            min_degree: source.min_degree,
            components: source
                .degrees()
                .map(|d| {
                    self.component(d, middle, target)
                        .mul(&first.component(d, source, middle))
                })
                .collect(),
        }
    }
}

/// Rational homology with a fixed basis of cycle representatives and a way
/// to read off coordinates of any cycle.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    min_degree: i64,
    per_degree: Vec<DegreeBasis>,
}

#[derive(Clone, Debug)]
struct DegreeBasis {
    /// Representatives of a basis of `Z_d / B_d`, as columns.
    representatives: Vec<Vec<BigRational>>,
    /// `[basis of B_d | representatives]`, a basis of `Z_d`.
    cycle_basis: RationalMatrix,
    boundary_rank: usize,
}

impl HomologyBasis {
    pub fn new(c: &ChainComplex) -> HomologyBasis {
        let per_degree = c
            .degrees()
            .map(|d| {
                let n = c.rank(d);
                let cycles = RationalMatrix::from_integer(&c.boundary(d)).kernel_basis();
                let incoming = c.boundary(d + 1);
                let m = incoming.cols();
                let mut columns: Vec<Vec<BigRational>> = (0..m)
                    .map(|j| {
                        incoming
                            .column(j)
                            .into_iter()
                            .map(BigRational::from_integer)
                            .collect()
                    })
                    .collect();
                columns.extend(cycles.iter().cloned());
                let joined = RationalMatrix::from_columns(n, &columns);
                let pivots = joined.rref().pivots;
                let boundary_cols: Vec<Vec<BigRational>> = pivots
                    .iter()
                    .filter(|&&p| p < m)
                    .map(|&p| columns[p].clone())
                    .collect();
                let representatives: Vec<Vec<BigRational>> = pivots
                    .iter()
                    .filter(|&&p| p >= m)
                    .map(|&p| columns[p].clone())
                    .collect();
                let boundary_rank = boundary_cols.len();
                let mut all = boundary_cols;
                all.extend(representatives.iter().cloned());
                DegreeBasis {
                    representatives,
                    cycle_basis: RationalMatrix::from_columns(n, &all),
                    boundary_rank,
                }
            })
            .collect();
        HomologyBasis {
            min_degree: c.min_degree,
            per_degree,
        }
    }

    fn degree(&self, d: i64) -> Option<&DegreeBasis> {
        if d < self.min_degree {
            return None;
        }
        self.per_degree.get((d - self.min_degree) as usize)
    }

    pub fn dimension(&self, d: i64) -> usize {
        self.degree(d).map_or(0, |b| b.representatives.len())
    }

    pub fn representatives(&self, d: i64) -> &[Vec<BigRational>] {
        self.degree(d).map_or(&[], |b| b.representatives.as_slice())
    }

    /// Coordinates of the given cycles (columns) in the homology basis.
    /// Panics if a column is not a cycle of the complex this basis was built
    /// from.
    pub fn coordinates(&self, d: i64, cycles: &RationalMatrix) -> RationalMatrix {
        let Some(b) = self.degree(d) else {
            return RationalMatrix::zeros(0, cycles.cols());
        };
        let h = b.representatives.len();
        if h == 0 {
            return RationalMatrix::zeros(0, cycles.cols());
        }
        let x = b
            .cycle_basis
            .solve_full_column_rank(cycles)
            .expect("coordinates requested for a chain that is not a cycle");
        let mut out = RationalMatrix::zeros(h, cycles.cols());
        for i in 0..h {
            for j in 0..cycles.cols() {
                out.set(i, j, x.get(b.boundary_rank + i, j).clone());
            }
        }
        out
    }
}

/// Matrices of an induced map on rational homology, one per source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub min_degree: i64,
    pub matrices: Vec<RationalMatrix>,
}

impl InducedMap {
    pub fn at(&self, degree: i64) -> Option<&RationalMatrix> {
        if degree < self.min_degree {
            return None;
        }
        self.matrices.get((degree - self.min_degree) as usize)
    }
}

/// Checks that `f` commutes with the boundaries.
pub fn check_chain_map(
    f: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
) -> Result<(), ComplexError> {
    let lo = source.min_degree.min(target.min_degree);
    let hi = source.max_degree().max(target.max_degree()) + 1;
    for d in lo..=hi {
        let left = target.boundary(d).mul(&f.component(d, source, target));
        let right = f.component(d - 1, source, target).mul(&source.boundary(d));
        if left != right {
            return Err(ComplexError::NotAChainMap { degree: d });
        }
    }
    Ok(())
}

/// Induced map on rational homology in the bases chosen by [`HomologyBasis`].
pub fn induced_map_on_homology(
    f: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
) -> Result<InducedMap, ComplexError> {
    check_chain_map(f, source, target)?;
    let sb = HomologyBasis::new(source);
    let tb = HomologyBasis::new(target);
    Ok(induced_map_with_bases(f, source, target, &sb, &tb))
}

/// As [`induced_map_on_homology`], reusing precomputed bases and skipping the
/// chain-map check.
pub fn induced_map_with_bases(
    f: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
    source_basis: &HomologyBasis,
    target_basis: &HomologyBasis,
) -> InducedMap {
    let matrices = source
        .degrees()
        .map(|d| {
            let fd = f.component(d, source, target);
            let images: Vec<Vec<BigRational>> = source_basis
                .representatives(d)
                .iter()
                .map(|z| RationalMatrix::apply_integer(&fd, z))
                .collect();
            if images.is_empty() {
                return RationalMatrix::zeros(target_basis.dimension(d), 0);
            }
            let cycles = RationalMatrix::from_columns(target.rank(d), &images);
            target_basis.coordinates(d, &cycles)
        })
        .collect();
    InducedMap {
        min_degree: source.min_degree,
        matrices,
    }
}

/// Convenience for building complexes from small literal matrices.
pub fn complex_from_rows(
    min_degree: i64,
    ranks: &[usize],
    boundaries: &[Vec<Vec<i64>>],
) -> Result<ChainComplex, ComplexError> {
    let mats = boundaries
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            if rows.is_empty() {
                let below = if k == 0 { 0 } else { ranks[k - 1] };
                IntegerMatrix::zeros(below, ranks[k])
            } else {
                IntegerMatrix::from_rows(rows)
            }
        })
        .collect();
    ChainComplex::new(min_degree, ranks.to_vec(), mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangle boundary: vertices a,b,c; edges ab, ac, bc with d(xy) = y - x.
    fn circle() -> ChainComplex {
        complex_from_rows(
            0,
            &[3, 3],
            &[vec![], vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]],
        )
        .unwrap()
    }

    fn rp2() -> ChainComplex {
        complex_from_rows(0, &[1, 1, 1], &[vec![], vec![vec![0]], vec![vec![2]]]).unwrap()
    }

    fn z(n: usize) -> HomologyGroup {
        HomologyGroup::free(n)
    }

    #[test]
    fn circle_homology_and_cohomology() {
        let h = homology(&circle(), Coefficients::Integers);
        assert_eq!(h.at(0), z(1));
        assert_eq!(h.at(1), z(1));
        let c = cohomology(&circle(), Coefficients::Integers);
        assert_eq!(c.at(0), z(1));
        assert_eq!(c.at(1), z(1));
    }

    #[test]
    fn projective_plane_torsion() {
        let h = homology(&rp2(), Coefficients::Integers);
        assert_eq!(h.at(0), z(1));
        assert_eq!(
            h.at(1),
            HomologyGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        assert!(h.at(2).is_zero());
        let c = cohomology(&rp2(), Coefficients::Integers);
        assert_eq!(c.at(0), z(1));
        assert!(c.at(1).is_zero());
        assert_eq!(
            c.at(2),
            HomologyGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        let q = homology(&rp2(), Coefficients::Rationals);
        assert_eq!(q.at(1), z(0));
    }

    #[test]
    fn empty_complex() {
        let e = ChainComplex::empty();
        assert!(homology(&e, Coefficients::Integers).is_zero());
        assert!(cohomology(&e, Coefficients::Integers).is_zero());
    }

    #[test]
    fn malformed_is_rejected() {
        let err =
            complex_from_rows(0, &[1, 1, 1], &[vec![], vec![vec![1]], vec![vec![1]]]).unwrap_err();
        assert_eq!(err, ComplexError::MalformedComplex { degree: 2 });
    }

    #[test]
    fn disk_relative_to_circle() {
        // Triangle with its 2-cell; boundary of the 2-cell is ab - ac + bc.
        let disk = complex_from_rows(
            0,
            &[3, 3, 1],
            &[
                vec![],
                vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]],
                vec![vec![1], vec![-1], vec![1]],
            ],
        )
        .unwrap();
        let sub = vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([0, 1, 2])];
        let q = quotient_complex(&disk, &sub).unwrap();
        let h = homology(&q.complex, Coefficients::Integers);
        assert_eq!(h.at(2), z(1));
        assert!(h.at(0).is_zero() && h.at(1).is_zero());

        let all = vec![
            BTreeSet::from([0, 1, 2]),
            BTreeSet::from([0, 1, 2]),
            BTreeSet::from([0]),
        ];
        assert!(homology(
            &quotient_complex(&disk, &all).unwrap().complex,
            Coefficients::Integers
        )
        .is_zero());

        let none = quotient_complex(&disk, &[]).unwrap();
        assert_eq!(none.complex, disk);

        let bad = vec![BTreeSet::new(), BTreeSet::from([0])];
        assert_eq!(
            quotient_complex(&disk, &bad).unwrap_err(),
            ComplexError::NotASubcomplex {
                degree: 1,
                generator: 0
            }
        );
    }

    #[test]
    fn augmentation_gives_reduced_homology() {
        let h = homology(&circle().augmented().unwrap(), Coefficients::Integers);
        assert!(h.at(-1).is_zero());
        assert!(h.at(0).is_zero());
        assert_eq!(h.at(1), z(1));
        let empty = homology(
            &ChainComplex::empty().augmented().unwrap(),
            Coefficients::Integers,
        );
        assert_eq!(empty.at(-1), z(1));
    }

    #[test]
    fn induced_maps() {
        let c = circle();
        let id = induced_map_on_homology(&ChainMap::identity(&c), &c, &c).unwrap();
        assert_eq!(id.at(0).unwrap(), &RationalMatrix::identity(1));
        assert_eq!(id.at(1).unwrap(), &RationalMatrix::identity(1));

        // Multiplication by two on every chain group is a chain map.
        let two = ChainMap {
            min_degree: 0,
            components: vec![
                IntegerMatrix::from_fn(3, 3, |i, j| BigInt::from(if i == j { 2 } else { 0 })),
                IntegerMatrix::from_fn(3, 3, |i, j| BigInt::from(if i == j { 2 } else { 0 })),
            ],
        };
        let m = induced_map_on_homology(&two, &c, &c).unwrap();
        let two_q = BigRational::from_integer(BigInt::from(2));
        assert_eq!(m.at(1).unwrap().get(0, 0), &two_q);

        // Inclusion of vertex a.
        let point = complex_from_rows(0, &[1], &[vec![]]).unwrap();
        let incl = ChainMap {
            min_degree: 0,
            components: vec![IntegerMatrix::from_rows(&[vec![1], vec![0], vec![0]])],
        };
        let m = induced_map_on_homology(&incl, &point, &c).unwrap();
        assert_eq!(m.at(0).unwrap(), &RationalMatrix::identity(1));

        let not_chain = ChainMap {
            min_degree: 0,
            components: vec![IntegerMatrix::identity(3), IntegerMatrix::zeros(3, 3)],
        };
        assert!(matches!(
            induced_map_on_homology(&not_chain, &c, &c),
            Err(ComplexError::NotAChainMap { .. })
        ));
    }
}
