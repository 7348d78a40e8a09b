//! The cosheaf of local cohomology on a face poset and the dihomology
//! comparison `H_r(S; H^D) = H^(D-r)(|S|)` for Cohen–Macaulay posets, where
//! `D` is the top degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::complexes::{
    cohomology, homology, induced_map_with_bases, ChainComplex, ChainMap, Coefficients,
    HomologyBasis, HomologyGroup, HomologyProfile,
};
use crate::exactalg::{smith_normal_form, IntegerMatrix, RationalMatrix};
use crate::par::{self, Strategy};
use crate::poset::{check_cohen_macaulay, order_complex, GradedPoset};
use crate::sponge::{validate_sponge, Realization, SpongeComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosheafError {
    #[error("face poset is not Cohen-Macaulay ({witnesses} failing links)")]
    NotCohenMacaulay { witnesses: usize },
    #[error("invalid sponge: {0}")]
    InvalidSponge(String),
}

/// Local cohomology `H^*(s)` at every element, with the maps `H^*(s) ->
/// H^*(t)` for every cover `s > t`, over the rationals.
#[derive(Clone, Debug)]
pub struct LocalCohomologyCosheaf {
    base: GradedPoset,
    signs: BTreeMap<(usize, usize), i64>,
    /// Integral local cohomology per element.
    sections: Vec<HomologyProfile>,
    /// `(s, t)` -> matrices by cohomological degree `0..=top`.
    cover_maps: BTreeMap<(usize, usize), Vec<RationalMatrix>>,
    top: usize,
}

impl LocalCohomologyCosheaf {
    pub fn base(&self) -> &GradedPoset {
        &self.base
    }

    pub fn section(&self, s: usize) -> &HomologyProfile {
        &self.sections[s]
    }

    pub fn sections(&self) -> &[HomologyProfile] {
        &self.sections
    }

    /// Matrix of `H^p(s) -> H^p(t)` for a cover `s > t`.
    pub fn cover_map(&self, s: usize, t: usize, p: usize) -> Option<&RationalMatrix> {
        self.cover_maps.get(&(s, t)).and_then(|ms| ms.get(p))
    }

    /// Largest cohomological degree of the underlying order complex.
    pub fn top_degree(&self) -> usize {
        self.top
    }

    fn dimension(&self, s: usize, p: usize) -> usize {
        self.sections[s].free_rank(p as i64)
    }

    /// Boundary matrices of `C_i = sum over rank-i elements of H^p(s)`, with
    /// blocks `[s:t] * H^p(s > t)`, for `i = 1..=max rank`. Index `i-1` holds
    /// `d_i : C_i -> C_(i-1)`.
    pub fn boundary_matrices(&self, p: usize) -> Vec<RationalMatrix> {
        let max = self.base.max_rank().unwrap_or(0);
        let by_rank: Vec<Vec<usize>> = (0..=max).map(|r| self.base.of_rank(r).collect()).collect();
        (1..=max)
            .map(|i| {
                let rows: Vec<usize> = by_rank[i - 1]
                    .iter()
                    .map(|&t| self.dimension(t, p))
                    .collect();
                let cols: Vec<usize> = by_rank[i].iter().map(|&s| self.dimension(s, p)).collect();
                let row_of: BTreeMap<usize, usize> = by_rank[i - 1]
                    .iter()
                    .enumerate()
                    .map(|(k, &t)| (t, k))
                    .collect();
                let mut blocks = Vec::new();
                for (bj, &s) in by_rank[i].iter().enumerate() {
                    for &t in self.base.down(s) {
                        let sign = BigRational::from_integer(BigInt::from(self.signs[&(s, t)]));
                        let m = &self.cover_maps[&(s, t)][p];
                        blocks.push((row_of[&t], bj, m.scale(&sign)));
                    }
                }
                RationalMatrix::block(&rows, &cols, &blocks)
            })
            .collect()
    }
}

/// Builds the cosheaf on a signed poset. `origin` marks the cone point of a
/// non-compact sponge (see [`crate::sponge::local_cohomology`]).
pub fn build_cosheaf_on(
    p: &GradedPoset,
    signs: &BTreeMap<(usize, usize), i64>,
    origin: Option<usize>,
    strategy: Strategy,
) -> LocalCohomologyCosheaf {
    let real = Realization::new(p);
    let top = real.chains.len().saturating_sub(1);
    let elements: Vec<usize> = (0..p.len()).collect();
    let local = par::map(strategy, &elements, |&s| {
        let q = real.local_quotient(p, s, origin);
        let dual = q.complex.dual();
        let basis = HomologyBasis::new(&dual);
        let profile = cohomology(&q.complex, Coefficients::Integers);
        (q.retained, dual, basis, profile)
    });
    let covers = p.covers();
    let maps = par::map(strategy, &covers, |&(s, t)| {
        let (ret_s, dual_s, basis_s, _) = &local[s];
        let (ret_t, dual_t, basis_t, _) = &local[t];
        let f = inclusion_of_cochains(ret_s, ret_t, dual_s);
        let induced = induced_map_with_bases(&f, dual_s, dual_t, basis_s, basis_t);
        (0..=top)
            .map(|d| {
                induced.at(-(d as i64)).cloned().unwrap_or_else(|| {
                    RationalMatrix::zeros(
                        basis_t.dimension(-(d as i64)),
                        basis_s.dimension(-(d as i64)),
                    )
                })
            })
            .collect::<Vec<_>>()
    });
    LocalCohomologyCosheaf {
        base: p.clone(),
        signs: signs.clone(),
        sections: local.into_iter().map(|l| l.3).collect(),
        cover_maps: covers.into_iter().zip(maps).collect(),
        top,
    }
}

/// Cochains of the smaller quotient (at `s`) include into those of the
/// larger one (at `t`); in dual degree `-d` the map is the transpose of the
/// projection of chains.
fn inclusion_of_cochains(
    ret_s: &[Vec<usize>],
    ret_t: &[Vec<usize>],
    dual_s: &ChainComplex,
) -> ChainMap {
    let top = ret_s.len() - 1;
    let components = (0..=top)
        .rev()
        .map(|d| {
            let position: BTreeMap<usize, usize> =
                ret_t[d].iter().enumerate().map(|(k, &g)| (g, k)).collect();
            let mut m = IntegerMatrix::zeros(ret_t[d].len(), ret_s[d].len());
            for (j, g) in ret_s[d].iter().enumerate() {
                m.set(position[g], j, BigInt::one());
            }
            m
        })
        .collect();
    ChainMap {
        min_degree: dual_s.min_degree(),
        components,
    }
}

/// Cosheaf of a sponge, using its incidence numbers as the sign convention.
pub fn build_cosheaf(z: &SpongeComplex, strategy: Strategy) -> LocalCohomologyCosheaf {
    build_cosheaf_on(z.faces(), z.incidences(), z.origin(), strategy)
}

/// Rational homology of the cosheaf chain complex in cohomological degree
/// `p`, indexed by rank.
pub fn cosheaf_homology(c: &LocalCohomologyCosheaf, p: usize) -> HomologyProfile {
    let max = c.base.max_rank().unwrap_or(0);
    let dims: Vec<usize> = (0..=max)
        .map(|r| c.base.of_rank(r).map(|s| c.dimension(s, p)).sum())
        .collect();
    let boundaries = c.boundary_matrices(p);
    for w in boundaries.windows(2) {
        assert!(
            w[0].mul(&w[1]).is_zero(),
            "cosheaf boundary does not square to zero"
        );
    }
    let ranks: Vec<usize> = boundaries.iter().map(RationalMatrix::rank).collect();
    let groups = (0..=max)
        .map(|i| {
            let out = if i == 0 { 0 } else { ranks[i - 1] };
            let inc = ranks.get(i).copied().unwrap_or(0);
            HomologyGroup::free(dims[i] - out - inc)
        })
        .collect();
    HomologyProfile {
        min_degree: 0,
        groups,
    }
}

/// Integral version of the top-degree cosheaf complex, available when every
/// section is torsion-free and concentrated in the top degree `D`. Then
/// `H^D(s)` is the cokernel of the last coboundary, and Smith transforms give
/// integral bases and integral cover maps.
pub fn integral_top_complex(
    p: &GradedPoset,
    signs: &BTreeMap<(usize, usize), i64>,
    origin: Option<usize>,
) -> Option<ChainComplex> {
    let real = Realization::new(p);
    let top = real.chains.len().checked_sub(1)?;
    struct Coker {
        retained: Vec<usize>,
        u: IntegerMatrix,
        u_inverse: IntegerMatrix,
        rank: usize,
    }
    let mut cokers = Vec::with_capacity(p.len());
    for s in 0..p.len() {
        let q = real.local_quotient(p, s, origin);
        let h = cohomology(&q.complex, Coefficients::Integers);
        if h.degrees().any(|d| d != top as i64 && !h.at(d).is_zero())
            || !h.at(top as i64).torsion.is_empty()
        {
            return None;
        }
        let delta = q.complex.boundary(top as i64).transpose();
        let snf = smith_normal_form(&delta);
        if snf.diagonal.iter().any(|d| !d.is_one()) {
            return None;
        }
        let n = delta.rows();
        let u_inverse = RationalMatrix::from_integer(&snf.u)
            .solve_full_column_rank(&RationalMatrix::identity(n))
            .and_then(|m| m.to_integer())
            .expect("unimodular transform has an integral inverse");
        cokers.push(Coker {
            retained: q.retained[top].clone(),
            u: snf.u,
            u_inverse,
            rank: snf.diagonal.len(),
        });
    }
    let dim = |s: usize| cokers[s].u.rows() - cokers[s].rank;
    let max = p.max_rank().unwrap_or(0);
    let by_rank: Vec<Vec<usize>> = (0..=max).map(|r| p.of_rank(r).collect()).collect();
    let ranks: Vec<usize> = by_rank
        .iter()
        .map(|es| es.iter().map(|&s| dim(s)).sum())
        .collect();
    let mut boundaries = vec![IntegerMatrix::zeros(0, ranks[0])];
    for i in 1..=max {
        let mut m = IntegerMatrix::zeros(ranks[i - 1], ranks[i]);
        let mut row_off = BTreeMap::new();
        let mut acc = 0;
        for &t in &by_rank[i - 1] {
            row_off.insert(t, acc);
            acc += dim(t);
        }
        let mut col = 0;
        for &s in &by_rank[i] {
            let cs = &cokers[s];
            for k in 0..dim(s) {
                // Lift the k-th free generator at s to a top cochain, include
                // it at t and read off coordinates there.
                let lift = cs.u_inverse.column(cs.rank + k);
                for &t in p.down(s) {
                    let ct = &cokers[t];
                    let position: BTreeMap<usize, usize> = ct
                        .retained
                        .iter()
                        .enumerate()
                        .map(|(a, &g)| (g, a))
                        .collect();
                    let mut included = vec![BigInt::zero(); ct.retained.len()];
                    for (a, g) in cs.retained.iter().enumerate() {
                        included[position[g]] = lift[a].clone();
                    }
                    let coords = ct.u.mul_vec(&included);
                    let sign = BigInt::from(signs[&(s, t)]);
                    for (r, x) in coords[ct.rank..].iter().enumerate() {
                        let cur = m.get(row_off[&t] + r, col).clone();
                        m.set(row_off[&t] + r, col, cur + x * &sign);
                    }
                }
                col += 1;
            }
        }
        boundaries.push(m);
    }
    Some(
        ChainComplex::new(0, ranks, boundaries).expect("integral cosheaf boundary squares to zero"),
    )
}

/// Outcome of comparing both sides of the dihomology isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihomologyReport {
    pub top_degree: usize,
    /// `(element id, degree)` where a section is nonzero off the top degree.
    pub off_top_sections: Vec<(String, i64)>,
    /// `H_r(S; H^D)` over the rationals, `r = 0..`.
    pub cosheaf_side: HomologyProfile,
    /// `H^(D-r)(|S|)` over the rationals, listed by `r`.
    pub space_side: HomologyProfile,
    /// First `r` where the rational ranks differ.
    pub rank_mismatch: Option<i64>,
    /// Integral comparison, when the sections allow it.
    pub integral: Option<IntegralComparison>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralComparison {
    pub cosheaf_side: HomologyProfile,
    pub space_side: HomologyProfile,
    pub first_mismatch: Option<i64>,
}

/// Checks the Cohen–Macaulay property, concentration of the cosheaf in the
/// top degree, and then compares `H_r(S; H^D)` with `H^(D-r)(|S|)`.
pub fn dihomology_check(
    z: &SpongeComplex,
    strategy: Strategy,
) -> Result<DihomologyReport, CosheafError> {
    let p = z.faces();
    let cm = check_cohen_macaulay(p, Coefficients::Integers, strategy);
    if !cm.is_cm {
        return Err(CosheafError::NotCohenMacaulay {
            witnesses: cm.witnesses.len(),
        });
    }
    let validation = validate_sponge(z);
    if !validation.is_valid() {
        return Err(CosheafError::InvalidSponge(format!(
            "{} interval and {} diamond violations",
            validation.interval_violations.len(),
            validation.diamond_violations.len()
        )));
    }
    let cosheaf = build_cosheaf(z, strategy);
    let top = cosheaf.top_degree();
    let off_top_sections: Vec<(String, i64)> = (0..p.len())
        .flat_map(|s| {
            let h = cosheaf.section(s);
            h.degrees()
                .filter(|&d| d != top as i64 && !h.at(d).is_zero())
                .map(|d| (p.id(s).to_string(), d))
                .collect::<Vec<_>>()
        })
        .collect();
    let cosheaf_side = cosheaf_homology(&cosheaf, top);
    let space = cohomology(&order_complex(p).chain_complex().0, Coefficients::Integers);
    let by_r = |h: &HomologyProfile| HomologyProfile {
        min_degree: 0,
        groups: (0..=top).map(|r| h.at(top as i64 - r as i64)).collect(),
    };
    let space_side_z = by_r(&space);
    let space_side = space_side_z.rationalized();
    let rank_mismatch =
        (0..=top as i64).find(|&r| cosheaf_side.free_rank(r) != space_side.free_rank(r));
    let integral = integral_top_complex(p, z.incidences(), z.origin()).map(|c| {
        let left = homology(&c, Coefficients::Integers);
        let left = HomologyProfile {
            min_degree: 0,
            groups: (0..=top as i64).map(|r| left.at(r)).collect(),
        };
        IntegralComparison {
            first_mismatch: left.first_difference(&space_side_z),
            cosheaf_side: left,
            space_side: space_side_z.clone(),
        }
    });
    let passed = off_top_sections.is_empty()
        && rank_mismatch.is_none()
        && integral.as_ref().is_none_or(|i| i.first_mismatch.is_none());
    Ok(DihomologyReport {
        top_degree: top,
        off_top_sections,
        cosheaf_side,
        space_side,
        rank_mismatch,
        integral,
        passed,
    })
}
