//! Sponges: graded face posets with signed incidence numbers.
//!
//! A sponge of parameter `n` has faces of dimension `0..=n-2`. Its cellular
//! chain complex uses the incidence numbers as boundary entries, and its
//! geometric realization is modelled by the order complex of the face poset.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::complexes::{
    cohomology, quotient_complex, ChainComplex, Coefficients, HomologyGroup, HomologyProfile,
};
use crate::exactalg::IntegerMatrix;
use crate::poset::{order_complex, GradedPoset, PosetError, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpongeError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("sponge parameter n must be at least 2, got {0}")]
    BadParameter(usize),
    #[error("face {id:?} has dimension {dim}, above n - 2 = {top}")]
    DimensionTooLarge { id: String, dim: usize, top: usize },
    #[error("cover {upper:?} > {lower:?} has no incidence number")]
    MissingIncidence { upper: String, lower: String },
    #[error("incidence {upper:?} > {lower:?} is zero")]
    ZeroIncidence { upper: String, lower: String },
    #[error("incidence {upper:?} > {lower:?} is not a cover pair")]
    IncidenceNotACover { upper: String, lower: String },
    #[error("invalid sponge: {0}")]
    InvalidSponge(String),
    #[error("operation is not defined for non-compact sponges")]
    NonCompact,
    #[error("a non-compact sponge needs a unique minimal face")]
    NoOrigin,
    #[error("interval {upper:?} > {lower:?} has {middles} intermediate elements, expected 2")]
    NotDiamond {
        upper: String,
        lower: String,
        middles: usize,
    },
    #[error("the diamond relations admit no sign assignment")]
    Unsolvable,
}

/// Face poset plus incidence numbers `[F:G]` on every cover pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpongeComplex {
    n: usize,
    faces: GradedPoset,
    /// Keyed by `(upper, lower)` element indices.
    incidence: BTreeMap<(usize, usize), i64>,
    non_compact: bool,
}

impl SpongeComplex {
    /// Structural checks only; the sponge axioms are checked by
    /// [`validate_sponge`].
    pub fn new(
        n: usize,
        faces: GradedPoset,
        incidence: &BTreeMap<(String, String), i64>,
        non_compact: bool,
    ) -> Result<Self, SpongeError> {
        if n < 2 {
            return Err(SpongeError::BadParameter(n));
        }
        for i in 0..faces.len() {
            if faces.rank(i) > n - 2 {
                return Err(SpongeError::DimensionTooLarge {
                    id: faces.id(i).to_string(),
                    dim: faces.rank(i),
                    top: n - 2,
                });
            }
        }
        let mut map = BTreeMap::new();
        for ((u, l), &v) in incidence {
            let (ui, li) = (faces.index_of(u)?, faces.index_of(l)?);
            if !faces.down(ui).contains(&li) {
                return Err(SpongeError::IncidenceNotACover {
                    upper: u.clone(),
                    lower: l.clone(),
                });
            }
            if v == 0 {
                return Err(SpongeError::ZeroIncidence {
                    upper: u.clone(),
                    lower: l.clone(),
                });
            }
            map.insert((ui, li), v);
        }
        for (u, l) in faces.covers() {
            if !map.contains_key(&(u, l)) {
                return Err(SpongeError::MissingIncidence {
                    upper: faces.id(u).to_string(),
                    lower: faces.id(l).to_string(),
                });
            }
        }
        if non_compact && faces.of_rank(0).count() != 1 {
            return Err(SpongeError::NoOrigin);
        }
        Ok(SpongeComplex {
            n,
            faces,
            incidence: map,
            non_compact,
        })
    }

    /// Builds a sponge from a poset and index-keyed incidences, as produced by
    /// [`sign_solver`].
    pub fn with_signs(
        n: usize,
        faces: GradedPoset,
        signs: &BTreeMap<(usize, usize), i64>,
        non_compact: bool,
    ) -> Result<Self, SpongeError> {
        let named = signs
            .iter()
            .map(|(&(u, l), &v)| ((faces.id(u).to_string(), faces.id(l).to_string()), v))
            .collect();
        Self::new(n, faces, &named, non_compact)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &GradedPoset {
        &self.faces
    }

    pub fn is_non_compact(&self) -> bool {
        self.non_compact
    }

    /// `[upper : lower]`, zero if not a cover pair.
    pub fn incidence(&self, upper: usize, lower: usize) -> i64 {
        self.incidence.get(&(upper, lower)).copied().unwrap_or(0)
    }

    pub fn incidences(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.incidence
    }

    /// Number of faces of each dimension `0..=n-2`.
    pub fn face_counts(&self) -> Vec<usize> {
        (0..=self.n - 2)
            .map(|d| self.faces.of_rank(d).count())
            .collect()
    }

    /// The unique minimal face of a non-compact sponge.
    pub fn origin(&self) -> Option<usize> {
        if self.non_compact {
            self.faces.of_rank(0).next()
        } else {
            None
        }
    }
}

/// A rank-2 interval whose signed sum does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondViolation {
    pub upper: String,
    /// `None` for the virtual bottom below every vertex.
    pub lower: Option<String>,
    pub sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalViolation {
    pub upper: String,
    pub lower: Option<String>,
    pub middles: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub interval_violations: Vec<IntervalViolation>,
    pub diamond_violations: Vec<DiamondViolation>,
    pub faces_without_vertex: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.interval_violations.is_empty()
            && self.diamond_violations.is_empty()
            && self.faces_without_vertex.is_empty()
    }

    fn summary(&self) -> String {
        format!(
            "{} interval, {} diamond and {} vertex violations",
            self.interval_violations.len(),
            self.diamond_violations.len(),
            self.faces_without_vertex.len()
        )
    }
}

/// Pairs `(upper, lower, middles)` over every rank-2 interval. With
/// `augment`, edges are also paired with a virtual bottom (`lower = None`)
/// whose middles are the edge's vertices.
fn rank_two_intervals(p: &GradedPoset, augment: bool) -> Vec<(usize, Option<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for u in 0..p.len() {
        let mut below: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &m in p.down(u) {
            for &l in p.down(m) {
                below.entry(l).or_default().push(m);
            }
        }
        for (l, ms) in below {
            out.push((u, Some(l), ms));
        }
        if augment && p.rank(u) == 1 {
            out.push((u, None, p.down(u).to_vec()));
        }
    }
    out
}

/// Checks the two-middles property, the diamond relation and that every face
/// lies over a vertex. Compact sponges also get the relation through the
/// virtual bottom: the two vertices of an edge carry opposite signs, which is
/// what makes the augmented cellular complex a complex.
pub fn validate_sponge(z: &SpongeComplex) -> ValidationReport {
    let p = &z.faces;
    let mut report = ValidationReport::default();
    for (u, l, ms) in rank_two_intervals(p, !z.non_compact) {
        let upper = p.id(u).to_string();
        let lower = l.map(|l| p.id(l).to_string());
        if ms.len() != 2 {
            report.interval_violations.push(IntervalViolation {
                upper,
                lower,
                middles: ms.iter().map(|&m| p.id(m).to_string()).collect(),
            });
            continue;
        }
        let sum: i64 = ms
            .iter()
            .map(|&m| z.incidence(u, m) * l.map_or(1, |l| z.incidence(m, l)))
            .sum();
        if sum != 0 {
            report
                .diamond_violations
                .push(DiamondViolation { upper, lower, sum });
        }
    }
    for f in 0..p.len() {
        if p.rank(f) > 0 && !(0..p.len()).any(|v| p.rank(v) == 0 && p.lt(v, f)) {
            report.faces_without_vertex.push(p.id(f).to_string());
        }
    }
    report
}

fn require_valid(z: &SpongeComplex) -> Result<(), SpongeError> {
    let report = validate_sponge(z);
    if report.is_valid() {
        Ok(())
    } else {
        Err(SpongeError::InvalidSponge(report.summary()))
    }
}

/// Cellular chain complex in degrees `0..=n-2`, optionally augmented.
pub fn cellular_complex(z: &SpongeComplex, augmented: bool) -> Result<ChainComplex, SpongeError> {
    require_valid(z)?;
    if augmented && z.non_compact {
        return Err(SpongeError::NonCompact);
    }
    let p = &z.faces;
    let by_dim: Vec<Vec<usize>> = (0..=z.n - 2).map(|d| p.of_rank(d).collect()).collect();
    let position: BTreeMap<usize, usize> = by_dim
        .iter()
        .flat_map(|fs| fs.iter().enumerate().map(|(k, &f)| (f, k)))
        .collect();
    let mut boundaries = vec![IntegerMatrix::zeros(0, by_dim[0].len())];
    for d in 1..by_dim.len() {
        let mut m = IntegerMatrix::zeros(by_dim[d - 1].len(), by_dim[d].len());
        for (j, &f) in by_dim[d].iter().enumerate() {
            for &g in p.down(f) {
                m.set(position[&g], j, z.incidence(f, g).into());
            }
        }
        boundaries.push(m);
    }
    let c = ChainComplex::new(0, by_dim.iter().map(Vec::len).collect(), boundaries)
        .map_err(|e| SpongeError::InvalidSponge(e.to_string()))?;
    if augmented {
        c.augmented()
            .map_err(|e| SpongeError::InvalidSponge(e.to_string()))
    } else {
        Ok(c)
    }
}

/// A face whose lower interval is not a homology sphere of the right
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerIntervalFailure {
    pub face: String,
    pub dim: usize,
    pub reduced_homology: HomologyProfile,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityReport {
    pub faces_ok: bool,
    pub lower_interval_failures: Vec<LowerIntervalFailure>,
    /// Largest `i` such that reduced cellular cohomology vanishes in every
    /// degree `<= i`; `-2` if it is already nonzero in degree -1.
    pub skeleton_acyclic_up_to: i64,
    /// Free rank of the top reduced cohomology.
    pub b_number: usize,
    pub torsion_found: Vec<(i64, HomologyGroup)>,
    pub reduced_cohomology: HomologyProfile,
    pub acyclic: bool,
}

/// Face acyclicity (via lower intervals) plus `(n-3)`-acyclicity of the whole
/// sponge.
pub fn check_acyclic(z: &SpongeComplex) -> Result<AcyclicityReport, SpongeError> {
    require_valid(z)?;
    if z.non_compact {
        return Err(SpongeError::NonCompact);
    }
    let p = &z.faces;
    let mut failures = Vec::new();
    for f in 0..p.len() {
        let below: Vec<usize> = (0..p.len()).filter(|&x| p.lt(x, f)).collect();
        let k = crate::poset::order_complex_of_subset(p, &below);
        let h = crate::poset::reduced_simplicial_homology(&k, Coefficients::Integers);
        let dim = p.rank(f);
        if !is_sphere_homology(&h, dim as i64 - 1) {
            failures.push(LowerIntervalFailure {
                face: p.id(f).to_string(),
                dim,
                reduced_homology: h,
            });
        }
    }
    let reduced = cohomology(&cellular_complex(z, true)?, Coefficients::Integers);
    let top = z.n as i64 - 2;
    let mut up_to = -2;
    for i in -1..=top {
        if reduced.at(i).is_zero() {
            up_to = i;
        } else {
            break;
        }
    }
    let torsion_found: Vec<(i64, HomologyGroup)> = reduced
        .degrees()
        .filter(|&d| !reduced.at(d).torsion.is_empty())
        .map(|d| (d, reduced.at(d)))
        .collect();
    let faces_ok = failures.is_empty();
    Ok(AcyclicityReport {
        faces_ok,
        lower_interval_failures: failures,
        skeleton_acyclic_up_to: up_to,
        b_number: reduced.free_rank(top),
        torsion_found,
        acyclic: faces_ok && up_to >= top - 1,
        reduced_cohomology: reduced,
    })
}

fn is_sphere_homology(h: &HomologyProfile, dim: i64) -> bool {
    h.degrees().all(|d| {
        h.at(d)
            == if d == dim {
                HomologyGroup::free(1)
            } else {
                HomologyGroup::default()
            }
    }) && h.at(dim) == HomologyGroup::free(1)
}

/// Simplicial chain complex of the order complex of a face poset, with the
/// chains indexing its generators. Vertex `i` of every chain is poset element
/// `i`, so chains are listed bottom to top.
#[derive(Clone, Debug)]
pub struct Realization {
    pub complex: ChainComplex,
    pub chains: Vec<Vec<Vec<usize>>>,
}

impl Realization {
    pub fn new(p: &GradedPoset) -> Self {
        let (complex, chains) = order_complex(p).chain_complex();
        Realization { complex, chains }
    }

    /// Generators of the relative pair `(|S|, |S \ S_{>=s}|)`, extended for
    /// a non-compact sponge by the chains that avoid the origin: the part of
    /// the cone at infinity. Returns the subcomplex selection per degree.
    pub fn local_subcomplex(
        &self,
        p: &GradedPoset,
        s: usize,
        origin: Option<usize>,
    ) -> Vec<BTreeSet<usize>> {
        let mut up = FixedBitSet::with_capacity(p.len());
        for x in 0..p.len() {
            if p.leq(s, x) {
                up.insert(x);
            }
        }
        self.chains
            .iter()
            .map(|group| {
                group
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| {
                        let avoids_up = c.iter().all(|&x| !up.contains(x));
                        let at_infinity = origin.is_some_and(|o| !c.contains(&o));
                        avoids_up || at_infinity
                    })
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect()
    }

    /// Relative chain complex for the local cohomology at `s`.
    pub fn local_quotient(
        &self,
        p: &GradedPoset,
        s: usize,
        origin: Option<usize>,
    ) -> crate::complexes::Quotient {
        quotient_complex(&self.complex, &self.local_subcomplex(p, s, origin))
            .expect("down-closed selection is a subcomplex")
    }
}

/// Local cohomology `H^*(|S|, |S \ S_{>=s}|)` at a face.
///
/// For a non-compact sponge the chains missing the origin are added to the
/// subcomplex, which turns the pair into the local pair of the cone and gives
/// the expected concentration in degree `n - 2`.
pub fn local_cohomology(
    z: &SpongeComplex,
    face: &str,
    coefficients: Coefficients,
) -> Result<HomologyProfile, SpongeError> {
    let s = z.faces.index_of(face)?;
    let r = Realization::new(&z.faces);
    Ok(cohomology(
        &r.local_quotient(&z.faces, s, z.origin()).complex,
        coefficients,
    ))
}

/// Local cohomology at every face, in canonical face order.
pub fn local_cohomology_all(
    z: &SpongeComplex,
    coefficients: Coefficients,
    strategy: crate::par::Strategy,
) -> Vec<HomologyProfile> {
    let r = Realization::new(&z.faces);
    let faces: Vec<usize> = (0..z.faces.len()).collect();
    crate::par::map(strategy, &faces, |&s| {
        cohomology(
            &r.local_quotient(&z.faces, s, z.origin()).complex,
            coefficients,
        )
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModelViolation {
    pub face: String,
    pub dim: usize,
    pub cofaces: usize,
    pub expected: usize,
}

/// Every face of dimension `k < n-2` must be covered by exactly `n-k` faces.
/// This is a necessary condition for the local model; it is not known to be
/// sufficient.
pub fn check_local_model(z: &SpongeComplex) -> Result<Vec<LocalModelViolation>, SpongeError> {
    require_valid(z)?;
    let p = &z.faces;
    Ok((0..p.len())
        .filter(|&f| p.rank(f) + 2 < z.n)
        .filter_map(|f| {
            let expected = z.n - p.rank(f);
            let cofaces = p.up(f).len();
            (cofaces != expected).then(|| LocalModelViolation {
                face: p.id(f).to_string(),
                dim: p.rank(f),
                cofaces,
                expected,
            })
        })
        .collect())
}

/// Finds `±1` incidences satisfying every diamond relation, by Gaussian
/// elimination over GF(2) on the sign exponents. Free exponents are set to 0.
/// With `augment`, each edge's two vertices get opposite signs as well.
pub fn sign_solver(
    p: &GradedPoset,
    augment: bool,
) -> Result<BTreeMap<(usize, usize), i64>, SpongeError> {
    let covers = p.covers();
    let var: BTreeMap<(usize, usize), usize> =
        covers.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let nv = covers.len();
    let mut rows: Vec<FixedBitSet> = Vec::new();
    for (u, l, ms) in rank_two_intervals(p, augment) {
        if ms.len() != 2 {
            return Err(SpongeError::NotDiamond {
                upper: p.id(u).to_string(),
                lower: l.map_or_else(|| "(bottom)".to_string(), |l| p.id(l).to_string()),
                middles: ms.len(),
            });
        }
        let mut row = FixedBitSet::with_capacity(nv + 1);
        for &m in &ms {
            row.toggle(var[&(u, m)]);
            if let Some(l) = l {
                row.toggle(var[&(m, l)]);
            }
        }
        row.insert(nv);
        rows.push(row);
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..nv {
        let Some(k) = (r..rows.len()).find(|&k| rows[k].contains(col)) else {
            continue;
        };
        rows.swap(r, k);
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row.contains(col) {
                row.symmetric_difference_with(&pivot);
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|row| row.contains(nv)) {
        return Err(SpongeError::Unsolvable);
    }
    let mut exponent = vec![false; nv];
    for &(row, col) in &pivots {
        exponent[col] = rows[row].contains(nv);
    }
    Ok(covers
        .iter()
        .enumerate()
        .map(|(k, &c)| (c, if exponent[k] { -1 } else { 1 }))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub cellular: HomologyProfile,
    pub realization: HomologyProfile,
    pub first_mismatch: Option<i64>,
}

impl CrossCheckReport {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares reduced cellular cohomology with reduced cohomology of the order
/// complex, degree by degree, including torsion.
pub fn realization_cross_check(z: &SpongeComplex) -> Result<CrossCheckReport, SpongeError> {
    let cellular = cohomology(&cellular_complex(z, true)?, Coefficients::Integers);
    let realization = reduced_cohomology(&order_complex(&z.faces), Coefficients::Integers);
    let first_mismatch = cellular.first_difference(&realization);
    Ok(CrossCheckReport {
        cellular,
        realization,
        first_mismatch,
    })
}

/// Reduced cohomology of a simplicial complex from degree -1 up.
pub fn reduced_cohomology(k: &SimplicialComplex, coefficients: Coefficients) -> HomologyProfile {
    let (c, _) = k.chain_complex();
    cohomology(
        &c.augmented()
            .expect("simplicial complexes start in degree 0"),
        coefficients,
    )
}
