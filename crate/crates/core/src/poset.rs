//! Graded posets, order complexes and the Cohen–Macaulay test.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::complexes::{homology, ChainComplex, Coefficients, HomologyGroup, HomologyProfile};
use crate::exactalg::IntegerMatrix;
use crate::par::{self, Strategy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("cover {upper:?} > {lower:?} does not join consecutive ranks")]
    RankGap { upper: String, lower: String },
    #[error("cover {upper:?} > {lower:?} listed twice")]
    DuplicateCover { upper: String, lower: String },
    #[error("cover relation has a cycle through {0:?}")]
    CyclicPoset(String),
    #[error("poset is not graded at {0:?}")]
    NotGraded(String),
}

/// Finite ranked poset given by its cover relation.
///
/// Elements are stored in canonical `(rank, id)` order; element indices
/// everywhere in the crate refer to this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoset {
    ids: Vec<String>,
    ranks: Vec<usize>,
    index: HashMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// Strict down-set of each element.
    below: Vec<FixedBitSet>,
}

impl GradedPoset {
    /// Builds a poset from ranked elements and `(upper, lower)` cover pairs.
    pub fn new<S: AsRef<str>>(
        elements: &[(S, usize)],
        covers: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let mut sorted: Vec<(usize, String)> = elements
            .iter()
            .map(|(id, r)| (*r, id.as_ref().to_string()))
            .collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(PosetError::DuplicateElement(w[0].1.clone()));
            }
        }
        let ids: Vec<String> = sorted.iter().map(|(_, id)| id.clone()).collect();
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(id.clone()));
            }
        }
        let ranks: Vec<usize> = sorted.iter().map(|(r, _)| *r).collect();
        let mut pairs = BTreeSet::new();
        for (u, l) in covers {
            let (u, l) = (u.as_ref(), l.as_ref());
            let ui = *index
                .get(u)
                .ok_or_else(|| PosetError::UnknownElement(u.to_string()))?;
            let li = *index
                .get(l)
                .ok_or_else(|| PosetError::UnknownElement(l.to_string()))?;
            if ranks[ui] != ranks[li] + 1 {
                return Err(PosetError::RankGap {
                    upper: u.to_string(),
                    lower: l.to_string(),
                });
            }
            if !pairs.insert((ui, li)) {
                return Err(PosetError::DuplicateCover {
                    upper: u.to_string(),
                    lower: l.to_string(),
                });
            }
        }
        Ok(Self::from_parts(ids, ranks, pairs))
    }

    /// Builds a poset from unranked elements, inferring ranks from the covers
    /// (minimal elements get rank 0).
    pub fn from_covers<S: AsRef<str>>(ids: &[S], covers: &[(S, S)]) -> Result<Self, PosetError> {
        let names: Vec<&str> = ids.iter().map(AsRef::as_ref).collect();
        let mut pos = HashMap::new();
        for (i, id) in names.iter().enumerate() {
            if pos.insert(*id, i).is_some() {
                return Err(PosetError::DuplicateElement(id.to_string()));
            }
        }
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); names.len()];
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); names.len()];
        for (u, l) in covers {
            let ui = *pos
                .get(u.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(u.as_ref().to_string()))?;
            let li = *pos
                .get(l.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(l.as_ref().to_string()))?;
            down[ui].push(li);
            up[li].push(ui);
        }
        // Kahn's algorithm from the bottom.
        let mut pending: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut rank = vec![0usize; names.len()];
        let mut queue: Vec<usize> = (0..names.len()).filter(|&i| pending[i] == 0).collect();
        let mut seen = 0;
        while let Some(x) = queue.pop() {
            seen += 1;
            for &y in &up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
                pending[y] -= 1;
                if pending[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if seen < names.len() {
            let stuck = (0..names.len()).find(|&i| pending[i] > 0).unwrap();
            return Err(PosetError::CyclicPoset(names[stuck].to_string()));
        }
        for (x, lows) in down.iter().enumerate() {
            if lows.iter().any(|&l| rank[l] + 1 != rank[x]) {
                return Err(PosetError::NotGraded(names[x].to_string()));
            }
        }
        let elements: Vec<(&str, usize)> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (*n, rank[i]))
            .collect();
        let cov: Vec<(&str, &str)> = covers
            .iter()
            .map(|(u, l)| (u.as_ref(), l.as_ref()))
            .collect();
        Self::new(&elements, &cov)
    }

    fn from_parts(ids: Vec<String>, ranks: Vec<usize>, covers: BTreeSet<(usize, usize)>) -> Self {
        let n = ids.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(u, l) in &covers {
            up[l].push(u);
            down[u].push(l);
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        // Canonical order is rank-sorted, so lower elements come first.
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
        for lower in &down {
            let mut set = FixedBitSet::with_capacity(n);
            for &l in lower {
                set.insert(l);
                set.union_with(&below[l]);
            }
            below.push(set);
        }
        let index = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        GradedPoset {
            ids,
            ranks,
            index,
            up,
            down,
            below,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    pub fn max_rank(&self) -> Option<usize> {
        self.ranks.iter().copied().max()
    }

    pub fn of_rank(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.ranks[i] == r)
    }

    /// Elements covering `i`.
    pub fn up(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Elements covered by `i`.
    pub fn down(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    /// All cover pairs `(upper, lower)` in canonical order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|u| self.down[u].iter().map(move |&l| (u, l)))
            .collect();
        out.sort_unstable();
        out
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Elements strictly between `lower` and `upper`.
    pub fn open_interval(&self, lower: usize, upper: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.lt(lower, x) && self.lt(x, upper))
            .collect()
    }

    pub fn select(&self, selector: Selector<'_>) -> Result<Vec<usize>, PosetError> {
        let all = 0..self.len();
        Ok(match selector {
            Selector::Below(s) => {
                let s = self.index_of(s)?;
                all.filter(|&x| self.leq(x, s)).collect()
            }
            Selector::StrictlyBelow(s) => {
                let s = self.index_of(s)?;
                all.filter(|&x| self.lt(x, s)).collect()
            }
            Selector::AtOrAbove(s) => {
                let s = self.index_of(s)?;
                all.filter(|&x| self.leq(s, x)).collect()
            }
            Selector::StrictlyAbove(s) => {
                let s = self.index_of(s)?;
                all.filter(|&x| self.lt(s, x)).collect()
            }
            Selector::OpenInterval(s, t) => {
                let (s, t) = (self.index_of(s)?, self.index_of(t)?);
                self.open_interval(s, t)
            }
            Selector::ComplementOfUpSet(s) => {
                let s = self.index_of(s)?;
                all.filter(|&x| !self.leq(s, x)).collect()
            }
        })
    }

    /// Induced subposet; ranks are kept from `self`.
    pub fn subposet(&self, selector: Selector<'_>) -> Result<GradedPoset, PosetError> {
        let members = self.select(selector)?;
        Ok(self.induced(&members))
    }

    /// Induced subposet on a convex subset. Covers are inherited from `self`.
    pub fn induced(&self, members: &[usize]) -> GradedPoset {
        let keep: BTreeSet<usize> = members.iter().copied().collect();
        let local: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let ids = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let ranks = keep.iter().map(|&i| self.ranks[i]).collect();
        let covers = keep
            .iter()
            .flat_map(|&u| self.down[u].iter().map(move |&l| (u, l)))
            .filter_map(|(u, l)| Some((local[&u], *local.get(&l)?)))
            .collect();
        GradedPoset::from_parts(ids, ranks, covers)
    }

    /// Length of the longest chain minus one; `-1` for the empty poset.
    pub fn dimension(&self) -> i64 {
        match (self.ranks.iter().min(), self.ranks.iter().max()) {
            (Some(lo), Some(hi)) => (hi - lo) as i64,
            _ => -1,
        }
    }
}

/// Subsets of a poset, named by the usual interval notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector<'a> {
    /// `S_{<=s}`
    Below(&'a str),
    /// `S_{<s}`
    StrictlyBelow(&'a str),
    /// `S_{>=s}`
    AtOrAbove(&'a str),
    /// `S_{>s}`
    StrictlyAbove(&'a str),
    /// `{x : s < x < t}`
    OpenInterval(&'a str, &'a str),
    /// `S \ S_{>=s}`
    ComplementOfUpSet(&'a str),
}

/// Abstract simplicial complex given by its facets.
///
/// The complex with no vertices is `{∅}`: its reduced homology is `Z` in
/// degree -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Sorts each facet and drops duplicates and non-maximal ones.
    pub fn new(labels: Vec<String>, facets: Vec<Vec<usize>>) -> Self {
        let mut fs: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        for f in &fs {
            assert!(
                f.iter().all(|&v| v < labels.len()),
                "facet vertex out of range"
            );
        }
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        fs.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for f in fs {
            let contained = kept.iter().any(|g| g.len() > f.len() && is_subset(&f, g));
            if !contained {
                kept.push(f);
            }
        }
        kept.sort();
        SimplicialComplex {
            labels,
            facets: kept,
        }
    }

    /// Vertices labelled `0..n`.
    pub fn from_facets(vertex_count: usize, facets: Vec<Vec<usize>>) -> Self {
        Self::new((0..vertex_count).map(|i| i.to_string()).collect(), facets)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Maximal facet size minus one; -1 for `{∅}`.
    pub fn dimension(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| f.len() as i64)
            .max()
            .unwrap_or(0)
            - 1
    }

    /// Every nonempty face, grouped by dimension, each group sorted
    /// lexicographically. Isolated labelled vertices count as faces.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<usize>>> {
        let dim = self
            .dimension()
            .max(if self.labels.is_empty() { -1 } else { 0 });
        if dim < 0 {
            return Vec::new();
        }
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim as usize + 1];
        for v in 0..self.labels.len() {
            sets[0].insert(vec![v]);
        }
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| f[b])
                    .collect();
                sets[face.len() - 1].insert(face);
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Oriented simplicial chain complex with faces in [`faces_by_dim`]
    /// order and the alternating-sign boundary.
    ///
    /// [`faces_by_dim`]: SimplicialComplex::faces_by_dim
    pub fn chain_complex(&self) -> (ChainComplex, Vec<Vec<Vec<usize>>>) {
        let faces = self.faces_by_dim();
        if faces.is_empty() {
            return (ChainComplex::empty(), faces);
        }
        let lookup: Vec<HashMap<&[usize], usize>> = faces
            .iter()
            .map(|fs| {
                fs.iter()
                    .enumerate()
                    .map(|(i, f)| (f.as_slice(), i))
                    .collect()
            })
            .collect();
        let mut boundaries = vec![IntegerMatrix::zeros(0, faces[0].len())];
        for d in 1..faces.len() {
            let mut m = IntegerMatrix::zeros(faces[d - 1].len(), faces[d].len());
            for (j, f) in faces[d].iter().enumerate() {
                for k in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(k);
                    let row = lookup[d - 1][g.as_slice()];
                    m.set(row, j, if k % 2 == 0 { 1.into() } else { (-1).into() });
                }
            }
            boundaries.push(m);
        }
        let ranks = faces.iter().map(Vec::len).collect();
        let c =
            ChainComplex::new(0, ranks, boundaries).expect("simplicial boundary squares to zero");
        (c, faces)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Reduced homology of a simplicial complex, from degree -1 up.
pub fn reduced_simplicial_homology(
    k: &SimplicialComplex,
    coefficients: Coefficients,
) -> HomologyProfile {
    let (c, _) = k.chain_complex();
    homology(
        &c.augmented()
            .expect("simplicial complexes start in degree 0"),
        coefficients,
    )
}

/// Order complex of the whole poset: vertices are elements, simplices are
/// chains. Vertex `i` is poset element `i`.
pub fn order_complex(p: &GradedPoset) -> SimplicialComplex {
    order_complex_of_subset(p, &(0..p.len()).collect::<Vec<_>>())
}

/// Order complex of an arbitrary subset of `p` under the restricted order,
/// with vertices relabelled `0..members.len()` in the given (sorted) order.
pub fn order_complex_of_subset(p: &GradedPoset, members: &[usize]) -> SimplicialComplex {
    let m = members.len();
    let labels: Vec<String> = members.iter().map(|&i| p.id(i).to_string()).collect();
    // Induced covers: a < b with nothing from the subset strictly between.
    let mut next: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut has_lower = vec![false; m];
    for a in 0..m {
        for b in 0..m {
            if !p.lt(members[a], members[b]) {
                continue;
            }
            let blocked =
                (0..m).any(|c| p.lt(members[a], members[c]) && p.lt(members[c], members[b]));
            if !blocked {
                next[a].push(b);
                has_lower[b] = true;
            }
        }
    }
    let mut facets = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk(x: usize, next: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        stack.push(x);
        if next[x].is_empty() {
            out.push(stack.clone());
        } else {
            for &y in &next[x] {
                walk(y, next, stack, out);
            }
        }
        stack.pop();
    }
    for a in (0..m).filter(|&a| !has_lower[a]) {
        walk(a, &next, &mut stack, &mut facets);
    }
    SimplicialComplex::new(labels, facets)
}

/// Every chain of `p` (as sorted element indices), including the empty one.
pub fn all_chains(p: &GradedPoset) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for group in order_complex(p).faces_by_dim() {
        out.extend(group);
    }
    out
}

/// Elements outside `chain` comparable with all of it: the vertex set of its
/// link in the order complex.
pub fn link_members(p: &GradedPoset, chain: &[usize]) -> Vec<usize> {
    (0..p.len())
        .filter(|x| !chain.contains(x) && chain.iter().all(|&c| p.comparable(*x, c)))
        .collect()
}

/// One failure of the Cohen–Macaulay condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmWitness {
    /// Chain ids, bottom to top; empty for the whole complex.
    pub chain: Vec<String>,
    pub link_dimension: i64,
    pub degree: i64,
    pub homology: HomologyGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub is_cm: bool,
    pub coefficients: Coefficients,
    pub chains_checked: usize,
    pub witnesses: Vec<CmWitness>,
    /// True when every failure is pure torsion, so the rational test passes.
    pub torsion_only: bool,
}

/// Tests whether every link in the order complex (including the whole
/// complex, the link of the empty chain) has vanishing reduced homology below
/// its dimension.
pub fn check_cohen_macaulay(
    p: &GradedPoset,
    coefficients: Coefficients,
    strategy: Strategy,
) -> CmReport {
    let chains = all_chains(p);
    let per_chain = par::map(strategy, &chains, |chain| {
        let members = link_members(p, chain);
        let link = order_complex_of_subset(p, &members);
        let dim = link.dimension();
        let h = reduced_simplicial_homology(&link, coefficients);
        h.degrees()
            .filter(|&d| d < dim && !h.at(d).is_zero())
            .map(|d| CmWitness {
                chain: chain.iter().map(|&c| p.id(c).to_string()).collect(),
                link_dimension: dim,
                degree: d,
                homology: h.at(d),
            })
            .collect::<Vec<_>>()
    });
    let mut witnesses: Vec<(Vec<usize>, CmWitness)> = chains
        .iter()
        .zip(per_chain)
        .flat_map(|(c, ws)| ws.into_iter().map(move |w| (c.clone(), w)))
        .collect();
    witnesses.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| a.0.cmp(&b.0))
            .then(a.1.degree.cmp(&b.1.degree))
    });
    let witnesses: Vec<CmWitness> = witnesses.into_iter().map(|(_, w)| w).collect();
    let torsion_only = !witnesses.is_empty() && witnesses.iter().all(|w| w.homology.free_rank == 0);
    CmReport {
        is_cm: witnesses.is_empty(),
        coefficients,
        chains_checked: chains.len(),
        witnesses,
        torsion_only,
    }
}

/// Rational reduced Betti numbers of the link of a nonempty chain, predicted
/// from the join decomposition
/// `link = |S_{<F_1}| * |(F_1, F_2)| * ... * |S_{>F_r}|` and the Künneth
/// formula for joins. Returned as `(degree, betti)` pairs with nonzero betti.
pub fn link_join_prediction(p: &GradedPoset, chain: &[usize]) -> Vec<(i64, usize)> {
    assert!(
        !chain.is_empty(),
        "the empty chain has no join decomposition"
    );
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    pieces.push((0..p.len()).filter(|&x| p.lt(x, chain[0])).collect());
    for w in chain.windows(2) {
        pieces.push(p.open_interval(w[0], w[1]));
    }
    let top = *chain.last().unwrap();
    pieces.push((0..p.len()).filter(|&x| p.lt(top, x)).collect());
    // Shifted Poincaré polynomial: coefficient of t^(i+1) is the reduced
    // Betti number in degree i, and joins multiply.
    let mut product: Vec<usize> = vec![1];
    for piece in pieces {
        let h = reduced_simplicial_homology(
            &order_complex_of_subset(p, &piece),
            Coefficients::Rationals,
        );
        let mut poly = vec![0usize; (h.min_degree + h.groups.len() as i64 + 1).max(1) as usize];
        for d in h.degrees() {
            poly[(d + 1) as usize] += h.free_rank(d);
        }
        let mut next = vec![0usize; product.len() + poly.len() - 1];
        for (i, a) in product.iter().enumerate() {
            for (j, b) in poly.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        product = next;
    }
    product
        .into_iter()
        .enumerate()
        .filter(|&(_, b)| b > 0)
        .map(|(k, b)| (k as i64 - 1, b))
        .collect()
}
