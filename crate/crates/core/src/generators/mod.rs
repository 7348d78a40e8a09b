//! Example sponges and generated families.

mod cubic;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::enumerative::ExtendedFVector;
use crate::poset::{GradedPoset, PosetError, SimplicialComplex};
use crate::sponge::{check_acyclic, sign_solver, SpongeComplex, SpongeError};

pub use cubic::{cubic_graphs, is_canonical, CubicGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("face lattice is not that of a simple polytope: {0}")]
    NotSimple(String),
    #[error("no sign assignment satisfies the diamond relations")]
    SignUnsolvable,
    #[error("skeleton has b = {found}, expected f_(n-1) - 1 = {expected}")]
    BettiMismatch { expected: usize, found: usize },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Sponge(#[from] SpongeError),
}

fn subset_id(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// The local model: subsets `I` of `{1..n}` with `|I| <= n-2` under
/// inclusion, `dim I = |I|`, with the simplicial signs
/// `[I : I \ {i_j}] = (-1)^j`. Flagged non-compact.
pub fn gen_model_sponge(n: usize) -> Result<SpongeComplex, GenError> {
    if n < 3 {
        return Err(GenError::BadParameter(format!(
            "model sponge needs n >= 3, got {n}"
        )));
    }
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    let mut incidence = BTreeMap::new();
    for k in 0..=n - 2 {
        for s in subsets_of_size(n, k) {
            let id = subset_id(&s);
            for j in 0..s.len() {
                let mut t = s.clone();
                t.remove(j);
                let lower = subset_id(&t);
                covers.push((id.clone(), lower.clone()));
                incidence.insert((id.clone(), lower), if j % 2 == 0 { 1 } else { -1 });
            }
            elements.push((id, k));
        }
    }
    let p = GradedPoset::new(&elements, &covers)?;
    Ok(SpongeComplex::new(n, p, &incidence, true)?)
}

/// The `k`-skeleton of the `m`-simplex: all `(k+1)`-subsets of `m+1`
/// vertices as facets.
pub fn gen_simplex_skeleton(m: usize, k: usize) -> Result<SimplicialComplex, GenError> {
    if k > m {
        return Err(GenError::BadParameter(format!(
            "skeleton dimension {k} exceeds simplex dimension {m}"
        )));
    }
    Ok(SimplicialComplex::from_facets(
        m + 1,
        subsets_of_size(m + 1, k + 1),
    ))
}

/// Face lattice of an `n`-polytope without the empty face. The polytope
/// itself is `top`, of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFaceLattice {
    pub n: usize,
    pub faces: Vec<(String, usize)>,
    /// `(upper, lower)` cover pairs.
    pub covers: Vec<(String, String)>,
    pub top: String,
}

impl PolytopeFaceLattice {
    pub fn poset(&self) -> Result<GradedPoset, PosetError> {
        GradedPoset::new(&self.faces, &self.covers)
    }

    /// Face counts `f_0..f_n`.
    pub fn face_counts(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.n + 1];
        for (_, d) in &self.faces {
            f[*d] += 1;
        }
        f
    }

    /// The `m`-gon.
    pub fn polygon(m: usize) -> Self {
        assert!(m >= 3, "a polygon needs at least 3 vertices");
        let mut faces: Vec<(String, usize)> = (0..m).map(|i| (format!("v{i}"), 0)).collect();
        let mut covers = Vec::new();
        for i in 0..m {
            let e = format!("e{i}");
            covers.push((e.clone(), format!("v{i}")));
            covers.push((e.clone(), format!("v{}", (i + 1) % m)));
            covers.push(("P".to_string(), e.clone()));
            faces.push((e, 1));
        }
        faces.push(("P".to_string(), 2));
        PolytopeFaceLattice {
            n: 2,
            faces,
            covers,
            top: "P".to_string(),
        }
    }

    /// The `n`-simplex; faces are nonempty vertex subsets.
    pub fn simplex(n: usize) -> Self {
        let mut faces = Vec::new();
        let mut covers = Vec::new();
        for k in 1..=n + 1 {
            for s in subsets_of_size(n + 1, k) {
                let id = subset_id(&s);
                if k > 1 {
                    for j in 0..s.len() {
                        let mut t = s.clone();
                        t.remove(j);
                        covers.push((id.clone(), subset_id(&t)));
                    }
                }
                faces.push((id, k - 1));
            }
        }
        PolytopeFaceLattice {
            n,
            faces,
            covers,
            top: subset_id(&(0..=n).collect::<Vec<_>>()),
        }
    }

    /// The `n`-cube; faces are words over `{0, 1, *}`.
    pub fn cube(n: usize) -> Self {
        let mut faces = Vec::new();
        let mut covers = Vec::new();
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let word: Vec<char> = (0..n)
                .map(|i| ['0', '1', '*'][(code / 3usize.pow(i as u32)) % 3])
                .collect();
            let id: String = word.iter().collect();
            for (i, &c) in word.iter().enumerate() {
                if c == '*' {
                    for b in ['0', '1'] {
                        let mut w = word.clone();
                        w[i] = b;
                        covers.push((id.clone(), w.iter().collect()));
                    }
                }
            }
            faces.push((id, word.iter().filter(|&&c| c == '*').count()));
        }
        PolytopeFaceLattice {
            n,
            faces,
            covers,
            top: "*".repeat(n),
        }
    }

    /// Cartesian product; faces are pairs written `F x G`.
    pub fn product(a: &PolytopeFaceLattice, b: &PolytopeFaceLattice) -> Self {
        let pair = |f: &str, g: &str| format!("{f} x {g}");
        let mut faces = Vec::new();
        let mut covers = Vec::new();
        for (f, df) in &a.faces {
            for (g, dg) in &b.faces {
                faces.push((pair(f, g), df + dg));
            }
        }
        for (u, l) in &a.covers {
            for (g, _) in &b.faces {
                covers.push((pair(u, g), pair(l, g)));
            }
        }
        for (u, l) in &b.covers {
            for (f, _) in &a.faces {
                covers.push((pair(f, u), pair(f, l)));
            }
        }
        PolytopeFaceLattice {
            n: a.n + b.n,
            faces,
            covers,
            top: pair(&a.top, &b.top),
        }
    }
}

/// The `(n-2)`-skeleton of a simple `n`-polytope as a sponge, with solver
/// signs. The b-number is checked against `f_{n-1} - 1`.
pub fn gen_polytope_skeleton(p: &PolytopeFaceLattice) -> Result<SpongeComplex, GenError> {
    if p.n < 2 {
        return Err(GenError::BadParameter(format!(
            "polytope dimension {} is below 2",
            p.n
        )));
    }
    let full = p.poset()?;
    for v in full.of_rank(0) {
        if full.up(v).len() != p.n {
            return Err(GenError::NotSimple(format!(
                "vertex {:?} lies on {} edges, expected {}",
                full.id(v),
                full.up(v).len(),
                p.n
            )));
        }
    }
    let keep: Vec<usize> = (0..full.len())
        .filter(|&i| full.rank(i) + 2 <= p.n)
        .collect();
    let skeleton = full.induced(&keep);
    let signs = sign_solver(&skeleton, true).map_err(|e| match e {
        SpongeError::Unsolvable => GenError::SignUnsolvable,
        SpongeError::NotDiamond { upper, .. } => {
            GenError::NotSimple(format!("interval below {upper:?} is not a diamond"))
        }
        other => GenError::Sponge(other),
    })?;
    let z = SpongeComplex::with_signs(p.n, skeleton, &signs, false)?;
    let expected = p.face_counts()[p.n - 1] as usize - 1;
    let found = check_acyclic(&z)?.b_number;
    if found != expected {
        return Err(GenError::BettiMismatch { expected, found });
    }
    Ok(z)
}

/// Sponge of a (multi)graph with `n = 3`: vertices `v0..`, edges `e0..` in
/// the given order, `[e : u] = -1`, `[e : w] = +1` for `e = (u, w)`.
pub fn graph_sponge(
    vertex_count: usize,
    edges: &[(usize, usize)],
) -> Result<SpongeComplex, GenError> {
    let width = edges.len().max(1).to_string().len();
    let vwidth = vertex_count.max(1).to_string().len();
    let vname = |v: usize| format!("v{v:0vwidth$}");
    let mut elements: Vec<(String, usize)> = (0..vertex_count).map(|v| (vname(v), 0)).collect();
    let mut covers = Vec::new();
    let mut incidence = BTreeMap::new();
    for (k, &(u, w)) in edges.iter().enumerate() {
        if u == w || u >= vertex_count || w >= vertex_count {
            return Err(GenError::BadParameter(format!(
                "edge {k} = ({u}, {w}) is a loop or out of range"
            )));
        }
        let e = format!("e{k:0width$}");
        elements.push((e.clone(), 1));
        covers.push((e.clone(), vname(u)));
        covers.push((e.clone(), vname(w)));
        incidence.insert((e.clone(), vname(u)), -1);
        incidence.insert((e, vname(w)), 1);
    }
    let p = GradedPoset::new(&elements, &covers)?;
    Ok(SpongeComplex::new(3, p, &incidence, false)?)
}

/// Connected simple cubic graphs with at most `max_vertices` vertices, as
/// sponges, in order of vertex count and then canonical code.
pub fn gen_trivalent_sponges(
    max_vertices: usize,
) -> Result<Vec<(CubicGraph, SpongeComplex)>, GenError> {
    if max_vertices < 4 || max_vertices % 2 == 1 {
        return Err(GenError::BadParameter(format!(
            "max_vertices must be even and at least 4, got {max_vertices}"
        )));
    }
    let mut out = Vec::new();
    for v in (4..=max_vertices).step_by(2) {
        for g in cubic_graphs(v, crate::par::Strategy::default()) {
            let z = graph_sponge(v, &g.edges())?;
            out.push((g, z));
        }
    }
    Ok(out)
}

/// The octahedron's vertices, edges and 8 triangles plus its 3 equatorial
/// squares.
pub fn octahedron_with_squares() -> Result<SpongeComplex, GenError> {
    let verts: Vec<String> = (1..=3)
        .flat_map(|a| [format!("{a}+"), format!("{a}-")])
        .collect();
    let axis = |v: &str| v.as_bytes()[0];
    let mut elements: Vec<(String, usize)> = verts.iter().map(|v| (v.clone(), 0)).collect();
    let mut covers = Vec::new();
    let edge_id = |a: &str, b: &str| format!("{a}{b}");
    for (i, a) in verts.iter().enumerate() {
        for b in &verts[i + 1..] {
            if axis(a) != axis(b) {
                let e = edge_id(a, b);
                covers.push((e.clone(), a.clone()));
                covers.push((e.clone(), b.clone()));
                elements.push((e, 1));
            }
        }
    }
    for s1 in ['+', '-'] {
        for s2 in ['+', '-'] {
            for s3 in ['+', '-'] {
                let (a, b, c) = (format!("1{s1}"), format!("2{s2}"), format!("3{s3}"));
                let t = format!("T{s1}{s2}{s3}");
                for (x, y) in [(&a, &b), (&a, &c), (&b, &c)] {
                    covers.push((t.clone(), edge_id(x, y)));
                }
                elements.push((t, 2));
            }
        }
    }
    for missing in 1..=3u8 {
        let q = format!("Q{missing}");
        let axes: Vec<u8> = (1..=3).filter(|&a| a != missing).collect();
        for s1 in ['+', '-'] {
            for s2 in ['+', '-'] {
                covers.push((
                    q.clone(),
                    edge_id(&format!("{}{s1}", axes[0]), &format!("{}{s2}", axes[1])),
                ));
            }
        }
        elements.push((q, 2));
    }
    let p = GradedPoset::new(&elements, &covers)?;
    let signs = sign_solver(&p, true).map_err(|_| GenError::SignUnsolvable)?;
    Ok(SpongeComplex::with_signs(4, p, &signs, false)?)
}

/// Named corpus entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Sponge(SpongeComplex),
    FVector(ExtendedFVector),
}

pub const BUILTIN_NAMES: [&str; 6] = [
    "g42_octahedron",
    "f3_k33",
    "hp2_fvector",
    "cube_skeleton",
    "model_n3",
    "model_n4",
];

pub fn builtin(name: &str) -> Result<Builtin, GenError> {
    Ok(match name {
        "g42_octahedron" => Builtin::Sponge(octahedron_with_squares()?),
        "f3_k33" => {
            let edges: Vec<(usize, usize)> =
                (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
            Builtin::Sponge(graph_sponge(6, &edges)?)
        }
        // Only the extended f-vector of this example is known; no incidence
        // structure is shipped.
        "hp2_fvector" => {
            Builtin::FVector(ExtendedFVector::new(4, vec![3, 6, 7], 3).expect("shape is fixed"))
        }
        "cube_skeleton" => Builtin::Sponge(gen_polytope_skeleton(&PolytopeFaceLattice::cube(3))?),
        "model_n3" => Builtin::Sponge(gen_model_sponge(3)?),
        "model_n4" => Builtin::Sponge(gen_model_sponge(4)?),
        other => return Err(GenError::UnknownBuiltin(other.to_string())),
    })
}

/// As [`builtin`], for names that carry a full sponge.
pub fn builtin_sponge(name: &str) -> Result<SpongeComplex, GenError> {
    match builtin(name)? {
        Builtin::Sponge(z) => Ok(z),
        Builtin::FVector(_) => Err(GenError::BadParameter(format!(
            "builtin {name:?} carries only an f-vector"
        ))),
    }
}
