//! Semi-simplicial sets ("delta sets") up to dimension 3, with validated face
//! maps, boundary matrices, builders for the standard test complexes, and a
//! bit-stable JSON format.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use crate::exactla::IntMat;
use crate::sampling::Sampler;

pub const MAX_DIM: usize = 3;

#[derive(Debug, Error, PartialEq)]
pub enum DeltaError {
    #[error("simplex {id} (dim {dim}): face {face} out of range")]
    BadFace { dim: usize, id: String, face: usize },
    #[error("simplex {id} (dim {dim}): face identity fails at (i, j) = ({i}, {j})")]
    Identity {
        dim: usize,
        id: String,
        i: usize,
        j: usize,
    },
    #[error("malformed delta-set JSON: {0}")]
    Parse(String),
    #[error("builder parameter out of range: {0}")]
    Parameter(String),
}

/// A delta set: graded simplices with face maps `d_0..d_n` per `n`-simplex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaSet {
    names: [Vec<String>; 4],
    faces1: Vec<[usize; 2]>,
    faces2: Vec<[usize; 3]>,
    faces3: Vec<[usize; 4]>,
}

impl Default for DeltaSet {
    fn default() -> Self {
        DeltaSet::new()
    }
}

impl DeltaSet {
    pub fn new() -> Self {
        DeltaSet {
            names: [Vec::new(), Vec::new(), Vec::new(), Vec::new()],
            faces1: Vec::new(),
            faces2: Vec::new(),
            faces3: Vec::new(),
        }
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names[dim].len()
    }

    pub fn dim(&self) -> usize {
        (0..=MAX_DIM)
            .rev()
            .find(|&d| self.count(d) > 0)
            .unwrap_or(0)
    }

    pub fn name(&self, dim: usize, idx: usize) -> &str {
        &self.names[dim][idx]
    }

    pub fn index_of(&self, dim: usize, name: &str) -> Option<usize> {
        self.names[dim].iter().position(|n| n == name)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.names[0].push(name.into());
        self.names[0].len() - 1
    }

    /// `d0` is the target vertex, `d1` the source.
    pub fn add_edge(&mut self, name: impl Into<String>, d0: usize, d1: usize) -> usize {
        self.names[1].push(name.into());
        self.faces1.push([d0, d1]);
        self.faces1.len() - 1
    }

    pub fn add_triangle(&mut self, name: impl Into<String>, faces: [usize; 3]) -> usize {
        self.names[2].push(name.into());
        self.faces2.push(faces);
        self.faces2.len() - 1
    }

    pub fn add_tetra(&mut self, name: impl Into<String>, faces: [usize; 4]) -> usize {
        self.names[3].push(name.into());
        self.faces3.push(faces);
        self.faces3.len() - 1
    }

    /// `d_i` of the given simplex; the result lives one dimension lower.
    pub fn face(&self, dim: usize, idx: usize, i: usize) -> usize {
        match dim {
            1 => self.faces1[idx][i],
            2 => self.faces2[idx][i],
            3 => self.faces3[idx][i],
            _ => panic!("no faces in dimension {dim}"),
        }
    }

    /// The sub-simplex spanned by the sorted vertex positions in `keep`,
    /// reached by composing face maps that drop the complement from the top
    /// index down.
    pub fn face_subset(&self, dim: usize, idx: usize, keep: &[usize]) -> (usize, usize) {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut cur_dim = dim;
        let mut cur = idx;
        for i in (0..=dim).rev() {
            if !keep.contains(&i) {
                cur = self.face(cur_dim, cur, i);
                cur_dim -= 1;
            }
        }
        (cur_dim, cur)
    }

    /// Checks face ranges and the identities `d_i d_j = d_{j-1} d_i` (i < j)
    /// on every simplex.
    pub fn validate(&self) -> Result<(), DeltaError> {
        for (idx, f) in self.faces1.iter().enumerate() {
            for &v in f {
                if v >= self.count(0) {
                    return Err(DeltaError::BadFace {
                        dim: 1,
                        id: self.names[1][idx].clone(),
                        face: v,
                    });
                }
            }
        }
        for dim in 2..=MAX_DIM {
            let lower = self.count(dim - 1);
            for idx in 0..self.count(dim) {
                for i in 0..=dim {
                    if self.face(dim, idx, i) >= lower {
                        return Err(DeltaError::BadFace {
                            dim,
                            id: self.names[dim][idx].clone(),
                            face: self.face(dim, idx, i),
                        });
                    }
                }
                for j in 1..=dim {
                    for i in 0..j {
                        let lhs = self.face(dim - 1, self.face(dim, idx, j), i);
                        let rhs = self.face(dim - 1, self.face(dim, idx, i), j - 1);
                        if lhs != rhs {
                            return Err(DeltaError::Identity {
                                dim,
                                id: self.names[dim][idx].clone(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The matrix of `partial_n = sum_i (-1)^i d_i`, rows indexed by
    /// `(n-1)`-simplices and columns by `n`-simplices.
    pub fn boundary_matrix(&self, n: usize) -> ChainMatrix {
        assert!((1..=MAX_DIM).contains(&n));
        let rows = self.count(n - 1);
        let cols = self.count(n);
        let mut mat = IntMat::zero(rows, cols);
        for c in 0..cols {
            for i in 0..=n {
                let r = self.face(n, c, i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let v = mat.get(r, c) + BigInt::from(sign);
                mat.set(r, c, v);
            }
        }
        ChainMatrix {
            row_labels: self.names[n - 1].clone(),
            col_labels: self.names[n].clone(),
            mat,
        }
    }

    /// Coboundary matrix `delta^n` on degree-`n` cochain value vectors; the
    /// transpose of `partial_{n+1}`.
    pub fn coboundary_matrix(&self, n: usize) -> IntMat {
        assert!(n < MAX_DIM);
        self.boundary_matrix(n + 1).mat.transpose()
    }

    pub fn to_json(&self) -> String {
        let mut s = String::new();
        write!(s, "{{\"dim\":{},\"simplices\":{{", self.dim()).unwrap();
        for dim in 0..=self.dim() {
            if dim > 0 {
                s.push(',');
            }
            write!(s, "\"{dim}\":[").unwrap();
            for idx in 0..self.count(dim) {
                if idx > 0 {
                    s.push(',');
                }
                if dim == 0 {
                    write!(s, "{}", json_str(self.name(0, idx))).unwrap();
                } else {
                    write!(s, "{{\"id\":{},\"faces\":[", json_str(self.name(dim, idx))).unwrap();
                    for i in 0..=dim {
                        if i > 0 {
                            s.push(',');
                        }
                        let f = self.face(dim, idx, i);
                        write!(s, "{}", json_str(self.name(dim - 1, f))).unwrap();
                    }
                    s.push_str("]}");
                }
            }
            s.push(']');
        }
        s.push_str("}}");
        s
    }

    pub fn from_json(text: &str) -> Result<DeltaSet, DeltaError> {
        let v: Value = serde_json::from_str(text).map_err(|e| DeltaError::Parse(e.to_string()))?;
        let simplices = v
            .get("simplices")
            .and_then(Value::as_object)
            .ok_or_else(|| DeltaError::Parse("missing simplices".into()))?;
        let mut ds = DeltaSet::new();
        if let Some(arr) = simplices.get("0").and_then(Value::as_array) {
            for item in arr {
                let name = item
                    .as_str()
                    .ok_or_else(|| DeltaError::Parse("vertex must be a string id".into()))?;
                ds.add_vertex(name);
            }
        }
        for dim in 1..=MAX_DIM {
            let Some(arr) = simplices.get(&dim.to_string()).and_then(Value::as_array) else {
                continue;
            };
            for item in arr {
                let id = item
                    .get("id")
                    .and_then(Value::as_str)
                    .ok_or_else(|| DeltaError::Parse(format!("dim {dim}: missing id")))?;
                let faces = item
                    .get("faces")
                    .and_then(Value::as_array)
                    .ok_or_else(|| DeltaError::Parse(format!("{id}: missing faces")))?;
                if faces.len() != dim + 1 {
                    return Err(DeltaError::Parse(format!(
                        "{id}: expected {} faces, found {}",
                        dim + 1,
                        faces.len()
                    )));
                }
                let mut resolved = [0usize; 4];
                for (i, f) in faces.iter().enumerate() {
                    let fname = f
                        .as_str()
                        .ok_or_else(|| DeltaError::Parse(format!("{id}: face must be an id")))?;
                    resolved[i] = ds
                        .index_of(dim - 1, fname)
                        .ok_or_else(|| DeltaError::Parse(format!("{id}: unknown face id {fname}")))?;
                }
                match dim {
                    1 => {
                        ds.add_edge(id, resolved[0], resolved[1]);
                    }
                    2 => {
                        ds.add_triangle(id, [resolved[0], resolved[1], resolved[2]]);
                    }
                    _ => {
                        ds.add_tetra(id, [resolved[0], resolved[1], resolved[2], resolved[3]]);
                    }
                }
            }
        }
        Ok(ds)
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

/// Integer matrix with simplex labels on rows and columns.
#[derive(Clone, Debug)]
pub struct ChainMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub mat: IntMat,
}

/// A map of delta sets: dimension-wise simplex assignments commuting with the
/// face maps.
#[derive(Clone, Debug)]
pub struct DeltaMap {
    pub from: Arc<DeltaSet>,
    pub to: Arc<DeltaSet>,
    pub images: [Vec<usize>; 4],
}

impl DeltaMap {
    pub fn validate(&self) -> Result<(), DeltaError> {
        for dim in 0..=MAX_DIM {
            if self.images[dim].len() != self.from.count(dim) {
                return Err(DeltaError::Parse(format!(
                    "map covers {} of {} simplices in dim {dim}",
                    self.images[dim].len(),
                    self.from.count(dim)
                )));
            }
        }
        for dim in 1..=MAX_DIM {
            for idx in 0..self.from.count(dim) {
                for i in 0..=dim {
                    let lhs = self.images[dim - 1][self.from.face(dim, idx, i)];
                    let rhs = self.to.face(dim, self.images[dim][idx], i);
                    if lhs != rhs {
                        return Err(DeltaError::Identity {
                            dim,
                            id: self.from.name(dim, idx).to_string(),
                            i,
                            j: dim,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A built complex together with labeled integer 1-cochain recipes recorded
/// by the builder (dual cocycle data).
#[derive(Clone, Debug)]
pub struct BuiltComplex {
    pub delta: Arc<DeltaSet>,
    /// integer value vectors on 1-simplices, keyed by label
    pub labeled: BTreeMap<String, Vec<i128>>,
}

/// Closed interval: two vertices, one edge from `v0` to `v1`.
pub fn build_interval() -> DeltaSet {
    let mut ds = DeltaSet::new();
    let v0 = ds.add_vertex("v0");
    let v1 = ds.add_vertex("v1");
    ds.add_edge("e0", v1, v0);
    ds
}

/// Circle subdivided into `n >= 1` edges.
pub fn build_circle(n: usize) -> DeltaSet {
    assert!(n >= 1);
    let mut ds = DeltaSet::new();
    for i in 0..n {
        ds.add_vertex(format!("v{i}"));
    }
    for i in 0..n {
        ds.add_edge(format!("e{i}"), (i + 1) % n, i);
    }
    ds
}

/// Standard 3-simplex: four vertices, six edges, four triangles, one
/// tetrahedron.
pub fn build_simplex3() -> DeltaSet {
    let mut ds = DeltaSet::new();
    let vs: Vec<usize> = (0..4).map(|i| ds.add_vertex(format!("v{i}"))).collect();
    let mut edges = BTreeMap::new();
    for a in 0..4 {
        for b in a + 1..4 {
            let e = ds.add_edge(format!("e{a}{b}"), vs[b], vs[a]);
            edges.insert((a, b), e);
        }
    }
    let mut tris = BTreeMap::new();
    for a in 0..4 {
        for b in a + 1..4 {
            for c in b + 1..4 {
                let t = ds.add_triangle(
                    format!("t{a}{b}{c}"),
                    [edges[&(b, c)], edges[&(a, c)], edges[&(a, b)]],
                );
                tris.insert((a, b, c), t);
            }
        }
    }
    ds.add_tetra(
        "s0123",
        [
            tris[&(1, 2, 3)],
            tris[&(0, 2, 3)],
            tris[&(0, 1, 3)],
            tris[&(0, 1, 2)],
        ],
    );
    ds
}

/// Standard 2-simplex: three vertices, three edges, one triangle.
pub fn build_simplex2() -> DeltaSet {
    let mut ds = DeltaSet::new();
    let v0 = ds.add_vertex("v0");
    let v1 = ds.add_vertex("v1");
    let v2 = ds.add_vertex("v2");
    let e01 = ds.add_edge("e01", v1, v0);
    let e12 = ds.add_edge("e12", v2, v1);
    let e02 = ds.add_edge("e02", v2, v0);
    ds.add_triangle("t0", [e12, e02, e01]);
    ds
}

/// Torus as a one-vertex delta complex: edges `x1`, `x2`, and the square's
/// diagonal, two triangles. Ships the two standard dual 1-cocycles `a1`, `a2`
/// and the cochain `b` equal to their cup-one product.
pub fn build_torus() -> BuiltComplex {
    let mut ds = DeltaSet::new();
    let v = ds.add_vertex("v");
    let x1 = ds.add_edge("x1", v, v);
    let x2 = ds.add_edge("x2", v, v);
    let diag = ds.add_edge("diag", v, v);
    // lower triangle on glued-square corners (2,3,4), upper on (1,2,3)
    ds.add_triangle("tL", [x1, x2, diag]);
    ds.add_triangle("tU", [diag, x2, x1]);
    let mut labeled = BTreeMap::new();
    let mut a1 = vec![0i128; 3];
    a1[x1] = 1;
    a1[diag] = -1;
    let mut a2 = vec![0i128; 3];
    a2[x2] = 1;
    a2[diag] = 1;
    let mut b = vec![0i128; 3];
    b[diag] = -1;
    labeled.insert("a1".into(), a1);
    labeled.insert("a2".into(), a2);
    labeled.insert("b".into(), b);
    BuiltComplex {
        delta: Arc::new(ds),
        labeled,
    }
}

/// The 2-complex obtained by attaching a 2-cell to a circle along a
/// degree-`p` map, triangulated with one circle midpoint and a cone vertex.
/// Ships the canonical integer lift of the dual generator cocycle as `u`.
///
/// The circle is the edge chain `h1` (`P -> M`) then `h2` (`M -> P`). Sector
/// `i` contributes spokes `r_i: P -> C` and `m_i: M -> C` and triangles
/// `A_i`, `B_i`; the last `B` wraps back to `r_0`.
pub fn build_sphere_attach(p: usize) -> Result<BuiltComplex, DeltaError> {
    if p < 1 {
        return Err(DeltaError::Parameter(format!("degree {p} < 1")));
    }
    let mut ds = DeltaSet::new();
    let pv = ds.add_vertex("P");
    let mv = ds.add_vertex("M");
    let cv = ds.add_vertex("C");
    let h1 = ds.add_edge("h1", mv, pv);
    let h2 = ds.add_edge("h2", pv, mv);
    let rs: Vec<usize> = (0..p)
        .map(|i| ds.add_edge(format!("r{i}"), cv, pv))
        .collect();
    let ms: Vec<usize> = (0..p)
        .map(|i| ds.add_edge(format!("m{i}"), cv, mv))
        .collect();
    for i in 0..p {
        ds.add_triangle(format!("A{i}"), [ms[i], rs[i], h1]);
        ds.add_triangle(format!("B{i}"), [rs[(i + 1) % p], ms[i], h2]);
    }
    // u takes value 1 on the circle chain; spoke values solve the cocycle
    // condition mod p, recorded through the canonical lift in 0..p-1
    let mut u = vec![0i128; ds.count(1)];
    u[h1] = 1;
    let pm = p as i128;
    for i in 0..p {
        u[rs[i]] = (pm - i as i128).rem_euclid(pm);
        u[ms[i]] = (pm - i as i128 - 1).rem_euclid(pm);
    }
    let mut labeled = BTreeMap::new();
    labeled.insert("u".into(), u);
    Ok(BuiltComplex {
        delta: Arc::new(ds),
        labeled,
    })
}

/// One letter of a relator word: generator index and sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

/// Presentation 2-complex for a one-relator presentation, triangulated with
/// one midpoint per generator loop, one polygon center, and two triangles per
/// relator letter. Ships dual cocycles `c1..`, one per generator; these
/// require every generator to have zero exponent sum in the relator.
pub fn build_presentation_complex(
    gens: usize,
    word: &[Letter],
) -> Result<BuiltComplex, DeltaError> {
    if word.is_empty() {
        return Err(DeltaError::Parameter("empty relator".into()));
    }
    for l in word {
        if l.gen >= gens {
            return Err(DeltaError::Parameter(format!(
                "letter refers to generator {} of {gens}",
                l.gen
            )));
        }
    }
    let mut ds = DeltaSet::new();
    let pv = ds.add_vertex("P");
    let mids: Vec<usize> = (0..gens)
        .map(|g| ds.add_vertex(format!("M{}", g + 1)))
        .collect();
    let cv = ds.add_vertex("C");
    // each generator loop is the chain g_a (P -> M_g) then g_b (M_g -> P)
    let ga: Vec<usize> = (0..gens)
        .map(|g| ds.add_edge(format!("x{}a", g + 1), mids[g], pv))
        .collect();
    let gb: Vec<usize> = (0..gens)
        .map(|g| ds.add_edge(format!("x{}b", g + 1), pv, mids[g]))
        .collect();
    let len = word.len();
    let corner_spokes: Vec<usize> = (0..len)
        .map(|i| ds.add_edge(format!("s{i}"), cv, pv))
        .collect();
    let mid_spokes: Vec<usize> = (0..len)
        .map(|i| ds.add_edge(format!("t{i}"), cv, mids[word[i].gen]))
        .collect();
    for (i, l) in word.iter().enumerate() {
        let next = corner_spokes[(i + 1) % len];
        if !l.inverse {
            // corner_i -> mid -> corner_{i+1} reads the generator forward
            ds.add_triangle(
                format!("f{i}a"),
                [mid_spokes[i], corner_spokes[i], ga[l.gen]],
            );
            ds.add_triangle(format!("f{i}b"), [next, mid_spokes[i], gb[l.gen]]);
        } else {
            // the side reads the generator backwards
            ds.add_triangle(
                format!("f{i}a"),
                [corner_spokes[i], mid_spokes[i], gb[l.gen]],
            );
            ds.add_triangle(format!("f{i}b"), [mid_spokes[i], next, ga[l.gen]]);
        }
    }
    let mut labeled = BTreeMap::new();
    for g in 0..gens {
        let sum: i128 = word
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| if l.inverse { -1i128 } else { 1 })
            .sum();
        if sum != 0 {
            return Err(DeltaError::Parameter(format!(
                "relator has nonzero exponent sum {sum} on generator {}",
                g + 1
            )));
        }
        // value 1 on the generator's first half edge; spoke values follow
        // from the coboundary equations around the polygon
        let mut c = vec![0i128; ds.count(1)];
        c[ga[g]] = 1;
        let mut corner_val = 0i128;
        for (i, l) in word.iter().enumerate() {
            c[corner_spokes[i]] = corner_val;
            let hit = (l.gen == g) as i128;
            if !l.inverse {
                let t = corner_val - hit;
                c[mid_spokes[i]] = t;
                corner_val = t;
            } else {
                c[mid_spokes[i]] = corner_val;
                corner_val += hit;
            }
        }
        labeled.insert(format!("c{}", g + 1), c);
    }
    Ok(BuiltComplex {
        delta: Arc::new(ds),
        labeled,
    })
}

/// The relator `[x2,x3][x1, x2 x1^k x2^{-1}]` on three generators.
pub fn xk_relator(k: usize) -> Vec<Letter> {
    let l = |gen: usize, inverse: bool| Letter { gen, inverse };
    let mut w = vec![
        l(1, false),
        l(2, false),
        l(1, true),
        l(2, true),
        l(0, false),
        l(1, false),
    ];
    w.extend(std::iter::repeat_n(l(0, false), k));
    w.extend([l(1, true), l(0, true), l(1, false)]);
    w.extend(std::iter::repeat_n(l(0, true), k));
    w.push(l(1, true));
    w
}

/// Presentation 2-complex of the homotopy-type family member `k`; dual
/// cocycles are labeled `c1`, `c2`, `c3`.
pub fn build_presentation_xk(k: usize) -> BuiltComplex {
    build_presentation_complex(3, &xk_relator(k)).expect("relator is balanced")
}

/// One-vertex complex whose 1-simplices are integer vectors over `vars` and
/// whose 2-simplices encode pairwise sums: the free playground for binomial
/// cochain operations.
#[derive(Clone, Debug)]
pub struct BinomialComplex {
    pub delta: Arc<DeltaSet>,
    pub vars: Vec<String>,
    /// function value vectors, aligned with the 1-simplices
    pub functions: Vec<Vec<i64>>,
    /// 2-simplex index -> (first function row, second function row)
    pub pairs: Vec<(usize, usize)>,
}

pub fn build_binomial_test_complex(vars: &[String], functions: &[Vec<i64>]) -> BinomialComplex {
    let mut ds = DeltaSet::new();
    ds.add_vertex("v");
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    fn intern(rows: &mut Vec<Vec<i64>>, index: &mut BTreeMap<Vec<i64>, usize>, f: Vec<i64>) -> usize {
        if let Some(&i) = index.get(&f) {
            return i;
        }
        let i = rows.len();
        index.insert(f.clone(), i);
        rows.push(f);
        i
    }
    let base: Vec<usize> = functions
        .iter()
        .map(|f| {
            assert_eq!(f.len(), vars.len(), "function arity must match vars");
            intern(&mut rows, &mut index, f.clone())
        })
        .collect();
    // close under the sums the 2-simplices need
    for &a in &base {
        for &b in &base {
            let sum: Vec<i64> = rows[a]
                .iter()
                .zip(rows[b].iter())
                .map(|(x, y)| x + y)
                .collect();
            intern(&mut rows, &mut index, sum);
        }
    }
    for (i, _) in rows.iter().enumerate() {
        ds.add_edge(format!("f{i}"), 0, 0);
    }
    let mut pairs = Vec::new();
    for &a in &base {
        for &b in &base {
            let sum: Vec<i64> = rows[a]
                .iter()
                .zip(rows[b].iter())
                .map(|(x, y)| x + y)
                .collect();
            let s = index[&sum];
            // faces: d0 = second, d1 = sum, d2 = first
            ds.add_triangle(format!("p{a}_{b}"), [b, s, a]);
            pairs.push((a, b));
        }
    }
    BinomialComplex {
        delta: Arc::new(ds),
        vars: vars.to_vec(),
        functions: rows,
        pairs,
    }
}

/// Deterministic pseudo-random valid delta set with at most roughly `size`
/// simplices per dimension. Dimensions two and below grow by gluing faces of
/// existing simplices; dimension three comes from ordered vertex tuples.
pub fn random_delta(seed: u64, size: usize) -> DeltaSet {
    let mut s = Sampler::new(seed);
    let mut ds = DeltaSet::new();
    let nv = s.usize(1, size.clamp(1, 5));
    for i in 0..nv {
        ds.add_vertex(format!("v{i}"));
    }
    let ne = s.usize(1, size.max(1));
    for i in 0..ne {
        let d1 = s.usize(0, ds.count(0) - 1);
        let d0 = s.usize(0, ds.count(0) - 1);
        ds.add_edge(format!("e{i}"), d0, d1);
    }
    let nt = s.usize(0, size.max(1));
    let mut made = 0;
    let mut attempts = 0;
    while made < nt && attempts < 8 * nt + 8 {
        attempts += 1;
        let front = s.usize(0, ds.count(1) - 1);
        let v0 = ds.face(1, front, 1);
        let v1 = ds.face(1, front, 0);
        let backs: Vec<usize> = (0..ds.count(1))
            .filter(|&e| ds.face(1, e, 1) == v1)
            .collect();
        if backs.is_empty() {
            continue;
        }
        let back = *s.pick(&backs);
        let v2 = ds.face(1, back, 0);
        let longs: Vec<usize> = (0..ds.count(1))
            .filter(|&e| ds.face(1, e, 1) == v0 && ds.face(1, e, 0) == v2)
            .collect();
        let long = if !longs.is_empty() && (s.bool(2, 3) || ds.count(1) >= size) {
            *s.pick(&longs)
        } else if ds.count(1) < size {
            ds.add_edge(format!("e{}", ds.count(1)), v2, v0)
        } else {
            continue;
        };
        ds.add_triangle(format!("t{made}"), [back, long, front]);
        made += 1;
    }
    let n3 = s.usize(0, (size / 4).min(3));
    if n3 > 0 {
        let mut edge_reg: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut tri_reg: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        fn edge(
            ds: &mut DeltaSet,
            reg: &mut BTreeMap<(usize, usize), usize>,
            a: usize,
            b: usize,
        ) -> usize {
            if let Some(&i) = reg.get(&(a, b)) {
                return i;
            }
            let i = ds.add_edge(format!("e{}", ds.count(1)), b, a);
            reg.insert((a, b), i);
            i
        }
        fn tri(
            ds: &mut DeltaSet,
            ereg: &mut BTreeMap<(usize, usize), usize>,
            reg: &mut BTreeMap<(usize, usize, usize), usize>,
            a: usize,
            b: usize,
            c: usize,
        ) -> usize {
            if let Some(&i) = reg.get(&(a, b, c)) {
                return i;
            }
            let eab = edge(ds, ereg, a, b);
            let ebc = edge(ds, ereg, b, c);
            let eac = edge(ds, ereg, a, c);
            let i = ds.add_triangle(format!("t{}", ds.count(2)), [ebc, eac, eab]);
            reg.insert((a, b, c), i);
            i
        }
        for t in 0..n3 {
            // a fresh tetrahedron may add up to 6 edges and 4 triangles
            if ds.count(1) + 6 > size || ds.count(2) + 4 > size {
                break;
            }
            let mut vs: Vec<usize> = (0..4).map(|_| s.usize(0, ds.count(0) - 1)).collect();
            vs.sort();
            let f0 = tri(&mut ds, &mut edge_reg, &mut tri_reg, vs[1], vs[2], vs[3]);
            let f1 = tri(&mut ds, &mut edge_reg, &mut tri_reg, vs[0], vs[2], vs[3]);
            let f2 = tri(&mut ds, &mut edge_reg, &mut tri_reg, vs[0], vs[1], vs[3]);
            let f3 = tri(&mut ds, &mut edge_reg, &mut tri_reg, vs[0], vs[1], vs[2]);
            ds.add_tetra(format!("s{t}"), [f0, f1, f2, f3]);
        }
    }
    debug_assert!(ds.validate().is_ok());
    ds
}

/// Wraps the interval onto the one-edge circle.
pub fn map_interval_to_circle() -> DeltaMap {
    let from = Arc::new(build_interval());
    let to = Arc::new(build_circle(1));
    DeltaMap {
        from,
        to,
        images: [vec![0, 0], vec![0], vec![], vec![]],
    }
}

/// Wraps the `n`-edge circle around the one-edge circle.
pub fn map_circle_wrap(n: usize) -> DeltaMap {
    let from = Arc::new(build_circle(n));
    let to = Arc::new(build_circle(1));
    DeltaMap {
        from,
        to,
        images: [vec![0; n], vec![0; n], vec![], vec![]],
    }
}

/// Rotation automorphism of the attached-cell complex, shifting sectors by
/// one; it induces the identity on cohomology.
pub fn map_sphere_rotation(p: usize) -> Result<DeltaMap, DeltaError> {
    let built = build_sphere_attach(p)?;
    let ds = built.delta.clone();
    let mut edge_img = vec![0usize; ds.count(1)];
    let e = |name: &str| ds.index_of(1, name).unwrap();
    edge_img[e("h1")] = e("h1");
    edge_img[e("h2")] = e("h2");
    for i in 0..p {
        edge_img[e(&format!("r{i}"))] = e(&format!("r{}", (i + 1) % p));
        edge_img[e(&format!("m{i}"))] = e(&format!("m{}", (i + 1) % p));
    }
    let mut tri_img = vec![0usize; ds.count(2)];
    let t = |name: &str| ds.index_of(2, name).unwrap();
    for i in 0..p {
        tri_img[t(&format!("A{i}"))] = t(&format!("A{}", (i + 1) % p));
        tri_img[t(&format!("B{i}"))] = t(&format!("B{}", (i + 1) % p));
    }
    Ok(DeltaMap {
        from: ds.clone(),
        to: ds,
        images: [vec![0, 1, 2], edge_img, tri_img, vec![]],
    })
}
