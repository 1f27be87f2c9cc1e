//! Simplicial 4-complexes given by their top simplices.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pure 4-dimensional simplicial complex with its skeleta. Vertex labels
/// are arbitrary integers; every cell is stored as a sorted vertex tuple and
/// cells of each dimension are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub vertices: Vec<usize>,
    pub simplices: Vec<[usize; 5]>,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub tetrahedra: Vec<[usize; 4]>,
    /// Edge indices of each triangle.
    pub triangle_edges: Vec<[usize; 3]>,
    /// Edge, triangle and tetrahedron indices of each 4-simplex.
    pub simplex_edges: Vec<[usize; 10]>,
    pub simplex_triangles: Vec<[usize; 10]>,
    pub simplex_tetrahedra: Vec<[usize; 5]>,
}

/// `k`-element subsets of a sorted tuple, in lexicographic order.
fn faces<const K: usize>(s: &[usize]) -> Vec<[usize; K]> {
    let n = s.len();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..K).collect();
    loop {
        let mut f = [0; K];
        for (slot, &i) in f.iter_mut().zip(&idx) {
            *slot = s[i];
        }
        out.push(f);
        let Some(p) = (0..K).rev().find(|&p| idx[p] < n - K + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..K {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn index_of<const K: usize>(cells: &BTreeMap<[usize; K], usize>, f: &[usize; K]) -> usize {
    cells[f]
}

fn indexed<const K: usize>(set: BTreeSet<[usize; K]>) -> (Vec<[usize; K]>, BTreeMap<[usize; K], usize>) {
    let list: Vec<[usize; K]> = set.into_iter().collect();
    let map = list.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    (list, map)
}

impl Triangulation {
    /// Builds the skeleta and checks that every tetrahedron lies in at most
    /// two 4-simplices.
    pub fn from_simplices(simplices: Vec<[usize; 5]>) -> Result<Self> {
        if simplices.is_empty() {
            return Err(Error::InvalidInput("no 4-simplices".into()));
        }
        let mut tops = BTreeSet::new();
        for s in &simplices {
            let mut t = *s;
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput(format!("simplex {s:?} repeats a vertex")));
            }
            if !tops.insert(t) {
                return Err(Error::InvalidInput(format!("simplex {s:?} listed twice")));
            }
        }
        let simplices: Vec<[usize; 5]> = tops.into_iter().collect();
        let mut count3: BTreeMap<[usize; 4], usize> = BTreeMap::new();
        let (mut e, mut f) = (BTreeSet::new(), BTreeSet::new());
        for s in &simplices {
            e.extend(faces::<2>(s));
            f.extend(faces::<3>(s));
            for t in faces::<4>(s) {
                *count3.entry(t).or_default() += 1;
            }
        }
        if let Some((t, &count)) = count3.iter().find(|(_, &c)| c > 2) {
            return Err(Error::NotPseudomanifold { tetra: *t, count });
        }
        let (edges, emap) = indexed(e);
        let (triangles, fmap) = indexed(f);
        let (tetrahedra, tmap) = indexed(count3.keys().copied().collect());
        let triangle_edges = triangles
            .iter()
            .map(|t| {
                let fs = faces::<2>(t);
                [index_of(&emap, &fs[0]), index_of(&emap, &fs[1]), index_of(&emap, &fs[2])]
            })
            .collect();
        let mut simplex_edges = Vec::new();
        let mut simplex_triangles = Vec::new();
        let mut simplex_tetrahedra = Vec::new();
        for s in &simplices {
            let es: Vec<usize> = faces::<2>(s).iter().map(|x| index_of(&emap, x)).collect();
            let fs: Vec<usize> = faces::<3>(s).iter().map(|x| index_of(&fmap, x)).collect();
            let ts: Vec<usize> = faces::<4>(s).iter().map(|x| index_of(&tmap, x)).collect();
            simplex_edges.push(es.try_into().expect("ten edges"));
            simplex_triangles.push(fs.try_into().expect("ten triangles"));
            simplex_tetrahedra.push(ts.try_into().expect("five tetrahedra"));
        }
        let vertices: BTreeSet<usize> = simplices.iter().flatten().copied().collect();
        Ok(Self {
            vertices: vertices.into_iter().collect(),
            simplices,
            edges,
            triangles,
            tetrahedra,
            triangle_edges,
            simplex_edges,
            simplex_triangles,
            simplex_tetrahedra,
        })
    }

    /// `[Δ₀, Δ₁, Δ₂, Δ₃, Δ₄]`.
    pub fn counts(&self) -> [usize; 5] {
        [
            self.vertices.len(),
            self.edges.len(),
            self.triangles.len(),
            self.tetrahedra.len(),
            self.simplices.len(),
        ]
    }

    /// Tetrahedra lying in exactly one 4-simplex.
    pub fn boundary_tetrahedra(&self) -> Vec<[usize; 4]> {
        let mut count = vec![0usize; self.tetrahedra.len()];
        for s in &self.simplex_tetrahedra {
            for &t in s {
                count[t] += 1;
            }
        }
        self.tetrahedra
            .iter()
            .zip(count)
            .filter(|(_, c)| *c == 1)
            .map(|(t, _)| *t)
            .collect()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { [a, b] } else { [b, a] };
        self.edges.binary_search(&key).ok()
    }

    /// The same complex with every vertex `v` renamed to `map(v)`; `map`
    /// must be injective on the vertices.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_simplices(self.simplices.iter().map(|s| s.map(&map)).collect())
    }

    /// One 4-simplex on vertices `0..5`.
    pub fn single_simplex() -> Self {
        Self::from_simplices(vec![[0, 1, 2, 3, 4]]).expect("valid")
    }

    /// The boundary of the 5-simplex: the six 4-faces of `0..6`.
    pub fn boundary_of_5_simplex() -> Self {
        let all = [0, 1, 2, 3, 4, 5];
        Self::from_simplices(faces::<5>(&all)).expect("valid")
    }

    /// Text form accepted by [`load_triangulation`].
    pub fn to_text(&self) -> String {
        let mut s = String::from("dim 4\n");
        for t in &self.simplices {
            s.push_str(&format!("simplex {} {} {} {} {}\n", t[0], t[1], t[2], t[3], t[4]));
        }
        s
    }
}

/// Parses `dim 4` followed by `simplex v0 v1 v2 v3 v4` lines; `#` starts a
/// comment.
pub fn load_triangulation(text: &str) -> Result<Triangulation> {
    let mut saw_dim = false;
    let mut simplices = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let mut words = line.split_whitespace();
        match words.next() {
            Some("dim") => {
                let d: Vec<&str> = words.collect();
                if d != ["4"] {
                    return Err(err(format!("only dimension 4 is supported, got {:?}", d.join(" "))));
                }
                saw_dim = true;
            }
            Some("simplex") => {
                if !saw_dim {
                    return Err(err("simplex before the `dim 4` line".into()));
                }
                let vs: Vec<usize> = words
                    .map(|w| w.parse::<usize>().map_err(|e| err(format!("vertex {w:?}: {e}"))))
                    .collect::<Result<_>>()?;
                let s: [usize; 5] = vs.try_into().map_err(|v: Vec<usize>| err(format!("expected 5 vertices, got {}", v.len())))?;
                let mut sorted = s;
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(err(format!("simplex {s:?} repeats a vertex")));
                }
                simplices.push(s);
            }
            Some(other) => return Err(err(format!("unknown keyword {other:?}"))),
            None => unreachable!(),
        }
    }
    if !saw_dim {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: "missing `dim 4` line".into(),
        });
    }
    Triangulation::from_simplices(simplices)
}
