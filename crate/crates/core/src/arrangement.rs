//! Rational hyperplane arrangements: intersection lattice, dense edges, and
//! automatic resolution data for line arrangements in ℂ².
//!
//! Hyperplane `i` of the input (0-based internally, 1-based in JSON) is the
//! torus coordinate `t_{i+1}` everywhere downstream.
//!
//! An edge is dense when the normals of the hyperplanes containing it form a
//! connected matroid. Localizing at the edge first is what makes this usable
//! for affine (non-central) arrangements; only affine edges are considered,
//! nothing at infinity.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exact::{primitive_part, rank_of_vectors, solve_combination, AffineSubspace, IntVector, Rational};
use crate::zeta::{DivisorRecord, ResolutionData, Stratum};

/// The hyperplane `normal·x + constant = 0`, with `normal` primitive and its
/// first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub normal: IntVector,
    pub constant: Rational,
}

impl Hyperplane {
    /// Canonical form of `c0 + Σ c_i x_i = 0`, given as `[c0, c1, …, cn]`.
    pub fn from_form(form: &[Rational]) -> Result<Self> {
        let (c0, coeffs) = form
            .split_first()
            .ok_or_else(|| Error::InvalidInput("empty linear form".into()))?;
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = IntVector::new(coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect());
        let pp = primitive_part(&scaled)?;
        let mut divisor = pp.gcd.clone();
        if pp.flipped {
            divisor = -divisor;
        }
        let constant = (c0 * &Rational::from_int(lcm))
            .checked_div(&Rational::from_int(divisor))
            .expect("gcd of a nonzero vector is positive");
        Ok(Hyperplane {
            normal: pp.vector,
            constant,
        })
    }

    /// The form `[c0, c1, …, cn]` of the canonical equation.
    pub fn to_form(&self) -> Vec<Rational> {
        std::iter::once(self.constant.clone())
            .chain(self.normal.to_rationals())
            .collect()
    }

    pub fn contains(&self, w: &AffineSubspace) -> bool {
        w.lies_in(&self.normal, &self.constant)
    }
}

/// An ordered list of pairwise distinct affine hyperplanes in ℚ^n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ArrangementJson", into = "ArrangementJson")]
pub struct Arrangement {
    n: usize,
    hyperplanes: Vec<Hyperplane>,
}

#[derive(Clone, Serialize, Deserialize)]
struct ArrangementJson {
    n: usize,
    forms: Vec<Vec<Rational>>,
}

impl TryFrom<ArrangementJson> for Arrangement {
    type Error = Error;

    fn try_from(raw: ArrangementJson) -> Result<Self> {
        Arrangement::from_forms(raw.n, &raw.forms)
    }
}

impl From<Arrangement> for ArrangementJson {
    fn from(a: Arrangement) -> Self {
        ArrangementJson {
            n: a.n,
            forms: a.hyperplanes.iter().map(Hyperplane::to_form).collect(),
        }
    }
}

impl Arrangement {
    pub fn new(n: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("ambient dimension must be at least 1".into()));
        }
        if hyperplanes.is_empty() {
            return Err(Error::InvalidInput(
                "an arrangement needs at least one hyperplane".into(),
            ));
        }
        let mut seen: BTreeMap<&Hyperplane, usize> = BTreeMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            check_dim(n, h.normal.len())?;
            if let Some(&j) = seen.get(h) {
                return Err(Error::DuplicateHyperplane {
                    first: j + 1,
                    second: i + 1,
                });
            }
            seen.insert(h, i);
        }
        Ok(Arrangement { n, hyperplanes })
    }

    pub fn from_forms(n: usize, forms: &[Vec<Rational>]) -> Result<Self> {
        let hyperplanes = forms
            .iter()
            .map(|f| {
                check_dim(n + 1, f.len())?;
                Hyperplane::from_form(f)
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(n, hyperplanes)
    }

    /// Integer forms, for tests and fixtures.
    pub fn from_int_forms(n: usize, forms: &[&[i64]]) -> Result<Self> {
        let forms: Vec<Vec<Rational>> = forms
            .iter()
            .map(|f| f.iter().map(|&c| Rational::from_int(c)).collect())
            .collect();
        Self::from_forms(n, &forms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of hyperplanes, i.e. the torus dimension.
    pub fn r(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// Indices of the hyperplanes containing `w`.
    pub fn closure(&self, w: &AffineSubspace) -> Vec<usize> {
        (0..self.r()).filter(|&i| self.hyperplanes[i].contains(w)).collect()
    }

    pub fn normals_of(&self, indices: &[usize]) -> Vec<IntVector> {
        indices.iter().map(|&i| self.hyperplanes[i].normal.clone()).collect()
    }
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let raw: ArrangementJson = serde_json::from_str(text)?;
    Arrangement::try_from(raw)
}

/// A nonempty intersection of hyperplanes, keyed by the (closed) set of
/// hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// 0-based, sorted.
    pub indices: Vec<usize>,
    pub subspace: AffineSubspace,
    pub codim: usize,
    pub dense: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeJson {
    pub indices: Vec<usize>,
    pub codim: usize,
    pub dense: bool,
}

impl From<&Edge> for EdgeJson {
    fn from(e: &Edge) -> Self {
        EdgeJson {
            indices: e.indices.iter().map(|i| i + 1).collect(),
            codim: e.codim,
            dense: e.dense,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    pub edges: Vec<Edge>,
}

#[derive(Serialize)]
pub struct LatticeJson {
    pub edges: Vec<EdgeJson>,
}

impl IntersectionLattice {
    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            edges: self.edges.iter().map(EdgeJson::from).collect(),
        }
    }

    pub fn dense_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.dense)
    }

    pub fn edge(&self, indices: &[usize]) -> Option<&Edge> {
        self.edges.iter().find(|e| e.indices == indices)
    }
}

/// All nonempty intersections, built by intersecting known edges with each
/// hyperplane and closing the resulting index sets.
pub fn intersection_lattice(arr: &Arrangement) -> Result<IntersectionLattice> {
    let mut known: BTreeMap<Vec<usize>, AffineSubspace> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for (i, h) in arr.hyperplanes.iter().enumerate() {
        let w = AffineSubspace::whole(arr.n)
            .intersect_hyperplane(&h.normal, &h.constant)
            .expect("a hyperplane is nonempty");
        let key = arr.closure(&w);
        if key != [i] {
            return Err(Error::Internal(format!("hyperplane {} is not closed", i + 1)));
        }
        known.insert(key.clone(), w);
        queue.push_back(key);
    }
    while let Some(key) = queue.pop_front() {
        let w = known[&key].clone();
        for (i, h) in arr.hyperplanes.iter().enumerate() {
            if key.binary_search(&i).is_ok() {
                continue;
            }
            let Some(next) = w.intersect_hyperplane(&h.normal, &h.constant) else {
                continue;
            };
            let next_key = arr.closure(&next);
            if !known.contains_key(&next_key) {
                known.insert(next_key.clone(), next);
                queue.push_back(next_key);
            }
        }
    }

    let mut edges: Vec<Edge> = known
        .into_par_iter()
        .map(|(indices, subspace)| {
            let dense = is_irreducible(&arr.normals_of(&indices))?;
            Ok(Edge {
                codim: subspace.codim(),
                indices,
                subspace,
                dense,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    edges.sort_by(|a, b| (a.codim, &a.indices).cmp(&(b.codim, &b.indices)));
    Ok(IntersectionLattice { edges })
}

/// The dense edges: those whose localized central arrangement is irreducible.
pub fn dense_edges(arr: &Arrangement) -> Result<Vec<Edge>> {
    Ok(intersection_lattice(arr)?
        .edges
        .into_iter()
        .filter(|e| e.dense)
        .collect())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let p = self.parent[i];
        if p == i {
            return i;
        }
        let root = self.find(p);
        self.parent[i] = root;
        root
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri.max(rj)] = ri.min(rj);
        }
    }

    fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let root = self.find(i);
            map.entry(root).or_default().push(i);
        }
        map.into_values().collect()
    }
}

fn check_no_loops(vectors: &[IntVector]) -> Result<()> {
    if vectors.iter().any(IntVector::is_zero) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

fn subset_rank(vectors: &[IntVector], subset: &[usize]) -> usize {
    let sub: Vec<IntVector> = subset.iter().map(|&i| vectors[i].clone()).collect();
    rank_of_vectors(&sub)
}

/// Connected components of the linear matroid on `vectors`.
///
/// Picks a basis greedily and joins every non-basis element with the support of
/// its fundamental circuit. The resulting partition is checked for rank
/// additivity; if the check ever fails the brute-force splitter takes over.
pub fn matroid_components(vectors: &[IntVector]) -> Result<Vec<Vec<usize>>> {
    check_no_loops(vectors)?;
    let m = vectors.len();
    let mut basis: Vec<usize> = Vec::new();
    let mut basis_vectors: Vec<IntVector> = Vec::new();
    let mut uf = UnionFind::new(m);
    for (i, v) in vectors.iter().enumerate() {
        match solve_combination(&basis_vectors, v) {
            None => {
                basis.push(i);
                basis_vectors.push(v.clone());
            }
            Some(coeffs) => {
                for (k, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        uf.union(i, basis[k]);
                    }
                }
            }
        }
    }
    let parts = uf.groups();
    let total: usize = parts.iter().map(|p| subset_rank(vectors, p)).sum();
    if total == basis.len() {
        return Ok(parts);
    }
    matroid_components_bruteforce(vectors)
}

/// Largest input accepted by the exhaustive bipartition search.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// A bipartition `S₁ ⊔ S₂` with `rank S₁ + rank S₂ = rank S`, if one exists.
/// Element 0 always lands in `S₁`.
pub fn find_separation(vectors: &[IntVector]) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let m = vectors.len();
    if m > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeBound {
            size: m,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if m < 2 {
        return Ok(None);
    }
    let all: Vec<usize> = (0..m).collect();
    let full = subset_rank(vectors, &all);
    // Bit k of the mask puts element k + 1 into S₂.
    for mask in 1u32..(1u32 << (m - 1)) {
        let (mut s1, mut s2) = (vec![0], Vec::new());
        for k in 1..m {
            if mask & (1 << (k - 1)) != 0 {
                s2.push(k);
            } else {
                s1.push(k);
            }
        }
        if subset_rank(vectors, &s1) + subset_rank(vectors, &s2) == full {
            return Ok(Some((s1, s2)));
        }
    }
    Ok(None)
}

/// Exhaustive irreducibility test: no bipartition has additive rank.
pub fn is_irreducible_bruteforce(vectors: &[IntVector]) -> Result<bool> {
    if vectors.is_empty() {
        return Err(Error::InvalidInput("irreducibility of an empty arrangement".into()));
    }
    check_no_loops(vectors)?;
    Ok(find_separation(vectors)?.is_none())
}

/// Components by recursive exhaustive splitting.
pub fn matroid_components_bruteforce(vectors: &[IntVector]) -> Result<Vec<Vec<usize>>> {
    check_no_loops(vectors)?;
    fn split(vectors: &[IntVector], ids: Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        let sub: Vec<IntVector> = ids.iter().map(|&i| vectors[i].clone()).collect();
        match find_separation(&sub)? {
            None => out.push(ids),
            Some((s1, s2)) => {
                split(vectors, s1.iter().map(|&k| ids[k]).collect(), out)?;
                split(vectors, s2.iter().map(|&k| ids[k]).collect(), out)?;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    if !vectors.is_empty() {
        split(vectors, (0..vectors.len()).collect(), &mut out)?;
    }
    out.sort();
    Ok(out)
}

/// Whether the central arrangement with these normals is irreducible.
pub fn is_irreducible(normals: &[IntVector]) -> Result<bool> {
    if normals.is_empty() {
        return Err(Error::InvalidInput("irreducibility of an empty arrangement".into()));
    }
    Ok(matroid_components(normals)?.len() == 1)
}

pub fn point_stratum_name(indices: &[usize]) -> String {
    format!("point({})", one_based(indices))
}

pub fn line_stratum_name(i: usize) -> String {
    format!("line({})", i + 1)
}

fn one_based(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Resolution data for a line arrangement in ℂ²: one blow-up at every
/// multiple point, plus the generic point of every line.
///
/// A point of multiplicity `m` contributes its exceptional divisor with the
/// incidence vector as orders of vanishing and `χ = 2 - m` (a projective line
/// punctured by the `m` strict transforms). A generic point of line `i`
/// contributes `a = e_i`, `χ = 1`.
pub fn line_arrangement_resolution(arr: &Arrangement) -> Result<ResolutionData> {
    if arr.n != 2 {
        return Err(Error::InvalidInput(format!(
            "automatic resolution needs a line arrangement in the plane, got n = {}",
            arr.n
        )));
    }
    let r = arr.r();
    let lattice = intersection_lattice(arr)?;
    let mut strata = Vec::new();
    for e in lattice.edges.iter().filter(|e| e.codim == 2) {
        let mut a = IntVector::zeros(r).into_entries();
        for &i in &e.indices {
            a[i] = BigInt::one();
        }
        let m = e.indices.len() as i64;
        strata.push(Stratum::new(
            point_stratum_name(&e.indices),
            vec![DivisorRecord::new(
                format!("E({})", one_based(&e.indices)),
                IntVector::new(a),
                2 - m,
            )],
        ));
    }
    for i in 0..r {
        strata.push(Stratum::new(
            line_stratum_name(i),
            vec![DivisorRecord::new(format!("L({})", i + 1), IntVector::unit(r, i), 1)],
        ));
    }
    ResolutionData::new(r, None, strata)
}

/// Number of hyperplanes through the edge; the multiplicity of a point in ℂ².
pub fn multiplicity(e: &Edge) -> usize {
    e.indices.len()
}
