use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cone::Cone;
use super::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::lattice::{primitive_vector, rank_of, IntVec, RatVec};

/// `<normal, x> >= offset`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: IntVec,
    pub offset: BigRational,
}

impl HalfSpace {
    pub fn contains(&self, x: &RatVec) -> bool {
        self.normal.dot_rat(x) >= self.offset
    }

    pub fn contains_int(&self, x: &IntVec) -> bool {
        BigRational::from_integer(self.normal.dot(x)) >= self.offset
    }

    pub fn is_tight(&self, x: &IntVec) -> bool {
        BigRational::from_integer(self.normal.dot(x)) == self.offset
    }
}

/// `conv(support_points) + recession`, stored with its vertices and facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    support_points: Vec<IntVec>,
    vertices: Vec<IntVec>,
    facets: Vec<HalfSpace>,
    recession: Cone,
}

/// A face `Δ(v)`: the points of the polyhedron minimising `<., normal>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub normal: IntVec,
    pub ell: BigRational,
    pub dim: usize,
    pub points_on_face: Vec<IntVec>,
    pub vertex_set: Vec<IntVec>,
    pub compact: bool,
    /// indices of the facets of the polyhedron that contain this face
    pub tight_facets: Vec<usize>,
    /// the polyhedron's half-spaces, so membership in the face can be decided
    /// without the polyhedron at hand
    halfspaces: Vec<HalfSpace>,
}

impl Face {
    /// Canonical identity: tight support points and tight facets.
    pub fn key(&self) -> (&[IntVec], &[usize]) {
        (&self.points_on_face, &self.tight_facets)
    }

    pub fn same_face(&self, other: &Face) -> bool {
        self.key() == other.key()
    }

    pub fn contains_int(&self, x: &IntVec) -> bool {
        BigRational::from_integer(self.normal.dot(x)) == self.ell
            && self.halfspaces.iter().all(|h| h.contains_int(x))
    }

    pub fn is_whole_polyhedron(&self) -> bool {
        self.normal.is_zero()
    }
}

/// Builds `conv(points) + recession` by double description on the
/// homogenisation `cone({(p, 1)} ∪ {(r, 0)})`.
pub fn newton_polyhedron(points: &[IntVec], recession: &Cone) -> Result<NewtonPolyhedron> {
    if points.is_empty() {
        return Err(Error::Empty("support points"));
    }
    let n = recession.ambient_dim();
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
    }
    if !recession.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let mut support: Vec<IntVec> = points.to_vec();
    support.sort();
    support.dedup();

    let lift = |v: &IntVec, t: i64| {
        let mut e = v.entries().to_vec();
        e.push(BigInt::from(t));
        IntVec::new(e)
    };
    let mut gens: Vec<IntVec> = support.iter().map(|p| lift(p, 1)).collect();
    gens.extend(recession.rays().iter().map(|r| lift(r, 0)));

    let mut facets: Vec<HalfSpace> = Vec::new();
    for ray in extreme_rays(&gens, n + 1)? {
        let u = IntVec::new(ray.entries()[..n].to_vec());
        if u.is_zero() {
            continue; // the face at infinity, t >= 0
        }
        let normal = primitive_vector(&u)?;
        let offset = support.iter().map(|p| p.dot(&normal)).min().expect("nonempty");
        facets.push(HalfSpace { normal, offset: BigRational::from_integer(offset) });
    }
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));

    let vertices = support
        .iter()
        .filter(|p| {
            let tight: Vec<IntVec> = facets
                .iter()
                .filter(|h| h.is_tight(p))
                .map(|h| h.normal.clone())
                .collect();
            rank_of(&tight, n) == n
        })
        .cloned()
        .collect();

    Ok(NewtonPolyhedron { support_points: support, vertices, facets, recession: recession.clone() })
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.recession.ambient_dim()
    }

    pub fn support_points(&self) -> &[IntVec] {
        &self.support_points
    }

    pub fn vertices(&self) -> &[IntVec] {
        &self.vertices
    }

    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn recession(&self) -> &Cone {
        &self.recession
    }

    fn check_functional(&self, v: &IntVec) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        if !self.recession.dual_contains(v) {
            return Err(Error::UnboundedDirection);
        }
        Ok(())
    }

    /// `ℓ(v) = min <k, v>` over the polyhedron.
    pub fn ell(&self, v: &IntVec) -> Result<BigRational> {
        self.check_functional(v)?;
        let m = self.support_points.iter().map(|p| p.dot(v)).min().expect("nonempty");
        Ok(BigRational::from_integer(m))
    }

    /// Membership via the facet inequalities. These describe
    /// `conv(A) + cone` completely: the only other facet of the
    /// homogenisation is `t >= 0`.
    pub fn contains(&self, x: &RatVec) -> bool {
        x.dim() == self.dim() && self.facets.iter().all(|h| h.contains(x))
    }

    pub fn contains_int(&self, x: &IntVec) -> bool {
        x.dim() == self.dim() && self.facets.iter().all(|h| h.contains_int(x))
    }

    /// Indices of violated facets, in facet order.
    pub fn violated_facets(&self, x: &IntVec) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| !self.facets[i].contains_int(x)).collect()
    }

    /// The face `Δ(v)`. `v = 0` exposes the whole polyhedron.
    pub fn face_of(&self, v: &IntVec) -> Result<Face> {
        self.check_functional(v)?;
        let n = self.dim();
        if v.is_zero() {
            return Ok(Face {
                normal: v.clone(),
                ell: BigRational::zero(),
                dim: n,
                points_on_face: self.support_points.clone(),
                vertex_set: self.vertices.clone(),
                compact: false,
                tight_facets: Vec::new(),
                halfspaces: self.facets.clone(),
            });
        }
        let ell_int = self.support_points.iter().map(|p| p.dot(v)).min().expect("nonempty");
        let points_on_face: Vec<IntVec> =
            self.support_points.iter().filter(|p| p.dot(v) == ell_int).cloned().collect();
        let vertex_set: Vec<IntVec> =
            self.vertices.iter().filter(|p| p.dot(v) == ell_int).cloned().collect();
        let rays_on_face: Vec<&IntVec> =
            self.recession.rays().iter().filter(|r| r.dot(v).is_zero()).collect();
        let tight_facets: Vec<usize> = (0..self.facets.len())
            .filter(|&i| {
                let h = &self.facets[i];
                vertex_set.iter().all(|p| h.is_tight(p))
                    && rays_on_face.iter().all(|r| h.normal.dot(r).is_zero())
            })
            .collect();
        let normals: Vec<IntVec> =
            tight_facets.iter().map(|&i| self.facets[i].normal.clone()).collect();
        let dim = n - rank_of(&normals, n);
        Ok(Face {
            normal: v.clone(),
            ell: BigRational::from_integer(ell_int),
            dim,
            points_on_face,
            vertex_set,
            compact: self.recession.dual_interior_contains(v),
            tight_facets,
            halfspaces: self.facets.clone(),
        })
    }

    fn facet_sum(&self, set: &[usize]) -> IntVec {
        let mut s = IntVec::zero(self.dim());
        for &i in set {
            s = &s + &self.facets[i].normal;
        }
        if s.is_zero() {
            s
        } else {
            primitive_vector(&s).expect("nonzero")
        }
    }

    /// Face whose relative interior normal is the sum of the given facet normals.
    fn face_of_facet_set(&self, set: &[usize]) -> Face {
        self.face_of(&self.facet_sum(set)).expect("sums of facet normals lie in the dual cone")
    }

    /// Bounded faces, one entry per face (vertices, compact edges, ...),
    /// sorted by dimension and then by vertex set.
    ///
    /// A compact face is the convex hull of its vertices, so its facet set is
    /// the intersection of its vertices' facet sets; we close the family of
    /// vertex facet sets under intersection.
    pub fn compact_faces(&self) -> Vec<Face> {
        let vertex_sets: Vec<BTreeSet<usize>> = self
            .vertices
            .iter()
            .map(|p| (0..self.facets.len()).filter(|&i| self.facets[i].is_tight(p)).collect())
            .collect();
        let mut family: BTreeSet<BTreeSet<usize>> = vertex_sets.iter().cloned().collect();
        loop {
            let current: Vec<BTreeSet<usize>> = family.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &vertex_sets {
                    let c: BTreeSet<usize> = a.intersection(b).copied().collect();
                    if !c.is_empty() && family.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<Face> = Vec::new();
        for set in family {
            let set: Vec<usize> = set.into_iter().collect();
            let face = self.face_of_facet_set(&set);
            if face.compact && face.tight_facets == set && !out.iter().any(|f| f.same_face(&face)) {
                out.push(face);
            }
        }
        out.sort_by(|a, b| (a.dim, &a.vertex_set).cmp(&(b.dim, &b.vertex_set)));
        out
    }

    /// Every nonempty face, including the polyhedron itself, found by
    /// breadth-first descent from the whole polyhedron through facet
    /// intersections.
    pub fn all_faces(&self) -> Vec<Face> {
        let whole = self.face_of(&IntVec::zero(self.dim())).expect("zero functional");
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(Vec::new());
        queue.push_back(whole);
        while let Some(face) = queue.pop_front() {
            for j in 0..self.facets.len() {
                if face.tight_facets.contains(&j) {
                    continue;
                }
                let mut set = face.tight_facets.clone();
                set.push(j);
                set.sort_unstable();
                let g = self.face_of_facet_set(&set);
                // empty intersection: the exposed face misses one of the facets
                if !set.iter().all(|i| g.tight_facets.contains(i)) {
                    continue;
                }
                if seen.insert(g.tight_facets.clone()) {
                    queue.push_back(g);
                }
            }
            out.push(face);
        }
        out.sort_by(|a, b| (a.dim, &a.vertex_set).cmp(&(b.dim, &b.vertex_set)));
        out
    }

    /// Closure of the class of normals exposing `face`: the cone spanned by
    /// the normals of the facets containing it.
    pub fn normal_cone(&self, face: &Face) -> Result<Cone> {
        let recomputed = self.face_of(&face.normal).map_err(|_| Error::NotAFace)?;
        if !recomputed.same_face(face) {
            return Err(Error::NotAFace);
        }
        let normals: Vec<IntVec> =
            face.tight_facets.iter().map(|&i| self.facets[i].normal.clone()).collect();
        Cone::from_generators(&normals, self.dim())
    }
}
