use num_traits::{Signed, Zero};

use super::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::lattice::{orthogonal_complement, primitive_vector, rank_of, IntVec, RatVec};

/// Pointed rational polyhedral cone with both descriptions:
/// `cone(rays) = {x : <f, x> >= 0 for f in facet_normals, <e, x> = 0 for e in equations}`.
///
/// `equations` is empty exactly when the cone is full-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<IntVec>,
    facet_normals: Vec<IntVec>,
    equations: Vec<IntVec>,
}

impl Cone {
    /// Cone generated by `generators` (zero vectors are ignored). Fails with
    /// `NotPointed` when the cone contains a line.
    pub fn from_generators(generators: &[IntVec], ambient_dim: usize) -> Result<Cone> {
        for g in generators {
            if g.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.dim() });
            }
        }
        let gens: Vec<IntVec> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
        if gens.is_empty() {
            return Ok(Cone::zero(ambient_dim));
        }
        let k = rank_of(&gens, ambient_dim);
        let equations = orthogonal_complement(&gens, ambient_dim);
        let facet_normals = if k == ambient_dim {
            extreme_rays(&gens, ambient_dim)?
        } else {
            facets_in_span(&gens, k, ambient_dim)?
        };
        let mut rows = facet_normals.clone();
        for e in &equations {
            rows.push(e.clone());
            rows.push(-e);
        }
        let rays = extreme_rays(&rows, ambient_dim)?;
        Ok(Cone { ambient_dim, rays, facet_normals, equations })
    }

    /// The cone `{0}`.
    pub fn zero(ambient_dim: usize) -> Cone {
        Cone {
            ambient_dim,
            rays: Vec::new(),
            facet_normals: Vec::new(),
            equations: (0..ambient_dim).map(|i| IntVec::unit(ambient_dim, i)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays, primitive and sorted.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facet_normals
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Every cone built here is pointed; kept for callers that want to assert it.
    pub fn is_pointed(&self) -> bool {
        rank_of(&self.facet_normals_and_equations(), self.ambient_dim) == self.ambient_dim
    }

    fn facet_normals_and_equations(&self) -> Vec<IntVec> {
        let mut rows = self.facet_normals.clone();
        rows.extend(self.equations.iter().cloned());
        rows
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        self.facet_normals.iter().all(|f| !f.dot_rat(x).is_negative())
            && self.equations.iter().all(|e| e.dot_rat(x).is_zero())
    }

    pub fn contains_int(&self, x: &IntVec) -> bool {
        self.facet_normals.iter().all(|f| !f.dot(x).is_negative())
            && self.equations.iter().all(|e| e.dot(x).is_zero())
    }

    /// `u` is nonnegative on the whole cone.
    pub fn dual_contains(&self, u: &IntVec) -> bool {
        self.rays.iter().all(|r| !r.dot(u).is_negative())
    }

    /// `u` is strictly positive on every nonzero element of the cone.
    pub fn dual_interior_contains(&self, u: &IntVec) -> bool {
        self.rays.iter().all(|r| r.dot(u).is_positive())
    }

    /// Same ray set, ignoring order.
    pub fn same_rays(&self, other: &Cone) -> bool {
        self.rays == other.rays
    }
}

/// Facet normals of a lower-dimensional cone, taken inside the linear span of
/// its generators.
fn facets_in_span(gens: &[IntVec], k: usize, n: usize) -> Result<Vec<IntVec>> {
    let mut span_basis: Vec<IntVec> = Vec::new();
    for g in gens {
        span_basis.push(g.clone());
        if rank_of(&span_basis, n) < span_basis.len() {
            span_basis.pop();
        }
        if span_basis.len() == k {
            break;
        }
    }
    // u = sum y_j s_j; <g, u> = sum y_j <g, s_j>
    let rows: Vec<IntVec> = gens
        .iter()
        .map(|g| IntVec::new(span_basis.iter().map(|s| g.dot(s)).collect()))
        .collect();
    let ys = extreme_rays(&rows, k)?;
    ys.iter()
        .map(|y| {
            let mut u = IntVec::zero(n);
            for (coef, s) in y.entries().iter().zip(&span_basis) {
                u = &u + &s.scale(coef);
            }
            primitive_vector(&u)
        })
        .collect()
}

/// Dual cone of a full-dimensional pointed cone. The two descriptions swap roles.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    Ok(Cone {
        ambient_dim: c.ambient_dim,
        rays: c.facet_normals.clone(),
        facet_normals: c.rays.clone(),
        equations: Vec::new(),
    })
}
