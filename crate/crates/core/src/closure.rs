//! Non-degeneracy, monomial membership in the integral closure with curve
//! certificates, the monomial ideal `I°`, and the polyhedron `C(Ī)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{find_torus_zero, torus_zero_status, TorusZeros};
use crate::lattice::{primitive_vector, IntVec, RatVec};
use crate::polyhedra::{newton_polyhedron, Face, NewtonPolyhedron};
use crate::semigroup::{face_polynomial, monomial_value, support, FacePoly, GermPoly, Semigroup, SupportedGerm};

/// An ideal of `O_X(S)` given by generators, with its Newton polyhedron.
#[derive(Clone, Debug)]
pub struct IdealData {
    semigroup: Semigroup,
    generators: Vec<SupportedGerm>,
    newton: NewtonPolyhedron,
    compact_faces: Vec<Face>,
}

pub fn build_ideal(s: &Semigroup, gens: &[GermPoly]) -> Result<IdealData> {
    if gens.is_empty() {
        return Err(Error::Empty("ideal generators"));
    }
    let mut supported = Vec::with_capacity(gens.len());
    for g in gens {
        let sg = support(g, s)?;
        if !sg.vanishes_at_origin() {
            return Err(Error::NonVanishingAtOrigin);
        }
        supported.push(sg);
    }
    let mut points: Vec<IntVec> = supported.iter().flat_map(SupportedGerm::supp).collect();
    points.sort();
    points.dedup();
    if points.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let newton = newton_polyhedron(&points, s.cone())?;
    let compact_faces = newton.compact_faces();
    Ok(IdealData { semigroup: s.clone(), generators: supported, newton, compact_faces })
}

impl IdealData {
    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn generators(&self) -> &[SupportedGerm] {
        &self.generators
    }

    pub fn newton(&self) -> &NewtonPolyhedron {
        &self.newton
    }

    pub fn compact_faces(&self) -> &[Face] {
        &self.compact_faces
    }

    /// `supp(I)`, the union of the generators' supports.
    pub fn supp(&self) -> &[IntVec] {
        self.newton.support_points()
    }

    /// Some generator had two monomials landing on the same S-point.
    pub fn has_collision(&self) -> bool {
        self.generators.iter().any(SupportedGerm::has_collision)
    }

    /// Every generator is a single monomial on `X(S)` (or zero there).
    pub fn is_monomial_ideal(&self) -> bool {
        self.generators.iter().all(|g| g.supp().len() <= 1)
    }
}

#[derive(Clone, Debug)]
pub struct FaceCheck {
    pub face: Face,
    /// `L((g_i)_Δ)` for every generator, zero ones included
    pub face_polys: Vec<FacePoly>,
    pub torus_zeros: TorusZeros,
    pub witness: Option<RatVec>,
}

impl FaceCheck {
    pub fn torus_zero_exists(&self) -> bool {
        self.torus_zeros.exists()
    }
}

#[derive(Clone, Debug)]
pub struct NonDegReport {
    pub nondegenerate: bool,
    pub per_face: Vec<FaceCheck>,
}

impl NonDegReport {
    pub fn degenerate_faces(&self) -> impl Iterator<Item = &FaceCheck> {
        self.per_face.iter().filter(|c| c.torus_zero_exists())
    }
}

/// Checks every compact face for a common torus zero of the face system.
pub fn is_nondegenerate(ideal: &IdealData) -> NonDegReport {
    let s = &ideal.semigroup;
    let per_face: Vec<FaceCheck> = ideal
        .compact_faces
        .iter()
        .map(|face| {
            let face_polys: Vec<FacePoly> = ideal
                .generators
                .iter()
                .map(|g| face_polynomial(g, face, s).expect("generators vanish at the origin"))
                .collect();
            let polys: Vec<_> = face_polys.iter().map(|f| f.poly().clone()).collect();
            let torus_zeros = torus_zero_status(&polys);
            let witness = if torus_zeros.exists() { find_torus_zero(&polys) } else { None };
            FaceCheck { face: face.clone(), face_polys, torus_zeros, witness }
        })
        .collect();
    let nondegenerate = per_face.iter().all(|c| !c.torus_zero_exists());
    NonDegReport { nondegenerate, per_face }
}

/// A `t`-adic order: finite, or infinite for a germ vanishing on the curve.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(BigInt),
    Infinity,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(k) => write!(f, "{k}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Order in `t` of `g` along `t ↦ (base^{b_j} t^{<b_j, v>})_j`.
///
/// Terms are grouped by level `<v', v>`; the answer is the lowest level whose
/// aggregate `Σ a_{v'} base^{v'}` is nonzero.
pub fn order_along_curve(g: &SupportedGerm, v: &IntVec, base: &RatVec) -> Result<Valuation> {
    let n = v.dim();
    if base.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: base.dim() });
    }
    if base.has_zero_entry() {
        return Err(Error::ZeroBaseCoordinate);
    }
    let mut levels: BTreeMap<BigInt, BigRational> = BTreeMap::new();
    for (p, c) in g.spoints() {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
        if c.is_zero() {
            continue;
        }
        *levels.entry(p.dot(v)).or_insert_with(BigRational::zero) += c * monomial_value(base, p);
    }
    Ok(levels
        .into_iter()
        .find(|(_, c)| !c.is_zero())
        .map_or(Valuation::Infinity, |(k, _)| Valuation::Finite(k)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// `v` is the normal of a facet of `Γ₊(I)` that the point violates
    FacetViolation { facet: usize },
    /// `base` is a torus zero of the face system on a degenerate compact face
    DegenerateFace { face_vertices: Vec<IntVec> },
}

/// The curve `t ↦ (base^{b_j} t^{<b_j, v>})_j` together with the orders that
/// exclude a monomial from the integral closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveWitness {
    pub v: IntVec,
    pub base: RatVec,
    pub point: IntVec,
    pub target_order: BigInt,
    pub generator_orders: Vec<Valuation>,
    pub min_generator_order: Valuation,
    pub source: WitnessSource,
}

impl CurveWitness {
    /// Recomputes every order from scratch and checks the strict inequality.
    pub fn verify(&self, ideal: &IdealData, monomial: &SupportedGerm) -> bool {
        let Ok(target) = order_along_curve(monomial, &self.v, &self.base) else {
            return false;
        };
        let orders: Result<Vec<Valuation>> =
            ideal.generators.iter().map(|g| order_along_curve(g, &self.v, &self.base)).collect();
        let Ok(orders) = orders else {
            return false;
        };
        let min = orders.iter().min().cloned().unwrap_or(Valuation::Infinity);
        ideal.semigroup.dual().contains_int(&self.v)
            && target == Valuation::Finite(self.target_order.clone())
            && orders == self.generator_orders
            && min == self.min_generator_order
            && target < min
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipResult {
    In { justification: String },
    Out(CurveWitness),
    Unknown { reason: String },
}

impl MembershipResult {
    pub fn label(&self) -> &'static str {
        match self {
            MembershipResult::In { .. } => "In",
            MembershipResult::Out(_) => "Out",
            MembershipResult::Unknown { .. } => "Unknown",
        }
    }
}

fn monomial_germ(ideal: &IdealData, m: &[u32]) -> Result<SupportedGerm> {
    let r = ideal.semigroup.num_generators();
    if m.len() != r {
        return Err(Error::VariableCount { vars: m.len(), gens: r });
    }
    let vars = ideal.semigroup.default_variables();
    let g = GermPoly::new(vars, crate::poly::Poly::monomial(m.to_vec(), BigRational::one()))?;
    support(&g, &ideal.semigroup)
}

fn witness_for(
    ideal: &IdealData,
    d: &IntVec,
    v: &IntVec,
    base: &RatVec,
    source: WitnessSource,
) -> Option<CurveWitness> {
    let generator_orders: Vec<Valuation> = ideal
        .generators
        .iter()
        .map(|g| order_along_curve(g, v, base).expect("validated curve"))
        .collect();
    let min_generator_order = generator_orders.iter().min().cloned().unwrap_or(Valuation::Infinity);
    let target_order = d.dot(v);
    if Valuation::Finite(target_order.clone()) < min_generator_order {
        Some(CurveWitness {
            v: v.clone(),
            base: base.clone(),
            point: d.clone(),
            target_order,
            generator_orders,
            min_generator_order,
            source,
        })
    } else {
        None
    }
}

/// Decides `x^m ∈ Ī` where possible.
///
/// Outside `Γ₊(I)` a violated facet gives a curve through `(1,...,1)`. Inside
/// it, non-degeneracy gives `In`; for degenerate ideals we look for a curve
/// through a torus zero of a degenerate face system, else `Unknown`.
pub fn monomial_membership(m: &[u32], ideal: &IdealData) -> Result<MembershipResult> {
    let report = is_nondegenerate(ideal);
    monomial_membership_with(m, ideal, &report)
}

/// As [`monomial_membership`], reusing a computed non-degeneracy report.
pub fn monomial_membership_with(
    m: &[u32],
    ideal: &IdealData,
    report: &NonDegReport,
) -> Result<MembershipResult> {
    let germ = monomial_germ(ideal, m)?;
    let d = ideal.semigroup.image(m);
    let n = ideal.semigroup.dim();
    let ones = RatVec::new(vec![BigRational::one(); n]);

    if let Some(&facet) = ideal.newton.violated_facets(&d).first() {
        let v = ideal.newton.facets()[facet].normal.clone();
        let w = witness_for(ideal, &d, &v, &ones, WitnessSource::FacetViolation { facet })
            .expect("a violated facet always separates the orders");
        debug_assert!(w.verify(ideal, &germ));
        return Ok(MembershipResult::Out(w));
    }
    if report.nondegenerate {
        return Ok(MembershipResult::In {
            justification: "the ideal is non-degenerate and the point lies in its Newton polyhedron"
                .into(),
        });
    }
    for check in report.degenerate_faces() {
        let Some(base) = &check.witness else { continue };
        let face_vertices = check.face.vertex_set.clone();
        for v in candidate_normals(ideal, &check.face) {
            let source = WitnessSource::DegenerateFace { face_vertices: face_vertices.clone() };
            if let Some(w) = witness_for(ideal, &d, &v, base, source) {
                debug_assert!(w.verify(ideal, &germ));
                return Ok(MembershipResult::Out(w));
            }
        }
    }
    let found_any = report.degenerate_faces().any(|c| c.witness.is_some());
    Ok(MembershipResult::Unknown {
        reason: if found_any {
            "the ideal is degenerate and no tested curve separates this monomial".into()
        } else {
            "the ideal is degenerate and no rational torus zero was found on its degenerate faces"
                .into()
        },
    })
}

/// Normals in the relative interior of the face's normal cone: the exposing
/// normal first, then a few positive weightings of the tight facet normals.
fn candidate_normals(ideal: &IdealData, face: &Face) -> Vec<IntVec> {
    let normals: Vec<&IntVec> =
        face.tight_facets.iter().map(|&i| &ideal.newton.facets()[i].normal).collect();
    let mut out = vec![face.normal.clone()];
    if normals.len() > 1 {
        for heavy in 0..normals.len() {
            for weight in [2i64, 3] {
                let mut s = IntVec::zero(face.normal.dim());
                for (i, nv) in normals.iter().enumerate() {
                    let k = if i == heavy { weight } else { 1 };
                    s = &s + &nv.scale(&BigInt::from(k));
                }
                if let Ok(p) = primitive_vector(&s) {
                    if !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Membership of a general germ. Only the support condition is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GermMembership {
    /// `supp(h) ⊆ Γ₊(I)`: the necessary condition holds
    Possible,
    /// `I` is monomial and these support points lie outside `Γ₊(I)`
    NotIn { outside: Vec<IntVec> },
    /// `I` is not monomial, so points outside `Γ₊(I)` are not conclusive
    Inconclusive { outside: Vec<IntVec> },
}

pub fn germ_membership(h: &GermPoly, ideal: &IdealData) -> Result<GermMembership> {
    let sh = support(h, &ideal.semigroup)?;
    let outside: Vec<IntVec> =
        sh.supp().into_iter().filter(|p| !ideal.newton.contains_int(p)).collect();
    Ok(if outside.is_empty() {
        GermMembership::Possible
    } else if ideal.is_monomial_ideal() {
        GermMembership::NotIn { outside }
    } else {
        GermMembership::Inconclusive { outside }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcircPoint {
    pub exponent: Vec<u32>,
    pub point: IntVec,
}

/// Minimal generators of `I°` found inside `[0, upper_i]` per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcircReport {
    pub generators: Vec<IcircPoint>,
    pub search_box: Vec<BigInt>,
}

/// Default box: per coordinate, the largest vertex coordinate plus the
/// largest generator coordinate.
pub fn default_search_box(ideal: &IdealData) -> Vec<BigInt> {
    let n = ideal.semigroup.dim();
    (0..n)
        .map(|i| {
            let vmax = ideal.newton.vertices().iter().map(|p| p[i].clone()).max().unwrap_or_default();
            let bmax =
                ideal.semigroup.generators().iter().map(|b| b[i].clone()).max().unwrap_or_default();
            vmax + bmax
        })
        .collect()
}

/// Enumerates `S ∩ Γ₊(I)` in a box and keeps the points `p` with no
/// `p - b_j` in `S ∩ Γ₊(I)`, i.e. the minimal ones for `p ≥ q ⇔ p - q ∈ S`.
pub fn icirc_min_generators(ideal: &IdealData, bound: Option<u64>) -> IcircReport {
    let search_box = match bound {
        Some(b) => vec![BigInt::from(b); ideal.semigroup.dim()],
        None => default_search_box(ideal),
    };
    let mut members = SMembers::new(ideal);
    let mut generators = Vec::new();
    for p in box_points(&search_box) {
        let Some(k) = members.lookup(&p) else { continue };
        let minimal = ideal.semigroup.generators().iter().all(|b| {
            let q = &p - b;
            !q.is_nonnegative() || members.lookup(&q).is_none()
        });
        if minimal {
            generators.push(IcircPoint { exponent: k, point: p });
        }
    }
    generators.sort_by(|a, b| a.point.cmp(&b.point));
    IcircReport { generators, search_box }
}

/// Memoised membership in `S ∩ Γ₊(I)`.
struct SMembers<'a> {
    ideal: &'a IdealData,
    cache: HashMap<IntVec, Option<Vec<u32>>>,
}

impl<'a> SMembers<'a> {
    fn new(ideal: &'a IdealData) -> Self {
        SMembers { ideal, cache: HashMap::new() }
    }

    fn lookup(&mut self, p: &IntVec) -> Option<Vec<u32>> {
        if let Some(hit) = self.cache.get(p) {
            return hit.clone();
        }
        let r = if self.ideal.newton.contains_int(p) { self.ideal.semigroup.decompose(p) } else { None };
        self.cache.insert(p.clone(), r.clone());
        r
    }
}

/// Lattice points of `[0, upper_0] × ... × [0, upper_{n-1}]`, lexicographically.
pub fn box_points(upper: &[BigInt]) -> Vec<IntVec> {
    let ups: Vec<i64> = upper.iter().map(|u| u.to_i64().unwrap_or(i64::MAX).max(-1)).collect();
    if ups.iter().any(|&u| u < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; ups.len()];
    loop {
        out.push(IntVec::from_i64s(&cur));
        let mut k = ups.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < ups[k] {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExcludedPoint {
    pub point: IntVec,
    pub exponent: Vec<u32>,
    pub witness: CurveWitness,
}

/// What is known about `C(Ī)`, the polyhedron of monomials in `Ī`.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub nondegenerate: bool,
    /// `C(Ī) = Γ₊(I)` is proven; otherwise `Γ₊(I)` is only an upper bound
    pub equality: bool,
    pub polyhedron: NewtonPolyhedron,
    /// S-points on degenerate faces certified outside `Ī`
    pub excluded: Vec<ExcludedPoint>,
    pub search_box: Vec<BigInt>,
}

pub fn c_closure_report(ideal: &IdealData) -> ClosureReport {
    let report = is_nondegenerate(ideal);
    let search_box = default_search_box(ideal);
    let mut excluded = Vec::new();
    if !report.nondegenerate {
        let faces: Vec<&Face> = report.degenerate_faces().map(|c| &c.face).collect();
        for p in box_points(&search_box) {
            if !faces.iter().any(|f| f.contains_int(&p)) {
                continue;
            }
            let Some(k) = ideal.semigroup.decompose(&p) else { continue };
            if let Ok(MembershipResult::Out(w)) = monomial_membership_with(&k, ideal, &report) {
                excluded.push(ExcludedPoint { point: p, exponent: k, witness: w });
            }
        }
    }
    ClosureReport {
        nondegenerate: report.nondegenerate,
        equality: report.nondegenerate,
        polyhedron: ideal.newton.clone(),
        excluded,
        search_box,
    }
}
