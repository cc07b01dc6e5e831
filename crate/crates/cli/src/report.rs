//! JSON renderings of the library's results.
//!
//! Keys come out sorted (serde_json's default map is ordered), rationals are
//! strings, and integers are numbers only while they fit in 53 bits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use toric_closure::closure::{
    ClosureReport, CurveWitness, FaceCheck, IcircReport, IdealData, MembershipResult, NonDegReport,
    Valuation, WitnessSource,
};
use toric_closure::groebner::TorusZeros;
use toric_closure::lattice::{IntVec, RatVec};
use toric_closure::polyhedra::{Face, NewtonPolyhedron};
use toric_closure::poly::{pow_rat, Poly};
use toric_closure::semigroup::{face_polynomial, GermPoly, Semigroup, SupportedGerm};
use toric_closure::whitney::{ParameterCheck, Stage, Verdict, WhitneyReport};

const SAFE_INTEGER: i64 = (1 << 53) - 1;

pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(k) if k.abs() <= SAFE_INTEGER => Value::from(k),
        _ => Value::String(n.to_string()),
    }
}

pub fn rat(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn ivec(v: &IntVec) -> Value {
    Value::Array(v.entries().iter().map(int).collect())
}

pub fn ivecs(vs: &[IntVec]) -> Value {
    Value::Array(vs.iter().map(ivec).collect())
}

pub fn rvec(v: &RatVec) -> Value {
    Value::Array(v.entries().iter().map(rat).collect())
}

fn exponent(e: &[u32]) -> Value {
    Value::Array(e.iter().map(|&k| Value::from(k)).collect())
}

fn valuation(v: &Valuation) -> Value {
    match v {
        Valuation::Finite(k) => int(k),
        Valuation::Infinity => Value::String("inf".into()),
    }
}

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

pub fn polys_with(polys: &[Poly], names: &[String]) -> Value {
    Value::Array(polys.iter().map(|p| Value::String(p.to_string_with(names))).collect())
}

/// Binomials are printed with a positive first term; the sign is immaterial.
pub fn toric_ideal(s: &Semigroup, variables: &[String], gens: &[Poly]) -> Value {
    let gens: Vec<Poly> = gens
        .iter()
        .map(|g| match g.sorted_terms().first() {
            Some((_, c)) if c.is_negative() => g.neg(),
            _ => g.clone(),
        })
        .collect();
    obj(vec![
        ("semigroup", ivecs(s.generators())),
        ("variables", json!(variables)),
        ("generators", polys_with(&gens, variables)),
    ])
}

fn supported_germ(g: &SupportedGerm) -> Value {
    let spoints: Vec<Value> = g
        .spoints()
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| obj(vec![("point", ivec(p)), ("coeff", rat(c))]))
        .collect();
    obj(vec![
        ("generator", Value::String(g.germ().to_string())),
        ("support", Value::Array(spoints)),
        ("cancelled", ivecs(&g.cancelled())),
        ("collision", Value::Bool(g.has_collision())),
    ])
}

fn face(f: &Face) -> Value {
    obj(vec![
        ("normal", ivec(&f.normal)),
        ("ell", rat(&f.ell)),
        ("dim", Value::from(f.dim)),
        ("vertices", ivecs(&f.vertex_set)),
        ("points_on_face", ivecs(&f.points_on_face)),
    ])
}

pub fn polyhedron(p: &NewtonPolyhedron) -> Value {
    let facets: Vec<Value> =
        p.facets().iter().map(|h| obj(vec![("normal", ivec(&h.normal)), ("offset", rat(&h.offset))])).collect();
    obj(vec![
        ("vertices", ivecs(p.vertices())),
        ("facets", Value::Array(facets)),
        ("recession_rays", ivecs(p.recession().rays())),
    ])
}

/// Supports, polyhedron, and compact faces with their face polynomials.
pub fn newton(ideal: &IdealData) -> Value {
    let s = ideal.semigroup();
    let faces: Vec<Value> = ideal
        .compact_faces()
        .iter()
        .map(|f| {
            let mut v = face(f);
            let polys: Vec<Value> = ideal
                .generators()
                .iter()
                .map(|g| {
                    let fp = face_polynomial(g, f, s).expect("generators vanish at the origin");
                    Value::String(fp.to_string())
                })
                .collect();
            v["face_polynomials"] = Value::Array(polys);
            v
        })
        .collect();
    obj(vec![
        ("generators", Value::Array(ideal.generators().iter().map(supported_germ).collect())),
        ("supp", ivecs(ideal.supp())),
        ("collision", Value::Bool(ideal.has_collision())),
        ("monomial_ideal", Value::Bool(ideal.is_monomial_ideal())),
        ("polyhedron", polyhedron(ideal.newton())),
        ("compact_faces", Value::Array(faces)),
    ])
}

fn torus_zeros(t: &TorusZeros) -> Value {
    Value::String(
        match t {
            TorusZeros::None => "none",
            TorusZeros::Exists => "exists",
            TorusZeros::Vacuous => "vacuous",
        }
        .into(),
    )
}

fn face_check(c: &FaceCheck) -> Value {
    obj(vec![
        ("face", face(&c.face)),
        ("face_polynomials", Value::Array(c.face_polys.iter().map(|p| Value::String(p.to_string())).collect())),
        ("torus_zeros", torus_zeros(&c.torus_zeros)),
        ("witness", c.witness.as_ref().map_or(Value::Null, rvec)),
    ])
}

pub fn nondeg(r: &NonDegReport) -> Value {
    let degenerate: Vec<Value> = r.degenerate_faces().map(|c| ivec(&c.face.normal)).collect();
    obj(vec![
        ("nondegenerate", Value::Bool(r.nondegenerate)),
        ("faces", Value::Array(r.per_face.iter().map(face_check).collect())),
        ("degenerate_face_normals", Value::Array(degenerate)),
    ])
}

/// The curve `t -> (base^{b_j} t^{<b_j, v>})_j`, component by component.
fn curve(s: &Semigroup, variables: &[String], w: &CurveWitness) -> Value {
    let mut parts = Vec::new();
    let mut text = Vec::new();
    for (b, name) in s.generators().iter().zip(variables) {
        let mut c = BigRational::one();
        for (z, e) in w.base.entries().iter().zip(b.entries()) {
            let k = e.to_u32().expect("generator entries are small");
            c *= pow_rat(z, k);
        }
        let order = b.dot(&w.v);
        text.push(monomial_in_t(&c, &order));
        parts.push(obj(vec![("variable", Value::String(name.clone())), ("coeff", rat(&c)), ("order", int(&order))]));
    }
    obj(vec![("components", Value::Array(parts)), ("text", Value::String(format!("({})", text.join(", "))))])
}

fn monomial_in_t(c: &BigRational, k: &BigInt) -> String {
    let power = if k.is_zero() {
        String::new()
    } else if k.is_one() {
        "t".to_string()
    } else {
        format!("t^{k}")
    };
    match (c.is_one(), power.is_empty()) {
        (true, true) => "1".into(),
        (true, false) => power,
        (false, true) => c.to_string(),
        (false, false) if (-c).is_one() => format!("-{power}"),
        (false, false) => format!("{c}*{power}"),
    }
}

pub fn witness(ideal: &IdealData, variables: &[String], w: &CurveWitness, verified: bool) -> Value {
    let source = match &w.source {
        WitnessSource::FacetViolation { facet } => obj(vec![
            ("kind", Value::String("facet_violation".into())),
            ("facet", Value::from(*facet)),
            ("normal", ivec(&ideal.newton().facets()[*facet].normal)),
        ]),
        WitnessSource::DegenerateFace { face_vertices } => obj(vec![
            ("kind", Value::String("degenerate_face".into())),
            ("face_vertices", ivecs(face_vertices)),
        ]),
    };
    obj(vec![
        ("v", ivec(&w.v)),
        ("base", rvec(&w.base)),
        ("point", ivec(&w.point)),
        ("curve", curve(ideal.semigroup(), variables, w)),
        ("target_order", int(&w.target_order)),
        ("generator_orders", Value::Array(w.generator_orders.iter().map(valuation).collect())),
        ("min_generator_order", valuation(&w.min_generator_order)),
        ("source", source),
        ("verified", Value::Bool(verified)),
    ])
}

pub fn membership(
    ideal: &IdealData,
    variables: &[String],
    monomial: &GermPoly,
    exponent_vec: &[u32],
    result: &MembershipResult,
    verified: bool,
) -> Value {
    let detail = match result {
        MembershipResult::In { justification } => obj(vec![("justification", Value::String(justification.clone()))]),
        MembershipResult::Out(w) => witness(ideal, variables, w, verified),
        MembershipResult::Unknown { reason } => obj(vec![("reason", Value::String(reason.clone()))]),
    };
    obj(vec![
        ("monomial", Value::String(monomial.to_string())),
        ("exponent", exponent(exponent_vec)),
        ("point", ivec(&ideal.semigroup().image(exponent_vec))),
        ("result", Value::String(result.label().into())),
        ("detail", detail),
    ])
}

/// The box `[0, upper_i]` per coordinate.
fn search_box(upper: &[BigInt]) -> Value {
    obj(vec![
        ("lower", Value::Array(upper.iter().map(|_| Value::from(0)).collect())),
        ("upper", Value::Array(upper.iter().map(int).collect())),
    ])
}

pub fn icirc(r: &IcircReport, variables: &[String]) -> Value {
    let gens: Vec<Value> = r
        .generators
        .iter()
        .map(|g| {
            let m = Poly::monomial(g.exponent.clone(), BigRational::one());
            obj(vec![
                ("exponent", exponent(&g.exponent)),
                ("point", ivec(&g.point)),
                ("monomial", Value::String(m.to_string_with(variables))),
            ])
        })
        .collect();
    obj(vec![
        ("search_box", search_box(&r.search_box)),
        ("generators", Value::Array(gens)),
    ])
}

pub fn closure(ideal: &IdealData, variables: &[String], r: &ClosureReport) -> Value {
    let excluded: Vec<Value> = r
        .excluded
        .iter()
        .map(|e| {
            obj(vec![
                ("point", ivec(&e.point)),
                ("exponent", exponent(&e.exponent)),
                ("witness", witness(ideal, variables, &e.witness, true)),
            ])
        })
        .collect();
    obj(vec![
        ("nondegenerate", Value::Bool(r.nondegenerate)),
        ("equality", Value::Bool(r.equality)),
        ("upper_bound", polyhedron(&r.polyhedron)),
        ("excluded", Value::Array(excluded)),
        ("search_box", search_box(&r.search_box)),
    ])
}

fn stage_name(s: Stage) -> &'static str {
    match s {
        Stage::DefinesVariety => "defines_x",
        Stage::JacobianIdeal => "jacobian_ideal",
        Stage::NonDegeneracy => "nondegeneracy",
        Stage::ParameterDerivatives => "parameter_derivatives",
    }
}

pub fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::Certified => obj(vec![("status", Value::String("Certified".into()))]),
        Verdict::NotCertified { stage, reason } => obj(vec![
            ("status", Value::String("NotCertified".into())),
            ("stage", Value::String(stage.to_string())),
            ("stage_name", Value::String(stage_name(*stage).into())),
            ("reason", Value::String(reason.clone())),
        ]),
    }
}

fn parameter_check(c: &ParameterCheck) -> Value {
    let points: Vec<Value> = c
        .points
        .iter()
        .map(|(p, ok)| obj(vec![("point", ivec(p)), ("in_newton_polyhedron", Value::Bool(*ok))]))
        .collect();
    obj(vec![
        ("parameter", Value::String(c.parameter.clone())),
        ("derivative", Value::String(c.derivative.to_string())),
        ("points", Value::Array(points)),
    ])
}

pub fn whitney(r: &WhitneyReport) -> Value {
    obj(vec![
        ("defines_x", Value::Bool(r.defines_x)),
        ("residue", Value::String(r.residue.to_string())),
        ("jacobian_generators", Value::Array(r.jacobian_generators.iter().map(|g| Value::String(g.to_string())).collect())),
        ("jacobian_ideal", r.jacobian_ideal.as_ref().map_or(Value::Null, newton)),
        ("jacobian_error", r.jacobian_error.as_ref().map_or(Value::Null, |e| Value::String(e.to_string()))),
        ("nondeg", r.nondeg.as_ref().map_or(Value::Null, nondeg)),
        ("partials_in_closure", Value::Array(r.partials_in_closure.iter().map(parameter_check).collect())),
        ("verdict", verdict(&r.verdict)),
    ])
}
