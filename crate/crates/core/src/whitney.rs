//! Certifying Verdier's condition W for a hypersurface family `F(y, x) = 0`
//! cutting out `X(S)`, through the integral closure of `<x_i ∂F/∂x_j>`.

use std::fmt;

use crate::closure::{build_ideal, is_nondegenerate, IdealData, NonDegReport};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, MonomialOrder};
use crate::lattice::IntVec;
use crate::poly::Poly;
use crate::semigroup::{support, toric_ideal, GermPoly, Semigroup};

/// A family over the parameter space spanned by `parameters`; the remaining
/// variables are the fibre coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    semigroup: Semigroup,
    variables: Vec<String>,
    parameters: Vec<String>,
    f: GermPoly,
}

impl FamilySpec {
    pub fn new(
        semigroup: Semigroup,
        variables: Vec<String>,
        parameters: Vec<String>,
        f: &str,
    ) -> Result<FamilySpec> {
        if variables.len() != semigroup.num_generators() {
            return Err(Error::VariableCount {
                vars: variables.len(),
                gens: semigroup.num_generators(),
            });
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::InvalidFamily(format!("duplicate variable `{v}`")));
            }
        }
        if parameters.is_empty() {
            return Err(Error::InvalidFamily("no parameters given".into()));
        }
        for p in &parameters {
            if !variables.contains(p) {
                return Err(Error::UnknownVariable(p.clone()));
            }
        }
        if variables.iter().all(|v| parameters.contains(v)) {
            return Err(Error::InvalidFamily("parameters must be a proper subset of the variables".into()));
        }
        let f = GermPoly::parse(f, &variables)?;
        Ok(FamilySpec { semigroup, variables, parameters, f })
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn f(&self) -> &GermPoly {
        &self.f
    }

    /// The same family with another defining polynomial.
    pub fn with_f(&self, f: &str) -> Result<FamilySpec> {
        FamilySpec::new(self.semigroup.clone(), self.variables.clone(), self.parameters.clone(), f)
    }

    fn fibre_indices(&self) -> Vec<usize> {
        (0..self.variables.len()).filter(|&i| !self.parameters.contains(&self.variables[i])).collect()
    }
}

pub fn partial_derivative(f: &GermPoly, var: &str) -> Result<GermPoly> {
    let i = f
        .variables()
        .iter()
        .position(|v| v == var)
        .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    Ok(f.with_poly(f.poly().partial(i)))
}

/// `x_i ∂F/∂x_j` over the fibre variables, `j` outer and `i` inner, with
/// formally zero products left out.
pub fn jacobian_generators(spec: &FamilySpec) -> Result<Vec<GermPoly>> {
    let fibre = spec.fibre_indices();
    let nv = spec.variables.len();
    let mut out = Vec::new();
    for &j in &fibre {
        let d = spec.f.poly().partial(j);
        for &i in &fibre {
            let p = Poly::var(nv, i).mul(&d);
            if !p.is_zero() {
                out.push(spec.f.with_poly(p));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::DegenerateFamily);
    }
    Ok(out)
}

pub fn jacobian_ideal(spec: &FamilySpec) -> Result<IdealData> {
    build_ideal(&spec.semigroup, &jacobian_generators(spec)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// `F` vanishes on `X(S)`
    DefinesVariety,
    /// the ideal `<x_i ∂F/∂x_j>` could be formed
    JacobianIdeal,
    NonDegeneracy,
    /// every `∂F/∂y_l` has its support in the Newton polyhedron
    ParameterDerivatives,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::DefinesVariety => "a",
            Stage::JacobianIdeal => "b",
            Stage::NonDegeneracy => "c",
            Stage::ParameterDerivatives => "d",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    /// absence of a certificate, never a disproof
    NotCertified { stage: Stage, reason: String },
}

#[derive(Clone, Debug)]
pub struct ParameterCheck {
    pub parameter: String,
    pub derivative: GermPoly,
    /// support points of the derivative with membership in `Γ₊(I_F)`
    pub points: Vec<(IntVec, bool)>,
}

impl ParameterCheck {
    pub fn passes(&self) -> bool {
        self.points.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Clone, Debug)]
pub struct WhitneyReport {
    pub defines_x: bool,
    /// normal form of `F` modulo the toric ideal
    pub residue: GermPoly,
    pub jacobian_generators: Vec<GermPoly>,
    pub jacobian_ideal: Option<IdealData>,
    pub jacobian_error: Option<Error>,
    pub nondeg: Option<NonDegReport>,
    pub partials_in_closure: Vec<ParameterCheck>,
    pub verdict: Verdict,
}

impl WhitneyReport {
    /// Re-derives the verdict from the stored ideal and derivatives.
    pub fn recheck(&self) -> Verdict {
        let nondeg = self.jacobian_ideal.as_ref().map(is_nondegenerate);
        let partials: Vec<ParameterCheck> = match &self.jacobian_ideal {
            Some(ideal) => self
                .partials_in_closure
                .iter()
                .map(|c| check_parameter(ideal, &c.parameter, &c.derivative))
                .collect(),
            None => Vec::new(),
        };
        decide(
            self.residue.is_zero(),
            self.jacobian_error.as_ref(),
            nondeg.as_ref(),
            &partials,
        )
    }
}

fn check_parameter(ideal: &IdealData, parameter: &str, derivative: &GermPoly) -> ParameterCheck {
    let sg = support(derivative, ideal.semigroup()).expect("same variables as the family");
    let points = sg.supp().into_iter().map(|p| {
        let ok = ideal.newton().contains_int(&p);
        (p, ok)
    });
    ParameterCheck { parameter: parameter.to_string(), derivative: derivative.clone(), points: points.collect() }
}

fn decide(
    defines_x: bool,
    jacobian_error: Option<&Error>,
    nondeg: Option<&NonDegReport>,
    partials: &[ParameterCheck],
) -> Verdict {
    let fail = |stage, reason: String| Verdict::NotCertified { stage, reason };
    if !defines_x {
        return fail(Stage::DefinesVariety, "F does not vanish on X(S)".into());
    }
    if let Some(e) = jacobian_error {
        return fail(Stage::JacobianIdeal, e.to_string());
    }
    match nondeg {
        Some(r) if r.nondegenerate => {}
        Some(_) => return fail(Stage::NonDegeneracy, "the ideal x_i dF/dx_j is degenerate".into()),
        None => return fail(Stage::JacobianIdeal, "no ideal".into()),
    }
    for c in partials {
        if let Some((p, _)) = c.points.iter().find(|(_, ok)| !ok) {
            return fail(
                Stage::ParameterDerivatives,
                format!("dF/d{} has support point {p} outside the Newton polyhedron", c.parameter),
            );
        }
    }
    Verdict::Certified
}

/// Runs the four stages and reports the first one that fails.
pub fn verdier_check(spec: &FamilySpec) -> WhitneyReport {
    let s = &spec.semigroup;
    let residue = {
        let toric = toric_ideal(s);
        if toric.is_empty() {
            spec.f.poly().clone()
        } else {
            buchberger(&toric, &MonomialOrder::grevlex()).normal_form(spec.f.poly())
        }
    };
    let defines_x = residue.is_zero();

    let (jacobian_generators, built) = match jacobian_generators(spec) {
        Ok(gens) => {
            let built = build_ideal(s, &gens);
            (gens, built)
        }
        Err(e) => (Vec::new(), Err(e)),
    };
    let (jacobian_ideal, jacobian_error) = match built {
        Ok(i) => (Some(i), None),
        Err(e) => (None, Some(e)),
    };
    let nondeg = jacobian_ideal.as_ref().map(is_nondegenerate);
    let partials_in_closure: Vec<ParameterCheck> = match &jacobian_ideal {
        Some(ideal) => spec
            .parameters
            .iter()
            .map(|y| {
                let d = partial_derivative(&spec.f, y).expect("parameters are declared");
                check_parameter(ideal, y, &d)
            })
            .collect(),
        None => Vec::new(),
    };
    let verdict = decide(defines_x, jacobian_error.as_ref(), nondeg.as_ref(), &partials_in_closure);
    WhitneyReport {
        defines_x,
        residue: spec.f.with_poly(residue),
        jacobian_generators,
        jacobian_ideal,
        jacobian_error,
        nondeg,
        partials_in_closure,
        verdict,
    }
}
