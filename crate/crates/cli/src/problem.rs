use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::Deserialize;
use toric_closure::closure::{build_ideal, IdealData};
use toric_closure::lattice::IntVec;
use toric_closure::semigroup::{validate_semigroup, GermPoly, Semigroup};
use toric_closure::whitney::{jacobian_ideal, FamilySpec};

/// The on-disk problem description.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub semigroup: Vec<Vec<i64>>,
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    #[serde(default)]
    pub ideal: Option<Vec<String>>,
    #[serde(default)]
    pub whitney: Option<WhitneyBlock>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhitneyBlock {
    pub parameters: Vec<String>,
    #[serde(rename = "F", alias = "f")]
    pub f: String,
}

/// A validation or parse failure; the CLI maps these to exit code 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(context: &str, e: impl fmt::Display) -> InputError {
    InputError(format!("{context}: {e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealSource {
    /// the `ideal` field of the file
    Explicit,
    /// `<x_i dF/dx_j>` from the whitney block
    Jacobian,
}

impl IdealSource {
    pub fn as_str(self) -> &'static str {
        match self {
            IdealSource::Explicit => "ideal",
            IdealSource::Jacobian => "jacobian",
        }
    }
}

/// A validated problem: semigroup, names, and optionally an ideal and a family.
#[derive(Clone, Debug)]
pub struct Problem {
    pub semigroup: Semigroup,
    pub variables: Vec<String>,
    pub ideal: Option<(IdealSource, IdealData)>,
    pub family: Option<FamilySpec>,
}

impl Problem {
    pub fn from_json(text: &str) -> Result<Problem, InputError> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| input_err("invalid problem file", e))?;
        Problem::from_file(&file)
    }

    pub fn load(path: &Path) -> Result<Problem, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_err(&format!("cannot read {}", path.display()), e))?;
        Problem::from_json(&text)
    }

    pub fn from_file(file: &ProblemFile) -> Result<Problem, InputError> {
        let gens: Vec<IntVec> = file.semigroup.iter().map(|g| IntVec::from_i64s(g)).collect();
        let semigroup = validate_semigroup(&gens).map_err(|e| input_err("invalid semigroup", e))?;
        let variables = match &file.variables {
            Some(v) => v.clone(),
            None => semigroup.default_variables(),
        };
        if variables.len() != semigroup.num_generators() {
            return Err(InputError(format!(
                "invalid variables: {} names for {} semigroup generators",
                variables.len(),
                semigroup.num_generators()
            )));
        }
        let mut seen = BTreeSet::new();
        for v in &variables {
            if !is_identifier(v) {
                return Err(InputError(format!("invalid variables: `{v}` is not an identifier")));
            }
            if !seen.insert(v.as_str()) {
                return Err(InputError(format!("invalid variables: `{v}` declared twice")));
            }
        }

        let family = match &file.whitney {
            Some(w) => Some(
                FamilySpec::new(semigroup.clone(), variables.clone(), w.parameters.clone(), &w.f)
                    .map_err(|e| input_err("invalid whitney block", e))?,
            ),
            None => None,
        };

        let ideal = match (&file.ideal, &family) {
            (Some(polys), _) if !polys.is_empty() => {
                let gens = polys
                    .iter()
                    .map(|p| GermPoly::parse(p, &variables).map_err(|e| input_err(&format!("ideal generator `{p}`"), e)))
                    .collect::<Result<Vec<_>, _>>()?;
                let data = build_ideal(&semigroup, &gens).map_err(|e| input_err("invalid ideal", e))?;
                Some((IdealSource::Explicit, data))
            }
            (Some(_), None) => return Err(InputError("invalid ideal: no generators".into())),
            (_, Some(spec)) => {
                let data = jacobian_ideal(spec).map_err(|e| input_err("invalid whitney block", e))?;
                Some((IdealSource::Jacobian, data))
            }
            (None, None) => None,
        };

        Ok(Problem { semigroup, variables, ideal, family })
    }

    pub fn require_ideal(&self) -> Result<(IdealSource, &IdealData), InputError> {
        self.ideal
            .as_ref()
            .map(|(s, d)| (*s, d))
            .ok_or_else(|| InputError("problem file has neither an ideal nor a whitney block".into()))
    }

    pub fn require_family(&self) -> Result<&FamilySpec, InputError> {
        self.family.as_ref().ok_or_else(|| InputError("problem file has no whitney block".into()))
    }

    /// Exponent vector of a monomial typed over the declared variables.
    pub fn parse_monomial(&self, text: &str) -> Result<Vec<u32>, InputError> {
        let g = GermPoly::parse(text, &self.variables).map_err(|e| input_err("invalid monomial", e))?;
        let mut terms = g.poly().terms();
        match (terms.next(), terms.next()) {
            (Some((e, _)), None) => Ok(e.clone()),
            _ => Err(InputError(format!("invalid monomial: `{text}` is not a single term"))),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
