//! The affine semigroup `S`, germs on the toric variety `X(S)` and their
//! supports, the toric ideal, and face polynomials.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, MonomialOrder, OrderKind};
use crate::lattice::{kernel_lattice_basis, lattice_index, rank_of, IntMat, IntVec, RatVec};
use crate::poly::{parse_poly, pow_rat, Exponent, Poly};
use crate::polyhedra::{dual_cone, Cone, Face};

/// A finitely generated semigroup `S ⊂ Z^n_+` whose generators span `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    n: usize,
    generators: Vec<IntVec>,
    cone: Cone,
    dual: Cone,
}

pub fn validate_semigroup(gens: &[IntVec]) -> Result<Semigroup> {
    let first = gens.first().ok_or(Error::Empty("semigroup generators"))?;
    let n = first.dim();
    for g in gens {
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
        }
        if !g.is_nonnegative() {
            return Err(Error::NegativeGenerator);
        }
        if g.is_zero() {
            return Err(Error::ZeroGenerator);
        }
    }
    if n == 0 || rank_of(gens, n) < n {
        return Err(Error::NotFullDimensional);
    }
    let index = lattice_index(&IntMat::from_rows(gens, n)?).ok_or(Error::NotFullDimensional)?;
    if !index.is_one() {
        return Err(Error::LatticeNotSaturated { index: index.to_string() });
    }
    let cone = Cone::from_generators(gens, n)?;
    if !cone.is_pointed() {
        return Err(Error::NotPointed);
    }
    let dual = dual_cone(&cone)?;
    Ok(Semigroup { n, generators: gens.to_vec(), cone, dual })
}

impl Semigroup {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[IntVec] {
        &self.generators
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn dual(&self) -> &Cone {
        &self.dual
    }

    /// `k_1 b_1 + ... + k_r b_r`.
    pub fn image(&self, k: &[u32]) -> IntVec {
        let mut acc = IntVec::zero(self.n);
        for (kj, b) in k.iter().zip(&self.generators) {
            if *kj > 0 {
                acc = &acc + &b.scale(&BigInt::from(*kj));
            }
        }
        acc
    }

    /// Some `k` with `image(k) = p`, if `p ∈ S`.
    pub fn decompose(&self, p: &IntVec) -> Option<Vec<u32>> {
        if p.dim() != self.n || !p.is_nonnegative() || !self.cone.contains_int(p) {
            return None;
        }
        let mut k = vec![0u32; self.generators.len()];
        let mut dead: HashSet<(usize, IntVec)> = HashSet::new();
        if self.decompose_from(0, p.clone(), &mut k, &mut dead) {
            Some(k)
        } else {
            None
        }
    }

    fn decompose_from(
        &self,
        j: usize,
        rest: IntVec,
        k: &mut Vec<u32>,
        dead: &mut HashSet<(usize, IntVec)>,
    ) -> bool {
        if rest.is_zero() {
            return true;
        }
        if j == self.generators.len() || dead.contains(&(j, rest.clone())) {
            return false;
        }
        let b = &self.generators[j];
        let mut cur = rest.clone();
        let mut count = 0u32;
        loop {
            k[j] = count;
            if self.decompose_from(j + 1, cur.clone(), k, dead) {
                return true;
            }
            cur = &cur - b;
            if !cur.is_nonnegative() {
                break;
            }
            count += 1;
        }
        k[j] = 0;
        dead.insert((j, rest));
        false
    }

    pub fn contains(&self, p: &IntVec) -> bool {
        self.decompose(p).is_some()
    }

    /// Default names `x1..xr`.
    pub fn default_variables(&self) -> Vec<String> {
        crate::poly::numbered_names("x", self.generators.len())
    }
}

/// A polynomial representative of a germ on `X(S)`, in variables that map
/// positionally to the generators of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermPoly {
    variables: Vec<String>,
    poly: Poly,
}

impl GermPoly {
    pub fn new(variables: Vec<String>, poly: Poly) -> Result<GermPoly> {
        if poly.nvars() != variables.len() {
            return Err(Error::DimensionMismatch { expected: variables.len(), found: poly.nvars() });
        }
        Ok(GermPoly { variables, poly })
    }

    pub fn parse(text: &str, variables: &[String]) -> Result<GermPoly> {
        Ok(GermPoly { variables: variables.to_vec(), poly: parse_poly(text, variables)? })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn with_poly(&self, poly: Poly) -> GermPoly {
        GermPoly { variables: self.variables.clone(), poly }
    }
}

impl fmt::Display for GermPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.to_string_with(&self.variables))
    }
}

/// A germ together with its coefficients aggregated over S-points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportedGerm {
    germ: GermPoly,
    /// every S-point hit by a term; zero values mark cancelled points
    spoints: BTreeMap<IntVec, BigRational>,
    collision: bool,
}

impl SupportedGerm {
    pub fn germ(&self) -> &GermPoly {
        &self.germ
    }

    pub fn spoints(&self) -> &BTreeMap<IntVec, BigRational> {
        &self.spoints
    }

    /// `supp(g)`: S-points with nonzero aggregate, sorted.
    pub fn supp(&self) -> Vec<IntVec> {
        self.spoints.iter().filter(|(_, c)| !c.is_zero()).map(|(v, _)| v.clone()).collect()
    }

    pub fn coeff(&self, v: &IntVec) -> BigRational {
        self.spoints.get(v).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn cancelled(&self) -> Vec<IntVec> {
        self.spoints.iter().filter(|(_, c)| c.is_zero()).map(|(v, _)| v.clone()).collect()
    }

    /// Two distinct exponents of the germ map to the same S-point.
    pub fn has_collision(&self) -> bool {
        self.collision
    }

    /// Vanishes identically on `X(S)`.
    pub fn is_zero_on_variety(&self) -> bool {
        self.spoints.values().all(Zero::is_zero)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.spoints.iter().all(|(v, c)| !v.is_zero() || c.is_zero())
    }
}

pub fn support(g: &GermPoly, s: &Semigroup) -> Result<SupportedGerm> {
    if g.poly.nvars() != s.num_generators() {
        return Err(Error::VariableCount { vars: g.poly.nvars(), gens: s.num_generators() });
    }
    let mut spoints: BTreeMap<IntVec, BigRational> = BTreeMap::new();
    let mut hits: BTreeMap<IntVec, usize> = BTreeMap::new();
    for (e, c) in g.poly.terms() {
        let v = s.image(e);
        *spoints.entry(v.clone()).or_insert_with(BigRational::zero) += c;
        *hits.entry(v).or_default() += 1;
    }
    let collision = hits.values().any(|&h| h > 1);
    Ok(SupportedGerm { germ: g.clone(), spoints, collision })
}

/// Keeps the terms whose S-point lies on `face`; cancelled points on the face
/// are kept (still outside `supp`).
pub fn restrict(g: &SupportedGerm, face: &Face, s: &Semigroup) -> SupportedGerm {
    let spoints: BTreeMap<IntVec, BigRational> = g
        .spoints
        .iter()
        .filter(|(v, _)| face.contains_int(v))
        .map(|(v, c)| (v.clone(), c.clone()))
        .collect();
    let nv = g.germ.poly.nvars();
    let poly = Poly::from_terms(
        nv,
        g.germ
            .poly
            .terms()
            .filter(|(e, _)| spoints.contains_key(&s.image(e)))
            .map(|(e, c)| (e.clone(), c.clone())),
    );
    let mut hits: BTreeMap<IntVec, usize> = BTreeMap::new();
    for (e, _) in poly.terms() {
        *hits.entry(s.image(e)).or_default() += 1;
    }
    SupportedGerm {
        germ: g.germ.with_poly(poly),
        spoints,
        collision: hits.values().any(|&h| h > 1),
    }
}

/// `L(g) = Σ a_v z^v` in variables `z_1..z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoly {
    poly: Poly,
}

impl FacePoly {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn variables(&self) -> Vec<String> {
        crate::poly::numbered_names("z", self.poly.nvars())
    }
}

impl fmt::Display for FacePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.to_string_with(&self.variables()))
    }
}

pub(crate) fn to_exponent(v: &IntVec) -> Result<Exponent> {
    v.entries().iter().map(|a| a.to_u32().ok_or(Error::ExponentOverflow)).collect()
}

/// Applies `L` to the whole germ (all S-points of `supp(g)`).
pub fn lift_to_torus(g: &SupportedGerm, n: usize) -> Result<FacePoly> {
    if !g.vanishes_at_origin() {
        return Err(Error::NonVanishingAtOrigin);
    }
    let mut terms = Vec::new();
    for (v, c) in &g.spoints {
        if !c.is_zero() {
            terms.push((to_exponent(v)?, c.clone()));
        }
    }
    Ok(FacePoly { poly: Poly::from_terms(n, terms) })
}

/// `L(g_Δ)`.
pub fn face_polynomial(g: &SupportedGerm, face: &Face, s: &Semigroup) -> Result<FacePoly> {
    if !g.vanishes_at_origin() {
        return Err(Error::NonVanishingAtOrigin);
    }
    lift_to_torus(&restrict(g, face, s), s.dim())
}

/// Evaluates `g` at the torus point of `X(S)` with coordinates `z^{b_j}`.
pub fn eval_on_torus(g: &SupportedGerm, z: &RatVec) -> BigRational {
    g.spoints
        .iter()
        .fold(BigRational::zero(), |acc, (v, c)| acc + c * monomial_value(z, v))
}

/// `z^v` for `v ≥ 0`.
pub(crate) fn monomial_value(z: &RatVec, v: &IntVec) -> BigRational {
    z.entries().iter().zip(v.entries()).fold(BigRational::one(), |acc, (zi, vi)| {
        let k = vi.to_u32().expect("small nonnegative exponent");
        debug_assert!(!vi.is_negative());
        acc * pow_rat(zi, k)
    })
}

/// Binomial generators of `I_S = <x^{a+} - x^{a-} : a ∈ ker>`, in the
/// variables of `s`'s generators.
///
/// The lattice-basis ideal is saturated by `x_1 ... x_r` using one extra
/// variable `t` and `1 - t x_1 ... x_r`, then `t` is eliminated with a block
/// order. The result is the reduced basis of `I_S` in grevlex.
pub fn toric_ideal(s: &Semigroup) -> Vec<Poly> {
    let r = s.num_generators();
    let b = IntMat::from_rows(&s.generators, s.n).expect("validated").transpose();
    let kernel = kernel_lattice_basis(&b);
    if kernel.is_empty() {
        return Vec::new();
    }
    // variables: t, x_1..x_r
    let binomial = |a: &IntVec| {
        let mut plus = vec![0u32; r + 1];
        let mut minus = vec![0u32; r + 1];
        for (j, aj) in a.entries().iter().enumerate() {
            let k = aj.abs().to_u32().expect("kernel entries fit in u32");
            if aj.is_positive() {
                plus[j + 1] = k;
            } else {
                minus[j + 1] = k;
            }
        }
        Poly::monomial(plus, BigRational::one()).sub(&Poly::monomial(minus, BigRational::one()))
    };
    let mut gens: Vec<Poly> = kernel.iter().map(binomial).collect();
    gens.push(Poly::one(r + 1).sub(&Poly::monomial(vec![1u32; r + 1], BigRational::one())));
    let elim = buchberger(&gens, &MonomialOrder { kind: OrderKind::Block(1), permutation: None });
    let x_only: Vec<Poly> = elim
        .polys()
        .iter()
        .filter(|p| p.degree_in(0) == 0)
        .map(drop_first_var)
        .collect();
    buchberger(&x_only, &MonomialOrder::grevlex()).polys().to_vec()
}

fn drop_first_var(p: &Poly) -> Poly {
    Poly::from_terms(p.nvars() - 1, p.terms().map(|(e, c)| (e[1..].to_vec(), c.clone())))
}
