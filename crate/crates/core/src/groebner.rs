//! Buchberger's algorithm over Q, normal forms, and torus-zero decisions.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice::RatVec;
use crate::poly::{Exponent, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// The first `k` variables (after permutation) form a block that is
    /// compared first; grevlex inside each block. Eliminates that block.
    Block(usize),
}

/// A monomial order, optionally on permuted variables: position `i` of the
/// order looks at variable `permutation[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub permutation: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, permutation: None }
    }

    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::GrevLex, permutation: None }
    }

    pub fn block(k: usize) -> Self {
        MonomialOrder { kind: OrderKind::Block(k), permutation: None }
    }

    fn at(&self, e: &[u32], i: usize) -> u32 {
        match &self.permutation {
            Some(p) => e[p[i]],
            None => e[i],
        }
    }

    fn grevlex_range(&self, a: &[u32], b: &[u32], lo: usize, hi: usize) -> Ordering {
        let da: u32 = (lo..hi).map(|i| self.at(a, i)).sum();
        let db: u32 = (lo..hi).map(|i| self.at(b, i)).sum();
        da.cmp(&db).then_with(|| {
            for i in (lo..hi).rev() {
                let (x, y) = (self.at(a, i), self.at(b, i));
                if x != y {
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        })
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let n = a.len();
        match self.kind {
            OrderKind::Lex => {
                for i in 0..n {
                    let (x, y) = (self.at(a, i), self.at(b, i));
                    if x != y {
                        return x.cmp(&y);
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => self.grevlex_range(a, b, 0, n),
            OrderKind::Block(k) => {
                let k = k.min(n);
                self.grevlex_range(a, b, 0, k).then_with(|| self.grevlex_range(a, b, k, n))
            }
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

/// Terms sorted by decreasing monomial order.
type Terms = Vec<(Exponent, BigRational)>;

fn to_terms(p: &Poly, order: &MonomialOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn from_terms(nvars: usize, t: Terms) -> Poly {
    Poly::from_terms(nvars, t)
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// `p - c * x^m * g`, all sorted by `order`.
fn sub_scaled(p: &Terms, c: &BigRational, m: &[u32], g: &Terms, order: &MonomialOrder) -> Terms {
    let shifted = g.iter().map(|(e, k)| {
        (e.iter().zip(m).map(|(a, b)| a + b).collect::<Exponent>(), k * c)
    });
    let mut out = Terms::with_capacity(p.len() + g.len());
    let mut pi = p.iter().cloned().peekable();
    let mut gi = shifted.peekable();
    loop {
        match (pi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(pi.next().unwrap()),
            (None, Some(_)) => {
                let (e, k) = gi.next().unwrap();
                out.push((e, -k));
            }
            (Some((ea, _)), Some((eb, _))) => match order.cmp(ea, eb) {
                Ordering::Greater => out.push(pi.next().unwrap()),
                Ordering::Less => {
                    let (e, k) = gi.next().unwrap();
                    out.push((e, -k));
                }
                Ordering::Equal => {
                    let (e, a) = pi.next().unwrap();
                    let (_, b) = gi.next().unwrap();
                    let s = a - b;
                    if !s.is_zero() {
                        out.push((e, s));
                    }
                }
            },
        }
    }
    out
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        let inv = lc.recip();
        for (_, c) in t.iter_mut() {
            *c = &*c * &inv;
        }
    }
}

/// Full reduction of `f` by the monic list `g`.
fn reduce(f: &Terms, g: &[Terms], order: &MonomialOrder) -> Terms {
    let mut p = f.clone();
    let mut rem = Terms::new();
    while !p.is_empty() {
        let (lead, lc) = p[0].clone();
        match g.iter().find(|gi| divides(&gi[0].0, &lead)) {
            Some(gi) => {
                let m: Exponent = lead.iter().zip(&gi[0].0).map(|(a, b)| a - b).collect();
                p = sub_scaled(&p, &lc, &m, gi, order);
            }
            None => {
                rem.push(p.remove(0));
            }
        }
    }
    rem
}

fn s_polynomial(a: &Terms, b: &Terms, order: &MonomialOrder) -> Terms {
    let l = lcm_exp(&a[0].0, &b[0].0);
    let ma: Exponent = l.iter().zip(&a[0].0).map(|(x, y)| x - y).collect();
    let mb: Exponent = l.iter().zip(&b[0].0).map(|(x, y)| x - y).collect();
    let zero = Terms::new();
    let sa = sub_scaled(&zero, &-BigRational::one(), &ma, a, order);
    sub_scaled(&sa, &BigRational::one(), &mb, b, order)
}

/// Reduced Gröbner basis: monic, auto-reduced, sorted by increasing leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    nvars: usize,
    polys: Vec<Poly>,
    terms: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn leading_monomial(&self, i: usize) -> &Exponent {
        &self.terms[i][0].0
    }

    /// Remainder of `f`; zero iff `f` lies in the ideal.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert_eq!(f.nvars(), self.nvars);
        from_terms(self.nvars, reduce(&to_terms(f, &self.order), &self.terms, &self.order))
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial of basis pairs reduces to zero.
    pub fn is_groebner(&self) -> bool {
        for i in 0..self.terms.len() {
            for j in i + 1..self.terms.len() {
                let s = s_polynomial(&self.terms[i], &self.terms[j], &self.order);
                if !reduce(&s, &self.terms, &self.order).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (zero generators
/// ignored; no generators gives the zero ideal).
pub fn buchberger(gens: &[Poly], order: &MonomialOrder) -> GroebnerBasis {
    let nvars = gens.first().map_or(0, Poly::nvars);
    let mut basis: Vec<Terms> = Vec::new();
    for p in gens {
        assert_eq!(p.nvars(), nvars, "generators over different variable sets");
        if p.is_zero() {
            continue;
        }
        let mut t = to_terms(p, order);
        make_monic(&mut t);
        basis.push(t);
    }
    if basis.iter().any(|t| t[0].0.iter().all(|&a| a == 0)) {
        return finish(nvars, order, vec![vec![(vec![0; nvars], BigRational::one())]]);
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }
    while let Some(&pair) = pending
        .iter()
        .min_by(|&&(a, b), &&(c, d)| {
            let l1 = lcm_exp(&basis[a][0].0, &basis[b][0].0);
            let l2 = lcm_exp(&basis[c][0].0, &basis[d][0].0);
            order.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
        })
    {
        pending.remove(&pair);
        let (i, j) = pair;
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        // coprime leading monomials
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm_exp(li, lj);
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k][0].0, &l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut r = reduce(&s, &basis, order);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        if r[0].0.iter().all(|&a| a == 0) {
            return finish(nvars, order, vec![r]);
        }
        let new = basis.len();
        basis.push(r);
        for k in 0..new {
            pending.insert((k, new));
        }
    }
    finish(nvars, order, basis)
}

fn finish(nvars: usize, order: &MonomialOrder, basis: Vec<Terms>) -> GroebnerBasis {
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Terms> = Vec::new();
    for (i, t) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, u)| {
            j != i && divides(&u[0].0, &t[0].0) && (u[0].0 != t[0].0 || j < i)
        });
        if !redundant {
            minimal.push(t.clone());
        }
    }
    // auto-reduction
    let mut reduced: Vec<Terms> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Terms> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, t)| t.clone()).collect();
        let head = vec![minimal[i][0].clone()];
        let tail: Terms = minimal[i][1..].to_vec();
        let mut r = head;
        r.extend(reduce(&tail, &others, order));
        make_monic(&mut r);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let polys = reduced.iter().map(|t| from_terms(nvars, t.clone())).collect();
    GroebnerBasis { order: order.clone(), nvars, polys, terms: reduced }
}

pub fn normal_form(f: &Poly, g: &GroebnerBasis) -> Poly {
    g.normal_form(f)
}

/// `1 ∈ <gens>`.
pub fn contains_one(gens: &[Poly]) -> bool {
    buchberger(gens, &MonomialOrder::grevlex()).is_unit_ideal()
}

/// Outcome of the torus-zero decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusZeros {
    /// no common zero in `(C*)^n`
    None,
    /// at least one common zero in `(C*)^n`
    Exists,
    /// every polynomial was identically zero, so every torus point is a zero
    Vacuous,
}

impl TorusZeros {
    pub fn exists(self) -> bool {
        !matches!(self, TorusZeros::None)
    }
}

/// Drops zero polynomials and divides each remaining one by its monomial
/// content; neither step changes the common zeros on the torus.
fn torus_reduce(polys: &[Poly]) -> Vec<Poly> {
    polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.div_monomial(&p.monomial_content()))
        .collect()
}

/// Decides whether `polys` have a common zero with all coordinates nonzero,
/// by adjoining `1 - w z_1 ... z_n` and testing whether 1 lies in the ideal.
pub fn torus_zero_status(polys: &[Poly]) -> TorusZeros {
    let reduced = torus_reduce(polys);
    if reduced.is_empty() {
        return TorusZeros::Vacuous;
    }
    if reduced.iter().any(Poly::is_constant) {
        return TorusZeros::None;
    }
    let n = reduced[0].nvars();
    let mut gens: Vec<Poly> = reduced.iter().map(|p| p.extend_vars(1)).collect();
    gens.push(rabinowitsch(n));
    if contains_one(&gens) {
        TorusZeros::None
    } else {
        TorusZeros::Exists
    }
}

/// `1 - w z_1 ... z_n` in `n + 1` variables, `w` last.
fn rabinowitsch(n: usize) -> Poly {
    Poly::one(n + 1).sub(&Poly::monomial(vec![1u32; n + 1], BigRational::one()))
}

pub fn has_common_torus_zero(polys: &[Poly]) -> bool {
    torus_zero_status(polys).exists()
}

fn small_rationals() -> Vec<BigRational> {
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    vec![r(1, 1), r(-1, 1), r(2, 1), r(-2, 1), r(1, 2), r(-1, 2), r(3, 1), r(-3, 1), r(1, 3), r(-1, 3)]
}

fn vanishes_on_torus_point(polys: &[Poly], x: &[BigRational]) -> bool {
    x.iter().all(|c| !c.is_zero()) && polys.iter().all(|p| p.eval(x).is_zero())
}

/// Best-effort rational witness in `(Q*)^n` for a common zero.
///
/// Tries a small grid first, then back-substitution through a lexicographic
/// basis of the saturated ideal using rational roots. Returns `None` when no
/// zero exists or none was found.
pub fn find_torus_zero(polys: &[Poly]) -> Option<RatVec> {
    let live: Vec<Poly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    let n = match (live.first(), polys.first()) {
        (Some(p), _) | (None, Some(p)) => p.nvars(),
        (None, None) => return None,
    };
    if live.is_empty() {
        return Some(RatVec::new(vec![BigRational::one(); n]));
    }
    if !has_common_torus_zero(&live) {
        return None;
    }
    let reduced = torus_reduce(&live);

    if n <= 4 {
        let cands = small_rationals();
        let mut idx = vec![0usize; n];
        loop {
            let x: Vec<BigRational> = idx.iter().map(|&i| cands[i].clone()).collect();
            if vanishes_on_torus_point(&reduced, &x) {
                return Some(RatVec::new(x));
            }
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < cands.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }

    // lex with w first eliminates w; basis elements free of w generate the saturation
    let mut gens: Vec<Poly> = reduced.iter().map(|p| p.extend_vars(1)).collect();
    gens.push(rabinowitsch(n));
    let mut perm: Vec<usize> = vec![n];
    perm.extend(0..n);
    let order = MonomialOrder { kind: OrderKind::Lex, permutation: Some(perm) };
    let gb = buchberger(&gens, &order);
    let elim: Vec<Poly> = gb.polys().iter().filter_map(|p| p.truncate_vars(n)).collect();
    let mut point: Vec<Option<BigRational>> = vec![None; n];
    let mut budget = 2000usize;
    if solve_back(&elim, n, &mut point, &mut budget) {
        let x: Vec<BigRational> = point.into_iter().map(|c| c.expect("assigned")).collect();
        if vanishes_on_torus_point(&reduced, &x) {
            return Some(RatVec::new(x));
        }
    }
    None
}

/// Assigns variables `level-1, ..., 0` in turn (lex order: the last variable
/// is eliminated least).
fn solve_back(
    elim: &[Poly],
    level: usize,
    point: &mut Vec<Option<BigRational>>,
    budget: &mut usize,
) -> bool {
    if level == 0 {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let var = level - 1;
    // polynomials in variables var..n that involve var
    let mut univariate: Option<Vec<BigRational>> = None;
    for p in elim {
        if p.terms().any(|(e, _)| e[..var].iter().any(|&a| a > 0)) {
            continue;
        }
        let u = specialize(p, var, point);
        if u.iter().all(Zero::is_zero) {
            continue;
        }
        univariate = Some(match univariate {
            None => u,
            Some(g) => upoly_gcd(&g, &u),
        });
    }
    let candidates = match univariate {
        None => small_rationals(),
        Some(g) if g.len() <= 1 => return false,
        Some(g) => rational_roots(&g).into_iter().filter(|r| !r.is_zero()).collect(),
    };
    for c in candidates {
        point[var] = Some(c);
        if solve_back(elim, var, point, budget) {
            return true;
        }
    }
    point[var] = None;
    false
}

/// Substitutes the assigned variables above `var`; returns coefficients in
/// `var`, lowest degree first.
fn specialize(p: &Poly, var: usize, point: &[Option<BigRational>]) -> Vec<BigRational> {
    let mut coeffs: Vec<BigRational> = vec![BigRational::zero(); p.degree_in(var) as usize + 1];
    for (e, c) in p.terms() {
        let mut v = c.clone();
        for (i, &a) in e.iter().enumerate().skip(var + 1) {
            if a > 0 {
                let x = point[i].as_ref().expect("higher variables assigned");
                v *= crate::poly::pow_rat(x, a);
            }
        }
        coeffs[e[var] as usize] += v;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

fn upoly_trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn upoly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = upoly_trim(a.to_vec());
    let b = upoly_trim(b.to_vec());
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let q = r.last().unwrap() / &lb;
        for (i, bc) in b.iter().enumerate() {
            let t = bc * &q;
            r[i + shift] -= t;
        }
        r = upoly_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn upoly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = upoly_trim(a.to_vec());
    let mut y = upoly_trim(b.to_vec());
    while !y.is_empty() {
        let r = upoly_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &l;
        }
    }
    x
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational root theorem (the zero root included if
/// present). Gives up silently on huge coefficients.
pub(crate) fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let c = upoly_trim(coeffs.to_vec());
    if c.len() <= 1 {
        return Vec::new();
    }
    let lcm = c.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut ints: Vec<BigInt> =
        c.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let lead_zeros = ints.iter().take_while(|a| a.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(BigRational::zero());
        ints.drain(..lead_zeros);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let mut seen = BTreeSet::new();
    for p in &ps {
        for q in &qs {
            for s in [1i64, -1] {
                let r = BigRational::new(p * BigInt::from(s), q.clone());
                if seen.insert(r.clone()) {
                    let val = ints
                        .iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, a| acc * &r + BigRational::from_integer(a.clone()));
                    if val.is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}
