//! Brute-force reference implementations used to cross-check the library.
//! Nothing here calls into the library's geometry or Gröbner code; inputs
//! and outputs use library types only as plain containers.

#![allow(dead_code)]

/// Convex hulls by exhaustive enumeration over small integers.
pub mod hull {
    /// Determinant by fraction-free elimination.
    pub fn det(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> = m.to_vec();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, k, &mut Vec::new(), &mut out);
        out
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    fn primitive(v: &[i128]) -> Vec<i128> {
        let g = v.iter().fold(0, |g, &x| gcd(g, x));
        v.iter().map(|x| x / g).collect()
    }

    /// Is `x` a nonnegative combination of `gens`? Carathéodory: it suffices
    /// to try every basis drawn from `gens` (which must span the space).
    pub fn cone_contains(gens: &[Vec<i128>], x: &[i128]) -> bool {
        let d = x.len();
        if x.iter().all(|&c| c == 0) {
            return true;
        }
        for s in subsets(gens.len(), d) {
            let cols: Vec<&Vec<i128>> = s.iter().map(|&i| &gens[i]).collect();
            let mat: Vec<Vec<i128>> = (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
            let dm = det(&mat);
            if dm == 0 {
                continue;
            }
            let feasible = (0..d).all(|i| {
                let mut mi = mat.clone();
                for r in 0..d {
                    mi[r][i] = x[r];
                }
                det(&mi) * dm.signum() >= 0
            });
            if feasible {
                return true;
            }
        }
        false
    }

    /// Homogenised generators `(p, 1)` and `(r, 0)`.
    pub fn homogenise(points: &[Vec<i128>], rays: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let mut g: Vec<Vec<i128>> = points
            .iter()
            .map(|p| p.iter().copied().chain(std::iter::once(1)).collect())
            .collect();
        g.extend(rays.iter().map(|r| r.iter().copied().chain(std::iter::once(0)).collect()));
        g
    }

    /// `num / den ∈ conv(points) + cone(rays)`, `den > 0`.
    pub fn polyhedron_contains(points: &[Vec<i128>], rays: &[Vec<i128>], num: &[i128], den: i128) -> bool {
        let gens = homogenise(points, rays);
        let x: Vec<i128> = num.iter().copied().chain(std::iter::once(den)).collect();
        cone_contains(&gens, &x)
    }

    /// Facets `<normal, x> >= offset`, normals primitive, sorted by normal.
    /// Candidate normals are the generalised cross products of every
    /// `(d-1)`-subset of homogenised generators.
    pub fn facets(points: &[Vec<i128>], rays: &[Vec<i128>]) -> Vec<(Vec<i128>, i128)> {
        let gens = homogenise(points, rays);
        let d = gens[0].len();
        let n = d - 1;
        let mut out: Vec<(Vec<i128>, i128)> = Vec::new();
        for s in subsets(gens.len(), d - 1) {
            // cofactor expansion along a formal first row
            let u: Vec<i128> = (0..d)
                .map(|j| {
                    let minor: Vec<Vec<i128>> = s
                        .iter()
                        .map(|&i| (0..d).filter(|&c| c != j).map(|c| gens[i][c]).collect())
                        .collect();
                    let sgn = if j % 2 == 0 { 1 } else { -1 };
                    sgn * det(&minor)
                })
                .collect();
            if u.iter().all(|&c| c == 0) {
                continue;
            }
            let vals: Vec<i128> = gens.iter().map(|g| g.iter().zip(&u).map(|(a, b)| a * b).sum()).collect();
            let u = if vals.iter().all(|&v| v >= 0) {
                u
            } else if vals.iter().all(|&v| v <= 0) {
                u.iter().map(|c| -c).collect()
            } else {
                continue;
            };
            let head: Vec<i128> = u[..n].to_vec();
            if head.iter().all(|&c| c == 0) {
                continue;
            }
            let normal = primitive(&head);
            let offset = points
                .iter()
                .map(|p| p.iter().zip(&normal).map(|(a, b)| a * b).sum::<i128>())
                .min()
                .unwrap();
            if !out.iter().any(|(v, _)| *v == normal) {
                out.push((normal, offset));
            }
        }
        out.sort();
        out
    }

    /// Points not in the polyhedron spanned by the others.
    pub fn vertices(points: &[Vec<i128>], rays: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let mut out = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            let others: Vec<Vec<i128>> =
                pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            if others.is_empty() || !polyhedron_contains(&others, rays, p, 1) {
                out.push(p.clone());
            }
        }
        out
    }
}

/// Exact test for a common zero in `(C*)^2` of one or two bivariate
/// polynomials: Sylvester resultant by evaluation/interpolation, then a gcd
/// over `Q[z2]/(m)` that splits `m` whenever a zero divisor turns up.
pub mod torus {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use toric_closure::poly::Poly;

    type Q = BigRational;
    /// univariate, lowest degree first, no trailing zeros
    type U = Vec<Q>;
    /// polynomial in z1 with coefficients in Q[z2]
    type B = Vec<U>;

    fn q(a: i64) -> Q {
        Q::from_integer(BigInt::from(a))
    }

    fn trim(mut a: U) -> U {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    fn deg(a: &U) -> isize {
        a.len() as isize - 1
    }

    fn add(a: &U, b: &U) -> U {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| a.get(i).cloned().unwrap_or_else(Q::zero) + b.get(i).cloned().unwrap_or_else(Q::zero))
            .collect())
    }

    fn neg(a: &U) -> U {
        a.iter().map(|c| -c).collect()
    }

    fn sub(a: &U, b: &U) -> U {
        add(a, &neg(b))
    }

    fn mul(a: &U, b: &U) -> U {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn divrem(a: &U, b: &U) -> (U, U) {
        let b = trim(b.clone());
        assert!(!b.is_empty());
        let mut r = trim(a.clone());
        let mut quo = vec![Q::zero(); r.len().saturating_sub(b.len()) + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / b.last().unwrap();
            for (i, bc) in b.iter().enumerate() {
                r[i + shift] -= bc * &c;
            }
            quo[shift] = c;
            r = trim(r);
        }
        (trim(quo), r)
    }

    fn rem(a: &U, m: &U) -> U {
        divrem(a, m).1
    }

    fn monic(a: U) -> U {
        match a.last().cloned() {
            Some(l) => a.into_iter().map(|c| c / &l).collect(),
            None => a,
        }
    }

    fn gcd(a: &U, b: &U) -> U {
        let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    /// `a^{-1} mod m`, assuming `gcd(a, m) = 1`.
    fn inverse(a: &U, m: &U) -> U {
        let (mut r0, mut r1) = (m.clone(), rem(a, m));
        let (mut s0, mut s1): (U, U) = (Vec::new(), vec![Q::one()]);
        while !r1.is_empty() {
            let (quo, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&quo, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert_eq!(r0.len(), 1, "not invertible");
        let c = r0[0].clone();
        rem(&s0.into_iter().map(|x| x / &c).collect(), m)
    }

    fn deriv(a: &U) -> U {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect())
    }

    fn eval(a: &U, x: &Q) -> Q {
        a.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    fn squarefree(a: &U) -> U {
        let g = gcd(a, &deriv(a));
        monic(divrem(a, &g).0)
    }

    fn to_bivariate(p: &Poly) -> B {
        assert_eq!(p.nvars(), 2);
        let d1 = p.degree_in(0) as usize;
        let mut out: B = vec![Vec::new(); d1 + 1];
        for (e, c) in p.terms() {
            let row = &mut out[e[0] as usize];
            let need = e[1] as usize + 1;
            if row.len() < need {
                row.resize(need, Q::zero());
            }
            row[e[1] as usize] += c;
        }
        out.into_iter().map(trim).collect()
    }

    /// Divides out the largest monomial factor.
    fn strip_monomial(mut b: B) -> B {
        while b.first().is_some_and(|c| c.is_empty()) {
            b.remove(0);
        }
        let k = b.iter().filter(|c| !c.is_empty()).map(|c| c.iter().take_while(|x| x.is_zero()).count()).min();
        if let Some(k) = k {
            for c in b.iter_mut() {
                if !c.is_empty() {
                    c.drain(..k);
                }
            }
        }
        b
    }

    fn is_zero_b(b: &B) -> bool {
        b.iter().all(|c| c.is_empty())
    }

    fn is_constant_b(b: &B) -> bool {
        b.len() == 1 && b[0].len() == 1
    }

    fn det_q(mut a: Vec<Vec<Q>>) -> Q {
        let n = a.len();
        let mut d = Q::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Q::zero();
            };
            if p != k {
                a.swap(p, k);
                d = -d;
            }
            let piv = a[k][k].clone();
            d *= &piv;
            for i in k + 1..n {
                let f = &a[i][k] / &piv;
                for j in k..n {
                    let t = &a[k][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        d
    }

    /// `Res_{z1}(f, g)` as a polynomial in `z2`.
    fn resultant(f: &B, g: &B) -> U {
        let (a, b) = (f.len() - 1, g.len() - 1);
        let dz = |x: &B| x.iter().map(|c| c.len()).max().unwrap_or(0);
        let bound = a * dz(g) + b * dz(f);
        let xs: Vec<Q> = (0..=bound as i64).map(q).collect();
        let ys: Vec<Q> = xs
            .iter()
            .map(|x| {
                let fa: Vec<Q> = f.iter().map(|c| eval(c, x)).collect();
                let gb: Vec<Q> = g.iter().map(|c| eval(c, x)).collect();
                let n = a + b;
                let mut m = vec![vec![Q::zero(); n]; n];
                for r in 0..b {
                    for (i, c) in fa.iter().enumerate() {
                        m[r][r + a - i] = c.clone();
                    }
                }
                for r in 0..a {
                    for (i, c) in gb.iter().enumerate() {
                        m[b + r][r + b - i] = c.clone();
                    }
                }
                det_q(m)
            })
            .collect();
        interpolate(&xs, &ys)
    }

    fn interpolate(xs: &[Q], ys: &[Q]) -> U {
        let mut out: U = Vec::new();
        for (i, xi) in xs.iter().enumerate() {
            let mut basis: U = vec![Q::one()];
            let mut denom = Q::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = mul(&basis, &vec![-xj.clone(), Q::one()]);
                    denom *= xi - xj;
                }
            }
            let scale = &ys[i] / denom;
            out = add(&out, &basis.iter().map(|c| c * &scale).collect());
        }
        out
    }

    fn reduce(b: &B, m: &U) -> B {
        let mut out: B = b.iter().map(|c| rem(c, m)).collect();
        while out.last().is_some_and(|c| c.is_empty()) {
            out.pop();
        }
        out
    }

    enum Lead {
        Zero,
        Split(U, U),
        Unit,
    }

    /// Inspects the leading coefficient of a reduced polynomial.
    fn lead(b: &B, m: &U) -> Lead {
        match b.last() {
            None => Lead::Zero,
            Some(c) => unit_or_split(c, m),
        }
    }

    fn unit_or_split(c: &U, m: &U) -> Lead {
        if c.is_empty() {
            return Lead::Zero;
        }
        let d = gcd(c, m);
        if deg(&d) >= 1 {
            Lead::Split(d.clone(), monic(divrem(m, &d).0))
        } else {
            Lead::Unit
        }
    }

    fn prem(a: &B, b: &B, m: &U) -> B {
        let inv = inverse(b.last().unwrap(), m);
        let mut r = a.clone();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = rem(&mul(r.last().unwrap(), &inv), m);
            for (i, bc) in b.iter().enumerate() {
                r[i + shift] = rem(&sub(&r[i + shift], &mul(&c, bc)), m);
            }
            while r.last().is_some_and(|c| c.is_empty()) {
                r.pop();
            }
        }
        r
    }

    /// Some root `β` of `m` (all nonzero) where `f(., β)` and `g(., β)` share
    /// a nonzero root, or both vanish identically.
    fn solve(m: &U, f: &B, g: &B) -> bool {
        if deg(m) < 1 {
            return false;
        }
        let (mut a, mut b) = (reduce(f, m), reduce(g, m));
        loop {
            match lead(&b, m) {
                Lead::Zero => break,
                Lead::Split(m1, m2) => return solve(&m1, &a, &b) || solve(&m2, &a, &b),
                Lead::Unit => {}
            }
            if b.len() == 1 {
                return false;
            }
            let r = prem(&a, &b, m);
            a = b;
            b = r;
        }
        nonzero_root(m, a)
    }

    fn nonzero_root(m: &U, mut a: B) -> bool {
        match lead(&a, m) {
            Lead::Zero => return true,
            Lead::Split(m1, m2) => {
                return nonzero_root(&m1, reduce(&a, &m1)) || nonzero_root(&m2, reduce(&a, &m2))
            }
            Lead::Unit => {}
        }
        loop {
            if a.len() == 1 {
                return false;
            }
            match unit_or_split(&a[0], m) {
                Lead::Zero => {
                    a.remove(0);
                }
                Lead::Split(m1, m2) => {
                    return nonzero_root(&m1, reduce(&a, &m1)) || nonzero_root(&m2, reduce(&a, &m2))
                }
                Lead::Unit => return true,
            }
        }
    }

    /// Reference answer for one or two polynomials in two variables.
    pub fn has_common_torus_zero(polys: &[Poly]) -> bool {
        let bs: Vec<B> = polys
            .iter()
            .map(to_bivariate)
            .filter(|b| !is_zero_b(b))
            .map(strip_monomial)
            .collect();
        if bs.is_empty() {
            return true;
        }
        if bs.iter().any(is_constant_b) {
            return false;
        }
        match bs.len() {
            // a Laurent polynomial with two or more terms is not a unit
            1 => true,
            2 => {
                let (f, g) = (&bs[0], &bs[1]);
                if f.len() > 1 && g.len() > 1 {
                    let r = resultant(f, g);
                    if r.is_empty() {
                        return true; // common factor of positive z1-degree
                    }
                    let r: U = r.into_iter().skip_while(Zero::is_zero).collect();
                    solve(&squarefree(&r), f, g)
                } else {
                    let u = if f.len() == 1 { &f[0] } else { &g[0] };
                    solve(&squarefree(u), f, g)
                }
            }
            _ => panic!("oracle handles at most two polynomials"),
        }
    }
}

/// Resultants over multivariate polynomials by cofactor expansion.
pub mod elimination {
    use toric_closure::poly::Poly;

    fn det(m: &[Vec<Poly>], nvars: usize) -> Poly {
        let n = m.len();
        if n == 0 {
            return Poly::one(nvars);
        }
        let mut acc = Poly::zero(nvars);
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Poly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let term = m[0][j].mul(&det(&minor, nvars));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn coefficients(p: &Poly, var: usize) -> Vec<Poly> {
        let d = p.degree_in(var) as usize;
        (0..=d)
            .map(|k| {
                Poly::from_terms(
                    p.nvars(),
                    p.terms().filter(|(e, _)| e[var] as usize == k).map(|(e, c)| {
                        let mut e = e.clone();
                        e[var] = 0;
                        (e, c.clone())
                    }),
                )
            })
            .collect()
    }

    /// `Res_var(f, g)` via the Sylvester matrix.
    pub fn resultant(f: &Poly, g: &Poly, var: usize) -> Poly {
        let nv = f.nvars();
        let (fa, gb) = (coefficients(f, var), coefficients(g, var));
        let (a, b) = (fa.len() - 1, gb.len() - 1);
        let n = a + b;
        let mut m = vec![vec![Poly::zero(nv); n]; n];
        for r in 0..b {
            for (i, c) in fa.iter().enumerate() {
                m[r][r + a - i] = c.clone();
            }
        }
        for r in 0..a {
            for (i, c) in gb.iter().enumerate() {
                m[b + r][r + b - i] = c.clone();
            }
        }
        det(&m, nv)
    }
}

/// Semigroup points by breadth-first enumeration inside a box.
pub mod semigroup {
    use std::collections::{BTreeSet, VecDeque};

    pub fn points_in_box(gens: &[Vec<i128>], upper: &[i128]) -> BTreeSet<Vec<i128>> {
        let n = upper.len();
        let mut seen: BTreeSet<Vec<i128>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(vec![0; n]);
        queue.push_back(vec![0; n]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let q: Vec<i128> = p.iter().zip(g).map(|(a, b)| a + b).collect();
                if q.iter().zip(upper).all(|(a, u)| a <= u) && seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        seen
    }

    /// Minimal elements of `set` for `p ≥ q ⇔ p - q ∈ S`, where `s` is `S`
    /// restricted to a box containing `set`.
    pub fn minimal(set: &BTreeSet<Vec<i128>>, s: &BTreeSet<Vec<i128>>) -> Vec<Vec<i128>> {
        set.iter()
            .filter(|p| {
                !set.iter().any(|q| {
                    q != *p && {
                        let d: Vec<i128> = p.iter().zip(q).map(|(a, b)| a - b).collect();
                        s.contains(&d)
                    }
                })
            })
            .cloned()
            .collect()
    }
}
