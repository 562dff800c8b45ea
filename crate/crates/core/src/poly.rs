//! Sparse multivariate polynomials over a [`Field`].
//!
//! A [`Poly`] is a bare list of terms; the [`PolyRing`] it lives in supplies
//! the field, variable names and the monomial order. Terms are kept sorted in
//! descending order, so the leading term is always `terms[0]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Exponent vector.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, variables in declared order.
    DegRevLex,
    Lex,
    /// Block order: the first `n` variables form a degrevlex block that
    /// dominates the remaining degrevlex block. Used for elimination.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block(n) => grevlex(&a[..*n], &b[..*n]).then_with(|| grevlex(&a[*n..], &b[*n..])),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable is larger
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_degree(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn lead_mono(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.is_unit()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| mono_degree(m)).max()
    }

    /// Weighted degree if all terms share it.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<i64> {
        let mut it = self.terms.iter().map(|(m, _)| weighted_degree(m, weights));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }
}

pub fn weighted_degree(m: &[u32], weights: &[u32]) -> i64 {
    m.iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
}

/// A polynomial ring `k[x_1..x_n]` with a monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub names: Vec<String>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, names: Vec<String>, order: MonomialOrder) -> Self {
        PolyRing { field, names, order }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing { order, ..self.clone() }
    }

    pub fn one_mono(&self) -> Monomial {
        vec![0; self.nvars()]
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(self.one_mono(), c)] }
        }
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn from_i64(&self, v: i64) -> Poly {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut m = self.one_mono();
        m[i] = 1;
        Poly { terms: vec![(m, self.field.one())] }
    }

    pub fn monomial(&self, m: Monomial, c: Scalar) -> Poly {
        assert_eq!(m.len(), self.nvars());
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Collects arbitrary terms into canonical sorted form.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Poly { terms }
    }

    /// Re-sorts terms after an order change or a variable permutation.
    pub fn resort(&self, p: &Poly) -> Poly {
        let mut q = p.clone();
        q.terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        q
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.lin_comb(a, &self.field.one(), b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.lin_comb(a, &-self.field.one(), b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { terms: a.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    /// `a + c * b` by merging.
    pub fn lin_comb(&self, a: &Poly, c: &Scalar, b: &Poly) -> Poly {
        self.add_scaled_shifted(a, c, None, b)
    }

    /// `a + c * m * b` where `m` is an optional monomial shift.
    pub fn add_scaled_shifted(&self, a: &Poly, c: &Scalar, m: Option<&[u32]>, b: &Poly) -> Poly {
        if c.is_zero() || b.is_zero() {
            return a.clone();
        }
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut i = 0;
        let mut bi = b.terms.iter().map(|(bm, bc)| {
            let mm = match m {
                Some(s) => mono_mul(bm, s),
                None => bm.clone(),
            };
            (mm, c * bc)
        });
        let mut next_b = bi.next();
        while i < a.terms.len() || next_b.is_some() {
            match (a.terms.get(i), &next_b) {
                (Some((am, ac)), Some((bm, bc))) => match self.order.cmp(am, bm) {
                    Ordering::Greater => {
                        out.push((am.clone(), ac.clone()));
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((bm.clone(), bc.clone()));
                        next_b = bi.next();
                    }
                    Ordering::Equal => {
                        let s = ac + bc;
                        if !s.is_zero() {
                            out.push((am.clone(), s));
                        }
                        i += 1;
                        next_b = bi.next();
                    }
                },
                (Some((am, ac)), None) => {
                    out.push((am.clone(), ac.clone()));
                    i += 1;
                }
                (None, Some((bm, bc))) => {
                    out.push((bm.clone(), bc.clone()));
                    next_b = bi.next();
                }
                (None, None) => unreachable!(),
            }
        }
        Poly { terms: out }
    }

    pub fn scale(&self, a: &Poly, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul_term(&self, a: &Poly, m: &[u32], c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(am, ac)| (mono_mul(am, m), ac * c)).collect() }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let (small, big) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
        let mut acc = Poly::zero();
        for (m, c) in &small.terms {
            acc = self.add_scaled_shifted(&acc, c, Some(m), big);
        }
        acc
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.lead() {
            Some((_, c)) if !c.is_one() => self.scale(a, &c.inv()),
            _ => a.clone(),
        }
    }

    pub fn derivative(&self, a: &Poly, var: usize) -> Poly {
        self.from_terms(a.terms.iter().filter(|(m, _)| m[var] > 0).map(|(m, c)| {
            let mut mm = m.clone();
            mm[var] -= 1;
            (mm, c * &self.field.from_i64(m[var] as i64))
        }))
    }

    /// Evaluates `a` at `images` (one polynomial of `target` per variable).
    pub fn substitute(&self, a: &Poly, images: &[Poly], target: &PolyRing) -> Poly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        let mut acc = Poly::zero();
        for (m, c) in &a.terms {
            let mut t = target.constant(convert_scalar(c, target.field));
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = target.mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                t = target.mul(&t, &powers[i][e as usize]);
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    /// Applies a monomial map `x^m -> y^(sum m_i * images_i)` (monoid algebra
    /// homomorphisms send monomials to monomials).
    pub fn monomial_map(&self, a: &Poly, images: &[Monomial], target: &PolyRing) -> Poly {
        target.from_terms(a.terms.iter().map(|(m, c)| {
            let mut out = target.one_mono();
            for (e, img) in m.iter().zip(images) {
                for (o, i) in out.iter_mut().zip(img) {
                    *o += e * i;
                }
            }
            (out, convert_scalar(c, target.field))
        }))
    }

    /// Reinterprets `a` in `target`, sending variable `i` to `index_map[i]`.
    pub fn reindex(&self, a: &Poly, index_map: &[usize], target: &PolyRing) -> Poly {
        target.from_terms(a.terms.iter().map(|(m, c)| {
            let mut out = target.one_mono();
            for (i, &e) in m.iter().enumerate() {
                out[index_map[i]] += e;
            }
            (out, convert_scalar(c, target.field))
        }))
    }

    pub fn format(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in a.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff = c.abs_display();
            let is_const = m.iter().all(|&e| e == 0);
            let mut factors = Vec::new();
            if coeff != "1" || is_const {
                factors.push(coeff);
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.names[i], e)),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }

    /// Parses the input grammar: signed sums of products of integers,
    /// fractions `p/q`, variables, powers `^n` and parenthesised groups.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let mut p = Parser { ring: self, src: text.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// Moves a scalar into another field of the same characteristic, or from
/// the rationals into `F_p` (integral values only).
pub fn convert_scalar(c: &Scalar, to: Field) -> Scalar {
    if c.field() == to {
        return c.clone();
    }
    to.from_rational(&c.to_rational()).expect("coefficient representable in target field")
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Invalid(format!("{msg} at column {} in polynomial {:?}", self.pos + 1, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let r = self.ring;
        let mut acc = Poly::zero();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = r.lin_comb(&acc, &r.field.from_i64(sign), &t);
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly> {
        let r = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut val = BigRational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    val /= BigRational::from_integer(den);
                }
                if val.is_one() {
                    return Ok(r.one());
                }
                Ok(r.constant(r.field.from_rational(&val)?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match r.var_index(name) {
                    Some(i) => Ok(r.var(i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable {name:?}")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
