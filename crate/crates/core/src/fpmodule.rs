//! Finitely presented modules over presented algebras.
//!
//! A module over `B = k[x]/I` is `B^n` modulo the span of relation columns.
//! All Gröbner computations happen in the ambient free module `k[x]^n`, with
//! the columns `g·e_j` (`g` in the Gröbner basis of `I`) appended so that
//! results are correct over the quotient.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::abgroup::Dim;
use crate::error::{Error, Result};
use crate::exactlinalg::FieldMatrix;
use crate::field::Scalar;
use crate::groebner::{
    buchberger, groebner_module, is_zero_vector, lead_term, reduce_vector, syzygies, vec_add, vec_mul_poly, vec_scale,
    zero_vector, PresentedAlgebra, Vector,
};
use crate::poly::{divides, mono_div, mono_lcm, Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpModule {
    pub over: Arc<PresentedAlgebra>,
    pub n_gens: usize,
    /// Relation columns, each of length `n_gens`, entries in normal form.
    pub relations: Vec<Vector>,
}

pub(crate) fn nf_vector(alg: &PresentedAlgebra, v: &[Poly]) -> Vector {
    v.iter().map(|p| alg.normal_form(p)).collect()
}

/// Columns `g·e_j` for the Gröbner basis of the algebra's ideal.
pub fn ideal_columns(alg: &PresentedAlgebra, rank: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for g in &alg.gb {
        for j in 0..rank {
            let mut v = zero_vector(rank);
            v[j] = g.clone();
            out.push(v);
        }
    }
    out
}

pub fn unit_vector(alg: &PresentedAlgebra, rank: usize, j: usize) -> Vector {
    let mut v = zero_vector(rank);
    v[j] = alg.ring.one();
    v
}

/// Syzygies over the quotient algebra, restricted to the given vectors.
pub fn quotient_syzygies(alg: &PresentedAlgebra, rank: usize, vectors: &[Vector]) -> Vec<Vector> {
    let m = vectors.len();
    if m == 0 {
        return Vec::new();
    }
    let mut all = vectors.to_vec();
    all.extend(ideal_columns(alg, rank));
    let mut out: Vec<Vector> = Vec::new();
    for s in syzygies(&alg.ring, rank, &all) {
        let v = nf_vector(alg, &s[..m]);
        if !is_zero_vector(&v) && !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// `B^s / { c : sum c_j gens_j ∈ span(rels) }`, the submodule spanned by
/// `gens` modulo `rels`, presented on the given generators.
pub fn subquotient(alg: &Arc<PresentedAlgebra>, rank: usize, gens: &[Vector], rels: &[Vector]) -> FpModule {
    let s = gens.len();
    let mut all = gens.to_vec();
    all.extend(rels.iter().cloned());
    let syz = quotient_syzygies(alg, rank, &all);
    let relations = syz.into_iter().map(|v| v[..s].to_vec()).filter(|v| !is_zero_vector(v)).collect();
    FpModule::new(alg.clone(), s, relations)
}

/// The pairwise Koszul elements `tau(e_i) e_j - tau(e_j) e_i`, `i < j`.
pub fn koszul_submodule(alg: &PresentedAlgebra, tau: &[Poly]) -> Vec<Vector> {
    let n = tau.len();
    let ring = &alg.ring;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = zero_vector(n);
            v[j] = tau[i].clone();
            v[i] = ring.neg(&tau[j]);
            let v = nf_vector(alg, &v);
            if !is_zero_vector(&v) {
                out.push(v);
            }
        }
    }
    out
}

impl FpModule {
    pub fn new(over: Arc<PresentedAlgebra>, n_gens: usize, relations: Vec<Vector>) -> Self {
        let relations = relations
            .iter()
            .map(|r| {
                assert_eq!(r.len(), n_gens, "relation of wrong length");
                nf_vector(&over, r)
            })
            .filter(|r| !is_zero_vector(r))
            .collect();
        FpModule { over, n_gens, relations }
    }

    pub fn free(over: Arc<PresentedAlgebra>, n: usize) -> Self {
        FpModule { over, n_gens: n, relations: Vec::new() }
    }

    pub fn zero(over: Arc<PresentedAlgebra>) -> Self {
        Self::free(over, 0)
    }

    /// Relations together with the ideal columns.
    pub fn ambient_relations(&self) -> Vec<Vector> {
        let mut r = self.relations.clone();
        r.extend(ideal_columns(&self.over, self.n_gens));
        r
    }

    pub fn gb(&self) -> Vec<Vector> {
        groebner_module(&self.over.ring, self.n_gens, &self.ambient_relations())
    }

    pub fn reduce(&self, v: &[Poly], gb: &[Vector]) -> Vector {
        reduce_vector(&self.over.ring, v, gb)
    }

    pub fn is_zero_element(&self, v: &[Poly]) -> bool {
        is_zero_vector(&self.reduce(v, &self.gb()))
    }

    pub fn direct_sum(&self, other: &FpModule) -> FpModule {
        let n = self.n_gens + other.n_gens;
        let mut rels: Vec<Vector> = self
            .relations
            .iter()
            .map(|r| r.iter().cloned().chain(std::iter::repeat_n(Poly::zero(), other.n_gens)).collect())
            .collect();
        rels.extend(
            other
                .relations
                .iter()
                .map(|r| std::iter::repeat_n(Poly::zero(), self.n_gens).chain(r.iter().cloned()).collect()),
        );
        FpModule { over: self.over.clone(), n_gens: n, relations: rels }
    }

    /// k-dimension from the staircase of the module Gröbner basis.
    pub fn dim_over_k(&self) -> Dim {
        let gb = self.gb();
        let nv = self.over.ring.nvars();
        let mut total = 0u64;
        for j in 0..self.n_gens {
            let leads = leads_at(&gb, j);
            match count_standard(&leads, nv) {
                Some(c) => total += c,
                None => return Dim::Infinite,
            }
        }
        Dim::Finite(total)
    }

    /// Standard monomials per position, when the module is finite-dimensional.
    pub fn k_basis(&self, gb: &[Vector]) -> Option<Vec<(usize, Monomial)>> {
        let nv = self.over.ring.nvars();
        let mut out = Vec::new();
        for j in 0..self.n_gens {
            let leads = leads_at(gb, j);
            for m in standard_monomials(&leads, nv)? {
                out.push((j, m));
            }
        }
        Some(out)
    }

    /// Base change along a surjection of algebras given by images of the
    /// source variables; the target ideal is added implicitly.
    pub fn base_change(&self, to: &Arc<PresentedAlgebra>, images: &[Poly]) -> FpModule {
        let rels = self
            .relations
            .iter()
            .map(|r| r.iter().map(|p| self.over.ring.substitute(p, images, &to.ring)).collect())
            .collect();
        FpModule::new(to.clone(), self.n_gens, rels)
    }

    /// Removes generators that a relation with a constant entry expresses
    /// through the others, then replaces the relations by the reduced
    /// Gröbner basis with pure ideal multiples dropped. Returns the pruned
    /// module and, for each surviving generator, its original index.
    pub fn prune(&self) -> (FpModule, Vec<usize>) {
        let ring = &self.over.ring;
        let mut keep: Vec<usize> = (0..self.n_gens).collect();
        let mut rels = self.relations.clone();
        loop {
            while let Some((ri, j)) = rels
                .iter()
                .enumerate()
                .find_map(|(ri, r)| r.iter().position(|p| p.is_constant() && !p.is_zero()).map(|j| (ri, j)))
            {
                let r = rels.remove(ri);
                let c_inv = r[j].lead().unwrap().1.inv();
                rels = rels
                    .into_iter()
                    .map(|s| {
                        let f = ring.scale(&s[j], &-&c_inv);
                        let mut t = vec_add(ring, &s, &vec_mul_poly(ring, &f, &r));
                        t.remove(j);
                        nf_vector(&self.over, &t)
                    })
                    .filter(|t| !is_zero_vector(t))
                    .collect();
                keep.remove(j);
            }
            let tmp = FpModule { over: self.over.clone(), n_gens: keep.len(), relations: rels };
            rels = tmp
                .gb()
                .into_iter()
                .filter(|v| !v.iter().all(|p| self.over.is_zero(p)))
                .map(|v| nf_vector(&self.over, &v))
                .collect();
            // the basis may expose new unit entries
            if !rels.iter().any(|r| r.iter().any(|p| p.is_constant() && !p.is_zero())) {
                break;
            }
        }
        (FpModule { over: self.over.clone(), n_gens: keep.len(), relations: rels }, keep)
    }
}

fn leads_at(gb: &[Vector], pos: usize) -> Vec<Monomial> {
    gb.iter()
        .filter_map(|v| lead_term(v).and_then(|(p, m, _)| (p == pos).then(|| m.clone())))
        .collect()
}

fn is_standard(m: &[u32], leads: &[Monomial]) -> bool {
    !leads.iter().any(|l| divides(l, m))
}

/// Number of monomials outside the monomial ideal, `None` when infinite.
fn count_standard(leads: &[Monomial], nv: usize) -> Option<u64> {
    standard_monomials(leads, nv).map(|v| v.len() as u64)
}

fn standard_monomials(leads: &[Monomial], nv: usize) -> Option<Vec<Monomial>> {
    // finite iff every variable has a pure power among the leading monomials
    let one = vec![0u32; nv];
    if !is_standard(&one, leads) {
        return Some(Vec::new());
    }
    for i in 0..nv {
        let pure = leads.iter().any(|l| l.iter().enumerate().all(|(k, &e)| (k == i) == (e > 0)));
        if !pure {
            return None;
        }
    }
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut stack = vec![one];
    while let Some(m) = stack.pop() {
        if !seen.insert(m.clone()) {
            continue;
        }
        for i in 0..nv {
            let mut n = m.clone();
            n[i] += 1;
            if is_standard(&n, leads) && !seen.contains(&n) {
                stack.push(n);
            }
        }
    }
    Some(seen.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModHom {
    pub source: FpModule,
    pub target: FpModule,
    /// Image of each source generator, in target coordinates.
    pub columns: Vec<Vector>,
}

impl ModHom {
    /// Builds a homomorphism after checking that source relations map to
    /// zero in the target.
    pub fn new(source: FpModule, target: FpModule, columns: Vec<Vector>) -> Result<Self> {
        let h = Self::new_unchecked(source, target, columns);
        h.check()?;
        Ok(h)
    }

    pub fn new_unchecked(source: FpModule, target: FpModule, columns: Vec<Vector>) -> Self {
        assert_eq!(columns.len(), source.n_gens, "one column per source generator");
        let columns = columns
            .iter()
            .map(|c| {
                assert_eq!(c.len(), target.n_gens, "column of wrong length");
                nf_vector(&target.over, c)
            })
            .collect();
        ModHom { source, target, columns }
    }

    pub fn check(&self) -> Result<()> {
        let gb = self.target.gb();
        for (i, r) in self.source.relations.iter().enumerate() {
            let img = self.apply(r);
            if !is_zero_vector(&self.target.reduce(&img, &gb)) {
                return Err(Error::CommutationFailure(format!("map does not respect source relation {}", i + 1)));
            }
        }
        Ok(())
    }

    pub fn zero(source: FpModule, target: FpModule) -> Self {
        let cols = vec![zero_vector(target.n_gens); source.n_gens];
        ModHom { source, target, columns: cols }
    }

    pub fn identity(m: &FpModule) -> Self {
        let cols = (0..m.n_gens).map(|j| unit_vector(&m.over, m.n_gens, j)).collect();
        ModHom { source: m.clone(), target: m.clone(), columns: cols }
    }

    /// Image of a source-coordinate vector, in normal form.
    pub fn apply(&self, v: &[Poly]) -> Vector {
        let ring = &self.target.over.ring;
        let mut acc = zero_vector(self.target.n_gens);
        for (c, col) in v.iter().zip(&self.columns) {
            if !c.is_zero() {
                acc = vec_add(ring, &acc, &vec_mul_poly(ring, c, col));
            }
        }
        nf_vector(&self.target.over, &acc)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModHom) -> ModHom {
        let cols = first.columns.iter().map(|c| self.apply(c)).collect();
        ModHom { source: first.source.clone(), target: self.target.clone(), columns: cols }
    }

    pub fn is_zero_map(&self) -> bool {
        let gb = self.target.gb();
        self.columns.iter().all(|c| is_zero_vector(&self.target.reduce(c, &gb)))
    }

    /// Equality as maps into the target module.
    pub fn equals(&self, other: &ModHom) -> bool {
        let ring = &self.target.over.ring;
        let gb = self.target.gb();
        self.columns
            .iter()
            .zip(&other.columns)
            .all(|(a, b)| is_zero_vector(&self.target.reduce(&crate::groebner::vec_sub(ring, a, b), &gb)))
    }

    /// Generators of the preimage in the source free module of the target
    /// relations, i.e. of the kernel lifted to `B^n`.
    pub fn kernel_vectors(&self) -> Vec<Vector> {
        let g1 = self.source.n_gens;
        if g1 == 0 {
            return Vec::new();
        }
        let mut all = self.columns.clone();
        all.extend(self.target.relations.iter().cloned());
        quotient_syzygies(&self.target.over, self.target.n_gens, &all)
            .into_iter()
            .map(|v| v[..g1].to_vec())
            .filter(|v| !is_zero_vector(v))
            .collect()
    }

    /// The kernel as a module with its inclusion.
    pub fn kernel(&self) -> (FpModule, ModHom) {
        let gens = self.kernel_vectors();
        let k = subquotient(&self.source.over, self.source.n_gens, &gens, &self.source.relations);
        let inc = ModHom::new_unchecked(k.clone(), self.source.clone(), gens);
        (k, inc)
    }

    pub fn cokernel(&self) -> FpModule {
        let mut rels = self.target.relations.clone();
        rels.extend(self.columns.iter().cloned());
        FpModule::new(self.target.over.clone(), self.target.n_gens, rels)
    }

    /// Whether `r ∘ self` is the identity, i.e. `r` witnesses a splitting.
    pub fn is_retracted_by(&self, r: &ModHom) -> bool {
        r.compose(self).equals(&ModHom::identity(&self.source))
    }
}

/// Pushout of `alpha: P -> A` and `beta: P -> C`: `(A ⊕ C) / {(alpha p, -beta p)}`
/// with its two legs.
pub fn pushout(alpha: &ModHom, beta: &ModHom) -> (FpModule, ModHom, ModHom) {
    let a = &alpha.target;
    let c = &beta.target;
    let alg = &a.over;
    let ring = &alg.ring;
    let sum = a.direct_sum(c);
    let mut rels = sum.relations.clone();
    for (ca, cb) in alpha.columns.iter().zip(&beta.columns) {
        let v: Vector = ca.iter().cloned().chain(cb.iter().map(|p| ring.neg(p))).collect();
        rels.push(v);
    }
    let l = FpModule::new(alg.clone(), sum.n_gens, rels);
    let leg_a = (0..a.n_gens).map(|j| unit_vector(alg, l.n_gens, j)).collect();
    let leg_c = (0..c.n_gens).map(|j| unit_vector(alg, l.n_gens, a.n_gens + j)).collect();
    let leg_a = ModHom::new_unchecked(a.clone(), l.clone(), leg_a);
    let leg_c = ModHom::new_unchecked(c.clone(), l.clone(), leg_c);
    (l, leg_a, leg_c)
}

/// `T ⊗ M` with basis `t_i ⊗ m_j` at index `i * n_gens(M) + j`.
pub fn tensor_module(t: &FpModule, m: &FpModule) -> FpModule {
    let (a, g) = (t.n_gens, m.n_gens);
    let mut rels = Vec::new();
    for rho in &t.relations {
        for j in 0..g {
            let mut v = zero_vector(a * g);
            for i in 0..a {
                v[i * g + j] = rho[i].clone();
            }
            rels.push(v);
        }
    }
    for sigma in &m.relations {
        for i in 0..a {
            let mut v = zero_vector(a * g);
            for j in 0..g {
                v[i * g + j] = sigma[j].clone();
            }
            rels.push(v);
        }
    }
    FpModule::new(m.over.clone(), a * g, rels)
}

/// `T ⊗ f`.
pub fn tensor_hom(t: &FpModule, f: &ModHom) -> ModHom {
    let src = tensor_module(t, &f.source);
    let tgt = tensor_module(t, &f.target);
    let (a, g0) = (t.n_gens, f.target.n_gens);
    let mut cols = Vec::new();
    for i in 0..a {
        for col in &f.columns {
            let mut v = zero_vector(a * g0);
            for (k, p) in col.iter().enumerate() {
                v[i * g0 + k] = p.clone();
            }
            cols.push(v);
        }
    }
    ModHom::new_unchecked(src, tgt, cols)
}

/// Coefficient modules for homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// The algebra itself.
    Algebra,
    /// The algebra modulo all of its variables.
    Residue,
    Module(FpModule),
}

impl Coefficients {
    pub fn module(&self, over: &Arc<PresentedAlgebra>) -> FpModule {
        match self {
            Coefficients::Algebra => FpModule::free(over.clone(), 1),
            Coefficients::Residue => {
                let rels = (0..over.ring.nvars()).map(|i| vec![over.ring.var(i)]).collect();
                FpModule::new(over.clone(), 1, rels)
            }
            Coefficients::Module(m) => m.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Coefficients::Algebra => "self",
            Coefficients::Residue => "residue",
            Coefficients::Module(_) => "module",
        }
    }
}

/// A three-term complex `c2 -> c1 -> c0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex3 {
    pub c2: FpModule,
    pub c1: FpModule,
    pub c0: FpModule,
    pub d2: ModHom,
    pub d1: ModHom,
}

impl Complex3 {
    pub fn new(d2: ModHom, d1: ModHom) -> Result<Self> {
        if d2.target != d1.source {
            return Err(Error::Invalid("differentials are not composable".into()));
        }
        let c = Complex3 { c2: d2.source.clone(), c1: d2.target.clone(), c0: d1.target.clone(), d2, d1 };
        c.check()?;
        Ok(c)
    }

    pub fn check(&self) -> Result<()> {
        self.d2.check()?;
        self.d1.check()?;
        if !self.d1.compose(&self.d2).is_zero_map() {
            return Err(Error::CommutationFailure("d1 ∘ d2 is not zero".into()));
        }
        Ok(())
    }

    pub fn term(&self, i: usize) -> &FpModule {
        match i {
            0 => &self.c0,
            1 => &self.c1,
            2 => &self.c2,
            _ => panic!("degree out of range"),
        }
    }

    pub fn tensor(&self, t: &Coefficients) -> Complex3 {
        if matches!(t, Coefficients::Algebra) {
            return self.clone();
        }
        let tm = t.module(&self.c0.over);
        let d2 = tensor_hom(&tm, &self.d2);
        let d1 = tensor_hom(&tm, &self.d1);
        Complex3 { c2: d2.source.clone(), c1: d2.target.clone(), c0: d1.target.clone(), d2, d1 }
    }

    /// Homology in degree `i` of this complex (coefficients already applied).
    pub fn homology_module(&self, i: usize) -> FpModule {
        let alg = &self.c0.over;
        match i {
            0 => self.d1.cokernel(),
            1 => {
                let gens = self.d1.kernel_vectors();
                let mut rels = self.c1.relations.clone();
                rels.extend(self.d2.columns.iter().cloned());
                subquotient(alg, self.c1.n_gens, &gens, &rels)
            }
            2 => {
                let gens = self.d2.kernel_vectors();
                subquotient(alg, self.c2.n_gens, &gens, &self.c2.relations)
            }
            _ => FpModule::zero(alg.clone()),
        }
    }

    pub fn homology(&self, i: usize, t: &Coefficients) -> HomologyReport {
        HomologyReport::of(&self.tensor(t).homology_module(i))
    }
}

/// k-linear model of a complex whose terms are finite-dimensional: ranks of
/// the differentials as matrices over k in the standard-monomial bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearModel {
    pub dims: [u64; 3],
    pub rank_d1: u64,
    pub rank_d2: u64,
}

impl LinearModel {
    pub fn of(c: &Complex3) -> Option<LinearModel> {
        let gbs = [c.c0.gb(), c.c1.gb(), c.c2.gb()];
        let bases = [c.c0.k_basis(&gbs[0])?, c.c1.k_basis(&gbs[1])?, c.c2.k_basis(&gbs[2])?];
        let rank = |d: &ModHom, src: usize, tgt: usize| -> u64 {
            let field = d.target.over.ring.field;
            let tb = &bases[tgt];
            let mut cols: Vec<Vec<Scalar>> = Vec::new();
            for (pos, m) in &bases[src] {
                let mut v = zero_vector(d.source.n_gens);
                v[*pos] = d.source.over.ring.monomial(m.clone(), field.one());
                let img = d.target.reduce(&d.apply(&v), &gbs[tgt]);
                let mut coords = vec![field.zero(); tb.len()];
                for (p, poly) in img.iter().enumerate() {
                    for (mono, coef) in &poly.terms {
                        let k = tb.iter().position(|(q, n)| *q == p && n == mono).expect("reduced form is standard");
                        coords[k] = coef.clone();
                    }
                }
                cols.push(coords);
            }
            if cols.is_empty() || tb.is_empty() {
                return 0;
            }
            FieldMatrix::from_columns(field, tb.len(), cols).rank() as u64
        };
        Some(LinearModel {
            dims: [bases[0].len() as u64, bases[1].len() as u64, bases[2].len() as u64],
            rank_d1: rank(&c.d1, 1, 0),
            rank_d2: rank(&c.d2, 2, 1),
        })
    }

    pub fn homology_dims(&self) -> [u64; 3] {
        [
            self.dims[0] - self.rank_d1,
            self.dims[1] - self.rank_d1 - self.rank_d2,
            self.dims[2] - self.rank_d2,
        ]
    }
}

/// A Hilbert series `numerator / prod (1 - t^w)`.
#[derive(Clone, Debug)]
pub struct HilbertSeries {
    /// Coefficients of the numerator, lowest degree first.
    pub numerator: Vec<i64>,
    /// Weights `w` of the denominator factors `1 - t^w`, sorted.
    pub denominator: Vec<u32>,
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn one_minus(w: u32) -> Vec<i64> {
    let mut v = vec![0i64; w as usize + 1];
    v[0] = 1;
    v[w as usize] -= 1;
    v
}

/// Exact division by `1 - t^w`, if it divides.
fn div_one_minus(a: &[i64], w: u32) -> Option<Vec<i64>> {
    // a = (1 - t^w) q  =>  q_k = a_k + q_{k-w}
    let w = w as usize;
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() <= w {
        return None;
    }
    let n = a.len() - w;
    let mut q = vec![0i64; n];
    for k in 0..n {
        q[k] = a[k] + if k >= w { q[k - w] } else { 0 };
    }
    (poly_mul(&q, &one_minus(w as u32)) == trim(a.to_vec())).then_some(q)
}

impl HilbertSeries {
    fn reduced(numerator: Vec<i64>, denominator: Vec<u32>) -> Self {
        let mut num = trim(numerator);
        let mut den: Vec<u32> = Vec::new();
        let mut pending = denominator;
        pending.sort_unstable();
        for w in pending {
            match div_one_minus(&num, w) {
                Some(q) if !num.is_empty() => num = q,
                _ => den.push(w),
            }
        }
        den.sort_unstable();
        HilbertSeries { numerator: trim(num), denominator: den }
    }
}

impl PartialEq for HilbertSeries {
    fn eq(&self, other: &Self) -> bool {
        let a = other.denominator.iter().fold(self.numerator.clone(), |acc, w| poly_mul(&acc, &one_minus(*w)));
        let b = self.denominator.iter().fold(other.numerator.clone(), |acc, w| poly_mul(&acc, &one_minus(*w)));
        a == b
    }
}

impl Eq for HilbertSeries {}

fn format_t_poly(c: &[i64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (k, &a) in c.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let body = if mono.is_empty() {
            a.abs().to_string()
        } else if a.abs() == 1 {
            mono
        } else {
            format!("{}*{}", a.abs(), mono)
        };
        if parts.is_empty() {
            parts.push(if a < 0 { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{} {body}", if a < 0 { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_t_poly(&self.numerator);
        if self.denominator.is_empty() || self.numerator.is_empty() {
            return f.write_str(&num);
        }
        let mut groups: Vec<(u32, usize)> = Vec::new();
        for &w in &self.denominator {
            match groups.last_mut() {
                Some((v, c)) if *v == w => *c += 1,
                _ => groups.push((w, 1)),
            }
        }
        let den: Vec<String> = groups
            .iter()
            .map(|(w, c)| {
                let base = if *w == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{w})") };
                if *c == 1 {
                    base
                } else {
                    format!("{base}^{c}")
                }
            })
            .collect();
        let num = if num.contains(' ') { format!("({num})") } else { num };
        write!(f, "{num}/{}", den.join("*"))
    }
}

/// Numerator of the Hilbert series of `k[x]/L` over the weighted denominator.
fn k_polynomial(leads: &[Monomial], weights: &[u32]) -> Vec<i64> {
    let mut gens: Vec<Monomial> = Vec::new();
    for m in leads {
        if !leads.iter().any(|l| l != m && divides(l, m)) && !gens.contains(m) {
            gens.push(m.clone());
        }
    }
    if gens.is_empty() {
        return vec![1];
    }
    let last = gens.pop().unwrap();
    let deg = last.iter().zip(weights).map(|(e, w)| (*e as usize) * (*w as usize)).sum::<usize>();
    let colon: Vec<Monomial> = gens.iter().map(|g| mono_div(&mono_lcm(g, &last), &last)).collect();
    let a = k_polynomial(&gens, weights);
    let b = k_polynomial(&colon, weights);
    let mut shifted = vec![0i64; deg];
    shifted.extend(b);
    let n = a.len().max(shifted.len());
    let out: Vec<i64> = (0..n).map(|k| a.get(k).copied().unwrap_or(0) - shifted.get(k).copied().unwrap_or(0)).collect();
    trim(out)
}

/// Infers generator degrees making every relation homogeneous; each
/// connected component is anchored so that its minimum degree is 0.
fn infer_generator_degrees(m: &FpModule) -> Option<Vec<i64>> {
    let weights = &m.over.weights;
    let n = m.n_gens;
    let mut parent: Vec<usize> = (0..n).collect();
    // offset[i] = deg(i) - deg(parent[i])
    let mut offset = vec![0i64; n];
    fn find(parent: &mut [usize], offset: &mut [i64], i: usize) -> (usize, i64) {
        if parent[i] == i {
            return (i, 0);
        }
        let (root, off) = find(parent, offset, parent[i]);
        parent[i] = root;
        offset[i] += off;
        (root, offset[i])
    }
    for r in &m.relations {
        let mut anchor: Option<(usize, i64)> = None;
        for (i, p) in r.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree(weights)?;
            match anchor {
                None => anchor = Some((i, d)),
                Some((j, dj)) => {
                    // deg(i) + d = deg(j) + dj
                    let (ri, oi) = find(&mut parent, &mut offset, i);
                    let (rj, oj) = find(&mut parent, &mut offset, j);
                    if ri == rj {
                        if oi + d != oj + dj {
                            return None;
                        }
                    } else {
                        parent[ri] = rj;
                        offset[ri] = oj + dj - d - oi;
                    }
                }
            }
        }
    }
    let mut deg: Vec<(usize, i64)> = (0..n).map(|i| find(&mut parent, &mut offset, i)).collect();
    let mut mins: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
    for (root, d) in &deg {
        let e = mins.entry(*root).or_insert(*d);
        *e = (*e).min(*d);
    }
    for (root, d) in deg.iter_mut() {
        *d -= mins[root];
    }
    Some(deg.into_iter().map(|(_, d)| d).collect())
}

fn hilbert_series(m: &FpModule, gb: &[Vector]) -> Option<HilbertSeries> {
    if !m.over.is_graded() {
        return None;
    }
    let degs = infer_generator_degrees(m)?;
    let weights = &m.over.weights;
    let mut num: Vec<i64> = Vec::new();
    for (j, d) in degs.iter().enumerate() {
        let k = k_polynomial(&leads_at(gb, j), weights);
        let mut shifted = vec![0i64; *d as usize];
        shifted.extend(k);
        let n = num.len().max(shifted.len());
        num = (0..n).map(|k| num.get(k).copied().unwrap_or(0) + shifted.get(k).copied().unwrap_or(0)).collect();
    }
    Some(HilbertSeries::reduced(num, weights.clone()))
}

fn determinant(alg: &PresentedAlgebra, m: &[Vec<Poly>]) -> Poly {
    let ring = &alg.ring;
    match m.len() {
        0 => ring.one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Poly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = ring.mul(&m[0][j], &determinant(alg, &minor));
                acc = if j % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
            }
            alg.normal_form(&acc)
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

const MINOR_LIMIT: u128 = 20_000;

/// Fitting ideals `F_0, F_1, ...` up to and including the first unit ideal,
/// each as the reduced Gröbner basis of its image in the algebra. `None`
/// when the number of minors is too large to enumerate.
fn fitting_ideals(m: &FpModule) -> Option<Vec<Vec<Poly>>> {
    let alg = &m.over;
    let g = m.n_gens;
    let r = m.relations.len();
    let mut out = Vec::new();
    for j in 0..=g {
        let k = g - j;
        let gens: Vec<Poly> = if k == 0 {
            vec![alg.ring.one()]
        } else if k > r {
            Vec::new()
        } else {
            if binom(g, k) * binom(r, k) > MINOR_LIMIT {
                return None;
            }
            let mut minors = Vec::new();
            for rows in subsets(g, k) {
                for cols in subsets(r, k) {
                    let mat: Vec<Vec<Poly>> =
                        rows.iter().map(|&i| cols.iter().map(|&c| m.relations[c][i].clone()).collect()).collect();
                    let d = determinant(alg, &mat);
                    if !d.is_zero() && !minors.contains(&d) {
                        minors.push(d);
                    }
                }
            }
            minors
        };
        let mut all = gens;
        all.extend(alg.gb.iter().cloned());
        let gb = buchberger(&alg.ring, &all);
        let unit = gb.iter().any(Poly::is_unit);
        let ideal: Vec<Poly> = if unit { vec![alg.ring.one()] } else { gb.into_iter().filter(|p| !alg.is_zero(p)).collect() };
        out.push(ideal);
        if unit {
            break;
        }
    }
    Some(out)
}

/// Canonical description of a module, used for all homology output.
#[derive(Clone, Debug)]
pub struct HomologyReport {
    pub n_gens: usize,
    /// Relation columns of the pruned presentation, printed.
    pub presentation: Vec<Vec<String>>,
    pub k_dim: Dim,
    pub hilbert: Option<HilbertSeries>,
    /// Printed Fitting ideals, `None` when too expensive.
    pub fitting: Option<Vec<Vec<String>>>,
    /// Rank when the pruned presentation has no relations.
    pub free_rank: Option<usize>,
}

impl HomologyReport {
    pub fn of(m: &FpModule) -> HomologyReport {
        let (p, _) = m.prune();
        let gb = p.gb();
        let nv = p.over.ring.nvars();
        let mut k_dim = Dim::Finite(0);
        for j in 0..p.n_gens {
            k_dim = k_dim
                + match count_standard(&leads_at(&gb, j), nv) {
                    Some(c) => Dim::Finite(c),
                    None => Dim::Infinite,
                };
        }
        let ring = &p.over.ring;
        let presentation = p.relations.iter().map(|r| r.iter().map(|x| ring.format(x)).collect()).collect();
        let fitting = fitting_ideals(&p).map(|fs| fs.iter().map(|f| f.iter().map(|x| ring.format(x)).collect()).collect());
        HomologyReport {
            n_gens: p.n_gens,
            presentation,
            k_dim,
            hilbert: hilbert_series(&p, &gb),
            fitting,
            free_rank: p.relations.is_empty().then_some(p.n_gens),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.k_dim == Dim::Finite(0)
    }

    /// Proxy equality: k-dimension; Fitting ideals when infinite-dimensional;
    /// Hilbert series when both sides carry one.
    pub fn proxy_eq(&self, other: &HomologyReport) -> bool {
        if self.k_dim != other.k_dim {
            return false;
        }
        if let (Some(a), Some(b)) = (&self.hilbert, &other.hilbert) {
            if a != b {
                return false;
            }
        }
        if self.k_dim == Dim::Infinite {
            if let (Some(a), Some(b)) = (&self.fitting, &other.fitting) {
                return a == b;
            }
        }
        true
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        match (self.k_dim, self.free_rank) {
            (Dim::Finite(0), _) => "0".into(),
            (Dim::Infinite, Some(r)) => format!("free of rank {r}"),
            (Dim::Finite(d), _) => format!("k-dim {d}"),
            (Dim::Infinite, None) => format!("infinite k-dim, {} generators", self.n_gens),
        }
    }
}

/// Scales a vector so that its leading coefficient is one.
pub fn monic_vector(alg: &PresentedAlgebra, v: &[Poly]) -> Vector {
    match lead_term(v) {
        Some((_, _, c)) => vec_scale(&alg.ring, v, &c.inv()),
        None => v.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::{MonomialOrder, PolyRing};

    fn alg(names: &[&str], rels: &[&str]) -> Arc<PresentedAlgebra> {
        let ring = PolyRing::new(Field::Rationals, names.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex);
        let gens = rels.iter().map(|r| ring.parse(r).unwrap()).collect();
        PresentedAlgebra::new(ring, gens)
    }

    fn p(a: &PresentedAlgebra, s: &str) -> Poly {
        a.ring.parse(s).unwrap()
    }

    #[test]
    fn syzygy_examples() {
        let b = alg(&["x", "y"], &[]);
        let s = quotient_syzygies(&b, 1, &[vec![p(&b, "x")], vec![p(&b, "y")]]);
        assert_eq!(s.len(), 1);
        assert!(s[0] == vec![p(&b, "y"), p(&b, "-x")] || s[0] == vec![p(&b, "-y"), p(&b, "x")]);
        assert!(quotient_syzygies(&b, 1, &[vec![b.ring.one()]]).is_empty());
    }

    #[test]
    fn koszul_examples() {
        let b = alg(&["x", "y"], &[]);
        let k = koszul_submodule(&b, &[p(&b, "x^2"), p(&b, "x*y")]);
        assert_eq!(k, vec![vec![p(&b, "-x*y"), p(&b, "x^2")]]);
        assert!(koszul_submodule(&b, &[p(&b, "x")]).is_empty());
    }

    #[test]
    fn dims() {
        let b = alg(&["x"], &["x^2"]);
        assert_eq!(FpModule::free(b.clone(), 1).dim_over_k(), Dim::Finite(2));
        let kx = alg(&["x"], &[]);
        assert_eq!(FpModule::free(kx.clone(), 1).dim_over_k(), Dim::Infinite);
        let kt = alg(&["t"], &[]);
        let m = FpModule::new(kt.clone(), 2, vec![vec![kt.ring.one(), p(&kt, "t")]]);
        assert_eq!(m.dim_over_k(), Dim::Infinite);
        let r = HomologyReport::of(&m);
        assert_eq!(r.free_rank, Some(1));
        assert_eq!(r.hilbert.as_ref().unwrap().to_string(), "1/(1 - t)");
    }

    #[test]
    fn base_change_of_conormal() {
        // (x^2)/(x^4) over k[x]/(x^2): one generator, k-dim 2
        let r = alg(&["x"], &[]);
        let b = alg(&["x"], &["x^2"]);
        let m = FpModule::new(r.clone(), 1, vec![vec![p(&r, "x^2")]]);
        let bc = m.base_change(&b, &[p(&b, "x")]);
        assert_eq!(bc.dim_over_k(), Dim::Finite(2));
    }

    #[test]
    fn koszul_complex_homology() {
        let b = alg(&["x", "y"], &[]);
        let c2 = FpModule::free(b.clone(), 1);
        let c1 = FpModule::free(b.clone(), 2);
        let c0 = FpModule::free(b.clone(), 1);
        let d2 = ModHom::new(c2, c1.clone(), vec![vec![p(&b, "-y"), p(&b, "x")]]).unwrap();
        let d1 = ModHom::new(c1, c0, vec![vec![p(&b, "x")], vec![p(&b, "y")]]).unwrap();
        let c = Complex3::new(d2, d1).unwrap();
        let t = Coefficients::Algebra;
        assert_eq!(c.homology(0, &t).k_dim, Dim::Finite(1));
        assert!(c.homology(1, &t).is_zero());
        assert!(c.homology(2, &t).is_zero());
    }

    #[test]
    fn pushout_examples() {
        let b = alg(&["t"], &[]);
        let m = FpModule::free(b.clone(), 1);
        let id = ModHom::identity(&m);
        let zero = ModHom::zero(m.clone(), m.clone());
        let (l, _, _) = pushout(&id, &zero);
        assert_eq!(HomologyReport::of(&l).free_rank, Some(1));
        let z = FpModule::zero(b.clone());
        let (l, _, _) = pushout(&ModHom::zero(z.clone(), m.clone()), &ModHom::zero(z, m.clone()));
        assert_eq!(HomologyReport::of(&l).free_rank, Some(2));
    }

    #[test]
    fn hilbert_series_of_quotient() {
        let b = alg(&["x", "y"], &["x^2", "y^3"]);
        let r = HomologyReport::of(&FpModule::free(b, 1));
        assert_eq!(r.k_dim, Dim::Finite(6));
        assert_eq!(r.hilbert.unwrap().to_string(), "1 + 2*t + 2*t^2 + t^3");
    }

    #[test]
    fn fitting_ideal_of_cyclic_module() {
        let b = alg(&["x", "y"], &[]);
        let m = FpModule::new(b.clone(), 1, vec![vec![p(&b, "x")], vec![p(&b, "y^2")]]);
        let r = HomologyReport::of(&m);
        assert_eq!(r.fitting.unwrap(), vec![vec!["y^2".to_string(), "x".to_string()], vec!["1".to_string()]]);
    }
}
