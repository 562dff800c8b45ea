//! Finitely presented commutative monoids, prelog rings and their morphisms,
//! and the factorization `(A, M) -> (R, P0) -> (B, N)` through a free
//! adjunction.
//!
//! Ring-level computation happens over the configured field. The integral
//! monoid algebras involved are free over `Z` with torsion-free binomial
//! kernels, so their exact sequences base-change to any field unchanged.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::abgroup::{AbHom, FpAbGroup};
use crate::error::{Error, Result};
use crate::exactlinalg::IntMatrix;
use crate::field::Field;
use crate::groebner::{algebra_map_kernel, PresentedAlgebra};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMonoid {
    pub gens: Vec<String>,
    /// `(a, b)` means `sum a_i g_i = sum b_i g_i`.
    pub relations: Vec<(Vec<u32>, Vec<u32>)>,
}

impl FpMonoid {
    pub fn new(gens: Vec<String>, relations: Vec<(Vec<u32>, Vec<u32>)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &gens {
            if !seen.insert(g.as_str()) {
                return Err(Error::Invalid(format!("duplicate monoid generator {g}")));
            }
        }
        for (i, (a, b)) in relations.iter().enumerate() {
            if a.len() != gens.len() || b.len() != gens.len() {
                return Err(Error::Invalid(format!(
                    "monoid relation {} has exponent vectors of the wrong length (expected {})",
                    i + 1,
                    gens.len()
                )));
            }
        }
        Ok(FpMonoid { gens, relations })
    }

    pub fn free(gens: &[&str]) -> Self {
        FpMonoid { gens: gens.iter().map(|s| s.to_string()).collect(), relations: Vec::new() }
    }

    pub fn trivial() -> Self {
        FpMonoid { gens: Vec::new(), relations: Vec::new() }
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }
}

/// The group completion: same generators, one relation `a - b` per monoid relation.
pub fn group_completion(m: &FpMonoid) -> FpAbGroup {
    let rows: Vec<Vec<BigInt>> = m
        .relations
        .iter()
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| BigInt::from(*x as i64 - *y as i64)).collect())
        .collect();
    FpAbGroup::from_relation_rows(m.n_gens(), &rows)
}

/// `m ⊕ N^X`: the generators of `m` followed by the fresh names, relations unchanged.
pub fn free_adjunction(m: &FpMonoid, x_names: &[String]) -> Result<FpMonoid> {
    let mut gens = m.gens.clone();
    for x in x_names {
        if gens.contains(x) {
            return Err(Error::Invalid(format!("generator name {x} already in use")));
        }
        gens.push(x.clone());
    }
    let extra = x_names.len();
    let relations = m
        .relations
        .iter()
        .map(|(a, b)| {
            let pad = |v: &Vec<u32>| v.iter().copied().chain(std::iter::repeat_n(0, extra)).collect();
            (pad(a), pad(b))
        })
        .collect();
    Ok(FpMonoid { gens, relations })
}

/// `k[m]`: one variable per generator modulo the binomials `x^a - x^b`.
pub fn monoid_algebra(m: &FpMonoid, field: Field) -> Arc<PresentedAlgebra> {
    let ring = PolyRing::new(field, m.gens.clone(), MonomialOrder::DegRevLex);
    let gens = m.relations.iter().map(|(a, b)| binomial(&ring, a, b)).collect();
    PresentedAlgebra::new(ring, gens)
}

pub fn binomial(ring: &PolyRing, a: &[u32], b: &[u32]) -> Poly {
    let one = ring.field.one();
    ring.sub(&ring.monomial(a.to_vec(), one.clone()), &ring.monomial(b.to_vec(), one))
}

/// Exponent vector of `sum_i e_i images[i]`.
pub fn push_exponents(images: &[Vec<u32>], e: &[u32], target_len: usize) -> Monomial {
    let mut out = vec![0u32; target_len];
    for (ei, img) in e.iter().zip(images) {
        for (o, v) in out.iter_mut().zip(img) {
            *o += ei * v;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidHom {
    pub source: FpMonoid,
    pub target: FpMonoid,
    /// Exponent vector in the target generators for each source generator.
    pub images: Vec<Vec<u32>>,
}

impl MonoidHom {
    /// Checks that each source relation holds in the target by comparing
    /// normal forms in the target's monoid algebra.
    pub fn new(source: FpMonoid, target: FpMonoid, images: Vec<Vec<u32>>) -> Result<Self> {
        if images.len() != source.n_gens() || images.iter().any(|v| v.len() != target.n_gens()) {
            return Err(Error::Invalid("monoid map has the wrong shape".into()));
        }
        let alg = monoid_algebra(&target, Field::Rationals);
        for (i, (a, b)) in source.relations.iter().enumerate() {
            let pa = push_exponents(&images, a, target.n_gens());
            let pb = push_exponents(&images, b, target.n_gens());
            if !alg.is_zero(&binomial(&alg.ring, &pa, &pb)) {
                return Err(Error::Invalid(format!("monoid map does not respect relation {}", i + 1)));
            }
        }
        Ok(MonoidHom { source, target, images })
    }

    pub fn apply(&self, e: &[u32]) -> Monomial {
        push_exponents(&self.images, e, self.target.n_gens())
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.images.iter().enumerate().all(|(i, v)| v.iter().enumerate().all(|(j, &e)| e == (i == j) as u32))
    }

    /// The induced map of group completions.
    pub fn gp(&self) -> AbHom {
        let rows: Vec<Vec<BigInt>> = (0..self.target.n_gens())
            .map(|j| self.images.iter().map(|img| BigInt::from(img[j])).collect())
            .collect();
        let matrix = IntMatrix::from_rows(self.source.n_gens(), &rows);
        AbHom::new(group_completion(&self.source), group_completion(&self.target), matrix)
            .expect("a valid monoid map induces a group map")
    }

    pub fn compose(&self, first: &MonoidHom) -> MonoidHom {
        let images = first.images.iter().map(|v| self.apply(v)).collect();
        MonoidHom { source: first.source.clone(), target: self.target.clone(), images }
    }
}

/// A presented algebra with a monoid and a multiplicative structure map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrelogRing {
    pub algebra: Arc<PresentedAlgebra>,
    pub monoid: FpMonoid,
    pub alpha: Vec<Poly>,
}

impl PrelogRing {
    pub fn new(algebra: Arc<PresentedAlgebra>, monoid: FpMonoid, alpha: Vec<Poly>) -> Result<Self> {
        if alpha.len() != monoid.n_gens() {
            return Err(Error::Invalid("alpha must give one ring element per monoid generator".into()));
        }
        let pr = PrelogRing { algebra, monoid, alpha };
        for (i, (a, b)) in pr.monoid.relations.iter().enumerate() {
            let d = pr.algebra.ring.sub(&pr.alpha_of(a), &pr.alpha_of(b));
            if !pr.algebra.is_zero(&d) {
                return Err(Error::Invalid(format!("alpha does not respect relation {}", i + 1)));
            }
        }
        Ok(pr)
    }

    /// `alpha` of the monoid element with exponent vector `e`.
    pub fn alpha_of(&self, e: &[u32]) -> Poly {
        let ring = &self.algebra.ring;
        let mut acc = ring.one();
        for (a, &k) in self.alpha.iter().zip(e) {
            if k > 0 {
                acc = ring.mul(&acc, &ring.pow(a, k));
            }
        }
        self.algebra.normal_form(&acc)
    }

    pub fn field(&self) -> Field {
        self.algebra.ring.field
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrelogMorphism {
    pub source: PrelogRing,
    pub target: PrelogRing,
    /// Image in the target ring of each source variable.
    pub ring_map: Vec<Poly>,
    pub monoid_map: MonoidHom,
}

impl PrelogMorphism {
    pub fn new(source: PrelogRing, target: PrelogRing, ring_map: Vec<Poly>, monoid_map: MonoidHom) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::Invalid("source and target are over different fields".into()));
        }
        if ring_map.len() != source.algebra.ring.nvars() {
            return Err(Error::Invalid("ring map must give one image per source variable".into()));
        }
        if monoid_map.source != source.monoid || monoid_map.target != target.monoid {
            return Err(Error::Invalid("monoid map does not match the prelog monoids".into()));
        }
        let f = PrelogMorphism { source, target, ring_map, monoid_map };
        for (i, g) in f.source.algebra.ideal_gens.iter().enumerate() {
            if !f.target.algebra.is_zero(&f.map_poly(g)) {
                return Err(Error::Invalid(format!("ring map does not respect source relation {}", i + 1)));
            }
        }
        for (i, img) in f.monoid_map.images.iter().enumerate() {
            let lhs = f.target.alpha_of(img);
            let rhs = f.map_poly(&f.source.alpha[i]);
            if !f.target.algebra.is_zero(&f.target.algebra.ring.sub(&lhs, &rhs)) {
                return Err(Error::Invalid(format!(
                    "alpha is not compatible with the morphism on generator {}",
                    f.source.monoid.gens[i]
                )));
            }
        }
        Ok(f)
    }

    /// Image of a source polynomial, in normal form in the target.
    pub fn map_poly(&self, p: &Poly) -> Poly {
        let t = &self.target.algebra;
        t.normal_form(&self.source.algebra.ring.substitute(p, &self.ring_map, &t.ring))
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn is_strict(&self) -> bool {
        // an isomorphism of presented monoids: the group map is invertible
        // and the monoid map is a bijection on generators up to relations
        self.monoid_map.is_identity()
            || (self.monoid_map.source.n_gens() == self.monoid_map.target.n_gens()
                && self.monoid_map.source.relations == self.monoid_map.target.relations
                && is_permutation(&self.monoid_map.images))
    }
}

fn is_permutation(images: &[Vec<u32>]) -> bool {
    let n = images.len();
    let mut hit = vec![false; n];
    for v in images {
        let ones: Vec<usize> = v.iter().enumerate().filter(|(_, &e)| e != 0).map(|(j, _)| j).collect();
        if ones.len() != 1 || v[ones[0]] != 1 || hit[ones[0]] {
            return false;
        }
        hit[ones[0]] = true;
    }
    true
}

/// Alternative choices for the factorization, used to test that homology
/// does not depend on them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Choices {
    /// Adjoin one more free generator than needed.
    pub extra_x: bool,
    /// Reverse the order of the adjoined generators and of the variables of `R`.
    pub reverse_orders: bool,
    /// Cover `I` by its raw generators together with its Gröbner basis.
    pub redundant_cover: bool,
}

impl Choices {
    pub fn alternative() -> Self {
        Choices { extra_x: true, reverse_orders: true, redundant_cover: true }
    }
}

/// Data of a factorization `(A, M) -> (R, P0) -> (B, N)` with
/// `P0 = M ⊕ N^X`, `R = A[X ∪ Y]`, and both second maps surjective.
#[derive(Clone, Debug)]
pub struct FactorizationData {
    pub morphism: PrelogMorphism,
    pub choices: Choices,
    pub p0: FpMonoid,
    pub h: MonoidHom,
    /// For each adjoined generator, the target generator it maps to (`None` for the identity).
    pub x_targets: Vec<Option<usize>>,
    pub r: Arc<PresentedAlgebra>,
    /// Indices in `R` of the variables of `A`, of `X`, and of `Y`.
    pub a_vars: Vec<usize>,
    pub x_vars: Vec<usize>,
    pub y_vars: Vec<usize>,
    /// Images in `B` of the variables of `R`.
    pub r_to_b: Vec<Poly>,
    /// Images in `R` of the generators of `P0`.
    pub rho: Vec<Poly>,
    pub kp0: Arc<PresentedAlgebra>,
    pub kn: Arc<PresentedAlgebra>,
    /// Reduced Gröbner basis of `I = ker(R -> B)` (contains the ideal of `A`).
    pub i_gb: Vec<Poly>,
    /// Binomial generators `p - p'` of `J = ker(k[P0] -> k[N])`, as pairs of exponent vectors.
    pub j_binomials: Vec<(Monomial, Monomial)>,
}

fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Builds the canonical factorization: `X` is the generator set of `N`,
/// `Y` the variable set of `B`.
pub fn choose_log_factorization(f: &PrelogMorphism, choices: Choices) -> Result<FactorizationData> {
    let field = f.field();
    let a = &f.source;
    let b = &f.target;
    let m = &a.monoid;
    let n = &b.monoid;

    let mut x_targets: Vec<Option<usize>> = (0..n.n_gens()).map(Some).collect();
    if choices.extra_x {
        x_targets.push(n.n_gens().checked_sub(1));
    }
    if choices.reverse_orders {
        x_targets.reverse();
    }

    let mut taken: HashSet<String> = m.gens.iter().cloned().collect();
    let x_names: Vec<String> = x_targets
        .iter()
        .map(|t| {
            let base = match t {
                Some(j) => format!("x_{}", n.gens[*j]),
                None => "x_0".to_string(),
            };
            let name = fresh_name(&base, &taken);
            taken.insert(name.clone());
            name
        })
        .collect();
    let p0 = free_adjunction(m, &x_names)?;
    let mut h_images: Vec<Vec<u32>> = f.monoid_map.images.clone();
    for t in &x_targets {
        let mut v = vec![0u32; n.n_gens()];
        if let Some(j) = t {
            v[*j] = 1;
        }
        h_images.push(v);
    }
    let h = MonoidHom { source: p0.clone(), target: n.clone(), images: h_images };

    // R = k[vars_A, X, Y] / I_A, possibly with the variables in reverse order
    let na = a.algebra.ring.nvars();
    let nx = x_targets.len();
    let ny = b.algebra.ring.nvars();
    let total = na + nx + ny;
    let slot = |i: usize| if choices.reverse_orders { total - 1 - i } else { i };
    let a_vars: Vec<usize> = (0..na).map(slot).collect();
    let x_vars: Vec<usize> = (na..na + nx).map(slot).collect();
    let y_vars: Vec<usize> = (na + nx..total).map(slot).collect();

    let mut names = vec![String::new(); total];
    let mut taken: HashSet<String> = HashSet::new();
    let base_names: Vec<String> = a
        .algebra
        .ring
        .names
        .iter()
        .cloned()
        .chain(x_names.iter().cloned())
        .chain(b.algebra.ring.names.iter().cloned())
        .collect();
    for (i, base) in base_names.iter().enumerate() {
        let name = fresh_name(base, &taken);
        taken.insert(name.clone());
        names[slot(i)] = name;
    }
    let r_ring = PolyRing::new(field, names, MonomialOrder::DegRevLex);
    let r_ideal: Vec<Poly> = a.algebra.gb.iter().map(|g| a.algebra.ring.reindex(g, &a_vars, &r_ring)).collect();
    let r = PresentedAlgebra::new(r_ring.clone(), r_ideal);

    let bring = &b.algebra.ring;
    let mut r_to_b = vec![Poly::zero(); total];
    for (i, &v) in a_vars.iter().enumerate() {
        r_to_b[v] = f.ring_map[i].clone();
    }
    for (k, &v) in x_vars.iter().enumerate() {
        r_to_b[v] = match x_targets[k] {
            Some(j) => b.alpha[j].clone(),
            None => bring.one(),
        };
    }
    for (k, &v) in y_vars.iter().enumerate() {
        r_to_b[v] = bring.var(k);
    }
    let r_to_b: Vec<Poly> = r_to_b.iter().map(|p| b.algebra.normal_form(p)).collect();

    let mut rho: Vec<Poly> = a.alpha.iter().map(|p| a.algebra.ring.reindex(p, &a_vars, &r_ring)).collect();
    rho.extend(x_vars.iter().map(|&v| r_ring.var(v)));

    let kp0 = monoid_algebra(&p0, field);
    let kn = monoid_algebra(n, field);

    let i_gb = algebra_map_kernel(&r, &b.algebra, &r_to_b);

    let n_images: Vec<Poly> = h
        .images
        .iter()
        .map(|e| kn.normal_form(&kn.ring.monomial(e.clone(), field.one())))
        .collect();
    let j_gb = algebra_map_kernel(&kp0, &kn, &n_images);
    let mut j_binomials = Vec::new();
    for g in &j_gb {
        if kp0.is_zero(g) {
            continue;
        }
        let ok = g.terms.len() == 2 && g.terms[0].1.is_one() && (-&g.terms[1].1).is_one();
        if !ok {
            return Err(Error::CommutationFailure(format!(
                "kernel of the monoid algebra map has a non-binomial generator {}",
                kp0.ring.format(g)
            )));
        }
        j_binomials.push((g.terms[0].0.clone(), g.terms[1].0.clone()));
    }

    Ok(FactorizationData {
        morphism: f.clone(),
        choices,
        p0,
        h,
        x_targets,
        r,
        a_vars,
        x_vars,
        y_vars,
        r_to_b,
        rho,
        kp0,
        kn,
        i_gb,
        j_binomials,
    })
}

impl FactorizationData {
    /// `alpha_B` of the image under `h` of a `P0` element.
    pub fn alpha_b_of_h(&self, e: &[u32]) -> Poly {
        self.morphism.target.alpha_of(&self.h.apply(e))
    }

    /// Image in `k[N]` (normal form) of a `P0` monomial.
    pub fn to_kn(&self, e: &[u32]) -> Poly {
        self.kn.normal_form(&self.kn.ring.monomial(self.h.apply(e), self.kn.ring.field.one()))
    }
}
