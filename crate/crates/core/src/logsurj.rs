//! Log surjections `(C, Q) -> (B, N)`: `Tor^C(B, B)` from an iterated syzygy
//! resolution, the terms `ker(Q^gp -> N^gp) ⊗ B` and `Tor_1(ker, B)`, and the
//! conormal module compared against `H_1` of the log complex.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::abgroup::{AbHom, FpAbGroup};
use crate::error::{Error, Result};
use crate::fpmodule::{quotient_syzygies, Coefficients, Complex3, FpModule, HomologyReport, ModHom};
use crate::groebner::{algebra_map_kernel, algebra_map_preimages, divide, zero_vector, PresentedAlgebra, Vector};
use crate::logls::LogPipeline;
use crate::monoids::{Choices, PrelogMorphism};
use crate::poly::{Monomial, Poly};

/// Deepest `Tor` the resolution supports.
pub const MAX_TOR: usize = 4;

#[derive(Clone, Debug)]
pub struct LogSurjection {
    pub morphism: PrelogMorphism,
    /// Generators of `a = ker(C -> B)`, nonzero in `C`.
    pub a_gens: Vec<Poly>,
    /// Binomial generators `p - p'` of `b = ker(k[Q] -> k[N])`.
    pub b_binomials: Vec<(Monomial, Monomial)>,
    pub kergp: FpAbGroup,
    pub kergp_inclusion: AbHom,
    /// A preimage in `C` of each variable of `B`.
    pub ring_sections: Vec<Poly>,
    /// A preimage in `Q` of each generator of `N`.
    pub monoid_sections: Vec<Vec<u32>>,
}

impl LogSurjection {
    pub fn new(f: &PrelogMorphism) -> Result<Self> {
        let c = &f.source.algebra;
        let b = &f.target.algebra;
        let vars: Vec<Poly> = (0..b.ring.nvars()).map(|i| b.ring.var(i)).collect();
        let ring_sections = algebra_map_preimages(c, b, &f.ring_map, &vars)
            .ok_or_else(|| Error::Invalid("the ring map is not surjective".into()))?;
        let monoid_sections = monoid_sections(f)?;

        let a_gens = algebra_map_kernel(c, b, &f.ring_map).into_iter().filter(|g| !c.is_zero(g)).collect();

        let field = f.field();
        let kq = crate::monoids::monoid_algebra(&f.source.monoid, field);
        let kn = crate::monoids::monoid_algebra(&f.target.monoid, field);
        let images: Vec<Poly> = f
            .monoid_map
            .images
            .iter()
            .map(|e| kn.normal_form(&kn.ring.monomial(e.clone(), field.one())))
            .collect();
        let mut b_binomials = Vec::new();
        for g in algebra_map_kernel(&kq, &kn, &images) {
            if kq.is_zero(&g) {
                continue;
            }
            let ok = g.terms.len() == 2 && g.terms[0].1.is_one() && (-&g.terms[1].1).is_one();
            if !ok {
                return Err(Error::CommutationFailure(format!(
                    "kernel of the monoid algebra map has a non-binomial generator {}",
                    kq.ring.format(&g)
                )));
            }
            b_binomials.push((g.terms[0].0.clone(), g.terms[1].0.clone()));
        }
        let (kergp, kergp_inclusion) = f.monoid_map.gp().kernel();
        Ok(LogSurjection {
            morphism: f.clone(),
            a_gens,
            b_binomials,
            kergp,
            kergp_inclusion,
            ring_sections,
            monoid_sections,
        })
    }

    fn c(&self) -> &Arc<PresentedAlgebra> {
        &self.morphism.source.algebra
    }

    fn b(&self) -> &Arc<PresentedAlgebra> {
        &self.morphism.target.algebra
    }
}

/// Searches exponent vectors of degree at most 3 for a preimage of each
/// generator of `N`.
fn monoid_sections(f: &PrelogMorphism) -> Result<Vec<Vec<u32>>> {
    let field = f.field();
    let kn = crate::monoids::monoid_algebra(&f.target.monoid, field);
    let nq = f.source.monoid.n_gens();
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    let mut layer: Vec<Vec<u32>> = vec![vec![0; nq]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for e in &layer {
            let start = e.iter().rposition(|&x| x > 0).unwrap_or(0);
            for i in start..nq {
                let mut n = e.clone();
                n[i] += 1;
                next.push(n);
            }
        }
        candidates.extend(next.iter().cloned());
        layer = next;
    }
    let image = |e: &[u32]| kn.normal_form(&kn.ring.monomial(f.monoid_map.apply(e), field.one()));
    (0..f.target.monoid.n_gens())
        .map(|j| {
            let want = kn.normal_form(&kn.ring.var(j));
            candidates
                .iter()
                .find(|e| image(e) == want)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("monoid generator {} has no preimage", f.target.monoid.gens[j])))
        })
        .collect()
}

/// Differentials `d_1, ..., d_{depth}` of a free resolution of `C/a` over `C`,
/// each as its list of columns.
fn resolution(c: &PresentedAlgebra, a_gens: &[Poly], depth: usize) -> Vec<Vec<Vector>> {
    let mut out: Vec<Vec<Vector>> = Vec::new();
    let mut cols: Vec<Vector> = a_gens.iter().map(|g| vec![g.clone()]).collect();
    let mut rank = 1;
    for _ in 0..depth {
        let next = quotient_syzygies(c, rank, &cols);
        rank = cols.len();
        out.push(std::mem::replace(&mut cols, next));
    }
    out
}

/// `Tor_n^C(B, B)` for `B = C/a` given by a surjection `C -> B`, `n <= 4`.
pub fn tor_over(c: &PresentedAlgebra, b: &Arc<PresentedAlgebra>, ring_map: &[Poly], a_gens: &[Poly], n: usize) -> Result<HomologyReport> {
    if n > MAX_TOR {
        return Err(Error::Unsupported(format!("Tor is computed up to degree {MAX_TOR}")));
    }
    let res = resolution(c, a_gens, n + 1);
    let to_b = |v: &Vector| -> Vector { v.iter().map(|p| b.normal_form(&c.ring.substitute(p, ring_map, &b.ring))).collect() };
    // d_i = res[i - 1] : F_i -> F_{i-1}, F_0 = C
    let rank = |i: usize| -> usize { if i == 0 { 1 } else { res[i - 1].len() } };
    let free = |r: usize| FpModule::free(b.clone(), r);
    let d_out = if n == 0 {
        ModHom::zero(free(1), free(0))
    } else {
        ModHom::new(free(rank(n)), free(rank(n - 1)), res[n - 1].iter().map(to_b).collect())?
    };
    let d_in = ModHom::new(free(rank(n + 1)), free(rank(n)), res[n].iter().map(to_b).collect())?;
    Ok(Complex3::new(d_in, d_out)?.homology(1, &Coefficients::Algebra))
}

pub fn tor_over_c(s: &LogSurjection, n: usize) -> Result<HomologyReport> {
    tor_over(s.c(), s.b(), &s.morphism.ring_map, &s.a_gens, n)
}

/// `W_1 = ker ⊗ B`, `W_2 = Tor_1(ker, B)`, zero otherwise; `ker = ker(Q^gp -> N^gp)`.
pub fn w_terms(s: &LogSurjection, n: usize) -> HomologyReport {
    let b = s.b();
    let char = b.ring.field.characteristic();
    let tors = s.kergp.torsion_count_divisible_by(char) as usize;
    let rank = match n {
        1 => s.kergp.rank() + tors,
        2 => tors,
        _ => 0,
    };
    HomologyReport::of(&FpModule::free(b.clone(), rank))
}

/// `a/a^2` presented on the generators of `a` with the syzygies as relations.
pub fn a_mod_a2(s: &LogSurjection) -> FpModule {
    let (c, b) = (s.c(), s.b());
    let vecs: Vec<Vector> = s.a_gens.iter().map(|g| vec![g.clone()]).collect();
    let rels = quotient_syzygies(c, 1, &vecs)
        .iter()
        .map(|v| v.iter().map(|p| c.ring.substitute(p, &s.morphism.ring_map, &b.ring)).collect())
        .collect();
    FpModule::new(b.clone(), s.a_gens.len(), rels)
}

/// The cokernel of `B ⊗ b/b^2 -> a/a^2 ⊕ (ker ⊗ B)`.
pub fn conormal_module(s: &LogSurjection) -> Result<FpModule> {
    let f = &s.morphism;
    let (c, b) = (s.c(), s.b());
    let field = f.field();
    let na = s.a_gens.len();
    let nk = s.kergp.n_gens;
    let width = na + nk;

    let mut rels: Vec<Vector> = Vec::new();
    for r in &a_mod_a2(s).relations {
        let mut v = r.clone();
        v.resize(width, Poly::zero());
        rels.push(v);
    }
    for row in s.kergp.relations.to_rows() {
        let mut v = zero_vector(width);
        for (j, x) in row.iter().enumerate() {
            v[na + j] = b.ring.constant(field.from_bigint(x));
        }
        rels.push(v);
    }
    // the image of each binomial of b
    let a_gb = algebra_map_kernel(c, b, &f.ring_map);
    for (p, p2) in &s.b_binomials {
        let mut v = zero_vector(width);
        let g = c.ring.sub(&f.source.alpha_of(p), &f.source.alpha_of(p2));
        let (quots, rem) = divide(&c.ring, &g, &a_gb);
        if !rem.is_zero() {
            return Err(Error::CommutationFailure("alpha of a binomial of b does not lie in a".into()));
        }
        for (q, gb_elem) in quots.iter().zip(&a_gb) {
            if let Some(k) = s.a_gens.iter().position(|x| x == gb_elem) {
                v[k] = b.normal_form(&c.ring.substitute(q, &f.ring_map, &b.ring));
            }
        }
        let diff: Vec<BigInt> = p.iter().zip(p2).map(|(&x, &y)| BigInt::from(x) - BigInt::from(y)).collect();
        let coords = crate::exactlinalg::int_solve(&s.kergp_inclusion.matrix, &diff)
            .ok_or_else(|| Error::CommutationFailure("a binomial of b does not lie in the kernel".into()))?;
        let coef = f.target.alpha_of(&f.monoid_map.apply(p2));
        for (j, x) in coords.iter().enumerate() {
            v[na + j] = b.normal_form(&b.ring.scale(&coef, &field.from_bigint(x)));
        }
        rels.push(v);
    }
    Ok(FpModule::new(b.clone(), width, rels))
}

/// `H_1` of the log complex and the conormal module, side by side.
#[derive(Clone, Debug)]
pub struct EdgeReport {
    pub log_h1: HomologyReport,
    pub conormal: HomologyReport,
}

impl EdgeReport {
    pub fn passed(&self) -> bool {
        self.log_h1.proxy_eq(&self.conormal)
    }
}

pub fn check_edge_identity(s: &LogSurjection) -> Result<EdgeReport> {
    let pipe = LogPipeline::new(&s.morphism, Choices::default())?;
    Ok(EdgeReport { log_h1: pipe.homology(1, &Coefficients::Algebra), conormal: HomologyReport::of(&conormal_module(s)?) })
}
