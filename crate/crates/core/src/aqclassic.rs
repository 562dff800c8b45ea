//! The classical Lichtenbaum–Schlessinger complex
//! `U/U0 -> F/IF -> B ⊗ Ω_{R|A}` of a ring map `A -> B`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::Result;
use crate::fpmodule::{koszul_submodule, quotient_syzygies, subquotient, Coefficients, Complex3, FpModule, HomologyReport, ModHom};
use crate::groebner::{algebra_map_kernel, PresentedAlgebra, Vector};
use crate::monoids::Choices;
use crate::poly::{MonomialOrder, Poly, PolyRing};

/// All data of one Lichtenbaum–Schlessinger complex.
#[derive(Clone, Debug)]
pub struct LsData {
    /// `R = A[vars]`, presented with the ideal of `A`.
    pub r: Arc<PresentedAlgebra>,
    pub b: Arc<PresentedAlgebra>,
    pub r_to_b: Vec<Poly>,
    /// Variables of `R` over `A`; `Ω_{R|A}` is free on their differentials.
    pub diff_vars: Vec<usize>,
    /// `τ(e_i)` for the basis of the free cover `F` of `I`.
    pub tau: Vec<Poly>,
    /// Generators of `U = ker τ` in `R^F`.
    pub u_gens: Vec<Vector>,
    /// Generators of the Koszul submodule `U0`.
    pub u0: Vec<Vector>,
    /// `U/U0` as an `R`-module on `u_gens`.
    pub u_mod_u0: FpModule,
    pub complex: Complex3,
}

/// Builds the complex for `R -> B` with free cover `tau` of `I`. The
/// generators of `U` are `u_prefix` followed by the syzygies of `tau`.
pub fn build_ls(
    r: Arc<PresentedAlgebra>,
    b: Arc<PresentedAlgebra>,
    r_to_b: Vec<Poly>,
    diff_vars: Vec<usize>,
    tau: Vec<Poly>,
    u_prefix: Vec<Vector>,
) -> Result<LsData> {
    let nf = tau.len();
    let tau_vecs: Vec<Vector> = tau.iter().map(|p| vec![p.clone()]).collect();
    let mut u_gens = u_prefix;
    for s in quotient_syzygies(&r, 1, &tau_vecs) {
        if !u_gens.contains(&s) {
            u_gens.push(s);
        }
    }
    let u0 = koszul_submodule(&r, &tau);
    let u_mod_u0 = subquotient(&r, nf, &u_gens, &u0);

    let to_b = |p: &Poly| b.normal_form(&r.ring.substitute(p, &r_to_b, &b.ring));
    let c2 = u_mod_u0.base_change(&b, &r_to_b);
    let c1 = FpModule::free(b.clone(), nf);
    let c0 = FpModule::free(b.clone(), diff_vars.len());
    let d2_cols: Vec<Vector> = u_gens.iter().map(|u| u.iter().map(to_b).collect()).collect();
    let d1_cols: Vec<Vector> = tau
        .iter()
        .map(|f| diff_vars.iter().map(|&v| to_b(&r.ring.derivative(f, v))).collect())
        .collect();
    let d2 = ModHom::new(c2, c1.clone(), d2_cols)?;
    let d1 = ModHom::new(c1, c0, d1_cols)?;
    let complex = Complex3::new(d2, d1)?;
    Ok(LsData { r, b, r_to_b, diff_vars, tau, u_gens, u0, u_mod_u0, complex })
}

impl LsData {
    /// Whether `I·U ⊆ U0`, checked generator-wise.
    pub fn iu_in_u0(&self, i_gens: &[Poly]) -> bool {
        let m = FpModule::new(self.r.clone(), self.tau.len(), self.u0.clone());
        let gb = m.gb();
        i_gens.iter().all(|g| {
            self.u_gens.iter().all(|u| {
                let v: Vector = u.iter().map(|x| self.r.ring.mul(g, x)).collect();
                crate::groebner::is_zero_vector(&m.reduce(&v, &gb))
            })
        })
    }

    pub fn homology(&self, i: usize, t: &Coefficients) -> HomologyReport {
        self.complex.homology(i, t)
    }
}

/// The complex of `A -> B` presented through `R = A[Y]`, `Y` the variables of `B`.
pub fn build_classical(a: &PresentedAlgebra, b: &Arc<PresentedAlgebra>, ring_map: &[Poly], choices: Choices) -> Result<LsData> {
    let na = a.ring.nvars();
    let ny = b.ring.nvars();
    let total = na + ny;
    let slot = |i: usize| if choices.reverse_orders { total - 1 - i } else { i };
    let mut names = vec![String::new(); total];
    let mut taken: HashSet<String> = HashSet::new();
    for (i, base) in a.ring.names.iter().chain(b.ring.names.iter()).enumerate() {
        let mut name = base.clone();
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        names[slot(i)] = name;
    }
    let ring = PolyRing::new(a.ring.field, names, MonomialOrder::DegRevLex);
    let a_vars: Vec<usize> = (0..na).map(slot).collect();
    let y_vars: Vec<usize> = (na..total).map(slot).collect();
    let r_ideal = a.gb.iter().map(|g| a.ring.reindex(g, &a_vars, &ring)).collect();
    let r = PresentedAlgebra::new(ring.clone(), r_ideal);
    let mut r_to_b = vec![Poly::zero(); total];
    for (i, &v) in a_vars.iter().enumerate() {
        r_to_b[v] = ring_map[i].clone();
    }
    for (k, &v) in y_vars.iter().enumerate() {
        r_to_b[v] = b.ring.var(k);
    }
    let i_gb = algebra_map_kernel(&r, b, &r_to_b);
    let tau = free_cover(&r, &i_gb, || b.ideal_gens.iter().map(|g| b.ring.reindex(g, &y_vars, &ring)).collect(), choices);
    build_ls(r, b.clone(), r_to_b, y_vars, tau, Vec::new())
}

/// Generators of `I` modulo the ideal of `R`: its Gröbner basis, or for a
/// redundant cover the `raw` generators, the basis, and one more element.
pub fn free_cover(r: &PresentedAlgebra, i_gb: &[Poly], raw: impl FnOnce() -> Vec<Poly>, choices: Choices) -> Vec<Poly> {
    let mut tau: Vec<Poly> = Vec::new();
    if choices.redundant_cover {
        tau.extend(raw().into_iter().map(|p| r.normal_form(&p)).filter(|p| !p.is_zero()));
    }
    for g in i_gb {
        let g = r.normal_form(g);
        if !g.is_zero() && !tau.contains(&g) {
            tau.push(g);
        }
    }
    if choices.redundant_cover && r.ring.nvars() > 0 && !i_gb.is_empty() {
        // one surely redundant generator: (1 + v) * (sum of the basis)
        let ring = &r.ring;
        let sum = i_gb.iter().fold(Poly::zero(), |acc, g| ring.add(&acc, g));
        let extra = r.normal_form(&ring.mul(&ring.add(&ring.one(), &ring.var(0)), &sum));
        if !extra.is_zero() && !tau.contains(&extra) {
            tau.push(extra);
        }
    }
    tau
}

/// Classical André–Quillen homology `H_i(A, B, T)` for `i <= 2`.
pub fn aq_classical(a: &PresentedAlgebra, b: &Arc<PresentedAlgebra>, ring_map: &[Poly], i: usize, t: &Coefficients) -> Result<HomologyReport> {
    Ok(build_classical(a, b, ring_map, Choices::default())?.homology(i, t))
}
