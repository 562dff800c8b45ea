//! The logarithmic Lichtenbaum–Schlessinger complex of a prelog morphism.
//!
//! Three complexes of `B`-modules are built from a factorization
//! `(A, M) -> (R, P0) -> (B, N)`:
//!
//! * back: `B ⊗ V/V0 -> B ⊗ G -> B ⊗ Ω_{k[P0]|k[M]}`, from a presentation
//!   `0 -> V -> G -> J -> 0` of `J = ker(k[P0] -> k[N])`;
//! * front: `U/U0 -> F/IF -> B ⊗ Ω_{R|A}`, the classical complex of `A -> B`
//!   with `F ⊇ R ⊗ G`;
//! * right: `B ⊗ W1 -> B ⊗ Q1 -> B ⊗ P0^gp/M^gp`.
//!
//! The maps `alpha_i` (back to front) and `beta_i` (back to right) make a
//! commutative diagram, and the log complex is the degreewise pushout.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::abgroup::Dim;
use crate::aqclassic::{aq_classical, build_ls, free_cover, LsData};
use crate::error::{Error, Result};
use crate::exactlinalg::{field_solve, FieldMatrix};
use crate::field::{Field, Scalar};
use crate::fpmodule::{
    koszul_submodule, pushout, quotient_syzygies, subquotient, unit_vector, Coefficients, Complex3, FpModule, HomologyReport,
    ModHom,
};
use crate::groebner::{algebra_map_kernel, divide, zero_vector, Vector};
use crate::kcomplex::KData;
use crate::monoids::{choose_log_factorization, monoid_algebra, Choices, FactorizationData, PrelogMorphism};
use crate::poly::{convert_scalar, Monomial, Poly, PolyRing};

/// The three faces of the diagram and the maps between them.
#[derive(Clone, Debug)]
pub struct Diagram1 {
    pub fd: FactorizationData,
    pub k: KData,
    /// Binomial generators `p - p'` of `J` in `k[P0]`.
    pub binomials: Vec<Poly>,
    /// Generators of `V = ker(G -> J)` over `k[P0]`.
    pub v_gens: Vec<Vector>,
    pub back: Complex3,
    pub front: LsData,
    pub right: Complex3,
    /// `alpha[i]`: back to front in degree `i`.
    pub alpha: Vec<ModHom>,
    /// `beta[i]`: back to right in degree `i`.
    pub beta: Vec<ModHom>,
}

/// The pushout complex with the legs from the front and right faces.
#[derive(Clone, Debug)]
pub struct LogLsComplex {
    pub complex: Complex3,
    pub leg_front: Vec<ModHom>,
    pub leg_right: Vec<ModHom>,
}

fn term(c: &Complex3, i: usize) -> &FpModule {
    c.term(i)
}

fn differential(c: &Complex3, i: usize) -> &ModHom {
    if i == 2 {
        &c.d2
    } else {
        &c.d1
    }
}

fn lift_to(ring: &PolyRing, p: &Poly) -> Poly {
    ring.from_terms(p.terms.iter().map(|(m, c)| (m.clone(), convert_scalar(c, ring.field))))
}

/// Builds the diagram for `f` under the given choices and checks that all
/// squares commute.
pub fn build_diagram1(f: &PrelogMorphism, choices: Choices) -> Result<Diagram1> {
    let fd = choose_log_factorization(f, choices)?;
    let b = fd.morphism.target.algebra.clone();
    let kp0 = fd.kp0.clone();
    let r = fd.r.clone();
    let field = f.field();
    let nm = f.source.monoid.n_gens();
    let nx = fd.x_targets.len();

    let binomials: Vec<Poly> = fd
        .j_binomials
        .iter()
        .map(|(p, q)| kp0.ring.sub(&kp0.ring.monomial(p.clone(), field.one()), &kp0.ring.monomial(q.clone(), field.one())))
        .collect();
    let qj = binomials.len();

    // back face over k[P0], base changed along theta: k[P0] -> B
    let theta: Vec<Poly> = fd.rho.iter().map(|p| b.normal_form(&r.ring.substitute(p, &fd.r_to_b, &b.ring))).collect();
    let to_b = |p: &Poly| b.normal_form(&kp0.ring.substitute(p, &theta, &b.ring));
    let bin_vecs: Vec<Vector> = binomials.iter().map(|p| vec![p.clone()]).collect();
    let v_gens = quotient_syzygies(&kp0, 1, &bin_vecs);
    let v0 = koszul_submodule(&kp0, &binomials);
    let v_mod_v0 = subquotient(&kp0, qj, &v_gens, &v0);
    let back_c2 = v_mod_v0.base_change(&b, &theta);
    let back_c1 = FpModule::free(b.clone(), qj);
    let back_c0 = FpModule::free(b.clone(), nx);
    let back_d2 = ModHom::new(back_c2, back_c1.clone(), v_gens.iter().map(|v| v.iter().map(to_b).collect()).collect())?;
    let back_d1 = ModHom::new(
        back_c1,
        back_c0,
        binomials.iter().map(|g| (0..nx).map(|k| to_b(&kp0.ring.derivative(g, nm + k))).collect()).collect(),
    )?;
    let back = Complex3::new(back_d2, back_d1)?;

    // front face: F = R ⊗ G ⊕ (cover of I), U generated by the image of V first
    let rho_r = |p: &Poly| r.normal_form(&kp0.ring.substitute(p, &fd.rho, &r.ring));
    let mut tau: Vec<Poly> = binomials.iter().map(rho_r).collect();
    let raw = || {
        let bg = &fd.morphism.target.algebra;
        bg.ideal_gens.iter().map(|g| bg.ring.reindex(g, &fd.y_vars, &r.ring)).collect()
    };
    tau.extend(free_cover(&r, &fd.i_gb, raw, choices));
    let nf = tau.len();
    let u_prefix: Vec<Vector> = v_gens
        .iter()
        .map(|v| {
            let mut u: Vector = v.iter().map(rho_r).collect();
            u.resize(nf, Poly::zero());
            u
        })
        .collect();
    let diff_vars: Vec<usize> = fd.x_vars.iter().chain(fd.y_vars.iter()).copied().collect();
    let front = build_ls(r.clone(), b.clone(), fd.r_to_b.clone(), diff_vars, tau, u_prefix)?;

    let k = KData::new(&fd);
    let right = k.complex(&b)?;

    // alpha: coordinate inclusions
    let inclusion = |src: &FpModule, tgt: &FpModule| -> Result<ModHom> {
        let cols = (0..src.n_gens).map(|j| unit_vector(&b, tgt.n_gens, j)).collect();
        ModHom::new(src.clone(), tgt.clone(), cols)
    };
    let fc = &front.complex;
    let alpha = vec![inclusion(&back.c0, &fc.c0)?, inclusion(&back.c1, &fc.c1)?, inclusion(&back.c2, &fc.c2)?];

    // beta_0(dx) = alpha_B(h(x)) e_x
    let beta0_cols: Vec<Vector> = (0..nx)
        .map(|kx| {
            let mut v = zero_vector(nx);
            v[kx] = theta[nm + kx].clone();
            v
        })
        .collect();
    // beta_1(e_j) = alpha_B(h(p')) (p - p') written in the generators of Q1
    let mut coords: Vec<Vec<BigInt>> = Vec::new();
    let mut beta1_cols: Vec<Vector> = Vec::new();
    for (p, q) in &fd.j_binomials {
        let diff: Vec<BigInt> = p.iter().zip(q).map(|(&a, &c)| BigInt::from(a) - BigInt::from(c)).collect();
        let c = k
            .q1_coordinates(&diff)
            .ok_or_else(|| Error::CommutationFailure("a binomial of J does not lie in W0".into()))?;
        let coef = fd.alpha_b_of_h(q);
        beta1_cols.push(c.iter().map(|x| b.normal_form(&b.ring.scale(&coef, &field.from_bigint(x)))).collect());
        coords.push(c);
    }
    let beta2_cols = beta2_columns(&fd, &k, &v_gens, &coords)?;
    let beta = vec![
        ModHom::new(back.c0.clone(), right.c0.clone(), beta0_cols)?,
        ModHom::new(back.c1.clone(), right.c1.clone(), beta1_cols)?,
        ModHom::new(back.c2.clone(), right.c2.clone(), beta2_cols)?,
    ];

    let d = Diagram1 { fd, k, binomials, v_gens, back, front, right, alpha, beta };
    d.check()?;
    Ok(d)
}

/// `beta_2` on the generators of `V`: lift each generator to an integral
/// syzygy, apply `beta'_1` in `Q[N] ⊗ Q1`, and read the result in the basis
/// of `W1` monomial by monomial.
fn beta2_columns(fd: &FactorizationData, k: &KData, v_gens: &[Vector], coords: &[Vec<BigInt>]) -> Result<Vec<Vector>> {
    let b = &fd.morphism.target.algebra;
    let field = b.ring.field;
    let char = field.characteristic();
    let q = Field::Rationals;
    let r1 = k.w1_rank();
    let (kp0q, knq) = if char == 0 {
        (fd.kp0.clone(), fd.kn.clone())
    } else {
        (monoid_algebra(&fd.p0, q), monoid_algebra(&fd.h.target, q))
    };
    let qring = &kp0q.ring;
    let binq: Vec<Poly> = fd
        .j_binomials
        .iter()
        .map(|(p, p2)| qring.sub(&qring.monomial(p.clone(), q.one()), &qring.monomial(p2.clone(), q.one())))
        .collect();
    let j_gb_q = if char == 0 {
        None
    } else {
        let images: Vec<Poly> = fd.h.images.iter().map(|e| knq.normal_form(&knq.ring.monomial(e.clone(), q.one()))).collect();
        let gb = algebra_map_kernel(&kp0q, &knq, &images);
        let positions: Option<Vec<usize>> = binq.iter().map(|g| gb.iter().position(|h| h == g)).collect();
        let positions = positions.ok_or_else(|| {
            Error::Unsupported("the binomial generators of J depend on the characteristic".into())
        })?;
        Some((gb, positions))
    };
    let w1 = FieldMatrix::from_columns(
        q,
        k.q1_rank,
        k.w1_basis.columns().iter().map(|c| c.iter().map(|x| q.from_bigint(x)).collect()).collect(),
    );
    let p_scalar = q.from_i64(char as i64);

    let mut cols = Vec::new();
    for v in v_gens {
        let mut lift: Vec<Poly> = v.iter().map(|p| lift_to(qring, p)).collect();
        if let Some((gb, positions)) = &j_gb_q {
            let s = lift.iter().zip(&binq).fold(Poly::zero(), |acc, (c, g)| qring.add(&acc, &qring.mul(c, g)));
            let nf = kp0q.normal_form(&s);
            if !nf.is_zero() {
                let scaled = qring.scale(&nf, &p_scalar.inv());
                let (quots, rem) = divide(qring, &scaled, gb);
                if !rem.is_zero() {
                    return Err(Error::CommutationFailure("a syzygy of J does not lift integrally".into()));
                }
                for (j, &pos) in positions.iter().enumerate() {
                    lift[j] = qring.sub(&lift[j], &qring.scale(&quots[pos], &p_scalar));
                }
            }
        }
        // beta'_1 of the lift, grouped by monomials of Q[N]
        let mut by_mono: BTreeMap<Monomial, Vec<BigRational>> = BTreeMap::new();
        for (j, (_, p2)) in fd.j_binomials.iter().enumerate() {
            let mapped = qring.monomial_map(&lift[j], &fd.h.images, &knq.ring);
            let img = knq.normal_form(&knq.ring.mul_term(&mapped, &fd.h.apply(p2), &q.one()));
            for (n, c) in &img.terms {
                let entry = by_mono.entry(n.clone()).or_insert_with(|| vec![BigRational::zero(); k.q1_rank]);
                for (e, x) in entry.iter_mut().zip(&coords[j]) {
                    *e += c.to_rational() * BigRational::from_integer(x.clone());
                }
            }
        }
        let mut col = zero_vector(r1);
        for (n, z) in by_mono {
            if z.iter().all(|x| x.is_zero()) {
                continue;
            }
            let rhs: Vec<Scalar> = z.into_iter().map(Scalar::Rat).collect();
            let y = field_solve(&w1, &rhs).ok_or_else(|| {
                Error::CommutationFailure("beta'_1 of a syzygy has a nonzero component in W0".into())
            })?;
            let an = fd.morphism.target.alpha_of(&n);
            for (slot, yk) in col.iter_mut().zip(&y) {
                if yk.is_zero() {
                    continue;
                }
                let c = field.from_rational(&yk.to_rational())?;
                *slot = b.ring.add(slot, &b.ring.scale(&an, &c));
            }
        }
        cols.push(col.iter().map(|p| b.normal_form(p)).collect());
    }
    Ok(cols)
}

impl Diagram1 {
    /// Checks that the four squares commute and that `alpha_0`, `alpha_1`
    /// are split by the coordinate projections.
    pub fn check(&self) -> Result<()> {
        let fc = &self.front.complex;
        let squares = [
            ("alpha_1 d_2 = delta_2 alpha_2", self.alpha[1].compose(&self.back.d2), fc.d2.compose(&self.alpha[2])),
            ("alpha_0 d_1 = delta_1 alpha_1", self.alpha[0].compose(&self.back.d1), fc.d1.compose(&self.alpha[1])),
            ("D_2 beta_2 = beta_1 d_2", self.right.d2.compose(&self.beta[2]), self.beta[1].compose(&self.back.d2)),
            ("D_1 beta_1 = beta_0 d_1", self.right.d1.compose(&self.beta[1]), self.beta[0].compose(&self.back.d1)),
        ];
        for (name, lhs, rhs) in &squares {
            if !lhs.equals(rhs) {
                return Err(Error::CommutationFailure(format!("square {name} does not commute")));
            }
        }
        for i in 0..2 {
            if !self.alpha[i].is_retracted_by(&self.alpha_retraction(i)) {
                return Err(Error::CommutationFailure(format!("alpha_{i} is not split injective")));
            }
        }
        Ok(())
    }

    /// The coordinate projection retracting `alpha_i` for `i` in 0, 1.
    pub fn alpha_retraction(&self, i: usize) -> ModHom {
        let a = &self.alpha[i];
        let alg = &a.source.over;
        let n = a.source.n_gens;
        let cols = (0..a.target.n_gens)
            .map(|j| if j < n { unit_vector(alg, n, j) } else { zero_vector(n) })
            .collect();
        ModHom::new_unchecked(a.target.clone(), a.source.clone(), cols)
    }
}

/// The degreewise pushout of `(alpha_i, beta_i)` with the induced differentials.
pub fn assemble_log_ls(d: &Diagram1) -> Result<LogLsComplex> {
    let mut terms = Vec::new();
    let mut leg_front = Vec::new();
    let mut leg_right = Vec::new();
    for i in 0..3 {
        let (l, la, lc) = pushout(&d.alpha[i], &d.beta[i]);
        terms.push(l);
        leg_front.push(la);
        leg_right.push(lc);
    }
    let diff = |i: usize| -> Result<ModHom> {
        let delta = differential(&d.front.complex, i);
        let dd = differential(&d.right, i);
        let cols = delta
            .columns
            .iter()
            .map(|c| leg_front[i - 1].apply(c))
            .chain(dd.columns.iter().map(|c| leg_right[i - 1].apply(c)))
            .collect();
        ModHom::new(terms[i].clone(), terms[i - 1].clone(), cols)
    };
    let complex = Complex3::new(diff(2)?, diff(1)?)?;
    Ok(LogLsComplex { complex, leg_front, leg_right })
}

/// The diagram and its log complex for one choice of factorization.
#[derive(Clone, Debug)]
pub struct LogPipeline {
    pub diagram: Diagram1,
    pub log: LogLsComplex,
}

impl LogPipeline {
    pub fn new(f: &PrelogMorphism, choices: Choices) -> Result<Self> {
        let diagram = build_diagram1(f, choices)?;
        let log = assemble_log_ls(&diagram)?;
        Ok(LogPipeline { diagram, log })
    }

    pub fn homology(&self, i: usize, t: &Coefficients) -> HomologyReport {
        self.log.complex.homology(i, t)
    }
}

/// `H_i` of the log complex of `f` with coefficients `t`.
pub fn log_homology(f: &PrelogMorphism, i: usize, t: &Coefficients) -> Result<HomologyReport> {
    Ok(LogPipeline::new(f, Choices::default())?.homology(i, t))
}

/// Log differentials `(Ω_{B|A} ⊕ B ⊗ N^gp/M^gp) / (dα(n) - α(n) ⊗ n)`,
/// presented on `dy` for the variables of `B` followed by the generators of `N`.
pub fn log_differentials(f: &PrelogMorphism) -> FpModule {
    let b = &f.target.algebra;
    let ring = &b.ring;
    let ny = ring.nvars();
    let n = &f.target.monoid;
    let nn = n.n_gens();
    let width = ny + nn;
    let d = |p: &Poly| -> Vector {
        let mut v: Vector = (0..ny).map(|y| b.normal_form(&ring.derivative(p, y))).collect();
        v.resize(width, Poly::zero());
        v
    };
    let int_vec = |e: &[i64]| -> Vector {
        let mut v = zero_vector(width);
        for (j, &x) in e.iter().enumerate() {
            v[ny + j] = ring.from_i64(x);
        }
        v
    };
    let mut rels: Vec<Vector> = Vec::new();
    rels.extend(b.ideal_gens.iter().map(d));
    rels.extend(f.ring_map.iter().map(d));
    for (a, c) in &n.relations {
        let e: Vec<i64> = a.iter().zip(c).map(|(&x, &y)| x as i64 - y as i64).collect();
        rels.push(int_vec(&e));
    }
    for img in &f.monoid_map.images {
        let e: Vec<i64> = img.iter().map(|&x| x as i64).collect();
        rels.push(int_vec(&e));
    }
    for (j, a) in f.target.alpha.iter().enumerate() {
        let mut v = d(a);
        v[ny + j] = ring.neg(a);
        rels.push(v);
    }
    FpModule::new(b.clone(), width, rels)
}

/// Log and classical homology side by side in degrees 0 to 2.
#[derive(Clone, Debug)]
pub struct StrictReport {
    pub log: Vec<HomologyReport>,
    pub classical: Vec<HomologyReport>,
}

impl StrictReport {
    pub fn passed(&self) -> bool {
        self.log.iter().zip(&self.classical).all(|(a, b)| a.proxy_eq(b))
    }
}

/// For a strict morphism, compares log homology with classical homology.
pub fn check_strict_reduction(f: &PrelogMorphism, t: &Coefficients) -> Result<StrictReport> {
    if !f.is_strict() {
        return Err(Error::Invalid("the monoid map is not an isomorphism".into()));
    }
    let pipe = LogPipeline::new(f, Choices::default())?;
    let log = (0..3).map(|i| pipe.homology(i, t)).collect();
    let classical = (0..3)
        .map(|i| aq_classical(&f.source.algebra, &f.target.algebra, &f.ring_map, i, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(StrictReport { log, classical })
}

/// Outcome of the compatibility checks between the log complex, the
/// classical complex and `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    /// `epsilon_0`, `epsilon_1` have an explicit retraction.
    pub split: [bool; 2],
    /// `coker(alpha_i)` and `coker(epsilon_i)` have equal proxies.
    pub cokernels: [bool; 3],
    /// `dim L_i = dim LS_i + dim D_i - dim back_i` for `i` in 0, 1; `None`
    /// when some term is infinite-dimensional.
    pub euler: [Option<bool>; 2],
}

impl CompatibilityReport {
    pub fn passed(&self) -> bool {
        self.split.iter().all(|&b| b) && self.cokernels.iter().all(|&b| b) && self.euler.iter().all(|e| e.unwrap_or(true))
    }
}

/// Runs the checks on the legs `epsilon_i` from `D` into the log complex.
pub fn check_compatibility_sequence(p: &LogPipeline) -> Result<CompatibilityReport> {
    let d = &p.diagram;
    let l = &p.log;
    let mut split = [false; 2];
    for (i, slot) in split.iter_mut().enumerate() {
        // r(a, c) = c + beta(s(a)) for the retraction s of alpha
        let eps = &l.leg_right[i];
        let s = d.alpha_retraction(i);
        let cols: Vec<Vector> = s
            .columns
            .iter()
            .map(|c| d.beta[i].apply(c))
            .chain((0..eps.source.n_gens).map(|j| unit_vector(&eps.source.over, eps.source.n_gens, j)))
            .collect();
        let r = ModHom::new(eps.target.clone(), eps.source.clone(), cols)?;
        *slot = eps.is_retracted_by(&r);
    }
    let mut cokernels = [false; 3];
    for (i, slot) in cokernels.iter_mut().enumerate() {
        let a = HomologyReport::of(&d.alpha[i].cokernel());
        let e = HomologyReport::of(&l.leg_right[i].cokernel());
        *slot = a.proxy_eq(&e);
    }
    let mut euler = [None; 2];
    for (i, slot) in euler.iter_mut().enumerate() {
        let dims = [
            term(&l.complex, i).dim_over_k(),
            term(&d.front.complex, i).dim_over_k(),
            term(&d.right, i).dim_over_k(),
            term(&d.back, i).dim_over_k(),
        ];
        if let [Dim::Finite(x), Dim::Finite(a), Dim::Finite(c), Dim::Finite(p)] = dims {
            *slot = Some(x + p == a + c);
        }
    }
    Ok(CompatibilityReport { split, cokernels, euler })
}
