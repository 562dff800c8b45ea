//! The auxiliary complex `K = T ⊗ (W1 -> Q1 -> P0^gp/M^gp)` and its closed-form
//! homology in terms of `ker` and `coker` of `M^gp -> N^gp`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::abgroup::{tensor_dim_over_field, tor1_dim_over_field, AbHom, Dim, FpAbGroup};
use crate::error::{Error, Result};
use crate::exactlinalg::{int_solve, lattice_basis, IntMatrix};
use crate::fpmodule::{Coefficients, Complex3, FpModule, ModHom};
use crate::groebner::{PresentedAlgebra, Vector};
use crate::monoids::{FactorizationData, MonoidHom};
use crate::poly::Poly;

/// The integer data behind `K`.
#[derive(Clone, Debug)]
pub struct KData {
    pub w0: FpAbGroup,
    /// Columns are the chosen generators of `W0` in the generators of `P0^gp`.
    pub w0_inclusion: AbHom,
    /// `Q1` is free on the generators of `W0`; this is its rank.
    pub q1_rank: usize,
    /// Columns are a basis of `W1 = ker(Q1 -> W0)`, in `Q1` coordinates.
    pub w1_basis: IntMatrix,
    /// `Q1 -> P0^gp/M^gp = Z^X`, the `X` coordinates of the `W0` generators.
    pub d1: IntMatrix,
}

impl KData {
    pub fn new(fd: &FactorizationData) -> KData {
        let (w0, inc) = fd.h.gp().kernel();
        let q = w0.n_gens;
        let w1_basis = lattice_basis(&w0.relations.transpose());
        let nm = fd.morphism.source.monoid.n_gens();
        let nx = fd.x_targets.len();
        let mut d1 = IntMatrix::zeros(nx, q);
        for j in 0..q {
            for i in 0..nx {
                d1.set(i, j, inc.matrix.get(nm + i, j).clone());
            }
        }
        KData { w0, w0_inclusion: inc, q1_rank: q, w1_basis, d1 }
    }

    /// Coordinates in `Q1` of an element of `W0` given in `P0^gp` generators.
    pub fn q1_coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        int_solve(&self.w0_inclusion.matrix, v)
    }

    pub fn w1_rank(&self) -> usize {
        self.w1_basis.cols()
    }

    /// The complex `B ⊗ W1 -> B ⊗ Q1 -> B ⊗ Z^X` over `b`.
    pub fn complex(&self, b: &Arc<PresentedAlgebra>) -> Result<Complex3> {
        let c2 = FpModule::free(b.clone(), self.w1_rank());
        let c1 = FpModule::free(b.clone(), self.q1_rank);
        let c0 = FpModule::free(b.clone(), self.d1.rows());
        let d2 = ModHom::new(c2, c1.clone(), int_columns(b, &self.w1_basis))?;
        let d1 = ModHom::new(c1, c0, int_columns(b, &self.d1))?;
        Complex3::new(d2, d1)
    }
}

pub(crate) fn int_columns(b: &PresentedAlgebra, m: &IntMatrix) -> Vec<Vector> {
    let field = b.ring.field;
    m.columns()
        .iter()
        .map(|c| c.iter().map(|x| b.ring.constant(field.from_bigint(x))).collect::<Vec<Poly>>())
        .collect()
}

/// `K` with coefficients `t`, as a complex of modules over the target algebra.
pub fn build_k(fd: &FactorizationData, t: &Coefficients) -> Result<Complex3> {
    let b = &fd.morphism.target.algebra;
    Ok(KData::new(fd).complex(b)?.tensor(t))
}

/// Dimensions `(h0, h1, h2)` of `H_i(K)` for a k-vector space `T` of
/// dimension `t_dim`, from `ker` and `coker` of `M^gp -> N^gp` alone.
pub fn closed_form_dims(f: &MonoidHom, t_dim: Dim, char: u32) -> (Dim, Dim, Dim) {
    let g = f.gp();
    let (ker, _) = g.kernel();
    let coker = g.cokernel();
    let h0 = tensor_dim_over_field(&coker, t_dim, char);
    let h1 = tensor_dim_over_field(&ker, t_dim, char) + tor1_dim_over_field(&coker, t_dim, char);
    let h2 = tor1_dim_over_field(&ker, t_dim, char);
    (h0, h1, h2)
}

/// Outcome of comparing the direct homology of `K` with the closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop12Report {
    pub direct: (Dim, Dim, Dim),
    pub closed: (Dim, Dim, Dim),
}

impl Prop12Report {
    pub fn passed(&self) -> bool {
        self.direct == self.closed
    }
}

/// Computes `H_i(K)` directly and through the closed forms. `T` must be
/// finite-dimensional over k.
pub fn check_prop12(fd: &FactorizationData, t: &Coefficients) -> Result<Prop12Report> {
    let b = &fd.morphism.target.algebra;
    let t_dim = t.module(b).dim_over_k();
    if !t_dim.is_finite() {
        return Err(Error::Unsupported("the coefficient module must be finite-dimensional".into()));
    }
    let k = build_k(fd, t)?;
    let dims: Vec<Dim> = (0..3).map(|i| k.homology(i, &Coefficients::Algebra).k_dim).collect();
    let direct = (dims[0], dims[1], dims[2]);
    let closed = closed_form_dims(&fd.morphism.monoid_map, t_dim, b.ring.field.characteristic());
    Ok(Prop12Report { direct, closed })
}
