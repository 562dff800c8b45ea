//! Finitely presented abelian groups and their homomorphisms.
//!
//! A group is an explicit generating set together with an integer relation
//! matrix whose rows are relations. A homomorphism is an integer matrix of
//! shape `target.n_gens × source.n_gens` acting on column vectors.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlinalg::{int_kernel, int_solve, lattice_basis, snf, IntMatrix};

/// A k-dimension that may be infinite. `0 · ∞ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn is_finite(&self) -> bool {
        matches!(self, Dim::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Dim::Finite(n) => Some(*n),
            Dim::Infinite => None,
        }
    }
}

impl Add for Dim {
    type Output = Dim;
    fn add(self, rhs: Dim) -> Dim {
        match (self, rhs) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
            _ => Dim::Infinite,
        }
    }
}

impl Mul<u64> for Dim {
    type Output = Dim;
    fn mul(self, rhs: u64) -> Dim {
        match self {
            Dim::Finite(a) => Dim::Finite(a * rhs),
            Dim::Infinite if rhs == 0 => Dim::Finite(0),
            Dim::Infinite => Dim::Infinite,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpAbGroup {
    pub n_gens: usize,
    /// One row per relation, `n_gens` columns.
    pub relations: IntMatrix,
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FpAbGroup {
    pub fn new(n_gens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.cols(), n_gens, "relation width must equal generator count");
        let s = snf(&relations);
        let rank = n_gens - s.rank();
        let torsion = s.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect();
        FpAbGroup { n_gens, relations, rank, torsion }
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(0, n))
    }

    pub fn from_relation_rows(n_gens: usize, rows: &[Vec<BigInt>]) -> Self {
        Self::new(n_gens, IntMatrix::from_rows(n_gens, rows))
    }

    /// `(free rank, torsion factors d_1 | d_2 | ...)`, all factors > 1.
    pub fn invariants(&self) -> (usize, Vec<BigInt>) {
        (self.rank, self.torsion.clone())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of torsion factors divisible by the characteristic (never for 0).
    pub fn torsion_count_divisible_by(&self, char: u32) -> u64 {
        if char == 0 {
            return 0;
        }
        let p = BigInt::from(char);
        self.torsion.iter().filter(|d| (*d % &p).is_zero()).count() as u64
    }

    /// Whether `v` is zero in the group, i.e. lies in the row lattice of the relations.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        int_solve(&self.relations.transpose(), v).is_some()
    }
}

impl fmt::Display for FpAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".into() } else { format!("Z^{}", self.rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub source: FpAbGroup,
    pub target: FpAbGroup,
    /// `target.n_gens × source.n_gens`.
    pub matrix: IntMatrix,
}

impl AbHom {
    /// Builds a homomorphism, checking that every source relation maps into
    /// the relation lattice of the target.
    pub fn new(source: FpAbGroup, target: FpAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.n_gens || matrix.cols() != source.n_gens {
            return Err(Error::Invalid(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.n_gens,
                source.n_gens
            )));
        }
        for i in 0..source.relations.rows() {
            let img = matrix.mul_vec(&source.relations.row(i));
            if !target.is_zero_element(&img) {
                return Err(Error::Invalid(format!("homomorphism does not respect relation {}", i + 1)));
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        AbHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    /// Kernel with its inclusion into the source. Generators are a lattice
    /// basis of the preimage of the target relations; relations are the
    /// coordinates of the source relations in that basis.
    pub fn kernel(&self) -> (FpAbGroup, AbHom) {
        let ns = self.source.n_gens;
        let rt = self.target.relations.transpose();
        let neg_rt = IntMatrix::from_columns(
            rt.rows(),
            &rt.columns().into_iter().map(|c| c.into_iter().map(|x| -x).collect()).collect::<Vec<_>>(),
        );
        let k = int_kernel(&self.matrix.hstack(&neg_rt));
        let projected = IntMatrix::from_columns(ns, &k.columns().into_iter().map(|c| c[..ns].to_vec()).collect::<Vec<_>>());
        let basis = lattice_basis(&projected);
        let rel_rows: Vec<Vec<BigInt>> = (0..self.source.relations.rows())
            .map(|i| int_solve(&basis, &self.source.relations.row(i)).expect("source relations lie in the kernel lattice"))
            .collect();
        let kernel = FpAbGroup::from_relation_rows(basis.cols(), &rel_rows);
        let inclusion = AbHom { source: kernel.clone(), target: self.source.clone(), matrix: basis };
        (kernel, inclusion)
    }

    pub fn cokernel(&self) -> FpAbGroup {
        let mut rows = self.target.relations.to_rows();
        rows.extend(self.matrix.columns());
        FpAbGroup::from_relation_rows(self.target.n_gens, &rows)
    }

    /// The image as a subgroup of the target, i.e. the cokernel of the kernel inclusion.
    pub fn image(&self) -> FpAbGroup {
        let (_, inc) = self.kernel();
        let mut rows = self.source.relations.to_rows();
        rows.extend(inc.matrix.columns());
        FpAbGroup::from_relation_rows(self.source.n_gens, &rows)
    }
}

/// `dim_k (T ⊗_Z g)` for a k-vector space `T` of dimension `t_dim`.
pub fn tensor_dim_over_field(g: &FpAbGroup, t_dim: Dim, char: u32) -> Dim {
    t_dim * (g.rank() as u64 + g.torsion_count_divisible_by(char))
}

/// `dim_k Tor_1^Z(T, g)` for a k-vector space `T` of dimension `t_dim`.
pub fn tor1_dim_over_field(g: &FpAbGroup, t_dim: Dim, char: u32) -> Dim {
    t_dim * g.torsion_count_divisible_by(char)
}
