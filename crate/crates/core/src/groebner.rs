//! Buchberger's algorithm for submodules of free modules `k[x]^r`, with
//! ideals as the rank-one case.
//!
//! Module elements are dense vectors of polynomials. Terms are compared
//! position-over-term: position 0 dominates position 1 and so on, and within
//! a position the ring's monomial order decides.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use crate::field::Scalar;
use crate::poly::{divides, mono_degree, mono_div, mono_lcm, weighted_degree, Monomial, MonomialOrder, Poly, PolyRing};

/// Element of a free module `k[x]^r`.
pub type Vector = Vec<Poly>;

pub fn zero_vector(rank: usize) -> Vector {
    vec![Poly::zero(); rank]
}

pub fn is_zero_vector(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

/// Leading position and term of a vector under position-over-term.
pub fn lead_term(v: &[Poly]) -> Option<(usize, &Monomial, &Scalar)> {
    v.iter().enumerate().find_map(|(i, p)| p.lead().map(|(m, c)| (i, m, c)))
}

fn cmp_lead(order: &MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    // lower position index is larger
    b.0.cmp(&a.0).then_with(|| order.cmp(a.1, b.1))
}

pub fn vec_add_scaled_shifted(ring: &PolyRing, a: &[Poly], c: &Scalar, m: &[u32], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| ring.add_scaled_shifted(x, c, Some(m), y)).collect()
}

pub fn vec_scale(ring: &PolyRing, a: &[Poly], c: &Scalar) -> Vector {
    a.iter().map(|x| ring.scale(x, c)).collect()
}

pub fn vec_mul_poly(ring: &PolyRing, f: &Poly, a: &[Poly]) -> Vector {
    a.iter().map(|x| ring.mul(f, x)).collect()
}

pub fn vec_add(ring: &PolyRing, a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect()
}

pub fn vec_sub(ring: &PolyRing, a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| ring.sub(x, y)).collect()
}

fn vec_monic(ring: &PolyRing, v: &[Poly]) -> Vector {
    match lead_term(v) {
        Some((_, _, c)) if !c.is_one() => vec_scale(ring, v, &c.inv()),
        _ => v.to_vec(),
    }
}

/// Full reduction (normal form) of `v` by `basis`. The basis need not be a
/// Gröbner basis; the result is then a remainder, not a normal form.
pub fn reduce_vector(ring: &PolyRing, v: &[Poly], basis: &[Vector]) -> Vector {
    let leads: Vec<_> = basis.iter().map(|b| lead_term(b).map(|(p, m, c)| (p, m.clone(), c.clone()))).collect();
    let mut f = v.to_vec();
    let mut rem = zero_vector(v.len());
    while let Some((pos, m, c)) = lead_term(&f).map(|(p, m, c)| (p, m.clone(), c.clone())) {
        let hit = leads.iter().enumerate().find_map(|(k, l)| match l {
            Some((lp, lm, lc)) if *lp == pos && divides(lm, &m) => Some((k, lm, lc)),
            _ => None,
        });
        match hit {
            Some((k, lm, lc)) => {
                let shift = mono_div(&m, lm);
                let q = -&(&c * &lc.inv());
                f = vec_add_scaled_shifted(ring, &f, &q, &shift, &basis[k]);
            }
            None => {
                let t = f[pos].terms.remove(0);
                rem[pos].terms.push(t);
            }
        }
    }
    rem
}

fn s_vector(ring: &PolyRing, a: &[Poly], b: &[Poly]) -> Option<Vector> {
    let (pa, ma, ca) = lead_term(a)?;
    let (pb, mb, cb) = lead_term(b)?;
    if pa != pb {
        return None;
    }
    let l = mono_lcm(ma, mb);
    let sa = mono_div(&l, ma);
    let sb = mono_div(&l, mb);
    let left = vec_add_scaled_shifted(ring, &zero_vector(a.len()), &ca.inv(), &sa, a);
    Some(vec_add_scaled_shifted(ring, &left, &-&cb.inv(), &sb, b))
}

/// Reduced Gröbner basis of the submodule of `k[x]^rank` generated by
/// `gens`, sorted by descending leading term.
pub fn groebner_module(ring: &PolyRing, rank: usize, gens: &[Vector]) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    let mut live: Vec<bool> = Vec::new();

    let push = |v: Vector, basis: &mut Vec<Vector>, pending: &mut Vec<(usize, usize)>, pending_set: &mut HashSet<(usize, usize)>, live: &mut Vec<bool>| {
        let v = vec_monic(ring, &v);
        let new = basis.len();
        let (np, nm, _) = lead_term(&v).unwrap();
        let (np, nm) = (np, nm.clone());
        for (k, b) in basis.iter().enumerate() {
            if !live[k] {
                continue;
            }
            let (bp, bm, _) = lead_term(b).unwrap();
            if bp != np {
                continue;
            }
            // product criterion is only sound for ideals
            if rank == 1 && bm.iter().zip(&nm).all(|(x, y)| *x == 0 || *y == 0) {
                continue;
            }
            pending.push((k, new));
            pending_set.insert((k, new));
        }
        basis.push(v);
        live.push(true);
    };

    for g in gens {
        assert_eq!(g.len(), rank, "generator of wrong rank");
        let r = reduce_vector(ring, g, &basis);
        if !is_zero_vector(&r) {
            push(r, &mut basis, &mut pending, &mut pending_set, &mut live);
        }
    }

    while !pending.is_empty() {
        // normal selection strategy: smallest lcm degree, then position, then indices
        let idx = (0..pending.len())
            .min_by(|&x, &y| {
                let key = |(i, j): (usize, usize)| {
                    let (p, mi, _) = lead_term(&basis[i]).unwrap();
                    let (_, mj, _) = lead_term(&basis[j]).unwrap();
                    (mono_degree(&mono_lcm(mi, mj)), p, i, j)
                };
                key(pending[x]).cmp(&key(pending[y]))
            })
            .unwrap();
        let (i, j) = pending.swap_remove(idx);
        pending_set.remove(&(i, j));

        // chain criterion
        let (pi, mi, _) = lead_term(&basis[i]).unwrap();
        let (_, mj, _) = lead_term(&basis[j]).unwrap();
        let l = mono_lcm(mi, mj);
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (pk, mk, _) = lead_term(&basis[k]).unwrap();
            pk == pi
                && divides(mk, &l)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let Some(s) = s_vector(ring, &basis[i], &basis[j]) else { continue };
        let r = reduce_vector(ring, &s, &basis);
        if !is_zero_vector(&r) {
            push(r, &mut basis, &mut pending, &mut pending_set, &mut live);
        }
    }

    interreduce(ring, basis)
}

fn interreduce(ring: &PolyRing, basis: Vec<Vector>) -> Vec<Vector> {
    // drop elements whose leading term is divisible by another's
    let leads: Vec<(usize, Monomial)> = basis.iter().map(|b| {
        let (p, m, _) = lead_term(b).unwrap();
        (p, m.clone())
    }).collect();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i
                && leads[j].0 == leads[i].0
                && divides(&leads[j].1, &leads[i].1)
                && (leads[j].1 != leads[i].1 || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Vector> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut out: Vec<Vector> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Vector> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        // keep the leading term, reduce the tail
        let v = &minimal[i];
        let (p, m, c) = lead_term(v).unwrap();
        let mut tail = v.clone();
        tail[p].terms.remove(0);
        let mut r = reduce_vector(ring, &tail, &others);
        r[p] = ring.add(&r[p], &ring.monomial(m.clone(), c.clone()));
        out.push(vec_monic(ring, &r));
    }
    out.sort_by(|a, b| {
        let (pa, ma, _) = lead_term(a).unwrap();
        let (pb, mb, _) = lead_term(b).unwrap();
        cmp_lead(&ring.order, (pb, mb), (pa, ma))
    });
    out
}

/// Reduced Gröbner basis of an ideal.
pub fn buchberger(ring: &PolyRing, gens: &[Poly]) -> Vec<Poly> {
    let vs: Vec<Vector> = gens.iter().filter(|p| !p.is_zero()).map(|p| vec![p.clone()]).collect();
    groebner_module(ring, 1, &vs).into_iter().map(|mut v| v.remove(0)).collect()
}

pub fn normal_form(ring: &PolyRing, p: &Poly, gb: &[Poly]) -> Poly {
    let vs: Vec<Vector> = gb.iter().map(|g| vec![g.clone()]).collect();
    reduce_vector(ring, std::slice::from_ref(p), &vs).remove(0)
}

/// Division with remainder: `p = sum q_i d_i + r`. Quotients are tracked so
/// that membership can be turned into explicit coefficients.
pub fn divide(ring: &PolyRing, p: &Poly, divisors: &[Poly]) -> (Vec<Poly>, Poly) {
    let mut q = vec![Poly::zero(); divisors.len()];
    let mut f = p.clone();
    let mut rem = Poly::zero();
    while let Some((m, c)) = f.lead().cloned() {
        let hit = divisors.iter().enumerate().find(|(_, d)| d.lead_mono().is_some_and(|dm| divides(dm, &m)));
        match hit {
            Some((k, d)) => {
                let (dm, dc) = d.lead().unwrap();
                let shift = mono_div(&m, dm);
                let coef = &c * &dc.inv();
                q[k] = ring.add(&q[k], &ring.monomial(shift.clone(), coef.clone()));
                f = ring.add_scaled_shifted(&f, &-&coef, Some(&shift), d);
            }
            None => {
                let t = f.terms.remove(0);
                rem.terms.push(t);
            }
        }
    }
    (q, rem)
}

/// Syzygies of `vectors` in `k[x]^rank`: generators of
/// `{ c : sum c_i v_i = 0 }`, computed from a Gröbner basis of the graph
/// `(v_i, e_i)` with the original coordinates dominating.
pub fn syzygies(ring: &PolyRing, rank: usize, vectors: &[Vector]) -> Vec<Vector> {
    let m = vectors.len();
    if m == 0 {
        return Vec::new();
    }
    let aug: Vec<Vector> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut a = v.clone();
            a.extend((0..m).map(|j| if i == j { ring.one() } else { Poly::zero() }));
            a
        })
        .collect();
    groebner_module(ring, rank + m, &aug)
        .into_iter()
        .filter(|g| g[..rank].iter().all(Poly::is_zero))
        .map(|g| g[rank..].to_vec())
        .collect()
}

/// A quotient `k[x]/I` with its reduced Gröbner basis computed up front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAlgebra {
    pub ring: PolyRing,
    pub ideal_gens: Vec<Poly>,
    pub gb: Vec<Poly>,
    /// Positive weight per variable.
    pub weights: Vec<u32>,
}

impl PresentedAlgebra {
    pub fn new(ring: PolyRing, ideal_gens: Vec<Poly>) -> Arc<Self> {
        let n = ring.nvars();
        Self::with_weights(ring, ideal_gens, vec![1; n])
    }

    pub fn with_weights(ring: PolyRing, ideal_gens: Vec<Poly>, weights: Vec<u32>) -> Arc<Self> {
        assert_eq!(weights.len(), ring.nvars());
        let gb = buchberger(&ring, &ideal_gens);
        Arc::new(PresentedAlgebra { ring, ideal_gens, gb, weights })
    }

    pub fn polynomial(ring: PolyRing) -> Arc<Self> {
        Self::new(ring, Vec::new())
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        normal_form(&self.ring, p, &self.gb)
    }

    pub fn is_zero(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gb.iter().any(Poly::is_unit)
    }

    /// True when every ideal generator is homogeneous for the weights.
    pub fn is_graded(&self) -> bool {
        self.ideal_gens.iter().all(|g| g.is_zero() || g.homogeneous_degree(&self.weights).is_some())
    }

    pub fn weighted_degree(&self, m: &[u32]) -> i64 {
        weighted_degree(m, &self.weights)
    }
}

/// Graph ring `k[x, y]` with `x` eliminated first, and the reduced Gröbner
/// basis of `(y_i - f_i(x)) + I_tgt + I_src`.
fn graph_basis(source: &PresentedAlgebra, target: &PresentedAlgebra, images: &[Poly]) -> (PolyRing, Vec<Poly>) {
    let nx = target.ring.nvars();
    let ny = source.ring.nvars();
    assert_eq!(images.len(), ny);
    let names: Vec<String> = target
        .ring
        .names
        .iter()
        .map(|n| format!("_t_{n}"))
        .chain(source.ring.names.iter().cloned())
        .collect();
    let graph = PolyRing::new(source.ring.field, names, MonomialOrder::Block(nx));
    let x_in: Vec<usize> = (0..nx).collect();
    let y_in: Vec<usize> = (nx..nx + ny).collect();
    let mut gens: Vec<Poly> = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let y = graph.var(y_in[i]);
        let f = target.ring.reindex(img, &x_in, &graph);
        gens.push(graph.sub(&y, &f));
    }
    for g in &target.gb {
        gens.push(target.ring.reindex(g, &x_in, &graph));
    }
    for g in &source.gb {
        gens.push(source.ring.reindex(g, &y_in, &graph));
    }
    let gb = buchberger(&graph, &gens);
    (graph, gb)
}

fn free_of_first(p: &Poly, nx: usize) -> bool {
    p.terms.iter().all(|(m, _)| m[..nx].iter().all(|&e| e == 0))
}

/// Kernel of `k[y]/I_src -> k[x]/I_tgt`, `y_i -> images[i]`, as the reduced
/// Gröbner basis (in the source order) of its preimage in `k[y]`. Computed by
/// eliminating `x` from the graph ideal `(y_i - f_i(x)) + I_tgt`.
pub fn algebra_map_kernel(source: &PresentedAlgebra, target: &PresentedAlgebra, images: &[Poly]) -> Vec<Poly> {
    let nx = target.ring.nvars();
    let (graph, gb) = graph_basis(source, target, images);
    let back: Vec<usize> = (0..graph.nvars()).map(|i| i.saturating_sub(nx)).collect();
    let elim: Vec<Poly> = gb
        .iter()
        .filter(|g| free_of_first(g, nx))
        .map(|g| graph.reindex(g, &back, &source.ring))
        .collect();
    buchberger(&source.ring, &elim)
}

/// A preimage of each `targets[k]` under the algebra map, or `None` for the
/// first element outside the image.
pub fn algebra_map_preimages(
    source: &PresentedAlgebra,
    target: &PresentedAlgebra,
    images: &[Poly],
    targets: &[Poly],
) -> Option<Vec<Poly>> {
    let nx = target.ring.nvars();
    let (graph, gb) = graph_basis(source, target, images);
    let x_in: Vec<usize> = (0..nx).collect();
    let back: Vec<usize> = (0..graph.nvars()).map(|i| i.saturating_sub(nx)).collect();
    targets
        .iter()
        .map(|p| {
            let r = normal_form(&graph, &target.ring.reindex(p, &x_in, &graph), &gb);
            free_of_first(&r, nx).then(|| source.normal_form(&graph.reindex(&r, &back, &source.ring)))
        })
        .collect()
}
