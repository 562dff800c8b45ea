//! Independent oracles: degree-truncated linear algebra for Gröbner bases
//! and syzygies, and the defining identities of the Smith normal form.
#![allow(dead_code)]

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logls_core::exactlinalg::{field_kernel, field_solve, snf, FieldMatrix, IntMatrix};
use logls_core::field::{Field, Scalar};
use logls_core::groebner::{buchberger, groebner_module, is_zero_vector, normal_form, reduce_vector, syzygies, Vector};
use logls_core::poly::{divides, Monomial, MonomialOrder, Poly, PolyRing};

/// Forms are compared up to this degree.
pub const TOP: u32 = 6;


fn monomials(nv: usize, d: u32) -> Vec<Monomial> {
    if nv == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=d).rev() {
        for mut rest in monomials(nv - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

fn coords(p: &Poly, basis: &[Monomial], field: Field) -> Vec<Scalar> {
    let mut v = vec![field.zero(); basis.len()];
    for (m, c) in &p.terms {
        let i = basis.iter().position(|b| b == m).expect("homogeneous of the expected degree");
        v[i] = c.clone();
    }
    v
}

fn degree(p: &Poly) -> u32 {
    p.total_degree().unwrap() as u32
}

/// Products `m * g_i` of degree exactly `d`, tagged with `i` and `m`.
fn products(ring: &PolyRing, gens: &[Poly], d: u32) -> Vec<(usize, Monomial, Poly)> {
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let dg = degree(g);
        if dg > d {
            continue;
        }
        for m in monomials(ring.nvars(), d - dg) {
            out.push((i, m.clone(), ring.mul_term(g, &m, &ring.field.one())));
        }
    }
    out
}

pub fn ideals() -> Vec<(Vec<&'static str>, Vec<&'static str>)> {
    vec![
        (vec!["x", "y"], vec!["x^2", "x*y"]),
        (vec!["x", "y"], vec!["x^2", "y^3"]),
        (vec!["x", "y", "z"], vec!["x^2 - y*z", "x*y - z^2"]),
        (vec!["x", "y", "z"], vec!["x*y", "y*z", "x*z"]),
        (vec!["x", "y", "z"], vec!["x^3 + y^3 + z^3", "x*y*z"]),
        (vec!["x", "y", "z", "w"], vec!["x*z - y^2", "x*w - y*z", "y*w - z^2"]),
    ]
}

pub fn fields() -> Vec<Field> {
    vec![Field::Rationals, Field::prime(2).unwrap(), Field::prime(5).unwrap()]
}

/// Normal-form-zero forms coincide with the span of the products `m * g`.
pub fn check_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for field in fields() {
        for (names, gens) in ideals() {
            let ring = PolyRing::new(field, names.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex);
            let gens: Vec<Poly> = gens.iter().map(|g| ring.parse(g).unwrap()).collect();
            let gb = buchberger(&ring, &gens);
            for d in 0..=TOP {
                let basis = monomials(ring.nvars(), d);
                let prods = products(&ring, &gens, d);
                let cols: Vec<Vec<Scalar>> = prods.iter().map(|(_, _, p)| coords(p, &basis, field)).collect();
                let span_rank = if cols.is_empty() { 0 } else { FieldMatrix::from_columns(field, basis.len(), cols.clone()).rank() };
                // NF-zero forms of degree d have dimension #(non-standard monomials)
                let nonstandard = basis.iter().filter(|m| gb.iter().any(|g| divides(g.lead_mono().unwrap(), m))).count();
                assert_eq!(span_rank, nonstandard, "{names:?} {field} degree {d}");
                for (_, _, p) in &prods {
                    assert!(normal_form(&ring, p, &gb).is_zero());
                }
                // random forms: NF zero iff in the span
                for trial in 0..6 {
                    let mut p = Poly::zero();
                    if trial % 2 == 0 && !prods.is_empty() {
                        for (_, _, q) in &prods {
                            p = ring.add(&p, &ring.scale(q, &field.from_i64(rng.gen_range(-3..=3))));
                        }
                    }
                    if trial >= 2 {
                        let m = basis[rng.gen_range(0..basis.len())].clone();
                        p = ring.add(&p, &ring.monomial(m, field.from_i64(rng.gen_range(1..=4))));
                    }
                    let in_span = !cols.is_empty()
                        && field_solve(&FieldMatrix::from_columns(field, basis.len(), cols.clone()), &coords(&p, &basis, field)).is_some();
                    let in_span = in_span || p.is_zero();
                    assert_eq!(normal_form(&ring, &p, &gb).is_zero(), in_span, "{names:?} {field} degree {d}");
                }
            }
        }
    }
}

/// Every degree-truncated syzygy lies in the computed syzygy module.
pub fn check_syzygy_completeness() {
    for field in fields() {
        for (names, gens) in ideals() {
            let ring = PolyRing::new(field, names.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex);
            let gens: Vec<Poly> = gens.iter().map(|g| ring.parse(g).unwrap()).collect();
            let vecs: Vec<Vector> = gens.iter().map(|g| vec![g.clone()]).collect();
            let syz = syzygies(&ring, 1, &vecs);
            for s in &syz {
                let total = s.iter().zip(&gens).fold(Poly::zero(), |acc, (c, g)| ring.add(&acc, &ring.mul(c, g)));
                assert!(total.is_zero(), "not a syzygy");
            }
            let syz_gb = groebner_module(&ring, gens.len(), &syz);
            for d in 0..=TOP {
                let basis = monomials(ring.nvars(), d);
                let prods = products(&ring, &gens, d);
                if prods.is_empty() {
                    continue;
                }
                let cols: Vec<Vec<Scalar>> = prods.iter().map(|(_, _, p)| coords(p, &basis, field)).collect();
                let kernel = field_kernel(&FieldMatrix::from_columns(field, basis.len(), cols));
                for j in 0..kernel.cols() {
                    let k = kernel.column(j);
                    let mut v: Vector = vec![Poly::zero(); gens.len()];
                    for ((i, m, _), c) in prods.iter().zip(&k) {
                        if !c.is_zero() {
                            v[*i] = ring.add(&v[*i], &ring.monomial(m.clone(), c.clone()));
                        }
                    }
                    let r = reduce_vector(&ring, &v, &syz_gb);
                    assert!(is_zero_vector(&r), "{names:?} {field} degree {d}: syzygy outside the computed module");
                }
            }
        }
    }
}

/// `U A V = D`, unimodularity, and the divisibility chain.
pub fn check_snf(a: &IntMatrix) {
    let s = snf(a);
    assert_eq!(s.u.mul(a).mul(&s.v), s.d, "U A V != D for {a:?}");
    assert!(s.u.det().abs().is_one(), "U not unimodular");
    assert!(s.v.det().abs().is_one(), "V not unimodular");
    let r = s.invariant_factors.len();
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            let x = s.d.get(i, j);
            if i != j {
                assert!(x.is_zero());
            } else if i < r {
                assert_eq!(x, &s.invariant_factors[i]);
                assert!(x.is_positive());
            } else {
                assert!(x.is_zero());
            }
        }
    }
    for w in s.invariant_factors.windows(2) {
        assert!(w[1].is_multiple_of(&w[0]), "divisibility fails: {:?}", s.invariant_factors);
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=5);
    let cols = rng.gen_range(1..=5);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    IntMatrix::from_rows(cols, &data)
}

/// Checks `count` seeded random matrices of size at most 5 x 5.
pub fn check_random_snf(count: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..count {
        check_snf(&random_matrix(&mut rng));
    }
}
