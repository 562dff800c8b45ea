#![allow(dead_code)]

use std::sync::Arc;

use logls_core::field::Field;
use logls_core::groebner::PresentedAlgebra;
use logls_core::monoids::{FpMonoid, MonoidHom, PrelogMorphism, PrelogRing};
use logls_core::poly::{MonomialOrder, PolyRing};

pub fn alg(field: Field, names: &[&str], rels: &[&str]) -> Arc<PresentedAlgebra> {
    let ring = PolyRing::new(field, names.iter().map(|s| s.to_string()).collect(), MonomialOrder::DegRevLex);
    let gens = rels.iter().map(|r| ring.parse(r).unwrap()).collect();
    PresentedAlgebra::new(ring, gens)
}

pub fn monoid(gens: &[&str], rels: &[(Vec<u32>, Vec<u32>)]) -> FpMonoid {
    FpMonoid::new(gens.iter().map(|s| s.to_string()).collect(), rels.to_vec()).unwrap()
}

/// A ring side of a morphism: variables, relations, monoid, alpha.
pub struct Side<'a> {
    pub vars: &'a [&'a str],
    pub rels: &'a [&'a str],
    pub monoid: FpMonoid,
    pub alpha: &'a [&'a str],
}

pub fn morphism(field: Field, a: Side, b: Side, ring_map: &[&str], images: Vec<Vec<u32>>) -> PrelogMorphism {
    let aa = alg(field, a.vars, a.rels);
    let ba = alg(field, b.vars, b.rels);
    let pa = a.alpha.iter().map(|s| aa.ring.parse(s).unwrap()).collect();
    let pb = b.alpha.iter().map(|s| ba.ring.parse(s).unwrap()).collect();
    let rm = ring_map.iter().map(|s| ba.ring.parse(s).unwrap()).collect();
    let src = PrelogRing::new(aa, a.monoid.clone(), pa).unwrap();
    let tgt = PrelogRing::new(ba, b.monoid.clone(), pb).unwrap();
    PrelogMorphism::new(src, tgt, rm, MonoidHom::new(a.monoid, b.monoid, images).unwrap()).unwrap()
}

/// A named collection of log morphisms over the given field.
pub fn log_instances(field: Field) -> Vec<(&'static str, PrelogMorphism)> {
    let nat = || monoid(&["n"], &[]);
    let triv = FpMonoid::trivial;
    let mut out = Vec::new();
    out.push((
        "log point",
        morphism(field, Side { vars: &[], rels: &[], monoid: triv(), alpha: &[] }, Side { vars: &[], rels: &[], monoid: nat(), alpha: &["0"] }, &[], vec![]),
    ));
    out.push((
        "log line",
        morphism(field, Side { vars: &[], rels: &[], monoid: triv(), alpha: &[] }, Side { vars: &["t"], rels: &[], monoid: nat(), alpha: &["t"] }, &[], vec![]),
    ));
    out.push((
        "strict identity",
        morphism(
            field,
            Side { vars: &["t"], rels: &[], monoid: nat(), alpha: &["t"] },
            Side { vars: &["t"], rels: &[], monoid: nat(), alpha: &["t"] },
            &["t"],
            vec![vec![1]],
        ),
    ));
    out.push((
        "strict double point",
        morphism(
            field,
            Side { vars: &["t"], rels: &[], monoid: nat(), alpha: &["t"] },
            Side { vars: &["t"], rels: &["t^2"], monoid: nat(), alpha: &["t"] },
            &["t"],
            vec![vec![1]],
        ),
    ));
    out.push((
        "square map of lines",
        morphism(
            field,
            Side { vars: &["u"], rels: &[], monoid: monoid(&["a"], &[]), alpha: &["u"] },
            Side { vars: &["t"], rels: &[], monoid: nat(), alpha: &["t"] },
            &["t^2"],
            vec![vec![2]],
        ),
    ));
    out.push((
        "two lines to one",
        morphism(
            field,
            Side { vars: &["u", "v"], rels: &[], monoid: monoid(&["a", "b"], &[]), alpha: &["u", "v"] },
            Side { vars: &["t"], rels: &[], monoid: nat(), alpha: &["t"] },
            &["t", "t"],
            vec![vec![1], vec![1]],
        ),
    ));
    out.push((
        "torsion monoid to a fat point",
        morphism(
            field,
            Side { vars: &[], rels: &[], monoid: monoid(&["a", "b"], &[(vec![2, 0], vec![0, 2])]), alpha: &["1", "1"] },
            Side { vars: &["s"], rels: &["s^2"], monoid: nat(), alpha: &["1"] },
            &[],
            vec![vec![1], vec![1]],
        ),
    ));
    out.push((
        "node",
        morphism(
            field,
            Side { vars: &["t"], rels: &[], monoid: monoid(&["a"], &[]), alpha: &["t"] },
            Side { vars: &["x", "y"], rels: &[], monoid: monoid(&["p", "q"], &[]), alpha: &["x", "y"] },
            &["x*y"],
            vec![vec![1, 1]],
        ),
    ));
    out.push((
        "cone point",
        morphism(
            field,
            Side { vars: &[], rels: &[], monoid: triv(), alpha: &[] },
            Side { vars: &["x", "y", "z"], rels: &["x*y - z^2"], monoid: monoid(&["p", "q", "r"], &[(vec![1, 1, 0], vec![0, 0, 2])]), alpha: &["x", "y", "z"] },
            &[],
            vec![],
        ),
    ));
    out
}
