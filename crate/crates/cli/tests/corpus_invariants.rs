//! Invariants that must hold on every corpus instance.

use std::path::Path;

use logls_cli::corpus::{load_corpus, CorpusEntry};
use logls_core::abgroup::Dim;
use logls_core::fpmodule::{Coefficients, FpModule, HomologyReport};
use logls_core::kcomplex::KData;
use logls_core::logls::{log_differentials, LogPipeline};
use logls_core::logsurj::{a_mod_a2, conormal_module, tor_over_c, w_terms, LogSurjection};
use logls_core::monoids::{choose_log_factorization, Choices};

fn corpus() -> Vec<CorpusEntry> {
    load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")).unwrap()
}

#[test]
fn factorizations_are_witnessed_surjections() {
    for e in corpus() {
        let f = &e.spec.morphism;
        for choices in [Choices::default(), Choices::alternative()] {
            let fd = choose_log_factorization(f, choices).unwrap();
            let n = f.target.monoid.n_gens();
            for j in 0..n {
                let hit = fd.h.images.iter().any(|img| img.iter().enumerate().all(|(k, &x)| x == (k == j) as u32));
                assert!(hit, "{}: generator {j} of N has no preimage", e.name);
            }
            for (k, &v) in fd.y_vars.iter().enumerate() {
                assert_eq!(fd.r_to_b[v], f.target.algebra.ring.var(k), "{}", e.name);
            }
            for g in &fd.i_gb {
                let img = fd.r.ring.substitute(g, &fd.r_to_b, &f.target.algebra.ring);
                assert!(f.target.algebra.is_zero(&img), "{}: kernel element does not vanish", e.name);
            }
        }
    }
}

#[test]
fn euler_characteristic_of_finite_complexes() {
    for e in corpus() {
        let p = LogPipeline::new(&e.spec.morphism, Choices::default()).unwrap();
        let c = p.log.complex.tensor(&Coefficients::Residue);
        let terms: Vec<Dim> = (0..3).map(|i| c.term(i).dim_over_k()).collect();
        let hs: Vec<Dim> = (0..3).map(|i| c.homology(i, &Coefficients::Algebra).k_dim).collect();
        if let (Some(t), Some(h)) = (
            terms.iter().map(|d| d.finite()).collect::<Option<Vec<u64>>>(),
            hs.iter().map(|d| d.finite()).collect::<Option<Vec<u64>>>(),
        ) {
            let chi = |v: &[u64]| v[0] as i64 - v[1] as i64 + v[2] as i64;
            assert_eq!(chi(&h), chi(&t), "{}", e.name);
        } else {
            panic!("{}: residue coefficients give infinite terms", e.name);
        }
    }
}

#[test]
fn degree_zero_is_log_differentials() {
    for e in corpus() {
        let p = LogPipeline::new(&e.spec.morphism, Choices::default()).unwrap();
        let omega = HomologyReport::of(&log_differentials(&e.spec.morphism));
        assert!(p.homology(0, &Coefficients::Algebra).proxy_eq(&omega), "{}", e.name);
    }
}

#[test]
fn w1_has_a_basis() {
    for e in corpus() {
        let fd = choose_log_factorization(&e.spec.morphism, Choices::default()).unwrap();
        let kd = KData::new(&fd);
        let s = logls_core::exactlinalg::snf(&kd.w1_basis);
        // independent columns: W1 is free on them
        assert_eq!(s.rank(), kd.w1_rank(), "{}", e.name);
    }
}

#[test]
fn smooth_and_complete_intersection_detectors() {
    for e in corpus() {
        let f = &e.spec.morphism;
        if !f.is_strict() || !f.source.algebra.ring.names.is_empty() {
            continue;
        }
        let p = LogPipeline::new(f, Choices::default()).unwrap();
        let b = &f.target.algebra;
        if b.ideal_gens.is_empty() {
            let h0 = p.homology(0, &Coefficients::Algebra);
            assert_eq!(h0.free_rank, Some(b.ring.nvars()), "{}", e.name);
            assert!(p.homology(1, &Coefficients::Algebra).is_zero() && p.homology(2, &Coefficients::Algebra).is_zero());
        }
        if e.name == "strict_complete_intersection" || e.name == "strict_cusp" {
            for t in [Coefficients::Algebra, Coefficients::Residue] {
                assert!(p.homology(2, &t).is_zero(), "{}", e.name);
            }
        }
    }
}

#[test]
fn log_surjection_invariants() {
    for e in corpus().into_iter().filter(|e| e.has_tag("edge")) {
        let s = LogSurjection::new(&e.spec.morphism).unwrap();
        let b = e.spec.morphism.target.algebra.clone();
        let tor0 = tor_over_c(&s, 0).unwrap();
        assert!(tor0.proxy_eq(&HomologyReport::of(&FpModule::free(b, 1))), "{}", e.name);
        if e.spec.morphism.is_strict() {
            assert!(w_terms(&s, 1).is_zero() && w_terms(&s, 2).is_zero(), "{}", e.name);
            let conormal = HomologyReport::of(&conormal_module(&s).unwrap());
            assert!(conormal.proxy_eq(&HomologyReport::of(&a_mod_a2(&s))), "{}", e.name);
            assert!(conormal.proxy_eq(&tor_over_c(&s, 1).unwrap()), "{}", e.name);
        }
    }
}
