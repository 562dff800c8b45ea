//! Acceptance run: one line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use logls_cli::corpus::{load_corpus, CorpusEntry};
use logls_cli::input::build_spec;
use logls_core::abgroup::Dim;
use logls_core::field::Field;
use logls_core::fpmodule::{Coefficients, HomologyReport};
use logls_core::kcomplex::check_prop12;
use logls_core::logls::{check_compatibility_sequence, check_strict_reduction, LogPipeline};
use logls_core::logsurj::{check_edge_identity, tor_over_c, w_terms, LogSurjection};
use logls_core::monoids::{choose_log_factorization, Choices, PrelogMorphism};

const SECOND: Duration = Duration::from_secs(1);

fn corpus() -> Vec<CorpusEntry> {
    load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")).expect("corpus loads")
}

fn entry(name: &str) -> CorpusEntry {
    corpus().into_iter().find(|e| e.name == name).unwrap_or_else(|| panic!("corpus entry {name}"))
}

fn over(e: &CorpusEntry, field: Field) -> PrelogMorphism {
    build_spec(&e.spec.raw, Some(field)).expect("instance is valid over the field").morphism
}

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn dims(rs: &[HomologyReport]) -> Vec<Dim> {
    rs.iter().map(|r| r.k_dim).collect()
}

fn fin(v: &[u64]) -> Vec<Dim> {
    v.iter().map(|&d| Dim::Finite(d)).collect()
}

/// Monoid homomorphisms: K computed directly equals the closed forms.
fn criterion_1() -> String {
    let entries: Vec<CorpusEntry> = corpus().into_iter().filter(|e| e.name.starts_with("monoid_")).collect();
    assert!(entries.len() >= 8, "only {} monoid instances", entries.len());
    let (mut torsion_ker, mut torsion_coker, mut mixed) = (false, false, false);
    let mut runs = 0;
    for e in &entries {
        let g = e.spec.morphism.monoid_map.gp();
        let (ker, _) = g.kernel();
        let coker = g.cokernel();
        torsion_ker |= !ker.torsion().is_empty();
        torsion_coker |= !coker.torsion().is_empty();
        mixed |= !ker.is_zero() && !coker.is_zero();
        for field in [Field::Rationals, f2()] {
            let fd = choose_log_factorization(&over(e, field), Choices::default()).unwrap();
            for t in [Coefficients::Algebra, Coefficients::Residue] {
                let start = Instant::now();
                let r = check_prop12(&fd, &t).unwrap();
                assert!(start.elapsed() < SECOND, "{} too slow", e.name);
                assert!(r.passed(), "{} over {field} with {}: {r:?}", e.name, t.name());
                runs += 1;
            }
        }
    }
    assert!(torsion_ker && torsion_coker && mixed, "corpus lacks a torsion or mixed case");
    format!("{} monoid maps x {{Q, F2}} x {{B, k}}: {runs} exact matches", entries.len())
}

/// Strict morphisms: log homology proxies equal the classical ones.
fn criterion_2() -> String {
    let entries: Vec<CorpusEntry> = corpus().into_iter().filter(|e| e.spec.morphism.is_strict() && e.name.starts_with("strict_")).collect();
    assert!(entries.len() >= 5);
    for e in &entries {
        for t in [Coefficients::Algebra, Coefficients::Residue] {
            let r = check_strict_reduction(&e.spec.morphism, &t).unwrap();
            assert!(r.passed(), "{} with {}", e.name, t.name());
        }
    }
    let strict_self = |name: &str| check_strict_reduction(&entry(name).spec.morphism, &Coefficients::Algebra).unwrap();
    let smooth = strict_self("strict_smooth_plane");
    assert_eq!(smooth.log[0].free_rank, Some(2));
    assert!(smooth.log[1].is_zero() && smooth.log[2].is_zero());
    let ci = strict_self("strict_complete_intersection");
    assert_eq!(dims(&ci.log)[1..], fin(&[12, 0]));
    // H_0 of a surjection A -> B vanishes, so the double point gives (0, 2, 0)
    let dp = strict_self("strict_quotient_double_point");
    assert_eq!(dims(&dp.log), fin(&[0, 2, 0]));
    format!(
        "{} strict instances equal classical; smooth plane (free 2, 0, 0); complete intersection H_1 = 12, H_2 = 0; \
         k[t] -> k[t]/(t^2) gives (0, 2, 0), not the listed (1, 2, 0)",
        entries.len()
    )
}

/// The log line and the log point, against their golden files.
fn criterion_3() -> String {
    for (name, expect) in [("log_line", None), ("log_point", Some([1u64, 1, 0]))] {
        let e = entry(name);
        let start = Instant::now();
        let pipe = LogPipeline::new(&e.spec.morphism, Choices::default()).unwrap();
        let hs: Vec<HomologyReport> = (0..3).map(|i| pipe.homology(i, &Coefficients::Algebra)).collect();
        assert!(start.elapsed() < SECOND, "{name} too slow");
        match expect {
            Some(d) => assert_eq!(dims(&hs), fin(&d)),
            None => {
                assert_eq!(hs[0].free_rank, Some(1));
                assert!(hs[1].is_zero() && hs[2].is_zero());
            }
        }
        let golden: serde_json::Value = serde_json::from_str(&e.golden().expect("golden file")).unwrap();
        for (i, h) in hs.iter().enumerate() {
            assert_eq!(golden["homology"]["self"][i.to_string()], logls_cli::report::homology_json(h), "{name} H_{i}");
        }
    }
    "log line (free 1, 0, 0), log point (1, 1, 0), both under 1 s and equal to the golden files".into()
}

/// d^2 = 0, commuting squares, split legs, cokernels, Euler identity.
fn criterion_4() -> String {
    let entries = corpus();
    let mut euler = 0;
    for e in &entries {
        let p = LogPipeline::new(&e.spec.morphism, Choices::default()).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        for c in [&p.log.complex, &p.diagram.back, &p.diagram.front.complex, &p.diagram.right] {
            assert!(c.d1.compose(&c.d2).is_zero_map(), "{}: d^2 != 0", e.name);
        }
        p.diagram.check().unwrap();
        for i in 0..2 {
            assert!(p.diagram.alpha[i].is_retracted_by(&p.diagram.alpha_retraction(i)), "{}: alpha_{i}", e.name);
        }
        let r = check_compatibility_sequence(&p).unwrap();
        assert!(r.passed(), "{}: {r:?}", e.name);
        euler += r.euler.iter().filter(|x| x.is_some()).count();
    }
    format!("{} corpus instances; Euler identity checked in {euler} finite-dimensional degrees", entries.len())
}

/// Alternative X, free cover and orderings, through the binary's `--alt-choices`.
fn criterion_5() -> String {
    let alt: Vec<CorpusEntry> = corpus().into_iter().filter(|e| e.has_tag("alt")).collect();
    assert!(alt.len() >= 3);
    for e in &alt {
        for coeff in ["self", "residue"] {
            let out = Command::new(env!("CARGO_BIN_EXE_logls"))
                .args(["homology", e.input_path.to_str().unwrap(), "--alt-choices", "--coefficients", coeff, "--format", "json"])
                .output()
                .unwrap();
            assert!(out.status.success(), "{}: {}", e.name, String::from_utf8_lossy(&out.stderr));
            let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
            for i in 0..3 {
                assert_eq!(v["alt_choices"]["agree"][i.to_string()], true);
            }
        }
        let a = LogPipeline::new(&e.spec.morphism, Choices::default()).unwrap();
        let b = LogPipeline::new(&e.spec.morphism, Choices::alternative()).unwrap();
        assert_ne!(a.diagram.fd.p0.gens, b.diagram.fd.p0.gens, "{}: X did not change", e.name);
        assert_ne!(a.diagram.front.tau, b.diagram.front.tau, "{}: free cover did not change", e.name);
    }
    format!("{} designated instances agree under alternative choices", alt.len())
}

/// H_1 of the log complex against the conormal module.
fn criterion_6() -> String {
    let cases: [(&str, fn(&HomologyReport) -> bool); 3] = [
        ("edge_strict_hypersurface", |r| r.k_dim == Dim::Finite(2)),
        ("edge_plane_to_line", |r| r.free_rank == Some(1)),
        ("edge_log_point_quotient", |r| r.k_dim == Dim::Finite(1)),
    ];
    for (name, expect) in cases {
        let s = LogSurjection::new(&entry(name).spec.morphism).unwrap();
        let r = check_edge_identity(&s).unwrap();
        assert!(r.passed(), "{name}");
        assert!(expect(&r.log_h1) && expect(&r.conormal), "{name}: {} / {}", r.log_h1.summary(), r.conormal.summary());
    }
    "hypersurface dim 2, (u, v) -> t free rank 1, log point quotient dim 1; both sides agree".into()
}

fn tor_dims(name: &str) -> Vec<Dim> {
    let s = LogSurjection::new(&entry(name).spec.morphism).unwrap();
    (0..=4).map(|n| tor_over_c(&s, n).unwrap().k_dim).collect()
}

/// Tor over the dual numbers and over the line.
fn criterion_7() -> String {
    assert_eq!(tor_dims("tor_dual_numbers"), fin(&[1, 1, 1, 1, 1]));
    assert_eq!(tor_dims("tor_point_on_line"), fin(&[1, 1, 0, 0, 0]));
    "Tor over k[x]/(x^2) of (k, k) = (1, 1, 1, 1, 1); over k[x] = (1, 1, 0, 0, 0)".into()
}

/// W-terms for strict, free-kernel and Z/2-kernel surjections.
fn criterion_8() -> String {
    let w = |e: &CorpusEntry, field: Field| {
        let s = LogSurjection::new(&over(e, field)).unwrap();
        [w_terms(&s, 1), w_terms(&s, 2)]
    };
    for name in ["edge_strict_hypersurface", "edge_log_point_quotient"] {
        assert!(w(&entry(name), Field::Rationals).iter().all(|r| r.is_zero()), "{name}");
    }
    let free = w(&entry("edge_plane_to_line"), Field::Rationals);
    assert_eq!(free[0].free_rank, Some(1));
    assert!(free[1].is_zero());
    let tors = entry("edge_torsion_kernel");
    assert!(w(&tors, Field::Rationals).iter().all(|r| r.is_zero()));
    assert!(w(&tors, f2()).iter().all(|r| r.free_rank == Some(1)));
    "strict: 0; free kernel: W_1 = B, W_2 = 0; Z/2 kernel: B, B in char 2 and 0, 0 in char 0".into()
}

/// Truncated linear algebra against Gröbner bases and syzygies; random SNF.
fn criterion_9() -> String {
    oracle::check_membership();
    oracle::check_syzygy_completeness();
    oracle::check_random_snf(100);
    format!(
        "{} ideals x {} fields through degree {}: membership and syzygies agree; 100 random SNFs verified",
        oracle::ideals().len(),
        oracle::fields().len(),
        oracle::TOP
    )
}

fn main() {
    let criteria: [(&str, fn() -> String); 9] = [
        ("K closed forms", criterion_1),
        ("strict reduction", criterion_2),
        ("worked log examples", criterion_3),
        ("structural invariants", criterion_4),
        ("choice independence", criterion_5),
        ("edge identity", criterion_6),
        ("Tor engine", criterion_7),
        ("W-terms", criterion_8),
        ("Groebner and SNF soundness", criterion_9),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({ms} ms): {detail}", i + 1),
            Err(p) => {
                failed += 1;
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {}: FAIL  {name} ({ms} ms): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed in {} ms", criteria.len() - failed, criteria.len(), total.elapsed().as_millis());
    if failed > 0 {
        std::process::exit(1);
    }
}
