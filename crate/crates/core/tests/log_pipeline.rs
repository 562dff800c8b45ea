mod common;

use logls_core::field::Field;
use logls_core::fpmodule::{Coefficients, HomologyReport};
use logls_core::logls::{check_compatibility_sequence, log_differentials, LogPipeline};
use logls_core::monoids::Choices;

fn fields() -> Vec<Field> {
    vec![Field::Rationals, Field::prime(2).unwrap(), Field::prime(3).unwrap()]
}

#[test]
fn compatibility_checks_hold() {
    for field in fields() {
        for (name, f) in common::log_instances(field) {
            let p = LogPipeline::new(&f, Choices::default()).unwrap_or_else(|e| panic!("{name} over {field}: {e}"));
            let c = check_compatibility_sequence(&p).unwrap();
            assert!(c.passed(), "{name} over {field}: {c:?}");
        }
    }
}

#[test]
fn h0_is_log_differentials() {
    for field in fields() {
        for (name, f) in common::log_instances(field) {
            let p = LogPipeline::new(&f, Choices::default()).unwrap();
            let h0 = p.homology(0, &Coefficients::Algebra);
            let omega = HomologyReport::of(&log_differentials(&f));
            assert!(h0.proxy_eq(&omega), "{name} over {field}: {} vs {}", h0.summary(), omega.summary());
        }
    }
}

#[test]
fn alternative_choices_give_same_proxies() {
    for field in fields() {
        for (name, f) in common::log_instances(field) {
            let a = LogPipeline::new(&f, Choices::default()).unwrap();
            let b = LogPipeline::new(&f, Choices::alternative()).unwrap_or_else(|e| panic!("{name} over {field}: {e}"));
            for t in [Coefficients::Algebra, Coefficients::Residue] {
                for i in 0..3 {
                    let (x, y) = (a.homology(i, &t), b.homology(i, &t));
                    assert!(x.proxy_eq(&y), "{name} over {field}, H{i} {}: {} vs {}", t.name(), x.summary(), y.summary());
                }
            }
        }
    }
}
