use oddsl2::diag::checks::verify_relations;
use oddsl2::diag::spec::ConcreteAlpha;

#[test]
fn probe_relations() {
    let spec = ConcreteAlpha(1);
    match verify_relations(&spec, -3..=3, 3) {
        Ok(list) => {
            let mut bad_hold = 0;
            let mut bad_resid = 0;
            for r in &list {
                if !r.holds_before_derivation {
                    bad_hold += 1;
                    if bad_hold <= 12 {
                        println!("RELATION FAILS: {} @ {}", r.check, r.weight);
                    }
                }
                if !r.residual_zero {
                    bad_resid += 1;
                    if bad_resid <= 12 {
                        println!(
                            "RESIDUAL NONZERO: {} @ {} -> {}",
                            r.check, r.weight, r.residual
                        );
                    }
                }
            }
            println!(
                "total {} checks, {} relation failures, {} nonzero residuals",
                list.len(),
                bad_hold,
                bad_resid
            );
            assert_eq!(bad_hold + bad_resid, 0);
        }
        Err(e) => panic!("engine error: {e}"),
    }
}
