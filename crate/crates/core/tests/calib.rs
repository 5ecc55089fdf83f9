use oddsl2::diag::checks::{relation_residual, relations_at};
use oddsl2::diag::spec::ConcreteAlpha;

fn run_holds(prefix: &str, dotted: Option<bool>) -> usize {
    let spec = ConcreteAlpha(1);
    let mut bad = 0;
    for l in -3..=3 {
        for r in relations_at(l, 3) {
            if !r.name.starts_with(prefix) {
                continue;
            }
            let n: i64 = r.name.rsplit('-').next().unwrap().parse().unwrap();
            if let Some(d) = dotted {
                if d != (n >= 1) {
                    continue;
                }
            }
            match relation_residual(&spec, &r) {
                Ok((holds, _)) => {
                    if !holds {
                        bad += 1;
                    }
                }
                Err(_) => bad += 1,
            }
        }
    }
    bad
}

#[test]
fn curl_right_dotted() {
    println!("BADTOTAL {}", run_holds("curl-right", Some(true)));
}

#[test]
fn curl_right_undotted() {
    println!("BADTOTAL {}", run_holds("curl-right", Some(false)));
}

#[test]
fn curl_left_dotted() {
    println!("BADTOTAL {}", run_holds("curl-left", Some(true)));
}

#[test]
fn curl_left_undotted() {
    println!("BADTOTAL {}", run_holds("curl-left", Some(false)));
}
