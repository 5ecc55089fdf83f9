use oddsl2::diag::engine::Morph;
use oddsl2::diag::path;
use oddsl2::diag::{Gen, Object, Slice, Word};

fn obj(w: &str, l: i64) -> Object {
    Object::new(Word::parse(w).unwrap(), l)
}

#[test]
fn left_curl_trace() {
    use Gen::*;
    for (l, n) in [(1i64, 1usize), (0, 1), (2, 2)] {
        let mut sl = vec![Slice::new(CupCcw, 0)];
        sl.extend(std::iter::repeat(Slice::new(Dot, 1)).take(n));
        sl.push(Slice::new(Cross, 1));
        sl.push(Slice::new(CapCcw, 0));
        let c: Morph<i64> = path(obj("E", l), sl).unwrap();
        println!("leftcurl n={n} l={l}: {c}");
    }
    for (l, n) in [(0i64, 0usize), (-1, 0)] {
        let sl = vec![
            Slice::new(CupCw, 1),
            Slice::new(Cross, 0),
            Slice::new(CapCw, 1),
        ];
        let _ = n;
        let c: Morph<i64> = path(obj("E", l), sl).unwrap();
        println!("rightcurl n=0 l={l}: {c}");
    }
}
