use oddsl2::diag::engine::Morph;
use oddsl2::diag::path;
use oddsl2::diag::spec::{apply_derivation, ConcreteAlpha};
use oddsl2::diag::{Gen, Object, Slice, Word};

fn obj(w: &str, l: i64) -> Object {
    Object::new(Word::parse(w).unwrap(), l)
}

#[test]
fn trace_curl_terms() {
    let l = -2;
    // the full derivative of the undotted left curl
    let curl: Morph<i64> = Morph::from_paths(
        obj("E", l),
        obj("E", l),
        vec![(
            1,
            oddsl2::diag::Path {
                src: obj("E", l),
                slices: vec![
                    Slice::new(Gen::CupCcw, 0),
                    Slice::new(Gen::Cross, 1),
                    Slice::new(Gen::CapCcw, 0),
                ],
            },
        )],
    )
    .unwrap();
    // raw (unreduced) container
    let mut raw = Morph::<i64>::zero(obj("E", l), obj("E", l));
    raw.terms.insert(
        oddsl2::diag::Path {
            src: obj("E", l),
            slices: vec![
                Slice::new(Gen::CupCcw, 0),
                Slice::new(Gen::Cross, 1),
                Slice::new(Gen::CapCcw, 0),
            ],
        },
        1,
    );
    let d = apply_derivation(&ConcreteAlpha(1), &raw).unwrap();
    println!("d(left curl) = {d}");
    println!("curl reduced = {curl}");
    // individual pieces
    let beta_term: Morph<i64> = path(
        obj("E", l),
        vec![Slice::new(Gen::CupCcw, 0), Slice::new(Gen::CapCcw, 0)],
    )
    .unwrap();
    println!("cup-then-cap circle = {beta_term}");
    let c_term: Morph<i64> = path(
        obj("E", l),
        vec![
            Slice::new(Gen::CupCcw, 0),
            Slice::new(Gen::Cross, 1),
            Slice::new(Gen::Dot, 1),
            Slice::new(Gen::CapCcw, 0),
        ],
    )
    .unwrap();
    println!("c-term (dot above cross) = {c_term}");
    let abar_term: Morph<i64> = path(
        obj("E", l),
        vec![
            Slice::new(Gen::CupCcw, 0),
            Slice::new(Gen::Dot, 1),
            Slice::new(Gen::Cross, 1),
            Slice::new(Gen::CapCcw, 0),
        ],
    )
    .unwrap();
    println!("abar-term (dot below cross) = {abar_term}");
}
