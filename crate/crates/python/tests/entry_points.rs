//! The plain-Rust layer under the Python functions.

use std::collections::BTreeMap;

use ordqe_py::{decide_text, eliminate_text, witness_text};

#[test]
fn decisions_across_signatures() {
    assert_eq!(decide_text("mul-r", "forall x. exists y. x = y*y*y"), Ok(true));
    assert_eq!(decide_text("mul-q", "forall x. exists y. x = y*y*y"), Ok(false));
    assert_eq!(decide_text("presburger-n", "forall x. exists y. (x = 2*y \\/ x = 2*y + 1)"), Ok(true));
    assert!(decide_text("dlo-q", "x < y").is_err());
}

#[test]
fn elimination_and_witnesses() {
    assert_eq!(eliminate_text("presburger-z", "exists x. 2*x = y").as_deref(), Ok("y == 0 mod 2"));
    let w = witness_text("presburger-z", "exists x. (x == 1 mod 4 /\\ x == 3 mod 6)", &BTreeMap::new()).unwrap().unwrap();
    let x: i64 = w["x"].parse().unwrap();
    assert!(x.rem_euclid(4) == 1 && x.rem_euclid(6) == 3);
    assert_eq!(witness_text("presburger-z", "exists x. (x == 1 mod 4 /\\ x == 2 mod 6)", &BTreeMap::new()), Ok(None));
}
