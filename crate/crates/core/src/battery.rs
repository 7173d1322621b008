//! Closed sentences with truth values worked out by hand, covering every
//! theory and the pairs of structures the three signatures tell apart.

use crate::syntax::{decide, parse_formula, QeError, Theory};

#[derive(Debug, Clone, Copy)]
pub struct Sentence {
    pub theory: Theory,
    pub text: &'static str,
    pub truth: bool,
}

const fn s(theory: Theory, text: &'static str, truth: bool) -> Sentence {
    Sentence { theory, text, truth }
}

use Theory::*;

pub const DENSITY: &str = "forall x. forall z. (x < z -> (exists y. (x < y /\\ y < z)))";

pub const BATTERY: &[Sentence] = &[
    s(DloQ, DENSITY, true),
    s(DloQ, "forall x. exists y. y < x", true),
    s(DloQ, "exists x. forall y. x <= y", false),
    s(DloQ, "forall x. forall y. (x < y \\/ x = y \\/ y < x)", true),
    s(DloR, DENSITY, true),
    s(DloR, "exists x. forall y. y <= x", false),
    s(OrderZ, DENSITY, false),
    s(OrderZ, "forall x. exists y. s(y) = x", true),
    s(OrderZ, "forall x. exists y. (x < y /\\ y < s(s(x)))", true),
    s(OrderZ, "exists x. forall y. x <= y", false),
    s(OrderN, "forall x. exists y. s(y) = x", false),
    s(OrderN, "exists x. forall y. x <= y", true),
    s(OrderN, "forall x. (0 < x -> (exists y. s(y) = x))", true),
    s(OrderN, "forall x. exists y. (x < y /\\ y < s(s(x)))", true),
    s(OrderN, DENSITY, false),
    s(OagQ, "forall x. exists y. x = 2*y", true),
    s(OagQ, DENSITY, true),
    s(OagQ, "forall x. forall y. (x < y -> x + x < y + y)", true),
    s(OagQ, "exists x. forall y. y < x + y", true),
    s(OagR, "forall x. exists y. 3*y = x", true),
    s(OagR, "exists x. (x + x = x /\\ (forall y. x <= y))", false),
    s(PresburgerZ, "forall x. exists y. x = 2*y", false),
    s(PresburgerZ, "forall x. exists y. (x = 2*y \\/ x = 2*y + 1)", true),
    s(PresburgerZ, "forall x. exists y. (x < y /\\ y < x + 2)", true),
    s(PresburgerZ, "forall x. forall y. (x < y -> x + 1 <= y)", true),
    s(PresburgerZ, "exists x. 3*x = 1", false),
    s(PresburgerZ, "forall x. (x == 0 mod 6 <-> x == 0 mod 2 /\\ x == 0 mod 3)", true),
    s(PresburgerZ, "exists x. (x == 1 mod 4 /\\ x == 3 mod 6)", true),
    s(PresburgerZ, "exists x. (x == 1 mod 4 /\\ x == 2 mod 6)", false),
    s(PresburgerZ, DENSITY, false),
    s(PresburgerN, "forall x. exists y. (x = 2*y \\/ x = 2*y + 1)", true),
    s(PresburgerN, "forall x. exists y. x = y + 1", false),
    s(PresburgerN, "exists x. forall y. x <= y", true),
    s(PresburgerN, "forall x. exists y. y < x", false),
    s(PresburgerN, "forall x. forall y. exists z. (x + z = y \\/ y + z = x)", true),
    s(MulR, "forall x. exists y. x = y*y*y", true),
    s(MulR, "forall x. exists y. x = y*y", false),
    s(MulR, "forall x. (0 < x -> (exists y. x = y*y))", true),
    s(MulR, "forall x. forall y. (0 < x /\\ 0 < y -> 0 < x*y)", true),
    s(MulR, "exists x. (1 < x /\\ x*x < x)", false),
    s(MulR, DENSITY, true),
    s(MulQ, "forall x. exists y. x = y*y*y", false),
    s(MulQ, "forall x. (pow(3, x) <-> (exists y. x = y*y*y))", true),
    s(MulQ, "exists x. x*x = -1", false),
    s(MulQ, "forall x. exists y. x < y*y", true),
    s(MulQ, "forall x. forall z. (x < z -> (exists y. (x < y /\\ y < z /\\ pow(2, y))))", false),
    s(MulQ, "forall x. forall z. (0 < x /\\ x < z -> (exists y. (x < y /\\ y < z /\\ pow(2, y))))", true),
    s(MulQ, "forall x. (x*x = x -> x = 0 \\/ x = 1)", true),
    s(MulQPos, "exists x. ~pow(2, x)", true),
    s(MulQPos, "forall x. exists y. x = y*y", false),
    s(MulQPos, "forall x. forall z. (x < z -> (exists y. (x < y /\\ y < z /\\ ~pow(2, y) /\\ ~pow(3, y))))", true),
    s(MulQPos, "exists x. (pow(4, x) /\\ ~pow(2, x))", false),
    s(MulQPos, "forall x. (pow(2, x) /\\ pow(3, x) -> pow(6, x))", true),
    s(MulQPos, "exists x. forall y. x <= y", false),
    s(MulQPos, "forall x. (1 < x -> (exists y. (1 < y /\\ y*y < x)))", true),
];

/// The decision for each sentence of the battery.
pub fn run_battery() -> Vec<(Sentence, Result<bool, QeError>)> {
    BATTERY
        .iter()
        .map(|s| {
            let r = parse_formula(s.text, s.theory).map_err(QeError::from).and_then(|f| decide(&f, s.theory).map(|(t, _)| t));
            (*s, r)
        })
        .collect()
}
