//! Addition defined from successor and multiplication over ℤ, checked
//! exhaustively on a box.

fn s(t: i64) -> i64 {
    t + 1
}

/// `[z = 0 ∧ y = −x] ∨ [z ≠ 0 ∧ s(zx)·s(zy) = s(z·z·s(xy))]`
pub fn robinson_defines_sum(x: i64, y: i64, z: i64) -> bool {
    (z == 0 && y == -x) || (z != 0 && s(z * x) * s(z * y) == s(z * z * s(x * y)))
}

/// `[z·s(z) = z ∧ s(xy) = s(x)·s(y)] ∨ [z·s(z) ≠ z ∧ s(zx)·s(zy) = s(z·z·s(xy))]`
pub fn hinman_defines_sum(x: i64, y: i64, z: i64) -> bool {
    let zero = z * s(z) == z;
    (zero && s(x * y) == s(x) * s(y)) || (!zero && s(z * x) * s(z * y) == s(z * z * s(x * y)))
}

fn check(bound: i64, defines: fn(i64, i64, i64) -> bool) -> bool {
    let r = -bound..=bound;
    r.clone().all(|x| r.clone().all(|y| r.clone().all(|z| defines(x, y, z) == (z == x + y))))
}

/// `z = x + y` agrees with the definition for all `x, y, z ∈ [−B, B]`.
pub fn check_robinson_identity(bound: u32) -> bool {
    check(i64::from(bound), robinson_defines_sum)
}

pub fn check_hinman_identity(bound: u32) -> bool {
    check(i64::from(bound), hinman_defines_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!((s(21) * s(28), s(49 * s(12))), (638, 638));
        assert!(robinson_defines_sum(3, 4, 7));
        assert!(!robinson_defines_sum(3, 4, 8));
        assert!(hinman_defines_sum(2, -2, 0));
        assert!(!hinman_defines_sum(1, 1, 3));
    }

    #[test]
    fn identities_hold() {
        assert!(check_robinson_identity(25));
        assert!(check_hinman_identity(25));
    }

    #[test]
    fn a_wrong_definition_is_caught() {
        // Dropping the z = 0 disjunct loses 0 = x + (−x).
        assert!(!check(3, |x, y, z| z != 0 && s(z * x) * s(z * y) == s(z * z * s(x * y))));
    }
}
