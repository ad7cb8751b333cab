//! The multisecant tables against a second transcription in the nested form they were published in.

use proptest::prelude::*;
use special_birational::chern::SurfaceInvariants;
use special_birational::exact::{binom, Rat};
use special_birational::multisecant::{n2, n3_4, n3_6, n4_4, n5_4, n6_4};

fn q(num: i128, den: i128) -> Rat {
    Rat::new(num as i64, den as i64).unwrap()
}

fn n2_nested(d: i128, g: i128, k2: i128, chi: i128) -> Rat {
    q(d * d - 5 * d - 10 * (g - 1) - 2 * k2 + 12 * chi, 2)
}

fn n36_nested(d: i128, g: i128, k2: i128, chi: i128) -> Rat {
    q(d.pow(3) - 12 * d * d + d * (18 * chi - 18 * g - 3 * k2 + 50) - 12 * (10 * chi - 11 * g - 2 * k2 + 11), 3)
}

fn n34_nested(d: i128, g: i128, chi: i128) -> Rat {
    q(12 * chi + d.pow(3) - 6 * d * d + d * (11 - 6 * g) + 18 * (g - 1), 6)
}

fn n44_nested(d: i128, g: i128, chi: i128) -> Rat {
    q(
        8 * chi * (2 * d - 9) + d.pow(4) - 10 * d.pow(3) + d * d * (35 - 8 * g) + 2 * d * (28 * g - 33)
            + 4 * (g * g - 25 * g + 24),
        8,
    )
}

fn n54_nested(d: i128, g: i128, chi: i128) -> Rat {
    q(
        24 * chi * (d * d - 12 * d - 2 * (g - 22)) + d.pow(5) - 16 * d.pow(4) + d.pow(3) * (95 - 12 * g)
            + 52 * d * d * (3 * g - 5)
            + 12 * d * (2 * g * g - 62 * g + 43)
            - 120 * (g * g - 11 * g + 10),
        24,
    )
}

fn n64_nested(d: i128, g: i128, chi: i128, lines: &[i64]) -> Rat {
    let raw = q(
        288 * chi * chi
            + 24 * chi * (2 * d.pow(3) - 39 * d * d + d * (355 - 12 * g) + 90 * (g - 16))
            + d.pow(6)
            - 21 * d.pow(5)
            + d.pow(4) * (157 - 18 * g)
            + 3 * d.pow(3) * (116 * g - 65)
            + 2 * d * d * (36 * g * g - 1431 * g - 1663)
            - 12 * d * (72 * g * g - 1033 * g - 774)
            - 24 * (g.pow(3) - 111 * g * g + 854 * g - 744),
        144,
    );
    lines.iter().fold(raw, |acc, &l| acc - binom(7 + l, 6))
}

fn surf(d: i128, g: i128, k2: i128, chi: i128) -> SurfaceInvariants {
    SurfaceInvariants::new(d as i64, g as i64, k2 as i64, chi as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn tables_match_nested_forms(d in 1i128..40, g in -5i128..80, k2 in -60i128..60, chi in -20i128..40) {
        let s = surf(d, g, k2, chi);
        prop_assert_eq!(n2(&s, 4).value, n2_nested(d, g, k2, chi));
        prop_assert_eq!(n3_6(&s).value, n36_nested(d, g, k2, chi));
        prop_assert_eq!(n3_4(&s).value, n34_nested(d, g, chi));
        prop_assert_eq!(n4_4(&s).value, n44_nested(d, g, chi));
        prop_assert_eq!(n5_4(&s).value, n54_nested(d, g, chi));
        prop_assert_eq!(n6_4(&s).value, n64_nested(d, g, chi, &[]));
    }

    #[test]
    fn line_correction(d in 1i128..30, g in 0i128..50, chi in -5i128..20, lines in proptest::collection::vec(-3i64..2, 0..6)) {
        let mut s = surf(d, g, 0, chi);
        s.line_selfints = lines.clone();
        prop_assert_eq!(n6_4(&s).value, n64_nested(d, g, chi, &lines));
    }
}

#[test]
fn no_lines_means_raw_polynomial() {
    let s = surf(9, 8, -5, 2);
    assert_eq!(n6_4(&s).value, n64_nested(9, 8, 2, &[]));
}
