//! Mechanical checks of the cube-containment facts used to exclude the
//! factors of F from preimages.

use serde::Serialize;

use crate::morphism::Morphism;
use crate::repetition::is_cube_free;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub holds: bool,
}

impl ClaimCheck {
    pub fn new(claim: impl Into<String>, holds: bool) -> ClaimCheck {
        ClaimCheck {
            claim: claim.into(),
            holds,
        }
    }
}

/// Longest `v` enumerated for the parametric claims; every ternary word up
/// to this length is checked.
const PARAMETRIC_MAX_LEN: usize = 6;

fn t(s: &str) -> Word {
    Word::ternary(s).expect("ternary literal")
}

fn all_ternary_words(max_len: usize) -> Vec<Word> {
    let mut all = vec![Word::empty(Alphabet::Ternary)];
    let mut level = all.clone();
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w| Alphabet::Ternary.symbols().map(move |s| w.with_symbol(s).expect("ternary")))
            .collect();
        all.extend(level.iter().cloned());
    }
    all
}

pub fn verify_f_claims() -> Vec<ClaimCheck> {
    let (f, g, h) = (Morphism::f(), Morphism::g(), Morphism::h());
    let ap = |m: &Morphism, w: &Word| m.apply(w).expect("ternary source");
    let has_cube = |w: &Word| !is_cube_free(w);
    let mut checks = Vec::new();

    checks.push(ClaimCheck::new(
        "h(1221) contains a cube",
        has_cube(&ap(&h, &t("1221"))),
    ));

    let mut three_images = |label: &str, w: &Word| {
        let hw = ap(&h, w);
        checks.push(ClaimCheck::new(
            format!("f(h({label})) contains a cube"),
            has_cube(&ap(&f, &hw)),
        ));
        checks.push(ClaimCheck::new(
            format!("g(h({label})) contains a cube"),
            has_cube(&ap(&g, &hw)),
        ));
        checks.push(ClaimCheck::new(
            format!("h^2({label}) contains a cube"),
            has_cube(&ap(&h, &hw)),
        ));
    };
    for base in ["00", "10101"] {
        for x in ["0", "1", "2"] {
            let w = format!("{base}{x}");
            three_images(&w, &t(&w));
        }
    }
    three_images("0110", &t("0110"));

    checks.push(ClaimCheck::new("111 is a cube", has_cube(&t("111"))));
    checks.push(ClaimCheck::new(
        "h(112) contains a cube",
        has_cube(&ap(&h, &t("112"))),
    ));
    checks.push(ClaimCheck::new(
        "h(211)0 contains a cube",
        has_cube(&ap(&h, &t("211")).concat(&t("0"))),
    ));
    checks.push(ClaimCheck::new(
        "h(212) = 02202022",
        ap(&h, &t("212")) == t("02202022"),
    ));

    // Parametric facts, checked for every v up to the length bound.
    let (mut f001, mut f112, mut g112, mut h112, mut g002, mut h002) =
        (true, true, true, true, true, true);
    for v in all_ternary_words(PARAMETRIC_MAX_LEN) {
        let vx = |x: &str| v.concat(&t(x));
        let pattern = |a: &str, b: &str| vx(a).concat(&vx(a)).concat(&vx(b));
        f001 &= has_cube(&ap(&f, &pattern("0", "1")));
        f112 &= has_cube(&ap(&f, &pattern("1", "2")));
        g112 &= has_cube(&ap(&g, &pattern("1", "2")));
        h112 &= has_cube(&ap(&h, &pattern("1", "2")));

        let big_v = ap(&g, &v).concat(&t("01"));
        let big = |a: &str, b: &str| {
            let x = big_v.concat(&t(a));
            x.concat(&x).concat(&big_v.concat(&t(b)))
        };
        g002 &= ap(&g, &pattern("0", "2")) == big("1", "2").concat(&t("121"));
        let big_v = ap(&h, &v).concat(&t("0"));
        let x = big_v.concat(&t("1"));
        h002 &= ap(&h, &pattern("0", "2")) == x.concat(&x).concat(&big_v.concat(&t("2"))).concat(&t("2"));
    }
    let scope = format!("for all ternary v with |v| <= {PARAMETRIC_MAX_LEN}");
    checks.push(ClaimCheck::new(format!("f(v0v0v1) contains a cube {scope}"), f001));
    checks.push(ClaimCheck::new(format!("f(v1v1v2) contains a cube {scope}"), f112));
    checks.push(ClaimCheck::new(format!("g(v1v1v2) contains a cube {scope}"), g112));
    checks.push(ClaimCheck::new(format!("h(v1v1v2) contains a cube {scope}"), h112));
    checks.push(ClaimCheck::new(
        format!("g(v0v0v2) = (V1V1V2)121 with V = g(v)01 {scope}"),
        g002,
    ));
    checks.push(ClaimCheck::new(
        format!("h(v0v0v2) = (V1V1V2)2 with V = h(v)0 {scope}"),
        h002,
    ));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repetition::max_exponent_factor;
    use crate::rational::Rational;

    #[test]
    fn all_claims_hold() {
        let checks = verify_f_claims();
        let failed: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(checks.len(), 1 + 3 * 7 + 4 + 6);
    }

    #[test]
    fn cube_examples_via_exponent_oracle() {
        let (f, h) = (Morphism::f(), Morphism::h());
        let w = f.apply(&h.iterate(2, &t("000")).unwrap()).unwrap();
        assert!(max_exponent_factor(&w).unwrap().0 >= Rational::from_integer(3));
        let w = h.apply(&t("1221")).unwrap();
        assert_eq!(w, t("0202202202"));
        let (e, witness) = max_exponent_factor(&w).unwrap();
        assert!(e >= Rational::from_integer(3));
        assert_eq!(witness.period, 3);
    }

    #[test]
    fn enumeration_size() {
        assert_eq!(all_ternary_words(3).len(), 1 + 3 + 9 + 27);
    }
}
