use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::repetition::Threshold;
use crate::rational::Rational;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunBound {
    pub morphism: String,
    pub length: usize,
    /// Lexicographically least `u` of maximal length.
    pub witness: Word,
}

/// Longest `u ∈ {1,2}*` with `φ(u)` cube-free, by exhaustive search.
pub fn binary_run_bound(morphism: &Morphism) -> Result<RunBound> {
    if morphism.source() != Alphabet::Ternary {
        return Err(Error::InvalidConfig(format!(
            "{} must act on the ternary alphabet",
            morphism.name()
        )));
    }
    let cube = Threshold::from_rational(&Rational::from_integer(3)).expect("small");
    let mut best = (0usize, Vec::new());
    let mut source = Vec::new();
    let mut image = Vec::new();
    dfs(morphism, cube, &mut source, &mut image, &mut best);
    Ok(RunBound {
        morphism: morphism.name().to_string(),
        length: best.0,
        witness: Word::from_raw(Alphabet::Ternary, best.1),
    })
}

fn dfs(
    morphism: &Morphism,
    cube: Threshold,
    source: &mut Vec<u8>,
    image: &mut Vec<u8>,
    best: &mut (usize, Vec<u8>),
) {
    if source.len() > best.0 {
        *best = (source.len(), source.clone());
    }
    // Letters are tried in increasing order, so the first maximal word seen
    // is the lexicographically least.
    for letter in [1u8, 2] {
        let mark = image.len();
        let mut ok = true;
        for &s in morphism.image_slice(letter) {
            image.push(s);
            if cube.suffix_violates(image) {
                ok = false;
                break;
            }
        }
        if ok {
            source.push(letter);
            dfs(morphism, cube, source, image, best);
            source.pop();
        }
        image.truncate(mark);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repetition::is_cube_free;

    #[test]
    fn bound_is_six_for_each_morphism() {
        for m in [Morphism::f(), Morphism::g(), Morphism::h()] {
            let r = binary_run_bound(&m).unwrap();
            assert_eq!(r.length, 6, "{}", m.name());
            assert!(is_cube_free(&m.apply(&r.witness).unwrap()));
        }
    }

    #[test]
    fn bound_matches_brute_force() {
        // All 2^7 words of length 7 over {1,2} have a cube in their f-image.
        let f = Morphism::f();
        for bits in 0..128u32 {
            let u: String = (0..7).map(|i| if bits >> i & 1 == 1 { '2' } else { '1' }).collect();
            let image = f.apply(&Word::ternary(&u).unwrap()).unwrap();
            assert!(!is_cube_free(&image), "{u}");
        }
    }
}
