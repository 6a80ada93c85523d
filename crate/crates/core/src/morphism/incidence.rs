use serde::Serialize;

use super::Morphism;
use crate::error::{Error, Result};
use crate::word::Alphabet;

/// Letter-frequency data of a binary morphism.
///
/// `matrix[i][j]` counts occurrences of letter `i` in the image of letter
/// `j`, so column `j` describes the image of `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncidenceAnalysis {
    pub matrix: [[u64; 2]; 2],
    pub dominant_eigenvalue: f64,
    pub frequency_vector: [f64; 2],
}

fn incidence_matrix(morphism: &Morphism) -> Result<[[u64; 2]; 2]> {
    if morphism.source() != Alphabet::Binary || morphism.target() != Alphabet::Binary {
        return Err(Error::NotBinary);
    }
    let mut matrix = [[0u64; 2]; 2];
    for j in 0..2u8 {
        for &s in morphism.image_slice(j) {
            matrix[s as usize][j as usize] += 1;
        }
    }
    Ok(matrix)
}

fn normalize(v: [f64; 2]) -> [f64; 2] {
    let total = v[0] + v[1];
    [v[0] / total, v[1] / total]
}

/// Closed-form Perron analysis of the 2×2 incidence matrix.
pub fn incidence_analysis(morphism: &Morphism) -> Result<IncidenceAnalysis> {
    let matrix = incidence_matrix(morphism)?;
    let [[a, b], [c, d]] = matrix.map(|row| row.map(|x| x as f64));
    let trace = a + d;
    let det = a * d - b * c;
    let disc = (trace * trace - 4.0 * det).max(0.0);
    let lambda = (trace + disc.sqrt()) / 2.0;
    if lambda <= 1e-12 {
        return Err(Error::DegenerateMatrix);
    }

    let vector = if b != 0.0 {
        [b, lambda - a]
    } else if c != 0.0 {
        [lambda - d, c]
    } else if (a - d).abs() > 1e-12 {
        // Diagonal with distinct entries: the dominant letter takes all mass.
        if a > d {
            [1.0, 0.0]
        } else {
            [0.0, 1.0]
        }
    } else {
        // Scalar matrix: every vector is an eigenvector; start from uniform.
        [1.0, 1.0]
    };
    if vector.iter().any(|&x| x < -1e-12) || vector[0] + vector[1] <= 1e-12 {
        return Err(Error::DegenerateMatrix);
    }
    Ok(IncidenceAnalysis {
        matrix,
        dominant_eigenvalue: lambda,
        frequency_vector: normalize(vector.map(|x| x.max(0.0))),
    })
}

impl IncidenceAnalysis {
    /// Letter frequencies after applying `outer` to a word with this
    /// analysis' frequencies: multiply by the outer matrix and renormalize.
    pub fn propagate(&self, outer: &Morphism) -> Result<[f64; 2]> {
        let m = incidence_matrix(outer)?;
        let v = self.frequency_vector;
        let image = [
            m[0][0] as f64 * v[0] + m[0][1] as f64 * v[1],
            m[1][0] as f64 * v[0] + m[1][1] as f64 * v[1],
        ];
        if image[0] + image[1] <= 0.0 {
            return Err(Error::DegenerateMatrix);
        }
        Ok(normalize(image))
    }
}
