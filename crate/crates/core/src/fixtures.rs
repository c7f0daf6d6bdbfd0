//! Built-in standard bases.

use crate::gf2::Gf2Matrix;
use crate::poly::Gf2Poly;
use crate::semifield::StandardBasis;

/// Rows of the seven matrices of the order-128 semifield containing `F_8`,
/// in printed layout (leftmost character = column 1).
const PAPER_EXAMPLE_ROWS: [[&str; 7]; 7] = [
    [
        "1000000", "0100000", "0010000", "0001000", "0000100", "0000010", "0000001",
    ],
    [
        "0010000", "1010000", "0100000", "0001111", "0001010", "0000011", "0000010",
    ],
    [
        "0100000", "0110000", "1010000", "0000100", "0001100", "0001111", "0001010",
    ],
    [
        "0001100", "0001110", "0000101", "1000001", "0010010", "0111011", "0001101",
    ],
    [
        "0000100", "0000111", "0001010", "0010011", "1010001", "0000110", "0111011",
    ],
    [
        "0001011", "0001100", "0000100", "0001010", "0111111", "1010110", "0011011",
    ],
    [
        "0001101", "0000100", "0001000", "0110101", "0111010", "0011101", "1000110",
    ],
];

/// Order-128 semifield whose first three basis elements span a copy of
/// `F_8` (the upper-left blocks of `A_1..A_3` are powers of the companion
/// matrix of `x^3+x+1`).
pub fn paper_example() -> StandardBasis {
    let mats = PAPER_EXAMPLE_ROWS
        .iter()
        .map(|rows| Gf2Matrix::from_row_strs(rows).expect("fixture rows are 7x7 bits"))
        .collect();
    StandardBasis::new(mats).expect("fixture has seven 7x7 matrices")
}

/// Standard basis `C^0, ..., C^(d-1)` of `F_2[x]/(p)`, where `C` is the
/// companion matrix of `p`. A field basis when `p` is irreducible.
pub fn field_basis(p: Gf2Poly) -> crate::Result<StandardBasis> {
    let c = Gf2Matrix::companion(p)?;
    StandardBasis::new((0..c.dim() as u32).map(|k| c.pow(k)).collect())
}

/// `F_8` from `x^3+x+1`.
pub fn f8() -> StandardBasis {
    field_basis(Gf2Poly::from_bits(0b1011)).expect("degree 3")
}

/// `F_128` from `x^7+x+1`.
pub fn f128() -> StandardBasis {
    field_basis(Gf2Poly::from_bits(0b1000_0011)).expect("degree 7")
}

/// Looks up a built-in basis by its CLI name.
pub fn by_name(name: &str) -> Option<StandardBasis> {
    match name {
        "paper-example" => Some(paper_example()),
        "f8" => Some(f8()),
        "f128" => Some(f128()),
        _ => None,
    }
}

pub const NAMES: [&str; 3] = ["paper-example", "f8", "f128"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_blocks_are_companion_powers() {
        let b = paper_example();
        let f = f8();
        for i in 0..3 {
            for r in 0..7 {
                for c in 0..7 {
                    let expected = if r < 3 && c < 3 {
                        f.matrix(i).get(r, c)
                    } else if r < 3 || c < 3 {
                        false
                    } else {
                        b.matrix(i).get(r, c)
                    };
                    assert_eq!(b.matrix(i).get(r, c), expected, "A_{} ({r},{c})", i + 1);
                }
            }
        }
    }

    #[test]
    fn names_resolve() {
        for n in NAMES {
            assert!(by_name(n).is_some());
        }
        assert!(by_name("f16").is_none());
        assert_eq!(f128().dim(), 7);
    }
}
