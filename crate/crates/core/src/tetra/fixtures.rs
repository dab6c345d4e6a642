//! Worked Z3 ⊆ A4 tables, transcribed as printed.
//!
//! Permutations compose left to right in these tables: `g·g_i` means "apply `g`, then `g_i`".
//! Matrix entries use `0`, `1`, `P` (ω± for R±, 1 for R1) and `M` (ω∓ for R±, 1 for R1).

/// Coset representatives `g_1..g_4`.
pub const REPRESENTATIVES: [&str; 4] = ["e", "(1,2,4)", "(2,3,4)", "(3,1,4)"];

/// `(g, j_g(1..4), h_1..4(g))`, 1-based.
pub const FACTORIZATION: [(&str, [usize; 4], [&str; 4]); 12] = [
    ("e", [1, 2, 3, 4], ["e", "e", "e", "e"]),
    ("(1,2,3)", [1, 4, 2, 3], ["(1,2,3)", "(1,2,3)", "(1,2,3)", "(1,2,3)"]),
    ("(1,3,2)", [1, 3, 4, 2], ["(1,3,2)", "(1,3,2)", "(1,3,2)", "(1,3,2)"]),
    ("(1,2,4)", [2, 4, 3, 1], ["e", "(1,3,2)", "(1,3,2)", "(1,2,3)"]),
    ("(1,3)(2,4)", [2, 1, 4, 3], ["(1,2,3)", "(1,3,2)", "e", "e"]),
    ("(2,4,3)", [2, 3, 1, 4], ["(1,3,2)", "(1,2,3)", "e", "(1,2,3)"]),
    ("(2,3,4)", [3, 1, 2, 4], ["e", "(1,2,3)", "(1,3,2)", "(1,3,2)"]),
    ("(1,2)(3,4)", [3, 4, 1, 2], ["(1,2,3)", "e", "(1,3,2)", "e"]),
    ("(3,4,1)", [3, 2, 4, 1], ["(1,3,2)", "(1,2,3)", "(1,2,3)", "e"]),
    ("(1,4,3)", [4, 2, 1, 3], ["e", "(1,3,2)", "(1,2,3)", "(1,3,2)"]),
    ("(2,3)(1,4)", [4, 3, 2, 1], ["(1,2,3)", "e", "e", "(1,3,2)"]),
    ("(1,4,2)", [4, 1, 3, 2], ["(1,3,2)", "e", "(1,2,3)", "(1,2,3)"]),
];

/// Stacked blocks `Ψ↑[g] = [Ψ_k[h]; ...]` as `(k, h)` pairs, 1-based `k`.
pub const STACKING: [(&str, [(usize, &str); 4]); 12] = [
    ("e", [(1, "e"), (2, "e"), (3, "e"), (4, "e")]),
    ("(1,2,3)", [(1, "(1,2,3)"), (4, "(1,2,3)"), (2, "(1,2,3)"), (3, "(1,2,3)")]),
    ("(1,3,2)", [(1, "(1,3,2)"), (3, "(1,3,2)"), (4, "(1,3,2)"), (2, "(1,3,2)")]),
    ("(1,2,4)", [(2, "e"), (4, "(1,3,2)"), (3, "(1,3,2)"), (1, "(1,2,4)")]),
    ("(1,3)(2,4)", [(2, "(1,2,3)"), (1, "(1,3,2)"), (4, "e"), (3, "e")]),
    ("(2,4,3)", [(2, "(1,3,2)"), (3, "(1,2,3)"), (1, "e"), (4, "(1,2,3)")]),
    ("(2,3,4)", [(3, "e"), (1, "(1,2,3)"), (2, "(1,3,2)"), (4, "(1,3,2)")]),
    ("(1,2)(3,4)", [(3, "(1,2,3)"), (4, "e"), (1, "(1,3,2)"), (2, "e")]),
    ("(3,4,1)", [(3, "(1,3,2)"), (2, "(1,2,3)"), (4, "(1,2,3)"), (1, "e")]),
    ("(3,1,4)", [(4, "e"), (2, "(1,3,2)"), (1, "(1,2,3)"), (3, "(1,3,2)")]),
    ("(2,3)(1,4)", [(4, "(1,2,3)"), (3, "e"), (2, "e"), (1, "(1,3,2)")]),
    ("(1,4,2)", [(4, "(1,3,2)"), (1, "e"), (3, "(1,2,3)"), (2, "(1,2,3)")]),
];

/// Printed entries that disagree with the factorization table: `(g, block, printed, corrected)`.
/// `Ψ_1` at `h = (1,2,4)` is not even defined since `(1,2,4) ∉ Z3`.
pub const STACKING_ERRATA: [(&str, usize, (usize, &str), (usize, &str)); 1] =
    [("(1,2,4)", 4, (1, "(1,2,4)"), (1, "(1,2,3)"))];

/// Printed label of each matrix, the element it belongs to, and its entries.
/// The R1 matrices are the supports of these; the twelfth is printed under the label
/// `(2,4,3)` but belongs to `(1,4,2)`.
pub const R_MATRICES: [(&str, &str, [&str; 4]); 12] = [
    ("e", "e", ["1000", "0100", "0010", "0001"]),
    ("(1,2,3)", "(1,2,3)", ["P000", "000P", "0P00", "00P0"]),
    ("(1,3,2)", "(1,3,2)", ["M000", "00M0", "000M", "0M00"]),
    ("(1,2,4)", "(1,2,4)", ["0100", "000P", "00M0", "M000"]),
    ("(1,3)(2,4)", "(1,3)(2,4)", ["0P00", "M000", "0001", "0010"]),
    ("(2,4,3)", "(2,4,3)", ["0M00", "00P0", "1000", "000P"]),
    ("(2,3,4)", "(2,3,4)", ["0010", "P000", "0M00", "000M"]),
    ("(1,2)(3,4)", "(1,2)(3,4)", ["00P0", "0001", "M000", "0100"]),
    ("(3,4,1)", "(3,4,1)", ["00M0", "0P00", "000P", "1000"]),
    ("(1,4,3)", "(1,4,3)", ["0001", "0M00", "P000", "00M0"]),
    ("(2,3)(1,4)", "(2,3)(1,4)", ["000P", "0010", "0100", "M000"]),
    ("(2,4,3)", "(1,4,2)", ["000M", "1000", "00P0", "0P00"]),
];

/// Printed R± entries that break the homomorphism property: `(g, row, col, printed, corrected)`,
/// 1-based. The two phases in the `(1,2,4)` matrix are swapped.
pub const R_ERRATA: [(&str, usize, usize, char, char); 2] =
    [("(1,2,4)", 2, 4, 'P', 'M'), ("(1,2,4)", 4, 1, 'M', 'P')];

/// Class representatives of the character tables.
pub const CLASSES: [&str; 4] = ["e", "(1,2,3)", "(1,3,2)", "(1,2)(3,4)"];

/// Characters of R1, R+, R−. `W+`/`W-` stand for ω₊ = exp(2πi/3) and ω₋ = conj(ω₊).
pub const INDUCED_CHARACTERS: [(&str, [&str; 4]); 3] = [
    ("R1", ["4", "1", "1", "0"]),
    ("R+", ["4", "W+", "W-", "0"]),
    ("R-", ["4", "W-", "W+", "0"]),
];

/// A4 character table as printed. The χ₁,₋ and χ₁,₊ rows are printed in swapped order
/// relative to `Res σ1± = ρ±`; [`A4_CHARACTER_LABEL_ERRATA`] maps each printed row to the
/// irrep it actually describes.
pub const A4_CHARACTERS: [(&str, [&str; 4]); 4] = [
    ("sigma1", ["1", "1", "1", "1"]),
    ("sigma1-", ["1", "W+", "W-", "1"]),
    ("sigma1+", ["1", "W-", "W+", "1"]),
    ("sigma3", ["3", "0", "0", "-1"]),
];

pub const A4_CHARACTER_LABEL_ERRATA: [(&str, &str); 2] = [("sigma1-", "sigma1+"), ("sigma1+", "sigma1-")];

/// `Ind ρ` and `Res σ` as printed.
pub const INDUCTION: [(&str, [&str; 2]); 3] =
    [("rho1", ["sigma3", "sigma1"]), ("rho+", ["sigma3", "sigma1+"]), ("rho-", ["sigma3", "sigma1-"])];

pub const RESTRICTION: [(&str, &[&str]); 4] = [
    ("sigma3", &["rho1", "rho+", "rho-"]),
    ("sigma1+", &["rho+"]),
    ("sigma1-", &["rho-"]),
    ("sigma1", &["rho1"]),
];
