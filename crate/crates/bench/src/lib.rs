//! Fixtures shared by the criterion benches: line bundles on the standard
//! covers, monomial pairs and their truncation-box elements.

use modsheaf_core::cech::{projective_box, CoveredSpace, LineBundleDatum};
use modsheaf_core::mo::box_elements;
use modsheaf_core::{AffineModulusPair, LocalizedElement, TruncationBox};

/// `O(d)` on `P^n` with the box that sees all of its cohomology.
pub fn projective_bundle(n: i64, d: i32) -> (LineBundleDatum, TruncationBox) {
    let space = CoveredSpace::projective(n).expect("projective cover");
    let bundle = LineBundleDatum::twisted(&space, &[d]).expect("twist");
    (bundle, projective_box(n as usize, d))
}

/// `O(i E)` on the blowup of `A^n` at the origin, on a symmetric box.
pub fn blowup_bundle(n: i64, i: i32, bound: i32) -> (LineBundleDatum, TruncationBox) {
    let space = CoveredSpace::blowup(n).expect("blowup cover");
    let bundle = LineBundleDatum::twisted(&space, &[i]).expect("twist");
    let window = TruncationBox::symmetric(space.vars(), bound);
    (bundle, window)
}

/// `(Q[x, y], x^a y^b)`.
pub fn monomial_pair(a: u32, b: u32) -> AffineModulusPair {
    AffineModulusPair::monomial(&["x", "y"], &[a, b]).expect("monomial pair")
}

/// All elements `x^i y^j / f^k` of the pair's truncation box.
pub fn membership_inputs(pair: &AffineModulusPair, bound: u32) -> Vec<LocalizedElement> {
    box_elements(pair, bound).expect("box elements").1
}
