use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::mo::{
    box_elements, mo_contains, mo_generator, mo_pullback, AffineModulusPair, FactoredDivisor,
    LocalizedElement, MembershipOptions,
};
use crate::poly::{parse_poly, CoeffRing, Poly, PolyRing, RingMap};

use super::cube::cube_slices;
use super::{TheoremError, TheoremId, TheoremVerdict, VerdictStatus};

/// `A = coeffs`, `f = 1`: the cube sequence for `(A, 1)` and the kernel of
/// `MO(A[t], 1) + MO(A[1/t], 1/t) -> MO(A[t, 1/t], 1)`.
///
/// Over the dual numbers the kernel is `A + <eps> t`, strictly larger than
/// `A`, and the verdict carries the witness. Over Q the kernel is `A` and
/// the verdict passes.
pub fn counterexample_nonreduced(
    coeffs: CoeffRing,
    opts: MembershipOptions,
) -> Result<TheoremVerdict, TheoremError> {
    let ring = PolyRing::polynomial(&[] as &[&str], coeffs)?;
    let pair = AffineModulusPair::new(FactoredDivisor::one(&ring))?;
    let expected = if coeffs.is_reduced() {
        VerdictStatus::Pass
    } else {
        VerdictStatus::StrictInclusionWitnessed
    };
    let bound = 3;
    let mut v = TheoremVerdict::new(TheoremId::Nonreduced)
        .param("coefficients", coeffs.to_string())
        .param("search_bound", opts.search_bound)
        .param("t_degrees", json!([-bound, bound]))
        .expecting(expected);
    let slices = cube_slices(&pair, bound, opts)?;
    let mut modules = serde_json::Map::new();
    let names = [
        "MO(A, f)",
        "MO(A[t], f)",
        "MO(A[1/t], f/t)",
        "MO(A[t, 1/t], f)",
    ];
    for (k, name) in names.iter().enumerate() {
        let dims: serde_json::Map<String, serde_json::Value> = slices
            .iter()
            .filter(|s| s.dims[k] > 0)
            .map(|s| (format!("t^{}", s.c), json!(s.dims[k])))
            .collect();
        modules.insert(name.to_string(), serde_json::Value::Object(dims));
    }
    v.observe("modules", serde_json::Value::Object(modules));
    let kernel: serde_json::Map<String, serde_json::Value> = slices
        .iter()
        .filter(|s| s.h0() > 0)
        .map(|s| (format!("t^{}", s.c), json!(s.h0())))
        .collect();
    v.observe("kernel_dims", serde_json::Value::Object(kernel));
    let excess: Vec<String> = slices
        .iter()
        .flat_map(|s| s.kernel_excess.clone())
        .collect();
    v.observe("kernel_excess", json!(excess));
    for s in &slices {
        if !s.undefined.is_empty() || !s.injective() || !s.surjective() {
            v.fail(format!("t^{}: sequence not exact at the ends", s.c));
        }
    }
    match (excess.first(), coeffs.is_reduced()) {
        (Some(w), false) => v.witnessed(format!("{w} lies in the kernel but not in A")),
        (None, false) => v.fail("kernel equals A in the window; no witness found"),
        (Some(w), true) => v.fail(format!(
            "{w} lies in the kernel but not in A over a reduced ring"
        )),
        (None, true) => v.note("kernel equals A"),
    }
    Ok(v)
}

/// The base changes exercised by the flat base change check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseChangeCase {
    /// `Q[u] -> Q[t]`, `u -> t^2`, `f = u^2`: flat, not etale.
    Square,
    /// `Q[u] -> Q[t]`, `u -> t^3`, `f = u^2`.
    Cube,
    /// The identity of `Q[t]`, `f = t^2`.
    Identity,
    /// `Q[x, y] -> Q[x, y^+-1]`, `f = x^2 y^3`: an open immersion.
    Localization,
}

impl BaseChangeCase {
    pub const ALL: [BaseChangeCase; 4] =
        [Self::Square, Self::Cube, Self::Identity, Self::Localization];

    pub fn is_etale(self) -> bool {
        matches!(self, Self::Identity | Self::Localization)
    }

    fn datum(self) -> Result<(RingMap, AffineModulusPair), TheoremError> {
        let q = CoeffRing::Rationals;
        let (src, tgt, images, f): (_, _, Vec<&str>, &str) = match self {
            Self::Square => (
                PolyRing::polynomial(&["u"], q)?,
                PolyRing::polynomial(&["t"], q)?,
                vec!["t^2"],
                "u^2",
            ),
            Self::Cube => (
                PolyRing::polynomial(&["u"], q)?,
                PolyRing::polynomial(&["t"], q)?,
                vec!["t^3"],
                "u^2",
            ),
            Self::Identity => {
                let r = PolyRing::polynomial(&["t"], q)?;
                (r.clone(), r, vec!["t"], "t^2")
            }
            Self::Localization => (
                PolyRing::polynomial(&["x", "y"], q)?,
                PolyRing::laurent(&["x", "y"], &["y"], q)?,
                vec!["x", "y"],
                "x^2*y^3",
            ),
        };
        let images = images
            .iter()
            .map(|s| parse_poly(&tgt, s))
            .collect::<Result<Vec<_>, _>>()?;
        let map = RingMap::new(&src, &tgt, images)?;
        let pair =
            AffineModulusPair::new(FactoredDivisor::from_monomial_poly(&parse_poly(&src, f)?)?)?;
        Ok((map, pair))
    }
}

/// `b / a` in `B` for two elements of the same localization, if it exists.
fn quotient(b: &LocalizedElement, a: &LocalizedElement) -> Result<Option<Poly>, TheoremError> {
    let f = b.base();
    let x = b.numerator() * &f.pow(a.fpower());
    let y = a.numerator() * &f.pow(b.fpower());
    Ok(x.exact_divide(&y)?)
}

/// Compares, along `phi: A -> B` with `g = phi(f)`, the image of
/// `B (x) MO(A, f)` with `MO(B, g)`. Both are free of rank one; the
/// inclusion is strict exactly when the generator of `MO(B, g)` is not a
/// `B`-multiple of the image of the generator of `MO(A, f)`.
pub fn base_change_case(case: BaseChangeCase, bound: u32) -> Result<TheoremVerdict, TheoremError> {
    let (map, src) = case.datum()?;
    let g = map.apply(src.f())?;
    let dst = AffineModulusPair::new(FactoredDivisor::from_monomial_poly(&g)?)?;
    let expected = if case.is_etale() {
        VerdictStatus::Pass
    } else {
        VerdictStatus::StrictInclusionWitnessed
    };
    let mut v = TheoremVerdict::new(TheoremId::Flatbc)
        .param("case", json!(case))
        .param("source", src.to_string())
        .param("target", dst.to_string())
        .expecting(expected);
    let image = mo_pullback(&map, &src, &dst, &mo_generator(&src)?.generator)?;
    let target = mo_generator(&dst)?.generator;
    v.observe("image_generator", image.to_string());
    v.observe("target_generator", target.to_string());
    if !mo_contains(&dst, &image)? {
        v.fail(format!("image {image} of the generator is not in MO(B, g)"));
    }
    let (window, elements) = box_elements(&dst, bound)?;
    let mut missing = Vec::new();
    for a in &elements {
        if mo_contains(&dst, a)? && quotient(a, &image)?.is_none() {
            missing.push(a.to_string());
        }
    }
    v.truncation_box = Some(window);
    v.observe("missing_in_box", missing.len());
    match (quotient(&target, &image)?, case.is_etale()) {
        (Some(_), true) => {
            if !missing.is_empty() {
                v.fail(format!(
                    "{} is in MO(B, g) but not in the image",
                    missing[0]
                ));
            }
        }
        (Some(_), false) => v.fail(format!(
            "image generator {image} generates MO(B, g) = <{target}>"
        )),
        (None, etale) => {
            let w = format!("{target} in MO(B, g) but not in the image <{image}>");
            if etale {
                v.fail(w);
            } else {
                v.witnessed(w);
            }
        }
    }
    Ok(v)
}

/// The flat, non-etale base change `u -> t^2` with `f = u^2`: the image
/// `t^-2 Q[t]` sits strictly inside `MO(Q[t], t^4) = t^-3 Q[t]`.
pub fn counterexample_flat_base_change() -> Result<TheoremVerdict, TheoremError> {
    base_change_case(BaseChangeCase::Square, 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonreduced_witness() {
        let v = counterexample_nonreduced(CoeffRing::DualNumbers, MembershipOptions::default())
            .unwrap();
        assert_eq!(
            v.status,
            VerdictStatus::StrictInclusionWitnessed,
            "{}",
            v.render_text()
        );
        assert!(v.witness.as_deref().unwrap().starts_with("eps*t "));
        assert_eq!(v.observations["kernel_dims"], json!({"t^0": 2, "t^1": 1}));
        let r =
            counterexample_nonreduced(CoeffRing::Rationals, MembershipOptions::default()).unwrap();
        assert_eq!(r.status, VerdictStatus::Pass);
        assert!(r.is_expected());
    }

    #[test]
    fn nonreduced_search_stability() {
        let one = counterexample_nonreduced(
            CoeffRing::DualNumbers,
            MembershipOptions { search_bound: 1 },
        )
        .unwrap();
        let four = counterexample_nonreduced(
            CoeffRing::DualNumbers,
            MembershipOptions { search_bound: 4 },
        )
        .unwrap();
        assert_eq!(one.witness, four.witness);
    }

    #[test]
    fn flat_cases() {
        let v = counterexample_flat_base_change().unwrap();
        assert_eq!(v.status, VerdictStatus::StrictInclusionWitnessed);
        assert_eq!(v.observations["image_generator"], json!("1/t^2"));
        assert_eq!(v.observations["target_generator"], json!("1/t^3"));
        let v = base_change_case(BaseChangeCase::Cube, 6).unwrap();
        assert_eq!(v.observations["image_generator"], json!("1/t^3"));
        assert_eq!(v.observations["target_generator"], json!("1/t^5"));
        for case in [BaseChangeCase::Identity, BaseChangeCase::Localization] {
            let v = base_change_case(case, 3).unwrap();
            assert_eq!(v.status, VerdictStatus::Pass, "{}", v.render_text());
        }
    }
}
