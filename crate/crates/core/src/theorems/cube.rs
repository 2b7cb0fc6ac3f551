use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cech::{cech_cohomology, Constraint, CoveredSpace, LineBundleDatum, SectionLattice};
use crate::linalg::Matrix;
use crate::mo::{
    mo_contains_with, mo_generator, AffineModulusPair, LocalizedElement, MembershipOptions,
};
use crate::poly::{Coeff, CoeffRing, Poly, Rational};
use crate::truncation::{Axis, TruncationBox};

use super::{TheoremError, TheoremId, TheoremVerdict};

/// The cube sequence
/// `0 -> MO(A, f) -> MO(A[t], f) + MO(A[1/t], f/t) -> MO(A[t, 1/t], f) -> 0`
/// in the multidegree `x^e t^c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeSlice {
    pub e: Vec<i32>,
    pub c: i32,
    /// Dimensions of the four terms.
    pub dims: [usize; 4],
    pub rank_alpha: usize,
    pub rank_beta: usize,
    /// Elements of `ker beta` not in `im alpha`, printed in `A[t, 1/t]`.
    pub kernel_excess: Vec<String>,
    /// Elements of `MO(A[t], f) + MO(A[1/t], f/t)` that do not land in the
    /// last term (the map would be undefined).
    pub undefined: Vec<String>,
}

impl CubeSlice {
    pub fn injective(&self) -> bool {
        self.rank_alpha == self.dims[0]
    }

    pub fn middle_exact(&self) -> bool {
        self.dims[1] + self.dims[2] - self.rank_beta == self.rank_alpha
    }

    pub fn surjective(&self) -> bool {
        self.rank_beta == self.dims[3]
    }

    pub fn exact(&self) -> bool {
        self.undefined.is_empty() && self.injective() && self.middle_exact() && self.surjective()
    }

    /// `dim ker beta`, the global sections over `X x P^1` in this degree.
    pub fn h0(&self) -> usize {
        self.dims[1] + self.dims[2] - self.rank_beta
    }

    /// `dim coker beta`.
    pub fn h1(&self) -> usize {
        self.dims[3] - self.rank_beta
    }
}

struct CubePairs {
    base: AffineModulusPair,
    poly_t: AffineModulusPair,
    poly_s: AffineModulusPair,
    laurent: AffineModulusPair,
    tname: String,
    sname: String,
}

fn cube_pairs(pair: &AffineModulusPair) -> Result<CubePairs, TheoremError> {
    let mut tname = "t".to_string();
    while pair.ring().var_index(&tname).is_some()
        || pair.ring().var_index(&format!("{tname}s")).is_some()
    {
        tname.push('_');
    }
    let sname = format!("{tname}s");
    let poly_t = pair.adjoin(&tname, false)?;
    let s_ring = pair.adjoin(&sname, false)?;
    let s = Poly::var(s_ring.ring(), &sname)?;
    let poly_s = s_ring.with_factor(s, 1)?;
    let laurent = pair.adjoin(&tname, true)?;
    Ok(CubePairs {
        base: pair.clone(),
        poly_t,
        poly_s,
        laurent,
        tname,
        sname,
    })
}

/// `coeff * x^e * v^k` as an element of `pair`'s localization, or `None`
/// when it does not lie there.
fn element(
    pair: &AffineModulusPair,
    e: &[i32],
    var: Option<(&str, i32)>,
    coeff: &Coeff,
) -> Result<Option<LocalizedElement>, TheoremError> {
    let ring = pair.ring();
    let mut num = vec![0; ring.nvars()];
    let mut den = vec![0; ring.nvars()];
    let mut place = |i: usize, x: i32| {
        if x < 0 && !ring.is_invertible(i) {
            den[i] = -x;
        } else {
            num[i] = x;
        }
    };
    for (i, &x) in e.iter().enumerate() {
        place(i, x);
    }
    if let Some((name, k)) = var {
        let i = ring.var_index(name).expect("adjoined variable");
        place(i, k);
    }
    let n = Poly::monomial(ring, num, coeff.clone())?;
    let d = Poly::monomial(ring, den, Coeff::one())?;
    Ok(LocalizedElement::from_fraction(pair, &n, &d)?)
}

fn is_member(
    pair: &AffineModulusPair,
    a: Option<LocalizedElement>,
    opts: MembershipOptions,
) -> Result<bool, TheoremError> {
    Ok(match a {
        Some(a) => mo_contains_with(pair, &a, opts)?.member,
        None => false,
    })
}

/// Computes the cube sequence degree by degree for a monomial modulus, on
/// `x^e t^c` with `|e|, |c| <= bound` (negative `e` only where `f` or an
/// inverted variable allows it).
pub fn cube_slices(
    pair: &AffineModulusPair,
    bound: i32,
    opts: MembershipOptions,
) -> Result<Vec<CubeSlice>, TheoremError> {
    if !pair.modulus().is_monomial() {
        return Err(TheoremError::Invalid(format!(
            "modulus {} is not monomial",
            pair.modulus()
        )));
    }
    let cp = cube_pairs(pair)?;
    let ring = pair.ring();
    let n = ring.nvars();
    let support = pair.modulus().monomial_exponents().expect("monomial");
    let axes: Vec<Axis> = (0..n)
        .map(|i| Axis {
            var: ring.vars()[i].clone(),
            lo: if support[i] > 0 || ring.is_invertible(i) {
                -bound
            } else {
                0
            },
            hi: bound,
        })
        .collect();
    let coeff_basis: Vec<Coeff> = match pair.coeffs() {
        CoeffRing::Rationals => vec![Coeff::one()],
        CoeffRing::DualNumbers => vec![Coeff::one(), Coeff::epsilon()],
    };
    let nb = coeff_basis.len();
    let one = Rational::from_integer(1.into());
    let points: Vec<(Vec<i32>, i32)> = TruncationBox::new(axes)
        .points()
        .flat_map(|e| (-bound..=bound).map(move |c| (e.clone(), c)))
        .collect();
    let slices: Vec<Option<CubeSlice>> = points
        .par_iter()
        .map(|(e, c)| -> Result<Option<CubeSlice>, TheoremError> {
            let (e, c) = (e.clone(), *c);
            let mut v: [Vec<usize>; 4] = Default::default();
            for (b, coeff) in coeff_basis.iter().enumerate() {
                let m0 = c == 0 && is_member(&cp.base, element(&cp.base, &e, None, coeff)?, opts)?;
                let m1 = is_member(
                    &cp.poly_t,
                    element(&cp.poly_t, &e, Some((&cp.tname, c)), coeff)?,
                    opts,
                )?;
                let m2 = is_member(
                    &cp.poly_s,
                    element(&cp.poly_s, &e, Some((&cp.sname, -c)), coeff)?,
                    opts,
                )?;
                let m3 = is_member(
                    &cp.laurent,
                    element(&cp.laurent, &e, Some((&cp.tname, c)), coeff)?,
                    opts,
                )?;
                for (k, m) in [m0, m1, m2, m3].into_iter().enumerate() {
                    if m {
                        v[k].push(b);
                    }
                }
            }
            if v.iter().all(Vec::is_empty) {
                return Ok(None);
            }
            let show = |b: usize| -> String {
                let mut exp = e.clone();
                exp.push(c);
                Poly::monomial(cp.laurent.ring(), exp, coeff_basis[b].clone())
                    .map_or_else(|_| "?".into(), |p| p.to_string())
            };
            let mut undefined = Vec::new();
            for k in [1, 2] {
                for &b in &v[k] {
                    if !v[3].contains(&b) {
                        undefined.push(show(b));
                    }
                }
            }
            for &b in &v[0] {
                if !v[1].contains(&b) || !v[2].contains(&b) {
                    undefined.push(format!("{} (from MO(A, f))", show(b)));
                }
            }
            // coordinates over the coefficient basis
            let mid = v[1].len() + v[2].len();
            let mut alpha = Matrix::zeros(mid, v[0].len());
            for (col, b) in v[0].iter().enumerate() {
                if let Some(p) = v[1].iter().position(|x| x == b) {
                    alpha[(p, col)] = one.clone();
                }
                if let Some(p) = v[2].iter().position(|x| x == b) {
                    alpha[(v[1].len() + p, col)] = one.clone();
                }
            }
            let mut beta = Matrix::zeros(nb, mid);
            for (p, &b) in v[1].iter().enumerate() {
                beta[(b, p)] = one.clone();
            }
            for (p, &b) in v[2].iter().enumerate() {
                beta[(b, v[1].len() + p)] = -one.clone();
            }
            let rank_beta = beta.rank();
            let rank_alpha = alpha.rank();
            let mut kernel_excess = Vec::new();
            let image: Vec<Vec<Rational>> = (0..alpha.cols()).map(|j| alpha.column(j)).collect();
            let kernel = if mid == 0 { Vec::new() } else { beta.kernel() };
            for idx in crate::linalg::extend_basis(mid, &image, &kernel) {
                let k = &kernel[idx];
                let mut coeff = Coeff::zero();
                for (p, &b) in v[1].iter().enumerate() {
                    coeff = &coeff + &scale(&coeff_basis[b], &k[p]);
                }
                let mut exp = e.clone();
                exp.push(c);
                kernel_excess.push(Poly::monomial(cp.laurent.ring(), exp, coeff)?.to_string());
            }
            Ok(Some(CubeSlice {
                e: e.clone(),
                c,
                dims: [v[0].len(), v[1].len(), v[2].len(), v[3].len()],
                rank_alpha,
                rank_beta,
                kernel_excess,
                undefined,
            }))
        })
        .collect::<Result<_, _>>()?;
    Ok(slices.into_iter().flatten().collect())
}

fn scale(c: &Coeff, q: &Rational) -> Coeff {
    Coeff::new(&c.re * q, &c.eps * q)
}

/// Degreewise exactness of the cube sequence for a monomial modulus over Q,
/// plus the Mayer-Vietoris cross-check: `H^0` and `H^1` of `MO` on
/// `Spec A x P^1` computed by the Cech engine match `ker beta` and
/// `coker beta` in every degree.
pub fn check_cube_invariance(
    pair: &AffineModulusPair,
    bound: i32,
) -> Result<TheoremVerdict, TheoremError> {
    if pair.coeffs() != CoeffRing::Rationals {
        return Err(TheoremError::Invalid(
            "cube invariance needs a reduced coefficient ring".into(),
        ));
    }
    let mut v = TheoremVerdict::new(TheoremId::Cube)
        .param("pair", pair.to_string())
        .param("bound", bound);
    let slices = cube_slices(pair, bound, MembershipOptions::default())?;
    let mut h0_total = 0;
    let mut base_total = 0;
    for s in &slices {
        h0_total += s.h0();
        base_total += s.dims[0];
        if !s.exact() {
            let what = if let Some(u) = s.undefined.first() {
                format!("{u}: map undefined")
            } else if let Some(k) = s.kernel_excess.first() {
                format!("{k}: in ker beta, not in im alpha")
            } else if !s.injective() {
                "alpha not injective".into()
            } else {
                "beta not surjective".into()
            };
            v.fail(format!("degree x^{:?} t^{}: {what}", s.e, s.c));
        }
    }
    v.observe("degrees", slices.len());
    v.observe("h0_product", h0_total);
    v.observe("h0_base", base_total);

    // Cech cross-check on Spec A x P^1 with MO(A, f) on the affine factor
    let ring = pair.ring();
    let n = ring.nvars();
    let den = mo_generator(pair)?.denominator;
    let den_e = den.monomial_exponent().expect("monomial").clone();
    let cs = (0..n)
        .filter(|&i| !ring.is_invertible(i))
        .map(|i| Constraint::var_at_least(n, i, -den_e[i]));
    let lattice = SectionLattice::new(n, cs)?;
    let space = CoveredSpace::affine(ring.vars(), lattice)?.product_with_line()?;
    let bundle = LineBundleDatum::structure_sheaf(&space);
    let mut axes: Vec<Axis> = slices_box(pair, bound);
    axes.push(Axis {
        var: space.vars()[n].clone(),
        lo: -bound,
        hi: bound,
    });
    axes.push(Axis {
        var: space.vars()[n + 1].clone(),
        lo: -bound,
        hi: bound,
    });
    let window = TruncationBox::new(axes);
    let report = cech_cohomology(&bundle, &window)?;
    for s in &slices {
        let mut r = s.e.clone();
        r.push(-s.c);
        r.push(s.c);
        let (c0, c1) = (report.dim_at(0, &r), report.dim_at(1, &r));
        if c0 != s.h0() || c1 != s.h1() {
            v.fail(format!(
                "degree x^{:?} t^{}: Cech gives h0 = {c0}, h1 = {c1}; sequence gives {} and {}",
                s.e,
                s.c,
                s.h0(),
                s.h1()
            ));
        }
    }
    if report.total(0) != h0_total {
        v.fail(format!(
            "Cech H^0 total {} differs from sequence total {h0_total}",
            report.total(0)
        ));
    }
    if report.total(1) != 0 {
        v.fail(format!(
            "H^1(X x P^1, MO) has a class at {}",
            report.degrees[1].entries[0].monomial
        ));
    }
    v.truncation_box = Some(window);
    v.observe("cech_dims", json!(report.totals()));
    Ok(v)
}

fn slices_box(pair: &AffineModulusPair, bound: i32) -> Vec<Axis> {
    let ring = pair.ring();
    let support = pair.modulus().monomial_exponents().expect("monomial");
    (0..ring.nvars())
        .map(|i| Axis {
            var: ring.vars()[i].clone(),
            lo: if support[i] > 0 || ring.is_invertible(i) {
                -bound
            } else {
                0
            },
            hi: bound,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mo::FactoredDivisor;
    use crate::poly::PolyRing;
    use crate::theorems::VerdictStatus;

    #[test]
    fn examples() {
        for (vars, exps) in [
            (vec!["x"], vec![2]),
            (vec![], vec![]),
            (vec!["x", "y"], vec![3, 1]),
        ] {
            let p = AffineModulusPair::monomial(&vars, &exps).unwrap();
            let v = check_cube_invariance(&p, 3).unwrap();
            assert_eq!(v.status, VerdictStatus::Pass, "{}", v.render_text());
        }
    }

    #[test]
    fn dual_numbers_break_middle_exactness() {
        let r = PolyRing::polynomial(&[] as &[&str], CoeffRing::DualNumbers).unwrap();
        let p = AffineModulusPair::new(FactoredDivisor::one(&r)).unwrap();
        let slices = cube_slices(&p, 2, MembershipOptions::default()).unwrap();
        let s1 = slices.iter().find(|s| s.c == 1).unwrap();
        assert_eq!(s1.dims, [0, 2, 1, 2]);
        assert_eq!(s1.kernel_excess, vec!["eps*t".to_string()]);
        assert!(slices.iter().filter(|s| s.c != 1).all(|s| s.exact()));
    }
}
