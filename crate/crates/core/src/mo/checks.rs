//! Box-relative checks of the elementary properties of `MO`.

use crate::poly::{Coeff, CoeffRing, Poly};
use crate::theorems::{TheoremId, TheoremVerdict, VerdictStatus};
use crate::truncation::{Axis, TruncationBox};

use super::{mo_contains_with, AffineModulusPair, LocalizedElement, MembershipOptions, MoError};

/// Test elements of `A[1/f]`: coefficient basis (`1`, plus `eps` over the
/// dual numbers) times `x^e * prod p_i^-j_i` with `|e|, j <= bound`.
///
/// Negative exponents are used on inverted variables and on variables that
/// are factors of `f`; other factors get their own `j` axis. The returned box
/// lists every axis.
pub fn box_elements(
    pair: &AffineModulusPair,
    bound: u32,
) -> Result<(TruncationBox, Vec<LocalizedElement>), MoError> {
    let ring = pair.ring();
    let b = bound as i32;
    let n = ring.nvars();
    let mut var_factor = vec![false; n];
    let mut other: Vec<Poly> = Vec::new();
    for (p, _) in pair.modulus().factors() {
        match p.monomial_exponent() {
            Some(e)
                if e.iter().filter(|&&x| x != 0).count() == 1
                    && e.iter().all(|&x| x == 0 || x == 1) =>
            {
                var_factor[e.iter().position(|&x| x == 1).expect("variable")] = true;
            }
            _ => other.push(p.clone()),
        }
    }
    let mut axes: Vec<Axis> = (0..n)
        .map(|i| Axis {
            var: ring.vars()[i].clone(),
            lo: if var_factor[i] || ring.is_invertible(i) {
                -b
            } else {
                0
            },
            hi: b,
        })
        .collect();
    for p in &other {
        axes.push(Axis {
            var: format!("1/({p})"),
            lo: 0,
            hi: b,
        });
    }
    let window = TruncationBox::new(axes);
    let mut coeffs = vec![Coeff::one()];
    if ring.coeffs() == CoeffRing::DualNumbers {
        coeffs.push(Coeff::epsilon());
    }
    let mut out = Vec::new();
    for pt in window.points() {
        let mut num_e = vec![0; n];
        let mut den_e = vec![0; n];
        for i in 0..n {
            if pt[i] < 0 && !ring.is_invertible(i) {
                den_e[i] = -pt[i];
            } else {
                num_e[i] = pt[i];
            }
        }
        let mut den = Poly::monomial(ring, den_e, Coeff::one())?;
        for (p, &j) in other.iter().zip(&pt[n..]) {
            den = &den * &p.pow(j as u32);
        }
        for c in &coeffs {
            let num = Poly::monomial(ring, num_e.clone(), c.clone())?;
            match LocalizedElement::from_fraction(pair, &num, &den)? {
                Some(a) => out.push(a),
                None => {
                    return Err(MoError::Defect(format!(
                        "box element {num}/({den}) outside A[1/f]"
                    )))
                }
            }
        }
    }
    Ok((window, out))
}

fn fresh_var(pair: &AffineModulusPair) -> String {
    let mut t = "t".to_string();
    while pair.ring().var_index(&t).is_some() {
        t.push('_');
    }
    t
}

fn options_for(pair: &AffineModulusPair) -> MembershipOptions {
    MembershipOptions {
        search_bound: MembershipOptions::default()
            .search_bound
            .max(pair.modulus().max_multiplicity()),
    }
}

fn member(pair: &AffineModulusPair, a: &LocalizedElement) -> Result<bool, MoError> {
    Ok(mo_contains_with(pair, a, options_for(pair))?.member)
}

/// `N / f^k` over a pair whose ring contains ours, times `t^c` (c >= 0).
fn lift(
    ext: &AffineModulusPair,
    a: &LocalizedElement,
    t: &Poly,
    c: u32,
) -> Result<LocalizedElement, MoError> {
    let num = &a.numerator().embed(ext.ring())? * &t.pow(c);
    LocalizedElement::new(ext, num, a.fpower())
}

/// Checks `MO(A[t], f) = MO(A, f)[t]` on box elements `a * t^c`, and on
/// `a * t^c + t^(c+1)`, whose membership must match that of `a`.
pub fn check_poly_extension(
    pair: &AffineModulusPair,
    degree_bound: u32,
) -> Result<TheoremVerdict, MoError> {
    let tname = fresh_var(pair);
    let ext = pair.adjoin(&tname, false)?;
    let t = Poly::var(ext.ring(), &tname)?;
    let (window, elems) = box_elements(pair, degree_bound)?;
    let window = window.with_axis(Axis {
        var: tname.clone(),
        lo: 0,
        hi: degree_bound as i32,
    });
    let mut v = TheoremVerdict::new(TheoremId::Polyext)
        .param("pair", pair.to_string())
        .param("degree_bound", degree_bound)
        .with_box(window);
    let mut tested = 0u64;
    let mut members = 0u64;
    for a in &elems {
        let base = member(pair, a)?;
        for c in 0..=degree_bound {
            let x = lift(&ext, a, &t, c)?;
            let y = x.add(&LocalizedElement::from_poly(&ext, t.pow(c + 1))?)?;
            for z in [&x, &y] {
                tested += 1;
                let m = member(&ext, z)?;
                members += m as u64;
                if m != base {
                    v.fail(format!(
                        "{z}: member of MO(A[t], f) is {m}, coefficient test gives {base}"
                    ));
                }
            }
        }
    }
    v.observe("elements_tested", tested);
    v.observe("members", members);
    Ok(v)
}

/// Compares `MO(A[t], f)` with `MO(A[t], ft)` inside `A[t, 1/t, 1/f]` on the
/// elements `a * t^c`, `|c| <= bound`. Equality is expected over a reduced
/// ring; over the dual numbers the inclusion should be strict.
pub fn check_divisor_shift(
    pair: &AffineModulusPair,
    degree_bound: u32,
) -> Result<TheoremVerdict, MoError> {
    let tname = fresh_var(pair);
    let left = pair.adjoin(&tname, false)?;
    let t = Poly::var(left.ring(), &tname)?;
    let right = left.with_factor(t.clone(), 1)?;
    let (window, elems) = box_elements(pair, degree_bound)?;
    let b = degree_bound as i32;
    let window = window.with_axis(Axis {
        var: tname.clone(),
        lo: -b,
        hi: b,
    });
    let expected = if pair.coeffs().is_reduced() {
        VerdictStatus::Pass
    } else {
        VerdictStatus::StrictInclusionWitnessed
    };
    let mut v = TheoremVerdict::new(TheoremId::Divshift)
        .param("pair", pair.to_string())
        .param("degree_bound", degree_bound)
        .with_box(window)
        .expecting(expected);
    let mut strict: Option<String> = None;
    let mut extra = 0u64;
    for a in &elems {
        for c in -b..=b {
            let in_left = if c >= 0 {
                member(&left, &lift(&left, a, &t, c as u32)?)?
            } else {
                false
            };
            // a t^c = N t^(c+k+m) f^m / (ft)^(k+m), choosing m so the t-power is >= 0
            let k = a.fpower() as i32;
            let m = (-(c + k)).max(0);
            let num = &(&a.numerator().embed(left.ring())? * &t.pow((c + k + m) as u32))
                * &left.f().pow(m as u32);
            let x = LocalizedElement::new(&right, num, (k + m) as u32)?;
            let in_right = member(&right, &x)?;
            if in_left && !in_right {
                v.fail(format!("{x} lies in MO(A[t], f) but not in MO(A[t], ft)"));
            } else if in_right && !in_left {
                extra += 1;
                if strict.is_none() {
                    strict = Some(x.to_string());
                }
            }
        }
    }
    v.observe("elements_only_in_shifted", extra);
    match (strict, expected) {
        (Some(w), VerdictStatus::StrictInclusionWitnessed) => v.witnessed(w),
        (Some(w), _) => v.fail(format!("{w} lies in MO(A[t], ft) but not in MO(A[t], f)")),
        (None, VerdictStatus::StrictInclusionWitnessed) => {
            v.fail("no element of MO(A[t], ft) outside MO(A[t], f) in the box")
        }
        (None, _) => {}
    }
    Ok(v)
}

/// Checks that every box element of `A[1/f]` lies in `MO(A, f^n)` for some
/// `n <= bound + 1`, and that membership is monotone in `n`.
pub fn check_exhaustion(pair: &AffineModulusPair, bound: u32) -> Result<TheoremVerdict, MoError> {
    let n_max = bound + 1;
    let (window, elems) = box_elements(pair, bound)?;
    let mut v = TheoremVerdict::new(TheoremId::Exhaustion)
        .param("pair", pair.to_string())
        .param("bound", bound)
        .with_box(window);
    let levels: Vec<AffineModulusPair> = (1..=n_max)
        .map(|n| pair.power(n))
        .collect::<Result<_, _>>()?;
    let mut counts = vec![0u64; n_max as usize];
    for a in &elems {
        let k = a.fpower();
        let mut seen = false;
        for (idx, level) in levels.iter().enumerate() {
            let n = idx as u32 + 1;
            // N / f^k = N f^(k(n-1)) / (f^n)^k
            let num = a.numerator() * &pair.f().pow(k * (n - 1));
            let x = LocalizedElement::new(level, num, k)?;
            let m = member(level, &x)?;
            if m {
                counts[idx] += 1;
                seen = true;
            } else if seen {
                v.fail(format!(
                    "{a} lies in MO(A, f^{}) but not in MO(A, f^{n})",
                    n - 1
                ));
            }
        }
        if !seen {
            v.fail(format!("{a} lies in no MO(A, f^n) with n <= {n_max}"));
        }
    }
    v.observe("elements", elems.len() as u64);
    v.observe("members_by_level", counts);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mo::FactoredDivisor;
    use crate::poly::PolyRing;

    #[test]
    fn polynomial_extension_examples() {
        let p = AffineModulusPair::monomial(&["x"], &[2]).unwrap();
        assert_eq!(
            check_poly_extension(&p, 4).unwrap().status,
            VerdictStatus::Pass
        );
        let p = AffineModulusPair::monomial(&["x"], &[0]).unwrap();
        assert_eq!(
            check_poly_extension(&p, 3).unwrap().status,
            VerdictStatus::Pass
        );
        let p = AffineModulusPair::monomial(&["x", "y"], &[2, 3]).unwrap();
        assert_eq!(
            check_poly_extension(&p, 3).unwrap().status,
            VerdictStatus::Pass
        );
    }

    #[test]
    fn divisor_shift_reduced() {
        let p = AffineModulusPair::monomial(&["x"], &[2]).unwrap();
        let v = check_divisor_shift(&p, 4).unwrap();
        assert!(v.is_expected(), "{}", v.render_text());
        let r = PolyRing::polynomial(&[] as &[&str], CoeffRing::Rationals).unwrap();
        let p = AffineModulusPair::new(FactoredDivisor::one(&r)).unwrap();
        assert_eq!(
            check_divisor_shift(&p, 2).unwrap().status,
            VerdictStatus::Pass
        );
    }

    #[test]
    fn divisor_shift_dual_numbers_is_strict() {
        let r = PolyRing::polynomial(&[] as &[&str], CoeffRing::DualNumbers).unwrap();
        let p = AffineModulusPair::new(FactoredDivisor::one(&r)).unwrap();
        let v = check_divisor_shift(&p, 2).unwrap();
        assert_eq!(v.status, VerdictStatus::StrictInclusionWitnessed);
        assert_eq!(v.witness.as_deref(), Some("eps/t"));
    }

    #[test]
    fn exhaustion() {
        let p = AffineModulusPair::monomial(&["x", "y"], &[2, 1]).unwrap();
        let v = check_exhaustion(&p, 3).unwrap();
        assert!(v.is_expected(), "{}", v.render_text());
    }
}
