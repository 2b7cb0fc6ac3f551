use serde::{Deserialize, Serialize};

use crate::poly::{CoeffRing, Poly, RingMap};

use super::{AffineModulusPair, LocalizedElement, MoError};

/// `MO(A, f)` for a factored modulus over a UFD: free of rank one, generated
/// by `1 / prod p_i^(r_i - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MOModule {
    pub pair: AffineModulusPair,
    /// `prod p_i^(r_i - 1)`.
    pub denominator: Poly,
    pub generator: LocalizedElement,
}

/// Computes the generator of `MO(A, f)`. Needs a UFD, so only the rational
/// coefficient ring is accepted.
pub fn mo_generator(pair: &AffineModulusPair) -> Result<MOModule, MoError> {
    if pair.coeffs() != CoeffRing::Rationals {
        return Err(MoError::UnsupportedRing(format!(
            "{} is not a UFD; the generator formula does not apply",
            pair.ring()
        )));
    }
    let denominator = pair.modulus().generator_denominator();
    // 1/D = (f/D) / f, and f/D = u * prod p_i
    let num = pair
        .f()
        .exact_divide(&denominator)?
        .ok_or_else(|| MoError::Defect("generator denominator does not divide f".into()))?;
    let generator = LocalizedElement::new(pair, num, 1)?;
    Ok(MOModule {
        pair: pair.clone(),
        denominator,
        generator,
    })
}

impl MOModule {
    /// The generator as `1/(prod p_i^(r_i - 1))`, factors kept apart.
    pub fn describe(&self) -> String {
        let factors: Vec<(crate::poly::Poly, u32)> = self
            .pair
            .modulus()
            .factors()
            .iter()
            .filter(|(_, r)| *r > 1)
            .map(|(p, r)| (p.clone(), r - 1))
            .collect();
        if factors.is_empty() {
            return "1".into();
        }
        if self.pair.modulus().is_monomial() {
            return self.generator.to_string();
        }
        let parts: Vec<String> = factors
            .iter()
            .map(|(p, r)| {
                let base = if p.num_terms() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                };
                if *r == 1 {
                    base
                } else {
                    format!("{base}^{r}")
                }
            })
            .collect();
        if parts.len() == 1 {
            format!("1/{}", parts[0])
        } else {
            format!("1/({})", parts.join("*"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipOptions {
    /// Largest `n` tried in the search for `(fa)^n a in A`.
    pub search_bound: u32,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        MembershipOptions { search_bound: 4 }
    }
}

/// Outcome of a membership test, with the evidence from each method.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub member: bool,
    /// `fa in A` and `fa in sqrt(f)`.
    pub radical: Option<bool>,
    /// Smallest `n` with `fa in A` and `(fa)^n a in A`, if one was found.
    pub search_exponent: Option<u32>,
}

pub fn mo_contains(pair: &AffineModulusPair, a: &LocalizedElement) -> Result<bool, MoError> {
    Ok(mo_contains_with(pair, a, MembershipOptions::default())?.member)
}

/// Membership of `a` in `MO(A, f)`.
///
/// Over Q both methods run (the search up to `max r_i`, which suffices for a
/// factored modulus) and must agree. Over the dual numbers the search with
/// the given bound decides; the radical test is compared whenever the bound
/// is at least `max r_i`.
pub fn mo_contains_with(
    pair: &AffineModulusPair,
    a: &LocalizedElement,
    opts: MembershipOptions,
) -> Result<Membership, MoError> {
    if a.base() != pair.f() {
        return Err(MoError::NotInLocalization(a.to_string()));
    }
    let rmax = pair.modulus().max_multiplicity();
    let Some(fa) = times_f(pair, a)? else {
        return Ok(Membership {
            member: false,
            radical: Some(false),
            search_exponent: None,
        });
    };
    let (member, radical, search) = match pair.coeffs() {
        CoeffRing::Rationals => {
            let rad = in_radical(pair, &fa)?;
            let search = search(pair, a, &fa, rmax)?;
            if rad != search.is_some() {
                return Err(disagreement(pair, a, rad, search));
            }
            (rad, Some(rad), search)
        }
        CoeffRing::DualNumbers => {
            let search = search(pair, a, &fa, opts.search_bound)?;
            let rad = if opts.search_bound >= rmax {
                let rad = in_radical(pair, &fa)?;
                if rad != search.is_some() {
                    return Err(disagreement(pair, a, rad, search));
                }
                Some(rad)
            } else {
                None
            };
            (search.is_some(), rad, search)
        }
    };
    Ok(Membership {
        member,
        radical,
        search_exponent: search,
    })
}

fn disagreement(
    pair: &AffineModulusPair,
    a: &LocalizedElement,
    rad: bool,
    search: Option<u32>,
) -> MoError {
    MoError::Defect(format!(
        "membership methods disagree for {a} in MO{pair}: radical says {rad}, search says {}",
        search.is_some()
    ))
}

/// `f * a` as a ring element, if it is one.
fn times_f(pair: &AffineModulusPair, a: &LocalizedElement) -> Result<Option<Poly>, MoError> {
    let k = a.fpower();
    if k == 0 {
        return Ok(Some(a.numerator() * pair.f()));
    }
    Ok(a.numerator().exact_divide(&pair.f().pow(k - 1))?)
}

/// `q in sqrt(fA)`. The nilradical lies in every radical ideal, so this only
/// looks at the reduction of `q`, where `sqrt(f) = (prod p_i)`.
fn in_radical(pair: &AffineModulusPair, q: &Poly) -> Result<bool, MoError> {
    let rad = pair.modulus().radical();
    Ok(q.reduced().exact_divide(&rad)?.is_some())
}

fn search(
    pair: &AffineModulusPair,
    a: &LocalizedElement,
    fa: &Poly,
    bound: u32,
) -> Result<Option<u32>, MoError> {
    let fk = pair.f().pow(a.fpower());
    let mut acc = a.numerator().clone();
    for n in 0..=bound {
        if acc.exact_divide(&fk)?.is_some() {
            return Ok(Some(n));
        }
        acc = &acc * fa;
    }
    Ok(None)
}

/// Image of `a in A[1/f]` in `B[1/g]` under `phi: A -> B`, defined when
/// `phi(f)` divides `g`.
pub fn mo_pullback(
    map: &RingMap,
    src: &AffineModulusPair,
    dst: &AffineModulusPair,
    a: &LocalizedElement,
) -> Result<LocalizedElement, MoError> {
    if map.source() != src.ring() || map.target() != dst.ring() {
        return Err(MoError::NotAdmissible(format!(
            "map {} -> {} does not match the pairs over {} and {}",
            map.source(),
            map.target(),
            src.ring(),
            dst.ring()
        )));
    }
    if a.base() != src.f() {
        return Err(MoError::NotInLocalization(a.to_string()));
    }
    let phi_f = map.apply(src.f())?;
    let Some(h) = dst.f().exact_divide(&phi_f)? else {
        return Err(MoError::NotAdmissible(format!(
            "phi(f) = {phi_f} does not divide {}",
            dst.f()
        )));
    };
    // N / f^k  ->  phi(N) h^k / g^k
    let k = a.fpower();
    let num = &map.apply(a.numerator())? * &h.pow(k);
    LocalizedElement::new(dst, num, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mo::FactoredDivisor;
    use crate::poly::{parse_fraction, parse_poly, PolyRing};

    fn elt(pair: &AffineModulusPair, s: &str) -> LocalizedElement {
        let fr = parse_fraction(pair.ring(), s).unwrap();
        LocalizedElement::from_fraction(pair, &fr.num, &fr.den)
            .unwrap()
            .unwrap()
    }

    #[test]
    fn generators() {
        let p = AffineModulusPair::monomial(&["x", "y"], &[3, 2]).unwrap();
        assert_eq!(mo_generator(&p).unwrap().generator.to_string(), "1/(x^2*y)");
        let p = AffineModulusPair::monomial(&["x"], &[1]).unwrap();
        assert_eq!(mo_generator(&p).unwrap().generator.to_string(), "1");
        let p = AffineModulusPair::monomial(&["t"], &[4]).unwrap();
        assert_eq!(mo_generator(&p).unwrap().generator.to_string(), "1/t^3");
    }

    #[test]
    fn generator_needs_ufd() {
        let r = PolyRing::polynomial(&["t"], CoeffRing::DualNumbers).unwrap();
        let p = AffineModulusPair::new(FactoredDivisor::monomial(&r, &[1]).unwrap()).unwrap();
        assert!(matches!(mo_generator(&p), Err(MoError::UnsupportedRing(_))));
    }

    #[test]
    fn membership_examples() {
        let p = AffineModulusPair::monomial(&["x"], &[2]).unwrap();
        assert!(mo_contains(&p, &elt(&p, "1/x")).unwrap());
        assert!(!mo_contains(&p, &elt(&p, "1/x^2")).unwrap());
        let p = AffineModulusPair::monomial(&["x"], &[0]).unwrap();
        assert!(mo_contains(&p, &elt(&p, "5")).unwrap());
    }

    #[test]
    fn non_monomial_modulus() {
        let r = PolyRing::polynomial(&["x", "y"], CoeffRing::Rationals).unwrap();
        let p1 = parse_poly(&r, "x + y").unwrap();
        let pair =
            AffineModulusPair::new(FactoredDivisor::new(Poly::one(&r), vec![(p1, 3)]).unwrap())
                .unwrap();
        assert!(mo_contains(&pair, &elt(&pair, "1/(x + y)^2")).unwrap());
        assert_eq!(mo_generator(&pair).unwrap().describe(), "1/(x + y)^2");
        assert!(mo_contains(&pair, &elt(&pair, "x/(x + y)")).unwrap());
        assert!(!mo_contains(&pair, &elt(&pair, "1/(x + y)^3")).unwrap());
    }

    #[test]
    fn dual_numbers_need_enough_search() {
        let r = PolyRing::polynomial(&["t"], CoeffRing::DualNumbers).unwrap();
        let pair = AffineModulusPair::new(FactoredDivisor::monomial(&r, &[1]).unwrap()).unwrap();
        let a = elt(&pair, "eps/t");
        let m = mo_contains_with(&pair, &a, MembershipOptions::default()).unwrap();
        assert!(m.member);
        assert_eq!(m.search_exponent, Some(1));
        let short = mo_contains_with(&pair, &a, MembershipOptions { search_bound: 0 }).unwrap();
        assert!(!short.member);
        assert_eq!(short.radical, None);
        assert!(!mo_contains(&pair, &elt(&pair, "1/t")).unwrap());
    }

    #[test]
    fn pullback_along_squaring() {
        let ru = PolyRing::polynomial(&["u"], CoeffRing::Rationals).unwrap();
        let rt = PolyRing::polynomial(&["t"], CoeffRing::Rationals).unwrap();
        let src = AffineModulusPair::new(FactoredDivisor::monomial(&ru, &[2]).unwrap()).unwrap();
        let dst = AffineModulusPair::new(FactoredDivisor::monomial(&rt, &[4]).unwrap()).unwrap();
        let map = RingMap::new(&ru, &rt, vec![parse_poly(&rt, "t^2").unwrap()]).unwrap();
        let img = mo_pullback(&map, &src, &dst, &elt(&src, "1/u")).unwrap();
        assert_eq!(img.to_string(), "1/t^2");
        assert!(mo_contains(&dst, &img).unwrap());
        let bad = AffineModulusPair::new(FactoredDivisor::monomial(&rt, &[3]).unwrap()).unwrap();
        assert!(matches!(
            mo_pullback(&map, &src, &bad, &elt(&src, "1/u")),
            Err(MoError::NotAdmissible(_))
        ));
    }

    #[test]
    fn pullback_along_inclusion() {
        let rx = PolyRing::polynomial(&["x"], CoeffRing::Rationals).unwrap();
        let rxy = PolyRing::polynomial(&["x", "y"], CoeffRing::Rationals).unwrap();
        let src = AffineModulusPair::new(FactoredDivisor::monomial(&rx, &[2]).unwrap()).unwrap();
        let dst =
            AffineModulusPair::new(FactoredDivisor::monomial(&rxy, &[2, 0]).unwrap()).unwrap();
        let map = RingMap::inclusion(&rx, &rxy).unwrap();
        let img = mo_pullback(&map, &src, &dst, &elt(&src, "1/x")).unwrap();
        assert_eq!(img.to_string(), "1/x");
        assert!(mo_contains(&dst, &img).unwrap());
    }
}
