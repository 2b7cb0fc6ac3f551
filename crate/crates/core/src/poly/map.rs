use std::sync::Arc;

use super::poly::Poly;
use super::ring::PolyRing;
use super::PolyError;

/// Substitution homomorphism `source -> target` given by the image of each
/// source variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: Arc<PolyRing>,
    target: Arc<PolyRing>,
    images: Vec<Poly>,
}

impl RingMap {
    /// Inverted source variables must go to units of the target, otherwise
    /// the substitution does not extend to the Laurent ring.
    pub fn new(
        source: &Arc<PolyRing>,
        target: &Arc<PolyRing>,
        images: Vec<Poly>,
    ) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::ExponentLength {
                expected: source.nvars(),
                got: images.len(),
            });
        }
        if source.coeffs() != target.coeffs() {
            return Err(PolyError::RingMismatch {
                left: source.to_string(),
                right: target.to_string(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if **img.ring() != **target {
                return Err(PolyError::RingMismatch {
                    left: img.ring().to_string(),
                    right: target.to_string(),
                });
            }
            if source.is_invertible(i) && !img.is_unit() {
                return Err(PolyError::NonUnitImage(source.vars()[i].clone()));
            }
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let images = ring
            .vars()
            .iter()
            .map(|v| Poly::var(ring, v).expect("own variable"))
            .collect();
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    /// The map sending each source variable to the target variable of the
    /// same name.
    pub fn inclusion(source: &Arc<PolyRing>, target: &Arc<PolyRing>) -> Result<Self, PolyError> {
        let images = source
            .vars()
            .iter()
            .map(|v| Poly::var(target, v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<PolyRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyRing> {
        &self.target
    }

    pub fn image_of_var(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly, PolyError> {
        if **p.ring() != *self.source {
            return Err(PolyError::RingMismatch {
                left: p.ring().to_string(),
                right: self.source.to_string(),
            });
        }
        let inverses: Vec<Option<Poly>> = self
            .images
            .iter()
            .map(|img| {
                if img.is_unit() {
                    Poly::one(&self.target).exact_divide(img).ok().flatten()
                } else {
                    None
                }
            })
            .collect();
        let mut out = Poly::zero(&self.target);
        for (e, c) in p.terms() {
            let mut term = Poly::constant(&self.target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let factor = match k {
                    0 => continue,
                    k if k > 0 => self.images[i].pow(k as u32),
                    k => inverses[i]
                        .as_ref()
                        .ok_or_else(|| PolyError::NonUnitImage(self.source.vars()[i].clone()))?
                        .pow(k.unsigned_abs()),
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, CoeffRing};

    #[test]
    fn square_substitution() {
        let u = PolyRing::polynomial(&["u"], CoeffRing::Rationals).unwrap();
        let t = PolyRing::polynomial(&["t"], CoeffRing::Rationals).unwrap();
        let m = RingMap::new(&u, &t, vec![parse_poly(&t, "t^2").unwrap()]).unwrap();
        assert_eq!(
            m.apply(&parse_poly(&u, "u^3").unwrap()).unwrap(),
            parse_poly(&t, "t^6").unwrap()
        );
    }

    #[test]
    fn identity_and_expansion() {
        let r = PolyRing::polynomial(&["x", "y"], CoeffRing::Rationals).unwrap();
        let p = parse_poly(&r, "x^2*y - 3").unwrap();
        assert_eq!(RingMap::identity(&r).apply(&p).unwrap(), p);
        let u = PolyRing::polynomial(&["u"], CoeffRing::Rationals).unwrap();
        let m = RingMap::new(&u, &r, vec![parse_poly(&r, "x + y").unwrap()]).unwrap();
        assert_eq!(
            m.apply(&parse_poly(&u, "u^2").unwrap()).unwrap(),
            parse_poly(&r, "x^2 + 2*x*y + y^2").unwrap()
        );
    }

    #[test]
    fn inverted_variables_need_unit_images() {
        let s = PolyRing::laurent(&["u"], &["u"], CoeffRing::Rationals).unwrap();
        let t = PolyRing::laurent(&["t"], &["t"], CoeffRing::Rationals).unwrap();
        let m = RingMap::new(&s, &t, vec![parse_poly(&t, "2*t^3").unwrap()]).unwrap();
        assert_eq!(
            m.apply(&parse_poly(&s, "u^-1").unwrap()).unwrap(),
            parse_poly(&t, "1/2*t^-3").unwrap()
        );
        assert!(RingMap::new(&s, &t, vec![parse_poly(&t, "1 + t").unwrap()]).is_err());
    }
}
