use std::sync::Arc;

use super::{same_ring, PolyError, PolyRing, Polynomial};

/// A derivation of `Q[vars]` given by the image of each variable.
#[derive(Clone, Debug)]
pub struct Derivation {
    ring: Arc<PolyRing>,
    images: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ring: &Arc<PolyRing>, images: Vec<Polynomial>) -> Result<Self, PolyError> {
        if images.len() != ring.nvars() {
            return Err(PolyError::Shape(format!(
                "derivation needs {} images, got {}",
                ring.nvars(),
                images.len()
            )));
        }
        if images.iter().any(|p| !same_ring(p.ring(), ring)) {
            return Err(PolyError::RingMismatch);
        }
        Ok(Derivation {
            ring: ring.clone(),
            images,
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Derivation {
            ring: ring.clone(),
            images: vec![Polynomial::zero(ring); ring.nvars()],
        }
    }

    pub fn set_image(&mut self, var: usize, image: Polynomial) {
        self.images[var] = image;
    }

    pub fn image(&self, var: usize) -> &Polynomial {
        &self.images[var]
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// `D(f) = sum_i df/dx_i * D(x_i)`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(PolyError::RingMismatch);
        }
        let mut acc = Polynomial::zero(&self.ring);
        for i in f.variables() {
            if self.images[i].is_zero() {
                continue;
            }
            acc = &acc + &(&f.derivative(i) * &self.images[i]);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::MonomialOrder;

    #[test]
    fn leibniz_on_square() {
        let ring = PolyRing::from_names(["x1", "x2"], MonomialOrder::DegRevLex).unwrap();
        let x1 = ring.var("x1").unwrap();
        let x2 = ring.var("x2").unwrap();
        let mut d = Derivation::zero(&ring);
        d.set_image(0, &x2 * &x2);
        let lhs = d.apply(&(&x1 * &x1)).unwrap();
        let rhs = (&x1 * d.image(0)).scale_int(2);
        assert_eq!(lhs, rhs);
    }
}
