//! Surface invariants constrained by Noether's formula, blow-ups, and
//! adjunction.

use num_traits::One;

use super::lattice::NumClass;
use super::ChernError;
use crate::qpoly::{int, is_integer, Rat};

/// Numerical data of a smooth projective surface: canonical class, the
/// topological Euler number, and the holomorphic Euler characteristic.
///
/// Construction enforces Noether's formula `chi = (K^2 + e)/12` exactly,
/// so every value of this type satisfies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceGeom {
    k: NumClass,
    e: i64,
    chi_o: Rat,
}

impl SurfaceGeom {
    /// Builds surface data, rejecting any triple violating Noether's
    /// formula.
    pub fn new(k: NumClass, e: i64, chi_o: Rat) -> Result<SurfaceGeom, ChernError> {
        let expected = (k.self_intersection() + int(e)) / int(12);
        if chi_o != expected {
            return Err(ChernError::NoetherViolation {
                chi: chi_o,
                expected,
            });
        }
        Ok(SurfaceGeom { k, e, chi_o })
    }

    /// The canonical class.
    pub fn k(&self) -> &NumClass {
        &self.k
    }

    /// The lattice the canonical class lives on.
    pub fn lattice(&self) -> &super::lattice::Lattice {
        self.k.lattice()
    }

    /// The topological Euler number.
    pub fn euler_number(&self) -> i64 {
        self.e
    }

    /// The holomorphic Euler characteristic of the structure sheaf.
    pub fn chi_o(&self) -> &Rat {
        &self.chi_o
    }

    /// Self-intersection of the canonical class.
    pub fn k_squared(&self) -> Rat {
        self.k.self_intersection()
    }

    /// Blows up `n >= 1` points: the lattice gains `n` exceptional
    /// classes, the canonical class gains each of them with coefficient 1,
    /// `K^2` drops by `n`, `e` rises by `n`, and `chi` is unchanged.
    pub fn blowup(&self, n: u32) -> Result<SurfaceGeom, ChernError> {
        if n == 0 {
            return Err(ChernError::Shape(
                "blow-up needs at least one point".into(),
            ));
        }
        let (lattice, _fresh) = self.lattice().extend_by_exceptional(n as usize);
        let mut coeffs: Vec<Rat> = self.k.coeffs().to_vec();
        coeffs.extend(std::iter::repeat(Rat::one()).take(n as usize));
        let k = NumClass::from_coeffs(&lattice, coeffs)?;
        SurfaceGeom::new(k, self.e + i64::from(n), self.chi_o.clone())
    }
}

/// Result of the adjunction formula: the arithmetic genus of a divisor
/// class, flagged when the value fails to be an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionGenus {
    pub genus: Rat,
    pub integral: bool,
}

/// Genus of a divisor class by adjunction: `g = 1 + (D^2 + D.K)/2`.
pub fn adjunction_genus(d: &NumClass, y: &SurfaceGeom) -> Result<AdjunctionGenus, ChernError> {
    let self_int = d.self_intersection();
    let with_k = d.pair(y.k())?;
    let genus = int(1) + (self_int + with_k) / int(2);
    let integral = is_integer(&genus);
    Ok(AdjunctionGenus { genus, integral })
}

#[cfg(test)]
mod tests {
    use super::super::lattice::Lattice;
    use super::*;
    use num_traits::Zero;

    fn abelian_surface() -> SurfaceGeom {
        let lat = Lattice::new(&["L"], &[vec![4]]).unwrap();
        SurfaceGeom::new(NumClass::zero(&lat), 0, Rat::zero()).unwrap()
    }

    fn general_type_surface() -> SurfaceGeom {
        let lat = Lattice::new(&["Xi", "Phi"], &[vec![-3, 4], vec![4, 0]]).unwrap();
        let xi = NumClass::basis(&lat, "Xi").unwrap();
        let phi = NumClass::basis(&lat, "Phi").unwrap();
        let k = xi.checked_add(&phi).unwrap();
        SurfaceGeom::new(k, 7, Rat::one()).unwrap()
    }

    #[test]
    fn noether_is_enforced() {
        let lat = Lattice::new(&["Xi", "Phi"], &[vec![-3, 4], vec![4, 0]]).unwrap();
        let k = NumClass::basis(&lat, "Xi")
            .unwrap()
            .checked_add(&NumClass::basis(&lat, "Phi").unwrap())
            .unwrap();
        let err = SurfaceGeom::new(k, 7, int(2)).unwrap_err();
        assert!(matches!(err, ChernError::NoetherViolation { .. }));
        let s = general_type_surface();
        assert_eq!(s.k_squared(), int(5));
        assert_eq!(s.chi_o(), &Rat::one());
    }

    #[test]
    fn four_point_blowup_of_an_abelian_surface() {
        let blown = abelian_surface().blowup(4).unwrap();
        assert_eq!(blown.k_squared(), int(-4));
        assert_eq!(blown.euler_number(), 4);
        assert_eq!(blown.chi_o(), &Rat::zero());
        assert_eq!(blown.k().to_string(), "Lam1 + Lam2 + Lam3 + Lam4");
    }

    #[test]
    fn single_blowup_shifts_k_squared_and_euler() {
        let s = general_type_surface().blowup(1).unwrap();
        assert_eq!(s.k_squared(), int(4));
        assert_eq!(s.euler_number(), 8);
        assert_eq!(s.chi_o(), &Rat::one());
    }

    #[test]
    fn twelve_blowups_keep_noether_balanced() {
        let s = abelian_surface().blowup(12).unwrap();
        assert_eq!(s.k_squared(), int(-12));
        assert_eq!(s.euler_number(), 12);
        assert_eq!(s.chi_o(), &Rat::zero());
    }

    #[test]
    fn blowup_rejects_zero_points() {
        assert!(abelian_surface().blowup(0).is_err());
    }

    #[test]
    fn adjunction_genus_values() {
        let s = general_type_surface();
        let lat = s.lattice().clone();
        let phi = NumClass::basis(&lat, "Phi").unwrap();
        let xi = NumClass::basis(&lat, "Xi").unwrap();
        let g_phi = adjunction_genus(&phi, &s).unwrap();
        assert_eq!(g_phi.genus, int(3));
        assert!(g_phi.integral);
        let g_xi = adjunction_genus(&xi, &s).unwrap();
        assert_eq!(g_xi.genus, int(0));
        assert!(g_xi.integral);

        let a = abelian_surface();
        let l = NumClass::basis(a.lattice(), "L").unwrap();
        let g_l = adjunction_genus(&l, &a).unwrap();
        assert_eq!(g_l.genus, int(3));
        assert!(g_l.integral);
    }

    #[test]
    fn adjunction_flags_non_integral_genus() {
        let lat = Lattice::new(&["H"], &[vec![1]]).unwrap();
        let k = NumClass::zero(&lat);
        let y = SurfaceGeom::new(k, 0, Rat::zero()).unwrap();
        let h = NumClass::basis(&lat, "H").unwrap();
        let g = adjunction_genus(&h, &y).unwrap();
        assert_eq!(g.genus, crate::qpoly::rat(3, 2));
        assert!(!g.integral);
    }
}
