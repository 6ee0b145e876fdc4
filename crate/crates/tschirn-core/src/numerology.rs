//! Closed-form counting: nodal members of a fibration, hyperelliptic
//! members of a genus-3 pencil, orbit counts for a finite translation
//! action on a rational curve, two-division-point bookkeeping, and the
//! assembly of the dimension of the family.
//!
//! Everything here is exact integer arithmetic. A formula that does not
//! come out to a nonnegative integer is an inconsistency in the input
//! data and is reported as a hard error, never rounded away.

use std::fmt;

/// Errors from the counting layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumerologyError {
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
    #[error("shape error: {0}")]
    Shape(String),
}

/// The numerical data of a relatively minimal fibration of a surface
/// over a curve, as needed for nodal-fiber and hyperelliptic counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FibrationData {
    /// Euler number of the total space.
    pub c2_total: i64,
    /// Euler number of the base curve.
    pub e_base: i64,
    /// Euler number of a general fiber; 2 - 2g for fiber genus g.
    pub e_fiber: i64,
    /// Self-intersection of the relative canonical class.
    pub ksq: i64,
    /// Relative holomorphic Euler characteristic.
    pub chi_o: i64,
    /// Euler-number increment contributed by one singular fiber; 1 for
    /// a fiber with a single node.
    pub nodal_delta: i64,
}

impl FibrationData {
    /// Builds the data from the fiber genus, so the Euler number of the
    /// fiber is 2 - 2g by construction.
    pub fn from_fiber_genus(
        c2_total: i64,
        e_base: i64,
        fiber_genus: i64,
        ksq: i64,
        chi_o: i64,
        nodal_delta: i64,
    ) -> Result<Self, NumerologyError> {
        if fiber_genus < 0 {
            return Err(NumerologyError::Shape(format!(
                "fiber genus {fiber_genus} is negative"
            )));
        }
        Ok(FibrationData {
            c2_total,
            e_base,
            e_fiber: 2 - 2 * fiber_genus,
            ksq,
            chi_o,
            nodal_delta,
        })
    }

    /// The fiber genus recovered from the Euler number.
    pub fn fiber_genus(&self) -> Result<i64, NumerologyError> {
        let doubled = 2 - self.e_fiber;
        if doubled % 2 != 0 || doubled < 0 {
            return Err(NumerologyError::InconsistentData(format!(
                "fiber Euler number {} is not 2 - 2g for a genus g >= 0",
                self.e_fiber
            )));
        }
        Ok(doubled / 2)
    }
}

/// The number of singular fibers by the Zeuthen-Segre formula: the
/// Euler number of the total space exceeds e(base) * e(fiber) by the
/// sum of the increments of the singular fibers, each contributing
/// `nodal_delta`.
pub fn zeuthen_segre_count(f: &FibrationData) -> Result<i64, NumerologyError> {
    if f.nodal_delta <= 0 {
        return Err(NumerologyError::Shape(format!(
            "the per-fiber increment must be positive, got {}",
            f.nodal_delta
        )));
    }
    let excess = f.c2_total - f.e_base * f.e_fiber;
    if excess % f.nodal_delta != 0 {
        return Err(NumerologyError::InconsistentData(format!(
            "Euler excess {excess} is not a multiple of the increment {}",
            f.nodal_delta
        )));
    }
    let count = excess / f.nodal_delta;
    if count < 0 {
        return Err(NumerologyError::InconsistentData(format!(
            "Euler excess {excess} would give {count} singular fibers"
        )));
    }
    Ok(count)
}

/// The degree of the torsion part of the pushforward of the relative
/// canonical sheaf for a genus-3 fibration: ksq = 3 chi - 10 + deg T,
/// where each hyperelliptic or reducible member contributes 1. Returns
/// deg T.
pub fn horikawa_count(ksq: i64, chi_o: i64) -> Result<i64, NumerologyError> {
    let degree = ksq - 3 * chi_o + 10;
    if degree < 0 {
        return Err(NumerologyError::InconsistentData(format!(
            "torsion degree {degree} is negative for ksq = {ksq}, chi = {chi_o}"
        )));
    }
    Ok(degree)
}

/// A finite group acting on a rational curve with rational quotient,
/// described by the group order and the sizes of the fibers over the
/// branch points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    group_order: i64,
    branch_fiber_sizes: Vec<i64>,
}

impl OrbitData {
    /// Validates that every branch fiber size properly divides the
    /// group order; a fiber as large as the group is not branched.
    pub fn new(group_order: i64, branch_fiber_sizes: Vec<i64>) -> Result<Self, NumerologyError> {
        if group_order < 1 {
            return Err(NumerologyError::Shape(format!(
                "group order {group_order} is not positive"
            )));
        }
        for &size in &branch_fiber_sizes {
            if size < 1 || group_order % size != 0 {
                return Err(NumerologyError::Shape(format!(
                    "branch fiber size {size} does not divide the group order {group_order}"
                )));
            }
            if size == group_order {
                return Err(NumerologyError::Shape(format!(
                    "a branch fiber of size {size} equals the group order and is unbranched"
                )));
            }
        }
        Ok(OrbitData {
            group_order,
            branch_fiber_sizes,
        })
    }

    pub fn group_order(&self) -> i64 {
        self.group_order
    }

    pub fn branch_fiber_sizes(&self) -> &[i64] {
        &self.branch_fiber_sizes
    }
}

/// Branch data solved from the Riemann-Hurwitz identity when every
/// branch fiber has the same size: the number b of branch points obeys
/// 2 = 2 * order - b * (order - size).
pub fn solve_uniform_branch(
    group_order: i64,
    fiber_size: i64,
) -> Result<OrbitData, NumerologyError> {
    if group_order < 1 || fiber_size < 1 || fiber_size >= group_order {
        return Err(NumerologyError::Shape(format!(
            "no branched action has order {group_order} and fiber size {fiber_size}"
        )));
    }
    let drop_per_point = group_order - fiber_size;
    let total_drop = 2 * group_order - 2;
    if total_drop % drop_per_point != 0 {
        return Err(NumerologyError::InconsistentData(format!(
            "2 * {group_order} - 2 is not a multiple of {drop_per_point}"
        )));
    }
    let points = total_drop / drop_per_point;
    OrbitData::new(group_order, vec![fiber_size; points as usize])
}

/// The branch-point and stabilized-element counts of an orbit datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitCount {
    pub branch_points: usize,
    pub stabilized_elements: i64,
}

/// Checks the Riemann-Hurwitz identity 2 = 2 * order - sum(order -
/// size) exactly and returns the number of branch points together with
/// the total number of points with nontrivial stabilizer.
pub fn orbit_count(data: &OrbitData) -> Result<OrbitCount, NumerologyError> {
    let drop: i64 = data
        .branch_fiber_sizes
        .iter()
        .map(|size| data.group_order - size)
        .sum();
    if 2 * data.group_order - drop != 2 {
        return Err(NumerologyError::InconsistentData(format!(
            "Riemann-Hurwitz fails: 2 * {} - {} = {}, expected 2",
            data.group_order,
            drop,
            2 * data.group_order - drop
        )));
    }
    Ok(OrbitCount {
        branch_points: data.branch_fiber_sizes.len(),
        stabilized_elements: data.branch_fiber_sizes.iter().sum(),
    })
}

/// The partition of the sixteen two-division points under translation
/// by a rank-two subgroup of two-torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoDivisionOrbits {
    /// The orbit of the origin: the acting subgroup itself.
    pub base_orbit: Vec<u8>,
    /// The remaining orbits, each listed in increasing order.
    pub other_orbits: Vec<Vec<u8>>,
    /// Whether every point has trivial stabilizer.
    pub all_stabilizers_trivial: bool,
}

/// Computes the orbits of the sixteen two-division points, modelled as
/// the vectors of F_2^4, under translation by the order-four subgroup
/// spanned by the first two coordinates. The orbit of the origin is
/// the base locus; the twelve remaining points fall into three free
/// orbits of four.
pub fn two_division_orbits() -> TwoDivisionOrbits {
    let subgroup: [u8; 4] = [0b0000, 0b0001, 0b0010, 0b0011];
    let mut seen = [false; 16];
    let mut orbits: Vec<Vec<u8>> = Vec::new();
    let mut all_trivial = true;
    for point in 0u8..16 {
        if seen[point as usize] {
            continue;
        }
        let mut orbit: Vec<u8> = subgroup.iter().map(|k| point ^ k).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &q in &orbit {
            seen[q as usize] = true;
        }
        let stabilizer = subgroup.iter().filter(|&&k| point ^ k == point).count();
        if stabilizer != 1 {
            all_trivial = false;
        }
        orbits.push(orbit);
    }
    let base_position = orbits
        .iter()
        .position(|o| o.contains(&0))
        .expect("the origin lies in some orbit");
    let base_orbit = orbits.remove(base_position);
    TwoDivisionOrbits {
        base_orbit,
        other_orbits: orbits,
        all_stabilizers_trivial: all_trivial,
    }
}

/// Which polarization type a scenario runs under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    General,
    Special,
    Product,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::General => "general",
            Polarization::Special => "special",
            Polarization::Product => "product",
        })
    }
}

/// The census of distinguished members of the genus-3 pencil: how many
/// members have nontrivial stabilizer, and how those split into smooth
/// hyperelliptic and reducible members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilCensus {
    pub polarization: Polarization,
    pub stabilized: i64,
    pub smooth_hyperelliptic: i64,
    pub reducible: i64,
    pub note: Option<String>,
}

/// Splits the stabilized members of the pencil by polarization type.
/// The stabilized total comes from the orbit count of the order-four
/// translation action; the torsion budget comes from the genus-3
/// fibration count; the two must agree. For a general polarization all
/// members are smooth hyperelliptic; otherwise `nu` of them are
/// reducible. Only the identity smooth = total - nu is enforced; for a
/// product of elliptic curves more than two reducible members can
/// occur, which the census notes.
pub fn pencil_census(
    polarization: Polarization,
    nu: Option<i64>,
) -> Result<PencilCensus, NumerologyError> {
    let orbit = orbit_count(&OrbitData::new(4, vec![2, 2, 2])?)?;
    let stabilized = orbit.stabilized_elements;
    let budget = horikawa_count(-4, 0)?;
    if stabilized != budget {
        return Err(NumerologyError::InconsistentData(format!(
            "{stabilized} stabilized members but a torsion budget of {budget}"
        )));
    }
    let reducible = match polarization {
        Polarization::General => match nu {
            None | Some(0) => 0,
            Some(n) => {
                return Err(NumerologyError::InconsistentData(format!(
                    "a general polarization has no reducible members, got nu = {n}"
                )))
            }
        },
        Polarization::Special | Polarization::Product => nu.unwrap_or(2),
    };
    if reducible < 0 || reducible > budget {
        return Err(NumerologyError::InconsistentData(format!(
            "nu = {reducible} does not fit in the budget of {budget}"
        )));
    }
    let note = match polarization {
        Polarization::General => None,
        Polarization::Special if reducible <= 2 => None,
        _ => Some(
            "more than two reducible members occurs only when the surface is a product \
             of elliptic curves"
                .to_string(),
        ),
    };
    Ok(PencilCensus {
        polarization,
        stabilized,
        smooth_hyperelliptic: budget - reducible,
        reducible,
        note,
    })
}

/// The dimension count for the family, with its two cross-checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuliDimension {
    /// family_dimension + (pencil_sections - 1).
    pub total: i64,
    pub family_dimension: i64,
    pub pencil_sections: i64,
    pub tangent_dimension: i64,
    pub normal_sections: i64,
}

/// Assembles the dimension of the family as the dimension of the base
/// family plus the projective dimension of the pencil, and checks it
/// against the tangent-space dimension and the embedded-family count.
pub fn moduli_dimension(
    family_dimension: i64,
    pencil_sections: i64,
    tangent_dimension: i64,
    normal_sections: i64,
) -> Result<ModuliDimension, NumerologyError> {
    if pencil_sections < 1 {
        return Err(NumerologyError::Shape(format!(
            "a pencil needs at least one section, got {pencil_sections}"
        )));
    }
    let total = family_dimension + pencil_sections - 1;
    if total != tangent_dimension {
        return Err(NumerologyError::InconsistentData(format!(
            "parameter count {total} disagrees with tangent dimension {tangent_dimension}"
        )));
    }
    if family_dimension != normal_sections {
        return Err(NumerologyError::InconsistentData(format!(
            "family dimension {family_dimension} disagrees with the embedded count \
             {normal_sections}"
        )));
    }
    Ok(ModuliDimension {
        total,
        family_dimension,
        pencil_sections,
        tangent_dimension,
        normal_sections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pencil_fibration() -> FibrationData {
        FibrationData::from_fiber_genus(4, 2, 3, -4, 0, 1).unwrap()
    }

    #[test]
    fn twelve_nodal_members_in_the_pencil() {
        let f = pencil_fibration();
        assert_eq!(f.e_fiber, -4);
        assert_eq!(f.fiber_genus().unwrap(), 3);
        assert_eq!(zeuthen_segre_count(&f).unwrap(), 12);
    }

    #[test]
    fn classical_nodal_counts() {
        let elliptic = FibrationData::from_fiber_genus(24, 2, 1, 0, 2, 1).unwrap();
        assert_eq!(zeuthen_segre_count(&elliptic).unwrap(), 24);
        let bundle = FibrationData::from_fiber_genus(0, 2, 1, 0, 0, 1).unwrap();
        assert_eq!(zeuthen_segre_count(&bundle).unwrap(), 0);
    }

    #[test]
    fn nodal_count_is_linear_in_the_euler_number() {
        for c2 in -8..12 {
            let f = FibrationData {
                c2_total: c2,
                ..pencil_fibration()
            };
            let g = FibrationData {
                c2_total: c2 + 1,
                ..pencil_fibration()
            };
            assert_eq!(
                zeuthen_segre_count(&g).unwrap(),
                zeuthen_segre_count(&f).unwrap() + 1
            );
        }
    }

    #[test]
    fn nodal_count_rejects_inconsistent_data() {
        let negative = FibrationData {
            c2_total: -10,
            ..pencil_fibration()
        };
        assert!(matches!(
            zeuthen_segre_count(&negative),
            Err(NumerologyError::InconsistentData(_))
        ));
        let fractional = FibrationData {
            nodal_delta: 5,
            ..pencil_fibration()
        };
        assert!(matches!(
            zeuthen_segre_count(&fractional),
            Err(NumerologyError::InconsistentData(_))
        ));
        let zero_delta = FibrationData {
            nodal_delta: 0,
            ..pencil_fibration()
        };
        assert!(matches!(
            zeuthen_segre_count(&zero_delta),
            Err(NumerologyError::Shape(_))
        ));
    }

    #[test]
    fn six_torsion_points_for_the_pencil_invariants() {
        assert_eq!(horikawa_count(-4, 0).unwrap(), 6);
        for chi in 0..5 {
            assert_eq!(horikawa_count(3 * chi - 10, chi).unwrap(), 0);
        }
        assert!(matches!(
            horikawa_count(-11, 0),
            Err(NumerologyError::InconsistentData(_))
        ));
    }

    #[test]
    fn orbit_counts_for_the_translation_action() {
        let data = OrbitData::new(4, vec![2, 2, 2]).unwrap();
        let count = orbit_count(&data).unwrap();
        assert_eq!(count.branch_points, 3);
        assert_eq!(count.stabilized_elements, 6);
    }

    #[test]
    fn uniform_branch_solutions_match_the_small_cases() {
        let double = solve_uniform_branch(2, 1).unwrap();
        assert_eq!(double.branch_fiber_sizes(), [1, 1]);
        assert_eq!(orbit_count(&double).unwrap().stabilized_elements, 2);

        let rotation = solve_uniform_branch(4, 1).unwrap();
        assert_eq!(rotation.branch_fiber_sizes(), [1, 1]);
        assert_eq!(orbit_count(&rotation).unwrap().stabilized_elements, 2);

        let translation = solve_uniform_branch(4, 2).unwrap();
        assert_eq!(translation.branch_fiber_sizes(), [2, 2, 2]);
    }

    #[test]
    fn riemann_hurwitz_holds_on_every_solved_datum() {
        for order in 2..12 {
            for size in 1..order {
                if order % size != 0 {
                    continue;
                }
                let Ok(data) = solve_uniform_branch(order, size) else {
                    continue;
                };
                let drop: i64 = data
                    .branch_fiber_sizes()
                    .iter()
                    .map(|s| data.group_order() - s)
                    .sum();
                assert_eq!(2 * data.group_order() - drop, 2, "order {order}, size {size}");
                assert!(orbit_count(&data).is_ok());
            }
        }
    }

    #[test]
    fn orbit_data_validation() {
        assert!(matches!(
            OrbitData::new(4, vec![3]),
            Err(NumerologyError::Shape(_))
        ));
        assert!(matches!(
            OrbitData::new(4, vec![4]),
            Err(NumerologyError::Shape(_))
        ));
        let unbalanced = OrbitData::new(4, vec![2, 2]).unwrap();
        assert!(matches!(
            orbit_count(&unbalanced),
            Err(NumerologyError::InconsistentData(_))
        ));
    }

    #[test]
    fn sixteen_points_fall_into_the_base_orbit_and_three_others() {
        let report = two_division_orbits();
        assert_eq!(report.base_orbit, vec![0, 1, 2, 3]);
        assert_eq!(report.other_orbits.len(), 3);
        for orbit in &report.other_orbits {
            assert_eq!(orbit.len(), 4);
        }
        assert!(report.all_stabilizers_trivial);
        let mut all: Vec<u8> = report.base_orbit.clone();
        for orbit in &report.other_orbits {
            all.extend(orbit);
        }
        all.sort_unstable();
        assert_eq!(all, (0..16).collect::<Vec<u8>>());
    }

    #[test]
    fn census_splits_by_polarization() {
        let general = pencil_census(Polarization::General, None).unwrap();
        assert_eq!(general.stabilized, 6);
        assert_eq!(general.smooth_hyperelliptic, 6);
        assert_eq!(general.reducible, 0);
        assert!(general.note.is_none());

        let special = pencil_census(Polarization::Special, None).unwrap();
        assert_eq!(special.smooth_hyperelliptic, 4);
        assert_eq!(special.reducible, 2);
        assert!(special.note.is_none());

        let one = pencil_census(Polarization::Special, Some(1)).unwrap();
        assert_eq!(one.smooth_hyperelliptic, 5);

        let product = pencil_census(Polarization::Product, Some(3)).unwrap();
        assert_eq!(product.smooth_hyperelliptic, 3);
        assert!(product.note.is_some());
    }

    #[test]
    fn census_rejects_inconsistent_nu() {
        assert!(pencil_census(Polarization::General, Some(2)).is_err());
        assert!(pencil_census(Polarization::Special, Some(7)).is_err());
        assert!(pencil_census(Polarization::Special, Some(-1)).is_err());
    }

    #[test]
    fn census_balances_for_every_nu() {
        for nu in 0..=6 {
            let census = pencil_census(Polarization::Special, Some(nu)).unwrap();
            assert_eq!(
                census.smooth_hyperelliptic + census.reducible,
                census.stabilized
            );
        }
    }

    #[test]
    fn dimension_of_the_family() {
        let dim = moduli_dimension(3, 2, 4, 3).unwrap();
        assert_eq!(dim.total, 4);
        assert_eq!(dim.family_dimension, 3);
    }

    #[test]
    fn dimension_cross_checks_fail_loudly() {
        assert!(matches!(
            moduli_dimension(3, 2, 5, 3),
            Err(NumerologyError::InconsistentData(_))
        ));
        assert!(matches!(
            moduli_dimension(3, 2, 4, 2),
            Err(NumerologyError::InconsistentData(_))
        ));
        assert!(matches!(
            moduli_dimension(3, 0, 2, 3),
            Err(NumerologyError::Shape(_))
        ));
    }
}
