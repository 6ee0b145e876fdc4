//! Chern data of vector bundles: derived-bundle operations through formal
//! root reduction, Riemann-Roch, and degree-3 cover invariants.

use num_traits::Zero;

use super::lattice::NumClass;
use super::surface::SurfaceGeom;
use super::ChernError;
use crate::qpoly::{int, Rat};

/// Rank and first two Chern classes of a vector bundle on a surface.
///
/// `c1` is a divisor class; `c2` is already evaluated against the
/// fundamental class, hence a plain rational number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleChern {
    rank: u32,
    c1: NumClass,
    c2: Rat,
}

impl BundleChern {
    /// Builds bundle data; rank must be positive and a line bundle must
    /// have vanishing `c2`.
    pub fn new(rank: u32, c1: NumClass, c2: Rat) -> Result<BundleChern, ChernError> {
        if rank == 0 {
            return Err(ChernError::Shape("bundle rank must be positive".into()));
        }
        if rank == 1 && !c2.is_zero() {
            return Err(ChernError::Shape(format!(
                "a line bundle has c2 = 0, got {c2}"
            )));
        }
        Ok(BundleChern { rank, c1, c2 })
    }

    /// The line bundle with the given first Chern class.
    pub fn line_bundle(c1: NumClass) -> BundleChern {
        BundleChern {
            rank: 1,
            c1,
            c2: Rat::zero(),
        }
    }

    /// The rank.
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// The first Chern class.
    pub fn c1(&self) -> &NumClass {
        &self.c1
    }

    /// The second Chern number.
    pub fn c2(&self) -> &Rat {
        &self.c2
    }

    /// The lattice the Chern classes live on.
    pub fn lattice(&self) -> &super::lattice::Lattice {
        self.c1.lattice()
    }

    /// Degree-2 Chern character component: `c1^2/2 - c2`.
    pub fn ch2(&self) -> Rat {
        self.c1.self_intersection() / int(2) - &self.c2
    }

    /// Dual bundle: `c1` negates, `c2` is preserved.
    pub fn dual(&self) -> BundleChern {
        BundleChern {
            rank: self.rank,
            c1: self.c1.neg(),
            c2: self.c2.clone(),
        }
    }

    /// Twist by a line-bundle class `M`: rank `r` gains
    /// `c1 + r M` and `c2 + (r-1) c1.M + C(r,2) M^2`.
    pub fn twist(&self, m: &NumClass) -> Result<BundleChern, ChernError> {
        let r = int(i64::from(self.rank));
        let c1 = self.c1.checked_add(&m.scale(&r))?;
        let cross = self.c1.pair(m)?;
        let m_sq = m.self_intersection();
        let choose2 = &r * (&r - int(1)) / int(2);
        let c2 = &self.c2 + (&r - int(1)) * cross + choose2 * m_sq;
        BundleChern::new(self.rank, c1, c2)
    }

    /// Tensor product at the Chern level, through additivity of the Chern
    /// character.
    pub fn tensor(&self, other: &BundleChern) -> Result<BundleChern, ChernError> {
        let ra = int(i64::from(self.rank));
        let rb = int(i64::from(other.rank));
        let c1 = self
            .c1
            .scale(&rb)
            .checked_add(&other.c1.scale(&ra))?;
        let ch2 = &ra * other.ch2() + &rb * self.ch2() + self.c1.pair(&other.c1)?;
        let c2 = c1.self_intersection() / int(2) - ch2;
        BundleChern::new(self.rank * other.rank, c1, c2)
    }

    /// Direct sum: ranks and `c1` add, `c2` gains the cross term.
    pub fn direct_sum(&self, other: &BundleChern) -> Result<BundleChern, ChernError> {
        let c1 = self.c1.checked_add(&other.c1)?;
        let c2 = &self.c2 + &other.c2 + self.c1.pair(&other.c1)?;
        BundleChern::new(self.rank + other.rank, c1, c2)
    }

    /// Symmetric power, for rank at most 3, by reducing the formal-root
    /// weights of the derived bundle to elementary symmetric functions.
    pub fn sym(&self, k: u32) -> Result<BundleChern, ChernError> {
        match self.rank {
            1 => Ok(BundleChern {
                rank: 1,
                c1: self.c1.scale(&int(i64::from(k))),
                c2: Rat::zero(),
            }),
            2 => {
                let weights: Vec<Vec<u32>> = (0..=k).map(|i| vec![i, k - i]).collect();
                self.from_weights(&weights)
            }
            3 => {
                let mut weights = Vec::new();
                for i in 0..=k {
                    for j in 0..=(k - i) {
                        weights.push(vec![i, j, k - i - j]);
                    }
                }
                self.from_weights(&weights)
            }
            got => Err(ChernError::UnsupportedRank {
                op: "sym",
                supported: "1 to 3",
                got,
            }),
        }
    }

    /// Second exterior power, for rank 2 or 3.
    pub fn wedge2(&self) -> Result<BundleChern, ChernError> {
        match self.rank {
            2 => self.from_weights(&[vec![1, 1]]),
            3 => self.from_weights(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]),
            got => Err(ChernError::UnsupportedRank {
                op: "wedge2",
                supported: "2 or 3",
                got,
            }),
        }
    }

    /// Builds the derived bundle whose Chern roots are the given
    /// nonnegative integer combinations of this bundle's roots.
    fn from_weights(&self, weights: &[Vec<u32>]) -> Result<BundleChern, ChernError> {
        let (lambda, alpha, beta) = reduce_symmetric(weights, self.rank as usize);
        let c1 = self.c1.scale(&lambda);
        let c2 = alpha * self.c1.self_intersection() + beta * &self.c2;
        BundleChern::new(weights.len() as u32, c1, c2)
    }
}

/// Reduces a symmetric multiset of derived roots (given by weight vectors
/// against the original roots) to the elementary symmetric functions:
/// returns `(lambda, alpha, beta)` with `c1' = lambda e1` and
/// `c2' = alpha e1^2 + beta e2`.
///
/// The reduction samples the roots at rational points. Two independent
/// samples determine the three coefficients; a third sample re-checks
/// them, which is exact because symmetric degree-2 expressions in the
/// roots span only `e1^2` and `e2`.
fn reduce_symmetric(weights: &[Vec<u32>], rank: usize) -> (Rat, Rat, Rat) {
    let (s1, s2, s3, e1_s3, e2_s3): (&[i64], &[i64], &[i64], i64, i64) = match rank {
        2 => (&[1, 0], &[1, 1], &[2, 3], 5, 6),
        3 => (&[1, 0, 0], &[1, 1, 0], &[1, 2, 3], 6, 11),
        _ => unreachable!("callers restrict the rank to 2 or 3"),
    };
    let lambda = weight_sum(weights, s1);
    let alpha = pair_sum(weights, s1);
    let beta = pair_sum(weights, s2) - int(4) * &alpha;
    assert_eq!(weight_sum(weights, s2), int(2) * &lambda);
    assert_eq!(weight_sum(weights, s3), int(e1_s3) * &lambda);
    assert_eq!(
        pair_sum(weights, s3),
        int(e1_s3 * e1_s3) * &alpha + int(e2_s3) * &beta
    );
    (lambda, alpha, beta)
}

/// Sum of all derived roots evaluated at a sample point.
fn weight_sum(weights: &[Vec<u32>], sample: &[i64]) -> Rat {
    let mut total = Rat::zero();
    for w in weights {
        total += int(dot(w, sample));
    }
    total
}

/// Sum of products of distinct pairs of derived roots at a sample point.
fn pair_sum(weights: &[Vec<u32>], sample: &[i64]) -> Rat {
    let values: Vec<i64> = weights.iter().map(|w| dot(w, sample)).collect();
    let mut total = 0i64;
    for p in 0..values.len() {
        for q in (p + 1)..values.len() {
            total += values[p] * values[q];
        }
    }
    int(total)
}

fn dot(w: &[u32], sample: &[i64]) -> i64 {
    w.iter()
        .zip(sample)
        .map(|(&wi, &si)| i64::from(wi) * si)
        .sum()
}

/// Euler characteristic by Riemann-Roch on a surface:
/// `chi(B) = rank(B) chi(O) + c1.(c1 - K)/2 - c2`.
pub fn riemann_roch(b: &BundleChern, y: &SurfaceGeom) -> Result<Rat, ChernError> {
    let r = int(i64::from(b.rank()));
    let c1 = b.c1();
    let slant = c1.pair(&c1.checked_sub(y.k())?)?;
    Ok(r * y.chi_o() + slant / int(2) - b.c2())
}

/// Invariants of the total space of a smooth degree-3 cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInvariants {
    /// Cohomology of the structure sheaf upstairs, summed from base and
    /// trace-free parts.
    pub h: (u32, u32, u32),
    /// Geometric genus `h^2`.
    pub p_g: u32,
    /// Irregularity `h^1`.
    pub q: u32,
    /// Self-intersection of the canonical class upstairs.
    pub k_squared: Rat,
    /// Holomorphic Euler characteristic upstairs.
    pub chi: Rat,
}

fn h_chi(h: (u32, u32, u32)) -> Rat {
    int(i64::from(h.0)) - int(i64::from(h.1)) + int(i64::from(h.2))
}

/// Invariants of a degree-3 cover with rank-2 trace-free part `E`:
/// `h^i` upstairs is `h^i(O_Y) + h^i(E)` and
/// `K^2 = 3 K_Y^2 - 4 c1(E).K_Y + 2 c1(E)^2 - 3 c2(E)`.
///
/// Both cohomology triples are validated: `h_y` against `chi(O_Y)` and
/// `h_e` against the Riemann-Roch value for `E`.
pub fn miranda_invariants(
    y: &SurfaceGeom,
    h_y: (u32, u32, u32),
    e: &BundleChern,
    h_e: (u32, u32, u32),
) -> Result<CoverInvariants, ChernError> {
    if e.rank() != 2 {
        return Err(ChernError::UnsupportedRank {
            op: "miranda_invariants",
            supported: "2",
            got: e.rank(),
        });
    }
    if h_chi(h_y) != *y.chi_o() {
        return Err(ChernError::Inconsistent(format!(
            "h(O_Y) = ({}, {}, {}) has alternating sum {} but chi(O_Y) = {}",
            h_y.0,
            h_y.1,
            h_y.2,
            h_chi(h_y),
            y.chi_o()
        )));
    }
    let chi_e = riemann_roch(e, y)?;
    if h_chi(h_e) != chi_e {
        return Err(ChernError::Inconsistent(format!(
            "h(E) = ({}, {}, {}) has alternating sum {} but Riemann-Roch gives chi(E) = {}",
            h_e.0,
            h_e.1,
            h_e.2,
            h_chi(h_e),
            chi_e
        )));
    }
    let h = (h_y.0 + h_e.0, h_y.1 + h_e.1, h_y.2 + h_e.2);
    let c1 = e.c1();
    let k_squared = int(3) * y.k_squared() - int(4) * c1.pair(y.k())?
        + int(2) * c1.self_intersection()
        - int(3) * e.c2();
    Ok(CoverInvariants {
        h,
        p_g: h.2,
        q: h.1,
        k_squared,
        chi: h_chi(h),
    })
}
