//! Named divisor-class bases with integer intersection pairings.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::ChernError;
use crate::qpoly::{int, is_integer, Rat};

/// An ordered basis of named divisor classes and the symmetric integer
/// matrix of their pairwise intersection numbers.
///
/// Lattices are cheap to clone and compare by content, so two
/// independently built lattices with the same basis and pairings are
/// interchangeable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    inner: Arc<Inner>,
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    gram: Vec<Vec<Rat>>,
}

impl Lattice {
    /// Builds a lattice from basis names and the Gram matrix of integer
    /// intersection numbers, checking symmetry and name uniqueness.
    pub fn new(names: &[&str], gram: &[Vec<i64>]) -> Result<Lattice, ChernError> {
        if names.is_empty() {
            return Err(ChernError::Shape("lattice basis must be nonempty".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(ChernError::Shape("empty basis name".into()));
            }
            if names[..i].contains(name) {
                return Err(ChernError::Shape(format!("duplicate basis name `{name}`")));
            }
        }
        let n = names.len();
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(ChernError::Shape(format!(
                "Gram matrix must be {n}x{n} to match the basis"
            )));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(ChernError::Shape(format!(
                        "Gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let inner = Inner {
            names: names.iter().map(|s| s.to_string()).collect(),
            gram: gram
                .iter()
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect(),
        };
        Ok(Lattice {
            inner: Arc::new(inner),
        })
    }

    /// Number of basis classes.
    pub fn rank(&self) -> usize {
        self.inner.names.len()
    }

    /// Basis names in order.
    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    /// Name of the `i`-th basis class.
    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    /// Index of a basis class by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }

    /// Intersection number of the `i`-th and `j`-th basis classes.
    pub fn pairing(&self, i: usize, j: usize) -> &Rat {
        &self.inner.gram[i][j]
    }

    /// Extends the basis by fresh classes, each of self-intersection -1
    /// and orthogonal to everything else. Returns the new lattice and the
    /// names chosen for the new classes.
    pub fn extend_by_exceptional(&self, n: usize) -> (Lattice, Vec<String>) {
        let old = self.rank();
        let mut names: Vec<String> = self.inner.names.clone();
        let mut fresh = Vec::with_capacity(n);
        let mut counter = 1usize;
        while fresh.len() < n {
            let candidate = format!("Lam{counter}");
            counter += 1;
            if names.iter().any(|existing| *existing == candidate) {
                continue;
            }
            names.push(candidate.clone());
            fresh.push(candidate);
        }
        let total = old + n;
        let mut gram = vec![vec![Rat::zero(); total]; total];
        for i in 0..old {
            for j in 0..old {
                gram[i][j] = self.inner.gram[i][j].clone();
            }
        }
        for k in 0..n {
            gram[old + k][old + k] = -Rat::one();
        }
        let inner = Inner { names, gram };
        (
            Lattice {
                inner: Arc::new(inner),
            },
            fresh,
        )
    }

    /// Comma-joined basis names, used in error messages.
    pub fn joined(&self) -> String {
        self.inner.names.join(", ")
    }
}

/// A rational combination of a lattice's basis classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumClass {
    lattice: Lattice,
    coeffs: Vec<Rat>,
}

impl NumClass {
    /// The zero class.
    pub fn zero(lattice: &Lattice) -> NumClass {
        NumClass {
            lattice: lattice.clone(),
            coeffs: vec![Rat::zero(); lattice.rank()],
        }
    }

    /// The basis class with the given name.
    pub fn basis(lattice: &Lattice, name: &str) -> Result<NumClass, ChernError> {
        let idx = lattice
            .index_of(name)
            .ok_or_else(|| ChernError::Shape(format!("no basis class named `{name}`")))?;
        let mut coeffs = vec![Rat::zero(); lattice.rank()];
        coeffs[idx] = Rat::one();
        Ok(NumClass {
            lattice: lattice.clone(),
            coeffs,
        })
    }

    /// A class from an explicit coefficient vector.
    pub fn from_coeffs(lattice: &Lattice, coeffs: Vec<Rat>) -> Result<NumClass, ChernError> {
        if coeffs.len() != lattice.rank() {
            return Err(ChernError::Shape(format!(
                "coefficient vector has length {}, lattice rank is {}",
                coeffs.len(),
                lattice.rank()
            )));
        }
        Ok(NumClass {
            lattice: lattice.clone(),
            coeffs,
        })
    }

    /// A class from integer coefficients.
    pub fn from_integers(lattice: &Lattice, coeffs: &[i64]) -> Result<NumClass, ChernError> {
        Self::from_coeffs(lattice, coeffs.iter().map(|&v| int(v)).collect())
    }

    /// The lattice this class lives on.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Coefficients against the lattice basis.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// True when every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    fn require_same_lattice(&self, other: &NumClass) -> Result<(), ChernError> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(ChernError::LatticeMismatch {
                left: self.lattice.joined(),
                right: other.lattice.joined(),
            })
        }
    }

    /// Sum of two classes on the same lattice.
    pub fn checked_add(&self, other: &NumClass) -> Result<NumClass, ChernError> {
        self.require_same_lattice(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(NumClass {
            lattice: self.lattice.clone(),
            coeffs,
        })
    }

    /// Difference of two classes on the same lattice.
    pub fn checked_sub(&self, other: &NumClass) -> Result<NumClass, ChernError> {
        self.checked_add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> NumClass {
        NumClass {
            lattice: self.lattice.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> NumClass {
        NumClass {
            lattice: self.lattice.clone(),
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Intersection number of two classes via the Gram matrix.
    pub fn pair(&self, other: &NumClass) -> Result<Rat, ChernError> {
        self.require_same_lattice(other)?;
        let mut total = Rat::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                total += a * b * self.lattice.pairing(i, j);
            }
        }
        Ok(total)
    }

    /// Self-intersection number.
    pub fn self_intersection(&self) -> Rat {
        self.pair(self).expect("a class always shares its own lattice")
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if abs != Rat::one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", self.lattice.name(i))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
