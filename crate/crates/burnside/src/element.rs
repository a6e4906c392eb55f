//! Burnside ring elements, ghost vectors, the mark homomorphism, and its
//! exact inverse.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;

/// A sparse integer combination of basis classes [G/H].
#[derive(Clone)]
pub struct BurnsideElement {
    lattice: Arc<SubgroupLattice>,
    coeffs: BTreeMap<usize, i64>,
}

impl PartialEq for BurnsideElement {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.same_as(&other.lattice) && self.coeffs == other.coeffs
    }
}
impl Eq for BurnsideElement {}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BurnsideElement({self})")
    }
}

impl fmt::Display for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&class, &c)) in self.coeffs.iter().enumerate() {
            let label = self.lattice.label(class);
            if i == 0 {
                write!(f, "{c}*[{label}]")?;
            } else if c < 0 {
                write!(f, " - {}*[{label}]", -c)?;
            } else {
                write!(f, " + {c}*[{label}]")?;
            }
        }
        Ok(())
    }
}

impl BurnsideElement {
    pub fn zero(lattice: &Arc<SubgroupLattice>) -> Self {
        BurnsideElement {
            lattice: Arc::clone(lattice),
            coeffs: BTreeMap::new(),
        }
    }

    /// The multiplicative unit [G/G].
    pub fn one(lattice: &Arc<SubgroupLattice>) -> Self {
        Self::basis(lattice, lattice.full_class()).expect("full class exists")
    }

    pub fn basis(lattice: &Arc<SubgroupLattice>, class: usize) -> Result<Self> {
        if class >= lattice.class_count() {
            return Err(Error::InvalidClass(class));
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(class, 1);
        Ok(BurnsideElement {
            lattice: Arc::clone(lattice),
            coeffs,
        })
    }

    pub fn from_coeffs(
        lattice: &Arc<SubgroupLattice>,
        coeffs: impl IntoIterator<Item = (usize, i64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(lattice);
        for (class, c) in coeffs {
            if class >= lattice.class_count() {
                return Err(Error::InvalidClass(class));
            }
            let entry = out.coeffs.entry(class).or_insert(0);
            *entry = entry
                .checked_add(c)
                .ok_or_else(|| Error::Internal("coefficient overflow".into()))?;
            if *entry == 0 {
                out.coeffs.remove(&class);
            }
        }
        Ok(out)
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn coeff(&self, class: usize) -> i64 {
        self.coeffs.get(&class).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(&self.lattice);
        }
        BurnsideElement {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().map(|(&i, &c)| (i, c * k)).collect(),
        }
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert!(
            self.lattice.same_as(&other.lattice),
            "combining elements over different lattices"
        );
        let mut coeffs = self.coeffs.clone();
        for (&i, &c) in &other.coeffs {
            let entry = coeffs.entry(i).or_insert(0);
            *entry += sign * c;
            if *entry == 0 {
                coeffs.remove(&i);
            }
        }
        BurnsideElement {
            lattice: Arc::clone(&self.lattice),
            coeffs,
        }
    }

    /// The ghost vector of marks: phi(x) = sum over h of coeff(h) * (row h of the
    /// mark matrix).
    pub fn marks(&self) -> GhostVector {
        let count = self.lattice.class_count();
        let mut values = vec![0i128; count];
        for (&h, &c) in &self.coeffs {
            for k in 0..count {
                values[k] += c as i128 * self.lattice.mark(h, k) as i128;
            }
        }
        let values: Vec<i64> = values
            .into_iter()
            .map(|v| i64::try_from(v).expect("mark overflow"))
            .collect();
        GhostVector {
            lattice: Arc::clone(&self.lattice),
            values,
        }
    }
}

impl std::ops::Add for &BurnsideElement {
    type Output = BurnsideElement;
    fn add(self, rhs: &BurnsideElement) -> BurnsideElement {
        self.combine(rhs, 1)
    }
}

impl std::ops::Sub for &BurnsideElement {
    type Output = BurnsideElement;
    fn sub(self, rhs: &BurnsideElement) -> BurnsideElement {
        self.combine(rhs, -1)
    }
}

impl std::ops::Neg for &BurnsideElement {
    type Output = BurnsideElement;
    fn neg(self) -> BurnsideElement {
        self.scaled(-1)
    }
}

/// An integer class function on the lattice's classes, ordered like the
/// lattice.
#[derive(Clone)]
pub struct GhostVector {
    lattice: Arc<SubgroupLattice>,
    values: Vec<i64>,
}

impl PartialEq for GhostVector {
    fn eq(&self, other: &Self) -> bool {
        self.lattice.same_as(&other.lattice) && self.values == other.values
    }
}
impl Eq for GhostVector {}

impl fmt::Debug for GhostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GhostVector({:?})", self.values)
    }
}

impl GhostVector {
    pub fn new(lattice: &Arc<SubgroupLattice>, values: Vec<i64>) -> Result<Self> {
        if values.len() != lattice.class_count() {
            return Err(Error::Dimension(format!(
                "ghost vector length {} does not match class count {}",
                values.len(),
                lattice.class_count()
            )));
        }
        Ok(GhostVector {
            lattice: Arc::clone(lattice),
            values,
        })
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, class: usize) -> i64 {
        self.values[class]
    }

    /// Pointwise (Hadamard) product; this is the ghost-ring multiplication.
    pub fn pointwise_mul(&self, other: &GhostVector) -> Result<GhostVector> {
        if !self.lattice.same_as(&other.lattice) {
            return Err(Error::LatticeMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| {
                (a as i128 * b as i128)
                    .to_i64()
                    .ok_or_else(|| Error::Internal("ghost product overflow".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(GhostVector {
            lattice: Arc::clone(&self.lattice),
            values,
        })
    }
}

/// Exact rational solve of (mark matrix)^T c = f by back-substitution in the
/// subconjugacy order. Returns the coefficient vector over the basis classes
/// and whether it is integral. The system is always solvable: the matrix is
/// triangular with nonzero Weyl orders on the diagonal.
pub fn invert_marks(f: &GhostVector) -> (Vec<BigRational>, bool) {
    let lattice = &f.lattice;
    let n = lattice.class_count();
    let mut coeffs = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = BigRational::from(BigInt::from(f.values[k]));
        for h in (k + 1)..n {
            let m = lattice.mark(h, k);
            if m != 0 {
                acc -= BigRational::from(BigInt::from(m)) * &coeffs[h];
            }
        }
        coeffs[k] = acc / BigRational::from(BigInt::from(lattice.mark(k, k)));
    }
    let integral = coeffs.iter().all(|c| c.is_integer());
    (coeffs, integral)
}

/// The unique Burnside element with the given marks, when one exists.
pub fn element_from_ghost(f: &GhostVector) -> Result<BurnsideElement> {
    let (coeffs, integral) = invert_marks(f);
    if !integral {
        let offending = coeffs
            .iter()
            .position(|c| !c.is_integer())
            .expect("non-integral coefficient present");
        return Err(Error::NonIntegral(format!(
            "coefficient {} on [{}]",
            coeffs[offending],
            f.lattice.label(offending)
        )));
    }
    let pairs = coeffs.iter().enumerate().filter_map(|(i, c)| {
        if c.is_zero() {
            None
        } else {
            let int = c.to_integer();
            let v = int.to_i64().unwrap_or_else(|| {
                panic!("coefficient magnitude exceeds i64: {}", int.abs())
            });
            Some((i, v))
        }
    });
    BurnsideElement::from_coeffs(&f.lattice, pairs)
}
