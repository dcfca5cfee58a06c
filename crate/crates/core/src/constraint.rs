//! Feasible-degree sets: classification into intervals, parity intervals,
//! and the two three-element families, plus the parity-split operators that
//! drive the recursion.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("feasible set may not be empty")]
    EmptyFeasible,
    #[error("arity {0} exceeds the representation cap 63")]
    ArityTooLarge(u32),
    #[error("feasible degree {value} exceeds arity {arity}")]
    ValueExceedsArity { value: u32, arity: u32 },
    #[error("operation requires a type-1 or type-2 constraint, got {0}")]
    NotTypeConstraint(String),
    #[error("degree {0} is not feasible in {1}")]
    DegreeNotFeasible(u32, String),
    #[error("{0} is not a parity branch of {1}")]
    NotParityBranch(String, String),
    #[error("bad interval bounds g={g}, f={f}")]
    BadInterval { g: u32, f: u32 },
    #[error("parity interval needs g ≡ f (mod 2), got g={g}, f={f}")]
    ParityMismatch { g: u32, f: u32 },
}

/// A feasible-degree set with its arity (the degree of the vertex it
/// labels). Stored as a bitmask; arity is capped at 63 so the mask always
/// fits one word.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeConstraint {
    arity: u32,
    mask: u64,
}

/// Classification flags. Singletons are both intervals and parity
/// intervals, so flags, not a single enum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintClass {
    pub is_interval: bool,
    pub is_parity_interval: bool,
    pub is_type1: bool,
    pub is_type2: bool,
    pub max_gap: u32,
}

impl ConstraintClass {
    /// Interval or parity interval.
    pub fn in_g(&self) -> bool {
        self.is_interval || self.is_parity_interval
    }

    /// Type-1 or type-2.
    pub fn in_t(&self) -> bool {
        self.is_type1 || self.is_type2
    }

    /// Accepted by the polynomial solver.
    pub fn is_admissible(&self) -> bool {
        self.in_g() || self.in_t()
    }
}

/// Which half of a type constraint's parity split to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitBranch {
    /// The two-element branch matching the parity of the middle values.
    Zero,
    /// The singleton branch.
    One,
}

impl DegreeConstraint {
    pub fn new(arity: u32, feasible: impl IntoIterator<Item = u32>) -> Result<Self, ConstraintError> {
        if arity > 63 {
            return Err(ConstraintError::ArityTooLarge(arity));
        }
        let mut mask = 0u64;
        for value in feasible {
            if value > arity {
                return Err(ConstraintError::ValueExceedsArity { value, arity });
            }
            mask |= 1 << value;
        }
        if mask == 0 {
            return Err(ConstraintError::EmptyFeasible);
        }
        Ok(DegreeConstraint { arity, mask })
    }

    pub fn from_mask(arity: u32, mask: u64) -> Result<Self, ConstraintError> {
        if arity > 63 {
            return Err(ConstraintError::ArityTooLarge(arity));
        }
        if mask == 0 {
            return Err(ConstraintError::EmptyFeasible);
        }
        let top = 63 - mask.leading_zeros();
        if top > arity {
            return Err(ConstraintError::ValueExceedsArity { value: top, arity });
        }
        Ok(DegreeConstraint { arity, mask })
    }

    /// `{g, g+1, …, f}`.
    pub fn interval(arity: u32, g: u32, f: u32) -> Result<Self, ConstraintError> {
        if g > f {
            return Err(ConstraintError::BadInterval { g, f });
        }
        Self::new(arity, g..=f)
    }

    /// `{g, g+2, …, f}` with `g ≡ f (mod 2)`.
    pub fn parity_interval(arity: u32, g: u32, f: u32) -> Result<Self, ConstraintError> {
        if g > f {
            return Err(ConstraintError::BadInterval { g, f });
        }
        if (f - g) % 2 != 0 {
            return Err(ConstraintError::ParityMismatch { g, f });
        }
        Self::new(arity, (g..=f).step_by(2))
    }

    pub fn singleton(arity: u32, k: u32) -> Result<Self, ConstraintError> {
        Self::new(arity, [k])
    }

    /// `{p, p+1, p+3}`.
    pub fn type1(arity: u32, p: u32) -> Result<Self, ConstraintError> {
        Self::new(arity, [p, p + 1, p + 3])
    }

    /// `{p, p+2, p+3}`.
    pub fn type2(arity: u32, p: u32) -> Result<Self, ConstraintError> {
        Self::new(arity, [p, p + 2, p + 3])
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, degree: u32) -> bool {
        degree <= 63 && self.mask >> degree & 1 == 1
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty sets
    }

    pub fn min(&self) -> u32 {
        self.mask.trailing_zeros()
    }

    pub fn max(&self) -> u32 {
        63 - self.mask.leading_zeros()
    }

    /// Feasible degrees in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=self.max()).filter(|&d| self.contains(d))
    }

    /// Same feasible set with a different arity (used when a construction
    /// fixes labels before the final degree is known).
    pub fn with_arity(&self, arity: u32) -> Result<Self, ConstraintError> {
        Self::from_mask(arity, self.mask)
    }

    /// Longest run of consecutive missing values strictly inside the set.
    pub fn max_gap(&self) -> u32 {
        let mut prev = None;
        let mut best = 0;
        for d in self.iter() {
            if let Some(p) = prev {
                best = best.max(d - p - 1);
            }
            prev = Some(d);
        }
        best
    }

    pub fn classify(&self) -> ConstraintClass {
        let values: Vec<u32> = self.iter().collect();
        let diffs: Vec<u32> = values.windows(2).map(|w| w[1] - w[0]).collect();
        let max_gap = diffs.iter().map(|d| d - 1).max().unwrap_or(0);
        let is_interval = diffs.iter().all(|&d| d == 1);
        let is_parity_interval = diffs.iter().all(|&d| d == 2);
        ConstraintClass {
            is_interval,
            is_parity_interval,
            is_type1: diffs == [1, 2],
            is_type2: diffs == [2, 1],
            max_gap,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.classify().is_admissible()
    }

    /// Base value `p` when the constraint is type-1 or type-2.
    pub fn type_base(&self) -> Option<u32> {
        let class = self.classify();
        class.in_t().then(|| self.min())
    }

    /// Parity split of a type constraint: type-1 `{p,p+1,p+3}` into
    /// (`{p+1,p+3}`, `{p}`), type-2 `{p,p+2,p+3}` into (`{p,p+2}`,
    /// `{p+3}`). Both halves are parity intervals; together they cover the
    /// set disjointly.
    pub fn split(&self) -> Result<(DegreeConstraint, DegreeConstraint), ConstraintError> {
        let class = self.classify();
        let p = self.min();
        if class.is_type1 {
            let d0 = DegreeConstraint::new(self.arity, [p + 1, p + 3])?;
            let d1 = DegreeConstraint::singleton(self.arity, p)?;
            Ok((d0, d1))
        } else if class.is_type2 {
            let d0 = DegreeConstraint::new(self.arity, [p, p + 2])?;
            let d1 = DegreeConstraint::singleton(self.arity, p + 3)?;
            Ok((d0, d1))
        } else {
            Err(ConstraintError::NotTypeConstraint(self.to_string()))
        }
    }

    /// The maximal parity-interval subset containing `degree`: exactly one
    /// of the split halves.
    pub fn max_parity_subset(&self, degree: u32) -> Result<DegreeConstraint, ConstraintError> {
        if !self.contains(degree) {
            return Err(ConstraintError::DegreeNotFeasible(degree, self.to_string()));
        }
        let (d0, d1) = self.split()?;
        if d0.contains(degree) {
            Ok(d0)
        } else {
            Ok(d1)
        }
    }

    /// Set difference against one split half: the other half.
    pub fn complement_within(&self, half: &DegreeConstraint) -> Result<DegreeConstraint, ConstraintError> {
        let (d0, d1) = self.split()?;
        if *half == d0 {
            Ok(d1)
        } else if *half == d1 {
            Ok(d0)
        } else {
            Err(ConstraintError::NotParityBranch(half.to_string(), self.to_string()))
        }
    }

    /// The split half selected by a branch tag.
    pub fn split_branch(&self, branch: SplitBranch) -> Result<DegreeConstraint, ConstraintError> {
        let (d0, d1) = self.split()?;
        Ok(match branch {
            SplitBranch::Zero => d0,
            SplitBranch::One => d1,
        })
    }
}

impl std::fmt::Display for DegreeConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}/{}", self.arity)
    }
}

impl std::fmt::Debug for DegreeConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DegreeConstraint({self})")
    }
}
