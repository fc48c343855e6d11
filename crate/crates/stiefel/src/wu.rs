//! Formal total Stiefel-Whitney classes on a Stiefel ring.
//!
//! A system assigns a homogeneous class to each positive degree up to the
//! top degree, with `w_0 = 1` and everything above the top degree zero.  Wu's
//! formula pins down how the Steenrod squares must act on such a system:
//!
//! `Sq^i(w_j) = sum_{r=0}^{i} C(j-i+r-1, r) w_{i-r} w_{j+r}`  for 1 <= i <= j.
//!
//! The module checks that identity pair by pair, enumerates every assignment
//! over a ring (optionally pruning with the Wu pairs as soon as all degrees a
//! pair touches are fixed), and derives the degree relations a system must
//! satisfy once its first nonzero class sits in a power-of-two degree.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::cohomology::{CohomologyClass, Monomial, StiefelRing};
use crate::parity::{binom_parity, phi};
use crate::steenrod;
use crate::{Error, Result};

/// Formal class system: nonzero homogeneous classes keyed by degree.
/// Degrees without an entry are zero, degree 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharClassSystem {
    ring: StiefelRing,
    classes: BTreeMap<u32, CohomologyClass>,
}

impl CharClassSystem {
    pub fn trivial(ring: StiefelRing) -> Self {
        CharClassSystem {
            ring,
            classes: BTreeMap::new(),
        }
    }

    /// Validates and normalizes an assignment: every stored class must be
    /// homogeneous of its key degree, within the generator range, and keys
    /// must lie in `1..=top`.  Zero classes are dropped.
    pub fn new(ring: StiefelRing, classes: BTreeMap<u32, CohomologyClass>) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (degree, class) in classes {
            if class.is_zero() {
                continue;
            }
            if degree < 1 || degree > ring.top_degree() {
                return Err(Error::IndexOutOfRange {
                    index: degree,
                    lo: 1,
                    hi: ring.top_degree(),
                });
            }
            ring.validate_class(&class)?;
            if class.homogeneous_degree() != Some(degree) {
                return Err(Error::NonHomogeneous { degree });
            }
            kept.insert(degree, class);
        }
        Ok(CharClassSystem {
            ring,
            classes: kept,
        })
    }

    pub fn ring(&self) -> &StiefelRing {
        &self.ring
    }

    /// The class in one degree; unit at 0, zero wherever nothing is stored.
    pub fn class(&self, degree: u32) -> CohomologyClass {
        if degree == 0 {
            return CohomologyClass::unit();
        }
        self.classes
            .get(&degree)
            .cloned()
            .unwrap_or_else(CohomologyClass::zero)
    }

    /// The stored nonzero classes.
    pub fn classes(&self) -> &BTreeMap<u32, CohomologyClass> {
        &self.classes
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.is_empty()
    }

    /// Least degree with a nonzero class.
    pub fn first_nonzero_degree(&self) -> Option<u32> {
        self.classes.keys().next().copied()
    }
}

/// Right-hand side of the Wu identity for the pair (i, j).
///
/// The r = 0 term of the diagonal pair i = j carries the degenerate top
/// C(-1, 0), which counts as odd, so `wu_rhs(s, i, i)` is always `w_i * w_i`.
pub fn wu_rhs(system: &CharClassSystem, i: u32, j: u32) -> Result<CohomologyClass> {
    if i < 1 || i > j {
        return Err(Error::WuRange { i, j });
    }
    Ok(wu_rhs_with(&system.ring, &|d| system.class(d), i, j))
}

/// Same sum evaluated against an arbitrary degree accessor, so the
/// enumerator can reuse the formula on partial assignments.
fn wu_rhs_with(
    ring: &StiefelRing,
    w: &dyn Fn(u32) -> CohomologyClass,
    i: u32,
    j: u32,
) -> CohomologyClass {
    let mut acc = CohomologyClass::zero();
    for r in 0..=i {
        let top = j as i64 - i as i64 + r as i64 - 1;
        if binom_parity(top, r as u64).unwrap().is_even() {
            continue;
        }
        let product = ring
            .multiply(&w(i - r), &w(j + r))
            .expect("system classes are validated");
        acc = acc + product;
    }
    acc
}

/// One failed Wu pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WuViolation {
    pub i: u32,
    pub j: u32,
    pub lhs: CohomologyClass,
    pub rhs: CohomologyClass,
}

/// Every pair 1 <= i <= j <= top whose two sides disagree.
pub fn wu_violations(system: &CharClassSystem) -> Vec<WuViolation> {
    let ring = &system.ring;
    let mut out = Vec::new();
    for j in 1..=ring.top_degree() {
        let wj = system.class(j);
        for i in 1..=j {
            let lhs = steenrod::sq(ring, i, &wj).expect("system classes are validated");
            let rhs = wu_rhs_with(ring, &|d| system.class(d), i, j);
            if lhs != rhs {
                out.push(WuViolation { i, j, lhs, rhs });
            }
        }
    }
    out
}

pub fn is_wu_consistent(system: &CharClassSystem) -> bool {
    wu_violations(system).is_empty()
}

/// Controls for [`enumerate_systems`].
#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    /// Keep only Wu-consistent systems, pruning during the walk.
    pub require_wu: bool,
    /// Force zero below degree n in every degree other than 2^{phi(n-k-1)},
    /// the constraint inherited from restriction to the underlying projective
    /// space; requires n >= 2k.
    pub require_low_vanishing: bool,
    /// Keep only systems whose least nonzero degree is exactly this.
    pub first_nonzero: Option<u32>,
    /// Upper bound on the raw assignment count.
    pub budget: u64,
}

pub const DEFAULT_BUDGET: u64 = 1 << 24;

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            require_wu: false,
            require_low_vanishing: false,
            first_nonzero: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Number of bits in the raw state space: the sum of all basis dimensions in
/// degrees 1..=top.
pub fn state_bits(ring: &StiefelRing) -> u32 {
    (1..=ring.top_degree()).map(|d| ring.dim(d) as u32).sum()
}

#[derive(Debug)]
struct Level {
    basis: std::sync::Arc<[Monomial]>,
    /// Half-open range of candidate masks over the basis.
    masks: std::ops::Range<u64>,
}

/// Depth-first walk over all degree assignments in ascending degree order,
/// emitting systems in lexicographic candidate order.
#[derive(Debug)]
pub struct SystemIter {
    ring: StiefelRing,
    levels: Vec<Level>,
    /// Pairs (i, j) become checkable once degree min(i+j, top) is assigned;
    /// grouped here by that level.
    pairs_by_level: Vec<Vec<(u32, u32)>>,
    require_wu: bool,
    cursor: Vec<u64>,
    partial: Vec<CohomologyClass>,
    pos: usize,
    done: bool,
}

/// Streams every class system over the ring that passes the requested
/// filters.  The raw space must fit the budget before any walking starts.
///
/// ```
/// use stiefel::{wu, StiefelRing};
/// let ring = StiefelRing::new(5, 1).unwrap();
/// let opts = wu::EnumerateOptions { require_wu: true, ..Default::default() };
/// let systems: Vec<_> = wu::enumerate_systems(&ring, &opts).unwrap().collect();
/// assert_eq!(systems.len(), 2);
/// ```
pub fn enumerate_systems(ring: &StiefelRing, options: &EnumerateOptions) -> Result<SystemIter> {
    let top = ring.top_degree();
    let bits = state_bits(ring);
    if bits >= 64 || (1u128 << bits) > options.budget as u128 {
        return Err(Error::BudgetExceeded {
            state_bits: bits,
            budget: options.budget,
        });
    }

    let allowed_low_degree: Option<u32> = if options.require_low_vanishing {
        if ring.n() < 2 * ring.k() {
            return Err(Error::Hypothesis {
                requirement: "n >= 2*k",
                n: ring.n(),
                k: ring.k(),
            });
        }
        let power = phi((ring.n() - ring.k() - 1) as u64).power;
        if power <= BigUint::from(ring.gen_hi()) {
            Some(u32::try_from(&power).unwrap())
        } else {
            None
        }
    } else {
        None
    };

    let unreachable_first = options
        .first_nonzero
        .map(|f| f < 1 || f > top)
        .unwrap_or(false);

    let mut levels = Vec::with_capacity(top as usize);
    for degree in 1..=top {
        let basis = ring.basis(degree);
        let full = 1u64 << basis.len();
        let mut lo = 0u64;
        let mut hi = full;
        if options.require_low_vanishing
            && degree <= ring.gen_hi()
            && Some(degree) != allowed_low_degree
        {
            hi = hi.min(1);
        }
        if let Some(f) = options.first_nonzero {
            if degree < f {
                hi = hi.min(1);
            } else if degree == f {
                lo = lo.max(1);
            }
        }
        levels.push(Level {
            basis,
            masks: lo..hi.max(lo),
        });
    }

    let mut pairs_by_level = vec![Vec::new(); top as usize];
    if options.require_wu {
        for j in 1..=top {
            for i in 1..=j {
                let level = (i + j).min(top);
                pairs_by_level[(level - 1) as usize].push((i, j));
            }
        }
    }

    let cursor = levels.iter().map(|l| l.masks.start).collect();
    let partial = vec![CohomologyClass::zero(); levels.len()];
    Ok(SystemIter {
        ring: ring.clone(),
        levels,
        pairs_by_level,
        require_wu: options.require_wu,
        cursor,
        partial,
        pos: 0,
        done: unreachable_first,
    })
}

impl SystemIter {
    fn class_for_mask(level: &Level, mask: u64) -> CohomologyClass {
        let mut class = CohomologyClass::zero();
        for (t, m) in level.basis.iter().enumerate() {
            if mask >> t & 1 == 1 {
                class.toggle(m.clone());
            }
        }
        class
    }

    /// Checks every pair that became decidable with the assignment at `pos`.
    fn pairs_hold_at(&self, pos: usize) -> bool {
        if !self.require_wu {
            return true;
        }
        let top = self.ring.top_degree();
        let partial = &self.partial;
        let w = move |d: u32| -> CohomologyClass {
            if d == 0 {
                CohomologyClass::unit()
            } else if d > top {
                CohomologyClass::zero()
            } else {
                partial[(d - 1) as usize].clone()
            }
        };
        for &(i, j) in &self.pairs_by_level[pos] {
            let lhs = steenrod::sq(&self.ring, i, &w(j)).expect("basis classes are valid");
            let rhs = wu_rhs_with(&self.ring, &w, i, j);
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    fn assemble(&self) -> CharClassSystem {
        let mut classes = BTreeMap::new();
        for (idx, class) in self.partial.iter().enumerate() {
            if !class.is_zero() {
                classes.insert(idx as u32 + 1, class.clone());
            }
        }
        CharClassSystem {
            ring: self.ring.clone(),
            classes,
        }
    }
}

impl Iterator for SystemIter {
    type Item = CharClassSystem;

    fn next(&mut self) -> Option<CharClassSystem> {
        if self.done {
            return None;
        }
        if self.levels.is_empty() {
            self.done = true;
            return Some(CharClassSystem::trivial(self.ring.clone()));
        }
        loop {
            if self.pos == self.levels.len() {
                let out = self.assemble();
                self.pos -= 1;
                self.cursor[self.pos] += 1;
                return Some(out);
            }
            let masks = self.levels[self.pos].masks.clone();
            if self.cursor[self.pos] >= masks.end {
                if self.pos == 0 {
                    self.done = true;
                    return None;
                }
                self.cursor[self.pos] = masks.start;
                self.pos -= 1;
                self.cursor[self.pos] += 1;
                continue;
            }
            let mask = self.cursor[self.pos];
            self.partial[self.pos] = Self::class_for_mask(&self.levels[self.pos], mask);
            if self.pairs_hold_at(self.pos) {
                self.pos += 1;
            } else {
                self.cursor[self.pos] += 1;
            }
        }
    }
}

/// What one degree is allowed to hold once the first nonzero class of a
/// system sits in degree 2^q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeVerdict {
    /// The class in this degree must vanish.
    ForcedZero,
    /// A power-of-two multiple of 2^q; unconstrained by the relation table.
    FreeGenerator,
    /// The class must equal the product of the classes in these power-of-two
    /// degrees, the binary decomposition of the degree.
    ForcedProduct(Vec<u32>),
}

/// Verdicts for every degree 1..=top on a fixed ring and q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    pub n: u32,
    pub k: u32,
    pub q: u32,
    pub verdicts: BTreeMap<u32, DegreeVerdict>,
}

/// Derives the degree relations under the band-separation hypothesis
/// 4n > k(k+4): degrees that are not multiples of 2^q are forced to zero,
/// multiples decompose binarily, and degrees 2^{q+t} remain free.
pub fn relation_table(ring: &StiefelRing, q: u32) -> Result<RelationTable> {
    if 4 * ring.n() <= ring.k() * (ring.k() + 4) {
        return Err(Error::Hypothesis {
            requirement: "n > k*(k+4)/4",
            n: ring.n(),
            k: ring.k(),
        });
    }
    let top = ring.top_degree() as u64;
    let step: Option<u64> = (q < 63).then(|| 1u64 << q);
    let mut verdicts = BTreeMap::new();
    for degree in 1..=top as u32 {
        let verdict = match step {
            Some(step) if degree as u64 % step == 0 => {
                let multiple = degree as u64 / step;
                if multiple.is_power_of_two() {
                    DegreeVerdict::FreeGenerator
                } else {
                    let parts = (0..64)
                        .filter(|t| multiple >> t & 1 == 1)
                        .map(|t| ((1u64 << t) * step) as u32)
                        .collect();
                    DegreeVerdict::ForcedProduct(parts)
                }
            }
            _ => DegreeVerdict::ForcedZero,
        };
        verdicts.insert(degree, verdict);
    }
    Ok(RelationTable {
        n: ring.n(),
        k: ring.k(),
        q,
        verdicts,
    })
}

/// One degree where a system disagrees with its relation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub degree: u32,
    pub expected: CohomologyClass,
    pub actual: CohomologyClass,
}

/// Checks a system against [`relation_table`].  The system's first nonzero
/// degree must be exactly 2^q.
pub fn relation_violations(system: &CharClassSystem, q: u32) -> Result<Vec<RelationViolation>> {
    let ring = &system.ring;
    let table = relation_table(ring, q)?;
    let expected_first: Option<u32> = (q < 32).then(|| 1u32 << q).filter(|f| *f <= ring.top_degree());
    let actual = system.first_nonzero_degree();
    if expected_first.is_none() || actual != expected_first {
        return Err(Error::FirstNonzeroMismatch {
            expected: if q < 32 { 1u32 << q } else { u32::MAX },
            actual,
        });
    }
    let mut out = Vec::new();
    for (&degree, verdict) in &table.verdicts {
        match verdict {
            DegreeVerdict::FreeGenerator => {}
            DegreeVerdict::ForcedZero => {
                let actual = system.class(degree);
                if !actual.is_zero() {
                    out.push(RelationViolation {
                        degree,
                        expected: CohomologyClass::zero(),
                        actual,
                    });
                }
            }
            DegreeVerdict::ForcedProduct(parts) => {
                let mut expected = CohomologyClass::unit();
                for &part in parts {
                    expected = ring
                        .multiply(&expected, &system.class(part))
                        .expect("system classes are validated");
                }
                let actual = system.class(degree);
                if actual != expected {
                    out.push(RelationViolation {
                        degree,
                        expected,
                        actual,
                    });
                }
            }
        }
    }
    Ok(out)
}
