//! Steenrod squares on the Stiefel cohomology ring.
//!
//! On a generator the action is `Sq^i(a_j) = C(j, i) a_{j+i}`, read mod 2
//! and truncated to zero once `j + i` passes the top generator.  The Cartan
//! formula extends this to products: on a basis monomial the square
//! distributes over all compositions of `i` across the factors, and each
//! surviving composition contributes a generator multiset that the ring
//! reduction turns back into a basis monomial.

use std::collections::{BTreeMap, HashMap};

use crate::cohomology::{CohomologyClass, Monomial, StiefelRing};
use crate::parity::binom_parity;
use crate::Result;

/// Sq^i on a single generator a_j.
///
/// ```
/// use stiefel::{steenrod, StiefelRing};
/// let ring = StiefelRing::new(5, 2).unwrap();
/// assert_eq!(steenrod::sq_gen(&ring, 1, 3).unwrap().to_string(), "a4");
/// assert_eq!(steenrod::sq_gen(&ring, 1, 4).unwrap().to_string(), "0");
/// ```
pub fn sq_gen(ring: &StiefelRing, i: u32, j: u32) -> Result<CohomologyClass> {
    ring.validate_monomial(&Monomial::generator(j))?;
    let target = j + i;
    if target > ring.gen_hi() {
        return Ok(CohomologyClass::zero());
    }
    let parity = binom_parity(j as i64, i as u64)?;
    Ok(if parity.is_odd() {
        CohomologyClass::from_monomial(Monomial::generator(target))
    } else {
        CohomologyClass::zero()
    })
}

/// Sq^i extended linearly over a class.
pub fn sq(ring: &StiefelRing, i: u32, x: &CohomologyClass) -> Result<CohomologyClass> {
    ring.validate_class(x)?;
    let mut acc = CohomologyClass::zero();
    for m in x.terms() {
        acc = acc + sq_monomial(ring, i, m);
    }
    Ok(acc)
}

/// Cartan expansion on one basis monomial.  Branches die as soon as a factor
/// would be pushed past the top generator, would carry an even binomial
/// coefficient, or the remaining exponent exceeds what the remaining factors
/// can absorb.
fn sq_monomial(ring: &StiefelRing, i: u32, m: &Monomial) -> CohomologyClass {
    if m.is_unit() {
        return if i == 0 {
            CohomologyClass::unit()
        } else {
            CohomologyClass::zero()
        };
    }
    let indices = m.indices();
    // Largest exponent each factor can take without vanishing.
    let caps: Vec<u32> = indices
        .iter()
        .map(|&j| j.min(ring.gen_hi() - j))
        .collect();
    let mut suffix_cap = vec![0u32; indices.len() + 1];
    for t in (0..indices.len()).rev() {
        suffix_cap[t] = suffix_cap[t + 1] + caps[t];
    }

    fn rec(
        ring: &StiefelRing,
        indices: &[u32],
        caps: &[u32],
        suffix_cap: &[u32],
        pos: usize,
        remaining: u32,
        targets: &mut Vec<u32>,
        acc: &mut CohomologyClass,
    ) {
        if pos == indices.len() {
            if remaining == 0 {
                if let Some(m) =
                    ring.reduce(targets, crate::cohomology::ReductionOrder::SmallestFirst)
                {
                    acc.toggle(m);
                }
            }
            return;
        }
        if remaining > suffix_cap[pos] {
            return;
        }
        let j = indices[pos];
        for l in 0..=caps[pos].min(remaining) {
            if binom_parity(j as i64, l as u64).unwrap().is_even() {
                continue;
            }
            targets.push(j + l);
            rec(
                ring,
                indices,
                caps,
                suffix_cap,
                pos + 1,
                remaining - l,
                targets,
                acc,
            );
            targets.pop();
        }
    }

    let mut acc = CohomologyClass::zero();
    rec(
        ring,
        indices,
        &caps,
        &suffix_cap,
        0,
        i,
        &mut Vec::with_capacity(indices.len()),
        &mut acc,
    );
    acc
}

/// One failed identity found by [`verify_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomViolation {
    pub family: &'static str,
    pub detail: String,
}

/// Tally of the identities checked on one ring.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checks: BTreeMap<&'static str, u64>,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn total_checks(&self) -> u64 {
        self.checks.values().sum()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

struct SqMemo {
    cache: HashMap<(u32, Monomial), CohomologyClass>,
}

impl SqMemo {
    fn new() -> Self {
        SqMemo {
            cache: HashMap::new(),
        }
    }

    fn sq(&mut self, ring: &StiefelRing, i: u32, x: &CohomologyClass) -> CohomologyClass {
        let mut acc = CohomologyClass::zero();
        for m in x.terms() {
            let hit = self
                .cache
                .entry((i, m.clone()))
                .or_insert_with(|| sq_monomial(ring, i, m))
                .clone();
            acc = acc + hit;
        }
        acc
    }
}

/// Checks the Steenrod axioms exhaustively over the whole additive basis:
/// Sq^0 is the identity, squares above the degree vanish, the top square is
/// the cup square, the Cartan formula holds on all basis products, and the
/// Adem relation
/// `Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c` holds for `a < 2b`
/// within the top degree.
pub fn verify_axioms(ring: &StiefelRing) -> AxiomReport {
    let top = ring.top_degree();
    let basis: Vec<Monomial> = (0..=top)
        .flat_map(|d| ring.basis(d).iter().cloned().collect::<Vec<_>>())
        .collect();
    let mut memo = SqMemo::new();
    let mut report = AxiomReport::default();
    let bump = |report: &mut AxiomReport, family: &'static str| {
        *report.checks.entry(family).or_insert(0) += 1;
    };

    for m in &basis {
        let x = CohomologyClass::from_monomial(m.clone());
        let d = m.degree();

        bump(&mut report, "sq0_identity");
        if memo.sq(ring, 0, &x) != x {
            report.violations.push(AxiomViolation {
                family: "sq0_identity",
                detail: format!("Sq^0({m}) != {m}"),
            });
        }

        for i in d + 1..=top + 2 {
            bump(&mut report, "instability");
            let got = memo.sq(ring, i, &x);
            if !got.is_zero() {
                report.violations.push(AxiomViolation {
                    family: "instability",
                    detail: format!("Sq^{i}({m}) = {got}, expected 0"),
                });
            }
        }

        bump(&mut report, "top_square");
        let squared = ring.multiply(&x, &x).unwrap();
        let got = memo.sq(ring, d, &x);
        if got != squared {
            report.violations.push(AxiomViolation {
                family: "top_square",
                detail: format!("Sq^{d}({m}) = {got}, expected {squared}"),
            });
        }
    }

    for mx in &basis {
        for my in &basis {
            let total = mx.degree() + my.degree();
            if total > top {
                continue;
            }
            let x = CohomologyClass::from_monomial(mx.clone());
            let y = CohomologyClass::from_monomial(my.clone());
            let xy = ring.multiply(&x, &y).unwrap();
            for i in 0..=total {
                bump(&mut report, "cartan");
                let lhs = memo.sq(ring, i, &xy);
                let mut rhs = CohomologyClass::zero();
                for a in 0..=i {
                    let sx = memo.sq(ring, a, &x);
                    let sy = memo.sq(ring, i - a, &y);
                    rhs = rhs + ring.multiply(&sx, &sy).unwrap();
                }
                if lhs != rhs {
                    report.violations.push(AxiomViolation {
                        family: "cartan",
                        detail: format!("Sq^{i}({mx}*{my}): {lhs} != {rhs}"),
                    });
                }
            }
        }
    }

    for b in 1..=top {
        for a in 0..2 * b {
            if a + b > top {
                break;
            }
            for m in &basis {
                bump(&mut report, "adem");
                let x = CohomologyClass::from_monomial(m.clone());
                let inner = memo.sq(ring, b, &x);
                let lhs = memo.sq(ring, a, &inner);
                let mut rhs = CohomologyClass::zero();
                for c in 0..=a / 2 {
                    // a < 2b bounds c below b, so the top entry stays >= 0.
                    let parity = binom_parity((b - c - 1) as i64, (a - 2 * c) as u64).unwrap();
                    if parity.is_even() {
                        continue;
                    }
                    let inner = memo.sq(ring, c, &x);
                    rhs = rhs + memo.sq(ring, a + b - c, &inner);
                }
                if lhs != rhs {
                    report.violations.push(AxiomViolation {
                        family: "adem",
                        detail: format!("Sq^{a}Sq^{b}({m}): {lhs} != {rhs}"),
                    });
                }
            }
        }
    }

    report
}
