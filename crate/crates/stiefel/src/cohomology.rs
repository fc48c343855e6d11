//! The graded ring H*(V_k(R^n); Z_2).
//!
//! The ring is presented by a simple system of generators
//! `a_{n-k}, ..., a_{n-1}`, one in each degree of that interval.  Products
//! of distinct generators with strictly increasing indices form an additive
//! basis, and the multiplication is determined by the squaring rule
//! `a_i^2 = a_{2i}` when `2i <= n-1` and `a_i^2 = 0` otherwise.  The top
//! nonzero degree is the sum of all generator degrees, and products of
//! exactly `p` distinct generators live in the degree band `T_p`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use crate::{Error, Result};

/// Square-free product of generators, stored as a strictly increasing index
/// list.  The empty product is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    indices: Vec<u32>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial {
            indices: Vec::new(),
        }
    }

    pub fn generator(index: u32) -> Self {
        Monomial {
            indices: vec![index],
        }
    }

    /// Builds a monomial from a strictly increasing index list.
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse {
                input: format!("{indices:?}"),
                reason: "indices must be strictly increasing".into(),
            });
        }
        Ok(Monomial { indices })
    }

    fn from_sorted(indices: Vec<u32>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        Monomial { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// Number of generators in the product.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.indices.iter().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for i in &self.indices {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "a{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// GF(2) sum of monomials.  The term set is canonical: adding a monomial
/// that is already present cancels it.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CohomologyClass {
    terms: BTreeSet<Monomial>,
}

impl CohomologyClass {
    pub fn zero() -> Self {
        CohomologyClass::default()
    }

    pub fn unit() -> Self {
        CohomologyClass::from_monomial(Monomial::unit())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        CohomologyClass { terms }
    }

    /// Sums the given monomials with GF(2) cancellation.
    pub fn from_terms<I: IntoIterator<Item = Monomial>>(terms: I) -> Self {
        let mut class = CohomologyClass::zero();
        for m in terms {
            class.toggle(m);
        }
        class
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds one monomial mod 2.
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// The common degree of all terms, if there is one.  Zero has no
    /// homogeneous degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl std::ops::Add for &CohomologyClass {
    type Output = CohomologyClass;

    fn add(self, rhs: &CohomologyClass) -> CohomologyClass {
        let mut out = self.clone();
        for m in &rhs.terms {
            out.toggle(m.clone());
        }
        out
    }
}

impl std::ops::Add for CohomologyClass {
    type Output = CohomologyClass;

    fn add(self, rhs: CohomologyClass) -> CohomologyClass {
        &self + &rhs
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for m in &self.terms {
            if !first {
                f.write_str("+")?;
            }
            write!(f, "{m}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CohomologyClass {
    type Err = Error;

    /// Parses the textual form produced by `Display`: terms joined by `+`,
    /// each a `*`-separated product of `a<index>` factors, with `1` for the
    /// unit and `0` for the zero class.  Factor order is normalized, repeated
    /// factors are rejected, repeated terms cancel.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s.trim();
        if body.is_empty() {
            return Err(parse_err("empty class"));
        }
        if body == "0" {
            return Ok(CohomologyClass::zero());
        }
        let mut class = CohomologyClass::zero();
        for term in body.split('+') {
            let term = term.trim();
            if term == "1" {
                class.toggle(Monomial::unit());
                continue;
            }
            let mut indices = Vec::new();
            for factor in term.split('*') {
                let factor = factor.trim();
                let digits = factor
                    .strip_prefix('a')
                    .ok_or_else(|| parse_err("factors must look like a<index>"))?;
                let index: u32 = digits
                    .parse()
                    .map_err(|_| parse_err("factors must look like a<index>"))?;
                indices.push(index);
            }
            indices.sort_unstable();
            if indices.windows(2).any(|w| w[0] == w[1]) {
                return Err(parse_err("monomials are square-free"));
            }
            class.toggle(Monomial::from_sorted(indices));
        }
        Ok(class)
    }
}

/// The degree interval carrying products of exactly `p` distinct generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBand {
    pub p: u32,
    pub lo: u32,
    pub hi: u32,
}

impl DegreeBand {
    pub fn contains(&self, degree: u32) -> bool {
        self.lo <= degree && degree <= self.hi
    }

    pub fn width(&self) -> u32 {
        self.hi - self.lo
    }
}

/// Which duplicate a reduction step rewrites first.  Both orders land on the
/// same canonical form; the second exists so tests can confirm that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    SmallestFirst,
    LargestFirst,
}

/// Parameters of V_k(R^n) with the derived grading data.  Clones share the
/// per-degree basis cache, and the cache fill is idempotent, so a ring can be
/// read from several threads at once.
#[derive(Clone)]
pub struct StiefelRing {
    n: u32,
    k: u32,
    top_degree: u32,
    basis_cache: Arc<RwLock<HashMap<u32, Arc<[Monomial]>>>>,
}

impl PartialEq for StiefelRing {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k
    }
}

impl Eq for StiefelRing {}

impl fmt::Debug for StiefelRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StiefelRing(n={}, k={})", self.n, self.k)
    }
}

impl StiefelRing {
    /// Builds the ring for V_k(R^n); requires n > k >= 1.
    ///
    /// ```
    /// use stiefel::StiefelRing;
    /// let ring = StiefelRing::new(7, 3).unwrap();
    /// assert_eq!(ring.top_degree(), 15);
    /// ```
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k < 1 || n <= k {
            return Err(Error::RingParams { n, k });
        }
        let top_degree = (n - k..n).sum();
        Ok(StiefelRing {
            n,
            k,
            top_degree,
            basis_cache: Arc::new(RwLock::new(HashMap::new())),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Sum of all generator degrees; every degree above it is zero.
    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    /// Smallest generator index, n - k.
    pub fn gen_lo(&self) -> u32 {
        self.n - self.k
    }

    /// Largest generator index, n - 1.
    pub fn gen_hi(&self) -> u32 {
        self.n - 1
    }

    pub fn validate_monomial(&self, m: &Monomial) -> Result<()> {
        for &i in m.indices() {
            if i < self.gen_lo() || i > self.gen_hi() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    lo: self.gen_lo(),
                    hi: self.gen_hi(),
                });
            }
        }
        Ok(())
    }

    pub fn validate_class(&self, class: &CohomologyClass) -> Result<()> {
        for m in class.terms() {
            self.validate_monomial(m)?;
        }
        Ok(())
    }

    /// Parses a class and checks its indices against the generator range.
    pub fn parse_class(&self, text: &str) -> Result<CohomologyClass> {
        let class: CohomologyClass = text.parse()?;
        self.validate_class(&class)?;
        Ok(class)
    }

    /// The additive basis in one degree, sorted lexicographically by index
    /// list.  Degrees outside [0, top] are empty.  Results are memoized.
    ///
    /// ```
    /// use stiefel::StiefelRing;
    /// let ring = StiefelRing::new(4, 2).unwrap();
    /// let basis = ring.basis(5);
    /// assert_eq!(basis.len(), 1);
    /// assert_eq!(basis[0].to_string(), "a2*a3");
    /// assert!(ring.basis(4).is_empty());
    /// ```
    pub fn basis(&self, degree: u32) -> Arc<[Monomial]> {
        if let Some(hit) = self.basis_cache.read().unwrap().get(&degree) {
            return hit.clone();
        }
        let computed: Arc<[Monomial]> = self.enumerate_basis(degree).into();
        let mut cache = self.basis_cache.write().unwrap();
        cache.entry(degree).or_insert(computed).clone()
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.basis(degree).len()
    }

    fn enumerate_basis(&self, degree: u32) -> Vec<Monomial> {
        fn rec(
            hi: u32,
            start: u32,
            remaining: u32,
            prefix: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if remaining == 0 {
                out.push(Monomial::from_sorted(prefix.clone()));
                return;
            }
            let mut i = start;
            while i <= hi && i <= remaining {
                // Even taking every remaining index cannot reach the target
                // once the tail sum drops below it, and the tail sum only
                // shrinks as i grows.
                let tail = (i + hi) * (hi - i + 1) / 2;
                if tail < remaining {
                    break;
                }
                prefix.push(i);
                rec(hi, i + 1, remaining - i, prefix, out);
                prefix.pop();
                i += 1;
            }
        }

        if degree > self.top_degree {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec(
            self.gen_hi(),
            self.gen_lo(),
            degree,
            &mut Vec::new(),
            &mut out,
        );
        out
    }

    /// The band T_p = [p(n-k) + p(p-1)/2, p(n-1) - p(p-1)/2] of degrees
    /// realized by products of exactly p distinct generators.
    pub fn t_band(&self, p: u32) -> Result<DegreeBand> {
        if p > self.k {
            return Err(Error::BandIndex { p, k: self.k });
        }
        let lo = p * self.gen_lo() + p * (p.saturating_sub(1)) / 2;
        let hi = p * self.gen_hi() - p * (p.saturating_sub(1)) / 2;
        Ok(DegreeBand { p, lo, hi })
    }

    /// Rewrites a generator multiset into basis form: while some index
    /// repeats, one duplicated pair {i, i} becomes a_{2i}, or kills the term
    /// when 2i exceeds the top generator.  Returns the surviving monomial.
    pub fn reduce(&self, indices: &[u32], order: ReductionOrder) -> Option<Monomial> {
        let mut v = indices.to_vec();
        v.sort_unstable();
        loop {
            let dup = match order {
                ReductionOrder::SmallestFirst => v.windows(2).position(|w| w[0] == w[1]),
                ReductionOrder::LargestFirst => {
                    v.windows(2).rposition(|w| w[0] == w[1])
                }
            };
            let Some(at) = dup else {
                return Some(Monomial::from_sorted(v));
            };
            let i = v[at];
            v.drain(at..at + 2);
            let doubled = 2 * i;
            if doubled > self.gen_hi() {
                return None;
            }
            let slot = v.partition_point(|&x| x < doubled);
            v.insert(slot, doubled);
        }
    }

    /// Bilinear product of two classes, with duplicated indices rewritten
    /// smallest first.
    ///
    /// ```
    /// use stiefel::StiefelRing;
    /// let ring = StiefelRing::new(5, 3).unwrap();
    /// let a2 = ring.parse_class("a2").unwrap();
    /// let a3 = ring.parse_class("a3").unwrap();
    /// assert_eq!(ring.multiply(&a2, &a2).unwrap().to_string(), "a4");
    /// assert_eq!(ring.multiply(&a3, &a3).unwrap().to_string(), "0");
    /// ```
    pub fn multiply(
        &self,
        x: &CohomologyClass,
        y: &CohomologyClass,
    ) -> Result<CohomologyClass> {
        self.validate_class(x)?;
        self.validate_class(y)?;
        let mut acc = CohomologyClass::zero();
        for mx in x.terms() {
            for my in y.terms() {
                let mut merged = Vec::with_capacity(mx.len() + my.len());
                merged.extend_from_slice(mx.indices());
                merged.extend_from_slice(my.indices());
                if let Some(m) = self.reduce(&merged, ReductionOrder::SmallestFirst) {
                    acc.toggle(m);
                }
            }
        }
        Ok(acc)
    }
}
