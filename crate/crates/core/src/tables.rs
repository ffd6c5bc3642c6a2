//! Finite semirings and semimodules given by explicit operation tables.
//!
//! Carriers are the index ranges `0..n`. The additive zero and the
//! multiplicative one are recorded explicitly and need not be `0` and `1`,
//! so tables imported from elsewhere are accepted without renumbering.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Index of an element in a finite carrier.
pub type Elem = usize;

/// The axioms checked by [`validate_semiring`] and [`validate_semimodule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AdditiveAssociativity,
    AdditiveCommutativity,
    AdditiveIdentity,
    MultiplicativeAssociativity,
    MultiplicativeCommutativity,
    MultiplicativeIdentity,
    LeftDistributivity,
    RightDistributivity,
    ZeroAnnihilates,
    ZeroDistinctFromOne,
    /// `s(x + y) = sx + sy`
    ActionOverVectorSum,
    /// `(s + t)x = sx + tx`
    ActionOverScalarSum,
    /// `(st)x = s(tx)`
    ActionCompatibility,
    /// `s·0 = 0`
    ActionFixesZeroVector,
    /// `0·x = 0`
    ActionByZeroScalar,
    /// `1·x = x`
    ActionUnitality,
}

impl Axiom {
    pub fn description(self) -> &'static str {
        match self {
            Axiom::AdditiveAssociativity => "(a+b)+c = a+(b+c)",
            Axiom::AdditiveCommutativity => "a+b = b+a",
            Axiom::AdditiveIdentity => "0+a = a+0 = a",
            Axiom::MultiplicativeAssociativity => "(ab)c = a(bc)",
            Axiom::MultiplicativeCommutativity => "ab = ba",
            Axiom::MultiplicativeIdentity => "1a = a1 = a",
            Axiom::LeftDistributivity => "a(b+c) = ab+ac",
            Axiom::RightDistributivity => "(b+c)a = ba+ca",
            Axiom::ZeroAnnihilates => "a0 = 0a = 0",
            Axiom::ZeroDistinctFromOne => "0 != 1",
            Axiom::ActionOverVectorSum => "s(x+y) = sx+sy",
            Axiom::ActionOverScalarSum => "(s+t)x = sx+tx",
            Axiom::ActionCompatibility => "(st)x = s(tx)",
            Axiom::ActionFixesZeroVector => "s0 = 0",
            Axiom::ActionByZeroScalar => "0x = 0",
            Axiom::ActionUnitality => "1x = x",
        }
    }
}

/// One failed instance of an axiom, with the element tuple that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ({}) at {:?}", self.axiom, self.axiom.description(), self.witness)
    }
}

/// Whether validation insists on a commutative multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Commutativity {
    Required,
    NotRequired,
}

/// Unvalidated semiring tables, exactly as they appear in the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSemiring {
    #[serde(default)]
    pub name: String,
    pub size: usize,
    pub zero: Elem,
    pub one: Elem,
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
}

/// Unvalidated semimodule tables. `action[s][x]` is the scalar product `s·x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSemimodule {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub base: String,
    pub size: usize,
    pub zero: Elem,
    pub add: Vec<Vec<Elem>>,
    pub action: Vec<Vec<Elem>>,
}

/// A commutative monoid `(carrier, +, 0)`; shared by semirings and semimodules.
pub trait AdditiveMonoid {
    fn size(&self) -> usize;
    fn zero(&self) -> Elem;
    fn add(&self, a: Elem, b: Elem) -> Elem;

    fn elements(&self) -> Range<Elem> {
        0..self.size()
    }

    /// Sum of `k ≥ 1` copies of `a`.
    fn multiple(&self, k: usize, a: Elem) -> Elem {
        (1..k).fold(if k == 0 { self.zero() } else { a }, |acc, _| self.add(acc, a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: String,
    size: usize,
    zero: Elem,
    one: Elem,
    add: Vec<Vec<Elem>>,
    mul: Vec<Vec<Elem>>,
}

impl FiniteSemiring {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a][b]
    }

    /// `a^k` with `a^0 = 1`.
    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// The powers `a, a², …, aⁿ` where `n` is the carrier size. On a finite
    /// carrier every power sequence has entered its cycle by step `n`.
    pub fn powers(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size).scan(self.one, move |acc, _| {
            *acc = self.mul(*acc, a);
            Some(*acc)
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn to_raw(&self) -> RawSemiring {
        RawSemiring {
            name: self.name.clone(),
            size: self.size,
            zero: self.zero,
            one: self.one,
            add: self.add.clone(),
            mul: self.mul.clone(),
        }
    }

    /// Build without validation. Callers guarantee the axioms hold.
    pub(crate) fn from_raw_unchecked(raw: RawSemiring) -> Self {
        FiniteSemiring {
            name: raw.name,
            size: raw.size,
            zero: raw.zero,
            one: raw.one,
            add: raw.add,
            mul: raw.mul,
        }
    }
}

impl AdditiveMonoid for FiniteSemiring {
    fn size(&self) -> usize {
        self.size
    }
    fn zero(&self) -> Elem {
        self.zero
    }
    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a][b]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSemimodule {
    name: String,
    size: usize,
    zero: Elem,
    add: Vec<Vec<Elem>>,
    action: Vec<Vec<Elem>>,
    base: Arc<FiniteSemiring>,
}

impl FiniteSemimodule {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> &Arc<FiniteSemiring> {
        &self.base
    }

    /// Scalar product `s·x`.
    #[inline]
    pub fn act(&self, s: Elem, x: Elem) -> Elem {
        self.action[s][x]
    }

    pub fn is_zero_module(&self) -> bool {
        self.size == 1
    }

    /// The semiring acting on itself by multiplication.
    pub fn regular(base: &Arc<FiniteSemiring>) -> Self {
        FiniteSemimodule {
            name: format!("{}/self", base.name()),
            size: base.size,
            zero: base.zero,
            add: base.add.clone(),
            action: base.mul.clone(),
            base: Arc::clone(base),
        }
    }

    /// The zero module `{0}`.
    pub fn trivial(base: &Arc<FiniteSemiring>) -> Self {
        FiniteSemimodule {
            name: format!("{}/trivial", base.name()),
            size: 1,
            zero: 0,
            add: vec![vec![0]],
            action: vec![vec![0]; base.size],
            base: Arc::clone(base),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn to_raw(&self) -> RawSemimodule {
        RawSemimodule {
            name: self.name.clone(),
            base: self.base.name().to_string(),
            size: self.size,
            zero: self.zero,
            add: self.add.clone(),
            action: self.action.clone(),
        }
    }
}

impl AdditiveMonoid for FiniteSemimodule {
    fn size(&self) -> usize {
        self.size
    }
    fn zero(&self) -> Elem {
        self.zero
    }
    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a][b]
    }
}

/// A subset of a finite carrier, stored as a membership mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    mask: Vec<bool>,
}

impl Subset {
    pub fn empty(universe: usize) -> Self {
        Subset { mask: vec![false; universe] }
    }

    pub fn full(universe: usize) -> Self {
        Subset { mask: vec![true; universe] }
    }

    pub fn from_indices(universe: usize, members: impl IntoIterator<Item = Elem>) -> Self {
        let mut set = Subset::empty(universe);
        for x in members {
            set.insert(x);
        }
        set
    }

    pub fn from_predicate(universe: usize, pred: impl FnMut(Elem) -> bool) -> Self {
        Subset { mask: (0..universe).map(pred).collect() }
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x]
    }

    /// Returns `true` if `x` was not already present.
    pub fn insert(&mut self, x: Elem) -> bool {
        !std::mem::replace(&mut self.mask[x], true)
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn is_full(&self) -> bool {
        self.mask.iter().all(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.mask.iter().enumerate().filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn complement(&self) -> impl Iterator<Item = Elem> + '_ {
        self.mask.iter().enumerate().filter_map(|(i, &b)| (!b).then_some(i))
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset { mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a || b).collect() }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset { mask: self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect() }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

fn check_square(label: &str, table: &[Vec<Elem>], rows: usize, cols: usize, bound: usize) -> Result<()> {
    if table.len() != rows || table.iter().any(|row| row.len() != cols) {
        return Err(Error::SizeMismatch(format!("{label} table must be {rows}x{cols}")));
    }
    if let Some(bad) = table.iter().flatten().find(|&&v| v >= bound) {
        return Err(Error::SizeMismatch(format!("{label} table entry {bad} is not below {bound}")));
    }
    Ok(())
}

fn check_shape(raw: &RawSemiring) -> Result<()> {
    let n = raw.size;
    if n < 2 {
        return Err(Error::SizeMismatch(format!("a semiring needs at least 2 elements, got {n}")));
    }
    if raw.zero >= n || raw.one >= n {
        return Err(Error::SizeMismatch("zero or one is not a valid index".into()));
    }
    check_square("addition", &raw.add, n, n, n)?;
    check_square("multiplication", &raw.mul, n, n, n)
}

fn monoid_violations(size: usize, zero: Elem, add: &[Vec<Elem>], out: &mut Vec<Violation>) {
    let v = |axiom, witness: &[Elem]| Violation { axiom, witness: witness.to_vec() };
    for a in 0..size {
        if add[zero][a] != a || add[a][zero] != a {
            out.push(v(Axiom::AdditiveIdentity, &[a]));
        }
    }
    for a in 0..size {
        for b in (a + 1)..size {
            if add[a][b] != add[b][a] {
                out.push(v(Axiom::AdditiveCommutativity, &[a, b]));
            }
        }
    }
    for a in 0..size {
        for b in 0..size {
            for c in 0..size {
                if add[add[a][b]][c] != add[a][add[b][c]] {
                    out.push(v(Axiom::AdditiveAssociativity, &[a, b, c]));
                }
            }
        }
    }
}

/// Every axiom violation of the given tables. Shape errors are reported as `Err`.
pub fn semiring_violations(raw: &RawSemiring, commutativity: Commutativity) -> Result<Vec<Violation>> {
    check_shape(raw)?;
    let (n, zero, one, add, mul) = (raw.size, raw.zero, raw.one, &raw.add, &raw.mul);
    let mut out = Vec::new();
    if zero == one {
        out.push(Violation { axiom: Axiom::ZeroDistinctFromOne, witness: vec![zero] });
    }
    monoid_violations(n, zero, add, &mut out);
    let v = |axiom, witness: &[Elem]| Violation { axiom, witness: witness.to_vec() };
    for a in 0..n {
        if mul[one][a] != a || mul[a][one] != a {
            out.push(v(Axiom::MultiplicativeIdentity, &[a]));
        }
        if mul[a][zero] != zero || mul[zero][a] != zero {
            out.push(v(Axiom::ZeroAnnihilates, &[a]));
        }
    }
    if commutativity == Commutativity::Required {
        for a in 0..n {
            for b in (a + 1)..n {
                if mul[a][b] != mul[b][a] {
                    out.push(v(Axiom::MultiplicativeCommutativity, &[a, b]));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    out.push(v(Axiom::MultiplicativeAssociativity, &[a, b, c]));
                }
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                    out.push(v(Axiom::LeftDistributivity, &[a, b, c]));
                }
                if mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]] {
                    out.push(v(Axiom::RightDistributivity, &[a, b, c]));
                }
            }
        }
    }
    Ok(out)
}

/// Validate semiring tables, requiring a commutative multiplication.
pub fn validate_semiring(raw: RawSemiring) -> Result<FiniteSemiring> {
    validate_semiring_with(raw, Commutativity::Required)
}

pub fn validate_semiring_with(raw: RawSemiring, commutativity: Commutativity) -> Result<FiniteSemiring> {
    let violations = semiring_violations(&raw, commutativity)?;
    if violations.is_empty() {
        Ok(FiniteSemiring::from_raw_unchecked(raw))
    } else {
        Err(Error::AxiomViolations(violations))
    }
}

/// Every axiom violation of `raw` as a semimodule over `base`.
pub fn semimodule_violations(base: &FiniteSemiring, raw: &RawSemimodule) -> Result<Vec<Violation>> {
    let m = raw.size;
    if m == 0 || raw.zero >= m {
        return Err(Error::SizeMismatch("semimodule needs a nonempty carrier containing zero".into()));
    }
    check_square("addition", &raw.add, m, m, m)?;
    if raw.action.len() != base.size() {
        return Err(Error::BaseMismatch(format!(
            "action table has {} rows but the base semiring `{}` has {} elements",
            raw.action.len(),
            base.name(),
            base.size()
        )));
    }
    check_square("action", &raw.action, base.size(), m, m)?;

    let (zero, add, act) = (raw.zero, &raw.add, &raw.action);
    let mut out = Vec::new();
    monoid_violations(m, zero, add, &mut out);
    let v = |axiom, witness: &[Elem]| Violation { axiom, witness: witness.to_vec() };
    let n = base.size();
    for x in 0..m {
        if act[base.zero()][x] != zero {
            out.push(v(Axiom::ActionByZeroScalar, &[x]));
        }
        if act[base.one()][x] != x {
            out.push(v(Axiom::ActionUnitality, &[x]));
        }
    }
    for s in 0..n {
        if act[s][zero] != zero {
            out.push(v(Axiom::ActionFixesZeroVector, &[s]));
        }
        for x in 0..m {
            for y in 0..m {
                if act[s][add[x][y]] != add[act[s][x]][act[s][y]] {
                    out.push(v(Axiom::ActionOverVectorSum, &[s, x, y]));
                }
            }
        }
        for t in 0..n {
            for x in 0..m {
                if act[base.add(s, t)][x] != add[act[s][x]][act[t][x]] {
                    out.push(v(Axiom::ActionOverScalarSum, &[s, t, x]));
                }
                if act[base.mul(s, t)][x] != act[s][act[t][x]] {
                    out.push(v(Axiom::ActionCompatibility, &[s, t, x]));
                }
            }
        }
    }
    Ok(out)
}

pub fn validate_semimodule(base: &Arc<FiniteSemiring>, raw: RawSemimodule) -> Result<FiniteSemimodule> {
    let violations = semimodule_violations(base, &raw)?;
    if !violations.is_empty() {
        return Err(Error::AxiomViolations(violations));
    }
    Ok(FiniteSemimodule {
        name: raw.name,
        size: raw.size,
        zero: raw.zero,
        add: raw.add,
        action: raw.action,
        base: Arc::clone(base),
    })
}

/// `V(M)`: the elements that have an additive inverse.
pub fn v_set<A: AdditiveMonoid + ?Sized>(monoid: &A) -> Subset {
    Subset::from_predicate(monoid.size(), |x| monoid.elements().any(|y| monoid.add(x, y) == monoid.zero()))
}

pub fn is_commutative_mul(s: &FiniteSemiring) -> bool {
    s.elements().all(|a| s.elements().all(|b| s.mul(a, b) == s.mul(b, a)))
}
