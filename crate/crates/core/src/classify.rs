//! Distinguished element sets and the semiring classes built on them.
//!
//! Zero-divisor convention: `0 ∈ Z(S)` because `1 ≠ 0`, and `0 ∈ Z(M)`
//! whenever `M ≠ {0}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expectation::ExpectationInstance;
use crate::ideals::{cyclic_submodule, is_ideal, principal_ideal};
use crate::tables::{v_set, AdditiveMonoid, Elem, FiniteSemimodule, FiniteSemiring, Subset};

pub fn units(s: &FiniteSemiring) -> Subset {
    Subset::from_predicate(s.size(), |a| {
        s.elements().any(|b| s.mul(a, b) == s.one() && s.mul(b, a) == s.one())
    })
}

pub fn idempotents(s: &FiniteSemiring) -> Subset {
    Subset::from_predicate(s.size(), |a| s.mul(a, a) == a)
}

pub fn nilpotents(s: &FiniteSemiring) -> Subset {
    Subset::from_predicate(s.size(), |a| s.powers(a).any(|p| p == s.zero()))
}

/// `Z(S) = { s : st = 0 for some t ≠ 0 }`.
pub fn zero_divisors(s: &FiniteSemiring) -> Subset {
    Subset::from_predicate(s.size(), |a| s.elements().any(|t| t != s.zero() && s.mul(a, t) == s.zero()))
}

/// `Z(M) = { s : sm = 0 for some m ≠ 0 }`; undefined for `M = {0}`.
pub fn zero_divisors_mod(m: &FiniteSemimodule) -> Result<Subset> {
    if m.is_zero_module() {
        return Err(Error::EmptyModule);
    }
    Ok(module_zero_divisors(m))
}

/// As [`zero_divisors_mod`], but the zero module yields the empty set.
pub(crate) fn module_zero_divisors(m: &FiniteSemimodule) -> Subset {
    Subset::from_predicate(m.base().size(), |a| m.elements().any(|x| x != m.zero() && m.act(a, x) == m.zero()))
}

/// The nonunits form an ideal.
pub fn is_local(s: &FiniteSemiring) -> bool {
    let nonunits = Subset::from_predicate(s.size(), {
        let u = units(s);
        move |a| !u.contains(a)
    });
    is_ideal(s, &nonunits)
}

pub fn is_semifield(s: &FiniteSemiring) -> bool {
    let u = units(s);
    s.elements().all(|a| a == s.zero() || u.contains(a))
}

/// `st = t` forces `s ∈ U(S)` or `t = 0`.
pub fn is_presimplifiable(s: &FiniteSemiring) -> bool {
    let u = units(s);
    s.elements().all(|a| s.elements().all(|t| s.mul(a, t) != t || u.contains(a) || t == s.zero()))
}

/// `sm = m` forces `s ∈ U(S)` or `m = 0`.
pub fn is_presimplifiable_mod(m: &FiniteSemimodule) -> bool {
    let s = m.base();
    let u = units(s);
    s.elements().all(|a| m.elements().all(|x| m.act(a, x) != x || u.contains(a) || x == m.zero()))
}

/// `a ∼ b`: the principal ideals agree.
pub fn associates(s: &FiniteSemiring, a: Elem, b: Elem) -> bool {
    principal_ideal(s, a) == principal_ideal(s, b)
}

/// `x ∼ y`: the cyclic subsemimodules agree.
pub fn associates_mod(m: &FiniteSemimodule, x: Elem, y: Elem) -> bool {
    cyclic_submodule(m, x) == cyclic_submodule(m, y)
}

/// `a ≈ b`: `a = ub` for a unit `u`.
pub fn strong_associates(s: &FiniteSemiring, a: Elem, b: Elem) -> bool {
    units(s).iter().any(|u| s.mul(u, b) == a)
}

pub fn strong_associates_mod(m: &FiniteSemimodule, x: Elem, y: Elem) -> bool {
    units(m.base()).iter().any(|u| m.act(u, y) == x)
}

pub fn is_strongly_associate(s: &FiniteSemiring) -> bool {
    is_strongly_associate_with_units(s, &units(s))
}

/// Strong associativity with a caller-supplied unit set.
pub fn is_strongly_associate_with_units(s: &FiniteSemiring, units: &Subset) -> bool {
    let ideals: Vec<Subset> = s.elements().map(|a| principal_ideal(s, a)).collect();
    s.elements().all(|a| {
        s.elements().all(|b| ideals[a] != ideals[b] || units.iter().any(|u| s.mul(u, b) == a))
    })
}

pub fn is_strongly_associate_mod(m: &FiniteSemimodule) -> bool {
    let u = units(m.base());
    let cyclic: Vec<Subset> = m.elements().map(|x| cyclic_submodule(m, x)).collect();
    m.elements().all(|x| m.elements().all(|y| cyclic[x] != cyclic[y] || u.iter().any(|s| m.act(s, y) == x)))
}

/// `Z(S) ⊆ Nil(S)`.
pub fn is_domainlike(s: &FiniteSemiring) -> bool {
    zero_divisors(s).is_subset(&nilpotents(s))
}

/// `Z(M) ⊆ Nil(S)`; vacuous for the zero module.
pub fn is_domainlike_mod(m: &FiniteSemimodule) -> bool {
    module_zero_divisors(m).is_subset(&nilpotents(m.base()))
}

/// Elements expressible as `t + e` with `t ∈ pool` and `e` idempotent.
fn sums_with_idempotents(s: &FiniteSemiring, pool: &Subset) -> Subset {
    let idem = idempotents(s);
    Subset::from_indices(s.size(), pool.iter().flat_map(|t| idem.iter().map(move |e| s.add(t, e))))
}

/// Every element is a unit plus an idempotent.
pub fn is_clean(s: &FiniteSemiring) -> bool {
    sums_with_idempotents(s, &units(s)).is_full()
}

/// Every element is a non-zero-divisor plus an idempotent.
pub fn is_almost_clean(s: &FiniteSemiring) -> bool {
    let z = zero_divisors(s);
    let regular = Subset::from_predicate(s.size(), |a| !z.contains(a));
    sums_with_idempotents(s, &regular).is_full()
}

/// Every `s` is `t + e` with `t ∉ Z(S) ∪ Z(M)` and `e` idempotent.
pub fn almost_clean_criterion(m: &FiniteSemimodule) -> bool {
    let s = m.base();
    let bad = zero_divisors(s).union(&module_zero_divisors(m));
    let pool = Subset::from_predicate(s.size(), |a| !bad.contains(a));
    sums_with_idempotents(s, &pool).is_full()
}

/// Every `s` satisfies `s = u + e` or `s + e = u` for a unit `u` and an
/// idempotent `e`.
pub fn is_weakly_clean(s: &FiniteSemiring) -> bool {
    let (u, idem) = (units(s), idempotents(s));
    s.elements().all(|a| {
        u.iter().any(|v| idem.iter().any(|e| a == s.add(v, e) || s.add(a, e) == v))
    })
}

/// The condition read verbatim: `s = u + e`, or `u + e = u`, for some unit
/// `u` and idempotent `e`. The second alternative does not mention `s` and
/// holds with `u = 1`, `e = 0`, so every semiring qualifies.
pub fn is_weakly_clean_literal(s: &FiniteSemiring) -> bool {
    let (u, idem) = (units(s), idempotents(s));
    s.elements().all(|a| u.iter().any(|v| idem.iter().any(|e| a == s.add(v, e) || s.add(v, e) == v)))
}

/// Elements `a` with `a + a + b = a` for some `b`.
pub fn additively_regular_elements<A: AdditiveMonoid + ?Sized>(monoid: &A) -> Subset {
    Subset::from_predicate(monoid.size(), |a| {
        let double = monoid.add(a, a);
        monoid.elements().any(|b| monoid.add(double, b) == a)
    })
}

pub fn is_additively_regular<A: AdditiveMonoid + ?Sized>(monoid: &A) -> bool {
    additively_regular_elements(monoid).is_full()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub semifield: bool,
    pub local: bool,
    pub presimplifiable: bool,
    pub strongly_associate: bool,
    pub domainlike: bool,
    pub clean: bool,
    pub almost_clean: bool,
    pub weakly_clean: bool,
    /// The weakly clean condition read verbatim; see [`is_weakly_clean_literal`].
    pub weakly_clean_literal: bool,
    pub additively_regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub units: Subset,
    pub v_set: Subset,
    pub idempotents: Subset,
    pub nilpotents: Subset,
    pub zero_divisors: Subset,
    pub flags: ClassFlags,
}

pub fn classify(s: &FiniteSemiring) -> ClassReport {
    classify_with_units(s, units(s))
}

/// Classifies the expectation semiring, taking its unit set from the
/// factors as `U(S) × V(M)`.
pub fn classify_instance(inst: &ExpectationInstance) -> ClassReport {
    let unit_set = inst.box_set(&units(inst.semiring()), &v_set(inst.module().as_ref()));
    classify_with_units(inst.product(), unit_set)
}

fn classify_with_units(s: &FiniteSemiring, unit_set: Subset) -> ClassReport {
    let flags = ClassFlags {
        semifield: is_semifield(s),
        local: is_local(s),
        presimplifiable: is_presimplifiable(s),
        strongly_associate: is_strongly_associate_with_units(s, &unit_set),
        domainlike: is_domainlike(s),
        clean: is_clean(s),
        almost_clean: is_almost_clean(s),
        weakly_clean: is_weakly_clean(s),
        weakly_clean_literal: is_weakly_clean_literal(s),
        additively_regular: is_additively_regular(s),
    };
    ClassReport {
        units: unit_set,
        v_set: v_set(s),
        idempotents: idempotents(s),
        nilpotents: nilpotents(s),
        zero_divisors: zero_divisors(s),
        flags,
    }
}
