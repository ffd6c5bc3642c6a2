//! Ideals of finite semirings and subsemimodules of finite semimodules:
//! closure, enumeration, the prime/maximal/primary/weakly-prime/subtractive
//! predicates, radicals and residuals, and the ideals `I ⊕̃ N` of an
//! expectation semiring.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::expectation::ExpectationInstance;
use crate::tables::{AdditiveMonoid, Elem, FiniteSemimodule, FiniteSemiring, Subset};

/// Carriers up to this size are enumerated by scanning every subset.
pub const SUBSET_SCAN_LIMIT: usize = 12;

/// Default refusal bound for ideal and subsemimodule enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(Subset);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subsemimodule(Subset);

impl Ideal {
    pub fn new(s: &FiniteSemiring, members: Subset) -> Result<Self> {
        if is_ideal(s, &members) {
            Ok(Ideal(members))
        } else {
            Err(Error::NotClosed("ideal"))
        }
    }

    pub(crate) fn from_subset_unchecked(members: Subset) -> Self {
        Ideal(members)
    }

    pub fn whole(s: &FiniteSemiring) -> Self {
        Ideal(Subset::full(s.size()))
    }

    pub fn zero(s: &FiniteSemiring) -> Self {
        Ideal(Subset::from_indices(s.size(), [s.zero()]))
    }

    pub fn members(&self) -> &Subset {
        &self.0
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.0.contains(x)
    }

    pub fn is_proper(&self) -> bool {
        !self.0.is_full()
    }

    pub fn into_subset(self) -> Subset {
        self.0
    }
}

impl Subsemimodule {
    pub fn new(m: &FiniteSemimodule, members: Subset) -> Result<Self> {
        if is_subsemimodule(m, &members) {
            Ok(Subsemimodule(members))
        } else {
            Err(Error::NotClosed("subsemimodule"))
        }
    }

    pub fn whole(m: &FiniteSemimodule) -> Self {
        Subsemimodule(Subset::full(m.size()))
    }

    pub fn zero(m: &FiniteSemimodule) -> Self {
        Subsemimodule(Subset::from_indices(m.size(), [m.zero()]))
    }

    pub fn members(&self) -> &Subset {
        &self.0
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.0.contains(x)
    }

    pub fn is_proper(&self) -> bool {
        !self.0.is_full()
    }
}

pub fn is_ideal(s: &FiniteSemiring, set: &Subset) -> bool {
    set.contains(s.zero())
        && set.iter().all(|a| set.iter().all(|b| set.contains(s.add(a, b))))
        && set.iter().all(|a| s.elements().all(|r| set.contains(s.mul(r, a)) && set.contains(s.mul(a, r))))
}

pub fn is_subsemimodule(m: &FiniteSemimodule, set: &Subset) -> bool {
    set.contains(m.zero())
        && set.iter().all(|a| set.iter().all(|b| set.contains(m.add(a, b))))
        && set.iter().all(|x| m.base().elements().all(|s| set.contains(m.act(s, x))))
}

/// Closes `seed ∪ {0}` under addition and under the given one-step maps.
fn close(universe: usize, zero: Elem, seed: impl IntoIterator<Item = Elem>, add: impl Fn(Elem, Elem) -> Elem, scale: impl Fn(Elem, &mut dyn FnMut(Elem))) -> Subset {
    let mut set = Subset::empty(universe);
    let mut order = Vec::new();
    for x in std::iter::once(zero).chain(seed) {
        if set.insert(x) {
            order.push(x);
        }
    }
    let mut next = 0;
    while next < order.len() {
        let x = order[next];
        let mut found = Vec::new();
        for &y in &order[..=next] {
            found.push(add(x, y));
        }
        scale(x, &mut |z| found.push(z));
        for z in found {
            if set.insert(z) {
                order.push(z);
            }
        }
        next += 1;
    }
    set
}

/// The least ideal containing `gens`.
pub fn ideal_closure(s: &FiniteSemiring, gens: impl IntoIterator<Item = Elem>) -> Ideal {
    Ideal(close(s.size(), s.zero(), gens, |a, b| s.add(a, b), |x, push| {
        for r in s.elements() {
            push(s.mul(r, x));
            push(s.mul(x, r));
        }
    }))
}

/// The least subsemimodule containing `gens`.
pub fn submodule_closure(m: &FiniteSemimodule, gens: impl IntoIterator<Item = Elem>) -> Subsemimodule {
    Subsemimodule(close(m.size(), m.zero(), gens, |a, b| m.add(a, b), |x, push| {
        for r in m.base().elements() {
            push(m.act(r, x));
        }
    }))
}

/// The cyclic subsemimodule `(x) = Sx`.
pub fn cyclic_submodule(m: &FiniteSemimodule, x: Elem) -> Subset {
    Subset::from_indices(m.size(), m.base().elements().map(|s| m.act(s, x)))
}

/// The principal ideal `(a) = Sa`.
pub fn principal_ideal(s: &FiniteSemiring, a: Elem) -> Subset {
    Subset::from_indices(s.size(), s.elements().map(|r| s.mul(r, a)))
}

fn enumerate_closed_sets(
    size: usize,
    bound: usize,
    is_closed: impl Fn(&Subset) -> bool,
    closure: impl Fn(&Subset, Elem) -> Subset,
    bottom: Subset,
) -> Result<Vec<Subset>> {
    if size > bound {
        return Err(Error::CarrierTooLarge { size, bound });
    }
    let mut found: Vec<Subset> = if size <= SUBSET_SCAN_LIMIT {
        (0u64..1 << size)
            .map(|bits| Subset::from_predicate(size, |i| bits >> i & 1 == 1))
            .filter(|set| is_closed(set))
            .collect()
    } else {
        // Every closed set is a join of closures of single elements, so
        // breadth-first joins from the bottom reach all of them.
        let mut seen: HashSet<Subset> = HashSet::from([bottom.clone()]);
        let mut frontier = vec![bottom];
        while let Some(set) = frontier.pop() {
            for x in set.complement().collect::<Vec<_>>() {
                let bigger = closure(&set, x);
                if seen.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        seen.into_iter().collect()
    };
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    Ok(found)
}

/// All ideals of `s`, sorted by size and then by member list.
pub fn enumerate_ideals(s: &FiniteSemiring) -> Result<Vec<Ideal>> {
    enumerate_ideals_bounded(s, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_ideals_bounded(s: &FiniteSemiring, bound: usize) -> Result<Vec<Ideal>> {
    let sets = enumerate_closed_sets(
        s.size(),
        bound,
        |set| is_ideal(s, set),
        |set, x| ideal_closure(s, set.iter().chain([x])).0,
        Ideal::zero(s).0,
    )?;
    Ok(sets.into_iter().map(Ideal).collect())
}

/// Enumeration by joining principal ideals regardless of carrier size.
pub fn enumerate_ideals_by_joins(s: &FiniteSemiring) -> Vec<Ideal> {
    let mut seen: BTreeSet<Subset> = BTreeSet::from([Ideal::zero(s).0]);
    let mut frontier: Vec<Subset> = seen.iter().cloned().collect();
    while let Some(set) = frontier.pop() {
        for x in set.complement().collect::<Vec<_>>() {
            let bigger = ideal_closure(s, set.iter().chain([x])).0;
            if seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    let mut out: Vec<Subset> = seen.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    out.into_iter().map(Ideal).collect()
}

pub fn enumerate_subsemimodules(m: &FiniteSemimodule) -> Result<Vec<Subsemimodule>> {
    let sets = enumerate_closed_sets(
        m.size(),
        DEFAULT_ENUMERATION_BOUND,
        |set| is_subsemimodule(m, set),
        |set, x| submodule_closure(m, set.iter().chain([x])).0,
        Subsemimodule::zero(m).0,
    )?;
    Ok(sets.into_iter().map(Subsemimodule).collect())
}

/// A pair `(x, y)` with `x ∈ N`, `x + y ∈ N` and `y ∉ N`, if one exists.
pub fn subtractive_witness<A: AdditiveMonoid + ?Sized>(monoid: &A, set: &Subset) -> Option<(Elem, Elem)> {
    set.iter()
        .flat_map(|x| set.complement().map(move |y| (x, y)))
        .find(|&(x, y)| set.contains(monoid.add(x, y)))
}

/// `x ∈ N` and `x + y ∈ N` imply `y ∈ N`.
pub fn is_subtractive<A: AdditiveMonoid + ?Sized>(monoid: &A, set: &Subset) -> bool {
    subtractive_witness(monoid, set).is_none()
}

fn require_proper(set: &Subset) -> Result<()> {
    if set.is_full() {
        Err(Error::NotProper)
    } else {
        Ok(())
    }
}

/// A pair `(a, b)` with `ab ∈ I` and `a, b ∉ I`.
pub fn prime_witness(s: &FiniteSemiring, ideal: &Ideal) -> Option<(Elem, Elem)> {
    let outside: Vec<Elem> = ideal.0.complement().collect();
    outside
        .iter()
        .flat_map(|&a| outside.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| ideal.contains(s.mul(a, b)))
}

pub fn is_prime(s: &FiniteSemiring, ideal: &Ideal) -> Result<bool> {
    require_proper(&ideal.0)?;
    Ok(prime_witness(s, ideal).is_none())
}

pub fn is_maximal(s: &FiniteSemiring, ideal: &Ideal) -> Result<bool> {
    require_proper(&ideal.0)?;
    Ok(ideal.0.complement().all(|x| ideal_closure(s, ideal.0.iter().chain([x])).0.is_full()))
}

/// `ab ∈ I` and `a ∉ I` force `bᵏ ∈ I` for some `1 ≤ k ≤ |S|`.
pub fn is_primary(s: &FiniteSemiring, ideal: &Ideal) -> Result<bool> {
    require_proper(&ideal.0)?;
    let in_radical = radical(s, ideal);
    Ok(ideal.0.complement().all(|a| s.elements().all(|b| !ideal.contains(s.mul(a, b)) || in_radical.contains(b))))
}

/// Nonzero products landing in `I` have a factor in `I`.
pub fn is_weakly_prime(s: &FiniteSemiring, ideal: &Ideal) -> Result<bool> {
    require_proper(&ideal.0)?;
    Ok(weakly_prime_witness(s, ideal).is_none())
}

/// A pair `(a, b)` with `0 ≠ ab ∈ I` and `a, b ∉ I`.
pub fn weakly_prime_witness(s: &FiniteSemiring, ideal: &Ideal) -> Option<(Elem, Elem)> {
    let outside: Vec<Elem> = ideal.0.complement().collect();
    outside.iter().flat_map(|&a| outside.iter().map(move |&b| (a, b))).find(|&(a, b)| {
        let ab = s.mul(a, b);
        ab != s.zero() && ideal.contains(ab)
    })
}

/// `√I = { s : sᵏ ∈ I for some k ≥ 1 }`.
pub fn radical(s: &FiniteSemiring, ideal: &Ideal) -> Ideal {
    Ideal(Subset::from_predicate(s.size(), |a| s.powers(a).any(|p| ideal.contains(p))))
}

/// `[N : M] = { s : sM ⊆ N }`.
pub fn residual(m: &FiniteSemimodule, n: &Subsemimodule) -> Ideal {
    let s = m.base();
    Ideal(Subset::from_predicate(s.size(), |a| m.elements().all(|x| n.contains(m.act(a, x)))))
}

/// `√N = √[N : M]`.
pub fn submodule_radical(m: &FiniteSemimodule, n: &Subsemimodule) -> Ideal {
    radical(m.base(), &residual(m, n))
}

/// `N ≠ M`, and `sx ∈ N` with `x ∉ N` forces `sᵏM ⊆ N` for some `k ≥ 1`.
pub fn is_primary_submodule(m: &FiniteSemimodule, n: &Subsemimodule) -> Result<bool> {
    require_proper(&n.0)?;
    let s = m.base();
    let rad = submodule_radical(m, n);
    Ok(s.elements().all(|a| n.0.complement().all(|x| !n.contains(m.act(a, x)) || rad.contains(a))))
}

/// `ann(M) = { s : sx = 0 for all x }`.
pub fn annihilator(m: &FiniteSemimodule) -> Ideal {
    residual(m, &Subsemimodule::zero(m))
}

/// The ideal generated by all products `ab` with `a ∈ A`, `b ∈ B`.
pub fn ideal_product(s: &FiniteSemiring, a: &Ideal, b: &Ideal) -> Ideal {
    let products: Vec<Elem> = a.0.iter().flat_map(|x| b.0.iter().map(move |y| s.mul(x, y))).collect();
    // Sums of products already absorb multiplication, so additive closure suffices.
    let set = close(s.size(), s.zero(), products, |x, y| s.add(x, y), |_, _| {});
    Ideal(set)
}

/// A pair `(a, x)` with `a ∈ I` and `ax ∉ N`; `None` iff `IM ⊆ N`.
pub fn module_containment_witness(m: &FiniteSemimodule, i: &Subset, n: &Subset) -> Option<(Elem, Elem)> {
    i.iter().flat_map(|a| m.elements().map(move |x| (a, x))).find(|&(a, x)| !n.contains(m.act(a, x)))
}

/// `I ⊕̃ N` as an ideal of the expectation semiring. It is one exactly when `IM ⊆ N`.
pub fn box_ideal(inst: &ExpectationInstance, i: &Ideal, n: &Subsemimodule) -> Result<Ideal> {
    if let Some((scalar, vector)) = module_containment_witness(inst.module(), &i.0, &n.0) {
        return Err(Error::NotAnIdeal { scalar, vector });
    }
    Ok(Ideal(inst.box_set(&i.0, &n.0)))
}

/// The coordinate projections of an ideal `J` of the expectation semiring.
pub fn ideal_projections(inst: &ExpectationInstance, j: &Ideal) -> (Ideal, Subsemimodule) {
    let (s, m) = (inst.semiring(), inst.module());
    let mut first = Subset::empty(s.size());
    let mut second = Subset::empty(m.size());
    for p in j.0.iter() {
        let (a, x) = inst.pair(p);
        first.insert(a);
        second.insert(x);
    }
    (Ideal(first), Subsemimodule(second))
}

/// Every prime ideal is subtractive.
pub fn is_weak_gaussian(s: &FiniteSemiring) -> Result<bool> {
    for ideal in enumerate_ideals(s)? {
        if ideal.is_proper() && is_prime(s, &ideal)? && !is_subtractive(s, &ideal.0) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn prime_ideals(s: &FiniteSemiring) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for ideal in enumerate_ideals(s)? {
        if ideal.is_proper() && is_prime(s, &ideal)? {
            out.push(ideal);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::catalog::{builtin_module, builtin_semiring};

    fn set(n: usize, xs: &[Elem]) -> Subset {
        Subset::from_indices(n, xs.iter().copied())
    }

    fn ideal_sets(s: &FiniteSemiring) -> Vec<Vec<Elem>> {
        enumerate_ideals(s).unwrap().iter().map(|i| i.members().to_vec()).collect()
    }

    #[test]
    fn closures() {
        let z4 = builtin_semiring("zmod_4").unwrap();
        assert_eq!(ideal_closure(&z4, [2]).members().to_vec(), vec![0, 2]);
        assert_eq!(ideal_closure(&z4, []).members().to_vec(), vec![0]);
        let b = builtin_semiring("boolean").unwrap();
        assert_eq!(ideal_closure(&b, [1]).members().to_vec(), vec![0, 1]);
    }

    #[test]
    fn enumerations() {
        assert_eq!(ideal_sets(&builtin_semiring("boolean").unwrap()), vec![vec![0], vec![0, 1]]);
        assert_eq!(ideal_sets(&builtin_semiring("zmod_4").unwrap()), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(
            ideal_sets(&builtin_semiring("trunc_nat_2").unwrap()),
            vec![vec![0], vec![0, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn subset_scan_agrees_with_joins() {
        for name in ["zmod_6", "diamond", "trunc_nat_3", "chain_3"] {
            let s = builtin_semiring(name).unwrap();
            assert_eq!(enumerate_ideals(&s).unwrap(), enumerate_ideals_by_joins(&s), "{name}");
        }
        let s = builtin_semiring("zmod_4").unwrap();
        let m = Arc::new(builtin_module(&s, "self").unwrap());
        let e = ExpectationInstance::build(&s, &m).unwrap();
        assert_eq!(enumerate_ideals(e.product()).unwrap(), enumerate_ideals_by_joins(e.product()));
    }

    #[test]
    fn carrier_bound() {
        let s = builtin_semiring("zmod_6").unwrap();
        assert!(matches!(enumerate_ideals_bounded(&s, 5), Err(Error::CarrierTooLarge { size: 6, bound: 5 })));
    }

    #[test]
    fn subtractivity() {
        let z4 = builtin_semiring("zmod_4").unwrap();
        assert!(is_subtractive(z4.as_ref(), &set(4, &[0, 2])));
        assert!(is_subtractive(z4.as_ref(), &Subset::full(4)));
        let n2 = builtin_semiring("trunc_nat_2").unwrap();
        assert_eq!(subtractive_witness(n2.as_ref(), &set(3, &[0, 2])), Some((2, 1)));
    }

    #[test]
    fn prime_maximal_primary() {
        let z4 = builtin_semiring("zmod_4").unwrap();
        let two = Ideal::new(&z4, set(4, &[0, 2])).unwrap();
        assert!(is_prime(&z4, &two).unwrap());
        assert!(is_maximal(&z4, &two).unwrap());
        assert!(is_primary(&z4, &two).unwrap());
        let zero = Ideal::zero(&z4);
        assert!(!is_prime(&z4, &zero).unwrap());
        assert!(is_primary(&z4, &zero).unwrap());
        let b = builtin_semiring("boolean").unwrap();
        assert!(is_prime(&b, &Ideal::zero(&b)).unwrap());
        assert!(matches!(is_prime(&b, &Ideal::whole(&b)), Err(Error::NotProper)));
        assert!(matches!(is_maximal(&b, &Ideal::whole(&b)), Err(Error::NotProper)));
        assert!(matches!(is_primary(&b, &Ideal::whole(&b)), Err(Error::NotProper)));
    }

    #[test]
    fn radicals() {
        let z4 = builtin_semiring("zmod_4").unwrap();
        assert_eq!(radical(&z4, &Ideal::zero(&z4)).members().to_vec(), vec![0, 2]);
        let b = builtin_semiring("boolean").unwrap();
        assert_eq!(radical(&b, &Ideal::zero(&b)).members().to_vec(), vec![0]);

        let m = Arc::new(builtin_module(&z4, "self").unwrap());
        let e = ExpectationInstance::build(&z4, &m).unwrap();
        let zero_box = box_ideal(&e, &Ideal::zero(&z4), &Subsemimodule::zero(&m)).unwrap();
        // Oracle: raise every one of the 16 elements to powers 1..=16 directly.
        let expected: Vec<Elem> = e
            .product()
            .elements()
            .filter(|&p| (1..=16).any(|k| e.product().pow(p, k) == e.product().zero()))
            .collect();
        let rad = radical(e.product(), &zero_box);
        assert_eq!(rad.members().to_vec(), expected);
        let pairs: Vec<(Elem, Elem)> = rad.members().iter().map(|p| e.pair(p)).collect();
        let mut want = Vec::new();
        for s in [0, 2] {
            for x in 0..4 {
                want.push((s, x));
            }
        }
        assert_eq!(pairs, want);
    }

    #[test]
    fn residuals_and_module_radicals() {
        let z4 = builtin_semiring("zmod_4").unwrap();
        let m = builtin_module(&z4, "self").unwrap();
        assert_eq!(residual(&m, &Subsemimodule::zero(&m)).members().to_vec(), vec![0]);
        let two = Subsemimodule::new(&m, set(4, &[0, 2])).unwrap();
        assert_eq!(residual(&m, &two).members().to_vec(), vec![0, 2]);
        assert!(residual(&m, &Subsemimodule::whole(&m)).members().is_full());

        assert_eq!(submodule_radical(&m, &Subsemimodule::zero(&m)).members().to_vec(), vec![0, 2]);
        assert!(submodule_radical(&m, &Subsemimodule::whole(&m)).members().is_full());
        let b = builtin_semiring("boolean").unwrap();
        let bm = builtin_module(&b, "self").unwrap();
        assert_eq!(submodule_radical(&bm, &Subsemimodule::zero(&bm)).members().to_vec(), vec![0]);
    }

    #[test]
    fn primary_submodules() {
        let z4 = builtin_semiring("zmod_4").unwrap();
        let m = builtin_module(&z4, "self").unwrap();
        assert!(is_primary_submodule(&m, &Subsemimodule::zero(&m)).unwrap());
        assert!(is_primary_submodule(&m, &Subsemimodule::new(&m, set(4, &[0, 2])).unwrap()).unwrap());
        assert!(matches!(is_primary_submodule(&m, &Subsemimodule::whole(&m)), Err(Error::NotProper)));
    }

    #[test]
    fn weakly_prime() {
        for name in ["zmod_4", "zmod_6", "boolean", "trunc_nat_2"] {
            let s = builtin_semiring(name).unwrap();
            assert!(is_weakly_prime(&s, &Ideal::zero(&s)).unwrap(), "{name}");
        }
        let z4 = builtin_semiring("zmod_4").unwrap();
        assert!(is_weakly_prime(&z4, &Ideal::new(&z4, set(4, &[0, 2])).unwrap()).unwrap());

        let m = Arc::new(builtin_module(&z4, "self").unwrap());
        let e = ExpectationInstance::build(&z4, &m).unwrap();
        let j = box_ideal(&e, &Ideal::new(&z4, set(4, &[0, 2])).unwrap(), &Subsemimodule::whole(&m)).unwrap();
        // Oracle: all 16×16 products.
        let p = e.product();
        let holds = p.elements().all(|a| {
            p.elements().all(|b| {
                let ab = p.mul(a, b);
                ab == p.zero() || !j.contains(ab) || j.contains(a) || j.contains(b)
            })
        });
        assert!(holds);
        assert!(is_weakly_prime(p, &j).unwrap());
    }

    #[test]
    fn annihilators() {
        let z4 = builtin_semiring("zmod_4").unwrap();
        assert_eq!(annihilator(&builtin_module(&z4, "self").unwrap()).members().to_vec(), vec![0]);
        assert_eq!(annihilator(&builtin_module(&z4, "zmod_2").unwrap()).members().to_vec(), vec![0, 2]);
        assert!(annihilator(&builtin_module(&z4, "trivial").unwrap()).members().is_full());
    }

    #[test]
    fn boxes_and_projections() {
        let z4 = builtin_semiring("zmod_4").unwrap();
        let m = Arc::new(builtin_module(&z4, "self").unwrap());
        let e = ExpectationInstance::build(&z4, &m).unwrap();
        let two = Ideal::new(&z4, set(4, &[0, 2])).unwrap();
        assert_eq!(box_ideal(&e, &two, &Subsemimodule::whole(&m)).unwrap().members().len(), 8);
        assert!(matches!(
            box_ideal(&e, &two, &Subsemimodule::zero(&m)),
            Err(Error::NotAnIdeal { scalar: 2, vector: 1 })
        ));
        let zz = box_ideal(&e, &Ideal::zero(&z4), &Subsemimodule::zero(&m)).unwrap();
        assert_eq!(zz.members().to_vec(), vec![e.product().zero()]);

        let zero_m = Ideal::new(e.product(), e.zero_m_ideal()).unwrap();
        let (i, n) = ideal_projections(&e, &zero_m);
        assert_eq!(i.members().to_vec(), vec![0]);
        assert!(n.members().is_full());

        let j = ideal_closure(e.product(), [e.index(2, 0)]);
        let (i, n) = ideal_projections(&e, &j);
        assert_eq!(i.members().to_vec(), vec![0, 2]);
        assert_eq!(n.members().to_vec(), vec![0, 2]);
        assert!(j.members().is_subset(&e.box_set(i.members(), n.members())));

        let (i, n) = ideal_projections(&e, &Ideal::whole(e.product()));
        assert!(i.members().is_full() && n.members().is_full());
    }

    #[test]
    fn weak_gaussian() {
        assert!(is_weak_gaussian(&builtin_semiring("zmod_4").unwrap()).unwrap());
        assert!(is_weak_gaussian(&builtin_semiring("boolean").unwrap()).unwrap());
        let n2 = builtin_semiring("trunc_nat_2").unwrap();
        assert!(is_prime(&n2, &Ideal::new(&n2, set(3, &[0, 2])).unwrap()).unwrap());
        assert!(!is_weak_gaussian(&n2).unwrap());
    }
}
