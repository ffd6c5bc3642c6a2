//! Named builtin semirings and semimodules, and exhaustive enumeration of
//! all small ones.
//!
//! Enumerated structures use the fixed labeling `zero = 0`, `one = 1` (for
//! semimodules, `zero = 0`); no isomorphism reduction is applied unless
//! [`dedup_up_to_isomorphism`] is called explicitly.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tables::{
    validate_semimodule, validate_semiring, validate_semiring_with, AdditiveMonoid, Commutativity, Elem,
    FiniteSemimodule, FiniteSemiring, RawSemimodule, RawSemiring,
};

pub const MIN_SEMIRING_ORDER: usize = 2;
pub const MAX_ENUMERATION_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Builtin,
    Enumerated,
}

#[derive(Debug, Clone)]
pub enum Structure {
    Semiring(Arc<FiniteSemiring>),
    Semimodule(Arc<FiniteSemimodule>),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub structure: Structure,
    pub provenance: Provenance,
}

impl CatalogEntry {
    pub fn semiring(&self) -> Option<&Arc<FiniteSemiring>> {
        match &self.structure {
            Structure::Semiring(s) => Some(s),
            Structure::Semimodule(_) => None,
        }
    }

    pub fn semimodule(&self) -> Option<&Arc<FiniteSemimodule>> {
        match &self.structure {
            Structure::Semimodule(m) => Some(m),
            Structure::Semiring(_) => None,
        }
    }
}

/// Builtin semirings checked by the acceptance grid.
pub const BUILTIN_SEMIRINGS: &[&str] = &[
    "boolean",
    "chain_2",
    "chain_3",
    "trunc_nat_2",
    "trunc_nat_3",
    "zmod_2",
    "zmod_3",
    "zmod_4",
    "zmod_5",
    "zmod_6",
    "field_2",
    "field_3",
    "diamond",
];

fn table(n: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Vec<Elem>> {
    (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect()
}

fn parse_suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

fn is_prime_number(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn raw_builtin(name: &str) -> Option<RawSemiring> {
    let unknown = || None;
    let raw = |size, zero, one, add, mul| RawSemiring { name: name.to_string(), size, zero, one, add, mul };
    if name == "boolean" {
        return Some(raw(2, 0, 1, table(2, |a, b| a | b), table(2, |a, b| a & b)));
    }
    if name == "diamond" {
        // the four-element lattice 0 < a, b < 1 encoded as bit pairs:
        // 0 ↦ 00, 1 ↦ 11, a ↦ 01, b ↦ 10 with join and meet
        let bits = [0b00, 0b11, 0b01, 0b10];
        let index = |v: usize| bits.iter().position(|&b| b == v).unwrap();
        return Some(raw(4, 0, 1, table(4, |a, b| index(bits[a] | bits[b])), table(4, |a, b| index(bits[a] & bits[b]))));
    }
    if let Some(k) = parse_suffix(name, "chain_") {
        if k == 0 {
            return unknown();
        }
        return Some(raw(k + 1, 0, k, table(k + 1, usize::max), table(k + 1, usize::min)));
    }
    if let Some(k) = parse_suffix(name, "trunc_nat_") {
        if k == 0 {
            return unknown();
        }
        return Some(raw(k + 1, 0, 1, table(k + 1, |a, b| (a + b).min(k)), table(k + 1, |a, b| (a * b).min(k))));
    }
    let modulus = parse_suffix(name, "zmod_").or_else(|| parse_suffix(name, "field_").filter(|&p| is_prime_number(p)))?;
    if modulus < 2 {
        return unknown();
    }
    Some(raw(modulus, 0, 1, table(modulus, |a, b| (a + b) % modulus), table(modulus, |a, b| (a * b) % modulus)))
}

/// A builtin semiring: `boolean`, `chain_k`, `trunc_nat_k`, `zmod_n`,
/// `field_p` or `diamond`.
pub fn builtin_semiring(name: &str) -> Result<Arc<FiniteSemiring>> {
    let raw = raw_builtin(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    Ok(Arc::new(validate_semiring(raw)?))
}

/// Module names understood by [`builtin_module`] for the given base:
/// `self`, `trivial`, `self^2`, `zmod_d` for proper divisors `d` of a
/// `zmod_n`/`field_p` modulus, and join-semilattices (`chain_k`, `diamond`)
/// over `boolean`.
pub fn builtin_module_names(base: &FiniteSemiring) -> Vec<String> {
    let mut names = vec!["self".to_string(), "trivial".to_string(), "self^2".to_string()];
    let modulus = parse_suffix(base.name(), "zmod_").or_else(|| parse_suffix(base.name(), "field_"));
    if let Some(n) = modulus {
        names.extend((2..n).filter(|d| n % d == 0).map(|d| format!("zmod_{d}")));
    }
    if base.name() == "boolean" {
        names.extend(["chain_2".to_string(), "diamond".to_string()]);
    }
    names
}

/// A builtin semimodule over `base`; see [`builtin_module_names`].
pub fn builtin_module(base: &Arc<FiniteSemiring>, name: &str) -> Result<FiniteSemimodule> {
    let qualified = format!("{}/{}", base.name(), name);
    let unknown = || Error::UnknownName(qualified.clone());
    match name {
        "self" => return Ok(FiniteSemimodule::regular(base)),
        "trivial" => return Ok(FiniteSemimodule::trivial(base)),
        "self^2" => {
            let n = base.size();
            let pairs: Vec<(Elem, Elem)> = (0..n).cartesian_product(0..n).collect();
            let idx = |(a, b): (Elem, Elem)| a * n + b;
            let raw = RawSemimodule {
                name: qualified.clone(),
                base: base.name().to_string(),
                size: n * n,
                zero: idx((base.zero(), base.zero())),
                add: pairs.iter().map(|&(a, b)| pairs.iter().map(|&(c, d)| idx((base.add(a, c), base.add(b, d)))).collect()).collect(),
                action: base.elements().map(|s| pairs.iter().map(|&(a, b)| idx((base.mul(s, a), base.mul(s, b)))).collect()).collect(),
            };
            return validate_semimodule(base, raw);
        }
        _ => {}
    }
    let target = builtin_semiring(name).map_err(|_| unknown())?;
    let modulus = parse_suffix(base.name(), "zmod_").or_else(|| parse_suffix(base.name(), "field_"));
    let action: Vec<Vec<Elem>> = match (modulus, parse_suffix(name, "zmod_")) {
        // reduction Z/n → Z/d
        (Some(n), Some(d)) if n % d == 0 => (0..n).map(|s| (0..d).map(|x| (s * x) % d).collect()).collect(),
        // boolean acts on any join-semilattice with bottom
        _ if base.name() == "boolean" && target.elements().all(|x| target.add(x, x) == x) => {
            vec![vec![target.zero(); target.size()], target.elements().collect()]
        }
        _ => return Err(unknown()),
    };
    let raw = RawSemimodule {
        name: qualified.clone(),
        base: base.name().to_string(),
        size: target.size(),
        zero: target.zero(),
        add: target.to_raw().add,
        action,
    };
    validate_semimodule(base, raw)
}

/// Resolves `name` (a semiring) or `base/module` (a semimodule).
pub fn builtin(name: &str) -> Result<CatalogEntry> {
    let structure = match name.split_once('/') {
        Some((base, module)) => {
            let base = builtin_semiring(base)?;
            Structure::Semimodule(Arc::new(builtin_module(&base, module)?))
        }
        None => Structure::Semiring(builtin_semiring(name)?),
    };
    Ok(CatalogEntry { name: name.to_string(), structure, provenance: Provenance::Builtin })
}

/// Cells outside the rows and columns of `fixed`; upper triangle only when
/// the table is symmetric.
fn free_cells(n: usize, fixed: &[Elem], symmetric: bool) -> Vec<(Elem, Elem)> {
    let rest: Vec<Elem> = (0..n).filter(|x| !fixed.contains(x)).collect();
    rest.iter()
        .flat_map(|&a| rest.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| !symmetric || a <= b)
        .collect()
}

type Partial = Vec<Vec<Option<Elem>>>;

/// Associativity of a partially filled table on every triple where all four
/// lookups are defined.
fn partially_associative(t: &Partial) -> bool {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = t[a][b] else { continue };
            for c in 0..n {
                let (Some(left), Some(bc)) = (t[ab][c], t[b][c]) else { continue };
                if let Some(right) = t[a][bc] {
                    if left != right {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn set_cell(t: &mut Partial, (a, b): (Elem, Elem), v: Option<Elem>, symmetric: bool) {
    t[a][b] = v;
    if symmetric {
        t[b][a] = v;
    }
}

/// Depth-first assignment of `cells`, pruning with `consistent`.
fn search(
    t: &mut Partial,
    cells: &[(Elem, Elem)],
    values: usize,
    symmetric: bool,
    consistent: &dyn Fn(&Partial) -> bool,
    emit: &mut dyn FnMut(&Partial),
) {
    let Some((&cell, rest)) = cells.split_first() else {
        emit(t);
        return;
    };
    for v in 0..values {
        set_cell(t, cell, Some(v), symmetric);
        if consistent(t) {
            search(t, rest, values, symmetric, consistent, emit);
        }
    }
    set_cell(t, cell, None, symmetric);
}

fn complete(t: &Partial) -> Vec<Vec<Elem>> {
    t.iter().map(|row| row.iter().map(|v| v.expect("table fully assigned")).collect()).collect()
}

/// All commutative monoid tables on `0..n` with identity `0`.
fn commutative_monoids(n: usize) -> Vec<Vec<Vec<Elem>>> {
    let mut t: Partial = vec![vec![None; n]; n];
    for x in 0..n {
        t[0][x] = Some(x);
        t[x][0] = Some(x);
    }
    let cells = free_cells(n, &[0], true);
    let mut out = Vec::new();
    search(&mut t, &cells, n, true, &partially_associative, &mut |t| out.push(complete(t)));
    out
}

/// Distributivity and annihilation checks over the assigned part of `mul`.
fn partially_distributive(add: &[Vec<Elem>], mul: &Partial) -> bool {
    let n = add.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bc = add[b][c];
                if let (Some(l), Some(x), Some(y)) = (mul[a][bc], mul[a][b], mul[a][c]) {
                    if l != add[x][y] {
                        return false;
                    }
                }
                if let (Some(l), Some(x), Some(y)) = (mul[bc][a], mul[b][a], mul[c][a]) {
                    if l != add[x][y] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All semirings of order `n` (`2 ≤ n ≤ 4`) with `zero = 0` and `one = 1`,
/// in a fixed deterministic order.
pub fn enumerate_semirings(order: usize, require_commutative: bool) -> Result<Vec<CatalogEntry>> {
    if !(MIN_SEMIRING_ORDER..=MAX_ENUMERATION_ORDER).contains(&order) {
        return Err(Error::OrderTooLarge { order, min: MIN_SEMIRING_ORDER, max: MAX_ENUMERATION_ORDER });
    }
    let n = order;
    let additions = commutative_monoids(n);
    let commutativity = if require_commutative { Commutativity::Required } else { Commutativity::NotRequired };
    // Each addition table is an independent partition of the search space.
    let per_addition: Vec<Vec<RawSemiring>> = additions
        .par_iter()
        .map(|add| {
            let mut mul: Partial = vec![vec![None; n]; n];
            for x in 0..n {
                mul[0][x] = Some(0);
                mul[x][0] = Some(0);
                mul[1][x] = Some(x);
                mul[x][1] = Some(x);
            }
            let cells = free_cells(n, &[0, 1], require_commutative);
            let consistent = |t: &Partial| partially_associative(t) && partially_distributive(add, t);
            let mut found = Vec::new();
            search(&mut mul, &cells, n, require_commutative, &consistent, &mut |t| {
                found.push(RawSemiring { name: String::new(), size: n, zero: 0, one: 1, add: add.clone(), mul: complete(t) });
            });
            found
        })
        .collect();

    let mut out = Vec::new();
    for raw in per_addition.into_iter().flatten() {
        let name = format!("sr{n}_{}", out.len());
        // The validator is the oracle; the pruned search only proposes.
        if let Ok(s) = validate_semiring_with(RawSemiring { name: name.clone(), ..raw }, commutativity) {
            out.push(CatalogEntry { name, structure: Structure::Semiring(Arc::new(s)), provenance: Provenance::Enumerated });
        }
    }
    Ok(out)
}

/// All semimodules of order `m` (`1 ≤ m ≤ 4`) over `base` with `zero = 0`.
pub fn enumerate_semimodules(base: &Arc<FiniteSemiring>, order: usize) -> Result<Vec<CatalogEntry>> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&order) {
        return Err(Error::OrderTooLarge { order, min: 1, max: MAX_ENUMERATION_ORDER });
    }
    let m = order;
    let n = base.size();
    let scalars: Vec<Elem> = base.elements().filter(|&s| s != base.zero() && s != base.one()).collect();
    let cells: Vec<(Elem, Elem)> = scalars.iter().flat_map(|&s| (1..m).map(move |x| (s, x))).collect();

    let mut out = Vec::new();
    for add in commutative_monoids(m) {
        let mut action: Vec<Vec<Option<Elem>>> = vec![vec![None; m]; n];
        for x in 0..m {
            action[base.zero()][x] = Some(0);
            action[base.one()][x] = Some(x);
        }
        for row in action.iter_mut() {
            row[0] = Some(0);
        }
        let consistent = |t: &Vec<Vec<Option<Elem>>>| action_consistent(base, &add, t);
        let mut found = Vec::new();
        search_action(&mut action, &cells, m, &consistent, &mut |t| found.push(complete(t)));
        for act in found {
            let name = format!("{}/mod{m}_{}", base.name(), out.len());
            let raw = RawSemimodule { name: name.clone(), base: base.name().to_string(), size: m, zero: 0, add: add.clone(), action: act };
            if let Ok(module) = validate_semimodule(base, raw) {
                out.push(CatalogEntry {
                    name,
                    structure: Structure::Semimodule(Arc::new(module)),
                    provenance: Provenance::Enumerated,
                });
            }
        }
    }
    Ok(out)
}

fn search_action(
    t: &mut Vec<Vec<Option<Elem>>>,
    cells: &[(Elem, Elem)],
    values: usize,
    consistent: &dyn Fn(&Vec<Vec<Option<Elem>>>) -> bool,
    emit: &mut dyn FnMut(&Vec<Vec<Option<Elem>>>),
) {
    let Some((&(s, x), rest)) = cells.split_first() else {
        emit(t);
        return;
    };
    for v in 0..values {
        t[s][x] = Some(v);
        if consistent(t) {
            search_action(t, rest, values, consistent, emit);
        }
    }
    t[s][x] = None;
}

fn action_consistent(base: &FiniteSemiring, add: &[Vec<Elem>], act: &[Vec<Option<Elem>>]) -> bool {
    let m = add.len();
    for s in base.elements() {
        for x in 0..m {
            for y in 0..m {
                if let (Some(l), Some(a), Some(b)) = (act[s][add[x][y]], act[s][x], act[s][y]) {
                    if l != add[a][b] {
                        return false;
                    }
                }
            }
        }
        for t in base.elements() {
            for x in 0..m {
                if let (Some(l), Some(a), Some(b)) = (act[base.add(s, t)][x], act[s][x], act[t][x]) {
                    if l != add[a][b] {
                        return false;
                    }
                }
                if let (Some(l), Some(tx)) = (act[base.mul(s, t)][x], act[t][x]) {
                    if let Some(r) = act[s][tx] {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// A bijection `φ` with `φ(a + b) = φ(a) + φ(b)`, `φ(ab) = φ(a)φ(b)`,
/// `φ(0) = 0` and `φ(1) = 1`, if one exists.
pub fn find_isomorphism(a: &FiniteSemiring, b: &FiniteSemiring) -> Option<Vec<Elem>> {
    if a.size() != b.size() {
        return None;
    }
    (0..a.size()).permutations(a.size()).find(|phi| {
        phi[a.zero()] == b.zero()
            && phi[a.one()] == b.one()
            && a.elements().all(|x| {
                a.elements().all(|y| phi[a.add(x, y)] == b.add(phi[x], phi[y]) && phi[a.mul(x, y)] == b.mul(phi[x], phi[y]))
            })
    })
}

pub fn are_isomorphic(a: &FiniteSemiring, b: &FiniteSemiring) -> bool {
    find_isomorphism(a, b).is_some()
}

/// The lexicographically least relabelled `(add, mul)` table pair.
pub fn canonical_form(s: &FiniteSemiring) -> Vec<Elem> {
    let n = s.size();
    (0..n)
        .permutations(n)
        .map(|phi| {
            let mut inverse = vec![0; n];
            for (x, &y) in phi.iter().enumerate() {
                inverse[y] = x;
            }
            let mut key = vec![phi[s.zero()], phi[s.one()]];
            for y1 in 0..n {
                for y2 in 0..n {
                    key.push(phi[s.add(inverse[y1], inverse[y2])]);
                }
            }
            for y1 in 0..n {
                for y2 in 0..n {
                    key.push(phi[s.mul(inverse[y1], inverse[y2])]);
                }
            }
            key
        })
        .min()
        .expect("nonempty carrier")
}

/// Keeps the first representative of every isomorphism class.
pub fn dedup_up_to_isomorphism(entries: Vec<CatalogEntry>) -> Vec<CatalogEntry> {
    let mut seen = BTreeSet::new();
    entries
        .into_iter()
        .filter(|e| match e.semiring() {
            Some(s) => seen.insert(canonical_form(s)),
            None => true,
        })
        .collect()
}
