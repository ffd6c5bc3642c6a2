//! Exhaustive verification of the structural facts about `S ⊕̃ M` over a grid
//! of finite instances.
//!
//! Every check recomputes both sides of its statement by brute force on the
//! product and on the factors; neither side is derived from the other.

use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{builtin_module, builtin_module_names, builtin_semiring, enumerate_semimodules, enumerate_semirings, BUILTIN_SEMIRINGS};
use crate::classify::{
    almost_clean_criterion, additively_regular_elements, idempotents, is_almost_clean, is_clean, is_domainlike,
    is_domainlike_mod, is_local, is_presimplifiable, is_presimplifiable_mod, is_semifield, is_strongly_associate,
    is_strongly_associate_mod, is_weakly_clean, is_weakly_clean_literal, module_zero_divisors, nilpotents, units,
    zero_divisors,
};
use crate::error::Result;
use crate::expectation::ExpectationInstance;
use crate::ideals::{
    annihilator, enumerate_ideals, enumerate_subsemimodules, is_ideal, is_maximal, is_prime, is_primary,
    is_primary_submodule, is_subsemimodule, is_subtractive, is_weak_gaussian, is_weakly_prime, module_containment_witness,
    radical, residual, submodule_radical, weakly_prime_witness, Ideal, Subsemimodule,
};
use crate::numeric::{brute_force_total, forward_total, random_dag, wadd, wmul, NumericWeight, RandomDagConfig};
use crate::tables::{
    is_commutative_mul, semiring_violations, v_set, AdditiveMonoid, Commutativity, Elem, FiniteSemimodule,
    FiniteSemiring, Subset,
};

/// Version tag carried by every serialized report.
pub const REPORT_SCHEMA: &str = "idealize.verification.v1";

/// Largest product carrier admitted from the builtin pairs.
pub const BUILTIN_PRODUCT_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The statement's hypothesis does not hold on this instance.
    NotApplicable,
    /// A probe whose outcome is recorded but not asserted.
    Informational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub theorem: String,
    pub instance: String,
    pub status: Status,
    /// Factor coordinates and sets exhibiting a failure (or a probe hit).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cells: usize,
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub informational: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub seed: u64,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl VerificationReport {
    fn new(seed: u64, cells: usize, records: Vec<Record>) -> Self {
        let mut summary = Summary { cells, records: records.len(), ..Summary::default() };
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::NotApplicable => summary.not_applicable += 1,
                Status::Informational => summary.informational += 1,
            }
        }
        VerificationReport { schema: REPORT_SCHEMA, seed, summary, records }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }
}

/// One `(S, M)` pair of the grid.
#[derive(Debug, Clone)]
pub struct Cell {
    pub semiring: Arc<FiniteSemiring>,
    pub module: Arc<FiniteSemimodule>,
}

impl Cell {
    pub fn new(semiring: Arc<FiniteSemiring>, module: Arc<FiniteSemimodule>) -> Self {
        Cell { semiring, module }
    }

    pub fn name(&self) -> String {
        self.module.name().to_string()
    }
}

/// Every enumerated commutative semiring of order `2..=max_order` with every
/// enumerated semimodule over it of order `1..=max_order`, followed by the
/// builtin pairs whose product has at most [`BUILTIN_PRODUCT_LIMIT`] elements.
pub fn catalog_grid(max_order: usize) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for n in 2..=max_order {
        for entry in enumerate_semirings(n, true)? {
            let s = Arc::clone(entry.semiring().expect("semiring entry"));
            for m in 1..=max_order {
                for module in enumerate_semimodules(&s, m)? {
                    cells.push(Cell::new(Arc::clone(&s), Arc::clone(module.semimodule().expect("module entry"))));
                }
            }
        }
    }
    cells.extend(builtin_grid()?);
    Ok(cells)
}

/// Builtin pairs with product size at most [`BUILTIN_PRODUCT_LIMIT`].
pub fn builtin_grid() -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for name in BUILTIN_SEMIRINGS {
        let s = builtin_semiring(name)?;
        for module_name in builtin_module_names(&s) {
            let module = builtin_module(&s, &module_name)?;
            if s.size() * module.size() <= BUILTIN_PRODUCT_LIMIT {
                cells.push(Cell::new(Arc::clone(&s), Arc::new(module)));
            }
        }
    }
    Ok(cells)
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub seed: u64,
    /// Attach per-record wall-clock times (makes reports nondeterministic).
    pub timings: bool,
    /// Append the randomized numeric checks.
    pub numeric: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { jobs: None, seed: 0, timings: false, numeric: true }
    }
}

/// Runs every check on every cell. Records appear in cell order, then in
/// the order of [`THEOREMS`], then the numeric records.
pub fn verify_grid(cells: &[Cell], options: &VerifyOptions) -> Result<VerificationReport> {
    let run = || -> Result<Vec<Vec<Record>>> { cells.par_iter().map(|cell| verify_cell(cell, options.timings)).collect() };
    let per_cell = match options.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool")
            .install(run)?,
        None => run()?,
    };
    let mut records: Vec<Record> = per_cell.into_iter().flatten().collect();
    if options.numeric {
        records.extend(numeric_records(options.seed, options.timings));
    }
    Ok(VerificationReport::new(options.seed, cells.len(), records))
}

/// All checks on one `(S, M)` pair.
pub fn verify_cell(cell: &Cell, timings: bool) -> Result<Vec<Record>> {
    let ctx = Context::new(cell)?;
    let instance = cell.name();
    Ok(THEOREMS
        .iter()
        .map(|theorem| {
            let start = Instant::now();
            let outcome = (theorem.check)(&ctx);
            Record {
                theorem: theorem.id.to_string(),
                instance: instance.clone(),
                status: outcome.status,
                witness: outcome.witness,
                note: outcome.note,
                runtime_ms: timings.then(|| start.elapsed().as_secs_f64() * 1e3),
            }
        })
        .collect())
}

/// A named check with a one-line statement.
pub struct Theorem {
    pub id: &'static str,
    pub statement: &'static str,
    check: fn(&Context) -> Outcome,
}

impl std::fmt::Debug for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Theorem").field("id", &self.id).finish()
    }
}

struct Outcome {
    status: Status,
    witness: Vec<String>,
    note: Option<String>,
}

fn pass() -> Outcome {
    Outcome { status: Status::Pass, witness: Vec::new(), note: None }
}

fn fail(witness: Vec<String>) -> Outcome {
    Outcome { status: Status::Fail, witness, note: None }
}

fn not_applicable(reason: &str) -> Outcome {
    Outcome { status: Status::NotApplicable, witness: Vec::new(), note: Some(reason.to_string()) }
}

fn informational(note: String, witness: Vec<String>) -> Outcome {
    Outcome { status: Status::Informational, witness, note: Some(note) }
}

fn verdict(ok: bool, witness: impl FnOnce() -> Vec<String>) -> Outcome {
    if ok {
        pass()
    } else {
        fail(witness())
    }
}

/// First failing item, turned into an outcome.
fn first_failure<T>(items: impl IntoIterator<Item = T>, mut bad: impl FnMut(&T) -> Option<Vec<String>>) -> Outcome {
    for item in items {
        if let Some(w) = bad(&item) {
            return fail(w);
        }
    }
    pass()
}

fn braces(set: &Subset) -> String {
    let items: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Precomputed lattices shared by the checks of one cell.
pub struct Context {
    inst: ExpectationInstance,
    ideals_s: Vec<Ideal>,
    subs_m: Vec<Subsemimodule>,
    ideals_e: Vec<Ideal>,
    primes_s: Vec<Ideal>,
    primes_e: Vec<Ideal>,
}

impl Context {
    pub fn new(cell: &Cell) -> Result<Self> {
        let inst = ExpectationInstance::build(&cell.semiring, &cell.module)?;
        let ideals_s = enumerate_ideals(&cell.semiring)?;
        let subs_m = enumerate_subsemimodules(&cell.module)?;
        let ideals_e = enumerate_ideals(inst.product())?;
        let primes = |s: &FiniteSemiring, ideals: &[Ideal]| -> Vec<Ideal> {
            ideals.iter().filter(|i| i.is_proper() && is_prime(s, i).unwrap_or(false)).cloned().collect()
        };
        let primes_s = primes(&cell.semiring, &ideals_s);
        let primes_e = primes(inst.product(), &ideals_e);
        Ok(Context { inst, ideals_s, subs_m, ideals_e, primes_s, primes_e })
    }

    pub fn instance(&self) -> &ExpectationInstance {
        &self.inst
    }

    fn s(&self) -> &FiniteSemiring {
        self.inst.semiring()
    }

    fn m(&self) -> &FiniteSemimodule {
        self.inst.module()
    }

    fn e(&self) -> &FiniteSemiring {
        self.inst.product()
    }

    fn label(&self, p: Elem) -> String {
        self.inst.label(p)
    }

    fn whole_m(&self) -> Subset {
        Subset::full(self.m().size())
    }

    /// `I ⊕̃ N` as a set of product indices.
    fn boxed(&self, i: &Subset, n: &Subset) -> Subset {
        self.inst.box_set(i, n)
    }

    fn contained(&self, i: &Subset, n: &Subset) -> bool {
        module_containment_witness(self.m(), i, n).is_none()
    }

    /// `{ s : (s, m) ∈ J for some m }`.
    fn first_projection(&self, j: &Subset) -> Subset {
        Subset::from_indices(self.s().size(), j.iter().map(|p| self.inst.pair(p).0))
    }

    fn box_pairs(&self) -> impl Iterator<Item = (&Ideal, &Subsemimodule)> {
        self.ideals_s.iter().flat_map(move |i| self.subs_m.iter().map(move |n| (i, n)))
    }

    fn describe_pair(&self, i: &Ideal, n: &Subsemimodule) -> Vec<String> {
        vec![format!("I={}", braces(i.members())), format!("N={}", braces(n.members()))]
    }

    fn v_is_whole(&self) -> bool {
        v_set(self.m()).is_full()
    }
}

macro_rules! theorem {
    ($id:expr, $statement:expr, $check:expr) => {
        Theorem { id: $id, statement: $statement, check: $check }
    };
}

/// Every check run on each cell, in report order.
pub static THEOREMS: &[Theorem] = &[
    theorem!("product-is-semiring", "S ⊕̃ M satisfies every semiring axiom, commutatively when S is", check_product_semiring),
    theorem!("embedding-homomorphism", "s ↦ (s,0) embeds S as a subsemiring", |c| verdict(c.inst.embedding_is_homomorphism(), Vec::new)),
    theorem!("zero-m-nilpotency", "({0} × M)² = 0, with index 2 unless M = 0", check_nilpotency),
    theorem!("matrix-representation", "(s,m) ↦ [[s,m],[0,s]] is an isomorphism onto triangular records", |c| verdict(c.inst.matrix_iso_check(), Vec::new)),
    theorem!("power-formula", "(s,m)^k = (s^k, k·s^(k-1)m)", check_power_formula),
    theorem!("grading", "T0 = S ⊕̃ 0, T1 = 0 ⊕̃ M grade the product", check_grading),
    theorem!("box-ideal-criterion", "I ⊕̃ N is an ideal iff IM ⊆ N, and graded ideals are exactly these", check_box_criterion),
    theorem!("box-radical", "IM ⊆ N implies √(I ⊕̃ N) = √I ⊕̃ M", check_box_radical),
    theorem!("ideal-projections", "projections of an ideal J give I, N with IM ⊆ N and J ⊆ I ⊕̃ N", check_projections),
    theorem!("subtractive-over-zero-m", "a subtractive ideal containing 0 ⊕̃ M is I ⊕̃ M", check_subtractive_over_zero_m),
    theorem!("primes-contain-zero-m", "every prime ideal contains 0 ⊕̃ M", check_primes_contain_zero_m),
    theorem!("subtractive-prime-shape", "a subtractive prime is p ⊕̃ M with p a subtractive prime of S", check_subtractive_prime_shape),
    theorem!("graded-subtractive-transfer", "all I ⊕̃ N subtractive iff S and M are subtractive", check_graded_subtractive),
    theorem!("subtractive-product-factors", "a subtractive product has subtractive factors", check_subtractive_product),
    theorem!("weak-gaussian-shapes", "in a weak Gaussian product, primes and maximals are p ⊕̃ M", check_weak_gaussian),
    theorem!("weakly-prime-lift", "I weakly prime and ab = 0 (a,b ≠ 0) ⇒ a,b ∈ ann(M) give I ⊕̃ M weakly prime", check_weakly_prime_lift),
    theorem!("weakly-prime-converse-probe", "search for I ⊕̃ M weakly prime with the converse conditions failing", probe_weakly_prime_converse),
    theorem!("residual-ideal", "[N:M] is an ideal, and √N is prime when N is primary", check_residual),
    theorem!("primary-lift", "I primary iff I ⊕̃ M primary", check_primary_lift),
    theorem!("primary-box-necessary", "I ⊕̃ N primary (N ≠ M) ⇒ N primary, IM ⊆ N, √I = √N", check_primary_necessary),
    theorem!("primary-box-criterion", "M subtractive: I ⊕̃ N primary (N ≠ M) iff N primary, IM ⊆ N, √I = √N", check_primary_criterion),
    theorem!("zero-divisors-union-of-primes", "Z(M) and Z(S) are unions of prime ideals of S", check_zero_divisor_primes),
    theorem!("product-units", "U(S ⊕̃ M) = U(S) × V(M)", check_units),
    theorem!("product-idempotents", "(s,m)² = (s,m) iff s² = s and sm + sm = m", check_idempotents),
    theorem!("product-nilpotents", "Nil(S ⊕̃ M) = Nil(S) × M, an ideal", check_nilpotents),
    theorem!("product-zero-divisors", "Z(S ⊕̃ M) = (Z(S) ∪ Z(M)) × M", check_zero_divisors),
    theorem!("semifield-local", "S a semifield ⇒ S ⊕̃ M local", check_semifield_local),
    theorem!("presimplifiable-criterion", "S ⊕̃ M présimplifiable iff V(M) = M and S, M présimplifiable", check_presimplifiable),
    theorem!("presimplifiable-strongly-associate", "présimplifiable ⇒ strongly associate (S, M and S ⊕̃ M)", check_presimplifiable_sa),
    theorem!("presimplifiable-converse-census", "census of strongly associate but not présimplifiable structures", census_presimplifiable_converse),
    theorem!("strongly-associate-factors", "S ⊕̃ M strongly associate ⇒ S and M strongly associate", check_sa_factors),
    theorem!("strongly-associate-criterion", "S présimplifiable, V(M) = M: S ⊕̃ M strongly associate iff M is", check_sa_criterion),
    theorem!("domainlike-criterion", "S ⊕̃ M domainlike iff S and M are", check_domainlike),
    theorem!("clean-criterion", "V(M) = M: S ⊕̃ M clean iff S clean", check_clean),
    theorem!("almost-clean-criterion", "S ⊕̃ M almost clean iff every s is t + e with t ∉ Z(S) ∪ Z(M)", check_almost_clean),
    theorem!("weakly-clean-criterion", "V(M) = M: S ⊕̃ M weakly clean iff S is (s = u+e or s+e = u)", |c| check_weakly_clean(c, is_weakly_clean)),
    theorem!("weakly-clean-criterion-literal", "V(M) = M: S ⊕̃ M weakly clean iff S is (s = u+e or u+e = u)", |c| check_weakly_clean(c, is_weakly_clean_literal)),
    theorem!("additively-regular-criterion", "(a,m) additively regular iff a and m are", check_additively_regular),
    theorem!("units-avoid-zero-divisors", "units and zero-divisors are disjoint", check_units_vs_zero_divisors),
    theorem!("nilpotents-in-primes", "Nil ⊆ Z and Nil ⊆ every prime ideal", check_nilpotents_in_primes),
];

fn check_product_semiring(c: &Context) -> Outcome {
    let commutativity = if is_commutative_mul(c.s()) { Commutativity::Required } else { Commutativity::NotRequired };
    match semiring_violations(&c.e().to_raw(), commutativity) {
        Ok(v) if v.is_empty() => pass(),
        Ok(v) => fail(vec![format!("{:?} at {}", v[0].axiom, v[0].witness.iter().map(|&p| c.label(p)).collect::<Vec<_>>().join(" "))]),
        Err(e) => fail(vec![e.to_string()]),
    }
}

fn check_nilpotency(c: &Context) -> Outcome {
    let expected = if c.m().is_zero_module() { 1 } else { 2 };
    let got = c.inst.zero_m_ideal_nilpotency();
    verdict(got == Some(expected), || vec![format!("index {got:?}, expected {expected}")])
}

fn check_power_formula(c: &Context) -> Outcome {
    let (s, m, e) = (c.s(), c.m(), c.e());
    first_failure(e.elements(), |&p| {
        let (a, x) = c.inst.pair(p);
        (1..=e.size()).find_map(|k| {
            let expected = c.inst.index(s.pow(a, k), m.multiple(k, m.act(s.pow(a, k - 1), x)));
            (e.pow(p, k) != expected).then(|| vec![c.label(p), format!("k={k}")])
        })
    })
}

fn check_grading(c: &Context) -> Outcome {
    match c.inst.graded_decomposition() {
        Ok(_) => pass(),
        Err(failure) => fail(vec![format!("{failure:?}")]),
    }
}

fn check_box_criterion(c: &Context) -> Outcome {
    let Ok(grading) = c.inst.graded_decomposition() else {
        return fail(vec!["no grading".into()]);
    };
    let boxes = first_failure(c.box_pairs(), |&(i, n)| {
        let set = c.boxed(i.members(), n.members());
        let ideal = is_ideal(c.e(), &set);
        let ok = ideal == c.contained(i.members(), n.members()) && (!ideal || c.inst.is_graded_ideal(&set, &grading));
        (!ok).then(|| c.describe_pair(i, n))
    });
    if boxes.status == Status::Fail {
        return boxes;
    }
    // Graded ideals are boxes over their homogeneous parts.
    first_failure(&c.ideals_e, |j| {
        if !c.inst.is_graded_ideal(j.members(), &grading) {
            return None;
        }
        let i = Subset::from_predicate(c.s().size(), |a| j.contains(c.inst.embed_s(a)));
        let n = Subset::from_predicate(c.m().size(), |x| j.contains(c.inst.embed_m(x)));
        (&c.boxed(&i, &n) != j.members()).then(|| c.inst.labels(j.members()))
    })
}

fn check_box_radical(c: &Context) -> Outcome {
    first_failure(c.box_pairs(), |&(i, n)| {
        if !c.contained(i.members(), n.members()) {
            return None;
        }
        let j = Ideal::from_subset_unchecked(c.boxed(i.members(), n.members()));
        let lhs = radical(c.e(), &j);
        let rhs = c.boxed(radical(c.s(), i).members(), &c.whole_m());
        (lhs.members() != &rhs).then(|| c.describe_pair(i, n))
    })
}

fn check_projections(c: &Context) -> Outcome {
    first_failure(&c.ideals_e, |j| {
        let (i, n) = crate::ideals::ideal_projections(&c.inst, j);
        let ok = is_ideal(c.s(), i.members())
            && is_subsemimodule(c.m(), n.members())
            && c.contained(i.members(), n.members())
            && j.members().is_subset(&c.boxed(i.members(), n.members()));
        (!ok).then(|| c.inst.labels(j.members()))
    })
}

fn check_subtractive_over_zero_m(c: &Context) -> Outcome {
    let zero_m = c.inst.zero_m_ideal();
    first_failure(&c.ideals_e, |j| {
        if !zero_m.is_subset(j.members()) || !is_subtractive(c.e(), j.members()) {
            return None;
        }
        let i = c.first_projection(j.members());
        (j.members() != &c.boxed(&i, &c.whole_m())).then(|| c.inst.labels(j.members()))
    })
}

fn check_primes_contain_zero_m(c: &Context) -> Outcome {
    let zero_m = c.inst.zero_m_ideal();
    first_failure(&c.primes_e, |p| (!zero_m.is_subset(p.members())).then(|| c.inst.labels(p.members())))
}

/// `P = 𝔭 ⊕̃ M` with `𝔭` a subtractive prime (or maximal, per `maximal`) of S.
fn has_lifted_shape(c: &Context, p: &Subset, maximal: bool) -> bool {
    let first = c.first_projection(p);
    let ideal = Ideal::from_subset_unchecked(first.clone());
    p == &c.boxed(&first, &c.whole_m())
        && is_ideal(c.s(), &first)
        && ideal.is_proper()
        && is_subtractive(c.s(), &first)
        && if maximal { is_maximal(c.s(), &ideal).unwrap_or(false) } else { is_prime(c.s(), &ideal).unwrap_or(false) }
}

fn check_subtractive_prime_shape(c: &Context) -> Outcome {
    first_failure(&c.primes_e, |p| {
        (is_subtractive(c.e(), p.members()) && !has_lifted_shape(c, p.members(), false)).then(|| c.inst.labels(p.members()))
    })
}

fn check_graded_subtractive(c: &Context) -> Outcome {
    let boxes_subtractive = c
        .box_pairs()
        .filter(|(i, n)| c.contained(i.members(), n.members()))
        .all(|(i, n)| is_subtractive(c.e(), &c.boxed(i.members(), n.members())));
    let factors_subtractive = c.ideals_s.iter().all(|i| is_subtractive(c.s(), i.members()))
        && c.subs_m.iter().all(|n| is_subtractive(c.m(), n.members()));
    verdict(boxes_subtractive == factors_subtractive, || {
        vec![format!("boxes subtractive: {boxes_subtractive}"), format!("factors subtractive: {factors_subtractive}")]
    })
}

fn check_subtractive_product(c: &Context) -> Outcome {
    if !c.ideals_e.iter().all(|j| is_subtractive(c.e(), j.members())) {
        return not_applicable("product has a non-subtractive ideal");
    }
    let bad_s = c.ideals_s.iter().find(|i| !is_subtractive(c.s(), i.members()));
    let bad_m = c.subs_m.iter().find(|n| !is_subtractive(c.m(), n.members()));
    verdict(bad_s.is_none() && bad_m.is_none(), || {
        bad_s.map(|i| format!("I={}", braces(i.members()))).into_iter().chain(bad_m.map(|n| format!("N={}", braces(n.members())))).collect()
    })
}

fn check_weak_gaussian(c: &Context) -> Outcome {
    if !is_weak_gaussian(c.e()).unwrap_or(false) {
        return not_applicable("product is not weak Gaussian");
    }
    let primes = first_failure(&c.primes_e, |p| (!has_lifted_shape(c, p.members(), false)).then(|| c.inst.labels(p.members())));
    if primes.status == Status::Fail {
        return primes;
    }
    first_failure(c.ideals_e.iter().filter(|j| j.is_proper()), |j| {
        (is_maximal(c.e(), j).unwrap_or(false) && !has_lifted_shape(c, j.members(), true)).then(|| c.inst.labels(j.members()))
    })
}

/// `ab = 0` with `a, b ≠ 0` forces `a, b ∈ ann(M)`; a violating pair otherwise.
fn annihilator_condition_witness(c: &Context) -> Option<(Elem, Elem)> {
    let s = c.s();
    let ann = annihilator(c.m());
    s.elements()
        .flat_map(|a| s.elements().map(move |b| (a, b)))
        .find(|&(a, b)| a != s.zero() && b != s.zero() && s.mul(a, b) == s.zero() && !(ann.contains(a) && ann.contains(b)))
}

fn check_weakly_prime_lift(c: &Context) -> Outcome {
    if annihilator_condition_witness(c).is_some() {
        return not_applicable("some zero product of nonzero scalars leaves ann(M)");
    }
    let candidates: Vec<&Ideal> =
        c.ideals_s.iter().filter(|i| i.is_proper() && is_weakly_prime(c.s(), i).unwrap_or(false)).collect();
    if candidates.is_empty() {
        return not_applicable("no weakly prime ideal in S");
    }
    first_failure(candidates, |i| {
        let lifted = Ideal::from_subset_unchecked(c.boxed(i.members(), &c.whole_m()));
        weakly_prime_witness(c.e(), &lifted).map(|(a, b)| vec![format!("I={}", braces(i.members())), c.label(a), c.label(b)])
    })
}

/// Outcome of the converse search on one ideal `I` of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeaklyPrimeProbe {
    pub ideal: Vec<Elem>,
    pub lifted_weakly_prime: bool,
    pub ideal_weakly_prime: bool,
    /// A pair `a, b ≠ 0` with `ab = 0` and `a` or `b` outside `ann(M)`.
    pub annihilator_violation: Option<(Elem, Elem)>,
}

impl WeaklyPrimeProbe {
    /// `I ⊕̃ M` is weakly prime although the converse conditions fail.
    pub fn is_counterexample(&self) -> bool {
        self.lifted_weakly_prime && (!self.ideal_weakly_prime || self.annihilator_violation.is_some())
    }
}

/// Scans `I ⊕̃ M` for weak primeness by exhaustive product search and
/// compares with the converse conditions.
pub fn weakly_prime_probe(inst: &ExpectationInstance, ideal: &Ideal) -> Result<WeaklyPrimeProbe> {
    let lifted = Ideal::from_subset_unchecked(inst.box_set(ideal.members(), &Subset::full(inst.module().size())));
    let (s, m) = (inst.semiring(), inst.module());
    let ann = annihilator(m);
    let annihilator_violation = s
        .elements()
        .flat_map(|a| s.elements().map(move |b| (a, b)))
        .find(|&(a, b)| a != s.zero() && b != s.zero() && s.mul(a, b) == s.zero() && !(ann.contains(a) && ann.contains(b)));
    Ok(WeaklyPrimeProbe {
        ideal: ideal.members().to_vec(),
        lifted_weakly_prime: is_weakly_prime(inst.product(), &lifted)?,
        ideal_weakly_prime: is_weakly_prime(s, ideal)?,
        annihilator_violation,
    })
}

fn probe_weakly_prime_converse(c: &Context) -> Outcome {
    let mut hits = Vec::new();
    for i in c.ideals_s.iter().filter(|i| i.is_proper()) {
        let probe = weakly_prime_probe(&c.inst, i).expect("proper ideal");
        if probe.is_counterexample() {
            let mut w = format!("I={}", braces(i.members()));
            if let Some((a, b)) = probe.annihilator_violation {
                w.push_str(&format!(" ({a}·{b}=0, not in ann(M))"));
            }
            if !probe.ideal_weakly_prime {
                w.push_str(" (I not weakly prime)");
            }
            hits.push(w);
        }
    }
    let note = if hits.is_empty() { "no counterexample".to_string() } else { "counterexample found".to_string() };
    informational(note, hits)
}

fn check_residual(c: &Context) -> Outcome {
    first_failure(&c.subs_m, |n| {
        let res = residual(c.m(), n);
        if !is_ideal(c.s(), res.members()) {
            return Some(vec![format!("N={}", braces(n.members()))]);
        }
        if n.is_proper() && is_primary_submodule(c.m(), n).unwrap_or(false) {
            let rad = submodule_radical(c.m(), n);
            if !(rad.is_proper() && is_prime(c.s(), &rad).unwrap_or(false)) {
                return Some(vec![format!("N={}", braces(n.members())), format!("√N={}", braces(rad.members()))]);
            }
        }
        None
    })
}

fn check_primary_lift(c: &Context) -> Outcome {
    first_failure(c.ideals_s.iter().filter(|i| i.is_proper()), |i| {
        let lifted = Ideal::from_subset_unchecked(c.boxed(i.members(), &c.whole_m()));
        let ok = is_primary(c.s(), i).unwrap_or(false) == is_primary(c.e(), &lifted).unwrap_or(false);
        (!ok).then(|| vec![format!("I={}", braces(i.members()))])
    })
}

/// `N primary ∧ IM ⊆ N ∧ √I = √N`.
fn primary_conditions(c: &Context, i: &Ideal, n: &Subsemimodule) -> bool {
    c.contained(i.members(), n.members())
        && is_primary_submodule(c.m(), n).unwrap_or(false)
        && radical(c.s(), i) == submodule_radical(c.m(), n)
}

/// `I ⊕̃ N` is an ideal and is primary.
fn box_is_primary(c: &Context, i: &Ideal, n: &Subsemimodule) -> bool {
    c.contained(i.members(), n.members())
        && is_primary(c.e(), &Ideal::from_subset_unchecked(c.boxed(i.members(), n.members()))).unwrap_or(false)
}

fn check_primary_necessary(c: &Context) -> Outcome {
    if c.m().is_zero_module() {
        return not_applicable("M = 0 has no proper subsemimodule");
    }
    first_failure(c.box_pairs().filter(|(_, n)| n.is_proper()), |&(i, n)| {
        (box_is_primary(c, i, n) && !primary_conditions(c, i, n)).then(|| c.describe_pair(i, n))
    })
}

fn check_primary_criterion(c: &Context) -> Outcome {
    if c.m().is_zero_module() {
        return not_applicable("M = 0 has no proper subsemimodule");
    }
    if let Some(n) = c.subs_m.iter().find(|n| !is_subtractive(c.m(), n.members())) {
        return Outcome {
            note: Some(format!("M has a non-subtractive subsemimodule {}", braces(n.members()))),
            ..not_applicable("")
        };
    }
    first_failure(c.box_pairs().filter(|(_, n)| n.is_proper()), |&(i, n)| {
        let conditions = primary_conditions(c, i, n);
        if box_is_primary(c, i, n) == conditions {
            return None;
        }
        let mut witness = c.describe_pair(i, n);
        if conditions {
            let j = c.boxed(i.members(), n.members());
            if let Some((a, b)) = primary_violation(c.e(), &j) {
                witness.push(format!("{}·{} ∈ I ⊕̃ N, {} ∉ I ⊕̃ N, no power of {} in I ⊕̃ N", c.label(a), c.label(b), c.label(b), c.label(a)));
            }
        }
        Some(witness)
    })
}

/// A pair `(a, b)` with `ab ∈ J`, `b ∉ J` and no power of `a` in `J`.
fn primary_violation(e: &FiniteSemiring, j: &Subset) -> Option<(Elem, Elem)> {
    e.elements()
        .filter(|&a| !e.powers(a).any(|p| j.contains(p)))
        .flat_map(|a| j.complement().map(move |b| (a, b)))
        .find(|&(a, b)| j.contains(e.mul(a, b)))
}

/// Every element of `z` lies in some prime ideal of `S` contained in `z`.
fn covered_by_primes(c: &Context, z: &Subset) -> Option<Elem> {
    let inside: Vec<&Ideal> = c.primes_s.iter().filter(|p| p.members().is_subset(z)).collect();
    z.iter().find(|&x| !inside.iter().any(|p| p.contains(x)))
}

fn check_zero_divisor_primes(c: &Context) -> Outcome {
    let zs = zero_divisors(c.s());
    if let Some(x) = covered_by_primes(c, &zs) {
        return fail(vec![format!("s={x} in Z(S)")]);
    }
    if c.m().is_zero_module() {
        return pass();
    }
    match covered_by_primes(c, &module_zero_divisors(c.m())) {
        Some(x) => fail(vec![format!("s={x} in Z(M)")]),
        None => pass(),
    }
}

fn compare_sets(c: &Context, got: &Subset, expected: &Subset) -> Outcome {
    verdict(got == expected, || {
        let extra = got.iter().filter(|&p| !expected.contains(p));
        let missing = expected.iter().filter(|&p| !got.contains(p));
        extra.map(|p| format!("unexpected {}", c.label(p))).chain(missing.map(|p| format!("missing {}", c.label(p)))).collect()
    })
}

fn check_units(c: &Context) -> Outcome {
    compare_sets(c, &units(c.e()), &c.boxed(&units(c.s()), &v_set(c.m())))
}

fn check_idempotents(c: &Context) -> Outcome {
    let (s, m) = (c.s(), c.m());
    let expected = Subset::from_predicate(c.e().size(), |p| {
        let (a, x) = c.inst.pair(p);
        let ax = m.act(a, x);
        s.mul(a, a) == a && m.add(ax, ax) == x
    });
    let got = idempotents(c.e());
    let only_zero_additive_idempotent = m.elements().all(|x| m.add(x, x) != x || x == m.zero());
    if only_zero_additive_idempotent {
        if let Some(p) = got.iter().find(|&p| c.inst.pair(p).1 != m.zero()) {
            return fail(vec![c.label(p)]);
        }
    }
    compare_sets(c, &got, &expected)
}

fn check_nilpotents(c: &Context) -> Outcome {
    let got = nilpotents(c.e());
    if !is_ideal(c.e(), &got) {
        return fail(vec!["Nil is not an ideal".into()]);
    }
    compare_sets(c, &got, &c.boxed(&nilpotents(c.s()), &c.whole_m()))
}

fn check_zero_divisors(c: &Context) -> Outcome {
    let scalars = zero_divisors(c.s()).union(&module_zero_divisors(c.m()));
    compare_sets(c, &zero_divisors(c.e()), &c.boxed(&scalars, &c.whole_m()))
}

fn check_semifield_local(c: &Context) -> Outcome {
    if !is_semifield(c.s()) {
        return not_applicable("S is not a semifield");
    }
    verdict(is_local(c.e()), Vec::new)
}

fn check_presimplifiable(c: &Context) -> Outcome {
    let lhs = is_presimplifiable(c.e());
    let rhs = c.v_is_whole() && is_presimplifiable(c.s()) && is_presimplifiable_mod(c.m());
    verdict(lhs == rhs, || vec![format!("product: {lhs}, factors: {rhs}")])
}

/// (présimplifiable, strongly associate) for S, M and the product.
fn association_profile(c: &Context) -> [(&'static str, bool, bool); 3] {
    [
        ("S", is_presimplifiable(c.s()), is_strongly_associate(c.s())),
        ("M", is_presimplifiable_mod(c.m()), is_strongly_associate_mod(c.m())),
        ("S⊕̃M", is_presimplifiable(c.e()), is_strongly_associate(c.e())),
    ]
}

fn check_presimplifiable_sa(c: &Context) -> Outcome {
    let profile = association_profile(c);
    if profile.iter().all(|&(_, pres, _)| !pres) {
        return not_applicable("nothing présimplifiable");
    }
    first_failure(profile, |&(which, pres, sa)| (pres && !sa).then(|| vec![which.to_string()]))
}

fn census_presimplifiable_converse(c: &Context) -> Outcome {
    let hits: Vec<String> =
        association_profile(c).iter().filter(|&&(_, pres, sa)| sa && !pres).map(|&(which, _, _)| which.to_string()).collect();
    let note = if hits.is_empty() { "none" } else { "strongly associate without being présimplifiable" };
    informational(note.to_string(), hits)
}

fn check_sa_factors(c: &Context) -> Outcome {
    if !is_strongly_associate(c.e()) {
        return not_applicable("product not strongly associate");
    }
    let (s, m) = (is_strongly_associate(c.s()), is_strongly_associate_mod(c.m()));
    verdict(s && m, || vec![format!("S: {s}, M: {m}")])
}

fn check_sa_criterion(c: &Context) -> Outcome {
    if !(is_presimplifiable(c.s()) && c.v_is_whole()) {
        return not_applicable("S not présimplifiable or V(M) ≠ M");
    }
    let (e, m) = (is_strongly_associate(c.e()), is_strongly_associate_mod(c.m()));
    verdict(e == m, || vec![format!("product: {e}, M: {m}")])
}

fn check_domainlike(c: &Context) -> Outcome {
    let lhs = is_domainlike(c.e());
    let rhs = is_domainlike(c.s()) && is_domainlike_mod(c.m());
    verdict(lhs == rhs, || vec![format!("product: {lhs}, factors: {rhs}")])
}

fn check_clean(c: &Context) -> Outcome {
    if !c.v_is_whole() {
        return not_applicable("V(M) ≠ M");
    }
    let (e, s) = (is_clean(c.e()), is_clean(c.s()));
    verdict(e == s, || vec![format!("product: {e}, S: {s}")])
}

fn check_almost_clean(c: &Context) -> Outcome {
    let (e, crit) = (is_almost_clean(c.e()), almost_clean_criterion(c.m()));
    verdict(e == crit, || vec![format!("product: {e}, criterion: {crit}")])
}

fn check_weakly_clean(c: &Context, decide: fn(&FiniteSemiring) -> bool) -> Outcome {
    if !c.v_is_whole() {
        return not_applicable("V(M) ≠ M");
    }
    let (e, s) = (decide(c.e()), decide(c.s()));
    verdict(e == s, || vec![format!("product: {e}, S: {s}")])
}

fn check_additively_regular(c: &Context) -> Outcome {
    let (rs, rm) = (additively_regular_elements(c.s()), additively_regular_elements(c.m()));
    let got = additively_regular_elements(c.e());
    compare_sets(c, &got, &c.boxed(&rs, &rm))
}

fn check_units_vs_zero_divisors(c: &Context) -> Outcome {
    first_failure([c.s(), c.e()], |r| {
        let clash = units(r).intersection(&zero_divisors(r));
        (!clash.is_empty()).then(|| vec![format!("{} in {}", braces(&clash), r.name())])
    })
}

fn check_nilpotents_in_primes(c: &Context) -> Outcome {
    let checks = [(c.s(), &c.primes_s), (c.e(), &c.primes_e)];
    first_failure(checks, |&(r, primes)| {
        let nil = nilpotents(r);
        if !nil.is_subset(&zero_divisors(r)) {
            return Some(vec![format!("Nil ⊄ Z in {}", r.name())]);
        }
        primes.iter().find(|p| !nil.is_subset(p.members())).map(|p| vec![format!("P={} in {}", braces(p.members()), r.name())])
    })
}

/// Theorem ids of the numeric records.
pub const NUMERIC_ORACLE: &str = "numeric-forward-vs-paths";
pub const NUMERIC_LAWS: &str = "numeric-semiring-laws";

/// Number of random graphs and weight triples used by the numeric records.
pub const NUMERIC_GRAPHS: usize = 100;
pub const NUMERIC_TRIPLES: usize = 1000;

fn numeric_records(seed: u64, timings: bool) -> Vec<Record> {
    let timed = |id: &str, f: &dyn Fn() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        Record {
            theorem: id.to_string(),
            instance: format!("random(seed={seed})"),
            status: outcome.status,
            witness: outcome.witness,
            note: outcome.note,
            runtime_ms: timings.then(|| start.elapsed().as_secs_f64() * 1e3),
        }
    };
    vec![
        timed(NUMERIC_ORACLE, &|| match numeric_oracle_disagreements(seed, NUMERIC_GRAPHS) {
            Ok(0) => pass(),
            Ok(k) => fail(vec![format!("{k} of {NUMERIC_GRAPHS} graphs disagree")]),
            Err(e) => fail(vec![e.to_string()]),
        }),
        timed(NUMERIC_LAWS, &|| match numeric_law_failures(seed, NUMERIC_TRIPLES) {
            Ok(failures) if failures.is_empty() => pass(),
            Ok(failures) => fail(failures),
            Err(e) => fail(vec![e.to_string()]),
        }),
    ]
}

/// How many of `count` seeded random DAGs have a forward total that differs
/// from explicit path enumeration.
pub fn numeric_oracle_disagreements(seed: u64, count: usize) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let config = RandomDagConfig::default();
    let mut bad = 0;
    for _ in 0..count {
        let g = random_dag(&mut rng, &config);
        if !forward_total(&g)?.approx_eq(&brute_force_total(&g)?) {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Names of the laws failing on `count` seeded random weight triples.
pub fn numeric_law_failures(seed: u64, count: usize) -> Result<Vec<String>> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..count {
        let d = rng.gen_range(0..=3);
        let mut weight = || NumericWeight::new(rng.gen_range(0.0..2.0), (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect());
        let (a, b, c) = (weight(), weight(), weight());
        let laws = [
            ("additive associativity", wadd(&wadd(&a, &b)?, &c)?.approx_eq(&wadd(&a, &wadd(&b, &c)?)?)),
            ("additive commutativity", wadd(&a, &b)?.approx_eq(&wadd(&b, &a)?)),
            ("multiplicative associativity", wmul(&wmul(&a, &b)?, &c)?.approx_eq(&wmul(&a, &wmul(&b, &c)?)?)),
            ("multiplicative commutativity", wmul(&a, &b)?.approx_eq(&wmul(&b, &a)?)),
            ("distributivity", wmul(&a, &wadd(&b, &c)?)?.approx_eq(&wadd(&wmul(&a, &b)?, &wmul(&a, &c)?)?)),
            ("annihilation", wmul(&a, &NumericWeight::zero(d))?.approx_eq(&NumericWeight::zero(d))),
            ("identities", wadd(&a, &NumericWeight::zero(d))? == a && wmul(&a, &NumericWeight::one(d))?.approx_eq(&a)),
        ];
        failures.extend(laws.iter().filter(|(_, ok)| !ok).map(|(law, _)| format!("{law} (trial {trial})")));
    }
    Ok(failures)
}
