//! The expectation semiring `S ⊕̃ M` over the product carrier `S × M`:
//!
//! ```text
//! (s₁, m₁) + (s₂, m₂) = (s₁ + s₂, m₁ + m₂)
//! (s₁, m₁) · (s₂, m₂) = (s₁s₂, s₁m₂ + s₂m₁)
//! ```
//!
//! Product indices are row-major over `(s, m)`; the pairing is stored so that
//! ideals of the product can be read back as factor coordinates.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideals::{ideal_product, is_ideal, Ideal};
use crate::tables::{
    is_commutative_mul, validate_semiring_with, AdditiveMonoid, Commutativity, Elem, FiniteSemimodule,
    FiniteSemiring, RawSemiring, Subset,
};

#[derive(Debug, Clone)]
pub struct ExpectationInstance {
    product: FiniteSemiring,
    semiring: Arc<FiniteSemiring>,
    module: Arc<FiniteSemimodule>,
    pairs: Vec<(Elem, Elem)>,
}

/// The homogeneous components `T₀ = S ⊕̃ (0)` and `T₁ = (0) ⊕̃ M`; every
/// component of degree two or more is `{(0, 0)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub t0: Subset,
    pub t1: Subset,
}

/// Why a candidate grading of the product is not a grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradingFailure {
    /// An element has zero or several decompositions `t₀ + t₁`.
    NotUnique { element: Elem, decompositions: usize },
    /// `Tᵢ · Tⱼ ⊄ T_{i+j}`, witnessed by a product of the two elements.
    Product { degrees: (usize, usize), left: Elem, right: Elem },
}

impl ExpectationInstance {
    /// Builds `S ⊕̃ M`. The product tables are run through the semiring
    /// validator before the instance is returned.
    pub fn build(semiring: &Arc<FiniteSemiring>, module: &Arc<FiniteSemimodule>) -> Result<Self> {
        if module.base().as_ref() != semiring.as_ref() {
            return Err(Error::BaseMismatch(format!(
                "`{}` is a semimodule over `{}`, not `{}`",
                module.name(),
                module.base().name(),
                semiring.name()
            )));
        }
        let (s, m) = (semiring.as_ref(), module.as_ref());
        let width = m.size();
        let pairs: Vec<(Elem, Elem)> =
            s.elements().flat_map(|a| m.elements().map(move |x| (a, x))).collect();
        let index = |a: Elem, x: Elem| a * width + x;

        let add = pairs
            .iter()
            .map(|&(a, x)| pairs.iter().map(|&(b, y)| index(s.add(a, b), m.add(x, y))).collect())
            .collect();
        let mul = pairs
            .iter()
            .map(|&(a, x)| {
                pairs
                    .iter()
                    .map(|&(b, y)| index(s.mul(a, b), m.add(m.act(a, y), m.act(b, x))))
                    .collect()
            })
            .collect();
        let raw = RawSemiring {
            name: format!("exp({}, {})", s.name(), m.name()),
            size: pairs.len(),
            zero: index(s.zero(), m.zero()),
            one: index(s.one(), m.zero()),
            add,
            mul,
        };
        let commutativity =
            if is_commutative_mul(s) { Commutativity::Required } else { Commutativity::NotRequired };
        let product = validate_semiring_with(raw, commutativity)?;
        Ok(ExpectationInstance { product, semiring: Arc::clone(semiring), module: Arc::clone(module), pairs })
    }

    pub fn product(&self) -> &FiniteSemiring {
        &self.product
    }

    pub fn semiring(&self) -> &Arc<FiniteSemiring> {
        &self.semiring
    }

    pub fn module(&self) -> &Arc<FiniteSemimodule> {
        &self.module
    }

    #[inline]
    pub fn index(&self, s: Elem, x: Elem) -> Elem {
        s * self.module.size() + x
    }

    #[inline]
    pub fn pair(&self, idx: Elem) -> (Elem, Elem) {
        self.pairs[idx]
    }

    /// Factor coordinates of a product element, e.g. `(2,1)`.
    pub fn label(&self, idx: Elem) -> String {
        let (s, x) = self.pair(idx);
        format!("({s},{x})")
    }

    pub fn labels(&self, set: &Subset) -> Vec<String> {
        set.iter().map(|i| self.label(i)).collect()
    }

    /// `s ↦ (s, 0)`.
    pub fn embed_s(&self, s: Elem) -> Elem {
        self.index(s, self.module.zero())
    }

    /// `x ↦ (0, x)`.
    pub fn embed_m(&self, x: Elem) -> Elem {
        self.index(self.semiring.zero(), x)
    }

    /// `T ⊕̃ N` as a subset of the product.
    pub fn box_set(&self, t: &Subset, n: &Subset) -> Subset {
        Subset::from_predicate(self.product.size(), |i| {
            let (s, x) = self.pair(i);
            t.contains(s) && n.contains(x)
        })
    }

    /// The ideal `{0} × M`.
    pub fn zero_m_ideal(&self) -> Subset {
        let full = Subset::full(self.module.size());
        let zero = Subset::from_indices(self.semiring.size(), [self.semiring.zero()]);
        self.box_set(&zero, &full)
    }

    /// Whether `s ↦ (s, 0)` is an injective map onto a subsemiring preserving
    /// `+`, `·`, `0` and `1`.
    pub fn embedding_is_homomorphism(&self) -> bool {
        let (s, e) = (self.semiring.as_ref(), &self.product);
        let image: Vec<Elem> = s.elements().map(|a| self.embed_s(a)).collect();
        let injective = image.iter().collect::<std::collections::BTreeSet<_>>().len() == s.size();
        injective
            && image[s.zero()] == e.zero()
            && image[s.one()] == e.one()
            && s.elements().all(|a| {
                s.elements().all(|b| {
                    e.add(image[a], image[b]) == image[s.add(a, b)]
                        && e.mul(image[a], image[b]) == image[s.mul(a, b)]
                })
            })
    }

    /// Least `k` with `({0} × M)^k = {(0, 0)}`, where powers are products of
    /// ideals. `None` if the ideal is not nilpotent within `|S ⊕̃ M|` steps.
    pub fn zero_m_ideal_nilpotency(&self) -> Option<usize> {
        let e = &self.product;
        let base = Ideal::from_subset_unchecked(self.zero_m_ideal());
        let zero = Subset::from_indices(e.size(), [e.zero()]);
        let mut power = base.clone();
        for k in 1..=e.size() + 1 {
            if power.members() == &zero {
                return Some(k);
            }
            power = ideal_product(e, &power, &base);
        }
        None
    }

    /// Materializes the semiring of formal triangular records
    /// `[[s, m], [0, s]]` under componentwise addition and the triangular
    /// matrix product, then checks that `(s, m) ↦ [[s, m], [0, s]]` is a
    /// semiring isomorphism onto it.
    pub fn matrix_iso_check(&self) -> bool {
        let (s, m) = (self.semiring.as_ref(), self.module.as_ref());
        let records: Vec<TriangularRecord> = self
            .pairs
            .iter()
            .map(|&(a, x)| TriangularRecord { top_left: a, corner: x, bottom_right: a })
            .collect();
        let position = |r: &TriangularRecord| records.iter().position(|q| q == r);

        // The record set must be closed under both operations.
        let mut add = vec![vec![0; records.len()]; records.len()];
        let mut mul = vec![vec![0; records.len()]; records.len()];
        for (i, p) in records.iter().enumerate() {
            for (j, q) in records.iter().enumerate() {
                let (Some(sum), Some(prod)) = (position(&p.add(q, s, m)), position(&p.mul(q, s, m))) else {
                    return false;
                };
                add[i][j] = sum;
                mul[i][j] = prod;
            }
        }
        let zero = TriangularRecord { top_left: s.zero(), corner: m.zero(), bottom_right: s.zero() };
        let one = TriangularRecord { top_left: s.one(), corner: m.zero(), bottom_right: s.one() };
        let (Some(zero), Some(one)) = (position(&zero), position(&one)) else {
            return false;
        };
        let raw = RawSemiring { name: "triangular".into(), size: records.len(), zero, one, add, mul };
        let Ok(matrices) = validate_semiring_with(raw, Commutativity::NotRequired) else {
            return false;
        };

        // The pairing is the identity on positions because records were
        // listed in product order; check the operations agree.
        let e = &self.product;
        e.zero() == matrices.zero()
            && e.one() == matrices.one()
            && e.elements().all(|i| {
                e.elements().all(|j| e.add(i, j) == matrices.add(i, j) && e.mul(i, j) == matrices.mul(i, j))
            })
    }

    /// Returns `T₀`, `T₁` after checking that every element decomposes
    /// uniquely as `t₀ + t₁` and that `Tᵢ · Tⱼ ⊆ T_{i+j}`.
    pub fn graded_decomposition(&self) -> std::result::Result<GradedDecomposition, GradingFailure> {
        let (s, m, e) = (self.semiring.as_ref(), self.module.as_ref(), &self.product);
        let t0 = Subset::from_indices(e.size(), s.elements().map(|a| self.embed_s(a)));
        let t1 = Subset::from_indices(e.size(), m.elements().map(|x| self.embed_m(x)));
        let zero = Subset::from_indices(e.size(), [e.zero()]);

        for p in e.elements() {
            let count = t0.iter().flat_map(|a| t1.iter().map(move |b| (a, b))).filter(|&(a, b)| e.add(a, b) == p).count();
            if count != 1 {
                return Err(GradingFailure::NotUnique { element: p, decompositions: count });
            }
        }
        let component = |deg: usize| match deg {
            0 => &t0,
            1 => &t1,
            _ => &zero,
        };
        for i in 0..=1 {
            for j in 0..=1 {
                let target = component(i + j);
                for a in component(i).iter() {
                    for b in component(j).iter() {
                        if !target.contains(e.mul(a, b)) {
                            return Err(GradingFailure::Product { degrees: (i, j), left: a, right: b });
                        }
                    }
                }
            }
        }
        Ok(GradedDecomposition { t0, t1 })
    }

    /// Whether `J = (J ∩ T₀) ⊕ (J ∩ T₁)` and `T_k J_l ⊆ J_{k+l}`.
    pub fn is_graded_ideal(&self, j: &Subset, grading: &GradedDecomposition) -> bool {
        let e = &self.product;
        if !is_ideal(e, j) {
            return false;
        }
        let j0 = j.intersection(&grading.t0);
        let j1 = j.intersection(&grading.t1);
        let zero = Subset::from_indices(e.size(), [e.zero()]);
        // J is the internal direct sum of its homogeneous parts.
        let decomposes = j.iter().all(|p| {
            j0.iter().flat_map(|a| j1.iter().map(move |b| (a, b))).filter(|&(a, b)| e.add(a, b) == p).count() == 1
        }) && j0.iter().all(|a| j1.iter().all(|b| j.contains(e.add(a, b))));
        let parts = [&j0, &j1, &zero];
        let components = [&grading.t0, &grading.t1, &zero];
        let absorbs = (0..=1).all(|k| {
            (0..=1).all(|l| {
                let target = parts[(k + l).min(2)];
                components[k].iter().all(|a| parts[l].iter().all(|b| target.contains(e.mul(a, b))))
            })
        });
        decomposes && absorbs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct TriangularRecord {
    top_left: Elem,
    corner: Elem,
    bottom_right: Elem,
}

impl TriangularRecord {
    fn add(&self, other: &Self, s: &FiniteSemiring, m: &FiniteSemimodule) -> Self {
        TriangularRecord {
            top_left: s.add(self.top_left, other.top_left),
            corner: m.add(self.corner, other.corner),
            bottom_right: s.add(self.bottom_right, other.bottom_right),
        }
    }

    /// `[[a, x], [0, d]] · [[b, y], [0, e]] = [[ab, a·y + e·x], [0, de]]`
    fn mul(&self, other: &Self, s: &FiniteSemiring, m: &FiniteSemimodule) -> Self {
        TriangularRecord {
            top_left: s.mul(self.top_left, other.top_left),
            corner: m.add(m.act(self.top_left, other.corner), m.act(other.bottom_right, self.corner)),
            bottom_right: s.mul(self.bottom_right, other.bottom_right),
        }
    }
}
