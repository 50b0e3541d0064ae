//! Weighted backward shifts on the vanishing-sequence space, their
//! closed-form powers, right inverses, exact operator norms, and domain
//! membership for formula-defined inputs.
//!
//! Two shift kinds exist over either index base, both with expanding
//! weight `|w| > 1`:
//!
//! - bounded:   `(A x)_k = w * x_{k+1}`
//! - unbounded: `(A x)_k = w^k * x_{k+1}`
//!
//! The n-th power of the unbounded shift carries the weight
//! `prod_{j=k}^{k+n-1} w^j = w^(nk + n(n-1)/2)` at output index `k`; its
//! right inverse powers carry `w^(-nk + n(n+1)/2)` at output index `k`.
//! All weights are tracked as integer exponents of `w`, never as chained
//! scalar products.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{ratio_ln, ratio_pow, Scalar};
use crate::seq::{DecayCertificate, FinSeq, FormulaSeq, IndexBase};

/// Which operator a spec describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    #[serde(rename = "bounded-shift")]
    BoundedShift,
    #[serde(rename = "unbounded-shift")]
    UnboundedShift,
    #[serde(rename = "bounded-hat")]
    BoundedHat,
    #[serde(rename = "unbounded-hat")]
    UnboundedHat,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::BoundedShift => "bounded-shift",
            Variant::UnboundedShift => "unbounded-shift",
            Variant::BoundedHat => "bounded-hat",
            Variant::UnboundedHat => "unbounded-hat",
        }
    }

    pub fn is_shift(self) -> bool {
        matches!(self, Variant::BoundedShift | Variant::UnboundedShift)
    }

    pub fn is_bounded(self) -> bool {
        matches!(self, Variant::BoundedShift | Variant::BoundedHat)
    }
}

/// Underlying sequence space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Space {
    #[serde(rename = "c0")]
    Vanishing,
    #[serde(rename = "c")]
    Convergent,
}

/// Descriptor of one concrete operator: variant, space, index base, and
/// weight.
///
/// Construction enforces `|w|^2 > 1` (exact rational comparison) and the
/// variant/space pairing: hat variants act on the convergent space over
/// the naturals, shift variants on the vanishing space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperatorSpec {
    pub variant: Variant,
    pub space: Space,
    pub base: IndexBase,
    #[serde(rename = "w")]
    pub weight: Scalar,
}

impl OperatorSpec {
    fn validate_weight(weight: &Scalar) -> Result<()> {
        if weight.abs_sq() <= BigRational::one() {
            return Err(Error::WeightNotExpanding(weight.to_string()));
        }
        Ok(())
    }

    pub fn bounded_shift(base: IndexBase, weight: Scalar) -> Result<Self> {
        Self::validate_weight(&weight)?;
        Ok(OperatorSpec {
            variant: Variant::BoundedShift,
            space: Space::Vanishing,
            base,
            weight,
        })
    }

    pub fn unbounded_shift(base: IndexBase, weight: Scalar) -> Result<Self> {
        Self::validate_weight(&weight)?;
        Ok(OperatorSpec {
            variant: Variant::UnboundedShift,
            space: Space::Vanishing,
            base,
            weight,
        })
    }

    pub fn bounded_hat(weight: Scalar) -> Result<Self> {
        Self::validate_weight(&weight)?;
        Ok(OperatorSpec {
            variant: Variant::BoundedHat,
            space: Space::Convergent,
            base: IndexBase::One,
            weight,
        })
    }

    pub fn unbounded_hat(weight: Scalar) -> Result<Self> {
        Self::validate_weight(&weight)?;
        Ok(OperatorSpec {
            variant: Variant::UnboundedHat,
            space: Space::Convergent,
            base: IndexBase::One,
            weight,
        })
    }

    pub fn weight_abs_sq(&self) -> BigRational {
        self.weight.abs_sq()
    }
}

/// Exact operator-norm value: the squared norm is always a rational power
/// of `|w|^2`; the log companion never overflows.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorNorm {
    pub power: u32,
    pub squared: BigRational,
    pub log_norm: f64,
}

impl OperatorNorm {
    fn from_squared(power: u32, squared: BigRational) -> Self {
        let log_norm = if squared.is_zero() {
            f64::NEG_INFINITY
        } else {
            0.5 * ratio_ln(&squared)
        };
        OperatorNorm {
            power,
            squared,
            log_norm,
        }
    }
}

/// Verdict of a domain-membership probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DomainVerdict {
    #[serde(rename = "in")]
    In,
    #[serde(rename = "out")]
    Out,
    #[serde(rename = "undecided")]
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DomainReason {
    /// Finitely supported inputs always have a finitely supported
    /// weighted image.
    FinitelySupported,
    /// The weighted image satisfied a strict-decay ratio bound from some
    /// index on.
    DecayCertified,
    /// The weighted image is sampled as entirely zero.
    EventuallyZero,
    /// The squared magnitudes of the weighted image never dropped over
    /// the latter part of the window.
    PersistentGrowth,
    /// The operator is bounded, so membership is unconditional.
    BoundedOperator,
    Inconclusive,
}

/// Outcome of a domain probe over a finite index window.
#[derive(Debug, Clone)]
pub struct DomainReport {
    pub verdict: DomainVerdict,
    pub reason: DomainReason,
    pub certificate: Option<DecayCertificate>,
    /// Index window `[lo, hi]` the probe examined.
    pub window: (i64, i64),
    /// Log-scale samples `(k, ln |g_k|^2)` of the weighted image,
    /// finite evidence for growth verdicts.
    pub log_samples: Vec<(i64, f64)>,
}

/// A weighted backward shift (bounded or unbounded) on the vanishing
/// space, over either index base.
#[derive(Debug, Clone)]
pub struct ShiftOp {
    spec: OperatorSpec,
}

impl ShiftOp {
    pub fn new(spec: OperatorSpec) -> Result<Self> {
        if !spec.variant.is_shift() {
            return Err(Error::VariantMismatch {
                expected: "backward shift",
                found: spec.variant.label(),
            });
        }
        Ok(ShiftOp { spec })
    }

    pub fn bounded(base: IndexBase, weight: Scalar) -> Result<Self> {
        ShiftOp::new(OperatorSpec::bounded_shift(base, weight)?)
    }

    pub fn unbounded(base: IndexBase, weight: Scalar) -> Result<Self> {
        ShiftOp::new(OperatorSpec::unbounded_shift(base, weight)?)
    }

    pub fn spec(&self) -> &OperatorSpec {
        &self.spec
    }

    pub fn base(&self) -> IndexBase {
        self.spec.base
    }

    pub fn weight(&self) -> &Scalar {
        &self.spec.weight
    }

    pub fn is_bounded(&self) -> bool {
        self.spec.variant.is_bounded()
    }

    fn check_base(&self, x: &FinSeq) -> Result<()> {
        x.check_base(self.spec.base)
    }

    /// Weight exponent of the n-th forward power at output index `k`:
    /// 0 for dispatch by the caller on the bounded variant, and
    /// `nk + n(n-1)/2` for the unbounded one.
    fn forward_exponent(&self, n: u32, k: i64) -> i64 {
        let n = n as i64;
        match self.spec.variant {
            Variant::BoundedShift => n,
            Variant::UnboundedShift => n * k + n * (n - 1) / 2,
            _ => unreachable!("ShiftOp holds a shift variant"),
        }
    }

    /// Weight exponent of the n-th right-inverse power at output index
    /// `k`: `-n` for the bounded variant, `-nk + n(n+1)/2` for the
    /// unbounded one.
    fn inverse_exponent(&self, n: u32, k: i64) -> i64 {
        let n = n as i64;
        match self.spec.variant {
            Variant::BoundedShift => -n,
            Variant::UnboundedShift => -n * k + n * (n + 1) / 2,
            _ => unreachable!("ShiftOp holds a shift variant"),
        }
    }

    /// One application of the shift.
    pub fn apply(&self, x: &FinSeq) -> Result<FinSeq> {
        self.check_base(x)?;
        let first = self.spec.base.first_index();
        let w = &self.spec.weight;
        let mut pairs = Vec::with_capacity(x.support_len());
        for (&k, v) in x.iter() {
            if k <= first {
                continue; // the lowest entry has no landing index
            }
            let weight = match self.spec.variant {
                Variant::BoundedShift => w.clone(),
                Variant::UnboundedShift => w.powi(k - 1)?,
                _ => unreachable!(),
            };
            pairs.push((k - 1, &weight * v));
        }
        FinSeq::from_entries(self.spec.base, pairs)
    }

    /// Closed-form n-th power. Agrees with n-fold [`ShiftOp::apply`]
    /// exactly; the iterated path is kept separate as a test oracle.
    pub fn apply_power(&self, n: u32, x: &FinSeq) -> Result<FinSeq> {
        self.check_base(x)?;
        if n == 0 {
            return Ok(x.clone());
        }
        let first = self.spec.base.first_index();
        let mut pairs = Vec::with_capacity(x.support_len());
        for (&k, v) in x.iter() {
            let out = k - n as i64;
            if out < first {
                continue;
            }
            let weight = self.spec.weight.powi(self.forward_exponent(n, out))?;
            pairs.push((out, &weight * v));
        }
        FinSeq::from_entries(self.spec.base, pairs)
    }

    /// One application of the right inverse `B` (missing index reads as
    /// zero). `A(Bx) = x` holds exactly; `B` is not a left inverse.
    pub fn right_inverse(&self, x: &FinSeq) -> Result<FinSeq> {
        self.check_base(x)?;
        let w = &self.spec.weight;
        let mut pairs = Vec::with_capacity(x.support_len());
        for (&k, v) in x.iter() {
            let weight = match self.spec.variant {
                Variant::BoundedShift => w.powi(-1)?,
                Variant::UnboundedShift => w.powi(-k)?,
                _ => unreachable!(),
            };
            pairs.push((k + 1, &weight * v));
        }
        FinSeq::from_entries(self.spec.base, pairs)
    }

    /// Closed-form n-th power of the right inverse.
    pub fn right_inverse_power(&self, n: u32, x: &FinSeq) -> Result<FinSeq> {
        self.check_base(x)?;
        if n == 0 {
            return Ok(x.clone());
        }
        let mut pairs = Vec::with_capacity(x.support_len());
        for (&k, v) in x.iter() {
            let out = k + n as i64;
            let weight = self.spec.weight.powi(self.inverse_exponent(n, out))?;
            pairs.push((out, &weight * v));
        }
        FinSeq::from_entries(self.spec.base, pairs)
    }

    /// Exact operator norm of the n-th right-inverse power.
    ///
    /// Squared values: `|w|^(-2n)` for the bounded variant,
    /// `|w|^(-n(n+1))` for the unbounded variant over the naturals and
    /// `|w|^(-n(n-1))` over the nonnegative integers.
    pub fn right_inverse_norm(&self, n: u32) -> OperatorNorm {
        let n_i = n as i64;
        let exponent = match (self.spec.variant, self.spec.base) {
            (Variant::BoundedShift, _) => -n_i,
            (Variant::UnboundedShift, IndexBase::One) => -n_i * (n_i + 1) / 2,
            (Variant::UnboundedShift, IndexBase::Zero) => -n_i * (n_i - 1) / 2,
            _ => unreachable!(),
        };
        let squared = ratio_pow(&self.spec.weight_abs_sq(), 2 * exponent)
            .expect("|w|^2 > 1 is never zero");
        OperatorNorm::from_squared(n, squared)
    }

    /// Unboundedness witness for the unbounded shift over the naturals:
    /// the exact norm of the n-th power applied to the basis vector at
    /// index `n + m`, namely `|w|^(nm + n(n-1)/2)`, which grows without
    /// bound in `m`. The closed form is cross-checked against the power
    /// formula on the basis vector before being returned.
    pub fn growth_witness(&self, n: u32, m: i64) -> Result<OperatorNorm> {
        if self.spec.variant != Variant::UnboundedShift || self.spec.base != IndexBase::One {
            return Err(Error::VariantMismatch {
                expected: "unbounded shift over the naturals",
                found: self.spec.variant.label(),
            });
        }
        if n == 0 || m < 1 {
            return Err(Error::Parse(
                "growth witness needs n >= 1 and m >= 1".into(),
            ));
        }
        let n_i = n as i64;
        let exponent = n_i * m + n_i * (n_i - 1) / 2;
        let squared = ratio_pow(&self.spec.weight_abs_sq(), exponent)?;
        let basis = FinSeq::basis(self.spec.base, n_i + m)?;
        let image = self.apply_power(n, &basis)?;
        assert_eq!(
            image.sup_norm().squared,
            squared,
            "closed-form witness must match the power formula on e_(n+m)"
        );
        Ok(OperatorNorm::from_squared(n, squared))
    }

    /// Membership probe for the domain of the n-th power of the
    /// unbounded shift: does the weighted image lie in the vanishing
    /// space?
    ///
    /// Finitely supported inputs are always members. Formula inputs are
    /// probed over `[first, horizon]`: a strict-decay tail yields `In`
    /// with an inherited certificate, squared magnitudes that never drop
    /// over the latter half of the window yield `Out`, anything else is
    /// `Undecided`.
    pub fn domain_membership(&self, n: u32, x: SeqView<'_>, horizon: i64) -> Result<DomainReport> {
        let first = self.spec.base.first_index();
        if self.spec.variant == Variant::BoundedShift {
            return Ok(DomainReport {
                verdict: DomainVerdict::In,
                reason: DomainReason::BoundedOperator,
                certificate: None,
                window: (first, horizon),
                log_samples: Vec::new(),
            });
        }
        match x {
            SeqView::Fin(f) => {
                self.check_base(f)?;
                Ok(DomainReport {
                    verdict: DomainVerdict::In,
                    reason: DomainReason::FinitelySupported,
                    certificate: None,
                    window: (first, horizon),
                    log_samples: Vec::new(),
                })
            }
            SeqView::Formula(f) => {
                if f.base() != self.spec.base {
                    return Err(Error::BaseMismatch {
                        expected: self.spec.base,
                        found: f.base(),
                    });
                }
                let vals = f.values_upto(horizon + n as i64);
                let mut image_sq = Vec::with_capacity((horizon - first + 1).max(0) as usize);
                // track w^(forward exponent) incrementally: consecutive
                // output indices differ by a factor w^n
                let abs_w_sq = self.spec.weight_abs_sq();
                let step = ratio_pow(&abs_w_sq, n as i64)?;
                let mut weight_sq = ratio_pow(&abs_w_sq, self.forward_exponent(n, first))?;
                for k in first..=horizon {
                    let src = ((k + n as i64) - first) as usize;
                    image_sq.push(&weight_sq * &vals[src].abs_sq());
                    weight_sq = &weight_sq * &step;
                }
                Ok(decay_scan(&image_sq, first, horizon))
            }
        }
    }
}

/// Borrowed view over either sequence representation.
#[derive(Debug, Clone, Copy)]
pub enum SeqView<'a> {
    Fin(&'a FinSeq),
    Formula(&'a FormulaSeq),
}

/// Classify a window of exact squared magnitudes: strict decay from some
/// index on, persistent non-decay, or neither.
pub(crate) fn decay_scan(values_sq: &[BigRational], first: i64, horizon: i64) -> DomainReport {
    let window = (first, horizon);
    if values_sq.len() < 2 {
        return DomainReport {
            verdict: DomainVerdict::Undecided,
            reason: DomainReason::Inconclusive,
            certificate: None,
            window,
            log_samples: Vec::new(),
        };
    }
    if values_sq.iter().all(Zero::is_zero) {
        return DomainReport {
            verdict: DomainVerdict::In,
            reason: DomainReason::EventuallyZero,
            certificate: None,
            window,
            log_samples: Vec::new(),
        };
    }

    // Walk backwards to find the longest suffix of strictly-decaying
    // ratios (a zero followed by a nonzero value breaks the suffix).
    let len = values_sq.len();
    let mut decay_start = len - 1;
    let mut ratio_bound = BigRational::zero();
    while decay_start > 0 {
        let prev = &values_sq[decay_start - 1];
        let cur = &values_sq[decay_start];
        if prev.is_zero() {
            if cur.is_zero() {
                decay_start -= 1;
                continue;
            }
            break;
        }
        let ratio = cur / prev;
        if ratio >= BigRational::one() {
            break;
        }
        if ratio > ratio_bound {
            ratio_bound = ratio;
        }
        decay_start -= 1;
    }
    let decay_suffix = len - decay_start;
    if decay_start == 0 || (decay_suffix >= 2 && decay_suffix * 2 >= len) {
        let start = first + decay_start as i64;
        let certificate = DecayCertificate::new(start, 1, ratio_bound)
            .expect("scanned ratios are below one");
        return DomainReport {
            verdict: DomainVerdict::In,
            reason: DomainReason::DecayCertified,
            certificate: Some(certificate),
            window,
            log_samples: Vec::new(),
        };
    }

    // Walk backwards for a suffix that never decays.
    let mut grow_start = len - 1;
    while grow_start > 0 {
        let prev = &values_sq[grow_start - 1];
        let cur = &values_sq[grow_start];
        if prev.is_zero() || cur < prev {
            break;
        }
        grow_start -= 1;
    }
    let suffix_len = len - grow_start;
    if !values_sq[grow_start].is_zero() && suffix_len >= 2 && suffix_len * 2 >= len {
        let sample_at = |i: usize| {
            let v = &values_sq[i];
            (first + i as i64, ratio_ln(v))
        };
        let log_samples = vec![
            sample_at(grow_start),
            sample_at(grow_start + suffix_len / 2),
            sample_at(len - 1),
        ];
        return DomainReport {
            verdict: DomainVerdict::Out,
            reason: DomainReason::PersistentGrowth,
            certificate: None,
            window,
            log_samples,
        };
    }

    DomainReport {
        verdict: DomainVerdict::Undecided,
        reason: DomainReason::Inconclusive,
        certificate: None,
        window,
        log_samples: Vec::new(),
    }
}
