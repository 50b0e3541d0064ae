//! The homeomorphic isomorphism between the convergent-sequence space
//! over the naturals and the vanishing-sequence space over the
//! nonnegative integers, together with the conjugated operators it
//! transports.
//!
//! Forward direction `J`: position 0 holds the limit, position k the
//! deviation at k (the Schauder coordinates). Inverse `J^{-1}`: limit
//! `y_0`, deviation `y_k`. Both are exact on the model and satisfy
//! `||Jx||^2 <= 4 ||x||^2`.
//!
//! A hat operator is defined as the conjugate `J^{-1} A J` of a backward
//! shift over the nonnegative integers. Closed forms:
//!
//! - bounded:   limit `w^n d_n`, deviation `d'_k = w^n d_{k+n}`
//! - unbounded: limit `w^(n(n-1)/2) d_n`, deviation
//!   `d'_k = w^(nk + n(n-1)/2) d_{k+n}`
//!
//! where `d` is the deviation of the input. [`conjugation_witness`]
//! recomputes a hat power through the isomorphism and reports exact
//! equality of the two routes.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seq::{schauder_coords, ConvSeq, FinSeq, FormulaSeq, IndexBase};
use crate::shift::{
    decay_scan, DomainReason, DomainReport, DomainVerdict, OperatorSpec, ShiftOp, Variant,
};

/// The isomorphism: Schauder coordinates of a convergent sequence,
/// indexed over the nonnegative integers.
pub fn to_coords(x: &ConvSeq) -> FinSeq {
    schauder_coords(x)
}

/// The inverse isomorphism: `y` maps to the sequence `(y_k + y_0)` over
/// the naturals, i.e. limit `y_0` and deviation `y_k`.
pub fn from_coords(y: &FinSeq) -> Result<ConvSeq> {
    y.check_base(IndexBase::Zero)?;
    let limit = y.get(0);
    let deviation = FinSeq::from_entries(
        IndexBase::One,
        y.iter().filter(|(k, _)| **k >= 1).map(|(k, v)| (*k, v.clone())),
    )?;
    ConvSeq::new(limit, deviation)
}

/// A convergent-space element whose deviation is formula-defined;
/// the counterpart of [`ConvSeq`] for infinite-support objects.
#[derive(Debug, Clone)]
pub struct FormulaConv {
    limit: Scalar,
    deviation: FormulaSeq,
}

impl FormulaConv {
    pub fn new(limit: Scalar, deviation: FormulaSeq) -> Result<Self> {
        if deviation.base() != IndexBase::One {
            return Err(Error::BaseMismatch {
                expected: IndexBase::One,
                found: deviation.base(),
            });
        }
        Ok(FormulaConv { limit, deviation })
    }

    pub fn limit(&self) -> &Scalar {
        &self.limit
    }

    pub fn deviation(&self) -> &FormulaSeq {
        &self.deviation
    }

    pub fn entry(&self, k: i64) -> Scalar {
        &self.limit + &self.deviation.eval(k)
    }
}

/// Transport a formula sequence over the nonnegative integers through the
/// inverse isomorphism: limit `y_0`, deviation `k -> y_k`.
pub fn from_coords_formula(y: &FormulaSeq) -> Result<FormulaConv> {
    if y.base() != IndexBase::Zero {
        return Err(Error::BaseMismatch {
            expected: IndexBase::Zero,
            found: y.base(),
        });
    }
    let limit = y.eval(0);
    let point = y.clone();
    let batch = y.clone();
    let mut deviation = FormulaSeq::new(IndexBase::One, move |k| point.eval(k)).with_prefix(
        move |k_max| {
            let mut vals = batch.values_upto(k_max);
            vals.remove(0);
            vals
        },
    );
    if let Some(cert) = y.decay() {
        let mut cert = cert.clone();
        cert.start = cert.start.max(1);
        deviation = deviation.with_decay(cert);
    }
    FormulaConv::new(limit, deviation)
}

/// A conjugated operator on the convergent space.
#[derive(Debug, Clone)]
pub struct HatOp {
    spec: OperatorSpec,
}

impl HatOp {
    pub fn new(spec: OperatorSpec) -> Result<Self> {
        if spec.variant.is_shift() {
            return Err(Error::VariantMismatch {
                expected: "conjugated (hat) operator",
                found: spec.variant.label(),
            });
        }
        Ok(HatOp { spec })
    }

    pub fn bounded(weight: Scalar) -> Result<Self> {
        HatOp::new(OperatorSpec::bounded_hat(weight)?)
    }

    pub fn unbounded(weight: Scalar) -> Result<Self> {
        HatOp::new(OperatorSpec::unbounded_hat(weight)?)
    }

    pub fn spec(&self) -> &OperatorSpec {
        &self.spec
    }

    pub fn weight(&self) -> &Scalar {
        &self.spec.weight
    }

    pub fn is_bounded(&self) -> bool {
        self.spec.variant.is_bounded()
    }

    /// The backward shift over the nonnegative integers this operator is
    /// conjugate to.
    pub fn conjugate_shift(&self) -> ShiftOp {
        let spec = if self.is_bounded() {
            OperatorSpec::bounded_shift(IndexBase::Zero, self.spec.weight.clone())
        } else {
            OperatorSpec::unbounded_shift(IndexBase::Zero, self.spec.weight.clone())
        };
        ShiftOp::new(spec.expect("weight already validated")).expect("shift variant")
    }

    /// Deviation-weight exponent of the n-th power at output index `k`.
    fn forward_exponent(&self, n: u32, k: i64) -> i64 {
        let n = n as i64;
        if self.is_bounded() {
            n
        } else {
            n * k + n * (n - 1) / 2
        }
    }

    /// Limit-weight exponent of the n-th power: n for the bounded
    /// operator, n(n-1)/2 for the unbounded one.
    fn limit_exponent(&self, n: u32) -> i64 {
        let n = n as i64;
        if self.is_bounded() {
            n
        } else {
            n * (n - 1) / 2
        }
    }

    pub fn apply(&self, x: &ConvSeq) -> ConvSeq {
        self.apply_power(1, x)
    }

    /// Closed-form n-th power on the limit-plus-deviation model.
    pub fn apply_power(&self, n: u32, x: &ConvSeq) -> ConvSeq {
        if n == 0 {
            return x.clone();
        }
        let w = &self.spec.weight;
        let d = x.deviation();
        let limit_weight = w
            .powi(self.limit_exponent(n))
            .expect("|w| > 1 is never zero");
        let limit = &limit_weight * &d.get(n as i64);
        let mut pairs = Vec::with_capacity(d.support_len());
        for (&k, v) in d.iter() {
            let out = k - n as i64;
            if out < 1 {
                continue;
            }
            let weight = w
                .powi(self.forward_exponent(n, out))
                .expect("|w| > 1 is never zero");
            pairs.push((out, &weight * v));
        }
        let deviation =
            FinSeq::from_entries(IndexBase::One, pairs).expect("shifted indices stay >= 1");
        ConvSeq::new(limit, deviation).expect("deviation lives over the naturals")
    }

    /// The limit of the n-th power image, computed from the entries of
    /// the input rather than its internal deviation: `w^n (x_n - l(x))`
    /// for the bounded operator and `w^(n(n-1)/2) (x_n - l(x))` for the
    /// unbounded one.
    pub fn power_limit(&self, n: u32, x: &ConvSeq) -> Scalar {
        assert!(n >= 1, "power_limit needs n >= 1");
        let gap = &x.entry(n as i64) - x.limit();
        let weight = self
            .spec
            .weight
            .powi(self.limit_exponent(n))
            .expect("|w| > 1 is never zero");
        &weight * &gap
    }

    /// Closed-form n-th power on a formula-backed element.
    pub fn apply_power_formula(&self, n: u32, x: &FormulaConv) -> FormulaConv {
        if n == 0 {
            return x.clone();
        }
        let w = self.spec.weight.clone();
        let limit_weight = w
            .powi(self.limit_exponent(n))
            .expect("|w| > 1 is never zero");
        let limit = &limit_weight * &x.deviation.eval(n as i64);
        let dev = x.deviation.clone();
        let dev_batch = x.deviation.clone();
        let bounded = self.is_bounded();
        let w_eval = w.clone();
        let eval = move |k: i64| {
            let exp = if bounded {
                n as i64
            } else {
                n as i64 * k + n as i64 * (n as i64 - 1) / 2
            };
            let weight = w_eval.powi(exp).expect("|w| > 1 is never zero");
            &weight * &dev.eval(k + n as i64)
        };
        let prefix = move |k_max: i64| {
            let vals = dev_batch.values_upto(k_max + n as i64);
            let mut weight = w
                .powi(if bounded {
                    n as i64
                } else {
                    n as i64 + n as i64 * (n as i64 - 1) / 2
                })
                .expect("|w| > 1 is never zero");
            let step = w.powi(n as i64).expect("|w| > 1 is never zero");
            let mut out = Vec::with_capacity(k_max.max(0) as usize);
            for k in 1..=k_max {
                let src = (k + n as i64 - 1) as usize;
                out.push(&weight * &vals[src]);
                if !bounded {
                    weight = &weight * &step;
                }
            }
            out
        };
        let deviation = FormulaSeq::new(IndexBase::One, eval).with_prefix(prefix);
        FormulaConv::new(limit, deviation).expect("deviation lives over the naturals")
    }

    /// Max pointwise squared residual of `(hat^n) x = x` over the limit
    /// and the first `horizon` indices.
    pub fn per_n_residual(&self, x: &FormulaConv, n: u32, horizon: i64) -> BigRational {
        assert!(n >= 1);
        let image = self.apply_power_formula(n, x);
        let mut max = (image.limit() - x.limit()).abs_sq();
        let img_vals = image.deviation.values_upto(horizon);
        let x_vals = x.deviation.values_upto(horizon);
        for (img, orig) in img_vals.iter().zip(&x_vals) {
            let r = (img - orig).abs_sq();
            if r > max {
                max = r;
            }
        }
        max
    }

    /// Max pointwise squared residual of the eigen-equation
    /// `(hat) v = lambda v` over the limit and the first `horizon`
    /// indices.
    pub fn eigen_residual(&self, lambda: &Scalar, v: &FormulaConv, horizon: i64) -> BigRational {
        let image = self.apply_power_formula(1, v);
        let mut max = (image.limit() - &(lambda * v.limit())).abs_sq();
        let img_vals = image.deviation.values_upto(horizon);
        let v_vals = v.deviation.values_upto(horizon);
        for (img, orig) in img_vals.iter().zip(&v_vals) {
            let r = (img - &(lambda * orig)).abs_sq();
            if r > max {
                max = r;
            }
        }
        max
    }

    /// Domain probe for the n-th power: the weighted deviation image must
    /// vanish. Bounded hats are everywhere defined; on the model every
    /// exact element is a member, so this is only meaningful for
    /// formula-backed elements.
    pub fn domain_membership(&self, n: u32, x: &FormulaConv, horizon: i64) -> DomainReport {
        if self.is_bounded() {
            return DomainReport {
                verdict: DomainVerdict::In,
                reason: DomainReason::BoundedOperator,
                certificate: None,
                window: (1, horizon),
                log_samples: Vec::new(),
            };
        }
        let vals = x.deviation.values_upto(horizon + n as i64);
        let abs_w_sq = self.spec.weight_abs_sq();
        let step = crate::scalar::ratio_pow(&abs_w_sq, n as i64).expect("nonzero weight");
        let mut weight_sq = crate::scalar::ratio_pow(&abs_w_sq, self.forward_exponent(n, 1))
            .expect("nonzero weight");
        let mut image_sq = Vec::with_capacity(horizon.max(0) as usize);
        for k in 1..=horizon {
            let src = (k + n as i64 - 1) as usize;
            image_sq.push(&weight_sq * &vals[src].abs_sq());
            weight_sq = &weight_sq * &step;
        }
        decay_scan(&image_sq, 1, horizon)
    }
}

/// Both routes to the n-th power image of a hat operator: the closed form
/// on the model, and the conjugation route through the isomorphism.
#[derive(Debug, Clone)]
pub struct ConjugationWitness {
    pub input: ConvSeq,
    pub power: u32,
    pub closed_form: ConvSeq,
    pub via_isomorphism: ConvSeq,
    pub equal: bool,
}

pub fn conjugation_witness(hat: &HatOp, n: u32, x: &ConvSeq) -> ConjugationWitness {
    let closed_form = hat.apply_power(n, x);
    let shift = hat.conjugate_shift();
    let transported = shift
        .apply_power(n, &to_coords(x))
        .expect("coordinates live over the nonnegative integers");
    let via_isomorphism = from_coords(&transported).expect("transported coordinates");
    let equal = closed_form == via_isomorphism;
    ConjugationWitness {
        input: x.clone(),
        power: n,
        closed_form,
        via_isomorphism,
        equal,
    }
}
