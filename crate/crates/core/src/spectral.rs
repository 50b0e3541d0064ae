//! Eigenvectors with exact residuals, spectrum classification, and
//! brute-force operator-norm oracles.
//!
//! For the unbounded shift every scalar `lambda` is an eigenvalue with a
//! one-dimensional kernel spanned by
//!
//! ```text
//! y_k = lambda^(k - b) / w^(k(k-1)/2),    y_b = 1,
//! ```
//!
//! (`b` the first index, `0^0 = 1`), which satisfies `w^k y_{k+1} =
//! lambda y_k` at every index. For the bounded shift the point spectrum
//! is the open disk `|lambda| < |w|` with geometric eigenvectors
//! `(lambda/w)^(k-b)`; the circle `|lambda| = |w|` is continuous
//! spectrum and the exterior is resolvent. Residual spectrum never
//! occurs for these operators. Conjugated (hat) variants inherit the
//! same classification with kernels transported through the
//! isomorphism.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::conjugacy::{from_coords_formula, FormulaConv};
use crate::error::{Error, Result};
use crate::scalar::{ratio_ln, ratio_pow, Field, Scalar};
use crate::seq::{DecayCertificate, FinSeq, FormulaSeq, IndexBase};
use crate::shift::{OperatorSpec, ShiftOp, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectrumClass {
    #[serde(rename = "point")]
    Point,
    #[serde(rename = "continuous")]
    Continuous,
    #[serde(rename = "residual")]
    Residual,
    #[serde(rename = "resolvent")]
    Resolvent,
}

impl SpectrumClass {
    pub fn label(self) -> &'static str {
        match self {
            SpectrumClass::Point => "point",
            SpectrumClass::Continuous => "continuous",
            SpectrumClass::Residual => "residual",
            SpectrumClass::Resolvent => "resolvent",
        }
    }
}

/// A kernel basis vector, living in whichever space the operator acts on.
#[derive(Debug, Clone)]
pub enum KernelVector {
    Vanishing(FormulaSeq),
    Convergent(FormulaConv),
}

#[derive(Debug, Clone)]
pub struct SpectrumVerdict {
    pub lambda: Scalar,
    pub class: SpectrumClass,
    pub kernel: Option<KernelVector>,
    pub multiplicity: Option<u32>,
}

/// Classification result; the real field only supports the
/// eigenvalue/not-eigenvalue question.
#[derive(Debug, Clone)]
pub enum Classification {
    Full(SpectrumVerdict),
    EigenvalueOnly {
        lambda: Scalar,
        is_eigenvalue: bool,
        kernel: Option<KernelVector>,
    },
}

/// Eigenvector of the unbounded shift for an arbitrary scalar, normalized
/// to 1 at the first index. Satisfies the eigen-equation exactly at every
/// index and carries a decay certificate with ratio at most 1/4.
pub fn eigenvector_unbounded(op: &ShiftOp, lambda: &Scalar) -> Result<FormulaSeq> {
    if op.spec().variant != Variant::UnboundedShift {
        return Err(Error::VariantMismatch {
            expected: "unbounded shift",
            found: op.spec().variant.label(),
        });
    }
    let base = op.base();
    let b = base.first_index();
    let w = op.weight().clone();
    let lam = lambda.clone();
    let eval = {
        let (w, lam) = (w.clone(), lam.clone());
        move |k: i64| {
            let t = k * (k - 1) / 2;
            let num = lam.powi(k - b).expect("nonnegative exponent");
            let den = w.powi(-t).expect("|w| > 1 is never zero");
            &num * &den
        }
    };
    let prefix = {
        let (w, lam) = (w.clone(), lam.clone());
        move |k_max: i64| {
            // recurrence y_{k+1} = y_k * lambda / w^k
            let w_inv = w.recip().expect("|w| > 1 is never zero");
            let mut wk_inv = w_inv.powi(b).expect("nonnegative exponent");
            let mut cur = Scalar::one();
            let mut out = Vec::with_capacity((k_max - b + 1).max(0) as usize);
            for _k in b..=k_max {
                out.push(cur.clone());
                cur = &(&cur * &lam) * &wk_inv;
                wk_inv = &wk_inv * &w_inv;
            }
            out
        }
    };
    // |y_{k+1}|^2 / |y_k|^2 = |lambda|^2 / |w|^(2k) <= 1/4 from the first
    // k with |w|^(2k) >= 4 |lambda|^2; the ratio only shrinks afterwards.
    let lam_sq = lambda.abs_sq();
    let w_sq = op.spec().weight_abs_sq();
    let quarter_target = BigRational::from_integer(4.into()) * &lam_sq;
    let mut k0 = b;
    let mut w_pow = ratio_pow(&w_sq, b)?;
    while w_pow < quarter_target {
        k0 += 1;
        w_pow = &w_pow * &w_sq;
    }
    let ratio_sq = &lam_sq / &w_pow;
    let cert = DecayCertificate::new(k0, 1, ratio_sq)?;
    Ok(FormulaSeq::new(base, eval)
        .with_prefix(prefix)
        .with_decay(cert))
}

/// Geometric eigenvector of the bounded shift for `|lambda| < |w|`,
/// normalized to 1 at the first index. Scalars on or outside the circle
/// of radius `|w|` are rejected with their spectral region.
pub fn eigenvector_bounded(op: &ShiftOp, lambda: &Scalar) -> Result<FormulaSeq> {
    if op.spec().variant != Variant::BoundedShift {
        return Err(Error::VariantMismatch {
            expected: "bounded shift",
            found: op.spec().variant.label(),
        });
    }
    let lam_sq = lambda.abs_sq();
    let w_sq = op.spec().weight_abs_sq();
    if lam_sq >= w_sq {
        return Err(Error::NotAnEigenvalue {
            lambda: lambda.to_string(),
            region: if lam_sq == w_sq {
                "continuous-spectrum"
            } else {
                "resolvent"
            },
        });
    }
    let base = op.base();
    let b = base.first_index();
    let ratio = lambda.checked_div(op.weight())?;
    let ratio_sq = &lam_sq / &w_sq;
    let eval = {
        let ratio = ratio.clone();
        move |k: i64| ratio.powi(k - b).expect("nonnegative exponent")
    };
    let prefix = move |k_max: i64| {
        let mut cur = Scalar::one();
        let mut out = Vec::with_capacity((k_max - b + 1).max(0) as usize);
        for _k in b..=k_max {
            out.push(cur.clone());
            cur = &cur * &ratio;
        }
        out
    };
    let cert = DecayCertificate::new(b, 1, ratio_sq)?;
    Ok(FormulaSeq::new(base, eval)
        .with_prefix(prefix)
        .with_decay(cert))
}

/// Exact eigen-residual report over a finite horizon.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    /// `max_{k <= horizon} |(A y)_k - lambda y_k|^2`, exact.
    pub max_residual_sq: BigRational,
    /// The zero vector trivially solves the eigen-equation but is not an
    /// eigenvector; flagged so callers can reject it.
    pub zero_vector: bool,
}

pub fn eigen_residual(
    op: &ShiftOp,
    lambda: &Scalar,
    y: &FormulaSeq,
    horizon: i64,
) -> Result<ResidualReport> {
    if y.base() != op.base() {
        return Err(Error::BaseMismatch {
            expected: op.base(),
            found: y.base(),
        });
    }
    let b = op.base().first_index();
    let vals = y.values_upto(horizon + 1);
    let zero_vector = vals.iter().all(Scalar::is_zero);
    let w = op.weight();
    let bounded = op.is_bounded();
    let mut wk = w.powi(b).expect("nonnegative exponent");
    let mut max_residual_sq = BigRational::zero();
    for k in b..=horizon {
        let idx = (k - b) as usize;
        let weight = if bounded { w.clone() } else { wk.clone() };
        let image = &weight * &vals[idx + 1];
        let r = (&image - &(lambda * &vals[idx])).abs_sq();
        if r > max_residual_sq {
            max_residual_sq = r;
        }
        if !bounded {
            wk = &wk * w;
        }
    }
    Ok(ResidualReport {
        max_residual_sq,
        zero_vector,
    })
}

/// Classify a scalar against the operator's spectrum.
///
/// Complex field: the full point/continuous/residual/resolvent partition
/// (residual never occurs for these operators). Real field: only the
/// eigenvalue question is meaningful, and both the weight and the probe
/// scalar must be real.
pub fn classify(spec: &OperatorSpec, lambda: &Scalar, field: Field) -> Result<Classification> {
    if field == Field::Real {
        if !spec.weight.is_real() {
            return Err(Error::ComplexValueInRealMode(spec.weight.to_string()));
        }
        if !lambda.is_real() {
            return Err(Error::ComplexValueInRealMode(lambda.to_string()));
        }
    }
    let lam_sq = lambda.abs_sq();
    let w_sq = spec.weight_abs_sq();
    let is_point = match spec.variant {
        Variant::BoundedShift | Variant::BoundedHat => lam_sq < w_sq,
        Variant::UnboundedShift | Variant::UnboundedHat => true,
    };
    let kernel = if is_point {
        Some(kernel_vector(spec, lambda)?)
    } else {
        None
    };
    if field == Field::Real {
        return Ok(Classification::EigenvalueOnly {
            lambda: lambda.clone(),
            is_eigenvalue: is_point,
            kernel,
        });
    }
    let class = if is_point {
        SpectrumClass::Point
    } else if lam_sq == w_sq {
        SpectrumClass::Continuous
    } else {
        SpectrumClass::Resolvent
    };
    Ok(Classification::Full(SpectrumVerdict {
        lambda: lambda.clone(),
        class,
        multiplicity: if is_point { Some(1) } else { None },
        kernel,
    }))
}

fn kernel_vector(spec: &OperatorSpec, lambda: &Scalar) -> Result<KernelVector> {
    match spec.variant {
        Variant::BoundedShift => {
            let op = ShiftOp::new(spec.clone())?;
            Ok(KernelVector::Vanishing(eigenvector_bounded(&op, lambda)?))
        }
        Variant::UnboundedShift => {
            let op = ShiftOp::new(spec.clone())?;
            Ok(KernelVector::Vanishing(eigenvector_unbounded(&op, lambda)?))
        }
        Variant::BoundedHat => {
            let op = ShiftOp::bounded(IndexBase::Zero, spec.weight.clone())?;
            let y = eigenvector_bounded(&op, lambda)?;
            Ok(KernelVector::Convergent(from_coords_formula(&y)?))
        }
        Variant::UnboundedHat => {
            let op = ShiftOp::unbounded(IndexBase::Zero, spec.weight.clone())?;
            let y = eigenvector_unbounded(&op, lambda)?;
            Ok(KernelVector::Convergent(from_coords_formula(&y)?))
        }
    }
}

/// Which operator path a brute-force norm probe follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorPath {
    /// n-th power of the shift itself.
    Forward(u32),
    /// n-th power of its right inverse.
    Inverse(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceNorm {
    pub squared: BigRational,
    pub attained_at: i64,
}

/// Brute-force norm oracle: the exact max of `||Op e_m||^2` over basis
/// vectors up to the horizon. For these diagonally weighted shifts the
/// sup over basis vectors attains the operator norm.
pub fn opnorm_bruteforce(op: &ShiftOp, path: OperatorPath, horizon: i64) -> Result<BruteForceNorm> {
    let first = op.base().first_index();
    assert!(horizon >= first, "horizon must reach the first index");
    let mut best = BigRational::zero();
    let mut attained_at = first;
    for m in first..=horizon {
        let e_m = FinSeq::basis(op.base(), m)?;
        let image = match path {
            OperatorPath::Forward(n) => op.apply_power(n, &e_m)?,
            OperatorPath::Inverse(n) => op.right_inverse_power(n, &e_m)?,
        };
        let sq = image.sup_norm().squared;
        if sq > best {
            best = sq;
            attained_at = m;
        }
    }
    Ok(BruteForceNorm {
        squared: best,
        attained_at,
    })
}

/// One row of the quasinilpotence table: `||B^n||^(1/n) = |w|^exponent`
/// held as an exact rational exponent of `|w|`.
#[derive(Debug, Clone)]
pub struct QuasinilpotenceRow {
    pub n: u32,
    /// Exact exponent: `-(n+1)/2` over the naturals, `-(n-1)/2` over the
    /// nonnegative integers.
    pub exponent: BigRational,
    /// `ln ||B^n||^(1/n)`, the float companion.
    pub log_root: f64,
    /// Exact squared norm `||B^n||^2` backing the row.
    pub norm_squared: BigRational,
}

/// Table of n-th root norms of right-inverse powers, witnessing spectral
/// radius zero: the exponent column is strictly decreasing and unbounded
/// below.
pub fn quasinilpotence_table(op: &ShiftOp, n_max: u32) -> Result<Vec<QuasinilpotenceRow>> {
    if op.spec().variant != Variant::UnboundedShift {
        return Err(Error::VariantMismatch {
            expected: "unbounded shift",
            found: op.spec().variant.label(),
        });
    }
    let ln_w = 0.5 * ratio_ln(&op.spec().weight_abs_sq());
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let norm = op.right_inverse_norm(n);
        // ||B^n||^2 = (|w|^2)^E  =>  ||B^n||^(1/n) = |w|^(E/n)
        let e = match op.base() {
            IndexBase::One => -(n as i64) * (n as i64 + 1) / 2,
            IndexBase::Zero => -(n as i64) * (n as i64 - 1) / 2,
        };
        let exponent = BigRational::new(e.into(), (n as i64).into());
        let exponent_f = exponent.to_f64().expect("small exponent fits f64");
        rows.push(QuasinilpotenceRow {
            n,
            log_root: exponent_f * ln_w,
            exponent,
            norm_squared: norm.squared,
        });
    }
    Ok(rows)
}
