//! Constructive chaos machinery: verifying the right-inverse and decay
//! hypotheses on random finitely supported vectors, building exact
//! periodic points of every period, exact orbit visits, and greedy
//! schedules that approximate a dense orbit with computed error bounds.
//!
//! Everything here is certificate-shaped: a result carries the exact
//! residuals that justify it, and the residuals are recomputed from the
//! constructed objects rather than from the construction's intent.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::sample;
use crate::scalar::{ratio_pow, Scalar};
use crate::seq::{DecayCertificate, FinSeq, FormulaSeq, IndexBase};
use crate::shift::{OperatorSpec, SeqView, ShiftOp};

/// Options for [`verify_scc`].
#[derive(Debug, Clone)]
pub struct SccOptions {
    /// Number of random sample vectors.
    pub samples: usize,
    /// Depth of the decay table per sample.
    pub n_max: u32,
    /// Support-extent bound of the random samples.
    pub max_extent: u32,
    /// Run against this power of the operator (1 = the operator itself);
    /// table row `n` then tabulates the `power * n`-th iterates.
    pub power: u32,
}

impl Default for SccOptions {
    fn default() -> Self {
        SccOptions {
            samples: 100,
            n_max: 20,
            max_extent: 12,
            power: 1,
        }
    }
}

/// A fitted geometric envelope `max(||A^n x||, ||B^n x||) <= c alpha^n`,
/// carried in squared form.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub alpha_sq: BigRational,
    pub c_sq: BigRational,
}

/// Decay table and fit for one sample vector.
#[derive(Debug, Clone)]
pub struct SccSampleRow {
    pub sample: FinSeq,
    /// `(n, ||A^(pn) x||^2, ||B^(pn) x||^2)` for the configured power p.
    pub table: Vec<(u32, BigRational, BigRational)>,
    pub fit: Option<DecayFit>,
}

/// Report on the two hypotheses of the sufficient condition for linear
/// chaos over a batch of dense-subspace samples: the right-inverse
/// identity holds exactly, and both iterate families decay under a
/// geometric envelope.
#[derive(Debug, Clone)]
pub struct SccReport {
    pub spec: OperatorSpec,
    pub power: u32,
    pub right_inverse_pass: bool,
    pub rows: Vec<SccSampleRow>,
    pub pass: bool,
}

/// Extract a geometric envelope from a decay table.
///
/// `alpha^2` is the largest consecutive ratio of `M_n = max(a_n, b_n)`
/// from `transient_end` on (skipping the initial rows where the forward
/// iterates have not yet annihilated the sample); `c^2` is then chosen to
/// dominate every tabulated row. Returns `None` when no ratio below one
/// exists, e.g. for the decay table of an isometry.
pub fn fit_decay(
    table: &[(u32, BigRational, BigRational)],
    transient_end: u32,
) -> Option<DecayFit> {
    if table.is_empty() {
        return None;
    }
    let peaks: Vec<BigRational> = table
        .iter()
        .map(|(_, a, b)| if a > b { a.clone() } else { b.clone() })
        .collect();
    if peaks.iter().all(Zero::is_zero) {
        // the zero vector: any envelope works
        return Some(DecayFit {
            alpha_sq: BigRational::new(1.into(), 4.into()),
            c_sq: BigRational::zero(),
        });
    }
    let start = table
        .iter()
        .position(|(n, _, _)| *n >= transient_end)
        .unwrap_or(0);
    if start + 1 >= peaks.len() {
        return None;
    }
    let mut alpha_sq = BigRational::zero();
    for i in start..peaks.len() - 1 {
        if peaks[i].is_zero() {
            return None; // nonzero vectors keep nonzero inverse iterates
        }
        let ratio = &peaks[i + 1] / &peaks[i];
        if ratio > alpha_sq {
            alpha_sq = ratio;
        }
    }
    if alpha_sq >= BigRational::one() || alpha_sq.is_zero() {
        return None;
    }
    let mut c_sq = BigRational::zero();
    for (i, peak) in peaks.iter().enumerate() {
        let n = table[i].0 as i64;
        let envelope = ratio_pow(&alpha_sq, n).expect("alpha > 0");
        let needed = peak / envelope;
        if needed > c_sq {
            c_sq = needed;
        }
    }
    Some(DecayFit { alpha_sq, c_sq })
}

/// Check the right-inverse identity and fit decay envelopes on random
/// dense-subspace samples.
pub fn verify_scc(op: &ShiftOp, rng: &mut impl Rng, opts: &SccOptions) -> Result<SccReport> {
    assert!(opts.power >= 1, "power must be at least 1");
    let mut right_inverse_pass = true;
    let mut rows = Vec::with_capacity(opts.samples);
    for _ in 0..opts.samples {
        let x = sample::nonzero_fin_seq(rng, op.base(), opts.max_extent);

        let round_trip = op.apply_power(opts.power, &op.right_inverse_power(opts.power, &x)?)?;
        if round_trip != x {
            right_inverse_pass = false;
        }

        let mut table = Vec::with_capacity(opts.n_max as usize);
        for n in 1..=opts.n_max {
            let steps = n * opts.power;
            let a_sq = op.apply_power(steps, &x)?.sup_norm().squared;
            let b_sq = op.right_inverse_power(steps, &x)?.sup_norm().squared;
            table.push((n, a_sq, b_sq));
        }
        let transient_end = x.support_extent().div_ceil(opts.power).max(1);
        let fit = fit_decay(&table, transient_end);
        rows.push(SccSampleRow {
            sample: x,
            table,
            fit,
        });
    }
    let pass = right_inverse_pass && rows.iter().all(|r| r.fit.is_some());
    Ok(SccReport {
        spec: op.spec().clone(),
        power: opts.power,
        right_inverse_pass,
        rows,
        pass,
    })
}

/// The decay table of the identity map on a given vector: the negative
/// control for [`fit_decay`]. Every row repeats `||x||^2`, so no
/// geometric envelope below one exists.
pub fn isometry_control_table(x: &FinSeq, n_max: u32) -> Vec<(u32, BigRational, BigRational)> {
    let sq = x.sup_norm().squared;
    (1..=n_max).map(|n| (n, sq.clone(), sq.clone())).collect()
}

/// An exact periodic point: a free prefix block extended by the weight
/// recurrence so that the period-th forward image reproduces the
/// sequence index by index.
#[derive(Debug, Clone)]
pub struct PeriodicPoint {
    spec: OperatorSpec,
    period: u32,
    prefix: FinSeq,
    seq: FormulaSeq,
    verified_upto: i64,
}

impl PeriodicPoint {
    pub fn spec(&self) -> &OperatorSpec {
        &self.spec
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn prefix(&self) -> &FinSeq {
        &self.prefix
    }

    pub fn seq(&self) -> &FormulaSeq {
        &self.seq
    }

    pub fn verified_upto(&self) -> i64 {
        self.verified_upto
    }

    /// The zero sequence is a fixed point of everything but never counts
    /// as a periodicity witness.
    pub fn is_nonzero(&self) -> bool {
        !self.prefix.is_zero()
    }
}

/// Weight exponent accumulated by stepping `q` whole periods of length
/// `n` down from anchor index `a` under the unbounded shift:
/// `sum_{i=0}^{q-1} (n (a + i n) + n(n-1)/2)`.
fn unbounded_block_exponent(a: i64, n: i64, q: i64) -> i64 {
    q * n * a + n * n * q * (q - 1) / 2 + q * n * (n - 1) / 2
}

/// Build the periodic point of the given period whose first block is
/// `prefix`. The recurrence divides by the period-length weight
/// product, so entries decay geometrically (bounded variant) or
/// super-geometrically (unbounded variant); the attached certificate
/// records the stride-`period` ratio bound. The periodicity identity is
/// re-verified pointwise up to `horizon` before returning.
pub fn build_periodic_point(
    op: &ShiftOp,
    prefix: &FinSeq,
    period: u32,
    horizon: i64,
) -> Result<PeriodicPoint> {
    prefix.check_base(op.base())?;
    if period == 0 {
        return Err(Error::PeriodTooShort {
            period,
            needed: 1,
        });
    }
    if prefix.support_extent() > period {
        return Err(Error::PeriodTooShort {
            period,
            needed: prefix.support_extent(),
        });
    }
    let base = op.base();
    let b = base.first_index();
    let n = period as i64;
    let w = op.weight().clone();
    let bounded = op.is_bounded();

    let eval = {
        let (prefix, w) = (prefix.clone(), w.clone());
        move |k: i64| {
            let t = k - b;
            let (q, r) = (t / n, t % n);
            let anchor = prefix.get(b + r);
            if anchor.is_zero() {
                return Scalar::zero();
            }
            let exp = if bounded {
                n * q
            } else {
                unbounded_block_exponent(b + r, n, q)
            };
            let weight = w.powi(-exp).expect("|w| > 1 is never zero");
            &weight * &anchor
        }
    };
    let prefix_eval = {
        let (prefix, w) = (prefix.clone(), w.clone());
        move |k_max: i64| {
            let len = (k_max - b + 1).max(0) as usize;
            let mut vals: Vec<Scalar> = Vec::with_capacity(len);
            for t in 0..len as i64 {
                if t < n {
                    vals.push(prefix.get(b + t));
                    continue;
                }
                let prev = &vals[(t - n) as usize];
                if prev.is_zero() {
                    vals.push(Scalar::zero());
                    continue;
                }
                // one period further down: divide by the block weight at
                // the source index
                let src = b + t - n;
                let exp = if bounded { n } else { n * src + n * (n - 1) / 2 };
                let weight = w.powi(-exp).expect("|w| > 1 is never zero");
                vals.push(&weight * prev);
            }
            vals
        }
    };

    let w_sq = op.spec().weight_abs_sq();
    let cert = if bounded {
        DecayCertificate::new(b, period, ratio_pow(&w_sq, -n)?)?
    } else {
        // the stride ratio |w|^(-2(nk + n(n-1)/2)) is largest at the
        // first index where the exponent is positive
        let start = b.max(1);
        let exp = n * start + n * (n - 1) / 2;
        DecayCertificate::new(start, period, ratio_pow(&w_sq, -exp)?)?
    };
    let seq = FormulaSeq::new(base, eval)
        .with_prefix(prefix_eval)
        .with_decay(cert);

    let check = per_n_membership(op, SeqView::Formula(&seq), period, horizon)?;
    assert!(
        check.holds,
        "period-{period} recurrence must reproduce itself exactly"
    );
    Ok(PeriodicPoint {
        spec: op.spec().clone(),
        period,
        prefix: prefix.clone(),
        seq,
        verified_upto: horizon,
    })
}

/// A periodic point within a prescribed distance of a target vector.
#[derive(Debug, Clone)]
pub struct DensityCertificate {
    pub point: PeriodicPoint,
    /// Exact `||point - target||^2`, the sup over the repeated tail.
    pub distance_sq: BigRational,
    pub tolerance_sq: BigRational,
}

/// Choose the smallest admissible period for which the periodic point
/// with prefix `target` lies within the tolerance of `target`, and build
/// it. The tail distance is computed exactly, never estimated.
pub fn periodic_density_demo(
    op: &ShiftOp,
    target: &FinSeq,
    tolerance_sq: &BigRational,
    horizon: i64,
) -> Result<DensityCertificate> {
    target.check_base(op.base())?;
    if tolerance_sq <= &BigRational::zero() && !target.is_zero() {
        return Err(Error::Parse("tolerance must be positive".into()));
    }
    let w_sq = op.spec().weight_abs_sq();
    let bounded = op.is_bounded();
    let tail_sq = |period: i64| -> BigRational {
        let mut worst = BigRational::zero();
        for (&a, v) in target.iter() {
            let exp = if bounded {
                period
            } else {
                a * period + period * (period - 1) / 2
            };
            let contribution =
                v.abs_sq() * ratio_pow(&w_sq, -exp).expect("|w| > 1 is never zero");
            if contribution > worst {
                worst = contribution;
            }
        }
        worst
    };
    let mut period = target.support_extent().max(1);
    while &tail_sq(period as i64) > tolerance_sq {
        period += 1;
    }
    let distance_sq = tail_sq(period as i64);
    let point = build_periodic_point(op, target, period, horizon)?;
    Ok(DensityCertificate {
        point,
        distance_sq,
        tolerance_sq: tolerance_sq.clone(),
    })
}

/// Outcome of a membership check in the kernel of `A^period - I` over a
/// finite index window.
#[derive(Debug, Clone)]
pub struct PeriodicCheck {
    pub holds: bool,
    pub max_residual_sq: BigRational,
}

/// Check `(A^period x - x)_k = 0` exactly for all indices up to the
/// horizon.
pub fn per_n_membership(
    op: &ShiftOp,
    x: SeqView<'_>,
    period: u32,
    horizon: i64,
) -> Result<PeriodicCheck> {
    assert!(period >= 1, "periods are positive");
    let b = op.base().first_index();
    let mut max_residual_sq = BigRational::zero();
    match x {
        SeqView::Fin(f) => {
            let image = op.apply_power(period, f)?;
            let diff = image.sub(f)?;
            for (&k, v) in diff.iter() {
                if k > horizon {
                    continue;
                }
                let r = v.abs_sq();
                if r > max_residual_sq {
                    max_residual_sq = r;
                }
            }
        }
        SeqView::Formula(f) => {
            if f.base() != op.base() {
                return Err(Error::BaseMismatch {
                    expected: op.base(),
                    found: f.base(),
                });
            }
            let n = period as i64;
            let vals = f.values_upto(horizon + n);
            let w = op.weight();
            let bounded = op.is_bounded();
            // forward weight at output index k, advanced by w^n per step
            let step = w.powi(n).expect("|w| > 1 is never zero");
            let mut weight = if bounded {
                step.clone()
            } else {
                w.powi(n * b + n * (n - 1) / 2)
                    .expect("|w| > 1 is never zero")
            };
            for k in b..=horizon {
                let idx = (k - b) as usize;
                let image = &weight * &vals[idx + period as usize];
                let r = (&image - &vals[idx]).abs_sq();
                if r > max_residual_sq {
                    max_residual_sq = r;
                }
                if !bounded {
                    weight = &weight * &step;
                }
            }
        }
    }
    Ok(PeriodicCheck {
        holds: max_residual_sq.is_zero(),
        max_residual_sq,
    })
}

/// An orbit-visit certificate: the vector `x0 + B^m z` lands exactly on
/// `z` after `m` forward steps up to the decaying trace of the seed.
#[derive(Debug, Clone)]
pub struct VisitCertificate {
    pub seed: FinSeq,
    pub target: FinSeq,
    pub step: u32,
    pub vector: FinSeq,
    /// `||A^m (x0 + B^m z) - z||^2`, exact; zero whenever the step
    /// clears the seed's support extent.
    pub residual_sq: BigRational,
    pub guaranteed_zero: bool,
}

pub fn orbit_visit(op: &ShiftOp, seed: &FinSeq, target: &FinSeq, step: u32) -> Result<VisitCertificate> {
    assert!(step >= 1, "orbit steps are positive");
    seed.check_base(op.base())?;
    target.check_base(op.base())?;
    let vector = seed.add(&op.right_inverse_power(step, target)?)?;
    let image = op.apply_power(step, &vector)?;
    let residual_sq = image.sub(target)?.sup_norm().squared;
    let guaranteed_zero = step >= seed.support_extent();
    if guaranteed_zero {
        assert!(
            residual_sq.is_zero(),
            "a step past the seed's support must land exactly"
        );
    }
    Ok(VisitCertificate {
        seed: seed.clone(),
        target: target.clone(),
        step,
        vector,
        residual_sq,
        guaranteed_zero,
    })
}

/// A finite schedule of orbit times visiting each target in turn within
/// the tolerance: the single vector `sum_j B^(m_j) z_j` passes within
/// `tolerance` of `z_j` at time `m_j`.
#[derive(Debug, Clone)]
pub struct HypercyclicSchedule {
    pub targets: Vec<FinSeq>,
    pub times: Vec<u32>,
    pub vector: FinSeq,
    /// `||A^(m_j) x - z_j||^2` per target, exact.
    pub residuals_sq: Vec<BigRational>,
    pub tolerance_sq: BigRational,
}

/// Greedy schedule construction: consecutive times are separated by at
/// least the support extent of the earlier target (so earlier terms
/// vanish under later iterates), and the separations are enlarged until
/// the exact contamination of every visit drops under the tolerance. The
/// decay of the right-inverse powers guarantees termination.
pub fn hypercyclic_schedule(
    op: &ShiftOp,
    targets: &[FinSeq],
    tolerance_sq: &BigRational,
) -> Result<HypercyclicSchedule> {
    if tolerance_sq <= &BigRational::zero() {
        return Err(Error::Parse("tolerance must be positive".into()));
    }
    for z in targets {
        z.check_base(op.base())?;
    }
    if targets.is_empty() {
        return Ok(HypercyclicSchedule {
            targets: Vec::new(),
            times: Vec::new(),
            vector: FinSeq::zero(op.base()),
            residuals_sq: Vec::new(),
            tolerance_sq: tolerance_sq.clone(),
        });
    }
    let base_gaps: Vec<u32> = targets
        .iter()
        .take(targets.len() - 1)
        .map(|z| z.support_extent().max(1))
        .collect();
    let mut extra: u32 = 0;
    loop {
        let mut times = Vec::with_capacity(targets.len());
        let mut t: u32 = 1;
        times.push(t);
        for gap in &base_gaps {
            t += gap + extra;
            times.push(t);
        }
        let mut vector = FinSeq::zero(op.base());
        for (z, m) in targets.iter().zip(&times) {
            vector = vector.add(&op.right_inverse_power(*m, z)?)?;
        }
        let mut residuals_sq = Vec::with_capacity(targets.len());
        for (z, m) in targets.iter().zip(&times) {
            let image = op.apply_power(*m, &vector)?;
            residuals_sq.push(image.sub(z)?.sup_norm().squared);
        }
        if residuals_sq.iter().all(|r| r <= tolerance_sq) {
            return Ok(HypercyclicSchedule {
                targets: targets.to_vec(),
                times,
                vector,
                residuals_sq,
                tolerance_sq: tolerance_sq.clone(),
            });
        }
        extra = (extra * 2).max(1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(p: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(den))
    }

    fn bounded2() -> ShiftOp {
        ShiftOp::bounded(IndexBase::One, Scalar::from_int(2)).unwrap()
    }

    fn unbounded2() -> ShiftOp {
        ShiftOp::unbounded(IndexBase::One, Scalar::from_int(2)).unwrap()
    }

    #[test]
    fn scc_passes_for_all_shift_variants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for op in [
            ShiftOp::bounded(IndexBase::One, Scalar::from_int(2)).unwrap(),
            ShiftOp::bounded(IndexBase::Zero, Scalar::rational(3, 2)).unwrap(),
            ShiftOp::unbounded(IndexBase::One, Scalar::from_int(2)).unwrap(),
            ShiftOp::unbounded(IndexBase::Zero, Scalar::rational(5, 2)).unwrap(),
        ] {
            let report = verify_scc(
                &op,
                &mut rng,
                &SccOptions {
                    samples: 25,
                    ..SccOptions::default()
                },
            )
            .unwrap();
            assert!(report.pass, "{:?} must pass", op.spec().variant);
            assert!(report.right_inverse_pass);
            for row in &report.rows {
                let fit = row.fit.as_ref().unwrap();
                assert!(fit.alpha_sq < BigRational::one());
                // the envelope really dominates the table
                for (n, a, b) in &row.table {
                    let envelope =
                        &fit.c_sq * ratio_pow(&fit.alpha_sq, *n as i64).unwrap();
                    assert!(a <= &envelope && b <= &envelope);
                }
            }
        }
    }

    #[test]
    fn scc_decay_examples_from_basis_vectors() {
        // bounded, sample e_5: forward iterates vanish from n = 5 on and
        // ||B^n e_5|| = 2^{-n}, so the fitted ratio is exactly 1/4 in
        // squared form
        let op = bounded2();
        let e5 = FinSeq::basis(IndexBase::One, 5).unwrap();
        let mut table = Vec::new();
        for n in 1..=12u32 {
            let a = op.apply_power(n, &e5).unwrap().sup_norm().squared;
            let b = op.right_inverse_power(n, &e5).unwrap().sup_norm().squared;
            if n >= 5 {
                assert!(a.is_zero());
            }
            assert_eq!(b, ratio_pow(&q(1, 4), n as i64).unwrap());
            table.push((n, a, b));
        }
        let fit = fit_decay(&table, 5).unwrap();
        assert_eq!(fit.alpha_sq, q(1, 4));

        // unbounded, sample e_1: ||B^n e_1||^2 = 2^{-n(n+1)}
        let op = unbounded2();
        let e1 = FinSeq::basis(IndexBase::One, 1).unwrap();
        for n in 1..=8i64 {
            let b = op
                .right_inverse_power(n as u32, &e1)
                .unwrap()
                .sup_norm()
                .squared;
            assert_eq!(b, ratio_pow(&q(1, 2), n * (n + 1)).unwrap());
            assert!(b <= ratio_pow(&q(1, 4), n).unwrap());
        }
    }

    #[test]
    fn scc_fails_on_the_isometry_control() {
        let x = FinSeq::from_values(IndexBase::One, vec![Scalar::from_int(3)]);
        let table = isometry_control_table(&x, 20);
        assert!(fit_decay(&table, 1).is_none());
    }

    #[test]
    fn periodic_point_examples() {
        // bounded, w = 2, prefix (1), period 1: the geometric fixed point
        let op = bounded2();
        let prefix = FinSeq::from_values(IndexBase::One, vec![Scalar::one()]);
        let p = build_periodic_point(&op, &prefix, 1, 200).unwrap();
        assert_eq!(p.seq().eval(1), Scalar::one());
        assert_eq!(p.seq().eval(2), Scalar::rational(1, 2));
        assert_eq!(p.seq().eval(3), Scalar::rational(1, 4));
        assert!(p.is_nonzero());
        assert!(p.seq().spot_check_decay(150).is_ok());

        // period 2 with prefix (1, 0): (1, 0, 1/4, 0, 1/16, 0, ...)
        let p = build_periodic_point(&op, &prefix, 2, 200).unwrap();
        assert_eq!(p.seq().eval(3), Scalar::rational(1, 4));
        assert_eq!(p.seq().eval(4), Scalar::zero());
        assert_eq!(p.seq().eval(5), Scalar::rational(1, 16));

        // unbounded, w = 2, prefix (1), period 1: entries 2^{-k(k-1)/2}
        let op = unbounded2();
        let p = build_periodic_point(&op, &prefix, 1, 200).unwrap();
        assert_eq!(p.seq().eval(2), Scalar::rational(1, 2));
        assert_eq!(p.seq().eval(3), Scalar::rational(1, 8));
        assert_eq!(p.seq().eval(4), Scalar::rational(1, 64));
        assert!(p.seq().spot_check_decay(100).is_ok());
    }

    #[test]
    fn periodic_point_rejects_short_periods() {
        let op = bounded2();
        let prefix = FinSeq::from_values(
            IndexBase::One,
            vec![Scalar::one(), Scalar::zero(), Scalar::from_int(2)],
        );
        assert!(matches!(
            build_periodic_point(&op, &prefix, 2, 50),
            Err(Error::PeriodTooShort { needed: 3, .. })
        ));
        assert!(build_periodic_point(&op, &prefix, 3, 50).is_ok());
    }

    #[test]
    fn periodic_membership_checks() {
        let op = bounded2();
        // e_1 is not fixed: A e_1 = 0
        let e1 = FinSeq::basis(IndexBase::One, 1).unwrap();
        let check = per_n_membership(&op, SeqView::Fin(&e1), 1, 100).unwrap();
        assert!(!check.holds);
        assert_eq!(check.max_residual_sq, q(1, 1));
        // the zero vector is fixed by every power
        let zero = FinSeq::zero(IndexBase::One);
        for n in 1..=5 {
            assert!(per_n_membership(&op, SeqView::Fin(&zero), n, 100)
                .unwrap()
                .holds);
        }
    }

    #[test]
    fn scaled_periodic_points_stay_periodic() {
        let op = unbounded2();
        let prefix =
            FinSeq::from_values(IndexBase::One, vec![Scalar::rational(3, 7), Scalar::one()]);
        let p = build_periodic_point(&op, &prefix, 2, 120).unwrap();
        let scaled = {
            let seq = p.seq().clone();
            let c = Scalar::rational(-5, 3);
            FormulaSeq::new(IndexBase::One, move |k| &c * &seq.eval(k))
        };
        let check = per_n_membership(&op, SeqView::Formula(&scaled), 2, 120).unwrap();
        assert!(check.holds, "kernels are subspaces");
    }

    #[test]
    fn density_demo_meets_tolerance() {
        // bounded, target e_1, tol^2 = 2^{-20}: period 11 suffices and
        // the chosen period is the smallest one
        let op = bounded2();
        let e1 = FinSeq::basis(IndexBase::One, 1).unwrap();
        let tol = ratio_pow(&q(1, 2), 20).unwrap();
        let cert = periodic_density_demo(&op, &e1, &tol, 100).unwrap();
        assert!(cert.distance_sq <= tol);
        assert_eq!(cert.point.period(), 10, "2^{{-2N}} <= 2^{{-20}} first at N = 10");

        // zero target: the zero point at period 1, distance 0
        let zero = FinSeq::zero(IndexBase::One);
        let cert = periodic_density_demo(&op, &zero, &tol, 50).unwrap();
        assert!(cert.distance_sq.is_zero());
        assert!(!cert.point.is_nonzero());

        // unbounded: the tail drops super-geometrically, so the minimal
        // period is much shorter
        let op = unbounded2();
        let cert = periodic_density_demo(&op, &e1, &tol, 100).unwrap();
        assert!(cert.distance_sq <= tol);
        assert!(cert.point.period() <= 5);
    }

    #[test]
    fn orbit_visit_examples() {
        let op = bounded2();
        // seed 0: the visit is exact and the vector is B^3 z
        let z = FinSeq::from_values(IndexBase::One, vec![Scalar::one(), Scalar::from_int(2)]);
        let cert = orbit_visit(&op, &FinSeq::zero(IndexBase::One), &z, 3).unwrap();
        assert!(cert.residual_sq.is_zero());
        assert!(cert.guaranteed_zero);
        assert_eq!(
            cert.vector,
            op.right_inverse_power(3, &z).unwrap()
        );

        // seed e_2, step 1: A(e_2 + B e_1) = 2 e_1 + e_1, residual 4
        let e1 = FinSeq::basis(IndexBase::One, 1).unwrap();
        let e2 = FinSeq::basis(IndexBase::One, 2).unwrap();
        let cert = orbit_visit(&op, &e2, &e1, 1).unwrap();
        assert_eq!(cert.residual_sq, q(4, 1));
        assert!(!cert.guaranteed_zero);

        // seed e_2, step 2: the seed is annihilated
        let cert = orbit_visit(&op, &e2, &e1, 2).unwrap();
        assert!(cert.residual_sq.is_zero());
    }

    #[test]
    fn schedules_meet_tolerance_for_all_variants() {
        let tol = ratio_pow(&q(1, 2), 20).unwrap();
        let e1 = FinSeq::basis(IndexBase::One, 1).unwrap();
        let z2 = FinSeq::from_values(
            IndexBase::One,
            vec![Scalar::rational(1, 3), Scalar::from_int(-2), Scalar::one()],
        );
        for op in [bounded2(), unbounded2()] {
            let schedule =
                hypercyclic_schedule(&op, &[e1.clone(), z2.clone(), e1.clone()], &tol).unwrap();
            assert!(schedule.times.windows(2).all(|p| p[0] < p[1]));
            for r in &schedule.residuals_sq {
                assert!(r <= &tol);
            }
            // the last visit is always exact: nothing is scheduled later
            assert!(schedule.residuals_sq.last().unwrap().is_zero());
        }
    }

    #[test]
    fn single_target_schedule_is_an_exact_visit() {
        let op = unbounded2();
        let z = FinSeq::from_values(IndexBase::One, vec![Scalar::from_int(5)]);
        let schedule = hypercyclic_schedule(&op, &[z.clone()], &q(1, 1000)).unwrap();
        assert_eq!(schedule.residuals_sq, vec![BigRational::zero()]);
        assert_eq!(
            schedule.vector,
            op.right_inverse_power(schedule.times[0], &z).unwrap()
        );
    }

    #[test]
    fn widening_gaps_never_hurts_residuals() {
        let op = bounded2();
        let targets = [
            FinSeq::from_values(IndexBase::One, vec![Scalar::one(), Scalar::one()]),
            FinSeq::basis(IndexBase::One, 1).unwrap(),
            FinSeq::from_values(IndexBase::One, vec![Scalar::from_int(3)]),
        ];
        let residuals_for = |gap_extra: u32| -> Vec<BigRational> {
            let mut times = vec![1u32];
            for z in targets.iter().take(targets.len() - 1) {
                times.push(times.last().unwrap() + z.support_extent().max(1) + gap_extra);
            }
            let mut vector = FinSeq::zero(IndexBase::One);
            for (z, m) in targets.iter().zip(&times) {
                vector = vector.add(&op.right_inverse_power(*m, z).unwrap()).unwrap();
            }
            targets
                .iter()
                .zip(&times)
                .map(|(z, m)| {
                    op.apply_power(*m, &vector)
                        .unwrap()
                        .sub(z)
                        .unwrap()
                        .sup_norm()
                        .squared
                })
                .collect()
        };
        let narrow = residuals_for(1);
        let wide = residuals_for(2);
        for (n, w) in narrow.iter().zip(&wide) {
            assert!(w <= n, "doubling gaps never increases a residual");
        }
    }
}
