//! Sequence models: finitely supported sequences, convergent sequences as
//! limit plus finite deviation, and formula-defined sequences with decay
//! certificates.
//!
//! Invariants:
//! - `FinSeq` stores only nonzero entries, all at indices at or above the
//!   first index of its base (1 for sequences over the naturals, 0 for
//!   sequences over the nonnegative integers).
//! - `ConvSeq` represents `x_k = limit + deviation_k`; the represented
//!   sequence converges to `limit` by construction. Deviations live over
//!   the naturals.
//! - `FormulaSeq` evaluation is deterministic; an attached decay
//!   certificate asserts `|x_{k+stride}|^2 <= ratio_sq * |x_k|^2` for all
//!   `k >= start` with `ratio_sq < 1` and is spot-checkable.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{ratio_sqrt_f64, Scalar};

/// Index base of a sequence: the naturals (first index 1) or the
/// nonnegative integers (first index 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexBase {
    One,
    Zero,
}

impl IndexBase {
    pub fn first_index(self) -> i64 {
        match self {
            IndexBase::One => 1,
            IndexBase::Zero => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            IndexBase::One => "one",
            IndexBase::Zero => "zero",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "one" => Ok(IndexBase::One),
            "zero" => Ok(IndexBase::Zero),
            other => Err(Error::Parse(format!(
                "index base must be `one` or `zero`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for IndexBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for IndexBase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for IndexBase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        IndexBase::parse(&s).map_err(D::Error::custom)
    }
}

/// A sup-norm value: the exact squared norm plus a float magnitude.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupNorm {
    pub squared: BigRational,
    pub value: f64,
}

impl SupNorm {
    pub fn from_squared(squared: BigRational) -> Self {
        let value = ratio_sqrt_f64(&squared);
        SupNorm { squared, value }
    }
}

/// A finitely supported sequence (an element of the dense subspace of
/// eventually-zero sequences).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSeq {
    base: IndexBase,
    entries: BTreeMap<i64, Scalar>,
}

impl FinSeq {
    pub fn zero(base: IndexBase) -> Self {
        FinSeq {
            base,
            entries: BTreeMap::new(),
        }
    }

    /// The Kronecker basis vector `e_n`.
    pub fn basis(base: IndexBase, n: i64) -> Result<Self> {
        if n < base.first_index() {
            return Err(Error::IndexBelowBase {
                index: n,
                first: base.first_index(),
            });
        }
        let mut entries = BTreeMap::new();
        entries.insert(n, Scalar::one());
        Ok(FinSeq { base, entries })
    }

    /// Build from `(index, value)` pairs; zero values are dropped and
    /// indices below the base are rejected.
    pub fn from_entries<I>(base: IndexBase, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Scalar)>,
    {
        let mut entries = BTreeMap::new();
        for (k, v) in iter {
            if k < base.first_index() {
                return Err(Error::IndexBelowBase {
                    index: k,
                    first: base.first_index(),
                });
            }
            if !v.is_zero() {
                entries.insert(k, v);
            }
        }
        Ok(FinSeq { base, entries })
    }

    /// Dense constructor: `values[i]` becomes the entry at `first + i`.
    pub fn from_values(base: IndexBase, values: Vec<Scalar>) -> Self {
        let first = base.first_index();
        FinSeq::from_entries(
            base,
            values
                .into_iter()
                .enumerate()
                .map(|(i, v)| (first + i as i64, v)),
        )
        .expect("dense indices start at the base")
    }

    pub fn base(&self) -> IndexBase {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Largest index carrying a nonzero entry; `first_index - 1` for the
    /// zero sequence, so operator code never branches on an optional.
    pub fn max_support(&self) -> i64 {
        self.entries
            .keys()
            .next_back()
            .copied()
            .unwrap_or(self.base.first_index() - 1)
    }

    /// Number of index positions from the base through the last nonzero
    /// entry; 0 for the zero sequence.
    pub fn support_extent(&self) -> u32 {
        (self.max_support() - self.base.first_index() + 1) as u32
    }

    pub fn get(&self, k: i64) -> Scalar {
        self.entries.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, k: i64, v: Scalar) -> Result<()> {
        if k < self.base.first_index() {
            return Err(Error::IndexBelowBase {
                index: k,
                first: self.base.first_index(),
            });
        }
        if v.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, v);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&i64, &Scalar)> {
        self.entries.iter()
    }

    pub fn scale(&self, s: &Scalar) -> FinSeq {
        if s.is_zero() {
            return FinSeq::zero(self.base);
        }
        FinSeq {
            base: self.base,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (*k, s * v))
                .collect(),
        }
    }

    pub fn add(&self, other: &FinSeq) -> Result<FinSeq> {
        self.check_base(other.base)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let sum = &out.get(*k) + v;
            out.set(*k, sum)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FinSeq) -> Result<FinSeq> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Exact squared sup-norm with its float square root.
    pub fn sup_norm(&self) -> SupNorm {
        let squared = self
            .entries
            .values()
            .map(Scalar::abs_sq)
            .max()
            .unwrap_or_else(BigRational::zero);
        SupNorm::from_squared(squared)
    }

    pub fn check_base(&self, base: IndexBase) -> Result<()> {
        if self.base != base {
            return Err(Error::BaseMismatch {
                expected: self.base,
                found: base,
            });
        }
        Ok(())
    }
}

impl Serialize for FinSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("base", self.base.label())?;
        let entries: BTreeMap<String, String> = self
            .entries
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        map.serialize_entry("entries", &entries)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for FinSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            base: IndexBase,
            entries: BTreeMap<String, String>,
        }
        let wire = Wire::deserialize(d)?;
        let mut pairs = Vec::with_capacity(wire.entries.len());
        for (k, v) in wire.entries {
            let idx: i64 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad sequence index `{k}`")))?;
            let val: Scalar = v.parse().map_err(D::Error::custom)?;
            pairs.push((idx, val));
        }
        FinSeq::from_entries(wire.base, pairs).map_err(D::Error::custom)
    }
}

/// A convergent sequence over the naturals, stored exactly as its limit
/// plus a finitely supported deviation: `x_k = limit + deviation_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvSeq {
    limit: Scalar,
    #[serde(deserialize_with = "deserialize_deviation")]
    deviation: FinSeq,
}

fn deserialize_deviation<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<FinSeq, D::Error> {
    let dev = FinSeq::deserialize(d)?;
    if dev.base() != IndexBase::One {
        return Err(D::Error::custom(
            "deviation of a convergent sequence must be indexed over the naturals",
        ));
    }
    Ok(dev)
}

impl ConvSeq {
    pub fn new(limit: Scalar, deviation: FinSeq) -> Result<Self> {
        deviation.check_base(IndexBase::One)?;
        Ok(ConvSeq { limit, deviation })
    }

    pub fn zero() -> Self {
        ConvSeq {
            limit: Scalar::zero(),
            deviation: FinSeq::zero(IndexBase::One),
        }
    }

    /// The constant sequence `(s, s, s, ...)`.
    pub fn constant(s: Scalar) -> Self {
        ConvSeq {
            limit: s,
            deviation: FinSeq::zero(IndexBase::One),
        }
    }

    /// Lift a finitely supported sequence into the convergent space
    /// (limit 0).
    pub fn from_deviation(deviation: FinSeq) -> Result<Self> {
        ConvSeq::new(Scalar::zero(), deviation)
    }

    /// The limit functional: linear, and zero exactly on the vanishing
    /// subspace.
    pub fn limit(&self) -> &Scalar {
        &self.limit
    }

    pub fn deviation(&self) -> &FinSeq {
        &self.deviation
    }

    pub fn entry(&self, k: i64) -> Scalar {
        &self.limit + &self.deviation.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.limit.is_zero() && self.deviation.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> ConvSeq {
        ConvSeq {
            limit: s * &self.limit,
            deviation: self.deviation.scale(s),
        }
    }

    pub fn add(&self, other: &ConvSeq) -> ConvSeq {
        ConvSeq {
            limit: &self.limit + &other.limit,
            deviation: self
                .deviation
                .add(&other.deviation)
                .expect("deviations share the natural base"),
        }
    }

    pub fn sub(&self, other: &ConvSeq) -> ConvSeq {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Exact squared sup-norm: the tail contributes `|limit|^2`, the
    /// supported indices contribute `|limit + d_k|^2`.
    pub fn sup_norm(&self) -> SupNorm {
        let mut squared = self.limit.abs_sq();
        for (_, d) in self.deviation.iter() {
            let here = (&self.limit + d).abs_sq();
            if here > squared {
                squared = here;
            }
        }
        SupNorm::from_squared(squared)
    }
}

/// Coordinates of a convergent sequence relative to the standard Schauder
/// basis of the convergent-sequence space: position 0 holds the limit,
/// position k the deviation at k. The output is indexed over the
/// nonnegative integers and is finitely supported in this model.
pub fn schauder_coords(x: &ConvSeq) -> FinSeq {
    let mut pairs = vec![(0, x.limit().clone())];
    pairs.extend(x.deviation().iter().map(|(k, v)| (*k, v.clone())));
    FinSeq::from_entries(IndexBase::Zero, pairs).expect("coordinates start at index 0")
}

/// Certificate of eventual geometric decay along a stride:
/// `|x_{k+stride}|^2 <= ratio_sq * |x_k|^2` for every `k >= start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecayCertificate {
    pub start: i64,
    pub stride: u32,
    pub ratio_sq: BigRational,
}

impl DecayCertificate {
    pub fn new(start: i64, stride: u32, ratio_sq: BigRational) -> Result<Self> {
        if stride == 0 {
            return Err(Error::Parse("decay stride must be positive".into()));
        }
        if ratio_sq >= BigRational::one() || ratio_sq < BigRational::zero() {
            return Err(Error::Parse(format!(
                "decay ratio^2 must lie in [0, 1), got {ratio_sq}"
            )));
        }
        Ok(DecayCertificate {
            start,
            stride,
            ratio_sq,
        })
    }
}

type EvalFn = dyn Fn(i64) -> Scalar + Send + Sync;
type PrefixFn = dyn Fn(i64) -> Vec<Scalar> + Send + Sync;

/// A sequence given by a pure index evaluator, optionally with a decay
/// certificate and a batch evaluator for fast prefix materialization.
///
/// The batch evaluator must agree with `eval` pointwise; constructors in
/// this crate provide recurrence-based batch paths so that horizon-500
/// verification stays cheap even when entries carry exponents that grow
/// quadratically.
#[derive(Clone)]
pub struct FormulaSeq {
    base: IndexBase,
    eval: Arc<EvalFn>,
    prefix: Option<Arc<PrefixFn>>,
    decay: Option<DecayCertificate>,
}

impl fmt::Debug for FormulaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormulaSeq")
            .field("base", &self.base)
            .field("decay", &self.decay)
            .finish_non_exhaustive()
    }
}

impl FormulaSeq {
    pub fn new<F>(base: IndexBase, eval: F) -> Self
    where
        F: Fn(i64) -> Scalar + Send + Sync + 'static,
    {
        FormulaSeq {
            base,
            eval: Arc::new(eval),
            prefix: None,
            decay: None,
        }
    }

    pub fn with_decay(mut self, cert: DecayCertificate) -> Self {
        self.decay = Some(cert);
        self
    }

    pub fn with_prefix<F>(mut self, prefix: F) -> Self
    where
        F: Fn(i64) -> Vec<Scalar> + Send + Sync + 'static,
    {
        self.prefix = Some(Arc::new(prefix));
        self
    }

    pub fn zero(base: IndexBase) -> Self {
        FormulaSeq::new(base, |_| Scalar::zero()).with_decay(
            DecayCertificate::new(base.first_index(), 1, BigRational::zero())
                .expect("zero ratio is a valid certificate"),
        )
    }

    /// View a finitely supported sequence as a formula sequence.
    pub fn from_fin(x: &FinSeq) -> Self {
        let owned = x.clone();
        let base = x.base();
        FormulaSeq::new(base, move |k| owned.get(k))
    }

    pub fn base(&self) -> IndexBase {
        self.base
    }

    pub fn decay(&self) -> Option<&DecayCertificate> {
        self.decay.as_ref()
    }

    pub fn eval(&self, k: i64) -> Scalar {
        assert!(
            k >= self.base.first_index(),
            "index {k} precedes the first index of the base"
        );
        (self.eval)(k)
    }

    /// Values at `[first, k_max]` in order. Uses the batch evaluator when
    /// present.
    pub fn values_upto(&self, k_max: i64) -> Vec<Scalar> {
        let first = self.base.first_index();
        if k_max < first {
            return Vec::new();
        }
        match &self.prefix {
            Some(p) => {
                let vals = p(k_max);
                debug_assert_eq!(vals.len() as i64, k_max - first + 1);
                vals
            }
            None => (first..=k_max).map(|k| (self.eval)(k)).collect(),
        }
    }

    /// Entries up to and including `k_max`, zeros stripped.
    pub fn truncate(&self, k_max: i64) -> FinSeq {
        let first = self.base.first_index();
        let vals = self.values_upto(k_max);
        FinSeq::from_entries(
            self.base,
            vals.into_iter()
                .enumerate()
                .map(|(i, v)| (first + i as i64, v)),
        )
        .expect("truncation indices start at the base")
    }

    /// Verify the decay certificate over `[start, start + window]`.
    /// Returns the first violating index, if any.
    pub fn spot_check_decay(&self, window: u32) -> std::result::Result<(), i64> {
        let Some(cert) = &self.decay else {
            return Ok(());
        };
        let first = self.base.first_index();
        let hi = cert.start + window as i64 + cert.stride as i64;
        let vals = self.values_upto(hi);
        for k in cert.start..=(cert.start + window as i64) {
            let cur = vals[(k - first) as usize].abs_sq();
            let next = vals[(k + cert.stride as i64 - first) as usize].abs_sq();
            if next > &cert.ratio_sq * &cur {
                return Err(k);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(p: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(den))
    }

    #[test]
    fn sup_norm_of_finite_support() {
        // (3, -1, 0, ...) has squared norm 9
        let x = FinSeq::from_values(
            IndexBase::One,
            vec![Scalar::from_int(3), Scalar::from_int(-1)],
        );
        assert_eq!(x.sup_norm().squared, q(9, 1));
        assert!((x.sup_norm().value - 3.0).abs() < 1e-12);

        assert_eq!(FinSeq::zero(IndexBase::One).sup_norm().squared, q(0, 1));

        // 1/2 + (1/2)i at index 4: squared norm 1/2
        let y = FinSeq::from_entries(IndexBase::One, [(4, Scalar::complex(1, 2, 1, 2))]).unwrap();
        assert_eq!(y.sup_norm().squared, q(1, 2));
    }

    #[test]
    fn sup_norm_of_convergent_sequences() {
        // constant 2
        assert_eq!(
            ConvSeq::constant(Scalar::from_int(2)).sup_norm().squared,
            q(4, 1)
        );
        // limit 1, deviation 5*e_1: x = (6, 1, 1, ...)
        let d = FinSeq::from_entries(IndexBase::One, [(1, Scalar::from_int(5))]).unwrap();
        let x = ConvSeq::new(Scalar::from_int(1), d).unwrap();
        assert_eq!(x.sup_norm().squared, q(36, 1));
        // limit -1, deviation e_1: x = (0, -1, -1, ...) -- attained in the tail
        let d = FinSeq::basis(IndexBase::One, 1).unwrap();
        let x = ConvSeq::new(Scalar::from_int(-1), d).unwrap();
        assert_eq!(x.sup_norm().squared, q(1, 1));
    }

    #[test]
    fn limit_functional_values() {
        let d = FinSeq::from_entries(IndexBase::One, [(1, Scalar::from_int(5))]).unwrap();
        let x = ConvSeq::new(Scalar::from_int(2), d).unwrap();
        assert_eq!(x.limit(), &Scalar::from_int(2));

        // the all-ones sequence has limit 1
        assert_eq!(
            ConvSeq::constant(Scalar::one()).limit(),
            &Scalar::one()
        );

        // a lifted finitely supported sequence has limit 0
        let lifted =
            ConvSeq::from_deviation(FinSeq::basis(IndexBase::One, 3).unwrap()).unwrap();
        assert!(lifted.limit().is_zero());
    }

    #[test]
    fn limit_functional_is_linear_and_norm_bounded() {
        let d1 = FinSeq::from_values(IndexBase::One, vec![Scalar::rational(1, 2)]);
        let x = ConvSeq::new(Scalar::from_int(3), d1).unwrap();
        let d2 = FinSeq::from_entries(IndexBase::One, [(2, Scalar::from_int(-4))]).unwrap();
        let y = ConvSeq::new(Scalar::rational(-1, 3), d2).unwrap();
        let (a, b) = (Scalar::rational(2, 7), Scalar::from_int(5));
        let combo = x.scale(&a).add(&y.scale(&b));
        let expected = &(&a * x.limit()) + &(&b * y.limit());
        assert_eq!(combo.limit(), &expected);
        // |l(x)|^2 <= sup-norm^2
        assert!(x.limit().abs_sq() <= x.sup_norm().squared);
        assert!(y.limit().abs_sq() <= y.sup_norm().squared);
    }

    #[test]
    fn schauder_coordinates() {
        // x = (7, 2, 2, ...) -> (2, 5, 0, 0, ...)
        let d = FinSeq::from_entries(IndexBase::One, [(1, Scalar::from_int(5))]).unwrap();
        let x = ConvSeq::new(Scalar::from_int(2), d).unwrap();
        let c = schauder_coords(&x);
        assert_eq!(c.base(), IndexBase::Zero);
        assert_eq!(c.get(0), Scalar::from_int(2));
        assert_eq!(c.get(1), Scalar::from_int(5));
        assert_eq!(c.get(2), Scalar::zero());

        // the all-ones sequence -> (1, 0, 0, ...)
        let c = schauder_coords(&ConvSeq::constant(Scalar::one()));
        assert_eq!(c, FinSeq::basis(IndexBase::Zero, 0).unwrap());

        // zero -> zero
        assert!(schauder_coords(&ConvSeq::zero()).is_zero());
    }

    #[test]
    fn schauder_coordinates_reconstruct_exactly() {
        let d = FinSeq::from_entries(
            IndexBase::One,
            [(2, Scalar::rational(3, 4)), (5, Scalar::from_int(-2))],
        )
        .unwrap();
        let x = ConvSeq::new(Scalar::rational(-7, 3), d).unwrap();
        let c = schauder_coords(&x);
        // rebuild: limit = c_0, deviation_k = c_k
        let rebuilt = ConvSeq::new(
            c.get(0),
            FinSeq::from_entries(
                IndexBase::One,
                c.iter().filter(|(k, _)| **k >= 1).map(|(k, v)| (*k, v.clone())),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(rebuilt, x);
    }

    #[test]
    fn basis_vectors() {
        let e1 = FinSeq::basis(IndexBase::One, 1).unwrap();
        assert_eq!(e1.get(1), Scalar::one());
        assert_eq!(e1.sup_norm().squared, q(1, 1));
        let e0 = FinSeq::basis(IndexBase::Zero, 0).unwrap();
        assert_eq!(e0.get(0), Scalar::one());
        assert_eq!(e0.max_support(), 0);
        assert!(FinSeq::basis(IndexBase::One, 0).is_err());
    }

    #[test]
    fn max_support_sentinel() {
        assert_eq!(FinSeq::zero(IndexBase::One).max_support(), 0);
        assert_eq!(FinSeq::zero(IndexBase::Zero).max_support(), -1);
        assert_eq!(FinSeq::zero(IndexBase::One).support_extent(), 0);
        let e3 = FinSeq::basis(IndexBase::One, 3).unwrap();
        assert_eq!(e3.max_support(), 3);
        assert_eq!(e3.support_extent(), 3);
        let e3z = FinSeq::basis(IndexBase::Zero, 3).unwrap();
        assert_eq!(e3z.support_extent(), 4);
    }

    #[test]
    fn base_mismatch_is_rejected() {
        let a = FinSeq::basis(IndexBase::One, 1).unwrap();
        let b = FinSeq::basis(IndexBase::Zero, 1).unwrap();
        assert!(matches!(a.add(&b), Err(Error::BaseMismatch { .. })));
        assert!(ConvSeq::from_deviation(b).is_err());
    }

    #[test]
    fn truncate_formula_sequences() {
        assert!(FormulaSeq::zero(IndexBase::One).truncate(10).is_zero());
        let e1 = FinSeq::basis(IndexBase::One, 1).unwrap();
        let as_formula = FormulaSeq::from_fin(&e1);
        assert_eq!(as_formula.truncate(5), e1);
    }

    #[test]
    fn decay_spot_check_accepts_and_rejects() {
        // x_k = 2^{-k}: ratio^2 = 1/4
        let geo = FormulaSeq::new(IndexBase::One, |k| {
            Scalar::rational(1, 2).powi(k).unwrap()
        })
        .with_decay(DecayCertificate::new(1, 1, q(1, 4)).unwrap());
        assert!(geo.spot_check_decay(200).is_ok());

        // constant sequence with a fake certificate must be caught at once
        let fake = FormulaSeq::new(IndexBase::One, |_| Scalar::one())
            .with_decay(DecayCertificate::new(1, 1, q(1, 2)).unwrap());
        assert_eq!(fake.spot_check_decay(10), Err(1));

        assert!(DecayCertificate::new(1, 1, q(1, 1)).is_err());
        assert!(DecayCertificate::new(1, 0, q(1, 2)).is_err());
    }

    #[test]
    fn sequence_json_round_trip() {
        let x = FinSeq::from_entries(
            IndexBase::Zero,
            [(0, Scalar::from_int(2)), (3, Scalar::complex(1, 2, -1, 3))],
        )
        .unwrap();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(
            text,
            r#"{"base":"zero","entries":{"0":"2/1","3":"1/2-1/3 i"}}"#
        );
        let back: FinSeq = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);

        let c = ConvSeq::new(
            Scalar::rational(-1, 2),
            FinSeq::basis(IndexBase::One, 2).unwrap(),
        )
        .unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"limit":"-1/2","deviation":{"base":"one","entries":{"2":"1/1"}}}"#
        );
        let back: ConvSeq = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
