//! Symbolic integer sequences too long to materialize.
//!
//! A [`SegmentedSequence`] is a run of contiguous segments, each holding a
//! polynomial of degree at most two in the local offset `t`, written in the
//! binomial basis `a + b·t + c·C(t,2)`, plus a sparse additive overlay. The
//! binomial basis keeps every closed form integral: a segment of length `L`
//! sums to `a·L + b·C(L,2) + c·C(L,3)`.
//!
//! The reduction chain stores column-length vectors this way; see [`Shape`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// `C(x, k)` for small `k`, exact for any integer `x`.
pub fn binom_small(x: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= x - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

fn to_int(x: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x.clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub len: BigUint,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Segment {
    pub fn constant(value: BigInt, len: BigUint) -> Self {
        Segment { len, a: value, b: BigInt::zero(), c: BigInt::zero() }
    }

    /// Value at local offset `t`.
    pub fn at(&self, t: &BigInt) -> BigInt {
        &self.a + &self.b * t + &self.c * binom_small(t, 2)
    }

    pub fn sum(&self) -> BigInt {
        let l = to_int(&self.len);
        &self.a * &l + &self.b * binom_small(&l, 2) + &self.c * binom_small(&l, 3)
    }

    /// Σ_t t·value(t) over the segment, via t·C(t,k) = (k+1)C(t,k+1) + k·C(t,k).
    pub fn first_moment(&self) -> BigInt {
        let l = to_int(&self.len);
        let c2 = binom_small(&l, 2);
        let c3 = binom_small(&l, 3);
        let c4 = binom_small(&l, 4);
        &self.a * &c2 + &self.b * (BigInt::from(2) * &c3 + &c2) + &self.c * (BigInt::from(3) * c4 + BigInt::from(2) * c3)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SegmentedSequence {
    segments: Vec<Segment>,
    overlay: BTreeMap<BigUint, BigInt>,
}

impl SegmentedSequence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append a segment; empty segments are dropped.
    pub fn push(&mut self, seg: Segment) -> &mut Self {
        if !seg.len.is_zero() {
            self.segments.push(seg);
        }
        self
    }

    pub fn push_constant(&mut self, value: BigInt, len: BigUint) -> &mut Self {
        self.push(Segment::constant(value, len))
    }

    /// Add `delta` at index `i` (must lie in the current domain).
    pub fn add_at(&mut self, i: BigUint, delta: BigInt) -> Result<&mut Self> {
        if i >= self.len() {
            return Err(Error::IndexOutOfRange { index: i.to_string(), len: self.len().to_string() });
        }
        let slot = self.overlay.entry(i.clone()).or_default();
        *slot += delta;
        if slot.is_zero() {
            self.overlay.remove(&i);
        }
        Ok(self)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn overlay(&self) -> &BTreeMap<BigUint, BigInt> {
        &self.overlay
    }

    /// Domain length.
    pub fn len(&self) -> BigUint {
        self.segments.iter().map(|s| s.len.clone()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Start index of every segment.
    pub fn starts(&self) -> Vec<BigUint> {
        let mut acc = BigUint::zero();
        self.segments
            .iter()
            .map(|s| {
                let st = acc.clone();
                acc += &s.len;
                st
            })
            .collect()
    }

    fn base_at(&self, i: &BigUint) -> Option<BigInt> {
        let mut start = BigUint::zero();
        for seg in &self.segments {
            let end = &start + &seg.len;
            if *i < end {
                return Some(seg.at(&to_int(&(i - &start))));
            }
            start = end;
        }
        None
    }

    pub fn eval(&self, i: &BigUint) -> Result<BigInt> {
        let base = self.base_at(i).ok_or_else(|| Error::IndexOutOfRange {
            index: i.to_string(),
            len: self.len().to_string(),
        })?;
        Ok(base + self.overlay.get(i).cloned().unwrap_or_default())
    }

    pub fn eval_u64(&self, i: u64) -> Result<BigInt> {
        self.eval(&BigUint::from(i))
    }

    pub fn sum(&self) -> BigInt {
        self.segments.iter().map(Segment::sum).sum::<BigInt>() + self.overlay.values().sum::<BigInt>()
    }

    /// Σ_i i·value(i).
    pub fn weighted_sum(&self) -> BigInt {
        let mut total = BigInt::zero();
        for (seg, start) in self.segments.iter().zip(self.starts()) {
            total += to_int(&start) * seg.sum() + seg.first_moment();
        }
        for (i, v) in &self.overlay {
            total += to_int(i) * v;
        }
        total
    }

    /// Non-increasing with every value ≥ 0, decided analytically.
    ///
    /// Within a segment the base difference `b + c·t` is linear, so over the
    /// consecutive pairs that avoid the overlay its maximum sits at the
    /// first or last such pair. Pairs touching an overlay index and pairs
    /// straddling a segment boundary are evaluated directly.
    pub fn is_partition(&self) -> bool {
        if self.segments.is_empty() {
            return true;
        }
        let starts = self.starts();
        let touches = |g: &BigUint| {
            self.overlay.contains_key(g) || self.overlay.contains_key(&(g + 1u32))
        };
        for (seg, start) in self.segments.iter().zip(&starts) {
            if seg.len < BigUint::from(2u32) {
                continue;
            }
            // pairs (t, t+1) for t in [0, len-2]
            let last = &seg.len - 2u32;
            let mut lo = BigUint::zero();
            while lo <= last && touches(&(start + &lo)) {
                lo += 1u32;
            }
            if lo > last {
                continue;
            }
            let mut hi = last.clone();
            while touches(&(start + &hi)) {
                hi -= 1u32;
            }
            for t in [&lo, &hi] {
                let diff = &seg.b + &seg.c * to_int(t);
                if diff.is_positive() {
                    return false;
                }
            }
        }
        let mut pairs: Vec<BigUint> = Vec::new();
        for i in self.overlay.keys() {
            if !i.is_zero() {
                pairs.push(i - 1u32);
            }
            pairs.push(i.clone());
        }
        pairs.extend(starts.iter().skip(1).map(|s| s - 1u32));
        let len = self.len();
        for i in pairs {
            let j = &i + 1u32;
            if j >= len {
                continue;
            }
            match (self.eval(&i), self.eval(&j)) {
                (Ok(x), Ok(y)) if x >= y => {}
                _ => return false,
            }
        }
        self.eval(&(len - 1u32)).map(|v| !v.is_negative()).unwrap_or(false)
    }

    /// Number of positive entries of a sequence already known to be a
    /// partition, by binary search.
    pub fn positive_count(&self) -> BigUint {
        let (mut lo, mut hi) = (BigUint::zero(), self.len());
        while lo < hi {
            let mid: BigUint = (&lo + &hi) >> 1;
            if self.eval(&mid).map(|v| v.is_positive()).unwrap_or(false) {
                lo = mid + 1u32;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Values at ascending indices, in one pass over the segments.
    fn eval_sorted(&self, points: &[BigUint]) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(points.len());
        let mut segs = self.segments.iter().zip(self.starts()).peekable();
        for p in points {
            while let Some((seg, start)) = segs.peek() {
                if *p < start + &seg.len {
                    break;
                }
                segs.next();
            }
            let (seg, start) = segs.peek().expect("point inside the domain");
            let v = seg.at(&to_int(&(p - start))) + self.overlay.get(p).cloned().unwrap_or_default();
            out.push(v);
        }
        out
    }

    /// Equality of the represented sequences, whatever their segmentation.
    /// Between consecutive breakpoints of either side both are quadratic, so
    /// agreeing on three points (or all, when fewer) settles the piece.
    pub fn same_values(&self, other: &SegmentedSequence) -> bool {
        let len = self.len();
        if len != other.len() {
            return false;
        }
        let mut cuts: Vec<BigUint> = self.starts();
        cuts.extend(other.starts());
        for i in self.overlay.keys().chain(other.overlay.keys()) {
            cuts.push(i.clone());
            cuts.push(i + 1u32);
        }
        cuts.push(len.clone());
        cuts.sort();
        cuts.dedup();
        let mut points = Vec::new();
        for w in cuts.windows(2) {
            let mut p = w[0].clone();
            for _ in 0..3 {
                if p >= w[1] {
                    break;
                }
                points.push(p.clone());
                p += 1u32;
            }
        }
        self.eval_sorted(&points) == other.eval_sorted(&points)
    }

    /// (length, Σ v, Σ i·v): equal for equal sequences, cheap to compare.
    pub fn fingerprint(&self) -> (BigUint, BigInt, BigInt) {
        (self.len(), self.sum(), self.weighted_sum())
    }

    /// Dense values; fails past `limit` entries.
    pub fn to_dense(&self, limit: usize) -> Result<Vec<BigInt>> {
        let len = self.len();
        let n = len
            .to_usize()
            .filter(|&n| n <= limit)
            .ok_or_else(|| Error::budget("dense segmented sequence", &len, limit))?;
        let mut out = Vec::with_capacity(n);
        for seg in &self.segments {
            let l = seg.len.to_usize().expect("bounded by total length");
            for t in 0..l {
                out.push(seg.at(&BigInt::from(t)));
            }
        }
        for (i, v) in &self.overlay {
            out[i.to_usize().expect("overlay inside domain")] += v;
        }
        Ok(out)
    }

    /// The partition with these parts; at most `max_runs` distinct values.
    pub fn to_partition(&self, max_runs: usize) -> Result<Partition> {
        if !self.is_partition() {
            return Err(Error::NonMonotone("segmented sequence is not a partition".into()));
        }
        let mut runs: Vec<(BigUint, BigUint)> = Vec::new();
        let len = self.len();
        let mut i = BigUint::zero();
        let mut breaks: Vec<BigUint> = self.starts();
        for k in self.overlay.keys() {
            breaks.push(k.clone());
            breaks.push(k + 1u32);
        }
        breaks.push(len.clone());
        breaks.sort();
        breaks.dedup();
        // Walk the sequence piecewise: inside a piece with no overlay a
        // constant segment is one run, otherwise one run per index.
        let mut next_break = 0;
        while i < len {
            while breaks[next_break] <= i {
                next_break += 1;
            }
            let stop = breaks[next_break].clone();
            let v = self.eval(&i)?;
            let v1 = if &i + 1u32 < stop { Some(self.eval(&(&i + 1u32))?) } else { None };
            let step = match v1 {
                Some(w) if w == v => {
                    let (seg, _) = self.locate(&i);
                    if seg.b.is_zero() && seg.c.is_zero() {
                        &stop - &i
                    } else {
                        BigUint::one()
                    }
                }
                _ => BigUint::one(),
            };
            let value = v.to_biguint().expect("checked nonnegative");
            runs.push((value, step.clone()));
            if runs.len() > max_runs {
                return Err(Error::budget("partition runs", format!("> {max_runs}"), max_runs));
            }
            i += step;
        }
        Partition::from_rle(runs)
    }

    fn locate(&self, i: &BigUint) -> (&Segment, BigUint) {
        let mut start = BigUint::zero();
        for seg in &self.segments {
            let end = &start + &seg.len;
            if *i < end {
                return (seg, start);
            }
            start = end;
        }
        panic!("index inside domain");
    }

    /// Exact copy of a partition's parts.
    pub fn from_partition(p: &Partition) -> Self {
        let mut s = SegmentedSequence::new();
        for (v, m) in p.rle() {
            s.push_constant(to_int(v), m.clone());
        }
        s
    }
}

impl fmt::Display for SegmentedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("[{}; {} + {}t + {}C(t,2)]", s.len, s.a, s.b, s.c))
            .collect();
        write!(f, "{}", parts.join(" "))?;
        if !self.overlay.is_empty() {
            write!(f, " +{{")?;
            for (k, (i, v)) in self.overlay.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{i}: {v}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// A partition held either explicitly or as its column-length vector λ^T in
/// segmented form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Explicit(Partition),
    Columns(SegmentedSequence),
}

impl Shape {
    /// Build from a symbolic column vector, checking it is a partition.
    pub fn from_columns(cols: SegmentedSequence) -> Result<Shape> {
        if !cols.is_partition() {
            return Err(Error::NonMonotone(format!("column vector {cols}")));
        }
        Ok(Shape::Columns(cols))
    }

    /// ht(λ)
    pub fn height(&self) -> BigUint {
        match self {
            Shape::Explicit(p) => p.height(),
            Shape::Columns(c) => first_or_zero(c),
        }
    }

    /// |λ|
    pub fn size(&self) -> BigUint {
        match self {
            Shape::Explicit(p) => p.size(),
            Shape::Columns(c) => c.sum().to_biguint().expect("partition sums are nonnegative"),
        }
    }

    /// λ_0, the first row length.
    pub fn first_row(&self) -> BigUint {
        match self {
            Shape::Explicit(p) => p.first_part(),
            Shape::Columns(c) => c.positive_count(),
        }
    }

    /// Height of the last non-empty column: the smallest column length.
    pub fn smallest_column(&self) -> BigUint {
        match self {
            Shape::Explicit(p) => p.transpose().last_part(),
            Shape::Columns(c) => {
                let w = c.positive_count();
                if w.is_zero() {
                    return BigUint::zero();
                }
                c.eval(&(w - 1u32))
                    .ok()
                    .and_then(|v| v.to_biguint())
                    .unwrap_or_default()
            }
        }
    }

    pub fn is_hook(&self) -> Result<bool> {
        match self {
            Shape::Explicit(p) => p.is_hook(),
            Shape::Columns(c) => {
                let w = c.positive_count();
                if w.is_zero() {
                    return Err(Error::EmptyPartition("is_hook"));
                }
                if w.is_one() {
                    return Ok(true);
                }
                Ok(c.eval_u64(1)? <= BigInt::one())
            }
        }
    }

    /// Explicit partition if it fits in `max_runs` runs.
    pub fn materialize(&self, max_runs: usize) -> Result<Partition> {
        match self {
            Shape::Explicit(p) => Ok(p.clone()),
            Shape::Columns(c) => Ok(c.to_partition(max_runs)?.transpose()),
        }
    }

    /// Semantic equality. Two symbolic shapes are compared exactly without
    /// materializing; mixed pairs go through `max_runs`.
    pub fn same_as(&self, other: &Shape, max_runs: usize) -> bool {
        match (self, other) {
            (Shape::Explicit(a), Shape::Explicit(b)) => a == b,
            (Shape::Columns(a), Shape::Columns(b)) => a.same_values(b),
            _ => match (self.materialize(max_runs), other.materialize(max_runs)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            },
        }
    }
}

fn first_or_zero(c: &SegmentedSequence) -> BigUint {
    if c.is_empty() {
        return BigUint::zero();
    }
    c.eval_u64(0)
        .ok()
        .and_then(|v| v.to_biguint())
        .unwrap_or_default()
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Explicit(p) => write!(f, "{p}"),
            Shape::Columns(c) => write!(f, "columns {c}"),
        }
    }
}

/// Column vector φ^T(P_k) of the simplex, `C(k+1-i, 2)` for i = 0..=k, as
/// one quadratic segment (the final entry is 0).
pub fn simplex_columns(k: &BigUint) -> Segment {
    quadratic_tail(&to_int(&(k + 1u32)), &BigInt::zero(), &(k + 1u32))
}

/// Segment `t ↦ base + C(top - t, 2)` for `t` in `0..len`.
pub fn quadratic_tail(top: &BigInt, base: &BigInt, len: &BigUint) -> Segment {
    Segment {
        len: len.clone(),
        a: base + binom_small(top, 2),
        b: -(top - BigInt::one()),
        c: BigInt::one(),
    }
}
