//! Simplex-like triples, pedestals and the lattice-permutation form.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::{Partition, PartitionTriple};
use crate::segmented::{quadratic_tail, SegmentedSequence};

/// |P_r| = r(r+1)(r+2)/6.
pub fn simplex_size(r: &BigUint) -> BigUint {
    r * (r + 1u32) * (r + 2u32) / 6u32
}

/// Largest r with |P_r| ≤ n.
pub fn simplex_r(n: &BigUint) -> BigUint {
    let mut r = (n * 6u32).cbrt();
    while simplex_size(&r) > *n {
        r -= 1u32;
    }
    while simplex_size(&(&r + 1u32)) <= *n {
        r += 1u32;
    }
    r
}

/// p(n) = b_r + r(n − |P_r|) with b_r = Σ_{k<r} k(k+1)(k+2)/2 = 3·C(r+2, 4):
/// the least possible Σ (x+y+z) over n distinct points.
pub fn p_of_n(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::precondition("p(n) needs n ≥ 1"));
    }
    let r = simplex_r(n);
    let b = &r * (&r + 1u32) * (&r + 2u32) * (&r - 1u32) / 8u32;
    Ok(b + &r * (n - simplex_size(&r)))
}

/// Σ_i i·λ^T_i, which equals Σ_j C(λ_j, 2) over rows.
fn column_moment(p: &Partition) -> BigUint {
    p.rle()
        .iter()
        .map(|(v, m)| m * v * (v - 1u32) / 2u32)
        .sum()
}

pub fn is_simplex_like(t: &PartitionTriple) -> Result<bool> {
    let n = t.size();
    if n.is_zero() {
        return Err(Error::EmptyPartition("simplex-like triples have n ≥ 1"));
    }
    let r = simplex_r(&n);
    if t.parts().iter().any(|p| p.first_part() > &r + 1u32) {
        return Ok(false);
    }
    let moment: BigUint = t.parts().iter().map(|p| column_moment(p)).sum();
    Ok(moment == p_of_n(&n)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pedestalled {
    pub base: PartitionTriple,
    pub a: BigUint,
    pub b: BigUint,
    pub c: BigUint,
}

/// Put the a×b×c box under the simplex-like point sets of `base`:
/// λ̃ = (a^{bc}) + λ, μ̃ = (b^{ac}, μ), π̃ = (c^{ab}, π).
pub fn pedestal(base: &PartitionTriple, a: &BigUint, b: &BigUint, c: &BigUint) -> Result<PartitionTriple> {
    if !is_simplex_like(base)? {
        return Err(Error::precondition(format!("pedestal base {base} is not simplex-like")));
    }
    let r = simplex_r(&base.size());
    if *b <= r || *c <= r {
        return Err(Error::precondition(format!("box too thin: b = {b}, c = {c}, need ≥ {}", &r + 1u32)));
    }
    let lambda = Partition::rectangle(a.clone(), b * c).add(base.lambda());
    let mu = base.mu().prepend_rows(b.clone(), a * c)?;
    let pi = base.pi().prepend_rows(c.clone(), a * b)?;
    PartitionTriple::new(lambda, mu, pi)
}

/// Cap on the pedestal heights scanned by [`recognize_pedestalled`].
const SCAN_LIMIT: u64 = 1 << 20;

fn first_run(p: &Partition) -> (BigUint, BigUint) {
    p.rle().first().cloned().unwrap_or_default()
}

/// A decomposition of `t` as a pedestal over a simplex-like base, if any.
/// a = 0 is tried first (then the base is `t` and b = c = r + 1). Otherwise
/// b and c are forced to be the first rows of μ̃ and π̃ and a is scanned
/// upward; every candidate is confirmed by rebuilding the pedestal.
pub fn recognize_pedestalled(t: &PartitionTriple) -> Option<Pedestalled> {
    if t.size().is_zero() {
        return None;
    }
    if is_simplex_like(t).ok()? {
        let r1 = simplex_r(&t.size()) + 1u32;
        return Some(Pedestalled { base: t.clone(), a: BigUint::zero(), b: r1.clone(), c: r1 });
    }
    let (b, mu_run) = first_run(t.mu());
    let (c, pi_run) = first_run(t.pi());
    if b.is_zero() || c.is_zero() {
        return None;
    }
    let bc = &b * &c;
    let limit = [&mu_run / &c, &pi_run / &b, t.lambda().part(&(&bc - 1u32))]
        .into_iter()
        .min()
        .unwrap_or_default()
        .to_u64()
        .unwrap_or(SCAN_LIMIT)
        .min(SCAN_LIMIT);
    for a in 1..=limit {
        let a = BigUint::from(a);
        let Ok(lambda) = t.lambda().sub_rect(&a, &bc) else { continue };
        let mu = t.mu().drop_rows(&(&a * &c));
        let pi = t.pi().drop_rows(&(&a * &b));
        let Ok(base) = PartitionTriple::new(lambda, mu, pi) else { continue };
        if base.size().is_zero() {
            continue;
        }
        if pedestal(&base, &a, &b, &c).ok().as_ref() == Some(t) {
            return Some(Pedestalled { base, a, b, c });
        }
    }
    None
}

/// r and the sparse vector d of a lattice-permutation triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeForm {
    pub r: BigUint,
    /// d_k for the non-zero entries only, k in 0..=2r.
    pub d: BTreeMap<BigUint, BigUint>,
}

impl LatticeForm {
    pub fn dense_d(&self) -> Result<Vec<u64>> {
        let len = (&self.r * 2u32 + 1u32)
            .to_usize()
            .filter(|&l| l <= crate::partition::DENSE_LIMIT)
            .ok_or_else(|| Error::budget("dense d vector", &self.r, crate::partition::DENSE_LIMIT))?;
        let mut out = vec![0u64; len];
        for (k, v) in &self.d {
            out[k.to_usize().expect("k ≤ 2r")] = v.to_u64().unwrap_or(u64::MAX);
        }
        Ok(out)
    }
}

fn to_int(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// Column vectors (λ^T, μ^T = π^T) of the lattice-permutation triple:
/// λ^T = φ^T(P_{2r}) + (d_{2r}, …, d_0), μ^T = φ^T(P_{2r}) + (1^{r+1}, 0^r),
/// with φ^T(P_{2r})_i = C(2r+1−i, 2).
pub fn lattice_permutation_columns(
    r: &BigUint,
    d: &BTreeMap<BigUint, BigUint>,
) -> Result<(SegmentedSequence, SegmentedSequence)> {
    let two_r = r * 2u32;
    if let Some((k, _)) = d.iter().next_back().filter(|(k, _)| **k > two_r) {
        return Err(Error::precondition(format!("d_{k} outside 0..=2r")));
    }
    let total: BigUint = d.values().sum();
    if total != r + 1u32 {
        return Err(Error::precondition(format!("Σd = {total} ≠ r+1 = {}", r + 1u32)));
    }
    let moment: BigUint = d.iter().map(|(k, v)| k * v).sum();
    if moment != r * (r + 1u32) {
        return Err(Error::precondition(format!("Σk·d = {moment} ≠ r(r+1) = {}", r * (r + 1u32))));
    }
    let top = to_int(&(&two_r + 1u32));
    let mut lam = SegmentedSequence::new();
    lam.push(quadratic_tail(&top, &BigInt::zero(), &(&two_r + 1u32)));
    for (k, v) in d {
        lam.add_at(&two_r - k, to_int(v))?;
    }
    if !lam.is_partition() {
        return Err(Error::NonMonotone(format!("λ^T = {lam} for r = {r}")));
    }
    let mut mu = SegmentedSequence::new();
    mu.push(quadratic_tail(&top, &BigInt::one(), &(r + 1u32)));
    mu.push(quadratic_tail(&to_int(r), &BigInt::zero(), r));
    Ok((lam, mu))
}

/// The explicit lattice-permutation triple for a dense d of length 2r+1.
pub fn lattice_permutation_triple(r: usize, d: &[u64]) -> Result<PartitionTriple> {
    if d.len() != 2 * r + 1 {
        return Err(Error::precondition(format!("d has length {} ≠ 2r+1 = {}", d.len(), 2 * r + 1)));
    }
    let sparse: BTreeMap<BigUint, BigUint> = d
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(k, &v)| (BigUint::from(k), BigUint::from(v)))
        .collect();
    let (lam, mu) = lattice_permutation_columns(&BigUint::from(r), &sparse)?;
    let runs = 4 * r + 8;
    let mu = mu.to_partition(runs)?.transpose();
    PartitionTriple::new(lam.to_partition(runs)?.transpose(), mu.clone(), mu)
}

fn pair(v: usize) -> usize {
    v * v.saturating_sub(1) / 2
}

/// Recover (r, d) if `t` is a lattice-permutation triple.
pub fn recognize_lattice_form(t: &PartitionTriple) -> Option<LatticeForm> {
    if t.mu() != t.pi() || t.size().is_zero() {
        return None;
    }
    let mu_t = t.mu().transpose().to_vec().ok()?;
    let lam_t = t.lambda().transpose().to_vec().ok()?;
    let r = match mu_t.len() {
        1 => 0,
        w if w % 2 == 0 => w / 2,
        _ => return None,
    };
    let expected: Vec<usize> = (0..=2 * r)
        .map(|i| pair(2 * r + 1 - i) + usize::from(i <= r))
        .filter(|&v| v > 0)
        .collect();
    if mu_t != expected || lam_t.len() > 2 * r + 1 {
        return None;
    }
    let mut d = BTreeMap::new();
    for i in 0..=2 * r {
        let have = lam_t.get(i).copied().unwrap_or(0);
        let extra = have.checked_sub(pair(2 * r + 1 - i))?;
        if extra > 0 {
            d.insert(BigUint::from(2 * r - i), BigUint::from(extra));
        }
    }
    let form = LatticeForm { r: BigUint::from(r), d };
    lattice_permutation_columns(&form.r, &form.d).ok()?;
    Some(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn triple(l: &str, m: &str, p: &str) -> PartitionTriple {
        PartitionTriple::new(l.parse().unwrap(), m.parse().unwrap(), p.parse().unwrap()).unwrap()
    }

    #[test]
    fn p_of_n_examples() {
        assert_eq!(p_of_n(&u(1)).unwrap(), u(0));
        assert_eq!(p_of_n(&u(4)).unwrap(), u(3));
        assert_eq!(p_of_n(&u(6)).unwrap(), u(7));
        assert!(p_of_n(&u(0)).is_err());
    }

    #[test]
    fn simplex_r_boundaries() {
        for r in 0..40u64 {
            let s = simplex_size(&u(r));
            assert_eq!(simplex_r(&s), u(r));
            if r > 0 {
                assert_eq!(simplex_r(&(s - 1u32)), u(r - 1));
            }
        }
    }

    #[test]
    fn simplex_like_examples() {
        assert!(is_simplex_like(&triple("1", "1", "1")).unwrap());
        assert!(is_simplex_like(&triple("2,2,2", "2,2,1,1", "2,2,1,1")).unwrap());
        assert!(!is_simplex_like(&triple("1,1", "2", "2")).unwrap());
        assert!(is_simplex_like(&triple("", "", "")).is_err());
    }

    #[test]
    fn pedestal_examples() {
        let base = triple("2,2,2", "2,2,1,1", "2,2,1,1");
        let ped = pedestal(&base, &u(3), &u(3), &u(3)).unwrap();
        assert_eq!(ped, triple("5,5,5,3^6", "3^9,2,2,1,1", "3^9,2,2,1,1"));
        assert_eq!(pedestal(&base, &u(0), &u(3), &u(3)).unwrap(), base);
        assert!(pedestal(&base, &u(1), &u(2), &u(3)).is_err());

        let found = recognize_pedestalled(&ped).unwrap();
        assert_eq!((found.base, found.a, found.b, found.c), (base, u(3), u(3), u(3)));
        assert!(recognize_pedestalled(&triple("1,1", "2", "2")).is_none());
        let one = recognize_pedestalled(&triple("1", "1", "1")).unwrap();
        assert_eq!(one.a, u(0));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(lattice_permutation_triple(1, &[0, 2, 0]).unwrap(), triple("2,2,2", "2,2,1,1", "2,2,1,1"));
        assert_eq!(lattice_permutation_triple(1, &[1, 0, 1]).unwrap(), triple("3,1,1,1", "2,2,1,1", "2,2,1,1"));
        assert!(matches!(lattice_permutation_triple(1, &[1, 1, 0]), Err(Error::Precondition(_))));
        assert!(lattice_permutation_triple(1, &[0, 2]).is_err());
        assert_eq!(lattice_permutation_triple(0, &[1]).unwrap(), triple("1", "1", "1"));
    }

    #[test]
    fn lattice_recognition_round_trip() {
        for (r, d) in [(1usize, vec![0u64, 2, 0]), (1, vec![1, 0, 1]), (2, vec![0, 1, 1, 1, 0]), (0, vec![1])] {
            let t = lattice_permutation_triple(r, &d).unwrap();
            let form = recognize_lattice_form(&t).unwrap();
            assert_eq!(form.r, u(r as u64));
            assert_eq!(form.dense_d().unwrap(), d);
            assert!(is_simplex_like(&t).unwrap());
        }
        assert!(recognize_lattice_form(&triple("1,1", "2", "2")).is_none());
    }
}
