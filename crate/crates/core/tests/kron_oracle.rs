mod common;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use common::{partitions, triples};
use kron_core::oracle::{character, kronecker, lr_coefficient, murnaghan_embed, sym_group_classes};
use kron_core::{Partition, PartitionTriple};

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

#[test]
fn column_orthogonality() {
    for n in 1..=10 {
        let classes = sym_group_classes(n);
        for shape in partitions(n) {
            let total: BigInt = classes
                .iter()
                .map(|c| BigInt::from(c.class_size.clone()) * character(&shape, &c.cycle_type).unwrap().pow(2))
                .sum();
            assert_eq!(total, BigInt::from(factorial(n)), "{shape}");
        }
    }
}

#[test]
fn swapping_mu_and_pi() {
    for n in 1..=8 {
        for t in triples(n) {
            assert_eq!(kronecker(&t).unwrap(), kronecker(&t.permuted([0, 2, 1])).unwrap(), "{t}");
        }
    }
}

#[test]
fn transpose_identity() {
    for n in 1..=8 {
        let ps = partitions(n);
        for l in &ps {
            for m in &ps {
                let k = |a: &Partition, b: &Partition, c: &Partition| {
                    kronecker(&PartitionTriple::new(a.clone(), b.clone(), c.clone()).unwrap()).unwrap()
                };
                let base = k(l, m, m);
                let mt = m.transpose();
                assert_eq!(base, k(&l.transpose(), &mt, m), "{l} {m}");
                assert_eq!(base, k(l, &mt, &mt), "{l} {m}");
            }
        }
    }
}

/// k for λ = (n) is δ_{μ,π}; for λ = (1^n) it is δ_{μ,π^T}.
#[test]
fn trivial_and_sign_rows() {
    for n in 1..=8 {
        let ps = partitions(n);
        let row = Partition::rectangle(BigUint::from(n), BigUint::one());
        let col = row.transpose();
        for m in &ps {
            for p in &ps {
                let t = PartitionTriple::new(row.clone(), m.clone(), p.clone()).unwrap();
                assert_eq!(kronecker(&t).unwrap(), BigUint::from(u8::from(m == p)));
                let t = PartitionTriple::new(col.clone(), m.clone(), p.clone()).unwrap();
                assert_eq!(kronecker(&t).unwrap(), BigUint::from(u8::from(*m == p.transpose())));
            }
        }
    }
}

fn dense(p: &Partition) -> Vec<usize> {
    p.to_vec().unwrap()
}

/// λ/μ is a horizontal strip of size k.
fn horizontal_strip(lambda: &[usize], mu: &[usize], k: usize) -> bool {
    if mu.len() > lambda.len() {
        return false;
    }
    let at = |v: &[usize], i: usize| v.get(i).copied().unwrap_or(0);
    let contained = (0..lambda.len()).all(|i| at(mu, i) <= lambda[i]);
    let interlaced = (0..lambda.len()).all(|i| i + 1 >= lambda.len() || lambda[i + 1] <= at(mu, i));
    let size: usize = lambda.iter().sum::<usize>() - mu.iter().sum::<usize>();
    contained && interlaced && size == k
}

#[test]
fn lr_pieri_rule() {
    for n in 2..=8 {
        for a in 1..n {
            let row = Partition::rectangle(BigUint::from(n - a), BigUint::one());
            for l in partitions(n) {
                for m in partitions(a) {
                    let expected = horizontal_strip(&dense(&l), &dense(&m), n - a);
                    assert_eq!(lr_coefficient(&l, &m, &row).unwrap(), BigUint::from(u8::from(expected)), "{l} {m}");
                }
            }
        }
    }
}

#[test]
fn murnaghan_embedding_gives_lr() {
    for n in 2..=6 {
        for a in 1..n {
            for l in partitions(n) {
                for m in partitions(a) {
                    for p in partitions(n - a) {
                        let t = murnaghan_embed(&l, &m, &p).unwrap();
                        assert_eq!(kronecker(&t).unwrap(), lr_coefficient(&l, &m, &p).unwrap(), "{l} {m} {p}");
                    }
                }
            }
        }
    }
}

#[test]
fn budget_is_reported() {
    let big = PartitionTriple::from_parts(&[40], &[40], &[40]).unwrap();
    assert!(kronecker(&big).unwrap_err().is_budget());
}
