//! Reference implementations for tests. Each is the literal definition,
//! written against plain vectors and `BTreeSet`s, with no pruning.
#![allow(dead_code)]

use abcvote::{ApprovalProfile, ExactScore};
use std::collections::BTreeSet;

pub type Set = BTreeSet<usize>;

pub fn ballots(p: &ApprovalProfile) -> Vec<Set> {
    p.ballots().iter().map(|b| b.iter().collect()).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `lcm(1..=k)` and `H(p) * lcm` for `p = 0..=k`.
pub fn scaled_harmonics(k: usize) -> (u64, Vec<u64>) {
    let l = (1..=k as u64).fold(1, |acc, j| acc / gcd(acc, j) * j);
    let mut h = vec![0u64];
    for j in 1..=k as u64 {
        h.push(h.last().unwrap() + l / j);
    }
    (l, h)
}

/// All `k`-subsets of `0..m` as ascending vectors, in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            if m - c < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(c + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Plain `C(m, k)` enumeration: the lexicographically first committee with
/// maximal PAV score, and that score.
pub fn brute_pav(p: &ApprovalProfile, k: usize) -> (Vec<usize>, ExactScore) {
    let (l, h) = scaled_harmonics(k);
    let masks: Vec<u64> = p.ballots().iter().map(|b| b.bits()).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    for w in combinations(p.m(), k) {
        let wm: u64 = w.iter().map(|c| 1u64 << c).sum();
        let s: u64 = masks
            .iter()
            .map(|a| h[(a & wm).count_ones() as usize])
            .sum();
        if best.as_ref().is_none_or(|(b, _)| s > *b) {
            best = Some((s, w));
        }
    }
    let (s, w) = best.expect("k <= m");
    (w, ExactScore::ratio(s as i128, l as i128))
}

/// `k * size >= ell * n`.
pub fn big_enough(size: usize, ell: usize, n: usize, k: usize) -> bool {
    k * size >= ell * n
}

/// Every nonempty voter subset, as ascending vectors.
pub fn voter_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

fn common(bs: &[Set], x: &[usize]) -> Set {
    let mut it = x.iter().map(|&i| bs[i].clone());
    let first = it.next().unwrap_or_default();
    it.fold(first, |acc, b| acc.intersection(&b).copied().collect())
}

/// PJR (and JR at `ell = 1`) by trying every voter subset.
pub fn naive_pjr(p: &ApprovalProfile, w: &Set, k: usize, ells: &[usize]) -> bool {
    let bs = ballots(p);
    let n = p.n();
    for x in voter_subsets(n) {
        let com = common(&bs, &x).len();
        let union: Set = x.iter().flat_map(|&i| bs[i].iter().copied()).collect();
        let hit = union.intersection(w).count();
        for &ell in ells {
            if big_enough(x.len(), ell, n, k) && com >= ell && hit < ell {
                return false;
            }
        }
    }
    true
}

pub fn naive_ejr(p: &ApprovalProfile, w: &Set, k: usize, ells: &[usize]) -> bool {
    let bs = ballots(p);
    let n = p.n();
    for x in voter_subsets(n) {
        let com = common(&bs, &x).len();
        for &ell in ells {
            if big_enough(x.len(), ell, n, k)
                && com >= ell
                && x.iter().all(|&i| bs[i].intersection(w).count() < ell)
            {
                return false;
            }
        }
    }
    true
}

/// CJR (`strict = false`) or strict core (`strict = true`) by trying every
/// voter subset against every deviation of size `1..=k`.
pub fn naive_blocking(p: &ApprovalProfile, w: &Set, k: usize, weak_allowed: bool) -> bool {
    let bs = ballots(p);
    let n = p.n();
    for ell in 1..=k {
        for d in combinations(p.m(), ell) {
            let d: Set = d.into_iter().collect();
            for x in voter_subsets(n) {
                if !big_enough(x.len(), ell, n, k) {
                    continue;
                }
                let gains: Vec<(usize, usize)> = x
                    .iter()
                    .map(|&i| {
                        (
                            bs[i].intersection(&d).count(),
                            bs[i].intersection(w).count(),
                        )
                    })
                    .collect();
                let blocks = if weak_allowed {
                    gains.iter().all(|(g, r)| g >= r) && gains.iter().any(|(g, r)| g > r)
                } else {
                    gains.iter().all(|(g, r)| g > r)
                };
                if blocks {
                    return false;
                }
            }
        }
    }
    true
}

/// Closed-form size of the exhaustive instance space.
pub fn space_size(n_max: usize, m_max: usize, k_max: usize) -> u64 {
    let mut total = 0u64;
    for m in 1..=m_max {
        for n in 1..=n_max {
            total += (1u64 << (m * n)) * k_max.min(m) as u64;
        }
    }
    total
}

/// Polarized in the literal sense: nonempty ballots coincide or are
/// disjoint.
pub fn naive_polarized(p: &ApprovalProfile) -> bool {
    let bs: Vec<Set> = ballots(p).into_iter().filter(|b| !b.is_empty()).collect();
    bs.iter()
        .all(|a| bs.iter().all(|b| a == b || a.is_disjoint(b)))
}

/// Every size-`k` committee of `p`, lexicographically.
pub fn committees(p: &ApprovalProfile, k: usize) -> Vec<abcvote::Committee> {
    combinations(p.m(), k)
        .into_iter()
        .map(|w| abcvote::Committee::new(p, w.into_iter().collect(), k).unwrap())
        .collect()
}

pub fn members(w: &abcvote::Committee) -> Set {
    w.members().iter().collect()
}
