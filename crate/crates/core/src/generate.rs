//! Instance generators: seeded random profiles, polarized profiles and the
//! exhaustive profile space used by the verification harness.

use crate::profile::{ApprovalProfile, Instance};
use crate::sets::{CandidateSet, MAX_CANDIDATES};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("approval probability must lie in (0, 1], got {0}")]
    Probability(f64),
    #[error("need n >= 1 voters")]
    NoVoters,
    #[error("need 1 <= m <= {MAX_CANDIDATES} candidates, got {0}")]
    Candidates(usize),
    #[error("committee size k = {k} exceeds m = {m}")]
    KExceedsM { k: usize, m: usize },
    #[error("group spec: {0}")]
    Groups(String),
    #[error("profile space ({n_max}, {m_max}, {k_max}) is too large to index")]
    SpaceTooLarge {
        n_max: usize,
        m_max: usize,
        k_max: usize,
    },
}

/// The generator behind every seeded stream in this crate. ChaCha8 output is
/// specified bit-for-bit, so a seed reproduces the same stream everywhere.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each voter approves each candidate independently with probability `p`.
pub fn generate_random(
    n: usize,
    m: usize,
    k: usize,
    p: f64,
    seed: u64,
) -> Result<Instance, GenError> {
    let mut rng = seeded_rng(seed);
    random_with(&mut rng, n, m, k, p)
}

pub(crate) fn random_with<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    k: usize,
    p: f64,
) -> Result<Instance, GenError> {
    check_dims(n, m, k)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(GenError::Probability(p));
    }
    let ballots = (0..n)
        .map(|_| (0..m).filter(|_| rng.gen_bool(p)).collect())
        .collect();
    let profile = ApprovalProfile::new(m, ballots).expect("dimensions checked");
    Ok(Instance { profile, k })
}

fn check_dims(n: usize, m: usize, k: usize) -> Result<(), GenError> {
    if n == 0 {
        return Err(GenError::NoVoters);
    }
    if m == 0 || m > MAX_CANDIDATES {
        return Err(GenError::Candidates(m));
    }
    if k > m {
        return Err(GenError::KExceedsM { k, m });
    }
    Ok(())
}

/// Group sizes and candidate counts, e.g. `3:3,2:2` for a group of three
/// voters approving three candidates and a group of two approving two.
pub fn parse_group_spec(spec: &str) -> Result<Vec<(usize, usize)>, GenError> {
    let bad = || GenError::Groups(format!("expected `voters:candidates,...`, got {spec:?}"));
    spec.split(',')
        .map(|part| {
            let (v, c) = part.trim().split_once(':').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            let c: usize = c.trim().parse().map_err(|_| bad())?;
            if v == 0 || c == 0 {
                return Err(bad());
            }
            Ok((v, c))
        })
        .collect()
}

/// A polarized profile. Group `g` approves a contiguous block of candidates;
/// candidates past the last block are approved by nobody. Voters are listed
/// group by group and then shuffled with `seed`.
pub fn generate_polarized(
    groups: &[(usize, usize)],
    m: usize,
    k: usize,
    seed: u64,
) -> Result<Instance, GenError> {
    let n: usize = groups.iter().map(|g| g.0).sum();
    let needed: usize = groups.iter().map(|g| g.1).sum();
    if groups.is_empty() {
        return Err(GenError::Groups("no groups".into()));
    }
    if needed > m {
        return Err(GenError::Groups(format!(
            "groups approve {needed} candidates but m = {m}"
        )));
    }
    check_dims(n, m, k)?;
    let mut ballots = Vec::with_capacity(n);
    let mut next = 0;
    for &(voters, cands) in groups {
        let block: CandidateSet = (next..next + cands).collect();
        next += cands;
        ballots.extend(std::iter::repeat_n(block, voters));
    }
    ballots.shuffle(&mut seeded_rng(seed));
    let profile = ApprovalProfile::new(m, ballots).expect("dimensions checked");
    Ok(Instance { profile, k })
}

/// All polarized profiles with `1..=max_groups` groups, each of
/// `1..=max_size` voters approving `1..=max_cands` candidates. Candidates are
/// laid out in contiguous blocks or dealt round-robin across groups, and an
/// extra candidate nobody approves is optionally placed first or last.
/// Voters are listed group by group.
pub fn enumerate_polarized(
    max_groups: usize,
    max_size: usize,
    max_cands: usize,
) -> Vec<ApprovalProfile> {
    fn tuples(len: usize, max: usize) -> Vec<Vec<usize>> {
        (0..len).fold(vec![Vec::new()], |acc, _| {
            acc.into_iter()
                .flat_map(|t| {
                    (1..=max).map(move |v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect()
        })
    }
    let mut out = Vec::new();
    for g in 1..=max_groups {
        for sizes in tuples(g, max_size) {
            for cands in tuples(g, max_cands) {
                let approved: usize = cands.iter().sum();
                for interleaved in [false, true] {
                    if interleaved && g == 1 {
                        continue;
                    }
                    // owner[slot] = group approving the slot-th approved candidate
                    let mut owner = Vec::with_capacity(approved);
                    if interleaved {
                        let mut left = cands.clone();
                        while owner.len() < approved {
                            for (j, l) in left.iter_mut().enumerate() {
                                if *l > 0 {
                                    *l -= 1;
                                    owner.push(j);
                                }
                            }
                        }
                    } else {
                        for (j, &c) in cands.iter().enumerate() {
                            owner.extend(std::iter::repeat_n(j, c));
                        }
                    }
                    for spare in [None, Some(0), Some(approved)] {
                        let shift = usize::from(spare == Some(0));
                        let m = approved + usize::from(spare.is_some());
                        let mut blocks = vec![CandidateSet::EMPTY; g];
                        for (slot, &j) in owner.iter().enumerate() {
                            blocks[j].insert(slot + shift);
                        }
                        let ballots = sizes
                            .iter()
                            .zip(&blocks)
                            .flat_map(|(&s, &b)| std::iter::repeat_n(b, s))
                            .collect();
                        out.push(ApprovalProfile::new(m, ballots).expect("valid layout"));
                    }
                }
            }
        }
    }
    out
}

/// Every instance with `1 <= n <= n_max`, `1 <= m <= m_max`, arbitrary
/// ballots, and `1 <= k <= min(k_max, m)`.
///
/// Order: `m` ascending, then `n` ascending, then the ballot tuple read as a
/// mixed-radix number with voter 0 as the most significant digit (so tuples
/// are in lexicographic order of their ballot masks), then `k` ascending.
/// Positions in this order are stable and are used as resume checkpoints.
#[derive(Clone, Debug)]
pub struct ProfileSpace {
    n_max: usize,
    m_max: usize,
    k_max: usize,
    blocks: Vec<Block>,
    len: u64,
}

#[derive(Clone, Copy, Debug)]
struct Block {
    m: usize,
    n: usize,
    ks: usize,
    start: u64,
    len: u64,
}

impl ProfileSpace {
    pub fn new(n_max: usize, m_max: usize, k_max: usize) -> Result<Self, GenError> {
        if m_max > MAX_CANDIDATES {
            return Err(GenError::Candidates(m_max));
        }
        let too_large = || GenError::SpaceTooLarge {
            n_max,
            m_max,
            k_max,
        };
        let mut blocks = Vec::new();
        let mut start = 0u64;
        for m in 1..=m_max {
            let ks = k_max.min(m);
            for n in 1..=n_max {
                let bits = m.checked_mul(n).filter(|&b| b < 64).ok_or_else(too_large)?;
                let len = (1u64 << bits)
                    .checked_mul(ks as u64)
                    .ok_or_else(too_large)?;
                blocks.push(Block {
                    m,
                    n,
                    ks,
                    start,
                    len,
                });
                start = start.checked_add(len).ok_or_else(too_large)?;
            }
        }
        Ok(ProfileSpace {
            n_max,
            m_max,
            k_max,
            blocks,
            len: start,
        })
    }

    pub fn bounds(&self) -> (usize, usize, usize) {
        (self.n_max, self.m_max, self.k_max)
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: u64) -> Option<Instance> {
        if index >= self.len {
            return None;
        }
        let b = self.blocks[self.blocks.partition_point(|b| b.start + b.len <= index)];
        let offset = index - b.start;
        let k = (offset % b.ks as u64) as usize + 1;
        let mut tuple = offset / b.ks as u64;
        let mask = (1u64 << b.m) - 1;
        let mut ballots = vec![CandidateSet::EMPTY; b.n];
        for slot in ballots.iter_mut().rev() {
            *slot = CandidateSet::from_bits(tuple & mask);
            tuple >>= b.m;
        }
        let profile = ApprovalProfile::new(b.m, ballots).expect("enumerated profile is valid");
        Some(Instance { profile, k })
    }

    /// Instances at positions `start..end`.
    pub fn range(&self, start: u64, end: u64) -> impl Iterator<Item = (u64, Instance)> + '_ {
        (start..end.min(self.len)).map(move |i| (i, self.get(i).expect("index in range")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Instance)> + '_ {
        self.range(0, self.len)
    }
}

/// The profile stream of [`ProfileSpace`], for callers that only iterate.
pub fn enumerate_profiles(
    n_max: usize,
    m_max: usize,
    k_max: usize,
) -> Result<impl Iterator<Item = Instance>, GenError> {
    let space = ProfileSpace::new(n_max, m_max, k_max)?;
    Ok((0..space.len()).map(move |i| space.get(i).expect("index in range")))
}
