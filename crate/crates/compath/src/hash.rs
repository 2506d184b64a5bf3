use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Family of maps `[n] -> [k]`, each stored as a value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HashFamily {
    pub n: usize,
    pub k: usize,
    pub functions: Vec<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HashMode {
    /// Every function `[n] -> [k]`; only for tiny `k^n`.
    Exhaustive,
    /// Seeded greedy cover of all k-subsets; each new member is forced to be
    /// injective on a still uncovered subset.
    Deterministic { seed: u64 },
    /// `ceil(e^k k ln n) + 8` seeded random maps, verified and repaired when `n <= 20`.
    Random { seed: u64 },
    /// Identity or constant map when trivially enough, otherwise the
    /// deterministic cover for moderate sizes and random trials beyond.
    Auto { seed: u64 },
}

const COVER_LIMIT: u128 = 1_500_000;
const EXHAUSTIVE_LIMIT: u128 = 1 << 16;
const RANDOM_SLACK: usize = 8;

pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

impl HashFamily {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Exhaustive k-perfectness check over all subsets of size `min(n, k)`.
    pub fn is_perfect(&self) -> bool {
        let s = self.n.min(self.k);
        let mut ok = true;
        for_each_subset(self.n, s, |set| {
            if ok && !self.functions.iter().any(|f| injective(f, set)) {
                ok = false;
            }
        });
        ok
    }
}

fn injective(f: &[u8], set: &[usize]) -> bool {
    let mut seen = 0u64;
    for &v in set {
        let b = 1u64 << f[v];
        if seen & b != 0 {
            return false;
        }
        seen |= b;
    }
    true
}

fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn all_subsets(n: usize, k: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for_each_subset(n, k, |s| out.push(s.iter().map(|&v| v as u16).collect()));
    out
}

fn random_function(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..k) as u8).collect()
}

/// Random map made injective on `set` by a shuffled assignment of distinct values.
fn forced_function(rng: &mut ChaCha8Rng, n: usize, k: usize, set: &[u16]) -> Vec<u8> {
    let mut f = random_function(rng, n, k);
    let mut vals: Vec<u8> = (0..k as u8).collect();
    for i in (1..vals.len()).rev() {
        let j = rng.gen_range(0..=i);
        vals.swap(i, j);
    }
    for (i, &v) in set.iter().enumerate() {
        f[v as usize] = vals[i];
    }
    f
}

fn cover(n: usize, k: usize, rng: &mut ChaCha8Rng, mut functions: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    let s = n.min(k);
    let mut uncovered: Vec<Vec<u16>> = all_subsets(n, s);
    let inj = |f: &[u8], set: &[u16]| {
        let mut seen = 0u64;
        set.iter().all(|&v| {
            let b = 1u64 << f[v as usize];
            let fresh = seen & b == 0;
            seen |= b;
            fresh
        })
    };
    for f in &functions {
        uncovered.retain(|set| !inj(f, set));
    }
    while let Some(target) = uncovered.last().cloned() {
        let f = forced_function(rng, n, k, &target);
        uncovered.retain(|set| !inj(&f, set));
        functions.push(f);
    }
    functions
}

pub fn build_hash_family(n: usize, k: usize, mode: HashMode) -> HashFamily {
    assert!(n >= 1 && (1..=64).contains(&k), "hash family needs n >= 1 and 1 <= k <= 64");
    let functions = match mode {
        HashMode::Exhaustive => {
            let total = (k as u128).checked_pow(n as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT);
            let total = total.expect("exhaustive family too large") as usize;
            (0..total)
                .map(|mut code| {
                    (0..n)
                        .map(|_| {
                            let d = (code % k) as u8;
                            code /= k;
                            d
                        })
                        .collect()
                })
                .collect()
        }
        HashMode::Deterministic { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            cover(n, k, &mut rng, Vec::new())
        }
        HashMode::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let trials = ((k as f64).exp() * k as f64 * (n.max(2) as f64).ln()).ceil() as usize + RANDOM_SLACK;
            let fs: Vec<Vec<u8>> = (0..trials).map(|_| random_function(&mut rng, n, k)).collect();
            if n <= 20 {
                cover(n, k, &mut rng, fs)
            } else {
                fs
            }
        }
        HashMode::Auto { seed } => {
            if n <= k {
                vec![(0..n as u8).collect()]
            } else if k == 1 {
                vec![vec![0; n]]
            } else if binom(n, k) <= COVER_LIMIT {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                cover(n, k, &mut rng, Vec::new())
            } else {
                return build_hash_family(n, k, HashMode::Random { seed });
            }
        }
    };
    HashFamily { n, k, functions }
}

type CacheKey = (usize, usize, HashMode);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<HashFamily>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<HashFamily>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoised [`build_hash_family`]; families are pure functions of their key.
pub fn cached_family(n: usize, k: usize, mode: HashMode) -> Arc<HashFamily> {
    if let Some(f) = cache().lock().unwrap().get(&(n, k, mode)) {
        return f.clone();
    }
    let f = Arc::new(build_hash_family(n, k, mode));
    cache().lock().unwrap().entry((n, k, mode)).or_insert(f).clone()
}
