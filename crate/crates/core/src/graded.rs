//! Sign bookkeeping for graded symmetric algebra.

use crate::error::{Error, Result};

/// A bijection of `{0, …, n−1}`; `σ(k) = images[k]`.
///
/// Permutations act on sequences by `(σ·v)_k = v_{σ(k)}`, which is how the
/// reordered word `v_{σ(1)} ⊙ … ⊙ v_{σ(n)}` is written.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::DegreeError(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x] = k;
        }
        Permutation(inv)
    }

    /// `(σ·v)_k = v_{σ(k)}`.
    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        self.0.iter().map(|&k| v[k].clone()).collect()
    }

    /// The permutation whose action equals acting by `other` and then by `self`,
    /// i.e. `σ·(τ·v) = (σ∘τ)·v`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation(self.0.iter().map(|&k| other.0[k]).collect())
    }

    /// Two-run monotonicity: increasing on `0..i` and on `i..n`.
    pub fn is_unshuffle(&self, i: usize) -> bool {
        self.0[..i].windows(2).all(|w| w[0] < w[1]) && self.0[i..].windows(2).all(|w| w[0] < w[1])
    }
}

fn check_len(sigma: &Permutation, degs: &[i32]) -> Result<()> {
    if sigma.len() != degs.len() {
        return Err(Error::LengthMismatch { expected: sigma.len(), got: degs.len() });
    }
    Ok(())
}

/// Koszul sign `ε(σ; v)` defined by `v_{σ(1)} ⊙ … ⊙ v_{σ(n)} = ε(σ; v) v_1 ⊙ … ⊙ v_n`,
/// computed by bubbling the reordered word back with adjacent transpositions.
pub fn koszul_sign(sigma: &Permutation, degs: &[i32]) -> Result<i32> {
    check_len(sigma, degs)?;
    let mut word: Vec<usize> = sigma.0.clone();
    let mut sign = 1;
    let n = word.len();
    for pass in 0..n {
        for k in 0..n.saturating_sub(1 + pass) {
            if word[k] > word[k + 1] {
                if (degs[word[k]] * degs[word[k + 1]]).rem_euclid(2) == 1 {
                    sign = -sign;
                }
                word.swap(k, k + 1);
            }
        }
    }
    Ok(sign)
}

/// Same sign by counting inversions between odd entries.
pub fn koszul_sign_by_inversions(sigma: &Permutation, degs: &[i32]) -> Result<i32> {
    check_len(sigma, degs)?;
    let s = &sigma.0;
    let mut odd_inversions = 0;
    for k in 0..s.len() {
        for l in k + 1..s.len() {
            if s[k] > s[l] && (degs[s[k]] * degs[s[l]]).rem_euclid(2) == 1 {
                odd_inversions += 1;
            }
        }
    }
    Ok(if odd_inversions % 2 == 0 { 1 } else { -1 })
}

/// All `(i, n−i)`-unshuffles, in lexicographic order of the first run.
pub fn unshuffles(i: usize, n: usize) -> Result<Vec<Permutation>> {
    if i == 0 || i > n {
        return Err(Error::BadArity { i, n });
    }
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..i).collect();
    loop {
        let mut images = pick.clone();
        images.extend((0..n).filter(|x| !pick.contains(x)));
        out.push(Permutation(images));
        // next combination
        let mut k = i;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if pick[k] < n - i + k {
                pick[k] += 1;
                for m in k + 1..i {
                    pick[m] = pick[m - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation(prefix.clone()));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Ordered compositions `p_1 + … + p_i = n` with all `p_j >= 1`.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Sorts a word of graded symbols into canonical (ascending) order and
/// returns the Koszul sign of the reordering, or `None` when an odd symbol
/// repeats and the word vanishes.
pub fn canonicalize<K: Ord + Clone>(word: &[K], degree: impl Fn(&K) -> i32) -> Option<(i32, Vec<K>)> {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_by(|&a, &b| word[a].cmp(&word[b]).then(a.cmp(&b)));
    let sorted: Vec<K> = idx.iter().map(|&k| word[k].clone()).collect();
    for w in sorted.windows(2) {
        if w[0] == w[1] && degree(&w[0]).rem_euclid(2) == 1 {
            return None;
        }
    }
    let degs: Vec<i32> = word.iter().map(&degree).collect();
    let sign = koszul_sign(&Permutation(idx), &degs).expect("lengths agree");
    Some((sign, sorted))
}

/// Décalage sign `−(−1)^k (−1)^{Σ_i (k−i)|v_i|}` relating skew brackets `l_k`
/// to symmetric brackets `m_k`. Degrees are 1-indexed in the exponent.
pub fn decalage_sign(k: usize, degs: &[i32]) -> i32 {
    assert_eq!(degs.len(), k, "décalage needs one degree per input");
    let mut e: i64 = k as i64 + 1;
    for (idx, d) in degs.iter().enumerate() {
        let i = idx + 1;
        e += (k - i) as i64 * *d as i64;
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
