//! The reduced symmetric coalgebra `S(V)` in a basis, and maps built from
//! Taylor coefficients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use super::Expandable;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, FieldElement};
use crate::graded::{all_permutations, canonicalize, compositions, koszul_sign, unshuffles};

/// A finite combination of canonical (sorted) basis words.
#[derive(Clone, PartialEq, Debug)]
pub struct SymVec<K: Ord> {
    terms: BTreeMap<Vec<K>, FieldElement>,
}

impl<K: Ord + Clone> Default for SymVec<K> {
    fn default() -> Self {
        SymVec { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SymVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<K>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · word` for a word already in canonical order.
    pub fn add_canonical(&mut self, word: Vec<K>, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (w, c) in &o.terms {
            self.add_canonical(w.clone(), c);
        }
    }

    pub fn scaled(&self, c: &FieldElement) -> Self {
        let mut out = Self::new();
        for (w, x) in &self.terms {
            out.add_canonical(w.clone(), &(x * c));
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(&o.scaled(&FieldElement::from_int(-1)));
        out
    }

    /// Component of word length `n`.
    pub fn length_part(&self, n: usize) -> Self {
        SymVec { terms: self.terms.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
}

/// A combination of `a ⊗ b` with canonical words on both sides.
pub type TensorVec<K> = BTreeMap<(Vec<K>, Vec<K>), FieldElement>;

fn tensor_add<K: Ord + Clone>(t: &mut TensorVec<K>, a: Vec<K>, b: Vec<K>, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    let key = (a, b);
    let v = t.get(&key).map(|x| x + &c).unwrap_or(c);
    if v.is_zero() {
        t.remove(&key);
    } else {
        t.insert(key, v);
    }
}

/// Graded-symmetric product of two basis combinations.
pub fn sym_mul<S: Expandable>(space: &S, a: &SymVec<S::Key>, b: &SymVec<S::Key>) -> SymVec<S::Key> {
    let mut out = SymVec::new();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            let mut w = wa.clone();
            w.extend(wb.iter().cloned());
            if let Some((sign, sorted)) = canonicalize(&w, |k| space.key_degree(k)) {
                let c = ca * cb;
                out.add_canonical(sorted, &if sign < 0 { -c } else { c });
            }
        }
    }
    out
}

/// Length-one combination representing an element.
pub fn single<S: Expandable>(space: &S, e: &S::Elem) -> SymVec<S::Key> {
    let mut out = SymVec::new();
    for (k, c) in space.expand(e) {
        out.add_canonical(vec![k], &c);
    }
    out
}

/// `e_1 ⊙ … ⊙ e_n`.
pub fn sym_word<S: Expandable>(space: &S, elems: &[S::Elem]) -> SymVec<S::Key> {
    let mut acc = SymVec::new();
    acc.add_canonical(vec![], &FieldElement::one());
    for e in elems {
        acc = sym_mul(space, &acc, &single(space, e));
    }
    acc
}

/// Rebuilds an element from a length-one combination.
pub fn collapse<S: Expandable>(space: &S, v: &SymVec<S::Key>, degree: i32) -> S::Elem {
    let mut acc = space.zero(degree);
    for (w, c) in v.terms() {
        assert_eq!(w.len(), 1, "collapse expects length-one words");
        acc = space.add(&acc, &space.scale(&space.basis(&w[0]), c));
    }
    acc
}

type Coefficient<'a, E> = Box<dyn Fn(&[&E]) -> E + 'a>;

/// Arity-indexed multilinear maps `Q_n : S^n V → V` of a fixed degree.
pub struct TaylorTable<'a, E> {
    pub degree: i32,
    coeffs: BTreeMap<usize, Coefficient<'a, E>>,
}

impl<'a, E> TaylorTable<'a, E> {
    pub fn new(degree: i32) -> Self {
        TaylorTable { degree, coeffs: BTreeMap::new() }
    }

    pub fn with(mut self, arity: usize, f: impl Fn(&[&E]) -> E + 'a) -> Self {
        self.coeffs.insert(arity, Box::new(f));
        self
    }

    pub fn get(&self, arity: usize) -> Option<&Coefficient<'a, E>> {
        self.coeffs.get(&arity)
    }

    pub fn arities(&self) -> Vec<usize> {
        self.coeffs.keys().copied().collect()
    }

    /// The codifferential of an L∞[1]-algebra: `Q_k = m_k`.
    pub fn from_brackets<L: super::LInfty<Elem = E>>(inst: &'a L) -> Self {
        let mut t = TaylorTable::new(1);
        for k in 1..=inst.max_arity() {
            t = t.with(k, move |args: &[&E]| inst.bracket(args));
        }
        t
    }
}

struct Evaluator<'s, 't, 'a, S: Expandable> {
    space: &'s S,
    table: &'t TaylorTable<'a, S::Elem>,
    memo: HashMap<Vec<S::Key>, Vec<(S::Key, FieldElement)>>,
}

impl<'s, 't, 'a, S: Expandable> Evaluator<'s, 't, 'a, S> {
    fn new(space: &'s S, table: &'t TaylorTable<'a, S::Elem>) -> Self {
        Evaluator { space, table, memo: HashMap::new() }
    }

    /// Taylor coefficient on basis keys, expanded.
    fn eval(&mut self, keys: &[S::Key]) -> Option<Vec<(S::Key, FieldElement)>> {
        let f = self.table.get(keys.len())?;
        if let Some(v) = self.memo.get(keys) {
            return Some(v.clone());
        }
        let elems: Vec<S::Elem> = keys.iter().map(|k| self.space.basis(k)).collect();
        let refs: Vec<&S::Elem> = elems.iter().collect();
        let out = self.space.expand(&f(&refs));
        self.memo.insert(keys.to_vec(), out.clone());
        Some(out)
    }
}

fn key_degrees<S: Expandable>(space: &S, w: &[S::Key]) -> Vec<i32> {
    w.iter().map(|k| space.key_degree(k)).collect()
}

fn coderivation_with<S: Expandable>(ev: &mut Evaluator<S>, word: &SymVec<S::Key>) -> SymVec<S::Key> {
    let space = ev.space;
    let mut out = SymVec::new();
    for (w, c) in word.terms() {
        let n = w.len();
        let degs = key_degrees(space, w);
        for i in 1..=n {
            if ev.table.get(i).is_none() {
                continue;
            }
            for sigma in unshuffles(i, n).expect("1 <= i <= n") {
                let idx = sigma.images();
                let head: Vec<S::Key> = idx[..i].iter().map(|&k| w[k].clone()).collect();
                let Some(val) = ev.eval(&head) else { continue };
                if val.is_empty() {
                    continue;
                }
                let sign = koszul_sign(&sigma, &degs).expect("lengths agree");
                let tail: Vec<S::Key> = idx[i..].iter().map(|&k| w[k].clone()).collect();
                for (key, x) in val {
                    let mut nw = vec![key];
                    nw.extend(tail.iter().cloned());
                    if let Some((s2, sorted)) = canonicalize(&nw, |k| space.key_degree(k)) {
                        let coef = c * &x;
                        out.add_canonical(sorted, &if sign * s2 < 0 { -coef } else { coef });
                    }
                }
            }
        }
    }
    out
}

/// The coderivation with Taylor coefficients `D`:
/// `D(v_1⊙…⊙v_n) = Σ_i Σ_{σ ∈ Sh(i,n−i)} ε(σ;v) D_i(v_σ(1..i)) ⊙ v_σ(i+1..n)`.
pub fn coderivation_apply<S: Expandable>(space: &S, d: &TaylorTable<S::Elem>, word: &SymVec<S::Key>) -> SymVec<S::Key> {
    coderivation_with(&mut Evaluator::new(space, d), word)
}

fn morphism_with<S: Expandable>(ev: &mut Evaluator<S>, word: &SymVec<S::Key>) -> SymVec<S::Key> {
    let space = ev.space;
    let mut out = SymVec::new();
    for (w, c) in word.terms() {
        let n = w.len();
        let degs = key_degrees(space, w);
        let perms = all_permutations(n);
        for parts in compositions(n) {
            if parts.iter().any(|&p| ev.table.get(p).is_none()) {
                continue;
            }
            let mut denom = factorial(parts.len());
            for &p in &parts {
                denom *= factorial(p);
            }
            let weight = FieldElement::from_rational(BigRational::from_integer(1.into()) / denom);
            for sigma in &perms {
                let sign = koszul_sign(sigma, &degs).expect("lengths agree");
                let idx = sigma.images();
                let mut acc = SymVec::new();
                acc.add_canonical(vec![], &FieldElement::one());
                let mut start = 0;
                let mut dead = false;
                for &p in &parts {
                    let keys: Vec<S::Key> = idx[start..start + p].iter().map(|&k| w[k].clone()).collect();
                    start += p;
                    let val = ev.eval(&keys).expect("checked above");
                    if val.is_empty() {
                        dead = true;
                        break;
                    }
                    let mut piece = SymVec::new();
                    for (k, x) in val {
                        piece.add_canonical(vec![k], &x);
                    }
                    acc = sym_mul(space, &acc, &piece);
                    if acc.is_zero() {
                        dead = true;
                        break;
                    }
                }
                if dead {
                    continue;
                }
                let coef = c * &weight;
                out.add_assign(&acc.scaled(&if sign < 0 { -coef } else { coef }));
            }
        }
    }
    out
}

/// The coalgebra morphism with Taylor coefficients `Φ`:
/// `Φ(v_1⊙…⊙v_n) = Σ_i Σ_{p_1+…+p_i=n} Σ_{σ ∈ S_n} ε(σ;v)/(i! p_1!…p_i!)
///   Φ_{p_1}(…) ⊙ … ⊙ Φ_{p_i}(…)`.
pub fn morphism_apply<S: Expandable>(space: &S, phi: &TaylorTable<S::Elem>, word: &SymVec<S::Key>) -> SymVec<S::Key> {
    morphism_with(&mut Evaluator::new(space, phi), word)
}

/// Reduced coproduct `μ(v_1⊙…⊙v_n) = Σ_{i=1}^{n−1} Σ_{σ ∈ Sh(i,n−i)} ε(σ;v) (v_σ(1..i)) ⊗ (v_σ(i+1..n))`.
pub fn coproduct<S: Expandable>(space: &S, word: &SymVec<S::Key>) -> TensorVec<S::Key> {
    let mut out = TensorVec::new();
    for (w, c) in word.terms() {
        let n = w.len();
        let degs = key_degrees(space, w);
        for i in 1..n {
            for sigma in unshuffles(i, n).expect("1 <= i <= n") {
                let idx = sigma.images();
                let a: Vec<S::Key> = idx[..i].iter().map(|&k| w[k].clone()).collect();
                let b: Vec<S::Key> = idx[i..].iter().map(|&k| w[k].clone()).collect();
                let s = koszul_sign(&sigma, &degs).expect("lengths agree");
                tensor_add(&mut out, a, b, if s < 0 { -c } else { c.clone() });
            }
        }
    }
    out
}

fn single_word<K: Ord + Clone>(w: &[K]) -> SymVec<K> {
    let mut v = SymVec::new();
    v.add_canonical(w.to_vec(), &FieldElement::one());
    v
}

/// `(D ⊗ id + id ⊗ D)` on a tensor, with the Koszul sign `(−1)^{|D||a|}`.
pub fn coderivation_on_tensor<S: Expandable>(
    space: &S,
    d: &TaylorTable<S::Elem>,
    t: &TensorVec<S::Key>,
) -> TensorVec<S::Key> {
    let mut ev = Evaluator::new(space, d);
    let mut out = TensorVec::new();
    for ((a, b), c) in t {
        for (da, x) in coderivation_with(&mut ev, &single_word(a)).terms() {
            tensor_add(&mut out, da.clone(), b.clone(), c * x);
        }
        let deg_a: i32 = key_degrees(space, a).iter().sum();
        let flip = (d.degree * deg_a).rem_euclid(2) == 1;
        for (db, x) in coderivation_with(&mut ev, &single_word(b)).terms() {
            let v = c * x;
            tensor_add(&mut out, a.clone(), db.clone(), if flip { -v } else { v });
        }
    }
    out
}

/// `(Φ ⊗ Φ)` on a tensor (degree-zero morphisms).
pub fn morphism_on_tensor<S: Expandable>(space: &S, phi: &TaylorTable<S::Elem>, t: &TensorVec<S::Key>) -> TensorVec<S::Key> {
    let mut ev = Evaluator::new(space, phi);
    let mut out = TensorVec::new();
    for ((a, b), c) in t {
        let fa = morphism_with(&mut ev, &single_word(a));
        let fb = morphism_with(&mut ev, &single_word(b));
        for (wa, xa) in fa.terms() {
            for (wb, xb) in fb.terms() {
                tensor_add(&mut out, wa.clone(), wb.clone(), &(c * xa) * xb);
            }
        }
    }
    out
}

/// `e^D` for a coderivation that is nilpotent on each word.
pub struct ExpCoderivation<'t, 'a, S: Expandable> {
    space: &'t S,
    d: &'t TaylorTable<'a, S::Elem>,
    max_iter: usize,
}

/// `e^D = Σ_j D^j / j!`, evaluated on words; errors when `D^j` fails to die out.
pub fn exp_coderivation<'t, 'a, S: Expandable>(
    space: &'t S,
    d: &'t TaylorTable<'a, S::Elem>,
    length_bound: usize,
) -> ExpCoderivation<'t, 'a, S> {
    ExpCoderivation { space, d, max_iter: 4 * length_bound + 16 }
}

impl<'t, 'a, S: Expandable> ExpCoderivation<'t, 'a, S> {
    pub fn apply(&self, word: &SymVec<S::Key>) -> Result<SymVec<S::Key>> {
        let mut ev = Evaluator::new(self.space, self.d);
        let mut out = word.clone();
        let mut cur = word.clone();
        for j in 1..=self.max_iter {
            cur = coderivation_with(&mut ev, &cur);
            if cur.is_zero() {
                return Ok(out);
            }
            let w = FieldElement::from_rational(factorial(j).recip());
            out.add_assign(&cur.scaled(&w));
        }
        Err(Error::NotPronilpotent)
    }

    /// Taylor coefficients `pr_1 ∘ e^D` (a degree-zero morphism).
    pub fn taylor(&self) -> TaylorTable<'_, S::Elem> {
        let mut t = TaylorTable::new(0);
        for n in 1..=6 {
            t = t.with(n, move |args: &[&S::Elem]| {
                let elems: Vec<S::Elem> = args.iter().map(|e| (*e).clone()).collect();
                let w = sym_word(self.space, &elems);
                let total: i32 = args.iter().map(|e| self.space.degree(e)).sum();
                let img = self.apply(&w).expect("exp of coderivation diverged");
                collapse(self.space, &img.length_part(1), total)
            });
        }
        t
    }
}

/// `(R ∘ Φ − Φ ∘ Q)(word)`.
pub fn intertwine_residual<S: Expandable>(
    space: &S,
    phi: impl Fn(&SymVec<S::Key>) -> Result<SymVec<S::Key>>,
    q: &TaylorTable<S::Elem>,
    r: &TaylorTable<S::Elem>,
    word: &SymVec<S::Key>,
) -> Result<SymVec<S::Key>> {
    let lhs = coderivation_apply(space, r, &phi(word)?);
    let rhs = phi(&coderivation_apply(space, q, word))?;
    Ok(lhs.minus(&rhs))
}
