//! The Markov-trace engine.
//!
//! Elements are kept as linear combinations of `(tie partition, braid-letter
//! word)` pairs: products of the tie idempotents `e_{i,k}` depend only on the
//! set partition of strands they generate, so the partition is the canonical
//! left factor and every rewriting step commutes ties back to the left.
//!
//! The defining rules of the trace on `n+1` strands, with `a` on `n` strands:
//!
//! ```text
//! (i)   tr(ab)        = tr(ba)
//! (ii)  tr(1)         = 1
//! (iii) tr(a g_n)     = z·tr(a)
//! (iv)  tr(a e_n)     = E·tr(a)
//! (v)   tr(a e_n g_n) = z·tr(a)
//! ```
//!
//! together with the quadratic relation `g_i² = 1 + δ·e_i·g_i` and the
//! inverse `g_i⁻¹ = g_i − δ·e_i`, where `δ = q − q⁻¹`. Reduction brings the
//! highest generator down to at most one occurrence per word (via braid
//! relations and the quadratic splitting), strips the top strand, and
//! recurses; results are memoized per canonical cyclic form.

use std::collections::HashMap;
use std::fmt;

use crate::braid::BraidWord;
use crate::scalar::{rat, TraceMono, TracePolynomial};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator index {0} out of range for {1} strands")]
    GeneratorOutOfRange(usize, usize),
    #[error("no adjacent equal letters at position {0}")]
    NoSquare(usize),
}

/// A set partition of the strands `0..n`, canonically encoded: block ids are
/// assigned in order of first appearance.
///
/// A product of tie idempotents `e_{i,k}` equals the idempotent attached to
/// the partition generated by its pairs, so this type is the normal form for
/// the tie part of an algebra element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TiePartition {
    block_of: Vec<u8>,
}

impl TiePartition {
    /// The trivial partition: every strand its own block.
    pub fn singletons(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize);
        TiePartition { block_of: (0..n as u8).collect() }
    }

    /// Partition from explicit blocks (need not cover; missing strands
    /// become singletons).
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Self {
        let mut p = Self::singletons(n);
        for b in blocks {
            for pair in b.windows(2) {
                p.merge(pair[0], pair[1]);
            }
        }
        p
    }

    /// Partition from a restricted growth string (`rgs[i]` = block of `i`).
    pub fn from_rgs(rgs: &[u8]) -> Self {
        assert!(rgs.iter().all(|&b| (b as usize) < rgs.len()), "block id out of range");
        let mut p = TiePartition { block_of: rgs.to_vec() };
        p.canonicalize();
        p
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    pub fn block_id(&self, strand: usize) -> usize {
        self.block_of[strand] as usize
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    pub fn is_singleton(&self, strand: usize) -> bool {
        let b = self.block_of[strand];
        self.block_of.iter().filter(|&&x| x == b).count() == 1
    }

    /// Blocks as sorted strand lists, in canonical (least element) order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.block_count()];
        for (s, &b) in self.block_of.iter().enumerate() {
            out[b as usize].push(s);
        }
        out
    }

    fn canonicalize(&mut self) {
        let mut rename: Vec<Option<u8>> = vec![None; self.block_of.len() + 1];
        let mut next = 0u8;
        for b in self.block_of.iter_mut() {
            let slot = &mut rename[*b as usize];
            if slot.is_none() {
                *slot = Some(next);
                next += 1;
            }
            *b = slot.unwrap();
        }
    }

    /// Union the blocks of strands `i` and `j`.
    pub fn merge(&mut self, i: usize, j: usize) {
        let (bi, bj) = (self.block_of[i], self.block_of[j]);
        if bi == bj {
            return;
        }
        for b in self.block_of.iter_mut() {
            if *b == bj {
                *b = bi;
            }
        }
        self.canonicalize();
    }

    /// Swap strands `i` and `i+1` (0-based): the effect of commuting a tie
    /// past the generator crossing them.
    pub fn swap_strands(&mut self, i: usize) {
        self.block_of.swap(i, i + 1);
        self.canonicalize();
    }

    /// Relabel strands through a permutation (`perm[i]` = image of `i`).
    pub fn apply_perm(&self, perm: &[usize]) -> TiePartition {
        let mut block_of = vec![0u8; self.block_of.len()];
        for (i, &b) in self.block_of.iter().enumerate() {
            block_of[perm[i]] = b;
        }
        let mut p = TiePartition { block_of };
        p.canonicalize();
        p
    }

    /// Drop the top strand, reporting whether it was tied to anything.
    pub fn remove_top(&mut self) -> bool {
        let non_singleton = !self.is_singleton(self.block_of.len() - 1);
        self.block_of.pop();
        self.canonicalize();
        non_singleton
    }

    fn key_bytes(&self) -> &[u8] {
        &self.block_of
    }
}

impl fmt::Display for TiePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (i, b) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, s) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", s + 1)?;
            }
        }
        write!(f, "}}")
    }
}

/// Commute a partition leftwards past `word`: the strand relabeling
/// `τ = s_{a_1} ∘ … ∘ s_{a_t}` with the transposition of the last letter
/// applied first (`word · P = τ(P) · word`).
fn commute_left_perm(word: &[i8], n: usize) -> Vec<usize> {
    let mut img: Vec<usize> = (0..n).collect();
    for &a in word.iter().rev() {
        let j = a.unsigned_abs() as usize - 1;
        for v in img.iter_mut() {
            if *v == j {
                *v = j + 1;
            } else if *v == j + 1 {
                *v = j;
            }
        }
    }
    img
}

/// Tie-commutation through a single generator: the partition with strands
/// `i` and `i+1` (1-based `i`) swapped.
pub fn tie_commute(p: &TiePartition, i: usize) -> TiePartition {
    assert!(i >= 1 && i < p.n(), "generator index out of range");
    let mut q = p.clone();
    q.swap_strands(i - 1);
    q
}

/// One application of the quadratic relation at `word[pos] == word[pos+1]`:
/// `g_j·g_j = 1 + δ·e_j·g_j`, with the tie commuted to the left of the word.
/// Returns the two replacement terms with their coefficients.
pub fn reduce_square(
    p: &TiePartition,
    word: &[u8],
    pos: usize,
) -> Result<[(TiePartition, Vec<u8>, TracePolynomial); 2], AlgebraError> {
    if pos + 1 >= word.len() || word[pos] != word[pos + 1] {
        return Err(AlgebraError::NoSquare(pos));
    }
    let j = word[pos] as usize;
    if j + 1 > p.n() {
        return Err(AlgebraError::GeneratorOutOfRange(j, p.n()));
    }
    let mut w1: Vec<u8> = word.to_vec();
    w1.remove(pos + 1);
    w1.remove(pos);

    let prefix: Vec<i8> = word[..pos].iter().map(|&x| x as i8).collect();
    let tau = commute_left_perm(&prefix, p.n());
    let mut p2 = p.clone();
    p2.merge(tau[j - 1], tau[j]);
    let mut w2: Vec<u8> = word.to_vec();
    w2.remove(pos + 1);

    Ok([
        (p.clone(), w1, TracePolynomial::one()),
        (p2, w2, TracePolynomial::delta()),
    ])
}

/// A finite linear combination of `(tie partition, positive word)` terms
/// with trace-polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    strands: usize,
    terms: std::collections::BTreeMap<(TiePartition, Vec<u8>), TracePolynomial>,
}

impl AlgebraElement {
    pub fn zero(strands: usize) -> Self {
        AlgebraElement { strands, terms: Default::default() }
    }

    pub fn one(strands: usize) -> Self {
        let mut e = Self::zero(strands);
        e.add_term(TiePartition::singletons(strands), Vec::new(), &TracePolynomial::one());
        e
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn terms(
        &self,
    ) -> impl Iterator<Item = (&(TiePartition, Vec<u8>), &TracePolynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, p: TiePartition, word: Vec<u8>, c: &TracePolynomial) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((p, word))
            .or_insert_with(TracePolynomial::zero);
        entry.add_assign(c);
        // drop exact cancellations
        let zero = entry.is_zero();
        if zero {
            // re-borrow to remove: keys are cheap to clone lazily via retain
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &TracePolynomial) -> Self {
        let mut out = Self::zero(self.strands);
        for ((p, w), v) in &self.terms {
            out.add_term(p.clone(), w.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.strands, other.strands);
        let mut out = self.clone();
        for ((p, w), v) in &other.terms {
            out.add_term(p.clone(), w.clone(), v);
        }
        out
    }

    /// Multiply on the right by `g_i^{±1}` (1-based `i`, sign by `positive`).
    pub fn mul_generator(&self, i: usize, positive: bool) -> Result<Self, AlgebraError> {
        if i == 0 || i >= self.strands {
            return Err(AlgebraError::GeneratorOutOfRange(i, self.strands));
        }
        let mut out = Self::zero(self.strands);
        for ((p, w), c) in &self.terms {
            if positive {
                let mut w2 = w.clone();
                w2.push(i as u8);
                out.add_term(p.clone(), w2, c);
            } else {
                // g⁻¹ = g − δ·e, with the tie pulled left through the word
                let mut w2 = w.clone();
                w2.push(i as u8);
                out.add_term(p.clone(), w2, c);
                let signed: Vec<i8> = w.iter().map(|&x| x as i8).collect();
                let tau = commute_left_perm(&signed, self.strands);
                let mut p2 = p.clone();
                p2.merge(tau[i - 1], tau[i]);
                out.add_term(p2, w.clone(), &(&-&TracePolynomial::delta() * c));
            }
        }
        Ok(out)
    }

    /// Fully eliminate adjacent squares via the quadratic relation. For
    /// words in a single generator this lands in the canonical span
    /// `{1, g_i, e_i, e_i·g_i}`.
    pub fn reduce_squares(&self) -> Self {
        let mut out = Self::zero(self.strands);
        let mut work: Vec<(TiePartition, Vec<u8>, TracePolynomial)> = self
            .terms
            .iter()
            .map(|((p, w), c)| (p.clone(), w.clone(), c.clone()))
            .collect();
        while let Some((p, w, c)) = work.pop() {
            match w.windows(2).position(|ab| ab[0] == ab[1]) {
                None => out.add_term(p, w, &c),
                Some(pos) => {
                    for (p2, w2, c2) in reduce_square(&p, &w, pos).unwrap() {
                        work.push((p2, w2, &c2 * &c));
                    }
                }
            }
        }
        out
    }

    /// The image of a braid word under the natural map `σ_i ↦ g_i`, with
    /// inverse letters expanded through `g_i⁻¹ = g_i − δ·e_i`.
    pub fn inject(w: &BraidWord) -> Self {
        let mut e = Self::one(w.strands());
        for &a in w.letters() {
            e = e
                .mul_generator(a.unsigned_abs() as usize, a > 0)
                .expect("braid letters are in range");
        }
        e
    }

    /// Trace of the element: linear extension of the word trace.
    pub fn trace(&self) -> TracePolynomial {
        let mut tracer = Tracer::new(TraceStrategy::default());
        let mut out = TracePolynomial::zero();
        for ((p, w), c) in &self.terms {
            let signed: Vec<i8> = w.iter().map(|&x| x as i8).collect();
            let t = tracer.eval(p.clone(), signed);
            out.add_assign(&(&t * c));
        }
        out
    }
}

/// Closed form for `g_i^r`.
///
/// Odd `r`:  `g^r = (1−e)·g + c⁺(r)·e·g + c⁻(r−1)·e`
/// Even `r`: `g^r = (1−e)   + c⁻(r)·e·g + c⁺(r−1)·e`
///
/// where `c^±(k) = (q^k ± q^{−k})/(q + q⁻¹)`, which is the alternating
/// geometric sum `Σ_{j<|k|} (−1)^j q^{|k|−1−2j}` up to sign.
pub fn power_closed_form(i: usize, r: i64, strands: usize) -> Result<AlgebraElement, AlgebraError> {
    if i == 0 || i >= strands {
        return Err(AlgebraError::GeneratorOutOfRange(i, strands));
    }
    // (q^k − (−1)^k q^{−k}) / (q + q⁻¹) for k ≥ 0; parity selects ±.
    let geom = |k: i64| -> TracePolynomial {
        let mut t = TracePolynomial::zero();
        let mag = k.unsigned_abs() as i32;
        let flip = k < 0 && k % 2 == 0;
        for j in 0..mag {
            let c = if j % 2 == 0 { 1 } else { -1 } * if flip { -1 } else { 1 };
            t.add_term(TraceMono { q: mag - 1 - 2 * j, z: 0, e: 0 }, &rat(c));
        }
        t
    };

    let trivial = TiePartition::singletons(strands);
    let mut tied = trivial.clone();
    tied.merge(i - 1, i);
    let g = vec![i as u8];

    let mut out = AlgebraElement::zero(strands);
    if r.rem_euclid(2) == 1 {
        // (1 − e)·g
        out.add_term(trivial.clone(), g.clone(), &TracePolynomial::one());
        out.add_term(tied.clone(), g.clone(), &-&TracePolynomial::one());
        out.add_term(tied.clone(), g.clone(), &geom(r));
        out.add_term(tied, Vec::new(), &geom(r - 1));
    } else {
        // (1 − e)
        out.add_term(trivial.clone(), Vec::new(), &TracePolynomial::one());
        out.add_term(tied.clone(), Vec::new(), &-&TracePolynomial::one());
        out.add_term(tied.clone(), g, &geom(r));
        out.add_term(tied, Vec::new(), &geom(r - 1));
    }
    Ok(out)
}

/// Choice points of the reduction; any choice yields the same trace, which
/// the property suite exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TraceStrategy {
    /// Expand the last (instead of first) inverse letter first.
    pub negatives_from_right: bool,
    /// Reduce the first (instead of last) adjacent pair of top generators.
    pub window_from_left: bool,
    /// Cyclically rotate the input word before reducing.
    pub pre_rotate: usize,
}

/// Markov trace of the closure presentation `w`.
pub fn trace(w: &BraidWord) -> TracePolynomial {
    trace_with_strategy(w, TraceStrategy::default())
}

/// As `trace`, with explicit reduction choices.
pub fn trace_with_strategy(w: &BraidWord, strategy: TraceStrategy) -> TracePolynomial {
    let mut letters: Vec<i8> = w
        .letters()
        .iter()
        .map(|&a| i8::try_from(a).expect("letter fits in i8"))
        .collect();
    if !letters.is_empty() {
        let k = strategy.pre_rotate % letters.len();
        letters.rotate_left(k);
    }
    let mut tracer = Tracer::new(strategy);
    tracer.eval(TiePartition::singletons(w.strands()), letters)
}

/// Trace of a bare `(partition, word)` state; the word may contain inverse
/// letters (negative entries).
pub fn trace_state(p: &TiePartition, word: &[i8]) -> TracePolynomial {
    let mut tracer = Tracer::new(TraceStrategy::default());
    tracer.eval(p.clone(), word.to_vec())
}

#[derive(PartialEq, Eq, Hash)]
struct MemoKey {
    part: Vec<u8>,
    word: Vec<i8>,
}

struct Tracer {
    memo: HashMap<MemoKey, TracePolynomial>,
    strategy: TraceStrategy,
}

enum WindowOutcome {
    /// The word now has an adjacent equal pair at this position.
    Square(usize),
    /// The window was rewritten to contain its letter exactly once.
    Single,
}

impl Tracer {
    fn new(strategy: TraceStrategy) -> Self {
        Tracer { memo: HashMap::new(), strategy }
    }

    fn eval(&mut self, mut p: TiePartition, w: Vec<i8>) -> TracePolynomial {
        // Strip strands above every braided one: a tied top strand
        // contributes a factor E, an untied one nothing.
        let m = w.iter().map(|a| a.unsigned_abs() as usize).max().unwrap_or(0);
        let mut e_acc: u32 = 0;
        while p.n() > m + 1 {
            if p.remove_top() {
                e_acc += 1;
            }
        }
        if w.is_empty() {
            return TracePolynomial::e_pow(e_acc);
        }

        let key = canonical_key(&p, &w);
        if let Some(hit) = self.memo.get(&key) {
            return hit.shift(0, e_acc);
        }

        let result = self.reduce(p, w);
        self.memo.insert(key, result.clone());
        result.shift(0, e_acc)
    }

    fn reduce(&mut self, p: TiePartition, mut w: Vec<i8>) -> TracePolynomial {
        let n = p.n();

        // Inverse letters first: g⁻¹ = g − δ·e.
        let neg = if self.strategy.negatives_from_right {
            w.iter().rposition(|&a| a < 0)
        } else {
            w.iter().position(|&a| a < 0)
        };
        if let Some(pos) = neg {
            let j = w[pos].unsigned_abs() as usize;
            let mut w_pos = w.clone();
            w_pos[pos] = j as i8;
            let t_pos = self.eval(p.clone(), w_pos);

            let tau = commute_left_perm(&w[..pos], n);
            let mut p2 = p.clone();
            p2.merge(tau[j - 1], tau[j]);
            let mut w_e = w;
            w_e.remove(pos);
            let t_e = self.eval(p2, w_e);

            return &t_pos - &(&TracePolynomial::delta() * &t_e);
        }

        loop {
            let m = *w.iter().max().expect("word is non-empty here") as u8;
            let occ: Vec<usize> = (0..w.len()).filter(|&k| w[k] == m as i8).collect();
            if occ.len() == 1 {
                return self.strip_top(p, w, occ[0]);
            }
            let (a, b) = if self.strategy.window_from_left {
                (occ[0], occ[1])
            } else {
                (occ[occ.len() - 2], occ[occ.len() - 1])
            };
            match process_window(&mut w, a, b, m as i8) {
                WindowOutcome::Square(pos) => {
                    let j = w[pos] as usize;
                    let mut w1 = w.clone();
                    w1.remove(pos + 1);
                    w1.remove(pos);
                    let t1 = self.eval(p.clone(), w1);

                    let tau = commute_left_perm(&w[..pos], p.n());
                    let mut p2 = p.clone();
                    p2.merge(tau[j - 1], tau[j]);
                    let mut w2 = w;
                    w2.remove(pos + 1);
                    let t2 = self.eval(p2, w2);

                    return &t1 + &(&TracePolynomial::delta() * &t2);
                }
                WindowOutcome::Single => continue,
            }
        }
    }

    /// `w[pos]` is the unique occurrence of the top generator `m`; rotate it
    /// to the end and apply the Markov rule, merging the top tie into the
    /// next strand down when present.
    fn strip_top(&mut self, p: TiePartition, w: Vec<i8>, pos: usize) -> TracePolynomial {
        let (mut p, mut w) = (p, w);
        for _ in 0..=pos {
            rotate_left(&mut p, &mut w);
        }
        let m = w.pop().expect("top generator at the end") as usize;
        debug_assert!(w.iter().all(|&a| (a.unsigned_abs() as usize) < m));
        let top = p.n() - 1;
        debug_assert_eq!(top, m);

        if !p.is_singleton(top) {
            let tau = commute_left_perm(&w, p.n());
            let members: Vec<usize> = (0..top).filter(|&s| p.same_block(s, top)).collect();
            p.remove_top();
            let anchor = tau[m - 1];
            for s in members {
                p.merge(anchor, s);
            }
        } else {
            p.remove_top();
        }
        let inner = self.eval(p, w);
        inner.shift(1, 0)
    }
}

/// Rotate the first letter to the end, relabeling the partition by the
/// commute-left permutation of the remaining word (trace cyclicity).
fn rotate_left(p: &mut TiePartition, w: &mut Vec<i8>) {
    if w.is_empty() {
        return;
    }
    let a = w.remove(0);
    let tau = commute_left_perm(w, p.n());
    *p = p.apply_perm(&tau);
    w.push(a);
}

/// Canonical representative of the cyclic class of `(p, w)`.
fn canonical_key(p: &TiePartition, w: &[i8]) -> MemoKey {
    let mut best_p = p.clone();
    let mut best_w = w.to_vec();
    let mut cur_p = p.clone();
    let mut cur_w = w.to_vec();
    for _ in 1..w.len().max(1) {
        rotate_left(&mut cur_p, &mut cur_w);
        if (cur_w.as_slice(), cur_p.key_bytes()) < (best_w.as_slice(), best_p.key_bytes()) {
            best_p = cur_p.clone();
            best_w = cur_w.clone();
        }
    }
    MemoKey { part: best_p.key_bytes().to_vec(), word: best_w }
}

/// Rewrite the stretch between two occurrences of the letter `l` (all
/// letters strictly between are `< l`) using only braid relations and
/// distant commutation, until either an adjacent equal pair forms or the
/// window holds a single `l`.
fn process_window(w: &mut Vec<i8>, a: usize, b: usize, l: i8) -> WindowOutcome {
    debug_assert!(w[a] == l && w[b] == l);
    debug_assert!(w[a + 1..b].iter().all(|&x| x > 0 && x < l));
    loop {
        let occ: Vec<usize> = (a + 1..b).filter(|&k| w[k] == l - 1).collect();
        match occ.len() {
            0 => {
                // everything between commutes with g_l
                let x = w.remove(a);
                w.insert(b - 1, x);
                return WindowOutcome::Square(b - 1);
            }
            1 => {
                let t = occ[0];
                // slide both l's against the single l−1 and braid:
                // g_l g_{l−1} g_l = g_{l−1} g_l g_{l−1}
                let x = w.remove(a);
                w.insert(t - 1, x);
                let y = w.remove(b);
                w.insert(t + 1, y);
                w[t - 1] = l - 1;
                w[t] = l;
                w[t + 1] = l - 1;
                return WindowOutcome::Single;
            }
            _ => {
                let (t1, t2) = (occ[occ.len() - 2], occ[occ.len() - 1]);
                match process_window(w, t1, t2, l - 1) {
                    WindowOutcome::Square(p) => return WindowOutcome::Square(p),
                    WindowOutcome::Single => continue,
                }
            }
        }
    }
}
