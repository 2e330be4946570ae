//! Braid words as link presentations.
//!
//! A braid word on `n` strands is a sequence of nonzero letters `a` with
//! `1 ≤ |a| ≤ n−1`; a positive letter `a` is the generator crossing the
//! strands at positions `a`, `a+1`, a negative letter its inverse. The
//! closure of the braid is an oriented link; components of the closure are
//! the cycles of the underlying permutation.

use std::collections::BTreeSet;
use std::fmt;

use crate::scalar::{rat_frac, Rational};
use num_traits::Zero;

/// Largest supported strand count (letters are stored compactly downstream).
pub const MAX_STRANDS: usize = 127;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("malformed braid text: {0}")]
    Malformed(String),
    #[error("letter 0 is not a braid generator")]
    ZeroLetter,
    #[error("letter {letter} needs at least {needed} strands, braid has {strands}")]
    LetterOutOfRange { letter: i32, needed: usize, strands: usize },
    #[error("at most {MAX_STRANDS} strands are supported, got {0}")]
    TooManyStrands(usize),
    #[error("position {0} is out of range")]
    PositionOutOfRange(usize),
    #[error("kept component set is empty or names a missing component")]
    BadComponentSet,
    #[error("connected sum requires both closures to be knots")]
    NotAKnot,
    #[error("conjugating letter 0 is not a braid generator")]
    BadConjugator,
}

/// A word in the braid group `B_n`: `strands` and signed letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

/// Markov moves and skein-level edits on braid words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidMove {
    /// Negate the letter at a position (crossing switch).
    Switch(usize),
    /// Delete the letter at a position (crossing smoothing).
    Smooth(usize),
    /// Negate every letter (mirror image of the closure).
    Mirror,
    /// Rotate the word by one letter (conjugation; closure-equivalent).
    Cycle,
    /// `w ↦ a·w·a⁻¹` for a signed letter `a`.
    Conjugate(i32),
    /// Append `σ_n^{±1}` on a fresh strand (positive/negative stabilization).
    Stabilize(bool),
}

/// How to combine two braid closures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeMode {
    /// Split union of the closures.
    Disjoint,
    /// Connected sum; both closures must be knots.
    ConnectedSum,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        let strands = strands.max(1);
        if strands > MAX_STRANDS {
            return Err(BraidError::TooManyStrands(strands));
        }
        for &a in &letters {
            if a == 0 {
                return Err(BraidError::ZeroLetter);
            }
            let needed = a.unsigned_abs() as usize + 1;
            if needed > strands {
                return Err(BraidError::LetterOutOfRange { letter: a, needed, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    /// Parse `{a1, a2, ...}` or whitespace/comma separated integers.
    /// Strand count defaults to `max |letter| + 1`.
    pub fn parse(text: &str) -> Result<Self, BraidError> {
        Self::parse_with_strands(text, None)
    }

    /// Parse with an optional explicit strand count; trailing trivial
    /// strands are allowed so unlinks are representable. The override may
    /// only enlarge the inferred count.
    pub fn parse_with_strands(text: &str, strands: Option<usize>) -> Result<Self, BraidError> {
        let inner = text.trim();
        let inner = match (inner.starts_with('{'), inner.ends_with('}')) {
            (true, true) => &inner[1..inner.len() - 1],
            (false, false) => inner,
            _ => return Err(BraidError::Malformed(text.to_string())),
        };
        let mut letters = Vec::new();
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let a: i32 = tok
                .parse()
                .map_err(|_| BraidError::Malformed(format!("bad letter {:?}", tok)))?;
            if a == 0 {
                return Err(BraidError::ZeroLetter);
            }
            letters.push(a);
        }
        let needed = letters.iter().map(|a| a.unsigned_abs() as usize + 1).max().unwrap_or(1);
        let strands = match strands {
            Some(n) if n >= needed => n,
            Some(n) => {
                let bad = *letters.iter().max_by_key(|a| a.unsigned_abs()).unwrap();
                return Err(BraidError::LetterOutOfRange { letter: bad, needed, strands: n });
            }
            None => needed,
        };
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the letter signs.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|a| a.signum() as i64).sum()
    }

    /// Underlying permutation: `perm[i]` is the top position reached by the
    /// strand starting at bottom position `i` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos_to_strand: Vec<usize> = (0..self.strands).collect();
        for &a in &self.letters {
            let i = a.unsigned_abs() as usize - 1;
            pos_to_strand.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in pos_to_strand.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Components of the closure and the pairwise linking matrix.
    pub fn components(&self) -> ComponentStructure {
        // components = cycles of strand ↦ its final position
        let perm = self.permutation();
        let mut component_of = vec![usize::MAX; self.strands];
        let mut count = 0;
        for start in 0..self.strands {
            if component_of[start] != usize::MAX {
                continue;
            }
            let mut s = start;
            while component_of[s] == usize::MAX {
                component_of[s] = count;
                s = perm[s];
            }
            count += 1;
        }
        let mut linking = vec![vec![Rational::zero(); count]; count];
        let half = rat_frac(1, 2);
        let mut pos_to_strand: Vec<usize> = (0..self.strands).collect();
        for &a in &self.letters {
            let i = a.unsigned_abs() as usize - 1;
            let (x, y) = (pos_to_strand[i], pos_to_strand[i + 1]);
            let (cx, cy) = (component_of[x], component_of[y]);
            if cx != cy {
                let contrib = if a > 0 { half.clone() } else { -half.clone() };
                linking[cx][cy] += &contrib;
                linking[cy][cx] += &contrib;
            }
            pos_to_strand.swap(i, i + 1);
        }
        ComponentStructure { component_of, count, linking }
    }

    /// The two components meeting at the crossing `position`, in bottom
    /// position order of the two strands entering it, plus the sign.
    pub fn crossing_components(&self, position: usize) -> Result<(usize, usize, i8), BraidError> {
        if position >= self.letters.len() {
            return Err(BraidError::PositionOutOfRange(position));
        }
        let cs = self.components();
        let mut pos_to_strand: Vec<usize> = (0..self.strands).collect();
        for (p, &a) in self.letters.iter().enumerate() {
            let i = a.unsigned_abs() as usize - 1;
            if p == position {
                return Ok((
                    cs.component_of[pos_to_strand[i]],
                    cs.component_of[pos_to_strand[i + 1]],
                    a.signum() as i8,
                ));
            }
            pos_to_strand.swap(i, i + 1);
        }
        unreachable!()
    }

    /// Keep only the strands of the named components; the closure of the
    /// result is the corresponding sublink of the closure.
    pub fn extract_sublink(&self, keep: &BTreeSet<usize>) -> Result<BraidWord, BraidError> {
        let cs = self.components();
        if keep.is_empty() || keep.iter().any(|&c| c >= cs.count) {
            return Err(BraidError::BadComponentSet);
        }
        let kept_strand = |s: usize| keep.contains(&cs.component_of[s]);
        let mut pos_to_strand: Vec<usize> = (0..self.strands).collect();
        let mut letters = Vec::new();
        for &a in &self.letters {
            let i = a.unsigned_abs() as usize - 1;
            let (x, y) = (pos_to_strand[i], pos_to_strand[i + 1]);
            if kept_strand(x) && kept_strand(y) {
                // rank of position i among kept strands = new 1-based index
                let rank = (0..=i).filter(|&p| kept_strand(pos_to_strand[p])).count();
                letters.push(a.signum() * rank as i32);
            }
            pos_to_strand.swap(i, i + 1);
        }
        let strands = (0..self.strands).filter(|&s| kept_strand(s)).count();
        BraidWord::new(strands, letters)
    }

    /// Apply a crossing edit or Markov move.
    pub fn modify(&self, action: &BraidMove) -> Result<BraidWord, BraidError> {
        match *action {
            BraidMove::Switch(p) => {
                if p >= self.letters.len() {
                    return Err(BraidError::PositionOutOfRange(p));
                }
                let mut letters = self.letters.clone();
                letters[p] = -letters[p];
                Ok(BraidWord { strands: self.strands, letters })
            }
            BraidMove::Smooth(p) => {
                if p >= self.letters.len() {
                    return Err(BraidError::PositionOutOfRange(p));
                }
                let mut letters = self.letters.clone();
                letters.remove(p);
                Ok(BraidWord { strands: self.strands, letters })
            }
            BraidMove::Mirror => Ok(BraidWord {
                strands: self.strands,
                letters: self.letters.iter().map(|a| -a).collect(),
            }),
            BraidMove::Cycle => {
                let mut letters = self.letters.clone();
                if !letters.is_empty() {
                    letters.rotate_left(1);
                }
                Ok(BraidWord { strands: self.strands, letters })
            }
            BraidMove::Conjugate(a) => {
                if a == 0 {
                    return Err(BraidError::BadConjugator);
                }
                let mut letters = Vec::with_capacity(self.letters.len() + 2);
                letters.push(a);
                letters.extend_from_slice(&self.letters);
                letters.push(-a);
                BraidWord::new(
                    self.strands.max(a.unsigned_abs() as usize + 1),
                    letters,
                )
            }
            BraidMove::Stabilize(positive) => {
                let n = self.strands as i32;
                let mut letters = self.letters.clone();
                letters.push(if positive { n } else { -n });
                BraidWord::new(self.strands + 1, letters)
            }
        }
    }

    /// Combine with another braid word: split union or connected sum.
    pub fn compose(&self, other: &BraidWord, mode: ComposeMode) -> Result<BraidWord, BraidError> {
        let (shift, strands) = match mode {
            ComposeMode::Disjoint => (self.strands, self.strands + other.strands),
            ComposeMode::ConnectedSum => {
                if self.components().count != 1 || other.components().count != 1 {
                    return Err(BraidError::NotAKnot);
                }
                (self.strands - 1, self.strands + other.strands - 1)
            }
        };
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&a| a + a.signum() * shift as i32));
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, "}}")
    }
}

/// The partition of strands into closure components plus the linking matrix.
///
/// Component ids run `0..count`, ordered by least strand. Linking numbers
/// are stored as rationals and asserted integral on access, which catches
/// strand-tracking mistakes early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentStructure {
    pub component_of: Vec<usize>,
    pub count: usize,
    pub linking: Vec<Vec<Rational>>,
}

impl ComponentStructure {
    /// Linking number of two distinct components, asserted integral.
    pub fn linking_int(&self, i: usize, j: usize) -> i64 {
        let v = &self.linking[i][j];
        assert!(v.is_integer(), "half-integral linking number {} between {} and {}", v, i, j);
        let n = v.numer();
        i64::try_from(n.clone()).expect("linking number out of range")
    }

    /// Sum of all pairwise linking numbers.
    pub fn total_linking(&self) -> Rational {
        let mut sum = Rational::zero();
        for i in 0..self.count {
            for j in (i + 1)..self.count {
                sum += &self.linking[i][j];
            }
        }
        sum
    }

    /// Strands belonging to one component.
    pub fn strands_of(&self, comp: usize) -> Vec<usize> {
        (0..self.component_of.len())
            .filter(|&s| self.component_of[s] == comp)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn bw(text: &str) -> BraidWord {
        BraidWord::parse(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let w = bw("{1, -2, 1, -2}");
        assert_eq!(w.letters(), &[1, -2, 1, -2]);
        assert_eq!(w.strands(), 3);

        let hopf = bw("{1,1}");
        assert_eq!(hopf.strands(), 2);

        let id3 = BraidWord::parse_with_strands("{}", Some(3)).unwrap();
        assert_eq!(id3.strands(), 3);
        assert!(id3.is_empty());

        assert_eq!(BraidWord::parse("{0}"), Err(BraidError::ZeroLetter));
        assert!(matches!(
            BraidWord::parse_with_strands("{3}", Some(2)),
            Err(BraidError::LetterOutOfRange { .. })
        ));
        assert!(matches!(BraidWord::parse("{1,"), Err(BraidError::Malformed(_))));
        assert_eq!(bw("1 -2 1 -2"), w);
    }

    #[test]
    fn round_trip_display() {
        let w = bw("{1,-2,1,-2}");
        assert_eq!(w.to_string(), "{1,-2,1,-2}");
        assert_eq!(BraidWord::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn components_examples() {
        let hopf = bw("{1,1}");
        let cs = hopf.components();
        assert_eq!(cs.count, 2);
        assert_eq!(cs.linking_int(0, 1), 1);

        let trefoil = bw("{1,1,1}");
        assert_eq!(trefoil.components().count, 1);

        let id3 = BraidWord::parse_with_strands("{}", Some(3)).unwrap();
        let cs = id3.components();
        assert_eq!(cs.count, 3);
        assert!(cs.total_linking().is_zero());
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(bw("{1,1}").exponent_sum(), 2);
        assert_eq!(bw("{1,-2,1,-2}").exponent_sum(), 0);
        assert_eq!(BraidWord::identity(2).exponent_sum(), 0);
    }

    #[test]
    fn crossing_components_examples() {
        let hopf = bw("{1,1}");
        assert_eq!(hopf.crossing_components(0).unwrap(), (0, 1, 1));

        let trefoil = bw("{1,1,1}");
        assert_eq!(trefoil.crossing_components(1).unwrap(), (0, 0, 1));

        let w = bw("{1,-1}");
        let (a, b, sign) = w.crossing_components(1).unwrap();
        assert_eq!(sign, -1);
        assert_ne!(a, b);

        assert!(matches!(
            hopf.crossing_components(5),
            Err(BraidError::PositionOutOfRange(5))
        ));
    }

    #[test]
    fn extract_sublink_examples() {
        // {2,2} on 3 strands: unknot on strand 0, Hopf pair on strands 1, 2
        let w = BraidWord::parse_with_strands("{2,2}", Some(3)).unwrap();
        let cs = w.components();
        assert_eq!(cs.count, 3);
        let sub = w.extract_sublink(&BTreeSet::from([1, 2])).unwrap();
        assert_eq!(sub, bw("{1,1}"));

        let hopf = bw("{1,1}");
        assert_eq!(hopf.extract_sublink(&BTreeSet::from([0, 1])).unwrap(), hopf);

        let one = hopf.extract_sublink(&BTreeSet::from([0])).unwrap();
        assert_eq!(one.strands(), 1);
        assert!(one.is_empty());

        assert_eq!(
            hopf.extract_sublink(&BTreeSet::new()),
            Err(BraidError::BadComponentSet)
        );
    }

    #[test]
    fn sublink_linking_restriction() {
        // Hopf ⊔ mirror Hopf: four closure components, linked in pairs
        let w = BraidWord::parse_with_strands("{1,1,-3,-3}", Some(4)).unwrap();
        let cs = w.components();
        assert_eq!(cs.count, 4);
        assert_eq!(cs.linking_int(0, 1), 1);
        assert_eq!(cs.linking_int(2, 3), -1);
        assert_eq!(cs.linking_int(0, 2), 0);

        // kept components survive with the restricted linking matrix
        let sub = w.extract_sublink(&BTreeSet::from([2, 3])).unwrap();
        let sc = sub.components();
        assert_eq!(sc.count, 2);
        assert_eq!(sc.linking_int(0, 1), -1);
    }

    #[test]
    fn modify_examples() {
        let hopf = bw("{1,1}");
        assert_eq!(hopf.modify(&BraidMove::Smooth(0)).unwrap(), bw("{1}"));
        assert_eq!(bw("{1,-2}").modify(&BraidMove::Mirror).unwrap(), bw("{-1,2}"));

        let st = hopf.modify(&BraidMove::Stabilize(true)).unwrap();
        assert_eq!(st, bw("{1,1,2}"));
        assert_eq!(st.strands(), 3);

        let cy = bw("{1,-2,1}").modify(&BraidMove::Cycle).unwrap();
        assert_eq!(cy, bw("{-2,1,1}"));

        let cj = hopf.modify(&BraidMove::Conjugate(-2)).unwrap();
        assert_eq!(cj, bw("{-2,1,1,2}"));
        assert_eq!(cj.strands(), 3);
    }

    #[test]
    fn compose_examples() {
        let hopf = bw("{1,1}");
        let d = hopf.compose(&hopf, ComposeMode::Disjoint).unwrap();
        assert_eq!(d, BraidWord::parse_with_strands("{1,1,3,3}", Some(4)).unwrap());

        let trefoil = bw("{1,1,1}");
        let granny = trefoil.compose(&trefoil, ComposeMode::ConnectedSum).unwrap();
        assert_eq!(granny, bw("{1,1,1,2,2,2}"));
        assert_eq!(granny.strands(), 3);

        let e1 = BraidWord::identity(1);
        let d = e1.compose(&e1, ComposeMode::Disjoint).unwrap();
        assert_eq!(d.strands(), 2);
        assert!(d.is_empty());

        assert_eq!(
            hopf.compose(&trefoil, ComposeMode::ConnectedSum),
            Err(BraidError::NotAKnot)
        );
    }

    #[test]
    fn linking_under_moves() {
        let w = bw("{1,1,-2,1,2,2}");
        let total = w.components().total_linking();

        for mv in [BraidMove::Cycle, BraidMove::Conjugate(2), BraidMove::Stabilize(true), BraidMove::Stabilize(false)] {
            let m = w.modify(&mv).unwrap();
            assert_eq!(m.components().total_linking(), total, "move {:?}", mv);
        }

        let mirror = w.modify(&BraidMove::Mirror).unwrap();
        assert_eq!(mirror.components().total_linking(), -total.clone());
        assert_eq!(mirror.exponent_sum(), -w.exponent_sum());
    }

    #[test]
    fn random_sublinks_restrict_linking() {
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..80 {
            let strands = rng.random_range(2..=5usize);
            let len = rng.random_range(0..=10usize);
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let i = rng.random_range(1..strands) as i32;
                    if rng.random_bool(0.5) { i } else { -i }
                })
                .collect();
            let w = BraidWord::new(strands, letters).unwrap();
            let cs = w.components();

            // keep a random non-empty component subset
            let keep: BTreeSet<usize> =
                (0..cs.count).filter(|_| rng.random_bool(0.6)).collect();
            if keep.is_empty() {
                continue;
            }
            let sub = w.extract_sublink(&keep).unwrap();
            let sc = sub.components();
            assert_eq!(sc.count, keep.len());

            // surviving components keep their pairwise linking numbers;
            // id order is preserved because extraction keeps strand order
            let kept: Vec<usize> = keep.iter().copied().collect();
            for (a, &ca) in kept.iter().enumerate() {
                for (b, &cb) in kept.iter().enumerate() {
                    if a != b {
                        assert_eq!(sc.linking[a][b], cs.linking[ca][cb], "{} keep {:?}", w, keep);
                    }
                }
            }
        }
    }

    #[test]
    fn switch_and_smooth_effects() {
        let w = bw("{1,1,2,2}");
        let cs = w.components();
        // find a mixed crossing
        let pos = (0..w.len())
            .find(|&p| {
                let (a, b, _) = w.crossing_components(p).unwrap();
                a != b
            })
            .unwrap();
        let (ca, cb, sign) = w.crossing_components(pos).unwrap();

        let smoothed = w.modify(&BraidMove::Smooth(pos)).unwrap();
        assert_eq!(smoothed.components().count, cs.count - 1);

        let switched = w.modify(&BraidMove::Switch(pos)).unwrap();
        let cs2 = switched.components();
        assert_eq!(cs2.count, cs.count);
        let expected = &cs.linking[ca][cb] - rat(sign as i64);
        assert_eq!(cs2.linking[ca][cb], expected);
    }
}
