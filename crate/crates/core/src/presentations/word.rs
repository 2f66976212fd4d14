use std::cmp::Ordering;
use std::fmt;

/// An element of a free group, stored freely reduced and run-length encoded.
///
/// Each syllable is a `(generator, exponent)` pair with a nonzero exponent, and
/// adjacent syllables never share a generator. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
}

/// Freely reduces an arbitrary sequence of signed letters.
///
/// Entries may carry any exponent, including zero; they are merged and
/// cancelled left to right with a stack.
pub fn reduce_word<I>(raw: I) -> Word
where
    I: IntoIterator<Item = (usize, i64)>,
{
    let mut out: Vec<(usize, i64)> = Vec::new();
    for (g, e) in raw {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.0 == g => {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    Word { syllables: out }
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word { syllables: vec![(g, 1)] }
    }

    pub fn power_of(g: usize, e: i64) -> Self {
        reduce_word([(g, e)])
    }

    /// Builds a word from `(generator, exponent)` pairs, reducing as needed.
    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(syllables: I) -> Self {
        reduce_word(syllables)
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length: the sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Expands the word into single letters `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    pub fn letter_vec(&self) -> Vec<(usize, i64)> {
        self.letters().collect()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|&(g, _)| g).max()
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.syllables.iter().filter(|s| s.0 == g).map(|s| s.1).sum()
    }

    /// Number of letters `g^{±1}` in the word.
    pub fn occurrences(&self, g: usize) -> usize {
        self.syllables
            .iter()
            .filter(|s| s.0 == g)
            .map(|s| s.1.unsigned_abs() as usize)
            .sum()
    }

    pub fn contains_generator(&self, g: usize) -> bool {
        self.syllables.iter().any(|s| s.0 == g)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        reduce_word(self.syllables.iter().chain(other.syllables.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        reduce_word(std::iter::repeat_n(base.syllables.iter().copied(), reps).flatten())
    }

    /// Splits the word as `conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut core: std::collections::VecDeque<(usize, i64)> = self.syllables.iter().copied().collect();
        let mut conj = Vec::new();
        while core.len() >= 2 {
            let (g0, e0) = core[0];
            let (g1, e1) = core[core.len() - 1];
            if g0 != g1 {
                break;
            }
            core.pop_front();
            core.pop_back();
            conj.push((g0, e0));
            // g^a M g^b = g^a (M g^{a+b}) g^-a
            if e0 + e1 != 0 {
                core.push_back((g0, e0 + e1));
            }
        }
        (Word { syllables: core.into_iter().collect() }, reduce_word(conj))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.syllables.first(), self.syllables.last()) {
            (Some(a), Some(b)) => self.syllables.len() == 1 || a.0 != b.0,
            _ => true,
        }
    }

    /// Replaces every `g^e` by `r^e`.
    pub fn substitute(&self, g: usize, r: &Word) -> Word {
        reduce_word(self.syllables.iter().flat_map(|&(h, e)| {
            if h == g {
                r.pow(e).syllables
            } else {
                vec![(h, e)]
            }
        }))
    }

    /// Applies a homomorphism of free groups given by the images of the
    /// generators (`images[g]` is the image of generator `g`).
    pub fn map_generators(&self, images: &[Word]) -> Word {
        reduce_word(self.syllables.iter().flat_map(|&(g, e)| images[g].pow(e).syllables))
    }

    /// Renames generators with an index map; useful for dropping or
    /// reordering generators.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> Word {
        reduce_word(self.syllables.iter().map(|&(g, e)| (map(g), e)))
    }

    /// Shortlex order on letter sequences, with letters ordered
    /// `g0 < g0⁻¹ < g1 < g1⁻¹ < …`.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let key = |(g, e): (usize, i64)| (g, e < 0);
            self.letters().map(key).cmp(other.letters().map(key))
        })
    }

    /// Renders the word in the presentation grammar using `names`.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> WordDisplay<'a, S> {
        WordDisplay { word: self, names }
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.multiply(rhs)
    }
}

pub struct WordDisplay<'a, S> {
    word: &'a Word,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for WordDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match self.names.get(g) {
                Some(name) => f.write_str(name.as_ref())?,
                None => write!(f, "#{g}")?,
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
