use std::collections::{BTreeSet, VecDeque};

use num_rational::Ratio;
use serde::Serialize;

use super::SigmaError;
use crate::presentations::{reduce_word, Presentation, Word};

/// States explored per Dehn normalization before giving up.
pub const DEHN_SEARCH_CAP: usize = 10_000;

type Letters = Vec<(usize, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleKind {
    Free,
    FreeAbelian,
    Dehn,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Free => "free",
            OracleKind::FreeAbelian => "abelian",
            OracleKind::Dehn => "dehn",
        }
    }
}

/// A word-problem solver validated against a presentation.
#[derive(Clone, Debug)]
pub struct Oracle {
    kind: OracleKind,
    presentation: Presentation,
    /// Symmetrized relators (all rotations of relators and their inverses),
    /// sorted and deduplicated; only used by [`OracleKind::Dehn`].
    symmetrized: Vec<Letters>,
}

fn rotations(letters: &[(usize, i64)]) -> impl Iterator<Item = Letters> + '_ {
    (0..letters.len()).map(move |i| letters[i..].iter().chain(&letters[..i]).copied().collect())
}

fn inverse_letters(letters: &[(usize, i64)]) -> Letters {
    letters.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// All cyclic rotations of the relators and of their inverses.
pub fn symmetrized_relators(p: &Presentation) -> Vec<Letters> {
    let mut set = BTreeSet::new();
    for r in p.relators().iter().filter(|r| !r.is_identity()) {
        let letters = r.letter_vec();
        set.extend(rotations(&letters));
        set.extend(rotations(&inverse_letters(&letters)));
    }
    set.into_iter().collect()
}

fn common_prefix(a: &[(usize, i64)], b: &[(usize, i64)]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Checks the metric small cancellation condition `C'(λ)`: every piece (a
/// common prefix of two distinct symmetrized relators) is shorter than `λ`
/// times the length of each relator it is a prefix of.
pub fn verify_small_cancellation(p: &Presentation, lambda: Ratio<i64>) -> bool {
    let sym = symmetrized_relators(p);
    sym.iter().enumerate().all(|(i, r1)| {
        sym.iter().enumerate().filter(|&(j, _)| j != i).all(|(_, r2)| {
            let piece = common_prefix(r1, r2) as i64;
            Ratio::from_integer(piece) < lambda * Ratio::from_integer(r1.len() as i64)
        })
    })
}

/// Canonical form of a relator up to rotation and inversion.
fn cyclic_class(w: &Word) -> Letters {
    let letters = w.letter_vec();
    rotations(&letters).chain(rotations(&inverse_letters(&letters))).min().unwrap_or_default()
}

impl Oracle {
    /// Validates that `kind` solves the word problem for `p`.
    pub fn new(kind: OracleKind, p: &Presentation) -> Result<Oracle, SigmaError> {
        let reject = |reason: String| SigmaError::NoApplicableOracle { oracle: kind.name(), reason };
        match kind {
            OracleKind::Free => {
                if !p.relators().is_empty() {
                    return Err(reject(format!("presentation has {} relator(s)", p.relators().len())));
                }
            }
            OracleKind::FreeAbelian => {
                let n = p.rank();
                let mut expected: Vec<Letters> = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        let (a, b) = (Word::generator(i), Word::generator(j));
                        cyclic_class(&a.multiply(&b).multiply(&a.inverse()).multiply(&b.inverse()))
                    })
                    .collect();
                let mut found: Vec<Letters> = p.relators().iter().map(cyclic_class).collect();
                expected.sort();
                found.sort();
                if expected != found {
                    return Err(reject("relators are not exactly the pairwise commutators of the generators".into()));
                }
            }
            OracleKind::Dehn => {
                if !verify_small_cancellation(p, Ratio::new(1, 6)) {
                    return Err(reject("presentation does not satisfy C'(1/6)".into()));
                }
            }
        }
        let symmetrized = if kind == OracleKind::Dehn { symmetrized_relators(p) } else { Vec::new() };
        Ok(Oracle { kind, presentation: p.clone(), symmetrized })
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// A canonical representative of the element `w`.
    pub fn normalize(&self, w: &Word) -> Result<Word, SigmaError> {
        match self.kind {
            OracleKind::Free => Ok(w.clone()),
            OracleKind::FreeAbelian => {
                let mut sums = vec![0i64; self.presentation.rank()];
                for &(g, e) in w.syllables() {
                    sums[g] += e;
                }
                Ok(Word::from_syllables(sums.into_iter().enumerate().filter(|&(_, e)| e != 0)))
            }
            OracleKind::Dehn => self.dehn_normal_form(w),
        }
    }

    /// True if the oracle proves `u = v` in the group.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool, SigmaError> {
        match self.kind {
            OracleKind::Dehn => Ok(self.dehn_reduce(u.multiply(&v.inverse()).letter_vec()).is_empty()),
            _ => Ok(self.normalize(u)? == self.normalize(v)?),
        }
    }

    /// The longest subword at position `i` of `w` that is more than half of
    /// a symmetrized relator, as `(relator index, length)`; the first relator
    /// wins ties.
    fn long_match(&self, w: &[(usize, i64)], i: usize) -> Option<(usize, usize)> {
        self.symmetrized
            .iter()
            .enumerate()
            .map(|(k, r)| (k, common_prefix(&w[i..], r)))
            .filter(|&(k, len)| 2 * len > self.symmetrized[k].len())
            .fold(None, |best, (k, len)| match best {
                Some((_, l)) if l >= len => best,
                _ => Some((k, len)),
            })
    }

    /// Dehn's algorithm: while some subword is more than half of a
    /// symmetrized relator `r = u v`, replace `u` by `v⁻¹`.
    fn dehn_reduce(&self, letters: Letters) -> Letters {
        let mut w = reduce_word(letters).letter_vec();
        'outer: loop {
            for i in 0..w.len() {
                let Some((k, len)) = self.long_match(&w, i) else { continue };
                let complement = inverse_letters(&self.symmetrized[k][len..]);
                let next = w[..i].iter().chain(&complement).chain(&w[i + len..]).copied();
                w = reduce_word(next).letter_vec();
                continue 'outer;
            }
            return w;
        }
    }

    /// Words obtained from `w` by replacing exactly half of a symmetrized
    /// relator by the other half.
    fn half_swaps<'a>(&'a self, w: &'a [(usize, i64)]) -> impl Iterator<Item = Letters> + 'a {
        (0..w.len()).flat_map(move |i| {
            self.symmetrized.iter().filter_map(move |r| {
                let half = r.len() / 2;
                if r.len() % 2 != 0 || half == 0 || common_prefix(&w[i..], r) < half {
                    return None;
                }
                let complement = inverse_letters(&r[half..]);
                Some(w[..i].iter().chain(&complement).chain(&w[i + half..]).copied().collect())
            })
        })
    }

    /// Dehn reduction followed by the shortlex least word reachable through
    /// half-relator swaps and further Dehn reductions.
    fn dehn_normal_form(&self, w: &Word) -> Result<Word, SigmaError> {
        let start = self.dehn_reduce(w.letter_vec());
        let mut seen: BTreeSet<Letters> = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for next in self.half_swaps(&cur) {
                let next = self.dehn_reduce(next);
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= DEHN_SEARCH_CAP {
                    return Err(SigmaError::SearchCapExceeded { cap: DEHN_SEARCH_CAP });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        let best = seen.into_iter().map(reduce_word).min_by(|a, b| a.shortlex_cmp(b)).expect("start state");
        Ok(best)
    }
}
