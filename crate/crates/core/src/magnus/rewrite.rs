use num_integer::Integer;

use super::{FakeHnn, MagnusError, RewriteCase, TraceStep};
use crate::abelianize::{Character, CharacterError};
use crate::presentations::{reduce_word, Presentation, Word};

/// Working state: the original generators followed by the new ones, each
/// with its definition as a word in the original generators.
struct Work {
    names: Vec<String>,
    definitions: Vec<Word>,
    trace: Vec<TraceStep>,
}

impl Work {
    fn show(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }

    fn fresh_name(&self, stem: &str, index: Option<usize>) -> String {
        let suffix = index.map(|i| i.to_string()).unwrap_or_default();
        let mut stem = stem.to_string();
        loop {
            let candidate = format!("{stem}{suffix}");
            if !self.names.contains(&candidate) {
                return candidate;
            }
            let first = stem[..1].to_string();
            stem.push_str(&first);
        }
    }

    /// Adds a generator defined by `definition`, a word over the current
    /// working generators.
    fn add_generator(&mut self, name: String, definition: &Word) -> usize {
        let in_original = definition.map_generators(&self.definitions);
        self.trace.push(TraceStep::AddGenerator { name: name.clone(), definition: self.show(definition) });
        self.names.push(name);
        self.definitions.push(in_original);
        self.names.len() - 1
    }
}

/// Coefficients `x` with `Σ x_i φ_i = 1`, as `(generator, x_i)` pairs with
/// `x_i ≠ 0`.
///
/// Prefers the first pair of generators with coprime values; `p` is then the
/// solution of least absolute value (ties go to `p ≥ 0`). When no coprime
/// pair exists the gcd is accumulated over all nonzero values in order.
fn bezout_combination(phi: &[i64]) -> Vec<(usize, i64)> {
    for i in 0..phi.len() {
        for j in i + 1..phi.len() {
            if phi[i].gcd(&phi[j]) == 1 {
                let (p, q) = coprime_pair_coefficients(phi[i], phi[j]);
                return [(i, p), (j, q)].into_iter().filter(|&(_, x)| x != 0).collect();
            }
        }
    }
    let mut g = 0i64;
    let mut coeffs: Vec<(usize, i64)> = Vec::new();
    for (i, &v) in phi.iter().enumerate().filter(|(_, v)| **v != 0) {
        // g = Σ coeffs·φ; combine g and v into gcd(g, v) = x·g + y·v
        let e = g.extended_gcd(&v);
        let sign = e.gcd.signum();
        coeffs.iter_mut().for_each(|(_, c)| *c *= sign * e.x);
        coeffs.push((i, sign * e.y));
        g = e.gcd.abs();
    }
    debug_assert_eq!(g, 1);
    coeffs.retain(|&(_, x)| x != 0);
    coeffs
}

/// `p·a + q·b = 1` with `|p|` minimal, ties broken by `p ≥ 0`.
fn coprime_pair_coefficients(a: i64, b: i64) -> (i64, i64) {
    let e = a.extended_gcd(&b);
    let (mut p, mut q) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
    // solutions are (p + k·b, q − k·a)
    let m = b.abs();
    let r = p.mod_floor(&m);
    let best = if r.abs() < (r - m).abs() || (r.abs() == (r - m).abs() && r >= 0) { r } else { r - m };
    let k = (best - p) / b;
    p += k * b;
    q -= k * a;
    debug_assert_eq!(p * a + q * b, 1);
    (p, q)
}

/// Letter index of the first `s⁻¹` (scanning from index 0) whose next
/// `s`-letter in cyclic order is `s⁺¹`, together with that letter's index.
fn find_conjugate_block(letters: &[(usize, i64)], s: usize) -> Option<(usize, usize)> {
    let n = letters.len();
    (0..n).filter(|&i| letters[i] == (s, -1)).find_map(|i| {
        let j = (1..n).map(|k| (i + k) % n).find(|&j| letters[j].0 == s)?;
        (letters[j].1 == 1).then_some((i, j))
    })
}

/// Rewrites `p` into fake HNN form along the primitive character `c`.
///
/// The stable letter is chosen as follows. If some generator `g` has
/// `φ(g) = ±1` (the first one is used), then `s = g^{φ(g)}` and every other
/// generator gives `d_i = g_i s^{-φ(g_i)}`. Otherwise `s` is a product of
/// powers of generators whose exponents are Bezout coefficients for the
/// values of `φ`, every generator gives `d_i = g_i s^{-φ(g_i)}`, and the
/// defining relation of `s` becomes an extra relator.
///
/// Each relator then has `s`-exponent sum zero. While it still contains `s`,
/// the first cyclic subword `s⁻¹ w s` with `w` free of `s` is replaced by a
/// generator `c` with `s c s⁻¹ = w`; a `c` already introduced for the same
/// `w` is reused.
pub fn magnus_rewrite(p: &Presentation, c: &Character) -> Result<FakeHnn, MagnusError> {
    c.check_against(p)?;
    let gcd = c.gcd();
    if gcd == 0 {
        return Err(CharacterError::ZeroCharacter.into());
    }
    if gcd != 1 {
        return Err(MagnusError::NotPrimitive(c.clone(), gcd));
    }

    let n = p.rank();
    let phi = c.values();
    let mut work = Work {
        names: p.generators().to_vec(),
        definitions: (0..n).map(Word::generator).collect(),
        trace: Vec::new(),
    };
    let s_name = work.fresh_name("s", None);
    let mut images: Vec<Word> = Vec::with_capacity(n);
    let mut extra = None;

    let unit = (0..n).find(|&i| phi[i].abs() == 1);
    let combination = match unit {
        Some(i0) => vec![(i0, phi[i0])],
        None => bezout_combination(phi),
    };
    let s_def = reduce_word(combination.iter().copied());
    let s = work.add_generator(s_name, &s_def);
    let sw = Word::generator(s);

    let mut d_gens = Vec::new();
    for i in 0..n {
        if unit == Some(i) {
            images.push(sw.pow(phi[i]));
            continue;
        }
        let name = work.fresh_name("d", Some(d_gens.len() + 1));
        let d = work.add_generator(name, &Word::generator(i).multiply(&sw.pow(-phi[i])));
        d_gens.push(d);
        images.push(Word::generator(d).multiply(&sw.pow(phi[i])));
    }
    let mut full_images: Vec<Word> = (0..work.names.len()).map(Word::generator).collect();
    full_images[..n].clone_from_slice(&images);
    for i in 0..n {
        let solved_from = match unit {
            Some(i0) if i0 == i => format!("definition of {}", work.names[s]),
            _ => format!("definition of {}", work.names[d_gens[i - usize::from(unit.is_some_and(|u| u < i))]]),
        };
        work.trace.push(TraceStep::EliminateGenerator {
            name: work.names[i].clone(),
            replacement: work.show(&images[i]),
            solved_from,
        });
    }
    if unit.is_none() {
        // the defining relation of s, with the original generators eliminated
        let r = sw.inverse().multiply(&s_def.map_generators(&full_images));
        work.trace.push(TraceStep::AddRelator { relator: work.show(&r) });
        extra = Some(r);
    }

    let mut relators: Vec<Word> = p
        .relators()
        .iter()
        .map(|r| r.map_generators(&full_images))
        .chain(extra)
        .map(|r| r.cyclic_reduce().0)
        .collect();

    let mut c_gens: Vec<usize> = Vec::new();
    let mut conj: Vec<(usize, Word)> = Vec::new();
    for k in 0..relators.len() {
        loop {
            let letters = relators[k].letter_vec();
            let Some((i, j)) = find_conjugate_block(&letters, s) else { break };
            let block: Vec<(usize, i64)> = if i < j {
                letters[i + 1..j].to_vec()
            } else {
                letters[i + 1..].iter().chain(&letters[..j]).copied().collect()
            };
            let w = reduce_word(block);
            let cg = match conj.iter().find(|(_, v)| *v == w) {
                Some(&(cg, _)) => cg,
                None => {
                    let name = work.fresh_name("c", Some(c_gens.len() + 1));
                    let def = sw.inverse().multiply(&w).multiply(&sw);
                    let cg = work.add_generator(name, &def);
                    c_gens.push(cg);
                    conj.push((cg, w));
                    cg
                }
            };
            let replaced: Vec<(usize, i64)> = if i < j {
                letters[..i].iter().copied().chain([(cg, 1)]).chain(letters[j + 1..].iter().copied()).collect()
            } else {
                letters[j + 1..i].iter().copied().chain([(cg, 1)]).collect()
            };
            let new = reduce_word(replaced).cyclic_reduce().0;
            work.trace.push(TraceStep::ReplaceRelator {
                index: k,
                from: work.show(&relators[k]),
                to: work.show(&new),
            });
            relators[k] = new;
        }
    }

    let mut k = 0;
    while k < relators.len() {
        if relators[k].is_identity() {
            work.trace.push(TraceStep::RemoveRelator { index: k, relator: "1".into() });
            relators.remove(k);
        } else {
            k += 1;
        }
    }

    let case = match unit {
        Some(i0) => RewriteCase::UnitGenerator { generator: p.generators()[i0].clone() },
        None => RewriteCase::Bezout {
            combination: combination.iter().map(|&(g, x)| (p.generators()[g].clone(), x)).collect(),
        },
    };
    Ok(FakeHnn {
        original: p.clone(),
        character: c.clone(),
        names: work.names,
        definitions: work.definitions,
        stable: s,
        d_gens,
        c_gens,
        relators,
        conj,
        trace: work.trace,
        case,
        simplification: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::magnus::grank_upper;

    fn rewrite(p: &Presentation, values: &[i64]) -> FakeHnn {
        magnus_rewrite(p, &Character::on(p, values.to_vec()).unwrap()).unwrap()
    }

    fn shown(f: &FakeHnn) -> (Vec<String>, Vec<String>) {
        (
            f.relators().iter().map(|r| f.word_to_string(r)).collect(),
            f.conj_relations().iter().map(|(_, w)| f.word_to_string(w)).collect(),
        )
    }

    #[test]
    fn torus_raw() {
        let f = rewrite(&corpus::p2(), &[1, 0]);
        assert_eq!(f.name(f.stable()), "s");
        assert_eq!(f.d_count(), 1);
        assert_eq!(shown(&f), (vec!["d1 c1".to_string()], vec!["d1^-1".to_string()]));
        assert_eq!(f.original().word_to_string(f.definition(f.stable())), "a");
        assert_eq!(f.original().word_to_string(f.definition(f.d_gens()[0])), "b");
        f.check_invariants().unwrap();
    }

    #[test]
    fn bs12_raw() {
        let f = rewrite(&corpus::p3(), &[0, 1]);
        assert_eq!(f.original().word_to_string(f.definition(f.stable())), "t");
        assert_eq!(shown(&f), (vec!["d1 c1".to_string()], vec!["d1^-2".to_string()]));
        f.check_invariants().unwrap();
    }

    #[test]
    fn bs12_negative_direction_raw() {
        let f = rewrite(&corpus::p3(), &[0, -1]);
        assert_eq!(f.original().word_to_string(f.definition(f.stable())), "t^-1");
        assert_eq!(shown(&f), (vec!["c1 d1^-2".to_string()], vec!["d1".to_string()]));
        f.check_invariants().unwrap();
    }

    #[test]
    fn trefoil_raw() {
        let f = rewrite(&corpus::p4(), &[1, 1]);
        assert_eq!(f.c_gens().len(), 2);
        assert_eq!(shown(&f), (vec!["d1^-1 c2".to_string()], vec!["d1^-1".to_string(), "c1 d1".to_string()]));
        f.check_invariants().unwrap();
    }

    #[test]
    fn free_group_has_no_relators() {
        let f = rewrite(&corpus::p1(), &[1, 0]);
        assert!(f.relators().is_empty());
        assert!(f.c_gens().is_empty());
        assert_eq!(grank_upper(&f), 1);
    }

    #[test]
    fn bezout_case_on_free_group() {
        let p = corpus::p1();
        let f = rewrite(&p, &[2, 3]);
        assert_eq!(coprime_pair_coefficients(2, 3), (-1, 1));
        assert_eq!(p.word_to_string(f.definition(f.stable())), "a^-1 b");
        assert_eq!(f.d_count(), 2);
        assert_eq!(f.relators().len(), 1);
        f.check_invariants().unwrap();
    }

    #[test]
    fn pair_coefficients_are_minimal() {
        assert_eq!(coprime_pair_coefficients(3, 2), (1, -1));
        assert_eq!(coprime_pair_coefficients(5, 2), (1, -2));
        assert_eq!(coprime_pair_coefficients(-2, 3), (1, 1));
        assert_eq!(coprime_pair_coefficients(7, 5), (-2, 3));
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if b.abs() < 2 || a.gcd(&b) != 1 {
                    continue;
                }
                let (p, q) = coprime_pair_coefficients(a, b);
                assert_eq!(p * a + q * b, 1);
                assert!(2 * p.abs() <= b.abs(), "({a},{b}) gave p = {p}");
            }
        }
    }

    #[test]
    fn bezout_without_coprime_pair() {
        let combo = bezout_combination(&[6, 10, 15]);
        let total: i64 = combo.iter().map(|&(i, x)| x * [6, 10, 15][i]).sum();
        assert_eq!(total, 1);
        assert_eq!(combo.len(), 3);
    }

    #[test]
    fn conjugate_block_scan() {
        let (s, d) = (0, 1);
        // s d s^-1 d^-1: the block after s^-1 wraps to the leading s
        let letters = [(s, 1), (d, 1), (s, -1), (d, -1)];
        assert_eq!(find_conjugate_block(&letters, s), Some((2, 0)));
        // s^-1 s^-1 d s s: the first s^-1 is followed by another s^-1
        let letters = [(s, -1), (s, -1), (d, 1), (s, 1), (s, 1)];
        assert_eq!(find_conjugate_block(&letters, s), Some((1, 3)));
    }

    #[test]
    fn rejects_bad_characters() {
        let p = corpus::p2();
        assert!(matches!(
            magnus_rewrite(&p, &Character::new(vec![2, 0])),
            Err(MagnusError::NotPrimitive(_, 2))
        ));
        assert!(matches!(
            magnus_rewrite(&p, &Character::new(vec![0, 0])),
            Err(MagnusError::Character(CharacterError::ZeroCharacter))
        ));
        assert!(matches!(
            magnus_rewrite(&corpus::p3(), &Character::new(vec![1, 0])),
            Err(MagnusError::Character(CharacterError::NotAHomomorphism { .. }))
        ));
    }
}
