use super::{FakeHnn, SimplifyOutcome, TraceStep};
use crate::presentations::{reduce_word, Word};

pub const DEFAULT_MAX_PASSES: usize = 100;

/// Solves `r = 1` for the single occurrence of `g` in `r`.
fn solve_for(r: &Word, g: usize) -> Word {
    let letters = r.letter_vec();
    let idx = letters.iter().position(|&(h, _)| h == g).expect("generator occurs in relator");
    let e = letters[idx].1;
    // g^e · rest = 1 after rotating g to the front
    let rest = reduce_word(letters[idx + 1..].iter().chain(&letters[..idx]).copied());
    rest.pow(-e)
}

/// Eliminates `d` generators that occur exactly once in some relator.
///
/// A pass scans the relators in order and, for each one, the `d` generators
/// in order; the first `d` occurring exactly once (hence with exponent `±1`)
/// is solved for, the relator is dropped and the solution is substituted into
/// every other relator and every conjugation image. The pass then resumes at
/// the same relator position. Simplification stops after a pass without
/// eliminations or after `max_passes` passes. `c` generators are never
/// eliminated, so the fake HNN shape is kept.
pub fn tietze_simplify(f: &FakeHnn, max_passes: usize) -> FakeHnn {
    let mut out = f.clone();
    let mut eliminated = Vec::new();
    let mut passes = 0;
    let mut converged = false;
    while passes < max_passes {
        passes += 1;
        let mut changed = false;
        let mut k = 0;
        while k < out.relators.len() {
            let r = &out.relators[k];
            let Some(pos) = out.d_gens.iter().position(|&d| r.occurrences(d) == 1) else {
                k += 1;
                continue;
            };
            let d = out.d_gens.remove(pos);
            let r = out.relators.remove(k);
            let replacement = solve_for(&r, d);
            out.trace.push(TraceStep::EliminateGenerator {
                name: out.names[d].clone(),
                replacement: out.word_to_string(&replacement),
                solved_from: out.word_to_string(&r),
            });
            for w in out.relators.iter_mut() {
                *w = w.substitute(d, &replacement).cyclic_reduce().0;
            }
            for (_, w) in out.conj.iter_mut() {
                *w = w.substitute(d, &replacement);
            }
            let mut i = 0;
            while i < out.relators.len() {
                if out.relators[i].is_identity() {
                    out.relators.remove(i);
                    out.trace.push(TraceStep::RemoveRelator { index: i, relator: "1".into() });
                } else {
                    i += 1;
                }
            }
            eliminated.push(out.names[d].clone());
            changed = true;
        }
        if !changed {
            converged = true;
            break;
        }
    }
    out.simplification = Some(SimplifyOutcome {
        passes,
        eliminated,
        pass_limit_reached: !converged && max_passes > 0,
    });
    out
}
