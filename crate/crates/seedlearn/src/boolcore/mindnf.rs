use super::assignment::{Assignment, Literal};
use super::dnf::Dnf;
use super::partial::PartialFn;
use super::term::Term;
use crate::error::{Error, Result};

/// Default dimension cap for exhaustive implicant enumeration.
pub const MINDNF_MAX_N: u32 = 10;

/// Returns a smallest DNF consistent with `f` (term count = ds(f)), or
/// `None` when a budget is given and ds(f) exceeds it.
///
/// Exhaustive and exact: enumerates implicants (terms covering no
/// negative), reduces to prime implicants, then runs an exact minimum
/// set cover over the positives.  The prime reduction is a pure
/// optimization; any implicant extends to a prime one with no smaller
/// coverage.
pub fn exact_min_dnf(f: &PartialFn, budget: Option<usize>) -> Result<Option<Dnf>> {
    exact_min_dnf_capped(f, budget, MINDNF_MAX_N)
}

pub fn exact_min_dnf_capped(
    f: &PartialFn,
    budget: Option<usize>,
    max_n: u32,
) -> Result<Option<Dnf>> {
    let n = f.n();
    if n > max_n {
        return Err(Error::ResourceCap(format!("exact_min_dnf: n={n} exceeds cap {max_n}")));
    }
    if f.positives().is_empty() {
        // Constant 0: the empty formula, size 0, fits any budget.
        return Ok(Some(Dnf::constant_false(n)));
    }

    let words = mask_words(n);
    let full = full_mask(n);
    let pos_mask = point_mask(n, f.positives().iter());
    let neg_mask = point_mask(n, f.negatives().iter());
    let lit_masks = literal_masks(n);

    // Enumerate implicants covering at least one positive, bit-parallel
    // over the 2^n coverage sets.
    let mut implicants: Vec<(Term, Vec<u64>)> = Vec::new();
    let mut stack: Vec<Literal> = Vec::new();
    enumerate_implicants(
        1,
        n,
        &full,
        &pos_mask,
        &neg_mask,
        &lit_masks,
        &mut stack,
        &mut implicants,
    );
    debug_assert!(!implicants.is_empty());

    // Prime reduction: keep a term only if deleting any one literal
    // would cover a negative.
    let primes: Vec<(Term, Vec<u64>)> = implicants
        .into_iter()
        .filter(|(t, _)| {
            t.literals().all(|skip| {
                let mut cov = full.clone();
                for l in t.literals().filter(|l| *l != skip) {
                    and_assign(&mut cov, lit_mask(&lit_masks, l, words));
                }
                intersects(&cov, &neg_mask)
            })
        })
        .collect();

    // Exact minimum cover of the positives by prime-implicant coverage
    // sets, branch and bound seeded with the greedy solution.
    let pos_cover: Vec<Vec<u64>> =
        primes.iter().map(|(_, cov)| and(cov, &pos_mask)).collect();
    let greedy = greedy_cover(&pos_mask, &pos_cover);
    let mut best_len = greedy.len();
    if let Some(b) = budget {
        best_len = best_len.min(b.saturating_add(1));
    }
    let mut best: Option<Vec<usize>> = if greedy.len() <= best_len { Some(greedy) } else { None };
    let mut chosen = Vec::new();
    branch(&pos_mask, &pos_cover, &mut chosen, &mut best_len, &mut best);

    match best {
        Some(sol) if budget.is_none_or(|b| sol.len() <= b) => {
            let terms = sol.iter().map(|&i| primes[i].0.clone()).collect();
            Ok(Some(Dnf::new(n, terms)))
        }
        _ => Ok(None),
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate_implicants(
    var: u32,
    n: u32,
    cov: &[u64],
    pos: &[u64],
    neg: &[u64],
    lit_masks: &[Vec<u64>],
    stack: &mut Vec<Literal>,
    out: &mut Vec<(Term, Vec<u64>)>,
) {
    if !intersects(cov, pos) {
        return; // covers no positive; no extension will either
    }
    if var > n {
        if !intersects(cov, neg) {
            out.push((Term::from_literals(stack.iter().cloned()), cov.to_vec()));
        }
        return;
    }
    let words = mask_words(n);
    enumerate_implicants(var + 1, n, cov, pos, neg, lit_masks, stack, out);
    for lit in [Literal::pos(var), Literal::neg(var)] {
        let restricted = and(cov, lit_mask(lit_masks, &lit, words));
        stack.push(lit);
        enumerate_implicants(var + 1, n, &restricted, pos, neg, lit_masks, stack, out);
        stack.pop();
    }
}

fn greedy_cover(pos: &[u64], covers: &[Vec<u64>]) -> Vec<usize> {
    let mut uncovered = pos.to_vec();
    let mut picked = Vec::new();
    while count(&uncovered) > 0 {
        let (i, _) = covers
            .iter()
            .enumerate()
            .map(|(i, c)| (i, count(&and(c, &uncovered))))
            .max_by_key(|&(i, cnt)| (cnt, std::cmp::Reverse(i)))
            .expect("every positive has a covering implicant");
        subtract_assign(&mut uncovered, &covers[i]);
        picked.push(i);
    }
    picked
}

fn branch(
    uncovered: &[u64],
    covers: &[Vec<u64>],
    chosen: &mut Vec<usize>,
    best_len: &mut usize,
    best: &mut Option<Vec<usize>>,
) {
    if count(uncovered) == 0 {
        if chosen.len() < *best_len || best.is_none() && chosen.len() <= *best_len {
            *best_len = chosen.len();
            *best = Some(chosen.clone());
        }
        return;
    }
    if chosen.len() + 1 > *best_len {
        return;
    }
    // Branch on the uncovered positive with the fewest covering terms.
    let target = pick_hardest_point(uncovered, covers);
    for (i, c) in covers.iter().enumerate() {
        if get_bit(c, target) {
            chosen.push(i);
            branch(&subtract(uncovered, c), covers, chosen, best_len, best);
            chosen.pop();
        }
    }
}

fn pick_hardest_point(uncovered: &[u64], covers: &[Vec<u64>]) -> usize {
    let mut best_point = 0;
    let mut best_count = usize::MAX;
    for w in 0..uncovered.len() {
        let mut bits = uncovered[w];
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let point = w * 64 + b;
            let cnt = covers.iter().filter(|c| get_bit(c, point)).count();
            if cnt < best_count {
                best_count = cnt;
                best_point = point;
            }
        }
    }
    best_point
}

// -- small fixed-width bitset helpers over 2^n points --

fn mask_words(n: u32) -> usize {
    ((1usize << n) + 63) / 64
}

fn full_mask(n: u32) -> Vec<u64> {
    let size = 1usize << n;
    let mut m = vec![u64::MAX; mask_words(n)];
    if size % 64 != 0 {
        *m.last_mut().unwrap() = (1u64 << (size % 64)) - 1;
    }
    m
}

fn point_mask<'a, I: Iterator<Item = &'a Assignment>>(n: u32, points: I) -> Vec<u64> {
    let mut m = vec![0u64; mask_words(n)];
    for a in points {
        let i = a.index() as usize;
        m[i / 64] |= 1 << (i % 64);
    }
    m
}

/// Coverage masks for the 2n literals: index 2*(v-1) is x_v, +1 is ¬x_v.
fn literal_masks(n: u32) -> Vec<Vec<u64>> {
    let mut masks = Vec::with_capacity(2 * n as usize);
    for v in 1..=n {
        for negated in [false, true] {
            let mut m = vec![0u64; mask_words(n)];
            for a in Assignment::all(n) {
                if a.get(v) != negated {
                    let i = a.index() as usize;
                    m[i / 64] |= 1 << (i % 64);
                }
            }
            masks.push(m);
        }
    }
    masks
}

fn lit_mask<'a>(masks: &'a [Vec<u64>], l: &Literal, _words: usize) -> &'a [u64] {
    &masks[2 * (l.var() as usize - 1) + usize::from(l.negated())]
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn and_assign(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= y;
    }
}

fn subtract(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & !y).collect()
}

fn subtract_assign(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= !y;
    }
}

fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn count(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

fn get_bit(a: &[u64], i: usize) -> bool {
    a[i / 64] >> (i % 64) & 1 == 1
}
