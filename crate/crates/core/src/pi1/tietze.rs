use std::collections::BTreeSet;

use super::{GenLetter, GroupPresentation};

type Word = Vec<GenLetter>;

fn inv(w: &[GenLetter]) -> Word {
    w.iter().rev().map(|l| l.inv()).collect()
}

fn reduce(w: &[GenLetter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(w: &[GenLetter]) -> Word {
    let mut w = reduce(w);
    while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
        w.pop();
        w.remove(0);
    }
    w
}

fn key(w: &[GenLetter]) -> (usize, &[GenLetter]) {
    (w.len(), w)
}

fn rotations(w: &[GenLetter]) -> impl Iterator<Item = Word> + '_ {
    (0..w.len()).map(move |i| {
        let mut r = w[i..].to_vec();
        r.extend_from_slice(&w[..i]);
        r
    })
}

/// Shortlex-least rotation of the cyclic reduction of `w` or its inverse.
fn canonical(w: &[GenLetter]) -> Word {
    let w = cyclic_reduce(w);
    let mut best = w.clone();
    for v in [w.clone(), inv(&w)] {
        for r in rotations(&v) {
            if key(&r) < key(&best) {
                best = r;
            }
        }
    }
    best
}

/// Rewrite rules `u → v` with `u v⁻¹` a cyclic conjugate of `r` or `r⁻¹` and
/// `v` shortlex-smaller than `u`.
fn rules_from(r: &[GenLetter]) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for v in [r.to_vec(), inv(r)] {
        for c in rotations(&v) {
            for cut in 1..=c.len() {
                let rhs = inv(&c[cut..]);
                if key(&rhs) < key(&c[..cut]) {
                    out.push((c[..cut].to_vec(), rhs));
                }
            }
        }
    }
    out
}

fn rewrite(mut w: Word, rules: &[(Word, Word)]) -> Word {
    'outer: loop {
        for (u, v) in rules {
            if u.len() > w.len() {
                continue;
            }
            if let Some(i) = (0..=w.len() - u.len()).find(|&i| w[i..i + u.len()] == u[..]) {
                let mut next = w[..i].to_vec();
                next.extend_from_slice(v);
                next.extend_from_slice(&w[i + u.len()..]);
                w = reduce(&next);
                continue 'outer;
            }
        }
        return w;
    }
}

/// Rewrites every rotation of `w` and keeps the best canonical result until
/// nothing improves.
fn cyclic_rewrite(w: &[GenLetter], rules: &[(Word, Word)]) -> Word {
    let mut best = canonical(w);
    loop {
        let next = rotations(&best)
            .map(|r| canonical(&rewrite(r, rules)))
            .min_by(|a, b| key(a).cmp(&key(b)));
        match next {
            Some(n) if key(&n) < key(&best) => best = n,
            _ => return best,
        }
    }
}

fn substitute(w: &[GenLetter], g: usize, value: &[GenLetter]) -> Word {
    let value_inv = inv(value);
    let mut out = Vec::new();
    for &l in w {
        if l.gen != g {
            out.push(l);
        } else if l.inverse {
            out.extend_from_slice(&value_inv);
        } else {
            out.extend_from_slice(value);
        }
    }
    reduce(&out)
}

/// Simplifies a presentation by Tietze moves.
///
/// Each round cyclically reduces and deduplicates the relators, sorts them
/// shortest first, and then either eliminates a generator occurring exactly
/// once in the first relator that has one (the greatest such name), or
/// shortens one relator by rewriting it with another. Rounds are capped at
/// ten per generator.
pub fn tietze_simplify(p: &GroupPresentation) -> GroupPresentation {
    // work with generators in name order so that index order is name order
    let mut order: Vec<usize> = (0..p.generators.len()).collect();
    order.sort_by(|&a, &b| p.generators[a].cmp(&p.generators[b]));
    let mut new_index = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let names: Vec<String> = order.iter().map(|&i| p.generators[i].clone()).collect();
    let mut alive: BTreeSet<usize> = (0..names.len()).collect();
    let mut rels: Vec<Word> = p
        .relators
        .iter()
        .map(|r| {
            r.iter()
                .map(|l| GenLetter {
                    gen: new_index[l.gen],
                    inverse: l.inverse,
                })
                .collect()
        })
        .collect();

    let max_rounds = 10 * names.len().max(1);
    for _ in 0..max_rounds {
        let mut seen = BTreeSet::new();
        rels = rels
            .iter()
            .map(|r| canonical(r))
            .filter(|r| !r.is_empty() && seen.insert(r.clone()))
            .collect();
        rels.sort_by(|a, b| key(a).cmp(&key(b)));

        if let Some((ri, g)) = rels.iter().enumerate().find_map(|(ri, r)| {
            r.iter()
                .map(|l| l.gen)
                .filter(|&g| r.iter().filter(|l| l.gen == g).count() == 1)
                .max()
                .map(|g| (ri, g))
        }) {
            let r = rels.remove(ri);
            let at = r.iter().position(|l| l.gen == g).expect("generator occurs");
            let mut rot = r[at..].to_vec();
            rot.extend_from_slice(&r[..at]);
            // g^ε · rest = 1, so g = rest⁻¹ (ε = 1) or g = rest (ε = -1)
            let rest = &rot[1..];
            let value = if rot[0].inverse { rest.to_vec() } else { inv(rest) };
            rels = rels.iter().map(|w| substitute(w, g, &value)).collect();
            alive.remove(&g);
            continue;
        }

        let mut improved = false;
        'search: for ri in 0..rels.len() {
            let rules = rules_from(&rels[ri]);
            for (si, r) in rels.iter_mut().enumerate() {
                if si == ri {
                    continue;
                }
                let t = cyclic_rewrite(r, &rules);
                if key(&t) < key(r) {
                    *r = t;
                    improved = true;
                    break 'search;
                }
            }
        }
        if !improved {
            break;
        }
    }

    let mut rels: Vec<Word> = rels.iter().map(|r| canonical(r)).filter(|r| !r.is_empty()).collect();
    rels.sort_by(|a, b| key(a).cmp(&key(b)));
    rels.dedup();
    let kept: Vec<usize> = alive.iter().copied().collect();
    let mut final_index = vec![usize::MAX; names.len()];
    for (i, &g) in kept.iter().enumerate() {
        final_index[g] = i;
    }
    GroupPresentation {
        generators: kept.iter().map(|&g| names[g].clone()).collect(),
        relators: rels
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|l| GenLetter {
                        gen: final_index[l.gen],
                        inverse: l.inverse,
                    })
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> GroupPresentation {
        text.parse().unwrap()
    }

    #[test]
    fn unchanged_free() {
        let q = tietze_simplify(&p("< x | >"));
        assert_eq!(q.to_string(), "< x | >");
    }

    #[test]
    fn single_elimination() {
        let q = tietze_simplify(&p("< x, y | x y^-1 >"));
        assert_eq!(q.generators.len(), 1);
        assert!(q.relators.is_empty());
    }

    #[test]
    fn drops_trivial_and_duplicate_relators() {
        let q = tietze_simplify(&p("< x, y | x x^-1, x y x^-1 y^-1, y x y^-1 x^-1, 1 >"));
        assert_eq!(q.to_string(), "< x, y | x y x^-1 y^-1 >");
    }

    #[test]
    fn keeps_torsion() {
        let q = tietze_simplify(&p("< x | x x >"));
        assert_eq!(q.to_string(), "< x | x x >");
    }

    #[test]
    fn canonical_is_rotation_invariant() {
        let w = p("< a, b | a b a^-1 b^-1 >").relators[0].clone();
        for r in rotations(&w) {
            assert_eq!(canonical(&r), canonical(&w));
            assert_eq!(canonical(&inv(&r)), canonical(&w));
        }
    }
}
