#![allow(dead_code)]

use lmt::braid::{Braid, RandomBraids};
use lmt::corpus::corpus;
use lmt::diagram::{Crossing, Diagram};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn corpus_diagrams() -> Vec<(String, Diagram)> {
    corpus().into_iter().map(|e| (e.name.clone(), e.diagram())).collect()
}

pub fn random_diagrams(seed: u64, n: usize, max_crossings: usize) -> Vec<(String, Diagram)> {
    RandomBraids::new(seed, max_crossings)
        .take(n)
        .map(|b| (b.to_string(), b.closure()))
        .collect()
}

/// Renames edges by a random permutation and shuffles the crossing list.
pub fn relabel(d: &Diagram, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * d.crossing_count() as u32;
    let mut perm: Vec<u32> = (1..=n).collect();
    perm.shuffle(&mut rng);
    let mut crossings: Vec<Crossing> = d
        .crossings()
        .iter()
        .map(|x| Crossing::new(x.tag, x.edges.map(|e| perm[e as usize - 1])))
        .collect();
    crossings.shuffle(&mut rng);
    Diagram::new(crossings, d.free_loops()).unwrap()
}

/// Faces of the 4-valent map, traced by turning to the next slot
/// counterclockwise after each arrival, and the number of connected pieces.
/// A planar diagram with `n` crossings has `n + 2` faces per piece
/// (`V - E + F = 2`, with `E = 2V`).
pub fn faces_and_pieces(d: &Diagram) -> (usize, usize) {
    let n = d.crossing_count();
    let mut at_slot = std::collections::HashMap::new();
    for (c, x) in d.crossings().iter().enumerate() {
        for (s, &e) in x.edges.iter().enumerate() {
            at_slot.entry(e).or_insert_with(Vec::new).push((c, s));
        }
    }
    let across = |c: usize, s: usize| -> (usize, usize) {
        let e = d.crossings()[c].edges[s];
        *at_slot[&e].iter().find(|&&p| p != (c, s)).unwrap()
    };

    let mut seen = vec![[false; 4]; n];
    let mut faces = 0;
    for c0 in 0..n {
        for s0 in 0..4 {
            if seen[c0][s0] {
                continue;
            }
            faces += 1;
            let (mut c, mut s) = (c0, s0);
            while !seen[c][s] {
                seen[c][s] = true;
                let (c2, s2) = across(c, (s + 1) % 4);
                c = c2;
                s = s2;
            }
        }
    }

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for c in 0..n {
        for s in 0..4 {
            let (c2, _) = across(c, s);
            let (a, b) = (find(&mut parent, c), find(&mut parent, c2));
            parent[a] = b;
        }
    }
    let pieces = (0..n).map(|c| find(&mut parent, c)).collect::<std::collections::HashSet<_>>().len();
    (faces, pieces)
}

pub fn is_planar(d: &Diagram) -> bool {
    let (faces, pieces) = faces_and_pieces(d);
    faces == d.crossing_count() + 2 * pieces
}

/// All orderings of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// `Λ` unchanged.
    Regular,
    /// A positive curl was added: `Λ` gains a factor `a`.
    CurlPositive,
    /// A negative curl was added: `Λ` gains a factor `a^-1`.
    CurlNegative,
}

pub struct MovePair {
    pub name: String,
    pub before: Diagram,
    pub after: Diagram,
    pub kind: Move,
}

fn pair(name: String, before: &Braid, after: &Braid, kind: Move) -> MovePair {
    MovePair { name, before: before.closure(), after: after.closure(), kind }
}

fn spliced(b: &Braid, at: usize, letters: &[i32]) -> Braid {
    let mut word = b.word.clone();
    word.splice(at..at, letters.iter().copied());
    Braid::new(b.strands, word)
}

/// Diagram pairs related by a single Reidemeister move, realized on braid
/// closures: `σσ⁻¹` insertions (move 2), braid relations (move 3), and
/// Markov stabilizations (move 1), plus two hand-built pairs.
pub fn scripted_moves() -> Vec<MovePair> {
    let mut bases = vec![
        Braid::new(2, vec![1, 1, 1]),
        Braid::new(3, vec![1, -2, 1, -2]),
        Braid::new(3, vec![1, -2, 1, -2, 1, -2]),
        Braid::new(2, vec![1, 1]),
        Braid::new(3, vec![1, 2]),
    ];
    bases.extend(RandomBraids::new(2024, 5).take(6));

    let mut moves = Vec::new();
    for (k, b) in bases.iter().enumerate() {
        let g = 1 + (k as i32 % (b.strands as i32 - 1));
        for at in [0, b.word.len() / 2, b.word.len()] {
            for letters in [[g, -g], [-g, g]] {
                moves.push(pair(format!("R2 {b} +{letters:?}@{at}"), b, &spliced(b, at, &letters), Move::Regular));
            }
        }
        let up = Braid::new(b.strands + 1, b.word.clone());
        let top = b.strands as i32;
        moves.push(pair(format!("R1+ {b}"), b, &spliced(&up, up.word.len(), &[top]), Move::CurlPositive));
        moves.push(pair(format!("R1- {b}"), b, &spliced(&up, 0, &[-top]), Move::CurlNegative));
    }

    let relations: [(&[i32], &[i32]); 4] = [
        (&[1, 2, 1], &[2, 1, 2]),
        (&[-1, -2, -1], &[-2, -1, -2]),
        (&[1, 2, -1], &[-2, 1, 2]),
        (&[-1, 2, 1], &[2, 1, -2]),
    ];
    let contexts: [(&[i32], &[i32]); 4] = [(&[], &[]), (&[1], &[-2]), (&[-2, -2], &[1]), (&[2], &[1, 2, -1])];
    for (lhs, rhs) in relations {
        for (pre, post) in contexts {
            let w = |mid: &[i32]| Braid::new(3, [pre, mid, post].concat());
            moves.push(pair(format!("R3 {} vs {}", w(lhs), w(rhs)), &w(lhs), &w(rhs), Move::Regular));
        }
    }

    let clasp = Diagram::new(
        vec![
            Crossing::new(lmt::diagram::Tag::Xr, [1, 3, 2, 4]),
            Crossing::new(lmt::diagram::Tag::Xl, [2, 3, 1, 4]),
        ],
        0,
    )
    .unwrap();
    moves.push(MovePair { name: "R2 clasp off two circles".into(), before: Diagram::unlink(2), after: clasp, kind: Move::Regular });
    let curl = lmt::parse_pd("Xr 1 1 2 2").unwrap();
    moves.push(MovePair { name: "R1+ on the unknot".into(), before: Diagram::unlink(1), after: curl, kind: Move::CurlPositive });
    moves
}
