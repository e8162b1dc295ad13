//! Braid words, their closures as PD diagrams, and a seeded generator of
//! random closures.
//!
//! Strands run upward. `σ_i` (letter `i`) crosses strands `i` and `i+1`
//! with the left strand over, a positive crossing; letter `-i` is its
//! inverse.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Crossing, Diagram, Tag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Braid {
    pub strands: usize,
    /// Nonzero letters with `1 <= |letter| < strands`.
    pub word: Vec<i32>,
}

impl Braid {
    pub fn new(strands: usize, word: Vec<i32>) -> Self {
        assert!(strands >= 1, "a braid needs a strand");
        for &g in &word {
            assert!(g != 0 && (g.unsigned_abs() as usize) < strands, "letter {g} out of range");
        }
        Self { strands, word }
    }

    /// The closed braid. Strands without crossings become free loops.
    pub fn closure(&self) -> Diagram {
        let n = self.strands;
        let mut current: Vec<u32> = (1..=n as u32).collect();
        let mut next = n as u32 + 1;
        let mut crossings = Vec::with_capacity(self.word.len());
        for &g in &self.word {
            let i = g.unsigned_abs() as usize - 1;
            let (sw, se) = (current[i], current[i + 1]);
            let (nw, ne) = (next, next + 1);
            next += 2;
            // Counterclockwise from the incoming under edge.
            crossings.push(if g > 0 {
                Crossing::new(Tag::Xr, [se, ne, nw, sw])
            } else {
                Crossing::new(Tag::Xl, [sw, se, ne, nw])
            });
            current[i] = nw;
            current[i + 1] = ne;
        }
        let mut free_loops = 0;
        for (p, &end) in current.iter().enumerate() {
            let start = p as u32 + 1;
            if end == start {
                free_loops += 1;
                continue;
            }
            for x in &mut crossings {
                for e in &mut x.edges {
                    if *e == end {
                        *e = start;
                    }
                }
            }
        }
        Diagram::new(crossings, free_loops).expect("braid closures are valid")
    }

    /// The mirror braid (every letter inverted in place).
    pub fn mirror(&self) -> Self {
        Self::new(self.strands, self.word.iter().map(|g| -g).collect())
    }
}

impl fmt::Display for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.word.iter().map(i32::to_string).collect();
        write!(f, "B{}[{}]", self.strands, letters.join(","))
    }
}

/// A random braid on 2 to 4 strands with 1 to `max_crossings` letters,
/// each letter uniform over generators and inverses.
pub fn random_braid<R: Rng + ?Sized>(rng: &mut R, max_crossings: usize) -> Braid {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=max_crossings.max(1));
    let word = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    Braid::new(strands, word)
}

/// Deterministic stream of random braids for a seed.
pub struct RandomBraids {
    rng: ChaCha8Rng,
    max_crossings: usize,
}

impl RandomBraids {
    pub fn new(seed: u64, max_crossings: usize) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), max_crossings }
    }

    /// Keeps drawing until the closure is a knot.
    pub fn next_knot(&mut self) -> Braid {
        loop {
            let b = random_braid(&mut self.rng, self.max_crossings);
            if b.closure().component_count() == 1 {
                return b;
            }
        }
    }
}

impl Iterator for RandomBraids {
    type Item = Braid;
    fn next(&mut self) -> Option<Braid> {
        Some(random_braid(&mut self.rng, self.max_crossings))
    }
}
