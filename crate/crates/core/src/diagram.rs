//! Planar-diagram (PD) codes for unoriented, vertically framed link
//! diagrams.
//!
//! A crossing lists its four edges counterclockwise, starting from the
//! incoming under-strand edge. The under-strand runs from slot 0 to slot 2.
//! The tag says where the over-strand enters: `Xr` at slot 3, `Xl` at slot 1.
//! Under the reference orientation `Xr` is a positive crossing and `Xl` a
//! negative one.
//!
//! The reference orientation implied by the in/out roles is just a
//! coordinate system: every orientation-dependent quantity takes an
//! [`OrientationMask`] relative to it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("crossing {crossing}: edge identifiers must be positive")]
    InvalidEdge { crossing: usize },
    #[error("edge {edge} used {count} times, expected 2 (at crossing {crossing})")]
    EdgeMultiplicity { edge: u32, count: usize, crossing: usize },
    #[error("edge {edge} has inconsistent strand roles (first seen at crossing {crossing})")]
    InconsistentRoles { edge: u32, crossing: usize },
    #[error("crossing {index} not found in a diagram with {count} crossings")]
    CrossingNotFound { index: usize, count: usize },
    #[error("odd mixed-crossing sign sum {sum}: linking number is not an integer")]
    OddMixedSum { sum: i64 },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<DiagramError>,
    },
}

/// Which way the over-strand passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    /// Over-strand enters at slot 3 (the fourth edge); positive.
    Xr,
    /// Over-strand enters at slot 1 (the second edge); negative.
    Xl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [u32; 4],
    pub tag: Tag,
}

impl Crossing {
    pub fn new(tag: Tag, edges: [u32; 4]) -> Self {
        Self { edges, tag }
    }

    /// Sign under the reference orientation.
    pub fn sign(&self) -> i32 {
        match self.tag {
            Tag::Xr => 1,
            Tag::Xl => -1,
        }
    }

    pub fn over_in_slot(&self) -> usize {
        match self.tag {
            Tag::Xr => 3,
            Tag::Xl => 1,
        }
    }

    /// Whether the edge at `slot` flows into the crossing.
    pub fn is_in_slot(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// The same crossing with over and under exchanged: the edge cycle
    /// rotates one slot so that the old over-strand becomes the under-strand.
    pub fn switched(&self) -> Self {
        let [a, b, c, d] = self.edges;
        match self.tag {
            Tag::Xr => Self::new(Tag::Xl, [d, a, b, c]),
            Tag::Xl => Self::new(Tag::Xr, [b, c, d, a]),
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.edges;
        write!(f, "{:?} {a} {b} {c} {d}", self.tag)
    }
}

/// The two ways to remove a crossing. `A` joins slots 0–1 and 2–3, `B`
/// joins slots 0–3 and 1–2. The skein relation is symmetric in the two,
/// so they need not be matched with oriented or unoriented smoothings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    fn partner(self, slot: usize) -> usize {
        match self {
            Smoothing::A => slot ^ 1,
            Smoothing::B => 3 - slot,
        }
    }
}

macro_rules! bitmask {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub struct $name {
            bits: u64,
            len: usize,
        }

        impl $name {
            pub fn from_bits(bits: u64, len: usize) -> Self {
                assert!(len <= 64, "at most 64 components are supported");
                let bits = if len == 64 { bits } else { bits & ((1u64 << len) - 1) };
                Self { bits, len }
            }

            pub fn bits(&self) -> u64 {
                self.bits
            }

            pub fn len(&self) -> usize {
                self.len
            }

            pub fn is_empty(&self) -> bool {
                self.len == 0
            }

            fn test(&self, i: usize) -> bool {
                assert!(i < self.len, "component {i} out of range");
                self.bits >> i & 1 == 1
            }

            /// All `2^len` masks in binary-counter order.
            pub fn all(len: usize) -> impl Iterator<Item = Self> {
                assert!(len < 64, "too many components to enumerate");
                (0..1u64 << len).map(move |bits| Self { bits, len })
            }
        }

        impl fmt::Display for $name {
            /// Character `i` is `1` when bit `i` is set.
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for i in 0..self.len {
                    f.write_str(if self.test(i) { "1" } else { "0" })?;
                }
                Ok(())
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                if s.len() > 64 {
                    return Err("at most 64 components are supported".into());
                }
                let mut bits = 0;
                for (i, ch) in s.chars().enumerate() {
                    match ch {
                        '0' => {}
                        '1' => bits |= 1 << i,
                        other => return Err(format!("invalid mask character '{other}'")),
                    }
                }
                Ok(Self { bits, len: s.chars().count() })
            }
        }
    };
}

bitmask! {
    /// One orientation of the link: component `i` runs against the
    /// reference orientation iff bit `i` is set.
    OrientationMask
}

bitmask! {
    /// A sublink, as a set of component indices.
    SublinkMask
}

impl OrientationMask {
    pub fn reference(len: usize) -> Self {
        Self::from_bits(0, len)
    }

    pub fn is_flipped(&self, component: usize) -> bool {
        self.test(component)
    }

    /// Reverses the components in `s`.
    pub fn flip(&self, s: &SublinkMask) -> Self {
        assert_eq!(self.len, s.len, "mask length mismatch");
        Self { bits: self.bits ^ s.bits, len: self.len }
    }

    pub fn flip_all(&self) -> Self {
        self.flip(&SublinkMask::full(self.len))
    }
}

impl SublinkMask {
    pub fn empty(len: usize) -> Self {
        Self::from_bits(0, len)
    }

    pub fn full(len: usize) -> Self {
        Self::from_bits(u64::MAX, len)
    }

    pub fn contains(&self, component: usize) -> bool {
        self.test(component)
    }

    pub fn complement(&self) -> Self {
        Self::from_bits(!self.bits, self.len)
    }
}

/// `(crossing index, slot)`.
type SlotRef = (usize, usize);

/// A validated link diagram.
///
/// Edge identifiers are normalized to `1..=2n`. Closed strands are indexed
/// by their smallest edge identifier; crossing-free circles come last.
#[derive(Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    /// Per edge: the two slots it occupies, indexed by edge id.
    ends: Vec<[SlotRef; 2]>,
    /// Per edge: the slot where it enters a crossing.
    heads: Vec<SlotRef>,
    comp_of_edge: Vec<usize>,
    /// Edges of each closed strand in traversal order, from its smallest edge.
    strands: Vec<Vec<u32>>,
}

impl Diagram {
    /// Validates a crossing list and normalizes its edge identifiers.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let mut seen: std::collections::BTreeMap<u32, Vec<(usize, bool)>> = Default::default();
        for (i, x) in crossings.iter().enumerate() {
            for (slot, &e) in x.edges.iter().enumerate() {
                if e == 0 {
                    return Err(DiagramError::InvalidEdge { crossing: i });
                }
                seen.entry(e).or_default().push((i, x.is_in_slot(slot)));
            }
        }
        for (&edge, uses) in &seen {
            if uses.len() != 2 {
                // Blame the first surplus use, or the lone use.
                let at = if uses.len() > 2 { uses[2].0 } else { uses[0].0 };
                return Err(DiagramError::EdgeMultiplicity { edge, count: uses.len(), crossing: at });
            }
            if uses[0].1 == uses[1].1 {
                return Err(DiagramError::InconsistentRoles { edge, crossing: uses[0].0 });
            }
        }
        let rename: std::collections::HashMap<u32, u32> =
            seen.keys().enumerate().map(|(i, &e)| (e, i as u32 + 1)).collect();
        let crossings = crossings
            .into_iter()
            .map(|x| Crossing::new(x.tag, x.edges.map(|e| rename[&e])))
            .collect();
        Ok(Self::assemble(crossings, free_loops))
    }

    /// Builds derived tables for an already validated, normalized list.
    fn assemble(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        let n_edges = 2 * crossings.len();
        let mut ends = vec![[(usize::MAX, 0); 2]; n_edges + 1];
        let mut heads = vec![(usize::MAX, 0); n_edges + 1];
        let mut filled = vec![0usize; n_edges + 1];
        for (i, x) in crossings.iter().enumerate() {
            for (slot, &e) in x.edges.iter().enumerate() {
                let e = e as usize;
                ends[e][filled[e]] = (i, slot);
                filled[e] += 1;
                if x.is_in_slot(slot) {
                    heads[e] = (i, slot);
                }
            }
        }
        let mut d = Self {
            crossings,
            free_loops,
            ends,
            heads,
            comp_of_edge: vec![usize::MAX; n_edges + 1],
            strands: Vec::new(),
        };
        for start in 1..=n_edges as u32 {
            if d.comp_of_edge[start as usize] != usize::MAX {
                continue;
            }
            let idx = d.strands.len();
            let mut strand = Vec::new();
            let mut e = start;
            loop {
                d.comp_of_edge[e as usize] = idx;
                strand.push(e);
                e = d.next_edge(e);
                if e == start {
                    break;
                }
            }
            d.strands.push(strand);
        }
        d
    }

    /// The 0-crossing diagram of `k` unlinked circles.
    pub fn unlink(k: usize) -> Self {
        Self::assemble(Vec::new(), k)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Number of components: closed strands through crossings plus free loops.
    pub fn component_count(&self) -> usize {
        self.strands.len() + self.free_loops
    }

    /// Edges of each strand through crossings, in traversal order; free
    /// loops are the components past `strands().len()`.
    pub fn strands(&self) -> &[Vec<u32>] {
        &self.strands
    }

    pub fn component_of_edge(&self, edge: u32) -> usize {
        self.comp_of_edge[edge as usize]
    }

    /// The slot where `edge` enters a crossing.
    pub fn head(&self, edge: u32) -> (usize, usize) {
        self.heads[edge as usize]
    }

    /// The edge following `edge` along its strand.
    pub fn next_edge(&self, edge: u32) -> u32 {
        let (c, slot) = self.heads[edge as usize];
        let x = &self.crossings[c];
        let out = if slot == 0 { 2 } else { 4 - slot };
        x.edges[out]
    }

    fn check_index(&self, index: usize) -> Result<(), DiagramError> {
        if index < self.crossings.len() {
            Ok(())
        } else {
            Err(DiagramError::CrossingNotFound { index, count: self.crossings.len() })
        }
    }

    /// Components of the (under, over) strands at crossing `index`.
    pub fn crossing_components(&self, index: usize) -> (usize, usize) {
        let x = &self.crossings[index];
        (self.component_of_edge(x.edges[0]), self.component_of_edge(x.edges[1]))
    }

    pub fn is_self_crossing(&self, index: usize) -> bool {
        let (u, o) = self.crossing_components(index);
        u == o
    }

    /// Sign of crossing `index` with strands oriented by `o`. Reversing one
    /// of the two strands negates it.
    pub fn crossing_sign(&self, index: usize, o: &OrientationMask) -> i32 {
        assert_eq!(o.len(), self.component_count(), "orientation mask length");
        let (u, v) = self.crossing_components(index);
        let flips = o.is_flipped(u) as u8 + o.is_flipped(v) as u8;
        if flips.is_multiple_of(2) {
            self.crossings[index].sign()
        } else {
            -self.crossings[index].sign()
        }
    }

    /// Sum of crossing signs under `o`: the framing number of the
    /// vertically framed oriented diagram.
    pub fn writhe(&self, o: &OrientationMask) -> i32 {
        (0..self.crossings.len()).map(|i| self.crossing_sign(i, o)).sum()
    }

    /// Sum of signs over self-crossings; independent of orientation.
    pub fn self_writhe(&self) -> i32 {
        (0..self.crossings.len())
            .filter(|&i| self.is_self_crossing(i))
            .map(|i| self.crossings[i].sign())
            .sum()
    }

    /// Half the signed count of crossings between `s` and its complement.
    pub fn linking_number(&self, o: &OrientationMask, s: &SublinkMask) -> Result<i64, DiagramError> {
        assert_eq!(s.len(), self.component_count(), "sublink mask length");
        let sum: i64 = (0..self.crossings.len())
            .filter(|&i| {
                let (u, v) = self.crossing_components(i);
                s.contains(u) != s.contains(v)
            })
            .map(|i| self.crossing_sign(i, o) as i64)
            .sum();
        if sum % 2 != 0 {
            return Err(DiagramError::OddMixedSum { sum });
        }
        Ok(sum / 2)
    }

    /// Exchanges over and under at crossing `index`.
    pub fn switch(&self, index: usize) -> Result<Self, DiagramError> {
        self.check_index(index)?;
        let mut crossings = self.crossings.clone();
        crossings[index] = crossings[index].switched();
        Ok(Self::assemble(crossings, self.free_loops))
    }

    /// Switches every crossing.
    pub fn mirror(&self) -> Self {
        let crossings = self.crossings.iter().map(Crossing::switched).collect();
        Self::assemble(crossings, self.free_loops)
    }

    /// Places `other` beside `self` with no crossings between them.
    pub fn distant_union(&self, other: &Self) -> Self {
        let shift = 2 * self.crossings.len() as u32;
        let crossings = self
            .crossings
            .iter()
            .copied()
            .chain(other.crossings.iter().map(|x| Crossing::new(x.tag, x.edges.map(|e| e + shift))))
            .collect();
        Self::assemble(crossings, self.free_loops + other.free_loops)
    }

    /// Carries orientation masks of the two parts over to their distant
    /// union, whose components are ordered: strands of `self`, strands of
    /// `other`, free loops of `self`, free loops of `other`.
    pub fn union_mask(
        &self,
        o1: &OrientationMask,
        other: &Self,
        o2: &OrientationMask,
    ) -> OrientationMask {
        let (s1, s2) = (self.strands.len(), other.strands.len());
        let bits_of = |o: &OrientationMask, range: std::ops::Range<usize>| {
            range.filter(|&i| o.is_flipped(i)).collect::<Vec<_>>()
        };
        let mut bits = 0u64;
        for i in bits_of(o1, 0..s1) {
            bits |= 1 << i;
        }
        for i in bits_of(o2, 0..s2) {
            bits |= 1 << (s1 + i);
        }
        for i in bits_of(o1, s1..o1.len()) {
            bits |= 1 << (s2 + i);
        }
        for i in bits_of(o2, s2..o2.len()) {
            bits |= 1 << (s1 + self.free_loops + i);
        }
        OrientationMask::from_bits(bits, self.component_count() + other.component_count())
    }

    fn other_end(&self, edge: u32, at: SlotRef) -> SlotRef {
        let [p, q] = self.ends[edge as usize];
        if p == at {
            q
        } else {
            p
        }
    }

    /// The slot joined to `at` by an edge.
    fn neighbor(&self, at: SlotRef) -> SlotRef {
        self.other_end(self.crossings[at.0].edges[at.1], at)
    }

    /// Removes crossing `index` by the given smoothing.
    ///
    /// The result is reoriented: every new component follows the old
    /// direction of its smallest surviving edge.
    pub fn smooth(&self, index: usize, which: Smoothing) -> Result<Self, DiagramError> {
        self.check_index(index)?;
        let old = |c: usize| if c > index { c - 1 } else { c };

        // Follow an edge leaving a surviving slot through the removed
        // crossing until it reaches another surviving slot.
        let mut used = [false; 4];
        let mut links: Vec<[SlotRef; 4]> = Vec::with_capacity(self.crossings.len() - 1);
        for c in (0..self.crossings.len()).filter(|&c| c != index) {
            let mut row = [(0, 0); 4];
            for (slot, item) in row.iter_mut().enumerate() {
                let mut cur = self.neighbor((c, slot));
                while cur.0 == index {
                    used[cur.1] = true;
                    let p = which.partner(cur.1);
                    used[p] = true;
                    cur = self.neighbor((index, p));
                }
                *item = (old(cur.0), cur.1);
            }
            links.push(row);
        }

        let mut new_loops = 0;
        for start in 0..4 {
            if used[start] {
                continue;
            }
            new_loops += 1;
            let mut slot = start;
            loop {
                used[slot] = true;
                let p = which.partner(slot);
                used[p] = true;
                slot = self.neighbor((index, p)).1;
                if used[slot] {
                    break;
                }
            }
        }

        let kept: Vec<&Crossing> =
            self.crossings.iter().enumerate().filter(|&(c, _)| c != index).map(|(_, x)| x).collect();
        let labels: Vec<[u32; 4]> = kept.iter().map(|x| x.edges).collect();
        let roles: Vec<[bool; 4]> =
            kept.iter().map(|x| std::array::from_fn(|s| x.is_in_slot(s))).collect();
        Ok(orient(&labels, &links, &roles, self.free_loops + new_loops))
    }

    /// The same diagram with the reference orientation of each flipped
    /// component reversed.
    pub fn reoriented(&self, o: &OrientationMask) -> Self {
        assert_eq!(o.len(), self.component_count(), "orientation mask length");
        let labels: Vec<[u32; 4]> = self.crossings.iter().map(|x| x.edges).collect();
        let links: Vec<[SlotRef; 4]> = (0..self.crossings.len())
            .map(|c| std::array::from_fn(|s| self.neighbor((c, s))))
            .collect();
        let roles: Vec<[bool; 4]> = self
            .crossings
            .iter()
            .map(|x| {
                std::array::from_fn(|s| x.is_in_slot(s) != o.is_flipped(self.component_of_edge(x.edges[s])))
            })
            .collect();
        orient(&labels, &links, &roles, self.free_loops)
    }

    /// Memoization key: a string that depends only on the unoriented
    /// diagram up to renaming edges and reordering crossings.
    ///
    /// Each connected piece is encoded by breadth-first numbering from a
    /// root slot, reading slots counterclockwise; the least encoding over
    /// all roots represents the piece. Piece codes are sorted.
    pub fn canonical_code(&self) -> String {
        let n = self.crossings.len();
        let mut piece_of = vec![usize::MAX; n];
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if piece_of[start] != usize::MAX {
                continue;
            }
            let id = pieces.len();
            let mut members = vec![start];
            piece_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let c = members[k];
                for s in 0..4 {
                    let (c2, _) = self.neighbor((c, s));
                    if piece_of[c2] == usize::MAX {
                        piece_of[c2] = id;
                        members.push(c2);
                    }
                }
                k += 1;
            }
            pieces.push(members);
        }

        let mut codes: Vec<String> = pieces
            .iter()
            .map(|members| {
                let best = members
                    .iter()
                    .flat_map(|&c| (0..4).map(move |s| (c, s)))
                    .map(|root| self.rooted_code(root))
                    .min()
                    .expect("nonempty piece");
                best.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            })
            .collect();
        codes.sort();
        format!("{}|{}", codes.join(";"), self.free_loops)
    }

    fn rooted_code(&self, root: SlotRef) -> Vec<u32> {
        let n = self.crossings.len();
        let mut index = vec![u32::MAX; n];
        let mut order: Vec<SlotRef> = vec![root];
        index[root.0] = 0;
        let mut code = Vec::with_capacity(9 * n);
        let mut k = 0;
        while k < order.len() {
            let (c, offset) = order[k];
            code.push((offset % 2) as u32);
            for step in 0..4 {
                let (c2, s2) = self.neighbor((c, (offset + step) % 4));
                if index[c2] == u32::MAX {
                    index[c2] = order.len() as u32;
                    order.push((c2, s2));
                }
                let rel = (s2 + 4 - order[index[c2] as usize].1) % 4;
                code.push(index[c2]);
                code.push(rel as u32);
            }
            k += 1;
        }
        code
    }
}

/// Orients an unoriented crossing structure and renumbers its edges.
///
/// `labels` carries an identifier per slot (slot pairs joined by `links`
/// share an edge; their labels decide the new edge names), the under-strand
/// occupies slots 0 and 2 of every crossing, and `roles` gives the preferred
/// in/out role per slot. Each component takes the role of its slot with the
/// smallest label.
fn orient(labels: &[[u32; 4]], links: &[[SlotRef; 4]], roles: &[[bool; 4]], free_loops: usize) -> Diagram {
    let n = labels.len();
    let mut is_in = vec![[false; 4]; n];
    let mut edge_label = vec![[0u32; 4]; n];
    let mut visited = vec![[false; 4]; n];

    for c0 in 0..n {
        for s0 in 0..4 {
            if visited[c0][s0] {
                continue;
            }
            // Collect the component's slots in traversal order.
            let mut entries = Vec::new();
            let mut at = (c0, s0);
            loop {
                entries.push(at);
                visited[at.0][at.1] = true;
                let exit = (at.0, (at.1 + 2) % 4);
                visited[exit.0][exit.1] = true;
                at = links[exit.0][exit.1];
                if at == (c0, s0) {
                    break;
                }
            }
            let anchor = entries
                .iter()
                .flat_map(|&(c, s)| [(c, s), (c, (s + 2) % 4)])
                .min_by_key(|&(c, s)| (labels[c][s], c, s))
                .expect("nonempty component");
            let forward = entries.contains(&anchor) == roles[anchor.0][anchor.1];
            for &(c, s) in &entries {
                let (entry, exit) = if forward { ((c, s), (c, (s + 2) % 4)) } else { ((c, (s + 2) % 4), (c, s)) };
                is_in[entry.0][entry.1] = true;
                is_in[exit.0][exit.1] = false;
            }
            for &(c, s) in &entries {
                let exit = (c, (s + 2) % 4);
                let next = links[exit.0][exit.1];
                let label = labels[exit.0][exit.1].min(labels[next.0][next.1]);
                edge_label[exit.0][exit.1] = label;
                edge_label[next.0][next.1] = label;
            }
        }
    }

    let crossings = (0..n)
        .map(|c| {
            let rot = if is_in[c][0] { 0 } else { 2 };
            let edges: [u32; 4] = std::array::from_fn(|k| edge_label[c][(k + rot) % 4]);
            let tag = if is_in[c][(3 + rot) % 4] { Tag::Xr } else { Tag::Xl };
            Crossing::new(tag, edges)
        })
        .collect();
    Diagram::new(crossings, free_loops).expect("reoriented diagram is valid")
}

impl fmt::Display for Diagram {
    /// PD text: an optional `loops` header, then one crossing per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.free_loops > 0 {
            writeln!(f, "loops {}", self.free_loops)?;
        }
        for x in &self.crossings {
            writeln!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Diagram")
            .field("crossings", &self.crossings.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .field("free_loops", &self.free_loops)
            .finish()
    }
}

/// Parses PD text: `#` comments, an optional `loops <k>` line, and one
/// `Xr a b c d` or `Xl a b c d` line per crossing.
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    let mut crossings = Vec::new();
    let mut lines = Vec::new();
    let mut loops: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let syntax = |message: String| DiagramError::Syntax { line, message };
        match tokens.as_slice() {
            [] => {}
            ["loops", k] => {
                if loops.is_some() {
                    return Err(syntax("duplicate loops header".into()));
                }
                loops = Some(k.parse().map_err(|_| syntax(format!("invalid loop count '{k}'")))?);
            }
            ["loops", ..] => return Err(syntax("expected `loops <count>`".into())),
            [tag @ ("Xr" | "Xl"), rest @ ..] => {
                let tag = if *tag == "Xr" { Tag::Xr } else { Tag::Xl };
                let edges: Vec<u32> = rest
                    .iter()
                    .map(|t| t.parse::<u32>().map_err(|_| syntax(format!("invalid edge identifier '{t}'"))))
                    .collect::<Result<_, _>>()?;
                let edges: [u32; 4] = edges
                    .try_into()
                    .map_err(|v: Vec<u32>| syntax(format!("expected 4 edges, found {}", v.len())))?;
                crossings.push(Crossing::new(tag, edges));
                lines.push(line);
            }
            [other, ..] => return Err(syntax(format!("unknown record '{other}'"))),
        }
    }
    Diagram::new(crossings, loops.unwrap_or(0)).map_err(|err| {
        let crossing = match &err {
            DiagramError::InvalidEdge { crossing }
            | DiagramError::EdgeMultiplicity { crossing, .. }
            | DiagramError::InconsistentRoles { crossing, .. } => *crossing,
            _ => return err,
        };
        DiagramError::AtLine { line: lines[crossing], source: Box::new(err) }
    })
}

impl FromStr for Diagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}
