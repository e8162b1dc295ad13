//! Built-in diagrams used by the verifier and the test suites.

use crate::braid::Braid;
use crate::diagram::{parse_pd, Diagram};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub pd_text: String,
    pub expected_com: usize,
    /// Where the PD code came from.
    pub notes: String,
}

impl CorpusEntry {
    fn literal(name: &str, pd_text: &str, expected_com: usize, notes: &str) -> Self {
        Self {
            name: name.into(),
            pd_text: pd_text.into(),
            expected_com,
            notes: notes.into(),
        }
    }

    fn braid(name: &str, strands: usize, word: &[i32], expected_com: usize, what: &str) -> Self {
        let b = Braid::new(strands, word.to_vec());
        Self {
            name: name.into(),
            pd_text: b.closure().to_string(),
            expected_com,
            notes: format!("{what}; closure of braid {b}"),
        }
    }

    pub fn diagram(&self) -> Diagram {
        parse_pd(&self.pd_text).expect("corpus entries parse")
    }
}

const TREFOIL_LEFT: &str = "\
Xl 1 4 2 5
Xl 3 6 4 1
Xl 5 2 6 3
";

const WHITEHEAD: &str = "\
Xl 6 1 7 2
Xl 10 7 5 8
Xl 4 5 1 6
Xr 2 10 3 9
Xr 8 4 9 3
";

/// Every corpus entry, in a fixed order.
pub fn corpus() -> Vec<CorpusEntry> {
    let trefoil_right = Braid::new(2, vec![1, 1, 1]).closure();
    let hopf_positive = Braid::new(2, vec![1, 1]).closure();
    let union = trefoil_right.distant_union(&hopf_positive);
    vec![
        CorpusEntry::literal("unknot", "loops 1\n", 1, "crossing-free circle"),
        CorpusEntry::literal("unknot-kink-positive", "Xr 1 1 2 2\n", 1, "one positive curl, by hand"),
        CorpusEntry::literal("unknot-kink-negative", "Xl 1 2 2 1\n", 1, "one negative curl, by hand"),
        CorpusEntry::braid("unknot-two-curls", 3, &[1, -2], 1, "unknot with opposite curls; writhe 0"),
        CorpusEntry::literal("unlink-2", "loops 2\n", 2, "two crossing-free circles"),
        CorpusEntry::literal("unlink-3", "loops 3\n", 3, "three crossing-free circles"),
        CorpusEntry::literal(
            "unlink-2-clasp",
            "Xr 1 3 2 4\nXl 2 3 1 4\n",
            2,
            "two circles overlapping in a removable clasp, by hand",
        ),
        CorpusEntry::literal(
            "hopf-positive",
            "Xr 1 3 2 4\nXr 3 1 4 2\n",
            2,
            "positive clasp, by hand; linking number +1",
        ),
        CorpusEntry::literal(
            "hopf-negative",
            "Xl 4 1 3 2\nXl 2 3 1 4\n",
            2,
            "negative clasp: hopf-positive with both crossings switched",
        ),
        CorpusEntry::braid("trefoil-right", 2, &[1, 1, 1], 1, "right-handed trefoil"),
        CorpusEntry::literal(
            "trefoil-left",
            TREFOIL_LEFT,
            1,
            "left-handed trefoil; KnotTheory PD of 3_1 with tags from strand roles",
        ),
        CorpusEntry::braid("figure-eight", 3, &[1, -2, 1, -2], 1, "figure-eight knot"),
        CorpusEntry::braid("torus-2-4", 2, &[1, 1, 1, 1], 2, "(2,4) torus link"),
        CorpusEntry::braid("torus-2-6", 2, &[1, 1, 1, 1, 1, 1], 2, "(2,6) torus link"),
        CorpusEntry::literal(
            "whitehead",
            WHITEHEAD,
            2,
            "Whitehead link; KnotTheory PD of L5a1 with tags from strand roles",
        ),
        CorpusEntry::braid("borromean", 3, &[1, -2, 1, -2, 1, -2], 3, "Borromean rings"),
        CorpusEntry {
            name: "trefoil-hopf-union".into(),
            pd_text: union.to_string(),
            expected_com: 3,
            notes: "distant union of trefoil-right and the closure of B2[1,1]".into(),
        },
        CorpusEntry::braid(
            "trefoil-figure-eight-sum",
            4,
            &[1, 1, 1, 2, -3, 2, -3],
            1,
            "connected sum of the right trefoil and the figure-eight",
        ),
    ]
}

pub fn find(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}
