//! Finite presentations of the braid and triplet families, words in their
//! generators, and generic machinery for checking candidate representations.

mod image;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::LinalgError;

pub use image::{
    check_relations, image_closure, word_eval, GroupImage, RelationCheck, RepCandidate,
    DEFAULT_CLOSURE_CAP,
};
pub use search::{kernel_witness_search, sn_projection, ProjectionKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("presentations need n >= 2, got {0}")]
    UnsupportedN(usize),
    #[error("pure braid generator needs i < j, got i = {i}, j = {j}")]
    IndexOrder { i: usize, j: usize },
    #[error("generator {0} has no assigned image")]
    UnassignedGenerator(String),
    #[error("generator {0} does not belong to the presentation")]
    UnknownGenerator(String),
    #[error("image of {0} cannot be inverted")]
    NotInvertibleImage(String),
    #[error("images have different dimensions: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("operation not supported for {0}")]
    UnsupportedPresentation(String),
    #[error("presentations differ: {0} vs {1}")]
    PresentationMismatch(String, String),
    #[error("cannot parse word at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    Braid,
    PureBraidGens,
    VirtualBraid,
    WeldedBraid,
    Triplet,
    VirtualTriplet,
    WeldedTriplet,
    SymmetricCoxeter,
}

impl GroupKind {
    pub const ALL: [GroupKind; 8] = [
        GroupKind::Braid,
        GroupKind::PureBraidGens,
        GroupKind::VirtualBraid,
        GroupKind::WeldedBraid,
        GroupKind::Triplet,
        GroupKind::VirtualTriplet,
        GroupKind::WeldedTriplet,
        GroupKind::SymmetricCoxeter,
    ];

    pub fn is_triplet_family(self) -> bool {
        matches!(
            self,
            GroupKind::Triplet | GroupKind::VirtualTriplet | GroupKind::WeldedTriplet
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Braid => "B",
            GroupKind::PureBraidGens => "P",
            GroupKind::VirtualBraid => "VB",
            GroupKind::WeldedBraid => "WB",
            GroupKind::Triplet => "L",
            GroupKind::VirtualTriplet => "VL",
            GroupKind::WeldedTriplet => "WL",
            GroupKind::SymmetricCoxeter => "S",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Ell,
    Rho,
    Sigma,
    Alpha,
}

impl Family {
    pub fn prefix(self) -> char {
        match self {
            Family::Ell => 'l',
            Family::Rho => 'r',
            Family::Sigma => 's',
            Family::Alpha => 'a',
        }
    }

    fn from_prefix(c: char) -> Option<Family> {
        match c {
            'l' => Some(Family::Ell),
            'r' => Some(Family::Rho),
            's' => Some(Family::Sigma),
            'a' => Some(Family::Alpha),
            _ => None,
        }
    }

    /// Every presentation that contains this family makes it an involution.
    pub fn is_involutive(self) -> bool {
        !matches!(self, Family::Sigma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub family: Family,
    pub index: usize,
}

impl Generator {
    pub fn new(family: Family, index: usize) -> Self {
        Generator { family, index }
    }

    pub fn ell(i: usize) -> Self {
        Generator::new(Family::Ell, i)
    }

    pub fn rho(i: usize) -> Self {
        Generator::new(Family::Rho, i)
    }

    pub fn sigma(i: usize) -> Self {
        Generator::new(Family::Sigma, i)
    }

    pub fn alpha(i: usize) -> Self {
        Generator::new(Family::Alpha, i)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.family.prefix(), self.index)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index)
    }
}

/// A word stored literally, without free reduction.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<(Generator, i8)>,
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn new(letters: Vec<(Generator, i8)>) -> Self {
        GroupWord { letters }
    }

    /// Word of positive letters.
    pub fn positive(gens: impl IntoIterator<Item = Generator>) -> Self {
        GroupWord {
            letters: gens.into_iter().map(|g| (g, 1)).collect(),
        }
    }

    pub fn letters(&self) -> &[(Generator, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, g: Generator, e: i8) {
        self.letters.push((g, e));
    }

    pub fn concat(&self, rhs: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        GroupWord { letters }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, m: usize) -> GroupWord {
        GroupWord {
            letters: self.letters.repeat(m),
        }
    }

    /// Parses words such as `l1 l2 l1`, `l1*r2^-1`, or `(l1 r2)^3`.
    pub fn parse(text: &str) -> Result<GroupWord, GroupError> {
        let mut parser = WordParser {
            chars: text.char_indices().collect(),
            pos: 0,
            len: text.len(),
        };
        let word = parser.sequence()?;
        parser.skip_separators();
        if let Some(&(at, c)) = parser.chars.get(parser.pos) {
            return Err(GroupError::Parse {
                position: at,
                message: format!("unexpected `{c}`"),
            });
        }
        Ok(word)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (pos, (g, e)) in self.letters.iter().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
            if *e < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct WordParser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl WordParser {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(at, _)| at)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: impl Into<String>) -> GroupError {
        GroupError::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '*' || c == '.') {
            self.pos += 1;
        }
    }

    fn sequence(&mut self) -> Result<GroupWord, GroupError> {
        let mut word = GroupWord::empty();
        loop {
            self.skip_separators();
            match self.peek() {
                None | Some(')') => return Ok(word),
                Some('1') if word.is_empty() => {
                    self.pos += 1;
                }
                Some(_) => {
                    let factor = self.factor()?;
                    word = word.concat(&factor);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<GroupWord, GroupError> {
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.sequence()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(c) => {
                let Some(family) = Family::from_prefix(c) else {
                    return Err(self.error(format!("unknown generator family `{c}`")));
                };
                self.pos += 1;
                let index = self.number()?;
                if index == 0 {
                    return Err(self.error("generator indices start at 1"));
                }
                GroupWord::positive([Generator::new(family, index as usize)])
            }
            None => return Err(self.error("unexpected end of word")),
        };
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let exp = self.number()? as usize;
        let base = if negative { base.inverse() } else { base };
        Ok(base.pow(exp))
    }

    fn number(&mut self) -> Result<u64, GroupError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits.parse().map_err(|_| GroupError::Parse {
            position: self.chars[start].0,
            message: "number too large".into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: GroupWord,
    pub rhs: GroupWord,
    pub tag: &'static str,
    pub indices: Vec<usize>,
}

impl Relation {
    /// Tag with the instantiated indices, e.g. `braid-l[1]`.
    pub fn name(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        format!("{}[{}]", self.tag, idx.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub kind: GroupKind,
    pub n: usize,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn label(&self) -> String {
        format!("{}_{}", self.kind.name(), self.n)
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.generators.contains(&g)
    }

    /// Distinct relation families in order of first appearance.
    pub fn relation_tags(&self) -> Vec<&'static str> {
        let mut tags: Vec<&'static str> = Vec::new();
        for r in &self.relations {
            if !tags.contains(&r.tag) {
                tags.push(r.tag);
            }
        }
        tags
    }
}

fn w(gens: &[Generator]) -> GroupWord {
    GroupWord::positive(gens.iter().copied())
}

fn involutions(rels: &mut Vec<Relation>, family: Family, n: usize, tag: &'static str) {
    for i in 1..n {
        let g = Generator::new(family, i);
        rels.push(Relation {
            lhs: w(&[g, g]),
            rhs: GroupWord::empty(),
            tag,
            indices: vec![i],
        });
    }
}

fn braids(rels: &mut Vec<Relation>, family: Family, n: usize, tag: &'static str) {
    for i in 1..n.saturating_sub(1) {
        let a = Generator::new(family, i);
        let b = Generator::new(family, i + 1);
        rels.push(Relation {
            lhs: w(&[a, b, a]),
            rhs: w(&[b, a, b]),
            tag,
            indices: vec![i],
        });
    }
}

/// `x_i y_j = y_j x_i` for `|i - j| >= 2`; when the families coincide only
/// `i < j` is listed.
fn far_commute(rels: &mut Vec<Relation>, x: Family, y: Family, n: usize, tag: &'static str) {
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) < 2 || (x == y && i > j) {
                continue;
            }
            let a = Generator::new(x, i);
            let b = Generator::new(y, j);
            rels.push(Relation {
                lhs: w(&[a, b]),
                rhs: w(&[b, a]),
                tag,
                indices: vec![i, j],
            });
        }
    }
}

/// `ρ_i ρ_{i+1} x_i = x_{i+1} ρ_i ρ_{i+1}`.
fn mixed(rels: &mut Vec<Relation>, x: Family, n: usize, tag: &'static str) {
    for i in 1..n.saturating_sub(1) {
        let (r1, r2) = (Generator::rho(i), Generator::rho(i + 1));
        rels.push(Relation {
            lhs: w(&[r1, r2, Generator::new(x, i)]),
            rhs: w(&[Generator::new(x, i + 1), r1, r2]),
            tag,
            indices: vec![i],
        });
    }
}

/// `ρ_i x_{i+1} x_i = x_{i+1} x_i ρ_{i+1}`.
fn welded(rels: &mut Vec<Relation>, x: Family, n: usize, tag: &'static str) {
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (Generator::new(x, i), Generator::new(x, i + 1));
        rels.push(Relation {
            lhs: w(&[Generator::rho(i), b, a]),
            rhs: w(&[b, a, Generator::rho(i + 1)]),
            tag,
            indices: vec![i],
        });
    }
}

/// Braid relation in the form `σ_{i+1} σ_i σ_{i+1} = σ_i σ_{i+1} σ_i`.
fn sigma_braids(rels: &mut Vec<Relation>, n: usize) {
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (Generator::sigma(i), Generator::sigma(i + 1));
        rels.push(Relation {
            lhs: w(&[b, a, b]),
            rhs: w(&[a, b, a]),
            tag: "braid-s",
            indices: vec![i],
        });
    }
}

fn family_gens(family: Family, n: usize) -> impl Iterator<Item = Generator> {
    (1..n).map(move |i| Generator::new(family, i))
}

/// The full presentation of the given group on `n` strands.
pub fn presentation_of(kind: GroupKind, n: usize) -> Result<Presentation, GroupError> {
    if n < 2 {
        return Err(GroupError::UnsupportedN(n));
    }
    let mut generators: Vec<Generator> = Vec::new();
    let mut rels = Vec::new();
    use Family::*;
    match kind {
        GroupKind::Braid | GroupKind::PureBraidGens => {
            generators.extend(family_gens(Sigma, n));
            sigma_braids(&mut rels, n);
            far_commute(&mut rels, Sigma, Sigma, n, "far-commute-s");
        }
        GroupKind::VirtualBraid | GroupKind::WeldedBraid => {
            generators.extend(family_gens(Sigma, n));
            generators.extend(family_gens(Rho, n));
            sigma_braids(&mut rels, n);
            far_commute(&mut rels, Sigma, Sigma, n, "far-commute-s");
            involutions(&mut rels, Rho, n, "involution-r");
            far_commute(&mut rels, Rho, Rho, n, "far-commute-r");
            braids(&mut rels, Rho, n, "braid-r");
            far_commute(&mut rels, Sigma, Rho, n, "far-commute-sr");
            mixed(&mut rels, Sigma, n, "mixed-rrs");
            if kind == GroupKind::WeldedBraid {
                welded(&mut rels, Sigma, n, "welded-s");
            }
        }
        GroupKind::Triplet => {
            generators.extend(family_gens(Ell, n));
            involutions(&mut rels, Ell, n, "involution-l");
            braids(&mut rels, Ell, n, "braid-l");
        }
        GroupKind::VirtualTriplet | GroupKind::WeldedTriplet => {
            generators.extend(family_gens(Ell, n));
            generators.extend(family_gens(Rho, n));
            involutions(&mut rels, Ell, n, "involution-l");
            braids(&mut rels, Ell, n, "braid-l");
            involutions(&mut rels, Rho, n, "involution-r");
            far_commute(&mut rels, Rho, Rho, n, "far-commute-r");
            braids(&mut rels, Rho, n, "braid-r");
            far_commute(&mut rels, Ell, Rho, n, "far-commute-lr");
            mixed(&mut rels, Ell, n, "mixed-rrl");
            if kind == GroupKind::WeldedTriplet {
                welded(&mut rels, Ell, n, "welded-l");
            }
        }
        GroupKind::SymmetricCoxeter => {
            generators.extend(family_gens(Alpha, n));
            involutions(&mut rels, Alpha, n, "involution-a");
            braids(&mut rels, Alpha, n, "braid-a");
            far_commute(&mut rels, Alpha, Alpha, n, "far-commute-a");
        }
    }
    Ok(Presentation {
        kind,
        n,
        generators,
        relations: rels,
    })
}

/// The literal word `σ_{j-1} … σ_{i+1} σ_i² σ_{i+1}^-1 … σ_{j-1}^-1`.
pub fn pure_braid_generator(i: usize, j: usize, n: usize) -> Result<GroupWord, GroupError> {
    if i >= j || i == 0 {
        return Err(GroupError::IndexOrder { i, j });
    }
    if j > n {
        return Err(GroupError::UnsupportedN(n));
    }
    let mut letters: Vec<(Generator, i8)> = (i + 1..j).rev().map(|k| (Generator::sigma(k), 1)).collect();
    letters.push((Generator::sigma(i), 1));
    letters.push((Generator::sigma(i), 1));
    letters.extend((i + 1..j).map(|k| (Generator::sigma(k), -1)));
    Ok(GroupWord::new(letters))
}
