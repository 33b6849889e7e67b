use super::{Family, Generator, GroupError, GroupImage, GroupWord, Presentation, RepCandidate};
use crate::linalg::{antidiag, block_embed, Matrix};
use crate::scalar::{Constant, Rational};

/// Breadth-first search for a word killed by `rep` but not by `oracle`.
///
/// Letters follow the presentation's generator order and words of equal
/// length are visited lexicographically, so the first hit is canonical.
/// When every generator is an involution only positive letters are used and
/// immediate repeats are skipped; otherwise immediate cancellations are.
pub fn kernel_witness_search<I: GroupImage, J: GroupImage>(
    rep: &RepCandidate<I>,
    oracle: &RepCandidate<J>,
    max_len: usize,
) -> Result<Option<GroupWord>, GroupError> {
    let p = &rep.presentation;
    if p.kind != oracle.presentation.kind || p.n != oracle.presentation.n {
        return Err(GroupError::PresentationMismatch(
            p.label(),
            oracle.presentation.label(),
        ));
    }
    let involutive = p.generators.iter().all(|g| g.family.is_involutive());
    let alphabet: Vec<(Generator, i8)> = p
        .generators
        .iter()
        .flat_map(|&g| {
            if involutive {
                vec![(g, 1)]
            } else {
                vec![(g, 1), (g, -1)]
            }
        })
        .collect();
    let letter_images: Vec<(I, J)> = alphabet
        .iter()
        .map(|&(g, e)| Ok((rep.letter_image(g, e)?, oracle.letter_image(g, e)?)))
        .collect::<Result<_, GroupError>>()?;

    let mut level: Vec<(Vec<usize>, I, J)> = vec![(Vec::new(), rep.identity(), oracle.identity())];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * alphabet.len());
        for (word, a, b) in &level {
            for (k, &(g, e)) in alphabet.iter().enumerate() {
                if let Some(&last) = word.last() {
                    let (h, f) = alphabet[last];
                    if h == g && (involutive || f == -e) {
                        continue;
                    }
                }
                let (ia, ib) = &letter_images[k];
                let a2 = a.compose(ia)?;
                let b2 = b.compose(ib)?;
                let mut w = word.clone();
                w.push(k);
                if a2.is_identity() && !b2.is_identity() {
                    return Ok(Some(GroupWord::new(w.iter().map(|&i| alphabet[i]).collect())));
                }
                next.push((w, a2, b2));
            }
        }
        level = next;
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionKind {
    /// Every `ℓ_i` and `ρ_i` to the transposition `(i i+1)`.
    Standard,
    /// `ℓ_i` to the identity and `ρ_i` to `(i i+1)`.
    ForgetEll,
}

fn transposition(n: usize, i: usize) -> Matrix<Rational> {
    block_embed(n, i, &antidiag(Rational::one(), Rational::one())).expect("1 <= i < n")
}

/// Permutation representation of a triplet-family presentation.
pub fn sn_projection(
    kind: ProjectionKind,
    presentation: &Presentation,
) -> Result<RepCandidate<Matrix<Rational>>, GroupError> {
    if !presentation.kind.is_triplet_family() {
        return Err(GroupError::UnsupportedPresentation(presentation.label()));
    }
    let n = presentation.n;
    let images = presentation.generators.iter().map(|&g| {
        let m = match (kind, g.family) {
            (ProjectionKind::ForgetEll, Family::Ell) => Matrix::eye(n),
            _ => transposition(n, g.index),
        };
        (g, m)
    });
    let name = match kind {
        ProjectionKind::Standard => "sn-standard",
        ProjectionKind::ForgetEll => "sn-forget-ell",
    };
    RepCandidate::new(presentation.clone(), name, images)
}
