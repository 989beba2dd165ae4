use crate::error::{Error, Result};
use crate::geometry::{cremona_at, star_violation, CenterSet, Configuration};
use crate::lattice::{cremona_map, permutation_map, LatticeMap};
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Cremona(CenterSet),
    Permute(Permutation),
}

/// A sequence of moves, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CremonaWord {
    moves: Vec<Move>,
}

impl CremonaWord {
    pub fn new(moves: Vec<Move>) -> Self {
        CremonaWord { moves }
    }

    /// Cremona at points 1–4, then the shift sending point 1 to the end.
    pub fn coxeter_step(k: usize) -> Self {
        CremonaWord::new(vec![Move::Cremona(CenterSet::first_four()), Move::Permute(Permutation::cyclic_shift(k))])
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &CremonaWord) -> CremonaWord {
        CremonaWord::new(self.moves.iter().chain(&other.moves).cloned().collect())
    }

    /// The induced map on N¹, without touching any configuration.
    pub fn lattice_shadow(&self, k: usize) -> Result<LatticeMap> {
        let mut total = LatticeMap::identity(k);
        for mv in &self.moves {
            total = move_map(k, mv)?.compose(&total);
        }
        Ok(total)
    }
}

fn move_map(k: usize, mv: &Move) -> Result<LatticeMap> {
    match mv {
        Move::Cremona(centers) => cremona_map(k, *centers),
        Move::Permute(perm) if perm.len() == k => Ok(permutation_map(perm)),
        Move::Permute(perm) => Err(Error::Dimension { expected: k, got: perm.len() }),
    }
}

/// Runs the word on `config`, checking condition (*) before every Cremona
/// move. Returns the final configuration and the composite lattice map
/// `G_n ∘ … ∘ G_1` for moves `g_1, …, g_n`; nothing is returned if any step
/// fails.
pub fn apply_word(config: &Configuration, word: &CremonaWord) -> Result<(Configuration, LatticeMap)> {
    let k = config.k();
    let mut current = config.clone();
    let mut total = LatticeMap::identity(k);
    for (step, mv) in word.moves.iter().enumerate() {
        current = match mv {
            Move::Cremona(centers) => {
                centers.check_k(k)?;
                if let Some(violation) = star_violation(&current, *centers) {
                    return Err(Error::StarAtStep { step, violation });
                }
                cremona_at(&current, *centers)?
            }
            Move::Permute(perm) => current.permuted(perm)?,
        };
        total = move_map(k, mv)?.compose(&total);
    }
    Ok((current, total))
}
