//! Exhaustive and sampled enumeration of small frames.
//!
//! A frame over `n` worlds and agents `I` is determined by `n² (|I| + 1)`
//! bits: relation `r` (agents in order, then `C`) stores pair `(a, b)` at
//! bit `r n² + a n + b`. Exhaustive enumeration walks the indices in order;
//! sampled enumeration draws every bit from a fair coin seeded with ChaCha8.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Frame, KripkeError, Relation};
use crate::formula::AgentSet;

/// Largest bit count walked exhaustively (2^20 frames).
pub const MAX_EXHAUSTIVE_BITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSpace {
    worlds: usize,
    agents: AgentSet,
}

impl FrameSpace {
    pub fn new(worlds: usize, agents: AgentSet) -> Result<Self, KripkeError> {
        if worlds == 0 {
            return Err(KripkeError::NoWorlds);
        }
        Ok(FrameSpace { worlds, agents })
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn agents(&self) -> &AgentSet {
        &self.agents
    }

    /// Bits needed to describe one frame.
    pub fn bits(&self) -> usize {
        self.worlds * self.worlds * (self.agents.len() + 1)
    }

    fn relation_bits(&self) -> usize {
        self.worlds * self.worlds
    }

    fn frame_from_bits(&self, bit: impl Fn(usize) -> bool, close: bool) -> Frame {
        let n = self.worlds;
        let block = self.relation_bits();
        let relation = |r: usize| {
            let mut rel = Relation::empty(n);
            for a in 0..n {
                for b in 0..n {
                    if bit(r * block + a * n + b) {
                        rel.insert(a, b);
                    }
                }
            }
            rel
        };
        let r_k = (0..self.agents.len()).map(relation).collect();
        let frame = if close {
            Frame::with_closure(self.agents.clone(), r_k)
        } else {
            Frame::new(self.agents.clone(), r_k, relation(self.agents.len()))
        };
        frame.expect("enumerated frames are well formed")
    }

    /// The frame with the given index in the exhaustive order.
    pub fn frame_at(&self, index: u64) -> Frame {
        self.frame_from_bits(|b| index >> b & 1 == 1, false)
    }

    pub fn frame_count(&self) -> Option<u64> {
        1u64.checked_shl(self.bits() as u32)
    }

    /// Every frame in index order.
    pub fn exhaustive(&self) -> Result<impl Iterator<Item = Frame> + '_, KripkeError> {
        let bits = self.bits();
        if bits > MAX_EXHAUSTIVE_BITS {
            return Err(KripkeError::EnumerationCap {
                bits,
                cap: MAX_EXHAUSTIVE_BITS,
            });
        }
        Ok((0..1u64 << bits).map(|i| self.frame_at(i)))
    }

    /// `count` frames with every relation bit an independent fair coin.
    pub fn sampled(&self, seed: u64, count: usize) -> impl Iterator<Item = Frame> + '_ {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits = self.bits();
        (0..count).map(move |_| {
            let draws: Vec<bool> = (0..bits).map(|_| rng.gen()).collect();
            self.frame_from_bits(|b| draws[b], false)
        })
    }

    /// Every CKL-frame: all agent relations, with `C` set to the closure.
    pub fn ckl_frames(&self) -> Result<impl Iterator<Item = Frame> + '_, KripkeError> {
        let bits = self.relation_bits() * self.agents.len();
        if bits > MAX_EXHAUSTIVE_BITS {
            return Err(KripkeError::EnumerationCap {
                bits,
                cap: MAX_EXHAUSTIVE_BITS,
            });
        }
        Ok((0..1u64 << bits).map(move |i| self.frame_from_bits(|b| i >> b & 1 == 1, true)))
    }
}
