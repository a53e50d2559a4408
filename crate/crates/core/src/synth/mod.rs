//! Unit selection over a [`VoiceInventory`](crate::voicedb::VoiceInventory)
//! and waveform concatenation.

pub mod render;
pub mod select;

pub use render::{render, RenderOptions};
pub use select::{join_cost, select_units, target_cost, unit_targets, CostWeights, PathStep, SynthError, UnitPath, UnitTarget};
