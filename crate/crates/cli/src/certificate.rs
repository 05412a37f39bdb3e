use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use polytile_core::engine::{ResumeState, TorusTiling};
use polytile_core::tiling::RatLattice;
use polytile_core::{DiscreteTile, Lattice, TilingDesc, ZPoint};

use crate::error::CliError;

pub const SESSION_VERSION: &str = "polytile-session/1";

/// A periodic tiling of the discrete tile: `translates + lattice`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub lattice: [[i64; 2]; 2],
    pub translates: Vec<[i64; 2]>,
    pub scale: i64,
}

impl Certificate {
    pub fn new(t: &TorusTiling, scale: i64) -> Self {
        Certificate { lattice: t.lattice.into(), translates: t.translates.iter().map(|&p| p.into()).collect(), scale }
    }

    pub fn to_desc(&self) -> Result<TilingDesc, CliError> {
        let [[a, b], [c, d]] = self.lattice;
        let hnf = (c == 0).then(|| Lattice::new(a, b, d).ok()).flatten().ok_or_else(|| {
            CliError::Data(format!("certificate lattice {:?} is not in Hermite normal form", self.lattice))
        })?;
        Ok(TilingDesc::Periodic {
            base: self.translates.iter().map(|&p| ZPoint::from(p).into()).collect(),
            lattice: RatLattice::integer(hnf),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Refutation {
    pub radius: i64,
}

/// Everything needed to continue an interrupted `decide` run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionState {
    pub version: String,
    /// SHA-256 of the tile in text format.
    pub tile_hash: String,
    #[serde(flatten)]
    pub progress: ResumeState,
}

pub fn tile_hash(tile: &DiscreteTile) -> String {
    hex::encode(Sha256::digest(tile.to_text().as_bytes()))
}

impl SessionState {
    pub fn new(tile: &DiscreteTile, progress: ResumeState) -> Self {
        SessionState { version: SESSION_VERSION.into(), tile_hash: tile_hash(tile), progress }
    }

    pub fn parse(bytes: &[u8], tile: &DiscreteTile) -> Result<ResumeState, CliError> {
        let s: SessionState = serde_json::from_slice(bytes).map_err(|e| CliError::Data(format!("state file: {e}")))?;
        if s.version != SESSION_VERSION {
            return Err(CliError::Data(format!("state file: unsupported version {:?}", s.version)));
        }
        if s.tile_hash != tile_hash(tile) {
            return Err(CliError::Data("state file: recorded for a different tile".into()));
        }
        Ok(s.progress)
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
