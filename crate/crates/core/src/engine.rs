//! Deciding whether a finite tile of Z² tiles the plane by translations.
//!
//! Round `B = 1, 2, ...` first looks for a periodic tiling on every torus
//! `Z²/Λ` with `[Z² : Λ] = B·|tile|`, then asks whether the square
//! `[-B, B]²` can be covered exactly once by non-overlapping translates.
//! A torus tiling is a certificate; an uncoverable square is a refutation.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact_cover::{ExactCover, SearchOutcome, SearchStats};
use crate::lattice::{lattices_of_index, Lattice, ZPoint};
use crate::tiling::{DescError, TilingDesc};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusTiling {
    pub lattice: Lattice,
    /// Translates reduced into the fundamental domain, sorted.
    pub translates: Vec<ZPoint>,
}

impl TorusTiling {
    pub fn to_desc(&self) -> TilingDesc {
        TilingDesc::Periodic {
            base: self.translates.iter().map(|&t| t.into()).collect(),
            lattice: crate::tiling::RatLattice::integer(self.lattice),
        }
    }
}

/// Why a torus admits no tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusFailure {
    /// `|tile|` does not divide the index.
    NotDivisible,
    /// Two tile points are congruent modulo the lattice.
    Collapsed,
    /// The exact-cover search found no solution.
    NoCover,
}

pub fn tile_torus_detailed(tile: &[ZPoint], lat: &Lattice) -> Result<TorusTiling, TorusFailure> {
    assert!(!tile.is_empty(), "empty tile");
    let index = lat.index() as usize;
    if !index.is_multiple_of(tile.len()) {
        return Err(TorusFailure::NotDivisible);
    }
    let mut reduced: Vec<ZPoint> = tile.iter().map(|&p| lat.reduce(p)).collect();
    reduced.sort();
    if reduced.windows(2).any(|w| w[0] == w[1]) {
        return Err(TorusFailure::Collapsed);
    }
    let mut problem = ExactCover::new(index, 0);
    let mut seen = HashSet::new();
    let mut offsets = Vec::new();
    for t in lat.fundamental_domain() {
        let mut cells: Vec<usize> = reduced.iter().map(|&p| lat.cell_index(p + t)).collect();
        cells.sort_unstable();
        if seen.insert(cells.clone()) {
            problem.add_row(&cells);
            offsets.push(t);
        }
    }
    match problem.solve_first(None).0 {
        SearchOutcome::Found(rows) => {
            let mut translates: Vec<ZPoint> = rows.into_iter().map(|r| offsets[r]).collect();
            translates.sort();
            Ok(TorusTiling { lattice: *lat, translates })
        }
        _ => Err(TorusFailure::NoCover),
    }
}

/// A tiling of `Z²/lat` by translates of `tile`, if one exists.
pub fn tile_torus(tile: &[ZPoint], lat: &Lattice) -> Option<TorusTiling> {
    tile_torus_detailed(tile, lat).ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatchOutcome {
    /// Translates covering `[-r, r]²` exactly once without overlapping.
    Yes(Vec<ZPoint>),
    No,
}

/// Whether non-overlapping translates of `tile` can cover `[-r, r]²` exactly once.
pub fn patch_tileable(tile: &[ZPoint], r: i64) -> (PatchOutcome, SearchStats) {
    assert!(r >= 1 && !tile.is_empty());
    let side = 2 * r + 1;
    let in_core = |p: ZPoint| p.x.abs() <= r && p.y.abs() <= r;
    let core_index = |p: ZPoint| ((p.x + r) * side + (p.y + r)) as usize;
    let mut options = BTreeSet::new();
    for x in -r..=r {
        for y in -r..=r {
            for &f in tile {
                options.insert(ZPoint::new(x, y) - f);
            }
        }
    }
    let mut outside: HashMap<ZPoint, usize> = HashMap::new();
    let mut rows = Vec::with_capacity(options.len());
    let n_core = (side * side) as usize;
    for &t in &options {
        let items: Vec<usize> = tile
            .iter()
            .map(|&f| {
                let p = f + t;
                if in_core(p) {
                    core_index(p)
                } else {
                    let next = n_core + outside.len();
                    *outside.entry(p).or_insert(next)
                }
            })
            .collect();
        rows.push(items);
    }
    let mut problem = ExactCover::new(n_core, outside.len());
    for items in &rows {
        problem.add_row(items);
    }
    let options: Vec<ZPoint> = options.into_iter().collect();
    let (outcome, stats) = problem.solve_first(None);
    let out = match outcome {
        SearchOutcome::Found(rows) => PatchOutcome::Yes(rows.into_iter().map(|i| options[i]).collect()),
        _ => PatchOutcome::No,
    };
    (out, stats)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideStats {
    pub lattices_tried: u64,
    /// Lattices rejected because the tile collapses modulo them.
    pub lattices_collapsed: u64,
    pub patches_tried: u64,
    pub work_units: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "phase", rename_all = "lowercase")]
pub enum Phase {
    /// Next lattice to try is the `position`-th of this round's index.
    Lattices {
        position: u64,
    },
    Patch,
}

/// Where an interrupted search continues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResumeState {
    pub round: u64,
    #[serde(flatten)]
    pub phase: Phase,
    pub stats: DecideStats,
}

impl ResumeState {
    pub fn start() -> Self {
        ResumeState { round: 1, phase: Phase::Lattices { position: 0 }, stats: DecideStats::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Tileable(TorusTiling),
    NotTileable { radius: i64 },
    Undecided(ResumeState),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub stats: DecideStats,
}

#[derive(Clone, Debug)]
pub struct DecideOptions {
    /// Maximum work units for this invocation; a unit is one torus or one patch search.
    pub budget: Option<u64>,
    pub threads: usize,
    pub resume: Option<ResumeState>,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { budget: None, threads: 1, resume: None }
    }
}

pub fn decide(tile: &[ZPoint], opts: &DecideOptions) -> Decision {
    assert!(!tile.is_empty(), "empty tile");
    let pool = (opts.threads > 1)
        .then(|| rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build().expect("thread pool"));
    let mut state = opts.resume.unwrap_or_else(ResumeState::start);
    let mut spent = 0u64;
    let remaining = |spent: u64| opts.budget.map_or(u64::MAX, |b| b.saturating_sub(spent));
    let n = tile.len() as i64;
    loop {
        if remaining(spent) == 0 {
            return Decision { verdict: Verdict::Undecided(state), stats: state.stats };
        }
        match state.phase {
            Phase::Lattices { position } => {
                let lattices: Vec<Lattice> = lattices_of_index(state.round as i64 * n).collect();
                let pos = position as usize;
                if pos >= lattices.len() {
                    state.phase = Phase::Patch;
                    continue;
                }
                let chunk = match &pool {
                    Some(_) => (opts.threads * 4).min(lattices.len() - pos),
                    None => 1,
                }
                .min(remaining(spent).min(usize::MAX as u64) as usize);
                let batch = &lattices[pos..pos + chunk];
                let results: Vec<Result<TorusTiling, TorusFailure>> = match &pool {
                    Some(p) => p.install(|| batch.par_iter().map(|l| tile_torus_detailed(tile, l)).collect()),
                    None => batch.iter().map(|l| tile_torus_detailed(tile, l)).collect(),
                };
                for (i, res) in results.into_iter().enumerate() {
                    spent += 1;
                    state.stats.work_units += 1;
                    state.stats.lattices_tried += 1;
                    match res {
                        Ok(t) => {
                            state.phase = Phase::Lattices { position: (pos + i + 1) as u64 };
                            return Decision { verdict: Verdict::Tileable(t), stats: state.stats };
                        }
                        Err(TorusFailure::Collapsed) => state.stats.lattices_collapsed += 1,
                        Err(_) => {}
                    }
                }
                state.phase = Phase::Lattices { position: (pos + chunk) as u64 };
            }
            Phase::Patch => {
                spent += 1;
                state.stats.work_units += 1;
                state.stats.patches_tried += 1;
                let radius = state.round as i64;
                if patch_tileable(tile, radius).0 == PatchOutcome::No {
                    return Decision { verdict: Verdict::NotTileable { radius }, stats: state.stats };
                }
                state.round += 1;
                state.phase = Phase::Lattices { position: 0 };
            }
        }
    }
}

/// Certificate check by direct counting: every cell of one fundamental
/// domain of the description's period lattice must be covered exactly once.
pub fn verify_tiling(tile: &[ZPoint], t: &TilingDesc) -> Result<bool, DescError> {
    if tile.is_empty() {
        return Ok(false);
    }
    Ok(tiling_defect(tile, t)?.is_none())
}

/// The first cell, in fundamental-domain order, not covered exactly once,
/// with its coverage.
pub fn tiling_defect(tile: &[ZPoint], t: &TilingDesc) -> Result<Option<(ZPoint, u32)>, DescError> {
    assert!(!tile.is_empty(), "empty tile");
    let periodic = t.to_int_periodic()?;
    let lat = periodic.lattice();
    let (a, d) = (lat.a(), lat.d());
    let min_x = tile.iter().map(|p| p.x).min().unwrap();
    let max_x = tile.iter().map(|p| p.x).max().unwrap();
    let min_y = tile.iter().map(|p| p.y).min().unwrap();
    let max_y = tile.iter().map(|p| p.y).max().unwrap();
    let lo = ZPoint::new(-max_x, -max_y);
    let hi = ZPoint::new(a - 1 - min_x, d - 1 - min_y);
    let mut counts = vec![0u32; (a * d) as usize];
    for t in periodic.as_piece().points_in_box(lo, hi) {
        for &f in tile {
            let c = t + f;
            if c.x >= 0 && c.x < a && c.y >= 0 && c.y < d {
                counts[(c.y * a + c.x) as usize] += 1;
            }
        }
    }
    let defect = lat.fundamental_domain().zip(counts).find(|&(_, c)| c != 1);
    Ok(defect)
}
