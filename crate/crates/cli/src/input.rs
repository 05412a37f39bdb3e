use std::path::Path;

use polytile_core::geometry::{parse_polygonal_set, point_strings};
use polytile_core::{discretize, DiscreteTile, IntegerPolygonalSet, TilingDesc};

use crate::certificate::Certificate;
use crate::error::CliError;

pub enum Input {
    Polygon(IntegerPolygonalSet),
    Tile(DiscreteTile),
}

pub fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

/// A polygonal-set JSON document or a tile file, told apart by the first
/// non-blank byte.
pub fn load(path: &Path) -> Result<Input, CliError> {
    let bytes = read(path)?;
    let data = |m: String| CliError::Data(format!("{}: {m}", path.display()));
    if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') {
        let set = parse_polygonal_set(&bytes).map_err(|e| data(e.to_string()))?;
        let omega = match IntegerPolygonalSet::try_from_set(set.clone()) {
            Ok(omega) => omega,
            Err(_) => {
                let (omega, norm) = set.normalize_to_integer();
                let [tx, ty] = point_strings(&norm.translation);
                eprintln!("note: vertices mapped to integers by x -> {} (x - ({tx}, {ty}))", norm.dilation);
                omega
            }
        };
        Ok(Input::Polygon(omega))
    } else {
        let text = String::from_utf8(bytes).map_err(|e| data(e.to_string()))?;
        Ok(Input::Tile(DiscreteTile::from_text(&text).map_err(|e| data(e.to_string()))?))
    }
}

/// Like [`load`], but a polygon must already have integer vertices so that
/// tiling descriptions refer to its own coordinates.
pub fn load_exact(path: &Path) -> Result<Input, CliError> {
    let bytes = read(path)?;
    if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') {
        let set = parse_polygonal_set(&bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let omega =
            IntegerPolygonalSet::try_from_set(set).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        return Ok(Input::Polygon(omega));
    }
    load(path)
}

pub fn to_tile(input: Input) -> DiscreteTile {
    match input {
        Input::Polygon(omega) => discretize(&omega),
        Input::Tile(t) => t,
    }
}

/// A decide certificate (always about the discrete tile) or a tiling
/// description (about the input as given).
pub enum TilingFile {
    Certificate(Certificate),
    Description(TilingDesc),
}

pub fn load_tiling(path: &Path) -> Result<TilingFile, CliError> {
    let bytes = read(path)?;
    if let Ok(cert) = serde_json::from_slice::<Certificate>(&bytes) {
        return Ok(TilingFile::Certificate(cert));
    }
    TilingDesc::from_json(&bytes)
        .map(TilingFile::Description)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

/// What a tiling file is checked against.
pub enum Subject {
    Polygon(IntegerPolygonalSet, TilingDesc),
    Tile(DiscreteTile, TilingDesc),
}

pub fn subject(input_path: &Path, tiling_path: &Path) -> Result<Subject, CliError> {
    match load_tiling(tiling_path)? {
        TilingFile::Certificate(cert) => {
            let tile = to_tile(load(input_path)?);
            if cert.scale != tile.scale() {
                return Err(CliError::Data(format!(
                    "certificate is for scale {} but the tile has scale {}",
                    cert.scale,
                    tile.scale()
                )));
            }
            Ok(Subject::Tile(tile, cert.to_desc()?))
        }
        TilingFile::Description(desc) => Ok(match load_exact(input_path)? {
            Input::Polygon(omega) => Subject::Polygon(omega, desc),
            Input::Tile(tile) => Subject::Tile(tile, desc),
        }),
    }
}
