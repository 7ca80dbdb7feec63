//! Material files bundled with the crate.
//!
//! The Au, SiO₂ and bromobenzene parameters are surrogates: they reproduce
//! the ordering and the single crossing of the measured imaginary-axis
//! permittivities, not the measured curves themselves. Real data can be
//! supplied through [`load_material`](super::load_material).

use super::{parse_material, Material};

pub const GOLD: &str = include_str!("../../materials/au.mat");
pub const SILICA: &str = include_str!("../../materials/sio2.mat");
pub const BROMOBENZENE: &str = include_str!("../../materials/bromobenzene.mat");
pub const VACUUM: &str = include_str!("../../materials/vacuum.mat");
pub const PERFECT_CONDUCTOR: &str = include_str!("../../materials/perfect_conductor.mat");

/// Names accepted by [`by_name`], with their file contents.
pub const ALL: [(&str, &str); 5] = [
    ("au", GOLD),
    ("sio2", SILICA),
    ("bromobenzene", BROMOBENZENE),
    ("vacuum", VACUUM),
    ("perfect_conductor", PERFECT_CONDUCTOR),
];

fn parse_builtin(name: &str, text: &str) -> Material {
    parse_material(text, &format!("builtin:{name}")).expect("bundled material files are valid")
}

pub fn gold() -> Material {
    parse_builtin("au", GOLD)
}

pub fn silica() -> Material {
    parse_builtin("sio2", SILICA)
}

pub fn bromobenzene() -> Material {
    parse_builtin("bromobenzene", BROMOBENZENE)
}

pub fn vacuum() -> Material {
    parse_builtin("vacuum", VACUUM)
}

pub fn perfect_conductor() -> Material {
    parse_builtin("perfect_conductor", PERFECT_CONDUCTOR)
}

/// Looks up a bundled material by name (case-insensitive; `bb`, `gold`,
/// `silica`, `air` and `pc` are accepted as aliases). Returns the parsed
/// material and its file text.
pub fn by_name(name: &str) -> Option<(Material, &'static str)> {
    let key = match name.to_ascii_lowercase().as_str() {
        "au" | "gold" => "au",
        "sio2" | "silica" => "sio2",
        "bb" | "bromobenzene" => "bromobenzene",
        "vacuum" | "air" => "vacuum",
        "pc" | "perfect_conductor" => "perfect_conductor",
        _ => return None,
    };
    ALL.iter()
        .find(|(k, _)| *k == key)
        .map(|&(k, text)| (parse_builtin(k, text), text))
}
