//! Bundled presentations and multiplier suites.

use crate::presentation::Presentation;

pub const COMPLETE_AUTO: &str = include_str!("../data/complete_auto.pres");
pub const COMPLETE_NONAUTO: &str = include_str!("../data/complete_nonauto.pres");
pub const FDT_BIAUTO: &str = include_str!("../data/fdt_biauto.pres");
pub const FDT_BIAUTO_SCHEMES: &str = include_str!("../data/fdt_biauto_schemes.pres");
pub const NONFDT_BIAUTO: &str = include_str!("../data/nonfdt_biauto.pres");
pub const NONFDT_BIAUTO_COMPLETE: &str = include_str!("../data/nonfdt_biauto_complete.pres");
pub const FREE2: &str = include_str!("../data/free2.pres");
pub const COMMUTE: &str = include_str!("../data/commute.pres");

/// Right multipliers for [`complete_auto`].
pub const COMPLETE_AUTO_SUITE: &str = include_str!("../data/complete_auto.suite");
/// Left and right multipliers for [`nonfdt_biauto`].
pub const NONFDT_BIAUTO_SUITE: &str = include_str!("../data/nonfdt_biauto.suite");

fn load(text: &str) -> Presentation {
    Presentation::parse(text).expect("bundled presentation parses")
}

/// Nine length-4 rules over {a,b,c}; finite complete, automatic, not biautomatic.
pub fn complete_auto() -> Presentation {
    load(COMPLETE_AUTO)
}

/// The reversal of [`complete_auto`]; finite complete, not automatic.
pub fn complete_nonauto() -> Presentation {
    load(COMPLETE_NONAUTO)
}

/// Seven rules over ten letters; finite derivation type and biautomatic,
/// but with no finite complete rewriting system.
pub fn fdt_biauto() -> Presentation {
    load(FDT_BIAUTO)
}

/// Infinite complete system (power schemes) equivalent to [`fdt_biauto`].
pub fn fdt_biauto_schemes() -> Presentation {
    load(FDT_BIAUTO_SCHEMES)
}

/// `ac -> ca`, `bc -> cb`, `cab -> cbb`: biautomatic, not of finite derivation type.
pub fn nonfdt_biauto() -> Presentation {
    load(NONFDT_BIAUTO)
}

/// Infinite complete system (a word-variable scheme) equivalent to [`nonfdt_biauto`].
pub fn nonfdt_biauto_complete() -> Presentation {
    load(NONFDT_BIAUTO_COMPLETE)
}

pub fn free2() -> Presentation {
    load(FREE2)
}

pub fn commute() -> Presentation {
    load(COMMUTE)
}

/// Normal forms of [`fdt_biauto_schemes`] written as the complement of
/// the words containing a left-hand side pattern.
pub const FDT_BIAUTO_PATTERN: &str = ".* - .* (b1 a | b2 a | b3 a | c2 a* b2 | c3 a* b3 \
     | c1 a* b1 a* (d2 | d3) | b2 d2 | b3 d3) .*";

/// A bundled presentation by file stem.
pub fn by_name(name: &str) -> Option<Presentation> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, p)| p)
}

/// A bundled multiplier suite by the stem of its presentation.
pub fn suite_by_name(name: &str) -> Option<&'static str> {
    match name {
        "complete_auto" => Some(COMPLETE_AUTO_SUITE),
        "nonfdt_biauto" => Some(NONFDT_BIAUTO_SUITE),
        _ => None,
    }
}

/// Every bundled presentation by file stem.
pub fn all() -> Vec<(&'static str, Presentation)> {
    vec![
        ("complete_auto", complete_auto()),
        ("complete_nonauto", complete_nonauto()),
        ("fdt_biauto", fdt_biauto()),
        ("fdt_biauto_schemes", fdt_biauto_schemes()),
        ("nonfdt_biauto", nonfdt_biauto()),
        ("nonfdt_biauto_complete", nonfdt_biauto_complete()),
        ("free2", free2()),
        ("commute", commute()),
    ]
}
