//! Names and argument kinds of `compute` and `check` queries.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Ring,
    Ideal,
    Map,
    MapOrDiagram,
    RingOrMap,
}

impl ArgKind {
    pub fn accepts(self, kind: &str) -> bool {
        match self {
            ArgKind::Ring => kind == "ring",
            ArgKind::Ideal => kind == "ideal",
            ArgKind::Map => kind == "map",
            ArgKind::MapOrDiagram => kind == "map" || kind == "diagram",
            ArgKind::RingOrMap => kind == "ring" || kind == "map",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            ArgKind::Ring => "ring",
            ArgKind::Ideal => "ideal",
            ArgKind::Map => "map",
            ArgKind::MapOrDiagram => "map or diagram",
            ArgKind::RingOrMap => "ring or map",
        }
    }
}

use ArgKind::*;

pub const COMPUTE: &[(&str, &[ArgKind])] = &[
    ("edim", &[Ring]),
    ("dim", &[Ring]),
    ("cdim", &[Ring]),
    ("eps2", &[Ring]),
    ("mu", &[Ideal]),
    ("delta", &[Ideal]),
    ("delta_phi", &[Map, Ideal]),
    ("rd", &[MapOrDiagram]),
    ("fiber_edim", &[Map]),
    ("linearized", &[Map]),
    ("flatness", &[Map]),
    ("report", &[RingOrMap]),
];

pub const CHECK: &[(&str, &[ArgKind])] = &[
    ("basically_regular", &[MapOrDiagram]),
    ("weakly_regular", &[Map]),
    ("flat", &[Map]),
    ("regular", &[Ring]),
    ("contained_in_m2", &[Ideal]),
];

pub fn lookup(name: &str, check: bool) -> Option<&'static [ArgKind]> {
    let table = if check { CHECK } else { COMPUTE };
    table.iter().find(|(n, _)| *n == name).map(|(_, sig)| *sig)
}
