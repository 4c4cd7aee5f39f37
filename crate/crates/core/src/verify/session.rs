//! Renders instances as session text that the command-line front end can
//! replay.

use std::fmt::Write;

use sha2::{Digest, Sha256};

use super::gen::{GenParams, Instance};
use crate::invariants::computed_krull_dim;
use crate::presentation::{DiagramShape, DEFAULT_TRUNC_DEGREE, IdealPres, LocalMapPres, Provenance, Ring};

#[derive(Default)]
pub struct SessionWriter {
    out: String,
    rings: Vec<(Ring, String)>,
    maps: usize,
    ideals: usize,
    diagrams: usize,
}

impl SessionWriter {
    pub fn new(field: crate::algebra::FieldSpec) -> Self {
        let mut w = SessionWriter::default();
        writeln!(w.out, "field {field};").unwrap();
        w
    }

    pub fn ring(&mut self, ring: &Ring) -> String {
        if let Some((_, name)) = self.rings.iter().find(|(r, _)| {
            r.same_presentation(ring) && r.dim_override() == ring.dim_override()
        }) {
            return name.clone();
        }
        let name = format!("R{}", self.rings.len() + 1);
        writeln!(self.out, "ring {name} = {ring};").unwrap();
        if let Some(d) = ring.dim_override() {
            if computed_krull_dim(ring).is_none() {
                writeln!(self.out, "set dim_override {name} {d};").unwrap();
            }
        }
        self.rings.push((ring.clone(), name.clone()));
        name
    }

    pub fn ideal(&mut self, ideal: &IdealPres) -> String {
        let ring = self.ring(ideal.ring());
        self.ideals += 1;
        let name = format!("I{}", self.ideals);
        writeln!(self.out, "ideal {name} = {ideal} in {ring};").unwrap();
        name
    }

    /// Composites are written as compositions of their factors so that
    /// structural flatness witnesses survive the round trip.
    pub fn map(&mut self, map: &LocalMapPres) -> String {
        if let Provenance::Composite(first, second) = map.provenance() {
            let f = self.map(first);
            let g = self.map(second);
            self.maps += 1;
            let name = format!("f{}", self.maps);
            writeln!(self.out, "compose {name} = {g} . {f};").unwrap();
            return name;
        }
        let source = self.ring(map.source());
        let target = self.ring(map.target());
        self.maps += 1;
        let name = format!("f{}", self.maps);
        let images: Vec<String> =
            map.images().iter().map(|g| map.target().display_poly(g).to_string()).collect();
        writeln!(self.out, "map {name} : {source} -> {target} = [{}];", images.join(", ")).unwrap();
        name
    }

    pub fn diagram(&mut self, d: &DiagramShape) -> String {
        let (kind, edges) = match (d.as_triangle(), d.as_square()) {
            (Some(t), _) => ("triangle", vec![self.map(&t.first), self.map(&t.second)]),
            (_, Some(s)) => (
                "square",
                vec![self.map(&s.top), self.map(&s.right), self.map(&s.left), self.map(&s.bottom)],
            ),
            _ => unreachable!(),
        };
        self.diagrams += 1;
        let name = format!("D{}", self.diagrams);
        writeln!(
            self.out,
            "diagram {name} = {kind}({}) {};",
            edges.join(", "),
            d.orientation.name()
        )
        .unwrap();
        name
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub fn instance_session(instance: &Instance, params: &GenParams) -> String {
    let mut w = SessionWriter::new(params.field);
    if params.trunc_degree != DEFAULT_TRUNC_DEGREE {
        writeln!(w.out, "set trunc_degree {};", params.trunc_degree).unwrap();
    }
    match instance {
        Instance::Ring { ring } => {
            w.ring(ring);
        }
        Instance::RingWithIdeal { ideal, larger } => {
            w.ideal(ideal);
            w.ideal(larger);
        }
        Instance::Map { map, ideal, target_ideal, small_ideal, small_target_ideal } => {
            w.map(map);
            w.ideal(ideal);
            w.ideal(target_ideal);
            w.ideal(small_ideal);
            w.ideal(small_target_ideal);
        }
        Instance::ComposablePair { first, second, ideal } => {
            let f = w.map(first);
            let g = w.map(second);
            writeln!(w.out, "compose h = {g} . {f};").unwrap();
            w.ideal(ideal);
        }
        Instance::QuotientSquare { ideal, square, base, .. } => {
            w.diagram(square);
            w.ideal(ideal);
            w.ideal(base);
        }
        Instance::FlatFamily { map } => {
            w.map(map);
        }
        Instance::SurjectionTriangle { first, second } => {
            let f = w.map(first);
            let g = w.map(second);
            writeln!(w.out, "diagram T = triangle({f}, {g}) clockwise;").unwrap();
        }
    }
    w.finish()
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}
