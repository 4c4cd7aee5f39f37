use super::map::{compose, maps_agree, LocalMapPres};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Clockwise,
    Anticlockwise,
}

impl Orientation {
    pub fn opposite(self) -> Orientation {
        match self {
            Orientation::Clockwise => Orientation::Anticlockwise,
            Orientation::Anticlockwise => Orientation::Clockwise,
        }
    }

    /// `+1` for clockwise, `-1` for anticlockwise.
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Clockwise => 1,
            Orientation::Anticlockwise => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Orientation::Clockwise => "clockwise",
            Orientation::Anticlockwise => "anticlockwise",
        }
    }
}

/// `A --first--> B --second--> C` with the composite `A -> C`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub first: LocalMapPres,
    pub second: LocalMapPres,
    pub composite: LocalMapPres,
}

/// ```text
/// A --top--> B
/// |          |
/// left     right
/// v          v
/// C -bottom-> D
/// ```
#[derive(Clone, Debug)]
pub struct Square {
    pub top: LocalMapPres,
    pub right: LocalMapPres,
    pub left: LocalMapPres,
    pub bottom: LocalMapPres,
    pub diagonal: LocalMapPres,
}

#[derive(Clone, Debug)]
pub enum DiagramKind {
    Triangle(Triangle),
    Square(Square),
}

#[derive(Clone, Debug)]
pub struct DiagramShape {
    pub kind: DiagramKind,
    pub orientation: Orientation,
}

impl DiagramShape {
    pub fn triangle(
        first: LocalMapPres,
        second: LocalMapPres,
        orientation: Orientation,
    ) -> Result<DiagramShape> {
        let composite = compose(&first, &second)?;
        Ok(DiagramShape {
            kind: DiagramKind::Triangle(Triangle { first, second, composite }),
            orientation,
        })
    }

    /// Validates corners and checks that both paths `A -> D` agree to the
    /// smallest verified degree.
    pub fn square(
        top: LocalMapPres,
        right: LocalMapPres,
        left: LocalMapPres,
        bottom: LocalMapPres,
        orientation: Orientation,
    ) -> Result<DiagramShape> {
        let corners = [
            (top.source(), left.source(), "A"),
            (top.target(), right.source(), "B"),
            (left.target(), bottom.source(), "C"),
            (right.target(), bottom.target(), "D"),
        ];
        for (a, b, name) in corners {
            if !a.same_presentation(b) {
                return Err(Error::CompositionMismatch(format!(
                    "corner {name}: {a} differs from {b}"
                )));
            }
        }
        let upper = compose(&top, &right)?;
        let lower = compose(&left, &bottom)?;
        let degree = upper.verified_degree().min(lower.verified_degree());
        if !maps_agree(&upper, &lower, degree)? {
            return Err(Error::NonCommutative { degree });
        }
        Ok(DiagramShape {
            kind: DiagramKind::Square(Square { top, right, left, bottom, diagonal: upper }),
            orientation,
        })
    }

    pub fn as_triangle(&self) -> Option<&Triangle> {
        match &self.kind {
            DiagramKind::Triangle(t) => Some(t),
            DiagramKind::Square(_) => None,
        }
    }

    pub fn as_square(&self) -> Option<&Square> {
        match &self.kind {
            DiagramKind::Square(s) => Some(s),
            DiagramKind::Triangle(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::presentation::{quotient, IdealPres, LocalRingPres};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn quotient_square_commutes() {
        let t = LocalRingPres::regular(Q, &["t"], 6).unwrap().into_ring();
        let y = LocalRingPres::regular(Q, &["y"], 6).unwrap().into_ring();
        let yv = y.var(0);
        let phi = LocalMapPres::new(t.clone(), y.clone(), vec![&yv * &yv], 6).unwrap();
        let i = IdealPres::maximal(t.clone());
        let (_, pi_i) = quotient(&t, &i).unwrap();
        let ib = phi.extend_ideal(&i).unwrap();
        let (_, pi_ib) = quotient(&y, &ib).unwrap();
        let phi_i = phi.induced(&i).unwrap();
        let sq = DiagramShape::square(phi, pi_ib, pi_i, phi_i, Orientation::Clockwise);
        assert!(sq.is_ok());
    }

    #[test]
    fn mismatched_corners_rejected() {
        let a = LocalRingPres::regular(Q, &["x"], 6).unwrap().into_ring();
        let b = LocalRingPres::regular(Q, &["u", "v"], 6).unwrap().into_ring();
        let id_a = LocalMapPres::identity(a.clone());
        let id_b = LocalMapPres::identity(b);
        let err = DiagramShape::square(
            id_a.clone(),
            id_b,
            id_a.clone(),
            id_a,
            Orientation::Clockwise,
        )
        .unwrap_err();
        assert!(matches!(err, Error::CompositionMismatch(_)));
    }

    #[test]
    fn noncommuting_square_rejected() {
        let a = LocalRingPres::regular(Q, &["x"], 6).unwrap().into_ring();
        let id = LocalMapPres::identity(a.clone());
        let sq = LocalMapPres::new(a.clone(), a.clone(), vec![&a.var(0) * &a.var(0)], 6).unwrap();
        let err =
            DiagramShape::square(id.clone(), id.clone(), id, sq, Orientation::Clockwise)
                .unwrap_err();
        assert!(matches!(err, Error::NonCommutative { degree: 6 }));
    }
}
