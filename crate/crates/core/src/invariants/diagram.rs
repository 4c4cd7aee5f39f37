//! Signed regularity defects of oriented triangles and squares.

use super::linear::rd;
use crate::error::{Error, Result};
use crate::presentation::{DiagramShape, IdealPres, Orientation};

fn signed_triangle(orientation: Orientation, first: usize, second: usize, composite: usize) -> i64 {
    orientation.sign() * ((first + second) as i64 - composite as i64)
}

/// `±((rd φ + rd ψ) - rd(ψ∘φ))`, positive for clockwise.
pub fn triangle_rd(diagram: &DiagramShape) -> Result<i64> {
    let t = diagram.as_triangle().ok_or_else(|| Error::ShapeMismatch {
        expected: "triangle".into(),
        found: "square".into(),
    })?;
    Ok(signed_triangle(diagram.orientation, rd(&t.first)?, rd(&t.second)?, rd(&t.composite)?))
}

/// `±((rd top + rd right) - (rd left + rd bottom))`, positive for
/// clockwise. Cross-checked against the sum of the triangles `A -> B -> D`
/// (same orientation) and `A -> C -> D` (opposite orientation) through the
/// diagonal.
pub fn square_rd(diagram: &DiagramShape) -> Result<i64> {
    let s = diagram.as_square().ok_or_else(|| Error::ShapeMismatch {
        expected: "square".into(),
        found: "triangle".into(),
    })?;
    let o = diagram.orientation;
    let (top, right, left, bottom) = (rd(&s.top)?, rd(&s.right)?, rd(&s.left)?, rd(&s.bottom)?);
    let diagonal = rd(&s.diagonal)?;
    let direct = o.sign() * ((top + right) as i64 - (left + bottom) as i64);
    let by_triangles = signed_triangle(o, top, right, diagonal)
        + signed_triangle(o.opposite(), left, bottom, diagonal);
    if direct != by_triangles {
        return Err(Error::InternalInconsistency(format!(
            "square defect {direct} differs from triangle sum {by_triangles}"
        )));
    }
    Ok(direct)
}

/// The square `(A/I) ⊗_A S` of induced maps, with the same orientation.
pub fn base_change_square(diagram: &DiagramShape, ideal: &IdealPres) -> Result<DiagramShape> {
    let s = diagram.as_square().ok_or_else(|| Error::ShapeMismatch {
        expected: "square".into(),
        found: "triangle".into(),
    })?;
    let ib = s.top.extend_ideal(ideal)?;
    let ic = s.left.extend_ideal(ideal)?;
    let top = s.top.induced(ideal)?;
    let left = s.left.induced(ideal)?;
    let right = s.right.induced(&ib)?;
    let bottom = s.bottom.induced_into(&ic, right.target().clone())?;
    DiagramShape::square(top, right, left, bottom, diagram.orientation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::presentation::{quotient, LocalMapPres, LocalRingPres};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn square_map() -> LocalMapPres {
        let t = LocalRingPres::regular(Q, &["t"], 6).unwrap().into_ring();
        let y = LocalRingPres::regular(Q, &["y"], 6).unwrap().into_ring();
        let yv = y.var(0);
        LocalMapPres::new(t, y, vec![&yv * &yv], 6).unwrap()
    }

    fn quotient_square(phi: &LocalMapPres, i: &IdealPres) -> DiagramShape {
        let (_, pi_i) = quotient(phi.source(), i).unwrap();
        let (_, pi_ib) = quotient(phi.target(), &phi.extend_ideal(i).unwrap()).unwrap();
        let phi_i = phi.induced(i).unwrap();
        DiagramShape::square(phi.clone(), pi_ib, pi_i, phi_i, Orientation::Clockwise).unwrap()
    }

    #[test]
    fn triangle_examples() {
        let phi = square_map();
        let z = LocalRingPres::regular(Q, &["z"], 6).unwrap().into_ring();
        let psi = LocalMapPres::new(phi.target().clone(), z.clone(), vec![z.var(0)], 6).unwrap();
        let t = DiagramShape::triangle(phi.clone(), psi, Orientation::Clockwise).unwrap();
        assert_eq!(triangle_rd(&t).unwrap(), 0);

        let id = LocalMapPres::identity(z);
        let t = DiagramShape::triangle(id.clone(), id, Orientation::Anticlockwise).unwrap();
        assert_eq!(triangle_rd(&t).unwrap(), 0);

        let (_, pi) = quotient(phi.source(), &IdealPres::maximal(phi.source().clone())).unwrap();
        let k = pi.target().clone();
        let into = LocalMapPres::new(k, phi.target().clone(), vec![crate::algebra::Poly::zero(Q, 1)], 6).unwrap();
        let t = DiagramShape::triangle(pi, into, Orientation::Clockwise).unwrap();
        assert_eq!(triangle_rd(&t).unwrap(), 0);
    }

    #[test]
    fn square_examples() {
        let phi = square_map();
        let i = IdealPres::maximal(phi.source().clone());
        let s = quotient_square(&phi, &i);
        assert_eq!(square_rd(&s).unwrap(), 0);

        let id = LocalMapPres::identity(phi.source().clone());
        let s = DiagramShape::square(id.clone(), id.clone(), id.clone(), id, Orientation::Clockwise)
            .unwrap();
        assert_eq!(square_rd(&s).unwrap(), 0);
    }

    #[test]
    fn degenerate_square_is_its_triangle() {
        // C = A with identity left edge: square defect equals the triangle's
        let phi = square_map();
        let z = LocalRingPres::regular(Q, &["z"], 6).unwrap().into_ring();
        let psi = LocalMapPres::new(phi.target().clone(), z.clone(), vec![&z.var(0) * &z.var(0)], 6)
            .unwrap();
        let composite = crate::presentation::compose(&phi, &psi).unwrap();
        let id = LocalMapPres::identity(phi.source().clone());
        for o in [Orientation::Clockwise, Orientation::Anticlockwise] {
            let s = DiagramShape::square(phi.clone(), psi.clone(), id.clone(), composite.clone(), o)
                .unwrap();
            let t = DiagramShape::triangle(phi.clone(), psi.clone(), o).unwrap();
            assert_eq!(square_rd(&s).unwrap(), triangle_rd(&t).unwrap());
            assert_eq!(triangle_rd(&t).unwrap(), o.sign());
        }
    }

    #[test]
    fn base_change_examples() {
        let phi = square_map();
        let t = phi.source().clone();
        let s = quotient_square(&phi, &IdealPres::zero(t.clone()));
        let same = base_change_square(&s, &IdealPres::zero(t.clone())).unwrap();
        assert_eq!(square_rd(&same).unwrap(), square_rd(&s).unwrap());
        let sq = same.as_square().unwrap();
        assert!(sq.top.source().same_presentation(&t));

        let s = quotient_square(&phi, &IdealPres::new(t.clone(), vec![t.var(0)]).unwrap());
        let k = base_change_square(&s, &IdealPres::maximal(t.clone())).unwrap();
        assert_eq!(square_rd(&k).unwrap(), square_rd(&s).unwrap());
        let ks = k.as_square().unwrap();
        assert_eq!(ks.top.source().relations(), &[t.var(0)]);
    }
}
