//! First-order invariants: everything here is exact linear algebra on
//! linear parts, with no truncation involved.

use crate::algebra::{rref, FieldSpec, Matrix, Poly, Scalar, Subspace};
use crate::error::{Error, Result};
use crate::presentation::{linear_span, IdealPres, LocalMapPres, LocalRingPres};

/// `lin(I_A)`: the span of the linear parts of the relations in `K^n`.
pub fn lin_space(ring: &LocalRingPres) -> Subspace {
    linear_span(ring.relations(), ring.nvars(), ring.field())
}

/// `dim_K m/m^2 = n - dim lin(I_A)`.
pub fn edim(ring: &LocalRingPres) -> usize {
    ring.nvars() - lin_space(ring).dim()
}

/// `dim_K (I + m^2)/m^2`.
pub fn delta(ideal: &IdealPres) -> usize {
    let ring = ideal.ring();
    let mut lin = lin_space(ring);
    let base = lin.dim();
    for g in ideal.gens() {
        lin.insert_dense(&g.linear_coefficients());
    }
    lin.dim() - base
}

/// `delta` of the extended ideal `IB`.
pub fn delta_phi(map: &LocalMapPres, ideal: &IdealPres) -> Result<usize> {
    Ok(delta(&map.extend_ideal(ideal)?))
}

/// Matrix of `m/m^2 -> n/n^2` on the complements of the relation spans.
#[derive(Clone, Debug)]
pub struct LinearizedMap {
    /// `edim(B) x edim(A)`; column `j` is the class of the image of the
    /// `j`-th source basis vector.
    pub matrix: Matrix,
    /// Source variables whose classes form a basis of `m/m^2`.
    pub source_basis: Vec<usize>,
    /// Target variables whose classes form a basis of `n/n^2`.
    pub target_basis: Vec<usize>,
    pub rank: usize,
    pub nullity: usize,
}

/// Linear part of `p(images)`, read off without substituting.
fn image_linear_part(p: &Poly, image_lin: &[Vec<Scalar>], field: FieldSpec, m: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); m];
    for (i, c) in p.linear_coefficients().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(&image_lin[i]) {
            *o = &*o + &(c * a);
        }
    }
    out
}

pub fn linearized_map(map: &LocalMapPres) -> Result<LinearizedMap> {
    let (source, target) = (map.source(), map.target());
    let field = source.field();
    let m = target.nvars();
    let src_lin = lin_space(source);
    let tgt_lin = lin_space(target);
    let image_lin: Vec<Vec<Scalar>> = map.images().iter().map(|g| g.linear_coefficients()).collect();

    for g in source.relations() {
        let v = image_linear_part(g, &image_lin, field, m);
        if !tgt_lin.contains_dense(&v) {
            return Err(Error::InternalInconsistency(format!(
                "linear part of the image of `{}` is not in lin(I_B)",
                source.display_poly(g)
            )));
        }
    }

    let source_basis = src_lin.free_columns();
    let target_basis = tgt_lin.free_columns();
    let position: Vec<Option<usize>> = {
        let mut pos = vec![None; m];
        for (k, &c) in target_basis.iter().enumerate() {
            pos[c] = Some(k);
        }
        pos
    };
    let mut matrix = Matrix::zeros(field, target_basis.len(), source_basis.len());
    for (j, &s) in source_basis.iter().enumerate() {
        let sparse = crate::algebra::sparse_from_dense(&image_lin[s]);
        for (c, v) in tgt_lin.reduce(&sparse) {
            let row = position[c].expect("reduced vectors live on free columns");
            matrix.set(row, j, v);
        }
    }
    let rank = rref(&matrix).rank;
    Ok(LinearizedMap {
        nullity: source_basis.len() - rank,
        matrix,
        source_basis,
        target_basis,
        rank,
    })
}

/// `edim` of the closed fiber `B/mB`, computed from linear parts only.
pub fn fiber_edim(map: &LocalMapPres) -> usize {
    let target = map.target();
    let mut lin = lin_space(target);
    for g in map.images() {
        lin.insert_dense(&g.linear_coefficients());
    }
    target.nvars() - lin.dim()
}

/// The regularity defect: nullity of the linearized map, checked against
/// `edim(A) + edim(B/mB) - edim(B)`.
pub fn rd(map: &LocalMapPres) -> Result<usize> {
    let nullity = linearized_map(map)?.nullity;
    let by_edim = (edim(map.source()) + fiber_edim(map)) as i64 - edim(map.target()) as i64;
    if by_edim != nullity as i64 {
        return Err(Error::InternalInconsistency(format!(
            "rd mismatch: nullity {nullity}, edim formula {by_edim}"
        )));
    }
    Ok(nullity)
}

pub fn is_basically_regular(map: &LocalMapPres) -> Result<bool> {
    Ok(rd(map)? == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{quotient, Ring};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ring(vars: &[&str], rels: impl Fn(&[Poly]) -> Vec<Poly>) -> Ring {
        let n = vars.len();
        let xs: Vec<Poly> = (0..n).map(|i| Poly::var(Q, n, i)).collect();
        LocalRingPres::new(Q, vars.iter().map(|s| s.to_string()).collect(), rels(&xs), 6)
            .unwrap()
            .into_ring()
    }

    #[test]
    fn lin_space_and_edim() {
        assert_eq!(lin_space(&ring(&["x", "y"], |x| vec![&x[0] * &x[1]])).dim(), 0);
        let r = ring(&["x", "y"], |x| vec![&x[0] - &(&x[1] * &x[1])]);
        assert_eq!(lin_space(&r).dim(), 1);
        assert_eq!(lin_space(&r).pivots(), vec![0]);
        assert_eq!(lin_space(&ring(&["x", "y"], |x| x.to_vec())).dim(), 2);

        assert_eq!(edim(&ring(&["x", "y"], |_| vec![])), 2);
        assert_eq!(edim(&ring(&["x", "y"], |x| vec![&x[0] + &(&x[1] * &x[1])])), 1);
        let sq = ring(&["x", "y"], |x| {
            vec![&x[0] * &x[0], &x[0] * &x[1], &x[1] * &x[1]]
        });
        assert_eq!(edim(&sq), 2);
    }

    #[test]
    fn delta_examples() {
        let a = ring(&["x", "y"], |_| vec![]);
        let (x, y) = (a.var(0), a.var(1));
        assert_eq!(delta(&IdealPres::new(a.clone(), vec![x.clone(), &y * &y]).unwrap()), 1);
        assert_eq!(delta(&IdealPres::maximal(a.clone())), edim(&a));
        assert_eq!(delta(&IdealPres::maximal_power(a.clone(), 2)), 0);
    }

    #[test]
    fn delta_phi_examples() {
        let t = ring(&["t"], |_| vec![]);
        let y = ring(&["y"], |_| vec![]);
        let yv = y.var(0);
        let phi = LocalMapPres::new(t.clone(), y, vec![&yv * &yv], 6).unwrap();
        assert_eq!(delta_phi(&phi, &IdealPres::maximal(t)).unwrap(), 0);

        let a = ring(&["x", "y"], |_| vec![]);
        let i = IdealPres::new(a.clone(), vec![&a.var(0) + &(&a.var(1) * &a.var(1))]).unwrap();
        let id = LocalMapPres::identity(a.clone());
        assert_eq!(delta_phi(&id, &i).unwrap(), delta(&i));

        let x = ring(&["x"], |_| vec![]);
        let uv = ring(&["u", "v"], |_| vec![]);
        let f = LocalMapPres::new(x.clone(), uv.clone(), vec![uv.var(0)], 6).unwrap();
        assert_eq!(delta_phi(&f, &IdealPres::maximal(x)).unwrap(), 1);
    }

    #[test]
    fn linearized_examples() {
        let t = ring(&["t"], |_| vec![]);
        let y = ring(&["y"], |_| vec![]);
        let yv = y.var(0);
        let phi = LocalMapPres::new(t, y, vec![&yv * &yv], 6).unwrap();
        let l = linearized_map(&phi).unwrap();
        assert_eq!(l.matrix, Matrix::zeros(Q, 1, 1));
        assert_eq!(l.nullity, 1);

        let xy = ring(&["x", "y"], |_| vec![]);
        let uv = ring(&["u", "v"], |_| vec![]);
        let iso = LocalMapPres::new(xy.clone(), uv.clone(), uv.gens(), 6).unwrap();
        let l = linearized_map(&iso).unwrap();
        assert_eq!(l.matrix, Matrix::identity(Q, 2));
        assert_eq!(l.nullity, 0);

        let fold = LocalMapPres::new(xy, uv.clone(), vec![uv.var(0), uv.var(0)], 6).unwrap();
        let l = linearized_map(&fold).unwrap();
        assert_eq!((l.rank, l.nullity), (1, 1));
    }

    #[test]
    fn rd_examples() {
        let t = ring(&["t"], |_| vec![]);
        let y = ring(&["y"], |_| vec![]);
        let yv = y.var(0);
        let phi = LocalMapPres::new(t, y.clone(), vec![&yv * &yv], 6).unwrap();
        assert_eq!(rd(&phi).unwrap(), 1);
        assert!(!is_basically_regular(&phi).unwrap());
        assert_eq!(rd(&LocalMapPres::identity(y)).unwrap(), 0);

        let a = ring(&["x", "y"], |x| vec![&x[0] * &x[1]]);
        let (_, pi_m) = quotient(&a, &IdealPres::maximal(a.clone())).unwrap();
        assert_eq!(rd(&pi_m).unwrap(), edim(&a));
        let (_, pi_m2) = quotient(&a, &IdealPres::maximal_power(a.clone(), 2)).unwrap();
        assert!(is_basically_regular(&pi_m2).unwrap());

        let k = ring(&[], |_| vec![]);
        let into_y = LocalMapPres::new(k, ring(&["y"], |_| vec![]), vec![], 6).unwrap();
        assert!(is_basically_regular(&into_y).unwrap());
    }
}
