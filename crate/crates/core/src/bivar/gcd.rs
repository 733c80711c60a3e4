use super::BiPoly;
use crate::corealg::UniPoly;

/// Monic gcd of the `y`-coefficients (zero for the zero polynomial).
pub fn content_x(p: &BiPoly) -> UniPoly {
    let mut g = UniPoly::zero();
    for r in p.rows() {
        if r.is_zero() {
            continue;
        }
        g = g.gcd(r);
        if g.deg() == 0 {
            break;
        }
    }
    g
}

/// `p` divided by its content in `x`, numerically normalized.
pub fn primitive_part_y(p: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_x(p);
    let q = if c.deg() == 0 {
        p.clone()
    } else {
        p.div_x_poly(&c).expect("content divides every row")
    };
    q.normalize_numeric()
}

/// Normalized gcd in `Q[x][y]` by the primitive remainder sequence.
pub fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.normalize_numeric();
    }
    if b.is_zero() {
        return a.normalize_numeric();
    }
    let gc = content_x(a).gcd(&content_x(b));
    let mut p = primitive_part_y(a);
    let mut q = primitive_part_y(b);
    if p.deg_y() < q.deg_y() {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        if q.deg_y() == 0 {
            break BiPoly::one();
        }
        let r = p.pseudo_rem(&q);
        if r.is_zero() {
            break q;
        }
        p = q;
        q = primitive_part_y(&r);
    };
    g.mul_x_poly(&gc).normalize_numeric()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        let ymx = BiPoly::from_terms(&[(1, 0, 1), (-1, 1, 0)]);
        let yp1 = BiPoly::from_terms(&[(1, 0, 1), (1, 0, 0)]);
        assert_eq!(bi_gcd(&(&ymx * &yp1), &ymx), ymx);
        let p = BiPoly::from_terms(&[(-2, 0, 1), (2, 1, 0)]);
        assert_eq!(bi_gcd(&p, &BiPoly::zero()), ymx);
        let c = BiPoly::from_terms(&[(1, 0, 2), (1, 1, 0), (1, 0, 0)]);
        assert_eq!(bi_gcd(&c, &ymx), BiPoly::one());
    }

    #[test]
    fn gcd_with_x_content() {
        let x = BiPoly::x();
        let a = &(&x * &x) * &BiPoly::from_terms(&[(1, 0, 1), (1, 1, 0)]);
        let b = &x * &BiPoly::from_terms(&[(1, 0, 2), (1, 0, 0)]);
        assert_eq!(bi_gcd(&a, &b), x);
    }
}
