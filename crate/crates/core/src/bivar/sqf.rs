use super::{bi_gcd, content_x, primitive_part_y, BiPoly};
use crate::corealg::UniPoly;
use crate::error::{Error, Result};

/// `q = content * prod Q_i^i` over `Q(x)[y]`, with the `x`-content split off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqfDecompBi {
    pub factors: Vec<(BiPoly, usize)>,
    pub content: UniPoly,
}

impl SqfDecompBi {
    pub fn squarefree_part(&self) -> BiPoly {
        self.factors
            .iter()
            .fold(BiPoly::one(), |acc, (f, _)| &acc * f)
    }

    pub fn recombine(&self) -> BiPoly {
        self.factors.iter().fold(
            BiPoly::from_x(self.content.clone()),
            |acc, (f, i)| &acc * &f.pow(*i as u32),
        )
    }
}

/// Yun's algorithm over `Q(x)[y]` with primitive gcds. Factors are primitive and
/// normalized; those constant in `y` are omitted.
pub fn squarefree_bi(q: &BiPoly) -> Result<SqfDecompBi> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.deg_y() == 0 {
        return Err(Error::ConstantInMainVariable);
    }
    let f = primitive_part_y(q);
    let df = f.derivative_y();
    let a0 = bi_gcd(&f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = df.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative_y();
    let mut factors = Vec::new();
    let mut i = 1;
    while b.deg_y() >= 1 {
        let a = bi_gcd(&b, &d);
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative_y();
        if a.deg_y() >= 1 {
            factors.push((a, i));
        }
        i += 1;
    }
    let prod = factors
        .iter()
        .fold(BiPoly::one(), |acc: BiPoly, (f, i)| &acc * &f.pow(*i as u32));
    let content = q
        .div_exact(&prod)
        .expect("factors divide the input")
        .row(0);
    debug_assert_eq!(
        content_x(q).monic(),
        content.monic(),
        "cofactor is the x-content"
    );
    Ok(SqfDecompBi { factors, content })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let ymx = BiPoly::from_terms(&[(1, 0, 1), (-1, 1, 0)]);
        let yp1 = BiPoly::from_terms(&[(1, 0, 1), (1, 0, 0)]);
        let q = &ymx.pow(2) * &yp1;
        let s = squarefree_bi(&q).unwrap();
        assert_eq!(s.factors, vec![(yp1.clone(), 1), (ymx.clone(), 2)]);
        assert_eq!(s.recombine(), q);

        let y2x = BiPoly::from_terms(&[(1, 0, 2), (-1, 1, 0)]);
        let s = squarefree_bi(&y2x.pow(3)).unwrap();
        assert_eq!(s.factors, vec![(y2x.clone(), 3)]);

        let s = squarefree_bi(&y2x.mul_x_poly(&UniPoly::from_ints(&[0, 0, -3]))).unwrap();
        assert_eq!(s.factors, vec![(y2x, 1)]);
        assert_eq!(s.content, UniPoly::from_ints(&[0, 0, -3]));

        assert!(squarefree_bi(&BiPoly::x()).is_err());
        assert!(squarefree_bi(&BiPoly::zero()).is_err());
    }
}
