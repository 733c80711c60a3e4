use super::field::Rational;
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// `q = content * prod Q_i^i` with monic, squarefree, pairwise coprime `Q_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqfDecompUni {
    pub factors: Vec<(UniPoly, usize)>,
    pub content: Rational,
}

impl SqfDecompUni {
    /// `Q* = prod Q_i`.
    pub fn squarefree_part(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::one(), |acc, (f, _)| &acc * f)
    }

    pub fn recombine(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.content.clone()), |acc, (f, i)| {
                &acc * &f.pow(*i as u32)
            })
    }
}

/// Yun's algorithm. Factors of degree zero are omitted.
pub fn squarefree_uni(q: &UniPoly) -> Result<SqfDecompUni> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = q.lc();
    let f = q.monic();
    let mut factors = Vec::new();
    if f.deg() >= 1 {
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let c = df.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.deg() >= 1 {
            let a = b.gcd(&d);
            b = b.div_exact(&a).expect("gcd divides");
            let c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            if a.deg() >= 1 {
                factors.push((a, i));
            }
            i += 1;
        }
    }
    Ok(SqfDecompUni { factors, content })
}

pub fn is_squarefree(q: &UniPoly) -> bool {
    q.is_constant() || q.gcd(&q.derivative()).deg() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corealg::field::rat;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn examples() {
        let s = squarefree_uni(&p(&[0, 0, 1])).unwrap();
        assert_eq!(s.factors, vec![(p(&[0, 1]), 2)]);

        let q = &p(&[-1, 1]) * &p(&[-2, 1]).pow(3);
        let s = squarefree_uni(&q).unwrap();
        assert_eq!(s.factors, vec![(p(&[-1, 1]), 1), (p(&[-2, 1]), 3)]);
        assert_eq!(s.recombine(), q);

        let q = p(&[6, 0, 3]);
        let s = squarefree_uni(&q).unwrap();
        assert_eq!(s.factors, vec![(p(&[2, 0, 1]), 1)]);
        assert_eq!(s.content, rat(3));
        assert!(squarefree_uni(&UniPoly::zero()).is_err());
    }
}
