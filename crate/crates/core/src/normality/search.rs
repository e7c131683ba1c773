use rayon::prelude::*;

use super::{compatible_lower_terms, normal_check, NormalOutcome};
use crate::algebra::{AlgebraError, PresentedAlgebra};
use crate::field::Scalar;
use crate::freealg::{FreePoly, GeneratorMap};

#[derive(Debug, Clone)]
pub struct SearchHit {
    /// Homogeneous normal element, first nonzero coordinate 1.
    pub element: FreePoly,
    pub nu: GeneratorMap,
    /// Basis of lower-degree terms that can be added without losing
    /// normality; empty unless inhomogeneous elements were requested.
    pub lower_terms: Vec<FreePoly>,
}

/// Projective points of `F_p^n`: first nonzero coordinate equal to 1.
fn projective_points(elems: &[Scalar], n: usize) -> Vec<Vec<Scalar>> {
    let p = elems.len();
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = p.pow(free as u32);
        for mut k in 0..count {
            let mut v = vec![elems[0].clone(); n];
            v[lead] = elems[1].clone();
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = elems[k % p].clone();
                k /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Every homogeneous normal element of weight `d` in `a`, up to scalar,
/// over a prime field. Candidates are checked in parallel; the output keeps
/// enumeration order.
pub fn exhaustive_normal_search(
    a: &PresentedAlgebra,
    d: u32,
    include_inhomogeneous: bool,
) -> Result<Vec<SearchHit>, AlgebraError> {
    let field = a.field();
    let elems = field.elements().ok_or_else(|| AlgebraError::Invalid("search needs a finite field".into()))?;
    if !a.is_graded() {
        return Err(AlgebraError::Precondition("search needs a graded ambient algebra".into()));
    }
    let basis = a.normal_words(d)?;
    let points = projective_points(&elems, basis.len());
    let hits: Vec<Result<Option<SearchHit>, AlgebraError>> = points
        .par_iter()
        .map(|v| {
            let f = FreePoly::from_coords(a.alphabet(), field, &basis, v);
            match normal_check(a, &f)? {
                NormalOutcome::Normal(c) => {
                    let mut lower = Vec::new();
                    if include_inhomogeneous {
                        for j in 0..d {
                            lower.extend(compatible_lower_terms(a, &c.nu, j)?);
                        }
                    }
                    Ok(Some(SearchHit { element: c.element, nu: c.nu, lower_terms: lower }))
                }
                _ => Ok(None),
            }
        })
        .collect();
    hits.into_iter().filter_map(Result::transpose).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn quantum_plane_over_f7() {
        let f7 = Field::prime(7).unwrap();
        let a = PresentedAlgebra::xy(f7, &["xy - 3yx"]).unwrap();
        let hits = exhaustive_normal_search(&a, 2, false).unwrap();
        let mut names: Vec<String> = hits.iter().map(|h| h.element.to_string()).collect();
        names.sort();
        assert_eq!(names, vec!["x^2", "y*x", "y^2"]);
    }

    #[test]
    fn jordan_plane_degree_one() {
        let f7 = Field::prime(7).unwrap();
        let a = PresentedAlgebra::xy(f7, &["xy - yx + y^2"]).unwrap();
        let hits = exhaustive_normal_search(&a, 1, false).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].element.to_string(), "y");
    }

    #[test]
    fn minus_one_plane_families() {
        let f7 = Field::prime(7).unwrap();
        let a = PresentedAlgebra::xy(f7, &["xy + yx"]).unwrap();
        let hits = exhaustive_normal_search(&a, 2, true).unwrap();
        // the pencil αx^2 + βy^2 (8 points) and yx
        assert_eq!(hits.len(), 9);
        let central = hits.iter().filter(|h| h.lower_terms.len() == 1).count();
        assert_eq!(central, 8);
    }
}
