pub mod algebra;
pub mod expr;
pub mod findim;
pub mod field;
pub mod freealg;
pub mod grobner;
pub mod io;
pub mod linalg;
pub mod normality;
pub mod series;
pub mod upoly;

pub use algebra::{AlgebraError, PresentedAlgebra};
pub use expr::ParseError;
pub use field::{Field, FieldError, Scalar};
pub use freealg::{Alphabet, FreePoly, GeneratorMap, Word};
pub use grobner::{GroebnerBasis, GrobnerError, HilbertData, DEFAULT_DEGREE_BOUND};
pub use linalg::Matrix;
pub use series::RatFunc;
pub use upoly::UPoly;
pub use findim::{classify_frob4, FindimError, Frob4Class, Frob4Label, SCAlgebra};
pub use normality::{normal_check, srns_check, NormalOutcome, Verdict};
