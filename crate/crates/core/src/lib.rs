//! Khovanov homology of links over ℤ, computed from a tangle decomposition.
//!
//! A link diagram is cut along a vertical axis into an inside (left) tangle and
//! an outside (right) tangle. The inside half yields a type A structure and the
//! outside half a type D structure over the cleaved-link algebra `BΓₙ`; both can
//! be homotopy-reduced before they are paired with the box tensor product. The
//! resulting complex is chain homotopy equivalent to the Khovanov complex of the
//! glued link, whose homology is read off with Smith normal form.

pub mod algebra;
pub mod check;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod pairing;
pub mod simplify;
pub mod suite;
pub mod type_a;
pub mod type_d;

pub use error::{Error, Result};
pub use num_bigint::BigInt;

/// Coefficient ring used by every structure map.
pub type Coeff = BigInt;

/// Sparse integer combination of indexed generators.
pub type Chain<K = usize> = linalg::Chain<K, Coeff>;

/// Bigrading `(h, q2)` with the quantum grading doubled so it stays integral.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub struct Grading {
    pub h: i32,
    pub q2: i32,
}

impl Grading {
    pub const fn new(h: i32, q2: i32) -> Self {
        Grading { h, q2 }
    }
}

impl std::ops::Add for Grading {
    type Output = Grading;
    fn add(self, o: Grading) -> Grading {
        Grading::new(self.h + o.h, self.q2 + o.q2)
    }
}

impl std::ops::Sub for Grading {
    type Output = Grading;
    fn sub(self, o: Grading) -> Grading {
        Grading::new(self.h - o.h, self.q2 - o.q2)
    }
}

impl std::fmt::Display for Grading {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.q2 % 2 == 0 {
            write!(f, "({},{})", self.h, self.q2 / 2)
        } else {
            write!(f, "({},{}/2)", self.h, self.q2)
        }
    }
}

/// `(-1)^k` as a coefficient.
pub(crate) fn sign(k: i64) -> Coeff {
    if k.rem_euclid(2) == 0 {
        Coeff::from(1)
    } else {
        Coeff::from(-1)
    }
}
