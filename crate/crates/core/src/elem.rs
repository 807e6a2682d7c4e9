use num_rational::BigRational;

/// Canonical payload of a ring element.
///
/// Payloads are only meaningful relative to the ring that produced them; the
/// derived ordering is the lexicographic order used for element enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Residue in `[0, n)` of `Z/n`.
    Int(u64),
    /// Coefficients over `F_p` (constant term first), padded to the ring's basis length.
    Coeffs(Vec<u32>),
    /// Element of a product ring.
    Tuple(Vec<Elem>),
    /// `(a, e)` in a trivial extension; `e` lists the module components.
    Pair(Box<Elem>, Vec<Elem>),
    /// Reduced rational number with positive denominator.
    Rat(BigRational),
    /// Reduced rational function over `F_p`, denominator monic: `(numerator, denominator)`.
    RatFn(Vec<u32>, Vec<u32>),
}

impl Elem {
    pub fn pair(a: Elem, e: Vec<Elem>) -> Elem {
        Elem::Pair(Box::new(a), e)
    }
}
