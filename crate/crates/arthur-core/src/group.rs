//! Classical group forms: the four families, their pure inner forms, Witt
//! indices, and the numerology connecting a group to the dimension of its
//! dual-side parameter space.

use crate::sign::Sign;
use crate::Error;
use alloc::format;

/// The four families of classical groups handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Symplectic groups Sp(2n) (split; no other pure inner forms arise here).
    Sp,
    /// Odd special orthogonal groups SO(2n+1).
    SOOdd,
    /// Even special orthogonal groups SO(2n).
    SOEven,
    /// Unitary groups U(N) attached to a quadratic field extension.
    U,
}

/// Rationality flag of a form within its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormFlag {
    /// The split form (for unitary groups: the quasi-split form).
    Split,
    /// The non-split quasi-split form; only meaningful for SO(2n).
    QuasiSplit,
    /// The relevant non-quasi-split pure inner form.
    Inner,
}

/// A classical group form.  `space_dim` is the dimension of the underlying
/// vector (or hermitian) space: 2n for Sp(2n) and SO(2n), 2n+1 for SO(2n+1),
/// and N for U(N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupForm {
    pub family: Family,
    pub space_dim: u32,
    pub form: FormFlag,
}

impl GroupForm {
    /// Validating constructor.  Checks the parity of `space_dim` against the
    /// family, legality of the form flag, and that the resulting Witt index
    /// is non-negative.  For odd unitary groups the inner form is isomorphic
    /// to the quasi-split form and is normalized to `Split`.
    pub fn new(family: Family, space_dim: u32, form: FormFlag) -> Result<GroupForm, Error> {
        let mut form = form;
        match family {
            Family::Sp => {
                if space_dim % 2 != 0 {
                    return Err(Error::Validation(format!(
                        "Sp needs an even space dimension, got {}",
                        space_dim
                    )));
                }
                if form != FormFlag::Split {
                    return Err(Error::Validation(
                        "Sp has no non-split pure inner forms here; use the split form".into(),
                    ));
                }
            }
            Family::SOOdd => {
                if space_dim % 2 != 1 {
                    return Err(Error::Validation(format!(
                        "SO (odd) needs an odd space dimension, got {}",
                        space_dim
                    )));
                }
                if form == FormFlag::QuasiSplit {
                    return Err(Error::Validation(
                        "the qs flag is only meaningful for even SO".into(),
                    ));
                }
            }
            Family::SOEven => {
                if space_dim % 2 != 0 {
                    return Err(Error::Validation(format!(
                        "SO (even) needs an even space dimension, got {}",
                        space_dim
                    )));
                }
            }
            Family::U => {
                if form == FormFlag::QuasiSplit {
                    return Err(Error::Validation(
                        "the qs flag is only meaningful for even SO".into(),
                    ));
                }
                // U(2n+1) has a unique relevant form.
                if space_dim % 2 == 1 && form == FormFlag::Inner {
                    form = FormFlag::Split;
                }
            }
        }
        let g = GroupForm {
            family,
            space_dim,
            form,
        };
        if g.witt_rank() < 0 {
            return Err(Error::Validation(format!(
                "inner form with negative resulting rank: {}",
                g
            )));
        }
        Ok(g)
    }

    /// Non-validating constructor for internal bookkeeping (degenerate
    /// shapes such as Sp of a 0-dimensional space may appear as formal
    /// factors of endoscopic data and in reduction chains).
    pub(crate) fn raw(family: Family, space_dim: u32, form: FormFlag) -> GroupForm {
        GroupForm {
            family,
            space_dim,
            form,
        }
    }

    /// Witt index (dimension of a maximal isotropic subspace, equivalently
    /// the split rank contribution of the hyperbolic part).  Returned as a
    /// signed integer: formal degenerate forms produced internally can have
    /// a negative value, which only ever enters parity computations; the
    /// public constructor rejects such forms.
    pub fn witt_rank(&self) -> i64 {
        let d = self.space_dim as i64;
        match (self.family, self.form) {
            (Family::Sp, _) => d / 2,
            (Family::SOOdd, FormFlag::Split) => d / 2,
            (Family::SOOdd, _) => d / 2 - 1,
            (Family::SOEven, FormFlag::Split) => d / 2,
            (Family::SOEven, FormFlag::QuasiSplit) => d / 2 - 1,
            (Family::SOEven, FormFlag::Inner) => d / 2 - 2,
            (Family::U, FormFlag::Inner) => d / 2 - 1,
            (Family::U, _) => d / 2,
        }
    }

    /// The quasi-split form in the same inner class.  For an inner form of
    /// SO(2n) the discriminant is the same as for the split form, so the
    /// quasi-split member of its class is the split one.
    pub fn quasi_split(&self) -> GroupForm {
        let form = match self.form {
            FormFlag::Inner => FormFlag::Split,
            f => f,
        };
        GroupForm {
            family: self.family,
            space_dim: self.space_dim,
            form,
        }
    }

    pub fn is_quasi_split(&self) -> bool {
        self.form != FormFlag::Inner
    }

    /// Kottwitz sign e(G) = (-1)^(rank difference to the quasi-split form).
    pub fn kottwitz(&self) -> Sign {
        Sign::from_parity(self.witt_rank() - self.quasi_split().witt_rank())
    }

    /// Dimension of the dual-side parameter space: self-dual (or conjugate
    /// self-dual) parameters for this group live on GL of this size.
    pub fn dual_dim(&self) -> u32 {
        match self.family {
            Family::Sp => self.space_dim + 1,
            Family::SOOdd => self.space_dim - 1,
            Family::SOEven => self.space_dim,
            Family::U => self.space_dim,
        }
    }

    /// The duality sign a summand must have to be of "good parity" for this
    /// group: +1 when parameters are orthogonal (or conjugate-orthogonal),
    /// -1 when symplectic (or conjugate-symplectic).
    pub fn target_sign(&self) -> Sign {
        match self.family {
            Family::Sp | Family::SOEven => Sign::Plus,
            Family::SOOdd => Sign::Minus,
            Family::U => {
                if self.space_dim % 2 == 1 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
        }
    }

    /// Whether parameters live on GL over the quadratic extension (unitary
    /// family) rather than over the base field.
    pub fn is_unitary(&self) -> bool {
        self.family == Family::U
    }

    /// Value at -1 of the quadratic character attached to the underlying
    /// space (trivial for quasi-split forms, non-trivial for the inner
    /// forms considered here; symplectic spaces carry the trivial one).
    pub fn chi_v_at_minus_one(&self) -> Sign {
        match self.form {
            FormFlag::Inner => Sign::Minus,
            _ => Sign::Plus,
        }
    }

    /// Remove `k` hyperbolic planes: same family and rationality flag, space
    /// dimension reduced by 2k.  Used by reduction chains.
    pub(crate) fn shrink(&self, k: u32) -> GroupForm {
        GroupForm {
            family: self.family,
            space_dim: self.space_dim - 2 * k,
            form: self.form,
        }
    }

    /// The group form of matching family whose parameters have dimension
    /// `d`, carrying the given flag.  Degenerate sizes are allowed (the
    /// result is only used for rank parities and as a formal factor).
    pub(crate) fn from_dual_dim(family: Family, d: u32, form: FormFlag) -> GroupForm {
        let space_dim = match family {
            Family::Sp => d.saturating_sub(1),
            Family::SOOdd => d + 1,
            Family::SOEven | Family::U => d,
        };
        GroupForm {
            family,
            space_dim,
            form,
        }
    }
}

impl core::fmt::Display for GroupForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let flag = match self.form {
            FormFlag::Split => "split",
            FormFlag::QuasiSplit => "qs",
            FormFlag::Inner => "inner",
        };
        match self.family {
            Family::Sp => write!(f, "Sp({})", self.space_dim),
            Family::SOOdd | Family::SOEven => write!(f, "SO({},{})", self.space_dim, flag),
            Family::U => write!(f, "U({},{})", self.space_dim, flag),
        }
    }
}

// --------------------------------------------------------------------------
// tests
// --------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn g(family: Family, d: u32, form: FormFlag) -> GroupForm {
        GroupForm::new(family, d, form).unwrap()
    }

    #[test]
    fn witt_table() {
        assert_eq!(g(Family::Sp, 4, FormFlag::Split).witt_rank(), 2);
        assert_eq!(g(Family::SOOdd, 5, FormFlag::Split).witt_rank(), 2);
        assert_eq!(g(Family::SOOdd, 5, FormFlag::Inner).witt_rank(), 1);
        assert_eq!(g(Family::SOEven, 8, FormFlag::Split).witt_rank(), 4);
        assert_eq!(g(Family::SOEven, 8, FormFlag::QuasiSplit).witt_rank(), 3);
        assert_eq!(g(Family::SOEven, 8, FormFlag::Inner).witt_rank(), 2);
        assert_eq!(g(Family::U, 5, FormFlag::Split).witt_rank(), 2);
        assert_eq!(g(Family::U, 6, FormFlag::Split).witt_rank(), 3);
        assert_eq!(g(Family::U, 6, FormFlag::Inner).witt_rank(), 2);
    }

    #[test]
    fn kottwitz_signs() {
        assert_eq!(g(Family::Sp, 6, FormFlag::Split).kottwitz(), Sign::Plus);
        assert_eq!(g(Family::SOOdd, 3, FormFlag::Inner).kottwitz(), Sign::Minus);
        // rank drops by two for inner even SO, so the sign is +1
        assert_eq!(g(Family::SOEven, 6, FormFlag::Inner).kottwitz(), Sign::Plus);
        assert_eq!(g(Family::U, 4, FormFlag::Inner).kottwitz(), Sign::Minus);
        assert_eq!(
            g(Family::SOEven, 6, FormFlag::QuasiSplit).kottwitz(),
            Sign::Plus
        );
    }

    #[test]
    fn form_legality() {
        assert!(GroupForm::new(Family::Sp, 4, FormFlag::Inner).is_err());
        assert!(GroupForm::new(Family::Sp, 5, FormFlag::Split).is_err());
        assert!(GroupForm::new(Family::SOOdd, 4, FormFlag::Split).is_err());
        assert!(GroupForm::new(Family::SOOdd, 3, FormFlag::QuasiSplit).is_err());
        assert!(GroupForm::new(Family::U, 3, FormFlag::QuasiSplit).is_err());
        // negative Witt index
        assert!(GroupForm::new(Family::SOOdd, 1, FormFlag::Inner).is_err());
        assert!(GroupForm::new(Family::SOEven, 2, FormFlag::Inner).is_err());
        // odd unitary inner forms collapse to the quasi-split one
        assert_eq!(
            GroupForm::new(Family::U, 5, FormFlag::Inner).unwrap().form,
            FormFlag::Split
        );
    }

    #[test]
    fn dual_dims_and_target_signs() {
        assert_eq!(g(Family::Sp, 4, FormFlag::Split).dual_dim(), 5);
        assert_eq!(g(Family::SOOdd, 7, FormFlag::Split).dual_dim(), 6);
        assert_eq!(g(Family::SOEven, 6, FormFlag::QuasiSplit).dual_dim(), 6);
        assert_eq!(g(Family::U, 5, FormFlag::Split).dual_dim(), 5);
        assert_eq!(g(Family::Sp, 4, FormFlag::Split).target_sign(), Sign::Plus);
        assert_eq!(
            g(Family::SOOdd, 7, FormFlag::Inner).target_sign(),
            Sign::Minus
        );
        assert_eq!(
            g(Family::SOEven, 6, FormFlag::Inner).target_sign(),
            Sign::Plus
        );
        assert_eq!(g(Family::U, 5, FormFlag::Split).target_sign(), Sign::Plus);
        assert_eq!(g(Family::U, 4, FormFlag::Split).target_sign(), Sign::Minus);
    }

    #[test]
    fn quasi_split_of_inner_even_so_is_split() {
        let inner = g(Family::SOEven, 8, FormFlag::Inner);
        assert_eq!(inner.quasi_split().form, FormFlag::Split);
        let qs = g(Family::SOEven, 8, FormFlag::QuasiSplit);
        assert_eq!(qs.quasi_split(), qs);
    }
}
