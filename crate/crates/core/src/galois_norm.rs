//! Norms of Möbius values `(aγ + b)/(eγ + t)` where `γ` is a root of an
//! irreducible binomial `z^d + m` over a prime field.

use crate::error::{invalid, Error, Result};
use crate::finite_field::{FieldElem, FiniteField};
use crate::ring::{Field, Ring};
use crate::xseq::xseq_generate;

/// `F_p(γ) = F_p[z]/(z^d + m)`.
#[derive(Clone, Debug)]
pub struct BinomialExtension {
    base: FiniteField,
    m: FieldElem,
    d: u64,
    ext: FiniteField,
}

impl BinomialExtension {
    /// Fails unless `base` is a prime field and `z^d + m` is irreducible over it.
    pub fn new(base: &FiniteField, m: &FieldElem, d: u64) -> Result<Self> {
        if base.degree() != 1 {
            return invalid("binomial extensions are built over prime fields");
        }
        if d < 2 {
            return invalid(format!("degree d = {d} < 2"));
        }
        let mut modulus = vec![0u64; d as usize + 1];
        modulus[0] = m.residue();
        modulus[d as usize] = 1;
        let ext = FiniteField::extension(base.p(), &modulus)?;
        Ok(Self { base: base.clone(), m: m.clone(), d, ext })
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn ext(&self) -> &FiniteField {
        &self.ext
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    /// The class `γ` of `z`; satisfies `γ^d = -m`.
    pub fn gamma(&self) -> FieldElem {
        self.ext.generator()
    }

    /// `aγ + b` as an element of the extension.
    pub fn linear(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let ext = &self.ext;
        ext.add(&ext.mul(&ext.embed(a), &self.gamma()), &ext.embed(b))
    }

    fn check_args(&self, a: &FieldElem, e: &FieldElem) -> Result<()> {
        if self.base.is_zero(a) || self.base.is_zero(e) {
            return invalid("a·e = 0");
        }
        Ok(())
    }

    /// Closed form `(b^d + (-1)^d m a^d) / (t^d + (-1)^d m e^d)`.
    pub fn norm_mobius(&self, a: &FieldElem, b: &FieldElem, e: &FieldElem, t: &FieldElem) -> Result<FieldElem> {
        self.check_args(a, e)?;
        let f = &self.base;
        let sm = f.mul(&f.sign_pow(self.d), &self.m);
        let num = f.add(&f.pow(b, self.d), &f.mul(&sm, &f.pow(a, self.d)));
        let den = f.add(&f.pow(t, self.d), &f.mul(&sm, &f.pow(e, self.d)));
        if f.is_zero(&den) {
            return Err(Error::DivisionByZero);
        }
        f.div(&num, &den)
    }

    /// The same norm as a product of Frobenius conjugates in the extension.
    pub fn norm_mobius_frobenius(&self, a: &FieldElem, b: &FieldElem, e: &FieldElem, t: &FieldElem) -> Result<FieldElem> {
        self.check_args(a, e)?;
        let num = self.ext.ext_norm_frobenius(&self.linear(a, b))?;
        let den = self.ext.ext_norm_frobenius(&self.linear(e, t))?;
        self.base.div(&num, &den)
    }
}

/// First level of the norm chain: with `β` a root of `z^d + c`,
/// returns `(N((cβ - 1)/β), (-1)^d x_2 / x_1)`, which must coincide.
pub fn first_level_norm_identity(field: &FiniteField, d: u64, c: &FieldElem) -> Result<(FieldElem, FieldElem)> {
    let ext = BinomialExtension::new(field, c, d)?;
    let norm = ext.norm_mobius_frobenius(c, &field.neg(&field.one()), &field.one(), &field.zero())?;
    let xs = xseq_generate(field, d, c, 2)?;
    let expected = field.mul(&field.sign_pow(d), &field.div(&xs[1], &xs[0])?);
    Ok((norm, expected))
}
