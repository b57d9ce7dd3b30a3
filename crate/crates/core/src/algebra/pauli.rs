//! Signed n-qubit Pauli operators in binary-symplectic form.
//!
//! A `PauliOp` is `±σ_0 ⊗ … ⊗ σ_{n-1}` with each `σ_i ∈ {I, X, Y, Z}` the
//! Hermitian Pauli matrix, encoded by `(x_i, z_i) = (0,0), (1,0), (1,1), (0,1)`.
//! Only the signs ±1 are tracked. A product of two anticommuting operators
//! carries a phase ±i; [`PauliOp::multiply`] drops the `i`, mapping `+i → +1`
//! and `-i → -1`. Products of commuting operators are exact.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bits::BitVec;
use crate::error::{contract, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
    negative: bool,
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        Self { x: BitVec::zeros(n), z: BitVec::zeros(n), negative: false }
    }

    pub fn from_bits(x: BitVec, z: BitVec, negative: bool) -> Result<Self> {
        if x.len() != z.len() {
            return contract(format!("x has {} bits, z has {}", x.len(), z.len()));
        }
        Ok(Self { x, z, negative })
    }

    /// Operator from the concatenated symplectic vector `x ‖ z`.
    pub fn from_symplectic(v: &BitVec) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return contract("symplectic vector must have even length");
        }
        let n = v.len() / 2;
        Ok(Self { x: v.slice(0, n), z: v.slice(n, n), negative: false })
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        op.set(qubit, p);
        op
    }

    /// `p` on every listed qubit.
    pub fn on_sites(n: usize, sites: impl IntoIterator<Item = usize>, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        for q in sites {
            op.set(q, p);
        }
        op
    }

    pub fn x_on(n: usize, sites: impl IntoIterator<Item = usize>) -> Self {
        Self::on_sites(n, sites, Pauli::X)
    }

    pub fn z_on(n: usize, sites: impl IntoIterator<Item = usize>) -> Self {
        Self::on_sites(n, sites, Pauli::Z)
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn with_sign(mut self, negative: bool) -> Self {
        self.negative = negative;
        self
    }

    pub fn negated(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub(crate) fn set_bits(&mut self, q: usize, x: bool, z: bool) {
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub(crate) fn flip_sign(&mut self) {
        self.negative = !self.negative;
    }

    /// Support mask `x ∨ z`.
    pub fn support_bits(&self) -> BitVec {
        self.x.or(&self.z)
    }

    pub fn support(&self) -> Vec<usize> {
        self.support_bits().iter_ones().collect()
    }

    pub fn weight(&self) -> usize {
        self.x.words().iter().zip(self.z.words()).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    /// True when the operator is `±I`.
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_x_type(&self) -> bool {
        self.z.is_zero()
    }

    pub fn is_z_type(&self) -> bool {
        self.x.is_zero()
    }

    /// The vector `x ‖ z` of length `2n`.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Identical Pauli letters and sign on `sites`, identity elsewhere.
    pub fn restricted_to(&self, sites: &[usize]) -> PauliOp {
        let mut out = PauliOp::identity(self.num_qubits());
        for &q in sites {
            out.set(q, self.get(q));
        }
        out.negative = self.negative;
        out
    }

    fn check_size(&self, other: &PauliOp) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return contract(format!("Pauli size mismatch: {} vs {} qubits", self.num_qubits(), other.num_qubits()));
        }
        Ok(())
    }

    /// Symplectic form `⟨x₁,z₂⟩ + ⟨z₁,x₂⟩` (true = anticommute). Sizes must agree.
    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliOp) -> bool {
        let mut acc = 0u32;
        for k in 0..self.x.words().len() {
            let w = (self.x.words()[k] & other.z.words()[k]) ^ (self.z.words()[k] & other.x.words()[k]);
            acc ^= w.count_ones() & 1;
        }
        acc == 1
    }

    pub fn commutes_with(&self, other: &PauliOp) -> Result<bool> {
        self.check_size(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    /// Product `self · other` together with its exact phase exponent `e`,
    /// meaning `self · other = i^e · result` where `result` carries sign `+`.
    pub fn mul_with_phase(&self, other: &PauliOp) -> Result<(PauliOp, u8)> {
        self.check_size(other)?;
        Ok(self.mul_with_phase_unchecked(other))
    }

    pub(crate) fn mul_with_phase_unchecked(&self, other: &PauliOp) -> (PauliOp, u8) {
        let mut plus = 0u32;
        let mut minus = 0u32;
        let words = self.x.words().len();
        let mut x = Vec::with_capacity(words);
        let mut z = Vec::with_capacity(words);
        for k in 0..words {
            let (x1, z1) = (self.x.words()[k], self.z.words()[k]);
            let (x2, z2) = (other.x.words()[k], other.z.words()[k]);
            // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
            let p = (x1 & !z1 & x2 & z2) | (x1 & z1 & !x2 & z2) | (!x1 & z1 & x2 & !z2);
            let m = (x1 & !z1 & !x2 & z2) | (x1 & z1 & x2 & !z2) | (!x1 & z1 & x2 & z2);
            plus += p.count_ones();
            minus += m.count_ones();
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        let signs = 2 * (u32::from(self.negative) + u32::from(other.negative));
        let e = ((signs + plus + 3 * minus) % 4) as u8;
        let n = self.num_qubits();
        let op = PauliOp { x: BitVec::from_words(x, n), z: BitVec::from_words(z, n), negative: false };
        (op, e)
    }

    /// `self · other` with the sign restricted to ±1 (see module docs).
    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp> {
        let (mut out, e) = self.mul_with_phase(other)?;
        out.negative = e >= 2;
        Ok(out)
    }

    pub(crate) fn multiply_unchecked(&self, other: &PauliOp) -> PauliOp {
        let (mut out, e) = self.mul_with_phase_unchecked(other);
        out.negative = e >= 2;
        out
    }
}

/// `symplectic_commutes(P, Q)`: true iff `⟨P.x,Q.z⟩ + ⟨P.z,Q.x⟩ = 0 mod 2`.
pub fn symplectic_commutes(p: &PauliOp, q: &PauliOp) -> Result<bool> {
    p.commutes_with(q)
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    /// Letters from `{I,X,Y,Z}` with an optional leading `+`, `-` or `−`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negative, body) = if let Some(rest) = s.strip_prefix('+') {
            (false, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (true, rest)
        } else if let Some(rest) = s.strip_prefix('\u{2212}') {
            (true, rest)
        } else {
            (false, s)
        };
        let letters: Vec<char> = body.chars().collect();
        let mut op = PauliOp::identity(letters.len());
        for (q, c) in letters.into_iter().enumerate() {
            let p = match c.to_ascii_uppercase() {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(Error::Parse(format!("invalid Pauli letter {other:?} in {s:?}"))),
            };
            op.set(q, p);
        }
        op.negative = negative;
        Ok(op)
    }
}

impl Serialize for PauliOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliOp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOp {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_anticommutation() {
        assert!(!symplectic_commutes(&p("XI"), &p("ZI")).unwrap());
        assert!(symplectic_commutes(&p("XX"), &p("ZZ")).unwrap());
    }

    #[test]
    fn size_mismatch_is_contract_error() {
        assert!(matches!(symplectic_commutes(&p("X"), &p("XX")), Err(Error::Contract(_))));
        assert!(p("X").multiply(&p("XX")).is_err());
    }

    #[test]
    fn identity_and_squares() {
        let a = p("-XYZI");
        assert_eq!(a.multiply(&PauliOp::identity(4)).unwrap(), a);
        assert_eq!(p("ZI").multiply(&p("ZI")).unwrap(), PauliOp::identity(2));
        let sq = a.multiply(&a).unwrap();
        assert!(sq.is_identity());
        assert!(!sq.is_negative());
    }

    #[test]
    fn exact_phases_of_single_qubit_products() {
        assert_eq!(p("X").mul_with_phase(&p("Y")).unwrap(), (p("Z"), 1));
        assert_eq!(p("Y").mul_with_phase(&p("X")).unwrap(), (p("Z"), 3));
        assert_eq!(p("Z").mul_with_phase(&p("X")).unwrap(), (p("Y"), 1));
        assert_eq!(p("X").mul_with_phase(&p("Z")).unwrap(), (p("Y"), 3));
        // XX · ZZ = (XZ)(XZ) = (-iY)(-iY) = -YY
        assert_eq!(p("XX").multiply(&p("ZZ")).unwrap(), p("-YY"));
    }

    #[test]
    fn text_form_round_trip() {
        for s in ["-XXIZ", "+YZ", "IIII", "\u{2212}ZX"] {
            let op = p(s);
            let back: PauliOp = op.to_string().parse().unwrap();
            assert_eq!(op, back);
        }
        assert_eq!(p("\u{2212}XXIZ"), p("-XXIZ"));
        assert!("XQ".parse::<PauliOp>().is_err());
    }

    #[test]
    fn wide_operators_cross_word_boundaries() {
        let n = 130;
        let a = PauliOp::x_on(n, [0, 64, 129]);
        let b = PauliOp::z_on(n, [64, 100]);
        assert!(!a.commutes_with(&b).unwrap());
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab.get(64), Pauli::Y);
        assert_eq!(ab.weight(), 4);
    }

    fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOp> {
        (proptest::collection::vec(0u8..4, n), any::<bool>()).prop_map(move |(letters, neg)| {
            let mut op = PauliOp::identity(n);
            for (q, l) in letters.into_iter().enumerate() {
                op.set(q, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l as usize]);
            }
            op.with_sign(neg)
        })
    }

    proptest! {
        #[test]
        fn symplectic_form_is_bilinear(a in arb_pauli(12), b in arb_pauli(12), c in arb_pauli(12)) {
            let bc = b.multiply(&c).unwrap();
            let lhs = a.commutes_with(&bc).unwrap();
            let rhs = a.commutes_with(&b).unwrap() == a.commutes_with(&c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn weight_is_subadditive(a in arb_pauli(20), b in arb_pauli(20)) {
            prop_assert!(a.multiply(&b).unwrap().weight() <= a.weight() + b.weight());
        }

        #[test]
        fn exact_multiplication_is_associative(a in arb_pauli(7), b in arb_pauli(7), c in arb_pauli(7)) {
            let (ab, e1) = a.mul_with_phase(&b).unwrap();
            let (abc, e2) = ab.mul_with_phase(&c).unwrap();
            let (bc, e3) = b.mul_with_phase(&c).unwrap();
            let (abc2, e4) = a.mul_with_phase(&bc).unwrap();
            prop_assert_eq!(abc, abc2);
            prop_assert_eq!((e1 + e2) % 4, (e3 + e4) % 4);
        }

        #[test]
        fn commuting_products_have_real_phase(a in arb_pauli(9), b in arb_pauli(9)) {
            let (_, e) = a.mul_with_phase(&b).unwrap();
            prop_assert_eq!(e % 2 == 0, a.commutes_with(&b).unwrap());
        }
    }
}
