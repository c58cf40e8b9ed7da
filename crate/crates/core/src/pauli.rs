//! Operators on qubit registers expanded in the Pauli-word basis.
//!
//! An [`Operator`] is a finite complex combination of [`PauliWord`]s stored in a
//! sorted map, so iteration order (and every printed or serialized form) is
//! deterministic. Structure constants of the word product are exact units
//! `{±1, ±i}`; floating-point error only enters through coefficient arithmetic.
//!
//! The single-qubit `Y` letter follows the convention
//! `Y = [[0, i], [-i, 0]]`, which gives `XY = -iZ`, `YZ = -iX`, `ZX = -iY`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients with magnitude below this are dropped after every operation.
pub const PRUNE_TOL: f64 = 1e-14;

/// Default cap on the total number of qubits of a register.
pub const DEFAULT_MAX_QUBITS: usize = 8;

/// Absolute limit imposed by the word encoding (two bits per site in a `u64`).
pub const HARD_MAX_QUBITS: usize = 16;

const I_UNIT: Complex64 = Complex64::new(0.0, 1.0);

static FLIP_XY_SIGN: AtomicBool = AtomicBool::new(false);

/// Flips the sign of the `XY` structure constant. Only used by the mutation
/// smoke test, which checks that the verification suite notices.
#[doc(hidden)]
pub fn inject_xy_sign_flip(enabled: bool) {
    FLIP_XY_SIGN.store(enabled, Ordering::SeqCst);
}

/// Split of a register into central (C) and peripheral (P) positions.
///
/// Positions `0..n_c` belong to C and `n_c..n_c + n_p` to P. A register built
/// with [`RegisterSpec::uniform`] has no P region and is used for operators that
/// live on a single symmetric block of qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegisterSpec {
    n_c: usize,
    n_p: usize,
}

impl RegisterSpec {
    pub fn new(n_c: usize, n_p: usize) -> Result<Self> {
        Self::with_cap(n_c, n_p, DEFAULT_MAX_QUBITS)
    }

    pub fn with_cap(n_c: usize, n_p: usize, cap: usize) -> Result<Self> {
        if n_c == 0 || n_p == 0 {
            return Err(Error::InvalidRegister(format!(
                "both regions need at least one spin (n_c = {n_c}, n_p = {n_p})"
            )));
        }
        check_cap(n_c + n_p, cap)?;
        Ok(Self { n_c, n_p })
    }

    /// A register of `n` qubits with no C/P split.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_with_cap(n, DEFAULT_MAX_QUBITS)
    }

    pub fn uniform_with_cap(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRegister("register needs at least one qubit".into()));
        }
        check_cap(n, cap)?;
        Ok(Self { n_c: n, n_p: 0 })
    }

    pub fn n_c(&self) -> usize {
        self.n_c
    }

    pub fn n_p(&self) -> usize {
        self.n_p
    }

    pub fn n(&self) -> usize {
        self.n_c + self.n_p
    }

    pub fn is_uniform(&self) -> bool {
        self.n_p == 0
    }

    /// Hilbert-space dimension `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n()
    }

    pub fn positions(&self, region: Region) -> std::ops::Range<usize> {
        match region {
            Region::C => 0..self.n_c,
            Region::P => self.n_c..self.n(),
            Region::All => 0..self.n(),
        }
    }
}

impl fmt::Display for RegisterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_uniform() {
            write!(f, "n={}", self.n_c)
        } else {
            write!(f, "n_c={}, n_p={}", self.n_c, self.n_p)
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_MAX_QUBITS);
    if n > cap {
        return Err(Error::InvalidRegister(format!(
            "{n} qubits exceeds the cap of {cap}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    C,
    P,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn letter(self) -> Pauli {
        match self {
            Axis::X => Pauli::X,
            Axis::Y => Pauli::Y,
            Axis::Z => Pauli::Z,
        }
    }
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I = 0,
    X = 1,
    Y = 2,
    Z = 3,
}

impl Pauli {
    fn from_code(code: u64) -> Self {
        match code & 3 {
            0 => Pauli::I,
            1 => Pauli::X,
            2 => Pauli::Y,
            _ => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A power of `i`: `Phase(k)` stands for `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn to_complex(self) -> Complex64 {
        match self.0 & 3 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) & 3)
    }
}

/// Single-site product `a * b` as (power of i, letter code).
#[inline]
fn letter_product(a: u64, b: u64) -> (u8, u64) {
    if a == 0 {
        return (0, b);
    }
    if b == 0 || a == b {
        return (0, a ^ b);
    }
    let c = 6 - a - b;
    // cyclic successor (X->Y, Y->Z, Z->X) gives -i
    let mut power = if b == a % 3 + 1 { 3 } else { 1 };
    if a == 1 && b == 2 && FLIP_XY_SIGN.load(Ordering::Relaxed) {
        power = 1;
    }
    (power, c)
}

/// Tensor product of Pauli letters, ordered lexicographically with `I < X < Y < Z`.
///
/// Site 0 is the leftmost factor of the tensor product and the most significant
/// bit of a computational-basis index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord {
    len: u8,
    code: u64,
}

impl PauliWord {
    pub fn identity(len: usize) -> Self {
        assert!(len <= HARD_MAX_QUBITS, "word length {len} exceeds {HARD_MAX_QUBITS}");
        Self { len: len as u8, code: 0 }
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut w = Self::identity(letters.len());
        for (k, &l) in letters.iter().enumerate() {
            w = w.with_letter(k, l);
        }
        w
    }

    /// Word with `letter` at `site` and identity elsewhere.
    pub fn single(len: usize, site: usize, letter: Pauli) -> Self {
        Self::identity(len).with_letter(site, letter)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Position of the word in the lexicographic enumeration of all `4^len` words.
    pub fn index(&self) -> usize {
        self.code as usize
    }

    pub fn from_index(len: usize, index: usize) -> Self {
        assert!(len <= HARD_MAX_QUBITS);
        debug_assert!(index < 1usize << (2 * len));
        Self { len: len as u8, code: index as u64 }
    }

    fn shift(&self, site: usize) -> u32 {
        2 * (self.len as u32 - 1 - site as u32)
    }

    pub fn letter(&self, site: usize) -> Pauli {
        assert!(site < self.len());
        Pauli::from_code(self.code >> self.shift(site))
    }

    pub fn with_letter(mut self, site: usize, letter: Pauli) -> Self {
        assert!(site < self.len());
        let s = self.shift(site);
        self.code = (self.code & !(3u64 << s)) | ((letter as u64) << s);
        self
    }

    pub fn letters(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.len()).map(move |k| self.letter(k))
    }

    pub fn is_identity(&self) -> bool {
        self.code == 0
    }

    pub fn weight(&self) -> usize {
        self.letters().filter(|&l| l != Pauli::I).count()
    }

    /// Product of two words of equal length: `a * b = phase * word`.
    pub fn multiply(&self, other: &PauliWord) -> Result<(Phase, PauliWord)> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self.multiply_unchecked(other))
    }

    #[inline]
    pub(crate) fn multiply_unchecked(&self, other: &PauliWord) -> (Phase, PauliWord) {
        let mut power = 0u8;
        let mut code = 0u64;
        let (mut a, mut b) = (self.code, other.code);
        let mut shift = 0;
        while a != 0 || b != 0 {
            let (p, c) = letter_product(a & 3, b & 3);
            power += p;
            code |= c << shift;
            a >>= 2;
            b >>= 2;
            shift += 2;
        }
        (Phase(power & 3), PauliWord { len: self.len, code })
    }

    /// Whether the two words commute (they either commute or anticommute).
    pub fn commutes_with(&self, other: &PauliWord) -> bool {
        let mut anti = 0;
        let (mut a, mut b) = (self.code, other.code);
        while a != 0 && b != 0 {
            let (x, y) = (a & 3, b & 3);
            if x != 0 && y != 0 && x != y {
                anti ^= 1;
            }
            a >>= 2;
            b >>= 2;
        }
        anti == 0
    }

    /// Concatenation `self ⊗ other`.
    pub fn kron(&self, other: &PauliWord) -> PauliWord {
        let len = self.len() + other.len();
        assert!(len <= HARD_MAX_QUBITS);
        PauliWord {
            len: len as u8,
            code: (self.code << (2 * other.len as u32)) | other.code,
        }
    }

    /// Moves the letter at site `k` to site `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> PauliWord {
        assert_eq!(perm.len(), self.len());
        let mut out = PauliWord::identity(self.len());
        for (k, &target) in perm.iter().enumerate() {
            out = out.with_letter(target, self.letter(k));
        }
        out
    }

    /// Masks on computational-basis bits: (flip mask, Y sites, Z sites).
    pub(crate) fn basis_masks(&self) -> (usize, usize, usize) {
        let n = self.len();
        let (mut flip, mut ys, mut zs) = (0usize, 0usize, 0usize);
        for k in 0..n {
            let bit = 1usize << (n - 1 - k);
            match self.letter(k) {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Y => {
                    flip |= bit;
                    ys |= bit;
                }
                Pauli::Z => zs |= bit,
            }
        }
        (flip, ys, zs)
    }

    /// Dense `2^n x 2^n` matrix of the word.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.len();
        let mut m = DMatrix::zeros(dim, dim);
        let (flip, ys, zs) = self.basis_masks();
        let base = Phase(3 * (ys.count_ones() as u8 & 3));
        for col in 0..dim {
            let sign = ((ys | zs) & col).count_ones() & 1;
            let phase = base * if sign == 1 { Phase::MINUS_ONE } else { Phase::ONE };
            m[(col ^ flip, col)] = phase.to_complex();
        }
        m
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| {
                Pauli::from_char(c).ok_or_else(|| Error::Parse {
                    line: 0,
                    message: format!("invalid Pauli letter {c:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() || letters.len() > HARD_MAX_QUBITS {
            return Err(Error::Parse {
                line: 0,
                message: format!("word length must be 1..={HARD_MAX_QUBITS}"),
            });
        }
        Ok(PauliWord::from_letters(&letters))
    }
}

/// Complex combination of Pauli words on a fixed register.
#[derive(Clone, PartialEq)]
pub struct Operator {
    register: RegisterSpec,
    terms: BTreeMap<PauliWord, Complex64>,
}

impl Operator {
    pub fn zero(register: RegisterSpec) -> Self {
        Self { register, terms: BTreeMap::new() }
    }

    pub fn identity(register: RegisterSpec) -> Self {
        Self::from_word(register, PauliWord::identity(register.n()), Complex64::new(1.0, 0.0))
    }

    pub fn from_word(register: RegisterSpec, word: PauliWord, coeff: Complex64) -> Self {
        assert_eq!(word.len(), register.n(), "word length does not match register");
        let mut op = Self::zero(register);
        op.accumulate(word, coeff);
        op.prune();
        op
    }

    pub fn from_terms<I>(register: RegisterSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliWord, Complex64)>,
    {
        let mut op = Self::zero(register);
        for (w, c) in terms {
            if w.len() != register.n() {
                return Err(Error::DimensionMismatch {
                    expected: register.n(),
                    found: w.len(),
                });
            }
            op.accumulate(w, c);
        }
        op.prune();
        Ok(op)
    }

    /// Sum of single-letter words, one per listed site.
    pub fn single_site_sum(register: RegisterSpec, sites: impl IntoIterator<Item = usize>, letter: Pauli) -> Self {
        let n = register.n();
        let terms = sites
            .into_iter()
            .map(|s| (PauliWord::single(n, s, letter), Complex64::new(1.0, 0.0)));
        Self::from_terms(register, terms).expect("sites lie inside the register")
    }

    pub fn register(&self) -> RegisterSpec {
        self.register
    }

    pub fn terms(&self) -> &BTreeMap<PauliWord, Complex64> {
        &self.terms
    }

    pub fn coefficient(&self, word: &PauliWord) -> Complex64 {
        self.terms.get(word).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, word: PauliWord, coeff: Complex64) {
        *self.terms.entry(word).or_default() += coeff;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    fn check_register(&self, other: &Operator) -> Result<()> {
        if self.register != other.register {
            return Err(Error::RegisterMismatch {
                left: self.register.to_string(),
                right: other.register.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Operator) -> Result<Operator> {
        self.check_register(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(*w, *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Operator) -> Result<Operator> {
        self.checked_add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Operator {
        let mut out = Self::zero(self.register);
        out.terms = self.terms.iter().map(|(w, c)| (*w, c * factor)).collect();
        out.prune();
        out
    }

    /// `i * self`.
    pub fn times_i(&self) -> Operator {
        self.scale(I_UNIT)
    }

    pub fn multiply(&self, other: &Operator) -> Result<Operator> {
        self.check_register(other)?;
        let mut out = Self::zero(self.register);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let (phase, w) = wa.multiply_unchecked(wb);
                out.accumulate(w, ca * cb * phase.to_complex());
            }
        }
        out.prune();
        Ok(out)
    }

    /// `AB - BA`, computed only from anticommuting word pairs.
    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        self.graded_product(other, false)
    }

    /// `AB + BA`, computed only from commuting word pairs.
    pub fn anticommutator(&self, other: &Operator) -> Result<Operator> {
        self.graded_product(other, true)
    }

    fn graded_product(&self, other: &Operator, commuting: bool) -> Result<Operator> {
        self.check_register(other)?;
        let mut out = Self::zero(self.register);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if wa.commutes_with(wb) == commuting {
                    let (phase, w) = wa.multiply_unchecked(wb);
                    out.accumulate(w, 2.0 * ca * cb * phase.to_complex());
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// `Tr(A B†)`.
    pub fn inner_product(&self, other: &Operator) -> Result<Complex64> {
        self.check_register(other)?;
        let scale = self.register.dim() as f64;
        let mut acc = Complex64::default();
        for (w, c) in &self.terms {
            if let Some(d) = other.terms.get(w) {
                acc += c * d.conj();
            }
        }
        Ok(acc * scale)
    }

    /// Norm induced by `Tr(A A†)`.
    pub fn norm(&self) -> f64 {
        let sq: f64 = self.terms.values().map(|c| c.norm_sqr()).sum();
        (sq * self.register.dim() as f64).sqrt()
    }

    pub fn dagger(&self) -> Operator {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    /// Largest |Re c| over the coefficients.
    pub fn max_real_part(&self) -> f64 {
        self.terms.values().map(|c| c.re.abs()).fold(0.0, f64::max)
    }

    /// Largest |Im c| over the coefficients.
    pub fn max_imag_part(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imag_part() <= tol
    }

    pub fn is_skew_hermitian(&self, tol: f64) -> bool {
        self.max_real_part() <= tol
    }

    /// Rearranges positions inside C with `perm_c` and inside P with `perm_p`;
    /// the letter at region position `k` moves to region position `perm[k]`.
    pub fn permute(&self, perm_c: &[usize], perm_p: &[usize]) -> Result<Operator> {
        let reg = self.register;
        if perm_c.len() != reg.n_c() || perm_p.len() != reg.n_p() {
            return Err(Error::DimensionMismatch {
                expected: reg.n(),
                found: perm_c.len() + perm_p.len(),
            });
        }
        validate_permutation(perm_c)?;
        validate_permutation(perm_p)?;
        let full: Vec<usize> = perm_c
            .iter()
            .copied()
            .chain(perm_p.iter().map(|&k| k + reg.n_c()))
            .collect();
        Ok(self.permute_sites(&full))
    }

    pub(crate) fn permute_sites(&self, perm: &[usize]) -> Operator {
        let mut out = Self::zero(self.register);
        out.terms = self.terms.iter().map(|(w, c)| (w.permute(perm), *c)).collect();
        out
    }

    /// Tensor product on the joint register `(a.n, b.n)`.
    pub fn kron(a: &Operator, b: &Operator) -> Result<Operator> {
        let register = RegisterSpec::with_cap(a.register.n(), b.register.n(), HARD_MAX_QUBITS)?;
        let mut out = Self::zero(register);
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                out.accumulate(wa.kron(wb), ca * cb);
            }
        }
        out.prune();
        Ok(out)
    }

    /// Reinterprets the operator on another register with the same qubit count.
    pub fn with_register(&self, register: RegisterSpec) -> Result<Operator> {
        if register.n() != self.register.n() {
            return Err(Error::DimensionMismatch {
                expected: self.register.n(),
                found: register.n(),
            });
        }
        Ok(Self { register, terms: self.terms.clone() })
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = self.register.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for (w, c) in &self.terms {
            let (flip, ys, zs) = w.basis_masks();
            let base = *c * Phase(3 * (ys.count_ones() as u8 & 3)).to_complex();
            for col in 0..dim {
                let v = if ((ys | zs) & col).count_ones() & 1 == 1 { -base } else { base };
                m[(col ^ flip, col)] += v;
            }
        }
        m
    }

    /// Pauli expansion of a dense matrix: `c_w = Tr(P_w M) / 2^n`.
    pub fn from_dense(register: RegisterSpec, m: &DMatrix<Complex64>) -> Result<Operator> {
        let dim = register.dim();
        if m.nrows() != dim || m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.nrows(),
            });
        }
        let n = register.n();
        let mut op = Self::zero(register);
        for index in 0..1usize << (2 * n) {
            let w = PauliWord::from_index(n, index);
            let (flip, ys, zs) = w.basis_masks();
            let mut acc = Complex64::default();
            for col in 0..dim {
                let v = m[(col, col ^ flip)];
                if ((ys | zs) & col).count_ones() & 1 == 1 {
                    acc -= v;
                } else {
                    acc += v;
                }
            }
            let c = acc * Phase(3 * (ys.count_ones() as u8 & 3)).to_complex() / dim as f64;
            if c.norm() >= PRUNE_TOL {
                op.terms.insert(w, c);
            }
        }
        Ok(op)
    }

    /// Text form: one `<re> <im> <word>` line per term, 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in &self.terms {
            s.push_str(&format!("{:.16e} {:.16e} {}\n", c.re, c.im, w));
        }
        s
    }

    /// Parses the text form. Blank lines and lines starting with `#` are skipped;
    /// repeated words are summed. The result lives on a uniform register.
    pub fn parse_text(text: &str) -> Result<Operator> {
        let mut terms = Vec::new();
        let mut len = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err(format!("expected `<re> <im> <word>`, got {} fields", fields.len())));
            }
            let re: f64 = fields[0].parse().map_err(|e| err(format!("bad real part: {e}")))?;
            let im: f64 = fields[1].parse().map_err(|e| err(format!("bad imaginary part: {e}")))?;
            let word: PauliWord = fields[2].parse().map_err(|e| match e {
                Error::Parse { message, .. } => err(message),
                other => other,
            })?;
            match len {
                None => len = Some(word.len()),
                Some(l) if l != word.len() => {
                    return Err(err(format!("word length {} differs from {l}", word.len())))
                }
                _ => {}
            }
            terms.push((word, Complex64::new(re, im)));
        }
        let n = len.ok_or(Error::Parse {
            line: 0,
            message: "no terms found".into(),
        })?;
        let reg = RegisterSpec::uniform_with_cap(n, HARD_MAX_QUBITS)?;
        Operator::from_terms(reg, terms)
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator[{}](", self.register)?;
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i){}", c.re, c.im, w)?;
        }
        write!(f, ")")
    }
}

fn validate_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidRegister(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

impl Add for &Operator {
    type Output = Operator;

    /// Panics on register mismatch; use [`Operator::checked_add`] otherwise.
    fn add(self, rhs: &Operator) -> Operator {
        self.checked_add(rhs).expect("operator registers differ")
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        self.checked_sub(rhs).expect("operator registers differ")
    }
}

impl Neg for &Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: f64) -> Operator {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Mul<Complex64> for &Operator {
    type Output = Operator;

    fn mul(self, rhs: Complex64) -> Operator {
        self.scale(rhs)
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.multiply(rhs).expect("operator registers differ")
    }
}

/// Region must be non-empty.
fn region_sites(region: Region, reg: RegisterSpec) -> Result<std::ops::Range<usize>> {
    let sites = reg.positions(region);
    if sites.is_empty() {
        return Err(Error::InvalidRegister(format!("region {region:?} of {reg} is empty")));
    }
    Ok(sites)
}

/// Collective spin `S_axis`: sum of the single-axis letter over every site of the region.
pub fn build_s(axis: Axis, region: Region, reg: RegisterSpec) -> Result<Operator> {
    let sites = region_sites(region, reg)?;
    Ok(Operator::single_site_sum(reg, sites, axis.letter()))
}

/// Symmetric sum over all distinct placements of `pattern` into the region,
/// identity elsewhere. `I_xy` on three qubits has six words.
pub fn build_i(pattern: &[Axis], region: Region, reg: RegisterSpec) -> Result<Operator> {
    let sites: Vec<usize> = region_sites(region, reg)?.collect();
    if pattern.is_empty() || pattern.len() > sites.len() {
        return Err(Error::EmptyOperator(format!(
            "pattern of {} letters does not fit {} sites",
            pattern.len(),
            sites.len()
        )));
    }
    let mut words = std::collections::BTreeSet::new();
    let mut used = vec![false; sites.len()];
    place(pattern, &sites, &mut used, PauliWord::identity(reg.n()), &mut words);
    let one = Complex64::new(1.0, 0.0);
    Operator::from_terms(reg, words.into_iter().map(|w| (w, one)))
}

fn place(
    pattern: &[Axis],
    sites: &[usize],
    used: &mut [bool],
    word: PauliWord,
    out: &mut std::collections::BTreeSet<PauliWord>,
) {
    let Some((first, rest)) = pattern.split_first() else {
        out.insert(word);
        return;
    };
    for (k, &site) in sites.iter().enumerate() {
        if !used[k] {
            used[k] = true;
            place(rest, sites, used, word.with_letter(site, first.letter()), out);
            used[k] = false;
        }
    }
}

/// Heisenberg invariant `J = I_xx + I_yy + I_zz`. A region with fewer than two
/// sites has no pairs and yields the zero operator.
pub fn build_j(region: Region, reg: RegisterSpec) -> Result<Operator> {
    let sites = region_sites(region, reg)?;
    if sites.len() < 2 {
        return Ok(Operator::zero(reg));
    }
    let mut j = Operator::zero(reg);
    for a in Axis::ALL {
        j = &j + &build_i(&[a, a], region, reg)?;
    }
    Ok(j)
}

/// Hermitian basis of the five-dimensional traceless quadratic invariants:
/// `I_xy, I_xz, I_yz, I_xx - I_yy, I_yy - I_zz`.
pub fn quadratic_traceless_basis(region: Region, reg: RegisterSpec) -> Result<Vec<Operator>> {
    use Axis::*;
    let ixx = build_i(&[X, X], region, reg)?;
    let iyy = build_i(&[Y, Y], region, reg)?;
    let izz = build_i(&[Z, Z], region, reg)?;
    Ok(vec![
        build_i(&[X, Y], region, reg)?,
        build_i(&[X, Z], region, reg)?,
        build_i(&[Y, Z], region, reg)?,
        &ixx - &iyy,
        &iyy - &izz,
    ])
}

/// Hermitian basis of the six quadratic invariants `I_ab`.
pub fn quadratic_basis(region: Region, reg: RegisterSpec) -> Result<Vec<Operator>> {
    use Axis::*;
    [[X, X], [Y, Y], [Z, Z], [X, Y], [X, Z], [Y, Z]]
        .iter()
        .map(|p| build_i(p, region, reg))
        .collect()
}

/// `S_x, S_y, S_z` on the region.
pub fn collective_spins(region: Region, reg: RegisterSpec) -> Result<Vec<Operator>> {
    Axis::ALL.iter().map(|&a| build_s(a, region, reg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn all_words(n: usize) -> impl Iterator<Item = PauliWord> {
        (0..1usize << (2 * n)).map(move |i| PauliWord::from_index(n, i))
    }

    #[test]
    fn single_site_products() {
        assert_eq!(w("X").multiply(&w("Y")).unwrap(), (Phase::MINUS_I, w("Z")));
        assert_eq!(w("Y").multiply(&w("Z")).unwrap(), (Phase::MINUS_I, w("X")));
        assert_eq!(w("Z").multiply(&w("X")).unwrap(), (Phase::MINUS_I, w("Y")));
        assert_eq!(w("Y").multiply(&w("X")).unwrap(), (Phase::I, w("Z")));
        assert_eq!(w("I").multiply(&w("Z")).unwrap(), (Phase::ONE, w("Z")));
        assert_eq!(w("XZ").multiply(&w("ZX")).unwrap(), (Phase::ONE, w("YY")));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(
            w("X").multiply(&w("XY")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn word_product_matches_dense_product_exhaustively() {
        for n in 1..=3 {
            for a in all_words(n) {
                let da = a.to_dense();
                for b in all_words(n) {
                    let (phase, p) = a.multiply(&b).unwrap();
                    let expected = &da * b.to_dense();
                    let got = p.to_dense() * phase.to_complex();
                    assert!((expected - got).norm() < 1e-12, "{a} * {b}");
                    assert_eq!(a.commutes_with(&b), p == b.multiply(&a).unwrap().1 && phase == b.multiply(&a).unwrap().0);
                }
            }
        }
    }

    #[test]
    fn lexicographic_order() {
        let mut words = [w("ZI"), w("IX"), w("XY"), w("II"), w("YZ")];
        words.sort();
        let s: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(s, ["II", "IX", "XY", "YZ", "ZI"]);
    }

    #[test]
    fn sigma_squared_is_identity() {
        let reg = RegisterSpec::uniform(1).unwrap();
        for l in [Pauli::X, Pauli::Y, Pauli::Z] {
            let s = Operator::from_word(reg, PauliWord::from_letters(&[l]), c(1.0, 0.0));
            assert_eq!(&s * &s, Operator::identity(reg));
        }
    }

    #[test]
    fn collective_spins_close_su2() {
        for n in 1..=4 {
            let reg = RegisterSpec::uniform(n).unwrap();
            let sx = build_s(Axis::X, Region::All, reg).unwrap().times_i();
            let sy = build_s(Axis::Y, Region::All, reg).unwrap().times_i();
            let sz = build_s(Axis::Z, Region::All, reg).unwrap().times_i();
            assert_eq!(sx.commutator(&sy).unwrap(), &sz * 2.0);
            assert!(sx.commutator(&sx).unwrap().is_zero());
        }
    }

    #[test]
    fn commutator_and_anticommutator_match_products() {
        let reg = RegisterSpec::uniform(2).unwrap();
        let a = Operator::from_terms(reg, [(w("XZ"), c(0.5, 1.0)), (w("YI"), c(-2.0, 0.0))]).unwrap();
        let b = Operator::from_terms(reg, [(w("ZZ"), c(1.0, 0.0)), (w("XY"), c(0.0, 3.0))]).unwrap();
        let ab = &a * &b;
        let ba = &b * &a;
        assert!((&a.commutator(&b).unwrap() - &(&ab - &ba)).norm() < 1e-12);
        assert!((&a.anticommutator(&b).unwrap() - &(&ab + &ba)).norm() < 1e-12);
    }

    #[test]
    fn inner_product_of_distinct_words_vanishes() {
        let reg = RegisterSpec::uniform(1).unwrap();
        let x = Operator::from_word(reg, w("X"), c(1.0, 0.0));
        let y = Operator::from_word(reg, w("Y"), c(1.0, 0.0));
        assert_eq!(x.inner_product(&y).unwrap(), Complex64::default());
        assert_eq!(x.inner_product(&x).unwrap(), c(2.0, 0.0));
    }

    #[test]
    fn heisenberg_norm_on_two_qubits() {
        let reg = RegisterSpec::uniform(2).unwrap();
        let j = build_j(Region::All, reg).unwrap();
        assert_eq!(j.len(), 3);
        assert!((j.inner_product(&j).unwrap() - c(12.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn builders_produce_expected_words() {
        let reg = RegisterSpec::new(2, 1).unwrap();
        let sxc = build_s(Axis::X, Region::C, reg).unwrap();
        let words: Vec<String> = sxc.terms().keys().map(|w| w.to_string()).collect();
        assert_eq!(words, ["IXI", "XII"]);

        let reg = RegisterSpec::new(2, 1).unwrap();
        let szp = build_s(Axis::Z, Region::P, reg).unwrap();
        assert_eq!(szp.terms().keys().map(|w| w.to_string()).collect::<Vec<_>>(), ["IIZ"]);

        let reg3 = RegisterSpec::uniform(3).unwrap();
        let ixx = build_i(&[Axis::X, Axis::X], Region::All, reg3).unwrap();
        let words: Vec<String> = ixx.terms().keys().map(|w| w.to_string()).collect();
        assert_eq!(words, ["IXX", "XIX", "XXI"]);
        let ixy = build_i(&[Axis::X, Axis::Y], Region::All, reg3).unwrap();
        assert_eq!(ixy.len(), 6);
        assert!(ixy.terms().values().all(|&v| v == c(1.0, 0.0)));
    }

    #[test]
    fn oversized_pattern_is_rejected() {
        let reg = RegisterSpec::uniform(2).unwrap();
        let err = build_i(&[Axis::X, Axis::Y, Axis::Z], Region::All, reg).unwrap_err();
        assert!(matches!(err, Error::EmptyOperator(_)));
        let reg = RegisterSpec::new(1, 1).unwrap();
        assert!(build_j(Region::C, reg).unwrap().is_zero());
    }

    #[test]
    fn empty_region_is_rejected() {
        let reg = RegisterSpec::uniform(3).unwrap();
        assert!(build_s(Axis::X, Region::P, reg).is_err());
    }

    #[test]
    fn triple_invariant_from_quadratic_brackets() {
        let reg = RegisterSpec::uniform(3).unwrap();
        let ixx = build_i(&[Axis::X, Axis::X], Region::All, reg).unwrap().times_i();
        let iyy = build_i(&[Axis::Y, Axis::Y], Region::All, reg).unwrap().times_i();
        let ixyz = build_i(&[Axis::X, Axis::Y, Axis::Z], Region::All, reg).unwrap();
        let bracket = ixx.commutator(&iyy).unwrap();
        // bracket = k * i I_xyz for a single nonzero k
        let k = bracket.coefficient(&w("XYZ")) / c(0.0, 1.0);
        assert!(k.norm() > 0.5);
        assert!((&bracket - &ixyz.times_i().scale(k)).norm() < 1e-12);
    }

    #[test]
    fn permutation_moves_letters() {
        let reg = RegisterSpec::new(2, 1).unwrap();
        let a = Operator::from_word(reg, w("XZY"), c(1.0, 0.0));
        let p = a.permute(&[1, 0], &[0]).unwrap();
        assert_eq!(p.terms().keys().next().unwrap().to_string(), "ZXY");
        let sx = build_s(Axis::X, Region::C, reg).unwrap();
        assert_eq!(sx.permute(&[1, 0], &[0]).unwrap(), sx);
        assert!(a.permute(&[0], &[0]).is_err());
        assert!(a.permute(&[0, 0], &[0]).is_err());
    }

    #[test]
    fn dense_round_trip() {
        let reg = RegisterSpec::new(1, 2).unwrap();
        let a = Operator::from_terms(reg, [(w("XYZ"), c(0.25, -1.0)), (w("IZY"), c(3.0, 0.5))]).unwrap();
        let back = Operator::from_dense(reg, &a.to_dense()).unwrap();
        assert!((&a - &back).norm() < 1e-12);
    }

    #[test]
    fn text_format_parses_comments_and_reports_lines() {
        let op = Operator::parse_text("# generator\n0 1 XZI\n\n0 -2 IIZ\n").unwrap();
        assert_eq!(op.register().n(), 3);
        assert_eq!(op.coefficient(&w("XZI")), c(0.0, 1.0));
        match Operator::parse_text("0 1 XZ\n1 0 XQ\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(Operator::parse_text("0 1 XZ\n1 0 X\n"), Err(Error::Parse { line: 2, .. })));
        assert!(Operator::parse_text("# nothing\n").is_err());
    }

    #[test]
    fn register_validation() {
        assert!(RegisterSpec::new(0, 3).is_err());
        assert!(RegisterSpec::new(1, 0).is_err());
        assert!(RegisterSpec::new(4, 5).is_err());
        assert!(RegisterSpec::with_cap(4, 5, 10).is_ok());
        let a = Operator::identity(RegisterSpec::new(1, 1).unwrap());
        let b = Operator::identity(RegisterSpec::uniform(2).unwrap());
        assert!(matches!(a.checked_add(&b), Err(Error::RegisterMismatch { .. })));
    }
}
