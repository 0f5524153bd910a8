//! Kirillov matrices `B_f(x, y) = f([x, y])` on the Chevalley basis, exact
//! rank and kernel, contact checks and the randomized index oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, SeaweedError};
use crate::linalg;
use crate::seaweed::{rational_string, AlgebraElement, BasisElement, MatrixLocation, OneForm, Rational, SeaweedDescriptor};

pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_BOUND: i64 = 1000;

/// Skew matrix stored as sparse integer rows over a common positive `scale`:
/// entry `(a, b)` is `rows[a][b] / scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KirillovMatrix {
    n: usize,
    basis: Vec<BasisElement>,
    rows: Vec<Vec<(usize, BigInt)>>,
    scale: BigInt,
}

impl KirillovMatrix {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn integer_rows(&self) -> &[Vec<(usize, BigInt)>] {
        &self.rows
    }

    pub fn entry(&self, a: usize, b: usize) -> Rational {
        self.rows[a]
            .binary_search_by_key(&b, |(c, _)| *c)
            .map(|k| Rational::new(self.rows[a][k].1.clone(), self.scale.clone()))
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_skew(&self) -> bool {
        self.rows.iter().enumerate().all(|(a, row)| {
            row.iter().all(|(b, v)| {
                self.rows[*b]
                    .binary_search_by_key(&a, |(c, _)| *c)
                    .is_ok_and(|k| self.rows[*b][k].1 == -v)
            })
        })
    }

    pub fn dense_integer(&self) -> Vec<Vec<BigInt>> {
        let dim = self.dimension();
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![BigInt::zero(); dim];
                for (c, v) in row {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect()
    }

    /// `h = sum coords[a] * basis_a` as a matrix.
    pub fn element(&self, coords: &[BigInt]) -> AlgebraElement {
        let coeffs: Vec<Rational> = coords.iter().map(|c| Rational::from_integer(c.clone())).collect();
        AlgebraElement::from_basis_combination(self.n, &self.basis, &coeffs)
    }
}

/// Entry `(a, b)` is `f([basis_a, basis_b])`. Uses
/// `[e_ij, e_kl] = delta_jk e_il - delta_li e_kj` on the terms of each basis
/// element, indexing terms by row and by column.
pub fn kirillov_matrix(d: &SeaweedDescriptor, f: &OneForm) -> KirillovMatrix {
    let n = d.n();
    let size = d.matrix_size();
    let basis = d.chevalley_basis();
    let (terms, scale) = f.integer_terms();
    let mut phi: Vec<Option<BigInt>> = vec![None; (size + 1) * (size + 1)];
    for (loc, c) in terms {
        phi[loc.row * (size + 1) + loc.col] = Some(c);
    }
    let phi_at = |i: usize, j: usize| phi[i * (size + 1) + j].as_ref();

    let expanded: Vec<Vec<(MatrixLocation, i64)>> = basis.iter().map(|b| b.terms(n)).collect();
    let mut by_row: HashMap<usize, Vec<(usize, usize, i64)>> = HashMap::new();
    let mut by_col: HashMap<usize, Vec<(usize, usize, i64)>> = HashMap::new();
    for (b, terms) in expanded.iter().enumerate() {
        for &(loc, c) in terms {
            by_row.entry(loc.row).or_default().push((b, loc.col, c));
            by_col.entry(loc.col).or_default().push((b, loc.row, c));
        }
    }

    let dim = basis.len();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); dim];
    let mut touched: Vec<usize> = Vec::new();
    let mut rows = Vec::with_capacity(dim);
    for terms in &expanded {
        for &(MatrixLocation { row: i, col: j }, ca) in terms {
            for &(b, l, cb) in by_row.get(&j).into_iter().flatten() {
                if let Some(v) = phi_at(i, l) {
                    acc[b] += v * (ca * cb);
                    touched.push(b);
                }
            }
            for &(b, k, cb) in by_col.get(&i).into_iter().flatten() {
                if let Some(v) = phi_at(k, j) {
                    acc[b] -= v * (ca * cb);
                    touched.push(b);
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let row: Vec<(usize, BigInt)> = touched
            .drain(..)
            .filter_map(|b| {
                let v = std::mem::take(&mut acc[b]);
                (!v.is_zero()).then_some((b, v))
            })
            .collect();
        rows.push(row);
    }
    KirillovMatrix { n, basis, rows, scale }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    /// Primitive integer coordinate vectors in the basis order.
    pub kernel: Vec<Vec<BigInt>>,
}

pub fn rank_and_kernel(m: &KirillovMatrix) -> RankKernel {
    let rref = linalg::fraction_free_rref(m.dense_integer(), m.dimension());
    RankKernel {
        rank: rref.rank,
        kernel: rref.kernel_basis(),
    }
}

pub fn kernel_elements(m: &KirillovMatrix, rk: &RankKernel) -> Vec<AlgebraElement> {
    rk.kernel.iter().map(|v| m.element(v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub dimension: usize,
    pub rank: usize,
    pub kernel_dimension: usize,
    #[serde(serialize_with = "display_all")]
    pub kernel_basis: Vec<AlgebraElement>,
    /// `f(h)` for the kernel generator, when the kernel is a line.
    #[serde(serialize_with = "display_opt")]
    pub phi_of_kernel: Option<Rational>,
    /// The combinatorial index, computed from the meander.
    pub index: usize,
    pub is_regular: bool,
    pub is_contact: bool,
    /// The bordered-determinant criterion, on odd dimension.
    pub bordered_oracle: Option<bool>,
    pub oracles_agree: bool,
}

fn display_all<S: serde::Serializer>(v: &[AlgebraElement], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn display_opt<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&rational_string(r)),
        None => s.serialize_none(),
    }
}

pub fn is_contact_form(d: &SeaweedDescriptor, f: &OneForm) -> VerificationReport {
    let m = kirillov_matrix(d, f);
    let rk = rank_and_kernel(&m);
    let kernel_basis = kernel_elements(&m, &rk);
    let dimension = m.dimension();
    let phi_of_kernel = match kernel_basis.as_slice() {
        [h] => Some(f.evaluate(h)),
        _ => None,
    };
    let is_contact =
        dimension % 2 == 1 && kernel_basis.len() == 1 && phi_of_kernel.as_ref().is_some_and(|v| !v.is_zero());
    let index = crate::meander::index_via_meander(d);
    let bordered_oracle = bordered_from_matrix(&m, f).ok();
    VerificationReport {
        dimension,
        rank: rk.rank,
        kernel_dimension: kernel_basis.len(),
        kernel_basis,
        phi_of_kernel,
        index,
        is_regular: rk.kernel.len() == index,
        is_contact,
        oracles_agree: bordered_oracle.map_or(true, |b| b == is_contact),
        bordered_oracle,
    }
}

fn basis_values(m: &KirillovMatrix, f: &OneForm) -> Vec<BigInt> {
    let (terms, scale) = f.integer_terms();
    let lookup: HashMap<MatrixLocation, BigInt> = terms.into_iter().collect();
    let n = m.n;
    let values: Vec<BigInt> = m
        .basis
        .iter()
        .map(|b| {
            b.terms(n)
                .into_iter()
                .filter_map(|(loc, c)| lookup.get(&loc).map(|v| v * c))
                .sum()
        })
        .collect();
    // f(basis) and B_f share the scale, so the bordered matrix stays integral
    // after multiplying both by it.
    debug_assert!(scale.is_positive());
    values
}

fn bordered_from_matrix(m: &KirillovMatrix, f: &OneForm) -> Result<bool> {
    let dim = m.dimension();
    if dim % 2 == 0 {
        return Err(SeaweedError::EvenDimension { dimension: dim });
    }
    let values = basis_values(m, f);
    let inner = m.dense_integer();
    let mut bordered = Vec::with_capacity(dim + 1);
    let mut first = vec![BigInt::zero()];
    first.extend(values.iter().cloned());
    bordered.push(first);
    for (a, row) in inner.into_iter().enumerate() {
        let mut r = vec![-&values[a]];
        r.extend(row);
        bordered.push(r);
    }
    Ok(!linalg::determinant(bordered).is_zero())
}

pub fn bordered_contact_oracle(d: &SeaweedDescriptor, f: &OneForm) -> Result<bool> {
    bordered_from_matrix(&kirillov_matrix(d, f), f)
}

/// A form with coefficients uniform in `[-bound, bound]` on every admissible
/// location on or above the antidiagonal.
pub fn random_form(d: &SeaweedDescriptor, bound: i64, rng: &mut impl Rng) -> OneForm {
    let n = d.n();
    let terms: Vec<(MatrixLocation, Rational)> = d
        .admissible_locations()
        .into_iter()
        .filter(|loc| loc.is_on_or_above_antidiagonal(n))
        .map(|loc| (loc, Rational::from_integer(rng.gen_range(-bound..=bound).into())))
        .collect();
    OneForm::new(d, terms).expect("admissible locations on or above the antidiagonal")
}

/// Minimum Kirillov kernel dimension over `trials` seeded random forms.
pub fn index_oracle(d: &SeaweedDescriptor, trials: usize, bound: i64, seed: u64) -> usize {
    assert!(trials >= 1, "index oracle needs at least one trial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = d.dimension();
    (0..trials)
        .map(|_| {
            let f = random_form(d, bound, &mut rng);
            let m = kirillov_matrix(d, &f);
            dim - linalg::rank(m.dense_integer(), dim)
        })
        .min()
        .unwrap()
}

/// `gcd(alpha + beta, beta + gamma) - 1`, the index of the seaweed
/// `alpha|beta / gamma` of rank `n` when `alpha + beta = n` and `gamma` is
/// `n - 1` or `n - 2`.
pub fn gcd_index(n: usize, alpha: usize, beta: usize, gamma: usize) -> Result<usize> {
    if alpha == 0 || beta == 0 || gamma == 0 {
        return Err(SeaweedError::GcdPrecondition("parts must be positive".into()));
    }
    if alpha + beta != n {
        return Err(SeaweedError::GcdPrecondition(format!(
            "alpha + beta = {} but n = {n}",
            alpha + beta
        )));
    }
    if gamma + 1 != n && gamma + 2 != n {
        return Err(SeaweedError::GcdPrecondition(format!(
            "gamma = {gamma} is neither n - 1 nor n - 2 for n = {n}"
        )));
    }
    Ok(gcd_formula(alpha, beta, gamma))
}

/// The bare expression `gcd(alpha + beta, beta + gamma) - 1`, without the
/// domain check.
pub fn gcd_formula(alpha: usize, beta: usize, gamma: usize) -> usize {
    (alpha + beta).gcd(&(beta + gamma)) - 1
}

/// Exact certificate that `f` is contact, without a full rational
/// elimination: a rank of `dimension - 1` modulo a prime is a lower bound for
/// the rational rank, and `h` in the kernel with `f(h) != 0` completes it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactCertificate {
    pub dimension: usize,
    pub rank_mod_p: usize,
    pub kernel_verified: bool,
    #[serde(serialize_with = "display_opt")]
    pub phi_of_kernel: Option<Rational>,
    pub certified: bool,
}

pub fn certify_contact(d: &SeaweedDescriptor, f: &OneForm, h: &AlgebraElement) -> ContactCertificate {
    let m = kirillov_matrix(d, f);
    let dimension = m.dimension();
    let rank_mod_p = linalg::rank_mod_p(m.integer_rows(), dimension);
    let kernel_verified = h.is_member_of(d)
        && !h.is_zero()
        && m.basis().iter().all(|b| {
            let y = b.to_element(d.n());
            h.bracket(&y).map(|z| f.evaluate(&z).is_zero()).unwrap_or(false)
        });
    let phi = f.evaluate(h);
    let certified = dimension % 2 == 1 && rank_mod_p + 1 == dimension && kernel_verified && !phi.is_zero();
    ContactCertificate {
        dimension,
        rank_mod_p,
        kernel_verified,
        phi_of_kernel: Some(phi),
        certified,
    }
}
