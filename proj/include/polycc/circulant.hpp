#pragma once

#include <complex>
#include <span>
#include <vector>

namespace polycc {

using Complex = std::complex<double>;

// An n x n circulant matrix stored by its first row. Entry (k, j), 1-based,
// is first_row[(j - k) mod n], so every row is the previous one shifted one
// place to the right.
class CirculantMatrix {
 public:
  // Throws DomainError when the row has fewer than two entries.
  explicit CirculantMatrix(std::vector<Complex> first_row);

  int n() const noexcept { return static_cast<int>(first_row_.size()); }
  std::span<const Complex> first_row() const noexcept { return first_row_; }

  // 1-based entry access. Throws DomainError when out of range.
  Complex entry(int k, int j) const;

  // Row-major dense copy; for cross-checks only (n <= 64).
  std::vector<std::vector<Complex>> dense() const;

  // Direct O(n^2) matrix-vector product using the circulant index rule.
  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  std::vector<Complex> first_row_;
};

// lambda_k(C) = sum_{j=1}^{n} c_{1,j} exp(2*pi*i*(k-1)*(j-1)/n), 1 <= k <= n.
Complex eigenvalue(const CirculantMatrix& c, int k);

// All n eigenvalues, lambda_1 first.
std::vector<Complex> eigenvalues(const CirculantMatrix& c);

// nu_k with component j (1-based) equal to exp(2*pi*i*(k-1)*j/n). nu_1 is the
// all-ones vector. Throws DomainError for k outside 1..n or n < 1.
std::vector<Complex> eigenvector(int n, int k);

// The circulant matrix with zero diagonal and a_{k,j} = (1 - q_{j-k}) /
// |1 - q_{j-k}|^3 off the diagonal, q_m = exp(2*pi*i*m/N). This is the
// mutual-attraction operator of N equal-radius bodies on the unit circle
// expressed in the frame of body k. Throws DomainError for N < 2.
CirculantMatrix build_A(int n);

// Coefficients alpha_k = conj(nu_k)^T v / n, so that v = sum_k alpha_k nu_k.
// Throws DomainError when v.size() != n.
std::vector<Complex> decompose(int n, std::span<const Complex> v);
std::vector<Complex> decompose(int n, std::span<const double> v);

// sum_k alpha_k nu_k.
std::vector<Complex> reconstruct(std::span<const Complex> coefficients);

// Eigenvalues paired with the eigenbasis coefficients of some vector.
struct SpectralDecomposition {
  std::vector<Complex> eigenvalues;
  std::vector<Complex> coefficients;  // empty when no vector was decomposed
};

SpectralDecomposition spectral_decomposition(const CirculantMatrix& c);
SpectralDecomposition spectral_decomposition(const CirculantMatrix& c, std::span<const Complex> v);

// C v evaluated in the eigenbasis: decompose v, scale by lambda_k, rebuild.
std::vector<Complex> apply_spectral(const CirculantMatrix& c, std::span<const Complex> v);

// Which eigenvalues of A_N vanish. For N >= 4 the only zero among
// lambda_1..lambda_{N-1} is lambda_{(N+1)/2} when N is odd.
inline constexpr double kEigenvalueZeroTolerance = 1e-10;
inline constexpr double kEigenvalueNonzeroTolerance = 1e-6;

struct EigenvalueCheckRow {
  int k = 0;
  Complex lambda;
  double magnitude = 0.0;
  bool expected_zero = false;
  bool pass = false;
};

struct EigenvalueCheckReport {
  int n = 0;
  double tolerance_zero = kEigenvalueZeroTolerance;
  double tolerance_nonzero = kEigenvalueNonzeroTolerance;
  std::vector<EigenvalueCheckRow> rows;  // k = 1..N-1
  bool pass = false;
};

// Throws DomainError for N < 4.
EigenvalueCheckReport nonzero_eigenvalue_check(int n,
                                               double tolerance_zero = kEigenvalueZeroTolerance,
                                               double tolerance_nonzero = kEigenvalueNonzeroTolerance);

}  // namespace polycc
