#include "polycc/circulant.hpp"

#include <cmath>
#include <string>

#include "polycc/errors.hpp"
#include "polycc/geometry.hpp"
#include "polycc/summation.hpp"

namespace polycc {

namespace {

void check_index(int k, int n, const char* what) {
  if (k < 1 || k > n) {
    throw DomainError(std::string(what) + " index " + std::to_string(k) + " outside 1.." +
                      std::to_string(n));
  }
}

}  // namespace

CirculantMatrix::CirculantMatrix(std::vector<Complex> first_row) : first_row_(std::move(first_row)) {
  if (first_row_.size() < 2) throw DomainError("circulant matrix needs n >= 2");
}

Complex CirculantMatrix::entry(int k, int j) const {
  const int size = n();
  check_index(k, size, "row");
  check_index(j, size, "column");
  return first_row_[static_cast<std::size_t>(((j - k) % size + size) % size)];
}

std::vector<std::vector<Complex>> CirculantMatrix::dense() const {
  const int size = n();
  std::vector<std::vector<Complex>> rows(static_cast<std::size_t>(size),
                                         std::vector<Complex>(static_cast<std::size_t>(size)));
  for (int k = 1; k <= size; ++k) {
    for (int j = 1; j <= size; ++j) rows[k - 1][j - 1] = entry(k, j);
  }
  return rows;
}

std::vector<Complex> CirculantMatrix::apply(std::span<const Complex> v) const {
  const int size = n();
  if (v.size() != static_cast<std::size_t>(size)) {
    throw DomainError("vector length " + std::to_string(v.size()) + " does not match n = " +
                      std::to_string(size));
  }
  std::vector<Complex> out(v.size());
  for (int k = 0; k < size; ++k) {
    CompensatedComplexSum acc;
    for (int j = 0; j < size; ++j) acc += first_row_[((j - k) % size + size) % size] * v[j];
    out[k] = acc.value();
  }
  return out;
}

Complex eigenvalue(const CirculantMatrix& c, int k) {
  const int n = c.n();
  check_index(k, n, "eigenvalue");
  const auto row = c.first_row();
  CompensatedComplexSum acc;
  for (int j = 1; j <= n; ++j) {
    acc += row[j - 1] * root_of_unity(static_cast<long long>(k - 1) * (j - 1), n);
  }
  return acc.value();
}

std::vector<Complex> eigenvalues(const CirculantMatrix& c) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(c.n()));
  for (int k = 1; k <= c.n(); ++k) out.push_back(eigenvalue(c, k));
  return out;
}

std::vector<Complex> eigenvector(int n, int k) {
  if (n < 1) throw DomainError("eigenvector dimension must be positive");
  check_index(k, n, "eigenvector");
  std::vector<Complex> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) v.push_back(root_of_unity(static_cast<long long>(k - 1) * j, n));
  return v;
}

CirculantMatrix build_A(int n) {
  if (n < 2) throw DomainError("matrix A needs N >= 2, got " + std::to_string(n));
  std::vector<Complex> row(static_cast<std::size_t>(n), Complex{0.0, 0.0});
  for (int d = 1; d < n; ++d) {
    const Complex gap = 1.0 - root_of_unity(d, n);
    const double r = std::abs(gap);
    row[d] = gap / (r * r * r);
  }
  return CirculantMatrix(std::move(row));
}

std::vector<Complex> decompose(int n, std::span<const Complex> v) {
  if (v.size() != static_cast<std::size_t>(n)) {
    throw DomainError("vector length " + std::to_string(v.size()) + " does not match n = " +
                      std::to_string(n));
  }
  std::vector<Complex> alpha;
  alpha.reserve(v.size());
  for (int k = 1; k <= n; ++k) {
    // conj(nu_k)_j = exp(-2*pi*i*(k-1)*j/n)
    CompensatedComplexSum acc;
    for (int j = 1; j <= n; ++j) {
      acc += root_of_unity(-static_cast<long long>(k - 1) * j, n) * v[j - 1];
    }
    alpha.push_back(acc.value() / static_cast<double>(n));
  }
  return alpha;
}

std::vector<Complex> decompose(int n, std::span<const double> v) {
  const std::vector<Complex> as_complex(v.begin(), v.end());
  return decompose(n, as_complex);
}

std::vector<Complex> reconstruct(std::span<const Complex> coefficients) {
  const int n = static_cast<int>(coefficients.size());
  if (n < 1) throw DomainError("no coefficients to reconstruct from");
  std::vector<Complex> v(coefficients.size());
  for (int j = 1; j <= n; ++j) {
    CompensatedComplexSum acc;
    for (int k = 1; k <= n; ++k) {
      acc += coefficients[k - 1] * root_of_unity(static_cast<long long>(k - 1) * j, n);
    }
    v[j - 1] = acc.value();
  }
  return v;
}

SpectralDecomposition spectral_decomposition(const CirculantMatrix& c) {
  return {eigenvalues(c), {}};
}

SpectralDecomposition spectral_decomposition(const CirculantMatrix& c,
                                             std::span<const Complex> v) {
  return {eigenvalues(c), decompose(c.n(), v)};
}

std::vector<Complex> apply_spectral(const CirculantMatrix& c, std::span<const Complex> v) {
  auto spectrum = spectral_decomposition(c, v);
  for (std::size_t k = 0; k < spectrum.coefficients.size(); ++k) {
    spectrum.coefficients[k] *= spectrum.eigenvalues[k];
  }
  return reconstruct(spectrum.coefficients);
}

EigenvalueCheckReport nonzero_eigenvalue_check(int n, double tolerance_zero,
                                               double tolerance_nonzero) {
  if (n < 4) throw DomainError("eigenvalue check requires N >= 4, got " + std::to_string(n));
  const CirculantMatrix a = build_A(n);
  EigenvalueCheckReport report;
  report.n = n;
  report.tolerance_zero = tolerance_zero;
  report.tolerance_nonzero = tolerance_nonzero;
  report.pass = true;
  for (int k = 1; k < n; ++k) {
    EigenvalueCheckRow row;
    row.k = k;
    row.lambda = eigenvalue(a, k);
    row.magnitude = std::abs(row.lambda);
    row.expected_zero = (n % 2 == 1) && (k == (n + 1) / 2);
    row.pass = row.expected_zero ? row.magnitude < tolerance_zero : row.magnitude > tolerance_nonzero;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace polycc
