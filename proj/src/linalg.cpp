#include "conedyn/linalg.hpp"

#include <cmath>

#include "conedyn/error.hpp"

namespace conedyn::linalg {

namespace {

const double kSqrt2 = std::sqrt(2.0);

Eigen::SelfAdjointEigenSolver<Mat> eig(const Mat& s) {
  const Mat sym = 0.5 * (s + s.transpose());
  return Eigen::SelfAdjointEigenSolver<Mat>(sym);
}

template <class Fn>
Mat apply_spectral(const Mat& s, double eig_tol, Fn fn, const char* what) {
  const auto es = eig(s);
  const Vec& d = es.eigenvalues();
  if (d.minCoeff() <= eig_tol) {
    throw InvalidArgument(std::string(what) +
                          ": matrix is not positive definite (min eigenvalue " +
                          std::to_string(d.minCoeff()) + ")");
  }
  const Vec fd = d.unaryExpr(fn);
  return es.eigenvectors() * fd.asDiagonal() * es.eigenvectors().transpose();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

int matrix_order(int m) {
  int n = 0;
  while (packed_size(n) < m) ++n;
  if (packed_size(n) != m) {
    throw InvalidArgument("packed length " + std::to_string(m) +
                          " is not n(n+1)/2");
  }
  return n;
}

Vec pack(const Mat& s) {
  const int n = static_cast<int>(s.rows());
  Vec v(packed_size(n));
  int k = 0;
  for (int i = 0; i < n; ++i) {
    v(k++) = s(i, i);
    for (int j = i + 1; j < n; ++j) v(k++) = kSqrt2 * 0.5 * (s(i, j) + s(j, i));
  }
  return v;
}

Mat unpack(const Vec& v) {
  const int n = matrix_order(static_cast<int>(v.size()));
  Mat s(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    s(i, i) = v(k++);
    for (int j = i + 1; j < n; ++j) {
      s(i, j) = s(j, i) = v(k++) / kSqrt2;
    }
  }
  return s;
}

Mat sym_sqrt(const Mat& s, double eig_tol) {
  return apply_spectral(s, eig_tol, [](double x) { return std::sqrt(x); },
                        "sym_sqrt");
}

Mat sym_inv_sqrt(const Mat& s, double eig_tol) {
  return apply_spectral(
      s, eig_tol, [](double x) { return 1.0 / std::sqrt(x); }, "sym_inv_sqrt");
}

Mat sym_log(const Mat& s, double eig_tol) {
  return apply_spectral(s, eig_tol, [](double x) { return std::log(x); },
                        "sym_log");
}

Mat sym_exp(const Mat& s) {
  const auto es = eig(s);
  const Vec fd = es.eigenvalues().array().exp();
  return es.eigenvectors() * fd.asDiagonal() * es.eigenvectors().transpose();
}

double min_eigenvalue(const Mat& s) { return eig(s).eigenvalues().minCoeff(); }

Rng rng_for(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL)));
}

}  // namespace conedyn::linalg
