#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace conedyn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Rng = std::mt19937_64;

namespace linalg {

// Number of packed coordinates of an n x n symmetric matrix.
constexpr int packed_size(int n) { return n * (n + 1) / 2; }

// Inverse of packed_size; throws InvalidArgument if m is not triangular.
int matrix_order(int m);

// Row-major upper triangle, off-diagonals scaled by sqrt(2), so that the
// Euclidean inner product of packed vectors equals the Frobenius inner
// product of the matrices.
Vec pack(const Mat& s);
Mat unpack(const Vec& v);

// Symmetric functions via eigendecomposition. The input is symmetrized first.
// sqrt/inv_sqrt/log require all eigenvalues > eig_tol.
Mat sym_sqrt(const Mat& s, double eig_tol);
Mat sym_inv_sqrt(const Mat& s, double eig_tol);
Mat sym_log(const Mat& s, double eig_tol);
Mat sym_exp(const Mat& s);
double min_eigenvalue(const Mat& s);

// Deterministic per-index generator derived from a base seed.
Rng rng_for(std::uint64_t seed, std::uint64_t index);

}  // namespace linalg
}  // namespace conedyn
