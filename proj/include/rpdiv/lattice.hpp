#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rpdiv/bigint.hpp"

namespace rpdiv {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;

/// Square integer matrix whose rows span a full-rank lattice.
class LatticeBasis {
 public:
  // Throws InputError unless rows form a non-empty square matrix.
  explicit LatticeBasis(IntMatrix rows);

  std::size_t dim() const { return rows_.size(); }
  const IntMatrix& rows() const { return rows_; }
  IntMatrix& mutable_rows() { return rows_; }

  bool is_lower_triangular() const;
  // Product of the diagonal. Throws InvariantError unless lower-triangular
  // with a nonzero diagonal.
  BigInt triangular_determinant() const;

 private:
  IntMatrix rows_;
};

struct ReducedBasis {
  IntMatrix rows;
  // When recorded: rows == transform * input rows, transform unimodular.
  std::optional<IntMatrix> transform;
  // True if the floating-point guided pass was not enough and the exact
  // integral reduction had to finish the job.
  bool used_exact_fallback = false;
};

struct LllOptions {
  bool track_transform = false;
  // |det| of the lattice if the caller already knows it; otherwise it is the
  // diagonal product (triangular input) or computed by elimination.
  std::optional<BigInt> abs_det;
  // Stop as soon as the first row meets the short-vector bound. The rest of
  // the basis is then not necessarily reduced.
  bool first_vector_only = false;
};

// Production reduction. Gram-Schmidt data is kept in floating point (x87
// extended, then MPFR at a precision that grows with the dimension); every
// basis operation is exact integer arithmetic. The result is checked exactly
// against the short-vector bound and, on failure, finished by the exact
// integral reduction.
// Throws InputError if the rows are linearly dependent.
ReducedBasis lll_reduce(const LatticeBasis& basis, LllOptions options = {});

// Integral LLL with Lovasz parameter exactly 3/4. No floating point at all.
ReducedBasis lll_reduce_exact(const LatticeBasis& basis, LllOptions options = {});

// ||w||^(2d) <= 2^(d(d-1)/2) * det^2, with w the first row of `rows`.
bool first_vector_within_bound(const IntMatrix& rows, const BigInt& abs_det);

// Same lattice (the solved transform is an integer matrix of determinant
// +-1) and the first vector is nonzero and within the bound.
bool verify_reduction(const LatticeBasis& input, const ReducedBasis& output);

// Exact determinant by fraction-free elimination.
BigInt determinant(const IntMatrix& m);

// The matrix U with output = U * input, if it is integral.
std::optional<IntMatrix> solve_transform(const IntMatrix& input, const IntMatrix& output);

BigInt squared_norm(const IntVector& v);

}  // namespace rpdiv
