#pragma once

// Exact integer and rational linear algebra: Smith and Hermite normal forms,
// kernels over Z and Q.

#include <vector>

#include "pinwheel/exact.hpp"

namespace pinwheel {

using IntMatrix = std::vector<std::vector<BigInt>>;
using RatMatrix = std::vector<std::vector<Rational>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
std::size_t columns(const IntMatrix& a);

/// U * A * V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal of D.
struct SmithForm {
  IntMatrix u, d, v;
  std::vector<BigInt> diagonal;  // non-zero invariant factors, non-negative
  std::size_t rank() const { return diagonal.size(); }
};
SmithForm smith_normal_form(const IntMatrix& a);

/// Row-style Hermite normal form of the lattice spanned by the rows of a:
/// echelon, positive pivots, entries above each pivot reduced into [0, pivot),
/// zero rows dropped. Two row sets span the same lattice iff their forms agree.
IntMatrix hermite_normal_form(const IntMatrix& a);
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

/// Z-basis (as rows) of {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Q-basis (as rows) of {x in Q^n : A x = 0}, from the reduced row echelon form.
RatMatrix rational_kernel(RatMatrix a, std::size_t n_columns);

/// Determinant by Bareiss elimination; a must be square.
BigInt determinant(IntMatrix a);

}  // namespace pinwheel
