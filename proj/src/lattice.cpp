#include "pinwheel/lattice.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace pinwheel {

namespace {

void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }

void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

// row_i += k * row_j
void add_row(IntMatrix& m, std::size_t i, std::size_t j, const BigInt& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < m[i].size(); ++c) m[i][c] += k * m[j][c];
}

void add_col(IntMatrix& m, std::size_t i, std::size_t j, const BigInt& k) {
  if (k == 0) return;
  for (auto& row : m) row[i] += k * row[j];
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (auto& x : m[i]) x = -x;
}

BigInt floor_quotient(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::size_t columns(const IntMatrix& a) { return a.empty() ? 0 : a.front().size(); }

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = columns(b);
  if (columns(a) != k) throw std::invalid_argument("matrix shapes do not match");
  IntMatrix c(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(columns(a), std::vector<BigInt>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.size(), n = columns(a);
  SmithForm s;
  s.d = a;
  s.u = identity_matrix(m);
  s.v = identity_matrix(n);
  auto& d = s.d;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest non-zero entry of the trailing block becomes the pivot
    auto find_pivot = [&]() -> std::optional<std::pair<std::size_t, std::size_t>> {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (d[i][j] != 0 && (!best || abs(d[i][j]) < abs(d[best->first][best->second]))) best = {{i, j}};
        }
      }
      return best;
    };
    auto p = find_pivot();
    if (!p) break;

    for (;;) {
      swap_rows(d, t, p->first);
      swap_rows(s.u, t, p->first);
      swap_cols(d, t, p->second);
      swap_cols(s.v, t, p->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        const BigInt q = floor_quotient(d[i][t], d[t][t]);
        add_row(d, i, t, -q);
        add_row(s.u, i, t, -q);
        if (d[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        const BigInt q = floor_quotient(d[t][j], d[t][t]);
        add_col(d, j, t, -q);
        add_col(s.v, j, t, -q);
        if (d[t][j] != 0) clean = false;
      }
      if (clean) {
        // the pivot must divide the whole trailing block
        std::optional<std::size_t> bad_row;
        for (std::size_t i = t + 1; i < m && !bad_row; ++i) {
          for (std::size_t j = t + 1; j < n; ++j) {
            if (d[i][j] % d[t][t] != 0) {
              bad_row = i;
              break;
            }
          }
        }
        if (!bad_row) break;
        add_row(d, t, *bad_row, 1);
        add_row(s.u, t, *bad_row, 1);
      }
      // restart from the smallest remainder in row t / column t
      p = {{t, t}};
      for (std::size_t i = t; i < m; ++i) {
        if (d[i][t] != 0 && abs(d[i][t]) < abs(d[p->first][p->second])) p = {{i, t}};
      }
      for (std::size_t j = t; j < n; ++j) {
        if (d[t][j] != 0 && abs(d[t][j]) < abs(d[p->first][p->second])) p = {{t, j}};
      }
    }
    if (d[t][t] < 0) {
      negate_row(d, t);
      negate_row(s.u, t);
    }
    s.diagonal.push_back(d[t][t]);
  }
  return s;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.size(), n = columns(h);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    // Euclid down the column until a single non-zero entry remains at `row`
    for (;;) {
      std::optional<std::size_t> piv;
      for (std::size_t i = row; i < m; ++i) {
        if (h[i][col] != 0 && (!piv || abs(h[i][col]) < abs(h[*piv][col]))) piv = i;
      }
      if (!piv) break;
      swap_rows(h, row, *piv);
      bool done = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (h[i][col] == 0) continue;
        add_row(h, i, row, -floor_quotient(h[i][col], h[row][col]));
        if (h[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (h[row][col] == 0) continue;
    if (h[row][col] < 0) negate_row(h, row);
    for (std::size_t i = 0; i < row; ++i) add_row(h, i, row, -floor_quotient(h[i][col], h[row][col]));
    ++row;
  }
  h.resize(row);
  return h;
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  return hermite_normal_form(a) == hermite_normal_form(b);
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t n = columns(a);
  const SmithForm s = smith_normal_form(a);
  IntMatrix basis;
  for (std::size_t j = s.rank(); j < n; ++j) {
    std::vector<BigInt> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = s.v[i][j];
    basis.push_back(std::move(x));
  }
  return basis;
}

RatMatrix rational_kernel(RatMatrix a, std::size_t n_columns) {
  const std::size_t m = a.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n_columns && row < m; ++col) {
    std::optional<std::size_t> piv;
    for (std::size_t i = row; i < m; ++i) {
      if (sgn(a[i][col]) != 0) {
        piv = i;
        break;
      }
    }
    if (!piv) continue;
    std::swap(a[row], a[*piv]);
    const Rational inv = 1 / a[row][col];
    for (std::size_t j = col; j < n_columns; ++j) a[row][j] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || sgn(a[i][col]) == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = col; j < n_columns; ++j) {
        if (sgn(a[row][j]) != 0) a[i][j] -= f * a[row][j];
      }
    }
    pivot_cols.push_back(col);
    ++row;
  }
  RatMatrix basis;
  std::vector<bool> is_pivot(n_columns, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < n_columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(n_columns, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) x[pivot_cols[r]] = -a[r][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

BigInt determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (columns(a) != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t i = k + 1;
      while (i < n && a[i][k] == 0) ++i;
      if (i == n) return 0;
      std::swap(a[k], a[i]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace pinwheel
