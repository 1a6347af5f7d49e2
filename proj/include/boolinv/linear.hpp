#ifndef BOOLINV_LINEAR_HPP_
#define BOOLINV_LINEAR_HPP_

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace boolinv {

  struct Echelon {
    Matrix                   reduced;
    std::vector<std::size_t> pivots;
  };

  /// Reduced row echelon form over the rationals.
  inline Echelon rref(Matrix m) {
    Echelon     out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
      std::size_t p = row;
      while (p < m.rows() && m(p, col) == 0) {
        ++p;
      }
      if (p == m.rows()) {
        continue;
      }
      if (p != row) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
          std::swap(m(p, j), m(row, j));
        }
      }
      Rational inv = 1 / m(row, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        m(row, j) *= inv;
      }
      for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i == row || m(i, col) == 0) {
          continue;
        }
        Rational f = m(i, col);
        for (std::size_t j = col; j < m.cols(); ++j) {
          m(i, j) -= f * m(row, j);
        }
      }
      out.pivots.push_back(col);
      ++row;
    }
    out.reduced = std::move(m);
    return out;
  }

  inline std::size_t rank(Matrix const& m) {
    return rref(m).pivots.size();
  }

  /// [A | b] as one matrix.
  inline Matrix augment(Matrix const& A, std::vector<Rational> const& b) {
    if (b.size() != A.rows()) {
      throw ArgumentError("right-hand side has the wrong length");
    }
    Matrix m(A.rows(), A.cols() + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
      for (std::size_t j = 0; j < A.cols(); ++j) {
        m(i, j) = A(i, j);
      }
      m(i, A.cols()) = b[i];
    }
    return m;
  }

  /// The unique solution of Ax = b, or nothing when there is none or more
  /// than one.
  inline std::optional<std::vector<Rational>> solve_unique(Matrix const&                A,
                                                           std::vector<Rational> const& b) {
    auto e = rref(augment(A, b));
    if (!e.pivots.empty() && e.pivots.back() == A.cols()) {
      return std::nullopt;  // inconsistent
    }
    if (e.pivots.size() != A.cols()) {
      return std::nullopt;
    }
    std::vector<Rational> x(A.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      x[e.pivots[i]] = e.reduced(i, A.cols());
    }
    return x;
  }

  inline constexpr std::size_t kMaxVertexEnumerationVariables = 16;

  /// The vertices of {x >= 0 : Ax = b}, found by brute force over bases:
  /// the vertices are exactly the nonnegative basic solutions, obtained by
  /// choosing r = rank A independent columns and zero elsewhere. Sorted
  /// lexicographically, without repeats.
  inline std::vector<std::vector<Rational>>
  enumerate_vertices(Matrix const& A, std::vector<Rational> const& b) {
    auto n = A.cols();
    if (n > kMaxVertexEnumerationVariables) {
      throw SizeLimitError("vertex enumeration over " + std::to_string(n)
                               + " variables",
                           kMaxVertexEnumerationVariables);
    }
    auto e = rref(augment(A, b));
    if (!e.pivots.empty() && e.pivots.back() == n) {
      return {};
    }
    auto                  r = e.pivots.size();
    Matrix                R(r, n);
    std::vector<Rational> rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        R(i, j) = e.reduced(i, j);
      }
      rhs[i] = e.reduced(i, n);
    }
    std::vector<std::vector<Rational>> out;
    std::vector<std::size_t>           basis(r);
    for (std::size_t k = 0; k < r; ++k) {
      basis[k] = k;
    }
    while (true) {
      Matrix sub(r, r);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
          sub(i, k) = R(i, basis[k]);
        }
      }
      auto x = solve_unique(sub, rhs);
      if (x && std::all_of(x->begin(), x->end(), [](Rational const& q) { return q >= 0; })) {
        std::vector<Rational> v(n, Rational(0));
        for (std::size_t k = 0; k < r; ++k) {
          v[basis[k]] = (*x)[k];
        }
        out.push_back(std::move(v));
      }
      // next r-subset in lexicographic order
      std::size_t k = r;
      while (k > 0 && basis[k - 1] == n - r + k - 1) {
        --k;
      }
      if (k == 0) {
        break;
      }
      ++basis[k - 1];
      for (std::size_t j = k; j < r; ++j) {
        basis[j] = basis[j - 1] + 1;
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Dimension of the affine hull of a nonempty point set.
  inline std::size_t affine_dimension(std::vector<std::vector<Rational>> const& points) {
    if (points.size() <= 1) {
      return 0;
    }
    auto   n = points[0].size();
    Matrix D(points.size() - 1, n);
    for (std::size_t i = 1; i < points.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        D(i - 1, j) = points[i][j] - points[0][j];
      }
    }
    return rank(D);
  }

}  // namespace boolinv

#endif  // BOOLINV_LINEAR_HPP_
