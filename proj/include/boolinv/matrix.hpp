#ifndef BOOLINV_MATRIX_HPP_
#define BOOLINV_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace boolinv {

  /// Dense matrix of exact rationals, row-major.
  class Matrix {
   public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : _rows(rows), _cols(cols), _data(rows * cols, Rational(0)) {}

    Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
      _rows = rows.size();
      _cols = _rows == 0 ? 0 : rows.begin()->size();
      for (auto const& row : rows) {
        if (row.size() != _cols) {
          throw ArgumentError("matrix rows of different lengths");
        }
        _data.insert(_data.end(), row.begin(), row.end());
      }
    }

    static Matrix identity(std::size_t n) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
      }
      return m;
    }

    std::size_t rows() const noexcept {
      return _rows;
    }

    std::size_t cols() const noexcept {
      return _cols;
    }

    Rational& operator()(std::size_t i, std::size_t j) {
      return _data[i * _cols + j];
    }

    Rational const& operator()(std::size_t i, std::size_t j) const {
      return _data[i * _cols + j];
    }

    Rational trace() const {
      Rational t = 0;
      for (std::size_t i = 0; i < std::min(_rows, _cols); ++i) {
        t += (*this)(i, i);
      }
      return t;
    }

    /// Transpose; the adjoint for real entries.
    Matrix adjoint() const {
      Matrix m(_cols, _rows);
      for (std::size_t i = 0; i < _rows; ++i) {
        for (std::size_t j = 0; j < _cols; ++j) {
          m(j, i) = (*this)(i, j);
        }
      }
      return m;
    }

    /// Zeroes every off-diagonal entry.
    Matrix diagonal() const {
      Matrix m(_rows, _cols);
      for (std::size_t i = 0; i < std::min(_rows, _cols); ++i) {
        m(i, i) = (*this)(i, i);
      }
      return m;
    }

    bool is_zero() const {
      for (auto const& q : _data) {
        if (q != 0) {
          return false;
        }
      }
      return true;
    }

    std::vector<Rational> const& data() const noexcept {
      return _data;
    }

    friend Matrix operator+(Matrix const& a, Matrix const& b) {
      check_same_shape(a, b);
      Matrix m = a;
      for (std::size_t k = 0; k < m._data.size(); ++k) {
        m._data[k] += b._data[k];
      }
      return m;
    }

    friend Matrix operator-(Matrix const& a, Matrix const& b) {
      check_same_shape(a, b);
      Matrix m = a;
      for (std::size_t k = 0; k < m._data.size(); ++k) {
        m._data[k] -= b._data[k];
      }
      return m;
    }

    friend Matrix operator*(Rational const& c, Matrix const& a) {
      Matrix m = a;
      for (auto& q : m._data) {
        q *= c;
      }
      return m;
    }

    friend Matrix operator*(Matrix const& a, Matrix const& b) {
      if (a._cols != b._rows) {
        throw ArgumentError("matrix product of incompatible shapes");
      }
      Matrix m(a._rows, b._cols);
      for (std::size_t i = 0; i < a._rows; ++i) {
        for (std::size_t k = 0; k < a._cols; ++k) {
          auto const& aik = a(i, k);
          if (aik == 0) {
            continue;
          }
          for (std::size_t j = 0; j < b._cols; ++j) {
            m(i, j) += aik * b(k, j);
          }
        }
      }
      return m;
    }

    friend bool operator==(Matrix const& a, Matrix const& b) {
      return a._rows == b._rows && a._cols == b._cols && a._data == b._data;
    }

   private:
    static void check_same_shape(Matrix const& a, Matrix const& b) {
      if (a._rows != b._rows || a._cols != b._cols) {
        throw ArgumentError("matrices of different shapes");
      }
    }

    std::size_t           _rows = 0;
    std::size_t           _cols = 0;
    std::vector<Rational> _data;
  };

  /// An element of a direct sum of full matrix algebras.
  class BlockMatrix {
   public:
    BlockMatrix() = default;

    explicit BlockMatrix(std::vector<std::size_t> const& sizes) {
      for (auto k : sizes) {
        _blocks.emplace_back(k, k);
      }
    }

    explicit BlockMatrix(std::vector<Matrix> blocks) : _blocks(std::move(blocks)) {}

    static BlockMatrix identity(std::vector<std::size_t> const& sizes) {
      std::vector<Matrix> blocks;
      for (auto k : sizes) {
        blocks.push_back(Matrix::identity(k));
      }
      return BlockMatrix(std::move(blocks));
    }

    std::size_t block_count() const noexcept {
      return _blocks.size();
    }

    Matrix& block(std::size_t o) {
      return _blocks.at(o);
    }

    Matrix const& block(std::size_t o) const {
      return _blocks.at(o);
    }

    std::vector<std::size_t> sizes() const {
      std::vector<std::size_t> out;
      for (auto const& b : _blocks) {
        out.push_back(b.rows());
      }
      return out;
    }

    BlockMatrix adjoint() const {
      return map([](Matrix const& m) { return m.adjoint(); });
    }

    BlockMatrix diagonal() const {
      return map([](Matrix const& m) { return m.diagonal(); });
    }

    bool is_zero() const {
      for (auto const& b : _blocks) {
        if (!b.is_zero()) {
          return false;
        }
      }
      return true;
    }

    /// All entries, block after block.
    std::vector<Rational> flatten() const {
      std::vector<Rational> out;
      for (auto const& b : _blocks) {
        out.insert(out.end(), b.data().begin(), b.data().end());
      }
      return out;
    }

    friend BlockMatrix operator+(BlockMatrix const& a, BlockMatrix const& b) {
      return zip(a, b, [](Matrix const& x, Matrix const& y) { return x + y; });
    }

    friend BlockMatrix operator-(BlockMatrix const& a, BlockMatrix const& b) {
      return zip(a, b, [](Matrix const& x, Matrix const& y) { return x - y; });
    }

    friend BlockMatrix operator*(BlockMatrix const& a, BlockMatrix const& b) {
      return zip(a, b, [](Matrix const& x, Matrix const& y) { return x * y; });
    }

    friend BlockMatrix operator*(Rational const& c, BlockMatrix const& a) {
      return a.map([&c](Matrix const& m) { return c * m; });
    }

    friend bool operator==(BlockMatrix const& a, BlockMatrix const& b) {
      return a._blocks == b._blocks;
    }

   private:
    template <typename F>
    BlockMatrix map(F&& f) const {
      std::vector<Matrix> blocks;
      for (auto const& b : _blocks) {
        blocks.push_back(f(b));
      }
      return BlockMatrix(std::move(blocks));
    }

    template <typename F>
    static BlockMatrix zip(BlockMatrix const& a, BlockMatrix const& b, F&& f) {
      if (a._blocks.size() != b._blocks.size()) {
        throw ArgumentError("block matrices with different block structure");
      }
      std::vector<Matrix> blocks;
      for (std::size_t o = 0; o < a._blocks.size(); ++o) {
        blocks.push_back(f(a._blocks[o], b._blocks[o]));
      }
      return BlockMatrix(std::move(blocks));
    }

    std::vector<Matrix> _blocks;
  };

}  // namespace boolinv

#endif  // BOOLINV_MATRIX_HPP_
