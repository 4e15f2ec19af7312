#ifndef URNPHYLO_RATIONAL_HPP
#define URNPHYLO_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace urnphylo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Serialized form used in reports, e.g. "-23/420" or "3".
std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

// Small dense matrix over exact rationals. Row-major, sized at construction.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  RationalMatrix operator+(const RationalMatrix& rhs) const;
  RationalMatrix operator-(const RationalMatrix& rhs) const;
  RationalMatrix scaled(const Rational& c) const;
  RationalMatrix transposed() const;

  // Gauss-Jordan; throws std::domain_error on a singular matrix.
  RationalMatrix inverse() const;

  bool operator==(const RationalMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }
  bool operator!=(const RationalMatrix& rhs) const { return !(*this == rhs); }

  bool is_symmetric() const;
  std::vector<std::vector<double>> to_doubles() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace urnphylo

#endif
