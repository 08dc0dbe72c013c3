#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dividekit {

// Error with a stable code naming the failed check and the offending element.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

// Dense square integer matrix, int64 entries. Sizes here are tiny (mu x mu).
class IntMat {
 public:
  IntMat() = default;
  explicit IntMat(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0) {}
  static IntMat identity(int n) {
    IntMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  int size() const { return n_; }
  std::int64_t& operator()(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
  std::int64_t operator()(int r, int c) const { return a_[static_cast<size_t>(r) * n_ + c]; }
  bool operator==(const IntMat& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const IntMat& o) const { return !(*this == o); }

  IntMat transpose() const {
    IntMat t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMat operator*(const IntMat& o) const {
    IntMat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        std::int64_t v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < n_; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }

  IntMat operator-(const IntMat& o) const {
    IntMat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(i, j) = (*this)(i, j) - o(i, j);
    return r;
  }

  IntMat operator+(const IntMat& o) const {
    IntMat r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(i, j) = (*this)(i, j) + o(i, j);
    return r;
  }

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const {
    std::vector<std::int64_t> y(n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  std::int64_t trace() const {
    std::int64_t t = 0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  IntMat pow(int e) const {
    IntMat r = identity(n_), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

 private:
  int n_ = 0;
  std::vector<std::int64_t> a_;
};

// Solves U x = b for upper triangular U with diagonal entries +-1.
// Stays in integers throughout.
std::vector<std::int64_t> solve_upper_unit(const IntMat& u, const std::vector<std::int64_t>& b);

// X with U X = B, column by column.
IntMat solve_upper_unit(const IntMat& u, const IntMat& b);

// Characteristic polynomial coefficients c_0..c_n of det(tI - M),
// c[n] = 1 (monic). Faddeev-LeVerrier; exact over the integers.
std::vector<std::int64_t> char_poly(const IntMat& m);

// Exact rational with int64 storage and 128-bit intermediates.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;
  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize128(num, den); }

  static void normalize128(std::int64_t& n, std::int64_t& d) {
    __int128 nn = n, dd = d;
    reduce(nn, dd, n, d);
  }
  static void reduce(__int128 nn, __int128 dd, std::int64_t& n, std::int64_t& d) {
    if (dd == 0) fail("Internal", "rational with zero denominator");
    if (dd < 0) { nn = -nn; dd = -dd; }
    __int128 a = nn < 0 ? -nn : nn, b = dd;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { nn /= a; dd /= a; }
    if (nn == 0) dd = 1;
    if (nn > INT64_MAX || nn < INT64_MIN || dd > INT64_MAX)
      fail("Internal", "rational overflow");
    n = static_cast<std::int64_t>(nn);
    d = static_cast<std::int64_t>(dd);
  }
  static Rat make(__int128 nn, __int128 dd) {
    Rat r;
    reduce(nn, dd, r.num, r.den);
    return r;
  }
  friend Rat operator+(Rat a, Rat b) {
    return make(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator-(Rat a, Rat b) {
    return make(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator*(Rat a, Rat b) {
    return make(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rat operator/(Rat a, Rat b) {
    return make(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  friend bool operator<(Rat a, Rat b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(Rat a, Rat b) { return b < a; }
  friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rat a, Rat b) { return !(a == b); }
  friend bool operator<=(Rat a, Rat b) { return !(b < a); }
  friend bool operator>=(Rat a, Rat b) { return !(a < b); }
  int sign() const { return num > 0 ? 1 : (num < 0 ? -1 : 0); }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// FNV-1a over bytes, hex string. Used for input digests in reports.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace dividekit
