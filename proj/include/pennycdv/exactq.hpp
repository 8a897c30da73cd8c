#ifndef PENNYCDV_EXACTQ_HPP
#define PENNYCDV_EXACTQ_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pennycdv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Element of the field Q(sqrt(3)): value = a + b*sqrt(3) with rational a, b.
/// Arithmetic is exact and closed; equality is exact. Triangular-lattice
/// coordinates are (p + q*sqrt(3))/2 with rational p, q, so every squared
/// distance between lattice points stays inside this field.
struct QuadRational {
    Rational a;
    Rational b;

    QuadRational() = default;
    QuadRational(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
    static QuadRational from_int(long v) { return QuadRational(Rational(v), Rational(0)); }

    bool is_zero() const { return a == 0 && b == 0; }
    double to_double() const;

    QuadRational operator-() const { return QuadRational(-a, -b); }
    QuadRational operator+(const QuadRational& o) const { return {a + o.a, b + o.b}; }
    QuadRational operator-(const QuadRational& o) const { return {a - o.a, b - o.b}; }
    QuadRational operator*(const QuadRational& o) const {
        return {a * o.a + 3 * b * o.b, a * o.b + b * o.a};
    }
    QuadRational operator/(const QuadRational& o) const;

    bool operator==(const QuadRational& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QuadRational& o) const { return !(*this == o); }
};

/// Dense matrix over Q(sqrt(3)).
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    QuadRational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const QuadRational& operator()(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<QuadRational> a_;
};

/// Rank over Q(sqrt(3)) by exact Gaussian elimination. Total function:
/// no tolerances, no failure modes.
int exact_rank(const ExactMatrix& m);

std::string rational_to_string(const Rational& r);
Rational rational_from_string(const std::string& s);

}  // namespace pennycdv

#endif
