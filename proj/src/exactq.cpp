#include "pennycdv/exactq.hpp"

#include <cmath>

#include "pennycdv/errors.hpp"

namespace pennycdv {

double QuadRational::to_double() const {
    return a.convert_to<double>() + b.convert_to<double>() * std::sqrt(3.0);
}

QuadRational QuadRational::operator/(const QuadRational& o) const {
    // 1/(a + b*sqrt(3)) = (a - b*sqrt(3)) / (a^2 - 3 b^2); the norm is zero
    // only for the zero element since sqrt(3) is irrational.
    if (o.is_zero()) throw ParameterError("QuadRational: division by zero");
    const Rational norm = o.a * o.a - 3 * o.b * o.b;
    const QuadRational conj(o.a / norm, -o.b / norm);
    return *this * conj;
}

int exact_rank(const ExactMatrix& m) {
    const int rows = m.rows();
    const int cols = m.cols();
    ExactMatrix w = m;

    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (!w(r, col).is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = col; c < cols; ++c) std::swap(w(pivot, c), w(rank, c));

        const QuadRational p = w(rank, col);
        for (int r = rank + 1; r < rows; ++r) {
            if (w(r, col).is_zero()) continue;
            const QuadRational f = w(r, col) / p;
            w(r, col) = QuadRational();
            for (int c = col + 1; c < cols; ++c) w(r, c) = w(r, c) - f * w(rank, c);
        }
        ++rank;
    }
    return rank;
}

std::string rational_to_string(const Rational& r) {
    return r.str();
}

Rational rational_from_string(const std::string& s) {
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw IoError("cannot parse rational literal: " + s);
    }
}

}  // namespace pennycdv
