#ifndef PENNYCDV_ERRORS_HPP
#define PENNYCDV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pennycdv {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied parameters (family minimums, malformed policies, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Input file cannot be read or parsed.
struct IoError : Error {
    using Error::Error;
};

// Two disks with overlapping interiors; carries the offending pair.
struct PackingError : Error {
    PackingError(int i_, int j_, double dist_sq_, const std::string& msg)
        : Error(msg), i(i_), j(j_), dist_sq(dist_sq_) {}
    int i;
    int j;
    double dist_sq;
};

// Eigensolver did not converge within the iteration cap.
struct ConvergenceError : Error {
    using Error::Error;
};

// A numeric rank decision failed its gap audit; never guessed over.
struct AmbiguousRankError : Error {
    AmbiguousRankError(const std::string& msg, double ratio)
        : Error(msg), gap_ratio(ratio) {}
    double gap_ratio;
};

// Symmetric zero-diagonal matrix failed the EDM test.
struct NotAnEdmError : Error {
    using Error::Error;
};

// Rank-based and e^T w-based spherical verdicts disagree.
struct ClassificationConflictError : Error {
    using Error::Error;
};

// Instance contradicts a structural fact the theory guarantees
// (e.g. a disconnected complement without the flower layout).
struct StructureError : Error {
    using Error::Error;
};

}  // namespace pennycdv

#endif
