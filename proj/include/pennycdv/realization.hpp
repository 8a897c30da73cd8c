#ifndef PENNYCDV_REALIZATION_HPP
#define PENNYCDV_REALIZATION_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pennycdv/exactq.hpp"
#include "pennycdv/graph.hpp"
#include "pennycdv/numkernel.hpp"

namespace pennycdv {

/// Planar set of unit-diameter disk centers, optionally with exact
/// coordinates over Q(sqrt(3)). Lengths are in units of the disk diameter.
struct Realization {
    std::string name;
    std::vector<std::array<double, 2>> points;
    std::optional<std::vector<std::array<QuadRational, 2>>> exact;

    int size() const { return static_cast<int>(points.size()); }
};

enum class Family { PathArc, PathCollinear, UnionPathsArc, CyclePolygon, Flower, LatticeStrip };

struct GenSpec {
    Family family = Family::PathArc;
    int n = 0;         // total point count (ignored for Flower when k given)
    int k = 0;         // Flower petal count, in {4, 5, 6}
    int segments = 2;  // UnionPathsArc segment count
};

const char* family_id(Family f);
std::optional<Family> family_from_id(const std::string& id);

/// Construct one of the named families. Every output passes packing
/// validation and produces the intended contact graph. Throws
/// ParameterError below the family minimum.
Realization generate_realization(const GenSpec& spec);

/// Throws PackingError if two centers are closer than 1 - tau_contact.
void validate_packing(const Realization& r, const TolerancePolicy& policy);

/// Pairs whose squared distance falls in the dead zone
/// (1 + tau_contact, 1 + 10 tau_contact): kept as non-edges but flagged.
struct ContactReport {
    std::vector<std::pair<int, int>> dead_zone_pairs;
};

/// Edge {i,j} iff |dist^2 - 1| <= tau_contact. Throws PackingError on
/// overlap. Uses exact squared distances when the realization carries them.
Graph contact_graph(const Realization& r, const TolerancePolicy& policy,
                    ContactReport* report = nullptr);

struct CircumcircleReport {
    bool concyclic = false;
    std::array<double, 2> center{0.0, 0.0};
    double radius_sq = 0.0;
    double max_deviation = 0.0;
    bool degenerate_fit = false;  // collinear or otherwise rank-deficient fit
};

/// Least-squares circle fit; concyclic iff the worst point-to-circle
/// deviation stays within tau_contact. Requires n >= 3.
CircumcircleReport circumcircle_classify(const Realization& r, const TolerancePolicy& policy);

/// Harborth's edge bound for penny graphs: floor(3n - sqrt(12n - 3)),
/// evaluated in integer arithmetic.
long long harborth_bound(long long n);

// Realization JSON: {"name": ..., "points": [[x,y],...], "exact": [...]}
// Points are emitted with 17 significant digits; exact coordinates are
// a + b*sqrt(3) with numerator/denominator strings.
Realization read_realization(std::istream& in);
Realization read_realization_file(const std::string& path);
void write_realization(const Realization& r, std::ostream& out);
void write_realization_file(const Realization& r, const std::string& path);

}  // namespace pennycdv

#endif
