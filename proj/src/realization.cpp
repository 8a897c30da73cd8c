#include "pennycdv/realization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pennycdv/errors.hpp"

namespace pennycdv {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sq_dist(const std::array<double, 2>& p, const std::array<double, 2>& q) {
    const double dx = p[0] - q[0];
    const double dy = p[1] - q[1];
    return dx * dx + dy * dy;
}

// Exact squared distance; stays inside Q(sqrt(3)).
QuadRational exact_sq_dist(const std::array<QuadRational, 2>& p,
                           const std::array<QuadRational, 2>& q) {
    const QuadRational dx = p[0] - q[0];
    const QuadRational dy = p[1] - q[1];
    return dx * dx + dy * dy;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const char* family_id(Family f) {
    switch (f) {
        case Family::PathArc: return "path-arc";
        case Family::PathCollinear: return "path-collinear";
        case Family::UnionPathsArc: return "union-paths";
        case Family::CyclePolygon: return "cycle";
        case Family::Flower: return "flower";
        case Family::LatticeStrip: return "lattice-strip";
    }
    return "?";
}

std::optional<Family> family_from_id(const std::string& id) {
    for (Family f : {Family::PathArc, Family::PathCollinear, Family::UnionPathsArc,
                     Family::CyclePolygon, Family::Flower, Family::LatticeStrip})
        if (id == family_id(f)) return f;
    return std::nullopt;
}

Realization generate_realization(const GenSpec& spec) {
    Realization r;
    switch (spec.family) {
        case Family::PathArc: {
            const int n = spec.n;
            if (n < 2) throw ParameterError("path-arc requires n >= 2");
            // Radius rho = n keeps every non-consecutive chord above 1 and
            // rho^2 far from the 1/2 boundary.
            const double rho = n;
            const double theta = 2.0 * std::asin(1.0 / (2.0 * rho));
            r.name = "path-arc-" + std::to_string(n);
            for (int j = 0; j < n; ++j)
                r.points.push_back({rho * std::cos(j * theta), rho * std::sin(j * theta)});
            break;
        }
        case Family::PathCollinear: {
            const int n = spec.n;
            if (n < 2) throw ParameterError("path-collinear requires n >= 2");
            r.name = "path-collinear-" + std::to_string(n);
            std::vector<std::array<QuadRational, 2>> exact;
            for (int i = 0; i < n; ++i) {
                r.points.push_back({static_cast<double>(i), 0.0});
                exact.push_back({QuadRational::from_int(i), QuadRational()});
            }
            r.exact = std::move(exact);
            break;
        }
        case Family::UnionPathsArc: {
            const int n = spec.n;
            const int s = spec.segments;
            if (s < 2) throw ParameterError("union-paths requires >= 2 segments");
            if (n < s) throw ParameterError("union-paths requires n >= segments");
            const double rho = n;
            const double theta = 2.0 * std::asin(1.0 / (2.0 * rho));
            r.name = "union-paths-" + std::to_string(n) + "x" + std::to_string(s);
            // sizes as even as possible, larger segments first
            double angle = 0.0;
            int placed = 0;
            for (int seg = 0; seg < s; ++seg) {
                const int size = n / s + (seg < n % s ? 1 : 0);
                for (int j = 0; j < size; ++j) {
                    r.points.push_back({rho * std::cos(angle), rho * std::sin(angle)});
                    if (j + 1 < size) angle += theta;
                }
                placed += size;
                // 3x the contact angle separates consecutive segments
                angle += 3.0 * theta;
            }
            (void)placed;
            break;
        }
        case Family::CyclePolygon: {
            const int n = spec.n;
            if (n < 3) throw ParameterError("cycle requires n >= 3");
            const double rho = 1.0 / (2.0 * std::sin(kPi / n));
            r.name = "cycle-" + std::to_string(n);
            for (int j = 0; j < n; ++j) {
                const double a = 2.0 * kPi * j / n;
                r.points.push_back({rho * std::cos(a), rho * std::sin(a)});
            }
            break;
        }
        case Family::Flower: {
            const int k = (spec.k != 0) ? spec.k : spec.n - 1;
            if (k < 4 || k > 6)
                throw ParameterError("flower requires k in {4, 5, 6}");
            if (spec.k != 0 && spec.n != 0 && spec.n != k + 1)
                throw ParameterError("flower: n must equal k + 1");
            r.name = "flower-" + std::to_string(k);
            r.points.push_back({0.0, 0.0});
            for (int j = 0; j < k; ++j) {
                const double a = 2.0 * kPi * j / k;
                r.points.push_back({std::cos(a), std::sin(a)});
            }
            break;
        }
        case Family::LatticeStrip: {
            const int n = spec.n;
            if (n < 2) throw ParameterError("lattice-strip requires n >= 2");
            r.name = "lattice-strip-" + std::to_string(n);
            const int top = (n + 1) / 2;
            const double h = std::sqrt(3.0) / 2.0;
            std::vector<std::array<QuadRational, 2>> exact;
            const QuadRational half(Rational(1, 2), Rational(0));
            const QuadRational half_sqrt3(Rational(0), Rational(1, 2));
            for (int i = 0; i < top; ++i) {
                r.points.push_back({static_cast<double>(i), 0.0});
                exact.push_back({QuadRational::from_int(i), QuadRational()});
            }
            for (int i = 0; i < n - top; ++i) {
                r.points.push_back({i + 0.5, h});
                exact.push_back({QuadRational::from_int(i) + half, half_sqrt3});
            }
            r.exact = std::move(exact);
            break;
        }
    }
    return r;
}

void validate_packing(const Realization& r, const TolerancePolicy& policy) {
    policy.validate();
    const int n = r.size();
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(r.points[i][0]) || !std::isfinite(r.points[i][1]))
            throw ParameterError("realization has non-finite coordinates");
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double d2 = sq_dist(r.points[i], r.points[j]);
            if (d2 < 1.0 - policy.tau_contact) {
                std::ostringstream msg;
                msg << "packing violation pair (" << i << "," << j
                    << "): squared distance " << d2 << " < 1";
                throw PackingError(i, j, d2, msg.str());
            }
        }
}

Graph contact_graph(const Realization& r, const TolerancePolicy& policy,
                    ContactReport* report) {
    policy.validate();
    const int n = r.size();
    const bool use_exact = r.exact.has_value();
    Graph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d2 = use_exact
                                  ? exact_sq_dist((*r.exact)[i], (*r.exact)[j]).to_double()
                                  : sq_dist(r.points[i], r.points[j]);
            if (d2 < 1.0 - policy.tau_contact) {
                std::ostringstream msg;
                msg << "packing violation pair (" << i << "," << j
                    << "): squared distance " << d2 << " < 1";
                throw PackingError(i, j, d2, msg.str());
            }
            if (std::abs(d2 - 1.0) <= policy.tau_contact) {
                g.add_edge(i, j);
            } else if (d2 <= 1.0 + 10.0 * policy.tau_contact && report != nullptr) {
                report->dead_zone_pairs.emplace_back(i, j);
            }
        }
    }
    return g;
}

CircumcircleReport circumcircle_classify(const Realization& r, const TolerancePolicy& policy) {
    policy.validate();
    const int n = r.size();
    if (n < 3) throw ParameterError("circumcircle_classify requires n >= 3");

    // Kasa fit: minimize sum (2 c.p + t - |p|^2)^2 over (cx, cy, t);
    // then rho^2 = t + |c|^2.
    SymMatrix nrm(3);
    double rhs[3] = {0.0, 0.0, 0.0};
    double acc[3][3] = {};
    for (const auto& p : r.points) {
        const double row[3] = {2.0 * p[0], 2.0 * p[1], 1.0};
        const double b = p[0] * p[0] + p[1] * p[1];
        for (int i = 0; i < 3; ++i) {
            rhs[i] += row[i] * b;
            for (int j = i; j < 3; ++j) acc[i][j] += row[i] * row[j];
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) nrm.set(i, j, acc[i][j]);

    const EigenDecomp eig = sym_eigen(nrm);
    const RankDecision rd = numeric_rank(eig, policy);

    CircumcircleReport rep;
    rep.degenerate_fit = rd.rank < 3;

    // pseudoinverse solve (exact inverse when full rank)
    double u[3] = {0.0, 0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        if (std::abs(eig.values[k]) <= rd.tau) continue;
        double qb = 0.0;
        for (int i = 0; i < 3; ++i) qb += eig.vectors(i, k) * rhs[i];
        const double coef = qb / eig.values[k];
        for (int i = 0; i < 3; ++i) u[i] += coef * eig.vectors(i, k);
    }
    rep.center = {u[0], u[1]};
    const double rho_sq = u[2] + u[0] * u[0] + u[1] * u[1];
    if (rho_sq <= 0.0) {
        rep.degenerate_fit = true;
        rep.concyclic = false;
        rep.radius_sq = 0.0;
        rep.max_deviation = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.radius_sq = rho_sq;
    const double rho = std::sqrt(rho_sq);
    double worst = 0.0;
    for (const auto& p : r.points)
        worst = std::max(worst, std::abs(std::sqrt(sq_dist(p, rep.center)) - rho));
    rep.max_deviation = worst;
    rep.concyclic = !rep.degenerate_fit && worst <= policy.tau_contact;
    return rep;
}

long long harborth_bound(long long n) {
    if (n < 1) throw ParameterError("harborth_bound requires n >= 1");
    const long long v = 12 * n - 3;
    long long s = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (s * s > v) --s;
    while ((s + 1) * (s + 1) <= v) ++s;
    return (s * s == v) ? 3 * n - s : 3 * n - s - 1;
}

namespace {

nlohmann::json exact_coord_to_json(const QuadRational& q) {
    nlohmann::json j;
    j["a_num"] = rational_to_string(Rational(boost::multiprecision::numerator(q.a)));
    j["a_den"] = rational_to_string(Rational(boost::multiprecision::denominator(q.a)));
    j["b_num"] = rational_to_string(Rational(boost::multiprecision::numerator(q.b)));
    j["b_den"] = rational_to_string(Rational(boost::multiprecision::denominator(q.b)));
    return j;
}

Rational rational_from_json_pair(const nlohmann::json& j, const char* num_key,
                                 const char* den_key) {
    auto read_part = [&](const char* key) -> BigInt {
        const auto& v = j.at(key);
        if (v.is_string()) return BigInt(v.get<std::string>());
        if (v.is_number_integer()) return BigInt(v.get<long long>());
        throw IoError(std::string("exact coordinate field ") + key +
                      " must be a string or integer");
    };
    const BigInt num = read_part(num_key);
    const BigInt den = read_part(den_key);
    if (den == 0) throw IoError("exact coordinate with zero denominator");
    return Rational(num, den);
}

QuadRational exact_coord_from_json(const nlohmann::json& j) {
    return QuadRational(rational_from_json_pair(j, "a_num", "a_den"),
                        rational_from_json_pair(j, "b_num", "b_den"));
}

}  // namespace

void write_realization(const Realization& r, std::ostream& out) {
    // hand-rolled writer: stable byte-for-byte output, 17 significant digits
    out << "{\n  \"name\": " << nlohmann::json(r.name).dump() << ",\n  \"points\": [\n";
    for (int i = 0; i < r.size(); ++i) {
        out << "    [" << fmt17(r.points[i][0]) << ", " << fmt17(r.points[i][1]) << "]";
        out << (i + 1 < r.size() ? ",\n" : "\n");
    }
    out << "  ]";
    if (r.exact) {
        out << ",\n  \"exact\": [\n";
        for (int i = 0; i < r.size(); ++i) {
            const auto& e = (*r.exact)[i];
            out << "    [" << exact_coord_to_json(e[0]).dump() << ", "
                << exact_coord_to_json(e[1]).dump() << "]";
            out << (i + 1 < r.size() ? ",\n" : "\n");
        }
        out << "  ]";
    }
    out << "\n}\n";
}

void write_realization_file(const Realization& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_realization(r, out);
    if (!out) throw IoError("write failed: " + path);
}

Realization read_realization(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError(std::string("invalid realization JSON: ") + e.what());
    }
    Realization r;
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw IoError("realization JSON must be an object with a \"points\" array");
    r.name = j.value("name", std::string("unnamed"));
    for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw IoError("each point must be a [x, y] number pair");
        r.points.push_back({p[0].get<double>(), p[1].get<double>()});
        const auto& q = r.points.back();
        if (!std::isfinite(q[0]) || !std::isfinite(q[1]))
            throw IoError("non-finite coordinate in realization");
    }
    if (r.points.empty()) throw IoError("realization has no points");
    if (j.contains("exact")) {
        const auto& ex = j["exact"];
        if (!ex.is_array() || ex.size() != r.points.size())
            throw IoError("\"exact\" must parallel the points array");
        std::vector<std::array<QuadRational, 2>> exact;
        for (const auto& e : ex) {
            if (!e.is_array() || e.size() != 2)
                throw IoError("each exact coordinate must be a pair");
            exact.push_back({exact_coord_from_json(e[0]), exact_coord_from_json(e[1])});
        }
        // exact coordinates must reproduce the floating ones
        for (size_t i = 0; i < exact.size(); ++i) {
            if (std::abs(exact[i][0].to_double() - r.points[i][0]) > 1e-9 ||
                std::abs(exact[i][1].to_double() - r.points[i][1]) > 1e-9)
                throw IoError("exact coordinates disagree with floating points at index " +
                              std::to_string(i));
        }
        r.exact = std::move(exact);
    }
    return r;
}

Realization read_realization_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open realization file: " + path);
    return read_realization(in);
}

}  // namespace pennycdv
