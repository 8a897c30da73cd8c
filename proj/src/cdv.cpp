#include "pennycdv/cdv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pennycdv/errors.hpp"

namespace pennycdv {

SymMatrix build_candidate(const SymMatrix& d) {
    const int n = d.order();
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, 1.0 - d(i, j));
    return m;
}

M1Result check_m1(const SymMatrix& m, const Graph& contact, const TolerancePolicy& policy) {
    policy.validate();
    const int n = m.order();
    if (contact.node_count() != n)
        throw ParameterError("check_m1: matrix order and graph order differ");
    M1Result res;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = m(i, j);
            const bool fine = contact.has_edge(i, j) ? std::abs(v) <= policy.tau_contact
                                                     : v < -policy.tau_contact;
            if (!fine) {
                res.ok = false;
                res.offender_i = i;
                res.offender_j = j;
                return res;
            }
        }
    }
    res.ok = true;
    return res;
}

M2Result check_m2(const SymMatrix& m, const TolerancePolicy& policy) {
    const EigenDecomp eig = sym_eigen(m);
    const RankDecision rd = numeric_rank(eig, policy);
    M2Result res;
    res.min_eigenvalue = eig.values.front();
    res.negative_count = 0;
    for (double v : eig.values)
        if (v < -rd.tau) ++res.negative_count;
    res.ok = (res.negative_count == 1);
    if (eig.order() >= 2) {
        res.lambda2 = eig.values[1];
        res.lambda2_in_zero_cluster = std::abs(res.lambda2) <= rd.tau;
    }
    return res;
}

M3DirectResult check_m3_direct(const SymMatrix& m, const Graph& contact,
                               const TolerancePolicy& policy) {
    policy.validate();
    const int n = m.order();
    if (contact.node_count() != n)
        throw ParameterError("check_m3_direct: matrix order and graph order differ");

    const auto edge_list = contact.edges();
    const int unknowns = static_cast<int>(edge_list.size());
    M3DirectResult res;
    res.unknowns = unknowns;
    if (unknowns == 0) {
        res.rank = 0;
        res.nullity = 0;
        res.decision.gap_ok = true;
        res.decision.gap_ratio = std::numeric_limits<double>::infinity();
        return res;
    }

    // column e = {i,j}: the matrix M(e_i e_j^T + e_j e_i^T) flattened,
    // i.e. (a,b) entry = M_ai [b=j] + M_aj [b=i]
    Matrix t(n * n, unknowns);
    for (int e = 0; e < unknowns; ++e) {
        const auto [i, j] = edge_list[e];
        for (int a = 0; a < n; ++a) {
            t(a * n + j, e) += m(a, i);
            t(a * n + i, e) += m(a, j);
        }
    }
    SymMatrix gram(unknowns);
    for (int e = 0; e < unknowns; ++e)
        for (int f = e; f < unknowns; ++f) {
            double s = 0.0;
            for (int row = 0; row < n * n; ++row) s += t(row, e) * t(row, f);
            gram.set(e, f, s);
        }

    const EigenDecomp eig = sym_eigen(gram);
    res.decision = numeric_rank(eig, policy);
    res.rank = res.decision.rank;
    res.nullity = unknowns - res.rank;
    return res;
}

M3EliminationResult check_m3_elimination(const Edm& dm, const Graph& contact,
                                         const TolerancePolicy& policy) {
    policy.validate();
    const int n = dm.order();
    if (contact.node_count() != n)
        throw ParameterError("check_m3_elimination: matrix order and graph order differ");

    M3EliminationResult res;
    const DegeneracyResult peel = degeneracy_ordering(contact, 3);
    if (!peel.ok) {
        res.ok = false;
        res.failure = "contact graph is not 3-degenerate (stuck on " +
                      std::to_string(peel.stuck.size()) + " nodes)";
        return res;
    }

    std::vector<bool> peeled(n, false);
    int remaining_edges = contact.edge_count();
    for (size_t step = 0; step < peel.order.size(); ++step) {
        const int node = peel.order[step];
        std::vector<int> live;
        for (int j : contact.neighbors(node))
            if (!peeled[j]) live.push_back(j);
        if (live.size() > 3) {
            res.ok = false;
            res.failure = "peeling step " + std::to_string(step) + " at node " +
                          std::to_string(node) + " has " + std::to_string(live.size()) +
                          " live unknowns";
            return res;
        }
        if (!live.empty()) {
            bool independent;
            try {
                if (live.size() == 3)
                    independent =
                        three_columns_independent(dm, live[0], live[1], live[2], policy);
                else
                    independent = column_subset_rank(dm, live, policy) ==
                                  static_cast<int>(live.size());
            } catch (const AmbiguousRankError&) {
                res.ok = false;
                res.failure = "peeling step " + std::to_string(step) + " at node " +
                              std::to_string(node) + ": ambiguous column rank";
                return res;
            }
            if (!independent) {
                res.ok = false;
                res.failure = "peeling step " + std::to_string(step) + " at node " +
                              std::to_string(node) + ": dependent column set";
                return res;
            }
            res.eliminated += static_cast<int>(live.size());
            remaining_edges -= static_cast<int>(live.size());
        }
        peeled[node] = true;
    }
    if (remaining_edges != 0) {
        res.ok = false;
        res.failure = "elimination left " + std::to_string(remaining_edges) + " unknowns";
        return res;
    }
    res.ok = true;
    return res;
}

namespace {

struct CertifiedInstance {
    CdvCertificate cert;
    EdmClassification cls;
    NullspaceReport nullrel;
    bool lambda2_ok = false;
    bool rank_m_equals_rank_d = false;
    int rank_m = 0;
};

// Certify M = E - D against the given contact graph: conditions M1-M3,
// corank with gap diagnostics, and the Lemma 2.11/2.12 rank identity.
CertifiedInstance certify(const Edm& dm, const Graph& contact, const TolerancePolicy& policy,
                          const VerifyOptions& opts) {
    CertifiedInstance out;
    const int n = dm.order();

    out.cls = classify(dm, policy);
    out.cert.m = build_candidate(dm.d);

    out.cert.m1_ok = check_m1(out.cert.m, contact, policy).ok;

    const M2Result m2 = check_m2(out.cert.m, policy);
    out.cert.m2_ok = m2.ok;
    out.cert.negative_eigs = m2.negative_count;
    out.lambda2_ok = m2.lambda2_in_zero_cluster;

    const EigenDecomp eig_m = sym_eigen(out.cert.m);
    const RankDecision rank_m = numeric_rank(eig_m, policy);
    out.rank_m = rank_m.rank;
    out.cert.corank = n - rank_m.rank;
    out.cert.gap.min_eigenvalue = eig_m.values.front();
    out.cert.gap.zero_cluster_size = n - rank_m.rank;
    out.cert.gap.gap_ratio = rank_m.gap_ratio;
    out.cert.gap.gap_ok = rank_m.gap_ok;

    const M3EliminationResult elim = check_m3_elimination(dm, contact, policy);
    out.cert.sap_elimination_ok = elim.ok;

    if (opts.always_run_direct_sap || n <= 12) {
        const M3DirectResult direct = check_m3_direct(out.cert.m, contact, policy);
        out.cert.sap_direct_ran = true;
        out.cert.sap_nullity_direct = direct.nullity;
        out.cert.sap_method_agreement =
            direct.decision.gap_ok && ((direct.nullity == 0) == elim.ok);
        out.cert.m3_ok = (direct.nullity == 0) && elim.ok && direct.decision.gap_ok;
    } else {
        out.cert.sap_direct_ran = false;
        out.cert.sap_nullity_direct = -1;
        out.cert.sap_method_agreement = true;  // single method, nothing to disagree
        out.cert.m3_ok = elim.ok;
    }

    out.rank_m_equals_rank_d = (rank_m.rank == out.cls.rank_d);
    out.nullrel = nullspace_relation(dm.d, policy);

    out.cert.mu_lower_bound =
        (out.cert.m1_ok && out.cert.m2_ok && out.cert.m3_ok) ? out.cert.corank : 0;
    return out;
}

Realization sub_realization(const Realization& r, const std::vector<int>& nodes) {
    Realization s;
    s.name = r.name + "/petals";
    for (int v : nodes) s.points.push_back(r.points[v]);
    if (r.exact) {
        std::vector<std::array<QuadRational, 2>> ex;
        for (int v : nodes) ex.push_back((*r.exact)[v]);
        s.exact = std::move(ex);
    }
    return s;
}

}  // namespace

VerifyResult verify_theorem(const Realization& r, const TolerancePolicy& policy,
                            const VerifyOptions& opts) {
    policy.validate();
    const int n = r.size();
    if (n < 5)
        throw ParameterError("theorem verification requires n >= 5 (got n = " +
                             std::to_string(n) + ")");
    if (opts.require_exact && !r.exact)
        throw ParameterError("exact verification requested but the realization carries "
                             "no exact coordinates");

    validate_packing(r, policy);
    ContactReport contact_rep;
    const Graph g = contact_graph(r, policy, &contact_rep);
    const Graph gbar = complement(g);

    VerifyResult vr;
    vr.report.name = r.name;
    vr.report.n = n;
    vr.report.family = classify_family(g);
    vr.report.dead_zone_pairs = contact_rep.dead_zone_pairs;

    const Edm dm = edm_from_points(r);
    if (dm.exact) {
        vr.report.exact_rank_d = exact_rank(*dm.exact);
        const RankDecision full = numeric_rank(sym_eigen(dm.d), policy);
        vr.report.exact_matches_numeric = full.gap_ok && (full.rank == vr.report.exact_rank_d);
    }

    const auto comps = connected_components(gbar);
    if (comps.size() == 1) {
        const CertifiedInstance inst = certify(dm, g, policy, opts);
        vr.cert = inst.cert;
        vr.cert.reduced = false;

        vr.report.kind = inst.cls.kind;
        vr.report.embedding_dim = inst.cls.embedding_dim;
        vr.report.rank_d = inst.cls.rank_d;
        vr.report.etw = inst.cls.etw;
        vr.report.rho_sq = inst.cls.rho_sq;
        if (inst.cls.kind == EdmKind::Spherical)
            vr.report.rho_margin = inst.cls.rho_sq - 0.5;
        vr.report.lambda2_in_zero_cluster = inst.lambda2_ok;
        vr.report.rank_m_equals_rank_d = inst.rank_m_equals_rank_d;
        vr.report.nullrel = inst.nullrel;

        const bool family_bound = vr.report.family == GraphFamily::Path ||
                                  vr.report.family == GraphFamily::UnionOfPaths ||
                                  vr.report.family == GraphFamily::Cycle;
        vr.report.expected_corank = family_bound ? n - 3 : n - 4;
        vr.report.corank_matches = (vr.cert.corank == vr.report.expected_corank);

        vr.report.theorem_ok = vr.cert.m1_ok && vr.cert.m2_ok && vr.cert.m3_ok &&
                               vr.cert.sap_method_agreement && vr.cert.gap.gap_ok &&
                               vr.report.corank_matches && inst.lambda2_ok &&
                               inst.rank_m_equals_rank_d && inst.nullrel.equal &&
                               vr.report.exact_matches_numeric;
    } else {
        // Lemma 2.6: a disconnected complement forces n in {5,6,7} with one
        // disk touching all others; certify the reduced petal instance.
        if (comps.size() != 2)
            throw StructureError("complement graph has " + std::to_string(comps.size()) +
                                 " components; Lemma structure requires exactly 2");
        const std::vector<int>* singleton = nullptr;
        const std::vector<int>* rest = nullptr;
        for (const auto& c : comps)
            (c.size() == 1 ? singleton : rest) = &c;
        if (singleton == nullptr || rest == nullptr || rest->size() + 1 != static_cast<size_t>(n))
            throw StructureError("disconnected complement without an isolated node");
        const int center = (*singleton)[0];
        if (g.degree(center) != n - 1)
            throw StructureError("complement-isolated node " + std::to_string(center) +
                                 " does not touch all other disks");
        if (n < 5 || n > 7)
            throw StructureError("disconnected complement with n = " + std::to_string(n) +
                                 " contradicts the kissing-number bound");

        const Realization petals = sub_realization(r, *rest);
        const Graph gp = g.induced(*rest);
        const Edm dmp = edm_from_points(petals);

        const CertifiedInstance inst = certify(dmp, gp, policy, opts);
        vr.cert = inst.cert;
        vr.cert.reduced = true;
        vr.report.isolated_node = center;

        if (inst.cls.kind != EdmKind::Spherical)
            throw StructureError("reduced petal EDM is not spherical; contradicts the "
                                 "flower geometry");
        if (std::abs(inst.cls.rho_sq - 0.5) <= 1e-9)
            throw StructureError("reduced petal EDM sits on the rho^2 = 1/2 boundary; "
                                 "rank transfer not certified");

        vr.report.kind = inst.cls.kind;
        vr.report.embedding_dim = inst.cls.embedding_dim;
        vr.report.rank_d = inst.cls.rank_d;
        vr.report.etw = inst.cls.etw;
        vr.report.rho_sq = inst.cls.rho_sq;
        vr.report.rho_margin = inst.cls.rho_sq - 0.5;
        vr.report.lambda2_in_zero_cluster = inst.lambda2_ok;
        vr.report.rank_m_equals_rank_d = inst.rank_m_equals_rank_d;
        vr.report.nullrel = inst.nullrel;

        // corank(M') = (n-1) - 3 = n-4; the isolated node contributes mu = 0,
        // so the component-max rule keeps the petal bound.
        vr.report.expected_corank = n - 4;
        vr.report.corank_matches = (vr.cert.corank == vr.report.expected_corank);
        const bool rank3 = (inst.rank_m == 3);

        vr.report.theorem_ok = vr.cert.m1_ok && vr.cert.m2_ok && vr.cert.m3_ok &&
                               vr.cert.sap_method_agreement && vr.cert.gap.gap_ok &&
                               vr.report.corank_matches && rank3 && inst.lambda2_ok &&
                               inst.rank_m_equals_rank_d && inst.nullrel.equal &&
                               vr.report.exact_matches_numeric;
    }

    // mu sanity: never above n-1, and below n-1 when the complement is not complete
    if (vr.cert.mu_lower_bound > n - 1 ||
        (g.edge_count() > 0 && vr.cert.mu_lower_bound > n - 2))
        throw StructureError("certified bound exceeds the universal mu limits");
    return vr;
}

nlohmann::ordered_json certificate_json(const VerifyResult& vr) {
    using nlohmann::ordered_json;
    const CdvCertificate& c = vr.cert;
    const TheoremReport& t = vr.report;

    ordered_json j;
    j["name"] = t.name;
    j["n"] = t.n;
    j["family"] = family_name(t.family);
    j["reduced"] = c.reduced;
    if (c.reduced) j["isolated_node"] = t.isolated_node;
    j["conditions"] = {{"m1", c.m1_ok}, {"m2", c.m2_ok}, {"m3", c.m3_ok}};
    j["negative_eigenvalues"] = c.negative_eigs;
    j["corank"] = c.corank;
    j["expected_corank"] = t.expected_corank;
    j["mu_lower_bound"] = c.mu_lower_bound;

    ordered_json cls;
    cls["kind"] = (t.kind == EdmKind::Spherical) ? "spherical" : "nonspherical";
    cls["embedding_dim"] = t.embedding_dim;
    cls["rank_d"] = t.rank_d;
    if (t.exact_rank_d >= 0) {
        cls["exact_rank_d"] = t.exact_rank_d;
        cls["exact_matches_numeric"] = t.exact_matches_numeric;
    }
    if (t.kind == EdmKind::Spherical) {
        cls["rho_sq"] = t.rho_sq;
        cls["rho_sq_margin_over_half"] = t.rho_margin;
    }
    cls["etw"] = t.etw;
    j["classification"] = cls;

    j["eigenvalue_summary"] = {{"min_eigenvalue", c.gap.min_eigenvalue},
                               {"zero_cluster_size", c.gap.zero_cluster_size},
                               {"gap_ratio", c.gap.gap_ratio},
                               {"gap_ok", c.gap.gap_ok},
                               {"lambda2_in_zero_cluster", t.lambda2_in_zero_cluster}};

    ordered_json sap;
    sap["elimination_ok"] = c.sap_elimination_ok;
    sap["direct_ran"] = c.sap_direct_ran;
    if (c.sap_direct_ran) sap["direct_nullity"] = c.sap_nullity_direct;
    sap["method_agreement"] = c.sap_method_agreement;
    j["sap"] = sap;

    j["nullspace"] = {{"dim_null_d", t.nullrel.dim_null_d},
                      {"dim_null_m", t.nullrel.dim_null_m},
                      {"equal", t.nullrel.equal},
                      {"expected_equal", t.nullrel.expected_equal},
                      {"max_projection_residual", t.nullrel.max_projection_residual}};
    j["rank_m_equals_rank_d"] = t.rank_m_equals_rank_d;
    if (!t.dead_zone_pairs.empty()) {
        ordered_json dz = ordered_json::array();
        for (const auto& [a, b] : t.dead_zone_pairs) dz.push_back({a, b});
        j["dead_zone_pairs"] = dz;
    }
    j["theorem_ok"] = t.theorem_ok;
    return j;
}

}  // namespace pennycdv
