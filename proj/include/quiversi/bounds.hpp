#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quiversi/quiver.hpp"

namespace quiversi {

/// beta <= max{2, (3/8) r gamma^2}: the generator-degree bound from a
/// null-cone degree bound, r = Krull dimension.
inline Rat beta_from_gamma(const Int& r, const Rat& gamma) {
    if (r < 0) throw ArgumentError("r must be >= 0");
    if (gamma < 0) throw ArgumentError("gamma must be >= 0");
    Rat value = make_rat(Int(3) * r, Int(8)) * gamma * gamma;
    return value > 2 ? value : Rat(2);
}

/// Every closed-form bound attached to (Q, alpha), as exact rationals.
struct BoundsReport {
    bool degenerate = false;  // n == 1, or alpha identically zero
    std::size_t n = 0;
    Int l1 = 0;
    Int l2sq = 0;
    Rat null_cone_weight_bound;  // |sigma|_alpha cap for weights defining the null cone
    Rat gamma_bound;             // total-degree cap; always n * null_cone_weight_bound
    Int dim_rep = 0;             // dim Rep(Q, alpha) = sum over arrows of alpha(ha) alpha(ta)
    Rat r_cap;                   // (||alpha||_1^2 - ||alpha||_2^2) / 2, integer-valued
    Int r_used = 0;
    Rat main_bound;              // beta_from_gamma(r_used, gamma_bound)
    Rat independent_bound;       // arrow-count-free bound (r replaced by r_cap)
};

/// Default r_used = min(dim Rep(Q, alpha), floor(r_cap)): the sharper of the
/// two certified Krull-dimension caps. Override with a known dimension.
inline BoundsReport bounds_report(const Quiver& q, const DimVector& alpha,
                                  std::optional<Int> r_override = std::nullopt) {
    if (!alpha.same_domain(detail::VertexMap<true>::zero(q.vertices())))
        throw DomainMismatchError("alpha domain differs from the quiver");
    BoundsReport report;
    report.n = q.vertex_count();
    const Norms norms = vector_norms(alpha);
    report.l1 = norms.l1;
    report.l2sq = norms.l2sq;

    if (report.n < 2 || norms.l1 == 0) {
        // No nonzero weights can matter: every bound degenerates to 0.
        report.degenerate = true;
        return report;
    }

    const unsigned long n = static_cast<unsigned long>(report.n);
    const Int nm1 = Int(static_cast<long>(n - 1));
    report.null_cone_weight_bound =
        make_rat(int_pow(norms.l1, 2 * n), Int(4) * int_pow(nm1, 2 * n - 2));
    report.gamma_bound = Rat(Int(static_cast<long>(n))) * report.null_cone_weight_bound;

    for (const Arrow& a : q.arrows()) report.dim_rep += alpha.at(a.head) * alpha.at(a.tail);
    report.r_cap = make_rat(norms.l1 * norms.l1 - norms.l2sq, Int(2));
    report.r_used = r_override ? *r_override : std::min(report.dim_rep, floor_to_int(report.r_cap));
    if (report.r_used < 0) throw ArgumentError("r must be >= 0");

    report.main_bound = beta_from_gamma(report.r_used, report.gamma_bound);
    report.independent_bound = make_rat(Int(3), Int(256)) *
                               (Rat(norms.l1 * norms.l1) - Rat(norms.l2sq)) *
                               Rat(Int(static_cast<long>(n * n))) *
                               make_rat(int_pow(norms.l1, 4 * n), int_pow(nm1, 4 * n - 4));
    return report;
}

struct MatrixSiBounds {
    Int gamma_lower;           // n floor(sqrt(n^2 - 1))
    Int gamma_upper;           // n (n - 1)
    Int beta_bound_m;          // m n^4
    Int beta_bound_universal;  // n^6, uniform in m
};

/// Null-cone and generator degree bounds for m-tuples of n x n matrices
/// under the two-sided special linear action.
inline MatrixSiBounds matrix_si_bounds(const Int& n, const Int& m) {
    if (n < 1 || m < 1) throw ArgumentError("need n >= 1 and m >= 1");
    return {n * isqrt(n * n - 1), n * (n - 1), m * int_pow(n, 4), int_pow(n, 6)};
}

/// Generator degree bound |sigma|_alpha^5 for the weight-multiples subring.
inline Int subring_degree_bound(const Weight& sigma, const DimVector& alpha) {
    return int_pow(sigma_norm(sigma, alpha), 5);
}

/// Weyl polarization quiver: every arrow bundle i -> j of Q is replaced by
/// alpha(i) alpha(j) parallel arrows. Only pairs already joined by an arrow
/// are amplified (polarization acts per bundle; inventing new bundles would
/// change the ring). Arrow ids are "pol:<i>:<j>:<k>" with i, j the 1-based
/// topological labels.
inline Quiver polarize(const Quiver& q, const DimVector& alpha) {
    if (!alpha.same_domain(detail::VertexMap<true>::zero(q.vertices())))
        throw DomainMismatchError("alpha domain differs from the quiver");
    std::set<std::pair<std::size_t, std::size_t>> bundles;
    for (const Arrow& a : q.arrows())
        bundles.emplace(q.topo_index(a.tail), q.topo_index(a.head));

    std::vector<std::string> vertices = q.topological_order();
    std::vector<Arrow> arrows;
    for (const auto& [ti, tj] : bundles) {
        const std::string& tail = vertices[ti - 1];
        const std::string& head = vertices[tj - 1];
        const Int multiplicity = alpha.at(tail) * alpha.at(head);
        for (Int k = 1; k <= multiplicity; ++k)
            arrows.push_back({"pol:" + std::to_string(ti) + ":" + std::to_string(tj) + ":" +
                                  k.get_str(),
                              tail, head});
    }
    return Quiver(std::move(vertices), std::move(arrows));
}

}  // namespace quiversi
