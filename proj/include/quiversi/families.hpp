#pragma once

#include <string>
#include <vector>

#include "quiversi/schofield.hpp"
#include "quiversi/stability.hpp"

namespace quiversi {

/// Two vertices x, y and two parallel arrows a, b from x to y.
inline Quiver kronecker_quiver() {
    return Quiver({"x", "y"}, {{"a", "x", "y"}, {"b", "x", "y"}});
}

/// The indecomposable of dimension (1,2): a maps to the first coordinate,
/// b to the second. Semistable exactly for positive multiples of (2,-1).
inline Representation kronecker_V() {
    std::map<std::string, RationalMatrix> maps;
    maps.emplace("a", RationalMatrix(2, 1, {Rat(1), Rat(0)}));
    maps.emplace("b", RationalMatrix(2, 1, {Rat(0), Rat(1)}));
    return Representation(kronecker_quiver(), DimVector({"x", "y"}, {1, 2}), std::move(maps));
}

/// The indecomposable of dimension (2,1): a projects the first coordinate,
/// b the second. Semistable exactly for positive multiples of (1,-2).
inline Representation kronecker_W() {
    std::map<std::string, RationalMatrix> maps;
    maps.emplace("a", RationalMatrix(1, 2, {Rat(1), Rat(0)}));
    maps.emplace("b", RationalMatrix(1, 2, {Rat(0), Rat(1)}));
    return Representation(kronecker_quiver(), DimVector({"x", "y"}, {2, 1}), std::move(maps));
}

/// The zigzag quiver on vertices 1..n: every even vertex is a source with
/// double arrows to both neighbours (ids "a:<tail>:<head>:<1|2>").
inline Quiver build_qn(long n) {
    if (n < 3) throw ArgumentError("need n >= 3");
    std::vector<std::string> vertices;
    for (long v = 1; v <= n; ++v) vertices.push_back(std::to_string(v));
    std::vector<Arrow> arrows;
    auto bundle = [&](long tail, long head) {
        for (int k = 1; k <= 2; ++k)
            arrows.push_back({"a:" + std::to_string(tail) + ":" + std::to_string(head) + ":" +
                                  std::to_string(k),
                              std::to_string(tail), std::to_string(head)});
    };
    for (long i = 2; i <= n; i += 2) {
        bundle(i, i - 1);
        if (i + 1 <= n) bundle(i, i + 1);
    }
    return Quiver(std::move(vertices), std::move(arrows));
}

/// The exponential lower-bound instance: the direct sum of one Kronecker
/// indecomposable per neighbouring vertex pair, with dimension vector
/// (2,3,...,3,1), the n-1 summand dimension vectors (the rows of the
/// bidiagonal 2/1 stack), the minimal weight (-1,2,-4,...,(-2)^(n-1)) on
/// the stability ray, and its sigma-norm 2^n - 2.
struct QnBundle {
    Quiver quiver;
    DimVector alpha;
    Representation rep;
    std::vector<DimVector> factor_dims;
    Weight expected_weight;
    Int expected_norm;
};

inline QnBundle build_qn_bundle(long n) {
    Quiver q = build_qn(n);
    const std::vector<std::string>& verts = q.vertices();

    std::vector<Int> avals(n);
    for (long j = 1; j <= n; ++j) avals[j - 1] = (j == 1) ? 2 : (j == n ? 1 : 3);
    DimVector alpha(verts, avals);

    std::vector<DimVector> factor_dims;
    for (long f = 1; f <= n - 1; ++f) {
        std::vector<Int> vals(n, Int(0));
        vals[f - 1] = 2;
        vals[f] = 1;
        factor_dims.emplace_back(verts, vals);
    }

    std::vector<Int> wvals(n);
    for (long j = 1; j <= n; ++j) {
        Int mag = int_pow(Int(2), static_cast<unsigned long>(j - 1));
        wvals[j - 1] = (j % 2 == 1) ? -mag : mag;
    }
    Weight expected_weight(verts, wvals);

    // Vertex j's coordinates are ordered [summand j-1 part, summand j part];
    // each arrow matrix therefore carries a single Kronecker block.
    auto self_offset = [&](long j) { return j >= 2 ? 1 : 0; };
    std::map<std::string, RationalMatrix> maps;
    auto alpha_at = [&](long j) { return static_cast<std::size_t>(avals[j - 1].get_ui()); };
    for (long i = 2; i <= n; i += 2) {
        // summand i-1 spans {i-1, i}: source i (1 dim), sink i-1 (2 dims)
        for (int k = 1; k <= 2; ++k) {
            RationalMatrix m(alpha_at(i - 1), alpha_at(i));
            m.at(static_cast<std::size_t>(self_offset(i - 1) + (k - 1)), 0) = 1;
            maps.emplace("a:" + std::to_string(i) + ":" + std::to_string(i - 1) + ":" +
                             std::to_string(k),
                         std::move(m));
        }
        if (i + 1 <= n) {
            // summand i spans {i, i+1}: source i (2 dims), sink i+1 (1 dim)
            for (int k = 1; k <= 2; ++k) {
                RationalMatrix m(alpha_at(i + 1), alpha_at(i));
                m.at(0, static_cast<std::size_t>(self_offset(i) + (k - 1))) = 1;
                maps.emplace("a:" + std::to_string(i) + ":" + std::to_string(i + 1) + ":" +
                                 std::to_string(k),
                             std::move(m));
            }
        }
    }
    Representation rep(q, alpha, std::move(maps));

    return QnBundle{std::move(q), std::move(alpha), std::move(rep), std::move(factor_dims),
                    std::move(expected_weight),
                    int_pow(Int(2), static_cast<unsigned long>(n)) - 2};
}

/// Dimension vectors of the proper nonzero subrepresentations of summand f
/// (1-based), written on the full vertex set.
inline std::vector<DimVector> qn_factor_subrep_dims(const QnBundle& bundle, long f) {
    const std::vector<std::string>& verts = bundle.quiver.vertices();
    const long n = static_cast<long>(verts.size());
    auto make = [&](long vertex, long value, long vertex2, long value2) {
        std::vector<Int> vals(n, Int(0));
        vals[vertex - 1] = value;
        if (vertex2 > 0) vals[vertex2 - 1] = value2;
        return DimVector(verts, vals);
    };
    if (f % 2 == 1) {
        // tall type: sink at f carries the 2-dimensional space
        return {make(f, 1, 0, 0), make(f, 2, 0, 0)};
    }
    // wide type: sink at f+1; a 1-dim source subspace drags the whole sink
    return {make(f + 1, 1, 0, 0), make(f, 1, f + 1, 1)};
}

struct QnCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct QnReport {
    std::vector<QnCheck> checks;
    bool all_passed = true;
    bool semistable_checked = false;
};

/// Verifies the computable facts about the family instance: the kernel
/// weight of the summand-dimension stack, its sigma-norm 2^n - 2, the
/// coordinate size bound, King cone membership per summand, and (opt-in,
/// small n only: the pencil has size (2^n-3)(2^n-2)) randomized
/// semistability of the whole representation at the expected weight.
inline QnReport verify_qn(long n, long trials = 8, std::uint64_t seed = 0,
                          bool include_semistable = false) {
    QnBundle bundle = build_qn_bundle(n);
    QnReport report;
    auto add = [&](const std::string& name, bool passed, const std::string& detail) {
        report.checks.push_back({name, passed, detail});
        if (!passed) report.all_passed = false;
    };

    RayWeightResult ray = ray_weight(bundle.alpha, bundle.factor_dims);
    add("ray_weight", ray.rank_ok && ray.weight == bundle.expected_weight,
        ray.rank_ok ? "kernel weight matches the expected alternating powers of two"
                    : "summand dimension stack is rank-deficient");

    Int norm = sigma_norm(bundle.expected_weight, bundle.alpha);
    add("sigma_norm", norm == bundle.expected_norm,
        "|sigma|_alpha = " + norm.get_str() + ", expected " + bundle.expected_norm.get_str());

    WeightBoundCheck wb = weight_bound_check(bundle.expected_weight, bundle.alpha);
    add("coordinate_bound", wb.coord_ok,
        "max |sigma(x)| = " + wb.max_coord.get_str() + " vs " + to_string(wb.coordinate_bound));

    bool cones_ok = true;
    for (long f = 1; f <= n - 1; ++f)
        cones_ok = cones_ok && cone_contains(bundle.expected_weight, bundle.factor_dims[f - 1],
                                             qn_factor_subrep_dims(bundle, f));
    add("summand_cones", cones_ok, "King inequalities hold on every summand");

    if (include_semistable) {
        report.semistable_checked = true;
        Verdict v = is_semistable(bundle.rep, bundle.expected_weight, trials, seed);
        add("semistable", v.decision == Decision::Semistable,
            "decision = " + to_string(v.decision));
    }
    return report;
}

}  // namespace quiversi
