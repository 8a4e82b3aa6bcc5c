#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quiversi/exact_linalg.hpp"
#include "quiversi/quiver.hpp"
#include "quiversi/schofield.hpp"

namespace quiversi {

/// Random t entries are drawn uniformly from [1, 2^20]. The Schwartz-Zippel
/// failure bound per trial is (matrix size) / 2^20; raise kSampleBits if you
/// work far beyond desk scale.
constexpr unsigned kSampleBits = 20;

enum class Decision { Semistable, ProbablyUnstable, InNullConeProbably, NotInNullCone };

inline std::string to_string(Decision d) {
    switch (d) {
        case Decision::Semistable: return "Semistable";
        case Decision::ProbablyUnstable: return "ProbablyUnstable";
        case Decision::InNullConeProbably: return "InNullConeProbably";
        case Decision::NotInNullCone: return "NotInNullCone";
    }
    return "?";
}

/// A replayable witness: rebuilding the weight-(d*sigma) pencil and taking
/// det at t must reproduce det_value != 0.
struct Certificate {
    Weight sigma;
    Int d;                 // blow-up exponent actually used
    std::vector<Int> t;    // sample point, one entry per indeterminate
    Rat det_value;
};

struct Verdict {
    Decision decision;
    std::optional<Certificate> certificate;
    long trials = 0;        // trials requested per weight
    long trials_used = 0;   // trials actually evaluated
    Rat failure_probability_bound = Rat(0);
    std::uint64_t seed = 0;
    /// True when the negative verdict is exact (identically-zero pencil
    /// detected structurally), not merely probable.
    bool exact = false;
    long weights_tested = 0;  // null-cone search only
};

/// The linear part of King's criterion: sigma(alpha) = 0 and
/// sigma(beta) <= 0 for every supplied subrepresentation dimension vector.
/// A cone-membership primitive, not a full semistability decision.
inline bool cone_contains(const Weight& sigma, const DimVector& alpha,
                          const std::vector<DimVector>& betas) {
    if (weight_apply(sigma, alpha) != 0) return false;
    for (const DimVector& beta : betas)
        if (weight_apply(sigma, beta) > 0) return false;
    return true;
}

namespace detail {

inline Weight scale_weight(const Weight& sigma, const Int& d) {
    std::vector<Int> vals(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) vals[i] = d * sigma.value(i);
    return Weight(sigma.vertices(), vals);
}

inline std::vector<Int> sample_point(std::uint64_t seed, std::uint64_t stream, std::size_t m) {
    auto rng = make_rng(seed, stream);
    std::vector<Int> t(m);
    for (Int& c : t) c = Int(static_cast<unsigned long>((rng() & ((1ull << kSampleBits) - 1)) + 1));
    return t;
}

inline std::vector<Rat> to_rat(const std::vector<Int>& t) {
    std::vector<Rat> out;
    out.reserve(t.size());
    for (const Int& x : t) out.emplace_back(x);
    return out;
}

}  // namespace detail

/// Randomized sigma-semistability test. Builds the pencil for weight
/// d*sigma with d = max(1, |sigma|_alpha - 1) (the smallest exponent at
/// which semistable representations are guaranteed a nonvanishing
/// semi-invariant) and runs identity testing on its determinant.
///
/// One-sided error: Semistable verdicts carry an exact certificate;
/// ProbablyUnstable carries a Schwartz-Zippel failure bound
/// (d |sigma|_alpha / 2^20)^trials, and is upgraded to exact when the
/// pencil is structurally zero.
inline Verdict is_semistable(const Representation& rep, const Weight& sigma, long trials = 8,
                             std::uint64_t seed = 0) {
    if (sigma.is_zero()) throw ZeroWeightError("semistability needs a nonzero weight");
    if (trials < 1) throw ArgumentError("trials must be >= 1");
    const Int norm = sigma_norm(sigma, rep.dim());  // throws NotOrthogonalError
    const Int d = std::max(Int(1), Int(norm - 1));

    LinearMatrix matrix = build_linear_matrix(rep.quiver(), rep.dim(),
                                              detail::scale_weight(sigma, d));
    InstantiatedPencil pencil = instantiate(matrix, rep);

    Verdict v;
    v.trials = trials;
    v.seed = seed;

    if (matrix.size() == 0) {
        // |sigma|_alpha = 0: the weight space contains the constants, so
        // everything is semistable (det of the empty matrix is 1).
        v.decision = Decision::Semistable;
        v.certificate = Certificate{sigma, d, {}, Rat(1)};
        v.exact = true;
        return v;
    }
    if (pencil.is_structurally_zero()) {
        v.decision = Decision::ProbablyUnstable;
        v.exact = true;
        v.failure_probability_bound = Rat(0);
        return v;
    }

    const Rat per_trial = make_rat(d * norm, int_pow(Int(2), kSampleBits));
    for (long trial = 0; trial < trials; ++trial) {
        std::vector<Int> t = detail::sample_point(seed, static_cast<std::uint64_t>(trial),
                                                  pencil.indet_count());
        Rat value = evaluate_det(pencil, detail::to_rat(t));
        ++v.trials_used;
        if (value != 0) {
            v.decision = Decision::Semistable;
            v.certificate = Certificate{sigma, d, std::move(t), std::move(value)};
            v.failure_probability_bound = Rat(0);
            return v;
        }
    }
    v.decision = Decision::ProbablyUnstable;
    v.failure_probability_bound = rat_pow(per_trial, static_cast<unsigned long>(trials));
    return v;
}

namespace detail {

/// Nonzero weight-box representatives with sigma . alpha = 0 and
/// |sigma(x)| <= cap, one per +-/- pair (first nonzero entry negative),
/// ordered by (|sigma|_alpha, lexicographic). Enumeration solves for the
/// last alpha-nonzero coordinate when possible.
inline std::vector<Weight> weight_box(const DimVector& alpha, const Int& cap) {
    const std::size_t n = alpha.size();
    std::size_t pivot = n;
    for (std::size_t i = n; i-- > 0;)
        if (alpha.value(i) != 0) { pivot = i; break; }

    std::vector<Weight> out;
    std::vector<Int> current(n, Int(0));
    auto emit = [&]() {
        Weight w(alpha.vertices(), current);
        if (w.is_zero()) return;
        for (std::size_t i = 0; i < n; ++i) {
            if (current[i] == 0) continue;
            if (current[i] < 0) out.push_back(std::move(w));
            return;  // positive leading entry: the mirror pair covers it
        }
    };
    auto rec = [&](auto&& self, std::size_t i, Int dot) -> void {
        if (i == n) {
            if (dot == 0) emit();
            return;
        }
        if (i == pivot) {
            // solve alpha(pivot) * sigma(pivot) = -dot
            if (dot % alpha.value(i) != 0) return;
            Int required = -dot / alpha.value(i);
            if (abs(required) > cap) return;
            current[i] = required;
            self(self, i + 1, Int(0));
            current[i] = 0;
            return;
        }
        for (Int s = -cap; s <= cap; ++s) {
            current[i] = s;
            self(self, i + 1, dot + s * alpha.value(i));
            current[i] = 0;
        }
    };
    rec(rec, 0, Int(0));

    std::sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) {
        Int na = sigma_norm(a, alpha), nb = sigma_norm(b, alpha);
        if (na != nb) return na < nb;
        return a.values() < b.values();
    });
    return out;
}

}  // namespace detail

/// Null-cone membership by exhaustive weight search: V lies outside the
/// null cone iff it is sigma-semistable for some nonzero weight, and any
/// such weight can be found with coordinates at most
/// (||alpha||_1/(n-1))^(n-1). Enumerates the box clipped to coord_cap
/// (both signs of each representative; ascending |sigma|_alpha), stopping
/// at the first certificate. Desk-scale only: the box grows exponentially
/// with the number of vertices.
inline Verdict null_cone_membership(const Representation& rep, const Int& coord_cap,
                                    long trials = 8, std::uint64_t seed = 0) {
    if (coord_cap < 1) throw ArgumentError("coord_cap must be >= 1");
    const DimVector& alpha = rep.dim();
    const std::size_t n = alpha.size();

    Int cap = coord_cap;
    if (n >= 2) {
        const Norms norms = vector_norms(alpha);
        const Rat formula = rat_pow(make_rat(norms.l1, Int(static_cast<long>(n - 1))),
                                    static_cast<unsigned long>(n - 1));
        cap = std::min(cap, ceil_to_int(formula));
    }

    Verdict result;
    result.decision = Decision::InNullConeProbably;
    result.trials = trials;
    result.seed = seed;
    result.exact = true;  // stays true only if every negative verdict was exact

    std::uint64_t stream = 0;
    for (const Weight& candidate : detail::weight_box(alpha, cap)) {
        for (int side = 0; side < 2; ++side) {
            const Weight sigma =
                side == 0 ? candidate : detail::scale_weight(candidate, Int(-1));
            Verdict v = is_semistable(rep, sigma, trials, derive_seed(seed, stream++));
            ++result.weights_tested;
            if (v.decision == Decision::Semistable) {
                result.decision = Decision::NotInNullCone;
                result.certificate = std::move(v.certificate);
                result.trials_used = v.trials_used;
                result.failure_probability_bound = Rat(0);
                result.exact = true;
                return result;
            }
            result.failure_probability_bound += v.failure_probability_bound;
            if (!v.exact) result.exact = false;
        }
    }
    return result;
}

struct RayWeightResult {
    Weight weight;          // primitive, first nonzero entry negative; zero if rank-deficient
    bool rank_ok;
    Rat coordinate_bound;   // (||alpha||_1/(n-1))^(n-1)
    Rat sigma_norm_bound;   // ||alpha||_1^n / (2 (n-1)^(n-1))
};

/// Minimal integral weight on the line cut out by n-1 dimension vectors:
/// stacks the betas, takes the signed-maximal-minor kernel, and reduces it
/// to a primitive vector. The result is the kernel of the stack, nothing
/// more; deciding which of +-sigma certifies a given representation is the
/// caller's job (compose with is_semistable — all reported bounds are
/// sign-independent).
inline RayWeightResult ray_weight(const DimVector& alpha,
                                  const std::vector<DimVector>& betas) {
    const std::size_t n = alpha.size();
    if (n < 2) throw ArgumentError("need at least two vertices");
    if (betas.size() != n - 1)
        throw ShapeError("expected exactly " + std::to_string(n - 1) + " dimension vectors");
    for (const DimVector& b : betas)
        if (!b.same_domain(alpha))
            throw DomainMismatchError("beta domain differs from alpha's");

    RationalMatrix stack(n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            stack.at(i, j) = Rat(betas[i].at(alpha.vertex(j)));

    const Norms norms = vector_norms(alpha);
    RayWeightResult result{Weight::zero(alpha.vertices()), false,
                           rat_pow(make_rat(norms.l1, Int(static_cast<long>(n - 1))),
                                   static_cast<unsigned long>(n - 1)),
                           make_rat(int_pow(norms.l1, static_cast<unsigned long>(n)),
                                    2 * int_pow(Int(static_cast<long>(n - 1)),
                                                static_cast<unsigned long>(n - 1)))};

    MinorKernelResult kernel = minor_kernel(stack);
    if (kernel.rank_deficient) return result;
    result.rank_ok = true;
    result.weight = Weight(alpha.vertices(), primitive(kernel.u));
    return result;
}

struct WeightBoundCheck {
    bool coord_ok;
    bool norm_ok;
    Rat coordinate_bound;
    Rat sigma_norm_bound;
    Int max_coord;
    Int norm;
};

/// Checks a weight against the extremal-ray size bounds: every coordinate
/// at most (||alpha||_1/(n-1))^(n-1), and |sigma|_alpha at most
/// ||alpha||_1^n / (2 (n-1)^(n-1)). Exact rational comparisons.
inline WeightBoundCheck weight_bound_check(const Weight& sigma, const DimVector& alpha) {
    const std::size_t n = alpha.size();
    if (n < 2) throw ArgumentError("need at least two vertices");
    const Int norm = sigma_norm(sigma, alpha);  // throws NotOrthogonalError

    const Norms norms = vector_norms(alpha);
    WeightBoundCheck check;
    check.coordinate_bound = rat_pow(make_rat(norms.l1, Int(static_cast<long>(n - 1))),
                                     static_cast<unsigned long>(n - 1));
    check.sigma_norm_bound = make_rat(int_pow(norms.l1, static_cast<unsigned long>(n)),
                                      2 * int_pow(Int(static_cast<long>(n - 1)),
                                                  static_cast<unsigned long>(n - 1)));
    check.max_coord = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        check.max_coord = std::max(check.max_coord, Int(abs(sigma.value(i))));
    check.norm = norm;
    check.coord_ok = Rat(check.max_coord) <= check.coordinate_bound;
    check.norm_ok = Rat(norm) <= check.sigma_norm_bound;
    return check;
}

}  // namespace quiversi
