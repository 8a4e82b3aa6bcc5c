#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quiversi/errors.hpp"
#include "quiversi/numeric.hpp"

namespace quiversi {

struct Arrow {
    std::string id;
    std::string tail;
    std::string head;
};

/// A finite directed multigraph with no oriented cycles. Construction
/// validates the structure (distinct ids, endpoints exist, acyclicity) and
/// fixes the topological order, so every consumer may assume a valid DAG.
///
/// Vertex order is the input order; the topological order breaks ties by
/// input order, which makes every derived object reproducible.
class Quiver {
public:
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!vertex_index_.emplace(vertices_[i], i).second)
                throw DuplicateIdError("duplicate vertex id '" + vertices_[i] + "'");
        }
        std::set<std::string> arrow_ids;
        for (const Arrow& a : arrows_) {
            if (!arrow_ids.insert(a.id).second)
                throw DuplicateIdError("duplicate arrow id '" + a.id + "'");
            if (!vertex_index_.count(a.tail))
                throw DanglingEndpointError("arrow '" + a.id + "' has unknown tail '" + a.tail + "'");
            if (!vertex_index_.count(a.head))
                throw DanglingEndpointError("arrow '" + a.id + "' has unknown head '" + a.head + "'");
        }
        out_sorted_.resize(vertices_.size());
        for (std::size_t k = 0; k < arrows_.size(); ++k)
            out_sorted_[vertex_index_.at(arrows_[k].tail)].push_back(k);
        for (auto& out : out_sorted_)
            std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
                return arrows_[a].id < arrows_[b].id;
            });
        compute_topological_order();
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::size_t vertex_count() const { return vertices_.size(); }

    /// Every tail precedes its head; ties broken by input vertex order.
    const std::vector<std::string>& topological_order() const { return topo_order_; }

    bool has_vertex(const std::string& v) const { return vertex_index_.count(v) != 0; }

    std::size_t vertex_index(const std::string& v) const {
        auto it = vertex_index_.find(v);
        if (it == vertex_index_.end())
            throw UnknownVertexError("unknown vertex '" + v + "'");
        return it->second;
    }

    /// 1-based position in the topological order (the canonical labeling
    /// used wherever a formula needs "vertex i").
    std::size_t topo_index(const std::string& v) const {
        vertex_index(v);
        return topo_index_.at(v);
    }

    const Arrow& arrow(const std::string& id) const {
        for (const Arrow& a : arrows_)
            if (a.id == id) return a;
        throw ArgumentError("unknown arrow id '" + id + "'");
    }

    /// Arrow indices leaving `v`, sorted by arrow id.
    const std::vector<std::size_t>& arrows_from(const std::string& v) const {
        return out_sorted_[vertex_index(v)];
    }

    bool operator==(const Quiver& other) const {
        if (vertices_ != other.vertices_ || arrows_.size() != other.arrows_.size())
            return false;
        for (std::size_t i = 0; i < arrows_.size(); ++i)
            if (arrows_[i].id != other.arrows_[i].id || arrows_[i].tail != other.arrows_[i].tail ||
                arrows_[i].head != other.arrows_[i].head)
                return false;
        return true;
    }

private:
    void compute_topological_order() {
        const std::size_t n = vertices_.size();
        std::vector<std::size_t> indegree(n, 0);
        for (const Arrow& a : arrows_) indegree[vertex_index_.at(a.head)]++;
        std::vector<char> emitted(n, 0);
        topo_order_.reserve(n);
        // Kahn's algorithm; each round scans vertices in input order so ties
        // resolve deterministically.
        while (topo_order_.size() < n) {
            bool progress = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (emitted[i] || indegree[i] != 0) continue;
                emitted[i] = 1;
                topo_order_.push_back(vertices_[i]);
                for (std::size_t k : out_sorted_[i]) indegree[vertex_index_.at(arrows_[k].head)]--;
                progress = true;
                break;
            }
            if (!progress) throw make_cycle_error(emitted);
        }
        for (std::size_t i = 0; i < n; ++i) topo_index_[topo_order_[i]] = i + 1;
    }

    CycleError make_cycle_error(const std::vector<char>& emitted) const {
        // Walk forward inside the residual subgraph until a vertex repeats.
        std::size_t start = 0;
        while (emitted[start]) ++start;
        std::vector<std::size_t> walk{start};
        std::map<std::size_t, std::size_t> pos{{start, 0}};
        for (;;) {
            std::size_t cur = walk.back();
            std::size_t next = cur;
            for (std::size_t k : out_sorted_[cur]) {
                std::size_t h = vertex_index_.at(arrows_[k].head);
                if (!emitted[h]) { next = h; break; }
            }
            auto it = pos.find(next);
            if (it != pos.end()) {
                std::vector<std::string> cycle;
                for (std::size_t i = it->second; i < walk.size(); ++i)
                    cycle.push_back(vertices_[walk[i]]);
                cycle.push_back(vertices_[next]);
                std::string text = "quiver has an oriented cycle: ";
                for (std::size_t i = 0; i < cycle.size(); ++i)
                    text += (i ? " -> " : "") + cycle[i];
                return CycleError(text, cycle);
            }
            pos[next] = walk.size();
            walk.push_back(next);
        }
    }

    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, std::size_t> vertex_index_;
    std::map<std::string, std::size_t> topo_index_;
    std::vector<std::vector<std::size_t>> out_sorted_;
    std::vector<std::string> topo_order_;
};

/// Validation per se happens in the Quiver constructor; this returns the
/// certified topological order.
inline std::vector<std::string> validate_quiver(const Quiver& q) {
    return q.topological_order();
}

namespace detail {

/// Integer values attached to the vertex set, in a fixed vertex order.
template <bool NonNegative>
class VertexMap {
public:
    VertexMap() = default;
    VertexMap(std::vector<std::string> vertices, std::vector<Int> values)
        : vertices_(std::move(vertices)), values_(std::move(values)) {
        if (vertices_.size() != values_.size())
            throw ShapeError("vertex/value count mismatch");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (!seen.insert(vertices_[i]).second)
                throw DuplicateIdError("duplicate vertex id '" + vertices_[i] + "'");
            if (NonNegative && values_[i] < 0)
                throw ArgumentError("negative value at vertex '" + vertices_[i] + "'");
        }
    }

    static VertexMap zero(std::vector<std::string> vertices) {
        std::vector<Int> zeros(vertices.size(), Int(0));
        return VertexMap(std::move(vertices), std::move(zeros));
    }

    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Int>& values() const { return values_; }
    const std::string& vertex(std::size_t i) const { return vertices_[i]; }
    const Int& value(std::size_t i) const { return values_[i]; }

    const Int& at(const std::string& v) const {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == v) return values_[i];
        throw UnknownVertexError("unknown vertex '" + v + "'");
    }

    bool same_domain(const VertexMap& other) const {
        if (vertices_.size() != other.vertices_.size()) return false;
        std::set<std::string> a(vertices_.begin(), vertices_.end());
        std::set<std::string> b(other.vertices_.begin(), other.vertices_.end());
        return a == b;
    }

    template <bool N2>
    bool same_domain(const VertexMap<N2>& other) const {
        if (vertices_.size() != other.vertices().size()) return false;
        std::set<std::string> a(vertices_.begin(), vertices_.end());
        std::set<std::string> b(other.vertices().begin(), other.vertices().end());
        return a == b;
    }

    bool is_zero() const {
        return std::all_of(values_.begin(), values_.end(), [](const Int& v) { return v == 0; });
    }

    bool operator==(const VertexMap& other) const {
        if (vertices_.size() != other.vertices_.size()) return false;
        if (!same_domain(other)) return false;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (values_[i] != other.at(vertices_[i])) return false;
        return true;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Int> values_;
};

}  // namespace detail

/// Per-vertex dimensions; entries are non-negative.
class DimVector : public detail::VertexMap<true> {
public:
    using detail::VertexMap<true>::VertexMap;
    DimVector(detail::VertexMap<true> base) : detail::VertexMap<true>(std::move(base)) {}
    static DimVector zero(std::vector<std::string> vertices) {
        return DimVector(detail::VertexMap<true>::zero(std::move(vertices)));
    }
};

/// Per-vertex integer weight (a character of the base-change group).
class Weight : public detail::VertexMap<false> {
public:
    using detail::VertexMap<false>::VertexMap;
    Weight(detail::VertexMap<false> base) : detail::VertexMap<false>(std::move(base)) {}
    static Weight zero(std::vector<std::string> vertices) {
        return Weight(detail::VertexMap<false>::zero(std::move(vertices)));
    }
};

/// A composable chain of arrows; never empty (no trivial paths). In an
/// acyclic quiver no vertex repeats, so the length is at most n-1.
struct Path {
    std::vector<std::string> arrows;

    std::size_t length() const { return arrows.size(); }
    bool operator==(const Path& other) const { return arrows == other.arrows; }
    bool operator<(const Path& other) const { return arrows < other.arrows; }
};

/// All directed paths from `from` to `to`, in lexicographic order of their
/// arrow-id sequences. Finite because the quiver is acyclic.
inline std::vector<Path> enumerate_paths(const Quiver& q, const std::string& from,
                                         const std::string& to) {
    q.vertex_index(from);
    q.vertex_index(to);
    std::vector<Path> result;
    std::vector<std::string> prefix;
    // DFS over id-sorted arrows emits paths already in lexicographic order.
    auto walk = [&](auto&& self, const std::string& at) -> void {
        for (std::size_t k : q.arrows_from(at)) {
            const Arrow& a = q.arrows()[k];
            prefix.push_back(a.id);
            if (a.head == to) result.push_back(Path{prefix});
            self(self, a.head);
            prefix.pop_back();
        }
    };
    walk(walk, from);
    return result;
}

/// b[x][y] = number of paths from x to y, indexed by the quiver's vertex order.
struct PathCounts {
    std::vector<std::string> order;
    std::vector<Int> counts;  // row-major, order.size() x order.size()

    const Int& at(std::size_t x, std::size_t y) const { return counts[x * order.size() + y]; }
};

inline PathCounts path_counts(const Quiver& q) {
    const std::size_t n = q.vertex_count();
    PathCounts pc{q.vertices(), std::vector<Int>(n * n, Int(0))};
    // Accumulate in reverse topological order: counts out of a vertex only
    // depend on counts out of its successors.
    const auto& topo = q.topological_order();
    for (std::size_t t = topo.size(); t-- > 0;) {
        const std::size_t x = q.vertex_index(topo[t]);
        for (std::size_t k : q.arrows_from(topo[t])) {
            const std::size_t h = q.vertex_index(q.arrows()[k].head);
            pc.counts[x * n + h] += 1;
            for (std::size_t y = 0; y < n; ++y) pc.counts[x * n + y] += pc.counts[h * n + y];
        }
    }
    return pc;
}

/// sigma(beta) = sum of sigma(x) * beta(x).
inline Int weight_apply(const Weight& sigma, const DimVector& beta) {
    if (!sigma.same_domain(beta))
        throw DomainMismatchError("weight and dimension vector have different vertex sets");
    Int total = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        total += sigma.value(i) * beta.at(sigma.vertex(i));
    return total;
}

/// sigma = plus - minus with disjoint supports, both entrywise >= 0.
inline std::pair<Weight, Weight> weight_decompose(const Weight& sigma) {
    std::vector<Int> plus(sigma.size()), minus(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        plus[i] = sigma.value(i) > 0 ? sigma.value(i) : Int(0);
        minus[i] = sigma.value(i) < 0 ? -sigma.value(i) : Int(0);
    }
    return {Weight(sigma.vertices(), std::move(plus)), Weight(sigma.vertices(), std::move(minus))};
}

/// |sigma|_alpha = sigma_+ . alpha = sigma_- . alpha; defined only when
/// sigma . alpha = 0 (otherwise the weight space is trivially zero and the
/// quantity is meaningless).
inline Int sigma_norm(const Weight& sigma, const DimVector& alpha) {
    if (weight_apply(sigma, alpha) != 0)
        throw NotOrthogonalError("sigma . alpha != 0 (weight space is zero)");
    auto [plus, minus] = weight_decompose(sigma);
    Int p = 0, m = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        p += plus.value(i) * alpha.at(plus.vertex(i));
        m += minus.value(i) * alpha.at(minus.vertex(i));
    }
    if (p != m) throw Error("internal: sigma_+ . alpha != sigma_- . alpha");
    return p;
}

struct Norms {
    Int l1;
    Int l2sq;  // squared to stay exact
};

inline Norms vector_norms(const DimVector& alpha) {
    Norms n{0, 0};
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        n.l1 += abs(alpha.value(i));
        n.l2sq += alpha.value(i) * alpha.value(i);
    }
    return n;
}

}  // namespace quiversi
