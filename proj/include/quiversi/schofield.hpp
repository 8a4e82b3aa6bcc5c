#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quiversi/exact_linalg.hpp"
#include "quiversi/quiver.hpp"

namespace quiversi {

/// A representation: one exact-rational matrix per arrow, of shape
/// alpha(head) x alpha(tail).
class Representation {
public:
    Representation(Quiver quiver, DimVector dim, std::map<std::string, RationalMatrix> maps)
        : quiver_(std::move(quiver)), dim_(std::move(dim)), maps_(std::move(maps)) {
        if (!dim_.same_domain(detail::VertexMap<true>(quiver_.vertices(),
                                                      std::vector<Int>(quiver_.vertex_count(), 0))))
            throw DomainMismatchError("dimension vector domain differs from the quiver");
        for (const Arrow& a : quiver_.arrows()) {
            auto it = maps_.find(a.id);
            if (it == maps_.end())
                throw ShapeError("missing matrix for arrow '" + a.id + "'");
            const auto rows = static_cast<std::size_t>(dim_.at(a.head).get_ui());
            const auto cols = static_cast<std::size_t>(dim_.at(a.tail).get_ui());
            if (it->second.rows() != rows || it->second.cols() != cols)
                throw ShapeError("matrix for arrow '" + a.id + "' must be " +
                                 std::to_string(rows) + "x" + std::to_string(cols));
        }
        if (maps_.size() != quiver_.arrows().size())
            throw ShapeError("maps mention arrows not present in the quiver");
    }

    const Quiver& quiver() const { return quiver_; }
    const DimVector& dim() const { return dim_; }
    const std::map<std::string, RationalMatrix>& maps() const { return maps_; }

    const RationalMatrix& map(const std::string& arrow_id) const {
        auto it = maps_.find(arrow_id);
        if (it == maps_.end()) throw ArgumentError("unknown arrow id '" + arrow_id + "'");
        return it->second;
    }

    /// V(p) = V(a_l) ... V(a_1) for p = (a_1, ..., a_l).
    RationalMatrix path_map(const Path& p) const {
        if (p.arrows.empty()) throw ArgumentError("empty path");
        RationalMatrix acc = map(p.arrows.front());
        for (std::size_t i = 1; i < p.arrows.size(); ++i) acc = map(p.arrows[i]) * acc;
        return acc;
    }

    /// Every arrow matrix multiplied by lambda; V(p) picks up lambda^length(p).
    Representation scaled(const Rat& lambda) const {
        std::map<std::string, RationalMatrix> scaled_maps;
        for (const auto& [id, m] : maps_) {
            RationalMatrix s(m.rows(), m.cols());
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) s.at(i, j) = m.at(i, j) * lambda;
            scaled_maps.emplace(id, std::move(s));
        }
        return Representation(quiver_, dim_, std::move(scaled_maps));
    }

private:
    Quiver quiver_;
    DimVector dim_;
    std::map<std::string, RationalMatrix> maps_;
};

/// One copy of a vertex space inside the domain or codomain of the block
/// matrix. `offset`/`dim` locate its coordinate range.
struct Slot {
    std::string vertex;
    std::size_t copy;
    std::size_t offset;
    std::size_t dim;
};

struct BlockEntry {
    std::size_t indet;  // 1-based, unique across the whole matrix
    Path path;
};

/// The symbolic block matrix attached to (Q, alpha, sigma): a map
///   (+) V(x)^(sigma_+(x))  ->  (+) V(y)^(sigma_-(y))
/// whose (y,x) blocks are sums t_i V(p_i) over all paths p_i from x to y,
/// with fresh indeterminates per block. Its determinants at rational points
/// span the weight-sigma semi-invariants.
///
/// Layout is deterministic: slots follow the topological vertex order then
/// the copy index; indeterminates are numbered block-major (row blocks
/// outer, column blocks inner), paths in lexicographic order inside each
/// block. Size N = |sigma|_alpha on both sides.
class LinearMatrix {
public:
    LinearMatrix(Quiver q, DimVector alpha, Weight sigma, std::vector<Slot> row_slots,
                 std::vector<Slot> col_slots, std::vector<std::vector<BlockEntry>> blocks,
                 std::size_t size, std::size_t indets)
        : quiver_(std::move(q)), alpha_(std::move(alpha)), sigma_(std::move(sigma)),
          row_slots_(std::move(row_slots)), col_slots_(std::move(col_slots)),
          blocks_(std::move(blocks)), size_(size), indets_(indets) {}

    const Quiver& quiver() const { return quiver_; }
    const DimVector& alpha() const { return alpha_; }
    const Weight& sigma() const { return sigma_; }
    std::size_t size() const { return size_; }
    std::size_t indet_count() const { return indets_; }
    const std::vector<Slot>& row_slots() const { return row_slots_; }
    const std::vector<Slot>& col_slots() const { return col_slots_; }

    const std::vector<BlockEntry>& block(std::size_t row_slot, std::size_t col_slot) const {
        return blocks_[row_slot * col_slots_.size() + col_slot];
    }

private:
    Quiver quiver_;
    DimVector alpha_;
    Weight sigma_;
    std::vector<Slot> row_slots_;
    std::vector<Slot> col_slots_;
    std::vector<std::vector<BlockEntry>> blocks_;
    std::size_t size_;
    std::size_t indets_;
};

inline LinearMatrix build_linear_matrix(const Quiver& q, const DimVector& alpha,
                                        const Weight& sigma) {
    if (!alpha.same_domain(sigma))
        throw DomainMismatchError("alpha and sigma have different vertex sets");
    if (!alpha.same_domain(detail::VertexMap<true>::zero(q.vertices())))
        throw DomainMismatchError("alpha domain differs from the quiver");
    for (const auto& v : q.vertices())
        if (!alpha.at(v).fits_ulong_p()) throw ArgumentError("dimension at '" + v + "' is too large");
    if (weight_apply(sigma, alpha) != 0)
        throw NotOrthogonalError("sigma . alpha != 0: no semi-invariants of this weight");

    auto [plus, minus] = weight_decompose(sigma);
    std::vector<Slot> col_slots, row_slots;
    std::size_t col_dim = 0, row_dim = 0;
    for (const std::string& v : q.topological_order()) {
        const auto dim = static_cast<std::size_t>(alpha.at(v).get_ui());
        for (Int c = 0; c < plus.at(v); ++c) {
            col_slots.push_back({v, static_cast<std::size_t>(c.get_ui()), col_dim, dim});
            col_dim += dim;
        }
    }
    for (const std::string& v : q.topological_order()) {
        const auto dim = static_cast<std::size_t>(alpha.at(v).get_ui());
        for (Int c = 0; c < minus.at(v); ++c) {
            row_slots.push_back({v, static_cast<std::size_t>(c.get_ui()), row_dim, dim});
            row_dim += dim;
        }
    }
    if (col_dim != row_dim) throw Error("internal: block matrix is not square");

    std::map<std::pair<std::string, std::string>, std::vector<Path>> path_cache;
    std::vector<std::vector<BlockEntry>> blocks(row_slots.size() * col_slots.size());
    std::size_t next_indet = 1;
    for (std::size_t r = 0; r < row_slots.size(); ++r) {
        for (std::size_t c = 0; c < col_slots.size(); ++c) {
            auto key = std::make_pair(col_slots[c].vertex, row_slots[r].vertex);
            auto it = path_cache.find(key);
            if (it == path_cache.end())
                it = path_cache.emplace(key, enumerate_paths(q, key.first, key.second)).first;
            std::vector<BlockEntry>& entries = blocks[r * col_slots.size() + c];
            for (const Path& p : it->second) entries.push_back({next_indet++, p});
        }
    }
    return LinearMatrix(q, alpha, sigma, std::move(row_slots), std::move(col_slots),
                        std::move(blocks), col_dim, next_indet - 1);
}

/// One X_i of the pencil A(t) = t_1 X_1 + ... + t_m X_m: the single path
/// map V(p) placed in its block, stored sparsely.
struct PencilTerm {
    std::size_t indet;        // 1-based
    std::size_t path_length;
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> entries;  // (row, col, value)
};

class InstantiatedPencil {
public:
    InstantiatedPencil(std::size_t size, std::vector<PencilTerm> terms)
        : size_(size), terms_(std::move(terms)) {}

    std::size_t size() const { return size_; }
    std::size_t indet_count() const { return terms_.size(); }
    const std::vector<PencilTerm>& terms() const { return terms_; }

    /// True when every X_i is the zero matrix (or there are none at all while
    /// the matrix is nonempty): det is then identically zero as a polynomial.
    bool is_structurally_zero() const {
        if (size_ == 0) return false;  // empty matrix has det 1
        for (const PencilTerm& t : terms_)
            if (!t.entries.empty()) return false;
        return true;
    }

private:
    std::size_t size_;
    std::vector<PencilTerm> terms_;
};

inline InstantiatedPencil instantiate(const LinearMatrix& matrix, const Representation& rep) {
    if (!(rep.quiver() == matrix.quiver()))
        throw DimensionMismatchError("representation and linear matrix use different quivers");
    if (!(rep.dim() == matrix.alpha()))
        throw DimensionMismatchError("representation dimension differs from the matrix's alpha");

    std::map<std::vector<std::string>, RationalMatrix> path_map_cache;
    std::vector<PencilTerm> terms(matrix.indet_count());
    for (std::size_t r = 0; r < matrix.row_slots().size(); ++r) {
        const Slot& row = matrix.row_slots()[r];
        for (std::size_t c = 0; c < matrix.col_slots().size(); ++c) {
            const Slot& col = matrix.col_slots()[c];
            for (const BlockEntry& be : matrix.block(r, c)) {
                auto it = path_map_cache.find(be.path.arrows);
                if (it == path_map_cache.end())
                    it = path_map_cache.emplace(be.path.arrows, rep.path_map(be.path)).first;
                const RationalMatrix& pm = it->second;
                PencilTerm term{be.indet, be.path.length(), {}};
                for (std::size_t i = 0; i < pm.rows(); ++i)
                    for (std::size_t j = 0; j < pm.cols(); ++j)
                        if (pm.at(i, j) != 0)
                            term.entries.emplace_back(row.offset + i, col.offset + j, pm.at(i, j));
                terms[be.indet - 1] = std::move(term);
            }
        }
    }
    return InstantiatedPencil(matrix.size(), std::move(terms));
}

namespace detail {

inline RationalMatrix pencil_sum(const InstantiatedPencil& pencil, const std::vector<Rat>& t,
                                 const std::vector<Rat>* lambda_powers) {
    RationalMatrix a(pencil.size(), pencil.size());
    for (const PencilTerm& term : pencil.terms()) {
        Rat coeff = t[term.indet - 1];
        if (lambda_powers) coeff *= (*lambda_powers)[term.path_length];
        if (coeff == 0) continue;
        for (const auto& [i, j, v] : term.entries) a.at(i, j) += coeff * v;
    }
    return a;
}

}  // namespace detail

/// det(t_1 X_1 + ... + t_m X_m): the weight-sigma semi-invariant selected by
/// t, evaluated at the representation the pencil was instantiated on.
inline Rat evaluate_det(const InstantiatedPencil& pencil, const std::vector<Rat>& t) {
    if (t.size() != pencil.indet_count())
        throw LengthMismatchError("expected " + std::to_string(pencil.indet_count()) +
                                  " coefficients, got " + std::to_string(t.size()));
    return det(detail::pencil_sum(pencil, t, nullptr));
}

/// The set of exponents of lambda in det of the pencil instantiated on the
/// lambda-scaled representation, at a random t. Since V(p) scales by
/// lambda^length(p), these are exactly the total degrees of the homogeneous
/// components of the chosen semi-invariant. Recovered exactly by evaluating
/// at lambda = 1, 2, ..., N(n-1)+1 and interpolating; empty if det is
/// identically zero in lambda for every attempted t (or sigma = 0).
inline std::set<long> det_scaling_exponents(const Representation& rep, const Weight& sigma,
                                            int attempts = 3, std::uint64_t seed = 0) {
    LinearMatrix matrix = build_linear_matrix(rep.quiver(), rep.dim(), sigma);
    InstantiatedPencil pencil = instantiate(matrix, rep);
    const std::size_t size = matrix.size();
    const std::size_t n = rep.quiver().vertex_count();
    if (size == 0 || pencil.is_structurally_zero()) return {};

    const std::size_t degree_cap = size * (n - 1);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(attempt));
        std::vector<Rat> t(pencil.indet_count());
        for (Rat& c : t) c = Rat(Int(static_cast<unsigned long>((rng() & 0xFFFFF) + 1)));

        std::vector<Rat> values;
        bool all_zero = true;
        for (std::size_t s = 0; s <= degree_cap; ++s) {
            std::vector<Rat> lambda_powers(n);  // lambda^len for len = 0..n-1
            const Rat lambda(Int(static_cast<unsigned long>(s + 1)));
            lambda_powers[0] = 1;
            for (std::size_t l = 1; l < n; ++l) lambda_powers[l] = lambda_powers[l - 1] * lambda;
            Rat v = det(detail::pencil_sum(pencil, t, &lambda_powers));
            if (v != 0) all_zero = false;
            values.push_back(std::move(v));
        }
        if (all_zero) continue;

        // Newton divided differences on nodes 1..degree_cap+1, expanded to
        // monomial coefficients.
        const std::size_t count = values.size();
        std::vector<Rat> diffs = values;
        for (std::size_t level = 1; level < count; ++level)
            for (std::size_t i = count; i-- > level;)
                diffs[i] = (diffs[i] - diffs[i - 1]) / Rat(Int(static_cast<unsigned long>(level)));
        std::vector<Rat> coeffs(count, Rat(0));  // coeffs[e] of lambda^e
        for (std::size_t i = count; i-- > 0;) {
            // coeffs <- coeffs * (lambda - node_i) + diffs[i]
            const Rat node(Int(static_cast<unsigned long>(i + 1)));
            for (std::size_t e = count; e-- > 1;)
                coeffs[e] = coeffs[e - 1] - node * coeffs[e];
            coeffs[0] = -node * coeffs[0] + diffs[i];
        }
        std::set<long> exponents;
        for (std::size_t e = 0; e < count; ++e)
            if (coeffs[e] != 0) exponents.insert(static_cast<long>(e));
        return exponents;
    }
    return {};
}

}  // namespace quiversi
