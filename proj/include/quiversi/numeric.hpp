#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>

#include "quiversi/errors.hpp"

namespace quiversi {

/// All domain arithmetic is exact. `Int` and `Rat` are arbitrary-precision;
/// no floating point appears anywhere in the library.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long exp) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), exp);
    return r;  // canonical since base was
}

/// floor(sqrt(x)) for x >= 0.
inline Int isqrt(const Int& x) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

inline Int floor_to_int(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

inline Int ceil_to_int(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

/// mpq arithmetic assumes canonical operands; route every num/den
/// construction through here.
inline Rat make_rat(Int num, Int den) {
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

/// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rat& x) { return x.get_str(); }

inline bool fits_int64(const Int& x) {
    return x >= Int(INT64_MIN) && x <= Int(INT64_MAX);
}

/// Parse "p", "-p" or "p/q" (q > 0 after canonicalization). Rejects anything
/// else, including floats and empty strings.
inline Rat parse_rational(const std::string& text, const std::string& where = "") {
    if (text.empty()) throw SchemaError("empty rational literal", where);
    std::size_t slash = text.find('/');
    auto digits_ok = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den))
        throw SchemaError("malformed rational literal '" + text + "'", where);
    Rat r;
    r.get_num() = Int(num);
    r.get_den() = Int(den);
    if (r.get_den() == 0) throw SchemaError("zero denominator in '" + text + "'", where);
    r.canonicalize();
    return r;
}

/// Splitmix64 step; used to expand one user seed into independent per-trial
/// streams so verdicts do not depend on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 1));
}

/// mt19937_64 output is pinned by the standard, so seeded draws are
/// bit-stable across platforms.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(derive_seed(seed, stream));
}

}  // namespace quiversi
