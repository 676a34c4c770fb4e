// Exact rational scalars. GMP's mpq_class supplies canonical p/q storage
// (lowest terms, positive denominator); everything downstream assumes that.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bggfe {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Parse "p/q", an integer, or a decimal such as "-0.125" (converted exactly).
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rat r(s);  // mpq_class accepts "p/q"
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rat r(Int(s), 1);
        r.canonicalize();
        return r;
    }
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal literal '" + s + "'");
    bool neg = !head.empty() && head[0] == '-';
    if (neg || (!head.empty() && head[0] == '+')) head = head.substr(1);
    if (head.empty()) head = "0";
    Int scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Int num = Int(head) * scale + (frac.empty() ? Int(0) : Int(frac));
    if (neg) num = -num;
    Rat r(num, scale);
    r.canonicalize();
    return r;
}

/// Serialize as "p" or "p/q" (canonical form).
inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Deterministic pseudo-random small rationals for test corpora.
/// (splitmix64 stepping; identical sequences on every platform.)
class RatRng {
public:
    explicit RatRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// integer in [lo, hi] inclusive
    long next_int(long lo, long hi) {
        return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// small rational with numerator in [-max_num, max_num], denominator in [1, max_den]
    Rat next_rat(long max_num = 4, long max_den = 3) {
        return rat(next_int(-max_num, max_num), next_int(1, max_den));
    }

private:
    std::uint64_t state_;
};

}  // namespace bggfe
