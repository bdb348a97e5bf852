#pragma once

#include "epw/matrix.hpp"

#include <cstdint>
#include <random>

namespace epw {

/**
 * Seeded generator with a bounded draw that does not depend on the standard
 * library's distribution implementation, so sampled instances are the same everywhere.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /** Uniform integer in [lo, hi]. */
    long uniform(long lo, long hi)
    {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do
            r = engine_();
        while (r >= limit);
        return lo + static_cast<long>(r % span);
    }

    /** Default coefficient box [-5, 5]. */
    long coeff() { return uniform(-5, 5); }

    Rational rational(long lo = -5, long hi = 5) { return Rational(uniform(lo, hi)); }

    RatVector vector(std::size_t n, long lo = -5, long hi = 5)
    {
        RatVector v(n);
        for (auto& x : v)
            x = uniform(lo, hi);
        return v;
    }

    RatMatrix matrix(std::size_t r, std::size_t c, long lo = -5, long hi = 5)
    {
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = uniform(lo, hi);
        return m;
    }

    RatMatrix symmetric(std::size_t n, long lo = -5, long hi = 5)
    {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                m(i, j) = m(j, i) = uniform(lo, hi);
        return m;
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace epw
