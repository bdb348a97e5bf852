#pragma once

#include "epw/rational.hpp"

#include <stdexcept>
#include <string>

namespace epw {

/** The element y + x*sqrt(2) of Z[sqrt(2)]. */
struct QuadInt {
    Integer y = 0;
    Integer x = 0;

    QuadInt() = default;
    QuadInt(Integer y_, Integer x_) : y(std::move(y_)), x(std::move(x_)) {}

    QuadInt conj() const { return {y, -x}; }
    Integer norm() const { return y * y - 2 * x * x; }
    Integer trace() const { return 2 * y; }

    friend QuadInt operator+(const QuadInt& a, const QuadInt& b) { return {a.y + b.y, a.x + b.x}; }
    friend QuadInt operator-(const QuadInt& a, const QuadInt& b) { return {a.y - b.y, a.x - b.x}; }
    friend QuadInt operator-(const QuadInt& a) { return {-a.y, -a.x}; }
    friend QuadInt operator*(const QuadInt& a, const QuadInt& b)
    {
        return {a.y * b.y + 2 * a.x * b.x, a.y * b.x + a.x * b.y};
    }
    friend bool operator==(const QuadInt& a, const QuadInt& b) { return a.y == b.y && a.x == b.x; }
    friend bool operator!=(const QuadInt& a, const QuadInt& b) { return !(a == b); }

    /** Integer power; negative exponents require a unit (norm +-1). */
    QuadInt pow(long n) const
    {
        QuadInt base = *this;
        if (n < 0) {
            Integer nm = norm();
            if (nm != 1 && nm != -1)
                throw std::domain_error("negative power of a non-unit in Z[sqrt2]");
            // inverse of a unit is conj / norm
            base = nm == 1 ? conj() : -conj();
            n = -n;
        }
        QuadInt r{1, 0};
        while (n) {
            if (n & 1)
                r = r * base;
            n >>= 1;
            if (n)
                base = base * base;
        }
        return r;
    }

    std::string str() const
    {
        std::string s = y.get_str();
        if (x >= 0)
            s += "+" + x.get_str();
        else
            s += x.get_str();
        return s + "*sqrt2";
    }
};

} // namespace epw
