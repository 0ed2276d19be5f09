#include "cky/interval.hpp"

#include <charconv>

namespace cky {

Interval pow_int(const Interval& a, int n)
{
    if (n < 0)
        return Interval(1.0) / pow_int(a, -n);
    Interval result(1.0);
    Interval base = a;
    bool first = true;
    while (n > 0) {
        if (n & 1) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1;
        if (n > 0)
            base = sqr(base);
    }
    return result;
}

std::string to_string(const Interval& a)
{
    char buf[64];
    std::string out = "[";
    auto r = std::to_chars(buf, buf + sizeof buf, a.lo);
    out.append(buf, r.ptr);
    out += ", ";
    r = std::to_chars(buf, buf + sizeof buf, a.hi);
    out.append(buf, r.ptr);
    out += "]";
    return out;
}

} // namespace cky
