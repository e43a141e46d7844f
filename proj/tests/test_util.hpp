#pragma once

#include <initializer_list>
#include <vector>

#include "weilkit/matrix.hpp"
#include "weilkit/polynomial.hpp"

namespace testutil {

inline weilkit::IntPolynomial P(std::initializer_list<long> c) {
    std::vector<weilkit::Integer> v;
    for (long x : c) v.emplace_back(x);
    return weilkit::IntPolynomial(v);
}

inline weilkit::Rational Q(long a, long b = 1) {
    weilkit::Rational r(a, b);
    r.canonicalize();
    return r;
}

}  // namespace testutil
