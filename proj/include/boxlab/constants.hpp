#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

#include "boxlab/rational.hpp"

namespace boxlab {

using BigInt = boost::multiprecision::cpp_int;

// A positive quantity carried in log2 space.  When `exact` is set the value
// is exactly 2^{exact_log2} (this happens whenever eps/2 is a power of two,
// so every eta is a dyadic rational); `approx` is always maintained and may
// be -inf when even the logarithm overflows a double.
struct Log2Value {
    bool exact = false;
    BigInt exact_log2;
    double approx = 0.0;
};

// The tower of quantities behind the recursive fortress guarantee for
// parameters (r, eps, k, m): the arity bound M with its per-stage sequence
// M_{m(m-1)} = m down to M_0 = M, the survivor shares eta_0 >= eta_1 >= ...
// and the success probability delta.  The integers grow doubly
// exponentially; computations that would exceed the configured budgets stop
// with `astronomical` set, a note naming the stage, and the partial stage
// table filled in as far as it got.
struct ConstantsTable {
    int r = 0;
    int k = 0;
    int m = 0;
    Rational eps;

    bool astronomical = false;
    std::string note;

    BigInt M;                                      // valid when !astronomical
    std::vector<std::pair<int, BigInt>> M_h;       // (h, M_h), h descending m(m-1)..0
    Log2Value eta0;                                // k >= 2 only
    std::vector<std::pair<int, Log2Value>> eta_h;  // (h, eta_h), h ascending 1..m(m-1)
    Log2Value delta;
    Log2Value eta;
};

struct ConstantsOptions {
    // Bit budget for any single materialized integer (stage arities).
    long long max_bits = 1 << 20;
    // Bound on the stage count m'(m'-1) at any level of height >= 2.
    long long max_stages = 4096;
};

// Evaluates the constant recursion: at height 1, M = m, eta = (eps/2)^C(m,2)
// and delta = 1; at height k >= 2 the level-(k-1) tables are evaluated (with
// memoization on (height, arity)) to drive the backwards stage recursion
//   M_{m(m-1)} = m,   M_{h-1} = M(M_h) + ceil((k-1) M_h / eta(M_h)),
// then eta_0 = (eps/2)^{m^2 M^{2(k-1)}}, eta_h = eta_{h-1} * eta(M_h), and
// delta = min({m^-2 M^{-3(k-1)} eta_0} u {delta(M_h)}).  All integers are
// exact (arbitrary precision); the eta exponents are exact in base eps/2,
// rendered as exact powers of two when eps/2 is one, and as double
// logarithms otherwise.  delta is always a double logarithm (its head term
// mixes non-dyadic factors).  Requires r >= 2, m >= 2, 1 <= k <= r and
// eps in (0,1).
ConstantsTable compute_constants(int r, const Rational& eps, int k, int m,
                                 const ConstantsOptions& opts = {});

}  // namespace boxlab
