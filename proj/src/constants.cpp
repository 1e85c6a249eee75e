#include "boxlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "boxlab/error.hpp"

namespace boxlab {

namespace {

namespace mp = boost::multiprecision;

// log2 of a positive big integer, via the top 53 bits.
double log2_big(const BigInt& x) {
    if (x <= 0) throw ArgumentError("log2 of a non-positive value");
    const unsigned bits = mp::msb(x);
    if (bits <= 52) return std::log2(x.convert_to<double>());
    const BigInt top = x >> (bits - 52);
    return std::log2(top.convert_to<double>()) + static_cast<double>(bits - 52);
}

// Big integer as a double, saturating to +inf instead of overflowing.
double to_double_sat(const BigInt& x) {
    if (x == 0) return 0.0;
    if (mp::msb(x) >= 1023) return std::numeric_limits<double>::infinity();
    return x.convert_to<double>();
}

struct LevelOut {
    bool astronomical = false;
    std::string note;
    BigInt M;             // valid when !astronomical
    BigInt eta_exp;       // eta = (eps/2)^{eta_exp}
    double delta_log2 = 0.0;
    // Extra data surfaced in the top-level table:
    std::vector<std::pair<int, BigInt>> M_stages;  // (h, M_h) descending
    BigInt eta0_exp;
    std::map<int, BigInt> stage_eta_exps;  // h -> exponent of eta(M_h)
};

struct Evaluator {
    // eps/2 = num / den, normalized.
    long long num = 1, den = 4;
    bool dyadic = false;   // num == 1 and den a power of two
    long long t = 2;       // eps/2 = 2^{-t} when dyadic
    double log2_half = 0;  // log2(eps/2) < 0
    double log2_ratio = 0; // -log2_half > 0
    ConstantsOptions opts;
    std::map<std::pair<int, BigInt>, LevelOut> memo;

    const LevelOut& eval(int k, const BigInt& m) {
        auto key = std::make_pair(k, m);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        LevelOut out = compute(k, m);
        return memo.emplace(key, std::move(out)).first->second;
    }

    LevelOut compute(int k, const BigInt& m) {
        LevelOut out;
        if (k == 1) {
            out.M = m;
            out.eta_exp = m * (m - 1) / 2;  // eta = (eps/2)^C(m,2)
            out.delta_log2 = 0.0;           // delta = 1, chosen freely
            return out;
        }

        const BigInt stages_big = m * (m - 1);
        if (stages_big > opts.max_stages) {
            out.astronomical = true;
            out.note = "stage count m(m-1) at height " + std::to_string(k) +
                       " exceeds the stage budget " + std::to_string(opts.max_stages);
            return out;
        }
        const int stages = stages_big.convert_to<int>();

        BigInt cur = m;
        out.M_stages.emplace_back(stages, cur);
        double stage_delta_min = std::numeric_limits<double>::infinity();
        for (int h = stages; h >= 1; --h) {
            const LevelOut& sub = eval(k - 1, cur);
            if (sub.astronomical) {
                out.astronomical = true;
                out.note = "stage " + std::to_string(h) + " at height " + std::to_string(k) +
                           ": " + sub.note;
                return out;
            }
            out.stage_eta_exps[h] = sub.eta_exp;
            stage_delta_min = std::min(stage_delta_min, sub.delta_log2);

            // Bit estimate for ceil((k-1) M_h / eta(M_h)), compared in log
            // space so that astronomically large exponents never overflow.
            const double log2_exp = log2_big(sub.eta_exp);  // eta_exp >= 1 for m >= 2
            const double log2_budget = std::log2(static_cast<double>(opts.max_bits));
            if (log2_exp + std::log2(log2_ratio) > log2_budget) {
                out.astronomical = true;
                out.note = "stage " + std::to_string(h) + " at height " + std::to_string(k) +
                           ": the ceiling term needs about 2^" +
                           std::to_string(log2_exp + std::log2(log2_ratio)) +
                           " bits, over the budget " + std::to_string(opts.max_bits);
                return out;
            }
            const unsigned long long exp_ull = sub.eta_exp.convert_to<unsigned long long>();
            const double term_bits =
                log2_big(cur) + std::log2(static_cast<double>(k - 1)) +
                static_cast<double>(exp_ull) * log2_ratio;
            if (term_bits > static_cast<double>(opts.max_bits)) {
                out.astronomical = true;
                out.note = "stage " + std::to_string(h) + " at height " + std::to_string(k) +
                           ": the ceiling term needs about " + std::to_string(term_bits) +
                           " bits, over the budget " + std::to_string(opts.max_bits);
                return out;
            }

            BigInt ceil_term;
            if (dyadic) {
                // eta(M_h) = 2^{-t * exp}: the quotient is already integral.
                ceil_term = (BigInt(k - 1) * cur)
                            << (exp_ull * static_cast<unsigned long long>(t));
            } else {
                const BigInt p = mp::pow(BigInt(den), static_cast<unsigned>(exp_ull));
                const BigInt q = mp::pow(BigInt(num), static_cast<unsigned>(exp_ull));
                const BigInt a = BigInt(k - 1) * cur * p;
                ceil_term = (a + q - 1) / q;
            }
            cur = sub.M + ceil_term;
            out.M_stages.emplace_back(h - 1, cur);
        }
        out.M = cur;

        // eta_0 = (eps/2)^{m^2 M^{2(k-1)}}; the exponent is kept exactly.
        const double exp_bits = 2.0 * (k - 1) * log2_big(out.M) + 2.0 * log2_big(m);
        if (exp_bits > 16.0 * static_cast<double>(opts.max_bits)) {
            out.astronomical = true;
            out.note = "the eta_0 exponent at height " + std::to_string(k) +
                       " needs about 2^" + std::to_string(std::log2(exp_bits)) +
                       " bits, over the budget";
            return out;
        }
        out.eta0_exp = m * m * mp::pow(out.M, static_cast<unsigned>(2 * (k - 1)));
        out.eta_exp = out.eta0_exp;
        for (const auto& [h, e] : out.stage_eta_exps) out.eta_exp += e;

        // delta = min of the head term and every stage delta.
        const double head = -2.0 * log2_big(m) - 3.0 * (k - 1) * log2_big(out.M) +
                            to_double_sat(out.eta0_exp) * log2_half;
        out.delta_log2 = std::min(head, stage_delta_min);
        return out;
    }
};

}  // namespace

ConstantsTable compute_constants(int r, const Rational& eps, int k, int m,
                                 const ConstantsOptions& opts) {
    if (r < 2) throw ArgumentError("r must be at least 2");
    if (m < 2) throw ArgumentError("m must be at least 2");
    if (k < 1 || k > r)
        throw ArgumentError("k must lie between 1 and r, got " + std::to_string(k));
    if (!(Rational(0) < eps) || !(eps < Rational(1)))
        throw ArgumentError("eps must lie strictly between 0 and 1");
    if (opts.max_bits < 64 || opts.max_bits > (1LL << 31))
        throw ArgumentError("max_bits must lie between 64 and 2^31");
    if (opts.max_stages < 2) throw ArgumentError("max_stages must be at least 2");

    Evaluator ev;
    ev.opts = opts;
    const Rational half = eps / Rational(2);
    ev.num = half.num;
    ev.den = half.den;
    ev.dyadic = (half.num == 1) && ((half.den & (half.den - 1)) == 0);
    if (ev.dyadic) {
        ev.t = 0;
        for (long long d = half.den; d > 1; d >>= 1) ++ev.t;
    }
    ev.log2_half = std::log2(static_cast<double>(half.num)) -
                   std::log2(static_cast<double>(half.den));
    ev.log2_ratio = -ev.log2_half;

    const LevelOut& res = ev.eval(k, BigInt(m));

    ConstantsTable table;
    table.r = r;
    table.k = k;
    table.m = m;
    table.eps = eps;
    table.astronomical = res.astronomical;
    table.note = res.note;
    table.M_h = res.M_stages;

    auto as_log2 = [&](const BigInt& exp) {
        Log2Value v;
        v.exact = ev.dyadic;
        if (ev.dyadic) v.exact_log2 = -BigInt(ev.t) * exp;
        v.approx = -to_double_sat(exp) * ev.log2_ratio;
        return v;
    };

    if (res.astronomical) return table;

    table.M = res.M;
    table.eta = as_log2(res.eta_exp);
    if (k == 1) {
        table.delta = Log2Value{true, BigInt(0), 0.0};
        return table;
    }
    table.eta0 = as_log2(res.eta0_exp);
    BigInt cumulative = res.eta0_exp;
    for (const auto& [h, e] : res.stage_eta_exps) {
        cumulative += e;
        table.eta_h.emplace_back(h, as_log2(cumulative));
    }
    table.delta = Log2Value{false, BigInt(0), res.delta_log2};
    return table;
}

}  // namespace boxlab
