#include "oracles.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace oracles {

namespace {

constexpr int gl_order = 40;

struct gl_rule {
    std::array<long double, gl_order> nodes{};
    std::array<long double, gl_order> weights{};
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on the Legendre
// recurrence, seeded with the Chebyshev angle estimate.
gl_rule make_gl_rule() {
    gl_rule r;
    const long double pi = 3.14159265358979323846264338327950288L;
    for (int i = 0; i < gl_order; ++i) {
        long double x = std::cos(pi * (static_cast<long double>(i) + 0.75L) /
                                  (static_cast<long double>(gl_order) + 0.5L));
        long double dp = 0.0L;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1.0L, p1 = x;
            for (int k = 2; k <= gl_order; ++k) {
                const long double p2 =
                    ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / static_cast<long double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = gl_order * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-21L) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0L / ((1.0L - x * x) * dp * dp);
    }
    return r;
}

const gl_rule& rule() {
    static const gl_rule r = make_gl_rule();
    return r;
}

long double normal_pdf(long double t) {
    const long double inv_sqrt_2pi = 0.39894228040143267793994605993438187L;
    return inv_sqrt_2pi * std::exp(-0.5L * t * t);
}

// integral of the density over [a, b], composite over half-unit panels
long double integrate_pdf(long double a, long double b) {
    const int panels = static_cast<int>(std::ceil((b - a) / 0.5L));
    const long double h = (b - a) / panels;
    long double total = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const long double mid = a + h * (static_cast<long double>(p) + 0.5L);
        const long double half = 0.5L * h;
        long double acc = 0.0L;
        for (int i = 0; i < gl_order; ++i)
            acc += rule().weights[i] * normal_pdf(mid + half * rule().nodes[i]);
        total += acc * half;
    }
    return total;
}

} // namespace

long double normal_tail_asymptotic(long double x) {
    if (x < 7.0L) throw std::invalid_argument("tail series valid for x >= 7 only");
    // phi(x)/x * sum (-1)^k (2k-1)!!/x^{2k}, truncated where terms turn.
    long double term = 1.0L, sum = 1.0L;
    const long double inv_x2 = 1.0L / (x * x);
    for (int k = 1; k < 200; ++k) {
        const long double next = term * inv_x2 * (2.0L * k - 1.0L);
        if (next >= std::fabs(term)) break;  // series started diverging
        term = next;
        sum += (k % 2 == 0) ? term : -term;
    }
    return normal_pdf(x) / x * sum;
}

long double normal_cdf(long double x) {
    const long double ax = std::fabs(x);
    long double result;
    if (ax <= 7.0L) {
        result = 0.5L + (x >= 0 ? integrate_pdf(0.0L, ax) : -integrate_pdf(0.0L, ax));
    } else {
        const long double tail = normal_tail_asymptotic(ax);
        result = x > 0 ? 1.0L - tail : tail;
    }
    return result;
}

long double normal_quantile(long double p) {
    if (!(p > 0.0L && p < 1.0L)) throw std::invalid_argument("p outside (0, 1)");
    long double lo = -42.0L, hi = 42.0L;
    for (int i = 0; i < 220; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-19L * std::max(1.0L, std::fabs(lo))) break;
    }
    return 0.5L * (lo + hi);
}

long double binomial_half_cdf_exact(std::int64_t m, std::int64_t n) {
    if (n < 0 || n > 64) throw std::invalid_argument("exact binomial tail needs 0 <= n <= 64");
    if (m < 0) return 0.0L;
    if (m >= n) return 1.0L;
    unsigned __int128 coeff = 1;  // C(n, 0); the 128-bit product avoids overflow
    long double sum = 1.0L;
    for (std::int64_t i = 1; i <= m; ++i) {
        coeff = coeff * static_cast<unsigned __int128>(n - i + 1) /
                static_cast<unsigned __int128>(i);
        sum += static_cast<long double>(static_cast<unsigned long long>(coeff));
    }
    return sum * std::exp2(static_cast<long double>(-n));
}

long double chi_square_sf_1dof(long double statistic) {
    const long double s = std::sqrt(statistic);
    return 2.0L * (s <= 7.0L ? 0.5L - integrate_pdf(0.0L, s) : normal_tail_asymptotic(s));
}

} // namespace oracles
