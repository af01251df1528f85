#include "ombc/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ombc {

namespace {

constexpr int kBetaMaxIter = 300;
constexpr double kBetaRelEps = 1e-14;

// For a small integer shape the product form avoids the cancellation of two
// huge lgamma values, which costs ~1e-11 absolute once b reaches 10^4.
double log_beta(double a, double b) {
    if (a > b) std::swap(a, b);
    if (a == std::floor(a) && a >= 1.0 && a <= 20.0) {
        double acc = std::lgamma(a);
        for (int j = 0; j < static_cast<int>(a); ++j) acc -= std::log(b + j);
        return acc;
    }
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta function, modified Lentz
// (Numerical Recipes 6.4 layout). Valid for x < (a+1)/(a+b+2).
double beta_cont_frac(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double coeff = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + coeff * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + coeff / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + coeff * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + coeff / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kBetaRelEps) break;
    }
    return h;
}

}  // namespace

double beta_cdf(double y, const BetaRef& ref) {
    const double a = ref.a;
    const double b = ref.b;
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_cdf: shapes must be positive");
    if (!(y >= 0.0) || !(y <= 1.0)) throw DomainError("beta_cdf: y must lie in [0,1]");
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 1.0;
    const double log_front = a * std::log(y) + b * std::log1p(-y) - log_beta(a, b);
    if (y < (a + 1.0) / (a + b + 2.0))
        return std::exp(log_front) * beta_cont_frac(a, b, y) / a;
    return 1.0 - std::exp(log_front) * beta_cont_frac(b, a, 1.0 - y) / b;
}

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw DomainError("gamma_p: require a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    const double log_front = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // Series: P(a,x) = x^a e^-x / Gamma(a) * sum x^n / (a)_{n+1}
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return std::exp(log_front) * sum;
    }
    // Continued fraction for Q(a,x), modified Lentz.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(log_front) * h;
}

double chisq_cdf(double x, int dof) {
    if (dof < 1) throw DomainError("chisq_cdf: dof must be >= 1");
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * dof, 0.5 * x);
}

double chisq_quantile(double prob, int dof) {
    if (!(prob > 0.0) || !(prob < 1.0)) throw DomainError("chisq_quantile: prob must lie in (0,1)");
    if (dof < 1) throw DomainError("chisq_quantile: dof must be >= 1");
    double lo = 0.0;
    double hi = dof + 20.0 * std::sqrt(2.0 * static_cast<double>(dof));
    while (chisq_cdf(hi, dof) < prob) hi *= 2.0;  // extreme upper tail
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (chisq_cdf(mid, dof) < prob)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    double q = 0.5 * (lo + hi);
    // Newton polish; the density is chi-square's pdf.
    const double half_dof = 0.5 * dof;
    for (int i = 0; i < 8; ++i) {
        const double f = chisq_cdf(q, dof) - prob;
        const double pdf =
            std::exp((half_dof - 1.0) * std::log(q) - 0.5 * q - half_dof * std::numbers::ln2 -
                     std::lgamma(half_dof));
        if (!(pdf > 0.0)) break;
        const double step = f / pdf;
        const double next = q - step;
        if (next <= lo || next >= hi) break;
        q = next;
        if (std::fabs(step) < 1e-13 * (1.0 + q)) break;
    }
    return q;
}

double log_sum_exp(std::span<const double> v) {
    if (v.empty()) throw DomainError("log_sum_exp: empty input");
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;  // all -inf, or a +inf/nan dominates
    double sum = 0.0;
    for (double x : v) sum += std::exp(x - m);
    return m + std::log(sum);
}

}  // namespace ombc
