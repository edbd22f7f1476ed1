#include "mallows/normalize.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mallows/analytic.hpp"
#include "mallows/errors.hpp"
#include "mallows/numeric.hpp"

namespace mallows::normalize {

namespace {

constexpr double kLi2At1 = std::numbers::pi * std::numbers::pi / 6.0;

void check_unit(double value, const char* who, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError(std::string(who) + ": " + name + "=" + format_g17(value) + " outside [0, 1]");
    }
}

void check_ell_positive(double ell, const char* who) {
    if (std::isnan(ell) || ell > 1.0) {
        throw DomainError(std::string(who) + ": ell=" + format_g17(ell) + " outside (0, 1]");
    }
    if (ell <= 0.0) {
        throw RangeError(std::string(who) + ": h_swap(" + format_g17(ell) + ") is +inf");
    }
}

// sum_{k>=1} z^k / k^2 for 0 <= z <= 1/2.
double dilog_series(double z) {
    CompensatedSum sum;
    double power = z;
    for (int k = 1; k < 200; ++k) {
        const double term = power / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum.value()) break;
        power *= z;
    }
    return sum.value();
}

} // namespace

NormPhiSpec::NormPhiSpec(double norm_phi_, std::size_t m_) : norm_phi(norm_phi_), m(m_) {
    check_unit(norm_phi, "NormPhiSpec", "norm_phi");
    if (m < 2) throw DomainError("NormPhiSpec: m=" + std::to_string(m) + " must be at least 2");
}

DispersionSpec::DispersionSpec(Kind kind, double value) : kind_(kind), value_(value) {
    check_unit(value, "DispersionSpec", kind == Kind::classic ? "phi" : "norm_phi");
}

DispersionSpec DispersionSpec::classic(double phi) { return DispersionSpec(Kind::classic, phi); }

DispersionSpec DispersionSpec::normalized(double norm_phi) { return DispersionSpec(Kind::normalized, norm_phi); }

double DispersionSpec::resolve_phi(std::size_t m, double tol) const {
    if (kind_ == Kind::classic) return value_;
    // m = 1 has a single ranking; any phi gives the same distribution.
    if (m < 2) return value_;
    return phi_from_normphi(value_, m, tol);
}

std::string DispersionSpec::to_string() const {
    return (kind_ == Kind::classic ? "phi=" : "norm-phi=") + format_g17(value_);
}

double phi_from_normphi(const NormPhiSpec& spec, double tol) {
    return phi_from_normphi(spec.norm_phi, spec.m, tol);
}

double phi_from_normphi(double norm_phi, std::size_t m, double tol) {
    check_unit(norm_phi, "phi_from_normphi", "norm_phi");
    if (!(tol > 0.0)) throw DomainError("phi_from_normphi: tol must be positive");
    if (m < 2) throw DomainError("phi_from_normphi: m=" + std::to_string(m) + " must be at least 2");
    if (norm_phi == 0.0) return 0.0;
    if (norm_phi == 1.0) return 1.0;

    double lo = 0.0;
    double hi = 1.0;
    double lo_residual = norm_phi;       // g(0) = 0
    double hi_residual = 1.0 - norm_phi; // g(1) = 1
    for (int iter = 0; iter < kMaxBisectionIterations; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            return lo_residual <= hi_residual ? lo : hi;
        }
        const double g = analytic::g_swap(mid, m);
        if (std::fabs(g - norm_phi) <= tol) return mid;
        if (g < norm_phi) {
            lo = mid;
            lo_residual = norm_phi - g;
        } else {
            hi = mid;
            hi_residual = g - norm_phi;
        }
    }
    throw NumericError("phi_from_normphi: no convergence after " + std::to_string(kMaxBisectionIterations) +
                       " iterations (norm_phi=" + format_g17(norm_phi) + ", m=" + std::to_string(m) + ")");
}

double normphi_from_phi(double phi, std::size_t m) { return analytic::g_swap(phi, m); }

namespace detail {

double gamma_direct(double s, double x) { return 1.0 / x - s / std::expm1(s * x); }

double gamma_series(double s, double x) {
    // gamma = s (1/2 + y/6 + y^2/24 + ...) / (1 + y/2 + y^2/6 + ...), y = s x
    const double y = s * x;
    const double num = 1.0 / 2 + y * (1.0 / 6 + y * (1.0 / 24 + y * (1.0 / 120 + y * (1.0 / 720))));
    const double den = 1.0 + y * (1.0 / 2 + y * (1.0 / 6 + y * (1.0 / 24 + y * (1.0 / 120))));
    return s * num / den;
}

double t_1_beats_m_direct(double x) {
    return 2.0 * (1.0 - x / std::expm1(x)) / (-std::expm1(-x)) - 1.0;
}

double t_1_beats_m_series(double x) {
    const double x2 = x * x;
    return x * (1.0 / 3 - x2 * (1.0 / 90 - x2 * (1.0 / 2520)));
}

double r_series(double L) {
    const double L2 = L * L;
    return 1.0 - L * (1.0 / 9 - L2 * (1.0 / 900 - L2 * (1.0 / 52920 - L2 * (1.0 / 2721600))));
}

double r_closed(double L) {
    if (std::isinf(L)) return 0.0;
    const double z = std::exp(-L);
    if (z > 0.5) {
        // With Li2(z) = pi^2/6 - ln z ln(1-z) - Li2(1-z) and ln z = -L the
        // logarithms cancel: r = 4 (1/L - Li2(1 - e^{-L}) / L^2).
        const double w = -std::expm1(-L);
        return 4.0 * (1.0 / L - dilog_series(w) / (L * L));
    }
    return 4.0 * (1.0 / L - std::log1p(-z) / L + (dilog_series(z) - kLi2At1) / (L * L));
}

} // namespace detail

double gamma_integrand(double s, double x) {
    if (!(s > 0.0 && s <= 1.0)) {
        throw DomainError("gamma_integrand: s=" + format_g17(s) + " outside (0, 1]");
    }
    if (x == 0.0) return 0.5 * s;
    if (std::fabs(s * x) < detail::kSeriesThreshold) return detail::gamma_series(s, x);
    return detail::gamma_direct(s, x);
}

double dilog(double z) {
    check_unit(z, "dilog", "z");
    if (z == 0.0) return 0.0;
    if (z == 1.0) return kLi2At1;
    if (z <= 0.5) return dilog_series(z);
    // 1 - z is exact for z in [1/2, 1].
    return kLi2At1 - std::log(z) * std::log1p(-z) - dilog_series(1.0 - z);
}

double r_of_L(double L) {
    if (std::isnan(L) || L < 0.0) throw DomainError("r_of_L: L=" + format_g17(L) + " must be >= 0");
    if (L == 0.0) return 1.0;
    if (L < detail::kRSeriesThreshold) return detail::r_series(L);
    return detail::r_closed(L);
}

double h_swap(double ell) {
    check_ell_positive(ell, "h_swap");
    if (ell == 1.0) return 0.0;

    double lo = 0.0;
    double hi = 4.0 / ell;
    for (int grow = 0; r_of_L(hi) >= ell; ++grow) {
        if (grow > 64) throw NumericError("h_swap: could not bracket ell=" + format_g17(ell));
        lo = hi;
        hi *= 2.0;
    }
    for (int iter = 0; iter < kMaxBisectionIterations; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (r_of_L(mid) > ell) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double t_pos1(double x) {
    if (std::isnan(x) || x < 0.0) throw DomainError("t_pos1: x=" + format_g17(x) + " must be >= 0");
    return 2.0 * gamma_integrand(1.0, x);
}

double t_1_beats_m(double x) {
    if (std::isnan(x) || x < 0.0) throw DomainError("t_1_beats_m: x=" + format_g17(x) + " must be >= 0");
    if (x == 0.0) return 0.0;
    if (x < detail::kSeriesThreshold) return detail::t_1_beats_m_series(x);
    return detail::t_1_beats_m_direct(x);
}

double limit_pos1(double ell) {
    check_ell_positive(ell, "limit_pos1");
    return t_pos1(h_swap(ell));
}

double limit_1_beats_m(double ell) {
    check_ell_positive(ell, "limit_1_beats_m");
    return t_1_beats_m(h_swap(ell));
}

} // namespace mallows::normalize
