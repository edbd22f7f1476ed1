#pragma once

#include <cstddef>
#include <string>

// Conversion between the classic dispersion phi and the normalized dispersion
// norm-phi (the normalized expected swap distance g_swap), plus the m -> inf
// machinery: h_swap(ell) = lim (1 - phi_m(ell)) m and the limit curves it
// induces on the top-choice position and on P[c1 before cm].
namespace mallows::normalize {

struct NormPhiSpec {
    NormPhiSpec(double norm_phi, std::size_t m);

    double norm_phi;
    std::size_t m;
};

// Either a classic phi or a normalized norm-phi, both in [0, 1].
class DispersionSpec {
  public:
    enum class Kind { classic, normalized };

    static DispersionSpec classic(double phi);
    static DispersionSpec normalized(double norm_phi);

    Kind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }

    // The classic phi to sample with at m alternatives.
    double resolve_phi(std::size_t m, double tol = 1e-12) const;

    std::string to_string() const;

  private:
    DispersionSpec(Kind kind, double value);

    Kind kind_;
    double value_;
};

inline constexpr double kDefaultConversionTol = 1e-12;
inline constexpr int kMaxBisectionIterations = 200;

// phi in [0, 1] with |g_swap(phi, m) - norm_phi| <= tol, by bisection on the
// strictly increasing g_swap. When the residual cannot reach tol because phi
// has run out of representable values, the better bracket endpoint is
// returned.
double phi_from_normphi(const NormPhiSpec& spec, double tol = kDefaultConversionTol);
double phi_from_normphi(double norm_phi, std::size_t m, double tol = kDefaultConversionTol);

// g_swap(phi, m).
double normphi_from_phi(double phi, std::size_t m);

// gamma(s, x) = 1/x - s/(e^{sx} - 1) for s in (0, 1]; s/2 at x = 0.
double gamma_integrand(double s, double x);

// Li2(z) = sum_k z^k / k^2 on [0, 1].
double dilog(double z);

// r(L) = 4 int_0^1 gamma(s, L) ds; r(0) = 1, strictly decreasing to 0.
double r_of_L(double L);

// Inverse of r on (0, 1]; h_swap(1) = 0.
double h_swap(double ell);

// t(x) = 2 (1/x - 1/(e^x - 1)), t(0) = 1.
double t_pos1(double x);
// t(x) = 2 (1 - x/(e^x - 1)) / (1 - e^{-x}) - 1, t(0) = 0.
double t_1_beats_m(double x);

// lim_m g_pos1(phi_m(ell), m) = t_pos1(h_swap(ell)).
double limit_pos1(double ell);
// lim_m g_1_beats_m(phi_m(ell), m) = t_1_beats_m(h_swap(ell)).
double limit_1_beats_m(double ell);

namespace detail {
inline constexpr double kSeriesThreshold = 1e-4;
inline constexpr double kRSeriesThreshold = 0.05;
double gamma_direct(double s, double x);
double gamma_series(double s, double x);
double t_1_beats_m_direct(double x);
double t_1_beats_m_series(double x);
double r_closed(double L);
double r_series(double L);
} // namespace detail

} // namespace mallows::normalize
