#include "eggbeater/profile.hpp"

#include "eggbeater/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eggbeater {

namespace {

// Smootherstep and its antiderivative on [0, 1].
double smoothstep(double u) { return u * u * u * (u * (6.0 * u - 15.0) + 10.0); }
double smoothstep_integral(double u) {
    double u2 = u * u;
    return u2 * u2 * (u * (u - 3.0) + 2.5);
}

constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace

std::string DeltaRule::to_string() const {
    if (kind == Kind::InverseNSquared) return "inverse_N_squared";
    std::ostringstream os;
    os.precision(17);
    os << "fixed:" << value;
    return os.str();
}

void TwistParams::validate() const {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "torus dimension n must be positive");
    if (!(epsilon > 0.0 && epsilon <= 0.01))
        throw Error(ErrorKind::InvalidArgument, "epsilon must satisfy 0 < epsilon <= 0.01");
    if (!(delta > 0.0 && delta < 1e-4 && delta < epsilon / 100.0))
        throw Error(ErrorKind::InvalidArgument, "delta must satisfy 0 < delta < min(1e-4, epsilon/100)");
    if (N < 1) throw Error(ErrorKind::InvalidArgument, "twist strength N must be at least 1");
}

double default_delta(double epsilon, std::int64_t N) {
    double cap = 0.5 * std::min(1e-4, epsilon / 100.0);
    double nn = static_cast<double>(N);
    return std::min(1.0 / (nn * nn), cap);
}

TwistParams make_params(int n, double epsilon, std::int64_t N, DeltaRule rule) {
    TwistParams p;
    p.n = n;
    p.epsilon = epsilon;
    p.N = N;
    p.delta = rule.kind == DeltaRule::Kind::Fixed ? rule.value : default_delta(epsilon, N);
    p.validate();
    return p;
}

Profile::Profile(double epsilon, double delta) : eps_(epsilon), delta_(delta) {
    if (!(epsilon > 0.0) || !(delta > 0.0) || !(delta < epsilon / 4.0))
        throw Error(ErrorKind::InvalidArgument, "profile requires 0 < delta < epsilon/4");
    const double slope = -2.0 / eps_;
    zones_[0] = {0.5 * eps_, 1.0, 0.0, slope};
    zones_[1] = {eps_, 2.0 * delta_ / eps_, slope, 0.0};
    breaks_ = {0.0, 0.5 * eps_ - delta_, 0.5 * eps_ + delta_, eps_ - delta_, eps_ + delta_};
    tail_moment_[4] = 0.0;
    for (int i = 3; i >= 0; --i)
        tail_moment_[i] = tail_moment_[i + 1] + moment_integral(breaks_[i], breaks_[i + 1]);

    // r * rho_delta(r) is concave on the first blend zone and peaks there.
    auto slope_of_moment = [&](double r) { return rho_smooth(r) + r * rho_smooth_prime(r); };
    double lo = breaks_[1], hi = breaks_[2];
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (slope_of_moment(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    peak_radius_smooth_ = 0.5 * (lo + hi);
    peak_value_smooth_ = peak_radius_smooth_ * rho_smooth(peak_radius_smooth_);
}

double Profile::rho(double r) const {
    if (r <= 0.5 * eps_) return 1.0;
    if (r <= eps_) return 2.0 * (eps_ - r) / eps_;
    return 0.0;
}

double Profile::rho_prime(double r) const {
    if (r > 0.5 * eps_ && r < eps_) return -2.0 / eps_;
    return 0.0;
}

double Profile::h(double r) const {
    if (r <= 0.5 * eps_) return 0.5 * r * r - 7.0 * eps_ * eps_ / 24.0;
    if (r <= eps_) return r * r - 2.0 * r * r * r / (3.0 * eps_) - eps_ * eps_ / 3.0;
    return 0.0;
}

double Profile::zone_rho(const Zone& z, double r) const {
    double start = z.center - delta_;
    double u = (r - start) / (2.0 * delta_);
    return z.value_left + z.slope_left * (r - start) +
           (z.slope_right - z.slope_left) * 2.0 * delta_ * smoothstep_integral(u);
}

double Profile::zone_rho_prime(const Zone& z, double r) const {
    double u = (r - (z.center - delta_)) / (2.0 * delta_);
    return z.slope_left + (z.slope_right - z.slope_left) * smoothstep(u);
}

double Profile::rho_smooth(double r) const {
    if (r < breaks_[1]) return 1.0;
    if (r < breaks_[2]) return zone_rho(zones_[0], r);
    if (r < breaks_[3]) return 2.0 * (eps_ - r) / eps_;
    if (r < breaks_[4]) return zone_rho(zones_[1], r);
    return 0.0;
}

double Profile::rho_smooth_prime(double r) const {
    if (r < breaks_[1]) return 0.0;
    if (r < breaks_[2]) return zone_rho_prime(zones_[0], r);
    if (r < breaks_[3]) return -2.0 / eps_;
    if (r < breaks_[4]) return zone_rho_prime(zones_[1], r);
    return 0.0;
}

bool Profile::in_blend_zone(double r) const {
    return (r > breaks_[1] && r < breaks_[2]) || (r > breaks_[3] && r < breaks_[4]);
}

double Profile::moment_integral(double a, double b) const {
    if (b <= a) return 0.0;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
        double s = mid + half * kGaussNodes[i];
        sum += kGaussWeights[i] * s * rho_smooth(s);
    }
    return sum * half;
}

double Profile::h_smooth(double r) const {
    if (r >= breaks_[4]) return 0.0;
    std::size_t piece = 0;
    while (piece < 3 && r >= breaks_[piece + 1]) ++piece;
    return -(moment_integral(r, breaks_[piece + 1]) + tail_moment_[piece + 1]);
}

RootSolution Profile::solve_root(double c, Branch branch, bool smoothed) const {
    double target = std::fabs(c);
    if (!(target > 0.0) || !std::isfinite(target))
        throw Error(ErrorKind::InvalidArgument, "root equation needs a nonzero finite right-hand side");
    if (target >= max_moment(smoothed))
        throw Error(ErrorKind::NoRoot, "|c| is at or beyond the merge value of r*rho(r)");

    RootSolution out;
    out.ill_conditioned = 0.5 * eps_ - target < delta_;
    double root;
    double outer_seed = 0.5 * (eps_ + std::sqrt(std::max(0.0, eps_ * eps_ - 2.0 * target * eps_)));
    double seed = branch == Branch::Inner ? target : outer_seed;
    if (!smoothed) {
        root = seed;
    } else if (!in_blend_zone(seed) && seed * rho_smooth(seed) == target) {
        root = seed;
    } else {
        double lo, hi;
        if (branch == Branch::Inner) {
            lo = 0.0;
            hi = peak_radius_smooth_;
        } else {
            lo = peak_radius_smooth_;
            hi = breaks_[4];
        }
        auto f = [&](double r) { return r * rho_smooth(r) - target; };
        std::uintmax_t max_iter = 200;
        auto [a, b] = boost::math::tools::toms748_solve(
            f, lo, hi, boost::math::tools::eps_tolerance<double>(52), max_iter);
        root = std::fabs(f(a)) <= std::fabs(f(b)) ? a : b;
    }
    out.r = c < 0 ? -root : root;
    return out;
}

RootSolution solve_profile_root(double c, Branch branch, const TwistParams& params, bool smoothed) {
    return Profile(params).solve_root(c, branch, smoothed);
}

}  // namespace eggbeater
