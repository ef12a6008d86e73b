#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace eggbeater {

struct DeltaRule {
    enum class Kind { InverseNSquared, Fixed } kind = Kind::InverseNSquared;
    double value = 0.0;  // used when kind == Fixed

    static DeltaRule inverse_n_squared() { return {}; }
    static DeltaRule fixed(double v) { return {Kind::Fixed, v}; }
    std::string to_string() const;
};

struct TwistParams {
    int n = 1;               // torus dimension
    double epsilon = 0.01;   // profile width
    double delta = 1e-6;     // smoothing width
    std::int64_t N = 1000;   // twist strength

    // Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

// delta = 1/N^2, capped below min(1e-4, epsilon/100).
double default_delta(double epsilon, std::int64_t N);
TwistParams make_params(int n, double epsilon, std::int64_t N, DeltaRule rule = {});

enum class Branch { Inner, Outer };  // "-" for |r| < eps/2, "+" for eps/2 < |r| < eps

inline int branch_sign(Branch b) { return b == Branch::Inner ? -1 : 1; }
inline Branch branch_of_sign(int s) { return s < 0 ? Branch::Inner : Branch::Outer; }

struct RootSolution {
    double r = 0.0;               // signed root of r * rho(|r|) = c
    bool ill_conditioned = false; // |c| within delta of the merge value
};

// Radial profile rho, its smoothing rho_delta and the primitives h, h_delta.
class Profile {
public:
    Profile(double epsilon, double delta);
    explicit Profile(const TwistParams& params) : Profile(params.epsilon, params.delta) {}

    double epsilon() const { return eps_; }
    double delta() const { return delta_; }

    double rho(double r) const;
    double rho_prime(double r) const;
    double h(double r) const;

    double rho_smooth(double r) const;
    double rho_smooth_prime(double r) const;
    double h_smooth(double r) const;

    double rho(double r, bool smoothed) const { return smoothed ? rho_smooth(r) : rho(r); }
    double rho_prime(double r, bool smoothed) const { return smoothed ? rho_smooth_prime(r) : rho_prime(r); }
    double h(double r, bool smoothed) const { return smoothed ? h_smooth(r) : h(r); }

    // True when r lies in one of the smoothing zones around eps/2 and eps.
    bool in_blend_zone(double r) const;

    // Largest value of r * rho(r) and where it is attained.
    double max_moment(bool smoothed) const { return smoothed ? peak_value_smooth_ : 0.5 * eps_; }
    double peak_radius(bool smoothed) const { return smoothed ? peak_radius_smooth_ : 0.5 * eps_; }

    RootSolution solve_root(double c, Branch branch, bool smoothed = true) const;

private:
    // Blend zone i is centred on kinks_[i] with slopes left/right of the kink.
    struct Zone {
        double center;
        double value_left;  // rho at center - delta
        double slope_left;
        double slope_right;
    };
    double zone_rho(const Zone& z, double r) const;
    double zone_rho_prime(const Zone& z, double r) const;
    // Integral of s * rho_delta(s) over [a, b] within a single polynomial piece.
    double moment_integral(double a, double b) const;

    double eps_;
    double delta_;
    std::array<Zone, 2> zones_;
    std::array<double, 5> breaks_;       // piece boundaries
    std::array<double, 5> tail_moment_;  // integral of s*rho_delta from breaks_[i] to eps+delta
    double peak_radius_smooth_ = 0.0;
    double peak_value_smooth_ = 0.0;
};

// Root of r * rho_delta(|r|) = c on the requested branch.
RootSolution solve_profile_root(double c, Branch branch, const TwistParams& params, bool smoothed = true);

}  // namespace eggbeater
