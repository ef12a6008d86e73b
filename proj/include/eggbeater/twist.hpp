#pragma once

#include "eggbeater/linalg.hpp"
#include "eggbeater/profile.hpp"
#include "eggbeater/words.hpp"

#include <vector>

namespace eggbeater {

// Point of the plumbing model in one of the two cotangent-bundle charts.
// Chart 1 is T*T^n_1 with fiber v and base x; chart 2 is T*T^n_2 whose fiber is the
// chart-1 base and whose base is minus the chart-1 fiber, (x, v) -> (v, -x).
// The base is stored reduced to [-1/2, 1/2)^n with its deck translation in winding, so
// large twists never round the reduced coordinate; fiber_winding keeps the deck
// translation of the other torus so that no lift information is lost.
struct ChartPoint {
    int chart = 1;
    Vec v;
    Vec base;
    IVec winding;
    IVec fiber_winding;

    const Vec& x() const { return base; }
    Vec x_lift() const { return base + winding.cast<double>(); }
    int n() const { return static_cast<int>(v.size()); }
};

// Chart-1 point with reduced fiber v and base x.
ChartPoint make_chart_point(const Vec& v, const Vec& x);

// Lifted chart-1 coordinates (V, X) of a point, and the inverse.
struct GlobalLift {
    Vec v;
    Vec x;
};
GlobalLift global_lift(const ChartPoint& p);
ChartPoint from_global(const GlobalLift& lift, int chart);

// Radius of each cotangent disk bundle in the model.
constexpr double kBundleRadius = 0.25;

bool in_chart_domain(const ChartPoint& p);
// Re-express in the other chart; returns false when the point is outside the overlap.
bool to_chart(ChartPoint& p, int chart);

ChartPoint twist_flow(const ChartPoint& p, double t, double coefficient, const Profile& profile);
ChartPoint twist_flow(const ChartPoint& p, double t, double coefficient, const TwistParams& params);

// Jacobian of the time-t twist in the chart's (base, fiber) coordinates.
Mat twist_jacobian(const Vec& fiber, double t, double coefficient, const Profile& profile);

// coefficient * (rho_delta(|y|) I + rho_delta'(|y|)/|y| y y^T), the derivative of
// coefficient * rho_delta(|y|) y.
Mat profile_jacobian(const Vec& y, double coefficient, const Profile& profile);

struct HamiltonianSegment {
    int chart = 1;
    double coefficient = 0.0;  // k N
    double duration = 1.0;
    std::size_t syllable = 0;  // index into the even word
};

std::vector<HamiltonianSegment> build_hamiltonian_path(const EvenWord& w, const TwistParams& params);

double segment_hamiltonian(const HamiltonianSegment& seg, const ChartPoint& p, const Profile& profile);
ChartPoint apply_segment(const ChartPoint& p, const HamiltonianSegment& seg, const Profile& profile,
                         double t = 1.0);

struct ApplyResult {
    ChartPoint point;
    bool escaped = false;
};

ApplyResult apply_word(const ChartPoint& p, const Word& w, const TwistParams& params);
ApplyResult apply_segments(const ChartPoint& p, const std::vector<HamiltonianSegment>& segments,
                           const Profile& profile);

}  // namespace eggbeater
