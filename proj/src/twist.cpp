#include "eggbeater/twist.hpp"

#include "eggbeater/errors.hpp"

#include <cmath>

namespace eggbeater {

ChartPoint make_chart_point(const Vec& v, const Vec& x) {
    if (v.size() != x.size()) throw Error(ErrorKind::InvalidArgument, "fiber and base dimensions differ");
    return from_global({v, x}, 1);
}

GlobalLift global_lift(const ChartPoint& p) {
    Vec fiber = p.v + p.fiber_winding.cast<double>();
    if (p.chart == 1) return {fiber, p.x_lift()};
    return {-p.x_lift(), fiber};
}

ChartPoint from_global(const GlobalLift& lift, int chart) {
    ChartPoint p;
    p.chart = chart;
    const Vec base = chart == 1 ? Vec(lift.x) : Vec(-lift.v);
    const Vec fiber = chart == 1 ? lift.v : lift.x;
    p.winding = nearest_lattice(base);
    p.base = base - p.winding.cast<double>();
    p.fiber_winding = nearest_lattice(fiber);
    p.v = fiber - p.fiber_winding.cast<double>();
    return p;
}

bool in_chart_domain(const ChartPoint& p) {
    return p.v.allFinite() && p.base.allFinite() && p.v.norm() < kBundleRadius;
}

bool to_chart(ChartPoint& p, int chart) {
    if (p.chart == chart) return true;
    if (!(p.x().norm() < kBundleRadius)) return false;
    // Chart 1 -> 2 maps (fiber, base) to (base, -fiber), chart 2 -> 1 maps it to (-base, fiber);
    // reduced coordinates and windings are transformed separately.
    const int s = chart == 2 ? 1 : -1;
    ChartPoint q;
    q.chart = chart;
    Vec fiber = s * p.base;
    IVec fiber_winding = s * p.winding;
    Vec base = -s * p.v;
    IVec winding = -s * p.fiber_winding;
    IVec fiber_extra = nearest_lattice(fiber);
    IVec base_extra = nearest_lattice(base);
    q.v = fiber - fiber_extra.cast<double>();
    q.fiber_winding = fiber_winding + fiber_extra;
    q.base = base - base_extra.cast<double>();
    q.winding = winding + base_extra;
    p = std::move(q);
    return true;
}

Mat profile_jacobian(const Vec& y, double coefficient, const Profile& profile) {
    const Eigen::Index n = y.size();
    double r = y.norm();
    Mat out = profile.rho_smooth(r) * Mat::Identity(n, n);
    if (r > 0.0) out += (profile.rho_smooth_prime(r) / r) * (y * y.transpose());
    return coefficient * out;
}

ChartPoint twist_flow(const ChartPoint& p, double t, double coefficient, const Profile& profile) {
    ChartPoint out = p;
    double r = p.v.norm();
    double speed = t * coefficient * profile.rho_smooth(r);
    if (speed != 0.0) {
        Vec shift = speed * p.v;
        IVec whole = nearest_lattice(shift);
        Vec moved = p.base + (shift - whole.cast<double>());
        IVec extra = nearest_lattice(moved);
        out.base = moved - extra.cast<double>();
        out.winding = p.winding + whole + extra;
    }
    return out;
}

ChartPoint twist_flow(const ChartPoint& p, double t, double coefficient, const TwistParams& params) {
    return twist_flow(p, t, coefficient, Profile(params));
}

Mat twist_jacobian(const Vec& fiber, double t, double coefficient, const Profile& profile) {
    const Eigen::Index n = fiber.size();
    Mat S = Mat::Identity(2 * n, 2 * n);
    S.topRightCorner(n, n) = profile_jacobian(fiber, t * coefficient, profile);
    return S;
}

std::vector<HamiltonianSegment> build_hamiltonian_path(const EvenWord& w, const TwistParams& params) {
    auto ks = w.machine_exponents();
    if (ks.empty() || ks.size() % 2 != 0)
        throw Error(ErrorKind::InvalidArgument, "even word needs 2m exponents");
    std::vector<HamiltonianSegment> path;
    path.reserve(ks.size());
    // The last syllable acts first.
    for (std::size_t i = ks.size(); i-- > 0;) {
        HamiltonianSegment seg;
        seg.chart = i % 2 == 0 ? 1 : 2;
        seg.coefficient = static_cast<double>(ks[i]) * static_cast<double>(params.N);
        seg.syllable = i;
        path.push_back(seg);
    }
    return path;
}

double segment_hamiltonian(const HamiltonianSegment& seg, const ChartPoint& p, const Profile& profile) {
    ChartPoint q = p;
    if (!to_chart(q, seg.chart)) return 0.0;  // outside this bundle the Hamiltonian vanishes
    return seg.coefficient * profile.h_smooth(q.v.norm());
}

ChartPoint apply_segment(const ChartPoint& p, const HamiltonianSegment& seg, const Profile& profile,
                         double t) {
    ChartPoint q = p;
    if (!to_chart(q, seg.chart)) return q;  // base outside the other bundle: twist acts trivially
    return twist_flow(q, t * seg.duration, seg.coefficient, profile);
}

ApplyResult apply_segments(const ChartPoint& p, const std::vector<HamiltonianSegment>& segments,
                           const Profile& profile) {
    ApplyResult out{p, !in_chart_domain(p)};
    if (out.escaped) return out;
    for (const auto& seg : segments) {
        out.point = apply_segment(out.point, seg, profile);
        if (!in_chart_domain(out.point)) {
            out.escaped = true;
            return out;
        }
    }
    return out;
}

ApplyResult apply_word(const ChartPoint& p, const Word& w, const TwistParams& params) {
    Profile profile(params);
    std::vector<HamiltonianSegment> segments;
    const auto& syl = w.syllables();
    const Exponent limit = Exponent(1) << 40;
    for (std::size_t i = syl.size(); i-- > 0;) {
        if (abs(syl[i].exponent) > limit)
            throw Error(ErrorKind::InvalidArgument, "exponent exceeds the dynamics range");
        HamiltonianSegment seg;
        seg.chart = syl[i].generator == Generator::A ? 1 : 2;
        seg.coefficient = syl[i].exponent.convert_to<double>() * static_cast<double>(params.N);
        seg.syllable = i;
        segments.push_back(seg);
    }
    return apply_segments(p, segments, profile);
}

}  // namespace eggbeater
