#include "eggbeater/action.hpp"

#include "eggbeater/errors.hpp"
#include "eggbeater/twist.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace eggbeater {

namespace {

double sum_in_order(const std::vector<double>& values) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

template <class F>
double integrate_unit(F&& f, double a, double b, double rel_tol) {
    using boost::math::quadrature::gauss;
    double coarse = gauss<double, 64>::integrate(f, a, b);
    double fine = gauss<double, 128>::integrate(f, a, b);
    if (std::fabs(fine - coarse) <= rel_tol * std::max(std::fabs(fine), 1e-300)) return fine;
    return gauss<double, 256>::integrate(f, a, b);
}

struct SegmentIntegral {
    double hamiltonian = 0.0;
    double primitive = 0.0;
};

// Integrals of H and of the chart primitive along the twist flow from p over [t0, t1].
SegmentIntegral integrate_segment(const ChartPoint& p, const HamiltonianSegment& seg, const Profile& profile,
                                  double t0, double t1, double rel_tol) {
    SegmentIntegral out;
    if (t1 <= t0) return out;
    auto state = [&](double t) { return apply_segment(p, seg, profile, t); };
    out.hamiltonian = integrate_unit([&](double t) { return segment_hamiltonian(seg, state(t), profile); }, t0, t1,
                                     rel_tol);
    // Fiber times base velocity in the segment's own chart.
    out.primitive = integrate_unit(
        [&](double t) {
            ChartPoint q = state(t);
            return q.v.dot(seg.coefficient * profile.rho_smooth(q.v.norm()) * q.v);
        },
        t0, t1, rel_tol);
    return out;
}

Vec chart1_fiber(ChartPoint q) {
    to_chart(q, 1);
    return q.v;
}

}  // namespace

ActionBreakdown action_closed(const FixedPointRecord& fp) {
    auto ks = step_exponents(fp.word);
    Profile profile(fp.params);
    const int m = fp.m(), n = fp.params.n;
    const double N = static_cast<double>(fp.params.N);
    ActionBreakdown out;
    out.method = ActionBreakdown::Method::ClosedForm;
    for (int j = 0; j < m; ++j) {
        Vec beta = fp.cls.beta_vector(j, n), alpha = fp.cls.alpha_vector(j, n);
        const Vec& X = fp.x[j];
        const Vec& V = fp.v[(j + 1) % m];
        double b_seg = N * ks.kb[j] * profile.h(X.norm()) + X.dot(beta);
        double a_seg = N * ks.ka[j] * profile.h(V.norm()) - V.dot(alpha);
        out.segment_values.push_back(b_seg);
        out.segment_values.push_back(a_seg);
    }
    out.total = sum_in_order(out.segment_values);
    return out;
}

double action_coupling(const FixedPointRecord& fp) {
    const int m = fp.m();
    double total = 0.0;
    for (int j = 0; j < m; ++j) total += fp.x[j].dot(fp.v[(j + 1) % m] - fp.v[j]);
    return total;
}

ActionBreakdown action_exact(const FixedPointRecord& fp, const ActionOptions& options) {
    Profile profile(fp.params);
    auto segments = build_hamiltonian_path(fp.word, fp.params);
    const int m = fp.m();
    const double eta = options.transition_shift;
    if (!(eta >= 0.0 && eta < 1.0)) throw Error(ErrorKind::InvalidArgument, "transition shift must lie in [0, 1)");
    ActionBreakdown out;
    out.method = ActionBreakdown::Method::ExactIntegral;
    for (int j = 0; j < m; ++j) {
        ChartPoint start = make_chart_point(fp.v[j], fp.x[j]);
        const auto& b_seg = segments[2 * j];
        const auto& a_seg = segments[2 * j + 1];

        // b-twist on chart 2, switching back to chart 1 at time 1 - eta.
        ChartPoint in2 = start;
        if (!to_chart(in2, 2)) throw Error(ErrorKind::EscapedBox, "orbit point outside the overlap");
        double switch_time = 1.0 - eta;
        SegmentIntegral b = integrate_segment(in2, b_seg, profile, 0.0, switch_time, options.relative_tol);
        SegmentIntegral b_tail = integrate_segment(in2, b_seg, profile, switch_time, 1.0, options.relative_tol);
        ChartPoint at_switch = apply_segment(in2, b_seg, profile, switch_time);
        ChartPoint b_end = apply_segment(in2, b_seg, profile, 1.0);
        if (eta > 0.0 && (at_switch.winding != b_end.winding || !(at_switch.x().norm() < kBundleRadius)))
            throw Error(ErrorKind::InvalidArgument, "shifted chart transition leaves the overlap");
        Vec v_switch = chart1_fiber(at_switch);
        Vec x_switch = at_switch.v;
        // On chart 1 the b-flow leaves x fixed, so lambda_1 contributes nothing after the switch.
        double b_transition = -v_switch.dot(x_switch);
        double b_value = (b.hamiltonian + b_tail.hamiltonian) - b.primitive + b_transition;

        ChartPoint after_b = b_end;
        to_chart(after_b, 1);
        SegmentIntegral a = integrate_segment(after_b, a_seg, profile, 0.0, 1.0, options.relative_tol);
        ChartPoint after_a = apply_segment(after_b, a_seg, profile, 1.0);
        double a_transition = after_a.v.dot(after_a.x());
        double a_value = a.hamiltonian - a.primitive + a_transition;

        out.hamiltonian_terms.push_back(b.hamiltonian + b_tail.hamiltonian);
        out.hamiltonian_terms.push_back(a.hamiltonian);
        out.primitive_terms.push_back(b.primitive);
        out.primitive_terms.push_back(a.primitive);
        out.transition_terms.push_back(b_transition);
        out.transition_terms.push_back(a_transition);
        out.segment_values.push_back(b_value);
        out.segment_values.push_back(a_value);
    }
    out.total = sum_in_order(out.segment_values);
    return out;
}

SignPattern extremal_pattern(const EvenWord& word) {
    auto ks = step_exponents(word);
    SignPattern s;
    for (std::size_t j = 0; j < ks.ka.size(); ++j) {
        s.sigma.push_back(ks.kb[j] > 0 ? -1 : 1);
        s.xi.push_back(ks.ka[j] > 0 ? -1 : 1);
    }
    return s;
}

GapResult action_gap(const std::vector<FixedPointRecord>& records, const std::vector<IndexValue>& indices,
                     const std::vector<double>& actions) {
    if (records.empty()) throw Error(ErrorKind::IncompleteCensus, "no census records");
    const int m = records.front().m();
    const std::size_t expected = std::size_t(1) << (2 * m);
    if (records.size() != expected || indices.size() != expected || actions.size() != expected)
        throw Error(ErrorKind::IncompleteCensus, "census has " + std::to_string(records.size()) + " of " +
                                                     std::to_string(expected) + " records");
    for (std::size_t i = 0; i < expected; ++i)
        if (records[i].signs.index() != i)
            throw Error(ErrorKind::IncompleteCensus, "census records are not ordered by pattern");

    GapResult out;
    SignPattern p = extremal_pattern(records.front().word);
    out.extremal_pattern = p.index();
    out.extremal_index = indices[out.extremal_pattern];
    std::int64_t hi = indices[0].doubled, lo = indices[0].doubled;
    for (const auto& iv : indices) {
        hi = std::max(hi, iv.doubled);
        lo = std::min(lo, iv.doubled);
    }
    out.extremal_is_max = out.extremal_index.doubled == hi;
    std::int64_t extreme = out.extremal_is_max ? hi : lo;
    int hits = 0;
    for (const auto& iv : indices) hits += iv.doubled == extreme;
    out.extremal_unique = (out.extremal_index.doubled == hi || out.extremal_index.doubled == lo) && hits == 1;

    out.D = std::numeric_limits<double>::infinity();
    double base = actions[out.extremal_pattern];
    for (int bit = 0; bit < 2 * m; ++bit) {
        std::uint64_t q = out.extremal_pattern ^ (std::uint64_t(1) << bit);
        GapWitness w{q, actions[q] - base, indices[q]};
        out.witnesses.push_back(w);
        if (std::fabs(w.difference) < out.D) {
            out.D = std::fabs(w.difference);
            out.closest_pattern = q;
        }
    }
    return out;
}

}  // namespace eggbeater
