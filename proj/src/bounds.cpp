#include "eggbeater/bounds.hpp"

#include "eggbeater/errors.hpp"
#include "eggbeater/parallel.hpp"

#include <cmath>
#include <sstream>

namespace eggbeater {

std::vector<RecordAnalysis> analyze_records(const std::vector<FixedPointRecord>& records, unsigned threads) {
    std::vector<RecordAnalysis> out(records.size());
    parallel_for(records.size(), threads, [&](std::size_t i) {
        RecordAnalysis& a = out[i];
        a.record = records[i];
        a.index = cz_index_report(records[i]);
        a.closed_index = cz_index_closed(records[i].signs, records[i].word, records[i].params.n);
        a.exact = action_exact(records[i]);
        a.closed = action_closed(records[i]);
    });
    return out;
}

LinearFit fit_affine(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw Error(ErrorKind::InvalidArgument, "fit needs >= 2 points");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss_res += r * r;
    }
    fit.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

GapSweep gap_sweep_and_fit(const EvenWord& word, int n, double epsilon, DeltaRule delta_rule, const ClassRule& rule,
                           const std::vector<std::int64_t>& N_values, const SweepOptions& options) {
    if (N_values.size() < 3) throw Error(ErrorKind::InvalidArgument, "gap sweep needs at least 3 values of N");
    for (std::size_t i = 1; i < N_values.size(); ++i)
        if (N_values[i] <= N_values[i - 1])
            throw Error(ErrorKind::InvalidArgument, "sweep values of N must be strictly increasing");
    GapSweep sweep;
    sweep.word = word;
    sweep.n = n;
    sweep.epsilon = epsilon;
    sweep.delta_rule = delta_rule;
    sweep.rule = rule;
    sweep.N_values = N_values;
    for (auto N : N_values) {
        TwistParams params = make_params(n, epsilon, N, delta_rule);
        GapPoint pt;
        pt.N = N;
        pt.cls = make_class(rule, word.m(), params);
        auto records = census(word, params, pt.cls, options.threads, options.solver);
        auto analysis = analyze_records(records, options.threads);
        std::vector<IndexValue> indices;
        std::vector<double> actions;
        pt.min_nondegeneracy = std::numeric_limits<double>::infinity();
        for (const auto& a : analysis) {
            indices.push_back(a.index.cz);
            actions.push_back(a.exact.total);
            pt.min_nondegeneracy = std::min(pt.min_nondegeneracy, std::fabs(a.index.det_endpoint_minus_identity));
            pt.max_action_discrepancy =
                std::max(pt.max_action_discrepancy, std::fabs(a.exact.total - a.closed.total));
        }
        pt.gap = action_gap(records, indices, actions);
        pt.D = pt.gap.D;
        pt.admissible = pt.cls.admissible(params);
        pt.theory_supported = theory_supported(word, params);
        pt.records = records.size();
        sweep.symmetry_free = sweep.symmetry_free && pt.cls.symmetry_free();
        sweep.D_values.push_back(pt.D);
        sweep.points.push_back(std::move(pt));
    }
    std::vector<double> xs(N_values.begin(), N_values.end());
    auto fit = fit_affine(xs, sweep.D_values);
    sweep.fitted_slope = fit.slope;
    sweep.fitted_intercept = fit.intercept;
    sweep.fit_r2 = fit.r2;
    return sweep;
}

int smallest_prime_factor(int k) {
    if (k < 2) throw Error(ErrorKind::InvalidArgument, "power must be at least 2");
    for (int p = 2; p * p <= k; ++p)
        if (k % p == 0) return p;
    return k;
}

PowerBoundTable hofer_power_bound(int k, const GapSweep& sweep, const EvenWord& base) {
    PowerBoundTable table;
    table.k = k;
    table.prime = smallest_prime_factor(k);
    EvenWord expected;
    for (int i = 0; i < table.prime; ++i)
        expected.exponents.insert(expected.exponents.end(), base.exponents.begin(), base.exponents.end());
    if (!(sweep.word == expected))
        throw Error(ErrorKind::InvalidArgument, "sweep word is not the base word raised to " +
                                                    std::to_string(table.prime));
    if (!sweep.symmetry_free)
        throw Error(ErrorKind::Rejected, "sweep classes have a cyclic symmetry");
    table.N_values = sweep.N_values;
    table.positive = true;
    table.monotone_increasing = true;
    for (std::size_t i = 0; i < sweep.D_values.size(); ++i) {
        double b = sweep.D_values[i] / (4.0 * table.prime);
        table.positive = table.positive && b > 0.0;
        if (i > 0 && !(b > table.bounds.back())) table.monotone_increasing = false;
        table.bounds.push_back(b);
    }
    return table;
}

Word power_commutator(const PowerCase& power) {
    Word g = Word::generator(power.generator, power.exponent);
    Word h = Word::generator(other(power.generator), 1);
    return h * g * h.inverse() * g.inverse();
}

NormCertificate hofer_norm_bound(const Word& word, const SweepProvider& sweeps) {
    if (word.is_identity()) throw Error(ErrorKind::InvalidArgument, "identity word has no norm bound");
    NormCertificate cert;
    cert.word = word;
    auto form = to_even_form(word);
    if (const auto* even = std::get_if<EvenWord>(&form.form)) {
        cert.kind = form.conjugator.is_identity() ? "even" : "conjugate";
        cert.conjugator = form.conjugator;
        cert.even_word = *even;
    } else {
        // ||g|| >= ||[h, g]|| / 2 by the triangle inequality and conjugation invariance.
        cert.kind = "power";
        auto commutator_form = to_even_form(power_commutator(std::get<PowerCase>(form.form)));
        cert.conjugator = form.conjugator;
        cert.even_word = std::get<EvenWord>(commutator_form.form);
        cert.factor = 0.5;
    }
    const GapSweep& sweep = sweeps(cert.even_word);
    cert.N_values = sweep.N_values;
    cert.positive = true;
    for (double D : sweep.D_values) {
        cert.bounds.push_back(cert.factor * D);
        cert.positive = cert.positive && cert.factor * D > 0.0;
    }
    cert.slope = cert.factor * sweep.fitted_slope;
    cert.intercept = cert.factor * sweep.fitted_intercept;
    cert.positive = cert.positive && cert.slope > 0.0;
    return cert;
}

}  // namespace eggbeater
