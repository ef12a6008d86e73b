#include "commands.hpp"

#include "eggbeater/bounds.hpp"
#include "eggbeater/errors.hpp"
#include "eggbeater/parallel.hpp"
#include "eggbeater/rng.hpp"
#include "eggbeater/symplectic.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

namespace eggbeater::cli {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string kind_of(const std::exception& e) {
    if (auto* err = dynamic_cast<const Error*>(&e)) return error_kind_name(err->kind());
    return "Exception";
}

TwistParams params_for(const RunConfig& c, std::int64_t N) { return make_params(c.n, c.epsilon, N, c.delta_rule); }

SolverOptions solver_for(const RunConfig& c) {
    SolverOptions opt;
    opt.tolerance = c.residual_tol;
    return opt;
}

std::string task_name(std::int64_t N, const std::string& what) { return "N=" + std::to_string(N) + " " + what; }

struct CensusData {
    std::int64_t N = 0;
    TwistParams params;
    HomotopyClassSpec cls;
    std::vector<FixedPointRecord> records;  // found records, by pattern
};

std::vector<CensusData> run_census(const RunConfig& c, CommandResult& out) {
    std::vector<CensusData> all;
    for (auto N : c.sweep) {
        CensusData d;
        d.N = N;
        d.params = params_for(c, N);
        d.cls = make_class(c.classes, c.word.m(), d.params);
        auto outcome = census_partial(c.word, d.params, d.cls, c.threads, solver_for(c));
        for (auto& r : outcome.records)
            if (r) d.records.push_back(std::move(*r));
        for (const auto& f : outcome.failures)
            out.failures.push_back({task_name(N, "pattern " + SignPattern::from_index(f.pattern, c.word.m()).to_string()),
                                    "census", f.message});
        all.push_back(std::move(d));
    }
    return all;
}

struct Analysis {
    std::optional<PipelineReport> index;
    IndexValue closed_index;
    std::optional<ActionBreakdown> exact;
    ActionBreakdown closed;
    std::vector<TaskFailure> failures;
};

std::vector<Analysis> analyze(const std::vector<FixedPointRecord>& records, unsigned threads) {
    std::vector<Analysis> out(records.size());
    parallel_for(records.size(), threads, [&](std::size_t i) {
        const auto& r = records[i];
        auto& a = out[i];
        std::string task = task_name(r.params.N, "pattern " + r.signs.to_string());
        a.closed_index = cz_index_closed(r.signs, r.word, r.params.n);
        a.closed = action_closed(r);
        try {
            a.index = cz_index_report(r);
        } catch (const std::exception& e) {
            a.failures.push_back({task + " index", kind_of(e), e.what()});
        }
        try {
            a.exact = action_exact(r);
        } catch (const std::exception& e) {
            a.failures.push_back({task + " action", kind_of(e), e.what()});
        }
    });
    return out;
}

void collect(const std::vector<Analysis>& analyses, CommandResult& out) {
    for (const auto& a : analyses) out.failures.insert(out.failures.end(), a.failures.begin(), a.failures.end());
}

std::string segments_text(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + format_double(values[i]);
    return s;
}

// ---------------------------------------------------------------------------------------------

CommandResult cmd_profiles(const RunConfig& c) {
    CommandResult out;
    Table t{"profiles", {"N", "delta", "r", "rho", "rho_delta", "h", "h_delta"}, {}};
    std::vector<Series> series;
    for (auto N : c.sweep) {
        auto params = params_for(c, N);
        Profile p(params);
        Series rho{"rho", {}, {}}, rho_d{"rho_delta N=" + std::to_string(N), {}, {}};
        for (int i = 0; i < c.profile_samples; ++i) {
            double r = 1.2 * c.epsilon * i / (c.profile_samples - 1);
            t.add({integer(N), number(params.delta), number(r), number(p.rho(r)), number(p.rho_smooth(r)), number(p.h(r)),
                   number(p.h_smooth(r))});
            rho.xs.push_back(r);
            rho.ys.push_back(p.rho(r));
            rho_d.xs.push_back(r);
            rho_d.ys.push_back(p.rho_smooth(r));
        }
        if (series.empty()) series.push_back(rho);
        series.push_back(rho_d);
    }
    out.tables.push_back(std::move(t));
    out.svgs.push_back({"profiles.svg", svg_plot("radial profile", "r", "rho", series)});
    out.summary = std::to_string(c.profile_samples) + " samples per N";
    return out;
}

CommandResult cmd_roots(const RunConfig& c) {
    CommandResult out;
    Table t{"roots", {"N", "class", "step", "box", "sign", "c", "root", "root_unsmoothed", "ill_conditioned"}, {}};
    for (auto N : c.sweep) {
        auto params = params_for(c, N);
        auto cls = make_class(c.classes, c.word.m(), params);
        for (int sign : {-1, 1}) {
            try {
                auto boxes = build_boxes(cls, SignPattern::uniform(c.word.m(), sign), c.word, params);
                for (const auto& b : boxes) {
                    Branch branch = branch_of_sign(b.sign);
                    double root = solve_profile_root(b.c, branch, params).r;
                    double raw = kNaN;
                    try {
                        raw = solve_profile_root(b.c, branch, params, false).r;
                    } catch (const Error&) {
                    }
                    t.add({integer(N), text(cls.to_string()), integer(b.step), text(b.kind == BoxSpec::Kind::X ? "X" : "V"),
                           integer(b.sign), number(b.c), number(root), number(raw), boolean(b.ill_conditioned)});
                }
            } catch (const Error& e) {
                out.failures.push_back({task_name(N, sign < 0 ? "inner roots" : "outer roots"), kind_of(e), e.what()});
            }
        }
    }
    out.summary = std::to_string(t.rows.size()) + " roots";
    out.tables.push_back(std::move(t));
    return out;
}

CommandResult cmd_fixed_points(const RunConfig& c) {
    CommandResult out;
    Table t{"fixed_points",
            {"N", "class", "signs", "pattern", "v_states", "x_states", "residual", "box_margin", "iterations", "method",
             "admissible", "theory_supported", "ill_conditioned", "blend_zone"},
            {}};
    for (const auto& d : run_census(c, out))
        for (const auto& r : d.records)
            t.add({integer(d.N), text(d.cls.to_string()), text(r.signs.to_string()), integer(r.signs.index()),
                   states_cell(r.v), states_cell(r.x), number(r.residual), number(r.box_margin), integer(r.iterations),
                   text(r.method), boolean(r.admissible), boolean(r.theory_supported), boolean(r.ill_conditioned),
                   boolean(r.blend_zone)});
    out.summary = std::to_string(t.rows.size()) + " fixed points";
    out.tables.push_back(std::move(t));
    return out;
}

CommandResult cmd_census(const RunConfig& c) {
    CommandResult out;
    Table t{"census",
            {"N", "class", "signs", "v0", "x0", "residual", "action_closed", "action_exact", "cz_index", "v_states",
             "x_states"},
            {}};
    for (const auto& d : run_census(c, out)) {
        auto analyses = analyze(d.records, c.threads);
        collect(analyses, out);
        for (std::size_t i = 0; i < d.records.size(); ++i) {
            const auto& r = d.records[i];
            const auto& a = analyses[i];
            t.add({integer(d.N), text(d.cls.to_string()), text(r.signs.to_string()), vector_cell(r.v[0]),
                   vector_cell(r.x[0]), number(r.residual), number(a.closed.total), number(a.exact ? a.exact->total : kNaN),
                   text(a.index ? a.index->cz.to_string() : ""), states_cell(r.v), states_cell(r.x)});
        }
    }
    out.summary = std::to_string(t.rows.size()) + " census rows";
    out.tables.push_back(std::move(t));
    return out;
}

CommandResult cmd_indices(const RunConfig& c) {
    CommandResult out;
    Table t{"indices",
            {"N", "class", "signs", "cz_pipeline", "cz_closed", "rs", "equal", "det_gamma_minus_identity",
             "signature_checks", "checks_ok"},
            {}};
    for (const auto& d : run_census(c, out)) {
        auto analyses = analyze(d.records, c.threads);
        collect(analyses, out);
        for (std::size_t i = 0; i < d.records.size(); ++i) {
            const auto& a = analyses[i];
            if (!a.index) continue;
            std::string checks;
            bool ok = true;
            for (const auto& ch : a.index->checks) {
                checks += (checks.empty() ? "" : " ") + ch.name + ":" + std::to_string(ch.observed) + "/" +
                          std::to_string(ch.expected);
                ok = ok && ch.ok();
            }
            t.add({integer(d.N), text(d.cls.to_string()), text(d.records[i].signs.to_string()),
                   text(a.index->cz.to_string()), text(a.closed_index.to_string()), text(a.index->rs.to_string()),
                   boolean(a.index->cz == a.closed_index), number(a.index->det_endpoint_minus_identity), text(checks),
                   boolean(ok)});
        }
    }
    out.summary = std::to_string(t.rows.size()) + " indices";
    out.tables.push_back(std::move(t));
    return out;
}

CommandResult cmd_actions(const RunConfig& c) {
    CommandResult out;
    Table t{"actions",
            {"N", "class", "signs", "action_closed", "action_exact", "discrepancy", "coupling", "segments_closed",
             "segments_exact"},
            {}};
    for (const auto& d : run_census(c, out)) {
        auto analyses = analyze(d.records, c.threads);
        collect(analyses, out);
        for (std::size_t i = 0; i < d.records.size(); ++i) {
            const auto& a = analyses[i];
            if (!a.exact) continue;
            t.add({integer(d.N), text(d.cls.to_string()), text(d.records[i].signs.to_string()), number(a.closed.total),
                   number(a.exact->total), number(std::fabs(a.exact->total - a.closed.total)),
                   number(action_coupling(d.records[i])),
                   text(segments_text(a.closed.segment_values)), text(segments_text(a.exact->segment_values))});
        }
    }
    out.summary = std::to_string(t.rows.size()) + " actions";
    out.tables.push_back(std::move(t));
    return out;
}

CommandResult cmd_gaps(const RunConfig& c) {
    CommandResult out;
    SweepOptions opt{c.threads, solver_for(c)};
    auto sweep = gap_sweep_and_fit(c.word, c.n, c.epsilon, c.delta_rule, c.classes, c.sweep, opt);
    const int m = c.word.m();
    Table t{"gaps",
            {"N", "class", "D", "D_over_N", "extremal_signs", "extremal_index", "extremal_is_max", "extremal_unique",
             "closest_signs", "min_nondegeneracy", "max_action_discrepancy", "admissible", "theory_supported"},
            {}};
    for (const auto& p : sweep.points)
        t.add({integer(p.N), text(p.cls.to_string()), number(p.D), number(p.D / static_cast<double>(p.N)),
               text(SignPattern::from_index(p.gap.extremal_pattern, m).to_string()), text(p.gap.extremal_index.to_string()),
               boolean(p.gap.extremal_is_max), boolean(p.gap.extremal_unique),
               text(SignPattern::from_index(p.gap.closest_pattern, m).to_string()), number(p.min_nondegeneracy),
               number(p.max_action_discrepancy), boolean(p.admissible), boolean(p.theory_supported)});
    Table fit{"gaps_fit", {"word", "slope", "intercept", "r2", "points", "symmetry_free"}, {}};
    fit.add({text(c.word.word().to_string()), number(sweep.fitted_slope), number(sweep.fitted_intercept),
             number(sweep.fit_r2), integer(static_cast<std::int64_t>(sweep.points.size())), boolean(sweep.symmetry_free)});
    Series data{"D(N)", {}, {}, true}, line{"fit", {}, {}};
    for (std::size_t i = 0; i < sweep.N_values.size(); ++i) {
        double N = static_cast<double>(sweep.N_values[i]);
        data.xs.push_back(N);
        data.ys.push_back(sweep.D_values[i]);
        line.xs.push_back(N);
        line.ys.push_back(sweep.fitted_intercept + sweep.fitted_slope * N);
    }
    out.svgs.push_back({"gaps.svg", svg_plot("action gap", "N", "D", {data, line})});
    out.summary = "slope " + format_double(sweep.fitted_slope) + ", R^2 " + format_double(sweep.fit_r2);
    out.tables.push_back(std::move(t));
    out.tables.push_back(std::move(fit));
    return out;
}

CommandResult cmd_bounds(const RunConfig& c) {
    CommandResult out;
    std::map<std::string, std::unique_ptr<GapSweep>> cache;
    SweepOptions opt{c.threads, solver_for(c)};
    SweepProvider provider = [&](const EvenWord& w) -> const GapSweep& {
        auto key = w.word().to_string();
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::make_unique<GapSweep>(gap_sweep_and_fit(w, c.n, c.epsilon, c.delta_rule,
                                                                                 c.classes, c.sweep, opt)))
                     .first;
        return *it->second;
    };
    auto base = parse_even_word(c.bounds_base);
    Table power{"bounds_power", {"k", "prime", "N", "bound", "positive", "monotone_increasing"}, {}};
    for (int k : c.bounds_powers) {
        try {
            int p = smallest_prime_factor(k);
            EvenWord w;
            for (int i = 0; i < p; ++i) w.exponents.insert(w.exponents.end(), base.exponents.begin(), base.exponents.end());
            auto table = hofer_power_bound(k, provider(w), base);
            for (std::size_t i = 0; i < table.N_values.size(); ++i)
                power.add({integer(k), integer(table.prime), integer(table.N_values[i]), number(table.bounds[i]),
                           boolean(table.positive), boolean(table.monotone_increasing)});
        } catch (const std::exception& e) {
            out.failures.push_back({"power k=" + std::to_string(k), kind_of(e), e.what()});
        }
    }
    Table norm{"bounds_norm",
               {"word", "kind", "conjugator", "even_word", "factor", "N", "bound", "slope", "intercept", "positive"},
               {}};
    for (const auto& literal : c.bounds_words) {
        try {
            auto cert = hofer_norm_bound(parse_word(literal), provider);
            for (std::size_t i = 0; i < cert.N_values.size(); ++i)
                norm.add({text(cert.word.to_string()), text(cert.kind), text(cert.conjugator.to_string()),
                          text(cert.even_word.word().to_string()), number(cert.factor), integer(cert.N_values[i]),
                          number(cert.bounds[i]), number(cert.slope), number(cert.intercept), boolean(cert.positive)});
        } catch (const std::exception& e) {
            out.failures.push_back({"norm " + literal, kind_of(e), e.what()});
        }
    }
    out.summary = std::to_string(power.rows.size()) + " power rows, " + std::to_string(norm.rows.size()) + " norm rows";
    out.tables.push_back(std::move(power));
    out.tables.push_back(std::move(norm));
    return out;
}

CommandResult cmd_density(const RunConfig& c) {
    CommandResult out;
    DensityTarget target;
    target.center = Eigen::Map<const Vec>(c.density_center.data(), static_cast<Eigen::Index>(c.density_center.size()));
    target.radius = c.density_radius;
    Table t{"density",
            {"radius", "nu", "class", "signs", "witness_step", "witness_v", "witness_x", "witness_distance", "residual",
             "solves"},
            {}};
    auto r = density_experiment(c.n, c.epsilon, c.delta_rule, target, c.density_max_index);
    t.add({number(target.radius), integer(r.nu), text(r.record.cls.to_string()), text(r.record.signs.to_string()),
           integer(r.witness_step), vector_cell(r.witness_v), vector_cell(r.witness_x), number(r.witness_distance),
           number(r.record.residual), integer(r.solves)});
    out.summary = "nu0 = " + std::to_string(r.nu);
    out.tables.push_back(std::move(t));
    return out;
}

CommandResult cmd_growth(const RunConfig& c) {
    CommandResult out;
    Table t{"growth", {"period", "N", "expected", "count", "class", "failures"}, {}};
    auto params = params_for(c, c.sweep.front());
    for (int k = 1; k <= c.growth_max_period; ++k) {
        auto g = growth_count(c.word, params, k, c.classes, c.threads);
        t.add({integer(k), integer(params.N), integer(static_cast<std::int64_t>(g.expected)),
               integer(static_cast<std::int64_t>(g.count)), text(g.cls.to_string()),
               integer(static_cast<std::int64_t>(g.failures.size()))});
        for (const auto& f : g.failures)
            out.failures.push_back({"period " + std::to_string(k) + " pattern " + std::to_string(f.pattern), "growth",
                                    f.message});
    }
    out.summary = std::to_string(t.rows.size()) + " periods";
    out.tables.push_back(std::move(t));
    return out;
}

// ---------------------------------------------------------------------------------------------

struct Suite {
    std::string name;
    std::int64_t N = 0;
    std::int64_t checks = 0;
    std::int64_t passed = 0;
    bool skipped = false;
    std::string detail;
    void check(bool ok, const std::string& what) {
        ++checks;
        if (ok) ++passed;
        else if (detail.empty()) detail = what;
    }
};

double sup_residual(const FixedPointRecord& r, const Vec& z) {
    return defect_map(r.word, r.params, r.cls, z).lpNorm<Eigen::Infinity>();
}

Vec reparse(const Vec& z) {
    Vec out(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = std::stod(format_double(z[i]));
    return out;
}

void crossing_suite(const RunConfig& c, Suite& s) {
    auto rotation = [](double angle) {
        return [angle](double t) -> Mat { return Mat(-standard_J(1) * (angle * t)).exp(); };
    };
    s.check(rs_index_crossing(rotation(2.0)) == IndexValue::integer(1), "rotation by 2 rad");
    s.check(rs_index_crossing(rotation(6.283185307179586)) == IndexValue::integer(2), "full rotation");
    int done = 0;
    for (std::uint64_t trial = 0; done < c.validate_crossing_paths && trial < 100; ++trial) {
        auto rng = make_rng(c.seed, {0xC805u, trial});
        const int n = 1 + static_cast<int>(trial % 2);
        Mat J = standard_J(n);
        auto sym = [&](int size) {
            Mat A(size, size);
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) A(i, j) = 2.0 * standard_normal(rng);
            return Mat(0.5 * (A + A.transpose()));
        };
        Mat S1 = sym(2 * n), S2 = sym(2 * n);
        auto path = [=](double t) -> Mat { return Mat(-J * S1 * t).exp() * Mat(-J * S2 * (t * t)).exp(); };
        double split = 0.2 + 0.6 * uniform01(rng);
        Mat A1 = path(split), B1 = path(1.0) * A1.inverse();
        auto smin = [](const Mat& P) {
            return Eigen::JacobiSVD<Mat>(P - Mat::Identity(P.rows(), P.cols())).singularValues().minCoeff();
        };
        if (smin(A1) < 1e-3 || smin(B1) < 1e-3 || smin(path(1.0)) < 1e-3) continue;
        try {
            auto whole = rs_index_crossing(path);
            auto ia = rs_index_crossing([=](double t) { return path(split * t); });
            auto ib = rs_index_crossing([=](double t) -> Mat { return path(split + (1 - split) * t) * A1.inverse(); });
            s.check(rs_concat(ia, ib, A1, B1, ConcatMode::Nondegenerate) == whole,
                    "random path " + std::to_string(trial));
            ++done;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NonRegularCrossing && e.kind() != ErrorKind::IllConditioned) throw;
        }
    }
}

CommandResult cmd_validate(const RunConfig& c) {
    CommandResult out;
    std::vector<Suite> suites;
    for (auto N : c.sweep) {
        auto params = params_for(c, N);
        auto cls = make_class(c.classes, c.word.m(), params);
        const std::size_t expected = std::size_t(1) << (2 * c.word.m());
        auto outcome = census_partial(c.word, params, cls, c.threads, solver_for(c));
        std::vector<FixedPointRecord> records;
        for (auto& r : outcome.records)
            if (r) records.push_back(*r);

        Suite census_s{"census", N};
        census_s.check(records.size() == expected, std::to_string(records.size()) + " of " + std::to_string(expected) +
                                                       " fixed points");
        for (const auto& r : records)
            census_s.check(r.residual <= c.residual_tol && r.box_margin > 0.0,
                           "pattern " + r.signs.to_string() + " residual " + format_double(r.residual));

        Suite recheck{"csv_recheck", N};
        for (const auto& r : records) {
            double printed = std::stod(format_double(r.residual));
            double again = sup_residual(r, reparse(r.unknowns()));
            recheck.check(std::fabs(again - printed) <= 1e-12, "pattern " + r.signs.to_string());
        }

        Suite unique{"uniqueness", N};
        std::vector<std::vector<int>> agree(records.size());
        parallel_for(records.size(), c.threads, [&](std::size_t i) {
            const auto& ref = records[i];
            auto boxes = build_boxes(cls, ref.signs, c.word, params);
            for (int trial = 0; trial < c.validate_starts; ++trial) {
                auto rng = make_rng(c.seed, {static_cast<std::uint64_t>(N), ref.signs.index(),
                                             static_cast<std::uint64_t>(trial)});
                SolverOptions opt = solver_for(c);
                opt.start = sample_in_boxes(boxes, rng);
                int ok = 0;
                try {
                    auto fp = solve_fixed_point(c.word, params, cls, ref.signs, opt);
                    ok = (fp.unknowns() - ref.unknowns()).lpNorm<Eigen::Infinity>() <= 1e-8;
                } catch (const Error&) {
                }
                agree[i].push_back(ok);
            }
        });
        for (std::size_t i = 0; i < records.size(); ++i)
            for (int ok : agree[i]) unique.check(ok, "pattern " + records[i].signs.to_string());

        Suite expansion{"expansion", N};
        if (theory_supported(c.word, params)) {
            std::vector<ExpansionReport> reps(records.size());
            parallel_for(records.size(), c.threads, [&](std::size_t i) {
                reps[i] = verify_expansion(c.word, params, cls, records[i].signs, c.validate_expansion_pairs, c.seed);
            });
            for (std::size_t i = 0; i < records.size(); ++i)
                expansion.check(reps[i].holds(), "pattern " + records[i].signs.to_string() + " ratio " +
                                                     format_double(reps[i].min_ratio));
        } else {
            expansion.skipped = true;
            expansion.detail = "below the theory threshold " + format_double(theory_threshold(c.word, params));
        }

        Suite index{"indices", N}, actions{"actions", N};
        auto analyses = analyze(records, c.threads);
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& a = analyses[i];
            const std::string tag = "pattern " + records[i].signs.to_string();
            bool checks_ok = a.index.has_value();
            if (a.index)
                for (const auto& ch : a.index->checks) checks_ok = checks_ok && ch.ok();
            index.check(a.index && a.index->cz == a.closed_index && a.closed_index.integral() && checks_ok, tag);
            if (a.exact) {
                double sum = 0.0;
                for (double v : a.exact->segment_values) sum += v;
                double remainder = std::fabs(a.exact->total - a.closed.total - action_coupling(records[i]));
                actions.check(remainder <= c.action_tol && std::fabs(sum - a.exact->total) <= 1e-12 * (1.0 + std::fabs(sum)),
                              tag + " exact - closed - coupling = " + format_double(remainder));
            } else {
                actions.check(false, tag + " " + (a.failures.empty() ? "" : a.failures.back().message));
            }
        }
        for (auto* s : {&census_s, &recheck, &unique, &expansion, &index, &actions}) suites.push_back(std::move(*s));
    }

    Suite words{"words", 0};
    Word w = c.word.word();
    words.check((w * w.inverse()).is_identity(), "w w^-1 is not the identity");
    words.check(parse_word(w.to_string()) == w, "literal round trip");
    auto form = to_even_form(w);
    words.check(form.conjugator.inverse() * w * form.conjugator == even_form_word(form.form), "conjugation identity");
    suites.push_back(words);

    Suite crossing{"crossing", 0};
    crossing_suite(c, crossing);
    suites.push_back(crossing);

    Table t{"validate", {"suite", "N", "checks", "passed", "status", "detail"}, {}};
    int failed = 0;
    for (const auto& s : suites) {
        std::string status = s.skipped ? "skipped" : (s.passed == s.checks ? "pass" : "fail");
        failed += status == "fail";
        t.add({text(s.name), integer(s.N), integer(s.checks), integer(s.passed), text(status), text(s.detail)});
    }
    out.validation_failed = failed > 0;
    out.summary = std::to_string(suites.size() - failed) + "/" + std::to_string(suites.size()) + " suites pass";
    out.tables.push_back(std::move(t));
    return out;
}

}  // namespace

const std::map<std::string, std::pair<Command, std::string>>& commands() {
    static const std::map<std::string, std::pair<Command, std::string>> table = {
        {"profiles", {cmd_profiles, "sample rho, rho_delta, h and h_delta"}},
        {"roots", {cmd_roots, "box centers: roots of r rho(r) = c for every box"}},
        {"fixed-points", {cmd_fixed_points, "solve the fixed-point census"}},
        {"census", {cmd_census, "census with actions and indices"}},
        {"indices", {cmd_indices, "Conley-Zehnder indices, pipeline against the closed form"}},
        {"actions", {cmd_actions, "actions by exact integration and closed form"}},
        {"gaps", {cmd_gaps, "action gap per N and linear fit"}},
        {"bounds", {cmd_bounds, "power and norm lower bounds"}},
        {"density", {cmd_density, "smallest twist strength with an orbit through the target"}},
        {"growth", {cmd_growth, "fixed-point counts for powers of the word"}},
        {"validate", {cmd_validate, "full invariant suite"}},
    };
    return table;
}

}  // namespace eggbeater::cli
