#include "eggbeater/orbits.hpp"

#include "eggbeater/errors.hpp"
#include "eggbeater/parallel.hpp"
#include "eggbeater/rng.hpp"
#include "eggbeater/twist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eggbeater {

namespace {

Vec axis_vector(int n, int axis, double value) {
    Vec e = Vec::Zero(n);
    e[axis] = value;
    return e;
}

double sign_of(double v) { return v < 0 ? -1.0 : 1.0; }

// Vector root of y_hat * r * rho(r) = y on the requested branch.
Vec vector_root(const Vec& y, Branch branch, const Profile& profile) {
    double norm = y.norm();
    if (!(norm > 0.0)) throw Error(ErrorKind::EscapedBox, "blockwise inverse hit the zero section");
    auto root = profile.solve_root(norm, branch, true);
    return (root.r / norm) * y;
}

double block_sup(const Vec& z, int blocks, int n) {
    double best = 0.0;
    for (int b = 0; b < blocks; ++b) best = std::max(best, z.segment(b * n, n).norm());
    return best;
}

}  // namespace

StepExponents step_exponents(const EvenWord& word) {
    auto ks = word.machine_exponents();
    if (ks.empty() || ks.size() % 2 != 0)
        throw Error(ErrorKind::InvalidArgument, "even word needs 2m exponents");
    std::size_t m = ks.size() / 2;
    StepExponents out;
    for (std::size_t j = 0; j < m; ++j) {
        out.kb.push_back(static_cast<double>(ks[2 * m - 2 * j - 1]));
        out.ka.push_back(static_cast<double>(ks[2 * m - 2 * j - 2]));
    }
    for (auto k : ks) out.max_abs = std::max(out.max_abs, std::fabs(static_cast<double>(k)));
    return out;
}

void HomotopyClassSpec::validate(int n) const {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "class needs m >= 1");
    if (static_cast<int>(alpha.size()) != m || static_cast<int>(beta.size()) != m)
        throw Error(ErrorKind::InvalidArgument, "class needs m alpha and m beta multiples");
    for (int j = 0; j < m; ++j)
        if (alpha[j] == 0 || beta[j] == 0)
            throw Error(ErrorKind::InvalidArgument, "class vectors must be nonzero");
    if (axis_a < 0 || axis_a >= n || axis_b < 0 || axis_b >= n)
        throw Error(ErrorKind::InvalidArgument, "class direction outside the torus dimension");
}

Vec HomotopyClassSpec::alpha_vector(int j, int n) const { return axis_vector(n, axis_a, double(alpha[j])); }
Vec HomotopyClassSpec::beta_vector(int j, int n) const { return axis_vector(n, axis_b, double(beta[j])); }

bool HomotopyClassSpec::admissible(const TwistParams& params) const {
    double lo = params.N * params.epsilon / 4.0, hi = params.N * params.epsilon / 3.0;
    auto ok = [&](std::int64_t k) {
        double a = std::fabs(static_cast<double>(k));
        return a >= lo && a <= hi;
    };
    for (int j = 0; j < m; ++j)
        if (!ok(alpha[j]) || !ok(beta[j])) return false;
    return true;
}

bool HomotopyClassSpec::symmetry_free() const {
    for (int s = 1; s < m; ++s) {
        bool fixed = true;
        for (int j = 0; j < m && fixed; ++j) {
            int t = (j + s) % m;
            fixed = alpha[t] == alpha[j] && beta[t] == beta[j];
        }
        if (fixed) return false;
    }
    return true;
}

HomotopyClassSpec HomotopyClassSpec::shifted(int s) const {
    HomotopyClassSpec out = *this;
    for (int j = 0; j < m; ++j) {
        out.alpha[j] = alpha[(j + s) % m];
        out.beta[j] = beta[(j + s) % m];
    }
    return out;
}

std::string HomotopyClassSpec::to_string() const {
    std::ostringstream os;
    for (int j = 0; j < m; ++j) {
        if (j) os << ' ';
        os << alpha[j] << ':' << beta[j];
    }
    return os.str();
}

std::string ClassRule::to_string() const {
    switch (kind) {
    case Kind::Quarter: return break_symmetry ? "quarter" : "quarter_symmetric";
    case Kind::Midrange: return break_symmetry ? "midrange" : "midrange_symmetric";
    case Kind::Explicit: return "explicit";
    }
    return "";
}

std::int64_t class_length(ClassRule::Kind kind, const TwistParams& params) {
    double lo = params.N * params.epsilon / 4.0, hi = params.N * params.epsilon / 3.0;
    std::int64_t first = static_cast<std::int64_t>(std::ceil(lo - 1e-9));
    std::int64_t last = static_cast<std::int64_t>(std::floor(hi + 1e-9));
    std::int64_t out;
    if (first > last) {
        out = static_cast<std::int64_t>(std::llround(lo));
    } else if (kind == ClassRule::Kind::Quarter) {
        out = first;
    } else {
        out = std::clamp<std::int64_t>(std::llround(7.0 * params.N * params.epsilon / 24.0), first, last);
    }
    return std::max<std::int64_t>(out, 1);
}

HomotopyClassSpec make_class(const ClassRule& rule, std::size_t m, const TwistParams& params) {
    HomotopyClassSpec cls;
    cls.m = static_cast<int>(m);
    if (rule.kind == ClassRule::Kind::Explicit) {
        auto expand = [&](const std::vector<std::int64_t>& src, const char* name) {
            if (src.size() == m) return src;
            if (src.size() == 1) return std::vector<std::int64_t>(m, src[0]);
            throw Error(ErrorKind::InvalidArgument, std::string("explicit class needs 1 or m ") + name + " values");
        };
        cls.alpha = expand(rule.alpha, "alpha");
        cls.beta = expand(rule.beta, "beta");
    } else {
        std::int64_t len = class_length(rule.kind, params);
        cls.alpha.assign(m, len);
        cls.beta.assign(m, len);
        if (rule.break_symmetry && m >= 2) cls.beta[m - 1] = -len;
    }
    cls.validate(params.n);
    return cls;
}

SignPattern SignPattern::from_index(std::uint64_t index, int m) {
    SignPattern s;
    for (int j = 0; j < m; ++j) {
        s.sigma.push_back((index >> (2 * j)) & 1 ? 1 : -1);
        s.xi.push_back((index >> (2 * j + 1)) & 1 ? 1 : -1);
    }
    return s;
}

SignPattern SignPattern::uniform(int m, int s) {
    return {std::vector<int>(m, s), std::vector<int>(m, s)};
}

std::uint64_t SignPattern::index() const {
    std::uint64_t out = 0;
    for (int j = 0; j < m(); ++j) {
        if (sigma[j] > 0) out |= std::uint64_t(1) << (2 * j);
        if (xi[j] > 0) out |= std::uint64_t(1) << (2 * j + 1);
    }
    return out;
}

SignPattern SignPattern::shifted(int s) const {
    SignPattern out = *this;
    int mm = m();
    for (int j = 0; j < mm; ++j) {
        out.sigma[j] = sigma[(j + s) % mm];
        out.xi[j] = xi[(j + s) % mm];
    }
    return out;
}

std::string SignPattern::to_string() const {
    std::string out;
    for (int s : sigma) out += s < 0 ? '-' : '+';
    out += '/';
    for (int s : xi) out += s < 0 ? '-' : '+';
    return out;
}

RootPair root_pair(double c, const TwistParams& params, bool smoothed) {
    Profile profile(params);
    return {profile.solve_root(c, Branch::Inner, smoothed).r, profile.solve_root(c, Branch::Outer, smoothed).r};
}

double theory_threshold(const EvenWord& word, const TwistParams& params) {
    double k = static_cast<double>(word.max_abs_exponent());
    return std::max(10.0 * k / params.epsilon, 200.0 * k * k * k);
}

bool theory_supported(const EvenWord& word, const TwistParams& params) {
    return static_cast<double>(params.N) > theory_threshold(word, params);
}

std::vector<BoxSpec> build_boxes(const HomotopyClassSpec& cls, const SignPattern& signs,
                                 const EvenWord& word, const TwistParams& params) {
    params.validate();
    cls.validate(params.n);
    auto ks = step_exponents(word);
    if (static_cast<int>(ks.ka.size()) != cls.m || signs.m() != cls.m)
        throw Error(ErrorKind::InvalidArgument, "word, class and sign pattern disagree on m");
    Profile profile(params);
    const int n = params.n;
    const double N = static_cast<double>(params.N);
    const double radius = ks.max_abs / N;
    std::vector<BoxSpec> boxes;
    boxes.reserve(2 * cls.m);
    for (int j = 0; j < cls.m; ++j) {
        double beta = static_cast<double>(cls.beta[j]);
        double alpha = static_cast<double>(cls.alpha[j]);
        BoxSpec bx;
        bx.kind = BoxSpec::Kind::X;
        bx.step = j;
        bx.sign = signs.sigma[j];
        bx.c = -std::fabs(beta) / (ks.kb[j] * N);
        bx.radius = radius;
        try {
            auto root = profile.solve_root(bx.c, branch_of_sign(bx.sign), true);
            bx.center = axis_vector(n, cls.axis_b, root.r * sign_of(beta));
            bx.ill_conditioned = root.ill_conditioned;
        } catch (const Error& e) {
            throw Error(ErrorKind::Rejected, "class " + cls.to_string() + " has no root for the x-box of step " +
                                                 std::to_string(j) + " (" + e.what() + ")");
        }
        BoxSpec bv;
        bv.kind = BoxSpec::Kind::V;
        bv.step = j;
        bv.sign = signs.xi[j];
        bv.c = std::fabs(alpha) / (ks.ka[j] * N);
        bv.radius = radius;
        try {
            auto root = profile.solve_root(bv.c, branch_of_sign(bv.sign), true);
            bv.center = axis_vector(n, cls.axis_a, root.r * sign_of(alpha));
            bv.ill_conditioned = root.ill_conditioned;
        } catch (const Error& e) {
            throw Error(ErrorKind::Rejected, "class " + cls.to_string() + " has no root for the v-box of step " +
                                                 std::to_string(j) + " (" + e.what() + ")");
        }
        boxes.push_back(bx);
        boxes.push_back(bv);
    }
    return boxes;
}

Vec FixedPointRecord::unknowns() const {
    const int mm = m();
    const int n = params.n;
    Vec z(2 * mm * n);
    for (int j = 0; j < mm; ++j) {
        z.segment((2 * j) * n, n) = x[j];
        z.segment((2 * j + 1) * n, n) = v[(j + 1) % mm];
    }
    return z;
}

Vec defect_map(const EvenWord& word, const TwistParams& params, const HomotopyClassSpec& cls, const Vec& z) {
    auto ks = step_exponents(word);
    Profile profile(params);
    const int m = cls.m, n = params.n;
    const double N = static_cast<double>(params.N);
    Vec F(2 * m * n);
    for (int j = 0; j < m; ++j) {
        Vec X = z.segment(2 * j * n, n);
        Vec V = z.segment((2 * j + 1) * n, n);
        Vec V_prev = z.segment((2 * ((j + m - 1) % m) + 1) * n, n);
        Vec X_next = z.segment(2 * ((j + 1) % m) * n, n);
        F.segment(2 * j * n, n) =
            V_prev - N * ks.kb[j] * profile.rho_smooth(X.norm()) * X - cls.beta_vector(j, n) - V;
        F.segment((2 * j + 1) * n, n) =
            X + N * ks.ka[j] * profile.rho_smooth(V.norm()) * V - cls.alpha_vector(j, n) - X_next;
    }
    return F;
}

Mat defect_jacobian(const EvenWord& word, const TwistParams& params, const Vec& z) {
    auto ks = step_exponents(word);
    Profile profile(params);
    const int m = static_cast<int>(ks.ka.size()), n = params.n;
    const double N = static_cast<double>(params.N);
    const Mat I = Mat::Identity(n, n);
    Mat Jac = Mat::Zero(2 * m * n, 2 * m * n);
    for (int j = 0; j < m; ++j) {
        int rx = 2 * j * n, rv = (2 * j + 1) * n;
        int cx = 2 * j * n, cv = (2 * j + 1) * n;
        int cv_prev = (2 * ((j + m - 1) % m) + 1) * n;
        int cx_next = 2 * ((j + 1) % m) * n;
        Jac.block(rx, cv_prev, n, n) += I;
        Jac.block(rx, cx, n, n) -= profile_jacobian(z.segment(cx, n), N * ks.kb[j], profile);
        Jac.block(rx, cv, n, n) -= I;
        Jac.block(rv, cx, n, n) += I;
        Jac.block(rv, cv, n, n) += profile_jacobian(z.segment(cv, n), N * ks.ka[j], profile);
        Jac.block(rv, cx_next, n, n) -= I;
    }
    return Jac;
}

double record_residual(const FixedPointRecord& fp) {
    return defect_map(fp.word, fp.params, fp.cls, fp.unknowns()).lpNorm<Eigen::Infinity>();
}

namespace {

bool within_boxes(const Vec& z, const std::vector<BoxSpec>& boxes, int n, double factor) {
    for (std::size_t b = 0; b < boxes.size(); ++b)
        if ((z.segment(b * n, n) - boxes[b].center).norm() > factor * boxes[b].radius) return false;
    return true;
}

double box_margin(const Vec& z, const std::vector<BoxSpec>& boxes, int n) {
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < boxes.size(); ++b)
        margin = std::min(margin, boxes[b].radius - (z.segment(b * n, n) - boxes[b].center).norm());
    return margin;
}

enum class NewtonStop { Converged, LeftBox, Singular, Stalled };

struct NewtonState {
    Vec z;
    double residual = 0.0;
    int iterations = 0;
};

NewtonStop run_newton(NewtonState& st, const EvenWord& word, const TwistParams& params,
                      const HomotopyClassSpec& cls, const std::vector<BoxSpec>& boxes, double floor_tol,
                      int max_iterations) {
    const int n = params.n;
    Vec F = defect_map(word, params, cls, st.z);
    st.residual = F.lpNorm<Eigen::Infinity>();
    int stalls = 0;
    while (st.iterations < max_iterations) {
        if (st.residual <= floor_tol) return NewtonStop::Converged;
        Mat Jac = defect_jacobian(word, params, st.z);
        Eigen::PartialPivLU<Mat> lu(Jac);
        if (!(lu.rcond() > 1e-14)) return NewtonStop::Singular;
        Vec step = lu.solve(-F);
        ++st.iterations;
        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 30; ++halving, lambda *= 0.5) {
            Vec trial = st.z + lambda * step;
            if (!within_boxes(trial, boxes, n, 2.0)) return NewtonStop::LeftBox;
            Vec F_trial = defect_map(word, params, cls, trial);
            double r = F_trial.lpNorm<Eigen::Infinity>();
            if (r < st.residual) {
                st.z = trial;
                F = F_trial;
                st.residual = r;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (++stalls >= 2) return NewtonStop::Stalled;
        } else {
            stalls = 0;
        }
    }
    return NewtonStop::Stalled;
}

// Gauss-Seidel sweeps of the blockwise inverse of the fixed-point system.
Vec run_blockwise(Vec z, const EvenWord& word, const TwistParams& params, const HomotopyClassSpec& cls,
                  const SignPattern& signs, int max_sweeps, int& sweeps) {
    auto ks = step_exponents(word);
    Profile profile(params);
    const int m = cls.m, n = params.n;
    const double N = static_cast<double>(params.N);
    for (sweeps = 0; sweeps < max_sweeps; ++sweeps) {
        Vec before = z;
        for (int j = 0; j < m; ++j) {
            Vec V = z.segment((2 * j + 1) * n, n);
            Vec V_prev = z.segment((2 * ((j + m - 1) % m) + 1) * n, n);
            Vec y = (V_prev - V - cls.beta_vector(j, n)) / (N * ks.kb[j]);
            z.segment(2 * j * n, n) = vector_root(y, branch_of_sign(signs.sigma[j]), profile);
        }
        for (int j = 0; j < m; ++j) {
            Vec X = z.segment(2 * j * n, n);
            Vec X_next = z.segment(2 * ((j + 1) % m) * n, n);
            Vec y = (X_next - X + cls.alpha_vector(j, n)) / (N * ks.ka[j]);
            z.segment((2 * j + 1) * n, n) = vector_root(y, branch_of_sign(signs.xi[j]), profile);
        }
        double change = block_sup(z - before, 2 * m, n);
        if (change <= 1e-17) {
            ++sweeps;
            break;
        }
    }
    return z;
}

}  // namespace

FixedPointRecord solve_fixed_point(const EvenWord& word, const TwistParams& params, const HomotopyClassSpec& cls,
                                   const SignPattern& signs, const SolverOptions& options) {
    auto boxes = build_boxes(cls, signs, word, params);
    const int m = cls.m, n = params.n;
    Profile profile(params);

    Vec start(2 * m * n);
    if (options.start) {
        if (options.start->size() != start.size())
            throw Error(ErrorKind::InvalidArgument, "start vector has the wrong length");
        start = *options.start;
    } else {
        for (int b = 0; b < 2 * m; ++b) start.segment(b * n, n) = boxes[b].center;
    }

    double scale = 1.0;
    for (int j = 0; j < m; ++j)
        scale = std::max({scale, std::fabs(double(cls.alpha[j])), std::fabs(double(cls.beta[j]))});
    const double floor_tol = std::min(options.tolerance * 1e-3, 1e-14 * scale);

    NewtonState st;
    st.z = start;
    std::string method = "newton";
    NewtonStop stop = run_newton(st, word, params, cls, boxes, floor_tol, options.max_iterations);
    if (stop == NewtonStop::LeftBox || stop == NewtonStop::Singular ||
        (stop == NewtonStop::Stalled && st.residual > options.tolerance)) {
        int sweeps = 0;
        Vec z;
        try {
            z = run_blockwise(start, word, params, cls, signs, options.fallback_iterations, sweeps);
        } catch (const Error& e) {
            throw Error(ErrorKind::EscapedBox, std::string("blockwise iteration failed: ") + e.what());
        }
        if (!within_boxes(z, boxes, n, 2.0))
            throw Error(ErrorKind::EscapedBox, "blockwise iteration left twice the box");
        int used = st.iterations;
        st = NewtonState{};
        st.z = z;
        st.iterations = used + sweeps;
        method = "fixed_point+newton";
        stop = run_newton(st, word, params, cls, boxes, floor_tol, options.max_iterations + used + sweeps);
        if (stop == NewtonStop::LeftBox) throw Error(ErrorKind::EscapedBox, "Newton polish left twice the box");
        if (stop == NewtonStop::Singular && st.residual > options.tolerance)
            throw Error(ErrorKind::SingularJacobian, "defect Jacobian is singular near the iterate");
    }
    if (!(st.residual <= options.tolerance)) {
        std::ostringstream os;
        os << "residual " << st.residual << " above tolerance " << options.tolerance << " after "
           << st.iterations << " iterations";
        throw Error(ErrorKind::NonConvergence, os.str());
    }
    double margin = box_margin(st.z, boxes, n);
    if (!(margin > 0.0)) throw Error(ErrorKind::EscapedBox, "solution lies outside its box");

    FixedPointRecord fp;
    fp.word = word;
    fp.params = params;
    fp.cls = cls;
    fp.signs = signs;
    fp.v.resize(m);
    fp.x.resize(m);
    for (int j = 0; j < m; ++j) {
        fp.x[j] = st.z.segment(2 * j * n, n);
        fp.v[(j + 1) % m] = st.z.segment((2 * j + 1) * n, n);
    }
    fp.residual = st.residual;
    fp.box_margin = margin;
    fp.iterations = st.iterations;
    fp.method = method;
    fp.admissible = cls.admissible(params);
    fp.theory_supported = theory_supported(word, params);
    for (const auto& b : boxes) fp.ill_conditioned = fp.ill_conditioned || b.ill_conditioned;
    for (int b = 0; b < 2 * m; ++b)
        fp.blend_zone = fp.blend_zone || profile.in_blend_zone(st.z.segment(b * n, n).norm());
    return fp;
}

CensusOutcome census_partial(const EvenWord& word, const TwistParams& params, const HomotopyClassSpec& cls,
                             unsigned threads, const SolverOptions& options) {
    const int m = cls.m;
    if (m > 16) throw Error(ErrorKind::InvalidArgument, "census limited to m <= 16");
    const std::uint64_t count = std::uint64_t(1) << (2 * m);
    CensusOutcome out;
    out.records.resize(count);
    std::vector<std::string> errors(count);
    parallel_for(count, threads, [&](std::size_t i) {
        try {
            out.records[i] = solve_fixed_point(word, params, cls, SignPattern::from_index(i, m), options);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::uint64_t i = 0; i < count; ++i)
        if (!out.records[i]) out.failures.push_back({i, errors[i]});
    return out;
}

std::vector<FixedPointRecord> census(const EvenWord& word, const TwistParams& params, const HomotopyClassSpec& cls,
                                     unsigned threads, const SolverOptions& options) {
    auto outcome = census_partial(word, params, cls, threads, options);
    if (!outcome.failures.empty()) {
        std::ostringstream os;
        os << outcome.failures.size() << " of " << outcome.records.size() << " patterns failed;";
        for (const auto& f : outcome.failures)
            os << " [" << SignPattern::from_index(f.pattern, cls.m).to_string() << "] " << f.message << ';';
        throw Error(ErrorKind::IncompleteCensus, os.str());
    }
    std::vector<FixedPointRecord> records;
    records.reserve(outcome.records.size());
    for (auto& r : outcome.records) records.push_back(std::move(*r));
    return records;
}

Vec sample_in_boxes(const std::vector<BoxSpec>& boxes, std::mt19937_64& rng) {
    const int n = static_cast<int>(boxes.front().center.size());
    Vec z(boxes.size() * n);
    for (std::size_t b = 0; b < boxes.size(); ++b) {
        Vec dir(n);
        double norm = 0.0;
        while (!(norm > 1e-12)) {
            for (int i = 0; i < n; ++i) dir[i] = standard_normal(rng);
            norm = dir.norm();
        }
        double radius = boxes[b].radius * std::pow(uniform01(rng), 1.0 / n);
        z.segment(b * n, n) = boxes[b].center + (radius / norm) * dir;
    }
    return z;
}

ExpansionReport verify_expansion(const EvenWord& word, const TwistParams& params, const HomotopyClassSpec& cls,
                                 const SignPattern& signs, int samples, std::uint64_t seed) {
    auto boxes = build_boxes(cls, signs, word, params);
    const int n = params.n, blocks = 2 * cls.m;
    ExpansionReport report;
    report.bound = static_cast<double>(params.N) / (5.0 * static_cast<double>(word.max_abs_exponent())) - 1.0;
    report.min_ratio = std::numeric_limits<double>::infinity();
    auto rng = make_rng(seed, {signs.index(), static_cast<std::uint64_t>(params.N)});
    for (int s = 0; s < samples; ++s) {
        Vec p = sample_in_boxes(boxes, rng);
        Vec q = sample_in_boxes(boxes, rng);
        double dz = block_sup(p - q, blocks, n);
        if (!(dz > 0.0)) {
            ++report.skipped;
            continue;
        }
        Vec dF = defect_map(word, params, cls, p) - defect_map(word, params, cls, q);
        report.min_ratio = std::min(report.min_ratio, block_sup(dF, blocks, n) / dz);
        ++report.pairs;
    }
    return report;
}

bool in_density_region(const Vec& v, const Vec& x, double epsilon) {
    double lo = epsilon / 4.0, hi = epsilon / 3.0;
    double rv = v.norm(), rx = x.norm();
    return rv > lo && rv < hi && rx > lo && rx < hi;
}

DensityResult density_experiment(int n, double epsilon, DeltaRule delta_rule, const DensityTarget& target,
                                 std::int64_t max_index, std::int64_t min_index) {
    if (target.center.size() != 2 * n)
        throw Error(ErrorKind::InvalidArgument, "density target center must have length 2n");
    if (!(target.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "density target radius must be positive");
    Vec tv = target.center.head(n), tx = target.center.tail(n);
    if (!in_density_region(tv, tx, epsilon))
        throw Error(ErrorKind::Rejected, "density target center lies outside U = {eps/4 < |v|, |x| < eps/3}");

    DensityResult result;
    for (std::int64_t nu = std::max<std::int64_t>(min_index, 1); nu <= max_index; ++nu) {
        std::vector<std::int64_t> grid;
        const double lo = epsilon / 4.0, hi = epsilon / 3.0;
        for (std::int64_t j = -nu; j <= nu; ++j) {
            double r = std::fabs(static_cast<double>(j)) / static_cast<double>(nu);
            if (r > lo && r < hi) grid.push_back(j);
        }
        if (grid.empty()) continue;
        // Pair t asks for an orbit state near (p_t, q_t)/nu: alpha_{t-1} = p_t, beta_t = -q_t.
        std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
        for (auto p : grid)
            for (auto q : grid) pairs.emplace_back(p, q);
        const int K = static_cast<int>(pairs.size());
        TwistParams params = make_params(n, epsilon, nu, delta_rule);
        HomotopyClassSpec cls;
        cls.m = K;
        cls.alpha.resize(K);
        cls.beta.resize(K);
        for (int t = 0; t < K; ++t) {
            cls.alpha[t] = pairs[(t + 1) % K].first;
            cls.beta[t] = -pairs[t].second;
        }
        EvenWord word;
        for (int t = 0; t < K; ++t) {
            word.exponents.push_back(1);
            word.exponents.push_back(1);
        }
        FixedPointRecord fp;
        try {
            ++result.solves;
            fp = solve_fixed_point(word, params, cls, SignPattern::uniform(K, -1));
        } catch (const Error&) {
            continue;
        }
        int best = -1;
        double best_distance = std::numeric_limits<double>::infinity();
        for (int t = 0; t < K; ++t) {
            Vec state(2 * n);
            state << fp.v[t], fp.x[t];
            double d = (state - target.center).lpNorm<Eigen::Infinity>();
            if (d <= target.radius && in_density_region(fp.v[t], fp.x[t], epsilon) && d < best_distance) {
                best = t;
                best_distance = d;
            }
        }
        if (best >= 0) {
            result.nu = nu;
            result.witness_step = best;
            result.witness_v = fp.v[best];
            result.witness_x = fp.x[best];
            result.witness_distance = best_distance;
            result.record = std::move(fp);
            return result;
        }
    }
    throw Error(ErrorKind::NotFound, "no orbit hit the target for indices up to " + std::to_string(max_index));
}

GrowthReport growth_count(const EvenWord& base, const TwistParams& params, int period, const ClassRule& rule,
                          unsigned threads) {
    if (period < 1) throw Error(ErrorKind::InvalidArgument, "period must be at least 1");
    EvenWord word;
    for (int i = 0; i < period; ++i)
        word.exponents.insert(word.exponents.end(), base.exponents.begin(), base.exponents.end());
    GrowthReport report;
    report.period = period;
    report.cls = make_class(rule, word.m(), params);
    auto outcome = census_partial(word, params, report.cls, threads);
    report.expected = outcome.records.size();
    for (const auto& r : outcome.records)
        if (r) ++report.count;
    report.failures = std::move(outcome.failures);
    return report;
}

}  // namespace eggbeater
