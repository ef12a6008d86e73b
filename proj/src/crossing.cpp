#include "eggbeater/errors.hpp"
#include "eggbeater/symplectic.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <sstream>

namespace eggbeater {

namespace {

double sigma_min(const Mat& A) {
    Eigen::JacobiSVD<Mat> svd(A);
    return svd.singularValues().minCoeff();
}

double scale_of(const Mat& P) { return 1.0 + P.norm(); }

Mat derivative(const SymplecticPath& path, double t, double h) {
    if (t - h < 0.0) return (-3.0 * path(t) + 4.0 * path(t + h) - path(t + 2 * h)) / (2 * h);
    if (t + h > 1.0) return (3.0 * path(t) - 4.0 * path(t - h) + path(t - 2 * h)) / (2 * h);
    return (path(t + h) - path(t - h)) / (2 * h);
}

// Signature of the crossing form omega(v, Psi' Psi^{-1} v) on ker(Psi(t) - I).
int crossing_signature(const SymplecticPath& path, double t, const CrossingOptions& opt) {
    Mat P = path(t);
    const Eigen::Index n2 = P.rows();
    Mat I = Mat::Identity(n2, n2);
    Eigen::JacobiSVD<Mat> svd(P - I, Eigen::ComputeFullV);
    double scale = scale_of(P);
    const auto& s = svd.singularValues();
    Eigen::Index dim = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] < opt.kernel_tol * scale) ++dim;
    if (dim == 0) return 0;
    Mat kernel = svd.matrixV().rightCols(dim);
    Mat A = derivative(path, t, opt.fd_step) * P.inverse();
    Mat S = standard_J(static_cast<int>(n2 / 2)) * A;
    Mat Q = kernel.transpose() * (0.5 * (S + S.transpose())) * kernel;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (Q + Q.transpose()), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double form_scale = std::max(1.0, S.norm());
    int sig = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::fabs(ev[i]) < opt.form_tol * form_scale) {
            std::ostringstream os;
            os << "crossing form is degenerate at t = " << t << " (eigenvalue " << ev[i] << ")";
            throw Error(ErrorKind::NonRegularCrossing, os.str());
        }
        sig += ev[i] > 0 ? 1 : -1;
    }
    return sig;
}

}  // namespace

IndexValue rs_index_crossing(const SymplecticPath& path, const CrossingOptions& opt) {
    const int S = std::max(opt.samples, 16);
    std::vector<double> t(S + 1), smin(S + 1), det(S + 1);
    Mat P0 = path(0.0);
    const Eigen::Index n2 = P0.rows();
    const Mat I = Mat::Identity(n2, n2);
    for (int i = 0; i <= S; ++i) {
        t[i] = static_cast<double>(i) / S;
        Mat P = path(t[i]);
        double scale = scale_of(P);
        smin[i] = sigma_min(P - I) / scale;
        det[i] = (P - I).determinant();
    }
    const double crossing_level = opt.kernel_tol;
    auto is_crossing = [&](double tt) {
        Mat P = path(tt);
        return sigma_min(P - I) / scale_of(P) < crossing_level;
    };

    // A kernel that persists over several samples is not an isolated crossing.
    int run = 0;
    for (int i = 0; i <= S; ++i) {
        run = smin[i] < 1e-3 * crossing_level ? run + 1 : 0;
        if (run >= 3) throw Error(ErrorKind::NonRegularCrossing, "crossings are not isolated (degenerate on an interval)");
    }

    std::int64_t doubled = 0;
    if (is_crossing(0.0)) doubled += crossing_signature(path, 0.0, opt);
    if (is_crossing(1.0)) doubled += crossing_signature(path, 1.0, opt);

    std::vector<double> crossings;
    auto det_at = [&](double tt) { return (path(tt) - I).determinant(); };
    for (int i = 0; i < S; ++i) {
        double a = t[i], b = t[i + 1];
        if (i == 0 && smin[0] < crossing_level) continue;
        if (i + 1 == S && smin[S] < crossing_level) continue;
        if ((det[i] < 0) != (det[i + 1] < 0) && det[i] != 0.0 && det[i + 1] != 0.0) {
            std::uintmax_t it = 200;
            auto [lo, hi] = boost::math::tools::toms748_solve(det_at, a, b, det[i], det[i + 1],
                                                              boost::math::tools::eps_tolerance<double>(50), it);
            crossings.push_back(0.5 * (lo + hi));
        }
    }
    // Crossings without a determinant sign change show up as local minima of sigma_min.
    for (int i = 1; i < S; ++i) {
        if (!(smin[i] <= smin[i - 1] && smin[i] <= smin[i + 1] && smin[i] < 1e-2)) continue;
        if ((det[i - 1] < 0) != (det[i + 1] < 0)) continue;
        auto f = [&](double tt) {
            Mat P = path(tt);
            return sigma_min(P - I) / scale_of(P);
        };
        std::uintmax_t it = 200;
        auto best = boost::math::tools::brent_find_minima(f, t[i - 1], t[i + 1], 26, it);
        if (best.second < crossing_level && best.first > t[1] && best.first < t[S - 1]) crossings.push_back(best.first);
    }
    for (double tc : crossings) {
        int sig = crossing_signature(path, tc, opt);
        if (sig == 0 && !is_crossing(tc))
            throw Error(ErrorKind::NonRegularCrossing, "determinant sign change without a kernel");
        doubled += 2 * sig;
    }
    return IndexValue::from_doubled(doubled);
}

}  // namespace eggbeater
