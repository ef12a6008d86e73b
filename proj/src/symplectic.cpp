#include "eggbeater/symplectic.hpp"

#include "eggbeater/errors.hpp"
#include "eggbeater/twist.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <sstream>

namespace eggbeater {

namespace {

// Products of shear endpoints have condition numbers growing like N^{4m}; their Cayley
// transforms are evaluated in 100-digit arithmetic and only the O(1) results are rounded.
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                           boost::multiprecision::et_off>;
using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
constexpr double kExtendedConditionLimit = 1e80;

template <class S>
using MatT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
MatT<S> j_matrix(Eigen::Index n) {
    MatT<S> J = MatT<S>::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        J(i, n + i) = S(1);
        J(n + i, i) = S(-1);
    }
    return J;
}

template <class S>
S norm1(const MatT<S>& A) {
    S best = S(0);
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
        S sum = S(0);
        for (Eigen::Index r = 0; r < A.rows(); ++r) sum += abs(A(r, c));
        if (sum > best) best = sum;
    }
    return best;
}

template <class S>
struct CayleyT {
    MatT<S> matrix;
    double condition;
};

template <class S>
MatT<S> guarded_inverse(const MatT<S>& A, double limit, const char* what, double& condition) {
    Eigen::FullPivLU<MatT<S>> lu(A);
    S det = lu.determinant();
    if (det == S(0)) {
        condition = std::numeric_limits<double>::infinity();
        throw Error(ErrorKind::IllConditioned, std::string(what) + " is singular");
    }
    MatT<S> inv = lu.inverse();
    condition = static_cast<double>(norm1<S>(A) * norm1<S>(inv));
    if (!(condition <= limit)) {
        std::ostringstream os;
        os << what << " has condition estimate " << condition << " above " << limit;
        throw Error(ErrorKind::IllConditioned, os.str());
    }
    return inv;
}

template <class S>
CayleyT<S> cayley_M_t(const MatT<S>& P, double limit) {
    const Eigen::Index n2 = P.rows();
    MatT<S> I = MatT<S>::Identity(n2, n2);
    CayleyT<S> out;
    MatT<S> inv = guarded_inverse<S>(I - P, limit, "I - P", out.condition);
    out.matrix = S(0.5) * j_matrix<S>(n2 / 2) * (I + P) * inv;
    return out;
}

template <class S>
CayleyT<S> cayley_CJ_t(const MatT<S>& P, double limit) {
    const Eigen::Index n2 = P.rows();
    MatT<S> I = MatT<S>::Identity(n2, n2);
    MatT<S> J = j_matrix<S>(n2 / 2);
    CayleyT<S> out;
    MatT<S> inv = guarded_inverse<S>(P - J, limit, "P - J", out.condition);
    out.matrix = J * (J - I) * inv * (P - I);
    return out;
}

CayleyTransform finish(const Mat& X, double condition) {
    CayleyTransform out;
    out.asymmetry = (X - X.transpose()).cwiseAbs().maxCoeff();
    out.matrix = 0.5 * (X + X.transpose());
    out.condition = condition;
    return out;
}

template <class S>
CayleyTransform round_transform(const CayleyT<S>& t) {
    Mat X = t.matrix.template cast<double>();
    return finish(X, t.condition);
}

void require_square_even(const Mat& P) {
    if (P.rows() != P.cols() || P.rows() % 2 != 0)
        throw Error(ErrorKind::InvalidArgument, "symplectic matrices must be 2n x 2n");
}

template <class S>
IndexValue concat_t(IndexValue iA, IndexValue iB, const MatT<S>& A1, const MatT<S>& B1, ConcatMode mode,
                    double tol, double limit) {
    if (mode == ConcatMode::Nondegenerate) {
        CayleyTransform ma, mb;
        try {
            ma = round_transform(cayley_M_t<S>(A1, limit));
        } catch (const Error& e) {
            throw Error(ErrorKind::Precondition, std::string("det(A1 - I) ~ 0: ") + e.what());
        }
        try {
            mb = round_transform(cayley_M_t<S>(B1, limit));
        } catch (const Error& e) {
            throw Error(ErrorKind::Precondition, std::string("det(B1 - I) ~ 0: ") + e.what());
        }
        return IndexValue::from_doubled(iA.doubled + iB.doubled - signature(ma.matrix + mb.matrix, tol));
    }
    CayleyTransform ca, cb;
    try {
        ca = round_transform(cayley_CJ_t<S>(A1, limit));
    } catch (const Error& e) {
        throw Error(ErrorKind::Precondition, std::string("det(A1 - J) ~ 0: ") + e.what());
    }
    try {
        cb = round_transform(cayley_CJ_t<S>(B1, limit));
    } catch (const Error& e) {
        throw Error(ErrorKind::Precondition, std::string("det(B1 - J) ~ 0: ") + e.what());
    }
    int correction = signature(ca.matrix - cb.matrix, tol) - signature(cb.matrix, tol) + signature(ca.matrix, tol);
    return IndexValue::from_doubled(iA.doubled + iB.doubled + correction);
}

}  // namespace

std::string IndexValue::to_string() const {
    if (integral()) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

bool is_symplectic(const Mat& M, double tol) {
    if (M.rows() != M.cols() || M.rows() % 2 != 0) return false;
    Mat J = standard_J(static_cast<int>(M.rows() / 2));
    double scale = 1.0 + M.cwiseAbs().maxCoeff() * M.cwiseAbs().maxCoeff();
    return (M.transpose() * J * M - J).cwiseAbs().maxCoeff() <= tol * scale;
}

int signature(const Mat& S, double tol) {
    if (S.rows() != S.cols()) throw Error(ErrorKind::InvalidArgument, "signature needs a square matrix");
    if (S.size() == 0) return 0;
    double size = S.cwiseAbs().maxCoeff();
    double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol * std::max(1.0, size)) {
        std::ostringstream os;
        os << "matrix is not symmetric (asymmetry " << asym << ")";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    double scale = ev.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0;
    int sig = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev[i] > tol * scale) ++sig;
        else if (ev[i] < -tol * scale) --sig;
    }
    return sig;
}

CayleyTransform cayley_M(const Mat& P) {
    require_square_even(P);
    return round_transform(cayley_M_t<double>(P, kConditionLimit));
}

CayleyTransform cayley_CJ(const Mat& P) {
    require_square_even(P);
    return round_transform(cayley_CJ_t<double>(P, kConditionLimit));
}

IndexValue rs_shear_index(const Mat& B0, const Mat& B1, double tol) {
    return IndexValue::from_doubled(signature(B0, tol) - signature(B1, tol));
}

IndexValue rs_concat(IndexValue iA, IndexValue iB, const Mat& A1, const Mat& B1, ConcatMode mode, double tol) {
    require_square_even(A1);
    require_square_even(B1);
    return concat_t<double>(iA, iB, A1, B1, mode, tol, kConditionLimit);
}

Mat lower_shear(const Mat& block, double t) {
    const Eigen::Index n = block.rows();
    Mat S = Mat::Identity(2 * n, 2 * n);
    S.bottomLeftCorner(n, n) = -t * block;
    return S;
}

Mat upper_shear(const Mat& block, double t) {
    const Eigen::Index n = block.rows();
    Mat S = Mat::Identity(2 * n, 2 * n);
    S.topRightCorner(n, n) = t * block;
    return S;
}

Mat build_L(const Vec& v, double k, std::int64_t N, const Profile& profile) {
    return profile_jacobian(v, k * static_cast<double>(N), profile);
}

Mat build_K(const Vec& x, double k, std::int64_t N, const Profile& profile) {
    return profile_jacobian(x, k * static_cast<double>(N), profile);
}

Mat ShearSegment::endpoint() const {
    return kind == Kind::Upper ? upper_shear(block) : lower_shear(block);
}

Mat ShearSegment::value(double t) const {
    return (kind == Kind::Upper ? upper_shear(block, t) : lower_shear(block, t)) * right_factor;
}

std::vector<ShearSegment> assemble_gamma(const FixedPointRecord& fp) {
    auto ks = step_exponents(fp.word);
    Profile profile(fp.params);
    const int m = fp.m(), n = fp.params.n;
    std::vector<ShearSegment> segments;
    segments.reserve(2 * m);
    Mat acc = Mat::Identity(2 * n, 2 * n);
    for (int j = 0; j < m; ++j) {
        ShearSegment lower;
        lower.kind = ShearSegment::Kind::Lower;
        lower.block = build_K(fp.x[j], ks.kb[j], fp.params.N, profile);
        lower.right_factor = acc;
        lower.step = j;
        lower.blend_zone = profile.in_blend_zone(fp.x[j].norm());
        acc = lower.endpoint() * acc;
        segments.push_back(lower);

        const Vec& v_next = fp.v[(j + 1) % m];
        ShearSegment upper;
        upper.kind = ShearSegment::Kind::Upper;
        upper.block = build_L(v_next, ks.ka[j], fp.params.N, profile);
        upper.right_factor = acc;
        upper.step = j;
        upper.blend_zone = profile.in_blend_zone(v_next.norm());
        acc = upper.endpoint() * acc;
        segments.push_back(upper);
    }
    return segments;
}

Mat gamma_endpoint(const std::vector<ShearSegment>& segments) {
    if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "empty shear decomposition");
    return segments.back().endpoint() * segments.back().right_factor;
}

namespace {

MatR to_real(const Mat& A) { return A.cast<Real>(); }

void expect_signature(PipelineReport& report, const std::string& name, const Mat& S, int expected) {
    SignatureCheck check{name, expected, signature(S)};
    report.checks.push_back(check);
    if (!check.ok()) {
        std::ostringstream os;
        os << name << ": signature " << check.observed << ", expected " << expected;
        throw Error(ErrorKind::SignCondition, os.str());
    }
}

}  // namespace

PipelineReport cz_index_report(const FixedPointRecord& fp) {
    auto segments = assemble_gamma(fp);
    const int m = fp.m(), n = fp.params.n;
    PipelineReport report;

    MatR prefix;
    IndexValue accumulated;
    for (int j = 0; j < m; ++j) {
        const ShearSegment& lower = segments[2 * j];
        const ShearSegment& upper = segments[2 * j + 1];
        const Mat zero = Mat::Zero(n, n);
        // The lower shear is the J-conjugate of an upper shear with the same block.
        IndexValue i_lower = rs_shear_index(zero, lower.block);
        IndexValue i_upper = rs_shear_index(zero, upper.block);
        MatR A1 = to_real(lower.endpoint());
        MatR B1 = to_real(upper.endpoint());

        std::string tag = "step " + std::to_string(j);
        Mat ca = round_transform(cayley_CJ_t<Real>(A1, kExtendedConditionLimit)).matrix;
        Mat cb = round_transform(cayley_CJ_t<Real>(B1, kExtendedConditionLimit)).matrix;
        expect_signature(report, tag + " sign C_J(lower)", ca, -n);
        expect_signature(report, tag + " sign C_J(upper)", cb, -n);
        expect_signature(report, tag + " sign(C_J(lower) - C_J(upper))", ca - cb, 0);
        IndexValue i_pair = concat_t<Real>(i_lower, i_upper, A1, B1, ConcatMode::Degenerate, kSignatureTol,
                                           kExtendedConditionLimit);
        report.pair_indices.push_back(i_pair);

        MatR phi = B1 * A1;
        Mat m_phi = round_transform(cayley_M_t<Real>(phi, kExtendedConditionLimit)).matrix;
        expect_signature(report, tag + " sign M_Phi", m_phi, 0);
        if (j == 0) {
            prefix = phi;
            accumulated = i_pair;
            continue;
        }
        Mat m_prefix = round_transform(cayley_M_t<Real>(prefix, kExtendedConditionLimit)).matrix;
        expect_signature(report, tag + " sign M_prefix", m_prefix, 0);
        expect_signature(report, tag + " sign(M_prefix + M_Phi)", m_prefix + m_phi, 0);
        accumulated = concat_t<Real>(accumulated, i_pair, prefix, phi, ConcatMode::Nondegenerate, kSignatureTol,
                                     kExtendedConditionLimit);
        prefix = phi * prefix;
    }
    if (m > 1) {
        Mat m_total = round_transform(cayley_M_t<Real>(prefix, kExtendedConditionLimit)).matrix;
        expect_signature(report, "full product sign M", m_total, 0);
    }

    MatR I = MatR::Identity(2 * n, 2 * n);
    report.det_endpoint_minus_identity = static_cast<double>(Eigen::FullPivLU<MatR>(prefix - I).determinant());
    report.det_endpoint = static_cast<double>(Eigen::FullPivLU<MatR>(prefix).determinant());
    report.rs = accumulated;
    report.cz = IndexValue::from_doubled(2 * n - accumulated.doubled);
    if (!report.cz.integral())
        throw Error(ErrorKind::SignCondition, "Conley-Zehnder index " + report.cz.to_string() + " is not an integer");
    return report;
}

IndexValue cz_index_pipeline(const FixedPointRecord& fp) { return cz_index_report(fp).cz; }

IndexValue cz_index_closed(const SignPattern& signs, const EvenWord& word, int n) {
    auto ks = step_exponents(word);
    const int m = static_cast<int>(ks.ka.size());
    if (signs.m() != m) throw Error(ErrorKind::InvalidArgument, "sign pattern length differs from m");
    std::int64_t sum = 0;
    for (int j = 0; j < m; ++j) {
        int sa = ks.ka[j] > 0 ? 1 : -1;
        int sb = ks.kb[j] > 0 ? 1 : -1;
        sum += sa * (signs.xi[j] + 1 - n) + sb * (signs.sigma[j] + 1 - n);
    }
    return IndexValue::from_doubled(2 * n - sum);
}

}  // namespace eggbeater
