#pragma once

#include "eggbeater/linalg.hpp"
#include "eggbeater/orbits.hpp"
#include "eggbeater/profile.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eggbeater {

// Half-integer stored as twice its value.
struct IndexValue {
    std::int64_t doubled = 0;

    static IndexValue from_doubled(std::int64_t d) { return {d}; }
    static IndexValue integer(std::int64_t v) { return {2 * v}; }
    bool integral() const { return doubled % 2 == 0; }
    double value() const { return 0.5 * static_cast<double>(doubled); }
    std::string to_string() const;  // "3" or "3/2"

    IndexValue operator+(IndexValue o) const { return {doubled + o.doubled}; }
    IndexValue operator-(IndexValue o) const { return {doubled - o.doubled}; }
    bool operator==(const IndexValue&) const = default;
};

constexpr double kSignatureTol = 1e-8;
constexpr double kConditionLimit = 1e12;

bool is_symplectic(const Mat& M, double tol = 1e-9);

// #{lambda > tol*scale} - #{lambda < -tol*scale}, scale = largest |eigenvalue|.
int signature(const Mat& S, double tol = kSignatureTol);

struct CayleyTransform {
    Mat matrix;          // symmetrized
    double asymmetry;    // max |X - X^T| before symmetrizing
    double condition;    // 1-norm condition estimate of the inverted factor
};

// M_P = 1/2 J (I + P)(I - P)^{-1}.
CayleyTransform cayley_M(const Mat& P);
// C_J(P) = J (J - I)(P - J)^{-1}(P - I).
CayleyTransform cayley_CJ(const Mat& P);

IndexValue rs_shear_index(const Mat& B0, const Mat& B1, double tol = kSignatureTol);

enum class ConcatMode { Nondegenerate, Degenerate };

// Index of the concatenation of path A with path B * A(1), from the two indices and endpoints.
IndexValue rs_concat(IndexValue iA, IndexValue iB, const Mat& A1, const Mat& B1, ConcatMode mode,
                     double tol = kSignatureTol);

Mat lower_shear(const Mat& block, double t = 1.0);  // [[I, 0], [-K t, I]]
Mat upper_shear(const Mat& block, double t = 1.0);  // [[I, L t], [0, I]]

// k N (rho_delta(|y|) I + rho_delta'(|y|)/|y| y y^T).
Mat build_L(const Vec& v, double k, std::int64_t N, const Profile& profile);
Mat build_K(const Vec& x, double k, std::int64_t N, const Profile& profile);

struct ShearSegment {
    enum class Kind { Upper, Lower } kind = Kind::Upper;
    Mat block;
    Mat right_factor;  // composite endpoint of all earlier segments
    int step = 0;
    bool blend_zone = false;

    Mat endpoint() const;  // this segment's time-1 matrix
    Mat value(double t) const;  // segment matrix at time t times right_factor
};

// Linearized flow along a fixed point in time order: per step a lower shear (b-twist) then an
// upper shear (a-twist), in (x, v) coordinates.
std::vector<ShearSegment> assemble_gamma(const FixedPointRecord& fp);
Mat gamma_endpoint(const std::vector<ShearSegment>& segments);

struct SignatureCheck {
    std::string name;
    int expected = 0;
    int observed = 0;
    bool ok() const { return expected == observed; }
};

struct PipelineReport {
    IndexValue cz;
    IndexValue rs;
    std::vector<IndexValue> pair_indices;
    std::vector<SignatureCheck> checks;
    double det_endpoint_minus_identity = 0.0;
    double det_endpoint = 0.0;
};

// Conley-Zehnder index from the shear decomposition; throws SignCondition carrying the
// offending signature when a concatenation hypothesis fails.
PipelineReport cz_index_report(const FixedPointRecord& fp);
IndexValue cz_index_pipeline(const FixedPointRecord& fp);

// n - 1/2 sum_j [sign(ka_j)(xi_j + 1 - n) + sign(kb_j)(sigma_j + 1 - n)], with the step
// pairing of the fixed-point system (sigma with the b-exponent, xi with the a-exponent).
IndexValue cz_index_closed(const SignPattern& signs, const EvenWord& word, int n);

// Crossing-form oracle.
using SymplecticPath = std::function<Mat(double)>;

struct CrossingOptions {
    int samples = 4000;
    double kernel_tol = 1e-6;
    double form_tol = 1e-4;
    double fd_step = 1e-6;
};

IndexValue rs_index_crossing(const SymplecticPath& path, const CrossingOptions& options = {});

}  // namespace eggbeater
