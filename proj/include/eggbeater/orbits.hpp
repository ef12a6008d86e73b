#pragma once

#include "eggbeater/linalg.hpp"
#include "eggbeater/profile.hpp"
#include "eggbeater/words.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace eggbeater {

// Fixed-point system conventions.
//
// Step j = 0..m-1 of tau(N, w) applies b^{kb_j} on chart 2 and then a^{ka_j} on chart 1,
// with kb_j = k_{2m-2j} and ka_j = k_{2m-2j-1} (last syllable acts first). The state at the
// start of step j is (v_j, x_j) in reduced chart-1 coordinates and
//
//   v_{j+1} = v_j - N kb_j rho(|x_j|) x_j - beta_j
//   x_{j+1} = x_j + N ka_j rho(|v_{j+1}|) v_{j+1} - alpha_j,      (v_m, x_m) = (v_0, x_0).
//
// The unknowns are X_j = x_j, which lies in the box picked by sigma_j, and V_j = v_{j+1},
// which lies in the box picked by xi_j. Unknown vectors are ordered [X_0, V_0, X_1, V_1, ...].

// Exponents per step: kb_j = k_{2m-2j}, ka_j = k_{2m-2j-1}.
struct StepExponents {
    std::vector<double> ka, kb;
    double max_abs = 0.0;
};
StepExponents step_exponents(const EvenWord& word);

struct HomotopyClassSpec {
    int m = 1;
    std::vector<std::int64_t> alpha;  // alpha_j = alpha[j] * e_a
    std::vector<std::int64_t> beta;   // beta_j  = beta[j]  * e_b
    int axis_a = 0;
    int axis_b = 0;

    void validate(int n) const;
    Vec alpha_vector(int j, int n) const;
    Vec beta_vector(int j, int n) const;
    bool admissible(const TwistParams& params) const;
    // No nontrivial cyclic shift of the (alpha_j, beta_j) tuple fixes it.
    bool symmetry_free() const;
    HomotopyClassSpec shifted(int s) const;
    std::string to_string() const;
};

struct ClassRule {
    enum class Kind { Quarter, Midrange, Explicit } kind = Kind::Quarter;
    bool break_symmetry = true;  // negate the last beta when m >= 2
    std::vector<std::int64_t> alpha, beta;  // explicit multiples

    static ClassRule quarter(bool break_symmetry = true) { return {Kind::Quarter, break_symmetry, {}, {}}; }
    static ClassRule midrange(bool break_symmetry = true) { return {Kind::Midrange, break_symmetry, {}, {}}; }
    std::string to_string() const;
};

// Integer length per rule: Quarter picks the smallest integer >= N eps/4 when it does not
// exceed N eps/3 (else the nearest integer to N eps/4); Midrange the integer nearest 7 N eps/24.
std::int64_t class_length(ClassRule::Kind kind, const TwistParams& params);
HomotopyClassSpec make_class(const ClassRule& rule, std::size_t m, const TwistParams& params);

struct SignPattern {
    std::vector<int> sigma;  // box of X_j
    std::vector<int> xi;     // box of V_j

    static SignPattern from_index(std::uint64_t index, int m);
    static SignPattern uniform(int m, int s);
    std::uint64_t index() const;
    int m() const { return static_cast<int>(sigma.size()); }
    SignPattern shifted(int s) const;
    std::string to_string() const;  // e.g. "-+/--" (sigmas, then xis)
    bool operator==(const SignPattern&) const = default;
};

struct RootPair {
    double r_minus = 0.0;
    double r_plus = 0.0;
};
RootPair root_pair(double c, const TwistParams& params, bool smoothed = true);

struct BoxSpec {
    enum class Kind { X, V } kind = Kind::X;
    int step = 0;
    int sign = -1;
    double c = 0.0;      // right-hand side of the root equation
    Vec center;
    double radius = 0.0;
    bool ill_conditioned = false;
};

// Boxes ordered like the unknowns: [X_0, V_0, X_1, V_1, ...].
std::vector<BoxSpec> build_boxes(const HomotopyClassSpec& cls, const SignPattern& signs,
                                 const EvenWord& word, const TwistParams& params);

// N > max(10 max|k| / eps, 200 max|k|^3).
double theory_threshold(const EvenWord& word, const TwistParams& params);
bool theory_supported(const EvenWord& word, const TwistParams& params);

struct FixedPointRecord {
    EvenWord word;
    TwistParams params;
    HomotopyClassSpec cls;
    SignPattern signs;
    std::vector<Vec> v;  // v_j, j = 0..m-1
    std::vector<Vec> x;  // x_j
    double residual = 0.0;
    double box_margin = 0.0;  // smallest distance from a block to its box boundary
    int iterations = 0;
    std::string method;       // newton, or fixed_point+newton
    bool admissible = false;
    bool theory_supported = false;
    bool ill_conditioned = false;
    bool blend_zone = false;

    int m() const { return static_cast<int>(v.size()); }
    Vec unknowns() const;
};

struct SolverOptions {
    double tolerance = 1e-10;
    int max_iterations = 100;
    int fallback_iterations = 400;
    std::optional<Vec> start;  // initial unknown vector; box centers otherwise
};

// Defect map of the fixed-point system at the unknown vector z.
Vec defect_map(const EvenWord& word, const TwistParams& params, const HomotopyClassSpec& cls,
               const Vec& z);
Mat defect_jacobian(const EvenWord& word, const TwistParams& params, const Vec& z);
// Residual (sup norm of the defect) of a record's states.
double record_residual(const FixedPointRecord& fp);

FixedPointRecord solve_fixed_point(const EvenWord& word, const TwistParams& params,
                                   const HomotopyClassSpec& cls, const SignPattern& signs,
                                   const SolverOptions& options = {});

struct CensusFailure {
    std::uint64_t pattern = 0;
    std::string message;
};

struct CensusOutcome {
    std::vector<std::optional<FixedPointRecord>> records;  // indexed by pattern
    std::vector<CensusFailure> failures;
};

CensusOutcome census_partial(const EvenWord& word, const TwistParams& params,
                             const HomotopyClassSpec& cls, unsigned threads = 1,
                             const SolverOptions& options = {});
// All 2^{2m} records ordered by pattern index; throws IncompleteCensus naming failed patterns.
std::vector<FixedPointRecord> census(const EvenWord& word, const TwistParams& params,
                                     const HomotopyClassSpec& cls, unsigned threads = 1,
                                     const SolverOptions& options = {});

struct ExpansionReport {
    double min_ratio = 0.0;
    double bound = 0.0;  // N / (5 max|k|) - 1
    int pairs = 0;
    int skipped = 0;
    bool holds() const { return min_ratio >= bound; }
};

ExpansionReport verify_expansion(const EvenWord& word, const TwistParams& params,
                                 const HomotopyClassSpec& cls, const SignPattern& signs,
                                 int samples, std::uint64_t seed);

// Uniform sample in the product of the boxes of a pattern.
Vec sample_in_boxes(const std::vector<BoxSpec>& boxes, std::mt19937_64& rng);

struct DensityTarget {
    Vec center;  // (v, x), length 2n
    double radius = 0.0;  // sup-norm radius
};

struct DensityResult {
    std::int64_t nu = 0;
    int witness_step = 0;
    Vec witness_v, witness_x;
    double witness_distance = 0.0;
    FixedPointRecord record;
    int solves = 0;
};

// U = {eps/4 < |v|, |x| < eps/3}.
bool in_density_region(const Vec& v, const Vec& x, double epsilon);

DensityResult density_experiment(int n, double epsilon, DeltaRule delta_rule, const DensityTarget& target,
                                 std::int64_t max_index, std::int64_t min_index = 1);

struct GrowthReport {
    int period = 0;
    std::uint64_t expected = 0;
    std::uint64_t count = 0;
    HomotopyClassSpec cls;
    std::vector<CensusFailure> failures;
};

GrowthReport growth_count(const EvenWord& base, const TwistParams& params, int period,
                          const ClassRule& rule = ClassRule::quarter(), unsigned threads = 1);

}  // namespace eggbeater
