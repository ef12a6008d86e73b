#pragma once

#include "eggbeater/action.hpp"
#include "eggbeater/orbits.hpp"
#include "eggbeater/symplectic.hpp"
#include "eggbeater/words.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eggbeater {

struct RecordAnalysis {
    FixedPointRecord record;
    PipelineReport index;
    IndexValue closed_index;
    ActionBreakdown exact;
    ActionBreakdown closed;
};

// Indices and both actions for every record, computed in parallel, in input order.
std::vector<RecordAnalysis> analyze_records(const std::vector<FixedPointRecord>& records, unsigned threads = 1);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LinearFit fit_affine(const std::vector<double>& xs, const std::vector<double>& ys);

struct GapPoint {
    std::int64_t N = 0;
    double D = 0.0;
    HomotopyClassSpec cls;
    GapResult gap;
    double min_nondegeneracy = 0.0;       // min |det(Gamma(1) - I)| over the census
    double max_action_discrepancy = 0.0;  // max |exact - closed| over the census
    bool admissible = false;
    bool theory_supported = false;
    std::size_t records = 0;
};

struct GapSweep {
    EvenWord word;
    int n = 1;
    double epsilon = 0.01;
    DeltaRule delta_rule;
    ClassRule rule;
    std::vector<std::int64_t> N_values;
    std::vector<double> D_values;
    double fitted_slope = 0.0;
    double fitted_intercept = 0.0;
    double fit_r2 = 0.0;
    std::vector<GapPoint> points;
    bool symmetry_free = true;
};

struct SweepOptions {
    unsigned threads = 1;
    SolverOptions solver;
};

GapSweep gap_sweep_and_fit(const EvenWord& word, int n, double epsilon, DeltaRule delta_rule, const ClassRule& rule,
                           const std::vector<std::int64_t>& N_values, const SweepOptions& options = {});

struct PowerBoundTable {
    int k = 0;
    int prime = 0;  // smallest prime factor of k
    std::vector<std::int64_t> N_values;
    std::vector<double> bounds;  // D(N) / (4 prime)
    bool positive = false;
    bool monotone_increasing = false;
};

int smallest_prime_factor(int k);

// Requires sweep.word to be the prime-power word base^{prime} with symmetry-free classes.
PowerBoundTable hofer_power_bound(int k, const GapSweep& sweep, const EvenWord& base);

struct NormCertificate {
    Word word;
    std::string kind;  // even, conjugate, power
    Word conjugator;
    EvenWord even_word;        // word whose sweep supplies the gaps
    double factor = 1.0;       // bound = factor * D(N)
    std::vector<std::int64_t> N_values;
    std::vector<double> bounds;
    double slope = 0.0;
    double intercept = 0.0;
    bool positive = false;
};

using SweepProvider = std::function<const GapSweep&(const EvenWord&)>;

NormCertificate hofer_norm_bound(const Word& word, const SweepProvider& sweeps);

// Commutator used for pure powers: b a^k b^-1 a^-k for a^k, a b^k a^-1 b^-k for b^k.
Word power_commutator(const PowerCase& power);

}  // namespace eggbeater
