#pragma once

#include "eggbeater/orbits.hpp"
#include "eggbeater/symplectic.hpp"

#include <cstdint>
#include <vector>

namespace eggbeater {

// Actions use the primitives lambda_1 = v dx on chart 1 and lambda_2 = -x dv on chart 2
// (fiber times base displacement in each chart). Since lambda_1 - lambda_2 = d(v.x), a
// switch from chart 2 to chart 1 contributes -(v.x) to the action and a switch from chart 1
// to chart 2 contributes +(v.x). The reference loop runs along the zero sections, where both
// primitives vanish, so no normalization constant is added.
struct ActionBreakdown {
    enum class Method { ClosedForm, ExactIntegral } method = Method::ExactIntegral;
    std::vector<double> segment_values;     // 2m values in time order, transitions folded in
    std::vector<double> hamiltonian_terms;  // integral of H per segment
    std::vector<double> primitive_terms;    // integral of lambda per segment
    std::vector<double> transition_terms;   // correction at the end of each segment
    double total = 0.0;
};

ActionBreakdown action_closed(const FixedPointRecord& fp);

// sum_j x_j . (v_{j+1} - v_j): the step-coupling remainder dropped by the closed form, so that
// action_exact = action_closed + action_coupling. It vanishes for m = 1.
double action_coupling(const FixedPointRecord& fp);

struct ActionOptions {
    // Moves each chart 2 -> 1 switch earlier by this fraction of the b-segment.
    double transition_shift = 0.0;
    double relative_tol = 1e-12;
};

ActionBreakdown action_exact(const FixedPointRecord& fp, const ActionOptions& options = {});

struct GapWitness {
    std::uint64_t pattern = 0;
    double difference = 0.0;  // A(q) - A(p)
    IndexValue index;
};

struct GapResult {
    double D = 0.0;
    std::uint64_t extremal_pattern = 0;
    IndexValue extremal_index;
    bool extremal_is_max = false;
    bool extremal_unique = false;
    std::vector<GapWitness> witnesses;  // every single-entry flip, by entry
    std::uint64_t closest_pattern = 0;
};

// Pattern with sigma_j = -sign(kb_j) and xi_j = -sign(ka_j).
SignPattern extremal_pattern(const EvenWord& word);

GapResult action_gap(const std::vector<FixedPointRecord>& records, const std::vector<IndexValue>& indices,
                     const std::vector<double>& actions);

}  // namespace eggbeater
