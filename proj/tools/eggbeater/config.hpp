#pragma once

#include "eggbeater/orbits.hpp"
#include "eggbeater/profile.hpp"
#include "eggbeater/words.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace eggbeater::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    // [model]
    int n = 1;
    double epsilon = 0.01;
    DeltaRule delta_rule;
    // [word]
    std::string word_literal = "a^1 b^1";
    EvenWord word;
    // [classes]
    ClassRule classes = ClassRule::quarter();
    // [sweep]
    std::vector<std::int64_t> sweep = {2000};
    // [tolerances]
    double residual_tol = 1e-10;
    double signature_tol = 1e-8;
    double action_tol = 1e-6;
    // [output]
    std::string out_dir = "eggbeater_out";
    std::vector<std::string> formats = {"csv"};
    bool svg = false;
    bool timestamps = false;
    // [parallelism]
    unsigned threads = 1;
    // [run]
    std::uint64_t seed = 1;
    // [profiles]
    int profile_samples = 241;
    // [density]
    std::vector<double> density_center;  // defaults to (eps/3.5, -eps/3.5) per coordinate pair
    double density_radius = 0.001;
    std::int64_t density_max_index = 5000;
    // [growth]
    int growth_max_period = 3;
    // [bounds]
    std::string bounds_base = "a^1 b^1";
    std::vector<int> bounds_powers = {2, 3, 4};
    std::vector<std::string> bounds_words = {"a b", "a^2 b^-1 a b", "a^2", "b a b b^-1"};
    // [validate]
    int validate_starts = 3;
    int validate_expansion_pairs = 200;
    int validate_crossing_paths = 5;

    // Canonical key=value listing (sorted), without the worker count and output directory.
    std::map<std::string, std::string> canonical;
    std::string hash() const;
};

// Reads an INI-style file (or JSON when the file starts with '{'); overrides are "section.key=value".
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);
RunConfig default_config(const std::vector<std::string>& overrides);

}  // namespace eggbeater::cli
