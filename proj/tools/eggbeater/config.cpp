#include "config.hpp"

#include "eggbeater/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace eggbeater::cli {

namespace {

using Raw = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string::npos) {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

Raw parse_ini(const std::string& text, const std::string& origin) {
    Raw raw;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty() && line.front() == ';') continue;
        if (line.empty()) continue;
        auto where = origin + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        if (section.empty()) throw ConfigError(where + ": key outside a section");
        auto key = lower(trim(line.substr(0, eq)));
        if (key.empty()) throw ConfigError(where + ": empty key");
        auto full = section + "." + key;
        if (raw.count(full)) throw ConfigError(where + ": duplicate key " + full);
        raw[full] = trim(line.substr(eq + 1));
    }
    return raw;
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw ConfigError(key + ": unsupported JSON value");
}

Raw parse_json(const std::string& text, const std::string& origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object of sections");
    Raw raw;
    for (auto& [section, body] : doc.items()) {
        if (!body.is_object()) throw ConfigError(origin + ": section " + section + " must be an object");
        for (auto& [key, value] : body.items()) {
            auto full = lower(section) + "." + lower(key);
            if (value.is_array()) {
                std::string joined;
                for (const auto& item : value) joined += (joined.empty() ? "" : ", ") + json_scalar(item, full);
                raw[full] = joined;
            } else {
                raw[full] = json_scalar(value, full);
            }
        }
    }
    return raw;
}

double to_double(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected a number, got '" + s + "'");
}

std::int64_t to_int(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(key + ": expected an integer, got '" + s + "'");
}

bool to_bool(const std::string& key, const std::string& s) {
    auto v = lower(s);
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigError(key + ": expected a boolean, got '" + s + "'");
}

template <class T, class F>
std::vector<T> to_list(const std::string& key, const std::string& s, F&& conv) {
    std::vector<T> out;
    for (const auto& item : split(s, ", \t")) out.push_back(conv(key, item));
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"model.n", [](RunConfig& c, auto& k, auto& v) { c.n = static_cast<int>(to_int(k, v)); }},
        {"model.epsilon", [](RunConfig& c, auto& k, auto& v) { c.epsilon = to_double(k, v); }},
        {"model.delta_rule",
         [](RunConfig& c, auto& k, auto& v) {
             auto s = lower(v);
             if (s == "inverse_n_squared") c.delta_rule = DeltaRule::inverse_n_squared();
             else if (s.rfind("fixed:", 0) == 0) c.delta_rule = DeltaRule::fixed(to_double(k, trim(s.substr(6))));
             else throw ConfigError(k + ": expected inverse_N_squared or fixed:<value>");
         }},
        {"word.literal", [](RunConfig& c, auto&, auto& v) { c.word_literal = v; }},
        {"classes.rule",
         [](RunConfig& c, auto& k, auto& v) {
             auto s = lower(v);
             if (s == "quarter") c.classes.kind = ClassRule::Kind::Quarter;
             else if (s == "midrange") c.classes.kind = ClassRule::Kind::Midrange;
             else if (s == "explicit") c.classes.kind = ClassRule::Kind::Explicit;
             else throw ConfigError(k + ": expected quarter, midrange or explicit");
         }},
        {"classes.break_symmetry", [](RunConfig& c, auto& k, auto& v) { c.classes.break_symmetry = to_bool(k, v); }},
        {"classes.alpha", [](RunConfig& c, auto& k, auto& v) { c.classes.alpha = to_list<std::int64_t>(k, v, to_int); }},
        {"classes.beta", [](RunConfig& c, auto& k, auto& v) { c.classes.beta = to_list<std::int64_t>(k, v, to_int); }},
        {"sweep.n", [](RunConfig& c, auto& k, auto& v) { c.sweep = to_list<std::int64_t>(k, v, to_int); }},
        {"tolerances.residual", [](RunConfig& c, auto& k, auto& v) { c.residual_tol = to_double(k, v); }},
        {"tolerances.signature", [](RunConfig& c, auto& k, auto& v) { c.signature_tol = to_double(k, v); }},
        {"tolerances.action", [](RunConfig& c, auto& k, auto& v) { c.action_tol = to_double(k, v); }},
        {"output.directory", [](RunConfig& c, auto&, auto& v) { c.out_dir = v; }},
        {"output.formats",
         [](RunConfig& c, auto& k, auto& v) {
             c.formats.clear();
             for (const auto& f : split(lower(v), ", \t")) {
                 if (f != "csv" && f != "json") throw ConfigError(k + ": unknown format '" + f + "'");
                 c.formats.push_back(f);
             }
             if (c.formats.empty()) throw ConfigError(k + ": empty list");
         }},
        {"output.svg", [](RunConfig& c, auto& k, auto& v) { c.svg = to_bool(k, v); }},
        {"output.timestamps", [](RunConfig& c, auto& k, auto& v) { c.timestamps = to_bool(k, v); }},
        {"parallelism.threads",
         [](RunConfig& c, auto& k, auto& v) {
             auto t = to_int(k, v);
             if (t < 0) throw ConfigError(k + ": must be >= 0");
             c.threads = static_cast<unsigned>(t);
         }},
        {"run.seed",
         [](RunConfig& c, auto& k, auto& v) {
             auto s = to_int(k, v);
             if (s < 0) throw ConfigError(k + ": must be >= 0");
             c.seed = static_cast<std::uint64_t>(s);
         }},
        {"profiles.samples", [](RunConfig& c, auto& k, auto& v) { c.profile_samples = static_cast<int>(to_int(k, v)); }},
        {"density.center", [](RunConfig& c, auto& k, auto& v) { c.density_center = to_list<double>(k, v, to_double); }},
        {"density.radius", [](RunConfig& c, auto& k, auto& v) { c.density_radius = to_double(k, v); }},
        {"density.max_index", [](RunConfig& c, auto& k, auto& v) { c.density_max_index = to_int(k, v); }},
        {"growth.max_period", [](RunConfig& c, auto& k, auto& v) { c.growth_max_period = static_cast<int>(to_int(k, v)); }},
        {"bounds.base", [](RunConfig& c, auto&, auto& v) { c.bounds_base = v; }},
        {"bounds.powers",
         [](RunConfig& c, auto& k, auto& v) {
             c.bounds_powers.clear();
             for (auto p : to_list<std::int64_t>(k, v, to_int)) c.bounds_powers.push_back(static_cast<int>(p));
         }},
        {"bounds.words",
         [](RunConfig& c, auto& k, auto& v) {
             c.bounds_words = split(v, ",;");
             if (c.bounds_words.empty()) throw ConfigError(k + ": empty list");
         }},
        {"validate.starts", [](RunConfig& c, auto& k, auto& v) { c.validate_starts = static_cast<int>(to_int(k, v)); }},
        {"validate.expansion_pairs",
         [](RunConfig& c, auto& k, auto& v) { c.validate_expansion_pairs = static_cast<int>(to_int(k, v)); }},
        {"validate.crossing_paths",
         [](RunConfig& c, auto& k, auto& v) { c.validate_crossing_paths = static_cast<int>(to_int(k, v)); }},
    };
    return table;
}

void validate_config(RunConfig& c) {
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    try {
        c.word = parse_even_word(c.word_literal);
    } catch (const ParseError& e) {
        fail("word.literal '" + c.word_literal + "': " + e.what());
    } catch (const Error& e) {
        fail("word.literal '" + c.word_literal + "': " + e.what());
    }
    for (const auto& w : c.bounds_words) {
        try {
            parse_word(w);
        } catch (const Error& e) {
            fail("bounds.words '" + w + "': " + e.what());
        }
    }
    try {
        parse_even_word(c.bounds_base);
    } catch (const Error& e) {
        fail("bounds.base '" + c.bounds_base + "': " + e.what());
    }
    if (c.sweep.empty()) fail("sweep.N: empty list");
    for (std::size_t i = 0; i < c.sweep.size(); ++i) {
        auto N = c.sweep[i];
        if (i > 0 && N <= c.sweep[i - 1]) fail("sweep.N: values must be strictly increasing");
        try {
            auto params = make_params(c.n, c.epsilon, N, c.delta_rule);
            params.validate();
            make_class(c.classes, c.word.m(), params);
        } catch (const Error& e) {
            fail("N = " + std::to_string(N) + ": " + e.what());
        }
    }
    if (!(c.residual_tol > 0.0)) fail("tolerances.residual: must be positive");
    if (!(c.signature_tol > 0.0)) fail("tolerances.signature: must be positive");
    if (!(c.action_tol > 0.0)) fail("tolerances.action: must be positive");
    if (c.profile_samples < 2) fail("profiles.samples: must be >= 2");
    if (c.density_center.empty()) {
        c.density_center.assign(2 * c.n, 0.0);
        c.density_center[0] = c.epsilon / 3.5;
        c.density_center[c.n] = -c.epsilon / 3.5;
    }
    if (static_cast<int>(c.density_center.size()) != 2 * c.n) fail("density.center: needs 2n values (v then x)");
    if (!(c.density_radius > 0.0)) fail("density.radius: must be positive");
    if (c.density_max_index < 1) fail("density.max_index: must be >= 1");
    if (c.growth_max_period < 1) fail("growth.max_period: must be >= 1");
    for (int k : c.bounds_powers)
        if (k < 2) fail("bounds.powers: powers must be >= 2");
    if (c.validate_starts < 1 || c.validate_expansion_pairs < 1 || c.validate_crossing_paths < 0)
        fail("validate: counts must be positive");
}

RunConfig interpret(const Raw& raw, const std::vector<std::string>& overrides) {
    Raw merged = raw;
    for (const auto& o : overrides) {
        auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError("--set " + o + ": expected section.key=value");
        auto key = lower(trim(o.substr(0, eq)));
        if (key.find('.') == std::string::npos) throw ConfigError("--set " + o + ": key must be section.key");
        merged[key] = trim(o.substr(eq + 1));
    }
    RunConfig c;
    const auto& table = setters();
    for (const auto& [key, value] : merged) {
        auto it = table.find(key);
        if (it == table.end()) throw ConfigError("unknown key '" + key + "'");
        it->second(c, key, value);
    }
    validate_config(c);
    for (const auto& [key, value] : merged)
        if (key != "parallelism.threads" && key != "output.directory") c.canonical[key] = value;
    return c;
}

}  // namespace

std::string RunConfig::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [k, v] : canonical) {
        for (char ch : k + "=" + v + "\n") {
            h ^= static_cast<unsigned char>(ch);
            h *= 1099511628211ull;
        }
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    std::string text = os.str();
    auto first = text.find_first_not_of(" \t\r\n");
    bool json = first != std::string::npos && text[first] == '{';
    return interpret(json ? parse_json(text, path) : parse_ini(text, path), overrides);
}

RunConfig default_config(const std::vector<std::string>& overrides) { return interpret({}, overrides); }

}  // namespace eggbeater::cli
