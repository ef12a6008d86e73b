#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace eggbeater {

using Exponent = boost::multiprecision::cpp_int;

enum class Generator { A, B };

inline Generator other(Generator g) { return g == Generator::A ? Generator::B : Generator::A; }
char generator_letter(Generator g);

struct Syllable {
    Generator generator;
    Exponent exponent;
    bool operator==(const Syllable&) const = default;
};

// Freely reduced word in F2 = <a, b>. The empty syllable list is the identity.
class Word {
public:
    Word() = default;

    static Word identity() { return Word(); }
    static Word generator(Generator g, Exponent exponent = 1);

    const std::vector<Syllable>& syllables() const { return syllables_; }
    std::size_t size() const { return syllables_.size(); }
    bool is_identity() const { return syllables_.empty(); }

    Word inverse() const;
    Word operator*(const Word& rhs) const;
    bool operator==(const Word&) const = default;

    // Exponent sum of one generator, a conjugacy invariant.
    Exponent exponent_sum(Generator g) const;

    std::string to_string() const;

private:
    friend Word reduce_word(const std::vector<std::pair<Generator, Exponent>>& raw);
    std::vector<Syllable> syllables_;
};

Word reduce_word(const std::vector<std::pair<Generator, Exponent>>& raw);
Word power_word(const Word& w, unsigned long k);

// a^{k_1} b^{k_2} ... a^{k_{2m-1}} b^{k_{2m}}, all k nonzero.
struct EvenWord {
    std::vector<Exponent> exponents;

    std::size_t m() const { return exponents.size() / 2; }
    Word word() const;
    // Exponents as machine integers for the dynamics; throws if any does not fit.
    std::vector<std::int64_t> machine_exponents() const;
    std::int64_t max_abs_exponent() const;
    bool operator==(const EvenWord&) const = default;
};

struct PowerCase {
    Generator generator;
    Exponent exponent;
    bool operator==(const PowerCase&) const = default;
};

using EvenForm = std::variant<EvenWord, PowerCase>;

struct ConjugateForm {
    Word conjugator;  // conjugator^{-1} * w * conjugator == form
    EvenForm form;
};

Word even_form_word(const EvenForm& form);
ConjugateForm to_even_form(const Word& w);

// Literal syntax: whitespace-separated syllables "a^1 b^-2 a^3"; a bare letter means
// exponent 1; "1", "e" or an empty string is the identity.
Word parse_word(const std::string& text);
EvenWord parse_even_word(const std::string& text);

}  // namespace eggbeater
