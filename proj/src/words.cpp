#include "eggbeater/words.hpp"

#include "eggbeater/errors.hpp"

#include <cctype>
#include <limits>

namespace eggbeater {

char generator_letter(Generator g) { return g == Generator::A ? 'a' : 'b'; }

Word Word::generator(Generator g, Exponent exponent) {
    return reduce_word({{g, std::move(exponent)}});
}

Word reduce_word(const std::vector<std::pair<Generator, Exponent>>& raw) {
    Word out;
    auto& stack = out.syllables_;
    for (const auto& [gen, exp] : raw) {
        if (exp == 0) continue;
        if (!stack.empty() && stack.back().generator == gen) {
            stack.back().exponent += exp;
            if (stack.back().exponent == 0) stack.pop_back();
            // A cancellation exposes the previous syllable, which has the other
            // generator, so no further merge is possible here.
        } else {
            stack.push_back({gen, exp});
        }
    }
    return out;
}

static std::vector<std::pair<Generator, Exponent>> raw_of(const Word& w) {
    std::vector<std::pair<Generator, Exponent>> raw;
    raw.reserve(w.size());
    for (const auto& s : w.syllables()) raw.emplace_back(s.generator, s.exponent);
    return raw;
}

Word Word::inverse() const {
    std::vector<std::pair<Generator, Exponent>> raw;
    raw.reserve(syllables_.size());
    for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
        raw.emplace_back(it->generator, -it->exponent);
    return reduce_word(raw);
}

Word Word::operator*(const Word& rhs) const {
    auto raw = raw_of(*this);
    auto tail = raw_of(rhs);
    raw.insert(raw.end(), tail.begin(), tail.end());
    return reduce_word(raw);
}

Exponent Word::exponent_sum(Generator g) const {
    Exponent sum = 0;
    for (const auto& s : syllables_)
        if (s.generator == g) sum += s.exponent;
    return sum;
}

std::string Word::to_string() const {
    if (syllables_.empty()) return "1";
    std::string out;
    for (const auto& s : syllables_) {
        if (!out.empty()) out += ' ';
        out += generator_letter(s.generator);
        out += '^';
        out += s.exponent.str();
    }
    return out;
}

Word power_word(const Word& w, unsigned long k) {
    std::vector<std::pair<Generator, Exponent>> raw;
    auto once = raw_of(w);
    raw.reserve(once.size() * k);
    for (unsigned long i = 0; i < k; ++i) raw.insert(raw.end(), once.begin(), once.end());
    return reduce_word(raw);
}

Word EvenWord::word() const {
    std::vector<std::pair<Generator, Exponent>> raw;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        raw.emplace_back(i % 2 == 0 ? Generator::A : Generator::B, exponents[i]);
    return reduce_word(raw);
}

std::vector<std::int64_t> EvenWord::machine_exponents() const {
    std::vector<std::int64_t> out;
    out.reserve(exponents.size());
    const Exponent limit = Exponent(1) << 40;
    for (const auto& k : exponents) {
        if (k == 0) throw Error(ErrorKind::InvalidArgument, "even word has a zero exponent");
        if (abs(k) > limit)
            throw Error(ErrorKind::InvalidArgument, "exponent " + k.str() + " exceeds the dynamics range");
        out.push_back(k.convert_to<std::int64_t>());
    }
    return out;
}

std::int64_t EvenWord::max_abs_exponent() const {
    std::int64_t best = 0;
    for (auto k : machine_exponents()) best = std::max<std::int64_t>(best, k < 0 ? -k : k);
    return best;
}

Word even_form_word(const EvenForm& form) {
    if (const auto* even = std::get_if<EvenWord>(&form)) return even->word();
    const auto& power = std::get<PowerCase>(form);
    return Word::generator(power.generator, power.exponent);
}

ConjugateForm to_even_form(const Word& w) {
    if (w.is_identity()) throw Error(ErrorKind::InvalidArgument, "identity word has no even form");
    Word current = w;
    Word conjugator;
    // Cyclic reduction: conjugating by the inverse of the last syllable merges it into the first.
    while (current.size() >= 2 &&
           current.syllables().front().generator == current.syllables().back().generator) {
        const auto& last = current.syllables().back();
        Word step = Word::generator(last.generator, -last.exponent);
        current = step.inverse() * current * step;
        conjugator = conjugator * step;
    }
    if (current.size() == 1) {
        const auto& s = current.syllables().front();
        return {conjugator, PowerCase{s.generator, s.exponent}};
    }
    if (current.syllables().front().generator == Generator::B) {
        const auto& first = current.syllables().front();
        Word step = Word::generator(first.generator, first.exponent);
        current = step.inverse() * current * step;
        conjugator = conjugator * step;
    }
    EvenWord even;
    for (const auto& s : current.syllables()) even.exponents.push_back(s.exponent);
    return {conjugator, even};
}

Word parse_word(const std::string& text) {
    std::vector<std::pair<Generator, Exponent>> raw;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_space = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_space();
    if (i < n && (text[i] == '1' || text[i] == 'e')) {
        std::size_t at = i;
        ++i;
        skip_space();
        if (i != n) throw ParseError(at + 1, "identity literal must stand alone");
        return Word();
    }
    while (i < n) {
        std::size_t start = i;
        char c = text[i];
        Generator g;
        if (c == 'a') g = Generator::A;
        else if (c == 'b') g = Generator::B;
        else throw ParseError(start + 1, std::string("expected generator 'a' or 'b', found '") + c + "'");
        ++i;
        Exponent exp = 1;
        if (i < n && text[i] == '^') {
            ++i;
            std::size_t num_start = i;
            std::string digits;
            if (i < n && (text[i] == '-' || text[i] == '+')) digits += text[i++];
            std::size_t digit_start = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
            if (i == digit_start) throw ParseError(num_start + 1, "expected integer exponent after '^'");
            if (digits[0] == '+') digits.erase(0, 1);
            exp = Exponent(digits);
        }
        if (i < n && !std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError(i + 1, std::string("unexpected character '") + text[i] + "'");
        raw.emplace_back(g, exp);
        skip_space();
    }
    return reduce_word(raw);
}

EvenWord parse_even_word(const std::string& text) {
    Word w = parse_word(text);
    if (w.is_identity() || w.size() % 2 != 0 || w.syllables().front().generator != Generator::A)
        throw Error(ErrorKind::InvalidArgument,
                    "word '" + text + "' is not of the form a^k1 b^k2 ... a^k(2m-1) b^k(2m)");
    EvenWord even;
    for (const auto& s : w.syllables()) even.exponents.push_back(s.exponent);
    return even;
}

}  // namespace eggbeater
