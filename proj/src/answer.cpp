// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/answer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <vector>

namespace geoverify::answer {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

enum class T { Num, Pi, Sqrt, Frac, Plus, Minus, Mul, Div, Pow, LParen, RParen, LBrace, RBrace, LBracket, RBracket, Degree, End };

struct Tok {
    T type;
    long double value = 0.0L;
};

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
        s.replace(pos, from.size(), to);
}

// Replaces `\cmd{X}` by `X` for wrappers that carry no meaning.
void unwrap_command(std::string& s, std::string_view command) {
    std::string open = std::string(command) + "{";
    for (auto pos = s.find(open); pos != std::string::npos; pos = s.find(open, pos)) {
        std::size_t depth = 1;
        std::size_t i = pos + open.size();
        for (; i < s.size() && depth > 0; ++i) {
            if (s[i] == '{') ++depth;
            if (s[i] == '}') --depth;
        }
        if (depth != 0) return;
        std::string inner = s.substr(pos + open.size(), i - 1 - (pos + open.size()));
        s.replace(pos, i - pos, inner);
    }
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out += ' ';
        pending_space = false;
        out += static_cast<char>(c);
    }
    return out;
}

std::string strip_markup(std::string_view text) {
    std::string s(text);
    replace_all(s, "$", "");
    replace_all(s, "\\(", "");
    replace_all(s, "\\)", "");
    replace_all(s, "\\[", "");
    replace_all(s, "\\]", "");
    replace_all(s, "\\left", "");
    replace_all(s, "\\right", "");
    replace_all(s, "\\dfrac", "\\frac");
    replace_all(s, "\\tfrac", "\\frac");
    replace_all(s, "\\,", " ");
    replace_all(s, "\\;", " ");
    replace_all(s, "\\!", "");
    for (auto cmd : {"\\boxed", "\\text", "\\mathrm", "\\textbf", "\\mathbf"}) unwrap_command(s, cmd);
    s = collapse_whitespace(s);
    while (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

bool starts_with_at(std::string_view s, std::size_t i, std::string_view prefix) {
    return s.substr(i, prefix.size()) == prefix;
}

std::optional<std::vector<Tok>> tokenize(std::string_view s) {
    std::vector<Tok> out;
    std::size_t i = 0;
    auto word_at = [&](std::string_view w) {
        if (!starts_with_at(s, i, w)) return false;
        std::size_t end = i + w.size();
        return end >= s.size() || !std::isalpha(static_cast<unsigned char>(s[end]));
    };
    struct Symbol {
        std::string_view text;
        T type;
    };
    static const Symbol symbols[] = {
        {"^{\\circ}", T::Degree}, {"^\\circ", T::Degree}, {"\\degree", T::Degree}, {"\\circ", T::Degree},
        {"\xC2\xB0", T::Degree},  // °
        {"\xE2\x88\x9A", T::Sqrt},  // √
        {"\xCF\x80", T::Pi},        // π
        {"\xC3\x97", T::Mul},       // ×
        {"\xC2\xB7", T::Mul},       // ·
        {"\xE2\x8B\x85", T::Mul},   // ⋅
        {"\xC3\xB7", T::Div},       // ÷
        {"\xE2\x88\x92", T::Minus}, // −
        {"\\times", T::Mul}, {"\\cdot", T::Mul}, {"\\div", T::Div},
        {"+", T::Plus}, {"-", T::Minus}, {"*", T::Mul}, {"/", T::Div}, {"^", T::Pow},
        {"(", T::LParen}, {")", T::RParen}, {"{", T::LBrace}, {"}", T::RBrace},
        {"[", T::LBracket}, {"]", T::RBracket},
    };
    while (i < s.size()) {
        unsigned char c = s[i];
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isdigit(c) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            if (j < s.size() && s[j] == '.') {
                ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            }
            std::string digits(s.substr(i, j - i));
            out.push_back({T::Num, std::strtold(digits.c_str(), nullptr)});
            i = j;
            continue;
        }
        if (word_at("\\pi") || word_at("pi")) {
            out.push_back({T::Pi});
            i += s[i] == '\\' ? 3 : 2;
            continue;
        }
        if (word_at("\\sqrt") || word_at("sqrt")) {
            out.push_back({T::Sqrt});
            i += s[i] == '\\' ? 5 : 4;
            continue;
        }
        if (word_at("\\frac")) {
            out.push_back({T::Frac});
            i += 5;
            continue;
        }
        bool matched = false;
        for (const auto& sym : symbols) {
            if (starts_with_at(s, i, sym.text)) {
                out.push_back({sym.type});
                i += sym.text.size();
                matched = true;
                break;
            }
        }
        if (!matched) return std::nullopt;
    }
    out.push_back({T::End});
    return out;
}

class Evaluator {
public:
    explicit Evaluator(const std::vector<Tok>& toks) : toks_(toks) {}

    std::optional<long double> run() {
        auto v = expr();
        if (!v || peek() != T::End) return std::nullopt;
        return v;
    }

    bool degree() const { return degree_; }
    bool pi() const { return pi_; }

private:
    T peek() const { return toks_[pos_].type; }
    bool accept(T t) {
        if (peek() != t) return false;
        ++pos_;
        return true;
    }

    std::optional<long double> expr() {
        auto lhs = term();
        while (lhs) {
            if (accept(T::Plus)) {
                auto rhs = term();
                if (!rhs) return std::nullopt;
                *lhs += *rhs;
            } else if (accept(T::Minus)) {
                auto rhs = term();
                if (!rhs) return std::nullopt;
                *lhs -= *rhs;
            } else {
                break;
            }
        }
        return lhs;
    }

    static bool starts_implicit_factor(T t) {
        return t == T::Pi || t == T::Sqrt || t == T::Frac || t == T::LParen || t == T::LBrace;
    }

    std::optional<long double> term() {
        auto lhs = factor();
        while (lhs) {
            if (accept(T::Mul)) {
                auto rhs = factor();
                if (!rhs) return std::nullopt;
                *lhs *= *rhs;
            } else if (accept(T::Div)) {
                auto rhs = factor();
                if (!rhs) return std::nullopt;
                *lhs /= *rhs;
            } else if (starts_implicit_factor(peek())) {
                auto rhs = power();
                if (!rhs) return std::nullopt;
                *lhs *= *rhs;
            } else {
                break;
            }
        }
        return lhs;
    }

    std::optional<long double> factor() {
        if (accept(T::Minus)) {
            auto v = factor();
            if (v) *v = -*v;
            return v;
        }
        if (accept(T::Plus)) return factor();
        return power();
    }

    std::optional<long double> power() {
        auto base = postfix();
        if (base && accept(T::Pow)) {
            auto exponent = factor();
            if (!exponent) return std::nullopt;
            return std::pow(*base, *exponent);
        }
        return base;
    }

    std::optional<long double> postfix() {
        auto v = primary();
        if (v && accept(T::Degree)) {
            if (degree_) return std::nullopt;
            degree_ = true;
        }
        return v;
    }

    std::optional<long double> group(T close) {
        auto v = expr();
        if (!v || !accept(close)) return std::nullopt;
        return v;
    }

    std::optional<long double> primary() {
        const Tok& t = toks_[pos_];
        switch (t.type) {
        case T::Num: ++pos_; return t.value;
        case T::Pi: ++pos_; pi_ = true; return kPi;
        case T::LParen: ++pos_; return group(T::RParen);
        case T::LBrace: ++pos_; return group(T::RBrace);
        case T::Frac: {
            ++pos_;
            if (!accept(T::LBrace)) return std::nullopt;
            auto num = group(T::RBrace);
            if (!num || !accept(T::LBrace)) return std::nullopt;
            auto den = group(T::RBrace);
            if (!den) return std::nullopt;
            return *num / *den;
        }
        case T::Sqrt: {
            ++pos_;
            long double index = 2.0L;
            if (accept(T::LBracket)) {
                auto n = group(T::RBracket);
                if (!n) return std::nullopt;
                index = *n;
            }
            // √ binds to the next primary: √3/2 is (√3)/2.
            auto radicand = primary();
            if (!radicand) return std::nullopt;
            if (index == 2.0L) return std::sqrt(*radicand);
            return std::pow(*radicand, 1.0L / index);
        }
        default: return std::nullopt;
        }
    }

    const std::vector<Tok>& toks_;
    std::size_t pos_ = 0;
    bool degree_ = false;
    bool pi_ = false;
};

// [sign] number [/ [sign] number] [degree]
bool is_plain_number(const std::vector<Tok>& toks) {
    std::size_t i = 0;
    auto sign = [&] {
        if (toks[i].type == T::Minus || toks[i].type == T::Plus) ++i;
    };
    sign();
    if (toks[i].type != T::Num) return false;
    ++i;
    if (toks[i].type == T::Div) {
        ++i;
        sign();
        if (toks[i].type != T::Num) return false;
        ++i;
    }
    if (toks[i].type == T::Degree) ++i;
    return toks[i].type == T::End;
}

std::optional<AnswerValue> try_expression(const std::string& s) {
    auto toks = tokenize(s);
    if (!toks || toks->size() == 1) return std::nullopt;
    Evaluator eval(*toks);
    auto v = eval.run();
    if (!v || !std::isfinite(*v)) return std::nullopt;
    AnswerValue out;
    out.form = is_plain_number(*toks) ? Form::Numeric : Form::Expression;
    out.numeric_value = *v;
    out.has_degree = eval.degree();
    out.has_pi = eval.pi();
    out.normalized_text = s;
    return out;
}

std::optional<char> try_choice(const std::string& s) {
    std::string_view v = s;
    if (v.size() == 3 && v.front() == '(' && v.back() == ')') v = v.substr(1, 1);
    if (v.size() != 1) return std::nullopt;
    char c = static_cast<char>(std::toupper(static_cast<unsigned char>(v[0])));
    if (c < 'A' || c > 'E') return std::nullopt;
    return c;
}

std::string text_key(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isspace(c)) continue;
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

bool close_enough(long double a, long double b) {
    long double scale = std::max({1.0L, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= kRelativeTolerance * scale;
}

} // namespace

std::string_view to_string(Form form) {
    switch (form) {
    case Form::Numeric: return "Numeric";
    case Form::Expression: return "Expression";
    case Form::Choice: return "Choice";
    case Form::Text: return "Text";
    }
    return "?";
}

std::string AnswerValue::describe() const {
    std::ostringstream out;
    out << to_string(form);
    if (numeric_like()) {
        out.precision(18);
        out << ' ' << numeric_value;
        if (has_degree) out << " (degrees)";
    } else {
        out << " \"" << normalized_text << '"';
    }
    return out.str();
}

AnswerValue parse_answer(std::string_view text) {
    std::string s = strip_markup(text);

    if (auto choice = try_choice(s)) {
        AnswerValue out;
        out.form = Form::Choice;
        out.normalized_text = std::string(1, *choice);
        return out;
    }
    if (auto expr = try_expression(s)) return *expr;
    if (auto eq = s.find('='); eq != std::string::npos && s.find('=', eq + 1) == std::string::npos) {
        std::string rhs = collapse_whitespace(s.substr(eq + 1));
        if (auto expr = try_expression(rhs)) return *expr;
    }

    AnswerValue out;
    out.form = Form::Text;
    out.normalized_text = text_key(s);
    return out;
}

int grade_answer(const AnswerValue& candidate, const AnswerValue& reference) {
    if (candidate.numeric_like() && reference.numeric_like()) {
        if (close_enough(candidate.numeric_value, reference.numeric_value)) return 1;
        // A degree measure against a radian expression in terms of pi.
        if (candidate.has_degree != reference.has_degree) {
            const AnswerValue& deg = candidate.has_degree ? candidate : reference;
            const AnswerValue& rad = candidate.has_degree ? reference : candidate;
            if (rad.has_pi && close_enough(deg.numeric_value * kPi / 180.0L, rad.numeric_value)) return 1;
        }
        return 0;
    }
    if (candidate.form != reference.form) return 0;
    return candidate.normalized_text == reference.normalized_text ? 1 : 0;
}

bool needs_judge(const AnswerValue& candidate, const AnswerValue& reference) {
    return grade_answer(candidate, reference) == 0 && (candidate.form == Form::Text || reference.form == Form::Text);
}

} // namespace geoverify::answer
