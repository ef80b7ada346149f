// Copyright (c) 2026, The geoverify Authors
// SPDX-License-Identifier: Apache-2.0

#include "geoverify/construction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace geoverify::construction {

namespace {

const std::set<std::string, std::less<>> kKeywords = {
    "point", "connect", "parallel", "perpendicular", "extend", "intersect", "midpoint", "foot", "line",
};

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

enum class Tok { Ident, LParen, RParen, Comma, Assign, End };

struct Token {
    Tok type;
    std::string text;
    std::size_t column;  // 1-based
};


struct Node {
    std::string ident;  // set when this is a bare identifier
    std::vector<Node> args;
    bool is_call = false;
    std::size_t column = 0;
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        unsigned char c = line[i];
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t col = i + 1;
        if (std::isalpha(c)) {
            std::size_t j = i + 1;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), col});
            i = j;
            continue;
        }
        switch (c) {
        case '(': out.push_back({Tok::LParen, "(", col}); break;
        case ')': out.push_back({Tok::RParen, ")", col}); break;
        case ',': out.push_back({Tok::Comma, ",", col}); break;
        case ':':
            if (i + 1 < line.size() && line[i + 1] == '=') {
                out.push_back({Tok::Assign, ":=", col});
                ++i;
                break;
            }
            [[fallthrough]];
        default:
            throw ParseError(ParseError::Code::Syntax, line_no, col,
                             std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
        ++i;
    }
    out.push_back({Tok::End, "", line.size() + 1});
    return out;
}

class LineParser {
public:
    LineParser(std::vector<Token> tokens, std::size_t line_no) : toks_(std::move(tokens)), line_(line_no) {}

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    const Token& expect(Tok type, const char* what) {
        if (peek().type != type) fail(peek(), std::string("expected ") + what);
        return next();
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) const {
        std::string found = at.type == Tok::End ? "end of line" : "'" + at.text + "'";
        throw ParseError(ParseError::Code::Syntax, line_, at.column, message + ", found " + found);
    }

    // arg := IDENT | IDENT "(" arg ("," arg)* ")"
    Node parse_arg() {
        const Token& head = expect(Tok::Ident, "identifier");
        Node n;
        n.column = head.column;
        if (peek().type != Tok::LParen) {
            n.ident = head.text;
            return n;
        }
        next();
        n.is_call = true;
        n.ident = head.text;
        if (peek().type != Tok::RParen) {
            n.args.push_back(parse_arg());
            while (peek().type == Tok::Comma) {
                next();
                n.args.push_back(parse_arg());
            }
        }
        expect(Tok::RParen, "')' or ','");
        return n;
    }

    std::size_t line() const { return line_; }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

// ---------------------------------------------------------------------------
// Semantic conversion
// ---------------------------------------------------------------------------

class Builder {
public:
    void statement(LineParser& p) {
        line_ = p.line();
        const Token& first = p.peek();
        if (first.type == Tok::Ident && first.text == "point") {
            p.next();
            const Token& name = p.expect(Tok::Ident, "point name");
            check_not_keyword(name.text, name.column);
            if (p.peek().type == Tok::End) {
                declare(name.text, name.column);
                emit({Kind::DeclarePoint, {name.text}});
                return;
            }
            p.expect(Tok::Assign, "':=' or end of line");
            Node locus = p.parse_arg();
            p.expect(Tok::End, "end of line");
            Statement s = convert_locus(locus);
            declare(name.text, name.column);
            s.args.emplace_back(name.text);
            emit(std::move(s));
            return;
        }
        Node call = p.parse_arg();
        p.expect(Tok::End, "end of line");
        emit(convert_command(call));
    }

    ConstructionSet finish() {
        std::sort(statements_.begin(), statements_.end());
        statements_.erase(std::unique(statements_.begin(), statements_.end()), statements_.end());
        return {std::move(statements_), std::move(introduced_)};
    }

private:
    [[noreturn]] void fail(ParseError::Code code, std::size_t column, const std::string& message) const {
        throw ParseError(code, line_, column, message);
    }

    void check_not_keyword(const std::string& name, std::size_t column) const {
        if (kKeywords.contains(name)) fail(ParseError::Code::Syntax, column, "'" + name + "' is a keyword");
    }

    void declare(const std::string& name, std::size_t column) {
        if (declared_.contains(name)) fail(ParseError::Code::Redeclaration, column, "point '" + name + "' declared twice");
        if (auto it = given_uses_.find(name); it != given_uses_.end())
            fail(ParseError::Code::UndeclaredFreshPoint, column,
                 "point '" + name + "' used on line " + std::to_string(it->second) + " before its declaration");
        declared_.insert(name);
        introduced_.push_back(name);
    }

    std::string point(const Node& n) {
        if (n.is_call) fail(ParseError::Code::Syntax, n.column, "expected a point, found '" + n.ident + "(...)'");
        check_not_keyword(n.ident, n.column);
        if (!declared_.contains(n.ident)) given_uses_.try_emplace(n.ident, line_);
        return n.ident;
    }

    void arity(const Node& call, std::size_t expected) const {
        if (call.args.size() != expected)
            fail(ParseError::Code::Arity, call.column,
                 "'" + call.ident + "' takes " + std::to_string(expected) + " arguments, got " +
                     std::to_string(call.args.size()));
    }

    void distinct(const Node& call, const std::string& a, const std::string& b) const {
        if (a == b) fail(ParseError::Code::Arity, call.column, "'" + call.ident + "' needs two distinct points");
    }

    LineRef line(const Node& n) {
        if (!n.is_call || n.ident != "line") fail(ParseError::Code::Syntax, n.column, "expected line(P, Q)");
        arity(n, 2);
        auto a = point(n.args[0]);
        auto b = point(n.args[1]);
        distinct(n, a, b);
        return {std::move(a), std::move(b)};
    }

    Statement convert_locus(const Node& n) {
        if (!n.is_call) fail(ParseError::Code::Syntax, n.column, "expected intersect, midpoint or foot");
        if (n.ident == "intersect") {
            arity(n, 2);
            LineRef l1 = line(n.args[0]);
            LineRef l2 = line(n.args[1]);
            Statement s{Kind::IntersectionOf, {l1, l2}};
            s.canonicalize();
            if (std::get<LineRef>(s.args[0]) == std::get<LineRef>(s.args[1]))
                fail(ParseError::Code::Arity, n.column, "'intersect' needs two distinct lines");
            return s;
        }
        if (n.ident == "midpoint") {
            arity(n, 2);
            auto a = point(n.args[0]);
            auto b = point(n.args[1]);
            distinct(n, a, b);
            return {Kind::Midpoint, {a, b}};
        }
        if (n.ident == "foot") {
            arity(n, 2);
            auto a = point(n.args[0]);
            return {Kind::FootOfPerpendicular, {a, line(n.args[1])}};
        }
        fail(ParseError::Code::Syntax, n.column, "unknown locus '" + n.ident + "'");
    }

    Statement convert_command(const Node& n) {
        if (!n.is_call) fail(ParseError::Code::Syntax, n.column, "expected a statement");
        if (n.ident == "connect") {
            arity(n, 2);
            auto a = point(n.args[0]);
            auto b = point(n.args[1]);
            distinct(n, a, b);
            return {Kind::Connect, {a, b}};
        }
        if (n.ident == "parallel" || n.ident == "perpendicular") {
            arity(n, 2);
            auto p = point(n.args[0]);
            Kind k = n.ident == "parallel" ? Kind::ParallelThrough : Kind::PerpendicularFrom;
            return {k, {p, line(n.args[1])}};
        }
        if (n.ident == "extend") {
            arity(n, 3);
            auto a = point(n.args[0]);
            auto b = point(n.args[1]);
            auto c = point(n.args[2]);
            if (a == b || a == c || b == c)
                fail(ParseError::Code::Arity, n.column, "'extend' needs three distinct points");
            return {Kind::ExtendTo, {a, b, c}};
        }
        fail(ParseError::Code::Syntax, n.column, "unknown statement '" + n.ident + "'");
    }

    void emit(Statement s) {
        s.canonicalize();
        statements_.push_back(std::move(s));
    }

    std::size_t line_ = 0;
    std::unordered_set<std::string> declared_;
    std::unordered_map<std::string, std::size_t> given_uses_;
    std::vector<std::string> introduced_;
    std::vector<Statement> statements_;
};

// ---------------------------------------------------------------------------
// Renaming helpers
// ---------------------------------------------------------------------------

using NameMap = std::unordered_map<std::string, std::string>;

std::string mapped(const std::string& name, const NameMap& map) {
    auto it = map.find(name);
    return it == map.end() ? name : it->second;
}

Statement rename(const Statement& s, const NameMap& map) {
    Statement out{s.kind, {}};
    out.args.reserve(s.args.size());
    for (const auto& arg : s.args) {
        if (const auto* p = std::get_if<std::string>(&arg))
            out.args.emplace_back(mapped(*p, map));
        else {
            const auto& l = std::get<LineRef>(arg);
            out.args.emplace_back(LineRef{mapped(l.a, map), mapped(l.b, map)});
        }
    }
    out.canonicalize();
    return out;
}

std::vector<Statement> rename_all(const std::vector<Statement>& statements, const NameMap& map) {
    std::vector<Statement> out;
    out.reserve(statements.size());
    for (const auto& s : statements) out.push_back(rename(s, map));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <typename F>
void for_each_point(const Statement& s, F&& f) {
    for (const auto& arg : s.args) {
        if (const auto* p = std::get_if<std::string>(&arg)) {
            f(*p);
        } else {
            const auto& l = std::get<LineRef>(arg);
            f(l.a);
            f(l.b);
        }
    }
}

std::optional<std::string> declared_point(const Statement& s) {
    switch (s.kind) {
    case Kind::DeclarePoint:
    case Kind::Midpoint:
    case Kind::IntersectionOf:
    case Kind::FootOfPerpendicular: return std::get<std::string>(s.args.back());
    default: return std::nullopt;
    }
}

// Compares strings treating digit runs as numbers, so X2 < X10.
bool natural_less(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            auto na = a.substr(i, ie - i);
            auto nb = b.substr(j, je - j);
            while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
            while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = ie;
            j = je;
            continue;
        }
        if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
        ++i;
        ++j;
    }
    return (a.size() - i) < (b.size() - j);
}

// Statement order in which every fresh point is declared before it is used.
// Among statements whose dependencies are satisfied the smallest rendering
// (natural order) goes first. With `declarations` given, fresh points are
// declared in exactly that order.
std::vector<const Statement*> dependency_order(const std::vector<Statement>& statements,
                                               const std::unordered_set<std::string>& fresh,
                                               const std::vector<std::string>* declarations = nullptr) {
    std::vector<std::string> rendered;
    rendered.reserve(statements.size());
    for (const auto& s : statements) rendered.push_back(s.render());

    std::vector<std::size_t> remaining(statements.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    std::unordered_set<std::string> declared;
    std::vector<const Statement*> order;
    order.reserve(statements.size());
    std::size_t next_declaration = 0;

    auto ready = [&](std::size_t idx) {
        auto self = declared_point(statements[idx]);
        bool ok = true;
        for_each_point(statements[idx], [&](const std::string& p) {
            if (fresh.contains(p) && !declared.contains(p) && (!self || *self != p)) ok = false;
        });
        if (ok && self && declarations && next_declaration < declarations->size())
            ok = (*declarations)[next_declaration] == *self;
        return ok;
    };

    while (!remaining.empty()) {
        std::optional<std::size_t> best;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            if (!ready(remaining[k])) continue;
            if (!best || natural_less(rendered[remaining[k]], rendered[remaining[*best]])) best = k;
        }
        // A cycle cannot come out of the parser; fall back to sorted order.
        if (!best) best = 0;
        std::size_t idx = remaining[*best];
        if (auto d = declared_point(statements[idx])) {
            declared.insert(*d);
            ++next_declaration;
        }
        order.push_back(&statements[idx]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(*best));
    }
    return order;
}

std::string join_renderings(const std::vector<Statement>& statements) {
    std::string key;
    for (const auto& s : statements) {
        key += s.render();
        key += '\n';
    }
    return key;
}

constexpr std::size_t kEnumerationBudget = 40320;

// Partitions fresh points by iterated structural signatures; returns one
// color per fresh point, comparable across isomorphic sets.
std::vector<std::size_t> refine_colors(const std::vector<Statement>& statements,
                                       const std::vector<std::string>& fresh) {
    std::vector<std::size_t> colors(fresh.size(), 0);
    std::size_t classes = 1;
    for (std::size_t round = 0; round <= fresh.size(); ++round) {
        std::vector<std::string> signatures(fresh.size());
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            NameMap map;
            for (std::size_t j = 0; j < fresh.size(); ++j)
                map[fresh[j]] = (i == j) ? std::string("\x01#") : "\x01?" + std::to_string(colors[j]);
            std::vector<std::string> parts;
            for (const auto& s : statements) {
                bool uses = false;
                for_each_point(s, [&](const std::string& p) { uses = uses || p == fresh[i]; });
                if (uses) parts.push_back(rename(s, map).render());
            }
            std::sort(parts.begin(), parts.end());
            for (const auto& part : parts) signatures[i] += part + "\n";
        }
        std::vector<std::string> unique = signatures;
        std::sort(unique.begin(), unique.end());
        unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
        for (std::size_t i = 0; i < fresh.size(); ++i)
            colors[i] = static_cast<std::size_t>(std::lower_bound(unique.begin(), unique.end(), signatures[i]) -
                                                 unique.begin());
        if (unique.size() == classes && round > 0) break;
        classes = unique.size();
    }
    return colors;
}

} // namespace

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

std::string_view to_string(Kind kind) {
    switch (kind) {
    case Kind::DeclarePoint: return "DeclarePoint";
    case Kind::Connect: return "Connect";
    case Kind::ExtendTo: return "ExtendTo";
    case Kind::ParallelThrough: return "ParallelThrough";
    case Kind::PerpendicularFrom: return "PerpendicularFrom";
    case Kind::Midpoint: return "Midpoint";
    case Kind::IntersectionOf: return "IntersectionOf";
    case Kind::FootOfPerpendicular: return "FootOfPerpendicular";
    }
    return "?";
}

std::string LineRef::render() const { return "line(" + a + "," + b + ")"; }

std::string Statement::render() const {
    auto pt = [&](std::size_t i) -> const std::string& { return std::get<std::string>(args[i]); };
    auto ln = [&](std::size_t i) { return std::get<LineRef>(args[i]).render(); };
    switch (kind) {
    case Kind::DeclarePoint: return "point " + pt(0);
    case Kind::Connect: return "connect(" + pt(0) + "," + pt(1) + ")";
    case Kind::ExtendTo: return "extend(" + pt(0) + "," + pt(1) + "," + pt(2) + ")";
    case Kind::ParallelThrough: return "parallel(" + pt(0) + "," + ln(1) + ")";
    case Kind::PerpendicularFrom: return "perpendicular(" + pt(0) + "," + ln(1) + ")";
    case Kind::Midpoint: return "point " + pt(2) + " := midpoint(" + pt(0) + "," + pt(1) + ")";
    case Kind::IntersectionOf: return "point " + pt(2) + " := intersect(" + ln(0) + "," + ln(1) + ")";
    case Kind::FootOfPerpendicular: return "point " + pt(2) + " := foot(" + pt(0) + "," + ln(1) + ")";
    }
    return {};
}

void Statement::canonicalize() {
    for (auto& arg : args)
        if (auto* l = std::get_if<LineRef>(&arg); l && l->b < l->a) std::swap(l->a, l->b);
    auto sort_points = [&](std::size_t i, std::size_t j) {
        auto& a = std::get<std::string>(args[i]);
        auto& b = std::get<std::string>(args[j]);
        if (b < a) std::swap(a, b);
    };
    switch (kind) {
    case Kind::Connect:
    case Kind::Midpoint: sort_points(0, 1); break;
    case Kind::IntersectionOf: {
        auto& l1 = std::get<LineRef>(args[0]);
        auto& l2 = std::get<LineRef>(args[1]);
        if (l2.render() < l1.render()) std::swap(l1, l2);
        break;
    }
    default: break;
    }
}

bool operator<(const Statement& lhs, const Statement& rhs) { return lhs.render() < rhs.render(); }

std::string ConstructionSet::render() const {
    std::unordered_set<std::string> fresh(introduced_points.begin(), introduced_points.end());
    std::string out;
    for (const Statement* s : dependency_order(statements, fresh, &introduced_points)) {
        out += s->render();
        out += '\n';
    }
    return out;
}

ConstructionSet parse_constructions(std::string_view source) {
    Builder builder;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t end = source.find('\n', start);
        if (end == std::string_view::npos) end = source.size();
        std::string_view line = source.substr(start, end - start);
        ++line_no;
        if (auto comment = line.find("--"); comment != std::string_view::npos) line = line.substr(0, comment);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        auto tokens = tokenize(line, line_no);
        if (tokens.size() > 1) {
            LineParser parser(std::move(tokens), line_no);
            builder.statement(parser);
        }
        start = end + 1;
    }
    return builder.finish();
}

LenientParse parse_constructions_lenient(std::string_view source) {
    try {
        return {parse_constructions(source), false, {}};
    } catch (const ParseError& e) {
        return {{}, true, e.what()};
    }
}

ConstructionSet canonical_rename(const ConstructionSet& set) {
    const auto& fresh = set.introduced_points;
    if (fresh.empty()) return set;

    std::unordered_set<std::string> given;
    std::unordered_set<std::string> fresh_lookup(fresh.begin(), fresh.end());
    for (const auto& s : set.statements)
        for_each_point(s, [&](const std::string& p) {
            if (!fresh_lookup.contains(p)) given.insert(p);
        });

    // Search orderings of the fresh points consistent with the structural
    // coloring; the smallest resulting statement list is the canonical one.
    auto colors = refine_colors(set.statements, fresh);
    std::vector<std::size_t> order(fresh.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return colors[a] != colors[b] ? colors[a] < colors[b] : fresh[a] < fresh[b];
    });

    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) into order
    double combinations = 1.0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && colors[order[j]] == colors[order[i]]) ++j;
        for (std::size_t k = 2; k <= j - i; ++k) combinations *= static_cast<double>(k);
        groups.emplace_back(i, j);
        i = j;
    }
    // Beyond the budget, ties keep the original name order.
    bool exhaustive = combinations <= static_cast<double>(kEnumerationBudget);

    auto temp_name = [](std::size_t i) { return "\x01" + std::to_string(i); };
    std::optional<std::string> best_key;
    std::vector<Statement> best;

    auto evaluate = [&] {
        NameMap map;
        for (std::size_t pos = 0; pos < order.size(); ++pos) map[fresh[order[pos]]] = temp_name(pos);
        auto renamed = rename_all(set.statements, map);
        auto key = join_renderings(renamed);
        if (!best_key || key < *best_key) {
            best_key = std::move(key);
            best = std::move(renamed);
        }
    };

    if (!exhaustive) {
        evaluate();
    } else {
        // Odometer over per-group permutations.
        for (auto [b, e] : groups) std::sort(order.begin() + b, order.begin() + e);
        while (true) {
            evaluate();
            std::size_t g = groups.size();
            while (g > 0) {
                auto [b, e] = groups[g - 1];
                if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
                --g;
            }
            if (g == 0) break;
        }
    }

    // Number fresh points by declaration order in the dependency order.
    std::unordered_set<std::string> temp_fresh;
    for (std::size_t i = 0; i < fresh.size(); ++i) temp_fresh.insert(temp_name(i));
    NameMap final_names;
    std::vector<std::string> introduced;
    std::size_t next_index = 1;
    for (const Statement* s : dependency_order(best, temp_fresh)) {
        for_each_point(*s, [&](const std::string& p) {
            if (!temp_fresh.contains(p) || final_names.contains(p)) return;
            std::string name;
            do {
                name = "X" + std::to_string(next_index++);
            } while (given.contains(name));
            final_names[p] = name;
            introduced.push_back(name);
        });
    }
    return {rename_all(best, final_names), std::move(introduced)};
}

int match_aux(const ConstructionSet& candidate, const ConstructionSet& reference, const MatchOptions& options) {
    auto cand = canonical_rename(candidate);
    auto ref = canonical_rename(reference);
    if (cand.statements == ref.statements) return 1;
    if (!options.allow_superset) return 0;
    if (ref.introduced_points.size() > cand.introduced_points.size()) return 0;

    // Look for an injective map of reference fresh points into candidate
    // fresh points under which every reference statement appears.
    const auto& rf = ref.introduced_points;
    const auto& cf = cand.introduced_points;
    std::vector<std::size_t> pick(cf.size());
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    std::size_t tried = 0;
    std::set<std::vector<std::size_t>> seen;
    do {
        std::vector<std::size_t> prefix(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(rf.size()));
        if (!seen.insert(prefix).second) continue;
        if (++tried > kEnumerationBudget) break;
        NameMap map;
        for (std::size_t i = 0; i < rf.size(); ++i) map[rf[i]] = cf[prefix[i]];
        auto renamed = rename_all(ref.statements, map);
        if (std::includes(cand.statements.begin(), cand.statements.end(), renamed.begin(), renamed.end()))
            return 1;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return 0;
}

} // namespace geoverify::construction
