#include "qset/lang.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace qset::lang {

SyntaxError::SyntaxError(std::string message, Location where, std::vector<std::string> expected)
    : Error(ErrorCode::syntax_error, std::move(message)), where_(where), expected_(std::move(expected)) {}

bool Outcome::ok() const noexcept {
    return !error && verdict != "fail";
}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { ident, integer, at, lbracket, rbracket, lparen, rparen, comma, star, equals, separator, end, bad };

std::string describe(Tok t) {
    switch (t) {
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::at: return "'@'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::star: return "'*'";
    case Tok::equals: return "'='";
    case Tok::separator: return "end of statement";
    case Tok::end: return "end of input";
    case Tok::bad: return "invalid character";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    Location where;
    std::size_t offset;  // byte offset of the first character
    std::size_t end;     // byte offset past the last character
};

std::vector<Token> tokenize(std::string_view src, std::size_t first_line) {
    std::vector<Token> out;
    std::size_t i = 0, line = first_line, line_start = 0;
    int depth = 0;
    auto here = [&](std::size_t at) { return Location{line, at - line_start + 1}; };
    auto push = [&](Tok k, std::size_t from, std::size_t to) {
        out.push_back({k, std::string(src.substr(from, to - from)), here(from), from, to});
    };

    while (i < src.size()) {
        const char c = src[i];
        if (c == '\n') {
            if (depth == 0)
                push(Tok::separator, i, i + 1);
            ++i;
            ++line;
            line_start = i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            push(Tok::ident, i, j);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            push(Tok::integer, i, j);
            i = j;
            continue;
        }
        Tok k = Tok::bad;
        switch (c) {
        case '@': k = Tok::at; break;
        case '[': k = Tok::lbracket; ++depth; break;
        case ']': k = Tok::rbracket; depth = std::max(0, depth - 1); break;
        case '(': k = Tok::lparen; ++depth; break;
        case ')': k = Tok::rparen; depth = std::max(0, depth - 1); break;
        case ',': k = Tok::comma; break;
        case '*': k = Tok::star; break;
        case '=': k = Tok::equals; break;
        case ';': k = Tok::separator; break;
        default: break;
        }
        std::size_t len = 1;
        if (k == Tok::bad) {
            // Report a whole UTF-8 sequence rather than a stray byte.
            while (i + len < src.size() && (static_cast<unsigned char>(src[i + len]) & 0xC0) == 0x80)
                ++len;
        }
        push(k, i, i + len);
        i += len;
    }
    out.push_back({Tok::end, "", here(i), i, i});
    return out;
}

// ---------------------------------------------------------------- parser

const std::set<std::string, std::less<>> statement_keywords{
    "let", "qc", "classify", "indist", "ident", "member", "subqset", "isfunc", "axiom", "check"};

struct Operator {
    std::string_view name;
    std::size_t arity;  // for union/inter: at least this many
    bool variadic = false;
};

constexpr Operator operators[] = {
    {"union", 2, true}, {"inter", 2, true}, {"diff", 2},  {"power", 1}, {"pair", 2},  {"sep", 2},
    {"class", 2},       {"ssingle", 2},     {"choose", 3}, {"wpair", 3}, {"cross", 2},
};

const Operator* find_operator(std::string_view name) {
    for (const auto& op : operators) {
        if (op.name == name)
            return &op;
    }
    return nullptr;
}

bool is_keyword(std::string_view word) {
    return statement_keywords.contains(word) || find_operator(word) != nullptr;
}

class Parser {
public:
    Parser(std::string_view src, std::size_t first_line) : src_(src), toks_(tokenize(src, first_line)) {}

    bool at_end() {
        skip_separators();
        return peek().kind == Tok::end;
    }

    Statement statement();
    Expr expression();

    // Skips past the statement containing the current token.
    void recover() {
        while (peek().kind != Tok::separator && peek().kind != Tok::end)
            ++pos_;
    }

    Location location() const { return toks_[pos_].where; }
    std::size_t offset() const { return toks_[pos_].offset; }

    // Source text from `begin` to the end of the last token consumed.
    std::string text_since(std::size_t begin) const {
        const std::size_t end = pos_ > 0 ? std::max(begin, toks_[pos_ - 1].end) : begin;
        return std::string(src_.substr(begin, end - begin));
    }

    void expect_end_of_input() {
        if (peek().kind != Tok::end)
            fail({describe(Tok::end)});
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    void skip_separators() {
        while (peek().kind == Tok::separator)
            ++pos_;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::bad        ? "invalid character '" + t.text + "'"
                            : t.kind == Tok::ident    ? "'" + t.text + "'"
                            : t.kind == Tok::integer  ? "integer " + t.text
                                                      : describe(t.kind);
        std::string message = "expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i > 0)
                message += i + 1 == expected.size() ? " or " : ", ";
            message += expected[i];
        }
        message += ", found " + found;
        throw SyntaxError(message, t.where, std::move(expected));
    }

    const Token& expect(Tok k) {
        if (peek().kind != k)
            fail({describe(k)});
        return advance();
    }

    std::uint64_t integer(bool positive) {
        const Token& t = expect(Tok::integer);
        std::uint64_t v = 0;
        const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size())
            throw SyntaxError("integer literal " + t.text + " is too large", t.where);
        if (positive && v == 0)
            throw SyntaxError("counts must be positive", t.where, {"positive integer"});
        return v;
    }

    std::string keyword_or_name(const char* what) {
        if (peek().kind != Tok::ident)
            fail({what});
        return advance().text;
    }

    Expr literal();
    Expr call(const Token& head, const Operator& op);
    std::shared_ptr<const Pred> predicate();

    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

const std::vector<std::string> expression_start{"'['", "identifier", "'@'"};

Expr Parser::expression() {
    const Token& t = peek();
    switch (t.kind) {
    case Tok::lbracket: return literal();
    case Tok::at: {
        advance();
        if (peek().kind != Tok::ident)
            fail({"M-atom name"});
        const Token& id = advance();
        return Expr{Expr::Kind::macro, t.where, id.text};
    }
    case Tok::ident: {
        const Token& head = advance();
        if (const Operator* op = find_operator(head.text))
            return call(head, *op);
        if (statement_keywords.contains(head.text)) {
            --pos_;
            throw SyntaxError("'" + head.text + "' is a keyword and cannot name a species", head.where,
                              expression_start);
        }
        return Expr{Expr::Kind::name, head.where, head.text};
    }
    default: fail(expression_start);
    }
}

Expr Parser::literal() {
    Expr out{Expr::Kind::literal, expect(Tok::lbracket).where};
    if (peek().kind == Tok::rbracket) {
        advance();
        return out;
    }
    while (true) {
        LiteralEntry entry{expression()};
        const bool counted = peek().kind == Tok::star;
        if (counted) {
            advance();
            entry.count = integer(true);
        }
        out.entries.push_back(std::move(entry));
        if (peek().kind == Tok::comma) {
            advance();
            continue;
        }
        if (peek().kind == Tok::rbracket) {
            advance();
            return out;
        }
        if (counted)
            fail({"','", "']'"});
        fail({"'*'", "','", "']'"});
    }
}

Expr Parser::call(const Token& head, const Operator& op) {
    Expr out{Expr::Kind::call, head.where, head.text};
    expect(Tok::lparen);
    auto comma = [&] { expect(Tok::comma); };
    if (op.name == "sep") {
        out.args.push_back(expression());
        comma();
        out.pred = predicate();
    } else if (op.name == "choose") {
        out.args.push_back(expression());
        comma();
        out.number = integer(false);
        comma();
        out.args.push_back(expression());
    } else {
        out.args.push_back(expression());
        for (std::size_t i = 1; i < op.arity; ++i) {
            comma();
            out.args.push_back(expression());
        }
        while (op.variadic && peek().kind == Tok::comma) {
            advance();
            out.args.push_back(expression());
        }
    }
    if (peek().kind != Tok::rparen)
        fail(op.variadic ? std::vector<std::string>{"','", "')'"} : std::vector<std::string>{"')'"});
    advance();
    return out;
}

std::shared_ptr<const Pred> Parser::predicate() {
    const std::vector<std::string> starts{"'not'", "'is'", "'like'", "'any'", "'none'"};
    if (peek().kind != Tok::ident)
        fail(starts);
    const Token& t = advance();
    auto out = std::make_shared<Pred>();
    if (t.text == "not") {
        out->kind = Pred::Kind::negation;
        out->inner = predicate();
    } else if (t.text == "is") {
        const Location at = peek().where;
        const std::string letter = keyword_or_name("predicate letter");
        if (!parse_predicate(letter, out->predicate))
            throw SyntaxError("unknown predicate '" + letter + "'", at, {"m", "M", "Z", "Q", "P", "D", "E"});
        out->kind = Pred::Kind::is;
    } else if (t.text == "like") {
        out->kind = Pred::Kind::like;
        out->operand = std::make_shared<Expr>(expression());
    } else if (t.text == "any") {
        out->kind = Pred::Kind::any;
    } else if (t.text == "none") {
        out->kind = Pred::Kind::none;
    } else {
        --pos_;
        fail(starts);
    }
    return out;
}

Statement Parser::statement() {
    skip_separators();
    const Token& first = peek();
    Statement s{Statement::Kind::expr, first.where};
    const std::size_t begin = first.offset;

    auto word = first.kind == Tok::ident ? std::string_view(first.text) : std::string_view();
    auto args = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i)
            s.args.push_back(expression());
    };

    if (word == "let") {
        advance();
        s.kind = Statement::Kind::let;
        const Token& name = peek();
        if (name.kind != Tok::ident)
            fail({"name"});
        if (is_keyword(name.text))
            throw SyntaxError("'" + name.text + "' is a keyword and cannot be bound", name.where, {"name"});
        s.name = advance().text;
        expect(Tok::equals);
        args(1);
    } else if (word == "qc" || word == "classify") {
        advance();
        s.kind = word == "qc" ? Statement::Kind::qc : Statement::Kind::classify;
        args(1);
    } else if (word == "indist" || word == "ident" || word == "member" || word == "subqset") {
        advance();
        s.kind = word == "indist"  ? Statement::Kind::indist
                 : word == "ident" ? Statement::Kind::ident
                 : word == "member" ? Statement::Kind::member
                                    : Statement::Kind::subqset;
        args(2);
    } else if (word == "isfunc") {
        advance();
        s.kind = Statement::Kind::isfunc;
        args(3);
    } else if (word == "axiom") {
        advance();
        s.kind = Statement::Kind::axiom;
        const Location at = peek().where;
        const std::string id = keyword_or_name("axiom name");
        const auto axiom = parse_axiom(id);
        if (!axiom)
            throw SyntaxError("unknown axiom '" + id + "'", at,
                              {"qc1", "qc2", "qc3", "qc4", "qc5", "qc6", "qc7", "star"});
        s.axiom = *axiom;
        args(1);
        if (peek().kind == Tok::integer)
            s.beta = integer(false);
        else if (peek().kind != Tok::separator && peek().kind != Tok::end)
            args(1);
    } else if (word == "check") {
        advance();
        s.kind = Statement::Kind::check;
        const Location at = peek().where;
        const std::string name = keyword_or_name("suite name");
        const auto suite = parse_suite(name);
        if (!suite)
            throw SyntaxError("unknown suite '" + name + "'", at,
                              {"axioms", "oracle", "permutation", "theorem71", "nonsubst"});
        s.suite = *suite;
        while (peek().kind == Tok::ident) {
            const Token& opt = advance();
            if (opt.text == "size")
                s.options.size = integer(false);
            else if (opt.text == "trials")
                s.options.trials = integer(false);
            else if (opt.text == "seed")
                s.options.seed = integer(false);
            else {
                --pos_;
                fail({"'size'", "'trials'", "'seed'", describe(Tok::separator)});
            }
        }
    } else {
        args(1);
    }

    if (peek().kind != Tok::separator && peek().kind != Tok::end)
        fail({describe(Tok::separator)});
    const std::size_t end = toks_[pos_ - 1].end;
    s.source = std::string(src_.substr(begin, end - begin));
    return s;
}

// ---------------------------------------------------------------- evaluation helpers

Qset as_qset(const Shape& v, std::string_view role) {
    if (!v.is_qset())
        throw Error(ErrorCode::type_mismatch, std::string(role) + " must be a qset, got " + v.text());
    return v.body();
}

ClassPredicate compile(const Pred& p, const std::function<Shape(const Expr&)>& eval) {
    switch (p.kind) {
    case Pred::Kind::negation: {
        auto inner = compile(*p.inner, eval);
        return [inner](const Shape& s) { return !inner(s); };
    }
    case Pred::Kind::is: {
        const Predicate letter = p.predicate;
        return [letter](const Shape& s) { return classify(s).contains(letter); };
    }
    case Pred::Kind::like: {
        const Shape target = eval(*p.operand);
        return [target](const Shape& s) { return indist(s, target); };
    }
    case Pred::Kind::any: return [](const Shape&) { return true; };
    case Pred::Kind::none: return [](const Shape&) { return false; };
    }
    return {};
}

std::string yes_no(bool b) {
    return b ? "true" : "false";
}

nlohmann::json predicate_list(PredicateSet ps) {
    nlohmann::json out = nlohmann::json::array();
    for (const char* name : {"m", "M", "Z", "Q", "P", "D", "E"}) {
        Predicate p;
        parse_predicate(name, p);
        if (ps.contains(p))
            out.push_back(name);
    }
    return out;
}

std::string location_text(Location l) {
    return std::to_string(l.line) + ":" + std::to_string(l.column);
}

} // namespace

Program parse(std::string_view text, std::size_t first_line) {
    Parser p(text, first_line);
    Program out;
    while (!p.at_end())
        out.push_back(p.statement());
    return out;
}


namespace {

Shape evaluate(const Expr& e, const std::map<std::string, Shape>& env, std::uint64_t power_bound) {
    auto sub = [&](const Expr& x) { return evaluate(x, env, power_bound); };
    switch (e.kind) {
    case Expr::Kind::name: {
        if (auto it = env.find(e.name); it != env.end())
            return it->second;
        return Shape::micro(e.name);
    }
    case Expr::Kind::macro: return Shape::macro(e.name);
    case Expr::Kind::literal: {
        std::vector<Entry> entries;
        for (const auto& entry : e.entries)
            entries.push_back({sub(entry.shape), entry.count});
        return Shape::of(Qset::canonical(std::move(entries)));
    }
    case Expr::Kind::call: break;
    }

    std::vector<Shape> a;
    for (const auto& x : e.args)
        a.push_back(sub(x));
    auto q = [&](std::size_t i) {
        static const char* ordinal[] = {"first argument", "second argument", "third argument", "argument"};
        return as_qset(a[i], e.name + ": " + ordinal[std::min<std::size_t>(i, 3)]);
    };
    const std::string& op = e.name;

    if (op == "union" || op == "inter") {
        Qset acc = q(0);
        for (std::size_t i = 1; i < a.size(); ++i)
            acc = op == "union" ? union_of(acc, q(i)) : intersection(acc, q(i));
        return Shape::of(acc);
    }
    if (op == "diff")
        return Shape::of(difference(q(0), q(1)));
    if (op == "power")
        return Shape::of(power(q(0), power_bound));
    if (op == "pair")
        return Shape::of(pair(a[0], a[1]));
    if (op == "sep")
        return Shape::of(separation(q(0), compile(*e.pred, sub)));
    if (op == "class")
        return Shape::of(class_of(a[0], q(1)));
    if (op == "ssingle")
        return Shape::of(strong_singleton(a[0], q(1)));
    if (op == "choose")
        return Shape::of(choose(a[0], e.number, q(1)));
    if (op == "wpair")
        return Shape::of(weak_pair(a[0], a[1], q(2)));
    if (op == "cross")
        return Shape::of(cartesian_product(q(0), q(1)));
    throw Error(ErrorCode::unsupported, "unknown operator " + op);
}

} // namespace

Qset parse_qset(std::string_view text) {
    Parser p(text, 1);
    if (p.at_end())
        throw SyntaxError("expected a qset, found end of input", p.location(), expression_start);
    const Expr e = p.expression();
    p.at_end();
    p.expect_end_of_input();
    return as_qset(evaluate(e, {}, default_power_bound), "value");
}

Session::Session(std::uint64_t power_bound) : power_bound_(power_bound) {}

Shape Session::eval(const Expr& e) const {
    return evaluate(e, bindings_, power_bound_);
}

Outcome Session::execute(const Statement& s) {
    Outcome out{s.source, s.where};
    auto value = [&](std::string v) {
        out.lines.push_back(v);
        out.value = std::move(v);
    };
    auto verdict = [&](std::string v) {
        out.lines.push_back(v);
        out.verdict = std::move(v);
    };

    switch (s.kind) {
    case Statement::Kind::let: {
        if (bindings_.contains(s.name))
            throw Error(ErrorCode::redefinition, "'" + s.name + "' is already bound");
        const Shape v = eval(s.args[0]);
        bindings_.emplace(s.name, v);
        out.value = v.text();
        out.lines.push_back(s.name + " = " + v.text());
        out.details["name"] = s.name;
        break;
    }
    case Statement::Kind::expr: value(eval(s.args[0]).text()); break;
    case Statement::Kind::qc: {
        const Qset x = as_qset(eval(s.args[0]), "qc: argument");
        value(qc(x).to_string());
        out.details["of"] = x.text();
        break;
    }
    case Statement::Kind::classify: {
        const PredicateSet ps = classify(eval(s.args[0]));
        value(ps.to_string());
        out.details["predicates"] = predicate_list(ps);
        break;
    }
    case Statement::Kind::indist: verdict(yes_no(indist(eval(s.args[0]), eval(s.args[1])))); break;
    case Statement::Kind::ident:
        verdict(std::string(to_string(identity(eval(s.args[0]), eval(s.args[1])))));
        break;
    case Statement::Kind::member:
        verdict(yes_no(member(eval(s.args[0]), as_qset(eval(s.args[1]), "member: second argument"))));
        break;
    case Statement::Kind::subqset:
        verdict(yes_no(subqset(as_qset(eval(s.args[0]), "subqset: first argument"),
                               as_qset(eval(s.args[1]), "subqset: second argument"))));
        break;
    case Statement::Kind::isfunc:
        verdict(yes_no(is_quasi_function(as_qset(eval(s.args[0]), "isfunc: relation"),
                                         as_qset(eval(s.args[1]), "isfunc: domain"),
                                         as_qset(eval(s.args[2]), "isfunc: codomain"))));
        break;
    case Statement::Kind::axiom: {
        const Qset x = as_qset(eval(s.args[0]), "axiom: first argument");
        AxiomOperand operand;
        if (s.beta)
            operand = *s.beta;
        else if (s.args.size() > 1)
            operand = as_qset(eval(s.args[1]), "axiom: second argument");
        const AxiomReport r = check_qc_axiom(s.axiom, x, operand, power_bound_);
        out.verdict = r.pass ? "pass" : "fail";
        out.lines.push_back(r.line());
        out.details = {{"axiom", std::string(to_string(r.axiom))},
                       {"instance", r.instance},
                       {"equation", r.equation},
                       {"lhs", r.lhs},
                       {"relation", r.relation},
                       {"rhs", r.rhs}};
        if (r.witness)
            out.details["witness"] = r.witness->text();
        break;
    }
    case Statement::Kind::check: {
        SuiteOptions options = s.options;
        options.power_bound = power_bound_;
        const SuiteResult r = run_suite(s.suite, options);
        const std::string suite(to_string(r.suite));
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks) {
            out.lines.push_back(suite + "/" + c.line());
            checks.push_back({{"name", c.name},
                              {"cases", c.cases},
                              {"failures", c.failures},
                              {"expect_failure", c.expect_failure},
                              {"note", c.note},
                              {"pass", c.pass()}});
        }
        out.verdict = r.pass() ? "pass" : "fail";
        out.lines.push_back(suite + ": " + *out.verdict);
        out.details = {{"suite", suite}, {"seed", options.seed}, {"checks", checks}};
        break;
    }
    }
    return out;
}

std::vector<Outcome> Session::run(std::string_view text, std::size_t first_line) {
    std::vector<Outcome> outcomes;
    Parser p(text, first_line);
    while (!p.at_end()) {
        const Location start = p.location();
        const std::size_t begin = p.offset();
        Statement s;
        try {
            s = p.statement();
        } catch (const SyntaxError& e) {
            p.recover();
            Outcome o{p.text_since(begin), start};
            o.error = StatementError{e.code(), e.what(), e.where(), e.expected()};
            o.lines.push_back("error[syntax-error] " + location_text(e.where()) + ": " + e.what());
            outcomes.push_back(std::move(o));
            continue;
        }
        try {
            outcomes.push_back(execute(s));
        } catch (const Error& e) {
            Outcome o{s.source, s.where};
            o.error = StatementError{e.code(), e.what(), s.where, {}};
            o.lines.push_back("error[" + std::string(error_code_name(e.code())) + "] " + location_text(s.where) +
                              ": " + e.what());
            outcomes.push_back(std::move(o));
        }
    }
    return outcomes;
}

std::string render_text(const std::vector<Outcome>& outcomes) {
    std::string out;
    for (const auto& o : outcomes) {
        for (const auto& line : o.lines)
            out += line + '\n';
    }
    return out;
}

nlohmann::json render_json(const std::vector<Outcome>& outcomes) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& o : outcomes) {
        nlohmann::json j{{"statement", o.statement}};
        if (o.error) {
            nlohmann::json err{{"code", std::string(error_code_name(o.error->code))},
                               {"message", o.error->message},
                               {"line", o.error->where.line},
                               {"column", o.error->where.column}};
            if (!o.error->expected.empty())
                err["expected"] = o.error->expected;
            j["error"] = std::move(err);
        } else {
            if (o.value)
                j["value"] = *o.value;
            if (o.verdict)
                j["verdict"] = *o.verdict;
            j["details"] = o.details;
        }
        out.push_back(std::move(j));
    }
    return out;
}

} // namespace qset::lang
