#ifndef QSET_LANG_HPP
#define QSET_LANG_HPP

// The qset expression language: lexer, parser, evaluator and renderers
// shared by `qset eval` and `qset repl`.
//
//   let x = [e*2, p]        # bindings; names shadow species, never rebind
//   qc power(x)             # 4
//   ident e e               # undefined
//   check axioms trials 50  # run a verification suite
//
// Statements end at a newline or ';'. Newlines inside brackets are ignored.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qset/algebra.hpp"
#include "qset/error.hpp"
#include "qset/kernel.hpp"
#include "qset/qcard.hpp"
#include "qset/suites.hpp"

namespace qset::lang {

struct Location {
    std::size_t line = 1;
    std::size_t column = 1;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::string message, Location where, std::vector<std::string> expected = {});

    Location where() const noexcept { return where_; }
    // Token kinds that would have been accepted, e.g. {"']'", "','"}.
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    Location where_;
    std::vector<std::string> expected_;
};

// ---------------------------------------------------------------- syntax tree

struct Expr;
struct Pred;

struct LiteralEntry;

struct Expr {
    enum class Kind { literal, name, macro, call };

    Kind kind;
    Location where;
    std::string name;                   // identifier, M-atom id, or operator
    std::vector<LiteralEntry> entries;  // literal
    std::vector<Expr> args;             // call
    std::uint64_t number = 0;           // choose: k
    std::shared_ptr<const Pred> pred;   // sep
};

struct LiteralEntry {
    Expr shape;
    std::uint64_t count = 1;
};

// Separation formulas: `not P`, `is m|M|Z|Q|P|D|E`, `like EXPR`, `any`, `none`.
struct Pred {
    enum class Kind { negation, is, like, any, none };

    Kind kind;
    Predicate predicate = Predicate::Q;
    std::shared_ptr<const Pred> inner;
    std::shared_ptr<const Expr> operand;
};

struct Statement {
    enum class Kind { let, expr, qc, classify, indist, ident, member, subqset, isfunc, axiom, check };

    Kind kind;
    Location where;
    std::string source;
    std::string name;  // let
    std::vector<Expr> args;
    Axiom axiom = Axiom::qc1;
    std::optional<std::uint64_t> beta;  // axiom qc3
    Suite suite = Suite::axioms;
    SuiteOptions options;
};

using Program = std::vector<Statement>;

// Throws SyntaxError at the first error. Line numbers start at first_line.
Program parse(std::string_view text, std::size_t first_line = 1);

// Parses and evaluates a single closed expression (no bindings) that must
// denote a qset. Inverse of Qset::text().
Qset parse_qset(std::string_view text);

// ---------------------------------------------------------------- evaluation

struct StatementError {
    ErrorCode code;
    std::string message;
    Location where;
    std::vector<std::string> expected;  // syntax errors only
};

struct Outcome {
    std::string statement;
    Location where;
    std::optional<std::string> value;    // let, bare expressions, qc, classify
    std::optional<std::string> verdict;  // yes/no queries, ident, axiom, check
    std::vector<std::string> lines;      // text rendering
    nlohmann::json details = nlohmann::json::object();
    std::optional<StatementError> error;

    // False on errors and on failed axiom/check verdicts.
    bool ok() const noexcept;
};

/**
 * Evaluation state carried across statements: the bindings made so far.
 * A syntax error skips to the end of the offending statement; evaluation
 * errors are reported per statement; both leave the session usable.
 */
class Session {
public:
    explicit Session(std::uint64_t power_bound = default_power_bound);

    std::vector<Outcome> run(std::string_view text, std::size_t first_line = 1);

    std::uint64_t power_bound() const noexcept { return power_bound_; }
    const std::map<std::string, Shape>& bindings() const noexcept { return bindings_; }

private:
    Outcome execute(const Statement& s);
    Shape eval(const Expr& e) const;

    std::uint64_t power_bound_;
    std::map<std::string, Shape> bindings_;
};

std::string render_text(const std::vector<Outcome>& outcomes);
nlohmann::json render_json(const std::vector<Outcome>& outcomes);

} // namespace qset::lang

#endif
