// qset: command-line front end for the quasi-set engine.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qset/error.hpp"
#include "qset/lang.hpp"
#include "qset/quantum.hpp"
#include "qset/suites.hpp"

namespace {

using qset::Error;
using qset::ErrorCode;
namespace quantum = qset::quantum;

std::uint64_t power_bound_from_env() {
    const char* raw = std::getenv("QSET_MAX_QC");
    if (raw == nullptr || *raw == '\0')
        return qset::default_power_bound;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0' || raw[0] == '-')
        throw Error(ErrorCode::invalid_argument, "QSET_MAX_QC must be a non-negative integer, got '" +
                                                     std::string(raw) + "'");
    return v;
}

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int emit(const std::vector<qset::lang::Outcome>& outcomes, bool json) {
    if (json)
        std::cout << qset::lang::render_json(outcomes).dump(2) << '\n';
    else
        std::cout << qset::lang::render_text(outcomes);
    for (const auto& o : outcomes) {
        if (!o.ok())
            return 1;
    }
    return 0;
}

int run_eval(const std::string& file, bool json) {
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open " + file);
    std::stringstream buf;
    buf << in.rdbuf();
    qset::lang::Session session(power_bound_from_env());
    return emit(session.run(buf.str()), json);
}

// Bracket depth after `line`, ignoring comments.
int depth_after(const std::string& line, int depth) {
    for (char c : line) {
        if (c == '#')
            break;
        if (c == '[' || c == '(')
            ++depth;
        else if ((c == ']' || c == ')') && depth > 0)
            --depth;
    }
    return depth;
}

int run_repl(bool json) {
    const bool interactive = isatty(STDIN_FILENO) != 0;
    qset::lang::Session session(power_bound_from_env());
    std::string pending, line;
    std::size_t line_no = 0, first_line = 1;
    int depth = 0, status = 0;

    auto flush = [&] {
        if (pending.empty())
            return;
        const auto outcomes = session.run(pending, first_line);
        if (emit(outcomes, json) != 0)
            status = 1;
        std::cout.flush();
        pending.clear();
    };

    while (true) {
        if (interactive)
            std::cout << (depth > 0 ? "....> " : "qset> ") << std::flush;
        if (!std::getline(std::cin, line))
            break;
        ++line_no;
        if (pending.empty())
            first_line = line_no;
        pending += line;
        pending += '\n';
        depth = depth_after(line, depth);
        if (depth == 0)
            flush();
    }
    flush();
    if (interactive)
        std::cout << '\n';
    return status;
}

int run_check(const std::string& suite_name, const qset::SuiteOptions& options, bool json) {
    const auto suite = qset::parse_suite(suite_name);
    if (!suite)
        throw Error(ErrorCode::invalid_argument, "unknown suite '" + suite_name + "'");
    const qset::SuiteResult r = qset::run_suite(*suite, options);
    const std::string name(qset::to_string(r.suite));
    if (json) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : r.checks) {
            checks.push_back({{"name", c.name},
                              {"cases", c.cases},
                              {"failures", c.failures},
                              {"expect_failure", c.expect_failure},
                              {"note", c.note},
                              {"pass", c.pass()}});
        }
        nlohmann::json out{{"suite", name}, {"seed", options.seed}, {"pass", r.pass()}, {"checks", checks}};
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& c : r.checks)
            std::cout << name << '/' << c.line() << '\n';
        std::cout << name << ": " << (r.pass() ? "pass" : "fail") << '\n';
    }
    return r.pass() ? 0 : 1;
}

quantum::Statistics statistics(const std::string& name) {
    const auto s = quantum::parse_statistics(name);
    if (!s)
        throw Error(ErrorCode::invalid_argument, "unknown statistics '" + name + "' (use mb, be or fd)");
    return *s;
}

int run_count(const std::string& stat, std::uint64_t n, std::uint64_t k, bool list, bool json) {
    const auto s = statistics(stat);
    const std::uint64_t count = quantum::count_states(n, k, s);
    std::vector<quantum::OccupancyState> states;
    if (list) {
        if (s != quantum::Statistics::bose_einstein)
            throw Error(ErrorCode::unsupported, "--list enumerates Weyl decompositions (bose-einstein only)");
        states = quantum::weyl_decompositions(n, k);
    }
    if (json) {
        nlohmann::json out{{"statistics", std::string(quantum::to_string(s))}, {"n", n}, {"k", k}, {"count", count}};
        if (list) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& st : states)
                arr.push_back(st.counts);
            out["decompositions"] = arr;
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << count << '\n';
    for (const auto& st : states)
        std::cout << st.to_string() << '\n';
    return 0;
}

int run_states(const std::string& stat, std::uint64_t n, std::uint64_t k, bool json) {
    if (n != 2 || k != 2)
        throw Error(ErrorCode::unsupported, "explicit states are available for n = 2, k = 2 only");
    const auto s = statistics(stat);
    const auto states = quantum::accessible_two_particle_states(s);
    auto amplitudes = [](const quantum::TwoParticleState& st) {
        std::string out = "[";
        for (std::size_t i = 0; i < st.amplitudes.size(); ++i)
            out += (i > 0 ? ", " : "") + number(st.amplitudes[i]);
        return out + "]";
    };
    if (json) {
        auto list = [&](const std::vector<quantum::TwoParticleState>& v) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& st : v)
                arr.push_back({{"name", st.name}, {"amplitudes", st.amplitudes}, {"surplus", st.surplus}});
            return arr;
        };
        nlohmann::json out{{"statistics", std::string(quantum::to_string(s))},
                           {"basis", {"AA", "A1B2", "A2B1", "BB"}},
                           {"accessible", list(states.accessible)},
                           {"excluded", list(states.excluded)}};
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << "basis: AA A1B2 A2B1 BB\n";
    std::cout << "accessible (" << quantum::to_string(s) << "): " << states.accessible.size() << '\n';
    for (const auto& st : states.accessible)
        std::cout << "  " << st.name << ' ' << amplitudes(st) << '\n';
    for (const auto& st : states.excluded)
        std::cout << "excluded (surplus): " << st.name << ' ' << amplitudes(st) << '\n';
    return 0;
}

int run_prob(const std::string& model_file, const std::string& obs, const std::vector<std::string>& intervals,
             bool json) {
    std::ifstream in(model_file, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open " + model_file);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto model = quantum::QuantumModel::from_json(buf.str());
    std::vector<quantum::Interval> delta;
    for (const auto& text : intervals)
        delta.push_back(quantum::parse_interval(text));
    const double p = quantum::probability(model, obs, delta);
    if (json)
        std::cout << nlohmann::json{{"observable", obs}, {"intervals", intervals}, {"probability", p}}.dump(2)
                  << '\n';
    else
        std::cout << number(p) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-model engine for quasi-set theory"};
    app.require_subcommand(1);

    bool json = false;

    auto* repl = app.add_subcommand("repl", "Interactive session (reads statements from stdin)");
    repl->add_flag("--json", json, "Emit JSON arrays instead of text");

    std::string file;
    auto* eval = app.add_subcommand("eval", "Evaluate a file of statements");
    eval->add_option("-f,--file", file, "Input file")->required();
    eval->add_flag("--json", json, "Emit a JSON array");

    std::string suite;
    qset::SuiteOptions options;
    std::size_t size = 0, trials = 0;
    auto* check = app.add_subcommand("check", "Run a verification suite");
    check->add_option("--suite", suite, "axioms|oracle|permutation|theorem71|nonsubst")->required();
    auto* size_opt = check->add_option("--size", size, "Suite size parameter");
    auto* trials_opt = check->add_option("--trials", trials, "Randomized trials");
    check->add_option("--seed", options.seed, "Random seed");
    check->add_flag("--json", json, "Emit JSON");

    std::string stat;
    std::uint64_t n = 0, k = 0;
    bool list = false;
    auto* count = app.add_subcommand("count", "Count n-particle states over k modes");
    count->add_option("--stat", stat, "mb|be|fd")->required();
    count->add_option("-n", n, "Particles")->required();
    count->add_option("-k", k, "Modes")->required();
    count->add_flag("--list", list, "List the Weyl decompositions (be)");
    count->add_flag("--json", json, "Emit JSON");

    auto* states = app.add_subcommand("states", "Accessible two-particle states");
    states->add_option("--stat", stat, "mb|be|fd")->required();
    states->add_option("-n", n, "Particles")->default_val(2);
    states->add_option("-k", k, "Modes")->default_val(2);
    states->add_flag("--json", json, "Emit JSON");

    std::string model, obs;
    std::vector<std::string> intervals;
    auto* prob = app.add_subcommand("prob", "Born-rule probability of an observable taking values in a set");
    prob->add_option("--model", model, "Model JSON file")->required();
    prob->add_option("--obs", obs, "Observable name")->required();
    prob->add_option("--interval", intervals, "Closed interval a:b (repeatable)")->required()->allow_extra_args(false);
    prob->add_flag("--json", json, "Emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*repl)
            return run_repl(json);
        if (*eval)
            return run_eval(file, json);
        if (*check) {
            if (*size_opt)
                options.size = size;
            if (*trials_opt)
                options.trials = trials;
            options.power_bound = power_bound_from_env();
            return run_check(suite, options, json);
        }
        if (*count)
            return run_count(stat, n, k, list, json);
        if (*states)
            return run_states(stat, n, k, json);
        if (*prob)
            return run_prob(model, obs, intervals, json);
    } catch (const Error& e) {
        std::cerr << "error[" << qset::error_code_name(e.code()) << "]: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
