#include "qset/qcard.hpp"

#include <algorithm>

#include "qset/error.hpp"

namespace qset {

std::uint64_t QuasiCardinal::value() const {
    if (!value_)
        throw Error(ErrorCode::invalid_argument, "qset has no quasi-cardinal");
    return *value_;
}

std::string QuasiCardinal::to_string() const {
    return value_ ? std::to_string(*value_) : std::string("absent");
}

QuasiCardinal qc(const Qset& x) {
    return QuasiCardinal(x.size());
}

std::string_view to_string(Axiom axiom) noexcept {
    switch (axiom) {
    case Axiom::qc1: return "qc1";
    case Axiom::qc2: return "qc2";
    case Axiom::qc3: return "qc3";
    case Axiom::qc4: return "qc4";
    case Axiom::qc5: return "qc5";
    case Axiom::qc6: return "qc6";
    case Axiom::qc7: return "qc7";
    case Axiom::star: return "star";
    }
    return "?";
}

std::optional<Axiom> parse_axiom(std::string_view name) noexcept {
    for (auto a : {Axiom::qc1, Axiom::qc2, Axiom::qc3, Axiom::qc4, Axiom::qc5, Axiom::qc6, Axiom::qc7, Axiom::star}) {
        if (to_string(a) == name)
            return a;
    }
    return std::nullopt;
}

std::string AxiomReport::line() const {
    std::string out(to_string(axiom));
    out += ' ';
    out += instance;
    out += ": ";
    out += lhs;
    out += ' ';
    out += relation;
    out += ' ';
    out += rhs;
    out += pass ? " pass" : " FAIL";
    return out;
}

Qset qc3_witness(const Qset& x, std::uint64_t beta) {
    if (beta > x.size()) {
        throw Error(ErrorCode::precondition_violated,
                    "β = " + std::to_string(beta) + " exceeds qc(x) = " + std::to_string(x.size()));
    }
    std::vector<Entry> out;
    std::uint64_t remaining = beta;
    for (const auto& e : x.entries()) {
        if (remaining == 0)
            break;
        const std::uint64_t take = std::min(remaining, e.count);
        out.push_back({e.shape, take});
        remaining -= take;
    }
    return Qset::canonical(std::move(out));
}

namespace {

const Qset& need_qset(Axiom axiom, const AxiomOperand& operand) {
    if (const auto* y = std::get_if<Qset>(&operand))
        return *y;
    throw Error(ErrorCode::precondition_violated, std::string(to_string(axiom)) + " needs a second qset y");
}

void require(bool ok, const std::string& condition) {
    if (!ok)
        throw Error(ErrorCode::precondition_violated, "side condition fails: " + condition);
}

bool disjoint_classes(const Qset& x, const Qset& y) {
    return std::none_of(x.entries().begin(), x.entries().end(),
                        [&](const Entry& e) { return member(e.shape, y); });
}

std::string num(std::uint64_t v) {
    return std::to_string(v);
}

} // namespace

AxiomReport check_qc_axiom(Axiom axiom, const Qset& x, const AxiomOperand& operand, std::uint64_t power_bound) {
    AxiomReport r{axiom, "x=" + x.text()};
    const std::uint64_t qx = qc(x).value();

    switch (axiom) {
    case Axiom::qc1: {
        // For sets the quasi-cardinal is the classical cardinal: the number of
        // distinct elements. Otherwise it merely has to exist.
        r.equation = "Z(x) -> qc(x) = card(x)";
        r.lhs = num(qx);
        if (!x.has_micro()) {
            r.rhs = num(x.class_count());
            r.pass = qx == x.class_count();
        } else {
            r.relation = "is";
            r.rhs = "a cardinal";
            r.pass = qc(x).defined();
        }
        break;
    }
    case Axiom::qc2: {
        r.equation = "qc(x) = 0 <-> x = ∅";
        r.lhs = std::string("[qc(x) = 0] ") + (qx == 0 ? "true" : "false");
        r.relation = "<->";
        r.rhs = std::string("[x = ∅] ") + (x.empty() ? "true" : "false");
        r.pass = (qx == 0) == x.empty();
        break;
    }
    case Axiom::qc3: {
        const auto* beta = std::get_if<std::uint64_t>(&operand);
        require(beta != nullptr, "qc3 needs a cardinal β");
        require(*beta <= qx, "β ≤ qc(x)");
        Qset w = qc3_witness(x, *beta);
        r.instance += " β=" + num(*beta);
        r.equation = "∃z ⊆ x: qc(z) = β";
        r.lhs = "qc(" + w.text() + ")";
        r.rhs = num(*beta);
        r.pass = subqset(w, x) && w.size() == *beta;
        r.witness = std::move(w);
        break;
    }
    case Axiom::qc4: {
        const Qset& y = need_qset(axiom, operand);
        require(subqset(y, x), "y ⊆ x");
        r.instance += " y=" + y.text();
        r.equation = "qc(y) ≤ qc(x)";
        r.lhs = num(y.size());
        r.relation = "≤";
        r.rhs = num(qx);
        r.pass = y.size() <= qx;
        break;
    }
    case Axiom::qc5: {
        const Qset& y = need_qset(axiom, operand);
        require(subqset(x, y) && !(x == y), "x ⊂ y");
        r.instance += " y=" + y.text();
        r.equation = "qc(x) < qc(y)";
        r.lhs = num(qx);
        r.relation = "<";
        r.rhs = num(y.size());
        r.pass = qx < y.size();
        break;
    }
    case Axiom::qc6: {
        const Qset& y = need_qset(axiom, operand);
        require(disjoint_classes(x, y), "∀w (w ∉ x ∨ w ∉ y)");
        r.instance += " y=" + y.text();
        r.equation = "qc(x ∪ y) = qc(x) + qc(y)";
        const std::uint64_t u = union_of(x, y).size();
        r.lhs = num(u);
        r.rhs = num(qx) + " + " + num(y.size());
        r.pass = u == qx + y.size();
        break;
    }
    case Axiom::qc7: {
        require(qx < 64, "qc(x) < 64");
        r.equation = "qc(P(x)) = 2^qc(x)";
        const std::uint64_t p = power(x, power_bound).size();
        r.lhs = "qc(P(x)) = " + num(p);
        r.rhs = "2^" + num(qx);
        r.pass = p == (std::uint64_t{1} << qx);
        break;
    }
    case Axiom::star: {
        const Qset& y = need_qset(axiom, operand);
        require(subqset(y, x), "y ⊆ x");
        r.instance += " y=" + y.text();
        r.equation = "qc(x - y) = qc(x) - qc(y)";
        const std::uint64_t d = difference(x, y).size();
        r.lhs = num(d);
        r.rhs = num(qx) + " - " + num(y.size());
        r.pass = d + y.size() == qx;
        break;
    }
    }
    return r;
}

} // namespace qset
