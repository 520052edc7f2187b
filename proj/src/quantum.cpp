#include "qset/quantum.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "qset/algebra.hpp"
#include "qset/error.hpp"
#include "qset/lang.hpp"

namespace qset::quantum {

std::string_view to_string(Statistics s) noexcept {
    switch (s) {
    case Statistics::maxwell_boltzmann: return "maxwell-boltzmann";
    case Statistics::bose_einstein: return "bose-einstein";
    case Statistics::fermi_dirac: return "fermi-dirac";
    }
    return "?";
}

std::optional<Statistics> parse_statistics(std::string_view name) noexcept {
    if (name == "mb" || name == "maxwell-boltzmann")
        return Statistics::maxwell_boltzmann;
    if (name == "be" || name == "bose-einstein")
        return Statistics::bose_einstein;
    if (name == "fd" || name == "fermi-dirac")
        return Statistics::fermi_dirac;
    return std::nullopt;
}

std::uint64_t OccupancyState::particles() const noexcept {
    std::uint64_t n = 0;
    for (auto c : counts)
        n += c;
    return n;
}

std::string OccupancyState::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i > 0)
            out += ',';
        out += std::to_string(counts[i]);
    }
    return out + ")";
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw Error(ErrorCode::overflow, "state count exceeds 64 bits");
    return a * b;
}

void decompose(std::uint64_t remaining, std::size_t index, OccupancyState& current,
               std::vector<OccupancyState>& out, std::uint64_t bound) {
    if (index + 1 == current.counts.size()) {
        current.counts[index] = remaining;
        if (out.size() == bound)
            throw Error(ErrorCode::bound_exceeded, "more than " + std::to_string(bound) + " decompositions");
        out.push_back(current);
        return;
    }
    for (std::uint64_t take = remaining + 1; take-- > 0;) {
        current.counts[index] = take;
        decompose(remaining - take, index + 1, current, out, bound);
    }
}

} // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    // Multiplicative form with gcd-free ordering: result after step i is C(n-r+i, i).
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw Error(ErrorCode::overflow, "binomial coefficient exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

std::vector<OccupancyState> weyl_decompositions(std::uint64_t n, std::uint64_t k, std::uint64_t bound) {
    if (k == 0)
        throw Error(ErrorCode::invalid_argument, "at least one mode is required");
    if (count_states(n, k, Statistics::bose_einstein) > bound) {
        throw Error(ErrorCode::bound_exceeded,
                    "C(n+k-1, k-1) exceeds the decomposition bound " + std::to_string(bound));
    }
    std::vector<OccupancyState> out;
    OccupancyState current{std::vector<std::uint64_t>(k, 0)};
    decompose(n, 0, current, out, bound);
    return out;
}

std::uint64_t count_states(std::uint64_t n, std::uint64_t k, Statistics s) {
    switch (s) {
    case Statistics::maxwell_boltzmann: {
        std::uint64_t r = 1;
        for (std::uint64_t i = 0; i < n; ++i)
            r = checked_mul(r, k);
        return r;
    }
    case Statistics::bose_einstein:
        if (k == 0)
            return n == 0 ? 1 : 0;
        return binomial(n + k - 1, n);
    case Statistics::fermi_dirac: return binomial(k, n);
    }
    return 0;
}

// ---------------------------------------------------------------- two-particle states

TwoParticleStates accessible_two_particle_states(Statistics s) {
    const double r = 1.0 / std::sqrt(2.0);
    const TwoParticleState aa{"AA", {1, 0, 0, 0}};
    const TwoParticleState bb{"BB", {0, 0, 0, 1}};
    const TwoParticleState ab{"A1B2", {0, 1, 0, 0}};
    const TwoParticleState ba{"A2B1", {0, 0, 1, 0}};
    const TwoParticleState sym{"(AB+BA)/√2", {0, r, r, 0}};
    const TwoParticleState anti{"(AB-BA)/√2", {0, r, -r, 0}};

    auto surplus = [](TwoParticleState st) {
        st.surplus = true;
        return st;
    };

    switch (s) {
    case Statistics::bose_einstein: return {{aa, bb, sym}, {surplus(ab), surplus(ba)}};
    case Statistics::fermi_dirac: return {{anti}, {surplus(ab), surplus(ba)}};
    case Statistics::maxwell_boltzmann: return {{aa, ab, ba, bb}, {}};
    }
    return {};
}

std::vector<double> swap_particles(const std::vector<double>& a) {
    if (a.size() != 4)
        throw Error(ErrorCode::invalid_argument, "two-particle amplitudes need 4 components");
    return {a[0], a[2], a[1], a[3]};
}

// ---------------------------------------------------------------- models

Interval parse_interval(std::string_view text) {
    auto parse_end = [&](std::string_view s) -> double {
        if (s == "inf" || s == "+inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        try {
            std::size_t used = 0;
            const double v = std::stod(std::string(s), &used);
            if (used == s.size())
                return v;
        } catch (const std::exception&) {
        }
        throw Error(ErrorCode::invalid_argument, "bad interval endpoint '" + std::string(s) + "'");
    };
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        const double v = parse_end(text);
        return {v, v};
    }
    Interval out{parse_end(text.substr(0, colon)), parse_end(text.substr(colon + 1))};
    if (out.lo > out.hi)
        throw Error(ErrorCode::invalid_argument, "empty interval '" + std::string(text) + "'");
    return out;
}

namespace {

Amplitude inner(const StateVector& a, const StateVector& b) {
    Amplitude acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

void invalid(const std::string& what) {
    throw Error(ErrorCode::invalid_model, what);
}

} // namespace

QuantumModel::QuantumModel(Qset systems, StateVector state, std::vector<Observable> observables)
    : systems_(std::move(systems)), state_(std::move(state)), observables_(std::move(observables)) {
    const std::size_t d = state_.size();
    if (d == 0)
        invalid("state vector is empty");
    if (std::abs(std::sqrt(std::real(inner(state_, state_))) - 1.0) > 1e-12)
        invalid("state vector is not normalised");

    for (std::size_t i = 0; i < observables_.size(); ++i) {
        for (std::size_t j = i + 1; j < observables_.size(); ++j) {
            if (observables_[i].name == observables_[j].name)
                invalid("duplicate observable '" + observables_[i].name + "'");
        }
    }
    for (const auto& obs : observables_) {
        std::vector<const StateVector*> vectors;
        for (std::size_t i = 0; i < obs.spectrum.size(); ++i) {
            for (std::size_t j = i + 1; j < obs.spectrum.size(); ++j) {
                if (obs.spectrum[i].eigenvalue == obs.spectrum[j].eigenvalue)
                    invalid("observable '" + obs.name + "' repeats an eigenvalue");
            }
            for (const auto& v : obs.spectrum[i].basis) {
                if (v.size() != d)
                    invalid("eigenvector of '" + obs.name + "' has the wrong dimension");
                vectors.push_back(&v);
            }
        }
        // Eigenvectors of a Hermitian operator: orthonormal across eigenspaces too.
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            for (std::size_t j = i; j < vectors.size(); ++j) {
                const Amplitude ip = inner(*vectors[i], *vectors[j]);
                const double expected = i == j ? 1.0 : 0.0;
                if (std::abs(ip - expected) > 1e-10)
                    invalid("eigenvectors of '" + obs.name + "' are not orthonormal");
            }
        }
        if (vectors.size() != d)
            invalid("eigenspaces of '" + obs.name + "' do not span the state space");
    }
}

const Observable& QuantumModel::observable(std::string_view name) const {
    for (const auto& o : observables_) {
        if (o.name == name)
            return o;
    }
    throw Error(ErrorCode::unknown_observable, "no observable named '" + std::string(name) + "'");
}

QuantumModel QuantumModel::bind(const std::string& parameter, const Shape& target) const {
    if (!member(target, systems_))
        throw Error(ErrorCode::not_in_domain, target.text() + " is not a class of the domain " + systems_.text());
    QuantumModel out = *this;
    Qset cls = class_of(target, systems_);
    const auto q = cls.size();
    out.bindings_.push_back({parameter, std::move(cls), q});
    return out;
}

QuantumModel QuantumModel::bind(const std::string& parameter, const Qset& target) const {
    if (!subqset(target, systems_))
        throw Error(ErrorCode::not_in_domain, target.text() + " is not a subqset of the domain " + systems_.text());
    QuantumModel out = *this;
    out.bindings_.push_back({parameter, target, target.size()});
    return out;
}

QuantumModel QuantumModel::from_json(std::string_view text) {
    using nlohmann::json;
    try {
        const json doc = json::parse(text);
        auto amplitude = [](const json& j) -> Amplitude {
            if (j.is_number())
                return {j.get<double>(), 0.0};
            if (!j.is_array() || j.size() != 2)
                invalid("amplitudes are [re, im] pairs");
            return {j.at(0).get<double>(), j.at(1).get<double>()};
        };
        auto vec = [&](const json& j) {
            StateVector v;
            for (const auto& a : j)
                v.push_back(amplitude(a));
            return v;
        };

        Qset systems;
        if (doc.contains("systems"))
            systems = lang::parse_qset(doc.at("systems").get<std::string>());
        StateVector state = vec(doc.at("state"));
        std::vector<Observable> observables;
        for (const auto& o : doc.at("observables")) {
            Observable obs{o.at("name").get<std::string>(), {}};
            for (const auto& es : o.at("spectrum")) {
                Eigenspace space{es.at("eigenvalue").get<double>(), {}};
                for (const auto& v : es.at("vectors"))
                    space.basis.push_back(vec(v));
                obs.spectrum.push_back(std::move(space));
            }
            observables.push_back(std::move(obs));
        }
        QuantumModel model(std::move(systems), std::move(state), std::move(observables));
        if (doc.contains("bindings")) {
            for (const auto& [param, target] : doc.at("bindings").items())
                model = model.bind(param, lang::parse_qset(target.get<std::string>()));
        }
        return model;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_model, std::string("malformed model file: ") + e.what());
    }
}

double probability(const QuantumModel& model, std::string_view observable, const std::vector<Interval>& delta) {
    const Observable& obs = model.observable(observable);
    double p = 0.0;
    for (const auto& space : obs.spectrum) {
        const bool selected =
            std::any_of(delta.begin(), delta.end(), [&](const Interval& i) { return i.contains(space.eigenvalue); });
        if (!selected)
            continue;
        // ‖P ψ‖² = Σ |⟨v_i, ψ⟩|² for an orthonormal basis {v_i} of the eigenspace.
        for (const auto& v : space.basis)
            p += std::norm(inner(v, model.state()));
    }
    return p;
}

} // namespace qset::quantum
