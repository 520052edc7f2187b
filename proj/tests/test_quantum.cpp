#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "models.hpp"
#include "qset/algebra.hpp"
#include "qset/error.hpp"
#include "qset/quantum.hpp"
#include "support.hpp"

using namespace qset;
using namespace qset::quantum;
using qset::testing::q;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::unsupported;
}

// Every function from n labelled particles to k modes, grouped by occupancy.
std::set<std::vector<std::uint64_t>> occupancies_by_brute_force(std::uint64_t n, std::uint64_t k,
                                                                std::uint64_t& assignments) {
    std::set<std::vector<std::uint64_t>> out;
    assignments = 0;
    std::vector<std::uint64_t> pick(n, 0);
    while (true) {
        ++assignments;
        std::vector<std::uint64_t> occ(k, 0);
        for (auto p : pick)
            ++occ[p];
        out.insert(occ);
        std::size_t i = 0;
        while (i < n && ++pick[i] == k)
            pick[i++] = 0;
        if (i == n)
            break;
    }
    return out;
}

QuantumModel spin_model(StateVector state) {
    return QuantumModel(q("[boson*3]"), std::move(state),
                        {{"Sz", {{1.0, {{1.0, 0.0}}}, {-1.0, {{0.0, 1.0}}}}}});
}

} // namespace

TEST(Counting, TwoParticlesTwoModes) {
    EXPECT_EQ(count_states(2, 2, Statistics::maxwell_boltzmann), 4u);
    EXPECT_EQ(count_states(2, 2, Statistics::bose_einstein), 3u);
    EXPECT_EQ(count_states(2, 2, Statistics::fermi_dirac), 1u);
}

TEST(Counting, AgreesWithBruteForce) {
    for (std::uint64_t n = 0; n <= 5; ++n) {
        for (std::uint64_t k = 1; k <= 4; ++k) {
            std::uint64_t assignments = 0;
            const auto occ = occupancies_by_brute_force(n, k, assignments);
            EXPECT_EQ(count_states(n, k, Statistics::maxwell_boltzmann), assignments);
            EXPECT_EQ(count_states(n, k, Statistics::bose_einstein), occ.size());
            std::size_t fermionic = 0;
            for (const auto& o : occ)
                fermionic += std::all_of(o.begin(), o.end(), [](auto c) { return c <= 1; }) ? 1 : 0;
            EXPECT_EQ(count_states(n, k, Statistics::fermi_dirac), fermionic);
        }
    }
}

TEST(Counting, Ordering) {
    for (std::uint64_t n = 1; n <= 8; ++n) {
        for (std::uint64_t k = 1; k <= 8; ++k) {
            const auto fd = count_states(n, k, Statistics::fermi_dirac);
            const auto be = count_states(n, k, Statistics::bose_einstein);
            const auto mb = count_states(n, k, Statistics::maxwell_boltzmann);
            EXPECT_LE(fd, be);
            EXPECT_LE(be, mb);
            if (n > k)
                EXPECT_EQ(fd, 0u);
        }
    }
}

TEST(Counting, Overflow) {
    EXPECT_EQ(code_of([] { count_states(64, 2, Statistics::maxwell_boltzmann); }), ErrorCode::overflow);
    EXPECT_EQ(count_states(63, 2, Statistics::maxwell_boltzmann), std::uint64_t{1} << 63);
}

TEST(Weyl, WorkedExamples) {
    const auto d = weyl_decompositions(3, 2);
    ASSERT_EQ(d.size(), 4u);
    EXPECT_EQ(d[0].to_string(), "(3,0)");
    EXPECT_EQ(d[1].to_string(), "(2,1)");
    EXPECT_EQ(d[2].to_string(), "(1,2)");
    EXPECT_EQ(d[3].to_string(), "(0,3)");
    EXPECT_EQ(weyl_decompositions(0, 4).size(), 1u);
    EXPECT_EQ(weyl_decompositions(0, 4)[0].to_string(), "(0,0,0,0)");
    EXPECT_EQ(weyl_decompositions(2, 2).size(), 3u);
    EXPECT_EQ(code_of([] { weyl_decompositions(2, 0); }), ErrorCode::invalid_argument);
    EXPECT_EQ(code_of([] { weyl_decompositions(8, 8, 100); }), ErrorCode::bound_exceeded);
}

TEST(Weyl, MatchesBruteForceAndClosedForm) {
    for (std::uint64_t n = 0; n <= 6; ++n) {
        for (std::uint64_t k = 1; k <= 4; ++k) {
            std::uint64_t unused = 0;
            const auto expected = occupancies_by_brute_force(n, k, unused);
            std::set<std::vector<std::uint64_t>> got;
            for (const auto& s : weyl_decompositions(n, k)) {
                EXPECT_EQ(s.particles(), n);
                got.insert(s.counts);
            }
            EXPECT_EQ(got, expected);
            EXPECT_EQ(weyl_decompositions(n, k).size(), binomial(n + k - 1, k - 1));
        }
    }
}

TEST(TwoParticles, AccessibleStates) {
    const auto be = accessible_two_particle_states(Statistics::bose_einstein);
    ASSERT_EQ(be.accessible.size(), 3u);
    EXPECT_EQ(be.accessible[0].name, "AA");
    EXPECT_EQ(be.accessible[1].name, "BB");
    EXPECT_EQ(be.accessible[2].name, "(AB+BA)/√2");
    ASSERT_EQ(be.excluded.size(), 2u);
    for (const auto& s : be.excluded)
        EXPECT_TRUE(s.surplus);

    const auto fd = accessible_two_particle_states(Statistics::fermi_dirac);
    ASSERT_EQ(fd.accessible.size(), 1u);
    EXPECT_EQ(fd.accessible[0].name, "(AB-BA)/√2");
    EXPECT_EQ(fd.excluded.size(), 2u);
}

TEST(TwoParticles, SwappingLabelsPreservesWeights) {
    for (auto stat : {Statistics::bose_einstein, Statistics::fermi_dirac}) {
        for (const auto& s : accessible_two_particle_states(stat).accessible) {
            const auto swapped = swap_particles(s.amplitudes);
            for (std::size_t i = 0; i < 4; ++i) {
                const double sign = stat == Statistics::bose_einstein ? 1.0 : -1.0;
                EXPECT_DOUBLE_EQ(swapped[i], sign * s.amplitudes[i]) << s.name;
                EXPECT_DOUBLE_EQ(swapped[i] * swapped[i], s.amplitudes[i] * s.amplitudes[i]);
            }
        }
        // The surplus product states are not mapped to themselves.
        for (const auto& s : accessible_two_particle_states(stat).excluded)
            EXPECT_NE(swap_particles(s.amplitudes), s.amplitudes);
    }
}

TEST(Born, WorkedCases) {
    const auto up = spin_model({{1.0, 0.0}, {0.0, 0.0}});
    EXPECT_NEAR(probability(up, "Sz", {{1.0, 1.0}}), 1.0, 1e-12);
    const double r = 1.0 / std::sqrt(2.0);
    const auto mixed = spin_model({{r, 0.0}, {r, 0.0}});
    EXPECT_NEAR(probability(mixed, "Sz", {{1.0, 1.0}}), 0.5, 1e-12);
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_NEAR(probability(mixed, "Sz", {{-inf, inf}}), 1.0, 1e-9);
    EXPECT_EQ(code_of([&] { probability(up, "Sx", {{0, 1}}); }), ErrorCode::unknown_observable);
}

TEST(Born, RandomModelsNormalizedAndAdditive) {
    Rng rng(1);
    const double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const auto model = qset::testing::random_model(rng, uniform(rng, 1, 6));
        EXPECT_NEAR(probability(model, "A", {{-inf, inf}}), 1.0, 1e-9);
        const double cut = static_cast<double>(uniform(rng, 0, 6)) - 3.0 + 0.2;
        const double lo = probability(model, "A", {{-inf, cut}});
        const double hi = probability(model, "A", {{cut + 0.1, inf}});
        EXPECT_NEAR(lo + hi, 1.0, 1e-9);
        EXPECT_GE(lo, -1e-12);
    }
}

TEST(Model, ValidationRejectsBadInput) {
    EXPECT_EQ(code_of([] { spin_model({{1.0, 0.0}, {1.0, 0.0}}); }), ErrorCode::invalid_model);
    EXPECT_EQ(code_of([] {
                  QuantumModel(Qset(), {{1, 0}, {0, 0}}, {{"A", {{1.0, {{1, 0}}}, {1.0, {{0, 1}}}}}});
              }),
              ErrorCode::invalid_model);
    EXPECT_EQ(code_of([] { QuantumModel(Qset(), {{1, 0}, {0, 0}}, {{"A", {{1.0, {{1, 0}}}}}}); }),
              ErrorCode::invalid_model);
    EXPECT_EQ(code_of([] {
                  QuantumModel(Qset(), {{1, 0}, {0, 0}}, {{"A", {{1.0, {{1, 0}}}, {2.0, {{1, 0}}}}}});
              }),
              ErrorCode::invalid_model);
}

TEST(Model, BindingsAddressClassesAndSubqsets) {
    const auto model = spin_model({{1.0, 0.0}, {0.0, 0.0}});
    const auto b1 = model.bind("a1", Shape::micro("boson"));
    ASSERT_EQ(b1.bindings().size(), 1u);
    EXPECT_EQ(b1.bindings()[0].quasi_cardinal, 3u);
    const auto b2 = b1.bind("a2", choose(Shape::micro("boson"), 2, model.systems()));
    EXPECT_EQ(b2.bindings()[1].quasi_cardinal, 2u);
    EXPECT_EQ(code_of([&] { model.bind("a3", Shape::micro("fermion")); }), ErrorCode::not_in_domain);
    EXPECT_EQ(code_of([&] { model.bind("a3", q("[boson*4]")); }), ErrorCode::not_in_domain);
}

TEST(Model, FromJson) {
    const auto model = QuantumModel::from_json(R"({
        "systems": "[boson*3]",
        "state": [[0.6, 0], [0, 0.8]],
        "observables": [{"name": "N", "spectrum": [
            {"eigenvalue": 0, "vectors": [[[1, 0], [0, 0]]]},
            {"eigenvalue": 1, "vectors": [[[0, 0], [1, 0]]]}]}],
        "bindings": {"a1": "[boson*2]"}
    })");
    EXPECT_EQ(model.systems(), q("[boson*3]"));
    EXPECT_EQ(model.bindings().at(0).quasi_cardinal, 2u);
    EXPECT_NEAR(probability(model, "N", {{1, 1}}), 0.64, 1e-12);
    EXPECT_EQ(code_of([] { QuantumModel::from_json("{"); }), ErrorCode::invalid_model);
}

TEST(Interval, Parsing) {
    const auto i = parse_interval("-1:2.5");
    EXPECT_EQ(i.lo, -1.0);
    EXPECT_EQ(i.hi, 2.5);
    EXPECT_TRUE(parse_interval("3").contains(3.0));
    EXPECT_TRUE(std::isinf(parse_interval("-inf:inf").lo));
    EXPECT_EQ(code_of([] { parse_interval("2:1"); }), ErrorCode::invalid_argument);
    EXPECT_EQ(code_of([] { parse_interval("x"); }), ErrorCode::invalid_argument);
}

TEST(Statistics, Names) {
    EXPECT_EQ(parse_statistics("be"), Statistics::bose_einstein);
    EXPECT_EQ(parse_statistics("fermi-dirac"), Statistics::fermi_dirac);
    EXPECT_FALSE(parse_statistics("xx").has_value());
}
