#include <gtest/gtest.h>

#include "qset/algebra.hpp"
#include "qset/error.hpp"
#include "qset/generate.hpp"
#include "qset/labelled.hpp"
#include "support.hpp"

using namespace qset;
using namespace qset::labelled;
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

LabelledUniverse electrons(std::size_t n) {
    return LabelledUniverse(std::vector<Species>(n, Species("e")));
}

std::uint64_t factorial(std::uint64_t n) {
    return n <= 1 ? 1 : n * factorial(n - 1);
}

// Bell numbers: set partitions of n labels.
std::size_t bell(std::size_t n) {
    std::vector<std::vector<std::size_t>> t{{1}};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::size_t> row{t.back().back()};
        for (std::size_t j = 0; j < t.back().size(); ++j)
            row.push_back(row.back() + t.back()[j]);
        t.push_back(row);
    }
    return t[n][0];
}

} // namespace

TEST(Universe, HandlesAndSpecies) {
    const LabelledUniverse u({Species("e"), Species("p"), Species("e")}, {"a"});
    const auto hs = u.handles();
    ASSERT_EQ(hs.size(), 3u);
    EXPECT_EQ(u.species(hs[0]), Species("e"));
    EXPECT_EQ(u.of_species(Species("e")).size(), 2u);
    EXPECT_EQ(u.species_list().size(), 2u);
    EXPECT_TRUE(u.has_macro("a"));
    EXPECT_EQ(hs[1].to_string(), "#1");

    const LabelledUniverse small({Species("e")});
    EXPECT_EQ(code_of([&] { small.species(hs[2]); }), ErrorCode::dangling_label);
    EXPECT_EQ(code_of([&] { erase(LabelledQset({hs[2]}), small); }), ErrorCode::dangling_label);
    EXPECT_EQ(code_of([&] { erase(LabelledQset({MacroRef{"zz"}}), small); }), ErrorCode::dangling_label);
}

TEST(Erase, ForgetsLabels) {
    const LabelledUniverse u({Species("e"), Species("e"), Species("p")}, {"a"});
    const auto hs = u.handles();
    const LabelledQset x({hs[0], hs[1], hs[2], MacroRef{"a"}, nested(LabelledQset({hs[0]}))});
    EXPECT_EQ(erase(x, u).text(), "[@a, [e], e*2, p]");
}

TEST(Lift, RoundTripsThroughErase) {
    Rng rng(1);
    for (int i = 0; i < 300; ++i) {
        const Qset x = random_qset(rng);
        const Lifted l = lift(x);
        EXPECT_EQ(erase(l.set, l.universe), x);
    }
}

TEST(Operations, ChooseAndStrongSingletonPickLowestLabels) {
    const auto u = electrons(3);
    const auto hs = u.handles();
    const LabelledQset z({hs[0], hs[1], hs[2]});
    EXPECT_EQ(strong_singleton(hs[2], z, u), LabelledQset({hs[0]}));
    EXPECT_EQ(choose(hs[1], 2, z, u), LabelledQset({hs[0], hs[1]}));
    EXPECT_EQ(code_of([&] { choose(hs[1], 4, z, u); }), ErrorCode::count_exceeded);
}

TEST(Operations, PowerEnumeratesAllSubsets) {
    const auto u = electrons(3);
    const auto hs = u.handles();
    const LabelledQset x({hs[0], hs[1], hs[2]});
    const LabelledQset p = power(x);
    EXPECT_EQ(p.size(), 8u);
    EXPECT_EQ(erase(p, u), qset::power(q("[e*3]")));
    EXPECT_EQ(code_of([&] { power(x, 2); }), ErrorCode::bound_exceeded);
}

TEST(Operations, DifferenceNeedsSubset) {
    const auto u = electrons(2);
    const auto hs = u.handles();
    EXPECT_EQ(code_of([&] { difference(LabelledQset({hs[0]}), LabelledQset({hs[1]})); }), ErrorCode::not_a_subqset);
}

TEST(Operations, UnionHomomorphismNeedsDisjointLabels) {
    const auto u = electrons(2);
    const auto hs = u.handles();
    const LabelledQset x({hs[0]});
    // Overlap: label-level union has one individual, canonical union two.
    EXPECT_EQ(erase(union_of(x, x), u).size(), 1u);
    EXPECT_EQ(qset::union_of(erase(x, u), erase(x, u)).size(), 2u);
    const LabelledQset y({hs[1]});
    EXPECT_EQ(erase(union_of(x, y), u), qset::union_of(erase(x, u), erase(y, u)));
}

TEST(Permutation, AllEnumeratesSpeciesPreservingBijections) {
    const LabelledUniverse u({Species("e"), Species("e"), Species("e"), Species("p"), Species("p")});
    const auto all = Permutation::all(u);
    EXPECT_EQ(all.size(), factorial(3) * factorial(2));
    std::size_t identities = 0;
    for (const auto& p : all) {
        identities += p.is_identity() ? 1 : 0;
        for (auto h : u.handles())
            EXPECT_EQ(u.species(p(h)), u.species(h));
    }
    EXPECT_EQ(identities, 1u);
}

TEST(Permutation, ErasureIsInvariant) {
    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const LabelledUniverse u = random_universe(rng, 6);
        const auto hs = u.handles();
        const LabelledQset x = random_labelled(rng, u, hs, {2, false, true});
        const Permutation p = Permutation::random(u, rng);
        EXPECT_EQ(erase(p(x), u), erase(x, u));
    }
}

TEST(Relabelling, WeakExtensionalityOnLinearStructures) {
    Rng rng(3);
    std::size_t agree_true = 0;
    for (int i = 0; i < 300; ++i) {
        const LabelledUniverse u = random_universe(rng, uniform(rng, 1, 5), 2);
        const auto hs = u.handles();
        const LabelledQset x = random_labelled(rng, u, hs, {1, true, true});
        const LabelledQset y = uniform(rng, 0, 1) ? Permutation::random(u, rng)(x)
                                                  : random_labelled(rng, u, hs, {1, true, true});
        const bool quotient = indist(erase(x, u), erase(y, u));
        EXPECT_EQ(quotient, relabelling_exists(x, y, u)) << to_string(x) << " " << to_string(y);
        agree_true += quotient ? 1 : 0;
    }
    EXPECT_GT(agree_true, 100u);
}

TEST(Relabelling, SharedLabelsAreInvisibleToErasure) {
    // {{#0,#1},{#0}} and {{#0,#1},{#2}} erase alike, but no relabelling maps
    // one onto the other: reuse of #0 is structure that erasure forgets.
    const auto u = electrons(3);
    const auto hs = u.handles();
    const LabelledQset pairab({hs[0], hs[1]});
    const LabelledQset x({nested(pairab), nested(LabelledQset({hs[0]}))});
    const LabelledQset y({nested(pairab), nested(LabelledQset({hs[2]}))});
    EXPECT_EQ(erase(x, u), erase(y, u));
    EXPECT_FALSE(relabelling_exists(x, y, u));
}

TEST(PermutationTester, RegisteredOperationsAreInvariant) {
    Rng rng(4);
    const LabelledUniverse u({Species("e"), Species("e"), Species("e"), Species("p"), Species("p")}, {"a"});
    const auto hs = u.handles();
    const LabelledQset z({hs[0], hs[1], hs[3], MacroRef{"a"}});
    const LabelledQset w({hs[2], hs[4]});
    const LabelledQset elem({hs[0]});
    for (const auto& op : registered_operations()) {
        std::vector<LabelledQset> args{z};
        if (op.arity >= 2)
            args.push_back(op.name == "union" || op.name == "intersection" || op.name == "difference" ||
                                   op.name == "cartesian_product"
                               ? w
                               : elem);
        if (op.arity >= 3)
            args.push_back(LabelledQset({hs[3]}));
        const auto r = permutation_test(op, args, u, 100, rng);
        EXPECT_TRUE(r.pass()) << r.line();
        EXPECT_EQ(r.trials, 100u);
    }
}

TEST(PermutationTester, LeakingOperationIsCaught) {
    Rng rng(5);
    const LabelledUniverse u({Species("e"), Species("e")});
    const auto hs = u.handles();
    const std::vector<LabelledQset> args{LabelledQset({hs[0]})};
    const auto r = permutation_test(leaking_operation(), args, u, 50, rng);
    EXPECT_FALSE(r.pass());
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->permutation, "#0->#1 #1->#0");
}

TEST(Theorem, BothProofCases) {
    const auto u = electrons(4);
    const auto hs = u.handles();
    const LabelledQset t({hs[0], hs[1], hs[2], hs[3]});

    // ⟦z⟧_t picks #0, which is outside x.
    const LabelledQset x1({hs[1], hs[2]});
    const auto r1 = theorem_permutation_invariance(t, x1, hs[1], hs[3], u);
    EXPECT_EQ(r1.proof_case, 1);
    EXPECT_TRUE(r1.pass) << r1.line();

    // ⟦z⟧_t picks #0, which is inside x.
    const LabelledQset x2({hs[0], hs[1]});
    const auto r2 = theorem_permutation_invariance(t, x2, hs[0], hs[3], u);
    EXPECT_EQ(r2.proof_case, 2);
    EXPECT_TRUE(r2.pass) << r2.line();
    EXPECT_EQ(r2.lhs, q("[e*2]"));
}

TEST(Theorem, HypothesesAreChecked) {
    const LabelledUniverse u({Species("e"), Species("e"), Species("p")});
    const auto hs = u.handles();
    const LabelledQset t({hs[0], hs[1], hs[2]});
    auto message = [&](const LabelledQset& x, InstanceHandle z, InstanceHandle w) {
        try {
            theorem_permutation_invariance(t, x, z, w, u);
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::hypothesis_violated);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message(LabelledQset({hs[0]}), hs[0], hs[2]).find("w ≡ z"), std::string::npos);
    EXPECT_NE(message(LabelledQset({hs[0], hs[1]}), hs[0], hs[1]).find("¬(x = [z]_t)"), std::string::npos);
    EXPECT_NE(message(LabelledQset({hs[1]}), hs[0], hs[1]).find("z ∈ x"), std::string::npos);
}

TEST(Theorem, RandomInstancesSatisfyHypotheses) {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const auto inst = random_theorem_instance(rng, 8);
        const auto r = theorem_permutation_invariance(inst.t, inst.x, inst.z, inst.w, inst.universe);
        EXPECT_TRUE(r.pass) << r.line();
    }
}

TEST(NonSubstitutivity, WitnessOnTwoElectrons) {
    const auto u = electrons(2);
    const auto r = non_substitutivity_witness(u);
    EXPECT_TRUE(r.pass()) << r.line();
    EXPECT_TRUE(r.indiscernible);
    EXPECT_TRUE(r.a_in_singleton);
    EXPECT_FALSE(r.b_in_singleton);
    EXPECT_TRUE(r.b_in_singleton_class);
    EXPECT_EQ(r.singleton, q("[e]"));
}

TEST(NonSubstitutivity, NeedsTwoOfAKind) {
    const LabelledUniverse u({Species("e"), Species("p")});
    EXPECT_EQ(code_of([&] { non_substitutivity_witness(u); }), ErrorCode::insufficient_universe);
}

TEST(Enumerate, UniversesAreSetPartitions) {
    for (std::size_t n = 0; n <= 6; ++n)
        EXPECT_EQ(enumerate_universes(n).size(), bell(n)) << n;
    EXPECT_EQ(enumerate_subsets(electrons(4)).size(), 16u);
}
