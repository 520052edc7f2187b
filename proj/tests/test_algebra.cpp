#include <gtest/gtest.h>

#include <set>

#include "qset/algebra.hpp"
#include "qset/error.hpp"
#include "qset/generate.hpp"
#include "qset/labelled.hpp"
#include "support.hpp"

using namespace qset;
using qset::testing::m;
using qset::testing::q;
using qset::testing::s;

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

// Power qset by brute force: lift x into labelled individuals, take every
// classical subset, erase each one.
Qset power_by_labels(const Qset& x) {
    const auto lifted = labelled::lift(x);
    const auto& els = lifted.set.elements();
    std::vector<Entry> entries;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << els.size()); ++mask) {
        std::vector<labelled::Element> pick;
        for (std::size_t i = 0; i < els.size(); ++i) {
            if (mask & (std::uint64_t{1} << i))
                pick.push_back(els[i]);
        }
        entries.push_back({Shape::of(labelled::erase(labelled::LabelledQset(pick), lifted.universe)), 1});
    }
    return Qset::canonical(std::move(entries));
}

// subqset by brute force: does some species-preserving injection of x's
// lifted individuals into y's exist? For flat micro qsets this is a count
// comparison per species, which is what is checked here independently.
bool injects(const Qset& x, const Qset& y) {
    const auto lx = labelled::lift(x);
    const auto ly = labelled::lift(y);
    std::set<std::string> kinds;
    for (auto h : lx.universe.handles())
        kinds.insert(lx.universe.species(h).label());
    for (const auto& k : kinds) {
        if (lx.universe.of_species(Species(k)).size() > ly.universe.of_species(Species(k)).size())
            return false;
    }
    return true;
}

} // namespace

TEST(Empty, Basics) {
    EXPECT_EQ(empty().size(), 0u);
    EXPECT_FALSE(member(m("e"), empty()));
    EXPECT_EQ(identity(Shape::of(empty()), Shape::of(empty())), IdentityVerdict::identical);
}

TEST(MicroCollection, Basics) {
    EXPECT_EQ(micro_collection(Species("e"), 2), q("[e*2]"));
    EXPECT_EQ(classify(Shape::of(micro_collection(Species("b"), 5))).to_string(), "{Q, P}");
    EXPECT_EQ(code_of([] { micro_collection(Species("e"), 0); }), ErrorCode::invalid_argument);
}

TEST(Union, WorkedExamples) {
    EXPECT_EQ(union_of(q("[e*2]"), q("[e*3]")), q("[e*5]"));
    EXPECT_EQ(union_of(q("[e, @a]"), empty()), q("[e, @a]"));
    EXPECT_EQ(union_of(q("[@a]"), q("[@a]")).text(), "[@a]");
}

TEST(Union, CommutativeAndAssociative) {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        const Qset a = random_qset(rng), b = random_qset(rng), c = random_qset(rng);
        EXPECT_EQ(union_of(a, b), union_of(b, a));
        EXPECT_EQ(union_of(union_of(a, b), c), union_of(a, union_of(b, c)));
    }
}

TEST(Pair, WorkedExamples) {
    EXPECT_EQ(pair(m("e"), m("p")), q("[e, p]"));
    EXPECT_EQ(pair(m("e"), m("e")), q("[e*2]"));
    EXPECT_EQ(pair(Shape::macro("a"), Shape::macro("a")).text(), "[@a]");
}

TEST(Pair, TwoSameSpeciesIndividualsEraseToCountTwo) {
    const labelled::LabelledUniverse u({Species("e"), Species("e")});
    const auto hs = u.handles();
    const labelled::LabelledQset p({hs[0], hs[1]});
    EXPECT_EQ(labelled::erase(p, u), pair(m("e"), m("e")));
}

TEST(Separation, WorkedExamples) {
    const Qset z = q("[e*2, p*3]");
    EXPECT_EQ(separation(z, [](const Shape& x) { return x == Shape::micro("e"); }), q("[e*2]"));
    EXPECT_EQ(separation(z, [](const Shape&) { return false; }), empty());
    EXPECT_EQ(separation(q("[e*2, @a]"), is_ding), q("[@a]"));
}

TEST(ClassOf, WorkedExamples) {
    EXPECT_EQ(class_of(m("e"), q("[e*3, p]")), q("[e*3]"));
    EXPECT_EQ(class_of(m("p"), q("[e*3]")), empty());
}

TEST(StrongSingleton, WorkedExamples) {
    const Qset z = q("[e*3]");
    EXPECT_EQ(strong_singleton(m("e"), z), q("[e]"));
    EXPECT_EQ(strong_singleton(m("e"), z).size(), 1u);
    EXPECT_EQ(code_of([&] { strong_singleton(m("p"), z); }), ErrorCode::not_a_member);
    EXPECT_TRUE(indist(strong_singleton(m("e"), z), strong_singleton(m("e"), z)));
}

TEST(Choose, WorkedExamples) {
    const Qset z = q("[e*3]");
    EXPECT_EQ(choose(m("e"), 2, z), q("[e*2]"));
    EXPECT_EQ(choose(m("e"), 0, z), empty());
    EXPECT_EQ(code_of([&] { choose(m("e"), 4, z); }), ErrorCode::count_exceeded);
}

TEST(Subqset, WorkedExamples) {
    EXPECT_TRUE(subqset(q("[e*2]"), q("[e*3, p]")));
    EXPECT_FALSE(subqset(q("[e*3]"), q("[e*2]")));
    EXPECT_FALSE(injects(q("[e*3]"), q("[e*2]")));
    EXPECT_TRUE(subqset(empty(), q("[e]")));
    EXPECT_TRUE(subqset(empty(), empty()));
}

TEST(Subqset, AgreesWithInjectionOnPureCollections) {
    for (std::uint64_t a = 0; a <= 4; ++a) {
        for (std::uint64_t b = 0; b <= 4; ++b) {
            for (std::uint64_t c = 0; c <= 2; ++c) {
                for (std::uint64_t d = 0; d <= 2; ++d) {
                    std::vector<Entry> xs, ys;
                    if (a) xs.push_back({m("e"), a});
                    if (c) xs.push_back({m("p"), c});
                    if (b) ys.push_back({m("e"), b});
                    if (d) ys.push_back({m("p"), d});
                    const Qset x = Qset::canonical(xs), y = Qset::canonical(ys);
                    EXPECT_EQ(subqset(x, y), injects(x, y)) << x.text() << " " << y.text();
                }
            }
        }
    }
}

TEST(Difference, WorkedExamples) {
    EXPECT_EQ(difference(q("[e*3]"), q("[e]")), q("[e*2]"));
    EXPECT_EQ(difference(q("[e*3, @a]"), q("[e*3, @a]")), empty());
    EXPECT_EQ(code_of([] { difference(q("[e]"), q("[p]")); }), ErrorCode::not_a_subqset);
}

TEST(Difference, UnionInverse) {
    Rng rng(2);
    for (int i = 0; i < 300; ++i) {
        const Qset x = random_qset(rng);
        const Qset y = random_subqset(rng, x);
        EXPECT_TRUE(indist(union_of(difference(x, y), y), x));
    }
}

TEST(Separation, ResultsAreSubqsets) {
    Rng rng(4);
    for (int i = 0; i < 300; ++i) {
        const Qset z = random_qset(rng);
        EXPECT_TRUE(subqset(separation(z, is_ding), z));
        if (z.empty())
            continue;
        const Shape& x = z.entries()[uniform(rng, 0, z.class_count() - 1)].shape;
        EXPECT_TRUE(subqset(class_of(x, z), z));
        EXPECT_TRUE(subqset(choose(x, uniform(rng, 0, z.count_of(x)), z), z));
        EXPECT_TRUE(subqset(strong_singleton(x, z), z));
    }
}

TEST(Power, WorkedExamples) {
    const Qset p = power(q("[e*2]"));
    EXPECT_EQ(p.text(), "[[], [e*2], [e]*2]");
    EXPECT_EQ(p.count_of(s("[e]")), 2u);
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(power(q("[e*3]")).size(), 8u);
    EXPECT_EQ(power(empty()).text(), "[[]]");
    EXPECT_EQ(power(empty()).size(), 1u);
}

TEST(Power, MatchesLabelledSubsetEnumeration) {
    Rng rng(6);
    GeneratorOptions small;
    small.max_qc = 8;
    for (int i = 0; i < 150; ++i) {
        const Qset x = random_qset(rng, small);
        const Qset p = power(x);
        EXPECT_EQ(p, power_by_labels(x)) << x.text();
        EXPECT_EQ(p.size(), std::uint64_t{1} << x.size());
    }
}

TEST(Power, RespectsBound) {
    EXPECT_EQ(code_of([] { power(q("[e*17]")); }), ErrorCode::bound_exceeded);
    EXPECT_EQ(code_of([] { power(q("[e*5]"), 4); }), ErrorCode::bound_exceeded);
    EXPECT_EQ(power(q("[e*16]")).size(), 65536u);
}

TEST(WeakPair, WorkedExamples) {
    EXPECT_EQ(weak_pair(m("e"), m("p"), q("[e*2, p]")), q("[[e*2], [e*2, p]]"));
    EXPECT_EQ(weak_pair(m("e"), m("e"), q("[e*2]")), q("[[e*2]]"));
    EXPECT_EQ(code_of([] { weak_pair(m("e"), m("n"), q("[e*2, p]")); }), ErrorCode::not_a_member);
}

TEST(WeakPair, IndiscernibleComponentsGiveOneClass) {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const Qset z = random_qset(rng);
        if (z.empty())
            continue;
        const Shape& x = z.entries()[uniform(rng, 0, z.class_count() - 1)].shape;
        EXPECT_EQ(weak_pair(x, x, z).class_count(), 1u);
    }
}

TEST(CartesianProduct, WorkedExamples) {
    EXPECT_EQ(cartesian_product(empty(), q("[e]")), empty());
    const Qset xy = cartesian_product(q("[e]"), q("[p]"));
    EXPECT_EQ(xy.class_count(), 1u);
    EXPECT_EQ(xy, q("[wpair(e, p, [e, p])]"));
    EXPECT_EQ(cartesian_product(q("[e*2, n]"), q("[p, @a]")).class_count(), 4u);
}

TEST(QuasiFunction, WorkedExamples) {
    const Qset a = q("[e*2]");
    const Qset b = q("[b*2]");
    const Qset bp = q("[b*2, p]");
    const Qset ab = union_of(a, b);
    const Qset f = Qset::canonical({{Shape::of(weak_pair(m("e"), m("b"), ab)), 1}});
    EXPECT_TRUE(is_quasi_function(f, a, b));

    const Qset abp = union_of(a, bp);
    const Qset g = Qset::canonical(
        {{Shape::of(weak_pair(m("e"), m("b"), abp)), 1}, {Shape::of(weak_pair(m("e"), m("p"), abp)), 1}});
    EXPECT_FALSE(is_quasi_function(g, a, bp));

    const Qset a2 = q("[e*2, n]");
    const Qset a2b = union_of(a2, b);
    const Qset h = Qset::canonical({{Shape::of(weak_pair(m("e"), m("b"), a2b)), 1}});
    EXPECT_FALSE(is_quasi_function(h, a2, b));

    EXPECT_EQ(code_of([&] { is_quasi_function(q("[e]"), a, b); }), ErrorCode::malformed_relation);
}

TEST(QuasiFunction, CartesianProductIsAFunctionOnlyForSingleCodomainClass) {
    const Qset a = q("[e*2, n]");
    EXPECT_TRUE(is_quasi_function(cartesian_product(a, q("[p*3]")), a, q("[p*3]")));
    EXPECT_FALSE(is_quasi_function(cartesian_product(a, q("[p, b]")), a, q("[p, b]")));
}
