#include "qset/labelled.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qset/algebra.hpp"
#include "qset/error.hpp"

namespace qset::labelled {

namespace detail {
std::uint32_t token(InstanceHandle h) noexcept {
    return h.token_;
}
InstanceHandle make_handle(std::uint32_t token) noexcept {
    return InstanceHandle(token);
}
} // namespace detail

using detail::make_handle;
using detail::token;

std::string InstanceHandle::to_string() const {
    return "#" + std::to_string(token_);
}

// ---------------------------------------------------------------- universe

LabelledUniverse::LabelledUniverse(std::vector<Species> individuals, std::set<std::string> macro_atoms)
    : species_(std::move(individuals)), macros_(std::move(macro_atoms)) {}

std::vector<InstanceHandle> LabelledUniverse::handles() const {
    std::vector<InstanceHandle> out;
    out.reserve(species_.size());
    for (std::uint32_t i = 0; i < species_.size(); ++i)
        out.push_back(make_handle(i));
    return out;
}

std::vector<InstanceHandle> LabelledUniverse::of_species(const Species& s) const {
    std::vector<InstanceHandle> out;
    for (std::uint32_t i = 0; i < species_.size(); ++i) {
        if (species_[i] == s)
            out.push_back(make_handle(i));
    }
    return out;
}

bool LabelledUniverse::owns(InstanceHandle h) const noexcept {
    return token(h) < species_.size();
}

const Species& LabelledUniverse::species(InstanceHandle h) const {
    if (!owns(h))
        throw Error(ErrorCode::dangling_label, "handle " + h.to_string() + " does not belong to the universe");
    return species_[token(h)];
}

std::vector<Species> LabelledUniverse::species_list() const {
    std::vector<Species> out;
    for (const auto& s : species_) {
        if (std::find(out.begin(), out.end(), s) == out.end())
            out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- LabelledQset

bool operator==(const Nested& a, const Nested& b) {
    return *a.set == *b.set;
}

std::strong_ordering operator<=>(const Nested& a, const Nested& b) {
    return *a.set <=> *b.set;
}

LabelledQset::LabelledQset(std::vector<Element> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool LabelledQset::contains(const Element& e) const {
    return std::binary_search(elements_.begin(), elements_.end(), e);
}

std::strong_ordering operator<=>(const LabelledQset& a, const LabelledQset& b) {
    return std::lexicographical_compare_three_way(a.elements_.begin(), a.elements_.end(), b.elements_.begin(),
                                                  b.elements_.end());
}

Element nested(LabelledQset x) {
    return Nested{std::make_shared<const LabelledQset>(std::move(x))};
}

std::string to_string(const Element& e) {
    if (const auto* h = std::get_if<InstanceHandle>(&e))
        return h->to_string();
    if (const auto* m = std::get_if<MacroRef>(&e))
        return "@" + m->id;
    return to_string(*std::get<Nested>(e).set);
}

std::string to_string(const LabelledQset& x) {
    std::string out = "{";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0)
            out += ", ";
        out += to_string(x.elements()[i]);
    }
    return out + "}";
}

namespace {

void collect_individuals(const LabelledQset& x, std::set<InstanceHandle>& out) {
    for (const auto& e : x.elements()) {
        if (const auto* h = std::get_if<InstanceHandle>(&e))
            out.insert(*h);
        else if (const auto* n = std::get_if<Nested>(&e))
            collect_individuals(*n->set, out);
    }
}

} // namespace

std::set<InstanceHandle> individuals(const LabelledQset& x) {
    std::set<InstanceHandle> out;
    collect_individuals(x, out);
    return out;
}

// ---------------------------------------------------------------- erasure

Shape erase(const Element& e, const LabelledUniverse& u) {
    if (const auto* h = std::get_if<InstanceHandle>(&e))
        return Shape::micro(u.species(*h));
    if (const auto* m = std::get_if<MacroRef>(&e)) {
        if (!u.has_macro(m->id))
            throw Error(ErrorCode::dangling_label, "M-atom @" + m->id + " does not belong to the universe");
        return Shape::macro(m->id);
    }
    return Shape::of(erase(*std::get<Nested>(e).set, u));
}

Qset erase(const LabelledQset& x, const LabelledUniverse& u) {
    std::vector<Entry> entries;
    entries.reserve(x.size());
    for (const auto& e : x.elements())
        entries.push_back({erase(e, u), 1});
    return Qset::canonical(std::move(entries));
}

InstanceHandle UniverseBuilder::add(const Species& s) {
    species_.push_back(s);
    return make_handle(static_cast<std::uint32_t>(species_.size() - 1));
}

void UniverseBuilder::add_macro(const std::string& id) {
    macros_.insert(id);
}

LabelledQset UniverseBuilder::lift(const Qset& x) {
    std::vector<Element> out;
    for (const auto& entry : x.entries()) {
        const Shape& s = entry.shape;
        for (std::uint64_t i = 0; i < entry.count; ++i) {
            switch (s.kind()) {
            case Shape::Kind::micro: out.emplace_back(add(s.species())); break;
            case Shape::Kind::macro:
                add_macro(s.macro_id());
                out.emplace_back(MacroRef{s.macro_id()});
                break;
            case Shape::Kind::qset: out.push_back(nested(lift(s.body()))); break;
            }
        }
    }
    return LabelledQset(std::move(out));
}

LabelledUniverse UniverseBuilder::build() const {
    return LabelledUniverse(species_, macros_);
}

Lifted lift(const Qset& x) {
    UniverseBuilder b;
    LabelledQset set = b.lift(x);
    return {b.build(), std::move(set)};
}

// ---------------------------------------------------------------- label-level operations

bool contains(const LabelledQset& x, InstanceHandle h) {
    return x.contains(Element(h));
}

bool is_subset(const LabelledQset& x, const LabelledQset& y) {
    return std::includes(y.elements().begin(), y.elements().end(), x.elements().begin(), x.elements().end());
}

LabelledQset union_of(const LabelledQset& x, const LabelledQset& y) {
    std::vector<Element> out;
    std::set_union(x.elements().begin(), x.elements().end(), y.elements().begin(), y.elements().end(),
                   std::back_inserter(out));
    return LabelledQset(std::move(out));
}

LabelledQset intersection(const LabelledQset& x, const LabelledQset& y) {
    std::vector<Element> out;
    std::set_intersection(x.elements().begin(), x.elements().end(), y.elements().begin(), y.elements().end(),
                          std::back_inserter(out));
    return LabelledQset(std::move(out));
}

LabelledQset difference(const LabelledQset& x, const LabelledQset& y) {
    if (!is_subset(y, x))
        throw Error(ErrorCode::not_a_subqset, to_string(y) + " is not a subset of " + to_string(x));
    std::vector<Element> out;
    std::set_difference(x.elements().begin(), x.elements().end(), y.elements().begin(), y.elements().end(),
                        std::back_inserter(out));
    return LabelledQset(std::move(out));
}

LabelledQset separation(const LabelledQset& z, const std::function<bool(const Shape&)>& alpha,
                        const LabelledUniverse& u) {
    std::vector<Element> out;
    for (const auto& e : z.elements()) {
        if (alpha(erase(e, u)))
            out.push_back(e);
    }
    return LabelledQset(std::move(out));
}

LabelledQset class_of(const Element& x, const LabelledQset& z, const LabelledUniverse& u) {
    const Shape sx = erase(x, u);
    return separation(z, [&](const Shape& s) { return indist(s, sx); }, u);
}

LabelledQset choose(const Element& x, std::size_t k, const LabelledQset& z, const LabelledUniverse& u) {
    LabelledQset cls = class_of(x, z, u);
    if (k > cls.size()) {
        throw Error(ErrorCode::count_exceeded,
                    "cannot choose " + std::to_string(k) + " of " + to_string(x) + " from " + to_string(z));
    }
    // Elements are kept sorted, so the prefix holds the lowest labels.
    return LabelledQset(std::vector<Element>(cls.elements().begin(), cls.elements().begin() + k));
}

LabelledQset strong_singleton(const Element& x, const LabelledQset& z, const LabelledUniverse& u) {
    if (class_of(x, z, u).empty())
        throw Error(ErrorCode::not_a_member, to_string(x) + " has no indiscernible in " + to_string(z));
    return choose(x, 1, z, u);
}

LabelledQset power(const LabelledQset& x, std::size_t max_elements) {
    if (x.size() > max_elements) {
        throw Error(ErrorCode::bound_exceeded,
                    "power set of " + std::to_string(x.size()) + " elements exceeds the bound");
    }
    const std::size_t n = x.size();
    std::vector<Element> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<Element> sub;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i))
                sub.push_back(x.elements()[i]);
        }
        out.push_back(nested(LabelledQset(std::move(sub))));
    }
    return LabelledQset(std::move(out));
}

LabelledQset weak_pair(const Element& x, const Element& y, const LabelledQset& z, const LabelledUniverse& u) {
    LabelledQset first = class_of(x, z, u);
    LabelledQset ys = class_of(y, z, u);
    if (first.empty() || ys.empty())
        throw Error(ErrorCode::not_a_member, "weak pair components must belong to " + to_string(z));
    LabelledQset second = union_of(first, ys);
    // Collapses to a single element when both components coincide.
    return LabelledQset({nested(std::move(first)), nested(std::move(second))});
}

LabelledQset cartesian_product(const LabelledQset& z, const LabelledQset& w, const LabelledUniverse& u) {
    const LabelledQset context = union_of(z, w);
    std::vector<Element> out;
    for (const auto& x : z.elements()) {
        for (const auto& y : w.elements())
            out.push_back(nested(weak_pair(x, y, context, u)));
    }
    return LabelledQset(std::move(out));
}

// ---------------------------------------------------------------- permutations

Permutation Permutation::identity(const LabelledUniverse& u) {
    Permutation p;
    p.image_.resize(u.size());
    std::iota(p.image_.begin(), p.image_.end(), 0u);
    return p;
}

namespace {

std::vector<std::vector<std::uint32_t>> species_groups(const LabelledUniverse& u) {
    std::vector<std::vector<std::uint32_t>> groups;
    for (const auto& s : u.species_list()) {
        std::vector<std::uint32_t> g;
        for (auto h : u.of_species(s))
            g.push_back(token(h));
        groups.push_back(std::move(g));
    }
    return groups;
}

} // namespace

Permutation Permutation::random(const LabelledUniverse& u, Rng& rng) {
    Permutation p = identity(u);
    for (auto& g : species_groups(u)) {
        auto shuffled = g;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t i = 0; i < g.size(); ++i)
            p.image_[g[i]] = shuffled[i];
    }
    return p;
}

std::vector<Permutation> Permutation::all(const LabelledUniverse& u) {
    const auto groups = species_groups(u);
    std::vector<Permutation> out{identity(u)};
    for (const auto& g : groups) {
        std::vector<Permutation> next;
        auto images = g;
        std::sort(images.begin(), images.end());
        do {
            for (const auto& base : out) {
                Permutation p = base;
                for (std::size_t i = 0; i < g.size(); ++i)
                    p.image_[g[i]] = images[i];
                next.push_back(std::move(p));
            }
        } while (std::next_permutation(images.begin(), images.end()));
        out = std::move(next);
    }
    return out;
}

InstanceHandle Permutation::operator()(InstanceHandle h) const {
    const auto t = token(h);
    if (t >= image_.size())
        throw Error(ErrorCode::dangling_label, "handle " + h.to_string() + " outside the permuted universe");
    return make_handle(image_[t]);
}

Element Permutation::operator()(const Element& e) const {
    if (const auto* h = std::get_if<InstanceHandle>(&e))
        return (*this)(*h);
    if (const auto* n = std::get_if<Nested>(&e))
        return nested((*this)(*n->set));
    return e;
}

LabelledQset Permutation::operator()(const LabelledQset& x) const {
    std::vector<Element> out;
    out.reserve(x.size());
    for (const auto& e : x.elements())
        out.push_back((*this)(e));
    return LabelledQset(std::move(out));
}

bool Permutation::is_identity() const {
    for (std::uint32_t i = 0; i < image_.size(); ++i) {
        if (image_[i] != i)
            return false;
    }
    return true;
}

std::string Permutation::to_string() const {
    std::string out;
    for (std::uint32_t i = 0; i < image_.size(); ++i) {
        if (image_[i] == i)
            continue;
        if (!out.empty())
            out += ' ';
        out += "#" + std::to_string(i) + "->#" + std::to_string(image_[i]);
    }
    return out.empty() ? "id" : out;
}

bool relabelling_exists(const LabelledQset& x, const LabelledQset& y, const LabelledUniverse& u) {
    for (const auto& p : Permutation::all(u)) {
        if (p(x) == y)
            return true;
    }
    return false;
}

// ---------------------------------------------------------------- permutation tester

namespace {

const Element& single(const LabelledQset& s) {
    if (s.size() != 1)
        throw Error(ErrorCode::invalid_argument, "element argument must be a singleton, got " + to_string(s));
    return s.elements().front();
}

LabelledOperation make(std::string name, std::size_t arity,
                       std::function<LabelledQset(std::span<const LabelledQset>, const LabelledUniverse&)> f) {
    return LabelledOperation{std::move(name), arity, std::move(f)};
}

} // namespace

const std::vector<LabelledOperation>& registered_operations() {
    using Args = std::span<const LabelledQset>;
    using U = const LabelledUniverse&;
    static const std::vector<LabelledOperation> ops = {
        make("union", 2, [](Args a, U) { return union_of(a[0], a[1]); }),
        make("intersection", 2, [](Args a, U) { return intersection(a[0], a[1]); }),
        make("difference", 2, [](Args a, U) { return difference(a[0], intersection(a[0], a[1])); }),
        make("separation:first-species", 1,
             [](Args a, U u) {
                 const auto species = u.species_list();
                 if (species.empty())
                     return a[0];
                 const Species target = species.front();
                 return separation(a[0], [&](const Shape& s) { return s.is_micro() && s.species() == target; }, u);
             }),
        make("separation:D", 1, [](Args a, U u) { return separation(a[0], is_ding, u); }),
        make("class_of", 2, [](Args a, U u) { return class_of(single(a[1]), a[0], u); }),
        make("strong_singleton", 2, [](Args a, U u) { return strong_singleton(single(a[1]), a[0], u); }),
        make("choose", 2,
             [](Args a, U u) {
                 const Element& x = single(a[1]);
                 return choose(x, std::min<std::size_t>(2, class_of(x, a[0], u).size()), a[0], u);
             }),
        make("power", 1, [](Args a, U) { return power(a[0]); }),
        make("weak_pair", 3, [](Args a, U u) { return weak_pair(single(a[1]), single(a[2]), a[0], u); }),
        make("cartesian_product", 2, [](Args a, U u) { return cartesian_product(a[0], a[1], u); }),
    };
    return ops;
}

LabelledOperation leaking_operation() {
    return make("leak:even-labels", 1, [](std::span<const LabelledQset> a, const LabelledUniverse&) {
        std::vector<Element> out;
        for (const auto& e : a[0].elements()) {
            const auto* h = std::get_if<InstanceHandle>(&e);
            if (!h || token(*h) % 2 == 0)
                out.push_back(e);
        }
        return LabelledQset(std::move(out));
    });
}

std::string PermutationReport::line() const {
    std::string out = operation + ": " + std::to_string(trials) + " permutations, " + std::to_string(violations) +
                      " violations";
    if (witness) {
        out += " (first under " + witness->permutation + ": expected " + witness->expected.text() + ", got " +
               witness->observed.text() + ")";
    }
    return out + (pass() ? " pass" : " FAIL");
}

PermutationReport permutation_test(const LabelledOperation& op, std::span<const LabelledQset> args,
                                   const LabelledUniverse& u, std::size_t trials, Rng& rng) {
    if (args.size() != op.arity) {
        throw Error(ErrorCode::invalid_argument, op.name + " takes " + std::to_string(op.arity) + " arguments");
    }
    PermutationReport report{op.name, trials};
    const Qset expected = erase(op.apply(args, u), u);
    std::vector<LabelledQset> permuted(args.size());
    for (std::size_t t = 0; t < trials; ++t) {
        const Permutation p = Permutation::random(u, rng);
        for (std::size_t i = 0; i < args.size(); ++i)
            permuted[i] = p(args[i]);
        Qset observed = erase(op.apply(permuted, u), u);
        if (!(observed == expected)) {
            ++report.violations;
            if (!report.witness)
                report.witness = PermutationViolation{p.to_string(), expected, std::move(observed)};
        }
    }
    return report;
}

// ---------------------------------------------------------------- theorem checks

std::string TheoremReport::line() const {
    return "case " + std::to_string(proof_case) + ": " + lhs.text() + (pass ? " ≡ " : " ≢ ") + rhs.text() +
           (pass ? " pass" : " FAIL");
}

TheoremReport theorem_permutation_invariance(const LabelledQset& t, const LabelledQset& x, InstanceHandle z,
                                             InstanceHandle w, const LabelledUniverse& u) {
    auto hypothesis = [](bool ok, const char* what) {
        if (!ok)
            throw Error(ErrorCode::hypothesis_violated, std::string("hypothesis fails: ") + what);
    };
    hypothesis(is_subset(x, t), "x ⊆ t");
    hypothesis(contains(x, z), "z ∈ x");
    hypothesis(contains(t, w), "w ∈ t");
    hypothesis(u.species(w) == u.species(z), "w ≡ z");
    hypothesis(!(x == class_of(z, t, u)), "¬(x = [z]_t)");
    hypothesis(!contains(x, w), "w ∉ x");

    const LabelledQset zs = strong_singleton(z, t, u);
    const bool inside = is_subset(zs, x);

    TheoremReport r;
    LabelledQset ws;
    if (!inside) {
        // The singleton's only element lies outside x, so removing it leaves x
        // unchanged; pick ⟦w⟧_t with its element inside x (z itself).
        r.proof_case = 1;
        ws = LabelledQset({z});
    } else {
        r.proof_case = 2;
        ws = LabelledQset({w});
    }
    const LabelledQset removed = difference(x, intersection(x, zs));
    const LabelledQset result = union_of(removed, ws);
    r.lhs = erase(result, u);
    r.rhs = erase(x, u);
    r.pass = indist(r.lhs, r.rhs);
    return r;
}

bool NonSubstitutivityReport::pass() const noexcept {
    return indiscernible && a_in_singleton && !b_in_singleton && b_in_singleton_class && singletons_indiscernible;
}

std::string NonSubstitutivityReport::line() const {
    auto yn = [](bool b) { return b ? "true" : "false"; };
    return std::string("a=") + a.to_string() + " b=" + b.to_string() + ": a ≡ b " + yn(indiscernible) +
           ", a ∈ ⟦a⟧ " + yn(a_in_singleton) + ", b ∈ ⟦a⟧ " + yn(b_in_singleton) + ", erase(⟦a⟧) = " +
           singleton.text() + (pass() ? " pass" : " FAIL");
}

NonSubstitutivityReport non_substitutivity_witness(const LabelledUniverse& u) {
    for (const auto& s : u.species_list()) {
        const auto members = u.of_species(s);
        if (members.size() < 2)
            continue;
        const InstanceHandle a = members[0];
        const InstanceHandle b = members[1];
        const LabelledQset z(std::vector<Element>(members.begin(), members.end()));
        const LabelledQset sa = strong_singleton(a, z, u);
        const LabelledQset sb = LabelledQset({b});

        NonSubstitutivityReport r{a, b};
        r.indiscernible = indist(erase(Element(a), u), erase(Element(b), u));
        r.a_in_singleton = contains(sa, a);
        r.b_in_singleton = contains(sa, b);
        r.singleton = erase(sa, u);
        r.b_in_singleton_class = member(erase(Element(b), u), r.singleton);
        r.singletons_indiscernible = indist(r.singleton, erase(sb, u));
        return r;
    }
    throw Error(ErrorCode::insufficient_universe, "no species has two individuals");
}

// ---------------------------------------------------------------- generators

std::vector<LabelledUniverse> enumerate_universes(std::size_t n) {
    std::vector<LabelledUniverse> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    // Restricted growth strings: rgs[0] = 0 and rgs[i] ≤ 1 + max(rgs[0..i)).
    std::vector<std::size_t> rgs(n, 0);
    while (true) {
        std::vector<Species> species;
        for (auto c : rgs)
            species.emplace_back("s" + std::to_string(c));
        out.emplace_back(std::move(species));

        std::size_t i = n - 1;
        for (; i >= 1; --i) {
            const std::size_t prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
            if (rgs[i] <= prefix_max) {
                ++rgs[i];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                break;
            }
        }
        if (i == 0)
            break;
    }
    return out;
}

std::vector<LabelledQset> enumerate_subsets(const LabelledUniverse& u) {
    const auto hs = u.handles();
    std::vector<LabelledQset> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << hs.size()); ++mask) {
        std::vector<Element> els;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            if (mask & (std::uint64_t{1} << i))
                els.emplace_back(hs[i]);
        }
        out.emplace_back(std::move(els));
    }
    return out;
}

namespace {

LabelledQset build_random(Rng& rng, const LabelledUniverse& u, std::vector<InstanceHandle>& avail,
                          std::span<const InstanceHandle> pool, int depth, const LabelledGeneratorOptions& o) {
    std::vector<Element> els;
    if (depth > 0) {
        const auto n_nested = uniform(rng, 0, 2);
        for (std::uint64_t i = 0; i < n_nested; ++i)
            els.push_back(nested(build_random(rng, u, avail, pool, depth - 1, o)));
    }
    std::vector<InstanceHandle> kept;
    for (auto h : avail) {
        if (uniform(rng, 0, 1) == 1)
            els.emplace_back(h);
        else
            kept.push_back(h);
    }
    if (o.linear)
        avail = std::move(kept);
    else
        avail.assign(pool.begin(), pool.end());
    if (o.use_macros) {
        for (const auto& m : u.macro_atoms()) {
            if (uniform(rng, 0, 2) == 0)
                els.emplace_back(MacroRef{m});
        }
    }
    return LabelledQset(std::move(els));
}

} // namespace

LabelledQset random_labelled(Rng& rng, const LabelledUniverse& u, std::span<const InstanceHandle> pool,
                             const LabelledGeneratorOptions& options) {
    std::vector<InstanceHandle> avail(pool.begin(), pool.end());
    return build_random(rng, u, avail, pool, options.max_depth, options);
}

LabelledUniverse random_universe(Rng& rng, std::size_t n, std::size_t species) {
    std::vector<Species> kinds;
    for (std::size_t i = 0; i < n; ++i)
        kinds.emplace_back("s" + std::to_string(uniform(rng, 0, std::max<std::size_t>(species, 1) - 1)));
    return LabelledUniverse(std::move(kinds), {"a", "b"});
}

TheoremInstance random_theorem_instance(Rng& rng, std::size_t max_universe) {
    const std::size_t n = uniform(rng, 2, std::max<std::size_t>(max_universe, 2));
    LabelledUniverse u = random_universe(rng, n);

    std::vector<InstanceHandle> candidates;
    for (const auto& s : u.species_list()) {
        if (u.of_species(s).size() >= 2)
            candidates.push_back(u.of_species(s).front());
    }
    if (candidates.empty()) {
        // Force a repeated species.
        std::vector<Species> kinds;
        for (auto h : u.handles())
            kinds.push_back(u.species(h));
        kinds[1] = kinds[0];
        u = LabelledUniverse(std::move(kinds), u.macro_atoms());
        candidates.push_back(u.handles().front());
    }
    const Species kind = u.species(candidates[uniform(rng, 0, candidates.size() - 1)]);
    auto same = u.of_species(kind);
    std::shuffle(same.begin(), same.end(), rng);
    const InstanceHandle z = same[0];
    const InstanceHandle w = same[1];

    // t: z, w, and a random selection of everything else.
    std::vector<Element> t_elems{z, w};
    for (auto h : u.handles()) {
        if (h != z && h != w && uniform(rng, 0, 1) == 1)
            t_elems.emplace_back(h);
    }
    if (uniform(rng, 0, 1) == 1)
        t_elems.emplace_back(MacroRef{"a"});
    if (uniform(rng, 0, 2) == 0) {
        const auto hs = u.handles();
        t_elems.push_back(nested(random_labelled(rng, u, hs, {0, false, true})));
    }
    LabelledQset t(std::move(t_elems));

    std::vector<Element> x_elems{z};
    for (const auto& e : t.elements()) {
        if (e != Element(z) && e != Element(w) && uniform(rng, 0, 1) == 1)
            x_elems.push_back(e);
    }
    return {std::move(u), std::move(t), LabelledQset(std::move(x_elems)), z, w};
}

} // namespace qset::labelled
