#include "qset/algebra.hpp"

#include <map>
#include <optional>
#include <utility>

#include "qset/error.hpp"

namespace qset {

namespace {

// Binomial coefficient; only ever called with n ≤ the power bound, where the
// running product stays well inside 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

void require_member(const Shape& x, const Qset& z) {
    if (!member(x, z))
        throw Error(ErrorCode::not_a_member, x.text() + " is not a member of " + z.text());
}

} // namespace

Qset empty() {
    return Qset();
}

Qset micro_collection(const Species& s, std::uint64_t n) {
    if (n == 0)
        throw Error(ErrorCode::invalid_argument, "micro_collection needs at least one element; use empty()");
    return Qset::canonical({{Shape::micro(s), n}});
}

Qset union_of(const Qset& x, const Qset& y) {
    std::vector<Entry> all(x.entries());
    all.insert(all.end(), y.entries().begin(), y.entries().end());
    return Qset::canonical(std::move(all));
}

Qset intersection(const Qset& x, const Qset& y) {
    std::vector<Entry> out;
    for (const auto& e : x.entries()) {
        if (auto c = y.count_of(e.shape); c > 0)
            out.push_back({e.shape, std::min(c, e.count)});
    }
    return Qset::canonical(std::move(out));
}

Qset pair(const Shape& x, const Shape& y) {
    return Qset::canonical({{x, 1}, {y, 1}});
}

Qset separation(const Qset& z, const ClassPredicate& alpha) {
    std::vector<Entry> out;
    for (const auto& e : z.entries()) {
        if (alpha(e.shape))
            out.push_back(e);
    }
    return Qset::canonical(std::move(out));
}

Qset class_of(const Shape& x, const Qset& z) {
    return separation(z, [&x](const Shape& s) { return indist(s, x); });
}

Qset strong_singleton(const Shape& x, const Qset& z) {
    require_member(x, z);
    return choose(x, 1, z);
}

Qset choose(const Shape& x, std::uint64_t k, const Qset& z) {
    const std::uint64_t available = z.count_of(x);
    if (k > available) {
        throw Error(ErrorCode::count_exceeded, "cannot choose " + std::to_string(k) + " of " + x.text() +
                                                   " from " + z.text() + " (holds " + std::to_string(available) + ")");
    }
    if (k == 0)
        return empty();
    return Qset::canonical({{x, k}});
}

bool subqset(const Qset& x, const Qset& y) {
    for (const auto& e : x.entries()) {
        if (y.count_of(e.shape) < e.count)
            return false;
    }
    return true;
}

Qset difference(const Qset& x, const Qset& y) {
    if (!subqset(y, x))
        throw Error(ErrorCode::not_a_subqset, y.text() + " is not a subqset of " + x.text());
    std::vector<Entry> out;
    for (const auto& e : x.entries()) {
        const std::uint64_t left = e.count - y.count_of(e.shape);
        if (left > 0)
            out.push_back({e.shape, left});
    }
    return Qset::canonical(std::move(out));
}

Qset power(const Qset& x, std::uint64_t max_qc) {
    if (x.size() > max_qc) {
        throw Error(ErrorCode::bound_exceeded, "power qset of a qset with quasi-cardinal " + std::to_string(x.size()) +
                                                   " exceeds the bound " + std::to_string(max_qc));
    }
    const auto& classes = x.entries();
    std::vector<std::uint64_t> chosen(classes.size(), 0);
    std::vector<Entry> out;

    // Odometer over per-class count vectors 0 ≤ k_i ≤ n_i.
    while (true) {
        std::vector<Entry> sub;
        std::uint64_t multiplicity = 1;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            multiplicity *= binomial(classes[i].count, chosen[i]);
            if (chosen[i] > 0)
                sub.push_back({classes[i].shape, chosen[i]});
        }
        out.push_back({Shape::of(Qset::canonical(std::move(sub))), multiplicity});

        std::size_t i = 0;
        for (; i < classes.size(); ++i) {
            if (++chosen[i] <= classes[i].count)
                break;
            chosen[i] = 0;
        }
        if (i == classes.size())
            break;
    }
    return Qset::canonical(std::move(out));
}

Qset weak_pair(const Shape& x, const Shape& y, const Qset& z) {
    require_member(x, z);
    require_member(y, z);
    Qset first = class_of(x, z);
    Qset second = separation(z, [&](const Shape& s) { return indist(s, x) || indist(s, y); });
    if (indist(first, second))
        return Qset::canonical({{Shape::of(std::move(first)), 1}});
    return Qset::canonical({{Shape::of(std::move(first)), 1}, {Shape::of(std::move(second)), 1}});
}

Qset cartesian_product(const Qset& z, const Qset& w) {
    const Qset context = union_of(z, w);
    std::vector<Entry> out;
    for (const auto& u : z.entries()) {
        for (const auto& v : w.entries())
            out.push_back({Shape::of(weak_pair(u.shape, v.shape, context)), 1});
    }
    return Qset::canonical(std::move(out));
}

bool is_quasi_function(const Qset& f, const Qset& a, const Qset& b) {
    const Qset context = union_of(a, b);

    // Every admissible weak pair, keyed by canonical text.
    std::map<std::string, std::pair<Shape, Shape>> admissible;
    for (const auto& u : a.entries()) {
        for (const auto& v : b.entries()) {
            Qset wp = weak_pair(u.shape, v.shape, context);
            admissible.try_emplace(wp.text(), u.shape, v.shape);
        }
    }

    std::map<std::string, Shape> image;  // first component -> second component
    for (const auto& e : f.entries()) {
        auto it = admissible.find(e.shape.text());
        if (it == admissible.end()) {
            throw Error(ErrorCode::malformed_relation,
                        e.shape.text() + " is not a weak ordered pair over " + context.text());
        }
        const auto& [u, v] = it->second;
        auto [slot, inserted] = image.try_emplace(u.text(), v);
        if (!inserted && !indist(slot->second, v))
            return false;
    }
    for (const auto& u : a.entries()) {
        if (!image.contains(u.shape.text()))
            return false;
    }
    return true;
}

} // namespace qset
