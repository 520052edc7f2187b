#include "qset/kernel.hpp"

#include <algorithm>

#include "qset/error.hpp"

namespace qset {

bool is_identifier(std::string_view text) noexcept {
    if (text.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(text.front()))
        return false;
    return std::all_of(text.begin() + 1, text.end(), [&](char c) { return alpha(c) || digit(c); });
}

Species::Species(std::string label) : label_(std::move(label)) {
    if (!is_identifier(label_))
        throw Error(ErrorCode::invalid_argument, "invalid species label '" + label_ + "'");
}

// ---------------------------------------------------------------- Shape

Shape::Shape(Kind kind, std::string text, std::shared_ptr<const Qset> body)
    : kind_(kind), text_(std::move(text)), body_(std::move(body)) {}

Shape Shape::micro(Species species) {
    return Shape(Kind::micro, species.label(), nullptr);
}

Shape Shape::macro(std::string id) {
    if (!is_identifier(id))
        throw Error(ErrorCode::invalid_argument, "invalid M-atom id '" + id + "'");
    return Shape(Kind::macro, "@" + id, nullptr);
}

Shape Shape::of(Qset body) {
    return Shape(Kind::qset, std::string(), std::make_shared<const Qset>(std::move(body)));
}

Species Shape::species() const {
    if (kind_ != Kind::micro)
        throw Error(ErrorCode::type_mismatch, "shape " + text() + " is not an m-atom");
    return Species(text_);
}

std::string Shape::macro_id() const {
    if (kind_ != Kind::macro)
        throw Error(ErrorCode::type_mismatch, "shape " + text() + " is not an M-atom");
    return text_.substr(1);
}

const Qset& Shape::body() const {
    if (kind_ != Kind::qset)
        throw Error(ErrorCode::type_mismatch, "shape " + text() + " is not a qset");
    return *body_;
}

const std::string& Shape::text() const noexcept {
    return kind_ == Kind::qset ? body_->text() : text_;
}

bool Shape::has_micro() const noexcept {
    switch (kind_) {
    case Kind::micro: return true;
    case Kind::macro: return false;
    case Kind::qset: return body_->has_micro();
    }
    return false;
}

// ---------------------------------------------------------------- Qset

Qset::Qset() : text_("[]") {}

Qset::Qset(std::vector<Entry> sorted_merged) : entries_(std::move(sorted_merged)) {
    text_ = "[";
    bool first = true;
    for (const auto& e : entries_) {
        if (!first)
            text_ += ", ";
        first = false;
        text_ += e.shape.text();
        if (e.count > 1) {
            text_ += '*';
            text_ += std::to_string(e.count);
        }
        size_ += e.count;
        has_micro_ = has_micro_ || e.shape.has_micro();
    }
    text_ += ']';
}

Qset Qset::canonical(std::vector<Entry> entries) {
    for (const auto& e : entries) {
        if (e.count == 0)
            throw Error(ErrorCode::invalid_argument, "class " + e.shape.text() + " has zero multiplicity");
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.shape.text() < b.shape.text(); });

    std::vector<Entry> merged;
    merged.reserve(entries.size());
    for (auto& e : entries) {
        if (!merged.empty() && merged.back().shape == e.shape)
            merged.back().count += e.count;
        else
            merged.push_back(std::move(e));
    }
    for (auto& e : merged) {
        if (is_ding(e.shape))
            e.count = 1;
    }
    return Qset(std::move(merged));
}

std::uint64_t Qset::count_of(const Shape& x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x.text(),
                               [](const Entry& e, const std::string& t) { return e.shape.text() < t; });
    if (it != entries_.end() && it->shape == x)
        return it->count;
    return 0;
}

// ---------------------------------------------------------------- predicates

std::string_view to_string(IdentityVerdict verdict) noexcept {
    switch (verdict) {
    case IdentityVerdict::identical: return "identical";
    case IdentityVerdict::distinct: return "distinct";
    case IdentityVerdict::undefined: return "undefined";
    }
    return "undefined";
}

namespace {

struct PredicateName {
    Predicate predicate;
    std::string_view name;
};

constexpr PredicateName predicate_names[] = {
    {Predicate::m, "m"}, {Predicate::M, "M"}, {Predicate::Z, "Z"}, {Predicate::Q, "Q"},
    {Predicate::P, "P"}, {Predicate::D, "D"}, {Predicate::E, "E"},
};

} // namespace

std::string PredicateSet::to_string() const {
    std::string out = "{";
    for (const auto& [p, name] : predicate_names) {
        if (!contains(p))
            continue;
        if (out.size() > 1)
            out += ", ";
        out += name;
    }
    return out + "}";
}

bool parse_predicate(std::string_view name, Predicate& out) noexcept {
    for (const auto& [p, n] : predicate_names) {
        if (n == name) {
            out = p;
            return true;
        }
    }
    return false;
}

bool is_ding(const Shape& x) noexcept {
    return x.is_macro() || (x.is_qset() && !x.has_micro());
}

PredicateSet classify(const Shape& x) {
    PredicateSet out;
    switch (x.kind()) {
    case Shape::Kind::micro:
        out.insert(Predicate::m);
        return out;
    case Shape::Kind::macro:
        out.insert(Predicate::M);
        out.insert(Predicate::D);
        return out;
    case Shape::Kind::qset: break;
    }

    const Qset& body = x.body();
    out.insert(Predicate::Q);
    if (!body.has_micro()) {
        out.insert(Predicate::Z);
        out.insert(Predicate::D);
    }
    // Pure: every element an m-atom and all of them pairwise indiscernible,
    // i.e. at most one class and that class micro.
    if (body.class_count() == 0 || (body.class_count() == 1 && body.entries()[0].shape.is_micro()))
        out.insert(Predicate::P);
    if (std::all_of(body.entries().begin(), body.entries().end(),
                    [](const Entry& e) { return e.shape.is_qset(); }))
        out.insert(Predicate::E);
    return out;
}

bool indist(const Qset& x, const Qset& y) {
    // Weak extensionality: the ≡-quotients must match class for class with
    // equal quasi-cardinals. Canonical order aligns matching classes.
    if (x.class_count() != y.class_count())
        return false;
    for (std::size_t i = 0; i < x.class_count(); ++i) {
        const Entry& a = x.entries()[i];
        const Entry& b = y.entries()[i];
        if (a.count != b.count || !indist(a.shape, b.shape))
            return false;
    }
    return true;
}

bool indist(const Shape& x, const Shape& y) {
    if (x.kind() != y.kind())
        return false;
    switch (x.kind()) {
    case Shape::Kind::micro:
    case Shape::Kind::macro: return x.text() == y.text();
    case Shape::Kind::qset: return indist(x.body(), y.body());
    }
    return false;
}

IdentityVerdict identity(const Shape& x, const Shape& y) {
    if (!is_ding(x) || !is_ding(y))
        return IdentityVerdict::undefined;
    return indist(x, y) ? IdentityVerdict::identical : IdentityVerdict::distinct;
}

bool member(const Shape& x, const Qset& z) {
    return z.count_of(x) > 0;
}

} // namespace qset
