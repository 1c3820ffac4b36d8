#include "spc/table.hpp"

#include <algorithm>
#include <stdexcept>

#include "spc/errors.hpp"

namespace spc {

ValueId Dictionary::intern(std::string_view token) {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(token));
    if (it != ids_.end()) return it->second;
    if (names_.size() >= kSsymb) throw InvalidInput("dictionary is full");
    auto id = static_cast<ValueId>(names_.size());
    names_.emplace_back(token);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<ValueId> Dictionary::find(std::string_view token) const {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(token));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

ValueId Dictionary::fresh() {
    std::lock_guard lock(mu_);
    std::string name;
    do {
        name = "_new" + std::to_string(++fresh_counter_);
    } while (ids_.count(name) != 0);
    // Fresh values stay out of the lookup map, so a later ingested token
    // with the same spelling still receives its own id.
    auto id = static_cast<ValueId>(names_.size());
    names_.push_back(std::move(name));
    return id;
}

std::string Dictionary::name(ValueId id) const {
    if (id == kNull) return "NULL";
    if (id == kSsymb) return "ssymb";
    std::lock_guard lock(mu_);
    return names_.at(id);
}

std::size_t Dictionary::size() const {
    std::lock_guard lock(mu_);
    return names_.size();
}

bool Dictionary::less(ValueId a, ValueId b) const {
    if (a == b) return false;
    bool sa = a >= kSsymb, sb = b >= kSsymb;
    if (sa || sb) return sa != sb ? sb : a < b;
    std::lock_guard lock(mu_);
    const auto& na = names_[a];
    const auto& nb = names_[b];
    if (na != nb) return na < nb;
    return a < b;
}

Schema::Schema(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) throw InvalidInput("attribute name at position " + std::to_string(i) + " is empty");
        for (std::size_t j = 0; j < i; ++j)
            if (names_[i] == names_[j]) throw InvalidInput("duplicate attribute name '" + names_[i] + "'");
    }
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

AttributeSet::AttributeSet(std::initializer_list<std::size_t> positions) : AttributeSet(std::vector<std::size_t>(positions)) {}

AttributeSet::AttributeSet(std::vector<std::size_t> positions) : pos_(std::move(positions)) {
    std::sort(pos_.begin(), pos_.end());
    pos_.erase(std::unique(pos_.begin(), pos_.end()), pos_.end());
}

AttributeSet AttributeSet::all(std::size_t arity) {
    std::vector<std::size_t> p(arity);
    for (std::size_t i = 0; i < arity; ++i) p[i] = i;
    return AttributeSet(std::move(p));
}

bool AttributeSet::contains(std::size_t pos) const { return std::binary_search(pos_.begin(), pos_.end(), pos); }

AttributeSet AttributeSet::operator|(const AttributeSet& o) const {
    std::vector<std::size_t> r;
    std::set_union(pos_.begin(), pos_.end(), o.pos_.begin(), o.pos_.end(), std::back_inserter(r));
    return AttributeSet(std::move(r));
}

AttributeSet AttributeSet::operator&(const AttributeSet& o) const {
    std::vector<std::size_t> r;
    std::set_intersection(pos_.begin(), pos_.end(), o.pos_.begin(), o.pos_.end(), std::back_inserter(r));
    return AttributeSet(std::move(r));
}

AttributeSet AttributeSet::operator-(const AttributeSet& o) const {
    std::vector<std::size_t> r;
    std::set_difference(pos_.begin(), pos_.end(), o.pos_.begin(), o.pos_.end(), std::back_inserter(r));
    return AttributeSet(std::move(r));
}

bool AttributeSet::subset_of(const AttributeSet& o) const {
    return std::includes(o.pos_.begin(), o.pos_.end(), pos_.begin(), pos_.end());
}

IncompleteTable::IncompleteTable(Schema schema, std::shared_ptr<Dictionary> dict, std::string null_token)
    : schema_(std::move(schema)),
      dict_(dict ? std::move(dict) : std::make_shared<Dictionary>()),
      null_token_(std::move(null_token)),
      arity_(schema_.size()) {}

IncompleteTable IncompleteTable::from_strings(const std::vector<std::string>& names,
                                              const std::vector<std::vector<std::string>>& rows,
                                              std::string_view null_token, std::shared_ptr<Dictionary> dict) {
    IncompleteTable t(Schema(names), std::move(dict), std::string(null_token));
    Row r(names.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != names.size())
            throw InvalidInput("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                               " cells, expected " + std::to_string(names.size()));
        for (std::size_t a = 0; a < names.size(); ++a)
            r[a] = rows[i][a] == null_token ? kNull : t.dict_->intern(rows[i][a]);
        t.add_row(r);
    }
    return t;
}

void IncompleteTable::add_row(std::span<const ValueId> r) {
    if (r.size() != arity_) throw InvalidInput("row arity mismatch");
    cells_.insert(cells_.end(), r.begin(), r.end());
}

IncompleteTable IncompleteTable::empty_like() const { return IncompleteTable(schema_, dict_, null_token_); }

IncompleteTable IncompleteTable::select(std::span<const std::size_t> keep) const {
    IncompleteTable t = empty_like();
    t.cells_.reserve(keep.size() * arity_);
    for (std::size_t i : keep) t.add_row(row(i));
    return t;
}

IncompleteTable IncompleteTable::without(std::span<const std::size_t> removed) const {
    std::vector<bool> drop(rows(), false);
    for (std::size_t i : removed) drop.at(i) = true;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rows(); ++i)
        if (!drop[i]) keep.push_back(i);
    return select(keep);
}

IncompleteTable IncompleteTable::with_rows(const std::vector<Row>& extra) const {
    IncompleteTable t = *this;
    for (const auto& r : extra) t.add_row(r);
    return t;
}

bool ActiveDomain::contains(ValueId v) const { return std::find(values.begin(), values.end(), v) != values.end(); }

ActiveDomain active_domain(const IncompleteTable& t, std::size_t attribute) {
    if (attribute >= t.arity())
        throw InvalidInput("attribute index " + std::to_string(attribute) + " out of range for arity " +
                           std::to_string(t.arity()));
    ActiveDomain d;
    d.attribute = attribute;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        ValueId v = t.at(i, attribute);
        if (v != kNull) d.values.push_back(v);
    }
    std::sort(d.values.begin(), d.values.end());
    d.values.erase(std::unique(d.values.begin(), d.values.end()), d.values.end());
    const auto& dict = *t.dictionary();
    std::sort(d.values.begin(), d.values.end(), [&](ValueId a, ValueId b) { return dict.less(a, b); });
    if (d.values.empty()) {
        d.values.push_back(kSsymb);
        d.degenerate = true;
    }
    return d;
}

std::vector<ActiveDomain> active_domains(const IncompleteTable& t) {
    std::vector<ActiveDomain> ds;
    ds.reserve(t.arity());
    for (std::size_t a = 0; a < t.arity(); ++a) ds.push_back(active_domain(t, a));
    return ds;
}

bool weakly_similar(std::span<const ValueId> t1, std::span<const ValueId> t2, const AttributeSet& x) {
    for (std::size_t a : x)
        if (t1[a] != kNull && t2[a] != kNull && t1[a] != t2[a]) return false;
    return true;
}

bool strongly_similar(std::span<const ValueId> t1, std::span<const ValueId> t2, const AttributeSet& x) {
    for (std::size_t a : x)
        if (t1[a] == kNull || t1[a] != t2[a]) return false;
    return true;
}

bool is_total(std::span<const ValueId> t, const AttributeSet& x) {
    for (std::size_t a : x)
        if (t[a] == kNull) return false;
    return true;
}

bool is_total(const IncompleteTable& t) {
    auto all = AttributeSet::all(t.arity());
    for (std::size_t i = 0; i < t.rows(); ++i)
        if (!is_total(t.row(i), all)) return false;
    return true;
}

IncompleteTable project(const IncompleteTable& t, const AttributeSet& x) {
    std::vector<std::string> names;
    for (std::size_t a : x) {
        if (a >= t.arity()) throw InvalidInput("projection position out of range");
        names.push_back(t.schema().name(a));
    }
    IncompleteTable p(Schema(names), t.dictionary(), t.null_token());
    Row r(x.size());
    for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t k = 0; k < x.size(); ++k) r[k] = t.at(i, x[k]);
        p.add_row(r);
    }
    return p;
}

std::uint64_t extension_count(const IncompleteTable& t, std::size_t i, const AttributeSet& x,
                              const std::vector<ActiveDomain>& domains, std::uint64_t limit) {
    std::uint64_t n = 1;
    for (std::size_t a : x) {
        if (t.at(i, a) != kNull) continue;
        n *= domains[a].size();
        if (n >= limit) return limit;
    }
    return n;
}

std::string format_row(const IncompleteTable& t, std::span<const ValueId> r) {
    std::string s = "(";
    for (std::size_t a = 0; a < r.size(); ++a) {
        if (a) s += ",";
        s += t.dictionary()->name(r[a]);
    }
    return s + ")";
}

}  // namespace spc
