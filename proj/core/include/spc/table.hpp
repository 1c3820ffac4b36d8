#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spc {

// Interned cell value. Two sentinels sit above every interned id.
using ValueId = std::uint32_t;
inline constexpr ValueId kNull = 0xFFFFFFFFu;
inline constexpr ValueId kSsymb = 0xFFFFFFFEu;

using Row = std::vector<ValueId>;

// Append-only token dictionary shared by a table and every table derived
// from it. Interning is thread-safe.
class Dictionary {
public:
    ValueId intern(std::string_view token);
    std::optional<ValueId> find(std::string_view token) const;

    // A value distinct from every token interned so far and every later
    // ingested token that does not spell the same name.
    ValueId fresh();

    // Display form: "NULL" for kNull and "ssymb" for the reserved symbol.
    std::string name(ValueId id) const;
    std::size_t size() const;

    // Orders by display name; sentinels sort last.
    bool less(ValueId a, ValueId b) const;

private:
    mutable std::mutex mu_;
    std::deque<std::string> names_;
    std::unordered_map<std::string, ValueId> ids_;
    std::size_t fresh_counter_ = 0;
};

class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const Schema&) const = default;

private:
    std::vector<std::string> names_;
};

// Sorted set of column positions.
class AttributeSet {
public:
    AttributeSet() = default;
    AttributeSet(std::initializer_list<std::size_t> positions);
    explicit AttributeSet(std::vector<std::size_t> positions);
    static AttributeSet all(std::size_t arity);

    bool contains(std::size_t pos) const;
    bool empty() const { return pos_.empty(); }
    std::size_t size() const { return pos_.size(); }
    const std::vector<std::size_t>& positions() const { return pos_; }
    auto begin() const { return pos_.begin(); }
    auto end() const { return pos_.end(); }
    std::size_t operator[](std::size_t i) const { return pos_[i]; }

    AttributeSet operator|(const AttributeSet& o) const;
    AttributeSet operator&(const AttributeSet& o) const;
    AttributeSet operator-(const AttributeSet& o) const;
    bool subset_of(const AttributeSet& o) const;
    bool operator==(const AttributeSet&) const = default;

private:
    std::vector<std::size_t> pos_;
};

// Bag of tuples over a schema. Rows are stored row-major.
class IncompleteTable {
public:
    IncompleteTable() = default;
    IncompleteTable(Schema schema, std::shared_ptr<Dictionary> dict, std::string null_token = "");

    // Builds a table from string cells; cells equal to null_token become NULL.
    static IncompleteTable from_strings(const std::vector<std::string>& names,
                                        const std::vector<std::vector<std::string>>& rows,
                                        std::string_view null_token = "",
                                        std::shared_ptr<Dictionary> dict = nullptr);

    std::size_t rows() const { return arity_ == 0 ? 0 : cells_.size() / arity_; }
    std::size_t arity() const { return arity_; }
    bool empty() const { return rows() == 0; }

    std::span<const ValueId> row(std::size_t i) const { return {cells_.data() + i * arity_, arity_}; }
    ValueId at(std::size_t i, std::size_t a) const { return cells_[i * arity_ + a]; }
    void set(std::size_t i, std::size_t a, ValueId v) { cells_[i * arity_ + a] = v; }
    void add_row(std::span<const ValueId> r);

    const Schema& schema() const { return schema_; }
    const std::shared_ptr<Dictionary>& dictionary() const { return dict_; }
    const std::string& null_token() const { return null_token_; }

    // Same schema and dictionary, no rows.
    IncompleteTable empty_like() const;
    IncompleteTable select(std::span<const std::size_t> keep) const;
    IncompleteTable without(std::span<const std::size_t> removed) const;
    IncompleteTable with_rows(const std::vector<Row>& extra) const;

    std::string cell_name(std::size_t i, std::size_t a) const { return dict_->name(at(i, a)); }
    ValueId value(std::string_view token) const { return dict_->intern(token); }

    bool operator==(const IncompleteTable& o) const { return schema_ == o.schema_ && cells_ == o.cells_; }

private:
    Schema schema_;
    std::shared_ptr<Dictionary> dict_;
    std::string null_token_;
    std::size_t arity_ = 0;
    std::vector<ValueId> cells_;
};

struct ActiveDomain {
    std::size_t attribute = 0;
    std::vector<ValueId> values;  // sorted by display name
    bool degenerate = false;

    bool contains(ValueId v) const;
    std::size_t size() const { return values.size(); }
};

ActiveDomain active_domain(const IncompleteTable& t, std::size_t attribute);
std::vector<ActiveDomain> active_domains(const IncompleteTable& t);

bool weakly_similar(std::span<const ValueId> t1, std::span<const ValueId> t2, const AttributeSet& x);
bool strongly_similar(std::span<const ValueId> t1, std::span<const ValueId> t2, const AttributeSet& x);
bool is_total(std::span<const ValueId> t, const AttributeSet& x);
bool is_total(const IncompleteTable& t);
IncompleteTable project(const IncompleteTable& t, const AttributeSet& x);

// Saturating product of active-domain sizes over the NULL cells of row i
// restricted to x; saturates at limit.
std::uint64_t extension_count(const IncompleteTable& t, std::size_t i, const AttributeSet& x,
                              const std::vector<ActiveDomain>& domains, std::uint64_t limit);

// Calls fn with every complete x-projection of row i in lexicographic order
// of domain positions (last NULL varies fastest); stops when fn returns false.
template <class Fn>
void for_each_extension(const IncompleteTable& t, std::size_t i, const AttributeSet& x,
                        const std::vector<ActiveDomain>& domains, Fn&& fn) {
    Row cur(x.size());
    std::vector<std::size_t> nulls;
    for (std::size_t j = 0; j < x.size(); ++j) {
        ValueId v = t.at(i, x[j]);
        if (v == kNull) {
            nulls.push_back(j);
            cur[j] = domains[x[j]].values[0];
        } else {
            cur[j] = v;
        }
    }
    std::vector<std::size_t> digit(nulls.size(), 0);
    while (true) {
        if (!fn(static_cast<const Row&>(cur))) return;
        std::size_t p = nulls.size();
        while (p > 0) {
            std::size_t j = nulls[p - 1];
            const auto& dom = domains[x[j]].values;
            if (++digit[p - 1] < dom.size()) {
                cur[j] = dom[digit[p - 1]];
                break;
            }
            digit[p - 1] = 0;
            cur[j] = dom[0];
            --p;
        }
        if (p == 0) return;
    }
}

std::string format_row(const IncompleteTable& t, std::span<const ValueId> r);

}  // namespace spc
