#pragma once

#include <vector>

#include "spc/constraint.hpp"
#include "spc/table.hpp"

namespace spc {

// Candidate addition rows. Each call mints new values in t's dictionary.
Row replicated_fresh_row(const IncompleteTable& t);
Row x_fresh_row(const IncompleteTable& t, const AttributeSet& x);
Row null_row(const IncompleteTable& t);

std::vector<Row> replicated_fresh_rows(const IncompleteTable& t, std::size_t k);
std::vector<Row> x_fresh_rows(const IncompleteTable& t, const AttributeSet& x, std::size_t k);

// Keys: K-total rows pairwise distinct on K. FDs: X-total rows that agree on
// X carry no conflicting non-NULL value on Y\X. Other kinds: always true.
bool total_part_holds(const IncompleteTable& t, const Constraint& c);

// Rows with a NULL somewhere in x.
std::size_t count_nontotal(const IncompleteTable& t, const AttributeSet& x);

// Replaces every remaining NULL with the smallest active-domain value of its
// column (domains taken from t itself).
IncompleteTable fill_nulls(const IncompleteTable& t);

// World whose origin maps row i to source[i], or synthetic past source.size().
SpWorld make_world(IncompleteTable complete, const std::vector<std::size_t>& source, std::size_t synthetic = 0);

// Positions of s re-expressed as indices into the sorted list onto.
AttributeSet remap(const AttributeSet& s, const AttributeSet& onto);

}  // namespace spc
