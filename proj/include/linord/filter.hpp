#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "linord/modelcard.hpp"

namespace linord {

enum class FilterOp { eq, ne, lt, le, gt, ge, contains };

struct Predicate {
  std::string field;
  FilterOp op = FilterOp::eq;
  std::string value;      // raw literal (unquoted)
  std::size_t position = 0;  // character offset in the query, for errors
};

/// Query grammar: conjunctions of `field op value` joined by `&&`, with op in
/// {==, !=, <, <=, >, >=, contains}. Fields come from the card schema
/// (dataset_id, source, n, method, sense, optimal_objective,
/// num_optimal_rankings, complete, diameter, k, p, tau, beta). String values
/// may be single- or double-quoted. Unknown fields, bad operators, and
/// type-invalid comparisons raise std::runtime_error with the query position.
std::vector<Predicate> parse_query(std::string_view query);

bool matches(const ModelCard& card, const std::vector<Predicate>& predicates);

/// dataset_ids of cards satisfying every predicate, ascending.
std::vector<long long> filter_ids(const std::vector<ModelCard>& cards, std::string_view query);

}  // namespace linord
