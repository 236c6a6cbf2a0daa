#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "congraph/coset_graph.hpp"

namespace congraph {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "a" or "a/b".
std::string to_string(const Rational& r);

/// Closed-form group orders and level sizes of X_g.
struct FormulaReport {
  uint32_t q = 0;
  std::string g;
  int n = 0;
  Rational pi_q;  // prod_i (1 - q^{-2 d_i})
  BigInt gl2_order;
  BigInt sl2_order;
  BigInt unit_order;
  /// |L_0|, ..., |L_n|; entry n is the size of every ray level i >= n.
  std::vector<BigInt> level_sizes;
  /// The ray-level value with exponent 2n-2 in place of 2n-1; not an
  /// integer in general, kept for comparison.
  Rational ray_level_size_2n_minus_2;
  BigInt cusp_count;
};

FormulaReport formula_report(const QuotientRing& ring);

/// One count computed by up to two routes: the index of the closure of the
/// level 0 and 1 generators, and the identity-component D(0-1) quotient.
struct TwoRouteCount {
  std::optional<uint64_t> closure;
  std::optional<uint64_t> graph;

  bool complete() const { return closure || graph; }
  bool agree() const { return !(closure && graph) || *closure == *graph; }
  /// "both", "closure", "graph" or "incomplete".
  std::string method() const;
  /// The closure value when present, else the graph value.
  std::optional<uint64_t> value() const { return closure ? closure : graph; }
};

struct Table1Options {
  /// Closure of <H_0, H_1> stops beyond this many elements; 0 skips it.
  uint64_t closure_cap = uint64_t{1} << 24;
  /// Vertex budget of the identity-mode D(0-1) build; 0 skips it.
  uint64_t graph_budget = uint64_t{1} << 22;
};

/// Conjectured C and C~ for g = t^n; absent where no formula is stated
/// (q = 2 with n <= 2, and n <= 1).
struct ConjectureValues {
  std::optional<BigInt> c;
  std::optional<BigInt> c_tilde;
};

ConjectureValues conjecture_values(uint32_t q, int n);

struct Table1Row {
  uint32_t q = 0;
  int n = 0;
  TwoRouteCount c;        // SL2: |H : <H_0, H_1>|
  TwoRouteCount c_tilde;  // PGL-M analogue
  ConjectureValues conjecture;
  std::vector<std::string> notes;  // budget messages for skipped routes

  bool complete() const { return c.complete() && c_tilde.complete(); }
  /// Method of the weaker of the two counts.
  std::string method() const;
};

/// Computes C and C~ for g = t^n over F_q (n >= 2). A route that exceeds its
/// budget is left empty and noted; nothing is extrapolated.
Table1Row table1_row(uint32_t q, int n, const Table1Options& options = {});

struct ConjectureReport {
  uint32_t q = 0;
  int n = 0;
  /// CONJECTURE-CONSISTENT, CONJECTURE-INCONSISTENT, CONJECTURE-NOT-APPLICABLE
  /// or INCOMPLETE.
  std::string status;
  std::optional<bool> c_matches;
  std::optional<bool> c_tilde_matches;
  /// For odd q: the computed D(0-1) connectivity, which is evidence only.
  std::optional<std::string> odd_q_connectivity;
};

ConjectureReport conjecture_check(const Table1Row& row);

/// C |R^x : F_q^x R^x2| = C~ |S : T|, every quantity computed on its own:
/// C from the SL2 closure, C~ from the PGL-M D(0-1) graph, the index from
/// the ring, S and T from their definitions.
struct StIdentityReport {
  uint32_t q = 0;
  std::string g;
  std::optional<uint64_t> c;
  std::optional<uint64_t> c_tilde;
  uint64_t square_class_index = 0;
  uint64_t s_order = 0;
  std::optional<uint64_t> t_order;
  std::vector<std::string> notes;

  bool complete() const { return c && c_tilde && t_order; }
  /// Both sides; absent unless complete.
  std::optional<BigInt> lhs() const;
  std::optional<BigInt> rhs() const;
  bool holds() const { return complete() && *lhs() == *rhs(); }
};

StIdentityReport st_identity_check(const QuotientRing& ring, const Table1Options& options = {});

/// Per-configuration parity statements.
struct ParityEntry {
  uint32_t q = 0;
  std::string g;
  bool squarefree = false;
  bool is_power_of_t = false;
  std::optional<uint64_t> c;
  std::optional<uint64_t> c_tilde;
  uint64_t square_class_index = 0;
  /// Components of the full Morgenstern graph, by union-find quotient.
  std::optional<uint64_t> xtilde_components;

  /// q odd and g = t^n: C = C~.
  bool odd_equal_applies() const { return q % 2 == 1 && is_power_of_t; }
  std::optional<bool> odd_equal_holds() const;
  /// q even and g not squarefree: C~ > C.
  bool even_strict_applies() const { return q % 2 == 0 && !squarefree; }
  std::optional<bool> even_strict_holds() const;
  /// Connected iff q odd or g squarefree, as stated.
  bool connectivity_predicted() const { return q % 2 == 1 || squarefree; }
  std::optional<bool> connectivity_agrees() const;
};

struct ParityOptions {
  Table1Options counts;
  uint64_t xtilde_budget = uint64_t{1} << 22;
};

ParityEntry parity_entry(const QuotientRing& ring, const ParityOptions& options = {});

struct BoundReport {
  uint32_t q = 0;
  uint64_t s_size = 0;
  uint64_t n0_size = 0;
  uint64_t level1_size = 0;
  bool vacuous = false;
  Rational lhs;  // |N_0(S)| / |S|
  Rational rhs;  // q |L_1| / ((q - 3)|S| + 4 |L_1|)

  bool holds() const { return vacuous || lhs >= rhs; }
  bool equality() const { return !vacuous && lhs == rhs; }
  /// VACUOUS, VIOLATED, EQUALITY or HOLDS.
  std::string verdict() const;
};

/// Evaluates |N_0(S)|/|S| >= q|L_1| / ((q-3)|S| + 4|L_1|) exactly for S a set
/// of level-1 vertices of a level 0-1 graph. |L_1| is the graph's level-1
/// size, so pass the whole D(0-1) built in full mode. Throws
/// std::invalid_argument for graphs without a group or with fewer than two
/// levels.
BoundReport morgenstern_bound_check(const LevelledGraph& graph01, const std::vector<uint32_t>& s);

/// Level-1 vertices of one component.
std::vector<uint32_t> component_level1(const LevelledGraph& graph, uint32_t label);

/// "1", "q^e" when the value is a power of q > 1, else decimal.
std::string power_of_q(const BigInt& value, uint32_t q);

/// Aligned text table with columns q, n, C, C~, method, conjectured C,
/// conjectured C~, status.
std::string table1_text(const std::vector<Table1Row>& rows);

std::string to_json(const FormulaReport& report);
std::string to_json(const std::vector<Table1Row>& rows);

}  // namespace congraph
