#include "congraph/analysis.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace congraph {

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

namespace {

BigInt ipow(uint32_t q, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) out *= q;
  return out;
}

Rational rpow(uint32_t q, int e) {
  return e >= 0 ? Rational(ipow(q, e)) : Rational(BigInt(1), ipow(q, -e));
}

BigInt as_integer(const Rational& r, const char* what) {
  if (boost::multiprecision::denominator(r) != 1) {
    throw std::logic_error(std::string(what) + " is not an integer: " + to_string(r));
  }
  return boost::multiprecision::numerator(r);
}

bool is_power_of_t(const Poly& g) {
  const int n = g.degree();
  return n >= 1 && g == Poly::monomial(g.field_ptr(), FieldElem{1}, n);
}

RingPtr power_of_t_ring(uint32_t q, int n) {
  FieldPtr f = Field::create_order(q);
  return QuotientRing::create(f, Poly::monomial(f, FieldElem{1}, n));
}

std::vector<Mat2> level01_generators(const MatrixGroup& group) {
  std::vector<Mat2> gens = group.subgroup_generators(0);
  const std::vector<Mat2> g1 = group.subgroup_generators(1);
  gens.insert(gens.end(), g1.begin(), g1.end());
  return gens;
}

std::optional<uint64_t> closure_index(const MatrixGroup& group, uint64_t cap, std::vector<std::string>& notes,
                                      Closure* keep = nullptr) {
  if (cap == 0) return std::nullopt;
  Closure c = group_closure(group, level01_generators(group), cap);
  if (!c.complete) {
    notes.push_back(std::string(to_string(group.variant())) + " closure exceeded " + std::to_string(cap) +
                    " elements");
    return std::nullopt;
  }
  if (group.order() % c.size() != 0) throw std::logic_error("closure size does not divide the group order");
  const uint64_t index = group.order() / c.size();
  if (keep) *keep = std::move(c);
  return index;
}

std::optional<uint64_t> graph_index(GroupPtr group, uint64_t budget, std::vector<std::string>& notes) {
  if (budget == 0) return std::nullopt;
  const std::string name(to_string(group->variant()));
  try {
    BuildOptions options;
    options.mode = BuildMode::Identity;
    options.max_level = 1;
    options.budget = budget;
    return component_count(build_graph(std::move(group), options));
  } catch (const BudgetExceeded& e) {
    notes.push_back(name + " D(0-1) build: " + e.what());
    return std::nullopt;
  }
}

TwoRouteCount two_route(const RingPtr& ring, Variant variant, const Table1Options& options,
                        std::vector<std::string>& notes) {
  const GroupPtr group = MatrixGroup::create(variant, ring);
  TwoRouteCount out;
  out.closure = closure_index(*group, options.closure_cap, notes);
  out.graph = graph_index(group, options.graph_budget, notes);
  return out;
}

}  // namespace

FormulaReport formula_report(const QuotientRing& ring) {
  const uint32_t q = ring.field().order();
  const int n = ring.degree();
  FormulaReport r;
  r.q = q;
  r.g = ring.modulus().to_string();
  r.n = n;
  r.pi_q = 1;
  Rational units = 1;
  for (const PrimePower& pp : ring.factorization().factors) {
    const int d = pp.prime.degree();
    r.pi_q *= 1 - rpow(q, -2 * d);
    units *= 1 - rpow(q, -d);
  }
  r.unit_order = as_integer(rpow(q, n) * units, "|R^x|");
  r.gl2_order = as_integer(rpow(q, 4 * n) * units * r.pi_q, "|GL2|");
  r.sl2_order = as_integer(rpow(q, 3 * n) * r.pi_q, "|SL2|");
  if (r.gl2_order != r.sl2_order * r.unit_order) throw std::logic_error("|SL2| != |GL2| / |R^x|");

  const Rational one_minus_q2 = 1 - rpow(q, -2), one_minus_q = 1 - rpow(q, -1);
  r.level_sizes.push_back(as_integer(rpow(q, 3 * n - 3) * r.pi_q / one_minus_q2, "|L_0|"));
  for (int i = 1; i < n; ++i) {
    r.level_sizes.push_back(as_integer(rpow(q, 3 * n - 2 - i) * r.pi_q / one_minus_q, "|L_i|"));
  }
  r.level_sizes.push_back(as_integer(rpow(q, 2 * n - 1) * r.pi_q / one_minus_q, "|L_n|"));
  r.ray_level_size_2n_minus_2 = rpow(q, 2 * n - 2) * r.pi_q / one_minus_q;
  r.cusp_count = r.level_sizes.back();
  return r;
}

std::string TwoRouteCount::method() const {
  if (closure && graph) return "both";
  if (closure) return "closure";
  if (graph) return "graph";
  return "incomplete";
}

std::string Table1Row::method() const {
  if (!complete()) return "incomplete";
  const std::string a = c.method(), b = c_tilde.method();
  return a == b ? a : a + "/" + b;
}

ConjectureValues conjecture_values(uint32_t q, int n) {
  ConjectureValues v;
  if (n <= 1) return v;
  if (q == 2) {
    if (n > 2) {
      const int e = (3 * n - 5) / 2;
      v.c = ipow(2, e);
      v.c_tilde = ipow(2, e + (n + 1) / 4);
    }
  } else if (q % 2 == 0) {
    v.c = 1;
    v.c_tilde = ipow(q, n / 2);
  } else {
    v.c = 1;
    v.c_tilde = 1;
  }
  return v;
}

Table1Row table1_row(uint32_t q, int n, const Table1Options& options) {
  if (n < 2) throw std::invalid_argument("D(0-1) needs n >= 2");
  const RingPtr ring = power_of_t_ring(q, n);
  Table1Row row;
  row.q = q;
  row.n = n;
  row.c = two_route(ring, Variant::Sl2, options, row.notes);
  row.c_tilde = two_route(ring, Variant::PglM, options, row.notes);
  if (!row.c.agree() || !row.c_tilde.agree()) {
    throw std::logic_error("closure and graph component counts disagree at q=" + std::to_string(q) +
                           ", n=" + std::to_string(n));
  }
  row.conjecture = conjecture_values(q, n);
  return row;
}

ConjectureReport conjecture_check(const Table1Row& row) {
  ConjectureReport r;
  r.q = row.q;
  r.n = row.n;
  if (!row.complete()) {
    r.status = "INCOMPLETE";
    return r;
  }
  if (row.conjecture.c) r.c_matches = *row.conjecture.c == *row.c.value();
  if (row.conjecture.c_tilde) r.c_tilde_matches = *row.conjecture.c_tilde == *row.c_tilde.value();
  if (!r.c_matches && !r.c_tilde_matches) {
    r.status = "CONJECTURE-NOT-APPLICABLE";
  } else if (r.c_matches.value_or(true) && r.c_tilde_matches.value_or(true)) {
    r.status = "CONJECTURE-CONSISTENT";
  } else {
    r.status = "CONJECTURE-INCONSISTENT";
  }
  if (row.q % 2 == 1) {
    r.odd_q_connectivity = *row.c.value() == 1 ? "computed-connected-only (UNRESOLVED in general)"
                                               : "computed-disconnected";
  }
  return r;
}

std::optional<BigInt> StIdentityReport::lhs() const {
  if (!complete()) return std::nullopt;
  return BigInt(*c) * square_class_index;
}

std::optional<BigInt> StIdentityReport::rhs() const {
  if (!complete()) return std::nullopt;
  if (s_order % *t_order != 0) throw std::logic_error("|T| does not divide |S|");
  return BigInt(*c_tilde) * (s_order / *t_order);
}

StIdentityReport st_identity_check(const QuotientRing& ring, const Table1Options& options) {
  StIdentityReport r;
  r.q = ring.field().order();
  r.g = ring.modulus().to_string();
  const RingPtr rp = QuotientRing::create(ring.field_ptr(), ring.modulus());
  const GroupPtr sl2 = MatrixGroup::create(Variant::Sl2, rp);
  Closure closure;
  r.c = closure_index(*sl2, options.closure_cap, r.notes, &closure);
  r.c_tilde = graph_index(MatrixGroup::create(Variant::PglM, rp), options.graph_budget, r.notes);
  r.square_class_index = square_class_index(ring).value;
  r.s_order = s_subgroup(ring).size();
  if (r.c) r.t_order = t_subgroup(*sl2, closure).size();
  return r;
}

std::optional<bool> ParityEntry::odd_equal_holds() const {
  if (!c || !c_tilde) return std::nullopt;
  return *c == *c_tilde;
}

std::optional<bool> ParityEntry::even_strict_holds() const {
  if (!c || !c_tilde) return std::nullopt;
  return *c_tilde > *c;
}

std::optional<bool> ParityEntry::connectivity_agrees() const {
  if (!xtilde_components) return std::nullopt;
  return (*xtilde_components == 1) == connectivity_predicted();
}

ParityEntry parity_entry(const QuotientRing& ring, const ParityOptions& options) {
  ParityEntry e;
  e.q = ring.field().order();
  e.g = ring.modulus().to_string();
  e.squarefree = ring.factorization().is_squarefree();
  e.is_power_of_t = is_power_of_t(ring.modulus());
  e.square_class_index = square_class_index(ring).value;
  const RingPtr rp = QuotientRing::create(ring.field_ptr(), ring.modulus());
  std::vector<std::string> notes;
  if (ring.degree() >= 2) {
    e.c = two_route(rp, Variant::Sl2, options.counts, notes).value();
    e.c_tilde = two_route(rp, Variant::PglM, options.counts, notes).value();
  }
  try {
    BuildOptions b;
    b.mode = BuildMode::Identity;
    b.budget = options.xtilde_budget;
    e.xtilde_components = component_count(build_graph(MatrixGroup::create(Variant::PglM, rp), b));
  } catch (const BudgetExceeded&) {
  }
  return e;
}

std::string BoundReport::verdict() const {
  if (vacuous) return "VACUOUS";
  if (!holds()) return "VIOLATED";
  return equality() ? "EQUALITY" : "HOLDS";
}

BoundReport morgenstern_bound_check(const LevelledGraph& graph01, const std::vector<uint32_t>& s) {
  if (!graph01.group) throw std::invalid_argument("the bound needs q from the graph's group");
  if (graph01.levels() < 2) throw std::invalid_argument("the bound needs levels 0 and 1");
  BoundReport r;
  r.q = graph01.group->ring().field().order();
  std::vector<uint32_t> set(s);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  r.s_size = set.size();
  r.level1_size = graph01.level_size(1);
  r.n0_size = neighborhood_n0(graph01, set).size();
  if (set.empty()) {
    r.vacuous = true;
    return r;
  }
  const BigInt q = r.q, size = r.s_size, l1 = r.level1_size;
  r.lhs = Rational(BigInt(r.n0_size), size);
  r.rhs = Rational(q * l1, (q - 3) * size + 4 * l1);
  return r;
}

std::vector<uint32_t> component_level1(const LevelledGraph& graph, uint32_t label) {
  std::vector<uint32_t> out;
  for (uint32_t v = graph.level_start[1]; v < graph.level_start[2]; ++v) {
    if (graph.component[v] == label) out.push_back(v);
  }
  return out;
}

std::string power_of_q(const BigInt& value, uint32_t q) {
  if (value == 1 || q < 2 || value < 1) return value.str();
  BigInt v = value;
  int e = 0;
  while (v % q == 0) {
    v /= q;
    ++e;
  }
  return v == 1 ? std::to_string(q) + "^" + std::to_string(e) : value.str();
}

namespace {

std::string cell(const std::optional<uint64_t>& v, uint32_t q) { return v ? power_of_q(BigInt(*v), q) : "-"; }
std::string cell(const std::optional<BigInt>& v, uint32_t q) { return v ? power_of_q(*v, q) : "-"; }

}  // namespace

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::vector<std::vector<std::string>> cells{{"q", "n", "C", "C~", "method", "conj C", "conj C~", "status"}};
  for (const Table1Row& row : rows) {
    cells.push_back({std::to_string(row.q), std::to_string(row.n), cell(row.c.value(), row.q),
                     cell(row.c_tilde.value(), row.q), row.method(), cell(row.conjecture.c, row.q),
                     cell(row.conjecture.c_tilde, row.q), conjecture_check(row).status});
  }
  std::vector<size_t> width(cells[0].size(), 0);
  for (const auto& line : cells)
    for (size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  std::ostringstream out;
  for (const auto& line : cells) {
    for (size_t i = 0; i < line.size(); ++i) {
      out << line[i];
      if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

namespace {

nlohmann::ordered_json opt_json(const std::optional<uint64_t>& v) { return v ? nlohmann::ordered_json(*v) : nullptr; }
nlohmann::ordered_json opt_json(const std::optional<BigInt>& v) { return v ? nlohmann::ordered_json(v->str()) : nullptr; }
nlohmann::ordered_json opt_json(const std::optional<bool>& v) { return v ? nlohmann::ordered_json(*v) : nullptr; }

}  // namespace

std::string to_json(const FormulaReport& r) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["g"] = r.g;
  j["n"] = r.n;
  j["pi_q"] = to_string(r.pi_q);
  j["gl2_order"] = r.gl2_order.str();
  j["sl2_order"] = r.sl2_order.str();
  j["unit_order"] = r.unit_order.str();
  auto& levels = j["level_sizes"] = nlohmann::ordered_json::array();
  for (const BigInt& s : r.level_sizes) levels.push_back(s.str());
  j["ray_level_size_2n_minus_2"] = to_string(r.ray_level_size_2n_minus_2);
  j["cusp_count"] = r.cusp_count.str();
  return j.dump(2) + "\n";
}

std::string to_json(const std::vector<Table1Row>& rows) {
  auto j = nlohmann::ordered_json::array();
  for (const Table1Row& row : rows) {
    const ConjectureReport cr = conjecture_check(row);
    nlohmann::ordered_json o;
    o["q"] = row.q;
    o["n"] = row.n;
    o["C"] = opt_json(row.c.value());
    o["C_tilde"] = opt_json(row.c_tilde.value());
    o["method"] = row.method();
    o["C_closure"] = opt_json(row.c.closure);
    o["C_graph"] = opt_json(row.c.graph);
    o["C_tilde_closure"] = opt_json(row.c_tilde.closure);
    o["C_tilde_graph"] = opt_json(row.c_tilde.graph);
    o["conjecture_C"] = opt_json(row.conjecture.c);
    o["conjecture_C_tilde"] = opt_json(row.conjecture.c_tilde);
    o["C_matches"] = opt_json(cr.c_matches);
    o["C_tilde_matches"] = opt_json(cr.c_tilde_matches);
    o["status"] = cr.status;
    if (cr.odd_q_connectivity) o["odd_q_connectivity"] = *cr.odd_q_connectivity;
    o["notes"] = row.notes;
    j.push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

}  // namespace congraph
