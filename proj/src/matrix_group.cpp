#include "congraph/matrix_group.hpp"

#include <absl/container/flat_hash_set.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace congraph {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Sl2:
      return "sl2";
    case Variant::PglBar:
      return "pgl-bar";
    case Variant::PglM:
      return "pgl-m";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "sl2") return Variant::Sl2;
  if (text == "pgl-bar") return Variant::PglBar;
  if (text == "pgl-m") return Variant::PglM;
  throw std::invalid_argument("unknown group variant '" + std::string(text) + "'");
}

uint64_t sl2_order(const QuotientRing& ring) {
  const uint64_t q = ring.field().order();
  uint64_t total = 1;
  for (const auto& [prime, mult] : ring.factorization().factors) {
    uint64_t e = 1;
    for (int i = 0; i < prime.degree(); ++i) e *= q;
    uint64_t local = e * e * e - e;
    for (int i = 0; i < mult - 1; ++i) local *= e * e * e;
    total *= local;
  }
  return total;
}

GroupPtr MatrixGroup::create(Variant variant, RingPtr ring) {
  if (ring->order() > kMaxRingOrder) throw std::invalid_argument("ring too large for matrix group encoding");
  return GroupPtr(new MatrixGroup(variant, std::move(ring)));
}

MatrixGroup::MatrixGroup(Variant variant, RingPtr ring)
    : variant_(variant), ring_(std::move(ring)), bits_(0), order_(sl2_order(*ring_)) {
  const QuotientRing& R = *ring_;
  const Field& F = R.field();
  const uint32_t Q = R.order();
  bits_ = std::max(1u, static_cast<unsigned>(std::bit_width(Q - 1)));

  switch (variant_) {
    case Variant::Sl2:
      scalars_ = {R.one()};
      break;
    case Variant::PglBar:
      for (FieldElem c : F.units()) scalars_.push_back(R.from_field(c));
      break;
    case Variant::PglM:
      scalars_ = R.units();
      break;
  }

  scaled_min_.resize(Q);
  argmin_offsets_.assign(Q + 1, 0);
  for (uint32_t x = 0; x < Q; ++x) {
    uint32_t best = std::numeric_limits<uint32_t>::max();
    for (RgElem s : scalars_) best = std::min(best, R.mul(s, RgElem{x}).code);
    scaled_min_[x] = best;
    for (RgElem s : scalars_) {
      if (R.mul(s, RgElem{x}).code == best) argmin_scalars_.push_back(s);
    }
    argmin_offsets_[x + 1] = static_cast<uint32_t>(argmin_scalars_.size());
  }

  // SL2 level subgroups.
  const int n = R.degree();
  std::vector<std::vector<Mat2>> sl(static_cast<size_t>(n) + 1);
  const std::vector<FieldElem> fe = F.elements();
  for (FieldElem a : fe) {
    for (FieldElem b : fe) {
      for (FieldElem c : fe) {
        for (FieldElem d : fe) {
          if (F.sub(F.mul(a, d), F.mul(b, c)).code == 1) {
            sl[0].push_back(Mat2{{R.from_field(a), R.from_field(b), R.from_field(c), R.from_field(d)}});
          }
        }
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    uint32_t residues = 1;
    for (int j = 0; j < std::min(i + 1, n); ++j) residues *= F.order();
    for (FieldElem a : F.units()) {
      for (uint32_t b = 0; b < residues; ++b) {
        sl[static_cast<size_t>(i)].push_back(Mat2{{R.from_field(a), RgElem{b}, R.zero(), R.from_field(F.inv(a))}});
      }
    }
  }

  subgroups_.resize(sl.size());
  for (size_t i = 0; i < sl.size(); ++i) {
    std::vector<Mat2> elems;
    if (variant_ == Variant::Sl2) {
      elems = std::move(sl[i]);
    } else {
      for (const Mat2& h : sl[i]) {
        for (FieldElem c : F.units()) {
          const Mat2 f{{R.from_field(c), R.zero(), R.zero(), R.one()}};
          elems.push_back(canonical_scale(mul_raw(h, f)));
        }
      }
    }
    std::sort(elems.begin(), elems.end(), [this](const Mat2& x, const Mat2& y) { return pack(x) < pack(y); });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    subgroups_[i] = std::move(elems);
  }

  auto transversal_of = [this](int from, int to) {
    const std::vector<Mat2>& src = subgroups_[static_cast<size_t>(from)];
    const std::vector<Mat2>& dst = subgroups_[static_cast<size_t>(to)];
    absl::flat_hash_set<uint64_t> dst_keys;
    for (const Mat2& m : dst) dst_keys.insert(pack(m));
    std::vector<Mat2> inter;
    for (const Mat2& m : src) {
      if (dst_keys.contains(pack(m))) inter.push_back(m);
    }
    absl::flat_hash_set<uint64_t> covered;
    std::vector<Mat2> reps;
    for (const Mat2& x : src) {
      if (covered.contains(pack(x))) continue;
      reps.push_back(x);
      for (const Mat2& y : inter) covered.insert(pack(mul(x, y)));
    }
    return reps;
  };
  up_transversal_.resize(static_cast<size_t>(n));
  down_transversal_.resize(static_cast<size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    up_transversal_[static_cast<size_t>(i)] = transversal_of(i, i + 1);
    down_transversal_[static_cast<size_t>(i) + 1] = transversal_of(i + 1, i);
  }
}

RgElem MatrixGroup::det(const Mat2& m) const {
  const QuotientRing& R = *ring_;
  return R.sub(R.mul(m.e[0], m.e[3]), R.mul(m.e[1], m.e[2]));
}

bool MatrixGroup::is_element(const Mat2& m) const {
  const RgElem d = det(m);
  switch (variant_) {
    case Variant::Sl2:
      return d == ring_->one();
    case Variant::PglBar:
      return ring_->is_constant(d) && d.code != 0;
    case Variant::PglM:
      return ring_->is_unit(d);
  }
  return false;
}

Mat2 MatrixGroup::make(RgElem a, RgElem b, RgElem c, RgElem d) const {
  for (RgElem x : {a, b, c, d}) {
    if (x.code >= ring_->order()) throw std::out_of_range("matrix entry code out of range");
  }
  const Mat2 m{{a, b, c, d}};
  if (!is_element(m)) {
    throw std::invalid_argument("matrix " + to_string(m) + " has determinant " + ring_->to_string(det(m)) +
                                ", not allowed for " + std::string(congraph::to_string(variant_)));
  }
  return canonical_scale(m);
}

Mat2 MatrixGroup::mul_raw(const Mat2& x, const Mat2& y) const {
  const QuotientRing& R = *ring_;
  return Mat2{{R.add(R.mul(x.e[0], y.e[0]), R.mul(x.e[1], y.e[2])),
               R.add(R.mul(x.e[0], y.e[1]), R.mul(x.e[1], y.e[3])),
               R.add(R.mul(x.e[2], y.e[0]), R.mul(x.e[3], y.e[2])),
               R.add(R.mul(x.e[2], y.e[1]), R.mul(x.e[3], y.e[3]))}};
}

Mat2 MatrixGroup::inv(const Mat2& m) const {
  if (!is_element(m)) throw std::invalid_argument("matrix " + to_string(m) + " is not invertible in the group");
  const QuotientRing& R = *ring_;
  // The adjugate equals det * inverse, and det is a scalar for the PGL variants.
  return canonical_scale(Mat2{{m.e[3], R.neg(m.e[1]), R.neg(m.e[2]), m.e[0]}});
}

Mat2 MatrixGroup::scale(RgElem s, const Mat2& m) const {
  if (s.code == 1) return m;
  const QuotientRing& R = *ring_;
  return Mat2{{R.mul(s, m.e[0]), R.mul(s, m.e[1]), R.mul(s, m.e[2]), R.mul(s, m.e[3])}};
}

Mat2 MatrixGroup::canonical_scale(const Mat2& m) const {
  if (variant_ == Variant::Sl2) return m;
  size_t j = 0;
  while (j < 4 && m.e[j].code == 0) ++j;
  if (j == 4) return m;
  const uint32_t lo = argmin_offsets_[m.e[j].code];
  const uint32_t hi = argmin_offsets_[m.e[j].code + 1];
  if (hi - lo == 1) return scale(argmin_scalars_[lo], m);
  Mat2 best = scale(argmin_scalars_[lo], m);
  uint64_t best_key = pack(best);
  for (uint32_t k = lo + 1; k < hi; ++k) {
    const Mat2 cand = scale(argmin_scalars_[k], m);
    const uint64_t key = pack(cand);
    if (key < best_key) {
      best_key = key;
      best = cand;
    }
  }
  return best;
}

Mat2 MatrixGroup::unpack(uint64_t packed) const {
  const uint64_t mask = (uint64_t{1} << bits_) - 1;
  return Mat2{{RgElem{static_cast<uint32_t>((packed >> (3 * bits_)) & mask)},
               RgElem{static_cast<uint32_t>((packed >> (2 * bits_)) & mask)},
               RgElem{static_cast<uint32_t>((packed >> bits_) & mask)}, RgElem{static_cast<uint32_t>(packed & mask)}}};
}

std::vector<uint8_t> MatrixGroup::encode(const Mat2& m) const {
  const uint32_t p = ring_->field().characteristic();
  const int digits = ring_->degree() * static_cast<int>(ring_->field().degree());
  const bool wide = p > 256;
  std::vector<uint8_t> out;
  for (RgElem x : m.e) {
    std::vector<uint32_t> ds(static_cast<size_t>(digits));
    uint32_t code = x.code;
    for (int i = digits - 1; i >= 0; --i) {
      ds[static_cast<size_t>(i)] = code % p;
      code /= p;
    }
    for (uint32_t d : ds) {
      if (wide) out.push_back(static_cast<uint8_t>(d >> 8));
      out.push_back(static_cast<uint8_t>(d & 0xff));
    }
  }
  return out;
}

std::string MatrixGroup::key_hex(const CosetKey& key) const {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (uint8_t byte : encode(unpack(key.packed))) {
    out += kHex[byte >> 4];
    out += kHex[byte & 0xf];
  }
  return out;
}

Mat2 MatrixGroup::decode(const std::vector<uint8_t>& bytes) const {
  const uint32_t p = ring_->field().characteristic();
  const size_t digits = static_cast<size_t>(ring_->degree()) * ring_->field().degree();
  const size_t width = p > 256 ? 2 : 1;
  if (bytes.size() != 4 * digits * width) throw std::invalid_argument("encoded matrix has the wrong length");
  Mat2 m;
  size_t pos = 0;
  for (RgElem& x : m.e) {
    uint64_t code = 0;
    for (size_t i = 0; i < digits; ++i) {
      uint32_t d = bytes[pos++];
      if (width == 2) d = (d << 8) | bytes[pos++];
      if (d >= p) throw std::invalid_argument("encoded digit out of range");
      code = code * p + d;
    }
    x = RgElem{static_cast<uint32_t>(code)};
  }
  return m;
}

uint64_t MatrixGroup::parse_key_hex(std::string_view hex) const {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length key hex");
  auto nibble = [&](char ch) -> uint8_t {
    if (ch >= '0' && ch <= '9') return static_cast<uint8_t>(ch - '0');
    if (ch >= 'a' && ch <= 'f') return static_cast<uint8_t>(ch - 'a' + 10);
    throw std::invalid_argument("bad hex digit in key '" + std::string(hex) + "'");
  };
  std::vector<uint8_t> bytes;
  for (size_t i = 0; i < hex.size(); i += 2) bytes.push_back(static_cast<uint8_t>(nibble(hex[i]) << 4 | nibble(hex[i + 1])));
  return pack(decode(bytes));
}

const std::vector<Mat2>& MatrixGroup::level_elements(int level) const {
  if (level < 0 || level > degree()) throw std::out_of_range("level " + std::to_string(level) + " out of range");
  return subgroups_[static_cast<size_t>(level)];
}

const std::vector<Mat2>& MatrixGroup::subgroup(int level) const {
  if (level < 0 || level >= degree()) {
    throw std::out_of_range("subgroup level " + std::to_string(level) + " outside 0.." + std::to_string(degree() - 1));
  }
  return subgroups_[static_cast<size_t>(level)];
}

std::vector<Mat2> MatrixGroup::subgroup_generators(int level) const {
  if (level < 0 || level > degree()) throw std::out_of_range("level " + std::to_string(level) + " out of range");
  const QuotientRing& R = *ring_;
  const Field& F = R.field();
  std::vector<Mat2> gens;
  const std::vector<FieldElem> basis = F.prime_basis();
  if (level == 0) {
    for (FieldElem beta : basis) {
      gens.push_back(Mat2{{R.one(), R.from_field(beta), R.zero(), R.one()}});
      gens.push_back(Mat2{{R.one(), R.zero(), R.from_field(beta), R.one()}});
    }
  } else {
    const int top = std::min(level, degree() - 1);
    uint32_t place = 1;
    for (int j = 0; j <= top; ++j) {
      for (FieldElem beta : basis) gens.push_back(Mat2{{R.one(), RgElem{beta.code * place}, R.zero(), R.one()}});
      place *= F.order();
    }
    const FieldElem z = F.primitive_element();
    gens.push_back(Mat2{{R.from_field(z), R.zero(), R.zero(), R.from_field(F.inv(z))}});
  }
  if (variant_ != Variant::Sl2) {
    gens.push_back(Mat2{{R.from_field(F.primitive_element()), R.zero(), R.zero(), R.one()}});
  }
  for (Mat2& g : gens) g = canonical_scale(g);
  return gens;
}

std::vector<Mat2> MatrixGroup::full_group_generators() const {
  const QuotientRing& R = *ring_;
  const Field& F = R.field();
  std::vector<Mat2> gens;
  uint32_t place = 1;
  for (int j = 0; j < degree(); ++j) {
    for (FieldElem beta : F.prime_basis()) {
      const RgElem x{beta.code * place};
      gens.push_back(Mat2{{R.one(), x, R.zero(), R.one()}});
      gens.push_back(Mat2{{R.one(), R.zero(), x, R.one()}});
    }
    place *= F.order();
  }
  if (variant_ != Variant::Sl2 && F.order() > 2) {
    gens.push_back(Mat2{{R.from_field(F.primitive_element()), R.zero(), R.zero(), R.one()}});
  }
  if (variant_ == Variant::PglM) {
    for (RgElem u : square_class_representatives(R)) {
      if (u != R.one()) gens.push_back(Mat2{{u, R.zero(), R.zero(), R.one()}});
    }
  }
  for (Mat2& g : gens) g = canonical_scale(g);
  return gens;
}

const std::vector<Mat2>& MatrixGroup::transversal(int from, int to) const {
  if (from < 0 || from > degree() || to < 0 || to > degree() || (to != from + 1 && to != from - 1)) {
    throw std::out_of_range("no transversal between levels " + std::to_string(from) + " and " + std::to_string(to));
  }
  if (to == from + 1) return up_transversal_[static_cast<size_t>(from)];
  return down_transversal_[static_cast<size_t>(from)];
}

template <bool Scaled>
uint64_t MatrixGroup::min_key_tables(const Mat2& h, const std::vector<Mat2>& elems) const {
  const size_t Q = ring_->order();
  const uint16_t* M = ring_->mul_table();
  const uint16_t* A = ring_->add_table();
  const uint16_t* m0 = M + h.e[0].code * Q;
  const uint16_t* m1 = M + h.e[1].code * Q;
  const uint16_t* m2 = M + h.e[2].code * Q;
  const uint16_t* m3 = M + h.e[3].code * Q;
  uint64_t best = std::numeric_limits<uint64_t>::max();
  uint32_t best_a = std::numeric_limits<uint32_t>::max();
  for (const Mat2& x : elems) {
    const uint32_t a = A[m0[x.e[0].code] * Q + m1[x.e[2].code]];
    if constexpr (!Scaled) {
      if (a > best_a) continue;
      const uint32_t b = A[m0[x.e[1].code] * Q + m1[x.e[3].code]];
      const uint32_t c = A[m2[x.e[0].code] * Q + m3[x.e[2].code]];
      const uint32_t d = A[m2[x.e[1].code] * Q + m3[x.e[3].code]];
      const uint64_t key = (uint64_t{a} << (3 * bits_)) | (uint64_t{b} << (2 * bits_)) | (uint64_t{c} << bits_) | d;
      if (key < best) {
        best = key;
        best_a = a;
      }
    } else {
      if (scaled_min_[a] > best_a) continue;
      const Mat2 m{{RgElem{a}, RgElem{A[m0[x.e[1].code] * Q + m1[x.e[3].code]]},
                    RgElem{A[m2[x.e[0].code] * Q + m3[x.e[2].code]]},
                    RgElem{A[m2[x.e[1].code] * Q + m3[x.e[3].code]]}}};
      const Mat2 s = canonical_scale(m);
      const uint64_t key = pack(s);
      if (key < best) {
        best = key;
        best_a = s.e[0].code;
      }
    }
  }
  return best;
}

uint64_t MatrixGroup::min_key_generic(const Mat2& h, const std::vector<Mat2>& elems) const {
  uint64_t best = std::numeric_limits<uint64_t>::max();
  for (const Mat2& x : elems) best = std::min(best, pack(mul(h, x)));
  return best;
}

uint64_t MatrixGroup::coset_key_packed(const Mat2& h, int level) const {
  const std::vector<Mat2>& elems = level_elements(level);
  if (!ring_->has_tables()) return min_key_generic(h, elems);
  if (variant_ == Variant::Sl2) return min_key_tables<false>(h, elems);
  return min_key_tables<true>(h, elems);
}

std::string MatrixGroup::to_string(const Mat2& m) const {
  const QuotientRing& R = *ring_;
  return "[[" + R.to_string(m.e[0]) + "," + R.to_string(m.e[1]) + "],[" + R.to_string(m.e[2]) + "," +
         R.to_string(m.e[3]) + "]]";
}

Mat2 MatrixGroup::parse_raw(std::string_view text) const {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  auto fail = [&]() -> Mat2 {
    throw std::invalid_argument("cannot parse matrix '" + std::string(text) + "', expected [[a,b],[c,d]]");
  };
  if (s.size() < 4 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]") return fail();
  const std::string inner = s.substr(2, s.size() - 4);
  const size_t mid = inner.find("],[");
  if (mid == std::string::npos) return fail();
  const std::string rows[2] = {inner.substr(0, mid), inner.substr(mid + 3)};
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    const size_t comma = rows[r].find(',');
    if (comma == std::string::npos || rows[r].find(',', comma + 1) != std::string::npos) return fail();
    if (rows[r].find_first_of("[]") != std::string::npos) return fail();
    m.e[static_cast<size_t>(2 * r)] = ring_->parse(rows[r].substr(0, comma));
    m.e[static_cast<size_t>(2 * r + 1)] = ring_->parse(rows[r].substr(comma + 1));
  }
  return m;
}

bool Closure::contains(uint64_t key) const { return std::binary_search(packed.begin(), packed.end(), key); }

Closure group_closure(const MatrixGroup& group, const std::vector<Mat2>& generators, uint64_t cap) {
  absl::flat_hash_set<uint64_t> seen;
  std::vector<uint64_t> order;
  const uint64_t id = group.pack(group.identity());
  seen.insert(id);
  order.push_back(id);
  std::vector<Mat2> gens;
  for (const Mat2& g : generators) gens.push_back(group.canonical_scale(g));
  Closure out;
  for (size_t head = 0; head < order.size(); ++head) {
    const Mat2 x = group.unpack(order[head]);
    for (const Mat2& g : gens) {
      const uint64_t key = group.pack(group.mul(x, g));
      if (seen.insert(key).second) {
        order.push_back(key);
        if (order.size() > cap) {
          std::sort(order.begin(), order.end());
          out.packed = std::move(order);
          return out;
        }
      }
    }
  }
  std::sort(order.begin(), order.end());
  out.packed = std::move(order);
  out.complete = true;
  return out;
}

std::vector<RgElem> t_subgroup(const MatrixGroup& sl2, const Closure& closure) {
  if (sl2.variant() != Variant::Sl2) throw std::invalid_argument("T is defined through the SL2 closure");
  const QuotientRing& R = sl2.ring();
  std::vector<RgElem> out;
  for (RgElem a : s_subgroup(R)) {
    const Mat2 m{{R.inv(a), R.zero(), R.zero(), a}};
    if (closure.contains(sl2.pack(m))) out.push_back(a);
  }
  return out;
}

}  // namespace congraph
